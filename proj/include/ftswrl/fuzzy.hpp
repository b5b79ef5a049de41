#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ftswrl/errors.hpp"

namespace ftswrl {

// ---------------------------------------------------------------------------
// Parametric membership-function families. Every evaluation lands in [0, 1].
//
// Parameter layout (family-specific):
//   gaussmf: center c, width sigma          mu(x) = exp(-(x-c)^2 / (2 sigma^2))
//   trapmf:  feet/shoulders a <= b <= c <= d (piecewise-linear trapezoid)
//   gbellmf: center c, half-width a, slope b mu(x) = 1 / (1 + |(x-c)/a|^(2b))
//   smf:     foot a, shoulder b              smooth monotone 0 -> 1 over [a, b]
//   zmf:     shoulder a, foot b              smooth monotone 1 -> 0 over [a, b]
//
// Degenerate widths (sigma = 0, a == b, ...) collapse to the crisp indicator
// of the peak so that the w = 1 limit of fuzzification stays well defined.
// ---------------------------------------------------------------------------

enum class MfFamily { gaussmf, trapmf, gbellmf, smf, zmf };

constexpr const char* mfFamilyName(MfFamily f) noexcept {
  switch (f) {
    case MfFamily::gaussmf: return "gaussmf";
    case MfFamily::trapmf: return "trapmf";
    case MfFamily::gbellmf: return "gbellmf";
    case MfFamily::smf: return "smf";
    case MfFamily::zmf: return "zmf";
  }
  return "?";
}

inline std::optional<MfFamily> mfFamilyFromName(std::string_view name) {
  if (name == "gaussmf") return MfFamily::gaussmf;
  if (name == "trapmf") return MfFamily::trapmf;
  if (name == "gbellmf") return MfFamily::gbellmf;
  if (name == "smf") return MfFamily::smf;
  if (name == "zmf") return MfFamily::zmf;
  return std::nullopt;
}

class MembershipFunction {
 public:
  MembershipFunction(MfFamily family, std::vector<double> params)
      : family_(family), params_(std::move(params)) {
    validate();
  }

  static MembershipFunction gauss(double c, double sigma) {
    return MembershipFunction(MfFamily::gaussmf, {c, sigma});
  }
  static MembershipFunction trap(double a, double b, double c, double d) {
    return MembershipFunction(MfFamily::trapmf, {a, b, c, d});
  }
  static MembershipFunction gbell(double c, double a, double b) {
    return MembershipFunction(MfFamily::gbellmf, {c, a, b});
  }
  static MembershipFunction s(double a, double b) { return MembershipFunction(MfFamily::smf, {a, b}); }
  static MembershipFunction z(double a, double b) { return MembershipFunction(MfFamily::zmf, {a, b}); }

  MfFamily family() const noexcept { return family_; }
  const std::vector<double>& params() const noexcept { return params_; }

  bool operator==(const MembershipFunction&) const = default;

  double evaluate(double x) const noexcept {
    switch (family_) {
      case MfFamily::gaussmf: {
        const double c = params_[0], sigma = params_[1];
        if (sigma == 0.0) return x == c ? 1.0 : 0.0;
        const double t = (x - c) / sigma;
        return clamp01(std::exp(-0.5 * t * t));
      }
      case MfFamily::trapmf: {
        const double a = params_[0], b = params_[1], c = params_[2], d = params_[3];
        if (x < a || x > d) return 0.0;
        if (x >= b && x <= c) return 1.0;
        if (x < b) return clamp01((x - a) / (b - a));
        return clamp01((d - x) / (d - c));
      }
      case MfFamily::gbellmf: {
        const double c = params_[0], a = params_[1], b = params_[2];
        if (a == 0.0) return x == c ? 1.0 : 0.0;
        return clamp01(1.0 / (1.0 + std::pow(std::fabs((x - c) / a), 2.0 * b)));
      }
      case MfFamily::smf: {
        const double a = params_[0], b = params_[1];
        if (x >= b) return 1.0;
        if (x <= a) return 0.0;
        const double t = (x - a) / (b - a);
        if (x <= (a + b) / 2.0) return clamp01(2.0 * t * t);
        const double u = (x - b) / (b - a);
        return clamp01(1.0 - 2.0 * u * u);
      }
      case MfFamily::zmf: {
        const double a = params_[0], b = params_[1];
        if (x <= a) return 1.0;
        if (x >= b) return 0.0;
        const double t = (x - a) / (b - a);
        if (x <= (a + b) / 2.0) return clamp01(1.0 - 2.0 * t * t);
        const double u = (x - b) / (b - a);
        return clamp01(2.0 * u * u);
      }
    }
    return 0.0;
  }

 private:
  static double clamp01(double v) noexcept { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

  void validate() const {
    const auto finite = [&]() {
      for (double p : params_)
        if (!std::isfinite(p)) return false;
      return true;
    };
    const auto expectArity = [&](std::size_t n) {
      if (params_.size() != n)
        fail(ErrorCode::InvalidParams, std::string(mfFamilyName(family_)) + " expects " +
                                           std::to_string(n) + " parameters");
    };
    switch (family_) {
      case MfFamily::gaussmf:
        expectArity(2);
        if (!finite() || params_[1] < 0.0) fail(ErrorCode::InvalidParams, "gaussmf requires sigma >= 0");
        break;
      case MfFamily::trapmf:
        expectArity(4);
        if (!finite() || !(params_[0] <= params_[1] && params_[1] <= params_[2] && params_[2] <= params_[3]))
          fail(ErrorCode::InvalidParams, "trapmf requires a <= b <= c <= d");
        break;
      case MfFamily::gbellmf:
        expectArity(3);
        if (!finite() || params_[1] < 0.0 || params_[2] <= 0.0)
          fail(ErrorCode::InvalidParams, "gbellmf requires half-width a >= 0 and slope b > 0");
        break;
      case MfFamily::smf:
      case MfFamily::zmf:
        expectArity(2);
        if (!finite() || !(params_[0] <= params_[1]))
          fail(ErrorCode::InvalidParams, std::string(mfFamilyName(family_)) + " requires a <= b");
        break;
    }
  }

  MfFamily family_;
  std::vector<double> params_;
};

// ---------------------------------------------------------------------------
// Fuzzy set operations on degrees (standard min/max/complement algebra).
// ---------------------------------------------------------------------------

inline double fuzzyComplement(double d) noexcept { return 1.0 - d; }
inline double fuzzyIntersect(double d1, double d2) noexcept { return std::min(d1, d2); }
inline double fuzzyUnion(double d1, double d2) noexcept { return std::max(d1, d2); }

// n evenly spaced samples of mu over [lo, hi].
inline std::vector<std::pair<double, double>> sampleCurve(const MembershipFunction& mf, double lo,
                                                          double hi, std::size_t n) {
  if (!(lo < hi)) fail(ErrorCode::InvalidRange, "sampleCurve requires lo < hi");
  if (n < 2) fail(ErrorCode::InvalidRange, "sampleCurve requires at least 2 samples");
  std::vector<std::pair<double, double>> points;
  points.reserve(n);
  const double step = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = i + 1 == n ? hi : lo + step * static_cast<double>(i);
    points.emplace_back(x, mf.evaluate(x));
  }
  return points;
}

}  // namespace ftswrl
