#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ftswrl/errors.hpp"
#include "ftswrl/fuzzy.hpp"
#include "ftswrl/temporal.hpp"

namespace ftswrl {

// ---------------------------------------------------------------------------
// Imprecise temporal expressions (ITEs) fuzzified into intervals.
//
// A FuzzyInterval is the decision interval [minFT, maxFT] around the stated
// valid time T (the peak), together with a membership function over the same
// axis and the weight degree w that produced it. Axes are milliseconds,
// either on the duration axis or the instant (epoch) axis.
// ---------------------------------------------------------------------------

enum class Axis { durationMs, instantMs };

constexpr const char* axisName(Axis a) noexcept {
  return a == Axis::durationMs ? "duration" : "instant";
}

inline std::optional<Axis> axisFromName(std::string_view name) {
  if (name == "duration") return Axis::durationMs;
  if (name == "instant") return Axis::instantMs;
  return std::nullopt;
}

enum class IteKind { about, within, few, before, after };

constexpr const char* iteKindName(IteKind k) noexcept {
  switch (k) {
    case IteKind::about: return "about";
    case IteKind::within: return "within";
    case IteKind::few: return "few";
    case IteKind::before: return "before";
    case IteKind::after: return "after";
  }
  return "?";
}

// Alias resolution is case-insensitive and covers the documented surface
// forms (around/approximately/nearly, until/prior to, later than, ...).
inline std::optional<IteKind> iteKindFromName(std::string_view name) {
  std::string n;
  n.reserve(name.size());
  for (char c : name) n.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (n == "about" || n == "around" || n == "approximately" || n == "approx" || n == "nearly")
    return IteKind::about;
  if (n == "within" || n == "in less than" || n == "in under" || n == "at most" || n == "in no more than")
    return IteKind::within;
  if (n == "few" || n == "a few" || n == "a little" || n == "more or less") return IteKind::few;
  if (n == "before" || n == "until" || n == "earlier than" || n == "previously" || n == "prior to")
    return IteKind::before;
  if (n == "after" || n == "later than" || n == "afterwards" || n == "subsequent to")
    return IteKind::after;
  return std::nullopt;
}

inline IteKind parseIteKind(std::string_view name) {
  const auto k = iteKindFromName(name);
  if (!k) fail(ErrorCode::UnknownIte, "unknown imprecise temporal expression: '" + std::string(name) + "'");
  return *k;
}

struct FuzzyInterval {
  Axis axis{Axis::durationMs};
  double minFT{0.0};
  double maxFT{0.0};
  double peak{0.0};
  double w{1.0};
  MembershipFunction mf{MfFamily::gaussmf, {0.0, 0.0}};

  bool operator==(const FuzzyInterval&) const = default;
};

namespace detail {

inline void checkWeight(double w) {
  if (!(w > 0.0 && w <= 1.0))
    fail(ErrorCode::InvalidWeight, "weight degree must satisfy 0 < w <= 1, got " + formatDecimal(w));
}

inline void checkPositiveT(double t) {
  if (!(t > 0.0) || !std::isfinite(t))
    fail(ErrorCode::NonPositiveT, "valid time T must be positive on its axis, got " + formatDecimal(t));
}

// sqrt(2 ln 2): gauss sigma = delta / kGaussHalfWidth puts mu = 0.5 at c +- delta.
inline const double kGaussHalfWidth = std::sqrt(2.0 * std::log(2.0));

}  // namespace detail

// about (T): [T - (1-w)T/2, T + (1-w)T/2], Gaussian peaked at T with the 0.5
// crossover on both borders.
inline FuzzyInterval fuzzifyAbout(double t, Axis axis, double w) {
  detail::checkPositiveT(t);
  detail::checkWeight(w);
  const double delta = (1.0 - w) * t / 2.0;
  const double sigma = delta / detail::kGaussHalfWidth;
  return FuzzyInterval{axis, t - delta, t + delta, t, w, MembershipFunction::gauss(t, sigma)};
}

// within (T): [wT, T + (1-w)T], trapezoid whose ramps cross mu = 0.5 exactly
// at the borders and whose plateau covers T.
inline FuzzyInterval fuzzifyWithin(double t, Axis axis, double w) {
  detail::checkPositiveT(t);
  detail::checkWeight(w);
  const double spread = (1.0 - w) * t;
  const double minFT = t - spread;
  const double maxFT = t + spread;
  const double a = minFT - spread / 2.0;
  const double b = minFT + spread / 2.0;
  const double c = maxFT - spread / 2.0;
  const double d = maxFT + spread / 2.0;
  return FuzzyInterval{axis, minFT, maxFT, t, w, MembershipFunction::trap(a, b, c, d)};
}

// few (T): [T - (1-w)0.75T, T + (1-w)0.75T], generalized bell with its 0.5
// crossover automatically at c +- a.
inline FuzzyInterval fuzzifyFew(double t, Axis axis, double w) {
  detail::checkPositiveT(t);
  detail::checkWeight(w);
  const double delta = (1.0 - w) * 0.75 * t;
  return FuzzyInterval{axis, t - delta, t + delta, t, w, MembershipFunction::gbell(t, delta, 2.0)};
}

// before (T): [T - (1-w)T/2, T], S-function with the 0.5 crossover at minFT
// and mu = 1 from T on (the flat side is excluded from the decision interval).
inline FuzzyInterval fuzzifyBefore(double t, Axis axis, double w) {
  detail::checkPositiveT(t);
  detail::checkWeight(w);
  const double delta = (1.0 - w) * t / 2.0;
  return FuzzyInterval{axis, t - delta, t, t, w, MembershipFunction::s(t - 2.0 * delta, t)};
}

// after (T): [T, T + (1-w)T/2], Z-function with mu = 1 at T and the 0.5
// crossover at maxFT.
inline FuzzyInterval fuzzifyAfter(double t, Axis axis, double w) {
  detail::checkPositiveT(t);
  detail::checkWeight(w);
  const double delta = (1.0 - w) * t / 2.0;
  return FuzzyInterval{axis, t, t + delta, t, w, MembershipFunction::z(t, t + 2.0 * delta)};
}

inline FuzzyInterval fuzzify(IteKind kind, double t, Axis axis, double w) {
  switch (kind) {
    case IteKind::about: return fuzzifyAbout(t, axis, w);
    case IteKind::within: return fuzzifyWithin(t, axis, w);
    case IteKind::few: return fuzzifyFew(t, axis, w);
    case IteKind::before: return fuzzifyBefore(t, axis, w);
    case IteKind::after: return fuzzifyAfter(t, axis, w);
  }
  fail(ErrorCode::UnknownIte, "unhandled ITE kind");
}

inline FuzzyInterval fuzzify(IteKind kind, const Duration& t, double w) {
  return fuzzify(kind, t.millisExact(), Axis::durationMs, w);
}

inline FuzzyInterval fuzzify(IteKind kind, Instant t, double w) {
  return fuzzify(kind, static_cast<double>(t.epochMillis), Axis::instantMs, w);
}

// Documented weight ranges per ITE; values outside warn rather than reject.
inline std::optional<std::string> weightRangeWarning(IteKind kind, double w) {
  const auto warn = [&](double lo, double hi) -> std::optional<std::string> {
    if (w < lo || w > hi) {
      return "weight " + formatDecimal(w) + " outside the suggested range " + formatDecimal(lo) +
             "-" + formatDecimal(hi) + " for '" + iteKindName(kind) + "'";
    }
    return std::nullopt;
  };
  switch (kind) {
    case IteKind::about: return warn(0.3, 0.7);
    case IteKind::before:
    case IteKind::after: return warn(0.6, 1.0);
    default: return std::nullopt;
  }
}

// ---------------------------------------------------------------------------
// Decision-interval membership.
// ---------------------------------------------------------------------------

struct SatisfiesResult {
  bool holds{false};
  double degree{0.0};
};

namespace detail {

// Comparison slack well below one millisecond: border values recomputed
// through decimal weights (e.g. 21 days from T = 30 days, w = 0.4) must land
// inside the closed interval despite rounding in the last double bits.
inline double borderSlack(const FuzzyInterval& iv, double t) noexcept {
  const double scale = std::max({std::fabs(iv.minFT), std::fabs(iv.maxFT), std::fabs(t), 1.0});
  return std::max(1e-3, 1e-12 * scale);
}

}  // namespace detail

inline SatisfiesResult satisfies(const FuzzyInterval& iv, double t, Axis axis) {
  if (axis != iv.axis)
    fail(ErrorCode::AxisMismatch, std::string("cannot compare a ") + axisName(axis) +
                                      " value against a " + axisName(iv.axis) + " interval");
  const double slack = detail::borderSlack(iv, t);
  const bool holds = t >= iv.minFT - slack && t <= iv.maxFT + slack;
  return SatisfiesResult{holds, iv.mf.evaluate(t)};
}

inline SatisfiesResult satisfies(const FuzzyInterval& iv, const Duration& t) {
  return satisfies(iv, t.millisExact(), Axis::durationMs);
}

inline SatisfiesResult satisfies(const FuzzyInterval& iv, Instant t) {
  return satisfies(iv, static_cast<double>(t.epochMillis), Axis::instantMs);
}

enum class TimingClass { early, onTime, late, outOfRange };

constexpr const char* timingClassName(TimingClass c) noexcept {
  switch (c) {
    case TimingClass::early: return "early";
    case TimingClass::onTime: return "onTime";
    case TimingClass::late: return "late";
    case TimingClass::outOfRange: return "outOfRange";
  }
  return "?";
}

inline TimingClass classifyEarlyLate(const FuzzyInterval& iv, double t, Axis axis) {
  if (axis != iv.axis)
    fail(ErrorCode::AxisMismatch, std::string("cannot classify a ") + axisName(axis) +
                                      " value against a " + axisName(iv.axis) + " interval");
  const double slack = detail::borderSlack(iv, t);
  if (t < iv.minFT - slack || t > iv.maxFT + slack) return TimingClass::outOfRange;
  if (std::fabs(t - iv.peak) <= slack) return TimingClass::onTime;
  return t < iv.peak ? TimingClass::early : TimingClass::late;
}

// ---------------------------------------------------------------------------
// Fuzzy counts and fuzzy granularities.
// ---------------------------------------------------------------------------

struct FuzzyCountSpec {
  std::string keyword;
  double lo{0.0};
  double hi{0.0};
  // this/next/last address a neighbouring stride instead of multiplying; the
  // direction keeps the count range non-negative.
  bool offsetSemantics{false};
  int offsetDirection{0};

  double midpoint() const noexcept { return (lo + hi) / 2.0; }

  bool operator==(const FuzzyCountSpec&) const = default;
};

struct FuzzyGranularitySpec {
  std::string keyword;
  Duration expansion;
  // noon is a clock-time anchor (offset from midnight), not a span.
  bool clockTime{false};

  bool operator==(const FuzzyGranularitySpec&) const = default;
};

// ---------------------------------------------------------------------------
// Engine configuration: default weight, the fuzzy-count table, deictic window
// and granularity expansions, plus the pinned clock. All tables are
// overridable from a JSON config file (see config.hpp).
// ---------------------------------------------------------------------------

struct EngineConfig {
  double defaultW{0.5};
  std::map<std::string, FuzzyCountSpec> fuzzyCounts;
  std::map<std::string, FuzzyGranularitySpec> fuzzyGranularities;
  Duration deicticWindow{7.0, Granularity::days};
  std::optional<Instant> now;

  static EngineConfig defaults() {
    EngineConfig cfg;
    const auto count = [&](const char* k, double lo, double hi) {
      cfg.fuzzyCounts[k] = FuzzyCountSpec{k, lo, hi, false, 0};
    };
    count("few", 2.0, 4.0);
    count("several", 3.0, 7.0);
    count("many", 7.0, 20.0);
    count("twice", 2.0, 2.0);
    cfg.fuzzyCounts["this"] = FuzzyCountSpec{"this", 0.0, 0.0, true, 0};
    cfg.fuzzyCounts["next"] = FuzzyCountSpec{"next", 1.0, 1.0, true, +1};
    cfg.fuzzyCounts["last"] = FuzzyCountSpec{"last", 1.0, 1.0, true, -1};

    const auto gran = [&](const char* k, double count2, Granularity g, bool clock = false) {
      cfg.fuzzyGranularities[k] = FuzzyGranularitySpec{k, Duration{count2, g}, clock};
    };
    gran("weeks", 7.0, Granularity::days);
    gran("weekend", 2.0, Granularity::days);
    gran("fortnight", 14.0, Granularity::days);
    gran("quarter", 90.0, Granularity::days);
    gran("noon", 12.0, Granularity::hours, true);
    return cfg;
  }
};

inline std::string lowercased(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return out;
}

inline FuzzyCountSpec resolveFuzzyCount(std::string_view keyword, const EngineConfig& cfg) {
  const auto it = cfg.fuzzyCounts.find(lowercased(keyword));
  if (it == cfg.fuzzyCounts.end())
    fail(ErrorCode::UnknownKeyword, "unknown fuzzy count keyword: '" + std::string(keyword) + "'");
  return it->second;
}

inline FuzzyGranularitySpec resolveFuzzyGranularity(std::string_view keyword, const EngineConfig& cfg) {
  const auto it = cfg.fuzzyGranularities.find(lowercased(keyword));
  if (it == cfg.fuzzyGranularities.end())
    fail(ErrorCode::UnknownKeyword, "unknown fuzzy granularity keyword: '" + std::string(keyword) + "'");
  return it->second;
}

// Milliseconds per unit for a granularity name that may be crisp ("days") or
// fuzzy ("weeks" -> 7 days).
inline double granularityUnitMillis(std::string_view name, const EngineConfig& cfg) {
  if (const auto g = granularityFromName(name)) return static_cast<double>(millisPerUnit(*g));
  const auto it = cfg.fuzzyGranularities.find(lowercased(name));
  if (it != cfg.fuzzyGranularities.end()) return it->second.expansion.millisExact();
  fail(ErrorCode::UnknownGranularity, "unknown granularity: '" + std::string(name) + "'");
}

// Duration text that additionally understands fuzzy granularities, e.g.
// "2 weeks" -> 14 days.
inline Duration parseFuzzyDuration(std::string_view text, const EngineConfig& cfg) {
  const std::size_t space = text.find(' ');
  if (space != std::string_view::npos) {
    const std::string unit(text.substr(space + 1));
    if (!granularityFromName(unit)) {
      const auto it = cfg.fuzzyGranularities.find(lowercased(unit));
      if (it != cfg.fuzzyGranularities.end()) {
        const std::string countText(text.substr(0, space));
        char* end = nullptr;
        const double count = std::strtod(countText.c_str(), &end);
        if (end != countText.c_str() + countText.size())
          fail(ErrorCode::MalformedDuration, "bad duration count: '" + countText + "'");
        const Duration& e = it->second.expansion;
        return makeDuration(count * e.count, e.granularity);
      }
    }
  }
  return parseDuration(text);
}

// ---------------------------------------------------------------------------
// Date granularities: deictic keywords evaluated against the engine clock.
// ---------------------------------------------------------------------------

using DateGranularityArg = std::variant<std::monostate, Duration, Instant>;
using InstantOrPeriod = std::variant<Instant, Period>;

inline bool isDateGranularityKeyword(std::string_view keyword) {
  const std::string k = lowercased(keyword);
  return k == "ago" || k == "since" || k == "past" || k == "recently" || k == "currently" ||
         k == "nowadays" || k == "lately" || k == "earlier" || k == "present";
}

inline InstantOrPeriod evalDateGranularity(std::string_view keyword, const DateGranularityArg& arg,
                                           Instant now, const EngineConfig& cfg) {
  const std::string k = lowercased(keyword);
  if (k == "ago") {
    const auto* d = std::get_if<Duration>(&arg);
    if (!d) fail(ErrorCode::ArityError, "'ago' requires a duration argument");
    return addDuration(now, *d, -1);
  }
  if (k == "since") {
    const auto* t = std::get_if<Instant>(&arg);
    if (!t) fail(ErrorCode::ArityError, "'since' requires an instant argument");
    if (*t >= now)
      fail(ErrorCode::FutureSince, "'since " + formatInstant(*t) + "' starts at or after now (" +
                                       formatInstant(now) + ")");
    return makePeriod(*t, now);
  }
  if (k == "past") {
    const auto* d = std::get_if<Duration>(&arg);
    if (!d) fail(ErrorCode::ArityError, "'past' requires a duration argument");
    return makePeriod(addDuration(now, *d, -1), now);
  }
  if (k == "recently" || k == "currently" || k == "nowadays" || k == "lately" || k == "earlier" ||
      k == "present") {
    if (!std::holds_alternative<std::monostate>(arg))
      fail(ErrorCode::ArityError, "'" + k + "' takes no argument besides the current time");
    return makePeriod(addDuration(now, cfg.deicticWindow, -1), now);
  }
  fail(ErrorCode::UnknownKeyword, "unknown date granularity keyword: '" + std::string(keyword) + "'");
}

// ---------------------------------------------------------------------------
// Set granularities: recurring instants anchor + k * stride within a horizon.
// ---------------------------------------------------------------------------

inline std::optional<Duration> setGranularityStride(std::string_view keyword) {
  const std::string k = lowercased(keyword);
  if (k == "yearly" || k == "peryear") return Duration{1.0, Granularity::years};
  if (k == "monthly") return Duration{1.0, Granularity::months};
  if (k == "weekly" || k == "perweek") return Duration{7.0, Granularity::days};
  if (k == "daily") return Duration{1.0, Granularity::days};
  if (k == "hourly" || k == "perhour") return Duration{1.0, Granularity::hours};
  if (k == "perminute") return Duration{1.0, Granularity::minutes};
  if (k == "persecond" || k == "perseconds") return Duration{1.0, Granularity::seconds};
  return std::nullopt;
}

inline std::vector<Instant> expandSetGranularity(std::string_view keyword, Instant anchor,
                                                 const Period& horizon) {
  const auto stride = setGranularityStride(keyword);
  if (!stride)
    fail(ErrorCode::UnknownKeyword, "unknown set granularity keyword: '" + std::string(keyword) + "'");
  const std::int64_t step = durationMillis(*stride);

  std::vector<Instant> out;
  std::int64_t first = anchor.epochMillis;
  if (first < horizon.start.epochMillis) {
    const std::int64_t gap = horizon.start.epochMillis - first;
    first += (gap + step - 1) / step * step;  // ceil to the next occurrence
  }
  for (std::int64_t t = first; t < horizon.finish.epochMillis; t += step) out.push_back(Instant{t});
  return out;
}

// ---------------------------------------------------------------------------
// Fuzzy Allen relations: possibility and necessity of a relation between two
// fuzzy periods. A fuzzy period gives each endpoint an interval of plausible
// values; crisp instantiations are integer-millisecond choices inside those
// bounds with start < finish. A relation is possible when some instantiation
// satisfies it and necessary when every instantiation does.
//
// Closed form: each relation's endpoint constraints, merged over equalities,
// reduce to one strictly increasing chain of box-bounded values, so
// feasibility is a single monotone sweep. Necessity follows from the Allen
// partition: a relation is necessary exactly when no other relation is
// possible.
// ---------------------------------------------------------------------------

struct FuzzyPeriod {
  FuzzyInterval start;
  FuzzyInterval finish;
};

struct FuzzyAllenVerdict {
  bool possible{false};
  bool necessary{false};
};

namespace detail {

struct EndpointBox {
  std::int64_t lo;
  std::int64_t hi;

  bool empty() const noexcept { return lo > hi; }
  EndpointBox intersect(const EndpointBox& o) const noexcept {
    return EndpointBox{std::max(lo, o.lo), std::min(hi, o.hi)};
  }
};

inline EndpointBox toEndpointBox(const FuzzyInterval& iv) {
  // Integer instantiations within real bounds; the nudge absorbs double
  // rounding from the fuzzification arithmetic.
  return EndpointBox{static_cast<std::int64_t>(std::ceil(iv.minFT - 1e-3)),
                     static_cast<std::int64_t>(std::floor(iv.maxFT + 1e-3))};
}

// Feasibility of one strictly increasing integer per box, left to right.
inline bool chainFeasible(std::initializer_list<EndpointBox> boxes) {
  bool firstBox = true;
  std::int64_t p = 0;
  for (const EndpointBox& box : boxes) {
    if (box.empty()) return false;
    p = firstBox ? box.lo : std::max(box.lo, p + 1);
    firstBox = false;
    if (p > box.hi) return false;
  }
  return true;
}

inline bool allenPossible(const EndpointBox& s1, const EndpointBox& f1, const EndpointBox& s2,
                          const EndpointBox& f2, AllenRelation rel) {
  switch (rel) {
    case AllenRelation::equals: return chainFeasible({s1.intersect(s2), f1.intersect(f2)});
    case AllenRelation::before: return chainFeasible({s1, f1, s2, f2});
    case AllenRelation::after: return chainFeasible({s2, f2, s1, f1});
    case AllenRelation::meets: return chainFeasible({s1, f1.intersect(s2), f2});
    case AllenRelation::metBy: return chainFeasible({s2, f2.intersect(s1), f1});
    case AllenRelation::overlaps: return chainFeasible({s1, s2, f1, f2});
    case AllenRelation::overlappedBy: return chainFeasible({s2, s1, f2, f1});
    case AllenRelation::contains: return chainFeasible({s1, s2, f2, f1});
    case AllenRelation::during: return chainFeasible({s2, s1, f1, f2});
    case AllenRelation::starts: return chainFeasible({s1.intersect(s2), f1, f2});
    case AllenRelation::startedBy: return chainFeasible({s1.intersect(s2), f2, f1});
    case AllenRelation::finishes: return chainFeasible({s2, s1, f1.intersect(f2)});
    case AllenRelation::finishedBy: return chainFeasible({s1, s2, f1.intersect(f2)});
  }
  return false;
}

}  // namespace detail

inline FuzzyAllenVerdict fuzzyAllen(const FuzzyPeriod& a, const FuzzyPeriod& b, AllenRelation rel) {
  if (a.start.axis != a.finish.axis || b.start.axis != b.finish.axis || a.start.axis != b.start.axis)
    fail(ErrorCode::AxisMismatch, "fuzzy periods must share one axis");

  const detail::EndpointBox s1 = detail::toEndpointBox(a.start);
  const detail::EndpointBox f1 = detail::toEndpointBox(a.finish);
  const detail::EndpointBox s2 = detail::toEndpointBox(b.start);
  const detail::EndpointBox f2 = detail::toEndpointBox(b.finish);

  if (!detail::chainFeasible({s1, f1}) || !detail::chainFeasible({s2, f2}))
    fail(ErrorCode::DegenerateFuzzyPeriod, "fuzzy period admits no crisp instantiation with start < finish");

  FuzzyAllenVerdict verdict;
  verdict.possible = detail::allenPossible(s1, f1, s2, f2, rel);
  verdict.necessary = verdict.possible;
  if (verdict.possible) {
    for (AllenRelation other : kAllAllenRelations) {
      if (other == rel) continue;
      if (detail::allenPossible(s1, f1, s2, f2, other)) {
        verdict.necessary = false;
        break;
      }
    }
  }
  return verdict;
}

// Convenience: a crisp period viewed as a fuzzy one (all widths zero).
inline FuzzyPeriod crispFuzzyPeriod(const Period& p) {
  const auto point = [](Instant t) {
    const double v = static_cast<double>(t.epochMillis);
    return FuzzyInterval{Axis::instantMs, v, v, v, 1.0, MembershipFunction::gauss(v, 0.0)};
  };
  return FuzzyPeriod{point(p.start), point(p.finish)};
}

}  // namespace ftswrl
