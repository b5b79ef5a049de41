#pragma once

#include <cctype>
#include <cmath>
#include <compare>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

#include "ftswrl/errors.hpp"

namespace ftswrl {

// ---------------------------------------------------------------------------
// Granularity: the seven crisp units of the valid-time model. Each unit maps
// to a fixed millisecond factor (month = 30 days, year = 365 days); duration
// arithmetic is deliberately calendar-free so it stays deterministic.
// ---------------------------------------------------------------------------

enum class Granularity {
  years,
  months,
  days,
  hours,
  minutes,
  seconds,
  milliseconds,
};

constexpr std::int64_t millisPerUnit(Granularity g) noexcept {
  switch (g) {
    case Granularity::years: return 31536000000LL;  // 365 days
    case Granularity::months: return 2592000000LL;  // 30 days
    case Granularity::days: return 86400000LL;
    case Granularity::hours: return 3600000LL;
    case Granularity::minutes: return 60000LL;
    case Granularity::seconds: return 1000LL;
    case Granularity::milliseconds: return 1LL;
  }
  return 1;
}

constexpr const char* granularityName(Granularity g) noexcept {
  switch (g) {
    case Granularity::years: return "years";
    case Granularity::months: return "months";
    case Granularity::days: return "days";
    case Granularity::hours: return "hours";
    case Granularity::minutes: return "minutes";
    case Granularity::seconds: return "seconds";
    case Granularity::milliseconds: return "milliseconds";
  }
  return "?";
}

inline std::optional<Granularity> granularityFromName(std::string_view name) {
  std::string n;
  n.reserve(name.size());
  for (char c : name) n.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (n == "year" || n == "years") return Granularity::years;
  if (n == "month" || n == "months") return Granularity::months;
  if (n == "day" || n == "days") return Granularity::days;
  if (n == "hour" || n == "hours") return Granularity::hours;
  if (n == "minute" || n == "minutes") return Granularity::minutes;
  if (n == "second" || n == "seconds") return Granularity::seconds;
  if (n == "millisecond" || n == "milliseconds") return Granularity::milliseconds;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Instant: UTC timestamp, signed milliseconds since the Unix epoch.
// ---------------------------------------------------------------------------

struct Instant {
  std::int64_t epochMillis{0};

  auto operator<=>(const Instant&) const = default;
};

// ---------------------------------------------------------------------------
// Duration: non-negative count of a granularity. Counts are decimals because
// fuzzification produces fractional counts; the canonical value is in
// milliseconds.
// ---------------------------------------------------------------------------

struct Duration {
  double count{0.0};
  Granularity granularity{Granularity::milliseconds};

  bool operator==(const Duration&) const = default;

  double millisExact() const noexcept { return count * static_cast<double>(millisPerUnit(granularity)); }
};

inline Duration makeDuration(double count, Granularity g) {
  if (!std::isfinite(count) || count < 0.0)
    fail(ErrorCode::MalformedDuration, "duration count must be a finite non-negative number");
  return Duration{count, g};
}

// Canonical milliseconds, rounded to the nearest integer millisecond.
inline std::int64_t durationMillis(const Duration& d) {
  const double ms = d.millisExact();
  if (!(std::fabs(ms) < 9.0e18))
    fail(ErrorCode::Overflow, "duration exceeds the representable timestamp range");
  return static_cast<std::int64_t>(std::llround(ms));
}

enum class Ordering { less, equal, greater };

inline Ordering compareDurations(const Duration& a, const Duration& b) {
  const double x = a.millisExact();
  const double y = b.millisExact();
  if (x < y) return Ordering::less;
  if (x > y) return Ordering::greater;
  return Ordering::equal;
}

inline Instant addDuration(Instant t, const Duration& d, int sign) {
  const std::int64_t delta = durationMillis(d);
  std::int64_t shifted = 0;
  const std::int64_t signedDelta = sign < 0 ? -delta : delta;
  if (__builtin_add_overflow(t.epochMillis, signedDelta, &shifted))
    fail(ErrorCode::Overflow, "instant arithmetic overflow");
  return Instant{shifted};
}

// ---------------------------------------------------------------------------
// Period: proper half-open interval [start, finish). Half-open endpoints make
// meets/metBy unambiguous.
// ---------------------------------------------------------------------------

struct Period {
  Instant start;
  Instant finish;

  auto operator<=>(const Period&) const = default;
};

inline Period makePeriod(Instant start, Instant finish) {
  if (!(start < finish))
    fail(ErrorCode::InvalidPeriod, "period requires start < finish (zero-length periods rejected)");
  return Period{start, finish};
}

// ---------------------------------------------------------------------------
// Allen relations.
// ---------------------------------------------------------------------------

enum class AllenRelation {
  equals,
  before,
  after,
  meets,
  metBy,
  overlaps,
  overlappedBy,
  contains,
  during,
  starts,
  startedBy,
  finishes,
  finishedBy,
};

inline constexpr int kAllenRelationCount = 13;

inline constexpr AllenRelation kAllAllenRelations[kAllenRelationCount] = {
    AllenRelation::equals,   AllenRelation::before,       AllenRelation::after,
    AllenRelation::meets,    AllenRelation::metBy,        AllenRelation::overlaps,
    AllenRelation::overlappedBy, AllenRelation::contains, AllenRelation::during,
    AllenRelation::starts,   AllenRelation::startedBy,    AllenRelation::finishes,
    AllenRelation::finishedBy,
};

constexpr AllenRelation inverse(AllenRelation r) noexcept {
  switch (r) {
    case AllenRelation::equals: return AllenRelation::equals;
    case AllenRelation::before: return AllenRelation::after;
    case AllenRelation::after: return AllenRelation::before;
    case AllenRelation::meets: return AllenRelation::metBy;
    case AllenRelation::metBy: return AllenRelation::meets;
    case AllenRelation::overlaps: return AllenRelation::overlappedBy;
    case AllenRelation::overlappedBy: return AllenRelation::overlaps;
    case AllenRelation::contains: return AllenRelation::during;
    case AllenRelation::during: return AllenRelation::contains;
    case AllenRelation::starts: return AllenRelation::startedBy;
    case AllenRelation::startedBy: return AllenRelation::starts;
    case AllenRelation::finishes: return AllenRelation::finishedBy;
    case AllenRelation::finishedBy: return AllenRelation::finishes;
  }
  return AllenRelation::equals;
}

constexpr const char* allenName(AllenRelation r) noexcept {
  switch (r) {
    case AllenRelation::equals: return "equals";
    case AllenRelation::before: return "before";
    case AllenRelation::after: return "after";
    case AllenRelation::meets: return "meets";
    case AllenRelation::metBy: return "metBy";
    case AllenRelation::overlaps: return "overlaps";
    case AllenRelation::overlappedBy: return "overlappedBy";
    case AllenRelation::contains: return "contains";
    case AllenRelation::during: return "during";
    case AllenRelation::starts: return "starts";
    case AllenRelation::startedBy: return "startedBy";
    case AllenRelation::finishes: return "finishes";
    case AllenRelation::finishedBy: return "finishedBy";
  }
  return "?";
}

inline std::optional<AllenRelation> allenFromName(std::string_view name) {
  for (AllenRelation r : kAllAllenRelations)
    if (name == allenName(r)) return r;
  return std::nullopt;
}

// The unique relation holding between two proper periods, by endpoint
// comparison on [start, finish).
inline AllenRelation allenRelation(const Period& a, const Period& b) {
  const std::int64_t s1 = a.start.epochMillis, f1 = a.finish.epochMillis;
  const std::int64_t s2 = b.start.epochMillis, f2 = b.finish.epochMillis;
  if (s1 == s2 && f1 == f2) return AllenRelation::equals;
  if (f1 < s2) return AllenRelation::before;
  if (f2 < s1) return AllenRelation::after;
  if (f1 == s2) return AllenRelation::meets;
  if (f2 == s1) return AllenRelation::metBy;
  if (s1 == s2) return f1 < f2 ? AllenRelation::starts : AllenRelation::startedBy;
  if (f1 == f2) return s1 > s2 ? AllenRelation::finishes : AllenRelation::finishedBy;
  if (s1 < s2 && f1 > f2) return AllenRelation::contains;
  if (s1 > s2 && f1 < f2) return AllenRelation::during;
  if (s1 < s2) return AllenRelation::overlaps;  // s1 < s2 < f1 < f2 here
  return AllenRelation::overlappedBy;
}

// ---------------------------------------------------------------------------
// ISO 8601 parse/format (UTC only, millisecond precision).
//
// Accepted: YYYY, YYYY-MM, YYYY-MM-DD, and date "T" HH:MM[:SS[.fff]] with an
// optional zone designator (Z, +-HH:MM, +-HHMM, +-HH). Date-only input means
// midnight UTC. Canonical output is YYYY-MM-DDTHH:MM:SS[.mmm]Z.
// ---------------------------------------------------------------------------

namespace detail {

// Proleptic Gregorian day count (days since 1970-01-01).
constexpr std::int64_t daysFromCivil(std::int64_t y, unsigned m, unsigned d) noexcept {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

struct CivilDate {
  std::int64_t year;
  unsigned month;
  unsigned day;
};

constexpr CivilDate civilFromDays(std::int64_t z) noexcept {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  const unsigned d = doy - (153 * mp + 2) / 5 + 1;
  const unsigned m = mp < 10 ? mp + 3 : mp - 9;
  return CivilDate{y + (m <= 2), m, d};
}

constexpr bool isLeapYear(std::int64_t y) noexcept {
  return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
}

constexpr unsigned daysInMonth(std::int64_t y, unsigned m) noexcept {
  constexpr unsigned lengths[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  if (m == 2 && isLeapYear(y)) return 29;
  return lengths[m - 1];
}

class InstantLexer {
 public:
  explicit InstantLexer(std::string_view text) : text_(text) {}

  bool done() const noexcept { return pos_ >= text_.size(); }
  char peek() const noexcept { return done() ? '\0' : text_[pos_]; }
  bool consume(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  // Fixed-width unsigned decimal field.
  std::optional<int> digits(int width) {
    if (pos_ + static_cast<std::size_t>(width) > text_.size()) return std::nullopt;
    int value = 0;
    for (int i = 0; i < width; ++i) {
      const char c = text_[pos_ + static_cast<std::size_t>(i)];
      if (c < '0' || c > '9') return std::nullopt;
      value = value * 10 + (c - '0');
    }
    pos_ += static_cast<std::size_t>(width);
    return value;
  }

  std::size_t pos() const noexcept { return pos_; }

 private:
  std::string_view text_;
  std::size_t pos_{0};
};

}  // namespace detail

inline Instant parseInstant(std::string_view text) {
  const auto malformed = [&]() -> void {
    fail(ErrorCode::MalformedInstant, "not an ISO 8601 date or dateTime: '" + std::string(text) + "'");
  };

  detail::InstantLexer lex(text);
  const auto year = lex.digits(4);
  if (!year) malformed();

  int month = 1, day = 1;
  if (lex.consume('-')) {
    const auto m = lex.digits(2);
    if (!m) malformed();
    month = *m;
    if (lex.consume('-')) {
      const auto d = lex.digits(2);
      if (!d) malformed();
      day = *d;
    }
  }
  if (month < 1 || month > 12) malformed();
  if (day < 1 || day > static_cast<int>(detail::daysInMonth(*year, static_cast<unsigned>(month)))) malformed();

  std::int64_t msOfDay = 0;
  std::int64_t offsetMs = 0;
  if (lex.consume('T') || lex.consume(' ')) {
    const auto hh = lex.digits(2);
    if (!hh || !lex.consume(':')) malformed();
    const auto mm = lex.digits(2);
    if (!mm) malformed();
    int ss = 0, millis = 0;
    if (lex.consume(':')) {
      const auto s = lex.digits(2);
      if (!s) malformed();
      ss = *s;
      if (lex.consume('.')) {
        int scale = 100, count = 0;
        while (!lex.done() && std::isdigit(static_cast<unsigned char>(lex.peek()))) {
          const int d = lex.peek() - '0';
          if (count < 3) millis += d * scale;
          else if (d != 0) malformed();  // beyond millisecond precision
          scale /= 10;
          ++count;
          lex.consume(lex.peek());
        }
        if (count == 0) malformed();
      }
    }
    if (*hh > 23 || *mm > 59 || ss > 59) malformed();
    msOfDay = ((*hh * 60LL + *mm) * 60LL + ss) * 1000LL + millis;

    if (!lex.done()) {
      if (lex.consume('Z')) {
        // UTC, nothing to add
      } else if (lex.peek() == '+' || lex.peek() == '-') {
        const int sign = lex.peek() == '-' ? -1 : 1;
        lex.consume(lex.peek());
        const auto oh = lex.digits(2);
        if (!oh) malformed();
        int om = 0;
        if (lex.consume(':')) {
          const auto m2 = lex.digits(2);
          if (!m2) malformed();
          om = *m2;
        } else if (!lex.done()) {
          const auto m2 = lex.digits(2);
          if (!m2) malformed();
          om = *m2;
        }
        if (*oh > 14 || om > 59) malformed();
        offsetMs = sign * ((*oh * 60LL + om) * 60000LL);
      } else {
        malformed();
      }
    }
  }
  if (!lex.done()) malformed();

  const std::int64_t days = detail::daysFromCivil(*year, static_cast<unsigned>(month), static_cast<unsigned>(day));
  return Instant{days * 86400000LL + msOfDay - offsetMs};
}

inline std::string formatInstant(Instant t) {
  std::int64_t days = t.epochMillis / 86400000LL;
  std::int64_t msod = t.epochMillis % 86400000LL;
  if (msod < 0) {
    msod += 86400000LL;
    --days;
  }
  const auto civil = detail::civilFromDays(days);
  const int hh = static_cast<int>(msod / 3600000LL);
  const int mm = static_cast<int>(msod / 60000LL % 60);
  const int ss = static_cast<int>(msod / 1000LL % 60);
  const int millis = static_cast<int>(msod % 1000LL);

  char buf[48];
  if (millis != 0) {
    std::snprintf(buf, sizeof(buf), "%04lld-%02u-%02uT%02d:%02d:%02d.%03dZ",
                  static_cast<long long>(civil.year), civil.month, civil.day, hh, mm, ss, millis);
  } else {
    std::snprintf(buf, sizeof(buf), "%04lld-%02u-%02uT%02d:%02d:%02dZ",
                  static_cast<long long>(civil.year), civil.month, civil.day, hh, mm, ss);
  }
  return buf;
}

// ---------------------------------------------------------------------------
// Duration literals: "<count> <granularity>", e.g. "30 days", "13.125 days".
// ---------------------------------------------------------------------------

// Shortest decimal text that parses back to exactly the same double.
inline std::string formatDecimal(double v) {
  if (v == static_cast<double>(static_cast<long long>(v)) && std::fabs(v) < 9.0e15) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%lld", static_cast<long long>(v));
    return buf;
  }
  char buf[40];
  for (int precision = 1; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
    if (std::strtod(buf, nullptr) == v) return buf;
  }
  return buf;
}

inline Duration parseDuration(std::string_view text) {
  const std::size_t space = text.find(' ');
  if (space == std::string_view::npos || space == 0 || space + 1 >= text.size())
    fail(ErrorCode::MalformedDuration, "expected '<count> <granularity>': '" + std::string(text) + "'");
  const std::string countText(text.substr(0, space));
  char* end = nullptr;
  const double count = std::strtod(countText.c_str(), &end);
  if (end != countText.c_str() + countText.size())
    fail(ErrorCode::MalformedDuration, "bad duration count: '" + countText + "'");
  const auto g = granularityFromName(text.substr(space + 1));
  if (!g)
    fail(ErrorCode::UnknownGranularity, "unknown granularity: '" + std::string(text.substr(space + 1)) + "'");
  return makeDuration(count, *g);
}

inline std::string formatDuration(const Duration& d) {
  return formatDecimal(d.count) + " " + granularityName(d.granularity);
}

// Period literal: "<startISO>/<finishISO>" (ISO 8601 interval syntax).
inline Period parsePeriod(std::string_view text) {
  const std::size_t slash = text.find('/');
  if (slash == std::string_view::npos)
    fail(ErrorCode::InvalidPeriod, "expected '<start>/<finish>': '" + std::string(text) + "'");
  return makePeriod(parseInstant(text.substr(0, slash)), parseInstant(text.substr(slash + 1)));
}

inline std::string formatPeriod(const Period& p) {
  return formatInstant(p.start) + "/" + formatInstant(p.finish);
}

}  // namespace ftswrl
