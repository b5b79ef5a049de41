#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "ftswrl/config.hpp"
#include "ftswrl/errors.hpp"
#include "ftswrl/ite.hpp"
#include "ftswrl/temporal.hpp"

namespace ftswrl {

// ---------------------------------------------------------------------------
// Entities and typed literals.
// ---------------------------------------------------------------------------

struct EntityId {
  std::string name;

  auto operator<=>(const EntityId&) const = default;
};

inline bool isValidEntityName(std::string_view name) {
  if (name.empty()) return false;
  const char first = name[0];
  if (!(std::isalpha(static_cast<unsigned char>(first)) || first == '_')) return false;
  for (char c : name.substr(1))
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-')) return false;
  return true;
}

inline EntityId makeEntityId(std::string name) {
  if (!isValidEntityName(name))
    fail(ErrorCode::MalformedFact, "invalid entity name: '" + name + "'");
  return EntityId{std::move(name)};
}

// Typed literal values. The period variant carries results of date
// granularity built-ins (e.g. since/past) through bindings and dumps.
using LiteralValue =
    std::variant<std::string, std::int64_t, double, bool, Instant, Duration, Granularity, Period>;

struct Literal {
  LiteralValue value;

  bool operator==(const Literal&) const = default;
};

constexpr const char* literalTypeName(const LiteralValue& v) noexcept {
  switch (v.index()) {
    case 0: return "string";
    case 1: return "integer";
    case 2: return "decimal";
    case 3: return "boolean";
    case 4: return "instant";
    case 5: return "duration";
    case 6: return "granularity";
    case 7: return "period";
  }
  return "?";
}

inline std::string literalText(const Literal& lit) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::string>) return v;
        else if constexpr (std::is_same_v<T, std::int64_t>) return std::to_string(v);
        else if constexpr (std::is_same_v<T, double>) return formatDecimal(v);
        else if constexpr (std::is_same_v<T, bool>) return v ? "true" : "false";
        else if constexpr (std::is_same_v<T, Instant>) return formatInstant(v);
        else if constexpr (std::is_same_v<T, Duration>) return formatDuration(v);
        else if constexpr (std::is_same_v<T, Granularity>) return granularityName(v);
        else return formatPeriod(v);
      },
      lit.value);
}

using FactObject = std::variant<EntityId, Literal>;

inline std::string factObjectText(const FactObject& o) {
  if (const auto* e = std::get_if<EntityId>(&o)) return e->name;
  return literalText(std::get<Literal>(o));
}

// ---------------------------------------------------------------------------
// Facts.
// ---------------------------------------------------------------------------

struct Provenance {
  std::string rule;  // empty: asserted in the source document

  bool asserted() const noexcept { return rule.empty(); }
  bool operator==(const Provenance&) const = default;
};

struct Fact {
  EntityId subject;
  std::string predicate;
  FactObject object;
  Provenance provenance;
  std::optional<double> degree;  // only on facts derived through a fuzzy built-in

  bool operator==(const Fact&) const = default;
};

// Identity for set semantics: (subject, predicate, object). Provenance and
// degree are metadata; the first writer wins.
inline std::string factKey(const EntityId& s, const std::string& p, const FactObject& o) {
  std::string key = s.name;
  key += '\x1f';
  key += p;
  key += '\x1f';
  if (const auto* e = std::get_if<EntityId>(&o)) {
    key += "e:";
    key += e->name;
  } else {
    const Literal& lit = std::get<Literal>(o);
    key += literalTypeName(lit.value);
    key += ':';
    key += literalText(lit);
  }
  return key;
}

// ---------------------------------------------------------------------------
// Fuzzy temporal propositions: vague temporal facts kept in a partition
// disjoint from domain facts.
// ---------------------------------------------------------------------------

struct FuzzyTemporalProposition {
  struct Modifier {
    IteKind kind{IteKind::about};
    double w{1.0};

    bool operator==(const Modifier&) const = default;
  };

  EntityId id;
  std::optional<FuzzyInterval> fuzzyTime;      // instant axis
  std::optional<FuzzyInterval> fuzzyDuration;  // duration axis
  std::optional<Modifier> modifier;

  bool operator==(const FuzzyTemporalProposition&) const = default;
};

// ---------------------------------------------------------------------------
// KnowledgeBase: set-semantics fact store with insertion order preserved,
// indexed by predicate, plus class assertions and the proposition partition.
// ---------------------------------------------------------------------------

enum class InsertOutcome { inserted, duplicate };

class KnowledgeBase {
 public:
  InsertOutcome assertFact(Fact f) {
    if (f.predicate.empty()) fail(ErrorCode::MalformedFact, "fact predicate must be non-empty");
    if (!isValidEntityName(f.subject.name))
      fail(ErrorCode::MalformedFact, "invalid fact subject: '" + f.subject.name + "'");
    if (const auto* e = std::get_if<EntityId>(&f.object); e && !isValidEntityName(e->name))
      fail(ErrorCode::MalformedFact, "invalid fact object entity: '" + e->name + "'");
    if (f.degree && !(*f.degree > 0.0 && *f.degree <= 1.0))
      fail(ErrorCode::MalformedFact, "fact degree must lie in (0, 1]");

    const std::string key = factKey(f.subject, f.predicate, f.object);
    if (factIndex_.contains(key)) return InsertOutcome::duplicate;
    factIndex_.emplace(key, facts_.size());
    byPredicate_[f.predicate].push_back(facts_.size());
    facts_.push_back(std::move(f));
    return InsertOutcome::inserted;
  }

  InsertOutcome assertClass(EntityId entity, std::string className) {
    if (!isValidEntityName(entity.name))
      fail(ErrorCode::MalformedFact, "invalid entity name: '" + entity.name + "'");
    if (className.empty()) fail(ErrorCode::MalformedFact, "class name must be non-empty");
    std::string key = entity.name + '\x1f' + className;
    if (classKeys_.contains(key)) return InsertOutcome::duplicate;
    classKeys_.insert(std::move(key));
    byClass_[className].push_back(classAssertions_.size());
    classAssertions_.emplace_back(std::move(entity), std::move(className));
    return InsertOutcome::inserted;
  }

  void addProposition(FuzzyTemporalProposition p) {
    if (!p.fuzzyTime && !p.fuzzyDuration)
      fail(ErrorCode::MalformedFact,
           "proposition '" + p.id.name + "' needs a fuzzy time or a fuzzy duration");
    propositions_.push_back(std::move(p));
  }

  const std::vector<Fact>& facts() const noexcept { return facts_; }
  const std::vector<std::pair<EntityId, std::string>>& classAssertions() const noexcept {
    return classAssertions_;
  }
  const std::vector<FuzzyTemporalProposition>& propositions() const noexcept { return propositions_; }

  bool containsFact(const EntityId& s, const std::string& p, const FactObject& o) const {
    return factIndex_.contains(factKey(s, p, o));
  }

  const Fact* findFact(const EntityId& s, const std::string& p, const FactObject& o) const {
    const auto it = factIndex_.find(factKey(s, p, o));
    return it == factIndex_.end() ? nullptr : &facts_[it->second];
  }

  // Indices of facts with the given predicate, in insertion order.
  const std::vector<std::size_t>& factsWithPredicate(const std::string& predicate) const {
    static const std::vector<std::size_t> empty;
    const auto it = byPredicate_.find(predicate);
    return it == byPredicate_.end() ? empty : it->second;
  }

  const std::vector<std::size_t>& entitiesOfClass(const std::string& className) const {
    static const std::vector<std::size_t> empty;
    const auto it = byClass_.find(className);
    return it == byClass_.end() ? empty : it->second;
  }

  bool hasClass(const EntityId& entity, const std::string& className) const {
    return classKeys_.contains(entity.name + '\x1f' + className);
  }

  // Domain facts and propositions are disjoint partitions: dropping one
  // leaves the other untouched.
  void clearPropositions() noexcept { propositions_.clear(); }

  bool operator==(const KnowledgeBase& o) const {
    return facts_ == o.facts_ && classAssertions_ == o.classAssertions_ &&
           propositions_ == o.propositions_;
  }

 private:
  std::vector<Fact> facts_;
  std::unordered_map<std::string, std::size_t> factIndex_;
  std::unordered_map<std::string, std::vector<std::size_t>> byPredicate_;
  std::vector<std::pair<EntityId, std::string>> classAssertions_;
  std::unordered_set<std::string> classKeys_;
  std::unordered_map<std::string, std::vector<std::size_t>> byClass_;
  std::vector<FuzzyTemporalProposition> propositions_;
};

// ---------------------------------------------------------------------------
// Triple-pattern matching: each slot is either bound or a named variable.
// ---------------------------------------------------------------------------

struct TriplePattern {
  // unset optional = variable in that slot (name in subjectVar/objectVar)
  std::optional<EntityId> subject;
  std::string subjectVar{"s"};
  std::string predicate;
  std::optional<FactObject> object;
  std::string objectVar{"o"};
};

struct PatternBinding {
  std::vector<std::pair<std::string, FactObject>> vars;
};

inline std::vector<PatternBinding> match(const KnowledgeBase& kb, const TriplePattern& pattern) {
  std::vector<PatternBinding> out;
  for (std::size_t idx : kb.factsWithPredicate(pattern.predicate)) {
    const Fact& f = kb.facts()[idx];
    if (pattern.subject && !(*pattern.subject == f.subject)) continue;
    if (pattern.object && !(*pattern.object == f.object)) continue;
    PatternBinding b;
    if (!pattern.subject) b.vars.emplace_back(pattern.subjectVar, FactObject{f.subject});
    if (!pattern.object) b.vars.emplace_back(pattern.objectVar, f.object);
    out.push_back(std::move(b));
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON fact files.
//
// {
//   "classes": [["bb1", "BambaraBeans"], ...],
//   "facts": [{"s": "bb1", "p": "hasGerminationTime",
//              "o": {"type": "duration", "value": "10 days"},
//              "provenance": {"rule": "r1"},      // omitted when asserted
//              "degree": 0.83}, ...],             // omitted when absent
//   "propositions": [{"id": "p1",
//                     "fuzzyTime": {...},          // optional
//                     "fuzzyDuration": {...},      // optional
//                     "modifier": {"kind": "about", "w": 0.4}}]
// }
// ---------------------------------------------------------------------------

namespace detail {

inline nlohmann::json literalToJson(const Literal& lit) {
  nlohmann::json j;
  j["type"] = literalTypeName(lit.value);
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::string>) j["value"] = v;
        else if constexpr (std::is_same_v<T, std::int64_t>) j["value"] = v;
        else if constexpr (std::is_same_v<T, double>) j["value"] = v;
        else if constexpr (std::is_same_v<T, bool>) j["value"] = v;
        else if constexpr (std::is_same_v<T, Instant>) j["value"] = formatInstant(v);
        else if constexpr (std::is_same_v<T, Duration>) j["value"] = formatDuration(v);
        else if constexpr (std::is_same_v<T, Granularity>) j["value"] = granularityName(v);
        else j["value"] = formatPeriod(v);
      },
      lit.value);
  return j;
}

inline Literal literalFromJson(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("type") || !j.contains("value") || !j["type"].is_string())
    fail(ErrorCode::SchemaError, "literal must be {\"type\": ..., \"value\": ...}");
  const std::string type = j["type"].get<std::string>();
  const nlohmann::json& v = j["value"];
  try {
    if (type == "string") {
      if (!v.is_string()) fail(ErrorCode::TypeError, "string literal needs a JSON string value");
      return Literal{v.get<std::string>()};
    }
    if (type == "integer") {
      if (!v.is_number_integer()) fail(ErrorCode::TypeError, "integer literal needs an integral value");
      return Literal{v.get<std::int64_t>()};
    }
    if (type == "decimal") {
      if (!v.is_number()) fail(ErrorCode::TypeError, "decimal literal needs a numeric value");
      return Literal{v.get<double>()};
    }
    if (type == "boolean") {
      if (!v.is_boolean()) fail(ErrorCode::TypeError, "boolean literal needs true/false");
      return Literal{v.get<bool>()};
    }
    if (type == "instant") {
      if (!v.is_string()) fail(ErrorCode::TypeError, "instant literal needs an ISO 8601 string");
      return Literal{parseInstant(v.get<std::string>())};
    }
    if (type == "duration") {
      if (!v.is_string()) fail(ErrorCode::TypeError, "duration literal needs a '<count> <unit>' string");
      return Literal{parseDuration(v.get<std::string>())};
    }
    if (type == "granularity") {
      if (!v.is_string()) fail(ErrorCode::TypeError, "granularity literal needs a unit name");
      const auto g = granularityFromName(v.get<std::string>());
      if (!g) fail(ErrorCode::TypeError, "unknown granularity: '" + v.get<std::string>() + "'");
      return Literal{*g};
    }
    if (type == "period") {
      if (!v.is_string()) fail(ErrorCode::TypeError, "period literal needs '<start>/<finish>'");
      return Literal{parsePeriod(v.get<std::string>())};
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::TypeError) throw;
    fail(ErrorCode::TypeError, std::string("bad ") + type + " literal: " + e.what());
  }
  fail(ErrorCode::TypeError, "unknown literal type: '" + type + "'");
}

inline nlohmann::json fuzzyIntervalToJson(const FuzzyInterval& iv) {
  nlohmann::json j;
  j["axis"] = axisName(iv.axis);
  j["min"] = iv.minFT;
  j["max"] = iv.maxFT;
  j["peak"] = iv.peak;
  j["w"] = iv.w;
  j["mf"] = {{"family", mfFamilyName(iv.mf.family())}, {"params", iv.mf.params()}};
  return j;
}

inline FuzzyInterval fuzzyIntervalFromJson(const nlohmann::json& j) {
  if (!j.is_object()) fail(ErrorCode::SchemaError, "fuzzy interval must be an object");
  for (const char* key : {"axis", "min", "max", "peak", "w", "mf"})
    if (!j.contains(key)) fail(ErrorCode::SchemaError, std::string("fuzzy interval missing '") + key + "'");
  const auto axis = axisFromName(j["axis"].get<std::string>());
  if (!axis) fail(ErrorCode::SchemaError, "fuzzy interval axis must be 'duration' or 'instant'");
  const nlohmann::json& mfj = j["mf"];
  if (!mfj.is_object() || !mfj.contains("family") || !mfj.contains("params"))
    fail(ErrorCode::SchemaError, "fuzzy interval mf must carry family and params");
  const auto family = mfFamilyFromName(mfj["family"].get<std::string>());
  if (!family) fail(ErrorCode::SchemaError, "unknown mf family: '" + mfj["family"].get<std::string>() + "'");
  FuzzyInterval iv{*axis, j["min"].get<double>(), j["max"].get<double>(), j["peak"].get<double>(),
                   j["w"].get<double>(),
                   MembershipFunction(*family, mfj["params"].get<std::vector<double>>())};
  if (!(iv.minFT <= iv.peak && iv.peak <= iv.maxFT))
    fail(ErrorCode::SchemaError, "fuzzy interval requires min <= peak <= max");
  if (!(iv.w > 0.0 && iv.w <= 1.0)) fail(ErrorCode::SchemaError, "fuzzy interval requires 0 < w <= 1");
  return iv;
}

}  // namespace detail

inline KnowledgeBase loadFacts(const std::string& text) {
  const nlohmann::json j = detail::parseJsonDocument(text);
  if (!j.is_object()) fail(ErrorCode::SchemaError, "fact document must be a JSON object");
  for (const auto& [key, _] : j.items())
    if (key != "classes" && key != "facts" && key != "propositions")
      fail(ErrorCode::SchemaError, "unknown top-level key: '" + key + "'");

  KnowledgeBase kb;
  if (j.contains("classes")) {
    if (!j["classes"].is_array()) fail(ErrorCode::SchemaError, "'classes' must be an array");
    for (const auto& entry : j["classes"]) {
      if (!entry.is_array() || entry.size() != 2 || !entry[0].is_string() || !entry[1].is_string())
        fail(ErrorCode::SchemaError, "class assertion must be [entity, class]");
      kb.assertClass(makeEntityId(entry[0].get<std::string>()), entry[1].get<std::string>());
    }
  }
  if (j.contains("facts")) {
    if (!j["facts"].is_array()) fail(ErrorCode::SchemaError, "'facts' must be an array");
    for (const auto& entry : j["facts"]) {
      if (!entry.is_object() || !entry.contains("s") || !entry.contains("p") || !entry.contains("o"))
        fail(ErrorCode::SchemaError, "fact must carry s, p and o");
      if (!entry["s"].is_string() || !entry["p"].is_string())
        fail(ErrorCode::SchemaError, "fact s and p must be strings");
      Fact f;
      f.subject = makeEntityId(entry["s"].get<std::string>());
      f.predicate = entry["p"].get<std::string>();
      const nlohmann::json& o = entry["o"];
      if (o.is_object() && o.contains("type") && o["type"].is_string() &&
          o["type"].get<std::string>() == "entity") {
        if (!o.contains("value") || !o["value"].is_string())
          fail(ErrorCode::SchemaError, "entity object needs a string value");
        f.object = makeEntityId(o["value"].get<std::string>());
      } else {
        f.object = detail::literalFromJson(o);
      }
      if (entry.contains("provenance")) {
        const nlohmann::json& prov = entry["provenance"];
        if (!prov.is_object() || !prov.contains("rule") || !prov["rule"].is_string())
          fail(ErrorCode::SchemaError, "provenance must be {\"rule\": name}");
        f.provenance.rule = prov["rule"].get<std::string>();
      }
      if (entry.contains("degree")) {
        if (!entry["degree"].is_number()) fail(ErrorCode::SchemaError, "degree must be a number");
        f.degree = entry["degree"].get<double>();
      }
      kb.assertFact(std::move(f));
    }
  }
  if (j.contains("propositions")) {
    if (!j["propositions"].is_array()) fail(ErrorCode::SchemaError, "'propositions' must be an array");
    for (const auto& entry : j["propositions"]) {
      if (!entry.is_object() || !entry.contains("id") || !entry["id"].is_string())
        fail(ErrorCode::SchemaError, "proposition must carry an id");
      FuzzyTemporalProposition p;
      p.id = makeEntityId(entry["id"].get<std::string>());
      if (entry.contains("fuzzyTime")) p.fuzzyTime = detail::fuzzyIntervalFromJson(entry["fuzzyTime"]);
      if (entry.contains("fuzzyDuration"))
        p.fuzzyDuration = detail::fuzzyIntervalFromJson(entry["fuzzyDuration"]);
      if (entry.contains("modifier")) {
        const nlohmann::json& m = entry["modifier"];
        if (!m.is_object() || !m.contains("kind") || !m.contains("w") || !m["kind"].is_string() ||
            !m["w"].is_number())
          fail(ErrorCode::SchemaError, "modifier must be {\"kind\": ite, \"w\": number}");
        p.modifier = FuzzyTemporalProposition::Modifier{parseIteKind(m["kind"].get<std::string>()),
                                                        m["w"].get<double>()};
      }
      kb.addProposition(std::move(p));
    }
  }
  return kb;
}

inline std::string dumpFacts(const KnowledgeBase& kb) {
  nlohmann::json j;
  j["classes"] = nlohmann::json::array();
  for (const auto& [entity, className] : kb.classAssertions())
    j["classes"].push_back({entity.name, className});

  j["facts"] = nlohmann::json::array();
  for (const Fact& f : kb.facts()) {
    nlohmann::json entry;
    entry["s"] = f.subject.name;
    entry["p"] = f.predicate;
    if (const auto* e = std::get_if<EntityId>(&f.object))
      entry["o"] = {{"type", "entity"}, {"value", e->name}};
    else
      entry["o"] = detail::literalToJson(std::get<Literal>(f.object));
    if (!f.provenance.asserted()) entry["provenance"] = {{"rule", f.provenance.rule}};
    if (f.degree) entry["degree"] = *f.degree;
    j["facts"].push_back(std::move(entry));
  }

  j["propositions"] = nlohmann::json::array();
  for (const FuzzyTemporalProposition& p : kb.propositions()) {
    nlohmann::json entry;
    entry["id"] = p.id.name;
    if (p.fuzzyTime) entry["fuzzyTime"] = detail::fuzzyIntervalToJson(*p.fuzzyTime);
    if (p.fuzzyDuration) entry["fuzzyDuration"] = detail::fuzzyIntervalToJson(*p.fuzzyDuration);
    if (p.modifier)
      entry["modifier"] = {{"kind", iteKindName(p.modifier->kind)}, {"w", p.modifier->w}};
    j["propositions"].push_back(std::move(entry));
  }
  return j.dump(2) + "\n";
}

}  // namespace ftswrl
