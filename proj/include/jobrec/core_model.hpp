#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace jobrec {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad argument or a violated precondition on caller-supplied data.
struct ValidationError : Error {
  using Error::Error;
};

// Unreadable or malformed input file. `line` is 0 when unknown.
struct LoadError : Error {
  LoadError(const std::string& what, std::size_t line_no = 0)
      : Error(line_no ? what + " (line " + std::to_string(line_no) + ")" : what),
        line(line_no) {}
  std::size_t line;
};

// ---------------------------------------------------------------------------
// Topics
// ---------------------------------------------------------------------------

using TopicName = std::string;
using TopicSet = std::set<TopicName>;

// Trims ASCII whitespace and lower-cases ASCII letters. Bytes >= 0x80 are
// passed through so UTF-8 names survive untouched.
inline TopicName normalize_topic(std::string_view raw) {
  auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
  while (!raw.empty() && is_space(static_cast<unsigned char>(raw.front()))) raw.remove_prefix(1);
  while (!raw.empty() && is_space(static_cast<unsigned char>(raw.back()))) raw.remove_suffix(1);
  TopicName out(raw);
  for (char& c : out) {
    auto u = static_cast<unsigned char>(c);
    if (u < 0x80) c = static_cast<char>(std::tolower(u));
  }
  return out;
}

// Normalizes every name and drops the ones that end up empty.
template <typename Range>
TopicSet make_topic_set(const Range& names) {
  TopicSet out;
  for (const auto& n : names) {
    auto t = normalize_topic(n);
    if (!t.empty()) out.insert(std::move(t));
  }
  return out;
}

inline TopicSet make_topic_set(std::initializer_list<std::string_view> names) {
  return make_topic_set<std::initializer_list<std::string_view>>(names);
}

inline std::size_t intersection_size(const TopicSet& a, const TopicSet& b) {
  std::size_t n = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++n;
      ++ia;
      ++ib;
    }
  }
  return n;
}

// |a ∩ b| / |a ∪ b|; two empty sets are identical, so 1.
inline double jaccard_similarity(const TopicSet& a, const TopicSet& b) {
  if (a.empty() && b.empty()) return 1.0;
  const auto common = intersection_size(a, b);
  const auto uni = a.size() + b.size() - common;
  return static_cast<double>(common) / static_cast<double>(uni);
}

// ---------------------------------------------------------------------------
// Characteristics and constraints
// ---------------------------------------------------------------------------

struct Number {
  double value = 0.0;
  std::string unit;  // free text, may be empty

  friend bool operator==(const Number&, const Number&) = default;
};

using StringSet = std::set<std::string>;
using FeatureValue = std::variant<Number, std::string, StringSet>;

struct Characteristic {
  std::string feature;
  FeatureValue value;

  friend bool operator==(const Characteristic&, const Characteristic&) = default;
};

enum class ConstraintKind { MinNumber, MaxNumber, ExactString, SubsetOfSet };

inline std::string_view to_string(ConstraintKind k) {
  switch (k) {
    case ConstraintKind::MinNumber: return "min-number";
    case ConstraintKind::MaxNumber: return "max-number";
    case ConstraintKind::ExactString: return "exact-string";
    case ConstraintKind::SubsetOfSet: return "subset-of-set";
  }
  return "?";
}

inline ConstraintKind parse_constraint_kind(std::string_view s) {
  if (s == "min-number") return ConstraintKind::MinNumber;
  if (s == "max-number") return ConstraintKind::MaxNumber;
  if (s == "exact-string") return ConstraintKind::ExactString;
  if (s == "subset-of-set") return ConstraintKind::SubsetOfSet;
  throw ValidationError("unknown constraint kind '" + std::string(s) + "'");
}

// A user-side restriction on one proposal feature.
//   min-number:    proposal number >= value
//   max-number:    proposal number <= value
//   exact-string:  proposal string == value
//   subset-of-set: every item of the proposal's set is in value
class Constraint {
 public:
  Constraint(std::string feature, ConstraintKind kind, FeatureValue value)
      : feature_(std::move(feature)), kind_(kind), value_(std::move(value)) {
    if (feature_.empty()) throw ValidationError("constraint feature must not be empty");
    const bool ok = [&] {
      switch (kind_) {
        case ConstraintKind::MinNumber:
        case ConstraintKind::MaxNumber: return std::holds_alternative<Number>(value_);
        case ConstraintKind::ExactString: return std::holds_alternative<std::string>(value_);
        case ConstraintKind::SubsetOfSet: return std::holds_alternative<StringSet>(value_);
      }
      return false;
    }();
    if (!ok) throw ValidationError("constraint '" + feature_ + "': value type does not match kind");
  }

  static Constraint min_number(std::string feature, double v) {
    return {std::move(feature), ConstraintKind::MinNumber, Number{v, {}}};
  }
  static Constraint max_number(std::string feature, double v) {
    return {std::move(feature), ConstraintKind::MaxNumber, Number{v, {}}};
  }
  static Constraint exact_string(std::string feature, std::string v) {
    return {std::move(feature), ConstraintKind::ExactString, std::move(v)};
  }
  static Constraint subset_of(std::string feature, StringSet v) {
    return {std::move(feature), ConstraintKind::SubsetOfSet, std::move(v)};
  }

  const std::string& feature() const { return feature_; }
  ConstraintKind kind() const { return kind_; }
  const FeatureValue& value() const { return value_; }

  friend bool operator==(const Constraint&, const Constraint&) = default;

 private:
  std::string feature_;
  ConstraintKind kind_;
  FeatureValue value_;
};

// ---------------------------------------------------------------------------
// Job proposals
// ---------------------------------------------------------------------------

struct JobProposal {
  std::string jid;
  std::string jurl;
  TopicSet topics;
  std::vector<Characteristic> characteristics;  // feature keys unique, document order

  const Characteristic* find(std::string_view feature) const {
    for (const auto& c : characteristics)
      if (c.feature == feature) return &c;
    return nullptr;
  }

  friend bool operator==(const JobProposal&, const JobProposal&) = default;
};

// Empty string when the proposal is well formed, otherwise the reason.
inline std::string proposal_defect(const JobProposal& p) {
  if (normalize_topic(p.jid).empty()) return "blank JID";
  if (p.topics.empty()) return "empty JTopicSet";
  for (const auto& t : p.topics)
    if (t.empty() || t != normalize_topic(t)) return "topic name not normalized: '" + t + "'";
  std::set<std::string_view> seen;
  for (const auto& c : p.characteristics) {
    if (c.feature.empty()) return "characteristic with empty feature";
    if (!seen.insert(c.feature).second) return "duplicate characteristic '" + c.feature + "'";
  }
  return {};
}

// ---------------------------------------------------------------------------
// User profile
// ---------------------------------------------------------------------------

using Clock = std::int64_t;

// Access statistics of one profile topic; the name is the map key.
struct TopicCounter {
  std::int64_t count = 1;
  Clock first_time_stamp = 0;

  friend bool operator==(const TopicCounter&, const TopicCounter&) = default;
};

struct PastQuery {
  double sigma = 0.0;
  double alpha = 0.0;

  friend bool operator==(const PastQuery&, const PastQuery&) = default;
};

struct UserProfile {
  std::string uid;
  std::map<TopicName, TopicCounter> topic_set;
  std::vector<Constraint> constraint_set;
  std::vector<PastQuery> past_queries;
  Clock clock = 0;  // number of queries submitted so far

  friend bool operator==(const UserProfile&, const UserProfile&) = default;
};

struct Query {
  double sel_degree = 0.0;
  TopicSet q_topics;
  std::int64_t k = 1;
};

inline bool in_unit_interval(double x) { return x >= 0.0 && x <= 1.0; }

inline Query make_query(TopicSet topics, double sel_degree, std::int64_t k) {
  if (!in_unit_interval(sel_degree))
    throw ValidationError("selectivity degree must lie in [0,1]");
  if (k < 1) throw ValidationError("query index must be >= 1");
  TopicSet normalized = make_topic_set(topics);
  if (normalized.empty()) throw ValidationError("query topic set must not be empty");
  return {sel_degree, std::move(normalized), k};
}

// Counts every query topic against the profile at the current clock.
// Existing entries keep their first time stamp; new ones start at count 1.
inline UserProfile update_topic_set(UserProfile profile, const Query& query) {
  for (const auto& name : query.q_topics) {
    auto [it, inserted] = profile.topic_set.try_emplace(name, TopicCounter{1, profile.clock});
    if (!inserted) ++it->second.count;
  }
  return profile;
}

// count / (t - first_time_stamp), with the age clamped to at least one tick so
// a topic introduced by the current query has finite relevance.
inline double relevance(const TopicCounter& topic, Clock t) {
  const Clock age = std::max<Clock>(1, t - topic.first_time_stamp);
  return static_cast<double>(topic.count) / static_cast<double>(age);
}

inline constexpr double kDefaultPruneThreshold = 0.05;

inline UserProfile prune_topics(UserProfile profile, double threshold) {
  if (!(threshold >= 0.0)) throw ValidationError("prune threshold must be >= 0");
  std::erase_if(profile.topic_set,
                [&](const auto& kv) { return relevance(kv.second, profile.clock) < threshold; });
  return profile;
}

inline double satisfaction(std::int64_t recommended_count, std::int64_t accepted_count) {
  if (recommended_count <= 0) throw ValidationError("no recommendations issued");
  if (accepted_count < 0 || accepted_count > recommended_count)
    throw ValidationError("accepted count must lie in [0, recommended count]");
  return static_cast<double>(accepted_count) / static_cast<double>(recommended_count);
}

// History values are kept at the precision the profile XML stores (1e-6), so
// a saved and reloaded profile drives the audacity strategies identically.
inline double quantize_feedback(double x) { return std::round(x * 1e6) / 1e6; }

inline UserProfile record_feedback(UserProfile profile, double sigma, double alpha) {
  if (!in_unit_interval(sigma)) throw ValidationError("sigma must lie in [0,1]");
  if (!in_unit_interval(alpha)) throw ValidationError("alpha must lie in [0,1]");
  profile.past_queries.push_back({quantize_feedback(sigma), quantize_feedback(alpha)});
  return profile;
}

inline TopicSet topic_names(const UserProfile& p) {
  TopicSet out;
  for (const auto& [name, _] : p.topic_set) out.insert(out.end(), name);
  return out;
}

// Jaccard similarity between two job seekers' topic sets.
inline double profile_similarity(const UserProfile& a, const UserProfile& b) {
  return jaccard_similarity(topic_names(a), topic_names(b));
}

}  // namespace jobrec
