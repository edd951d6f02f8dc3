#pragma once

// Accuracy measures: precision/recall against the user's relevant set, the
// Newell distance between system and user rankings, and cohort averages.

#include <algorithm>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "jobrec/core_model.hpp"

namespace jobrec {

struct PrecisionRecall {
  double precision = 0.0;
  double recall = 0.0;
};

// Empty recommended: precision 1 if relevant is empty too, else 0.
// Empty relevant: recall 1.
inline PrecisionRecall precision_recall(const std::set<std::string>& recommended,
                                        const std::set<std::string>& relevant) {
  std::size_t hit = 0;
  for (const auto& j : recommended) hit += relevant.count(j);
  PrecisionRecall pr;
  pr.precision = recommended.empty() ? (relevant.empty() ? 1.0 : 0.0)
                                     : static_cast<double>(hit) / static_cast<double>(recommended.size());
  pr.recall = relevant.empty() ? 1.0 : static_cast<double>(hit) / static_cast<double>(relevant.size());
  return pr;
}

// w(i) = ((n - i) / i)^2 for rank i in 1..n.
inline double newell_weight(std::size_t rank, std::size_t n) {
  const double r = static_cast<double>(rank);
  const double q = (static_cast<double>(n) - r) / r;
  return q * q;
}

namespace detail {

inline void require_permutation(std::span<const std::size_t> ranks, const char* which) {
  std::vector<bool> seen(ranks.size() + 1, false);
  for (auto r : ranks) {
    if (r < 1 || r > ranks.size() || seen[r])
      throw ValidationError(std::string("newell_distance: ") + which + " ranking is not a bijection onto 1..n");
    seen[r] = true;
  }
}

}  // namespace detail

// sys[k] and usr[k] are the 1-based ranks given to item k by the system and
// by the user. Both must be permutations of 1..n.
inline double newell_distance(std::span<const std::size_t> sys, std::span<const std::size_t> usr) {
  if (sys.size() != usr.size()) throw ValidationError("newell_distance: rankings cover different item counts");
  if (sys.empty()) throw ValidationError("newell_distance: empty ranking");
  detail::require_permutation(sys, "system");
  detail::require_permutation(usr, "user");
  const auto n = sys.size();
  double total = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double u = newell_weight(usr[k], n) * static_cast<double>(usr[k]);
    const double s = newell_weight(sys[k], n) * static_cast<double>(sys[k]);
    total += std::abs(u - s);
  }
  return total;
}

// Same distance for two orderings (best first) of one item set.
inline double newell_distance(const std::vector<std::string>& sys_order,
                              const std::vector<std::string>& usr_order) {
  if (sys_order.size() != usr_order.size())
    throw ValidationError("newell_distance: orderings cover different item counts");
  std::unordered_map<std::string, std::size_t> usr_rank;
  for (std::size_t i = 0; i < usr_order.size(); ++i)
    if (!usr_rank.emplace(usr_order[i], i + 1).second)
      throw ValidationError("newell_distance: duplicate item '" + usr_order[i] + "'");
  std::vector<std::size_t> sys(sys_order.size()), usr(sys_order.size());
  for (std::size_t i = 0; i < sys_order.size(); ++i) {
    auto it = usr_rank.find(sys_order[i]);
    if (it == usr_rank.end())
      throw ValidationError("newell_distance: item '" + sys_order[i] + "' missing from user ordering");
    sys[i] = i + 1;
    usr[i] = it->second;
  }
  return newell_distance(sys, usr);
}

// Divides every entry by the global maximum; an all-zero matrix stays zero.
inline std::vector<std::vector<double>> normalize_newell(std::vector<std::vector<double>> values) {
  double max = 0.0;
  for (const auto& row : values)
    for (double v : row) {
      if (v < 0.0) throw ValidationError("normalize_newell: negative distance");
      max = std::max(max, v);
    }
  if (max == 0.0) return values;
  for (auto& row : values)
    for (double& v : row) v = v == max ? 1.0 : v / max;
  return values;
}

struct QueryEvaluation {
  double precision = 0.0;
  double recall = 0.0;
  double newell = 0.0;  // unnormalized
};

struct CohortSeries {
  std::vector<double> avg_precision;
  std::vector<double> avg_recall;
  std::vector<double> avg_norm_newell;
};

// Per-query-index means over users. Newell distances are normalized by the
// maximum over every user and query before averaging.
inline CohortSeries cohort_averages(const std::vector<std::vector<QueryEvaluation>>& per_user) {
  CohortSeries out;
  if (per_user.empty()) return out;
  const auto len = per_user.front().size();
  for (const auto& s : per_user)
    if (s.size() != len) throw ValidationError("cohort_averages: series lengths differ");

  std::vector<std::vector<double>> newell(per_user.size(), std::vector<double>(len));
  for (std::size_t u = 0; u < per_user.size(); ++u)
    for (std::size_t k = 0; k < len; ++k) newell[u][k] = per_user[u][k].newell;
  const auto norm = normalize_newell(std::move(newell));

  const double users = static_cast<double>(per_user.size());
  out.avg_precision.assign(len, 0.0);
  out.avg_recall.assign(len, 0.0);
  out.avg_norm_newell.assign(len, 0.0);
  for (std::size_t u = 0; u < per_user.size(); ++u)
    for (std::size_t k = 0; k < len; ++k) {
      out.avg_precision[k] += per_user[u][k].precision;
      out.avg_recall[k] += per_user[u][k].recall;
      out.avg_norm_newell[k] += norm[u][k];
    }
  for (std::size_t k = 0; k < len; ++k) {
    out.avg_precision[k] /= users;
    out.avg_recall[k] /= users;
    out.avg_norm_newell[k] /= users;
  }
  return out;
}

}  // namespace jobrec
