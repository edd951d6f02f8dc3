#pragma once

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "jobrec/audacity.hpp"
#include "jobrec/core_model.hpp"
#include "jobrec/proposal_store.hpp"
#include "jobrec/retrieval.hpp"

namespace jobrec {

struct EngineConfig {
  double prune_threshold = kDefaultPruneThreshold;
};

struct RecommendationResult {
  CandidateList temp_list;
  std::vector<std::string> seeds;
  std::vector<std::string> final_list;  // temp_list rank order
  double alpha_used = 0.0;
};

// ceil(sel_degree * n), computed with a small slack so that products such as
// 0.7 * 10 = 7.000000000000001 do not round up to the next integer.
inline std::size_t seed_count(std::size_t n, double sel_degree) {
  if (!in_unit_interval(sel_degree)) throw ValidationError("selectivity degree must lie in [0,1]");
  const double raw = sel_degree * static_cast<double>(n);
  const auto c = static_cast<std::size_t>(std::ceil(raw - 1e-9));
  return std::min(c, n);
}

inline std::vector<std::string> select_seeds(const CandidateList& temp_list, double sel_degree) {
  const auto n = seed_count(temp_list.size(), sel_degree);
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(temp_list[i].proposal.jid);
  return out;
}

// One minus Dice's coefficient of the two topic sets.
inline double dissimilarity(const TopicSet& a, const TopicSet& b) {
  const auto total = a.size() + b.size();
  if (total == 0) return 0.0;
  return 1.0 - 2.0 * static_cast<double>(intersection_size(a, b)) / static_cast<double>(total);
}

inline double dissimilarity(const JobProposal& a, const JobProposal& b) {
  return dissimilarity(a.topics, b.topics);
}

// Seeds plus every candidate within `alpha` dissimilarity of at least one
// seed. Only direct seed neighbours are added; there is no chaining.
inline std::vector<std::string> expand(const CandidateList& temp_list,
                                       const std::vector<std::string>& seeds, double alpha) {
  std::unordered_set<std::string> seed_ids(seeds.begin(), seeds.end());
  std::vector<const JobProposal*> seed_props;
  for (const auto& e : temp_list)
    if (seed_ids.contains(e.proposal.jid)) seed_props.push_back(&e.proposal);
  if (seed_props.size() != seed_ids.size())
    throw ValidationError("expand: every seed must appear in the candidate list");

  std::vector<std::string> out;
  for (const auto& e : temp_list) {
    const bool keep = seed_ids.contains(e.proposal.jid) ||
                      std::any_of(seed_props.begin(), seed_props.end(), [&](const JobProposal* s) {
                        return dissimilarity(e.proposal, *s) <= alpha;
                      });
    if (keep) out.push_back(e.proposal.jid);
  }
  return out;
}

// Submits a query: advances the clock, counts the query topics, retrieves and
// ranks candidates, picks the audacity from the feedback history and builds
// the final list. The returned profile carries no feedback for this query yet.
inline std::pair<RecommendationResult, UserProfile> run_query(UserProfile profile, const Query& query,
                                                              const ProposalStore& store,
                                                              const AudacityStrategy& strategy,
                                                              const EngineConfig& /*config*/ = {}) {
  if (query.k != profile.clock + 1)
    throw ValidationError("query index " + std::to_string(query.k) + " does not follow profile clock " +
                          std::to_string(profile.clock));
  if (query.q_topics.empty()) throw ValidationError("query topic set must not be empty");
  if (!in_unit_interval(query.sel_degree)) throw ValidationError("selectivity degree must lie in [0,1]");

  profile.clock = query.k;
  profile = update_topic_set(std::move(profile), query);

  RecommendationResult result;
  result.alpha_used = compute_alpha(profile.past_queries, strategy, query.k);
  result.temp_list = build_candidate_list(store, profile, query.q_topics);
  result.seeds = select_seeds(result.temp_list, query.sel_degree);
  result.final_list = expand(result.temp_list, result.seeds, result.alpha_used);
  return {std::move(result), std::move(profile)};
}

// Records the user's verdict on a result and prunes stale topics. An empty
// final list leaves the history untouched.
inline UserProfile complete_query(UserProfile profile, const RecommendationResult& result,
                                  const std::set<std::string>& accepted, const EngineConfig& config = {}) {
  const std::set<std::string> offered(result.final_list.begin(), result.final_list.end());
  for (const auto& jid : accepted)
    if (!offered.contains(jid)) throw ValidationError("accepted JID '" + jid + "' was not recommended");

  if (!result.final_list.empty()) {
    const double sigma = satisfaction(static_cast<std::int64_t>(result.final_list.size()),
                                      static_cast<std::int64_t>(accepted.size()));
    profile = record_feedback(std::move(profile), sigma, result.alpha_used);
  }
  return prune_topics(std::move(profile), config.prune_threshold);
}

}  // namespace jobrec
