#pragma once

// Candidate retrieval: keyword filtering on topic overlap, feature filtering
// against the user's constraints, and ranking by interest degree.

#include <algorithm>
#include <span>
#include <vector>

#include "jobrec/core_model.hpp"
#include "jobrec/proposal_store.hpp"

namespace jobrec {

// Proposals sharing at least one topic with the query, in store order.
inline std::vector<JobProposal> keyword_filter(const ProposalStore& store, const TopicSet& q_topics) {
  if (q_topics.empty()) throw ValidationError("query topic set must not be empty");
  std::vector<JobProposal> out;
  for (const auto& p : store)
    if (intersection_size(p.topics, q_topics) > 0) out.push_back(p);
  return out;
}

enum class ConstraintMatch { Satisfied, Violated, MissingFeature, TypeMismatch };

inline ConstraintMatch check_constraint(const JobProposal& p, const Constraint& c) {
  const auto* ch = p.find(c.feature());
  if (!ch) return ConstraintMatch::MissingFeature;
  const auto& v = ch->value;
  auto verdict = [](bool ok) { return ok ? ConstraintMatch::Satisfied : ConstraintMatch::Violated; };
  switch (c.kind()) {
    case ConstraintKind::MinNumber:
      if (auto n = std::get_if<Number>(&v)) return verdict(n->value >= std::get<Number>(c.value()).value);
      break;
    case ConstraintKind::MaxNumber:
      if (auto n = std::get_if<Number>(&v)) return verdict(n->value <= std::get<Number>(c.value()).value);
      break;
    case ConstraintKind::ExactString:
      if (auto s = std::get_if<std::string>(&v)) return verdict(*s == std::get<std::string>(c.value()));
      break;
    case ConstraintKind::SubsetOfSet:
      if (auto s = std::get_if<StringSet>(&v)) {
        const auto& allowed = std::get<StringSet>(c.value());
        return verdict(std::includes(allowed.begin(), allowed.end(), s->begin(), s->end()));
      }
      break;
  }
  return ConstraintMatch::TypeMismatch;
}

struct ConstraintDiagnostics {
  std::size_t violated = 0;
  std::size_t missing_feature = 0;
  std::size_t type_mismatch = 0;
};

// A missing feature or a type mismatch fails the proposal.
inline std::vector<JobProposal> constraint_filter(std::span<const JobProposal> candidates,
                                                  std::span<const Constraint> constraints,
                                                  ConstraintDiagnostics* diag = nullptr) {
  std::vector<JobProposal> out;
  for (const auto& p : candidates) {
    bool keep = true;
    for (const auto& c : constraints) {
      const auto m = check_constraint(p, c);
      if (m == ConstraintMatch::Satisfied) continue;
      keep = false;
      if (diag) {
        if (m == ConstraintMatch::Violated) ++diag->violated;
        if (m == ConstraintMatch::MissingFeature) ++diag->missing_feature;
        if (m == ConstraintMatch::TypeMismatch) ++diag->type_mismatch;
      }
    }
    if (keep) out.push_back(p);
  }
  return out;
}

// Sum of the relevance of the profile topics named in the proposal.
inline double interest_degree(const JobProposal& proposal, const UserProfile& profile) {
  double rho = 0.0;
  // Walk the two sorted key sequences in step.
  auto pt = proposal.topics.begin();
  auto ut = profile.topic_set.begin();
  while (pt != proposal.topics.end() && ut != profile.topic_set.end()) {
    if (*pt < ut->first) {
      ++pt;
    } else if (ut->first < *pt) {
      ++ut;
    } else {
      rho += relevance(ut->second, profile.clock);
      ++pt;
      ++ut;
    }
  }
  return rho;
}

struct ScoredProposal {
  JobProposal proposal;
  double score = 0.0;
};

// Sorted by score descending, ties by ascending jid.
using CandidateList = std::vector<ScoredProposal>;

inline CandidateList rank(std::span<const JobProposal> candidates, const UserProfile& profile) {
  CandidateList out;
  out.reserve(candidates.size());
  for (const auto& p : candidates) out.push_back({p, interest_degree(p, profile)});
  std::sort(out.begin(), out.end(), [](const ScoredProposal& a, const ScoredProposal& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.proposal.jid < b.proposal.jid;
  });
  return out;
}

inline std::vector<std::string> jids_of(const CandidateList& list) {
  std::vector<std::string> out;
  out.reserve(list.size());
  for (const auto& e : list) out.push_back(e.proposal.jid);
  return out;
}

// Steps 1-2 of a recommendation: filter then rank.
inline CandidateList build_candidate_list(const ProposalStore& store, const UserProfile& profile,
                                          const TopicSet& q_topics) {
  const auto matched = keyword_filter(store, q_topics);
  const auto allowed = constraint_filter(matched, profile.constraint_set);
  return rank(allowed, profile);
}

}  // namespace jobrec
