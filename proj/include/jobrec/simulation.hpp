#pragma once

// Synthetic-user harness. Each user has a hidden interest map over topics,
// an acceptance threshold and a fatigue term. Users issue queries drawn from
// their interests, judge the recommended lists and feed the result back to
// the engine, which is evaluated against what the user would have picked.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "jobrec/audacity.hpp"
#include "jobrec/config.hpp"
#include "jobrec/core_model.hpp"
#include "jobrec/evaluation.hpp"
#include "jobrec/profile_xml.hpp"
#include "jobrec/proposal_store.hpp"
#include "jobrec/random.hpp"
#include "jobrec/recommender.hpp"

namespace jobrec {

struct SyntheticUser {
  std::string uid;
  std::map<TopicName, double> hidden_interest;  // weights in [0,1]
  double acceptance_threshold = 0.5;
  double fatigue = 0.0;  // utility lost per item ahead in the list
  std::uint64_t seed = 0;
  int max_query_topics = 3;

  double weight(const TopicName& t) const {
    auto it = hidden_interest.find(t);
    return it == hidden_interest.end() ? 0.0 : it->second;
  }

  // Mean interest weight over the proposal's topics.
  double utility(const JobProposal& p) const {
    if (p.topics.empty()) return 0.0;
    double s = 0.0;
    for (const auto& t : p.topics) s += weight(t);
    return s / static_cast<double>(p.topics.size());
  }

  // 1..max_query_topics distinct topics, drawn in proportion to weight.
  TopicSet sample_query(Rng& rng) const {
    std::vector<std::pair<TopicName, double>> pool;
    for (const auto& [t, w] : hidden_interest)
      if (w > 0.0) pool.emplace_back(t, w);
    if (pool.empty()) throw ValidationError("user '" + uid + "' has no positive interest");
    const int want = rng.between(1, std::min<int>(max_query_topics, static_cast<int>(pool.size())));
    TopicSet out;
    for (int i = 0; i < want; ++i) {
      double total = 0.0;
      for (const auto& [_, w] : pool) total += w;
      double r = rng.uniform() * total;
      std::size_t j = 0;
      while (j + 1 < pool.size() && r >= pool[j].second) r -= pool[j++].second;
      out.insert(pool[j].first);
      pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(j));
    }
    return out;
  }

  void validate() const {
    if (hidden_interest.empty()) throw ValidationError("user '" + uid + "': empty hidden interest");
    for (const auto& [t, w] : hidden_interest)
      if (!in_unit_interval(w)) throw ValidationError("user '" + uid + "': weight of '" + t + "' outside [0,1]");
    if (!in_unit_interval(acceptance_threshold)) throw ValidationError("acceptance threshold outside [0,1]");
    if (!(fatigue >= 0.0)) throw ValidationError("fatigue must be >= 0");
  }
};

namespace detail {
// Absorbs rounding in utility - fatigue * position at the threshold.
inline constexpr double kDecisionSlack = 1e-12;
}

// Accepts the item at 0-based position i iff
//   utility - fatigue * i >= acceptance_threshold.
inline std::set<std::string> user_decide(const SyntheticUser& user, const std::vector<std::string>& list,
                                         const ProposalStore& store) {
  std::set<std::string> accepted;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const double u = user.utility(store.at(list[i])) - user.fatigue * static_cast<double>(i);
    if (u >= user.acceptance_threshold - detail::kDecisionSlack) accepted.insert(list[i]);
  }
  return accepted;
}

// ---------------------------------------------------------------------------
// Cohort generation
// ---------------------------------------------------------------------------

struct Range {
  double lo = 0.0;
  double hi = 0.0;
  double draw(Rng& rng) const { return lo == hi ? lo : rng.uniform(lo, hi); }
};

struct CohortParams {
  std::optional<std::string> domain_filter;  // anchor proposals must carry this topic
  Range acceptance_threshold{0.45, 0.6};
  Range fatigue{0.0, 0.02};
  Range core_weight{0.7, 1.0};     // topics of the anchor proposal
  Range related_weight{0.2, 0.5};  // topics of proposals near the anchor
  double related_radius = 0.5;     // max dissimilarity to the anchor
  int max_query_topics = 3;
  TopicSet neutral_topics;  // never part of an interest (weight 0)
};

// Each user is anchored at a random proposal (restricted to the domain
// filter when set). The anchor's topics get core weights; topics of other
// proposals within `related_radius` of the anchor get related weights.
// Neutral topics are left out of every interest map.
inline std::vector<SyntheticUser> make_cohort(const ProposalStore& store, std::size_t n_users,
                                              const CohortParams& params, std::uint64_t seed) {
  std::vector<const JobProposal*> anchors;
  for (const auto& p : store)
    if (!params.domain_filter || p.topics.contains(*params.domain_filter)) anchors.push_back(&p);
  if (anchors.empty()) throw ValidationError("no proposal matches the domain filter");

  std::vector<SyntheticUser> users;
  users.reserve(n_users);
  for (std::size_t u = 0; u < n_users; ++u) {
    Rng rng(derive_seed(seed, u));
    SyntheticUser user;
    user.uid = "u" + std::to_string(u + 1);
    user.seed = derive_seed(seed ^ 0x5eedULL, u);
    user.max_query_topics = params.max_query_topics;
    const auto& anchor = *anchors[rng.index(anchors.size())];
    for (const auto& t : anchor.topics)
      if (!params.neutral_topics.contains(t)) user.hidden_interest[t] = params.core_weight.draw(rng);
    for (const auto& p : store) {
      if (&p == &anchor || dissimilarity(p, anchor) > params.related_radius) continue;
      for (const auto& t : p.topics)
        if (!params.neutral_topics.contains(t) && !user.hidden_interest.contains(t))
          user.hidden_interest[t] = params.related_weight.draw(rng);
    }
    user.acceptance_threshold = params.acceptance_threshold.draw(rng);
    user.fatigue = params.fatigue.draw(rng);
    user.validate();
    users.push_back(std::move(user));
  }
  return users;
}

// ---------------------------------------------------------------------------
// Experiment
// ---------------------------------------------------------------------------

struct ExperimentConfig {
  std::string corpus_path;
  std::size_t n_users = 50;
  std::size_t n_queries = 25;
  AudacityStrategy strategy;
  EngineConfig engine;
  double sel_degree = 0.4;
  std::uint64_t seed = 1;
  CohortParams cohort;

  void validate() const {
    if (n_users < 1) throw ValidationError("users.count must be >= 1");
    if (n_queries < 1) throw ValidationError("queries.count must be >= 1");
    if (!in_unit_interval(sel_degree)) throw ValidationError("query.sel_degree must lie in [0,1]");
    if (!(engine.prune_threshold >= 0.0)) throw ValidationError("prune.threshold must be >= 0");
    strategy.validate();
  }
};

struct EpisodeRecord {
  std::string uid;
  std::int64_t k = 0;
  double sigma = 0.0;
  double alpha = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double newell = 0.0;       // raw distance
  double norm_newell = 0.0;  // divided by the run's maximum
  std::size_t temp_list_size = 0;
  std::size_t final_list_size = 0;
  std::size_t accepted_count = 0;
  bool feedback_recorded = false;
  std::size_t profile_bytes = 0;
};

struct ExperimentResult {
  std::vector<std::vector<EpisodeRecord>> episodes;  // [user][k-1]
  CohortSeries series;
  std::vector<double> avg_profile_bytes;  // [k-1]
  std::vector<double> avg_sigma;          // [k-1]
};

// Newell distance of one episode. The evaluated set is the final list plus
// the user's top picks (as many as the final list holds) from the candidate
// list; the system ranks it in candidate-list order, the user by utility.
inline double episode_newell(const SyntheticUser& user, const RecommendationResult& result) {
  if (result.final_list.empty()) return 0.0;
  const auto& temp = result.temp_list;
  std::vector<std::size_t> by_utility(temp.size());
  for (std::size_t i = 0; i < temp.size(); ++i) by_utility[i] = i;
  std::vector<double> util(temp.size());
  for (std::size_t i = 0; i < temp.size(); ++i) util[i] = user.utility(temp[i].proposal);
  auto user_order = [&](std::size_t a, std::size_t b) {
    if (util[a] != util[b]) return util[a] > util[b];
    return temp[a].proposal.jid < temp[b].proposal.jid;
  };
  std::sort(by_utility.begin(), by_utility.end(), user_order);

  std::set<std::string> members(result.final_list.begin(), result.final_list.end());
  for (std::size_t i = 0; i < result.final_list.size() && i < by_utility.size(); ++i)
    members.insert(temp[by_utility[i]].proposal.jid);

  std::vector<std::string> sys, usr;
  for (const auto& e : temp)
    if (members.contains(e.proposal.jid)) sys.push_back(e.proposal.jid);
  for (auto i : by_utility)
    if (members.contains(temp[i].proposal.jid)) usr.push_back(temp[i].proposal.jid);
  return newell_distance(sys, usr);
}

// Runs one user through n_queries query/feedback cycles.
inline std::vector<EpisodeRecord> run_user(const SyntheticUser& user, const ProposalStore& store,
                                           const ExperimentConfig& cfg) {
  Rng rng(user.seed);
  UserProfile profile;
  profile.uid = user.uid;
  std::vector<EpisodeRecord> out;
  out.reserve(cfg.n_queries);
  for (std::size_t q = 1; q <= cfg.n_queries; ++q) {
    const auto k = static_cast<std::int64_t>(q);
    const auto query = make_query(user.sample_query(rng), cfg.sel_degree, k);
    auto [result, next] = run_query(std::move(profile), query, store, cfg.strategy, cfg.engine);
    const auto accepted = user_decide(user, result.final_list, store);
    profile = complete_query(std::move(next), result, accepted, cfg.engine);

    const auto relevant = user_decide(user, jids_of(result.temp_list), store);
    const auto pr = precision_recall({result.final_list.begin(), result.final_list.end()}, relevant);

    EpisodeRecord rec;
    rec.uid = user.uid;
    rec.k = k;
    rec.alpha = result.alpha_used;
    rec.feedback_recorded = !result.final_list.empty();
    rec.sigma = rec.feedback_recorded
                    ? satisfaction(static_cast<std::int64_t>(result.final_list.size()),
                                   static_cast<std::int64_t>(accepted.size()))
                    : 0.0;
    rec.precision = pr.precision;
    rec.recall = pr.recall;
    rec.newell = episode_newell(user, result);
    rec.temp_list_size = result.temp_list.size();
    rec.final_list_size = result.final_list.size();
    rec.accepted_count = accepted.size();
    rec.profile_bytes = profile_bytes(profile);
    out.push_back(rec);
  }
  return out;
}

inline ExperimentResult run_experiment(const ExperimentConfig& cfg, const ProposalStore& store) {
  cfg.validate();
  const auto users = make_cohort(store, cfg.n_users, cfg.cohort, cfg.seed);
  ExperimentResult res;
  res.episodes.reserve(users.size());
  for (const auto& u : users) res.episodes.push_back(run_user(u, store, cfg));

  std::vector<std::vector<QueryEvaluation>> evals;
  for (const auto& series : res.episodes) {
    auto& row = evals.emplace_back();
    for (const auto& e : series) row.push_back({e.precision, e.recall, e.newell});
  }
  res.series = cohort_averages(evals);

  std::vector<std::vector<double>> raw;
  for (const auto& series : res.episodes) {
    auto& row = raw.emplace_back();
    for (const auto& e : series) row.push_back(e.newell);
  }
  const auto norm = normalize_newell(std::move(raw));
  for (std::size_t u = 0; u < res.episodes.size(); ++u)
    for (std::size_t k = 0; k < res.episodes[u].size(); ++k) res.episodes[u][k].norm_newell = norm[u][k];

  res.avg_profile_bytes.assign(cfg.n_queries, 0.0);
  res.avg_sigma.assign(cfg.n_queries, 0.0);
  for (const auto& series : res.episodes)
    for (std::size_t k = 0; k < series.size(); ++k) {
      res.avg_profile_bytes[k] += static_cast<double>(series[k].profile_bytes);
      res.avg_sigma[k] += series[k].sigma;
    }
  for (std::size_t k = 0; k < cfg.n_queries; ++k) {
    res.avg_profile_bytes[k] /= static_cast<double>(res.episodes.size());
    res.avg_sigma[k] /= static_cast<double>(res.episodes.size());
  }
  return res;
}

inline ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  std::vector<Reject> rejects;
  const auto store = load_store(cfg.corpus_path, &rejects);
  if (store.empty()) throw LoadError("corpus '" + cfg.corpus_path + "' holds no valid proposal");
  return run_experiment(cfg, store);
}

// ---------------------------------------------------------------------------
// Config file
// ---------------------------------------------------------------------------

inline const std::set<std::string>& experiment_config_keys() {
  static const std::set<std::string> keys{
      "corpus.path",          "users.count",           "queries.count",
      "seed",                 "query.sel_degree",      "prune.threshold",
      "domain.filter",        "strategy.kind",         "strategy.pnf_alpha0",
      "strategy.lse_alphas",  "strategy.gamma.mode",   "strategy.gamma.constant",
      "strategy.manual_override",
      "users.acceptance_threshold", "users.fatigue",   "users.core_weight",
      "users.related_weight", "users.related_radius",  "users.max_query_topics",
      "users.neutral_topics",
  };
  return keys;
}

// `base_dir` resolves a relative corpus.path (normally the config's folder).
inline ExperimentConfig experiment_config_from(const KeyValueConfig& kv,
                                               const std::filesystem::path& base_dir = {}) {
  kv.require_known(experiment_config_keys());
  ExperimentConfig cfg;
  auto corpus = kv.get("corpus.path");
  if (!corpus) throw ValidationError("config is missing 'corpus.path'");
  std::filesystem::path cp(*corpus);
  cfg.corpus_path = (cp.is_relative() && !base_dir.empty() ? base_dir / cp : cp).string();

  const auto n_users = kv.get_int("users.count", 50);
  const auto n_queries = kv.get_int("queries.count", 25);
  if (n_users < 1) throw ValidationError("users.count must be >= 1");
  if (n_queries < 1) throw ValidationError("queries.count must be >= 1");
  cfg.n_users = static_cast<std::size_t>(n_users);
  cfg.n_queries = static_cast<std::size_t>(n_queries);
  cfg.seed = static_cast<std::uint64_t>(kv.get_int("seed", 1));
  cfg.sel_degree = kv.get_double("query.sel_degree", 0.4);
  cfg.engine.prune_threshold = kv.get_double("prune.threshold", kDefaultPruneThreshold);

  auto& s = cfg.strategy;
  s.kind = parse_strategy_kind(kv.get_string("strategy.kind", "pnf"));
  s.pnf_alpha0 = kv.get_double("strategy.pnf_alpha0", kDefaultPnfAlpha0);
  const auto lse = kv.get_doubles("strategy.lse_alphas", {kDefaultLseAlphas.begin(), kDefaultLseAlphas.end()});
  if (lse.size() != 3) throw ValidationError("strategy.lse_alphas needs exactly three values");
  s.lse_alphas = {lse[0], lse[1], lse[2]};
  const auto mode = kv.get_string("strategy.gamma.mode", "decaying");
  if (mode == "decaying") {
    s.gamma.mode = GammaSchedule::Mode::Decaying;
  } else if (mode == "constant") {
    s.gamma.mode = GammaSchedule::Mode::Constant;
  } else {
    throw ValidationError("strategy.gamma.mode must be 'constant' or 'decaying'");
  }
  s.gamma.constant = kv.get_double("strategy.gamma.constant", 0.5);
  if (kv.has("strategy.manual_override")) s.manual_override = kv.get_double("strategy.manual_override", 0.0);

  auto range = [&](const std::string& key, Range fallback) {
    const auto v = kv.get_doubles(key, {fallback.lo, fallback.hi});
    if (v.size() == 1) return Range{v[0], v[0]};
    if (v.size() != 2 || v[0] > v[1]) throw ValidationError(key + " needs 'lo,hi' with lo <= hi");
    return Range{v[0], v[1]};
  };
  auto& c = cfg.cohort;
  if (auto d = kv.get("domain.filter"); d && !normalize_topic(*d).empty()) c.domain_filter = normalize_topic(*d);
  c.acceptance_threshold = range("users.acceptance_threshold", c.acceptance_threshold);
  c.fatigue = range("users.fatigue", c.fatigue);
  c.core_weight = range("users.core_weight", c.core_weight);
  c.related_weight = range("users.related_weight", c.related_weight);
  c.related_radius = kv.get_double("users.related_radius", c.related_radius);
  c.max_query_topics = static_cast<int>(kv.get_int("users.max_query_topics", c.max_query_topics));
  if (c.max_query_topics < 1) throw ValidationError("users.max_query_topics must be >= 1");
  if (auto v = kv.get("users.neutral_topics")) c.neutral_topics = make_topic_set(xml::parse_set(*v));

  cfg.validate();
  return cfg;
}

inline ExperimentConfig load_experiment_config(const std::string& path) {
  return experiment_config_from(KeyValueConfig::load(path), std::filesystem::path(path).parent_path());
}

// ---------------------------------------------------------------------------
// CSV output
// ---------------------------------------------------------------------------

namespace csv {

inline std::string num(double v) { return xml::format_fraction6(v); }

inline std::string series_csv(const ExperimentResult& r) {
  std::ostringstream out;
  out << "query_index,avg_precision,avg_recall,avg_norm_newell\n";
  for (std::size_t k = 0; k < r.series.avg_precision.size(); ++k)
    out << k + 1 << ',' << num(r.series.avg_precision[k]) << ',' << num(r.series.avg_recall[k]) << ','
        << num(r.series.avg_norm_newell[k]) << '\n';
  return out.str();
}

inline std::string profile_size_csv(const ExperimentResult& r) {
  std::ostringstream out;
  out << "query_index,avg_profile_bytes\n";
  for (std::size_t k = 0; k < r.avg_profile_bytes.size(); ++k)
    out << k + 1 << ',' << num(r.avg_profile_bytes[k]) << '\n';
  return out.str();
}

inline std::string episodes_csv(const ExperimentResult& r) {
  std::ostringstream out;
  out << "uid,query_index,sigma,alpha,precision,recall,newell,norm_newell,temp_list_size,"
         "final_list_size,accepted_count,feedback_recorded,profile_bytes\n";
  for (const auto& series : r.episodes)
    for (const auto& e : series)
      out << e.uid << ',' << e.k << ',' << num(e.sigma) << ',' << num(e.alpha) << ',' << num(e.precision) << ','
          << num(e.recall) << ',' << num(e.newell) << ',' << num(e.norm_newell) << ',' << e.temp_list_size << ','
          << e.final_list_size << ',' << e.accepted_count << ',' << (e.feedback_recorded ? 1 : 0) << ','
          << e.profile_bytes << '\n';
  return out.str();
}

inline void write_all(const ExperimentResult& r, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  xml::write_file((dir / "series.csv").string(), series_csv(r));
  xml::write_file((dir / "profile_size.csv").string(), profile_size_csv(r));
  xml::write_file((dir / "episodes.csv").string(), episodes_csv(r));
}

}  // namespace csv

}  // namespace jobrec
