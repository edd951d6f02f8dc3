#pragma once

// Command-line front end: ingest, recommend, simulate, evaluate.
// Exit codes: 0 success, 1 runtime failure, 2 bad usage.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "jobrec/audacity.hpp"
#include "jobrec/evaluation.hpp"
#include "jobrec/profile_xml.hpp"
#include "jobrec/proposal_store.hpp"
#include "jobrec/recommender.hpp"
#include "jobrec/simulation.hpp"

namespace jobrec::cli {

inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;
inline constexpr int kUsage = 2;

struct UsageError : Error {
  using Error::Error;
};

namespace detail {

inline std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  if (text.empty()) return out;
  for (auto& item : xml::parse_set(text)) out.push_back(item);
  return out;
}

// Reads a ranking file: one "jid,rank" row per item, optional header row.
inline std::map<std::string, std::size_t> read_ranking(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open '" + path + "'");
  std::map<std::string, std::size_t> out;
  std::string line;
  std::int64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (normalize_topic(line).empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw LoadError(path + ": expected 'jid,rank'", line_no);
    std::string jid(xml::trim(std::string_view(line).substr(0, comma)));
    std::string_view rank_text = xml::trim(std::string_view(line).substr(comma + 1));
    if (line_no == 1 && jid == "jid" && rank_text == "rank") continue;
    std::int64_t rank = 0;
    try {
      rank = xml::parse_int(rank_text, "rank");
    } catch (const Error& e) {
      throw LoadError(path + ": " + e.what(), line_no);
    }
    if (rank < 1) throw LoadError(path + ": rank must be >= 1", line_no);
    if (!out.emplace(jid, static_cast<std::size_t>(rank)).second)
      throw LoadError(path + ": duplicate item '" + jid + "'", line_no);
  }
  return out;
}

inline int ingest(const std::vector<std::string>& inputs, const std::string& out_path, bool upsert,
                  std::ostream& out, std::ostream& err) {
  ProposalStore store;
  if (std::filesystem::exists(out_path)) {
    auto existing = load_xml(out_path);
    store.ingest(existing.proposals);
  }
  IngestReport total;
  for (const auto& path : inputs) {
    auto loaded = load_xml(path);
    for (const auto& r : loaded.rejects) err << path << ": rejected '" << r.jid << "': " << r.reason << '\n';
    auto report = store.ingest(loaded.proposals, upsert);
    for (const auto& r : report.rejects) err << path << ": rejected '" << r.jid << "': " << r.reason << '\n';
    for (const auto& d : report.near_duplicates)
      err << path << ": warning: '" << d.new_jid << "' has the same topics as '" << d.existing_jid << "'\n";
    total.inserted += report.inserted;
    total.updated += report.updated;
    total.skipped_duplicates += report.skipped_duplicates;
    total.rejects.insert(total.rejects.end(), loaded.rejects.begin(), loaded.rejects.end());
    total.rejects.insert(total.rejects.end(), report.rejects.begin(), report.rejects.end());
  }
  save_xml(store, out_path);
  out << "inserted " << total.inserted << ", updated " << total.updated << ", skipped "
      << total.skipped_duplicates << ", rejected " << total.rejects.size() << "; store holds " << store.size()
      << '\n';
  return kOk;
}

struct RecommendArgs {
  std::string jpd;
  std::string profile;
  std::string topics;
  double sel = 0.4;
  std::string strategy = "pnf";
  std::optional<double> override_alpha;
  double prune = kDefaultPruneThreshold;
  std::optional<std::string> accept;
};

inline int recommend(const RecommendArgs& a, std::ostream& out) {
  const auto store = load_store(a.jpd);
  UserProfile profile;
  if (std::filesystem::exists(a.profile)) {
    profile = load_profile(a.profile);
  } else {
    profile.uid = std::filesystem::path(a.profile).stem().string();
  }
  const auto topics = make_topic_set(split_list(a.topics));
  if (topics.empty()) throw UsageError("--topics needs at least one topic");

  AudacityStrategy strategy;
  strategy.kind = parse_strategy_kind(a.strategy);
  strategy.manual_override = a.override_alpha;
  strategy.validate();
  EngineConfig engine{a.prune};

  const auto query = make_query(topics, a.sel, profile.clock + 1);
  auto [result, next] = run_query(std::move(profile), query, store, strategy, engine);

  const std::set<std::string> seeds(result.seeds.begin(), result.seeds.end());
  out << "query " << query.k << ": " << result.temp_list.size() << " candidates, " << result.final_list.size()
      << " recommended, alpha " << xml::format_fraction6(result.alpha_used) << '\n';
  for (const auto& e : result.temp_list) {
    if (std::find(result.final_list.begin(), result.final_list.end(), e.proposal.jid) == result.final_list.end())
      continue;
    out << e.proposal.jid << '\t' << xml::format_fraction6(e.score) << '\t'
        << (seeds.contains(e.proposal.jid) ? "seed" : "expanded") << '\t' << e.proposal.jurl << '\n';
  }

  if (a.accept) {
    const auto list = split_list(*a.accept);
    const std::set<std::string> accepted(list.begin(), list.end());
    next = complete_query(std::move(next), result, accepted, engine);
    save_profile(next, a.profile);
    if (result.final_list.empty()) {
      out << "nothing recommended; feedback not recorded\n";
    } else {
      out << "sigma " << xml::format_fraction6(next.past_queries.back().sigma) << "; profile saved to "
          << a.profile << '\n';
    }
  }
  return kOk;
}

inline int simulate(const std::string& config, const std::string& out_dir, const std::optional<std::string>& kind,
                    const std::optional<std::uint64_t>& seed, std::ostream& out) {
  auto cfg = load_experiment_config(config);
  if (kind) cfg.strategy.kind = parse_strategy_kind(*kind);
  if (seed) cfg.seed = *seed;
  const auto result = run_experiment(cfg);
  csv::write_all(result, out_dir);
  double sigma = 0.0;
  for (double s : result.avg_sigma) sigma += s;
  out << to_string(cfg.strategy.kind) << ": " << cfg.n_users << " users x " << cfg.n_queries
      << " queries, mean sigma " << xml::format_fraction6(sigma / static_cast<double>(result.avg_sigma.size()))
      << "; wrote series.csv, profile_size.csv, episodes.csv to " << out_dir << '\n';
  return kOk;
}

inline int evaluate(const std::string& sys_path, const std::string& usr_path, std::ostream& out) {
  const auto sys = read_ranking(sys_path);
  const auto usr = read_ranking(usr_path);
  if (sys.size() != usr.size()) throw ValidationError("rankings cover different item counts");
  std::vector<std::size_t> s, u;
  for (const auto& [jid, rank] : sys) {
    auto it = usr.find(jid);
    if (it == usr.end()) throw ValidationError("item '" + jid + "' missing from " + usr_path);
    s.push_back(rank);
    u.push_back(it->second);
  }
  out << xml::format_double(newell_distance(s, u)) << '\n';
  return kOk;
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Content-based job recommender"};
  app.name("jobrec");
  app.require_subcommand(1);

  auto* ingest = app.add_subcommand("ingest", "Merge JPD XML files into a deduplicated store");
  std::vector<std::string> ingest_inputs;
  std::string ingest_out;
  bool upsert = false;
  ingest->add_option("inputs", ingest_inputs, "JPD XML files")->required()->check(CLI::ExistingFile);
  ingest->add_option("--out", ingest_out, "Store file (created or extended)")->required();
  ingest->add_flag("--upsert", upsert, "Replace stored proposals whose JID reappears with new content");

  auto* rec = app.add_subcommand("recommend", "Run one query for a user profile");
  detail::RecommendArgs ra;
  rec->add_option("--jpd", ra.jpd, "Store file")->required()->check(CLI::ExistingFile);
  rec->add_option("--profile", ra.profile, "Profile XML (created on first use)")->required();
  rec->add_option("--topics", ra.topics, "Comma-separated query topics")->required();
  rec->add_option("--sel", ra.sel, "Selectivity degree in [0,1]")->check(CLI::Range(0.0, 1.0));
  rec->add_option("--strategy", ra.strategy, "pnf, lse2 or ws");
  rec->add_option("--alpha", ra.override_alpha, "Manual audacity override")->check(CLI::Range(0.0, 1.0));
  rec->add_option("--prune", ra.prune, "Pruning threshold")->check(CLI::NonNegativeNumber);
  rec->add_option("--accept", ra.accept, "Accepted JIDs; records feedback and saves the profile");

  auto* sim = app.add_subcommand("simulate", "Run a synthetic-user experiment");
  std::string sim_config, sim_out;
  std::optional<std::string> sim_kind;
  std::optional<std::uint64_t> sim_seed;
  sim->add_option("--config", sim_config, "Experiment config file")->required()->check(CLI::ExistingFile);
  sim->add_option("--out-dir", sim_out, "Directory for the CSV files")->required();
  sim->add_option("--strategy", sim_kind, "Override strategy.kind");
  sim->add_option("--seed", sim_seed, "Override seed");

  auto* eval = app.add_subcommand("evaluate", "Newell distance between two rankings");
  std::string sys_path, usr_path;
  eval->add_option("--sys", sys_path, "System ranking CSV (jid,rank)")->required()->check(CLI::ExistingFile);
  eval->add_option("--usr", usr_path, "User ranking CSV (jid,rank)")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  try {
    if (*ingest) return detail::ingest(ingest_inputs, ingest_out, upsert, out, err);
    if (*rec) return detail::recommend(ra, out);
    if (*sim) return detail::simulate(sim_config, sim_out, sim_kind, sim_seed, out);
    if (*eval) return detail::evaluate(sys_path, usr_path, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kUsage;
}

}  // namespace jobrec::cli
