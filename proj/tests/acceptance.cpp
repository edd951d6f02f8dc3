// Acceptance run: one PASS/FAIL line per criterion, with the measured margin
// and the runtime against its budget. Exit status is the number of failures.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstring>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "jobrec/audacity.hpp"
#include "jobrec/evaluation.hpp"
#include "jobrec/profile_xml.hpp"
#include "jobrec/proposal_store.hpp"
#include "jobrec/recommender.hpp"
#include "jobrec/retrieval.hpp"
#include "jobrec/simulation.hpp"
#include "support.hpp"

using namespace jobrec;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(6) << v;
  return s.str();
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

std::string cohort_conf() { return std::string(JOBREC_DATA_DIR) + "/cohort.conf"; }

double mean_sigma(const ExperimentResult& r, std::size_t from, std::size_t to) {
  double s = 0.0;
  for (std::size_t k = from; k <= to; ++k) s += r.avg_sigma[k - 1];
  return s / static_cast<double>(to - from + 1);
}

// ---------------------------------------------------------------------------
// 1. formula suite
// ---------------------------------------------------------------------------

Verdict formula_suite() {
  struct Case {
    std::string name;
    double got;
    double want;
    double tol;  // 0 for exact rational cases
  };
  UserProfile rho2;
  rho2.clock = 7;
  rho2.topic_set["java"] = {2, 3};
  UserProfile rho3;
  rho3.clock = 4;
  rho3.topic_set["a"] = {2, 0};
  rho3.topic_set["b"] = {1, 0};
  auto prop = [](TopicSet t) { return JobProposal{"P", "u", std::move(t), {}}; };
  auto hist = [](double s, double a) { return std::vector<PastQuery>{{s, a}}; };
  std::vector<std::size_t> usr{1, 2, 3}, rev{3, 2, 1};

  const std::vector<Case> cases{
      {"relevance(4,10,18)", relevance({4, 10}, 18), 0.5, 0},
      {"relevance(1,0,1)", relevance({1, 0}, 1), 1.0, 0},
      {"relevance(5,7,7)", relevance({5, 7}, 7), 5.0, 0},
      {"sigma(8,2)", satisfaction(8, 2), 0.25, 0},
      {"sigma(6,6)", satisfaction(6, 6), 1.0, 0},
      {"sigma(5,0)", satisfaction(5, 0), 0.0, 0},
      {"rho(no overlap)", interest_degree(prop({"zz"}), rho2), 0.0, 0},
      {"rho(0.5+0.25)", interest_degree(prop({"a", "b", "q"}), rho3), 0.75, 0},
      {"rho(2/(7-3))", interest_degree(prop({"java"}), rho2), 0.5, 0},
      {"delta(same)", dissimilarity(TopicSet{"a", "b"}, TopicSet{"a", "b"}), 0.0, 0},
      {"delta(disjoint)", dissimilarity(TopicSet{"a"}, TopicSet{"b"}), 1.0, 0},
      {"delta(abc,bcd)", dissimilarity(TopicSet{"a", "b", "c"}, TopicSet{"b", "c", "d"}), 1.0 / 3.0, 1e-9},
      {"delta(xy,xyz)", dissimilarity(TopicSet{"x", "y"}, TopicSet{"x", "y", "z"}), 0.2, 1e-9},
      {"jaccard(ab,bc)", jaccard_similarity({"a", "b"}, {"b", "c"}), 1.0 / 3.0, 1e-9},
      {"jaccard(same)", jaccard_similarity({"a", "b"}, {"a", "b"}), 1.0, 0},
      {"jaccard(disjoint)", jaccard_similarity({"a"}, {"b"}), 0.0, 0},
      {"pnf(empty)", pnf_alpha({}), 0.55, 0},
      {"pnf(0.5,0.7)", pnf_alpha(hist(0.5, 0.7)), 0.7, 0},
      {"pnf(0.8,0.5)", pnf_alpha(hist(0.8, 0.5)), 0.8, 1e-9},
      {"pnf(1.0,0.9)", pnf_alpha(hist(1.0, 0.9)), 1.0, 0},
      {"gamma(1)", gamma_decaying(1), 1.0, 0},
      {"gamma(26)", gamma_decaying(26), 0.0, 0},
      {"gamma(11)", gamma_decaying(11), 0.6, 1e-9},
      {"w(1,3)", newell_weight(1, 3), 4.0, 0},
      {"w(2,3)", newell_weight(2, 3), 0.25, 0},
      {"w(3,3)", newell_weight(3, 3), 0.0, 0},
      {"newell(rev3)", newell_distance(rev, usr), 8.0, 0},
      {"newell(identity)", newell_distance(usr, usr), 0.0, 0},
      {"newell(n=1)", newell_distance(std::vector<std::size_t>{1}, std::vector<std::size_t>{1}), 0.0, 0},
  };
  double worst = 0.0;
  std::string failed;
  for (const auto& c : cases) {
    const double err = std::abs(c.got - c.want);
    worst = std::max(worst, err);
    if (c.tol == 0 ? c.got != c.want : err > c.tol) failed += " " + c.name + "=" + fmt(c.got);
  }
  Verdict v;
  v.pass = failed.empty();
  v.detail = std::to_string(cases.size()) + " cases, worst |error| " + fmt(worst) + " (exact or <= 1e-9)" +
             (failed.empty() ? "" : "; mismatches:" + failed);
  return v;
}

// ---------------------------------------------------------------------------
// 2. PNF fixed point and clamping
// ---------------------------------------------------------------------------

Verdict pnf_fixed_point() {
  Rng rng(20240502);
  std::size_t fixed = 0, clamped_hi = 0, clamped_lo = 0, bad = 0;
  double worst_outside = 0.0;
  for (int iter = 0; iter < 10000; ++iter) {
    std::vector<PastQuery> h(rng.between(1, 12));
    for (auto& q : h) q = {rng.uniform(), rng.uniform()};
    const int mode = iter % 4;
    if (mode == 0) h.back().sigma = 0.5;
    if (mode == 1) h.back() = {rng.uniform(0.6, 1.0), rng.uniform(0.7, 1.0)};  // pushes past 1
    if (mode == 2) h.back() = {rng.uniform(0.0, 0.4), rng.uniform(0.0, 0.3)};  // pushes below 0
    const auto [sigma, alpha] = h.back();
    const double got = pnf_alpha(h, rng.uniform());
    worst_outside = std::max({worst_outside, -got, got - 1.0});
    if (sigma == 0.5) {
      ++fixed;
      if (!same_bits(got, alpha)) ++bad;
    }
    const double raw = alpha + (sigma - 0.5);
    if (raw >= 1.0) {
      ++clamped_hi;
      if (got != 1.0) ++bad;
    } else if (raw <= 0.0) {
      ++clamped_lo;
      if (got != 0.0) ++bad;
    } else if (std::abs(got - raw) > 1e-12) {
      ++bad;
    }
    if (got < 0.0 || got > 1.0) ++bad;
  }
  Verdict v;
  v.pass = bad == 0 && fixed > 0 && clamped_hi > 0 && clamped_lo > 0;
  v.detail = "10000 histories: " + std::to_string(fixed) + " fixed-point (bitwise), " + std::to_string(clamped_hi) +
             " clamped at 1, " + std::to_string(clamped_lo) + " clamped at 0, " + std::to_string(bad) +
             " violations; max excursion outside [0,1] " + fmt(std::max(0.0, worst_outside));
  return v;
}

// ---------------------------------------------------------------------------
// 3. 2-LSE optimality
// ---------------------------------------------------------------------------

// Normal equations in long double, Gauss-Jordan with full pivoting.
std::array<double, 3> reference_fit(const std::vector<double>& xs, const std::vector<double>& ys) {
  long double m[3][4] = {};
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const long double x = xs[i];
    const long double row[3] = {x * x, x, 1.0L};
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) m[r][c] += row[r] * row[c];
      m[r][3] += row[r] * ys[i];
    }
  }
  int col_of[3] = {0, 1, 2};
  for (int k = 0; k < 3; ++k) {
    int pr = k, pc = k;
    for (int r = k; r < 3; ++r)
      for (int c = k; c < 3; ++c)
        if (std::fabs(m[r][c]) > std::fabs(m[pr][pc])) pr = r, pc = c;
    for (int c = 0; c < 4; ++c) std::swap(m[k][c], m[pr][c]);
    if (pc != k) {
      for (int r = 0; r < 3; ++r) std::swap(m[r][k], m[r][pc]);
      std::swap(col_of[k], col_of[pc]);
    }
    const long double p = m[k][k];
    for (int c = 0; c < 4; ++c) m[k][c] /= p;
    for (int r = 0; r < 3; ++r)
      if (r != k) {
        const long double f = m[r][k];
        for (int c = 0; c < 4; ++c) m[r][c] -= f * m[k][c];
      }
  }
  std::array<double, 3> out{};
  for (int k = 0; k < 3; ++k) out[col_of[k]] = static_cast<double>(m[k][3]);
  return out;
}

double sum_sq(double a0, double a1, double a2, const std::vector<double>& xs, const std::vector<double>& ys) {
  long double r = 0.0L;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const long double d = ys[i] - (a0 * xs[i] * xs[i] + a1 * xs[i] + a2);
    r += d * d;
  }
  return static_cast<double>(r);
}

Verdict lse_optimality() {
  Rng rng(77);
  constexpr double step = 1e-4;
  double worst_res = -1e300, worst_grid = 0.0;
  std::size_t bad = 0, singular = 0;
  for (int iter = 0; iter < 1000; ++iter) {
    const int n = rng.between(3, 25);
    std::vector<double> xs(n), ys(n);
    for (int i = 0; i < n; ++i) xs[i] = rng.uniform(), ys[i] = rng.uniform();
    ParabolaFit fit;
    try {
      fit = fit_parabola(xs, ys);
    } catch (const SingularFitError&) {
      ++singular;
      continue;
    }
    const auto ref = reference_fit(xs, ys);
    const double excess = sum_sq(fit.a0, fit.a1, fit.a2, xs, ys) - sum_sq(ref[0], ref[1], ref[2], xs, ys);
    worst_res = std::max(worst_res, excess);
    if (excess > 1e-9) ++bad;

    const double arg = maximize_on_unit_interval(fit);
    double best_x = 0.0, best_y = fit(0.0);
    for (int g = 1; g <= 10000; ++g) {
      const double x = g * step;
      if (fit(x) > best_y) best_x = x, best_y = fit(x);
    }
    const double gap = std::abs(arg - best_x);
    worst_grid = std::max(worst_grid, gap);
    if (gap > step * (1 + 1e-9)) ++bad;
  }
  Verdict v;
  v.pass = bad == 0 && singular == 0;
  v.detail = "1000 point sets: worst residual excess " + fmt(worst_res) + " (limit 1e-9), worst |argmax - grid| " +
             fmt(worst_grid) + " (limit 1e-4), " + std::to_string(singular) + " singular, " + std::to_string(bad) +
             " violations";
  return v;
}

// ---------------------------------------------------------------------------
// 4. exact parabola recovery
// ---------------------------------------------------------------------------

Verdict parabola_recovery() {
  auto f = [](double x) { return -(x - 0.6) * (x - 0.6) + 0.8; };
  Rng rng(4);
  double worst = 0.0;
  for (int iter = 0; iter < 200; ++iter) {
    std::vector<PastQuery> h;
    const int n = rng.between(3, 20);
    for (int i = 0; i < n; ++i) {
      const double a = rng.uniform();
      h.push_back({f(a), a});
    }
    // Interpolation oracle: vertex of the fitted coefficients.
    std::vector<double> xs, ys;
    for (const auto& q : h) xs.push_back(q.alpha), ys.push_back(q.sigma);
    const auto ref = reference_fit(xs, ys);
    worst = std::max({worst, std::abs(lse2_alpha(h) - 0.6), std::abs(-ref[1] / (2 * ref[0]) - 0.6)});
  }
  Verdict v;
  v.pass = worst <= 1e-6;
  v.detail = "200 samplings: worst |alpha - 0.6| " + fmt(worst) + " (limit 1e-6)";
  return v;
}

// ---------------------------------------------------------------------------
// 5. pipeline structure
// ---------------------------------------------------------------------------

double dice_distance(const TopicSet& a, const TopicSet& b) {
  std::size_t common = 0;
  for (const auto& t : a) common += b.count(t);
  const double total = static_cast<double>(a.size() + b.size());
  return total == 0 ? 0.0 : 1.0 - 2.0 * static_cast<double>(common) / total;
}

bool contains(const std::vector<std::string>& v, const std::string& x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

Verdict pipeline_structure() {
  Rng rng(555);
  std::size_t bad = 0, expanded = 0;
  for (int iter = 0; iter < 1000; ++iter) {
    const auto store = testsupport::random_store(rng, 0, 30);
    UserProfile profile;
    profile.clock = rng.between(0, 20);
    for (const auto& t : testsupport::random_topics(rng, 0, 6))
      profile.topic_set[t] = {rng.between(1, 6), rng.between(0, static_cast<int>(profile.clock))};
    const double alpha = rng.chance(0.1) ? static_cast<double>(rng.index(2)) : rng.uniform();
    AudacityStrategy s;
    s.manual_override = alpha;
    const auto query = make_query(testsupport::random_topics(rng, 1, 3), rng.uniform(), profile.clock + 1);
    const auto [res, next] = run_query(profile, query, store, s);
    const auto temp = jids_of(res.temp_list);

    for (const auto& j : res.seeds) bad += !contains(res.final_list, j);
    for (const auto& j : res.final_list) bad += !contains(temp, j);
    for (const auto& j : temp) {
      bool near = contains(res.seeds, j);
      for (const auto& sd : res.seeds) near = near || dice_distance(store.at(j).topics, store.at(sd).topics) <= alpha;
      bad += near != contains(res.final_list, j);
      expanded += near && !contains(res.seeds, j);
    }
    const double higher = std::min(1.0, alpha + rng.uniform(0.0, 0.5));
    const auto wider = expand(res.temp_list, res.seeds, higher);
    for (const auto& j : res.final_list) bad += !contains(wider, j);
  }
  Verdict v;
  v.pass = bad == 0 && expanded > 0;
  v.detail = "1000 instances, " + std::to_string(expanded) + " expanded members checked by brute force, " +
             std::to_string(bad) + " violations";
  return v;
}

// ---------------------------------------------------------------------------
// 6. Newell oracle
// ---------------------------------------------------------------------------

double brute_newell(const std::vector<std::size_t>& sys, const std::vector<std::size_t>& usr) {
  const double n = static_cast<double>(sys.size());
  auto w = [n](double i) { return ((n - i) / i) * ((n - i) / i); };
  double total = 0.0;
  for (std::size_t k = 0; k < sys.size(); ++k) {
    const double u = static_cast<double>(usr[k]), s = static_cast<double>(sys[k]);
    total += std::abs(w(u) * u - w(s) * s);
  }
  return total;
}

Verdict newell_oracle() {
  std::size_t pairs = 0, bad = 0, pairs4 = 0;
  double worst = 0.0;
  for (std::size_t n = 1; n <= 4; ++n) {
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 1);
    std::vector<std::vector<std::size_t>> perms;
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    for (const auto& a : perms)
      for (const auto& b : perms) {
        const double err = std::abs(newell_distance(a, b) - brute_newell(a, b));
        worst = std::max(worst, err);
        bad += err > 1e-9;
        ++pairs;
        pairs4 += n == 4;
      }
  }
  // n = 5: swapping ranks 1 and 2 outweighs any transposition among ranks 2..5,
  // and adjacent swaps cost strictly less the lower they sit.
  const std::vector<std::size_t> id{1, 2, 3, 4, 5};
  auto transposed = [&](std::size_t i, std::size_t j) {
    auto t = id;
    std::swap(t[i - 1], t[j - 1]);
    return newell_distance(t, id);
  };
  const double top = transposed(1, 2);
  double runner_up = 0.0;
  for (std::size_t i = 2; i <= 5; ++i)
    for (std::size_t j = i + 1; j <= 5; ++j) runner_up = std::max(runner_up, transposed(i, j));
  bad += !(top > runner_up);
  for (std::size_t i = 1; i + 2 <= 5; ++i) bad += !(transposed(i, i + 1) > transposed(i + 1, i + 2));

  Verdict v;
  v.pass = bad == 0 && pairs4 == 576;
  v.detail = std::to_string(pairs) + " pairs (" + std::to_string(pairs4) + " at n=4), worst |error| " + fmt(worst) +
             "; n=5 top swap " + fmt(top) + " vs best other transposition " + fmt(runner_up) + ", margin " +
             fmt(top - runner_up);
  return v;
}

// ---------------------------------------------------------------------------
// 7. strategy comparison trend
// ---------------------------------------------------------------------------

Verdict strategy_trend() {
  auto cfg = load_experiment_config(cohort_conf());
  const auto store = load_store(cfg.corpus_path);
  cfg.strategy.kind = StrategyKind::PNF;
  const auto pnf = run_experiment(cfg, store);
  cfg.strategy.kind = StrategyKind::LSE2;
  const auto lse = run_experiment(cfg, store);
  const double early = mean_sigma(pnf, 1, 9) - mean_sigma(lse, 1, 9);
  const double late = mean_sigma(lse, 15, 25) - mean_sigma(pnf, 15, 25);
  Verdict v;
  v.pass = cfg.n_users >= 50 && cfg.n_queries == 25 && early >= 0.0 && late >= 0.0;
  v.detail = std::to_string(cfg.n_users) + " users, seed " + std::to_string(cfg.seed) + ": queries 1-9 PNF " +
             fmt(mean_sigma(pnf, 1, 9)) + " vs 2-LSE " + fmt(mean_sigma(lse, 1, 9)) + " (margin " + fmt(early) +
             "); queries 15-25 2-LSE " + fmt(mean_sigma(lse, 15, 25)) + " vs PNF " + fmt(mean_sigma(pnf, 15, 25)) +
             " (margin " + fmt(late) + ")";
  return v;
}

// ---------------------------------------------------------------------------
// 8. WS boundary behaviour
// ---------------------------------------------------------------------------

std::size_t stream_mismatches(const ExperimentResult& a, const ExperimentResult& b) {
  std::size_t bad = a.episodes.size() != b.episodes.size();
  for (std::size_t u = 0; u < std::min(a.episodes.size(), b.episodes.size()); ++u) {
    const auto& x = a.episodes[u];
    const auto& y = b.episodes[u];
    bad += x.size() != y.size();
    for (std::size_t k = 0; k < std::min(x.size(), y.size()); ++k) {
      const auto& e = x[k];
      const auto& f = y[k];
      const bool same = same_bits(e.alpha, f.alpha) && same_bits(e.sigma, f.sigma) &&
                        same_bits(e.precision, f.precision) && same_bits(e.recall, f.recall) &&
                        same_bits(e.newell, f.newell) && e.final_list_size == f.final_list_size &&
                        e.accepted_count == f.accepted_count && e.profile_bytes == f.profile_bytes;
      bad += !same;
    }
  }
  return bad + (csv::episodes_csv(a) != csv::episodes_csv(b));
}

Verdict ws_boundaries() {
  auto cfg = load_experiment_config(cohort_conf());
  const auto store = load_store(cfg.corpus_path);
  cfg.strategy.kind = StrategyKind::PNF;
  const auto pnf = run_experiment(cfg, store);
  cfg.strategy.kind = StrategyKind::LSE2;
  const auto lse = run_experiment(cfg, store);
  cfg.strategy.kind = StrategyKind::WS;
  cfg.strategy.gamma.mode = GammaSchedule::Mode::Constant;
  cfg.strategy.gamma.constant = 1.0;
  const auto ws1 = run_experiment(cfg, store);
  cfg.strategy.gamma.constant = 0.0;
  const auto ws0 = run_experiment(cfg, store);
  const auto d1 = stream_mismatches(ws1, pnf);
  const auto d0 = stream_mismatches(ws0, lse);
  const auto episodes = cfg.n_users * cfg.n_queries;
  Verdict v;
  v.pass = d1 == 0 && d0 == 0;
  v.detail = std::to_string(episodes) + " episodes each: gamma=1 vs PNF " + std::to_string(d1) +
             " differing, gamma=0 vs 2-LSE " + std::to_string(d0) + " differing (bitwise)";
  return v;
}

// ---------------------------------------------------------------------------
// 9. profile size plateau
// ---------------------------------------------------------------------------

Verdict profile_plateau() {
  const auto cfg = load_experiment_config(cohort_conf());
  const auto r = run_experiment(cfg);
  const double at15 = r.avg_profile_bytes[14];
  const double peak = *std::max_element(r.avg_profile_bytes.begin() + 14, r.avg_profile_bytes.begin() + 25);
  const double limit = 1.5 * at15;
  Verdict v;
  v.pass = peak <= limit;
  v.detail = "mean profile bytes at query 1 " + fmt(r.avg_profile_bytes[0]) + ", at 15 " + fmt(at15) +
             ", max over 15-25 " + fmt(peak) + " (limit " + fmt(limit) + ", ratio " + fmt(peak / at15) + ")";
  return v;
}

// ---------------------------------------------------------------------------
// 10. determinism and round trips
// ---------------------------------------------------------------------------

Verdict determinism_round_trip() {
  testsupport::TempDir dir;
  std::size_t bad = 0;
  for (const auto* conf : {"demo.conf", "cohort.conf"}) {
    auto cfg = load_experiment_config(std::string(JOBREC_DATA_DIR) + "/" + conf);
    cfg.n_users = std::min<std::size_t>(cfg.n_users, 40);
    csv::write_all(run_experiment(cfg), dir.path() / "a");
    csv::write_all(run_experiment(cfg), dir.path() / "b");
    for (const auto* f : {"series.csv", "profile_size.csv", "episodes.csv"})
      bad += slurp(dir.path() / "a" / f) != slurp(dir.path() / "b" / f) || slurp(dir.path() / "a" / f).empty();
  }

  std::size_t stores = 0, profiles = 0;
  const auto corpus = load_store(std::string(JOBREC_DATA_DIR) + "/corpus.xml");
  save_xml(corpus, dir.file("corpus.xml"));
  bad += load_store(dir.file("corpus.xml")) != corpus;
  bad += slurp(dir.file("corpus.xml")) != slurp(std::string(JOBREC_DATA_DIR) + "/corpus.xml");
  ++stores;
  Rng rng(10);
  for (int i = 0; i < 100; ++i, ++stores) {
    const auto s = testsupport::random_store(rng, 0, 20, 12);
    save_xml(s, dir.file("s.xml"));
    bad += load_store(dir.file("s.xml")) != s;
  }

  const auto fixture = load_profile(testsupport::data("profile_basic.xml"));
  bad += profile_from_xml(profile_to_xml(fixture)) != fixture;
  ++profiles;
  for (int i = 0; i < 300; ++i, ++profiles) {
    UserProfile p;
    p.uid = "user" + std::to_string(i);
    p.clock = rng.between(0, 40);
    for (const auto& t : testsupport::random_topics(rng, 0, 8, 20))
      p.topic_set[t] = {rng.between(1, 9), rng.between(0, static_cast<int>(p.clock))};
    for (int q = rng.between(0, 6); q > 0; --q) p = record_feedback(std::move(p), rng.uniform(), rng.uniform());
    if (rng.chance(0.5)) p.constraint_set.push_back(Constraint::min_number("salary", rng.between(1, 9) * 1e4));
    if (rng.chance(0.5)) p.constraint_set.push_back(Constraint::subset_of("languages", {"english", "italian"}));
    save_profile(p, dir.file("p.xml"));
    const auto back = load_profile(dir.file("p.xml"));
    bad += back != p;
    bad += profile_to_xml(back) != profile_to_xml(p);
  }

  Verdict v;
  v.pass = bad == 0;
  v.detail = "2 configs x 3 CSVs byte-identical across runs; " + std::to_string(stores) + " JPD and " +
             std::to_string(profiles) + " profile round trips; " + std::to_string(bad) + " mismatches";
  return v;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Verdict()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "formula suite", 1, formula_suite},
      {2, "PNF fixed point", 5, pnf_fixed_point},
      {3, "2-LSE optimality", 10, lse_optimality},
      {4, "exact parabola recovery", 1, parabola_recovery},
      {5, "pipeline structure", 30, pipeline_structure},
      {6, "Newell oracle", 5, newell_oracle},
      {7, "strategy comparison trend", 120, strategy_trend},
      {8, "WS boundary behaviour", 60, ws_boundaries},
      {9, "profile size plateau", 120, profile_plateau},
      {10, "determinism and round trip", 60, determinism_round_trip},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < c.budget_s;
    const bool pass = v.pass && in_time;
    failures += !pass;
    std::cout << (pass ? "PASS" : "FAIL") << "  [" << c.id << "] " << c.name << ": " << v.detail << "; runtime "
              << std::fixed << std::setprecision(3) << secs << " s (limit " << std::defaultfloat << c.budget_s
              << " s)" << (in_time ? "" : " OVER BUDGET") << '\n';
  }
  std::cout << (failures == 0 ? "all 10 criteria pass" : std::to_string(failures) + " criteria fail") << '\n';
  return failures;
}
