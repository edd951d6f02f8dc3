#pragma once

// Synthetic job-proposal corpus built over a small classification tree of
// application domains. A proposal placed at a node carries the names of the
// node and all its ancestors as topics, some skills of the node and its
// ancestors, and possibly cross-domain generic topics. Postings come in two
// styles: concise ones list few topics, verbose ones pad the description
// with inherited skills and generic terms.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include "jobrec/core_model.hpp"
#include "jobrec/random.hpp"

namespace jobrec {

struct DomainNode {
  std::string_view name;
  std::string_view parent;  // empty for top-level domains
  std::vector<std::string_view> skills;
};

inline const std::vector<DomainNode>& domain_tree() {
  static const std::vector<DomainNode> tree{
      {"information-technology", "", {"computer-science", "it-infrastructure", "project-management"}},
      {"research-development", "information-technology", {"software-design", "algorithms", "prototyping"}},
      {"application-developer", "research-development", {"java", "c++", "python", "sql", "xml", "web-services", "agile"}},
      {"network-administration", "research-development", {"tcp-ip", "routing", "firewalls", "linux", "cisco", "vpn"}},
      {"technical-support", "information-technology", {"help-desk", "troubleshooting", "remote-assistance"}},
      {"software-support", "technical-support", {"erp", "crm", "sap", "ticketing", "windows", "itil"}},
      {"health-care", "", {"patient-care", "hospital", "clinical-governance"}},
      {"medical", "health-care", {"diagnosis", "medicine"}},
      {"surgeon", "medical", {"surgery", "anesthesia", "orthopedics", "cardiology", "operating-theatre"}},
      {"paramedical", "medical", {"first-aid", "emergency-care"}},
      {"nurse", "paramedical", {"nursing", "intensive-care", "pediatrics", "geriatrics", "midwifery"}},
      {"pharmacy", "health-care", {"pharmacology", "drugs", "dispensing"}},
      {"sales-consultant", "pharmacy", {"sales", "marketing", "negotiation", "key-accounts"}},
      {"pharmaceutical-research", "pharmacy", {"laboratory", "clinical-trials"}},
      {"biomedical-scientist", "pharmaceutical-research",
       {"biochemistry", "molecular-biology", "microbiology", "genetics", "immunology", "hematology"}},
      {"finance", "", {"accounting", "budgeting", "financial-reporting"}},
      {"financial-analyst", "finance", {"financial-modeling", "valuation", "spreadsheets"}},
      {"risk-management", "financial-analyst", {"credit-risk", "market-risk", "basel", "var-models"}},
      {"investment-consultant", "financial-analyst", {"portfolio-management", "equities", "bonds", "wealth-management"}},
  };
  return tree;
}

inline const std::vector<std::string_view>& generic_topics() {
  static const std::vector<std::string_view> g{"full-time", "part-time",   "management",  "team-work",
                                               "english",   "travel",      "night-shifts", "remote-work",
                                               "communication", "training"};
  return g;
}

// Node followed by its ancestors, deepest first.
inline std::vector<const DomainNode*> domain_path(std::string_view node) {
  std::vector<const DomainNode*> out;
  const auto& tree = domain_tree();
  while (!node.empty()) {
    auto it = std::find_if(tree.begin(), tree.end(), [&](const DomainNode& n) { return n.name == node; });
    if (it == tree.end()) throw ValidationError("unknown domain '" + std::string(node) + "'");
    out.push_back(&*it);
    node = it->parent;
  }
  return out;
}

// Depth in the tree; top-level domains are level 1.
inline int specialization_level(std::string_view node) {
  return static_cast<int>(domain_path(node).size());
}

struct PostingStyle {
  int own_skills_min = 1;
  int own_skills_max = 2;
  int ancestor_skills_min = 0;
  int ancestor_skills_max = 1;
  int generic_min = 0;
  int generic_max = 1;
};

struct CorpusParams {
  std::size_t count = 300;
  std::uint64_t seed = 2024;
  double verbose_fraction = 0.4;
  PostingStyle concise{1, 2, 0, 1, 0, 1};
  PostingStyle verbose{2, 4, 1, 3, 3, 5};
};

inline std::vector<JobProposal> generate_corpus(const CorpusParams& params) {
  static constexpr std::array<std::string_view, 8> cities{"rome",  "milan",  "london", "berlin",
                                                          "paris", "madrid", "turin",  "reggio-calabria"};
  static constexpr std::array<std::string_view, 5> languages{"english", "italian", "german", "french", "spanish"};

  Rng rng(params.seed);
  const auto& tree = domain_tree();
  std::vector<JobProposal> out;
  out.reserve(params.count);
  for (std::size_t i = 0; i < params.count; ++i) {
    const auto& node = tree[i % tree.size()];
    const auto path = domain_path(node.name);

    JobProposal p;
    char jid[16];
    std::snprintf(jid, sizeof jid, "J%04zu", i + 1);
    p.jid = jid;
    p.jurl = "https://jobs.example.org/" + std::string(node.name) + "/" + p.jid;
    for (const auto* n : path) p.topics.emplace(n->name);

    auto pick = [&](const std::vector<std::string_view>& from, int n) {
      std::vector<std::string_view> pool(from.begin(), from.end());
      for (int k = 0; k < n && !pool.empty(); ++k) {
        auto j = rng.index(pool.size());
        p.topics.emplace(pool[j]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(j));
      }
    };
    const auto& style = rng.chance(params.verbose_fraction) ? params.verbose : params.concise;
    pick(node.skills, rng.between(style.own_skills_min, style.own_skills_max));
    std::vector<std::string_view> inherited;
    for (std::size_t a = 1; a < path.size(); ++a)
      inherited.insert(inherited.end(), path[a]->skills.begin(), path[a]->skills.end());
    pick(inherited, rng.between(style.ancestor_skills_min, style.ancestor_skills_max));
    pick(generic_topics(), rng.between(style.generic_min, style.generic_max));

    const double base = 24000.0 + 6000.0 * static_cast<double>(path.size());
    p.characteristics.push_back({"salary", Number{std::round(base + rng.uniform(0.0, 30000.0)), "EUR"}});
    p.characteristics.push_back({"city", std::string(cities[rng.index(cities.size())])});
    StringSet langs{std::string(languages[rng.index(languages.size())])};
    if (rng.chance(0.4)) langs.emplace(languages[rng.index(languages.size())]);
    p.characteristics.push_back({"languages", langs});
    p.characteristics.push_back({"experience-years", Number{static_cast<double>(rng.between(0, 10)), "years"}});
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace jobrec
