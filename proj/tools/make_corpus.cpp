// Writes the synthetic fixture corpus as JPD XML.
#include <iostream>

#include <CLI11.hpp>

#include "jobrec/corpus.hpp"
#include "jobrec/proposal_store.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Generate a synthetic job-proposal corpus"};
  jobrec::CorpusParams params;
  std::string out;
  app.add_option("--out", out, "Output JPD XML file")->required();
  app.add_option("--count", params.count, "Number of proposals");
  app.add_option("--seed", params.seed, "Random seed");
  app.add_option("--verbose-fraction", params.verbose_fraction, "Share of verbose postings");
  CLI11_PARSE(app, argc, argv);

  try {
    const auto proposals = jobrec::generate_corpus(params);
    jobrec::ProposalStore store;
    const auto report = store.ingest(proposals);
    jobrec::save_xml(store, out);
    std::cout << "wrote " << store.size() << " proposals to " << out;
    if (!report.near_duplicates.empty()) std::cout << " (" << report.near_duplicates.size() << " near-duplicates)";
    std::cout << '\n';
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
