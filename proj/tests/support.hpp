#pragma once

// Random instance generators and scratch directories shared by the tests.

#include <unistd.h>

#include <filesystem>
#include <string>
#include <vector>

#include "jobrec/core_model.hpp"
#include "jobrec/proposal_store.hpp"
#include "jobrec/random.hpp"

namespace testsupport {

using namespace jobrec;

inline std::string data(const std::string& name) { return std::string(JOBREC_TEST_DATA) + "/" + name; }

// Small vocabulary so that random sets overlap often.
inline TopicSet random_topics(Rng& rng, int min_size = 1, int max_size = 5, int vocab = 8) {
  TopicSet s;
  const int n = rng.between(min_size, max_size);
  while (static_cast<int>(s.size()) < n) s.insert("t" + std::to_string(rng.index(static_cast<std::size_t>(vocab))));
  return s;
}

inline JobProposal random_proposal(Rng& rng, const std::string& jid, int vocab = 8) {
  JobProposal p;
  p.jid = jid;
  p.jurl = "https://example.org/" + jid;
  p.topics = random_topics(rng, 1, 5, vocab);
  p.characteristics.push_back({"salary", Number{static_cast<double>(rng.between(20, 80)) * 1000.0, "EUR"}});
  static const char* cities[] = {"rome", "milan", "turin"};
  p.characteristics.push_back({"city", std::string(cities[rng.index(3)])});
  return p;
}

inline ProposalStore random_store(Rng& rng, int min_n = 1, int max_n = 25, int vocab = 8) {
  std::vector<JobProposal> batch;
  const int n = rng.between(min_n, max_n);
  for (int i = 0; i < n; ++i) batch.push_back(random_proposal(rng, "J" + std::to_string(i), vocab));
  ProposalStore store;
  store.ingest(batch);
  return store;
}

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("jobrec_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string file(const std::string& name) const { return (path_ / name).string(); }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace testsupport
