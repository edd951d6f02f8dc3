#pragma once

// Job Proposal Database: a jid-keyed, insertion-ordered store plus its XML
// form.
//
//   <JPD>
//     <JobProposal JID="J1" JURL="http://...">
//       <JTopicSet><Topic name="java"/></JTopicSet>
//       <JCharacteristicSet>
//         <Characteristic feature="salary" type="number" value="60000"/>
//       </JCharacteristicSet>
//     </JobProposal>
//   </JPD>

#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "jobrec/core_model.hpp"
#include "jobrec/xml_util.hpp"

namespace jobrec {

struct Reject {
  std::string jid;  // may be empty when the record had none
  std::string reason;
};

// Two proposals with different jids but identical topic sets.
struct NearDuplicate {
  std::string existing_jid;
  std::string new_jid;
};

struct IngestReport {
  std::size_t inserted = 0;
  std::size_t updated = 0;
  std::size_t skipped_duplicates = 0;
  std::vector<Reject> rejects;
  std::vector<NearDuplicate> near_duplicates;
};

class ProposalStore {
 public:
  ProposalStore() = default;

  // Adds proposals whose jid is not yet stored, in batch order. Malformed
  // records are rejected individually. With `upsert`, a record whose jid is
  // already present replaces the stored one in place (order kept).
  IngestReport ingest(std::span<const JobProposal> batch, bool upsert = false) {
    IngestReport report;
    for (const auto& p : batch) {
      if (auto defect = proposal_defect(p); !defect.empty()) {
        report.rejects.push_back({p.jid, std::move(defect)});
        continue;
      }
      if (auto it = index_.find(p.jid); it != index_.end()) {
        if (upsert && proposals_[it->second] != p) {
          proposals_[it->second] = p;
          ++report.updated;
        } else {
          ++report.skipped_duplicates;
        }
        continue;
      }
      if (auto twin = by_topics_.find(p.topics); twin != by_topics_.end())
        report.near_duplicates.push_back({twin->second, p.jid});
      else
        by_topics_.emplace(p.topics, p.jid);
      index_.emplace(p.jid, proposals_.size());
      proposals_.push_back(p);
      ++report.inserted;
    }
    return report;
  }

  std::size_t size() const { return proposals_.size(); }
  bool empty() const { return proposals_.empty(); }
  bool contains(const std::string& jid) const { return index_.contains(jid); }

  const JobProposal* find(const std::string& jid) const {
    auto it = index_.find(jid);
    return it == index_.end() ? nullptr : &proposals_[it->second];
  }

  const JobProposal& at(const std::string& jid) const {
    if (auto p = find(jid)) return *p;
    throw ValidationError("unknown JID '" + jid + "'");
  }

  auto begin() const { return proposals_.begin(); }
  auto end() const { return proposals_.end(); }
  std::span<const JobProposal> proposals() const { return proposals_; }

  friend bool operator==(const ProposalStore& a, const ProposalStore& b) {
    return a.proposals_ == b.proposals_;
  }

 private:
  std::vector<JobProposal> proposals_;
  std::unordered_map<std::string, std::size_t> index_;
  std::map<TopicSet, std::string> by_topics_;
};

struct LoadResult {
  std::vector<JobProposal> proposals;
  std::vector<Reject> rejects;
};

namespace detail {

inline JobProposal parse_proposal(const xml::pt::ptree& node) {
  using namespace xml;
  JobProposal p;
  p.jid = required_attr(node, "JobProposal", "JID");
  p.jurl = attr(node, "JURL").value_or("");
  bool have_topics = false;
  for (const auto& [key, child] : node) {
    if (is_meta(key)) continue;
    if (key == "JTopicSet") {
      have_topics = true;
      for (const auto& [tk, topic] : child) {
        if (is_meta(tk)) continue;
        if (tk != "Topic") throw ValidationError("unexpected <" + tk + "> in <JTopicSet>");
        auto name = normalize_topic(required_attr(topic, "Topic", "name"));
        if (name.empty()) throw ValidationError("<Topic> with empty name");
        p.topics.insert(std::move(name));
      }
    } else if (key == "JCharacteristicSet") {
      for (const auto& [ck, ch] : child) {
        if (is_meta(ck)) continue;
        if (ck != "Characteristic")
          throw ValidationError("unexpected <" + ck + "> in <JCharacteristicSet>");
        p.characteristics.push_back(
            {required_attr(ch, "Characteristic", "feature"),
             parse_value(required_attr(ch, "Characteristic", "type"),
                         required_attr(ch, "Characteristic", "value"), attr(ch, "unit"))});
      }
    } else {
      throw ValidationError("unexpected <" + key + "> in <JobProposal>");
    }
  }
  if (!have_topics) throw ValidationError("missing <JTopicSet>");
  if (auto defect = proposal_defect(p); !defect.empty()) throw ValidationError(defect);
  return p;
}

}  // namespace detail

// Proposals in document order. A malformed document throws LoadError; a
// <JobProposal> violating the schema is reported in `rejects` and skipped.
inline LoadResult proposals_from_xml(std::istream& in, const std::string& source = "<jpd>") {
  const auto doc = xml::read_document(in, source);
  const auto root = doc.get_child_optional("JPD");
  if (!root) throw LoadError(source + ": root element <JPD> not found");
  LoadResult out;
  for (const auto& [key, node] : *root) {
    if (xml::is_meta(key)) continue;
    if (key != "JobProposal") {
      out.rejects.push_back({"", "unexpected element <" + key + ">"});
      continue;
    }
    try {
      out.proposals.push_back(detail::parse_proposal(node));
    } catch (const ValidationError& e) {
      out.rejects.push_back({xml::attr(node, "JID").value_or(""), e.what()});
    }
  }
  return out;
}

inline LoadResult load_xml(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open '" + path + "'");
  return proposals_from_xml(in, path);
}

inline std::string proposals_to_xml(std::span<const JobProposal> proposals) {
  using namespace xml;
  pt::ptree root;
  for (const auto& p : proposals) {
    pt::ptree e;
    set_attr(e, "JID", p.jid);
    set_attr(e, "JURL", p.jurl);
    pt::ptree topics;
    for (const auto& t : p.topics) {
      pt::ptree te;
      set_attr(te, "name", t);
      topics.add_child("Topic", te);
    }
    e.add_child("JTopicSet", topics);
    pt::ptree chars;
    for (const auto& c : p.characteristics) {
      pt::ptree ce;
      set_attr(ce, "feature", c.feature);
      set_attr(ce, "type", std::string(value_type_name(c.value)));
      set_attr(ce, "value", value_text(c.value));
      if (auto n = std::get_if<Number>(&c.value); n && !n->unit.empty()) set_attr(ce, "unit", n->unit);
      chars.add_child("Characteristic", ce);
    }
    e.add_child("JCharacteristicSet", chars);
    root.add_child("JobProposal", e);
  }
  pt::ptree doc;
  doc.add_child("JPD", root);
  return write_document(doc);
}

inline void save_xml(const ProposalStore& store, const std::string& path) {
  xml::write_file(path, proposals_to_xml(store.proposals()));
}

inline ProposalStore load_store(const std::string& path, std::vector<Reject>* rejects = nullptr) {
  auto loaded = load_xml(path);
  ProposalStore store;
  auto report = store.ingest(loaded.proposals);
  if (rejects) {
    *rejects = std::move(loaded.rejects);
    rejects->insert(rejects->end(), report.rejects.begin(), report.rejects.end());
  }
  return store;
}

}  // namespace jobrec
