#pragma once

// UserProfile <-> XML.
//
//   <UserProfile uid="u1" clock="7">
//     <Topic name="java" count="4" firstTimeStamp="2"/>
//     <Constraint feature="salary" kind="min-number" value="50000"/>
//     <PastQuery sigma="0.6" alpha="0.55"/>
//   </UserProfile>

#include <istream>
#include <sstream>
#include <string>

#include "jobrec/core_model.hpp"
#include "jobrec/xml_util.hpp"

namespace jobrec {

inline std::string profile_to_xml(const UserProfile& profile) {
  using namespace xml;
  pt::ptree root;
  set_attr(root, "uid", profile.uid);
  set_attr(root, "clock", std::to_string(profile.clock));
  for (const auto& [name, counter] : profile.topic_set) {
    pt::ptree t;
    set_attr(t, "name", name);
    set_attr(t, "count", std::to_string(counter.count));
    set_attr(t, "firstTimeStamp", std::to_string(counter.first_time_stamp));
    root.add_child("Topic", t);
  }
  for (const auto& c : profile.constraint_set) {
    pt::ptree e;
    set_attr(e, "feature", c.feature());
    set_attr(e, "kind", std::string(to_string(c.kind())));
    set_attr(e, "value", value_text(c.value()));
    if (auto n = std::get_if<Number>(&c.value()); n && !n->unit.empty()) set_attr(e, "unit", n->unit);
    root.add_child("Constraint", e);
  }
  for (const auto& q : profile.past_queries) {
    pt::ptree e;
    set_attr(e, "sigma", format_fraction6(q.sigma));
    set_attr(e, "alpha", format_fraction6(q.alpha));
    root.add_child("PastQuery", e);
  }
  pt::ptree doc;
  doc.add_child("UserProfile", root);
  return write_document(doc);
}

inline UserProfile profile_from_xml(std::istream& in, const std::string& source = "<profile>") {
  using namespace xml;
  const auto doc = read_document(in, source);
  const auto root = doc.get_child_optional("UserProfile");
  if (!root) throw LoadError(source + ": root element <UserProfile> not found");

  try {
    UserProfile p;
    p.uid = required_attr(*root, "UserProfile", "uid");
    p.clock = parse_int(required_attr(*root, "UserProfile", "clock"), "clock");
    for (const auto& [key, node] : *root) {
      if (is_meta(key)) continue;
      if (key == "Topic") {
        auto name = normalize_topic(required_attr(node, key, "name"));
        if (name.empty()) throw ValidationError("<Topic> with empty name");
        TopicCounter c{parse_int(required_attr(node, key, "count"), "count"),
                       parse_int(required_attr(node, key, "firstTimeStamp"), "firstTimeStamp")};
        if (c.count < 1) throw ValidationError("topic '" + name + "': count must be >= 1");
        if (c.first_time_stamp > p.clock)
          throw ValidationError("topic '" + name + "': firstTimeStamp is after the profile clock");
        if (!p.topic_set.emplace(name, c).second)
          throw ValidationError("duplicate topic '" + name + "'");
      } else if (key == "Constraint") {
        const auto kind = parse_constraint_kind(required_attr(node, key, "kind"));
        const std::string_view type = kind == ConstraintKind::ExactString   ? "string"
                                      : kind == ConstraintKind::SubsetOfSet ? "set"
                                                                            : "number";
        p.constraint_set.emplace_back(required_attr(node, key, "feature"), kind,
                                      parse_value(type, required_attr(node, key, "value"),
                                                  attr(node, "unit")));
      } else if (key == "PastQuery") {
        PastQuery q{parse_double(required_attr(node, key, "sigma"), "sigma"),
                    parse_double(required_attr(node, key, "alpha"), "alpha")};
        if (!in_unit_interval(q.sigma) || !in_unit_interval(q.alpha))
          throw ValidationError("<PastQuery> sigma/alpha outside [0,1]");
        p.past_queries.push_back(q);
      } else {
        throw ValidationError("unexpected element <" + key + "> in <UserProfile>");
      }
    }
    return p;
  } catch (const ValidationError& e) {
    throw LoadError(source + ": " + e.what());
  }
}

inline UserProfile profile_from_xml(const std::string& text) {
  std::istringstream in(text);
  return profile_from_xml(in);
}

inline UserProfile load_profile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open '" + path + "'");
  return profile_from_xml(in, path);
}

inline void save_profile(const UserProfile& profile, const std::string& path) {
  xml::write_file(path, profile_to_xml(profile));
}

// Size of the serialized profile; the simulation tracks this per query.
inline std::size_t profile_bytes(const UserProfile& profile) {
  return profile_to_xml(profile).size();
}

}  // namespace jobrec
