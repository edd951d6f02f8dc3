#pragma once

// Small helpers shared by the profile and JPD serializers. Parsing and
// writing go through Boost.PropertyTree; this file only deals with attribute
// access and number <-> text conversion.

#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "jobrec/core_model.hpp"

namespace jobrec::xml {

namespace pt = boost::property_tree;

inline constexpr std::string_view kAttrs = "<xmlattr>";

// Shortest text that parses back to the same double.
inline std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

// Fixed 6 fractional digits with trailing zeros dropped ("0.25", "1").
inline std::string format_fraction6(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 6);
  std::string s(buf, res.ptr);
  if (auto dot = s.find('.'); dot != std::string::npos) {
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  return s;
}

inline double parse_double(std::string_view text, std::string_view what) {
  auto t = text;
  while (!t.empty() && t.front() == ' ') t.remove_prefix(1);
  while (!t.empty() && t.back() == ' ') t.remove_suffix(1);
  double v = 0.0;
  auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || res.ec != std::errc{} || res.ptr != t.data() + t.size())
    throw ValidationError(std::string(what) + ": not a number: '" + std::string(text) + "'");
  return v;
}

inline std::int64_t parse_int(std::string_view text, std::string_view what) {
  std::int64_t v = 0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || res.ec != std::errc{} || res.ptr != text.data() + text.size())
    throw ValidationError(std::string(what) + ": not an integer: '" + std::string(text) + "'");
  return v;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

// Comma-separated list, items trimmed, empties dropped.
inline StringSet parse_set(std::string_view text) {
  StringSet out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    auto item = trim(text.substr(start, end - start));
    if (!item.empty()) out.emplace(item);
    start = end + 1;
  }
  return out;
}

inline std::string join_set(const StringSet& items) {
  std::string out;
  for (const auto& s : items) {
    if (s.find(',') != std::string::npos)
      throw ValidationError("set item contains a comma: '" + s + "'");
    if (!out.empty()) out += ',';
    out += s;
  }
  return out;
}

inline std::optional<std::string> attr(const pt::ptree& node, const std::string& name) {
  if (auto attrs = node.get_child_optional(std::string(kAttrs)))
    if (auto v = attrs->get_optional<std::string>(name)) return *v;
  return std::nullopt;
}

inline std::string required_attr(const pt::ptree& node, const std::string& element,
                                 const std::string& name) {
  auto v = attr(node, name);
  if (!v) throw ValidationError("<" + element + "> is missing attribute '" + name + "'");
  return *v;
}

inline void set_attr(pt::ptree& node, const std::string& name, const std::string& value) {
  node.add(std::string(kAttrs) + "." + name, value);
}

inline bool is_meta(const std::string& key) {
  return key == kAttrs || key == "<xmlcomment>" || key == "<xmltext>";
}

// Parses a whole document. Malformed XML becomes a LoadError carrying the
// parser's line number.
inline pt::ptree read_document(std::istream& in, const std::string& source) {
  pt::ptree doc;
  try {
    pt::read_xml(in, doc, pt::xml_parser::trim_whitespace);
  } catch (const pt::xml_parser_error& e) {
    throw LoadError(source + ": XML parse error: " + e.message(), e.line());
  }
  return doc;
}

inline pt::ptree read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open '" + path + "'");
  return read_document(in, path);
}

inline std::string write_document(const pt::ptree& doc) {
  std::ostringstream out;
  pt::write_xml(out, doc, pt::xml_writer_make_settings<std::string>(' ', 2));
  return out.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out) throw Error("write to '" + path + "' failed");
}

// Characteristic / constraint values share one text encoding keyed by type.
inline std::string_view value_type_name(const FeatureValue& v) {
  switch (v.index()) {
    case 0: return "number";
    case 1: return "string";
    default: return "set";
  }
}

inline std::string value_text(const FeatureValue& v) {
  if (auto n = std::get_if<Number>(&v)) return format_double(n->value);
  if (auto s = std::get_if<std::string>(&v)) return *s;
  return join_set(std::get<StringSet>(v));
}

inline FeatureValue parse_value(std::string_view type, const std::string& text,
                                const std::optional<std::string>& unit) {
  if (type == "number") return Number{parse_double(text, "number value"), unit.value_or("")};
  if (type == "string") return text;
  if (type == "set") return parse_set(text);
  throw ValidationError("unknown value type '" + std::string(type) + "'");
}

}  // namespace jobrec::xml
