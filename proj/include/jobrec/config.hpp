#pragma once

// Flat key = value configuration files. Keys are dotted paths
// ("strategy.gamma.mode"); values are scalars or comma lists. Lines starting
// with '#' or ';' are comments. An INI [section] prefixes the keys below it.

#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "jobrec/core_model.hpp"
#include "jobrec/xml_util.hpp"

namespace jobrec {

class KeyValueConfig {
 public:
  KeyValueConfig() = default;

  static KeyValueConfig parse(std::istream& in, const std::string& source = "<config>") {
    namespace pt = boost::property_tree;
    pt::ptree tree;
    try {
      pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
      throw LoadError(source + ": " + e.message(), e.line());
    }
    KeyValueConfig cfg;
    for (const auto& [key, node] : tree) {
      if (node.empty()) {
        cfg.values_[key] = node.data();
      } else {
        for (const auto& [sub, leaf] : node) cfg.values_[key + "." + sub] = leaf.data();
      }
    }
    return cfg;
  }

  static KeyValueConfig parse(const std::string& text) {
    std::istringstream in(text);
    return parse(in);
  }

  static KeyValueConfig load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw LoadError("cannot open '" + path + "'");
    return parse(in, path);
  }

  void set(const std::string& key, std::string value) { values_[key] = std::move(value); }

  bool has(const std::string& key) const { return values_.contains(key); }

  std::optional<std::string> get(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    return it->second;
  }

  std::string get_string(const std::string& key, std::string fallback) const {
    return get(key).value_or(std::move(fallback));
  }

  double get_double(const std::string& key, double fallback) const {
    auto v = get(key);
    return v ? xml::parse_double(*v, key) : fallback;
  }

  std::int64_t get_int(const std::string& key, std::int64_t fallback) const {
    auto v = get(key);
    return v ? xml::parse_int(*v, key) : fallback;
  }

  std::vector<double> get_doubles(const std::string& key, std::vector<double> fallback) const {
    auto v = get(key);
    if (!v) return fallback;
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= v->size()) {
      auto end = v->find(',', start);
      if (end == std::string::npos) end = v->size();
      out.push_back(xml::parse_double(std::string_view(*v).substr(start, end - start), key));
      start = end + 1;
    }
    return out;
  }

  // Throws on any key outside `known`.
  void require_known(const std::set<std::string>& known) const {
    for (const auto& [k, _] : values_)
      if (!known.contains(k)) throw ValidationError("unknown config key '" + k + "'");
  }

  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace jobrec
