#pragma once

// Text formats for polynomials and sets.
//
// Polynomial file: JSON array of [frequency, re, im] triples, e.g.
//   [[0, 1, 0], [3, 0.5, -0.25]]
// Set string: "lo,hi;lo,hi;..." (U+2212 minus accepted), "torus", or
// "dioph:L,l_max,exponent".

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "wiener/report.hpp"
#include "wiener/torus_set.hpp"
#include "wiener/trig_poly.hpp"

namespace wiener {

inline void write_poly(std::ostream& os, const TrigPoly& f) {
  os << '[';
  bool first = true;
  for (const Term& t : f.terms()) {
    os << (first ? "\n  [" : ",\n  [") << t.freq << ", " << detail::format_double(t.coef.real()) << ", "
       << detail::format_double(t.coef.imag()) << ']';
    first = false;
  }
  os << (first ? "]\n" : "\n]\n");
}

inline TrigPoly parse_poly(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  if (!j.is_array()) throw std::invalid_argument("polynomial file: expected a JSON array");
  std::vector<std::pair<Frequency, Complex>> entries;
  entries.reserve(j.size());
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() || !e[1].is_number() || !e[2].is_number())
      throw std::invalid_argument("polynomial file: entries must be [frequency, re, im]");
    entries.emplace_back(e[0].get<Frequency>(), Complex{e[1].get<double>(), e[2].get<double>()});
  }
  return make_poly(entries);
}

inline void save_poly(const std::string& path, const TrigPoly& f) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path);
  write_poly(os, f);
}

inline TrigPoly load_poly(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_poly(ss.str());
}

namespace detail {

inline std::string normalize_minus(std::string s) {
  const std::string unicode_minus = "\xE2\x88\x92";
  for (std::size_t pos; (pos = s.find(unicode_minus)) != std::string::npos;) s.replace(pos, unicode_minus.size(), "-");
  std::erase_if(s, [](char c) { return c == ' ' || c == '\t'; });
  return s;
}

inline double parse_number(const std::string& s) {
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw std::invalid_argument("bad number '" + s + "'");
  return v;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

}  // namespace detail

inline SymmetricSet parse_set(const std::string& raw) {
  const std::string s = detail::normalize_minus(raw);
  if (s == "torus") return SymmetricSet::torus();
  if (s.rfind("dioph:", 0) == 0) {
    const auto parts = detail::split(s.substr(6), ',');
    if (parts.size() != 3) throw std::invalid_argument("set: expected dioph:L,l_max,exponent");
    return diophantine_set(std::stoll(parts[0]), std::stoll(parts[1]), std::stoi(parts[2]));
  }
  std::vector<Interval> intervals;
  for (const std::string& piece : detail::split(s, ';')) {
    const auto ends = detail::split(piece, ',');
    if (ends.size() != 2) throw std::invalid_argument("set: interval '" + piece + "' is not lo,hi");
    intervals.push_back({detail::parse_number(ends[0]), detail::parse_number(ends[1])});
  }
  return make_set(intervals);
}

inline std::string format_set(const SymmetricSet& e) {
  std::string out;
  for (const Interval& i : e.intervals()) {
    if (!out.empty()) out += ';';
    out += detail::format_double(i.lo) + "," + detail::format_double(i.hi);
  }
  return out;
}

}  // namespace wiener
