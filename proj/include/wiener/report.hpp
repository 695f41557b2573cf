#pragma once

// Experiment reports: ordered parameters, measured quantities with error
// bounds, and pass/fail verdicts. Serialized as JSON with %.17g numbers so a
// report round-trips every double exactly.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace wiener {

using ParamValue = std::variant<bool, std::int64_t, double, std::string>;

struct Quantity {
  std::string label;
  double value = 0.0;
  double error_bound = 0.0;
};

struct Verdict {
  std::string claim;
  bool pass = false;
  std::string quantity;  // label of the quantity the verdict is based on
};

struct ExperimentReport {
  std::string experiment_id;
  std::vector<std::pair<std::string, ParamValue>> parameters;
  std::vector<Quantity> quantities;
  std::vector<Verdict> verdicts;
  std::uint64_t seed = 0;
  std::optional<double> runtime_ms;  // only serialized when set

  void param(std::string key, ParamValue v) { parameters.emplace_back(std::move(key), std::move(v)); }

  void quantity(std::string label, double value, double error_bound = 0.0) {
    quantities.push_back({std::move(label), value, error_bound});
  }

  void verdict(std::string claim, bool pass, std::string quantity_label) {
    if (!has_quantity(quantity_label)) throw std::logic_error("verdict references unknown quantity " + quantity_label);
    verdicts.push_back({std::move(claim), pass, std::move(quantity_label)});
  }

  bool has_quantity(const std::string& label) const {
    for (const Quantity& q : quantities)
      if (q.label == label) return true;
    return false;
  }

  const Quantity& find(const std::string& label) const {
    for (const Quantity& q : quantities)
      if (q.label == label) return q;
    throw std::out_of_range("no quantity " + label);
  }

  bool all_pass() const {
    for (const Verdict& v : verdicts)
      if (!v.pass) return false;
    return true;
  }
};

namespace detail {

inline std::string format_double(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out + "\"";
}

inline std::string json_value(const ParamValue& v) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, bool>) return x ? "true" : "false";
        else if constexpr (std::is_same_v<T, std::int64_t>) return std::to_string(x);
        else if constexpr (std::is_same_v<T, double>) return format_double(x);
        else return json_string(x);
      },
      v);
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += (c == '"') ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

}  // namespace detail

inline void write_json(std::ostream& os, const ExperimentReport& r) {
  using detail::format_double;
  using detail::json_string;
  os << "{\n  \"experiment_id\": " << json_string(r.experiment_id) << ",\n  \"parameters\": {";
  for (std::size_t i = 0; i < r.parameters.size(); ++i) {
    os << (i ? ",\n    " : "\n    ") << json_string(r.parameters[i].first) << ": "
       << detail::json_value(r.parameters[i].second);
  }
  os << (r.parameters.empty() ? "},\n" : "\n  },\n") << "  \"quantities\": [";
  for (std::size_t i = 0; i < r.quantities.size(); ++i) {
    const Quantity& q = r.quantities[i];
    os << (i ? ",\n    " : "\n    ") << "{\"label\": " << json_string(q.label) << ", \"value\": " << format_double(q.value)
       << ", \"error_bound\": " << format_double(q.error_bound) << "}";
  }
  os << (r.quantities.empty() ? "],\n" : "\n  ],\n") << "  \"verdicts\": [";
  for (std::size_t i = 0; i < r.verdicts.size(); ++i) {
    const Verdict& v = r.verdicts[i];
    os << (i ? ",\n    " : "\n    ") << "{\"claim\": " << json_string(v.claim) << ", \"pass\": " << (v.pass ? "true" : "false")
       << ", \"quantity\": " << json_string(v.quantity) << "}";
  }
  os << (r.verdicts.empty() ? "],\n" : "\n  ],\n") << "  \"seed\": " << r.seed;
  if (r.runtime_ms) os << ",\n  \"runtime_ms\": " << format_double(*r.runtime_ms);
  os << "\n}\n";
}

inline std::string to_json(const ExperimentReport& r) {
  std::ostringstream os;
  write_json(os, r);
  return os.str();
}

/// One row per quantity, then one row per verdict.
inline void write_csv(std::ostream& os, const ExperimentReport& r) {
  os << "kind,label,value,error_bound\n";
  for (const Quantity& q : r.quantities)
    os << "quantity," << detail::csv_field(q.label) << ',' << detail::format_double(q.value) << ','
       << detail::format_double(q.error_bound) << '\n';
  for (const Verdict& v : r.verdicts)
    os << "verdict," << detail::csv_field(v.claim) << ',' << (v.pass ? "pass" : "fail") << ','
       << detail::csv_field(v.quantity) << '\n';
}

}  // namespace wiener
