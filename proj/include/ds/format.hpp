#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "ds/propagation.hpp"
#include "json.hpp"

namespace ds {

// Fixed-point display with the platform's correctly-rounded printf
// (ties resolve to even in the decimal sense). Display only; computation
// always runs at full precision.
inline std::string fixed_number(double x, int precision) {
  if (x < 0 && x > -1e-12) x = 0;  // avoid "-0.000000" from float noise
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, x);
  return buf;
}

inline double display_round(double x, int precision) {
  return std::stod(fixed_number(x, precision));
}

inline std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

inline std::string report_title(const BeliefReport& r) {
  std::string out;
  for (const auto& v : r.frame.variables()) {
    if (!out.empty()) out += " x ";
    out += v.name;
  }
  return out;
}

inline std::string render_text(const BeliefReport& r, const std::string& method,
                               int precision) {
  std::string out = "belief on " + report_title(r);
  if (!method.empty()) out += "  method=" + method;
  out += "  conflict=" + fixed_number(r.conflict, precision) + "\n";
  std::size_t width = 6;
  for (const auto& row : r.rows) width = std::max(width, row.subset.to_string().size());
  auto pad = [&](std::string s, std::size_t w) {
    s.resize(std::max(s.size(), w), ' ');
    return s;
  };
  std::size_t numw = std::max<std::size_t>(precision + 4, 4);
  out += pad("subset", width) + "  " + pad("m", numw) + "  " + pad("bel", numw) + "  pl\n";
  for (const auto& row : r.rows) {
    out += pad(row.subset.to_string(), width) + "  " +
           pad(fixed_number(row.m, precision), numw) + "  " +
           pad(fixed_number(row.bel, precision), numw) + "  " +
           fixed_number(row.pl, precision) + "\n";
  }
  return out;
}

inline std::string render_csv(const BeliefReport& r, int precision) {
  std::string out = "subset,m,bel,pl\n";
  for (const auto& row : r.rows) {
    out += csv_quote(row.subset.to_string()) + "," + fixed_number(row.m, precision) + "," +
           fixed_number(row.bel, precision) + "," + fixed_number(row.pl, precision) + "\n";
  }
  return out;
}

inline nlohmann::json render_json(const BeliefReport& r, const std::string& method,
                                  int precision) {
  nlohmann::json j;
  j["frame"] = nlohmann::json::array();
  for (const auto& v : r.frame.variables()) j["frame"].push_back(v.name);
  if (!method.empty()) j["method"] = method;
  j["conflict"] = display_round(r.conflict, precision);
  j["rows"] = nlohmann::json::array();
  for (const auto& row : r.rows) {
    nlohmann::json labels = nlohmann::json::array();
    for (std::size_t c : row.subset.members())
      labels.push_back(r.frame.config_label(c));
    j["rows"].push_back({{"subset", labels},
                         {"m", display_round(row.m, precision)},
                         {"bel", display_round(row.bel, precision)},
                         {"pl", display_round(row.pl, precision)}});
  }
  return j;
}

struct MethodReport {
  std::string method;
  BeliefReport report;
};

// Rows whose m/Bel/Pl triples are not identical across all reports.
inline std::vector<bool> differing_rows(const std::vector<MethodReport>& reports) {
  std::size_t n = reports.front().report.rows.size();
  std::vector<bool> starred(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& base = reports.front().report.rows[i];
    for (const auto& mr : reports) {
      const auto& row = mr.report.rows[i];
      if (std::abs(row.m - base.m) > 1e-12 || std::abs(row.bel - base.bel) > 1e-12 ||
          std::abs(row.pl - base.pl) > 1e-12)
        starred[i] = true;
    }
  }
  return starred;
}

inline std::string render_compare_text(const std::vector<MethodReport>& reports,
                                       int precision) {
  auto starred = differing_rows(reports);
  const BeliefReport& first = reports.front().report;
  std::string out = "joint belief on " + report_title(first) + "\n";
  for (const auto& mr : reports)
    out += "  " + mr.method + ": conflict=" + fixed_number(mr.report.conflict, precision) + "\n";
  std::size_t width = 6;
  for (const auto& row : first.rows) width = std::max(width, row.subset.to_string().size());
  auto pad = [&](std::string s, std::size_t w) {
    s.resize(std::max(s.size(), w), ' ');
    return s;
  };
  out += pad("subset", width);
  for (const auto& mr : reports) out += " | m bel pl (" + mr.method + ")";
  out += "\n";
  for (std::size_t i = 0; i < first.rows.size(); ++i) {
    out += pad(first.rows[i].subset.to_string(), width);
    for (const auto& mr : reports) {
      const auto& row = mr.report.rows[i];
      out += " | " + fixed_number(row.m, precision) + " " + fixed_number(row.bel, precision) +
             " " + fixed_number(row.pl, precision);
    }
    if (starred[i]) out += " *";
    out += "\n";
  }
  return out;
}

inline std::string render_compare_csv(const std::vector<MethodReport>& reports,
                                      int precision) {
  std::string out = "subset,m,bel,pl,method\n";
  for (const auto& mr : reports) {
    for (const auto& row : mr.report.rows) {
      out += csv_quote(row.subset.to_string()) + "," + fixed_number(row.m, precision) + "," +
             fixed_number(row.bel, precision) + "," + fixed_number(row.pl, precision) + "," +
             mr.method + "\n";
    }
  }
  return out;
}

inline nlohmann::json render_compare_json(const std::vector<MethodReport>& reports,
                                          int precision) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& mr : reports) j.push_back(render_json(mr.report, mr.method, precision));
  return j;
}

}  // namespace ds
