#pragma once

#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "reso/evolve.hpp"

namespace reso {

inline nlohmann::json norm_report_to_json(const NormReport& r) {
  return nlohmann::json{{"t", r.t},           {"u_HN", r.u_hn},       {"u_H2", r.u_h2},
                        {"u_Linf", r.u_linf}, {"Ru_Linf", r.ru_linf}, {"xf_L2", r.xf_l2},
                        {"Lxf_H1", r.lxf_h1}, {"x2Lf_H1", r.x2lf_h1}, {"X", r.xnorm}};
}

inline NormReport norm_report_from_json(const nlohmann::json& j) {
  NormReport r;
  r.t = j.at("t").get<double>();
  r.u_hn = j.at("u_HN").get<double>();
  r.u_h2 = j.at("u_H2").get<double>();
  r.u_linf = j.at("u_Linf").get<double>();
  r.ru_linf = j.at("Ru_Linf").get<double>();
  r.xf_l2 = j.at("xf_L2").get<double>();
  r.lxf_h1 = j.at("Lxf_H1").get<double>();
  r.x2lf_h1 = j.at("x2Lf_H1").get<double>();
  r.xnorm = j.at("X").get<double>();
  return r;
}

inline const std::vector<std::string>& norm_report_keys() {
  static const std::vector<std::string> keys = {"u_HN",  "u_H2",   "u_Linf", "Ru_Linf",
                                                "xf_L2", "Lxf_H1", "x2Lf_H1", "X"};
  return keys;
}

inline double norm_report_value(const NormReport& r, const std::string& key) {
  if (key == "u_HN") return r.u_hn;
  if (key == "u_H2") return r.u_h2;
  if (key == "u_Linf") return r.u_linf;
  if (key == "Ru_Linf") return r.ru_linf;
  if (key == "xf_L2") return r.xf_l2;
  if (key == "Lxf_H1") return r.lxf_h1;
  if (key == "x2Lf_H1") return r.x2lf_h1;
  if (key == "X") return r.xnorm;
  throw std::invalid_argument("unknown norm-report key: " + key);
}

inline void write_norm_reports(const std::vector<NormReport>& series, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path);
  for (const auto& r : series) os << norm_report_to_json(r).dump() << "\n";
}

inline std::vector<NormReport> read_norm_reports(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open " + path);
  std::vector<NormReport> series;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    series.push_back(norm_report_from_json(nlohmann::json::parse(line)));
  }
  return series;
}

/// Plot-ready CSV with one row per sample and one column per key.
inline void write_series_csv(const std::vector<NormReport>& series, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path);
  os << "t";
  for (const auto& k : norm_report_keys()) os << "," << k;
  os << "\n";
  os << std::setprecision(17);
  for (const auto& r : series) {
    os << r.t;
    for (const auto& k : norm_report_keys()) os << "," << norm_report_value(r, k);
    os << "\n";
  }
}

}  // namespace reso
