// Command-line front end for the space-time resonance toolkit: resonant-set
// maps, null-condition checks, bilinear operator probes, linear propagation
// and nonlinear simulation runs, decay fits, and report aggregation.
//
// Exit codes: 0 success, 2 configuration/validation error, 3 numerical
// failure.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "reso/config.hpp"
#include "reso/io.hpp"
#include "reso/resonance.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json load_config_file(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config file: " + path);
  try {
    return json::parse(is);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
}

/// flags > file > defaults: overlay merges scalar flag values over the file.
json merged_config(const json& defaults, const json& file, const json& flags) {
  json cfg = defaults;
  cfg.merge_patch(file);
  cfg.merge_patch(flags);
  return cfg;
}

void validate_or_throw(const json& schema, const json& cfg, const std::string& command) {
  auto errors = reso::validate_schema(schema, cfg);
  if (!errors.empty()) {
    std::ostringstream msg;
    msg << command << " config failed validation:";
    for (const auto& e : errors) msg << "\n  " << e;
    throw ConfigError(msg.str());
  }
}

fs::path prepare_out_dir(std::string out) {
  if (out.empty()) {
    const char* env = std::getenv("RESO_OUT_DIR");
    out = env ? env : ".";
  }
  fs::path dir(out);
  fs::create_directories(dir);
  return dir;
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path.string());
  os << j.dump(2) << "\n";
}

void echo_config(const fs::path& dir, const json& cfg) {
  write_json(dir / "effective_config.json", cfg);
}

std::vector<double> parse_csv_doubles(const std::string& text) {
  std::vector<double> vals;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) vals.push_back(std::stod(item));
  return vals;
}

json symbol_flags_to_json(const std::string& kind, const std::string& signs, int i, int j,
                          const std::string& expr, double homogeneity) {
  json sym{{"kind", kind}};
  if (!signs.empty()) {
    if (signs.size() != 2 || (signs[0] != '+' && signs[0] != '-') ||
        (signs[1] != '+' && signs[1] != '-'))
      throw ConfigError("--signs must be two characters from {+,-}, e.g. -+");
    sym["signs"] = {signs[0] == '+' ? 1 : -1, signs[1] == '+' ? 1 : -1};
  }
  if (i > 0) sym["i"] = i;
  if (j > 0) sym["j"] = j;
  if (!expr.empty()) {
    sym["expr"] = expr;
    sym["homogeneity"] = homogeneity;
  }
  return sym;
}

// ---------------------------------------------------------------------------

int cmd_resonance(const json& cfg, const fs::path& dir) {
  validate_or_throw(reso::resonance_schema(), cfg, "resonance");
  echo_config(dir, cfg);
  auto rcase = reso::resonance_case_from_label(cfg.at("case").get<std::string>());
  int d = cfg.value("d", 3);
  int n = cfg.at("N").get<int>();
  double box = cfg.value("L", 16.0 * reso::kPi);
  reso::Phase phase = reso::phase_for_case(rcase);
  if (cfg.contains("speeds")) {
    const auto& s = cfg["speeds"];
    phase = reso::Phase::from_signs(phase.sign_eta, phase.sign_delta, s.at(0).get<double>(),
                                    s.at(1).get<double>(), s.at(2).get<double>());
  }
  const auto& xi_json = cfg.at("xi");
  reso::Vec xi(xi_json.at(0).get<double>(), xi_json.at(1).get<double>(),
               xi_json.size() > 2 ? xi_json.at(2).get<double>() : 0.0);
  reso::GridPtr grid = reso::make_grid(d, n, box);
  double tol = cfg.contains("tol") ? cfg["tol"].get<double>()
                                   : reso::recommended_mask_tol(*grid, xi);
  reso::ResonanceMask masks = reso::resonance_masks(phase, xi, grid, tol);

  auto write_mask = [&](const std::vector<std::uint8_t>& m, const std::string& name) {
    std::ofstream os(dir / (name + ".mask"), std::ios::binary);
    os.write(reinterpret_cast<const char*>(m.data()), static_cast<std::streamsize>(m.size()));
  };
  write_mask(masks.time_mask, "time");
  write_mask(masks.space_mask, "space");
  write_mask(masks.spacetime_mask, "spacetime");
  write_mask(masks.axis_flag, "axis_flag");

  auto agree = reso::mask_oracle_agreement(rcase, masks);
  double cell = std::sqrt(static_cast<double>(d)) * grid->dxi();
  json summary{{"case", cfg.at("case")},
               {"tol", tol},
               {"cell", cell},
               {"counts",
                {{"time", agree.time_count},
                 {"space", agree.space_count},
                 {"spacetime", agree.spacetime_count}}},
               {"time_space_symdiff_within_cell", agree.time_space_symdiff_within_cell},
               {"strict_inclusion_witnesses", agree.strict_inclusion_witnesses},
               {"mismatches_beyond_cell", agree.beyond_cell},
               {"worst_mismatch_distance", agree.worst_distance},
               {"agrees_with_oracle", agree.beyond_cell == 0}};
  write_json(dir / "summary.json", summary);
  std::cout << summary.dump(2) << "\n";
  return agree.beyond_cell == 0 ? kExitOk : kExitNumerical;
}

int cmd_nullcheck(const json& cfg, const fs::path& dir) {
  validate_or_throw(reso::nullcheck_schema(), cfg, "nullcheck");
  echo_config(dir, cfg);
  int dim = cfg.value("dim", 3);
  reso::BilinearSymbol sym = reso::symbol_from_json(cfg.at("symbol"), dim);
  reso::Phase phase = cfg.contains("phase") ? reso::phase_from_json(cfg["phase"])
                      : cfg.at("symbol").contains("signs")
                          ? reso::phase_from_json(cfg.at("symbol"))
                          : reso::Phase::minus_plus();
  reso::NullCheckConfig ncfg;
  ncfg.bulk_samples = cfg.value("samples", 10000);
  ncfg.shells = cfg.value("shells", 8);
  ncfg.dim = dim;
  reso::NullCheckReport rep = reso::null_condition_check(sym, phase, ncfg);

  json shells = json::array();
  for (const auto& s : rep.shells) shells.push_back({{"dist", s.distance}, {"sup_ratio", s.sup_ratio}});
  json out{{"symbol", sym.name},
           {"phase", phase.label()},
           {"verdict", rep.verdict},
           {"sup_ratio", rep.sup_ratio},
           {"shells", shells},
           {"witness_fit", {{"residual_rms", rep.witness_residual_rms}}}};
  write_json(dir / "nullcheck.json", out);
  std::cout << "symbol " << sym.name << " against phase " << phase.label() << ": " << rep.verdict
            << " (sup ratio " << rep.sup_ratio << ")\n";
  return kExitOk;
}

int cmd_probe(const json& cfg, const fs::path& dir) {
  validate_or_throw(reso::probe_schema(), cfg, "probe");
  echo_config(dir, cfg);
  int dim = cfg.value("d", 3);
  reso::BilinearSymbol sym = reso::symbol_from_json(cfg.at("symbol"), dim);
  std::vector<int> n_list;
  for (const auto& n : cfg.at("N_list")) n_list.push_back(n.get<int>());
  auto stats = reso::bilinear_bound_probe(sym, cfg.at("p").get<double>(), cfg.at("q").get<double>(),
                                          cfg.at("r").get<double>(), cfg.at("trials").get<int>(),
                                          n_list, dim, cfg.value("L", 2.0 * reso::kPi),
                                          cfg.value("seed", 1234));
  std::ofstream csv(dir / "probe.csv");
  csv << "N,trial,ratio\n" << std::setprecision(17);
  for (const auto& s : stats.samples) csv << s.n << "," << s.trial << "," << s.ratio << "\n";
  if (sym.separable) write_json(dir / "form.json", reso::form_to_json(*sym.separable));
  json out{{"symbol", sym.name},
           {"trend_slope", stats.trend_slope},
           {"N", stats.n_list},
           {"max_ratio", stats.max_ratio_per_n}};
  write_json(dir / "probe.json", out);
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

int cmd_propagate(const json& cfg, const fs::path& dir) {
  validate_or_throw(reso::propagate_schema(), cfg, "propagate");
  echo_config(dir, cfg);
  reso::GridPtr grid = reso::grid_from_json(cfg.at("grid"));
  reso::InitialDataConfig data = reso::initial_data_from_json(
      cfg.value("data", json::object()), cfg.value("seed", std::uint64_t{1}));
  const auto& times_cfg = cfg.at("times");
  double t1 = times_cfg.at("t1").get<double>(), t2 = times_cfg.at("t2").get<double>();
  double horizon = grid->box_length() / 4.0;
  if (t2 >= horizon)
    throw ConfigError("propagate: window end " + std::to_string(t2) +
                      " violates the wrap-around horizon L/4 = " + std::to_string(horizon));
  auto times = reso::log_spaced_times(t1, t2, times_cfg.at("count").get<int>());
  auto samples = reso::linear_decay_experiment(grid, data, times, cfg.value("speed", 1.0));
  std::ofstream os(dir / "series.jsonl");
  for (const auto& s : samples)
    os << json{{"t", s.t}, {"u_Linf", s.u_linf}, {"u_L2", s.u_l2}}.dump() << "\n";
  std::vector<double> ts, linf;
  for (const auto& s : samples) ts.push_back(s.t), linf.push_back(s.u_linf);
  auto fit = reso::decay_fit(ts, linf, t1, t2, grid->box_length());
  double l2_drift = 0.0;
  for (const auto& s : samples) l2_drift = std::max(l2_drift, std::abs(s.u_l2 - samples[0].u_l2));
  json out{{"slope", fit.slope},
           {"stderr", fit.stderr_slope},
           {"samples", fit.samples},
           {"horizon", horizon},
           {"l2_drift", l2_drift}};
  write_json(dir / "fit.json", out);
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

int cmd_simulate(const json& cfg, const fs::path& dir) {
  validate_or_throw(reso::simulate_schema(), cfg, "simulate");
  echo_config(dir, cfg);
  reso::RunConfig run = reso::run_config_from_json(cfg);
  double horizon = run.grid->box_length() / 4.0;
  reso::RunResult result = reso::run_simulation(run);

  std::ofstream os(dir / "norms.jsonl");
  for (const auto& r : result.series) os << reso::norm_report_to_json(r).dump() << "\n";
  reso::write_series_csv(result.series, (dir / "norms.csv").string());
  for (const auto& [t, profile] : result.snapshots) {
    std::ostringstream name;
    name << "profile_t" << t;
    reso::write_snapshot(profile, (dir / name.str()).string(), t);
  }
  reso::write_snapshot(result.final_state.profiles[0], (dir / "profile_final").string(),
                       result.final_state.time);
  json meta{{"t_final", result.final_state.time},
            {"steps", result.final_state.step_count},
            {"horizon", horizon},
            {"nan_aborted", result.nan_aborted}};
  write_json(dir / "run.json", meta);
  std::cout << meta.dump(2) << "\n";
  return result.nan_aborted ? kExitNumerical : kExitOk;
}

std::map<double, std::map<std::string, double>> read_series_file(const fs::path& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open series file: " + path.string());
  std::map<double, std::map<std::string, double>> rows;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    json j = json::parse(line);
    double t = j.at("t").get<double>();
    for (auto it = j.begin(); it != j.end(); ++it)
      if (it.key() != "t" && it.value().is_number())
        rows[t][it.key()] = it.value().get<double>();
  }
  return rows;
}

int cmd_fit(const json& cfg, const fs::path& dir) {
  validate_or_throw(reso::fit_schema(), cfg, "fit");
  echo_config(dir, cfg);
  auto rows = read_series_file(cfg.at("series").get<std::string>());
  std::string key = cfg.at("key").get<std::string>();
  std::vector<double> ts, vals;
  for (const auto& [t, kv] : rows) {
    auto it = kv.find(key);
    if (it == kv.end()) throw ConfigError("series lacks key '" + key + "'");
    ts.push_back(t);
    vals.push_back(it->second);
  }
  auto fit = reso::decay_fit(ts, vals, cfg.at("t1").get<double>(), cfg.at("t2").get<double>(),
                             cfg.at("L").get<double>());
  json out{{"key", key}, {"slope", fit.slope}, {"stderr", fit.stderr_slope}, {"samples", fit.samples}};
  write_json(dir / "fit.json", out);
  std::ofstream csv(dir / "fit.csv");
  csv << "key,slope,stderr,samples\n"
      << std::setprecision(17) << key << "," << fit.slope << "," << fit.stderr_slope << ","
      << fit.samples << "\n";
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

int cmd_report(const json& cfg, const fs::path& dir) {
  validate_or_throw(reso::report_schema(), cfg, "report");
  echo_config(dir, cfg);
  std::vector<std::string> runs;
  for (const auto& r : cfg.at("runs")) runs.push_back(r.get<std::string>());
  std::vector<std::map<double, std::map<std::string, double>>> series;
  for (const auto& r : runs) {
    fs::path p = fs::path(r) / "norms.jsonl";
    if (!fs::exists(p)) {
      fs::path alt = fs::path(r) / "series.jsonl";
      if (!fs::exists(alt))
        throw ConfigError("report: run '" + r + "' lacks expected artifacts (norms.jsonl or series.jsonl)");
      p = alt;
    }
    series.push_back(read_series_file(p));
  }

  std::vector<std::string> keys;
  if (cfg.contains("keys"))
    for (const auto& k : cfg["keys"]) keys.push_back(k.get<std::string>());
  else {
    for (const auto& s : series)
      for (const auto& [t, kv] : s)
        for (const auto& [k, v] : kv)
          if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);
  }

  json summary = json::array();
  for (std::size_t i = 0; i < runs.size(); ++i) {
    double tmin = series[i].begin()->first, tmax = series[i].rbegin()->first;
    double t1 = cfg.value("t1", std::max(tmin, 2.0));
    double t2 = cfg.value("t2", tmax);
    json run_summary{{"run", runs[i]}, {"t1", t1}, {"t2", t2}};
    json slopes = json::object();
    for (const auto& key : keys) {
      std::vector<double> ts, vals;
      for (const auto& [t, kv] : series[i]) {
        auto it = kv.find(key);
        if (it != kv.end()) ts.push_back(t), vals.push_back(it->second);
      }
      if (ts.size() < 8) continue;
      try {
        auto fit = reso::decay_fit(ts, vals, t1, t2, 4.0 * (t2 + 1.0));
        slopes[key] = fit.slope;
      } catch (const std::exception&) {
      }
    }
    run_summary["slopes"] = slopes;
    summary.push_back(run_summary);
  }
  write_json(dir / "summary.json", summary);

  // Side-by-side t * ||u||_inf table over the union of sampled times.
  std::ofstream tbl(dir / "t_uinf_table.csv");
  tbl << "t";
  for (const auto& r : runs) tbl << "," << fs::path(r).filename().string();
  tbl << "\n" << std::setprecision(17);
  for (const auto& [t, kv] : series[0]) {
    tbl << t;
    for (std::size_t i = 0; i < series.size(); ++i) {
      auto row = series[i].find(t);
      if (row == series[i].end() || !row->second.count("u_Linf"))
        tbl << ",";
      else
        tbl << "," << t * row->second.at("u_Linf");
    }
    tbl << "\n";
  }
  std::cout << summary.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"space-time resonance spectral toolkit"};
  app.require_subcommand(1);

  unsigned threads = 0;
  app.add_option("--threads", threads, "cap worker threads (0 = hardware)");

  struct Common {
    std::string config, out;
  };
  auto add_common = [&](CLI::App* cmd) {
    auto c = std::make_shared<Common>();
    cmd->add_option("--config", c->config, "JSON config file");
    cmd->add_option("--out", c->out, "output directory (default $RESO_OUT_DIR or .)");
    return c;
  };

  // resonance
  auto* resonance = app.add_subcommand("resonance", "resonant-set masks vs the analytic oracle");
  auto resonance_common = add_common(resonance);
  std::string res_case = "++", res_xi = "1,0,0", res_speeds;
  int res_n = 0, res_d = 0;
  double res_l = 0.0, res_tol = 0.0;
  resonance->add_option("--case", res_case, "sign pair: --, ++ or -+");
  resonance->add_option("--xi", res_xi, "output frequency, comma separated");
  resonance->add_option("--N", res_n, "eta-lattice points per axis");
  resonance->add_option("--d", res_d, "dimension (2 or 3)");
  resonance->add_option("--L", res_l, "torus period of the eta lattice");
  resonance->add_option("--tol", res_tol, "mask tolerance");
  resonance->add_option("--speeds", res_speeds, "c_out,c_eta,c_delta");

  // nullcheck
  auto* nullcheck = app.add_subcommand("nullcheck", "sampled non-resonance verdict for a symbol");
  auto nullcheck_common = add_common(nullcheck);
  std::string nc_symbol, nc_signs, nc_expr;
  int nc_i = 0, nc_j = 0, nc_samples = 0;
  double nc_homog = 0.0;
  nullcheck->add_option("--symbol", nc_symbol, "Q0 | Q0i | Qij | one | phi_over_eta | cm_test | expr");
  nullcheck->add_option("--signs", nc_signs, "sign pair, e.g. -+ (eta leg first)");
  nullcheck->add_option("--i", nc_i, "first index for Q0i/Qij");
  nullcheck->add_option("--j", nc_j, "second index for Qij");
  nullcheck->add_option("--expr", nc_expr, "expression for --symbol expr");
  nullcheck->add_option("--homogeneity", nc_homog, "declared homogeneity of --expr");
  nullcheck->add_option("--samples", nc_samples, "bulk sample count");

  // probe
  auto* probe = app.add_subcommand("probe", "bilinear boundedness probe over random fields");
  auto probe_common = add_common(probe);
  std::string pr_symbol, pr_signs, pr_nlist;
  double pr_p = 0.0, pr_q = 0.0, pr_r = 0.0;
  int pr_trials = 0;
  std::uint64_t pr_seed = 0;
  probe->add_option("--symbol", pr_symbol, "symbol kind");
  probe->add_option("--signs", pr_signs, "sign pair for sign-dependent symbols");
  probe->add_option("--p", pr_p, "first Lebesgue exponent");
  probe->add_option("--q", pr_q, "second Lebesgue exponent");
  probe->add_option("--r", pr_r, "output Lebesgue exponent");
  probe->add_option("--trials", pr_trials, "trials per grid size");
  probe->add_option("--N", pr_nlist, "comma-separated grid sizes");
  probe->add_option("--seed", pr_seed, "random seed");

  // propagate
  auto* propagate = app.add_subcommand("propagate", "linear dispersive decay experiment");
  auto propagate_common = add_common(propagate);

  // simulate
  auto* simulate = app.add_subcommand("simulate", "nonlinear profile-space simulation");
  auto simulate_common = add_common(simulate);

  // fit
  auto* fit = app.add_subcommand("fit", "decay-slope fit of a series key");
  auto fit_common = add_common(fit);
  std::string fit_series, fit_key;
  double fit_t1 = 0.0, fit_t2 = 0.0, fit_l = 0.0;
  fit->add_option("--series", fit_series, "JSON-lines series file");
  fit->add_option("--key", fit_key, "series key to fit");
  fit->add_option("--t1", fit_t1, "window start");
  fit->add_option("--t2", fit_t2, "window end");
  fit->add_option("--L", fit_l, "box length (horizon check)");

  // report
  auto* report = app.add_subcommand("report", "aggregate run artifacts into decay tables");
  auto report_common = add_common(report);
  std::string rep_runs;
  double rep_t1 = 0.0, rep_t2 = 0.0;
  report->add_option("--runs", rep_runs, "comma-separated run directories");
  report->add_option("--t1", rep_t1, "fit window start");
  report->add_option("--t2", rep_t2, "fit window end");

  CLI11_PARSE(app, argc, argv);
  reso::thread_cap().store(threads);

  try {
    if (resonance->parsed()) {
      json flags = json::object();
      if (resonance->count("--case")) flags["case"] = res_case;
      if (resonance->count("--xi")) flags["xi"] = parse_csv_doubles(res_xi);
      if (resonance->count("--N")) flags["N"] = res_n;
      if (resonance->count("--d")) flags["d"] = res_d;
      if (resonance->count("--L")) flags["L"] = res_l;
      if (resonance->count("--tol")) flags["tol"] = res_tol;
      if (resonance->count("--speeds")) flags["speeds"] = parse_csv_doubles(res_speeds);
      json defaults{{"case", "++"}, {"xi", {1.0, 0.0, 0.0}}, {"N", 64}};
      json cfg = merged_config(defaults, load_config_file(resonance_common->config), flags);
      return cmd_resonance(cfg, prepare_out_dir(resonance_common->out));
    }
    if (nullcheck->parsed()) {
      json flags = json::object();
      if (nullcheck->count("--symbol") || nullcheck->count("--expr") || nullcheck->count("--signs")) {
        json sym = symbol_flags_to_json(nc_symbol.empty() ? "Q0" : nc_symbol, nc_signs, nc_i, nc_j,
                                        nc_expr, nc_homog);
        flags["symbol"] = sym;
      }
      if (nullcheck->count("--samples")) flags["samples"] = nc_samples;
      json cfg = merged_config(json::object(), load_config_file(nullcheck_common->config), flags);
      return cmd_nullcheck(cfg, prepare_out_dir(nullcheck_common->out));
    }
    if (probe->parsed()) {
      json flags = json::object();
      if (probe->count("--symbol"))
        flags["symbol"] = symbol_flags_to_json(pr_symbol, pr_signs, 0, 0, "", 0.0);
      if (probe->count("--p")) flags["p"] = pr_p;
      if (probe->count("--q")) flags["q"] = pr_q;
      if (probe->count("--r")) flags["r"] = pr_r;
      if (probe->count("--trials")) flags["trials"] = pr_trials;
      if (probe->count("--N")) {
        json arr = json::array();
        for (double v : parse_csv_doubles(pr_nlist)) arr.push_back(static_cast<int>(v));
        flags["N_list"] = arr;
      }
      if (probe->count("--seed")) flags["seed"] = pr_seed;
      json cfg = merged_config(json::object(), load_config_file(probe_common->config), flags);
      return cmd_probe(cfg, prepare_out_dir(probe_common->out));
    }
    if (propagate->parsed()) {
      json cfg = load_config_file(propagate_common->config);
      if (propagate_common->config.empty()) throw ConfigError("propagate requires --config");
      return cmd_propagate(cfg, prepare_out_dir(propagate_common->out));
    }
    if (simulate->parsed()) {
      if (simulate_common->config.empty()) throw ConfigError("simulate requires --config");
      json cfg = load_config_file(simulate_common->config);
      return cmd_simulate(cfg, prepare_out_dir(simulate_common->out));
    }
    if (fit->parsed()) {
      json flags = json::object();
      if (fit->count("--series")) flags["series"] = fit_series;
      if (fit->count("--key")) flags["key"] = fit_key;
      if (fit->count("--t1")) flags["t1"] = fit_t1;
      if (fit->count("--t2")) flags["t2"] = fit_t2;
      if (fit->count("--L")) flags["L"] = fit_l;
      json cfg = merged_config(json::object(), load_config_file(fit_common->config), flags);
      return cmd_fit(cfg, prepare_out_dir(fit_common->out));
    }
    if (report->parsed()) {
      json flags = json::object();
      if (report->count("--runs")) {
        json arr = json::array();
        std::stringstream ss(rep_runs);
        std::string item;
        while (std::getline(ss, item, ',')) arr.push_back(item);
        flags["runs"] = arr;
      }
      if (report->count("--t1")) flags["t1"] = rep_t1;
      if (report->count("--t2")) flags["t2"] = rep_t2;
      json cfg = merged_config(json::object(), load_config_file(report_common->config), flags);
      return cmd_report(cfg, prepare_out_dir(report_common->out));
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitOk;
}