#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "reso/experiments.hpp"
#include "reso/expr.hpp"
#include "reso/lowrank.hpp"
#include "reso/schema.hpp"

namespace reso {

/// JSON descriptors for phases, symbols, systems and runs. The sign arrays
/// order the legs by source argument: signs[0] acts on |eta| (the first
/// argument) and signs[1] on |xi - eta|; speeds are [c_out, c_eta, c_delta].

inline Phase phase_from_json(const nlohmann::json& j) {
  int se = -1, sd = 1;
  double c0 = 1.0, ce = 1.0, cd = 1.0;
  if (j.contains("signs")) {
    se = j["signs"].at(0).get<int>();
    sd = j["signs"].at(1).get<int>();
  }
  if (j.contains("speeds")) {
    c0 = j["speeds"].at(0).get<double>();
    ce = j["speeds"].at(1).get<double>();
    cd = j["speeds"].at(2).get<double>();
  }
  return Phase::from_signs(se, sd, c0, ce, cd);
}

inline BilinearSymbol symbol_from_json(const nlohmann::json& j, int dim = 3) {
  std::string kind = j.at("kind").get<std::string>();
  int se = -1, sd = 1;
  if (j.contains("signs")) {
    se = j["signs"].at(0).get<int>();
    sd = j["signs"].at(1).get<int>();
  }
  BilinearSymbol sym;
  if (kind == "Q0") {
    sym = null_form_q0(se, sd, dim);
  } else if (kind == "Q0i") {
    sym = null_form_q0i(j.value("i", 1), se, sd, dim);
  } else if (kind == "Qij") {
    sym = null_form_qij(j.value("i", 1), j.value("j", 2), dim);
  } else if (kind == "one") {
    sym = symbol_one();
  } else if (kind == "phi_over_eta") {
    sym = symbol_phi_over_eta(phase_from_json(j));
  } else if (kind == "eta_inverse") {
    sym = symbol_eta_inverse();
  } else if (kind == "cm_test") {
    sym = symbol_cm_test();
  } else if (kind == "expr") {
    bool sx = false, setta = false, sdelta = false;
    if (j.contains("singular_axes"))
      for (const auto& a : j["singular_axes"]) {
        std::string name = a.get<std::string>();
        if (name == "xi") sx = true;
        else if (name == "eta") setta = true;
        else if (name == "xi-eta") sdelta = true;
        else throw std::invalid_argument("unknown singular axis: " + name);
      }
    std::optional<Phase> phase;
    if (j.contains("signs") || j.contains("speeds")) phase = phase_from_json(j);
    sym = symbol_from_expression(j.at("expr").get<std::string>(), j.value("homogeneity", 0.0), sx,
                                 setta, sdelta, phase);
  } else {
    throw std::invalid_argument("unknown symbol kind: " + kind);
  }
  if (j.value("compress", false)) {
    CompressionConfig cc;
    cc.dim = dim;
    sym.separable = separable_approximation(sym, j.value("rank", 16),
                                            j.value("paraproduct_split", false), cc);
  }
  return sym;
}

/// Serializes a separable form as JSON listing the multiplier descriptors.
inline nlohmann::json form_to_json(const SeparableForm& form) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : form.terms)
    terms.push_back({{"out", t.out.descriptor},
                     {"first", t.first.descriptor},
                     {"second", t.second.descriptor},
                     {"regime", regime_name(t.regime)}});
  return {{"terms", terms}, {"sampled_error", form.sampled_error}};
}

inline GridPtr grid_from_json(const nlohmann::json& j) {
  return make_grid(j.at("d").get<int>(), j.at("N").get<int>(), j.at("L").get<double>());
}

inline SystemSpec system_from_json(const nlohmann::json& j, int dim) {
  SystemSpec sys;
  for (const auto& c : j.at("components"))
    sys.components.push_back({c.at("sign").get<int>(), c.at("speed").get<double>()});
  for (const auto& i : j.value("interactions", nlohmann::json::array())) {
    Interaction inter;
    inter.target = i.at("target").get<int>();
    const auto& sources = i.at("sources");
    inter.source1 = sources.at(0).at("component").get<int>();
    inter.conjugate1 = sources.at(0).value("conjugate", false);
    inter.source2 = sources.at(1).at("component").get<int>();
    inter.conjugate2 = sources.at(1).value("conjugate", false);
    inter.symbol = symbol_from_json(i.at("symbol"), dim);
    std::string route = i.value("route", inter.symbol.separable ? "separable" : "direct");
    inter.route = route == "direct" ? Route::direct : Route::separable;
    sys.interactions.push_back(std::move(inter));
  }
  sys.validate();
  return sys;
}

inline InitialDataConfig initial_data_from_json(const nlohmann::json& j, std::uint64_t run_seed) {
  InitialDataConfig d;
  d.epsilon = j.value("epsilon", d.epsilon);
  d.sigma = j.value("sigma", d.sigma);
  if (j.contains("carrier")) {
    const auto& c = j["carrier"];
    d.carrier = Vec(c.at(0).get<double>(), c.at(1).get<double>(),
                    c.size() > 2 ? c.at(2).get<double>() : 0.0);
  }
  d.band = j.value("band", d.band);
  d.modes = j.value("modes", d.modes);
  d.seed = j.value("seed", run_seed);
  d.sobolev_index = j.value("N", d.sobolev_index);
  return d;
}

inline XNormParams xnorm_from_json(const nlohmann::json& j) {
  if (j.is_null()) return XNormParams::desk_scale();
  return XNormParams(j.value("N", 5), j.value("eps", 0.01), j.value("gamma", 0.01),
                     j.value("a", 0.12), j.value("b", 0.03));
}

inline RunConfig run_config_from_json(const nlohmann::json& j) {
  RunConfig cfg;
  cfg.grid = grid_from_json(j.at("grid"));
  cfg.system = system_from_json(j.at("system"), cfg.grid->dim());
  std::uint64_t seed = j.at("seed").get<std::uint64_t>();
  cfg.data = initial_data_from_json(j.value("initial_data", nlohmann::json::object()), seed);
  const auto& integ = j.at("integrator");
  cfg.dt = integ.at("dt").get<double>();
  cfg.t_end = integ.at("t_end").get<double>();
  cfg.t_start = integ.value("t_start", 1.0);
  const auto& rep = j.value("reports", nlohmann::json::object());
  cfg.report_every = rep.value("every", 0.5);
  cfg.xnorm = xnorm_from_json(rep.value("xnorm", nlohmann::json()));
  if (j.contains("snapshots"))
    for (const auto& t : j["snapshots"].value("times", nlohmann::json::array()))
      cfg.snapshot_times.push_back(t.get<double>());
  cfg.force_direct_budget = j.value("force_direct", false);
  return cfg;
}

/// Published config schemas, one per CLI command that accepts a config.
inline const nlohmann::json& simulate_schema() {
  static const nlohmann::json schema = nlohmann::json::parse(R"JSON(
{
  "type": "object",
  "required": ["grid", "system", "integrator", "seed"],
  "properties": {
    "grid": {
      "type": "object", "required": ["d", "N", "L"],
      "properties": {
        "d": {"type": "integer", "minimum": 2, "maximum": 3},
        "N": {"type": "integer", "minimum": 8},
        "L": {"type": "number", "exclusiveMinimum": 0}
      }
    },
    "system": {
      "type": "object", "required": ["components"],
      "properties": {
        "components": {
          "type": "array", "minItems": 1,
          "items": {
            "type": "object", "required": ["sign", "speed"],
            "properties": {
              "sign": {"type": "integer", "enum": [-1, 1]},
              "speed": {"type": "number", "exclusiveMinimum": 0}
            }
          }
        },
        "interactions": {
          "type": "array",
          "items": {
            "type": "object", "required": ["target", "sources", "symbol"],
            "properties": {
              "target": {"type": "integer", "minimum": 0},
              "sources": {
                "type": "array", "minItems": 2, "maxItems": 2,
                "items": {
                  "type": "object", "required": ["component"],
                  "properties": {
                    "component": {"type": "integer", "minimum": 0},
                    "conjugate": {"type": "boolean"}
                  }
                }
              },
              "symbol": {"type": "object", "required": ["kind"]},
              "route": {"type": "string", "enum": ["direct", "separable"]}
            }
          }
        }
      }
    },
    "initial_data": {
      "type": "object",
      "properties": {
        "epsilon": {"type": "number", "exclusiveMinimum": 0},
        "sigma": {"type": "number", "exclusiveMinimum": 0},
        "carrier": {"type": "array", "minItems": 2, "maxItems": 3, "items": {"type": "number"}},
        "band": {"type": "number", "minimum": 0},
        "modes": {"type": "integer", "minimum": 1},
        "seed": {"type": "integer", "minimum": 0},
        "N": {"type": "integer", "minimum": 2}
      }
    },
    "integrator": {
      "type": "object", "required": ["dt", "t_end"],
      "properties": {
        "dt": {"type": "number", "exclusiveMinimum": 0},
        "t_end": {"type": "number", "exclusiveMinimum": 0},
        "t_start": {"type": "number", "exclusiveMinimum": 0}
      }
    },
    "reports": {
      "type": "object",
      "properties": {
        "every": {"type": "number", "exclusiveMinimum": 0},
        "xnorm": {"type": "object"}
      }
    },
    "snapshots": {
      "type": "object",
      "properties": {"times": {"type": "array", "items": {"type": "number"}}}
    },
    "seed": {"type": "integer", "minimum": 0},
    "force_direct": {"type": "boolean"}
  }
}
)JSON");
  return schema;
}

inline const nlohmann::json& propagate_schema() {
  static const nlohmann::json schema = nlohmann::json::parse(R"JSON(
{
  "type": "object",
  "required": ["grid", "times"],
  "properties": {
    "grid": {
      "type": "object", "required": ["d", "N", "L"],
      "properties": {
        "d": {"type": "integer", "minimum": 2, "maximum": 3},
        "N": {"type": "integer", "minimum": 8},
        "L": {"type": "number", "exclusiveMinimum": 0}
      }
    },
    "data": {"type": "object"},
    "speed": {"type": "number", "exclusiveMinimum": 0},
    "times": {
      "type": "object", "required": ["t1", "t2", "count"],
      "properties": {
        "t1": {"type": "number", "exclusiveMinimum": 0},
        "t2": {"type": "number", "exclusiveMinimum": 0},
        "count": {"type": "integer", "minimum": 2}
      }
    },
    "seed": {"type": "integer", "minimum": 0}
  }
}
)JSON");
  return schema;
}

inline const nlohmann::json& nullcheck_schema() {
  static const nlohmann::json schema = nlohmann::json::parse(R"JSON(
{
  "type": "object",
  "required": ["symbol"],
  "properties": {
    "symbol": {"type": "object", "required": ["kind"]},
    "phase": {"type": "object"},
    "samples": {"type": "integer", "minimum": 100},
    "shells": {"type": "integer", "minimum": 4, "maximum": 16},
    "dim": {"type": "integer", "minimum": 2, "maximum": 3}
  }
}
)JSON");
  return schema;
}

inline const nlohmann::json& resonance_schema() {
  static const nlohmann::json schema = nlohmann::json::parse(R"JSON(
{
  "type": "object",
  "required": ["case", "xi", "N"],
  "properties": {
    "case": {"type": "string", "enum": ["--", "++", "-+"]},
    "xi": {"type": "array", "minItems": 2, "maxItems": 3, "items": {"type": "number"}},
    "N": {"type": "integer", "minimum": 8},
    "L": {"type": "number", "exclusiveMinimum": 0},
    "d": {"type": "integer", "minimum": 2, "maximum": 3},
    "tol": {"type": "number", "exclusiveMinimum": 0},
    "speeds": {"type": "array", "minItems": 3, "maxItems": 3, "items": {"type": "number"}}
  }
}
)JSON");
  return schema;
}

inline const nlohmann::json& probe_schema() {
  static const nlohmann::json schema = nlohmann::json::parse(R"JSON(
{
  "type": "object",
  "required": ["symbol", "p", "q", "r", "trials", "N_list"],
  "properties": {
    "symbol": {"type": "object", "required": ["kind"]},
    "p": {"type": "number", "minimum": 1},
    "q": {"type": "number", "minimum": 1},
    "r": {"type": "number", "minimum": 1},
    "trials": {"type": "integer", "minimum": 1},
    "N_list": {"type": "array", "minItems": 1, "items": {"type": "integer", "minimum": 8}},
    "d": {"type": "integer", "minimum": 2, "maximum": 3},
    "L": {"type": "number", "exclusiveMinimum": 0},
    "seed": {"type": "integer", "minimum": 0}
  }
}
)JSON");
  return schema;
}

inline const nlohmann::json& fit_schema() {
  static const nlohmann::json schema = nlohmann::json::parse(R"JSON(
{
  "type": "object",
  "required": ["series", "key", "t1", "t2", "L"],
  "properties": {
    "series": {"type": "string"},
    "key": {"type": "string"},
    "t1": {"type": "number", "exclusiveMinimum": 0},
    "t2": {"type": "number", "exclusiveMinimum": 0},
    "L": {"type": "number", "exclusiveMinimum": 0}
  }
}
)JSON");
  return schema;
}

inline const nlohmann::json& report_schema() {
  static const nlohmann::json schema = nlohmann::json::parse(R"JSON(
{
  "type": "object",
  "required": ["runs"],
  "properties": {
    "runs": {"type": "array", "minItems": 1, "items": {"type": "string"}},
    "t1": {"type": "number", "exclusiveMinimum": 0},
    "t2": {"type": "number", "exclusiveMinimum": 0},
    "keys": {"type": "array", "items": {"type": "string"}}
  }
}
)JSON");
  return schema;
}

}  // namespace reso
