#pragma once

#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "reso/field.hpp"

namespace reso {

/// Field snapshots: raw little-endian complex array in row-major FFT index
/// order, plus a JSON sidecar describing the grid and tags. <path>.bin holds
/// the data and <path>.json the header.
inline void write_snapshot(const SpectralField& f, const std::string& path, double time = 0.0,
                           bool single_precision = false) {
  const Grid& g = f.grid();
  nlohmann::json header = {
      {"d", g.dim()},
      {"N", g.points_per_axis()},
      {"L", g.box_length()},
      {"representation", f.representation() == Representation::frequency ? "frequency" : "physical"},
      {"role", f.role() == Role::profile ? "profile" : "solution"},
      {"time", time},
      {"dtype", single_precision ? "complex64" : "complex128"},
      {"order", "row-major"},
      {"endianness", "little"},
  };
  std::ofstream hs(path + ".json");
  if (!hs) throw std::runtime_error("write_snapshot: cannot open " + path + ".json");
  hs << header.dump(2) << "\n";

  std::ofstream bs(path + ".bin", std::ios::binary);
  if (!bs) throw std::runtime_error("write_snapshot: cannot open " + path + ".bin");
  if (single_precision) {
    for (const auto& v : f.values()) {
      float re = static_cast<float>(v.real()), im = static_cast<float>(v.imag());
      bs.write(reinterpret_cast<const char*>(&re), sizeof(float));
      bs.write(reinterpret_cast<const char*>(&im), sizeof(float));
    }
  } else {
    bs.write(reinterpret_cast<const char*>(f.values().data()),
             static_cast<std::streamsize>(sizeof(Complex) * f.size()));
  }
}

struct Snapshot {
  SpectralField field;
  double time;
};

inline Snapshot read_snapshot(const std::string& path) {
  std::ifstream hs(path + ".json");
  if (!hs) throw std::runtime_error("read_snapshot: cannot open " + path + ".json");
  nlohmann::json header = nlohmann::json::parse(hs);
  if (header.value("endianness", "little") != std::string("little"))
    throw std::runtime_error("read_snapshot: unsupported endianness");
  GridPtr g = make_grid(header.at("d").get<int>(), header.at("N").get<int>(),
                        header.at("L").get<double>());
  Representation rep = header.at("representation").get<std::string>() == "frequency"
                           ? Representation::frequency
                           : Representation::physical;
  Role role = header.at("role").get<std::string>() == "profile" ? Role::profile : Role::solution;
  std::string dtype = header.value("dtype", "complex128");

  std::ifstream bs(path + ".bin", std::ios::binary);
  if (!bs) throw std::runtime_error("read_snapshot: cannot open " + path + ".bin");
  std::vector<Complex> values(g->size());
  if (dtype == "complex64") {
    for (auto& v : values) {
      float re, im;
      bs.read(reinterpret_cast<char*>(&re), sizeof(float));
      bs.read(reinterpret_cast<char*>(&im), sizeof(float));
      v = Complex(re, im);
    }
  } else if (dtype == "complex128") {
    bs.read(reinterpret_cast<char*>(values.data()),
            static_cast<std::streamsize>(sizeof(Complex) * values.size()));
  } else {
    throw std::runtime_error("read_snapshot: unknown dtype " + dtype);
  }
  if (!bs) throw std::runtime_error("read_snapshot: data file too short for grid");
  return Snapshot{SpectralField(g, std::move(values), rep, role), header.value("time", 0.0)};
}

}  // namespace reso
