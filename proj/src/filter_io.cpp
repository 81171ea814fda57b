#include "hogroup/filter_io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

#include "json.hpp"

#include "hogroup/error.hpp"

namespace hogroup {

using nlohmann::ordered_json;

OperatorPtr make_operator(const std::string& name, GridPtr grid) {
  if (name == "sqrt_laplacian") return SymbolOperator::sqrt_laplacian(grid);
  if (name == "laplacian") return SymbolOperator::laplacian(grid);
  if (name == "P") return SymbolOperator::singular_integral_P(grid);
  if (name == "rockland") return SymbolOperator::rockland(grid);
  if (name == "sublaplacian") return assemble_sublaplacian(grid);
  if (name == "P_matrix")
    return assemble_P(grid, QuasiNorm::canonical(grid->algebra()), 2 * grid->max_spacing());
  throw Error("spectral", "unknown_operator", "no operator named " + name);
}

Multiplier make_multiplier(const FilterSpec& spec) {
  const Bump b(spec.bump[0], spec.bump[1], spec.bump[2], spec.bump[3]);
  if (spec.kind == "discrete") return Multiplier::discrete(b);
  if (spec.kind == "continuous") return Multiplier::continuous(b);
  throw Error("spectral", "unknown_kind", "filter kind must be discrete or continuous");
}

CalderonFilter build_filter(const FilterSpec& spec, GridPtr grid) {
  return build_filter(make_operator(spec.op, std::move(grid)), make_multiplier(spec));
}

void write_filter_bundle(const FilterSpec& spec, const CalderonFilter& filter,
                         const std::string& dir) {
  std::filesystem::create_directories(dir);
  ordered_json j;
  j["operator"] = spec.op;
  j["kind"] = spec.kind;
  j["bump"] = spec.bump;
  j["degree"] = filter.op->degree();
  std::vector<double> ls, ms;
  for (int i = 0; i <= 256; ++i) {
    const double l = spec.bump[0] * std::pow(spec.bump[3] / spec.bump[0], i / 256.0);
    ls.push_back(l);
    ms.push_back(filter.m(l));
  }
  j["samples"] = {{"lambda", ls}, {"m", ms}};
  std::ofstream os(dir + "/filter.json");
  if (!os) throw Error("spectral", "io", "cannot write " + dir + "/filter.json");
  os << j.dump(2) << "\n";
  write_function(filter.kernel, dir + "/kernel.bin");
}

FilterBundle read_filter_bundle(const std::string& dir) {
  std::ifstream is(dir + "/filter.json");
  if (!is) throw Error("spectral", "io", "missing " + dir + "/filter.json");
  ordered_json j;
  try {
    j = ordered_json::parse(is);
  } catch (const ordered_json::exception& e) {
    throw Error("spectral", "io", std::string("bad filter.json: ") + e.what());
  }
  FilterSpec spec;
  spec.op = j.at("operator").get<std::string>();
  spec.kind = j.at("kind").get<std::string>();
  spec.bump = j.at("bump").get<std::array<double, 4>>();
  SampledFunction kernel = read_function(dir + "/kernel.bin");
  auto op = make_operator(spec.op, kernel.grid_ptr());
  return {spec, CalderonFilter{make_multiplier(spec), op, std::move(kernel)}};
}

}  // namespace hogroup
