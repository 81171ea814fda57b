#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include "hogroup/error.hpp"
#include "hogroup/grid.hpp"
#include "hogroup/group_io.hpp"
#include "json.hpp"

namespace hogroup {

using nlohmann::json;

namespace {

void put_le(std::ostream& os, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, 8);
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(bits >> (8 * i));
  os.write(reinterpret_cast<const char*>(b), 8);
}

double get_le(std::istream& is) {
  unsigned char b[8];
  if (!is.read(reinterpret_cast<char*>(b), 8))
    throw Error("grid", "io", "truncated binary function file");
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  double v;
  std::memcpy(&v, &bits, 8);
  return v;
}

}  // namespace

void write_function(const SampledFunction& f, const std::string& path) {
  const Grid& g = f.grid();
  std::ofstream bin(path, std::ios::binary);
  if (!bin) throw Error("grid", "io", "cannot write " + path);
  for (std::size_t k = 0; k < f.size(); ++k) {
    put_le(bin, f[k]);
    if (f.is_complex()) put_le(bin, f.imag()[k]);
  }
  json side;
  side["group"] = json::parse(algebra_to_json(g.algebra()));
  std::vector<double> lo, hi;
  for (int i = 0; i < g.dim(); ++i) {
    lo.push_back(g.lo(i));
    hi.push_back(g.hi(i));
  }
  side["lo"] = lo;
  side["hi"] = hi;
  side["n"] = g.shape();
  side["complex"] = f.is_complex();
  std::ofstream js(path + ".json");
  if (!js) throw Error("grid", "io", "cannot write " + path + ".json");
  js << side.dump(2) << "\n";
}

SampledFunction read_function(const std::string& path) {
  std::ifstream js(path + ".json");
  if (!js) throw Error("grid", "io", "missing sidecar " + path + ".json");
  json side;
  try {
    side = json::parse(js);
  } catch (const json::exception& e) {
    throw Error("grid", "io", std::string("bad sidecar: ") + e.what());
  }
  GradedAlgebra alg = side.at("group").is_string()
                          ? resolve_algebra(side.at("group").get<std::string>())
                          : parse_algebra(side.at("group").dump());
  auto grid = std::make_shared<const Grid>(alg, side.at("lo").get<std::vector<double>>(),
                                           side.at("hi").get<std::vector<double>>(),
                                           side.at("n").get<std::vector<int>>());
  bool cplx = side.value("complex", false);
  std::ifstream bin(path, std::ios::binary);
  if (!bin) throw Error("grid", "io", "cannot open " + path);
  std::vector<double> re(grid->size()), im;
  if (cplx) im.resize(grid->size());
  for (std::size_t k = 0; k < grid->size(); ++k) {
    re[k] = get_le(bin);
    if (cplx) im[k] = get_le(bin);
  }
  return SampledFunction(grid, std::move(re), std::move(im));
}

}  // namespace hogroup
