#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hogroup/error.hpp"
#include "hogroup/filter_io.hpp"
#include "hogroup/group_io.hpp"
#include "hogroup/lpnorms.hpp"
#include "hogroup/suites.hpp"
#include "hogroup/testfamily.hpp"
#include "hogroup/wavelet.hpp"

using namespace hogroup;
using nlohmann::ordered_json;

namespace {

// Exit statuses: 0 ok, 1 a check failed, 2 invalid input.
constexpr int kFailed = 1, kInvalid = 2;

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(path);
  if (!os) throw Error("cli", "io", "cannot write " + path);
  os << text;
}

ordered_json num(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

double parse_exponent(const std::string& s) {
  if (s == "inf" || s == "infinity") return kInf;
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error("cli", "bad_number", "cannot parse '" + s + "'");
}

GridPtr make_grid(const std::string& group, std::vector<double> half, std::vector<int> n) {
  GradedAlgebra g = resolve_algebra(group);
  if (int(half.size()) == 1 && g.dim() > 1) half.assign(g.dim(), half[0]);
  if (int(n.size()) == 1 && g.dim() > 1) n.assign(g.dim(), n[0]);
  if (int(half.size()) != g.dim() || int(n.size()) != g.dim())
    throw Error("cli", "grid_shape", "--half-width and --n need one entry per coordinate");
  return std::make_shared<const Grid>(Grid::centered(std::move(g), half, n));
}

// ---- group info -------------------------------------------------------------

int group_info(const std::string& group, std::uint64_t seed, const std::string& out) {
  const GradedAlgebra g = resolve_algebra(group);
  QuasiNorm qn = QuasiNorm::canonical(g);
  const GammaEstimate ge = estimate_gamma(g, qn, seed);
  std::mt19937_64 rng(seed);
  double assoc = 0.0, autom = 0.0;
  for (int s = 0; s < 200; ++s) {
    GroupPoint x = random_point(g, rng), y = random_point(g, rng), z = random_point(g, rng);
    GroupPoint l = g.multiply(g.multiply(x, y), z), r = g.multiply(x, g.multiply(y, z));
    GroupPoint a = g.dilate(g.multiply(x, y), 0.7), b = g.multiply(g.dilate(x, 0.7), g.dilate(y, 0.7));
    for (int i = 0; i < g.dim(); ++i) {
      assoc = std::max(assoc, std::fabs(l[i] - r[i]) / std::max(1.0, std::fabs(l[i])));
      autom = std::max(autom, std::fabs(a[i] - b[i]) / std::max(1.0, std::fabs(a[i])));
    }
  }
  const bool ok = assoc <= 1e-10 && autom <= 1e-10;
  ordered_json j;
  j["name"] = g.name();
  j["dim"] = g.dim();
  j["weights"] = g.weights();
  j["Q"] = g.homogeneous_dimension();
  j["step"] = g.step();
  j["stratified"] = g.is_stratified();
  j["abelian"] = g.is_abelian();
  j["gamma"] = ge.gamma;
  j["seed"] = seed;
  j["checks"] = {{"associativity", assoc}, {"dilation_automorphism", autom}};
  j["valid"] = ok;
  emit(j.dump(2) + "\n", out);
  return ok ? 0 : kFailed;
}

// ---- function make ----------------------------------------------------------

int function_make(const GridPtr& grid, const std::string& kind, double width, double center,
                  const std::string& out) {
  if (out.empty()) throw Error("cli", "missing_output", "--output is required");
  auto qn = QuasiNorm::canonical(grid->algebra());
  auto shifted = [&](const GroupPoint& x) {
    GroupPoint y = x;
    y[0] -= center;
    return qn(y) / width;
  };
  SampledFunction f = SampledFunction::zeros(grid);
  if (kind == "mexican_hat")
    f = SampledFunction::from(grid, [&](const GroupPoint& x) {
      double u = shifted(x);
      return (1 - u * u) * std::exp(-u * u / 2);
    });
  else if (kind == "gauss")
    f = SampledFunction::from(grid, [&](const GroupPoint& x) {
      double u = shifted(x);
      return std::exp(-u * u / 2);
    });
  else if (kind == "indicator")
    f = SampledFunction::from(grid, [&](const GroupPoint& x) { return shifted(x) < 1 ? 1.0 : 0.0; });
  else if (kind.rfind("family:", 0) == 0) {
    const std::string name = kind.substr(7);
    bool found = false;
    for (auto& t : test_family(grid))
      if (t.name == name) f = t.f, found = true;
    if (!found) throw Error("cli", "unknown_function", "no family member " + name);
  } else {
    throw Error("cli", "unknown_function", "kind must be mexican_hat, gauss, indicator or family:<name>");
  }
  write_function(f, out);
  return 0;
}

// ---- filters build ----------------------------------------------------------

int filters_build(const GridPtr& grid, const FilterSpec& spec, const std::string& out) {
  if (out.empty()) throw Error("cli", "missing_output", "--output is required");
  write_filter_bundle(spec, build_filter(spec, grid), out);
  return 0;
}

// ---- norm compute -----------------------------------------------------------

struct NormArgs {
  std::string space = "besov", flavor = "discrete", filter, input, out;
  double sigma = 0.0, a = 0.0;
  std::string p = "2", q = "2";
  int K = 8;
  bool have_j = false;
  int j_min = 0, j_max = 0;
};

int norm_compute(const NormArgs& A) {
  const NormParams np{A.sigma, parse_exponent(A.p), parse_exponent(A.q), A.a};
  const Space space = A.space == "besov" ? Space::Besov
                      : A.space == "tl"  ? Space::TL
                                         : throw Error("cli", "unknown_space", "--space must be besov or tl");
  Flavor flavor;
  if (A.flavor == "discrete" || A.flavor == "cont-plain") flavor = Flavor::Plain;
  else if (A.flavor == "cont-peetre") flavor = Flavor::Peetre;
  else if (A.flavor == "cont-peetre2") flavor = Flavor::PeetreStar;
  else throw Error("cli", "unknown_flavor", "--flavor must be discrete, cont-plain, cont-peetre or cont-peetre2");
  FilterBundle b = read_filter_bundle(A.filter);
  SampledFunction f = read_function(A.input);
  if (!(f.grid() == *b.filter.op->grid()))
    throw Error("cli", "grid_mismatch", "input and filter live on different grids");
  const Grid& G = f.grid();
  validate(np, space, G.algebra().homogeneous_dimension(), flavor);
  auto [j0, j1] = spectral_j_range(*b.filter.op);
  if (A.have_j) j0 = A.j_min, j1 = A.j_max;
  const bool tl_inf = space == Space::TL && std::isinf(np.p);
  std::vector<std::string> flags;
  NormValue v;
  if (A.flavor == "discrete") {
    LPDecomposition dec = lp_decompose(f, b.filter, j0, j1);
    for (bool r : dec.resolved)
      if (!r) {
        flags.push_back("unresolved_scales");
        break;
      }
    if (space == Space::Besov) v = besov_norm(dec, np);
    else if (tl_inf) v = tl_infinity_norm(dec, np, DyadicBallSystem(f.grid_ptr(), QuasiNorm::canonical(G.algebra()), -j1, -j0));
    else v = tl_norm(dec, np);
  } else {
    CalderonFilter c = b.filter;
    if (c.m.kind() != Multiplier::Kind::Continuous) {
      c = build_filter(c.op, c.m.as_continuous());
      flags.push_back("continuous_from_discrete");
    }
    ContinuousLP clp = lp_decompose_continuous(f, c, std::ldexp(1.0, -j1), std::ldexp(1.0, -j0), A.K);
    if (flavor != Flavor::Plain) clp = peetre_envelopes(clp, np.a, flavor == Flavor::PeetreStar);
    if (space == Space::Besov) v = continuous_besov_norm(clp, np);
    else if (tl_inf) v = continuous_tl_infinity(clp, np, QuasiNorm::canonical(G.algebra()));
    else v = continuous_tl_norm(clp, np);
  }
  if (v.tail_fraction > 0.1) flags.push_back("heavy_tail");
  ordered_json j;
  j["value"] = num(v.value);
  j["tail_fraction"] = num(v.tail_fraction);
  j["flags"] = flags;
  j["j_range"] = {j0, j1};
  emit(j.dump(2) + "\n", A.out);
  return 0;
}

// ---- frame run --------------------------------------------------------------

struct FrameArgs {
  double beta = 0.25, tol = 1e-4;
  int octaves = 12, max_iter = 200;
  bool have_j_max = false;
  int j_max = 0;
  std::uint64_t seed = 1;
  std::string psi, input, out;
};

int frame_run(const FrameArgs& A) {
  FilterBundle b = read_filter_bundle(A.psi);
  SampledFunction f = read_function(A.input);
  if (!(f.grid() == *b.filter.op->grid()))
    throw Error("cli", "grid_mismatch", "input and psi live on different grids");
  if (A.octaves < 1) throw Error("cli", "bad_octaves", "--octaves must be positive");
  int j_max = A.j_max;
  if (!A.have_j_max) j_max = int(std::floor(std::log2(A.beta / f.grid().max_spacing()) + 1e-9));
  FrameSpec spec{b.filter, A.beta, j_max - A.octaves + 1, j_max};
  SampledFunction fb = frame_band(spec, f);
  DualSolve d = frame_dual_solve(spec, fb, A.tol, A.max_iter);
  SampledFunction rec = frame_reconstruct(spec, d.coefs);
  const double err = lp_norm(rec - fb, 2.0) / lp_norm(fb, 2.0);
  // Rayleigh quotients over the band-projected input and seeded noise.
  std::vector<SampledFunction> fs{fb};
  std::mt19937_64 rng(A.seed);
  std::normal_distribution<double> N;
  for (int k = 0; k < 4; ++k) {
    SampledFunction w = SampledFunction::zeros(f.grid_ptr());
    for (std::size_t p = 0; p < w.size(); ++p) w[p] = N(rng);
    fs.push_back(frame_band(spec, w));
  }
  FrameBounds fr = frame_rayleigh(spec, fs);
  ordered_json j;
  j["frame_ratio"] = num(fr.ratio());
  j["recon_error"] = num(err);
  j["iterations"] = d.iterations;
  j["converged"] = d.converged;
  j["j_range"] = {spec.j_min, spec.j_max};
  j["frame_size"] = frame_size(spec);
  emit(j.dump(2) + "\n", A.out);
  return 0;
}

// ---- verify -----------------------------------------------------------------

int verify(const std::string& suite, std::uint64_t seed, const std::string& out,
           const std::string& csv) {
  SuiteResult r = run_suite(suite, {seed});
  emit(r.to_json(), out);
  if (!csv.empty()) emit(r.to_csv(), csv);
  if (const SuiteCheck* c = r.first_failure()) {
    std::cerr << "FAIL " << suite << ": module " << c->module << ", invariant " << c->invariant
              << " (value " << c->value << ", limit " << c->limit << ")\n";
    return kFailed;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Besov and Triebel-Lizorkin norms on graded groups"};
  app.require_subcommand(1);

  std::uint64_t seed = 1;
  std::string out;

  auto* grp = app.add_subcommand("group", "group files");
  grp->require_subcommand(1);
  auto* info = grp->add_subcommand("info", "structure constants, Q, step and gamma");
  std::string group_name;
  info->add_option("group", group_name, "bundled name or group file")->required();
  info->add_option("--seed", seed);
  info->add_option("--output", out);

  std::string gname = "R", kind = "mexican_hat";
  std::vector<double> half{64.0};
  std::vector<int> npts{4096};
  double width = 1.0, center = 0.0;
  auto add_grid = [&](CLI::App* c) {
    c->add_option("--group", gname);
    c->add_option("--half-width", half)->delimiter(',');
    c->add_option("--n", npts)->delimiter(',');
  };

  auto* fn = app.add_subcommand("function", "sampled functions");
  fn->require_subcommand(1);
  auto* make = fn->add_subcommand("make", "sample a test function");
  add_grid(make);
  make->add_option("--kind", kind, "mexican_hat, gauss, indicator or family:<name>");
  make->add_option("--width", width);
  make->add_option("--center", center);
  make->add_option("--output", out)->required();

  auto* fil = app.add_subcommand("filters", "Calderon filter bundles");
  fil->require_subcommand(1);
  auto* build = fil->add_subcommand("build", "build and store a filter bundle");
  add_grid(build);
  FilterSpec spec;
  std::string grid_from;
  std::vector<double> bump;
  build->add_option("--input", grid_from, "take the grid from this function file");
  build->add_option("--op", spec.op);
  build->add_option("--kind", spec.kind);
  build->add_option("--bump", bump, "a,b,c,d")->delimiter(',')->expected(4);
  build->add_option("--output", out)->required();

  auto* nrm = app.add_subcommand("norm", "norms");
  nrm->require_subcommand(1);
  auto* compute = nrm->add_subcommand("compute", "Besov or TL norm of a stored function");
  NormArgs na;
  compute->add_option("--space", na.space);
  compute->add_option("--sigma", na.sigma);
  compute->add_option("--p", na.p);
  compute->add_option("--q", na.q);
  compute->add_option("--a", na.a);
  compute->add_option("--flavor", na.flavor);
  compute->add_option("--filter", na.filter)->required();
  compute->add_option("--input", na.input)->required();
  compute->add_option("--K", na.K, "nodes per octave for the continuous flavors");
  auto* jmin = compute->add_option("--j-min", na.j_min);
  auto* jmax = compute->add_option("--j-max", na.j_max);
  jmin->needs(jmax);
  jmax->needs(jmin);
  compute->add_option("--output", na.out);

  auto* frm = app.add_subcommand("frame", "wavelet frames");
  frm->require_subcommand(1);
  auto* frun = frm->add_subcommand("run", "dual-frame reconstruction and frame bounds");
  FrameArgs fa;
  frun->add_option("--beta", fa.beta);
  frun->add_option("--octaves", fa.octaves);
  auto* fj = frun->add_option("--j-max", fa.j_max);
  frun->add_option("--tol", fa.tol);
  frun->add_option("--max-iter", fa.max_iter);
  frun->add_option("--seed", fa.seed);
  frun->add_option("--psi", fa.psi)->required();
  frun->add_option("--input", fa.input)->required();
  frun->add_option("--output", fa.out);

  auto* ver = app.add_subcommand("verify", "run a verification suite");
  std::string suite, csv;
  ver->add_option("suite", suite, "one of group, taylor, calderon, aoe, maximal, dyadic, equivalence, wavelet, identifications, riesz")->required();
  ver->add_option("--seed", seed);
  ver->add_option("--output", out, "JSON report path (default stdout)");
  ver->add_option("--csv", csv, "CSV table path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kInvalid;
  }

  try {
    if (info->parsed()) return group_info(group_name, seed, out);
    if (make->parsed()) return function_make(make_grid(gname, half, npts), kind, width, center, out);
    if (build->parsed()) {
      if (!bump.empty()) std::copy(bump.begin(), bump.end(), spec.bump.begin());
      GridPtr g = grid_from.empty() ? make_grid(gname, half, npts) : read_function(grid_from).grid_ptr();
      return filters_build(g, spec, out);
    }
    if (compute->parsed()) {
      na.have_j = jmin->count() > 0;
      return norm_compute(na);
    }
    if (frun->parsed()) {
      fa.have_j_max = fj->count() > 0;
      return frame_run(fa);
    }
    if (ver->parsed()) return verify(suite, seed, out, csv);
  } catch (const Error& e) {
    ordered_json j;
    j["error"] = {{"module", e.module()}, {"invariant", e.code()}, {"detail", e.what()}};
    std::cout << j.dump(2) << "\n";
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  }
  return 0;
}
