#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "vortexloop/errors.hpp"
#include "vortexloop/flow.hpp"
#include "vortexloop/io.hpp"
#include "vortexloop/loop.hpp"
#include "vortexloop/verify.hpp"

namespace vl = vortexloop;
using vl::io::Json;

namespace {

constexpr const char* kUnits =
    "Units: angles and parameters in radians, areas in squared length units,\n"
    "circulations (partial vorticities) dimensionless, time T and dt in flow time units.\n"
    "Exit codes: 0 ok/equivalent, 1 not equivalent or suite failure, 2 parse/schema/\n"
    "validation error, 3 Morse violation, 4 profile mismatch, 5 flow failure.";

struct Config {
  double rel_tol = 1e-9;
  double morse_tol = 1e-8;
  bool auto_orient = false;
};

int exit_code(vl::ErrorKind kind) {
  using K = vl::ErrorKind;
  switch (kind) {
    case K::MorseViolation:
    case K::OddZeroCount:
    case K::AlternationViolation:
      return 3;
    case K::ProfileMismatch:
      return 4;
    case K::StepRejected:
    case K::ValidationFailed:
      return 5;
    default:
      return 2;
  }
}

vl::io::LoopLoadOptions load_options(const Config& c) {
  vl::io::LoopLoadOptions o;
  o.auto_orient = c.auto_orient;
  o.zero_options.morse_tol = c.morse_tol;
  return o;
}

/// Runs a loader, naming the file in any library error it raises.
template <class F>
auto from_file(const std::string& path, F&& load) {
  try {
    return load(vl::io::read_file(path));
  } catch (const vl::Error& e) {
    const std::string prefix = std::string(vl::to_string(e.kind())) + ": ";
    std::string what = e.what();
    if (what.rfind(prefix, 0) == 0) what.erase(0, prefix.size());
    if (what.find(path) != std::string::npos) throw;
    throw vl::Error(e.kind(), path + ": " + what);
  }
}

vl::DecoratedLoop load_loop(const std::string& path, const Config& c) {
  return from_file(path, [&](const Json& j) { return vl::io::loop_from_json(j, load_options(c)); });
}

/// A model given either as a bare form or as a loop (its decoration is used).
vl::CircleForm load_model_form(const std::string& path, const Config& c) {
  return from_file(path, [&](const Json& j) {
    if (j.is_object() && j.contains("samples") && j.contains("beta"))
      return vl::io::loop_from_json(j, load_options(c)).decoration();
    return vl::io::form_from_json(j, "model");
  });
}

void print(const Json& j) { std::cout << vl::io::dump(j); }

int cmd_invariants(const std::string& path, const Config& c) {
  const auto loop = load_loop(path, c);
  print(vl::io::to_json(vl::orbit_invariants(loop, c.rel_tol)));
  return 0;
}

int cmd_equiv(const std::string& a, const std::string& b, double tol, const Config& c) {
  const auto la = load_loop(a, c);
  const auto lb = load_loop(b, c);
  const auto v = vl::compare_orbits(la, lb, tol);
  print(vl::io::to_json(v));
  return v.equivalent ? 0 : 1;
}

int cmd_intertwine(const std::string& model_path, const std::string& target_path, int shift,
                   const std::string& out, const Config& c) {
  const auto model = load_model_form(model_path, c);
  const auto target = load_loop(target_path, c);
  vl::IntertwinerOptions opt;
  opt.zero_options.morse_tol = c.morse_tol;
  const auto psi = vl::intertwiner(model, target, shift, opt);
  const double residual = vl::intertwiner_residual(model, target.decoration(), psi, shift);
  Json j{{"schema", vl::io::kSchema},
         {"shift", shift},
         {"samples", psi.sample_count()},
         {"residual", residual}};
  if (!out.empty()) {
    vl::io::write_file(out, vl::io::to_json(psi));
    j["output"] = out;
  } else {
    j["diffeo"] = vl::io::to_json(psi);
  }
  print(j);
  return 0;
}

int cmd_flow(const std::string& loop_path, const std::string& ham_path, double T, double dt,
             const std::string& scheme, const std::string& out, const std::string& csv,
             const std::string& svg, const Config& c) {
  const auto loop = load_loop(loop_path, c);
  const auto h = from_file(ham_path, [](const Json& j) { return vl::io::hamiltonian_from_json(j); });
  vl::AdvectOptions opt;
  opt.T = T;
  opt.dt = dt;
  opt.scheme = vl::parse_scheme(scheme);
  opt.record_series = !csv.empty();
  const auto rep = vl::advect(loop, h, opt);
  Json j = vl::io::to_json(rep);
  j["scheme"] = vl::to_string(opt.scheme);
  j["T"] = T;
  j["dt"] = dt;
  if (!out.empty()) {
    vl::io::write_file(out, vl::io::to_json(rep.loop));
    j["output"] = out;
  }
  if (!csv.empty()) vl::io::write_text(csv, vl::io::series_csv(rep));
  if (!svg.empty()) vl::io::write_text(svg, vl::io::overlay_svg(loop, rep.loop));
  print(j);
  return 0;
}

int cmd_verify(const std::string& suite, std::optional<std::uint64_t> seed, bool inject,
               const std::string& out) {
  vl::VerifyOptions opt;
  opt.suite = suite;
  if (seed) {
    opt.seed = *seed;
  } else if (const char* env = std::getenv("VORTEXLOOP_SEED"); env && *env) {
    try {
      opt.seed = std::stoull(env);
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string("VORTEXLOOP_SEED is not an integer: ") + env);
    }
  }
  opt.inject_volume_form = inject;
  const auto rep = vl::run_verify(opt);
  const auto j = vl::to_json(rep);
  if (!out.empty()) vl::io::write_file(out, j);
  print(j);
  return rep.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vortexloop: invariants, equivalence, intertwiners and flows of vortex loops"};
  app.footer(kUnits);
  app.require_subcommand(1);

  Config cfg;
  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--rel-tol", cfg.rel_tol, "relative tolerance for vorticity symmetry")
        ->check(CLI::PositiveNumber);
    sub->add_option("--morse-tol", cfg.morse_tol,
                    "a zero is degenerate when |beta'| < morse-tol * max|beta'|")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--auto-orient", cfg.auto_orient,
                  "reverse clockwise loops (and their decoration) instead of rejecting them");
  };

  std::string a, b, out, csv, svg, scheme = "rk4", suite = "all";
  double tol = 1e-6, T = 1.0, dt = 1e-3;
  int shift = 0;
  std::optional<std::uint64_t> seed;
  bool inject = false;

  auto* inv = app.add_subcommand("invariants", "print enclosed area, partial vorticities, k and ell");
  inv->add_option("loop", a, "decorated loop JSON")->required();
  add_common(inv);

  auto* eq = app.add_subcommand("equiv", "test coadjoint-orbit equivalence of two loops");
  eq->add_option("loop_a", a, "decorated loop JSON")->required();
  eq->add_option("loop_b", b, "decorated loop JSON")->required();
  eq->add_option("--tol", tol, "relative tolerance for area and profile matching")
      ->check(CLI::PositiveNumber);
  add_common(eq);

  auto* it = app.add_subcommand("intertwine", "build the reparametrization carrying a model form "
                                              "onto a target loop's decoration");
  it->add_option("model", a, "model CircleForm JSON (or a loop whose decoration is used)")
      ->required();
  it->add_option("target", b, "target decorated loop JSON")->required();
  it->add_option("--shift", shift, "model segment i lands on target segment i + shift");
  it->add_option("-o,--output", out, "write the circle diffeomorphism JSON here");
  add_common(it);

  auto* fl = app.add_subcommand("flow", "advect a loop along a compactly supported Hamiltonian flow");
  fl->add_option("loop", a, "decorated loop JSON")->required();
  fl->add_option("hamiltonian", b, "Hamiltonian JSON ({\"bumps\": [...]})")->required();
  fl->add_option("-T,--time", T, "final time (>= 0)");
  fl->add_option("--dt", dt, "time step (> 0, <= T)");
  fl->add_option("--scheme", scheme, "rk4 | implicit-midpoint")
      ->check(CLI::IsMember({"rk4", "implicit-midpoint"}));
  fl->add_option("-o,--output", out, "write the evolved loop JSON here");
  fl->add_option("--emit-csv", csv, "write per-step invariants as CSV");
  fl->add_option("--emit-svg", svg, "write an SVG overlay of initial and final curves");
  add_common(fl);

  auto* ve = app.add_subcommand("verify", "run property suites and print a JSON report");
  ve->add_option("--suite", suite, "forms | symplectic | flow | all")
      ->check(CLI::IsMember({"forms", "symplectic", "flow", "all"}));
  ve->add_option("--seed", seed, "random seed (fallback: $VORTEXLOOP_SEED, then 7)");
  ve->add_flag("--inject-volume-form", inject,
               "use the volume form dt in the nondegeneracy check (expected to fail)");
  ve->add_option("-o,--output", out, "also write the report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*inv) return cmd_invariants(a, cfg);
    if (*eq) return cmd_equiv(a, b, tol, cfg);
    if (*it) return cmd_intertwine(a, b, shift, out, cfg);
    if (*fl) return cmd_flow(a, b, T, dt, scheme, out, csv, svg, cfg);
    if (*ve) return cmd_verify(suite, seed, inject, out);
  } catch (const vl::Error& e) {
    std::cerr << "vortexloop: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "vortexloop: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
