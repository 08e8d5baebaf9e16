#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>

#include "poscurves/builtins.hpp"
#include "poscurves/jsonio.hpp"
#include "poscurves/polar.hpp"
#include "poscurves/verify.hpp"

namespace {

using namespace poscurves;

constexpr int kExitBadInput = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitNoConvergence = 4;

Fan load_fan(const std::string& spec) {
  if (spec.rfind("builtin:", 0) == 0) return builtin_fan(spec.substr(8));
  return fan_from_json(read_json_file(spec));
}

ToricVariety load_variety(const std::string& spec) {
  return ToricVariety(load_fan(spec));
}

VecQ load_curve(const ToricVariety& x, const std::string& path) {
  return curve_from_json(x, read_json_file(path));
}

VecQ load_divisor(const ToricVariety& x, const std::string& path) {
  VecQ a = divisor_from_json(read_json_file(path));
  if (static_cast<int>(a.size()) == x.d) return divisor_rep(x, a);
  if (static_cast<int>(a.size()) != x.r)
    throw std::invalid_argument("divisor length matches neither rays nor classes");
  return a;
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

Json optional_vec(const std::optional<VecQ>& v) {
  return v ? vec_to_json(*v) : Json();
}

struct CurveArgs {
  std::string fan;
  std::string curve;
};

int run_fan_check(const std::string& spec) {
  Fan fan = load_fan(spec);
  auto report = fan_check(fan);
  Json out;
  out["ok"] = report.ok;
  out["smooth"] = report.smooth;
  out["problems"] = report.problems;
  if (report.ok) out["projective"] = ToricVariety(fan).projective;
  emit(out);
  return report.ok ? 0 : 1;
}

int run_cones(const std::string& spec) {
  auto x = load_variety(spec);
  Json out;
  out["dim"] = x.n;
  out["rays"] = x.r;
  out["picard_rank"] = x.d;
  out["smooth"] = x.smooth;
  out["projective"] = x.projective;
  out["eff_divisors"] = cone_to_json(x.eff_divisors);
  out["nef_divisors"] = cone_to_json(x.nef_divisors);
  out["mov_divisors"] = cone_to_json(x.mov_divisors);
  out["eff_curves"] = cone_to_json(x.eff_curves);
  out["mov_curves"] = cone_to_json(x.mov_curves);
  emit(out);
  return 0;
}

int run_polytope(const std::string& spec, const std::string& divisor_path,
                 const std::string& mode, const std::string& direction) {
  auto x = load_variety(spec);
  VecQ a = load_divisor(x, divisor_path);
  PolytopeQ p = x.divisor_polytope(a);
  if (mode == "mesh") {
    std::cout << polytope_mesh_text(p, x.n);
    return 0;
  }
  Json out;
  if (mode == "vol") {
    out["euclidean_volume"] = rational_to_json(p.volume());
    out["normalized_volume"] = rational_to_json(x.volume_divisor(a));
  } else if (mode == "facets") {
    out = polytope_to_json(p);
  } else if (mode == "support") {
    VecQ w = vec_from_json(Json::parse(direction));
    out["direction"] = vec_to_json(w);
    out["support"] = rational_to_json(p.support(w));
  }
  emit(out);
  return 0;
}

int run_minkowski(const CurveArgs& args, double tol, bool mesh) {
  auto x = load_variety(args.fan);
  VecQ alpha = load_curve(x, args.curve);
  VecQ t = x.relation_of(alpha);
  for (const auto& ti : t)
    if (ti < 0) throw PreconditionError("curve class is not movable");
  auto rep = solve_minkowski(weight_to_facet_data(x.fan, t), tol);
  if (!rep.converged)
    throw NonConvergenceError("facet-volume reconstruction did not converge");
  if (mesh) {
    std::cout << polytope_mesh_text(rep.polytope, x.n);
    return 0;
  }
  Json out;
  out["curve"] = curve_to_json(x, alpha);
  out["iterations"] = rep.iterations;
  out["residual"] = rep.residual;
  out["euclidean_volume"] = rep.polytope.volume();
  Json verts = Json::array();
  for (const auto& v : rep.polytope.vertices) {
    Json row = Json::array();
    for (double e : v) row.push_back(e);
    verts.push_back(std::move(row));
  }
  out["vertices"] = verts;
  emit(out);
  return 0;
}

int run_mcal(const CurveArgs& args) {
  auto x = load_variety(args.fan);
  VecQ alpha = load_curve(x, args.curve);
  auto m = mcal(x, alpha);
  Json out;
  out["curve"] = curve_to_json(x, alpha);
  out["value"] = m.value;
  out["exact_value"] = m.exact_value ? rational_to_json(*m.exact_value) : Json();
  out["movable"] = m.movable;
  out["degenerate"] = m.degenerate;
  out["witness_class"] = optional_vec(m.witness_class);
  out["witness_exact"] = m.witness_exact;
  out["degeneracy"] = optional_vec(m.degeneracy);
  emit(out);
  return 0;
}

int run_volhat(const CurveArgs& args) {
  auto x = load_variety(args.fan);
  VecQ alpha = load_curve(x, args.curve);
  auto r = volhat_full(x, alpha);
  Json out;
  out["curve"] = curve_to_json(x, alpha);
  out["value"] = r.value;
  out["inf_form"] = r.inf_value;
  out["sup_form"] = r.sup_value;
  out["feasible"] = r.feasible;
  out["boundary"] = r.boundary;
  emit(out);
  return 0;
}

int run_zariski(const CurveArgs& args) {
  auto x = load_variety(args.fan);
  VecQ alpha = load_curve(x, args.curve);
  auto z = zariski_decompose(x, alpha);
  Json out;
  out["curve"] = curve_to_json(x, alpha);
  out["volhat"] = z.volhat;
  out["direction_class"] = vec_to_json(z.direction_class);
  out["sigma"] = rational_to_json(z.sigma);
  out["scale"] = z.scale;
  out["positive_curve"] = vec_to_json(z.positive_curve);
  out["negative_curve"] = vec_to_json(z.negative);
  out["negative_psef_exact"] = z.negative_psef_exact;
  out["psef_residual"] = z.psef_residual;
  out["orthogonality_residual"] = z.orthogonality_residual;
  emit(out);
  return 0;
}

int run_cihood(const CurveArgs& args) {
  auto x = load_variety(args.fan);
  VecQ alpha = load_curve(x, args.curve);
  auto ci = ci_membership(x, alpha);
  Json out;
  out["curve"] = curve_to_json(x, alpha);
  out["member"] = ci.member;
  out["consistent"] = ci.consistent;
  out["volhat"] = ci.volhat_value;
  out["mcal"] = ci.mcal_value;
  out["witness_class"] = vec_to_json(ci.witness_class);
  out["witness_exact"] = ci.witness_exact;
  out["witness_nef_violation"] = ci.witness_violation;
  emit(out);
  return 0;
}

int run_morse(const CurveArgs& args, const std::string& beta_path) {
  auto x = load_variety(args.fan);
  VecQ alpha = load_curve(x, args.curve);
  VecQ beta = load_curve(x, beta_path);
  auto mb = morse_bound(x, alpha, beta);
  Json out;
  out["alpha"] = curve_to_json(x, alpha);
  out["beta"] = curve_to_json(x, beta);
  out["bound"] = mb.bound;
  out["exact_bound"] = mb.exact_bound ? rational_to_json(*mb.exact_bound) : Json();
  out["certified_big"] = mb.certified_big;
  out["exact"] = mb.exact;
  emit(out);
  return 0;
}

int run_pihat(const std::string& spec, const std::string& divisor_path) {
  auto x = load_variety(spec);
  VecQ a = load_divisor(x, divisor_path);
  auto r = pi_hat(x, a);
  Json out;
  out["class"] = vec_to_json(x.divisor_coords(a));
  out["value"] = vec_to_json(r.value);
  out["value_class"] = vec_to_json(r.value_class);
  out["coefficient"] = r.coefficient;
  out["nef_input"] = r.nef_input;
  emit(out);
  return 0;
}

int run_boundary(const CurveArgs& args) {
  auto x = load_variety(args.fan);
  VecQ alpha = load_curve(x, args.curve);
  auto cb = classify_boundary(x, alpha);
  Json out;
  out["curve"] = curve_to_json(x, alpha);
  out["positive_product"] = cb.positive_product;
  out["boundary_certified"] = cb.boundary_certified;
  out["witness_class"] = optional_vec(cb.witness_class);
  out["witness_exact"] = cb.witness_exact;
  out["orthogonal"] = optional_vec(cb.orthogonal);
  emit(out);
  return 0;
}

int run_verify(const std::string& spec, std::uint64_t seed, int count,
               const Tolerances& tol, const std::string& json_path) {
  auto x = load_variety(spec);
  std::string fan_id = spec.rfind("builtin:", 0) == 0 ? spec.substr(8) : spec;
  auto report = verify_suite(x, seed, count, tol, fan_id);
  Json out = report.to_json();
  emit(out);
  if (!json_path.empty()) write_json_file(json_path, out);
  return report.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"volume-type functions for curve classes on toric varieties"};
  app.require_subcommand(1);

  std::string fan_spec, divisor_path, direction = "[]", beta_path, json_path;
  CurveArgs args;
  double mink_tol = 1e-8;
  bool mesh = false;
  std::uint64_t seed = 0;
  int count = 200;
  Tolerances tol;

  auto add_curve_args = [&args](CLI::App* cmd) {
    cmd->add_option("--fan", args.fan, "fan file or builtin:NAME")->required();
    cmd->add_option("--curve", args.curve, "curve class JSON file")->required();
  };

  auto* fan_cmd = app.add_subcommand("fan", "fan inspection");
  auto* fan_check_cmd = fan_cmd->add_subcommand("check", "validate a fan description");
  fan_check_cmd->add_option("--fan", fan_spec, "fan file or builtin:NAME")->required();

  auto* cones_cmd = app.add_subcommand("cones", "dump the positivity cones");
  cones_cmd->add_option("--fan", fan_spec, "fan file or builtin:NAME")->required();

  auto* poly_cmd = app.add_subcommand("polytope", "divisor polytope queries");
  poly_cmd->add_option("--fan", fan_spec)->required();
  poly_cmd->add_option("--divisor", divisor_path, "divisor JSON file")->required();
  std::string poly_mode;
  poly_cmd->add_option("mode", poly_mode, "vol, facets, support or mesh")
      ->required()
      ->check(CLI::IsMember({"vol", "facets", "support", "mesh"}));
  poly_cmd->add_option("--direction", direction, "evaluation direction for support");

  auto* mink_cmd = app.add_subcommand("minkowski", "reconstruct the polytope of a movable class");
  add_curve_args(mink_cmd);
  mink_cmd->add_option("--tol", mink_tol, "solver tolerance");
  mink_cmd->add_flag("--mesh", mesh, "emit vertices as mesh text");

  auto* mcal_cmd = app.add_subcommand("mcal", "movable-cone volume of a curve class");
  add_curve_args(mcal_cmd);

  auto* volhat_cmd = app.add_subcommand("volhat", "polar-transform volume of a curve class");
  add_curve_args(volhat_cmd);

  auto* zariski_cmd = app.add_subcommand("zariski", "Zariski decomposition of a big curve class");
  add_curve_args(zariski_cmd);

  auto* ci_cmd = app.add_subcommand("cihood", "complete-intersection cone membership");
  add_curve_args(ci_cmd);

  auto* morse_cmd = app.add_subcommand("morse", "Morse-type bigness certificate for alpha - beta");
  add_curve_args(morse_cmd);
  morse_cmd->add_option("--beta", beta_path, "second curve class JSON file")->required();

  auto* pihat_cmd = app.add_subcommand("pihat", "projection of a big divisor class to the nef cone");
  pihat_cmd->add_option("--fan", fan_spec)->required();
  pihat_cmd->add_option("--divisor", divisor_path, "divisor JSON file")->required();

  auto* bdry_cmd = app.add_subcommand("boundary", "classify a movable boundary class");
  add_curve_args(bdry_cmd);

  auto* verify_cmd = app.add_subcommand("verify", "randomized verification suite");
  verify_cmd->add_option("--fan", fan_spec, "fan file or builtin:NAME")->required();
  verify_cmd->add_option("--seed", seed, "RNG seed");
  verify_cmd->add_option("--count", count, "samples per property");
  verify_cmd->add_option("--tol-solver", tol.solver, "iterative solver tolerance");
  verify_cmd->add_option("--tol-volume", tol.volume_eq, "volume comparison tolerance");
  verify_cmd->add_option("--tol-derivative", tol.derivative, "derivative comparison tolerance");
  verify_cmd->add_option("--json", json_path, "also write the report to a file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kExitBadInput;
  }

  try {
    if (fan_check_cmd->parsed()) return run_fan_check(fan_spec);
    if (cones_cmd->parsed()) return run_cones(fan_spec);
    if (poly_cmd->parsed()) return run_polytope(fan_spec, divisor_path, poly_mode, direction);
    if (mink_cmd->parsed()) return run_minkowski(args, mink_tol, mesh);
    if (mcal_cmd->parsed()) return run_mcal(args);
    if (volhat_cmd->parsed()) return run_volhat(args);
    if (zariski_cmd->parsed()) return run_zariski(args);
    if (ci_cmd->parsed()) return run_cihood(args);
    if (morse_cmd->parsed()) return run_morse(args, beta_path);
    if (pihat_cmd->parsed()) return run_pihat(fan_spec, divisor_path);
    if (bdry_cmd->parsed()) return run_boundary(args);
    if (verify_cmd->parsed()) return run_verify(fan_spec, seed, count, tol, json_path);
    std::cerr << "no subcommand selected\n";
    return kExitBadInput;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const NonConvergenceError& e) {
    std::cerr << "no convergence: " << e.what() << "\n";
    return kExitNoConvergence;
  } catch (const TheoremViolationError& e) {
    std::cerr << "theorem violation: " << e.what() << "\n";
    return kExitNoConvergence;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
}
