#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "slicereg/json_io.hpp"
#include "slicereg/suite.hpp"

namespace {

using namespace slicereg;

constexpr int kExitPass = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("malformed JSON in " + path + ": " + e.what());
  }
  return j;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write file: " + path);
  out << text;
}

StructureKind parse_kind(const std::string& name) {
  if (name == "quaternion") return StructureKind::quaternion;
  if (name == "paravector") return StructureKind::paravector;
  throw ConfigError("unknown structure: " + name);
}

int run_verify(const RunConfig& config) {
  std::vector<CheckReport> reports = run_verification_suite(config);
  std::string text = suite_to_json(config, reports).dump(2) + "\n";
  write_text(config.out, text);
  for (const CheckReport& r : reports) {
    std::printf("[%s] %-28s residual=%.3e tol=%.1e samples=%lld\n", r.pass ? "PASS" : "FAIL",
                r.name.c_str(), r.max_residual, r.tolerance,
                static_cast<long long>(r.samples));
  }
  bool ok = all_pass(reports);
  std::printf("%s: %zu checks, report written to %s\n", ok ? "PASS" : "FAIL", reports.size(),
              config.out.c_str());
  return ok ? kExitPass : kExitCheckFailure;
}

SliceStructure structure_for(const std::string& kind, int n) {
  return parse_kind(kind) == StructureKind::quaternion ? SliceStructure::quaternion()
                                                       : SliceStructure::paravector(n);
}

int run_eval(const std::string& series_file, const std::vector<double>& point,
             bool representation, const std::string& axis_literal, double r_max) {
  SliceSeries f = series_from_json(load_json(series_file));
  const SliceStructure& s = f.structure();

  std::size_t want = s.kind() == StructureKind::quaternion
                         ? 4
                         : static_cast<std::size_t>(s.generators()) + 1;
  if (point.size() != want) {
    throw UsageError("point needs " + std::to_string(want) + " coordinates for this series");
  }
  Multivector x(s.context());
  x.set_coeff(0, point[0]);
  if (s.kind() == StructureKind::quaternion) {
    x.set_coeff(0b01u, point[1]);
    x.set_coeff(0b10u, point[2]);
    x.set_coeff(0b11u, point[3]);
  } else {
    for (int i = 0; i < s.generators(); ++i) x.set_coeff(1u << i, point[i + 1]);
  }
  if (x.norm() > r_max) {
    std::fprintf(stderr, "warning: |x| = %.6f exceeds r_max = %.2f; the truncation tail bound "
                         "no longer applies\n",
                 x.norm(), r_max);
  }

  Multivector value = representation
                          ? eval_representation(f, parse_axis_literal(axis_literal, s), x)
                          : eval(f, x);
  std::cout << to_json(value).dump(2) << "\n";
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"slicereg: slice regular/monogenic function calculus and verification"};
  app.require_subcommand(1);

  // verify ------------------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "run the verification suite and write a report");
  std::string structure = "quaternion";
  RunConfig config;
  verify->add_option("--structure", structure, "paravector or quaternion")
      ->check(CLI::IsMember({"paravector", "quaternion"}));
  verify->add_option("--n", config.n, "generator count for paravector structures");
  verify->add_option("--degree", config.degree, "catalog truncation degree");
  verify->add_option("--samples", config.points, "sample points per check");
  verify->add_option("--axes", config.axes, "sphere axes per point");
  verify->add_option("--seed", config.seed, "master seed");
  verify->add_option("--tol", config.tolerance, "identity-residual tolerance");
  verify->add_option("--rmax", config.r_max, "evaluation radius guarantee");
  verify->add_option("--out", config.out, "report path");

  // eval --------------------------------------------------------------------
  auto* eval_cmd = app.add_subcommand("eval", "evaluate a series file at a point");
  std::string series_file;
  std::vector<double> point;
  bool representation = false;
  std::string eval_axis;
  double eval_rmax = 0.95;
  eval_cmd->add_option("--series", series_file, "series JSON file")->required();
  eval_cmd->add_option("--point", point,
                       "coordinates: n+1 reals (paravector) or 4 reals (quaternion)")
      ->required()
      ->delimiter(',');
  eval_cmd->add_flag("--representation", representation,
                     "evaluate through the representation formula");
  eval_cmd->add_option("--axis", eval_axis, "slice axis for --representation");
  eval_cmd->add_option("--rmax", eval_rmax, "warn beyond this radius");

  // generate ----------------------------------------------------------------
  auto* gen = app.add_subcommand("generate", "write series files");
  gen->require_subcommand(1);

  auto* gk = gen->add_subcommand("koebe", "extremal rotation series");
  std::string gk_structure = "quaternion", gk_axis = "e1", gk_out = "koebe.json";
  int gk_n = 2, gk_degree = 256;
  double gk_theta = 0.0;
  gk->add_option("--structure", gk_structure)->check(CLI::IsMember({"paravector", "quaternion"}));
  gk->add_option("--n", gk_n);
  gk->add_option("--theta", gk_theta);
  gk->add_option("--axis", gk_axis);
  gk->add_option("--degree", gk_degree);
  gk->add_option("--out", gk_out);

  auto* gm = gen->add_subcommand("moebius", "ball automorphism series (quaternion)");
  std::string gm_a = "0", gm_u = "1", gm_out = "moebius.json";
  int gm_degree = 256;
  gm->add_option("--a", gm_a, "multivector literal, |a| < 1");
  gm->add_option("--u", gm_u, "unit multivector literal");
  gm->add_option("--degree", gm_degree);
  gm->add_option("--out", gm_out);

  auto* gc = gen->add_subcommand("catalog", "one catalog entry by name prefix");
  std::string gc_structure = "quaternion", gc_entry = "identity", gc_out = "catalog.json";
  int gc_n = 2, gc_degree = 128;
  gc->add_option("--structure", gc_structure)->check(CLI::IsMember({"paravector", "quaternion"}));
  gc->add_option("--n", gc_n);
  gc->add_option("--entry", gc_entry, "name prefix: identity, koebe, cayley, halfsquare, moebius");
  gc->add_option("--degree", gc_degree);
  gc->add_option("--out", gc_out);

  auto* ge = gen->add_subcommand("ext", "slice extension of complex coefficients");
  std::string ge_structure = "quaternion", ge_axis = "e1", ge_coeffs, ge_out = "ext.json";
  int ge_n = 2;
  ge->add_option("--structure", ge_structure)->check(CLI::IsMember({"paravector", "quaternion"}));
  ge->add_option("--n", ge_n);
  ge->add_option("--coeffs", ge_coeffs, "ComplexSeries JSON file")->required();
  ge->add_option("--axis", ge_axis);
  ge->add_option("--out", ge_out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*verify) {
      config.kind = parse_kind(structure);
      config.validate();
      return run_verify(config);
    }
    if (*eval_cmd) {
      if (representation && eval_axis.empty()) {
        throw UsageError("--representation needs --axis");
      }
      return run_eval(series_file, point, representation, eval_axis, eval_rmax);
    }
    if (*gk) {
      SliceStructure s = structure_for(gk_structure, gk_n);
      SliceSeries f = koebe_series(s, parse_axis_literal(gk_axis, s), gk_theta, gk_degree);
      write_text(gk_out, to_json(f).dump(2) + "\n");
      std::printf("wrote %s\n", gk_out.c_str());
      return kExitPass;
    }
    if (*gm) {
      ContextPtr ctx = make_context(2);
      SliceSeries f = moebius_series(parse_multivector_literal(gm_a, ctx),
                                     parse_multivector_literal(gm_u, ctx), gm_degree);
      write_text(gm_out, to_json(f).dump(2) + "\n");
      std::printf("wrote %s\n", gm_out.c_str());
      return kExitPass;
    }
    if (*gc) {
      SliceStructure s = structure_for(gc_structure, gc_n);
      for (const SeedFunction& f : seed_catalog(s, gc_degree)) {
        if (f.name.rfind(gc_entry, 0) == 0) {
          write_text(gc_out, to_json(f.series).dump(2) + "\n");
          std::printf("wrote %s (%s)\n", gc_out.c_str(), f.name.c_str());
          return kExitPass;
        }
      }
      throw UsageError("no catalog entry matches prefix: " + gc_entry);
    }
    if (*ge) {
      SliceStructure s = structure_for(ge_structure, ge_n);
      ComplexSeries F = complex_series_from_json(load_json(ge_coeffs));
      SliceSeries f = ext(F, parse_axis_literal(ge_axis, s), s);
      write_text(ge_out, to_json(f).dump(2) + "\n");
      std::printf("wrote %s\n", ge_out.c_str());
      return kExitPass;
    }
  } catch (const NumericalError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return kExitNumerical;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}
