// Acceptance suite: one line per criterion, nonzero exit on any failure.
// argv[1] must point at the CLI binary (used by the determinism criterion).

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "slicereg/checks.hpp"
#include "slicereg/json_io.hpp"
#include "slicereg/rng.hpp"
#include "slicereg/sampling.hpp"
#include "slicereg/suite.hpp"

using namespace slicereg;

namespace {

int g_failures = 0;

void criterion(int number, const std::string& name, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %02d: %s (%s)\n", pass ? "PASS" : "FAIL", number, name.c_str(),
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

const std::uint64_t kSeed = 42;

// --- criterion 1 & 2: algebra axioms and norm multiplicativity -------------

void run_algebra() {
  double worst = 0.0;
  bool ok = true;
  for (int n : {2, 3, 4, 5}) {
    CheckReport r = check_algebra_axioms(make_context(n), 1000, kSeed + n, 1e-12);
    ok = ok && r.pass;
    worst = std::max(worst, r.max_residual);
  }
  CheckReport zd = check_zero_divisor_witness();
  ok = ok && zd.pass;
  criterion(1, "algebra axioms + zero divisor witness", ok, "worst residual " + fmt(worst));

  worst = 0.0;
  ok = true;
  for (int n : {2, 3, 4, 5}) {
    CheckReport r = check_norm_multiplicativity(make_context(n), 1000, kSeed + n, 1e-12);
    ok = ok && r.pass;
    worst = std::max(worst, r.max_residual);
  }
  ok = ok && zd.pass;  // |ab| = 0 vs |a||b| = 2 is part of the witness
  criterion(2, "norm multiplicativity with paravector factor", ok,
            "worst residual " + fmt(worst));
}

// --- criterion 3: general modulus identity ----------------------------------

void run_identity_general() {
  bool ok = true;
  double worst = 0.0;
  const SliceStructure structures[] = {SliceStructure::paravector(3),
                                       SliceStructure::paravector(4),
                                       SliceStructure::quaternion()};
  for (const SliceStructure& s : structures) {
    for (int i = 0; i < 100; ++i) {
      SliceSeries f = random_series(s, 16, kSeed + 100, i, 0.8);
      Multivector axis = s.sphere_sample_one(stream_id("acc_identity_axis", kSeed), i);
      CheckReport r = check_identity_general(f, axis, 50, 20, kSeed + i, 1e-9, 1e-12);
      ok = ok && r.pass;
      worst = std::max(worst, r.max_residual);
    }
  }
  criterion(3, "general identity, 100 series x 50 points x 20 axes", ok,
            "worst residual " + fmt(worst));
}

// --- criterion 4: convex combination ----------------------------------------

void run_convex() {
  bool ok = true;
  double worst = 0.0, worst_cross = 0.0, worst_affine = 0.0;

  auto run_one = [&](const SliceSeries& f, const Multivector& axis, std::uint64_t seed) {
    CheckReport r = check_convex_combination(f, axis, 20, 16, seed, 1e-9, 1e-12);
    ok = ok && r.pass;
    worst = std::max(worst, r.max_residual);
    worst_cross = std::max(worst_cross, r.witness["cross_term_residual"].get<double>());
  };

  SliceStructure q = SliceStructure::quaternion();
  SliceStructure p3 = SliceStructure::paravector(3);
  for (int i = 0; i < 15; ++i) {
    Multivector aq = q.sphere_sample_one(stream_id("acc_convex_q", kSeed), i);
    run_one(random_slice_preserving_series(q, aq, 16, kSeed + 200, i, 0.8), aq, kSeed + i);
    Multivector ap = p3.sphere_sample_one(stream_id("acc_convex_p", kSeed), i);
    run_one(random_slice_preserving_series(p3, ap, 16, kSeed + 300, i, 0.8), ap, kSeed + 50 + i);
  }
  // Rotated g*u instances (quaternions only).
  for (int i = 0; i < 20; ++i) {
    Multivector axis = q.sphere_sample_one(stream_id("acc_convex_rot", kSeed), i);
    SliceSeries g = random_slice_preserving_series(q, axis, 16, kSeed + 400, i, 0.8);
    run_one(rotate_right(g, random_unit(q, kSeed + 500, i)), axis, kSeed + 100 + i);
  }
  // Affine dependence of |f|^2 on <I,J>, plain and rotated.
  for (int i = 0; i < 10; ++i) {
    Multivector axis = q.sphere_sample_one(stream_id("acc_affine", kSeed), i);
    SliceSeries f = random_slice_preserving_series(q, axis, 16, kSeed + 600, i, 0.8);
    if (i % 2 == 1) f = rotate_right(f, random_unit(q, kSeed + 650, i));
    CheckReport r = check_affine_in_inner(f, axis, 15, 24, kSeed + i, 1e-9);
    ok = ok && r.pass;
    worst_affine = std::max(worst_affine, r.max_residual);
  }
  criterion(4, "convex combination + cross term + affine fit", ok,
            "residual " + fmt(worst) + ", cross " + fmt(worst_cross) + ", affine " +
                fmt(worst_affine));
}

// --- criterion 5: representation formula ------------------------------------

void run_representation() {
  bool ok = true;
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    SliceSeries f = random_series(SliceStructure::quaternion(), 16, kSeed + 700, i, 0.8);
    CheckReport r = check_representation_formula(f, 50, kSeed + i, 1e-10);
    ok = ok && r.pass;
    worst = std::max(worst, r.max_residual);
  }
  for (int i = 0; i < 50; ++i) {
    SliceSeries f = random_series(SliceStructure::paravector(3), 16, kSeed + 800, i, 0.8);
    CheckReport r = check_representation_formula(f, 50, kSeed + 100 + i, 1e-10);
    ok = ok && r.pass;
    worst = std::max(worst, r.max_residual);
  }
  criterion(5, "representation formula, 100 series x 50 points", ok,
            "worst residual " + fmt(worst));
}

// --- criterion 6: splitting --------------------------------------------------

void run_splitting() {
  bool ok = true;
  double worst = 0.0;
  for (int n : {2, 3, 4, 5}) {
    SliceStructure s = SliceStructure::paravector(n);
    for (int i = 0; i < 20; ++i) {
      SliceSeries f = random_series(s, 12, kSeed + 900 + n, i, 0.9);
      Multivector axis = s.sphere_sample_one(stream_id("acc_split_axis", kSeed + n), i);
      CheckReport r = check_splitting_roundtrip(f, axis, 50, kSeed + i, 1e-10);
      ok = ok && r.pass;
      worst = std::max(worst, r.max_residual);
    }
  }

  // Quaternion F/G recovery on constructed instances.
  SliceStructure q = SliceStructure::quaternion();
  double worst_fg = 0.0;
  for (int i = 0; i < 20; ++i) {
    Multivector axis = q.sphere_sample_one(stream_id("acc_fg_axis", kSeed), i);
    Multivector k_axis = completion_basis(q, axis)[0];
    Rng rng = substream(kSeed, "acc_fg", i);
    const int deg = 10;
    ComplexSeries F, G;
    SliceSeries f(q, deg);
    for (int k = 0; k <= deg; ++k) {
      std::complex<double> cf(rng.normal(), rng.normal());
      std::complex<double> cg(rng.normal(), rng.normal());
      F.coeffs.push_back(cf);
      G.coeffs.push_back(cg);
      Multivector a = axis * cf.imag();
      a.set_coeff(0, a.coeff(0) + cf.real());
      Multivector b = axis * cg.imag();
      b.set_coeff(0, b.coeff(0) + cg.real());
      f.set_coeff(k, a + b * k_axis);
    }
    SplittingResult sp = splitting(f, axis);
    for (int k = 0; k <= deg; ++k) {
      worst_fg = std::max(worst_fg, std::abs(sp.components[0].coeffs[k] - F.coeffs[k]));
      worst_fg = std::max(worst_fg, std::abs(sp.components[1].coeffs[k] - G.coeffs[k]));
    }
  }
  ok = ok && worst_fg <= 1e-12;
  criterion(6, "splitting round trip n=2..5 + quaternion F/G recovery", ok,
            "roundtrip " + fmt(worst) + ", F/G " + fmt(worst_fg));
}

// --- criterion 7: star inverse ----------------------------------------------

void run_star_inverse() {
  bool ok = true;
  double worst = 0.0;
  SliceStructure q = SliceStructure::quaternion();
  SliceStructure p3 = SliceStructure::paravector(3);
  for (int i = 0; i < 50; ++i) {
    CheckReport rq =
        check_star_inverse_two_sided(random_series(q, 32, kSeed + 1000, i, 0.5, true, 0.1), 1e-10);
    CheckReport rp =
        check_star_inverse_two_sided(random_series(p3, 32, kSeed + 1100, i, 0.5, true, 0.1), 1e-10);
    ok = ok && rq.pass && rp.pass;
    worst = std::max({worst, rq.max_residual, rp.max_residual});
  }

  double worst_routes = 0.0;
  for (int i = 0; i < 15; ++i) {
    for (const SliceStructure& s : {q, p3}) {
      Multivector axis = s.sphere_sample_one(stream_id("acc_routes_axis", kSeed), i);
      SliceSeries f = random_slice_preserving_series(s, axis, 64, kSeed + 1200, i, 0.25, true);
      for (int k = 1; k <= f.degree(); ++k) f.set_coeff(k, f.coeff(k) * 0.4);
      CheckReport r = check_star_inverse_routes(f, 20, kSeed + i, 1e-8);
      ok = ok && r.pass;
      worst_routes = std::max(worst_routes, r.max_residual);
    }
  }
  criterion(7, "star inverse: two-sided coefficients + route agreement", ok,
            "coefficients " + fmt(worst) + ", routes " + fmt(worst_routes));
}

// --- criterion 8: growth/distortion/ratio ------------------------------------

void run_growth() {
  bool ok = true;
  double worst = 0.0;
  for (const SliceStructure& s :
       {SliceStructure::quaternion(), SliceStructure::paravector(3)}) {
    for (const SeedFunction& f : seed_catalog(s, 512)) {
      if (!f.normalized) continue;
      CheckReport r = check_growth_distortion(f, 1000, kSeed, 1e-8);
      ok = ok && r.pass;
      worst = std::max(worst, r.max_residual);
    }
    CheckReport anchors = check_koebe_anchor_values(s, 512, 1e-8);
    ok = ok && anchors.pass;
    worst = std::max(worst, anchors.max_residual);
  }
  criterion(8, "growth/distortion/ratio margins + equality anchors", ok,
            "worst violation " + fmt(worst));
}

// --- criterion 9: rotation detector ------------------------------------------

void run_detector() {
  SliceStructure q = SliceStructure::quaternion();
  bool ok = true;
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    Multivector axis = q.sphere_sample_one(stream_id("acc_det_axis", kSeed), i);
    SliceSeries g = random_slice_preserving_series(q, axis, 24, kSeed + 1300, i, 0.7);
    Multivector u = random_unit(q, kSeed + 1400, i);
    SliceSeries f = rotate_right(g, u);
    auto det = detect_rotated_slice_preserving(f, axis, 40, kSeed + i);
    if (!det) {
      ok = false;
      continue;
    }
    for (int p = 0; p < 20; ++p) {
      Rng rng = substream(kSeed, "acc_det_val", 100 * i + p);
      Multivector J = q.sphere_sample_one(stream_id("acc_det_valaxis", kSeed), 100 * i + p);
      double r = rng.uniform(0.0, 0.9);
      double phi = rng.uniform(0.0, 3.14159265358979323846);
      SlicePoint pt{r * std::cos(phi), r * std::sin(phi), J};
      worst = std::max(worst,
                       relative_residual(eval(f, pt), eval(det->factor, pt) * det->unit));
    }
  }
  ok = ok && worst <= 1e-9;

  int accepted = 0;
  for (int i = 0; i < 50; ++i) {
    SliceSeries f = random_series(q, 16, kSeed + 1500, i, 0.8);
    if (detect_rotated_slice_preserving(f, q.default_axis(), 40, kSeed + i)) ++accepted;
  }
  ok = ok && accepted == 0;
  criterion(9, "rotated-form detector: 50 positives + 50 negatives", ok,
            "reconstruction " + fmt(worst) + ", false accepts " + std::to_string(accepted));
}

// --- criterion 10: one-quarter covering ---------------------------------------

void run_koebe_quarter() {
  auto start = std::chrono::steady_clock::now();
  SliceStructure q = SliceStructure::quaternion();
  auto catalog = seed_catalog(q, 64);
  const SeedFunction* koebe_entry = nullptr;
  for (const SeedFunction& f : catalog) {
    if (f.name == "koebe(theta=0)") koebe_entry = &f;
  }
  if (!koebe_entry) {
    criterion(10, "Koebe one-quarter covering", false, "catalog entry missing");
    return;
  }
  const SeedFunction& koebe = *koebe_entry;

  const double radii[] = {0.5, 0.7, 0.9, 0.99, 0.999};
  const std::complex<double> targets[] = {{0.2, 0.0}, {-0.3, 0.0}};
  CheckReport r = check_koebe_quarter(koebe, radii, targets);

  double m09 = r.witness["minima"][2].get<double>();
  double m999 = r.witness["minima"][4].get<double>();
  bool monotone = r.witness["monotone"].get<bool>();
  int count_in = r.witness["root_counts"][0]["count"].get<int>();
  int count_out = r.witness["root_counts"][1]["count"].get<int>();
  double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  bool ok = r.pass && std::fabs(m09 - 0.9 / (1.9 * 1.9)) <= 1e-8 && monotone &&
            std::fabs(m999 - 0.999 / (1.999 * 1.999)) <= 1e-4 && count_in == 1 &&
            count_out == 0 && elapsed < 30.0;
  std::ostringstream detail;
  detail << "min(0.9) err " << fmt(std::fabs(m09 - 0.9 / (1.9 * 1.9))) << ", counts "
         << count_in << "/" << count_out << ", " << elapsed << " s";
  criterion(10, "Koebe one-quarter covering", ok, detail.str());
}

// --- criterion 11: determinism ------------------------------------------------

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void run_determinism(const char* cli_path) {
  if (!cli_path) {
    criterion(11, "byte-identical reports", false, "CLI path missing (pass as argv[1])");
    return;
  }
  namespace fs = std::filesystem;
  fs::path out = fs::temp_directory_path() / "slicereg_determinism.json";
  std::string cmd = std::string("\"") + cli_path +
                    "\" verify --structure quaternion --degree 64 --samples 40 --axes 8 "
                    "--seed 9 --out \"" +
                    out.string() + "\" > /dev/null 2>&1";
  int rc1 = std::system(cmd.c_str());
  std::string first = read_file(out);
  std::error_code ec;
  fs::remove(out, ec);
  int rc2 = std::system(cmd.c_str());
  std::string second = read_file(out);
  fs::remove(out, ec);

  bool ok = rc1 == 0 && rc2 == 0 && !first.empty() && first == second;
  std::ostringstream detail;
  detail << "exit codes " << rc1 << "/" << rc2 << ", " << first.size() << " bytes, "
         << (first == second ? "identical" : "DIFFERENT");
  criterion(11, "byte-identical reports for identical config", ok, detail.str());
}

}  // namespace

int main(int argc, char** argv) {
  run_algebra();
  run_identity_general();
  run_convex();
  run_representation();
  run_splitting();
  run_star_inverse();
  run_growth();
  run_detector();
  run_koebe_quarter();
  run_determinism(argc > 1 ? argv[1] : nullptr);

  std::printf("%s: %d criterion(s) failed\n", g_failures == 0 ? "PASS" : "FAIL", g_failures);
  return g_failures == 0 ? 0 : 1;
}
