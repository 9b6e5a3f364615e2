// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.
// Usage: modval_acceptance [path-to-modval-cli]

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "modval/modval.hpp"
#include "oracles.hpp"

using namespace modval;

namespace {

constexpr double kTolWeak = 1e-13;
constexpr double kTolModular = 1e-12;
constexpr double kTolOracle = 1e-9;
constexpr double kTolStates = 1e-8;
constexpr double kTolCatNorm = 1e-10;
constexpr double kTolMandelCoherent = 1e-10;
constexpr double kTolIdentity = 1e-12;
constexpr double kTolClosedForm = 1e-8;
constexpr double kTolCommutator = 1e-10;
constexpr double kSqueezedDim = 96;
constexpr std::size_t kStateOracleDim = 128;  // keeps the leak < 1e-10 over |alpha| <= 1.5, r <= 1

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double time_limit_s;  // 0 means no limit
  std::function<Outcome()> run;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double min_q(const sweep::Params& base, const std::vector<double>& alphas) {
  double best = 1e300;
  for (double a : alphas) {
    sweep::Params p = base;
    sweep::set_param(p, "alpha", a);
    best = std::min(best, sweep::evaluate(p).value);
  }
  return best;
}

Outcome weak_value_identity() {
  double dev = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double t = 1.5 * i / 50.0;
    const double p = 2.0 * kPi * ((i * 7) % 50) / 50.0;
    dev = std::max(dev, std::abs(weak_value({t, p, 1.0}) - std::polar(std::tan(t), p)));
  }
  return {dev <= kTolWeak, "max dev " + fmt(dev)};
}

Outcome modular_relation() {
  double dev = 0.0;
  for (int i = 0; i < 20; ++i)
    for (int j = 0; j < 20; ++j)
      for (int k = 0; k < 20; ++k) {
        const SelectionConfig sel{1.5 * i / 19.0, 2.0 * kPi * j / 20.0, kPi * k / 19.0};
        const Complex ref = std::cos(sel.g) - kI * weak_value(sel) * std::sin(sel.g);
        dev = std::max(dev, std::abs(modular_value(sel) - ref));
      }
  return {dev <= kTolModular, "max dev " + fmt(dev)};
}

Outcome oracle_equivalence() {
  const auto res = run_oracle_equivalence(200, 20240611, kTolOracle, 64);
  return {res.failures == 0 && res.max_deviation <= kTolOracle,
          std::to_string(res.configs) + " configs, max dev " + fmt(res.max_deviation)};
}

Outcome state_oracles() {
  const std::size_t dim = kStateOracleDim;
  double sq_dev = 0.0;
  for (double mag : {0.0, 0.75, 1.5})
    for (double ph : {0.0, 2.2, -1.7})
      for (double r : {0.25, 0.6, 1.0})
        for (double th : {0.0, 1.4}) {
          const Complex alpha = std::polar(mag, ph);
          const auto ref = oracle::displaced_squeezed_vacuum(alpha, r, th, dim, 2 * dim);
          sq_dev = std::max(sq_dev, max_abs_diff(squeezed_state(alpha, r, th, dim).amplitudes, ref));
        }
  double coh_dev = 0.0;
  for (double g : {0.5, 1.5, 2.5}) {
    const auto col = displacement_op(std::polar(g, 0.6), 64).column(0);
    coh_dev = std::max(coh_dev, max_abs_diff(col, coherent_state(g, 0.6, 64).amplitudes));
  }
  double cat_dev = 0.0;
  for (double a : {0.3, 1.0, 2.0})
    for (double phi : {0.0, kPi / 3.0, kPi})
      cat_dev = std::max(cat_dev, std::abs(cat_state(std::polar(a, 0.4), phi, 64).amplitudes.norm_squared() - 1.0));
  return {sq_dev <= kTolStates && coh_dev <= kTolStates && cat_dev <= kTolCatNorm,
          "squeezed " + fmt(sq_dev) + ", coherent " + fmt(coh_dev) + ", cat norm " + fmt(cat_dev)};
}

Outcome known_limits() {
  double q_coh = 0.0;
  for (double g : {0.5, 1.0, 2.0, 3.0}) q_coh = std::max(q_coh, std::abs(mandel_q(coherent_state(g, 0.3, 64))));
  bool fock = true;
  for (std::size_t k = 1; k <= 20; ++k) fock = fock && mandel_q(fock_state(k, 32)) == -1.0;
  double ident = 0.0;
  const std::array<PointerSpec, 3> specs{CoherentSpec{1.8, 0.4}, SqueezedSpec{Complex{0.9, 0.2}, 0.5, 0.7},
                                         CatSpec{Complex{1.2, -0.3}, 1.0}};
  for (const auto& spec : specs)
    for (std::size_t m : {0u, 2u, 7u}) {
      MeasurementConfig cfg{selection_for_modval(1.0), spec, m, 64};
      const auto pointer = make_pointer(spec, 64);
      ident = std::max(ident, max_deviation_up_to_phase(final_pointer_analytic(cfg, pointer).amplitudes,
                                                        pointer.amplitudes));
      ident = std::max(ident, max_deviation_up_to_phase(final_pointer_oracle(cfg, pointer).amplitudes,
                                                        pointer.amplitudes));
    }
  return {q_coh <= kTolMandelCoherent && fock && ident <= kTolIdentity,
          "coherent |Q| " + fmt(q_coh) + ", fock " + (fock ? "exact" : "off") + ", identity dev " + fmt(ident)};
}

Outcome fig1_trend() {
  const auto rows = sweep::run_figure("fig1")[0].rows;
  std::vector<double> p2;
  for (const auto& r : rows)
    if (*r.params.n == 2) p2.push_back(r.value);
  bool mono = p2.size() == 4;
  for (std::size_t i = 1; mono && i < p2.size(); ++i) mono = p2[i] >= p2[i - 1];
  std::string d = "p(2) =";
  for (double v : p2) d += " " + fmt(v);
  return {mono && p2.back() > p2.front(), d};
}

Outcome fig2_trend() {
  sweep::Params base;
  base.quantity = sweep::Quantity::QMandel;
  base.m = 2;
  const auto alphas = sweep::linspace(0.05, 4.0, 80);
  std::vector<double> minima;
  bool negative = true;
  for (double mv : {2.0, 5.0, 10.0, 20.0}) {
    sweep::set_param(base, "modval", mv);
    const double q = min_q(base, alphas);
    negative = negative && q < 0.0;
    if (mv >= 5.0) minima.push_back(q);
  }
  const bool decreasing = minima[1] < minima[0] && minima[2] < minima[1];
  return {negative && decreasing,
          "min Q at modval 5,10,20: " + fmt(minima[0]) + " " + fmt(minima[1]) + " " + fmt(minima[2])};
}

Outcome fig5_trend() {
  sweep::Params base;
  base.family = PointerFamily::Squeezed;
  base.quantity = sweep::Quantity::QMandel;
  base.m = 2;
  base.dim = static_cast<std::size_t>(kSqueezedDim);
  const auto alphas = sweep::linspace(0.05, 3.0, 60);
  bool ok = true;
  std::string d;
  for (double mv : {1.0, 5.0, 10.0, 20.0}) {
    sweep::set_param(base, "modval", mv);
    sweep::Params a = base, b = base;
    a.r = 0.5;
    b.r = 1.0;
    const double qa = min_q(a, alphas), qb = min_q(b, alphas);
    ok = ok && qa < qb;
    d += (d.empty() ? "" : "; ") + fmt(qa) + " vs " + fmt(qb);
  }
  return {ok, "min Q r=0.5 vs r=1: " + d};
}

Outcome fig8_trend() {
  sweep::Params base;
  base.family = PointerFamily::Cat;
  base.quantity = sweep::Quantity::QMandel;
  base.m = 2;
  base.alpha_re = base.gamma = 0.2;
  const std::size_t samples = 720;
  std::vector<double> measure;
  for (double mv : {1.0, 5.0, 10.0, 20.0}) {
    sweep::set_param(base, "modval", mv);
    std::size_t below = 0;
    for (std::size_t i = 0; i < samples; ++i) {
      sweep::Params p = base;
      p.phi_cat = 2.0 * kPi * (i + 0.5) / samples;
      if (sweep::evaluate(p).value < -0.5) ++below;
    }
    measure.push_back(2.0 * kPi * below / samples);
  }
  bool strict = true;
  for (std::size_t i = 1; i < measure.size(); ++i) strict = strict && measure[i] < measure[i - 1];
  std::string d = "measure of Q < -0.5:";
  for (double v : measure) d += " " + fmt(v);
  return {strict, d};
}

Outcome closed_form_consistency(ClosedFormQuantity q, PointerSpec spec) {
  ClosedFormParams p{spec, 2, 1.0, {0.3}, 64};
  const auto rep = paper_closed_forms(p, q);
  return {rep.status == ClosedFormStatus::Evaluated && rep.abs_discrepancy <= kTolClosedForm,
          std::string(family_name(family_of(spec))) + "." + rep.quantity + " discrepancy " +
              fmt(rep.abs_discrepancy)};
}

Outcome errata_contents() {
  const auto entries = errata_entries();
  auto has = [&](const std::string& key) {
    return std::any_of(entries.begin(), entries.end(), [&](const ErrataEntry& e) { return e.key == key; });
  };
  bool ok = has("conditional_probability.index_swap") && has("cat_coefficients.factorial") &&
            has("closed_form.cat.quad_second_moment");
  // Each closed-form entry must correspond to a discrepancy above threshold at its probe point.
  std::size_t spurious = 0;
  for (const auto& e : entries) {
    if (e.key.rfind("closed_form.", 0) != 0 || e.key == "closed_form.cat.quad_second_moment") continue;
    bool justified = false;
    for (const auto& p : errata_probe_points())
      for (auto q : {ClosedFormQuantity::MeanN, ClosedFormQuantity::MeanN2, ClosedFormQuantity::QuadMean,
                     ClosedFormQuantity::QuadSecond}) {
        const auto rep = paper_closed_forms(p, q);
        const std::string key = std::string("closed_form.") + family_name(rep.family) + "." + rep.quantity;
        if (key == e.key && rep.status == ClosedFormStatus::Evaluated && rep.abs_discrepancy > kErrataThreshold)
          justified = true;
      }
    if (!justified) ++spurious;
  }
  return {ok && spurious == 0, std::to_string(entries.size()) + " entries, " + std::to_string(spurious) + " spurious"};
}

Outcome commutator() {
  const std::size_t dim = 64;
  const auto x0 = quadrature_op(0.0, dim);
  const auto x1 = quadrature_op(kPi / 2.0, dim);
  const auto c = x0 * x1 - x1 * x0;
  double dev = 0.0;
  for (std::size_t i = 0; i < dim - 2; ++i)
    for (std::size_t j = 0; j < dim - 2; ++j) dev = std::max(dev, std::abs(c(i, j) - (i == j ? kI : Complex{})));
  return {dev <= kTolCommutator, "max dev " + fmt(dev)};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Outcome determinism(const std::string& cli) {
  if (cli.empty()) {
    std::ostringstream a, b;
    sweep::write_csv(a, sweep::run_figure("fig1")[0].rows);
    sweep::write_csv(b, sweep::run_figure("fig1")[0].rows);
    return {a.str() == b.str(), "library path (no CLI given), " + std::to_string(a.str().size()) + " bytes"};
  }
  const auto root = std::filesystem::temp_directory_path() / "modval_acceptance";
  std::filesystem::remove_all(root);
  std::array<std::string, 2> out;
  for (int i = 0; i < 2; ++i) {
    const auto dir = root / ("run" + std::to_string(i));
    const std::string cmd = "\"" + cli + "\" figure fig1 --out \"" + dir.string() + "\"";
    if (std::system(cmd.c_str()) != 0) return {false, "CLI failed: " + cmd};
    out[i] = slurp(dir / "fig1.csv");
  }
  std::filesystem::remove_all(root);
  return {!out[0].empty() && out[0] == out[1], "CLI fig1.csv " + std::to_string(out[0].size()) + " bytes"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  const std::vector<Criterion> criteria{
      {1, "weak value identity", 1.0, weak_value_identity},
      {2, "modular value relation", 5.0, modular_relation},
      {3, "oracle equivalence", 10.0, oracle_equivalence},
      {4, "state construction oracles", 5.0, state_oracles},
      {5, "known limits", 0.0, known_limits},
      {6, "fig1 trend", 0.0, fig1_trend},
      {7, "fig2 trend", 0.0, fig2_trend},
      {8, "fig5 trend", 0.0, fig5_trend},
      {9, "fig8 trend", 0.0, fig8_trend},
      {10, "closed form coherent mean_n", 0.0,
       [] { return closed_form_consistency(ClosedFormQuantity::MeanN, CoherentSpec{1.4, 0.2}); }},
      {10, "closed form coherent mean_adag2_a2", 0.0,
       [] { return closed_form_consistency(ClosedFormQuantity::MeanN2, CoherentSpec{1.4, 0.2}); }},
      {10, "closed form squeezed mean_n", 0.0,
       [] { return closed_form_consistency(ClosedFormQuantity::MeanN, SqueezedSpec{Complex{1.0, 0.3}, 0.5, 0.4}); }},
      {10, "closed form squeezed mean_adag2_a2", 0.0,
       [] { return closed_form_consistency(ClosedFormQuantity::MeanN2, SqueezedSpec{Complex{1.0, 0.3}, 0.5, 0.4}); }},
      {10, "errata report contents", 0.0, errata_contents},
      {11, "quadrature commutator", 0.0, commutator},
      {12, "figure determinism", 0.0, [&] { return determinism(cli); }},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.time_limit_s > 0.0 && secs > c.time_limit_s) {
      o.pass = false;
      o.detail += ", over time limit " + fmt(c.time_limit_s) + " s";
    }
    if (!o.pass) ++failed;
    std::printf("[%s] %2d %-36s %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name.c_str(), o.detail.c_str(),
                secs);
  }
  std::printf("%d of %zu checks failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
