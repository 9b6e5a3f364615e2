#pragma once

// Parameter sweeps and the built-in figure table. Every evaluated point becomes one
// self-describing long-format CSV row.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "modval/measurement.hpp"
#include "modval/observables.hpp"
#include "modval/pointer_states.hpp"
#include "modval/qubit_system.hpp"

namespace modval::sweep {

enum class PsConvention { Exact, Paper };
enum class Quantity { PN, QMandel, Snr, QuadMean, QuadSecond, MeanN };

inline const char* ps_convention_name(PsConvention c) { return c == PsConvention::Exact ? "exact" : "paper"; }

inline const char* quantity_name(Quantity q) {
  switch (q) {
    case Quantity::PN: return "p_n";
    case Quantity::QMandel: return "q_mandel";
    case Quantity::Snr: return "snr";
    case Quantity::QuadMean: return "quad_mean";
    case Quantity::QuadSecond: return "quad_second";
    case Quantity::MeanN: return "mean_n";
  }
  return "unknown";
}

inline Quantity parse_quantity(const std::string& s) {
  for (auto q : {Quantity::PN, Quantity::QMandel, Quantity::Snr, Quantity::QuadMean, Quantity::QuadSecond,
                 Quantity::MeanN}) {
    if (s == quantity_name(q)) return q;
  }
  throw std::invalid_argument("unknown quantity '" + s + "'");
}

inline PointerFamily parse_family(const std::string& s) {
  if (s == "coherent") return PointerFamily::Coherent;
  if (s == "squeezed") return PointerFamily::Squeezed;
  if (s == "cat") return PointerFamily::Cat;
  throw std::invalid_argument("unknown pointer family '" + s + "'");
}

inline SnrMode parse_snr_mode(const std::string& s) {
  if (s == "final") return SnrMode::FinalMean;
  if (s == "shift") return SnrMode::ShiftFromInitial;
  throw std::invalid_argument("unknown snr mode '" + s + "'");
}

inline PsConvention parse_ps_convention(const std::string& s) {
  if (s == "exact") return PsConvention::Exact;
  if (s == "paper") return PsConvention::Paper;
  throw std::invalid_argument("unknown P_s convention '" + s + "'");
}

/// One fully specified evaluation point. Defaults follow the caption convention
/// g = phi1 = pi/2, N = 1, theta = 0.
struct Params {
  PointerFamily family = PointerFamily::Coherent;
  double gamma = 0.0;
  double phi = 0.0;
  double alpha_re = 0.0;
  double alpha_im = 0.0;
  double r = 0.0;
  double theta_sq = 0.0;
  double phi_cat = 0.0;
  double g = kPi / 2.0;
  double theta1 = kPi / 4.0;  // modular value 1
  double phi1 = kPi / 2.0;
  std::size_t m = 0;
  std::size_t dim = kDefaultDim;
  double quad_theta = 0.0;
  std::size_t n_total = 1;
  SnrMode snr_mode = SnrMode::ShiftFromInitial;
  PsConvention ps = PsConvention::Paper;
  Quantity quantity = Quantity::PN;
  std::optional<std::size_t> n;

  Complex alpha() const {
    return family == PointerFamily::Coherent ? std::polar(gamma, phi) : Complex{alpha_re, alpha_im};
  }
  SelectionConfig selection() const { return SelectionConfig{theta1, phi1, g}; }
};

/// Names accepted by set_param, overrides and --sweep.
inline const std::vector<std::string>& settable_params() {
  static const std::vector<std::string> names = {"gamma", "phi",   "alpha", "alpha_re",   "alpha_im", "r",
                                                 "theta_sq", "phi_cat", "g", "theta1",    "phi1",     "modval",
                                                 "m",     "dim",   "quad_theta", "n_total", "n"};
  return names;
}

namespace detail {

inline std::size_t as_count(const std::string& name, double v) {
  if (!(v >= 0.0) || v != std::floor(v)) {
    throw std::invalid_argument("parameter '" + name + "' must be a non-negative integer");
  }
  return static_cast<std::size_t>(v);
}

}  // namespace detail

inline void set_param(Params& p, const std::string& name, double v) {
  if (name == "gamma") {
    if (v < 0.0) throw std::invalid_argument("gamma must be non-negative");
    p.gamma = v;
  } else if (name == "phi") {
    p.phi = v;
  } else if (name == "alpha") {
    // Real displacement: sets both the coherent (gamma, phi) and the complex alpha fields.
    p.gamma = std::abs(v);
    p.phi = v < 0.0 ? kPi : 0.0;
    p.alpha_re = v;
    p.alpha_im = 0.0;
  } else if (name == "alpha_re") {
    p.alpha_re = v;
  } else if (name == "alpha_im") {
    p.alpha_im = v;
  } else if (name == "r") {
    if (v < 0.0) throw std::invalid_argument("r must be non-negative");
    p.r = v;
  } else if (name == "theta_sq") {
    p.theta_sq = v;
  } else if (name == "phi_cat") {
    p.phi_cat = v;
  } else if (name == "g") {
    p.g = v;
  } else if (name == "theta1") {
    p.theta1 = v;
  } else if (name == "phi1") {
    p.phi1 = v;
  } else if (name == "modval") {
    const auto sel = selection_for_modval(v);
    p.theta1 = sel.theta1;
    p.phi1 = sel.phi1;
    p.g = sel.g;
  } else if (name == "m") {
    p.m = detail::as_count(name, v);
  } else if (name == "dim") {
    p.dim = detail::as_count(name, v);
  } else if (name == "quad_theta") {
    p.quad_theta = v;
  } else if (name == "n_total") {
    p.n_total = detail::as_count(name, v);
  } else if (name == "n") {
    p.n = detail::as_count(name, v);
  } else {
    throw std::invalid_argument("unknown parameter '" + name + "'");
  }
}

/// Read back a settable parameter (panel selection, tests).
inline double get_param(const Params& p, const std::string& name) {
  if (name == "gamma") return p.gamma;
  if (name == "phi") return p.phi;
  if (name == "alpha") return p.family == PointerFamily::Coherent ? p.gamma : p.alpha_re;
  if (name == "alpha_re") return p.alpha_re;
  if (name == "alpha_im") return p.alpha_im;
  if (name == "r") return p.r;
  if (name == "theta_sq") return p.theta_sq;
  if (name == "phi_cat") return p.phi_cat;
  if (name == "g") return p.g;
  if (name == "theta1") return p.theta1;
  if (name == "phi1") return p.phi1;
  if (name == "modval") return std::tan(p.theta1);
  if (name == "m") return static_cast<double>(p.m);
  if (name == "dim") return static_cast<double>(p.dim);
  if (name == "quad_theta") return p.quad_theta;
  if (name == "n_total") return static_cast<double>(p.n_total);
  if (name == "n") return p.n ? static_cast<double>(*p.n) : -1.0;
  throw std::invalid_argument("unknown parameter '" + name + "'");
}

inline PointerSpec pointer_spec(const Params& p) {
  switch (p.family) {
    case PointerFamily::Coherent: return CoherentSpec{p.gamma, p.phi};
    case PointerFamily::Squeezed: return SqueezedSpec{p.alpha(), p.r, p.theta_sq};
    case PointerFamily::Cat: return CatSpec{p.alpha(), p.phi_cat};
    case PointerFamily::Custom: break;
  }
  throw std::invalid_argument("sweeps support coherent, squeezed and cat pointers only");
}

inline void validate(const Params& p) {
  if (p.dim < p.m + 3) {
    throw std::invalid_argument("dim=" + std::to_string(p.dim) + " too small for projector level m=" +
                                std::to_string(p.m) + " (need dim >= m + 3)");
  }
  if (p.quantity == Quantity::PN) {
    if (!p.n) throw std::invalid_argument("quantity p_n requires a photon number n");
    if (*p.n >= p.dim) throw std::invalid_argument("photon number n must be below dim");
  }
  if (p.quantity == Quantity::Snr && p.n_total < 1) throw std::invalid_argument("n_total must be positive");
}

struct ResultRow {
  Params params;
  Complex modval{1.0, 0.0};
  double ps_exact = 0.0;
  double ps_paper = 0.0;
  double truncation_leak = 0.0;
  double value = 0.0;
};

/// Run one point through the full pipeline (closed-form final pointer).
inline ResultRow evaluate(const Params& p) {
  validate(p);
  MeasurementConfig cfg;
  cfg.sel = p.selection();
  cfg.pointer = pointer_spec(p);
  cfg.m = p.m;
  cfg.dim = p.dim;
  const PointerState initial = make_pointer(cfg.pointer, cfg.dim, cfg.leak_tol);
  const PostSelectedPointer fin = final_pointer_analytic(cfg, initial);

  ResultRow row;
  row.params = p;
  row.modval = fin.modval;
  row.ps_exact = fin.ps_exact;
  row.ps_paper = fin.ps_paper;
  row.truncation_leak = initial.truncation_leak;
  const QuadratureSpec quad{p.quad_theta};
  switch (p.quantity) {
    case Quantity::PN: row.value = number_distribution(fin)[*p.n]; break;
    case Quantity::QMandel: row.value = mandel_q(fin); break;
    case Quantity::QuadMean: row.value = quadrature_mean(fin, quad); break;
    case Quantity::QuadSecond: row.value = quadrature_second_moment(fin, quad); break;
    case Quantity::MeanN: row.value = number_moments(fin.amplitudes).mean; break;
    case Quantity::Snr: {
      const double ps = p.ps == PsConvention::Exact ? fin.ps_exact : fin.ps_paper;
      row.value = snr(fin, initial, quad, SnrInput{p.n_total, ps, p.snr_mode});
      break;
    }
  }
  return row;
}

/// Evaluate points concurrently; output order always matches input order.
inline std::vector<ResultRow> evaluate_all(const std::vector<Params>& points, unsigned threads = 0) {
  std::vector<ResultRow> rows(points.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, points.size())));
  if (threads <= 1) {
    for (std::size_t i = 0; i < points.size(); ++i) rows[i] = evaluate(points[i]);
    return rows;
  }
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < points.size(); i += threads) rows[i] = evaluate(points[i]);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return rows;
}

// CSV -----------------------------------------------------------------------

inline constexpr const char* kCsvHeader =
    "quantity,family,n,alpha_re,alpha_im,gamma,phi,r,theta_sq,phi_cat,g,theta1,phi1,modval_re,modval_im,m,dim,"
    "quad_theta,n_total,snr_mode,ps_convention,ps_exact,ps_paper,truncation_leak,value";

inline std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// One CSV line (no trailing newline). Coherent rows echo alpha = gamma e^{i phi}; other
/// families echo gamma = |alpha|, phi = arg alpha.
inline std::string format_row(const ResultRow& row) {
  const Params& p = row.params;
  const Complex alpha = p.alpha();
  double gamma = p.gamma, phi = p.phi, are = p.alpha_re, aim = p.alpha_im;
  if (p.family == PointerFamily::Coherent) {
    are = alpha.real();
    aim = alpha.imag();
  } else {
    gamma = std::abs(alpha);
    phi = std::arg(alpha);
  }
  std::ostringstream os;
  os << quantity_name(p.quantity) << ',' << family_name(p.family) << ',' << (p.n ? std::to_string(*p.n) : "")
     << ',' << format_real(are) << ',' << format_real(aim) << ',' << format_real(gamma) << ','
     << format_real(phi) << ',' << format_real(p.r) << ',' << format_real(p.theta_sq) << ','
     << format_real(p.phi_cat) << ',' << format_real(p.g) << ',' << format_real(p.theta1) << ','
     << format_real(p.phi1) << ',' << format_real(row.modval.real()) << ',' << format_real(row.modval.imag())
     << ',' << p.m << ',' << p.dim << ',' << format_real(p.quad_theta) << ',' << p.n_total << ','
     << snr_mode_name(p.snr_mode) << ',' << ps_convention_name(p.ps) << ',' << format_real(row.ps_exact) << ','
     << format_real(row.ps_paper) << ',' << format_real(row.truncation_leak) << ',' << format_real(row.value);
  return os.str();
}

inline void write_csv(std::ostream& os, const std::vector<ResultRow>& rows) {
  os << kCsvHeader << '\n';
  for (const auto& r : rows) os << format_row(r) << '\n';
}

/// Rebuild the evaluation point from a CSV line written by format_row.
inline Params parse_row(const std::string& line) {
  std::vector<std::string> f;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) f.push_back(cell);
  if (!line.empty() && line.back() == ',') f.emplace_back();
  if (f.size() != 25) throw std::invalid_argument("CSV row has " + std::to_string(f.size()) + " fields, expected 25");
  auto num = [&](std::size_t i) { return std::stod(f[i]); };
  auto count = [&](std::size_t i) { return static_cast<std::size_t>(std::stoull(f[i])); };
  Params p;
  p.quantity = parse_quantity(f[0]);
  p.family = parse_family(f[1]);
  if (!f[2].empty()) p.n = count(2);
  p.alpha_re = num(3);
  p.alpha_im = num(4);
  p.gamma = num(5);
  p.phi = num(6);
  p.r = num(7);
  p.theta_sq = num(8);
  p.phi_cat = num(9);
  p.g = num(10);
  p.theta1 = num(11);
  p.phi1 = num(12);
  p.m = count(15);
  p.dim = count(16);
  p.quad_theta = num(17);
  p.n_total = count(18);
  p.snr_mode = parse_snr_mode(f[19]);
  p.ps = parse_ps_convention(f[20]);
  return p;
}

// Sweeps --------------------------------------------------------------------

struct Axis {
  std::string param;
  std::vector<double> values;
};

/// `count` evenly spaced values from start to stop inclusive.
inline std::vector<double> linspace(double start, double stop, std::size_t count) {
  if (count < 1) throw std::invalid_argument("sweep range needs count >= 1");
  std::vector<double> v(count);
  for (std::size_t i = 0; i < count; ++i) {
    v[i] = count == 1 ? start : start + (stop - start) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  return v;
}

inline std::vector<double> integer_range(std::size_t first, std::size_t last) {
  std::vector<double> v;
  for (std::size_t i = first; i <= last; ++i) v.push_back(static_cast<double>(i));
  return v;
}

/// Parse "param=start:stop:count" or "param=v1,v2,...".
inline Axis parse_axis(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) throw std::invalid_argument("sweep '" + text + "': expected param=range");
  Axis axis{text.substr(0, eq), {}};
  if (std::find(settable_params().begin(), settable_params().end(), axis.param) == settable_params().end()) {
    throw std::invalid_argument("sweep over unknown parameter '" + axis.param + "'");
  }
  const std::string rhs = text.substr(eq + 1);
  if (std::count(rhs.begin(), rhs.end(), ':') == 2) {
    const auto c1 = rhs.find(':');
    const auto c2 = rhs.find(':', c1 + 1);
    const double start = std::stod(rhs.substr(0, c1));
    const double stop = std::stod(rhs.substr(c1 + 1, c2 - c1 - 1));
    const double count = std::stod(rhs.substr(c2 + 1));
    axis.values = linspace(start, stop, detail::as_count("count", count));
  } else {
    std::stringstream ss(rhs);
    std::string tok;
    while (std::getline(ss, tok, ',')) axis.values.push_back(std::stod(tok));
  }
  if (axis.values.empty()) throw std::invalid_argument("sweep '" + text + "' is empty");
  return axis;
}

/// Cartesian product; the first axis varies slowest.
inline std::vector<Params> expand(const Params& base, const std::vector<Axis>& axes) {
  std::vector<Params> out{base};
  for (const auto& axis : axes) {
    if (axis.values.empty()) throw std::invalid_argument("axis '" + axis.param + "' is empty");
    std::vector<Params> next;
    next.reserve(out.size() * axis.values.size());
    for (const auto& p : out)
      for (double v : axis.values) {
        Params q = p;
        set_param(q, axis.param, v);
        next.push_back(q);
      }
    out = std::move(next);
  }
  return out;
}

struct SweepSpec {
  Params base;
  std::vector<Axis> axes;
};

inline std::vector<ResultRow> run_sweep(const SweepSpec& spec, unsigned threads = 0) {
  const auto points = expand(spec.base, spec.axes);
  for (const auto& p : points) validate(p);
  return evaluate_all(points, threads);
}

// Figures -------------------------------------------------------------------

struct Panel {
  std::string suffix;  // empty for single-panel figures
  Params base;
  std::vector<Axis> axes;
};

struct FigureDef {
  std::string id;
  std::string description;
  std::string panel_param;  // parameter distinguishing the panels, empty if one panel
  std::vector<Panel> panels;
};

namespace detail {

inline Params fig_base(PointerFamily family, Quantity q, std::size_t m, std::size_t dim = kDefaultDim) {
  Params p;
  p.family = family;
  p.quantity = q;
  p.m = m;
  p.dim = dim;
  return p;
}

inline const std::vector<double>& modval_set() {
  static const std::vector<double> v = {1.0, 5.0, 10.0, 20.0};
  return v;
}

}  // namespace detail

/// Built-in figure parameter table (version 1). Caption values where stated; the
/// remaining sweep ranges are fixed here.
inline const std::vector<FigureDef>& figure_table() {
  using detail::fig_base;
  using detail::modval_set;
  static const std::vector<FigureDef> table = [] {
    std::vector<FigureDef> t;
    const auto n_axis = Axis{"n", integer_range(0, 15)};
    const auto mv_axis = Axis{"modval", modval_set()};
    const auto mv_grid = Axis{"modval", linspace(1.0, 20.0, 20)};

    {
      Params p = fig_base(PointerFamily::Coherent, Quantity::PN, 2);
      p.gamma = 2.0;
      t.push_back({"fig1", "coherent pointer: p(n) for several modular values", "", {{"", p, {mv_axis, n_axis}}}});
    }
    {
      Params p = fig_base(PointerFamily::Coherent, Quantity::QMandel, 2);
      t.push_back({"fig2", "coherent pointer: Mandel Q vs alpha", "",
                   {{"", p, {mv_axis, Axis{"alpha", linspace(0.05, 4.0, 80)}}}}});
    }
    {
      FigureDef f{"fig3", "coherent pointer: SNR of X_0 over (alpha, modval)", "m", {}};
      const char* sfx[] = {"a", "b", "c"};
      const std::size_t ms[] = {2, 5, 10};
      for (int i = 0; i < 3; ++i) {
        Params p = fig_base(PointerFamily::Coherent, Quantity::Snr, ms[i]);
        f.panels.push_back({sfx[i], p, {Axis{"alpha", linspace(0.1, 3.0, 30)}, mv_grid}});
      }
      t.push_back(f);
    }
    {
      Params p = fig_base(PointerFamily::Squeezed, Quantity::PN, 2);
      set_param(p, "alpha", 1.0);
      p.r = 0.5;
      t.push_back({"fig4", "squeezed pointer: p(n) for several modular values", "", {{"", p, {mv_axis, n_axis}}}});
    }
    {
      FigureDef f{"fig5", "squeezed pointer: Mandel Q vs alpha", "r", {}};
      const char* sfx[] = {"a", "b"};
      const double rs[] = {0.5, 1.0};
      for (int i = 0; i < 2; ++i) {
        Params p = fig_base(PointerFamily::Squeezed, Quantity::QMandel, 2, 96);
        p.r = rs[i];
        f.panels.push_back({sfx[i], p, {mv_axis, Axis{"alpha", linspace(0.05, 3.0, 60)}}});
      }
      t.push_back(f);
    }
    {
      FigureDef f{"fig6", "squeezed pointer: SNR of X_0 over (r, modval)", "m", {}};
      const char* sfx[] = {"a", "b"};
      const std::size_t ms[] = {2, 5};
      for (int i = 0; i < 2; ++i) {
        Params p = fig_base(PointerFamily::Squeezed, Quantity::Snr, ms[i], 96);
        set_param(p, "alpha", 0.5);
        f.panels.push_back({sfx[i], p, {Axis{"r", linspace(0.0, 1.0, 21)}, mv_grid}});
      }
      t.push_back(f);
    }
    {
      FigureDef f{"fig7", "cat pointer: p(n) for several modular values", "alpha", {}};
      const char* sfx[] = {"a", "b"};
      const double as[] = {1.0, 2.0};
      for (int i = 0; i < 2; ++i) {
        Params p = fig_base(PointerFamily::Cat, Quantity::PN, 2);
        set_param(p, "alpha", as[i]);
        p.phi_cat = kPi / 3.0;
        f.panels.push_back({sfx[i], p, {mv_axis, n_axis}});
      }
      t.push_back(f);
    }
    {
      Params p = fig_base(PointerFamily::Cat, Quantity::QMandel, 2);
      set_param(p, "alpha", 0.2);
      t.push_back({"fig8", "cat pointer: Mandel Q vs cat phase", "",
                   {{"", p, {mv_axis, Axis{"phi_cat", linspace(0.0, 2.0 * kPi, 73)}}}}});
    }
    {
      FigureDef f{"fig9", "cat pointer: SNR of X_0 over (alpha, modval)", "m", {}};
      const char* sfx[] = {"a", "b", "c"};
      const std::size_t ms[] = {2, 5, 10};
      for (int i = 0; i < 3; ++i) {
        Params p = fig_base(PointerFamily::Cat, Quantity::Snr, ms[i]);
        f.panels.push_back({sfx[i], p, {Axis{"alpha", linspace(0.1, 3.0, 30)}, mv_grid}});
      }
      t.push_back(f);
    }
    return t;
  }();
  return table;
}

inline const FigureDef& find_figure(const std::string& id) {
  for (const auto& f : figure_table())
    if (f.id == id) return f;
  throw std::invalid_argument("unknown figure '" + id + "' (expected fig1..fig9)");
}

struct PanelResult {
  std::string name;  // e.g. "fig3_a"; just the figure id for single-panel output
  std::vector<ResultRow> rows;
};

using Overrides = std::vector<std::pair<std::string, double>>;

/// Non-numeric figure options; unset fields keep the table defaults.
struct FigureModes {
  std::optional<SnrMode> snr_mode;
  std::optional<PsConvention> ps;
};

/// Evaluate a figure's panels. An override of the panel parameter keeps a single panel
/// (the caption one if the value matches, otherwise the first panel re-parameterized).
/// Overriding a swept parameter pins that axis to the given value.
inline std::vector<PanelResult> run_figure(const std::string& id, const Overrides& overrides = {},
                                           const FigureModes& modes = {}, unsigned threads = 0) {
  const FigureDef& fig = find_figure(id);
  std::vector<Panel> panels = fig.panels;

  for (const auto& [name, value] : overrides) {
    Params probe;
    set_param(probe, name, value);  // rejects undeclared names
  }

  std::optional<double> panel_choice;
  for (const auto& [name, value] : overrides)
    if (!fig.panel_param.empty() && name == fig.panel_param) panel_choice = value;
  if (panel_choice) {
    std::vector<Panel> chosen;
    for (const auto& pn : panels)
      if (get_param(pn.base, fig.panel_param) == *panel_choice) chosen.push_back(pn);
    if (chosen.empty()) chosen.push_back(panels.front());
    chosen.resize(1);
    chosen.front().suffix.clear();
    panels = chosen;
  }

  std::vector<PanelResult> out;
  for (auto& pn : panels) {
    for (const auto& [name, value] : overrides) {
      set_param(pn.base, name, value);
      std::erase_if(pn.axes, [&](const Axis& a) { return a.param == name; });
    }
    if (modes.snr_mode) pn.base.snr_mode = *modes.snr_mode;
    if (modes.ps) pn.base.ps = *modes.ps;
    PanelResult res;
    res.name = pn.suffix.empty() ? fig.id : fig.id + "_" + pn.suffix;
    res.rows = run_sweep(SweepSpec{pn.base, pn.axes}, threads);
    out.push_back(std::move(res));
  }
  return out;
}

}  // namespace modval::sweep
