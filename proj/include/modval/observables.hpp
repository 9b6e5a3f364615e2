#pragma once

// Photon statistics, quadrature moments and SNR of pointer states, plus the printed
// closed-form moment expressions used as cross-checks.

#include <cmath>
#include <concepts>
#include <cstddef>
#include <string>
#include <vector>

#include "modval/errors.hpp"
#include "modval/measurement.hpp"
#include "modval/numerics.hpp"
#include "modval/pointer_states.hpp"

namespace modval {

/// Anything that carries Fock amplitudes: PointerState, PostSelectedPointer.
template <class S>
concept FockState = requires(const S& s) {
  { s.amplitudes } -> std::convertible_to<const ComplexVector&>;
};

inline std::vector<double> number_distribution(const ComplexVector& amps) {
  std::vector<double> p(amps.dim());
  for (std::size_t n = 0; n < amps.dim(); ++n) p[n] = std::norm(amps[n]);
  return p;
}

template <FockState S>
std::vector<double> number_distribution(const S& state) {
  return number_distribution(state.amplitudes);
}

/// <a^dagger a> and <a^dagger^2 a^2> from the photon-number distribution.
struct NumberMoments {
  double mean = 0.0;
  double factorial2 = 0.0;
};

inline NumberMoments number_moments(const ComplexVector& amps) {
  NumberMoments out;
  for (std::size_t n = 0; n < amps.dim(); ++n) {
    const double p = std::norm(amps[n]);
    const double dn = static_cast<double>(n);
    out.mean += dn * p;
    out.factorial2 += dn * (dn - 1.0) * p;
  }
  return out;
}

/// Mandel Q = (<a^dagger^2 a^2> - <a^dagger a>^2) / <a^dagger a>.
inline double mandel_q(const ComplexVector& amps) {
  const auto mom = number_moments(amps);
  if (!(mom.mean > 0.0)) throw UndefinedQuantityError("Mandel Q undefined for the vacuum (<n> = 0)");
  return (mom.factorial2 - mom.mean * mom.mean) / mom.mean;
}

template <FockState S>
double mandel_q(const S& state) {
  return mandel_q(state.amplitudes);
}

/// Quadrature angle; theta = 0 is the x direction.
struct QuadratureSpec {
  double theta = 0.0;
};

namespace detail {

// <a^dagger^k> = sum_n c*_{n+k} c_n sqrt((n+1)...(n+k)).
inline Complex raising_expectation(const ComplexVector& c, std::size_t k) {
  Complex s{};
  for (std::size_t n = 0; n + k < c.dim(); ++n) {
    double w = 1.0;
    for (std::size_t j = 1; j <= k; ++j) w *= static_cast<double>(n + j);
    s += std::conj(c[n + k]) * c[n] * std::sqrt(w);
  }
  return s;
}

}  // namespace detail

inline double quadrature_mean(const ComplexVector& amps, QuadratureSpec q) {
  return std::sqrt(2.0) * std::real(std::polar(1.0, q.theta) * detail::raising_expectation(amps, 1));
}

inline double quadrature_second_moment(const ComplexVector& amps, QuadratureSpec q) {
  return number_moments(amps).mean + 0.5 +
         std::real(std::polar(1.0, 2.0 * q.theta) * detail::raising_expectation(amps, 2));
}

template <FockState S>
double quadrature_mean(const S& state, QuadratureSpec q) {
  return quadrature_mean(state.amplitudes, q);
}

template <FockState S>
double quadrature_second_moment(const S& state, QuadratureSpec q) {
  return quadrature_second_moment(state.amplitudes, q);
}

enum class SnrMode {
  FinalMean,         // signal = <X>_f
  ShiftFromInitial,  // signal = <X>_f - <X>_i
};

inline const char* snr_mode_name(SnrMode m) {
  return m == SnrMode::FinalMean ? "final" : "shift";
}

struct SnrInput {
  std::size_t n_total = 1;
  double ps = 1.0;
  SnrMode mode = SnrMode::ShiftFromInitial;
};

/// sqrt(N P_s) |signal| / sqrt(<X^2>_f - <X>_f^2).
inline double snr(const PostSelectedPointer& final_state, const PointerState& initial, QuadratureSpec q,
                  const SnrInput& inp) {
  if (inp.n_total < 1) throw std::invalid_argument("snr: number of measurements must be positive");
  if (!(inp.ps > 0.0 && inp.ps <= 1.0)) throw std::invalid_argument("snr: P_s must lie in (0, 1]");
  const double mean_f = quadrature_mean(final_state, q);
  const double variance = quadrature_second_moment(final_state, q) - mean_f * mean_f;
  if (!(variance > 0.0)) {
    throw UndefinedQuantityError("snr: non-positive quadrature variance (truncation failure?)");
  }
  double signal = mean_f;
  if (inp.mode == SnrMode::ShiftFromInitial) signal -= quadrature_mean(initial, q);
  return std::sqrt(static_cast<double>(inp.n_total) * inp.ps) * std::abs(signal) / std::sqrt(variance);
}

// Printed closed forms --------------------------------------------------------

enum class ClosedFormQuantity { MeanN, MeanN2, QuadMean, QuadSecond };

inline const char* quantity_name(ClosedFormQuantity q) {
  switch (q) {
    case ClosedFormQuantity::MeanN: return "mean_n";
    case ClosedFormQuantity::MeanN2: return "mean_adag2_a2";
    case ClosedFormQuantity::QuadMean: return "quad_mean";
    case ClosedFormQuantity::QuadSecond: return "quad_second_moment";
  }
  return "unknown";
}

enum class ClosedFormStatus {
  Evaluated,
  IncompleteInSource,  // the printed expression is truncated; no value can be formed
  NotInSource,         // no closed form is given for this family/quantity
};

struct ClosedFormParams {
  PointerSpec pointer = CoherentSpec{};
  std::size_t m = 0;
  Complex modval{1.0, 0.0};
  QuadratureSpec quad{};
  std::size_t dim = kDefaultDim;
};

struct CrossCheckReport {
  std::string quantity;
  PointerFamily family = PointerFamily::Coherent;
  ClosedFormStatus status = ClosedFormStatus::Evaluated;
  double numeric = 0.0;
  double paper_closed_form = 0.0;
  double abs_discrepancy = 0.0;
};

namespace detail {

// x^k / k!, zero for negative k.
inline double power_over_factorial(double x, long k) {
  if (k < 0) return 0.0;
  double v = 1.0;
  for (long j = 1; j <= k; ++j) v *= x / static_cast<double>(j);
  return v;
}

inline Complex at(const ComplexVector& c, long n) {
  if (n < 0 || static_cast<std::size_t>(n) >= c.dim()) return 0.0;
  return c[static_cast<std::size_t>(n)];
}

inline double numeric_quantity(const ComplexVector& amps, ClosedFormQuantity q, QuadratureSpec quad) {
  switch (q) {
    case ClosedFormQuantity::MeanN: return number_moments(amps).mean;
    case ClosedFormQuantity::MeanN2: return number_moments(amps).factorial2;
    case ClosedFormQuantity::QuadMean: return quadrature_mean(amps, quad);
    case ClosedFormQuantity::QuadSecond: return quadrature_second_moment(amps, quad);
  }
  return 0.0;
}

inline double coherent_closed_form(const CoherentSpec& s, const ClosedFormParams& p, ClosedFormQuantity q) {
  const Complex alpha = s.alpha();
  const Complex ac = std::conj(alpha);
  const double a2 = std::norm(alpha);
  const long m = static_cast<long>(p.m);
  const Complex A = p.modval;
  const double A2 = std::norm(A);
  const double c_m2 = std::exp(-a2) * power_over_factorial(a2, m);
  const double d2 = 1.0 - c_m2 + c_m2 * A2;
  const double md = static_cast<double>(m);
  const Complex e1 = std::polar(1.0, p.quad.theta);
  const Complex e2 = std::polar(1.0, 2.0 * p.quad.theta);

  switch (q) {
    case ClosedFormQuantity::MeanN:
      return std::exp(-a2) / d2 * (a2 * std::exp(a2) - std::pow(a2, md) * md / std::tgamma(md + 1.0) * (1.0 - A2));
    case ClosedFormQuantity::MeanN2:
      return std::exp(-a2) / d2 *
             (a2 * a2 * std::exp(a2) - std::pow(a2, md) * md * (md - 1.0) / std::tgamma(md + 1.0) * (1.0 - A2));
    case ClosedFormQuantity::QuadMean: {
      // As printed: e^{|a|^2} sits outside the a* factor inside Re[...].
      const Complex braces = (A - 1.0) * power_over_factorial(a2, m) +
                             (std::conj(A) - 1.0) * power_over_factorial(a2, m - 1);
      return std::sqrt(2.0) * std::exp(-a2) / d2 * std::real(ac * braces * e1 + std::exp(a2));
    }
    case ClosedFormQuantity::QuadSecond: {
      const Complex bracket = std::exp(a2) + (A - 1.0) * power_over_factorial(a2, m) +
                              (std::conj(A) - 1.0) * power_over_factorial(a2, m - 2);
      return (a2 + c_m2 * (A2 - 1.0) * md) / d2 + 0.5 +
             std::real(ac * ac * std::exp(-a2) * e2 * bracket) / d2;
    }
  }
  return 0.0;
}

inline double squeezed_closed_form(const SqueezedSpec& s, const ClosedFormParams& p, ClosedFormQuantity q) {
  const ComplexVector beta = squeezed_state(s.alpha, s.r, s.theta_sq, p.dim).amplitudes;
  const Complex alpha = s.alpha;
  const Complex ac = std::conj(alpha);
  const double a2 = std::norm(alpha);
  const double sh = std::sinh(s.r);
  const double ch = std::cosh(s.r);
  const long m = static_cast<long>(p.m);
  const double md = static_cast<double>(m);
  const Complex A = p.modval;
  const double A2 = std::norm(A);
  const Complex bm = at(beta, m);
  const double eta2 = 1.0 - std::norm(bm) + std::norm(bm) * A2;
  const Complex e1 = std::polar(1.0, p.quad.theta);
  const Complex e2 = std::polar(1.0, 2.0 * p.quad.theta);

  switch (q) {
    case ClosedFormQuantity::MeanN:
      // As printed: no 1/eta^2 normalization.
      return a2 + sh * sh - std::norm(bm) * md * (1.0 - A2);
    case ClosedFormQuantity::MeanN2: {
      const double x = a2 + sh * sh;
      return std::norm(alpha * ch - ac * std::polar(1.0, s.theta_sq) * sh) + 2.0 * sh * sh * ch * ch +
             x * (1.0 + x) - std::norm(bm) * (1.0 - A2) * md * (md - 1.0);
    }
    case ClosedFormQuantity::QuadMean: {
      const Complex inner_sum = ac + (A - 1.0) * std::conj(at(beta, m + 1)) * bm * std::sqrt(md + 1.0) +
                                (std::conj(A) - 1.0) * std::conj(bm) * at(beta, m - 1) * std::sqrt(md);
      return std::sqrt(2.0) / eta2 * std::real(inner_sum * e1);
    }
    case ClosedFormQuantity::QuadSecond: {
      const double first = (a2 + sh * sh + std::norm(bm) * (A2 - 1.0) * md) / eta2 + 0.5;
      const double second =
          std::real((std::conj(A) - 1.0) * std::conj(bm) * at(beta, m - 2) * std::sqrt(md * (md - 1.0)) * e2) / eta2;
      const Complex third_sum = ac * ac - std::polar(1.0, -s.theta_sq) * sh * ch +
                                (A - 1.0) * std::conj(at(beta, m + 2)) * bm * std::sqrt((md + 1.0) * (md + 2.0));
      return first + second + std::real(third_sum * e2) / eta2;
    }
  }
  return 0.0;
}

inline double cat_closed_form_quad_mean(const CatSpec& s, const ClosedFormParams& p) {
  // Unnormalized cat coefficients (sqrt(n!) convention) and w^2 = N + |c_m|^2 (|A|^2 - 1).
  const double norm = cat_norm(s.alpha, s.phi_cat);
  ComplexVector c = cat_state(s.alpha, s.phi_cat, p.dim).amplitudes;
  c *= Complex{std::sqrt(norm), 0.0};
  const long m = static_cast<long>(p.m);
  const double md = static_cast<double>(m);
  const Complex A = p.modval;
  const Complex cm = at(c, m);
  const double w2 = norm + std::norm(cm) * (std::norm(A) - 1.0);
  const Complex ac = std::conj(s.alpha);
  const Complex braces = (A - 1.0) * std::conj(at(c, m + 1)) * cm * std::sqrt(md + 1.0) +
                         (std::conj(A) - 1.0) * std::conj(cm) * at(c, m - 1) * std::sqrt(md) +
                         ac * (2.0 + 2.0 * kI * std::sin(s.phi_cat) * std::exp(-2.0 * std::norm(s.alpha)));
  return 2.0 / (std::sqrt(2.0) * w2) * std::real(braces * std::polar(1.0, p.quad.theta));
}

}  // namespace detail

/// Evaluate a printed closed-form moment and compare it with the numeric pipeline.
///
/// The numeric side is the matrix-element evaluation on the closed-form final pointer for the
/// same family, projector level and modular value. Printed expressions are evaluated as they
/// stand; disagreements are reported, never corrected.
inline CrossCheckReport paper_closed_forms(const ClosedFormParams& p, ClosedFormQuantity q) {
  CrossCheckReport rep;
  rep.quantity = quantity_name(q);
  rep.family = family_of(p.pointer);
  if (rep.family == PointerFamily::Custom) {
    throw std::invalid_argument("paper_closed_forms: no closed forms for custom pointers");
  }
  if (p.m + 3 > p.dim) throw std::invalid_argument("paper_closed_forms: dim must be at least m + 3");

  // Final pointer with the requested modular value scaling level m.
  const PointerState initial = make_pointer(p.pointer, p.dim);
  ComplexVector amps = initial.amplitudes;
  amps[p.m] *= p.modval;
  amps *= Complex{1.0 / std::sqrt(amps.norm_squared()), 0.0};
  rep.numeric = detail::numeric_quantity(amps, q, p.quad);

  if (const auto* c = std::get_if<CoherentSpec>(&p.pointer)) {
    rep.paper_closed_form = detail::coherent_closed_form(*c, p, q);
  } else if (const auto* s = std::get_if<SqueezedSpec>(&p.pointer)) {
    rep.paper_closed_form = detail::squeezed_closed_form(*s, p, q);
  } else {
    const auto& cat = std::get<CatSpec>(p.pointer);
    switch (q) {
      case ClosedFormQuantity::MeanN:
      case ClosedFormQuantity::MeanN2:
        rep.status = ClosedFormStatus::NotInSource;
        return rep;
      case ClosedFormQuantity::QuadSecond:
        rep.status = ClosedFormStatus::IncompleteInSource;
        return rep;
      case ClosedFormQuantity::QuadMean:
        rep.paper_closed_form = detail::cat_closed_form_quad_mean(cat, p);
        break;
    }
  }
  rep.abs_discrepancy = std::abs(rep.numeric - rep.paper_closed_form);
  return rep;
}

/// The conditional photon-number probability exactly as printed, with c_m and c_n
/// interchanged between the branches. Kept only to quantify the misprint.
inline double printed_conditional_probability(const ComplexVector& c, std::size_t n, std::size_t m, Complex modval) {
  const double cn2 = std::norm(c[n]);
  const double denom = 1.0 - cn2 + cn2 * std::norm(modval);
  if (n != m) return std::norm(c[m]) / denom;
  return cn2 * std::norm(modval) / denom;
}

/// p(n) of the normalized final pointer: |c_n|^2/delta^2 off level m, |c_m|^2 |A|^2/delta^2 on it.
inline double conditional_probability(const ComplexVector& c, std::size_t n, std::size_t m, Complex modval) {
  const double d2 = std::pow(delta_formula(c[m], modval), 2);
  const double cn2 = std::norm(c[n]);
  return n == m ? cn2 * std::norm(modval) / d2 : cn2 / d2;
}

}  // namespace modval
