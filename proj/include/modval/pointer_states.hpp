#pragma once

// Pointer states of a single bosonic mode in a truncated Fock basis.

#include <cmath>
#include <cstddef>
#include <string>
#include <type_traits>
#include <variant>

#include "modval/errors.hpp"
#include "modval/numerics.hpp"

namespace modval {

/// Default ceiling on the probability mass allowed above the Fock cutoff.
inline constexpr double kDefaultLeakTol = 1e-10;
inline constexpr std::size_t kDefaultDim = 64;

struct CoherentSpec {
  double gamma = 0.0;  // |alpha|
  double phi = 0.0;    // arg alpha
  Complex alpha() const { return std::polar(gamma, phi); }
};

struct SqueezedSpec {
  Complex alpha{};
  double r = 0.0;
  double theta_sq = 0.0;
};

struct CatSpec {
  Complex alpha{};
  double phi_cat = 0.0;
};

struct CustomSpec {
  ComplexVector amplitudes;
};

using PointerSpec = std::variant<CoherentSpec, SqueezedSpec, CatSpec, CustomSpec>;

enum class PointerFamily { Coherent, Squeezed, Cat, Custom };

inline PointerFamily family_of(const PointerSpec& spec) {
  return static_cast<PointerFamily>(spec.index());
}

inline const char* family_name(PointerFamily f) {
  switch (f) {
    case PointerFamily::Coherent: return "coherent";
    case PointerFamily::Squeezed: return "squeezed";
    case PointerFamily::Cat: return "cat";
    case PointerFamily::Custom: return "custom";
  }
  return "unknown";
}

/// Fock amplitudes c_0..c_{dim-1} of a pointer together with how they were built.
struct PointerState {
  ComplexVector amplitudes;
  PointerSpec spec;
  double truncation_leak = 0.0;  // 1 - sum |c_n|^2

  std::size_t dim() const noexcept { return amplitudes.dim(); }
};

namespace detail {

inline PointerState finish(ComplexVector amps, PointerSpec spec, double leak_tol) {
  const double leak = 1.0 - amps.norm_squared();
  if (leak > leak_tol) {
    throw TruncationError("Fock cutoff dim=" + std::to_string(amps.dim()) +
                              " too small: truncation leak " + std::to_string(leak) +
                              " exceeds tolerance",
                          leak);
  }
  return PointerState{std::move(amps), std::move(spec), leak};
}

inline void require_dim(std::size_t dim) {
  if (dim < 1) throw std::invalid_argument("pointer dimension must be at least 1");
}

// c_n = e^{-|a|^2/2} a^n / sqrt(n!) by the ratio c_n = c_{n-1} a / sqrt(n).
inline ComplexVector coherent_amplitudes(Complex alpha, std::size_t dim) {
  ComplexVector c(dim);
  c[0] = std::exp(-0.5 * std::norm(alpha));
  for (std::size_t n = 1; n < dim; ++n) c[n] = c[n - 1] * alpha / std::sqrt(static_cast<double>(n));
  return c;
}

}  // namespace detail

/// Coherent state |alpha>, alpha = gamma e^{i phi}.
inline PointerState coherent_state(double gamma, double phi, std::size_t dim,
                                   double leak_tol = kDefaultLeakTol) {
  if (gamma < 0.0) throw std::invalid_argument("coherent_state: gamma must be non-negative");
  detail::require_dim(dim);
  const CoherentSpec spec{gamma, phi};
  return detail::finish(detail::coherent_amplitudes(spec.alpha(), dim), spec, leak_tol);
}

/// Displaced squeezed vacuum D(alpha) S(xi)|0>, xi = r e^{i theta_sq}.
///
/// The closed form is beta_n = K (e^{i theta} tanh r / 2)^{n/2} / sqrt(n!) H_n(gamma u) with
/// u = (e^{i theta} sinh 2r)^{-1/2} and gamma = alpha cosh r + alpha* e^{i theta} sinh r. Writing
/// h_n = s^n H_n(gamma u) / sqrt(n!), s = (e^{i theta} tanh r / 2)^{1/2}, the Hermite recurrence
/// becomes
///   h_{n+1} = (gamma / cosh r * h_n - e^{i theta} tanh r * sqrt(n) * h_{n-1}) / sqrt(n+1),
/// because s u = 1 / (2 cosh r) on the principal branch. This form has no factorials and no
/// 1/sqrt(sinh 2r) blow-up as r -> 0. The r == 0 case is dispatched to coherent_state anyway.
inline PointerState squeezed_state(Complex alpha, double r, double theta_sq, std::size_t dim,
                                   double leak_tol = kDefaultLeakTol) {
  if (r < 0.0) throw std::invalid_argument("squeezed_state: r must be non-negative");
  detail::require_dim(dim);
  const SqueezedSpec spec{alpha, r, theta_sq};
  if (r == 0.0) {
    return detail::finish(detail::coherent_amplitudes(alpha, dim), spec, leak_tol);
  }

  const double ch = std::cosh(r);
  const double th = std::tanh(r);
  const Complex rot = std::polar(1.0, theta_sq);
  const Complex gamma = alpha * ch + std::conj(alpha) * rot * std::sinh(r);
  const Complex prefactor =
      std::exp(-0.5 * std::norm(alpha) - 0.5 * std::conj(alpha) * std::conj(alpha) * rot * th) /
      std::sqrt(ch);

  ComplexVector h(dim);
  h[0] = 1.0;
  if (dim > 1) h[1] = gamma / ch;
  for (std::size_t n = 1; n + 1 < dim; ++n) {
    const double dn = static_cast<double>(n);
    h[n + 1] = (gamma / ch * h[n] - rot * th * std::sqrt(dn) * h[n - 1]) / std::sqrt(dn + 1.0);
  }
  h *= prefactor;
  return detail::finish(std::move(h), spec, leak_tol);
}

/// Verbatim evaluation of the squeezed-coherent Fock coefficient through hermite().
/// Only usable for moderate n (the powers and factorials are formed explicitly).
inline Complex squeezed_coefficient_direct(Complex alpha, double r, double theta_sq, unsigned n) {
  if (!(r > 0.0)) throw std::invalid_argument("squeezed_coefficient_direct: needs r > 0");
  const double ch = std::cosh(r);
  const double th = std::tanh(r);
  const Complex rot = std::polar(1.0, theta_sq);
  const Complex gamma = alpha * ch + std::conj(alpha) * rot * std::sinh(r);
  const Complex lead =
      std::exp(-0.5 * std::norm(alpha) - 0.5 * std::conj(alpha) * std::conj(alpha) * rot * th) /
      std::sqrt(ch);
  const Complex s = std::sqrt(0.5 * rot * th);
  const Complex arg = gamma / std::sqrt(rot * std::sinh(2.0 * r));
  return lead * std::pow(s, static_cast<double>(n)) / std::sqrt(std::tgamma(n + 1.0)) *
         hermite(n, arg);
}

/// Normalization constant of the cat state |alpha> + e^{i phi}|-alpha>.
inline double cat_norm(Complex alpha, double phi_cat) {
  return 2.0 + 2.0 * std::exp(-2.0 * std::norm(alpha)) * std::cos(phi_cat);
}

/// Normalized cat state N^{-1/2} (|alpha> + e^{i phi_cat} |-alpha>).
inline PointerState cat_state(Complex alpha, double phi_cat, std::size_t dim,
                              double leak_tol = kDefaultLeakTol) {
  detail::require_dim(dim);
  const double norm = cat_norm(alpha, phi_cat);
  if (!(norm > 1e-300)) {
    throw std::invalid_argument("cat_state: zero-norm superposition (alpha=0, phi_cat=pi)");
  }
  ComplexVector c = detail::coherent_amplitudes(alpha, dim);
  const Complex rel = std::polar(1.0, phi_cat);
  const double scale = 1.0 / std::sqrt(norm);
  for (std::size_t n = 0; n < dim; ++n) {
    const Complex branch = (n % 2 == 0) ? 1.0 + rel : 1.0 - rel;
    c[n] *= branch * scale;
  }
  return detail::finish(std::move(c), CatSpec{alpha, phi_cat}, leak_tol);
}

/// Wraps user-provided amplitudes; they must already be normalized up to leak_tol.
inline PointerState custom_state(ComplexVector amplitudes, double leak_tol = kDefaultLeakTol) {
  detail::require_dim(amplitudes.dim());
  const double n2 = amplitudes.norm_squared();
  if (n2 > 1.0 + leak_tol) throw std::invalid_argument("custom_state: norm exceeds one");
  CustomSpec spec{amplitudes};
  return detail::finish(std::move(amplitudes), std::move(spec), leak_tol);
}

/// Build a pointer from its spec at the given cutoff.
inline PointerState make_pointer(const PointerSpec& spec, std::size_t dim,
                                 double leak_tol = kDefaultLeakTol) {
  return std::visit(
      [&](const auto& s) -> PointerState {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, CoherentSpec>) {
          return coherent_state(s.gamma, s.phi, dim, leak_tol);
        } else if constexpr (std::is_same_v<T, SqueezedSpec>) {
          return squeezed_state(s.alpha, s.r, s.theta_sq, dim, leak_tol);
        } else if constexpr (std::is_same_v<T, CatSpec>) {
          return cat_state(s.alpha, s.phi_cat, dim, leak_tol);
        } else {
          if (s.amplitudes.dim() != dim) {
            throw std::invalid_argument("make_pointer: custom amplitudes do not match dim");
          }
          return custom_state(s.amplitudes, leak_tol);
        }
      },
      spec);
}

/// Fock state |k> in a dim-level space.
inline PointerState fock_state(std::size_t k, std::size_t dim) {
  if (k >= dim) throw std::invalid_argument("fock_state: level outside truncation");
  ComplexVector c(dim);
  c[k] = 1.0;
  return custom_state(std::move(c));
}

// Ladder operators ---------------------------------------------------------

inline ComplexMatrix annihilation_op(std::size_t dim) {
  ComplexMatrix a(dim, dim);
  for (std::size_t n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

inline ComplexMatrix creation_op(std::size_t dim) { return annihilation_op(dim).adjoint(); }

inline ComplexMatrix number_op(std::size_t dim) {
  ComplexMatrix n(dim, dim);
  for (std::size_t k = 0; k < dim; ++k) n(k, k) = static_cast<double>(k);
  return n;
}

/// X_theta = (a e^{-i theta} + a^dagger e^{i theta}) / sqrt(2).
inline ComplexMatrix quadrature_op(double theta, std::size_t dim) {
  const auto a = annihilation_op(dim);
  const auto ad = creation_op(dim);
  return (a * std::polar(1.0, -theta) + ad * std::polar(1.0, theta)) * Complex{1.0 / std::sqrt(2.0), 0.0};
}

/// Projector |m><m|.
inline ComplexMatrix projector(std::size_t m, std::size_t dim) {
  if (m >= dim) throw std::invalid_argument("projector: level outside truncation");
  ComplexMatrix p(dim, dim);
  p(m, m) = 1.0;
  return p;
}

/// D(alpha) = exp(alpha a^dagger - alpha* a), truncated at dim.
inline ComplexMatrix displacement_op(Complex alpha, std::size_t dim, double tol = kDefaultExpTol) {
  if (dim < 2) throw std::invalid_argument("displacement_op: dim must be at least 2");
  const auto a = annihilation_op(dim);
  const auto ad = creation_op(dim);
  return mat_exp(ad * alpha - a * std::conj(alpha), tol);
}

/// S(xi) = exp((xi* a^2 - xi a^dagger^2) / 2), xi = r e^{i theta_sq}, truncated at dim.
inline ComplexMatrix squeeze_op(double r, double theta_sq, std::size_t dim, double tol = kDefaultExpTol) {
  if (dim < 2) throw std::invalid_argument("squeeze_op: dim must be at least 2");
  const Complex xi = std::polar(r, theta_sq);
  const auto a = annihilation_op(dim);
  const auto ad = creation_op(dim);
  return mat_exp((a * a * std::conj(xi) - ad * ad * xi) * Complex{0.5, 0.0}, tol);
}

}  // namespace modval
