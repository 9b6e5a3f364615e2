#pragma once

// Post-selected final pointer states: the closed-form route and exact joint evolution.

#include <cmath>
#include <cstddef>
#include <string>

#include "modval/errors.hpp"
#include "modval/numerics.hpp"
#include "modval/pointer_states.hpp"
#include "modval/qubit_system.hpp"

namespace modval {

inline constexpr double kDefaultPsFloor = 1e-12;

struct MeasurementConfig {
  SelectionConfig sel;
  PointerSpec pointer = CoherentSpec{};
  std::size_t m = 0;  // projector level, P = |m><m|
  std::size_t dim = kDefaultDim;
  double leak_tol = kDefaultLeakTol;
};

struct PostSelectedPointer {
  ComplexVector amplitudes;  // unit norm
  double delta = 1.0;        // normalization of the scaled pointer
  double ps_exact = 0.0;     // |<psi_f|psi_i>|^2 delta^2
  double ps_paper = 0.0;     // cos^2 theta1
  Complex modval{1.0, 0.0};
  double truncation_leak = 0.0;

  std::size_t dim() const noexcept { return amplitudes.dim(); }
};

struct PostSelectionProbability {
  double ps_exact = 0.0;
  double ps_paper = 0.0;
};

struct OracleOptions {
  double ps_floor = kDefaultPsFloor;
  /// Also build U = exp(-i g sigma_x (x) P) with mat_exp and require agreement with the
  /// projector closed form.
  bool cross_check_exponential = true;
  double cross_check_tol = 1e-10;
  double exp_tol = kDefaultExpTol;
};

/// Normalization [1 - |c_m|^2 + |c_m|^2 |modval|^2]^{1/2} for a unit-norm pointer.
inline double delta_formula(Complex c_m, Complex modval) {
  const double p = std::norm(c_m);
  return std::sqrt(1.0 - p + p * std::norm(modval));
}

namespace detail {

inline void validate_level(std::size_t m, std::size_t dim) {
  if (m >= dim) {
    throw std::invalid_argument("projector level m=" + std::to_string(m) +
                                " must be below the truncation dim=" + std::to_string(dim));
  }
}

inline void validate(const MeasurementConfig& cfg, const PointerState& pointer) {
  validate_level(cfg.m, pointer.dim());
}

}  // namespace detail

/// Scale level m of the pointer by the modular value and renormalize.
///
/// delta is taken from the in-truncation norm, sum_n |c_n|^2 - |c_m|^2 + |c_m|^2 |modval|^2,
/// which equals delta_formula() whenever the pointer is normalized.
inline PostSelectedPointer final_pointer_analytic(const MeasurementConfig& cfg, const PointerState& pointer,
                                                  double ps_floor = kDefaultPsFloor) {
  detail::validate(cfg, pointer);
  const Complex modval = modular_value(cfg.sel);
  const Complex overlap = selection_overlap(cfg.sel);

  ComplexVector amps = pointer.amplitudes;
  for (std::size_t n = 0; n < amps.dim(); ++n) amps[n] *= generalized_modular_factor(n, cfg.m, modval);
  const double delta2 = amps.norm_squared();
  if (!(delta2 > 0.0) || std::norm(overlap) * delta2 < ps_floor) {
    throw PostSelectionError("post-selection failed: probability " +
                             std::to_string(std::norm(overlap) * delta2) + " below floor");
  }
  const double delta = std::sqrt(delta2);
  amps *= Complex{1.0 / delta, 0.0};

  PostSelectedPointer out;
  out.amplitudes = std::move(amps);
  out.delta = delta;
  out.ps_exact = std::norm(overlap) * delta2;
  out.ps_paper = std::norm(overlap);
  out.modval = modval;
  out.truncation_leak = pointer.truncation_leak;
  return out;
}

inline PostSelectedPointer final_pointer_analytic(const MeasurementConfig& cfg) {
  detail::validate_level(cfg.m, cfg.dim);
  return final_pointer_analytic(cfg, make_pointer(cfg.pointer, cfg.dim, cfg.leak_tol));
}

/// U = I (x) I + (e^{-i g sigma_x} - I) (x) |m><m|, exact because P^k = P.
inline ComplexMatrix joint_unitary(double g, std::size_t m, std::size_t dim, double tol = kDefaultExpTol) {
  const ComplexMatrix e = qubit_evolution(g, tol);
  return ComplexMatrix::identity(2 * dim) + kron(e - ComplexMatrix::identity(2), projector(m, dim));
}

/// exp(-i g sigma_x (x) |m><m|) straight from the matrix exponential.
inline ComplexMatrix joint_unitary_by_exponential(double g, std::size_t m, std::size_t dim,
                                                  double tol = kDefaultExpTol) {
  return mat_exp(kron(sigma_x(), projector(m, dim)) * Complex{0.0, -g}, tol);
}

/// U (|psi_i> (x) |phi>), system index major.
inline ComplexVector joint_evolution(const MeasurementConfig& cfg, const PointerState& pointer,
                                     const OracleOptions& opts = {}) {
  detail::validate(cfg, pointer);
  const std::size_t dim = pointer.dim();
  const ComplexMatrix u = joint_unitary(cfg.sel.g, cfg.m, dim, opts.exp_tol);
  if (opts.cross_check_exponential) {
    const double dev = max_abs_diff(u, joint_unitary_by_exponential(cfg.sel.g, cfg.m, dim, opts.exp_tol));
    if (dev > opts.cross_check_tol) {
      throw std::logic_error("joint unitary closed form disagrees with mat_exp by " + std::to_string(dev));
    }
  }
  return u * kron(pre_state(cfg.sel).as_vector(), pointer.amplitudes);
}

/// Final pointer by exact joint evolution followed by projection onto <psi_f|.
inline PostSelectedPointer final_pointer_oracle(const MeasurementConfig& cfg, const PointerState& pointer,
                                                const OracleOptions& opts = {}) {
  const Complex modval = modular_value(cfg.sel, opts.exp_tol);
  const Complex overlap = selection_overlap(cfg.sel);
  const ComplexVector joint = joint_evolution(cfg, pointer, opts);

  const std::size_t dim = pointer.dim();
  const ComplexVector post = post_state(cfg.sel).as_vector();
  ComplexVector projected(dim);
  for (std::size_t n = 0; n < dim; ++n) {
    projected[n] = std::conj(post[0]) * joint[n] + std::conj(post[1]) * joint[dim + n];
  }
  const double ps = projected.norm_squared();
  if (ps < opts.ps_floor) {
    throw PostSelectionError("post-selection failed: probability " + std::to_string(ps) + " below floor");
  }
  projected *= Complex{1.0 / std::sqrt(ps), 0.0};

  PostSelectedPointer out;
  out.amplitudes = std::move(projected);
  out.ps_exact = ps;
  out.ps_paper = std::norm(overlap);
  out.delta = std::sqrt(ps / out.ps_paper);
  out.modval = modval;
  out.truncation_leak = pointer.truncation_leak;
  return out;
}

inline PostSelectedPointer final_pointer_oracle(const MeasurementConfig& cfg, const OracleOptions& opts = {}) {
  detail::validate_level(cfg.m, cfg.dim);
  return final_pointer_oracle(cfg, make_pointer(cfg.pointer, cfg.dim, cfg.leak_tol), opts);
}

inline PostSelectionProbability post_selection_probability(const MeasurementConfig& cfg,
                                                           const OracleOptions& opts = {}) {
  const auto fin = final_pointer_oracle(cfg, opts);
  return {fin.ps_exact, fin.ps_paper};
}

/// Rotate so the largest-magnitude entry is real and positive. Near-ties (relative 1e-9)
/// resolve to the lowest index so rounding noise cannot pick different anchors.
inline ComplexVector align_global_phase(ComplexVector v) {
  if (v.dim() == 0) return v;
  double peak = 0.0;
  for (const auto& c : v) peak = std::max(peak, std::abs(c));
  if (peak == 0.0) return v;
  std::size_t best = 0;
  while (std::abs(v[best]) < peak * (1.0 - 1e-9)) ++best;
  v *= std::conj(v[best]) / std::abs(v[best]);
  return v;
}

/// Amplitude-wise deviation after quotienting out the global phase.
inline double max_deviation_up_to_phase(const ComplexVector& a, const ComplexVector& b) {
  return max_abs_diff(align_global_phase(a), align_global_phase(b));
}

}  // namespace modval
