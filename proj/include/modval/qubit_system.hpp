#pragma once

// The measured spin-1/2 system: pre/post-selection, sigma_x, weak and modular values.

#include <cmath>
#include <cstddef>

#include "modval/numerics.hpp"

namespace modval {

/// Amplitudes on |up_z>, |down_z>.
struct QubitState {
  Complex up{1.0, 0.0};
  Complex down{};

  ComplexVector as_vector() const { return ComplexVector{up, down}; }
  double norm_squared() const { return std::norm(up) + std::norm(down); }
};

/// Pre-selection angles and coupling strength. Post-selection is fixed to |up_z>.
struct SelectionConfig {
  double theta1 = 0.0;
  double phi1 = kPi / 2.0;
  double g = kPi / 2.0;
};

/// cos(theta1)|up> + e^{i phi1} sin(theta1)|down>.
inline QubitState pre_state(const SelectionConfig& sel) {
  return QubitState{Complex{std::cos(sel.theta1), 0.0}, std::polar(std::sin(sel.theta1), sel.phi1)};
}

inline QubitState post_state(const SelectionConfig&) { return QubitState{}; }

inline ComplexMatrix sigma_x() { return ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}}; }

/// <psi_f|psi_i>.
inline Complex selection_overlap(const SelectionConfig& sel) {
  return inner(post_state(sel).as_vector(), pre_state(sel).as_vector());
}

namespace detail {

inline Complex overlap_or_throw(const SelectionConfig& sel) {
  const Complex ov = selection_overlap(sel);
  if (std::abs(ov) < 1e-15) {
    throw std::domain_error(
        "pre- and post-selected states are orthogonal (cos theta1 = 0); weak and modular values "
        "are undefined");
  }
  return ov;
}

}  // namespace detail

/// <psi_f|sigma_x|psi_i> / <psi_f|psi_i>.
inline Complex weak_value(const SelectionConfig& sel) {
  const Complex ov = detail::overlap_or_throw(sel);
  const Complex num = inner(post_state(sel).as_vector(), sigma_x() * pre_state(sel).as_vector());
  return checked_div(num, ov);
}

/// e^{-i g sigma_x} on the qubit.
inline ComplexMatrix qubit_evolution(double g, double tol = kDefaultExpTol) {
  return mat_exp(sigma_x() * Complex{0.0, -g}, tol);
}

/// <psi_f|e^{-i g sigma_x}|psi_i> / <psi_f|psi_i>, evaluated through mat_exp.
inline Complex modular_value(const SelectionConfig& sel, double tol = kDefaultExpTol) {
  const Complex ov = detail::overlap_or_throw(sel);
  const Complex num = inner(post_state(sel).as_vector(), qubit_evolution(sel.g, tol) * pre_state(sel).as_vector());
  return checked_div(num, ov);
}

enum class ObservableKind {
  Idempotent,  // A^2 = A
  Involutory,  // A^2 = I
};

/// Modular value expressed through the weak value for the two special observable classes.
inline Complex modular_from_weak(Complex weak, double g, ObservableKind kind) {
  switch (kind) {
    case ObservableKind::Idempotent:
      return 1.0 - weak + std::polar(1.0, -g) * weak;
    case ObservableKind::Involutory:
      return std::cos(g) - kI * weak * std::sin(g);
  }
  return 1.0;
}

/// Per-level factor: the modular value on the projector level m, identity elsewhere.
inline Complex generalized_modular_factor(std::size_t n, std::size_t m, Complex modval) {
  return n == m ? modval : Complex{1.0, 0.0};
}

/// theta1 that yields a real positive modular value `modval` when g = phi1 = pi/2.
inline double theta1_for_modval(double modval) {
  if (modval < 0.0) throw std::invalid_argument("theta1_for_modval: modular value must be non-negative");
  return std::atan(modval);
}

/// Selection with g = phi1 = pi/2 and (A)_mod = tan(theta1) = modval.
inline SelectionConfig selection_for_modval(double modval) {
  return SelectionConfig{theta1_for_modval(modval), kPi / 2.0, kPi / 2.0};
}

}  // namespace modval
