#pragma once

// Randomized agreement check between the closed-form final pointer and exact joint evolution.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "modval/measurement.hpp"
#include "modval/pointer_states.hpp"

namespace modval {

struct OracleCheckResult {
  std::size_t configs = 0;
  std::size_t failures = 0;
  double max_deviation = 0.0;
  double max_ps_deviation = 0.0;  // |ps_exact(oracle) - cos^2 theta1 delta^2|
};

/// Random configuration spanning all three pointer families, g in [0, pi], m in 0..10,
/// theta1 in [0, 1.5]. Parameter ranges keep the truncation leak below tolerance at dim 64.
inline MeasurementConfig random_config(std::mt19937_64& rng, std::size_t index, std::size_t dim = kDefaultDim) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  MeasurementConfig cfg;
  cfg.dim = dim;
  cfg.sel = SelectionConfig{1.5 * unit(rng), 2.0 * kPi * unit(rng), kPi * unit(rng)};
  cfg.m = static_cast<std::size_t>(std::uniform_int_distribution<int>(0, 10)(rng));
  const Complex alpha = std::polar(1.5 * unit(rng), 2.0 * kPi * unit(rng));
  switch (index % 3) {
    case 0: cfg.pointer = CoherentSpec{3.0 * unit(rng), 2.0 * kPi * unit(rng)}; break;
    case 1: cfg.pointer = SqueezedSpec{alpha, 0.8 * unit(rng), 2.0 * kPi * unit(rng)}; break;
    default: cfg.pointer = CatSpec{alpha * (2.0 / 1.5), 2.0 * kPi * unit(rng)}; break;
  }
  return cfg;
}

inline OracleCheckResult run_oracle_equivalence(std::size_t count = 200, std::uint64_t seed = 20240611,
                                                double tol = 1e-9, std::size_t dim = kDefaultDim) {
  std::mt19937_64 rng(seed);
  OracleCheckResult res;
  for (std::size_t i = 0; i < count; ++i) {
    const MeasurementConfig cfg = random_config(rng, i, dim);
    const PointerState pointer = make_pointer(cfg.pointer, cfg.dim, cfg.leak_tol);
    const auto analytic = final_pointer_analytic(cfg, pointer);
    const auto oracle = final_pointer_oracle(cfg, pointer);
    const double dev = max_deviation_up_to_phase(analytic.amplitudes, oracle.amplitudes);
    const double ps_dev = std::abs(oracle.ps_exact - analytic.ps_exact);
    res.max_deviation = std::max(res.max_deviation, dev);
    res.max_ps_deviation = std::max(res.max_ps_deviation, ps_dev);
    ++res.configs;
    if (dev > tol || ps_dev > tol) ++res.failures;
  }
  return res;
}

}  // namespace modval
