#include <gtest/gtest.h>

#include <random>

#include "modval/qubit_system.hpp"

using namespace modval;

TEST(WeakValue, PreSelectedOnUp) {
  EXPECT_EQ(weak_value({0.0, 1.0, 0.5}), Complex(0.0));
}

TEST(WeakValue, QuarterTurnGivesI) {
  const Complex w = weak_value({kPi / 4.0, kPi / 2.0, 0.3});
  EXPECT_NEAR(std::abs(w - kI), 0.0, 1e-15);
}

TEST(WeakValue, MatchesPhaseTimesTangent) {
  for (double t = 0.0; t < 1.5; t += 0.05)
    for (double p = 0.0; p < 2.0 * kPi; p += 0.3) {
      const SelectionConfig sel{t, p, 1.0};
      EXPECT_LT(std::abs(weak_value(sel) - std::polar(std::tan(t), p)), 1e-14);
    }
}

TEST(WeakValue, OrthogonalSelectionIsAnError) {
  EXPECT_THROW(weak_value({kPi / 2.0, 0.0, 1.0}), std::domain_error);
  EXPECT_THROW(modular_value({kPi / 2.0, 0.0, 1.0}), std::domain_error);
}

TEST(ModularValue, NoCouplingIsOne) {
  EXPECT_LT(std::abs(modular_value({0.7, 1.1, 0.0}) - 1.0), 1e-15);
}

TEST(ModularValue, TangentConvention) {
  const Complex mv = modular_value({std::atan(5.0), kPi / 2.0, kPi / 2.0});
  EXPECT_NEAR(mv.real(), 5.0, 1e-12);
  EXPECT_NEAR(mv.imag(), 0.0, 1e-12);
  EXPECT_NEAR(std::tan(theta1_for_modval(20.0)), 20.0, 1e-12);
}

TEST(ModularValue, AgreesWithWeakValueRelationOnGrid) {
  for (int i = 0; i < 20; ++i)
    for (int j = 0; j < 20; ++j)
      for (int k = 0; k < 20; ++k) {
        const SelectionConfig sel{1.5 * i / 19.0, 2.0 * kPi * j / 20.0, kPi * k / 19.0};
        const Complex via_weak = modular_from_weak(weak_value(sel), sel.g, ObservableKind::Involutory);
        ASSERT_LT(std::abs(modular_value(sel) - via_weak), 1e-12) << i << "," << j << "," << k;
      }
}

TEST(ModularFromWeak, SpecialCases) {
  EXPECT_EQ(modular_from_weak(Complex{0.3, 2.0}, 0.0, ObservableKind::Idempotent), Complex(1.0));
  EXPECT_EQ(modular_from_weak(Complex{0.3, 2.0}, 0.0, ObservableKind::Involutory), Complex(1.0));
  EXPECT_NEAR(std::abs(modular_from_weak(1.0, kPi, ObservableKind::Idempotent) - (-1.0)), 0.0, 1e-15);
}

TEST(ModularFromWeak, MatchesOracleOnRandomConfigs) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const SelectionConfig sel{1.5 * u(rng), 2.0 * kPi * u(rng), 3.0 * kPi * u(rng)};
    EXPECT_LT(std::abs(modular_value(sel) - modular_from_weak(weak_value(sel), sel.g, ObservableKind::Involutory)),
              1e-12);
  }
}

TEST(GeneralizedModularFactor, KroneckerDelta) {
  EXPECT_EQ(generalized_modular_factor(3, 3, 5.0), Complex(5.0));
  EXPECT_EQ(generalized_modular_factor(2, 3, Complex{7.0, 1.0}), Complex(1.0));
  EXPECT_LT(std::abs(generalized_modular_factor(4, 4, modular_value({0.4, 0.2, 0.0})) - 1.0), 1e-15);
}

TEST(Selection, PreStateNormAndOverlap) {
  for (double t = 0.0; t <= kPi; t += 0.1)
    for (double p = 0.0; p < 2.0 * kPi; p += 0.5) {
      const SelectionConfig sel{t, p, 1.0};
      EXPECT_NEAR(pre_state(sel).norm_squared(), 1.0, 1e-12);
      EXPECT_NEAR(std::abs(selection_overlap(sel) - std::cos(t)), 0.0, 1e-15);
    }
}

TEST(ModularValue, GrowsTowardOrthogonality) {
  double prev = 0.0;
  for (double t = 0.05; t < kPi / 2.0 - 1e-3; t += 0.05) {
    const double mag = std::abs(modular_value({t, kPi / 2.0, kPi / 2.0}));
    EXPECT_GT(mag, prev);
    prev = mag;
  }
  EXPECT_GT(prev, 10.0);
}
