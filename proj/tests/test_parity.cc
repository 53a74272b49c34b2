#include "loqc/parity.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <vector>

namespace parity = loqc::parity;
using parity::Amp;
using parity::EncodedQubit;
using parity::QubitRegister;

namespace {

constexpr double kInvSqrt2 = 0.7071067811865476;

double fidelity(const QubitRegister& a, const QubitRegister& b) {
  return std::abs(inner_product(a, b));
}

std::array<Amp, 2> random_logical(loqc::rng::Prng& prng) {
  const double theta = prng.uniform() * 3.14159265358979;
  const double phi = prng.uniform() * 6.28318530717959;
  return {Amp{std::cos(theta / 2), 0.0},
          std::polar(std::sin(theta / 2), phi)};
}

}  // namespace

TEST(parity, encode_logical_two_qubit_code) {
  const auto q = parity::encode_logical({0.6, 0.0}, {0.0, 0.8}, 2);
  EXPECT_NEAR(q.reg.amplitude(0b00).real(), 0.6 * kInvSqrt2, 1e-14);
  EXPECT_NEAR(q.reg.amplitude(0b11).real(), 0.6 * kInvSqrt2, 1e-14);
  EXPECT_NEAR(q.reg.amplitude(0b01).imag(), 0.8 * kInvSqrt2, 1e-14);
  EXPECT_NEAR(q.reg.amplitude(0b10).imag(), 0.8 * kInvSqrt2, 1e-14);
}

TEST(parity, encode_logical_width_one_and_uniform_case) {
  const auto q = parity::encode_logical({1.0, 0.0}, {0.0, 0.0}, 1);
  EXPECT_NEAR(std::abs(q.reg.amplitude(0)), 1.0, 1e-14);
  const auto u =
      parity::encode_logical({kInvSqrt2, 0.0}, {kInvSqrt2, 0.0}, 3);
  for (std::size_t s = 0; s < 8; ++s)
    EXPECT_NEAR(u.reg.amplitude(s).real(), 1.0 / std::sqrt(8.0), 1e-14);
}

TEST(parity, encode_logical_rejects_unnormalised) {
  EXPECT_THROW(parity::encode_logical({1.0, 0.0}, {0.5, 0.0}, 2),
               std::invalid_argument);
}

TEST(parity, encoder_step_equals_direct_encoding) {
  loqc::rng::Prng prng(99);
  for (int w = 1; w <= 7; ++w) {
    const auto logical = random_logical(prng);
    const auto base = parity::encode_logical(logical[0], logical[1], w);
    for (int target : {0, w - 1}) {
      const auto grown = parity::encoder_step(base, target);
      const auto direct = parity::encode_logical(logical[0], logical[1], w + 1);
      EXPECT_NEAR(fidelity(grown.reg, direct.reg), 1.0, 1e-10);
      EXPECT_EQ(grown.width, w + 1);
    }
  }
}

TEST(parity, encoder_step_preserves_readout) {
  const auto base = parity::encode_logical({0.6, 0.0}, {0.0, 0.8}, 2);
  const auto grown = parity::encoder_step(base);
  const auto lr = parity::readout_logical(grown);
  EXPECT_NEAR(std::abs(lr.alpha - Amp{0.6, 0.0}), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(lr.beta - Amp{0.0, 0.8}), 0.0, 1e-12);
}

TEST(parity, z_measure_recover_two_qubit_code) {
  for (int outcome : {0, 1}) {
    const auto q = parity::encode_logical({0.6, 0.0}, {0.8, 0.0}, 2);
    const auto recovered = parity::z_measure_recover(q, 0, outcome);
    EXPECT_EQ(recovered.width, 1);
    EXPECT_NEAR(recovered.reg.amplitude(0).real(), 0.6, 1e-12);
    EXPECT_NEAR(recovered.reg.amplitude(1).real(), 0.8, 1e-12);
  }
}

TEST(parity, z_measure_recover_larger_widths) {
  loqc::rng::Prng prng(7);
  for (int w = 2; w <= 6; ++w) {
    const auto logical = random_logical(prng);
    for (int outcome : {0, 1}) {
      const auto recovered = parity::z_measure_recover(
          parity::encode_logical(logical[0], logical[1], w), w - 1, outcome);
      const auto direct =
          parity::encode_logical(logical[0], logical[1], w - 1);
      EXPECT_NEAR(fidelity(recovered.reg, direct.reg), 1.0, 1e-10);
    }
  }
}

TEST(parity, z_measure_outcomes_are_equally_likely) {
  const auto q = parity::encode_logical({0.6, 0.0}, {0.0, 0.8}, 4);
  for (int outcome : {0, 1}) {
    auto reg = q.reg;
    const auto m = reg.measure_remove(2, outcome, nullptr);
    EXPECT_NEAR(m.probability, 0.5, 1e-12);
  }
}

TEST(parity, z_measure_width_one_needs_flag) {
  const auto q = parity::encode_logical({1.0, 0.0}, {0.0, 0.0}, 1);
  EXPECT_THROW(parity::z_measure_recover(q, 0, 0), std::invalid_argument);
  const auto collapsed =
      parity::z_measure_recover(q, 0, 0, nullptr, /*allow_unencode=*/true);
  EXPECT_EQ(collapsed.width, 0);
}

TEST(parity, measure_remove_zero_probability_throws) {
  auto reg = QubitRegister(1);  // |0>
  EXPECT_THROW(reg.measure_remove(0, 1, nullptr), std::domain_error);
}

TEST(parity, readout_logical_round_trip) {
  loqc::rng::Prng prng(5);
  for (int w = 1; w <= 8; ++w) {
    const auto logical = random_logical(prng);
    const auto lr = parity::readout_logical(
        parity::encode_logical(logical[0], logical[1], w));
    EXPECT_NEAR(std::abs(lr.alpha - logical[0]), 0.0, 1e-10);
    EXPECT_NEAR(std::abs(lr.beta - logical[1]), 0.0, 1e-10);
  }
}

TEST(parity, readout_logical_rejects_non_code_states) {
  // GHZ-type state: |000> + |111> is not a uniform parity-block state.
  std::vector<Amp> amps(8, Amp{0.0, 0.0});
  amps[0] = Amp{kInvSqrt2, 0.0};
  amps[7] = Amp{kInvSqrt2, 0.0};
  const EncodedQubit ghz{QubitRegister::from_amplitudes(3, amps), 3};
  EXPECT_THROW(parity::readout_logical(ghz), parity::CodeSpaceError);
}

TEST(parity, logical_cnot_matches_ideal_gate) {
  loqc::rng::Prng prng(11);
  const std::array<std::array<Amp, 4>, 6> inputs{{
      {Amp{1, 0}, {0, 0}, {1, 0}, {0, 0}},
      {Amp{1, 0}, {0, 0}, {0, 0}, {1, 0}},
      {Amp{0, 0}, {1, 0}, {1, 0}, {0, 0}},
      {Amp{0, 0}, {1, 0}, {0, 0}, {1, 0}},
      {Amp{kInvSqrt2, 0}, {kInvSqrt2, 0}, {1, 0}, {0, 0}},
      {Amp{0.6, 0}, {0, 0.8}, {0.48, 0.36}, {-0.8, 0}},
  }};
  for (int wc = 1; wc <= 4; ++wc) {
    for (int wt = 1; wt <= 4; ++wt) {
      for (const auto& in : inputs) {
        const auto pair = parity::logical_cnot(
            parity::encode_logical(in[0], in[1], wc),
            parity::encode_logical(in[2], in[3], wt), &prng);
        EXPECT_EQ(pair.control_width, wc);
        EXPECT_EQ(pair.target_width, wt);
        const auto got = parity::readout_joint(pair);
        const std::array<Amp, 4> want{in[0] * in[2], in[0] * in[3],
                                      in[1] * in[3], in[1] * in[2]};
        Amp overlap{0, 0};
        for (int k = 0; k < 4; ++k) overlap += std::conj(want[k]) * got[k];
        EXPECT_NEAR(std::abs(overlap), 1.0, 1e-10)
            << "wc=" << wc << " wt=" << wt;
      }
    }
  }
}

TEST(parity, logical_cnot_all_forced_outcomes) {
  const std::array<Amp, 4> in{Amp{0.6, 0}, {0, 0.8}, {0.48, 0.36}, {-0.8, 0}};
  for (int pattern = 0; pattern < 4; ++pattern) {
    const std::vector<int> forced{pattern & 1, (pattern >> 1) & 1};
    const auto pair = parity::logical_cnot(
        parity::encode_logical(in[0], in[1], 3),
        parity::encode_logical(in[2], in[3], 2), nullptr, &forced);
    const auto got = parity::readout_joint(pair);
    const std::array<Amp, 4> want{in[0] * in[2], in[0] * in[3], in[1] * in[3],
                                  in[1] * in[2]};
    Amp overlap{0, 0};
    for (int k = 0; k < 4; ++k) overlap += std::conj(want[k]) * got[k];
    EXPECT_NEAR(std::abs(overlap), 1.0, 1e-10) << "pattern " << pattern;
  }
}

TEST(parity, logical_cnot_control_zero_leaves_target) {
  loqc::rng::Prng prng(3);
  const auto pair = parity::logical_cnot(
      parity::encode_logical({1, 0}, {0, 0}, 2),
      parity::encode_logical({0.28, 0}, {0.96, 0}, 3), &prng);
  const auto got = parity::readout_joint(pair);
  EXPECT_NEAR(std::abs(got[0] - Amp{0.28, 0}), 0.0, 1e-10);
  EXPECT_NEAR(std::abs(got[1] - Amp{0.96, 0}), 0.0, 1e-10);
}

TEST(parity, logical_cnot_creates_bell_pair) {
  loqc::rng::Prng prng(13);
  const auto pair = parity::logical_cnot(
      parity::encode_logical({kInvSqrt2, 0}, {kInvSqrt2, 0}, 3),
      parity::encode_logical({1, 0}, {0, 0}, 3), &prng);
  const auto got = parity::readout_joint(pair);
  EXPECT_NEAR(std::abs(got[0]), kInvSqrt2, 1e-10);
  EXPECT_NEAR(std::abs(got[3]), kInvSqrt2, 1e-10);
  EXPECT_NEAR(std::abs(got[1]), 0.0, 1e-10);
  EXPECT_NEAR(std::abs(got[2]), 0.0, 1e-10);
}

TEST(parity, logical_z90_matches_phase_gate) {
  loqc::rng::Prng prng(17);
  for (int w = 1; w <= 4; ++w) {
    const auto logical = random_logical(prng);
    const auto rotated = parity::logical_z90(
        parity::encode_logical(logical[0], logical[1], w), &prng);
    EXPECT_EQ(rotated.width, w);
    const auto want = parity::encode_logical(
        logical[0], Amp{0.0, 1.0} * logical[1], w);
    EXPECT_NEAR(fidelity(rotated.reg, want.reg), 1.0, 1e-10) << "w=" << w;
  }
}

TEST(parity, logical_z90_on_basis_state) {
  loqc::rng::Prng prng(19);
  const auto rotated =
      parity::logical_z90(parity::encode_logical({1, 0}, {0, 0}, 3), &prng);
  const auto want = parity::encode_logical({1, 0}, {0, 0}, 3);
  EXPECT_NEAR(fidelity(rotated.reg, want.reg), 1.0, 1e-10);
}

TEST(parity, logical_z90_fourth_power_is_identity) {
  loqc::rng::Prng prng(23);
  const auto logical = random_logical(prng);
  auto q = parity::encode_logical(logical[0], logical[1], 3);
  const auto original = q;
  for (int k = 0; k < 4; ++k) q = parity::logical_z90(q, &prng);
  EXPECT_NEAR(fidelity(q.reg, original.reg), 1.0, 1e-10);
}

TEST(parity, operations_preserve_norm) {
  loqc::rng::Prng prng(29);
  auto q = parity::encode_logical({0.6, 0.0}, {0.0, 0.8}, 3);
  EXPECT_NEAR(q.reg.norm(), 1.0, 1e-12);
  q = parity::encoder_step(q);
  EXPECT_NEAR(q.reg.norm(), 1.0, 1e-12);
  q = parity::logical_z90(q, &prng);
  EXPECT_NEAR(q.reg.norm(), 1.0, 1e-12);
  q = parity::z_measure_recover(q, 1, std::nullopt, &prng);
  EXPECT_NEAR(q.reg.norm(), 1.0, 1e-12);
}
