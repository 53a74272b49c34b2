#include "loqc/walk.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

namespace walk = loqc::walk;
using walk::EncoderStage;
using walk::WalkProblem;

TEST(walk, absorb_prob_symmetric_case) {
  EXPECT_DOUBLE_EQ(walk::absorb_prob({0.5, -4, 1, 0}), 0.8);
}

TEST(walk, absorb_prob_boundaries_are_exact) {
  for (double p : {0.3, 0.5, 0.75}) {
    EXPECT_DOUBLE_EQ(walk::absorb_prob({p, -3, 2, 2}), 1.0);
    EXPECT_DOUBLE_EQ(walk::absorb_prob({p, -3, 2, -3}), 0.0);
  }
}

TEST(walk, absorb_prob_biased_case) {
  // Exact value 8/15 from the absorbing-chain linear solve.
  EXPECT_NEAR(walk::absorb_prob({2.0 / 3.0, 0, 4, 1}), 8.0 / 15.0, 1e-14);
}

TEST(walk, absorb_prob_rejects_bad_problems) {
  EXPECT_THROW(walk::absorb_prob({0.0, -1, 1, 0}), std::domain_error);
  EXPECT_THROW(walk::absorb_prob({1.0, -1, 1, 0}), std::domain_error);
  EXPECT_THROW(walk::absorb_prob({0.5, 2, 1, 1}), std::domain_error);
  EXPECT_THROW(walk::absorb_prob({0.5, -1, 1, 2}), std::domain_error);
}

TEST(walk, absorb_prob_satisfies_difference_equation) {
  for (double p : {0.51, 0.6, 2.0 / 3.0, 0.75}) {
    for (int m = -3; m <= 3; ++m) {
      const double centre = walk::absorb_prob({p, -4, 4, m});
      const double up = walk::absorb_prob({p, -4, 4, m + 1});
      const double down = walk::absorb_prob({p, -4, 4, m - 1});
      EXPECT_NEAR(centre, p * up + (1.0 - p) * down, 1e-12);
    }
  }
}

TEST(walk, absorb_prob_branches_agree_near_half) {
  const double at_half = walk::absorb_prob({0.5, -5, 3, 0});
  EXPECT_NEAR(walk::absorb_prob({0.5 + 1e-9, -5, 3, 0}), at_half, 1e-6);
  EXPECT_NEAR(walk::absorb_prob({0.5 - 1e-9, -5, 3, 0}), at_half, 1e-6);
}

TEST(walk, p_add_known_values) {
  EXPECT_DOUBLE_EQ(walk::p_add(0.5, 4), 0.8);
  EXPECT_NEAR(walk::p_add(0.75, 4), 120.0 / 121.0, 1e-14);
  EXPECT_NEAR(walk::p_add(2.0 / 3.0, 4), 30.0 / 31.0, 1e-14);
  EXPECT_DOUBLE_EQ(walk::p_add(0.75, 0), 0.0);
}

TEST(walk, p_add_monotone_in_p_and_width) {
  for (int w = 1; w <= 10; ++w) {
    double prev = 0.0;
    for (double p : {0.51, 0.6, 0.7, 0.8, 0.9}) {
      const double v = walk::p_add(p, w);
      EXPECT_GE(v, prev);
      prev = v;
    }
  }
  for (double p : {0.55, 2.0 / 3.0, 0.75}) {
    double prev = 0.0;
    for (int w = 1; w <= 15; ++w) {
      const double v = walk::p_add(p, w);
      EXPECT_GE(v, prev - 1e-15);
      prev = v;
    }
  }
}

TEST(walk, p_re_known_values) {
  EXPECT_DOUBLE_EQ(walk::p_re(0.5, 4), 0.25);
  EXPECT_DOUBLE_EQ(walk::p_re(0.3, 1), 1.0);
  EXPECT_NEAR(walk::p_re(2.0 / 3.0, 4), 8.0 / 15.0, 1e-14);
}

TEST(walk, p_re_nonincreasing_in_width) {
  for (double p : {0.55, 2.0 / 3.0, 0.75}) {
    double prev = 1.0;
    for (int w = 1; w <= 15; ++w) {
      const double v = walk::p_re(p, w);
      EXPECT_LE(v, prev + 1e-15);
      prev = v;
    }
  }
}

TEST(walk, markov_exact_matches_absorb_prob) {
  EXPECT_NEAR(walk::markov_exact({0.6, -3, 1, 0}).absorb_prob_right,
              walk::absorb_prob({0.6, -3, 1, 0}), 1e-12);
}

TEST(walk, markov_exact_conditional_means) {
  const auto add = walk::markov_exact({0.75, -4, 1, 0});
  // 18224/9680 from the exact linear solve.
  EXPECT_NEAR(add.mean_steps_to_right, 1.8826446280991735, 1e-12);
  const auto re = walk::markov_exact({2.0 / 3.0, 0, 4, 1});
  EXPECT_NEAR(re.mean_steps_to_right, 4.6, 1e-12);
}

TEST(walk, markov_exact_boundary_starts) {
  const auto at_right = walk::markov_exact({0.6, -3, 1, 1});
  EXPECT_DOUBLE_EQ(at_right.absorb_prob_right, 1.0);
  EXPECT_DOUBLE_EQ(at_right.mean_steps_to_right, 0.0);
  EXPECT_TRUE(std::isnan(at_right.mean_steps_to_left));
  EXPECT_THROW(walk::markov_exact({0.6, 1, 1, 1}), std::domain_error);
}

TEST(walk, mean_passage_closed_matches_oracle) {
  EXPECT_NEAR(walk::mean_passage_closed({0.75, -4, 1, 0}),
              1.8826446280991735, 1e-12);
  EXPECT_THROW(walk::mean_passage_closed({0.5, -4, 1, 0}), std::domain_error);
  EXPECT_THROW(walk::mean_passage_closed({0.4, -4, 1, 0}), std::domain_error);
}

TEST(walk, mean_passage_limit_matches_encoder_gain) {
  // Large-width limit is 1/(2p-1) add attempts per gained component.
  EXPECT_NEAR(walk::mean_passage_closed({2.0 / 3.0, -60, 1, 0}), 3.0, 1e-6);
  EXPECT_NEAR(walk::mean_passage_closed({0.75, -60, 1, 0}), 2.0, 1e-9);
}

TEST(walk, mean_encoder_uses_stages) {
  EXPECT_NEAR(*walk::mean_encoder_uses(EncoderStage::add, 0.75, 4),
              1.8826446280991735, 1e-12);
  EXPECT_NEAR(*walk::mean_encoder_uses(EncoderStage::re_success, 2.0 / 3.0, 4),
              4.6, 1e-12);
  // 71/35 via the direction-swapped walk.
  EXPECT_NEAR(*walk::mean_encoder_uses(EncoderStage::re_fail, 2.0 / 3.0, 4),
              71.0 / 35.0, 1e-12);
  EXPECT_FALSE(
      walk::mean_encoder_uses(EncoderStage::re_fail, 2.0 / 3.0, 1).has_value());
  EXPECT_DOUBLE_EQ(
      *walk::mean_encoder_uses(EncoderStage::re_success, 2.0 / 3.0, 1), 0.0);
}

TEST(walk, mean_encoder_uses_closed_forms_match_oracle_grid) {
  for (double p : {0.51, 0.6, 2.0 / 3.0, 0.75, 0.8}) {
    for (int w = 1; w <= 20; ++w) {
      const auto add = walk::markov_exact({p, -w, 1, 0});
      EXPECT_NEAR(*walk::mean_encoder_uses(EncoderStage::add, p, w),
                  add.mean_steps_to_right, 1e-9);
      if (w > 1) {
        const auto re = walk::markov_exact({p, 0, w, 1});
        EXPECT_NEAR(*walk::mean_encoder_uses(EncoderStage::re_success, p, w),
                    re.mean_steps_to_right, 1e-9);
        const auto fre = walk::markov_exact({1.0 - p, -w, 0, -1});
        EXPECT_NEAR(*walk::mean_encoder_uses(EncoderStage::re_fail, p, w),
                    fre.mean_steps_to_right, 1e-9);
      }
    }
  }
}

TEST(walk, re_encode_mean_is_linear_in_width_for_large_width) {
  const double p = 2.0 / 3.0;
  // Linear growth with slope 1/(2p-1) once boundary effects fade.
  const double v40 = *walk::mean_encoder_uses(EncoderStage::re_success, p, 40);
  const double v60 = *walk::mean_encoder_uses(EncoderStage::re_success, p, 60);
  const double v80 = *walk::mean_encoder_uses(EncoderStage::re_success, p, 80);
  const double slope = 1.0 / (2.0 * p - 1.0);
  EXPECT_NEAR((v60 - v40) / 20.0, slope, 1e-6);
  EXPECT_NEAR((v80 - v60) / 20.0, slope, 1e-6);
}

TEST(walk, add_mean_nondecreasing_and_bounded) {
  for (double p : {0.55, 2.0 / 3.0, 0.75, 0.9}) {
    const double bound = 1.0 / (2.0 * p - 1.0);
    double prev = 0.0;
    for (int w = 1; w <= 25; ++w) {
      const double v = *walk::mean_encoder_uses(EncoderStage::add, p, w);
      EXPECT_GE(v, prev - 1e-12);
      EXPECT_LE(v, bound + 1e-12);
      prev = v;
    }
  }
}

TEST(walk, exact_forms_reproduce_rational_values) {
  using loqc::exact::Rat;
  EXPECT_EQ(walk::exact_forms::p_add(Rat(3, 4), 4), Rat(120, 121));
  EXPECT_EQ(walk::exact_forms::p_add(Rat(2, 3), 4), Rat(30, 31));
  EXPECT_EQ(walk::exact_forms::p_re(Rat(2, 3), 4), Rat(8, 15));
  EXPECT_EQ(walk::exact_forms::p_re(Rat(1, 2), 4), Rat(1, 4));
  EXPECT_EQ(walk::exact_forms::absorb_prob(Rat(1, 2), -4, 1, 0), Rat(4, 5));
}

TEST(walk, random_problems_closed_matches_oracle) {
  std::mt19937 gen(1234);
  std::uniform_real_distribution<double> pd(0.52, 0.95);
  std::uniform_int_distribution<int> wd(2, 12);
  for (int i = 0; i < 200; ++i) {
    const double p = pd(gen);
    const int left = -wd(gen);
    const int right = wd(gen);
    std::uniform_int_distribution<int> md(left + 1, right - 1);
    const int m = md(gen);
    const WalkProblem prob{p, left, right, m};
    const auto exact = walk::markov_exact(prob);
    EXPECT_NEAR(walk::absorb_prob(prob), exact.absorb_prob_right, 1e-10);
    EXPECT_NEAR(walk::mean_passage_closed(prob), exact.mean_steps_to_right,
                1e-8);
  }
}
