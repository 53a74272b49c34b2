#pragma once

#include <optional>

#include "loqc/exact.hpp"

namespace loqc::walk {

/// Nearest-neighbour random walk on {left..right} with absorbing boundaries.
/// Step up with probability p, down with 1-p, starting from `start`.
struct WalkProblem {
  double p = 0.5;
  int left = 0;
  int right = 1;
  int start = 0;

  /// Throws std::domain_error on violated invariants (0<p<1, L<R, L<=m<=R).
  void validate() const;
};

/// Probability of absorbing at `right` before `left`. Uses the linear branch
/// when |p - 1/2| < 1e-12, the beta-power branch otherwise (the two are
/// continuous at p = 1/2).
double absorb_prob(const WalkProblem& prob);

/// Probability that an encoder gamble at current width w adds a component
/// without losing the whole encoded qubit: boundaries (-w, +1), start 0.
/// width == 0 returns 0 (nothing left to gamble).
double p_add(double p, int width);

/// Probability of re-building width w from a single component: boundaries
/// (0, w), start 1.
double p_re(double p, int width);

struct MarkovSolution {
  double absorb_prob_right = 0.0;
  /// Mean steps conditional on absorbing at the respective boundary.
  /// NaN when that absorption event has probability zero.
  double mean_steps_to_right = 0.0;
  double mean_steps_to_left = 0.0;
};

/// Direct linear solve of the absorbing chain on the interior states.
/// Conditional means follow h_m = u_m + p h_{m+1} + (1-p) h_{m-1} with
/// h = u * <N>, solved exactly alongside the absorption system.
MarkovSolution markov_exact(const WalkProblem& prob);

/// Closed form for the conditional mean first-passage time to `right`.
/// Stated for p > 1/2 only; p <= 1/2 throws std::domain_error (use
/// markov_exact there).
double mean_passage_closed(const WalkProblem& prob);

enum class EncoderStage { add, re_success, re_fail };

/// Mean encoder uses per pass of the given algorithm stage:
///   add:        <N> for (-w, +1) from 0
///   re_success: <N> for (0, w) from 1
///   re_fail:    <N> for the direction-swapped walk (p -> 1-p, (-w, 0) from -1)
/// Closed forms where they apply, exact solve otherwise. re_fail at width 1
/// returns nullopt: a re-encode from width 1 cannot fail.
std::optional<double> mean_encoder_uses(EncoderStage stage, double p,
                                        int width);

/// Exact-rational versions for the teleporter cases where p is rational.
namespace exact_forms {

using exact::Rat;

Rat absorb_prob(const Rat& p, int left, int right, int start);
Rat p_add(const Rat& p, int width);
Rat p_re(const Rat& p, int width);

}  // namespace exact_forms

}  // namespace loqc::walk
