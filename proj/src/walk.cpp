#include "loqc/walk.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace loqc::walk {
namespace {

constexpr double kHalfBranchTol = 1e-12;

double nan_value() { return std::numeric_limits<double>::quiet_NaN(); }

// 1 - beta^k evaluated as -expm1(k log beta) to avoid cancellation near
// beta = 1.
double one_minus_pow(double beta, long long k) {
  return -std::expm1(static_cast<double>(k) * std::log(beta));
}

double pow_int(double base, long long k) {
  return std::pow(base, static_cast<double>(k));
}

// Conditional mean first-passage time to R, closed form. Valid for any
// p != 1/2 (the trial-solution derivation only needs beta != 1).
double cond_mean_to_right_closed(double p, int left, int right, int start) {
  const double beta = (1.0 - p) / p;
  const double bl = pow_int(beta, left);
  const double bm = pow_int(beta, start);
  const double br = pow_int(beta, right);
  const double num = right * (bl - bm) * (bl + br) -
                     start * (bl + bm) * (bl - br) +
                     2.0 * left * (pow_int(beta, left + start) -
                                   pow_int(beta, left + right));
  const double den = (2.0 * p - 1.0) * (bl - bm) * (bl - br);
  return num / den;
}

double cond_mean_to_right(double p, int left, int right, int start) {
  if (std::abs(p - 0.5) < kHalfBranchTol)
    return markov_exact({p, left, right, start}).mean_steps_to_right;
  return cond_mean_to_right_closed(p, left, right, start);
}

// Thomas solve of the tridiagonal system (I - P_interior) x = b where the
// off-diagonals are -p (super) and -(1-p) (sub). Diagonally dominant, so no
// pivoting is needed.
std::vector<double> solve_tridiag(double p, std::vector<double> b) {
  const std::size_t n = b.size();
  std::vector<double> diag(n, 1.0);
  const double up = -p;
  const double lo = -(1.0 - p);
  for (std::size_t i = 1; i < n; ++i) {
    const double m = lo / diag[i - 1];
    diag[i] -= m * up;
    b[i] -= m * b[i - 1];
  }
  std::vector<double> x(n);
  x[n - 1] = b[n - 1] / diag[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) x[i] = (b[i] - up * x[i + 1]) / diag[i];
  return x;
}

}  // namespace

void WalkProblem::validate() const {
  if (!(p > 0.0 && p < 1.0))
    throw std::domain_error("WalkProblem: p must lie strictly in (0,1)");
  if (left >= right)
    throw std::domain_error("WalkProblem: requires left < right");
  if (start < left || start > right)
    throw std::domain_error("WalkProblem: start must lie in [left, right]");
}

double absorb_prob(const WalkProblem& prob) {
  prob.validate();
  if (prob.start == prob.right) return 1.0;
  if (prob.start == prob.left) return 0.0;
  if (std::abs(prob.p - 0.5) < kHalfBranchTol)
    return static_cast<double>(prob.start - prob.left) /
           static_cast<double>(prob.right - prob.left);
  const double beta = (1.0 - prob.p) / prob.p;
  return one_minus_pow(beta, prob.start - prob.left) /
         one_minus_pow(beta, prob.right - prob.left);
}

double p_add(double p, int width) {
  if (width < 0) throw std::domain_error("p_add: negative width");
  if (width == 0) return 0.0;
  return absorb_prob({p, -width, 1, 0});
}

double p_re(double p, int width) {
  if (width < 1) throw std::domain_error("p_re: width must be >= 1");
  return absorb_prob({p, 0, width, 1});
}

MarkovSolution markov_exact(const WalkProblem& prob) {
  prob.validate();
  if (prob.right - prob.left < 1)
    throw std::domain_error("markov_exact: degenerate lattice");
  if (prob.start == prob.right) return {1.0, 0.0, nan_value()};
  if (prob.start == prob.left) return {0.0, nan_value(), 0.0};

  const int n = prob.right - prob.left - 1;
  const double p = prob.p;

  // Absorption probabilities u at interior states; u_R = 1 feeds the RHS.
  std::vector<double> rhs_u(n, 0.0);
  rhs_u[n - 1] = p;
  const std::vector<double> u = solve_tridiag(p, rhs_u);

  // h_m = E[steps * 1{absorbed right}]: rhs is u; g likewise for the left.
  std::vector<double> rhs_g(n);
  for (int i = 0; i < n; ++i) rhs_g[i] = 1.0 - u[i];
  const std::vector<double> h = solve_tridiag(p, u);
  const std::vector<double> g = solve_tridiag(p, rhs_g);

  const int i = prob.start - prob.left - 1;
  MarkovSolution out;
  out.absorb_prob_right = u[i];
  out.mean_steps_to_right = u[i] > 0.0 ? h[i] / u[i] : nan_value();
  out.mean_steps_to_left = u[i] < 1.0 ? g[i] / (1.0 - u[i]) : nan_value();
  return out;
}

double mean_passage_closed(const WalkProblem& prob) {
  prob.validate();
  if (prob.p <= 0.5)
    throw std::domain_error(
        "mean_passage_closed: stated for p > 1/2 only; use markov_exact");
  if (prob.start == prob.right) return 0.0;
  return cond_mean_to_right_closed(prob.p, prob.left, prob.right, prob.start);
}

std::optional<double> mean_encoder_uses(EncoderStage stage, double p,
                                        int width) {
  if (width < 1)
    throw std::domain_error("mean_encoder_uses: width must be >= 1");
  switch (stage) {
    case EncoderStage::add:
      return cond_mean_to_right(p, -width, 1, 0);
    case EncoderStage::re_success:
      if (width == 1) return 0.0;  // already at the target width
      return cond_mean_to_right(p, 0, width, 1);
    case EncoderStage::re_fail:
      if (width == 1) return std::nullopt;  // failure impossible
      return cond_mean_to_right(1.0 - p, -width, 0, -1);
  }
  throw std::invalid_argument("mean_encoder_uses: unknown stage");
}

namespace exact_forms {

namespace {

Rat pow_rat(const Rat& base, int k) {
  if (k >= 0) {
    Rat out(1);
    for (int i = 0; i < k; ++i) out *= base;
    return out;
  }
  return Rat(1) / pow_rat(base, -k);
}

}  // namespace

Rat absorb_prob(const Rat& p, int left, int right, int start) {
  if (!(p > 0 && p < 1))
    throw std::domain_error("absorb_prob: p must lie strictly in (0,1)");
  if (left >= right || start < left || start > right)
    throw std::domain_error("absorb_prob: invalid boundaries");
  if (start == right) return Rat(1);
  if (start == left) return Rat(0);
  if (p == Rat(1, 2))
    return Rat(start - left, right - left);
  const Rat beta = (Rat(1) - p) / p;
  return (Rat(1) - pow_rat(beta, start - left)) /
         (Rat(1) - pow_rat(beta, right - left));
}

Rat p_add(const Rat& p, int width) {
  if (width < 0) throw std::domain_error("p_add: negative width");
  if (width == 0) return Rat(0);
  return absorb_prob(p, -width, 1, 0);
}

Rat p_re(const Rat& p, int width) {
  if (width < 1) throw std::domain_error("p_re: width must be >= 1");
  return absorb_prob(p, 0, width, 1);
}

}  // namespace exact_forms

}  // namespace loqc::walk
