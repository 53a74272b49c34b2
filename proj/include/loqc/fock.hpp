#pragma once

#include <algorithm>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "loqc/exact.hpp"

namespace loqc::fock {

using Occupation = std::vector<std::uint8_t>;

struct CutoffError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Amplitude abstraction: complex doubles for the generic engine, real
/// sqrt-field elements for the exact pipeline.
template <class A>
struct AmpTraits;

template <>
struct AmpTraits<std::complex<double>> {
  using Prob = double;
  static std::complex<double> zero() { return {0.0, 0.0}; }
  static std::complex<double> from_sqrt(const exact::Rat& x) {
    return {std::sqrt(x.convert_to<double>()), 0.0};
  }
  static std::complex<double> from_rational(const exact::Rat& x) {
    return {x.convert_to<double>(), 0.0};
  }
  static std::complex<double> conj(const std::complex<double>& a) {
    return std::conj(a);
  }
  static Prob norm_sq(const std::complex<double>& a) { return std::norm(a); }
  static bool is_negligible(const std::complex<double>& a) {
    return std::norm(a) < 1e-28;  // prune threshold 1e-14 on magnitude
  }
  static std::complex<double> scale_to_unit(const std::complex<double>& a,
                                            Prob total_norm_sq) {
    return a / std::sqrt(total_norm_sq);
  }
  static double to_double_prob(Prob p) { return p; }
};

template <>
struct AmpTraits<exact::SqrtAmp> {
  using Prob = exact::Rat;
  static exact::SqrtAmp zero() { return {}; }
  static exact::SqrtAmp from_sqrt(const exact::Rat& x) {
    return exact::SqrtAmp::sqrt_of(x);
  }
  static exact::SqrtAmp from_rational(const exact::Rat& x) {
    return exact::SqrtAmp(x);
  }
  static exact::SqrtAmp conj(const exact::SqrtAmp& a) { return a; }
  static Prob norm_sq(const exact::SqrtAmp& a) {
    return (a * a).as_rational();
  }
  static bool is_negligible(const exact::SqrtAmp& a) { return a.is_zero(); }
  static exact::SqrtAmp scale_to_unit(const exact::SqrtAmp& a,
                                      const Prob& total_norm_sq) {
    return a * exact::SqrtAmp::sqrt_of(exact::Rat(1) / total_norm_sq);
  }
  static double to_double_prob(const Prob& p) {
    return p.convert_to<double>();
  }
};

/// Sparse multimode Fock state: occupation vectors mapped to amplitudes.
/// Immutable value semantics; sub-normalised states carry event probability.
template <class A>
class BasicFockState {
 public:
  using Traits = AmpTraits<A>;
  using Prob = typename Traits::Prob;
  using TermMap = std::map<Occupation, A>;

  BasicFockState() = default;
  BasicFockState(int mode_count, int cutoff)
      : mode_count_(mode_count), cutoff_(cutoff) {
    if (mode_count < 1)
      throw std::invalid_argument("FockState: mode_count must be >= 1");
    if (cutoff < 1)
      throw std::invalid_argument("FockState: cutoff must be >= 1");
  }

  static BasicFockState from_terms(
      int mode_count, int cutoff,
      const std::vector<std::pair<Occupation, A>>& terms,
      bool normalize = true) {
    BasicFockState st(mode_count, cutoff);
    for (const auto& [occ, amp] : terms) {
      if (static_cast<int>(occ.size()) != mode_count)
        throw std::invalid_argument("FockState: inconsistent vector length");
      for (auto n : occ)
        if (n > cutoff) throw CutoffError("FockState: occupation over cutoff");
      st.add_term(occ, amp);
    }
    st.prune();
    if (st.terms_.empty())
      throw std::invalid_argument("FockState: zero-norm state");
    if (normalize) st.normalize();
    return st;
  }

  int mode_count() const { return mode_count_; }
  int cutoff() const { return cutoff_; }
  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  A amplitude(const Occupation& occ) const {
    auto it = terms_.find(occ);
    return it == terms_.end() ? Traits::zero() : it->second;
  }

  Prob norm_sq() const {
    Prob total{};
    for (const auto& [occ, amp] : terms_) total += Traits::norm_sq(amp);
    return total;
  }

  void add_term(const Occupation& occ, const A& amp) {
    auto it = terms_.find(occ);
    if (it == terms_.end())
      terms_.emplace(occ, amp);
    else
      it->second = it->second + amp;
  }

  void prune() {
    for (auto it = terms_.begin(); it != terms_.end();) {
      if (Traits::is_negligible(it->second))
        it = terms_.erase(it);
      else
        ++it;
    }
  }

  void normalize() {
    const Prob total = norm_sq();
    for (auto& [occ, amp] : terms_) amp = Traits::scale_to_unit(amp, total);
  }

 private:
  int mode_count_ = 0;
  int cutoff_ = 1;
  TermMap terms_;
};

using FockState = BasicFockState<std::complex<double>>;
using ExactFockState = BasicFockState<exact::SqrtAmp>;

struct BeamSplitter {
  int mode_i = 0;
  int mode_j = 1;
  exact::Rat reflectivity{0, 1};
};

namespace detail {

inline exact::Rat factorial(int n) {
  exact::Rat out(1);
  for (int i = 2; i <= n; ++i) out *= i;
  return out;
}

inline exact::Rat binomial(int n, int k) {
  exact::Rat out(1);
  for (int i = 0; i < k; ++i) out = out * (n - i) / (i + 1);
  return out;
}

template <class A>
A amp_pow(const A& base, int k) {
  A out = AmpTraits<A>::from_rational(exact::Rat(1));
  for (int i = 0; i < k; ++i) out = out * base;
  return out;
}

}  // namespace detail

/// Beam splitter on modes (i, j), the convention being
///   a_i+ -> t a_i+ + r a_j+,   a_j+ -> r a_i+ - t a_j+
/// with r = sqrt(reflectivity), t = sqrt(1 - reflectivity). Extended to
/// multi-photon occupations through the creation-operator expansion.
template <class A>
BasicFockState<A> apply_bs(const BasicFockState<A>& state,
                           const BeamSplitter& bs) {
  using Traits = AmpTraits<A>;
  using exact::Rat;
  const int i = bs.mode_i;
  const int j = bs.mode_j;
  if (i == j || i < 0 || j < 0 || i >= state.mode_count() ||
      j >= state.mode_count())
    throw std::invalid_argument("apply_bs: bad mode indices");
  if (bs.reflectivity < 0 || bs.reflectivity > 1)
    throw std::invalid_argument("apply_bs: reflectivity out of [0,1]");

  const A r = Traits::from_sqrt(bs.reflectivity);
  const A t = Traits::from_sqrt(Rat(1) - bs.reflectivity);

  BasicFockState<A> out(state.mode_count(), state.cutoff());
  for (const auto& [occ, amp] : state.terms()) {
    const int ni = occ[i];
    const int nj = occ[j];
    if (ni == 0 && nj == 0) {
      out.add_term(occ, amp);
      continue;
    }
    const Rat input_norm = detail::factorial(ni) * detail::factorial(nj);
    for (int k = 0; k <= ni; ++k) {
      for (int l = 0; l <= nj; ++l) {
        const int to_i = k + l;
        const int to_j = ni + nj - to_i;
        // (t ai + r aj)^ni (r ai - t aj)^nj term for ai^(k+l) aj^(rest).
        A coeff = Traits::from_rational(detail::binomial(ni, k) *
                                        detail::binomial(nj, l));
        coeff = coeff * detail::amp_pow(t, k) * detail::amp_pow(r, ni - k);
        coeff = coeff * detail::amp_pow(r, l);
        A tpow = detail::amp_pow(t, nj - l);
        if ((nj - l) % 2 == 1) tpow = -tpow;
        coeff = coeff * tpow;
        if (Traits::is_negligible(coeff)) continue;
        if (to_i > state.cutoff() || to_j > state.cutoff())
          throw CutoffError("apply_bs: occupation exceeds cutoff");
        coeff = coeff * Traits::from_sqrt(detail::factorial(to_i) *
                                          detail::factorial(to_j) /
                                          input_norm);
        Occupation target = occ;
        target[i] = static_cast<std::uint8_t>(to_i);
        target[j] = static_cast<std::uint8_t>(to_j);
        out.add_term(target, amp * coeff);
      }
    }
  }
  out.prune();
  return out;
}

template <class A>
struct Conditioned {
  typename AmpTraits<A>::Prob probability{};
  std::optional<BasicFockState<A>> state;  // empty for probability zero
};

/// Projects onto exactly `count` photons in `mode`, drops the mode from the
/// register, renormalises. Probabilities over all counts sum to one.
template <class A>
Conditioned<A> condition_count(const BasicFockState<A>& state, int mode,
                               int count) {
  using Traits = AmpTraits<A>;
  if (mode < 0 || mode >= state.mode_count())
    throw std::invalid_argument("condition_count: bad mode index");
  if (state.mode_count() < 2)
    throw std::invalid_argument("condition_count: cannot drop the last mode");
  BasicFockState<A> kept(state.mode_count() - 1, state.cutoff());
  typename Traits::Prob prob{};
  for (const auto& [occ, amp] : state.terms()) {
    if (occ[mode] != count) continue;
    prob += Traits::norm_sq(amp);
    Occupation reduced;
    reduced.reserve(occ.size() - 1);
    for (int m = 0; m < static_cast<int>(occ.size()); ++m)
      if (m != mode) reduced.push_back(occ[m]);
    kept.add_term(reduced, amp);
  }
  Conditioned<A> out;
  out.probability = prob;
  if (kept.term_count() == 0) return out;
  kept.normalize();
  kept.prune();
  out.state = std::move(kept);
  return out;
}

/// Removes every term with single occupancy in both qubit modes, renormalises
/// and returns the survival probability.
template <class A>
std::pair<BasicFockState<A>, typename AmpTraits<A>::Prob> eliminate_11(
    const BasicFockState<A>& state, int qubit_b, int qubit_c) {
  using Traits = AmpTraits<A>;
  if (qubit_b < 0 || qubit_c < 0 || qubit_b >= state.mode_count() ||
      qubit_c >= state.mode_count() || qubit_b == qubit_c)
    throw std::invalid_argument("eliminate_11: bad mode indices");
  BasicFockState<A> kept(state.mode_count(), state.cutoff());
  typename Traits::Prob prob{};
  for (const auto& [occ, amp] : state.terms()) {
    if (occ[qubit_b] == 1 && occ[qubit_c] == 1) continue;
    prob += Traits::norm_sq(amp);
    kept.add_term(occ, amp);
  }
  if (kept.term_count() == 0)
    throw std::domain_error("eliminate_11: all terms eliminated");
  kept.normalize();
  kept.prune();
  return {std::move(kept), prob};
}

/// Gather permutation: output mode m carries input mode perm[m].
template <class A>
BasicFockState<A> permute_modes(const BasicFockState<A>& state,
                                const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != state.mode_count())
    throw std::invalid_argument("permute_modes: wrong permutation size");
  BasicFockState<A> out(state.mode_count(), state.cutoff());
  for (const auto& [occ, amp] : state.terms()) {
    Occupation target(occ.size());
    for (std::size_t m = 0; m < perm.size(); ++m) target[m] = occ[perm[m]];
    out.add_term(target, amp);
  }
  return out;
}

template <class A>
BasicFockState<A> tensor(const BasicFockState<A>& a,
                         const BasicFockState<A>& b) {
  if (a.cutoff() != b.cutoff())
    throw std::invalid_argument("tensor: cutoff mismatch");
  BasicFockState<A> out(a.mode_count() + b.mode_count(), a.cutoff());
  for (const auto& [oa, aa] : a.terms()) {
    for (const auto& [ob, ab] : b.terms()) {
      Occupation occ = oa;
      occ.insert(occ.end(), ob.begin(), ob.end());
      out.add_term(occ, aa * ab);
    }
  }
  return out;
}

template <class A>
A inner_product(const BasicFockState<A>& a, const BasicFockState<A>& b) {
  using Traits = AmpTraits<A>;
  if (a.mode_count() != b.mode_count())
    throw std::invalid_argument("inner_product: mode count mismatch");
  A out = Traits::zero();
  for (const auto& [occ, amp] : a.terms()) {
    auto it = b.terms().find(occ);
    if (it != b.terms().end()) out = out + Traits::conj(amp) * it->second;
  }
  return out;
}

inline double overlap_abs(const FockState& a, const FockState& b) {
  return std::abs(inner_product(a, b));
}

inline double overlap_abs(const ExactFockState& a, const ExactFockState& b) {
  return std::abs(inner_product(a, b).to_double());
}

/// Global-phase-insensitive equality on normalised states:
/// |<a|b>| >= 1 - tol.
template <class A>
bool states_equal(const BasicFockState<A>& a, const BasicFockState<A>& b,
                  double tol) {
  return overlap_abs(a, b) >= 1.0 - tol;
}

/// Text dump: one line per term, `occupation TAB re TAB im`, lexicographic
/// in the occupation vector. Occupations render as plain digit strings for
/// cutoff <= 9, comma-separated otherwise.
std::string dump(const FockState& state);

enum class Rail { single, dual };

template <class A>
struct HeraldedState {
  BasicFockState<A> state;
  typename AmpTraits<A>::Prob probability{};
};

/// Runs the elimination-circuit recipe that prepares the order-2 teleporter
/// entanglement: 1/7 splitters on each photon's rails, ancilla photons, a 1/2
/// splitter, two 1/3 splitters, single-photon conditioning on the ancilla
/// modes and a final 1/2 splitter. The dual variant carries the partner rails
/// alongside and yields the eight-mode resource. Returns the normalised
/// output state and the heralding probability.
HeraldedState<std::complex<double>> elim_resource(Rail rail);
HeraldedState<exact::SqrtAmp> elim_resource_exact(Rail rail);

struct BuildResult {
  FockState state;
  /// Gather permutation applied after each adjoin-and-eliminate step.
  std::vector<std::vector<int>> step_permutations;
};

/// Builds the 2n-mode teleporter entanglement by iterating the
/// adjoin-Bell-then-eliminate step from the two-mode Bell state, reordering
/// modes after each step so the result matches tn_reference layout.
BuildResult build_tn(int n);

/// Direct construction: (1/sqrt(n+1)) sum_j |1>^j |0>^(n-j) |0>^j |1>^(n-j).
FockState tn_reference(int n);

}  // namespace loqc::fock
