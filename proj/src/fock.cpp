#include "loqc/fock.hpp"

#include <cstdio>

namespace loqc::fock {
namespace {

using exact::Rat;

// Mode bookkeeping for the elimination-circuit recipe. Single rail works on
// six modes; dual rail carries partner rails a,b (photon one) and c,d
// (photon two) for ten modes total. Offsets locate the shared modes 1..6.
struct Layout {
  int total_modes;
  int m1, m2, m3, m4, m5, m6;
};

constexpr Layout kSingle{6, 0, 1, 2, 3, 4, 5};
constexpr Layout kDual{10, 2, 3, 4, 7, 8, 9};

template <class A>
HeraldedState<A> run_elim_recipe(Rail rail) {
  using Traits = AmpTraits<A>;
  using State = BasicFockState<A>;
  const Layout& lay = rail == Rail::single ? kSingle : kDual;

  State st(lay.total_modes, 4);
  if (rail == Rail::single) {
    // The two photons enter the inner rails (modes 3 and 4) and spread onto
    // the outer ones; ancilla photons sit in modes 2 and 5 throughout.
    Occupation occ(6, 0);
    occ[lay.m2] = 1;
    occ[lay.m3] = 1;
    occ[lay.m4] = 1;
    occ[lay.m5] = 1;
    st = State::from_terms(6, 4, {{occ, Traits::from_rational(Rat(1))}});
    st = apply_bs(st, {lay.m3, lay.m1, Rat(1, 7)});
    st = apply_bs(st, {lay.m4, lay.m6, Rat(1, 7)});
  } else {
    // Dual-rail inputs arrive pre-entangled with their partner rails (a with
    // mode 3, b with mode 1, c with mode 6, d with mode 4); the ancilla
    // photons in modes 2 and 5 are included directly.
    const A heavy = Traits::from_sqrt(Rat(6, 7));   // 6/sqrt(42)
    const A light = Traits::from_sqrt(Rat(1, 7));   // 1/sqrt(7)
    // Modes: a b 1 2 3 | c d 4 5 6.
    auto occ_of = [&](std::initializer_list<int> ones) {
      Occupation occ(10, 0);
      for (int m : ones) occ[m] = 1;
      return occ;
    };
    State part1 = State::from_terms(
        10, 4,
        {{occ_of({1, lay.m1, lay.m2}), light},
         {occ_of({0, lay.m2, lay.m3}), heavy}},
        false);
    State part2 = State::from_terms(
        10, 4,
        {{occ_of({6, lay.m4, lay.m5}), heavy},
         {occ_of({5, lay.m5, lay.m6}), light}},
        false);
    // The two blocks occupy disjoint modes, so their product is a plain
    // amplitude-wise merge.
    State merged(10, 4);
    for (const auto& [o1, a1] : part1.terms()) {
      for (const auto& [o2, a2] : part2.terms()) {
        Occupation occ(10, 0);
        for (int m = 0; m < 10; ++m)
          occ[m] = static_cast<std::uint8_t>(o1[m] + o2[m]);
        merged.add_term(occ, a1 * a2);
      }
    }
    st = merged;
  }

  st = apply_bs(st, {lay.m3, lay.m4, Rat(1, 2)});
  st = apply_bs(st, {lay.m3, lay.m2, Rat(1, 3)});
  st = apply_bs(st, {lay.m4, lay.m5, Rat(1, 3)});

  // Condition modes 5 and 2 on exactly one photon, higher index first so the
  // remaining indices stay valid.
  auto c5 = condition_count(st, lay.m5, 1);
  if (!c5.state) throw std::runtime_error("elim_resource: zero-probability");
  auto c2 = condition_count(*c5.state, lay.m2, 1);
  if (!c2.state) throw std::runtime_error("elim_resource: zero-probability");
  typename Traits::Prob prob = c5.probability * c2.probability;

  // Remaining register: (1,3,4,6) single rail, (a,b,1,3,c,d,4,6) dual rail.
  // The final splitter's output ports pick up the mode labels in crossed
  // order, so swap them back after mixing.
  const int idx3 = rail == Rail::single ? 1 : 3;
  const int idx4 = rail == Rail::single ? 2 : 6;
  State out = apply_bs(*c2.state, {idx3, idx4, Rat(1, 2)});
  std::vector<int> relabel(out.mode_count());
  for (int m = 0; m < out.mode_count(); ++m) relabel[m] = m;
  relabel[idx3] = idx4;
  relabel[idx4] = idx3;
  out = permute_modes(out, relabel);
  out.prune();
  return {std::move(out), std::move(prob)};
}

}  // namespace

std::string dump(const FockState& state) {
  std::string out;
  char line[64];
  for (const auto& [occ, amp] : state.terms()) {
    std::string key;
    for (std::size_t m = 0; m < occ.size(); ++m) {
      if (state.cutoff() > 9 && m > 0) key.push_back(',');
      key += std::to_string(static_cast<int>(occ[m]));
    }
    std::snprintf(line, sizeof line, "\t%.17g\t%.17g\n", amp.real(),
                  amp.imag());
    out += key;
    out += line;
  }
  return out;
}

HeraldedState<std::complex<double>> elim_resource(Rail rail) {
  return run_elim_recipe<std::complex<double>>(rail);
}

HeraldedState<exact::SqrtAmp> elim_resource_exact(Rail rail) {
  return run_elim_recipe<exact::SqrtAmp>(rail);
}

FockState tn_reference(int n) {
  if (n < 1 || n > 8)
    throw std::domain_error("tn_reference: order must lie in 1..8");
  std::vector<std::pair<Occupation, std::complex<double>>> terms;
  for (int j = 0; j <= n; ++j) {
    Occupation occ(2 * n, 0);
    for (int m = 0; m < j; ++m) occ[m] = 1;
    for (int m = 0; m < n - j; ++m) occ[n + j + m] = 1;
    terms.emplace_back(occ, std::complex<double>{1.0, 0.0});
  }
  return FockState::from_terms(2 * n, 1, terms, true);
}

BuildResult build_tn(int n) {
  if (n < 1 || n > 8)
    throw std::domain_error("build_tn: order must lie in 1..8");
  const FockState bell = FockState::from_terms(
      2, 1, {{{0, 1}, {1.0, 0.0}}, {{1, 0}, {1.0, 0.0}}}, true);
  BuildResult out{bell, {}};
  for (int k = 1; k < n; ++k) {
    // Adjoin a Bell pair (modes A=2k, B=2k+1), interleave it as
    // (A, first half, B, second half), then eliminate |11> on (B, C) where C
    // is the first mode of the current resource.
    FockState combined = tensor(out.state, bell);
    std::vector<int> perm;
    perm.reserve(2 * k + 2);
    perm.push_back(2 * k);  // A leads the new first half
    for (int m = 0; m < k; ++m) perm.push_back(m);
    perm.push_back(2 * k + 1);  // B leads the new second half
    for (int m = k; m < 2 * k; ++m) perm.push_back(m);
    combined = permute_modes(combined, perm);
    auto [eliminated, prob] = eliminate_11(combined, k + 1, 1);
    out.state = std::move(eliminated);
    out.step_permutations.push_back(std::move(perm));
  }
  return out;
}

}  // namespace loqc::fock
