#include "loqc/parity.hpp"

#include <bit>
#include <cmath>

namespace loqc::parity {
namespace {

constexpr int kMaxQubits = 22;

int parity_of(std::size_t bits) { return std::popcount(bits) & 1; }

void check_qubit(const QubitRegister& reg, int q, const char* where) {
  if (q < 0 || q >= reg.qubit_count())
    throw std::invalid_argument(std::string(where) + ": qubit out of range");
}

}  // namespace

QubitRegister::QubitRegister(int qubit_count) : qubit_count_(qubit_count) {
  if (qubit_count < 0 || qubit_count > kMaxQubits)
    throw std::invalid_argument("QubitRegister: unsupported qubit count");
  amps_.assign(std::size_t{1} << qubit_count, Amp{0.0, 0.0});
  amps_[0] = Amp{1.0, 0.0};
}

QubitRegister QubitRegister::from_amplitudes(int qubit_count,
                                             std::vector<Amp> amplitudes) {
  QubitRegister out(qubit_count);
  if (amplitudes.size() != out.amps_.size())
    throw std::invalid_argument("QubitRegister: wrong amplitude count");
  out.amps_ = std::move(amplitudes);
  const double n = out.norm();
  if (std::abs(n - 1.0) > 1e-9)
    throw std::invalid_argument("QubitRegister: amplitudes not normalised");
  return out;
}

double QubitRegister::norm() const {
  double total = 0.0;
  for (const Amp& a : amps_) total += std::norm(a);
  return std::sqrt(total);
}

void QubitRegister::apply_x(int qubit) {
  check_qubit(*this, qubit, "apply_x");
  const std::size_t mask = std::size_t{1} << bit_of(qubit);
  for (std::size_t s = 0; s < amps_.size(); ++s)
    if (s & mask) std::swap(amps_[s], amps_[s ^ mask]);
}

void QubitRegister::apply_z(int qubit) { apply_phase(qubit, Amp{-1.0, 0.0}); }

void QubitRegister::apply_phase(int qubit, Amp phase_on_one) {
  check_qubit(*this, qubit, "apply_phase");
  const std::size_t mask = std::size_t{1} << bit_of(qubit);
  for (std::size_t s = 0; s < amps_.size(); ++s)
    if (s & mask) amps_[s] *= phase_on_one;
}

void QubitRegister::apply_cnot(int control, int target) {
  check_qubit(*this, control, "apply_cnot");
  check_qubit(*this, target, "apply_cnot");
  if (control == target)
    throw std::invalid_argument("apply_cnot: control equals target");
  const std::size_t cmask = std::size_t{1} << bit_of(control);
  const std::size_t tmask = std::size_t{1} << bit_of(target);
  for (std::size_t s = 0; s < amps_.size(); ++s)
    if ((s & cmask) && (s & tmask)) std::swap(amps_[s], amps_[s ^ tmask]);
}

void QubitRegister::append_plus() {
  if (qubit_count_ + 1 > kMaxQubits)
    throw std::invalid_argument("append_plus: register too large");
  std::vector<Amp> next(amps_.size() * 2);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (std::size_t s = 0; s < amps_.size(); ++s) {
    next[2 * s] = amps_[s] * inv_sqrt2;
    next[2 * s + 1] = amps_[s] * inv_sqrt2;
  }
  amps_ = std::move(next);
  ++qubit_count_;
}

QubitRegister::Measurement QubitRegister::measure_remove(
    int qubit, std::optional<int> forced, rng::Prng* rng) {
  check_qubit(*this, qubit, "measure_remove");
  const int bit = bit_of(qubit);
  const std::size_t mask = std::size_t{1} << bit;
  double p_one = 0.0;
  for (std::size_t s = 0; s < amps_.size(); ++s)
    if (s & mask) p_one += std::norm(amps_[s]);

  int outcome;
  if (forced) {
    outcome = *forced;
    if (outcome != 0 && outcome != 1)
      throw std::invalid_argument("measure_remove: outcome must be 0 or 1");
  } else {
    if (!rng)
      throw std::invalid_argument(
          "measure_remove: sampling requires an rng or a forced outcome");
    outcome = rng->bernoulli(p_one) ? 1 : 0;
  }
  const double probability = outcome == 1 ? p_one : 1.0 - p_one;
  if (probability < 1e-14)
    throw std::domain_error("measure_remove: zero-probability outcome");

  std::vector<Amp> next(amps_.size() / 2);
  const std::size_t low = mask - 1;
  const double scale = 1.0 / std::sqrt(probability);
  for (std::size_t s = 0; s < amps_.size(); ++s) {
    if (((s & mask) != 0) != (outcome == 1)) continue;
    const std::size_t reduced = ((s >> (bit + 1)) << bit) | (s & low);
    next[reduced] = amps_[s] * scale;
  }
  amps_ = std::move(next);
  --qubit_count_;
  return {outcome, probability};
}

void QubitRegister::permute(const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != qubit_count_)
    throw std::invalid_argument("permute: wrong permutation size");
  std::vector<Amp> next(amps_.size(), Amp{0.0, 0.0});
  for (std::size_t s = 0; s < amps_.size(); ++s) {
    std::size_t target = 0;
    for (int q = 0; q < qubit_count_; ++q) {
      const int old_bit = qubit_count_ - 1 - perm[q];
      if (s & (std::size_t{1} << old_bit))
        target |= std::size_t{1} << (qubit_count_ - 1 - q);
    }
    next[target] = amps_[s];
  }
  amps_ = std::move(next);
}

QubitRegister tensor(const QubitRegister& a, const QubitRegister& b) {
  QubitRegister out(a.qubit_count_ + b.qubit_count_);
  for (std::size_t sa = 0; sa < a.amps_.size(); ++sa)
    for (std::size_t sb = 0; sb < b.amps_.size(); ++sb)
      out.amps_[(sa << b.qubit_count_) | sb] = a.amps_[sa] * b.amps_[sb];
  return out;
}

Amp inner_product(const QubitRegister& a, const QubitRegister& b) {
  if (a.qubit_count_ != b.qubit_count_)
    throw std::invalid_argument("inner_product: size mismatch");
  Amp out{0.0, 0.0};
  for (std::size_t s = 0; s < a.amps_.size(); ++s)
    out += std::conj(a.amps_[s]) * b.amps_[s];
  return out;
}

EncodedQubit encode_logical(Amp alpha, Amp beta, int width) {
  if (width < 1) throw std::invalid_argument("encode_logical: width >= 1");
  const double n = std::norm(alpha) + std::norm(beta);
  if (std::abs(n - 1.0) > 1e-12)
    throw std::invalid_argument("encode_logical: |a|^2+|b|^2 must be 1");
  std::vector<Amp> amps(std::size_t{1} << width);
  const double scale = 1.0 / std::sqrt(std::pow(2.0, width - 1));
  for (std::size_t s = 0; s < amps.size(); ++s)
    amps[s] = (parity_of(s) ? beta : alpha) * scale;
  return {QubitRegister::from_amplitudes(width, std::move(amps)), width};
}

EncodedQubit encoder_step(const EncodedQubit& q, int target_component) {
  if (target_component < 0 || target_component >= q.width)
    throw std::invalid_argument("encoder_step: bad target component");
  EncodedQubit out = q;
  out.reg.append_plus();
  out.reg.apply_cnot(out.reg.qubit_count() - 1, target_component);
  out.width += 1;
  return out;
}

EncodedQubit z_measure_recover(const EncodedQubit& q, int component,
                               std::optional<int> outcome, rng::Prng* rng,
                               bool allow_unencode) {
  if (component < 0 || component >= q.width)
    throw std::invalid_argument("z_measure_recover: bad component");
  if (q.width == 1 && !allow_unencode)
    throw std::invalid_argument(
        "z_measure_recover: width 1 would lose the encoding");
  EncodedQubit out = q;
  const auto m = out.reg.measure_remove(component, outcome, rng);
  out.width -= 1;
  if (m.outcome == 1 && out.width >= 1) out.reg.apply_x(0);
  return out;
}

LogicalAmplitudes readout_logical(const EncodedQubit& q, double tol) {
  if (q.width < 1) throw std::invalid_argument("readout_logical: width >= 1");
  const auto& amps = q.reg.amplitudes();
  const double scale = 1.0 / std::sqrt(std::pow(2.0, q.width - 1));
  Amp alpha{0.0, 0.0};
  Amp beta{0.0, 0.0};
  for (std::size_t s = 0; s < amps.size(); ++s)
    (parity_of(s) ? beta : alpha) += amps[s] * scale;
  double residual = 0.0;
  for (std::size_t s = 0; s < amps.size(); ++s) {
    const Amp expect = (parity_of(s) ? beta : alpha) * scale;
    residual += std::norm(amps[s] - expect);
  }
  if (std::sqrt(residual) > tol)
    throw CodeSpaceError("readout_logical: state outside the code space");
  return {alpha, beta};
}

EncodedPair logical_cnot(const EncodedQubit& control,
                         const EncodedQubit& target, rng::Prng* rng,
                         const std::vector<int>* forced_outcomes) {
  if (control.width < 1 || target.width < 1)
    throw std::invalid_argument("logical_cnot: widths must be >= 1");
  const int wc = control.width;
  const int wt = target.width;
  QubitRegister reg = tensor(control.reg, target.reg);

  // Physical CNOT from control component 0 onto target component 0; the
  // measured parity of the remaining control components folds the rest of
  // the logical control value in classically.
  reg.apply_cnot(0, wc);
  for (int k = 1; k < wc; ++k) {
    reg.append_plus();
    reg.apply_cnot(reg.qubit_count() - 1, 0);
  }
  int parity = 0;
  std::size_t forced_index = 0;
  for (int k = 1; k < wc; ++k) {
    std::optional<int> forced;
    if (forced_outcomes) {
      if (forced_index >= forced_outcomes->size())
        throw std::invalid_argument("logical_cnot: not enough outcomes");
      forced = (*forced_outcomes)[forced_index++];
    }
    // The original control components sit right after component 0.
    const auto m = reg.measure_remove(1, forced, rng);
    parity ^= m.outcome;
  }
  if (parity) {
    reg.apply_x(0);   // control recovery
    reg.apply_x(1);   // completes the logical control on the target
  }

  // Register is now [c0][target wt][fresh control wc-1]; restore the
  // [control][target] layout.
  std::vector<int> perm;
  perm.reserve(wc + wt);
  perm.push_back(0);
  for (int k = 0; k < wc - 1; ++k) perm.push_back(1 + wt + k);
  for (int k = 0; k < wt; ++k) perm.push_back(1 + k);
  reg.permute(perm);
  return {std::move(reg), wc, wt};
}

std::array<Amp, 4> readout_joint(const EncodedPair& pair, double tol) {
  const int wc = pair.control_width;
  const int wt = pair.target_width;
  const auto& amps = pair.reg.amplitudes();
  const double scale =
      1.0 / std::sqrt(std::pow(2.0, wc - 1) * std::pow(2.0, wt - 1));
  std::array<Amp, 4> out{};
  for (std::size_t s = 0; s < amps.size(); ++s) {
    const int pc = parity_of(s >> wt);
    const int pt = parity_of(s & ((std::size_t{1} << wt) - 1));
    out[2 * pc + pt] += amps[s] * scale;
  }
  double residual = 0.0;
  for (std::size_t s = 0; s < amps.size(); ++s) {
    const int pc = parity_of(s >> wt);
    const int pt = parity_of(s & ((std::size_t{1} << wt) - 1));
    residual += std::norm(amps[s] - out[2 * pc + pt] * scale);
  }
  if (std::sqrt(residual) > tol)
    throw CodeSpaceError("readout_joint: state outside the code space");
  return out;
}

EncodedQubit logical_z90(const EncodedQubit& q, rng::Prng* rng,
                         const std::vector<int>* forced_outcomes) {
  if (q.width < 1) throw std::invalid_argument("logical_z90: width >= 1");
  const int w = q.width;
  QubitRegister reg = q.reg;
  reg.apply_phase(0, Amp{0.0, 1.0});
  for (int k = 1; k < w; ++k) {
    reg.append_plus();
    reg.apply_cnot(reg.qubit_count() - 1, 0);
  }
  int parity = 0;
  std::size_t forced_index = 0;
  for (int k = 1; k < w; ++k) {
    std::optional<int> forced;
    if (forced_outcomes) {
      if (forced_index >= forced_outcomes->size())
        throw std::invalid_argument("logical_z90: not enough outcomes");
      forced = (*forced_outcomes)[forced_index++];
    }
    const auto m = reg.measure_remove(1, forced, rng);
    parity ^= m.outcome;
  }
  if (parity) {
    reg.apply_x(0);
    for (int c = 0; c < w; ++c) reg.apply_z(c);  // logical Z180
  }
  return {std::move(reg), w};
}

}  // namespace loqc::parity
