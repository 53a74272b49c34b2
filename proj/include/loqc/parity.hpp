#pragma once

#include <array>
#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

#include "loqc/rng.hpp"

namespace loqc::parity {

using Amp = std::complex<double>;

struct CodeSpaceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Dense statevector over up to ~20 qubits. Qubit 0 is the most significant
/// bit of the basis index. Value semantics; public operations keep the norm
/// at one.
class QubitRegister {
 public:
  QubitRegister() = default;
  explicit QubitRegister(int qubit_count);

  static QubitRegister from_amplitudes(int qubit_count,
                                       std::vector<Amp> amplitudes);

  int qubit_count() const { return qubit_count_; }
  const std::vector<Amp>& amplitudes() const { return amps_; }
  Amp amplitude(std::size_t basis) const { return amps_[basis]; }
  double norm() const;

  void apply_x(int qubit);
  void apply_z(int qubit);
  void apply_phase(int qubit, Amp phase_on_one);  // diag(1, phase)
  void apply_cnot(int control, int target);
  /// Adjoins (|0>+|1>)/sqrt(2) as the last qubit.
  void append_plus();

  struct Measurement {
    int outcome = 0;
    double probability = 0.0;
  };

  /// Projects `qubit` onto an outcome (drawn from the Born rule when not
  /// forced), removes the qubit, renormalises. Forcing a zero-probability
  /// outcome throws.
  Measurement measure_remove(int qubit, std::optional<int> forced,
                             rng::Prng* rng);

  /// Gather reorder: new qubit q carries old qubit perm[q].
  void permute(const std::vector<int>& perm);

  friend QubitRegister tensor(const QubitRegister& a, const QubitRegister& b);
  friend Amp inner_product(const QubitRegister& a, const QubitRegister& b);

 private:
  int bit_of(int qubit) const { return qubit_count_ - 1 - qubit; }
  int qubit_count_ = 0;
  std::vector<Amp> amps_;
};

/// Parity-encoded logical qubit: alpha |even> + beta |odd> across `width`
/// component qubits.
struct EncodedQubit {
  QubitRegister reg;
  int width = 0;
};

/// alpha times the uniform even-parity superposition plus beta times the odd
/// one. Inputs must be normalised.
EncodedQubit encode_logical(Amp alpha, Amp beta, int width);

/// Grows the code by one component: fresh (|0>+|1>)/sqrt(2) ancilla controls
/// a CNOT onto `target_component`. Output equals encode_logical at width+1.
EncodedQubit encoder_step(const EncodedQubit& q, int target_component = 0);

/// Projects one component (Born-sampled unless forced), removes it, and
/// applies the X recovery to the lowest-indexed remaining component on
/// outcome one. Width 1 is the loss of the encoding and is only allowed with
/// allow_unencode, yielding a width-0 result.
EncodedQubit z_measure_recover(const EncodedQubit& q, int component,
                               std::optional<int> outcome = std::nullopt,
                               rng::Prng* rng = nullptr,
                               bool allow_unencode = false);

struct LogicalAmplitudes {
  Amp alpha;
  Amp beta;
};

/// Inverse of encode_logical; throws CodeSpaceError if the residual outside
/// the code space exceeds tol.
LogicalAmplitudes readout_logical(const EncodedQubit& q, double tol = 1e-10);

/// Two encoded qubits sharing one register (the encoded CNOT entangles
/// them): components [0, control_width) then [control_width,
/// control_width+target_width).
struct EncodedPair {
  QubitRegister reg;
  int control_width = 0;
  int target_width = 0;
};

/// Encoded CNOT, ideal-success execution: a physical CNOT from one control
/// component onto one target component, re-encode of the control from that
/// component, measurement of the remaining original control components, and
/// an X on one component of each encoded qubit when the measured parity is
/// odd. Measurement outcomes are Born-sampled unless forced.
EncodedPair logical_cnot(const EncodedQubit& control,
                         const EncodedQubit& target, rng::Prng* rng = nullptr,
                         const std::vector<int>* forced_outcomes = nullptr);

/// Logical amplitudes of an encoded pair in the order (00, 01, 10, 11).
std::array<Amp, 4> readout_joint(const EncodedPair& pair, double tol = 1e-10);

/// Encoded 90-degree Z rotation, ideal-success execution: Z90 on one
/// component, re-encode from it, measure the remaining components, and on odd
/// measured parity apply the X recovery plus a Z180. Equals diag(1, i) on the
/// logical amplitudes up to global phase.
EncodedQubit logical_z90(const EncodedQubit& q, rng::Prng* rng = nullptr,
                         const std::vector<int>* forced_outcomes = nullptr);

}  // namespace loqc::parity
