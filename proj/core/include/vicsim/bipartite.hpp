#pragma once

// Two independent V-system atoms A and B. The pair space is
// (|1>,|2>,|3>)_A (x) (|1>,|2>,|3>)_B with index 3 a + b, and pair density
// matrices are vectorized row-major like single-atom ones.

#include <array>
#include <optional>

#include "vicsim/qlinalg.hpp"
#include "vicsim/vsystem.hpp"

namespace vicsim {

inline constexpr std::size_t kPairDim = kAtomDim * kAtomDim;
inline constexpr std::size_t kQubitPairDim = 4;

// Pair-space indices of the two-qubit basis |1A1B>, |1A3B>, |3A1B>, |3A3B>,
// in that order.
inline constexpr std::array<std::size_t, kQubitPairDim> kQubitBasis = {
    kAtomDim * kLevel1 + kLevel1, kAtomDim * kLevel1 + kLevel3,
    kAtomDim * kLevel3 + kLevel1, kAtomDim * kLevel3 + kLevel3};

enum class BellKind {
  Psi,  // (|1A1B> + |3A3B>) / sqrt(2)
  Phi,  // (|1A3B> + |3A1B>) / sqrt(2)
};

const char* to_string(BellKind kind) noexcept;

struct PairState {
  ComplexMatrix rho;

  // Checked construction; throws NotAState.
  static PairState from_density(ComplexMatrix rho);
  static PairState product(const AtomState& a, const AtomState& b);
};

PairState bell_state(BellKind kind);

// Applies the tensor product of two single-atom channels to a pair state.
PairState apply_local_channels(const QuantumChannel& a, const QuantumChannel& b, const PairState& rho);

// Lambda_A(t) (x) Lambda_B(t) applied to rho0.
PairState evolve_pair(const VParams& params_a, const VParams& params_b, const PairState& rho0, double t);

// Generator of both atoms' master equations on the 9-dimensional pair space,
// built directly from A-operators (x) I and I (x) B-operators. 81x81.
ComplexMatrix joint_liouvillian(const VParams& params_a, const VParams& params_b);

// Normalized two-qubit state; `pre_norm_trace` is the weight the 4x4 block
// carried before normalization.
struct TwoQubitState {
  ComplexMatrix rho;
  double pre_norm_trace = 1.0;

  ComplexMatrix unnormalized() const { return rho * Complex(pre_norm_trace); }
};

// Unnormalized 4x4 block of the pair state on the two-qubit basis.
ComplexMatrix qubit_block(const PairState& rho);

// Compresses onto the two-qubit block and divides by its trace.
// Throws ZeroTrace when that trace is below 1e-14.
TwoQubitState project_to_qubits(const PairState& rho);

// Published two-qubit elements for identical atoms with p = 1. Only the
// printed elements are filled: rho11, rho22, rho33 and rho14 for Psi (all
// unnormalized, as printed) and the already-normalized rho23 for Phi. The
// Phi expression divides by the qubit-block trace, which is not printed; it
// is taken from the master-equation evolution and reported in `trace`.
struct PaperPairElements {
  std::optional<double> rho11;
  std::optional<double> rho22;
  std::optional<double> rho33;
  std::optional<double> rho14;
  std::optional<double> rho23;
  double trace = 1.0;
};

// Throws UnsupportedParams unless p = 1 and omega1 = omega2.
PaperPairElements paper_elements(const VParams& params, BellKind kind, double t);

// Published long-time ratio rho14 / sqrt(rho22 rho33) = 4 eta^2 / (1 + eta^2).
double paper_steady_ratio(const VParams& params);

}  // namespace vicsim
