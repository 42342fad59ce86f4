#include "vicsim/bipartite.hpp"

#include <cmath>

#include "vicsim/errors.hpp"

namespace vicsim {

namespace {

// Position of pair element (a b, a' b') inside vec of the (a a') (x) (b b')
// ordering on which Lambda_A (x) Lambda_B acts.
std::size_t local_order_index(std::size_t a, std::size_t b, std::size_t ap, std::size_t bp) {
  return kPairDim * (kAtomDim * a + ap) + kAtomDim * b + bp;
}

}  // namespace

const char* to_string(BellKind kind) noexcept {
  switch (kind) {
    case BellKind::Psi:
      return "psi";
    case BellKind::Phi:
      return "phi";
  }
  return "unknown";
}

PairState PairState::from_density(ComplexMatrix rho) {
  require_density_matrix(rho, kPairDim, "PairState");
  return PairState{std::move(rho)};
}

PairState PairState::product(const AtomState& a, const AtomState& b) {
  return PairState{tensor_product(a.rho, b.rho)};
}

PairState bell_state(BellKind kind) {
  ComplexVector psi(kPairDim);
  const double amp = 1.0 / std::sqrt(2.0);
  if (kind == BellKind::Psi) {
    psi[kQubitBasis[0]] = amp;
    psi[kQubitBasis[3]] = amp;
  } else {
    psi[kQubitBasis[1]] = amp;
    psi[kQubitBasis[2]] = amp;
  }
  return PairState{ComplexMatrix::outer(psi, psi)};
}

PairState apply_local_channels(const QuantumChannel& a, const QuantumChannel& b, const PairState& rho) {
  const ComplexMatrix both = tensor_product(a.matrix(), b.matrix());

  ComplexVector x(kPairDim * kPairDim);
  for (std::size_t i = 0; i < kAtomDim; ++i)
    for (std::size_t j = 0; j < kAtomDim; ++j)
      for (std::size_t ip = 0; ip < kAtomDim; ++ip)
        for (std::size_t jp = 0; jp < kAtomDim; ++jp)
          x[local_order_index(i, j, ip, jp)] = rho.rho(kAtomDim * i + j, kAtomDim * ip + jp);

  const ComplexVector y = both * std::span<const Complex>(x);

  ComplexMatrix out(kPairDim, kPairDim);
  for (std::size_t i = 0; i < kAtomDim; ++i)
    for (std::size_t j = 0; j < kAtomDim; ++j)
      for (std::size_t ip = 0; ip < kAtomDim; ++ip)
        for (std::size_t jp = 0; jp < kAtomDim; ++jp)
          out(kAtomDim * i + j, kAtomDim * ip + jp) = y[local_order_index(i, j, ip, jp)];
  return PairState{std::move(out)};
}

PairState evolve_pair(const VParams& params_a, const VParams& params_b, const PairState& rho0, double t) {
  if (t == 0.0) return rho0;
  return apply_local_channels(propagate_channel(params_a, t), propagate_channel(params_b, t), rho0);
}

ComplexMatrix joint_liouvillian(const VParams& params_a, const VParams& params_b) {
  const ComplexMatrix id = ComplexMatrix::identity(kAtomDim);
  auto on_a = [&](const ComplexMatrix& x) { return tensor_product(x, id); };
  auto on_b = [&](const ComplexMatrix& x) { return tensor_product(id, x); };
  return master_equation_generator(params_a, on_a, kPairDim) +
         master_equation_generator(params_b, on_b, kPairDim);
}

ComplexMatrix qubit_block(const PairState& rho) {
  if (rho.rho.rows() != kPairDim || rho.rho.cols() != kPairDim) {
    throw InvalidArgument("qubit_block: expected a 9x9 pair state");
  }
  ComplexMatrix block(kQubitPairDim, kQubitPairDim);
  for (std::size_t i = 0; i < kQubitPairDim; ++i) {
    for (std::size_t j = 0; j < kQubitPairDim; ++j) block(i, j) = rho.rho(kQubitBasis[i], kQubitBasis[j]);
  }
  return block;
}

TwoQubitState project_to_qubits(const PairState& rho) {
  ComplexMatrix block = qubit_block(rho);
  const double tr = block.trace().real();
  if (!(tr >= 1e-14)) throw ZeroTrace("project_to_qubits: state has no weight in the qubit subspace");
  block *= Complex(1.0 / tr);
  return TwoQubitState{std::move(block), tr};
}

PaperPairElements paper_elements(const VParams& params, BellKind kind, double t) {
  params.validate();
  if (!params.maximal_interference() || !params.degenerate()) {
    throw UnsupportedParams("paper_elements: requires p = 1 and omega1 = omega2");
  }
  if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidArgument("paper_elements: time must be finite and >= 0");

  const double eta2 = params.eta * params.eta;
  const double k = 1.0 + eta2;
  const double e = std::exp(-params.gamma * k * t);
  const double e2 = e * e;
  const double e3 = e2 * e;
  const double e4 = e2 * e2;
  const double coherence = (eta2 + e) * (eta2 + e) / (2.0 * k * k);

  PaperPairElements out;
  out.trace = qubit_block(evolve_pair(params, params, bell_state(kind), t)).trace().real();
  if (kind == BellKind::Psi) {
    out.rho11 = (eta2 * eta2 + e4 + 2.0 * k * e3 + (1.0 + eta2 * eta2 + 4.0 * eta2) * e2 + 2.0 * eta2 * k * e) /
                (8.0 * k);
    out.rho22 = (eta2 - e4 - k * e3 + (1.0 - eta2) * e2 + k * e) / (8.0 * k);
    out.rho33 = out.rho22;
    out.rho14 = coherence;
  } else {
    out.rho23 = coherence / out.trace;
  }
  return out;
}

double paper_steady_ratio(const VParams& params) {
  params.validate();
  const double eta2 = params.eta * params.eta;
  return 4.0 * eta2 / (1.0 + eta2);
}

}  // namespace vicsim
