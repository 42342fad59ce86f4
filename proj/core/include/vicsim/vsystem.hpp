#pragma once

// Single three-level atom in V configuration: excited levels |1>, |2> decay
// to the common ground level |3>. Basis order is (|1>, |2>, |3>) -> (0, 1, 2).
// Density matrices are vectorized row-major, vec[3 i + j] = rho(i, j).

#include <functional>

#include "vicsim/qlinalg.hpp"

namespace vicsim {

inline constexpr std::size_t kAtomDim = 3;
inline constexpr std::size_t kLevel1 = 0;
inline constexpr std::size_t kLevel2 = 1;
inline constexpr std::size_t kLevel3 = 2;

// Physical parameters of one V system. Rates are half-rates: the |1> -> |3>
// population decays at 2 * gamma. The cross-damping is p * eta * gamma, so
// p = 1 is maximal interference and p = 0 switches it off.
struct VParams {
  double gamma = 1.0;
  double eta = 1.0;
  double p = 1.0;
  double omega1 = 0.0;
  double omega2 = 0.0;

  double gamma1() const noexcept { return gamma; }
  double gamma2() const noexcept { return eta * eta * gamma; }
  double gamma12() const noexcept { return p * eta * gamma; }
  // Decay constant of the bright superposition's coherences, gamma (1 + eta^2).
  double bright_rate() const noexcept { return gamma * (1.0 + eta * eta); }
  bool degenerate() const noexcept { return omega1 == omega2; }
  bool maximal_interference() const noexcept { return p == 1.0; }

  // Throws InvalidArgument unless gamma > 0, eta >= 0, 0 <= p <= 1 and all finite.
  void validate() const;
};

// Throws NotAState unless rho is dim x dim, Hermitian and unit trace to
// 1e-10, with eigenvalues >= -1e-10. `what` prefixes the message.
void require_density_matrix(const ComplexMatrix& rho, std::size_t dim, const char* what);

struct AtomState {
  ComplexMatrix rho;

  // Checked construction: Hermitian and unit trace to 1e-10, eigenvalues
  // >= -1e-10. Throws NotAState.
  static AtomState from_density(ComplexMatrix rho);

  static AtomState excited();       // |1><1|
  static AtomState ground();        // |3><3|
  static AtomState superposition(); // (|1> + |3>)(<1| + <3|) / 2
};

// Superoperator of rho -> a rho b in the row-major convention, a (x) b^T.
ComplexMatrix sandwich_superop(const ComplexMatrix& a, const ComplexMatrix& b);

// Generator of the atomic master equation with every atomic operator passed
// through `embed` first. `dim` is the dimension of the embedded space. With
// the identity embedding this is the single-atom Liouvillian; embedding into
// one factor of a tensor product gives that atom's part of a joint generator.
ComplexMatrix master_equation_generator(const VParams& params,
                                        const std::function<ComplexMatrix(const ComplexMatrix&)>& embed,
                                        std::size_t dim);

// 9x9 Liouvillian L with vec(d rho / dt) = L vec(rho).
ComplexMatrix build_liouvillian(const VParams& params);

// Linear map on vectorized 3x3 density matrices for a fixed elapsed time.
class QuantumChannel {
 public:
  explicit QuantumChannel(ComplexMatrix superop);

  const ComplexMatrix& matrix() const noexcept { return superop_; }
  AtomState apply(const AtomState& state) const;
  ComplexMatrix apply(const ComplexMatrix& rho) const;

 private:
  ComplexMatrix superop_;
};

// RK4 step used when the caller does not pick one: 1e-3 / (gamma (1 + eta^2)).
double default_rk4_step(const VParams& params);

// Classical RK4 on vec(rho). The state is re-symmetrized after every step.
// Throws StepTooLarge when dt * ||L||_inf > 0.5.
AtomState propagate_rk4(const VParams& params, const AtomState& rho0, double t, double dt);
AtomState propagate_rk4(const VParams& params, const AtomState& rho0, double t);

// vec(rho(t)) = expm(L t) vec(rho0).
AtomState propagate_spectral(const VParams& params, const AtomState& rho0, double t);

// Closed-form channel from the bright/dark decomposition. Only valid for
// p = 1 and omega1 = omega2; throws UnsupportedParams otherwise.
QuantumChannel dark_bright_channel(const VParams& params, double t);

// Channel for elapsed time t: the closed form where it applies, expm(L t)
// otherwise.
QuantumChannel propagate_channel(const VParams& params, double t);

// (eta |1> - |2>) / sqrt(1 + eta^2) and (|1> + eta |2>) / sqrt(1 + eta^2).
ComplexVector dark_state(const VParams& params);
ComplexVector bright_state(const VParams& params);

// <D| rho |D>
double dark_population(const VParams& params, const ComplexMatrix& rho);

struct PaperConstants {
  double alpha = 0.0;
  double beta = 0.0;
};

PaperConstants paper_constants(const AtomState& rho0);

// Published closed forms for rho11, rho33 and rho13, transcribed as printed.
// They agree with the master equation at eta = 1 only.
struct PaperAtomElements {
  double rho11 = 0.0;
  double rho33 = 0.0;
  Complex rho13;
};

// Requires p = 1 and omega1 = omega2 (throws UnsupportedParams).
PaperAtomElements paper_closed_form(const VParams& params, const AtomState& rho0, double t);

// Published long-time excited population eta^2 beta / (1 + eta^2).
double paper_steady_rho11(const VParams& params, const AtomState& rho0);

// Long-time limit. Analytic dark-state projection for p = 1 with degenerate
// frequencies; otherwise expm(L T) with T doubled until ||rho(T) - rho(2T)||
// <= 1e-12. Throws NoConvergence.
AtomState steady_state(const VParams& params, const AtomState& rho0);

// The t -> infinity channel, one steady_state per matrix unit.
QuantumChannel steady_channel(const VParams& params);

}  // namespace vicsim
