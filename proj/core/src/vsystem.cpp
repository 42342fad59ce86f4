#include "vicsim/vsystem.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vicsim/errors.hpp"

namespace vicsim {

namespace {

constexpr double kStateTolerance = 1e-10;

ComplexMatrix identity_embed(const ComplexMatrix& x) { return x; }

AtomState symmetrized(ComplexMatrix rho) {
  rho = 0.5 * (rho + rho.adjoint());
  return AtomState{std::move(rho)};
}

// Columns are |B>, |D>, |3> in the (|1>, |2>, |3>) basis.
ComplexMatrix bright_dark_basis(const VParams& params) {
  const ComplexVector b = bright_state(params);
  const ComplexVector d = dark_state(params);
  ComplexMatrix u(kAtomDim, kAtomDim);
  for (std::size_t i = 0; i < kAtomDim; ++i) {
    u(i, 0) = b[i];
    u(i, 1) = d[i];
  }
  u(kLevel3, 2) = 1.0;
  return u;
}

// rho(t) for p = 1, omega1 = omega2, written in the (B, D, 3) basis where the
// only jump operator is sqrt(2 G) |3><B| with G = gamma (1 + eta^2).
ComplexMatrix evolve_dark_bright(const VParams& params, const ComplexMatrix& u,
                                 const ComplexMatrix& rho0, double t) {
  constexpr std::size_t B = 0, D = 1, G = 2;
  const double rate = params.bright_rate();
  const double half = std::exp(-rate * t);
  const double full = std::exp(-2.0 * rate * t);
  const Complex rot = std::polar(1.0, -params.omega1 * t);

  ComplexMatrix s = u.adjoint() * rho0 * u;
  const Complex bright_pop = s(B, B);
  s(B, B) *= full;
  s(B, D) *= half;
  s(D, B) *= half;
  s(B, G) *= half * rot;
  s(G, B) *= half * std::conj(rot);
  s(D, G) *= rot;
  s(G, D) *= std::conj(rot);
  s(G, G) += (1.0 - full) * bright_pop;
  return u * s * u.adjoint();
}

void require_time(double t, const char* what) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw InvalidArgument(std::string(what) + ": time must be finite and >= 0");
  }
}

void require_paper_regime(const VParams& params, const char* what) {
  if (!params.maximal_interference() || !params.degenerate()) {
    throw UnsupportedParams(std::string(what) + ": requires p = 1 and omega1 = omega2");
  }
}

// Linear long-time map; no symmetrization so it can act on matrix units.
ComplexMatrix steady_limit(const VParams& params, const ComplexMatrix& rho0) {
  params.validate();

  if (params.maximal_interference() && params.degenerate()) {
    const ComplexMatrix u = bright_dark_basis(params);
    const ComplexMatrix s = u.adjoint() * rho0 * u;
    constexpr std::size_t B = 0, D = 1, G = 2;
    if (params.omega1 != 0.0 && (std::abs(s(D, G)) > 1e-12 || std::abs(s(G, D)) > 1e-12)) {
      throw NoConvergence("steady_state: dark/ground coherence keeps rotating for omega != 0");
    }
    ComplexMatrix limit(kAtomDim, kAtomDim);
    limit(D, D) = s(D, D);
    limit(D, G) = s(D, G);
    limit(G, D) = s(G, D);
    limit(G, G) = s(G, G) + s(B, B);
    return u * limit * u.adjoint();
  }

  // Slowest nonzero eigenvalue of the 2x2 decay-rate matrix sets the horizon.
  const double g1 = params.gamma1(), g2 = params.gamma2(), g12 = params.gamma12();
  const double mean = 0.5 * (g1 + g2);
  const double split = std::sqrt(0.25 * (g1 - g2) * (g1 - g2) + g12 * g12);
  const double fast = mean + split;
  const double slow = (mean - split > 1e-12 * fast) ? mean - split : fast;
  const double horizon = std::max(100.0 / params.bright_rate(), 100.0 / slow);

  const ComplexMatrix l = build_liouvillian(params);
  auto at = [&](double t) {
    return ComplexMatrix::unvec(expm(l * Complex(t)) * rho0.entries(), kAtomDim, kAtomDim);
  };
  for (double t = 1.0 / params.bright_rate(); t <= horizon; t *= 2.0) {
    const ComplexMatrix a = at(t);
    ComplexMatrix b = at(2.0 * t);
    if (max_abs_diff(a, b) <= 1e-12) return b;
  }
  throw NoConvergence("steady_state: no convergence before the time horizon");
}

}  // namespace

void VParams::validate() const {
  const bool finite = std::isfinite(gamma) && std::isfinite(eta) && std::isfinite(p) &&
                      std::isfinite(omega1) && std::isfinite(omega2);
  if (!finite) throw InvalidArgument("VParams: non-finite parameter");
  if (!(gamma > 0.0)) throw InvalidArgument("VParams: gamma must be > 0");
  if (!(eta >= 0.0)) throw InvalidArgument("VParams: eta must be >= 0");
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("VParams: p must lie in [0, 1]");
}

void require_density_matrix(const ComplexMatrix& rho, std::size_t dim, const char* what) {
  const std::string prefix(what);
  if (rho.rows() != dim || rho.cols() != dim) {
    throw NotAState(prefix + ": expected a " + std::to_string(dim) + "x" + std::to_string(dim) + " matrix");
  }
  if (hermiticity_defect(rho) > kStateTolerance) throw NotAState(prefix + ": not Hermitian");
  if (std::abs(rho.trace() - 1.0) > kStateTolerance) throw NotAState(prefix + ": trace is not 1");
  const Spectrum spec = hermitian_eig(rho);
  if (spec.eigenvalues.front() < -kStateTolerance) throw NotAState(prefix + ": not positive semidefinite");
}

AtomState AtomState::from_density(ComplexMatrix rho) {
  require_density_matrix(rho, kAtomDim, "AtomState");
  return AtomState{std::move(rho)};
}

AtomState AtomState::excited() { return AtomState{ComplexMatrix::unit(kAtomDim, kLevel1, kLevel1)}; }

AtomState AtomState::ground() { return AtomState{ComplexMatrix::unit(kAtomDim, kLevel3, kLevel3)}; }

AtomState AtomState::superposition() {
  const ComplexVector psi{1.0 / std::sqrt(2.0), 0.0, 1.0 / std::sqrt(2.0)};
  return AtomState{ComplexMatrix::outer(psi, psi)};
}

ComplexMatrix sandwich_superop(const ComplexMatrix& a, const ComplexMatrix& b) {
  return tensor_product(a, b.transpose());
}

ComplexMatrix master_equation_generator(const VParams& params,
                                        const std::function<ComplexMatrix(const ComplexMatrix&)>& embed,
                                        std::size_t dim) {
  params.validate();
  const ComplexMatrix id = ComplexMatrix::identity(dim);
  auto op = [&](std::size_t i, std::size_t j) { return embed(ComplexMatrix::unit(kAtomDim, i, j)); };
  // -c (X rho - 2 Y rho Z + rho X)
  auto damping = [&](double c, const ComplexMatrix& x, const ComplexMatrix& y, const ComplexMatrix& z) {
    ComplexMatrix term = sandwich_superop(x, id) + sandwich_superop(id, x) - 2.0 * sandwich_superop(y, z);
    return term * Complex(-c);
  };

  const Complex i_unit(0.0, 1.0);
  const double omega[2] = {params.omega1, params.omega2};
  const double rate[2] = {params.gamma1(), params.gamma2()};
  const std::size_t excited[2] = {kLevel1, kLevel2};

  ComplexMatrix l = ComplexMatrix::zeros(dim * dim, dim * dim);
  for (int k = 0; k < 2; ++k) {
    const std::size_t e = excited[k];
    const ComplexMatrix h = op(e, e) * Complex(omega[k]);
    l -= i_unit * (sandwich_superop(h, id) - sandwich_superop(id, h));
    l += damping(rate[k], op(e, e), op(kLevel3, e), op(e, kLevel3));
  }
  // Cross-damping and its (1 <-> 2) partner.
  l += damping(params.gamma12(), op(kLevel1, kLevel2), op(kLevel3, kLevel2), op(kLevel1, kLevel3));
  l += damping(params.gamma12(), op(kLevel2, kLevel1), op(kLevel3, kLevel1), op(kLevel2, kLevel3));
  return l;
}

ComplexMatrix build_liouvillian(const VParams& params) {
  return master_equation_generator(params, identity_embed, kAtomDim);
}

QuantumChannel::QuantumChannel(ComplexMatrix superop) : superop_(std::move(superop)) {
  if (superop_.rows() != kAtomDim * kAtomDim || superop_.cols() != kAtomDim * kAtomDim) {
    throw InvalidArgument("QuantumChannel: expected a 9x9 superoperator");
  }
}

AtomState QuantumChannel::apply(const AtomState& state) const { return AtomState{apply(state.rho)}; }

ComplexMatrix QuantumChannel::apply(const ComplexMatrix& rho) const {
  const ComplexVector out = superop_ * rho.entries();
  return ComplexMatrix::unvec(out, kAtomDim, kAtomDim);
}

double default_rk4_step(const VParams& params) { return 1e-3 / params.bright_rate(); }

AtomState propagate_rk4(const VParams& params, const AtomState& rho0, double t, double dt) {
  require_time(t, "propagate_rk4");
  const ComplexMatrix l = build_liouvillian(params);
  if (t == 0.0) return rho0;
  if (!(dt > 0.0)) throw InvalidArgument("propagate_rk4: dt must be > 0");
  if (dt * max_row_sum_norm(l) > 0.5) {
    throw StepTooLarge("propagate_rk4: dt * ||L|| exceeds 0.5");
  }

  const auto steps = static_cast<std::size_t>(std::ceil(t / dt - 1e-9));
  const double h = t / static_cast<double>(steps);
  ComplexVector x = rho0.rho.vec();
  ComplexVector tmp(x.size());
  auto axpy = [&](const ComplexVector& base, const ComplexVector& k, double c) {
    for (std::size_t i = 0; i < base.size(); ++i) tmp[i] = base[i] + c * k[i];
    return tmp;
  };
  for (std::size_t n = 0; n < steps; ++n) {
    const ComplexVector k1 = l * std::span<const Complex>(x);
    const ComplexVector k2 = l * std::span<const Complex>(axpy(x, k1, 0.5 * h));
    const ComplexVector k3 = l * std::span<const Complex>(axpy(x, k2, 0.5 * h));
    const ComplexVector k4 = l * std::span<const Complex>(axpy(x, k3, h));
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    ComplexMatrix rho = ComplexMatrix::unvec(x, kAtomDim, kAtomDim);
    x = symmetrized(std::move(rho)).rho.vec();
  }
  return AtomState{ComplexMatrix::unvec(x, kAtomDim, kAtomDim)};
}

AtomState propagate_rk4(const VParams& params, const AtomState& rho0, double t) {
  return propagate_rk4(params, rho0, t, default_rk4_step(params));
}

AtomState propagate_spectral(const VParams& params, const AtomState& rho0, double t) {
  require_time(t, "propagate_spectral");
  if (t == 0.0) return rho0;
  const ComplexMatrix prop = expm(build_liouvillian(params) * Complex(t));
  return AtomState{ComplexMatrix::unvec(prop * rho0.rho.entries(), kAtomDim, kAtomDim)};
}

QuantumChannel dark_bright_channel(const VParams& params, double t) {
  params.validate();
  require_paper_regime(params, "dark_bright_channel");
  require_time(t, "dark_bright_channel");

  const ComplexMatrix u = bright_dark_basis(params);
  constexpr std::size_t n = kAtomDim * kAtomDim;
  ComplexMatrix superop(n, n);
  // Column 3 i + j is vec of the image of |i><j|.
  for (std::size_t i = 0; i < kAtomDim; ++i) {
    for (std::size_t j = 0; j < kAtomDim; ++j) {
      const ComplexMatrix image = evolve_dark_bright(params, u, ComplexMatrix::unit(kAtomDim, i, j), t);
      for (std::size_t r = 0; r < n; ++r) superop(r, kAtomDim * i + j) = image.entries()[r];
    }
  }
  return QuantumChannel(std::move(superop));
}

QuantumChannel propagate_channel(const VParams& params, double t) {
  params.validate();
  require_time(t, "propagate_channel");
  if (params.maximal_interference() && params.degenerate()) return dark_bright_channel(params, t);
  return QuantumChannel(expm(build_liouvillian(params) * Complex(t)));
}

ComplexVector dark_state(const VParams& params) {
  const double norm = std::sqrt(1.0 + params.eta * params.eta);
  return {params.eta / norm, -1.0 / norm, 0.0};
}

ComplexVector bright_state(const VParams& params) {
  const double norm = std::sqrt(1.0 + params.eta * params.eta);
  return {1.0 / norm, params.eta / norm, 0.0};
}

double dark_population(const VParams& params, const ComplexMatrix& rho) {
  const ComplexVector d = dark_state(params);
  Complex acc = 0.0;
  for (std::size_t i = 0; i < kAtomDim; ++i) {
    for (std::size_t j = 0; j < kAtomDim; ++j) acc += std::conj(d[i]) * rho(i, j) * d[j];
  }
  return acc.real();
}

PaperConstants paper_constants(const AtomState& rho0) {
  const ComplexMatrix& r = rho0.rho;
  const double pop = r(kLevel1, kLevel1).real() + r(kLevel2, kLevel2).real();
  const double coh = (r(kLevel1, kLevel2) + r(kLevel2, kLevel1)).real();
  return {0.5 * (pop + coh), 0.5 * (pop - coh)};
}

PaperAtomElements paper_closed_form(const VParams& params, const AtomState& rho0, double t) {
  params.validate();
  require_paper_regime(params, "paper_closed_form");
  require_time(t, "paper_closed_form");

  const double eta2 = params.eta * params.eta;
  const double k = 1.0 + eta2;
  const double e1 = std::exp(-params.gamma * k * t);
  const double e2 = std::exp(-2.0 * params.gamma * k * t);
  const auto [alpha, beta] = paper_constants(rho0);
  const ComplexMatrix& r = rho0.rho;

  PaperAtomElements out;
  out.rho11 = 0.5 * e1 * (r(kLevel1, kLevel1).real() - r(kLevel2, kLevel2).real()) +
              0.5 * (2.0 / k * e2 - (1.0 - eta2) / k * e1) * alpha +
              0.5 * (2.0 * eta2 / k - (1.0 - eta2) / k * e1) * beta;
  out.rho33 = 1.0 - e2 * alpha - beta;
  out.rho13 = (eta2 + e1) / k * r(kLevel1, kLevel3) - params.eta / k * (1.0 - e1) * r(kLevel2, kLevel3);
  return out;
}

double paper_steady_rho11(const VParams& params, const AtomState& rho0) {
  params.validate();
  const double eta2 = params.eta * params.eta;
  return eta2 / (1.0 + eta2) * paper_constants(rho0).beta;
}

AtomState steady_state(const VParams& params, const AtomState& rho0) {
  return symmetrized(steady_limit(params, rho0.rho));
}

QuantumChannel steady_channel(const VParams& params) {
  constexpr std::size_t n = kAtomDim * kAtomDim;
  ComplexMatrix superop(n, n);
  for (std::size_t i = 0; i < kAtomDim; ++i) {
    for (std::size_t j = 0; j < kAtomDim; ++j) {
      const ComplexMatrix image = steady_limit(params, ComplexMatrix::unit(kAtomDim, i, j));
      for (std::size_t r = 0; r < n; ++r) superop(r, kAtomDim * i + j) = image.entries()[r];
    }
  }
  return QuantumChannel(std::move(superop));
}

}  // namespace vicsim
