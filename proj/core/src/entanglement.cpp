#include "vicsim/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include "vicsim/errors.hpp"

namespace vicsim {

namespace {

// sigma_y (x) sigma_y
const ComplexMatrix& spin_flip() {
  static const ComplexMatrix yy{
      {0.0, 0.0, 0.0, -1.0},
      {0.0, 0.0, 1.0, 0.0},
      {0.0, 1.0, 0.0, 0.0},
      {-1.0, 0.0, 0.0, 0.0},
  };
  return yy;
}

void require_two_qubit_shape(const ComplexMatrix& rho, const char* what) {
  if (rho.rows() != kQubitPairDim || rho.cols() != kQubitPairDim) {
    throw NotAState(std::string(what) + ": expected a 4x4 matrix");
  }
}

std::array<double, 4> sorted_descending(std::array<double, 4> v) {
  std::stable_sort(v.begin(), v.end(), std::greater<>());
  return v;
}

// Exact Wootters lambdas of an X state: one pair per 2x2 coherence block.
std::array<double, 4> x_lambdas(const ComplexMatrix& rho) {
  const double outer = std::sqrt(std::max(0.0, rho(0, 0).real() * rho(3, 3).real()));
  const double inner = std::sqrt(std::max(0.0, rho(1, 1).real() * rho(2, 2).real()));
  const double c14 = std::abs(rho(0, 3));
  const double c23 = std::abs(rho(1, 2));
  return sorted_descending({outer + c14, std::abs(outer - c14), inner + c23, std::abs(inner - c23)});
}

ConcurrenceWitness witness_from(const std::array<double, 4>& l) {
  return {l[0] - l[1] - l[2] - l[3], l[0] + l[1] + l[2] + l[3]};
}

void require_grid(std::span<const double> grid) {
  if (grid.empty()) throw InvalidArgument("concurrence_curve: empty time grid");
  if (!(grid.front() >= 0.0)) throw InvalidArgument("concurrence_curve: negative time");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw InvalidArgument("concurrence_curve: grid must be strictly increasing");
  }
}

TwoQubitState oracle_two_qubit(const VParams& params, const PairState& rho0, double gamma_t) {
  return project_to_qubits(evolve_pair(params, params, rho0, gamma_t / params.gamma));
}

// Master-equation state with the elements entering the published concurrence
// formula replaced by their published expressions, normalized by the
// master-equation trace.
TwoQubitState paper_two_qubit(const VParams& params, BellKind kind, double gamma_t) {
  const double t = gamma_t / params.gamma;
  TwoQubitState state = oracle_two_qubit(params, bell_state(kind), gamma_t);
  const PaperPairElements pe = paper_elements(params, kind, t);
  const double tr = pe.trace;
  if (kind == BellKind::Psi) {
    state.rho(1, 1) = *pe.rho22 / tr;
    state.rho(2, 2) = *pe.rho33 / tr;
    state.rho(0, 3) = *pe.rho14 / tr;
    state.rho(3, 0) = *pe.rho14 / tr;
  } else {
    state.rho(1, 2) = *pe.rho23;
    state.rho(2, 1) = *pe.rho23;
  }
  return state;
}

PointElements elements_of(const TwoQubitState& s) {
  return {std::abs(s.rho(0, 3)), std::abs(s.rho(1, 2)), s.rho(1, 1).real(), s.rho(2, 2).real(),
          s.pre_norm_trace};
}

EsdResult find_esd(const std::function<TwoQubitState(double)>& sample, const std::function<double()>& limit,
                   const EsdOptions& options) {
  if (!(options.horizon > 0.0) || options.scan_samples < 2 || !(options.threshold >= 0.0)) {
    throw InvalidArgument("esd_time: invalid options");
  }
  const double thr = options.threshold;
  auto witness_at = [&](double gt) { return concurrence_witness(sample(gt).rho); };
  auto dead = [&](const ConcurrenceWitness& w) {
    return w.value < 0.0 && w.value <= -options.relative_margin * w.scale;
  };

  if (std::max(0.0, witness_at(0.0).value) <= thr) return {EsdResult::Kind::VanishesAt, 0.0};

  const std::size_t n = options.scan_samples;
  std::vector<double> grid(n);
  std::vector<ConcurrenceWitness> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    grid[i] = options.horizon * static_cast<double>(i) / static_cast<double>(n - 1);
    w[i] = witness_at(grid[i]);
  }

  for (std::size_t i = 1; i < n; ++i) {
    if (!dead(w[i])) continue;
    std::size_t revival = n;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::max(0.0, w[j].value) > thr) {
        revival = j;
        break;
      }
    }
    if (revival != n) {
      i = revival;
      continue;
    }
    double lo = grid[i - 1];
    double hi = grid[i];
    for (int iter = 0; iter < 200 && hi - lo > 1e-14 * options.horizon; ++iter) {
      const double mid = 0.5 * (lo + hi);
      (dead(witness_at(mid)) ? hi : lo) = mid;
    }
    return {EsdResult::Kind::VanishesAt, hi};
  }

  const double c_inf = limit();
  if (c_inf > 10.0 * thr) return {EsdResult::Kind::AsymptoticPositive, c_inf};
  return {EsdResult::Kind::AsymptoticZero, 0.0};
}

}  // namespace

std::array<double, 4> wootters_lambdas(const ComplexMatrix& rho) {
  require_two_qubit_shape(rho, "wootters_lambdas");
  const ComplexMatrix root = psd_sqrt(rho);
  const ComplexMatrix tilde = spin_flip() * rho.conj() * spin_flip();
  ComplexMatrix m = root * tilde * root;
  m = 0.5 * (m + m.adjoint());
  const Spectrum spec = hermitian_eig(m);
  std::array<double, 4> l{};
  for (std::size_t k = 0; k < 4; ++k) l[k] = std::sqrt(std::max(0.0, spec.eigenvalues[k]));
  return sorted_descending(l);
}

double concurrence_wootters(const ComplexMatrix& rho) {
  require_two_qubit_shape(rho, "concurrence_wootters");
  require_density_matrix(rho, kQubitPairDim, "concurrence_wootters");
  const auto l = wootters_lambdas(rho);
  return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

double concurrence_wootters(const TwoQubitState& state) { return concurrence_wootters(state.rho); }

bool is_x_form(const ComplexMatrix& rho, double tol) {
  if (rho.rows() != kQubitPairDim || rho.cols() != kQubitPairDim) return false;
  for (std::size_t i = 0; i < kQubitPairDim; ++i) {
    for (std::size_t j = 0; j < kQubitPairDim; ++j) {
      const bool on_x = (i == j) || (i + j == kQubitPairDim - 1);
      if (!on_x && std::abs(rho(i, j)) > tol) return false;
    }
  }
  return true;
}

double concurrence_x(const ComplexMatrix& rho) {
  require_two_qubit_shape(rho, "concurrence_x");
  if (!is_x_form(rho)) throw NotXForm("concurrence_x: state is not in X form");
  const double b14 = std::abs(rho(0, 3)) - std::sqrt(std::max(0.0, rho(1, 1).real() * rho(2, 2).real()));
  const double b23 = std::abs(rho(1, 2)) - std::sqrt(std::max(0.0, rho(0, 0).real() * rho(3, 3).real()));
  return 2.0 * std::max({0.0, b14, b23});
}

double concurrence_x(const TwoQubitState& state) { return concurrence_x(state.rho); }

ConcurrenceWitness concurrence_witness(const ComplexMatrix& rho) {
  require_two_qubit_shape(rho, "concurrence_witness");
  return witness_from(is_x_form(rho) ? x_lambdas(rho) : wootters_lambdas(rho));
}

double concurrence(const TwoQubitState& state) {
  return is_x_form(state.rho) ? concurrence_x(state) : concurrence_wootters(state);
}

const char* to_string(CurveMethod method) noexcept {
  return method == CurveMethod::Oracle ? "oracle" : "paper";
}

std::vector<double> uniform_grid(double t_max, std::size_t steps) {
  if (steps < 2) throw InvalidArgument("uniform_grid: steps must be >= 2");
  if (!(t_max > 0.0) || !std::isfinite(t_max)) throw InvalidArgument("uniform_grid: t_max must be > 0");
  std::vector<double> grid(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    grid[i] = t_max * static_cast<double>(i) / static_cast<double>(steps - 1);
  }
  return grid;
}

ConcurrencePoint concurrence_at(const VParams& params, BellKind kind, double gamma_t, CurveMethod method) {
  params.validate();
  const TwoQubitState state = method == CurveMethod::Oracle
                                  ? oracle_two_qubit(params, bell_state(kind), gamma_t)
                                  : paper_two_qubit(params, kind, gamma_t);
  const double c = method == CurveMethod::Oracle ? concurrence(state) : concurrence_x(state);
  return {gamma_t, c, elements_of(state)};
}

ConcurrenceCurve concurrence_curve(const VParams& params, BellKind kind, std::span<const double> gamma_t_grid,
                                   CurveMethod method) {
  require_grid(gamma_t_grid);
  ConcurrenceCurve curve{{}, params, kind, method};
  curve.points.reserve(gamma_t_grid.size());
  for (const double gt : gamma_t_grid) curve.points.push_back(concurrence_at(params, kind, gt, method));
  return curve;
}

TwoQubitState steady_two_qubit(const VParams& params, const PairState& rho0) {
  const QuantumChannel limit = steady_channel(params);
  return project_to_qubits(apply_local_channels(limit, limit, rho0));
}

TwoQubitState steady_two_qubit(const VParams& params, BellKind kind) {
  return steady_two_qubit(params, bell_state(kind));
}

double steady_concurrence(const VParams& params, BellKind kind) {
  return concurrence(steady_two_qubit(params, kind));
}

const char* to_string(EsdResult::Kind kind) noexcept {
  switch (kind) {
    case EsdResult::Kind::VanishesAt:
      return "vanishes_at";
    case EsdResult::Kind::AsymptoticPositive:
      return "asymptotic_positive";
    case EsdResult::Kind::AsymptoticZero:
      return "asymptotic_zero";
  }
  return "unknown";
}

EsdResult esd_time(const VParams& params, BellKind kind, CurveMethod method, const EsdOptions& options) {
  params.validate();
  if (method == CurveMethod::Oracle) return esd_time(params, bell_state(kind), options);
  // Published expressions have no separate limit; their value at the horizon stands in.
  return find_esd([&](double gt) { return paper_two_qubit(params, kind, gt); },
                  [&] { return concurrence_x(paper_two_qubit(params, kind, options.horizon)); }, options);
}

EsdResult esd_time(const VParams& params, const PairState& rho0, const EsdOptions& options) {
  params.validate();
  return find_esd([&](double gt) { return oracle_two_qubit(params, rho0, gt); },
                  [&] { return concurrence(steady_two_qubit(params, rho0)); }, options);
}

}  // namespace vicsim
