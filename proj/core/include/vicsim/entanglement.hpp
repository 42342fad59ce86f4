#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "vicsim/bipartite.hpp"
#include "vicsim/qlinalg.hpp"
#include "vicsim/vsystem.hpp"

namespace vicsim {

// Square roots of the eigenvalues of rho * rho_tilde, descending, where
// rho_tilde = (sy (x) sy) rho^* (sy (x) sy). Computed from the Hermitian
// matrix sqrt(rho) rho_tilde sqrt(rho).
std::array<double, 4> wootters_lambdas(const ComplexMatrix& rho);

// General spin-flip concurrence. Throws NotAState for a non-normalized,
// non-Hermitian or non-positive input.
double concurrence_wootters(const TwoQubitState& state);
double concurrence_wootters(const ComplexMatrix& rho);

// True when every entry off the diagonal and anti-diagonal is <= tol.
bool is_x_form(const ComplexMatrix& rho, double tol = 1e-10);

// 2 max{0, |rho14| - sqrt(rho22 rho33), |rho23| - sqrt(rho11 rho44)}.
// Throws NotXForm when the X pattern check fails.
double concurrence_x(const TwoQubitState& state);
double concurrence_x(const ComplexMatrix& rho);

// Unclamped Wootters combination lambda1 - lambda2 - lambda3 - lambda4 and
// the scale lambda1 + ... + lambda4. Uses exact X-state lambdas when the
// state is in X form. Concurrence is max(0, value).
struct ConcurrenceWitness {
  double value = 0.0;
  double scale = 0.0;
};

ConcurrenceWitness concurrence_witness(const ComplexMatrix& rho);

// X-form fast path when it applies, Wootters otherwise.
double concurrence(const TwoQubitState& state);

enum class CurveMethod {
  Oracle,  // master-equation evolution
  Paper,   // published matrix elements
};

const char* to_string(CurveMethod method) noexcept;

// Normalized elements behind one curve sample.
struct PointElements {
  double rho14_abs = 0.0;
  double rho23_abs = 0.0;
  double rho22 = 0.0;
  double rho33 = 0.0;
  double pre_norm_trace = 1.0;
};

struct ConcurrencePoint {
  double gamma_t = 0.0;
  double concurrence = 0.0;
  std::optional<PointElements> elements;
};

struct ConcurrenceCurve {
  std::vector<ConcurrencePoint> points;
  VParams params;
  BellKind kind = BellKind::Psi;
  CurveMethod method = CurveMethod::Oracle;
};

// steps evenly spaced points from 0 to t_max inclusive. Requires steps >= 2
// and t_max > 0.
std::vector<double> uniform_grid(double t_max, std::size_t steps);

// One sample at dimensionless time gamma_t.
ConcurrencePoint concurrence_at(const VParams& params, BellKind kind, double gamma_t, CurveMethod method);

// Concurrence at each gamma_t of a strictly increasing, non-negative grid.
ConcurrenceCurve concurrence_curve(const VParams& params, BellKind kind, std::span<const double> gamma_t_grid,
                                   CurveMethod method);

// Projected two-qubit state in the t -> infinity limit.
TwoQubitState steady_two_qubit(const VParams& params, BellKind kind);
TwoQubitState steady_two_qubit(const VParams& params, const PairState& rho0);

double steady_concurrence(const VParams& params, BellKind kind);

struct EsdResult {
  enum class Kind { VanishesAt, AsymptoticPositive, AsymptoticZero };
  Kind kind = Kind::AsymptoticZero;
  // gamma_t of death for VanishesAt, the limiting concurrence for
  // AsymptoticPositive, zero otherwise.
  double value = 0.0;
};

const char* to_string(EsdResult::Kind kind) noexcept;

struct EsdOptions {
  double threshold = 1e-12;
  double horizon = 50.0;          // in units of gamma_t
  std::size_t scan_samples = 2001;
  // Death requires the unclamped witness to be below -relative_margin * scale.
  double relative_margin = 1e-9;
};

// Finite-time death is a sign change of the unclamped witness, located by a
// grid scan plus bisection, after which concurrence must stay <= threshold
// up to the horizon. A state with concurrence <= threshold at t = 0 dies at
// 0. Otherwise the steady concurrence decides between the asymptotic kinds.
EsdResult esd_time(const VParams& params, BellKind kind, CurveMethod method, const EsdOptions& options = {});
EsdResult esd_time(const VParams& params, const PairState& rho0, const EsdOptions& options = {});

}  // namespace vicsim
