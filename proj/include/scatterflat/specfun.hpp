#pragma once

/// Complex special functions underlying the scattering coefficients:
/// Gamma (Lanczos), Riemann zeta (Euler-Maclaurin), the completed zeta
/// Omega(s) = pi^(-s/2) * Gamma(s/2) * zeta(s), and the closed-form
/// line-integral factor F(s) = sqrt(pi) * Gamma(s - 1/2) / Gamma(s).

#include <complex>

#include "scatterflat/errors.hpp"

namespace scatterflat::specfun {

using Cplx = std::complex<double>;

/// Accuracy/budget knobs shared by the numeric evaluators.
struct EvalOptions {
    double target_abs_tol = 1e-13; ///< per-evaluation truncation target
    long max_terms = 200000;       ///< hard cap on series terms
};

/// Gamma(s). Poles at nonpositive integers raise PoleError.
/// Lanczos approximation (g = 607/128, 15 terms) with reflection for
/// Re s < 1/2; relative error ~1e-13 on the tested strip |Im s| <= 2000.
Cplx gamma_fn(Cplx s, const EvalOptions& opts = {});

/// log Gamma(s), exact modulo 2*pi*i (branch is unspecified; intended for
/// ratios under exp, where the 2*pi*i ambiguity cancels).
Cplx log_gamma(Cplx s, const EvalOptions& opts = {});

/// Riemann zeta via Euler-Maclaurin with adaptive term count
/// N ~ max(30, 2|Im s|). Valid for Re s >= -2 and |Im s| <= 4000; the pole
/// at s = 1 raises PoleError, out-of-domain input raises PreconditionError,
/// and failure to meet the truncation target raises BudgetError.
Cplx zeta_fn(Cplx s, const EvalOptions& opts = {});

/// Completed zeta Omega(s) = pi^(-s/2) Gamma(s/2) zeta(s).
/// Simple poles at s = 0 and s = 1 raise PoleError. Near the removable
/// points s in {-2,-4,...} (Gamma pole against a trivial zeta zero) the
/// reflected value Omega(1-s) is evaluated instead.
Cplx omega(Cplx s, const EvalOptions& opts = {});

/// log Omega(s), exact modulo 2*pi*i; same pole behavior as omega(). Used to
/// form Omega ratios without under/overflow at large |Im s|.
Cplx log_omega(Cplx s, const EvalOptions& opts = {});

/// F(s) = integral over R of (1+w^2)^(-s) dw = sqrt(pi) Gamma(s-1/2)/Gamma(s),
/// convergent for Re s > 1/2 (DivergenceError otherwise).
Cplx f_factor(Cplx s, const EvalOptions& opts = {});

} // namespace scatterflat::specfun
