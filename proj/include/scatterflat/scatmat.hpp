#pragma once

/// Scattering coefficients: the rank-one coefficient C(s) = Omega(2s-1)/Omega(2s),
/// the rank-two coefficient C(w, lambda) as a product of completed-zeta ratios
/// over the inversion set of w, the reduction of rank-two entries to rank-one
/// factors, the composition (cocycle) residual, and the truncated
/// Eisenstein-constant-term consistency check.

#include <array>
#include <complex>

#include "scatterflat/exactlin.hpp"
#include "scatterflat/specfun.hpp"

namespace scatterflat::scatmat {

using specfun::Cplx;
using specfun::EvalOptions;
using exactlin::Permutation;

/// Three-component complex spectral parameter with sum constrained to zero
/// (within 1e-12, checked at construction).
class SpectralParameter3 {
public:
    static SpectralParameter3 from_components(Cplx l1, Cplx l2, Cplx l3);
    /// Subtract the mean before validating; use when only differences matter.
    static SpectralParameter3 recentered(Cplx l1, Cplx l2, Cplx l3);

    Cplx at(int i) const { return lam_[static_cast<size_t>(i - 1)]; } // 1-based
    const std::array<Cplx, 3>& components() const { return lam_; }

    /// Weyl action: (w . lambda)_i = lambda_{w^{-1}(i)}.
    SpectralParameter3 weyl(const Permutation& w) const;

private:
    SpectralParameter3() = default;
    std::array<Cplx, 3> lam_;
};

/// A scattering value; at_pole flags evaluations inside the guard band
/// (distance < 1e-6) of a pole, where the value is returned but should not
/// be treated as finite ground truth. Exact pole hits throw PoleError.
struct ScatteringValue {
    Cplx value;
    bool at_pole = false;
};

/// C(s) = Omega(2s-1)/Omega(2s), evaluated in log space so that the Gamma
/// underflow at large |Im s| cancels before exponentiation. The removable
/// point s = 1/2 returns the limit -1 (ratio of the Omega residues at 0 and 1)
/// with at_pole = false. PoleError at s = 0 and s = 1.
ScatteringValue c_rank1(Cplx s, const EvalOptions& opts = {});

/// C(w, lambda) = prod over inversions (a,b) of w of
/// Omega(lambda_a - lambda_b) / Omega(1 + lambda_a - lambda_b).
/// Empty product (identity) is 1. PoleError if any difference is within
/// 1e-8 of {-1, 0, 1}.
ScatteringValue c_rank2(const Permutation& w, const SpectralParameter3& lambda,
                        const EvalOptions& opts = {});

/// Rank-one route: prod over inversions (a,b) of c_rank1((lambda_a-lambda_b+1)/2).
/// For the simple transpositions this is the single stated factor; for the
/// longest transposition it is the product over its three inversions.
/// PreconditionError if w is not a transposition.
ScatteringValue c_rank2_via_rank1(const Permutation& w, const SpectralParameter3& lambda,
                                  const EvalOptions& opts = {});

/// |C(w1 w2, lambda) - C(w1, w2.lambda) * C(w2, lambda)| for length-additive
/// pairs (PreconditionError if l(w1 w2) != l(w1) + l(w2)).
double cocycle_residual(const Permutation& w1, const Permutation& w2,
                        const SpectralParameter3& lambda, const EvalOptions& opts = {});

/// Assemble the truncated zero-mode coefficient
///   a0(y, s) = y^s + F(s) * y^(1-s) * sum_{c <= c_max} #{d mod c coprime} c^(-2s)
/// (each coprime pair contributes the closed-form horizontal integral
/// sqrt(pi) Gamma(s-1/2)/Gamma(s) * c^(-2s) * y^(1-s)) and return
/// |a0(y,s) - (y^s + C(s) y^(1-s))|. Preconditions: y >= 1, Re s >= 1.5.
double eisenstein_constant_term_check(double y, Cplx s, long c_max,
                                      const EvalOptions& opts = {});

} // namespace scatterflat::scatmat
