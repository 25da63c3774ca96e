/// Scattering coefficients for the rank-one and rank-two flat-cusp models,
/// their reduction/composition identities, and the truncated constant-term
/// consistency check.

#include "scatterflat/scatmat.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace scatterflat::scatmat {

namespace {

constexpr double kPoleGuardHard = 1e-8; // inside: PoleError
constexpr double kPoleGuardSoft = 1e-6; // inside: at_pole flag

std::string fmt(Cplx z) {
    std::ostringstream os;
    os << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
    return os.str();
}

double dist_to(Cplx z, double p) { return std::abs(z - Cplx(p, 0.0)); }

} // namespace

// ---------------------------------------------------------------------------
// SpectralParameter3

SpectralParameter3 SpectralParameter3::from_components(Cplx l1, Cplx l2, Cplx l3) {
    const Cplx sum = l1 + l2 + l3;
    if (std::abs(sum) > 1e-12)
        throw PreconditionError("spectral_sum",
                                "spectral parameter components must sum to zero; got sum = " +
                                    fmt(sum));
    SpectralParameter3 p;
    p.lam_ = {l1, l2, l3};
    return p;
}

SpectralParameter3 SpectralParameter3::recentered(Cplx l1, Cplx l2, Cplx l3) {
    const Cplx mean = (l1 + l2 + l3) / 3.0;
    return from_components(l1 - mean, l2 - mean, l3 - mean);
}

SpectralParameter3 SpectralParameter3::weyl(const Permutation& w) const {
    if (w.n() != 3)
        throw PreconditionError("bad_permutation", "spectral action needs a degree-3 permutation");
    const Permutation winv = w.inverse();
    SpectralParameter3 p;
    for (int i = 1; i <= 3; ++i) p.lam_[static_cast<size_t>(i - 1)] = at(winv.apply(i));
    return p;
}

// ---------------------------------------------------------------------------
// Rank-one coefficient

ScatteringValue c_rank1(Cplx s, const EvalOptions& opts) {
    if (dist_to(s, 0.0) < kPoleGuardHard || dist_to(s, 1.0) < kPoleGuardHard)
        throw PoleError("scattering_pole",
                        "rank-one coefficient has poles at s = 0 and s = 1; got s = " + fmt(s));
    // Removable point: both completed-zeta factors have simple poles whose
    // residues are -1 and +1, so the ratio tends to -1.
    if (dist_to(s, 0.5) < kPoleGuardHard) return {Cplx(-1.0, 0.0), false};

    const Cplx value =
        std::exp(specfun::log_omega(2.0 * s - 1.0, opts) - specfun::log_omega(2.0 * s, opts));
    const bool near = dist_to(s, 0.0) < kPoleGuardSoft || dist_to(s, 1.0) < kPoleGuardSoft;
    return {value, near};
}

// ---------------------------------------------------------------------------
// Rank-two coefficient

ScatteringValue c_rank2(const Permutation& w, const SpectralParameter3& lambda,
                        const EvalOptions& opts) {
    if (w.n() != 3)
        throw PreconditionError("bad_permutation", "rank-two coefficient needs w in S_3");
    ScatteringValue out{Cplx(1.0, 0.0), false};
    Cplx log_sum(0.0, 0.0);
    for (const auto& [a, b] : w.inversions()) {
        const Cplx d = lambda.at(a) - lambda.at(b);
        for (double p : {-1.0, 0.0, 1.0}) {
            if (dist_to(d, p) < kPoleGuardHard)
                throw PoleError("scattering_pole",
                                "rank-two coefficient pole: lambda_" + std::to_string(a) +
                                    " - lambda_" + std::to_string(b) + " = " + fmt(d) +
                                    " is too close to " + std::to_string(static_cast<int>(p)));
            if (dist_to(d, p) < kPoleGuardSoft) out.at_pole = true;
        }
        log_sum += specfun::log_omega(d, opts) - specfun::log_omega(1.0 + d, opts);
    }
    out.value = w.is_identity() ? Cplx(1.0, 0.0) : std::exp(log_sum);
    return out;
}

ScatteringValue c_rank2_via_rank1(const Permutation& w, const SpectralParameter3& lambda,
                                  const EvalOptions& opts) {
    if (!w.is_transposition())
        throw PreconditionError("not_transposition",
                                "rank-one reduction is defined for transpositions only");
    ScatteringValue out{Cplx(1.0, 0.0), false};
    for (const auto& [a, b] : w.inversions()) {
        const Cplx d = lambda.at(a) - lambda.at(b);
        const ScatteringValue f = c_rank1(0.5 * (d + 1.0), opts);
        out.value *= f.value;
        out.at_pole = out.at_pole || f.at_pole;
    }
    return out;
}

double cocycle_residual(const Permutation& w1, const Permutation& w2,
                        const SpectralParameter3& lambda, const EvalOptions& opts) {
    const Permutation prod = w1.compose(w2);
    if (prod.length() != w1.length() + w2.length())
        throw PreconditionError("length_not_additive",
                                "composition identity requires l(w1 w2) = l(w1) + l(w2)");
    const Cplx lhs = c_rank2(prod, lambda, opts).value;
    const Cplx rhs =
        c_rank2(w1, lambda.weyl(w2), opts).value * c_rank2(w2, lambda, opts).value;
    return std::abs(lhs - rhs);
}

// ---------------------------------------------------------------------------
// Constant-term consistency check

double eisenstein_constant_term_check(double y, Cplx s, long c_max, const EvalOptions& opts) {
    if (y < 1.0)
        throw PreconditionError("bad_height", "cusp height must satisfy y >= 1");
    if (s.real() < 1.5)
        throw DivergenceError("eisenstein_domain",
                              "truncated constant-term check requires Re s >= 1.5");
    if (c_max < 1)
        throw PreconditionError("bad_truncation", "c_max must be >= 1");

    // sum over c of (number of residues coprime to c) * c^{-2s}
    Cplx dirichlet(0.0, 0.0);
    for (long c = 1; c <= c_max; ++c) {
        long coprime = 0;
        for (long d = 1; d <= c; ++d)
            if (std::gcd(d, c) == 1) ++coprime;
        dirichlet += static_cast<double>(coprime) * std::exp(-2.0 * s * std::log(static_cast<double>(c)));
    }

    const Cplx ys = std::exp(s * std::log(y));
    const Cplx y1s = std::exp((1.0 - s) * std::log(y));
    const Cplx assembled = ys + specfun::f_factor(s, opts) * y1s * dirichlet;
    const Cplx model = ys + c_rank1(s, opts).value * y1s;
    return std::abs(assembled - model);
}

} // namespace scatterflat::scatmat
