#pragma once

/// Cusp-to-cusp geodesic classes on the modular surface: enumeration of the
/// double-coset classes (c, a mod c), their sojourn times 2 ln c, a direct
/// geometric crossing-time oracle between horoballs, and the windowed
/// exponential sum over classes that converges to the rank-one scattering
/// coefficient.

#include <complex>
#include <vector>

#include "scatterflat/exactlin.hpp"
#include "scatterflat/specfun.hpp"

namespace scatterflat::geodesics {

using specfun::Cplx;
using specfun::EvalOptions;

/// One lower-left value c with its class count and common sojourn time.
struct GeodesicClass {
    long c = 0;
    long multiplicity = 0;    ///< #{a in [0,c) : gcd(a,c) = 1}, counted directly
    double sojourn_time = 0;  ///< 2 ln c
};

struct EnumerationTable {
    long c_max = 0;
    std::vector<GeodesicClass> rows; ///< ascending in c, one row per c
};

/// Enumerate classes for 1 <= c <= c_max. Multiplicities are obtained by
/// counting coprime residues with gcd, never by a multiplicative formula.
EnumerationTable enumerate_classes(long c_max);

enum class SojournMode { hyperbolic, killing };

/// Sojourn time of the class of a 2x2 integer matrix with det +-1 and
/// nonzero lower-left entry c, routed through the Bruhat factorization:
/// hyperbolic mode returns 2 ln|c| (difference of the diagonal logs),
/// killing mode returns the Killing norm of the diagonal log vector
/// (= 2 sqrt(2) ln|c|). PreconditionError if n != 2 or c = 0.
double sojourn_time_from_matrix(const exactlin::IntMatrix& g, SojournMode mode,
                                const EvalOptions& opts = {});

struct HoroballCrossing {
    double total = 0;      ///< arclength between the two horoball boundaries
    double normalized = 0; ///< total - 2 ln Y (is 2 ln c, independent of Y)
};

/// Geometric oracle: the geodesic from the cusp at infinity to a/c (gcd(a,c)=1,
/// c >= 1) is the vertical line x = a/c. It leaves the horoball {y > Y} at
/// height Y and enters the image horoball (tangent at a/c, Euclidean diameter
/// 1/(c^2 Y)) at height 1/(c^2 Y). The crossing time is the numerical
/// hyperbolic arclength integral of 1/y between those heights (adaptive
/// Simpson, abs tol 1e-11). Preconditions: Y >= 2, gcd(a,c) = 1;
/// GeometryError if the horoballs are not disjoint.
HoroballCrossing horoball_crossing_time(long c, long a, double Y);

/// F(sigma) * sum over enumerated classes of multiplicity(c) * exp(-2 ln c * sigma),
/// summed in ascending c. Converges to c_rank1(sigma) for Re sigma > 1 with
/// tail O(c_max^(2 - 2 Re sigma)). DivergenceError if Re sigma <= 1.
Cplx guillemin_sum(Cplx sigma, long c_max, const EvalOptions& opts = {});

} // namespace scatterflat::geodesics
