/// Cusp-to-cusp geodesic classes on the modular surface: enumeration,
/// sojourn times through the exact factorization, the direct horoball
/// crossing-time oracle, and the weighted exponential sum over classes.

#include "scatterflat/geodesics.hpp"

#include <cmath>
#include <numeric>

#include "scatterflat/quadrature.hpp"

namespace scatterflat::geodesics {

EnumerationTable enumerate_classes(long c_max) {
    if (c_max < 1)
        throw PreconditionError("bad_truncation", "class enumeration needs c_max >= 1");
    EnumerationTable table;
    table.c_max = c_max;
    table.rows.reserve(static_cast<size_t>(c_max));
    for (long c = 1; c <= c_max; ++c) {
        GeodesicClass row;
        row.c = c;
        for (long a = 0; a < c; ++a)
            if (std::gcd(a, c) == 1) ++row.multiplicity;
        row.sojourn_time = 2.0 * std::log(static_cast<double>(c));
        table.rows.push_back(row);
    }
    return table;
}

double sojourn_time_from_matrix(const exactlin::IntMatrix& g, SojournMode mode,
                                const EvalOptions&) {
    if (g.n() != 2)
        throw PreconditionError("bad_dimension", "sojourn time from matrix needs n = 2");
    if (g.at(1, 0) == 0)
        throw PreconditionError("no_crossing",
                                "lower-left entry is zero: the motion fixes the cusp "
                                "and has no cusp-to-cusp sojourn");
    const exactlin::BruhatFactorization f = exactlin::bruhat_decompose(g);
    const exactlin::SojournVector v = exactlin::sojourn_vector(f);
    if (mode == SojournMode::killing) return exactlin::killing_norm(v);
    return std::abs(v.h[1] - v.h[0]);
}

HoroballCrossing horoball_crossing_time(long c, long a, double Y) {
    if (c < 1)
        throw PreconditionError("bad_class", "crossing time needs c >= 1");
    if (std::gcd(std::abs(a), c) != 1)
        throw PreconditionError("bad_class", "crossing time needs gcd(a, c) = 1");
    if (Y < 2.0)
        throw PreconditionError("bad_height", "horoball height must satisfy Y >= 2");

    // Geodesic: vertical line x = a/c from the cusp at infinity down to a/c.
    // It exits {y > Y} at height Y and enters the image horoball (tangent to
    // the axis at a/c, Euclidean diameter 1/(c^2 Y)) at height 1/(c^2 Y).
    const double y_low = 1.0 / (static_cast<double>(c) * static_cast<double>(c) * Y);
    if (y_low >= Y)
        throw GeometryError("horoballs_overlap",
                            "horoball at the target cusp reaches into the one at infinity");

    HoroballCrossing out;
    out.total = quadrature::adaptive_simpson<double>(
        [](double y) { return 1.0 / y; }, y_low, Y, 1e-11);
    out.normalized = out.total - 2.0 * std::log(Y);
    return out;
}

Cplx guillemin_sum(Cplx sigma, long c_max, const EvalOptions& opts) {
    if (sigma.real() <= 1.0)
        throw DivergenceError("guillemin_divergent",
                              "the class sum converges only for Re sigma > 1");
    const EnumerationTable table = enumerate_classes(c_max);
    Cplx sum(0.0, 0.0);
    for (const GeodesicClass& row : table.rows)
        sum += static_cast<double>(row.multiplicity) * std::exp(-row.sojourn_time * sigma);
    return specfun::f_factor(sigma, opts) * sum;
}

} // namespace scatterflat::geodesics
