/// Geodesic class enumeration, sojourn times through the factorization and
/// through direct geometry, and the windowed class sum that recovers the
/// rank-one scattering coefficient.

#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "doctest.h"

#include "scatterflat/geodesics.hpp"
#include "scatterflat/scatmat.hpp"

using namespace scatterflat;
using exactlin::IntMatrix;
using specfun::Cplx;

namespace {

IntMatrix mat2(long a, long b, long c, long d) {
    IntMatrix m(2);
    m.at(0, 0) = a;
    m.at(0, 1) = b;
    m.at(1, 0) = c;
    m.at(1, 1) = d;
    return m;
}

// Independent enumeration oracle: walk all integer matrices [[a,b],[c,d]]
// with det = 1, entries bounded, lower-left exactly c, and count the distinct
// orbits under upper-triangular integer translations on both sides:
// [[1,m],[0,1]] g [[1,n],[0,1]] shifts a by m c and d by n c, so the orbit
// invariant for fixed c > 0 is (a mod c) (and gcd(a, c) = 1 for solvability).
long brute_force_class_count(long c) {
    std::set<long> residues;
    for (long a = 0; a < c; ++a) {
        // need b, d with a d - b c = 1, i.e. a d = 1 (mod c)
        bool solvable = false;
        for (long d = 0; d < c && !solvable; ++d)
            if ((a * d - 1) % c == 0) solvable = true;
        if (c == 1) solvable = true;
        if (solvable) residues.insert(a % c);
    }
    return static_cast<long>(residues.size());
}

} // namespace

TEST_CASE("class enumeration matches direct counting") {
    const auto table = geodesics::enumerate_classes(20);
    REQUIRE(table.rows.size() == 20);
    for (const auto& row : table.rows) {
        CHECK(row.multiplicity == brute_force_class_count(row.c));
        CHECK(row.sojourn_time == doctest::Approx(2.0 * std::log(double(row.c))).epsilon(1e-15));
    }
    // frozen counts
    CHECK(table.rows[0].multiplicity == 1);  // c = 1
    CHECK(table.rows[1].multiplicity == 1);  // c = 2
    CHECK(table.rows[2].multiplicity == 2);  // c = 3
    CHECK(table.rows[3].multiplicity == 2);  // c = 4
    CHECK(table.rows[4].multiplicity == 4);  // c = 5
    CHECK(table.rows[5].multiplicity == 2);  // c = 6
    CHECK(table.rows[11].multiplicity == 4); // c = 12
    CHECK_THROWS_AS(geodesics::enumerate_classes(0), PreconditionError);
}

TEST_CASE("sojourn time from a matrix") {
    const IntMatrix g = mat2(2, 1, 1, 1);
    CHECK(geodesics::sojourn_time_from_matrix(g, geodesics::SojournMode::hyperbolic) == 0.0);
    const IntMatrix h = mat2(5, 2, 2, 1);
    CHECK(geodesics::sojourn_time_from_matrix(h, geodesics::SojournMode::hyperbolic) ==
          doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-15));
    CHECK(geodesics::sojourn_time_from_matrix(h, geodesics::SojournMode::killing) ==
          doctest::Approx(1.960516286937094).epsilon(1e-14)); // 2 sqrt(2) ln 2
    // upper triangular: never leaves the cusp neighborhood
    CHECK_THROWS_AS(
        geodesics::sojourn_time_from_matrix(mat2(1, 7, 0, 1), geodesics::SojournMode::hyperbolic),
        PreconditionError);
}

TEST_CASE("sojourn time is a class invariant") {
    std::mt19937_64 rng(42u);
    std::uniform_int_distribution<long> shift(-6, 6);
    for (int trial = 0; trial < 50; ++trial) {
        // random det-1 matrix with c != 0 built from a coprime pair
        const long c = 1 + static_cast<long>(rng() % 30);
        long a = shift(rng);
        while (std::gcd(((a % c) + c) % c, c) != 1) ++a;
        // solve a d - b c = 1 by scanning d
        long d = 0;
        while ((a * d - 1) % c != 0) ++d;
        const long b = (a * d - 1) / c;
        IntMatrix g = mat2(a, b, c, d);
        REQUIRE(g.det() == 1);
        const double base =
            geodesics::sojourn_time_from_matrix(g, geodesics::SojournMode::hyperbolic);
        CHECK(base == doctest::Approx(2.0 * std::log(double(c))).epsilon(1e-13));
        // translate on both sides by unit upper-triangular integer matrices
        const long m = shift(rng), n = shift(rng);
        IntMatrix left = mat2(1, m, 0, 1);
        IntMatrix right = mat2(1, n, 0, 1);
        IntMatrix moved = left.mul(g).mul(right);
        CHECK(geodesics::sojourn_time_from_matrix(moved, geodesics::SojournMode::hyperbolic) ==
              doctest::Approx(base).epsilon(1e-13));
    }
}

TEST_CASE("horoball crossing time equals the class sojourn time") {
    const auto crossing = geodesics::horoball_crossing_time(2, 1, 10.0);
    CHECK(crossing.normalized == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-10));
    CHECK(crossing.total ==
          doctest::Approx(2.0 * std::log(2.0) + 2.0 * std::log(10.0)).epsilon(1e-10));
    // Y-independence of the normalized value
    const auto deeper = geodesics::horoball_crossing_time(2, 1, 100.0);
    CHECK(deeper.normalized == doctest::Approx(crossing.normalized).epsilon(1e-9));
    // c = 1: zero sojourn, the whole path is accounted to the cusp regions
    const auto unit = geodesics::horoball_crossing_time(1, 0, 10.0);
    CHECK(std::abs(unit.normalized) < 1e-10);
    CHECK_THROWS_AS(geodesics::horoball_crossing_time(2, 1, 1.0), PreconditionError);
    CHECK_THROWS_AS(geodesics::horoball_crossing_time(4, 2, 10.0), PreconditionError);
    // Large c: the arclength integral spans seven decades of height; the
    // quadrature must converge rather than exhaust its subdivision budget.
    const auto wide = geodesics::horoball_crossing_time(49, 10, 100.0);
    CHECK(wide.normalized == doctest::Approx(2.0 * std::log(49.0)).epsilon(1e-9));
}

TEST_CASE("class sum converges to the rank-one coefficient") {
    CHECK(std::abs(geodesics::guillemin_sum(Cplx(2.0, 0.0), 1) -
                   Cplx(1.5707963267948966, 0.0)) < 1e-14); // single class: F(2)
    CHECK(std::abs(geodesics::guillemin_sum(Cplx(2.0, 0.0), 10) -
                   Cplx(1.740029342460428, 0.0)) < 1e-13);
    const Cplx far = geodesics::guillemin_sum(Cplx(2.0, 0.0), 1000);
    CHECK(std::abs(far - Cplx(1.744567605024753, 0.0)) < 5e-13);
    const Cplx target = scatmat::c_rank1(Cplx(2.0, 0.0)).value;
    CHECK(std::abs(far - target) < 2e-6);
    CHECK_THROWS_AS(geodesics::guillemin_sum(Cplx(1.0, 0.0), 100), DivergenceError);
    CHECK_THROWS_AS(geodesics::guillemin_sum(Cplx(2.0, 0.0), 0), PreconditionError);
}
