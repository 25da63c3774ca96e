/// Scattering coefficients: frozen reference values, unitarity on the
/// critical line, reduction of rank-two entries to rank-one factors, the
/// composition identity, and the truncated constant-term assembly.

#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"

#include "scatterflat/scatmat.hpp"

using namespace scatterflat;
using exactlin::Permutation;
using scatmat::SpectralParameter3;
using specfun::Cplx;

namespace {

void check_close(Cplx got, Cplx want, double rel) {
    const double scale = std::max(1.0, std::abs(want));
    CHECK(std::abs(got - want) <= rel * scale);
}

SpectralParameter3 random_parameter(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> re(-0.3, 0.3);
    std::uniform_real_distribution<double> im(-2.5, 2.5);
    for (;;) {
        Cplx l1(re(rng), im(rng)), l2(re(rng), im(rng)), l3(re(rng), im(rng));
        SpectralParameter3 lam = SpectralParameter3::recentered(l1, l2, l3);
        bool ok = true;
        for (int a = 1; a <= 3 && ok; ++a)
            for (int b = a + 1; b <= 3 && ok; ++b) {
                const Cplx d = lam.at(a) - lam.at(b);
                for (double p : {-1.0, 0.0, 1.0})
                    if (std::abs(d - p) < 0.15) ok = false;
            }
        if (ok) return lam;
    }
}

} // namespace

TEST_CASE("rank-one coefficient reference values") {
    check_close(scatmat::c_rank1(Cplx(2.0, 0.0)).value, Cplx(1.744568082131256, 0.0), 1e-13);
    check_close(scatmat::c_rank1(Cplx(1.5, 0.0)).value, Cplx(2.736865555240412, 0.0), 1e-13);
    check_close(scatmat::c_rank1(Cplx(0.5, 0.7)).value,
                Cplx(0.2623188992678620, -0.9649812407953314), 1e-12);
    check_close(scatmat::c_rank1(Cplx(0.5, 5.0)).value,
                Cplx(0.7042947746566338, -0.7099076491990781), 1e-12);
    check_close(scatmat::c_rank1(Cplx(0.5, 500.0)).value,
                Cplx(0.04114207883374695, 0.9991533062294483), 1e-11);
}

TEST_CASE("rank-one coefficient special points") {
    // removable point: exact limit, no pole flag
    const auto center = scatmat::c_rank1(Cplx(0.5, 0.0));
    CHECK(center.value == Cplx(-1.0, 0.0));
    CHECK_FALSE(center.at_pole);
    CHECK_THROWS_AS(scatmat::c_rank1(Cplx(0.0, 0.0)), PoleError);
    CHECK_THROWS_AS(scatmat::c_rank1(Cplx(1.0, 0.0)), PoleError);
    // guard band: finite value, flagged
    CHECK(scatmat::c_rank1(Cplx(0.9999999, 0.0)).at_pole);
}

TEST_CASE("rank-one functional equation and critical-line unitarity") {
    for (double re : {0.2, 0.35, 0.7}) {
        for (double im : {0.4, 2.0, 11.0}) {
            const Cplx s(re, im);
            const Cplx prod =
                scatmat::c_rank1(s).value * scatmat::c_rank1(1.0 - s).value;
            CHECK(std::abs(prod - 1.0) <= 1e-11);
        }
    }
    for (double r : {0.5, 1.0, 5.0, 50.0, 500.0}) {
        const Cplx v = scatmat::c_rank1(Cplx(0.5, r)).value;
        CHECK(std::abs(std::abs(v) - 1.0) <= 1e-10);
    }
}

TEST_CASE("rank-two coefficient at a frozen parameter") {
    const auto lam = SpectralParameter3::from_components(
        Cplx(2.0, 0.0), Cplx(0.0, 0.0), Cplx(-2.0, 0.0));
    const Permutation w0 = Permutation::from_cycle_word(3, "13");
    check_close(scatmat::c_rank2(w0, lam).value, Cplx(10.42447389963152, 0.0), 1e-12);
    // identity has empty inversion set
    const Permutation id = Permutation::identity(3);
    CHECK(scatmat::c_rank2(id, lam).value == Cplx(1.0, 0.0));
}

TEST_CASE("rank-two entries reduce to rank-one factors") {
    std::mt19937_64 rng(20260814u);
    const char* words[] = {"12", "23", "13"};
    for (int trial = 0; trial < 100; ++trial) {
        const SpectralParameter3 lam = random_parameter(rng);
        for (const char* word : words) {
            const Permutation w = Permutation::from_cycle_word(3, word);
            const Cplx direct = scatmat::c_rank2(w, lam).value;
            const Cplx routed = scatmat::c_rank2_via_rank1(w, lam).value;
            CHECK(std::abs(direct - routed) <= 1e-13 * std::abs(direct));
        }
    }
    const Permutation cyc = Permutation::from_cycle_word(3, "123");
    CHECK_THROWS_AS(
        scatmat::c_rank2_via_rank1(cyc, random_parameter(rng)), PreconditionError);
}

TEST_CASE("composition identity along reduced words") {
    std::mt19937_64 rng(7u);
    const Permutation s1 = Permutation::from_cycle_word(3, "12");
    const Permutation s2 = Permutation::from_cycle_word(3, "23");
    // the two reduced decompositions of the longest element:
    // (13) = s1 * (132) = s2 * (123), both length-additive
    const Permutation c132 = Permutation::from_cycle_word(3, "132");
    const Permutation c123 = Permutation::from_cycle_word(3, "123");
    REQUIRE(s1.compose(c132) == Permutation::from_cycle_word(3, "13"));
    REQUIRE(s2.compose(c123) == Permutation::from_cycle_word(3, "13"));
    for (int trial = 0; trial < 50; ++trial) {
        const SpectralParameter3 lam = random_parameter(rng);
        CHECK(scatmat::cocycle_residual(s1, c132, lam) <= 1e-10);
        CHECK(scatmat::cocycle_residual(s2, c123, lam) <= 1e-10);
    }
    // non-additive pair is rejected: l(s1 s1) = 0 != 2
    CHECK_THROWS_AS(scatmat::cocycle_residual(s1, s1, random_parameter(rng)),
                    PreconditionError);
}

TEST_CASE("weyl action permutes components") {
    const auto lam = SpectralParameter3::from_components(
        Cplx(1.0, 0.0), Cplx(0.0, 0.0), Cplx(-1.0, 0.0));
    const auto swapped = lam.weyl(Permutation::from_cycle_word(3, "12"));
    CHECK(swapped.at(1) == Cplx(0.0, 0.0));
    CHECK(swapped.at(2) == Cplx(1.0, 0.0));
    CHECK(swapped.at(3) == Cplx(-1.0, 0.0));
    const auto reversed = lam.weyl(Permutation::from_cycle_word(3, "13"));
    CHECK(reversed.at(1) == Cplx(-1.0, 0.0));
    CHECK(reversed.at(3) == Cplx(1.0, 0.0));
}

TEST_CASE("spectral parameter validation") {
    CHECK_THROWS_AS(SpectralParameter3::from_components(
                        Cplx(1.0, 0.0), Cplx(1.0, 0.0), Cplx(1.0, 0.0)),
                    PreconditionError);
    // recentering fixes the same input
    const auto lam = SpectralParameter3::recentered(
        Cplx(4.0, 0.0), Cplx(1.0, 0.0), Cplx(1.0, 0.0));
    CHECK(lam.at(1) == Cplx(2.0, 0.0));
    CHECK(lam.at(2) == Cplx(-1.0, 0.0));
}

TEST_CASE("constant-term assembly converges to the scattering coefficient") {
    const double r1000 = scatmat::eisenstein_constant_term_check(3.0, Cplx(2.0, 0.0), 1000);
    const double r100 = scatmat::eisenstein_constant_term_check(3.0, Cplx(2.0, 0.0), 100);
    CHECK(r1000 < 1e-6);
    CHECK(r100 < 1e-3);
    CHECK(r1000 < r100); // tail shrinks as the truncation grows
    CHECK_THROWS_AS(scatmat::eisenstein_constant_term_check(0.5, Cplx(2.0, 0.0), 100),
                    PreconditionError);
    CHECK_THROWS_AS(scatmat::eisenstein_constant_term_check(3.0, Cplx(1.2, 0.0), 100),
                    PreconditionError);
    CHECK_THROWS_AS(scatmat::eisenstein_constant_term_check(3.0, Cplx(2.0, 0.0), 0),
                    PreconditionError);
}
