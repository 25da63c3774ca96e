/// A2 Cartan combinatorics: trace-zero vectors, root functionals, chamber
/// membership, the reference shift direction, and the end/core classifier.

#include "scatterflat/chambers.hpp"

#include <cmath>
#include <string>

namespace scatterflat::chambers {

namespace {

double scale_of(double h1, double h2, double h3) {
    return std::max(1.0, std::max(std::abs(h1), std::max(std::abs(h2), std::abs(h3))));
}

void require_positive_shift(double r) {
    if (!(r > 0.0))
        throw PreconditionError("bad_shift", "shift scale r must be positive");
}

} // namespace

CartanVector::CartanVector(double h1, double h2, double h3) : h_{h1, h2, h3} {
    const double sum = h1 + h2 + h3;
    if (std::abs(sum) > 1e-12 * scale_of(h1, h2, h3))
        throw PreconditionError("not_trace_zero",
                                "Cartan vector components must sum to zero");
}

double CartanVector::killing_norm() const {
    return std::sqrt(6.0 * (h_[0] * h_[0] + h_[1] * h_[1] + h_[2] * h_[2]));
}

std::vector<std::pair<int, int>> RootDatumA2::positive_roots() {
    return {{1, 2}, {1, 3}, {2, 3}};
}

std::vector<std::pair<int, int>> RootDatumA2::simple_roots() { return {{1, 2}, {2, 3}}; }

const char* region_name(Region region) {
    switch (region) {
        case Region::Core: return "core";
        case Region::EndP0: return "end-P0";
        case Region::EndP1: return "end-P1";
        case Region::EndP2: return "end-P2";
    }
    return "core";
}

const char* parabolic_name(ParabolicId p) {
    switch (p) {
        case ParabolicId::P0: return "P0";
        case ParabolicId::P1: return "P1";
        case ParabolicId::P2: return "P2";
    }
    return "P0";
}

ParabolicId parse_parabolic(const std::string& name) {
    if (name == "P0" || name == "p0" || name == "0") return ParabolicId::P0;
    if (name == "P1" || name == "p1" || name == "1") return ParabolicId::P1;
    if (name == "P2" || name == "p2" || name == "2") return ParabolicId::P2;
    throw PreconditionError("bad_parabolic", "unknown parabolic class '" + name + "'");
}

CartanVector weyl_apply(const Permutation& w, const CartanVector& h) {
    if (w.n() != 3)
        throw PreconditionError("bad_permutation", "chamber action needs w in S_3");
    const std::vector<double> v = {h.at(1), h.at(2), h.at(3)};
    const std::vector<double> moved = w.act(v);
    return CartanVector(moved[0], moved[1], moved[2]);
}

CartanVector reference_T() { return CartanVector(0.25, 0.0, -0.25); }

double tau_J(int J, const CartanVector& h) {
    const double tol =
        1e-12 * scale_of(h.at(1), h.at(2), h.at(3));
    if (J == 1) {
        // H1 = {(t, t, -2t)}
        if (std::abs(h.at(1) - h.at(2)) > tol)
            throw PreconditionError("off_subspace",
                                    "point is not on the J=1 subspace (t, t, -2t)");
    } else if (J == 2) {
        // H2 = {(2t, -t, -t)}
        if (std::abs(h.at(2) - h.at(3)) > tol)
            throw PreconditionError("off_subspace",
                                    "point is not on the J=2 subspace (2t, -t, -t)");
    } else {
        throw PreconditionError("bad_subspace", "J must be 1 or 2");
    }
    return h.at(1) - h.at(3); // = 3t on either subspace
}

bool positive_chamber_contains(const CartanVector& h) {
    return h.at(1) > h.at(2) && h.at(2) > h.at(3);
}

bool shifted_chamber_contains(const ChamberQuery& q, const CartanVector& h) {
    require_positive_shift(q.r);
    switch (q.parabolic) {
        case ParabolicId::P0:
            // Equivalent to: h - r*T is strictly dominant.
            return h.at(1) > h.at(2) + q.r / 4.0 && h.at(2) > h.at(3) + q.r / 4.0;
        case ParabolicId::P1: {
            tau_J(1, h); // membership check
            const double t = h.at(1);
            return 12.0 * t + q.r > 0.0; // literal source inequality (sign asymmetry)
        }
        case ParabolicId::P2: {
            tau_J(2, h);
            const double t = -h.at(2);
            return 12.0 * t - q.r > 0.0;
        }
    }
    return false;
}

Region classify_point(const CartanVector& h, double r, bool literal) {
    require_positive_shift(r);
    // End of the minimal class: the full shifted dominant cone.
    if (h.at(1) > h.at(2) + r / 4.0 && h.at(2) > h.at(3) + r / 4.0) return Region::EndP0;

    // Killing-orthogonal projections onto the two maximal-class subspaces;
    // the projection of the reference direction T has parameter 1/12 on each.
    const double t1 = (h.at(1) + h.at(2) - 2.0 * h.at(3)) / 6.0; // onto (t, t, -2t)
    const double t2 = (2.0 * h.at(1) - h.at(2) - h.at(3)) / 6.0; // onto (2t, -t, -t)

    const double p1_margin = literal ? 12.0 * t1 + r : 12.0 * t1 - r;
    if (p1_margin > 0.0) return Region::EndP1;
    if (12.0 * t2 - r > 0.0) return Region::EndP2;
    return Region::Core;
}

} // namespace scatterflat::chambers
