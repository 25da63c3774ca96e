#pragma once

/// The rank-two Cartan combinatorics: the A2 root datum on trace-zero
/// 3-vectors, Weyl-chamber membership, the reference direction T, the
/// shifted chamber regions attached to the three standard parabolic classes,
/// and the end/core classification of points.

#include <array>
#include <vector>

#include "scatterflat/exactlin.hpp"

namespace scatterflat::chambers {

using exactlin::Permutation;

/// Trace-zero 3-vector (sum checked within 1e-12, scaled).
class CartanVector {
public:
    CartanVector(double h1, double h2, double h3);
    explicit CartanVector(const std::array<double, 3>& h) : CartanVector(h[0], h[1], h[2]) {}

    double at(int i) const { return h_[static_cast<size_t>(i - 1)]; } // 1-based
    const std::array<double, 3>& components() const { return h_; }
    double killing_norm() const; ///< sqrt(6 * sum h_i^2)

private:
    std::array<double, 3> h_;
};

/// Root system of type A2 realized as functionals alpha_ij(h) = h_i - h_j.
struct RootDatumA2 {
    /// Positive roots (i, j) with i < j, lexicographic: (1,2), (1,3), (2,3).
    static std::vector<std::pair<int, int>> positive_roots();
    /// Simple roots: (1,2), (2,3).
    static std::vector<std::pair<int, int>> simple_roots();
    static double root(int i, int j, const CartanVector& h) { return h.at(i) - h.at(j); }
    /// tau = half the sum of the positive roots: tau(h) = h_1 - h_3.
    static double tau(const CartanVector& h) { return h.at(1) - h.at(3); }
};

enum class ParabolicId { P0, P1, P2 };

struct ChamberQuery {
    ParabolicId parabolic = ParabolicId::P0;
    double r = 1.0; ///< positive scale of the reference shift
};

enum class Region { Core, EndP0, EndP1, EndP2 };

const char* region_name(Region region);
const char* parabolic_name(ParabolicId p);
ParabolicId parse_parabolic(const std::string& name);

/// Coordinate permutation action (w . h)_i = h_{w^{-1}(i)}; w must be in S3.
CartanVector weyl_apply(const Permutation& w, const CartanVector& h);

/// The reference direction T = (1/4, 0, -1/4): tau(T) = 1/2,
/// killing_norm(T) = sqrt(3)/2.
CartanVector reference_T();

/// tau restricted to the one-parameter subspaces
/// H1 = {(t,t,-2t)} (J=1) and H2 = {(2t,-t,-t)} (J=2); both give 3t = h1 - h3.
/// PreconditionError if h is not on the requested subspace (tol 1e-12, scaled).
double tau_J(int J, const CartanVector& h);

/// Strict dominance h1 > h2 > h3.
bool positive_chamber_contains(const CartanVector& h);

/// Literal shifted end regions (source-listed inequality sets):
///   P0: h1 > h2 + r/4 and h2 > h3 + r/4 (equivalently, h - r*T dominant);
///   P1 on (t,t,-2t): 12 t + r > 0   [note the sign asymmetry against P2];
///   P2 on (2t,-t,-t): 12 t - r > 0.
/// For P1/P2 the point must lie on the respective subspace (PreconditionError
/// otherwise). r must be positive.
bool shifted_chamber_contains(const ChamberQuery& q, const CartanVector& h);

/// Classify h against the three end regions, checking P0 first, then P1, P2
/// through the Killing-orthogonal projections onto H1/H2; everything else
/// (including ties) is Core. In the default mode both subspace thresholds use
/// the symmetric form 12 t - r > 0 (the projection of T onto H_i under the
/// H = H1 + H2 splitting has parameter 1/12), which makes the end regions
/// disjoint from a neighborhood of the origin for every r. literal = true
/// switches P1 to the literal 12 t + r > 0 listed above.
Region classify_point(const CartanVector& h, double r, bool literal = false);

} // namespace scatterflat::chambers
