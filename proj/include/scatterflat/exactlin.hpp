#pragma once

/// Exact integer/rational linear algebra for small (2x2, 3x3) matrices:
/// Bruhat-type factorization relative to the upper-triangular Borel subgroup,
/// the diagonal log vector it induces, and the Killing norm on that vector.

#include <array>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "scatterflat/errors.hpp"

namespace scatterflat::exactlin {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

/// Square integer matrix, n in {2, 3}, stored row-major.
class IntMatrix {
public:
    IntMatrix() : n_(2) {}
    explicit IntMatrix(int n);
    IntMatrix(int n, std::vector<BigInt> entries);

    static IntMatrix identity(int n);

    int n() const { return n_; }
    const BigInt& at(int i, int j) const { return a_[static_cast<size_t>(i * n_ + j)]; }
    BigInt& at(int i, int j) { return a_[static_cast<size_t>(i * n_ + j)]; }

    BigInt det() const;
    IntMatrix mul(const IntMatrix& other) const;
    bool operator==(const IntMatrix& other) const;

private:
    int n_;
    std::array<BigInt, 9> a_;
};

/// Square rational matrix, n in {2, 3}, stored row-major.
class RatMatrix {
public:
    RatMatrix() : n_(2) {}
    explicit RatMatrix(int n);

    static RatMatrix identity(int n);
    static RatMatrix from_int(const IntMatrix& m);

    int n() const { return n_; }
    const BigRat& at(int i, int j) const { return a_[static_cast<size_t>(i * n_ + j)]; }
    BigRat& at(int i, int j) { return a_[static_cast<size_t>(i * n_ + j)]; }

    RatMatrix mul(const RatMatrix& other) const;
    bool operator==(const RatMatrix& other) const;
    bool equals_int(const IntMatrix& m) const;
    /// True iff upper triangular with all-ones diagonal.
    bool is_unit_upper_triangular() const;

private:
    int n_;
    std::array<BigRat, 9> a_;
};

/// Permutation of {1..n}; images[i] = w(i+1) with 1-based values.
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<int> images);

    static Permutation identity(int n);
    /// Transposition (i j) inside S_n (1-based).
    static Permutation transposition(int n, int i, int j);
    /// Parse a cycle word such as "12", "23", "13", "123", "132", or "id"
    /// into an element of S_n.
    static Permutation from_cycle_word(int n, const std::string& word);

    int n() const { return static_cast<int>(img_.size()); }
    int apply(int i) const { return img_[static_cast<size_t>(i - 1)]; } // 1-based
    const std::vector<int>& images() const { return img_; }

    Permutation inverse() const;
    /// Composition (this o other)(i) = this(other(i)).
    Permutation compose(const Permutation& other) const;

    /// Inversion pairs {(a, b) : a < b, w(a) > w(b)}, 1-based, lexicographic.
    std::vector<std::pair<int, int>> inversions() const;
    int length() const { return static_cast<int>(inversions().size()); }
    int sign() const { return length() % 2 == 0 ? 1 : -1; }
    bool is_identity() const;
    bool is_transposition() const;

    /// Coordinate action (w . v)_i = v_{w^{-1}(i)}. This is the unique
    /// convention under which the composition law for the rank-two
    /// scattering coefficients is an exact product identity.
    template <typename T>
    std::vector<T> act(const std::vector<T>& v) const {
        Permutation winv = inverse();
        std::vector<T> out(v.size());
        for (size_t i = 0; i < v.size(); ++i)
            out[i] = v[static_cast<size_t>(winv.img_[i] - 1)];
        return out;
    }

    bool operator==(const Permutation& other) const { return img_ == other.img_; }

private:
    std::vector<int> img_;
};

/// Factorization g = u_left * diag(m_sign .* a_diag) * P(w) * u_right where
/// u_left/u_right are unit upper triangular, a_diag is positive rational,
/// m_sign is componentwise +-1, and P(w)[i][w(i)] = 1. Exactness invariant:
/// the recomposition reproduces the source matrix entry for entry, and
/// prod(a_diag) * prod(m_sign) * sign(w) = det(g).
struct BruhatFactorization {
    RatMatrix u_left;
    std::vector<BigRat> a_diag;
    std::vector<int> m_sign;
    Permutation w;
    RatMatrix u_right;
};

/// Vector of natural logs of a_diag (trace-zero for det +-1 inputs).
struct SojournVector {
    std::vector<double> h;
};

/// Decompose an invertible integer matrix (n in {2,3}, det = +-1) relative to
/// the upper-triangular Borel. Deterministic pivot rule: for each column left
/// to right, pivot on the bottom-most not-yet-pivoted nonzero row, clear the
/// pivot row rightwards by column operations and the pivot column upwards by
/// row operations. All arithmetic is exact rational.
BruhatFactorization bruhat_decompose(const IntMatrix& g);

/// Exact rational product u_left * diag(m.*a) * P(w) * u_right.
RatMatrix bruhat_recompose(const BruhatFactorization& f);

/// Componentwise log of a_diag.
SojournVector sojourn_vector(const BruhatFactorization& f);

/// sqrt(2n * sum h_i^2): the norm induced by the trace form B(X,Y) = 2n tr(XY)
/// on diagonal trace-zero matrices (B = 4 tr for n=2, 6 tr for n=3).
double killing_norm(const SojournVector& v);
double killing_norm_n(const std::vector<double>& h);

} // namespace scatterflat::exactlin
