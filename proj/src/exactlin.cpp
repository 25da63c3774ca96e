/// Exact integer/rational linear algebra: Bruhat-type factorization relative
/// to the upper-triangular Borel subgroup, with a deterministic pivot rule.

#include "scatterflat/exactlin.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace scatterflat::exactlin {

namespace {

void check_dim(int n) {
    if (n != 2 && n != 3)
        throw PreconditionError("bad_dimension",
                                "matrix dimension must be 2 or 3, got " + std::to_string(n));
}

} // namespace

// ---------------------------------------------------------------------------
// IntMatrix

IntMatrix::IntMatrix(int n) : n_(n) {
    check_dim(n);
    a_.fill(BigInt(0));
}

IntMatrix::IntMatrix(int n, std::vector<BigInt> entries) : n_(n) {
    check_dim(n);
    if (entries.size() != static_cast<size_t>(n * n))
        throw PreconditionError("bad_matrix_shape",
                                "expected " + std::to_string(n * n) + " entries, got " +
                                    std::to_string(entries.size()));
    a_.fill(BigInt(0));
    std::copy(entries.begin(), entries.end(), a_.begin());
}

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m(n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

BigInt IntMatrix::det() const {
    if (n_ == 2) return at(0, 0) * at(1, 1) - at(0, 1) * at(1, 0);
    return at(0, 0) * (at(1, 1) * at(2, 2) - at(1, 2) * at(2, 1)) -
           at(0, 1) * (at(1, 0) * at(2, 2) - at(1, 2) * at(2, 0)) +
           at(0, 2) * (at(1, 0) * at(2, 1) - at(1, 1) * at(2, 0));
}

IntMatrix IntMatrix::mul(const IntMatrix& other) const {
    if (n_ != other.n_)
        throw PreconditionError("bad_matrix_shape", "dimension mismatch in matrix product");
    IntMatrix out(n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) {
            BigInt s = 0;
            for (int k = 0; k < n_; ++k) s += at(i, k) * other.at(k, j);
            out.at(i, j) = s;
        }
    return out;
}

bool IntMatrix::operator==(const IntMatrix& other) const {
    return n_ == other.n_ && a_ == other.a_;
}

// ---------------------------------------------------------------------------
// RatMatrix

RatMatrix::RatMatrix(int n) : n_(n) {
    check_dim(n);
    a_.fill(BigRat(0));
}

RatMatrix RatMatrix::identity(int n) {
    RatMatrix m(n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

RatMatrix RatMatrix::from_int(const IntMatrix& m) {
    RatMatrix out(m.n());
    for (int i = 0; i < m.n(); ++i)
        for (int j = 0; j < m.n(); ++j) out.at(i, j) = BigRat(m.at(i, j));
    return out;
}

RatMatrix RatMatrix::mul(const RatMatrix& other) const {
    if (n_ != other.n_)
        throw PreconditionError("bad_matrix_shape", "dimension mismatch in matrix product");
    RatMatrix out(n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) {
            BigRat s = 0;
            for (int k = 0; k < n_; ++k) s += at(i, k) * other.at(k, j);
            out.at(i, j) = s;
        }
    return out;
}

bool RatMatrix::operator==(const RatMatrix& other) const {
    return n_ == other.n_ && a_ == other.a_;
}

bool RatMatrix::equals_int(const IntMatrix& m) const {
    if (n_ != m.n()) return false;
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            if (at(i, j) != BigRat(m.at(i, j))) return false;
    return true;
}

bool RatMatrix::is_unit_upper_triangular() const {
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) {
            if (i == j && at(i, j) != 1) return false;
            if (i > j && at(i, j) != 0) return false;
        }
    return true;
}

// ---------------------------------------------------------------------------
// Permutation

Permutation::Permutation(std::vector<int> images) : img_(std::move(images)) {
    const int n = static_cast<int>(img_.size());
    if (n != 2 && n != 3)
        throw PreconditionError("bad_permutation", "permutation degree must be 2 or 3");
    std::set<int> seen;
    for (int v : img_) {
        if (v < 1 || v > n || !seen.insert(v).second)
            throw PreconditionError("bad_permutation",
                                    "images must be a rearrangement of 1..n");
    }
}

Permutation Permutation::identity(int n) {
    std::vector<int> img(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) img[static_cast<size_t>(i)] = i + 1;
    return Permutation(std::move(img));
}

Permutation Permutation::transposition(int n, int i, int j) {
    if (i < 1 || j < 1 || i > n || j > n || i == j)
        throw PreconditionError("bad_permutation", "invalid transposition indices");
    Permutation p = identity(n);
    std::swap(p.img_[static_cast<size_t>(i - 1)], p.img_[static_cast<size_t>(j - 1)]);
    return p;
}

Permutation Permutation::from_cycle_word(int n, const std::string& word) {
    if (n != 2 && n != 3)
        throw PreconditionError("bad_permutation", "permutation degree must be 2 or 3");
    if (word == "id" || word == "e" || word.empty()) return identity(n);
    std::vector<int> cycle;
    for (char ch : word) {
        if (ch < '1' || ch > '0' + n)
            throw PreconditionError("bad_permutation",
                                    "cycle word '" + word + "' has symbols outside 1.." +
                                        std::to_string(n));
        cycle.push_back(ch - '0');
    }
    std::set<int> seen(cycle.begin(), cycle.end());
    if (seen.size() != cycle.size() || cycle.size() < 2)
        throw PreconditionError("bad_permutation",
                                "cycle word '" + word + "' must list distinct points");
    Permutation p = identity(n);
    for (size_t k = 0; k < cycle.size(); ++k) {
        const int from = cycle[k];
        const int to = cycle[(k + 1) % cycle.size()];
        p.img_[static_cast<size_t>(from - 1)] = to;
    }
    return p;
}

Permutation Permutation::inverse() const {
    std::vector<int> img(img_.size());
    for (size_t i = 0; i < img_.size(); ++i)
        img[static_cast<size_t>(img_[i] - 1)] = static_cast<int>(i) + 1;
    return Permutation(std::move(img));
}

Permutation Permutation::compose(const Permutation& other) const {
    if (n() != other.n())
        throw PreconditionError("bad_permutation", "degree mismatch in composition");
    std::vector<int> img(img_.size());
    for (int i = 1; i <= n(); ++i)
        img[static_cast<size_t>(i - 1)] = apply(other.apply(i));
    return Permutation(std::move(img));
}

std::vector<std::pair<int, int>> Permutation::inversions() const {
    std::vector<std::pair<int, int>> out;
    for (int a = 1; a <= n(); ++a)
        for (int b = a + 1; b <= n(); ++b)
            if (apply(a) > apply(b)) out.emplace_back(a, b);
    return out;
}

bool Permutation::is_identity() const {
    for (int i = 1; i <= n(); ++i)
        if (apply(i) != i) return false;
    return true;
}

bool Permutation::is_transposition() const {
    int moved = 0;
    for (int i = 1; i <= n(); ++i)
        if (apply(i) != i) ++moved;
    return moved == 2;
}

// ---------------------------------------------------------------------------
// Bruhat factorization
//
// Invariant maintained throughout the sweep: g = L * M * R with L, R unit
// upper triangular. Row/column operations are applied to M and compensated
// in L and R; at the end M is monomial and reads off diag * P(w).

namespace {

/// M[:, dst] += c * M[:, src] with src < dst (right-multiplication by a unit
/// upper triangular elementary matrix). Compensates R := E(-c) * R.
void col_op(RatMatrix& m, RatMatrix& r, int src, int dst, const BigRat& c) {
    for (int i = 0; i < m.n(); ++i) m.at(i, dst) += c * m.at(i, src);
    // E(-c) * R: row `src` of R gains -c times row `dst`.
    for (int j = 0; j < r.n(); ++j) r.at(src, j) += -c * r.at(dst, j);
}

/// M[dst, :] += c * M[src, :] with dst < src (left-multiplication by a unit
/// upper triangular elementary matrix). Compensates L := L * F(-c).
void row_op(RatMatrix& m, RatMatrix& l, int src, int dst, const BigRat& c) {
    for (int j = 0; j < m.n(); ++j) m.at(dst, j) += c * m.at(src, j);
    // L * F(-c): column `src` of L gains -c times column `dst`.
    for (int i = 0; i < l.n(); ++i) l.at(i, src) += -c * l.at(i, dst);
}

} // namespace

BruhatFactorization bruhat_decompose(const IntMatrix& g) {
    const int n = g.n();
    const BigInt d = g.det();
    if (d != 1 && d != -1)
        throw PreconditionError("not_unimodular",
                                "matrix determinant must be +1 or -1");

    RatMatrix m = RatMatrix::from_int(g);
    RatMatrix l = RatMatrix::identity(n);
    RatMatrix r = RatMatrix::identity(n);

    std::vector<bool> pivoted(static_cast<size_t>(n), false);
    std::vector<int> w_images(static_cast<size_t>(n), 0); // w(row+1) = col+1

    for (int j = 0; j < n; ++j) {
        // Bottom-most not-yet-pivoted row with a nonzero entry in column j.
        int pivot = -1;
        for (int i = n - 1; i >= 0; --i) {
            if (!pivoted[static_cast<size_t>(i)] && m.at(i, j) != 0) {
                pivot = i;
                break;
            }
        }
        if (pivot < 0)
            throw PreconditionError("singular_matrix",
                                    "no pivot available; matrix is singular");
        pivoted[static_cast<size_t>(pivot)] = true;
        w_images[static_cast<size_t>(pivot)] = j + 1;

        // Clear the pivot row to the right (column operations).
        for (int jj = j + 1; jj < n; ++jj) {
            if (m.at(pivot, jj) != 0)
                col_op(m, r, j, jj, -m.at(pivot, jj) / m.at(pivot, j));
        }
        // Clear the pivot column upwards (row operations).
        for (int ii = pivot - 1; ii >= 0; --ii) {
            if (m.at(ii, j) != 0)
                row_op(m, l, pivot, ii, -m.at(ii, j) / m.at(pivot, j));
        }
    }

    BruhatFactorization f;
    f.w = Permutation(w_images);
    f.u_left = l;
    f.u_right = r;
    f.a_diag.resize(static_cast<size_t>(n));
    f.m_sign.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const BigRat v = m.at(i, f.w.apply(i + 1) - 1);
        f.m_sign[static_cast<size_t>(i)] = v < 0 ? -1 : 1;
        f.a_diag[static_cast<size_t>(i)] = v < 0 ? BigRat(-v) : v;
    }
    return f;
}

RatMatrix bruhat_recompose(const BruhatFactorization& f) {
    const int n = f.u_left.n();
    RatMatrix mono(n); // diag(m .* a) * P(w): row i has entry at column w(i+1)-1
    for (int i = 0; i < n; ++i) {
        BigRat v = f.a_diag[static_cast<size_t>(i)];
        if (f.m_sign[static_cast<size_t>(i)] < 0) v = -v;
        mono.at(i, f.w.apply(i + 1) - 1) = v;
    }
    return f.u_left.mul(mono).mul(f.u_right);
}

SojournVector sojourn_vector(const BruhatFactorization& f) {
    SojournVector v;
    v.h.reserve(f.a_diag.size());
    for (const BigRat& a : f.a_diag)
        v.h.push_back(std::log(static_cast<double>(a)));
    return v;
}

double killing_norm(const SojournVector& v) { return killing_norm_n(v.h); }

double killing_norm_n(const std::vector<double>& h) {
    double s = 0;
    for (double x : h) s += x * x;
    return std::sqrt(2.0 * static_cast<double>(h.size()) * s);
}

} // namespace scatterflat::exactlin
