#pragma once

// Dense matrix kernels shared by the exact (Gaussian rational) and floating
// (complex double) engines. Small-n, correctness-bound: plain O(n^3) loops.

#include <algorithm>
#include <cmath>
#include <vector>

#include "iif/errors.hpp"
#include "iif/numfield.hpp"

namespace iif::detail {

template <class T>
struct Num;

template <>
struct Num<GaussRat> {
    static constexpr bool exact = true;
    static GaussRat zero() { return GaussRat(); }
    static GaussRat one() { return GaussRat(1L); }
    static GaussRat from_long(long v) { return GaussRat(v); }
    static GaussRat conj_val(const GaussRat& x, Involution inv) {
        return inv == Involution::Conjugation ? x.conj() : x;
    }
    static bool is_zero(const GaussRat& x, double) { return x.is_zero(); }
    static double mag(const GaussRat& x) { return std::abs(x.to_cx()); }
    static Cx to_cx(const GaussRat& x) { return x.to_cx(); }
    // Exact pivot rule: maximal numerator-bit-size / denominator-bit-size
    // ratio, to limit coefficient blowup.
    static double pivot_score(const GaussRat& x) {
        if (x.is_zero()) return -1.0;
        auto bits = [](const mpz_class& z) {
            return z == 0 ? size_t(0) : mpz_sizeinbase(z.get_mpz_t(), 2);
        };
        size_t nb = std::max(bits(x.re.get_num()), bits(x.im.get_num()));
        size_t db = std::max(bits(x.re.get_den()), bits(x.im.get_den()));
        return double(nb + 1) / double(db + 1);
    }
};

template <>
struct Num<Cx> {
    static constexpr bool exact = false;
    static Cx zero() { return Cx(0, 0); }
    static Cx one() { return Cx(1, 0); }
    static Cx from_long(long v) { return Cx(double(v), 0); }
    static Cx conj_val(const Cx& x, Involution inv) {
        return inv == Involution::Conjugation ? std::conj(x) : x;
    }
    static bool is_zero(const Cx& x, double tol_abs) { return std::abs(x) <= tol_abs; }
    static double mag(const Cx& x) { return std::abs(x); }
    static Cx to_cx(const Cx& x) { return x; }
    static double pivot_score(const Cx& x) { return std::abs(x); }
};

template <class T>
struct MatT {
    int r = 0, c = 0;
    std::vector<T> a;

    MatT() = default;
    MatT(int rows, int cols) : r(rows), c(cols), a(size_t(rows) * cols, Num<T>::zero()) {}

    T& at(int i, int j) { return a[size_t(i) * c + j]; }
    const T& at(int i, int j) const { return a[size_t(i) * c + j]; }

    static MatT identity(int n) {
        MatT m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = Num<T>::one();
        return m;
    }

    bool square() const { return r == c; }

    double norm_max() const {
        double m = 0;
        for (const T& x : a) m = std::max(m, Num<T>::mag(x));
        return m;
    }

    MatT operator+(const MatT& o) const {
        MatT out(r, c);
        for (size_t k = 0; k < a.size(); ++k) out.a[k] = a[k] + o.a[k];
        return out;
    }
    MatT operator-(const MatT& o) const {
        MatT out(r, c);
        for (size_t k = 0; k < a.size(); ++k) out.a[k] = a[k] - o.a[k];
        return out;
    }
    MatT operator-() const {
        MatT out(r, c);
        for (size_t k = 0; k < a.size(); ++k) out.a[k] = -a[k];
        return out;
    }
    MatT operator*(const MatT& o) const {
        if (c != o.r) fail(Errc::DimensionMismatch, "matrix product shape mismatch");
        MatT out(r, o.c);
        for (int i = 0; i < r; ++i)
            for (int k = 0; k < c; ++k) {
                const T& x = at(i, k);
                if (Num<T>::exact && Num<T>::is_zero(x, 0)) continue;
                for (int j = 0; j < o.c; ++j) out.at(i, j) += x * o.at(k, j);
            }
        return out;
    }
    MatT scaled(const T& s) const {
        MatT out(r, c);
        for (size_t k = 0; k < a.size(); ++k) out.a[k] = a[k] * s;
        return out;
    }

    MatT transpose() const {
        MatT out(c, r);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) out.at(j, i) = at(i, j);
        return out;
    }
    MatT star(Involution inv) const {
        MatT out(c, r);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) out.at(j, i) = Num<T>::conj_val(at(i, j), inv);
        return out;
    }

    MatT block(int i0, int j0, int rows, int cols) const {
        MatT out(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) out.at(i, j) = at(i0 + i, j0 + j);
        return out;
    }
    void set_block(int i0, int j0, const MatT& b) {
        for (int i = 0; i < b.r; ++i)
            for (int j = 0; j < b.c; ++j) at(i0 + i, j0 + j) = b.at(i, j);
    }
    MatT cols_slice(const std::vector<int>& idx) const {
        MatT out(r, int(idx.size()));
        for (int j = 0; j < int(idx.size()); ++j)
            for (int i = 0; i < r; ++i) out.at(i, j) = at(i, idx[j]);
        return out;
    }

    static MatT hcat(const MatT& x, const MatT& y) {
        MatT out(x.r, x.c + y.c);
        out.set_block(0, 0, x);
        out.set_block(0, x.c, y);
        return out;
    }
    static MatT direct_sum(const MatT& x, const MatT& y) {
        MatT out(x.r + y.r, x.c + y.c);
        out.set_block(0, 0, x);
        out.set_block(x.r, x.c, y);
        return out;
    }
};

// --- LU with pivoting policy ------------------------------------------------

template <class T>
struct LU {
    MatT<T> lu;
    std::vector<int> perm;  // row permutation
    int sign = 1;
    bool singular = false;
};

template <class T>
LU<T> lu_factor(MatT<T> m, double tol_abs) {
    LU<T> f;
    int n = m.r;
    f.perm.resize(n);
    for (int i = 0; i < n; ++i) f.perm[i] = i;
    for (int k = 0; k < n; ++k) {
        int best = -1;
        double best_score = -1;
        for (int i = k; i < n; ++i) {
            const T& x = m.at(i, k);
            if (Num<T>::is_zero(x, tol_abs)) continue;
            double s = Num<T>::pivot_score(x);
            if (s > best_score) { best_score = s; best = i; }
        }
        if (best < 0) { f.singular = true; continue; }
        if (best != k) {
            for (int j = 0; j < n; ++j) std::swap(m.at(best, j), m.at(k, j));
            std::swap(f.perm[best], f.perm[k]);
            f.sign = -f.sign;
        }
        for (int i = k + 1; i < n; ++i) {
            if (Num<T>::is_zero(m.at(i, k), 0)) continue;
            T mult = m.at(i, k) / m.at(k, k);
            m.at(i, k) = mult;
            for (int j = k + 1; j < n; ++j) m.at(i, j) -= mult * m.at(k, j);
        }
    }
    f.lu = std::move(m);
    return f;
}

template <class T>
MatT<T> lu_solve(const LU<T>& f, const MatT<T>& b) {
    if (f.singular) fail(Errc::SingularMatrix, "singular matrix in solve");
    int n = f.lu.r;
    MatT<T> x(n, b.c);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < b.c; ++j) x.at(i, j) = b.at(f.perm[i], j);
    // forward
    for (int k = 0; k < n; ++k)
        for (int i = k + 1; i < n; ++i) {
            if (Num<T>::is_zero(f.lu.at(i, k), 0)) continue;
            for (int j = 0; j < b.c; ++j) x.at(i, j) -= f.lu.at(i, k) * x.at(k, j);
        }
    // back
    for (int k = n - 1; k >= 0; --k) {
        for (int j = 0; j < b.c; ++j) x.at(k, j) = x.at(k, j) / f.lu.at(k, k);
        for (int i = 0; i < k; ++i) {
            if (Num<T>::is_zero(f.lu.at(i, k), 0)) continue;
            for (int j = 0; j < b.c; ++j) x.at(i, j) -= f.lu.at(i, k) * x.at(k, j);
        }
    }
    return x;
}

template <class T>
MatT<T> solve(const MatT<T>& m, const MatT<T>& b, double tol_abs) {
    if (!m.square() || m.r != b.r) fail(Errc::DimensionMismatch, "solve shape mismatch");
    return lu_solve(lu_factor(m, tol_abs), b);
}

template <class T>
MatT<T> inverse(const MatT<T>& m, double tol_abs) {
    return solve(m, MatT<T>::identity(m.r), tol_abs);
}

template <class T>
T det(const MatT<T>& m, double tol_abs) {
    if (!m.square()) fail(Errc::DimensionMismatch, "determinant of non-square matrix");
    LU<T> f = lu_factor(m, tol_abs);
    if (f.singular) return Num<T>::zero();
    T d = f.sign > 0 ? Num<T>::one() : -Num<T>::one();
    for (int i = 0; i < m.r; ++i) d *= f.lu.at(i, i);
    return d;
}

/// Row echelon rank. Floats use the threshold tol_rel * max |entry| of the
/// input; exact entries compare against zero.
template <class T>
int rank(MatT<T> m, double tol_rel) {
    double tol_abs = Num<T>::exact ? 0.0 : tol_rel * std::max(m.norm_max(), 1e-300);
    int rk = 0;
    for (int col = 0; col < m.c && rk < m.r; ++col) {
        int best = -1;
        double best_score = -1;
        for (int i = rk; i < m.r; ++i) {
            if (Num<T>::is_zero(m.at(i, col), tol_abs)) continue;
            double s = Num<T>::pivot_score(m.at(i, col));
            if (s > best_score) { best_score = s; best = i; }
        }
        if (best < 0) continue;
        if (best != rk)
            for (int j = 0; j < m.c; ++j) std::swap(m.at(best, j), m.at(rk, j));
        for (int i = rk + 1; i < m.r; ++i) {
            if (Num<T>::is_zero(m.at(i, col), 0)) continue;
            T mult = m.at(i, col) / m.at(rk, col);
            for (int j = col; j < m.c; ++j) m.at(i, j) -= mult * m.at(rk, j);
        }
        ++rk;
    }
    return rk;
}

/// Basis of the right null space, as columns. Gaussian elimination with the
/// same thresholding convention as rank().
template <class T>
MatT<T> kernel_basis(MatT<T> m, double tol_rel) {
    double tol_abs = Num<T>::exact ? 0.0 : tol_rel * std::max(m.norm_max(), 1e-300);
    int n = m.c;
    std::vector<int> pivot_col;
    int rk = 0;
    for (int col = 0; col < n && rk < m.r; ++col) {
        int best = -1;
        double best_score = -1;
        for (int i = rk; i < m.r; ++i) {
            if (Num<T>::is_zero(m.at(i, col), tol_abs)) continue;
            double s = Num<T>::pivot_score(m.at(i, col));
            if (s > best_score) { best_score = s; best = i; }
        }
        if (best < 0) continue;
        if (best != rk)
            for (int j = 0; j < n; ++j) std::swap(m.at(best, j), m.at(rk, j));
        // normalize pivot row and eliminate everywhere (RREF)
        T piv = m.at(rk, col);
        for (int j = col; j < n; ++j) m.at(rk, j) = m.at(rk, j) / piv;
        for (int i = 0; i < m.r; ++i) {
            if (i == rk || Num<T>::is_zero(m.at(i, col), 0)) continue;
            T mult = m.at(i, col);
            for (int j = col; j < n; ++j) m.at(i, j) -= mult * m.at(rk, j);
        }
        pivot_col.push_back(col);
        ++rk;
    }
    std::vector<bool> is_pivot(n, false);
    for (int col : pivot_col) is_pivot[col] = true;
    MatT<T> basis(n, n - rk);
    int bj = 0;
    for (int col = 0; col < n; ++col) {
        if (is_pivot[col]) continue;
        basis.at(col, bj) = Num<T>::one();
        for (int pi = 0; pi < rk; ++pi) basis.at(pivot_col[pi], bj) = -m.at(pi, col);
        ++bj;
    }
    return basis;
}

/// Indices of a maximal independent column subset of [fixed | cand] drawn
/// from cand. Exact fields scan left to right; floats greedily take the
/// candidate with the largest residual against the chosen span, which keeps
/// the completion well conditioned. Both choices are deterministic.
template <class T>
std::vector<int> complete_independent(const MatT<T>& fixed, const MatT<T>& cand, double tol_rel,
                                      int want = -1) {
    std::vector<int> chosen;
    if constexpr (Num<T>::exact) {
        MatT<T> cur = fixed;
        int base = rank(cur, tol_rel);
        for (int j = 0; j < cand.c; ++j) {
            if (want >= 0 && int(chosen.size()) == want) break;
            MatT<T> trial = MatT<T>::hcat(cur, cand.cols_slice({j}));
            if (rank(trial, tol_rel) > base) {
                cur = trial;
                ++base;
                chosen.push_back(j);
            }
        }
        return chosen;
    } else {
        int m = cand.r;
        std::vector<std::vector<Cx>> basis;  // orthonormal span of fixed + chosen
        auto project_out = [&](std::vector<Cx>& v) {
            for (const auto& b : basis) {
                Cx dot(0, 0);
                for (int i = 0; i < m; ++i) dot += std::conj(b[size_t(i)]) * v[size_t(i)];
                for (int i = 0; i < m; ++i) v[size_t(i)] -= dot * b[size_t(i)];
            }
        };
        auto col_of = [&](const MatT<T>& src, int j) {
            std::vector<Cx> v(size_t(m), Cx{});
            for (int i = 0; i < m; ++i) v[size_t(i)] = src.at(i, j);
            return v;
        };
        auto norm_of = [&](const std::vector<Cx>& v) {
            double s = 0;
            for (const Cx& x : v) s += std::norm(x);
            return std::sqrt(s);
        };
        auto absorb = [&](std::vector<Cx> v) {
            project_out(v);
            double nv = norm_of(v);
            if (nv <= 0) return;
            for (Cx& x : v) x /= nv;
            basis.push_back(std::move(v));
        };
        for (int j = 0; j < fixed.c; ++j) {
            std::vector<Cx> v = col_of(fixed, j);
            std::vector<Cx> w = v;
            project_out(w);
            if (norm_of(w) > tol_rel * std::max(norm_of(v), 1.0)) absorb(std::move(v));
        }
        while (want < 0 || int(chosen.size()) < want) {
            int best = -1;
            double best_res = -1;
            std::vector<Cx> best_vec;
            for (int j = 0; j < cand.c; ++j) {
                if (std::find(chosen.begin(), chosen.end(), j) != chosen.end()) continue;
                std::vector<Cx> v = col_of(cand, j);
                double full = norm_of(v);
                project_out(v);
                double res = norm_of(v);
                if (res <= tol_rel * std::max(full, 1.0)) continue;
                if (res > best_res) { best_res = res; best = j; best_vec = std::move(v); }
            }
            if (best < 0) break;
            chosen.push_back(best);
            double nv = norm_of(best_vec);
            for (Cx& x : best_vec) x /= nv;
            basis.push_back(std::move(best_vec));
        }
        std::sort(chosen.begin(), chosen.end());
        return chosen;
    }
}

}  // namespace iif::detail
