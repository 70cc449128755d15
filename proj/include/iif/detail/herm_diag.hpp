#pragma once

// Exact congruence diagonalization of Hermitian (or symmetric, under the
// identity involution) matrices over Q(i): S* H S = diag. Char != 2 makes the
// zero-diagonal repair step always succeed.

#include <utility>
#include <vector>

#include "iif/detail/dense.hpp"

namespace iif::detail {

template <class T>
struct CongruenceDiag {
    MatT<T> s;
    std::vector<T> diag;
};

template <class T>
CongruenceDiag<T> hermitian_congruence_diag(MatT<T> h, Involution inv, double tol_rel = 0.0) {
    int n = h.r;
    double tol_abs = Num<T>::exact ? 0.0 : tol_rel * std::max(h.norm_max(), 1e-300);
    MatT<T> s = MatT<T>::identity(n);

    auto col_op = [&](int dst, int src, const T& alpha) {
        // col_dst += alpha col_src and the conjugate row operation
        for (int i = 0; i < n; ++i) h.at(i, dst) += alpha * h.at(i, src);
        T ac = Num<T>::conj_val(alpha, inv);
        for (int j = 0; j < n; ++j) h.at(dst, j) += ac * h.at(src, j);
        for (int i = 0; i < n; ++i) s.at(i, dst) += alpha * s.at(i, src);
    };
    auto swap_cols = [&](int x, int y) {
        for (int i = 0; i < n; ++i) std::swap(h.at(i, x), h.at(i, y));
        for (int j = 0; j < n; ++j) std::swap(h.at(x, j), h.at(y, j));
        for (int i = 0; i < n; ++i) std::swap(s.at(i, x), s.at(i, y));
    };

    for (int k = 0; k < n; ++k) {
        int piv = -1;
        for (int i = k; i < n; ++i)
            if (!Num<T>::is_zero(h.at(i, i), tol_abs)) { piv = i; break; }
        if (piv < 0) {
            // all remaining diagonal zero: manufacture a pivot from the
            // largest off-diagonal entry
            int bi = -1, bj = -1;
            double best = -1;
            for (int i = k; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    double m = Num<T>::mag(h.at(i, j));
                    if (m > best) { best = m; bi = i; bj = j; }
                }
            if (bi < 0 || Num<T>::is_zero(h.at(bi, bj), tol_abs)) break;  // zero block
            T v1 = h.at(bi, bj) + Num<T>::conj_val(h.at(bi, bj), inv);  // gamma = 1
            if (!Num<T>::is_zero(v1, tol_abs)) {
                col_op(bi, bj, Num<T>::one());
            } else {
                // Hermitian with purely imaginary coupling: gamma = i
                T g;
                if constexpr (Num<T>::exact)
                    g = GaussRat::i();
                else
                    g = Cx(0, 1);
                col_op(bi, bj, g);
            }
            piv = bi;
        }
        if (piv != k) swap_cols(piv, k);
        for (int j = k + 1; j < n; ++j) {
            if (Num<T>::is_zero(h.at(k, j), 0)) continue;
            col_op(j, k, -(h.at(k, j) / h.at(k, k)));
        }
    }

    CongruenceDiag<T> out;
    out.s = std::move(s);
    out.diag.reserve(size_t(n));
    for (int i = 0; i < n; ++i) out.diag.push_back(h.at(i, i));
    return out;
}

/// Inertia (n_plus, n_minus, n_zero) of an exactly Hermitian exact matrix.
inline std::tuple<int, int, int> exact_inertia(const MatT<GaussRat>& h) {
    CongruenceDiag<GaussRat> cd = hermitian_congruence_diag(h, Involution::Conjugation);
    int p = 0, q = 0, z = 0;
    for (const GaussRat& d : cd.diag) {
        if (!d.is_real()) fail(Errc::IllConditioned, "inertia of a non-Hermitian matrix");
        if (d.re > 0) ++p;
        else if (d.re < 0) ++q;
        else ++z;
    }
    return {p, q, z};
}

}  // namespace iif::detail
