#pragma once

// Invariant-subspace restrictions per eigenvalue cluster, shared by the
// Jordan machinery and the canonicalization engine. Floats restrict through
// a reordered Schur form; exact matrices through saturated kernels.

#include <optional>
#include <vector>

#include "iif/detail/cluster.hpp"
#include "iif/detail/eigen_bridge.hpp"
#include "iif/jordan.hpp"

namespace iif::detail {

struct SpectralPiece {
    Cx lambda;             // cluster mean
    int mult = 0;
    double radius = 0;
    MatT<Cx> basis;        // n x m orthonormal columns, invariant under a
    MatT<Cx> restricted;   // m x m upper triangular representation
};

inline std::vector<SpectralPiece> spectral_pieces(const MatT<Cx>& a, const TolerancePolicy& pol) {
    int n = a.r;
    Schur schur = complex_schur(a);
    std::vector<Cx> diag(size_t(n), Cx{});
    for (int i = 0; i < n; ++i) diag[size_t(i)] = schur.t(i, i);
    std::vector<Cluster> clusters = single_linkage(diag, pol.cluster);

    std::vector<SpectralPiece> out;
    for (const Cluster& cl : clusters) {
        Eigen::MatrixXcd u = schur.u, t = schur.t;
        schur_move_front(u, t, cl.idx);
        int m = int(cl.idx.size());
        SpectralPiece p;
        p.lambda = cl.mean;
        p.mult = m;
        p.radius = cl.radius;
        p.basis = from_eigen(u.block(0, 0, n, m));
        p.restricted = from_eigen(t.block(0, 0, m, m));
        out.push_back(std::move(p));
    }
    return out;
}

/// Kernels of the powers of a (numerically) nilpotent m x m matrix, with
/// thresholds widened by the eigenvalue cluster radius: the noise floor of
/// N^k grows like k rho |N|^{k-1}.
inline std::vector<MatT<Cx>> nilpotent_kernels(const MatT<Cx>& nil, double rho,
                                               const TolerancePolicy& pol) {
    int m = nil.r;
    std::vector<MatT<Cx>> kernels{MatT<Cx>(m, 0)};
    MatT<Cx> pw = MatT<Cx>::identity(m);
    double base = std::max(nil.norm_max(), 1.0);
    for (int k = 1; k <= m && kernels.back().c < m; ++k) {
        pw = nil * pw;
        double tau = std::max(pol.structural * std::max(pw.norm_max(), 1e-300),
                              4.0 * k * rho * std::pow(base, k - 1));
        kernels.push_back(nullspace_svd(pw, tau));
        if (kernels.back().c < kernels[size_t(k - 1)].c)
            fail(Errc::IllConditioned, "kernel dimensions decreased under the policy threshold");
    }
    if (kernels.back().c != m)
        fail(Errc::IllConditioned, "generalized eigenspace failed to saturate");
    return kernels;
}

struct ExactPiece {
    GaussRat lambda;
    int mult = 0;
    MatT<GaussRat> basis;       // n x m kernel of (a - lambda)^sat
    MatT<GaussRat> restricted;  // m x m with a basis = basis restricted
};

/// Solve basis * x = rhs for a full-column-rank basis by picking independent
/// rows (exact arithmetic).
inline MatT<GaussRat> solve_in_basis(const MatT<GaussRat>& basis, const MatT<GaussRat>& rhs) {
    int n = basis.r, m = basis.c;
    // independent rows via echelon on the transpose
    MatT<GaussRat> bt = basis.transpose();
    std::vector<int> rows;
    {
        MatT<GaussRat> work = bt;
        int rk = 0;
        for (int col = 0; col < n && rk < m; ++col) {
            int piv = -1;
            for (int i = rk; i < m; ++i)
                if (!work.at(i, col).is_zero()) { piv = i; break; }
            if (piv < 0) continue;
            if (piv != rk)
                for (int j = 0; j < n; ++j) std::swap(work.at(piv, j), work.at(rk, j));
            for (int i = rk + 1; i < m; ++i) {
                if (work.at(i, col).is_zero()) continue;
                GaussRat mult = work.at(i, col) / work.at(rk, col);
                for (int j = col; j < n; ++j) work.at(i, j) -= mult * work.at(rk, j);
            }
            rows.push_back(col);
            ++rk;
        }
        if (int(rows.size()) != m) fail(Errc::IllConditioned, "basis is not full column rank");
    }
    MatT<GaussRat> square(m, m), rsel(m, rhs.c);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) square.at(i, j) = basis.at(rows[size_t(i)], j);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < rhs.c; ++j) rsel.at(i, j) = rhs.at(rows[size_t(i)], j);
    return solve(square, rsel, 0.0);
}

/// Exact spectral restriction; nullopt when the spectrum leaves Q(i).
inline std::optional<std::vector<ExactPiece>> exact_pieces(const MatT<GaussRat>& a,
                                                           const TolerancePolicy& pol) {
    auto spec = exact_spectrum(a, pol);
    if (!spec) return std::nullopt;
    int n = a.r;
    std::vector<ExactPiece> out;
    for (const ExactEigenvalue& ev : *spec) {
        MatT<GaussRat> shifted = a;
        for (int i = 0; i < n; ++i) shifted.at(i, i) -= ev.lambda;
        MatT<GaussRat> pw = MatT<GaussRat>::identity(n);
        MatT<GaussRat> kern(n, 0);
        for (int k = 1; k <= n; ++k) {
            pw = shifted * pw;
            MatT<GaussRat> kb = kernel_basis(pw, 0.0);
            if (kb.c == kern.c) break;
            kern = std::move(kb);
        }
        ExactPiece p;
        p.lambda = ev.lambda;
        p.mult = kern.c;
        p.restricted = solve_in_basis(kern, a * kern);
        p.basis = std::move(kern);
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace iif::detail
