#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "iif/detail/dense.hpp"

namespace iif::detail {

inline Eigen::MatrixXcd to_eigen(const MatT<Cx>& m) {
    Eigen::MatrixXcd out(m.r, m.c);
    for (int i = 0; i < m.r; ++i)
        for (int j = 0; j < m.c; ++j) out(i, j) = m.at(i, j);
    return out;
}

inline MatT<Cx> from_eigen(const Eigen::MatrixXcd& m) {
    MatT<Cx> out(int(m.rows()), int(m.cols()));
    for (int i = 0; i < out.r; ++i)
        for (int j = 0; j < out.c; ++j) out.at(i, j) = m(i, j);
    return out;
}

inline std::vector<Cx> eigenvalues(const MatT<Cx>& m) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(to_eigen(m), false);
    std::vector<Cx> out(size_t(m.r));
    for (int i = 0; i < m.r; ++i) out[size_t(i)] = es.eigenvalues()(i);
    return out;
}

inline std::vector<double> singular_values(const MatT<Cx>& m) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(m));
    std::vector<double> out(size_t(svd.singularValues().size()));
    for (int i = 0; i < svd.singularValues().size(); ++i) out[size_t(i)] = svd.singularValues()(i);
    return out;
}

/// Orthonormal basis of the right null space decided by the absolute
/// threshold tau on singular values.
inline MatT<Cx> nullspace_svd(const MatT<Cx>& m, double tau) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(m), Eigen::ComputeFullV);
    int n = m.c, rk = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > tau) ++rk;
    Eigen::MatrixXcd v = svd.matrixV();
    MatT<Cx> out(n, n - rk);
    for (int j = rk; j < n; ++j)
        for (int i = 0; i < n; ++i) out.at(i, j - rk) = v(i, j);
    return out;
}

inline int rank_svd(const MatT<Cx>& m, double tau) {
    int rk = 0;
    for (double s : singular_values(m))
        if (s > tau) ++rk;
    return rk;
}

struct HermEig {
    MatT<Cx> u;                 // unitary, columns are eigenvectors
    std::vector<double> vals;   // ascending
};

inline HermEig hermitian_eig(const MatT<Cx>& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_eigen(m));
    HermEig out;
    out.u = from_eigen(es.eigenvectors());
    out.vals.assign(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    return out;
}

struct Schur {
    Eigen::MatrixXcd u, t;  // a = u t u*, t upper triangular
};

inline Schur complex_schur(const MatT<Cx>& m) {
    Eigen::ComplexSchur<Eigen::MatrixXcd> cs(to_eigen(m), true);
    return {cs.matrixU(), cs.matrixT()};
}

/// Swap the adjacent diagonal entries k, k+1 of the triangular factor by a
/// unitary similarity, updating u accordingly.
inline void schur_swap_adjacent(Eigen::MatrixXcd& u, Eigen::MatrixXcd& t, int k) {
    Cx t11 = t(k, k), t12 = t(k, k + 1), t22 = t(k + 1, k + 1);
    Cx vx = t12, vy = t22 - t11;
    double nv = std::sqrt(std::norm(vx) + std::norm(vy));
    Eigen::Matrix2cd g;
    if (nv < 1e-300) {
        g << 0, 1, 1, 0;  // commuting equal blocks: plain swap
    } else {
        // first column: eigenvector of [[t11,t12],[0,t22]] at t22
        g << vx / nv, -std::conj(vy) / nv, vy / nv, std::conj(vx) / nv;
    }
    int n = int(t.rows());
    t.block(k, 0, 2, n) = g.adjoint() * t.block(k, 0, 2, n);
    t.block(0, k, n, 2) = t.block(0, k, n, 2) * g;
    u.block(0, k, n, 2) = u.block(0, k, n, 2) * g;
    t(k + 1, k) = 0;
}

/// Reorder the Schur form so that the given diagonal positions occupy the
/// leading block, preserving their relative order.
inline void schur_move_front(Eigen::MatrixXcd& u, Eigen::MatrixXcd& t, std::vector<int> sel) {
    std::sort(sel.begin(), sel.end());
    for (size_t target = 0; target < sel.size(); ++target) {
        int pos = sel[target];
        for (int k = pos - 1; k >= int(target); --k) schur_swap_adjacent(u, t, k);
        for (size_t j = target + 1; j < sel.size(); ++j)
            if (sel[j] < pos) ++sel[j];  // entries passed over shift down by one
    }
}

}  // namespace iif::detail
