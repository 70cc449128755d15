#pragma once

// Nilpotent Jordan-chain construction shared by the exact and floating
// engines. Works in a fixed coordinate space of dimension m with kernels of
// the powers supplied by the caller (the caller owns thresholding).

#include <vector>

#include "iif/detail/dense.hpp"

namespace iif::detail {

template <class T>
struct Chain {
    int size = 0;
    MatT<T> cols;  // m x size, ordered [N^{size-1} v, ..., N v, v]
};

/// Build chains from the top power down, completing bases of ker N^k against
/// ker N^{k-1} + N ker N^{k+1}; column choice is leftmost independent.
/// kernels[k] spans ker N^k for k = 0..nu (kernels[0] has zero columns).
template <class T>
std::vector<Chain<T>> build_chains(const MatT<T>& n_op, const std::vector<MatT<T>>& kernels,
                                   double tol_rel) {
    int m = n_op.r;
    int nu = int(kernels.size()) - 1;
    std::vector<Chain<T>> chains;
    for (int k = nu; k >= 1; --k) {
        const MatT<T>& upper = k + 1 <= nu ? kernels[size_t(k + 1)] : kernels[size_t(nu)];
        MatT<T> fixed = MatT<T>::hcat(kernels[size_t(k - 1)], n_op * upper);
        int dk = kernels[size_t(k)].c;
        int dk1 = k + 1 <= nu ? kernels[size_t(k + 1)].c : dk;
        int dkm = kernels[size_t(k - 1)].c;
        int want = (dk - dkm) - (dk1 - dk);  // blocks of size exactly k
        if (want <= 0) continue;
        std::vector<int> picks = complete_independent(fixed, kernels[size_t(k)], tol_rel, want);
        if (int(picks.size()) != want)
            fail(Errc::IllConditioned, "jordan chain completion rank decision failed");
        for (int j : picks) {
            Chain<T> ch;
            ch.size = k;
            ch.cols = MatT<T>(m, k);
            MatT<T> v = kernels[size_t(k)].cols_slice({j});
            // fill from the right: [..., N v, v]
            for (int h = k - 1; h >= 0; --h) {
                ch.cols.set_block(0, h, v);
                if (h > 0) v = n_op * v;
            }
            chains.push_back(std::move(ch));
        }
    }
    // big blocks first, stable otherwise
    std::stable_sort(chains.begin(), chains.end(),
                     [](const Chain<T>& a, const Chain<T>& b) { return a.size > b.size; });
    return chains;
}

}  // namespace iif::detail
