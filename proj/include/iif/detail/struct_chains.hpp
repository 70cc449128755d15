#pragma once

// Structured Jordan chains of a nilpotent H-selfadjoint operator: chains
// whose Gram matrix against H is pivot * Z_n (anti-diagonal), obtained by
// greedy extraction of a maximal-height chain, moment straightening, and
// H-orthogonal deflation. The pivot is real and its sign is the block's sign
// characteristic entry; positive chain rescalings cannot change it.

#include <vector>

#include "iif/detail/dense.hpp"
#include "iif/detail/eigen_bridge.hpp"

namespace iif::detail {

template <class T>
struct StructChain {
    MatT<T> cols;  // m x size columns [N^{size-1} v, ..., N v, v], unscaled
    int size = 1;
    T pivot;       // H(v, N^{size-1} v), real and nonzero
};

template <class T>
T herm_pairing(const MatT<T>& x, const MatT<T>& h, const MatT<T>& y, Involution inv) {
    return (x.star(inv) * h * y).at(0, 0);
}

template <class T>
T real_part_of(const T& x) {
    if constexpr (Num<T>::exact)
        return GaussRat(x.re);
    else
        return Cx(x.real(), 0);
}

/// sizes: the expected block-size multiset (descending); the caller computes
/// it from kernel dimensions. noise_tol: absolute floor for floating zero
/// decisions, ignored by exact scalars.
template <class T>
std::vector<StructChain<T>> structured_nilpotent_chains(const MatT<T>& n_op, const MatT<T>& h,
                                                        std::vector<int> sizes,
                                                        double noise_tol) {
    constexpr Involution conj = Involution::Conjugation;
    int m = n_op.r;
    std::sort(sizes.rbegin(), sizes.rend());
    MatT<T> w = MatT<T>::identity(m);  // active H-orthogonal complement basis
    std::vector<StructChain<T>> out;

    for (int nu : sizes) {
        int wdim = w.c;
        if (wdim <= 0) fail(Errc::IllConditioned, "structured chain extraction exhausted the space");
        // moment form G(x, y) = H(x, N^{nu-1} y) on the active subspace
        MatT<T> npow = MatT<T>::identity(m);
        for (int k = 0; k < nu - 1; ++k) npow = n_op * npow;
        MatT<T> g = w.star(conj) * (h * (npow * w));

        MatT<T> v(m, 1);
        if constexpr (!Num<T>::exact) {
            // best-conditioned pivot: the eigenvector of the Hermitian moment
            // form with the largest |eigenvalue|
            MatT<Cx> gh = (g + g.star(conj)).scaled(Cx(0.5, 0));
            HermEig he = hermitian_eig(gh);
            int best = 0;
            for (size_t i = 1; i < he.vals.size(); ++i)
                if (std::fabs(he.vals[i]) > std::fabs(he.vals[size_t(best)])) best = int(i);
            if (std::fabs(he.vals[size_t(best)]) <= noise_tol)
                fail(Errc::IllConditioned, "moment form vanished before all chains were found");
            v = w * he.u.cols_slice({best});
        } else {
            double gmax = g.norm_max();
            int best_diag = -1;
            double best_val = 0;
            for (int i = 0; i < wdim; ++i) {
                double val = Num<T>::mag(g.at(i, i));
                if (val > best_val) { best_val = val; best_diag = i; }
            }
            if (best_diag >= 0 && best_val > 0.25 * gmax) {
                v = w.cols_slice({best_diag});
            } else {
                int bi = -1, bj = -1;
                double best = -1;
                for (int i = 0; i < wdim; ++i)
                    for (int j = 0; j < wdim; ++j) {
                        if (i == j) continue;
                        double val = Num<T>::mag(g.at(i, j));
                        if (val > best) { best = val; bi = i; bj = j; }
                    }
                if (bi < 0 || g.at(bi, bj).is_zero())
                    fail(Errc::IllConditioned, "moment form vanished before all chains were found");
                // q(w_i + gamma w_j) = G_ii + G_jj + 2 Re(gamma G_ij); try gamma = 1, i
                MatT<T> v1 = w.cols_slice({bi}) + w.cols_slice({bj});
                MatT<T> v2 = w.cols_slice({bi}) + w.cols_slice({bj}).scaled(GaussRat::i());
                double q1 = Num<T>::mag(herm_pairing(v1, h, npow * v1, conj));
                double q2 = Num<T>::mag(herm_pairing(v2, h, npow * v2, conj));
                v = q1 >= q2 ? v1 : v2;
            }
        }

        // straighten: kill the moments below the pivot one power at a time;
        // floats get a second pass to scrub the second-order residue of the
        // corrections computed from noisy moments
        std::vector<MatT<T>> npows(static_cast<size_t>(nu));  // N^0..N^{nu-1}
        npows[0] = MatT<T>::identity(m);
        for (int k = 1; k < nu; ++k) npows[size_t(k)] = n_op * npows[size_t(k - 1)];
        int passes = Num<T>::exact ? 1 : 2;
        for (int pass = 0; pass < passes; ++pass)
            for (int s = 1; s <= nu - 1; ++s) {
                int t = nu - 1 - s;
                T mt = herm_pairing(v, h, npows[size_t(t)] * v, conj);
                T mtop = herm_pairing(v, h, npows[size_t(nu - 1)] * v, conj);
                T alpha = -(real_part_of(mt) / (real_part_of(mtop) + real_part_of(mtop)));
                v = v + (npows[size_t(s)] * v).scaled(alpha);
            }

        StructChain<T> ch;
        ch.size = nu;
        ch.pivot = real_part_of(herm_pairing(v, h, npows[size_t(nu - 1)] * v, conj));
        if (Num<T>::is_zero(ch.pivot, noise_tol))
            fail(Errc::IllConditioned, "vanishing chain pivot");
        ch.cols = MatT<T>(m, nu);
        for (int j = 0; j < nu; ++j) ch.cols.set_block(0, j, npows[size_t(nu - 1 - j)] * v);

        // H-orthogonal deflation: active subspace := chain-perp inside span(w)
        MatT<T> constraints = ch.cols.star(conj) * (h * w);  // nu x wdim
        MatT<T> kern = kernel_basis(constraints, Num<T>::exact ? 0.0 : 1e-10);
        if (kern.c != wdim - nu)
            fail(Errc::IllConditioned, "chain deflation produced the wrong dimension");
        w = w * kern;
        if constexpr (!Num<T>::exact) {
            // re-orthonormalize to keep later moment forms well scaled
            for (int j = 0; j < w.c; ++j) {
                for (int k = 0; k < j; ++k) {
                    Cx dot(0, 0);
                    for (int i = 0; i < m; ++i) dot += std::conj(w.at(i, k)) * w.at(i, j);
                    for (int i = 0; i < m; ++i) w.at(i, j) -= dot * w.at(i, k);
                }
                double nrm = 0;
                for (int i = 0; i < m; ++i) nrm += std::norm(w.at(i, j));
                nrm = std::sqrt(nrm);
                if (nrm <= 0) fail(Errc::IllConditioned, "deflated basis collapsed");
                for (int i = 0; i < m; ++i) w.at(i, j) /= nrm;
            }
        }
        out.push_back(std::move(ch));
    }
    if (w.c != 0) fail(Errc::IllConditioned, "structured chains did not exhaust the space");
    return out;
}

}  // namespace iif::detail
