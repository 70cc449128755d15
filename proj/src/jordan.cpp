#include "iif/jordan.hpp"

#include <algorithm>
#include <set>

#include "iif/detail/chains.hpp"
#include "iif/detail/spectral.hpp"
#include "iif/detail/cluster.hpp"
#include "iif/detail/eigen_bridge.hpp"

namespace iif {

using detail::MatT;

namespace {

bool exact_less(const GaussRat& a, const GaussRat& b) {
    if (a.re != b.re) return a.re < b.re;
    return a.im < b.im;
}

// Weyr increments w_k = d_k - d_{k-1} must be nonincreasing; the block-size
// multiset is the conjugate partition. Cross-checked here.
std::vector<int> sizes_from_kernel_dims(const std::vector<int>& d) {
    std::vector<int> w;
    for (size_t k = 1; k < d.size(); ++k) w.push_back(d[k] - d[k - 1]);
    for (size_t k = 1; k < w.size(); ++k)
        if (w[k] > w[k - 1]) fail(Errc::IllConditioned, "kernel dimension increments not monotone");
    std::vector<int> sizes;
    for (size_t k = 0; k < w.size(); ++k) {
        int next = k + 1 < w.size() ? w[k + 1] : 0;
        for (int c = 0; c < w[k] - next; ++c) sizes.push_back(int(k) + 1);
    }
    std::sort(sizes.rbegin(), sizes.rend());
    return sizes;
}

JordanData jordan_float(const Mat& a, const TolerancePolicy& pol) {
    const MatT<Cx>& m = a.fref();
    double scale = std::max(m.norm_max(), 1e-300);
    std::vector<detail::SpectralPiece> pieces = detail::spectral_pieces(m, pol);

    JordanData jd;
    MatT<Cx> t(m.r, 0);
    for (const detail::SpectralPiece& pc : pieces) {
        MatT<Cx> nil = pc.restricted;
        for (int i = 0; i < pc.mult; ++i) nil.at(i, i) -= pc.lambda;
        double rho = pc.radius + 1e3 * 2.2e-16 * scale;
        std::vector<MatT<Cx>> kernels = detail::nilpotent_kernels(nil, rho, pol);
        std::vector<int> dims;
        for (const auto& k : kernels) dims.push_back(k.c);
        std::vector<int> sizes = sizes_from_kernel_dims(dims);

        std::vector<detail::Chain<Cx>> chains = detail::build_chains(nil, kernels, pol.structural);
        MatT<Cx> cols(pc.mult, pc.mult);
        int col = 0;
        for (const auto& ch : chains) {
            cols.set_block(0, col, ch.cols);
            col += ch.size;
        }
        jd.eigenvalues.push_back({Scalar(pc.lambda), sizes});
        t = MatT<Cx>::hcat(t, pc.basis * cols);
    }
    jd.t = Mat(a.field(), std::move(t));

    Mat j = jordan_matrix(jd, a.field());
    Mat recon = solve(jd.t, a * jd.t, pol);
    if (!recon.equals(j, 64 * pol.structural))
        fail(Errc::IllConditioned, "jordan reconstruction residual exceeds policy");
    return jd;
}

JordanData jordan_exact(const Mat& a, const TolerancePolicy& pol) {
    const MatT<GaussRat>& m = a.eref();
    auto spec = exact_spectrum(m, pol);
    if (!spec) fail(Errc::SpectrumOutsideField, "eigenvalues could not be verified in Q(i)");

    int n = m.r;
    JordanData jd;
    MatT<GaussRat> t(n, 0);
    for (const ExactEigenvalue& ev : *spec) {
        MatT<GaussRat> shifted = m;
        for (int i = 0; i < n; ++i) shifted.at(i, i) -= ev.lambda;
        std::vector<MatT<GaussRat>> kernels{MatT<GaussRat>(n, 0)};
        std::vector<int> dims{0};
        MatT<GaussRat> pw = MatT<GaussRat>::identity(n);
        for (int k = 1; k <= n; ++k) {
            pw = shifted * pw;
            kernels.push_back(detail::kernel_basis(pw, 0.0));
            dims.push_back(kernels.back().c);
            if (dims.back() == dims[size_t(k - 1)]) {
                kernels.pop_back();
                dims.pop_back();
                break;
            }
        }
        std::vector<int> sizes = sizes_from_kernel_dims(dims);
        std::vector<detail::Chain<GaussRat>> chains = detail::build_chains(shifted, kernels, 0.0);
        for (const auto& ch : chains) t = MatT<GaussRat>::hcat(t, ch.cols);
        jd.eigenvalues.push_back({Scalar(ev.lambda), sizes});
    }
    jd.t = Mat(a.field(), std::move(t));
    if (!nonsingular(jd.t, pol)) fail(Errc::IllConditioned, "exact chain basis is singular");

    Mat j = jordan_matrix(jd, a.field());
    Mat recon = solve(jd.t, a * jd.t, pol);
    if (!recon.equals(j, 0.0)) fail(Errc::IllConditioned, "exact jordan reconstruction failed");
    return jd;
}

}  // namespace

JordanData jordan_form(const Mat& a, const TolerancePolicy& pol) {
    if (!a.square()) fail(Errc::DimensionMismatch, "jordan form of a non-square matrix");
    if (a.is_exact()) return jordan_exact(a, pol);
    return jordan_float(a, pol);
}

Mat jordan_matrix(const JordanData& jd, FieldSpec field) {
    std::vector<Mat> blocks;
    for (const EigenvalueBlocks& ev : jd.eigenvalues)
        for (int sz : ev.sizes) {
            Mat j(field, sz, sz);
            for (int i = 0; i < sz; ++i) {
                j.set(i, i, ev.lambda);
                if (i + 1 < sz)
                    j.set(i, i + 1, field.exact() ? Scalar(GaussRat(1L)) : Scalar(Cx(1, 0)));
            }
            blocks.push_back(std::move(j));
        }
    return direct_sum(blocks);
}

std::optional<std::vector<ExactEigenvalue>> exact_spectrum(const MatT<GaussRat>& a,
                                                           const TolerancePolicy& pol) {
    int n = a.r;
    MatT<Cx> fl(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) fl.at(i, j) = a.at(i, j).to_cx();
    std::vector<Cx> ev = detail::eigenvalues(fl);
    std::vector<detail::Cluster> clusters = detail::single_linkage(ev, pol.cluster);

    std::vector<GaussRat> verified;
    auto try_candidate = [&](Cx z) {
        GaussRat cand(rationalize(z.real()), rationalize(z.imag()));
        for (const GaussRat& v : verified)
            if (v == cand) return;
        MatT<GaussRat> shifted = a;
        for (int i = 0; i < n; ++i) shifted.at(i, i) -= cand;
        if (detail::rank(shifted, 0.0) < n) verified.push_back(cand);
    };
    for (const detail::Cluster& cl : clusters) {
        try_candidate(cl.mean);
        for (int i : cl.idx) try_candidate(ev[size_t(i)]);
    }

    std::vector<ExactEigenvalue> out;
    int total = 0;
    for (const GaussRat& lam : verified) {
        MatT<GaussRat> shifted = a;
        for (int i = 0; i < n; ++i) shifted.at(i, i) -= lam;
        MatT<GaussRat> pw = MatT<GaussRat>::identity(n);
        int prev = 0, mult = 0;
        for (int k = 1; k <= n; ++k) {
            pw = shifted * pw;
            int dim = n - detail::rank(pw, 0.0);
            if (dim == prev) break;
            prev = mult = dim;
        }
        out.push_back({lam, mult});
        total += mult;
    }
    if (total != n) return std::nullopt;
    std::sort(out.begin(), out.end(), [](const ExactEigenvalue& x, const ExactEigenvalue& y) {
        return exact_less(x.lambda, y.lambda);
    });
    return out;
}

}  // namespace iif
