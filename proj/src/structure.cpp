#include "iif/structure.hpp"

#include <algorithm>
#include <random>

#include "iif/detail/cluster.hpp"
#include "iif/detail/eigen_bridge.hpp"
#include "iif/detail/herm_diag.hpp"
#include "iif/jordan.hpp"

namespace iif {

using detail::MatT;

namespace {

void require_pair_shape(const Mat& a, const Mat& f) {
    if (!a.square() || !f.square() || a.rows() != f.rows())
        fail(Errc::DimensionMismatch, "operator and form must be square of equal size");
    if (a.is_exact() != f.is_exact())
        fail(Errc::ParameterOutOfDomain, "operator and form must share a field");
}

bool is_diagonal(const Mat& m, double tol_rel) {
    double tol_abs = m.is_exact() ? 0.0 : tol_rel * std::max(m.norm_max(), 1e-300);
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            if (i == j) continue;
            if (m.is_exact() ? !m.at(i, j).is_zero() : std::abs(m.at(i, j).to_cx()) > tol_abs)
                return false;
        }
    return true;
}

// ---------------------------------------------------------------------------
// Floating engine: Hermitian-pencil diagonalization. Write F = H1 + i H2 with
// H1, H2 Hermitian, probe a nonsingular member H_t of the pencil, and check
// that W = H_t^{-1} H_u is diagonalizable with real spectrum.

struct FloatDiag {
    MatT<Cx> s, d;
};

FloatDiag pencil_diag(const MatT<Cx>& f, const TolerancePolicy& pol, std::uint64_t seed) {
    int n = f.r;
    MatT<Cx> fs = f.star(Involution::Conjugation);
    MatT<Cx> h1 = (f + fs).scaled(Cx(0.5, 0));
    MatT<Cx> h2 = (f - fs).scaled(Cx(0, -0.5));  // (F - F*) / (2i)

    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_real_distribution<double> uni(0.0, 2 * M_PI);
    // score probes by the smallest singular value against the pencil scale;
    // a ratio within H_t itself would make a pure-noise member look healthy
    double pencil_scale = std::max({h1.norm_max(), h2.norm_max(), 1e-300});
    double best_t = 0, best_score = -1;
    for (int k = 0; k < 24; ++k) {
        double t = k == 0 ? 0.0 : uni(rng);
        MatT<Cx> ht = h1.scaled(Cx(std::cos(t), 0)) + h2.scaled(Cx(std::sin(t), 0));
        std::vector<double> sv = detail::singular_values(ht);
        double score = sv.back() / pencil_scale;
        if (score > best_score) { best_score = score; best_t = t; }
    }
    if (best_score < 1e-13)
        fail(Errc::IllConditioned, "no nonsingular member found in the Hermitian pencil");

    double t = best_t;
    MatT<Cx> ht = h1.scaled(Cx(std::cos(t), 0)) + h2.scaled(Cx(std::sin(t), 0));
    MatT<Cx> hu = h1.scaled(Cx(-std::sin(t), 0)) + h2.scaled(Cx(std::cos(t), 0));
    MatT<Cx> w = detail::solve(ht, hu, pol.structural * std::max(ht.norm_max(), 1e-300));

    std::vector<Cx> ev = detail::eigenvalues(w);
    std::vector<detail::Cluster> clusters = detail::single_linkage(ev, pol.cluster);

    double wscale = std::max(w.norm_max(), 1.0);
    MatT<Cx> cols(n, 0);
    for (const detail::Cluster& cl : clusters) {
        if (std::abs(cl.mean.imag()) > pol.cluster)
            fail(Errc::NotDiagonalizable, "pencil operator has nonreal spectrum");
        double lam = cl.mean.real();
        MatT<Cx> wm = w;
        for (int i = 0; i < n; ++i) wm.at(i, i) -= Cx(lam, 0);
        double tau = std::max(pol.structural * wscale, 2.0 * (cl.radius + 1e3 * 2.2e-16 * wscale));
        MatT<Cx> x = detail::nullspace_svd(wm, tau);
        if (x.c != int(cl.idx.size()))
            fail(Errc::NotDiagonalizable, "pencil operator is defective");
        MatT<Cx> g = x.star(Involution::Conjugation) * ht * x;
        detail::HermEig he = detail::hermitian_eig(g);
        double gmax = 0;
        for (double v : he.vals) gmax = std::max(gmax, std::fabs(v));
        for (double v : he.vals)
            if (std::fabs(v) <= pol.structural * gmax)
                fail(Errc::IllConditioned, "degenerate restriction of the pencil form");
        cols = MatT<Cx>::hcat(cols, x * he.u);
    }

    FloatDiag out;
    out.s = std::move(cols);
    MatT<Cx> d = out.s.star(Involution::Conjugation) * f * out.s;
    double dscale = std::max(d.norm_max(), 1e-300);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            if (std::abs(d.at(i, j)) > 32 * pol.structural * dscale)
                fail(Errc::IllConditioned, "pencil diagonalization left off-diagonal residue");
            d.at(i, j) = Cx(0, 0);
        }
    out.d = std::move(d);
    return out;
}

// ---------------------------------------------------------------------------
// Exact engine: split along the cosquare spectrum, then scale each coset block
// to an exactly Hermitian matrix and run rational congruence elimination.

struct ExactDiag {
    MatT<GaussRat> s, d;
};

std::optional<ExactDiag> cosquare_diag_exact(const MatT<GaussRat>& f, const TolerancePolicy& pol) {
    int n = f.r;
    MatT<GaussRat> fs = f.star(Involution::Conjugation);
    MatT<GaussRat> c = detail::solve(fs, f, 0.0);  // cosquare F^{-*} F

    auto spec = exact_spectrum(c, pol);
    if (!spec) return std::nullopt;  // cosquare spectrum leaves Q(i): caller downgrades

    MatT<GaussRat> cols(n, 0);
    std::vector<GaussRat> diag;
    for (const ExactEigenvalue& evd : *spec) {
        const GaussRat& u = evd.lambda;
        if (!(u * u.conj() == GaussRat(1L)))
            fail(Errc::NotDiagonalizable, "cosquare eigenvalue is not unimodular");
        MatT<GaussRat> shifted = c;
        for (int i = 0; i < n; ++i) shifted.at(i, i) -= u;
        MatT<GaussRat> x = detail::kernel_basis(shifted, 0.0);
        if (x.c != evd.alg_mult) fail(Errc::NotDiagonalizable, "cosquare is defective");

        MatT<GaussRat> b = x.star(Involution::Conjugation) * f * x;
        GaussRat w = (u == GaussRat(-1L)) ? GaussRat::i() : GaussRat(1L) + u;
        if (auto root = rational_sqrt(w.norm2())) w = GaussRat(w.re / *root, w.im / *root);
        MatT<GaussRat> h = b.scaled(GaussRat(1L) / w);
        MatT<GaussRat> hs = h.star(Involution::Conjugation);
        for (size_t k = 0; k < h.a.size(); ++k)
            if (!(h.a[k] == hs.a[k]))
                fail(Errc::IllConditioned, "internal: coset block failed to Hermitianize");

        detail::CongruenceDiag<GaussRat> cd =
            detail::hermitian_congruence_diag(h, Involution::Conjugation);
        cols = MatT<GaussRat>::hcat(cols, x * cd.s);
        for (const GaussRat& dv : cd.diag) {
            if (!dv.is_real()) fail(Errc::IllConditioned, "internal: nonreal congruence diagonal");
            diag.push_back(w * dv);
        }
    }

    ExactDiag out;
    out.s = std::move(cols);
    out.d = MatT<GaussRat>(n, n);
    for (int i = 0; i < n; ++i) out.d.at(i, i) = diag[size_t(i)];
    MatT<GaussRat> check = out.s.star(Involution::Conjugation) * f * out.s;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (!(check.at(i, j) == out.d.at(i, j)))
                fail(Errc::IllConditioned, "internal: exact congruence verification failed");
    return out;
}

}  // namespace

StructureReport classify(const Mat& a, const Mat& f, const TolerancePolicy& pol) {
    require_pair_shape(a, f);
    StructureReport rep;
    Mat fs = f.star();
    if (f.equals(fs, pol.structural))
        rep.form_kind = FormKind::Hermitian;
    else if (f.equals(-fs, pol.structural))
        rep.form_kind = FormKind::SkewHermitian;
    else
        rep.form_kind = FormKind::Neither;
    rep.nondegenerate = nonsingular(f, pol);

    Mat as = a.star();
    Mat fa = f * a;
    Mat asf = as * f;
    rep.isometric = (as * f * a).equals(f, pol.structural);
    rep.selfadjoint = fa.equals(asf, pol.structural);
    rep.skewadjoint = fa.equals(-asf, pol.structural);
    return rep;
}

HermitizeResult hermitize(const Mat& a, const Mat& f, const TolerancePolicy& pol) {
    require_pair_shape(a, f);
    if (!f.field().conjugating())
        fail(Errc::NotApplicable, "hermitize requires a conjugating field");
    StructureReport rep = classify(a, f, pol);
    Scalar i_unit = f.is_exact() ? Scalar(GaussRat::i()) : Scalar(Cx(0, 1));

    HermitizeResult out{a, f, {}};
    if (rep.form_kind == FormKind::SkewHermitian) {
        if (!rep.nondegenerate) fail(Errc::SingularForm, "degenerate skew-Hermitian form");
        out.f = f.scaled(i_unit);
        out.note.form_scaled_by_i = true;
    }
    if (rep.skewadjoint && !rep.selfadjoint) {
        out.a = a.scaled(i_unit);
        out.note.op_scaled_by_i = true;
    }
    if (out.note.empty() && rep.form_kind != FormKind::Hermitian)
        fail(Errc::NotApplicable, "neither reduction applies");
    return out;
}

DiagForm diagonalize_form(const Mat& f, const TolerancePolicy& pol, std::uint64_t seed) {
    if (!f.square()) fail(Errc::DimensionMismatch, "form matrix must be square");
    if (!f.field().conjugating())
        fail(Errc::NotApplicable, "form diagonalization requires a conjugating complex field");
    if (!nonsingular(f, pol)) fail(Errc::SingularForm, "degenerate form");

    if (is_diagonal(f, pol.structural)) {
        DiagForm out{Mat::identity(f.field(), f.rows()), f, false};
        if (!f.is_exact()) {  // scrub negligible off-diagonal noise
            Mat d(f.field(), f.rows(), f.rows());
            for (int i = 0; i < f.rows(); ++i) d.set(i, i, f.at(i, i));
            out.d = std::move(d);
        }
        return out;
    }

    if (f.is_exact()) {
        if (auto ed = cosquare_diag_exact(f.eref(), pol))
            return {Mat(f.field(), std::move(ed->s)), Mat(f.field(), std::move(ed->d)), false};
        FloatDiag fd = pencil_diag(f.to_float().fref(), pol, seed);
        FieldSpec ff = f.field().to_float();
        return {Mat(ff, std::move(fd.s)), Mat(ff, std::move(fd.d)), true};
    }

    FloatDiag fd = pencil_diag(f.fref(), pol, seed);
    return {Mat(f.field(), std::move(fd.s)), Mat(f.field(), std::move(fd.d)), false};
}

namespace {

struct EntryRep {
    int index = 0;
    int sign = 1;
    Scalar e;
    double r = 1.0;
    Scalar scale;  // 1/r as a field scalar (exact when representable)
};

CosetSplit split_float(const Mat& a_in, const Mat& s0, const Mat& d0, const TolerancePolicy& pol,
                       bool downgraded) {
    FieldSpec ff = s0.field();
    int n = d0.rows();
    std::vector<EntryRep> reps(static_cast<size_t>(n));
    std::vector<Cx> evals(static_cast<size_t>(n), Cx{});
    for (int i = 0; i < n; ++i) {
        CosetRep cr = coset_representative(d0.at(i, i), ff, pol);
        reps[size_t(i)] = {i, cr.sign, cr.e, cr.r, Scalar(Cx(1.0 / cr.r, 0))};
        evals[size_t(i)] = cr.e.to_cx();
    }
    std::vector<detail::Cluster> clusters = detail::single_linkage(evals, pol.cluster);
    std::sort(clusters.begin(), clusters.end(), [](const auto& x, const auto& y) {
        return std::arg(x.mean) < std::arg(y.mean);
    });

    std::vector<int> order;
    CosetSplit out;
    out.dim = n;
    out.downgraded = downgraded;
    for (const detail::Cluster& cl : clusters) {
        CosetBlock blk;
        Cx e_rep = cl.mean / std::abs(cl.mean);
        blk.e = Scalar(e_rep);
        blk.offset = int(order.size());
        for (int idx : cl.idx)
            if (reps[size_t(idx)].sign > 0) { order.push_back(idx); ++blk.p; }
        for (int idx : cl.idx)
            if (reps[size_t(idx)].sign < 0) { order.push_back(idx); ++blk.q; }
        out.blocks.push_back(std::move(blk));
    }

    Mat s(ff, n, n);
    for (int j = 0; j < n; ++j) {
        int src = order[size_t(j)];
        Scalar sc = reps[size_t(src)].scale;
        for (int i = 0; i < n; ++i) s.set(i, j, s0.at(i, src) * sc);
    }
    Mat a1 = solve(s, a_in * s, pol);

    double ascale = std::max(a1.norm_max(), 1e-300);
    for (const CosetBlock& b1 : out.blocks)
        for (const CosetBlock& b2 : out.blocks) {
            if (&b1 == &b2) continue;
            int r1 = b1.p + b1.q, r2 = b2.p + b2.q;
            for (int i = 0; i < r1; ++i)
                for (int j = 0; j < r2; ++j)
                    if (std::abs(a1.at(b1.offset + i, b2.offset + j).to_cx()) >
                        64 * pol.structural * ascale)
                        fail(Errc::BlockLeakage, "operator leaks across coset blocks");
        }
    for (CosetBlock& blk : out.blocks) {
        int sz = blk.p + blk.q;
        blk.a_block = a1.block(blk.offset, blk.offset, sz, sz);
    }
    out.s = std::move(s);
    return out;
}

std::optional<CosetSplit> split_exact(const Mat& a_in, const Mat& s0, const Mat& d0,
                                      const TolerancePolicy& pol) {
    FieldSpec fe = s0.field();
    int n = d0.rows();
    std::vector<EntryRep> reps(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        CosetRep cr = coset_representative(d0.at(i, i), fe, pol);
        if (!cr.e.exact()) return std::nullopt;  // unit direction leaves Q(i)
        GaussRat d = d0.at(i, i).exact_value();
        auto mod = rational_sqrt(d.norm2());  // |d| when rational
        if (!mod) return std::nullopt;
        auto r = rational_sqrt(*mod);  // sqrt(|d|) when rational
        if (!r) return std::nullopt;
        reps[size_t(i)] = {i, cr.sign, cr.e, cr.r, Scalar(GaussRat(Rat(1) / *r))};
    }

    // group by exact equality of e
    std::vector<std::pair<GaussRat, std::vector<int>>> groups;
    for (int i = 0; i < n; ++i) {
        const GaussRat& e = reps[size_t(i)].e.exact_value();
        bool placed = false;
        for (auto& g : groups)
            if (g.first == e) { g.second.push_back(i); placed = true; break; }
        if (!placed) groups.push_back({e, {i}});
    }
    std::sort(groups.begin(), groups.end(),
              [](const auto& x, const auto& y) { return exact_phase_less(x.first, y.first); });

    CosetSplit out;
    out.dim = n;
    std::vector<int> order;
    for (auto& g : groups) {
        CosetBlock blk;
        blk.e = Scalar(g.first);
        blk.offset = int(order.size());
        for (int idx : g.second)
            if (reps[size_t(idx)].sign > 0) { order.push_back(idx); ++blk.p; }
        for (int idx : g.second)
            if (reps[size_t(idx)].sign < 0) { order.push_back(idx); ++blk.q; }
        out.blocks.push_back(std::move(blk));
    }

    Mat s(fe, n, n);
    for (int j = 0; j < n; ++j) {
        int src = order[size_t(j)];
        Scalar sc = reps[size_t(src)].scale;
        for (int i = 0; i < n; ++i) s.set(i, j, s0.at(i, src) * sc);
    }
    Mat a1 = solve(s, a_in * s, pol);
    for (const CosetBlock& b1 : out.blocks)
        for (const CosetBlock& b2 : out.blocks) {
            if (&b1 == &b2) continue;
            int r1 = b1.p + b1.q, r2 = b2.p + b2.q;
            for (int i = 0; i < r1; ++i)
                for (int j = 0; j < r2; ++j)
                    if (!a1.at(b1.offset + i, b2.offset + j).is_zero())
                        fail(Errc::BlockLeakage, "operator leaks across coset blocks");
        }
    for (CosetBlock& blk : out.blocks) {
        int sz = blk.p + blk.q;
        blk.a_block = a1.block(blk.offset, blk.offset, sz, sz);
    }
    out.s = std::move(s);
    return out;
}

}  // namespace

CosetSplit split_cosets(const Mat& a, const Mat& f, const TolerancePolicy& pol,
                        std::uint64_t seed) {
    StructureReport rep = classify(a, f, pol);
    if (!rep.nondegenerate) fail(Errc::SingularForm, "degenerate form");
    if (!rep.any_kind())
        fail(Errc::NotApplicable, "operator is neither isometric nor zeta-adjoint for the form");

    DiagForm df = diagonalize_form(f, pol, seed);
    if (f.is_exact() && !df.downgraded) {
        if (auto sp = split_exact(a, df.s, df.d, pol)) return std::move(*sp);
        // scalings leave Q(i): continue on floats
        return split_float(a.to_float(), df.s.to_float(), df.d.to_float(), pol, true);
    }
    Mat af = a.is_exact() ? a.to_float() : a;
    return split_float(af, df.s, df.d, pol, df.downgraded || a.is_exact());
}

Mat split_form_matrix(const CosetSplit& split, FieldSpec field) {
    Mat d(field, split.dim, split.dim);
    for (const CosetBlock& blk : split.blocks) {
        for (int i = 0; i < blk.p; ++i) d.set(blk.offset + i, blk.offset + i, blk.e);
        for (int i = 0; i < blk.q; ++i)
            d.set(blk.offset + blk.p + i, blk.offset + blk.p + i, blk.e.neg());
    }
    return d;
}

}  // namespace iif
