#include <algorithm>
#include <cmath>

#include "iif/canonical.hpp"
#include "iif/detail/chains.hpp"
#include "iif/detail/herm_diag.hpp"
#include "iif/detail/spectral.hpp"
#include "iif/detail/struct_chains.hpp"

namespace iif {

using detail::MatT;

namespace {

struct ExactnessLost {
    std::string reason;
};

constexpr Involution kConj = Involution::Conjugation;

template <class T>
struct Piece {
    T lambda;
    int mult = 0;
    double radius = 0;
    MatT<T> basis;
    MatT<T> restricted;
};

std::vector<Piece<Cx>> operator_pieces(const MatT<Cx>& b, const TolerancePolicy& pol) {
    std::vector<Piece<Cx>> out;
    for (detail::SpectralPiece& p : detail::spectral_pieces(b, pol))
        out.push_back({p.lambda, p.mult, p.radius, std::move(p.basis), std::move(p.restricted)});
    return out;
}

std::vector<Piece<GaussRat>> operator_pieces(const MatT<GaussRat>& b, const TolerancePolicy& pol) {
    auto ep = detail::exact_pieces(b, pol);
    if (!ep) throw ExactnessLost{"operator spectrum leaves Q(i)"};
    std::vector<Piece<GaussRat>> out;
    for (detail::ExactPiece& p : *ep)
        out.push_back({p.lambda, p.mult, 0.0, std::move(p.basis), std::move(p.restricted)});
    return out;
}

template <class T>
std::vector<int> nilpotent_sizes(const MatT<T>& nil, double rho, const TolerancePolicy& pol,
                                 std::vector<MatT<T>>* kernels_out) {
    std::vector<MatT<T>> kernels;
    if constexpr (detail::Num<T>::exact) {
        int m = nil.r;
        kernels.push_back(MatT<T>(m, 0));
        MatT<T> pw = MatT<T>::identity(m);
        for (int k = 1; k <= m && kernels.back().c < m; ++k) {
            pw = nil * pw;
            kernels.push_back(detail::kernel_basis(pw, 0.0));
        }
        if (kernels.back().c != m) fail(Errc::IllConditioned, "exact nilpotent failed to saturate");
    } else {
        kernels = detail::nilpotent_kernels(nil, rho, pol);
    }
    std::vector<int> dims;
    for (const auto& k : kernels) dims.push_back(k.c);
    std::vector<int> w;
    for (size_t k = 1; k < dims.size(); ++k) w.push_back(dims[k] - dims[k - 1]);
    for (size_t k = 1; k < w.size(); ++k)
        if (w[k] > w[k - 1]) fail(Errc::IllConditioned, "kernel increments not monotone");
    std::vector<int> sizes;
    for (size_t k = 0; k < w.size(); ++k) {
        int next = k + 1 < w.size() ? w[k + 1] : 0;
        for (int c = 0; c < w[k] - next; ++c) sizes.push_back(int(k) + 1);
    }
    std::sort(sizes.rbegin(), sizes.rend());
    if (kernels_out) *kernels_out = std::move(kernels);
    return sizes;
}

// --- scalar helpers per engine ------------------------------------------------

bool eig_is_real(const Cx& l, const TolerancePolicy& pol) {
    return std::fabs(l.imag()) <= pol.cluster;
}
bool eig_is_real(const GaussRat& l, const TolerancePolicy&) { return l.im == 0; }

bool eig_is_unimodular(const Cx& l, const TolerancePolicy& pol) {
    return std::fabs(std::abs(l) - 1.0) <= pol.cluster;
}
bool eig_is_unimodular(const GaussRat& l, const TolerancePolicy&) { return l.norm2() == 1; }

Cx snap_real(const Cx& l) { return Cx(l.real(), 0); }
GaussRat snap_real(const GaussRat& l) { return l; }

Cx snap_unit(const Cx& l) { return l / std::abs(l); }
GaussRat snap_unit(const GaussRat& l) { return l; }

int pivot_sign(const Cx& p) { return p.real() > 0 ? 1 : -1; }
int pivot_sign(const GaussRat& p) { return p.re > 0 ? 1 : -1; }

Cx inv_sqrt_abs(const Cx& p) { return Cx(1.0 / std::sqrt(std::fabs(p.real())), 0); }
GaussRat inv_sqrt_abs(const GaussRat& p) {
    Rat ab = p.re < 0 ? Rat(-p.re) : p.re;
    auto r = rational_sqrt(ab);
    if (!r) throw ExactnessLost{"chain scaling needs an irrational square root"};
    return GaussRat(Rat(1) / *r);
}

Cx conj_of(const Cx& l) { return std::conj(l); }
GaussRat conj_of(const GaussRat& l) { return l.conj(); }

Cx inv_conj_of(const Cx& l) { return 1.0 / std::conj(l); }
GaussRat inv_conj_of(const GaussRat& l) { return GaussRat(1L) / l.conj(); }

bool eig_close(const Cx& a, const Cx& b, double tol) { return std::abs(a - b) <= tol; }
bool eig_close(const GaussRat& a, const GaussRat& b, double) { return a == b; }

double eig_mag(const Cx& l) { return std::abs(l); }
double eig_mag(const GaussRat& l) { return std::sqrt(l.norm2().get_d()); }

bool upper_halfplane(const Cx& l) { return l.imag() > 0; }
bool upper_halfplane(const GaussRat& l) { return l.im > 0; }

template <class T>
Scalar to_scalar(const T& v) {
    return Scalar(v);
}

// --- per-coset-block extraction -------------------------------------------------

template <class T>
struct BlockSummand {
    CanonicalSummand s;
    MatT<T> cols;
};

template <class T>
MatT<T> signature_form(int p, int q) {
    MatT<T> h(p + q, p + q);
    for (int i = 0; i < p; ++i) h.at(i, i) = detail::Num<T>::one();
    for (int i = 0; i < q; ++i) h.at(p + i, p + i) = -detail::Num<T>::one();
    return h;
}

template <class T>
MatT<T> plain_chain_cols(const MatT<T>& nil, double radius, const TolerancePolicy& pol,
                         std::vector<int>* sizes_out) {
    std::vector<MatT<T>> kernels;
    std::vector<int> sizes = nilpotent_sizes(nil, radius, pol, &kernels);
    std::vector<detail::Chain<T>> chains =
        detail::build_chains(nil, kernels, detail::Num<T>::exact ? 0.0 : pol.structural);
    MatT<T> cols(nil.r, nil.r);
    int at = 0;
    std::vector<int> actual;
    for (const auto& ch : chains) {
        cols.set_block(0, at, ch.cols);
        at += ch.size;
        actual.push_back(ch.size);
    }
    if (at != nil.r) fail(Errc::IllConditioned, "plain chains did not fill the eigenspace");
    if (sizes_out) *sizes_out = actual;
    return cols;
}

template <class T>
std::vector<BlockSummand<T>> extract_block(const MatT<T>& b, int p, int q, const Scalar& e_scalar,
                                           bool isometric, const TolerancePolicy& pol) {
    constexpr bool exact = detail::Num<T>::exact;
    int r = b.r;
    MatT<T> h = signature_form<T>(p, q);
    double noise = exact ? 0.0 : 1e-11;
    double radius_floor = exact ? 0.0 : 1e3 * 2.2e-16 * std::max(b.norm_max(), 1.0);

    std::vector<Piece<T>> pieces = operator_pieces(b, pol);
    std::vector<bool> used(pieces.size(), false);
    std::vector<BlockSummand<T>> out;

    auto find_partner = [&](size_t self, const T& target) -> size_t {
        double tol = pol.cluster * std::max(1.0, eig_mag(target)) * 4 +
                     (exact ? 0.0 : pieces[self].radius * 4);
        for (size_t j = 0; j < pieces.size(); ++j) {
            if (j == self || used[j]) continue;
            if (eig_close(pieces[j].lambda, target, tol)) return j;
        }
        fail(Errc::PairingMismatch, "eigenvalue has no partner required by the operator kind");
    };

    for (size_t i = 0; i < pieces.size(); ++i) {
        if (used[i]) continue;
        Piece<T>& pc = pieces[i];

        bool diagonal_family =
            isometric ? eig_is_unimodular(pc.lambda, pol) : eig_is_real(pc.lambda, pol);
        if (diagonal_family) {
            used[i] = true;
            T lam = isometric ? snap_unit(pc.lambda) : snap_real(pc.lambda);
            MatT<T> hs = pc.basis.star(kConj) * h * pc.basis;

            MatT<T> nil;
            if (isometric) {
                // Moebius transform: N = (B - lam)(B + lam)^{-1} is H-skewadjoint
                // and nilpotent on the subspace; i N feeds the selfadjoint machinery.
                MatT<T> num = pc.restricted, den = pc.restricted;
                for (int k = 0; k < pc.mult; ++k) {
                    num.at(k, k) -= lam;
                    den.at(k, k) += lam;
                }
                MatT<T> nn = num * detail::inverse(den, exact ? 0.0 : pol.structural);
                T iu;
                if constexpr (exact) iu = GaussRat::i();
                else iu = Cx(0, 1);
                nil = nn.scaled(iu);
            } else {
                nil = pc.restricted;
                for (int k = 0; k < pc.mult; ++k) nil.at(k, k) -= lam;
            }

            std::vector<int> sizes = nilpotent_sizes<T>(nil, pc.radius + radius_floor, pol, nullptr);
            std::vector<detail::StructChain<T>> chains =
                detail::structured_nilpotent_chains(nil, hs, sizes, noise);
            for (detail::StructChain<T>& ch : chains) {
                int delta = pivot_sign(ch.pivot);
                T scale = inv_sqrt_abs(ch.pivot);
                MatT<T> cols = ch.cols;
                if (isometric) {
                    // diagonal twist turning the i N chains into lambda U_n shape
                    T iu;
                    if constexpr (exact) iu = GaussRat::i();
                    else iu = Cx(0, 1);
                    T fac = detail::Num<T>::one();
                    for (int j = 0; j < ch.size; ++j) {
                        if (j > 0) fac = fac * iu;
                        for (int row = 0; row < cols.r; ++row)
                            cols.at(row, j) = cols.at(row, j) * fac;
                    }
                }
                cols = cols.scaled(scale);

                BlockSummand<T> bs;
                bs.cols = pc.basis * cols;
                bs.s.n = ch.size;
                bs.s.lambda = to_scalar(lam);
                if (isometric) {
                    bs.s.family = Family::IsoUnimodular;
                    int tw = (ch.size % 2 == 1) ? delta : -delta;  // delta (-1)^{n+1}
                    bs.s.mu = tw == 1 ? e_scalar : e_scalar.neg();
                } else {
                    bs.s.family = Family::AdjReal;
                    bs.s.mu = delta == 1 ? e_scalar : e_scalar.neg();
                }
                out.push_back(std::move(bs));
            }
        } else {
            // paired families: lambda with conj(lambda) (selfadjoint) or with
            // 1/conj(lambda) (isometric)
            T target = isometric ? inv_conj_of(pc.lambda) : conj_of(pc.lambda);
            size_t j = find_partner(i, target);
            used[i] = used[j] = true;
            size_t rep = i, other = j;
            bool take_i = isometric ? (eig_mag(pieces[i].lambda) > 1.0)
                                    : upper_halfplane(pieces[i].lambda);
            if (!take_i) std::swap(rep, other);
            Piece<T>& pr = pieces[rep];
            Piece<T>& po = pieces[other];
            if (pr.mult != po.mult)
                fail(Errc::PairingMismatch, "paired eigenvalues with mismatched multiplicities");

            MatT<T> nil = pr.restricted;
            for (int k = 0; k < pr.mult; ++k) nil.at(k, k) -= pr.lambda;
            std::vector<int> sizes;
            MatT<T> xl = plain_chain_cols(nil, pr.radius + radius_floor, pol, &sizes);
            MatT<T> x = pr.basis * xl;
            MatT<T> g = x.star(kConj) * h * po.basis;
            MatT<T> z = po.basis * detail::inverse(g, exact ? 0.0 : pol.structural);

            int at = 0;
            for (int nb : sizes) {
                std::vector<int> idx;
                for (int k = 0; k < nb; ++k) idx.push_back(at + k);
                BlockSummand<T> bs;
                bs.cols = MatT<T>::hcat(x.cols_slice(idx), z.cols_slice(idx));
                bs.s.n = nb;
                bs.s.lambda = to_scalar(pr.lambda);
                bs.s.mu = e_scalar;
                bs.s.family = isometric ? Family::IsoHyperbolic : Family::AdjPaired;
                out.push_back(std::move(bs));
                at += nb;
            }
        }
    }
    (void)r;
    return out;
}

// --- engine orchestration -------------------------------------------------------

struct EngineResult {
    std::vector<CanonicalSummand> summands;
    std::optional<Mat> witness;
};

template <class T>
EngineResult run_engine(const Mat& a_eng, const Mat& f_eng, bool isometric,
                        const TolerancePolicy& pol, const CanonicalizeOptions& opts) {
    constexpr bool exact = detail::Num<T>::exact;
    CosetSplit split = split_cosets(a_eng, f_eng, pol, opts.seed);
    if (exact && split.downgraded) throw ExactnessLost{"coset scalings leave Q(i)"};

    struct Group {
        CanonicalSummand s;
        Mat cols;
    };
    std::vector<Group> groups;
    for (const CosetBlock& blk : split.blocks) {
        int sz = blk.p + blk.q;
        const Mat& ab = blk.a_block;
        Mat s_slice = split.s.block(0, blk.offset, split.dim, sz);
        std::vector<BlockSummand<T>> parts;
        if constexpr (exact)
            parts = extract_block<GaussRat>(ab.eref(), blk.p, blk.q, blk.e, isometric, pol);
        else
            parts = extract_block<Cx>(ab.fref(), blk.p, blk.q, blk.e, isometric, pol);
        for (BlockSummand<T>& bs : parts) {
            Mat local(s_slice.field(), bs.cols);
            groups.push_back({normalize(bs.s, pol), s_slice * local});
        }
    }

    std::stable_sort(groups.begin(), groups.end(),
                     [](const Group& x, const Group& y) { return summand_less(x.s, y.s); });

    EngineResult res;
    int total = 0;
    for (const Group& g : groups) total += g.s.dim();
    if (total != split.dim) fail(Errc::PairingMismatch, "summand dimensions do not add up");

    for (const Group& g : groups) res.summands.push_back(g.s);
    if (opts.want_witness && !groups.empty()) {
        Mat w = groups[0].cols;
        for (size_t k = 1; k < groups.size(); ++k) w = Mat::hcat(w, groups[k].cols);
        res.witness = std::move(w);
    }
    return res;
}

// Refine S against A S = S A_c and S* F S = F_c by linearized least squares.
// Unknowns are the real and imaginary parts of the update; the conjugation in
// the form equation makes the map only real-linear.
void polish_witness(const MatT<Cx>& a, const MatT<Cx>& f, const MatT<Cx>& ac, const MatT<Cx>& fc,
                    MatT<Cx>& s) {
    int n = a.r;
    if (n == 0) return;
    double scale = std::max({a.norm_max(), f.norm_max(), 1.0});
    auto residual_of = [&](const MatT<Cx>& cand) {
        MatT<Cx> r1 = a * cand - cand * ac;
        MatT<Cx> r2 = cand.star(kConj) * f * cand - fc;
        return std::max(r1.norm_max(), r2.norm_max());
    };
    MatT<Cx> best = s;
    double best_resid = residual_of(s);
    for (int iter = 0; iter < 3; ++iter) {
        MatT<Cx> r1 = a * s - s * ac;
        MatT<Cx> r2 = s.star(kConj) * f * s - fc;
        double resid = std::max(r1.norm_max(), r2.norm_max());
        if (resid <= 1e-13 * scale) break;

        MatT<Cx> sf = s.star(kConj) * f;
        MatT<Cx> fs = f * s;
        int un = 2 * n * n, eq = 4 * n * n;
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(eq, un);
        Eigen::VectorXd rhs(eq);
        auto put = [&](int col, const MatT<Cx>& t1, const MatT<Cx>& t2) {
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    int u = i * n + j;
                    m(2 * u, col) = t1.at(i, j).real();
                    m(2 * u + 1, col) = t1.at(i, j).imag();
                    m(2 * n * n + 2 * u, col) = t2.at(i, j).real();
                    m(2 * n * n + 2 * u + 1, col) = t2.at(i, j).imag();
                }
        };
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l)
                for (int part = 0; part < 2; ++part) {
                    MatT<Cx> delta(n, n);
                    delta.at(k, l) = part == 0 ? Cx(1, 0) : Cx(0, 1);
                    MatT<Cx> t1 = a * delta - delta * ac;
                    MatT<Cx> t2 = sf * delta + delta.star(kConj) * fs;
                    put((k * n + l) * 2 + part, t1, t2);
                }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                int u = i * n + j;
                rhs(2 * u) = -r1.at(i, j).real();
                rhs(2 * u + 1) = -r1.at(i, j).imag();
                rhs(2 * n * n + 2 * u) = -r2.at(i, j).real();
                rhs(2 * n * n + 2 * u + 1) = -r2.at(i, j).imag();
            }
        // minimal-norm least squares; directions along the automorphism
        // algebra of the canonical pair are cut off by the threshold
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
        svd.setThreshold(1e-7);
        Eigen::VectorXd x = svd.solve(rhs);
        if (!x.allFinite()) break;
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l)
                s.at(k, l) += Cx(x((k * n + l) * 2), x((k * n + l) * 2 + 1));
        double now = residual_of(s);
        if (now < best_resid) {
            best_resid = now;
            best = s;
        } else {
            break;  // step did not help; keep the best iterate
        }
    }
    s = best;
}

}  // namespace

CanonicalForm canonicalize(const Mat& a, const Mat& f, OperatorKind kind,
                           const TolerancePolicy& pol, const CanonicalizeOptions& opts) {
    if (!a.square() || !f.square() || a.rows() != f.rows())
        fail(Errc::DimensionMismatch, "operator and form must be square of equal size");
    if (!f.field().conjugating())
        fail(Errc::NotApplicable, "canonicalization runs over a conjugating complex field");

    StructureReport rep = classify(a, f, pol);
    if (!rep.nondegenerate) fail(Errc::SingularForm, "degenerate form");
    bool kind_ok = kind == OperatorKind::Isometric    ? rep.isometric
                   : kind == OperatorKind::Selfadjoint ? rep.selfadjoint
                                                       : rep.skewadjoint;
    if (!kind_ok) fail(Errc::NotApplicable, "operator does not have the requested kind");

    CanonicalForm cf;
    cf.kind = kind;
    Mat a_eng = a, f_eng = f;
    if (kind == OperatorKind::Skewadjoint) {
        // i A is selfadjoint for the same form whenever A is skewadjoint; the form
        // stays untouched so coset labels are those of the input
        Scalar i_unit = f.is_exact() ? Scalar(GaussRat::i()) : Scalar(Cx(0, 1));
        a_eng = a.scaled(i_unit);
        cf.note.op_scaled_by_i = true;
    }
    bool isometric = kind == OperatorKind::Isometric;

    EngineResult er;
    bool ran_exact = false;
    if (f_eng.is_exact()) {
        try {
            er = run_engine<GaussRat>(a_eng, f_eng, isometric, pol, opts);
            ran_exact = true;
            cf.field = f_eng.field();
        } catch (const ExactnessLost& el) {
            cf.warnings.push_back("exact pipeline downgraded to floats: " + el.reason);
        }
    }
    if (!ran_exact) {
        Mat af = a_eng.to_float(), ff = f_eng.to_float();
        er = run_engine<Cx>(af, ff, isometric, pol, opts);
        cf.field = ff.field();
        cf.downgraded = f_eng.is_exact();
    }
    cf.exact_mode = ran_exact;
    cf.summands = std::move(er.summands);
    cf.witness = std::move(er.witness);

    if (cf.witness) {
        PairTransport target = materialize(cf);
        Mat a_chk = ran_exact ? a : a.to_float();
        Mat f_chk = ran_exact ? f : f.to_float();
        if (!ran_exact) {
            // Gauss-Newton polish against both canonical equations; the chain
            // extraction loses accuracy to Jordan-ring noise but the canonical
            // parameters are much better than the basis, so the refined system
            // converges onto the witness manifold.
            MatT<Cx> s_pol = cf.witness->fref();
            polish_witness(a_chk.fref(), f_chk.fref(), target.a.fref(), target.f.fref(), s_pol);
            cf.witness = Mat(cf.field, std::move(s_pol));
        }
        PairTransport moved = transport({a_chk, f_chk}, *cf.witness, pol);
        double tol = ran_exact ? 0.0 : 64 * pol.structural;
        if (!moved.a.equals(target.a, tol) || !moved.f.equals(target.f, tol))
            fail(Errc::IllConditioned, "canonical witness failed verification");
    }
    return cf;
}

PairTransport materialize(const CanonicalForm& cf) {
    if (cf.summands.empty()) fail(Errc::DimensionMismatch, "empty canonical form");
    std::vector<Mat> as, fs;
    for (const CanonicalSummand& s : cf.summands) {
        PairTransport p = make_summand(s, cf.field);
        as.push_back(std::move(p.a));
        fs.push_back(std::move(p.f));
    }
    PairTransport out{direct_sum(as), direct_sum(fs)};
    Scalar minus_i = cf.field.exact() ? Scalar(GaussRat(Rat(0), Rat(-1))) : Scalar(Cx(0, -1));
    if (cf.note.op_scaled_by_i) out.a = out.a.scaled(minus_i);
    if (cf.note.form_scaled_by_i) out.f = out.f.scaled(minus_i);
    return out;
}

IsoResult isomorphic_pairs(const Mat& a1, const Mat& f1, const Mat& a2, const Mat& f2,
                           OperatorKind kind, const TolerancePolicy& pol,
                           const CanonicalizeOptions& opts) {
    CanonicalForm c1 = canonicalize(a1, f1, kind, pol, opts);
    CanonicalForm c2 = canonicalize(a2, f2, kind, pol, opts);
    bool exact_cmp = c1.exact_mode && c2.exact_mode;
    IsoResult out;
    out.isomorphic = summand_multisets_equal(c1.summands, c2.summands, exact_cmp, pol);
    if (!out.isomorphic || !opts.want_witness || !c1.witness || !c2.witness) return out;

    Mat t = c1.witness->is_exact() == c2.witness->is_exact()
                ? *c1.witness * inverse(*c2.witness, pol)
                : c1.witness->to_float() * inverse(c2.witness->to_float(), pol);
    Mat a1c = t.is_exact() ? a1 : a1.to_float();
    Mat f1c = t.is_exact() ? f1 : f1.to_float();
    PairTransport moved = transport({a1c, f1c}, t, pol);
    double tol = exact_cmp ? 0.0 : std::max(16 * pol.cluster, 64 * pol.structural);
    Mat a2c = t.is_exact() ? a2 : a2.to_float();
    Mat f2c = t.is_exact() ? f2 : f2.to_float();
    if (moved.a.equals(a2c, tol) && moved.f.equals(f2c, tol)) out.witness = std::move(t);
    return out;
}

GroupFactors group_factors(const Mat& f, GroupTarget target, const TolerancePolicy& pol,
                           std::uint64_t seed) {
    CosetSplit split = split_cosets(Mat::identity(f.field(), f.rows()), f, pol, seed);
    GroupFactors out;
    out.target = target;
    std::string rendering = target == GroupTarget::Group ? "U(D) = " : "S(D) = ";
    bool first = true;
    for (const CosetBlock& blk : split.blocks) {
        out.factors.push_back({blk.e, blk.p, blk.q});
        if (!first) rendering += " x ";
        first = false;
        std::string pq = std::to_string(blk.p) + "," + std::to_string(blk.q);
        rendering += target == GroupTarget::Group ? "U(" + pq + ")" : "S(I_{" + pq + "})";
    }
    out.rendering = std::move(rendering);
    return out;
}

std::vector<SignEntry> sign_characteristic(const Mat& b, const Mat& h, const Scalar& lambda,
                                           const TolerancePolicy& pol) {
    if (!b.square() || !h.square() || b.rows() != h.rows())
        fail(Errc::DimensionMismatch, "operator and form must be square of equal size");
    StructureReport rep = classify(b, h, pol);
    if (rep.form_kind != FormKind::Hermitian || !rep.nondegenerate)
        fail(Errc::NotSelfadjoint, "form must be Hermitian nondegenerate");
    if (!rep.selfadjoint) fail(Errc::NotSelfadjoint, "operator is not selfadjoint for the form");
    if (!lambda.is_real(pol.cluster)) fail(Errc::NotEigenvalue, "eigenvalue must be real");

    int n = b.rows();
    Mat shifted = b;
    for (int i = 0; i < n; ++i) shifted.set(i, i, shifted.at(i, i) - lambda);
    if (rank(shifted, pol) == n) fail(Errc::NotEigenvalue, "not an eigenvalue under the policy");

    // kernels of powers
    std::vector<Mat> kernels{Mat(b.field(), n, 0)};
    Mat pw = Mat::identity(b.field(), n);
    std::vector<int> dims{0};
    for (int k = 1; k <= n; ++k) {
        pw = shifted * pw;
        Mat kb = b.is_exact()
                     ? Mat(b.field(), detail::kernel_basis(pw.eref(), 0.0))
                     : Mat(b.field(), detail::nullspace_svd(pw.fref(),
                                                            pol.structural *
                                                                std::max(pw.norm_max(), 1.0)));
        if (kb.cols() == dims.back()) break;
        kernels.push_back(kb);
        dims.push_back(kb.cols());
    }

    int sat = int(dims.size()) - 1;
    std::vector<SignEntry> out;
    Mat hn = h;  // H (B - lambda)^{k-1} accumulates below
    Mat power = Mat::identity(b.field(), n);
    for (int k = 1; k <= sat; ++k) {
        if (k > 1) power = power * shifted;
        int wk = dims[size_t(k)] - dims[size_t(k - 1)];
        int wk1 = k + 1 <= sat ? dims[size_t(k + 1)] - dims[size_t(k)] : 0;
        int count = wk - wk1;
        if (count <= 0) continue;
        // compress H(x, N^{k-1} y) onto ker N^k modulo ker N^{k-1} + N ker N^{k+1}
        const Mat& upper = k + 1 <= sat ? kernels[size_t(k + 1)] : kernels[size_t(sat)];
        Mat fixed = Mat::hcat(kernels[size_t(k - 1)], shifted * upper);
        std::vector<int> picks;
        if (b.is_exact())
            picks = detail::complete_independent(fixed.eref(), kernels[size_t(k)].eref(), 0.0, count);
        else
            picks = detail::complete_independent(fixed.fref(), kernels[size_t(k)].fref(),
                                                 pol.structural, count);
        if (int(picks.size()) != count)
            fail(Errc::IllConditioned, "quotient completion failed under the policy");
        Mat reps(b.field(), n, count);
        for (int c = 0; c < count; ++c)
            reps.set_block(0, c, kernels[size_t(k)].block(0, picks[size_t(c)], n, 1));

        Mat q = reps.star() * (hn * (power * reps));
        // Hermitian by construction; symmetrize floats to scrub roundoff
        int pos = 0, neg = 0;
        if (b.is_exact()) {
            auto [pp, qq, zz] = detail::exact_inertia(q.eref());
            if (zz != 0) fail(Errc::IllConditioned, "compressed sign form is degenerate");
            pos = pp;
            neg = qq;
        } else {
            MatT<Cx> sym = q.fref();
            MatT<Cx> adj = sym.star(kConj);
            sym = (sym + adj).scaled(Cx(0.5, 0));
            detail::HermEig he = detail::hermitian_eig(sym);
            double scale = 0;
            for (double v : he.vals) scale = std::max(scale, std::fabs(v));
            for (double v : he.vals) {
                if (std::fabs(v) <= pol.structural * std::max(scale, 1e-300))
                    fail(Errc::IllConditioned, "compressed sign form is numerically degenerate");
                (v > 0 ? pos : neg)++;
            }
        }
        if (pos + neg != count) fail(Errc::IllConditioned, "sign count mismatch");
        for (int c = 0; c < pos; ++c) out.push_back({k, 1});
        for (int c = 0; c < neg; ++c) out.push_back({k, -1});
    }
    return out;
}

}  // namespace iif
