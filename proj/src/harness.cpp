#include "iif/harness.hpp"

#include <random>
#include <sstream>

#include "iif/detail/eigen_bridge.hpp"

namespace iif {

namespace {

Scalar unit_phase(FieldSpec f, int quarter) {
    // powers of i: exact unit grid available in every conjugating field
    if (f.exact()) {
        GaussRat v(1L);
        for (int k = 0; k < (quarter % 4 + 4) % 4; ++k) v = v * GaussRat::i();
        return Scalar(v);
    }
    return Scalar(std::polar(1.0, (quarter % 4) * M_PI / 2));
}

Mat elementary(FieldSpec f, int n, std::mt19937_64& rng, bool exact) {
    std::uniform_int_distribution<int> pick(0, n - 1);
    Mat e = Mat::identity(f, n);
    int i = pick(rng), j = pick(rng);
    if (i == j) {
        // unimodular diagonal twist keeps exact transports in Z[i]
        std::uniform_int_distribution<int> ph(0, 3);
        e.set(i, i, unit_phase(f, ph(rng)));
        return e;
    }
    if (exact) {
        std::uniform_int_distribution<int> mult(-2, 2);
        e.set(i, j, Scalar(long(mult(rng))));
    } else {
        std::uniform_real_distribution<double> mult(-0.8, 0.8);
        e.set(i, j, Scalar(Cx(mult(rng), mult(rng))));
    }
    return e;
}

double condition_estimate(const Mat& m) {
    std::vector<double> sv = detail::singular_values(m.to_float().fref());
    return sv.front() / std::max(sv.back(), 1e-300);
}

// --- independent multiply/solve path used by brute_verify -------------------

Mat naive_mul(const Mat& x, const Mat& y) {
    Mat out(x.field(), x.rows(), y.cols());
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < y.cols(); ++j) {
            Scalar acc = out.at(i, j);
            for (int k = 0; k < x.cols(); ++k) acc = acc + x.at(i, k) * y.at(k, j);
            out.set(i, j, acc);
        }
    return out;
}

Mat naive_star(const Mat& m) {
    Mat out(m.field(), m.cols(), m.rows());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) out.set(j, i, conj(m.at(i, j), m.field()));
    return out;
}

// Gauss-Jordan with partial pivoting, deliberately distinct from the LU in
// the linear algebra module.
Mat gauss_jordan_inverse(const Mat& m, bool* ok) {
    int n = m.rows();
    Mat work = m;
    Mat inv = Mat::identity(m.field(), n);
    *ok = true;
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        double best = 0;
        for (int i = col; i < n; ++i) {
            double mag = std::abs(work.at(i, col).to_cx());
            if (mag > best) { best = mag; piv = i; }
        }
        if (piv < 0 || work.at(piv, col).is_zero() ||
            (!m.is_exact() && best < 1e-280)) {
            *ok = false;
            return inv;
        }
        if (piv != col)
            for (int j = 0; j < n; ++j) {
                Scalar tw = work.at(piv, j), ti = inv.at(piv, j);
                work.set(piv, j, work.at(col, j));
                inv.set(piv, j, inv.at(col, j));
                work.set(col, j, tw);
                inv.set(col, j, ti);
            }
        Scalar d = work.at(col, col);
        for (int j = 0; j < n; ++j) {
            work.set(col, j, work.at(col, j) / d);
            inv.set(col, j, inv.at(col, j) / d);
        }
        for (int i = 0; i < n; ++i) {
            if (i == col || work.at(i, col).is_zero()) continue;
            Scalar mult = work.at(i, col);
            for (int j = 0; j < n; ++j) {
                work.set(i, j, work.at(i, j) - mult * work.at(col, j));
                inv.set(i, j, inv.at(i, j) - mult * inv.at(col, j));
            }
        }
    }
    return inv;
}

bool matrices_close(const Mat& x, const Mat& y, bool exact, double tol, std::string* diff,
                    const char* what) {
    if (exact ? x.equals(y, 0.0) : x.equals(y, tol)) return true;
    if (diff) {
        std::ostringstream os;
        os << what << " mismatch, max deviation "
           << (x.to_float() - y.to_float()).norm_max();
        *diff = os.str();
    }
    return false;
}

}  // namespace

Mat random_conjugator(FieldSpec field, int n, std::uint64_t seed, double condition_cap) {
    bool exact = field.exact();
    for (int attempt = 0; attempt < 64; ++attempt) {
        std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + attempt + 1);
        int ops = std::max(2, 2 * n - 2 * attempt / 8);
        Mat s = Mat::identity(field, n);
        for (int k = 0; k < ops; ++k) s = s * elementary(field, n, rng, exact);
        if (!nonsingular(s)) continue;
        if (exact || condition_estimate(s) <= condition_cap) return s;
    }
    fail(Errc::IllConditioned, "could not draw a conjugator under the condition cap");
}

Instance make_instance(const InstanceRecipe& recipe) {
    if (recipe.summands.empty()) fail(Errc::ParameterOutOfDomain, "empty instance recipe");
    OperatorKind kind = recipe.summands.front().op_kind();
    std::vector<Mat> as, fs;
    for (const CanonicalSummand& s : recipe.summands) {
        if (s.op_kind() != kind)
            fail(Errc::ParameterOutOfDomain, "recipe mixes operator kinds");
        PairTransport p = make_summand(s, recipe.field);
        as.push_back(std::move(p.a));
        fs.push_back(std::move(p.f));
    }
    Instance inst;
    inst.a = direct_sum(as);
    inst.f = direct_sum(fs);
    if (recipe.skewadjoint_picture) {
        if (kind != OperatorKind::Selfadjoint)
            fail(Errc::ParameterOutOfDomain, "skewadjoint picture starts from selfadjoint summands");
        Scalar minus_i = recipe.field.exact() ? Scalar(GaussRat(Rat(0), Rat(-1))) : Scalar(Cx(0, -1));
        inst.a = inst.a.scaled(minus_i);
        kind = OperatorKind::Skewadjoint;
    }
    inst.kind = kind;

    int n = inst.a.rows();
    inst.s = recipe.conjugate ? random_conjugator(recipe.field, n, recipe.seed, recipe.condition_cap)
                              : Mat::identity(recipe.field, n);
    PairTransport moved = transport({inst.a, inst.f}, inst.s);
    inst.a = moved.a;
    inst.f = moved.f;

    inst.ground_truth.field = recipe.field;
    inst.ground_truth.kind = kind;
    inst.ground_truth.exact_mode = recipe.field.exact();
    inst.ground_truth.note.op_scaled_by_i = recipe.skewadjoint_picture;
    for (const CanonicalSummand& s : recipe.summands)
        inst.ground_truth.summands.push_back(normalize(s));
    std::sort(inst.ground_truth.summands.begin(), inst.ground_truth.summands.end(), summand_less);
    return inst;
}

bool brute_verify(const Mat& a, const Mat& f, const CanonicalForm& cf, const TolerancePolicy& pol,
                  std::string* diff) {
    if (!cf.witness) {
        if (diff) *diff = "canonical form carries no witness";
        return false;
    }
    bool exact = a.is_exact() && cf.witness->is_exact();
    Mat aa = exact ? a : a.to_float();
    Mat ff = exact ? f : f.to_float();
    Mat s = exact ? *cf.witness : cf.witness->to_float();

    bool ok = false;
    Mat sinv = gauss_jordan_inverse(s, &ok);
    if (!ok) {
        if (diff) *diff = "witness is singular";
        return false;
    }

    PairTransport target = materialize(cf);
    Mat ta = exact ? target.a : target.a.to_float();
    Mat tf = exact ? target.f : target.f.to_float();

    Mat lhs_a = naive_mul(naive_mul(sinv, aa), s);
    Mat lhs_f = naive_mul(naive_mul(naive_star(s), ff), s);
    if (!matrices_close(lhs_a, ta, exact, pol.structural, diff, "operator transport")) return false;
    if (!matrices_close(lhs_f, tf, exact, pol.structural, diff, "form transport")) return false;

    // every summand invariant re-checked by direct multiplication
    for (const CanonicalSummand& s_sum : cf.summands) {
        PairTransport p = make_summand(s_sum, cf.field);
        Mat fa = naive_mul(p.f, p.a);
        Mat asf = naive_mul(naive_star(p.a), p.f);
        double tol = cf.field.exact() ? 0.0 : 1e-12;
        bool good = false;
        switch (s_sum.op_kind()) {
            case OperatorKind::Isometric:
                good = naive_mul(naive_star(p.a), naive_mul(p.f, p.a)).equals(p.f, tol);
                break;
            case OperatorKind::Selfadjoint: good = fa.equals(asf, tol); break;
            case OperatorKind::Skewadjoint: good = fa.equals(-asf, tol); break;
        }
        if (!good) {
            if (diff) *diff = "summand " + family_name(s_sum.family) + " failed its invariant";
            return false;
        }
    }
    return true;
}

namespace {

struct ParamDraw {
    std::mt19937_64 rng;
    explicit ParamDraw(std::uint64_t seed) : rng(seed * 0x2545f4914f6cdd1dULL + 17) {}

    int roll(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

    // eigenvalue grids are well separated so float clustering is unambiguous
    Scalar real_lambda(FieldSpec f) {
        long v = roll(-3, 3);
        return f.exact() ? Scalar(GaussRat(v)) : Scalar(Cx(double(v), 0));
    }
    Scalar complex_lambda(FieldSpec f) {
        long re = roll(-2, 2), im = roll(1, 2);
        return f.exact() ? Scalar::gaussian(Rat(re), Rat(im)) : Scalar(Cx(double(re), double(im)));
    }
    Scalar unimodular_lambda(FieldSpec f) {
        if (f.exact()) {
            // exact points on the unit circle: powers of i and (3+4i)/5-type
            switch (roll(0, 4)) {
                case 0: return Scalar(GaussRat(1L));
                case 1: return Scalar(GaussRat::i());
                case 2: return Scalar(GaussRat(-1L));
                case 3: return Scalar::gaussian(Rat(3, 5), Rat(4, 5));
                default: return Scalar::gaussian(Rat(-3, 5), Rat(4, 5));
            }
        }
        return Scalar(std::polar(1.0, roll(0, 11) * M_PI / 6));
    }
    Scalar hyperbolic_lambda(FieldSpec f) {
        long mag = roll(0, 1) ? 2 : 3;
        if (f.exact()) {
            GaussRat base = roll(0, 1) ? GaussRat(mag) : GaussRat(Rat(0), Rat(mag));
            return Scalar(base);
        }
        return Scalar(std::polar(double(mag), roll(0, 7) * M_PI / 4));
    }
    Scalar unit_mu(FieldSpec f) { return unit_phase(f, roll(0, 3)); }
    int sign() { return roll(0, 1) ? 1 : -1; }
};

}  // namespace

InstanceRecipe random_recipe(OperatorKind kind, int max_dim, std::uint64_t seed, FieldSpec field) {
    InstanceRecipe recipe;
    recipe.field = field;
    recipe.seed = seed;
    recipe.skewadjoint_picture = kind == OperatorKind::Skewadjoint;
    ParamDraw draw(seed);

    // Floating instances cap single blocks at size 2: larger Jordan blocks
    // scatter their floating eigenvalues wider than the default clustering
    // tolerance. Exact instances recover via exact verification and go to 3.
    int max_block = field.exact() ? 3 : 2;
    int dim = 0;
    while (dim < std::max(2, max_dim - 2)) {
        CanonicalSummand s;
        int room = max_dim - dim;
        if (kind == OperatorKind::Isometric) {
            bool paired = room >= 2 && draw.roll(0, 2) == 0;
            if (paired) {
                s.family = Family::IsoHyperbolic;
                s.n = std::min(draw.roll(1, 2), room / 2);
                s.lambda = draw.hyperbolic_lambda(field);
            } else {
                s.family = Family::IsoUnimodular;
                s.n = std::min(draw.roll(1, max_block), room);
                s.lambda = draw.unimodular_lambda(field);
            }
            s.mu = draw.unit_mu(field);
        } else {
            bool paired = room >= 2 && draw.roll(0, 2) == 0;
            if (paired) {
                s.family = Family::AdjPaired;
                s.n = std::min(draw.roll(1, 2), room / 2);
                s.lambda = draw.complex_lambda(field);
            } else {
                s.family = Family::AdjReal;
                s.n = std::min(draw.roll(1, max_block), room);
                s.lambda = draw.real_lambda(field);
            }
            s.mu = draw.unit_mu(field);
        }
        if (s.n < 1) break;
        dim += s.dim();
        recipe.summands.push_back(std::move(s));
    }
    return recipe;
}

InstanceRecipe random_family_recipe(Family family, int max_dim, std::uint64_t seed,
                                    FieldSpec field) {
    InstanceRecipe recipe;
    recipe.field = field;
    recipe.seed = seed;
    ParamDraw draw(seed);
    CanonicalSummand s;
    s.family = family;
    switch (family) {
        case Family::IsoUnimodular:
            s.n = std::min(field.exact() ? 3 : 2, std::max(1, max_dim));
            s.lambda = draw.unimodular_lambda(field);
            s.mu = draw.unit_mu(field);
            break;
        case Family::IsoHyperbolic:
            s.n = std::max(1, max_dim / 2);
            s.lambda = draw.hyperbolic_lambda(field);
            s.mu = draw.unit_mu(field);
            break;
        case Family::AdjReal:
            s.n = std::min(field.exact() ? 3 : 2, std::max(1, max_dim));
            s.lambda = draw.real_lambda(field);
            s.mu = draw.unit_mu(field);
            break;
        case Family::AdjPaired:
            s.n = std::max(1, max_dim / 2);
            s.lambda = draw.complex_lambda(field);
            s.mu = draw.unit_mu(field);
            break;
        default:
            fail(Errc::ParameterOutOfDomain,
                 "random instances cover the complex-conjugation families only");
    }
    recipe.summands.push_back(std::move(s));
    return recipe;
}

}  // namespace iif
