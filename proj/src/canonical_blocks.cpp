#include <algorithm>
#include <cmath>

#include "iif/canonical.hpp"
#include "iif/frobenius.hpp"

namespace iif {

namespace {

Scalar one_of(FieldSpec f) { return f.exact() ? Scalar(GaussRat(1L)) : Scalar(Cx(1, 0)); }
Scalar int_of(FieldSpec f, long v) {
    return f.exact() ? Scalar(GaussRat(v)) : Scalar(Cx(double(v), 0));
}
Scalar i_of(FieldSpec f) { return f.exact() ? Scalar(GaussRat::i()) : Scalar(Cx(0, 1)); }

bool is_unit_modulus(const Scalar& x, const TolerancePolicy& pol) {
    if (x.exact()) return x.exact_value().norm2() == 1;
    return std::fabs(std::abs(x.to_cx()) - 1.0) <= pol.cluster;
}

bool scalar_real(const Scalar& x, const TolerancePolicy& pol) {
    return x.exact() ? x.exact_value().is_real() : std::fabs(x.to_cx().imag()) <= pol.cluster;
}

// phase in [0, pi): im > 0, or im == 0 and re > 0
bool phase_in_upper_window(const Scalar& x, const TolerancePolicy& pol) {
    if (x.exact()) {
        const GaussRat& g = x.exact_value();
        return g.im > 0 || (g.im == 0 && g.re > 0);
    }
    double ph = std::arg(x.to_cx());
    return ph >= -pol.cluster / 2 && ph < M_PI - pol.cluster / 2;
}

int require_sign(int v, const char* what) {
    if (v != 1 && v != -1) fail(Errc::ParameterOutOfDomain, std::string(what) + " must be +1 or -1");
    return v;
}

// nilpotent-block existence: eps = 1 for n odd, eps = zeta for n even
bool zero_single_allowed(int n, int eps, int zeta) {
    return n % 2 == 1 ? eps == 1 : eps == zeta;
}

}  // namespace

std::string family_name(Family f) {
    switch (f) {
        case Family::IsoUnimodular: return "iso_unimodular";
        case Family::IsoHyperbolic: return "iso_hyperbolic";
        case Family::AdjReal: return "adj_real";
        case Family::AdjPaired: return "adj_paired";
        case Family::GenA: return "gen_a";
        case Family::GenB: return "gen_b";
        case Family::GenC1: return "gen_c1";
        case Family::GenC2: return "gen_c2";
    }
    return "?";
}

Family family_from_name(const std::string& s) {
    for (Family f : {Family::IsoUnimodular, Family::IsoHyperbolic, Family::AdjReal,
                     Family::AdjPaired, Family::GenA, Family::GenB, Family::GenC1, Family::GenC2})
        if (family_name(f) == s) return f;
    fail(Errc::ParseError, "unknown family: " + s);
}

std::string kind_name(OperatorKind k) {
    switch (k) {
        case OperatorKind::Isometric: return "isometric";
        case OperatorKind::Selfadjoint: return "selfadjoint";
        case OperatorKind::Skewadjoint: return "skewadjoint";
    }
    return "?";
}

OperatorKind kind_from_name(const std::string& s) {
    for (OperatorKind k : {OperatorKind::Isometric, OperatorKind::Selfadjoint, OperatorKind::Skewadjoint})
        if (kind_name(k) == s) return k;
    fail(Errc::ParseError, "unknown operator kind: " + s);
}

int CanonicalSummand::dim() const {
    switch (family) {
        case Family::IsoUnimodular:
        case Family::AdjReal: return n;
        case Family::IsoHyperbolic:
        case Family::AdjPaired: return 2 * n;
        case Family::GenA:
        case Family::GenB:
        case Family::GenC1: return variant == BlockVariant::Single ? n : 2 * n;
        case Family::GenC2: return variant == BlockVariant::Single ? 2 * n : 4 * n;
    }
    return n;
}

OperatorKind CanonicalSummand::op_kind() const {
    switch (family) {
        case Family::IsoUnimodular:
        case Family::IsoHyperbolic: return OperatorKind::Isometric;
        case Family::AdjReal:
        case Family::AdjPaired:
        case Family::GenB: return OperatorKind::Selfadjoint;
        default: return zeta == 1 ? OperatorKind::Selfadjoint : OperatorKind::Skewadjoint;
    }
}

// --- block zoo ---------------------------------------------------------------

Mat jordan_block(FieldSpec field, int n, const Scalar& lambda) {
    Mat j(field, n, n);
    for (int i = 0; i < n; ++i) {
        j.set(i, i, lambda);
        if (i + 1 < n) j.set(i, i + 1, one_of(field));
    }
    return j;
}

Mat u_triangular(FieldSpec field, int n) {
    Mat u(field, n, n);
    for (int i = 0; i < n; ++i) {
        u.set(i, i, one_of(field));
        for (int j = i + 1; j < n; ++j) u.set(i, j, int_of(field, 2));
    }
    return u;
}

Mat w_alternating(FieldSpec field, int n) {
    Mat w(field, n, n);
    for (int k = 0; k < n; ++k)  // read off the anti-diagonal from the bottom left
        w.set(n - 1 - k, k, int_of(field, k % 2 == 0 ? 1 : -1));
    return w;
}

Mat k_alternating(FieldSpec field, int n, int eps) {
    require_sign(eps, "eps");
    int k_id_sign = n % 2 == 1 ? 1 : -1;  // eps = (-1)^{n+1} selects K = I_2
    bool k_is_identity = eps == k_id_sign;
    Mat m(field, 2 * n, 2 * n);
    for (int blk = 0; blk < n; ++blk) {
        int br = n - 1 - blk, bc = blk;  // anti-diagonal of 2x2 blocks
        long sgn = bc % 2 == 0 ? 1 : -1;
        if (k_is_identity) {
            m.set(2 * br, 2 * bc, int_of(field, sgn));
            m.set(2 * br + 1, 2 * bc + 1, int_of(field, sgn));
        } else {
            m.set(2 * br, 2 * bc + 1, int_of(field, -sgn));
            m.set(2 * br + 1, 2 * bc, int_of(field, sgn));
        }
    }
    return m;
}

Mat realified_jordan(FieldSpec field, int n, const Scalar& a, const Scalar& b) {
    Mat m(field, 2 * n, 2 * n);
    for (int blk = 0; blk < n; ++blk) {
        m.set(2 * blk, 2 * blk, a);
        m.set(2 * blk, 2 * blk + 1, b.neg());
        m.set(2 * blk + 1, 2 * blk, b);
        m.set(2 * blk + 1, 2 * blk + 1, a);
        if (blk + 1 < n) {
            m.set(2 * blk, 2 * blk + 2, one_of(field));
            m.set(2 * blk + 1, 2 * blk + 3, one_of(field));
        }
    }
    return m;
}

Mat hyperbolic_form(FieldSpec field, int n, const Scalar& top_scale) {
    Mat f(field, 2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
        f.set(i, n + i, top_scale);
        f.set(n + i, i, one_of(field));
    }
    return f;
}

// --- make_summand ------------------------------------------------------------

namespace {

void verify_summand_pair(const CanonicalSummand& s, const PairTransport& p, FieldSpec field) {
    TolerancePolicy tight;
    tight.structural = field.exact() ? 0.0 : 1e-12;
    StructureReport rep = classify(p.a, p.f, tight);
    if (!rep.nondegenerate) fail(Errc::ParameterOutOfDomain, "canonical form matrix is singular");
    bool ok = false;
    switch (s.op_kind()) {
        case OperatorKind::Isometric: ok = rep.isometric; break;
        case OperatorKind::Selfadjoint: ok = rep.selfadjoint; break;
        case OperatorKind::Skewadjoint: ok = rep.skewadjoint; break;
    }
    if (!ok) fail(Errc::ParameterOutOfDomain, "materialized pair fails its declared kind");
    if (s.family == Family::GenA || s.family == Family::GenC1 || s.family == Family::GenC2) {
        FormKind want = s.eps == 1 ? FormKind::Hermitian : FormKind::SkewHermitian;
        if (rep.form_kind != want)
            fail(Errc::ParameterOutOfDomain, "materialized form has the wrong eps symmetry");
    }
}

PairTransport paired_block(FieldSpec field, const Mat& phi, int eps, int zeta) {
    int n = phi.rows();
    Mat a(field, 2 * n, 2 * n);
    a.set_block(0, 0, phi);
    Mat lower = phi.star();
    if (zeta == -1) lower = -lower;
    a.set_block(n, n, lower);
    return {std::move(a), hyperbolic_form(field, n, int_of(field, eps))};
}

}  // namespace

PairTransport make_summand(const CanonicalSummand& s, FieldSpec field) {
    field.validate();
    TolerancePolicy pol;
    if (s.n < 1) fail(Errc::ParameterOutOfDomain, "block size must be positive");
    const bool conj_field = field.conjugating();

    PairTransport out;
    switch (s.family) {
        case Family::IsoUnimodular: {
            if (!conj_field) fail(Errc::ParameterOutOfDomain, "family needs a conjugating field");
            if (!is_unit_modulus(s.lambda, pol) || !is_unit_modulus(s.mu, pol))
                fail(Errc::ParameterOutOfDomain, "lambda and mu must have modulus 1");
            Mat a = u_triangular(field, s.n).scaled(s.lambda);
            Scalar coef = s.mu;
            for (int k = 0; k < (s.n - 1) % 4; ++k) coef = coef * i_of(field);
            Mat f = w_alternating(field, s.n).scaled(coef);
            out = {std::move(a), std::move(f)};
            break;
        }
        case Family::IsoHyperbolic: {
            if (!conj_field) fail(Errc::ParameterOutOfDomain, "family needs a conjugating field");
            if (s.lambda.is_zero() || is_unit_modulus(s.lambda, pol))
                fail(Errc::ParameterOutOfDomain, "lambda must be nonzero with |lambda| != 1");
            if (!is_unit_modulus(s.mu, pol)) fail(Errc::ParameterOutOfDomain, "mu must be unimodular");
            Mat j = jordan_block(field, s.n, s.lambda);
            Mat jinvstar = inverse(j.star());
            Mat a = Mat::direct_sum(j, jinvstar);
            out = {std::move(a), hyperbolic_form(field, s.n, one_of(field)).scaled(s.mu)};
            break;
        }
        case Family::AdjReal: {
            if (!conj_field) fail(Errc::ParameterOutOfDomain, "family needs a conjugating field");
            if (!scalar_real(s.lambda, pol)) fail(Errc::ParameterOutOfDomain, "lambda must be real");
            if (!is_unit_modulus(s.mu, pol)) fail(Errc::ParameterOutOfDomain, "mu must be unimodular");
            out = {jordan_block(field, s.n, s.lambda),
                   z_matrix(field, s.n).scaled(s.mu)};
            break;
        }
        case Family::AdjPaired: {
            if (!conj_field) fail(Errc::ParameterOutOfDomain, "family needs a conjugating field");
            if (scalar_real(s.lambda, pol)) fail(Errc::ParameterOutOfDomain, "lambda must be nonreal");
            if (!is_unit_modulus(s.mu, pol)) fail(Errc::ParameterOutOfDomain, "mu must be unimodular");
            Mat j = jordan_block(field, s.n, s.lambda);
            Mat a = Mat::direct_sum(j, j.star());
            out = {std::move(a), hyperbolic_form(field, s.n, one_of(field)).scaled(s.mu)};
            break;
        }
        case Family::GenA:
        case Family::GenC1: {
            if (field.involution != Involution::Identity)
                fail(Errc::ParameterOutOfDomain, "family needs the identity involution");
            require_sign(s.eps, "eps");
            require_sign(s.zeta, "zeta");
            if (s.family == Family::GenC1 && !scalar_real(s.lambda, pol))
                fail(Errc::ParameterOutOfDomain, "gen_c1 eigenvalue must lie in the real field");
            bool zero = s.lambda.is_zero();
            bool single_ok = zero ? zero_single_allowed(s.n, s.eps, s.zeta)
                                  : (s.eps == 1 && s.zeta == 1);
            if (s.variant == BlockVariant::Single) {
                if (!single_ok)
                    fail(Errc::ParameterOutOfDomain, "single block does not exist for these (eps, zeta)");
                int delta_sign = s.family == Family::GenC1 ? require_sign(s.delta, "delta") : 1;
                Mat form = zero ? z_matrix_signed(field, s.n, s.zeta) : z_matrix(field, s.n);
                if (delta_sign == -1) form = -form;
                out = {jordan_block(field, s.n, s.lambda), std::move(form)};
            } else {
                if (single_ok)
                    fail(Errc::ParameterOutOfDomain, "paired block only exists when the single block does not");
                out = paired_block(field, jordan_block(field, s.n, s.lambda), s.eps, s.zeta);
            }
            break;
        }
        case Family::GenB: {
            if (!conj_field) fail(Errc::ParameterOutOfDomain, "family needs a conjugating field");
            if (s.variant == BlockVariant::Single) {
                if (!scalar_real(s.lambda, pol))
                    fail(Errc::ParameterOutOfDomain, "single block needs a fixed-field eigenvalue");
                require_sign(s.delta, "delta");
                Mat form = z_matrix(field, s.n);
                if (s.delta == -1) form = -form;
                out = {jordan_block(field, s.n, s.lambda), std::move(form)};
            } else {
                if (scalar_real(s.lambda, pol))
                    fail(Errc::ParameterOutOfDomain, "paired block needs lambda outside the fixed field");
                Mat j = jordan_block(field, s.n, s.lambda);
                out = {Mat::direct_sum(j, j.star()), hyperbolic_form(field, s.n, one_of(field))};
            }
            break;
        }
        case Family::GenC2: {
            if (field.involution != Involution::Identity || field.complex_base())
                fail(Errc::ParameterOutOfDomain, "realified family lives over the real field");
            require_sign(s.eps, "eps");
            require_sign(s.zeta, "zeta");
            Scalar a_part(s.lambda.exact() ? Scalar(GaussRat(s.lambda.exact_value().re))
                                           : Scalar(Cx(s.lambda.to_cx().real(), 0)));
            Scalar b_part(s.lambda.exact() ? Scalar(GaussRat(s.lambda.exact_value().im))
                                           : Scalar(Cx(s.lambda.to_cx().imag(), 0)));
            if (b_part.is_zero()) fail(Errc::ParameterOutOfDomain, "gen_c2 requires b != 0");
            Mat jp = realified_jordan(field, s.n, a_part, b_part);
            if (s.zeta == 1) {
                if (s.variant == BlockVariant::Single) {
                    if (s.eps != 1)
                        fail(Errc::ParameterOutOfDomain, "single realified block requires eps = 1");
                    out = {std::move(jp), z_matrix(field, 2 * s.n)};
                } else {
                    if (s.eps != -1)
                        fail(Errc::ParameterOutOfDomain, "paired realified block requires eps = -1");
                    Mat a(field, 4 * s.n, 4 * s.n);
                    a.set_block(0, 0, jp);
                    a.set_block(2 * s.n, 2 * s.n, jp.transpose());
                    out = {std::move(a), hyperbolic_form(field, 2 * s.n, int_of(field, -1))};
                }
            } else {
                if (s.variant == BlockVariant::Single) {
                    if (!a_part.is_zero())
                        fail(Errc::ParameterOutOfDomain, "skewadjoint single block requires a = 0");
                    require_sign(s.delta, "delta");
                    Mat form = k_alternating(field, s.n, s.eps);
                    if (s.delta == -1) form = -form;
                    out = {std::move(jp), std::move(form)};
                } else {
                    if (a_part.is_zero())
                        fail(Errc::ParameterOutOfDomain, "skewadjoint paired block requires a != 0");
                    Mat a(field, 4 * s.n, 4 * s.n);
                    a.set_block(0, 0, jp);
                    a.set_block(2 * s.n, 2 * s.n, -jp.transpose());
                    out = {std::move(a), hyperbolic_form(field, 2 * s.n, int_of(field, s.eps))};
                }
            }
            break;
        }
    }
    verify_summand_pair(s, out, field);
    return out;
}

// --- normalize ---------------------------------------------------------------

namespace {

Scalar unit_snap(const Scalar& x) {
    if (x.exact()) return x;
    Cx z = x.to_cx();
    double m = std::abs(z);
    return m > 0 ? Scalar(z / m) : x;
}

Scalar real_snap(const Scalar& x) {
    if (x.exact()) return x;
    return Scalar(Cx(x.to_cx().real(), 0));
}

Scalar window_mu(const Scalar& mu, const TolerancePolicy& pol) {
    Scalar u = unit_snap(mu);
    return phase_in_upper_window(u, pol) ? u : u.neg();
}

bool lex_ge_neg(const Scalar& x, const TolerancePolicy& pol) {
    // true when x >= -x lexicographically by (Re, Im)
    if (x.exact()) {
        const GaussRat& g = x.exact_value();
        if (g.re != 0) return g.re > 0;
        return g.im >= 0;
    }
    Cx z = x.to_cx();
    if (std::fabs(z.real()) > pol.cluster / 4) return z.real() > 0;
    return z.imag() >= -pol.cluster / 4;
}

}  // namespace

CanonicalSummand normalize(const CanonicalSummand& s, const TolerancePolicy& pol) {
    CanonicalSummand out = s;
    switch (s.family) {
        case Family::IsoUnimodular:
            out.lambda = unit_snap(s.lambda);
            out.mu = unit_snap(s.mu);
            break;
        case Family::IsoHyperbolic: {
            Scalar lam = s.lambda;
            bool inside = lam.exact() ? lam.exact_value().norm2() < 1 : std::abs(lam.to_cx()) < 1;
            if (inside) lam = Scalar(1L) / lam.conj();
            out.lambda = lam;
            out.mu = window_mu(s.mu, pol);
            break;
        }
        case Family::AdjReal:
            out.lambda = real_snap(s.lambda);
            out.mu = unit_snap(s.mu);
            break;
        case Family::AdjPaired: {
            Scalar lam = s.lambda;
            bool lower = lam.exact() ? lam.exact_value().im < 0 : lam.to_cx().imag() < 0;
            if (lower) lam = lam.conj();
            out.lambda = lam;
            out.mu = window_mu(s.mu, pol);
            break;
        }
        case Family::GenA:
            if (s.zeta == -1 && !lex_ge_neg(s.lambda, pol)) out.lambda = s.lambda.neg();
            break;
        case Family::GenB:
            if (s.variant == BlockVariant::Paired) {
                bool lower = s.lambda.exact() ? s.lambda.exact_value().im < 0
                                              : s.lambda.to_cx().imag() < 0;
                if (lower) out.lambda = s.lambda.conj();
            }
            break;
        case Family::GenC1:
            if (s.zeta == -1 && !lex_ge_neg(s.lambda, pol)) out.lambda = s.lambda.neg();
            break;
        case Family::GenC2: {
            Cx z = s.lambda.to_cx();
            bool flip_b = s.lambda.exact() ? s.lambda.exact_value().im < 0 : z.imag() < 0;
            if (flip_b) {
                out.lambda = s.lambda.conj();
                // under zeta = -1 with the rotational K(eps), flipping b flips the sign
                bool k_is_rot = (s.eps == (s.n % 2 == 0 ? 1 : -1));
                if (s.zeta == -1 && s.variant == BlockVariant::Single && k_is_rot)
                    out.delta = -s.delta;
            }
            if (s.zeta == -1 && s.variant == BlockVariant::Paired) {
                // a determined up to zeta a: fold a to a > 0
                bool a_negative = out.lambda.exact() ? out.lambda.exact_value().re < 0
                                                     : out.lambda.to_cx().real() < 0;
                if (a_negative) {
                    Scalar lam = out.lambda;
                    out.lambda = lam.exact()
                                     ? Scalar(GaussRat(-lam.exact_value().re, lam.exact_value().im))
                                     : Scalar(Cx(-lam.to_cx().real(), lam.to_cx().imag()));
                }
            }
            break;
        }
    }
    bool has_delta =
        (out.family == Family::GenB && out.variant == BlockVariant::Single) ||
        (out.family == Family::GenC1 && out.variant == BlockVariant::Single) ||
        (out.family == Family::GenC2 && out.zeta == -1 && out.variant == BlockVariant::Single);
    if (!has_delta) out.delta = 0;
    if (out.family == Family::IsoUnimodular || out.family == Family::IsoHyperbolic ||
        out.family == Family::AdjReal || out.family == Family::AdjPaired ||
        out.family == Family::GenB) {
        out.eps = 1;
        out.zeta = 1;
    }
    return out;
}

// --- ordering and comparison ---------------------------------------------------

namespace {

int family_rank(Family f) { return int(f); }

// Ordering keys are quantized so extraction noise cannot flip the order of
// well-separated parameters between two runs on isomorphic inputs.
long long quant(double x) {
    double c = std::clamp(x, -1e11, 1e11);
    return llround(c * 1e7);
}

std::pair<long long, long long> lam_key(const Scalar& x) {
    Cx z = x.to_cx();
    return {quant(z.real()), quant(z.imag())};
}

}  // namespace

bool summand_less(const CanonicalSummand& a, const CanonicalSummand& b) {
    if (a.family != b.family) return family_rank(a.family) < family_rank(b.family);
    if (a.n != b.n) return a.n < b.n;
    if (a.variant != b.variant) return a.variant == BlockVariant::Single;
    auto [ar, ai] = lam_key(a.lambda);
    auto [br, bi] = lam_key(b.lambda);
    if (ar != br) return ar < br;
    if (ai != bi) return ai < bi;
    long long ap = quant(std::arg(a.mu.to_cx())), bp = quant(std::arg(b.mu.to_cx()));
    if (ap != bp) return ap < bp;
    if (a.delta != b.delta) return a.delta < b.delta;
    if (a.eps != b.eps) return a.eps < b.eps;
    return a.zeta < b.zeta;
}

bool summand_equal(const CanonicalSummand& a, const CanonicalSummand& b, bool exact,
                   const TolerancePolicy& pol) {
    if (a.family != b.family || a.n != b.n || a.variant != b.variant || a.delta != b.delta ||
        a.eps != b.eps || a.zeta != b.zeta)
        return false;
    if (exact) return a.lambda.equals(b.lambda) && a.mu.equals(b.mu);
    double lscale = std::max({1.0, std::abs(a.lambda.to_cx()), std::abs(b.lambda.to_cx())});
    return std::abs(a.lambda.to_cx() - b.lambda.to_cx()) <= pol.cluster * lscale &&
           std::abs(a.mu.to_cx() - b.mu.to_cx()) <= pol.cluster;
}

bool summand_multisets_equal(std::vector<CanonicalSummand> a, std::vector<CanonicalSummand> b,
                             bool exact, const TolerancePolicy& pol) {
    if (a.size() != b.size()) return false;
    std::sort(a.begin(), a.end(), summand_less);
    std::sort(b.begin(), b.end(), summand_less);
    std::vector<bool> used(b.size(), false);
    for (const CanonicalSummand& x : a) {
        bool found = false;
        for (size_t j = 0; j < b.size(); ++j) {
            if (used[j]) continue;
            if (summand_equal(x, b[j], exact, pol)) { used[j] = true; found = true; break; }
        }
        if (!found) return false;
    }
    return true;
}

// --- explicit replacement witnesses -------------------------------------------

namespace {

// Z_n D_zeta with D_zeta = diag(1, zeta, zeta^2, ...)
Mat flip_twist(FieldSpec field, int n, int zeta) {
    Mat m(field, n, n);
    for (int j = 0; j < n; ++j)
        m.set(n - 1 - j, j, int_of(field, (zeta == -1 && j % 2 == 1) ? -1 : 1));
    return m;
}

// I_n (x) tau with tau = [[0,1],[1,0]]
Mat block_swap(FieldSpec field, int n) {
    Mat m(field, 2 * n, 2 * n);
    for (int b = 0; b < n; ++b) {
        m.set(2 * b, 2 * b + 1, one_of(field));
        m.set(2 * b + 1, 2 * b, one_of(field));
    }
    return m;
}

// I_n (x) sigma with sigma = diag(1, -1)
Mat block_reflect(FieldSpec field, int n) {
    Mat m(field, 2 * n, 2 * n);
    for (int b = 0; b < n; ++b) {
        m.set(2 * b, 2 * b, one_of(field));
        m.set(2 * b + 1, 2 * b + 1, int_of(field, -1));
    }
    return m;
}

}  // namespace

std::optional<Replacement> replacement_witness(const CanonicalSummand& s, FieldSpec field) {
    if (field.involution != Involution::Identity) return std::nullopt;

    Replacement rep;
    if ((s.family == Family::GenA || s.family == Family::GenC1) &&
        s.variant == BlockVariant::Paired && s.zeta == -1 && !s.lambda.is_zero()) {
        // lambda <-> zeta lambda via T = [[0, eps Z D],[Z D, 0]]
        rep.other = s;
        rep.other.lambda = s.lambda.neg();
        Mat zd = flip_twist(field, s.n, s.zeta);
        Mat t(field, 2 * s.n, 2 * s.n);
        t.set_block(0, s.n, s.eps == -1 ? -zd : zd);
        t.set_block(s.n, 0, zd);
        rep.witness = std::move(t);
    } else if (s.family == Family::GenC2) {
        // b <-> -b
        rep.other = s;
        rep.other.lambda = s.lambda.conj();
        bool k_is_rot = (s.eps == (s.n % 2 == 0 ? 1 : -1));
        Mat c = (s.zeta == -1 && s.variant == BlockVariant::Single && k_is_rot)
                    ? block_reflect(field, s.n)
                    : block_swap(field, s.n);
        if (s.zeta == -1 && s.variant == BlockVariant::Single && k_is_rot)
            rep.other.delta = -s.delta;
        rep.witness = s.variant == BlockVariant::Single ? c : Mat::direct_sum(c, c);
    } else {
        return std::nullopt;
    }

    PairTransport lhs = make_summand(s, field);
    PairTransport moved = transport(lhs, rep.witness);
    PairTransport rhs = make_summand(rep.other, field);
    double tol = field.exact() ? 0.0 : 1e-12;
    if (!moved.a.equals(rhs.a, tol) || !moved.f.equals(rhs.f, tol))
        fail(Errc::IllConditioned, "internal: replacement witness failed verification");
    return rep;
}

}  // namespace iif
