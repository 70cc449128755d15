#include "iif/frobenius.hpp"

#include <algorithm>

namespace iif {

namespace {

GaussRat conj_in(const GaussRat& x, const FieldSpec& f) {
    return f.involution == Involution::Conjugation ? x.conj() : x;
}

bool all_zero(const std::vector<GaussRat>& v) {
    return std::all_of(v.begin(), v.end(), [](const GaussRat& x) { return x.is_zero(); });
}

// q(x) = zeta^deg(q) * conj(q)(zeta x), checked coefficient-wise on a monic
// polynomial given by its non-leading coefficients.
bool symmetry_holds(const std::vector<GaussRat>& q, int zeta, const FieldSpec& f) {
    int m = int(q.size());
    auto zp = [&](int k) { return (zeta == 1 || k % 2 == 0) ? 1 : -1; };
    for (int j = 0; j < m; ++j) {
        GaussRat rhs = conj_in(q[j], f);
        if (zp(m + j) < 0) rhs = -rhs;
        if (!(q[j] == rhs)) return false;
    }
    return true;
}

std::vector<GaussRat> expand_power(const std::vector<GaussRat>& p, int k) {
    // (x^m + p_{m-1} x^{m-1} + ... )^k as full coefficient list, monic dropped at the end
    std::vector<GaussRat> full = p;
    full.push_back(GaussRat(1L));  // leading 1
    std::vector<GaussRat> acc{GaussRat(1L)};
    for (int t = 0; t < k; ++t) {
        std::vector<GaussRat> next(acc.size() + full.size() - 1, GaussRat());
        for (size_t i = 0; i < acc.size(); ++i)
            for (size_t j = 0; j < full.size(); ++j) next[i + j] += acc[i] * full[j];
        acc = std::move(next);
    }
    acc.pop_back();  // drop the monic leading coefficient
    return acc;
}

Mat eval_poly(const Mat& x, const std::vector<GaussRat>& coeffs) {
    int n = x.rows();
    Mat acc(x.field(), n, n);
    for (int j = int(coeffs.size()) - 1; j >= 0; --j) {
        acc = acc * x;
        for (int i = 0; i < n; ++i)
            acc.set(i, i, acc.at(i, i) + Scalar(coeffs[size_t(j)]));
    }
    return acc;
}

}  // namespace

void CharPoly::validate() const {
    if (!field.exact()) fail(Errc::ParameterOutOfDomain, "characteristic polynomial must be exact");
    if (c.empty()) fail(Errc::ParameterOutOfDomain, "degree must be at least 1");
    if (field.base == FieldBase::Rational)
        for (const GaussRat& x : c)
            if (x.im != 0) fail(Errc::ParameterOutOfDomain, "imaginary coefficient over the rationals");
    if (hint) {
        if (hint->k < 1 || hint->p.empty() || int(hint->p.size()) * hint->k != degree())
            fail(Errc::ParameterOutOfDomain, "factorization hint degree mismatch");
        if (expand_power(hint->p, hint->k) != c)
            fail(Errc::ParameterOutOfDomain, "factorization hint does not expand to chi");
    }
}

Mat companion(const CharPoly& chi) {
    chi.validate();
    int n = chi.degree();
    Mat m(chi.field, n, n);
    for (int i = 1; i < n; ++i) m.set(i, i - 1, Scalar(GaussRat(1L)));
    for (int i = 0; i < n; ++i) m.set(i, n - 1, Scalar(-chi.c[size_t(i)]));
    return m;
}

PhiExistence phi_exists(const CharPoly& chi, int eps, int zeta) {
    chi.validate();
    if (std::abs(eps) != 1 || std::abs(zeta) != 1)
        fail(Errc::ParameterOutOfDomain, "eps and zeta must be +1 or -1");
    if (eps == -1 && chi.field.involution == Involution::Conjugation)
        fail(Errc::HypothesisViolation, "eps = -1 requires the identity involution");

    int n = chi.degree();
    if (chi.c[0].is_zero()) {
        if (!all_zero(chi.c))
            fail(Errc::ParameterOutOfDomain,
                 "zero constant term: a Frobenius block with singular Phi must have chi = x^n");
        bool ok = (n % 2 == 1) ? (eps == 1) : (eps == zeta);
        if (ok) return {true, "singular case: eps = 1 for n odd / eps = zeta for n even"};
        return {false, "singular case violates eps = 1 (n odd) or eps = zeta (n even)"};
    }

    if (eps == -1 && zeta == 1) return {false, "(eps, zeta) = (-1, 1) is excluded for nonsingular blocks"};
    const std::vector<GaussRat>& q = chi.hint ? chi.hint->p : chi.c;
    if (!symmetry_holds(q, zeta, chi.field))
        return {false, "polynomial fails p(x) = zeta^deg conj(p)(zeta x)"};
    return {true, "nonsingular case conditions hold"};
}

Mat z_matrix(FieldSpec field, int n) {
    Mat m(field, n, n);
    Scalar one = field.exact() ? Scalar(GaussRat(1L)) : Scalar(Cx(1, 0));
    for (int i = 0; i < n; ++i) m.set(n - 1 - i, i, one);
    return m;
}

Mat z_matrix_signed(FieldSpec field, int n, int zeta) {
    // Anti-diagonal 1, zeta, 1, zeta, ... read from the bottom-left corner.
    Mat m(field, n, n);
    for (int k = 0; k < n; ++k) {
        long v = (k % 2 == 0) ? 1 : zeta;
        m.set(n - 1 - k, k, field.exact() ? Scalar(GaussRat(v)) : Scalar(Cx(double(v), 0)));
    }
    return m;
}

PhiBlock make_phi(const CharPoly& chi, int eps, int zeta) {
    PhiExistence ex = phi_exists(chi, eps, zeta);
    if (!ex.exists) fail(Errc::NotConstructible, "Phi_eps_zeta does not exist: " + ex.reason);

    int n = chi.degree();
    PhiBlock out;
    out.eps = eps;
    out.zeta = zeta;
    out.phi = companion(chi);

    if (chi.c[0].is_zero()) {
        out.m = z_matrix_signed(chi.field, n, zeta);
    } else {
        // a_2..a_{n+1} seeds, then the recurrence up to a_{2n+1}.
        std::vector<GaussRat> a(size_t(2 * n + 2), GaussRat());  // index by subscript
        if (eps == 1)
            a[2] = GaussRat(1L);
        else
            a[3] = GaussRat(1L);
        for (int l = 2; l <= n + 1; ++l) {
            GaussRat s;
            for (int k = 0; k < n; ++k) s += chi.c[size_t(k)] * a[size_t(l + k)];
            a[size_t(l + n)] = -s;
        }
        Mat m(chi.field, n, n);
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j) {
                GaussRat v = a[size_t(i + j)];
                if (zeta == -1 && i % 2 == 1) v = -v;
                m.set(i - 1, j - 1, Scalar(v));
            }
        out.m = std::move(m);
        out.a_seq.assign(a.begin() + 2, a.end());
    }

    // Invariants checked exactly before returning.
    Mat ms = out.m.star();
    if (eps == -1) ms = -ms;
    if (!out.m.equals(ms, 0.0)) fail(Errc::NotConstructible, "internal: M = eps M* failed");
    Mat mphi = out.m * out.phi;
    Mat rhs = mphi.star();
    if (eps * zeta == -1) rhs = -rhs;
    if (!mphi.equals(rhs, 0.0)) fail(Errc::NotConstructible, "internal: M Phi symmetry failed");
    if (!nonsingular(out.m, {})) fail(Errc::NotConstructible, "internal: singular structure matrix");
    return out;
}

PairTransport make_pair(const CharPoly& chi, int eps, int zeta,
                        const std::vector<GaussRat>& f_coeffs) {
    PhiExistence ex = phi_exists(chi, eps, zeta);
    int n = chi.degree();

    if (!ex.exists) {
        if (!f_coeffs.empty())
            fail(Errc::BadFunctionalParameter, "type (ii) block takes no functional parameter");
        Mat phi = companion(chi);
        Mat a(chi.field, 2 * n, 2 * n);
        a.set_block(0, 0, phi);
        Mat zphis = phi.star();
        if (zeta == -1) zphis = -zphis;
        a.set_block(n, n, zphis);
        Mat f(chi.field, 2 * n, 2 * n);
        for (int i = 0; i < n; ++i) {
            f.set(i, n + i, Scalar(GaussRat(long(eps))));
            f.set(n + i, i, Scalar(GaussRat(1L)));
        }
        return {std::move(a), std::move(f)};
    }

    if (f_coeffs.empty() || all_zero(f_coeffs))
        fail(Errc::BadFunctionalParameter, "type (i) block needs a nonzero functional parameter");
    int deg_p = chi.hint ? int(chi.hint->p.size()) : n;
    if (int(f_coeffs.size()) > deg_p)
        fail(Errc::BadFunctionalParameter, "deg f must be smaller than deg p_Phi");
    // f(x) = conj(f)(zeta x) coefficient-wise
    for (size_t j = 0; j < f_coeffs.size(); ++j) {
        GaussRat rhs = conj_in(f_coeffs[j], chi.field);
        if (zeta == -1 && j % 2 == 1) rhs = -rhs;
        if (!(f_coeffs[j] == rhs))
            fail(Errc::BadFunctionalParameter, "functional parameter violates f(x) = conj(f)(zeta x)");
    }

    PhiBlock pb = make_phi(chi, eps, zeta);
    Mat f = pb.m * eval_poly(pb.phi, f_coeffs);

    // Output verified exactly: F eps-Hermitian nonsingular, A zeta-adjoint.
    Mat fs = f.star();
    if (eps == -1) fs = -fs;
    if (!f.equals(fs, 0.0)) fail(Errc::BadFunctionalParameter, "internal: form symmetry failed");
    if (!nonsingular(f, {}))
        fail(Errc::BadFunctionalParameter, "functional parameter produced a singular form");
    Mat lhs = f * pb.phi;
    Mat rhs = pb.phi.star() * f;
    if (zeta == -1) rhs = -rhs;
    if (!lhs.equals(rhs, 0.0)) fail(Errc::BadFunctionalParameter, "internal: adjointness failed");
    return {pb.phi, std::move(f)};
}

}  // namespace iif
