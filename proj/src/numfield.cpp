#include "iif/numfield.hpp"

#include <cmath>

namespace iif {

FieldSpec field_from_names(const std::string& base, const std::string& involution) {
    FieldSpec f;
    if (base == "rational")
        f.base = FieldBase::Rational;
    else if (base == "gaussian_rational")
        f.base = FieldBase::GaussianRational;
    else if (base == "real_float")
        f.base = FieldBase::RealFloat;
    else if (base == "complex_float")
        f.base = FieldBase::ComplexFloat;
    else
        fail(Errc::ParseError, "unknown field base: " + base);

    if (involution == "identity")
        f.involution = Involution::Identity;
    else if (involution == "conjugation")
        f.involution = Involution::Conjugation;
    else
        fail(Errc::ParseError, "unknown involution: " + involution);
    if (f.involution == Involution::Conjugation && !f.complex_base())
        fail(Errc::ParseError, "conjugation involution requires a complex base field");
    return f;
}

std::string field_base_name(FieldBase b) {
    switch (b) {
        case FieldBase::Rational: return "rational";
        case FieldBase::GaussianRational: return "gaussian_rational";
        case FieldBase::RealFloat: return "real_float";
        case FieldBase::ComplexFloat: return "complex_float";
    }
    return "?";
}

std::string involution_name(Involution i) {
    return i == Involution::Identity ? "identity" : "conjugation";
}

std::optional<Rat> rational_sqrt(const Rat& x) {
    if (x < 0) return std::nullopt;
    if (x == 0) return Rat(0);
    mpz_class num = x.get_num(), den = x.get_den();
    if (mpz_perfect_square_p(num.get_mpz_t()) == 0) return std::nullopt;
    if (mpz_perfect_square_p(den.get_mpz_t()) == 0) return std::nullopt;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    Rat r(rn, rd);
    r.canonicalize();
    return r;
}

Rat rationalize(double x, unsigned long max_den) {
    if (!std::isfinite(x)) fail(Errc::ParameterOutOfDomain, "cannot rationalize non-finite value");
    bool neg = x < 0;
    double v = std::fabs(x);
    // continued-fraction convergents p/q with q <= max_den
    unsigned long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double frac = v;
    for (int it = 0; it < 64; ++it) {
        double fl = std::floor(frac);
        if (fl > 1e18) break;
        unsigned long a = static_cast<unsigned long>(fl);
        unsigned long p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > max_den || q2 < q1) break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        double rem = frac - fl;
        if (rem < 1e-15 * std::max(1.0, v)) break;
        frac = 1.0 / rem;
    }
    if (q1 == 0) { p1 = static_cast<unsigned long>(std::llround(v)); q1 = 1; }
    Rat r(static_cast<long>(p1), static_cast<long>(q1));
    r.canonicalize();
    return neg ? Rat(-r) : r;
}

Scalar conj(const Scalar& x, const FieldSpec& f) {
    f.validate();
    if (f.involution == Involution::Identity) return x;
    return x.conj();
}

namespace {

int rat_sign(const Rat& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }

CosetRep coset_rep_exact(const GaussRat& d) {
    CosetRep out;
    double mod = std::sqrt(std::sqrt(d.norm2().get_d()));  // sqrt(|d|) via |d|^2
    out.r = mod;
    if (d.im == 0) {  // phase 0 or pi: fold pi down to 0 with flipped sign
        out.e = Scalar(GaussRat(1));
        out.sign = rat_sign(d.re);
        return out;
    }
    if (d.re == 0) {
        out.e = Scalar(GaussRat::i());
        out.sign = rat_sign(d.im);
        return out;
    }
    // Generic direction: fold into the open upper half plane.
    out.sign = d.im > 0 ? 1 : -1;
    GaussRat dir = out.sign > 0 ? d : -d;
    if (auto m = rational_sqrt(dir.norm2())) {
        out.e = Scalar(GaussRat(dir.re / *m, dir.im / *m));  // exact unit
    } else {
        Cx z = dir.to_cx();
        out.e = Scalar(z / std::abs(z));  // unit leaves Q(i); report as float
    }
    return out;
}

CosetRep coset_rep_float(Cx d, const TolerancePolicy& pol) {
    CosetRep out;
    double mod = std::abs(d);
    out.r = std::sqrt(mod);
    double phi = std::arg(d);  // (-pi, pi]
    int sign = 1;
    if (phi < 0) { phi += M_PI; sign = -1; }
    // ties at phi ~ pi resolve downward to phi = 0 with flipped sign
    if (phi >= M_PI - pol.cluster) { phi -= M_PI; sign = -sign; }
    if (std::fabs(phi) <= pol.cluster) phi = 0.0;
    out.e = Scalar(Cx(std::cos(phi), std::sin(phi)));
    out.sign = sign;
    return out;
}

}  // namespace

CosetRep coset_representative(const Scalar& d, const FieldSpec& f, const TolerancePolicy& pol) {
    if (!f.conjugating() || !f.complex_base())
        fail(Errc::NotApplicable, "coset representatives require a conjugating complex field");
    if (d.is_zero()) fail(Errc::ZeroScalar, "coset representative of zero");
    if (d.exact()) return coset_rep_exact(d.exact_value());
    return coset_rep_float(d.to_cx(), pol);
}

int exact_ray_relation(const GaussRat& a, const GaussRat& b) {
    if (a.is_zero() || b.is_zero()) fail(Errc::ZeroScalar, "ray relation of zero scalar");
    GaussRat p = a * b.conj();  // a / b up to a positive real factor
    if (p.im != 0) return 0;
    return rat_sign(p.re);
}

bool exact_phase_less(const GaussRat& a, const GaussRat& b) {
    // Both in the closed upper half plane minus the negative real axis.
    bool a_axis = (a.im == 0), b_axis = (b.im == 0);
    if (a_axis != b_axis) return a_axis;  // phase 0 sorts first
    if (a_axis && b_axis) return false;
    // both have im > 0: phase compare via cross product
    Rat cross = a.re * b.im - b.re * a.im;
    return cross > 0;
}

}  // namespace iif
