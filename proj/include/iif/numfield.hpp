#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include <gmpxx.h>

#include "iif/errors.hpp"

namespace iif {

using Rat = mpq_class;
using Cx = std::complex<double>;

enum class FieldBase { Rational, GaussianRational, RealFloat, ComplexFloat };
enum class Involution { Identity, Conjugation };

/// A scalar field together with its involution. Conjugation is only valid on
/// the two complex-capable bases.
struct FieldSpec {
    FieldBase base = FieldBase::ComplexFloat;
    Involution involution = Involution::Conjugation;

    bool exact() const { return base == FieldBase::Rational || base == FieldBase::GaussianRational; }
    bool complex_base() const {
        return base == FieldBase::GaussianRational || base == FieldBase::ComplexFloat;
    }
    bool conjugating() const { return involution == Involution::Conjugation; }

    void validate() const {
        if (involution == Involution::Conjugation && !complex_base())
            fail(Errc::ParameterOutOfDomain, "conjugation involution requires a complex base field");
    }

    /// The floating field with the same involution (used when exact pipelines
    /// fall back to numerics).
    FieldSpec to_float() const {
        FieldSpec f = *this;
        f.base = complex_base() ? FieldBase::ComplexFloat : FieldBase::RealFloat;
        return f;
    }

    bool operator==(const FieldSpec&) const = default;
};

FieldSpec field_from_names(const std::string& base, const std::string& involution);
std::string field_base_name(FieldBase b);
std::string involution_name(Involution i);

/// Comparison tolerances. Exact bases ignore both and compare literally.
struct TolerancePolicy {
    double structural = 1e-8;  // relative bound for matrix-identity checks
    double cluster = 1e-6;     // absolute bound for grouping eigenvalues/phases
};

// ---------------------------------------------------------------------------
// Exact Gaussian rationals p + q i with p, q in lowest terms.

struct GaussRat {
    Rat re, im;

    GaussRat() : re(0), im(0) {}
    GaussRat(long v) : re(v), im(0) {}
    GaussRat(Rat r) : re(std::move(r)), im(0) {}
    GaussRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

    static GaussRat i() { return GaussRat(Rat(0), Rat(1)); }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    GaussRat conj() const { return GaussRat(re, -im); }
    Rat norm2() const { return re * re + im * im; }  // |z|^2

    Cx to_cx() const { return Cx(re.get_d(), im.get_d()); }

    friend GaussRat operator+(const GaussRat& a, const GaussRat& b) {
        return GaussRat(a.re + b.re, a.im + b.im);
    }
    friend GaussRat operator-(const GaussRat& a, const GaussRat& b) {
        return GaussRat(a.re - b.re, a.im - b.im);
    }
    friend GaussRat operator-(const GaussRat& a) { return GaussRat(-a.re, -a.im); }
    friend GaussRat operator*(const GaussRat& a, const GaussRat& b) {
        return GaussRat(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
    }
    friend GaussRat operator/(const GaussRat& a, const GaussRat& b) {
        Rat n = b.norm2();
        if (n == 0) fail(Errc::ZeroScalar, "division by zero Gaussian rational");
        GaussRat num = a * b.conj();
        return GaussRat(num.re / n, num.im / n);
    }
    GaussRat& operator+=(const GaussRat& b) { return *this = *this + b; }
    GaussRat& operator-=(const GaussRat& b) { return *this = *this - b; }
    GaussRat& operator*=(const GaussRat& b) { return *this = *this * b; }
    GaussRat& operator/=(const GaussRat& b) { return *this = *this / b; }

    friend bool operator==(const GaussRat& a, const GaussRat& b) {
        return a.re == b.re && a.im == b.im;
    }
};

/// Exact square root of a nonnegative rational, when the result is rational.
std::optional<Rat> rational_sqrt(const Rat& x);

/// Best rational approximation of x with denominator bounded by max_den
/// (continued fractions). Used to lift floating spectra back into the field.
Rat rationalize(double x, unsigned long max_den = 1000000);

// ---------------------------------------------------------------------------
// Runtime scalar: exact Gaussian rational or complex double.

class Scalar {
public:
    Scalar() : v_(GaussRat()) {}
    Scalar(GaussRat g) : v_(std::move(g)) {}
    Scalar(Cx z) : v_(z) {}
    Scalar(double x) : v_(Cx(x, 0.0)) {}
    Scalar(long x) : v_(GaussRat(x)) {}
    Scalar(int x) : v_(GaussRat(long(x))) {}

    static Scalar rational(const Rat& r) { return Scalar(GaussRat(r)); }
    static Scalar gaussian(const Rat& re, const Rat& im) { return Scalar(GaussRat(re, im)); }

    bool exact() const { return std::holds_alternative<GaussRat>(v_); }
    const GaussRat& exact_value() const& {
        if (!exact()) fail(Errc::ParameterOutOfDomain, "scalar is not exact");
        return std::get<GaussRat>(v_);
    }
    GaussRat exact_value() const&& {  // rvalue access must not dangle
        if (!exact()) fail(Errc::ParameterOutOfDomain, "scalar is not exact");
        return std::get<GaussRat>(v_);
    }
    Cx to_cx() const {
        return exact() ? std::get<GaussRat>(v_).to_cx() : std::get<Cx>(v_);
    }

    bool is_zero() const { return exact() ? std::get<GaussRat>(v_).is_zero() : std::get<Cx>(v_) == Cx(0, 0); }
    bool is_real(double tol = 0.0) const {
        return exact() ? std::get<GaussRat>(v_).is_real() : std::abs(std::get<Cx>(v_).imag()) <= tol;
    }

    Scalar conj() const {
        return exact() ? Scalar(std::get<GaussRat>(v_).conj()) : Scalar(std::conj(std::get<Cx>(v_)));
    }
    Scalar neg() const { return exact() ? Scalar(-exact_value()) : Scalar(-to_cx()); }

    /// Arithmetic stays exact when both operands are exact, else drops to floats.
    friend Scalar operator+(const Scalar& a, const Scalar& b) {
        if (a.exact() && b.exact()) return Scalar(a.exact_value() + b.exact_value());
        return Scalar(a.to_cx() + b.to_cx());
    }
    friend Scalar operator-(const Scalar& a, const Scalar& b) {
        if (a.exact() && b.exact()) return Scalar(a.exact_value() - b.exact_value());
        return Scalar(a.to_cx() - b.to_cx());
    }
    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        if (a.exact() && b.exact()) return Scalar(a.exact_value() * b.exact_value());
        return Scalar(a.to_cx() * b.to_cx());
    }
    friend Scalar operator/(const Scalar& a, const Scalar& b) {
        if (a.exact() && b.exact()) return Scalar(a.exact_value() / b.exact_value());
        Cx d = b.to_cx();
        if (d == Cx(0, 0)) fail(Errc::ZeroScalar, "division by zero");
        return Scalar(a.to_cx() / d);
    }

    /// Equality within tol on the floating route, literal equality when both exact.
    bool equals(const Scalar& o, double tol = 0.0) const {
        if (exact() && o.exact()) return exact_value() == o.exact_value();
        return std::abs(to_cx() - o.to_cx()) <= tol;
    }

private:
    std::variant<GaussRat, Cx> v_;
};

/// The involution of the field applied to a scalar; identity involutions
/// return the value unchanged.
Scalar conj(const Scalar& x, const FieldSpec& f);

// ---------------------------------------------------------------------------
// Coset representatives of F^x / F0^x for the complex-conjugation case:
// every nonzero d factors as sign * e * r^2 with |e| = 1, phase(e) in [0, pi).

struct CosetRep {
    Scalar e;    // unit scalar, phase in [0, pi); exact when representable
    double r;    // sqrt(|d|), stored as a float even in exact mode
    int sign;    // +1 or -1
};

CosetRep coset_representative(const Scalar& d, const FieldSpec& f,
                              const TolerancePolicy& pol = {});

/// Exact ray comparison: nonzero a, b lie on the same real ray (a = t b, t real).
/// Returns 0 if not proportional over the reals, +1 if t > 0, -1 if t < 0.
int exact_ray_relation(const GaussRat& a, const GaussRat& b);

/// Order two coset directions by phase in [0, pi). Inputs must be nonzero with
/// phase in [0, pi) (im > 0, or im == 0 and re > 0). Exact comparator.
bool exact_phase_less(const GaussRat& a, const GaussRat& b);

}  // namespace iif
