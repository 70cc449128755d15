#pragma once

#include <variant>
#include <vector>

#include "iif/detail/dense.hpp"
#include "iif/numfield.hpp"

namespace iif {

/// Dense matrix over a FieldSpec. Exact bases store Gaussian rationals,
/// floating bases complex doubles; immutable value semantics throughout.
class Mat {
public:
    Mat() : field_{FieldBase::ComplexFloat, Involution::Conjugation}, m_(detail::MatT<Cx>()) {}
    Mat(FieldSpec field, int rows, int cols);
    Mat(FieldSpec field, detail::MatT<GaussRat> m);
    Mat(FieldSpec field, detail::MatT<Cx> m);

    static Mat identity(FieldSpec field, int n);
    static Mat from_rows(FieldSpec field, const std::vector<std::vector<Scalar>>& rows);

    const FieldSpec& field() const { return field_; }
    int rows() const;
    int cols() const;
    bool square() const { return rows() == cols(); }
    bool is_exact() const { return std::holds_alternative<detail::MatT<GaussRat>>(m_); }

    Scalar at(int i, int j) const;
    void set(int i, int j, const Scalar& v);

    const detail::MatT<GaussRat>& eref() const { return std::get<detail::MatT<GaussRat>>(m_); }
    const detail::MatT<Cx>& fref() const { return std::get<detail::MatT<Cx>>(m_); }

    Mat operator+(const Mat& o) const;
    Mat operator-(const Mat& o) const;
    Mat operator-() const;
    Mat operator*(const Mat& o) const;
    Mat scaled(const Scalar& s) const;
    Mat transpose() const;

    /// Entry-wise involution-transpose S* = (conj S)^T under the field's involution.
    Mat star() const;

    Mat to_float() const;
    double norm_max() const;

    /// Max-norm comparison, relative against the larger magnitude; exact
    /// matrices compare literally.
    bool equals(const Mat& o, double tol_rel) const;

    Mat block(int i0, int j0, int r, int c) const;
    void set_block(int i0, int j0, const Mat& b);
    static Mat direct_sum(const Mat& x, const Mat& y);
    static Mat hcat(const Mat& x, const Mat& y);

private:
    void check_same_kind(const Mat& o) const;
    FieldSpec field_;
    std::variant<detail::MatT<GaussRat>, detail::MatT<Cx>> m_;
};

/// An (operator, form) pair moving together under basis change.
struct PairTransport {
    Mat a, f;
};

Mat star(const Mat& m);

/// Basis change (A, F) -> (S^{-1} A S, S* F S).
PairTransport transport(const PairTransport& p, const Mat& s, const TolerancePolicy& pol = {});

/// x with m x = b; exact over exact fields, partial pivoting by magnitude over
/// floats.
Mat solve(const Mat& m, const Mat& b, const TolerancePolicy& pol = {});

Mat inverse(const Mat& m, const TolerancePolicy& pol = {});
Scalar det(const Mat& m, const TolerancePolicy& pol = {});
int rank(const Mat& m, const TolerancePolicy& pol = {});
bool nonsingular(const Mat& m, const TolerancePolicy& pol = {});

Mat direct_sum(const std::vector<Mat>& blocks);

}  // namespace iif
