#include "iif/linalg.hpp"

namespace iif {

namespace {

GaussRat to_exact_entry(const Scalar& v, const FieldSpec& f) {
    if (!v.exact()) fail(Errc::ParameterOutOfDomain, "float scalar in exact matrix");
    const GaussRat& g = v.exact_value();
    if (f.base == FieldBase::Rational && g.im != 0)
        fail(Errc::ParameterOutOfDomain, "imaginary entry in rational matrix");
    return g;
}

Cx to_float_entry(const Scalar& v, const FieldSpec& f) {
    Cx z = v.to_cx();
    if (f.base == FieldBase::RealFloat && z.imag() != 0.0)
        fail(Errc::ParameterOutOfDomain, "imaginary entry in real matrix");
    return z;
}

}  // namespace

Mat::Mat(FieldSpec field, int rows, int cols) : field_(field) {
    field_.validate();
    if (rows < 0 || cols < 0) fail(Errc::DimensionMismatch, "negative matrix dimension");
    if (field_.exact())
        m_ = detail::MatT<GaussRat>(rows, cols);
    else
        m_ = detail::MatT<Cx>(rows, cols);
}

Mat::Mat(FieldSpec field, detail::MatT<GaussRat> m) : field_(field), m_(std::move(m)) {
    field_.validate();
    if (!field_.exact()) fail(Errc::ParameterOutOfDomain, "exact storage under floating field");
}

Mat::Mat(FieldSpec field, detail::MatT<Cx> m) : field_(field), m_(std::move(m)) {
    field_.validate();
    if (field_.exact()) fail(Errc::ParameterOutOfDomain, "float storage under exact field");
}

Mat Mat::identity(FieldSpec field, int n) {
    if (field.exact()) return Mat(field, detail::MatT<GaussRat>::identity(n));
    return Mat(field, detail::MatT<Cx>::identity(n));
}

Mat Mat::from_rows(FieldSpec field, const std::vector<std::vector<Scalar>>& rows) {
    int r = int(rows.size());
    int c = r > 0 ? int(rows[0].size()) : 0;
    Mat m(field, r, c);
    for (int i = 0; i < r; ++i) {
        if (int(rows[i].size()) != c) fail(Errc::DimensionMismatch, "ragged rows");
        for (int j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
    }
    return m;
}

int Mat::rows() const {
    return std::visit([](const auto& m) { return m.r; }, m_);
}
int Mat::cols() const {
    return std::visit([](const auto& m) { return m.c; }, m_);
}

Scalar Mat::at(int i, int j) const {
    if (i < 0 || j < 0 || i >= rows() || j >= cols())
        fail(Errc::DimensionMismatch, "matrix index out of range");
    if (is_exact()) return Scalar(eref().at(i, j));
    return Scalar(fref().at(i, j));
}

void Mat::set(int i, int j, const Scalar& v) {
    if (i < 0 || j < 0 || i >= rows() || j >= cols())
        fail(Errc::DimensionMismatch, "matrix index out of range");
    if (is_exact())
        std::get<detail::MatT<GaussRat>>(m_).at(i, j) = to_exact_entry(v, field_);
    else
        std::get<detail::MatT<Cx>>(m_).at(i, j) = to_float_entry(v, field_);
}

void Mat::check_same_kind(const Mat& o) const {
    if (is_exact() != o.is_exact())
        fail(Errc::ParameterOutOfDomain, "mixed exact/float matrix operation");
}

Mat Mat::operator+(const Mat& o) const {
    check_same_kind(o);
    if (rows() != o.rows() || cols() != o.cols()) fail(Errc::DimensionMismatch, "sum shape mismatch");
    if (is_exact()) return Mat(field_, eref() + o.eref());
    return Mat(field_, fref() + o.fref());
}

Mat Mat::operator-(const Mat& o) const {
    check_same_kind(o);
    if (rows() != o.rows() || cols() != o.cols()) fail(Errc::DimensionMismatch, "diff shape mismatch");
    if (is_exact()) return Mat(field_, eref() - o.eref());
    return Mat(field_, fref() - o.fref());
}

Mat Mat::operator-() const {
    if (is_exact()) return Mat(field_, -eref());
    return Mat(field_, -fref());
}

Mat Mat::operator*(const Mat& o) const {
    check_same_kind(o);
    if (is_exact()) return Mat(field_, eref() * o.eref());
    return Mat(field_, fref() * o.fref());
}

Mat Mat::scaled(const Scalar& s) const {
    if (is_exact() && s.exact()) return Mat(field_, eref().scaled(s.exact_value()));
    Mat f = to_float();
    return Mat(f.field_, f.fref().scaled(s.to_cx()));
}

Mat Mat::transpose() const {
    if (is_exact()) return Mat(field_, eref().transpose());
    return Mat(field_, fref().transpose());
}

Mat Mat::star() const {
    if (is_exact()) return Mat(field_, eref().star(field_.involution));
    return Mat(field_, fref().star(field_.involution));
}

Mat Mat::to_float() const {
    if (!is_exact()) return *this;
    const auto& e = eref();
    detail::MatT<Cx> out(e.r, e.c);
    for (int i = 0; i < e.r; ++i)
        for (int j = 0; j < e.c; ++j) out.at(i, j) = e.at(i, j).to_cx();
    return Mat(field_.to_float(), std::move(out));
}

double Mat::norm_max() const {
    return std::visit([](const auto& m) { return m.norm_max(); }, m_);
}

bool Mat::equals(const Mat& o, double tol_rel) const {
    if (rows() != o.rows() || cols() != o.cols()) return false;
    if (is_exact() && o.is_exact()) {
        for (int i = 0; i < rows(); ++i)
            for (int j = 0; j < cols(); ++j)
                if (!(eref().at(i, j) == o.eref().at(i, j))) return false;
        return true;
    }
    Mat x = to_float(), y = o.to_float();
    double scale = std::max({x.norm_max(), y.norm_max(), 1.0});
    double diff = 0;
    for (int i = 0; i < rows(); ++i)
        for (int j = 0; j < cols(); ++j)
            diff = std::max(diff, std::abs(x.fref().at(i, j) - y.fref().at(i, j)));
    return diff <= tol_rel * scale;
}

Mat Mat::block(int i0, int j0, int r, int c) const {
    if (is_exact()) return Mat(field_, eref().block(i0, j0, r, c));
    return Mat(field_, fref().block(i0, j0, r, c));
}

void Mat::set_block(int i0, int j0, const Mat& b) {
    check_same_kind(b);
    if (is_exact())
        std::get<detail::MatT<GaussRat>>(m_).set_block(i0, j0, b.eref());
    else
        std::get<detail::MatT<Cx>>(m_).set_block(i0, j0, b.fref());
}

Mat Mat::direct_sum(const Mat& x, const Mat& y) {
    x.check_same_kind(y);
    if (x.is_exact()) return Mat(x.field_, detail::MatT<GaussRat>::direct_sum(x.eref(), y.eref()));
    return Mat(x.field_, detail::MatT<Cx>::direct_sum(x.fref(), y.fref()));
}

Mat Mat::hcat(const Mat& x, const Mat& y) {
    x.check_same_kind(y);
    if (x.is_exact()) return Mat(x.field_, detail::MatT<GaussRat>::hcat(x.eref(), y.eref()));
    return Mat(x.field_, detail::MatT<Cx>::hcat(x.fref(), y.fref()));
}

Mat star(const Mat& m) { return m.star(); }

PairTransport transport(const PairTransport& p, const Mat& s, const TolerancePolicy& pol) {
    if (!s.square() || s.rows() != p.a.rows())
        fail(Errc::DimensionMismatch, "transform size mismatch");
    if (!nonsingular(s, pol)) fail(Errc::SingularTransform, "singular basis change");
    Mat si_a = solve(s, p.a * s, pol);
    Mat fs = s.star() * p.f * s;
    return PairTransport{std::move(si_a), std::move(fs)};
}

Mat solve(const Mat& m, const Mat& b, const TolerancePolicy& pol) {
    if (m.is_exact() != b.is_exact())
        fail(Errc::ParameterOutOfDomain, "mixed exact/float solve");
    if (m.is_exact()) return Mat(m.field(), detail::solve(m.eref(), b.eref(), 0.0));
    double tol_abs = pol.structural * std::max(m.norm_max(), 1e-300);
    return Mat(m.field(), detail::solve(m.fref(), b.fref(), tol_abs));
}

Mat inverse(const Mat& m, const TolerancePolicy& pol) {
    return solve(m, Mat::identity(m.field(), m.rows()), pol);
}

Scalar det(const Mat& m, const TolerancePolicy& pol) {
    if (m.is_exact()) return Scalar(detail::det(m.eref(), 0.0));
    double tol_abs = pol.structural * std::max(m.norm_max(), 1e-300);
    return Scalar(detail::det(m.fref(), tol_abs));
}

int rank(const Mat& m, const TolerancePolicy& pol) {
    if (m.is_exact()) return detail::rank(m.eref(), 0.0);
    return detail::rank(m.fref(), pol.structural);
}

bool nonsingular(const Mat& m, const TolerancePolicy& pol) {
    return m.square() && rank(m, pol) == m.rows();
}

Mat direct_sum(const std::vector<Mat>& blocks) {
    if (blocks.empty()) fail(Errc::DimensionMismatch, "empty direct sum");
    Mat acc = blocks[0];
    for (size_t i = 1; i < blocks.size(); ++i) acc = Mat::direct_sum(acc, blocks[i]);
    return acc;
}

}  // namespace iif
