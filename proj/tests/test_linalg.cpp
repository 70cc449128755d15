#include <random>

#include "doctest.h"
#include "iif/linalg.hpp"

using namespace iif;

namespace {

const FieldSpec kRat{FieldBase::Rational, Involution::Identity};
const FieldSpec kGauss{FieldBase::GaussianRational, Involution::Conjugation};
const FieldSpec kCx{FieldBase::ComplexFloat, Involution::Conjugation};

Mat random_float(std::mt19937_64& rng, int n, FieldSpec f = kCx) {
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    Mat m(f, n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.set(i, j, Scalar(Cx(u(rng), u(rng))));
    return m;
}

Mat mat2(FieldSpec f, Scalar a, Scalar b, Scalar c, Scalar d) {
    return Mat::from_rows(f, {{a, b}, {c, d}});
}

}  // namespace

TEST_CASE("star is transpose under identity involution") {
    Mat m = mat2(kRat, Scalar(1L), Scalar(2L), Scalar(3L), Scalar(4L));
    Mat s = star(m);
    CHECK(s.at(0, 1).equals(Scalar(3L)));
    CHECK(s.at(1, 0).equals(Scalar(2L)));
}

TEST_CASE("star conjugates on conjugating fields") {
    Mat m(kGauss, 1, 1);
    m.set(0, 0, Scalar(GaussRat::i()));
    CHECK(star(m).at(0, 0).equals(Scalar(GaussRat(Rat(0), Rat(-1)))));
}

TEST_CASE("star involution and anti-automorphism") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 10; ++t) {
        Mat m = random_float(rng, 5), n = random_float(rng, 5);
        CHECK(star(star(m)).equals(m, 1e-14));
        CHECK(star(m * n).equals(star(n) * star(m), 1e-13));
    }
}

TEST_CASE("transport by the identity is a no-op") {
    Mat a = mat2(kRat, Scalar(2L), Scalar(0L), Scalar(0L), Scalar(3L));
    Mat f = Mat::identity(kRat, 2);
    PairTransport p{a, f};
    PairTransport q = transport(p, Mat::identity(kRat, 2));
    CHECK(q.a.equals(a, 0.0));
    CHECK(q.f.equals(f, 0.0));
}

TEST_CASE("exact transport, frozen by direct multiply") {
    // s = [[1,1],[0,1]], a = diag(2,3), f = I:
    //   a' = s^-1 a s = [[2,-1],[0,3]], f' = s^T s = [[1,1],[1,2]]
    Mat a = mat2(kRat, Scalar(2L), Scalar(0L), Scalar(0L), Scalar(3L));
    Mat f = Mat::identity(kRat, 2);
    Mat s = mat2(kRat, Scalar(1L), Scalar(1L), Scalar(0L), Scalar(1L));
    PairTransport q = transport({a, f}, s);
    CHECK(q.a.equals(mat2(kRat, Scalar(2L), Scalar(-1L), Scalar(0L), Scalar(3L)), 0.0));
    CHECK(q.f.equals(mat2(kRat, Scalar(1L), Scalar(1L), Scalar(1L), Scalar(2L)), 0.0));
}

TEST_CASE("transport is a group action and invertible") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 8; ++t) {
        Mat a = random_float(rng, 4), f = random_float(rng, 4);
        Mat s1 = random_float(rng, 4), s2 = random_float(rng, 4);
        PairTransport p{a, f};
        PairTransport lhs = transport(transport(p, s1), s2);
        PairTransport rhs = transport(p, s1 * s2);
        CHECK(lhs.a.equals(rhs.a, 1e-9));
        CHECK(lhs.f.equals(rhs.f, 1e-9));

        PairTransport back = transport(transport(p, s1), inverse(s1));
        CHECK(back.a.equals(a, 1e-9));
        CHECK(back.f.equals(f, 1e-9));
    }
}

TEST_CASE("transport rejects singular transforms") {
    Mat a = Mat::identity(kRat, 2), f = Mat::identity(kRat, 2);
    Mat s(kRat, 2, 2);
    s.set(0, 0, Scalar(1L));  // rank 1
    CHECK_THROWS_AS(transport({a, f}, s), Error);
}

TEST_CASE("solve basics and residual bound") {
    CHECK(solve(Mat::identity(kRat, 3), Mat::identity(kRat, 3)).equals(Mat::identity(kRat, 3), 0.0));

    Mat two(kRat, 1, 1), six(kRat, 1, 1);
    two.set(0, 0, Scalar(2L));
    six.set(0, 0, Scalar(6L));
    CHECK(solve(two, six).at(0, 0).equals(Scalar(3L)));

    std::mt19937_64 rng(9);
    for (int t = 0; t < 10; ++t) {
        Mat m = random_float(rng, 8);
        for (int i = 0; i < 8; ++i) m.set(i, i, m.at(i, i) + Scalar(Cx(6, 0)));  // well-conditioned
        Mat b = random_float(rng, 8);
        Mat x = solve(m, b);
        double resid = (m * x - b).norm_max();
        CHECK(resid <= 1e-8 * (m.norm_max() * x.norm_max() + b.norm_max()));
    }
}

TEST_CASE("determinant transforms with the congruence") {
    std::mt19937_64 rng(13);
    Mat f = random_float(rng, 4), s = random_float(rng, 4);
    Scalar lhs = det(star(s) * f * s);
    Scalar rhs = det(star(s)) * det(f) * det(s);
    CHECK(std::abs(lhs.to_cx() - rhs.to_cx()) <= 1e-9 * std::abs(rhs.to_cx()));
}

TEST_CASE("exact rank and singular solves") {
    Mat m(kGauss, 2, 2);
    m.set(0, 0, Scalar(1L));
    m.set(0, 1, Scalar(GaussRat::i()));
    m.set(1, 0, Scalar(GaussRat::i()));
    m.set(1, 1, Scalar(-1L));  // rank 1: row2 = i * row1
    CHECK(rank(m) == 1);
    CHECK_THROWS_AS(solve(m, Mat::identity(kGauss, 2)), Error);
    CHECK(det(m).is_zero());
}
