#include <random>

#include "doctest.h"
#include "iif/jordan.hpp"

using namespace iif;

namespace {

const FieldSpec kGauss{FieldBase::GaussianRational, Involution::Conjugation};
const FieldSpec kCx{FieldBase::ComplexFloat, Involution::Conjugation};

Mat random_invertible(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    while (true) {
        Mat m(kCx, n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m.set(i, j, Scalar(Cx(u(rng), u(rng))));
        for (int i = 0; i < n; ++i) m.set(i, i, m.at(i, i) + Scalar(Cx(2, 0)));
        if (nonsingular(m)) return m;
    }
}

void check_reconstruction(const Mat& a, const JordanData& jd, double tol) {
    Mat j = jordan_matrix(jd, a.field());
    Mat lhs = a * jd.t;
    Mat rhs = jd.t * j;
    CHECK(lhs.equals(rhs, tol));
    int dim = 0;
    for (const auto& ev : jd.eigenvalues) dim += ev.algebraic();
    CHECK(dim == a.rows());
}

}  // namespace

TEST_CASE("jordan of a single nilpotent-shift block") {
    Mat a = Mat::from_rows(kGauss, {{Scalar(1L), Scalar(1L)}, {Scalar(0L), Scalar(1L)}});
    JordanData jd = jordan_form(a);
    REQUIRE(jd.eigenvalues.size() == 1);
    CHECK(jd.eigenvalues[0].lambda.equals(Scalar(1L)));
    CHECK(jd.eigenvalues[0].sizes == std::vector<int>{2});
    check_reconstruction(a, jd, 0.0);
}

TEST_CASE("rotation matrix has eigenvalues +-i") {
    Mat a = Mat::from_rows(kGauss, {{Scalar(0L), Scalar(-1L)}, {Scalar(1L), Scalar(0L)}});
    JordanData jd = jordan_form(a);
    REQUIRE(jd.eigenvalues.size() == 2);
    CHECK(jd.eigenvalues[0].lambda.equals(Scalar(GaussRat(Rat(0), Rat(-1)))));
    CHECK(jd.eigenvalues[1].lambda.equals(Scalar(GaussRat(Rat(0), Rat(1)))));
    CHECK(jd.eigenvalues[0].sizes == std::vector<int>{1});
    CHECK(jd.eigenvalues[1].sizes == std::vector<int>{1});
    check_reconstruction(a, jd, 0.0);
}

TEST_CASE("repeated semisimple eigenvalue") {
    Mat a = Mat::from_rows(kGauss, {{Scalar(3L), Scalar(0L)}, {Scalar(0L), Scalar(3L)}});
    JordanData jd = jordan_form(a);
    REQUIRE(jd.eigenvalues.size() == 1);
    CHECK(jd.eigenvalues[0].sizes == std::vector<int>{1, 1});
    check_reconstruction(a, jd, 0.0);
}

TEST_CASE("exact spectrum outside Q(i) is refused") {
    // x^2 - 2: eigenvalues +-sqrt(2)
    Mat a = Mat::from_rows(kGauss, {{Scalar(0L), Scalar(2L)}, {Scalar(1L), Scalar(0L)}});
    CHECK_THROWS_AS(jordan_form(a), Error);
}

TEST_CASE("float jordan structure survives similarity") {
    std::mt19937_64 rng(5);
    // ground truth: J_2(1+2i) + J_1(1+2i) + J_2(-0.5)
    std::vector<std::vector<Cx>> rows(5, std::vector<Cx>(5, Cx(0, 0)));
    Cx l1(1, 2), l2(-0.5, 0);
    rows[0][0] = l1; rows[0][1] = 1; rows[1][1] = l1; rows[2][2] = l1;
    rows[3][3] = l2; rows[3][4] = 1; rows[4][4] = l2;
    Mat j(kCx, 5, 5);
    for (int i = 0; i < 5; ++i)
        for (int k = 0; k < 5; ++k) j.set(i, k, Scalar(rows[i][k]));

    for (int t = 0; t < 6; ++t) {
        Mat s = random_invertible(rng, 5);
        Mat a = s * j * inverse(s);
        JordanData jd = jordan_form(a);
        REQUIRE(jd.eigenvalues.size() == 2);
        CHECK(jd.eigenvalues[0].lambda.equals(Scalar(l2), 1e-6));
        CHECK(jd.eigenvalues[0].sizes == std::vector<int>{2});
        CHECK(jd.eigenvalues[1].lambda.equals(Scalar(l1), 1e-6));
        CHECK(jd.eigenvalues[1].sizes == std::vector<int>{2, 1});
        check_reconstruction(a, jd, 1e-6);
    }
}

TEST_CASE("weyr duality cross-check on an exact nilpotent") {
    // sizes {3, 1}: kernel dims 2, 3, 4
    Mat a(kGauss, 4, 4);
    a.set(0, 1, Scalar(1L));
    a.set(1, 2, Scalar(1L));
    JordanData jd = jordan_form(a);
    REQUIRE(jd.eigenvalues.size() == 1);
    CHECK(jd.eigenvalues[0].sizes == std::vector<int>{3, 1});
    check_reconstruction(a, jd, 0.0);
}
