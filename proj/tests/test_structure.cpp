#include <random>

#include "doctest.h"
#include "iif/structure.hpp"

using namespace iif;

namespace {

const FieldSpec kRat{FieldBase::Rational, Involution::Identity};
const FieldSpec kGauss{FieldBase::GaussianRational, Involution::Conjugation};
const FieldSpec kCx{FieldBase::ComplexFloat, Involution::Conjugation};

Mat cx(const std::vector<std::vector<Cx>>& rows) {
    std::vector<std::vector<Scalar>> s;
    for (const auto& r : rows) {
        s.push_back({});
        for (Cx z : r) s.back().push_back(Scalar(z));
    }
    return Mat::from_rows(kCx, s);
}

Mat random_unitary_diag(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> u(0.0, 2 * M_PI);
    Mat m(kCx, n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, Scalar(std::polar(1.0, u(rng))));
    return m;
}

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

}  // namespace

TEST_CASE("classify the frozen examples") {
    // identity operator is isometric for any nonsingular form
    Mat f = cx({{Cx(0, 1), Cx(1, 0)}, {Cx(0, 0), Cx(2, 0)}});
    StructureReport r1 = classify(Mat::identity(kCx, 2), f);
    CHECK(r1.isometric);
    CHECK(r1.nondegenerate);

    // a = diag(2, 1/2) with the flip form is isometric
    Mat a2 = cx({{Cx(2, 0), 0}, {0, Cx(0.5, 0)}});
    Mat f2 = cx({{0, Cx(1, 0)}, {Cx(1, 0), 0}});
    StructureReport r2 = classify(a2, f2);
    CHECK(r2.isometric);
    CHECK(!r2.selfadjoint);
    CHECK(r2.form_kind == FormKind::Hermitian);

    // rotation against I over the reals: skewadjoint and isometric
    Mat a3 = Mat::from_rows(kRat, {{Scalar(0L), Scalar(1L)}, {Scalar(-1L), Scalar(0L)}});
    StructureReport r3 = classify(a3, Mat::identity(kRat, 2));
    CHECK(r3.skewadjoint);
    CHECK(r3.isometric);
    CHECK(!r3.selfadjoint);
}

TEST_CASE("hermitize applies the stated substitutions") {
    // skew-Hermitian form -> i F Hermitian
    Mat a = Mat::identity(kGauss, 2);
    Mat f(kGauss, 2, 2);
    f.set(0, 1, Scalar(1L));
    f.set(1, 0, Scalar(-1L));
    HermitizeResult hr = hermitize(a, f);
    CHECK(hr.note.form_scaled_by_i);
    CHECK(classify(hr.a, hr.f).form_kind == FormKind::Hermitian);
    CHECK(hr.f.at(0, 1).equals(Scalar(GaussRat::i())));

    // selfadjoint against Hermitian: untouched
    Mat h = Mat::identity(kGauss, 2);
    Mat b = Mat::from_rows(kGauss, {{Scalar(1L), Scalar(2L)}, {Scalar(2L), Scalar(5L)}});
    HermitizeResult hr2 = hermitize(b, h);
    CHECK(hr2.note.empty());
    CHECK(hr2.a.equals(b, 0.0));

    // skewadjoint wrt I -> i A selfadjoint
    Mat sk = Mat::from_rows(kGauss, {{Scalar(0L), Scalar(1L)}, {Scalar(-1L), Scalar(0L)}});
    HermitizeResult hr3 = hermitize(sk, h);
    CHECK(hr3.note.op_scaled_by_i);
    CHECK(classify(hr3.a, hr3.f).selfadjoint);

    // nothing applies
    Mat weird = cx({{Cx(1, 0), Cx(1, 0)}, {Cx(0, 0), Cx(1, 0)}});
    CHECK_THROWS_AS(hermitize(Mat::identity(kCx, 2), weird), Error);
}

TEST_CASE("diagonalize_form: flip form and frozen negative") {
    Mat f = cx({{0, Cx(1, 0)}, {Cx(1, 0), 0}});
    DiagForm df = diagonalize_form(f);
    Mat d = df.s.star() * f * df.s;
    CHECK(d.equals(df.d, 1e-10));
    int plus = 0, minus = 0;
    for (int i = 0; i < 2; ++i) {
        double v = df.d.at(i, i).to_cx().real();
        CHECK(std::abs(df.d.at(i, i).to_cx().imag()) < 1e-10);
        (v > 0 ? plus : minus)++;
    }
    CHECK(plus == 1);
    CHECK(minus == 1);

    // f = [[0,2],[1,0]]: cosquare diag(1/2, 2) is not unimodular
    Mat bad = cx({{0, Cx(2, 0)}, {Cx(1, 0), 0}});
    CHECK_THROWS_AS(diagonalize_form(bad), Error);

    Mat badx(kGauss, 2, 2);
    badx.set(0, 1, Scalar(2L));
    badx.set(1, 0, Scalar(1L));
    CHECK_THROWS_AS(diagonalize_form(badx), Error);

    // already diagonal: identity transform
    Mat diag = cx({{Cx(0, 2), 0}, {0, Cx(-3, 0)}});
    DiagForm dd = diagonalize_form(diag);
    CHECK(dd.s.equals(Mat::identity(kCx, 2), 0.0));
}

TEST_CASE("exact diagonalization stays exact on mixed cosets") {
    // F = diag(2i, -3, 5) conjugated by an integer unimodular congruence
    Mat d0(kGauss, 3, 3);
    d0.set(0, 0, Scalar(GaussRat(Rat(0), Rat(2))));
    d0.set(1, 1, Scalar(-3L));
    d0.set(2, 2, Scalar(5L));
    Mat s(kGauss, 3, 3);
    std::vector<std::vector<long>> se = {{1, 2, 0}, {0, 1, -1}, {1, 0, 1}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) s.set(i, j, Scalar(se[i][j]));
    REQUIRE(nonsingular(s));
    Mat f = s.star() * d0 * s;
    DiagForm df = diagonalize_form(f);
    CHECK(!df.downgraded);
    CHECK(df.s.is_exact());
    Mat check = df.s.star() * f * df.s;
    CHECK(check.equals(df.d, 0.0));
}

TEST_CASE("split_cosets on the frozen diagonal example") {
    // f = diag(2i, -3, 5) with a compatible diagonal unitary operator
    Mat f = cx({{Cx(0, 2), 0, 0}, {0, Cx(-3, 0), 0}, {0, 0, Cx(5, 0)}});
    std::mt19937_64 rng(2);
    Mat a = random_unitary_diag(rng, 3);
    CosetSplit sp = split_cosets(a, f);
    REQUIRE(sp.blocks.size() == 2);
    // phases ascending: e = 1 block (p=1,q=1) then e = i block (p=1,q=0)
    CHECK(sp.blocks[0].e.equals(Scalar(Cx(1, 0)), 1e-9));
    CHECK(sp.blocks[0].p == 1);
    CHECK(sp.blocks[0].q == 1);
    CHECK(sp.blocks[1].e.equals(Scalar(Cx(0, 1)), 1e-9));
    CHECK(sp.blocks[1].p == 1);
    CHECK(sp.blocks[1].q == 0);

    // reconstruct both matrices from the returned data
    Mat dmat = split_form_matrix(sp, f.field());
    CHECK((sp.s.star() * f * sp.s).equals(dmat, 1e-9));
    Mat ablocks = Mat::direct_sum(sp.blocks[0].a_block, sp.blocks[1].a_block);
    CHECK(solve(sp.s, a * sp.s).equals(ablocks, 1e-9));
}

TEST_CASE("split multiset is invariant under transport") {
    std::mt19937_64 rng(17);
    Mat f = cx({{Cx(0, 1), 0, 0}, {0, Cx(1, 0), 0}, {0, 0, Cx(-1, 0)}});
    Mat a = random_unitary_diag(rng, 3);
    CosetSplit base = split_cosets(a, f);
    for (int t = 0; t < 5; ++t) {
        Mat s = random_invertible(rng, 3);
        PairTransport moved = transport({a, f}, s);
        CosetSplit sp = split_cosets(moved.a, moved.f);
        REQUIRE(sp.blocks.size() == base.blocks.size());
        for (size_t b = 0; b < sp.blocks.size(); ++b) {
            CHECK(sp.blocks[b].e.equals(base.blocks[b].e, 1e-7));
            CHECK(sp.blocks[b].p == base.blocks[b].p);
            CHECK(sp.blocks[b].q == base.blocks[b].q);
        }
    }
}

TEST_CASE("degenerate and incompatible inputs are rejected") {
    Mat sing(kCx, 2, 2);
    sing.set(0, 0, Scalar(Cx(1, 0)));
    CHECK_THROWS_AS(diagonalize_form(sing), Error);
    CHECK_THROWS_AS(split_cosets(Mat::identity(kCx, 2), sing), Error);

    // an operator with no isometric/adjoint relation to the form at all
    Mat f = cx({{Cx(1, 0), 0}, {0, Cx(0, 1)}});
    Mat a = cx({{Cx(1, 0), Cx(1, 0)}, {0, Cx(2, 0)}});
    auto code = [&]() {
        try {
            split_cosets(a, f);
        } catch (const Error& e) {
            return e.code();
        }
        return Errc::ZeroScalar;
    }();
    CHECK(code == Errc::NotApplicable);
}

TEST_CASE("positive definite Hermitian form gives a single coset") {
    std::mt19937_64 rng(23);
    Mat s = random_invertible(rng, 4);
    Mat f = s.star() * s;  // positive definite
    Mat a = Mat::identity(kCx, 4);
    CosetSplit sp = split_cosets(a, f);
    REQUIRE(sp.blocks.size() == 1);
    CHECK(sp.blocks[0].e.equals(Scalar(Cx(1, 0)), 1e-8));
    CHECK(sp.blocks[0].p == 4);
    CHECK(sp.blocks[0].q == 0);
}
