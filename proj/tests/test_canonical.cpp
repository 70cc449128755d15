#include <random>

#include "doctest.h"
#include "iif/canonical.hpp"

using namespace iif;

namespace {

const FieldSpec kGauss{FieldBase::GaussianRational, Involution::Conjugation};
const FieldSpec kCx{FieldBase::ComplexFloat, Involution::Conjugation};
const FieldSpec kRatId{FieldBase::Rational, Involution::Identity};

Mat cxm(const std::vector<std::vector<Cx>>& rows) {
    std::vector<std::vector<Scalar>> s;
    for (const auto& r : rows) {
        s.push_back({});
        for (Cx z : r) s.back().push_back(Scalar(z));
    }
    return Mat::from_rows(kCx, s);
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

CanonicalSummand adj_real(int n, Scalar lam, Scalar mu) {
    CanonicalSummand s;
    s.family = Family::AdjReal;
    s.n = n;
    s.lambda = lam;
    s.mu = mu;
    return s;
}

}  // namespace

TEST_CASE("make_summand frozen examples") {
    CanonicalSummand iso;
    iso.family = Family::IsoUnimodular;
    iso.n = 2;
    iso.lambda = Scalar(1L);
    iso.mu = Scalar(1L);
    PairTransport p = make_summand(iso, kGauss);
    CHECK(p.a.equals(Mat::from_rows(kGauss, {{Scalar(1L), Scalar(2L)}, {Scalar(0L), Scalar(1L)}}), 0.0));
    Mat f_expect(kGauss, 2, 2);
    f_expect.set(0, 1, Scalar(GaussRat(Rat(0), Rat(-1))));
    f_expect.set(1, 0, Scalar(GaussRat::i()));
    CHECK(p.f.equals(f_expect, 0.0));
    CHECK((p.a.star() * p.f * p.a).equals(p.f, 0.0));  // isometry, exactly

    PairTransport q = make_summand(adj_real(1, Scalar(3L), Scalar(-1L)), kGauss);
    CHECK(q.a.at(0, 0).equals(Scalar(3L)));
    CHECK(q.f.at(0, 0).equals(Scalar(-1L)));

    CanonicalSummand c2;
    c2.family = Family::GenC2;
    c2.n = 1;
    c2.lambda = Scalar::gaussian(Rat(0), Rat(1));  // a = 0, b = 1
    c2.zeta = -1;
    c2.eps = 1;
    c2.delta = 1;
    PairTransport r = make_summand(c2, kRatId);
    CHECK(r.a.equals(Mat::from_rows(kRatId, {{Scalar(0L), Scalar(-1L)}, {Scalar(1L), Scalar(0L)}}), 0.0));
    CHECK(r.f.equals(Mat::identity(kRatId, 2), 0.0));
    // A^T = -A with respect to I_2
    CHECK((r.f * r.a).equals(-(r.a.star() * r.f), 0.0));
}

TEST_CASE("make_summand rejects out-of-domain parameters") {
    CanonicalSummand s;
    s.family = Family::IsoUnimodular;
    s.n = 2;
    s.lambda = Scalar(2L);  // not unimodular
    s.mu = Scalar(1L);
    CHECK_THROWS_AS(make_summand(s, kGauss), Error);

    CanonicalSummand g;
    g.family = Family::GenA;
    g.n = 2;
    g.lambda = Scalar(1L);
    g.eps = -1;
    g.zeta = 1;
    g.variant = BlockVariant::Single;  // single needs eps = zeta = 1
    CHECK_THROWS_AS(make_summand(g, kRatId), Error);
    g.variant = BlockVariant::Paired;
    PairTransport p = make_summand(g, kRatId);
    CHECK(p.a.rows() == 4);
}

TEST_CASE("sign characteristic frozen examples") {
    Mat b1(kGauss, 1, 1), h1(kGauss, 1, 1);
    b1.set(0, 0, Scalar(3L));
    h1.set(0, 0, Scalar(-1L));
    auto sc1 = sign_characteristic(b1, h1, Scalar(3L));
    REQUIRE(sc1.size() == 1);
    CHECK(sc1[0].n == 1);
    CHECK(sc1[0].delta == -1);

    Mat b2(kGauss, 2, 2), h2(kGauss, 2, 2);
    b2.set(0, 1, Scalar(1L));
    h2.set(0, 1, Scalar(1L));
    h2.set(1, 0, Scalar(1L));
    auto sc2 = sign_characteristic(b2, h2, Scalar(0L));
    REQUIRE(sc2.size() == 1);
    CHECK(sc2[0].n == 2);
    CHECK(sc2[0].delta == 1);

    Mat b3(kGauss, 2, 2), h3(kGauss, 2, 2);
    b3.set(0, 0, Scalar(5L));
    b3.set(1, 1, Scalar(5L));
    h3.set(0, 0, Scalar(1L));
    h3.set(1, 1, Scalar(-1L));
    auto sc3 = sign_characteristic(b3, h3, Scalar(5L));
    REQUIRE(sc3.size() == 2);
    CHECK(sc3[0].delta == 1);
    CHECK(sc3[1].delta == -1);

    CHECK_THROWS_AS(sign_characteristic(b3, h3, Scalar(4L)), Error);
    Mat nsym(kGauss, 2, 2);
    nsym.set(0, 1, Scalar(1L));
    CHECK_THROWS_AS(sign_characteristic(nsym, h3, Scalar(0L)), Error);
}

TEST_CASE("canonicalize frozen small cases") {
    // isometric hyperbolic pair, already canonical
    Mat a = cxm({{Cx(2, 0), 0}, {0, Cx(0.5, 0)}});
    Mat f = cxm({{0, Cx(1, 0)}, {Cx(1, 0), 0}});
    CanonicalForm cf = canonicalize(a, f, OperatorKind::Isometric);
    REQUIRE(cf.summands.size() == 1);
    CHECK(cf.summands[0].family == Family::IsoHyperbolic);
    CHECK(cf.summands[0].n == 1);
    CHECK(cf.summands[0].lambda.equals(Scalar(Cx(2, 0)), 1e-8));
    CHECK(cf.summands[0].mu.equals(Scalar(Cx(1, 0)), 1e-8));

    // 1x1 selfadjoint with negative form, exact all the way
    Mat b(kGauss, 1, 1), h(kGauss, 1, 1);
    b.set(0, 0, Scalar(3L));
    h.set(0, 0, Scalar(-1L));
    CanonicalForm cf2 = canonicalize(b, h, OperatorKind::Selfadjoint);
    CHECK(cf2.exact_mode);
    REQUIRE(cf2.summands.size() == 1);
    CHECK(cf2.summands[0].family == Family::AdjReal);
    CHECK(cf2.summands[0].lambda.equals(Scalar(3L)));
    CHECK(cf2.summands[0].mu.equals(Scalar(-1L)));
    REQUIRE(cf2.witness.has_value());
    CHECK(cf2.witness->is_exact());
    PairTransport moved = transport({b, h}, *cf2.witness);
    PairTransport target = materialize(cf2);
    CHECK(moved.a.equals(target.a, 0.0));
    CHECK(moved.f.equals(target.f, 0.0));

    // paired nonreal eigenvalues
    Mat a3 = cxm({{Cx(0, 1), 0}, {0, Cx(0, -1)}});
    Mat f3 = cxm({{0, Cx(1, 0)}, {Cx(1, 0), 0}});
    CanonicalForm cf3 = canonicalize(a3, f3, OperatorKind::Selfadjoint);
    REQUIRE(cf3.summands.size() == 1);
    CHECK(cf3.summands[0].family == Family::AdjPaired);
    CHECK(cf3.summands[0].n == 1);
    CHECK(cf3.summands[0].lambda.equals(Scalar(Cx(0, 1)), 1e-8));
}

TEST_CASE("normalize frozen examples and idempotence") {
    CanonicalSummand s1;
    s1.family = Family::IsoHyperbolic;
    s1.n = 1;
    s1.lambda = Scalar(Cx(0.5, 0));
    s1.mu = Scalar(Cx(-1, 0));
    CanonicalSummand n1 = normalize(s1);
    CHECK(n1.lambda.equals(Scalar(Cx(2, 0)), 1e-12));
    CHECK(n1.mu.equals(Scalar(Cx(1, 0)), 1e-12));

    CanonicalSummand s2;
    s2.family = Family::AdjPaired;
    s2.n = 1;
    s2.lambda = Scalar(Cx(2, -1));
    s2.mu = Scalar(Cx(0, 1));
    CanonicalSummand n2 = normalize(s2);
    CHECK(n2.lambda.equals(Scalar(Cx(2, 1)), 1e-12));
    CHECK(n2.mu.equals(Scalar(Cx(0, 1)), 1e-12));

    CanonicalSummand s3 = adj_real(1, Scalar(3L), Scalar(-1L));
    CanonicalSummand n3 = normalize(s3);
    CHECK(n3.lambda.equals(s3.lambda));
    CHECK(n3.mu.equals(s3.mu));

    for (const CanonicalSummand& s : {n1, n2, n3}) {
        CanonicalSummand again = normalize(s);
        CHECK(summand_equal(again, s, false, {}));
    }
}

TEST_CASE("basis invariance and witness soundness") {
    std::mt19937_64 rng(31);
    // AdjReal{2, 1, mu=1} + AdjReal{1, -2, mu=-1} + AdjPaired{1, 1+i}
    std::vector<CanonicalSummand> gt;
    gt.push_back(adj_real(2, Scalar(1L), Scalar(1L)));
    gt.push_back(adj_real(1, Scalar(-2L), Scalar(-1L)));
    CanonicalSummand pr;
    pr.family = Family::AdjPaired;
    pr.n = 1;
    pr.lambda = Scalar(Cx(1, 1));
    pr.mu = Scalar(1L);
    gt.push_back(pr);

    std::vector<Mat> as, fs;
    for (const auto& s : gt) {
        PairTransport p = make_summand(s, kCx);
        as.push_back(p.a);
        fs.push_back(p.f);
    }
    Mat a0 = direct_sum(as), f0 = direct_sum(fs);

    CanonicalForm base = canonicalize(a0, f0, OperatorKind::Selfadjoint);
    CHECK(summand_multisets_equal(base.summands, gt, false, {}));

    for (int t = 0; t < 5; ++t) {
        Mat s = random_invertible(rng, a0.rows());
        PairTransport moved = transport({a0, f0}, s);
        CanonicalForm cf = canonicalize(moved.a, moved.f, OperatorKind::Selfadjoint);
        CHECK(summand_multisets_equal(cf.summands, gt, false, {}));
        REQUIRE(cf.witness.has_value());
        PairTransport chk = transport({moved.a, moved.f}, *cf.witness);
        PairTransport target = materialize(cf);
        CHECK(chk.a.equals(target.a, 1e-7));
        CHECK(chk.f.equals(target.f, 1e-7));
    }
}

TEST_CASE("direct sum homomorphism") {
    Mat a1 = cxm({{Cx(2, 0), 0}, {0, Cx(0.5, 0)}});
    Mat f1 = cxm({{0, Cx(1, 0)}, {Cx(1, 0), 0}});
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 2 * M_PI);
    Mat a2(kCx, 2, 2), f2(kCx, 2, 2);
    a2.set(0, 0, Scalar(std::polar(1.0, u(rng))));
    a2.set(1, 1, Scalar(std::polar(1.0, u(rng))));
    f2.set(0, 0, Scalar(Cx(0, 1)));
    f2.set(1, 1, Scalar(Cx(-3, 0)));

    CanonicalForm c1 = canonicalize(a1, f1, OperatorKind::Isometric);
    CanonicalForm c2 = canonicalize(a2, f2, OperatorKind::Isometric);
    CanonicalForm c12 = canonicalize(Mat::direct_sum(a1, a2), Mat::direct_sum(f1, f2),
                                     OperatorKind::Isometric);
    std::vector<CanonicalSummand> joined = c1.summands;
    joined.insert(joined.end(), c2.summands.begin(), c2.summands.end());
    CHECK(summand_multisets_equal(c12.summands, joined, false, {}));
}

TEST_CASE("skewadjoint reduction path") {
    Mat a = cxm({{0, Cx(1, 0)}, {Cx(-1, 0), 0}});
    Mat f = Mat::identity(kCx, 2);
    CanonicalForm cf = canonicalize(a, f, OperatorKind::Skewadjoint);
    CHECK(cf.note.op_scaled_by_i);
    REQUIRE(cf.summands.size() == 2);
    for (const auto& s : cf.summands) CHECK(s.family == Family::AdjReal);
    REQUIRE(cf.witness.has_value());
    PairTransport moved = transport({a, f}, *cf.witness);
    PairTransport target = materialize(cf);
    CHECK(moved.a.equals(target.a, 1e-8));
    CHECK(moved.f.equals(target.f, 1e-8));
}

TEST_CASE("isomorphism decisions") {
    // transported pair is isomorphic to itself with a verified witness
    std::mt19937_64 rng(41);
    Mat a = cxm({{Cx(2, 0), 0}, {0, Cx(0.5, 0)}});
    Mat f = cxm({{0, Cx(1, 0)}, {Cx(1, 0), 0}});
    Mat s = random_invertible(rng, 2);
    PairTransport moved = transport({a, f}, s);
    IsoResult r1 = isomorphic_pairs(a, f, moved.a, moved.f, OperatorKind::Isometric);
    CHECK(r1.isomorphic);
    REQUIRE(r1.witness.has_value());

    // lambda vs conj(lambda)^{-1} replacement
    Mat a2 = cxm({{Cx(0.5, 0), 0}, {0, Cx(2, 0)}});
    IsoResult r2 = isomorphic_pairs(a, f, a2, f, OperatorKind::Isometric);
    CHECK(r2.isomorphic);

    // signature mismatch: negative control
    Mat i2 = Mat::identity(kCx, 2);
    Mat fplus = cxm({{Cx(1, 0), 0}, {0, Cx(1, 0)}});
    Mat fmix = cxm({{Cx(1, 0), 0}, {0, Cx(-1, 0)}});
    IsoResult r3 = isomorphic_pairs(i2, fplus, i2, fmix, OperatorKind::Selfadjoint);
    CHECK(!r3.isomorphic);
}

TEST_CASE("canonicalize on an already-canonical pair is a fixpoint") {
    CanonicalSummand s;
    s.family = Family::IsoUnimodular;
    s.n = 3;
    s.lambda = Scalar(std::polar(1.0, 0.7));
    s.mu = Scalar(std::polar(1.0, 2.2));
    PairTransport p = make_summand(s, kCx);
    CanonicalForm cf = canonicalize(p.a, p.f, OperatorKind::Isometric);
    REQUIRE(cf.summands.size() == 1);
    CHECK(summand_equal(cf.summands[0], normalize(s), false, {}));
    PairTransport again = materialize(cf);
    CHECK(again.a.equals(p.a, 1e-8));
    CHECK(again.f.equals(p.f, 1e-8));
}

TEST_CASE("canonicalize gates on the requested kind") {
    Mat a = cxm({{Cx(2, 0), 0}, {0, Cx(3, 0)}});  // selfadjoint but not isometric
    Mat f = Mat::identity(kCx, 2);
    CHECK_THROWS_AS(canonicalize(a, f, OperatorKind::Isometric), Error);
    CHECK_THROWS_AS(canonicalize(a, f, OperatorKind::Skewadjoint), Error);
    CHECK(canonicalize(a, f, OperatorKind::Selfadjoint).summands.size() == 2);

    Mat sing(kCx, 2, 2);
    sing.set(0, 0, Scalar(Cx(1, 0)));
    CHECK_THROWS_AS(canonicalize(a, sing, OperatorKind::Selfadjoint), Error);
}

TEST_CASE("group factors frozen examples") {
    GroupFactors g1 = group_factors(Mat::identity(kCx, 3), GroupTarget::Group);
    REQUIRE(g1.factors.size() == 1);
    CHECK(g1.factors[0].p == 3);
    CHECK(g1.factors[0].q == 0);
    CHECK(g1.rendering == "U(D) = U(3,0)");

    Mat f2 = cxm({{Cx(0, 2), 0, 0}, {0, Cx(-3, 0), 0}, {0, 0, Cx(5, 0)}});
    GroupFactors g2 = group_factors(f2, GroupTarget::Group);
    REQUIRE(g2.factors.size() == 2);
    CHECK(g2.factors[0].e.equals(Scalar(Cx(1, 0)), 1e-9));
    CHECK(g2.factors[0].p == 1);
    CHECK(g2.factors[0].q == 1);
    CHECK(g2.factors[1].e.equals(Scalar(Cx(0, 1)), 1e-9));
    CHECK(g2.factors[1].p == 1);
    CHECK(g2.factors[1].q == 0);

    Mat f3 = cxm({{Cx(1, 0), 0, 0, 0},
                  {0, Cx(-1, 0), 0, 0},
                  {0, 0, Cx(0, 1), 0},
                  {0, 0, 0, Cx(0, -1)}});
    GroupFactors g3 = group_factors(f3, GroupTarget::LieAlgebra);
    REQUIRE(g3.factors.size() == 2);
    CHECK(g3.factors[0].p == 1);
    CHECK(g3.factors[0].q == 1);
    CHECK(g3.factors[1].p == 1);
    CHECK(g3.factors[1].q == 1);
    CHECK(g3.rendering == "S(D) = S(I_{1,1}) x S(I_{1,1})");
}

TEST_CASE("replacement witnesses for identity-involution families") {
    CanonicalSummand g;
    g.family = Family::GenA;
    g.n = 2;
    g.lambda = Scalar(3L);
    g.eps = 1;
    g.zeta = -1;
    g.variant = BlockVariant::Paired;
    auto rep = replacement_witness(g, kRatId);
    REQUIRE(rep.has_value());
    CHECK(rep->other.lambda.equals(Scalar(-3L)));

    CanonicalSummand c2;
    c2.family = Family::GenC2;
    c2.n = 1;
    c2.lambda = Scalar::gaussian(Rat(0), Rat(2));
    c2.zeta = -1;
    c2.eps = 1;  // K = I_2 for n = 1
    c2.delta = 1;
    auto rep2 = replacement_witness(c2, kRatId);
    REQUIRE(rep2.has_value());
    CHECK(rep2->other.delta == 1);  // identity-type K keeps the sign

    CanonicalSummand c3 = c2;
    c3.eps = -1;  // rotational K for n = 1
    auto rep3 = replacement_witness(c3, kRatId);
    REQUIRE(rep3.has_value());
    CHECK(rep3->other.delta == -1);  // rotational K flips the sign with b
}
