#include <random>

#include "doctest.h"
#include "iif/frobenius.hpp"

using namespace iif;

namespace {

const FieldSpec kRatId{FieldBase::Rational, Involution::Identity};
const FieldSpec kGaussId{FieldBase::GaussianRational, Involution::Identity};
const FieldSpec kGaussConj{FieldBase::GaussianRational, Involution::Conjugation};

CharPoly chi_of(FieldSpec f, std::vector<long> coeffs) {
    CharPoly chi;
    chi.field = f;
    for (long c : coeffs) chi.c.push_back(GaussRat(c));
    return chi;
}

// Test-only oracle: characteristic polynomial via cofactor expansion of
// det(xI - C) over polynomials with exact coefficients.
using Poly = std::vector<GaussRat>;  // ascending coefficients

Poly poly_mul(const Poly& a, const Poly& b) {
    Poly out(a.size() + b.size() - 1, GaussRat());
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}
Poly poly_add(Poly a, const Poly& b) {
    if (b.size() > a.size()) a.resize(b.size(), GaussRat());
    for (size_t i = 0; i < b.size(); ++i) a[i] += b[i];
    return a;
}
Poly poly_neg(Poly a) {
    for (auto& x : a) x = -x;
    return a;
}

Poly det_poly(const std::vector<std::vector<Poly>>& m) {
    size_t n = m.size();
    if (n == 1) return m[0][0];
    Poly acc{GaussRat()};
    for (size_t i = 0; i < n; ++i) {
        std::vector<std::vector<Poly>> minor_m;
        for (size_t r = 0; r < n; ++r) {
            if (r == i) continue;
            std::vector<Poly> row;
            for (size_t c = 1; c < n; ++c) row.push_back(m[r][c]);
            minor_m.push_back(std::move(row));
        }
        Poly term = poly_mul(m[i][0], det_poly(minor_m));
        acc = poly_add(acc, i % 2 == 0 ? term : poly_neg(term));
    }
    return acc;
}

Poly char_poly_oracle(const Mat& c) {
    int n = c.rows();
    std::vector<std::vector<Poly>> m(n, std::vector<Poly>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            GaussRat v = c.at(i, j).exact_value();
            if (i == j)
                m[i][j] = Poly{-v, GaussRat(1L)};
            else
                m[i][j] = Poly{-v};
        }
    return det_poly(m);
}

Rat random_rat(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-6, 6);
    std::uniform_int_distribution<long> den(1, 3);
    Rat r(num(rng), den(rng));
    r.canonicalize();
    return r;
}

// Monic factor p with p(x) = zeta^deg conj(p)(zeta x), by construction.
std::vector<GaussRat> random_symmetric_factor(std::mt19937_64& rng, FieldSpec f, int zeta,
                                              int deg) {
    std::vector<GaussRat> p(size_t(deg), GaussRat{});
    for (int j = 0; j < deg; ++j) {
        bool even_pos = (deg + j) % 2 == 0;
        if (zeta == 1) {
            p[size_t(j)] = f.conjugating() ? GaussRat(random_rat(rng))
                                           : GaussRat(random_rat(rng), random_rat(rng));
            if (!f.conjugating() && f.base == FieldBase::Rational) p[size_t(j)].im = 0;
        } else if (f.involution == Involution::Identity) {
            p[size_t(j)] = even_pos ? GaussRat(random_rat(rng)) : GaussRat();
        } else {
            p[size_t(j)] = even_pos ? GaussRat(random_rat(rng)) : GaussRat(Rat(0), random_rat(rng));
        }
    }
    if (p[0].is_zero()) {
        // repair the constant term inside its symmetry class
        if (zeta == -1 && deg % 2 == 1)
            p[0] = GaussRat(Rat(0), Rat(1));
        else
            p[0] = GaussRat(1L);
    }
    return p;
}

CharPoly power_of(FieldSpec f, const std::vector<GaussRat>& p, int k) {
    CharPoly chi;
    chi.field = f;
    chi.hint = CharPoly::Hint{p, k};
    std::vector<GaussRat> full = p;
    full.push_back(GaussRat(1L));
    std::vector<GaussRat> acc{GaussRat(1L)};
    for (int t = 0; t < k; ++t) {
        std::vector<GaussRat> next(acc.size() + full.size() - 1, GaussRat());
        for (size_t i = 0; i < acc.size(); ++i)
            for (size_t j = 0; j < full.size(); ++j) next[i + j] += acc[i] * full[j];
        acc = std::move(next);
    }
    acc.pop_back();
    chi.c = std::move(acc);
    return chi;
}

void check_phi_block(const PhiBlock& pb) {
    Mat ms = pb.m.star();
    if (pb.eps == -1) ms = -ms;
    CHECK(pb.m.equals(ms, 0.0));
    Mat mphi = pb.m * pb.phi;
    Mat rhs = mphi.star();
    if (pb.eps * pb.zeta == -1) rhs = -rhs;
    CHECK(mphi.equals(rhs, 0.0));
    CHECK(nonsingular(pb.m));
}

}  // namespace

TEST_CASE("companion matrices") {
    CharPoly lin = chi_of(kRatId, {-5});  // x - 5
    Mat c1 = companion(lin);
    CHECK(c1.at(0, 0).equals(Scalar(5L)));

    CharPoly quad = chi_of(kRatId, {1, 0});  // x^2 + 1
    Mat c2 = companion(quad);
    CHECK(c2.equals(Mat::from_rows(kRatId, {{Scalar(0L), Scalar(-1L)}, {Scalar(1L), Scalar(0L)}}), 0.0));
}

TEST_CASE("characteristic polynomial of the companion equals chi") {
    std::mt19937_64 rng(21);
    for (int deg = 1; deg <= 6; ++deg) {
        CharPoly chi;
        chi.field = kGaussId;
        for (int j = 0; j < deg; ++j) chi.c.push_back(GaussRat(random_rat(rng), random_rat(rng)));
        Poly cp = char_poly_oracle(companion(chi));
        REQUIRE(cp.size() == size_t(deg + 1));
        CHECK(cp[size_t(deg)] == GaussRat(1L));
        for (int j = 0; j < deg; ++j) CHECK(cp[size_t(j)] == chi.c[size_t(j)]);
    }
}

TEST_CASE("phi existence conditions") {
    CHECK(phi_exists(chi_of(kRatId, {1, 0}), 1, 1).exists);       // x^2 + 1
    CHECK(!phi_exists(chi_of(kRatId, {-5}), 1, -1).exists);       // x + 5 != x - 5
    CHECK(!phi_exists(chi_of(kRatId, {0, 0, 0, 0}), 1, -1).exists);  // x^4: eps != zeta
    CHECK(phi_exists(chi_of(kRatId, {0, 0, 0, 0}), -1, -1).exists);
    CHECK(phi_exists(chi_of(kRatId, {0, 0, 0}), 1, -1).exists);   // x^3: eps = 1, n odd
    CHECK(!phi_exists(chi_of(kRatId, {0, 0, 0}), -1, -1).exists);
    CHECK(!phi_exists(chi_of(kRatId, {1, 0}), -1, 1).exists);     // (-1,1) excluded
    CHECK_THROWS_AS(phi_exists(chi_of(kGaussConj, {1, 0}), -1, 1), Error);
    // zero constant term with a nonzero tail is not a Frobenius block
    CHECK_THROWS_AS(phi_exists(chi_of(kRatId, {0, 1}), 1, 1), Error);
}

TEST_CASE("make_phi frozen small cases") {
    PhiBlock pb = make_phi(chi_of(kRatId, {1, 0}), 1, 1);  // x^2 + 1
    REQUIRE(pb.a_seq.size() == 4);  // a_2..a_5
    CHECK(pb.a_seq[0] == GaussRat(1L));
    CHECK(pb.a_seq[1] == GaussRat(0L));
    CHECK(pb.a_seq[2] == GaussRat(-1L));
    CHECK(pb.m.equals(Mat::from_rows(kRatId, {{Scalar(1L), Scalar(0L)}, {Scalar(0L), Scalar(-1L)}}), 0.0));
    Mat mphi = pb.m * pb.phi;
    CHECK(mphi.equals(Mat::from_rows(kRatId, {{Scalar(0L), Scalar(-1L)}, {Scalar(-1L), Scalar(0L)}}), 0.0));
    check_phi_block(pb);

    PhiBlock sing = make_phi(chi_of(kRatId, {0, 0}), -1, -1);  // x^2
    CHECK(sing.m.equals(Mat::from_rows(kRatId, {{Scalar(0L), Scalar(-1L)}, {Scalar(1L), Scalar(0L)}}), 0.0));
    check_phi_block(sing);

    PhiBlock one = make_phi(chi_of(kRatId, {-5}), 1, 1);  // x - 5
    CHECK(one.m.at(0, 0).equals(Scalar(1L)));
    check_phi_block(one);

    CHECK_THROWS_AS(make_phi(chi_of(kRatId, {-5}), 1, -1), Error);
}

TEST_CASE("recurrence symmetry a_t = eps zeta^t conj(a_t)") {
    std::mt19937_64 rng(33);
    struct Combo { FieldSpec f; int eps, zeta; };
    std::vector<Combo> combos = {
        {kRatId, 1, 1}, {kGaussId, 1, 1}, {kGaussConj, 1, 1},
        {kRatId, 1, -1}, {kGaussConj, 1, -1}, {kRatId, -1, -1}, {kGaussId, -1, -1},
    };
    for (const auto& cb : combos) {
        for (int rep = 0; rep < 6; ++rep) {
            int deg = cb.zeta == -1 && cb.f.involution == Involution::Identity
                          ? 2 * (1 + int(rng() % 2))
                          : 1 + int(rng() % 4);
            int k = (deg <= 4 && rng() % 2 == 0) ? 2 : 1;
            CharPoly chi = power_of(cb.f, random_symmetric_factor(rng, cb.f, cb.zeta, deg), k);
            REQUIRE(phi_exists(chi, cb.eps, cb.zeta).exists);
            PhiBlock pb = make_phi(chi, cb.eps, cb.zeta);
            check_phi_block(pb);
            // a_t = eps zeta^t conj(a_t), t = 2..2n+1
            for (size_t idx = 0; idx < pb.a_seq.size(); ++idx) {
                long t = long(idx) + 2;
                GaussRat rhs = cb.f.conjugating() ? pb.a_seq[idx].conj() : pb.a_seq[idx];
                long sgn = long(cb.eps) * ((cb.zeta == -1 && t % 2 == 1) ? -1 : 1);
                if (sgn < 0) rhs = -rhs;
                CHECK(pb.a_seq[idx] == rhs);
            }
            // eps = zeta = -1 nonsingular forces c_1 = 0
            if (cb.eps == -1) CHECK(chi.c[1].is_zero());
        }
    }
}

TEST_CASE("make_pair type (i) and (ii)") {
    PairTransport p1 = make_pair(chi_of(kRatId, {-5}), 1, 1, {GaussRat(1L)});
    CHECK(p1.a.at(0, 0).equals(Scalar(5L)));
    CHECK(p1.f.at(0, 0).equals(Scalar(1L)));

    for (int eps : {1, -1}) {
        PairTransport p2 = make_pair(chi_of(kRatId, {-5}), eps, -1, {});
        CHECK(p2.a.equals(Mat::from_rows(kRatId, {{Scalar(5L), Scalar(0L)}, {Scalar(0L), Scalar(-5L)}}), 0.0));
        CHECK(p2.f.at(0, 1).equals(Scalar(long(eps))));
        CHECK(p2.f.at(1, 0).equals(Scalar(1L)));
        // F A = zeta A* F, exactly
        Mat lhs = p2.f * p2.a;
        Mat rhs = -(p2.a.star() * p2.f);
        CHECK(lhs.equals(rhs, 0.0));
    }

    PairTransport p3 = make_pair(chi_of(kRatId, {1, 0}), 1, 1, {GaussRat(2L)});
    PhiBlock pb = make_phi(chi_of(kRatId, {1, 0}), 1, 1);
    CHECK(p3.f.equals(pb.m.scaled(Scalar(2L)), 0.0));

    CHECK_THROWS_AS(make_pair(chi_of(kRatId, {-5}), 1, 1, {}), Error);
    CHECK_THROWS_AS(make_pair(chi_of(kRatId, {-5}), 1, -1, {GaussRat(1L)}), Error);
    // f must satisfy f(x) = conj(f)(zeta x): x fails for zeta = -1
    CHECK_THROWS_AS(make_pair(chi_of(kRatId, {1, 0}), 1, -1, {GaussRat(0L), GaussRat(1L)}), Error);
}
