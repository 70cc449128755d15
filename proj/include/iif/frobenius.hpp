#pragma once

#include <optional>
#include <string>
#include <vector>

#include "iif/linalg.hpp"

namespace iif {

/// Monic characteristic polynomial chi(x) = c0 + c1 x + ... + x^n with an
/// optional factorization hint chi = p^k. Exact coefficients only.
struct CharPoly {
    FieldSpec field{FieldBase::Rational, Involution::Identity};
    std::vector<GaussRat> c;  // c0..c_{n-1}

    struct Hint {
        std::vector<GaussRat> p;  // monic irreducible factor, coefficients p0..p_{m-1}
        int k = 1;
    };
    std::optional<Hint> hint;

    int degree() const { return int(c.size()); }
    void validate() const;
};

struct PhiExistence {
    bool exists = false;
    std::string reason;
};

/// A Frobenius block together with its structure matrix M = Phi_eps_zeta,
/// satisfying M = eps M* and M Phi = eps zeta (M Phi)* exactly.
struct PhiBlock {
    Mat phi;
    Mat m;
    int eps = 1, zeta = 1;
    std::vector<GaussRat> a_seq;  // a_2..a_{2n+1}; empty in the singular case
};

/// Companion matrix with sub-diagonal ones and last column -c0..-c_{n-1}.
Mat companion(const CharPoly& chi);

/// Existence test for Phi_eps_zeta. Irreducibility of the hint factor is the
/// caller's responsibility; without a hint the symmetry condition is checked
/// on chi itself, which is equivalent for prime powers.
PhiExistence phi_exists(const CharPoly& chi, int eps, int zeta);

/// Construct Phi_eps_zeta via the seed-and-recurrence scheme (nonsingular
/// case) or the alternating anti-diagonal Z_n(zeta) (singular case). All
/// PhiBlock invariants are verified exactly before returning.
PhiBlock make_phi(const CharPoly& chi, int eps, int zeta);

/// Canonical pair builders: type (i) (Phi, Phi_eps_zeta f(Phi)) when the
/// structure matrix exists, type (ii) the hyperbolic double block otherwise.
/// f_coeffs lists f0..f_d; pass empty for type (ii).
PairTransport make_pair(const CharPoly& chi, int eps, int zeta,
                        const std::vector<GaussRat>& f_coeffs);

/// Alternating anti-diagonal matrices from the canonical block zoo, exposed
/// here because the singular-case structure matrix is Z_n(zeta).
Mat z_matrix(FieldSpec field, int n);             // anti-identity Z_n
Mat z_matrix_signed(FieldSpec field, int n, int zeta);  // Z_n(zeta)

}  // namespace iif
