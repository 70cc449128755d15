#pragma once

#include <optional>
#include <string>
#include <vector>

#include "iif/structure.hpp"

namespace iif {

enum class Family { IsoUnimodular, IsoHyperbolic, AdjReal, AdjPaired, GenA, GenB, GenC1, GenC2 };
enum class BlockVariant { Single, Paired };
enum class OperatorKind { Isometric, Selfadjoint, Skewadjoint };

std::string family_name(Family f);
Family family_from_name(const std::string& s);
std::string kind_name(OperatorKind k);
OperatorKind kind_from_name(const std::string& s);

/// One canonical block family instance. lambda packs (a, b) as a + i b for
/// the realified families; mu is the unit scalar of the complex-conjugation
/// families; delta the sign of +-Z_n / +-K_n blocks.
struct CanonicalSummand {
    Family family = Family::AdjReal;
    int n = 1;
    Scalar lambda;
    Scalar mu = Scalar(1L);
    int delta = 0;
    int eps = 1, zeta = 1;
    BlockVariant variant = BlockVariant::Single;

    int dim() const;
    OperatorKind op_kind() const;
};

// --- canonical block zoo ----------------------------------------------------

Mat jordan_block(FieldSpec field, int n, const Scalar& lambda);
Mat u_triangular(FieldSpec field, int n);   // unit diagonal, 2 everywhere above
Mat w_alternating(FieldSpec field, int n);  // anti-diagonal +-1, +1 at bottom left
Mat k_alternating(FieldSpec field, int n, int eps);  // K_n(eps), 2n x 2n
Mat realified_jordan(FieldSpec field, int n, const Scalar& a, const Scalar& b);
Mat hyperbolic_form(FieldSpec field, int n, const Scalar& top_scale);  // [[0, c I],[I, 0]]

/// Materialize the literal canonical pair of the summand, verified against
/// classify with its declared kind before returning.
PairTransport make_summand(const CanonicalSummand& s, FieldSpec field);

/// Canonical parameter representative under the stated replacement rules.
/// Idempotent.
CanonicalSummand normalize(const CanonicalSummand& s, const TolerancePolicy& pol = {});

bool summand_equal(const CanonicalSummand& a, const CanonicalSummand& b, bool exact,
                   const TolerancePolicy& pol);
bool summand_less(const CanonicalSummand& a, const CanonicalSummand& b);
bool summand_multisets_equal(std::vector<CanonicalSummand> a, std::vector<CanonicalSummand> b,
                             bool exact, const TolerancePolicy& pol);

/// Explicit basis change realizing one stated replacement on the
/// identity-involution families: lambda <-> zeta lambda on paired GenA/GenC1
/// and b <-> -b on GenC2. Returns the replaced summand and the witness T with
/// transport(make_summand(s), T) = make_summand(replaced). Empty when the
/// replacement is trivial for the parameters.
struct Replacement {
    CanonicalSummand other;
    Mat witness;
};
std::optional<Replacement> replacement_witness(const CanonicalSummand& s, FieldSpec field);

// --- classification engine ---------------------------------------------------

struct SignEntry {
    int n = 1;
    int delta = 1;
};

/// Sign characteristic of a real eigenvalue of an h-selfadjoint operator via
/// the nested-kernel signature method: the compressed Hermitian forms
/// Q_k(x, y) = h(x, (b - lambda)^{k-1} y) count the +-1 blocks of each size.
std::vector<SignEntry> sign_characteristic(const Mat& b, const Mat& h, const Scalar& lambda,
                                           const TolerancePolicy& pol = {});

struct CanonicalizeOptions {
    bool want_witness = true;
    std::uint64_t seed = 0;
};

struct CanonicalForm {
    std::vector<CanonicalSummand> summands;  // normalized, sorted
    std::optional<Mat> witness;
    bool exact_mode = false;
    HermitizeNote note;       // reductions applied on the way in
    bool downgraded = false;  // exact input continued on the floating engine
    std::vector<std::string> warnings;
    FieldSpec field;          // field of witness/materialization
    OperatorKind kind = OperatorKind::Selfadjoint;
};

/// Full classification of (a, f) for the requested operator kind over a
/// conjugating complex field. Skewadjoint input is reduced to the selfadjoint
/// picture by hermitize and the note records the applied scalings.
CanonicalForm canonicalize(const Mat& a, const Mat& f, OperatorKind kind,
                           const TolerancePolicy& pol = {}, const CanonicalizeOptions& opts = {});

/// The direct sum the witness maps the input onto: note scalings are undone so
/// that transport(input, witness) equals this pair.
PairTransport materialize(const CanonicalForm& cf);

struct IsoResult {
    bool isomorphic = false;
    std::optional<Mat> witness;
};

/// Isomorphism decision by comparison of normalized canonical multisets; the
/// witness is the composite basis change, verified by transport.
IsoResult isomorphic_pairs(const Mat& a1, const Mat& f1, const Mat& a2, const Mat& f2,
                           OperatorKind kind, const TolerancePolicy& pol = {},
                           const CanonicalizeOptions& opts = {});

enum class GroupTarget { Group, LieAlgebra };

struct GroupFactor {
    Scalar e;
    int p = 0, q = 0;
};

struct GroupFactors {
    std::vector<GroupFactor> factors;
    GroupTarget target = GroupTarget::Group;
    std::string rendering;
};

/// Coset signature list of a diagonalizable form, rendered as the direct
/// product of indefinite unitary groups U(p, q) or of the Lie algebras
/// S(I_{p,q}).
GroupFactors group_factors(const Mat& f, GroupTarget target, const TolerancePolicy& pol = {},
                           std::uint64_t seed = 0);

}  // namespace iif
