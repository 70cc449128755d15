#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "iif/canonical.hpp"

namespace iif {

/// A summand list to materialize plus the conjugation recipe. Float-mode
/// conjugators are products of seeded elementary operations kept under the
/// condition cap; exact mode uses unimodular integer elementary matrices so
/// the transport stays in Q(i).
struct InstanceRecipe {
    std::vector<CanonicalSummand> summands;
    FieldSpec field{FieldBase::ComplexFloat, Involution::Conjugation};
    std::uint64_t seed = 0;
    double condition_cap = 100.0;
    bool conjugate = true;
    bool skewadjoint_picture = false;  // scale the operator by -i after assembly
};

struct Instance {
    Mat a, f;
    Mat s;  // the conjugator that was applied
    CanonicalForm ground_truth;
    OperatorKind kind = OperatorKind::Selfadjoint;
};

Instance make_instance(const InstanceRecipe& recipe);

/// Independent soundness check of a canonical form with witness: recompute
/// both transport equations through a separate multiply/solve path and
/// re-check every summand invariant by direct multiplication.
bool brute_verify(const Mat& a, const Mat& f, const CanonicalForm& cf,
                  const TolerancePolicy& pol = {}, std::string* diff = nullptr);

/// Seeded random recipes for the test suites and the CLI `random` command.
InstanceRecipe random_recipe(OperatorKind kind, int max_dim, std::uint64_t seed, FieldSpec field);
InstanceRecipe random_family_recipe(Family family, int max_dim, std::uint64_t seed,
                                    FieldSpec field);

/// Random nonsingular conjugator used by the suites (independent of recipes).
Mat random_conjugator(FieldSpec field, int n, std::uint64_t seed, double condition_cap = 100.0);

}  // namespace iif
