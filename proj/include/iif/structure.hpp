#pragma once

#include <cstdint>
#include <vector>

#include "iif/linalg.hpp"

namespace iif {

enum class FormKind { Hermitian, SkewHermitian, Neither };

struct StructureReport {
    FormKind form_kind = FormKind::Neither;
    bool isometric = false;
    bool selfadjoint = false;   // Adjoint(zeta = +1)
    bool skewadjoint = false;   // Adjoint(zeta = -1)
    bool nondegenerate = false;

    bool any_kind() const { return isometric || selfadjoint || skewadjoint; }
};

/// Verify the operator/form relations under the policy: isometric iff
/// A* F A = F, zeta-adjoint iff F A = zeta A* F.
StructureReport classify(const Mat& a, const Mat& f, const TolerancePolicy& pol = {});

struct HermitizeNote {
    bool form_scaled_by_i = false;
    bool op_scaled_by_i = false;
    bool empty() const { return !form_scaled_by_i && !op_scaled_by_i; }
};

struct HermitizeResult {
    Mat a, f;
    HermitizeNote note;
};

/// Replace a skew-Hermitian form by i F and a skewadjoint operator by i A,
/// recording what was applied. Inputs already in the Hermitian/selfadjoint
/// picture pass through untouched.
HermitizeResult hermitize(const Mat& a, const Mat& f, const TolerancePolicy& pol = {});

struct DiagForm {
    Mat s, d;                // star(s) f s = d diagonal
    bool downgraded = false; // exact input continued on the floating engine
};

/// Congruence diagonalization of a nondegenerate sesquilinear form over a
/// conjugating complex field. Floats go through the Hermitian-pencil
/// criterion; exact inputs split along the cosquare spectrum first.
DiagForm diagonalize_form(const Mat& f, const TolerancePolicy& pol = {}, std::uint64_t seed = 0);

struct CosetBlock {
    Scalar e;       // unit coset representative, phase in [0, pi)
    int p = 0;      // +e multiplicities
    int q = 0;      // -e multiplicities
    int offset = 0; // first column of the block inside s
    Mat a_block;
};

struct CosetSplit {
    Mat s;
    std::vector<CosetBlock> blocks;
    bool downgraded = false;
    int dim = 0;
};

/// Coset splitting: diagonalize the form, normalize each diagonal entry to
/// +-e, group by coset (phases ascending, + entries before -), and cut the
/// operator along the grouping. Off-diagonal leakage beyond the policy raises
/// BlockLeakage.
CosetSplit split_cosets(const Mat& a, const Mat& f, const TolerancePolicy& pol = {},
                        std::uint64_t seed = 0);

/// Reassemble star(s) f s from a split, as the block diagonal e_l * diag(I_p, -I_q).
Mat split_form_matrix(const CosetSplit& split, FieldSpec field);

}  // namespace iif
