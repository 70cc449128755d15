#pragma once

#include <optional>
#include <vector>

#include "iif/linalg.hpp"

namespace iif {

struct EigenvalueBlocks {
    Scalar lambda;
    std::vector<int> sizes;  // Jordan block sizes, descending
    int algebraic() const {
        int s = 0;
        for (int k : sizes) s += k;
        return s;
    }
};

struct JordanData {
    std::vector<EigenvalueBlocks> eigenvalues;  // sorted by (Re, Im) of lambda
    Mat t;                                      // T^{-1} A T = direct sum of J_n(lambda)
};

/// Jordan decomposition. Floating inputs cluster eigenvalues within
/// cluster_tol and take arithmetic means as representatives; exact inputs
/// demand a spectrum inside Q(i) and fail with SpectrumOutsideField otherwise.
JordanData jordan_form(const Mat& a, const TolerancePolicy& pol = {});

/// Materialize the Jordan matrix described by the block data.
Mat jordan_matrix(const JordanData& jd, FieldSpec field);

struct ExactEigenvalue {
    GaussRat lambda;
    int alg_mult = 0;
};

/// Exact spectrum of an exact matrix, obtained from floating candidates that
/// are rationalized and then verified by exact rank tests. Returns nullopt
/// when the spectrum cannot be confirmed to lie in Q(i).
std::optional<std::vector<ExactEigenvalue>> exact_spectrum(const detail::MatT<GaussRat>& a,
                                                           const TolerancePolicy& pol);

}  // namespace iif
