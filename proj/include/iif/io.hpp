#pragma once

#include <optional>
#include <string>

#include "iif/canonical.hpp"
#include "iif/frobenius.hpp"

namespace iif {

/// The self-describing document carrying a matrix pair; schema version iif/1.
/// Entry encodings follow the field: rationals as "p/q" strings, Gaussian
/// rationals as ["p/q", "r/s"], real floats as numbers, complex floats as
/// [re, im].
struct PairDocument {
    FieldSpec field;
    Mat a, f;
    std::optional<TolerancePolicy> tolerance;
    std::optional<std::uint64_t> seed;
};

PairDocument parse_pair(const std::string& text);
std::string serialize_pair(const PairDocument& doc);

std::string serialize_report(const StructureReport& rep);
std::string serialize_diag(const DiagForm& df, FieldSpec field);
std::string serialize_split(const CosetSplit& split, FieldSpec field);

std::string serialize_canonical(const CanonicalForm& cf);
CanonicalForm parse_canonical(const std::string& text);

std::string serialize_group(const GroupFactors& gf, FieldSpec field);
std::string serialize_phi(const PhiBlock& pb, FieldSpec field);
std::string serialize_iso(const IsoResult& res, FieldSpec field);

/// Scalar <-> JSON fragment codecs exposed for the CLI parameter parsing.
std::string encode_scalar_text(const Scalar& v, FieldSpec field);
Scalar decode_scalar_text(const std::string& text, FieldSpec field);

/// Summand codecs: {"family": ..., "n": ..., "params": {...}} fragments.
std::string serialize_summands_text(const std::vector<CanonicalSummand>& summands,
                                    FieldSpec field);
CanonicalSummand parse_summand_text(const std::string& family, int n,
                                    const std::string& params_json, FieldSpec field);

}  // namespace iif
