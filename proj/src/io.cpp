#include "iif/io.hpp"

#include <json.hpp>

namespace iif {

using Json = nlohmann::ordered_json;

namespace {

std::string rat_str(const Rat& r) { return r.get_str(); }

Rat parse_rat(const std::string& s) {
    Rat r;
    if (s.empty() || mpq_set_str(r.get_mpq_t(), s.c_str(), 10) != 0)
        fail(Errc::ParseError, "bad rational literal: '" + s + "'");
    if (r.get_den() == 0) fail(Errc::ParseError, "zero denominator: '" + s + "'");
    r.canonicalize();
    return r;
}

Json encode_scalar(const Scalar& v, const FieldSpec& f) {
    switch (f.base) {
        case FieldBase::Rational: {
            const GaussRat& g = v.exact_value();
            return Json(rat_str(g.re));
        }
        case FieldBase::GaussianRational: {
            const GaussRat& g = v.exact_value();
            return Json::array({rat_str(g.re), rat_str(g.im)});
        }
        case FieldBase::RealFloat: return Json(v.to_cx().real());
        case FieldBase::ComplexFloat: {
            Cx z = v.to_cx();
            return Json::array({z.real(), z.imag()});
        }
    }
    fail(Errc::ParseError, "unknown field base");
}

Scalar decode_scalar(const Json& j, const FieldSpec& f) {
    try {
        switch (f.base) {
            case FieldBase::Rational:
                return Scalar::rational(parse_rat(j.get<std::string>()));
            case FieldBase::GaussianRational: {
                if (!j.is_array() || j.size() != 2)
                    fail(Errc::ParseError, "gaussian rational entries are [re, im] string pairs");
                return Scalar::gaussian(parse_rat(j[0].get<std::string>()),
                                        parse_rat(j[1].get<std::string>()));
            }
            case FieldBase::RealFloat: return Scalar(Cx(j.get<double>(), 0));
            case FieldBase::ComplexFloat: {
                if (!j.is_array() || j.size() != 2)
                    fail(Errc::ParseError, "complex float entries are [re, im] number pairs");
                return Scalar(Cx(j[0].get<double>(), j[1].get<double>()));
            }
        }
    } catch (const Json::exception& e) {
        fail(Errc::ParseError, std::string("scalar entry: ") + e.what());
    }
    fail(Errc::ParseError, "unknown field base");
}

Json encode_matrix(const Mat& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(encode_scalar(m.at(i, j), m.field()));
        rows.push_back(std::move(row));
    }
    return rows;
}

Mat decode_matrix(const Json& j, const FieldSpec& f, const std::string& name) {
    if (!j.is_array() || j.empty()) fail(Errc::ParseError, name + " must be a nonempty 2-D array");
    int r = int(j.size());
    int c = int(j[0].is_array() ? j[0].size() : 0);
    if (c == 0) fail(Errc::ParseError, name + " rows must be nonempty arrays");
    Mat m(f, r, c);
    for (int i = 0; i < r; ++i) {
        if (!j[size_t(i)].is_array() || int(j[size_t(i)].size()) != c)
            fail(Errc::ParseError, name + " has ragged rows");
        for (int k = 0; k < c; ++k) m.set(i, k, decode_scalar(j[size_t(i)][size_t(k)], f));
    }
    return m;
}

Json parse_document(const std::string& text) {
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) fail(Errc::ParseError, "malformed JSON document");
    if (!j.is_object()) fail(Errc::ParseError, "document must be a JSON object");
    if (j.value("version", "") != "iif/1") fail(Errc::ParseError, "unsupported document version");
    return j;
}

FieldSpec field_of(const Json& j) {
    if (!j.contains("field") || !j.contains("involution"))
        fail(Errc::ParseError, "document must declare field and involution");
    return field_from_names(j["field"].get<std::string>(), j["involution"].get<std::string>());
}

Json header(const std::string& kind, const FieldSpec& f) {
    Json j = Json::object();
    j["version"] = "iif/1";
    j["kind"] = kind;
    j["field"] = field_base_name(f.base);
    j["involution"] = involution_name(f.involution);
    return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json encode_summand(const CanonicalSummand& s, const FieldSpec& f) {
    Json p = Json::object();
    switch (s.family) {
        case Family::IsoUnimodular:
        case Family::IsoHyperbolic:
        case Family::AdjReal:
        case Family::AdjPaired:
            p["lambda"] = encode_scalar(s.lambda, f);
            p["mu"] = encode_scalar(s.mu, f);
            break;
        case Family::GenA:
            p["lambda"] = encode_scalar(s.lambda, f);
            p["eps"] = s.eps;
            p["zeta"] = s.zeta;
            p["variant"] = s.variant == BlockVariant::Single ? "single" : "paired";
            break;
        case Family::GenB:
            p["lambda"] = encode_scalar(s.lambda, f);
            p["delta"] = s.delta;
            p["variant"] = s.variant == BlockVariant::Single ? "single" : "paired";
            break;
        case Family::GenC1:
            p["a"] = encode_scalar(s.lambda, f);
            p["delta"] = s.delta;
            p["eps"] = s.eps;
            p["zeta"] = s.zeta;
            p["variant"] = s.variant == BlockVariant::Single ? "single" : "paired";
            break;
        case Family::GenC2: {
            FieldSpec real_f = f;  // a and b live in the fixed field
            Scalar a_part = s.lambda.exact() ? Scalar(GaussRat(s.lambda.exact_value().re))
                                             : Scalar(Cx(s.lambda.to_cx().real(), 0));
            Scalar b_part = s.lambda.exact() ? Scalar(GaussRat(s.lambda.exact_value().im))
                                             : Scalar(Cx(s.lambda.to_cx().imag(), 0));
            p["a"] = encode_scalar(a_part, real_f);
            p["b"] = encode_scalar(b_part, real_f);
            p["delta"] = s.delta;
            p["eps"] = s.eps;
            p["zeta"] = s.zeta;
            p["variant"] = s.variant == BlockVariant::Single ? "single" : "paired";
            break;
        }
    }
    Json out = Json::object();
    out["family"] = family_name(s.family);
    out["n"] = s.n;
    out["params"] = std::move(p);
    return out;
}

CanonicalSummand decode_summand(const Json& j, const FieldSpec& f) {
    CanonicalSummand s;
    s.family = family_from_name(j.at("family").get<std::string>());
    s.n = j.at("n").get<int>();
    const Json& p = j.at("params");
    auto variant_of = [&]() {
        std::string v = p.value("variant", "single");
        return v == "paired" ? BlockVariant::Paired : BlockVariant::Single;
    };
    switch (s.family) {
        case Family::IsoUnimodular:
        case Family::IsoHyperbolic:
        case Family::AdjReal:
        case Family::AdjPaired:
            s.lambda = decode_scalar(p.at("lambda"), f);
            s.mu = decode_scalar(p.at("mu"), f);
            break;
        case Family::GenA:
            s.lambda = decode_scalar(p.at("lambda"), f);
            s.eps = p.at("eps").get<int>();
            s.zeta = p.at("zeta").get<int>();
            s.variant = variant_of();
            break;
        case Family::GenB:
            s.lambda = decode_scalar(p.at("lambda"), f);
            s.delta = p.value("delta", 0);
            s.variant = variant_of();
            break;
        case Family::GenC1:
            s.lambda = decode_scalar(p.at("a"), f);
            s.delta = p.value("delta", 0);
            s.eps = p.at("eps").get<int>();
            s.zeta = p.at("zeta").get<int>();
            s.variant = variant_of();
            break;
        case Family::GenC2: {
            Scalar a_part = decode_scalar(p.at("a"), f);
            Scalar b_part = decode_scalar(p.at("b"), f);
            if (f.exact())
                s.lambda = Scalar::gaussian(a_part.exact_value().re, b_part.exact_value().re);
            else
                s.lambda = Scalar(Cx(a_part.to_cx().real(), b_part.to_cx().real()));
            s.delta = p.value("delta", 0);
            s.eps = p.at("eps").get<int>();
            s.zeta = p.at("zeta").get<int>();
            s.variant = variant_of();
            break;
        }
    }
    return s;
}

}  // namespace

PairDocument parse_pair(const std::string& text) {
    Json j = parse_document(text);
    PairDocument doc;
    doc.field = field_of(j);
    if (!j.contains("matrix_a") || !j.contains("matrix_f"))
        fail(Errc::ParseError, "pair document needs matrix_a and matrix_f");
    doc.a = decode_matrix(j["matrix_a"], doc.field, "matrix_a");
    doc.f = decode_matrix(j["matrix_f"], doc.field, "matrix_f");
    if (!doc.a.square() || !doc.f.square() || doc.a.rows() != doc.f.rows())
        fail(Errc::ParseError, "matrix_a and matrix_f must be square of equal size");
    if (j.contains("tolerance")) {
        TolerancePolicy pol;
        const Json& t = j["tolerance"];
        pol.structural = t.value("structural", pol.structural);
        pol.cluster = t.value("cluster", pol.cluster);
        doc.tolerance = pol;
    }
    if (j.contains("seed")) doc.seed = j["seed"].get<std::uint64_t>();
    return doc;
}

std::string serialize_pair(const PairDocument& doc) {
    Json j = Json::object();
    j["version"] = "iif/1";
    j["field"] = field_base_name(doc.field.base);
    j["involution"] = involution_name(doc.field.involution);
    j["matrix_a"] = encode_matrix(doc.a);
    j["matrix_f"] = encode_matrix(doc.f);
    if (doc.tolerance) {
        j["tolerance"] = Json::object();
        j["tolerance"]["structural"] = doc.tolerance->structural;
        j["tolerance"]["cluster"] = doc.tolerance->cluster;
    }
    if (doc.seed) j["seed"] = *doc.seed;
    return dump(j);
}

std::string serialize_report(const StructureReport& rep) {
    Json j = Json::object();
    j["version"] = "iif/1";
    j["kind"] = "structure_report";
    switch (rep.form_kind) {
        case FormKind::Hermitian: j["form_kind"] = "hermitian"; break;
        case FormKind::SkewHermitian: j["form_kind"] = "skew_hermitian"; break;
        case FormKind::Neither: j["form_kind"] = "neither"; break;
    }
    Json kinds = Json::array();
    if (rep.isometric) kinds.push_back("isometric");
    if (rep.selfadjoint) kinds.push_back("selfadjoint");
    if (rep.skewadjoint) kinds.push_back("skewadjoint");
    j["op_kinds"] = std::move(kinds);
    j["nondegenerate"] = rep.nondegenerate;
    return dump(j);
}

std::string serialize_diag(const DiagForm& df, FieldSpec field) {
    FieldSpec out_field = df.s.is_exact() ? field : field.to_float();
    Json j = header("diagonal_congruence", out_field);
    j["downgraded"] = df.downgraded;
    j["s"] = encode_matrix(df.s);
    j["d"] = encode_matrix(df.d);
    return dump(j);
}

std::string serialize_split(const CosetSplit& split, FieldSpec field) {
    FieldSpec out_field = split.s.is_exact() ? field : field.to_float();
    Json j = header("coset_split", out_field);
    j["downgraded"] = split.downgraded;
    j["s"] = encode_matrix(split.s);
    Json blocks = Json::array();
    for (const CosetBlock& blk : split.blocks) {
        Json b = Json::object();
        b["e"] = encode_scalar(blk.e, blk.e.exact() ? out_field
                                                    : FieldSpec{FieldBase::ComplexFloat,
                                                                Involution::Conjugation});
        b["p"] = blk.p;
        b["q"] = blk.q;
        b["offset"] = blk.offset;
        b["a_block"] = encode_matrix(blk.a_block);
        blocks.push_back(std::move(b));
    }
    j["blocks"] = std::move(blocks);
    return dump(j);
}

std::string serialize_canonical(const CanonicalForm& cf) {
    Json j = header("canonical_form", cf.field);
    j["operator_kind"] = kind_name(cf.kind);
    j["mode"] = cf.exact_mode ? "exact" : "float";
    Json summands = Json::array();
    for (const CanonicalSummand& s : cf.summands) summands.push_back(encode_summand(s, cf.field));
    j["summands"] = std::move(summands);
    if (cf.witness) j["witness"] = encode_matrix(*cf.witness);
    Json notes = Json::object();
    notes["operator_scaled_by_i"] = cf.note.op_scaled_by_i;
    notes["form_scaled_by_i"] = cf.note.form_scaled_by_i;
    j["notes"] = std::move(notes);
    if (cf.downgraded) j["downgraded"] = true;
    if (!cf.warnings.empty()) j["warnings"] = cf.warnings;
    return dump(j);
}

CanonicalForm parse_canonical(const std::string& text) {
    Json j = parse_document(text);
    if (j.value("kind", "") != "canonical_form")
        fail(Errc::ParseError, "document is not a canonical form");
    CanonicalForm cf;
    cf.field = field_of(j);
    cf.kind = kind_from_name(j.at("operator_kind").get<std::string>());
    cf.exact_mode = j.value("mode", "float") == "exact";
    for (const Json& s : j.at("summands")) cf.summands.push_back(decode_summand(s, cf.field));
    if (j.contains("witness")) cf.witness = decode_matrix(j["witness"], cf.field, "witness");
    if (j.contains("notes")) {
        cf.note.op_scaled_by_i = j["notes"].value("operator_scaled_by_i", false);
        cf.note.form_scaled_by_i = j["notes"].value("form_scaled_by_i", false);
    }
    cf.downgraded = j.value("downgraded", false);
    if (j.contains("warnings")) cf.warnings = j["warnings"].get<std::vector<std::string>>();
    return cf;
}

std::string serialize_group(const GroupFactors& gf, FieldSpec field) {
    Json j = header("group_factors", field);
    j["target"] = gf.target == GroupTarget::Group ? "group" : "algebra";
    Json factors = Json::array();
    for (const GroupFactor& f : gf.factors) {
        Json e = Json::object();
        e["e"] = encode_scalar(f.e, f.e.exact() ? field
                                                : FieldSpec{FieldBase::ComplexFloat,
                                                            Involution::Conjugation});
        e["p"] = f.p;
        e["q"] = f.q;
        factors.push_back(std::move(e));
    }
    j["factors"] = std::move(factors);
    j["rendering"] = gf.rendering;
    return dump(j);
}

std::string serialize_phi(const PhiBlock& pb, FieldSpec field) {
    Json j = header("phi_block", field);
    j["eps"] = pb.eps;
    j["zeta"] = pb.zeta;
    j["phi"] = encode_matrix(pb.phi);
    j["m"] = encode_matrix(pb.m);
    Json seq = Json::array();
    for (const GaussRat& a : pb.a_seq) seq.push_back(encode_scalar(Scalar(a), field));
    j["a_seq"] = std::move(seq);
    return dump(j);
}

std::string serialize_iso(const IsoResult& res, FieldSpec field) {
    FieldSpec out_field = (res.witness && !res.witness->is_exact()) ? field.to_float() : field;
    Json j = header("isomorphism", out_field);
    j["isomorphic"] = res.isomorphic;
    if (res.witness) j["witness"] = encode_matrix(*res.witness);
    return dump(j);
}

std::string encode_scalar_text(const Scalar& v, FieldSpec field) {
    return encode_scalar(v, field).dump();
}

Scalar decode_scalar_text(const std::string& text, FieldSpec field) {
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) fail(Errc::ParseError, "malformed scalar literal");
    return decode_scalar(j, field);
}

std::string serialize_summands_text(const std::vector<CanonicalSummand>& summands,
                                    FieldSpec field) {
    Json arr = Json::array();
    for (const CanonicalSummand& s : summands) arr.push_back(encode_summand(s, field));
    return arr.dump(2);
}

CanonicalSummand parse_summand_text(const std::string& family, int n,
                                    const std::string& params_json, FieldSpec field) {
    Json params = Json::parse(params_json, nullptr, false);
    if (params.is_discarded() || !params.is_object())
        fail(Errc::ParseError, "params must be a JSON object");
    Json j = Json::object();
    j["family"] = family;
    j["n"] = n;
    j["params"] = std::move(params);
    try {
        return decode_summand(j, field);
    } catch (const Json::exception& e) {
        fail(Errc::ParseError, std::string("summand params: ") + e.what());
    }
}

}  // namespace iif
