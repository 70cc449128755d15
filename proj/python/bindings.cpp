// Python module exposing the main operations at the document level: JSON text
// in, JSON text out, matching the CLI wire format exactly.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "iif/harness.hpp"
#include "iif/io.hpp"

namespace py = pybind11;
using namespace iif;

namespace {

TolerancePolicy make_pol(const std::optional<TolerancePolicy>& doc_tol, double tol_struct,
                         double tol_cluster) {
    TolerancePolicy pol;
    if (doc_tol) pol = *doc_tol;
    if (tol_struct > 0) pol.structural = tol_struct;
    if (tol_cluster > 0) pol.cluster = tol_cluster;
    return pol;
}

std::vector<GaussRat> coeffs_of(const std::vector<std::string>& texts, FieldSpec field) {
    std::vector<GaussRat> out;
    for (const std::string& t : texts) {
        if (!t.empty() && t.front() == '[')
            out.push_back(decode_scalar_text(t, field).exact_value());
        else {
            Rat r;
            if (t.empty() || mpq_set_str(r.get_mpq_t(), t.c_str(), 10) != 0)
                fail(Errc::ParseError, "bad rational coefficient: '" + t + "'");
            r.canonicalize();
            out.push_back(GaussRat(r));
        }
    }
    return out;
}

void translate_error(const Error& e) {
    PyErr_SetString(PyExc_ValueError,
                    (std::string(errc_name(e.code())) + ": " + e.what()).c_str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "canonical forms of operators on spaces with diagonalizable indefinite products";

    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            translate_error(e);
        }
    });

    m.def("check", [](const std::string& doc_text, double ts, double tc) {
        PairDocument doc = parse_pair(doc_text);
        return serialize_report(classify(doc.a, doc.f, make_pol(doc.tolerance, ts, tc)));
    }, py::arg("document"), py::arg("tol_struct") = -1.0, py::arg("tol_cluster") = -1.0);

    m.def("diag", [](const std::string& doc_text, std::uint64_t seed, double ts, double tc) {
        PairDocument doc = parse_pair(doc_text);
        DiagForm df = diagonalize_form(doc.f, make_pol(doc.tolerance, ts, tc),
                                       doc.seed.value_or(seed));
        return serialize_diag(df, doc.field);
    }, py::arg("document"), py::arg("seed") = 0, py::arg("tol_struct") = -1.0,
       py::arg("tol_cluster") = -1.0);

    m.def("split", [](const std::string& doc_text, std::uint64_t seed, double ts, double tc) {
        PairDocument doc = parse_pair(doc_text);
        CosetSplit cs = split_cosets(doc.a, doc.f, make_pol(doc.tolerance, ts, tc),
                                     doc.seed.value_or(seed));
        return serialize_split(cs, doc.field);
    }, py::arg("document"), py::arg("seed") = 0, py::arg("tol_struct") = -1.0,
       py::arg("tol_cluster") = -1.0);

    m.def("canon", [](const std::string& doc_text, const std::string& kind, bool witness,
                      std::uint64_t seed, double ts, double tc) {
        PairDocument doc = parse_pair(doc_text);
        CanonicalizeOptions opts;
        opts.seed = doc.seed.value_or(seed);
        CanonicalForm cf = canonicalize(doc.a, doc.f, kind_from_name(kind),
                                        make_pol(doc.tolerance, ts, tc), opts);
        if (!witness) cf.witness.reset();
        return serialize_canonical(cf);
    }, py::arg("document"), py::arg("kind"), py::arg("witness") = true, py::arg("seed") = 0,
       py::arg("tol_struct") = -1.0, py::arg("tol_cluster") = -1.0);

    m.def("iso", [](const std::string& doc1, const std::string& doc2, const std::string& kind,
                    std::uint64_t seed, double ts, double tc) {
        PairDocument d1 = parse_pair(doc1), d2 = parse_pair(doc2);
        CanonicalizeOptions opts;
        opts.seed = seed;
        IsoResult res = isomorphic_pairs(d1.a, d1.f, d2.a, d2.f, kind_from_name(kind),
                                         make_pol(d1.tolerance, ts, tc), opts);
        return serialize_iso(res, d1.field);
    }, py::arg("document1"), py::arg("document2"), py::arg("kind"), py::arg("seed") = 0,
       py::arg("tol_struct") = -1.0, py::arg("tol_cluster") = -1.0);

    m.def("phi", [](const std::vector<std::string>& coeffs, int eps, int zeta,
                    const std::string& field, const std::string& involution) {
        FieldSpec f = field_from_names(field, involution);
        CharPoly chi;
        chi.field = f;
        chi.c = coeffs_of(coeffs, f);
        PhiBlock pb = make_phi(chi, eps, zeta);
        return serialize_phi(pb, f);
    }, py::arg("coeffs"), py::arg("eps"), py::arg("zeta"), py::arg("field") = "rational",
       py::arg("involution") = "identity");

    m.def("phi_exists", [](const std::vector<std::string>& coeffs, int eps, int zeta,
                           const std::string& field, const std::string& involution) {
        FieldSpec f = field_from_names(field, involution);
        CharPoly chi;
        chi.field = f;
        chi.c = coeffs_of(coeffs, f);
        PhiExistence ex = phi_exists(chi, eps, zeta);
        return py::make_tuple(ex.exists, ex.reason);
    }, py::arg("coeffs"), py::arg("eps"), py::arg("zeta"), py::arg("field") = "rational",
       py::arg("involution") = "identity");

    m.def("pair", [](const std::vector<std::string>& coeffs, int eps, int zeta,
                     const std::vector<std::string>& fparam, const std::string& field,
                     const std::string& involution) {
        FieldSpec f = field_from_names(field, involution);
        CharPoly chi;
        chi.field = f;
        chi.c = coeffs_of(coeffs, f);
        PairTransport p = make_pair(chi, eps, zeta, coeffs_of(fparam, f));
        return serialize_pair({f, p.a, p.f, std::nullopt, std::nullopt});
    }, py::arg("coeffs"), py::arg("eps"), py::arg("zeta"),
       py::arg("fparam") = std::vector<std::string>{}, py::arg("field") = "rational",
       py::arg("involution") = "identity");

    m.def("gen", [](const std::string& family, int n, const std::string& params,
                    const std::string& field, const std::string& involution) {
        FieldSpec f = field_from_names(field, involution);
        CanonicalSummand s = parse_summand_text(family, n, params, f);
        PairTransport p = make_summand(s, f);
        return serialize_pair({f, p.a, p.f, std::nullopt, std::nullopt});
    }, py::arg("family"), py::arg("n"), py::arg("params"), py::arg("field") = "complex_float",
       py::arg("involution") = "conjugation");

    m.def("group", [](const std::string& doc_text, const std::string& target, std::uint64_t seed,
                      double ts, double tc) {
        PairDocument doc = parse_pair(doc_text);
        GroupTarget t = target == "algebra" ? GroupTarget::LieAlgebra : GroupTarget::Group;
        GroupFactors gf = group_factors(doc.f, t, make_pol(doc.tolerance, ts, tc),
                                        doc.seed.value_or(seed));
        return serialize_group(gf, doc.field);
    }, py::arg("document"), py::arg("target") = "group", py::arg("seed") = 0,
       py::arg("tol_struct") = -1.0, py::arg("tol_cluster") = -1.0);

    m.def("random_instance", [](const std::string& family, int dim, std::uint64_t seed,
                                bool conjugate, const std::string& field) {
        FieldSpec f = field_from_names(field, "conjugation");
        InstanceRecipe recipe;
        if (family == "selfadjoint" || family == "isometric" || family == "skewadjoint")
            recipe = random_recipe(kind_from_name(family), dim, seed, f);
        else
            recipe = random_family_recipe(family_from_name(family), dim, seed, f);
        recipe.conjugate = conjugate;
        Instance inst = make_instance(recipe);
        return py::make_tuple(serialize_pair({f, inst.a, inst.f, std::nullopt, seed}),
                              kind_name(inst.kind),
                              serialize_summands_text(inst.ground_truth.summands, f));
    }, py::arg("family") = "selfadjoint", py::arg("dim") = 6, py::arg("seed") = 0,
       py::arg("conjugate") = true, py::arg("field") = "complex_float");

    m.def("brute_verify", [](const std::string& pair_text, const std::string& canonical_text,
                             double ts, double tc) {
        PairDocument doc = parse_pair(pair_text);
        CanonicalForm cf = parse_canonical(canonical_text);
        std::string diff;
        bool ok = brute_verify(doc.a, doc.f, cf, make_pol(doc.tolerance, ts, tc), &diff);
        return py::make_tuple(ok, diff);
    }, py::arg("pair_document"), py::arg("canonical_document"), py::arg("tol_struct") = -1.0,
       py::arg("tol_cluster") = -1.0);

    m.attr("__version__") = "0.1.0";
}
