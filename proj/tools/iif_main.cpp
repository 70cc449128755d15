// Command-line surface over the canonical-form library: structure checks,
// congruence diagonalization, coset splitting, canonicalization, isomorphism
// decisions, Frobenius-block builders and seeded random instances. Documents
// go in and out as iif/1 JSON; exit code 0 = success, 1 = domain error,
// 2 = usage or parse error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "iif/harness.hpp"
#include "iif/io.hpp"

using namespace iif;

namespace {

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(path);
    if (!in) fail(Errc::ParseError, "cannot open input file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

double env_tol(const char* name, double fallback) {
    const char* v = std::getenv(name);
    if (!v || !*v) return fallback;
    try {
        return std::stod(v);
    } catch (...) {
        fail(Errc::ParseError, std::string("bad value in ") + name);
    }
}

struct CommonOpts {
    std::string input = "-";
    double tol_struct = -1;
    double tol_cluster = -1;
    std::uint64_t seed = 0;

    TolerancePolicy resolve(const std::optional<TolerancePolicy>& doc_tol) const {
        TolerancePolicy pol;
        if (doc_tol) pol = *doc_tol;
        double env_s = env_tol("IIF_TOL_STRUCT", -1), env_c = env_tol("IIF_TOL_CLUSTER", -1);
        if (env_s > 0) pol.structural = env_s;
        if (env_c > 0) pol.cluster = env_c;
        if (tol_struct > 0) pol.structural = tol_struct;
        if (tol_cluster > 0) pol.cluster = tol_cluster;
        return pol;
    }
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_input = true) {
    if (with_input) cmd->add_option("input", opts.input, "input document path, or - for stdin");
    cmd->add_option("--tol-struct", opts.tol_struct, "relative structural tolerance");
    cmd->add_option("--tol-cluster", opts.tol_cluster, "absolute clustering tolerance");
    cmd->add_option("--seed", opts.seed, "seed for randomized probes")->default_val(0);
}

std::vector<GaussRat> parse_coeff_list(const std::string& text, FieldSpec field) {
    std::vector<GaussRat> out;
    if (text.empty()) return out;
    if (text.front() == '[') {
        nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
        if (j.is_discarded() || !j.is_array()) fail(Errc::ParseError, "bad coefficient array");
        for (const auto& item : j)
            out.push_back(decode_scalar_text(item.dump(), field).exact_value());
        return out;
    }
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        Rat r;
        if (tok.empty() || mpq_set_str(r.get_mpq_t(), tok.c_str(), 10) != 0)
            fail(Errc::ParseError, "bad rational coefficient: '" + tok + "'");
        r.canonicalize();
        out.push_back(GaussRat(r));
    }
    return out;
}

FieldSpec field_flags(const std::string& base, const std::string& invol) {
    return field_from_names(base, invol);
}

int dispatch(int argc, char** argv) {
    CLI::App app{"canonical forms of operators on spaces with diagonalizable indefinite products"};
    app.require_subcommand(1);

    // check
    CommonOpts check_o;
    CLI::App* check = app.add_subcommand("check", "classify an (operator, form) pair");
    add_common(check, check_o);

    // diag
    CommonOpts diag_o;
    CLI::App* diag = app.add_subcommand("diag", "congruence-diagonalize the form");
    add_common(diag, diag_o);

    // split
    CommonOpts split_o;
    CLI::App* split = app.add_subcommand("split", "coset splitting of the pair");
    add_common(split, split_o);

    // canon
    CommonOpts canon_o;
    std::string canon_kind;
    bool canon_witness = false;
    CLI::App* canon = app.add_subcommand("canon", "canonical form of the pair");
    add_common(canon, canon_o);
    canon->add_option("--kind", canon_kind, "isometric | selfadjoint | skewadjoint")->required();
    canon->add_flag("--witness", canon_witness, "include the basis-change witness");

    // iso
    CommonOpts iso_o;
    std::string iso_kind, iso_b;
    CLI::App* iso = app.add_subcommand("iso", "decide isomorphism of two pairs");
    add_common(iso, iso_o);
    iso->add_option("second", iso_b, "second input document")->required();
    iso->add_option("--kind", iso_kind, "operator kind; inferred from the pairs when omitted");

    // phi
    CommonOpts phi_o;
    std::string phi_chi, phi_field = "rational", phi_invol = "identity", phi_hint;
    int phi_eps = 1, phi_zeta = 1, phi_hint_k = 1;
    CLI::App* phi = app.add_subcommand("phi", "structure matrix of a Frobenius block");
    add_common(phi, phi_o, false);
    phi->add_option("--charpoly", phi_chi, "monic coefficients c0,...,c_{n-1}")->required();
    phi->add_option("--eps", phi_eps)->required();
    phi->add_option("--zeta", phi_zeta)->required();
    phi->add_option("--field", phi_field, "rational | gaussian_rational");
    phi->add_option("--involution", phi_invol, "identity | conjugation");
    phi->add_option("--hint-p", phi_hint, "irreducible factor coefficients");
    phi->add_option("--hint-k", phi_hint_k, "power of the irreducible factor");

    // pair
    CommonOpts pair_o;
    std::string pair_chi, pair_field = "rational", pair_invol = "identity", pair_f, pair_hint;
    int pair_eps = 1, pair_zeta = 1, pair_hint_k = 1;
    CLI::App* pairc = app.add_subcommand("pair", "canonical pair from a Frobenius block");
    add_common(pairc, pair_o, false);
    pairc->add_option("--charpoly", pair_chi)->required();
    pairc->add_option("--eps", pair_eps)->required();
    pairc->add_option("--zeta", pair_zeta)->required();
    pairc->add_option("--f", pair_f, "functional parameter coefficients (omit for type (ii))");
    pairc->add_option("--field", pair_field);
    pairc->add_option("--involution", pair_invol);
    pairc->add_option("--hint-p", pair_hint);
    pairc->add_option("--hint-k", pair_hint_k);

    // gen
    CommonOpts gen_o;
    std::string gen_family, gen_params = "{}", gen_field, gen_invol;
    int gen_n = 1;
    CLI::App* gen = app.add_subcommand("gen", "materialize a canonical summand");
    add_common(gen, gen_o, false);
    gen->add_option("--family", gen_family)->required();
    gen->add_option("--n", gen_n, "block size")->required();
    gen->add_option("--params", gen_params, "JSON object with the family parameters");
    gen->add_option("--field", gen_field, "field base (defaults per family)");
    gen->add_option("--involution", gen_invol);

    // group
    CommonOpts group_o;
    std::string group_target = "group";
    CLI::App* group = app.add_subcommand("group", "isometry group / Lie algebra factors");
    add_common(group, group_o);
    group->add_option("--target", group_target, "group | algebra");

    // random
    CommonOpts random_o;
    std::string rnd_family = "selfadjoint", rnd_field = "complex_float";
    int rnd_dim = 6;
    bool rnd_conjugate = false;
    CLI::App* random_c = app.add_subcommand("random", "seeded random transported instance");
    add_common(random_c, random_o, false);
    random_c->add_option("--family", rnd_family,
                         "summand family, or selfadjoint | isometric | skewadjoint for a mix");
    random_c->add_option("--dim", rnd_dim, "target dimension");
    random_c->add_option("--field", rnd_field, "complex_float | gaussian_rational");
    random_c->add_flag("--conjugate", rnd_conjugate, "transport by a random basis change");

    app.parse(argc, argv);

    if (*check) {
        PairDocument doc = parse_pair(read_input(check_o.input));
        std::cout << serialize_report(classify(doc.a, doc.f, check_o.resolve(doc.tolerance)));
    } else if (*diag) {
        PairDocument doc = parse_pair(read_input(diag_o.input));
        TolerancePolicy pol = diag_o.resolve(doc.tolerance);
        DiagForm df = diagonalize_form(doc.f, pol, doc.seed.value_or(diag_o.seed));
        std::cout << serialize_diag(df, doc.field);
    } else if (*split) {
        PairDocument doc = parse_pair(read_input(split_o.input));
        TolerancePolicy pol = split_o.resolve(doc.tolerance);
        CosetSplit cs = split_cosets(doc.a, doc.f, pol, doc.seed.value_or(split_o.seed));
        std::cout << serialize_split(cs, doc.field);
    } else if (*canon) {
        PairDocument doc = parse_pair(read_input(canon_o.input));
        TolerancePolicy pol = canon_o.resolve(doc.tolerance);
        CanonicalizeOptions opts;
        opts.seed = doc.seed.value_or(canon_o.seed);
        CanonicalForm cf = canonicalize(doc.a, doc.f, kind_from_name(canon_kind), pol, opts);
        if (!canon_witness) cf.witness.reset();
        std::cout << serialize_canonical(cf);
    } else if (*iso) {
        PairDocument d1 = parse_pair(read_input(iso_o.input));
        PairDocument d2 = parse_pair(read_input(iso_b));
        TolerancePolicy pol = iso_o.resolve(d1.tolerance);
        OperatorKind kind;
        if (!iso_kind.empty()) {
            kind = kind_from_name(iso_kind);
        } else {
            StructureReport r1 = classify(d1.a, d1.f, pol), r2 = classify(d2.a, d2.f, pol);
            if (r1.isometric && r2.isometric) kind = OperatorKind::Isometric;
            else if (r1.selfadjoint && r2.selfadjoint) kind = OperatorKind::Selfadjoint;
            else if (r1.skewadjoint && r2.skewadjoint) kind = OperatorKind::Skewadjoint;
            else fail(Errc::NotApplicable, "pairs share no operator kind; pass --kind");
        }
        CanonicalizeOptions opts;
        opts.seed = iso_o.seed;
        IsoResult res = isomorphic_pairs(d1.a, d1.f, d2.a, d2.f, kind, pol, opts);
        std::cout << serialize_iso(res, d1.field);
    } else if (*phi) {
        FieldSpec f = field_flags(phi_field, phi_invol);
        CharPoly chi;
        chi.field = f;
        chi.c = parse_coeff_list(phi_chi, f);
        if (!phi_hint.empty()) chi.hint = CharPoly::Hint{parse_coeff_list(phi_hint, f), phi_hint_k};
        PhiBlock pb = make_phi(chi, phi_eps, phi_zeta);
        std::cout << serialize_phi(pb, f);
    } else if (*pairc) {
        FieldSpec f = field_flags(pair_field, pair_invol);
        CharPoly chi;
        chi.field = f;
        chi.c = parse_coeff_list(pair_chi, f);
        if (!pair_hint.empty())
            chi.hint = CharPoly::Hint{parse_coeff_list(pair_hint, f), pair_hint_k};
        PairTransport p = make_pair(chi, pair_eps, pair_zeta, parse_coeff_list(pair_f, f));
        PairDocument doc{f, p.a, p.f, std::nullopt, std::nullopt};
        std::cout << serialize_pair(doc);
    } else if (*gen) {
        Family fam = family_from_name(gen_family);
        FieldSpec f;
        if (!gen_field.empty()) {
            f = field_flags(gen_field, gen_invol.empty() ? (fam == Family::GenA ||
                                                            fam == Family::GenC1 ||
                                                            fam == Family::GenC2
                                                                ? "identity"
                                                                : "conjugation")
                                                         : gen_invol);
        } else if (fam == Family::GenA || fam == Family::GenC1 || fam == Family::GenC2) {
            f = FieldSpec{FieldBase::Rational, Involution::Identity};
        } else {
            f = FieldSpec{FieldBase::ComplexFloat, Involution::Conjugation};
        }
        CanonicalSummand s = parse_summand_text(gen_family, gen_n, gen_params, f);
        PairTransport p = make_summand(s, f);
        PairDocument doc{f, p.a, p.f, std::nullopt, std::nullopt};
        std::cout << serialize_pair(doc);
    } else if (*group) {
        PairDocument doc = parse_pair(read_input(group_o.input));
        TolerancePolicy pol = group_o.resolve(doc.tolerance);
        GroupTarget t;
        if (group_target == "group") t = GroupTarget::Group;
        else if (group_target == "algebra") t = GroupTarget::LieAlgebra;
        else fail(Errc::ParseError, "target must be group or algebra");
        GroupFactors gf = group_factors(doc.f, t, pol, doc.seed.value_or(group_o.seed));
        std::cout << serialize_group(gf, doc.field);
    } else if (*random_c) {
        FieldSpec f = field_flags(rnd_field, "conjugation");
        InstanceRecipe recipe;
        if (rnd_family == "selfadjoint" || rnd_family == "isometric" ||
            rnd_family == "skewadjoint")
            recipe = random_recipe(kind_from_name(rnd_family), rnd_dim, random_o.seed, f);
        else
            recipe = random_family_recipe(family_from_name(rnd_family), rnd_dim, random_o.seed, f);
        recipe.conjugate = rnd_conjugate;
        Instance inst = make_instance(recipe);
        PairDocument doc{f, inst.a, inst.f, std::nullopt, random_o.seed};
        nlohmann::ordered_json j = nlohmann::ordered_json::parse(serialize_pair(doc));
        j["ground_truth"] = nlohmann::ordered_json::object();
        j["ground_truth"]["operator_kind"] = kind_name(inst.kind);
        j["ground_truth"]["summands"] = nlohmann::ordered_json::parse(
            serialize_summands_text(inst.ground_truth.summands, f));
        std::cout << j.dump(2) << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const CLI::ParseError& e) {
        CLI::App app;
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const Error& e) {
        std::cerr << "error [" << errc_name(e.code()) << "]: " << e.what() << "\n";
        return e.code() == Errc::ParseError ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
