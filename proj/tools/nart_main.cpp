// nart: exact computations in higher Auslander-Reiten theory over bound
// quiver algebras, with verifiers for the Grothendieck-group relation basis.

#include <CLI11.hpp>
#include <iostream>

#include "nart/nart.hpp"

using namespace nart;

namespace {

struct CommonOpts {
    std::string algebra_file;
    std::string catalog_name;
    int n = 1;
    std::string subcat = "all";
    int cap = 512;
    std::string format = "table";
    unsigned long long seed = 0;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool needs_algebra = true) {
    if (needs_algebra) {
        cmd->add_option("--algebra", o.algebra_file, "algebra input file (JSON)");
        cmd->add_option("--catalog", o.catalog_name, "bundled catalog entry name");
    }
    cmd->add_option("--n", o.n, "the n of the n-cluster tilting setting");
    cmd->add_option("--subcat", o.subcat,
                    "all, or comma-separated member indices into the knitting order");
    cmd->add_option("--cap", o.cap, "cap on the number of indecomposables");
    cmd->add_option("--format", o.format, "json or table")
        ->check(CLI::IsMember({"json", "table"}));
    cmd->add_option("--seed", o.seed, "random seed (reproducible runs)");
}

int emit(const Report& rep, const CommonOpts& o) {
    if (o.format == "json")
        std::cout << to_json(rep).dump(2) << "\n";
    else
        std::cout << render_table(rep);
    switch (rep.verdict) {
        case VerdictKind::Pass: return 0;
        case VerdictKind::Fail: return 1;
        default: return 2;
    }
}

AlgebraPtr resolve_algebra(const CommonOpts& o) {
    if (!o.algebra_file.empty() && !o.catalog_name.empty())
        throw BadInput("--algebra and --catalog are mutually exclusive");
    if (!o.algebra_file.empty()) return load_algebra_file(o.algebra_file);
    if (!o.catalog_name.empty()) return algebra_from_json(load_catalog(o.catalog_name).algebra);
    throw BadInput("one of --algebra or --catalog is required");
}

std::vector<ModulePtr> resolve_members(const CommonOpts& o, const ARQuiver& ar) {
    if (o.subcat == "all") return ar.indecs;
    std::vector<ModulePtr> mods;
    std::stringstream ss(o.subcat);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        int idx = 0;
        try {
            std::size_t used = 0;
            idx = std::stoi(tok, &used);
            if (used != tok.size()) throw BadInput("bad subcat index '" + tok + "'");
        } catch (const std::logic_error&) {
            throw BadInput("bad subcat index '" + tok + "'");
        }
        if (idx < 0 || idx >= int(ar.indecs.size()))
            throw BadInput("subcat index " + tok + " out of range");
        mods.push_back(ar.indecs[idx]);
    }
    return mods;
}

std::string indec_label(const ARQuiver& ar, int i) {
    std::ostringstream os;
    os << "X" << i << "(";
    for (std::size_t v = 0; v < ar.indecs[i]->dims.size(); ++v)
        os << (v ? "," : "") << ar.indecs[i]->dims[v];
    os << ")";
    return os.str();
}

struct Session {
    AlgebraPtr alg;
    Rng rng;
    ARQuiver ar;
    explicit Session(const CommonOpts& o) : alg(resolve_algebra(o)), rng(o.seed) {
        ar = knit_ar_quiver(alg, o.cap, rng);
    }
};

/// Certify the subcategory; on failure produce an unverifiable report.
bool certify(Session& s, const Subcat& sub, const CommonOpts& o, Report& rep) {
    if (!s.ar.complete) {
        rep.add("AR quiver complete within cap", false, json{{"cap", o.cap}});
        rep.verdict = VerdictKind::Unverifiable;
        return false;
    }
    CTCheck c = is_n_cluster_tilting(s.alg, sub, o.n, s.ar);
    if (!c.ok) {
        for (const auto& v : c.violations) rep.add("n-cluster tilting certificate", false, v);
        rep.verdict = VerdictKind::Unverifiable;
        return false;
    }
    rep.add("n-cluster tilting certificate", true, json());
    return true;
}

int run_knit(const CommonOpts& o) {
    Session s(o);
    Report rep;
    rep.add("complete", s.ar.complete, json{{"cap", o.cap}});
    if (!s.ar.complete) rep.verdict = VerdictKind::Unverifiable;
    for (std::size_t i = 0; i < s.ar.indecs.size(); ++i) {
        json w{{"dims", s.ar.indecs[i]->dims},
               {"projective", bool(s.ar.is_proj.size() > i && s.ar.is_proj[i])},
               {"injective", bool(s.ar.is_inj.size() > i && s.ar.is_inj[i])}};
        auto t = s.ar.tau.find(int(i));
        if (t != s.ar.tau.end()) w["tau"] = indec_label(s.ar, t->second);
        rep.add(indec_label(s.ar, int(i)), true, w);
        rep.basis_order.push_back(indec_label(s.ar, int(i)));
    }
    json irr = json::array();
    for (auto& [pair, mult] : s.ar.irr)
        irr.push_back({{"from", indec_label(s.ar, pair.first)},
                       {"to", indec_label(s.ar, pair.second)},
                       {"mult", mult}});
    rep.add("irreducible maps", true, irr);
    rep.add("count", true, json{{"indecomposables", s.ar.indecs.size()}});
    return emit(rep, o);
}

int run_check_ct(const CommonOpts& o) {
    Session s(o);
    Report rep;
    if (!s.ar.complete) {
        rep.add("AR quiver complete within cap", false, json{{"cap", o.cap}});
        rep.verdict = VerdictKind::Unverifiable;
        return emit(rep, o);
    }
    Subcat sub(s.alg, resolve_members(o, s.ar));
    CTCheck c = is_n_cluster_tilting(s.alg, sub, o.n, s.ar);
    for (int i = 0; i < sub.size(); ++i) rep.basis_order.push_back(member_label(sub, i));
    rep.add("contains all indecomposable projectives", sub.contains_projectives, json());
    rep.add("contains all indecomposable injectives", sub.contains_injectives, json());
    if (c.ok) {
        rep.add("Ext-orthogonality equalities", true, json());
    } else {
        for (const auto& v : c.violations) rep.add("Ext-orthogonality equalities", false, v);
    }
    return emit(rep, o);
}

int run_search_ct(const CommonOpts& o) {
    Session s(o);
    Report rep;
    if (!s.ar.complete) {
        rep.add("AR quiver complete within cap", false, json{{"cap", o.cap}});
        rep.verdict = VerdictKind::Unverifiable;
        return emit(rep, o);
    }
    auto found = search_n_cluster_tilting(s.alg, o.n, s.ar);
    json results = json::array();
    for (const auto& sub : found) {
        json members = json::array();
        for (int i = 0; i < sub.size(); ++i) members.push_back(s.ar.find(sub.members[i]));
        results.push_back(members);
    }
    rep.add("candidates found", !found.empty(), results);
    for (std::size_t i = 0; i < s.ar.indecs.size(); ++i)
        rep.basis_order.push_back(indec_label(s.ar, int(i)));
    return emit(rep, o);
}

int run_nass(const CommonOpts& o, bool defect_mode) {
    Session s(o);
    Report rep;
    Subcat sub(s.alg, resolve_members(o, s.ar));
    if (!certify(s, sub, o, rep)) return emit(rep, o);
    for (int i = 0; i < sub.size(); ++i) rep.basis_order.push_back(member_label(sub, i));
    for (int a = 0; a < sub.size(); ++a) {
        if (sub.member_proj[a]) continue;
        NExactSequence seq = n_almost_split_ending_at(sub, a, o.n, s.rng);
        json terms = json::array();
        for (const auto& t : seq.terms) terms.push_back(t->dims);
        bool verified = is_n_almost_split(sub, seq);
        rep.add("n-almost split sequence ending at " + member_label(sub, a), verified,
                json{{"terms", terms}});
        if (defect_mode) {
            DefectVector d = contravariant_defect(sub, seq);
            bool simple_support = true;
            for (int j = 0; j < sub.size(); ++j)
                if (d.values[j] != (j == a ? sub.lA[a] : 0)) simple_support = false;
            rep.add("defect of the sequence at " + member_label(sub, a), simple_support,
                    json{{"values", d.values}});
        }
        rep.relation_matrix.push_back(relation_vector(sub, seq, s.rng));
    }
    return emit(rep, o);
}

int run_index(const CommonOpts& o) {
    Session s(o);
    Report rep;
    Subcat sub(s.alg, resolve_members(o, s.ar));
    if (!certify(s, sub, o, rep)) return emit(rep, o);
    for (int i = 0; i < sub.size(); ++i) rep.basis_order.push_back(member_label(sub, i));
    for (std::size_t x = 0; x < s.ar.indecs.size(); ++x) {
        IndexVector iv = index_vector(sub, s.ar.indecs[x], o.n);
        rep.add("index of " + indec_label(s.ar, int(x)), true, json{{"coeffs", iv.coeffs}});
    }
    return emit(rep, o);
}

int run_k0(const CommonOpts& o) {
    Session s(o);
    Report rep;
    Subcat sub(s.alg, resolve_members(o, s.ar));
    if (!certify(s, sub, o, rep)) return emit(rep, o);
    K0Presentation pres = k0_presentation(sub, o.n, s.rng);
    rep.basis_order = pres.basis_labels;
    for (int i = 0; i < pres.relation_matrix.rows; ++i) {
        std::vector<long long> row;
        for (int j = 0; j < pres.relation_matrix.cols; ++j)
            row.push_back(pres.relation_matrix.at(i, j).convert_to<long long>());
        rep.relation_matrix.push_back(row);
    }
    for (const Int& d : pres.invariant_factors) rep.invariant_factors.push_back(d.str());
    int rank = int(pres.basis_labels.size()) - pres.snf.rank;
    rep.add("K0(M) free rank", true, json{{"rank", rank}});
    bool all_one = true;
    for (const Int& d : pres.invariant_factors)
        if (d != 1) all_one = false;
    rep.add("relation lattice is saturated (all invariant factors 1)", all_one, json());
    return emit(rep, o);
}

int run_theorem_a(const CommonOpts& o) {
    Session s(o);
    Report rep;
    Subcat sub(s.alg, resolve_members(o, s.ar));
    if (!certify(s, sub, o, rep)) return emit(rep, o);
    TheoremAData ta = verify_theorem_a(s.alg, sub, o.n, s.ar, s.rng);
    for (auto& c : ta.report.checks) rep.checks.push_back(c);
    rep.basis_order = ta.report.basis_order;
    rep.relation_matrix = ta.report.relation_matrix;
    rep.invariant_factors = ta.report.invariant_factors;
    if (!ta.report.ok()) rep.verdict = VerdictKind::Fail;
    return emit(rep, o);
}

int run_k0_iso(const CommonOpts& o) {
    Session s(o);
    Report rep;
    Subcat sub(s.alg, resolve_members(o, s.ar));
    if (!certify(s, sub, o, rep)) return emit(rep, o);
    Report r = verify_k0_iso(s.alg, sub, o.n, s.ar, s.rng);
    for (auto& c : r.checks) rep.checks.push_back(c);
    rep.basis_order = r.basis_order;
    rep.relation_matrix = r.relation_matrix;
    rep.invariant_factors = r.invariant_factors;
    if (!r.ok()) rep.verdict = VerdictKind::Fail;
    return emit(rep, o);
}

int run_orthogonality(const CommonOpts& o) {
    Session s(o);
    Report rep;
    Subcat sub(s.alg, resolve_members(o, s.ar));
    if (!certify(s, sub, o, rep)) return emit(rep, o);
    Report r = verify_orthogonality(sub, o.n, s.rng);
    for (auto& c : r.checks) rep.checks.push_back(c);
    rep.basis_order = r.basis_order;
    rep.relation_matrix = r.relation_matrix;
    rep.invariant_factors = r.invariant_factors;
    if (!r.ok()) rep.verdict = VerdictKind::Fail;
    return emit(rep, o);
}

int run_catalog(const CommonOpts& o) {
    Report rep;
    for (const auto& e : catalog())
        rep.add(e.name, true, json{{"suggested_n", e.suggested_n}, {"notes", e.notes}});
    return emit(rep, o);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"nart: n-cluster tilting, n-almost split sequences, and "
                 "Grothendieck-group relation bases over bound quiver algebras"};
    app.require_subcommand(1);

    CommonOpts o;
    auto* knit = app.add_subcommand("knit", "enumerate the AR quiver");
    add_common(knit, o);
    auto* checkct = app.add_subcommand("check-ct", "certify an n-cluster tilting subcategory");
    add_common(checkct, o);
    auto* searchct = app.add_subcommand("search-ct", "search for n-cluster tilting subcategories");
    add_common(searchct, o);
    auto* nass = app.add_subcommand("nass", "construct and verify n-almost split sequences");
    add_common(nass, o);
    auto* defect = app.add_subcommand("defect", "defect vectors of n-almost split sequences");
    add_common(defect, o);
    auto* index = app.add_subcommand("index", "index vectors of the indecomposables");
    add_common(index, o);
    auto* k0 = app.add_subcommand("k0", "K0 presentation from the n-almost split relations");
    add_common(k0, o);
    auto* vta = app.add_subcommand("verify-theorem-a", "relation basis verification");
    add_common(vta, o);
    auto* vki = app.add_subcommand("verify-k0-iso", "K0(M) = K0(mod Lambda) verification");
    add_common(vki, o);
    auto* orth = app.add_subcommand("orthogonality", "bilinear pairing checks for the beta vectors");
    add_common(orth, o);
    auto* cat = app.add_subcommand("catalog", "list bundled algebras");
    add_common(cat, o, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (knit->parsed()) return run_knit(o);
        if (checkct->parsed()) return run_check_ct(o);
        if (searchct->parsed()) return run_search_ct(o);
        if (nass->parsed()) return run_nass(o, false);
        if (defect->parsed()) return run_nass(o, true);
        if (index->parsed()) return run_index(o);
        if (k0->parsed()) return run_k0(o);
        if (vta->parsed()) return run_theorem_a(o);
        if (vki->parsed()) return run_k0_iso(o);
        if (orth->parsed()) return run_orthogonality(o);
        if (cat->parsed()) return run_catalog(o);
    } catch (const BadInput& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const UnknownEntry& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "unverifiable: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
