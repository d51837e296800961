#include "crx/cli.hpp"

#include <json.hpp>

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

namespace crx {

namespace {

using nlohmann::json;

json base(const std::string& command) { return json{{"schema", 1}, {"command", command}}; }

std::string list_str(const std::vector<std::string>& v, const std::string& sep = ", ") {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
    return s;
}

std::string dims_str(const std::vector<std::size_t>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
    return s;
}

std::vector<std::string> chain_labels(const ChainComplex& c, const TauChain& ch, std::size_t i) {
    std::vector<std::string> out;
    for (auto k : ch.B[i]) out.push_back(c.spaces[i][k]);
    return out;
}

Report finish(int code, const std::string& text, json j) {
    j["exit_code"] = code;
    return {code, text, j.dump(2) + "\n"};
}

Document prepared(const Document& doc, const RunConfig& cfg) {
    Document d = doc;
    if (cfg.lambda) set_lambda(d, *cfg.lambda);
    return d;
}

FieldPtr draw_field(const Document& d, const RunConfig& cfg) { return cfg.field ? *cfg.field : d.field; }

// New random vertex coordinates with bounded retries on degenerate draws.
template <class F>
auto with_redraws(std::mt19937_64& rng, std::size_t n, const FieldPtr& field, F&& f) {
    for (int attempt = 0;; ++attempt) {
        auto z = random_zetas(rng, n, field);
        try {
            return f(z);
        } catch (const GenericityError&) {
            if (attempt >= 20) throw;
        }
    }
}

Report relative_report(const Triangulation& tri, const Representation& rep, const RelativeStructure& rel,
                       const std::vector<std::string>& names, json j, std::ostringstream& out) {
    std::vector<std::string> known;
    for (auto& b : rel.boundary) known.push_back(b.name);
    std::vector<std::size_t> D;
    for (auto& n : names) {
        auto it = std::find(known.begin(), known.end(), n);
        if (it == known.end()) throw CatalogError("unknown boundary edge '" + n + "' (known: " + list_str(known) + ")");
        D.push_back(static_cast<std::size_t>(it - known.begin()));
    }
    RelativeInvariant r = invariant_relative(tri, rep, rel, D);
    j["kind"] = "relative";
    j["boundary_edges"] = known;
    j["dset"] = names;
    j["interior_edges"] = rel.interior_edges.size();
    j["interior_tetrahedra"] = rel.interior_tets.size();
    j["det_f3"] = r.det.str();
    j["zeta_product"] = r.prod.str();
    j["invariant"] = r.value.str();
    j["acyclic"] = r.acyclic;
    j["up_to_sign"] = true;
    out << "relative complex: " << rel.interior_edges.size() << " interior edges + " << D.size() << " boundary edges, "
        << rel.interior_tets.size() << " tetrahedra\n";
    out << "D = {" << list_str(names) << "}\n";
    out << "det f3 = " << r.det.str() << "\n";
    if (!r.acyclic) {
        out << "not acyclic: det f3 = 0, invariant 0\n";
        return finish(kMathFailure, out.str(), j);
    }
    out << "zeta product = " << r.prod.str() << "\n";
    out << "I = " << r.value.str() << " (up to sign)\n";
    return finish(kOk, out.str(), j);
}

struct Suite {
    std::string name;
    bool ok = true;
    std::string detail;
};

}  // namespace

Report cmd_invariant(const Document& doc, const RunConfig& cfg) {
    Document d = prepared(doc, cfg);
    json j = base("invariant");
    j["source"] = d.source;
    std::ostringstream out;
    if (d.distinguished) {
        if (d.dset.empty()) throw CatalogError("a relative run needs boundary edges (marks boundary or --dset)");
        RelativeStructure rel = relative_structure(d.tri, (*d.distinguished)[0], (*d.distinguished)[1]);
        return relative_report(d.tri, d.rep, rel, d.dset, j, out);
    }
    j["kind"] = "closed";
    TwistedComplex tc = build_twisted(d.tri, d.rep, d.defo, d.stab);
    std::vector<std::size_t> dims;
    for (auto& s : tc.cx.spaces) dims.push_back(s.size());
    j["dims"] = dims;
    out << "complex dims: " << dims_str(dims) << "\n";
    try {
        ClosedInvariant inv = invariant_closed(d.tri, d.rep, d.defo, d.stab);
        j["homology"] = inv.homology.dims;
        json chain = json::object();
        for (std::size_t i = 1; i < inv.chain.B.size(); ++i)
            chain["B" + std::to_string(i)] = chain_labels(inv.complex.cx, inv.chain, i);
        j["tau_chain"] = chain;
        std::vector<std::string> minors;
        for (auto& m : inv.minors) minors.push_back(m.str());
        j["minors"] = minors;
        j["tau"] = inv.tau.str();
        j["tau_generic"] = inv.tau_generic.str();
        j["zeta_product"] = inv.zprod.str();
        j["invariant"] = inv.value.str();
        j["up_to_sign"] = true;
        out << "homology dims: " << dims_str(inv.homology.dims) << " (acyclic)\n";
        for (std::size_t i = 1; i < inv.chain.B.size(); ++i)
            out << "B" << i << " = {" << list_str(chain_labels(inv.complex.cx, inv.chain, i)) << "}\n";
        for (std::size_t i = 0; i < inv.minors.size(); ++i) out << "d" << i + 1 << " = " << inv.minors[i].str() << "\n";
        out << "tau = " << inv.tau.str() << " (up to sign)\n";
        out << "zeta product = " << inv.zprod.str() << "\n";
        out << "I = " << inv.value.str() << " (up to sign)\n";
        return finish(kOk, out.str(), j);
    } catch (const NotAcyclic& e) {
        j["homology"] = e.homology.dims;
        j["error"] = e.what();
        out << "not acyclic: homology dims " << dims_str(e.homology.dims) << "\n";
        return finish(kMathFailure, out.str(), j);
    }
}

Report cmd_lens_invariant(const LensSpec& spec, const std::vector<std::string>& dset, const RunConfig& cfg) {
    if (dset.size() != 4) throw CatalogError("--dset needs exactly four boundary edges");
    FieldPtr field = real_cyclotomic_field(spec.p);
    std::mt19937_64 rng(cfg.seed);
    json j = base("invariant");
    j["source"] = "lens";
    j["p"] = spec.p;
    j["q"] = spec.q;
    j["n"] = spec.n;
    j["rep_k"] = spec.rep_k;
    std::ostringstream out;
    return with_redraws(rng, 4, field, [&](const std::vector<Scalar>& z) {
        LensExample L = make_lens(spec, {z[0], z[1], z[2], z[3]});
        json jj = j;
        json zj = json::object();
        for (int i = 0; i < 4; ++i) zj[std::to_string(i + 1)] = z[i].str();
        jj["zeta"] = zj;
        out.str("");
        out << "L(" << spec.p << "," << spec.q << ") n = " << spec.n << ", relative dimension " << L.dimension << "\n";
        out << "zeta = " << z[0].str() << ", " << z[1].str() << ", " << z[2].str() << ", " << z[3].str() << "\n";
        return relative_report(L.tri, L.rep, L.rel, dset, jj, out);
    });
}

Report cmd_verify(const Document& doc, const RunConfig& cfg) {
    Document d = prepared(doc, cfg);
    std::vector<Suite> suites;

    // chain property
    TwistedComplex tc = build_twisted(d.tri, d.rep, d.defo, d.stab);
    if (cfg.corrupt_f3) {
        Matrix& f3 = tc.cx.maps.at(2);
        auto [r, c] = *cfg.corrupt_f3;
        if (r >= f3.rows || c >= f3.cols) throw CatalogError("--corrupt-f3 entry out of range");
        f3.at(r, c) += Scalar(1);
    }
    {
        Suite s{"chain", true, ""};
        std::string f = chain_failure(tc.cx);
        if (!f.empty()) {
            s.ok = false;
            s.detail = f;
        } else
            s.detail = "f_{i+1} f_i = 0 for all i";
        suites.push_back(s);
    }

    // macroscopic
    {
        Suite s{"macroscopic", true, ""};
        try {
            for (std::size_t e = 0; e < d.tri.n1() && s.ok; ++e) {
                Scalar w = edge_deficit(d.tri, d.rep, e);
                if (w != Scalar(1)) {
                    s.ok = false;
                    s.detail = "deficit at edge " + d.tri.edge_label(e) + " is " + w.str();
                }
            }
            for (std::size_t t = 0; t < d.tri.n3() && s.ok; ++t) {
                Scalar o = tet_discrepancy(d.tri, d.rep, t);
                if (!o.is_zero()) {
                    s.ok = false;
                    s.detail = "discrepancy of tetrahedron " + std::to_string(t) + " is " + o.str();
                }
            }
        } catch (const GenericityError& e) {
            s.ok = false;
            s.detail = e.what();
        }
        if (s.ok) s.detail = "omega = 1 on " + std::to_string(d.tri.n1()) + " edges, Omega = 0 on " + std::to_string(d.tri.n3()) + " tetrahedra";
        suites.push_back(s);
    }

    // acyclicity
    Homology h = check_acyclic(tc.cx);
    suites.push_back({"acyclicity", h.acyclic, h.complex ? "homology dims " + dims_str(h.dims) : "not a chain complex: ranks " + dims_str(h.ranks)});

    // tau-chain independence
    std::optional<Scalar> base_value;
    {
        Suite s{"tau_chain_independence", true, ""};
        if (!h.acyclic || cfg.corrupt_f3) {
            s.ok = false;
            s.detail = "skipped: complex is not acyclic";
        } else {
            std::vector<TauChain> chains;
            std::optional<Scalar> tau;
            for (std::uint64_t seed = 0; seed < 64 && chains.size() < 3 && s.ok; ++seed) {
                TauChain ch = find_tau_chain_closed(tc, seed);
                bool fresh = std::none_of(chains.begin(), chains.end(), [&](const TauChain& x) { return x.B == ch.B; });
                if (!fresh) continue;
                chains.push_back(ch);
                Scalar t = torsion_closed(tc, ch), g = torsion(tc.cx, ch);
                if (!equal_up_to_sign(t, g)) {
                    s.ok = false;
                    s.detail = "closed and generic torsion formulas differ: " + t.str() + " vs " + g.str();
                } else if (tau && !equal_up_to_sign(*tau, t)) {
                    s.ok = false;
                    s.detail = "tau " + t.str() + " differs from " + tau->str();
                }
                if (!tau) tau = t;
            }
            if (s.ok) {
                s.detail = std::to_string(chains.size()) + " distinct chains, tau = " + tau->str();
                base_value = *tau / zeta_product(d.tri, d.rep);
            }
        }
        suites.push_back(s);
    }

    // zeta independence
    {
        Suite s{"zeta_independence", true, ""};
        if (!base_value) {
            s.ok = false;
            s.detail = "skipped: no reference invariant";
        } else {
            std::mt19937_64 rng(cfg.seed);
            FieldPtr field = draw_field(d, cfg);
            auto ids = d.tri.vertices();
            for (int trial = 0; trial < cfg.trials && s.ok; ++trial) {
                try {
                    Scalar v = with_redraws(rng, ids.size(), field, [&](const std::vector<Scalar>& z) {
                        std::map<int, Scalar> zm;
                        for (std::size_t i = 0; i < ids.size(); ++i) zm[ids[i]] = z[i];
                        Document x = with_zeta(d, zm);
                        return invariant_closed(x.tri, x.rep, x.defo, x.stab).value;
                    });
                    if (!equal_up_to_sign(v, *base_value)) {
                        s.ok = false;
                        s.detail = "trial " + std::to_string(trial) + ": I = " + v.str() + " vs " + base_value->str();
                    }
                } catch (const NotAcyclic& e) {
                    s.ok = false;
                    s.detail = "trial " + std::to_string(trial) + ": not acyclic";
                }
            }
            if (s.ok) s.detail = std::to_string(cfg.trials) + " redraws, I = " + base_value->str() + " (up to sign)";
        }
        suites.push_back(s);
    }

    json j = base("verify");
    j["source"] = d.source;
    j["seed"] = cfg.seed;
    j["trials"] = cfg.trials;
    json arr = json::array();
    std::ostringstream out;
    bool all = true;
    for (auto& s : suites) {
        arr.push_back({{"suite", s.name}, {"ok", s.ok}, {"detail", s.detail}});
        out << (s.ok ? "PASS " : "FAIL ") << s.name << ": " << s.detail << "\n";
        all = all && s.ok;
    }
    j["suites"] = arr;
    return finish(all ? kOk : kMathFailure, out.str(), j);
}

Report cmd_pachner_fuzz(const Document& doc, const RunConfig& cfg) {
    Document d = prepared(doc, cfg);
    std::mt19937_64 rng(cfg.seed);
    FieldPtr field = draw_field(d, cfg);
    json j = base("pachner-fuzz");
    j["source"] = d.source;
    j["seed"] = cfg.seed;
    j["moves"] = cfg.moves;
    json trace = json::array();
    std::ostringstream out;
    Triangulation t = d.tri;
    Scalar start;
    try {
        start = invariant_closed(t, d.rep, d.defo, d.stab).value;
    } catch (const NotAcyclic& e) {
        j["error"] = std::string("initial complex: ") + e.what();
        j["trace"] = trace;
        return finish(kMathFailure, "initial complex is not acyclic\n", j);
    }
    j["initial_invariant"] = start.str();
    out << "I = " << start.str() << " before any move\n";
    bool ok = true;
    for (int step = 0; step < cfg.moves && ok; ++step) {
        json m;
        RatioCheck r;
        std::string desc;
        try {
            std::vector<std::pair<std::size_t, int>> cand;
            bool two_three = rng() % 2 == 0;
            if (two_three)
                for (std::size_t i = 0; i < t.n3(); ++i)
                    for (int x = 0; x < 4; ++x)
                        if (can_pachner_23(t, i, x, true)) cand.emplace_back(i, x);
            if (!cand.empty()) {
                auto [i, x] = cand[rng() % cand.size()];
                r = pachner_ratio_23(t, d.rep, d.defo, d.stab, i, x);
                m = {{"move", "2-3"}, {"tet", i}, {"omitted", x}};
                desc = "2-3 tet " + std::to_string(i) + " face " + std::to_string(x);
            } else {
                std::size_t i = rng() % t.n3();
                auto taken = t.zeta();
                r = with_redraws(rng, 1, field, [&](const std::vector<Scalar>& z) {
                    for (auto& [v, zz] : taken)
                        if (zz == z[0]) throw GenericityError("new vertex coincides with vertex " + std::to_string(v));
                    m = {{"move", "1-4"}, {"tet", i}, {"zeta_new", z[0].str()}};
                    desc = "1-4 tet " + std::to_string(i) + " zeta " + z[0].str();
                    return pachner_ratio_14(t, d.rep, d.defo, d.stab, i, z[0]);
                });
            }
        } catch (const NotAcyclic& e) {
            m["error"] = e.what();
            trace.push_back(m);
            out << step + 1 << ": " << desc << " not acyclic\n";
            ok = false;
            break;
        }
        TwistedComplex tc = build_twisted(r.result, d.rep, d.defo, d.stab);
        std::string chain = chain_failure(tc.cx);
        bool acyclic = check_acyclic(tc.cx).acyclic;
        bool inv_ok = equal_up_to_sign(r.after, start);
        m["ratio"] = r.ratio.str();
        m["expected"] = r.expected.str();
        m["ratio_ok"] = r.ratio_ok;
        m["invariant"] = r.after.str();
        m["invariant_ok"] = inv_ok;
        m["chain_ok"] = chain.empty();
        m["acyclic"] = acyclic;
        m["tetrahedra"] = r.result.n3();
        trace.push_back(m);
        out << step + 1 << ": " << desc << "  ratio " << r.ratio.str() << " expected " << r.expected.str()
            << (r.ratio_ok ? " ok" : " MISMATCH") << ", I = " << r.after.str() << (inv_ok ? "" : " CHANGED")
            << (chain.empty() ? "" : ", chain fails at " + chain) << (acyclic ? "" : ", not acyclic") << "\n";
        ok = r.ratio_ok && inv_ok && chain.empty() && acyclic;
        t = r.result;
    }
    j["trace"] = trace;
    j["ok"] = ok;
    if (!ok) out << "failure after " << trace.size() << " move(s); the trace above is the offending prefix\n";
    else out << "all " << cfg.moves << " move(s) passed\n";
    return finish(ok ? kOk : kMathFailure, out.str(), j);
}

Report cmd_table1(long p, long q, long rep_k, const RunConfig& cfg) {
    Table1Options opt;
    opt.p = p;
    opt.q = q;
    opt.rep_k = rep_k;
    opt.seed = cfg.seed;
    opt.parallelism = cfg.parallelism;
    Table1Result r = table1_search(opt);
    auto monos = table1_candidate_monomials();

    json j = base("table1");
    j["p"] = p;
    j["q"] = q;
    j["rep_k"] = rep_k;
    j["seed"] = cfg.seed;
    j["dimension"] = r.dimension;
    j["tetrahedra"] = r.tetrahedra;
    j["square"] = r.square;
    j["subsets"] = r.subsets;
    j["zero_subsets"] = r.zero_subsets;
    j["boundary_edges"] = r.copies;
    std::ostringstream out;
    out << "L(" << p << "," << q << "): relative f3 is " << r.dimension << " x " << r.tetrahedra
        << (r.square ? " (square)" : " (NOT square)") << ", expected dimension " << 4 * p - 2 << "\n";
    out << r.subsets << " subsets, " << r.zero_subsets << " with vanishing determinant\n";

    json nonzero = json::array();
    for (auto& s : r.nonzero) {
        json e{{"D", s.D}};
        std::vector<std::string> vals;
        for (auto& v : s.values) vals.push_back(v.str());
        e["values"] = vals;
        json cs = json::array();
        for (auto& [mi, c] : s.constants) {
            std::vector<std::string> cv;
            for (auto& x : c) cv.push_back(x.str());
            cs.push_back({{"monomial", monomial_str(monos[mi])}, {"constants", cv}});
        }
        e["constant_after"] = cs;
        nonzero.push_back(e);
    }
    j["nonzero"] = nonzero;

    json rows = json::array();
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        auto& m = r.rows[i];
        std::string triple = "(" + std::to_string(m.row.triple[0]) + "," + std::to_string(m.row.triple[1]) + "," +
                             std::to_string(m.row.triple[2]) + ")";
        json e{{"row", i + 1}, {"triple", m.row.triple}, {"monomial", monomial_str(m.row.monomial)}, {"matched", m.matched()}};
        std::vector<std::string> pr, ss;
        for (auto& D : m.with_monomial) pr.push_back(list_str(D, ","));
        for (auto& D : m.single_sign) ss.push_back(list_str(D, ","));
        e["subsets"] = pr;
        e["single_sign_subsets"] = ss;
        json other = json::array();
        for (auto& [D, mi] : m.other) other.push_back({{"D", D}, {"monomial", monomial_str(monos[mi])}});
        e["other_monomial"] = other;
        rows.push_back(e);
        out << "row " << i + 1 << " " << triple << " / " << monomial_str(m.row.monomial) << ": ";
        if (m.matched()) {
            out << "matched by";
            for (auto& D : m.with_monomial) {
                bool one = std::find(m.single_sign.begin(), m.single_sign.end(), D) != m.single_sign.end();
                out << " {" << list_str(D, ",") << "}" << (one ? "" : "*");
            }
            out << "\n";
        } else {
            out << "UNMATCHED";
            for (auto& [D, mi] : m.other) out << "; {" << list_str(D, ",") << "} matches with " << monomial_str(monos[mi]);
            out << "\n";
        }
    }
    j["rows"] = rows;
    bool all = r.all_rows_matched();
    j["all_rows_matched"] = all;
    if (r.rows.empty())
        out << "no reference rows for these parameters; " << r.nonzero.size() << " nonzero subsets in the JSON report\n";
    else
        out << (all ? "all rows matched" : "some rows unmatched") << " (* = per-component signs differ)\n";
    return finish(all ? kOk : kMathFailure, out.str(), j);
}

Report cmd_catalog(const std::string& name, const LensSpec& lens, const RunConfig& cfg) {
    std::mt19937_64 rng(cfg.seed);
    Document d;
    if (name == "lens") {
        FieldPtr field = real_cyclotomic_field(lens.p);
        d = with_redraws(rng, 4, field, [&](const std::vector<Scalar>& z) {
            LensExample L = make_lens(lens, {z[0], z[1], z[2], z[3]});
            Document x;
            x.source = "lens";
            x.field = field;
            x.tri = L.tri;
            x.rep = L.rep;
            x.defo = Deformation::none(L.rep);
            x.stab = stabilizer_basis(L.rep);
            x.distinguished = L.rel.distinguished;
            return x;
        });
    } else {
        FieldPtr field = cfg.field ? *cfg.field : Field::rationals();
        ClosedExample ex = with_redraws(rng, 4, field, [&](const std::vector<Scalar>& z) {
            if (name == "s2xs1_nonparabolic")
                return make_s2xs1(S2Kind::nonparabolic, cfg.lambda.value_or(Scalar(2)), {z[0], z[1], z[2]});
            if (name == "s2xs1_parabolic") return make_s2xs1(S2Kind::parabolic, Scalar(1), {z[0], z[1], z[2]});
            if (name == "doubled_tetrahedron") return make_doubled_tetrahedron({z[0], z[1], z[2], z[3]});
            throw CatalogError("unknown catalog object '" + name +
                               "' (s2xs1_nonparabolic, s2xs1_parabolic, doubled_tetrahedron, lens)");
        });
        d = document_from(ex);
        if (cfg.field) d.field = *cfg.field;
    }
    std::string text = "# " + name + ", seed " + std::to_string(cfg.seed) + "\n" + format_document(d);
    json j = base("catalog");
    j["name"] = name;
    j["document"] = text;
    return finish(kOk, text, j);
}

}  // namespace crx
