// Acceptance criteria 1-8; one PASS/FAIL line each, exit status 1 if any fails.
#include "crx/catalog.hpp"

#include <chrono>
#include <cstdio>
#include <iostream>
#include <sstream>

using namespace crx;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void report(int n, bool ok, const std::string& detail) {
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << n << ": " << detail << std::endl;
    if (!ok) ++failures;
}

std::array<Scalar, 3> three(std::mt19937_64& rng) {
    auto z = random_zetas(rng, 3);
    return {z[0], z[1], z[2]};
}

std::size_t label_index(const std::vector<std::string>& s, const std::string& l) {
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i] == l) return i;
    throw std::runtime_error("missing basis label " + l);
}

// Reference B-sets for the two-prism S2xS1: tetrahedra 0-2 are prism A.
TauChain reference_chain(const ClosedExample& ex, const TwistedComplex& tc, const std::string& tag) {
    const auto& S = tc.cx.spaces;
    GroupElem eta = ex.tri.group().generator(0);
    auto phi = [&](int v) {
        return "dphi_" + ex.tri.edge_label(*ex.tri.find_edge(ex.tri.edge_key({v, {}}, {v, eta})));
    };
    TauChain ch;
    ch.B.resize(6);
    ch.B[1] = {label_index(S[1], "dz_1")};
    ch.B[2] = {label_index(S[2], "dy_0"), label_index(S[2], "dy_1"), label_index(S[2], "dy_2")};
    ch.B[3] = {label_index(S[3], phi(1)), label_index(S[3], phi(2)), label_index(S[3], phi(3))};
    ch.B[4] = {label_index(S[4], "dalpha_1"), label_index(S[4], "dalpha_2"), label_index(S[4], "dalpha_3"),
               label_index(S[4], "dbeta_2"),  label_index(S[4], "dbeta_3"),  label_index(S[4], "dg*_" + tag)};
    ch.B[5] = {0};
    return ch;
}

struct Mutant {
    std::string name;
    Triangulation tri;
    const ClosedExample* ex;
};

// Seeded random same-frame 2-3 or 1-4 move.
RatioCheck random_move(std::mt19937_64& rng, const Triangulation& t, const ClosedExample& ex) {
    if (rng() % 2 == 0) {
        std::vector<std::pair<std::size_t, int>> cand;
        for (std::size_t i = 0; i < t.n3(); ++i)
            for (int x = 0; x < 4; ++x)
                if (can_pachner_23(t, i, x, true)) cand.emplace_back(i, x);
        if (!cand.empty()) {
            auto [i, x] = cand[rng() % cand.size()];
            return pachner_ratio_23(t, ex.rep, ex.defo, ex.stab, i, x);
        }
    }
    std::size_t i = rng() % t.n3();
    for (int attempt = 0;; ++attempt) {
        Scalar z = random_rational(rng);
        bool fresh = true;
        for (auto& [v, zz] : t.zeta()) fresh = fresh && zz != z;
        if (!fresh) continue;
        try {
            return pachner_ratio_14(t, ex.rep, ex.defo, ex.stab, i, z);
        } catch (const GenericityError&) {
            if (attempt > 20) throw;
        }
    }
}

}  // namespace

int main() {
    std::mt19937_64 rng(20240611);

    // 1
    {
        bool ok = true;
        double worst = 0;
        int runs = 0;
        std::string bad;
        for (Scalar lam : {Scalar(2), Scalar(Rational(3, 2)), Scalar(Rational(5, 3)), Scalar(-2), Scalar(7)}) {
            Scalar expected = (lam - lam.inv()).pow(-4);
            for (int i = 0; i < 5; ++i) {
                auto t0 = Clock::now();
                auto ex = make_s2xs1(S2Kind::nonparabolic, lam, three(rng));
                Scalar v = invariant_closed(ex.tri, ex.rep, ex.defo, ex.stab).value;
                worst = std::max(worst, seconds_since(t0));
                ++runs;
                if (!equal_up_to_sign(v, expected)) {
                    ok = false;
                    bad = "lambda " + lam.str() + ": " + v.str() + " vs " + expected.str();
                }
            }
        }
        ok = ok && worst < 1.0;
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.4f", worst);
        report(1, ok, std::to_string(runs) + " instances, I = +-(lambda - 1/lambda)^-4 exactly, slowest " + buf + " s" +
                          (bad.empty() ? "" : "; mismatch " + bad));
    }

    // 2
    {
        bool ok = true;
        std::string vals;
        for (int i = 0; i < 5; ++i) {
            auto ex = make_s2xs1(S2Kind::parabolic, Scalar(1), three(rng));
            Scalar v = invariant_closed(ex.tri, ex.rep, ex.defo, ex.stab).value;
            ok = ok && equal_up_to_sign(v, Scalar(Rational(1, 4)));
            vals += (i ? ", " : "") + v.str();
        }
        report(2, ok, "5 draws, I = " + vals);
    }

    // 3
    {
        bool ok = true;
        int points = 0;
        std::string bad;
        for (int kind = 0; kind < 2; ++kind)
            for (int i = 0; i < 3; ++i) {
                auto z = three(rng);
                Scalar lam = Scalar(1);
                if (kind == 0)
                    do lam = random_rational(rng);
                    while (lam.is_zero() || lam * lam == Scalar(1));
                auto ex = make_s2xs1(kind ? S2Kind::parabolic : S2Kind::nonparabolic, lam, z);
                auto tc = build_twisted(ex.tri, ex.rep, ex.defo, ex.stab);
                auto ch = reference_chain(ex, tc, kind ? kDeltaTag : kLambdaTag);
                auto d = chain_minors(tc.cx, ch);
                const Scalar &z1 = z[0], &z2 = z[1], &z3 = z[2];
                auto prime = [&](const Scalar& x) { return kind ? x + Scalar(1) : lam * lam * x; };
                Scalar p1 = prime(z1), p2 = prime(z2), p3 = prime(z3);
                std::array<Scalar, 4> e;
                if (kind == 0) {
                    Scalar l2 = (lam - 1) * (lam - 1) * (lam + 1) * (lam + 1);
                    e[0] = Scalar(2) * z1;
                    e[1] = -(Scalar(2) * l2 * z1) / (lam * lam * (p1 - z1) * (p2 - z2) * (p3 - z3) * (z1 - z2) * (z1 - z3) *
                                                     (z2 - z3) * (p1 - z2) * (p1 - z3) * (z2 - p3));
                    e[2] = lam * lam * (p1 - z1) * (p2 - z2) * (p3 - z3) * (p1 - z2) * (z1 - z3) * (z2 - z3);
                    e[3] = Scalar(2) * l2 * z1 / ((z1 - z2) * (z2 - p3) * (p1 - z3));
                } else {
                    e[0] = Scalar(1);
                    e[1] = -Scalar(2) / ((z1 - z2) * (z1 - z3) * (z2 - z3) * (p1 - z2) * (p1 - z3) * (z2 - p3));
                    e[2] = (p1 - z2) * (z1 - z3) * (z2 - z3);
                    e[3] = Scalar(2) / ((z1 - z2) * (z2 - p3) * (p1 - z3));
                }
                for (int k = 0; k < 4; ++k)
                    if (!equal_up_to_sign(d[k], e[k])) {
                        ok = false;
                        bad = (kind ? "parabolic" : "non-parabolic") + std::string(" d") + std::to_string(k + 1);
                    }
                ++points;
            }
        report(3, ok, "det_B1..det_B4 with the reference B-sets match the closed-form minors at " + std::to_string(points) +
                          " random points (3 non-parabolic, 3 parabolic)" + (bad.empty() ? "" : "; mismatch " + bad));
    }

    // Catalog closed examples and their Pachner mutations, shared by 4, 5, 6.
    std::vector<ClosedExample> catalog;
    catalog.push_back(make_s2xs1(S2Kind::nonparabolic, Scalar(2), three(rng)));
    catalog.push_back(make_s2xs1(S2Kind::parabolic, Scalar(1), three(rng)));
    {
        auto z = random_zetas(rng, 4);
        catalog.push_back(make_doubled_tetrahedron({z[0], z[1], z[2], z[3]}));
        LensExample L = make_lens({7, 1, 1, 0}, {z[0], z[1], z[2], z[3]});
        catalog.push_back({"lens_7_1", L.tri, L.rep, Deformation::none(L.rep), stabilizer_basis(L.rep)});
    }

    std::vector<Mutant> mutants;
    int moves = 0, ratio_ok = 0, inv_ok = 0;
    std::string move_bad;
    auto t6 = Clock::now();
    for (std::size_t c = 0; c < 3; ++c) {
        const ClosedExample& ex = catalog[c];
        Scalar start = invariant_closed(ex.tri, ex.rep, ex.defo, ex.stab).value;
        for (int seq = 0; seq < 4; ++seq) {
            Triangulation t = ex.tri;
            for (int step = 0; step < 5; ++step) {
                RatioCheck r = random_move(rng, t, ex);
                ++moves;
                if (r.ratio_ok) ++ratio_ok;
                else move_bad = ex.name + " " + r.move + " ratio " + r.ratio.str() + " expected " + r.expected.str();
                if (equal_up_to_sign(r.after, start)) ++inv_ok;
                else move_bad = ex.name + " " + r.move + " changed I to " + r.after.str();
                t = r.result;
                mutants.push_back({ex.name + " seq " + std::to_string(seq) + " step " + std::to_string(step), t, &ex});
            }
        }
    }
    double fuzz_time = seconds_since(t6);

    // 4
    {
        bool ok = true;
        std::string bad;
        std::size_t complexes = 0;
        auto check = [&](const std::string& name, const Triangulation& t, const ClosedExample& ex) {
            ++complexes;
            auto tc = build_twisted(t, ex.rep, ex.defo, ex.stab);
            std::string f = chain_failure(tc.cx);
            if (!f.empty()) {
                ok = false;
                bad = name + ": " + f;
            }
            for (std::size_t e = 0; e < t.n1(); ++e)
                if (edge_deficit(t, ex.rep, e) != Scalar(1)) {
                    ok = false;
                    bad = name + ": deficit at " + t.edge_label(e);
                }
            for (std::size_t k = 0; k < t.n3(); ++k)
                if (!tet_discrepancy(t, ex.rep, k).is_zero()) {
                    ok = false;
                    bad = name + ": discrepancy in tetrahedron " + std::to_string(k);
                }
        };
        for (auto& ex : catalog) check(ex.name, ex.tri, ex);
        for (auto& m : mutants) check(m.name, m.tri, *m.ex);
        report(4, ok, std::to_string(catalog.size()) + " catalog complexes + " + std::to_string(mutants.size()) +
                          " Pachner mutations: f_{i+1} f_i = 0, omega = 1, Omega = 0" + (bad.empty() ? "" : "; " + bad));
    }

    // 5
    {
        bool ok = true;
        std::string bad;
        auto check = [&](const std::string& name, const Triangulation& t, const ClosedExample& ex) {
            auto h = check_acyclic(build_twisted(t, ex.rep, ex.defo, ex.stab).cx);
            if (!h.acyclic) {
                ok = false;
                bad = name;
            }
        };
        for (auto& ex : catalog) check(ex.name, ex.tri, ex);
        for (auto& m : mutants) check(m.name, m.tri, *m.ex);
        // relative lens complex for a nonvanishing D
        auto z = random_zetas(rng, 4);
        LensExample L = make_lens({7, 1, 1, 0}, {z[0], z[1], z[2], z[3]});
        auto rel = invariant_relative(L.tri, L.rep, L.rel, dset_indices(L, {"13A", "14l", "23a", "24B"}));
        if (!rel.acyclic) {
            ok = false;
            bad = "lens relative";
        }
        report(5, ok, std::to_string(catalog.size() + mutants.size()) +
                          " closed complexes and the L(7,1) relative complex have all homology dims 0" +
                          (bad.empty() ? "" : "; not acyclic: " + bad));
    }

    // 6
    {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.2f", fuzz_time);
        bool ok = ratio_ok == moves && inv_ok == moves && moves >= 20 && fuzz_time < 10.0;
        report(6, ok, std::to_string(moves) + " seeded moves on 3 manifolds: " + std::to_string(ratio_ok) + " ratios match, " +
                          std::to_string(inv_ok) + " invariants unchanged, " + buf + " s" +
                          (move_bad.empty() ? "" : "; " + move_bad));
    }

    // 7
    {
        std::ostringstream d;
        bool ok = true;
        for (long q : {1L, 2L}) {
            Table1Options opt;
            opt.p = 7;
            opt.q = q;
            opt.parallelism = 3;
            auto t0 = Clock::now();
            Table1Result r = table1_search(opt);
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.2f", seconds_since(t0));
            int strict = 0, componentwise = 0;
            std::string missing;
            for (std::size_t i = 0; i < r.rows.size(); ++i) {
                auto& row = r.rows[i];
                if (!row.single_sign.empty())
                    ++strict;
                else {
                    if (row.matched()) ++componentwise;
                    missing += " " + std::to_string(i + 1) + (row.matched() ? "(per-component signs)" : "(unmatched)");
                }
            }
            ok = ok && r.square && strict == static_cast<int>(r.rows.size());
            d << "L(7," << q << ") f3 " << r.dimension << "x" << r.tetrahedra << (r.square ? " square" : " NOT square") << ", "
              << r.subsets << " subsets, " << r.zero_subsets << " zero, rows with one global sign " << strict << "/"
              << r.rows.size();
            if (!missing.empty()) d << ", rows" << missing;
            d << " [" << buf << " s]; ";
        }
        report(7, ok, d.str());
    }

    // 8
    {
        std::ostringstream d;
        bool chains_ok = true, formula_ok = true, zeta_ok = true, gauge_ok = true;
        std::string gauge_bad;
        for (std::size_t c = 0; c < catalog.size(); ++c) {
            const ClosedExample& ex = catalog[c];
            auto inv = invariant_closed(ex.tri, ex.rep, ex.defo, ex.stab);
            std::vector<TauChain> seen;
            for (std::uint64_t s = 0; s < 64 && seen.size() < 3; ++s) {
                TauChain ch = find_tau_chain_closed(inv.complex, s);
                bool fresh = true;
                for (auto& x : seen) fresh = fresh && x.B != ch.B;
                if (!fresh) continue;
                seen.push_back(ch);
                Scalar t = torsion_closed(inv.complex, ch);
                chains_ok = chains_ok && equal_up_to_sign(t, inv.tau);
                formula_ok = formula_ok && equal_up_to_sign(t, torsion(inv.complex.cx, ch));
            }
            chains_ok = chains_ok && seen.size() >= 3;
            if (c < 3) {
                auto ids = ex.tri.vertices();
                for (int i = 0; i < 5;) {
                    auto z = random_zetas(rng, ids.size());
                    std::map<int, Scalar> zm;
                    for (std::size_t k = 0; k < ids.size(); ++k) zm[ids[k]] = z[k];
                    Triangulation t = Triangulation::build(ex.tri.group(), zm, ex.tri.tets(), ex.tri.edge_reps());
                    try {
                        zeta_ok = zeta_ok && equal_up_to_sign(invariant_closed(t, ex.rep, ex.defo, ex.stab).value, inv.value);
                        ++i;
                    } catch (const GenericityError&) {
                    }
                }
            }
            const DeckGroup& g = ex.tri.group();
            if (!g.generators().empty() && c < 3) {
                for (std::size_t k = 0; k < ex.tri.n3(); ++k) {
                    Triangulation t = regauge(ex.tri, k, g.generator(0));
                    Scalar v = invariant_closed(t, ex.rep, ex.defo, ex.stab).value;
                    if (!equal_up_to_sign(v, inv.value)) {
                        gauge_ok = false;
                        gauge_bad = ex.name + " tetrahedron " + std::to_string(k) + " re-lifted: ratio " + (v / inv.value).str();
                        break;
                    }
                }
            }
        }
        d << "3 distinct tau-chains agree on every catalog complex: " << (chains_ok ? "yes" : "NO")
          << "; generic = closed formula: " << (formula_ok ? "yes" : "NO") << "; zeta redraws: " << (zeta_ok ? "yes" : "NO")
          << "; fundamental-family re-gauging: " << (gauge_ok ? "yes" : "NO (" + gauge_bad + ")");
        report(8, chains_ok && formula_ok && zeta_ok && gauge_ok, d.str());
    }

    std::cout << (failures ? std::to_string(failures) + " criteria failed" : "all criteria passed") << std::endl;
    return failures ? 1 : 0;
}
