#include "crx/catalog.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>

namespace crx {

namespace {

LiftedVertex lv(int v, GroupElem g = {}) { return {v, std::move(g)}; }

std::map<int, Scalar> zeta_map(std::initializer_list<Scalar> z) {
    std::map<int, Scalar> m;
    int i = 1;
    for (auto& x : z) m[i++] = x;
    return m;
}

long mod(long a, long p) { return ((a % p) + p) % p; }

long inverse_mod(long q, long p) {
    for (long x = 1; x < p; ++x)
        if (mod(q * x, p) == 1) return x;
    if (p == 1) return 0;
    throw CatalogError("q = " + std::to_string(q) + " is not invertible modulo " + std::to_string(p));
}

Poly cyclotomic(long n) {
    Poly num(static_cast<std::size_t>(n) + 1, Rational(0));
    num[0] = -1;
    num[static_cast<std::size_t>(n)] = 1;
    for (long d = 1; d < n; ++d)
        if (n % d == 0) num = poly::divmod(num, cyclotomic(d)).first;
    return num;
}

// Minimal polynomial of 2cos(2pi/p) for p >= 3.
Poly real_cyclotomic_poly(long p) {
    Poly phi = cyclotomic(p);
    std::size_t m = (phi.size() - 1) / 2;
    Poly x{Rational(0), Rational(1)};
    Poly d_prev{Rational(2)}, d_cur = x;
    Poly psi{phi[m]};
    for (std::size_t j = 1; j <= m; ++j) {
        Poly term = d_cur;
        for (auto& c : term) c *= phi[m + j];
        psi = poly::add(psi, term);
        Poly next = poly::sub(poly::mul(x, d_cur), d_prev);
        d_prev = d_cur;
        d_cur = next;
    }
    poly::trim(psi);
    return psi;
}

Scalar rational_cos(long p) {
    if (p == 1) return Scalar(2);
    if (p == 2) return Scalar(-2);
    Poly psi = real_cyclotomic_poly(p);
    return Scalar(Rational(-psi[0]));
}

std::string pair_label(int a, int b) {
    if (a > b) std::swap(a, b);
    return std::to_string(a) + std::to_string(b);
}

void name_lens_copies(LensExample& L) {
    const Triangulation& t = L.tri;
    std::size_t A = L.rel.distinguished[0];
    std::set<EdgeKey> in_a;
    const Tet& TA = t.tets()[A];
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) in_a.insert(t.edge_key(TA[a], TA[b]));
    for (std::size_t i = 0; i < L.rel.boundary.size(); ++i) {
        BoundaryCopy& c = L.rel.boundary[i];
        const EdgeKey& k = t.edges()[c.edge].key;
        std::string lab = pair_label(k.v0, k.v1);
        bool touches_first = false;
        int wanted = lab == "14" ? 2 : 1;
        for (auto& inc : c.arc)
            for (int x : {inc.order[2], inc.order[3]}) {
                FaceSlot o = t.partner(inc.tet, x);
                if (o.tet == A && o.omitted == wanted) touches_first = true;
            }
        if (lab == "14")
            c.name = lab + (touches_first ? "s" : "l");
        else if (lab == "23")
            c.name = lab + (touches_first ? "a" : "b");
        else
            c.name = lab + (in_a.count(k) ? "A" : "B");
        if (L.copies.count(c.name)) throw CatalogError("lens boundary copy " + c.name + " occurs twice");
        L.copies[c.name] = i;
    }
}

}  // namespace

Representation s2xs1_representation(const DeckGroup& g, S2Kind kind, const Scalar& lambda) {
    if (kind == S2Kind::parabolic) return {g, {MobiusElement{Scalar(1), Scalar(1), Scalar(0), Scalar(1)}}};
    if (lambda.is_zero() || lambda * lambda == Scalar(1)) throw CatalogError("lambda must avoid 0 and +-1");
    return {g, {MobiusElement{lambda, Scalar(0), Scalar(0), lambda.inv()}}};
}

Deformation s2xs1_deformation(S2Kind kind, const Scalar& lambda) {
    Deformation d;
    if (kind == S2Kind::parabolic) {
        d.tags = {kDeltaTag};
        d.images = {Mobius<Jet>{Jet(1), Jet(1), Jet(Scalar(0), kDeltaTag), Jet(1)}};
    } else {
        d.tags = {kLambdaTag};
        d.images = {Mobius<Jet>{Jet(lambda, kLambdaTag, lambda), Jet(0), Jet(0), Jet(lambda.inv(), kLambdaTag, -lambda.inv())}};
    }
    return d;
}

ClosedExample make_s2xs1(S2Kind kind, const Scalar& lambda, const std::array<Scalar, 3>& zeta) {
    DeckGroup g = DeckGroup::infinite_cyclic("eta");
    GroupElem e = g.generator(0);
    std::vector<Tet> prism{{lv(1), lv(1, e), lv(2), lv(3)}, {lv(1, e), lv(2, e), lv(2), lv(3, e)}, {lv(1, e), lv(2), lv(3), lv(3, e)}};
    std::vector<Tet> tets = prism;
    for (auto T : prism) {
        std::swap(T[0], T[1]);
        tets.push_back(T);
    }
    ClosedExample x;
    x.name = kind == S2Kind::parabolic ? "s2xs1_parabolic" : "s2xs1_nonparabolic";
    x.tri = Triangulation::build(g, zeta_map({zeta[0], zeta[1], zeta[2]}), tets);
    x.rep = s2xs1_representation(g, kind, lambda);
    x.defo = s2xs1_deformation(kind, lambda);
    x.stab = stabilizer_basis(x.rep);
    return x;
}

ClosedExample make_doubled_tetrahedron(const std::array<Scalar, 4>& zeta) {
    DeckGroup g = DeckGroup::trivial();
    ClosedExample x;
    x.name = "doubled_tetrahedron";
    x.tri = Triangulation::build(g, zeta_map({zeta[0], zeta[1], zeta[2], zeta[3]}),
                                 {{lv(1), lv(2), lv(3), lv(4)}, {lv(2), lv(1), lv(3), lv(4)}});
    x.rep = Representation::trivial(g);
    x.defo = Deformation::none(x.rep);
    x.stab = stabilizer_basis(x.rep);
    return x;
}

Scalar random_rational(std::mt19937_64& rng, const FieldPtr& field) {
    std::uniform_int_distribution<long> num(-97, 97), den(1, 97);
    Rational q(num(rng), den(rng));
    q.canonicalize();
    if (!field || field->is_rationals()) return Scalar(q);
    return Scalar(field, Poly{q});
}

std::vector<Scalar> random_zetas(std::mt19937_64& rng, std::size_t n, const FieldPtr& field) {
    std::vector<Scalar> out;
    while (out.size() < n) {
        Scalar z = random_rational(rng, field);
        if (std::find(out.begin(), out.end(), z) == out.end()) out.push_back(z);
    }
    return out;
}

FieldPtr real_cyclotomic_field(long p) {
    if (p < 1) throw CatalogError("p must be positive");
    if (p <= 2) return Field::rationals();
    Poly psi = real_cyclotomic_poly(p);
    if (poly::degree(psi) <= 1) return Field::rationals();
    return Field::number_field(psi, true);
}

Scalar cyclotomic_trace(const FieldPtr& f, long p, long k) {
    Scalar x = f->is_rationals() ? rational_cos(p) : Scalar::generator(f);
    Scalar prev(2), cur = x;
    long kk = mod(k, p);
    if (kk == 0) return prev;
    for (long j = 1; j < kk; ++j) {
        Scalar next = x * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

MobiusElement elliptic_element(const Scalar& trace) { return {Scalar(0), Scalar(-1), Scalar(1), trace}; }

LensExample make_lens(const LensSpec& spec, const std::array<Scalar, 4>& zeta) {
    const long p = spec.p, q = spec.q, n = spec.n;
    if (p < 2) throw CatalogError("lens space needs p >= 2");
    if (std::gcd(p, q) != 1) throw CatalogError("p and q must be coprime");
    if (n < 1 || n > p - 1) throw CatalogError("n must lie in 1..p-1");
    long qi = inverse_mod(mod(q, p), p);
    DeckGroup g = DeckGroup::cyclic(p, "t");
    auto eq = [&](long k) {
        k = mod(k, 2 * p);
        GroupElem gk = g.generator(0, mod((k / 2) * qi, p));
        return lv(k % 2 == 0 ? 2 : 3, gk);
    };
    std::vector<Tet> tets;
    for (long k = 0; k < 2 * p; ++k) tets.push_back({lv(1), lv(4), eq(k), eq(k + 1)});
    for (long k = 0; k < 2 * p; ++k) tets.push_back({lv(1), lv(4, g.generator(0)), eq(k + 1), eq(k)});

    LensExample L;
    L.spec = spec;
    L.tri = Triangulation::build(g, zeta_map({zeta[0], zeta[1], zeta[2], zeta[3]}), tets);
    if (spec.rep_k == 0) {
        L.rep = Representation::trivial(g);
    } else {
        FieldPtr f = real_cyclotomic_field(p);
        L.rep = {g, {elliptic_element(cyclotomic_trace(f, p, spec.rep_k))}};
    }
    L.rep.check();
    L.rel = relative_structure(L.tri, 0, static_cast<std::size_t>(2 * n));
    L.dimension = L.rel.interior_edges.size() + 4;
    if (L.dimension != L.rel.interior_tets.size() || L.dimension != static_cast<std::size_t>(4 * p - 2))
        throw CatalogError("lens dimension audit failed: " + std::to_string(L.rel.interior_edges.size()) + " interior edges + 4 vs " +
                           std::to_string(L.rel.interior_tets.size()) + " interior tetrahedra, expected 4p-2 = " +
                           std::to_string(4 * p - 2));
    if (L.rel.boundary.size() != 12)
        throw CatalogError("lens boundary has " + std::to_string(L.rel.boundary.size()) + " edge copies, expected 12");
    name_lens_copies(L);
    return L;
}

std::vector<std::string> copy_names(const LensExample& lens) {
    std::vector<std::string> out;
    for (auto& [name, i] : lens.copies) out.push_back(name);
    return out;
}

std::vector<std::size_t> dset_indices(const LensExample& lens, const std::vector<std::string>& names) {
    std::vector<std::size_t> out;
    for (auto& n : names) {
        auto it = lens.copies.find(n);
        if (it == lens.copies.end()) throw CatalogError("unknown boundary edge copy '" + n + "'");
        if (std::find(out.begin(), out.end(), it->second) != out.end()) throw CatalogError("boundary copy '" + n + "' repeated");
        out.push_back(it->second);
    }
    if (out.size() != 4) throw CatalogError("a D-set needs exactly 4 boundary copies");
    return out;
}

std::string monomial_str(const Monomial& m) {
    std::string num, den;
    for (auto& [k, e] : m) {
        if (e == 0) continue;
        std::string f = "zeta" + k + (std::abs(e) > 1 ? "^" + std::to_string(std::abs(e)) : "");
        std::string& s = e > 0 ? num : den;
        s += (s.empty() ? "" : "*") + f;
    }
    if (num.empty()) num = "1";
    return den.empty() ? num : num + "/(" + den + ")";
}

Scalar eval_monomial(const Monomial& m, const std::map<int, Scalar>& zeta) {
    Scalar r(1);
    for (auto& [k, e] : m) {
        Scalar d = zeta.at(k[0] - '0') - zeta.at(k[1] - '0');
        r *= d.pow(e);
    }
    return r;
}

std::vector<Monomial> table1_candidate_monomials() {
    return {{},
            {{"12", 2}, {"34", -2}},
            {{"24", 2}, {"13", -2}},
            {{"13", 1}, {"14", 1}, {"23", -1}, {"24", -1}},
            {{"23", 1}, {"34", 1}, {"24", 2}, {"14", -1}, {"12", -1}, {"13", -2}}};
}

std::vector<Table1Row> table1_reference(long p, long q) {
    if (p != 7) return {};
    auto m = table1_candidate_monomials();
    std::vector<std::array<long, 3>> t;
    if (q == 1)
        t = {{6, 90, 300}, {49, 147, 245}, {294, 490, 588}, {1, 27, 125}, {42, 210, 420}};
    else if (q == 2)
        t = {{48, 20, 6}, {196, 98, 49}, {147, 245, 294}, {64, 8, 1}, {84, 70, 42}};
    else
        return {};
    std::vector<Table1Row> rows;
    for (std::size_t i = 0; i < t.size(); ++i) rows.push_back({t[i], m[i]});
    return rows;
}

bool Table1Result::all_rows_matched() const {
    return !rows.empty() && std::all_of(rows.begin(), rows.end(), [](const Table1Match& m) { return m.matched(); });
}

}  // namespace crx
