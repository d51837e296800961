#include "crx/torsion.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace crx {

namespace {

std::vector<std::size_t> iota_n(std::size_t n) {
    std::vector<std::size_t> v(n);
    std::iota(v.begin(), v.end(), 0);
    return v;
}

std::vector<std::size_t> shuffled(std::size_t n, std::mt19937_64* rng) {
    auto v = iota_n(n);
    if (rng) std::shuffle(v.begin(), v.end(), *rng);
    return v;
}

// Pivot rows of m[rows, cols], scanning rows in the given order.
std::vector<std::size_t> pivot_rows(const Matrix& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
    RankInfo r = rank_and_pivots(m.submatrix(rows, cols));
    std::vector<std::size_t> out;
    for (auto i : r.pivot_rows) out.push_back(rows[i]);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::size_t> pivot_cols(const Matrix& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
    RankInfo r = rank_and_pivots(m.submatrix(rows, cols).transpose());
    std::vector<std::size_t> out;
    for (auto i : r.pivot_rows) out.push_back(cols[i]);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

Homology check_acyclic(const ChainComplex& c) {
    Homology h;
    for (auto& m : c.maps) h.ranks.push_back(rank_and_pivots(m).rank);
    for (std::size_t i = 0; i < c.spaces.size(); ++i) {
        std::size_t in = i > 0 ? h.ranks[i - 1] : 0;
        std::size_t out = i < c.maps.size() ? h.ranks[i] : 0;
        if (in + out > c.spaces[i].size()) {
            h.complex = false;
            h.dims.push_back(0);
        } else
            h.dims.push_back(c.spaces[i].size() - in - out);
    }
    h.acyclic = h.complex && std::all_of(h.dims.begin(), h.dims.end(), [](std::size_t d) { return d == 0; });
    return h;
}

std::string chain_failure(const ChainComplex& c) {
    for (std::size_t i = 0; i + 1 < c.maps.size(); ++i) {
        const Matrix &f = c.maps[i], &g = c.maps[i + 1];
        if (f.rows != g.cols) return "f" + std::to_string(i + 2) + "*f" + std::to_string(i + 1) + " dimension mismatch";
        Matrix p = g * f;
        for (std::size_t r = 0; r < p.rows; ++r)
            for (std::size_t s = 0; s < p.cols; ++s)
                if (!p.at(r, s).is_zero())
                    return "f" + std::to_string(i + 2) + "*f" + std::to_string(i + 1) + " (" + c.spaces[i + 2][r] + ", " +
                           c.spaces[i][s] + ") = " + p.at(r, s).str();
    }
    return {};
}

std::vector<std::size_t> complement(std::size_t n, const std::vector<std::size_t>& subset) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n; ++i)
        if (std::find(subset.begin(), subset.end(), i) == subset.end()) out.push_back(i);
    return out;
}

Matrix chain_minor(const ChainComplex& c, const TauChain& chain, std::size_t i) {
    if (i < 1 || i > c.maps.size() || chain.B.size() != c.spaces.size()) throw TorsionError("chain does not fit the complex");
    return c.maps[i - 1].submatrix(chain.B[i], complement(c.spaces[i - 1].size(), chain.B[i - 1]));
}

std::vector<Scalar> chain_minors(const ChainComplex& c, const TauChain& chain) {
    if (chain.B.size() != c.spaces.size()) throw TorsionError("chain has the wrong number of subsets");
    if (!chain.B.front().empty()) throw TorsionError("B0 must be empty");
    if (chain.B.back().size() != c.spaces.back().size()) throw TorsionError("the last subset must be the whole space");
    std::vector<Scalar> d;
    for (std::size_t i = 1; i <= c.maps.size(); ++i) {
        Matrix m = chain_minor(c, chain, i);
        if (m.rows != m.cols)
            throw TorsionError("minor " + std::to_string(i) + " is " + std::to_string(m.rows) + "x" + std::to_string(m.cols));
        Scalar x = det(m);
        if (x.is_zero()) throw TorsionError("minor " + std::to_string(i) + " is singular");
        d.push_back(x);
    }
    return d;
}

bool valid_chain(const ChainComplex& c, const TauChain& chain) {
    try {
        chain_minors(c, chain);
        return true;
    } catch (const TorsionError&) {
        return false;
    }
}

TauChain find_tau_chain(const ChainComplex& c, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::mt19937_64* r = seed ? &rng : nullptr;
    TauChain ch;
    ch.B.push_back({});
    for (std::size_t i = 1; i < c.spaces.size(); ++i) {
        auto rows = shuffled(c.spaces[i].size(), r);
        auto cols = complement(c.spaces[i - 1].size(), ch.B[i - 1]);
        auto piv = pivot_rows(c.maps[i - 1], rows, cols);
        if (piv.size() != cols.size())
            throw NotAcyclic("no tau-chain: stage " + std::to_string(i) + " has rank " + std::to_string(piv.size()) +
                                 " on " + std::to_string(cols.size()) + " free columns",
                             check_acyclic(c));
        ch.B.push_back(piv);
    }
    if (ch.B.back().size() != c.spaces.back().size()) throw NotAcyclic("no tau-chain: last stage is not onto", check_acyclic(c));
    if (!valid_chain(c, ch)) throw NotAcyclic("no tau-chain found", check_acyclic(c));
    return ch;
}

bool side_condition(const TwistedComplex& c, const TauChain& chain) {
    std::vector<std::size_t> dual;
    for (auto i : chain.B.at(1)) dual.push_back(c.dual_index(i));
    std::sort(dual.begin(), dual.end());
    auto rest = complement(c.cx.spaces[4].size(), chain.B.at(4));
    return rest == dual;
}

TauChain find_tau_chain_closed(const TwistedComplex& c, std::uint64_t seed) {
    const auto& S = c.cx.spaces;
    const auto& f = c.cx.maps;
    if (S.size() != 6) throw TorsionError("closed tau-chain needs a six-term complex");
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < 64; ++attempt) {
        std::mt19937_64* r = (seed || attempt) ? &rng : nullptr;
        TauChain ch;
        ch.B.resize(6);
        ch.B[1] = pivot_rows(f[0], shuffled(S[1].size(), r), iota_n(S[0].size()));
        if (ch.B[1].size() != S[0].size()) break;
        auto free1 = complement(S[1].size(), ch.B[1]);
        ch.B[2] = pivot_rows(f[1], shuffled(S[2].size(), r), free1);
        std::vector<std::size_t> dual;
        for (auto i : ch.B[1]) dual.push_back(c.dual_index(i));
        ch.B[4] = complement(S[4].size(), dual);
        auto piv = pivot_cols(f[3], ch.B[4], shuffled(S[3].size(), r));
        ch.B[3] = complement(S[3].size(), piv);
        ch.B[5] = iota_n(S[5].size());
        if (valid_chain(c.cx, ch)) return ch;
    }
    throw NotAcyclic("no tau-chain with C4 \\ B4 = B1", check_acyclic(c.cx));
}

Scalar torsion(const ChainComplex& c, const TauChain& chain) {
    auto d = chain_minors(c, chain);
    std::size_t n = d.size();
    Scalar t(1);
    for (std::size_t i = 1; i <= n; ++i) {
        if ((n - i) % 2 == 0)
            t *= d[i - 1];
        else
            t /= d[i - 1];
    }
    return t;
}

Scalar torsion_closed(const TwistedComplex& c, const TauChain& chain) {
    if (!side_condition(c, chain)) throw TorsionError("chain violates C4 \\ B4 = B1");
    auto d = chain_minors(c.cx, chain);
    return d[0] * d[0] * d[2] / (d[1] * d[3]);
}

Scalar zeta_product(const Triangulation& t, const Representation& rep) {
    Scalar p(1);
    for (std::size_t e = 0; e < t.n1(); ++e) {
        Scalar z = edge_zeta(t, rep, e);
        if (z.is_zero()) throw GenericityError("edge " + t.edge_label(e) + " has coincident lifted endpoints");
        p *= z * z;
    }
    return p;
}

ClosedInvariant invariant_closed(const Triangulation& t, const Representation& rep, const Deformation& defo,
                                 const std::vector<AlgebraVector>& stab, std::uint64_t seed) {
    ClosedInvariant r;
    r.complex = build_twisted(t, rep, defo, stab);
    r.homology = check_acyclic(r.complex.cx);
    if (!r.homology.acyclic) throw NotAcyclic("complex is not acyclic", r.homology);
    r.chain = find_tau_chain_closed(r.complex, seed);
    r.minors = chain_minors(r.complex.cx, r.chain);
    r.tau = torsion_closed(r.complex, r.chain);
    r.tau_generic = torsion(r.complex.cx, r.chain);
    if (!equal_up_to_sign(r.tau, r.tau_generic))
        throw TorsionError("generic and closed torsion formulas disagree: " + r.tau_generic.str() + " vs " + r.tau.str());
    r.zprod = zeta_product(t, rep);
    r.value = r.tau / r.zprod;
    return r;
}

RelativeInvariant invariant_relative(const Triangulation& t, const Representation& rep, const RelativeStructure& rel,
                                     const std::vector<std::size_t>& D) {
    RelativeInvariant r;
    r.f3 = build_relative_f3(t, rep, rel, D);
    r.det = det(r.f3);
    r.prod = Scalar(1);
    for (auto e : rel.interior_edges) {
        Scalar z = edge_zeta(t, rep, e);
        r.prod *= z * z;
    }
    for (auto d : D) {
        Scalar z = copy_zeta(t, rep, rel.boundary.at(d));
        r.prod *= z * z;
    }
    if (r.prod.is_zero()) throw GenericityError("relative normalization vanishes");
    r.acyclic = !r.det.is_zero();
    r.value = r.det / r.prod;
    return r;
}

namespace {

Scalar closed_tau(const Triangulation& t, const Representation& rep, const Deformation& defo, const std::vector<AlgebraVector>& stab,
                  Scalar* inv) {
    ClosedInvariant c = invariant_closed(t, rep, defo, stab);
    *inv = c.value;
    return c.tau;
}

}  // namespace

RatioCheck pachner_ratio_23(const Triangulation& t, const Representation& rep, const Deformation& defo,
                            const std::vector<AlgebraVector>& stab, std::size_t tet, int omitted) {
    RatioCheck r;
    r.move = "2-3";
    Move23 m = pachner_23(t, tet, omitted);
    Scalar tau0 = closed_tau(t, rep, defo, stab, &r.before);
    Scalar tau1 = closed_tau(m.result, rep, defo, stab, &r.after);
    r.ratio = tau1 / tau0;
    Scalar z54 = lifted_zeta(t, rep, m.bottom) - lifted_zeta(t, rep, m.top);
    r.expected = z54 * z54;
    r.ratio_ok = equal_up_to_sign(r.ratio, r.expected);
    r.invariant_ok = equal_up_to_sign(r.before, r.after);
    r.result = std::move(m.result);
    return r;
}

RatioCheck pachner_ratio_14(const Triangulation& t, const Representation& rep, const Deformation& defo,
                            const std::vector<AlgebraVector>& stab, std::size_t tet, const Scalar& zeta_new) {
    RatioCheck r;
    r.move = "1-4";
    Move14 m = pachner_14(t, tet, zeta_new);
    Scalar tau0 = closed_tau(t, rep, defo, stab, &r.before);
    Scalar tau1 = closed_tau(m.result, rep, defo, stab, &r.after);
    r.ratio = tau1 / tau0;
    Scalar z5 = lifted_zeta(m.result, rep, m.added);
    r.expected = Scalar(1);
    for (int i = 0; i < 4; ++i) {
        Scalar d = lifted_zeta(t, rep, m.old[i]) - z5;
        r.expected *= d * d;
    }
    r.ratio_ok = equal_up_to_sign(r.ratio, r.expected);
    r.invariant_ok = equal_up_to_sign(r.before, r.after);
    r.result = std::move(m.result);
    return r;
}

}  // namespace crx
