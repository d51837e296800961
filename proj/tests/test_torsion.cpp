#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "crx/catalog.hpp"
#include "crx/torsion.hpp"

#include <random>
#include <set>

using namespace crx;

namespace {

Scalar q(long a, long b = 1) { return Scalar(Rational(a, b)); }

Matrix mat(std::size_t r, std::size_t c, std::vector<Scalar> v, const std::string& rp, const std::string& cp) {
    Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = v[i * c + j];
    for (std::size_t i = 0; i < r; ++i) m.row_labels.push_back(rp + std::to_string(i));
    for (std::size_t j = 0; j < c; ++j) m.col_labels.push_back(cp + std::to_string(j));
    return m;
}

// 0 -> C0 (1) -> C1 (2) -> C2 (1) -> 0 with f0 = (a, b), f1 = (c, d), ca + db = 0.
ChainComplex short_complex(const Scalar& a, const Scalar& b, const Scalar& c) {
    Scalar d = -c * a / b;
    ChainComplex cx;
    cx.spaces = {{"u0"}, {"v0", "v1"}, {"w0"}};
    cx.maps = {mat(2, 1, {a, b}, "v", "u"), mat(1, 2, {c, d}, "w", "v")};
    return cx;
}

bool up_to_sign(const Scalar& x, const Scalar& y) { return x == y || x == -y; }

std::array<Scalar, 3> zetas3(std::mt19937_64& rng) {
    auto z = random_zetas(rng, 3);
    return {z[0], z[1], z[2]};
}

ClosedInvariant closed(const ClosedExample& x, std::uint64_t seed = 0) {
    return invariant_closed(x.tri, x.rep, x.defo, x.stab, seed);
}

}  // namespace

TEST_CASE("torsion of a three-term complex against the hand formula") {
    Scalar a = q(3, 2), b = q(-5), c = q(7, 3);
    ChainComplex cx = short_complex(a, b, c);
    Homology h = check_acyclic(cx);
    CHECK(h.acyclic);
    CHECK(h.dims == std::vector<std::size_t>{0, 0, 0});
    TauChain first{{{}, {0}, {0}}};
    TauChain second{{{}, {1}, {0}}};
    CHECK(valid_chain(cx, first));
    CHECK(valid_chain(cx, second));
    Scalar d = -c * a / b;
    // d1^-1 d2 with d1 = a, d2 = d, or d1 = b, d2 = c.
    CHECK(torsion(cx, first) == d / a);
    CHECK(torsion(cx, second) == c / b);
    CHECK(up_to_sign(torsion(cx, first), torsion(cx, second)));
    CHECK(up_to_sign(torsion(cx, find_tau_chain(cx)), d / a));
}

TEST_CASE("the zero complex is not acyclic") {
    ChainComplex cx;
    cx.spaces = {{"u0", "u1"}, {"v0", "v1", "v2"}, {"w0"}};
    cx.maps = {mat(3, 2, std::vector<Scalar>(6), "v", "u"), mat(1, 3, std::vector<Scalar>(3), "w", "v")};
    Homology h = check_acyclic(cx);
    CHECK_FALSE(h.acyclic);
    CHECK(h.complex);
    CHECK(h.dims == std::vector<std::size_t>{2, 3, 1});
    CHECK(h.ranks == std::vector<std::size_t>{0, 0});
}

TEST_CASE("a non-complex is flagged and its composite named") {
    ChainComplex cx;
    cx.spaces = {{"u0"}, {"v0"}, {"w0"}};
    cx.maps = {mat(1, 1, {q(2)}, "v", "u"), mat(1, 1, {q(3)}, "w", "v")};
    Homology h = check_acyclic(cx);
    CHECK_FALSE(h.complex);
    CHECK_FALSE(h.acyclic);
    std::string f = chain_failure(cx);
    CHECK(f.find("w0") != std::string::npos);
    CHECK(f.find("u0") != std::string::npos);
    CHECK(f.find("6") != std::string::npos);
    CHECK(chain_failure(short_complex(q(1), q(2), q(3))).empty());
}

TEST_CASE("invalid chains are rejected") {
    ChainComplex cx = short_complex(q(1), q(2), q(3));
    CHECK_FALSE(valid_chain(cx, TauChain{{{}, {0, 1}, {0}}}));
    CHECK_THROWS_AS(chain_minors(cx, TauChain{{{}, {0, 1}, {0}}}), TorsionError);
    ChainComplex sing = short_complex(q(0, 1) + q(1), q(2), q(3));
    sing.maps[0].at(0, 0) = q(0);
    sing.maps[1].at(0, 1) = q(0);
    CHECK_THROWS_AS(chain_minors(sing, TauChain{{{}, {0}, {0}}}), TorsionError);
}

TEST_CASE("S2 x S1, non-parabolic: minus (lambda - 1/lambda)^-4") {
    std::mt19937_64 rng(21);
    for (Scalar lam : {q(2), q(3, 2), q(-7, 5), q(5, 9)}) {
        ClosedExample x = make_s2xs1(S2Kind::nonparabolic, lam, zetas3(rng));
        ClosedInvariant r = closed(x);
        Scalar s = lam - lam.inv();
        Scalar s4 = s * s * s * s;
        CHECK(r.value == -s4.inv());
        CHECK(r.tau == r.tau_generic);
        CHECK(r.homology.acyclic);
    }
}

TEST_CASE("S2 x S1, parabolic: -1/4") {
    std::mt19937_64 rng(22);
    for (int i = 0; i < 4; ++i) {
        ClosedInvariant r = closed(make_s2xs1(S2Kind::parabolic, q(1), zetas3(rng)));
        CHECK(r.value == q(-1, 4));
        CHECK(r.tau == r.tau_generic);
    }
}

TEST_CASE("closed formula from the chain minors on S2 x S1") {
    Scalar lam = q(2);
    std::array<Scalar, 3> z{q(3, 5), q(-7, 2), q(11, 3)};
    ClosedExample x = make_s2xs1(S2Kind::nonparabolic, lam, z);
    ClosedInvariant r = closed(x);
    // The closed formula is d1^2 d3 / (d2 d4) for any admissible chain.
    REQUIRE(r.minors.size() == 5);
    CHECK(r.tau == r.minors[0] * r.minors[0] * r.minors[2] / (r.minors[1] * r.minors[3]));
    CHECK(side_condition(r.complex, r.chain));
}

TEST_CASE("the invariant does not depend on the tau-chain, up to sign") {
    std::mt19937_64 rng(23);
    ClosedExample x = make_s2xs1(S2Kind::nonparabolic, q(3), zetas3(rng));
    Scalar v0 = closed(x, 0).value;
    std::set<std::vector<std::vector<std::size_t>>> seen;
    for (std::uint64_t s = 1; s < 40; ++s) {
        ClosedInvariant r = closed(x, s);
        seen.insert(r.chain.B);
        CHECK(up_to_sign(r.value, v0));
        CHECK(up_to_sign(torsion(r.complex.cx, r.chain), r.tau));
    }
    CHECK(seen.size() > 1);
}

TEST_CASE("rescaling one C2 basis vector by t rescales the torsion by t or 1/t") {
    std::mt19937_64 rng(24);
    ClosedExample x = make_s2xs1(S2Kind::parabolic, q(1), zetas3(rng));
    TwistedComplex c = build_twisted(x.tri, x.rep, x.defo, x.stab);
    TauChain chain = find_tau_chain(c.cx);
    Scalar tau = torsion(c.cx, chain);
    Scalar t = q(7, 3);
    for (std::size_t r = 0; r < c.cx.spaces[2].size(); ++r) {
        ChainComplex y = c.cx;
        for (std::size_t j = 0; j < y.maps[1].cols; ++j) y.maps[1].at(r, j) /= t;
        for (std::size_t i = 0; i < y.maps[2].rows; ++i) y.maps[2].at(i, r) *= t;
        Scalar ratio = torsion(y, find_tau_chain(y)) / tau;
        CHECK((up_to_sign(ratio, t) || up_to_sign(ratio, t.inv())));
    }
}

TEST_CASE("the doubled tetrahedron with the trivial representation") {
    std::mt19937_64 rng(25);
    for (int i = 0; i < 3; ++i) {
        auto z = random_zetas(rng, 4);
        ClosedInvariant r = closed(make_doubled_tetrahedron({z[0], z[1], z[2], z[3]}));
        CHECK(r.value == q(2));
    }
}

TEST_CASE("Pachner moves keep the invariant and match the expected ratio") {
    std::mt19937_64 rng(26);
    for (S2Kind k : {S2Kind::nonparabolic, S2Kind::parabolic}) {
        ClosedExample x = make_s2xs1(k, q(5, 2), zetas3(rng));
        int moves = 0;
        for (std::size_t tet = 0; tet < x.tri.n3(); ++tet)
            for (int o = 0; o < 4; ++o) {
                if (!can_pachner_23(x.tri, tet, o, true)) continue;
                RatioCheck r = pachner_ratio_23(x.tri, x.rep, x.defo, x.stab, tet, o);
                CHECK(r.ratio_ok);
                CHECK(r.invariant_ok);
                CHECK(up_to_sign(r.before, r.after));
                ++moves;
            }
        CHECK(moves > 0);
        for (std::size_t tet = 0; tet < x.tri.n3(); ++tet) {
            RatioCheck r = pachner_ratio_14(x.tri, x.rep, x.defo, x.stab, tet, q(131, 17));
            CHECK(r.ratio_ok);
            CHECK(r.invariant_ok);
            CHECK(up_to_sign(r.ratio, r.expected));
        }
    }
}

TEST_CASE("non-acyclic complexes throw") {
    std::mt19937_64 rng(27);
    ClosedExample x = make_s2xs1(S2Kind::parabolic, q(1), zetas3(rng));
    // dropping the deformation direction leaves homology behind
    x.defo = Deformation::none(x.rep);
    CHECK_THROWS_AS(closed(x), NotAcyclic);
}

TEST_CASE("relative invariant on the lens space L(7,1)") {
    LensExample L = make_lens({7, 1, 1, 0}, {q(2, 3), q(-5, 4), q(7, 2), q(11, 5)});
    CHECK(L.dimension == 26);
    auto good = dset_indices(L, {"13A", "14l", "23a", "24B"});
    RelativeInvariant r = invariant_relative(L.tri, L.rep, L.rel, good);
    CHECK(r.acyclic);
    CHECK_FALSE(r.det.is_zero());
    CHECK(r.value == r.det / r.prod);
    CHECK(r.f3.rows == r.f3.cols);

    auto names = copy_names(L);
    int zeros = 0;
    for (std::size_t a = 0; a < names.size() && zeros == 0; ++a)
        for (std::size_t b = a + 1; b < names.size() && zeros == 0; ++b)
            for (std::size_t c = b + 1; c < names.size() && zeros == 0; ++c)
                for (std::size_t d = c + 1; d < names.size() && zeros == 0; ++d) {
                    RelativeInvariant s = invariant_relative(L.tri, L.rep, L.rel, dset_indices(L, {names[a], names[b], names[c], names[d]}));
                    if (s.det.is_zero()) {
                        ++zeros;
                        CHECK_FALSE(s.acyclic);
                        CHECK(s.value.is_zero());
                    }
                }
    CHECK(zeros == 1);
    CHECK_THROWS_AS(dset_indices(L, {"13A", "14l", "23a"}), CatalogError);
    CHECK_THROWS_AS(invariant_relative(L.tri, L.rep, L.rel, {good[0], good[1], good[2]}), ComplexError);
}
