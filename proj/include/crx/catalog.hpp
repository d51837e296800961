#pragma once

#include "crx/torsion.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace crx {

struct CatalogError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A closed manifold with everything needed for invariant_closed.
struct ClosedExample {
    std::string name;
    Triangulation tri;
    Representation rep;
    Deformation defo;
    std::vector<AlgebraVector> stab;
};

enum class S2Kind { nonparabolic, parabolic };

inline constexpr const char* kLambdaTag = "dlambda_over_lambda";
inline constexpr const char* kDeltaTag = "ddelta";

// Vertices 1, 2, 3 over Z = <eta>; primes are gauge eta.
ClosedExample make_s2xs1(S2Kind kind, const Scalar& lambda, const std::array<Scalar, 3>& zeta);
ClosedExample make_doubled_tetrahedron(const std::array<Scalar, 4>& zeta);

Representation s2xs1_representation(const DeckGroup& g, S2Kind kind, const Scalar& lambda);
Deformation s2xs1_deformation(S2Kind kind, const Scalar& lambda);

// Small-height rationals: numerator and denominator bounded by 97.
Scalar random_rational(std::mt19937_64& rng, const FieldPtr& field = nullptr);
// Pairwise distinct draws.
std::vector<Scalar> random_zetas(std::mt19937_64& rng, std::size_t n, const FieldPtr& field = nullptr);

// Q(2cos(2pi/p)); the rationals when that number is rational.
FieldPtr real_cyclotomic_field(long p);
// 2cos(2pi k/p) as an element of real_cyclotomic_field(p).
Scalar cyclotomic_trace(const FieldPtr& f, long p, long k);
// [[0,-1],[1,trace]].
MobiusElement elliptic_element(const Scalar& trace);

struct LensSpec {
    long p = 7, q = 1, n = 1;
    // Conjugacy parameter: rho(t) elliptic with trace 2cos(2pi k/p); 0 is the trivial representation.
    long rep_k = 0;
};

struct LensExample {
    LensSpec spec;
    Triangulation tri;
    Representation rep;
    RelativeStructure rel;
    std::map<std::string, std::size_t> copies;  // torus copy name -> index in rel.boundary
    std::size_t dimension = 0;                   // interior edges + 4
};

// Throws CatalogError when the relative dimension is not 4p - 2.
LensExample make_lens(const LensSpec& spec, const std::array<Scalar, 4>& zeta);

// Copy names in a fixed order (12A 12B 13A 13B 14l 14s 23a 23b 24A 24B 34A 34B for the lens).
std::vector<std::string> copy_names(const LensExample& lens);
std::vector<std::size_t> dset_indices(const LensExample& lens, const std::vector<std::string>& names);

// Exponents of zeta_ij keyed by "ij".
using Monomial = std::map<std::string, int>;
std::string monomial_str(const Monomial& m);
Scalar eval_monomial(const Monomial& m, const std::map<int, Scalar>& zeta);

struct Table1Row {
    std::array<long, 3> triple;
    Monomial monomial;
};

// Reference rows; empty unless p = 7 and q in {1, 2}.
std::vector<Table1Row> table1_reference(long p, long q);
std::vector<Monomial> table1_candidate_monomials();

struct Table1Options {
    long p = 7, q = 1;
    long rep_k = 0;
    std::uint64_t seed = 1;
    unsigned parallelism = 1;
    int draws = 2;
};

struct Table1Subset {
    std::vector<std::string> D;
    std::vector<Scalar> values;                   // n = 1, 2, 3 at the first draw
    std::vector<std::pair<std::size_t, std::vector<Scalar>>> constants;  // candidate monomial -> constant vector
};

struct Table1Match {
    Table1Row row;
    std::vector<std::vector<std::string>> with_monomial;  // subsets matching with the row's monomial
    std::vector<std::vector<std::string>> single_sign;  // the part of `with_monomial` with one sign for all n
    std::vector<std::pair<std::vector<std::string>, std::size_t>> other;  // matching with another candidate monomial
    bool matched() const { return !with_monomial.empty(); }
};

struct Table1Result {
    long p = 0, q = 0;
    std::size_t dimension = 0, tetrahedra = 0;
    bool square = false;
    std::size_t subsets = 0, zero_subsets = 0;
    std::vector<std::string> copies;
    std::vector<Table1Subset> nonzero;
    std::vector<Table1Match> rows;
    bool all_rows_matched() const;
};

Table1Result table1_search(const Table1Options& opt);

}  // namespace crx
