#pragma once

#include "crx/twistbuild.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace crx {

struct Homology {
    bool acyclic = false;
    std::vector<std::size_t> ranks;  // rank of each map
    std::vector<std::size_t> dims;   // dim H_i for every space
    bool complex = true;             // false when rank f_i + rank f_{i-1} exceeds dim C_i
};

struct TorsionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotAcyclic : TorsionError {
    Homology homology;
    NotAcyclic(const std::string& what, Homology h) : TorsionError(what), homology(std::move(h)) {}
};

Homology check_acyclic(const ChainComplex& c);

// First nonzero entry of f_{i+1} f_i, as "f3*f2 (dphi_1-2, dz_1) = 5"; empty when none.
std::string chain_failure(const ChainComplex& c);

// B[i] indexes spaces[i]; minor i has rows B[i] and columns spaces[i-1] \ B[i-1].
struct TauChain {
    std::vector<std::vector<std::size_t>> B;
};

std::vector<std::size_t> complement(std::size_t n, const std::vector<std::size_t>& subset);
Matrix chain_minor(const ChainComplex& c, const TauChain& chain, std::size_t i);
// Determinants d_1 .. d_n; throws TorsionError when a minor is non-square or singular.
std::vector<Scalar> chain_minors(const ChainComplex& c, const TauChain& chain);
bool valid_chain(const ChainComplex& c, const TauChain& chain);

// Greedy pivots end to end; seed permutes the preference order (0 keeps label order).
TauChain find_tau_chain(const ChainComplex& c, std::uint64_t seed = 0);
// Chain with C4 \ B4 = B1 for the closed twisted complex.
TauChain find_tau_chain_closed(const TwistedComplex& c, std::uint64_t seed = 0);
bool side_condition(const TwistedComplex& c, const TauChain& chain);

// prod d_i^((-1)^(n-i)).
Scalar torsion(const ChainComplex& c, const TauChain& chain);
// d1^2 d3 / (d2 d4); requires the side condition.
Scalar torsion_closed(const TwistedComplex& c, const TauChain& chain);

Scalar zeta_product(const Triangulation& t, const Representation& rep);

struct ClosedInvariant {
    TwistedComplex complex;
    Homology homology;
    TauChain chain;
    std::vector<Scalar> minors;
    Scalar tau, tau_generic, zprod, value;
};

// Throws NotAcyclic.
ClosedInvariant invariant_closed(const Triangulation& t, const Representation& rep, const Deformation& defo,
                                 const std::vector<AlgebraVector>& stab, std::uint64_t seed = 0);

struct RelativeInvariant {
    Matrix f3;
    Scalar det, prod, value;  // value = det / prod, 0 when det = 0
    bool acyclic = false;
};

RelativeInvariant invariant_relative(const Triangulation& t, const Representation& rep, const RelativeStructure& rel,
                                     const std::vector<std::size_t>& D);

struct RatioCheck {
    std::string move;
    Scalar ratio, expected;
    bool ratio_ok = false;
    Scalar before, after;
    bool invariant_ok = false;
    Triangulation result;
};

RatioCheck pachner_ratio_23(const Triangulation& t, const Representation& rep, const Deformation& defo,
                            const std::vector<AlgebraVector>& stab, std::size_t tet, int omitted);
RatioCheck pachner_ratio_14(const Triangulation& t, const Representation& rep, const Deformation& defo,
                            const std::vector<AlgebraVector>& stab, std::size_t tet, const Scalar& zeta_new);

}  // namespace crx
