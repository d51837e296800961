#pragma once

#include "crx/exactfield.hpp"
#include "crx/mobius.hpp"
#include "crx/simplicial.hpp"

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace crx {

struct ComplexError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Representation {
    DeckGroup group;
    std::vector<MobiusElement> images;  // one per generator

    static Representation trivial(const DeckGroup& g);
    MobiusElement eval(const GroupElem& g) const;
    // Throws unless the relations hold up to sign.
    void check() const;
};

// First-order deformation of a representation; tags name the (dg) coordinates.
struct Deformation {
    std::vector<std::string> tags;
    std::vector<Mobius<Jet>> images;

    static Deformation none(const Representation& rep);
    Mobius<Jet> eval(const DeckGroup& g, const GroupElem& e) const;
};

// (a, b, c) for the algebra element [[a, b], [c, -a]].
using AlgebraVector = std::array<Scalar, 3>;

std::vector<AlgebraVector> stabilizer_basis(const Representation& rep);
bool commutes_with(const Representation& rep, const AlgebraVector& x);

Scalar lifted_zeta(const Triangulation& t, const Representation& rep, const LiftedVertex& v);
// zeta_u - zeta_v over the edge's representative lift.
Scalar edge_zeta(const Triangulation& t, const Representation& rep, std::size_t edge);

struct ChainComplex {
    std::vector<std::vector<std::string>> spaces;  // C0 .. Cn
    std::vector<Matrix> maps;                      // maps[i] : C_i -> C_{i+1}, rows in C_{i+1}
};

// C0 stab, C1 (dz) + (dg), C2 (dy), C3 (dphi), C4 (dalpha) + (dbeta) + (dg)*, C5 stab*.
struct TwistedComplex {
    ChainComplex cx;
    std::vector<int> vertices;
    std::vector<std::string> tags;

    std::size_t n0() const { return vertices.size(); }
    std::size_t k() const { return tags.size(); }
    // Position in C4 paired with position i of C1 (dz_v <-> dbeta_v, dg <-> dg*).
    std::size_t dual_index(std::size_t i) const { return n0() + i; }
};

Matrix build_f1(const Triangulation& t, const Deformation& defo, const std::vector<AlgebraVector>& stab);
Matrix build_f2(const Triangulation& t, const Representation& rep, const Deformation& defo);
Matrix build_f3(const Triangulation& t, const Representation& rep);
std::pair<Matrix, Matrix> build_f4_f5(const Triangulation& t, const Representation& rep, const Deformation& defo,
                                      const std::vector<AlgebraVector>& stab);
TwistedComplex build_twisted(const Triangulation& t, const Representation& rep, const Deformation& defo,
                             const std::vector<AlgebraVector>& stab);

// Macroscopic checks on coordinate-derived data.
Scalar edge_deficit(const Triangulation& t, const Representation& rep, std::size_t edge);
Scalar tet_discrepancy(const Triangulation& t, const Representation& rep, std::size_t tet);

// Complement of two distinguished tetrahedra; the torus edges are the arcs of
// each boundary edge's star that remain after removing them.
struct BoundaryCopy {
    std::size_t edge = 0;
    std::vector<Incidence> arc;
    std::string name;
};

struct RelativeStructure {
    std::array<std::size_t, 2> distinguished{};
    std::vector<std::size_t> interior_tets;
    std::vector<std::size_t> interior_edges;
    std::vector<BoundaryCopy> boundary;
};

// zeta difference over the arc's first incidence, in that tetrahedron's lift.
Scalar copy_zeta(const Triangulation& t, const Representation& rep, const BoundaryCopy& c);

RelativeStructure relative_structure(const Triangulation& t, std::size_t ta, std::size_t tb);

// Rows: interior edges then the D copies; columns: interior tetrahedra.
Matrix relative_rows(const Triangulation& t, const Representation& rep, const RelativeStructure& rel,
                     const std::vector<std::size_t>& D);
// relative_rows with the squareness check.
Matrix build_relative_f3(const Triangulation& t, const Representation& rep, const RelativeStructure& rel,
                         const std::vector<std::size_t>& D);

}  // namespace crx
