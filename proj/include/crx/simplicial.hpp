#pragma once

#include "crx/exactfield.hpp"

#include <array>
#include <compare>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace crx {

struct TriangulationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class GroupKind { trivial, infinite_cyclic, cyclic, free };

// Normal form: {} is the identity; cyclic kinds store {k} (k != 0, and
// 0 < k < p for Z_p); free groups store freely reduced signed letters
// (+i / -i for generator i-1).
using GroupElem = std::vector<long>;

class DeckGroup {
public:
    static DeckGroup trivial();
    static DeckGroup infinite_cyclic(const std::string& gen = "t");
    static DeckGroup cyclic(long p, const std::string& gen = "t");
    static DeckGroup free(std::vector<std::string> gens);

    GroupKind kind() const { return kind_; }
    long order() const { return p_; }
    const std::vector<std::string>& generators() const { return gens_; }

    GroupElem identity() const { return {}; }
    GroupElem generator(std::size_t i, long k = 1) const;
    GroupElem mul(const GroupElem& a, const GroupElem& b) const;
    GroupElem inv(const GroupElem& a) const;
    bool equal(const GroupElem& a, const GroupElem& b) const { return a == b; }
    bool less(const GroupElem& a, const GroupElem& b) const;
    // (generator index, exponent) runs, left to right.
    std::vector<std::pair<std::size_t, long>> syllables(const GroupElem& a) const;

    std::string str(const GroupElem& a) const;
    GroupElem parse(const std::string& s) const;
    std::string describe() const;

private:
    GroupKind kind_ = GroupKind::trivial;
    long p_ = 0;
    std::vector<std::string> gens_;

    GroupElem normalize(GroupElem a) const;
};

struct LiftedVertex {
    int vertex = 0;
    GroupElem gauge;
    friend bool operator==(const LiftedVertex&, const LiftedVertex&) = default;
    friend auto operator<=>(const LiftedVertex&, const LiftedVertex&) = default;
};

using Tet = std::array<LiftedVertex, 4>;

// Canonical lifted pair: (v0 @ id, v1 @ g).
struct EdgeKey {
    int v0 = 0;
    int v1 = 0;
    GroupElem g;
    friend bool operator==(const EdgeKey&, const EdgeKey&) = default;
    friend auto operator<=>(const EdgeKey&, const EdgeKey&) = default;
};

struct Incidence {
    std::size_t tet = 0;
    int a = 0, b = 0;              // slots of the edge, a < b
    std::array<int, 4> order{};    // even permutation (i,j,k,l), (i,j) oriented as the canonical edge
    GroupElem gamma;               // gamma . tet contains the canonical lift
};

struct Edge {
    EdgeKey key;
    std::pair<LiftedVertex, LiftedVertex> rep;  // lift used by the fundamental family
    std::vector<Incidence> star;
};

struct FaceSlot {
    std::size_t tet = 0;
    int omitted = 0;
};

struct Face {
    std::array<LiftedVertex, 3> key;
    FaceSlot s0, s1;
    GroupElem transition;  // s1's lift = transition . s0's lift
};

using EdgeReps = std::map<EdgeKey, std::pair<LiftedVertex, LiftedVertex>>;

class Triangulation {
public:
    // Validates and derives edges, faces and stars. Edge representatives are
    // taken from `reps` when present, otherwise from the first incidence in
    // tetrahedron order.
    static Triangulation build(DeckGroup group, std::map<int, Scalar> zeta, std::vector<Tet> tets,
                               const EdgeReps& reps = {}, std::map<int, Scalar> kappa = {});

    const DeckGroup& group() const { return group_; }
    std::vector<int> vertices() const;
    const std::map<int, Scalar>& zeta() const { return zeta_; }
    const Scalar& zeta(int v) const;
    Scalar kappa(int v) const;
    const std::map<int, Scalar>& kappas() const { return kappa_; }
    const std::vector<Tet>& tets() const { return tets_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<Face>& faces() const { return faces_; }

    std::size_t n0() const { return zeta_.size(); }
    std::size_t n1() const { return edges_.size(); }
    std::size_t n2() const { return faces_.size(); }
    std::size_t n3() const { return tets_.size(); }

    EdgeKey edge_key(const LiftedVertex& u, const LiftedVertex& v) const;
    std::optional<std::size_t> find_edge(const EdgeKey& k) const;
    const std::vector<Incidence>& edge_star(const EdgeKey& k) const;
    EdgeReps edge_reps() const;

    LiftedVertex translate(const GroupElem& g, const LiftedVertex& v) const;
    Tet translate(const GroupElem& g, const Tet& t) const;
    // The face of `tet` opposite `omitted`, and the slot on its other side.
    FaceSlot partner(std::size_t tet, int omitted) const;
    const Face& face_of(std::size_t tet, int omitted) const;

    std::string lv_str(const LiftedVertex& v) const;
    std::string edge_label(std::size_t e) const;

private:
    DeckGroup group_;
    std::map<int, Scalar> zeta_;
    std::map<int, Scalar> kappa_;
    std::vector<Tet> tets_;
    std::vector<Edge> edges_;
    std::map<EdgeKey, std::size_t> edge_index_;
    std::vector<Face> faces_;
    std::vector<std::array<std::size_t, 4>> face_of_slot_;
};

// Even permutation of (0,1,2,3) starting with (i, j).
std::array<int, 4> even_order(int i, int j);

// Isomorphism up to per-tetrahedron left translation and even slot
// permutations; vertex ids are kept.
bool same_tetrahedra(const Triangulation& x, const Triangulation& y);

struct Move23 {
    Triangulation result;
    std::array<LiftedVertex, 3> base;  // 1, 2, 3 in the move frame
    LiftedVertex top, bottom;          // 4 (from the first tetrahedron) and 5
    bool same_frame = true;            // no translation was needed
    std::size_t tet_a = 0, tet_b = 0;
};

// 1234 + 5123 -> 1254, 2354, 3154, with 1234 = `tet` reordered so the
// shared face is opposite `omitted`.
Move23 pachner_23(const Triangulation& t, std::size_t tet, int omitted);

struct Move14 {
    Triangulation result;
    std::array<LiftedVertex, 4> old;  // 1, 2, 3, 4
    LiftedVertex added;               // 5 @ id
};

Move14 pachner_14(const Triangulation& t, std::size_t tet, const Scalar& zeta_new);

// Inverse of pachner_23 on an edge of degree 3 in three distinct tetrahedra.
Triangulation pachner_32(const Triangulation& t, std::size_t edge);

// Whether pachner_23 applies: distinct tetrahedra and the new edge is new.
bool can_pachner_23(const Triangulation& t, std::size_t tet, int omitted, bool require_same_frame);

// Left-translate every slot of one tetrahedron; edge representatives are
// re-derived from first incidences.
Triangulation regauge(const Triangulation& t, std::size_t tet, const GroupElem& g);

}  // namespace crx
