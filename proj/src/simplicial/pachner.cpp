#include "crx/simplicial.hpp"

#include <algorithm>

namespace crx {

namespace {

std::array<int, 4> even_order_ending(int x) {
    std::array<int, 4> p{0, 1, 2, 3};
    do {
        int inv = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                if (p[i] > p[j]) ++inv;
        if (!(inv & 1) && p[3] == x) return p;
    } while (std::next_permutation(p.begin(), p.end()));
    return p;
}

int parity4(const std::array<int, 4>& p) {
    int inv = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (p[i] > p[j]) ++inv;
    return inv & 1;
}

struct Setup23 {
    std::size_t tb;
    GroupElem delta;
    std::array<LiftedVertex, 4> a;  // 1 2 3 4
    LiftedVertex five;
    bool ok_orientation = true;
};

Setup23 setup_23(const Triangulation& t, std::size_t tet, int omitted) {
    Setup23 s;
    FaceSlot other = t.partner(tet, omitted);
    s.tb = other.tet;
    const Face& f = t.face_of(tet, omitted);
    bool a_is_s0 = f.s0.tet == tet && f.s0.omitted == omitted;
    s.delta = a_is_s0 ? t.group().inv(f.transition) : f.transition;
    auto p = even_order_ending(omitted);
    const Tet& A = t.tets()[tet];
    for (int i = 0; i < 4; ++i) s.a[i] = A[p[i]];
    Tet B = t.translate(s.delta, t.tets()[s.tb]);
    s.five = B[other.omitted];
    std::array<int, 4> q{other.omitted, -1, -1, -1};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 4; ++j)
            if (B[j] == s.a[i]) q[i + 1] = j;
    if (std::find(q.begin(), q.end(), -1) != q.end()) throw TriangulationError("shared face does not match after translation");
    s.ok_orientation = !parity4(q);
    return s;
}

}  // namespace

bool can_pachner_23(const Triangulation& t, std::size_t tet, int omitted, bool require_same_frame) {
    Setup23 s = setup_23(t, tet, omitted);
    if (s.tb == tet || !s.ok_orientation) return false;
    if (require_same_frame && !s.delta.empty()) return false;
    if (s.a[3] == s.five) return false;
    return !t.find_edge(t.edge_key(s.a[3], s.five)).has_value();
}

Move23 pachner_23(const Triangulation& t, std::size_t tet, int omitted) {
    Setup23 s = setup_23(t, tet, omitted);
    if (s.tb == tet) throw TriangulationError("2-3 move: the face is glued to its own tetrahedron");
    if (!s.ok_orientation) throw TriangulationError("2-3 move: tetrahedra are not concordantly oriented");
    if (s.a[3] == s.five) throw TriangulationError("2-3 move: the two apexes are the same cover point");
    EdgeKey k45 = t.edge_key(s.a[3], s.five);
    if (t.find_edge(k45)) throw TriangulationError("2-3 move: edge " + t.lv_str(s.a[3]) + "-" + t.lv_str(s.five) + " already exists");

    const auto& [v1, v2, v3, v4] = s.a;
    std::vector<Tet> tets;
    for (std::size_t i = 0; i < t.n3(); ++i)
        if (i != tet && i != s.tb) tets.push_back(t.tets()[i]);
    tets.push_back({v1, v2, s.five, v4});
    tets.push_back({v2, v3, s.five, v4});
    tets.push_back({v3, v1, s.five, v4});
    EdgeReps reps = t.edge_reps();
    reps[k45] = {s.five, v4};
    Move23 m{Triangulation::build(t.group(), t.zeta(), tets, reps, t.kappas()), {v1, v2, v3}, v4, s.five, s.delta.empty(), tet, s.tb};
    return m;
}

Move14 pachner_14(const Triangulation& t, std::size_t tet, const Scalar& zeta_new) {
    const Tet& T = t.tets().at(tet);
    int id = t.zeta().rbegin()->first + 1;
    LiftedVertex five{id, {}};
    std::vector<Tet> tets;
    for (std::size_t i = 0; i < t.n3(); ++i)
        if (i != tet) tets.push_back(t.tets()[i]);
    tets.push_back({T[0], T[1], T[2], five});
    tets.push_back({T[0], T[1], five, T[3]});
    tets.push_back({T[1], T[2], five, T[3]});
    tets.push_back({T[2], T[0], five, T[3]});
    auto zeta = t.zeta();
    zeta[id] = zeta_new;
    EdgeReps reps = t.edge_reps();
    for (int i = 0; i < 4; ++i) reps[t.edge_key(T[i], five)] = {T[i], five};
    return {Triangulation::build(t.group(), zeta, tets, reps, t.kappas()), {T[0], T[1], T[2], T[3]}, five};
}

Triangulation pachner_32(const Triangulation& t, std::size_t edge) {
    const Edge& e = t.edges().at(edge);
    if (e.star.size() != 3) throw TriangulationError("3-2 move needs an edge of degree 3");
    std::vector<std::size_t> ids;
    for (auto& inc : e.star) ids.push_back(inc.tet);
    std::sort(ids.begin(), ids.end());
    if (std::unique(ids.begin(), ids.end()) != ids.end()) throw TriangulationError("3-2 move needs three distinct tetrahedra");

    LiftedVertex P, Q;
    std::vector<std::pair<LiftedVertex, LiftedVertex>> arcs;
    for (auto& inc : e.star) {
        Tet T = t.translate(inc.gamma, t.tets()[inc.tet]);
        auto [i, j, k, l] = inc.order;
        P = T[i];
        Q = T[j];
        arcs.emplace_back(T[k], T[l]);
    }
    auto next = [&](const LiftedVertex& x) -> LiftedVertex {
        for (auto& [a, b] : arcs)
            if (a == x) return b;
        throw TriangulationError("3-2 move: link of the edge is not a triangle");
    };
    LiftedVertex c1 = arcs[0].first, c2 = next(c1), c3 = next(c2);
    if (!(next(c3) == c1)) throw TriangulationError("3-2 move: link of the edge is not a triangle");

    std::vector<Tet> tets;
    for (std::size_t i = 0; i < t.n3(); ++i)
        if (!std::binary_search(ids.begin(), ids.end(), i)) tets.push_back(t.tets()[i]);
    tets.push_back({c1, c2, c3, Q});
    tets.push_back({P, c1, c2, c3});
    EdgeReps reps = t.edge_reps();
    reps.erase(e.key);
    return Triangulation::build(t.group(), t.zeta(), tets, reps, t.kappas());
}

}  // namespace crx
