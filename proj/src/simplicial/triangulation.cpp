#include "crx/simplicial.hpp"

#include <algorithm>
#include <set>

namespace crx {

namespace {

int parity(const std::array<int, 4>& p) {
    int inv = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (p[i] > p[j]) ++inv;
    return inv & 1;
}

struct FaceCanon {
    std::array<LiftedVertex, 3> key;
    int parity = 0;
    GroupElem g;
};

FaceCanon canon_face(const Triangulation& t, const std::array<LiftedVertex, 3>& p) {
    FaceCanon best;
    bool have = false;
    for (int k = 0; k < 3; ++k) {
        GroupElem g = t.group().inv(p[k].gauge);
        std::array<LiftedVertex, 3> q{t.translate(g, p[0]), t.translate(g, p[1]), t.translate(g, p[2])};
        std::array<int, 3> idx{0, 1, 2};
        std::sort(idx.begin(), idx.end(), [&](int x, int y) { return q[x] < q[y]; });
        std::array<LiftedVertex, 3> cand{q[idx[0]], q[idx[1]], q[idx[2]]};
        if (!have || cand < best.key) {
            have = true;
            best.key = cand;
            int inv = (idx[0] > idx[1]) + (idx[0] > idx[2]) + (idx[1] > idx[2]);
            best.parity = inv & 1;
            best.g = g;
        }
    }
    return best;
}

}  // namespace

std::array<int, 4> even_order(int i, int j) {
    std::array<int, 4> r{i, j, 0, 0};
    int n = 2;
    for (int s = 0; s < 4; ++s)
        if (s != i && s != j) r[n++] = s;
    if (parity(r)) std::swap(r[2], r[3]);
    return r;
}

LiftedVertex Triangulation::translate(const GroupElem& g, const LiftedVertex& v) const {
    return {v.vertex, group_.mul(g, v.gauge)};
}

Tet Triangulation::translate(const GroupElem& g, const Tet& t) const {
    return {translate(g, t[0]), translate(g, t[1]), translate(g, t[2]), translate(g, t[3])};
}

EdgeKey Triangulation::edge_key(const LiftedVertex& u, const LiftedVertex& v) const {
    EdgeKey o1{u.vertex, v.vertex, group_.mul(group_.inv(u.gauge), v.gauge)};
    EdgeKey o2{v.vertex, u.vertex, group_.mul(group_.inv(v.gauge), u.gauge)};
    return o2 < o1 ? o2 : o1;
}

Triangulation Triangulation::build(DeckGroup group, std::map<int, Scalar> zeta, std::vector<Tet> tets, const EdgeReps& reps,
                                   std::map<int, Scalar> kappa) {
    Triangulation t;
    t.group_ = std::move(group);
    t.zeta_ = std::move(zeta);
    t.kappa_ = std::move(kappa);
    t.tets_ = std::move(tets);
    if (t.tets_.empty()) throw TriangulationError("no tetrahedra");

    std::set<int> used;
    for (std::size_t i = 0; i < t.tets_.size(); ++i) {
        const Tet& T = t.tets_[i];
        for (int s = 0; s < 4; ++s) {
            if (!t.zeta_.count(T[s].vertex))
                throw TriangulationError("tetrahedron " + std::to_string(i) + " uses undeclared vertex " + std::to_string(T[s].vertex));
            used.insert(T[s].vertex);
            for (int r = 0; r < s; ++r)
                if (T[r] == T[s])
                    throw TriangulationError("tetrahedron " + std::to_string(i) + " has two slots at the same cover point " + t.lv_str(T[s]));
        }
    }
    for (auto& [v, z] : t.zeta_)
        if (!used.count(v)) throw TriangulationError("vertex " + std::to_string(v) + " is not used by any tetrahedron");

    // Faces: each canonical triangle must occur in exactly two slots with opposite orientations.
    struct Slot {
        std::size_t tet;
        int omitted;
        int sign;
        GroupElem g;
    };
    std::map<std::array<LiftedVertex, 3>, std::vector<Slot>> face_slots;
    std::vector<std::array<LiftedVertex, 3>> order;
    for (std::size_t i = 0; i < t.tets_.size(); ++i) {
        for (int x = 0; x < 4; ++x) {
            std::array<LiftedVertex, 3> p;
            int n = 0;
            for (int s = 0; s < 4; ++s)
                if (s != x) p[n++] = t.tets_[i][s];
            FaceCanon fc = canon_face(t, p);
            int sign = ((x & 1) ^ fc.parity) ? -1 : 1;
            auto& v = face_slots[fc.key];
            if (v.empty()) order.push_back(fc.key);
            v.push_back({i, x, sign, fc.g});
        }
    }
    t.face_of_slot_.assign(t.tets_.size(), {0, 0, 0, 0});
    for (auto& key : order) {
        auto& v = face_slots[key];
        std::string name = t.lv_str(key[0]) + " " + t.lv_str(key[1]) + " " + t.lv_str(key[2]);
        if (v.size() % 2)
            throw TriangulationError("face (" + name + ") of tetrahedron " + std::to_string(v[0].tet) + " occurs " +
                                     std::to_string(v.size()) + " times, expected an even number");
        // A vertex triple may carry several faces (the S2xS1 prisms); slots are
        // paired positive with negative in tetrahedron order.
        std::vector<const Slot*> pos, neg;
        for (auto& s : v) (s.sign > 0 ? pos : neg).push_back(&s);
        if (pos.size() != neg.size())
            throw TriangulationError("orientation clash between tetrahedra " + std::to_string(v[0].tet) + " and " +
                                     std::to_string(v[1].tet) + " along face (" + name + ")");
        for (std::size_t i = 0; i < pos.size(); ++i) {
            const Slot* a = pos[i]->tet <= neg[i]->tet ? pos[i] : neg[i];
            const Slot* b = a == pos[i] ? neg[i] : pos[i];
            Face f;
            f.key = key;
            f.s0 = {a->tet, a->omitted};
            f.s1 = {b->tet, b->omitted};
            f.transition = t.group_.mul(t.group_.inv(b->g), a->g);
            t.face_of_slot_[a->tet][a->omitted] = t.faces_.size();
            t.face_of_slot_[b->tet][b->omitted] = t.faces_.size();
            t.faces_.push_back(std::move(f));
        }
    }

    // Edges in order of first incidence.
    for (std::size_t i = 0; i < t.tets_.size(); ++i) {
        const Tet& T = t.tets_[i];
        for (int a = 0; a < 4; ++a)
            for (int b = a + 1; b < 4; ++b) {
                EdgeKey k = t.edge_key(T[a], T[b]);
                EdgeKey ab{T[a].vertex, T[b].vertex, t.group_.mul(t.group_.inv(T[a].gauge), T[b].gauge)};
                int first = (ab == k) ? a : b;
                int second = first == a ? b : a;
                Incidence inc{i, a, b, even_order(first, second), t.group_.inv(T[first].gauge)};
                auto it = t.edge_index_.find(k);
                if (it == t.edge_index_.end()) {
                    Edge e;
                    e.key = k;
                    e.rep = {T[a], T[b]};
                    t.edge_index_[k] = t.edges_.size();
                    t.edges_.push_back(std::move(e));
                    it = t.edge_index_.find(k);
                }
                t.edges_[it->second].star.push_back(std::move(inc));
            }
    }
    for (auto& [k, r] : reps) {
        auto it = t.edge_index_.find(k);
        if (it == t.edge_index_.end()) continue;
        if (t.edge_key(r.first, r.second) != k) throw TriangulationError("edge representative does not lie over its edge");
        t.edges_[it->second].rep = r;
    }

    long chi = static_cast<long>(t.n0()) - static_cast<long>(t.n1()) + static_cast<long>(t.n2()) - static_cast<long>(t.n3());
    if (chi != 0) throw TriangulationError("Euler characteristic " + std::to_string(chi) + " != 0: not a closed 3-manifold");
    if (t.n2() != 2 * t.n3()) throw TriangulationError("face count is not twice the tetrahedron count");
    return t;
}

std::vector<int> Triangulation::vertices() const {
    std::vector<int> v;
    for (auto& [id, z] : zeta_) v.push_back(id);
    return v;
}

const Scalar& Triangulation::zeta(int v) const {
    auto it = zeta_.find(v);
    if (it == zeta_.end()) throw TriangulationError("unknown vertex " + std::to_string(v));
    return it->second;
}

Scalar Triangulation::kappa(int v) const {
    auto it = kappa_.find(v);
    return it == kappa_.end() ? Scalar(1) : it->second;
}

std::optional<std::size_t> Triangulation::find_edge(const EdgeKey& k) const {
    auto it = edge_index_.find(k);
    if (it == edge_index_.end()) return std::nullopt;
    return it->second;
}

const std::vector<Incidence>& Triangulation::edge_star(const EdgeKey& k) const {
    auto e = find_edge(k);
    if (!e) throw TriangulationError("edge not found");
    return edges_[*e].star;
}

EdgeReps Triangulation::edge_reps() const {
    EdgeReps r;
    for (auto& e : edges_) r[e.key] = e.rep;
    return r;
}

FaceSlot Triangulation::partner(std::size_t tet, int omitted) const {
    const Face& f = face_of(tet, omitted);
    if (f.s0.tet == tet && f.s0.omitted == omitted) return f.s1;
    return f.s0;
}

const Face& Triangulation::face_of(std::size_t tet, int omitted) const { return faces_.at(face_of_slot_.at(tet).at(omitted)); }

std::string Triangulation::lv_str(const LiftedVertex& v) const {
    if (v.gauge.empty()) return std::to_string(v.vertex);
    return std::to_string(v.vertex) + "@" + group_.str(v.gauge);
}

std::string Triangulation::edge_label(std::size_t e) const {
    const EdgeKey& k = edges_.at(e).key;
    std::string s = std::to_string(k.v0) + "-" + std::to_string(k.v1);
    if (!k.g.empty()) s += "@" + group_.str(k.g);
    return s;
}

namespace {

std::vector<std::array<int, 4>> even_perms() {
    std::vector<std::array<int, 4>> out;
    std::array<int, 4> p{0, 1, 2, 3};
    do {
        if (!parity(p)) out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

Tet canon_tet(const Triangulation& t, const Tet& T) {
    static const auto perms = even_perms();
    Tet best;
    bool have = false;
    for (auto& p : perms) {
        GroupElem g = t.group().inv(T[p[0]].gauge);
        Tet c{t.translate(g, T[p[0]]), t.translate(g, T[p[1]]), t.translate(g, T[p[2]]), t.translate(g, T[p[3]])};
        if (!have || c < best) {
            best = c;
            have = true;
        }
    }
    return best;
}

}  // namespace

bool same_tetrahedra(const Triangulation& x, const Triangulation& y) {
    if (x.n3() != y.n3()) return false;
    std::vector<Tet> a, b;
    for (auto& T : x.tets()) a.push_back(canon_tet(x, T));
    for (auto& T : y.tets()) b.push_back(canon_tet(y, T));
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

Triangulation regauge(const Triangulation& t, std::size_t tet, const GroupElem& g) {
    auto tets = t.tets();
    tets.at(tet) = t.translate(g, tets[tet]);
    return Triangulation::build(t.group(), t.zeta(), tets, {}, t.kappas());
}

}  // namespace crx
