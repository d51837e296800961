#include "crx/twistbuild.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace crx {

namespace {

std::string zkey(int v) { return "z:" + std::to_string(v); }
std::string akey(int v) { return "a:" + std::to_string(v); }

Mobius<Jet> jet_power(const Mobius<Jet>& g, long k) {
    Mobius<Jet> base = k < 0 ? g.inverse() : g;
    Mobius<Jet> r = Mobius<Jet>::identity();
    for (long i = 0; i < (k < 0 ? -k : k); ++i) r = r * base;
    return r;
}

AlgebraVector adjoint(const MobiusElement& g, const AlgebraVector& x) {
    MobiusElement X{x[0], x[1], x[2], -x[0]};
    MobiusElement m = g * X * g.inverse();
    Scalar s = g.det().inv();
    return {m.a * s, m.b * s, m.c * s};
}

struct LiftCache {
    const Triangulation& t;
    const Representation& rep;
    std::map<LiftedVertex, Scalar> z;

    const Scalar& operator()(const LiftedVertex& v) {
        auto it = z.find(v);
        if (it != z.end()) return it->second;
        return z.emplace(v, lifted_zeta(t, rep, v)).first->second;
    }
};

Mobius<Jet> seeded_image(const Triangulation& t, const Deformation& defo, const GroupElem& g) {
    return defo.eval(t.group(), g);
}

VertexCoords<Jet> seeded_coords(const Triangulation& t, const Deformation& defo, const LiftedVertex& v, bool with_h) {
    Scalar k = t.kappa(v.vertex);
    Jet z(t.zeta(v.vertex), zkey(v.vertex));
    Jet h = with_h ? Jet(k, akey(v.vertex), Scalar(2) * k) : Jet(k);
    return mobius_apply(seeded_image(t, defo, v.gauge), VertexCoords<Jet>{z, h}, t.lv_str(v));
}

Scalar incidence_term(LiftCache& Z, const Tet& T, const std::array<int, 4>& o) {
    return (Z(T[o[0]]) - Z(T[o[1]])) * (Z(T[o[2]]) - Z(T[o[3]]));
}

}  // namespace

Representation Representation::trivial(const DeckGroup& g) {
    return {g, std::vector<MobiusElement>(g.generators().size(), MobiusElement::identity())};
}

MobiusElement Representation::eval(const GroupElem& e) const {
    MobiusElement r = MobiusElement::identity();
    for (auto& [i, k] : group.syllables(e)) r = r * power(images.at(i), k);
    return r;
}

void Representation::check() const {
    if (images.size() != group.generators().size())
        throw ComplexError("representation gives " + std::to_string(images.size()) + " images for " +
                           std::to_string(group.generators().size()) + " generators");
    for (auto& m : images)
        if (m.det().is_zero()) throw ComplexError("representation image is singular");
    if (group.kind() == GroupKind::cyclic && !psl_equal(power(images[0], group.order()), MobiusElement::identity()))
        throw ComplexError("representation: image of the generator to the power " + std::to_string(group.order()) +
                           " is not +-identity");
}

Deformation Deformation::none(const Representation& rep) {
    Deformation d;
    for (auto& m : rep.images) d.images.push_back({Jet(m.a), Jet(m.b), Jet(m.c), Jet(m.d)});
    return d;
}

Mobius<Jet> Deformation::eval(const DeckGroup& g, const GroupElem& e) const {
    Mobius<Jet> r = Mobius<Jet>::identity();
    for (auto& [i, k] : g.syllables(e)) r = r * jet_power(images.at(i), k);
    return r;
}

std::vector<AlgebraVector> stabilizer_basis(const Representation& rep) {
    const std::array<AlgebraVector, 3> unit{{{Scalar(1), Scalar(0), Scalar(0)},
                                             {Scalar(0), Scalar(1), Scalar(0)},
                                             {Scalar(0), Scalar(0), Scalar(1)}}};
    Matrix m(3 * rep.images.size(), 3);
    for (std::size_t g = 0; g < rep.images.size(); ++g)
        for (int j = 0; j < 3; ++j) {
            AlgebraVector y = adjoint(rep.images[g], unit[j]);
            for (int i = 0; i < 3; ++i) m.at(3 * g + i, j) = y[i] - unit[j][i];
        }
    std::vector<AlgebraVector> out;
    for (auto& v : nullspace(m)) out.push_back({v[0], v[1], v[2]});
    return out;
}

bool commutes_with(const Representation& rep, const AlgebraVector& x) {
    for (auto& g : rep.images)
        if (adjoint(g, x) != x) return false;
    return true;
}

Scalar lifted_zeta(const Triangulation& t, const Representation& rep, const LiftedVertex& v) {
    return mobius_z(rep.eval(v.gauge), t.zeta(v.vertex), t.lv_str(v));
}

Scalar edge_zeta(const Triangulation& t, const Representation& rep, std::size_t edge) {
    const auto& [u, v] = t.edges().at(edge).rep;
    return lifted_zeta(t, rep, u) - lifted_zeta(t, rep, v);
}

Matrix build_f1(const Triangulation& t, const Deformation& defo, const std::vector<AlgebraVector>& stab) {
    auto verts = t.vertices();
    Matrix m(verts.size() + defo.tags.size(), stab.size());
    for (std::size_t i = 0; i < verts.size(); ++i) {
        const Scalar& z = t.zeta(verts[i]);
        for (std::size_t k = 0; k < stab.size(); ++k) m.at(i, k) = Scalar(2) * z * stab[k][0] + stab[k][1] - z * z * stab[k][2];
        m.row_labels.push_back("dz_" + std::to_string(verts[i]));
    }
    for (auto& g : defo.tags) m.row_labels.push_back("dg_" + g);
    for (std::size_t k = 0; k < stab.size(); ++k) m.col_labels.push_back("X_" + std::to_string(k));
    return m;
}

Matrix build_f2(const Triangulation& t, const Representation&, const Deformation& defo) {
    auto verts = t.vertices();
    Matrix m(t.n3(), verts.size() + defo.tags.size());
    for (std::size_t r = 0; r < t.n3(); ++r) {
        const Tet& T = t.tets()[r];
        std::array<Jet, 4> z;
        for (int s = 0; s < 4; ++s) z[s] = seeded_coords(t, defo, T[s], false).z;
        Jet x = cross_ratio_value(z[0], z[1], z[2], z[3]);
        Scalar nrm = (z[0].value() - z[2].value()) * (z[3].value() - z[1].value());
        if (nrm.is_zero()) throw GenericityError("tetrahedron " + std::to_string(r) + " has coincident lifted points");
        for (std::size_t i = 0; i < verts.size(); ++i) m.at(r, i) = x.dlog(zkey(verts[i])) / nrm;
        for (std::size_t g = 0; g < defo.tags.size(); ++g) m.at(r, verts.size() + g) = x.dlog(defo.tags[g]) / nrm;
        m.row_labels.push_back("dy_" + std::to_string(r));
    }
    m.col_labels = build_f1(t, defo, {}).row_labels;
    return m;
}

Matrix build_f3(const Triangulation& t, const Representation& rep) {
    LiftCache Z{t, rep, {}};
    Matrix m(t.n1(), t.n3());
    for (std::size_t e = 0; e < t.n1(); ++e) {
        for (auto& inc : t.edges()[e].star) m.at(e, inc.tet) += incidence_term(Z, t.tets()[inc.tet], inc.order);
        m.row_labels.push_back("dphi_" + t.edge_label(e));
    }
    for (std::size_t r = 0; r < t.n3(); ++r) m.col_labels.push_back("dy_" + std::to_string(r));
    return m;
}

std::pair<Matrix, Matrix> build_f4_f5(const Triangulation& t, const Representation&, const Deformation& defo,
                                      const std::vector<AlgebraVector>& stab) {
    auto verts = t.vertices();
    std::size_t n0 = verts.size(), k = defo.tags.size();
    Matrix f4(2 * n0 + k, t.n1());
    for (std::size_t e = 0; e < t.n1(); ++e) {
        const auto& [u, v] = t.edges()[e].rep;
        VertexCoords<Jet> cu = seeded_coords(t, defo, u, true), cv = seeded_coords(t, defo, v, true);
        Jet phi = normalized_length(cu, cv, cu.z.value(), cv.z.value(), cu.h.value(), cv.h.value());
        for (std::size_t i = 0; i < n0; ++i) {
            f4.at(i, e) = phi.partial(akey(verts[i]));
            f4.at(n0 + i, e) = phi.partial(zkey(verts[i]));
        }
        for (std::size_t g = 0; g < k; ++g) f4.at(2 * n0 + g, e) = phi.partial(defo.tags[g]);
        f4.col_labels.push_back("dphi_" + t.edge_label(e));
    }
    for (int v : verts) f4.row_labels.push_back("dalpha_" + std::to_string(v));
    for (int v : verts) f4.row_labels.push_back("dbeta_" + std::to_string(v));
    for (auto& g : defo.tags) f4.row_labels.push_back("dg*_" + g);

    Matrix f5(stab.size(), 2 * n0 + k);
    for (std::size_t s = 0; s < stab.size(); ++s) {
        const auto& [a, b, c] = stab[s];
        for (std::size_t i = 0; i < n0; ++i) {
            const Scalar& z = t.zeta(verts[i]);
            f5.at(s, i) = -a + z * c;
            f5.at(s, n0 + i) = Scalar(2) * z * a + b - z * z * c;
        }
        f5.row_labels.push_back("X*_" + std::to_string(s));
    }
    f5.col_labels = f4.row_labels;
    return {f4, f5};
}

TwistedComplex build_twisted(const Triangulation& t, const Representation& rep, const Deformation& defo,
                             const std::vector<AlgebraVector>& stab) {
    TwistedComplex c;
    c.vertices = t.vertices();
    c.tags = defo.tags;
    Matrix f1 = build_f1(t, defo, stab);
    Matrix f2 = build_f2(t, rep, defo);
    Matrix f3 = build_f3(t, rep);
    auto [f4, f5] = build_f4_f5(t, rep, defo, stab);
    c.cx.spaces = {f1.col_labels, f1.row_labels, f2.row_labels, f3.row_labels, f4.row_labels, f5.row_labels};
    c.cx.maps = {f1, f2, f3, f4, f5};
    return c;
}

Scalar edge_deficit(const Triangulation& t, const Representation& rep, std::size_t edge) {
    std::vector<Scalar> xs;
    for (auto& inc : t.edges().at(edge).star) {
        Tet T = t.translate(inc.gamma, t.tets()[inc.tet]);
        auto [i, j, k, l] = inc.order;
        Scalar zi = lifted_zeta(t, rep, T[i]), zj = lifted_zeta(t, rep, T[j]);
        Scalar zk = lifted_zeta(t, rep, T[k]), zl = lifted_zeta(t, rep, T[l]);
        xs.push_back(cross_ratio_value(zi, zk, zj, zl));
    }
    return deficit_angle(xs);
}

Scalar tet_discrepancy(const Triangulation& t, const Representation& rep, std::size_t tet) {
    const Tet& T = t.tets().at(tet);
    std::array<VertexCoords<Scalar>, 4> c;
    for (int s = 0; s < 4; ++s)
        c[s] = mobius_apply(rep.eval(T[s].gauge), VertexCoords<Scalar>{t.zeta(T[s].vertex), t.kappa(T[s].vertex)});
    std::array<Scalar, 6> L;
    int n = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) L[n++] = squared_length(c[i], c[j]);
    return discrepancy(L);
}

Scalar copy_zeta(const Triangulation& t, const Representation& rep, const BoundaryCopy& c) {
    const Incidence& inc = c.arc.at(0);
    const Tet& T = t.tets()[inc.tet];
    return lifted_zeta(t, rep, T[inc.order[0]]) - lifted_zeta(t, rep, T[inc.order[1]]);
}

RelativeStructure relative_structure(const Triangulation& t, std::size_t ta, std::size_t tb) {
    if (ta >= t.n3() || tb >= t.n3() || ta == tb) throw ComplexError("distinguished tetrahedra must be two distinct indices");
    RelativeStructure rel;
    rel.distinguished = {ta, tb};
    auto marked = [&](std::size_t x) { return x == ta || x == tb; };
    for (std::size_t i = 0; i < t.n3(); ++i)
        if (!marked(i)) rel.interior_tets.push_back(i);

    for (std::size_t e = 0; e < t.n1(); ++e) {
        const auto& star = t.edges()[e].star;
        if (std::none_of(star.begin(), star.end(), [&](const Incidence& i) { return marked(i.tet); })) {
            rel.interior_edges.push_back(e);
            continue;
        }
        std::vector<Incidence> rest;
        for (auto& inc : star)
            if (!marked(inc.tet)) rest.push_back(inc);
        std::vector<std::size_t> parent(rest.size());
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](std::size_t x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        auto locate = [&](std::size_t tet, int a, int b) -> std::optional<std::size_t> {
            if (a > b) std::swap(a, b);
            for (std::size_t r = 0; r < rest.size(); ++r)
                if (rest[r].tet == tet && rest[r].a == a && rest[r].b == b) return r;
            return std::nullopt;
        };
        for (std::size_t r = 0; r < rest.size(); ++r) {
            const Incidence& inc = rest[r];
            const Tet& T = t.tets()[inc.tet];
            for (int x : {inc.order[2], inc.order[3]}) {
                const Face& f = t.face_of(inc.tet, x);
                FaceSlot other = t.partner(inc.tet, x);
                if (marked(other.tet)) continue;
                bool from_s0 = f.s0.tet == inc.tet && f.s0.omitted == x;
                GroupElem g = from_s0 ? f.transition : t.group().inv(f.transition);
                LiftedVertex pa = t.translate(g, T[inc.a]), pb = t.translate(g, T[inc.b]);
                const Tet& U = t.tets()[other.tet];
                int sa = -1, sb = -1;
                for (int s = 0; s < 4; ++s) {
                    if (U[s] == pa) sa = s;
                    if (U[s] == pb) sb = s;
                }
                if (sa < 0 || sb < 0) throw TriangulationError("face gluing does not carry edge " + t.edge_label(e));
                auto q = locate(other.tet, sa, sb);
                if (!q) throw TriangulationError("face gluing leaves the star of edge " + t.edge_label(e));
                parent[find(r)] = find(*q);
            }
        }
        std::vector<std::size_t> roots;
        std::map<std::size_t, std::vector<Incidence>> arcs;
        for (std::size_t r = 0; r < rest.size(); ++r) {
            std::size_t root = find(r);
            if (!arcs.count(root)) roots.push_back(root);
            arcs[root].push_back(rest[r]);
        }
        for (std::size_t i = 0; i < roots.size(); ++i) {
            BoundaryCopy c{e, arcs[roots[i]], t.edge_label(e)};
            if (roots.size() > 1) c.name += "#" + std::to_string(i);
            rel.boundary.push_back(std::move(c));
        }
    }
    return rel;
}

Matrix relative_rows(const Triangulation& t, const Representation& rep, const RelativeStructure& rel,
                     const std::vector<std::size_t>& D) {
    std::size_t rows = rel.interior_edges.size() + D.size(), cols = rel.interior_tets.size();
    std::vector<long> col(t.n3(), -1);
    for (std::size_t j = 0; j < cols; ++j) col[rel.interior_tets[j]] = static_cast<long>(j);
    LiftCache Z{t, rep, {}};
    Matrix m(rows, cols);
    auto fill = [&](std::size_t r, const std::vector<Incidence>& incs) {
        for (auto& inc : incs) {
            if (col[inc.tet] < 0) continue;
            m.at(r, static_cast<std::size_t>(col[inc.tet])) += incidence_term(Z, t.tets()[inc.tet], inc.order);
        }
    };
    for (std::size_t r = 0; r < rel.interior_edges.size(); ++r) {
        fill(r, t.edges()[rel.interior_edges[r]].star);
        m.row_labels.push_back("dphi_" + t.edge_label(rel.interior_edges[r]));
    }
    for (std::size_t d = 0; d < D.size(); ++d) {
        const BoundaryCopy& c = rel.boundary.at(D[d]);
        fill(rel.interior_edges.size() + d, c.arc);
        m.row_labels.push_back("dphi_" + c.name);
    }
    for (auto j : rel.interior_tets) m.col_labels.push_back("dy_" + std::to_string(j));
    m.check_labels();
    return m;
}

Matrix build_relative_f3(const Triangulation& t, const Representation& rep, const RelativeStructure& rel,
                         const std::vector<std::size_t>& D) {
    std::size_t rows = rel.interior_edges.size() + D.size(), cols = rel.interior_tets.size();
    if (rows != cols)
        throw ComplexError("relative f3 is not square: " + std::to_string(rows) + " rows (" +
                           std::to_string(rel.interior_edges.size()) + " interior edges + " + std::to_string(D.size()) +
                           " boundary copies) against " + std::to_string(cols) + " interior tetrahedra");
    return relative_rows(t, rep, rel, D);
}

}  // namespace crx
