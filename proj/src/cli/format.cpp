#include "crx/cli.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace crx {

namespace {

const std::set<std::string> kBlocks{"field", "group", "vertices", "tetrahedra", "representation",
                                    "deformation", "stabilizer", "marks"};

// Whitespace split that keeps "[a, b]" together.
std::vector<std::string> tokens(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char c : line) {
        if (c == '[') ++depth;
        if (c == ']') --depth;
        if (depth == 0 && std::isspace(static_cast<unsigned char>(c))) {
            if (!cur.empty()) out.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

struct Line {
    std::size_t no;
    std::vector<std::string> tok;
};

struct Parser {
    std::string source;
    std::vector<Line> lines;
    std::size_t pos = 0;

    [[noreturn]] void fail(std::size_t line, const std::string& msg) const { throw ParseError(source, line, msg); }

    bool at_block() const { return pos < lines.size() && kBlocks.count(lines[pos].tok[0]); }

    // Body lines up to the next block keyword.
    std::vector<Line> body() {
        std::vector<Line> out;
        while (pos < lines.size() && !kBlocks.count(lines[pos].tok[0])) out.push_back(lines[pos++]);
        return out;
    }
};

long parse_long(const Parser& ps, std::size_t line, const std::string& s, const std::string& what) {
    std::size_t used = 0;
    long v = 0;
    try {
        v = std::stol(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size()) ps.fail(line, "expected an integer " + what + ", got '" + s + "'");
    return v;
}

Scalar parse_scalar(const Parser& ps, std::size_t line, const std::string& s, const FieldPtr& f) {
    try {
        return Scalar::parse(s, f);
    } catch (const std::exception& e) {
        ps.fail(line, e.what());
    }
}

LiftedVertex parse_slot(const Parser& ps, std::size_t line, const std::string& s, const DeckGroup& g) {
    auto at = s.find('@');
    LiftedVertex v;
    v.vertex = static_cast<int>(parse_long(ps, line, s.substr(0, at), "vertex id"));
    if (at != std::string::npos) {
        try {
            v.gauge = g.parse(s.substr(at + 1));
        } catch (const std::exception& e) {
            ps.fail(line, e.what());
        }
    }
    return v;
}

std::string slot_str(const DeckGroup& g, const LiftedVertex& v) {
    if (v.gauge.empty()) return std::to_string(v.vertex);
    return std::to_string(v.vertex) + "@" + g.str(v.gauge);
}

std::size_t generator_index(const Parser& ps, std::size_t line, const DeckGroup& g, const std::string& name) {
    auto& gens = g.generators();
    auto it = std::find(gens.begin(), gens.end(), name);
    if (it == gens.end()) ps.fail(line, "unknown generator '" + name + "'");
    return static_cast<std::size_t>(it - gens.begin());
}

FieldPtr field_from_tokens(const std::vector<std::string>& t, std::size_t first) {
    if (t.size() <= first) throw FieldError("missing field specification");
    const std::string& kind = t[first];
    if (kind == "rationals") {
        if (t.size() != first + 1) throw FieldError("unexpected text after 'rationals'");
        return Field::rationals();
    }
    if (kind == "real_cyclotomic") {
        if (t.size() != first + 2) throw FieldError("real_cyclotomic needs p");
        return real_cyclotomic_field(std::stol(t[first + 1]));
    }
    if (kind == "number_field") {
        if (t.size() < first + 2 || t.size() > first + 3) throw FieldError("number_field needs a coefficient list");
        bool assume = false;
        if (t.size() == first + 3) {
            if (t[first + 2] != "assume_irreducible") throw FieldError("unknown field option '" + t[first + 2] + "'");
            assume = true;
        }
        const std::string& lst = t[first + 1];
        if (lst.size() < 2 || lst.front() != '[' || lst.back() != ']') throw FieldError("modulus must be a bracketed list");
        Poly m;
        std::string body = lst.substr(1, lst.size() - 2);
        std::size_t start = 0;
        while (true) {
            auto comma = body.find(',', start);
            m.push_back(parse_rational(body.substr(start, comma - start)));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        return Field::number_field(m, assume);
    }
    throw FieldError("unknown field kind '" + kind + "'");
}

void apply_preset(Document& d) {
    const DeckGroup& g = d.tri.group();
    if (d.preset == "trivial") {
        d.rep = Representation::trivial(g);
        d.defo = Deformation::none(d.rep);
    } else {
        if (g.kind() != GroupKind::infinite_cyclic) throw CatalogError("preset " + d.preset + " needs an infinite cyclic group");
        S2Kind kind = d.preset == "s2xs1_parabolic" ? S2Kind::parabolic : S2Kind::nonparabolic;
        d.rep = s2xs1_representation(g, kind, d.lambda);
        d.defo = s2xs1_deformation(kind, d.lambda);
    }
    if (d.stab_auto) d.stab = stabilizer_basis(d.rep);
}

}  // namespace

FieldPtr parse_field_spec(const std::string& spec) { return field_from_tokens(tokens(spec), 0); }

std::string field_spec(const FieldPtr& f) {
    if (!f || f->is_rationals()) return "rationals";
    std::string s = f->to_string();
    if (f->asserted()) s += " assume_irreducible";
    return s;
}

Document parse_document(std::istream& in, const std::string& source) {
    Parser ps;
    ps.source = source;
    std::string raw;
    for (std::size_t no = 1; std::getline(in, raw); ++no) {
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        auto t = tokens(raw);
        if (!t.empty()) ps.lines.push_back({no, std::move(t)});
    }

    Document d;
    d.source = source;
    std::optional<DeckGroup> group;
    std::map<int, Scalar> zeta, kappa;
    std::vector<Tet> tets;
    std::vector<std::size_t> tet_lines;
    std::set<std::string> seen;
    std::optional<std::vector<MobiusElement>> images;
    std::size_t rep_line = 0;
    std::vector<std::pair<std::string, std::vector<Line>>> defo_blocks;
    bool have_field = false;

    auto need_group = [&](std::size_t line) -> const DeckGroup& {
        if (!group) ps.fail(line, "'group' must come before this block");
        return *group;
    };

    while (ps.pos < ps.lines.size()) {
        if (!ps.at_block()) ps.fail(ps.lines[ps.pos].no, "expected a block keyword, got '" + ps.lines[ps.pos].tok[0] + "'");
        Line head = ps.lines[ps.pos++];
        const std::string& kw = head.tok[0];
        if (kw != "deformation" && !seen.insert(kw).second) ps.fail(head.no, "duplicate '" + kw + "' block");
        auto body = ps.body();

        if (kw == "field") {
            if (!zeta.empty()) ps.fail(head.no, "'field' must come before 'vertices'");
            try {
                d.field = field_from_tokens(head.tok, 1);
            } catch (const std::exception& e) {
                ps.fail(head.no, e.what());
            }
            have_field = true;
            if (!body.empty()) ps.fail(body[0].no, "unexpected line in 'field'");
        } else if (kw == "group") {
            auto& t = head.tok;
            if (t.size() < 2) ps.fail(head.no, "group kind missing");
            std::set<std::string> names;
            auto check_name = [&](const std::string& n) {
                if (kBlocks.count(n) || n == "id" || n.empty() || !std::isalpha(static_cast<unsigned char>(n[0])) ||
                    n.find_first_of("@*^") != std::string::npos || !names.insert(n).second)
                    ps.fail(head.no, "bad generator name '" + n + "'");
                return n;
            };
            if (t[1] == "trivial" && t.size() == 2)
                group = DeckGroup::trivial();
            else if (t[1] == "infinite_cyclic" && t.size() == 3)
                group = DeckGroup::infinite_cyclic(check_name(t[2]));
            else if (t[1] == "cyclic" && t.size() == 4) {
                long p = parse_long(ps, head.no, t[2], "order");
                if (p < 1) ps.fail(head.no, "cyclic order must be positive");
                group = DeckGroup::cyclic(p, check_name(t[3]));
            } else if (t[1] == "free" && t.size() >= 3) {
                long k = parse_long(ps, head.no, t[2], "rank");
                if (k < 1 || static_cast<std::size_t>(k) + 3 != t.size()) ps.fail(head.no, "free group needs its rank and that many names");
                std::vector<std::string> gens;
                for (std::size_t i = 3; i < t.size(); ++i) gens.push_back(check_name(t[i]));
                group = DeckGroup::free(gens);
            } else
                ps.fail(head.no, "unknown group specification");
            if (!body.empty()) ps.fail(body[0].no, "unexpected line in 'group'");
        } else if (kw == "vertices") {
            if (head.tok.size() != 1) ps.fail(head.no, "unexpected text after 'vertices'");
            for (auto& l : body) {
                if (l.tok.size() < 2 || l.tok.size() > 3) ps.fail(l.no, "vertex line is 'id zeta [kappa=value]'");
                int id = static_cast<int>(parse_long(ps, l.no, l.tok[0], "vertex id"));
                if (zeta.count(id)) ps.fail(l.no, "vertex " + std::to_string(id) + " declared twice");
                zeta[id] = parse_scalar(ps, l.no, l.tok[1], d.field);
                if (l.tok.size() == 3) {
                    if (l.tok[2].rfind("kappa=", 0) != 0) ps.fail(l.no, "expected kappa=value");
                    kappa[id] = parse_scalar(ps, l.no, l.tok[2].substr(6), d.field);
                    if (kappa[id].is_zero()) ps.fail(l.no, "kappa must be nonzero");
                }
            }
        } else if (kw == "tetrahedra") {
            const DeckGroup& g = need_group(head.no);
            if (head.tok.size() != 1) ps.fail(head.no, "unexpected text after 'tetrahedra'");
            for (auto& l : body) {
                if (l.tok.size() != 4) ps.fail(l.no, "a tetrahedron has 4 slots, got " + std::to_string(l.tok.size()));
                Tet T;
                for (int s = 0; s < 4; ++s) T[s] = parse_slot(ps, l.no, l.tok[s], g);
                tets.push_back(T);
                tet_lines.push_back(l.no);
            }
        } else if (kw == "representation") {
            const DeckGroup& g = need_group(head.no);
            rep_line = head.no;
            auto& t = head.tok;
            if (t.size() == 1) {
                std::vector<MobiusElement> im(g.generators().size());
                std::vector<bool> set(im.size(), false);
                for (auto& l : body) {
                    if (l.tok.size() != 5) ps.fail(l.no, "image line is 'generator a b c d'");
                    auto i = generator_index(ps, l.no, g, l.tok[0]);
                    if (set[i]) ps.fail(l.no, "generator '" + l.tok[0] + "' given twice");
                    set[i] = true;
                    im[i] = {parse_scalar(ps, l.no, l.tok[1], d.field), parse_scalar(ps, l.no, l.tok[2], d.field),
                             parse_scalar(ps, l.no, l.tok[3], d.field), parse_scalar(ps, l.no, l.tok[4], d.field)};
                    if (im[i].det().is_zero()) ps.fail(l.no, "singular image for '" + l.tok[0] + "'");
                }
                for (std::size_t i = 0; i < set.size(); ++i)
                    if (!set[i]) ps.fail(head.no, "no image for generator '" + g.generators()[i] + "'");
                images = im;
                d.preset.clear();
            } else {
                d.preset = t[1];
                if (d.preset != "trivial" && d.preset != "s2xs1_nonparabolic" && d.preset != "s2xs1_parabolic")
                    ps.fail(head.no, "unknown representation preset '" + d.preset + "'");
                for (std::size_t i = 2; i < t.size(); ++i) {
                    if (t[i].rfind("lambda=", 0) != 0 || d.preset != "s2xs1_nonparabolic")
                        ps.fail(head.no, "unexpected preset option '" + t[i] + "'");
                    d.lambda = parse_scalar(ps, head.no, t[i].substr(7), d.field);
                }
                if (!body.empty()) ps.fail(body[0].no, "a preset representation takes no image lines");
            }
        } else if (kw == "deformation") {
            if (head.tok.size() != 2) ps.fail(head.no, "deformation block is 'deformation <tag>'");
            for (auto& [tag, b] : defo_blocks)
                if (tag == head.tok[1]) ps.fail(head.no, "deformation tag '" + tag + "' given twice");
            defo_blocks.emplace_back(head.tok[1], body);
            if (body.empty()) ps.fail(head.no, "deformation block without image lines");
            // line number carried by the first body line
        } else if (kw == "stabilizer") {
            if (head.tok.size() == 2 && head.tok[1] == "auto") {
                d.stab_auto = true;
                if (!body.empty()) ps.fail(body[0].no, "'stabilizer auto' takes no lines");
            } else if (head.tok.size() == 1) {
                d.stab_auto = false;
                for (auto& l : body) {
                    if (l.tok.size() != 3) ps.fail(l.no, "stabilizer line is 'a b c'");
                    d.stab.push_back({parse_scalar(ps, l.no, l.tok[0], d.field), parse_scalar(ps, l.no, l.tok[1], d.field),
                                      parse_scalar(ps, l.no, l.tok[2], d.field)});
                }
            } else
                ps.fail(head.no, "stabilizer block is 'stabilizer auto' or a list of 'a b c' lines");
        } else if (kw == "marks") {
            for (auto& l : body) {
                if (l.tok[0] == "distinguished" && l.tok.size() == 3) {
                    auto a = parse_long(ps, l.no, l.tok[1], "tetrahedron index");
                    auto b = parse_long(ps, l.no, l.tok[2], "tetrahedron index");
                    if (a < 0 || b < 0 || a == b) ps.fail(l.no, "distinguished tetrahedra must be two distinct indices");
                    d.distinguished = std::array<std::size_t, 2>{static_cast<std::size_t>(a), static_cast<std::size_t>(b)};
                } else if (l.tok[0] == "boundary" && l.tok.size() >= 2) {
                    for (std::size_t i = 1; i < l.tok.size(); ++i) d.dset.push_back(l.tok[i]);
                } else
                    ps.fail(l.no, "marks line is 'distinguished i j' or 'boundary name ...'");
            }
        }
    }

    if (!group) ps.fail(ps.lines.empty() ? 1 : ps.lines.back().no, "missing 'group' block");
    if (zeta.empty()) ps.fail(ps.lines.empty() ? 1 : ps.lines.back().no, "missing 'vertices' block");
    if (tets.empty()) ps.fail(ps.lines.empty() ? 1 : ps.lines.back().no, "missing 'tetrahedra' block");
    (void)have_field;

    try {
        d.tri = Triangulation::build(*group, zeta, tets, {}, kappa);
    } catch (const TriangulationError& e) {
        // Point at the tetrahedron the message names, when there is one.
        std::string msg = e.what();
        std::size_t line = tet_lines.front();
        auto p = msg.find("tetrahedron ");
        if (p != std::string::npos) {
            try {
                auto i = std::stoul(msg.substr(p + 12));
                if (i < tet_lines.size()) line = tet_lines[i];
            } catch (const std::exception&) {
            }
        }
        ps.fail(line, msg);
    }
    if (d.distinguished && ((*d.distinguished)[0] >= tets.size() || (*d.distinguished)[1] >= tets.size()))
        ps.fail(ps.lines.back().no, "distinguished tetrahedron index out of range");

    const DeckGroup& g = d.tri.group();
    try {
        if (!d.preset.empty()) {
            if (!defo_blocks.empty()) ps.fail(defo_blocks[0].second[0].no, "a preset representation fixes its own deformation");
            bool stab_auto = d.stab_auto;
            auto stab = d.stab;
            apply_preset(d);
            if (!stab_auto) d.stab = stab;
        } else {
            if (images)
                d.rep = {g, *images};
            else
                d.rep = Representation::trivial(g);
            d.rep.check();
            d.defo = Deformation::none(d.rep);
            for (auto& [tag, b] : defo_blocks) {
                d.defo.tags.push_back(tag);
                std::vector<bool> set(g.generators().size(), false);
                for (auto& l : b) {
                    if (l.tok.size() != 5) ps.fail(l.no, "deformation line is 'generator da db dc dd'");
                    auto i = generator_index(ps, l.no, g, l.tok[0]);
                    if (set[i]) ps.fail(l.no, "generator '" + l.tok[0] + "' given twice");
                    set[i] = true;
                    auto& m = d.defo.images[i];
                    Jet* e[4] = {&m.a, &m.b, &m.c, &m.d};
                    for (int k = 0; k < 4; ++k) {
                        Jet::Partials p = e[k]->partials();
                        p.emplace_back(tag, parse_scalar(ps, l.no, l.tok[1 + k], d.field));
                        *e[k] = Jet(e[k]->value(), p);
                    }
                }
            }
            if (d.stab_auto) d.stab = stabilizer_basis(d.rep);
        }
        for (auto& x : d.stab)
            if (!commutes_with(d.rep, x)) ps.fail(rep_line ? rep_line : ps.lines.back().no, "stabilizer vector does not commute with the representation");
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception& e) {
        ps.fail(rep_line ? rep_line : ps.lines.back().no, e.what());
    }
    return d;
}

Document load_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path, 0, "cannot open file");
    return parse_document(in, path);
}

std::string format_document(const Document& d) {
    std::ostringstream o;
    const DeckGroup& g = d.tri.group();
    o << "field " << field_spec(d.field) << "\n";
    o << "group " << g.describe() << "\n";
    o << "vertices\n";
    for (auto& [v, z] : d.tri.zeta()) {
        o << "  " << v << " " << z.str();
        auto k = d.tri.kappas().find(v);
        if (k != d.tri.kappas().end()) o << " kappa=" << k->second.str();
        o << "\n";
    }
    o << "tetrahedra\n";
    for (std::size_t i = 0; i < d.tri.n3(); ++i) {
        const Tet& T = d.tri.tets()[i];
        o << " ";
        for (auto& s : T) o << " " << slot_str(g, s);
        o << "  # " << i << "\n";
    }
    if (!d.preset.empty()) {
        o << "representation " << d.preset;
        if (d.preset == "s2xs1_nonparabolic") o << " lambda=" << d.lambda.str();
        o << "\n";
    } else if (!g.generators().empty()) {
        o << "representation\n";
        for (std::size_t i = 0; i < g.generators().size(); ++i) {
            auto& m = d.rep.images[i];
            o << "  " << g.generators()[i] << " " << m.a.str() << " " << m.b.str() << " " << m.c.str() << " " << m.d.str() << "\n";
        }
        for (auto& tag : d.defo.tags) {
            o << "deformation " << tag << "\n";
            for (std::size_t i = 0; i < g.generators().size(); ++i) {
                auto& m = d.defo.images[i];
                o << "  " << g.generators()[i] << " " << m.a.partial(tag).str() << " " << m.b.partial(tag).str() << " "
                  << m.c.partial(tag).str() << " " << m.d.partial(tag).str() << "\n";
            }
        }
    }
    if (d.stab_auto)
        o << "stabilizer auto\n";
    else {
        o << "stabilizer\n";
        for (auto& x : d.stab) o << "  " << x[0].str() << " " << x[1].str() << " " << x[2].str() << "\n";
    }
    if (d.distinguished || !d.dset.empty()) {
        o << "marks\n";
        if (d.distinguished) o << "  distinguished " << (*d.distinguished)[0] << " " << (*d.distinguished)[1] << "\n";
        if (!d.dset.empty()) {
            o << "  boundary";
            for (auto& n : d.dset) o << " " << n;
            o << "\n";
        }
    }
    return o.str();
}

Document document_from(const ClosedExample& ex) {
    Document d;
    d.source = ex.name;
    d.tri = ex.tri;
    for (auto& [v, z] : ex.tri.zeta())
        if (z.field() && !z.field()->is_rationals()) d.field = z.field();
    d.rep = ex.rep;
    d.defo = ex.defo;
    d.stab = ex.stab;
    d.stab_auto = true;
    if (ex.name == "s2xs1_nonparabolic") {
        d.preset = ex.name;
        d.lambda = ex.rep.images[0].a;
    } else if (ex.name == "s2xs1_parabolic")
        d.preset = ex.name;
    else if (ex.rep.group.generators().empty())
        d.preset = "trivial";
    return d;
}

void set_lambda(Document& d, const Scalar& lambda) {
    if (d.preset != "s2xs1_nonparabolic") throw CatalogError("--lambda applies only to the s2xs1_nonparabolic preset");
    d.lambda = lambda;
    apply_preset(d);
}

Document with_zeta(const Document& d, const std::map<int, Scalar>& zeta) {
    Document r = d;
    r.tri = Triangulation::build(d.tri.group(), zeta, d.tri.tets(), d.tri.edge_reps(), d.tri.kappas());
    return r;
}

}  // namespace crx
