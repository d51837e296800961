#include "crx/simplicial.hpp"

#include <algorithm>
#include <cctype>

namespace crx {

DeckGroup DeckGroup::trivial() { return DeckGroup(); }

DeckGroup DeckGroup::infinite_cyclic(const std::string& gen) {
    DeckGroup g;
    g.kind_ = GroupKind::infinite_cyclic;
    g.gens_ = {gen};
    return g;
}

DeckGroup DeckGroup::cyclic(long p, const std::string& gen) {
    if (p < 1) throw TriangulationError("cyclic group order must be positive");
    DeckGroup g;
    g.kind_ = GroupKind::cyclic;
    g.p_ = p;
    g.gens_ = {gen};
    return g;
}

DeckGroup DeckGroup::free(std::vector<std::string> gens) {
    if (gens.empty()) throw TriangulationError("free group needs at least one generator");
    DeckGroup g;
    g.kind_ = GroupKind::free;
    g.gens_ = std::move(gens);
    return g;
}

GroupElem DeckGroup::normalize(GroupElem a) const {
    switch (kind_) {
        case GroupKind::trivial:
            return {};
        case GroupKind::infinite_cyclic:
            if (a.empty() || a[0] == 0) return {};
            return {a[0]};
        case GroupKind::cyclic: {
            if (a.empty()) return {};
            long k = ((a[0] % p_) + p_) % p_;
            if (k == 0) return {};
            return {k};
        }
        case GroupKind::free: {
            GroupElem r;
            for (long x : a) {
                if (!r.empty() && r.back() == -x)
                    r.pop_back();
                else
                    r.push_back(x);
            }
            return r;
        }
    }
    return {};
}

GroupElem DeckGroup::generator(std::size_t i, long k) const {
    if (i >= gens_.size()) throw TriangulationError("generator index out of range");
    if (kind_ != GroupKind::free) return normalize({k});
    long letter = static_cast<long>(i) + 1;
    GroupElem w(static_cast<std::size_t>(k < 0 ? -k : k), k < 0 ? -letter : letter);
    return normalize(w);
}

GroupElem DeckGroup::mul(const GroupElem& a, const GroupElem& b) const {
    if (kind_ == GroupKind::free) {
        GroupElem w = a;
        w.insert(w.end(), b.begin(), b.end());
        return normalize(w);
    }
    long x = a.empty() ? 0 : a[0], y = b.empty() ? 0 : b[0];
    return normalize({x + y});
}

GroupElem DeckGroup::inv(const GroupElem& a) const {
    if (kind_ == GroupKind::free) {
        GroupElem w(a.rbegin(), a.rend());
        for (auto& x : w) x = -x;
        return w;
    }
    if (a.empty()) return {};
    return normalize({-a[0]});
}

bool DeckGroup::less(const GroupElem& a, const GroupElem& b) const {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::vector<std::pair<std::size_t, long>> DeckGroup::syllables(const GroupElem& a) const {
    std::vector<std::pair<std::size_t, long>> out;
    if (a.empty()) return out;
    if (kind_ != GroupKind::free) return {{0, a[0]}};
    for (long x : a) {
        std::size_t g = static_cast<std::size_t>((x < 0 ? -x : x) - 1);
        long s = x < 0 ? -1 : 1;
        if (!out.empty() && out.back().first == g && (out.back().second < 0) == (s < 0))
            out.back().second += s;
        else
            out.emplace_back(g, s);
    }
    return out;
}

std::string DeckGroup::str(const GroupElem& a) const {
    if (a.empty()) return "id";
    std::string s;
    for (auto& [g, k] : syllables(a)) {
        if (!s.empty()) s += "*";
        s += gens_[g];
        if (k != 1) s += "^" + std::to_string(k);
    }
    return s;
}

GroupElem DeckGroup::parse(const std::string& raw) const {
    std::string s;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty() || s == "id" || s == "1") return {};
    GroupElem acc;
    std::size_t start = 0;
    while (start <= s.size()) {
        auto star = s.find('*', start);
        std::string f = s.substr(start, star - start);
        auto caret = f.find('^');
        std::string name = f.substr(0, caret);
        long k = 1;
        if (caret != std::string::npos) {
            std::string e = f.substr(caret + 1);
            std::size_t used = 0;
            try {
                k = std::stol(e, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used == 0 || used != e.size()) throw TriangulationError("bad exponent in gauge word '" + raw + "'");
        }
        auto it = std::find(gens_.begin(), gens_.end(), name);
        if (it == gens_.end()) throw TriangulationError("unknown generator '" + name + "' in gauge word '" + raw + "'");
        acc = mul(acc, generator(static_cast<std::size_t>(it - gens_.begin()), k));
        if (star == std::string::npos) break;
        start = star + 1;
    }
    return acc;
}

std::string DeckGroup::describe() const {
    switch (kind_) {
        case GroupKind::trivial:
            return "trivial";
        case GroupKind::infinite_cyclic:
            return "infinite_cyclic " + gens_[0];
        case GroupKind::cyclic:
            return "cyclic " + std::to_string(p_) + " " + gens_[0];
        case GroupKind::free: {
            std::string s = "free " + std::to_string(gens_.size());
            for (auto& g : gens_) s += " " + g;
            return s;
        }
    }
    return "";
}

}  // namespace crx
