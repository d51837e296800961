#include "crx/exactfield.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace crx {

namespace poly {

void trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const Poly& p) { return static_cast<int>(p.size()) - 1; }

Poly add(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    trim(r);
    return r;
}

Poly sub(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    trim(r);
    return r;
}

Poly mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    trim(r);
    return r;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.empty()) throw FieldError("polynomial division by zero");
    Poly r = a;
    trim(r);
    int db = degree(b);
    if (degree(r) < db) return {{}, r};
    Poly q(r.size() - b.size() + 1);
    Rational lead = b.back();
    while (degree(r) >= db) {
        int shift = degree(r) - db;
        Rational f = r.back() / lead;
        q[shift] = f;
        for (int i = 0; i <= db; ++i) r[i + shift] -= f * b[i];
        trim(r);
    }
    trim(q);
    return {q, r};
}

namespace {

std::vector<mpz_class> divisors(mpz_class n) {
    if (n < 0) n = -n;
    std::vector<mpz_class> out;
    for (mpz_class d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            if (d * d != n) out.push_back(n / d);
        }
    }
    return out;
}

Rational eval(const Poly& p, const Rational& x) {
    Rational acc = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

}  // namespace

bool has_rational_root(const Poly& p) {
    if (p.empty()) return true;
    if (p[0] == 0) return true;
    mpz_class l = 1;
    for (auto& c : p) l = lcm(l, mpz_class(c.get_den()));
    std::vector<mpz_class> z;
    for (auto& c : p) z.push_back(mpz_class(c * l));
    mpz_class a0 = abs(z.front()), an = abs(z.back());
    if (a0 > mpz_class("1000000000000") || an > mpz_class("1000000000000"))
        throw FieldError("constant or leading coefficient too large for the rational root test");
    for (auto& num : divisors(a0))
        for (auto& den : divisors(an))
            for (int s : {1, -1}) {
                Rational x(num * s, den);
                x.canonicalize();
                if (eval(p, x) == 0) return true;
            }
    return false;
}

}  // namespace poly

FieldPtr Field::rationals() {
    static const FieldPtr q = std::make_shared<const Field>();
    return q;
}

FieldPtr Field::number_field(Poly m, bool assume_irreducible) {
    poly::trim(m);
    if (poly::degree(m) < 1) throw FieldError("modulus must have degree >= 1");
    if (m.back() != 1) throw FieldError("modulus must be monic");
    auto f = std::make_shared<Field>();
    f->modulus_ = m;
    int d = poly::degree(m);
    if (d <= 3) {
        if (d > 1 && poly::has_rational_root(m)) throw FieldError("modulus is reducible over Q");
        f->verified_ = true;
    } else {
        if (poly::has_rational_root(m)) throw FieldError("modulus is reducible over Q");
        f->verified_ = false;
        if (!assume_irreducible)
            throw FieldError("irreducibility of a degree > 3 modulus cannot be verified; assert it explicitly");
        f->asserted_ = true;
    }
    return f;
}

std::string Field::to_string() const {
    if (is_rationals()) return "rationals";
    std::string s = "number_field [";
    for (std::size_t i = 0; i < modulus_.size(); ++i) {
        if (i) s += ", ";
        s += rational_str(modulus_[i]);
    }
    return s + "]";
}

std::string rational_str(const Rational& q) { return q.get_num().get_str() + "/" + q.get_den().get_str(); }

Rational parse_rational(const std::string& raw) {
    std::string s;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw FieldError("empty rational literal");
    auto slash = s.find('/');
    auto check_int = [&](const std::string& t) {
        std::size_t i = (t.size() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
        if (i == t.size()) throw FieldError("malformed rational literal '" + raw + "'");
        for (; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) throw FieldError("malformed rational literal '" + raw + "'");
    };
    std::string num = s.substr(0, slash), den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    check_int(num);
    check_int(den);
    if (num[0] == '+') num = num.substr(1);
    if (den[0] == '+') den = den.substr(1);
    mpz_class n(num), d(den);
    if (d == 0) throw FieldError("zero denominator in '" + raw + "'");
    Rational q(n, d);
    q.canonicalize();
    return q;
}

}  // namespace crx
