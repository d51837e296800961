#include "crx/exactfield.hpp"

#include <cctype>

namespace crx {

namespace {

void reduce(Poly& c, const FieldPtr& f) {
    poly::trim(c);
    if (!f || f->is_rationals()) {
        if (c.size() > 1) throw FieldError("polynomial value outside Q without a number field");
        return;
    }
    const Poly& m = f->modulus();
    int n = poly::degree(m);
    while (poly::degree(c) >= n) {
        int shift = poly::degree(c) - n;
        Rational lead = c.back();
        for (int i = 0; i <= n; ++i) c[i + shift] -= lead * m[i];
        poly::trim(c);
    }
}

}  // namespace

Scalar::Scalar(FieldPtr f, Poly coeffs) : f_(std::move(f)), c_(std::move(coeffs)) {
    for (auto& q : c_) q.canonicalize();
    if (f_ && f_->is_rationals()) f_ = nullptr;
    reduce(c_, f_);
}

Scalar Scalar::generator(const FieldPtr& f) {
    if (!f || f->is_rationals()) throw FieldError("Q has no generator");
    return Scalar(f, Poly{0, 1});
}

Rational Scalar::as_rational() const {
    if (!is_rational()) throw FieldError("element " + str() + " is not rational");
    return c_.empty() ? Rational(0) : c_[0];
}

void Scalar::adopt(const Scalar& o) {
    if (!o.f_) return;
    if (!f_) {
        f_ = o.f_;
        return;
    }
    if (f_ != o.f_ && !f_->same(*o.f_)) throw FieldError("mixing elements of different number fields");
}

Scalar Scalar::operator-() const {
    Scalar r = *this;
    for (auto& q : r.c_) q = -q;
    return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
    adopt(o);
    c_ = poly::add(c_, o.c_);
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    adopt(o);
    c_ = poly::sub(c_, o.c_);
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
    adopt(o);
    if (c_.size() <= 1 && o.c_.size() <= 1) {
        if (c_.empty() || o.c_.empty()) {
            c_.clear();
        } else {
            c_[0] *= o.c_[0];
        }
        return *this;
    }
    c_ = poly::mul(c_, o.c_);
    reduce(c_, f_);
    return *this;
}

std::optional<Scalar> Scalar::try_inv() const {
    if (c_.empty()) return std::nullopt;
    if (c_.size() == 1) {
        Scalar r = *this;
        r.c_[0] = 1 / c_[0];
        return r;
    }
    // Extended Euclid on (c, m): s*c + t*m = g with g a nonzero constant.
    Poly r0 = f_->modulus(), r1 = c_;
    Poly s0{}, s1{Rational(1)};
    while (!r1.empty()) {
        auto [q, r] = poly::divmod(r0, r1);
        Poly s = poly::sub(s0, poly::mul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
    }
    if (poly::degree(r0) != 0) throw FieldError("element not invertible: modulus is reducible");
    Rational g = r0[0];
    for (auto& q : s0) q /= g;
    return Scalar(f_, s0);
}

Scalar Scalar::inv() const {
    auto r = try_inv();
    if (!r) throw FieldError("division by zero");
    return *r;
}

Scalar& Scalar::operator/=(const Scalar& o) {
    if (o.c_.empty()) throw FieldError("division by zero");
    if (o.c_.size() == 1 && c_.size() <= 1) {
        adopt(o);
        if (!c_.empty()) c_[0] /= o.c_[0];
        return *this;
    }
    return *this *= o.inv();
}

Scalar Scalar::pow(long e) const {
    Scalar base = e < 0 ? inv() : *this;
    unsigned long n = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    Scalar r(1);
    while (n) {
        if (n & 1) r *= base;
        base *= base;
        n >>= 1;
    }
    return r;
}

std::string Scalar::str() const {
    if (!f_) return rational_str(c_.empty() ? Rational(0) : c_[0]);
    std::string s = "[";
    for (int i = 0; i < f_->degree(); ++i) {
        if (i) s += ", ";
        s += rational_str(coeff(i));
    }
    return s + "]";
}

Scalar Scalar::parse(const std::string& raw, const FieldPtr& f) {
    std::size_t b = raw.find_first_not_of(" \t");
    if (b == std::string::npos) throw FieldError("empty scalar literal");
    if (raw[b] != '[') {
        Scalar r(parse_rational(raw));
        if (f && !f->is_rationals()) r.f_ = f;
        return r;
    }
    auto e = raw.find(']', b);
    if (e == std::string::npos) throw FieldError("unterminated coefficient list '" + raw + "'");
    if (raw.find_first_not_of(" \t", e + 1) != std::string::npos) throw FieldError("trailing text after ']' in '" + raw + "'");
    Poly c;
    std::string body = raw.substr(b + 1, e - b - 1);
    std::size_t start = 0;
    if (body.find_first_not_of(" \t") != std::string::npos) {
        while (true) {
            auto comma = body.find(',', start);
            c.push_back(parse_rational(body.substr(start, comma - start)));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
    }
    if (!f || f->is_rationals()) {
        Poly t = c;
        poly::trim(t);
        if (t.size() > 1) throw FieldError("coefficient list '" + raw + "' needs a number field");
        return Scalar(nullptr, t);
    }
    if (static_cast<int>(c.size()) > f->degree())
        throw FieldError("coefficient list '" + raw + "' longer than the field degree");
    return Scalar(f, c);
}

bool equal_up_to_sign(const Scalar& a, const Scalar& b) { return a == b || a == -b; }

}  // namespace crx
