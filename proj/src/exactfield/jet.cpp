#include "crx/exactfield.hpp"

#include <algorithm>

namespace crx {

Jet::Jet(const Scalar& v, const std::string& tag, const Scalar& d) : v_(v) {
    if (!d.is_zero()) p_.emplace_back(tag, d);
}

Jet::Jet(const Scalar& v, Partials p) : v_(v), p_(std::move(p)) {
    std::sort(p_.begin(), p_.end(), [](auto& x, auto& y) { return x.first < y.first; });
    Partials merged;
    for (auto& [t, d] : p_) {
        if (!merged.empty() && merged.back().first == t)
            merged.back().second += d;
        else
            merged.emplace_back(t, d);
    }
    std::erase_if(merged, [](auto& e) { return e.second.is_zero(); });
    p_ = std::move(merged);
}

Scalar Jet::partial(const std::string& tag) const {
    auto it = std::lower_bound(p_.begin(), p_.end(), tag, [](auto& e, const std::string& t) { return e.first < t; });
    if (it != p_.end() && it->first == tag) return it->second;
    return Scalar();
}

Scalar Jet::dlog(const std::string& tag) const {
    if (v_.is_zero()) throw FieldError("logarithmic derivative of a zero value");
    return partial(tag) / v_;
}

// sa*a + sb*b, merged by tag.
Jet::Partials Jet::combine(const Partials& a, const Scalar& sa, const Partials& b, const Scalar& sb) {
    Partials r;
    r.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            Scalar v = sa * a[i].second;
            if (!v.is_zero()) r.emplace_back(a[i].first, std::move(v));
            ++i;
        } else if (i == a.size() || b[j].first < a[i].first) {
            Scalar v = sb * b[j].second;
            if (!v.is_zero()) r.emplace_back(b[j].first, std::move(v));
            ++j;
        } else {
            Scalar v = sa * a[i].second + sb * b[j].second;
            if (!v.is_zero()) r.emplace_back(a[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    return r;
}

Jet Jet::operator-() const {
    Jet r = *this;
    r.v_ = -r.v_;
    for (auto& e : r.p_) e.second = -e.second;
    return r;
}

Jet& Jet::operator+=(const Jet& o) {
    p_ = combine(p_, Scalar(1), o.p_, Scalar(1));
    v_ += o.v_;
    return *this;
}

Jet& Jet::operator-=(const Jet& o) {
    p_ = combine(p_, Scalar(1), o.p_, Scalar(-1));
    v_ -= o.v_;
    return *this;
}

Jet& Jet::operator*=(const Jet& o) {
    p_ = combine(p_, o.v_, o.p_, v_);
    v_ *= o.v_;
    return *this;
}

Jet Jet::inv() const {
    if (v_.is_zero()) throw FieldError("jet division by a zero value: non-generic configuration");
    Scalar iv = v_.inv();
    Scalar s = -(iv * iv);
    Jet r;
    r.v_ = iv;
    r.p_ = combine(p_, s, {}, Scalar());
    return r;
}

Jet& Jet::operator/=(const Jet& o) { return *this *= o.inv(); }

}  // namespace crx
