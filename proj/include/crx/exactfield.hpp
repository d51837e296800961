#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace crx {

using Rational = mpq_class;

struct FieldError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Dense polynomial over Q, low degree first, no trailing zeros.
using Poly = std::vector<Rational>;

namespace poly {
void trim(Poly& p);
int degree(const Poly& p);  // -1 for the zero polynomial
Poly add(const Poly& a, const Poly& b);
Poly sub(const Poly& a, const Poly& b);
Poly mul(const Poly& a, const Poly& b);
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
bool has_rational_root(const Poly& p);
}  // namespace poly

// Either Q or Q[x]/(m) with m monic.
class Field {
public:
    static std::shared_ptr<const Field> rationals();
    // Degree <= 3 moduli are checked by the rational root test. Higher degrees
    // are only accepted with assume_irreducible, which is recorded.
    static std::shared_ptr<const Field> number_field(Poly monic, bool assume_irreducible = false);

    bool is_rationals() const { return modulus_.empty(); }
    int degree() const { return modulus_.empty() ? 1 : static_cast<int>(modulus_.size()) - 1; }
    const Poly& modulus() const { return modulus_; }
    bool verified() const { return verified_; }
    bool asserted() const { return asserted_; }
    bool same(const Field& o) const { return modulus_ == o.modulus_; }
    std::string to_string() const;

private:
    Poly modulus_;
    bool verified_ = true;
    bool asserted_ = false;
};

using FieldPtr = std::shared_ptr<const Field>;

// Element of Q or of a number field. A null field means Q; rationals mix
// freely with elements of any number field.
class Scalar {
public:
    Scalar() = default;
    Scalar(long v) : c_{Rational(v)} { poly::trim(c_); }
    Scalar(const Rational& q) : c_{q} {
        c_[0].canonicalize();
        poly::trim(c_);
    }
    Scalar(FieldPtr f, Poly coeffs);
    static Scalar generator(const FieldPtr& f);

    const FieldPtr& field() const { return f_; }
    const Poly& coeffs() const { return c_; }
    Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
    bool is_zero() const { return c_.empty(); }
    bool is_rational() const { return c_.size() <= 1; }
    Rational as_rational() const;

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);
    Scalar inv() const;
    std::optional<Scalar> try_inv() const;
    Scalar pow(long e) const;

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    friend bool operator==(const Scalar& a, const Scalar& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    // "p/q" for rationals, "[c0, c1, ...]" inside a number field.
    std::string str() const;
    // Accepts "p/q", "p", or a bracketed coefficient list.
    static Scalar parse(const std::string& s, const FieldPtr& f = nullptr);

private:
    FieldPtr f_;
    Poly c_;

    void adopt(const Scalar& o);
};

std::string rational_str(const Rational& q);
Rational parse_rational(const std::string& s);

bool equal_up_to_sign(const Scalar& a, const Scalar& b);

// First-order jet: value plus sparse partials keyed by tag.
class Jet {
public:
    using Partials = std::vector<std::pair<std::string, Scalar>>;

    Jet() = default;
    Jet(long v) : v_(v) {}
    Jet(const Scalar& v) : v_(v) {}
    Jet(const Scalar& v, const std::string& tag, const Scalar& d = Scalar(1));
    Jet(const Scalar& v, Partials p);

    const Scalar& value() const { return v_; }
    const Partials& partials() const { return p_; }
    Scalar partial(const std::string& tag) const;
    // d ln(this) along tag.
    Scalar dlog(const std::string& tag) const;

    Jet operator-() const;
    Jet& operator+=(const Jet& o);
    Jet& operator-=(const Jet& o);
    Jet& operator*=(const Jet& o);
    Jet& operator/=(const Jet& o);
    Jet inv() const;

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator*(Jet a, const Jet& b) { return a *= b; }
    friend Jet operator/(Jet a, const Jet& b) { return a /= b; }
    friend bool operator==(const Jet& a, const Jet& b) { return a.v_ == b.v_ && a.p_ == b.p_; }

private:
    Scalar v_;
    Partials p_;

    static Partials combine(const Partials& a, const Scalar& sa, const Partials& b, const Scalar& sb);
};

inline const Scalar& value_of(const Scalar& s) { return s; }
inline const Scalar& value_of(const Jet& j) { return j.value(); }

struct Matrix {
    std::size_t rows = 0, cols = 0;
    std::vector<Scalar> a;
    std::vector<std::string> row_labels, col_labels;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}
    static Matrix from_rows(const std::vector<std::vector<Scalar>>& rs);

    Scalar& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const Scalar& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    Matrix transpose() const;
    Matrix submatrix(const std::vector<std::size_t>& r, const std::vector<std::size_t>& c) const;
    bool is_zero() const;
    // Row and column labels are checked for uniqueness.
    void check_labels() const;
};

Matrix operator*(const Matrix& x, const Matrix& y);

Scalar det(const Matrix& m);

struct RankInfo {
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_rows;
    std::vector<std::size_t> pivot_cols;
};

// Rows are scanned in index order, so callers control preference by permuting.
RankInfo rank_and_pivots(const Matrix& m);

// Basis of {v : m v = 0}, one vector per free column, in reduced echelon form.
std::vector<std::vector<Scalar>> nullspace(const Matrix& m);

}  // namespace crx
