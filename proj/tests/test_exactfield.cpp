#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "crx/exactfield.hpp"

#include <random>

using namespace crx;

namespace {

// Oracles over plain mpq_class, sharing nothing with the library.
using Q = mpq_class;
using QMat = std::vector<std::vector<Q>>;

Q cofactor_det(const QMat& m) {
    std::size_t n = m.size();
    if (n == 0) return 1;
    if (n == 1) return m[0][0];
    Q s = 0;
    for (std::size_t j = 0; j < n; ++j) {
        QMat minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<Q> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(m[i][k]);
            minor.push_back(row);
        }
        Q term = m[0][j] * cofactor_det(minor);
        s += (j % 2) ? Q(-term) : term;
    }
    return s;
}

std::size_t oracle_rank(QMat m) {
    std::size_t r = 0, rows = m.size(), cols = rows ? m[0].size() : 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Q f = m[i][c] / m[r][c];
            for (std::size_t k = c; k < cols; ++k) m[i][k] -= f * m[r][k];
        }
        ++r;
    }
    return r;
}

// Extended Euclid on Q[x]: returns s with s*a = 1 mod m.
using QPoly = std::vector<Q>;
void strip(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}
QPoly psub(QPoly a, const QPoly& b) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    strip(a);
    return a;
}
QPoly pmul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    strip(r);
    return r;
}
std::pair<QPoly, QPoly> pdiv(QPoly a, const QPoly& b) {
    QPoly q;
    if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, 0);
    while (!a.empty() && a.size() >= b.size()) {
        Q c = a.back() / b.back();
        std::size_t s = a.size() - b.size();
        q[s] = c;
        for (std::size_t i = 0; i < b.size(); ++i) a[s + i] -= c * b[i];
        strip(a);
    }
    strip(q);
    return {q, a};
}
QPoly euclid_inverse(const QPoly& a, const QPoly& m) {
    QPoly r0 = m, r1 = a, s0 = {}, s1 = {1};
    while (!(r1.size() == 1)) {
        auto [q, r] = pdiv(r0, r1);
        QPoly s = psub(s0, pmul(q, s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    for (auto& c : s1) c /= r1[0];
    return pdiv(s1, m).second;
}

Scalar rnd(std::mt19937_64& rng, const FieldPtr& f = nullptr) {
    std::uniform_int_distribution<long> num(-30, 30), den(1, 12);
    if (!f) return Scalar(Rational(num(rng), den(rng)));
    Poly c;
    for (int i = 0; i < f->degree(); ++i) {
        Rational q(num(rng), den(rng));
        q.canonicalize();
        c.push_back(q);
    }
    return Scalar(f, c);
}

Matrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int zero_every = 0) {
    Matrix m(r, c);
    for (auto& x : m.a) x = (zero_every && rng() % zero_every == 0) ? Scalar(0) : rnd(rng);
    return m;
}

QMat to_q(const Matrix& m) {
    QMat q(m.rows, std::vector<Q>(m.cols));
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) q[i][j] = m.at(i, j).as_rational();
    return q;
}

FieldPtr heptagonal() { return Field::number_field({Rational(-1), Rational(-2), Rational(1), Rational(1)}); }

}  // namespace

TEST_CASE("rational arithmetic and serialization") {
    Scalar a = Scalar::parse("2/3"), b = Scalar::parse("1/6");
    CHECK((a + b) == Scalar::parse("5/6"));
    CHECK((a + b).str() == "5/6");
    CHECK(Scalar::parse("-4/6").str() == "-2/3");
    CHECK(Scalar::parse("7").str() == "7/1");
    CHECK_THROWS_AS(Scalar(0).inv(), FieldError);
    CHECK_FALSE(Scalar(0).try_inv().has_value());
    CHECK_THROWS(Scalar::parse("1/0"));
    CHECK_THROWS(Scalar::parse("abc"));
}

TEST_CASE("gaussian rationals: x*x = -1") {
    auto f = Field::number_field({Rational(1), Rational(0), Rational(1)});
    Scalar x = Scalar::generator(f);
    CHECK(x * x == Scalar(-1));
    CHECK(Scalar::parse("[0, 1]", f) == x);
    CHECK((x + Scalar(1)).str() == "[1/1, 1/1]");
}

TEST_CASE("reducible moduli are rejected up to degree 3") {
    CHECK_THROWS_AS(Field::number_field({Rational(-1), Rational(0), Rational(1)}), FieldError);
    CHECK_THROWS_AS(Field::number_field({Rational(2), Rational(-3), Rational(1)}), FieldError);
    auto f = Field::number_field({Rational(1), Rational(0), Rational(0), Rational(0), Rational(1)}, true);
    CHECK(f->asserted());
    CHECK_FALSE(f->verified());
}

TEST_CASE("inverse in Q[x]/(x^3+x^2-2x-1) agrees with extended Euclid") {
    auto f = heptagonal();
    Scalar x = Scalar::generator(f);
    CHECK(x * x.inv() == Scalar(1));
    std::mt19937_64 rng(7);
    QPoly m{-1, -2, 1, 1};
    for (int t = 0; t < 20; ++t) {
        Scalar a = rnd(rng, f);
        if (a.is_zero()) continue;
        QPoly ap;
        for (int i = 0; i < 3; ++i) ap.push_back(a.coeff(i));
        strip(ap);
        QPoly s = euclid_inverse(ap, m);
        Scalar inv = a.inv();
        for (int i = 0; i < 3; ++i) CHECK(inv.coeff(i) == (i < static_cast<int>(s.size()) ? s[i] : Q(0)));
    }
}

TEST_CASE("field axioms on random triples") {
    std::mt19937_64 rng(11);
    for (FieldPtr f : {FieldPtr(), heptagonal()}) {
        for (int t = 0; t < 50; ++t) {
            Scalar a = rnd(rng, f), b = rnd(rng, f), c = rnd(rng, f);
            CHECK((a + b) + c == a + (b + c));
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a * b == b * a);
            CHECK(a - a == Scalar(0));
            if (!a.is_zero()) CHECK(a * a.inv() == Scalar(1));
            if (!b.is_zero()) CHECK((a / b) * b == a);
            CHECK(Scalar::parse(a.str(), f) == a);
        }
    }
}

TEST_CASE("jets: product rule and log derivative") {
    Jet a(Scalar(3), "e");
    Jet sq = a * a;
    CHECK(sq.value() == Scalar(9));
    CHECK(sq.partial("e") == Scalar(6));
    Jet v(Scalar(2), "e", Scalar(5));
    CHECK(v.dlog("e") == Scalar(Rational(5, 2)));
    CHECK_THROWS(Jet(0).dlog("e"));
    CHECK_THROWS((Jet(1) / Jet(0)));
    Jet b(Scalar(5), "f", Scalar(2));
    Jet p = a * b;
    CHECK(p.partial("e") == Scalar(5));
    CHECK(p.partial("f") == Scalar(6));
    Jet q = a / b;
    CHECK(q.partial("f") == Scalar(-6) / Scalar(25));
}

TEST_CASE("jet partials of the cross-ratio match symbolic derivatives") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 30; ++t) {
        Scalar z[4];
        for (auto& x : z) x = rnd(rng);
        bool distinct = true;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) distinct = distinct && z[i] != z[j];
        if (!distinct) continue;
        Jet j[4];
        for (int i = 0; i < 4; ++i) j[i] = Jet(z[i], "z" + std::to_string(i));
        Jet x = (j[0] - j[1]) * (j[2] - j[3]) / ((j[0] - j[3]) * (j[2] - j[1]));
        Scalar xv = x.value();
        // d ln x / dz_i from ln x = ln(z0-z1) + ln(z2-z3) - ln(z0-z3) - ln(z2-z1)
        Scalar d0 = (z[0] - z[1]).inv() - (z[0] - z[3]).inv();
        Scalar d1 = -(z[0] - z[1]).inv() + (z[2] - z[1]).inv();
        Scalar d2 = (z[2] - z[3]).inv() - (z[2] - z[1]).inv();
        Scalar d3 = -(z[2] - z[3]).inv() + (z[0] - z[3]).inv();
        CHECK(x.partial("z0") == xv * d0);
        CHECK(x.partial("z1") == xv * d1);
        CHECK(x.partial("z2") == xv * d2);
        CHECK(x.partial("z3") == xv * d3);
    }
}

TEST_CASE("determinant examples") {
    Matrix id(4, 4);
    for (int i = 0; i < 4; ++i) id.at(i, i) = Scalar(1);
    CHECK(det(id) == Scalar(1));
    std::mt19937_64 rng(2);
    Matrix m = random_matrix(rng, 4, 4);
    for (int j = 0; j < 4; ++j) m.at(3, j) = m.at(1, j);
    CHECK(det(m).is_zero());
    CHECK_THROWS(det(Matrix(2, 3)));
}

TEST_CASE("determinant agrees with cofactor expansion") {
    std::mt19937_64 rng(3);
    for (std::size_t n = 1; n <= 6; ++n)
        for (int t = 0; t < 4; ++t) {
            Matrix m = random_matrix(rng, n, n, t % 2 ? 3 : 0);
            CHECK(det(m).as_rational() == cofactor_det(to_q(m)));
        }
}

TEST_CASE("determinant is multiplicative") {
    std::mt19937_64 rng(4);
    for (std::size_t n = 1; n <= 6; ++n) {
        Matrix a = random_matrix(rng, n, n), b = random_matrix(rng, n, n);
        CHECK(det(a * b) == det(a) * det(b));
    }
    auto f = heptagonal();
    Matrix a(3, 3), b(3, 3);
    for (auto& x : a.a) x = rnd(rng, f);
    for (auto& x : b.a) x = rnd(rng, f);
    CHECK(det(a * b) == det(a) * det(b));
}

TEST_CASE("rank and pivots") {
    Matrix z(3, 4);
    auto r0 = rank_and_pivots(z);
    CHECK(r0.rank == 0);
    CHECK(r0.pivot_rows.empty());
    CHECK(r0.pivot_cols.empty());
    Matrix id(3, 3);
    for (int i = 0; i < 3; ++i) id.at(i, i) = Scalar(1);
    auto r1 = rank_and_pivots(id);
    CHECK(r1.rank == 3);
    CHECK(r1.pivot_rows == std::vector<std::size_t>{0, 1, 2});
    CHECK(r1.pivot_cols == std::vector<std::size_t>{0, 1, 2});

    std::mt19937_64 rng(9);
    for (int t = 0; t < 30; ++t) {
        std::size_t r = 1 + rng() % 6, c = 1 + rng() % 6;
        // low rank by construction: product of thin factors
        std::size_t k = 1 + rng() % 4;
        Matrix m = random_matrix(rng, r, k, 4) * random_matrix(rng, k, c, 4);
        auto info = rank_and_pivots(m);
        CHECK(info.rank == oracle_rank(to_q(m)));
        CHECK(info.pivot_rows.size() == info.rank);
        CHECK(info.pivot_cols.size() == info.rank);
        if (info.rank) CHECK_FALSE(det(m.submatrix(info.pivot_rows, info.pivot_cols)).is_zero());
        for (std::size_t j = 0; j < c; ++j) {
            auto cols = info.pivot_cols;
            if (std::find(cols.begin(), cols.end(), j) != cols.end()) continue;
            cols.push_back(j);
            std::vector<std::size_t> rows(r);
            for (std::size_t i = 0; i < r; ++i) rows[i] = i;
            CHECK(rank_and_pivots(m.submatrix(rows, cols)).rank == info.rank);
        }
    }
}

TEST_CASE("nullspace vectors are annihilated") {
    std::mt19937_64 rng(10);
    for (int t = 0; t < 10; ++t) {
        Matrix m = random_matrix(rng, 3, 2) * random_matrix(rng, 2, 5);
        auto ns = nullspace(m);
        CHECK(ns.size() == 5 - rank_and_pivots(m).rank);
        for (auto& v : ns)
            for (std::size_t i = 0; i < m.rows; ++i) {
                Scalar s;
                for (std::size_t j = 0; j < m.cols; ++j) s += m.at(i, j) * v[j];
                CHECK(s.is_zero());
            }
    }
}

TEST_CASE("duplicate labels are rejected") {
    Matrix m(2, 2);
    m.row_labels = {"a", "a"};
    m.col_labels = {"x", "y"};
    CHECK_THROWS(m.check_labels());
}
