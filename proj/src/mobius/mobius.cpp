#include "crx/mobius.hpp"

namespace crx {

bool psl_equal(const MobiusElement& g, const MobiusElement& h) {
    bool same = g.a == h.a && g.b == h.b && g.c == h.c && g.d == h.d;
    bool neg = g.a == -h.a && g.b == -h.b && g.c == -h.c && g.d == -h.d;
    return same || neg;
}

MobiusElement power(const MobiusElement& g, long k) {
    MobiusElement base = k < 0 ? g.inverse() : g;
    unsigned long n = k < 0 ? static_cast<unsigned long>(-k) : static_cast<unsigned long>(k);
    MobiusElement r = MobiusElement::identity();
    while (n) {
        if (n & 1) r = r * base;
        base = base * base;
        n >>= 1;
    }
    return r;
}

SO3Matrix sym_square(const MobiusElement& g) {
    Scalar s = g.det().inv();
    const Scalar &a = g.a, &b = g.b, &c = g.c, &d = g.d;
    SO3Matrix t{{{a * a, Scalar(2) * a * b, b * b}, {a * c, a * d + b * c, b * d}, {c * c, Scalar(2) * c * d, d * d}}};
    for (auto& row : t)
        for (auto& x : row) x *= s;
    return t;
}

SO3Matrix so3_mul(const SO3Matrix& x, const SO3Matrix& y) {
    SO3Matrix r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) r[i][j] += x[i][k] * y[k][j];
    return r;
}

SO3Matrix form_q() { return {{{0, 0, -1}, {0, 2, 0}, {-1, 0, 0}}}; }

std::array<Scalar, 3> isotropic(const VertexCoords<Scalar>& v) { return {v.h * v.z * v.z, v.h * v.z, v.h}; }

Scalar bilinear(const std::array<Scalar, 3>& u, const std::array<Scalar, 3>& v) {
    SO3Matrix q = form_q();
    Scalar s;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (!q[i][j].is_zero()) s += u[i] * q[i][j] * v[j];
    return s;
}

CrossRatios cross_ratio(const Scalar& z0, const Scalar& z1, const Scalar& z2, const Scalar& z3) {
    Scalar x = cross_ratio_value(z0, z1, z2, z3);
    if (x == Scalar(1)) throw GenericityError("degenerate tetrahedron: cross-ratio equals 1");
    return {x, Scalar(1) - x.inv(), (Scalar(1) - x).inv()};
}

Scalar discrepancy(const std::array<Scalar, 6>& L) {
    Matrix m(4, 4);
    int k = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            m.at(i, j) = L[k];
            m.at(j, i) = L[k];
            ++k;
        }
    return det(m);
}

Scalar deficit_angle(const std::vector<Scalar>& xs) {
    Scalar p(1);
    for (auto& x : xs) p *= x;
    return p;
}

}  // namespace crx
