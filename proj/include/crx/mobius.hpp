#pragma once

#include "crx/exactfield.hpp"

#include <array>
#include <stdexcept>
#include <string>

namespace crx {

struct GenericityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// 2x2 matrix acting by z -> (az+b)/(cz+d); entries are Scalar or Jet.
template <class T>
struct Mobius {
    T a{1}, b{0}, c{0}, d{1};

    static Mobius identity() { return {T(1), T(0), T(0), T(1)}; }
    T det() const { return a * d - b * c; }
    Mobius inverse() const { return {d, -b, -c, a}; }
    Mobius operator*(const Mobius& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
};

using MobiusElement = Mobius<Scalar>;

bool psl_equal(const MobiusElement& g, const MobiusElement& h);
MobiusElement power(const MobiusElement& g, long k);

template <class T>
struct VertexCoords {
    T z, h;
};

// h transforms with (cz+d)^2/det: the induced action on (h z^2, h z, h),
// which is also independent of rescaling the matrix.
template <class T>
VertexCoords<T> mobius_apply(const Mobius<T>& g, const VertexCoords<T>& v, const std::string& what = "vertex") {
    T den = g.c * v.z + g.d;
    if (value_of(den).is_zero()) throw GenericityError("non-generic configuration: " + what + " sent to infinity");
    T dt = g.det();
    if (value_of(dt).is_zero()) throw GenericityError("singular Mobius matrix");
    return {(g.a * v.z + g.b) / den, v.h * den * den / dt};
}

template <class T>
T mobius_z(const Mobius<T>& g, const T& z, const std::string& what = "vertex") {
    T den = g.c * z + g.d;
    if (value_of(den).is_zero()) throw GenericityError("non-generic configuration: " + what + " sent to infinity");
    return (g.a * z + g.b) / den;
}

using SO3Matrix = std::array<std::array<Scalar, 3>, 3>;

// Action on isotropic vectors (h z^2, h z, h).
SO3Matrix sym_square(const MobiusElement& g);
SO3Matrix so3_mul(const SO3Matrix& x, const SO3Matrix& y);
// The form Q with e.e = 0 for e = (h z^2, h z, h).
SO3Matrix form_q();
std::array<Scalar, 3> isotropic(const VertexCoords<Scalar>& v);
Scalar bilinear(const std::array<Scalar, 3>& u, const std::array<Scalar, 3>& v);

struct CrossRatios {
    Scalar x, x1, x2;  // x, x' = 1 - 1/x, x'' = 1/(1-x)
};

template <class T>
T cross_ratio_value(const T& z0, const T& z1, const T& z2, const T& z3) {
    T num = (z0 - z1) * (z2 - z3), den = (z0 - z3) * (z2 - z1);
    if (value_of(num).is_zero() || value_of(den).is_zero()) throw GenericityError("degenerate tetrahedron: coincident points");
    return num / den;
}

CrossRatios cross_ratio(const Scalar& z0, const Scalar& z1, const Scalar& z2, const Scalar& z3);

template <class T>
T squared_length(const VertexCoords<T>& u, const VertexCoords<T>& v) {
    T dz = u.z - v.z;
    return T(2) * u.h * v.h * dz * dz;
}

// phi* = h_u h_v (z_u - z_v)^2 / (2 kappa_u kappa_v (zeta_u - zeta_v)^2).
template <class T>
T normalized_length(const VertexCoords<T>& u, const VertexCoords<T>& v, const Scalar& zu, const Scalar& zv,
                    const Scalar& ku, const Scalar& kv) {
    Scalar den = Scalar(2) * ku * kv * (zu - zv) * (zu - zv);
    if (den.is_zero()) throw GenericityError("normalized length with coincident base points");
    T dz = u.z - v.z;
    return u.h * v.h * dz * dz / T(den);
}

// Cayley-Menger style determinant; L indexed 01,02,03,12,13,23.
Scalar discrepancy(const std::array<Scalar, 6>& L);

Scalar deficit_angle(const std::vector<Scalar>& xs);

}  // namespace crx
