#ifndef CFSPHERE_LINALG_HPP
#define CFSPHERE_LINALG_HPP

#include <array>

#include "cfsphere/dual.hpp"

// Fixed-size linear algebra over an arbitrary differentiation scalar.
// Eigen handles the double-precision eigen/SVD work elsewhere; these tiny
// types exist so the whole coframe pipeline can be instantiated on nested
// Dual scalars.

namespace cfs {

template <class T>
struct V3 {
    T x{}, y{}, z{};

    friend V3 operator+(const V3& a, const V3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend V3 operator-(const V3& a, const V3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend V3 operator-(const V3& a) { return {-a.x, -a.y, -a.z}; }
    friend V3 operator*(const T& c, const V3& a) { return {c * a.x, c * a.y, c * a.z}; }
    friend V3 operator*(const V3& a, const T& c) { return {c * a.x, c * a.y, c * a.z}; }
    friend V3 operator/(const V3& a, const T& c) { return {a.x / c, a.y / c, a.z / c}; }

    T& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
    const T& operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
};

template <class T>
T dot(const V3<T>& a, const V3<T>& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

template <class T>
V3<T> cross(const V3<T>& a, const V3<T>& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

template <class T>
T norm(const V3<T>& a) { return sqrt(dot(a, a)); }

template <class T>
T det3(const V3<T>& a, const V3<T>& b, const V3<T>& c) { return dot(a, cross(b, c)); }

using Vec3 = V3<double>;

// Covector on a 3-manifold chart, components on (dx1, dx2, dtheta).
template <class T>
using Cov3 = V3<T>;

// 2-form on a 3-manifold chart: components (c12, c13, c23) on
// dx1^dx2, dx1^dtheta, dx2^dtheta.
template <class T>
struct Form2 {
    T c12{}, c13{}, c23{};

    friend Form2 operator+(const Form2& a, const Form2& b) {
        return {a.c12 + b.c12, a.c13 + b.c13, a.c23 + b.c23};
    }
    friend Form2 operator-(const Form2& a, const Form2& b) {
        return {a.c12 - b.c12, a.c13 - b.c13, a.c23 - b.c23};
    }
    friend Form2 operator*(const T& c, const Form2& a) { return {c * a.c12, c * a.c13, c * a.c23}; }

    T operator()(const V3<T>& u, const V3<T>& v) const {
        return c12 * (u.x * v.y - u.y * v.x) + c13 * (u.x * v.z - u.z * v.x) +
               c23 * (u.y * v.z - u.z * v.y);
    }
};

template <class T>
Form2<T> wedge(const Cov3<T>& a, const Cov3<T>& b) {
    return {a.x * b.y - a.y * b.x, a.x * b.z - a.z * b.x, a.y * b.z - a.z * b.y};
}

// Interior product (i_Y f)(v) = f(Y, v).
template <class T>
Cov3<T> contract(const Form2<T>& f, const V3<T>& y) {
    return {-f.c12 * y.y - f.c13 * y.z, f.c12 * y.x - f.c23 * y.z, f.c13 * y.x + f.c23 * y.y};
}

// Coefficient of dx1^dx2^dtheta in alpha^omega for a covector and a 2-form.
template <class T>
T wedge_cov_form(const Cov3<T>& a, const Form2<T>& f) {
    return a.x * f.c23 - a.y * f.c13 + a.z * f.c12;
}

// Coefficient of dx1^dx2^dtheta in a^b^c.
template <class T>
T wedge3(const Cov3<T>& a, const Cov3<T>& b, const Cov3<T>& c) { return det3(a, b, c); }

// Kernel direction of a 2-form seen as an antisymmetric matrix: f(k, .) = 0.
template <class T>
V3<T> form_kernel(const Form2<T>& f) { return {f.c23, -f.c13, f.c12}; }

// Solve M u = rhs for a 3x3 system given as rows (Cramer).
template <class T>
V3<T> solve3(const Cov3<T>& r0, const Cov3<T>& r1, const Cov3<T>& r2, const V3<T>& rhs) {
    T d = det3(r0, r1, r2);
    V3<T> c0{r0.x, r1.x, r2.x}, c1{r0.y, r1.y, r2.y}, c2{r0.z, r1.z, r2.z};
    return {det3(rhs, c1, c2) / d, det3(c0, rhs, c2) / d, det3(c0, c1, rhs) / d};
}

// 3x3 matrix over T, row-major.
template <class T>
struct M3 {
    std::array<T, 9> a{};

    T& operator()(int i, int j) { return a[3 * i + j]; }
    const T& operator()(int i, int j) const { return a[3 * i + j]; }

    static M3 identity() {
        M3 m;
        m(0, 0) = 1.0; m(1, 1) = 1.0; m(2, 2) = 1.0;
        return m;
    }

    friend M3 operator*(const M3& x, const M3& y) {
        M3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                T s{};
                for (int k = 0; k < 3; ++k) s += x(i, k) * y(k, j);
                r(i, j) = s;
            }
        return r;
    }
    friend M3 operator+(const M3& x, const M3& y) {
        M3 r;
        for (int i = 0; i < 9; ++i) r.a[i] = x.a[i] + y.a[i];
        return r;
    }
    friend M3 operator*(const T& c, const M3& x) {
        M3 r;
        for (int i = 0; i < 9; ++i) r.a[i] = c * x.a[i];
        return r;
    }

    V3<T> col(int j) const { return {a[j], a[3 + j], a[6 + j]}; }
    V3<T> row(int i) const { return {a[3 * i], a[3 * i + 1], a[3 * i + 2]}; }

    friend V3<T> operator*(const M3& m, const V3<T>& v) {
        return {dot(m.row(0), v), dot(m.row(1), v), dot(m.row(2), v)};
    }
};

template <class T>
T det(const M3<T>& m) { return det3(m.row(0), m.row(1), m.row(2)); }

template <class T>
M3<T> transpose(const M3<T>& m) {
    M3<T> r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r(i, j) = m(j, i);
    return r;
}

template <class T>
M3<T> inverse(const M3<T>& m) {
    T d = det(m);
    M3<T> r;
    V3<T> c01 = cross(m.row(1), m.row(2));
    V3<T> c12 = cross(m.row(2), m.row(0));
    V3<T> c20 = cross(m.row(0), m.row(1));
    for (int j = 0; j < 3; ++j) {
        r(j, 0) = c01[j] / d;
        r(j, 1) = c12[j] / d;
        r(j, 2) = c20[j] / d;
    }
    return r;
}

using Mat3 = M3<double>;

}  // namespace cfs

#endif
