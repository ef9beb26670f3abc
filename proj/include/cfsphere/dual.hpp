#ifndef CFSPHERE_DUAL_HPP
#define CFSPHERE_DUAL_HPP

#include <cmath>
#include <type_traits>

// Forward-mode differentiation scalars.  Dual<double> carries one tangent;
// nesting (Dual<Dual<double>> and deeper) yields exact higher derivatives of
// any composition of the arithmetic below.  Branch decisions always inspect
// the underlying value via val().

namespace cfs {

template <class T>
struct Dual {
    T v{};  // value
    T d{};  // tangent

    Dual() = default;
    Dual(double c) : v(c), d() {}
    Dual(const T& v_, const T& d_) : v(v_), d(d_) {}

    Dual& operator+=(const Dual& o) { v += o.v; d += o.d; return *this; }
    Dual& operator-=(const Dual& o) { v -= o.v; d -= o.d; return *this; }

    friend Dual operator+(const Dual& a, const Dual& b) { return {a.v + b.v, a.d + b.d}; }
    friend Dual operator-(const Dual& a, const Dual& b) { return {a.v - b.v, a.d - b.d}; }
    friend Dual operator-(const Dual& a) { return {-a.v, -a.d}; }
    friend Dual operator*(const Dual& a, const Dual& b) {
        return {a.v * b.v, a.v * b.d + a.d * b.v};
    }
    friend Dual operator/(const Dual& a, const Dual& b) {
        T q = a.v / b.v;
        return {q, (a.d - q * b.d) / b.v};
    }

    friend bool operator<(const Dual& a, const Dual& b) { return val_of(a.v) < val_of(b.v); }
    friend bool operator>(const Dual& a, const Dual& b) { return val_of(a.v) > val_of(b.v); }
    friend bool operator==(const Dual& a, const Dual& b) { return val_of(a.v) == val_of(b.v); }

    static double val_of(double x) { return x; }
    template <class U>
    static double val_of(const Dual<U>& x) { return val_of(x.v); }
};

inline double val(double x) { return x; }
template <class T>
double val(const Dual<T>& x) { return val(x.v); }

inline double sqrt(double x) { return std::sqrt(x); }
inline double sin(double x) { return std::sin(x); }
inline double cos(double x) { return std::cos(x); }
inline double exp(double x) { return std::exp(x); }
inline double atan2(double y, double x) { return std::atan2(y, x); }
inline double abs(double x) { return std::fabs(x); }

template <class T>
Dual<T> sqrt(const Dual<T>& a) {
    T s = sqrt(a.v);
    return {s, a.d / (s + s)};
}
template <class T>
Dual<T> sin(const Dual<T>& a) { return {sin(a.v), cos(a.v) * a.d}; }
template <class T>
Dual<T> cos(const Dual<T>& a) { return {cos(a.v), T() - sin(a.v) * a.d}; }
template <class T>
Dual<T> exp(const Dual<T>& a) { T e = exp(a.v); return {e, e * a.d}; }
template <class T>
Dual<T> atan2(const Dual<T>& y, const Dual<T>& x) {
    T den = x.v * x.v + y.v * y.v;
    return {atan2(y.v, x.v), (x.v * y.d - y.v * x.d) / den};
}
template <class T>
Dual<T> abs(const Dual<T>& a) { return val(a) < 0.0 ? Dual<T>{T() - a.v, T() - a.d} : a; }

// Complex numbers over any of the scalars above.  std::complex is only
// specified for the builtin floating types, hence this small stand-in.
template <class T>
struct Cplx {
    T re{};
    T im{};

    Cplx() = default;
    Cplx(const T& r) : re(r), im() {}
    Cplx(const T& r, const T& i) : re(r), im(i) {}

    friend Cplx operator+(const Cplx& a, const Cplx& b) { return {a.re + b.re, a.im + b.im}; }
    friend Cplx operator-(const Cplx& a, const Cplx& b) { return {a.re - b.re, a.im - b.im}; }
    friend Cplx operator-(const Cplx& a) { return {-a.re, -a.im}; }
    friend Cplx operator*(const Cplx& a, const Cplx& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Cplx operator/(const Cplx& a, const Cplx& b) {
        T den = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
    }
    Cplx& operator+=(const Cplx& o) { re += o.re; im += o.im; return *this; }
    Cplx& operator*=(const Cplx& o) { *this = *this * o; return *this; }
};

template <class T>
Cplx<T> conj(const Cplx<T>& z) { return {z.re, -z.im}; }
template <class T>
T abs2(const Cplx<T>& z) { return z.re * z.re + z.im * z.im; }
template <class T>
T cabs(const Cplx<T>& z) { return sqrt(abs2(z)); }

// Principal square root, cut on the negative real axis, sqrt(1) = 1.
// Half-angle formulas; the branch test inspects values only, so dual
// tangents flow through the smooth expression of the active branch.
template <class T>
Cplx<T> csqrt(const Cplx<T>& z) {
    T r = cabs(z);
    if (val(z.re) >= 0.0) {
        T u = sqrt((r + z.re) / 2.0);
        if (val(u) == 0.0) return {T(), T()};
        return {u, z.im / (u + u)};
    }
    T s = sqrt((r - z.re) / 2.0);
    T u = z.im / (s + s);
    if (val(z.im) < 0.0) return {T() - u, T() - s};
    return {u, s};  // Im >= 0 goes to the upper half plane
}

template <class T>
Cplx<T> cexp_i(const T& phi) { return {cos(phi), sin(phi)}; }

}  // namespace cfs

#endif
