#ifndef CFSPHERE_CHARTS_HPP
#define CFSPHERE_CHARTS_HPP

#include "cfsphere/errors.hpp"
#include "cfsphere/linalg.hpp"
#include "cfsphere/projmodel.hpp"

// Six gnomonic charts on S, one per signed coordinate hemisphere.  Central
// projection maps the lines of S to straight chart lines, and the affine
// representative v(x) = s e_k + x1 e_a + x2 e_b keeps every chart map
// polynomial.  Slot order is chosen so dx1^dx2 is positive for the standard
// orientation of S, i.e. det(v, d1 v, d2 v) = +1.

namespace cfs {

struct Chart {
    int index = 0;  // 0..5

    int axis() const { return index / 2; }
    double sgn() const { return index % 2 == 0 ? 1.0 : -1.0; }

    // coordinate slots (a, b) for (x1, x2)
    int slot_a() const {
        static const int sa[6] = {1, 2, 2, 0, 0, 1};
        return sa[index];
    }
    int slot_b() const {
        static const int sb[6] = {2, 1, 0, 2, 1, 0};
        return sb[index];
    }

    Vec3 basis_a() const { Vec3 e{}; e[slot_a()] = 1.0; return e; }
    Vec3 basis_b() const { Vec3 e{}; e[slot_b()] = 1.0; return e; }
};

inline constexpr double kChartDomain = 4.0;    // hard domain bound
inline constexpr double kChartSwitch = 1.5;    // switch charts beyond this

template <class T>
V3<T> chart_point(const Chart& c, const T& x1, const T& x2) {
    V3<T> v;
    v[c.axis()] = c.sgn();
    v[c.slot_a()] = x1;
    v[c.slot_b()] = x2;
    return v;
}

// Chart whose axis component dominates the representative.
Chart chart_of(const Vec3& v);

struct ChartCoords {
    double x1, x2;
};

ChartCoords to_chart(const Chart& c, const Vec3& v);

// Push a base/direction pair in V to chart tangent coordinates
// u_i = d/dt [ s (v + t w)_{a_i} / (v + t w)_k ] at t = 0.
struct ChartTangent {
    double x1, x2;  // base coords
    double u1, u2;  // direction components
};

ChartTangent to_chart_tangent(const Chart& c, const Vec3& v, const Vec3& w);

}  // namespace cfs

#endif
