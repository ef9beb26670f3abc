#ifndef CFSPHERE_FINSLER_HPP
#define CFSPHERE_FINSLER_HPP

#include <vector>

#include "cfsphere/conics.hpp"
#include "cfsphere/dual.hpp"
#include "cfsphere/errors.hpp"
#include "cfsphere/linalg.hpp"
#include "cfsphere/projmodel.hpp"

// The closed-form Finsler norm bound to a normalized conic:
//
//   F(v, w) = Re[ (sqrt((w.w)(v.v) - (w.v)^2) - i (v.w)) / (v.v) ]
//
// with the principal square root and the bilinear dot taken in the normal
// form e^{ip} x^2 + e^{iq} y^2 + e^{-ip} z^2.  Everything is templated on
// the scalar so forward-mode duals differentiate it exactly.

namespace cfs {

struct FinslerNorm {
    NormalizedConic conic;
    // Test hook: adds eps * (v x w)_z^2 / (|v|^4 F) to the norm, a smooth
    // class-invariant bump that destroys projective flatness.
    double perturb_eps = 0.0;

    static FinslerNorm from_pq(double p, double q) {
        FinslerNorm N;
        N.conic.p = p;
        N.conic.q = q;
        N.conic.frame = SL3{Mat3::identity()};
        N.conic.phase = 0.0;
        return N;
    }
};

// Bilinear dot of real-scalar-T vectors with respect to the normal form.
template <class T>
Cplx<T> conic_dot(const FinslerNorm& N, const V3<T>& u, const V3<T>& v) {
    double p = N.conic.p, q = N.conic.q;
    Cplx<T> e_p(std::cos(p), std::sin(p));
    Cplx<T> e_q(std::cos(q), std::sin(q));
    Cplx<T> e_mp(std::cos(p), -std::sin(p));
    return e_p * Cplx<T>(u.x * v.x) + e_q * Cplx<T>(u.y * v.y) + e_mp * Cplx<T>(u.z * v.z);
}

namespace detail {
// Branch monitoring happens only on the value layer; the proof of the norm
// formula shows the radicand never reaches the negative real axis for valid
// conics, so a hit signals a corrupted input.
void check_branch(double rad_re, double rad_im, double rad_scale, double wedge2, double vw_scale);
}  // namespace detail

template <class T>
T finsler_norm_t(const FinslerNorm& N, const V3<T>& v, const V3<T>& w) {
    Cplx<T> vv = conic_dot(N, v, v);
    Cplx<T> ww = conic_dot(N, w, w);
    Cplx<T> vw = conic_dot(N, v, w);
    Cplx<T> rad = ww * vv - vw * vw;

    V3<T> vxw = cross(v, w);
    detail::check_branch(val(rad.re), val(rad.im), val(cabs(rad)),
                         val(dot(vxw, vxw)), val(dot(v, v)) * val(dot(w, w)));

    Cplx<T> num = csqrt(rad) - Cplx<T>(T(), T(1.0)) * vw;
    T f = (num / vv).re;
    if (N.perturb_eps != 0.0) {
        // Fourth fiber harmonic: third-derivative residuals respond strongly
        // while eps stays deep in the linear regime.
        T vn2 = dot(v, v);
        T c3 = vxw.z * vxw.z / (vn2 * vn2);
        f += N.perturb_eps * (c3 * c3) / (f * f * f);
    }
    return f;
}

double finsler_norm(const FinslerNorm& N, const Vec3& v, const Vec3& w);

// F(v,w) - F(v,-w); equals 2 Im[(v.w)/(v.v)] for the unperturbed norm.
double asymmetry_defect(const FinslerNorm& N, const Vec3& v, const Vec3& w);
double asymmetry_identity_rhs(const FinslerNorm& N, const Vec3& v, const Vec3& w);

struct IndicatrixCurve {
    RayPoint base;
    Vec3 t1, t2;                 // fixed orthonormal basis of base-perp
    std::vector<double> theta;   // Euclidean angles 2 pi k / n
    std::vector<double> w1, w2;  // plane coordinates of the unit vectors
};

IndicatrixCurve indicatrix_sample(const FinslerNorm& N, const RayPoint& base, int n);

struct QuarticFitReport {
    double deg4_residual;
    double deg2_residual;
};

// Least-squares vanishing-locus fit of total degree <= 4 and <= 2
// polynomials in the plane coordinates; residual is the smallest singular
// value of the row-normalized design matrix divided by sqrt(#samples).
QuarticFitReport quartic_fit(const IndicatrixCurve& curve);

double antipodal_check(const FinslerNorm& N, int trials);

// Winding number of the curve about the origin of the tangent plane.
int indicatrix_winding(const IndicatrixCurve& curve);

// True iff the discrete curvature (cross product of consecutive edges)
// keeps one sign all the way around.
bool indicatrix_convex(const IndicatrixCurve& curve);

}  // namespace cfs

#endif
