#ifndef CFSPHERE_CONICS_HPP
#define CFSPHERE_CONICS_HPP

#include <complex>
#include <utility>

#include "cfsphere/errors.hpp"
#include "cfsphere/linalg.hpp"
#include "cfsphere/projmodel.hpp"

// Complex quadratic forms on V (x) C up to scale, the real-point test, the
// SL(3,R) normal form e^{ip} x^2 + e^{iq} y^2 + e^{-ip} z^2 with
// |q| <= p < pi/2, and line-conic intersection.

namespace cfs {

using Complex = std::complex<double>;

// Q = q_re + i q_im, symmetric 3x3, defined up to complex scale.
struct ConicQuadric {
    Mat3 q_re;
    Mat3 q_im;

    static ConicQuadric diagonal(Complex a0, Complex a1, Complex a2);
    // The normal-form quadric for given (p, q).
    static ConicQuadric from_pq(double p, double q);
    // Congruence transport: returns g^T Q g.
    ConicQuadric congruence(const Mat3& g) const;

    Complex entry(int i, int j) const { return {q_re(i, j), q_im(i, j)}; }
    // Bilinear extension evaluated on real vectors.
    Complex bilinear(const Vec3& u, const Vec3& v) const;
    Complex quadratic(const Vec3& u) const { return bilinear(u, u); }

    // Throws DegenerateConic unless symmetric to 1e-14 and nondegenerate
    // (|det| > 1e-10 at unit Frobenius norm).
    void validate() const;
};

struct NormalizedConic {
    double p = 0.0;
    double q = 0.0;
    SL3 frame;     // columns carry the diagonalizing basis
    double phase;  // frame^T (e^{i phase} Q) frame = r diag(e^{ip}, e^{iq}, e^{-ip}), r > 0

    ConicQuadric normal_form() const { return ConicQuadric::from_pq(p, q); }
};

// False iff some phase rotation of Q has positive-definite real part,
// which characterizes exactly the conics missing all real points.
bool has_real_points(const ConicQuadric& Q);

NormalizedConic normalize_conic(const ConicQuadric& Q);

struct LineConicRoots {
    Complex t_plus;   // Im > 0 root of Q(v + t w) = 0
    Complex t_minus;  // the other root
    bool near_infinity = false;  // leading coefficient Q(w,w) ~ 0; roots from
                                 // the reversed parametrization Q(w + s v) = 0
};

LineConicRoots line_conic_intersect(const ConicQuadric& Q, const Vec3& v, const Vec3& w);

// Writing the Im > 0 root as t = t1 + i t2: a2 = t1/t2, b2 = |t|^2/t2 > 0,
// so that (1 + i a2) v + i b2 w lies on the conic and F(v,w) b2 = 1.
struct UnitSpeedBasis {
    double a2;
    double b2;
};

UnitSpeedBasis unit_speed_basis(const ConicQuadric& Q, const Vec3& v, const Vec3& w);

struct StabilizerReport {
    enum class Kind { sign_flips, rotation_xy, rotation_yz, full_rotation } kind;
    double max_residual = 0.0;
    int generators_checked = 0;
};

StabilizerReport stabilizer_check(const NormalizedConic& nc);

}  // namespace cfs

#endif
