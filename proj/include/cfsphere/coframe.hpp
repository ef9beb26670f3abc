#ifndef CFSPHERE_COFRAME_HPP
#define CFSPHERE_COFRAME_HPP

#include <complex>

#include "cfsphere/charts.hpp"
#include "cfsphere/dual.hpp"
#include "cfsphere/errors.hpp"
#include "cfsphere/finsler.hpp"
#include "cfsphere/linalg.hpp"

// Numerical construction of Cartan's canonical coframing on the indicatrix
// bundle Sigma, in gnomonic charts with fiber angle theta.  The whole
// construction (Hilbert form -> Reeb field -> scaled pair) is a smooth
// closed-form composition of the norm, so nested dual numbers give every
// internal exterior derivative exactly; finite differences only enter as an
// independent oracle and for the frame derivatives of computed invariants.

namespace cfs {

struct SigmaPoint {
    Chart chart;
    double x1 = 0.0, x2 = 0.0;
    double theta = 0.0;
};

// Norm on a chart: F(x, u) = F_C(v(x), u1 e_a + u2 e_b).
template <class T>
T chart_norm(const FinslerNorm& N, const Chart& c, const T& x1, const T& x2,
             const T& u1, const T& u2) {
    V3<T> v = chart_point(c, x1, x2);
    Vec3 ea = c.basis_a(), eb = c.basis_b();
    V3<T> w{u1 * ea.x + u2 * eb.x, u1 * ea.y + u2 * eb.y, u1 * ea.z + u2 * eb.z};
    return finsler_norm_t(N, v, w);
}

// Unit lift in direction theta by the radial solve u = (cos, sin)/F.
template <class T>
void chart_lift(const FinslerNorm& N, const Chart& c, const T& x1, const T& x2,
                const T& theta, T& u1, T& u2) {
    T ct = cos(theta), st = sin(theta);
    T f = chart_norm(N, c, x1, x2, ct, st);
    u1 = ct / f;
    u2 = st / f;
}

// Hilbert form omega_1 = F_{u^i} dx^i at the lift; components on
// (dx1, dx2, dtheta), the last identically zero.
template <class T>
Cov3<T> omega1_at(const FinslerNorm& N, const Chart& c, const T& x1, const T& x2,
                  const T& theta) {
    T u1, u2;
    chart_lift(N, c, x1, x2, theta, u1, u2);
    using D = Dual<T>;
    D f1 = chart_norm(N, c, D(x1, T()), D(x2, T()), D(u1, T(1.0)), D(u2, T()));
    D f2 = chart_norm(N, c, D(x1, T()), D(x2, T()), D(u1, T()), D(u2, T(1.0)));
    return {f1.d, f2.d, T()};
}

// Exterior derivative of the Hilbert form, exactly, by one more dual layer.
template <class T>
Form2<T> domega1_at(const FinslerNorm& N, const Chart& c, const T& x1, const T& x2,
                    const T& theta) {
    using D = Dual<T>;
    Cov3<D> j0 = omega1_at(N, c, D(x1, T(1.0)), D(x2, T()), D(theta, T()));
    Cov3<D> j1 = omega1_at(N, c, D(x1, T()), D(x2, T(1.0)), D(theta, T()));
    Cov3<D> j2 = omega1_at(N, c, D(x1, T()), D(x2, T()), D(theta, T(1.0)));
    // c_ij = d_i a_j - d_j a_i
    return {j0.y.d - j1.x.d, j0.z.d - j2.x.d, j1.z.d - j2.y.d};
}

template <class T>
struct PrelimCoframe {
    Cov3<T> w1;    // Hilbert form
    Form2<T> dw1;
    V3<T> X1;      // Reeb field / geodesic spray
    Cov3<T> w2t;   // unit semibasic annihilator of X1
    Cov3<T> w3t;   // solves dw1 = -w2t ^ w3t with w3t(X1) = 0
};

template <class T>
PrelimCoframe<T> prelim_at(const FinslerNorm& N, const Chart& c, const T& x1, const T& x2,
                           const T& theta) {
    PrelimCoframe<T> P;
    P.w1 = omega1_at(N, c, x1, x2, theta);
    P.dw1 = domega1_at(N, c, x1, x2, theta);

    V3<T> k = form_kernel(P.dw1);
    T pairing = dot(P.w1, k);
    double kscale = val(norm(k));
    if (kscale < 1e-12 || cfs::abs(val(pairing)) < 1e-10 * kscale)
        throw DegenerateContact("Reeb pairing vanishes");
    P.X1 = k / pairing;

    T len = sqrt(P.X1.x * P.X1.x + P.X1.y * P.X1.y);
    P.w2t = {T() - P.X1.y / len, P.X1.x / len, T()};

    // Omega = -dw1 factors as w2t ^ w3t; Y is the Euclidean dual of w2t so
    // w2t(Y) = 1, and i_X1 Omega = 0 makes w3t(X1) = 0 automatic.
    V3<T> Y{P.w2t.x, P.w2t.y, T()};
    Cov3<T> w3t = contract(P.dw1, Y);
    P.w3t = {T() - w3t.x, T() - w3t.y, T() - w3t.z};
    return P;
}

// Scale factor s with omega_2 = s w2t fixed by omega_1 ^ d omega_1 =
// omega_2 ^ d omega_2 (the kappa shear drops out of that identity).
template <class T>
T scale_at(const FinslerNorm& N, const Chart& c, const T& x1, const T& x2, const T& theta) {
    PrelimCoframe<T> P = prelim_at(N, c, x1, x2, theta);
    using D = Dual<T>;
    Cov3<D> t0 = prelim_at(N, c, D(x1, T(1.0)), D(x2, T()), D(theta, T())).w2t;
    Cov3<D> t1 = prelim_at(N, c, D(x1, T()), D(x2, T(1.0)), D(theta, T())).w2t;
    Cov3<D> t2 = prelim_at(N, c, D(x1, T()), D(x2, T()), D(theta, T(1.0))).w2t;
    Form2<T> dw2t{t0.y.d - t1.x.d, t0.z.d - t2.x.d, t1.z.d - t2.y.d};

    T num = wedge_cov_form(P.w1, P.dw1);
    T den = wedge_cov_form(P.w2t, dw2t);
    T ratio = num / den;
    if (val(ratio) <= 0.0) throw DegenerateContact("omega2 scale ratio not positive");
    return sqrt(ratio);
}

template <class T>
struct CoframeT {
    Cov3<T> w1, w2, w3;
    V3<T> X1, X2, X3;
};

template <class T>
CoframeT<T> coframe_at(const FinslerNorm& N, const Chart& c, const T& x1, const T& x2,
                       const T& theta) {
    PrelimCoframe<T> P = prelim_at(N, c, x1, x2, theta);

    using D = Dual<T>;
    D s0 = scale_at(N, c, D(x1, T(1.0)), D(x2, T()), D(theta, T()));
    D s1 = scale_at(N, c, D(x1, T()), D(x2, T(1.0)), D(theta, T()));
    D s2 = scale_at(N, c, D(x1, T()), D(x2, T()), D(theta, T(1.0)));
    T s = s0.v;
    Cov3<T> ds{s0.d, s1.d, s2.d};

    Cov3<D> t0 = prelim_at(N, c, D(x1, T(1.0)), D(x2, T()), D(theta, T())).w2t;
    Cov3<D> t1 = prelim_at(N, c, D(x1, T()), D(x2, T(1.0)), D(theta, T())).w2t;
    Cov3<D> t2 = prelim_at(N, c, D(x1, T()), D(x2, T()), D(theta, T(1.0))).w2t;
    Form2<T> dw2t{t0.y.d - t1.x.d, t0.z.d - t2.x.d, t1.z.d - t2.y.d};

    // Orientation: omega_1 ^ omega_2 must be positive on (d/dx1, d/dx2).
    T orient = P.w1.x * P.w2t.y - P.w1.y * P.w2t.x;
    double sigma = val(s) * val(orient) > 0.0 ? 1.0 : -1.0;

    CoframeT<T> F;
    F.w1 = P.w1;
    F.w2 = (sigma * s) * P.w2t;
    Cov3<T> w30 = (sigma / s) * P.w3t;

    Form2<T> dw2 = sigma * (wedge(ds, P.w2t) + s * dw2t);

    // Kill the omega_1 ^ omega_2 coefficient of d omega_2 with the shear
    // omega_3 = w30 + kappa omega_2 (the structure equations have no such
    // term).
    M3<T> rows;
    for (int j = 0; j < 3; ++j) {
        rows(0, j) = F.w1[j];
        rows(1, j) = F.w2[j];
        rows(2, j) = w30[j];
    }
    M3<T> inv = inverse(rows);
    V3<T> Xp1 = inv.col(0), Xp2 = inv.col(1), Xp3 = inv.col(2);
    T C0 = dw2(Xp1, Xp2);
    T B0 = dw2(Xp1, Xp3);
    if (abs(val(B0)) < 1e-8) throw DegenerateContact("omega_1^omega_3 coefficient vanishes");
    T kappa = C0 / B0;
    F.w3 = {w30.x + kappa * F.w2.x, w30.y + kappa * F.w2.y, w30.z + kappa * F.w2.z};

    for (int j = 0; j < 3; ++j) rows(2, j) = F.w3[j];
    inv = inverse(rows);
    F.X1 = inv.col(0);
    F.X2 = inv.col(1);
    F.X3 = inv.col(2);
    return F;
}

using Coframe = CoframeT<double>;

Coframe cartan_coframe(const FinslerNorm& N, const SigmaPoint& pt);
Cov3<double> hilbert_form(const FinslerNorm& N, const SigmaPoint& pt);

// Lift of a Sigma point into V: base representative and unit tangent vector.
struct SigmaLift {
    Vec3 base;  // affine chart representative of the base point
    Vec3 dir;   // lift with F(base, dir) = 1
};
SigmaLift sigma_lift(const FinslerNorm& N, const SigmaPoint& pt);

SigmaPoint sigma_point(const FinslerNorm& N, const Chart& c, double x1, double x2, double theta);

// Sigma point over [v] in direction [v, w], in the chart covering v.
SigmaPoint sigma_point_from_tangent(const FinslerNorm& N, const Vec3& v, const Vec3& w);

// The same geometric Sigma point in another chart.
SigmaPoint transit_sigma_point(const FinslerNorm& N, const SigmaPoint& pt, const Chart& to);

// I, J, K read off the coefficient decomposition of d omega_2, d omega_3
// (exact dual-layer derivatives of the constructed coframe field).
struct ScalarInvariants {
    double I, J, K;
};
ScalarInvariants scalars_at(const FinslerNorm& N, const SigmaPoint& pt);

// Step ledger: first derivatives of computed invariants difference at h1,
// second at h2, both Richardson-extrapolated.
inline constexpr double kStepH1 = 1e-4;
inline constexpr double kStepH2 = 1e-3;

struct FrameDerivs {
    ScalarInvariants base;
    double I1, I2, I3;
    double J1, J2, J3;
    double K1, K2, K3;
    double T;
    std::complex<double> a;
    double Kdual;         // 1 - I3 + J2 - I^2 - J^2
    double bianchi_r1;    // I1 - J
    double bianchi_r2;    // J1 + K3 + K I
};
FrameDerivs frame_derivs_at(const FinslerNorm& N, const SigmaPoint& pt);

struct Invariants {
    double I, J, K;
    double I2, I3, J2, J3, K1, K2, K3;
    double T;
    std::complex<double> a, b;
    double cons_p, cons_q, W;   // conserved combinations of (T, a, b)
    std::complex<double> w;
    double Kdual;
    Cov3<double> rho;   // -w1 + I w2 + J w3
    Cov3<double> zeta_re, zeta_im;  // zeta = w3 + i w2
    double bianchi_r1, bianchi_r2;
    double flat_rho1;   // K31 - 3 K2
    double flat_rho2;   // I23 + J33 + 2 I (I2 + J3) + 6 J
    double Lbar, Mbar;  // 3 Mbar = -K31 + 3 K2, 3 Lbar = -(I23 + J33 + ...)
    // diagnostics from the da decomposition
    double da_check_x1;     // |X1(a) + i a|
    double da_check_zbar;   // |zbar coefficient + (3/2) T|
};
Invariants invariants_at(const FinslerNorm& N, const SigmaPoint& pt);

struct ConservedPQ {
    double p, q, W;
    std::complex<double> w;
};
ConservedPQ conserved_from(double T, std::complex<double> a, std::complex<double> b);

std::pair<double, double> bianchi_residuals(const FinslerNorm& N, const SigmaPoint& pt);

struct FlatnessResiduals {
    double rho1, rho2, Lbar, Mbar;
};
FlatnessResiduals flatness_residuals(const FinslerNorm& N, const SigmaPoint& pt);

// Finite-difference exterior-derivative oracle against the structure
// equations, sup norm of the three residual 2-forms.
struct StructureResiduals {
    double r1, r2, r3;
};
StructureResiduals structure_residuals(const FinslerNorm& N, const SigmaPoint& pt, double h);

// Connection section phi of the flat reduction: traceless matrix of
// covectors built from the coframe and (I, J, T).
struct ConnectionMatrix {
    Cov3<double> e[3][3];
};
ConnectionMatrix connection_section(const FinslerNorm& N, const SigmaPoint& pt);

// || d phi + phi ^ phi || via central differences with step h.
double maurer_cartan_residual(const FinslerNorm& N, const SigmaPoint& pt, double h);

// Component X_i of the dual frame as a chart-coordinate velocity.
Vec3 frame_field(const FinslerNorm& N, const SigmaPoint& pt, int i);

// Single-RK4-step flow of the frame field X_i by parameter t.
SigmaPoint flow_frame(const FinslerNorm& N, const SigmaPoint& pt, int i, double t);

}  // namespace cfs

#endif
