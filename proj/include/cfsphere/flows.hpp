#ifndef CFSPHERE_FLOWS_HPP
#define CFSPHERE_FLOWS_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include "cfsphere/coframe.hpp"
#include "cfsphere/conics.hpp"
#include "cfsphere/finsler.hpp"
#include "cfsphere/projmodel.hpp"

// ODE-based verification: geodesics by projective parametrization and by
// Euler-Lagrange integration, Jacobi fields and conjugate points, the
// Crofton identity, and leaf integration of the Frobenius system on
// X = SL(3,R) x R x C x C.

namespace cfs {

struct TraceSample {
    double s;            // arc length
    RayPoint point;
    TangentVec velocity;
    double unit_residual;  // |F(point, velocity) - 1|
};

struct GeodesicTrace {
    std::vector<TraceSample> samples;
    double total_length = 0.0;
};

// gamma(s) = [cos s v0 + sin s v1] with v0 = v, v1 = a2 v + b2 w from the
// unit-speed basis; sampled at n+1 points of [0, 2 pi].
GeodesicTrace geodesic_line(const FinslerNorm& N, const Vec3& v, const Vec3& w, int n);

// Closure gap |gamma(2 pi) - gamma(0)| in chart coordinates.
double trace_closure_residual(const GeodesicTrace& trace);

// Max deviation from the chord within the largest single-chart run of the
// trace: gnomonic straightness.
double trace_collinearity_residual(const GeodesicTrace& trace);

// Euler-Lagrange integration of the energy E = F^2/2 (its fiber Hessian is
// the fundamental tensor; F alone has Euler-degenerate Hessian).  Unit
// initial speed makes the affine parameter arc length.
GeodesicTrace spray_integrate(const FinslerNorm& N, const SigmaPoint& start, double length,
                              int steps);

// First zero of y'' + K(gamma'(s)) y = 0, y(0) = 0, y'(0) = 1, with K
// measured along the trace.
double jacobi_conjugate(const FinslerNorm& N, const GeodesicTrace& trace);

// Second-variation quadrature Q(f) = int (f'^2 - K f^2) ds for
// f = sin(pi s / ell) on the initial segment of the trace.
double second_variation_quadrature(const FinslerNorm& N, const GeodesicTrace& trace, double ell);

struct CroftonReport {
    double lhs;        // L(curve) + L(curve reversed)
    double rhs_plus;   // integral of nu+ against the geodesic measure
    double rhs_minus;  // integral of nu-
    double rel_err;    // |lhs - rhs_plus| / lhs
};

// Monte-Carlo Crofton check: sample oriented lines uniformly on S*, weight
// by the density of mu (l* mu = w2 ^ w3) against Euclidean area.
CroftonReport crofton_check(const FinslerNorm& N, const std::vector<Vec3>& curve,
                            int mc_samples, std::uint64_t seed);

// L-length of a closed polyline on S by midpoint quadrature.
double curve_length(const FinslerNorm& N, const std::vector<Vec3>& curve);

struct LeafState {
    Mat3 g = Mat3::identity();
    double T = 0.0;
    std::complex<double> a{0.0, 0.0};
    std::complex<double> b{0.0, 0.0};
};

struct LeafDeriv {
    Mat3 dg;
    double dT;
    std::complex<double> da, db;
};

// Frame direction with omega_i(X) = u_i; the rank-3 distribution of the
// Pfaffian system.
LeafDeriv leaf_vector_field(const LeafState& state, const Vec3& u);

// phi(u): the reduced sl(3) connection matrix evaluated on the controls.
Mat3 leaf_connection_matrix(const LeafState& state, const Vec3& u);

struct ControlSegment {
    Vec3 u;
    double duration;
};
using ControlPath = std::vector<ControlSegment>;

struct LeafSample {
    double t;
    LeafState state;
    double W;
    std::complex<double> w;
};

// Fixed-step RK4 with per-step det re-projection and a step-doubling local
// error monitor (throws StepTooLarge above 1e-6).
std::vector<LeafSample> leaf_integrate(const LeafState& state0, const ControlPath& path,
                                       double step);

ConservedPQ leaf_conserved(const LeafState& state);

// Transverse defect of the X2/X3 commutator loop at scale eps, measured by
// the ten theta-forms at the start state.
double holonomy_defect(const LeafState& state0, double eps);

// Least-squares slope of log defect against log eps over (eps, eps/2, eps/4).
double holonomy_order(const LeafState& state0, double eps);

struct CrossValidateReport {
    double max_dT;
    double max_da;
    double max_db;
};

// Seeds a leaf state with (T, a, b) measured at pt, integrates pure X1, and
// transports pt by the geodesic flow in charts, comparing the structure
// functions along the way at n_checks points.
CrossValidateReport cross_validate(const FinslerNorm& N, const SigmaPoint& pt, double length,
                                   int n_checks);

// Chart-side geodesic flow with automatic chart switching.
SigmaPoint flow_geodesic(const FinslerNorm& N, const SigmaPoint& pt, double length, int steps);

}  // namespace cfs

#endif
