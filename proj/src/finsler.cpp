#include "cfsphere/finsler.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "cfsphere/rng.hpp"

namespace cfs {

namespace detail {

void check_branch(double rad_re, double rad_im, double rad_scale, double wedge2, double vw_scale) {
    if (rad_scale == 0.0) return;
    bool near_cut = rad_re < 0.0 && std::fabs(rad_im) < 1e-10 * rad_scale;
    bool wedge_nonzero = wedge2 > 1e-24 * vw_scale;
    if (near_cut && wedge_nonzero) throw BranchViolation("radicand at the negative real axis");
}

}  // namespace detail

double finsler_norm(const FinslerNorm& N, const Vec3& v, const Vec3& w) {
    if (norm(v) == 0.0) throw ZeroBase("finsler_norm");
    return finsler_norm_t(N, v, w);
}

double asymmetry_defect(const FinslerNorm& N, const Vec3& v, const Vec3& w) {
    return finsler_norm(N, v, w) - finsler_norm(N, v, -w);
}

double asymmetry_identity_rhs(const FinslerNorm& N, const Vec3& v, const Vec3& w) {
    Cplx<double> vw = conic_dot(N, v, w);
    Cplx<double> vv = conic_dot(N, v, v);
    return 2.0 * (vw / vv).im;
}

namespace {

// Deterministic orthonormal basis of base-perp: seed with the coordinate
// axis least aligned with the base.
void plane_basis(const Vec3& b, Vec3& t1, Vec3& t2) {
    Vec3 seed{0, 0, 0};
    double ax = std::fabs(b.x), ay = std::fabs(b.y), az = std::fabs(b.z);
    if (ax <= ay && ax <= az) seed.x = 1.0;
    else if (ay <= az) seed.y = 1.0;
    else seed.z = 1.0;
    t1 = seed - dot(seed, b) * b;
    t1 = t1 / norm(t1);
    t2 = cross(b, t1);
}

}  // namespace

IndicatrixCurve indicatrix_sample(const FinslerNorm& N, const RayPoint& base, int n) {
    if (n < 16) throw InsufficientSamples("indicatrix_sample: n < 16");
    IndicatrixCurve c;
    c.base = base;
    plane_basis(base.rep, c.t1, c.t2);
    c.theta.resize(n);
    c.w1.resize(n);
    c.w2.resize(n);
    const double two_pi = 6.283185307179586;
    for (int k = 0; k < n; ++k) {
        double th = two_pi * k / n;
        double u1 = std::cos(th), u2 = std::sin(th);
        Vec3 u = u1 * c.t1 + u2 * c.t2;
        double f = finsler_norm(N, base.rep, u);
        if (f < 1e-14) throw ZeroNorm("indicatrix_sample");
        c.theta[k] = th;
        c.w1[k] = u1 / f;
        c.w2[k] = u2 / f;
    }
    return c;
}

namespace {

double vanish_residual(const IndicatrixCurve& curve, int degree) {
    int n = static_cast<int>(curve.theta.size());
    std::vector<std::pair<int, int>> monos;
    for (int d = 0; d <= degree; ++d)
        for (int i = d; i >= 0; --i) monos.emplace_back(i, d - i);
    int m = static_cast<int>(monos.size());
    Eigen::MatrixXd M(n, m);
    for (int r = 0; r < n; ++r) {
        double a = curve.w1[r], b = curve.w2[r];
        for (int cidx = 0; cidx < m; ++cidx)
            M(r, cidx) = std::pow(a, monos[cidx].first) * std::pow(b, monos[cidx].second);
        double rn = M.row(r).norm();
        if (rn > 0.0) M.row(r) /= rn;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
    return svd.singularValues().tail(1)(0) / std::sqrt(static_cast<double>(n));
}

}  // namespace

QuarticFitReport quartic_fit(const IndicatrixCurve& curve) {
    if (curve.theta.size() < 64) throw InsufficientSamples("quartic_fit: need >= 64 samples");
    return {vanish_residual(curve, 4), vanish_residual(curve, 2)};
}

double antipodal_check(const FinslerNorm& N, int trials) {
    CounterRng rng(771177);
    double worst = 0.0;
    for (int k = 0; k < trials; ++k) {
        Vec3 v{rng.normal(), rng.normal(), rng.normal()};
        Vec3 w{rng.normal(), rng.normal(), rng.normal()};
        if (norm(cross(v, w)) < 1e-6) continue;
        worst = std::max(worst, std::fabs(finsler_norm(N, v, w) - finsler_norm(N, -v, -w)));
    }
    return worst;
}

int indicatrix_winding(const IndicatrixCurve& curve) {
    double total = 0.0;
    int n = static_cast<int>(curve.theta.size());
    for (int k = 0; k < n; ++k) {
        int j = (k + 1) % n;
        double a0 = std::atan2(curve.w2[k], curve.w1[k]);
        double a1 = std::atan2(curve.w2[j], curve.w1[j]);
        double d = a1 - a0;
        while (d > 3.14159265358979323846) d -= 6.283185307179586;
        while (d < -3.14159265358979323846) d += 6.283185307179586;
        total += d;
    }
    return static_cast<int>(std::lround(total / 6.283185307179586));
}

bool indicatrix_convex(const IndicatrixCurve& curve) {
    int n = static_cast<int>(curve.theta.size());
    int sign = 0;
    for (int k = 0; k < n; ++k) {
        double e1x = curve.w1[(k + 1) % n] - curve.w1[k];
        double e1y = curve.w2[(k + 1) % n] - curve.w2[k];
        double e2x = curve.w1[(k + 2) % n] - curve.w1[(k + 1) % n];
        double e2y = curve.w2[(k + 2) % n] - curve.w2[(k + 1) % n];
        double cr = e1x * e2y - e1y * e2x;
        int s = cr > 0 ? 1 : (cr < 0 ? -1 : 0);
        if (s == 0) return false;
        if (sign == 0) sign = s;
        else if (s != sign) return false;
    }
    return true;
}

}  // namespace cfs
