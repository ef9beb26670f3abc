#include "cfsphere/coframe.hpp"

#include <array>
#include <cmath>

namespace cfs {

namespace {

using CD = std::complex<double>;

Coframe values_of(const CoframeT<Dual<double>>& F) {
    Coframe out;
    out.w1 = {F.w1.x.v, F.w1.y.v, F.w1.z.v};
    out.w2 = {F.w2.x.v, F.w2.y.v, F.w2.z.v};
    out.w3 = {F.w3.x.v, F.w3.y.v, F.w3.z.v};
    out.X1 = {F.X1.x.v, F.X1.y.v, F.X1.z.v};
    out.X2 = {F.X2.x.v, F.X2.y.v, F.X2.z.v};
    out.X3 = {F.X3.x.v, F.X3.y.v, F.X3.z.v};
    return out;
}

}  // namespace

SigmaPoint sigma_point(const FinslerNorm& N, const Chart& c, double x1, double x2, double theta) {
    if (std::fabs(x1) > kChartDomain || std::fabs(x2) > kChartDomain)
        throw OutOfChart("sigma_point");
    SigmaPoint pt{c, x1, x2, theta};
    SigmaLift lift = sigma_lift(N, pt);
    double f = finsler_norm(N, lift.base, lift.dir);
    if (std::fabs(f - 1.0) > 1e-10) throw Error("sigma_point: radial solve failed");
    return pt;
}

SigmaLift sigma_lift(const FinslerNorm& N, const SigmaPoint& pt) {
    double u1, u2;
    chart_lift(N, pt.chart, pt.x1, pt.x2, pt.theta, u1, u2);
    Vec3 base = chart_point(pt.chart, pt.x1, pt.x2);
    Vec3 dir = u1 * pt.chart.basis_a() + u2 * pt.chart.basis_b();
    return {base, dir};
}

SigmaPoint sigma_point_from_tangent(const FinslerNorm& N, const Vec3& v, const Vec3& w) {
    Chart c = chart_of(v);
    ChartTangent ct = to_chart_tangent(c, v, w);
    double theta = std::atan2(ct.u2, ct.u1);
    return sigma_point(N, c, ct.x1, ct.x2, theta);
}

SigmaPoint transit_sigma_point(const FinslerNorm& N, const SigmaPoint& pt, const Chart& to) {
    Vec3 v = chart_point(pt.chart, pt.x1, pt.x2);
    Vec3 w = std::cos(pt.theta) * pt.chart.basis_a() + std::sin(pt.theta) * pt.chart.basis_b();
    ChartTangent ct = to_chart_tangent(to, v, w);
    double theta = std::atan2(ct.u2, ct.u1);
    return sigma_point(N, to, ct.x1, ct.x2, theta);
}

Coframe cartan_coframe(const FinslerNorm& N, const SigmaPoint& pt) {
    return coframe_at<double>(N, pt.chart, pt.x1, pt.x2, pt.theta);
}

Cov3<double> hilbert_form(const FinslerNorm& N, const SigmaPoint& pt) {
    return omega1_at<double>(N, pt.chart, pt.x1, pt.x2, pt.theta);
}

ScalarInvariants scalars_at(const FinslerNorm& N, const SigmaPoint& pt) {
    using D = Dual<double>;
    const Chart& c = pt.chart;
    CoframeT<D> F0 = coframe_at(N, c, D(pt.x1, 1.0), D(pt.x2, 0.0), D(pt.theta, 0.0));
    CoframeT<D> F1 = coframe_at(N, c, D(pt.x1, 0.0), D(pt.x2, 1.0), D(pt.theta, 0.0));
    CoframeT<D> F2 = coframe_at(N, c, D(pt.x1, 0.0), D(pt.x2, 0.0), D(pt.theta, 1.0));

    Coframe F = values_of(F0);
    Form2<double> dw2{F0.w2.y.d - F1.w2.x.d, F0.w2.z.d - F2.w2.x.d, F1.w2.z.d - F2.w2.y.d};
    Form2<double> dw3{F0.w3.y.d - F1.w3.x.d, F0.w3.z.d - F2.w3.x.d, F1.w3.z.d - F2.w3.y.d};

    // structure equations: d w2 = w1^w3 - I w2^w3, d w3 = -K w1^w2 - J w2^w3
    ScalarInvariants s;
    s.I = -dw2(F.X2, F.X3);
    s.K = -dw3(F.X1, F.X2);
    s.J = -dw3(F.X2, F.X3);
    return s;
}

Vec3 frame_field(const FinslerNorm& N, const SigmaPoint& pt, int i) {
    Coframe F = cartan_coframe(N, pt);
    return i == 1 ? F.X1 : (i == 2 ? F.X2 : F.X3);
}

SigmaPoint flow_frame(const FinslerNorm& N, const SigmaPoint& pt, int i, double t) {
    auto field = [&](const SigmaPoint& q) { return frame_field(N, q, i); };
    Vec3 k1 = field(pt);
    auto step = [&](const SigmaPoint& q, const Vec3& k, double dt) {
        SigmaPoint r = q;
        r.x1 += dt * k.x;
        r.x2 += dt * k.y;
        r.theta += dt * k.z;
        return r;
    };
    Vec3 k2 = field(step(pt, k1, t / 2));
    Vec3 k3 = field(step(pt, k2, t / 2));
    Vec3 k4 = field(step(pt, k3, t));
    SigmaPoint out = pt;
    out.x1 += t / 6 * (k1.x + 2 * k2.x + 2 * k3.x + k4.x);
    out.x2 += t / 6 * (k1.y + 2 * k2.y + 2 * k3.y + k4.y);
    out.theta += t / 6 * (k1.z + 2 * k2.z + 2 * k3.z + k4.z);
    return out;
}

namespace {

// Richardson-extrapolated central difference along the flow of X_i of a
// vector of scalars.
template <class F>
std::vector<double> frame_derivative(const FinslerNorm& N, const SigmaPoint& pt, int i, double h,
                                     F&& scalars) {
    std::vector<double> fp = scalars(flow_frame(N, pt, i, h));
    std::vector<double> fm = scalars(flow_frame(N, pt, i, -h));
    std::vector<double> fp2 = scalars(flow_frame(N, pt, i, h / 2));
    std::vector<double> fm2 = scalars(flow_frame(N, pt, i, -h / 2));
    std::vector<double> out(fp.size());
    for (size_t k = 0; k < fp.size(); ++k) {
        double dh = (fp[k] - fm[k]) / (2 * h);
        double dh2 = (fp2[k] - fm2[k]) / h;
        out[k] = (4 * dh2 - dh) / 3;
    }
    return out;
}

}  // namespace

FrameDerivs frame_derivs_at(const FinslerNorm& N, const SigmaPoint& pt) {
    auto ijk = [&](const SigmaPoint& q) {
        ScalarInvariants s = scalars_at(N, q);
        return std::vector<double>{s.I, s.J, s.K};
    };

    FrameDerivs fd;
    fd.base = scalars_at(N, pt);
    std::vector<double> d1 = frame_derivative(N, pt, 1, kStepH1, ijk);
    std::vector<double> d2 = frame_derivative(N, pt, 2, kStepH1, ijk);
    std::vector<double> d3 = frame_derivative(N, pt, 3, kStepH1, ijk);
    fd.I1 = d1[0]; fd.J1 = d1[1]; fd.K1 = d1[2];
    fd.I2 = d2[0]; fd.J2 = d2[1]; fd.K2 = d2[2];
    fd.I3 = d3[0]; fd.J3 = d3[1]; fd.K3 = d3[2];

    fd.T = (fd.I2 + fd.J3) / 3.0;
    CD IJ(fd.base.I, fd.base.J);
    fd.a = -IJ / CD(fd.T, 1.0);
    fd.Kdual = 1.0 - fd.I3 + fd.J2 - fd.base.I * fd.base.I - fd.base.J * fd.base.J;
    fd.bianchi_r1 = fd.I1 - fd.base.J;
    fd.bianchi_r2 = fd.J1 + fd.K3 + fd.base.K * fd.base.I;
    return fd;
}

ConservedPQ conserved_from(double T, CD a, CD b) {
    double na2 = std::norm(a);
    double nb2 = std::norm(b);
    double den = 1.0 + T * T;
    ConservedPQ out;
    out.p = (nb2 + na2 - na2 * na2 / 9.0 - 9.0 / 16.0 * T * T - 27.0 / 16.0) / den;
    out.q = ((b * std::conj(a) * std::conj(a) + std::conj(b) * a * a).real() / 3.0 + na2 * T -
             9.0 / 8.0 * T) /
            den;
    out.W = out.p * out.p + out.q * out.q;
    CD pq(out.p, out.q);
    out.w = pq * pq * pq * (CD(1.0, -T) / CD(1.0, T));
    return out;
}

Invariants invariants_at(const FinslerNorm& N, const SigmaPoint& pt) {
    FrameDerivs c = frame_derivs_at(N, pt);

    auto layer1 = [&](const SigmaPoint& q) {
        FrameDerivs f = frame_derivs_at(N, q);
        return std::vector<double>{f.K3, f.I2, f.J3, f.a.real(), f.a.imag()};
    };
    std::vector<double> g1 = frame_derivative(N, pt, 1, kStepH2, layer1);
    std::vector<double> g2 = frame_derivative(N, pt, 2, kStepH2, layer1);
    std::vector<double> g3 = frame_derivative(N, pt, 3, kStepH2, layer1);

    double K31 = g1[0];
    double I23 = g3[1];
    double J33 = g3[2];
    CD a1(g1[3], g1[4]);
    CD a2(g2[3], g2[4]);
    CD a3(g3[3], g3[4]);

    Invariants inv;
    inv.I = c.base.I;
    inv.J = c.base.J;
    inv.K = c.base.K;
    inv.I2 = c.I2; inv.I3 = c.I3;
    inv.J2 = c.J2; inv.J3 = c.J3;
    inv.K1 = c.K1; inv.K2 = c.K2; inv.K3 = c.K3;
    inv.T = c.T;
    inv.a = c.a;
    inv.Kdual = c.Kdual;
    inv.bianchi_r1 = c.bianchi_r1;
    inv.bianchi_r2 = c.bianchi_r2;

    // da = i a rho + (b + a^2 T) zeta - (3/2) T zeta-bar with
    // rho = -w1 + I w2 + J w3, zeta = w3 + i w2; solve for the zeta and
    // zeta-bar coefficients from the frame components of da.
    const CD i_unit(0.0, 1.0);
    CD S = a3 - i_unit * inv.a * inv.J;
    CD Dm = -i_unit * (a2 - i_unit * inv.a * inv.I);
    CD lambda = 0.5 * (S + Dm);
    CD mu = 0.5 * (S - Dm);
    inv.b = lambda - inv.a * inv.a * inv.T;
    inv.da_check_x1 = std::abs(a1 + i_unit * inv.a);
    inv.da_check_zbar = std::abs(mu + 1.5 * inv.T);

    ConservedPQ cons = conserved_from(inv.T, inv.a, inv.b);
    inv.cons_p = cons.p;
    inv.cons_q = cons.q;
    inv.W = cons.W;
    inv.w = cons.w;

    inv.flat_rho1 = K31 - 3.0 * c.K2;
    inv.flat_rho2 = I23 + J33 + 2.0 * inv.I * (inv.I2 + inv.J3) + 6.0 * inv.J;
    inv.Mbar = -inv.flat_rho1 / 3.0;
    inv.Lbar = -inv.flat_rho2 / 3.0;

    Coframe F = cartan_coframe(N, pt);
    inv.rho = -1.0 * F.w1 + inv.I * F.w2 + inv.J * F.w3;
    inv.zeta_re = F.w3;
    inv.zeta_im = F.w2;
    return inv;
}

std::pair<double, double> bianchi_residuals(const FinslerNorm& N, const SigmaPoint& pt) {
    FrameDerivs fd = frame_derivs_at(N, pt);
    return {fd.bianchi_r1, fd.bianchi_r2};
}

FlatnessResiduals flatness_residuals(const FinslerNorm& N, const SigmaPoint& pt) {
    Invariants inv = invariants_at(N, pt);
    return {inv.flat_rho1, inv.flat_rho2, inv.Lbar, inv.Mbar};
}

namespace {

// Central-difference Jacobian of the coframe covector fields, Richardson
// extrapolated: the independent oracle for the structure equations.
struct CoframeJac {
    Coframe F;
    Form2<double> dw1, dw2, dw3;
};

CoframeJac coframe_fd_jacobian(const FinslerNorm& N, const SigmaPoint& pt, double h) {
    auto at = [&](int dir, double t) {
        SigmaPoint q = pt;
        if (dir == 0) q.x1 += t;
        else if (dir == 1) q.x2 += t;
        else q.theta += t;
        return cartan_coframe(N, q);
    };

    CoframeJac out;
    out.F = cartan_coframe(N, pt);

    double j1[3][3], j2[3][3], j3[3][3];  // j[i][dir] = d_dir(w_i component i)
    for (int dir = 0; dir < 3; ++dir) {
        Coframe p = at(dir, h), m = at(dir, -h);
        Coframe p2 = at(dir, h / 2), m2 = at(dir, -h / 2);
        for (int comp = 0; comp < 3; ++comp) {
            auto rich = [&](double fp, double fm, double fp2, double fm2) {
                return (4 * ((fp2 - fm2) / h) - (fp - fm) / (2 * h)) / 3;
            };
            j1[comp][dir] = rich(p.w1[comp], m.w1[comp], p2.w1[comp], m2.w1[comp]);
            j2[comp][dir] = rich(p.w2[comp], m.w2[comp], p2.w2[comp], m2.w2[comp]);
            j3[comp][dir] = rich(p.w3[comp], m.w3[comp], p2.w3[comp], m2.w3[comp]);
        }
    }
    auto form_of = [](double j[3][3]) {
        return Form2<double>{j[1][0] - j[0][1], j[2][0] - j[0][2], j[2][1] - j[1][2]};
    };
    out.dw1 = form_of(j1);
    out.dw2 = form_of(j2);
    out.dw3 = form_of(j3);
    return out;
}

double form_max(const Form2<double>& f) {
    return std::max({std::fabs(f.c12), std::fabs(f.c13), std::fabs(f.c23)});
}

}  // namespace

StructureResiduals structure_residuals(const FinslerNorm& N, const SigmaPoint& pt, double h) {
    CoframeJac jac = coframe_fd_jacobian(N, pt, h);
    ScalarInvariants s = scalars_at(N, pt);
    const Coframe& F = jac.F;

    Form2<double> r1 = jac.dw1 + wedge(F.w2, F.w3);
    Cov3<double> w1_minus_Iw2 = F.w1 - s.I * F.w2;
    Form2<double> r2 = jac.dw2 + wedge(F.w3, w1_minus_Iw2);
    Cov3<double> kw1_jw3 = s.K * F.w1 - s.J * F.w3;
    Form2<double> r3 = jac.dw3 + wedge(kw1_jw3, F.w2);
    return {form_max(r1), form_max(r2), form_max(r3)};
}

namespace {

ConnectionMatrix phi_entries(const Coframe& F, double I, double J, double T) {
    ConnectionMatrix phi;
    Cov3<double> tr = (1.0 / 3.0) * (I * F.w3 - J * F.w2);
    phi.e[0][0] = tr;
    phi.e[0][1] = -1.0 * F.w1;
    phi.e[0][2] = -1.0 * F.w2 + T * F.w3;
    phi.e[1][0] = F.w1;
    phi.e[1][1] = tr;
    phi.e[1][2] = -1.0 * F.w3 - T * F.w2;
    phi.e[2][0] = F.w2;
    phi.e[2][1] = F.w3;
    phi.e[2][2] = -2.0 * tr;
    return phi;
}

ConnectionMatrix phi_at(const FinslerNorm& N, const SigmaPoint& pt) {
    FrameDerivs fd = frame_derivs_at(N, pt);
    Coframe F = cartan_coframe(N, pt);
    return phi_entries(F, fd.base.I, fd.base.J, fd.T);
}

}  // namespace

ConnectionMatrix connection_section(const FinslerNorm& N, const SigmaPoint& pt) {
    FlatnessResiduals fr = flatness_residuals(N, pt);
    if (std::fabs(fr.rho1) > 1e-2 || std::fabs(fr.rho2) > 1e-2)
        throw NotFlat("connection_section");
    return phi_at(N, pt);
}

double maurer_cartan_residual(const FinslerNorm& N, const SigmaPoint& pt, double h) {
    auto at = [&](int dir, double t) {
        SigmaPoint q = pt;
        if (dir == 0) q.x1 += t;
        else if (dir == 1) q.x2 += t;
        else q.theta += t;
        return phi_at(N, q);
    };

    ConnectionMatrix center = phi_at(N, pt);
    ConnectionMatrix plus[3], minus[3];
    for (int dir = 0; dir < 3; ++dir) {
        plus[dir] = at(dir, h);
        minus[dir] = at(dir, -h);
    }

    double worst = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            // d(phi_ij) by central differences
            double jac[3][3];  // jac[comp][dir]
            for (int dir = 0; dir < 3; ++dir)
                for (int comp = 0; comp < 3; ++comp)
                    jac[comp][dir] =
                        (plus[dir].e[i][j][comp] - minus[dir].e[i][j][comp]) / (2 * h);
            Form2<double> dphi{jac[1][0] - jac[0][1], jac[2][0] - jac[0][2],
                               jac[2][1] - jac[1][2]};
            Form2<double> wedge_sum{};
            for (int k = 0; k < 3; ++k)
                wedge_sum = wedge_sum + wedge(center.e[i][k], center.e[k][j]);
            worst = std::max(worst, form_max(dphi + wedge_sum));
        }
    return worst;
}

}  // namespace cfs
