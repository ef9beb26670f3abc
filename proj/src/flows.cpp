#include "cfsphere/flows.hpp"

#include <algorithm>
#include <cmath>

#include "cfsphere/rng.hpp"

namespace cfs {

namespace {

using CD = std::complex<double>;
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 6.283185307179586;

}  // namespace

GeodesicTrace geodesic_line(const FinslerNorm& N, const Vec3& v, const Vec3& w, int n) {
    if (norm(cross(v, w)) < kDependenceTol * norm(v) * norm(w))
        throw DegenerateSpan("geodesic_line");
    if (n % 2 == 1) ++n;

    UnitSpeedBasis ub = unit_speed_basis(N.conic.normal_form(), v, w);
    Vec3 v0 = v;
    Vec3 v1 = ub.b2 * w + ub.a2 * v;

    GeodesicTrace trace;
    trace.samples.reserve(n + 1);
    std::vector<double> speed(n + 1);
    for (int k = 0; k <= n; ++k) {
        double s = kTwoPi * k / n;
        Vec3 pos = std::cos(s) * v0 + std::sin(s) * v1;
        Vec3 vel = -std::sin(s) * v0 + std::cos(s) * v1;
        double f = finsler_norm(N, pos, vel);
        speed[k] = f;
        TraceSample sample;
        sample.s = s;
        sample.point = ray_normalize(pos);
        sample.velocity = tangent_canonical(pos, vel);
        sample.unit_residual = std::fabs(f - 1.0);
        trace.samples.push_back(sample);
    }
    // Composite Simpson over the parameter; unit speed makes this the length.
    double h = kTwoPi / n;
    double sum = speed[0] + speed[n];
    for (int k = 1; k < n; ++k) sum += speed[k] * (k % 2 == 1 ? 4.0 : 2.0);
    trace.total_length = sum * h / 3.0;
    return trace;
}

double trace_closure_residual(const GeodesicTrace& trace) {
    const TraceSample& a = trace.samples.front();
    const TraceSample& b = trace.samples.back();
    Chart c = chart_of(a.point.rep);
    ChartCoords ca = to_chart(c, a.point.rep);
    ChartCoords cb = to_chart(c, b.point.rep);
    return std::max(std::fabs(ca.x1 - cb.x1), std::fabs(ca.x2 - cb.x2));
}

double trace_collinearity_residual(const GeodesicTrace& trace) {
    // Longest run of consecutive samples inside one chart.
    int best_start = 0, best_len = 0;
    int start = 0;
    int cur = chart_of(trace.samples[0].point.rep).index;
    for (int k = 1; k < static_cast<int>(trace.samples.size()); ++k) {
        int idx = chart_of(trace.samples[k].point.rep).index;
        if (idx != cur) {
            if (k - start > best_len) { best_len = k - start; best_start = start; }
            start = k;
            cur = idx;
        }
    }
    if (static_cast<int>(trace.samples.size()) - start > best_len) {
        best_len = static_cast<int>(trace.samples.size()) - start;
        best_start = start;
    }

    Chart c{cur = chart_of(trace.samples[best_start].point.rep).index};
    int e = best_start + best_len - 1;
    ChartCoords p0 = to_chart(c, trace.samples[best_start].point.rep);
    ChartCoords p1 = to_chart(c, trace.samples[e].point.rep);
    double dx = p1.x1 - p0.x1, dy = p1.x2 - p0.x2;
    double len = std::hypot(dx, dy);
    if (len == 0.0) return 0.0;
    double worst = 0.0;
    for (int k = best_start; k <= e; ++k) {
        ChartCoords p = to_chart(c, trace.samples[k].point.rep);
        double cr = (p.x1 - p0.x1) * dy - (p.x2 - p0.x2) * dx;
        worst = std::max(worst, std::fabs(cr) / len);
    }
    return worst;
}

namespace {

// d/dt (x, u) for the energy Lagrangian E = F^2/2 in chart coordinates:
// g_ij u''_j = E_{x_i} - E_{u_i x_j} u_j with g the fiber Hessian of E.
struct SprayState {
    double x1, x2, u1, u2;
};

SprayState spray_rhs(const FinslerNorm& N, const Chart& c, const SprayState& st) {
    using D = Dual<double>;
    using DD = Dual<Dual<double>>;

    auto energy = [&](auto x1, auto x2, auto u1, auto u2) {
        auto f = chart_norm(N, c, x1, x2, u1, u2);
        return 0.5 * f * f;
    };

    // E_x by one dual layer.
    D ex1 = energy(D(st.x1, 1.0), D(st.x2, 0.0), D(st.u1, 0.0), D(st.u2, 0.0));
    D ex2 = energy(D(st.x1, 0.0), D(st.x2, 1.0), D(st.u1, 0.0), D(st.u2, 0.0));

    // Rows of (E_{u_i x_j}, E_{u_i u_j}) by nesting: inner tangent along
    // u_i, outer along coordinate slot j.
    double g[2][2], eux[2][2];
    for (int i = 0; i < 2; ++i) {
        DD r[4];
        for (int j = 0; j < 4; ++j) {
            DD x1s(D(st.x1, j == 0 ? 1.0 : 0.0), D(0.0, 0.0));
            DD x2s(D(st.x2, j == 1 ? 1.0 : 0.0), D(0.0, 0.0));
            DD u1s(D(st.u1, j == 2 ? 1.0 : 0.0), D(i == 0 ? 1.0 : 0.0, 0.0));
            DD u2s(D(st.u2, j == 3 ? 1.0 : 0.0), D(i == 1 ? 1.0 : 0.0, 0.0));
            r[j] = energy(x1s, x2s, u1s, u2s);
        }
        eux[i][0] = r[0].d.d;  // d^2 E / du_i dx1
        eux[i][1] = r[1].d.d;
        g[i][0] = r[2].d.d;
        g[i][1] = r[3].d.d;
    }

    double detg = g[0][0] * g[1][1] - g[0][1] * g[1][0];
    if (std::fabs(detg) < 1e-10) throw HessianSingular("spray_rhs");

    double rhs1 = ex1.d - (eux[0][0] * st.u1 + eux[0][1] * st.u2);
    double rhs2 = ex2.d - (eux[1][0] * st.u1 + eux[1][1] * st.u2);
    SprayState out;
    out.x1 = st.u1;
    out.x2 = st.u2;
    out.u1 = (g[1][1] * rhs1 - g[0][1] * rhs2) / detg;
    out.u2 = (-g[1][0] * rhs1 + g[0][0] * rhs2) / detg;
    return out;
}

struct ChartState {
    Chart chart;
    SprayState st;
};

ChartState switch_chart_if_needed(const ChartState& cs) {
    if (std::fabs(cs.st.x1) <= kChartSwitch && std::fabs(cs.st.x2) <= kChartSwitch) return cs;
    Vec3 v = chart_point(cs.chart, cs.st.x1, cs.st.x2);
    Vec3 w = cs.st.u1 * cs.chart.basis_a() + cs.st.u2 * cs.chart.basis_b();
    Chart nc = chart_of(v);
    if (nc.index == cs.chart.index) return cs;
    ChartTangent ct = to_chart_tangent(nc, v, w);
    return {nc, {ct.x1, ct.x2, ct.u1, ct.u2}};
}

}  // namespace

GeodesicTrace spray_integrate(const FinslerNorm& N, const SigmaPoint& start, double length,
                              int steps) {
    double u1, u2;
    chart_lift(N, start.chart, start.x1, start.x2, start.theta, u1, u2);
    ChartState cs{start.chart, {start.x1, start.x2, u1, u2}};

    GeodesicTrace trace;
    trace.samples.reserve(steps + 1);
    double h = length / steps;
    for (int k = 0; k <= steps; ++k) {
        Vec3 base = chart_point(cs.chart, cs.st.x1, cs.st.x2);
        Vec3 dir = cs.st.u1 * cs.chart.basis_a() + cs.st.u2 * cs.chart.basis_b();
        TraceSample sample;
        sample.s = h * k;
        sample.point = ray_normalize(base);
        sample.velocity = tangent_canonical(base, dir);
        sample.unit_residual = std::fabs(finsler_norm(N, base, dir) - 1.0);
        trace.samples.push_back(sample);
        if (k == steps) break;

        auto rhs = [&](const SprayState& s) { return spray_rhs(N, cs.chart, s); };
        SprayState k1 = rhs(cs.st);
        auto advance = [&](const SprayState& s, const SprayState& d, double dt) {
            return SprayState{s.x1 + dt * d.x1, s.x2 + dt * d.x2, s.u1 + dt * d.u1,
                              s.u2 + dt * d.u2};
        };
        SprayState k2 = rhs(advance(cs.st, k1, h / 2));
        SprayState k3 = rhs(advance(cs.st, k2, h / 2));
        SprayState k4 = rhs(advance(cs.st, k3, h));
        cs.st.x1 += h / 6 * (k1.x1 + 2 * k2.x1 + 2 * k3.x1 + k4.x1);
        cs.st.x2 += h / 6 * (k1.x2 + 2 * k2.x2 + 2 * k3.x2 + k4.x2);
        cs.st.u1 += h / 6 * (k1.u1 + 2 * k2.u1 + 2 * k3.u1 + k4.u1);
        cs.st.u2 += h / 6 * (k1.u2 + 2 * k2.u2 + 2 * k3.u2 + k4.u2);
        cs = switch_chart_if_needed(cs);
    }
    trace.total_length = length;
    return trace;
}

double jacobi_conjugate(const FinslerNorm& N, const GeodesicTrace& trace) {
    int n = static_cast<int>(trace.samples.size());
    if (n < 3 || trace.samples.back().s <= kPi) throw Error("jacobi_conjugate: trace too short");

    std::vector<double> kval(n);
    for (int k = 0; k < n; ++k) {
        const TraceSample& ts = trace.samples[k];
        SigmaPoint pt = sigma_point_from_tangent(N, ts.point.rep, ts.velocity.dir);
        kval[k] = scalars_at(N, pt).K;
    }

    auto k_of = [&](double s) {
        double step = trace.samples[1].s - trace.samples[0].s;
        double idx = s / step;
        int i = std::min(n - 2, std::max(0, static_cast<int>(idx)));
        double frac = idx - i;
        return kval[i] * (1 - frac) + kval[i + 1] * frac;
    };

    // RK4 on (y, y') with linear K interpolation; bisect the bracketing step.
    double y = 0.0, yp = 1.0, s = 0.0;
    double h = (trace.samples[1].s - trace.samples[0].s) / 4.0;
    auto rk4 = [&](double& y_, double& yp_, double s_, double h_) {
        auto f = [&](double ss, double yy, double vv) {
            (void)vv;
            return -k_of(ss) * yy;
        };
        double k1y = yp_, k1v = f(s_, y_, yp_);
        double k2y = yp_ + h_ / 2 * k1v, k2v = f(s_ + h_ / 2, y_ + h_ / 2 * k1y, 0);
        double k3y = yp_ + h_ / 2 * k2v, k3v = f(s_ + h_ / 2, y_ + h_ / 2 * k2y, 0);
        double k4y = yp_ + h_ * k3v, k4v = f(s_ + h_, y_ + h_ * k3y, 0);
        y_ += h_ / 6 * (k1y + 2 * k2y + 2 * k3y + k4y);
        yp_ += h_ / 6 * (k1v + 2 * k2v + 2 * k3v + k4v);
    };

    double send = trace.samples.back().s;
    double prev_y = y, prev_s = s;
    while (s < send) {
        prev_y = y;
        prev_s = s;
        rk4(y, yp, s, h);
        s += h;
        if (prev_s > 0.5 && prev_y > 0.0 && y <= 0.0) {
            // y'' = -K y vanishes at the zero, so y is locally linear and a
            // secant between the bracketing nodes is already ~h^3 accurate.
            return prev_s - prev_y * (s - prev_s) / (y - prev_y);
        }
    }
    throw NoConjugatePoint("jacobi_conjugate");
}

double second_variation_quadrature(const FinslerNorm& N, const GeodesicTrace& trace, double ell) {
    // K measured once per trace sample, then interpolated linearly.
    int nk = 0;
    while (nk < static_cast<int>(trace.samples.size()) && trace.samples[nk].s <= ell + 1e-12) ++nk;
    std::vector<double> kval(nk);
    for (int k = 0; k < nk; ++k) {
        const TraceSample& ts = trace.samples[k];
        SigmaPoint pt = sigma_point_from_tangent(N, ts.point.rep, ts.velocity.dir);
        kval[k] = scalars_at(N, pt).K;
    }
    double step = trace.samples[1].s - trace.samples[0].s;
    auto k_of = [&](double s) {
        double idx = s / step;
        int i = std::min(nk - 2, std::max(0, static_cast<int>(idx)));
        double frac = idx - i;
        return kval[i] * (1 - frac) + kval[i + 1] * frac;
    };

    int n = 200;
    double h = ell / n;
    double sum = 0.0;
    for (int k = 0; k <= n; ++k) {
        double s = h * k;
        double f = std::sin(kPi * s / ell);
        double fp = kPi / ell * std::cos(kPi * s / ell);
        double integrand = fp * fp - k_of(s) * f * f;
        double wgt = (k == 0 || k == n) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
        sum += wgt * integrand;
    }
    return sum * h / 3.0;
}

double curve_length(const FinslerNorm& N, const std::vector<Vec3>& curve) {
    int n = static_cast<int>(curve.size());
    double total = 0.0;
    for (int k = 0; k < n; ++k) {
        const Vec3& a = curve[k];
        const Vec3& b = curve[(k + 1) % n];
        Vec3 mid = a + b;
        Vec3 d = b - a;
        if (norm(d) == 0.0) throw NonImmersed("curve_length");
        total += finsler_norm(N, mid / norm(mid), d);
    }
    return total;
}

namespace {

// Oriented-line image of a Sigma chart point: unit covector of the geodesic
// through it.  Smooth in all arguments.
template <class T>
V3<T> line_of(const Chart& c, const T& x1, const T& x2, const T& theta) {
    V3<T> v = chart_point(c, x1, x2);
    Vec3 ea = c.basis_a(), eb = c.basis_b();
    T ct = cos(theta), st = sin(theta);
    V3<T> w{ct * ea.x + st * eb.x, ct * ea.y + st * eb.y, ct * ea.z + st * eb.z};
    V3<T> xi = cross(v, w);
    return xi / norm(xi);
}

}  // namespace

CroftonReport crofton_check(const FinslerNorm& N, const std::vector<Vec3>& curve,
                            int mc_samples, std::uint64_t seed) {
    int nc = static_cast<int>(curve.size());
    if (nc < 8) throw NonImmersed("crofton_check: too few samples");

    std::vector<Vec3> reversed(curve.rbegin(), curve.rend());
    double lhs = curve_length(N, curve) + curve_length(N, reversed);

    CounterRng rng(seed);
    double acc_plus = 0.0, acc_minus = 0.0;
    long used = 0;
    for (int m = 0; m < mc_samples; ++m) {
        // uniform direction on S^2
        double z = rng.uniform(-1.0, 1.0);
        double phi = rng.uniform(0.0, kTwoPi);
        double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        Vec3 xi{r * std::cos(phi), r * std::sin(phi), z};

        // crossing counts over the polyline
        int nplus = 0, nminus = 0;
        double prev = dot(xi, curve[nc - 1]);
        for (int k = 0; k < nc; ++k) {
            double curr = dot(xi, curve[k]);
            if (prev < 0.0 && curr >= 0.0) ++nplus;
            if (prev >= 0.0 && curr < 0.0) ++nminus;
            prev = curr;
        }
        if (nplus == 0 && nminus == 0) { ++used; continue; }

        // representative incidence point and the measure density there
        Vec3 seed_axis{0, 0, 0};
        double ax = std::fabs(xi.x), ay = std::fabs(xi.y), az = std::fabs(xi.z);
        if (ax <= ay && ax <= az) seed_axis.x = 1.0;
        else if (ay <= az) seed_axis.y = 1.0;
        else seed_axis.z = 1.0;
        Vec3 vt = cross(xi, seed_axis);
        vt = vt / norm(vt);
        Vec3 wt = cross(xi, vt);

        Chart c = chart_of(vt);
        ChartTangent ct = to_chart_tangent(c, vt, wt);
        double theta = std::atan2(ct.u2, ct.u1);

        using D = Dual<double>;
        V3<D> l0 = line_of(c, D(ct.x1, 1.0), D(ct.x2, 0.0), D(theta, 0.0));
        V3<D> l1 = line_of(c, D(ct.x1, 0.0), D(ct.x2, 1.0), D(theta, 0.0));
        V3<D> l2 = line_of(c, D(ct.x1, 0.0), D(ct.x2, 0.0), D(theta, 1.0));
        Vec3 ell{l0.x.v, l0.y.v, l0.z.v};

        // tangent plane basis at ell
        Vec3 tau1 = cross(ell, vt);
        tau1 = tau1 / norm(tau1);
        Vec3 tau2 = cross(ell, tau1);

        // rows of the projected differential A (2 x 3)
        Vec3 dcol0{l0.x.d, l0.y.d, l0.z.d};
        Vec3 dcol1{l1.x.d, l1.y.d, l1.z.d};
        Vec3 dcol2{l2.x.d, l2.y.d, l2.z.d};
        double A[2][3] = {{dot(tau1, dcol0), dot(tau1, dcol1), dot(tau1, dcol2)},
                          {dot(tau2, dcol0), dot(tau2, dcol1), dot(tau2, dcol2)}};

        // min-norm lifts solving A y = e_b via A^T (A A^T)^{-1}
        double G11 = A[0][0] * A[0][0] + A[0][1] * A[0][1] + A[0][2] * A[0][2];
        double G12 = A[0][0] * A[1][0] + A[0][1] * A[1][1] + A[0][2] * A[1][2];
        double G22 = A[1][0] * A[1][0] + A[1][1] * A[1][1] + A[1][2] * A[1][2];
        double detG = G11 * G22 - G12 * G12;
        if (std::fabs(detG) < 1e-14) { ++used; continue; }
        Vec3 Y1, Y2;
        for (int j = 0; j < 3; ++j) {
            double c1 = (G22 * A[0][j] - G12 * A[1][j]) / detG;  // (AA^T)^{-1} applied
            double c2 = (-G12 * A[0][j] + G11 * A[1][j]) / detG;
            Y1[j] = c1;
            Y2[j] = c2;
        }

        PrelimCoframe<double> P = prelim_at<double>(N, c, ct.x1, ct.x2, theta);
        double density = std::fabs(dot(P.w2t, Y1) * dot(P.w3t, Y2) -
                                   dot(P.w2t, Y2) * dot(P.w3t, Y1));

        acc_plus += nplus * density;
        acc_minus += nminus * density;
        ++used;
    }

    CroftonReport rep;
    double area = 2.0 * kTwoPi;  // Euclidean area of S^2
    rep.lhs = lhs;
    rep.rhs_plus = area * acc_plus / used;
    rep.rhs_minus = area * acc_minus / used;
    rep.rel_err = std::fabs(rep.lhs - rep.rhs_plus) / std::fabs(rep.lhs);
    return rep;
}

Mat3 leaf_connection_matrix(const LeafState& state, const Vec3& u) {
    CD IJ = -(CD(state.T, 1.0)) * state.a;
    double I = IJ.real(), J = IJ.imag();
    double tr = (I * u.z - J * u.y) / 3.0;
    Mat3 phi;
    phi(0, 0) = tr;       phi(0, 1) = -u.x;     phi(0, 2) = -u.y + state.T * u.z;
    phi(1, 0) = u.x;      phi(1, 1) = tr;       phi(1, 2) = -u.z - state.T * u.y;
    phi(2, 0) = u.y;      phi(2, 1) = u.z;      phi(2, 2) = -2.0 * tr;
    return phi;
}

LeafDeriv leaf_vector_field(const LeafState& state, const Vec3& u) {
    CD IJ = -(CD(state.T, 1.0)) * state.a;
    double I = IJ.real(), J = IJ.imag();
    CD zeta(u.z, u.y);                       // omega3 + i omega2 on X
    double rho = -u.x + I * u.y + J * u.z;   // rho on X
    const CD i_unit(0.0, 1.0);

    LeafDeriv d;
    d.dg = state.g * leaf_connection_matrix(state, u);
    d.dT = (state.T * state.T + 1.0) * 2.0 * (state.a * zeta).real();
    d.da = i_unit * state.a * rho + (state.b + state.a * state.a * state.T) * zeta -
           1.5 * state.T * std::conj(zeta);
    d.db = 2.0 * i_unit * state.b * rho +
           (2.0 * state.a * state.b * state.T - (2.0 / 9.0) * state.a * state.a * state.a) * zeta -
           state.a * std::conj(zeta);
    return d;
}

namespace {

LeafState leaf_step_rk4(const LeafState& s, const Vec3& u, double h) {
    auto add = [&](const LeafState& st, const LeafDeriv& d, double c) {
        LeafState r = st;
        r.g = r.g + c * d.dg;
        r.T += c * d.dT;
        r.a += c * d.da;
        r.b += c * d.db;
        return r;
    };
    LeafDeriv k1 = leaf_vector_field(s, u);
    LeafDeriv k2 = leaf_vector_field(add(s, k1, h / 2), u);
    LeafDeriv k3 = leaf_vector_field(add(s, k2, h / 2), u);
    LeafDeriv k4 = leaf_vector_field(add(s, k3, h), u);
    LeafState out = s;
    out.g = s.g + (h / 6) * (k1.dg + 2.0 * k2.dg + 2.0 * k3.dg + k4.dg);
    out.T += h / 6 * (k1.dT + 2 * k2.dT + 2 * k3.dT + k4.dT);
    out.a += h / 6.0 * (k1.da + 2.0 * k2.da + 2.0 * k3.da + k4.da);
    out.b += h / 6.0 * (k1.db + 2.0 * k2.db + 2.0 * k3.db + k4.db);
    // det re-projection only; the flow preserves det in exact arithmetic
    double d = det(out.g);
    out.g = (1.0 / std::cbrt(d)) * out.g;
    return out;
}

double leaf_state_distance(const LeafState& a, const LeafState& b) {
    double m = 0.0;
    for (int i = 0; i < 9; ++i) m = std::max(m, std::fabs(a.g.a[i] - b.g.a[i]));
    m = std::max(m, std::fabs(a.T - b.T));
    m = std::max(m, std::abs(a.a - b.a));
    m = std::max(m, std::abs(a.b - b.b));
    return m;
}

}  // namespace

ConservedPQ leaf_conserved(const LeafState& state) {
    return conserved_from(state.T, state.a, state.b);
}

std::vector<LeafSample> leaf_integrate(const LeafState& state0, const ControlPath& path,
                                       double step) {
    std::vector<LeafSample> out;
    LeafState s = state0;
    double t = 0.0;
    auto record = [&]() {
        ConservedPQ c = leaf_conserved(s);
        out.push_back({t, s, c.W, c.w});
    };
    record();
    for (const ControlSegment& seg : path) {
        if (!(seg.duration > 0.0)) throw Error("leaf_integrate: nonpositive duration");
        int nsteps = std::max(1, static_cast<int>(std::ceil(seg.duration / step)));
        double h = seg.duration / nsteps;
        for (int k = 0; k < nsteps; ++k) {
            LeafState full = leaf_step_rk4(s, seg.u, h);
            LeafState half = leaf_step_rk4(leaf_step_rk4(s, seg.u, h / 2), seg.u, h / 2);
            if (leaf_state_distance(full, half) > 1e-6) throw StepTooLarge("leaf_integrate");
            s = half;  // keep the more accurate state
            t += h;
            record();
        }
    }
    return out;
}

namespace {

LeafState flow_control(const LeafState& s0, const Vec3& u, double time, int substeps) {
    LeafState s = s0;
    double h = time / substeps;
    for (int k = 0; k < substeps; ++k) s = leaf_step_rk4(s, u, h);
    return s;
}

}  // namespace

double holonomy_defect(const LeafState& state0, double eps) {
    const int sub = 16;
    Vec3 e2{0, 1, 0}, e3{0, 0, 1};
    LeafState s = flow_control(state0, e2, eps, sub);
    s = flow_control(s, e3, eps, sub);
    s = flow_control(s, e2, -eps, sub);
    s = flow_control(s, e3, -eps, sub);

    // Displacement in the coordinates of X, with the g-part pulled back to
    // the Lie algebra at the start point.
    Mat3 dg = inverse(state0.g) * (s.g + (-1.0) * state0.g);
    double dT = s.T - state0.T;
    CD da = s.a - state0.a;
    CD db = s.b - state0.b;

    CD IJ = -(CD(state0.T, 1.0)) * state0.a;
    double I = IJ.real(), J = IJ.imag();
    double T = state0.T;
    CD a = state0.a, b = state0.b;
    const CD i_unit(0.0, 1.0);

    auto d = [&](int i, int j) { return dg(i - 1, j - 1); };
    CD zeta(d(3, 2), d(3, 1));
    double rho = -d(2, 1) + I * d(3, 1) + J * d(3, 2);

    double th0 = d(1, 1) - (I * d(3, 2) - J * d(3, 1)) / 3.0;
    double th1 = d(2, 2) - (I * d(3, 2) - J * d(3, 1)) / 3.0;
    double th2 = d(3, 3) + 2.0 * (I * d(3, 2) - J * d(3, 1)) / 3.0;
    double th3 = d(1, 2) + d(2, 1);
    double th4 = d(1, 3) + d(3, 1) - T * d(3, 2);
    double th5 = d(2, 3) + d(3, 2) + T * d(3, 1);
    double th6 = dT - (T * T + 1.0) * 2.0 * (a * zeta).real();
    CD th78 = da - i_unit * a * rho - (b + a * a * T) * zeta + 1.5 * T * std::conj(zeta);
    CD th910 = db - 2.0 * i_unit * b * rho - (2.0 * a * b * T - (2.0 / 9.0) * a * a * a) * zeta +
               a * std::conj(zeta);

    double sum = th0 * th0 + th1 * th1 + th2 * th2 + th3 * th3 + th4 * th4 + th5 * th5 +
                 th6 * th6 + std::norm(th78) + std::norm(th910);
    return std::sqrt(sum);
}

double holonomy_order(const LeafState& state0, double eps) {
    double d0 = holonomy_defect(state0, eps);
    double d1 = holonomy_defect(state0, eps / 2);
    double d2 = holonomy_defect(state0, eps / 4);
    // least-squares slope over the three (log eps, log defect) pairs
    double x0 = std::log(eps), x1 = std::log(eps / 2), x2 = std::log(eps / 4);
    double y0 = std::log(d0), y1 = std::log(d1), y2 = std::log(d2);
    double xm = (x0 + x1 + x2) / 3, ym = (y0 + y1 + y2) / 3;
    double num = (x0 - xm) * (y0 - ym) + (x1 - xm) * (y1 - ym) + (x2 - xm) * (y2 - ym);
    double den = (x0 - xm) * (x0 - xm) + (x1 - xm) * (x1 - xm) + (x2 - xm) * (x2 - xm);
    return num / den;
}

SigmaPoint flow_geodesic(const FinslerNorm& N, const SigmaPoint& pt, double length, int steps) {
    SigmaPoint q = pt;
    double h = length / steps;
    for (int k = 0; k < steps; ++k) {
        q = flow_frame(N, q, 1, h);
        if (std::fabs(q.x1) > kChartSwitch || std::fabs(q.x2) > kChartSwitch) {
            Vec3 v = chart_point(q.chart, q.x1, q.x2);
            Chart nc = chart_of(v);
            if (nc.index != q.chart.index) q = transit_sigma_point(N, q, nc);
        }
    }
    return q;
}

CrossValidateReport cross_validate(const FinslerNorm& N, const SigmaPoint& pt, double length,
                                   int n_checks) {
    Invariants inv0 = invariants_at(N, pt);
    LeafState leaf;
    leaf.g = Mat3::identity();
    leaf.T = inv0.T;
    leaf.a = inv0.a;
    leaf.b = inv0.b;

    CrossValidateReport rep{0.0, 0.0, 0.0};
    Vec3 e1{1, 0, 0};
    SigmaPoint q = pt;
    double seg = length / n_checks;
    for (int k = 1; k <= n_checks; ++k) {
        leaf = flow_control(leaf, e1, seg, std::max(8, static_cast<int>(seg / 0.01)));
        q = flow_geodesic(N, q, seg, std::max(8, static_cast<int>(seg / 0.01)));
        Invariants inv = invariants_at(N, q);
        rep.max_dT = std::max(rep.max_dT, std::fabs(inv.T - leaf.T));
        rep.max_da = std::max(rep.max_da, std::abs(inv.a - leaf.a));
        rep.max_db = std::max(rep.max_db, std::abs(inv.b - leaf.b));
    }
    return rep;
}

}  // namespace cfs
