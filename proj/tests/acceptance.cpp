// Acceptance suite: one pass/fail line per criterion, with the tolerance it
// ran at.  Exit code is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <string>
#include <vector>

#include "cfsphere/coframe.hpp"
#include "cfsphere/flows.hpp"
#include "cfsphere/rng.hpp"
#include "oracles.hpp"

using namespace cfs;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 6.283185307179586;

int g_failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

void report(int idx, const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] %2d. %-28s %s\n", pass ? "PASS" : "FAIL", idx, name.c_str(),
                detail.c_str());
    if (!pass) ++g_failures;
}

std::vector<SigmaPoint> random_points(const FinslerNorm& N, int n, std::uint64_t seed) {
    CounterRng rng(seed);
    std::vector<SigmaPoint> pts;
    pts.reserve(n);
    while (static_cast<int>(pts.size()) < n) {
        Chart c{static_cast<int>(rng.next_u64() % 6)};
        pts.push_back(sigma_point(N, c, rng.uniform(-0.9, 0.9), rng.uniform(-0.9, 0.9),
                                  rng.uniform(0.0, kTwoPi)));
    }
    return pts;
}

char buf[256];

// 1. Norm-oracle equivalence over 1e5 random draws, < 1e-11, < 5 s.
void criterion_1() {
    Timer timer;
    CounterRng rng(101);
    double worst = 0.0;
    int done = 0;
    while (done < 100000) {
        double p = rng.uniform(0.0, 1.4);
        double q = rng.uniform(-p, p);
        FinslerNorm N = FinslerNorm::from_pq(p, q);
        Vec3 v = test::random_vec(rng), w = test::random_vec(rng);
        if (norm(cross(v, w)) < 1e-3 * norm(v) * norm(w)) continue;
        worst = std::max(worst, std::fabs(finsler_norm(N, v, w) - test::norm_root_oracle(N, v, w)));
        ++done;
    }
    double secs = timer.seconds();
    std::snprintf(buf, sizeof buf, "max |formula - root oracle| = %.3e (tol 1e-11), %.1f s",
                  worst, secs);
    report(1, "norm-oracle equivalence", worst < 1e-11 && secs < 5.0, buf);
}

// 2. |K - 1| < 1e-5 at 100 random points for four structures, < 60 s.
void criterion_2() {
    Timer timer;
    double worst = 0.0;
    for (auto [p, q] : {std::pair{0.0, 0.0}, {0.2, 0.0}, {0.3, 0.1}, {0.6, 0.4}}) {
        FinslerNorm N = FinslerNorm::from_pq(p, q);
        for (const SigmaPoint& pt : random_points(N, 100, 202))
            worst = std::max(worst, std::fabs(scalars_at(N, pt).K - 1.0));
    }
    double secs = timer.seconds();
    std::snprintf(buf, sizeof buf, "max |K-1| = %.3e (tol 1e-5), %.1f s", worst, secs);
    report(2, "constant curvature K = 1", worst < 1e-5 && secs < 60.0, buf);
}

// 3. Projective flatness < 1e-3 at 30 points for two structures; a
// 1e-3-perturbed norm fails the second residual by a factor of 10.
void criterion_3() {
    double worst = 0.0;
    for (auto [p, q] : {std::pair{0.3, 0.1}, {0.6, 0.4}}) {
        FinslerNorm N = FinslerNorm::from_pq(p, q);
        for (const SigmaPoint& pt : random_points(N, 30, 303)) {
            FlatnessResiduals fr = flatness_residuals(N, pt);
            worst = std::max({worst, std::fabs(fr.rho1), std::fabs(fr.rho2)});
        }
    }
    FinslerNorm P = FinslerNorm::from_pq(0.3, 0.1);
    P.perturb_eps = 1e-3;
    double perturbed = 0.0;
    for (const SigmaPoint& pt : random_points(P, 5, 304))
        perturbed = std::max(perturbed, std::fabs(flatness_residuals(P, pt).rho2));
    bool pass = worst < 1e-3 && perturbed >= 1e-2;
    std::snprintf(buf, sizeof buf, "max residual = %.3e (tol 1e-3); perturbed rho2 = %.3e (>= 1e-2)",
                  worst, perturbed);
    report(3, "projective flatness", pass, buf);
}

// 4. Bianchi identities < 1e-5 at 100 points.
void criterion_4() {
    FinslerNorm N = FinslerNorm::from_pq(0.3, 0.1);
    double worst = 0.0;
    for (const SigmaPoint& pt : random_points(N, 100, 404)) {
        auto [r1, r2] = bianchi_residuals(N, pt);
        worst = std::max({worst, std::fabs(r1), std::fabs(r2)});
    }
    std::snprintf(buf, sizeof buf, "max |I1-J|, |J1+K3+KI| = %.3e (tol 1e-5)", worst);
    report(4, "bianchi identities", worst < 1e-5, buf);
}

// 5. Structural identities of the complex form at 30 points, < 1e-4.
void criterion_5() {
    FinslerNorm N = FinslerNorm::from_pq(0.3, 0.1);
    double worst1 = 0.0, worst2 = 0.0;
    for (const SigmaPoint& pt : random_points(N, 30, 505)) {
        Invariants inv = invariants_at(N, pt);
        worst1 = std::max(worst1, std::fabs(inv.I3 - inv.J2 -
                                            3 * (inv.T * inv.T - inv.I * inv.I - inv.J * inv.J)));
        worst2 = std::max(worst2, std::fabs(inv.Kdual - (1 + 2 * inv.I * inv.I +
                                                         2 * inv.J * inv.J - 3 * inv.T * inv.T)));
    }
    std::snprintf(buf, sizeof buf, "I3-J2 id = %.3e, Kdual id = %.3e (tol 1e-4)", worst1, worst2);
    report(5, "structural identities", worst1 < 1e-4 && worst2 < 1e-4, buf);
}

// 6. Conservation: W, w spread < 1e-4 over 100 points; leaf drift < 1e-8
// per unit time.
void criterion_6() {
    FinslerNorm N = FinslerNorm::from_pq(0.3, 0.1);
    double wmin = 1e300, wmax = -1e300;
    std::complex<double> wref;
    double wspread = 0.0;
    std::vector<SigmaPoint> pts = random_points(N, 100, 606);
    std::vector<Invariants> invs;
    invs.reserve(pts.size());
    for (const SigmaPoint& pt : pts) invs.push_back(invariants_at(N, pt));
    wref = invs[0].w;
    for (const Invariants& inv : invs) {
        wmin = std::min(wmin, inv.W);
        wmax = std::max(wmax, inv.W);
        wspread = std::max(wspread, std::abs(inv.w - wref));
    }
    double rel_W = (wmax - wmin) / std::fabs(wmax);
    double rel_w = wspread / std::abs(wref);

    LeafState s0;
    s0.T = invs[0].T;
    s0.a = invs[0].a;
    s0.b = invs[0].b;
    auto traj = leaf_integrate(s0, ControlPath{{Vec3{0.5, -0.6, 0.3}, 10.0}}, 0.005);
    double drift = 0.0;
    for (const auto& smp : traj) drift = std::max(drift, std::fabs(smp.W - traj[0].W));
    drift /= 10.0;

    bool pass = rel_W < 1e-4 && rel_w < 1e-4 && drift < 1e-8;
    std::snprintf(buf, sizeof buf,
                  "W spread = %.3e, w spread = %.3e (tol 1e-4); leaf drift = %.3e (tol 1e-8)",
                  rel_W, rel_w, drift);
    report(6, "conserved quantities", pass, buf);
}

// 7. Geodesics: closure < 1e-8, gnomonic straightness < 1e-9, two-method
// agreement < 1e-6 at arc length 3.
void criterion_7() {
    CounterRng rng(707);
    double worst_close = 0.0, worst_line = 0.0, worst_unit = 0.0, worst_two = 0.0;
    for (auto [p, q] : {std::pair{0.3, 0.1}, {0.6, 0.4}}) {
        FinslerNorm N = FinslerNorm::from_pq(p, q);
        for (int k = 0; k < 20; ++k) {
            Vec3 v = test::random_vec(rng), w = test::random_vec(rng);
            if (norm(cross(v, w)) < 1e-1) { --k; continue; }
            GeodesicTrace tr = geodesic_line(N, v, w, 256);
            worst_close = std::max(worst_close, trace_closure_residual(tr));
            worst_line = std::max(worst_line, trace_collinearity_residual(tr));
            for (const TraceSample& s : tr.samples)
                worst_unit = std::max(worst_unit, s.unit_residual);
            if (k < 5) {
                UnitSpeedBasis ub = unit_speed_basis(N.conic.normal_form(), v, w);
                Vec3 exact =
                    ray_normalize(std::cos(3.0) * v + std::sin(3.0) * (ub.b2 * w + ub.a2 * v)).rep;
                SigmaPoint start = sigma_point_from_tangent(N, v, w);
                GeodesicTrace el = spray_integrate(N, start, 3.0, 900);
                worst_two = std::max(worst_two, norm(el.samples.back().point.rep - exact));
            }
        }
    }
    bool pass = worst_close < 1e-8 && worst_line < 1e-9 && worst_two < 1e-6;
    std::snprintf(buf, sizeof buf,
                  "closure %.2e (1e-8), straight %.2e (1e-9), EL match %.2e (1e-6), unit %.2e",
                  worst_close, worst_line, worst_two, worst_unit);
    report(7, "geodesics close and are lines", pass, buf);
}

// 8. First conjugate point at pi +- 1e-5 on 10 random geodesics per structure.
void criterion_8() {
    double worst = 0.0;
    for (auto [p, q] : {std::pair{0.2, 0.0}, {0.3, 0.1}, {0.6, 0.4}}) {
        FinslerNorm N = FinslerNorm::from_pq(p, q);
        CounterRng rng(808);
        for (int k = 0; k < 10; ++k) {
            Vec3 v = test::random_vec(rng), w = test::random_vec(rng);
            if (norm(cross(v, w)) < 1e-1) { --k; continue; }
            GeodesicTrace tr = geodesic_line(N, v, w, 400);
            worst = std::max(worst, std::fabs(jacobi_conjugate(N, tr) - kPi));
        }
    }
    std::snprintf(buf, sizeof buf, "max |s* - pi| = %.3e (tol 1e-5)", worst);
    report(8, "jacobi conjugate points", worst < 1e-5, buf);
}

// 9. Symmetry dichotomy and antipodal invariance.
void criterion_9() {
    FinslerNorm R = FinslerNorm::from_pq(0.0, 0.0);
    FinslerNorm N = FinslerNorm::from_pq(0.3, 0.1);
    CounterRng rng(909);
    double worst_round = 0.0, worst_id = 0.0;
    for (int k = 0; k < 10000; ++k) {
        Vec3 v = test::random_vec(rng), w = test::random_vec(rng);
        if (norm(cross(v, w)) < 1e-3) continue;
        worst_round = std::max(worst_round, std::fabs(asymmetry_defect(R, v, w)));
        worst_id = std::max(worst_id,
                            std::fabs(asymmetry_defect(N, v, w) - asymmetry_identity_rhs(N, v, w)));
    }
    double probe = std::fabs(asymmetry_defect(N, {1, 1, 0}, {1, -1, 0}) - 2 * std::tan(0.1));
    double anti = std::max(antipodal_check(N, 5000), antipodal_check(R, 5000));
    bool pass = worst_round < 1e-12 && worst_id < 1e-12 && probe < 1e-9 && anti < 1e-12;
    std::snprintf(buf, sizeof buf,
                  "round defect %.1e, identity %.1e (1e-12); probe %.1e (1e-9); antipodal %.1e",
                  worst_round, worst_id, probe, anti);
    report(9, "symmetry dichotomy", pass, buf);
}

// 10. Normal form recovery to 1e-9 under 100 random congruences; stabilizer
// preserves the normal form to 1e-12.
void criterion_10() {
    CounterRng rng(1010);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
        double p = rng.uniform(0.05, 1.4);
        double q = rng.uniform(-p, p);
        SL3 g = test::random_sl3(rng);
        ConicQuadric Q = ConicQuadric::from_pq(p, q).congruence(g.m);
        NormalizedConic nc = normalize_conic(Q);
        worst = std::max({worst, std::fabs(nc.p - p), std::fabs(nc.q - q)});
    }
    double stab = 0.0;
    for (auto [p, q] : {std::pair{0.3, 0.1}, {0.3, 0.3}, {0.0, 0.0}, {0.5, -0.5}}) {
        NormalizedConic nc;
        nc.p = p; nc.q = q; nc.frame = SL3{Mat3::identity()}; nc.phase = 0.0;
        stab = std::max(stab, stabilizer_check(nc).max_residual);
    }
    bool pass = worst < 1e-9 && stab < 1e-12;
    std::snprintf(buf, sizeof buf, "recovery %.3e (tol 1e-9); stabilizer %.3e (tol 1e-12)", worst,
                  stab);
    report(10, "conic normal form", pass, buf);
}

// 11. Leaf system: 2-pi periodicity of pure X1 to 1e-8; commutator defect
// order >= 2.7; chart/leaf cross-validation to 1e-4 over arc length pi.
void criterion_11() {
    LeafState s0;
    s0.T = 0.12;
    s0.a = {0.18, -0.07};
    s0.b = {-0.25, 0.33};
    auto traj = leaf_integrate(s0, ControlPath{{Vec3{1, 0, 0}, kTwoPi}}, 0.005);
    const LeafState& sE = traj.back().state;
    double period = 0.0;
    for (int i = 0; i < 9; ++i) period = std::max(period, std::fabs(sE.g.a[i] - s0.g.a[i]));
    period = std::max({period, std::fabs(sE.T - s0.T), std::abs(sE.a - s0.a),
                       std::abs(sE.b - s0.b)});

    double order = holonomy_order(s0, 0.05);

    FinslerNorm N = FinslerNorm::from_pq(0.3, 0.1);
    SigmaPoint pt = sigma_point(N, Chart{0}, 0.3, -0.2, 0.9);
    CrossValidateReport cv = cross_validate(N, pt, kPi, 4);
    double cvmax = std::max({cv.max_dT, cv.max_da, cv.max_db});

    bool pass = period < 1e-8 && order >= 2.7 && cvmax < 1e-4;
    std::snprintf(buf, sizeof buf,
                  "period gap %.2e (1e-8); defect order %.2f (>= 2.7); cross-val %.2e (1e-4)",
                  period, order, cvmax);
    report(11, "leaf frobenius system", pass, buf);
}

// 12. Indicatrix algebraicity: quartic fit < 1e-8 with conic fit > 1e-3 at a
// generic point of (0.4, 0.2); conic fit < 1e-10 in the round case.
void criterion_12() {
    FinslerNorm N = FinslerNorm::from_pq(0.4, 0.2);
    IndicatrixCurve cg = indicatrix_sample(N, ray_normalize({0.9, 0.3, -0.2}), 256);
    QuarticFitReport fg = quartic_fit(cg);

    FinslerNorm R = FinslerNorm::from_pq(0.0, 0.0);
    IndicatrixCurve cr = indicatrix_sample(R, ray_normalize({1, 0, 0}), 256);
    QuarticFitReport fr = quartic_fit(cr);

    bool pass = fg.deg4_residual < 1e-8 && fg.deg2_residual > 1e-3 && fr.deg2_residual < 1e-10;
    std::snprintf(buf, sizeof buf,
                  "deg4 %.2e (<1e-8), deg2 %.2e (>1e-3); round deg2 %.2e (<1e-10)",
                  fg.deg4_residual, fg.deg2_residual, fr.deg2_residual);
    report(12, "indicatrix algebraicity", pass, buf);
}

// 13. Crofton: relative error < 1e-2 at 1e6 MC samples for two curves,
// < 120 s.
void criterion_13() {
    Timer timer;
    FinslerNorm N = FinslerNorm::from_pq(0.3, 0.1);

    auto circle = [](double r, const Vec3& axis_raw) {
        Vec3 axis = axis_raw / norm(axis_raw);
        Vec3 seed = std::fabs(axis.z) > 0.8 ? Vec3{1, 0, 0} : Vec3{0, 0, 1};
        Vec3 t1 = cross(axis, seed);
        t1 = t1 / norm(t1);
        Vec3 t2 = cross(axis, t1);
        std::vector<Vec3> out;
        for (int k = 0; k < 512; ++k) {
            double t = kTwoPi * k / 512;
            out.push_back(std::cos(r) * axis + std::sin(r) * (std::cos(t) * t1 + std::sin(t) * t2));
        }
        return out;
    };

    CroftonReport r1 = crofton_check(N, circle(0.8, {0.2, -0.1, 1.0}), 1000000, 131);
    CroftonReport r2 = crofton_check(N, circle(0.5, {1.0, 0.4, 0.2}), 1000000, 132);
    double secs = timer.seconds();
    bool pass = r1.rel_err < 1e-2 && r2.rel_err < 1e-2 && secs < 120.0;
    std::snprintf(buf, sizeof buf, "rel err %.3e, %.3e (tol 1e-2), %.1f s", r1.rel_err,
                  r2.rel_err, secs);
    report(13, "crofton formula", pass, buf);
}

}  // namespace

int main() {
    Timer total;
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    criterion_12();
    criterion_13();
    std::printf("---\n%d/13 criteria passed in %.1f s\n", 13 - g_failures, total.seconds());
    return g_failures;
}
