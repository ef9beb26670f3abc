#include "cfsphere/conics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>

#include "cfsphere/rng.hpp"

namespace cfs {

namespace {

constexpr double kPi = 3.14159265358979323846;

Eigen::Matrix3d to_eigen(const Mat3& m) {
    Eigen::Matrix3d r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r(i, j) = m(i, j);
    return r;
}

Mat3 from_eigen(const Eigen::Matrix3d& m) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r(i, j) = m(i, j);
    return r;
}

double frobenius(const ConicQuadric& Q) {
    double s = 0.0;
    for (int i = 0; i < 9; ++i) s += Q.q_re.a[i] * Q.q_re.a[i] + Q.q_im.a[i] * Q.q_im.a[i];
    return std::sqrt(s);
}

// lambda_min of Re(e^{i theta} Q) for Q scaled to unit Frobenius norm.
double min_eig_rotated(const Eigen::Matrix3d& q1, const Eigen::Matrix3d& q2, double theta) {
    Eigen::Matrix3d m = std::cos(theta) * q1 - std::sin(theta) * q2;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es;
    es.computeDirect(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

struct PhaseOpt {
    double theta;
    double min_eig;
};

// Sweep 720 samples over [0, 2pi), then golden-section refine the best
// bracket.  The optimum phase makes Re(e^{i theta} Q) as positive definite
// as the conic allows.
PhaseOpt best_phase(const ConicQuadric& Q) {
    double f = frobenius(Q);
    if (f == 0.0) throw DegenerateConic("zero form");
    Eigen::Matrix3d q1 = to_eigen(Q.q_re) / f;
    Eigen::Matrix3d q2 = to_eigen(Q.q_im) / f;

    const int n = 720;
    double best_theta = 0.0, best_val = -1e300;
    for (int k = 0; k < n; ++k) {
        double th = 2.0 * kPi * k / n;
        double v = min_eig_rotated(q1, q2, th);
        if (v > best_val) {
            best_val = v;
            best_theta = th;
        }
    }
    double lo = best_theta - 2.0 * kPi / n;
    double hi = best_theta + 2.0 * kPi / n;
    const double gr = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = min_eig_rotated(q1, q2, x1), f2 = min_eig_rotated(q1, q2, x2);
    for (int it = 0; it < 90; ++it) {
        if (f1 < f2) {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + gr * (b - a);
            f2 = min_eig_rotated(q1, q2, x2);
        } else {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - gr * (b - a);
            f1 = min_eig_rotated(q1, q2, x1);
        }
    }
    double th = 0.5 * (a + b);
    return {th, min_eig_rotated(q1, q2, th)};
}

Complex cdet(const ConicQuadric& Q) {
    auto e = [&](int i, int j) { return Q.entry(i, j); };
    return e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) -
           e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0)) +
           e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0));
}

}  // namespace

ConicQuadric ConicQuadric::diagonal(Complex a0, Complex a1, Complex a2) {
    ConicQuadric Q;
    Q.q_re(0, 0) = a0.real(); Q.q_im(0, 0) = a0.imag();
    Q.q_re(1, 1) = a1.real(); Q.q_im(1, 1) = a1.imag();
    Q.q_re(2, 2) = a2.real(); Q.q_im(2, 2) = a2.imag();
    return Q;
}

ConicQuadric ConicQuadric::from_pq(double p, double q) {
    return diagonal(std::polar(1.0, p), std::polar(1.0, q), std::polar(1.0, -p));
}

ConicQuadric ConicQuadric::congruence(const Mat3& g) const {
    Mat3 gt = transpose(g);
    return {gt * q_re * g, gt * q_im * g};
}

Complex ConicQuadric::bilinear(const Vec3& u, const Vec3& v) const {
    double re = dot(u, q_re * v);
    double im = dot(u, q_im * v);
    return {re, im};
}

void ConicQuadric::validate() const {
    double f = frobenius(*this);
    if (f == 0.0) throw DegenerateConic("zero form");
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            if (std::fabs(q_re(i, j) - q_re(j, i)) > 1e-14 * f ||
                std::fabs(q_im(i, j) - q_im(j, i)) > 1e-14 * f)
                throw DegenerateConic("form not symmetric");
        }
    if (std::abs(cdet(*this)) / (f * f * f) < 1e-10) throw DegenerateConic("form degenerate");
}

bool has_real_points(const ConicQuadric& Q) {
    Q.validate();
    return best_phase(Q).min_eig <= 1e-10;
}

NormalizedConic normalize_conic(const ConicQuadric& Q) {
    Q.validate();
    PhaseOpt ph = best_phase(Q);
    if (ph.min_eig <= 1e-10) throw HasRealPoints("normalize_conic");

    // Q' = e^{i theta*} Q has positive-definite real part; diagonalize the
    // imaginary part against it.
    double c = std::cos(ph.theta), s = std::sin(ph.theta);
    Eigen::Matrix3d q1 = c * to_eigen(Q.q_re) - s * to_eigen(Q.q_im);
    Eigen::Matrix3d q2 = s * to_eigen(Q.q_re) + c * to_eigen(Q.q_im);
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::Matrix3d> ges(q2, q1,
                                                                  Eigen::ComputeEigenvectors | Eigen::Ax_lBx);
    if (ges.info() != Eigen::Success)
        throw NotSimultaneouslyDiagonalizable("generalized eigensolver failed");
    Eigen::Matrix3d B = ges.eigenvectors();  // B^T q1 B = I, B^T q2 B = diag(lam)
    Eigen::Vector3d lam = ges.eigenvalues();

    double off = (B.transpose() * q2 * B - lam.asDiagonal().toDenseMatrix()).cwiseAbs().maxCoeff();
    double scale = std::max(1.0, lam.cwiseAbs().maxCoeff());
    if (off > 1e-8 * scale)
        throw NotSimultaneouslyDiagonalizable("off-diagonal residual too large");

    // Diagonal entries of B^T Q' B are 1 + i lam_k = r_k e^{i alpha_k}.
    // Scale columns to unit modulus entries, sort phases descending, and
    // re-center with a global phase so the extremes sit at +-p.
    struct Ent { double alpha, r; int idx; };
    std::array<Ent, 3> ents;
    for (int k = 0; k < 3; ++k)
        ents[k] = {std::atan(lam(k)), std::sqrt(1.0 + lam(k) * lam(k)), k};
    std::sort(ents.begin(), ents.end(), [](const Ent& a, const Ent& b) {
        if (a.alpha != b.alpha) return a.alpha > b.alpha;
        if (a.r != b.r) return a.r < b.r;
        return a.idx < b.idx;
    });

    double phi = -0.5 * (ents[0].alpha + ents[2].alpha);
    double p = 0.5 * (ents[0].alpha - ents[2].alpha);
    double q = ents[1].alpha + phi;

    Eigen::Matrix3d g;
    for (int k = 0; k < 3; ++k) g.col(k) = B.col(ents[k].idx) / std::sqrt(ents[k].r);
    if (g.determinant() < 0.0) g.col(2) = -g.col(2);  // sign flip preserves the diagonal

    NormalizedConic nc;
    nc.p = p;
    nc.q = q;
    nc.frame = sl3_normalize(from_eigen(g));
    nc.phase = ph.theta + phi;
    return nc;
}

LineConicRoots line_conic_intersect(const ConicQuadric& Q, const Vec3& v, const Vec3& w) {
    if (norm(cross(v, w)) < kDependenceTol * norm(v) * norm(w))
        throw DegenerateSpan("line_conic_intersect");

    Complex A = Q.quadratic(w);
    Complex B = Q.bilinear(v, w);
    Complex C = Q.quadratic(v);

    LineConicRoots out;
    double lead_scale = std::abs(A) + std::abs(B) + std::abs(C);
    Complex t1, t2;
    if (std::abs(A) < 1e-13 * lead_scale) {
        // One intersection at t = infinity; use Q(w + s v) = 0 and invert.
        out.near_infinity = true;
        Complex disc = std::sqrt(B * B - A * C);
        Complex s1 = (-B + disc) / C, s2 = (-B - disc) / C;
        if (std::abs(s1) < std::abs(s2)) std::swap(s1, s2);
        Complex finite = 1.0 / s1;
        Complex infinite(1e300, finite.imag() > 0.0 ? -1e300 : 1e300);
        out.t_plus = finite.imag() > 0.0 ? finite : infinite;
        out.t_minus = finite.imag() > 0.0 ? infinite : finite;
        return out;
    } else {
        Complex disc = std::sqrt(B * B - A * C);
        Complex u1 = -B - disc, u2 = -B + disc;
        if (std::abs(u1) < std::abs(u2)) std::swap(u1, u2);
        t1 = u1 / A;
        t2 = C / (A * t1);
        if (std::abs(t1 - t2) < 1e-10) throw TangentLine("line_conic_intersect");
    }
    if (t1.imag() < 0.0) std::swap(t1, t2);
    out.t_plus = t1;
    out.t_minus = t2;
    return out;
}

UnitSpeedBasis unit_speed_basis(const ConicQuadric& Q, const Vec3& v, const Vec3& w) {
    LineConicRoots roots = line_conic_intersect(Q, v, w);
    Complex t = roots.t_plus;
    double t2 = t.imag();
    if (t2 <= 0.0) throw TangentLine("unit_speed_basis: no Im > 0 root");
    return {t.real() / t2, std::norm(t) / t2};
}

StabilizerReport stabilizer_check(const NormalizedConic& nc) {
    const double tol = 1e-12;
    ConicQuadric Qn = nc.normal_form();
    auto residual = [&](const Mat3& g) {
        ConicQuadric Qg = Qn.congruence(g);
        double r = 0.0;
        for (int i = 0; i < 9; ++i)
            r = std::max({r, std::fabs(Qg.q_re.a[i] - Qn.q_re.a[i]),
                          std::fabs(Qg.q_im.a[i] - Qn.q_im.a[i])});
        return r;
    };

    StabilizerReport rep;
    if (std::fabs(nc.p) <= tol && std::fabs(nc.q) <= tol) {
        rep.kind = StabilizerReport::Kind::full_rotation;
        CounterRng rng(20240);
        for (int k = 0; k < 16; ++k) {
            // Random rotation from a normalized quaternion.
            double a = rng.normal(), b = rng.normal(), c = rng.normal(), d = rng.normal();
            double n = std::sqrt(a * a + b * b + c * c + d * d);
            a /= n; b /= n; c /= n; d /= n;
            Mat3 R;
            R(0, 0) = 1 - 2 * (c * c + d * d); R(0, 1) = 2 * (b * c - a * d); R(0, 2) = 2 * (b * d + a * c);
            R(1, 0) = 2 * (b * c + a * d); R(1, 1) = 1 - 2 * (b * b + d * d); R(1, 2) = 2 * (c * d - a * b);
            R(2, 0) = 2 * (b * d - a * c); R(2, 1) = 2 * (c * d + a * b); R(2, 2) = 1 - 2 * (b * b + c * c);
            rep.max_residual = std::max(rep.max_residual, residual(R));
            ++rep.generators_checked;
        }
    } else if (std::fabs(std::fabs(nc.q) - nc.p) <= tol) {
        rep.kind = nc.q > 0 ? StabilizerReport::Kind::rotation_xy : StabilizerReport::Kind::rotation_yz;
        // q = +p: e^{ip}(x^2 + y^2) + e^{-ip} z^2 is circular in (x, y);
        // q = -p: circular in (y, z).
        for (int k = 1; k <= 12; ++k) {
            double t = 0.5237 * k;
            double ct = std::cos(t), st = std::sin(t);
            Mat3 R = Mat3::identity();
            if (nc.q > 0) {
                R(0, 0) = ct; R(0, 1) = -st; R(1, 0) = st; R(1, 1) = ct;
            } else {
                R(1, 1) = ct; R(1, 2) = -st; R(2, 1) = st; R(2, 2) = ct;
            }
            rep.max_residual = std::max(rep.max_residual, residual(R));
            ++rep.generators_checked;
        }
    } else {
        rep.kind = StabilizerReport::Kind::sign_flips;
        const std::array<std::array<double, 3>, 4> signs{{{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}}};
        for (const auto& s : signs) {
            Mat3 D;
            D(0, 0) = s[0]; D(1, 1) = s[1]; D(2, 2) = s[2];
            rep.max_residual = std::max(rep.max_residual, residual(D));
            ++rep.generators_checked;
        }
    }
    return rep;
}

}  // namespace cfs
