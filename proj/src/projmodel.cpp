#include "cfsphere/projmodel.hpp"

#include <cmath>

namespace cfs {

namespace {

double max_abs_component(const Vec3& v) {
    return std::max({std::fabs(v.x), std::fabs(v.y), std::fabs(v.z)});
}

}  // namespace

RayPoint ray_normalize(const Vec3& v) {
    double m = max_abs_component(v);
    if (m == 0.0) throw ZeroVector("ray_normalize");
    Vec3 u = v / m;
    return {u / norm(u)};
}

TangentVec tangent_canonical(const Vec3& v, const Vec3& w) {
    double m = max_abs_component(v);
    if (m == 0.0) throw ZeroVector("tangent_canonical");
    Vec3 vs = v / m;
    Vec3 ws = w / m;
    double n2 = dot(vs, vs);
    Vec3 perp = ws - (dot(ws, vs) / n2) * vs;
    double n = std::sqrt(n2);
    return {vs / n, perp / n};
}

OrientedLine line_through(const Vec3& v0, const Vec3& v1) {
    Vec3 alpha = cross(v0, v1);  // alpha(u) = det(v0, v1, u)
    if (norm(alpha) < kDependenceTol * norm(v0) * norm(v1))
        throw DegenerateSpan("line_through");
    return {ray_normalize(alpha)};
}

SL3 sl3_normalize(const Mat3& m) {
    double d = det(m);
    if (d <= 0.0) throw Error("sl3_normalize: determinant must be positive");
    return {(1.0 / std::cbrt(d)) * m};
}

SL3 sl3_inverse(const SL3& g) { return {inverse(g.m)}; }

RayPoint sl3_act(const SL3& g, const RayPoint& p) { return ray_normalize(g.m * p.rep); }

// Covectors transform by xi -> xi g^-1, i.e. the representative row vector
// maps through the inverse-transpose.
RayPoint sl3_act_covector(const SL3& g, const RayPoint& xi) {
    return ray_normalize(transpose(inverse(g.m)) * xi.rep);
}

OrientedLine sl3_act(const SL3& g, const OrientedLine& line) {
    return {sl3_act_covector(g, line.covector)};
}

TangentVec sl3_act(const SL3& g, const TangentVec& t) {
    return tangent_canonical(g.m * t.base, g.m * t.dir);
}

}  // namespace cfs
