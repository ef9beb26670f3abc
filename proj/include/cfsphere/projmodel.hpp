#ifndef CFSPHERE_PROJMODEL_HPP
#define CFSPHERE_PROJMODEL_HPP

#include "cfsphere/errors.hpp"
#include "cfsphere/linalg.hpp"

// The flat projective model: V = R^3, the sphere S of oriented rays, its
// dual S*, oriented lines through the incidence xi . x = 0, tangent-vector
// classes [v, w], and the SL(3,R) action g.(xi, x) = (xi g^-1, g x).

namespace cfs {

// A point of S (or of S* when the representative is read as a covector).
// The representative has unit Euclidean length; [-v] != [v].
struct RayPoint {
    Vec3 rep;
};

// An oriented projective line, stored by its dual covector ray: the line
// through [v0], [v1] has covector alpha with alpha(u) = det(v0, v1, u).
struct OrientedLine {
    RayPoint covector;
};

// Canonical representative of the class [v, w] ~ [a v, a w + b v], a > 0:
// unit base, direction Euclidean-orthogonal to it.
struct TangentVec {
    Vec3 base;
    Vec3 dir;
};

struct SL3 {
    Mat3 m;
};

inline constexpr double kDependenceTol = 1e-12;

// Scale-canonical unit representative.  Dividing by the largest-magnitude
// component first makes exactly-representable positive rescalings of the
// input produce identical output bits.
RayPoint ray_normalize(const Vec3& v);

TangentVec tangent_canonical(const Vec3& v, const Vec3& w);

OrientedLine line_through(const Vec3& v0, const Vec3& v1);

SL3 sl3_normalize(const Mat3& m);
SL3 sl3_inverse(const SL3& g);

RayPoint sl3_act(const SL3& g, const RayPoint& p);
RayPoint sl3_act_covector(const SL3& g, const RayPoint& xi);
OrientedLine sl3_act(const SL3& g, const OrientedLine& line);
TangentVec sl3_act(const SL3& g, const TangentVec& t);

}  // namespace cfs

#endif
