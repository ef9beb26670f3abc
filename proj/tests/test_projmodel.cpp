#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cfsphere/projmodel.hpp"
#include "cfsphere/rng.hpp"
#include "oracles.hpp"

using namespace cfs;

TEST_CASE("ray_normalize canonical representatives") {
    RayPoint a = ray_normalize({2, 0, 0});
    CHECK(a.rep.x == 1.0);
    CHECK(a.rep.y == 0.0);

    RayPoint b = ray_normalize({0, -3, 0});
    CHECK(b.rep.y == -1.0);  // sign preserved: [-v] != [v]

    RayPoint c = ray_normalize({1, 1, 1});
    CHECK(c.rep.x == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));

    CHECK_THROWS_AS(ray_normalize({0, 0, 0}), ZeroVector);
}

TEST_CASE("ray_normalize is bitwise stable under exact positive rescaling") {
    CounterRng rng(11);
    const double scales[] = {2.0, 0.5, 4.0, 0.25, 8.0};
    for (int k = 0; k < 200; ++k) {
        Vec3 v{std::round(rng.uniform(-8, 8)), std::round(rng.uniform(-8, 8)),
               std::round(rng.uniform(-8, 8))};
        if (norm(v) == 0.0) continue;
        RayPoint base = ray_normalize(v);
        for (double s : scales) {
            RayPoint scaled = ray_normalize(s * v);
            CHECK(scaled.rep.x == base.rep.x);
            CHECK(scaled.rep.y == base.rep.y);
            CHECK(scaled.rep.z == base.rep.z);
        }
    }
}

TEST_CASE("tangent_canonical removes the b-shift and a-scale") {
    TangentVec t = tangent_canonical({1, 0, 0}, {5, 1, 0});
    CHECK(t.base.x == 1.0);
    CHECK(t.dir.x == 0.0);
    CHECK(t.dir.y == doctest::Approx(1.0).epsilon(1e-15));

    // (2,0,0; 0,2,0) is the class of (1,0,0; 0,1,0): same canonical output.
    TangentVec u = tangent_canonical({2, 0, 0}, {0, 2, 0});
    CHECK(u.base.x == 1.0);
    CHECK(u.dir.y == doctest::Approx(1.0).epsilon(1e-15));

    TangentVec z = tangent_canonical({1, 0, 0}, {3, 0, 0});
    CHECK(norm(z.dir) == 0.0);

    CHECK_THROWS_AS(tangent_canonical({0, 0, 0}, {1, 0, 0}), ZeroVector);
}

TEST_CASE("tangent class invariance") {
    CounterRng rng(12);
    for (int k = 0; k < 200; ++k) {
        Vec3 v = test::random_vec(rng), w = test::random_vec(rng);
        if (norm(v) < 0.1) continue;
        double a = rng.uniform(0.1, 10.0), b = rng.uniform(-10.0, 10.0);
        TangentVec t0 = tangent_canonical(v, w);
        TangentVec t1 = tangent_canonical(a * v, a * w + b * v);
        CHECK(norm(t0.base - t1.base) < 1e-13);
        CHECK(norm(t0.dir - t1.dir) < 1e-12 * (1.0 + norm(t0.dir)) * (std::fabs(b) + a + 1));
    }
    // exact dyadic scalings reproduce output bits
    Vec3 v{3, -1, 2}, w{1, 4, -2};
    TangentVec t0 = tangent_canonical(v, w);
    TangentVec t1 = tangent_canonical(2 * v, 2 * w);
    CHECK(t0.base.x == t1.base.x);
    CHECK(t0.dir.y == t1.dir.y);
    CHECK(t0.dir.z == t1.dir.z);
}

TEST_CASE("line_through and orientation") {
    OrientedLine l12 = line_through({1, 0, 0}, {0, 1, 0});
    CHECK(l12.covector.rep.z == 1.0);

    OrientedLine l21 = line_through({0, 1, 0}, {1, 0, 0});
    CHECK(l21.covector.rep.z == -1.0);

    OrientedLine l1p = line_through({1, 0, 0}, {1, 1, 0});
    CHECK(l1p.covector.rep.z == 1.0);

    CHECK_THROWS_AS(line_through({1, 0, 0}, {2, 0, 0}), DegenerateSpan);
}

TEST_CASE("sl3 action: identity, equivariance, incidence") {
    SL3 id{Mat3::identity()};
    RayPoint p = ray_normalize({1, 2, 3});
    RayPoint pid = sl3_act(id, p);
    CHECK(norm(pid.rep - p.rep) == 0.0);

    CounterRng rng(13);
    for (int k = 0; k < 1000; ++k) {
        SL3 g = test::random_sl3(rng);
        Vec3 v0 = test::random_vec(rng), v1 = test::random_vec(rng);
        if (norm(cross(v0, v1)) < 1e-2) continue;

        // equivariance of line_through
        OrientedLine moved = sl3_act(g, line_through(v0, v1));
        OrientedLine direct = line_through(g.m * v0, g.m * v1);
        CHECK(norm(moved.covector.rep - direct.covector.rep) < 1e-10);

        // incidence xi . x = 0 is preserved
        RayPoint xi = moved.covector;
        RayPoint x = sl3_act(g, ray_normalize(v0));
        CHECK(std::fabs(dot(xi.rep, x.rep)) < 1e-12);
    }
}
