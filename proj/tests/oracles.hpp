#ifndef CFSPHERE_TEST_ORACLES_HPP
#define CFSPHERE_TEST_ORACLES_HPP

// Test-only oracles, kept independent of the implementation paths they
// check.  The norm oracle goes through the quadratic root of the line-conic
// intersection instead of the closed-form norm expression.

#include <complex>

#include "cfsphere/conics.hpp"
#include "cfsphere/finsler.hpp"
#include "cfsphere/projmodel.hpp"
#include "cfsphere/rng.hpp"

namespace cfs::test {

// F = Im(t)/|t|^2 for the Im > 0 root t of Q(v + t w) = 0.
inline double norm_root_oracle(const FinslerNorm& N, const Vec3& v, const Vec3& w) {
    LineConicRoots roots = line_conic_intersect(N.conic.normal_form(), v, w);
    return roots.t_plus.imag() / std::norm(roots.t_plus);
}

// Random SL(3,R) element with moderate conditioning.
inline SL3 random_sl3(CounterRng& rng, double spread = 1.0) {
    for (;;) {
        Mat3 g;
        for (int i = 0; i < 9; ++i) g.a[i] = rng.uniform(-spread, spread);
        double d = det(g);
        if (std::fabs(d) < 0.2 * spread * spread * spread) continue;
        if (d < 0)
            for (int j = 0; j < 3; ++j) g(0, j) = -g(0, j);
        return sl3_normalize(g);
    }
}

inline Vec3 random_vec(CounterRng& rng) { return {rng.normal(), rng.normal(), rng.normal()}; }

}  // namespace cfs::test

#endif
