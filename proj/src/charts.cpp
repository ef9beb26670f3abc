#include "cfsphere/charts.hpp"

#include <cmath>

namespace cfs {

Chart chart_of(const Vec3& v) {
    int k = 0;
    double best = std::fabs(v.x);
    if (std::fabs(v.y) > best) { k = 1; best = std::fabs(v.y); }
    if (std::fabs(v.z) > best) { k = 2; best = std::fabs(v.z); }
    if (best == 0.0) throw ZeroVector("chart_of");
    return Chart{2 * k + (v[k] > 0.0 ? 0 : 1)};
}

ChartCoords to_chart(const Chart& c, const Vec3& v) {
    double vk = v[c.axis()];
    if (c.sgn() * vk <= 0.0) throw OutOfChart("to_chart: wrong hemisphere");
    double x1 = c.sgn() * v[c.slot_a()] / vk;
    double x2 = c.sgn() * v[c.slot_b()] / vk;
    if (std::fabs(x1) > kChartDomain || std::fabs(x2) > kChartDomain)
        throw OutOfChart("to_chart: beyond domain bound");
    return {x1, x2};
}

ChartTangent to_chart_tangent(const Chart& c, const Vec3& v, const Vec3& w) {
    ChartCoords xc = to_chart(c, v);
    double vk = v[c.axis()];
    double s = c.sgn();
    double u1 = s * (w[c.slot_a()] * vk - v[c.slot_a()] * w[c.axis()]) / (vk * vk);
    double u2 = s * (w[c.slot_b()] * vk - v[c.slot_b()] * w[c.axis()]) / (vk * vk);
    return {xc.x1, xc.x2, u1, u2};
}

}  // namespace cfs
