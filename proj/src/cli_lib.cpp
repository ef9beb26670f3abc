#include "cli_lib.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cfsphere/coframe.hpp"
#include "cfsphere/flows.hpp"
#include "cfsphere/rng.hpp"

namespace cfs::cli {

namespace {

using nlohmann::json;
constexpr double kTwoPi = 6.283185307179586;

double tol_of(const RunConfig& cfg, const std::string& key, double dflt) {
    auto it = cfg.tol_override.find(key);
    return it == cfg.tol_override.end() ? dflt : it->second;
}

Vec3 vec_of(const std::vector<double>& v) {
    if (v.size() != 3) throw Error("expected 3 components");
    return {v[0], v[1], v[2]};
}

std::string mat_json(const Mat3& m) {
    std::string s = "[";
    for (int i = 0; i < 3; ++i) {
        s += "[";
        for (int j = 0; j < 3; ++j) {
            s += format_g17(m(i, j));
            if (j < 2) s += ",";
        }
        s += i < 2 ? "]," : "]";
    }
    return s + "]";
}

// Random interior Sigma points, uniform over charts.
std::vector<SigmaPoint> random_sigma_points(const FinslerNorm& N, int n, std::uint64_t seed) {
    CounterRng rng(seed);
    std::vector<SigmaPoint> pts;
    pts.reserve(n);
    for (int k = 0; k < n; ++k) {
        Chart c{static_cast<int>(rng.next_u64() % 6)};
        pts.push_back(sigma_point(N, c, rng.uniform(-0.9, 0.9), rng.uniform(-0.9, 0.9),
                                  rng.uniform(0.0, kTwoPi)));
    }
    return pts;
}

std::vector<Vec3> test_curve(int n, double radius, const Vec3& axis_hint) {
    Vec3 axis = axis_hint / norm(axis_hint);
    Vec3 seed{0, 0, 1};
    if (std::fabs(axis.z) > 0.8) seed = Vec3{1, 0, 0};
    Vec3 t1 = cross(axis, seed);
    t1 = t1 / norm(t1);
    Vec3 t2 = cross(axis, t1);
    std::vector<Vec3> curve;
    curve.reserve(n);
    for (int k = 0; k < n; ++k) {
        double t = kTwoPi * k / n;
        curve.push_back(std::cos(radius) * axis +
                        std::sin(radius) * (std::cos(t) * t1 + std::sin(t) * t2));
    }
    return curve;
}

}  // namespace

std::string format_g17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_file(const std::string& path, const std::string& content) {
    std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw Error("cannot open " + tmp);
        out << content;
        if (!out) throw Error("write failed: " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

ConicQuadric load_conic(const RunConfig& cfg) {
    if (cfg.p.has_value() || cfg.q.has_value()) {
        double p = cfg.p.value_or(0.0), q = cfg.q.value_or(0.0);
        return ConicQuadric::from_pq(p, q);
    }
    if (cfg.conic_spec.empty()) throw Error("no conic given: use --p/--q or --conic");

    std::string text = cfg.conic_spec;
    if (text.find('{') == std::string::npos) {
        std::ifstream in(text);
        if (!in) throw Error("cannot read conic file: " + text);
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    json j = json::parse(text);
    std::string type = j.at("type").get<std::string>();
    if (type == "pq") {
        return ConicQuadric::from_pq(j.at("p").get<double>(), j.at("q").get<double>());
    }
    if (type == "matrix") {
        ConicQuadric Q;
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < 3; ++k) {
                Q.q_re(i, k) = j.at("re").at(i).at(k).get<double>();
                Q.q_im(i, k) = j.at("im").at(i).at(k).get<double>();
            }
        return Q;
    }
    throw Error("unknown conic type: " + type);
}

FinslerNorm load_norm(const RunConfig& cfg) {
    if (cfg.p.has_value() || cfg.q.has_value()) {
        FinslerNorm N = FinslerNorm::from_pq(cfg.p.value_or(0.0), cfg.q.value_or(0.0));
        N.perturb_eps = cfg.perturb;
        return N;
    }
    NormalizedConic nc = normalize_conic(load_conic(cfg));
    FinslerNorm N;
    N.conic = nc;
    N.perturb_eps = cfg.perturb;
    return N;
}

int cmd_normalize(const RunConfig& cfg, std::string& json_out) {
    ConicQuadric Q = load_conic(cfg);
    if (has_real_points(Q)) {
        json_out = "{\"had_real_points\":true}\n";
        return 2;
    }
    NormalizedConic nc = normalize_conic(Q);
    std::ostringstream os;
    os << "{\"p\":" << format_g17(nc.p) << ",\"q\":" << format_g17(nc.q)
       << ",\"frame\":" << mat_json(nc.frame.m) << ",\"phase\":" << format_g17(nc.phase)
       << ",\"had_real_points\":false}\n";
    json_out = os.str();
    return 0;
}

int cmd_eval(const RunConfig& cfg, std::string& json_out) {
    FinslerNorm N = load_norm(cfg);
    Vec3 v = vec_of(cfg.vec_v), w = vec_of(cfg.vec_w);
    double f = finsler_norm(N, v, w);
    double defect = asymmetry_defect(N, v, w);
    double rhs = asymmetry_identity_rhs(N, v, w);
    std::ostringstream os;
    os << "{\"F\":" << format_g17(f) << ",\"F_reversed\":" << format_g17(finsler_norm(N, v, -w))
       << ",\"asymmetry_defect\":" << format_g17(defect)
       << ",\"asymmetry_identity\":" << format_g17(rhs) << "}\n";
    json_out = os.str();
    return 0;
}

int cmd_indicatrix(const RunConfig& cfg) {
    FinslerNorm N = load_norm(cfg);
    RayPoint base = ray_normalize(vec_of(cfg.base));
    IndicatrixCurve curve = indicatrix_sample(N, base, cfg.samples);
    std::ostringstream csv;
    csv << "theta,w1,w2\n";
    for (size_t k = 0; k < curve.theta.size(); ++k)
        csv << format_g17(curve.theta[k]) << "," << format_g17(curve.w1[k]) << ","
            << format_g17(curve.w2[k]) << "\n";
    write_file(cfg.out_dir + "/indicatrix.csv", csv.str());

    QuarticFitReport fit = quartic_fit(curve);
    std::ostringstream js;
    js << "{\"deg2_residual\":" << format_g17(fit.deg2_residual)
       << ",\"deg4_residual\":" << format_g17(fit.deg4_residual)
       << ",\"winding\":" << indicatrix_winding(curve)
       << ",\"convex\":" << (indicatrix_convex(curve) ? "true" : "false") << "}\n";
    write_file(cfg.out_dir + "/indicatrix_fit.json", js.str());
    std::cout << "indicatrix: " << curve.theta.size() << " samples -> " << cfg.out_dir << "\n";
    return 0;
}

int cmd_geodesic(const RunConfig& cfg) {
    FinslerNorm N = load_norm(cfg);
    GeodesicTrace tr = geodesic_line(N, vec_of(cfg.vec_v), vec_of(cfg.vec_w), cfg.samples);
    std::ostringstream csv;
    csv << "s,x1,x2,chart,unit_residual\n";
    for (const TraceSample& s : tr.samples) {
        Chart c = chart_of(s.point.rep);
        ChartCoords xc = to_chart(c, s.point.rep);
        csv << format_g17(s.s) << "," << format_g17(xc.x1) << "," << format_g17(xc.x2) << ","
            << c.index << "," << format_g17(s.unit_residual) << "\n";
    }
    write_file(cfg.out_dir + "/geodesic.csv", csv.str());
    std::cout << "geodesic: length " << format_g17(tr.total_length) << ", closure "
              << format_g17(trace_closure_residual(tr)) << " -> " << cfg.out_dir << "\n";
    return 0;
}

int cmd_curvature(const RunConfig& cfg) {
    FinslerNorm N = load_norm(cfg);
    std::vector<SigmaPoint> pts = random_sigma_points(N, cfg.grid, cfg.seed);
    std::ostringstream csv;
    csv << "chart,x1,x2,theta,K\n";
    double worst = 0.0;
    for (const SigmaPoint& pt : pts) {
        double K = scalars_at(N, pt).K;
        worst = std::max(worst, std::fabs(K - 1.0));
        csv << pt.chart.index << "," << format_g17(pt.x1) << "," << format_g17(pt.x2) << ","
            << format_g17(pt.theta) << "," << format_g17(K) << "\n";
    }
    write_file(cfg.out_dir + "/curvature.csv", csv.str());
    std::cout << "curvature: max |K-1| = " << format_g17(worst) << " over " << cfg.grid
              << " points -> " << cfg.out_dir << "\n";
    return 0;
}

namespace {

std::string invariant_report_json(const Invariants& inv) {
    std::ostringstream os;
    os << "{\"I\":" << format_g17(inv.I) << ",\"J\":" << format_g17(inv.J)
       << ",\"K\":" << format_g17(inv.K) << ",\"T\":" << format_g17(inv.T)
       << ",\"a\":[" << format_g17(inv.a.real()) << "," << format_g17(inv.a.imag())
       << "],\"b\":[" << format_g17(inv.b.real()) << "," << format_g17(inv.b.imag())
       << "],\"p\":" << format_g17(inv.cons_p) << ",\"q\":" << format_g17(inv.cons_q)
       << ",\"W\":" << format_g17(inv.W)
       << ",\"w\":[" << format_g17(inv.w.real()) << "," << format_g17(inv.w.imag())
       << "],\"residuals\":{\"bianchi\":[" << format_g17(inv.bianchi_r1) << ","
       << format_g17(inv.bianchi_r2) << "],\"flatness\":[" << format_g17(inv.flat_rho1) << ","
       << format_g17(inv.flat_rho2) << "]}}";
    return os.str();
}

}  // namespace

int cmd_invariants(const RunConfig& cfg, std::string& json_out) {
    FinslerNorm N = load_norm(cfg);
    SigmaPoint pt;
    if (cfg.point.size() == 4) {
        pt = sigma_point(N, Chart{static_cast<int>(cfg.point[0])}, cfg.point[1], cfg.point[2],
                         cfg.point[3]);
    } else {
        pt = sigma_point(N, Chart{0}, 0.3, -0.2, 0.9);
    }
    Invariants inv = invariants_at(N, pt);
    json_out = invariant_report_json(inv) + "\n";
    return 0;
}

int cmd_leaf(const RunConfig& cfg) {
    FinslerNorm N = load_norm(cfg);
    SigmaPoint pt = sigma_point(N, Chart{0}, 0.3, -0.2, 0.9);
    Invariants inv = invariants_at(N, pt);
    LeafState s0;
    s0.T = inv.T;
    s0.a = inv.a;
    s0.b = inv.b;
    ControlPath path{{Vec3{1, 0, 0}, cfg.time}};
    std::vector<LeafSample> traj = leaf_integrate(s0, path, cfg.step);

    std::ostringstream csv;
    csv << "t,g11,g12,g13,g21,g22,g23,g31,g32,g33,T,a_re,a_im,b_re,b_im,W,w_re,w_im\n";
    for (const LeafSample& smp : traj) {
        csv << format_g17(smp.t);
        for (int i = 0; i < 9; ++i) csv << "," << format_g17(smp.state.g.a[i]);
        csv << "," << format_g17(smp.state.T) << "," << format_g17(smp.state.a.real()) << ","
            << format_g17(smp.state.a.imag()) << "," << format_g17(smp.state.b.real()) << ","
            << format_g17(smp.state.b.imag()) << "," << format_g17(smp.W) << ","
            << format_g17(smp.w.real()) << "," << format_g17(smp.w.imag()) << "\n";
    }
    write_file(cfg.out_dir + "/leaf.csv", csv.str());

    double wmin = 1e300, wmax = -1e300;
    for (const LeafSample& smp : traj) {
        wmin = std::min(wmin, smp.W);
        wmax = std::max(wmax, smp.W);
    }
    std::cout << "leaf: " << traj.size() << " samples, W spread " << format_g17(wmax - wmin)
              << " -> " << cfg.out_dir << "\n";
    return 0;
}

int cmd_crofton(const RunConfig& cfg, std::string& json_out) {
    FinslerNorm N = load_norm(cfg);
    std::vector<Vec3> curve = test_curve(512, 0.8, Vec3{0.2, -0.1, 1.0});
    CroftonReport rep = crofton_check(N, curve, cfg.samples, cfg.seed);
    std::ostringstream os;
    os << "{\"lhs\":" << format_g17(rep.lhs) << ",\"rhs_plus\":" << format_g17(rep.rhs_plus)
       << ",\"rhs_minus\":" << format_g17(rep.rhs_minus)
       << ",\"rel_err\":" << format_g17(rep.rel_err) << "}\n";
    json_out = os.str();
    return 0;
}

int cmd_verify(const RunConfig& cfg, std::string& json_out) {
    FinslerNorm N = load_norm(cfg);
    struct Check {
        std::string name;
        double residual;
        double tol;
        bool pass;
    };
    std::vector<Check> checks;
    auto add = [&](const std::string& name, double residual, double tol) {
        checks.push_back({name, residual, tol, std::fabs(residual) <= tol});
    };

    int n_pts = std::max(4, cfg.grid);
    std::vector<SigmaPoint> pts = random_sigma_points(N, n_pts, cfg.seed);

    // K = 1
    double worst_k = 0.0;
    for (const SigmaPoint& pt : pts) worst_k = std::max(worst_k, std::fabs(scalars_at(N, pt).K - 1.0));
    add("curvature_K_minus_1", worst_k, tol_of(cfg, "k1", 1e-5));

    // Bianchi identities
    double worst_b = 0.0;
    for (const SigmaPoint& pt : pts) {
        auto [r1, r2] = bianchi_residuals(N, pt);
        worst_b = std::max({worst_b, std::fabs(r1), std::fabs(r2)});
    }
    add("bianchi", worst_b, tol_of(cfg, "bianchi", 1e-5));

    // projective flatness on a smaller set (second derivatives)
    int n_flat = std::min(5, n_pts);
    double worst_f = 0.0;
    double wmin = 1e300, wmax = -1e300;
    for (int k = 0; k < n_pts; ++k) {
        if (k < n_flat) {
            Invariants inv = invariants_at(N, pts[k]);
            worst_f = std::max({worst_f, std::fabs(inv.flat_rho1), std::fabs(inv.flat_rho2)});
            wmin = std::min(wmin, inv.W);
            wmax = std::max(wmax, inv.W);
        }
    }
    add("projective_flatness", worst_f, tol_of(cfg, "flatness", 1e-3));
    add("W_spread", (wmax - wmin) / std::max(1.0, std::fabs(wmax)), tol_of(cfg, "conservation", 1e-4));

    // leaf drift
    {
        Invariants inv = invariants_at(N, pts[0]);
        LeafState s0;
        s0.T = inv.T;
        s0.a = inv.a;
        s0.b = inv.b;
        auto traj = leaf_integrate(s0, ControlPath{{Vec3{1, 0, 0}, 5.0}}, cfg.step);
        double drift = 0.0;
        for (const LeafSample& smp : traj) drift = std::max(drift, std::fabs(smp.W - traj[0].W));
        add("leaf_W_drift_per_unit_time", drift / 5.0, tol_of(cfg, "leafdrift", 1e-8));
    }

    // geodesics: closure, straightness, unit speed, two-method agreement
    {
        CounterRng rng(cfg.seed ^ 0xabcdef);
        double worst_close = 0.0, worst_line = 0.0, worst_unit = 0.0, worst_two = 0.0;
        for (int k = 0; k < 5; ++k) {
            Vec3 v{rng.normal(), rng.normal(), rng.normal()};
            Vec3 w{rng.normal(), rng.normal(), rng.normal()};
            if (norm(cross(v, w)) < 1e-2) continue;
            GeodesicTrace tr = geodesic_line(N, v, w, 256);
            worst_close = std::max(worst_close, trace_closure_residual(tr));
            worst_line = std::max(worst_line, trace_collinearity_residual(tr));
            for (const TraceSample& s : tr.samples) worst_unit = std::max(worst_unit, s.unit_residual);
            UnitSpeedBasis ub = unit_speed_basis(N.conic.normal_form(), v, w);
            Vec3 exact = ray_normalize(std::cos(3.0) * v + std::sin(3.0) * (ub.b2 * w + ub.a2 * v)).rep;
            SigmaPoint start = sigma_point_from_tangent(N, v, w);
            GeodesicTrace el = spray_integrate(N, start, 3.0, 600);
            worst_two = std::max(worst_two, norm(el.samples.back().point.rep - exact));
        }
        add("geodesic_closure", worst_close, tol_of(cfg, "closure", 1e-8));
        add("geodesic_straightness", worst_line, tol_of(cfg, "straight", 1e-9));
        add("geodesic_unit_speed", worst_unit, tol_of(cfg, "unitspeed", 1e-9));
        add("geodesic_two_method", worst_two, tol_of(cfg, "twomethod", 1e-6));
    }

    // Jacobi conjugate points
    {
        CounterRng rng(cfg.seed ^ 0x123321);
        double worst_j = 0.0;
        for (int k = 0; k < 3; ++k) {
            Vec3 v{rng.normal(), rng.normal(), rng.normal()};
            Vec3 w{rng.normal(), rng.normal(), rng.normal()};
            if (norm(cross(v, w)) < 1e-2) continue;
            GeodesicTrace tr = geodesic_line(N, v, w, 400);
            worst_j = std::max(worst_j, std::fabs(jacobi_conjugate(N, tr) - 3.14159265358979323846));
        }
        add("jacobi_conjugate_at_pi", worst_j, tol_of(cfg, "jacobi", 1e-5));
    }

    // symmetry: asymmetry identity and antipodal invariance
    {
        CounterRng rng(cfg.seed ^ 0x55aa);
        double worst_id = 0.0;
        for (int k = 0; k < 200; ++k) {
            Vec3 v{rng.normal(), rng.normal(), rng.normal()};
            Vec3 w{rng.normal(), rng.normal(), rng.normal()};
            if (norm(cross(v, w)) < 1e-3) continue;
            worst_id = std::max(worst_id, std::fabs(asymmetry_defect(N, v, w) -
                                                    asymmetry_identity_rhs(N, v, w)));
        }
        add("asymmetry_identity", worst_id, tol_of(cfg, "symmetry", 1e-12));
        add("antipodal_invariance", antipodal_check(N, 500), tol_of(cfg, "antipodal", 1e-12));
    }

    bool all_pass = true;
    std::ostringstream os;
    os << "{\"checks\":[";
    for (size_t k = 0; k < checks.size(); ++k) {
        const Check& c = checks[k];
        all_pass = all_pass && c.pass;
        os << "{\"name\":\"" << c.name << "\",\"residual\":" << format_g17(c.residual)
           << ",\"tol\":" << format_g17(c.tol) << ",\"pass\":" << (c.pass ? "true" : "false")
           << "}";
        if (k + 1 < checks.size()) os << ",";
    }
    os << "],\"pass\":" << (all_pass ? "true" : "false") << "}\n";
    json_out = os.str();
    return all_pass ? 0 : 1;
}

int run(int argc, const char* const* argv) {
    CLI::App app{"Finsler 2-sphere toolkit: projectively flat structures of constant curvature"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string config_path;
    double p_flag = 0.0, q_flag = 0.0;
    bool p_set = false, q_set = false;
    std::vector<std::string> tol_kv;

    app.add_option("--config", config_path, "JSON config file (flags override it)");

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--conic", cfg.conic_spec, "conic JSON (inline or file path)");
        sub->add_option("--p", p_flag, "normal-form angle p")->each([&](const std::string&) { p_set = true; });
        sub->add_option("--q", q_flag, "normal-form angle q")->each([&](const std::string&) { q_set = true; });
        sub->add_option("--grid", cfg.grid, "grid / point-count parameter");
        sub->add_option("--samples", cfg.samples, "sample count");
        sub->add_option("--seed", cfg.seed, "random seed");
        sub->add_option("--out", cfg.out_dir, "output directory");
        sub->add_option("--tol-override", tol_kv, "tolerance override key=value");
        sub->add_option("--perturb", cfg.perturb, "norm perturbation epsilon (test hook)");
        sub->add_option("--v", cfg.vec_v, "vector v components")->expected(3);
        sub->add_option("--w", cfg.vec_w, "vector w components")->expected(3);
        sub->add_option("--base", cfg.base, "base point components")->expected(3);
        sub->add_option("--point", cfg.point, "sigma point: chart x1 x2 theta")->expected(4);
        sub->add_option("--length", cfg.length, "integration length");
        sub->add_option("--step", cfg.step, "integration step");
        sub->add_option("--time", cfg.time, "leaf integration time");
    };

    const char* names[] = {"normalize", "eval", "indicatrix", "geodesic", "curvature",
                           "invariants", "leaf", "crofton", "verify"};
    for (const char* name : names) add_common(app.add_subcommand(name));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        CLI::App* subp = app.get_subcommands().front();
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw Error("cannot read config: " + config_path);
            nlohmann::json j = nlohmann::json::parse(in);
            auto unset = [&](const std::string& flag) { return subp->count(flag) == 0; };
            if (!p_set && j.contains("p")) { p_flag = j["p"].get<double>(); p_set = true; }
            if (!q_set && j.contains("q")) { q_flag = j["q"].get<double>(); q_set = true; }
            if (cfg.conic_spec.empty() && j.contains("conic")) cfg.conic_spec = j["conic"].dump();
            if (j.contains("grid") && unset("--grid")) cfg.grid = j["grid"].get<int>();
            if (j.contains("samples") && unset("--samples")) cfg.samples = j["samples"].get<int>();
            if (j.contains("seed") && unset("--seed")) cfg.seed = j["seed"].get<std::uint64_t>();
            if (j.contains("out") && unset("--out")) cfg.out_dir = j["out"].get<std::string>();
            if (j.contains("tol_override"))
                for (auto& [k, v] : j["tol_override"].items())
                    cfg.tol_override.emplace(k, v.get<double>());
        }
        if (p_set) cfg.p = p_flag;
        if (q_set) cfg.q = q_flag;
        for (const std::string& kv : tol_kv) {
            auto eq = kv.find('=');
            if (eq == std::string::npos) throw Error("bad --tol-override, expected key=value");
            cfg.tol_override[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
        }
        if (cfg.out_dir.empty()) cfg.out_dir = "out";

        CLI::App* sub = app.get_subcommands().front();
        cfg.command = sub->get_name();

        std::string json_out;
        int code = 0;
        if (cfg.command == "normalize") code = cmd_normalize(cfg, json_out);
        else if (cfg.command == "eval") code = cmd_eval(cfg, json_out);
        else if (cfg.command == "indicatrix") code = cmd_indicatrix(cfg);
        else if (cfg.command == "geodesic") code = cmd_geodesic(cfg);
        else if (cfg.command == "curvature") code = cmd_curvature(cfg);
        else if (cfg.command == "invariants") code = cmd_invariants(cfg, json_out);
        else if (cfg.command == "leaf") code = cmd_leaf(cfg);
        else if (cfg.command == "crofton") code = cmd_crofton(cfg, json_out);
        else if (cfg.command == "verify") code = cmd_verify(cfg, json_out);

        if (!json_out.empty()) {
            std::cout << json_out;
            if (!cfg.out_dir.empty())
                write_file(cfg.out_dir + "/" + cfg.command + ".json", json_out);
        }
        return code;
    } catch (const HasRealPoints&) {
        std::cout << "{\"had_real_points\":true}\n";
        return 2;
    } catch (const DegenerateConic& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace cfs::cli
