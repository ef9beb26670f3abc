#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli_lib.hpp"

using namespace cfs;
using cfs::cli::RunConfig;
namespace fs = std::filesystem;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_cli(std::initializer_list<std::string> args) {
    std::vector<std::string> owned{"cfsphere"};
    owned.insert(owned.end(), args);
    std::vector<const char*> argv;
    for (const std::string& s : owned) argv.push_back(s.c_str());
    return cli::run(static_cast<int>(argv.size()), argv.data());
}

fs::path temp_dir(const std::string& tag) {
    fs::path p = fs::temp_directory_path() / ("cfsphere_test_" + tag);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

}  // namespace

TEST_CASE("normalize: pq input, matrix input, real points") {
    RunConfig cfg;
    cfg.p = 0.3;
    cfg.q = 0.1;
    std::string out;
    CHECK(cli::cmd_normalize(cfg, out) == 0);
    auto j = nlohmann::json::parse(out);
    CHECK(j["p"].get<double>() == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(j["q"].get<double>() == doctest::Approx(0.1).epsilon(1e-12));
    CHECK_FALSE(j["had_real_points"].get<bool>());

    RunConfig mcfg;
    mcfg.conic_spec =
        R"({"type":"matrix",
            "re":[[0.955336489125606,0,0],[0,0.995004165278026,0],[0,0,0.955336489125606]],
            "im":[[0.29552020666133955,0,0],[0,0.09983341664682815,0],[0,0,-0.29552020666133955]]})";
    std::string mout;
    CHECK(cli::cmd_normalize(mcfg, mout) == 0);
    auto mj = nlohmann::json::parse(mout);
    CHECK(mj["p"].get<double>() == doctest::Approx(0.3).epsilon(1e-9));
    CHECK(mj["q"].get<double>() == doctest::Approx(0.1).epsilon(1e-9));

    RunConfig rcfg;
    rcfg.conic_spec =
        R"({"type":"matrix","re":[[1,0,0],[0,1,0],[0,0,-1]],"im":[[0,0,0],[0,0,0],[0,0,0]]})";
    std::string rout;
    CHECK(cli::cmd_normalize(rcfg, rout) == 2);
    CHECK(nlohmann::json::parse(rout)["had_real_points"].get<bool>());
}

TEST_CASE("normalize round-trips a random congruence through the CLI surface") {
    // build a congruence-transformed matrix input by hand
    ConicQuadric Q = ConicQuadric::from_pq(0.4, -0.2);
    Mat3 g{};
    g(0, 0) = 1.1; g(0, 1) = 0.3; g(0, 2) = -0.2;
    g(1, 0) = 0.1; g(1, 1) = 0.9; g(1, 2) = 0.4;
    g(2, 0) = -0.3; g(2, 1) = 0.2; g(2, 2) = 1.2;
    ConicQuadric Qg = Q.congruence(sl3_normalize(g).m);

    std::ostringstream spec;
    spec << R"({"type":"matrix","re":[)";
    for (int i = 0; i < 3; ++i) {
        spec << "[";
        for (int j = 0; j < 3; ++j) spec << cli::format_g17(Qg.q_re(i, j)) << (j < 2 ? "," : "");
        spec << (i < 2 ? "]," : "]");
    }
    spec << R"(],"im":[)";
    for (int i = 0; i < 3; ++i) {
        spec << "[";
        for (int j = 0; j < 3; ++j) spec << cli::format_g17(Qg.q_im(i, j)) << (j < 2 ? "," : "");
        spec << (i < 2 ? "]," : "]");
    }
    spec << "]}";

    RunConfig cfg;
    cfg.conic_spec = spec.str();
    std::string out;
    CHECK(cli::cmd_normalize(cfg, out) == 0);
    auto j = nlohmann::json::parse(out);
    CHECK(j["p"].get<double>() == doctest::Approx(0.4).epsilon(1e-9));
    CHECK(j["q"].get<double>() == doctest::Approx(-0.2).epsilon(1e-9));
}

TEST_CASE("eval reports the norm and asymmetry values") {
    RunConfig cfg;
    cfg.p = 0.3;
    cfg.q = 0.1;
    cfg.vec_v = {1, 0, 0};
    cfg.vec_w = {0, 1, 0};
    std::string out;
    CHECK(cli::cmd_eval(cfg, out) == 0);
    auto j = nlohmann::json::parse(out);
    CHECK(j["F"].get<double>() == doctest::Approx(std::cos(0.1)).epsilon(1e-14));
}

TEST_CASE("indicatrix emission is byte-deterministic") {
    fs::path d1 = temp_dir("ind1"), d2 = temp_dir("ind2");
    RunConfig cfg;
    cfg.p = 0.4;
    cfg.q = 0.2;
    cfg.samples = 256;
    cfg.base = {1, 0, 0};
    cfg.out_dir = d1.string();
    CHECK(cli::cmd_indicatrix(cfg) == 0);
    cfg.out_dir = d2.string();
    CHECK(cli::cmd_indicatrix(cfg) == 0);

    std::string a = slurp((d1 / "indicatrix.csv").string());
    std::string b = slurp((d2 / "indicatrix.csv").string());
    CHECK(a == b);
    CHECK(a.substr(0, 12) == "theta,w1,w2\n");
    CHECK(std::count(a.begin(), a.end(), '\n') == 257);  // header + 256 rows
    CHECK(a.find('\r') == std::string::npos);            // LF endings

    auto fit = nlohmann::json::parse(slurp((d1 / "indicatrix_fit.json").string()));
    CHECK(fit["winding"].get<int>() == 1);
    CHECK(fit["deg4_residual"].get<double>() < 1e-8);
    CHECK(fit["deg2_residual"].get<double>() > 1e-3);
    fs::remove_all(d1);
    fs::remove_all(d2);
}

TEST_CASE("geodesic emission: closed 2-pi trace") {
    fs::path d = temp_dir("geo");
    RunConfig cfg;
    cfg.p = 0.3;
    cfg.q = 0.1;
    cfg.samples = 128;
    cfg.vec_v = {1, 0.2, -0.3};
    cfg.vec_w = {0.1, 1, 0.4};
    cfg.out_dir = d.string();
    CHECK(cli::cmd_geodesic(cfg) == 0);
    std::string csv = slurp((d / "geodesic.csv").string());
    // first and last data rows describe the same point
    auto first_row = csv.substr(csv.find('\n') + 1);
    first_row = first_row.substr(0, first_row.find('\n'));
    auto last_eol = csv.find_last_of('\n', csv.size() - 2);
    auto last_row = csv.substr(last_eol + 1, csv.size() - last_eol - 2);
    auto col = [](const std::string& row, int k) {
        std::stringstream ss(row);
        std::string item;
        for (int i = 0; i <= k; ++i) std::getline(ss, item, ',');
        return std::stod(item);
    };
    CHECK(col(first_row, 1) == doctest::Approx(col(last_row, 1)).epsilon(1e-8));
    CHECK(col(first_row, 2) == doctest::Approx(col(last_row, 2)).epsilon(1e-8));
    fs::remove_all(d);
}

TEST_CASE("leaf emission conserves W") {
    fs::path d = temp_dir("leaf");
    RunConfig cfg;
    cfg.p = 0.3;
    cfg.q = 0.1;
    cfg.time = 10.0;
    cfg.out_dir = d.string();
    CHECK(cli::cmd_leaf(cfg) == 0);
    std::string csv = slurp((d / "leaf.csv").string());
    std::stringstream ss(csv);
    std::string line;
    std::getline(ss, line);  // header
    double wmin = 1e300, wmax = -1e300;
    while (std::getline(ss, line)) {
        std::stringstream row(line);
        std::string item;
        for (int i = 0; i <= 15; ++i) std::getline(row, item, ',');
        double W = std::stod(item);
        wmin = std::min(wmin, W);
        wmax = std::max(wmax, W);
    }
    CHECK(wmax - wmin < 1e-7);
    fs::remove_all(d);
}

TEST_CASE("verify: clean run passes, perturbed run fails flatness") {
    RunConfig cfg;
    cfg.p = 0.0;
    cfg.q = 0.0;
    cfg.grid = 6;
    cfg.out_dir.clear();
    std::string out;
    CHECK(cli::cmd_verify(cfg, out) == 0);
    auto j = nlohmann::json::parse(out);
    CHECK(j["pass"].get<bool>());

    RunConfig pcfg;
    pcfg.p = 0.3;
    pcfg.q = 0.1;
    pcfg.grid = 4;
    pcfg.perturb = 1e-3;
    std::string pout;
    CHECK(cli::cmd_verify(pcfg, pout) == 1);
    auto pj = nlohmann::json::parse(pout);
    bool flat_failed = false;
    for (const auto& c : pj["checks"])
        if (c["name"] == "projective_flatness" && !c["pass"].get<bool>()) flat_failed = true;
    CHECK(flat_failed);
}

TEST_CASE("full argv entry point and config-file precedence") {
    fs::path d = temp_dir("argv");
    fs::path config = d / "config.json";
    {
        std::ofstream out(config);
        out << R"({"p":0.3,"q":0.1,"samples":64})";
    }
    CHECK(run_cli({"--config", config.string(), "eval", "--v", "1", "0", "0", "--w", "0", "1", "0",
                   "--out", d.string()}) == 0);
    // flags override the config
    CHECK(run_cli({"--config", config.string(), "eval", "--p", "0", "--q", "0", "--v", "1", "0",
                   "0", "--w", "0", "1", "0", "--out", d.string()}) == 0);
    std::string evalj = slurp((d / "eval.json").string());
    auto j = nlohmann::json::parse(evalj);
    CHECK(j["F"].get<double>() == doctest::Approx(1.0).epsilon(1e-14));

    CHECK(run_cli({"normalize", "--conic",
                   R"({"type":"matrix","re":[[1,0,0],[0,1,0],[0,0,-1]],"im":[[0,0,0],[0,0,0],[0,0,0]]})",
                   "--out", d.string()}) == 2);
    fs::remove_all(d);
}
