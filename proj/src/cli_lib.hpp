#ifndef CFSPHERE_CLI_LIB_HPP
#define CFSPHERE_CLI_LIB_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cfsphere/conics.hpp"
#include "cfsphere/finsler.hpp"

// Deterministic command-line front end.  Seeds and grid sizes fully
// determine output bytes: floats are serialized with 17 significant digits,
// CSVs use LF endings, and files are written to a temp path then renamed.

namespace cfs::cli {

struct RunConfig {
    std::string command;
    std::optional<double> p, q;
    std::string conic_spec;       // file path or inline JSON
    int grid = 20;
    int samples = 256;
    std::uint64_t seed = 1;
    std::string out_dir;          // empty: stdout-only commands still work
    std::map<std::string, double> tol_override;
    double perturb = 0.0;         // verify test hook
    std::vector<double> vec_v{1.0, 0.0, 0.0};
    std::vector<double> vec_w{0.0, 1.0, 0.0};
    std::vector<double> base{1.0, 0.0, 0.0};
    std::vector<double> point;    // chart, x1, x2, theta
    double length = 6.283185307179586;
    double step = 0.005;
    double time = 10.0;
};

// Resolves the conic from --p/--q or --conic (file or inline JSON).
ConicQuadric load_conic(const RunConfig& cfg);
FinslerNorm load_norm(const RunConfig& cfg);

std::string format_g17(double x);

int cmd_normalize(const RunConfig& cfg, std::string& json_out);
int cmd_eval(const RunConfig& cfg, std::string& json_out);
int cmd_indicatrix(const RunConfig& cfg);
int cmd_geodesic(const RunConfig& cfg);
int cmd_curvature(const RunConfig& cfg);
int cmd_invariants(const RunConfig& cfg, std::string& json_out);
int cmd_leaf(const RunConfig& cfg);
int cmd_crofton(const RunConfig& cfg, std::string& json_out);
int cmd_verify(const RunConfig& cfg, std::string& json_out);

int run(int argc, const char* const* argv);

// Atomic write: temp file then rename.  Exit code 3 territory on failure.
void write_file(const std::string& path, const std::string& content);

}  // namespace cfs::cli

#endif
