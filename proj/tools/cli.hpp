#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "lyapdecay/cmatrix.hpp"
#include "lyapdecay/jordan.hpp"
#include "lyapdecay/lyapunov.hpp"

namespace lyapdecay::cli {

using nlohmann::json;

enum ExitCode : int { kOk = 0, kViolation = 1, kInvalid = 2 };

/// {"dim": d, "entries": [[re, im], ...]} row-major.
CMatrix matrix_from_json(const json& j);
json matrix_to_json(const CMatrix& m);
json structure_to_json(const JordanStructure& s);

/// "lo:hi:n" (n points, both ends) or a comma list; must be strictly increasing.
std::vector<double> parse_grid(const std::string& spec);
/// 17 significant digits, scientific.
std::string fmt(double x);

struct WeightOptions {
    bool heuristic = false;
    std::string weights_json;  ///< {"block index": [beta^1, ...]}
    double rel_tol = 1e-8;
};

struct AnalyzeOptions {
    std::string matrix;
    WeightOptions weights;
    double t_max = 0.0;
    int nt = 0;
    std::string samples;
    std::string out = "-";
};

struct VerifyOptions {
    std::string matrix;
    WeightOptions weights;
    std::string t_grid = "0:50:201";
    double scale_constant = 1.0;
    int m_offset = 0;
    std::string out = "-";
};

struct FamilyOptions {
    std::string family = "quadratic";
    double alpha = 1.0, beta = 1.0, mu_min = 0.5;
    std::string z_grid = "-3:3:121";
    double t_max = 10.0;
    int nt = 101;
    std::string out = "-";
};

struct ModelOptions {
    std::string field = "builtin";  ///< builtin name or JSON table path
    int order = 1;
    std::string variant = "drift";
    int K = 32;
    int k_max = 64;
    std::string z_grid = "-3:3:13";
    double t_max = 10.0;
    int nt = 50;
    std::string out = "-";
    std::string report;
};

int cmd_analyze(const AnalyzeOptions& o, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyOptions& o, std::ostream& out, std::ostream& err);
int cmd_family(const FamilyOptions& o, std::ostream& out, std::ostream& err);
int cmd_model_cd(const ModelOptions& o, std::ostream& out, std::ostream& err);
int cmd_model_gt(const ModelOptions& o, std::ostream& out, std::ostream& err);
int cmd_model_fp(const ModelOptions& o, std::ostream& out, std::ostream& err);

/// Full command line; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lyapdecay::cli
