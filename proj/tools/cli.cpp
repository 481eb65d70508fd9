#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "lyapdecay/convection_diffusion.hpp"
#include "lyapdecay/family.hpp"
#include "lyapdecay/fokker_planck.hpp"
#include "lyapdecay/goldstein_taylor.hpp"
#include "lyapdecay/oracle.hpp"

namespace lyapdecay::cli {

namespace {

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw InvalidInput(path + ": " + e.what());
    }
}

// Writes to the path, or to `fallback` for "-".
void emit(const std::string& path, const std::string& text, std::ostream& fallback) {
    if (path.empty() || path == "-") {
        fallback << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw InvalidInput("cannot write " + path);
    f << text;
}

json cjson(cplx z) { return json::array({z.real(), z.imag()}); }

std::vector<double> num_array(const json& j, const char* key, bool required = true) {
    if (!j.contains(key)) {
        if (required) throw InvalidInput(std::string("table: missing key ") + key);
        return {};
    }
    try {
        return j.at(key).get<std::vector<double>>();
    } catch (const json::exception&) {
        throw InvalidInput(std::string("table: ") + key + " must be an array of numbers");
    }
}

// "name" or "name:p1:p2"
std::pair<std::string, std::vector<double>> builtin_spec(const std::string& s) {
    std::stringstream ss(s);
    std::string part, name;
    std::getline(ss, name, ':');
    std::vector<double> p;
    while (std::getline(ss, part, ':')) {
        try {
            p.push_back(std::stod(part));
        } catch (const std::exception&) {
            throw InvalidInput("bad builtin parameter: " + part);
        }
    }
    return {name, p};
}

bool is_file(const std::string& s) { return s.size() > 5 && s.substr(s.size() - 5) == ".json"; }

WeightSpec weight_spec(const WeightOptions& o, const JordanStructure& s) {
    WeightSpec w;
    if (o.heuristic)
        for (std::size_t n = 0; n < s.blocks.size(); ++n)
            if (s.blocks[n].length() > 1) w.level_weights[n] = suggest_weights(s.blocks[n]);
    if (!o.weights_json.empty()) {
        json j;
        try {
            j = json::parse(o.weights_json);
        } catch (const json::exception& e) {
            throw InvalidInput(std::string("--weights: ") + e.what());
        }
        if (!j.is_object()) throw InvalidInput("--weights must be an object {\"block\": [weights]}");
        for (const auto& [key, val] : j.items()) {
            std::size_t n = 0;
            try {
                n = std::stoul(key);
            } catch (const std::exception&) {
                throw InvalidInput("--weights: bad block index " + key);
            }
            if (n >= s.blocks.size()) throw InvalidInput("--weights: block index out of range");
            w.level_weights[n] = val.get<std::vector<double>>();
        }
    }
    return w;
}

struct Analysis {
    JordanStructure structure;
    LyapunovForm form;
    DecayEnvelope env;
};

Analysis analyze(const std::string& matrix_path, const WeightOptions& wo) {
    if (!(wo.rel_tol > 0.0)) throw InvalidInput("--rel-tol must be positive");
    const CMatrix c = matrix_from_json(read_json_file(matrix_path));
    Analysis a;
    a.structure = analyze_jordan(c, wo.rel_tol);
    if (!(a.structure.mu > 0.0)) throw NotPositiveStable("matrix is not positive stable (mu = " + fmt(a.structure.mu) + ")");
    a.form = build_form(a.structure, weight_spec(wo, a.structure));
    a.env = decay_constant(a.form);
    return a;
}

std::string envelope_csv(const EnvelopeReport& r, bool bound_first) {
    std::ostringstream os;
    os << (bound_first ? "t,bound,propagator_norm_sq,ratio\n" : "t,propagator_sq,bound,ratio\n");
    for (std::size_t i = 0; i < r.times.size(); ++i) {
        os << fmt(r.times[i]) << ',';
        if (bound_first) os << fmt(r.bound[i]) << ',' << fmt(r.propagator_sq[i]);
        else os << fmt(r.propagator_sq[i]) << ',' << fmt(r.bound[i]);
        os << ',' << fmt(r.ratio[i]) << '\n';
    }
    return os.str();
}

std::vector<double> t_grid(double t_max, int nt) {
    if (!(t_max > 0.0)) throw InvalidInput("--t-max must be positive");
    if (nt < 2) throw InvalidInput("--nt must be >= 2");
    return linear_grid(0.0, t_max, static_cast<std::size_t>(nt));
}

json model_config(const ModelOptions& o) {
    return {{"field", o.field}, {"order", o.order},   {"variant", o.variant}, {"K", o.K},
            {"k_max", o.k_max}, {"z_grid", o.z_grid}, {"t_max", o.t_max},     {"nt", o.nt},
            {"out", o.out},     {"report", o.report}};
}

int finish_model(const TheoremReport& r, const std::string& model, const ModelOptions& o,
                 const std::vector<std::string>& warnings, std::ostream& out, std::ostream& err) {
    std::ostringstream csv;
    csv << "z,t,norm_sq,bound,ratio\n";
    for (std::size_t i = 0; i < r.z.size(); ++i)
        for (std::size_t j = 0; j < r.t.size(); ++j)
            csv << fmt(r.z[i]) << ',' << fmt(r.t[j]) << ',' << fmt(r.norm_sq[i][j]) << ',' << fmt(r.bound[j]) << ','
                << fmt(r.norm_sq[i][j] / r.bound[j]) << '\n';
    emit(o.out, csv.str(), out);
    for (const auto& w : warnings) err << "warning: " << w << '\n';
    if (!o.report.empty()) {
        json rep{{"model", model},
                 {"C_const", r.C_const},
                 {"initial_sup", r.initial_sup},
                 {"max_ratio", r.max_ratio},
                 {"holds", r.holds},
                 {"constants", r.constants},
                 {"notes", r.notes},
                 {"warnings", warnings},
                 {"config", model_config(o)}};
        emit(o.report, rep.dump(2) + "\n", out);
    }
    if (!r.holds) {
        err << model << ": bound violated, max_ratio = " << fmt(r.max_ratio) << '\n';
        return kViolation;
    }
    return kOk;
}

template <class Tail>
std::vector<std::string> tail_warnings(const std::vector<double>& z_grid, Tail tail_fraction) {
    std::vector<std::string> w;
    for (double z : z_grid) {
        const double f = tail_fraction(z);
        if (f > 1e-8) w.push_back("truncation tail fraction " + fmt(f) + " at z = " + fmt(z));
    }
    return w;
}

cd::CoefficientField cd_field(const std::string& spec) {
    if (is_file(spec)) {
        const json j = read_json_file(spec);
        auto z = num_array(j, "z");
        auto opt = [&](const char* k) {
            auto v = num_array(j, k, false);
            if (v.empty()) v.assign(z.size(), 0.0);
            return v;
        };
        return cd::CoefficientField::tabulated(z, num_array(j, "a"), num_array(j, "b"), num_array(j, "da"),
                                               num_array(j, "db"), opt("d2a"), opt("d2b"));
    }
    const auto [name, p] = builtin_spec(spec);
    if (name == "builtin" || name == "linear_tanh") return cd::CoefficientField::linear_tanh();
    if (name == "quadratic_sech") return p.empty() ? cd::CoefficientField::quadratic_sech() : cd::CoefficientField::quadratic_sech(p[0]);
    if (name == "constant") {
        if (p.size() != 2) throw InvalidInput("constant coefficients need constant:a:b");
        return cd::CoefficientField::constant(p[0], p[1]);
    }
    throw InvalidInput("unknown coefficient field " + spec);
}

gt::RelaxationField gt_field(const std::string& spec) {
    if (is_file(spec)) {
        const json j = read_json_file(spec);
        return gt::RelaxationField::tabulated(num_array(j, "z"), num_array(j, "sigma"), num_array(j, "dsigma"));
    }
    const auto [name, p] = builtin_spec(spec);
    if (name == "builtin" || name == "tanh")
        return p.size() == 2 ? gt::RelaxationField::tanh_profile(p[0], p[1]) : gt::RelaxationField::tanh_profile();
    if (name == "constant") {
        if (p.size() != 1) throw InvalidInput("constant relaxation needs constant:sigma");
        return gt::RelaxationField::constant(p[0]);
    }
    throw InvalidInput("unknown relaxation field " + spec);
}

}  // namespace

CMatrix matrix_from_json(const json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("entries"))
        throw InvalidInput("matrix JSON needs \"dim\" and \"entries\"");
    const auto& d = j.at("dim");
    if (!d.is_number_integer() || d.get<long long>() < 1) throw InvalidInput("matrix JSON: dim must be a positive integer");
    const std::size_t n = d.get<std::size_t>();
    const auto& e = j.at("entries");
    if (!e.is_array() || e.size() != n * n) throw InvalidInput("matrix JSON: entries must hold dim^2 [re, im] pairs");
    std::vector<cplx> v;
    for (const auto& p : e) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
            throw InvalidInput("matrix JSON: each entry must be [re, im]");
        v.emplace_back(p[0].get<double>(), p[1].get<double>());
    }
    CMatrix m(n, std::move(v));
    if (!m.all_finite()) throw InvalidInput("matrix JSON: non-finite entry");
    return m;
}

json matrix_to_json(const CMatrix& m) {
    json e = json::array();
    for (const auto& z : m.entries()) e.push_back(cjson(z));
    return {{"dim", m.dim()}, {"entries", e}};
}

json structure_to_json(const JordanStructure& s) {
    json blocks = json::array();
    for (const auto& b : s.blocks) {
        json chain = json::array();
        for (const auto& v : b.chain) {
            json vec = json::array();
            for (const auto& x : v) vec.push_back(cjson(x));
            chain.push_back(vec);
        }
        blocks.push_back({{"eigenvalue", cjson(b.eigenvalue)}, {"length", b.length()}, {"chain", chain}});
    }
    return {{"dim", s.dim}, {"mu", s.mu}, {"M", s.max_defect}, {"I_mu", s.gap_indices}, {"blocks", blocks}};
}

std::vector<double> parse_grid(const std::string& spec) {
    std::vector<double> g;
    try {
        if (spec.find(':') != std::string::npos) {
            std::stringstream ss(spec);
            std::string lo, hi, n;
            std::getline(ss, lo, ':');
            std::getline(ss, hi, ':');
            std::getline(ss, n);
            const long count = std::stol(n);
            if (count < 1) throw InvalidInput("grid: point count must be positive");
            if (count == 1) g = {std::stod(lo)};
            else g = linear_grid(std::stod(lo), std::stod(hi), static_cast<std::size_t>(count));
        } else {
            std::stringstream ss(spec);
            std::string item;
            while (std::getline(ss, item, ',')) g.push_back(std::stod(item));
        }
    } catch (const InvalidInput&) {
        throw;
    } catch (const std::exception&) {
        throw InvalidInput("bad grid spec: " + spec);
    }
    if (g.empty()) throw InvalidInput("grid is empty");
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (!std::isfinite(g[i])) throw InvalidInput("grid: non-finite value");
        if (i > 0 && !(g[i] > g[i - 1])) throw InvalidInput("grid must be strictly increasing: " + spec);
    }
    return g;
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", x);
    return buf;
}

int cmd_analyze(const AnalyzeOptions& o, std::ostream& out, std::ostream&) {
    const auto a = analyze(o.matrix, o.weights);
    json weights = json::object();
    for (std::size_t n = 0; n < a.form.blocks.size(); ++n)
        if (!a.form.blocks[n].weights.empty()) weights[std::to_string(n)] = a.form.blocks[n].weights;
    json cases = json::array();
    for (const auto& fb : a.form.blocks) cases.push_back(case_name(fb.kind));
    json j = structure_to_json(a.structure);
    j["weights"] = weights;
    j["cases"] = cases;
    j["C_const"] = a.env.C_const;
    j["envelope"] = {{"C_const", a.env.C_const}, {"mu", a.env.mu}, {"M", a.env.M}};
    j["config"] = {{"matrix", o.matrix}, {"heuristic_weights", o.weights.heuristic},
                   {"weights", o.weights.weights_json}, {"rel_tol", o.weights.rel_tol},
                   {"t_max", o.t_max}, {"nt", o.nt}, {"samples", o.samples}};
    emit(o.out, j.dump(2) + "\n", out);
    if (!o.samples.empty()) {
        const CMatrix c = matrix_from_json(read_json_file(o.matrix));
        emit(o.samples, envelope_csv(check_dominance(c, a.env, t_grid(o.t_max, o.nt)), true), out);
    }
    return kOk;
}

int cmd_verify(const VerifyOptions& o, std::ostream& out, std::ostream& err) {
    if (!(o.scale_constant > 0.0)) throw InvalidInput("--scale-constant must be positive");
    auto a = analyze(o.matrix, o.weights);
    const long m = static_cast<long>(a.env.M) + o.m_offset;
    if (m < 1) throw InvalidInput("--m-offset leaves M < 1");
    a.env.M = static_cast<std::size_t>(m);
    a.env.C_const *= o.scale_constant;
    const auto times = parse_grid(o.t_grid);
    if (times.front() < 0.0) throw InvalidInput("t grid must be nonnegative");
    const CMatrix c = matrix_from_json(read_json_file(o.matrix));
    const auto r = check_dominance(c, a.env, times);
    emit(o.out, envelope_csv(r, false), out);
    if (!r.dominated) {
        err << "verify: dominance failed, max_ratio = " << fmt(r.max_ratio) << '\n';
        return kViolation;
    }
    return kOk;
}

int cmd_family(const FamilyOptions& o, std::ostream& out, std::ostream& err) {
    const auto z = parse_grid(o.z_grid);
    const auto ts = t_grid(o.t_max, o.nt);
    ParamFamily fam = o.family == "quadratic"     ? ParamFamily::quadratic(o.mu_min, o.alpha, z)
                      : o.family == "exponential" ? ParamFamily::exponential(o.mu_min, o.alpha, o.beta, z)
                      : o.family == "constant"    ? ParamFamily::constant(o.mu_min, z)
                                                  : throw InvalidInput("unknown family " + o.family);
    validate_family(fam);
    const auto sup = grid_sup_envelope(fam, ts);
    std::ostringstream csv;
    csv << "t,grid_sup,envelope,ratio\n";
    double worst = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const double env = o.family == "quadratic"     ? uniform_envelope_quadratic(o.alpha, o.mu_min, ts[i])
                           : o.family == "exponential" ? uniform_envelope_exponential(o.alpha, o.beta, o.mu_min, ts[i])
                                                       : std::exp(-2.0 * o.mu_min * ts[i]);
        worst = std::max(worst, sup[i] / env);
        csv << fmt(ts[i]) << ',' << fmt(sup[i]) << ',' << fmt(env) << ',' << fmt(sup[i] / env) << '\n';
    }
    emit(o.out, csv.str(), out);
    if (worst > 1.0 + kDominanceTol) {
        err << "family: envelope violated, max_ratio = " << fmt(worst) << '\n';
        return kViolation;
    }
    return kOk;
}

int cmd_model_cd(const ModelOptions& o, std::ostream& out, std::ostream& err) {
    if (o.order != 1 && o.order != 2) throw InvalidInput("--order must be 1 or 2");
    if (o.K < 1) throw InvalidInput("--K must be positive");
    const auto f = cd_field(o.field);
    const auto z = parse_grid(o.z_grid);
    const auto r = cd::theorem_bound_check(f, z, t_grid(o.t_max, o.nt), o.order, o.K);
    const auto w = tail_warnings(z, [&](double zz) {
        const auto s = cd::gaussian_initial(o.K, o.order, zz);
        const double tail = std::pow(norm2(s.mode(o.K)), 2) + std::pow(norm2(s.mode(-o.K)), 2);
        return tail / std::max(cd::distance_sq(s) * 2.0 * std::numbers::pi, 1e-300);
    });
    return finish_model(r, "cd", o, w, out, err);
}

int cmd_model_gt(const ModelOptions& o, std::ostream& out, std::ostream& err) {
    if (o.K < 1) throw InvalidInput("--K must be positive");
    if (o.k_max < 1) throw InvalidInput("--k-max must be positive");
    const auto f = gt_field(o.field);
    const auto z = parse_grid(o.z_grid);
    const auto r = gt::gt_theorem_check(f, z, t_grid(o.t_max, o.nt), o.K, {}, o.k_max);
    const auto w = tail_warnings(z, [&](double zz) {
        const auto s = gt::gt_initial(o.K, zz);
        const double tail = std::pow(norm2(s.mode(o.K)), 2) + std::pow(norm2(s.mode(-o.K)), 2);
        return tail / std::max(gt::gt_distance_sq(s) * 4.0 * std::numbers::pi, 1e-300);
    });
    return finish_model(r, "gt", o, w, out, err);
}

int cmd_model_fp(const ModelOptions& o, std::ostream& out, std::ostream& err) {
    const auto z = parse_grid(o.z_grid);
    const auto ts = t_grid(o.t_max, o.nt);
    const auto [name, p] = builtin_spec(o.field);
    if (o.variant == "drift") {
        fp::DriftField f;
        if (is_file(o.field)) {
            const json j = read_json_file(o.field);
            f = fp::DriftField::tabulated(num_array(j, "z"), num_array(j, "a"), num_array(j, "da"));
        } else if (name == "builtin" || name == "sine") {
            f = p.size() == 2 ? fp::DriftField::sine(p[0], p[1]) : fp::DriftField::sine();
        } else if (name == "constant" && p.size() == 1) {
            f = fp::DriftField::constant(p[0]);
        } else {
            throw InvalidInput("unknown drift field " + o.field);
        }
        auto r = fp_theorem_check(f, z, ts, o.K);
        r.constants["C_global"] = r.C_const;
        const auto w = tail_warnings(z, [&](double zz) {
            const auto s = fp::fp_initial(f, o.K, zz);
            const double tail = s.f[o.K] * s.f[o.K] + s.g[o.K] * s.g[o.K];
            return tail / std::max(fp::fp_distance_sq(f, s), 1e-300);
        });
        return finish_model(r, "fp-drift", o, w, out, err);
    }
    if (o.variant == "diffusion") {
        fp::DiffusionField f;
        if (name == "builtin" || name == "sine") {
            f = p.size() == 2 ? fp::DiffusionField::sine(p[0], p[1]) : fp::DiffusionField::sine();
        } else if (name == "constant" && p.size() == 1) {
            f = fp::DiffusionField::constant(p[0]);
        } else {
            throw InvalidInput("diffusion variant takes builtin sine[:base:amp] or constant:d");
        }
        auto r = fp_diffusion_check(f, z, ts, o.K);
        const auto w = tail_warnings(z, [&](double zz) {
            const auto s = fp::fp_diffusion_initial(f, o.K, zz);
            const double tail = s.f[o.K] * s.f[o.K] + s.g[o.K] * s.g[o.K];
            return tail / std::max(fp::fp_diffusion_distance_sq(f, s), 1e-300);
        });
        return finish_model(r, "fp-diffusion", o, w, out, err);
    }
    throw InvalidInput("--variant must be drift or diffusion");
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Lyapunov decay envelopes for defective linear ODE systems"};
    app.set_config("--config", "", "TOML/INI config file; command-line flags take precedence");
    app.require_subcommand(1);

    auto add_weights = [](CLI::App* s, WeightOptions& w) {
        s->add_flag("--heuristic-weights", w.heuristic, "beta^m = |v0|^2/|v^(m-1)|^2 on defective blocks");
        s->add_option("--weights", w.weights_json, "JSON object {\"block\": [beta^1, ...]}");
        s->add_option("--rel-tol", w.rel_tol, "eigenvalue clustering / rank tolerance")->capture_default_str();
    };

    AnalyzeOptions ao;
    auto* an = app.add_subcommand("analyze", "Jordan structure, Lyapunov form and decay constant of a matrix");
    an->add_option("matrix", ao.matrix, "matrix JSON")->required();
    add_weights(an, ao.weights);
    an->add_option("--t-max", ao.t_max, "envelope samples up to this time");
    an->add_option("--nt", ao.nt, "number of samples");
    an->add_option("--samples", ao.samples, "CSV path for envelope samples");
    an->add_option("--out", ao.out, "JSON output path (- for stdout)")->capture_default_str();

    VerifyOptions vo;
    auto* ve = app.add_subcommand("verify", "check the envelope against |e^{-Ct}|^2");
    ve->add_option("matrix", vo.matrix, "matrix JSON")->required();
    add_weights(ve, vo.weights);
    ve->add_option("--t-grid", vo.t_grid, "lo:hi:n or comma list")->capture_default_str();
    ve->add_option("--scale-constant", vo.scale_constant, "multiply C (testing)")->capture_default_str();
    ve->add_option("--m-offset", vo.m_offset, "add to the algebraic order M (testing)")->capture_default_str();
    ve->add_option("--out", vo.out, "CSV output path")->capture_default_str();

    FamilyOptions fo;
    auto* fa = app.add_subcommand("family", "grid suprema of two-by-two parameter families");
    fa->add_option("--family", fo.family, "quadratic|exponential|constant")->capture_default_str();
    fa->add_option("--alpha", fo.alpha)->capture_default_str();
    fa->add_option("--beta", fo.beta)->capture_default_str();
    fa->add_option("--mu-min", fo.mu_min, "mu_min (quadratic), mu0 (exponential), mu (constant)")->capture_default_str();
    fa->add_option("--z-grid", fo.z_grid)->capture_default_str();
    fa->add_option("--t-max", fo.t_max)->capture_default_str();
    fa->add_option("--nt", fo.nt)->capture_default_str();
    fa->add_option("--out", fo.out)->capture_default_str();

    ModelOptions cdo, gto, fpo;
    gto.K = 32;
    gto.z_grid = "-3:3:13";
    fpo.K = 40;
    fpo.z_grid = "-3.141592653589793:3.141592653589793:17";
    auto add_model = [](CLI::App* s, ModelOptions& m, const char* field_flag, const char* field_help) {
        s->add_option(field_flag, m.field, field_help)->capture_default_str();
        s->add_option("--K", m.K, "truncation")->capture_default_str();
        s->add_option("--z-grid", m.z_grid, "lo:hi:n or comma list")->capture_default_str();
        s->add_option("--t-max", m.t_max)->capture_default_str();
        s->add_option("--nt", m.nt)->capture_default_str();
        s->add_option("--out", m.out, "CSV path")->capture_default_str();
        s->add_option("--report", m.report, "JSON report path");
    };
    auto* mcd = app.add_subcommand("model-cd", "convection-diffusion sensitivity bound");
    add_model(mcd, cdo, "--coeffs", "linear_tanh | quadratic_sech[:zmax] | constant:a:b | table.json");
    mcd->add_option("--order", cdo.order, "1 or 2")->capture_default_str();
    auto* mgt = app.add_subcommand("model-gt", "two-velocity BGK sensitivity bound");
    add_model(mgt, gto, "--sigma", "tanh[:base:amp] | constant:s | table.json");
    mgt->add_option("--k-max", gto.k_max, "mode sweep for the uniform constant")->capture_default_str();
    auto* mfp = app.add_subcommand("model-fp", "Fokker-Planck sensitivity bound");
    add_model(mfp, fpo, "--drift", "sine[:base:amp] | constant:a | table.json (drift variant)");
    mfp->add_option("--variant", fpo.variant, "drift|diffusion")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kInvalid;
    }

    try {
        if (*an) return cmd_analyze(ao, out, err);
        if (*ve) return cmd_verify(vo, out, err);
        if (*fa) return cmd_family(fo, out, err);
        if (*mcd) return cmd_model_cd(cdo, out, err);
        if (*mgt) return cmd_model_gt(gto, out, err);
        if (*mfp) return cmd_model_fp(fpo, out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kInvalid;
    }
    return kInvalid;
}

}  // namespace lyapdecay::cli
