#include "lyapdecay/family.hpp"

#include <algorithm>
#include <cmath>

#include "lyapdecay/oracle.hpp"
#include "lyapdecay/parallel.hpp"

namespace lyapdecay {

ParamFamily ParamFamily::quadratic(double mu_min, double alpha, std::vector<double> z_grid) {
    if (!(alpha > 0.0) || !(mu_min > 0.0)) throw InvalidInput("quadratic family: need alpha > 0, mu_min > 0");
    return {"quadratic", [=](double z) { return mu_min + alpha * z * z; }, [=](double z) { return 2.0 * alpha * z; },
            mu_min, std::move(z_grid)};
}

ParamFamily ParamFamily::exponential(double mu0, double alpha, double beta, std::vector<double> z_grid) {
    if (!(alpha > 0.0) || !(mu0 > 0.0)) throw InvalidInput("exponential family: need alpha > 0, mu0 > 0");
    if (beta == 0.0 || std::abs(beta) >= 2.0) throw InvalidInput("exponential family: need 0 < |beta| < 2");
    return {"exponential", [=](double z) { return mu0 + alpha * std::exp(beta * z); },
            [=](double z) { return alpha * beta * std::exp(beta * z); }, mu0, std::move(z_grid)};
}

ParamFamily ParamFamily::constant(double mu, std::vector<double> z_grid) {
    if (!(mu > 0.0)) throw InvalidInput("constant family: need mu > 0");
    return {"constant", [=](double) { return mu; }, [](double) { return 0.0; }, mu, std::move(z_grid)};
}

ParamFamily ParamFamily::tabulated(std::vector<double> z, std::vector<double> mu, std::vector<double> dmu) {
    if (z.empty() || z.size() != mu.size() || z.size() != dmu.size())
        throw InvalidInput("tabulated family: z, mu, dmu must be nonempty and of equal length");
    for (std::size_t i = 1; i < z.size(); ++i)
        if (!(z[i] > z[i - 1])) throw InvalidInput("tabulated family: z must be strictly increasing");
    auto interp = [z](std::vector<double> y) {
        return [z, y](double x) {
            if (x <= z.front()) return y.front();
            if (x >= z.back()) return y.back();
            const auto it = std::upper_bound(z.begin(), z.end(), x);
            const std::size_t i = static_cast<std::size_t>(it - z.begin());
            const double w = (x - z[i - 1]) / (z[i] - z[i - 1]);
            return (1.0 - w) * y[i - 1] + w * y[i];
        };
    };
    const double mmin = *std::min_element(mu.begin(), mu.end());
    return {"tabulated", interp(mu), interp(dmu), mmin, z};
}

void validate_family(const ParamFamily& fam, bool check_derivative) {
    if (fam.z_grid.empty()) throw InvalidInput("family: empty z grid");
    if (!(fam.mu_min > 0.0)) throw InvalidInput("family: mu_min must be positive");
    for (double z : fam.z_grid) {
        const double m = fam.mu(z);
        if (!(m >= fam.mu_min * (1.0 - 1e-12))) throw InvalidInput("family: mu(z) below mu_min");
        if (!check_derivative) continue;
        const double h = 1e-5 * (1.0 + std::abs(z));
        const double fd = (fam.mu(z + h) - fam.mu(z - h)) / (2.0 * h);
        const double d = fam.dmu(z);
        if (std::abs(fd - d) > 1e-5 * std::max(1.0, std::abs(d)))
            throw InvalidInput("family: derivative inconsistent with mu");
    }
}

CMatrix family_matrix(const ParamFamily& fam, double z) {
    const double m = fam.mu(z);
    return CMatrix{{m, fam.dmu(z)}, {0.0, m}};
}

double f1(double alpha, double z, double t) {
    return (1.0 + 4.0 * alpha * alpha * z * z * t * t) * std::exp(-2.0 * alpha * z * z * t);
}

double sup_f1(double alpha, double t) {
    if (!(alpha > 0.0)) throw InvalidInput("sup_f1: alpha must be positive");
    if (t < 0.0) throw InvalidInput("sup_f1: t must be nonnegative");
    const double at = alpha * t;
    if (at <= 0.5) return 1.0;
    return 2.0 * at * std::exp(-(2.0 * at - 1.0) / (2.0 * at));
}

double uniform_envelope_quadratic(double alpha, double mu_min, double t) {
    return 2.0 * std::exp(-2.0 * mu_min * t) * sup_f1(alpha, t);
}

double uniform_envelope_exponential(double alpha, double beta, double mu0, double t) {
    if (!(alpha > 0.0)) throw InvalidInput("uniform_envelope_exponential: alpha must be positive");
    if (beta == 0.0 || std::abs(beta) >= 2.0) throw InvalidInput("uniform_envelope_exponential: need 0 < |beta| < 2");
    if (t < 0.0) throw InvalidInput("uniform_envelope_exponential: t must be nonnegative");
    return 2.0 * std::exp(-2.0 * mu0 * t);
}

std::vector<double> grid_sup_envelope(const ParamFamily& fam, const std::vector<double>& t_grid) {
    std::vector<std::vector<double>> per_z(fam.z_grid.size());
    parallel_for(fam.z_grid.size(), [&](std::size_t i) {
        per_z[i] = propagator_curve(family_matrix(fam, fam.z_grid[i]), t_grid);
    });
    std::vector<double> out(t_grid.size(), 0.0);
    for (const auto& row : per_z)
        for (std::size_t j = 0; j < t_grid.size(); ++j) out[j] = std::max(out[j], row[j]);
    return out;
}

}  // namespace lyapdecay
