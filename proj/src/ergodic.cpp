#include "cesaro/ergodic.hpp"

#include <cmath>

namespace cesaro {

const char* table_kind_name(TableKind k) {
    switch (k) {
        case TableKind::kPowerNorm: return "power_norm";
        case TableKind::kMeanResidual: return "mean_residual";
        case TableKind::kMeanNorm: return "mean_norm";
        case TableKind::kSuccessiveDiff: return "successive_diff";
    }
    return "?";
}

std::vector<unsigned> doubling_schedule(unsigned n_max) {
    std::vector<unsigned> ns;
    for (unsigned n = 1; n <= n_max; n *= 2) ns.push_back(n);
    if (ns.empty() || ns.back() != n_max) ns.push_back(n_max);
    return ns;
}

FunctionModel project_P(const FunctionModel& f, double gamma) {
    if (gamma <= 1.0) throw DomainError("project_P requires gamma > 1 (phi must lie in the space)");
    const Cplx f0 = f.stream().coeff(0);
    return scale(model_phi(), f0);
}

ConvergenceTable power_norm_table(double gamma, unsigned n_max,
                                  const std::vector<FunctionModel>& witnesses,
                                  const GridOptions& opts) {
    if (n_max == 0) throw DomainError("n_max must be positive");
    ConvergenceTable t{TableKind::kPowerNorm, {}};
    std::vector<double> base_norms;
    for (const auto& w : witnesses) base_norms.push_back(weighted_sup_norm(w, gamma, opts).value);
    for (unsigned n : doubling_schedule(n_max)) {
        double best = 0.0;
        for (std::size_t i = 0; i < witnesses.size(); ++i) {
            if (base_norms[i] == 0.0) continue;
            const double num = weighted_sup_norm(cesaro_power(witnesses[i], n), gamma, opts).value;
            best = std::max(best, num / base_norms[i]);
        }
        t.rows.push_back({n, best, std::max(1.0, std::pow(gamma, -static_cast<double>(n)))});
    }
    return t;
}

ConvergenceTable mean_convergence(const FunctionModel& f, double gamma, unsigned n_max,
                                  const GridOptions& opts) {
    if (gamma <= 1.0) throw DomainError("mean_convergence requires gamma > 1");
    ConvergenceTable t{TableKind::kMeanResidual, {}};
    const FunctionModel p = project_P(f, gamma);
    const FunctionModel minus_p = scale(p, Cplx(-1.0));
    for (unsigned n : doubling_schedule(n_max)) {
        const FunctionModel residual = add(cesaro_mean(f, n), minus_p);
        t.rows.push_back({n, weighted_sup_norm(residual, gamma, opts).value, std::nullopt});
    }
    return t;
}

ConvergenceTable mean_norm_table(double gamma, unsigned n_max,
                                 const std::vector<FunctionModel>& witnesses,
                                 const GridOptions& opts) {
    if (n_max == 0) throw DomainError("n_max must be positive");
    ConvergenceTable t{TableKind::kMeanNorm, {}};
    std::vector<double> base_norms;
    for (const auto& w : witnesses) base_norms.push_back(weighted_sup_norm(w, gamma, opts).value);
    for (unsigned n : doubling_schedule(n_max)) {
        double best = 0.0;
        for (std::size_t i = 0; i < witnesses.size(); ++i) {
            if (base_norms[i] == 0.0) continue;
            const double num = weighted_sup_norm(cesaro_mean(witnesses[i], n), gamma, opts).value;
            best = std::max(best, num / base_norms[i]);
        }
        t.rows.push_back({n, best, predicted_mean_norm(gamma, n)});
    }
    return t;
}

double predicted_mean_norm(double gamma, unsigned n) {
    if (gamma <= 0.0) throw DomainError("gamma must be positive");
    if (n == 0) throw DomainError("n must be positive");
    if (gamma >= 1.0) return 1.0;
    double sum = 0.0, term = 1.0;
    for (unsigned m = 1; m <= n; ++m) {
        term /= gamma;
        sum += term;
    }
    return sum / static_cast<double>(n);
}

ConvergenceTable successive_difference(const FunctionModel& f, double gamma, unsigned n_max,
                                       const GridOptions& opts) {
    if (gamma < 1.0) throw DomainError("successive_difference requires gamma >= 1");
    ConvergenceTable t{TableKind::kSuccessiveDiff, {}};
    for (unsigned n : doubling_schedule(n_max)) {
        const FunctionModel diff =
            add(cesaro_power(f, n + 1), scale(cesaro_power(f, n), Cplx(-1.0)));
        t.rows.push_back({n, weighted_sup_norm(diff, gamma, opts).value, std::nullopt});
    }
    return t;
}

std::vector<FunctionModel> default_witnesses(double gamma) {
    std::vector<FunctionModel> w;
    if (gamma < 1.0)
        w.push_back(model_pole(gamma));  // the extremal direction
    else
        w.push_back(model_phi());  // phi lies in A^{-gamma} only for gamma >= 1
    w.push_back(model_constant(1.0));
    w.push_back(model_monomial(1));
    return w;
}

}  // namespace cesaro
