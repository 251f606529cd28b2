#include "cesaro/cesaro_op.hpp"

#include <algorithm>
#include <cmath>

namespace cesaro {

namespace {

std::optional<double> bumped_growth(const FunctionModel& f, double bump) {
    if (f.growth_order()) return *f.growth_order() + bump;
    return std::nullopt;
}

// In-place averaging pass: v[k] <- (1/(k+1)) sum_{j<=k} v[j], compensated.
void prefix_average_pass(std::vector<Cplx>& v) {
    CompensatedSum sum;
    for (std::size_t k = 0; k < v.size(); ++k) {
        sum.add(v[k]);
        v[k] = sum.value() / static_cast<double>(k + 1);
    }
}

}  // namespace

FunctionModel apply_cesaro(const FunctionModel& f) {
    return FunctionModel(GeneratorSeries{series_prefix_average(f.stream()), bumped_growth(f, 0.0)});
}

FunctionModel apply_inverse_cesaro(const FunctionModel& g) {
    return FunctionModel(
        GeneratorSeries{series_inverse_prefix_average(g.stream()), bumped_growth(g, 1.0)});
}

FunctionModel cesaro_power(const FunctionModel& f, unsigned n) {
    if (n == 0) return f;
    if (n == 1) return apply_cesaro(f);
    Series base = f.stream();
    Series out = series_bulk([base, n](std::vector<Cplx>& dest, std::size_t upto) {
        dest = base.coeffs(upto);
        for (unsigned m = 0; m < n; ++m) prefix_average_pass(dest);
    });
    return FunctionModel(GeneratorSeries{out, bumped_growth(f, 0.0)});
}

FunctionModel cesaro_mean(const FunctionModel& f, unsigned n) {
    if (n == 0) throw DomainError("the Cesaro average index must be positive");
    if (n == 1) return apply_cesaro(f);
    Series base = f.stream();
    Series out = series_bulk([base, n](std::vector<Cplx>& dest, std::size_t upto) {
        std::vector<Cplx> cur = base.coeffs(upto);
        dest.assign(upto + 1, Cplx(0.0));
        for (unsigned m = 1; m <= n; ++m) {
            prefix_average_pass(cur);
            for (std::size_t k = 0; k <= upto; ++k) dest[k] += cur[k];
        }
        const double inv = 1.0 / static_cast<double>(n);
        for (auto& c : dest) c *= inv;
    });
    return FunctionModel(GeneratorSeries{out, bumped_growth(f, 0.0)});
}

FunctionModel solve_lambda_resolvent(const FunctionModel& h, Cplx lambda, std::size_t n_check) {
    for (std::size_t m = 0; m <= n_check; ++m) {
        const Cplx diag = lambda - 1.0 / static_cast<double>(m + 1);
        if (std::abs(diag) <= 1e-13 * std::max(1.0, std::abs(lambda))) throw SingularDiagonal(m);
    }
    return FunctionModel(GeneratorSeries{series_resolvent(h.stream(), lambda), std::nullopt});
}

FunctionModel solve_identity_minus_C(const FunctionModel& h) {
    FunctionModel h_over_z = divide_by_z(h);  // enforces h(0) = 0
    Series integral = series_antiderivative(h_over_z.stream());
    Series phi_times = series_prefix_sum(integral);
    Series f = series_linear_combination({Cplx(1.0), Cplx(1.0)}, {h.stream(), phi_times});
    return FunctionModel(GeneratorSeries{f, std::nullopt});
}

double theoretical_norm_bound(double gamma) {
    if (gamma <= 0.0) throw DomainError("gamma must be positive");
    auto phi = [gamma](double s) {
        if (s <= 0.0) return gamma;
        if (s >= 1.0) return 1.0;
        // 1 - (1-s)^gamma without cancellation for small s
        return -std::expm1(gamma * std::log1p(-s)) / s;
    };
    constexpr int kGrid = 4096;
    double best_s = 0.0, best = phi(0.0);
    for (int i = 1; i <= kGrid; ++i) {
        const double s = static_cast<double>(i) / kGrid;
        const double v = phi(s);
        if (v > best) {
            best = v;
            best_s = s;
        }
    }
    // Golden-section polish around the best grid point.
    const double lo = std::max(0.0, best_s - 1.0 / kGrid);
    const double hi = std::min(1.0, best_s + 1.0 / kGrid);
    const double inv_phi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
    double f1 = phi(x1), f2 = phi(x2);
    for (int i = 0; i < 64; ++i) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = phi(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = phi(x1);
        }
    }
    best = std::max({best, f1, f2});
    return std::max(1.0, best / gamma);
}

OperatorPipeline::OperatorPipeline(FunctionModel base) : base_(base), realized_(base) {}

OperatorPipeline OperatorPipeline::then(Step step) const {
    OperatorPipeline next(*this);
    next.steps_.push_back(step);
    next.realized_ = std::visit(
        [&](const auto& s) -> FunctionModel {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, ApplyC>) return apply_cesaro(next.realized_);
            else if constexpr (std::is_same_v<T, ApplyCInverse>) return apply_inverse_cesaro(next.realized_);
            else if constexpr (std::is_same_v<T, Resolvent>) return solve_lambda_resolvent(next.realized_, s.lambda, 0);
            else if constexpr (std::is_same_v<T, Mean>) return cesaro_mean(next.realized_, s.n);
            else return cesaro_power(next.realized_, s.n);
        },
        step);
    return next;
}

}  // namespace cesaro
