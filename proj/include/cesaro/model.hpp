#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <variant>

#include "cesaro/atom.hpp"
#include "cesaro/complex.hpp"
#include "cesaro/series.hpp"

namespace cesaro {

// Open-ended coefficient stream plus an optional polynomial-order hint for
// |f_hat(n)|.
struct GeneratorSeries {
    Series stream;
    std::optional<double> growth_order;
};

// An analytic function on the unit disc: either a closed-form atom sum or a
// lazily generated coefficient stream. Immutable after construction; the
// derived coefficient stream of an atom sum is built once and shared.
class FunctionModel {
public:
    FunctionModel() : FunctionModel(AtomSum{}) {}
    explicit FunctionModel(AtomSum atoms);
    explicit FunctionModel(GeneratorSeries gen);

    bool is_atoms() const { return std::holds_alternative<AtomRep>(rep_); }
    const AtomSum& atoms() const { return std::get<AtomRep>(rep_).sum; }
    const std::optional<double>& growth_order() const;

    // Coefficient stream of either representation.
    Series stream() const;

private:
    struct SeriesBox {
        std::once_flag once;
        Series series;
    };
    struct AtomRep {
        AtomSum sum;
        std::shared_ptr<SeriesBox> box;
    };
    std::variant<AtomRep, GeneratorSeries> rep_;
};

struct EvalOptions {
    double r_max = 0.99995;          // generator-series radius cap
    std::size_t coeff_budget = 2'000'000;
};

struct EvalResult {
    Cplx value{0.0};
    double tail_bound = 0.0;   // reported bound on the truncation error
    std::size_t terms = 0;     // coefficients consumed
    bool budget_exceeded = false;
};

// Convenience constructors.
FunctionModel model_constant(Cplx c);
FunctionModel model_monomial(unsigned k, Cplx scale = Cplx(1.0));
FunctionModel model_polynomial(std::vector<Cplx> coeffs);
FunctionModel model_phi();                       // 1/(1-z)
FunctionModel model_pole(double beta);           // (1-z)^{-beta}
FunctionModel model_eigenfunction(unsigned m);   // z^{m-1} (1-z)^{-m}
FunctionModel model_from_generator(std::function<Cplx(std::size_t)> fn,
                                   std::optional<double> growth_order = std::nullopt);

// f_hat(0 .. n_max)
std::vector<Cplx> coefficients(const FunctionModel& f, std::size_t n_max);

// Value at |z| < 1. Atom sums evaluate in closed form; generator series sum
// adaptively until the empirical-ratio tail bound drops below tol, or the
// coefficient budget runs out (flagged, never silent).
EvalResult evaluate(const FunctionModel& f, Cplx z, double tol, const EvalOptions& opts = {});

// Algebra used by the operators and the laboratory.
FunctionModel add(const FunctionModel& f, const FunctionModel& g);
FunctionModel scale(const FunctionModel& f, Cplx c);
FunctionModel multiply_by_phi(const FunctionModel& f);
FunctionModel multiply_by_z(const FunctionModel& f);
FunctionModel divide_by_z(const FunctionModel& f);  // requires f(0) = 0

}  // namespace cesaro
