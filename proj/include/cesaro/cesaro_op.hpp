#pragma once

#include <variant>
#include <vector>

#include "cesaro/model.hpp"

namespace cesaro {

// C(f): g_hat(n) = (1/(n+1)) sum_{k<=n} f_hat(k). Always a generator model;
// the closed-form images (eigenfunctions, C of (1-z)^{-beta}, C(1)) are test
// oracles, not simplification rules.
FunctionModel apply_cesaro(const FunctionModel& f);

// C^{-1}(g): f_hat(n) = (n+1) g_hat(n) - n g_hat(n-1).
FunctionModel apply_inverse_cesaro(const FunctionModel& g);

// C^n f, computed by one bulk pass per request (O(n * length) time,
// O(length) memory).
FunctionModel cesaro_power(const FunctionModel& f, unsigned n);

// (1/n) sum_{m=1}^{n} C^m f.
FunctionModel cesaro_mean(const FunctionModel& f, unsigned n);

// Forward substitution for (lambda I - C) f = h. The system is lower
// triangular, so the first N+1 output coefficients are exact sections of the
// full formal inverse, independent of N. Throws SingularDiagonal if lambda
// equals 1/(m+1) for some m <= N.
FunctionModel solve_lambda_resolvent(const FunctionModel& h, Cplx lambda, std::size_t n_check);

// The lambda = 1 case: f = h + (1/(1-z)) * int_0^z h(t)/t dt, defined for
// h(0) = 0; satisfies (I - C) f = h.
FunctionModel solve_identity_minus_C(const FunctionModel& h);

// max{1, M_gamma / gamma} with M_gamma = sup_{s in [0,1]} (1-(1-s)^gamma)/s.
double theoretical_norm_bound(double gamma);

// A recorded operator composition over a base model, realized lazily.
class OperatorPipeline {
public:
    struct ApplyC {};
    struct ApplyCInverse {};
    struct Resolvent {
        Cplx lambda;
    };
    struct Mean {
        unsigned n;
    };
    struct Power {
        unsigned n;
    };
    using Step = std::variant<ApplyC, ApplyCInverse, Resolvent, Mean, Power>;

    explicit OperatorPipeline(FunctionModel base);
    OperatorPipeline then(Step step) const;

    const FunctionModel& base() const { return base_; }
    const std::vector<Step>& steps() const { return steps_; }
    const FunctionModel& realized() const { return realized_; }

private:
    FunctionModel base_;
    std::vector<Step> steps_;
    FunctionModel realized_;
};

}  // namespace cesaro
