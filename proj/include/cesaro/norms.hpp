#pragma once

#include <string>
#include <vector>

#include "cesaro/model.hpp"

namespace cesaro {

// Probe-grid and classifier controls. Accepted from the CLI as a flat
// key=value set.
struct GridOptions {
    int j_max = 56;            // radii r_j = 1 - 2^{-j/4}, j = 0..j_max
    int angles_init = 256;
    int angles_max = 4096;
    double rel_tol = 1e-3;     // per-radius angle-refinement stability
    double eval_tol = 1e-10;   // absolute tolerance handed to evaluate()
    std::size_t coeff_budget = 2'000'000;
    bool refine = true;        // local golden-section polish (radial/angular)
    double slope_dead_zone = 0.05;  // numeric membership: |slope| below = flat
    int trend_window = 12;          // numeric membership: reliable radii used

    bool set(const std::string& key, const std::string& value);  // for key=value input
    std::string echo() const;                                    // canonical key=value list
};

// Certified lower bound on sup (1-|z|)^gamma |f(z)|.
struct NormEstimate {
    double value = 0.0;
    Cplx argmax_z{0.0};
    int radial_resolution = 0;
    int angular_resolution = 0;
    bool stable = false;        // false when refinement still moved the value
                                // or an evaluation ran out of budget
};

struct ProfileRow {
    double r;
    double m;        // (1-r)^gamma * max_theta |f(r e^{i theta})|
    bool reliable;   // false when evaluation hit the budget at this radius
};

double monomial_norm(unsigned k, double gamma);

NormEstimate weighted_sup_norm(const FunctionModel& f, double gamma, const GridOptions& opts = {});

std::vector<ProfileRow> boundary_profile(const FunctionModel& f, double gamma,
                                         const std::vector<double>& radii,
                                         const GridOptions& opts = {});

std::vector<double> default_radii(int j_max);

// --- membership --------------------------------------------------------------

enum class SpaceKind { kGrowth, kLittleGrowth, kOptimalDomain, kLittleOptimalDomain };

struct SpaceRef {
    SpaceKind kind;
    double gamma;
    std::string name() const;  // "A^-g", "A0^-g", "[C,A^-g]", "[C,A0^-g]"
};

enum class Verdict { kIn, kOut, kIndeterminate };
const char* verdict_name(Verdict v);

enum class Method { kAnalytic, kNumeric };

// Decision evidence: the exponent comparison for analytic verdicts, the
// profile slope and radii window for numeric ones.
struct MembershipEvidence {
    double pole_exponent = 0.0;   // analytic: decisive boundary exponent
    int log_power = 0;
    double slope = 0.0;           // numeric: fitted d log m / d log(1/(1-r))
    std::vector<double> radii;    // numeric: window used
    std::string note;
};

struct MembershipVerdict {
    SpaceRef space;
    Verdict verdict = Verdict::kIndeterminate;
    Method method = Method::kAnalytic;
    MembershipEvidence evidence;
};

struct MembershipPair {
    MembershipVerdict big;     // A^{-gamma}
    MembershipVerdict little;  // A_0^{-gamma}
};

// Decide membership in A^{-gamma} and A_0^{-gamma}. Atom sums take the
// analytic boundary-exponent rule where the dominant pole data is unambiguous;
// everything else falls back to the numeric profile-slope rule.
MembershipPair classify_membership(const FunctionModel& f, double gamma,
                                   const GridOptions& opts = {});

// Numeric rule only (exposed for tests and for forcing the trend path).
MembershipPair classify_membership_numeric(const FunctionModel& f, double gamma,
                                           const GridOptions& opts = {});

}  // namespace cesaro
