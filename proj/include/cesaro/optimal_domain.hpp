#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cesaro/cesaro_op.hpp"
#include "cesaro/norms.hpp"
#include "cesaro/spectrum.hpp"

namespace cesaro {

// f lies in [C, A^{-gamma}] iff f*phi lies in A^{-(gamma+1)} (and in the
// little variant iff f*phi lies in A_0^{-(gamma+1)}).
MembershipVerdict optimal_domain_membership(const FunctionModel& f, double gamma, Space which,
                                            const GridOptions& opts = {});

struct OptimalDomainNorm {
    NormEstimate by_definition;  // ||C f||_{-gamma}
    NormEstimate by_phi_weight;  // ||f phi||_{-(gamma+1)}, the equivalent norm
};

OptimalDomainNorm optimal_domain_norm(const FunctionModel& f, double gamma,
                                      const GridOptions& opts = {});

// Hardy-Littlewood pair: D f = f', J f = int_0^z f. Atom sums differentiate
// exactly in closed form; everything else goes through the coefficient maps
// f_hat(n) <- (n+1) f_hat(n+1) and g_hat(n) = f_hat(n-1)/n.
FunctionModel differentiate(const FunctionModel& f);
FunctionModel integrate(const FunctionModel& f);

// Point-evaluation continuity on the optimal domain:
// |f(z0)| <= |1-z0| r^2 / ((r-|z0|)^2 (1-r)^gamma) * ||C f||_{-gamma}.
struct DeltaBoundReport {
    double lhs;        // |f(z0)|
    double rhs;        // the displayed bound
    double norm_used;  // ||C f||_{-gamma} estimate
    bool holds;
};

DeltaBoundReport delta_bound_check(const FunctionModel& f, Cplx z0, double r, double gamma,
                                   const GridOptions& opts = {});

// Named witness with its expected verdict per space; the catalog is the
// single source of expectations iterated by the verification suite.
struct WitnessEntry {
    std::string name;
    FunctionModel model;
    double gamma;
    std::vector<std::pair<SpaceRef, Verdict>> expected;
    std::string provenance;
};

std::vector<WitnessEntry> witness_catalog(double gamma);

// Evaluate one expected entry with the classifiers.
MembershipVerdict check_witness(const WitnessEntry& entry, const SpaceRef& space,
                                const GridOptions& opts = {});

}  // namespace cesaro
