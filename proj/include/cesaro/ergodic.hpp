#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cesaro/cesaro_op.hpp"
#include "cesaro/norms.hpp"

namespace cesaro {

enum class TableKind { kPowerNorm, kMeanResidual, kMeanNorm, kSuccessiveDiff };
const char* table_kind_name(TableKind k);

struct ConvergenceRow {
    unsigned n;
    double value;
    std::optional<double> predicted;
};

struct ConvergenceTable {
    TableKind kind;
    std::vector<ConvergenceRow> rows;
};

// P(f) = f(0) * phi; defined for gamma > 1 (phi must belong to the space).
FunctionModel project_P(const FunctionModel& f, double gamma);

// Row n: max over witnesses of ||C^n f|| / ||f||, against predicted
// max{1, gamma^{-n}}. Rows at n = 1, 2, 4, ... up to n_max (plus n_max).
ConvergenceTable power_norm_table(double gamma, unsigned n_max,
                                  const std::vector<FunctionModel>& witnesses,
                                  const GridOptions& opts = {});

// Row n: ||(C)_[n] f - P f||_{-gamma}; gamma > 1.
ConvergenceTable mean_convergence(const FunctionModel& f, double gamma, unsigned n_max,
                                  const GridOptions& opts = {});

// Row n: max over witnesses of ||(C)_[n] f|| / ||f||, against predicted_mean_norm.
ConvergenceTable mean_norm_table(double gamma, unsigned n_max,
                                 const std::vector<FunctionModel>& witnesses,
                                 const GridOptions& opts = {});

// 1 for gamma >= 1; (1/n) sum_{m=1}^{n} gamma^{-m} for 0 < gamma < 1.
double predicted_mean_norm(double gamma, unsigned n);

// Row n: ||C^{n+1} f - C^n f||_{-gamma}; gamma >= 1.
ConvergenceTable successive_difference(const FunctionModel& f, double gamma, unsigned n_max,
                                       const GridOptions& opts = {});

// Default witness set for the norm tables: f_gamma = (1-z)^{-gamma} when
// gamma < 1, plus phi, the constant 1 and z.
std::vector<FunctionModel> default_witnesses(double gamma);

std::vector<unsigned> doubling_schedule(unsigned n_max);

}  // namespace cesaro
