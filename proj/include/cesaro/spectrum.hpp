#pragma once

#include <string>
#include <vector>

#include "cesaro/cesaro_op.hpp"
#include "cesaro/norms.hpp"

namespace cesaro {

enum class Space { kBig, kLittle };

// Exact spectrum of C on A^{-gamma} (big) or A_0^{-gamma} (little): the disk
// |lambda - 1/(2 gamma)| <= 1/(2 gamma) plus the point spectrum {1/m}.
struct SpectrumDescriptor {
    double gamma;
    Space space;
    double disk_center;
    double disk_radius;
    std::vector<double> eigenvalues;  // 1/m for m <= gamma (big) or m < gamma (little)

    bool contains(Cplx lambda, double tol = 1e-12) const;
    // "inside" | "boundary" | "outside" with a 1e-9 collar on the circle.
    std::string classify(Cplx lambda) const;
};

SpectrumDescriptor reference_spectrum(double gamma, Space space);

// Probe functions with precomputed weighted norms; fixed seed makes the
// random polynomials reproducible.
struct ProbeSet {
    std::vector<std::string> names;
    std::vector<FunctionModel> functions;
    std::vector<double> norms;
};

ProbeSet default_probes(double gamma, const GridOptions& opts = {}, std::uint64_t seed = 0x5eed5eed);

// nu_N = max over probes p of ||truncate_N((lambda I - C)^{-1} p)|| / ||p||.
// A lower bound on the section resolvent norm; raw (not monotonized).
double resolvent_probe_norm(Cplx lambda, double gamma, std::size_t n_section,
                            const ProbeSet& probes, const GridOptions& opts = {});

struct PortraitRow {
    Cplx lambda;
    std::vector<double> nu;  // running max over the section list
    double growth_ratio;     // nu.back() / nu.front()
    std::string classification;
};

struct PortraitGrid {
    double re_min, re_max, im_min, im_max, step;
};

std::vector<PortraitRow> portrait(const PortraitGrid& grid, double gamma,
                                  const std::vector<std::size_t>& sections, Space space,
                                  const GridOptions& opts = {});

// Pushes lambda to distance >= eps from every diagonal value 1/(m+1), m <= n_max.
Cplx avoid_diagonal(Cplx lambda, std::size_t n_max, double eps = 1e-9);

struct EigenReport {
    unsigned m;
    double gamma;
    double residual;        // max_n |C e_m - (1/m) e_m| / max(1, |e_m/m|), n <= 2000
    bool in_big, in_little;
    bool expected_big, expected_little;  // m <= gamma, m < gamma
    bool ok() const {
        return residual <= 1e-12 && in_big == expected_big && in_little == expected_little;
    }
};

EigenReport verify_eigenfunction(unsigned m, double gamma, const GridOptions& opts = {});

}  // namespace cesaro
