#include "cesaro/spectrum.hpp"

#include <algorithm>
#include <cmath>

namespace cesaro {

namespace {

// splitmix64: portable deterministic stream for the probe polynomials.
struct SplitMix {
    std::uint64_t state;
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    double uniform() {  // [-1, 1)
        return 2.0 * (static_cast<double>(next() >> 11) * 0x1.0p-53) - 1.0;
    }
};

}  // namespace

bool SpectrumDescriptor::contains(Cplx lambda, double tol) const {
    if (std::abs(lambda - Cplx(disk_center)) <= disk_radius + tol) return true;
    for (double ev : eigenvalues)
        if (std::abs(lambda - Cplx(ev)) <= tol) return true;
    return false;
}

std::string SpectrumDescriptor::classify(Cplx lambda) const {
    constexpr double kCollar = 1e-9;
    const double d = std::abs(lambda - Cplx(disk_center));
    if (std::abs(d - disk_radius) <= kCollar) return "boundary";
    if (d < disk_radius) return "inside";
    for (double ev : eigenvalues)
        if (std::abs(lambda - Cplx(ev)) <= kCollar) return "inside";
    return "outside";
}

SpectrumDescriptor reference_spectrum(double gamma, Space space) {
    if (gamma <= 0.0) throw DomainError("gamma must be positive");
    SpectrumDescriptor d;
    d.gamma = gamma;
    d.space = space;
    d.disk_center = 1.0 / (2.0 * gamma);
    d.disk_radius = d.disk_center;
    for (unsigned m = 1;; ++m) {
        const double md = static_cast<double>(m);
        const bool in = space == Space::kBig ? md <= gamma : md < gamma;
        if (!in) break;
        d.eigenvalues.push_back(1.0 / md);
    }
    return d;
}

ProbeSet default_probes(double gamma, const GridOptions& opts, std::uint64_t seed) {
    ProbeSet ps;
    ps.names = {"one", "z", "z^2"};
    ps.functions = {model_constant(1.0), model_monomial(1), model_monomial(2)};
    SplitMix rng{seed};
    for (int i = 0; i < 3; ++i) {
        std::vector<Cplx> coeffs(9);
        for (auto& c : coeffs) c = Cplx(rng.uniform(), 0.0);
        ps.names.push_back("rand" + std::to_string(i));
        ps.functions.push_back(model_polynomial(std::move(coeffs)));
    }
    for (const auto& f : ps.functions) ps.norms.push_back(weighted_sup_norm(f, gamma, opts).value);
    return ps;
}

double resolvent_probe_norm(Cplx lambda, double gamma, std::size_t n_section,
                            const ProbeSet& probes, const GridOptions& opts) {
    double nu = 0.0;
    for (std::size_t i = 0; i < probes.functions.size(); ++i) {
        FunctionModel sol = solve_lambda_resolvent(probes.functions[i], lambda, n_section);
        FunctionModel section(GeneratorSeries{series_truncate(sol.stream(), n_section), std::nullopt});
        const double num = weighted_sup_norm(section, gamma, opts).value;
        nu = std::max(nu, num / probes.norms[i]);
    }
    return nu;
}

Cplx avoid_diagonal(Cplx lambda, std::size_t n_max, double eps) {
    for (std::size_t m = 0; m <= n_max; ++m) {
        const Cplx d(1.0 / static_cast<double>(m + 1), 0.0);
        const double dist = std::abs(lambda - d);
        if (dist < eps) {
            const Cplx dir = dist == 0.0 ? Cplx(1.0) : (lambda - d) / dist;
            lambda = d + eps * dir;
        }
    }
    return lambda;
}

std::vector<PortraitRow> portrait(const PortraitGrid& grid, double gamma,
                                  const std::vector<std::size_t>& sections, Space space,
                                  const GridOptions& opts) {
    if (grid.step <= 0.0) throw DomainError("portrait step must be positive");
    std::vector<std::size_t> ns = sections;
    if (ns.empty()) ns = {128, 512, 2048};
    std::sort(ns.begin(), ns.end());
    const std::size_t n_max = ns.back();

    const SpectrumDescriptor ref = reference_spectrum(gamma, space);
    const ProbeSet probes = default_probes(gamma, opts);

    std::vector<PortraitRow> rows;
    const double tiny = grid.step * 1e-9;
    for (double im = grid.im_min; im <= grid.im_max + tiny; im += grid.step) {
        for (double re = grid.re_min; re <= grid.re_max + tiny; re += grid.step) {
            Cplx lambda = avoid_diagonal(Cplx(re, im), n_max);
            PortraitRow row;
            row.lambda = lambda;
            double running = 0.0;
            for (std::size_t n : ns) {
                running = std::max(running, resolvent_probe_norm(lambda, gamma, n, probes, opts));
                row.nu.push_back(running);
            }
            row.growth_ratio = row.nu.front() > 0.0 ? row.nu.back() / row.nu.front() : 0.0;
            row.classification = ref.classify(lambda);
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

EigenReport verify_eigenfunction(unsigned m, double gamma, const GridOptions& opts) {
    if (m == 0) throw DomainError("m must be positive");
    EigenReport rep;
    rep.m = m;
    rep.gamma = gamma;

    const FunctionModel e = model_eigenfunction(m);
    const FunctionModel ce = apply_cesaro(e);
    const std::vector<Cplx> ec = coefficients(e, 2000);
    const std::vector<Cplx> cc = coefficients(ce, 2000);
    const double inv_m = 1.0 / static_cast<double>(m);
    double worst = 0.0;
    for (std::size_t n = 0; n <= 2000; ++n) {
        const Cplx want = ec[n] * inv_m;
        const double scale = std::max(1.0, std::abs(want));
        worst = std::max(worst, std::abs(cc[n] - want) / scale);
    }
    rep.residual = worst;

    const MembershipPair mp = classify_membership(e, gamma, opts);
    rep.in_big = mp.big.verdict == Verdict::kIn;
    rep.in_little = mp.little.verdict == Verdict::kIn;
    rep.expected_big = static_cast<double>(m) <= gamma;
    rep.expected_little = static_cast<double>(m) < gamma;
    return rep;
}

}  // namespace cesaro
