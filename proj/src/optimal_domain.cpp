#include "cesaro/optimal_domain.hpp"

#include <cmath>

namespace cesaro {

MembershipVerdict optimal_domain_membership(const FunctionModel& f, double gamma, Space which,
                                            const GridOptions& opts) {
    if (gamma <= 0.0) throw DomainError("gamma must be positive");
    const MembershipPair inner = classify_membership(multiply_by_phi(f), gamma + 1.0, opts);
    MembershipVerdict out = which == Space::kBig ? inner.big : inner.little;
    out.space = {which == Space::kBig ? SpaceKind::kOptimalDomain : SpaceKind::kLittleOptimalDomain,
                 gamma};
    return out;
}

OptimalDomainNorm optimal_domain_norm(const FunctionModel& f, double gamma,
                                      const GridOptions& opts) {
    OptimalDomainNorm out;
    out.by_definition = weighted_sup_norm(apply_cesaro(f), gamma, opts);
    out.by_phi_weight = weighted_sup_norm(multiply_by_phi(f), gamma + 1.0, opts);
    return out;
}

FunctionModel differentiate(const FunctionModel& f) {
    if (f.is_atoms()) return FunctionModel(atom_sum_derivative(f.atoms()));
    return FunctionModel(GeneratorSeries{series_derivative(f.stream()),
                                         f.growth_order() ? std::optional<double>(*f.growth_order() + 1.0)
                                                          : std::nullopt});
}

FunctionModel integrate(const FunctionModel& f) {
    return FunctionModel(GeneratorSeries{series_antiderivative(f.stream()), std::nullopt});
}

DeltaBoundReport delta_bound_check(const FunctionModel& f, Cplx z0, double r, double gamma,
                                   const GridOptions& opts) {
    if (!(std::abs(z0) < r && r < 1.0))
        throw DomainError("delta bound requires |z0| < r < 1");
    DeltaBoundReport rep;
    rep.lhs = std::abs(evaluate(f, z0, 1e-12).value);
    rep.norm_used = weighted_sup_norm(apply_cesaro(f), gamma, opts).value;
    const double rz = std::abs(z0);
    rep.rhs = std::abs(Cplx(1.0) - z0) * r * r /
              ((r - rz) * (r - rz) * std::pow(1.0 - r, gamma)) * rep.norm_used;
    rep.holds = rep.lhs <= rep.rhs * (1.0 + 1e-9);
    return rep;
}

namespace {

Verdict in_iff(bool cond) { return cond ? Verdict::kIn : Verdict::kOut; }

WitnessEntry make_entry(std::string name, FunctionModel model, double gamma,
                        std::string provenance) {
    WitnessEntry e;
    e.name = std::move(name);
    e.model = std::move(model);
    e.gamma = gamma;
    e.provenance = std::move(provenance);
    return e;
}

void expect_four(WitnessEntry& e, double gamma, Verdict big, Verdict little, Verdict od_big,
                 Verdict od_little) {
    e.expected.push_back({{SpaceKind::kGrowth, gamma}, big});
    e.expected.push_back({{SpaceKind::kLittleGrowth, gamma}, little});
    e.expected.push_back({{SpaceKind::kOptimalDomain, gamma}, od_big});
    e.expected.push_back({{SpaceKind::kLittleOptimalDomain, gamma}, od_little});
}

}  // namespace

std::vector<WitnessEntry> witness_catalog(double gamma) {
    if (gamma <= 0.0) throw DomainError("gamma must be positive");
    const double tol = 1e-12;
    std::vector<WitnessEntry> out;

    {  // g = (1-z)(1+z)^{-(gamma+1)}: in the optimal domain, not in the space
        Atom a;
        a.factors.push_back({Cplx(1.0), -1.0});
        a.factors.push_back({Cplx(-1.0), gamma + 1.0});
        auto e = make_entry("g", FunctionModel(AtomSum{{a}, 0}), gamma,
                            "separates the optimal domain from the growth space; its "
                            "phi-multiple has a constant weighted profile on the negative axis");
        expect_four(e, gamma, Verdict::kOut, Verdict::kOut, Verdict::kIn, Verdict::kOut);
        out.push_back(std::move(e));
    }
    {  // f_beta = (1-z)^{-(gamma+1)}: growth space just above gamma
        auto e = make_entry("f_beta", model_pole(gamma + 1.0), gamma,
                            "shows no growth space larger than A^{-gamma} fits inside the "
                            "optimal domain");
        e.expected.push_back({{SpaceKind::kGrowth, gamma + 1.0}, Verdict::kIn});
        expect_four(e, gamma, Verdict::kOut, Verdict::kOut, Verdict::kOut, Verdict::kOut);
        out.push_back(std::move(e));
    }
    {  // phi = 1/(1-z)
        auto e = make_entry("phi", model_phi(), gamma,
                            "fixed point of the operator; spans the kernel of I - C");
        expect_four(e, gamma, in_iff(gamma >= 1.0 - tol), in_iff(gamma > 1.0 + tol),
                    in_iff(gamma >= 1.0 - tol), in_iff(gamma > 1.0 + tol));
        out.push_back(std::move(e));
    }
    {  // eigenfunctions e_m = z^{m-1} (1-z)^{-m}
        const unsigned m_top = static_cast<unsigned>(std::ceil(gamma)) + 1;
        for (unsigned m = 1; m <= m_top; ++m) {
            const double md = static_cast<double>(m);
            auto e = make_entry("e_" + std::to_string(m), model_eigenfunction(m), gamma,
                                "eigenfunction for eigenvalue 1/" + std::to_string(m));
            expect_four(e, gamma, in_iff(md <= gamma + tol), in_iff(md < gamma - tol),
                        in_iff(md <= gamma + tol), in_iff(md < gamma - tol));
            out.push_back(std::move(e));
        }
    }
    {  // polynomials
        auto e1 = make_entry("one", model_constant(1.0), gamma, "constant baseline");
        expect_four(e1, gamma, Verdict::kIn, Verdict::kIn, Verdict::kIn, Verdict::kIn);
        out.push_back(std::move(e1));
        auto e2 = make_entry("z", model_monomial(1), gamma, "monomial baseline");
        expect_four(e2, gamma, Verdict::kIn, Verdict::kIn, Verdict::kIn, Verdict::kIn);
        out.push_back(std::move(e2));
    }
    {  // C(1) = (1/z) log(1/(1-z))
        Atom a;
        a.q = 1;
        auto e = make_entry("C1", FunctionModel(AtomSum{{a}, 1}), gamma,
                            "image of the constant under the averaging operator");
        expect_four(e, gamma, Verdict::kIn, Verdict::kIn, Verdict::kIn, Verdict::kIn);
        out.push_back(std::move(e));
    }
    return out;
}

MembershipVerdict check_witness(const WitnessEntry& entry, const SpaceRef& space,
                                const GridOptions& opts) {
    switch (space.kind) {
        case SpaceKind::kGrowth:
            return classify_membership(entry.model, space.gamma, opts).big;
        case SpaceKind::kLittleGrowth:
            return classify_membership(entry.model, space.gamma, opts).little;
        case SpaceKind::kOptimalDomain:
            return optimal_domain_membership(entry.model, space.gamma, Space::kBig, opts);
        case SpaceKind::kLittleOptimalDomain:
            return optimal_domain_membership(entry.model, space.gamma, Space::kLittle, opts);
    }
    throw DomainError("unknown space");
}

}  // namespace cesaro
