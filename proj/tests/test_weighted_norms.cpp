#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cesaro/norms.hpp"
#include "cesaro/parse.hpp"

using namespace cesaro;

namespace {

struct SM {
    unsigned long long s;
    unsigned long long next() {
        unsigned long long z = (s += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    double uni() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

// Small random atom sums with boundary poles at +-1, exponents in (0, 2].
FunctionModel random_atom_sum(SM& rng) {
    AtomSum s;
    {
        Atom a;
        a.scale = 0.1 + rng.uni();
        s.atoms.push_back(a);
    }
    {
        Atom a;
        a.scale = 0.1 + rng.uni();
        a.p = 1 + static_cast<unsigned>(rng.next() % 3);
        s.atoms.push_back(a);
    }
    {
        Atom a;
        a.scale = 0.1 + rng.uni();
        a.factors.push_back({rng.next() % 2 ? Cplx(1.0) : Cplx(-1.0), 0.25 + 1.75 * rng.uni()});
        s.atoms.push_back(a);
    }
    return FunctionModel(std::move(s));
}

}  // namespace

TEST_CASE("weighted sup norm: closed-form anchors") {
    // (1-|z|) <= |1-z| with equality on [0,1), so the half-power ratio sups to 1
    const NormEstimate a = weighted_sup_norm(parse_expression("(1-z)^-0.5"), 0.5);
    CHECK(a.value == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(a.argmax_z.imag() == 0.0);
    CHECK(a.argmax_z.real() >= 0.0);

    // sup r (1-r) = 1/4 at r = 1/2
    const NormEstimate b = weighted_sup_norm(parse_expression("z"), 1.0);
    CHECK(b.value == doctest::Approx(0.25).epsilon(1e-9));
    CHECK(std::abs(b.argmax_z) == doctest::Approx(0.5).epsilon(1e-6));

    const NormEstimate c = weighted_sup_norm(parse_expression("1"), 2.0);
    CHECK(c.value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(c.argmax_z) == 0.0);
    CHECK(c.stable);
}

TEST_CASE("monomial norm closed form") {
    CHECK(monomial_norm(0, 1.7) == 1.0);
    CHECK(monomial_norm(1, 1.0) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(monomial_norm(2, 1.0) == doctest::Approx(4.0 / 27.0).epsilon(1e-14));
    CHECK_THROWS_AS(monomial_norm(3, 0.0), DomainError);
}

TEST_CASE("norm engine reproduces monomial norms to 1e-4 relative") {
    for (double gamma : {0.5, 1.0, 2.0}) {
        for (unsigned k = 0; k <= 32; ++k) {
            const double want = monomial_norm(k, gamma);
            const double got = weighted_sup_norm(model_monomial(k), gamma).value;
            CHECK(std::abs(got - want) <= 1e-4 * want);
            CHECK(got <= want * (1.0 + 1e-12));  // estimates never exceed the sup
        }
    }
}

TEST_CASE("boundary profiles of the reference functions") {
    const auto radii = default_radii(40);
    const auto phi_rows = boundary_profile(parse_expression("1/(1-z)"), 1.0, radii);
    for (const auto& row : phi_rows) CHECK(row.m == doctest::Approx(1.0).epsilon(1e-9));

    const auto one_rows = boundary_profile(parse_expression("1"), 1.0, radii);
    for (const auto& row : one_rows) CHECK(row.m == doctest::Approx(1.0 - row.r).epsilon(1e-9));

    const auto pole_rows = boundary_profile(parse_expression("(1-z)^-2"), 1.0, radii);
    for (const auto& row : pole_rows)
        CHECK(row.m == doctest::Approx(1.0 / (1.0 - row.r)).epsilon(1e-9));
}

TEST_CASE("estimate dominates every probed profile value and re-evaluates") {
    const std::vector<std::string> exprs = {"1/(1-z)", "(1-z)*(1+z)^-2", "z^2+3", "log1z"};
    for (const auto& e : exprs) {
        const FunctionModel f = parse_expression(e);
        const double gamma = 1.0;
        const NormEstimate est = weighted_sup_norm(f, gamma);
        // profile rows come from scouting-precision evaluations
        for (const auto& row : boundary_profile(f, gamma, default_radii(56)))
            CHECK(est.value >= row.m * (1.0 - 1e-3));
        const double re_eval = std::pow(1.0 - std::abs(est.argmax_z), gamma) *
                               std::abs(evaluate(f, est.argmax_z, 1e-13).value);
        CHECK(std::abs(est.value - re_eval) <= 1e-9 * std::max(1.0, est.value));
    }
}

TEST_CASE("homogeneity of the estimate") {
    SM rng{7};
    for (int i = 0; i < 6; ++i) {
        const FunctionModel f = random_atom_sum(rng);
        const Cplx c = std::polar(0.25 + 3.0 * rng.uni(), 6.28 * rng.uni());
        const double gamma = 0.5 + 1.5 * rng.uni();
        const double lhs = weighted_sup_norm(scale(f, c), gamma).value;
        const double rhs = std::abs(c) * weighted_sup_norm(f, gamma).value;
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, rhs));
    }
}

TEST_CASE("triangle inequality up to grid slack") {
    SM rng{11};
    for (int i = 0; i < 6; ++i) {
        const FunctionModel f = random_atom_sum(rng);
        const FunctionModel g = random_atom_sum(rng);
        const double gamma = 0.75 + rng.uni();
        const double nf = weighted_sup_norm(f, gamma).value;
        const double ng = weighted_sup_norm(g, gamma).value;
        const double nsum = weighted_sup_norm(add(f, g), gamma).value;
        CHECK(nsum <= 1.001 * (nf + ng));
    }
}

TEST_CASE("multiplying by 1/(1-z) raises the weight by one and not the norm") {
    SM rng{13};
    for (int i = 0; i < 50; ++i) {
        const FunctionModel f = random_atom_sum(rng);
        const double gamma = (i % 3 == 0) ? 0.5 : (i % 3 == 1) ? 1.0 : 2.0;
        const double lhs = weighted_sup_norm(multiply_by_phi(f), gamma + 1.0).value;
        const double rhs = weighted_sup_norm(f, gamma).value;
        CHECK(lhs <= 1.001 * rhs);
    }
}

TEST_CASE("membership: analytic verdicts for the named functions") {
    const FunctionModel phi = parse_expression("1/(1-z)");

    const MembershipPair p1 = classify_membership(phi, 1.0);
    CHECK(p1.big.verdict == Verdict::kIn);
    CHECK(p1.little.verdict == Verdict::kOut);
    CHECK(p1.big.method == Method::kAnalytic);
    CHECK(p1.big.evidence.pole_exponent == doctest::Approx(1.0));

    const MembershipPair p2 = classify_membership(phi, 0.5);
    CHECK(p2.big.verdict == Verdict::kOut);
    CHECK(p2.little.verdict == Verdict::kOut);

    const MembershipPair p3 = classify_membership(phi, 2.0);
    CHECK(p3.big.verdict == Verdict::kIn);
    CHECK(p3.little.verdict == Verdict::kIn);

    for (double gamma : {0.25, 1.0, 3.0}) {
        const MembershipPair pp = classify_membership(parse_expression("1+2*z^3"), gamma);
        CHECK(pp.big.verdict == Verdict::kIn);
        CHECK(pp.little.verdict == Verdict::kIn);
        CHECK(pp.big.method == Method::kAnalytic);
    }

    // log growth is little-o of every power
    const MembershipPair pl = classify_membership(parse_expression("log1z"), 0.25);
    CHECK(pl.little.verdict == Verdict::kIn);
    // but at the critical exponent the log factor pushes out of the big space
    const MembershipPair pc = classify_membership(parse_expression("log1z*(1-z)^-1"), 1.0);
    CHECK(pc.big.verdict == Verdict::kOut);
}

TEST_CASE("membership: little verdicts imply big verdicts") {
    const std::vector<std::string> exprs = {"1/(1-z)", "(1-z)^-0.5", "z^2+3", "log1z",
                                            "(1-z)*(1+z)^-2"};
    for (const auto& e : exprs)
        for (double gamma : {0.5, 1.0, 2.0}) {
            const MembershipPair p = classify_membership(parse_expression(e), gamma);
            if (p.little.verdict == Verdict::kIn) CHECK(p.big.verdict == Verdict::kIn);
        }
}

TEST_CASE("membership: cancelling boundary poles fall back to the numeric rule") {
    // (1-z)^{-1} - z (1-z)^{-1} = 1: the shared pole cancels exactly
    const FunctionModel f =
        add(parse_expression("1/(1-z)"), scale(parse_expression("z/(1-z)"), Cplx(-1.0)));
    const MembershipPair p = classify_membership(f, 1.0);
    CHECK(p.big.method == Method::kNumeric);
    CHECK(p.big.verdict == Verdict::kIn);
    CHECK(p.little.verdict == Verdict::kIn);
}

TEST_CASE("membership: numeric trend rule on generator models") {
    // prefix sums of the constant-one stream: phi as a pure generator
    const FunctionModel gen_phi = model_from_generator([](std::size_t) { return Cplx(1.0); });
    const MembershipPair p = classify_membership(gen_phi, 1.0);
    CHECK(p.big.method == Method::kNumeric);
    CHECK(p.big.verdict == Verdict::kIn);       // constant profile: bounded
    CHECK(p.little.verdict == Verdict::kOut);   // but not vanishing
    CHECK(std::abs(p.big.evidence.slope) <= 0.05);

    // decaying: z as a generator
    const FunctionModel gen_z = model_from_generator(
        [](std::size_t n) { return n == 1 ? Cplx(1.0) : Cplx(0.0); });
    const MembershipPair pz = classify_membership(gen_z, 1.0);
    CHECK(pz.big.verdict == Verdict::kIn);
    CHECK(pz.little.verdict == Verdict::kIn);
    CHECK(pz.little.evidence.slope < -0.05);

    // growing: the double pole
    const FunctionModel gen_pole2 = model_from_generator(
        [](std::size_t n) { return Cplx(static_cast<double>(n + 1)); });
    const MembershipPair pg = classify_membership(gen_pole2, 1.0);
    CHECK(pg.big.verdict == Verdict::kOut);
    CHECK(pg.big.evidence.slope > 0.05);
}

TEST_CASE("membership: starved evaluation budget yields indeterminate") {
    GridOptions opts;
    opts.coeff_budget = 2;
    const FunctionModel gen = model_from_generator(
        [](std::size_t n) { return Cplx(1.0 / (1.0 + static_cast<double>(n))); });
    const MembershipPair p = classify_membership(gen, 1.0, opts);
    CHECK(p.big.verdict == Verdict::kIndeterminate);
    CHECK(p.little.verdict == Verdict::kIndeterminate);
}

TEST_CASE("estimates are monotone under grid refinement") {
    const std::vector<std::string> exprs = {"1/(1-z)", "(1-z)*(1+z)^-2", "z^2+3", "(1-z)^-0.5"};
    for (const auto& e : exprs) {
        const FunctionModel f = parse_expression(e);
        double prev = 0.0;
        for (int j : {40, 48, 56}) {
            GridOptions opts;
            opts.j_max = j;
            const double v = weighted_sup_norm(f, 1.0, opts).value;
            CHECK(v >= prev * (1.0 - 1e-12));  // closed-form models: no eval noise
            prev = v;
        }
    }
    // generator models scout at relaxed precision; allow that slack
    const FunctionModel gen = model_from_generator(
        [](std::size_t n) { return Cplx(1.0 / double(n + 1)); });
    double prev = 0.0;
    for (int j : {40, 48, 56}) {
        GridOptions opts;
        opts.j_max = j;
        const double v = weighted_sup_norm(gen, 1.0, opts).value;
        CHECK(v >= prev * (1.0 - 1e-4));
        prev = v;
    }
}

TEST_CASE("grid options parse from key=value pairs") {
    GridOptions g;
    CHECK(g.set("j_max", "80"));
    CHECK(g.set("rel_tol", "1e-4"));
    CHECK(g.set("refine", "0"));
    CHECK_FALSE(g.set("bogus", "1"));
    CHECK(g.j_max == 80);
    CHECK(g.rel_tol == 1e-4);
    CHECK_FALSE(g.refine);
}
