#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cesaro/ergodic.hpp"
#include "cesaro/parse.hpp"

using namespace cesaro;

TEST_CASE("projection onto the fixed-point direction") {
    const FunctionModel p = project_P(model_constant(1.0), 2.0);
    REQUIRE(p.is_atoms());
    const auto c = coefficients(p, 16);
    for (const auto& v : c) CHECK(v == Cplx(1.0));

    const FunctionModel zero = project_P(model_monomial(1), 2.0);
    CHECK(zero.atoms().atoms.empty());

    // idempotence
    const FunctionModel f = parse_expression("2+z");
    const auto once = coefficients(project_P(f, 2.0), 8);
    const auto twice = coefficients(project_P(project_P(f, 2.0), 2.0), 8);
    for (std::size_t n = 0; n < once.size(); ++n) CHECK(once[n] == twice[n]);

    CHECK_THROWS_AS(project_P(model_constant(1.0), 1.0), DomainError);
}

TEST_CASE("power norms: bounded regime gamma >= 1") {
    const auto t = power_norm_table(2.0, 8, default_witnesses(2.0));
    for (const auto& row : t.rows) {
        CHECK(row.value <= 1.001);
        CHECK(*row.predicted == 1.0);
    }
    const auto t1 = power_norm_table(1.0, 4, {model_phi()});
    for (const auto& row : t1.rows)
        CHECK(row.value == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("power norms: expanding regime gamma = 1/2") {
    GridOptions fine;
    fine.j_max = 64;
    const auto t = power_norm_table(0.5, 2, default_witnesses(0.5), fine);
    CHECK(t.rows[0].value >= 1.99);
    CHECK(*t.rows[0].predicted == 2.0);
    CHECK(*t.rows[1].predicted == 4.0);
    // lower bounds never exceed the exact operator norm
    for (const auto& row : t.rows) CHECK(row.value <= *row.predicted * 1.001);
}

TEST_CASE("uniform mean convergence toward the projection at gamma = 2") {
    const auto t = mean_convergence(model_constant(1.0), 2.0, 64);
    REQUIRE(t.rows.size() >= 5);
    for (std::size_t i = 1; i < t.rows.size(); ++i) CHECK(t.rows[i].value < t.rows[i - 1].value);
    CHECK(t.rows.back().n == 64);
    CHECK(t.rows.back().value < 0.1);

    // the fixed point has zero residual at every n
    const auto tphi = mean_convergence(parse_expression("1/(1-z)"), 2.0, 16);
    for (const auto& row : tphi.rows) CHECK(row.value <= 1e-12);

    // z lies in the range of I - C, so its averages vanish
    const auto tz = mean_convergence(model_monomial(1), 2.0, 64);
    CHECK(tz.rows.back().value < 0.01);
    CHECK(tz.rows.back().value < tz.rows.front().value);

    CHECK_THROWS_AS(mean_convergence(model_constant(1.0), 1.0, 8), DomainError);
}

TEST_CASE("predicted average norms") {
    CHECK(predicted_mean_norm(2.0, 7) == 1.0);
    CHECK(predicted_mean_norm(1.0, 3) == 1.0);
    CHECK(predicted_mean_norm(0.5, 1) == 2.0);
    CHECK(predicted_mean_norm(0.5, 2) == 3.0);
    // rational check: (1/n) sum 2^m = (2^{n+1} - 2)/n, exact in binary64
    for (unsigned n = 1; n <= 16; ++n) {
        const double closed = (std::exp2(double(n + 1)) - 2.0) / double(n);
        CHECK(predicted_mean_norm(0.5, n) == closed);
    }
}

TEST_CASE("average norms bracket the prediction from below") {
    for (double gamma : {0.5, 2.0}) {
        const auto t = mean_norm_table(gamma, 16, default_witnesses(gamma));
        for (const auto& row : t.rows) CHECK(row.value <= *row.predicted * 1.01);
    }
}

TEST_CASE("unbounded averages in the expanding regime (gamma = 1/2)") {
    const FunctionModel w = model_pole(0.5);
    const double base = weighted_sup_norm(w, 0.5).value;
    bool exceeded = false;
    for (unsigned n : {8u, 16u, 30u}) {
        const double v = weighted_sup_norm(cesaro_mean(w, n), 0.5).value / base;
        if (v > 10.0) exceeded = true;
    }
    CHECK(exceeded);
}

TEST_CASE("successive power differences decay for gamma >= 1") {
    const auto tphi = successive_difference(parse_expression("1/(1-z)"), 1.0, 16);
    for (const auto& row : tphi.rows) CHECK(row.value <= 1e-12);

    const auto t1 = successive_difference(model_constant(1.0), 1.0, 32);
    for (std::size_t i = 1; i < t1.rows.size(); ++i) CHECK(t1.rows[i].value < t1.rows[i - 1].value);

    const auto t2 = successive_difference(model_constant(1.0), 2.0, 32);
    const double row4 = t2.rows[2].value;   // schedule 1,2,4,...
    const double row32 = t2.rows.back().value;
    CHECK(t2.rows[2].n == 4);
    CHECK(t2.rows.back().n == 32);
    CHECK(row32 < row4);

    CHECK_THROWS_AS(successive_difference(model_constant(1.0), 0.5, 8), DomainError);
}

TEST_CASE("means of the fixed point are exact at every index") {
    for (unsigned n : {1u, 2u, 16u, 64u}) {
        const auto c = coefficients(cesaro_mean(parse_expression("1/(1-z)"), n), 2000);
        for (const auto& v : c) CHECK(v == Cplx(1.0));
    }
}

TEST_CASE("constructive range membership at gamma = 2") {
    // solve (I - C) f = z and confirm f lands in the big space
    const FunctionModel f = solve_identity_minus_C(model_monomial(1));
    const MembershipPair p = classify_membership(f, 2.0);
    CHECK(p.big.verdict == Verdict::kIn);
    CHECK(p.little.verdict == Verdict::kIn);
}
