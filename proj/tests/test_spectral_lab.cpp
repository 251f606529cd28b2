#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cesaro/spectrum.hpp"

using namespace cesaro;

TEST_CASE("reference spectra match the exact descriptors") {
    const SpectrumDescriptor little2 = reference_spectrum(2.0, Space::kLittle);
    CHECK(little2.disk_center == doctest::Approx(0.25));
    CHECK(little2.disk_radius == doctest::Approx(0.25));
    REQUIRE(little2.eigenvalues.size() == 1);
    CHECK(little2.eigenvalues[0] == 1.0);

    const SpectrumDescriptor big2 = reference_spectrum(2.0, Space::kBig);
    REQUIRE(big2.eigenvalues.size() == 2);
    CHECK(big2.eigenvalues[1] == 0.5);

    const SpectrumDescriptor little_half = reference_spectrum(0.5, Space::kLittle);
    CHECK(little_half.eigenvalues.empty());
    CHECK(little_half.disk_center == doctest::Approx(1.0));
    CHECK(little_half.disk_radius == doctest::Approx(1.0));
}

TEST_CASE("descriptor geometry: eigenvalue 1/m sits in the disk iff m >= gamma") {
    for (double gamma : {0.5, 1.0, 2.0, 3.5}) {
        const SpectrumDescriptor d = reference_spectrum(gamma, Space::kBig);
        for (unsigned m = 1; m <= 10; ++m) {
            const double lambda = 1.0 / double(m);
            const bool in_disk =
                std::abs(lambda - d.disk_center) <= d.disk_radius + 1e-12;
            CHECK(in_disk == (double(m) >= gamma - 1e-12));
        }
        // the disk's rightmost point is 1/gamma
        CHECK(d.disk_center + d.disk_radius == doctest::Approx(1.0 / gamma));
        // the big eigenvalue set contains the little one, all in (0, 1]
        const SpectrumDescriptor dl = reference_spectrum(gamma, Space::kLittle);
        CHECK(dl.eigenvalues.size() <= d.eigenvalues.size());
        for (std::size_t i = 0; i < dl.eigenvalues.size(); ++i)
            CHECK(dl.eigenvalues[i] == d.eigenvalues[i]);
        for (double ev : d.eigenvalues) {
            CHECK(ev > 0.0);
            CHECK(ev <= 1.0);
        }
    }
}

TEST_CASE("diagonal avoidance pushes to the collar, and only when needed") {
    const Cplx pushed = avoid_diagonal(Cplx(0.25, 0.0), 2048);
    CHECK(std::abs(pushed - Cplx(0.25)) >= 1e-9 * (1.0 - 1e-6));
    const Cplx untouched = avoid_diagonal(Cplx(-0.25, 0.0), 2048);
    CHECK(untouched == Cplx(-0.25, 0.0));
}

TEST_CASE("probe norms: hand-checkable case lambda = 2, probe one") {
    GridOptions opts;
    ProbeSet probes;
    probes.names = {"one"};
    probes.functions = {model_constant(1.0)};
    probes.norms = {1.0};
    const double nu = resolvent_probe_norm(Cplx(2.0), 1.0, 64, probes, opts);

    // oracle: the truncated hand solution, normed by the same engine
    const FunctionModel sol = solve_lambda_resolvent(model_constant(1.0), Cplx(2.0), 64);
    const FunctionModel section(
        GeneratorSeries{series_truncate(sol.stream(), 64), std::nullopt});
    const double want = weighted_sup_norm(section, 1.0, opts).value;
    CHECK(nu == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("probe norms throw on a singular diagonal") {
    GridOptions opts;
    const ProbeSet probes = default_probes(2.0, opts);
    CHECK_THROWS_AS(resolvent_probe_norm(Cplx(0.25), 2.0, 64, probes, opts), SingularDiagonal);
}

TEST_CASE("outside the spectrum the section norms stabilize") {
    GridOptions opts;
    const ProbeSet probes = default_probes(2.0, opts);
    const std::vector<Cplx> samples{{-0.25, 0.0}, {1.5, 0.0}, {0.25, 0.5}, {-0.1, -0.4}, {0.8, 0.0}};
    const SpectrumDescriptor ref = reference_spectrum(2.0, Space::kBig);
    for (const Cplx lambda : samples) {
        REQUIRE_FALSE(ref.contains(lambda, 1e-9));
        const double nu512 = resolvent_probe_norm(lambda, 2.0, 512, probes, opts);
        const double nu1024 = resolvent_probe_norm(lambda, 2.0, 1024, probes, opts);
        CHECK(nu1024 <= 1.05 * nu512);
    }
}

TEST_CASE("portrait: classification geometry and monotone sections") {
    GridOptions opts;
    // 3x3 around the disk center 0.25; corner distance 0.25*sqrt(2) > radius
    PortraitGrid grid{0.0, 0.5, -0.25, 0.25, 0.25};
    const std::vector<std::size_t> sections{32, 64, 128};
    const auto rows = portrait(grid, 2.0, sections, Space::kLittle, opts);
    REQUIRE(rows.size() == 9);
    const SpectrumDescriptor ref = reference_spectrum(2.0, Space::kLittle);
    for (const auto& row : rows) {
        CHECK(row.classification == ref.classify(row.lambda));
        for (std::size_t i = 1; i < row.nu.size(); ++i) CHECK(row.nu[i] >= row.nu[i - 1]);
        CHECK(row.growth_ratio == doctest::Approx(row.nu.back() / row.nu.front()));
    }
    // the center cell is inside; the corners are outside
    CHECK(rows[4].classification == "inside");
    CHECK(rows[0].classification == "outside");
    CHECK(rows[2].classification == "outside");
    CHECK(rows[6].classification == "outside");
    CHECK(rows[8].classification == "outside");

    // an eigenvalue classifies inside for the big space; the circle itself
    // is a collar case
    const SpectrumDescriptor big = reference_spectrum(2.0, Space::kBig);
    CHECK(big.classify(Cplx(1.0, 0.0)) == "inside");
    CHECK(reference_spectrum(2.0, Space::kLittle).classify(Cplx(0.5, 0.0)) == "boundary");
    CHECK(reference_spectrum(2.0, Space::kLittle).classify(Cplx(0.6, 0.0)) == "outside");
}

TEST_CASE("eigenfunction verification across gammas") {
    const EigenReport r11 = verify_eigenfunction(1, 1.0);
    CHECK(r11.residual <= 1e-12);
    CHECK(r11.in_big);
    CHECK_FALSE(r11.in_little);
    CHECK(r11.ok());

    const EigenReport r32 = verify_eigenfunction(3, 2.0);
    CHECK(r32.residual <= 1e-12);
    CHECK_FALSE(r32.in_big);
    CHECK_FALSE(r32.in_little);
    CHECK(r32.ok());

    const EigenReport r13 = verify_eigenfunction(1, 3.0);
    CHECK(r13.in_little);
    CHECK(r13.ok());
}
