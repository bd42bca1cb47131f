#include "prft/distribution.hpp"
#include "prft/engine.hpp"
#include "prft/error.hpp"
#include "prft/rng.hpp"
#include "prft/spectral.hpp"
#include "prft/validate.hpp"

#include "fixtures.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace prft;

namespace {

double max_rel_spectrum_error(const std::vector<double>& x, const AmplitudeSpectrum& stored) {
    const auto mags = magnitudes(x);
    double worst = 0.0;
    for (std::size_t k = 0; k < mags.size(); ++k) worst = std::max(worst, std::abs(mags[k] - stored.mags[k]));
    return worst / stored.max();
}

std::vector<double> sorted(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v;
}

} // namespace

TEST_SUITE("impose_moments") {
    TEST_CASE("maps onto the target mean and spread") {
        const std::vector<double> z{1, 2, 3}, y{10, 20, 30};
        const auto out = impose_moments(z, y);
        for (std::size_t i = 0; i < 3; ++i) CHECK(out[i] == doctest::Approx(y[i]).epsilon(1e-14));
    }

    TEST_CASE("property: matches oracle moments, preserves order") {
        Rng rng(4);
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<double> z(64), y(64);
            for (auto& v : z) v = rng.normal();
            for (auto& v : y) v = 5.0 + 3.0 * rng.uniform01();
            const auto out = impose_moments(z, y);
            CHECK(oracle::moment_mean(out) == doctest::Approx(oracle::moment_mean(y)).epsilon(1e-12));
            CHECK(oracle::moment_std(out) == doctest::Approx(oracle::moment_std(y)).epsilon(1e-12));
            CHECK(oracle::brute_kendall(z, out) == doctest::Approx(1.0));
        }
    }

    TEST_CASE("constant z is degenerate") {
        const std::vector<double> z{2, 2, 2}, y{1, 2, 3};
        CHECK_THROWS_AS(impose_moments(z, y), DegenerateInputError);
    }
}

TEST_SUITE("rank_reorder") {
    TEST_CASE("small example") {
        const std::vector<double> y{1, 2, 3}, z{0.3, 0.1, 0.2};
        CHECK(rank_reorder(y, z) == std::vector<double>{3, 1, 2});
    }

    TEST_CASE("ties in z rank by position") {
        const std::vector<double> y{1, 2, 3, 4}, z{5, 5, 0, 5};
        CHECK(rank_reorder(y, z) == std::vector<double>{2, 3, 1, 4});
    }

    TEST_CASE("unsorted target is a contract violation") {
        const std::vector<double> y{2, 1}, z{0, 1};
        CHECK_THROWS_AS(rank_reorder(y, z), ContractViolation);
        CHECK_THROWS_AS(rank_reorder(std::vector<double>{1, 2, 3}, z), ContractViolation);
    }

    TEST_CASE("property: agrees with the double-sort oracle") {
        Rng rng(200);
        for (int trial = 0; trial < 200; ++trial) {
            const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform01() * 300);
            std::vector<double> z(n), y(n);
            for (auto& v : z) v = rng.normal();
            for (auto& v : y) v = rng.uniform01() * 20.0;
            std::sort(y.begin(), y.end());
            const auto got = rank_reorder(y, z);
            CHECK(got == oracle::double_sort_reorder(y, z));
            CHECK(sorted(got) == y);
        }
    }
}

TEST_SUITE("discrepancy") {
    TEST_CASE("zero for any permutation of the target") {
        const std::vector<double> y{1, 2, 3, 4}, z{4, 2, 1, 3};
        CHECK(discrepancy(z, y) == 0.0);
        CHECK(discrepancy(z, y, ConvergenceMetric::MaxAbs) == 0.0);
    }

    TEST_CASE("shift by one standard deviation") {
        const std::vector<double> y{1, 2, 3, 4};
        const double s = oracle::moment_std(y);
        std::vector<double> z{1 + s, 2 + s, 3 + s, 4 + s};
        CHECK(discrepancy(z, y) == doctest::Approx(1.0));
        z[3] += s;
        CHECK(discrepancy(z, y, ConvergenceMetric::MaxAbs) == doctest::Approx(2.0));
    }

    TEST_CASE("length mismatch is a contract violation") {
        CHECK_THROWS_AS(discrepancy(std::vector<double>{1, 2}, std::vector<double>{1, 2, 3}), ContractViolation);
    }
}

TEST_SUITE("initialize") {
    TEST_CASE("z0 carries the target moments and the stored spectrum is its own") {
        const auto ts = fixtures::white_noise(1024, 1);
        const auto init = initialize(ts, fit_empirical(ts), 9);
        CHECK(std::is_sorted(init.y.begin(), init.y.end()));
        CHECK(oracle::moment_mean(init.z0) == doctest::Approx(oracle::moment_mean(init.y)).epsilon(1e-12));
        CHECK(oracle::moment_std(init.z0) == doctest::Approx(oracle::moment_std(init.y)).epsilon(1e-12));
        CHECK(max_rel_spectrum_error(init.z0, init.stored) < 1e-12);
        // DC is kept: it carries the target mean
        CHECK(init.stored.dc() == doctest::Approx(1024 * oracle::moment_mean(init.y)).epsilon(1e-12));
    }

    TEST_CASE("deterministic in the seed") {
        const auto ts = fixtures::white_noise(512, 2);
        const auto d = fit_empirical(ts);
        CHECK(initialize(ts, d, 3).z0 == initialize(ts, d, 3).z0);
        CHECK(initialize(ts, d, 3).z0 != initialize(ts, d, 4).z0);
    }

    TEST_CASE("constant record has no spectrum to reproduce") {
        auto ts = fixtures::white_noise(256, 3);
        std::fill(ts.values.begin(), ts.values.end(), 5.0);
        CHECK_THROWS_AS(initialize(ts, TargetDistribution::weibull(2.0, 8.0), 1), DegenerateInputError);
    }
}

TEST_SUITE("generate") {
    TEST_CASE("psd-exact output reproduces the stored spectrum") {
        const auto ts = fixtures::wind_year();
        PrftOptions o;
        o.seed = 11;
        const auto r = generate(ts, fit_empirical(ts), o);
        CHECK(max_rel_spectrum_error(r.surrogate.values, r.stored_amps) <= 1e-9);
        CHECK(r.surrogate.size() == ts.size());
        CHECK(r.surrogate.start == ts.start);
    }

    TEST_CASE("pdf-exact output is a permutation of the target sample") {
        const auto ts = fixtures::wind_year();
        const auto dist = fit_empirical(ts);
        PrftOptions o;
        o.seed = 12;
        o.variant = OutputVariant::PdfExact;
        const auto r = generate(ts, dist, o);
        CHECK(sorted(r.surrogate.values) == sample_target(dist, ts.size()));
    }

    TEST_CASE("Weibull target") {
        const auto ts = fixtures::wind_year();
        const auto dist = fit_weibull(ts);
        PrftOptions o;
        o.seed = 5;
        o.variant = OutputVariant::PdfExact;
        const auto r = generate(ts, dist, o);
        CHECK(sorted(r.surrogate.values) == sample_target(dist, ts.size()));
    }

    TEST_CASE("same seed, same surrogate") {
        const auto ts = fixtures::white_noise(2048, 4);
        const auto d = fit_empirical(ts);
        PrftOptions o;
        o.seed = 77;
        const auto a = generate(ts, d, o);
        const auto b = generate(ts, d, o);
        CHECK(a.surrogate.values == b.surrogate.values);
        CHECK(a.trace == b.trace);
        CHECK(a.seed == 77);
    }

    TEST_CASE("different seeds give the same values in a different order") {
        const auto ts = fixtures::white_noise(4096, 5);
        const auto d = fit_empirical(ts);
        PrftOptions o;
        o.variant = OutputVariant::PdfExact;
        o.seed = 1;
        const auto a = generate(ts, d, o);
        o.seed = 2;
        const auto b = generate(ts, d, o);
        CHECK(sorted(a.surrogate.values) == sorted(b.surrogate.values));
        CHECK(std::abs(kendall_tau(a.surrogate.values, b.surrogate.values)) < 0.5);
    }

    TEST_CASE("white noise stalls at a fixed point just under 1e-3") {
        // the sorted-rmse floor for a length-N record sits near 4/N
        const auto ts = fixtures::white_noise(4096, 3);
        PrftOptions o;
        o.seed = 1;
        o.tol = 1e-6;
        const auto r = generate(ts, fit_empirical(ts), o);
        CHECK_FALSE(r.converged);
        CHECK(r.termination == Termination::FixedPoint);
        CHECK(r.discrepancy < 1e-3);
        CHECK(r.iterations_used < 200);

        o.tol = 2e-3;
        const auto loose = generate(ts, fit_empirical(ts), o);
        CHECK(loose.converged);
        CHECK(loose.termination == Termination::Tolerance);
        CHECK(loose.discrepancy <= 2e-3);
    }

    TEST_CASE("trace is monotone up to the returned iterate") {
        const auto ts = fixtures::wind_year();
        PrftOptions o;
        o.seed = 3;
        const auto r = generate(ts, fit_empirical(ts), o);
        REQUIRE(r.trace.size() == r.iterations_used);
        std::size_t upto = r.trace.size();
        if (r.termination == Termination::Increase) --upto;
        for (std::size_t i = 2; i < upto; ++i) CHECK(r.trace[i] <= r.trace[i - 1]);
        CHECK(r.discrepancy == r.trace[upto - 1]);
        CHECK(r.trace.front() < 0.1);
    }

    TEST_CASE("iteration cap") {
        const auto ts = fixtures::wind_year();
        PrftOptions o;
        o.max_iter = 2;
        o.tol = 1e-12;
        const auto r = generate(ts, fit_empirical(ts), o);
        CHECK(r.termination == Termination::IterationCap);
        CHECK(r.iterations_used == 2);
        CHECK_FALSE(r.converged);
    }

    TEST_CASE("max-abs metric is never below sorted rmse") {
        const auto ts = fixtures::white_noise(2048, 8);
        const auto d = fit_empirical(ts);
        PrftOptions o;
        o.seed = 2;
        o.max_iter = 5;
        o.tol = 1e-12;
        const auto rmse = generate(ts, d, o);
        o.metric = ConvergenceMetric::MaxAbs;
        const auto maxabs = generate(ts, d, o);
        CHECK(rmse.surrogate.values == maxabs.surrogate.values);
        for (std::size_t i = 0; i < rmse.trace.size(); ++i) CHECK(maxabs.trace[i] >= rmse.trace[i]);
    }

    TEST_CASE("bad options") {
        const auto ts = fixtures::white_noise(64, 1);
        PrftOptions o;
        o.max_iter = 0;
        CHECK_THROWS_AS(generate(ts, fit_empirical(ts), o), ContractViolation);
        o = {};
        o.tol = -1.0;
        CHECK_THROWS_AS(generate(ts, fit_empirical(ts), o), ContractViolation);
    }
}

TEST_SUITE("ensemble") {
    TEST_CASE("members equal sequential runs with the same seeds") {
        const auto ts = fixtures::white_noise(1024, 6);
        const auto d = fit_empirical(ts);
        PrftOptions o;
        for (std::size_t count : {1u, 3u}) {
            for (std::size_t threads : {1u, 3u}) {
                const auto members = generate_ensemble(ts, d, o, count, SeedStream(42), threads);
                REQUIRE(members.size() == count);
                auto seeds = SeedStream(42).take(count);
                for (std::size_t i = 0; i < count; ++i) {
                    CHECK(members[i].seed == seeds[i]);
                    REQUIRE(members[i].result);
                    PrftOptions single = o;
                    single.seed = seeds[i];
                    CHECK(members[i].result->surrogate.values == generate(ts, d, single).surrogate.values);
                }
            }
        }
    }

    TEST_CASE("failures are recorded per slot") {
        auto ts = fixtures::white_noise(128, 1);
        std::fill(ts.values.begin(), ts.values.end(), 3.0);
        const auto members = generate_ensemble(ts, TargetDistribution::weibull(2.0, 8.0), {}, 4, SeedStream(1), 2);
        REQUIRE(members.size() == 4);
        for (const auto& m : members) {
            CHECK_FALSE(m.result);
            CHECK_FALSE(m.error.empty());
        }
    }

    TEST_CASE("empty ensemble is a contract violation") {
        const auto ts = fixtures::white_noise(64, 1);
        CHECK_THROWS_AS(generate_ensemble(ts, fit_empirical(ts), {}, 0, SeedStream(1)), ContractViolation);
    }
}

TEST_CASE("names") {
    CHECK(std::string(to_string(Termination::FixedPoint)) == "fixed-point");
    CHECK(std::string(to_string(ConvergenceMetric::MaxAbs)) == "max-abs");
    CHECK(std::string(to_string(OutputVariant::PdfExact)) == "pdf-exact");
}
