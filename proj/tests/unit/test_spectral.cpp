#include "prft/error.hpp"
#include "prft/rng.hpp"
#include "prft/spectral.hpp"

#include "fixtures.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace prft;

namespace {

std::vector<double> random_vector(std::size_t n, Rng& rng) {
    std::vector<double> x(n);
    for (auto& v : x) v = 2.0 * rng.uniform01() - 1.0;
    return x;
}

double max_abs_diff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

double max_abs(const std::vector<double>& x) {
    double m = 0.0;
    for (double v : x) m = std::max(m, std::abs(v));
    return m;
}

TimeSeries series(std::vector<double> v, double dt = 1.0) {
    TimeSeries ts;
    ts.values = std::move(v);
    ts.dt = dt;
    return ts;
}

std::vector<double> cosine(std::size_t n, std::size_t k0, double amp, double phase = 0.0) {
    std::vector<double> x(n);
    for (std::size_t t = 0; t < n; ++t)
        x[t] = amp * std::cos(2.0 * std::numbers::pi * static_cast<double>(k0 * t) / static_cast<double>(n) + phase);
    return x;
}

} // namespace

TEST_SUITE("dft") {
    TEST_CASE("constant signal has only DC") {
        const auto X = dft(std::vector<double>{1, 1, 1, 1});
        CHECK(std::abs(X[0] - Complex(4, 0)) < 1e-12);
        for (std::size_t k = 1; k < 4; ++k) CHECK(std::abs(X[k]) < 1e-12);
    }

    TEST_CASE("quarter-wave sine matches the brute-force sum") {
        const std::vector<double> x{0, 1, 0, -1};
        const auto oracle = oracle::brute_dft(x);
        // frozen from the oracle: [0, -2j, 0, 2j]
        const std::vector<Complex> expected{{0, 0}, {0, -2}, {0, 0}, {0, 2}};
        CHECK(max_abs_diff(oracle, expected) < 1e-12);
        CHECK(max_abs_diff(dft(x), expected) < 1e-12);
    }

    TEST_CASE("random length-16 vector matches the oracle") {
        Rng rng(16);
        const auto x = random_vector(16, rng);
        CHECK(max_abs_diff(dft(x), oracle::brute_dft(x)) < 1e-10);
    }

    TEST_CASE("property: oracle agreement for every N up to 64") {
        Rng rng(64);
        for (std::size_t n = 1; n <= 64; ++n)
            for (int rep = 0; rep < 3; ++rep) {
                const auto x = random_vector(n, rng);
                CHECK_MESSAGE(max_abs_diff(dft(x), oracle::brute_dft(x)) < 1e-10, "n=" << n);
            }
    }

    TEST_CASE("property: inverse of forward reproduces the input for N = 1..1024") {
        Rng rng(1024);
        double worst = 0.0;
        for (std::size_t n = 1; n <= 1024; ++n) {
            const auto x = random_vector(n, rng);
            const auto back = idft_real(dft(x));
            double d = 0.0;
            for (std::size_t i = 0; i < n; ++i) d = std::max(d, std::abs(back[i] - x[i]));
            worst = std::max(worst, d / max_abs(x));
        }
        CHECK(worst < 1e-10);
    }
}

TEST_SUITE("target_amplitudes") {
    TEST_CASE("constant series has an all-zero spectrum") {
        const auto a = target_amplitudes(series({5, 5, 5, 5}));
        CHECK(a.max() == 0.0);
        CHECK(a.n == 4);
    }

    TEST_CASE("sampled cosine puts aN/2 in its bin") {
        const std::size_t n = 128, k0 = 9;
        const double amp = 2.5;
        const auto x = cosine(n, k0, amp, 0.3);
        const auto a = target_amplitudes(series(x));
        const auto oracle = oracle::brute_dft(x);
        CHECK(std::abs(std::abs(oracle[k0]) - amp * n / 2.0) < 1e-9);
        CHECK(a.mags[k0] == doctest::Approx(amp * n / 2.0).epsilon(1e-12));
        for (std::size_t k = 0; k < n; ++k)
            if (k != k0) CHECK(a.mags[k] < 1e-9);
        CHECK(a.is_half_band());
    }

    TEST_CASE("quarter-wave sine keeps only bin 1") {
        const auto a = target_amplitudes(series({0, 1, 0, -1}));
        const std::vector<double> expected{0, 2, 0, 0};
        for (std::size_t k = 0; k < 4; ++k) CHECK(a.mags[k] == doctest::Approx(expected[k]).epsilon(1e-12));
    }

    TEST_CASE("frequency resolution is fs/N") {
        const auto a = target_amplitudes(fixtures::white_noise(100, 1));
        CHECK(a.df == doctest::Approx(1.0 / (100 * 3600.0)));
    }
}

TEST_SUITE("random_phase_multisine") {
    TEST_CASE("zero spectrum gives zero series") {
        AmplitudeSpectrum a{std::vector<double>(32, 0.0), 32, 1.0};
        const auto z = random_phase_multisine(a, 99);
        CHECK(max_abs(z) == 0.0);
    }

    TEST_CASE("single bin of height N/2 is a unit cosine") {
        const std::size_t n = 64, k0 = 5;
        AmplitudeSpectrum a{std::vector<double>(n, 0.0), n, 1.0};
        a.mags[k0] = n / 2.0;
        const auto z = random_phase_multisine(a, 7);
        // recover the phase by projection and compare with the closed form
        double c = 0.0, s = 0.0;
        for (std::size_t t = 0; t < n; ++t) {
            const double w = 2.0 * std::numbers::pi * static_cast<double>(k0 * t) / n;
            c += z[t] * std::cos(w);
            s += z[t] * std::sin(w);
        }
        const double phi = std::atan2(-s, c);
        const auto expected = cosine(n, k0, 1.0, phi);
        for (std::size_t t = 0; t < n; ++t) CHECK(std::abs(z[t] - expected[t]) < 1e-9);
        CHECK(std::abs(max_abs(z) - 1.0) < 1e-2);  // sampled peak of a bin-5 cosine on 64 points
        CHECK(std::sqrt(c * c + s * s) == doctest::Approx(n / 2.0).epsilon(1e-9));
    }

    TEST_CASE("same seed gives bitwise identical output") {
        const auto a = target_amplitudes(fixtures::white_noise(500, 3));
        CHECK(random_phase_multisine(a, 11) == random_phase_multisine(a, 11));
        CHECK(random_phase_multisine(a, 11) != random_phase_multisine(a, 12));
    }

    TEST_CASE("property: real output and unit factor on the retained band") {
        for (std::size_t n : {7u, 8u, 101u, 256u, 1000u}) {
            const auto a = target_amplitudes(fixtures::white_noise(n, n));
            const auto spectrum = multisine_spectrum(a, 5);
            for (const auto& v : idft(spectrum)) CHECK(std::abs(v.imag()) < 1e-12);
            const auto back = magnitudes(random_phase_multisine(a, 5));
            for (std::size_t k = 0; k < n; ++k) {
                const double expected = in_half_band(k, n) ? a.mags[k] : (in_half_band(n - k, n) ? a.mags[n - k] : 0.0);
                CHECK(std::abs(back[k] - 1.0 * expected) < 1e-9 * a.max());
            }
        }
    }

    TEST_CASE("rejects a spectrum carrying DC") {
        AmplitudeSpectrum a{std::vector<double>(8, 0.0), 8, 1.0};
        a.mags[0] = 1.0;
        CHECK_THROWS_AS(random_phase_multisine(a, 1), ContractViolation);
    }
}

TEST_SUITE("spectral_phases") {
    TEST_CASE("constant signal has zero phases") {
        const auto p = spectral_phases(std::vector<double>{1, 1, 1, 1});
        for (double v : p.phases) CHECK(v == 0.0);
    }

    TEST_CASE("quarter-wave sine") {
        const auto p = spectral_phases(std::vector<double>{0, 1, 0, -1});
        CHECK(p.phases[1] == doctest::Approx(-std::numbers::pi / 2));
        CHECK(p.phases[3] == doctest::Approx(std::numbers::pi / 2));
        CHECK(p.phases[0] == 0.0);
        CHECK(p.phases[2] == 0.0);
    }

    TEST_CASE("scale invariance") {
        Rng rng(3);
        const auto x = random_vector(50, rng);
        std::vector<double> x2(x);
        for (auto& v : x2) v *= 2.0;
        CHECK(spectral_phases(x).phases == spectral_phases(x2).phases);
    }

    TEST_CASE("phases lie in [-pi, pi)") {
        Rng rng(4);
        for (double v : spectral_phases(random_vector(333, rng)).phases) {
            CHECK(v >= -std::numbers::pi);
            CHECK(v < std::numbers::pi);
        }
    }
}

TEST_SUITE("restore_amplitudes") {
    TEST_CASE("property: magnitudes and phases of x rebuild x") {
        Rng rng(8);
        for (std::size_t n : {1u, 2u, 3u, 17u, 64u, 999u}) {
            const auto x = random_vector(n, rng);
            AmplitudeSpectrum a{magnitudes(x), n, 1.0};
            const auto back = restore_amplitudes(a, spectral_phases(x));
            for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(back[i] - x[i]) < 1e-9);
        }
    }

    TEST_CASE("zero amplitudes give zero series") {
        AmplitudeSpectrum a{std::vector<double>(10, 0.0), 10, 1.0};
        PhaseVector p{std::vector<double>(10, 1.234)};
        CHECK(max_abs(restore_amplitudes(a, p)) == 0.0);
    }

    TEST_CASE("length-32 Hermitian case reproduces the stored magnitudes") {
        Rng rng(32);
        const auto donor = random_vector(32, rng);   // source of Hermitian magnitudes
        const auto phases_from = random_vector(32, rng);
        AmplitudeSpectrum a{magnitudes(donor), 32, 1.0};
        const auto z = restore_amplitudes(a, spectral_phases(phases_from));
        const auto X = oracle::brute_dft(z);
        for (std::size_t k = 0; k < 32; ++k) CHECK(std::abs(std::abs(X[k]) - a.mags[k]) < 1e-9 * a.max());
    }

    TEST_CASE("length mismatch is a contract violation") {
        AmplitudeSpectrum a{std::vector<double>(4, 1.0), 4, 1.0};
        CHECK_THROWS_AS(restore_amplitudes(a, PhaseVector{std::vector<double>(5, 0.0)}), ContractViolation);
    }
}

TEST_SUITE("acf") {
    TEST_CASE("lag zero is one") {
        Rng rng(1);
        CHECK(acf(random_vector(100, rng), 10)[0] == 1.0);
    }

    TEST_CASE("cosine returns to ~1 after one period") {
        const std::size_t n = 2400, period = 24;
        const auto x = cosine(n, n / period, 1.0);
        const auto r = acf(x, period);
        const auto ref = oracle::brute_acf(x, period);
        for (std::size_t l = 0; l <= period; ++l) CHECK(std::abs(r[l] - ref[l]) < 1e-12);
        CHECK(r[period] == doctest::Approx(1.0 - double(period) / n).epsilon(1e-6));
    }

    TEST_CASE("white noise stays inside the 2/sqrt(N) band") {
        const auto x = fixtures::white_noise(10000, 42).values;
        const auto r = acf(x, 100);
        for (std::size_t l = 1; l <= 100; ++l) CHECK(std::abs(r[l]) < 0.05);
    }

    TEST_CASE("agrees with the Wiener-Khinchin route") {
        Rng rng(9);
        for (std::size_t n : {5u, 64u, 1001u}) {
            const auto x = random_vector(n, rng);
            const auto a = acf(x, n - 1);
            const auto b = acf_wiener_khinchin(x, n - 1);
            for (std::size_t l = 0; l < n; ++l) CHECK(std::abs(a[l] - b[l]) < 1e-6);
        }
    }

    TEST_CASE("errors") {
        CHECK_THROWS_AS(acf(std::vector<double>{3, 3, 3}, 1), DegenerateInputError);
        CHECK_THROWS_AS(acf(std::vector<double>{1, 2, 3}, 3), ContractViolation);
    }
}

TEST_SUITE("periodogram") {
    TEST_CASE("unit cosine shows one dominant bin") {
        const std::size_t n = 1024, k0 = 37;
        const auto p = periodogram(series(cosine(n, k0, 1.0)));
        const auto peak = std::max_element(p.values.begin(), p.values.end()) - p.values.begin();
        CHECK(p.bins[peak] == k0);
        double floor = 0.0;
        for (std::size_t i = 0; i < p.values.size(); ++i)
            if (i != static_cast<std::size_t>(peak)) floor = std::max(floor, p.values[i]);
        CHECK(10.0 * std::log10(p.values[peak] / std::max(floor, 1e-300)) >= 60.0);
    }

    TEST_CASE("Parseval: half-band power equals the variance") {
        for (std::size_t n : {4097u, 4096u}) {
            auto ts = fixtures::white_noise(n, 77);
            double m = 0.0;
            for (double v : ts.values) m += v;
            m /= n;
            for (auto& v : ts.values) v -= m;
            const auto p = periodogram(ts);
            const double df = 1.0 / (n * ts.dt);
            double power = 0.0;
            for (double v : p.values) power += v * df;
            CHECK(power == doctest::Approx(oracle::moment_std(ts.values) * oracle::moment_std(ts.values)).epsilon(1e-3));
        }
    }

    TEST_CASE("dB per cycle/hour conversion") {
        auto ts = fixtures::white_noise(240, 5);
        const auto lin = periodogram(ts);
        const auto db = periodogram(ts, PeriodogramUnits::DbPerCyclePerHour);
        REQUIRE(lin.values.size() == db.values.size());
        for (std::size_t i = 0; i < lin.values.size(); ++i) {
            CHECK(db.freqs[i] == doctest::Approx(lin.freqs[i] * 3600.0));
            CHECK(db.values[i] == doctest::Approx(10.0 * std::log10(lin.values[i] / 3600.0)));
        }
        // hourly data: bin k sits at k/N cycles per hour
        CHECK(db.freqs[0] == doctest::Approx(1.0 / 240.0));
    }

    TEST_CASE("annual peak of a 10-year hourly record sits near 3.17e-8 Hz") {
        const std::size_t n = 87648;
        auto ts = fixtures::white_noise(n, 2003);
        for (std::size_t i = 0; i < n; ++i)
            ts.values[i] += 2.0 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / (365.25 * 24.0));
        const auto p = periodogram(ts);
        const auto peaks = largest_peaks(p.values, 1);
        REQUIRE(peaks.size() == 1);
        CHECK(p.freqs[peaks[0]] == doctest::Approx(3.17e-8).epsilon(2e-3));
    }
}

TEST_CASE("largest_peaks orders local maxima") {
    const std::vector<double> v{5, 1, 3, 2, 9, 0, 4};
    const auto p = largest_peaks(v, 3);
    REQUIRE(p.size() == 3);
    CHECK(p[0] == 4);
    CHECK(p[1] == 0);
    CHECK(p[2] == 6);
}
