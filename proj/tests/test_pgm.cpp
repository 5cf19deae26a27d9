#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qdp/pgm.hpp"
#include "qdp/rng.hpp"
#include "qdp/spectral.hpp"

using namespace qdp;

TEST_CASE("exact boundary cases") {
    for (int q : {2, 3}) {
        const FieldSpec f = make_field(q, 1);
        for (int n : {4, 7, 10})
            for (int k : {1, 3}) {
                if (k >= n) continue;
                const LinearCode code = random_code(f, n, k, 42 + n + k);
                const NoiseModel noiseless = make_bernoulli_noise(f, n, 0.0);
                CHECK(std::abs(pgm_success(code, noiseless).p_pgm - 1.0) <= 1e-12);
                const NoiseModel uniform = parse_noise(f, n, "preset:uniform");
                CHECK(std::abs(pgm_success(code, uniform).p_pgm -
                               std::pow(static_cast<double>(q), -code.rank)) <= 1e-12);
            }
    }
}

TEST_CASE("coset masses match explicit sums") {
    const FieldSpec f2 = make_field(2, 1);
    const LinearCode code = random_code(f2, 3, 1, 1, /*strict=*/true);
    const NoiseModel noise = make_bernoulli_noise(f2, 3, 0.1);
    const auto Z = coset_masses(code, noise);
    REQUIRE(Z.size() == 2);
    for (index_t s = 0; s < 2; ++s) {
        double direct = 0.0;
        for (const IRow& e : enumerate_coset(code, s)) direct += noise.dual_prob(e);
        CHECK(Z[static_cast<size_t>(s)] ==
              doctest::Approx(std::sqrt(direct)).epsilon(1e-13));
    }
    // Point-mass noise spreads the spectrum flat: every Z_s = q^{-rank/2}.
    const NoiseModel pm = make_bernoulli_noise(f2, 3, 0.0);
    for (double z : coset_masses(code, pm))
        CHECK(z == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    // Uniform noise: Z_0 = 1, the rest vanish.
    const NoiseModel un = parse_noise(f2, 3, "preset:uniform");
    const auto Zu = coset_masses(code, un);
    CHECK(Zu[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(Zu[1] <= 1e-12);
}

TEST_CASE("spectral mass partitions across cosets") {
    const FieldSpec f3 = make_field(3, 1);
    const LinearCode code = random_code(f3, 4, 2, 17);
    const NoiseModel noise = make_bernoulli_noise(f3, 4, 0.25);
    const PgmReport rep = pgm_success(code, noise);
    CHECK(rep.mass == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(rep.p_pgm >= std::pow(3.0, -code.rank) - 1e-12);
    CHECK(rep.p_pgm <= 1.0 + 1e-12);
    CHECK(rep.p_c == rep.p_pgm);
}

TEST_CASE("closed form equals the dense oracle") {
    const FieldSpec f2 = make_field(2, 1);
    const FieldSpec f3 = make_field(3, 1);
    struct Inst {
        const FieldSpec* f;
        int n, k;
        const char* noise;
        std::uint64_t seed;
    };
    const Inst instances[] = {
        {&f2, 4, 2, "preset:bernoulli:0.1", 1},
        {&f2, 5, 2, "preset:bernoulli:0.2", 2},
        {&f2, 6, 3, "preset:gibbs:1.0", 3},
        {&f2, 4, 2, "preset:rank:2,2,1", 4},
        {&f2, 4, 3, "preset:rank:2,2,2", 5},
        {&f3, 3, 1, "preset:bernoulli:0.15", 6},
        {&f3, 4, 2, "preset:rank:2,2,1", 7},
    };
    for (const Inst& inst : instances) {
        const NoiseModel noise = parse_noise(*inst.f, inst.n, inst.noise);
        const LinearCode code = random_code(*inst.f, inst.n, inst.k, inst.seed);
        const double closed = pgm_success(code, noise).p_pgm;
        const DenseOracleResult oracle = pgm_dense_oracle(code, noise);
        CHECK(std::abs(closed - oracle.mean) <= 1e-9);
        CHECK(oracle.spread <= 1e-9);
    }
}

TEST_CASE("single-hypothesis code always succeeds") {
    const FieldSpec f2 = make_field(2, 1);
    const LinearCode code = code_from_generator(f2, IMat::Zero(1, 3));
    const NoiseModel noise = make_bernoulli_noise(f2, 3, 0.3);
    CHECK(pgm_success(code, noise).p_pgm == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(pgm_dense_oracle(code, noise).mean == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("ensemble expectation of the restricted coset mass") {
    const FieldSpec f2 = make_field(2, 1);
    const int n = 4, k = 2;
    const NoiseModel noise = make_bernoulli_noise(f2, n, 0.1);
    const TypicalSetSpec T = typical_set_product(f2, noise.dual_r, n, 0.3);
    const auto fam = product_family_constants(f2, noise.dual_r, 0.3);

    // s outside and inside the typical set, plus s = 0.
    for (index_t si : {index_t{8}, index_t{0}, index_t{3}}) {
        const IRow s = digits_of(si, 2, n);
        const auto m = ztilde_moments(f2, n, k, noise, T, fam, s);
        CHECK(m.ensemble == 65536);
        CHECK(m.mean == doctest::Approx(m.exact_mean).epsilon(1e-12));
        CHECK(m.variance <= m.variance_bound + 1e-12);
    }

    // Large ε covers the full support: the split-off point mass appears
    // whenever s is typical.
    const TypicalSetSpec Tfull = typical_set_product(f2, noise.dual_r, n, 5.0);
    REQUIRE(Tfull.delta == doctest::Approx(0.0).epsilon(1e-12));
    const IRow zero = IRow::Zero(n);
    const auto m0 =
        ztilde_moments(f2, n, k, noise, Tfull, product_family_constants(f2, noise.dual_r, 5.0),
                       zero);
    const double p0 = Tfull.p_eval(zero);
    CHECK(m0.exact_mean == doctest::Approx(p0 + (1.0 - p0) / 4.0).epsilon(1e-12));
    CHECK(m0.mean == doctest::Approx(m0.exact_mean).epsilon(1e-12));
}

TEST_CASE("monte carlo moments stay within the variance envelope") {
    const FieldSpec f2 = make_field(2, 1);
    SplitMix64 rng(2024);
    for (int trial = 0; trial < 8; ++trial) {
        const int n = 5 + static_cast<int>(rng.below(4));      // 5..8
        const int k = 1 + static_cast<int>(rng.below(3));      // 1..3
        const double eps = 0.15 + 0.1 * rng.real();
        const NoiseModel noise = make_bernoulli_noise(f2, n, 0.05 + 0.1 * rng.real());
        const TypicalSetSpec T = typical_set_product(f2, noise.dual_r, n, eps);
        const auto fam = product_family_constants(f2, noise.dual_r, eps);
        const IRow s = digits_of(rng.below(ipow(2, static_cast<unsigned>(n))), 2, n);
        const auto m = ztilde_moments(f2, n, k, noise, T, fam, s,
                                      MonteCarlo{4000, rng.next()});
        CHECK(m.variance <= m.variance_bound + 1e-12);
        // 4σ band around the exact ensemble mean.
        const double sigma = std::sqrt(m.variance_bound / 4000.0);
        CHECK(std::abs(m.mean - m.exact_mean) <= 4.0 * sigma + 1e-9);
    }
}

TEST_CASE("concentration of the restricted mass") {
    const FieldSpec f2 = make_field(2, 1);
    const int n = 12, k = 1;  // rate far below the exponent
    const NoiseModel noise = make_bernoulli_noise(f2, n, 0.1);
    const double eps = 0.1;
    const TypicalSetSpec T = typical_set_product(f2, noise.dual_r, n, eps);
    const auto fam = product_family_constants(f2, noise.dual_r, eps);
    const IRow s = digits_of(5, 2, n);
    const double frac = concentration_check(f2, n, k, noise, T, fam, s, 2000, 77);
    CHECK(frac >= 1.0 - 5.0 / std::sqrt(2000.0));

    // ε violating 2β+α <= (H-R)/2 is rejected.
    CHECK_THROWS_AS(concentration_check(f2, n, 8, noise, T, fam, s, 10, 1),
                    std::invalid_argument);
}

TEST_CASE("truncated fidelity") {
    const FieldSpec f2 = make_field(2, 1);
    const LinearCode code = random_code(f2, 6, 2, 15, /*strict=*/true);
    const NoiseModel noise = make_bernoulli_noise(f2, 6, 0.1);

    // Full space: no truncation at all.
    TypicalSetSpec full = typical_set_product(f2, noise.dual_r, 6, 50.0);
    REQUIRE(full.delta == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(truncated_fidelity(code, noise, full, IRow::Zero(6)) ==
          doctest::Approx(1.0).epsilon(1e-10));

    const TypicalSetSpec T = typical_set_product(f2, noise.dual_r, 6, 0.15);
    const double expect = std::sqrt(1.0 - T.delta);
    for (const IRow& c : enumerate_codewords(code))
        CHECK(truncated_fidelity(code, noise, T, c) ==
              doctest::Approx(expect).epsilon(1e-10));
}

TEST_CASE("distinguishability bound") {
    CHECK(distinguishability_bound(16, 16) == 1.0);
    CHECK(distinguishability_bound(16, 4) == 0.25);
    CHECK(distinguishability_bound(4, 0) == 0.0);
    CHECK(distinguishability_bound(4, 400) == 1.0);
    CHECK_THROWS_AS(distinguishability_bound(0, 1), std::invalid_argument);
}

TEST_CASE("converse bound") {
    const FieldSpec f2 = make_field(2, 1);
    const NoiseModel noise = make_bernoulli_noise(f2, 16, 0.1);

    // Above capacity: the bound bites and dominates the closed form.
    const LinearCode high = random_code(f2, 16, 14, 8);
    const TypicalSetSpec T = typical_set_product(f2, noise.dual_r, 16, 0.1);
    const double bound = converse_bound(high, T);
    CHECK(bound < 1.0);
    CHECK(pgm_success(high, noise).p_pgm <= bound + 1e-10);

    // Below capacity the same bound is vacuous.
    const LinearCode low = random_code(f2, 16, 2, 8);
    CHECK(converse_bound(low, T) >= 1.0);
}

TEST_CASE("mean success is monotone in the rate under coupled draws") {
    const FieldSpec f2 = make_field(2, 1);
    const NoiseModel noise = make_bernoulli_noise(f2, 10, 0.1);
    const int kmax = 7, seeds = 200;
    std::vector<double> mean(static_cast<size_t>(kmax) + 1, 0.0);
    for (int seed = 0; seed < seeds; ++seed) {
        IMat G(kmax, 10);
        SplitMix64 rng(derive_seed(4321, static_cast<index_t>(seed)));
        for (int i = 0; i < kmax; ++i)
            for (int j = 0; j < 10; ++j) G(i, j) = static_cast<int>(rng.below(2));
        for (int k = 1; k <= kmax; ++k) {
            const LinearCode code = code_from_generator(f2, G.topRows(k));
            mean[static_cast<size_t>(k)] +=
                pgm_success(code, noise).p_pgm / static_cast<double>(seeds);
        }
    }
    for (int k = 2; k <= kmax; ++k)
        CHECK(mean[static_cast<size_t>(k)] <= mean[static_cast<size_t>(k - 1)] + 1e-12);
}

TEST_CASE("zero-branch closed form stays above the floor") {
    const FieldSpec f2 = make_field(2, 1);
    const LinearCode code = random_code(f2, 6, 2, 77, /*strict=*/true);
    const NoiseModel noise = make_bernoulli_noise(f2, 6, 0.05);
    const PgmReport rep = pgm_success(code, noise);
    const double floor_v =
        std::pow(std::sqrt(rep.p_pgm) - 0.5, 2.0);  // |C| = 4
    CHECK(p_zero_branch_closed(code, noise) >= floor_v - 1e-10);
}
