#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qdp/analysis.hpp"
#include "qdp/rng.hpp"
#include "qdp/spectral.hpp"

using namespace qdp;

namespace {

// Independent binomial-tail oracle for q=2 product typical sets: exact
// long-double binomial masses of the weights whose log-probability falls
// inside the window.
long double binomial_delta(int n, double r0, double eps) {
    const long double H = -(r0 * std::log2(r0) + (1.0 - r0) * std::log2(1.0 - r0));
    const long double w0 = -std::log2(r0), w1 = -std::log2(1.0 - r0);
    long double inside = 0.0L;
    long double binom = 1.0L;  // C(n, 0)
    for (int w = 0; w <= n; ++w) {
        const long double s = (n - w) * w0 + w * w1;
        if (s >= n * (H - eps) && s <= n * (H + eps))
            inside += binom * powl(static_cast<long double>(r0), n - w) *
                      powl(static_cast<long double>(1.0 - r0), w);
        binom = binom * (n - w) / (w + 1);
    }
    return 1.0L - inside;
}

}  // namespace

TEST_CASE("entropy basics") {
    CHECK(entropy_q(std::vector<double>(4, 0.25), 4) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(entropy_q({1.0, 0.0}, 2) == 0.0);
    CHECK(entropy_q({0.8, 0.2}, 2) == doctest::Approx(0.7219280948873623).epsilon(1e-12));
    CHECK_THROWS_AS(entropy_q({0.5, 0.4}, 2), std::invalid_argument);
    CHECK_THROWS_AS(entropy_q({1.2, -0.2}, 2), std::invalid_argument);
}

TEST_CASE("channel capacities for the symmetric channel") {
    const FieldSpec f2 = make_field(2, 1);
    const CVec g = bernoulli_g(f2, 0.1);
    CHECK(holevo_capacity(f2, g) == doctest::Approx(0.7219280948873623).epsilon(1e-9));
    CHECK(shannon_capacity(f2, g) == doctest::Approx(0.5310044064107188).epsilon(1e-9));

    const CVec noiseless = bernoulli_g(f2, 0.0);
    CHECK(holevo_capacity(f2, noiseless) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(shannon_capacity(f2, noiseless) == doctest::Approx(1.0).epsilon(1e-12));

    CVec unif = CVec::Constant(2, 1.0 / std::sqrt(2.0));
    CHECK(holevo_capacity(f2, unif) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(shannon_capacity(f2, unif) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("entropic uncertainty sum") {
    const FieldSpec f2 = make_field(2, 1);
    CVec g(2);
    g << std::sqrt(0.9), std::sqrt(0.1);
    const HirschmanResult h = hirschman_check(f2, g);
    // 0.46900 + 0.72193
    CHECK(h.sum == doctest::Approx(1.1909236884766434).epsilon(1e-9));
    CHECK(h.holds);

    CVec delta = CVec::Zero(2);
    delta[0] = 1.0;
    CHECK(hirschman_check(f2, delta).sum == doctest::Approx(1.0).epsilon(1e-12));

    SplitMix64 rng(99);
    for (int q : {2, 3, 5}) {
        const FieldSpec f = make_field(q, 1);
        for (int i = 0; i < 200; ++i) {
            CVec v(q);
            for (int a = 0; a < q; ++a) v[a] = Cx(rng.real() - 0.5, rng.real() - 0.5);
            v /= l2_norm(v);
            CHECK(hirschman_check(f, v).holds);
        }
    }
}

TEST_CASE("uniform source has a full typical set") {
    const FieldSpec f3 = make_field(3, 1);
    const TypicalSetSpec T = typical_set_product(f3, {1.0 / 3, 1.0 / 3, 1.0 / 3}, 7, 0.2);
    CHECK(T.delta == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(static_cast<double>(T.cardinality) == std::pow(3.0, 7));
}

TEST_CASE("exact defect equals the binomial oracle") {
    const FieldSpec f2 = make_field(2, 1);
    for (auto [n, eps] : {std::pair{10, 0.1}, {16, 0.1}, {24, 0.2}, {64, 0.1}}) {
        const TypicalSetSpec T = typical_set_product(f2, {0.9, 0.1}, n, eps);
        CHECK(T.delta ==
              doctest::Approx(static_cast<double>(binomial_delta(n, 0.9, eps)))
                  .epsilon(1e-11));
    }
}

TEST_CASE("concentration bound across sizes") {
    const FieldSpec f2 = make_field(2, 1);
    const double K = -std::log2(0.1);
    // ε = 0.1 and ε = 0.2 stay below the Hoeffding envelope at every size.
    for (double eps : {0.1, 0.2})
        for (int n : {8, 16, 32, 64}) {
            const TypicalSetSpec T = typical_set_product(f2, {0.9, 0.1}, n, eps);
            CHECK(T.delta <= std::exp(-2.0 * n * eps * eps / (K * K)));
        }
    // At ε = 0.05 the window is so narrow that no integer weight falls inside
    // it for n <= 16: the set is empty and the defect is exactly 1.
    for (int n : {8, 16}) {
        const TypicalSetSpec T = typical_set_product(f2, {0.9, 0.1}, n, 0.05);
        CHECK(T.delta == 1.0);
        CHECK(static_cast<double>(T.cardinality) == 0.0);
    }
    for (int n : {32, 64}) {
        const TypicalSetSpec T = typical_set_product(f2, {0.9, 0.1}, n, 0.05);
        CHECK(T.delta <= std::exp(-2.0 * n * 0.05 * 0.05 / (K * K)));
    }
}

TEST_CASE("zero-probability symbols leave the support") {
    const FieldSpec f3 = make_field(3, 1);
    const TypicalSetSpec T = typical_set_product(f3, {0.7, 0.3, 0.0}, 6, 0.2);
    IRow y = IRow::Zero(6);
    y[2] = 2;
    CHECK(!T.member(y));
    CHECK(T.p_eval(y) == 0.0);
}

TEST_CASE("cardinality sandwich") {
    const FieldSpec f2 = make_field(2, 1);
    const TypicalSetSpec T = typical_set_product(f2, {0.8, 0.2}, 12, 0.1);
    const long double lo = (1.0L - static_cast<long double>(T.delta)) / T.B;
    const long double hi = 1.0L / T.A;
    CHECK(static_cast<double>(T.cardinality) >= static_cast<double>(lo) * (1 - 1e-12));
    CHECK(static_cast<double>(T.cardinality) <= static_cast<double>(hi) * (1 + 1e-12));
}

TEST_CASE("rank typical windows") {
    const FieldSpec f2 = make_field(2, 1);
    const RankNoiseParams np = rank_params(f2, 3, 3, 1);
    // ε >= 1 keeps every occupied shell: zero defect.
    CHECK(typical_set_rank(np, 1.0).delta == doctest::Approx(0.0).epsilon(1e-12));

    // ε = 1/3 drops exactly the rank-0 shell of the transform.
    const TypicalSetSpec T = typical_set_rank(np, 1.0 / 3.0);
    const auto mass = rank_shell_masses(rank_params(f2, 3, 3, 2));
    CHECK(T.delta == doctest::Approx(mass[0]).epsilon(1e-12));
    IRow zero = IRow::Zero(9);
    CHECK(!T.member(zero));  // b(1-ε) - t = 1 > 0 excludes rank 0
    CHECK(T.A <= T.B);
    CHECK(T.entropy ==
          doctest::Approx(9.0 * rank_entropy_per_symbol(np).exact).epsilon(1e-9));
}

TEST_CASE("rank GV distance by integer scan") {
    CHECK(rank_gv_distance(4, 4, 0.5) == 1);   // t=1: 7 < 8; t=2: 12 > 8
    CHECK(rank_gv_distance(4, 4, 0.1) == 0);   // below (a+b-1)/ab
    CHECK(rank_gv_distance(4, 4, 0.99) == 3);  // t=4 would need R > 1
    CHECK_THROWS_AS(rank_gv_distance(4, 4, 0.0), std::invalid_argument);
}

TEST_CASE("rank entropy pair") {
    const FieldSpec f2 = make_field(2, 1);
    const RankEntropy e = rank_entropy_per_symbol(rank_params(f2, 2, 2, 1));
    CHECK(e.closed == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(e.exact == doctest::Approx(0.6462406251802891).epsilon(1e-9));

    const RankEntropy eb = rank_entropy_per_symbol(rank_params(f2, 3, 3, 3));
    CHECK(eb.closed == 0.0);
    CHECK(eb.exact == doctest::Approx(0.0).epsilon(1e-12));

    // t = 0: the transform is exactly uniform, both entropies are 1.
    const RankEntropy e0 = rank_entropy_per_symbol(rank_params(f2, 3, 3, 0));
    CHECK(e0.closed == 1.0);
    CHECK(e0.exact == doctest::Approx(1.0).epsilon(1e-12));

    // Fixed-shape ladder (a, b, t) = t·(2, 2, 1): the closed/exact gap shrinks.
    double prev = 1e9;
    for (int t = 1; t <= 3; ++t) {
        const RankEntropy et = rank_entropy_per_symbol(rank_params(f2, 2 * t, 2 * t, t));
        const double gap = std::abs(et.closed - et.exact);
        CHECK(gap <= prev + 1e-12);
        prev = gap;
    }
}

TEST_CASE("nice families") {
    const FieldSpec f2 = make_field(2, 1);
    const std::vector<double> r = {0.8, 0.2};
    std::vector<TypicalSetSpec> fam;
    for (int n : {8, 16, 32, 64}) fam.push_back(typical_set_product(f2, r, n, 0.1));
    const auto rep = nice_family_check(f2, fam, product_family_constants(f2, r, 0.1));
    CHECK(rep.pass);
    CHECK(rep.offending_index == -1);

    // Entropy sandwich holds exactly for each member.
    for (const TypicalSetSpec& T : fam) {
        const double lq = std::log(2.0);
        const double lo = -(1.0 - T.delta) * std::log(T.B) / lq;
        const double hi = -(1.0 - T.delta) * std::log(T.A) / lq + T.delta * T.n;
        CHECK(T.entropy >= lo - 1e-9);
        CHECK(T.entropy <= hi + 1e-9);
    }

    // Degenerate bounds (B < A) must be flagged with the offending index.
    TypicalSetSpec bad = fam[0];
    bad.A = 0.5;
    bad.B = 0.25;
    bad.delta = 1.0;
    const auto drep =
        nice_family_check(f2, {fam[0], bad}, product_family_constants(f2, r, 0.1));
    CHECK(!drep.pass);
    CHECK(drep.offending_index >= 0);
}

TEST_CASE("monte carlo defect agreement") {
    const FieldSpec f2 = make_field(2, 1);
    const TypicalSetSpec T = typical_set_product(f2, {0.9, 0.1}, 16, 0.1);
    SplitMix64 rng(31337);
    const int trials = 100000;
    int outside = 0;
    for (int t = 0; t < trials; ++t) {
        IRow y(16);
        for (int i = 0; i < 16; ++i) y[i] = rng.real() < 0.9 ? 0 : 1;
        if (!T.member(y)) ++outside;
    }
    const double mc = static_cast<double>(outside) / trials;
    const double sigma = std::sqrt(T.delta * (1 - T.delta) / trials);
    CHECK(std::abs(mc - T.delta) <= 4.0 * sigma);
}
