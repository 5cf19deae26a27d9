#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qdp/noise.hpp"
#include "qdp/spectral.hpp"

using namespace qdp;

TEST_CASE("symmetric channel amplitudes") {
    const FieldSpec f2 = make_field(2, 1);
    const CVec g0 = bernoulli_g(f2, 0.0);
    CHECK(g0[0].real() == 1.0);
    CHECK(g0[1].real() == 0.0);

    const CVec g = bernoulli_g(f2, 0.1);
    CHECK(g[0].real() == doctest::Approx(0.9486832980505138).epsilon(1e-14));
    CHECK(g[1].real() == doctest::Approx(0.31622776601683794).epsilon(1e-14));

    const FieldSpec f3 = make_field(3, 1);
    const CVec g3 = bernoulli_g(f3, 0.3);
    CHECK(g3[1].real() == doctest::Approx(std::sqrt(0.15)).epsilon(1e-14));
    CHECK(g3[2].real() == doctest::Approx(std::sqrt(0.15)).epsilon(1e-14));

    CHECK_THROWS_AS(bernoulli_g(f2, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(bernoulli_g(f2, -0.1), std::invalid_argument);
}

TEST_CASE("partition normalization") {
    const FieldSpec f2 = make_field(2, 1);
    // Unit-partition root for the artificial weights (|0|=1, |1|=2):
    // 2^{-λ} + 2^{-2λ} = 1 at λ = log2 of the golden ratio.
    const double lam = solve_lambda_literal(f2, {1.0, 2.0});
    CHECK(lam == doctest::Approx(0.6942419136306174).epsilon(1e-9));

    // Any true metric has |0| = 0, so F(λ) > 1 for all λ.
    CHECK_THROWS_AS(solve_lambda_literal(f2, {0.0, 1.0}), std::domain_error);

    const GibbsNoise gn = gibbs_noise(f2, {0.0, 1.0}, 1.0);
    CHECK(gn.F == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(gn.r[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(gn.r[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK_THROWS_AS(gibbs_noise(f2, {0.0, 1.0}, 0.0), std::invalid_argument);
}

TEST_CASE("gaussian binomials count subspaces") {
    CHECK(gaussian_binomial(2, 1, 2) == 3);
    CHECK(gaussian_binomial(7, 0, 2) == 1);
    CHECK(gaussian_binomial(2, 3, 2) == 0);
    CHECK(gaussian_binomial(4, 2, 2) == 35);
    CHECK(gaussian_binomial(3, 1, 3) == 13);

    const FieldSpec f2 = make_field(2, 1);
    for (int t = 0; t <= 3; ++t)
        CHECK(BigInt(enumerate_subspaces(f2, 3, t).size()) == gaussian_binomial(3, t, 2));
}

TEST_CASE("rank sphere sizes partition the matrix space") {
    CHECK(sphere_size_rank(2, 2, 0, 2) == 1);
    CHECK(sphere_size_rank(2, 2, 1, 2) == 9);
    CHECK(sphere_size_rank(2, 2, 2, 2) == 6);
    for (auto [a, b, q] : {std::tuple{3, 2, 2}, {3, 3, 2}, {2, 2, 3}, {4, 3, 2}}) {
        BigInt total = 0;
        for (int u = 0; u <= std::min(a, b); ++u) total += sphere_size_rank(a, b, u, q);
        CHECK(total == boost::multiprecision::pow(BigInt(q), static_cast<unsigned>(a * b)));
    }
}

TEST_CASE("radial amplitudes are normalized and supported up to t") {
    const FieldSpec f2 = make_field(2, 1);
    for (int t = 0; t <= 2; ++t) {
        const RankNoiseParams p = rank_params(f2, 2, 2, t);
        const AmplitudeFn fn = rank_noise(p);
        CHECK(std::abs(l2_norm(fn.dense_amps()) - 1.0) < 1e-12);
        const auto amps = rank_shell_amplitudes(p);
        for (int u = 0; u <= 2; ++u) {
            if (u > t)
                CHECK(amps[static_cast<size_t>(u)] == 0.0);
            else
                CHECK(amps[static_cast<size_t>(u)] > 0.0);
        }
    }
    // t = 0 is the point mass at 0.
    const AmplitudeFn f0 = rank_noise(rank_params(f2, 2, 2, 0));
    CHECK(std::abs(f0.dense_amps()[0] - Cx(1.0)) < 1e-14);
}

TEST_CASE("a >= b is enforced by swapping") {
    const FieldSpec f2 = make_field(2, 1);
    const RankNoiseParams p = rank_params(f2, 2, 3, 1);
    CHECK(p.a == 3);
    CHECK(p.b == 2);
    CHECK_THROWS_AS(rank_params(f2, 3, 3, 4), std::invalid_argument);
}

TEST_CASE("transform duality between t and b-t") {
    for (auto [q, a, b, t] : {std::tuple{2, 2, 2, 0}, {2, 2, 2, 1}, {2, 2, 2, 2},
                              {2, 3, 2, 1}, {3, 2, 2, 1}}) {
        const FieldSpec f = make_field(q, 1);
        const RankNoiseParams p = rank_params(f, a, b, t);
        const CVec hat = dft_dense(f, p.n(), rank_noise(p).dense_amps());
        const CVec dual = rank_noise(rank_params(f, p.a, p.b, p.b - p.t)).dense_amps();
        CHECK((hat - dual).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("subspace superposition oracle") {
    const FieldSpec f2 = make_field(2, 1);
    // Three lines of F_2²; the tensor-power superposition reproduces the
    // closed-form radial amplitudes.
    const RankNoiseParams p = rank_params(f2, 2, 2, 1);
    const DenseState oracle = rank_noise_subspace_oracle(p);
    CHECK((oracle.amps - rank_noise(p).dense_amps()).cwiseAbs().maxCoeff() < 1e-10);

    const DenseState o0 = rank_noise_subspace_oracle(rank_params(f2, 2, 2, 0));
    CHECK(std::abs(o0.amps[0] - Cx(1.0)) < 1e-14);

    const DenseState ob = rank_noise_subspace_oracle(rank_params(f2, 2, 2, 2));
    for (int i = 0; i < 16; ++i) CHECK(std::abs(ob.amps[i] - Cx(0.25)) < 1e-12);
}

TEST_CASE("normalizer sits inside the gaussian-binomial envelope") {
    const FieldSpec f2 = make_field(2, 1);
    const FieldSpec f3 = make_field(3, 1);
    for (auto [fp, a, b, t] : {std::tuple{&f2, 2, 2, 1}, {&f2, 3, 3, 1}, {&f2, 4, 4, 2},
                               {&f3, 2, 2, 1}}) {
        const RankNoiseParams p = rank_params(*fp, a, b, t);
        const double ratio = p.Z / static_cast<double>(gaussian_binomial(b, t, fp->q));
        CHECK(ratio >= 1.0);
        CHECK(ratio <= 4.0);
    }
}

TEST_CASE("dual shell masses sum to one and their point probs decrease") {
    const FieldSpec f2 = make_field(2, 1);
    const RankNoiseParams dual_params = rank_params(f2, 3, 3, 2);  // transform of t=1 noise
    const auto mass = rank_shell_masses(dual_params);
    double total = 0.0;
    for (double m : mass) total += m;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    const auto point = rank_point_probs(dual_params);
    for (int u = 1; u <= dual_params.t; ++u)
        CHECK(point[static_cast<size_t>(u)] < point[static_cast<size_t>(u - 1)]);
}

TEST_CASE("noise model weights follow the kind") {
    const FieldSpec f2 = make_field(2, 1);
    const NoiseModel bern = make_bernoulli_noise(f2, 4, 0.1);
    IRow y(4);
    y << 1, 0, 1, 1;
    CHECK(bern.weight(y) == 3.0);

    const NoiseModel rank = make_rank_noise(f2, 2, 2, 1);
    IRow e(4);
    e << 1, 1, 1, 1;
    CHECK(rank.weight(e) == 1.0);

    const NoiseModel gibbs = make_gibbs_noise(f2, 4, {0.0, 2.5}, 1.0);
    CHECK(gibbs.weight(y) == 7.5);
}

TEST_CASE("gibbs dual is the normalized exponential family") {
    const FieldSpec f2 = make_field(2, 1);
    const NoiseModel m = make_gibbs_noise(f2, 6, {0.0, 1.0}, 1.0);
    CHECK(m.dual_r[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(m.dual_r[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    // The synthesized g has the right transform and unit norm.
    const CVec gh = dft_symbol(f2, m.g);
    CHECK(std::abs(gh[0] - Cx(std::sqrt(2.0 / 3.0))) < 1e-12);
    CHECK(std::abs(gh[1] - Cx(std::sqrt(1.0 / 3.0))) < 1e-12);
}

TEST_CASE("json and preset parsing") {
    const FieldSpec f2 = make_field(2, 1);
    const NoiseModel a = parse_noise(f2, 4, R"({"kind":"bernoulli","p":0.1})");
    CHECK(a.kind == NoiseModel::Kind::kBernoulli);
    CHECK(a.param == 0.1);

    const NoiseModel b = parse_noise(f2, 4, R"({"kind":"rank","a":2,"b":2,"t":1})");
    CHECK(b.kind == NoiseModel::Kind::kRank);
    CHECK(b.n == 4);

    const NoiseModel c =
        parse_noise(f2, 3, R"({"kind":"table","re":[0.6,0.8],"im":[0.0,0.0]})");
    CHECK(c.kind == NoiseModel::Kind::kTable);

    const NoiseModel d = parse_noise(f2, 3, R"({"kind":"gibbs","weights":[0,1],"lambda":2})");
    CHECK(d.kind == NoiseModel::Kind::kGibbs);

    CHECK(parse_noise(f2, 4, "preset:noiseless").param == 0.0);
    CHECK(parse_noise(f2, 4, "preset:uniform").label == "uniform");
    CHECK(parse_noise(f2, 4, "preset:rank:2,2,1").kind == NoiseModel::Kind::kRank);
    CHECK_THROWS_AS(parse_noise(f2, 4, "preset:bogus"), std::invalid_argument);
    CHECK_THROWS_AS(parse_noise(f2, 4, R"({"kind":"unknown"})"), std::invalid_argument);
}
