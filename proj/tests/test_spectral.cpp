#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qdp/rng.hpp"
#include "qdp/spectral.hpp"

using namespace qdp;

namespace {

CVec random_state(int dim, std::uint64_t seed) {
    SplitMix64 rng(seed);
    CVec v(dim);
    for (int i = 0; i < dim; ++i) v[i] = Cx(rng.real() - 0.5, rng.real() - 0.5);
    v /= l2_norm(v);
    return v;
}

}  // namespace

TEST_CASE("delta and uniform transforms") {
    const FieldSpec f3 = make_field(3, 1);
    const int n = 2;
    CVec delta = CVec::Zero(9);
    delta[0] = 1.0;
    const CVec hat = dft_dense(f3, n, delta);
    for (int i = 0; i < 9; ++i) CHECK(std::abs(hat[i] - Cx(1.0 / 3.0)) < 1e-14);

    CVec unif = CVec::Constant(9, 1.0 / 3.0);
    const CVec uhat = dft_dense(f3, n, unif);
    CHECK(std::abs(uhat[0] - Cx(1.0)) < 1e-13);
    for (int i = 1; i < 9; ++i) CHECK(std::abs(uhat[i]) < 1e-13);
}

TEST_CASE("two point transform by hand") {
    const FieldSpec f2 = make_field(2, 1);
    CVec g(2);
    g << std::sqrt(0.9), std::sqrt(0.1);
    const CVec gh = dft_symbol(f2, g);
    CHECK(gh[0].real() == doctest::Approx(0.8944271909999159).epsilon(1e-12));
    CHECK(gh[1].real() == doctest::Approx(0.4472135954999579).epsilon(1e-12));
    CHECK(std::norm(gh[0]) == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(std::norm(gh[1]) == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("parseval and inverse on random states") {
    for (auto [p, s, n, seed] : {std::tuple{2, 1, 10, 1u}, {3, 1, 5, 2u}, {2, 2, 4, 3u}}) {
        const FieldSpec f = make_field(p, s);
        const CVec amps =
            random_state(static_cast<int>(ipow(f.q, static_cast<unsigned>(n))), seed);
        const CVec hat = dft_dense(f, n, amps);
        CHECK(std::abs(l2_norm(hat) - 1.0) < 1e-12);
        const CVec back = dft_dense(f, n, hat, /*inverse=*/true);
        CHECK((back - amps).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("product transform factorizes") {
    const FieldSpec f3 = make_field(3, 1);
    for (std::uint64_t seed : {4, 5, 6}) {
        const CVec g = random_state(3, seed);
        const AmplitudeFn fn = AmplitudeFn::product(f3, 2, g);
        const AmplitudeFn fn_hat = dft(fn);
        REQUIRE(fn_hat.is_product());
        const CVec dense_hat = dft_dense(f3, 2, fn.dense_amps());
        CHECK((fn_hat.dense_amps() - dense_hat).cwiseAbs().maxCoeff() < 1e-12);
    }
    // Double transform reflects the argument: transforming twice maps
    // g(α) to g(-α).
    const CVec g = random_state(3, 9);
    const CVec g2 = dft_symbol(f3, dft_symbol(f3, g));
    for (int a = 0; a < 3; ++a) CHECK(std::abs(g2[a] - g[f3.neg(a)]) < 1e-12);

    CVec bad = CVec::Constant(3, 1.0);
    CHECK_THROWS_AS(dft_symbol(f3, bad), std::invalid_argument);
}

TEST_CASE("shifted states place f at c+e") {
    const FieldSpec f2 = make_field(2, 1);
    const CVec g = random_state(2, 11);
    const AmplitudeFn fn = AmplitudeFn::product(f2, 3, g);

    IRow zero = IRow::Zero(3);
    const DenseState base = shifted_state(zero, fn);
    CHECK((base.amps - fn.dense_amps()).cwiseAbs().maxCoeff() == 0.0);

    IRow c(3);
    c << 1, 0, 1;
    const DenseState st = shifted_state(c, fn);
    for (index_t e = 0; e < 8; ++e) {
        IRow ed = digits_of(e, 2, 3);
        IRow ce(3);
        for (int i = 0; i < 3; ++i) ce[i] = f2.add(c[i], ed[i]);
        CHECK(std::abs(st.amps[static_cast<Eigen::Index>(index_of(ce, 2))] - fn.value(ed)) ==
              0.0);
    }

    // Point-mass noise gives the basis state |c⟩.
    CVec pm = CVec::Zero(2);
    pm[0] = 1.0;
    const DenseState ketc = shifted_state(c, AmplitudeFn::product(f2, 3, pm));
    CHECK(std::abs(ketc.amps[static_cast<Eigen::Index>(index_of(c, 2))] - Cx(1.0)) == 0.0);
}

TEST_CASE("closed-form transform of a shifted state") {
    const FieldSpec f2 = make_field(2, 1);
    const int n = 2;
    CVec amps = random_state(4, 21);
    const AmplitudeFn fn = AmplitudeFn::dense(f2, n, amps);
    IRow c(2);
    c << 1, 0;
    const DenseState closed = qft_shifted_closed_form(c, fn);
    const DenseState direct = dft(shifted_state(c, fn));
    CHECK((closed.amps - direct.amps).cwiseAbs().maxCoeff() < 1e-10);

    // Per-index modulus does not depend on the shift.
    IRow c2(2);
    c2 << 0, 1;
    const DenseState other = qft_shifted_closed_form(c2, fn);
    for (int i = 0; i < 4; ++i)
        CHECK(std::abs(std::abs(closed.amps[i]) - std::abs(other.amps[i])) < 1e-12);
}

TEST_CASE("rank representation materializes radially") {
    const FieldSpec f2 = make_field(2, 1);
    const AmplitudeFn fn =
        AmplitudeFn::radial_rank(f2, RankShape{2, 2, 2}, {0.5, 0.25, 0.125});
    const CVec& amps = fn.dense_amps();
    for (index_t i = 0; i < 16; ++i) {
        const int u = rank_weight(f2, digits_of(i, 2, 4), 2, 2);
        CHECK(std::abs(amps[static_cast<Eigen::Index>(i)] -
                       Cx(u == 0 ? 0.5 : u == 1 ? 0.25 : 0.125)) == 0.0);
    }
}

TEST_CASE("amplitude validation") {
    const FieldSpec f2 = make_field(2, 1);
    CVec bad(2);
    bad << 1.0, 1.0;
    CHECK_THROWS_AS(AmplitudeFn::product(f2, 3, bad), std::invalid_argument);
    CHECK_THROWS_AS(AmplitudeFn::dense(f2, 2, CVec::Zero(3)), std::invalid_argument);
}
