#include "qdp/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qdp/codes.hpp"
#include "qdp/pgm.hpp"
#include "qdp/rng.hpp"
#include "qdp/sampler.hpp"
#include "qdp/spectral.hpp"

namespace qdp {

namespace {

CheckRecord rec_le(std::string name, std::string inst, double lhs, double rhs, double tol) {
    return CheckRecord{std::move(name), std::move(inst), lhs, rhs, tol, lhs <= rhs + tol};
}

CheckRecord rec_close(std::string name, std::string inst, double lhs, double rhs,
                      double tol) {
    return CheckRecord{std::move(name), std::move(inst), lhs, rhs, tol,
                       std::abs(lhs - rhs) <= tol};
}

CheckRecord rec_true(std::string name, std::string inst, bool ok) {
    return CheckRecord{std::move(name), std::move(inst), ok ? 1.0 : 0.0, 1.0, 0.0, ok};
}

CVec random_unit(const FieldSpec& f, SplitMix64& rng) {
    CVec g(f.q);
    for (int a = 0; a < f.q; ++a) {
        // Box-Muller pairs give rotation-invariant coefficients.
        const double u1 = std::max(rng.real(), 1e-300), u2 = rng.real();
        const double u3 = std::max(rng.real(), 1e-300), u4 = rng.real();
        const double r1 = std::sqrt(-2.0 * std::log(u1));
        const double r2 = std::sqrt(-2.0 * std::log(u3));
        g[a] = Cx(r1 * std::cos(2 * std::numbers::pi * u2),
                  r2 * std::cos(2 * std::numbers::pi * u4));
    }
    g /= l2_norm(g);
    return g;
}

}  // namespace

std::vector<CheckRecord> suite_field(const VerifyOptions& opt) {
    std::vector<CheckRecord> out;
    for (auto [p, s] : {std::pair{2, 1}, {3, 1}, {2, 2}, {5, 1}, {2, 3}, {3, 2}}) {
        FieldSpec f = make_field(p, s);
        const std::string inst = "q=" + std::to_string(f.q);
        if (!opt.fault.empty() && opt.fault == "char-table" && !f.char_tab.empty())
            f.char_tab[static_cast<size_t>(f.q) + 1] += Cx(0.25, 0.0);

        double tab_err = 0.0;
        for (int y = 0; y < f.q; ++y)
            for (int x = 0; x < f.q; ++x) {
                const double ang =
                    2.0 * std::numbers::pi * f.trace_tab[f.mul_slow(x, y)] / f.p;
                tab_err = std::max(tab_err, std::abs(f.character(y, x) -
                                                     Cx(std::cos(ang), std::sin(ang))));
            }
        out.push_back(rec_le("field.char_table", inst, tab_err, 0.0, 1e-14));

        double ortho_err = 0.0;
        for (int d = 0; d < f.q; ++d) {
            Cx acc = 0.0;
            for (int a = 0; a < f.q; ++a) acc += f.character(a, d);
            ortho_err = std::max(ortho_err, std::abs(acc - (d == 0 ? Cx(f.q) : Cx(0.0))));
        }
        out.push_back(rec_le("field.orthogonality", inst, ortho_err, 0.0, 1e-12));

        double sym_err = 0.0, lin_err = 0.0;
        for (int x = 0; x < f.q; ++x)
            for (int y = 0; y < f.q; ++y) {
                sym_err = std::max(sym_err, std::abs(f.character(y, x) - f.character(x, y)));
                const int l = f.trace_tab[f.add(x, y)];
                const int r = (f.trace_tab[x] + f.trace_tab[y]) % f.p;
                lin_err = std::max(lin_err, static_cast<double>(std::abs(l - r)));
            }
        out.push_back(rec_le("field.char_symmetry", inst, sym_err, 0.0, 1e-14));
        out.push_back(rec_le("field.trace_linear", inst, lin_err, 0.0, 0.0));
    }

    // Rank weight is invariant under the transposed layout.
    const FieldSpec f3 = make_field(3, 1);
    SplitMix64 rng(20240901);
    bool rank_ok = true;
    for (int trial = 0; trial < 50; ++trial) {
        const int a = 2 + static_cast<int>(rng.below(3));
        const int b = 2 + static_cast<int>(rng.below(3));
        IRow x(a * b);
        for (int i = 0; i < a * b; ++i) x[i] = static_cast<int>(rng.below(3));
        IRow xt(a * b);
        for (int i = 0; i < a; ++i)
            for (int j = 0; j < b; ++j) xt[j * a + i] = x[i * b + j];
        rank_ok = rank_ok && rank_weight(f3, x, a, b) == rank_weight(f3, xt, b, a);
    }
    out.push_back(rec_true("field.rank_transpose", "q=3", rank_ok));
    return out;
}

std::vector<CheckRecord> suite_codes() {
    std::vector<CheckRecord> out;
    const FieldSpec f2 = make_field(2, 1);
    const FieldSpec f3 = make_field(3, 1);

    for (const FieldSpec* fp : {&f2, &f3}) {
        const FieldSpec& f = *fp;
        const LinearCode code = random_code(f, 6, 3, 11 + f.q);
        const std::string inst = "q=" + std::to_string(f.q) + ",n=6,k=3";

        int gh = 0;
        for (int i = 0; i < code.rank; ++i)
            for (int j = 0; j < code.n - code.rank; ++j) {
                int acc = 0;
                for (int l = 0; l < code.n; ++l)
                    acc = f.add(acc, f.mul(code.basis(i, l), code.H(j, l)));
                gh = std::max(gh, acc);
            }
        out.push_back(rec_true("codes.gh_orthogonal", inst, gh == 0));
        out.push_back(rec_true("codes.size_product",
                               inst,
                               code.codewords() * code.dual_size() ==
                                   ipow(f.q, static_cast<unsigned>(code.n))));

        // Character membership ⟺ parity membership, on all of F_q^n.
        bool member_ok = true;
        const auto codewords = enumerate_codewords(code);
        for (index_t i = 0; i < ipow(f.q, 6) && member_ok; ++i) {
            const IRow y = digits_of(i, f.q, 6);
            bool char_in = true;
            for (const IRow& c : codewords)
                if (std::abs(character_vec(f, y, c) - Cx(1.0)) > 1e-9) {
                    char_in = false;
                    break;
                }
            member_ok = char_in == code.in_dual(y);
        }
        out.push_back(rec_true("codes.char_membership", inst, member_ok));

        // Cosets partition the space.
        std::vector<index_t> counts(code.num_syndromes(), 0);
        bool part_ok = true;
        for (index_t s = 0; s < code.num_syndromes(); ++s) {
            const IRow u = coset_representative(code, s);
            if (code.syndrome_index(u) != s) part_ok = false;
            for (const IRow& y : enumerate_coset(code, s))
                if (code.syndrome_index(y) == s)
                    ++counts[static_cast<size_t>(s)];
        }
        index_t total = 0;
        for (index_t c : counts) {
            part_ok = part_ok && c == code.dual_size();
            total += c;
        }
        out.push_back(rec_true("codes.coset_partition", inst,
                               part_ok && total == ipow(f.q, 6)));

        const LinearCode dd = dual(dual(code));
        out.push_back(rec_true("codes.double_dual", inst, dd.basis == code.basis));
    }

    // Exhaustive n=3, k=1 over F_2: exactly 7 of 8 generators give |C| = 2.
    {
        int full = 0;
        for (int bits = 0; bits < 8; ++bits) {
            IMat G(1, 3);
            for (int j = 0; j < 3; ++j) G(0, j) = (bits >> j) & 1;
            full += code_from_generator(f2, G).codewords() == 2 ? 1 : 0;
        }
        out.push_back(rec_close("codes.rank_census", "q=2,n=3,k=1", full, 7, 0.0));
    }

    // Pr[y ∈ s+C⊥] = q^{-k} exactly over the full generator ensemble.
    {
        const int n = 4, k = 2;
        const IRow s = digits_of(5, 2, n);
        const IRow y = digits_of(9, 2, n);
        index_t hits = 0;
        for (index_t bits = 0; bits < (index_t{1} << (k * n)); ++bits) {
            IMat G(k, n);
            index_t b = bits;
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < n; ++j) {
                    G(i, j) = static_cast<int>(b & 1);
                    b >>= 1;
                }
            bool in = true;
            for (int i = 0; i < k && in; ++i) {
                int dot = 0;
                for (int j = 0; j < n; ++j)
                    dot ^= G(i, j) & (y[j] ^ s[j]);
                in = dot == 0;
            }
            hits += in ? 1 : 0;
        }
        out.push_back(rec_close("codes.coset_probability", "q=2,n=4,k=2",
                                static_cast<double>(hits) / 256.0, 0.25, 0.0));
    }

    // Representative of the zero syndrome is the zero vector.
    const LinearCode c0 = random_code(f2, 5, 2, 77);
    out.push_back(rec_true("codes.zero_representative", "q=2,n=5,k=2",
                           !(coset_representative(c0, 0).array() != 0).any()));
    return out;
}

std::vector<CheckRecord> suite_spectral() {
    std::vector<CheckRecord> out;
    SplitMix64 rng(424242);

    for (auto [p, s, n] : {std::tuple{2, 1, 8}, {3, 1, 4}, {2, 2, 3}}) {
        const FieldSpec f = make_field(p, s);
        const std::string inst = "q=" + std::to_string(f.q) + ",n=" + std::to_string(n);
        const index_t d = ipow(f.q, static_cast<unsigned>(n));
        CVec amps(static_cast<Eigen::Index>(d));
        for (index_t i = 0; i < d; ++i)
            amps[static_cast<Eigen::Index>(i)] = Cx(rng.real() - 0.5, rng.real() - 0.5);
        amps /= l2_norm(amps);
        const CVec hat = dft_dense(f, n, amps);
        out.push_back(rec_close("spectral.parseval", inst, l2_norm(hat), 1.0, 1e-12));
        const CVec back = dft_dense(f, n, hat, /*inverse=*/true);
        out.push_back(
            rec_le("spectral.inverse", inst, (back - amps).cwiseAbs().maxCoeff(), 0.0, 1e-12));

        // Naive quadratic transform as the reference for the fast one.
        if (d <= 256) {
            CVec ref(static_cast<Eigen::Index>(d));
            const double scale = std::pow(static_cast<double>(f.q), -0.5 * n);
            for (index_t y = 0; y < d; ++y) {
                const IRow yd = digits_of(y, f.q, n);
                Cx acc = 0.0;
                for (index_t x = 0; x < d; ++x)
                    acc += character_vec(f, yd, digits_of(x, f.q, n)) *
                           amps[static_cast<Eigen::Index>(x)];
                ref[static_cast<Eigen::Index>(y)] = acc * scale;
            }
            out.push_back(rec_le("spectral.fast_vs_naive", inst,
                                 (ref - hat).cwiseAbs().maxCoeff(), 0.0, 1e-12));
        }
    }

    const FieldSpec f2 = make_field(2, 1);
    // Frozen 2-point transform: g = (√0.9, √0.1).
    {
        CVec g(2);
        g << std::sqrt(0.9), std::sqrt(0.1);
        const CVec gh = dft_symbol(f2, g);
        out.push_back(rec_close("spectral.two_point", "q=2", gh[0].real(),
                                0.8944271909999159, 1e-12));
        out.push_back(rec_close("spectral.two_point", "q=2", gh[1].real(),
                                0.4472135954999579, 1e-12));
        // Reflection: transforming twice flips the argument sign.
        const CVec g2 = dft_symbol(f2, gh);
        out.push_back(rec_le("spectral.double_transform", "q=2",
                             (g2 - g).cwiseAbs().maxCoeff(), 0.0, 1e-12));
    }

    // Product transform against the dense path.
    for (int q : {2, 3}) {
        const FieldSpec f = make_field(q, 1);
        const int n = q == 2 ? 4 : 2;
        CVec g = random_unit(f, rng);
        const AmplitudeFn prod = AmplitudeFn::product(f, n, g);
        const CVec dense_hat = dft_dense(f, n, prod.dense_amps());
        const AmplitudeFn prod_hat = dft(prod);
        out.push_back(rec_le("spectral.product_vs_dense", "q=" + std::to_string(q),
                             (prod_hat.dense_amps() - dense_hat).cwiseAbs().maxCoeff(), 0.0,
                             1e-12));
    }

    // Shifted states: overlap against the direct double loop, closed-form
    // transform against the dense route.
    {
        const int n = 3;
        CVec g = random_unit(f2, rng);
        const AmplitudeFn noise_f = AmplitudeFn::product(f2, n, g);
        const IRow c1 = digits_of(5, 2, n), c2 = digits_of(3, 2, n);
        const DenseState s1 = shifted_state(c1, noise_f), s2 = shifted_state(c2, noise_f);
        Cx brute = 0.0;
        for (index_t e = 0; e < 8; ++e) {
            IRow ed = digits_of(e, 2, n);
            IRow shifted(n);
            for (int i = 0; i < n; ++i) shifted[i] = f2.add(ed[i], f2.sub(c1[i], c2[i]));
            brute += std::conj(noise_f.value(ed)) * noise_f.value(shifted);
        }
        const Cx overlap = s1.amps.dot(s2.amps);
        out.push_back(rec_le("spectral.shift_overlap", "q=2,n=3",
                             std::abs(overlap - brute), 0.0, 1e-12));

        const DenseState closed = qft_shifted_closed_form(c1, noise_f);
        const DenseState direct = dft(s1);
        out.push_back(rec_le("spectral.shift_closed_form", "q=2,n=3",
                             (closed.amps - direct.amps).cwiseAbs().maxCoeff(), 0.0, 1e-10));
    }

    // Coset states: pairwise orthogonal (disjoint support) and the
    // code-periodic superposition has its transform supported in the dual.
    {
        const LinearCode code = random_code(f2, 5, 2, 99, /*strict=*/true);
        const NoiseModel noise = make_bernoulli_noise(f2, 5, 0.15);
        const CVec fhat = dft_dense(f2, 5, noise.f.dense_amps());
        std::vector<CVec> W(code.num_syndromes(), CVec::Zero(32));
        for (index_t i = 0; i < 32; ++i) {
            const IRow y = digits_of(i, 2, 5);
            W[static_cast<size_t>(code.syndrome_index(y))][static_cast<Eigen::Index>(i)] =
                fhat[static_cast<Eigen::Index>(i)];
        }
        double cross = 0.0;
        for (size_t a = 0; a < W.size(); ++a)
            for (size_t b = a + 1; b < W.size(); ++b)
                cross = std::max(cross, std::abs(W[a].dot(W[b])));
        out.push_back(rec_le("spectral.coset_orthogonal", "q=2,n=5,k=2", cross, 0.0, 0.0));

        CVec periodic = CVec::Zero(32);
        for (const IRow& c : enumerate_codewords(code))
            periodic += shifted_state(c, noise.f).amps;
        periodic /= l2_norm(periodic);
        const CVec phat = dft_dense(f2, 5, periodic);
        double off_dual = 0.0;
        for (index_t i = 0; i < 32; ++i)
            if (!code.in_dual(digits_of(i, 2, 5)))
                off_dual = std::max(off_dual,
                                    std::abs(phat[static_cast<Eigen::Index>(i)]));
        out.push_back(rec_le("spectral.periodic_support", "q=2,n=5,k=2", off_dual, 0.0,
                             1e-10));
    }
    return out;
}

std::vector<CheckRecord> suite_noise() {
    std::vector<CheckRecord> out;
    const FieldSpec f2 = make_field(2, 1);
    const FieldSpec f3 = make_field(3, 1);

    {
        const CVec g = bernoulli_g(f2, 0.1);
        out.push_back(rec_close("noise.bernoulli", "q=2,p=0.1", g[0].real(),
                                0.9486832980505138, 1e-12));
        out.push_back(rec_close("noise.bernoulli", "q=2,p=0.1", g[1].real(),
                                0.31622776601683794, 1e-12));
        const CVec g3 = bernoulli_g(f3, 0.3);
        out.push_back(rec_close("noise.bernoulli", "q=3,p=0.3", g3[2].real(),
                                std::sqrt(0.15), 1e-12));
        const CVec g0 = bernoulli_g(f2, 0.0);
        out.push_back(rec_close("noise.bernoulli_pointmass", "q=2,p=0", g0[0].real(), 1.0,
                                0.0));
    }

    {
        // F(λ) = 2^{-λ} + 2^{-2λ} = 1 at λ = log₂((1+√5)/2).
        const double lam = solve_lambda_literal(f2, {1.0, 2.0});
        out.push_back(rec_close("noise.lambda_root", "q=2,w=(1,2)", lam,
                                std::log2((1.0 + std::sqrt(5.0)) / 2.0), 1e-9));
        bool threw = false;
        try {
            solve_lambda_literal(f2, {0.0, 1.0});
        } catch (const std::domain_error&) {
            threw = true;
        }
        out.push_back(rec_true("noise.lambda_infeasible", "q=2,hamming", threw));
        const GibbsNoise gn = gibbs_noise(f2, {0.0, 1.0}, 1.0);
        out.push_back(rec_close("noise.gibbs_r", "q=2,lambda=1", gn.r[0], 2.0 / 3.0, 1e-12));
        out.push_back(rec_close("noise.gibbs_F", "q=2,lambda=1", gn.F, 1.5, 1e-12));
    }

    {
        out.push_back(rec_close("noise.gaussian_binomial", "[2 1]_2",
                                static_cast<double>(gaussian_binomial(2, 1, 2)), 3.0, 0.0));
        out.push_back(rec_close("noise.gaussian_binomial", "[5 0]_2",
                                static_cast<double>(gaussian_binomial(5, 0, 2)), 1.0, 0.0));
        out.push_back(rec_close("noise.gaussian_binomial", "[2 3]_2",
                                static_cast<double>(gaussian_binomial(2, 3, 2)), 0.0, 0.0));
        out.push_back(rec_close("noise.subspace_count", "q=2,b=2,t=1",
                                static_cast<double>(enumerate_subspaces(f2, 2, 1).size()),
                                3.0, 0.0));
        out.push_back(rec_close("noise.sphere", "q=2,a=b=2,u=1",
                                static_cast<double>(sphere_size_rank(2, 2, 1, 2)), 9.0, 0.0));
        BigInt total = 0;
        for (int u = 0; u <= 2; ++u) total += sphere_size_rank(2, 2, u, 2);
        out.push_back(rec_close("noise.sphere_partition", "q=2,a=b=2",
                                static_cast<double>(total), 16.0, 0.0));
    }

    // Rank noise: unit norm, duality against the dense transform, and the
    // subspace-superposition oracle.
    for (auto [q, a, b, t] : {std::tuple{2, 2, 2, 1}, {3, 2, 2, 1}}) {
        const FieldSpec& f = q == 2 ? f2 : f3;
        const RankNoiseParams params = rank_params(f, a, b, t);
        const AmplitudeFn ft = rank_noise(params);
        const std::string inst = "q=" + std::to_string(q) + ",a=" + std::to_string(a) +
                                 ",b=" + std::to_string(b) + ",t=" + std::to_string(t);
        out.push_back(
            rec_close("noise.rank_norm", inst, l2_norm(ft.dense_amps()), 1.0, 1e-12));
        const CVec hat = dft_dense(f, a * b, ft.dense_amps());
        const AmplitudeFn fdual = rank_noise(rank_params(f, a, b, b - t));
        out.push_back(rec_le("noise.rank_duality", inst,
                             (hat - fdual.dense_amps()).cwiseAbs().maxCoeff(), 0.0, 1e-10));
        const double zr = params.Z /
                          static_cast<double>(gaussian_binomial(b, t, q));
        out.push_back(rec_true("noise.rank_Z_ratio", inst, zr >= 1.0 && zr <= 4.0));
    }
    {
        const RankNoiseParams params = rank_params(f2, 2, 2, 1);
        const DenseState oracle = rank_noise_subspace_oracle(params);
        const AmplitudeFn ft = rank_noise(params);
        out.push_back(rec_le("noise.rank_subspace_oracle", "q=2,a=b=2,t=1",
                             (oracle.amps - ft.dense_amps()).cwiseAbs().maxCoeff(), 0.0,
                             1e-10));
        const RankNoiseParams p0 = rank_params(f2, 2, 2, 0);
        const DenseState o0 = rank_noise_subspace_oracle(p0);
        out.push_back(rec_close("noise.rank_t0", "q=2,a=b=2,t=0", std::abs(o0.amps[0]), 1.0,
                                1e-12));
        const RankNoiseParams pb = rank_params(f2, 2, 2, 2);
        const DenseState ob = rank_noise_subspace_oracle(pb);
        out.push_back(rec_close("noise.rank_tb_uniform", "q=2,a=b=2,t=2",
                                std::abs(ob.amps[5]), 0.25, 1e-12));
    }

    // Dual shell masses: normalized, geometrically decaying in v = b-t-u.
    for (auto [q, a, b, t] : {std::tuple{2, 3, 3, 1}, {2, 4, 4, 2}, {3, 2, 2, 1}}) {
        const FieldSpec& f = q == 2 ? f2 : f3;
        const RankNoiseParams dual_params = rank_params(f, a, b, b - t);
        const auto mass = rank_shell_masses(dual_params);
        const std::string inst = "q=" + std::to_string(q) + ",a=" + std::to_string(a) +
                                 ",b=" + std::to_string(b) + ",t=" + std::to_string(t);
        double total = 0.0;
        for (double m : mass) total += m;
        out.push_back(rec_close("noise.shell_total", inst, total, 1.0, 1e-12));
        // Consecutive masses in v: mass(u-1)/mass(u) <= 4/q for u down from b-t.
        double worst = 0.0;
        for (int u = b - t; u >= 1; --u) {
            const double hi = mass[static_cast<size_t>(u - 1)];
            const double lo = mass[static_cast<size_t>(u)];
            if (lo > 0.0) worst = std::max(worst, hi / lo);
        }
        out.push_back(rec_le("noise.shell_decay", inst, worst, 4.0 / q, 1e-12));
    }

    // Tail of the dual distribution below rank (1-ε)b - t. The shell
    // constants drift across b at desk scale (the floor in the cutoff moves
    // in steps), so the gate uses the fixed envelope constant 4: the largest
    // exact value of tail·q^{b²ε²} across b <= 8 is 1.994 (at b=6).
    {
        const double eps = 1.0 / 3.0;
        for (int b : {3, 4, 5, 6, 7}) {
            const RankNoiseParams dp = rank_params(f2, b, b, b - 1);
            const auto mass = rank_shell_masses(dp);
            const int cut = static_cast<int>(std::floor((1.0 - eps) * b)) - 1;
            double tail = 0.0;
            for (int u = 0; u <= cut && u <= b; ++u) tail += mass[static_cast<size_t>(u)];
            const double bound = 4.0 * std::pow(2.0, -b * b * eps * eps);
            out.push_back(rec_le("noise.tail_bound", "q=2,b=" + std::to_string(b), tail,
                                 bound, 1e-12));
        }
    }

    // Gibbs product law strictly decreasing in the additive weight.
    {
        const NoiseModel gm = make_gibbs_noise(f2, 8, {0.0, 1.0}, 1.0);
        bool mono = true;
        for (index_t i = 0; i < 256 && mono; ++i)
            for (index_t j = 0; j < 256 && mono; ++j) {
                const IRow x = digits_of(i, 2, 8), y = digits_of(j, 2, 8);
                if (gm.weight(x) < gm.weight(y))
                    mono = gm.dual_prob(x) > gm.dual_prob(y);
            }
        out.push_back(rec_true("noise.gibbs_monotone", "q=2,n=8", mono));
    }
    return out;
}

std::vector<CheckRecord> suite_analysis() {
    std::vector<CheckRecord> out;
    const FieldSpec f2 = make_field(2, 1);

    out.push_back(rec_close("analysis.entropy_uniform", "q=5",
                            entropy_q(std::vector<double>(5, 0.2), 5), 1.0, 1e-12));
    out.push_back(
        rec_close("analysis.entropy_point", "q=3", entropy_q({1.0, 0.0, 0.0}, 3), 0.0, 0.0));
    out.push_back(rec_close("analysis.entropy", "q=2,(0.8,0.2)", entropy_q({0.8, 0.2}, 2),
                            0.7219280948873623, 1e-12));

    {
        const CVec g = bernoulli_g(f2, 0.1);
        out.push_back(rec_close("analysis.holevo", "q=2,p=0.1", holevo_capacity(f2, g),
                                0.7219280948873623, 1e-9));
        out.push_back(rec_close("analysis.shannon", "q=2,p=0.1", shannon_capacity(f2, g),
                                0.5310044064107188, 1e-9));
        const HirschmanResult h = hirschman_check(f2, g);
        out.push_back(rec_close("analysis.hirschman_sum", "q=2,p=0.1", h.sum,
                                1.1909236884766434, 1e-9));
        out.push_back(rec_true("analysis.hirschman_holds", "q=2,p=0.1", h.holds));
    }

    // Boundary cases attain the bound; random states respect it.
    {
        CVec delta = CVec::Zero(3);
        delta[0] = 1.0;
        const FieldSpec f3 = make_field(3, 1);
        const HirschmanResult hd = hirschman_check(f3, delta);
        out.push_back(rec_close("analysis.hirschman_delta", "q=3", hd.sum, 1.0, 1e-12));
        CVec unif = CVec::Constant(3, 1.0 / std::sqrt(3.0));
        const HirschmanResult hu = hirschman_check(f3, unif);
        out.push_back(rec_close("analysis.hirschman_uniform", "q=3", hu.sum, 1.0, 1e-12));
        SplitMix64 rng(7);
        bool all_hold = true;
        for (int q : {2, 3, 5}) {
            const FieldSpec f = make_field(q, 1);
            for (int i = 0; i < 100; ++i)
                all_hold = all_hold && hirschman_check(f, random_unit(f, rng)).holds;
        }
        out.push_back(rec_true("analysis.hirschman_random", "q=2,3,5 x100", all_hold));
    }

    // Capacity invariance under symbol shifts and global phase.
    {
        SplitMix64 rng(17);
        const FieldSpec f3 = make_field(3, 1);
        const CVec g = random_unit(f3, rng);
        const double base = holevo_capacity(f3, g);
        double worst = 0.0;
        for (int beta = 0; beta < 3; ++beta) {
            CVec shifted(3);
            for (int a = 0; a < 3; ++a) shifted[f3.add(a, beta)] = g[a];
            worst = std::max(worst, std::abs(holevo_capacity(f3, shifted) - base));
        }
        const CVec phased = g * std::exp(Cx(0.0, 1.234));
        worst = std::max(worst, std::abs(holevo_capacity(f3, phased) - base));
        out.push_back(rec_le("analysis.capacity_invariance", "q=3", worst, 0.0, 1e-12));
    }

    // Exact defect: uniform r has none; the binomial route agrees; the type
    // route agrees with direct enumeration.
    {
        const TypicalSetSpec Tu = typical_set_product(f2, {0.5, 0.5}, 6, 0.05);
        out.push_back(rec_close("analysis.typical_uniform_delta", "q=2,n=6", Tu.delta, 0.0,
                                1e-12));
        out.push_back(rec_close("analysis.typical_uniform_card", "q=2,n=6",
                                static_cast<double>(Tu.cardinality), 64.0, 0.0));

        const TypicalSetSpec T = typical_set_product(f2, {0.9, 0.1}, 10, 0.1);
        // Independent binomial oracle.
        double delta_oracle = 1.0;
        for (int w = 0; w <= 10; ++w) {
            IRow y = IRow::Zero(10);
            for (int i = 0; i < w; ++i) y[i] = 1;
            if (!T.member(y)) continue;
            double binom = 1.0;
            for (int i = 0; i < w; ++i)
                binom = binom * static_cast<double>(10 - i) / (i + 1);
            delta_oracle -= binom * std::pow(0.9, 10 - w) * std::pow(0.1, w);
        }
        out.push_back(
            rec_close("analysis.typical_delta_binomial", "q=2,n=10", T.delta, delta_oracle,
                      1e-12));

        // Monte Carlo agreement at n=16 within 4σ.
        const TypicalSetSpec T16 = typical_set_product(f2, {0.9, 0.1}, 16, 0.1);
        SplitMix64 rng(12345);
        const int trials = 100000;
        int outside = 0;
        for (int t = 0; t < trials; ++t) {
            IRow y(16);
            for (int i = 0; i < 16; ++i) y[i] = rng.real() < 0.9 ? 0 : 1;
            outside += T16.member(y) ? 0 : 1;
        }
        const double mc = static_cast<double>(outside) / trials;
        const double sigma = std::sqrt(std::max(T16.delta * (1 - T16.delta), 1e-12) / trials);
        out.push_back(rec_close("analysis.typical_delta_mc", "q=2,n=16", mc, T16.delta,
                                4.0 * sigma));
    }

    // Rank typical sets: window arithmetic and exact shell defect.
    {
        const RankNoiseParams np = rank_params(f2, 3, 3, 1);
        const TypicalSetSpec T = typical_set_rank(np, 1.0 / 3.0);
        const auto mass = rank_shell_masses(rank_params(f2, 3, 3, 2));
        out.push_back(rec_close("analysis.rank_typical_delta", "q=2,a=b=3,t=1", T.delta,
                                mass[0], 1e-12));
        const TypicalSetSpec Tall = typical_set_rank(np, 1.0);
        out.push_back(rec_close("analysis.rank_typical_full", "q=2,a=b=3,t=1", Tall.delta,
                                0.0, 1e-12));
    }

    out.push_back(rec_close("analysis.rank_gv", "a=b=4,R=0.5",
                            rank_gv_distance(4, 4, 0.5), 1.0, 0.0));
    out.push_back(rec_close("analysis.rank_gv_zero", "a=b=4,R=0.1",
                            rank_gv_distance(4, 4, 0.1), 0.0, 0.0));

    {
        const RankEntropy e22 = rank_entropy_per_symbol(rank_params(f2, 2, 2, 1));
        out.push_back(rec_close("analysis.rank_H_closed", "q=2,a=b=2,t=1", e22.closed, 0.75,
                                1e-12));
        const RankEntropy eb = rank_entropy_per_symbol(rank_params(f2, 2, 2, 2));
        out.push_back(rec_close("analysis.rank_H_tb", "q=2,a=b=2,t=2", eb.closed, 0.0, 0.0));
        out.push_back(rec_close("analysis.rank_H_tb_exact", "q=2,a=b=2,t=2", eb.exact, 0.0,
                                1e-12));
        // Gap ladder with t/a, t/b fixed: a = b = 2t.
        double prev = 1e9;
        bool shrinking = true;
        for (int t = 1; t <= 3; ++t) {
            const RankEntropy e = rank_entropy_per_symbol(rank_params(f2, 2 * t, 2 * t, t));
            const double gap = std::abs(e.closed - e.exact);
            shrinking = shrinking && gap <= prev + 1e-12;
            prev = gap;
        }
        out.push_back(rec_true("analysis.rank_H_gap_ladder", "q=2,(a,b,t)=t*(2,2,1)",
                               shrinking));
    }

    // Nice families: the product family with (ε, ε, 1, 1), the rank family
    // with (0, 2ε, exact K), and a vacuous family that must fail.
    {
        const std::vector<double> r = {0.8, 0.2};
        std::vector<TypicalSetSpec> fam;
        for (int n : {8, 16, 32}) fam.push_back(typical_set_product(f2, r, n, 0.1));
        const NiceFamilyReport rep =
            nice_family_check(f2, fam, product_family_constants(f2, r, 0.1));
        out.push_back(rec_true("analysis.nice_product", "q=2,r=(0.8,0.2)", rep.pass));

        std::vector<TypicalSetSpec> rfam;
        NiceFamilyConstants rc;
        for (int t = 1; t <= 2; ++t) {
            const RankNoiseParams np = rank_params(f2, 2 * t, 2 * t, t);
            rfam.push_back(typical_set_rank(np, 0.25));
            if (t == 1) rc = rank_family_constants(np, 0.25);
        }
        rc.K1 = std::min(rc.K1, rank_family_constants(rank_params(f2, 4, 4, 2), 0.25).K1);
        rc.K2 = std::max(rc.K2, rank_family_constants(rank_params(f2, 4, 4, 2), 0.25).K2);
        const NiceFamilyReport rrep = nice_family_check(f2, rfam, rc);
        out.push_back(rec_true("analysis.nice_rank", "q=2,(a,b,t)=t*(2,2,1)", rrep.pass));

        TypicalSetSpec degenerate = fam[0];
        degenerate.A = 0.5;
        degenerate.B = 0.25;  // B < A: empty sandwich
        degenerate.delta = 1.0;
        degenerate.cardinality = 0.0L;
        const NiceFamilyReport drep = nice_family_check(
            f2, {degenerate}, product_family_constants(f2, r, 0.1));
        out.push_back(rec_true("analysis.nice_degenerate_fails", "B<A", !drep.pass));
    }
    return out;
}

std::vector<CheckRecord> suite_pgm() {
    std::vector<CheckRecord> out;
    const FieldSpec f2 = make_field(2, 1);
    const FieldSpec f3 = make_field(3, 1);

    // Exact boundary cases.
    for (int q : {2, 3}) {
        const FieldSpec& f = q == 2 ? f2 : f3;
        const LinearCode code = random_code(f, 6, 3, 5);
        const NoiseModel noiseless = make_bernoulli_noise(f, 6, 0.0);
        out.push_back(rec_close("pgm.noiseless", "q=" + std::to_string(q) + ",n=6,k=3",
                                pgm_success(code, noiseless).p_pgm, 1.0, 1e-12));
        const NoiseModel uniform = parse_noise(f, 6, "preset:uniform");
        out.push_back(rec_close("pgm.uniform", "q=" + std::to_string(q) + ",n=6,k=3",
                                pgm_success(code, uniform).p_pgm,
                                std::pow(static_cast<double>(q), -code.rank), 1e-12));
    }

    // Coset masses against the explicit per-coset sums at q=2, n=3, k=1.
    {
        const LinearCode code = random_code(f2, 3, 1, 3, /*strict=*/true);
        const NoiseModel noise = make_bernoulli_noise(f2, 3, 0.1);
        const auto Z = coset_masses(code, noise);
        double worst = 0.0;
        for (index_t s = 0; s < code.num_syndromes(); ++s) {
            double direct = 0.0;
            for (const IRow& e : enumerate_coset(code, s)) direct += noise.dual_prob(e);
            worst = std::max(worst, std::abs(Z[static_cast<size_t>(s)] - std::sqrt(direct)));
        }
        out.push_back(rec_le("pgm.coset_masses_direct", "q=2,n=3,k=1", worst, 0.0, 1e-12));
        const auto rep = pgm_success(code, noise);
        out.push_back(rec_close("pgm.mass_partition", "q=2,n=3,k=1", rep.mass, 1.0, 1e-12));
    }

    // Closed form vs dense oracle on mixed instances.
    {
        struct Inst {
            int q, n, k;
            std::string noise;
            std::uint64_t seed;
        };
        const Inst instances[] = {
            {2, 4, 2, "preset:bernoulli:0.1", 21},
            {2, 5, 2, "preset:gibbs:0.8", 22},
            {2, 4, 3, "preset:rank:2,2,1", 23},
            {3, 3, 1, "preset:bernoulli:0.2", 24},
            {3, 4, 2, "preset:rank:2,2,1", 25},
        };
        double worst = 0.0;
        for (const Inst& inst : instances) {
            const FieldSpec& f = inst.q == 2 ? f2 : f3;
            const NoiseModel noise = parse_noise(f, inst.n, inst.noise);
            const LinearCode code = random_code(f, inst.n, inst.k, inst.seed);
            const double closed = pgm_success(code, noise).p_pgm;
            const DenseOracleResult oracle = pgm_dense_oracle(code, noise);
            worst = std::max(worst, std::abs(closed - oracle.mean));
        }
        out.push_back(rec_le("pgm.oracle_equivalence", "5 instances", worst, 0.0, 1e-9));
    }

    // Geometric uniformity: per-codeword success is flat.
    {
        const LinearCode code = random_code(f2, 5, 2, 31, /*strict=*/true);
        const NoiseModel noise = make_bernoulli_noise(f2, 5, 0.12);
        const DenseOracleResult oracle = pgm_dense_oracle(code, noise);
        out.push_back(rec_le("pgm.geometric_uniformity", "q=2,n=5,k=2", oracle.spread, 0.0,
                             1e-9));
    }

    // Ensemble expectation: exhaustive over all 2^{kn} generators.
    {
        const int n = 4, k = 2;
        const NoiseModel noise = make_bernoulli_noise(f2, n, 0.1);
        const TypicalSetSpec T = typical_set_product(f2, noise.dual_r, n, 0.3);
        const auto fam = product_family_constants(f2, noise.dual_r, 0.3);
        const IRow s = digits_of(8, 2, n);  // (1,0,0,0)
        const auto m = ztilde_moments(f2, n, k, noise, T, fam, s);
        out.push_back(rec_close("pgm.ztilde_exact_mean", "q=2,n=4,k=2,s=(1,0,0,0)", m.mean,
                                m.exact_mean, 1e-12));
        out.push_back(rec_le("pgm.ztilde_variance_bound", "q=2,n=4,k=2", m.variance,
                             m.variance_bound, 1e-12));
    }

    // Concentration: flat noise gives a deterministic full count.
    {
        const int n = 8, k = 2;
        const NoiseModel noiseless = make_bernoulli_noise(f2, n, 0.0);
        const TypicalSetSpec T = typical_set_product(f2, noiseless.dual_r, n, 0.05);
        const auto fam = product_family_constants(f2, noiseless.dual_r, 0.05);
        const double frac =
            concentration_check(f2, n, k, noiseless, T, fam, IRow::Zero(n), 200, 555);
        out.push_back(rec_close("pgm.concentration_flat", "q=2,n=8,k=2", frac, 1.0, 0.0));
        bool threw = false;
        try {
            concentration_check(f2, n, 7, noiseless, T, fam, IRow::Zero(n), 10, 1);
        } catch (const std::invalid_argument&) {
            threw = true;
        }
        out.push_back(rec_true("pgm.concentration_precondition", "q=2,n=8,k=7", threw));
    }

    // Truncated fidelity √(1-δ), independent of the codeword.
    {
        const LinearCode code = random_code(f2, 6, 2, 8, /*strict=*/true);
        const NoiseModel noise = make_bernoulli_noise(f2, 6, 0.1);
        const TypicalSetSpec T = typical_set_product(f2, noise.dual_r, 6, 0.15);
        double lo = 2.0, hi = -2.0;
        for (const IRow& c : enumerate_codewords(code)) {
            const double v = truncated_fidelity(code, noise, T, c);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        out.push_back(rec_close("pgm.truncated_fidelity", "q=2,n=6,k=2", lo,
                                std::sqrt(1.0 - T.delta), 1e-10));
        out.push_back(rec_le("pgm.truncated_fidelity_flat", "q=2,n=6,k=2", hi - lo, 0.0,
                             1e-10));
    }

    out.push_back(rec_close("pgm.distinguishability", "K=N",
                            distinguishability_bound(8, 8), 1.0, 0.0));
    out.push_back(rec_close("pgm.distinguishability", "K=0",
                            distinguishability_bound(8, 0), 0.0, 0.0));

    // Converse: any-measurement bound dominates the closed form above capacity.
    {
        const NoiseModel noise = make_bernoulli_noise(f2, 12, 0.1);
        const LinearCode code = random_code(f2, 12, 10, 42);
        const TypicalSetSpec T = typical_set_product(f2, noise.dual_r, 12, 0.1);
        const double bound = converse_bound(code, T);
        const double p = pgm_success(code, noise).p_pgm;
        out.push_back(rec_le("pgm.converse_dominates", "q=2,n=12,k=10", p, bound, 1e-10));
    }

    // Mean success never increases with the rate (coupled prefix draws).
    {
        const NoiseModel noise = make_bernoulli_noise(f2, 10, 0.1);
        const int kmax = 6, seeds = 50;
        std::vector<double> mean(kmax + 1, 0.0);
        for (int seed = 0; seed < seeds; ++seed) {
            IMat G(kmax, 10);
            SplitMix64 rng(derive_seed(909, static_cast<index_t>(seed)));
            for (int i = 0; i < kmax; ++i)
                for (int j = 0; j < 10; ++j) G(i, j) = static_cast<int>(rng.below(2));
            for (int k = 1; k <= kmax; ++k) {
                const LinearCode code = code_from_generator(f2, G.topRows(k));
                mean[static_cast<size_t>(k)] += pgm_success(code, noise).p_pgm / seeds;
            }
        }
        bool mono = true;
        for (int k = 2; k <= kmax; ++k)
            mono = mono && mean[static_cast<size_t>(k)] <= mean[static_cast<size_t>(k - 1)] + 1e-12;
        out.push_back(rec_true("pgm.rate_monotone", "q=2,n=10,k=1..6", mono));
    }
    return out;
}

std::vector<CheckRecord> suite_sampler() {
    std::vector<CheckRecord> out;
    const FieldSpec f2 = make_field(2, 1);

    // Singleton dual support.
    {
        IMat G(1, 2);
        G << 1, 1;  // C = C⊥ = {00, 11}
        const LinearCode code = code_from_generator(f2, G);
        const NoiseModel noise = make_bernoulli_noise(f2, 2, 0.1);
        const DualSamplerModel m = dual_distribution(code, noise);
        out.push_back(rec_true("sampler.singleton_support", "q=2,n=2",
                               m.support.size() == 1 && std::abs(m.probs[0] - 1.0) < 1e-15));
        const auto draws = sample_dual(m, 10, 99);
        bool same = true;
        for (const IRow& d : draws) same = same && d == m.support[0];
        out.push_back(rec_true("sampler.singleton_draws", "q=2,n=2", same));
    }

    // Uniform noise has a delta transform: M = 0 must be reported.
    {
        const LinearCode code = random_code(f2, 4, 2, 6);
        const NoiseModel uniform = parse_noise(f2, 4, "preset:uniform");
        bool threw = false;
        try {
            dual_distribution(code, uniform);
        } catch (const std::domain_error&) {
            threw = true;
        }
        out.push_back(rec_true("sampler.zero_mass_error", "q=2,n=4", threw));
    }

    // Success floor values.
    {
        const LinearCode code = random_code(f2, 6, 2, 3, /*strict=*/true);
        const NoiseModel noiseless = make_bernoulli_noise(f2, 6, 0.0);
        out.push_back(rec_close("sampler.floor_noiseless", "q=2,n=6,k=2",
                                success_floor(code, noiseless), 0.25, 1e-12));
        const NoiseModel uniform = parse_noise(f2, 6, "preset:uniform");
        out.push_back(rec_close("sampler.floor_guessing", "q=2,n=6,k=2",
                                success_floor(code, uniform), 0.0, 1e-12));
    }

    // Dense chain: conditional law, Gram residual, floor domination, and
    // invariance under a perturbed representative rule.
    {
        const LinearCode code = random_code(f2, 5, 2, 12, /*strict=*/true);
        const NoiseModel noise = make_bernoulli_noise(f2, 5, 0.1);
        const DualSamplerModel m = dual_distribution(code, noise);
        const PipelineResult pr = regev_pipeline_oracle(code, noise);
        out.push_back(rec_le("sampler.gram_identity", "q=2,n=5,k=2", pr.gram_residual, 0.0,
                             1e-10));
        double worst = 0.0, total = 0.0;
        for (size_t i = 0; i < pr.support_idx.size(); ++i) {
            worst = std::max(worst, std::abs(pr.conditional[i] - m.probs[i]));
            total += pr.conditional[i];
        }
        out.push_back(rec_le("sampler.conditional_matches", "q=2,n=5,k=2", worst, 0.0,
                             1e-10));
        out.push_back(rec_close("sampler.conditional_total", "q=2,n=5,k=2", total, 1.0,
                                1e-10));
        out.push_back(rec_true("sampler.floor_dominated", "q=2,n=5,k=2",
                               pr.p_zero_branch >= m.success_floor - 1e-10));
        out.push_back(rec_close("sampler.p_zero_closed", "q=2,n=5,k=2", pr.p_zero_branch,
                                pr.p_zero_closed, 1e-10));

        // Shift every representative by a dual codeword.
        IRow shift = IRow::Zero(5);
        for (const IRow& y : enumerate_coset(code, 0))
            if ((y.array() != 0).any()) {
                shift = y;
                break;
            }
        const PipelineResult pr2 = regev_pipeline_oracle(code, noise, shift);
        double move = std::abs(pr2.p_zero_branch - pr.p_zero_branch);
        for (size_t i = 0; i < pr.conditional.size(); ++i)
            move = std::max(move, std::abs(pr2.conditional[i] - pr.conditional[i]));
        out.push_back(rec_le("sampler.representative_invariance", "q=2,n=5,k=2", move, 0.0,
                             1e-12));
    }

    // Global phase on f leaves q(y) unchanged.
    {
        const LinearCode code = random_code(f2, 4, 2, 9, /*strict=*/true);
        const NoiseModel noise = make_bernoulli_noise(f2, 4, 0.2);
        CVec g = noise.f.per_symbol() * std::exp(Cx(0.0, 0.77));
        const NoiseModel phased = make_table_noise(f2, 4, std::move(g));
        const DualSamplerModel m1 = dual_distribution(code, noise);
        const DualSamplerModel m2 = dual_distribution(code, phased);
        double worst = 0.0;
        for (size_t i = 0; i < m1.probs.size(); ++i)
            worst = std::max(worst, std::abs(m1.probs[i] - m2.probs[i]));
        out.push_back(rec_le("sampler.phase_invariance", "q=2,n=4,k=2", worst, 0.0, 1e-12));
    }

    // Empirical sampling within 4σ per support point.
    {
        IMat G(1, 3);
        G << 1, 1, 0;  // C⊥ = {000, 001, 110, 111}
        const LinearCode code = code_from_generator(f2, G);
        const NoiseModel noise = make_bernoulli_noise(f2, 3, 0.1);
        const DualSamplerModel m = dual_distribution(code, noise);
        const index_t draws = 100000;
        const auto picks = sample_dual_indices(m, draws, 2025);
        std::vector<double> emp(m.probs.size(), 0.0);
        for (size_t i : picks) emp[i] += 1.0 / static_cast<double>(draws);
        double worst_sigma = 0.0;
        for (size_t i = 0; i < m.probs.size(); ++i) {
            const double sigma =
                std::sqrt(std::max(m.probs[i] * (1 - m.probs[i]), 1e-12) /
                          static_cast<double>(draws));
            worst_sigma = std::max(worst_sigma, std::abs(emp[i] - m.probs[i]) / sigma);
        }
        out.push_back(rec_le("sampler.empirical_4sigma", "q=2,n=3", worst_sigma, 4.0, 0.0));
    }

    // Typicality extremes.
    {
        const LinearCode code = random_code(f2, 6, 2, 4, /*strict=*/true);
        const NoiseModel noise = make_bernoulli_noise(f2, 6, 0.1);
        const DualSamplerModel m = dual_distribution(code, noise);
        TypicalSetSpec all;
        all.member = [](const IRow&) { return true; };
        out.push_back(rec_close("sampler.typicality_full", "q=2,n=6,k=2",
                                typicality_of_samples(m, all), 1.0, 1e-12));
        TypicalSetSpec none;
        none.member = [](const IRow&) { return false; };
        out.push_back(rec_close("sampler.typicality_empty", "q=2,n=6,k=2",
                                typicality_of_samples(m, none), 0.0, 0.0));
    }

    // Max-probability scan trivialities.
    {
        const NoiseModel noise = make_bernoulli_noise(f2, 8, 0.1);
        const MaxProbScan scan = max_prob_dual_scan(f2, 8, 0.5, noise, 0.6, 50, 5);
        out.push_back(rec_close("sampler.maxprob_eps_ge_R", "q=2,n=8", scan.fraction, 0.0,
                                0.0));
        const NoiseModel noiseless = make_bernoulli_noise(f2, 8, 0.0);
        const MaxProbScan s2 = max_prob_dual_scan(f2, 8, 0.5, noiseless, 0.1, 50, 6);
        out.push_back(rec_close("sampler.maxprob_flat_dual", "q=2,n=8", s2.fraction, 0.0,
                                0.0));
    }

    // Minimum-weight structure: the most likely dual codeword is minimum
    // weight whenever the dual law strictly decreases in the weight.
    {
        const NoiseModel noise = make_bernoulli_noise(f2, 8, 0.1);
        bool ok = true;
        for (std::uint64_t seed = 0; seed < 10 && ok; ++seed) {
            const LinearCode code = random_code(f2, 8, 3, derive_seed(31337, seed));
            const LinearCode dc = dual(code);
            if (dc.rank == 0) continue;
            const DualSamplerModel m = dual_distribution(code, noise);
            size_t arg = 0;
            for (size_t i = 1; i < m.probs.size(); ++i)
                if (m.probs[i] > m.probs[arg]) arg = i;
            const double dmin =
                min_weight_codeword(dc, [&](const IRow& y) { return noise.weight(y); })
                    .second;
            ok = std::abs(noise.weight(m.support[arg]) - dmin) < 1e-12;
        }
        out.push_back(rec_true("sampler.argmax_min_weight", "q=2,n=8,k=3", ok));
    }
    return out;
}

std::vector<CheckRecord> run_suites(const std::string& filter, const VerifyOptions& opt) {
    std::vector<CheckRecord> all;
    auto want = [&filter](const char* name) {
        return filter.empty() || std::string(name).rfind(filter, 0) == 0;
    };
    auto append = [&all](std::vector<CheckRecord> v) {
        for (auto& c : v) all.push_back(std::move(c));
    };
    if (want("field")) append(suite_field(opt));
    if (want("codes")) append(suite_codes());
    if (want("spectral")) append(suite_spectral());
    if (want("noise")) append(suite_noise());
    if (want("analysis")) append(suite_analysis());
    if (want("pgm")) append(suite_pgm());
    if (want("sampler")) append(suite_sampler());
    return all;
}

std::string checks_to_json(const std::vector<CheckRecord>& checks) {
    nlohmann::json arr = nlohmann::json::array();
    for (const CheckRecord& c : checks)
        arr.push_back({{"name", c.name},
                       {"instance", c.instance},
                       {"lhs", c.lhs},
                       {"rhs", c.rhs},
                       {"tolerance", c.tolerance},
                       {"pass", c.pass}});
    nlohmann::json root;
    root["checks"] = arr;
    root["pass"] = all_pass(checks);
    return root.dump(2);
}

bool all_pass(const std::vector<CheckRecord>& checks) {
    for (const CheckRecord& c : checks)
        if (!c.pass) return false;
    return true;
}

}  // namespace qdp
