#include "qdp/sampler.hpp"

#include <algorithm>
#include <cmath>

#include "qdp/rng.hpp"
#include "qdp/spectral.hpp"

namespace qdp {

DualSamplerModel dual_distribution(const LinearCode& code, const NoiseModel& noise) {
    require(code.dual_size() <= caps().product, "dual_distribution: dual too large");
    DualSamplerModel m;
    m.field = code.field;
    m.n = code.n;

    std::vector<std::pair<index_t, double>> entries;
    long double mass = 0.0L;
    for (const IRow& y : enumerate_coset(code, 0)) {
        if (!(y.array() != 0).any()) continue;
        const double p = noise.dual_prob(y);
        entries.emplace_back(index_of(y, code.field->q), p);
        mass += static_cast<long double>(p);
    }
    m.M = static_cast<double>(mass);
    // Masses at the 1e-20 scale are transform round-off (a delta spectrum
    // leaves ~(q·ulp)² per entry), not signal.
    if (!(m.M > 1e-20))
        throw std::domain_error(
            "dual_distribution: f-hat vanishes on every nonzero dual codeword (M = 0)");
    std::sort(entries.begin(), entries.end());

    m.support.reserve(entries.size());
    m.probs.reserve(entries.size());
    m.cdf.reserve(entries.size());
    long double run = 0.0L;
    for (const auto& [idx, p] : entries) {
        m.support.push_back(digits_of(idx, code.field->q, code.n));
        const double qy = static_cast<double>(static_cast<long double>(p) / mass);
        m.probs.push_back(qy);
        run += static_cast<long double>(p) / mass;
        m.cdf.push_back(static_cast<double>(run));
    }
    if (!m.cdf.empty()) m.cdf.back() = 1.0;

    m.p_pgm = pgm_success(code, noise).p_pgm;
    const double root = std::sqrt(m.p_pgm) -
                        1.0 / std::sqrt(static_cast<double>(code.codewords()));
    m.success_floor = std::clamp(root > 0.0 ? root * root : 0.0, 0.0, 1.0);
    return m;
}

double success_floor(const LinearCode& code, const NoiseModel& noise) {
    const double p = pgm_success(code, noise).p_pgm;
    const double root =
        std::sqrt(p) - 1.0 / std::sqrt(static_cast<double>(code.codewords()));
    return std::clamp(root > 0.0 ? root * root : 0.0, 0.0, 1.0);
}

std::vector<size_t> sample_dual_indices(const DualSamplerModel& model, index_t count,
                                        std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<size_t> out;
    out.reserve(count);
    for (index_t i = 0; i < count; ++i) {
        const double u = rng.real();
        const auto it = std::lower_bound(model.cdf.begin(), model.cdf.end(), u);
        out.push_back(static_cast<size_t>(
            std::min<std::ptrdiff_t>(it - model.cdf.begin(),
                                     static_cast<std::ptrdiff_t>(model.cdf.size()) - 1)));
    }
    return out;
}

std::vector<IRow> sample_dual(const DualSamplerModel& model, index_t count,
                              std::uint64_t seed) {
    std::vector<IRow> out;
    out.reserve(count);
    for (size_t i : sample_dual_indices(model, count, seed))
        out.push_back(model.support[i]);
    return out;
}

PipelineResult regev_pipeline_oracle(const LinearCode& code, const NoiseModel& noise,
                                     const std::optional<IRow>& rep_shift) {
    const FieldSpec& f = *code.field;
    const index_t dim = ipow(f.q, static_cast<unsigned>(code.n));
    require(dim <= caps().dense, "regev_pipeline_oracle: cap exceeded");
    if (rep_shift) require(code.in_dual(*rep_shift), "rep_shift must lie in the dual");

    const Eigen::Index d = static_cast<Eigen::Index>(dim);
    const index_t n_cosets = code.num_syndromes();

    // f̂ by the dense transform (oracle route, not the closed form).
    const CVec fhat = dft_dense(f, code.n, noise.f.dense_amps());

    // Coset structure: syndrome of every basis vector.
    std::vector<index_t> syn_of(dim);
    for (index_t i = 0; i < dim; ++i)
        syn_of[i] = code.syndrome_index(digits_of(i, f.q, code.n));

    std::vector<double> Zsq(n_cosets, 0.0);
    for (index_t i = 0; i < dim; ++i)
        Zsq[static_cast<size_t>(syn_of[i])] += std::norm(fhat[static_cast<Eigen::Index>(i)]);

    // Normalized coset states W̃_s; zero-mass cosets (s ≠ 0) fall back to the
    // representative basis vector so the measurement basis stays complete.
    std::vector<CVec> wtilde(n_cosets);
    for (index_t s = 0; s < n_cosets; ++s) {
        CVec v = CVec::Zero(d);
        if (Zsq[static_cast<size_t>(s)] > 1e-28) {
            const double z = std::sqrt(Zsq[static_cast<size_t>(s)]);
            for (index_t i = 0; i < dim; ++i)
                if (syn_of[i] == s)
                    v[static_cast<Eigen::Index>(i)] =
                        fhat[static_cast<Eigen::Index>(i)] / z;
        } else if (s != 0) {
            IRow u = coset_representative(code, s);
            if (rep_shift)
                for (int j = 0; j < code.n; ++j) u[j] = f.add(u[j], (*rep_shift)[j]);
            v[static_cast<Eigen::Index>(index_of(u, f.q))] = 1.0;
        }
        wtilde[static_cast<size_t>(s)] = std::move(v);
    }

    // |U₀⟩: the zero coset with the |0⟩ component removed, renormalized.
    const Cx f0 = fhat[0];
    const double Msq = Zsq[0] - std::norm(f0);
    if (Msq <= 1e-20)
        throw std::domain_error("regev_pipeline_oracle: M = 0, no nonzero dual mass");
    CVec u0 = wtilde[0] * std::sqrt(Zsq[0]);
    u0[0] -= f0;
    u0 /= std::sqrt(Msq);

    const auto codewords = enumerate_codewords(code);
    const double size = static_cast<double>(code.codewords());

    // Tweaked basis |Z_c⟩ for every codeword, plus the ambient |0⟩ outcome.
    std::vector<CVec> zstates;
    zstates.reserve(codewords.size() + 1);
    for (const IRow& c : codewords) {
        CVec z = u0;
        for (index_t s = 1; s < n_cosets; ++s) {
            IRow u = coset_representative(code, s);
            if (rep_shift)
                for (int j = 0; j < code.n; ++j) u[j] = f.add(u[j], (*rep_shift)[j]);
            z += character_vec(f, c, u) * wtilde[static_cast<size_t>(s)];
        }
        z /= std::sqrt(size);
        zstates.push_back(std::move(z));
    }
    {
        CVec zero = CVec::Zero(d);
        zero[0] = 1.0;
        zstates.push_back(std::move(zero));
    }

    PipelineResult res;
    double gram = 0.0;
    for (size_t i = 0; i < zstates.size(); ++i)
        for (size_t j = i; j < zstates.size(); ++j) {
            const Cx g = zstates[i].dot(zstates[j]);
            gram = std::max(gram, std::abs(g - (i == j ? Cx(1.0) : Cx(0.0))));
        }
    res.gram_residual = gram;

    // |ψ̂_c⟩ and the diagonal amplitudes α_c = ⟨Z_c|ψ̂_c⟩. Measuring 0 in the
    // first register keeps exactly the y = c terms of
    // |φ₅⟩ = |C|^{-1/2} Σ_c Σ_y α_{c,y} |c-y⟩|Z_y⟩.
    CVec branch = CVec::Zero(d);
    double asum = 0.0, amin = 2.0, amax = -2.0;
    double p_zero = 0.0;
    for (size_t ci = 0; ci < codewords.size(); ++ci) {
        CVec psi(d);
        for (index_t i = 0; i < dim; ++i) {
            const IRow y = digits_of(i, f.q, code.n);
            psi[static_cast<Eigen::Index>(i)] =
                fhat[static_cast<Eigen::Index>(i)] * character_vec(f, codewords[ci], y);
        }
        const Cx alpha = zstates[ci].dot(psi);
        p_zero += std::norm(alpha) / size;
        branch += (alpha / std::sqrt(size)) * zstates[ci];
        const double re = alpha.real();
        amin = std::min(amin, re);
        amax = std::max(amax, re);
        asum = std::max(asum, std::abs(alpha.imag()));
    }
    res.p_zero_branch = p_zero;
    res.alpha_spread = std::max(amax - amin, asum);

    const std::vector<double> Z = coset_masses_dense(code, fhat);
    double zrest = 0.0;
    for (size_t s = 1; s < Z.size(); ++s) zrest += Z[s];
    const double amp_closed = (zrest + std::sqrt(std::max(Msq, 0.0))) / std::sqrt(size);
    res.p_zero_closed = amp_closed * amp_closed;

    // Conditional law of the final measurement on the success branch.
    branch /= l2_norm(branch);
    for (index_t i = 1; i < dim; ++i) {
        if (syn_of[i] != 0) continue;
        res.support_idx.push_back(i);
        res.conditional.push_back(std::norm(branch[static_cast<Eigen::Index>(i)]));
    }
    // Any residual off the dual support is a simulation error; fold the check
    // into the conditional mass (callers assert it sums to 1).
    return res;
}

double typicality_of_samples(const DualSamplerModel& model, const TypicalSetSpec& T) {
    long double mass = 0.0L;
    for (size_t i = 0; i < model.support.size(); ++i)
        if (T.member(model.support[i])) mass += static_cast<long double>(model.probs[i]);
    return static_cast<double>(mass);
}

MaxProbScan max_prob_dual_scan(const FieldSpec& f, int n, double R,
                               const NoiseModel& noise, double eps, index_t trials,
                               std::uint64_t seed) {
    require(R > 0.0 && R < 1.0, "max_prob_dual_scan: need 0 < R < 1");
    const int k = static_cast<int>(std::floor(R * n));
    require(k >= 1, "max_prob_dual_scan: floor(Rn) must be >= 1");
    const double thr = std::pow(static_cast<double>(f.q), -n * (R - eps));

    // Exact ball size |B_ε| = #{y ≠ 0 : p(y) > q^{-n(R-ε)}}.
    long double ball = 0.0L;
    if (noise.is_product()) {
        std::function<long double(int, double, long double)> count =
            [&](int pos, double p, long double strings) -> long double {
            if (p <= thr) return 0.0L;  // p only shrinks along the digits
            if (pos == n) return strings;
            long double acc = 0.0L;
            for (int v = 0; v < f.q; ++v)
                acc += count(pos + 1, p * noise.dual_r[static_cast<size_t>(v)], strings);
            return acc;
        };
        ball = count(0, 1.0, 1.0L);
        const IRow zero = IRow::Zero(n);
        if (noise.dual_prob(zero) > thr) ball -= 1.0L;
    } else {
        const auto probs = rank_point_probs(noise.rank_dual);
        for (int u = 0; u <= noise.rank.b; ++u)
            if (probs[static_cast<size_t>(u)] > thr)
                ball += static_cast<long double>(
                    noise.rank_dual.sphere[static_cast<size_t>(u)]);
        if (probs[0] > thr) ball -= 1.0L;
    }

    MaxProbScan out;
    out.ball = ball;
    out.envelope = static_cast<double>(
        std::min(1.0L, ball / powl(static_cast<long double>(f.q), k)));

    index_t bad = 0;
    for (index_t t = 0; t < trials; ++t) {
        const LinearCode code = random_code(f, n, k, derive_seed(seed, t));
        bool violated = false;
        for (const IRow& y : enumerate_coset(code, 0)) {
            if (!(y.array() != 0).any()) continue;
            if (noise.dual_prob(y) > thr) {
                violated = true;
                break;
            }
        }
        if (violated) ++bad;
    }
    out.fraction = static_cast<double>(bad) / static_cast<double>(trials);
    return out;
}

MinWeightRow min_weight_row(const FieldSpec& f, int n, int k, const NoiseModel& noise,
                            std::uint64_t seed_value, index_t samples_per_seed,
                            double margin, std::optional<double> eps) {
    MinWeightRow row;
    row.seed = seed_value;
    row.n = n;
    row.k = k;
    row.noise = noise.label;
    const LinearCode code = random_code(f, n, k, row.seed);
    const LinearCode dual_code = dual(code);
    if (dual_code.rank == 0) {
        row.degenerate = true;
        return row;
    }
    DualSamplerModel model;
    try {
        model = dual_distribution(code, noise);
    } catch (const std::domain_error&) {
        row.degenerate = true;
        return row;
    }
    row.success_floor = model.success_floor;
    row.p_zero_branch = p_zero_branch_closed(code, noise);

    auto wfn = [&noise](const IRow& y) { return noise.weight(y); };
    row.d_min = min_weight_codeword(dual_code, wfn).second;

    long double ew = 0.0L, within = 0.0L;
    for (size_t i = 0; i < model.support.size(); ++i) {
        const double w = noise.weight(model.support[i]);
        ew += static_cast<long double>(model.probs[i]) * w;
        if (w <= row.d_min + margin) within += static_cast<long double>(model.probs[i]);
    }
    row.expected_weight = static_cast<double>(ew);
    row.frac_within_margin = static_cast<double>(within);

    if (samples_per_seed > 0) {
        index_t hits = 0;
        const auto picks =
            sample_dual_indices(model, samples_per_seed, derive_seed(row.seed, 1));
        for (size_t i : picks)
            if (noise.weight(model.support[i]) <= row.d_min + margin) ++hits;
        row.empirical_frac =
            static_cast<double>(hits) / static_cast<double>(samples_per_seed);
    }
    if (eps) {
        const TypicalSetSpec T = noise.is_product()
                                     ? typical_set_product(f, noise.dual_r, n, *eps)
                                     : typical_set_rank(noise.rank, *eps);
        row.typicality = typicality_of_samples(model, T);
    } else {
        row.typicality = 1.0;
    }
    return row;
}

std::vector<MinWeightRow> min_weight_experiment(const FieldSpec& f, int n, int k,
                                                const NoiseModel& noise, index_t seeds,
                                                index_t samples_per_seed,
                                                std::uint64_t master_seed, double margin,
                                                std::optional<double> eps) {
    std::vector<MinWeightRow> rows;
    rows.reserve(seeds);
    for (index_t si = 0; si < seeds; ++si)
        rows.push_back(min_weight_row(f, n, k, noise, derive_seed(master_seed, si),
                                      samples_per_seed, margin, eps));
    return rows;
}

}  // namespace qdp
