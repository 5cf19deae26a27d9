#pragma once

#include <optional>
#include <vector>

#include "qdp/analysis.hpp"
#include "qdp/codes.hpp"
#include "qdp/noise.hpp"
#include "qdp/pgm.hpp"

namespace qdp {

// The output law of the tweaked measurement chain conditioned on its success
// branch: nonzero dual codewords y with q(y) = |f̂(y)|² / M,
// M = Σ_{z ∈ (C⊥)*} |f̂(z)|².
struct DualSamplerModel {
    const FieldSpec* field = nullptr;
    int n = 0;
    std::vector<IRow> support;   // (C⊥)*, ordered by vector index
    std::vector<double> probs;   // q(y), sums to 1
    std::vector<double> cdf;
    double M = 0.0;
    double p_pgm = 0.0;
    double success_floor = 0.0;  // (√P_PGM - |C|^{-1/2})², clamped to [0,1]
};

// Throws std::domain_error when M = 0 (f̂ vanishes on every nonzero dual
// codeword) — reported, not silently zeroed.
DualSamplerModel dual_distribution(const LinearCode& code, const NoiseModel& noise);

double success_floor(const LinearCode& code, const NoiseModel& noise);

// i.i.d. draws from q(y) by inverse CDF over the enumerated support.
std::vector<IRow> sample_dual(const DualSamplerModel& model, index_t count,
                              std::uint64_t seed);
std::vector<size_t> sample_dual_indices(const DualSamplerModel& model, index_t count,
                                        std::uint64_t seed);

// Dense simulation of the whole reduction chain |φ₀⟩..|φ₅⟩ with the tweaked
// orthonormal basis {|Z_y⟩}: each |Z_c⟩ is the coset expansion
// (|U₀⟩ + Σ_{s≠0} χ_c(u_s)|W̃_s⟩)/√|C| and the completing outcome is the
// ambient |0⟩ state. Returns the exact probability of measuring 0 in the
// first register and the exact conditional law of the final measurement.
//
// `rep_shift` (a dual codeword) perturbs the coset representatives
// u_s → u_s + shift for s ≠ 0; the observable statistics must not move.
struct PipelineResult {
    double p_zero_branch = 0.0;
    double p_zero_closed = 0.0;           // (Σ_{s≠0}Z_s + √(Z₀²-p(0)))²/|C|
    std::vector<index_t> support_idx;     // indices of (C⊥)* in F_q^n
    std::vector<double> conditional;      // conditional law over support_idx
    double gram_residual = 0.0;           // max |Gram({Z_y}) - I|
    double alpha_spread = 0.0;            // max deviation of ⟨Z_c|ψ̂_c⟩ across c
};
PipelineResult regev_pipeline_oracle(const LinearCode& code, const NoiseModel& noise,
                                     const std::optional<IRow>& rep_shift = std::nullopt);

// Exact mass q(T ∩ (C⊥)*) of the typical set under the sampler law — the
// X/Y ratio with X = Σ_{T∩(C⊥)*} p and Y = Σ_{(C⊥)*} p.
double typicality_of_samples(const DualSamplerModel& model, const TypicalSetSpec& T);

// Fraction of sampled G whose (C⊥)* contains y with p(y) > q^{-n(R-ε)},
// against the exact first-moment envelope |B_ε| / q^k.
struct MaxProbScan {
    double fraction = 0.0;
    double envelope = 0.0;  // min(1, |B_ε|/q^k), exact
    long double ball = 0.0L;  // |B_ε|
};
MaxProbScan max_prob_dual_scan(const FieldSpec& f, int n, double R,
                               const NoiseModel& noise, double eps, index_t trials,
                               std::uint64_t seed);

// Per-seed minimum-weight statistics of the sampler law, with the weight
// induced by the noise kind. `margin` widens the target set to
// {w <= d_min + margin}; the reported fraction is the exact q-mass of that
// set, `empirical_frac` the observed fraction over samples_per_seed draws.
struct MinWeightRow {
    std::uint64_t seed = 0;
    int n = 0;
    int k = 0;
    std::string noise;
    double d_min = 0.0;
    double expected_weight = 0.0;
    double frac_within_margin = 0.0;
    double empirical_frac = 0.0;
    double success_floor = 0.0;
    double p_zero_branch = 0.0;
    double typicality = 0.0;  // q-mass of T_ε when eps provided, else 1
    bool degenerate = false;  // M = 0 or C⊥ trivial; row carries no statistics
};
// One experiment row for a concrete per-seed value (drawn through the
// counter split of `min_weight_experiment`, or supplied directly).
MinWeightRow min_weight_row(const FieldSpec& f, int n, int k, const NoiseModel& noise,
                            std::uint64_t seed_value, index_t samples_per_seed,
                            double margin, std::optional<double> eps);

std::vector<MinWeightRow> min_weight_experiment(const FieldSpec& f, int n, int k,
                                                const NoiseModel& noise, index_t seeds,
                                                index_t samples_per_seed,
                                                std::uint64_t master_seed,
                                                double margin = 2.0,
                                                std::optional<double> eps = std::nullopt);

}  // namespace qdp
