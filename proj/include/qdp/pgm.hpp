#pragma once

#include <vector>

#include "qdp/analysis.hpp"
#include "qdp/codes.hpp"
#include "qdp/common.hpp"
#include "qdp/noise.hpp"

namespace qdp {

// Coset masses and the closed-form success probability of the Pretty Good
// Measurement for distinguishing the shifted noise states of a linear code:
//   Z_s = √( Σ_{e ∈ s+C⊥} |f̂(e)|² ),   P = (Σ_s Z_s)² / |C|,
// with |C| = q^rank(G) and s ranging over the q^rank cosets of C⊥.
struct PgmReport {
    std::vector<double> Z;   // indexed by syndrome
    double zsum = 0.0;       // Σ_s Z_s
    double mass = 0.0;       // Σ_s Z_s² (must be 1)
    double p_pgm = 0.0;
    double p_c = 0.0;        // per-codeword success; equals p_pgm by symmetry
};

// Z_s from the closed dual representation of the noise (per-symbol product or
// rank shells); no dense transform involved.
std::vector<double> coset_masses(const LinearCode& code, const NoiseModel& noise);

// Same accumulation from an explicit dense f̂ (the oracle-side route).
std::vector<double> coset_masses_dense(const LinearCode& code, const CVec& fhat);

PgmReport pgm_success(const LinearCode& code, const NoiseModel& noise);
PgmReport pgm_report_from_masses(const LinearCode& code, std::vector<double> Z);

// Dense oracle: builds |ψ̂_c⟩ for every distinct codeword, forms
// ρ = Σ_c |ψ̂_c⟩⟨ψ̂_c|, takes ρ^{-1/2} on its support by eigendecomposition
// (eigenvalues <= 1e-12 are kernel), and evaluates the per-codeword success
// |⟨ψ̂_c|ρ^{-1/2}|ψ̂_c⟩|². Cost is cubic in q^n; capped at q^n <= 2^12.
struct DenseOracleResult {
    double mean = 0.0;
    std::vector<double> per_codeword;
    double spread = 0.0;  // max - min per-codeword success
};
DenseOracleResult pgm_dense_oracle(const LinearCode& code, const NoiseModel& noise);

// ---------------------------------------------------------------------------
// Code-ensemble statistics of the typical-set-restricted coset mass
//   Z̃_s(ε)² = Σ_{y ∈ T ∩ (s+C⊥)} p(y).
// Its exact ensemble expectation over i.i.d. uniform G is
//   E = [s∈T]·p(s) + (1 - δ - [s∈T]·p(s)) / q^k,
// and its variance obeys (qK₂²/K₁)·q^{-n(H-2β-α)} / q^k for any valid
// nice-family constants.

struct ZtildeMoments {
    double mean = 0.0;
    double variance = 0.0;
    double exact_mean = 0.0;
    double variance_bound = 0.0;
    index_t ensemble = 0;  // number of generator matrices averaged
};

struct MonteCarlo {
    index_t trials = 0;
    std::uint64_t seed = 0;
};

// mode: exhaustive when `mc.trials == 0` (requires q^{kn} enumerable, q = 2
// and kn <= 24), Monte Carlo otherwise.
ZtildeMoments ztilde_moments(const FieldSpec& f, int n, int k, const NoiseModel& noise,
                             const TypicalSetSpec& T, const NiceFamilyConstants& fam,
                             const IRow& s, MonteCarlo mc = {});

// Fraction of sampled G with Z̃_s(ε)² >= (1 - δ - q^{-(H-R)n/8}) / q^k.
// Requires 2β(ε)+α(ε) <= (H-R)/2 and H > R.
double concentration_check(const FieldSpec& f, int n, int k, const NoiseModel& noise,
                           const TypicalSetSpec& T, const NiceFamilyConstants& fam,
                           const IRow& s, index_t trials, std::uint64_t seed);

// ⟨ψ̂_c | ψ̃_c⟩ where ψ̃_c renormalizes the T-restricted amplitudes;
// equals √(1-δ) independent of c. Dense evaluation.
double truncated_fidelity(const LinearCode& code, const NoiseModel& noise,
                          const TypicalSetSpec& T, const IRow& c);

// N states in a K-dimensional subspace cannot be distinguished with average
// success above min(1, K/N).
double distinguishability_bound(double N, double K);

// Upper bound |T_ε|/|C| + √δ(ε,n) on the average success of any measurement.
double converse_bound(const LinearCode& code, const TypicalSetSpec& T);

// Probability that the tweaked measurement chain leaves the success branch:
// ((Σ_{s≠0} Z_s + √(Z_0² - p(0)))² / |C|. Closed form, used by the sampler.
double p_zero_branch_closed(const LinearCode& code, const NoiseModel& noise);

}  // namespace qdp
