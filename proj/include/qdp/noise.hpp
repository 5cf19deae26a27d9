#pragma once

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qdp/common.hpp"
#include "qdp/field.hpp"
#include "qdp/spectral.hpp"

namespace qdp {

using BigInt = boost::multiprecision::cpp_int;

// g for the q-ary symmetric channel with crossover probability p:
// g(0) = √(1-p), g(α≠0) = √(p/(q-1)). Unit norm.
CVec bernoulli_g(const FieldSpec& f, double crossover);

// Gaussian binomial [b t]_q = ∏_{i<t} (q^b - q^i)/(q^t - q^i) for t <= b,
// else 0; counts the t-dimensional subspaces of F_q^b. Exact.
BigInt gaussian_binomial(int b, int t, int q);

// Number of a×b matrices over F_q of rank u:
// S_u = [b u]_q · ∏_{i<u} (q^a - q^i). Exact.
BigInt sphere_size_rank(int a, int b, int u, int q);

// ---------------------------------------------------------------------------
// Metric-induced per-symbol distributions r_λ(α) = q^{-λ|α|} / F(λ),
// F(λ) = Σ_α q^{-λ|α|}.

struct GibbsNoise {
    std::vector<double> weights;  // |α| for each α in F_q
    double lambda = 1.0;
    double F = 0.0;         // partition value at lambda
    std::vector<double> r;  // normalized distribution, strictly decreasing in |α|
};

// Solves F(λ) = 1 for λ > 0 by bisection (tolerance 1e-12 on F). Infeasible
// whenever some weight is zero — then F(λ) > 1 for all λ (the zero-weight
// terms contribute 1 each) — and a domain_error is thrown. Kept as the
// strict normalization mode; the Gibbs mode below is the default family.
double solve_lambda_literal(const FieldSpec& f, const std::vector<double>& weights);

// Gibbs mode: user-supplied λ > 0, r_λ normalized by F(λ).
GibbsNoise gibbs_noise(const FieldSpec& f, std::vector<double> weights, double lambda);

// ---------------------------------------------------------------------------
// Rank-metric noise f_t on F_q^n, n = a·b, a >= b (enforced by swapping):
//   f_t(e) = [b-|e|_rk  t-|e|_rk]_q / √(q^{at} Z)   for |e|_rk <= t, else 0,
// with Z exact so that ‖f_t‖₂ = 1. We carry W = q^{at}·Z = Σ_u S_u·gb_u² as a
// big integer; every shell probability is then an exact integer ratio.

struct RankNoiseParams {
    const FieldSpec* field = nullptr;
    int a = 1, b = 1, t = 0;
    std::vector<BigInt> gb;      // gb[u] = [b-u  t-u]_q for u = 0..b
    std::vector<BigInt> sphere;  // S_u for u = 0..b
    BigInt W;                    // q^{at}·Z
    double Z = 0.0;

    int n() const { return a * b; }
};

RankNoiseParams rank_params(const FieldSpec& f, int a, int b, int t);

// Shell amplitudes f_t(e) for |e|_rk = u (zero above t).
std::vector<double> rank_shell_amplitudes(const RankNoiseParams& p);

// Per-string probabilities |f_t(e)|² by shell, exact integer ratios.
std::vector<double> rank_point_probs(const RankNoiseParams& p);

// Shell masses S_u·|f_t|²(u); sums to 1.
std::vector<double> rank_shell_masses(const RankNoiseParams& p);

// The radial amplitude function itself.
AmplitudeFn rank_noise(const RankNoiseParams& p);

// Independent oracle for f_t: the normalized superposition
// (1/√Z') Σ_{V ≤ F_q^b, dim V = t} |π_V⟩ with |π_V⟩ the a-fold tensor of the
// uniform superposition over V. Tiny sizes only (q^{ab} <= 2^16).
DenseState rank_noise_subspace_oracle(const RankNoiseParams& p);

// All t-dimensional subspaces of F_q^b, each as the list of its q^t member
// element-row indices (canonical order). Test helper for the oracle.
std::vector<std::vector<IRow>> enumerate_subspaces(const FieldSpec& f, int b, int t);

// ---------------------------------------------------------------------------
// NoiseModel: a parsed noise specification with everything the measurement
// and sampling machinery needs — the amplitude function f, exact access to
// the dual distribution p = |f̂|², and the weight the noise is radial in.

struct NoiseModel {
    enum class Kind { kBernoulli, kTable, kGibbs, kRank };

    Kind kind = Kind::kBernoulli;
    std::string label;    // e.g. "bernoulli(0.1)" for CSV
    double param = 0.0;   // headline scalar parameter
    const FieldSpec* field = nullptr;
    int n = 0;

    AmplitudeFn f;         // the noise amplitude, unit norm
    CVec g;                // per-symbol amplitude (product kinds)
    CVec ghat;             // per-symbol transform (product kinds)
    std::vector<double> dual_r;   // |ĝ(α)|² (product kinds)
    RankNoiseParams rank;         // rank kind
    RankNoiseParams rank_dual;    // parameters of f_{b-t}
    std::vector<double> rank_dual_probs;  // |f_{b-t}|² per shell
    std::vector<double> rank_dual_amps;   // f_{b-t} per shell
    std::vector<double> gibbs_weights;

    bool is_product() const { return kind != Kind::kRank; }

    // p(y) = |f̂(y)|², exact closed route (no dense transform).
    double dual_prob(const IRow& y) const;
    // f̂(y) with phases (product: ∏ ĝ(y_i); rank: real radial value).
    Cx dual_amp(const IRow& y) const;
    // The weight the dual distribution is monotone in: Hamming for the
    // symmetric channel and tables, Σ|y_i| for Gibbs, rank weight for rank.
    double weight(const IRow& y) const;
};

NoiseModel make_bernoulli_noise(const FieldSpec& f, int n, double crossover);
NoiseModel make_table_noise(const FieldSpec& f, int n, CVec g);
// Gibbs noise is specified through its dual: f̂ = (√r_λ)^⊗n.
NoiseModel make_gibbs_noise(const FieldSpec& f, int n, std::vector<double> weights,
                            double lambda);
NoiseModel make_rank_noise(const FieldSpec& f, int a, int b, int t);

// JSON: {"kind":"bernoulli","p":0.1} | {"kind":"table","re":[...],"im":[...]}
//     | {"kind":"gibbs","weights":[...],"lambda":1.0}
//     | {"kind":"rank","a":3,"b":3,"t":1}
// or a preset string: "preset:noiseless", "preset:uniform",
// "preset:bernoulli:0.1", "preset:gibbs:1.0", "preset:rank:3,3,1".
NoiseModel parse_noise(const FieldSpec& f, int n, const std::string& spec);

}  // namespace qdp
