#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qdp/common.hpp"
#include "qdp/field.hpp"
#include "qdp/noise.hpp"

namespace qdp {

// One verification record; the JSON report row format shared by the invariant
// suites and the CLI verify command.
struct CheckRecord {
    std::string name;
    std::string instance;
    double lhs = 0.0;
    double rhs = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

// -Σ p log_q p with the 0·log 0 = 0 convention. `dist` must be a probability
// vector (sum within 1e-9).
double entropy_q(const std::vector<double>& dist, int q);

// H_q(|ĝ|²) for the pure-state channel α ↦ Σ_u g(u)|α+u⟩.
double holevo_capacity(const FieldSpec& f, const CVec& g);

// 1 - H_q(|g|²): the classical capacity of the additive channel |g|².
double shannon_capacity(const FieldSpec& f, const CVec& g);

// Entropic uncertainty for the character transform:
// sum = H_q(|g|²) + H_q(|ĝ|²), holds ⟺ sum >= 1 - 1e-12. The inequality is
// implemented as ">=": the boundary cases (delta and uniform g both give
// sum = 1) and the capacity comparison force this direction, and the report
// keeps the raw sum visible so the direction can be audited.
struct HirschmanResult {
    double sum = 0.0;
    bool holds = false;
};
HirschmanResult hirschman_check(const FieldSpec& f, const CVec& g);

// ---------------------------------------------------------------------------
// Typical sets T = {y : A <= p(y) <= B} with exact defect δ = 1 - p(T).

struct TypicalSetSpec {
    int n = 0;
    double eps = 0.0;
    double A = 0.0;  // lower bounding value
    double B = 0.0;  // upper bounding value
    double delta = 0.0;
    long double cardinality = 0.0L;
    double entropy = 0.0;  // H_q(p), exact
    double H = 0.0;        // per-symbol exponent of the family

    std::function<bool(const IRow&)> member;
    std::function<double(const IRow&)> p_eval;
};

// Product distribution p = r^⊗n with A = q^{-n(H+ε)}, B = q^{-n(H-ε)}.
// Membership thresholds Σ -log_q r(y_i); zero-probability symbols exclude a
// string outright. δ and |T| are exact: computed by direct enumeration when
// q^n is small (lock-step with the per-string evaluator), otherwise by
// enumerating symbol-count types with multinomial masses.
TypicalSetSpec typical_set_product(const FieldSpec& f, const std::vector<double>& r,
                                   int n, double eps);

// Typical set of the dual distribution p = |f̂_t|² = |f_{b-t}|²: membership is
// the rank window b(1-ε) - t <= |e|_rk <= b - t; δ by exact shell sums; the
// bounding values are the exact envelope p̃(u_hi), p̃(u_lo); H = (1+t/a)(1-t/b).
TypicalSetSpec typical_set_rank(const RankNoiseParams& noise_params, double eps);

// Largest t with R·a·b > a·t + t(b-t); 0 when no t >= 1 qualifies.
int rank_gv_distance(int a, int b, double R);

// Closed-form per-symbol entropy (1+t/a)(1-t/b) of the dual distribution vs
// the exact H_q(|f̂_t|²)/(ab) from shell sums.
struct RankEntropy {
    double closed = 0.0;
    double exact = 0.0;
};
RankEntropy rank_entropy_per_symbol(const RankNoiseParams& p);

// ---------------------------------------------------------------------------
// Nice-family verification: for members (n_i, T_i) and constants
// (H, α(ε), β(ε), K₁, K₂) checks, per member,
//   (2) A_i >= K₁ q^{-n_i(H+α)},
//   (3) B_i <= K₂ q^{-n_i(H-β)},
//   the entropy sandwich -(1-δ)log_q B_i <= H_q(p_i) <= -(1-δ)log_q A_i + δ n_i,
// and, as the finite-size proxy for the vanishing-defect condition (1), that
// the defects are non-increasing along the family and end below 1/2.

struct NiceFamilyConstants {
    double H = 0.0;
    double alpha = 0.0;  // α(ε)
    double beta = 0.0;   // β(ε)
    double K1 = 1.0;
    double K2 = 1.0;
};

struct NiceFamilyReport {
    std::vector<CheckRecord> checks;
    bool pass = false;
    int offending_index = -1;  // first failing member, -1 if none
};

NiceFamilyReport nice_family_check(const FieldSpec& f,
                                   const std::vector<TypicalSetSpec>& members,
                                   const NiceFamilyConstants& c);

NiceFamilyConstants product_family_constants(const FieldSpec& f,
                                             const std::vector<double>& r, double eps);
NiceFamilyConstants rank_family_constants(const RankNoiseParams& p, double eps);

}  // namespace qdp
