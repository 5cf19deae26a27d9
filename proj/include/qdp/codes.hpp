#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "qdp/common.hpp"
#include "qdp/field.hpp"

namespace qdp {

// A linear code C = {m·G : m ∈ F_q^k} together with its dual machinery.
// G may be rank deficient; everywhere downstream the effective cardinality
// |C| = q^rank is what matters, never q^k.
//
// Two constraint matrices live here, both in reduced row echelon form:
//   basis — rank × n RREF basis of C. Its kernel is C⊥, so σ(y) = basis·yᵀ
//           indexes the q^rank cosets of C⊥ (the coset structure the
//           measurement machinery partitions mass over).
//   H     — (n−rank) × n RREF basis of C⊥, the parity check of C
//           (basis·Hᵀ = 0).
// Because basis is in RREF its pivot columns carry an identity block, which
// gives a fixed right inverse: the representative u_s of syndrome s is
// supported on the pivot columns with u_s[pivot_i] = σ_i, and u_0 = 0.
//
// Syndromes are indexed as mixed-radix integers, s_index = Σ σ_i q^{rank-1-i},
// matching the big-endian vector indexing.
struct LinearCode {
    const FieldSpec* field = nullptr;
    int n = 0;
    int k_nominal = 0;
    IMat G;       // as drawn, k_nominal × n
    int rank = 0;
    IMat basis;   // rank × n, RREF basis of C
    std::vector<int> g_pivots;
    IMat H;       // (n - rank) × n, RREF basis of the dual
    std::uint64_t seed = 0;

    index_t codewords() const { return ipow(field->q, rank); }
    index_t dual_size() const { return ipow(field->q, n - rank); }
    index_t num_syndromes() const { return codewords(); }

    std::vector<int> syndrome(const IRow& y) const;
    index_t syndrome_index(const IRow& y) const;
    bool in_dual(const IRow& y) const;
};

LinearCode code_from_generator(const FieldSpec& f, const IMat& G, std::uint64_t seed = 0);

// G with i.i.d. uniform entries from the seeded generator. `strict` redraws
// (bumping a derived attempt counter) until G has full rank min(k, n).
LinearCode random_code(const FieldSpec& f, int n, int k, std::uint64_t seed,
                       bool strict = false);

// The dual as a LinearCode: generated by H; dual(dual(C)) has the same
// codeword set as C.
LinearCode dual(const LinearCode& code);

// Deterministic representative u_s with syndrome_index(u_s) = s.
IRow coset_representative(const LinearCode& code, index_t s);

// All |C⊥| vectors of the coset u_s + C⊥, in lexicographic order of the
// dual-combination index.
std::vector<IRow> enumerate_coset(const LinearCode& code, index_t s);

// All codewords of C (lexicographic in the message index).
std::vector<IRow> enumerate_codewords(const LinearCode& code);

// Nonzero codeword minimizing `weight`, ties broken by lexicographic order of
// the entry sequence. Throws if C = {0}.
std::pair<IRow, double> min_weight_codeword(const LinearCode& code,
                                            const std::function<double(const IRow&)>& weight);

// JSON (de)serialization: {q, p, s, n, k, G row-major, seed}.
std::string code_to_json(const LinearCode& code);
LinearCode code_from_json(const std::string& text, const FieldSpec** out_field);

}  // namespace qdp
