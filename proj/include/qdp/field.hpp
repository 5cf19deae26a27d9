#pragma once

#include <vector>

#include "qdp/common.hpp"

namespace qdp {

// The finite field F_q, q = p^s, in a fixed polynomial basis modulo an
// irreducible monic polynomial of degree s. Elements are encoded as integers
// 0..q-1, little-endian in the basis: the element with coefficient vector
// (c_0, ..., c_{s-1}) has index Σ c_i p^i. For s = 1 this is plain arithmetic
// mod p.
//
// The additive characters are χ_y(x) = exp(2πi·tr(x·y)/p) with the trace
// tr(a) = a + a^p + ... + a^{p^{s-1}} mapping into the prime subfield.
// Everything is precomputed at construction; a FieldSpec is immutable after
// that and safe to share across threads.
struct FieldSpec {
    int p = 2;
    int s = 1;
    int q = 2;
    std::vector<int> modulus;     // monic, little-endian, size s+1 (s >= 2 only)
    std::vector<int> trace_tab;   // q entries in {0..p-1}
    std::vector<Cx> omega_pow;    // p powers of exp(2πi/p)
    std::vector<int> mul_tab;     // q*q flattened, present iff q <= 512
    std::vector<int> inv_tab;     // q entries, inv_tab[0] = 0 placeholder
    std::vector<Cx> char_tab;     // q*q flattened, present iff q <= 512

    int add(int a, int b) const {
        if (p == 2) return a ^ b;
        if (s == 1) return (a + b) % p;
        int r = 0, pw = 1;
        for (int i = 0; i < s; ++i, pw *= p) r += ((a / pw + b / pw) % p) * pw;
        return r;
    }

    int neg(int a) const {
        if (p == 2) return a;
        if (s == 1) return (p - a) % p;
        int r = 0, pw = 1;
        for (int i = 0; i < s; ++i, pw *= p) r += ((p - (a / pw) % p) % p) * pw;
        return r;
    }

    int sub(int a, int b) const { return add(a, neg(b)); }

    int mul(int a, int b) const {
        if (!mul_tab.empty()) return mul_tab[static_cast<size_t>(a) * q + b];
        return mul_slow(a, b);
    }

    int inv(int a) const {
        require(a != 0, "inverse of zero");
        return inv_tab[a];
    }

    int trace(int a) const { return trace_tab[a]; }

    // χ_y(x); |result| = 1 always.
    Cx character(int y, int x) const {
        if (!char_tab.empty()) return char_tab[static_cast<size_t>(y) * q + x];
        return omega_pow[trace_tab[mul(x, y)]];
    }

    int mul_slow(int a, int b) const;
};

// Builds F_{p^s}. Moduli come from a fixed Conway-polynomial table for small
// (p, s); other prime powers fall back to the lexicographically smallest monic
// irreducible, so the representation is deterministic either way. Verifies
// primality of p and irreducibility of the modulus.
FieldSpec make_field(int p, int s);

// Memoized fields with stable addresses, for deserialization and the CLI.
const FieldSpec& get_field(int p, int s);

// χ_y(x) for vectors: the product of per-coordinate characters,
// equal to exp(2πi·tr(x·y)/p).
Cx character_vec(const FieldSpec& f, const IRow& y, const IRow& x);

// Row-major reshaping of a length a·b vector into an a×b matrix:
// entry (i, j) = x[i·b + j].
IMat matv(const IRow& x, int a, int b);

// Rank of matv(x) by Gaussian elimination over F_q. In [0, min(a,b)].
int rank_weight(const FieldSpec& f, const IRow& x, int a, int b);

int matrix_rank(const FieldSpec& f, IMat m);

// Index <-> digit conversions for vectors in F_q^n. Indices are big-endian:
// index(x) = Σ x_i · q^{n-1-i}, so that tensor products of per-symbol data
// line up with the Kronecker convention.
IRow digits_of(index_t idx, int q, int n);
index_t index_of(const IRow& x, int q);

}  // namespace qdp
