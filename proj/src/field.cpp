#include "qdp/field.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <numbers>
#include <utility>

namespace qdp {

namespace {

constexpr int kTableMaxQ = 512;

bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// Polynomial arithmetic over F_p, little-endian coefficient vectors.
std::vector<int> poly_mul_mod(const std::vector<int>& a, const std::vector<int>& b,
                              const std::vector<int>& mod, int p) {
    const int s = static_cast<int>(mod.size()) - 1;
    std::vector<int> prod(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    // Reduce: modulus is monic.
    for (int d = static_cast<int>(prod.size()) - 1; d >= s; --d) {
        const int c = prod[d];
        if (c == 0) continue;
        for (int i = 0; i <= s; ++i) {
            const int k = d - s + i;
            prod[k] = ((prod[k] - c * mod[i]) % p + p) % p;
        }
    }
    prod.resize(s, 0);
    return prod;
}

int poly_to_index(const std::vector<int>& c, int p) {
    int idx = 0, pw = 1;
    for (int v : c) {
        idx += v * pw;
        pw *= p;
    }
    return idx;
}

std::vector<int> index_to_poly(int idx, int p, int s) {
    std::vector<int> c(s, 0);
    for (int i = 0; i < s; ++i) {
        c[i] = idx % p;
        idx /= p;
    }
    return c;
}

// Irreducibility over F_p by trial division against all monic polynomials of
// degree <= s/2. Degrees here are tiny, brute force is instant.
bool poly_irreducible(const std::vector<int>& mod, int p) {
    const int s = static_cast<int>(mod.size()) - 1;
    for (int d = 1; 2 * d <= s; ++d) {
        int count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (int lo = 0; lo < count; ++lo) {
            std::vector<int> div = index_to_poly(lo, p, d + 1);
            div[d] = 1;
            // Long division remainder of mod by div.
            std::vector<int> rem = mod;
            for (int k = static_cast<int>(rem.size()) - 1; k >= d; --k) {
                const int c = rem[k];
                if (c == 0) continue;
                for (int i = 0; i <= d; ++i)
                    rem[k - d + i] = ((rem[k - d + i] - c * div[i]) % p + p) % p;
            }
            bool zero = true;
            for (int i = 0; i < d; ++i) zero = zero && rem[i] == 0;
            if (zero) return false;  // divisible -> reducible
        }
    }
    return true;
}

struct ConwayEntry {
    int p, s;
    std::vector<int> coeffs;  // little-endian, monic
};

// Conway polynomials for the small prime powers we care about.
const ConwayEntry kConway[] = {
    {2, 2, {1, 1, 1}},       {2, 3, {1, 1, 0, 1}},    {2, 4, {1, 1, 0, 0, 1}},
    {3, 2, {2, 2, 1}},       {3, 3, {1, 2, 0, 1}},    {3, 4, {2, 0, 0, 2, 1}},
    {5, 2, {2, 4, 1}},       {5, 3, {3, 3, 0, 1}},    {5, 4, {2, 4, 4, 0, 1}},
    {7, 2, {3, 6, 1}},       {7, 3, {4, 0, 6, 1}},    {7, 4, {3, 4, 5, 0, 1}},
};

std::vector<int> pick_modulus(int p, int s) {
    for (const auto& e : kConway)
        if (e.p == p && e.s == s) return e.coeffs;
    // Fallback: lexicographically smallest monic irreducible of degree s.
    int count = 1;
    for (int i = 0; i < s; ++i) count *= p;
    for (int lo = 0; lo < count; ++lo) {
        std::vector<int> cand = index_to_poly(lo, p, s + 1);
        cand[s] = 1;
        if (poly_irreducible(cand, p)) return cand;
    }
    throw std::logic_error("no irreducible modulus found");
}

}  // namespace

int FieldSpec::mul_slow(int a, int b) const {
    if (s == 1) return static_cast<int>((static_cast<long long>(a) * b) % p);
    return poly_to_index(
        poly_mul_mod(index_to_poly(a, p, s), index_to_poly(b, p, s), modulus, p), p);
}

FieldSpec make_field(int p, int s) {
    require(is_prime(p), "p must be prime");
    require(s >= 1, "s must be >= 1");
    double qd = std::pow(static_cast<double>(p), s);
    require(qd <= 65536.0, "q = p^s exceeds the 2^16 cap");

    FieldSpec f;
    f.p = p;
    f.s = s;
    f.q = 1;
    for (int i = 0; i < s; ++i) f.q *= p;

    if (s >= 2) {
        f.modulus = pick_modulus(p, s);
        if (!poly_irreducible(f.modulus, p))
            throw std::logic_error("modulus table entry is reducible");
    }

    f.omega_pow.resize(p);
    for (int j = 0; j < p; ++j) {
        const double ang = 2.0 * std::numbers::pi * j / p;
        f.omega_pow[j] = Cx(std::cos(ang), std::sin(ang));
    }

    if (f.q <= kTableMaxQ) {
        f.mul_tab.resize(static_cast<size_t>(f.q) * f.q);
        for (int a = 0; a < f.q; ++a)
            for (int b = 0; b < f.q; ++b)
                f.mul_tab[static_cast<size_t>(a) * f.q + b] = f.mul_slow(a, b);
    }

    // tr(a) = Σ a^{p^i}; frobenius by repeated powering. The result lies in
    // the prime subfield, i.e. is a constant polynomial with index < p.
    f.trace_tab.resize(f.q);
    for (int a = 0; a < f.q; ++a) {
        int acc = 0, frob = a;
        for (int i = 0; i < s; ++i) {
            acc = f.add(acc, frob);
            int pw = frob;
            for (int j = 1; j < p; ++j) pw = f.mul(pw, frob);
            frob = pw;  // frob^p
        }
        if (acc >= p) throw std::logic_error("trace left the prime subfield");
        f.trace_tab[a] = acc;
    }

    f.inv_tab.assign(f.q, 0);
    for (int a = 1; a < f.q; ++a) {
        if (f.inv_tab[a] != 0) continue;
        for (int b = 1; b < f.q; ++b)
            if (f.mul(a, b) == 1) {
                f.inv_tab[a] = b;
                f.inv_tab[b] = a;
                break;
            }
        if (f.inv_tab[a] == 0) throw std::logic_error("non-invertible nonzero element");
    }

    if (f.q <= kTableMaxQ) {
        f.char_tab.resize(static_cast<size_t>(f.q) * f.q);
        for (int y = 0; y < f.q; ++y)
            for (int x = 0; x < f.q; ++x)
                f.char_tab[static_cast<size_t>(y) * f.q + x] =
                    f.omega_pow[f.trace_tab[f.mul(x, y)]];
    }
    return f;
}

const FieldSpec& get_field(int p, int s) {
    static std::map<std::pair<int, int>, FieldSpec> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({p, s});
    if (it == cache.end()) it = cache.emplace(std::make_pair(p, s), make_field(p, s)).first;
    return it->second;
}

Cx character_vec(const FieldSpec& f, const IRow& y, const IRow& x) {
    require(x.size() == y.size(), "character_vec: length mismatch");
    int t = 0;
    for (int i = 0; i < x.size(); ++i) t = (t + f.trace_tab[f.mul(x[i], y[i])]) % f.p;
    return f.omega_pow[t];
}

IMat matv(const IRow& x, int a, int b) {
    require(x.size() == static_cast<Eigen::Index>(a) * b, "matv: dimension mismatch");
    IMat m(a, b);
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) m(i, j) = x[i * b + j];
    return m;
}

int matrix_rank(const FieldSpec& f, IMat m) {
    const int rows = static_cast<int>(m.rows());
    const int cols = static_cast<int>(m.cols());
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int pivot = -1;
        for (int r = rank; r < rows; ++r)
            if (m(r, col) != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        m.row(rank).swap(m.row(pivot));
        const int pinv = f.inv(m(rank, col));
        for (int j = col; j < cols; ++j) m(rank, j) = f.mul(m(rank, j), pinv);
        for (int r = 0; r < rows; ++r) {
            if (r == rank || m(r, col) == 0) continue;
            const int c = m(r, col);
            for (int j = col; j < cols; ++j)
                m(r, j) = f.sub(m(r, j), f.mul(c, m(rank, j)));
        }
        ++rank;
    }
    return rank;
}

int rank_weight(const FieldSpec& f, const IRow& x, int a, int b) {
    return matrix_rank(f, matv(x, a, b));
}

IRow digits_of(index_t idx, int q, int n) {
    IRow x(n);
    for (int i = n - 1; i >= 0; --i) {
        x[i] = static_cast<int>(idx % q);
        idx /= q;
    }
    return x;
}

index_t index_of(const IRow& x, int q) {
    index_t idx = 0;
    for (int i = 0; i < x.size(); ++i) idx = idx * q + static_cast<index_t>(x[i]);
    return idx;
}

}  // namespace qdp
