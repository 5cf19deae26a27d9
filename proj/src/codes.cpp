#include "qdp/codes.hpp"

#include <algorithm>

#include "qdp/rng.hpp"

#include <nlohmann/json.hpp>

namespace qdp {

namespace {

// RREF over F_q; returns (reduced matrix with zero rows dropped, pivot cols).
std::pair<IMat, std::vector<int>> rref(const FieldSpec& f, IMat m) {
    const int rows = static_cast<int>(m.rows());
    const int cols = static_cast<int>(m.cols());
    std::vector<int> pivots;
    int r = 0;
    for (int col = 0; col < cols && r < rows; ++col) {
        int pivot = -1;
        for (int i = r; i < rows; ++i)
            if (m(i, col) != 0) {
                pivot = i;
                break;
            }
        if (pivot < 0) continue;
        m.row(r).swap(m.row(pivot));
        const int pinv = f.inv(m(r, col));
        for (int j = 0; j < cols; ++j) m(r, j) = f.mul(m(r, j), pinv);
        for (int i = 0; i < rows; ++i) {
            if (i == r || m(i, col) == 0) continue;
            const int c = m(i, col);
            for (int j = 0; j < cols; ++j) m(i, j) = f.sub(m(i, j), f.mul(c, m(r, j)));
        }
        pivots.push_back(col);
        ++r;
    }
    IMat out(r, cols);
    for (int i = 0; i < r; ++i) out.row(i) = m.row(i);
    return {out, pivots};
}

// Nullspace basis of `m` (treated as rows of constraints), returned in RREF.
IMat nullspace(const FieldSpec& f, const IMat& m) {
    const int n = static_cast<int>(m.cols());
    auto [red, pivots] = rref(f, m);
    const int r = static_cast<int>(red.rows());
    std::vector<bool> is_pivot(n, false);
    for (int c : pivots) is_pivot[c] = true;
    IMat basis(n - r, n);
    basis.setZero();
    int row = 0;
    for (int free = 0; free < n; ++free) {
        if (is_pivot[free]) continue;
        basis(row, free) = 1;
        for (int i = 0; i < r; ++i) basis(row, pivots[i]) = f.neg(red(i, free));
        ++row;
    }
    return rref(f, basis).first;
}

}  // namespace

std::vector<int> LinearCode::syndrome(const IRow& y) const {
    std::vector<int> s(rank, 0);
    for (int i = 0; i < rank; ++i) {
        int acc = 0;
        for (int j = 0; j < n; ++j) acc = field->add(acc, field->mul(basis(i, j), y[j]));
        s[i] = acc;
    }
    return s;
}

index_t LinearCode::syndrome_index(const IRow& y) const {
    index_t idx = 0;
    for (int v : syndrome(y)) idx = idx * field->q + static_cast<index_t>(v);
    return idx;
}

bool LinearCode::in_dual(const IRow& y) const {
    for (int i = 0; i < rank; ++i) {
        int acc = 0;
        for (int j = 0; j < n; ++j) acc = field->add(acc, field->mul(basis(i, j), y[j]));
        if (acc != 0) return false;
    }
    return true;
}

LinearCode code_from_generator(const FieldSpec& f, const IMat& G, std::uint64_t seed) {
    LinearCode c;
    c.field = &f;
    c.n = static_cast<int>(G.cols());
    c.k_nominal = static_cast<int>(G.rows());
    c.G = G;
    c.seed = seed;
    auto [basis, pivots] = rref(f, G);
    c.rank = static_cast<int>(basis.rows());
    c.basis = basis;
    c.g_pivots = pivots;
    c.H = nullspace(f, c.rank > 0 ? c.basis : IMat::Zero(1, c.n));
    return c;
}

LinearCode random_code(const FieldSpec& f, int n, int k, std::uint64_t seed, bool strict) {
    require(k >= 1 && n >= 1, "random_code: need n, k >= 1");
    double bits = n * std::log2(static_cast<double>(f.q));
    require(bits <= 24.0 + 1e-9 || ipow(f.q, static_cast<unsigned>(n)) <= caps().product,
            "random_code: q^n exceeds the desk-scale cap");
    for (std::uint64_t attempt = 0;; ++attempt) {
        SplitMix64 rng(derive_seed(seed, attempt));
        IMat G(k, n);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < n; ++j)
                G(i, j) = static_cast<int>(rng.below(static_cast<std::uint64_t>(f.q)));
        LinearCode c = code_from_generator(f, G, seed);
        if (!strict || c.rank == std::min(k, n)) return c;
    }
}

LinearCode dual(const LinearCode& code) {
    return code_from_generator(*code.field, code.H, code.seed);
}

IRow coset_representative(const LinearCode& code, index_t s) {
    require(s < code.num_syndromes(), "coset_representative: syndrome out of range");
    IRow u = IRow::Zero(code.n);
    // Decode mixed-radix digits; basis is in RREF so its pivot columns carry
    // an identity block and placing the digits there realizes the syndrome.
    std::vector<int> digits(code.rank, 0);
    for (int i = code.rank - 1; i >= 0; --i) {
        digits[i] = static_cast<int>(s % code.field->q);
        s /= code.field->q;
    }
    for (int i = 0; i < code.rank; ++i) u[code.g_pivots[i]] = digits[i];
    return u;
}

std::vector<IRow> enumerate_coset(const LinearCode& code, index_t s) {
    require(code.dual_size() <= caps().product, "enumerate_coset: cap exceeded");
    const FieldSpec& f = *code.field;
    const IRow u = coset_representative(code, s);
    const int m = code.n - code.rank;
    std::vector<IRow> out;
    out.reserve(code.dual_size());
    for (index_t lam = 0; lam < code.dual_size(); ++lam) {
        IRow coeff = digits_of(lam, f.q, m);
        IRow v = u;
        for (int i = 0; i < m; ++i) {
            if (coeff[i] == 0) continue;
            for (int j = 0; j < code.n; ++j)
                v[j] = f.add(v[j], f.mul(coeff[i], code.H(i, j)));
        }
        out.push_back(std::move(v));
    }
    return out;
}

std::vector<IRow> enumerate_codewords(const LinearCode& code) {
    require(code.codewords() <= caps().product, "enumerate_codewords: cap exceeded");
    const FieldSpec& f = *code.field;
    std::vector<IRow> out;
    out.reserve(code.codewords());
    for (index_t msg = 0; msg < code.codewords(); ++msg) {
        IRow coeff = digits_of(msg, f.q, code.rank);
        IRow v = IRow::Zero(code.n);
        for (int i = 0; i < code.rank; ++i) {
            if (coeff[i] == 0) continue;
            for (int j = 0; j < code.n; ++j)
                v[j] = f.add(v[j], f.mul(coeff[i], code.basis(i, j)));
        }
        out.push_back(std::move(v));
    }
    return out;
}

std::pair<IRow, double> min_weight_codeword(
    const LinearCode& code, const std::function<double(const IRow&)>& weight) {
    require(code.rank > 0, "min_weight_codeword: code is {0}");
    std::optional<IRow> best;
    double best_w = 0;
    for (const IRow& c : enumerate_codewords(code)) {
        if (!(c.array() != 0).any()) continue;
        const double w = weight(c);
        if (!best || w < best_w ||
            (w == best_w && std::lexicographical_compare(c.begin(), c.end(), best->begin(),
                                                         best->end()))) {
            best = c;
            best_w = w;
        }
    }
    return {*best, best_w};
}

std::string code_to_json(const LinearCode& code) {
    nlohmann::json j;
    j["q"] = code.field->q;
    j["p"] = code.field->p;
    j["s"] = code.field->s;
    j["n"] = code.n;
    j["k"] = code.k_nominal;
    std::vector<int> g;
    for (int i = 0; i < code.k_nominal; ++i)
        for (int jj = 0; jj < code.n; ++jj) g.push_back(code.G(i, jj));
    j["G"] = g;
    j["seed"] = code.seed;
    return j.dump();
}

LinearCode code_from_json(const std::string& text, const FieldSpec** out_field) {
    const auto j = nlohmann::json::parse(text);
    const FieldSpec& f = get_field(j.at("p").get<int>(), j.at("s").get<int>());
    require(f.q == j.at("q").get<int>(), "code_from_json: inconsistent q");
    const int n = j.at("n").get<int>();
    const int k = j.at("k").get<int>();
    const auto g = j.at("G").get<std::vector<int>>();
    require(static_cast<int>(g.size()) == n * k, "code_from_json: bad G size");
    IMat G(k, n);
    for (int i = 0; i < k; ++i)
        for (int jj = 0; jj < n; ++jj) G(i, jj) = g[static_cast<size_t>(i) * n + jj];
    if (out_field != nullptr) *out_field = &f;
    return code_from_generator(f, G, j.value("seed", std::uint64_t{0}));
}

}  // namespace qdp
