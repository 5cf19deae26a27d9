#include "qdp/pgm.hpp"

#include <cmath>

#include "qdp/rng.hpp"
#include "qdp/spectral.hpp"

namespace qdp {

namespace {

// Walks all y in F_q^n in index order, maintaining the partial syndrome
// (basis·yᵀ prefix) and the partial dual probability along the digits.
// Product-form noises get exact per-leaf values in O(q + q² + ... + q^n).
template <typename Leaf>
void walk_product(const LinearCode& code, const std::vector<double>& dual_r, Leaf&& leaf) {
    const FieldSpec& f = *code.field;
    const int n = code.n;
    const int r = code.rank;
    std::vector<int> syn(static_cast<size_t>(r), 0);
    IRow y = IRow::Zero(n);
    std::function<void(int, double)> rec = [&](int pos, double p) {
        if (pos == n) {
            index_t idx = 0;
            for (int i = 0; i < r; ++i)
                idx = idx * f.q + static_cast<index_t>(syn[static_cast<size_t>(i)]);
            leaf(idx, p, y);
            return;
        }
        for (int v = 0; v < f.q; ++v) {
            y[pos] = v;
            std::vector<int> saved = syn;
            if (v != 0)
                for (int i = 0; i < r; ++i)
                    syn[static_cast<size_t>(i)] =
                        f.add(syn[static_cast<size_t>(i)], f.mul(v, code.basis(i, pos)));
            rec(pos + 1, p * dual_r[static_cast<size_t>(v)]);
            syn = saved;
        }
        y[pos] = 0;
    };
    rec(0, 1.0);
}

}  // namespace

std::vector<double> coset_masses(const LinearCode& code, const NoiseModel& noise) {
    require(noise.n == code.n && noise.field == code.field,
            "coset_masses: noise and code disagree on the ambient space");
    const index_t dim = ipow(code.field->q, static_cast<unsigned>(code.n));
    require(dim <= caps().product, "coset_masses: cap exceeded");
    std::vector<long double> acc(code.num_syndromes(), 0.0L);
    if (noise.is_product()) {
        walk_product(code, noise.dual_r, [&](index_t s, double p, const IRow&) {
            acc[static_cast<size_t>(s)] += static_cast<long double>(p);
        });
    } else {
        for (index_t i = 0; i < dim; ++i) {
            const IRow y = digits_of(i, code.field->q, code.n);
            acc[static_cast<size_t>(code.syndrome_index(y))] +=
                static_cast<long double>(noise.dual_prob(y));
        }
    }
    std::vector<double> Z(acc.size());
    for (size_t i = 0; i < acc.size(); ++i)
        Z[i] = std::sqrt(static_cast<double>(std::max(acc[i], 0.0L)));
    return Z;
}

std::vector<double> coset_masses_dense(const LinearCode& code, const CVec& fhat) {
    std::vector<long double> acc(code.num_syndromes(), 0.0L);
    const int q = code.field->q;
    for (index_t i = 0; i < static_cast<index_t>(fhat.size()); ++i) {
        const IRow y = digits_of(i, q, code.n);
        acc[static_cast<size_t>(code.syndrome_index(y))] +=
            static_cast<long double>(std::norm(fhat[static_cast<Eigen::Index>(i)]));
    }
    std::vector<double> Z(acc.size());
    for (size_t i = 0; i < acc.size(); ++i)
        Z[i] = std::sqrt(static_cast<double>(std::max(acc[i], 0.0L)));
    return Z;
}

PgmReport pgm_report_from_masses(const LinearCode& code, std::vector<double> Z) {
    PgmReport rep;
    long double zsum = 0.0L, mass = 0.0L;
    for (double z : Z) {
        zsum += static_cast<long double>(z);
        mass += static_cast<long double>(z) * z;
    }
    rep.Z = std::move(Z);
    rep.zsum = static_cast<double>(zsum);
    rep.mass = static_cast<double>(mass);
    const long double size = static_cast<long double>(code.codewords());
    rep.p_pgm = static_cast<double>(zsum * zsum / size);
    rep.p_c = rep.p_pgm;
    return rep;
}

PgmReport pgm_success(const LinearCode& code, const NoiseModel& noise) {
    return pgm_report_from_masses(code, coset_masses(code, noise));
}

DenseOracleResult pgm_dense_oracle(const LinearCode& code, const NoiseModel& noise) {
    const FieldSpec& f = *code.field;
    const index_t dim = ipow(f.q, static_cast<unsigned>(code.n));
    require(dim <= caps().dense, "pgm_dense_oracle: cap exceeded");

    const auto codewords = enumerate_codewords(code);
    const Eigen::Index d = static_cast<Eigen::Index>(dim);

    // |ψ̂_c⟩ through the dense transform of the shifted states.
    std::vector<CVec> states;
    states.reserve(codewords.size());
    for (const IRow& c : codewords)
        states.push_back(dft(shifted_state(c, noise.f)).amps);

    CMat rho = CMat::Zero(d, d);
    for (const CVec& st : states) rho.noalias() += st * st.adjoint();
    const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    if (herm > 1e-9) throw std::runtime_error("pgm_dense_oracle: rho not Hermitian");

    Eigen::SelfAdjointEigenSolver<CMat> es(rho);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("pgm_dense_oracle: eigendecomposition failed");
    CVec inv_sqrt = CVec::Zero(d);
    for (Eigen::Index i = 0; i < d; ++i) {
        const double lam = es.eigenvalues()[i];
        if (lam > 1e-12) inv_sqrt[i] = 1.0 / std::sqrt(lam);
    }

    DenseOracleResult res;
    res.per_codeword.reserve(states.size());
    double lo = 1.0, hi = 0.0, sum = 0.0;
    for (const CVec& st : states) {
        const CVec in_eig = es.eigenvectors().adjoint() * st;
        Cx amp = 0.0;
        for (Eigen::Index i = 0; i < d; ++i) amp += std::norm(in_eig[i]) * inv_sqrt[i];
        const double p = std::norm(amp);
        res.per_codeword.push_back(p);
        lo = std::min(lo, p);
        hi = std::max(hi, p);
        sum += p;
    }
    res.mean = sum / static_cast<double>(states.size());
    res.spread = hi - lo;
    return res;
}

// ---------------------------------------------------------------------------

namespace {

struct TypicalPoint {
    IRow diff;  // y - s
    double p;
    bool is_s;  // diff == 0
};

// y ∈ s + C⊥ ⟺ G(y-s)ᵀ = 0; collect the typical strings once.
std::vector<TypicalPoint> typical_points(const FieldSpec& f, int n,
                                         const TypicalSetSpec& T, const IRow& s) {
    const index_t dim = ipow(f.q, static_cast<unsigned>(n));
    require(dim <= caps().product, "ztilde: typical enumeration cap exceeded");
    std::vector<TypicalPoint> pts;
    for (index_t i = 0; i < dim; ++i) {
        const IRow y = digits_of(i, f.q, n);
        if (!T.member(y)) continue;
        IRow diff(n);
        bool zero = true;
        for (int j = 0; j < n; ++j) {
            diff[j] = f.sub(y[j], s[j]);
            zero = zero && diff[j] == 0;
        }
        pts.push_back({std::move(diff), T.p_eval(y), zero});
    }
    return pts;
}

double ztilde_sq_for(const FieldSpec& f, const IMat& G,
                     const std::vector<TypicalPoint>& pts) {
    const int k = static_cast<int>(G.rows());
    const int n = static_cast<int>(G.cols());
    long double acc = 0.0L;
    for (const TypicalPoint& pt : pts) {
        if (pt.is_s) {
            acc += static_cast<long double>(pt.p);
            continue;
        }
        bool in = true;
        for (int r = 0; r < k && in; ++r) {
            int dot = 0;
            for (int j = 0; j < n; ++j) dot = f.add(dot, f.mul(G(r, j), pt.diff[j]));
            in = dot == 0;
        }
        if (in) acc += static_cast<long double>(pt.p);
    }
    return static_cast<double>(acc);
}

}  // namespace

ZtildeMoments ztilde_moments(const FieldSpec& f, int n, int k, const NoiseModel& noise,
                             const TypicalSetSpec& T, const NiceFamilyConstants& fam,
                             const IRow& s, MonteCarlo mc) {
    (void)noise;
    const auto pts = typical_points(f, n, T, s);
    const double qk = std::pow(static_cast<double>(f.q), k);

    ZtildeMoments out;
    const bool s_typical = T.member(s);
    const double ps = s_typical ? T.p_eval(s) : 0.0;
    out.exact_mean = (s_typical ? ps : 0.0) + (1.0 - T.delta - ps) / qk;
    out.variance_bound =
        (f.q * fam.K2 * fam.K2 / fam.K1) *
        std::pow(static_cast<double>(f.q), -n * (fam.H - 2.0 * fam.beta - fam.alpha)) / qk;

    long double sum = 0.0L, sum_sq = 0.0L;
    if (mc.trials == 0) {
        require(f.q == 2, "ztilde_moments: exhaustive mode implemented for q = 2");
        const unsigned bits = static_cast<unsigned>(k) * static_cast<unsigned>(n);
        require(bits <= 24, "ztilde_moments: exhaustive ensemble too large");
        const index_t total = index_t{1} << bits;
        IMat G(k, n);
        for (index_t code_bits = 0; code_bits < total; ++code_bits) {
            index_t bitsleft = code_bits;
            for (int r = 0; r < k; ++r)
                for (int j = 0; j < n; ++j) {
                    G(r, j) = static_cast<int>(bitsleft & 1);
                    bitsleft >>= 1;
                }
            const double v = ztilde_sq_for(f, G, pts);
            sum += v;
            sum_sq += static_cast<long double>(v) * v;
        }
        out.ensemble = total;
    } else {
        IMat G(k, n);
        for (index_t t = 0; t < mc.trials; ++t) {
            SplitMix64 rng(derive_seed(mc.seed, t));
            for (int r = 0; r < k; ++r)
                for (int j = 0; j < n; ++j)
                    G(r, j) = static_cast<int>(rng.below(static_cast<std::uint64_t>(f.q)));
            const double v = ztilde_sq_for(f, G, pts);
            sum += v;
            sum_sq += static_cast<long double>(v) * v;
        }
        out.ensemble = mc.trials;
    }
    const long double m = sum / static_cast<long double>(out.ensemble);
    out.mean = static_cast<double>(m);
    out.variance =
        static_cast<double>(sum_sq / static_cast<long double>(out.ensemble) - m * m);
    return out;
}

double concentration_check(const FieldSpec& f, int n, int k, const NoiseModel& noise,
                           const TypicalSetSpec& T, const NiceFamilyConstants& fam,
                           const IRow& s, index_t trials, std::uint64_t seed) {
    (void)noise;
    const double R = static_cast<double>(k) / n;
    const double gamma = fam.H - R;
    require(gamma > 0.0, "concentration_check: rate must be below the family exponent");
    require(2.0 * fam.beta + fam.alpha <= gamma / 2.0 + 1e-12,
            "concentration_check: eps too large for the concentration regime");
    const double qk = std::pow(static_cast<double>(f.q), k);
    const double floor_val =
        (1.0 - T.delta - std::pow(static_cast<double>(f.q), -gamma * n / 8.0)) / qk;

    const auto pts = typical_points(f, n, T, s);
    index_t hits = 0;
    IMat G(k, n);
    for (index_t t = 0; t < trials; ++t) {
        SplitMix64 rng(derive_seed(seed, t));
        for (int r = 0; r < k; ++r)
            for (int j = 0; j < n; ++j)
                G(r, j) = static_cast<int>(rng.below(static_cast<std::uint64_t>(f.q)));
        if (ztilde_sq_for(f, G, pts) >= floor_val) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(trials);
}

double truncated_fidelity(const LinearCode& code, const NoiseModel& noise,
                          const TypicalSetSpec& T, const IRow& c) {
    const FieldSpec& f = *code.field;
    const index_t dim = ipow(f.q, static_cast<unsigned>(code.n));
    require(dim <= caps().product, "truncated_fidelity: cap exceeded");
    // ⟨ψ̂_c|ψ̃_c⟩ = Σ_{y∈T} |f̂(y)|² / √(1-δ); evaluated literally from the
    // amplitudes rather than through the identity.
    long double mass = 0.0L;
    for (index_t i = 0; i < dim; ++i) {
        const IRow y = digits_of(i, f.q, code.n);
        if (!T.member(y)) continue;
        const Cx amp = noise.dual_amp(y) * character_vec(f, c, y);
        mass += static_cast<long double>(std::norm(amp));
    }
    const double trunc = static_cast<double>(mass);
    require(T.delta < 1.0 && trunc > 0.0, "truncated_fidelity: empty typical mass");
    return trunc / std::sqrt(1.0 - T.delta);
}

double distinguishability_bound(double N, double K) {
    require(N >= 1.0 && K >= 0.0, "distinguishability_bound: bad arguments");
    return std::min(1.0, K / N);
}

double converse_bound(const LinearCode& code, const TypicalSetSpec& T) {
    const double card = static_cast<double>(T.cardinality);
    const double size = static_cast<double>(code.codewords());
    return card / size + std::sqrt(std::max(T.delta, 0.0));
}

double p_zero_branch_closed(const LinearCode& code, const NoiseModel& noise) {
    const std::vector<double> Z = coset_masses(code, noise);
    const double p0 = std::norm(noise.dual_amp(IRow::Zero(code.n)));
    double zsum_rest = 0.0;
    for (size_t s = 1; s < Z.size(); ++s) zsum_rest += Z[s];
    const double core = std::sqrt(std::max(Z[0] * Z[0] - p0, 0.0));
    const double amp = (zsum_rest + core) / std::sqrt(static_cast<double>(code.codewords()));
    return amp * amp;
}

}  // namespace qdp
