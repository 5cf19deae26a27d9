#include "qdp/noise.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

namespace qdp {

namespace {

double big_ratio(const BigInt& num, const BigInt& den) {
    return static_cast<double>(static_cast<long double>(num) /
                               static_cast<long double>(den));
}

std::string num_str(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

}  // namespace

CVec bernoulli_g(const FieldSpec& f, double crossover) {
    require(crossover >= 0.0 && crossover < 1.0, "bernoulli_g: p must be in [0,1)");
    CVec g(f.q);
    g[0] = std::sqrt(1.0 - crossover);
    const double off = std::sqrt(crossover / (f.q - 1));
    for (int a = 1; a < f.q; ++a) g[a] = off;
    return g;
}

BigInt gaussian_binomial(int b, int t, int q) {
    require(t >= 0, "gaussian_binomial: t must be >= 0");
    if (t > b) return 0;
    BigInt num = 1, den = 1;
    const BigInt Q = q;
    for (int i = 0; i < t; ++i) {
        num *= boost::multiprecision::pow(Q, static_cast<unsigned>(b)) -
               boost::multiprecision::pow(Q, static_cast<unsigned>(i));
        den *= boost::multiprecision::pow(Q, static_cast<unsigned>(t)) -
               boost::multiprecision::pow(Q, static_cast<unsigned>(i));
    }
    return num / den;
}

BigInt sphere_size_rank(int a, int b, int u, int q) {
    require(u >= 0, "sphere_size_rank: u must be >= 0");
    if (u > std::min(a, b)) return 0;
    const BigInt Q = q;
    BigInt surj = 1;
    for (int i = 0; i < u; ++i)
        surj *= boost::multiprecision::pow(Q, static_cast<unsigned>(a)) -
                boost::multiprecision::pow(Q, static_cast<unsigned>(i));
    return gaussian_binomial(b, u, q) * surj;
}

double solve_lambda_literal(const FieldSpec& f, const std::vector<double>& weights) {
    require(static_cast<int>(weights.size()) == f.q, "solve_lambda: need q weights");
    for (double w : weights) require(w >= 0.0, "solve_lambda: weights must be >= 0");
    const double lq = std::log(static_cast<double>(f.q));
    auto F = [&](double lam) {
        double s = 0.0;
        for (double w : weights) s += std::exp(-lam * w * lq);
        return s;
    };
    // F is continuous and decreasing with F(0) = q. A root of F(λ) = 1 exists
    // iff the limit Σ_{w=0} 1 = #zero-weight terms is below 1, i.e. iff every
    // weight is positive.
    int zero_terms = 0;
    for (double w : weights) zero_terms += (w == 0.0) ? 1 : 0;
    if (zero_terms >= 1)
        throw std::domain_error(
            "solve_lambda: F(lambda) = 1 is infeasible (zero-weight symbols keep F > 1)");
    double lo = 0.0, hi = 1.0;
    while (F(hi) > 1.0) {
        hi *= 2.0;
        require(hi < 1e9, "solve_lambda: no root found");
    }
    while (hi - lo > 1e-15 && std::abs(F(0.5 * (lo + hi)) - 1.0) > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        (F(mid) > 1.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

GibbsNoise gibbs_noise(const FieldSpec& f, std::vector<double> weights, double lambda) {
    require(static_cast<int>(weights.size()) == f.q, "gibbs_noise: need q weights");
    require(lambda > 0.0, "gibbs_noise: lambda must be > 0");
    GibbsNoise gn;
    gn.weights = std::move(weights);
    gn.lambda = lambda;
    const double lq = std::log(static_cast<double>(f.q));
    gn.r.resize(f.q);
    gn.F = 0.0;
    for (int a = 0; a < f.q; ++a) {
        gn.r[a] = std::exp(-lambda * gn.weights[a] * lq);
        gn.F += gn.r[a];
    }
    for (double& v : gn.r) v /= gn.F;
    return gn;
}

RankNoiseParams rank_params(const FieldSpec& f, int a, int b, int t) {
    if (a < b) std::swap(a, b);  // radial machinery assumes a >= b
    require(t >= 0 && t <= b, "rank_params: need 0 <= t <= b");
    RankNoiseParams p;
    p.field = &f;
    p.a = a;
    p.b = b;
    p.t = t;
    p.gb.resize(b + 1);
    p.sphere.resize(b + 1);
    for (int u = 0; u <= b; ++u) {
        p.gb[u] = (u <= t) ? gaussian_binomial(b - u, t - u, f.q) : BigInt(0);
        p.sphere[u] = sphere_size_rank(a, b, u, f.q);
    }
    p.W = 0;
    for (int u = 0; u <= t; ++u) p.W += p.sphere[u] * p.gb[u] * p.gb[u];
    p.Z = big_ratio(p.W, boost::multiprecision::pow(BigInt(f.q),
                                                    static_cast<unsigned>(a * t)));
    return p;
}

std::vector<double> rank_shell_amplitudes(const RankNoiseParams& p) {
    std::vector<double> amps(p.b + 1, 0.0);
    const long double w = static_cast<long double>(p.W);
    for (int u = 0; u <= p.t; ++u)
        amps[u] = static_cast<double>(static_cast<long double>(p.gb[u]) / sqrtl(w));
    return amps;
}

std::vector<double> rank_point_probs(const RankNoiseParams& p) {
    std::vector<double> probs(p.b + 1, 0.0);
    for (int u = 0; u <= p.t; ++u) probs[u] = big_ratio(p.gb[u] * p.gb[u], p.W);
    return probs;
}

std::vector<double> rank_shell_masses(const RankNoiseParams& p) {
    std::vector<double> mass(p.b + 1, 0.0);
    for (int u = 0; u <= p.t; ++u) mass[u] = big_ratio(p.sphere[u] * p.gb[u] * p.gb[u], p.W);
    return mass;
}

AmplitudeFn rank_noise(const RankNoiseParams& p) {
    return AmplitudeFn::radial_rank(*p.field, RankShape{p.a, p.b, p.t},
                                    rank_shell_amplitudes(p));
}

std::vector<std::vector<IRow>> enumerate_subspaces(const FieldSpec& f, int b, int t) {
    const index_t qb = ipow(f.q, static_cast<unsigned>(b));
    require(qb <= (index_t{1} << 16), "enumerate_subspaces: q^b too large");
    // Canonicalize a spanning set by the sorted list of all q^t span elements.
    std::vector<std::vector<index_t>> seen;
    std::vector<std::vector<IRow>> out;
    auto span_of = [&](const std::vector<index_t>& gens) {
        std::vector<index_t> span{0};
        for (index_t g : gens) {
            std::vector<index_t> next;
            for (index_t v : span)
                for (int c = 0; c < f.q; ++c) {
                    IRow gv = digits_of(g, f.q, b);
                    IRow vv = digits_of(v, f.q, b);
                    IRow sum(b);
                    for (int i = 0; i < b; ++i)
                        sum[i] = f.add(vv[i], f.mul(c, gv[i]));
                    next.push_back(index_of(sum, f.q));
                }
            std::sort(next.begin(), next.end());
            next.erase(std::unique(next.begin(), next.end()), next.end());
            span = std::move(next);
        }
        return span;
    };
    // All t-tuples of elements; keep those spanning a t-dimensional space,
    // dedupe by the span itself.
    std::vector<index_t> gens(t);
    const index_t total = ipow(qb, static_cast<unsigned>(t));
    for (index_t it = 0; it < total; ++it) {
        index_t rest = it;
        for (int i = 0; i < t; ++i) {
            gens[i] = rest % qb;
            rest /= qb;
        }
        auto span = span_of(gens);
        if (span.size() != ipow(f.q, static_cast<unsigned>(t))) continue;
        if (std::find(seen.begin(), seen.end(), span) != seen.end()) continue;
        seen.push_back(span);
        std::vector<IRow> members;
        members.reserve(span.size());
        for (index_t v : span) members.push_back(digits_of(v, f.q, b));
        out.push_back(std::move(members));
    }
    return out;
}

DenseState rank_noise_subspace_oracle(const RankNoiseParams& p) {
    const FieldSpec& f = *p.field;
    const index_t d = ipow(f.q, static_cast<unsigned>(p.n()));
    require(d <= (index_t{1} << 16), "rank_noise_subspace_oracle: cap exceeded");
    CVec amps = CVec::Zero(static_cast<Eigen::Index>(d));
    const double per = std::pow(static_cast<double>(f.q), -0.5 * p.a * p.t);
    for (const auto& members : enumerate_subspaces(f, p.b, p.t)) {
        // |π_V⟩ assigns q^{-at/2} to every vector whose a rows all lie in V.
        std::vector<index_t> row_idx;
        row_idx.reserve(members.size());
        for (const IRow& m : members) row_idx.push_back(index_of(m, f.q));
        const index_t rows = row_idx.size();
        const index_t combos = ipow(rows, static_cast<unsigned>(p.a));
        const index_t qb = ipow(f.q, static_cast<unsigned>(p.b));
        for (index_t c = 0; c < combos; ++c) {
            index_t rest = c, idx = 0;
            for (int i = 0; i < p.a; ++i) {
                idx = idx * qb + row_idx[rest % rows];
                rest /= rows;
            }
            amps[static_cast<Eigen::Index>(idx)] += per;
        }
    }
    amps /= l2_norm(amps);
    return DenseState{&f, p.n(), std::move(amps)};
}

// ---------------------------------------------------------------------------

double NoiseModel::dual_prob(const IRow& y) const {
    if (kind == Kind::kRank) {
        const int u = rank_weight(*field, y, rank.a, rank.b);
        return rank_dual_probs[static_cast<size_t>(u)];
    }
    double v = 1.0;
    for (int i = 0; i < y.size(); ++i) v *= dual_r[static_cast<size_t>(y[i])];
    return v;
}

Cx NoiseModel::dual_amp(const IRow& y) const {
    if (kind == Kind::kRank) {
        const int u = rank_weight(*field, y, rank.a, rank.b);
        return rank_dual_amps[static_cast<size_t>(u)];
    }
    Cx v = 1.0;
    for (int i = 0; i < y.size(); ++i) v *= ghat[y[i]];
    return v;
}

double NoiseModel::weight(const IRow& y) const {
    switch (kind) {
        case Kind::kRank:
            return rank_weight(*field, y, rank.a, rank.b);
        case Kind::kGibbs: {
            double w = 0.0;
            for (int i = 0; i < y.size(); ++i) w += gibbs_weights[static_cast<size_t>(y[i])];
            return w;
        }
        default: {
            int w = 0;
            for (int i = 0; i < y.size(); ++i) w += (y[i] != 0) ? 1 : 0;
            return w;
        }
    }
}

namespace {

NoiseModel product_noise(const FieldSpec& f, int n, CVec g, NoiseModel::Kind kind,
                         std::string label, double param) {
    NoiseModel m;
    m.kind = kind;
    m.label = std::move(label);
    m.param = param;
    m.field = &f;
    m.n = n;
    m.g = g;
    m.ghat = dft_symbol(f, g);
    m.dual_r.resize(f.q);
    for (int a = 0; a < f.q; ++a) m.dual_r[a] = std::norm(m.ghat[a]);
    m.f = AmplitudeFn::product(f, n, std::move(g));
    return m;
}

}  // namespace

NoiseModel make_bernoulli_noise(const FieldSpec& f, int n, double crossover) {
    return product_noise(f, n, bernoulli_g(f, crossover), NoiseModel::Kind::kBernoulli,
                         "bernoulli(" + num_str(crossover) + ")", crossover);
}

NoiseModel make_table_noise(const FieldSpec& f, int n, CVec g) {
    return product_noise(f, n, std::move(g), NoiseModel::Kind::kTable, "table", 0.0);
}

NoiseModel make_gibbs_noise(const FieldSpec& f, int n, std::vector<double> weights,
                            double lambda) {
    const GibbsNoise gn = gibbs_noise(f, weights, lambda);
    // The dual is the primary object: f̂ = (√r_λ)^⊗n, so g = idft(√r_λ).
    CVec ghat(f.q);
    for (int a = 0; a < f.q; ++a) ghat[a] = std::sqrt(gn.r[a]);
    NoiseModel m = product_noise(f, n, idft_symbol(f, ghat), NoiseModel::Kind::kGibbs,
                                 "gibbs(" + num_str(lambda) + ")", lambda);
    // Overwrite the transform with the exact closed form (the analytic route,
    // not the numeric round trip).
    m.ghat = ghat;
    for (int a = 0; a < f.q; ++a) m.dual_r[a] = gn.r[a];
    m.gibbs_weights = gn.weights;
    return m;
}

NoiseModel make_rank_noise(const FieldSpec& f, int a, int b, int t) {
    NoiseModel m;
    m.kind = NoiseModel::Kind::kRank;
    m.field = &f;
    m.rank = rank_params(f, a, b, t);
    m.rank_dual = rank_params(f, m.rank.a, m.rank.b, m.rank.b - m.rank.t);
    m.rank_dual_probs = rank_point_probs(m.rank_dual);
    m.rank_dual_amps = rank_shell_amplitudes(m.rank_dual);
    m.n = m.rank.n();
    m.param = t;
    m.label = "rank(" + std::to_string(m.rank.a) + "," + std::to_string(m.rank.b) + "," +
              std::to_string(m.rank.t) + ")";
    m.f = rank_noise(m.rank);
    return m;
}

NoiseModel parse_noise(const FieldSpec& f, int n, const std::string& spec) {
    if (spec.rfind("preset:", 0) == 0) {
        std::string rest = spec.substr(7);
        if (rest == "noiseless") return make_bernoulli_noise(f, n, 0.0);
        if (rest == "uniform") {
            CVec g = CVec::Constant(f.q, 1.0 / std::sqrt(static_cast<double>(f.q)));
            NoiseModel m = make_table_noise(f, n, std::move(g));
            m.label = "uniform";
            return m;
        }
        if (rest.rfind("bernoulli:", 0) == 0)
            return make_bernoulli_noise(f, n, std::stod(rest.substr(10)));
        if (rest.rfind("gibbs:", 0) == 0) {
            std::vector<double> w(f.q, 1.0);
            w[0] = 0.0;  // Hamming weight per symbol
            return make_gibbs_noise(f, n, std::move(w), std::stod(rest.substr(6)));
        }
        if (rest.rfind("rank:", 0) == 0) {
            int a = 0, b = 0, t = 0;
            if (std::sscanf(rest.c_str() + 5, "%d,%d,%d", &a, &b, &t) != 3)
                throw std::invalid_argument("parse_noise: bad rank preset");
            return make_rank_noise(f, a, b, t);
        }
        throw std::invalid_argument("parse_noise: unknown preset '" + spec + "'");
    }
    const auto j = nlohmann::json::parse(spec);
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "bernoulli") return make_bernoulli_noise(f, n, j.at("p").get<double>());
    if (kind == "table") {
        const auto re = j.at("re").get<std::vector<double>>();
        std::vector<double> im(re.size(), 0.0);
        if (j.contains("im")) im = j.at("im").get<std::vector<double>>();
        require(static_cast<int>(re.size()) == f.q && im.size() == re.size(),
                "parse_noise: table needs q entries");
        CVec g(f.q);
        for (int a = 0; a < f.q; ++a) g[a] = Cx(re[a], im[a]);
        return make_table_noise(f, n, std::move(g));
    }
    if (kind == "gibbs")
        return make_gibbs_noise(f, n, j.at("weights").get<std::vector<double>>(),
                                j.at("lambda").get<double>());
    if (kind == "rank")
        return make_rank_noise(f, j.at("a").get<int>(), j.at("b").get<int>(),
                               j.at("t").get<int>());
    throw std::invalid_argument("parse_noise: unknown kind '" + kind + "'");
}

}  // namespace qdp
