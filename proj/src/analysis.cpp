#include "qdp/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qdp/spectral.hpp"

namespace qdp {

namespace {

double log_q(double x, int q) { return std::log(x) / std::log(static_cast<double>(q)); }

}  // namespace

double entropy_q(const std::vector<double>& dist, int q) {
    double sum = 0.0;
    for (double p : dist) {
        require(p >= -1e-12, "entropy_q: negative probability");
        sum += p;
    }
    require(std::abs(sum - 1.0) <= 1e-9, "entropy_q: does not sum to 1");
    double h = 0.0;
    for (double p : dist)
        if (p > 0.0) h -= p * std::log(p);
    return h / std::log(static_cast<double>(q));
}

double holevo_capacity(const FieldSpec& f, const CVec& g) {
    const CVec ghat = dft_symbol(f, g);
    std::vector<double> probs(f.q);
    for (int a = 0; a < f.q; ++a) probs[static_cast<size_t>(a)] = std::norm(ghat[a]);
    return entropy_q(probs, f.q);
}

double shannon_capacity(const FieldSpec& f, const CVec& g) {
    std::vector<double> probs(f.q);
    for (int a = 0; a < f.q; ++a) probs[static_cast<size_t>(a)] = std::norm(g[a]);
    return 1.0 - entropy_q(probs, f.q);
}

HirschmanResult hirschman_check(const FieldSpec& f, const CVec& g) {
    std::vector<double> direct(f.q);
    for (int a = 0; a < f.q; ++a) direct[static_cast<size_t>(a)] = std::norm(g[a]);
    const double sum = entropy_q(direct, f.q) + holevo_capacity(f, g);
    return HirschmanResult{sum, sum >= 1.0 - 1e-12};
}

// ---------------------------------------------------------------------------

namespace {

// Enumerates symbol-count types (compositions of n into q parts) and calls
// visit(counts, multinomial, point_probability). Multinomials and powers in
// long double; exact up to ~2^64 counts, ~1e-18 relative beyond.
void for_each_type(int q, int n, const std::vector<double>& r,
                   const std::function<void(const std::vector<int>&, long double,
                                            double)>& visit) {
    std::vector<int> counts(static_cast<size_t>(q), 0);
    std::vector<long double> logfact(static_cast<size_t>(n) + 1, 0.0L);
    for (int i = 2; i <= n; ++i) logfact[static_cast<size_t>(i)] =
        logfact[static_cast<size_t>(i) - 1] + logl(static_cast<long double>(i));
    std::function<void(int, int)> rec = [&](int sym, int left) {
        if (sym == q - 1) {
            counts[static_cast<size_t>(sym)] = left;
            long double logm = logfact[static_cast<size_t>(n)];
            for (int a = 0; a < q; ++a)
                logm -= logfact[static_cast<size_t>(counts[static_cast<size_t>(a)])];
            long double logp = 0.0L;
            bool zero = false;
            for (int a = 0; a < q; ++a) {
                if (counts[static_cast<size_t>(a)] == 0) continue;
                if (r[static_cast<size_t>(a)] <= 0.0) {
                    zero = true;
                    break;
                }
                logp += counts[static_cast<size_t>(a)] *
                        logl(static_cast<long double>(r[static_cast<size_t>(a)]));
            }
            visit(counts, expl(logm), zero ? 0.0 : static_cast<double>(expl(logp)));
            return;
        }
        for (int c = 0; c <= left; ++c) {
            counts[static_cast<size_t>(sym)] = c;
            rec(sym + 1, left - c);
        }
    };
    rec(0, n);
}

}  // namespace

TypicalSetSpec typical_set_product(const FieldSpec& f, const std::vector<double>& r,
                                   int n, double eps) {
    require(static_cast<int>(r.size()) == f.q, "typical_set_product: need q probabilities");
    require(eps > 0.0, "typical_set_product: eps must be > 0");
    double sum = 0.0;
    for (double p : r) sum += p;
    require(std::abs(sum - 1.0) <= 1e-9, "typical_set_product: r does not sum to 1");

    TypicalSetSpec T;
    T.n = n;
    T.eps = eps;
    T.H = entropy_q(r, f.q);
    T.entropy = n * T.H;
    T.A = std::pow(static_cast<double>(f.q), -n * (T.H + eps));
    T.B = std::pow(static_cast<double>(f.q), -n * (T.H - eps));

    // Membership thresholds on Σ -log_q r(y_i), evaluated through symbol
    // counts so the per-string and per-type routes are bit-identical.
    const int q = f.q;
    const double lo = n * (T.H - eps);
    const double hi = n * (T.H + eps);
    std::vector<double> w(static_cast<size_t>(q));
    for (int a = 0; a < q; ++a)
        w[static_cast<size_t>(a)] = (r[static_cast<size_t>(a)] > 0.0)
                                        ? -log_q(r[static_cast<size_t>(a)], q)
                                        : std::numeric_limits<double>::infinity();
    auto member_counts = [q, lo, hi, w](const std::vector<int>& counts) {
        double s = 0.0;
        for (int a = 0; a < q; ++a) {
            if (counts[static_cast<size_t>(a)] == 0) continue;
            if (std::isinf(w[static_cast<size_t>(a)])) return false;
            s += counts[static_cast<size_t>(a)] * w[static_cast<size_t>(a)];
        }
        return s >= lo && s <= hi;
    };
    T.member = [q, member_counts](const IRow& y) {
        std::vector<int> counts(static_cast<size_t>(q), 0);
        for (int i = 0; i < y.size(); ++i) ++counts[static_cast<size_t>(y[i])];
        return member_counts(counts);
    };
    T.p_eval = [r](const IRow& y) {
        double p = 1.0;
        for (int i = 0; i < y.size(); ++i) p *= r[static_cast<size_t>(y[i])];
        return p;
    };

    const double qn_bits = n * std::log2(static_cast<double>(q));
    if (qn_bits <= 20.0) {
        // Direct enumeration, in lock-step with p_eval.
        const index_t d = ipow(static_cast<index_t>(q), static_cast<unsigned>(n));
        long double mass = 0.0L, card = 0.0L;
        for (index_t i = 0; i < d; ++i) {
            const IRow y = digits_of(i, q, n);
            if (!T.member(y)) continue;
            mass += static_cast<long double>(T.p_eval(y));
            card += 1.0L;
        }
        T.delta = static_cast<double>(1.0L - mass);
        T.cardinality = card;
    } else {
        long double mass = 0.0L, card = 0.0L;
        for_each_type(q, n, r,
                      [&](const std::vector<int>& counts, long double multinomial,
                          double point_p) {
                          if (!member_counts(counts)) return;
                          mass += multinomial * static_cast<long double>(point_p);
                          card += multinomial;
                      });
        T.delta = static_cast<double>(1.0L - mass);
        T.cardinality = card;
    }
    return T;
}

TypicalSetSpec typical_set_rank(const RankNoiseParams& noise_params, double eps) {
    const RankNoiseParams& np = noise_params;
    const FieldSpec& f = *np.field;
    // The dual of f_t is f_{b-t}; p is supported on ranks <= b - t.
    const RankNoiseParams dual_params = rank_params(f, np.a, np.b, np.b - np.t);
    const std::vector<double> point = rank_point_probs(dual_params);
    const std::vector<double> mass = rank_shell_masses(dual_params);

    TypicalSetSpec T;
    T.n = np.n();
    T.eps = eps;
    T.H = (1.0 + static_cast<double>(np.t) / np.a) *
          (1.0 - static_cast<double>(np.t) / np.b);

    const int u_hi = np.b - np.t;
    const int u_lo = std::max(0, static_cast<int>(std::ceil(np.b * (1.0 - eps) - np.t)));
    T.A = point[static_cast<size_t>(u_hi)];
    T.B = point[static_cast<size_t>(u_lo)];

    long double in_mass = 0.0L, card = 0.0L;
    double entropy = 0.0;
    for (int u = 0; u <= np.b; ++u) {
        if (mass[static_cast<size_t>(u)] > 0.0)
            entropy -= mass[static_cast<size_t>(u)] *
                       log_q(point[static_cast<size_t>(u)], f.q);
        if (u < u_lo || u > u_hi) continue;
        in_mass += static_cast<long double>(mass[static_cast<size_t>(u)]);
        card += static_cast<long double>(dual_params.sphere[static_cast<size_t>(u)]);
    }
    T.entropy = entropy;
    T.delta = static_cast<double>(1.0L - in_mass);
    T.cardinality = card;

    const int a = np.a, b = np.b;
    T.member = [&f, a, b, u_lo, u_hi](const IRow& y) {
        const int u = rank_weight(f, y, a, b);
        return u >= u_lo && u <= u_hi;
    };
    T.p_eval = [&f, a, b, point](const IRow& y) {
        return point[static_cast<size_t>(rank_weight(f, y, a, b))];
    };
    return T;
}

int rank_gv_distance(int a, int b, double R) {
    require(R > 0.0 && R < 1.0, "rank_gv_distance: need 0 < R < 1");
    int best = 0;
    for (int t = 1; t <= b; ++t)
        if (R * a * b > static_cast<double>(a) * t + static_cast<double>(t) * (b - t))
            best = t;
    return best;
}

RankEntropy rank_entropy_per_symbol(const RankNoiseParams& p) {
    RankEntropy e;
    e.closed = (1.0 + static_cast<double>(p.t) / p.a) *
               (1.0 - static_cast<double>(p.t) / p.b);
    const RankNoiseParams dual_params = rank_params(*p.field, p.a, p.b, p.b - p.t);
    const std::vector<double> point = rank_point_probs(dual_params);
    const std::vector<double> mass = rank_shell_masses(dual_params);
    double h = 0.0;
    for (int u = 0; u <= p.b; ++u)
        if (mass[static_cast<size_t>(u)] > 0.0)
            h -= mass[static_cast<size_t>(u)] * log_q(point[static_cast<size_t>(u)],
                                                      p.field->q);
    e.exact = h / p.n();
    return e;
}

// ---------------------------------------------------------------------------

NiceFamilyReport nice_family_check(const FieldSpec& f,
                                   const std::vector<TypicalSetSpec>& members,
                                   const NiceFamilyConstants& c) {
    NiceFamilyReport rep;
    rep.pass = true;
    auto add = [&rep](CheckRecord rec, int idx) {
        if (!rec.pass && rep.offending_index < 0) rep.offending_index = idx;
        rep.pass = rep.pass && rec.pass;
        rep.checks.push_back(std::move(rec));
    };
    const double q = f.q;
    for (size_t i = 0; i < members.size(); ++i) {
        const TypicalSetSpec& T = members[i];
        const std::string inst = "n=" + std::to_string(T.n);
        const double a_floor = c.K1 * std::pow(q, -T.n * (c.H + c.alpha));
        add({"nice.A_lower", inst, T.A, a_floor, 0.0, T.A >= a_floor}, static_cast<int>(i));
        const double b_ceil = c.K2 * std::pow(q, -T.n * (c.H - c.beta));
        add({"nice.B_upper", inst, T.B, b_ceil, 0.0, T.B <= b_ceil}, static_cast<int>(i));
        // Entropy sandwich; tolerance covers fp rounding of exact quantities.
        const double lo = -(1.0 - T.delta) * log_q(T.B, f.q);
        const double hi = -(1.0 - T.delta) * log_q(T.A, f.q) + T.delta * T.n;
        add({"nice.sandwich_lower", inst, T.entropy, lo, 1e-9, T.entropy >= lo - 1e-9},
            static_cast<int>(i));
        add({"nice.sandwich_upper", inst, T.entropy, hi, 1e-9, T.entropy <= hi + 1e-9},
            static_cast<int>(i));
        if (i > 0) {
            const double prev = members[i - 1].delta;
            add({"nice.defect_decay", inst, T.delta, prev, 1e-12,
                 T.delta <= prev + 1e-12},
                static_cast<int>(i));
        }
    }
    if (!members.empty()) {
        const double last = members.back().delta;
        add({"nice.defect_final", "family", last, 0.5, 0.0, last < 0.5},
            static_cast<int>(members.size()) - 1);
    }
    return rep;
}

NiceFamilyConstants product_family_constants(const FieldSpec& f,
                                             const std::vector<double>& r, double eps) {
    return NiceFamilyConstants{entropy_q(r, f.q), eps, eps, 1.0, 1.0};
}

NiceFamilyConstants rank_family_constants(const RankNoiseParams& p, double eps) {
    NiceFamilyConstants c;
    c.H = (1.0 + static_cast<double>(p.t) / p.a) * (1.0 - static_cast<double>(p.t) / p.b);
    c.alpha = 0.0;
    c.beta = 2.0 * eps;
    // Tight valid constants extracted from the instance's exact envelope.
    const TypicalSetSpec T = typical_set_rank(p, eps);
    c.K1 = T.A * std::pow(static_cast<double>(p.field->q), T.n * (c.H + c.alpha));
    c.K2 = T.B * std::pow(static_cast<double>(p.field->q), T.n * (c.H - c.beta));
    return c;
}

}  // namespace qdp
