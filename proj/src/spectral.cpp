#include "qdp/spectral.hpp"

#include <cmath>

namespace qdp {

namespace {

void check_unit(const CVec& v, const char* what) {
    const double norm = std::sqrt(v.squaredNorm());
    if (std::abs(norm - 1.0) > 1e-9)
        throw std::invalid_argument(std::string(what) + ": not unit norm");
}

}  // namespace

double l2_norm(const CVec& v) { return std::sqrt(v.squaredNorm()); }

AmplitudeFn AmplitudeFn::product(const FieldSpec& f, int n, CVec g) {
    require(g.size() == f.q, "AmplitudeFn::product: g must have q entries");
    check_unit(g, "AmplitudeFn::product");
    AmplitudeFn a;
    a.field_ = &f;
    a.n_ = n;
    a.rep_ = Product{std::move(g)};
    return a;
}

AmplitudeFn AmplitudeFn::dense(const FieldSpec& f, int n, CVec amps) {
    require(static_cast<index_t>(amps.size()) == ipow(f.q, static_cast<unsigned>(n)),
            "AmplitudeFn::dense: wrong length");
    check_unit(amps, "AmplitudeFn::dense");
    AmplitudeFn a;
    a.field_ = &f;
    a.n_ = n;
    a.rep_ = Dense{};
    a.dense_cache_ = std::make_shared<const CVec>(std::move(amps));
    return a;
}

AmplitudeFn AmplitudeFn::radial_rank(const FieldSpec& f, RankShape shape,
                                     std::vector<double> shell_amps) {
    require(shape.a >= shape.b && shape.b >= 1, "radial_rank: need a >= b >= 1");
    require(static_cast<int>(shell_amps.size()) == shape.b + 1,
            "radial_rank: need b+1 shell amplitudes");
    AmplitudeFn a;
    a.field_ = &f;
    a.n_ = shape.a * shape.b;
    a.rep_ = Rank{shape, std::move(shell_amps)};
    return a;
}

const CVec& AmplitudeFn::per_symbol() const { return std::get<Product>(rep_).g; }

const RankShape& AmplitudeFn::rank_shape() const { return std::get<Rank>(rep_).shape; }

const std::vector<double>& AmplitudeFn::shell_amplitudes() const {
    return std::get<Rank>(rep_).shells;
}

Cx AmplitudeFn::value(const IRow& x) const {
    if (const auto* p = std::get_if<Product>(&rep_)) {
        Cx v = 1.0;
        for (int i = 0; i < x.size(); ++i) v *= p->g[x[i]];
        return v;
    }
    if (const auto* r = std::get_if<Rank>(&rep_))
        return r->shells[static_cast<size_t>(
            rank_weight(*field_, x, r->shape.a, r->shape.b))];
    return (*dense_cache_)[static_cast<Eigen::Index>(index_of(x, field_->q))];
}

Cx AmplitudeFn::value(index_t idx) const {
    if (is_dense()) return (*dense_cache_)[static_cast<Eigen::Index>(idx)];
    return value(digits_of(idx, field_->q, n_));
}

const CVec& AmplitudeFn::dense_amps() const {
    if (dense_cache_) return *dense_cache_;
    const index_t d = dim();
    require(d <= caps().product, "AmplitudeFn: dense materialization exceeds cap");
    CVec amps(static_cast<Eigen::Index>(d));
    if (const auto* p = std::get_if<Product>(&rep_)) {
        // Odometer over digits with running partial products per position.
        const int q = field_->q;
        std::vector<Cx> partial(static_cast<size_t>(n_) + 1);
        IRow x = IRow::Zero(n_);
        partial[0] = 1.0;
        for (index_t i = 0; i < d; ++i) {
            if (i > 0) {
                int pos = n_ - 1;
                while (x[pos] == q - 1) x[pos--] = 0;
                ++x[pos];
                for (int j = pos; j < n_; ++j) partial[j + 1] = partial[j] * p->g[x[j]];
            } else {
                for (int j = 0; j < n_; ++j) partial[j + 1] = partial[j] * p->g[x[j]];
            }
            amps[static_cast<Eigen::Index>(i)] = partial[n_];
        }
    } else {
        const auto& r = std::get<Rank>(rep_);
        for (index_t i = 0; i < d; ++i)
            amps[static_cast<Eigen::Index>(i)] =
                r.shells[static_cast<size_t>(rank_weight(
                    *field_, digits_of(i, field_->q, n_), r.shape.a, r.shape.b))];
    }
    dense_cache_ = std::make_shared<const CVec>(std::move(amps));
    return *dense_cache_;
}

CVec dft_symbol(const FieldSpec& f, const CVec& g) {
    require(g.size() == f.q, "dft_symbol: wrong length");
    check_unit(g, "dft_symbol");
    const double scale = 1.0 / std::sqrt(static_cast<double>(f.q));
    CVec out(f.q);
    for (int y = 0; y < f.q; ++y) {
        Cx acc = 0.0;
        for (int x = 0; x < f.q; ++x) acc += f.character(y, x) * g[x];
        out[y] = acc * scale;
    }
    return out;
}

CVec idft_symbol(const FieldSpec& f, const CVec& g) {
    require(g.size() == f.q, "idft_symbol: wrong length");
    const double scale = 1.0 / std::sqrt(static_cast<double>(f.q));
    CVec out(f.q);
    for (int y = 0; y < f.q; ++y) {
        Cx acc = 0.0;
        for (int x = 0; x < f.q; ++x) acc += std::conj(f.character(y, x)) * g[x];
        out[y] = acc * scale;
    }
    return out;
}

CVec dft_dense(const FieldSpec& f, int n, CVec amps, bool inverse) {
    const index_t d = ipow(f.q, static_cast<unsigned>(n));
    require(static_cast<index_t>(amps.size()) == d, "dft_dense: wrong length");
    require(d <= caps().product, "dft_dense: cap exceeded");
    const int q = f.q;
    const double scale = 1.0 / std::sqrt(static_cast<double>(q));
    std::vector<Cx> scratch(static_cast<size_t>(q));
    // Apply the q×q character matrix along each coordinate axis.
    index_t stride = d / q;  // axis 0 is the most significant digit
    for (int axis = 0; axis < n; ++axis, stride /= q) {
        const index_t block = stride * q;
        for (index_t base = 0; base < d; base += block) {
            for (index_t off = 0; off < stride; ++off) {
                for (int x = 0; x < q; ++x)
                    scratch[static_cast<size_t>(x)] =
                        amps[static_cast<Eigen::Index>(base + off + stride * x)];
                for (int y = 0; y < q; ++y) {
                    Cx acc = 0.0;
                    for (int x = 0; x < q; ++x) {
                        const Cx chi = f.character(y, x);
                        acc += (inverse ? std::conj(chi) : chi) * scratch[static_cast<size_t>(x)];
                    }
                    amps[static_cast<Eigen::Index>(base + off + stride * y)] = acc * scale;
                }
            }
        }
    }
    return amps;
}

DenseState dft(const DenseState& st, bool inverse) {
    return DenseState{st.field, st.n, dft_dense(*st.field, st.n, st.amps, inverse)};
}

AmplitudeFn dft(const AmplitudeFn& f) {
    if (f.is_product())
        return AmplitudeFn::product(f.field(), f.n(), dft_symbol(f.field(), f.per_symbol()));
    return AmplitudeFn::dense(f.field(), f.n(),
                              dft_dense(f.field(), f.n(), f.dense_amps()));
}

AmplitudeFn AmplitudeFn::fourier() const { return dft(*this); }

DenseState shifted_state(const IRow& c, const AmplitudeFn& f) {
    const FieldSpec& fld = f.field();
    const index_t d = f.dim();
    require(d <= caps().product, "shifted_state: cap exceeded");
    require(c.size() == f.n(), "shifted_state: shift length mismatch");
    const CVec& base = f.dense_amps();
    CVec amps(static_cast<Eigen::Index>(d));
    for (index_t e = 0; e < d; ++e) {
        IRow x = digits_of(e, fld.q, f.n());
        for (int i = 0; i < f.n(); ++i) x[i] = fld.add(x[i], c[i]);
        amps[static_cast<Eigen::Index>(index_of(x, fld.q))] =
            base[static_cast<Eigen::Index>(e)];
    }
    return DenseState{&fld, f.n(), std::move(amps)};
}

DenseState qft_shifted_closed_form(const IRow& c, const AmplitudeFn& f) {
    const FieldSpec& fld = f.field();
    const index_t d = f.dim();
    require(d <= caps().product, "qft_shifted_closed_form: cap exceeded");
    const AmplitudeFn fhat = dft(f);
    const CVec& base = fhat.dense_amps();
    CVec amps(static_cast<Eigen::Index>(d));
    for (index_t y = 0; y < d; ++y) {
        const IRow yd = digits_of(y, fld.q, f.n());
        amps[static_cast<Eigen::Index>(y)] =
            base[static_cast<Eigen::Index>(y)] * character_vec(fld, c, yd);
    }
    return DenseState{&fld, f.n(), std::move(amps)};
}

}  // namespace qdp
