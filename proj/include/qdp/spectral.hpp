#pragma once

#include <memory>
#include <variant>
#include <vector>

#include "qdp/common.hpp"
#include "qdp/field.hpp"

namespace qdp {

// A unit-norm state vector over F_q^n, indexed big-endian.
struct DenseState {
    const FieldSpec* field = nullptr;
    int n = 0;
    CVec amps;

    Cx operator[](index_t i) const { return amps[static_cast<Eigen::Index>(i)]; }
    index_t dim() const { return static_cast<index_t>(amps.size()); }
};

struct RankShape {
    int a = 1, b = 1, t = 0;
};

// A complex amplitude function on F_q^n with ‖f‖₂ = 1. Three representations:
//   product — f = g^⊗n for a per-symbol g : F_q → C,
//   dense   — explicit q^n amplitudes,
//   rank    — radial in the rank weight of the a×b matrix reshaping
//             (values supplied per rank shell, zero above the cutoff).
// Dense materialization is lazy and cached.
class AmplitudeFn {
   public:
    AmplitudeFn() = default;  // empty; assign from a factory before use

    static AmplitudeFn product(const FieldSpec& f, int n, CVec g);
    static AmplitudeFn dense(const FieldSpec& f, int n, CVec amps);
    static AmplitudeFn radial_rank(const FieldSpec& f, RankShape shape,
                                   std::vector<double> shell_amps);

    const FieldSpec& field() const { return *field_; }
    int n() const { return n_; }
    index_t dim() const { return ipow(field_->q, static_cast<unsigned>(n_)); }

    bool is_product() const { return std::holds_alternative<Product>(rep_); }
    bool is_dense() const { return std::holds_alternative<Dense>(rep_); }
    bool is_rank() const { return std::holds_alternative<Rank>(rep_); }

    const CVec& per_symbol() const;       // product only
    const RankShape& rank_shape() const;  // rank only
    const std::vector<double>& shell_amplitudes() const;

    Cx value(const IRow& x) const;
    Cx value(index_t idx) const;

    // Materializes (and caches) the dense vector; throws above the product cap.
    const CVec& dense_amps() const;

    // The Fourier transform: product maps through the per-symbol transform,
    // dense and rank go through the fast dense transform (rank output stays
    // dense; the exact shell-level dual lives in the noise module).
    AmplitudeFn fourier() const;

   private:
    struct Product {
        CVec g;
    };
    struct Dense {};
    struct Rank {
        RankShape shape;
        std::vector<double> shells;
    };

    const FieldSpec* field_ = nullptr;
    int n_ = 0;
    std::variant<Product, Dense, Rank> rep_;
    mutable std::shared_ptr<const CVec> dense_cache_;
};

// Per-symbol transform ĝ(y) = q^{-1/2} Σ_x χ_y(x) g(x). Requires unit norm.
CVec dft_symbol(const FieldSpec& f, const CVec& g);
CVec idft_symbol(const FieldSpec& f, const CVec& g);

// Full transform f̂(y) = q^{-n/2} Σ_x χ_y(x) f(x), computed as an n-fold
// Kronecker application of the q×q character matrix (cost n·q^{n+1}).
// Norm preserving. `inverse` applies the conjugate transform.
CVec dft_dense(const FieldSpec& f, int n, CVec amps, bool inverse = false);

DenseState dft(const DenseState& st, bool inverse = false);
AmplitudeFn dft(const AmplitudeFn& f);

// |ψ_c⟩ = Σ_e f(e)|c+e⟩.
DenseState shifted_state(const IRow& c, const AmplitudeFn& f);

// Σ_y f̂(y) χ_c(y) |y⟩ — the transform of the shifted state in closed form
// (same amplitudes as dft(shifted_state) up to nothing: they agree entrywise).
DenseState qft_shifted_closed_form(const IRow& c, const AmplitudeFn& f);

double l2_norm(const CVec& v);

}  // namespace qdp
