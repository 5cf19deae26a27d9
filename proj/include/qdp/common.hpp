#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qdp {

using Cx = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using IMat = Eigen::MatrixXi;
using IRow = Eigen::RowVectorXi;
using index_t = std::uint64_t;

// Absolute tolerances. Amplitude-level comparisons accumulate at most ~2^24
// terms in double precision, norms are tighter.
inline constexpr double kNormTol = 1e-12;
inline constexpr double kAmpTol = 1e-10;
inline constexpr double kMassTol = 1e-10;

// Size caps for materialized objects. `dense` guards O((q^n)^2) matrix work,
// `product` guards O(q^n) vector work. Overridable via the environment
// (QDP_LAB_CAP_DENSE / QDP_LAB_CAP_PRODUCT).
struct Caps {
    index_t dense = index_t{1} << 12;
    index_t product = index_t{1} << 22;
};

const Caps& caps();

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

// q^e as a 64-bit integer; throws on overflow.
index_t ipow(index_t q, unsigned e);

}  // namespace qdp
