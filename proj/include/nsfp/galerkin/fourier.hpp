#pragma once

#include "nsfp/common.hpp"
#include "nsfp/transport/torus.hpp"

namespace nsfp {

/// Integer wavevector n with physical wavevector k = 2 pi n / L.
struct Wavevector {
    Eigen::Vector3i n = Eigen::Vector3i::Zero();
    Vec3 k = Vec3::Zero();
    double k2 = 0.0;
    int shell = 0; // 1-based rank of |k|^2 among the distinct values
    int max_index() const { return n.cwiseAbs().maxCoeff(); }
};

/// Half-space representatives (first nonzero component positive) with
/// |n_a| <= max_index, ordered by |k|^2 and then lexicographically in n.
std::vector<Wavevector> half_space_wavevectors(const Torus& torus, int max_index);

/// Grid size that resolves products of three fields with indices up to max_index.
int default_grid_size(int max_index);

/// Per-point table of e^{i n theta_a}, n in [-R, R], for fast evaluation of
/// many trigonometric modes at one point.
class PhaseTable {
public:
    PhaseTable(const Torus& torus, int max_index, const Vec3& x);
    std::complex<double> phase(const Eigen::Vector3i& n) const;

private:
    int dim_;
    int r_;
    std::array<std::vector<std::complex<double>>, 3> axis_;
};

} // namespace nsfp
