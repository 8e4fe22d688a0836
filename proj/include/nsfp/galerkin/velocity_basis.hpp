#pragma once

#include "nsfp/common.hpp"
#include "nsfp/galerkin/fourier.hpp"
#include "nsfp/transport/torus.hpp"
#include "nsfp/transport/velocity_field.hpp"

#include <memory>

namespace nsfp {

/// Divergence-free trigonometric modes on the torus,
///   w = sqrt(2/|Omega|) e cos(k.x)   and   sqrt(2/|Omega|) e sin(k.x),
/// with e a unit polarization orthogonal to k (one in 2-D, two in 3-D).
/// Ordered by |k|, then lexicographically in the integer wavevector, then
/// polarization, then cos before sin.  The first shell in 2-D holds 4 modes.
class VelocityBasis final : public ModeSet {
public:
    /// `grid_n` = 0 picks max(8, 4 kmax).  `max_index` bounds |n_a| and so fixes the capacity.
    VelocityBasis(const Torus& torus, int m, int grid_n = 0, int max_index = 8);

    int size() const override { return static_cast<int>(modes_.size()); }
    void evaluate(const Vec3& x, Eigen::Matrix<double, 3, Eigen::Dynamic>& values,
                  std::vector<Mat3>* grads) const override;

    const Torus& torus() const noexcept { return torus_; }
    int dim() const noexcept { return torus_.dim; }
    int max_index() const noexcept { return kmax_; }
    std::shared_ptr<const TorusGrid> grid() const noexcept { return grid_; }

    /// Component a of every mode at the grid points (grid size x m).
    const MatrixXd& values(int a) const { return values_.at(static_cast<std::size_t>(a)); }
    /// d w_a / d x_b at the grid points.
    const MatrixXd& gradient(int a, int b) const {
        return grads_.at(static_cast<std::size_t>(a * 3 + b));
    }

    const Wavevector& wavevector(int i) const;
    const Vec3& polarization(int i) const { return modes_.at(static_cast<std::size_t>(i)).e; }
    bool is_sine(int i) const { return modes_.at(static_cast<std::size_t>(i)).sine; }

    /// Velocity field (grid size x 3) for coefficients c.
    MatrixXd field(const VectorXd& c) const;
    /// Velocity gradient at every grid point for coefficients c.
    std::vector<Mat3> field_gradient(const VectorXd& c) const;

    /// Number of modes available with the chosen max_index.
    static int capacity(const Torus& torus, int max_index);

private:
    struct Mode {
        int wave;
        Vec3 e;
        bool sine;
    };
    Torus torus_;
    std::vector<Wavevector> waves_;
    std::vector<Mode> modes_;
    int kmax_ = 0;
    double amp_ = 0.0;
    std::shared_ptr<const TorusGrid> grid_;
    std::vector<MatrixXd> values_;
    std::vector<MatrixXd> grads_;
};

/// Real trigonometric functions on the torus, orthonormal in L^2(Omega):
/// the constant first, then cos and sin per half-space wavevector in shell order.
class ScalarFourierSet {
public:
    ScalarFourierSet(const Torus& torus, int count, int max_index = 8);

    static int capacity(const Torus& torus, int max_index);

    int size() const noexcept { return static_cast<int>(entries_.size()); }
    int shell(int a) const { return entries_.at(static_cast<std::size_t>(a)).shell; }
    int max_index() const noexcept { return kmax_; }

    double value(int a, const Vec3& x) const;
    Vec3 gradient(int a, const Vec3& x) const;

    /// Tabulate values (grid x count) and gradients (one matrix per axis).
    void tabulate(const TorusGrid& grid, MatrixXd& values, std::vector<MatrixXd>& grads) const;

private:
    struct Entry {
        Wavevector wave;
        int kind; // 0 constant, 1 cos, 2 sin
        int shell;
    };
    Torus torus_;
    std::vector<Entry> entries_;
    int kmax_ = 0;
    double amp0_ = 0.0, amp_ = 0.0;
};

} // namespace nsfp
