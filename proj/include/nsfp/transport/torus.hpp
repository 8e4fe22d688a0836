#pragma once

#include "nsfp/common.hpp"

#include <complex>

namespace nsfp {

/// Periodic box [0, L_1) x ... x [0, L_d).
struct Torus {
    int dim = 2;
    Vec3 lengths = Vec3(2 * kPi, 2 * kPi, 2 * kPi);

    double volume() const;
    /// Representative of x in the fundamental cell.
    Vec3 wrap(const Vec3& x) const;
};

/// Uniform tensor grid with n points per axis and equal trapezoid weights.
/// Flat index p = (i_1 n + i_2) n + i_3, first axis slowest.
class TorusGrid {
public:
    TorusGrid(Torus torus, int n);

    const Torus& torus() const noexcept { return torus_; }
    int dim() const noexcept { return torus_.dim; }
    int per_axis() const noexcept { return n_; }
    int size() const noexcept { return static_cast<int>(points_.size()); }
    const Vec3& point(int p) const { return points_[static_cast<std::size_t>(p)]; }
    const std::vector<Vec3>& points() const noexcept { return points_; }
    double weight() const noexcept { return weight_; }

    /// Sum of w * f over the grid.
    double integrate(const VectorXd& values) const { return weight_ * values.sum(); }

private:
    Torus torus_;
    int n_;
    std::vector<Vec3> points_;
    double weight_;
};

/// Trigonometric interpolant of grid samples of a periodic function.
/// For even n the Nyquist mode is taken as a cosine so real data interpolate to
/// real values.
class PeriodicInterpolant {
public:
    PeriodicInterpolant(const TorusGrid& grid, const VectorXd& values);

    double operator()(const Vec3& x) const;

private:
    int dim_;
    int n_;
    Vec3 lengths_;
    Eigen::VectorXcd coeffs_; // same flat layout as the grid, wavenumber index per axis
    void axis_factors(double x, double length, Eigen::VectorXcd& out) const;
};

} // namespace nsfp
