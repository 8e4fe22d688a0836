#pragma once

#include "nsfp/common.hpp"

#include <memory>

namespace nsfp {

/// A velocity field v(x, t) with its spatial gradient, grad(a, b) = d v_a / d x_b.
class VelocityField {
public:
    virtual ~VelocityField() = default;
    virtual Vec3 value(const Vec3& x, double t) const = 0;
    virtual Mat3 gradient(const Vec3& x, double t) const = 0;
    /// Times where the field is only piecewise smooth in t; integrators step onto them.
    virtual std::vector<double> breakpoints() const { return {}; }
    /// False for verification fields that are not periodic on the torus.
    virtual bool periodic() const { return true; }
};

class ZeroVelocity final : public VelocityField {
public:
    Vec3 value(const Vec3&, double) const override { return Vec3::Zero(); }
    Mat3 gradient(const Vec3&, double) const override { return Mat3::Zero(); }
};

class ConstantVelocity final : public VelocityField {
public:
    explicit ConstantVelocity(const Vec3& v) : v_(v) {}
    Vec3 value(const Vec3&, double) const override { return v_; }
    Mat3 gradient(const Vec3&, double) const override { return Mat3::Zero(); }

private:
    Vec3 v_;
};

/// Frozen Taylor-Green vortex v = a (sin x cos y, -cos x sin y).
class TaylorGreenVelocity final : public VelocityField {
public:
    explicit TaylorGreenVelocity(double amplitude = 1.0) : a_(amplitude) {}
    Vec3 value(const Vec3& x, double t) const override;
    Mat3 gradient(const Vec3& x, double t) const override;

private:
    double a_;
};

/// v = (x_1, 0): not divergence free and not periodic, used only to check the
/// Liouville determinant against e^{t}.
class ShearVelocity final : public VelocityField {
public:
    Vec3 value(const Vec3& x, double) const override { return Vec3(x(0), 0.0, 0.0); }
    Mat3 gradient(const Vec3&, double) const override;
    bool periodic() const override { return false; }
};

/// Finite set of spatial modes w_i(x) that a trajectory combines with coefficients.
class ModeSet {
public:
    virtual ~ModeSet() = default;
    virtual int size() const = 0;
    /// Values (3 x size) and, when `grads` is non-null, gradients of every mode at x.
    virtual void evaluate(const Vec3& x, Eigen::Matrix<double, 3, Eigen::Dynamic>& values,
                          std::vector<Mat3>* grads) const = 0;
};

/// v(x, t) = sum_i c_i(t) w_i(x) with c piecewise linear between stored times.
class VelocityTrajectory final : public VelocityField {
public:
    VelocityTrajectory(std::shared_ptr<const ModeSet> modes, std::vector<double> times,
                       std::vector<VectorXd> coeffs);

    Vec3 value(const Vec3& x, double t) const override;
    Mat3 gradient(const Vec3& x, double t) const override;
    std::vector<double> breakpoints() const override { return times_; }

    VectorXd coefficients(double t) const;
    const std::vector<double>& times() const noexcept { return times_; }

private:
    std::shared_ptr<const ModeSet> modes_;
    std::vector<double> times_;
    std::vector<VectorXd> coeffs_;
};

} // namespace nsfp
