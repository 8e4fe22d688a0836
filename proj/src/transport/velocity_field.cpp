#include "nsfp/transport/velocity_field.hpp"

#include <algorithm>
#include <cmath>

namespace nsfp {

Vec3 TaylorGreenVelocity::value(const Vec3& x, double) const {
    return a_ * Vec3(std::sin(x(0)) * std::cos(x(1)), -std::cos(x(0)) * std::sin(x(1)), 0.0);
}

Mat3 TaylorGreenVelocity::gradient(const Vec3& x, double) const {
    const double s0 = std::sin(x(0)), c0 = std::cos(x(0));
    const double s1 = std::sin(x(1)), c1 = std::cos(x(1));
    Mat3 g = Mat3::Zero();
    g(0, 0) = a_ * c0 * c1;
    g(0, 1) = -a_ * s0 * s1;
    g(1, 0) = a_ * s0 * s1;
    g(1, 1) = -a_ * c0 * c1;
    return g;
}

Mat3 ShearVelocity::gradient(const Vec3&, double) const {
    Mat3 g = Mat3::Zero();
    g(0, 0) = 1.0;
    return g;
}

VelocityTrajectory::VelocityTrajectory(std::shared_ptr<const ModeSet> modes, std::vector<double> times,
                                       std::vector<VectorXd> coeffs)
    : modes_(std::move(modes)), times_(std::move(times)), coeffs_(std::move(coeffs)) {
    if (times_.empty() || times_.size() != coeffs_.size()) {
        throw DomainError("velocity trajectory needs one coefficient vector per time node");
    }
    for (std::size_t k = 1; k < times_.size(); ++k) {
        if (!(times_[k] > times_[k - 1])) throw DomainError("velocity trajectory times must increase");
    }
    for (const auto& c : coeffs_) {
        if (c.size() != modes_->size()) throw DomainError("velocity trajectory: coefficient size mismatch");
    }
}

VectorXd VelocityTrajectory::coefficients(double t) const {
    if (times_.size() == 1 || t <= times_.front()) return coeffs_.front();
    if (t >= times_.back()) return coeffs_.back();
    const auto it = std::upper_bound(times_.begin(), times_.end(), t);
    const std::size_t k = static_cast<std::size_t>(it - times_.begin());
    const double theta = (t - times_[k - 1]) / (times_[k] - times_[k - 1]);
    return (1.0 - theta) * coeffs_[k - 1] + theta * coeffs_[k];
}

Vec3 VelocityTrajectory::value(const Vec3& x, double t) const {
    Eigen::Matrix<double, 3, Eigen::Dynamic> w;
    modes_->evaluate(x, w, nullptr);
    return w * coefficients(t);
}

Mat3 VelocityTrajectory::gradient(const Vec3& x, double t) const {
    Eigen::Matrix<double, 3, Eigen::Dynamic> w;
    std::vector<Mat3> g;
    modes_->evaluate(x, w, &g);
    const VectorXd c = coefficients(t);
    Mat3 out = Mat3::Zero();
    for (int i = 0; i < c.size(); ++i) out += c(i) * g[static_cast<std::size_t>(i)];
    return out;
}

} // namespace nsfp
