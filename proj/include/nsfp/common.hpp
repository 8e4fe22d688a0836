#pragma once

// Shared small types and error classes used across the nsfp modules.

#include <Eigen/Dense>

#include <array>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nsfp {

// Points and gradients are carried in fixed 3-vectors; 2-D problems leave the
// third component at zero.
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

using Eigen::MatrixXd;
using Eigen::VectorXd;

using ScalarField = std::function<double(const Vec3&)>;

inline constexpr double kPi = 3.14159265358979323846;

/// Argument outside the mathematical domain of a model function.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Malformed or inconsistent run configuration. `key()` names the offending entry.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, const std::string& what)
        : std::runtime_error(key.empty() ? what : key + ": " + what), key_(std::move(key)) {}
    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

/// Fixed-point iteration failed to reach tolerance within the iteration budget.
class NonConvergenceError : public std::runtime_error {
public:
    NonConvergenceError(const std::string& what, std::vector<double> history)
        : std::runtime_error(what), history_(std::move(history)) {}
    const std::vector<double>& residual_history() const noexcept { return history_; }

private:
    std::vector<double> history_;
};

/// Any other numerical breakdown (singular Gram matrix, non-finite field value).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace nsfp
