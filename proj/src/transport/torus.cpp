#include "nsfp/transport/torus.hpp"

#include <cmath>

namespace nsfp {

double Torus::volume() const {
    double v = 1.0;
    for (int a = 0; a < dim; ++a) v *= lengths(a);
    return v;
}

Vec3 Torus::wrap(const Vec3& x) const {
    Vec3 y = x;
    for (int a = 0; a < dim; ++a) {
        y(a) -= lengths(a) * std::floor(y(a) / lengths(a));
        if (y(a) >= lengths(a)) y(a) = 0.0;
    }
    return y;
}

TorusGrid::TorusGrid(Torus torus, int n) : torus_(std::move(torus)), n_(n) {
    if (torus_.dim != 2 && torus_.dim != 3) throw DomainError("torus dimension must be 2 or 3");
    if (n < 2) throw DomainError("torus grid needs at least two points per axis");
    for (int a = 0; a < torus_.dim; ++a) {
        if (!(torus_.lengths(a) > 0.0)) throw DomainError("torus side lengths must be positive");
    }
    const int total = torus_.dim == 2 ? n * n : n * n * n;
    points_.reserve(static_cast<std::size_t>(total));
    for (int p = 0; p < total; ++p) {
        Vec3 x = Vec3::Zero();
        int rem = p;
        for (int a = torus_.dim - 1; a >= 0; --a) {
            x(a) = torus_.lengths(a) * (rem % n) / n;
            rem /= n;
        }
        points_.push_back(x);
    }
    weight_ = torus_.volume() / total;
}

namespace {

// Signed wavenumber stored at index k of an n-point transform.
int signed_mode(int k, int n) { return k <= n / 2 ? k : k - n; }

} // namespace

PeriodicInterpolant::PeriodicInterpolant(const TorusGrid& grid, const VectorXd& values)
    : dim_(grid.dim()), n_(grid.per_axis()), lengths_(grid.torus().lengths) {
    if (values.size() != grid.size()) {
        throw DomainError("periodic interpolant: value count does not match the grid");
    }
    const int n = n_;
    // 1-D DFT matrix, F_k = (1/n) sum_j f_j e^{-2 pi i k j / n}.
    Eigen::MatrixXcd W(n, n);
    for (int k = 0; k < n; ++k) {
        for (int j = 0; j < n; ++j) {
            W(k, j) = std::polar(1.0 / n, -2.0 * kPi * k * j / n);
        }
    }
    coeffs_ = values.cast<std::complex<double>>();
    // Apply W along each axis in turn.
    const int total = static_cast<int>(values.size());
    int stride = 1;
    for (int axis = dim_ - 1; axis >= 0; --axis) {
        Eigen::VectorXcd next(total);
        for (int p = 0; p < total; ++p) {
            const int i = (p / stride) % n;
            const int base = p - i * stride;
            std::complex<double> acc = 0.0;
            for (int j = 0; j < n; ++j) acc += W(i, j) * coeffs_(base + j * stride);
            next(p) = acc;
        }
        coeffs_ = next;
        stride *= n;
    }
}

void PeriodicInterpolant::axis_factors(double x, double length, Eigen::VectorXcd& out) const {
    out.resize(n_);
    const double theta = 2.0 * kPi * x / length;
    for (int k = 0; k < n_; ++k) {
        const int m = signed_mode(k, n_);
        if (n_ % 2 == 0 && m == n_ / 2) {
            out(k) = std::cos(m * theta);
        } else {
            out(k) = std::polar(1.0, m * theta);
        }
    }
}

double PeriodicInterpolant::operator()(const Vec3& x) const {
    std::array<Eigen::VectorXcd, 3> f;
    for (int a = 0; a < dim_; ++a) axis_factors(x(a), lengths_(a), f[static_cast<std::size_t>(a)]);
    const int n = n_;
    std::complex<double> total = 0.0;
    if (dim_ == 2) {
        for (int i = 0; i < n; ++i) {
            std::complex<double> row = 0.0;
            for (int j = 0; j < n; ++j) row += coeffs_(i * n + j) * f[1](j);
            total += f[0](i) * row;
        }
    } else {
        for (int i = 0; i < n; ++i) {
            std::complex<double> plane = 0.0;
            for (int j = 0; j < n; ++j) {
                std::complex<double> row = 0.0;
                for (int k = 0; k < n; ++k) row += coeffs_((i * n + j) * n + k) * f[2](k);
                plane += f[1](j) * row;
            }
            total += f[0](i) * plane;
        }
    }
    return total.real();
}

} // namespace nsfp
