#include "nsfp/transport/characteristics.hpp"

#include <algorithm>
#include <cmath>

namespace nsfp {

CharMap::CharMap(const VelocityField& field, double ds) : field_(&field), ds_(ds) {
    if (!(ds > 0.0)) throw DomainError("characteristic substep must be positive");
}

std::vector<double> CharMap::stations(double t, double s) const {
    // Interval endpoints plus any breakpoints strictly between them, in travel order.
    std::vector<double> pts{t};
    const double lo = std::min(t, s), hi = std::max(t, s);
    std::vector<double> inner;
    for (double b : field_->breakpoints()) {
        if (b > lo && b < hi) inner.push_back(b);
    }
    std::sort(inner.begin(), inner.end());
    if (s < t) std::reverse(inner.begin(), inner.end());
    pts.insert(pts.end(), inner.begin(), inner.end());
    pts.push_back(s);

    std::vector<double> out{t};
    for (std::size_t k = 1; k < pts.size(); ++k) {
        const double a = pts[k - 1], b = pts[k];
        const int steps = std::max(1, static_cast<int>(std::ceil(std::abs(b - a) / ds_ - 1e-9)));
        for (int i = 1; i <= steps; ++i) out.push_back(i == steps ? b : a + (b - a) * i / steps);
    }
    return out;
}

Vec3 CharMap::lift(const Vec3& x, double t, double s) const {
    if (t == s) return x;
    const auto st = stations(t, s);
    Vec3 X = x;
    for (std::size_t k = 1; k < st.size(); ++k) {
        const double a = st[k - 1];
        const double h = st[k] - a;
        const Vec3 k1 = field_->value(X, a);
        const Vec3 k2 = field_->value(X + 0.5 * h * k1, a + 0.5 * h);
        const Vec3 k3 = field_->value(X + 0.5 * h * k2, a + 0.5 * h);
        const Vec3 k4 = field_->value(X + h * k3, a + h);
        X += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return X;
}

std::pair<Vec3, Mat3> CharMap::lift_with_jacobian(const Vec3& x, double t, double s) const {
    Vec3 X = x;
    Mat3 J = Mat3::Identity();
    if (t == s) return {X, J};
    const auto st = stations(t, s);
    for (std::size_t k = 1; k < st.size(); ++k) {
        const double a = st[k - 1];
        const double h = st[k] - a;
        const double m = a + 0.5 * h;
        const Vec3 k1 = field_->value(X, a);
        const Mat3 j1 = field_->gradient(X, a) * J;
        const Vec3 x2 = X + 0.5 * h * k1;
        const Mat3 J2 = J + 0.5 * h * j1;
        const Vec3 k2 = field_->value(x2, m);
        const Mat3 j2 = field_->gradient(x2, m) * J2;
        const Vec3 x3 = X + 0.5 * h * k2;
        const Mat3 J3 = J + 0.5 * h * j2;
        const Vec3 k3 = field_->value(x3, m);
        const Mat3 j3 = field_->gradient(x3, m) * J3;
        const Vec3 x4 = X + h * k3;
        const Mat3 J4 = J + h * j3;
        const Vec3 k4 = field_->value(x4, a + h);
        const Mat3 j4 = field_->gradient(x4, a + h) * J4;
        X += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        J += h / 6.0 * (j1 + 2.0 * j2 + 2.0 * j3 + j4);
    }
    return {X, J};
}

Vec3 integrate_characteristic(const CharMap& map, const Torus& torus, const Vec3& x, double t, double s) {
    const Vec3 y = map.lift(x, t, s);
    return map.field().periodic() ? torus.wrap(y) : y;
}

double jacobian_det(const CharMap& map, const Vec3& x, double t, double s, int dim) {
    const Mat3 J = map.lift_with_jacobian(x, t, s).second;
    return dim == 2 ? J.topLeftCorner<2, 2>().determinant() : J.determinant();
}

} // namespace nsfp
