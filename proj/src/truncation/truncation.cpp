#include "nsfp/truncation/truncation.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>

namespace nsfp {

namespace {

constexpr int kPanels = 32;
constexpr double kPanelWidth = 1.0 / kPanels;

using Gauss = boost::math::quadrature::gauss<double, 20>;

double smooth_step_part(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

// Cumulative integrals of the mother bump over [1, 1 + p/kPanels].
const std::array<double, kPanels + 1>& primitive_table() {
    static const std::array<double, kPanels + 1> table = [] {
        std::array<double, kPanels + 1> cum{};
        cum[0] = 0.0;
        for (int p = 0; p < kPanels; ++p) {
            const double a = 1.0 + p * kPanelWidth;
            cum[static_cast<std::size_t>(p + 1)] =
                cum[static_cast<std::size_t>(p)] +
                Gauss::integrate(CutoffFamily::mother, a, a + kPanelWidth);
        }
        return cum;
    }();
    return table;
}

} // namespace

CutoffFamily::CutoffFamily(double level) : level_(level) {
    if (!(level > 0.0)) {
        throw DomainError("truncation level must be positive");
    }
}

double CutoffFamily::mother(double s) {
    const double a = std::abs(s);
    if (a <= 1.0) return 1.0;
    if (a >= 2.0) return 0.0;
    const double x = a - 1.0;
    const double left = smooth_step_part(1.0 - x);
    const double right = smooth_step_part(x);
    return left / (left + right);
}

double CutoffFamily::mother_primitive(double s) {
    const double a = std::abs(s);
    double value;
    if (a <= 1.0) {
        value = a;
    } else if (a >= 2.0) {
        value = 1.0 + primitive_table()[kPanels];
    } else {
        const auto& cum = primitive_table();
        const int p = std::min(kPanels - 1, static_cast<int>((a - 1.0) / kPanelWidth));
        const double start = 1.0 + p * kPanelWidth;
        value = 1.0 + cum[static_cast<std::size_t>(p)] + Gauss::integrate(mother, start, a);
    }
    return s < 0.0 ? -value : value;
}

double CutoffFamily::gamma(double s) const {
    if (std::abs(s) <= level_) return 1.0;
    return mother(s / level_);
}

double CutoffFamily::t(double s) const {
    if (std::abs(s) <= level_) return s;
    return level_ * mother_primitive(s / level_);
}

double CutoffFamily::lambda(double s) const {
    if (std::abs(s) <= level_) return s;
    return s * mother(s / level_);
}

double CutoffFamily::t_delta(double s, double delta) const {
    if (!(delta > 0.0)) {
        throw DomainError("T_{delta,l}: delta must be positive");
    }
    if (s < 0.0) {
        throw DomainError("T_{delta,l}: argument must be nonnegative");
    }
    const double l = level_;
    if (s <= l) {
        return s - delta * std::log1p(s / delta);
    }
    double value = l - delta * std::log1p(l / delta);
    const double upper = std::min(s, 2.0 * l);
    auto integrand = [&](double t) { return t * gamma(t) / (t + delta); };
    const double width = l * kPanelWidth;
    for (double a = l; a < upper; a += width) {
        value += Gauss::integrate(integrand, a, std::min(a + width, upper));
    }
    return value;
}

double gamma_l(const CutoffFamily& family, double s) { return family.gamma(s); }
double t_l(const CutoffFamily& family, double s) { return family.t(s); }
double lambda_l(const CutoffFamily& family, double s) { return family.lambda(s); }
double t_delta_l(const CutoffFamily& family, double s, double delta) {
    return family.t_delta(s, delta);
}

double entropy_F(double s) {
    if (s < 0.0) {
        throw DomainError("entropy F evaluated at a negative argument");
    }
    if (s == 0.0) return 1.0;
    return s * std::log(s) + 1.0;
}

} // namespace nsfp
