#pragma once

// Independent reference computations for the test suites.  Nothing here
// calls into the library's quadrature or basis code.

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <functional>
#include <random>

namespace oracle {

inline constexpr double pi = 3.14159265358979323846;

/// Adaptive 1-D integral on [a, b].
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-14) {
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, tol);
}

/// Endpoint-singular-safe adaptive integral on [a, b].
inline double integrate_tanh_sinh(const std::function<double(double)>& f, double a, double b) {
    boost::math::quadrature::tanh_sinh<double> ts;
    return ts.integrate(f, a, b);
}

/// int over the d-ball of radius sqrt(b) of g(r) * Y(direction), for a radial
/// profile g; `angular` is the integral of the angular factor over the sphere.
inline double radial_integral(const std::function<double(double)>& g, double b, int d) {
    const double R = std::sqrt(b);
    return integrate_tanh_sinh([&](double r) { return g(r) * std::pow(r, d - 1); }, 0.0, R);
}

inline double sphere_area(int d) { return d == 2 ? 2.0 * pi : 4.0 * pi; }

/// Closed-form Z(b, d) = (b^{d/2}/2) |S^{d-1}| B(b/2 + 1, d/2).
inline double partition_closed_form(double b, int d) {
    const double beta = std::exp(std::lgamma(0.5 * b + 1.0) + std::lgamma(0.5 * d) -
                                 std::lgamma(0.5 * b + 1.0 + 0.5 * d));
    return 0.5 * std::pow(b, 0.5 * d) * sphere_area(d) * beta;
}

/// Deterministic generator shared by the property tests.
inline std::mt19937_64& rng() {
    static std::mt19937_64 gen(20240611ULL);
    return gen;
}

inline double uniform(double lo, double hi) {
    std::uniform_real_distribution<double> dist(lo, hi);
    return dist(rng());
}

} // namespace oracle
