#include "nsfp/confspace/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace nsfp {

GaussRule gauss_jacobi(int n, double alpha, double beta) {
    if (n < 1) throw DomainError("Gauss-Jacobi rule needs at least one node");
    if (!(alpha > -1.0) || !(beta > -1.0)) {
        throw DomainError("Gauss-Jacobi exponents must exceed -1");
    }
    // Jacobi matrix of the monic recurrence on (-1, 1) for (1-x)^alpha (1+x)^beta.
    const double ab = alpha + beta;
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    J(0, 0) = (beta - alpha) / (ab + 2.0);
    for (int k = 1; k < n; ++k) {
        const double t = 2.0 * k + ab;
        J(k, k) = (beta * beta - alpha * alpha) / (t * (t + 2.0));
        const double off = std::sqrt(4.0 * k * (k + alpha) * (k + beta) * (k + ab) /
                                     (t * t * (t + 1.0) * (t - 1.0)));
        J(k, k - 1) = off;
        J(k - 1, k) = off;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(J);
    // Total mass of the weight on (0, 1): B(alpha+1, beta+1).
    const double mu0 = std::exp(std::lgamma(alpha + 1.0) + std::lgamma(beta + 1.0) -
                                std::lgamma(ab + 2.0));
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        const double v0 = eig.eigenvectors()(0, i);
        rule.nodes(i) = 0.5 * (1.0 + eig.eigenvalues()(i));
        rule.weights(i) = mu0 * v0 * v0;
    }
    return rule;
}

GaussRule gauss_legendre(int n) {
    GaussRule rule = gauss_jacobi(n, 0.0, 0.0);
    rule.nodes = (2.0 * rule.nodes.array() - 1.0).matrix();
    rule.weights *= 2.0;
    return rule;
}

namespace {

struct BallRule {
    MatrixXd points; // rows are points in R^d
    VectorXd weights;
};

BallRule ball_rule(int dim, double b, int radial, int angular) {
    const double alpha = 0.5 * b - 1.0;
    const double beta = 0.5 * (dim - 2);
    const GaussRule rad = gauss_jacobi(radial, alpha, beta);
    const double scale = 0.5 * std::pow(b, 0.5 * dim);

    std::vector<Eigen::VectorXd> dirs;
    std::vector<double> dir_w;
    if (dim == 2) {
        for (int j = 0; j < angular; ++j) {
            const double th = 2.0 * kPi * j / angular;
            dirs.push_back(Eigen::Vector2d(std::cos(th), std::sin(th)));
            dir_w.push_back(2.0 * kPi / angular);
        }
    } else {
        const GaussRule pol = gauss_legendre(angular);
        const int nphi = 2 * angular;
        for (int i = 0; i < angular; ++i) {
            const double c = pol.nodes(i);
            const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
            for (int j = 0; j < nphi; ++j) {
                const double ph = 2.0 * kPi * j / nphi;
                dirs.push_back(Eigen::Vector3d(s * std::cos(ph), s * std::sin(ph), c));
                dir_w.push_back(pol.weights(i) * 2.0 * kPi / nphi);
            }
        }
    }

    const int total = radial * static_cast<int>(dirs.size());
    BallRule out;
    out.points.resize(total, dim);
    out.weights.resize(total);
    int a = 0;
    for (int i = 0; i < radial; ++i) {
        const double s = rad.nodes(i);
        const double r = std::sqrt(b * s);
        const double w = rad.weights(i) / std::pow(1.0 - s, alpha) * scale;
        for (std::size_t j = 0; j < dirs.size(); ++j, ++a) {
            out.points.row(a) = r * dirs[j].transpose();
            out.weights(a) = w * dir_w[j];
        }
    }
    return out;
}

} // namespace

ConfQuadrature::ConfQuadrature(const FeneChain& chain, int radial_order, int angular_order)
    : dim_(chain.dim()), springs_(chain.springs()), radial_order_(radial_order),
      angular_order_(angular_order) {
    if (radial_order < 1 || angular_order < 1) {
        throw DomainError("configuration quadrature orders must be positive");
    }
    if (springs_ > 2) {
        throw DomainError("configuration quadrature supports at most K = 2 springs");
    }
    std::vector<BallRule> balls;
    for (int j = 0; j < springs_; ++j) {
        balls.push_back(ball_rule(dim_, chain.b(j), radial_order, angular_order));
    }

    int total = 1;
    for (const auto& ball : balls) total *= static_cast<int>(ball.weights.size());
    nodes_.resize(total, components());
    weights_.resize(total);
    r2_.resize(total, springs_);

    // Tensor product, first spring varying slowest.
    for (int a = 0; a < total; ++a) {
        int rem = a;
        double w = 1.0;
        for (int j = springs_ - 1; j >= 0; --j) {
            const auto& ball = balls[static_cast<std::size_t>(j)];
            const int nj = static_cast<int>(ball.weights.size());
            const int idx = rem % nj;
            rem /= nj;
            nodes_.block(a, j * dim_, 1, dim_) = ball.points.row(idx);
            r2_(a, j) = ball.points.row(idx).squaredNorm();
            w *= ball.weights(idx);
        }
        weights_(a) = w;
    }

    // Radial part is exact for polynomials of degree 2R - 1 in s, i.e. degree
    // 4R - 2 in q; the angular rule resolves harmonics below its order.
    const int radial_degree = 4 * radial_order - 2;
    const int angular_degree = dim_ == 2 ? angular_order - 1 : 2 * angular_order - 1;
    exact_degree_ = std::min(radial_degree, angular_degree);
}

} // namespace nsfp
