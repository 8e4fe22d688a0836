#include <doctest.h>

#include "nsfp/confspace/conf_basis.hpp"
#include "nsfp/confspace/kramers.hpp"
#include "nsfp/confspace/maxwellian.hpp"
#include "nsfp/confspace/quadrature.hpp"
#include "nsfp/model/fene.hpp"
#include "oracles.hpp"

#include <cmath>

using namespace nsfp;

namespace {

// Reference integral of (1 - r^2/b)^{b/2} q1^e1 q2^e2 over the disc of radius sqrt(b).
double disc_moment(double b, int e1, int e2) {
    const double radial = oracle::radial_integral(
        [&](double r) { return std::pow(1 - r * r / b, 0.5 * b) * std::pow(r, e1 + e2); }, b, 2);
    const double angular = oracle::integrate(
        [&](double t) { return std::pow(std::cos(t), e1) * std::pow(std::sin(t), e2); }, 0.0,
        2 * oracle::pi);
    return radial * angular;
}

struct Poly2 {
    // c0 + c1 q1 + c2 q2 + c3 q1^2 + c4 q1 q2 + c5 q2^2
    double c[6];
    double value(double x, double y) const {
        return c[0] + c[1] * x + c[2] * y + c[3] * x * x + c[4] * x * y + c[5] * y * y;
    }
    double dx(double x, double y) const { return c[1] + 2 * c[3] * x + c[4] * y; }
    double dy(double x, double y) const { return c[2] + c[4] * x + 2 * c[5] * y; }
};

StressInput poly_input(const ConfQuadrature& quad, const Poly2& p, int nx) {
    StressInput in;
    in.zeta = VectorXd::Constant(nx, 1.3);
    in.psi.resize(nx, quad.size());
    in.grad_psi.assign(2, MatrixXd(nx, quad.size()));
    for (int x = 0; x < nx; ++x) {
        for (int a = 0; a < quad.size(); ++a) {
            const double q1 = quad.nodes()(a, 0), q2 = quad.nodes()(a, 1);
            const double shift = 0.1 * x;
            in.psi(x, a) = p.value(q1, q2) + shift;
            in.grad_psi[0](x, a) = p.dx(q1, q2);
            in.grad_psi[1](x, a) = p.dy(q1, q2);
        }
    }
    return in;
}

} // namespace

TEST_SUITE("confspace") {

TEST_CASE("Gauss-Jacobi integrates weighted polynomials exactly") {
    const double alpha = 1.3, beta = 0.5;
    const GaussRule rule = gauss_jacobi(6, alpha, beta);
    for (int p = 0; p <= 11; ++p) {
        double q = 0;
        for (int i = 0; i < 6; ++i) q += rule.weights(i) * std::pow(rule.nodes(i), p);
        const double ref = oracle::integrate_tanh_sinh(
            [&](double s) { return std::pow(1 - s, alpha) * std::pow(s, beta + p); }, 0.0, 1.0);
        CHECK(std::abs(q - ref) <= 1e-13 * std::abs(ref));
    }
}

TEST_CASE("partition_function examples") {
    CHECK(std::abs(partition_function(2.0, 2) - oracle::pi) <= 1e-12);
    const double z3 = 4 * oracle::pi * (2 * std::sqrt(2.0) / 3 - 4 * std::sqrt(2.0) / 10);
    CHECK(std::abs(partition_function(2.0, 3) - z3) <= 1e-12 * z3);
    CHECK(std::abs(partition_function(2.0, 3) - 4 * oracle::pi * 0.377124) <= 1e-5);
    const double ref = disc_moment(12.0, 0, 0);
    CHECK(std::abs(partition_function(12.0, 2) - ref) <= 1e-12 * ref);
    for (double b : {2.0, 4.0, 12.0}) {
        for (int d : {2, 3}) {
            const double z = partition_function(b, d);
            CHECK(std::abs(z - oracle::partition_closed_form(b, d)) <= 1e-12 * z);
        }
    }
    CHECK_THROWS_AS(partition_function(1.5, 2), DomainError);
}

TEST_CASE("maxwellian_eval examples") {
    const FeneChain chain(2, {2.0});
    CHECK(std::abs(maxwellian_eval(chain, Eigen::Vector2d::Zero()) - 1 / oracle::pi) <= 1e-14);
    CHECK(maxwellian_eval(chain, Eigen::Vector2d(std::sqrt(2.0), 0.0)) == 0.0);
    CHECK_THROWS_AS(maxwellian_eval(chain, Eigen::Vector2d(1.5, 0.0)), DomainError);

    const FeneChain two(2, {4.0, 12.0});
    const Maxwellian m2(two);
    const Maxwellian m_a(FeneChain(2, {4.0})), m_b(FeneChain(2, {12.0}));
    for (int i = 0; i < 50; ++i) {
        Eigen::Vector4d q(oracle::uniform(-1, 1), oracle::uniform(-1, 1), oracle::uniform(-2, 2),
                          oracle::uniform(-2, 2));
        const double lhs = m2.eval(q);
        const double rhs = m_a.eval(q.head<2>()) * m_b.eval(q.tail<2>());
        CHECK(std::abs(lhs - rhs) <= 1e-14 * rhs);
        CHECK(std::abs(m2.log_eval(q) - std::log(lhs)) <= 1e-12);
    }
}

TEST_CASE("Maxwellian gradient matches finite differences") {
    const Maxwellian m(FeneChain(2, {4.0, 12.0}));
    Eigen::Vector4d q(0.3, -0.7, 1.1, 0.4);
    const VectorXd g = m.gradient(q);
    for (int c = 0; c < 4; ++c) {
        Eigen::Vector4d qp = q, qm = q;
        qp(c) += 1e-6;
        qm(c) -= 1e-6;
        const double fd = (m.eval(qp) - m.eval(qm)) / 2e-6;
        CHECK(std::abs(g(c) - fd) <= 1e-7 * std::max(1.0, std::abs(fd)));
    }
}

TEST_CASE("quadrature exactness against an adaptive oracle") {
    for (double b : {2.0, 4.0, 12.0}) {
        const FeneChain chain(2, {b});
        const ConfQuadrature quad(chain, 8, 16);
        for (int e1 = 0; e1 <= 6; ++e1) {
            for (int e2 = 0; e2 + e1 <= 6; ++e2) {
                double qv = 0;
                for (int a = 0; a < quad.size(); ++a) {
                    const double q1 = quad.nodes()(a, 0), q2 = quad.nodes()(a, 1);
                    qv += quad.weights()(a) * std::pow(1 - quad.squared_radii()(a, 0) / b, 0.5 * b) *
                          std::pow(q1, e1) * std::pow(q2, e2);
                }
                const double ref = disc_moment(b, e1, e2);
                const double scale = disc_moment(b, 0, 0) * std::pow(b, 0.5 * (e1 + e2));
                CHECK(std::abs(qv - ref) <= 1e-12 * scale);
            }
        }
    }
}

TEST_CASE("Maxwellian normalization over the (b, d) test matrix") {
    const std::pair<double, int> cases[] = {{2.0, 2}, {4.0, 2}, {12.0, 2}, {4.0, 3}};
    for (auto [b, d] : cases) {
        const FeneChain chain(d, {b});
        const ConfQuadrature quad(chain, 8, 16);
        const NodalWeight w = tabulate_maxwellian(Maxwellian(chain), quad);
        CHECK(std::abs(quad.weights().dot(w.values) - 1.0) <= 1e-10);
    }
    const FeneChain two(2, {4.0, 12.0});
    const ConfQuadrature quad(two, 6, 12);
    const NodalWeight w = tabulate_maxwellian(Maxwellian(two), quad);
    CHECK(std::abs(quad.weights().dot(w.values) - 1.0) <= 1e-10);
}

TEST_CASE("Kramers identity int M U' q q^T = I") {
    const std::pair<double, int> cases[] = {{2.0, 2}, {4.0, 2}, {12.0, 2}, {4.0, 3}};
    for (auto [b, d] : cases) {
        const FeneChain chain(d, {b});
        const ConfQuadrature quad(chain, 8, 16);
        const NodalWeight w = tabulate_maxwellian(Maxwellian(chain), quad);
        MatrixXd S = MatrixXd::Zero(d, d);
        for (int a = 0; a < quad.size(); ++a) {
            const VectorXd q = quad.node(a);
            S += quad.weights()(a) * w.values(a) * w.uprime(a, 0) * q * q.transpose();
        }
        CHECK((S - MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff() <= 1e-10);
    }
}

TEST_CASE("approximate Maxwellian floor and defect ladder") {
    const FeneChain chain(2, {4.0});
    const Maxwellian m(chain);
    const ConfQuadrature quad(chain, 8, 16);
    double prev = std::numeric_limits<double>::infinity();
    for (int idx : {4, 8, 16, 32}) {
        const ApproxMaxwellian mm(m, idx);
        const NodalWeight w = tabulate_approx(mm, quad);
        CHECK(w.values.minCoeff() >= 1.0 / idx);
        double defect = 0.0;
        for (int i = 0; i < 400; ++i) {
            const double r = std::sqrt(oracle::uniform(0, 4.0));
            const double t = oracle::uniform(0, 2 * oracle::pi);
            const Eigen::Vector2d q(r * std::cos(t), r * std::sin(t));
            defect = std::max(defect, std::abs(mm.eval(q) - m.eval(q)));
            CHECK(std::abs(mm.core(m.eval(q)) - m.eval(q)) <= 1.0 / idx + 1e-15);
        }
        CHECK(defect <= 1.0 / idx);
        CHECK(defect <= prev);
        prev = defect;
    }
    CHECK(ApproxMaxwellian(m, 0).floor() == 0.0);
}

TEST_CASE("build_conf_basis orthonormality, constant mode and gradients") {
    const FeneChain chain(2, {4.0});
    const Maxwellian m(chain);
    const ApproxMaxwellian mm(m, 8);
    const ConfQuadrature quad(chain, 8, 16);
    const NodalWeight w = tabulate_approx(mm, quad);

    const ConfBasis one = build_conf_basis(1, mm, quad);
    const double mass = quad.weights().dot(w.values);
    CHECK(std::abs(one.values()(0, 0) - 1 / std::sqrt(mass)) <= 1e-14);

    const ConfBasis basis = build_conf_basis(10, mm, quad);
    CHECK(basis.gram_residual() <= 1e-10);
    // Oracle Gram matrix computed directly from the tabulated values.
    for (int a = 0; a < 6; ++a) {
        for (int c = 0; c < 6; ++c) {
            double g = 0;
            for (int i = 0; i < quad.size(); ++i) {
                g += quad.weights()(i) * w.values(i) * basis.values()(i, a) * basis.values()(i, c);
            }
            CHECK(std::abs(g - (a == c ? 1.0 : 0.0)) <= 1e-10);
        }
    }
    CHECK((basis.values().col(0).array() - basis.values()(0, 0)).abs().maxCoeff() == 0.0);
    CHECK(basis.degree(0) == 0);
    CHECK(basis.degree(1) == 1);
    CHECK(basis.degree(3) == 2);

    for (int a = 0; a < quad.size(); a += 17) {
        const VectorXd q = quad.node(a);
        const VectorXd v = basis.eval(q);
        CHECK((v.transpose() - basis.values().row(a)).cwiseAbs().maxCoeff() <= 1e-12);
        for (int c = 0; c < 2; ++c) {
            VectorXd qp = q, qm = q;
            qp(c) += 1e-6;
            qm(c) -= 1e-6;
            const VectorXd fd = (basis.eval(qp) - basis.eval(qm)) / 2e-6;
            for (int beta = 0; beta < basis.size(); ++beta) {
                const double g = basis.gradient(c)(a, beta);
                CHECK(std::abs(g - fd(beta)) <= 1e-6 * std::max(1.0, std::abs(g)));
            }
        }
    }
}

TEST_CASE("basis reproduces polynomials of covered degree") {
    const FeneChain chain(2, {4.0});
    const ApproxMaxwellian mm(Maxwellian(chain), 8);
    const ConfQuadrature quad(chain, 8, 16);
    const ConfBasis basis = build_conf_basis(monomial_count(2, 3), mm, quad);
    const VectorXd& W = basis.inner_weights();
    for (int trial = 0; trial < 5; ++trial) {
        double c[10];
        for (double& x : c) x = oracle::uniform(-1, 1);
        VectorXd f(quad.size());
        for (int a = 0; a < quad.size(); ++a) {
            const double x = quad.nodes()(a, 0), y = quad.nodes()(a, 1);
            f(a) = c[0] + c[1] * x + c[2] * y + c[3] * x * x + c[4] * x * y + c[5] * y * y +
                   c[6] * x * x * x + c[7] * x * x * y + c[8] * x * y * y + c[9] * y * y * y;
        }
        const VectorXd coef = basis.values().transpose() * (W.asDiagonal() * f);
        const VectorXd rec = basis.values() * coef;
        CHECK((rec - f).cwiseAbs().maxCoeff() <= 1e-9 * std::max(1.0, f.cwiseAbs().maxCoeff()));
    }
}

TEST_CASE("rank deficiency names the degree") {
    const FeneChain chain(2, {4.0});
    const ApproxMaxwellian mm(Maxwellian(chain), 8);
    const ConfQuadrature coarse(chain, 2, 4);
    CHECK_THROWS_WITH_AS(build_conf_basis(10, mm, coarse), doctest::Contains("degree"),
                         NumericalError);
}

TEST_CASE("kramers_stress equilibrium, zero and random polynomial") {
    for (double b : {2.0, 4.0, 12.0}) {
        const FeneChain chain(2, {b});
        const ConfQuadrature quad(chain, 8, 16);
        const NodalWeight w = tabulate_maxwellian(Maxwellian(chain), quad);
        const CutoffFamily cutoff(50.0);

        Poly2 one{{1, 0, 0, 0, 0, 0}};
        StressInput eq = poly_input(quad, one, 1);
        for (auto form : {StressForm::kramers, StressForm::divergence, StressForm::gradient}) {
            const StressField s = kramers_stress(chain, 2.0, quad, w, eq, cutoff, form);
            CHECK(s.tau[0].cwiseAbs().maxCoeff() <= 1e-10);
        }

        StressInput zero = poly_input(quad, Poly2{{0, 0, 0, 0, 0, 0}}, 1);
        for (auto form : {StressForm::kramers, StressForm::divergence, StressForm::gradient}) {
            const StressField s = kramers_stress(chain, 2.0, quad, w, zero, cutoff, form);
            CHECK(s.tau[0].cwiseAbs().maxCoeff() == 0.0);
        }

        for (int trial = 0; trial < 5; ++trial) {
            Poly2 p{};
            p.c[0] = 2.0;
            for (int i = 1; i < 6; ++i) p.c[i] = oracle::uniform(-0.1, 0.1);
            const StressInput in = poly_input(quad, p, 3);
            CHECK(in.psi.minCoeff() > 0.0);
            CHECK(stress_form_deviation(chain, 2.0, quad, w, in, cutoff) <= 1e-8);
            const StressField kr = kramers_stress(chain, 2.0, quad, w, in, cutoff, StressForm::kramers);
            CHECK((kr.tau[1] - kr.tau[1].transpose()).norm() <= 1e-15);
        }
    }
    CHECK_THROWS_AS(parse_stress_form("virial"), DomainError);
    CHECK(parse_stress_form("gradient") == StressForm::gradient);
}

TEST_CASE("negative psi-hat is clamped and counted") {
    const FeneChain chain(2, {4.0});
    const ConfQuadrature quad(chain, 4, 8);
    const NodalWeight w = tabulate_maxwellian(Maxwellian(chain), quad);
    StressInput in = poly_input(quad, Poly2{{-1, 0, 0, 0, 0, 0}}, 2);
    const StressField s = kramers_stress(chain, 1.0, quad, w, in, CutoffFamily(5.0), StressForm::kramers);
    CHECK(s.clamped == 2 * quad.size());
    CHECK(s.tau[0].cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("FENE sandwich constants") {
    for (double b : {2.0, 4.0, 12.0}) {
        const auto c = sample_fene_constants(b, 1000);
        CHECK(c.c3 >= std::sqrt(b) / 2 - 1e-12);
        CHECK(c.c4 <= std::sqrt(b) + 1e-12);
        CHECK(c.c4 == doctest::Approx(std::sqrt(b)));
    }
}

} // TEST_SUITE
