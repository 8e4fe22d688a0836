#include <doctest.h>

#include "nsfp/galerkin/assembly.hpp"
#include "nsfp/solver/discretization.hpp"
#include "oracles.hpp"

#include <cmath>

using namespace nsfp;

namespace {

ProblemSetup small_setup(int m = 8, int n = 12) {
    ProblemSetup s;
    s.final_time = 0.0;
    s.m = m;
    s.n = n;
    s.n_conf = 6;
    return s;
}

VelocityInputs resting_inputs(const Discretization& disc, double rho) {
    const int np = disc.grid().size();
    VelocityInputs in;
    in.rho = VectorXd::Constant(np, rho);
    in.u = MatrixXd::Zero(np, 3);
    in.varrho = VectorXd::Zero(np);
    in.tau.assign(static_cast<std::size_t>(np), Mat3::Zero());
    in.f = MatrixXd::Zero(np, 3);
    return in;
}

FpInputs fp_inputs(const Discretization& disc, const VectorXd& c) {
    FpInputs in;
    in.zeta = VectorXd::Ones(disc.grid().size());
    in.u = disc.velocity().field(c);
    in.grad_u = disc.velocity().field_gradient(c);
    const int n = disc.pdf().size();
    in.xi = VectorXd::Unit(n, 0) / disc.pdf().values(VectorXd::Unit(n, 0))(0, 0); // psi-hat = 1
    return in;
}

VectorXd random_vector(int n) {
    VectorXd v(n);
    for (int i = 0; i < n; ++i) v(i) = oracle::uniform(-1, 1);
    return v;
}

} // namespace

TEST_SUITE("galerkin") {

TEST_CASE("velocity modes are orthonormal and divergence free on the grid") {
    const VelocityBasis vb(Torus{}, 12);
    const TorusGrid& g = *vb.grid();
    MatrixXd gram = MatrixXd::Zero(vb.size(), vb.size());
    for (int a = 0; a < 2; ++a) gram += g.weight() * vb.values(a).transpose() * vb.values(a);
    CHECK((gram - MatrixXd::Identity(vb.size(), vb.size())).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((vb.gradient(0, 0) + vb.gradient(1, 1)).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("first 2-D shell holds four modes") {
    const VelocityBasis vb(Torus{}, 8);
    for (int i = 0; i < 4; ++i) CHECK(vb.wavevector(i).shell == 1);
    CHECK(vb.wavevector(4).shell == 2);
    CHECK(vb.wavevector(0).k2 == doctest::Approx(1.0));
}

TEST_CASE("asking for more modes than max_index allows is an error") {
    const int cap = VelocityBasis::capacity(Torus{}, 2);
    CHECK(cap > 0);
    CHECK_NOTHROW(VelocityBasis(Torus{}, cap, 0, 2));
    CHECK_THROWS_AS(VelocityBasis(Torus{}, cap + 1, 0, 2), DomainError);
}

TEST_CASE("velocity blocks at rest: M = rho I, symmetric viscosity, no load") {
    const Discretization disc(small_setup());
    const VelocitySystem sys = assemble_velocity_system(disc.velocity(), resting_inputs(disc, 1.7), disc.laws());
    const int m = disc.velocity().size();
    CHECK((sys.M - 1.7 * MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((sys.viscous - sys.viscous.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(sys.B.cwiseAbs().maxCoeff() == 0.0);
    // Viscous eigenvalues are |k|^2 / 2 for mu = 1.
    const Eigen::SelfAdjointEigenSolver<MatrixXd> es(sys.viscous);
    CHECK(es.eigenvalues().minCoeff() == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("convection is antisymmetric for constant density and solenoidal u") {
    const Discretization disc(small_setup());
    VelocityInputs in = resting_inputs(disc, 1.0);
    in.u = disc.velocity().field(random_vector(disc.velocity().size()));
    const VelocitySystem sys = assemble_velocity_system(disc.velocity(), in, disc.laws());
    CHECK((sys.convection + sys.convection.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("PDF basis is orthonormal in L2_{M^m}") {
    ProblemSetup s = small_setup(4, 20);
    s.maxwellian_index = 8;
    const Discretization disc(s);
    const MatrixXd N = fp_mass_matrix(disc.pdf(), disc.statics(), VectorXd::Ones(disc.grid().size()));
    CHECK((N - MatrixXd::Identity(N.rows(), N.cols())).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK(disc.pdf().xindex(0) == 0);
    CHECK(disc.pdf().qindex(0) == 0);
}

TEST_CASE("no drift without a velocity gradient") {
    const Discretization disc(small_setup());
    const FpSystem sys = assemble_fp_system(disc.pdf(), disc.statics(),
                                            fp_inputs(disc, VectorXd::Zero(disc.velocity().size())), disc.cutoff());
    CHECK(sys.R.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("the constant test function sees no flux") {
    const Discretization disc(small_setup(8, 30));
    const FpSystem sys = assemble_fp_system(disc.pdf(), disc.statics(),
                                            fp_inputs(disc, random_vector(disc.velocity().size())), disc.cutoff());
    CHECK(sys.P.row(0).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(std::abs(sys.R(0)) <= 1e-12);
}

TEST_CASE("q-diffusion of the linear mode matches direct quadrature of the Maxwellian") {
    // Exact M, classical single spring (A = 2), psi-hat mode q_1 / sigma, sigma^2 = int M q_1^2.
    const Discretization disc(small_setup());
    const double b = 4.0;
    const double z = oracle::partition_closed_form(b, 2);
    const double radial = oracle::radial_integral(
        [&](double r) { return std::pow(1 - r * r / b, 0.5 * b) * r * r; }, b, 2);
    const double sigma2 = radial * oracle::pi / z;
    int idx = -1;
    for (int i = 0; i < disc.pdf().size(); ++i) {
        if (disc.pdf().xindex(i) == 0 && disc.pdf().qindex(i) == 1) idx = i;
    }
    REQUIRE(idx >= 0);
    const FpSystem sys = assemble_fp_system(disc.pdf(), disc.statics(),
                                            fp_inputs(disc, VectorXd::Zero(disc.velocity().size())), disc.cutoff());
    CHECK(-sys.P(idx, idx) == doctest::Approx(2.0 / sigma2).epsilon(1e-10));
}

TEST_CASE("polymer number density from the positive part") {
    const Discretization disc(small_setup());
    const int n = disc.pdf().size();
    const VectorXd zeta = VectorXd::Ones(disc.grid().size());
    VectorXd d = VectorXd::Zero(n);
    const double unit = 1.0 / disc.pdf().values(VectorXd::Unit(n, 0))(0, 0);

    d(0) = unit; // psi-hat = 1
    PolymerDensity one = polymer_number_density(disc.pdf(), disc.statics(), zeta, d);
    CHECK((one.varrho.array() - 1.0).abs().maxCoeff() <= 1e-12);
    CHECK(one.clamped == 0);

    PolymerDensity zero = polymer_number_density(disc.pdf(), disc.statics(), zeta, VectorXd::Zero(n));
    CHECK(zero.varrho.cwiseAbs().maxCoeff() == 0.0);

    d(0) = -unit;
    PolymerDensity neg = polymer_number_density(disc.pdf(), disc.statics(), zeta, d);
    CHECK(neg.varrho.cwiseAbs().maxCoeff() == 0.0);
    CHECK(neg.clamp_fraction() == 1.0);
}

TEST_CASE("non-finite inputs are reported") {
    const Discretization disc(small_setup());
    FpInputs in = fp_inputs(disc, VectorXd::Zero(disc.velocity().size()));
    in.zeta(3) = std::nan("");
    CHECK_THROWS_AS(assemble_fp_system(disc.pdf(), disc.statics(), in, disc.cutoff()), NumericalError);
}

}
