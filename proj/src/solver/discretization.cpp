#include "nsfp/solver/discretization.hpp"

#include "nsfp/galerkin/fourier.hpp"

namespace nsfp {

namespace {

Torus torus_of(const ProblemSetup& s) {
    Torus t;
    t.dim = s.dim;
    for (int a = 0; a < s.dim; ++a) t.lengths(a) = s.lengths[static_cast<std::size_t>(a)];
    return t;
}

const ProblemSetup& checked(const ProblemSetup& s) {
    s.validate();
    return s;
}

} // namespace

Discretization::Discretization(const ProblemSetup& setup)
    : setup_(checked(setup)),
      torus_(torus_of(setup)),
      chain_(setup.chain()),
      rouse_(setup.rouse_system()),
      cutoff_(setup.ell),
      form_(parse_stress_form(setup.stress_form)),
      quad_(std::make_shared<const ConfQuadrature>(chain_, setup.radial_order, setup.angular_order)),
      maxwellian_(chain_),
      approx_(maxwellian_, setup.maxwellian_index) {
    true_weight_ = tabulate_maxwellian(maxwellian_, *quad_);
    mm_weight_ = tabulate_approx(approx_, *quad_);
    conf_ = std::make_shared<const ConfBasis>(build_conf_basis(setup.n_conf, approx_, *quad_));

    auto vb = std::make_shared<const VelocityBasis>(torus_, setup.m, setup.grid_n, setup.max_index);
    const int kp = pdf_spatial_max_index(torus_, *conf_, setup.n, setup.max_index);
    const int need = default_grid_size(std::max(vb->max_index(), kp));
    if (setup.grid_n == 0 && vb->grid()->per_axis() < need) {
        vb = std::make_shared<const VelocityBasis>(torus_, setup.m, need, setup.max_index);
    }
    vbasis_ = vb;
    pbasis_ = std::make_shared<const PdfBasis>(vbasis_->grid(), conf_, setup.n, setup.max_index);

    statics_.quad = quad_;
    statics_.mm = mm_weight_.values;
    statics_.drift = drift_weight().values;
    statics_.rouse = rouse_;

    rho0_ = initial_density(setup_);
    forcing_ = forcing_field(setup_);
    ds_ = setup.transport_substep > 0 ? setup.transport_substep : 0.5 * setup.dt;
}

MatrixXd Discretization::forcing_on_grid(double t) const {
    const TorusGrid& g = grid();
    MatrixXd f(g.size(), 3);
    for (int p = 0; p < g.size(); ++p) f.row(p) = forcing_(g.point(p), t).transpose();
    return f;
}

VectorXd Discretization::zeta_of(const VectorXd& rho) const {
    VectorXd z(rho.size());
    for (int p = 0; p < rho.size(); ++p) z(p) = laws().drag(rho(p));
    return z;
}

} // namespace nsfp
