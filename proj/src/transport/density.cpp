#include "nsfp/transport/density.hpp"

namespace nsfp {

FlowMap FlowMap::identity(std::shared_ptr<const TorusGrid> grid) {
    FlowMap m;
    m.grid_ = std::move(grid);
    m.time_ = 0.0;
    m.identity_ = true;
    m.phi_ = m.grid_->points();
    return m;
}

void FlowMap::build_interpolants() {
    displacement_.clear();
    const int n = grid_->size();
    for (int a = 0; a < grid_->dim(); ++a) {
        VectorXd disp(n);
        for (int p = 0; p < n; ++p) disp(p) = phi_[static_cast<std::size_t>(p)](a) - grid_->point(p)(a);
        displacement_.push_back(std::make_shared<const PeriodicInterpolant>(*grid_, disp));
    }
}

Vec3 FlowMap::operator()(const Vec3& x) const {
    if (identity_) return x;
    const Vec3 y = grid_->torus().wrap(x);
    Vec3 out = x;
    for (int a = 0; a < grid_->dim(); ++a) out(a) += (*displacement_[static_cast<std::size_t>(a)])(y);
    return out;
}

FlowMap FlowMap::advance(const VelocityField& field, double t_next, double ds) const {
    const CharMap chars(field, ds);
    FlowMap next;
    next.grid_ = grid_;
    next.time_ = t_next;
    next.identity_ = false;
    next.phi_.resize(phi_.size());
    for (int p = 0; p < grid_->size(); ++p) {
        const Vec3 y = chars.lift(grid_->point(p), t_next, time_);
        next.phi_[static_cast<std::size_t>(p)] = (*this)(y);
    }
    next.build_interpolants();
    return next;
}

VectorXd density_on_grid(const FlowMap& map, const ScalarField& rho0) {
    const Torus& torus = map.grid().torus();
    VectorXd rho(map.grid().size());
    for (int p = 0; p < rho.size(); ++p) rho(p) = rho0(torus.wrap(map.at(p)));
    return rho;
}

VectorXd renormalized_density(const std::function<double(double)>& beta, const FlowMap& map,
                              const ScalarField& rho0) {
    const Torus& torus = map.grid().torus();
    VectorXd out(map.grid().size());
    for (int p = 0; p < out.size(); ++p) out(p) = beta(rho0(torus.wrap(map.at(p))));
    return out;
}

double density_at(const ScalarField& rho0, const CharMap& map, const Torus& torus, const Vec3& x,
                  double t) {
    return rho0(integrate_characteristic(map, torus, x, t, 0.0));
}

} // namespace nsfp
