#pragma once

#include "nsfp/common.hpp"
#include "nsfp/transport/characteristics.hpp"
#include "nsfp/transport/torus.hpp"

#include <functional>
#include <memory>

namespace nsfp {

/// Backward flow map Phi_t(x) = X(x, t; 0) sampled on a torus grid.
///
/// Maps are built by composition over time windows,
///   Phi_{t1}(x) = Phi_{t0}(X(x, t1; t0)),
/// with Phi_{t0} evaluated off the grid by trigonometric interpolation of the
/// periodic displacement Phi - id.  The density is rho_0 composed with the
/// map, so every value it takes is a value of rho_0.
class FlowMap {
public:
    static FlowMap identity(std::shared_ptr<const TorusGrid> grid);

    double time() const noexcept { return time_; }
    const TorusGrid& grid() const noexcept { return *grid_; }
    std::shared_ptr<const TorusGrid> grid_ptr() const noexcept { return grid_; }

    /// Phi at grid point p (lifted, not wrapped).
    const Vec3& at(int p) const { return phi_[static_cast<std::size_t>(p)]; }

    /// Phi at an arbitrary point.
    Vec3 operator()(const Vec3& x) const;

    /// Map at time t_next obtained by following `field` back to the current time.
    FlowMap advance(const VelocityField& field, double t_next, double ds) const;

    bool is_identity() const noexcept { return identity_; }

private:
    FlowMap() = default;
    std::shared_ptr<const TorusGrid> grid_;
    double time_ = 0.0;
    bool identity_ = true;
    std::vector<Vec3> phi_;
    std::vector<std::shared_ptr<const PeriodicInterpolant>> displacement_;
    void build_interpolants();
};

/// rho(x_p, t) = rho_0(Phi_t(x_p)) on the grid.
VectorXd density_on_grid(const FlowMap& map, const ScalarField& rho0);

/// beta(rho_0)(Phi_t(x_p)): the renormalized density, evaluated through the same map.
VectorXd renormalized_density(const std::function<double(double)>& beta, const FlowMap& map,
                              const ScalarField& rho0);

/// rho_0(X(x, t; 0)) by integrating the characteristic all the way back to 0.
double density_at(const ScalarField& rho0, const CharMap& map, const Torus& torus, const Vec3& x,
                  double t);

} // namespace nsfp
