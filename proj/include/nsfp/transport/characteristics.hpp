#pragma once

#include "nsfp/common.hpp"
#include "nsfp/transport/torus.hpp"
#include "nsfp/transport/velocity_field.hpp"

namespace nsfp {

/// Backward/forward characteristics dX/ds = v(X, s), X(x, t; t) = x, integrated
/// with classical RK4.  The substep is at most `ds`; steps are shortened so
/// they land on the field's time breakpoints.
class CharMap {
public:
    CharMap(const VelocityField& field, double ds);

    double substep() const noexcept { return ds_; }
    const VelocityField& field() const noexcept { return *field_; }

    /// X(x, t; s) as a lift in R^d (no wrapping).
    Vec3 lift(const Vec3& x, double t, double s) const;

    /// X(x, t; s) together with its Jacobian d X / d x from the variational
    /// equation d/ds (grad X) = grad v(X) grad X.
    std::pair<Vec3, Mat3> lift_with_jacobian(const Vec3& x, double t, double s) const;

private:
    const VelocityField* field_;
    double ds_;

    std::vector<double> stations(double t, double s) const;
};

/// X(x, t; s) reduced to the fundamental cell when the field is periodic.
Vec3 integrate_characteristic(const CharMap& map, const Torus& torus, const Vec3& x, double t, double s);

/// det grad_x X(x, t; s).
double jacobian_det(const CharMap& map, const Vec3& x, double t, double s, int dim);

} // namespace nsfp
