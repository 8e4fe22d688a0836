#pragma once

#include "nsfp/common.hpp"
#include "nsfp/confspace/conf_basis.hpp"
#include "nsfp/confspace/kramers.hpp"
#include "nsfp/confspace/maxwellian.hpp"
#include "nsfp/confspace/quadrature.hpp"
#include "nsfp/galerkin/assembly.hpp"
#include "nsfp/galerkin/pdf_basis.hpp"
#include "nsfp/galerkin/velocity_basis.hpp"
#include "nsfp/model/setup.hpp"
#include "nsfp/transport/density.hpp"
#include "nsfp/truncation/truncation.hpp"

#include <memory>

namespace nsfp {

/// Fixed discrete data of one run: bases, quadratures, tabulated Maxwellians
/// and the initial/forcing fields.  Built once, shared read-only.
class Discretization {
public:
    explicit Discretization(const ProblemSetup& setup);

    const ProblemSetup& setup() const noexcept { return setup_; }
    const MaterialLaws& laws() const noexcept { return setup_.laws; }
    const Torus& torus() const noexcept { return torus_; }
    const FeneChain& chain() const noexcept { return chain_; }
    const RouseSystem& rouse() const noexcept { return rouse_; }
    const CutoffFamily& cutoff() const noexcept { return cutoff_; }
    StressForm stress_form() const noexcept { return form_; }

    const ConfQuadrature& quad() const noexcept { return *quad_; }
    const Maxwellian& maxwellian() const noexcept { return maxwellian_; }
    const ApproxMaxwellian& approx() const noexcept { return approx_; }
    /// M at the q nodes (stress, drift).
    const NodalWeight& true_weight() const noexcept { return true_weight_; }
    /// M^m at the q nodes (mass, diffusion, entropy).
    const NodalWeight& mm_weight() const noexcept { return mm_weight_; }
    /// Weight used where the scheme asks for M (M^m under drift_uses_mm).
    const NodalWeight& drift_weight() const noexcept {
        return setup_.drift_uses_mm ? mm_weight_ : true_weight_;
    }

    const ConfBasis& conf() const noexcept { return *conf_; }
    const VelocityBasis& velocity() const noexcept { return *vbasis_; }
    std::shared_ptr<const VelocityBasis> velocity_ptr() const noexcept { return vbasis_; }
    const PdfBasis& pdf() const noexcept { return *pbasis_; }
    const TorusGrid& grid() const noexcept { return *vbasis_->grid(); }
    std::shared_ptr<const TorusGrid> grid_ptr() const noexcept { return vbasis_->grid(); }
    const FpStatics& statics() const noexcept { return statics_; }

    const ScalarField& rho0() const noexcept { return rho0_; }
    const ForcingFn& forcing() const noexcept { return forcing_; }
    /// Body force on the grid at time t (grid x 3).
    MatrixXd forcing_on_grid(double t) const;
    double transport_substep() const noexcept { return ds_; }

    VectorXd zeta_of(const VectorXd& rho) const;

private:
    ProblemSetup setup_;
    Torus torus_;
    FeneChain chain_;
    RouseSystem rouse_;
    CutoffFamily cutoff_;
    StressForm form_;
    std::shared_ptr<const ConfQuadrature> quad_;
    Maxwellian maxwellian_;
    ApproxMaxwellian approx_;
    NodalWeight true_weight_;
    NodalWeight mm_weight_;
    std::shared_ptr<const ConfBasis> conf_;
    std::shared_ptr<const VelocityBasis> vbasis_;
    std::shared_ptr<const PdfBasis> pbasis_;
    FpStatics statics_;
    ScalarField rho0_;
    ForcingFn forcing_;
    double ds_;
};

} // namespace nsfp
