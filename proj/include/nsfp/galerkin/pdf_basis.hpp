#pragma once

#include "nsfp/common.hpp"
#include "nsfp/confspace/conf_basis.hpp"
#include "nsfp/galerkin/velocity_basis.hpp"
#include "nsfp/transport/torus.hpp"

#include <memory>

namespace nsfp {

/// Tensor functions phi_i(x, q) = X_a(x) Q_beta(q), orthonormal in L^2_{M^m}(Omega x D).
///
/// Pairs (a, beta) are ranked by shell(a) + degree(beta), then a, then beta,
/// and the first n are kept, so phi_1 is the constant.  A coefficient vector
/// maps to a matrix C (spatial functions x configuration functions), and the
/// field on the grid-by-node lattice is X C Q^T.
class PdfBasis {
public:
    PdfBasis(std::shared_ptr<const TorusGrid> grid, std::shared_ptr<const ConfBasis> conf, int n,
             int max_index = 8);

    int size() const noexcept { return static_cast<int>(pairs_.size()); }
    int spatial_count() const noexcept { return xset_->size(); }
    int conf_count() const noexcept { return conf_->size(); }
    int xindex(int i) const { return pairs_.at(static_cast<std::size_t>(i)).first; }
    int qindex(int i) const { return pairs_.at(static_cast<std::size_t>(i)).second; }

    const TorusGrid& grid() const noexcept { return *grid_; }
    std::shared_ptr<const TorusGrid> grid_ptr() const noexcept { return grid_; }
    const ConfBasis& conf() const noexcept { return *conf_; }
    const ScalarFourierSet& spatial() const noexcept { return *xset_; }

    /// X_a at the grid points (grid x spatial_count) and its gradient per axis.
    const MatrixXd& xvalues() const noexcept { return xv_; }
    const MatrixXd& xgradient(int axis) const { return xg_.at(static_cast<std::size_t>(axis)); }

    MatrixXd coefficient_matrix(const VectorXd& d) const;
    VectorXd coefficient_vector(const MatrixXd& c) const;

    /// psi-hat at (grid point, q node).
    MatrixXd values(const VectorXd& d) const;
    /// d psi-hat / d x_axis.
    MatrixXd grad_x(const VectorXd& d, int axis) const;
    /// d psi-hat / d q_c, one matrix per configuration component.
    std::vector<MatrixXd> grad_q(const VectorXd& d) const;

private:
    std::shared_ptr<const TorusGrid> grid_;
    std::shared_ptr<const ConfBasis> conf_;
    std::shared_ptr<const ScalarFourierSet> xset_;
    std::vector<std::pair<int, int>> pairs_;
    MatrixXd xv_;
    std::vector<MatrixXd> xg_;
};

/// Largest wavevector index used by the first n pairs of a PDF basis.
int pdf_spatial_max_index(const Torus& torus, const ConfBasis& conf, int n, int max_index = 8);

} // namespace nsfp
