#include "nsfp/galerkin/pdf_basis.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

namespace nsfp {

namespace {

std::vector<std::pair<int, int>> select_pairs(const Torus& torus, const ConfBasis& conf, int n,
                                              int max_index) {
    const int cap = ScalarFourierSet::capacity(torus, max_index);
    const ScalarFourierSet full(torus, cap, max_index);
    if (n < 1 || n > cap * conf.size()) {
        std::ostringstream msg;
        msg << "PDF basis: n = " << n << " must lie in [1, " << cap * conf.size() << "]";
        throw DomainError(msg.str());
    }
    std::vector<std::tuple<int, int, int>> keyed;
    for (int a = 0; a < cap; ++a) {
        for (int b = 0; b < conf.size(); ++b) keyed.emplace_back(full.shell(a) + conf.degree(b), a, b);
    }
    std::sort(keyed.begin(), keyed.end());
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i) {
        pairs.emplace_back(std::get<1>(keyed[static_cast<std::size_t>(i)]),
                           std::get<2>(keyed[static_cast<std::size_t>(i)]));
    }
    return pairs;
}

} // namespace

int pdf_spatial_max_index(const Torus& torus, const ConfBasis& conf, int n, int max_index) {
    const auto pairs = select_pairs(torus, conf, n, max_index);
    int count = 0;
    for (const auto& p : pairs) count = std::max(count, p.first + 1);
    return ScalarFourierSet(torus, count, max_index).max_index();
}

PdfBasis::PdfBasis(std::shared_ptr<const TorusGrid> grid, std::shared_ptr<const ConfBasis> conf, int n,
                   int max_index)
    : grid_(std::move(grid)), conf_(std::move(conf)) {
    pairs_ = select_pairs(grid_->torus(), *conf_, n, max_index);
    int count = 0;
    for (const auto& p : pairs_) count = std::max(count, p.first + 1);
    xset_ = std::make_shared<const ScalarFourierSet>(grid_->torus(), count, max_index);
    if (grid_->per_axis() < 2 * xset_->max_index() + 1) {
        std::ostringstream msg;
        msg << "PDF basis: grid of " << grid_->per_axis()
            << " points per axis cannot resolve wavevector index " << xset_->max_index();
        throw DomainError(msg.str());
    }
    xset_->tabulate(*grid_, xv_, xg_);
}

MatrixXd PdfBasis::coefficient_matrix(const VectorXd& d) const {
    if (d.size() != size()) throw DomainError("PDF coefficient vector has the wrong length");
    MatrixXd c = MatrixXd::Zero(spatial_count(), conf_count());
    for (int i = 0; i < size(); ++i) c(xindex(i), qindex(i)) = d(i);
    return c;
}

VectorXd PdfBasis::coefficient_vector(const MatrixXd& c) const {
    VectorXd d(size());
    for (int i = 0; i < size(); ++i) d(i) = c(xindex(i), qindex(i));
    return d;
}

MatrixXd PdfBasis::values(const VectorXd& d) const {
    return xv_ * coefficient_matrix(d) * conf_->values().transpose();
}

MatrixXd PdfBasis::grad_x(const VectorXd& d, int axis) const {
    return xgradient(axis) * coefficient_matrix(d) * conf_->values().transpose();
}

std::vector<MatrixXd> PdfBasis::grad_q(const VectorXd& d) const {
    const MatrixXd xc = xv_ * coefficient_matrix(d);
    std::vector<MatrixXd> out;
    for (int c = 0; c < conf_->components(); ++c) out.push_back(xc * conf_->gradient(c).transpose());
    return out;
}

} // namespace nsfp
