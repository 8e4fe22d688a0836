#include "nsfp/model/rouse.hpp"

#include <sstream>

namespace nsfp {

RouseSystem::RouseSystem(MatrixXd a) : a_(std::move(a)) {
    if (a_.rows() == 0 || a_.rows() != a_.cols()) {
        throw DomainError("Rouse matrix must be square and non-empty");
    }
    const double scale = a_.cwiseAbs().maxCoeff();
    if (!(a_ - a_.transpose()).isZero(1e-14 * (scale > 0 ? scale : 1.0))) {
        throw DomainError("Rouse matrix must be symmetric");
    }
    a_ = 0.5 * (a_ + a_.transpose());
    Eigen::SelfAdjointEigenSolver<MatrixXd> eig(a_, Eigen::EigenvaluesOnly);
    c1_ = eig.eigenvalues().minCoeff();
    c2_ = eig.eigenvalues().maxCoeff();
    if (!(c1_ > 0.0)) {
        std::ostringstream msg;
        msg << "Rouse matrix must be positive definite (smallest eigenvalue " << c1_ << ")";
        throw DomainError(msg.str());
    }
}

RouseSystem RouseSystem::classical(int springs) {
    if (springs < 1) {
        throw DomainError("Rouse chain needs at least one spring");
    }
    MatrixXd a = MatrixXd::Zero(springs, springs);
    for (int i = 0; i < springs; ++i) {
        a(i, i) = 2.0;
        if (i + 1 < springs) {
            a(i, i + 1) = -1.0;
            a(i + 1, i) = -1.0;
        }
    }
    return RouseSystem(std::move(a));
}

MatrixXd RouseSystem::apply(const MatrixXd& b) const {
    if (b.cols() != a_.rows()) {
        std::ostringstream msg;
        msg << "rouse_apply: B has " << b.cols() << " columns but the Rouse matrix is "
            << a_.rows() << "x" << a_.cols();
        throw DomainError(msg.str());
    }
    return b * a_;
}

double RouseSystem::energy(const MatrixXd& b) const { return apply(b).cwiseProduct(b).sum(); }

MatrixXd rouse_apply(const RouseSystem& rouse, const MatrixXd& b) { return rouse.apply(b); }

} // namespace nsfp
