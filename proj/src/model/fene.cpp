#include "nsfp/model/fene.hpp"

#include <cmath>
#include <sstream>

namespace nsfp {

namespace {

void check_spring_argument(double s, double b) {
    if (!(b > 0.0)) {
        throw DomainError("FENE extensibility b must be positive");
    }
    if (s < 0.0) {
        throw DomainError("FENE potential evaluated at negative extension s");
    }
    if (s >= 0.5 * b) {
        std::ostringstream msg;
        msg << "spring beyond full extension: s = " << s << " >= b/2 = " << 0.5 * b;
        throw DomainError(msg.str());
    }
}

} // namespace

double fene_potential(double s, double b) {
    check_spring_argument(s, b);
    return -0.5 * b * std::log1p(-2.0 * s / b);
}

double fene_potential_deriv(double s, double b) {
    check_spring_argument(s, b);
    return b / (b - 2.0 * s);
}

FeneChain::FeneChain(int dim, std::vector<double> b) : dim_(dim), b_(std::move(b)) {
    if (dim_ != 2 && dim_ != 3) {
        throw DomainError("spatial dimension must be 2 or 3");
    }
    if (b_.empty()) {
        throw DomainError("a bead-spring chain needs at least one spring");
    }
    for (std::size_t j = 0; j < b_.size(); ++j) {
        if (!(b_[j] >= 2.0)) {
            std::ostringstream msg;
            msg << "spring " << j + 1 << ": extensibility b = " << b_[j]
                << " violates the b > 2 constraint (gamma = b/2 > 1; b = 2 is admitted as the "
                   "borderline case)";
            throw DomainError(msg.str());
        }
    }
}

double FeneChain::radius(int j) const { return std::sqrt(b(j)); }

bool FeneChain::contains(const Eigen::Ref<const VectorXd>& q) const {
    for (int j = 0; j < springs(); ++j) {
        if (q.segment(j * dim_, dim_).squaredNorm() >= b(j)) {
            return false;
        }
    }
    return true;
}

} // namespace nsfp
