#pragma once

#include "nsfp/common.hpp"

namespace nsfp {

/// Symmetric positive-definite Rouse matrix A together with its coercivity
/// constants: C1 |B|^2 <= A(B):B <= C2 |B|^2 for every d x K matrix B, where
/// A(B) = B A.  C1 and C2 are the extreme eigenvalues of A.
class RouseSystem {
public:
    explicit RouseSystem(MatrixXd a);

    /// Classical Rouse chain: tridiagonal with 2 on the diagonal, -1 off it.
    static RouseSystem classical(int springs);

    const MatrixXd& matrix() const noexcept { return a_; }
    int springs() const noexcept { return static_cast<int>(a_.rows()); }
    double c1() const noexcept { return c1_; }
    double c2() const noexcept { return c2_; }

    /// (A(B))_i^j = sum_k B_i^k A_kj.
    MatrixXd apply(const MatrixXd& b) const;

    /// A(B):B.
    double energy(const MatrixXd& b) const;

private:
    MatrixXd a_;
    double c1_ = 0;
    double c2_ = 0;
};

MatrixXd rouse_apply(const RouseSystem& rouse, const MatrixXd& b);

} // namespace nsfp
