#include "nsfp/galerkin/assembly.hpp"

#include <cmath>
#include <sstream>

namespace nsfp {

namespace {

void require_finite(const TorusGrid& grid, const VectorXd& v, const char* name) {
    for (int p = 0; p < v.size(); ++p) {
        if (!std::isfinite(v(p))) {
            const Vec3& x = grid.point(p);
            std::ostringstream msg;
            msg << "non-finite " << name << " at grid node " << p << " (x = " << x(0) << ", " << x(1)
                << ", " << x(2) << ")";
            throw NumericalError(msg.str());
        }
    }
}

} // namespace

VelocitySystem assemble_velocity_system(const VelocityBasis& basis, const VelocityInputs& in,
                                        const MaterialLaws& laws) {
    const TorusGrid& grid = *basis.grid();
    const int np = grid.size();
    const int d = basis.dim();
    const int m = basis.size();
    const double w = grid.weight();
    if (in.rho.size() != np || in.u.rows() != np || in.varrho.size() != np ||
        static_cast<int>(in.tau.size()) != np || in.f.rows() != np) {
        throw DomainError("assemble_velocity_system: field sizes do not match the grid");
    }
    require_finite(grid, in.rho, "density");
    require_finite(grid, in.varrho, "polymer number density");
    for (int a = 0; a < 3; ++a) {
        require_finite(grid, in.u.col(a), "convecting velocity");
        require_finite(grid, in.f.col(a), "forcing");
    }
    VectorXd mu(np);
    for (int p = 0; p < np; ++p) {
        if (!in.tau[static_cast<std::size_t>(p)].allFinite()) {
            require_finite(grid, VectorXd::Constant(1, std::nan("")), "stress");
        }
        mu(p) = laws.viscosity(in.rho(p), in.varrho(p));
    }
    require_finite(grid, mu, "viscosity");

    const VectorXd wr = w * in.rho;
    VelocitySystem sys;
    sys.M = MatrixXd::Zero(m, m);
    sys.convection = MatrixXd::Zero(m, m);
    sys.viscous = MatrixXd::Zero(m, m);
    sys.B = VectorXd::Zero(m);
    for (int a = 0; a < d; ++a) {
        const MatrixXd& Va = basis.values(a);
        const MatrixXd rV = wr.asDiagonal() * Va;
        sys.M += Va.transpose() * rV;
        MatrixXd Ga = MatrixXd::Zero(np, m);
        for (int b = 0; b < d; ++b) Ga += in.u.col(b).asDiagonal() * basis.gradient(a, b);
        sys.convection += rV.transpose() * Ga;
        sys.B += rV.transpose() * in.f.col(a);
        VectorXd tau_ab(np);
        for (int b = 0; b < d; ++b) {
            for (int p = 0; p < np; ++p) tau_ab(p) = w * in.tau[static_cast<std::size_t>(p)](a, b);
            sys.B -= basis.gradient(a, b).transpose() * tau_ab;
        }
    }
    const VectorXd wm = w * mu;
    for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) {
            const MatrixXd D = 0.5 * (basis.gradient(a, b) + basis.gradient(b, a));
            sys.viscous += D.transpose() * wm.asDiagonal() * D;
        }
    }
    sys.M = 0.5 * (sys.M + sys.M.transpose());
    sys.viscous = 0.5 * (sys.viscous + sys.viscous.transpose());
    sys.A = -(sys.convection + sys.viscous);
    return sys;
}

namespace {

// Expand separable (spatial x configuration) blocks onto the selected pairs.
MatrixXd expand(const PdfBasis& basis, const MatrixXd& X, const MatrixXd& Q) {
    const int n = basis.size();
    MatrixXd out(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            out(i, j) = X(basis.xindex(i), basis.xindex(j)) * Q(basis.qindex(i), basis.qindex(j));
        }
    }
    return out;
}

MatrixXd conf_gram(const PdfBasis& basis, const FpStatics& s) {
    const MatrixXd& Q = basis.conf().values();
    const VectorXd wq = (s.quad->weights().array() * s.mm.array()).matrix();
    return Q.transpose() * wq.asDiagonal() * Q;
}

MatrixXd conf_stiffness(const PdfBasis& basis, const FpStatics& s) {
    const ConfBasis& conf = basis.conf();
    const int d = s.quad->dim();
    const int K = s.quad->springs();
    const VectorXd wq = (s.quad->weights().array() * s.mm.array()).matrix();
    MatrixXd S = MatrixXd::Zero(conf.size(), conf.size());
    for (int k = 0; k < K; ++k) {
        for (int j = 0; j < K; ++j) {
            const double a = s.rouse.matrix()(k, j);
            if (a == 0.0) continue;
            for (int r = 0; r < d; ++r) {
                S += a * conf.gradient(j * d + r).transpose() * wq.asDiagonal() * conf.gradient(k * d + r);
            }
        }
    }
    return S;
}

} // namespace

MatrixXd fp_mass_matrix(const PdfBasis& basis, const FpStatics& statics, const VectorXd& zeta) {
    const MatrixXd& X = basis.xvalues();
    const double w = basis.grid().weight();
    const MatrixXd Zx = X.transpose() * (w * zeta).asDiagonal() * X;
    MatrixXd N = expand(basis, Zx, conf_gram(basis, statics));
    return 0.5 * (N + N.transpose());
}

FpSystem assemble_fp_system(const PdfBasis& basis, const FpStatics& statics, const FpInputs& in,
                            const CutoffFamily& cutoff) {
    const TorusGrid& grid = basis.grid();
    const ConfQuadrature& quad = *statics.quad;
    const int np = grid.size();
    const int d = grid.dim();
    const int K = quad.springs();
    const double w = grid.weight();
    if (in.zeta.size() != np || in.u.rows() != np || static_cast<int>(in.grad_u.size()) != np) {
        throw DomainError("assemble_fp_system: field sizes do not match the grid");
    }
    require_finite(grid, in.zeta, "drag");

    const MatrixXd& X = basis.xvalues();
    const MatrixXd Gq = conf_gram(basis, statics);
    const MatrixXd Sq = conf_stiffness(basis, statics);

    FpSystem sys;
    sys.N = fp_mass_matrix(basis, statics, in.zeta);

    MatrixXd adv = MatrixXd::Zero(X.cols(), X.cols());
    MatrixXd diff = MatrixXd::Zero(X.cols(), X.cols());
    for (int b = 0; b < d; ++b) {
        const MatrixXd& Xg = basis.xgradient(b);
        const VectorXd zu = (w * in.zeta.array() * in.u.col(b).array()).matrix();
        adv += Xg.transpose() * zu.asDiagonal() * X;
        diff += w * Xg.transpose() * Xg;
    }
    const MatrixXd Ix = w * X.transpose() * X;
    sys.P = expand(basis, adv - diff, Gq) - expand(basis, Ix, Sq);

    // Truncated drift against grad_q phi_i, with the drift weight.
    const ConfBasis& conf = basis.conf();
    const MatrixXd xi = basis.values(in.xi);
    MatrixXd H(np, quad.size());
    for (int a = 0; a < quad.size(); ++a) {
        const double wa = quad.weights()(a) * statics.drift(a);
        for (int p = 0; p < np; ++p) H(p, a) = wa * cutoff.lambda(xi(p, a));
    }
    MatrixXd Rmat = MatrixXd::Zero(X.cols(), conf.size());
    for (int r = 0; r < d; ++r) {
        for (int c = 0; c < d; ++c) {
            VectorXd coef(np);
            for (int p = 0; p < np; ++p) coef(p) = w * in.zeta(p) * in.grad_u[static_cast<std::size_t>(p)](r, c);
            if (coef.cwiseAbs().maxCoeff() == 0.0) continue;
            MatrixXd G = MatrixXd::Zero(quad.size(), conf.size());
            for (int s = 0; s < K; ++s) {
                G += quad.nodes().col(s * d + c).asDiagonal() * conf.gradient(s * d + r);
            }
            Rmat += X.transpose() * coef.asDiagonal() * (H * G);
        }
    }
    sys.R = basis.coefficient_vector(Rmat);
    return sys;
}

PolymerDensity polymer_number_density(const PdfBasis& basis, const FpStatics& statics,
                                      const VectorXd& zeta, const VectorXd& d) {
    const MatrixXd psi = basis.values(d);
    const VectorXd wq = (statics.quad->weights().array() * statics.mm.array()).matrix();
    PolymerDensity out;
    out.varrho.resize(psi.rows());
    out.total = psi.size();
    for (Eigen::Index p = 0; p < psi.rows(); ++p) {
        double acc = 0.0;
        for (Eigen::Index a = 0; a < psi.cols(); ++a) {
            const double v = psi(p, a);
            if (v < 0.0) {
                ++out.clamped;
            } else {
                acc += wq(a) * v;
            }
        }
        out.varrho(p) = zeta(p) * acc;
    }
    return out;
}

} // namespace nsfp
