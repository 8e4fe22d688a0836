#pragma once

#include "nsfp/common.hpp"

#include <string>

namespace nsfp {

/// Built-in coefficient law. Laws are selected by name from the run
/// configuration; arbitrary user code is not supported.
struct CoefficientLaw {
    enum class Kind {
        constant,      // c0
        affine_rho,    // c0 + c1 rho
        affine_rho_pn, // clamp(c0 + c1 rho + c2 varrho, lo, hi)
    };

    Kind kind = Kind::constant;
    double c0 = 1.0;
    double c1 = 0.0;
    double c2 = 0.0;
    double lo = 0.0; // clamp range for affine_rho_pn
    double hi = 0.0;

    static CoefficientLaw constant(double value);
    static CoefficientLaw affine_rho(double c0, double c1);
    static CoefficientLaw affine_rho_pn(double c0, double c1, double c2, double lo, double hi);

    double operator()(double rho, double varrho = 0.0) const;

    std::string name() const;
};

CoefficientLaw::Kind parse_law_kind(const std::string& name);

/// Viscosity mu(rho, varrho), drag zeta(rho), stress scale k and the declared
/// ranges within which the laws must take their values.
struct MaterialLaws {
    CoefficientLaw mu = CoefficientLaw::constant(1.0);
    CoefficientLaw zeta = CoefficientLaw::constant(1.0);
    double k = 1.0;

    double rho_min = 1.0, rho_max = 1.0;
    double mu_min = 1.0, mu_max = 1.0;
    double zeta_min = 1.0, zeta_max = 1.0;

    double viscosity(double rho, double varrho) const { return mu(rho, varrho); }
    double drag(double rho) const { return zeta(rho); }
};

} // namespace nsfp
