#include "nsfp/model/laws.hpp"

#include <algorithm>

namespace nsfp {

CoefficientLaw CoefficientLaw::constant(double value) {
    CoefficientLaw law;
    law.kind = Kind::constant;
    law.c0 = value;
    return law;
}

CoefficientLaw CoefficientLaw::affine_rho(double c0, double c1) {
    CoefficientLaw law;
    law.kind = Kind::affine_rho;
    law.c0 = c0;
    law.c1 = c1;
    return law;
}

CoefficientLaw CoefficientLaw::affine_rho_pn(double c0, double c1, double c2, double lo, double hi) {
    if (!(lo <= hi)) {
        throw DomainError("affine_rho_pn law: clamp range must satisfy lo <= hi");
    }
    CoefficientLaw law;
    law.kind = Kind::affine_rho_pn;
    law.c0 = c0;
    law.c1 = c1;
    law.c2 = c2;
    law.lo = lo;
    law.hi = hi;
    return law;
}

double CoefficientLaw::operator()(double rho, double varrho) const {
    switch (kind) {
    case Kind::constant:
        return c0;
    case Kind::affine_rho:
        return c0 + c1 * rho;
    case Kind::affine_rho_pn:
        return std::clamp(c0 + c1 * rho + c2 * varrho, lo, hi);
    }
    return c0;
}

std::string CoefficientLaw::name() const {
    switch (kind) {
    case Kind::constant:
        return "constant";
    case Kind::affine_rho:
        return "affine_rho";
    case Kind::affine_rho_pn:
        return "affine_rho_pn";
    }
    return "constant";
}

CoefficientLaw::Kind parse_law_kind(const std::string& name) {
    if (name == "constant") return CoefficientLaw::Kind::constant;
    if (name == "affine_rho") return CoefficientLaw::Kind::affine_rho;
    if (name == "affine_rho_pn") return CoefficientLaw::Kind::affine_rho_pn;
    throw ConfigError("", "unknown coefficient law '" + name +
                              "' (expected constant, affine_rho or affine_rho_pn)");
}

} // namespace nsfp
