#pragma once

#include "nsfp/common.hpp"

#include <array>

namespace nsfp {

/// Smooth cutoff family built from one mother bump Gamma:
///   Gamma = 1 on [-1, 1], Gamma = 0 outside (-2, 2), smooth e^{-1/x}
///   transitions in between.
/// For a level l > 0,
///   Gamma_l(s)  = Gamma(s / l),
///   T_l(s)      = int_0^s Gamma_l,       (odd, saturates at 1.5 l)
///   Lambda_l(s) = s Gamma_l(s).
/// Inside [-l, l] all three act exactly as the identity (Gamma_l = 1), so a
/// solution whose values stay below l never sees the cutoff.
class CutoffFamily {
public:
    explicit CutoffFamily(double level);

    double level() const noexcept { return level_; }

    double gamma(double s) const;
    double t(double s) const;
    double lambda(double s) const;

    /// T_{delta,l}(s) = int_0^s Lambda_l(t) / (t + delta) dt for s >= 0.
    double t_delta(double s, double delta) const;

    /// Saturated value T_l(s) for |s| >= 2l.
    double t_max() const noexcept { return 1.5 * level_; }

    /// The mother bump and its primitive (level 1).
    static double mother(double s);
    static double mother_primitive(double s);

private:
    double level_;
};

double gamma_l(const CutoffFamily& family, double s);
double t_l(const CutoffFamily& family, double s);
double lambda_l(const CutoffFamily& family, double s);
double t_delta_l(const CutoffFamily& family, double s, double delta);

/// Relative-entropy density F(s) = s ln s + 1, F(0) = 1.
double entropy_F(double s);

} // namespace nsfp
