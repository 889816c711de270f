#pragma once

#include "nonlinearity.hpp"

#include <array>
#include <span>

namespace eh {

using Vec = std::array<double, 3>; // first `dim` components used

/// Axis-aligned space-time box with explicit endpoint openness, used both
/// as the exact description of the waiting sets and for containment
/// arithmetic in fits_in.
struct SpaceTimeBox {
    int dim = 1;
    Vec x_lo{}, x_hi{};
    double t_lo = 0.0, t_hi = 0.0;
    bool x_lo_open = true, x_hi_open = true; // strict spatial inequalities?
    bool t_lo_open = true, t_hi_open = false;

    bool contains(const Vec& x, double t) const;
};

/// Q_rho(x0,t0) = {|x-x0|_inf < rho} x (t0-rho^2, t0].
struct ParabolicCube {
    int dim = 1;
    Vec center{};
    double t0 = 0.0;
    double rho = 1.0;

    bool contains(const Vec& x, double t) const;
    SpaceTimeBox box() const;
};

/// A+_rho(x0,t0): {|x-x0|_inf < rho*cn/2} x
///   (t0 + rho^2 - (rho*cn)^2/2, t0 + rho^2 - (rho*cn)^2/4].
struct WaitingSetPlus {
    int dim = 1;
    Vec center{};
    double t0 = 0.0;
    double rho = 1.0;
    double cn = 1.0;

    bool contains(const Vec& x, double t) const;
    SpaceTimeBox box() const;
};

/// A1- = {|x|_inf <= cn/2} x [-1 + cn^2/4, -1 + cn^2/2].
struct WaitingSetMinus {
    int dim = 1;
    double cn = 1.0;

    bool contains(const Vec& x, double t) const;
    SpaceTimeBox box() const;
};

/// alpha0 = u0/(C*(phi(u0)+u0)) = 1/(C*(eta(u0)+1)).
double intrinsic_scale(const Nonlinearity& nl, double u0, double C);

/// True iff every required box's closure lies inside the domain cube's
/// closure (boundary touching allowed).
bool fits_in(const ParabolicCube& domain, std::span<const SpaceTimeBox> required);

} // namespace eh
