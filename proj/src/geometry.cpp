#include "geometry.hpp"
#include "errors.hpp"

#include <cmath>

namespace eh {

bool SpaceTimeBox::contains(const Vec& x, double t) const {
    for (int i = 0; i < dim; ++i) {
        if (x_lo_open ? !(x[i] > x_lo[i]) : !(x[i] >= x_lo[i])) return false;
        if (x_hi_open ? !(x[i] < x_hi[i]) : !(x[i] <= x_hi[i])) return false;
    }
    if (t_lo_open ? !(t > t_lo) : !(t >= t_lo)) return false;
    if (t_hi_open ? !(t < t_hi) : !(t <= t_hi)) return false;
    return true;
}

bool ParabolicCube::contains(const Vec& x, double t) const {
    return box().contains(x, t);
}

SpaceTimeBox ParabolicCube::box() const {
    SpaceTimeBox b;
    b.dim = dim;
    for (int i = 0; i < dim; ++i) {
        b.x_lo[i] = center[i] - rho;
        b.x_hi[i] = center[i] + rho;
    }
    b.t_lo = t0 - rho * rho;
    b.t_hi = t0;
    b.x_lo_open = b.x_hi_open = true;
    b.t_lo_open = true;
    b.t_hi_open = false;
    return b;
}

bool WaitingSetPlus::contains(const Vec& x, double t) const {
    return box().contains(x, t);
}

SpaceTimeBox WaitingSetPlus::box() const {
    SpaceTimeBox b;
    b.dim = dim;
    const double half = 0.5 * rho * cn;
    for (int i = 0; i < dim; ++i) {
        b.x_lo[i] = center[i] - half;
        b.x_hi[i] = center[i] + half;
    }
    const double rc2 = (rho * cn) * (rho * cn);
    b.t_lo = t0 + rho * rho - 0.5 * rc2;
    b.t_hi = t0 + rho * rho - 0.25 * rc2;
    b.x_lo_open = b.x_hi_open = true;
    b.t_lo_open = true;
    b.t_hi_open = false;
    return b;
}

bool WaitingSetMinus::contains(const Vec& x, double t) const {
    return box().contains(x, t);
}

SpaceTimeBox WaitingSetMinus::box() const {
    SpaceTimeBox b;
    b.dim = dim;
    const double half = 0.5 * cn;
    for (int i = 0; i < dim; ++i) {
        b.x_lo[i] = -half;
        b.x_hi[i] = half;
    }
    b.t_lo = -1.0 + 0.25 * cn * cn;
    b.t_hi = -1.0 + 0.5 * cn * cn;
    b.x_lo_open = b.x_hi_open = false; // closed spatial box
    b.t_lo_open = false;               // closed time window
    b.t_hi_open = false;
    return b;
}

double intrinsic_scale(const Nonlinearity& nl, double u0, double C) {
    if (!(u0 > 0.0)) throw DomainError("intrinsic_scale requires u0 > 0");
    if (!(C > 1.0)) throw DomainError("intrinsic_scale requires C > 1");
    return 1.0 / (C * (nl.eta_at(u0) + 1.0));
}

bool fits_in(const ParabolicCube& domain, std::span<const SpaceTimeBox> required) {
    const SpaceTimeBox d = domain.box();
    for (const auto& r : required) {
        for (int i = 0; i < d.dim; ++i) {
            if (r.x_lo[i] < d.x_lo[i] || r.x_hi[i] > d.x_hi[i]) return false;
        }
        if (r.t_lo < d.t_lo || r.t_hi > d.t_hi) return false;
    }
    return true;
}

} // namespace eh
