#pragma once

#include "geometry.hpp"
#include "nonlinearity.hpp"
#include "solver.hpp"

#include <memory>
#include <string>
#include <vector>

namespace eh {

/// Read-only view of a space-time function on [-R, R]^dim x [t_lo, t_hi].
/// Backed either by a discrete Field (h = grid spacing, queries interpolate)
/// or by an analytic formula (h = 0, queries are exact).
struct FieldView {
    int dim = 1;
    double R = 2.0;
    double t_lo = -4.0, t_hi = 0.0;
    double h = 0.0;   // spatial resolution; 0 for analytic views
    double h_t = 0.0; // time resolution of stored layers; 0 for analytic views
    std::function<double(const Vec&, double)> value;

    bool contains_box(const SpaceTimeBox& b) const;
};

/// View over a solved field; shares ownership of the field data.
FieldView make_view(std::shared_ptr<const Field> field);

/// Analytic views for probe and oscillation tests:
/// "constant:<v>", "affine" (5 + x1), "sqrtabs" (|x1|^{1/2}).
FieldView analytic_view(const std::string& name, int dim, double R,
                        double t_lo, double t_hi);

/// Default geometric candidate grid {2^0, 2^{1/2}, 2, ..., 2^8}.
std::vector<double> default_c_grid();

struct ProbeRecord {
    Vec base{};
    double t0 = 0.0;
    double u0 = 0.0;
    double alpha0 = 0.0;
    double rho = 0.0;      // probe radius actually used
    double extremum = 0.0; // sup over A1- (backward) / inf over A+_rho (forward)
    double ratio = 0.0;    // sup/u0 (backward) / u0/inf (forward)
    bool admissible = true;
};

struct ProbeReport {
    std::string kind;      // "backward" or "forward"
    double c_star = 0.0;   // smallest uniformly passing candidate; 0 if none
    bool pass = false;
    double cn = 1.0;
    double grid_h = 0.0;
    std::vector<double> c_grid;
    std::vector<ProbeRecord> records; // at c_star, or at the largest candidate
};

/// Backward intrinsic Harnack probe at base point (0, 0): for each candidate
/// C computes a0 = 1/(C(eta(u(0,0))+1)) and the sup of u over the a0-scaled
/// copy of A1-; reports the smallest C with sup <= C*u(0,0).
/// Throws DegenerateBase if u(0,0) <= 1e-14.
ProbeReport backward_probe(const FieldView& field, const Nonlinearity& nl,
                           std::span<const double> c_grid, double cn);

struct BasePoint {
    Vec x{};
    double t = 0.0;
};

/// Default forward-probe bases: a 5-per-axis lattice over the central half
/// of the view's domain (space and time).
std::vector<BasePoint> default_base_points(const FieldView& field);

/// Forward intrinsic Harnack probe. Per base point and candidate C the probe
/// radius is rho = min(alpha0(C), largest rho with Q_{2rho} and A+_rho inside
/// the domain); passes when u(x0,t0) <= C * inf over A+_rho(x0,t0). Reports
/// the smallest C passing at every admissible base. Throws NoAdmissibleBase
/// if no base point admits any probe.
ProbeReport forward_probe(const FieldView& field, const Nonlinearity& nl,
                          std::span<const double> c_grid, double cn,
                          std::span<const BasePoint> bases);

struct HolderLevel {
    double rho = 0.0;
    double osc = 0.0;
    double bound = 0.0; // delta^k * omega0
    bool pass = false;
};

struct HolderReport {
    double C = 0.0, cn = 1.0;
    double delta = 0.0;        // 1 - 1/(4C)
    double omega0 = 0.0;       // osc over Q_1
    double rho_factor = 0.0;   // r_delta*cn/(4*C*eta(4)), the level ratio
    std::vector<HolderLevel> levels;
    double alpha_fit = 0.0;
    bool alpha_fit_defined = false;
    double alpha_theory = 0.0;  // min(1/2, log delta / log rho_factor)
    bool decay_pass = false;
};

/// Oscillation-decay estimate at the top-center base point (0, t_hi):
/// measures osc over the intrinsic cubes Q_{rho_k} with
/// rho_k = rho_factor^k * r_{omega0/4}, checks osc <= delta^k omega0, and
/// least-squares fits the exponent. Throws GridTooCoarse with fewer than
/// 3 usable levels.
HolderReport holder_estimate(const FieldView& field, const Nonlinearity& nl,
                             double C, double cn);

enum class ChainDirection { Forward, Backward };

struct ChainStep {
    double rho = 0.0; // 0 at i = 0
    double r = 0.0;
    double t = 0.0;
    double M = 0.0;
};

struct ChainReport {
    std::string direction;
    std::vector<ChainStep> steps; // i = 0..K
    long K = 0;
    double t_abs = 0.0;           // |t_K|
    double integral_phi = 0.0;      // int_{M0}^{MK} ds/phi(s)
    double integral_phi_plus = 0.0; // int_{M0}^{MK} ds/(phi(s)+s)
    double majorization_rhs = 0.0;  // sum_i (C_meas - 1)/(eta(M_i)+1)
    bool majorization_pass = false;
    double c_meas = 1.0;            // max M_{i+1}/M_i
    double c_tilde = 0.0;           // 1/(|t_K| (eta(u(0,0))+1)^2)
    bool t_window_pass = false;     // 0 < |t_K| <= 1
    bool rho_window_pass = false;   // rho_i <= cn/4 whenever C >= 4/cn
};

/// Waiting-time iteration from base (0, 0): rho_{i+1} = 1/(C(eta(M_i)+1)),
/// r_{i+1} = r_i + rho_{i+1} cn/2, t stepped by (-1 + cn^2/4) rho^2
/// (time-mirrored for the backward direction), M_i = running sup of u over
/// the cubes {|x|_inf <= r_i} at time t_i; stops at the first r_K >= 1.
/// Throws DegenerateBase if u(0,0) <= 1e-14 and ChainEscapesDomain if a
/// chain time leaves the view's time range.
ChainReport global_chain(const FieldView& field, const Nonlinearity& nl,
                         double C, double cn, ChainDirection direction);

struct MinPrincipleEntry {
    double eps = 0.0;
    double m_K = 0.0;
    double t_abs = 0.0;
    double integral_phi = 0.0;
};

struct MinPrincipleReport {
    bool applicable = true; // false: NonOsgood nonlinearity, check skipped
    std::string osgood_verdict;
    std::vector<MinPrincipleEntry> entries; // ordered by decreasing eps
    bool monotone_pass = false; // m_K and |t_K| nonincreasing as eps decreases
};

/// Strong-minimum-principle trend check over a family of views indexed by
/// eps = u(0,0): gated on the Osgood classification, then one forward
/// global_chain per member.
MinPrincipleReport minimum_principle_check(
    std::span<const std::pair<double, FieldView>> family, const Nonlinearity& nl,
    double C, double cn);

} // namespace eh
