#pragma once

#include "nonlinearity.hpp"
#include "pucci.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace eh {

enum class Side { SuperExtremal, SubExtremal };
enum class GradientScheme { Auto, Upwind, Central };

/// Uniform grid on the closed cube {|x|_inf <= R} x [t_a, t_b].
struct GridSpec {
    int dim = 1;            // 1 or 2
    double R = 2.0;
    int points_per_axis = 129;
    double t_a = -4.0;
    double t_b = 0.0;
    int max_stored_layers = 513; // time subsampling of the returned field
};

struct Grid {
    int dim = 1;
    double R = 2.0;
    int n = 129;    // points per axis
    double h = 0.0;
    double t_a = 0.0, t_b = 0.0;
    double dt = 0.0;  // solver step (CFL-bounded)
    long steps = 0;
    long store_stride = 1;

    long points() const { return dim == 1 ? n : static_cast<long>(n) * n; }
    long stored_layers() const { return steps / store_stride + 1; }
    double stored_dt() const { return dt * static_cast<double>(store_stride); }
    double coord(int i) const { return -R + 2.0 * R * i / (n - 1); }
};

/// Space-time data, either the drift term or Dirichlet data:
/// f(x, t) with x pointing at `dim` doubles.
using SpaceTimeFn = std::function<double(const double*, double)>;

struct ProblemSpec {
    Side side = Side::SuperExtremal;
    EllipticityPair ell{1.0, 1.0};
    std::optional<Nonlinearity> nl;           // admissible drift phi(|Du|)
    std::function<double(double)> drift;       // test-only override (e.g. 0)
    double drift_lipschitz = -1.0;             // < 0: estimate numerically
    GradientScheme gradient = GradientScheme::Auto;
    SpaceTimeFn data;                          // initial (t = t_a) and lateral Dirichlet
};

/// Discrete space-time solution values. Layers are stored every
/// grid.store_stride solver steps; queries interpolate multilinearly in
/// space and linearly in time.
struct Field {
    Grid grid;
    std::vector<double> values; // stored_layers x points, layer-major

    double at(long layer, long idx) const { return values[layer * grid.points() + idx]; }
    double at(long layer, int i, int j) const { return at(layer, idx_of(i, j)); }
    long idx_of(int i, int j) const { return grid.dim == 1 ? i : static_cast<long>(i) * grid.n + j; }

    double interp(const double* x, double t) const;

    double min_value = 0.0, max_value = 0.0; // over all stored layers
};

/// One-point discrete Pucci operator on a spatial layer (interior point).
/// 1D: theta applied to the central second difference. 2D: min (sign=-1)
/// or max (sign=+1) over the axis and diagonal frames of the summed
/// directional second differences.
double discrete_pucci(const double* layer, const Grid& g, int i, int j,
                      const EllipticityPair& e, int sign);

/// Rouy-Tourin upwind gradient magnitude at an interior point, oriented by
/// the sign of the drift term (SuperExtremal: -phi, SubExtremal: +phi).
double upwind_gradient_norm(const double* layer, const Grid& g, int i, int j, Side side);

/// Central-difference gradient magnitude (second-order; monotone only
/// under the mesh condition h*L_phi <= lambda).
double central_gradient_norm(const double* layer, const Grid& g, int i, int j);

struct StepContext {
    Side side = Side::SuperExtremal;
    EllipticityPair ell{1.0, 1.0};
    std::function<double(double)> drift;
    bool use_central = false;
    double max_gradient_seen = 0.0; // updated by step
};

/// Explicit Euler update of the interior; boundary values must be written
/// by the caller. Throws CflViolation if dt violates the monotonicity
/// bound for the given Lipschitz constant.
void step(const double* prev, double* next, const Grid& g, StepContext& ctx);

/// CFL bound: dt <= 0.9 / (4*Lambda*dim/h^2 + 2*sqrt(dim)*L_phi/h).
double cfl_time_step(const Grid& g, const EllipticityPair& e, double drift_lipschitz);

Field solve(const ProblemSpec& spec, const GridSpec& gs);

/// Named data presets for CLI configs: "gaussian", "exp1d", "bump",
/// "constant:<v>", "two-bump", "rising".
SpaceTimeFn data_preset(const std::string& name, int dim, double R, double t_a);

} // namespace eh
