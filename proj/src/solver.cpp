#include "solver.hpp"
#include "errors.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <mutex>

namespace eh {

namespace {

inline double theta_minus(double s, const EllipticityPair& e) {
    return s > 0.0 ? e.lambda * s : e.Lambda * s;
}
inline double theta_plus(double s, const EllipticityPair& e) {
    return s > 0.0 ? e.Lambda * s : e.lambda * s;
}

} // namespace

double discrete_pucci(const double* layer, const Grid& g, int i, int j,
                      const EllipticityPair& e, int sign) {
    const double h2 = g.h * g.h;
    auto theta = [&](double s) { return sign < 0 ? theta_minus(s, e) : theta_plus(s, e); };
    if (g.dim == 1) {
        const double s = (layer[i + 1] - 2.0 * layer[i] + layer[i - 1]) / h2;
        return theta(s);
    }
    const int n = g.n;
    auto u = [&](int a, int b) { return layer[static_cast<long>(a) * n + b]; };
    const double c = u(i, j);
    const double ax1 = (u(i + 1, j) - 2.0 * c + u(i - 1, j)) / h2;
    const double ax2 = (u(i, j + 1) - 2.0 * c + u(i, j - 1)) / h2;
    const double d1 = (u(i + 1, j + 1) - 2.0 * c + u(i - 1, j - 1)) / (2.0 * h2);
    const double d2 = (u(i + 1, j - 1) - 2.0 * c + u(i - 1, j + 1)) / (2.0 * h2);
    const double axis = theta(ax1) + theta(ax2);
    const double diag = theta(d1) + theta(d2);
    return sign < 0 ? std::min(axis, diag) : std::max(axis, diag);
}

double upwind_gradient_norm(const double* layer, const Grid& g, int i, int j, Side side) {
    auto axis_term = [&](double prev, double c, double next) {
        const double dm = (c - prev) / g.h;
        const double dp = (next - c) / g.h;
        // SuperExtremal (-phi term): max(D-, -D+, 0); SubExtremal: max(D+, -D-, 0)
        const double cand = side == Side::SuperExtremal ? std::max(dm, -dp) : std::max(dp, -dm);
        return std::max(cand, 0.0);
    };
    if (g.dim == 1) {
        const double t = axis_term(layer[i - 1], layer[i], layer[i + 1]);
        return t;
    }
    const int n = g.n;
    auto u = [&](int a, int b) { return layer[static_cast<long>(a) * n + b]; };
    const double t1 = axis_term(u(i - 1, j), u(i, j), u(i + 1, j));
    const double t2 = axis_term(u(i, j - 1), u(i, j), u(i, j + 1));
    return std::sqrt(t1 * t1 + t2 * t2);
}

double central_gradient_norm(const double* layer, const Grid& g, int i, int j) {
    if (g.dim == 1) return std::abs((layer[i + 1] - layer[i - 1]) / (2.0 * g.h));
    const int n = g.n;
    auto u = [&](int a, int b) { return layer[static_cast<long>(a) * n + b]; };
    const double g1 = (u(i + 1, j) - u(i - 1, j)) / (2.0 * g.h);
    const double g2 = (u(i, j + 1) - u(i, j - 1)) / (2.0 * g.h);
    return std::sqrt(g1 * g1 + g2 * g2);
}

double cfl_time_step(const Grid& g, const EllipticityPair& e, double drift_lipschitz) {
    return 0.9 / (4.0 * e.Lambda * g.dim / (g.h * g.h) +
                  2.0 * std::sqrt(static_cast<double>(g.dim)) * drift_lipschitz / g.h);
}

void step(const double* prev, double* next, const Grid& g, StepContext& ctx) {
    const int sign = ctx.side == Side::SuperExtremal ? -1 : +1;
    const int n = g.n;
    if (g.dim == 1) {
        for (int i = 1; i < n - 1; ++i) {
            const double p = discrete_pucci(prev, g, i, 0, ctx.ell, sign);
            const double gn = ctx.use_central ? central_gradient_norm(prev, g, i, 0)
                                              : upwind_gradient_norm(prev, g, i, 0, ctx.side);
            ctx.max_gradient_seen = std::max(ctx.max_gradient_seen, gn);
            const double rhs = p + sign * ctx.drift(gn);
            next[i] = prev[i] + g.dt * rhs;
        }
        return;
    }
    std::mutex mu;
    parallel_for(1, n - 1, [&](long ib, long ie) {
        double local_max = 0.0;
        for (long i = ib; i < ie; ++i) {
            for (int j = 1; j < n - 1; ++j) {
                const double p =
                    discrete_pucci(prev, g, static_cast<int>(i), j, ctx.ell, sign);
                const double gn =
                    ctx.use_central
                        ? central_gradient_norm(prev, g, static_cast<int>(i), j)
                        : upwind_gradient_norm(prev, g, static_cast<int>(i), j, ctx.side);
                local_max = std::max(local_max, gn);
                const double rhs = p + sign * ctx.drift(gn);
                next[i * n + j] = prev[i * n + j] + g.dt * rhs;
            }
        }
        std::lock_guard<std::mutex> lock(mu);
        ctx.max_gradient_seen = std::max(ctx.max_gradient_seen, local_max);
    });
}

double Field::interp(const double* x, double t) const {
    const Grid& g = grid;
    const double eps = 1e-9 * (1.0 + g.R);
    for (int d = 0; d < g.dim; ++d) {
        if (x[d] < -g.R - eps || x[d] > g.R + eps)
            throw DomainError("interp: spatial point outside the field domain");
    }
    if (t < g.t_a - eps || t > g.t_b + eps)
        throw DomainError("interp: time outside the field domain");

    const double sdt = g.stored_dt();
    double tf = (t - g.t_a) / sdt;
    long l0 = static_cast<long>(std::floor(tf));
    l0 = std::clamp(l0, 0L, g.stored_layers() - 2);
    const double wt = std::clamp(tf - static_cast<double>(l0), 0.0, 1.0);

    auto spatial = [&](long layer) {
        double wi[2] = {0.0, 0.0};
        int i0[2] = {0, 0};
        for (int d = 0; d < g.dim; ++d) {
            const double f = (x[d] + g.R) / g.h;
            long c = static_cast<long>(std::floor(f));
            c = std::clamp(c, 0L, static_cast<long>(g.n) - 2);
            i0[d] = static_cast<int>(c);
            wi[d] = std::clamp(f - static_cast<double>(c), 0.0, 1.0);
        }
        if (g.dim == 1) {
            return (1.0 - wi[0]) * at(layer, i0[0], 0) + wi[0] * at(layer, i0[0] + 1, 0);
        }
        const double v00 = at(layer, i0[0], i0[1]);
        const double v01 = at(layer, i0[0], i0[1] + 1);
        const double v10 = at(layer, i0[0] + 1, i0[1]);
        const double v11 = at(layer, i0[0] + 1, i0[1] + 1);
        return (1.0 - wi[0]) * ((1.0 - wi[1]) * v00 + wi[1] * v01) +
               wi[0] * ((1.0 - wi[1]) * v10 + wi[1] * v11);
    };
    if (g.stored_layers() == 1) return spatial(0);
    return (1.0 - wt) * spatial(l0) + wt * spatial(l0 + 1);
}

namespace {

double estimate_initial_gradient(const std::vector<double>& layer, const Grid& g) {
    double gmax = 0.0;
    if (g.dim == 1) {
        for (int i = 1; i < g.n - 1; ++i)
            gmax = std::max(gmax, central_gradient_norm(layer.data(), g, i, 0));
    } else {
        for (int i = 1; i < g.n - 1; ++i)
            for (int j = 1; j < g.n - 1; ++j)
                gmax = std::max(gmax, central_gradient_norm(layer.data(), g, i, j));
    }
    return gmax;
}

double estimate_drift_lipschitz(const ProblemSpec& spec,
                                const std::function<double(double)>& drift, double gmax) {
    if (spec.drift_lipschitz >= 0.0) return spec.drift_lipschitz;
    if (spec.nl && !spec.drift) return spec.nl->phi_lipschitz_bound(0.0, std::max(gmax, 1.0));
    // sampled difference quotients of the override drift
    const double hi = std::max(gmax, 1.0);
    double L = 0.0;
    double pv = drift(0.0);
    for (int i = 1; i <= 512; ++i) {
        const double t = hi * i / 512.0;
        const double v = drift(t);
        L = std::max(L, std::abs(v - pv) / (hi / 512.0));
        pv = v;
    }
    return L;
}

void fill_boundary(std::vector<double>& layer, const Grid& g, const SpaceTimeFn& data,
                   double t) {
    if (g.dim == 1) {
        double x = -g.R;
        layer[0] = data(&x, t);
        x = g.R;
        layer[g.n - 1] = data(&x, t);
        return;
    }
    const int n = g.n;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i != 0 && i != n - 1 && j != 0 && j != n - 1) continue;
            double x[2] = {g.coord(i), g.coord(j)};
            layer[static_cast<long>(i) * n + j] = data(x, t);
        }
    }
}

} // namespace

Field solve(const ProblemSpec& spec, const GridSpec& gs) {
    if (gs.dim != 1 && gs.dim != 2) throw ConfigError("solver supports dim in {1,2}");
    if (gs.points_per_axis < 5) throw ConfigError("grid needs at least 5 points per axis");
    if (!(gs.t_b > gs.t_a)) throw ConfigError("grid needs t_b > t_a");
    if (!spec.data) throw ConfigError("problem data function is required");
    if (!spec.nl && !spec.drift) throw ConfigError("either a nonlinearity or a drift override is required");

    std::function<double(double)> drift =
        spec.drift ? spec.drift : [nl = *spec.nl](double s) { return nl.phi(s); };

    Grid g;
    g.dim = gs.dim;
    g.R = gs.R;
    g.n = gs.points_per_axis;
    g.h = 2.0 * gs.R / (gs.points_per_axis - 1);
    g.t_a = gs.t_a;
    g.t_b = gs.t_b;

    const long npts = g.points();
    std::vector<double> init(npts);
    if (g.dim == 1) {
        for (int i = 0; i < g.n; ++i) {
            double x = g.coord(i);
            init[i] = spec.data(&x, g.t_a);
        }
    } else {
        for (int i = 0; i < g.n; ++i)
            for (int j = 0; j < g.n; ++j) {
                double x[2] = {g.coord(i), g.coord(j)};
                init[static_cast<long>(i) * g.n + j] = spec.data(x, g.t_a);
            }
    }

    double gmax_budget = 2.0 * std::max(estimate_initial_gradient(init, g), 1e-6);

    for (int attempt = 0; attempt < 8; ++attempt) {
        const double L = estimate_drift_lipschitz(spec, drift, gmax_budget);
        const double dt_bound = cfl_time_step(g, spec.ell, L);
        long steps = static_cast<long>(std::ceil((g.t_b - g.t_a) / dt_bound));
        const long stride =
            std::max(1L, (steps + gs.max_stored_layers - 2) / (gs.max_stored_layers - 1));
        steps = stride * ((steps + stride - 1) / stride);
        g.dt = (g.t_b - g.t_a) / static_cast<double>(steps);
        g.steps = steps;
        g.store_stride = stride;

        bool use_central = false;
        switch (spec.gradient) {
            case GradientScheme::Central: use_central = true; break;
            case GradientScheme::Upwind: use_central = false; break;
            case GradientScheme::Auto: use_central = g.h * L <= spec.ell.lambda; break;
        }

        Field field;
        field.grid = g;
        field.values.reserve(g.stored_layers() * npts);
        field.min_value = std::numeric_limits<double>::infinity();
        field.max_value = -std::numeric_limits<double>::infinity();

        std::vector<double> cur = init, nxt(npts);
        auto store = [&](const std::vector<double>& layer) {
            for (double v : layer) {
                if (!std::isfinite(v)) throw NonFiniteValue("solution left the finite range");
                field.min_value = std::min(field.min_value, v);
                field.max_value = std::max(field.max_value, v);
            }
            field.values.insert(field.values.end(), layer.begin(), layer.end());
        };
        store(cur);

        StepContext ctx;
        ctx.side = spec.side;
        ctx.ell = spec.ell;
        ctx.drift = drift;
        ctx.use_central = use_central;

        bool restart = false;
        for (long m = 0; m < steps; ++m) {
            const double t_next = g.t_a + g.dt * static_cast<double>(m + 1);
            step(cur.data(), nxt.data(), g, ctx);
            fill_boundary(nxt, g, spec.data, t_next);
            if (ctx.max_gradient_seen > gmax_budget) {
                // gradient outgrew the Lipschitz window; dt may shrink, never grow
                gmax_budget = 2.0 * ctx.max_gradient_seen;
                const double L2 = estimate_drift_lipschitz(spec, drift, gmax_budget);
                if (cfl_time_step(g, spec.ell, L2) < g.dt) {
                    restart = true;
                    break;
                }
            }
            cur.swap(nxt);
            if ((m + 1) % stride == 0) store(cur);
        }
        if (!restart) return field;
    }
    throw CflViolation("could not settle a stable time step after repeated gradient growth");
}

SpaceTimeFn data_preset(const std::string& name, int dim, double R, double t_a) {
    auto norm2 = [dim](const double* x) {
        double s = 0.0;
        for (int d = 0; d < dim; ++d) s += x[d] * x[d];
        return s;
    };
    if (name.rfind("constant:", 0) == 0) {
        double v{};
        const char* b = name.data() + 9;
        if (std::from_chars(b, name.data() + name.size(), v).ec != std::errc{})
            throw ConfigError("bad constant preset '" + name + "'");
        return [v](const double*, double) { return v; };
    }
    if (name == "gaussian")
        return [norm2](const double* x, double) { return 0.2 + std::exp(-2.0 * norm2(x)); };
    if (name == "bump") {
        const double r2 = R * R;
        return [norm2, r2](const double* x, double) {
            const double w = std::max(0.0, 1.0 - norm2(x) / r2);
            return 0.05 + w * w;
        };
    }
    if (name == "two-bump")
        return [norm2, dim](const double* x, double) {
            double a[2] = {x[0] - 0.8, dim > 1 ? x[1] : 0.0};
            double b[2] = {x[0] + 0.8, dim > 1 ? x[1] : 0.0};
            double na = a[0] * a[0] + (dim > 1 ? a[1] * a[1] : 0.0);
            double nb = b[0] * b[0] + (dim > 1 ? b[1] * b[1] : 0.0);
            (void)norm2;
            return 0.2 + std::exp(-8.0 * na) + std::exp(-8.0 * nb);
        };
    if (name == "exp1d")
        return [](const double* x, double) { return std::exp(x[0]); };
    if (name == "rising") {
        const double halfpi_over_R = M_PI / (2.0 * R);
        return [t_a, halfpi_over_R](const double* x, double t) {
            return 1.0 + 0.4 * (t - t_a) + 0.05 * std::cos(halfpi_over_R * x[0]);
        };
    }
    throw ConfigError("unknown data preset '" + name + "'");
}

} // namespace eh
