#include "harness.hpp"
#include "errors.hpp"
#include "quadrature.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

namespace eh {

namespace {

constexpr double kBaseFloor = 1e-14;

int axis_samples(double width, double res, int lo, int hi, int analytic) {
    if (res <= 0.0) return analytic;
    if (width <= 0.0) return 1;
    const int n = static_cast<int>(std::ceil(width / res)) + 1;
    return std::clamp(n, lo, hi);
}

/// Extremum of the view over the closure of a space-time box, sampled on a
/// lattice fine enough to resolve the underlying grid (capped per axis).
double extremum_over_box(const FieldView& v, const SpaceTimeBox& b, bool want_sup,
                         int spatial_cap = 33, int time_cap = 17) {
    double best = want_sup ? -std::numeric_limits<double>::infinity()
                           : std::numeric_limits<double>::infinity();
    int ns[2] = {1, 1};
    for (int d = 0; d < v.dim; ++d)
        ns[d] = axis_samples(b.x_hi[d] - b.x_lo[d], v.h, 9, spatial_cap, 41);
    const int nt = b.t_hi > b.t_lo
                       ? axis_samples(b.t_hi - b.t_lo, v.h_t, 9, time_cap, 17)
                       : 1;
    Vec x{};
    for (int it = 0; it < nt; ++it) {
        const double t = nt == 1 ? b.t_hi
                                 : b.t_lo + (b.t_hi - b.t_lo) * it / (nt - 1);
        for (int i = 0; i < ns[0]; ++i) {
            x[0] = ns[0] == 1 ? b.x_lo[0]
                              : b.x_lo[0] + (b.x_hi[0] - b.x_lo[0]) * i / (ns[0] - 1);
            for (int j = 0; j < ns[1]; ++j) {
                if (v.dim > 1)
                    x[1] = ns[1] == 1
                               ? b.x_lo[1]
                               : b.x_lo[1] + (b.x_hi[1] - b.x_lo[1]) * j / (ns[1] - 1);
                const double u = v.value(x, t);
                best = want_sup ? std::max(best, u) : std::min(best, u);
            }
        }
    }
    return best;
}

double view_tol(const FieldView& v) { return 1e-9 * std::max(1.0, v.R); }

// alpha0 = 1/(C*(eta(u0)+1)); candidate grids start at C = 1, so this does
// not route through intrinsic_scale's strict C > 1 precondition.
double alpha0_of(const Nonlinearity& nl, double u0, double C) {
    return 1.0 / (C * (nl.eta_at(u0) + 1.0));
}

} // namespace

bool FieldView::contains_box(const SpaceTimeBox& b) const {
    const double tol = view_tol(*this);
    for (int d = 0; d < dim; ++d) {
        if (b.x_lo[d] < -R - tol || b.x_hi[d] > R + tol) return false;
    }
    return b.t_lo >= t_lo - tol && b.t_hi <= t_hi + tol;
}

FieldView make_view(std::shared_ptr<const Field> field) {
    FieldView v;
    const Grid& g = field->grid;
    v.dim = g.dim;
    v.R = g.R;
    v.t_lo = g.t_a;
    v.t_hi = g.t_b;
    v.h = g.h;
    v.h_t = g.stored_dt();
    v.value = [field](const Vec& x, double t) { return field->interp(x.data(), t); };
    return v;
}

FieldView analytic_view(const std::string& name, int dim, double R,
                        double t_lo, double t_hi) {
    FieldView v;
    v.dim = dim;
    v.R = R;
    v.t_lo = t_lo;
    v.t_hi = t_hi;
    if (name.rfind("constant:", 0) == 0) {
        double c{};
        if (std::from_chars(name.data() + 9, name.data() + name.size(), c).ec !=
            std::errc{})
            throw ConfigError("bad analytic constant '" + name + "'");
        v.value = [c](const Vec&, double) { return c; };
    } else if (name == "affine") {
        v.value = [](const Vec& x, double) { return 5.0 + x[0]; };
    } else if (name == "sqrtabs") {
        v.value = [](const Vec& x, double) { return std::sqrt(std::abs(x[0])); };
    } else {
        throw ConfigError("unknown analytic field '" + name + "'");
    }
    return v;
}

std::vector<double> default_c_grid() {
    std::vector<double> g;
    for (int j = 0; j <= 16; ++j) g.push_back(std::pow(2.0, 0.5 * j));
    return g;
}

ProbeReport backward_probe(const FieldView& field, const Nonlinearity& nl,
                           std::span<const double> c_grid, double cn) {
    ProbeReport rep;
    rep.kind = "backward";
    rep.cn = cn;
    rep.grid_h = field.h;
    rep.c_grid.assign(c_grid.begin(), c_grid.end());

    Vec origin{};
    const double u0 = field.value(origin, 0.0);
    if (u0 <= kBaseFloor) throw DegenerateBase("backward probe base value is not positive");

    bool any_evaluable = false;
    for (double C : rep.c_grid) {
        const double a0 = alpha0_of(nl, u0, C);
        SpaceTimeBox b;
        b.dim = field.dim;
        for (int d = 0; d < field.dim; ++d) {
            b.x_lo[d] = -0.5 * a0 * cn;
            b.x_hi[d] = 0.5 * a0 * cn;
        }
        b.t_lo = a0 * a0 * (-1.0 + 0.25 * cn * cn);
        b.t_hi = a0 * a0 * (-1.0 + 0.5 * cn * cn);
        if (!field.contains_box(b)) continue;
        if (field.h > 0.0 && a0 * cn < 3.0 * field.h) continue; // set too small
        any_evaluable = true;

        const double sup = extremum_over_box(field, b, /*want_sup=*/true);
        ProbeRecord rec;
        rec.base = origin;
        rec.t0 = 0.0;
        rec.u0 = u0;
        rec.alpha0 = a0;
        rec.rho = a0;
        rec.extremum = sup;
        rec.ratio = sup / u0;
        rep.records = {rec};
        if (sup <= C * u0 * (1.0 + 1e-12)) {
            rep.c_star = C;
            rep.pass = true;
            break;
        }
    }
    if (!any_evaluable)
        throw GridTooCoarse("backward probe: no candidate scale resolvable on this grid");
    return rep;
}

std::vector<BasePoint> default_base_points(const FieldView& field) {
    std::vector<BasePoint> out;
    const double span = field.t_hi - field.t_lo;
    const double ta = field.t_lo + 0.25 * span;
    const double tb = field.t_hi - 0.25 * span;
    const int n = 5;
    auto sx = [&](int i) { return -0.5 * field.R + field.R * i / (n - 1); };
    auto st = [&](int i) { return ta + (tb - ta) * i / (n - 1); };
    for (int it = 0; it < n; ++it)
        for (int i = 0; i < n; ++i) {
            if (field.dim == 1) {
                out.push_back({{sx(i), 0.0, 0.0}, st(it)});
            } else {
                for (int j = 0; j < n; ++j) out.push_back({{sx(i), sx(j), 0.0}, st(it)});
            }
        }
    return out;
}

ProbeReport forward_probe(const FieldView& field, const Nonlinearity& nl,
                          std::span<const double> c_grid, double cn,
                          std::span<const BasePoint> bases) {
    ProbeReport rep;
    rep.kind = "forward";
    rep.cn = cn;
    rep.grid_h = field.h;
    rep.c_grid.assign(c_grid.begin(), c_grid.end());

    bool any_admissible = false;
    for (double C : rep.c_grid) {
        std::vector<ProbeRecord> recs;
        bool all_pass = true;
        int admissible_count = 0;
        for (const BasePoint& bp : bases) {
            const double u0 = field.value(bp.x, bp.t);
            ProbeRecord rec;
            rec.base = bp.x;
            rec.t0 = bp.t;
            rec.u0 = u0;
            rec.admissible = false;
            if (u0 > kBaseFloor) {
                const double a0 = alpha0_of(nl, u0, C);
                // largest rho keeping Q_{2rho} and A+_rho inside the domain
                double rho_geom = std::sqrt(std::max(0.0, field.t_hi - bp.t));
                rho_geom = std::min(rho_geom,
                                    std::sqrt(std::max(0.0, (bp.t - field.t_lo) / 4.0)));
                for (int d = 0; d < field.dim; ++d)
                    rho_geom = std::min(rho_geom, 0.5 * (field.R - std::abs(bp.x[d])));
                const double rho = std::min(a0, rho_geom);
                if (rho > 0.0 && (field.h <= 0.0 || rho * cn >= 3.0 * field.h)) {
                    WaitingSetPlus wp;
                    wp.dim = field.dim;
                    wp.center = bp.x;
                    wp.t0 = bp.t;
                    wp.rho = rho;
                    wp.cn = cn;
                    const SpaceTimeBox b = wp.box();
                    if (field.contains_box(b)) {
                        rec.admissible = true;
                        rec.alpha0 = a0;
                        rec.rho = rho;
                        rec.extremum = extremum_over_box(field, b, /*want_sup=*/false);
                        rec.ratio = rec.extremum > 0.0
                                        ? u0 / rec.extremum
                                        : std::numeric_limits<double>::infinity();
                        ++admissible_count;
                        if (!(u0 <= C * rec.extremum * (1.0 + 1e-12) + 1e-15))
                            all_pass = false;
                    }
                }
            }
            recs.push_back(rec);
        }
        if (admissible_count == 0) continue;
        any_admissible = true;
        rep.records = std::move(recs);
        if (all_pass) {
            rep.c_star = C;
            rep.pass = true;
            break;
        }
    }
    if (!any_admissible)
        throw NoAdmissibleBase("forward probe: no base point admits a probe set");
    return rep;
}

HolderReport holder_estimate(const FieldView& field, const Nonlinearity& nl,
                             double C, double cn) {
    if (!(C >= 1.0)) throw ConfigError("holder_estimate requires C >= 1");
    HolderReport rep;
    rep.C = C;
    rep.cn = cn;
    rep.delta = 1.0 - 1.0 / (4.0 * C);

    const double t0 = field.t_hi;
    auto cube_box = [&](double rho) {
        SpaceTimeBox b;
        b.dim = field.dim;
        for (int d = 0; d < field.dim; ++d) {
            b.x_lo[d] = -rho;
            b.x_hi[d] = rho;
        }
        b.t_lo = t0 - rho * rho;
        b.t_hi = t0;
        return b;
    };
    auto osc_over = [&](double rho) {
        const SpaceTimeBox b = cube_box(rho);
        if (!field.contains_box(b))
            throw DomainError("holder_estimate: Q_rho exceeds the field domain");
        return extremum_over_box(field, b, true, 65, 33) -
               extremum_over_box(field, b, false, 65, 33);
    };

    rep.omega0 = osc_over(1.0);
    const double r_delta = scaling_radius(nl, rep.delta, C);
    rep.rho_factor = r_delta * cn / (4.0 * C * nl.eta_at(4.0));
    rep.alpha_theory = std::min(0.5, std::log(rep.delta) / std::log(rep.rho_factor));

    const double base_amp = std::max(0.25 * rep.omega0, 1e-8);
    const double rho0 = scaling_radius(nl, base_amp, C);
    const double rho_min = std::max(3.0 * field.h, 1e-4);

    rep.decay_pass = true;
    double rho = rho0;
    for (int k = 0; k <= 12 && rho >= rho_min; ++k, rho *= rep.rho_factor) {
        HolderLevel lv;
        lv.rho = rho;
        lv.osc = osc_over(rho);
        lv.bound = std::pow(rep.delta, k) * rep.omega0;
        lv.pass = lv.osc <= lv.bound * (1.0 + 1e-9) + 1e-15;
        rep.decay_pass = rep.decay_pass && lv.pass;
        rep.levels.push_back(lv);
    }
    if (rep.levels.size() < 3)
        throw GridTooCoarse("holder_estimate: fewer than 3 resolvable cube levels");

    // least-squares slope of log osc against log rho over positive osc levels
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (const HolderLevel& lv : rep.levels) {
        if (lv.osc <= 0.0) continue;
        const double lx = std::log(lv.rho), ly = std::log(lv.osc);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++m;
    }
    if (m >= 2 && sxx * m - sx * sx > 0.0) {
        rep.alpha_fit = (m * sxy - sx * sy) / (m * sxx - sx * sx);
        rep.alpha_fit_defined = true;
    }
    return rep;
}

ChainReport global_chain(const FieldView& field, const Nonlinearity& nl,
                         double C, double cn, ChainDirection direction) {
    if (!(C > 1.0)) throw ConfigError("global_chain requires C > 1");
    ChainReport rep;
    rep.direction = direction == ChainDirection::Forward ? "forward" : "backward";
    const double tsign = direction == ChainDirection::Forward ? 1.0 : -1.0;

    Vec origin{};
    const double u00 = field.value(origin, 0.0);
    if (u00 <= kBaseFloor) throw DegenerateBase("global_chain base value is not positive");

    auto sup_cube_at = [&](double r, double t) {
        SpaceTimeBox b;
        b.dim = field.dim;
        for (int d = 0; d < field.dim; ++d) {
            b.x_lo[d] = -r;
            b.x_hi[d] = r;
        }
        b.t_lo = b.t_hi = t;
        if (!field.contains_box(b))
            throw ChainEscapesDomain("global_chain left the field domain");
        return extremum_over_box(field, b, true, 129, 1);
    };

    rep.steps.push_back({0.0, 0.0, 0.0, u00});
    rep.rho_window_pass = true;
    double r = 0.0, t = 0.0, M = u00;
    const double tol = view_tol(field);
    while (r < 1.0) {
        if (rep.steps.size() > 100000)
            throw ChainEscapesDomain("global_chain failed to reach radius 1");
        const double rho = 1.0 / (C * (nl.eta_at(M) + 1.0));
        if (C >= 4.0 / cn && rho > 0.25 * cn + 1e-15) rep.rho_window_pass = false;
        r += 0.5 * rho * cn;
        t += tsign * (-1.0 + 0.25 * cn * cn) * rho * rho;
        if (t < field.t_lo - tol || t > field.t_hi + tol)
            throw ChainEscapesDomain("global_chain time level left the field domain");
        const double Mt = sup_cube_at(r, t);
        const double Mnew = std::max(M, Mt);
        rep.c_meas = std::max(rep.c_meas, Mnew / M);
        M = Mnew;
        rep.steps.push_back({rho, r, t, M});
    }
    rep.K = static_cast<long>(rep.steps.size()) - 1;
    rep.t_abs = std::abs(t);
    rep.t_window_pass = rep.t_abs > 0.0 && rep.t_abs <= 1.0;
    rep.c_tilde = 1.0 / (rep.t_abs * std::pow(nl.eta_at(u00) + 1.0, 2.0));

    const double M0 = u00, MK = M;
    rep.integral_phi = MK > M0 ? harnack_integral(nl, M0, MK) : 0.0;
    rep.integral_phi_plus =
        MK > M0 ? integrate([&](double s) { return 1.0 / (nl.phi(s) + s); }, M0, MK)
                : 0.0;
    double rhs = 0.0;
    for (long i = 0; i < rep.K; ++i)
        rhs += (rep.c_meas - 1.0) / (nl.eta_at(rep.steps[i].M) + 1.0);
    rep.majorization_rhs = rhs;
    rep.majorization_pass = rep.integral_phi_plus <= rhs * (1.0 + 1e-9) + 1e-12;
    return rep;
}

MinPrincipleReport minimum_principle_check(
    std::span<const std::pair<double, FieldView>> family, const Nonlinearity& nl,
    double C, double cn) {
    MinPrincipleReport rep;
    const OsgoodReport og = osgood_classify(nl);
    rep.osgood_verdict = to_string(og.verdict);
    if (og.verdict != OsgoodVerdict::Osgood) {
        rep.applicable = false;
        return rep;
    }
    std::vector<std::pair<double, FieldView>> fam(family.begin(), family.end());
    std::sort(fam.begin(), fam.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    for (const auto& [eps, view] : fam) {
        const ChainReport cr = global_chain(view, nl, C, cn, ChainDirection::Backward);
        rep.entries.push_back({eps, cr.steps.back().M, cr.t_abs, cr.integral_phi});
    }
    rep.monotone_pass = true;
    for (std::size_t i = 1; i < rep.entries.size(); ++i) {
        const auto& a = rep.entries[i - 1];
        const auto& b = rep.entries[i];
        if (b.m_K > a.m_K * (1.0 + 1e-9) + 1e-12) rep.monotone_pass = false;
        if (b.t_abs > a.t_abs * (1.0 + 1e-9) + 1e-12) rep.monotone_pass = false;
    }
    return rep;
}

} // namespace eh
