#include "counterexample.hpp"
#include "errors.hpp"
#include "quadrature.hpp"

#include <cmath>
#include <limits>

namespace eh {

namespace {

constexpr double kCutoffEnd = 0.95;  // transition ends at 0.95*r
constexpr double kSineAmp = 0.5;     // derivative-flattening amplitude

// Mollifier step psi(x) = f(x)/(f(x)+f(1-x)) with f(x) = exp(-1/x).
struct Psi {
    double v = 0.0, d1 = 0.0, d2 = 0.0;
};

Psi psi_eval(double x) {
    if (x <= 0.0) return {0.0, 0.0, 0.0};
    if (x >= 1.0) return {1.0, 0.0, 0.0};
    const double fx = std::exp(-1.0 / x);
    const double y = 1.0 - x;
    const double fy = std::exp(-1.0 / y);
    const double n = fx;
    const double d = fx + fy;
    const double n1 = fx / (x * x);
    const double d1 = n1 - fy / (y * y);
    const double n2 = fx * (1.0 - 2.0 * x) / (x * x * x * x);
    const double d2 = n2 + fy * (1.0 - 2.0 * y) / (y * y * y * y);
    Psi p;
    p.v = n / d;
    p.d1 = (n1 - p.v * d1) / d;
    p.d2 = (n2 - p.v * d2) / d - 2.0 * p.d1 * d1 / d;
    return p;
}

// The plain mollifier step has max slope exactly 2/width, which over the
// admissible transition interval (r/2, 0.95r) exceeds the 4/r derivative
// budget. Reparametrizing the argument by m(y) = y + A*sin(2*pi*y)/(2*pi)
// slows the traverse through the steep midsection and brings the maximum
// down to ~3.7/r while keeping all endpoint derivatives zero.
struct Cutoff {
    double v = 1.0, d1 = 0.0, d2 = 0.0;
};

Cutoff cutoff_eval(double s, double r) {
    const double start = 0.5 * r;
    const double w = (kCutoffEnd - 0.5) * r;
    if (s <= start) return {1.0, 0.0, 0.0};
    if (s >= start + w) return {0.0, 0.0, 0.0};
    const double tau = (s - start) / w;
    const double y = 1.0 - tau;
    const double twopi = 2.0 * M_PI;
    const double m = y + kSineAmp * std::sin(twopi * y) / twopi;
    const double m1 = 1.0 + kSineAmp * std::cos(twopi * y);
    const double m2 = -kSineAmp * twopi * std::sin(twopi * y);
    const Psi p = psi_eval(m);
    Cutoff c;
    c.v = p.v;
    c.d1 = -(p.d1 * m1) / w; // dy/ds = -1/w
    c.d2 = (p.d2 * m1 * m1 + p.d1 * m2) / (w * w);
    return c;
}

} // namespace

double CounterexampleParams::cutoff(double s) const { return cutoff_eval(s, r).v; }
double CounterexampleParams::cutoff_d1(double s) const { return cutoff_eval(s, r).d1; }
double CounterexampleParams::cutoff_d2(double s) const { return cutoff_eval(s, r).d2; }

CounterexampleParams make_params(double eps0, long k) {
    if (!(eps0 > 0.0)) throw DomainError("make_params requires eps0 > 0");
    if (k < 1) throw DomainError("make_params requires k >= 1");
    CounterexampleParams p;
    p.eps0 = eps0;
    p.k = k;
    p.q = 4.0 / eps0;
    p.r = std::pow(static_cast<double>(k), -eps0);
    if (!(p.r < 0.5))
        throw DomainError("make_params: r = k^{-eps0} must be < 1/2 (k too small)");
    const double kk = static_cast<double>(k);
    const double q = p.q, r = p.r;
    p.coefA = (8.0 + 6.0 * q + q * q) / (8.0 * kk) * std::pow(r, -q);
    p.coefB = q * (q + 4.0) / (4.0 * kk) * std::pow(r, -q - 2.0);
    p.coefC = q * (q + 2.0) / (8.0 * kk) * std::pow(r, -q - 4.0);
    p.coefD = std::pow(r, -q) / kk;
    return p;
}

CounterexampleEval eval(const CounterexampleParams& p, double x1, double x2, double z) {
    CounterexampleEval out;
    const double s2 = x1 * x1 + x2 * x2;
    const double s = std::sqrt(s2);
    const double kk = static_cast<double>(p.k);
    const double q = p.q;

    if (s >= p.r) {
        // outer region: u = |x|^{-q}/k, independent of z
        const double sq = std::pow(s, -q);
        out.value = sq / kk;
        const double g = -q / kk * std::pow(s, -q - 2.0);
        out.gradient = {g * x1, g * x2, 0.0};
        const double c2 = q * (q + 2.0) / kk * std::pow(s, -q - 4.0);
        out.hessian.at(0, 0) = c2 * x1 * x1 + g;
        out.hessian.at(1, 1) = c2 * x2 * x2 + g;
        out.hessian.at(0, 1) = c2 * x1 * x2;
        return out;
    }

    // inner region: u = A - B|x|^2 + C|x|^4 + D(z+2)rho(|x|)
    const Cutoff c = cutoff_eval(s, p.r);
    const double dz2 = p.coefD * (z + 2.0);
    out.value = p.coefA - p.coefB * s2 + p.coefC * s2 * s2 + dz2 * c.v;

    // radial part h(s) = -B s^2 + C s^4 + D(z+2) rho(s); h'(s)/s is smooth
    // through s = 0 because rho' vanishes on [0, r/2].
    const double poly1_over_s = -2.0 * p.coefB + 4.0 * p.coefC * s2;
    const double hp_over_s = poly1_over_s + (s > 0.0 ? dz2 * c.d1 / s : 0.0);
    const double hpp = -2.0 * p.coefB + 12.0 * p.coefC * s2 + dz2 * c.d2;

    out.gradient = {hp_over_s * x1, hp_over_s * x2, p.coefD * c.v};

    const double xs[2] = {x1, x2};
    if (s > 0.0) {
        for (int i = 0; i < 2; ++i)
            for (int j = i; j < 2; ++j) {
                const double proj = xs[i] * xs[j] / s2;
                out.hessian.at(i, j) =
                    hpp * proj + hp_over_s * ((i == j ? 1.0 : 0.0) - proj);
            }
        for (int i = 0; i < 2; ++i)
            out.hessian.at(i, 2) = p.coefD * c.d1 * xs[i] / s;
    } else {
        out.hessian.at(0, 0) = out.hessian.at(1, 1) = -2.0 * p.coefB;
    }
    return out;
}

namespace {

template <typename F>
void for_each_grid_point(const CounterexampleParams& p, const BallGridSpec& g, F&& fn) {
    const int n = g.points_per_axis;
    auto coord = [n](int i) { return -2.0 + 4.0 * i / (n - 1); };
    for (int i = 0; i < n; ++i) {
        const double x1 = coord(i);
        for (int j = 0; j < n; ++j) {
            const double x2 = coord(j);
            if (x1 * x1 + x2 * x2 >= 4.0) continue;
            for (int l = 0; l < n; ++l) {
                const double z = coord(l);
                if (x1 * x1 + x2 * x2 + z * z < 4.0) fn(x1, x2, z);
            }
        }
    }
    // refinement of the inner cylinder |x| <= r; for large k the global
    // grid misses it entirely
    const int m = g.inner_points_per_axis;
    auto icoord = [m, &p](int i) { return -p.r + 2.0 * p.r * i / (m - 1); };
    for (int i = 0; i < m; ++i) {
        const double x1 = icoord(i);
        for (int j = 0; j < m; ++j) {
            const double x2 = icoord(j);
            if (x1 * x1 + x2 * x2 > p.r * p.r) continue;
            for (int l = 0; l < m; ++l) {
                const double z = coord(l);
                if (x1 * x1 + x2 * x2 + z * z < 4.0) fn(x1, x2, z);
            }
        }
    }
}

} // namespace

InequalityReport inequality_check(const CounterexampleParams& p, const BallGridSpec& g) {
    InequalityReport rep;
    rep.min_margin = std::numeric_limits<double>::infinity();
    rep.min_value = std::numeric_limits<double>::infinity();
    const EllipticityPair ell = p.ellipticity();

    for_each_grid_point(p, g, [&](double x1, double x2, double z) {
        const CounterexampleEval ev = eval(p, x1, x2, z);
        const double gn = std::sqrt(ev.gradient[0] * ev.gradient[0] +
                                    ev.gradient[1] * ev.gradient[1] +
                                    ev.gradient[2] * ev.gradient[2]);
        const double pm = pucci_minus(ev.hessian, ell);
        const double margin = std::pow(gn, 1.0 + p.eps0) - std::abs(pm);
        if (margin < rep.min_margin) {
            rep.min_margin = margin;
            rep.argmin = {x1, x2, z};
        }
        rep.min_value = std::min(rep.min_value, ev.value);
        if (x1 * x1 + x2 * x2 >= p.r * p.r) {
            const double scale = ev.hessian.frobenius_norm();
            if (scale > 0.0)
                rep.outer_max_scaled_pminus =
                    std::max(rep.outer_max_scaled_pminus, std::abs(pm) / scale);
        }
        ++rep.points_checked;
    });

    rep.pass = rep.min_margin >= 0.0;
    rep.outer_zero_pass = rep.outer_max_scaled_pminus <= 1e-12;
    return rep;
}

SweepResult min_valid_k(double eps0, const BallGridSpec& g, int max_exponent) {
    SweepResult res;
    for (int j = 1; j <= max_exponent; ++j) {
        const long k = 1L << j;
        SweepEntry entry;
        entry.k = k;
        try {
            const CounterexampleParams p = make_params(eps0, k);
            entry.valid = true;
            const InequalityReport rep = inequality_check(p, g);
            entry.pass = rep.pass;
            entry.min_margin = rep.min_margin;
        } catch (const DomainError&) {
            entry.valid = false;
            entry.pass = false;
        }
        res.entries.push_back(entry);
        if (entry.pass && res.k_min == 0) res.k_min = k;
        if (!entry.pass && res.k_min != 0) res.monotone = false;
    }
    if (res.k_min == 0)
        throw NotFound("no k in the dyadic sweep satisfies the pointwise inequality");
    return res;
}

BlowupReport harnack_blowup(const CounterexampleParams& p, const BallGridSpec& g) {
    BlowupReport rep;
    rep.inf_b1 = 1.0 / static_cast<double>(p.k);
    rep.sup_b1 = 0.0;
    // grid max over B_1 (reuse the B_2 sweep, restricted)
    for_each_grid_point(p, g, [&](double x1, double x2, double z) {
        if (x1 * x1 + x2 * x2 + z * z >= 1.0) return;
        rep.sup_b1 = std::max(rep.sup_b1, eval(p, x1, x2, z).value);
    });
    const double e0 = p.eps0;
    rep.integral = integrate(
        [e0](double s) { return 1.0 / (std::pow(s, 1.0 + e0) + s); },
        rep.inf_b1, rep.sup_b1);
    return rep;
}

} // namespace eh
