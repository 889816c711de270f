// Acceptance gate: one self-contained check per criterion, one line of
// output each, exit 0 only if every criterion passes.

#include "../src/counterexample.hpp"
#include "../src/errors.hpp"
#include "../src/geometry.hpp"
#include "../src/harness.hpp"
#include "../src/nonlinearity.hpp"
#include "../src/pucci.hpp"
#include "../src/runner.hpp"
#include "../src/solver.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Checker {
    bool ok = true;
    std::vector<std::string> notes;

    void expect(bool cond, const std::string& msg) {
        if (!cond) {
            ok = false;
            notes.push_back(msg);
        }
    }
    void expect_near(double got, double want, double tol, const std::string& what) {
        expect(std::abs(got - want) <= tol,
               what + ": got " + std::to_string(got) + ", want " + std::to_string(want));
    }
};

eh::SymMatrix random_sym(std::mt19937_64& rng, int dim) {
    std::normal_distribution<double> g(0.0, 2.0);
    eh::SymMatrix m = eh::SymMatrix::zero(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = i; j < dim; ++j) m.at(i, j) = g(rng);
    return m;
}

// ---- 1: Pucci oracle equivalence and ellipticity sandwich ------------------

void criterion1(Checker& c) {
    std::mt19937_64 rng(20240811);
    std::uniform_real_distribution<double> lam(0.2, 2.0), gap(0.0, 4.0);
    std::vector<eh::EllipticityPair> pairs;
    for (int i = 0; i < 20; ++i) {
        const double l = lam(rng);
        pairs.push_back({l, l + gap(rng)});
    }

    for (int trial = 0; trial < 1000; ++trial) {
        const int dim = 2 + trial % 2;
        const eh::SymMatrix m = random_sym(rng, dim);
        const eh::EllipticityPair& e = pairs[trial % pairs.size()];
        const double scale = std::max(1.0, m.frobenius_norm());
        const double closed = eh::pucci_minus(m, e);
        const double oracle = eh::pucci_minus_oracle(m, e, 32, 7 + trial);
        if (std::abs(closed - oracle) > 1e-9 * scale) {
            c.expect(false, "oracle mismatch at trial " + std::to_string(trial));
            return;
        }
    }

    // sandwich: lambda*tr(N) <= P^-(M+N) - P^-(M) <= Lambda*tr(N), N PSD
    std::normal_distribution<double> g(0.0, 1.0);
    for (int trial = 0; trial < 1000; ++trial) {
        const int dim = 2 + trial % 2;
        const eh::SymMatrix m = random_sym(rng, dim);
        // N = B^T B is PSD
        double b[3][3];
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) b[i][j] = g(rng);
        eh::SymMatrix n = eh::SymMatrix::zero(dim);
        for (int i = 0; i < dim; ++i)
            for (int j = i; j < dim; ++j) {
                double s = 0.0;
                for (int k = 0; k < dim; ++k) s += b[k][i] * b[k][j];
                n.at(i, j) = s;
            }
        const eh::EllipticityPair& e = pairs[trial % pairs.size()];
        const double diff = eh::pucci_minus(m + n, e) - eh::pucci_minus(m, e);
        const double tol = 1e-10 * std::max(1.0, m.frobenius_norm() + n.frobenius_norm());
        if (diff < e.lambda * n.trace() - tol || diff > e.Lambda * n.trace() + tol) {
            c.expect(false, "sandwich violated at trial " + std::to_string(trial));
            return;
        }
    }
}

// ---- 2: counterexample suite ----------------------------------------------

void criterion2(Checker& c) {
    const eh::BallGridSpec grid{};
    for (double eps0 : {0.5, 1.0}) {
        const int sweep_exp = eps0 < 1.0 ? 10 : 6;
        const auto sweep = eh::min_valid_k(eps0, grid, sweep_exp);
        c.expect(sweep.monotone, "sweep not monotone at eps0=" + std::to_string(eps0));
        const long k_min = sweep.k_min;
        c.expect(k_min >= 2, "degenerate k_min");
        for (const auto& e : sweep.entries)
            c.expect(e.pass == (e.valid && e.k >= k_min),
                     "sweep entry disagrees with k_min at k=" + std::to_string(e.k));

        const auto p = eh::make_params(eps0, k_min);

        // (a) coefficient identities, recomputed in long double
        {
            const long double q = 4.0L / static_cast<long double>(eps0);
            const long double r = powl(static_cast<long double>(k_min),
                                       -static_cast<long double>(eps0));
            const long double kk = static_cast<long double>(k_min);
            const long double A = (8.0L + 6.0L * q + q * q) / (8.0L * kk) * powl(r, -q);
            const long double B = q * (q + 4.0L) / (4.0L * kk) * powl(r, -q - 2.0L);
            const long double C = q * (q + 2.0L) / (8.0L * kk) * powl(r, -q - 4.0L);
            const long double D = powl(r, -q) / kk;
            c.expect(std::abs(p.coefA - static_cast<double>(A)) <= 1e-12 * p.coefA,
                     "coefA identity");
            c.expect(std::abs(p.coefB - static_cast<double>(B)) <= 1e-12 * p.coefB,
                     "coefB identity");
            c.expect(std::abs(p.coefC - static_cast<double>(C)) <= 1e-12 * p.coefC,
                     "coefC identity");
            c.expect(std::abs(p.coefD - static_cast<double>(D)) <= 1e-12 * p.coefD,
                     "coefD identity");
        }

        // (b) C^2 interface matching at |x| = r
        {
            const double q = p.q, r = p.r;
            const double scale = std::pow(r, -q) / static_cast<double>(p.k);
            const double v_in = p.coefA - p.coefB * r * r + p.coefC * std::pow(r, 4.0);
            const double d1_in = -2.0 * p.coefB * r + 4.0 * p.coefC * r * r * r;
            const double d2_in = -2.0 * p.coefB + 12.0 * p.coefC * r * r;
            c.expect(std::abs(v_in - scale) <= 1e-9 * scale, "interface value");
            c.expect(std::abs(d1_in + q * scale / r) <= 1e-9 * q * scale / r,
                     "interface first derivative");
            c.expect(std::abs(d2_in - q * (q + 1.0) * scale / (r * r)) <=
                         1e-9 * q * (q + 1.0) * scale / (r * r),
                     "interface second derivative");
        }

        // (c) inequality passes at k_min, fails at k_min/2
        const auto pass_rep = eh::inequality_check(p, grid);
        c.expect(pass_rep.pass, "inequality fails at k_min");
        c.expect(pass_rep.outer_zero_pass, "outer P^- not numerically zero");
        c.expect(pass_rep.min_value > 0.0, "u_k not positive");
        bool half_fails;
        try {
            half_fails = !eh::inequality_check(eh::make_params(eps0, k_min / 2), grid).pass;
        } catch (const eh::DomainError&) {
            half_fails = true; // k_min/2 below the validity window also counts
        }
        c.expect(half_fails, "inequality unexpectedly passes at k_min/2");

        // (d) blowup of the elliptic Harnack integral
        const auto blow = eh::harnack_blowup(p, grid);
        c.expect(blow.inf_b1 == 1.0 / static_cast<double>(p.k), "inf over B_1 != 1/k");
        c.expect(blow.integral >= 0.5 * std::log(static_cast<double>(p.k)) - 1e-6,
                 "integral below log k / 2");
    }
}

// ---- 3: solver correctness --------------------------------------------------

void criterion3(Checker& c) {
    // (a) discrete comparison on ordered data pairs
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> amp(0.1, 0.6), freq(0.5, 2.5), off(0.8, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
        const double a1 = amp(rng), w1 = freq(rng), b = off(rng);
        const double a2 = amp(rng), w2 = freq(rng);
        eh::SpaceTimeFn lo = [a1, w1, b](const double* x, double) {
            return b + a1 * std::sin(w1 * x[0]);
        };
        eh::SpaceTimeFn hi = [lo, a2, w2](const double* x, double t) {
            return lo(x, t) + a2 * (1.0 + std::cos(w2 * x[0]));
        };
        eh::ProblemSpec spec;
        spec.side = trial % 2 == 0 ? eh::Side::SuperExtremal : eh::Side::SubExtremal;
        spec.ell = {1.0, 2.0};
        spec.nl = eh::make_nonlinearity("identity");
        spec.drift_lipschitz = 1.0; // pin dt so both runs share time layers
        eh::GridSpec gs{1, 2.0, 33, 0.0, 0.1};
        spec.data = lo;
        const eh::Field flo = eh::solve(spec, gs);
        spec.data = hi;
        const eh::Field fhi = eh::solve(spec, gs);
        for (size_t i = 0; i < flo.values.size(); ++i)
            if (fhi.values[i] < flo.values[i] - 1e-12) {
                c.expect(false, "comparison violated at trial " + std::to_string(trial));
                return;
            }
    }

    // (b) stationary e^x over unit time, second-order convergence
    {
        std::vector<double> errs;
        for (int n : {65, 129, 257}) {
            eh::ProblemSpec spec;
            spec.side = eh::Side::SuperExtremal;
            spec.ell = {1.0, 1.0};
            spec.nl = eh::make_nonlinearity("identity");
            spec.data = eh::data_preset("exp1d", 1, 1.0, 0.0);
            const eh::Field f = eh::solve(spec, eh::GridSpec{1, 1.0, n, 0.0, 1.0});
            double err = 0.0;
            for (int i = 0; i < f.grid.n; ++i)
                err = std::max(err, std::abs(f.at(f.grid.stored_layers() - 1, i, 0) -
                                             std::exp(f.grid.coord(i))));
            const double h = f.grid.h;
            c.expect(err <= 5.0 * h * h,
                     "e^x error " + std::to_string(err) + " above 5h^2 at n=" +
                         std::to_string(n));
            errs.push_back(err);
        }
        for (size_t i = 1; i < errs.size(); ++i) {
            const double order = std::log2(errs[i - 1] / errs[i]);
            c.expect(order >= 1.8, "e^x observed order " + std::to_string(order));
        }
    }

    // (c) heat-kernel oracle with zero drift
    {
        const double t0 = 0.25;
        auto kernel = [t0](double x, double t) {
            const double s = t + t0;
            return std::exp(-x * x / (4.0 * s)) / std::sqrt(4.0 * M_PI * s);
        };
        std::vector<double> errs;
        for (int n : {33, 65, 129}) {
            eh::ProblemSpec spec;
            spec.side = eh::Side::SuperExtremal;
            spec.ell = {1.0, 1.0};
            spec.drift = [](double) { return 0.0; };
            spec.drift_lipschitz = 0.0;
            spec.data = [kernel](const double* x, double t) { return kernel(x[0], t); };
            const eh::Field f = eh::solve(spec, eh::GridSpec{1, 2.0, n, 0.0, 0.25});
            double err = 0.0;
            for (int i = 0; i < f.grid.n; ++i)
                err = std::max(err, std::abs(f.at(f.grid.stored_layers() - 1, i, 0) -
                                             kernel(f.grid.coord(i), 0.25)));
            errs.push_back(err);
        }
        for (size_t i = 1; i < errs.size(); ++i) {
            const double order = std::log2(errs[i - 1] / errs[i]);
            c.expect(order >= 0.9, "heat-kernel observed order " + std::to_string(order));
        }
    }

    // (d) monotonicity certificate, 10^4 single-entry perturbations
    {
        std::uniform_real_distribution<double> val(0.0, 1.0);
        const eh::EllipticityPair ell{1.0, 2.0};
        for (int trial = 0; trial < 10000; ++trial) {
            const int dim = 1 + trial % 2;
            eh::Grid g;
            g.dim = dim;
            g.R = 1.0;
            g.n = 9;
            g.h = 0.25;
            g.dt = eh::cfl_time_step(g, ell, 1.0);
            const long npts = g.points();
            std::vector<double> base(npts), out_a(npts, 0.0), out_b(npts, 0.0);
            for (auto& v : base) v = val(rng);
            eh::StepContext ctx;
            ctx.ell = ell;
            ctx.side = trial % 4 < 2 ? eh::Side::SuperExtremal : eh::Side::SubExtremal;
            ctx.drift = [](double s) { return s; };
            ctx.use_central = false;
            eh::step(base.data(), out_a.data(), g, ctx);
            std::vector<double> pert = base;
            pert[static_cast<long>(rng() % npts)] += 0.1 * val(rng);
            eh::step(pert.data(), out_b.data(), g, ctx);
            for (long i = 0; i < npts; ++i)
                if (out_b[i] < out_a[i] - 1e-13) {
                    c.expect(false, "monotonicity violated at trial " + std::to_string(trial));
                    return;
                }
        }
    }
}

// ---- 4: intrinsic Harnack probes --------------------------------------------

std::vector<double> fine_c_grid() {
    std::vector<double> g;
    double v = 1.0;
    while (v <= 120.0) {
        g.push_back(v);
        v *= 1.02;
    }
    return g;
}

std::shared_ptr<const eh::Field> solve_2d(const std::string& preset, int n) {
    eh::ProblemSpec spec;
    spec.side = eh::Side::SuperExtremal;
    spec.ell = {1.0, 2.0};
    spec.nl = eh::make_nonlinearity("identity");
    spec.data = eh::data_preset(preset, 2, 2.0, -0.3);
    return std::make_shared<const eh::Field>(
        eh::solve(spec, eh::GridSpec{2, 2.0, n, -0.3, 0.0}));
}

void criterion4(Checker& c) {
    const auto nl = eh::make_nonlinearity("identity");
    const auto def_grid = eh::default_c_grid();

    // constant fields: smallest grid entry wins
    const eh::FieldView cv = eh::analytic_view("constant:5", 2, 2.0, -4.0, 0.0);
    c.expect(eh::backward_probe(cv, nl, def_grid, 1.0).c_star == def_grid.front(),
             "backward constant c* != first grid entry");
    const auto cb = eh::default_base_points(cv);
    c.expect(eh::forward_probe(cv, nl, def_grid, 1.0, cb).c_star == def_grid.front(),
             "forward constant c* != first grid entry");

    // solved fields: C* finite and stable under h -> h/2
    const auto fine = fine_c_grid();
    for (const char* preset : {"gaussian", "two-bump"}) {
        double back_c[2] = {0, 0}, fwd_c[2] = {0, 0};
        for (int lvl = 0; lvl < 2; ++lvl) {
            const auto view = eh::make_view(solve_2d(preset, lvl == 0 ? 65 : 129));
            const auto back = eh::backward_probe(view, nl, fine, 1.0);
            c.expect(back.pass, std::string(preset) + ": backward probe found no C*");
            back_c[lvl] = back.c_star;
            const auto bases = eh::default_base_points(view);
            const auto fwd = eh::forward_probe(view, nl, fine, 1.0, bases);
            c.expect(fwd.pass, std::string(preset) + ": forward probe found no C*");
            fwd_c[lvl] = fwd.c_star;
        }
        if (back_c[0] > 0.0)
            c.expect(std::abs(back_c[1] - back_c[0]) / back_c[0] < 0.10,
                     std::string(preset) + ": backward C* drifts " +
                         std::to_string(back_c[0]) + " -> " + std::to_string(back_c[1]));
        if (fwd_c[0] > 0.0)
            c.expect(std::abs(fwd_c[1] - fwd_c[0]) / fwd_c[0] < 0.10,
                     std::string(preset) + ": forward C* drifts " +
                         std::to_string(fwd_c[0]) + " -> " + std::to_string(fwd_c[1]));
    }

    // exact rescaling invariance of probe ratios: v(x,t) = u(sx, s^2 t)/A with
    // eta~(w) = s*(eta(A*w)+1) - 1 reproduces the backward ratio exactly
    {
        const double s = 2.0, A = 2.0;
        const eh::FieldView u = eh::analytic_view("affine", 1, 2.0, -4.0, 0.0);
        eh::FieldView v;
        v.dim = 1;
        v.R = u.R / s;
        v.t_lo = u.t_lo / (s * s);
        v.t_hi = 0.0;
        v.value = [&u, s, A](const eh::Vec& x, double t) {
            eh::Vec y{s * x[0], 0.0, 0.0};
            return u.value(y, s * s * t) / A;
        };
        eh::Nonlinearity scaled;
        scaled.name = "rescaled";
        scaled.eta = [&nl, s, A](double w) { return s * (nl.eta_at(A * w) + 1.0) - 1.0; };

        const auto ru = eh::backward_probe(u, nl, def_grid, 1.0);
        const auto rv = eh::backward_probe(v, scaled, def_grid, 1.0);
        c.expect(ru.c_star == rv.c_star, "rescaled c* differs");
        c.expect(!ru.records.empty() && !rv.records.empty(), "missing probe records");
        if (!ru.records.empty() && !rv.records.empty())
            c.expect_near(rv.records[0].ratio, ru.records[0].ratio, 1e-3,
                          "rescaled backward ratio");
    }
}

// ---- 5: Holder machinery -----------------------------------------------------

void criterion5(Checker& c) {
    const auto nl = eh::make_nonlinearity("identity");

    // analytic |x|^{1/2}: exact oscillation monotonicity and fitted exponent
    const eh::FieldView sq = eh::analytic_view("sqrtabs", 1, 2.0, -4.0, 0.0);
    const auto rep = eh::holder_estimate(sq, nl, 1.0, 1.0);
    for (size_t i = 1; i < rep.levels.size(); ++i)
        c.expect(rep.levels[i].osc <= rep.levels[i - 1].osc,
                 "oscillation increased between levels");
    c.expect(rep.alpha_fit_defined, "alpha fit undefined on sqrtabs");
    c.expect(rep.alpha_fit >= 0.45 && rep.alpha_fit <= 0.55,
             "alpha fit " + std::to_string(rep.alpha_fit) + " outside [0.45, 0.55]");

    // solved field (u_t = u_xx with caloric data 2 + t + x^2/2, reproduced
    // exactly by the scheme); C* measured by the forward probe, then fed back
    eh::ProblemSpec spec;
    spec.side = eh::Side::SuperExtremal;
    spec.ell = {1.0, 1.0};
    spec.drift = [](double) { return 0.0; };
    spec.drift_lipschitz = 0.0;
    spec.data = [](const double* x, double t) { return 2.0 + t + 0.5 * x[0] * x[0]; };
    const auto field = std::make_shared<const eh::Field>(
        eh::solve(spec, eh::GridSpec{1, 1.05, 809, -1.02, 0.0}));
    const eh::FieldView v = eh::make_view(field);

    std::vector<eh::BasePoint> bases;
    for (double t0 : {-0.7, -0.5, -0.3}) bases.push_back({{0.0, 0.0, 0.0}, t0});
    const auto probe = eh::forward_probe(v, nl, eh::default_c_grid(), 1.0, bases);
    c.expect(probe.pass, "forward probe on the caloric field found no C*");
    if (!probe.pass) return;

    const auto hr = eh::holder_estimate(v, nl, probe.c_star, 1.0);
    c.expect(hr.levels.size() >= 3, "fewer than 3 levels on the solved field");
    for (size_t i = 1; i < hr.levels.size(); ++i)
        c.expect(hr.levels[i].osc <= hr.levels[i - 1].osc * (1.0 + 1e-12),
                 "solved-field oscillation increased between levels");
    for (const auto& lv : hr.levels)
        c.expect(lv.pass, "decay flag fails at rho=" + std::to_string(lv.rho));
    c.expect(hr.decay_pass, "decay_pass false on the solved field");
}

// ---- 6: global chain ---------------------------------------------------------

void criterion6(Checker& c) {
    const auto id = eh::make_nonlinearity("identity");

    // constant-field hand arithmetic
    const eh::FieldView cv = eh::analytic_view("constant:5", 1, 2.0, -1.0, 1.0);
    const auto cr = eh::global_chain(cv, id, 2.0, 1.0, eh::ChainDirection::Forward);
    c.expect(cr.K == 8, "constant chain K != 8");
    c.expect_near(cr.t_abs, 0.375, 1e-15, "constant chain |t_K|");
    c.expect_near(cr.steps.back().r, 1.0, 1e-15, "constant chain r_K");
    c.expect(cr.integral_phi == 0.0 && cr.integral_phi_plus == 0.0,
             "constant chain integral not 0");
    for (long i = 1; i <= cr.K; ++i)
        c.expect_near(cr.steps[i].rho, 0.25, 1e-15, "constant chain rho_i");
    c.expect(cr.majorization_pass && cr.t_window_pass && cr.rho_window_pass,
             "constant chain window checks");

    // solved Osgood family u(0,0) = eps with phi(s) = s(1 + |log s|)
    const auto nl = eh::make_nonlinearity("logpow:beta=1");
    double c_tilde_max = 0.0;
    std::vector<double> m_k, t_abs;
    for (double eps : {0.1, 0.01, 0.001}) {
        eh::ProblemSpec spec;
        spec.side = eh::Side::SuperExtremal;
        spec.ell = {1.0, 1.0};
        spec.nl = nl;
        const double scale = eps / 1.05;
        auto bump = eh::data_preset("bump", 1, 1.5, 0.0);
        spec.data = [bump, scale](const double* x, double t) { return scale * bump(x, t); };
        const auto field = std::make_shared<const eh::Field>(
            eh::solve(spec, eh::GridSpec{1, 1.5, 97, 0.0, 0.5}));
        const eh::FieldView v = eh::make_view(field);
        const auto rep = eh::global_chain(v, nl, 2.0, 1.0, eh::ChainDirection::Backward);
        c.expect(rep.t_abs > 0.0 && rep.t_abs <= 1.0,
                 "|t_K| outside (0,1] at eps=" + std::to_string(eps));
        c.expect(rep.majorization_pass, "majorization fails at eps=" + std::to_string(eps));
        c.expect(rep.integral_phi <= rep.c_tilde * (1.0 + 1e-9) + 1e-12,
                 "integral above c~ at eps=" + std::to_string(eps));
        c_tilde_max = std::max(c_tilde_max, rep.c_tilde);
        m_k.push_back(rep.steps.back().M);
        t_abs.push_back(rep.t_abs);
    }
    for (size_t i = 1; i < m_k.size(); ++i) {
        c.expect(m_k[i] <= m_k[i - 1] * (1.0 + 1e-9), "M_K not nonincreasing in eps");
        c.expect(t_abs[i] <= t_abs[i - 1] * (1.0 + 1e-9), "|t_K| not nonincreasing in eps");
    }
    c.expect(c_tilde_max > 0.0, "no measured c~");
}

// ---- 7: nonlinearity validators ---------------------------------------------

void criterion7(Checker& c) {
    std::vector<double> grid;
    for (int i = 0; i < 121; ++i) grid.push_back(std::pow(10.0, -6.0 + 0.1 * i));

    c.expect(eh::validate_conditions(eh::make_nonlinearity("identity"), grid).all_pass(),
             "identity fails P1-P3");
    c.expect(!eh::validate_conditions(eh::make_nonlinearity("pow:eps=0.5"), grid).p2_pass,
             "pow:eps=0.5 passes P2");
    c.expect(eh::validate_conditions(eh::make_nonlinearity("logpow:beta=1"), grid).p2_pass,
             "logpow:beta=1 fails P2");

    // Osgood classifier against closed-form oracles on phi = s, sqrt(s),
    // s(1 - log s)
    struct Case {
        const char* id;
        eh::OsgoodVerdict want;
        std::function<double(double)> oracle; // I(a) = int_a^1 ds/phi
    };
    const Case cases[] = {
        {"identity", eh::OsgoodVerdict::Osgood,
         [](double a) { return std::log(1.0 / a); }},
        {"root", eh::OsgoodVerdict::NonOsgood,
         [](double a) { return 2.0 - 2.0 * std::sqrt(a); }},
        {"logpow:beta=1", eh::OsgoodVerdict::Osgood,
         [](double a) { return std::log(1.0 - std::log(a)); }},
    };
    for (const Case& k : cases) {
        const auto rep = eh::osgood_classify(eh::make_nonlinearity(k.id));
        c.expect(rep.verdict == k.want, std::string(k.id) + ": wrong verdict");
        for (const auto& [a, I] : rep.evidence)
            c.expect(std::abs(I - k.oracle(a)) <= 1e-6 * std::max(1.0, k.oracle(a)),
                     std::string(k.id) + ": evidence deviates from the closed form");
    }
}

// ---- 8: determinism of the full battery -------------------------------------

void criterion8(Checker& c) {
    const fs::path base = fs::temp_directory_path() / "eh_acceptance_determinism";
    const fs::path d1 = base / "run1", d2 = base / "run2";
    fs::remove_all(base);

    for (const fs::path& d : {d1, d2}) {
        const json cfg = {{"out", d.string()}, {"seed", 20240811}};
        const auto res = eh::run_command("all", cfg.dump());
        c.expect(res.exit_code == 0, "battery run failed in " + d.string());
    }

    auto slurp = [](const fs::path& p) {
        std::ifstream f(p, std::ios::binary);
        return std::string(std::istreambuf_iterator<char>(f), {});
    };
    size_t compared = 0;
    for (const auto& entry : fs::recursive_directory_iterator(d1)) {
        if (!entry.is_regular_file()) continue;
        const fs::path rel = fs::relative(entry.path(), d1);
        const fs::path twin = d2 / rel;
        if (!fs::exists(twin)) {
            c.expect(false, "missing twin for " + rel.string());
            continue;
        }
        if (slurp(entry.path()) != slurp(twin))
            c.expect(false, "outputs differ: " + rel.string());
        ++compared;
    }
    c.expect(compared >= 10, "suspiciously few artifacts compared");
    fs::remove_all(base);
}

} // namespace

int main() {
    struct Criterion {
        const char* label;
        void (*fn)(Checker&);
    };
    const Criterion criteria[] = {
        {"pucci oracle equivalence + ellipticity sandwich", criterion1},
        {"counterexample family (coefficients, interface, sweep, blowup)", criterion2},
        {"solver (comparison, stationary e^x, heat kernel, monotonicity)", criterion3},
        {"intrinsic Harnack probes (constants, solved fields, rescaling)", criterion4},
        {"Holder oscillation decay (analytic + solved fields)", criterion5},
        {"global chain (hand arithmetic + solved Osgood family)", criterion6},
        {"nonlinearity validators + Osgood closed forms", criterion7},
        {"byte-identical determinism of the full battery", criterion8},
    };

    bool all = true;
    int idx = 0;
    for (const Criterion& cr : criteria) {
        ++idx;
        Checker ck;
        const auto start = std::chrono::steady_clock::now();
        try {
            cr.fn(ck);
        } catch (const std::exception& e) {
            ck.expect(false, std::string("exception: ") + e.what());
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        std::printf("criterion %d: %s — %s (%.1fs)\n", idx, cr.label,
                    ck.ok ? "PASS" : "FAIL", secs);
        for (const auto& note : ck.notes) std::printf("    %s\n", note.c_str());
        all = all && ck.ok;
    }
    return all ? 0 : 1;
}
