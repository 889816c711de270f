#include <doctest.h>

#include "../src/errors.hpp"
#include "../src/solver.hpp"

#include <cmath>
#include <random>
#include <vector>

using eh::EllipticityPair;
using eh::Grid;
using eh::GridSpec;
using eh::ProblemSpec;
using eh::Side;

namespace {

Grid make_grid(int dim, double R, int n) {
    Grid g;
    g.dim = dim;
    g.R = R;
    g.n = n;
    g.h = 2.0 * R / (n - 1);
    return g;
}

std::vector<double> sample_layer(const Grid& g, double (*f)(double, double)) {
    std::vector<double> layer(g.points());
    if (g.dim == 1) {
        for (int i = 0; i < g.n; ++i) layer[i] = f(g.coord(i), 0.0);
    } else {
        for (int i = 0; i < g.n; ++i)
            for (int j = 0; j < g.n; ++j)
                layer[static_cast<long>(i) * g.n + j] = f(g.coord(i), g.coord(j));
    }
    return layer;
}

} // namespace

TEST_CASE("discrete pucci is exact on quadratics") {
    const EllipticityPair ell{1.0, 3.0};

    const Grid g1 = make_grid(1, 1.0, 9);
    auto conv = sample_layer(g1, [](double x, double) { return x * x; });
    auto conc = sample_layer(g1, [](double x, double) { return -x * x; });
    CHECK(eh::discrete_pucci(conv.data(), g1, 4, 0, ell, -1) == doctest::Approx(2.0));
    CHECK(eh::discrete_pucci(conv.data(), g1, 4, 0, ell, +1) == doctest::Approx(6.0));
    CHECK(eh::discrete_pucci(conc.data(), g1, 4, 0, ell, -1) == doctest::Approx(-6.0));
    CHECK(eh::discrete_pucci(conc.data(), g1, 4, 0, ell, +1) == doctest::Approx(-2.0));

    // saddle x1*x2 has eigenvalues {-1, 1}: P^- = lambda - Lambda via the
    // diagonal frame
    const Grid g2 = make_grid(2, 1.0, 9);
    auto saddle = sample_layer(g2, [](double x, double y) { return x * y; });
    CHECK(eh::discrete_pucci(saddle.data(), g2, 4, 4, ell, -1) == doctest::Approx(-2.0));
    CHECK(eh::discrete_pucci(saddle.data(), g2, 4, 4, ell, +1) == doctest::Approx(2.0));

    // axis-aligned anisotropic: D^2 = diag(2, -4)
    auto aniso = sample_layer(g2, [](double x, double y) { return x * x - 2.0 * y * y; });
    CHECK(eh::discrete_pucci(aniso.data(), g2, 4, 4, ell, -1) == doctest::Approx(-10.0));
    CHECK(eh::discrete_pucci(aniso.data(), g2, 4, 4, ell, +1) == doctest::Approx(2.0));
}

TEST_CASE("upwind gradient picks the monotone one-sided quotient") {
    Grid g = make_grid(1, 1.0, 3); // h = 1
    const double layer[3] = {0.0, 1.0, 3.0};
    // D- = 1, D+ = 2
    CHECK(eh::upwind_gradient_norm(layer, g, 1, 0, Side::SuperExtremal) ==
          doctest::Approx(1.0));
    CHECK(eh::upwind_gradient_norm(layer, g, 1, 0, Side::SubExtremal) ==
          doctest::Approx(2.0));
    const double vee[3] = {2.0, 0.0, 2.0}; // local min: D- = -2, D+ = 2
    CHECK(eh::upwind_gradient_norm(vee, g, 1, 0, Side::SuperExtremal) == 0.0);
    CHECK(eh::upwind_gradient_norm(vee, g, 1, 0, Side::SubExtremal) ==
          doctest::Approx(2.0));
    CHECK(eh::central_gradient_norm(layer, g, 1, 0) == doctest::Approx(1.5));
}

TEST_CASE("cfl bound formula") {
    Grid g = make_grid(2, 1.0, 11); // h = 0.2
    const EllipticityPair ell{1.0, 2.0};
    const double dt = eh::cfl_time_step(g, ell, 3.0);
    CHECK(dt == doctest::Approx(0.9 / (4.0 * 2.0 * 2.0 / 0.04 +
                                       2.0 * std::sqrt(2.0) * 3.0 / 0.2)));
}

TEST_CASE("explicit step is monotone under the CFL bound") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> val(0.0, 1.0);
    const EllipticityPair ell{1.0, 2.0};
    for (int dim = 1; dim <= 2; ++dim) {
        Grid g = make_grid(dim, 1.0, 9);
        g.dt = eh::cfl_time_step(g, ell, 1.0);
        const long npts = g.points();
        for (int trial = 0; trial < 30; ++trial) {
            std::vector<double> base(npts);
            for (auto& v : base) v = val(rng);

            eh::StepContext ctx;
            ctx.ell = ell;
            ctx.side = trial % 2 == 0 ? Side::SuperExtremal : Side::SubExtremal;
            ctx.drift = [](double s) { return s; };
            ctx.use_central = false;

            std::vector<double> out_base(npts, 0.0), out_pert(npts, 0.0);
            eh::step(base.data(), out_base.data(), g, ctx);

            std::vector<double> pert = base;
            const long at = static_cast<long>(rng() % npts);
            pert[at] += 0.05;
            eh::step(pert.data(), out_pert.data(), g, ctx);

            for (long i = 0; i < npts; ++i)
                CHECK(out_pert[i] >= out_base[i] - 1e-13);
        }
    }
}

TEST_CASE("constant data is an exact fixed point") {
    ProblemSpec spec;
    spec.side = Side::SuperExtremal;
    spec.ell = {1.0, 2.0};
    spec.nl = eh::make_nonlinearity("identity");
    spec.data = eh::data_preset("constant:0.7", 1, 1.0, 0.0);
    GridSpec gs{1, 1.0, 33, 0.0, 0.5};
    const eh::Field f = eh::solve(spec, gs);
    CHECK(f.min_value == doctest::Approx(0.7));
    CHECK(f.max_value == doctest::Approx(0.7));
    for (double v : f.values) CHECK(v == doctest::Approx(0.7).epsilon(1e-14));
}

TEST_CASE("shifting the data shifts the solution") {
    // the operator only sees differences, so data + c solves to solution + c
    auto run = [](double shift) {
        ProblemSpec spec;
        spec.side = Side::SuperExtremal;
        spec.ell = {1.0, 2.0};
        spec.nl = eh::make_nonlinearity("identity");
        auto base = eh::data_preset("gaussian", 1, 1.0, 0.0);
        spec.data = [base, shift](const double* x, double t) { return base(x, t) + shift; };
        GridSpec gs{1, 1.0, 65, 0.0, 0.25};
        return eh::solve(spec, gs);
    };
    const eh::Field a = run(0.0), b = run(0.3);
    REQUIRE(a.values.size() == b.values.size());
    for (size_t i = 0; i < a.values.size(); ++i)
        CHECK(b.values[i] == doctest::Approx(a.values[i] + 0.3).epsilon(1e-12));
}

TEST_CASE("exp(x) is stationary for the 1D super-extremal identity problem") {
    // u'' - |u'| = 0 for u = e^x, so the solution should stay put
    ProblemSpec spec;
    spec.side = Side::SuperExtremal;
    spec.ell = {1.0, 1.0};
    spec.nl = eh::make_nonlinearity("identity");
    spec.gradient = eh::GradientScheme::Auto; // mesh condition holds: central
    spec.data = eh::data_preset("exp1d", 1, 1.0, 0.0);
    GridSpec gs{1, 1.0, 65, 0.0, 0.2};
    const eh::Field f = eh::solve(spec, gs);
    double max_err = 0.0;
    for (int i = 0; i < f.grid.n; ++i) {
        const double x = f.grid.coord(i);
        max_err = std::max(max_err,
                           std::abs(f.at(f.grid.stored_layers() - 1, i, 0) - std::exp(x)));
    }
    CHECK(max_err <= 5.0 * f.grid.h * f.grid.h);
}

TEST_CASE("field interpolation is exact on affine data") {
    Grid g = make_grid(1, 1.0, 5);
    g.t_a = 0.0;
    g.t_b = 1.0;
    g.dt = 0.5;
    g.steps = 2;
    g.store_stride = 1;
    eh::Field f;
    f.grid = g;
    for (long l = 0; l < 3; ++l) {
        const double t = 0.5 * static_cast<double>(l);
        for (int i = 0; i < g.n; ++i) f.values.push_back(2.0 * g.coord(i) + 3.0 * t + 1.0);
    }
    const double x = 0.3;
    CHECK(f.interp(&x, 0.7) == doctest::Approx(2.0 * 0.3 + 3.0 * 0.7 + 1.0).epsilon(1e-14));
    const double edge = -1.0;
    CHECK(f.interp(&edge, 0.0) == doctest::Approx(-1.0).epsilon(1e-14));
    const double outside = 1.5;
    CHECK_THROWS_AS(f.interp(&outside, 0.5), eh::DomainError);
    CHECK_THROWS_AS(f.interp(&x, 2.0), eh::DomainError);
}

TEST_CASE("solver configuration guards") {
    ProblemSpec spec;
    spec.nl = eh::make_nonlinearity("identity");
    spec.data = eh::data_preset("gaussian", 1, 1.0, 0.0);
    CHECK_THROWS_AS(eh::solve(spec, GridSpec{3, 1.0, 33, 0.0, 1.0}), eh::ConfigError);
    CHECK_THROWS_AS(eh::solve(spec, GridSpec{1, 1.0, 3, 0.0, 1.0}), eh::ConfigError);
    CHECK_THROWS_AS(eh::solve(spec, GridSpec{1, 1.0, 33, 1.0, 0.0}), eh::ConfigError);
    ProblemSpec no_data = spec;
    no_data.data = nullptr;
    CHECK_THROWS_AS(eh::solve(no_data, GridSpec{1, 1.0, 33, 0.0, 1.0}), eh::ConfigError);
    ProblemSpec no_drift = spec;
    no_drift.nl.reset();
    CHECK_THROWS_AS(eh::solve(no_drift, GridSpec{1, 1.0, 33, 0.0, 1.0}), eh::ConfigError);
}

TEST_CASE("data presets") {
    auto c = eh::data_preset("constant:2.5", 2, 1.0, 0.0);
    const double x[2] = {0.3, -0.4};
    CHECK(c(x, 0.0) == 2.5);
    auto gsn = eh::data_preset("gaussian", 2, 1.0, 0.0);
    CHECK(gsn(x, 0.0) == doctest::Approx(0.2 + std::exp(-2.0 * 0.25)));
    auto rising = eh::data_preset("rising", 1, 2.0, -1.0);
    const double origin[1] = {0.0};
    CHECK(rising(origin, -1.0) == doctest::Approx(1.05));
    CHECK(rising(origin, 0.0) == doctest::Approx(1.45));
    CHECK_THROWS_AS(eh::data_preset("mystery", 1, 1.0, 0.0), eh::ConfigError);
    CHECK_THROWS_AS(eh::data_preset("constant:abc", 1, 1.0, 0.0), eh::ConfigError);
}

TEST_CASE("time subsampling respects max_stored_layers") {
    ProblemSpec spec;
    spec.side = Side::SuperExtremal;
    spec.ell = {1.0, 2.0};
    spec.nl = eh::make_nonlinearity("identity");
    spec.data = eh::data_preset("gaussian", 1, 1.0, 0.0);
    GridSpec gs{1, 1.0, 129, 0.0, 1.0};
    gs.max_stored_layers = 17;
    const eh::Field f = eh::solve(spec, gs);
    CHECK(f.grid.stored_layers() <= 17);
    CHECK(f.grid.stored_layers() >= 2);
    CHECK(f.values.size() ==
          static_cast<size_t>(f.grid.stored_layers()) * f.grid.points());
    CHECK(f.grid.steps * 1.0 * f.grid.dt == doctest::Approx(1.0));
}
