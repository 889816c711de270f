#include "runner.hpp"

#include "counterexample.hpp"
#include "errors.hpp"
#include "harness.hpp"
#include "nonlinearity.hpp"
#include "report_io.hpp"
#include "solver.hpp"

#include <json.hpp>

#include <cmath>
#include <memory>

namespace eh {

namespace {

using nlohmann::json;

/// Collects named artifacts, writes them under the output directory (when
/// set), and finishes with a manifest of content hashes.
class ArtifactSink {
  public:
    explicit ArtifactSink(std::string dir) : dir_(std::move(dir)) {}

    void add(const std::string& name, const std::string& content) {
        if (dir_.empty()) return;
        write_text_file(dir_ + "/" + name, content);
        manifest_.push_back({{"file", name},
                             {"bytes", content.size()},
                             {"fnv1a64", fnv1a64_hex(content)}});
    }

    void finalize() {
        if (dir_.empty()) return;
        const json m = {{"files", manifest_}};
        write_text_file(dir_ + "/manifest.json", m.dump(2) + "\n");
    }

    const std::string& dir() const { return dir_; }

  private:
    std::string dir_;
    json manifest_ = json::array();
};

json dispatch(const std::string& name, const json& cfg, ArtifactSink& sink);

// ---- config helpers -------------------------------------------------------

Nonlinearity nl_from(const json& cfg, json& resolved) {
    const std::string id = cfg.value("nl", std::string("identity"));
    resolved["nl"] = id;
    return make_nonlinearity(id);
}

GridSpec grid_from(const json& cfg, json& resolved) {
    const json g = cfg.value("grid", json::object());
    GridSpec gs;
    gs.dim = g.value("dim", 1);
    gs.R = g.value("R", 2.0);
    gs.points_per_axis = g.value("points_per_axis", 129);
    gs.t_a = g.value("t_a", -1.0);
    gs.t_b = g.value("t_b", 0.0);
    gs.max_stored_layers = g.value("max_stored_layers", 513);
    resolved["grid"] = {{"dim", gs.dim},
                        {"R", gs.R},
                        {"points_per_axis", gs.points_per_axis},
                        {"t_a", gs.t_a},
                        {"t_b", gs.t_b},
                        {"max_stored_layers", gs.max_stored_layers}};
    return gs;
}

Side side_from(const json& cfg, json& resolved) {
    const std::string s = cfg.value("side", std::string("super"));
    resolved["side"] = s;
    if (s == "super") return Side::SuperExtremal;
    if (s == "sub") return Side::SubExtremal;
    throw ConfigError("side must be 'super' or 'sub'");
}

GradientScheme gradient_from(const json& cfg, json& resolved) {
    const std::string s = cfg.value("gradient", std::string("auto"));
    resolved["gradient"] = s;
    if (s == "auto") return GradientScheme::Auto;
    if (s == "upwind") return GradientScheme::Upwind;
    if (s == "central") return GradientScheme::Central;
    throw ConfigError("gradient must be 'auto', 'upwind' or 'central'");
}

struct SolveOutcome {
    std::shared_ptr<Field> field;
    json meta;
};

SolveOutcome run_solve(const json& cfg, json& resolved) {
    const GridSpec gs = grid_from(cfg, resolved);
    ProblemSpec ps;
    ps.side = side_from(cfg, resolved);
    ps.ell.lambda = cfg.value("lambda", 1.0);
    ps.ell.Lambda = cfg.value("Lambda", 1.0);
    resolved["lambda"] = ps.ell.lambda;
    resolved["Lambda"] = ps.ell.Lambda;
    if (!(ps.ell.lambda > 0.0 && ps.ell.Lambda >= ps.ell.lambda))
        throw ConfigError("requires 0 < lambda <= Lambda");

    const std::string drift = cfg.value("drift", std::string(""));
    if (drift == "zero") {
        ps.drift = [](double) { return 0.0; };
        ps.drift_lipschitz = 0.0;
        resolved["drift"] = "zero";
    } else if (!drift.empty()) {
        throw ConfigError("the only drift override is 'zero'");
    } else {
        ps.nl = nl_from(cfg, resolved);
    }
    ps.gradient = gradient_from(cfg, resolved);

    const std::string data = cfg.value("data", std::string("gaussian"));
    const double scale = cfg.value("data_scale", 1.0);
    resolved["data"] = data;
    resolved["data_scale"] = scale;
    const SpaceTimeFn preset = data_preset(data, gs.dim, gs.R, gs.t_a);
    ps.data = [preset, scale](const double* x, double t) {
        return scale * preset(x, t);
    };

    SolveOutcome out;
    out.field = std::make_shared<Field>(solve(ps, gs));
    const Grid& g = out.field->grid;
    out.meta = {{"dim", g.dim},
                {"R", g.R},
                {"points_per_axis", g.n},
                {"h", g.h},
                {"t_a", g.t_a},
                {"t_b", g.t_b},
                {"dt", g.dt},
                {"steps", g.steps},
                {"store_stride", g.store_stride},
                {"stored_layers", g.stored_layers()},
                {"min_value", out.field->min_value},
                {"max_value", out.field->max_value}};
    return out;
}

/// Field config: either {"analytic": {"name", "dim", "R", "t_lo", "t_hi"}}
/// or {"solve": {<solve command config>}}.
FieldView view_from(const json& fcfg, json& resolved) {
    if (fcfg.contains("analytic")) {
        const json a = fcfg.at("analytic");
        const std::string name = a.at("name").get<std::string>();
        const int dim = a.value("dim", 1);
        const double R = a.value("R", 2.0);
        const double t_lo = a.value("t_lo", -1.0);
        const double t_hi = a.value("t_hi", 0.0);
        resolved["analytic"] = {
            {"name", name}, {"dim", dim}, {"R", R}, {"t_lo", t_lo}, {"t_hi", t_hi}};
        return analytic_view(name, dim, R, t_lo, t_hi);
    }
    if (fcfg.contains("solve")) {
        json sub_resolved;
        SolveOutcome out = run_solve(fcfg.at("solve"), sub_resolved);
        resolved["solve"] = sub_resolved;
        resolved["solve_meta"] = out.meta;
        return make_view(out.field);
    }
    throw ConfigError("field config needs 'analytic' or 'solve'");
}

std::vector<double> c_grid_from(const json& cfg, json& resolved) {
    std::vector<double> grid;
    if (cfg.contains("c_grid"))
        grid = cfg.at("c_grid").get<std::vector<double>>();
    else
        grid = default_c_grid();
    resolved["c_grid"] = grid;
    return grid;
}

// ---- report serialization --------------------------------------------------

json to_json(const ProbeReport& r) {
    json recs = json::array();
    for (const ProbeRecord& rec : r.records) {
        recs.push_back({{"x", std::vector<double>(rec.base.begin(), rec.base.end())},
                        {"t0", rec.t0},
                        {"u0", rec.u0},
                        {"alpha0", rec.alpha0},
                        {"rho", rec.rho},
                        {"extremum", rec.extremum},
                        {"ratio", rec.ratio},
                        {"admissible", rec.admissible}});
    }
    return {{"kind", r.kind},      {"c_star", r.c_star}, {"pass", r.pass},
            {"cn", r.cn},          {"grid_h", r.grid_h}, {"c_grid", r.c_grid},
            {"records", recs}};
}

std::string probe_csv(std::span<const ProbeReport> reports) {
    CsvBuilder csv({"kind", "C", "x1", "x2", "t0", "u0", "alpha0", "rho", "extremum",
                    "ratio", "admissible"});
    for (const ProbeReport& r : reports) {
        const double C = r.pass ? r.c_star : 0.0;
        for (const ProbeRecord& rec : r.records)
            csv.raw_row({r.kind, format_sci(C), format_sci(rec.base[0]),
                         format_sci(rec.base[1]), format_sci(rec.t0),
                         format_sci(rec.u0), format_sci(rec.alpha0),
                         format_sci(rec.rho), format_sci(rec.extremum),
                         format_sci(rec.ratio), rec.admissible ? "1" : "0"});
    }
    return csv.text();
}

json to_json(const HolderReport& r) {
    json levels = json::array();
    int k = 0;
    for (const HolderLevel& lv : r.levels)
        levels.push_back({{"k", k++},
                          {"rho", lv.rho},
                          {"osc", lv.osc},
                          {"bound", lv.bound},
                          {"pass", lv.pass}});
    return {{"C", r.C},
            {"L2", r.C},
            {"cn", r.cn},
            {"delta", r.delta},
            {"omega0", r.omega0},
            {"rho_factor", r.rho_factor},
            {"alpha_fit", r.alpha_fit},
            {"alpha_fit_defined", r.alpha_fit_defined},
            {"alpha_theory", r.alpha_theory},
            {"decay_pass", r.decay_pass},
            {"levels", levels}};
}

json to_json(const ChainReport& r) {
    json steps = json::array();
    int i = 0;
    for (const ChainStep& s : r.steps)
        steps.push_back(
            {{"i", i++}, {"rho", s.rho}, {"r", s.r}, {"t", s.t}, {"M", s.M}});
    return {{"direction", r.direction},
            {"K", r.K},
            {"r_K", r.steps.back().r},
            {"M_K", r.steps.back().M},
            {"t_abs", r.t_abs},
            {"integral_phi", r.integral_phi},
            {"integral_phi_plus", r.integral_phi_plus},
            {"majorization_rhs", r.majorization_rhs},
            {"majorization_pass", r.majorization_pass},
            {"c_meas", r.c_meas},
            {"c_tilde", r.c_tilde},
            {"t_window_pass", r.t_window_pass},
            {"rho_window_pass", r.rho_window_pass},
            {"steps", steps}};
}

// ---- commands --------------------------------------------------------------

json cmd_validate_phi(const json& cfg, ArtifactSink& sink, json& resolved) {
    const Nonlinearity nl = nl_from(cfg, resolved);
    std::vector<double> grid;
    for (int i = 0; i <= 120; ++i) grid.push_back(std::pow(10.0, -6.0 + 0.1 * i));
    const ConditionReport rep = validate_conditions(nl, grid);
    const OsgoodReport og = osgood_classify(nl);

    json evidence = json::array();
    CsvBuilder csv({"a", "integral"});
    PlotSpec plot;
    plot.title = "Osgood evidence: " + nl.name;
    plot.xlabel = "1/a";
    plot.ylabel = "integral over [a,1] of ds/phi";
    plot.logx = true;
    plot.series.push_back({"I(a)", {}});
    for (const auto& [a, I] : og.evidence) {
        evidence.push_back({a, I});
        csv.row({a, I});
        plot.series[0].points.push_back({1.0 / a, I});
    }
    sink.add("osgood_evidence.csv", csv.text());
    sink.add("osgood.svg", render_line_plot(plot));

    return {{"nl", nl.name},
            {"lambda0", nl.lambda0},
            {"p1_pass", rep.p1_pass},
            {"p2_sequence", rep.p2_sequence},
            {"p2_pass", rep.p2_pass},
            {"p3_sup_ratio", rep.p3_sup_ratio},
            {"p3_pass", rep.p3_pass},
            {"osgood",
             {{"verdict", to_string(og.verdict)},
              {"divergence_slope", og.divergence_slope},
              {"evidence", evidence}}},
            {"pass", rep.all_pass()}};
}

json cmd_check_counterexample(const json& cfg, ArtifactSink& sink, json& resolved) {
    const double eps0 = cfg.at("eps0").get<double>();
    const long k = cfg.value("k", 16L);
    const bool sweep = cfg.value("sweep", false);
    BallGridSpec gs;
    const json g = cfg.value("grid", json::object());
    gs.points_per_axis = g.value("points_per_axis", 64);
    gs.inner_points_per_axis = g.value("inner_points_per_axis", 64);
    const int max_exp = cfg.value("max_exponent", 16);
    resolved["eps0"] = eps0;
    resolved["k"] = k;
    resolved["sweep"] = sweep;
    resolved["grid"] = {{"points_per_axis", gs.points_per_axis},
                        {"inner_points_per_axis", gs.inner_points_per_axis}};
    resolved["max_exponent"] = max_exp;

    const CounterexampleParams p = make_params(eps0, k);
    const InequalityReport ineq = inequality_check(p, gs);
    const BlowupReport blow = harnack_blowup(p, gs);
    const bool floor_ok =
        blow.integral >= 0.5 * std::log(static_cast<double>(k)) - 1e-6;
    const bool sup_ok = blow.sup_b1 > 1.0;

    // margin profile over (|x|, z) slices for the CSV/plot
    CsvBuilder csv({"s", "z", "margin"});
    PlotSpec plot;
    plot.title = "inequality margin vs |x|";
    plot.xlabel = "|x|";
    plot.ylabel = "min margin over z";
    plot.series.push_back({"margin", {}});
    for (int i = 1; i <= 64; ++i) {
        const double s = 2.0 * i / 64.0;
        double zmin = std::numeric_limits<double>::infinity();
        for (int j = 0; j < 33; ++j) {
            const double z = -2.0 + 4.0 * j / 32.0;
            if (s * s + z * z >= 4.0) continue;
            const CounterexampleEval ev = eval(p, s, 0.0, z);
            const double gn = std::sqrt(ev.gradient[0] * ev.gradient[0] +
                                        ev.gradient[1] * ev.gradient[1] +
                                        ev.gradient[2] * ev.gradient[2]);
            const double margin =
                std::pow(gn, 1.0 + eps0) -
                std::abs(pucci_minus(ev.hessian, p.ellipticity()));
            csv.row({s, z, margin});
            zmin = std::min(zmin, margin);
        }
        if (std::isfinite(zmin)) plot.series[0].points.push_back({s, zmin});
    }
    sink.add("margins.csv", csv.text());
    sink.add("margins.svg", render_line_plot(plot));

    json rep = {
        {"params",
         {{"eps0", p.eps0}, {"k", p.k}, {"q", p.q}, {"r", p.r}, {"A", p.coefA},
          {"B", p.coefB}, {"C", p.coefC}, {"D", p.coefD}}},
        {"inequality",
         {{"min_margin", ineq.min_margin},
          {"argmin", std::vector<double>(ineq.argmin.begin(), ineq.argmin.end())},
          {"pass", ineq.pass},
          {"outer_max_scaled_pminus", ineq.outer_max_scaled_pminus},
          {"outer_zero_pass", ineq.outer_zero_pass},
          {"min_value", ineq.min_value},
          {"points_checked", ineq.points_checked}}},
        {"blowup",
         {{"inf_b1", blow.inf_b1},
          {"sup_b1", blow.sup_b1},
          {"integral", blow.integral},
          {"floor_half_log_k_pass", floor_ok},
          {"sup_exceeds_one", sup_ok}}}};
    bool pass = ineq.pass && ineq.outer_zero_pass && ineq.min_value > 0.0 &&
                floor_ok && sup_ok;
    if (sweep) {
        const SweepResult sw = min_valid_k(eps0, gs, max_exp);
        json entries = json::array();
        for (const SweepEntry& e : sw.entries)
            entries.push_back({{"k", e.k},
                               {"valid", e.valid},
                               {"pass", e.pass},
                               {"min_margin", e.min_margin}});
        rep["sweep"] = {{"k_min", sw.k_min},
                        {"monotone", sw.monotone},
                        {"entries", entries}};
    }
    rep["pass"] = pass;
    return rep;
}

json cmd_solve(const json& cfg, ArtifactSink& sink, json& resolved) {
    SolveOutcome out = run_solve(cfg, resolved);
    const int csv_layers = cfg.value("csv_layers", 9);
    resolved["csv_layers"] = csv_layers;

    const Grid& g = out.field->grid;
    const long sl = g.stored_layers();
    const int L = static_cast<int>(std::min<long>(csv_layers, sl));
    std::vector<std::string> header = {"t", "x1", "value"};
    if (g.dim == 2) header = {"t", "x1", "x2", "value"};
    CsvBuilder csv(header);
    for (int li = 0; li < L; ++li) {
        const long layer = L == 1 ? 0 : li * (sl - 1) / (L - 1);
        const double t = g.t_a + g.stored_dt() * static_cast<double>(layer);
        if (g.dim == 1) {
            for (int i = 0; i < g.n; ++i)
                csv.row({t, g.coord(i), out.field->at(layer, i, 0)});
        } else {
            for (int i = 0; i < g.n; ++i)
                for (int j = 0; j < g.n; ++j)
                    csv.row({t, g.coord(i), g.coord(j), out.field->at(layer, i, j)});
        }
    }
    sink.add("field.csv", csv.text());
    json rep = out.meta;
    rep["pass"] = true;
    return rep;
}

json cmd_probe_harnack(const json& cfg, ArtifactSink& sink, json& resolved) {
    json fres;
    const FieldView view = view_from(cfg.at("field"), fres);
    resolved["field"] = fres;
    const Nonlinearity nl = nl_from(cfg, resolved);
    const double cn = cfg.value("cn", 1.0);
    resolved["cn"] = cn;
    const std::vector<double> c_grid = c_grid_from(cfg, resolved);
    const std::string direction = cfg.value("direction", std::string("both"));
    resolved["direction"] = direction;

    std::vector<ProbeReport> reports;
    json rep;
    bool pass = true;
    if (direction == "both" || direction == "backward") {
        reports.push_back(backward_probe(view, nl, c_grid, cn));
        rep["backward"] = to_json(reports.back());
        pass = pass && reports.back().pass;
    }
    if (direction == "both" || direction == "forward") {
        const std::vector<BasePoint> bases = default_base_points(view);
        reports.push_back(forward_probe(view, nl, c_grid, cn, bases));
        rep["forward"] = to_json(reports.back());
        pass = pass && reports.back().pass;
    }
    if (reports.empty()) throw ConfigError("direction must be forward/backward/both");
    sink.add("probe_records.csv", probe_csv(reports));
    rep["pass"] = pass;
    return rep;
}

json cmd_estimate_holder(const json& cfg, ArtifactSink& sink, json& resolved) {
    json fres;
    const FieldView view = view_from(cfg.at("field"), fres);
    resolved["field"] = fres;
    const Nonlinearity nl = nl_from(cfg, resolved);
    const double cn = cfg.value("cn", 1.0);
    resolved["cn"] = cn;

    double C;
    json rep;
    if (cfg.value("C", json("auto")) == json("auto")) {
        const std::vector<double> c_grid = default_c_grid();
        const std::vector<BasePoint> bases = default_base_points(view);
        const ProbeReport pr = forward_probe(view, nl, c_grid, cn, bases);
        if (!pr.pass)
            throw NotFound("estimate-holder: no passing C* to adopt from the probe");
        C = pr.c_star;
        rep["c_source"] = "forward_probe";
    } else {
        C = cfg.at("C").get<double>();
        rep["c_source"] = "config";
    }
    resolved["C"] = C;

    const HolderReport hr = holder_estimate(view, nl, C, cn);
    rep.update(to_json(hr));

    CsvBuilder csv({"k", "rho", "osc", "bound", "pass"});
    PlotSpec plot;
    plot.title = "oscillation decay";
    plot.xlabel = "rho";
    plot.ylabel = "osc";
    plot.logx = plot.logy = true;
    plot.series.push_back({"measured", {}});
    plot.series.push_back({"bound", {}});
    int k = 0;
    for (const HolderLevel& lv : hr.levels) {
        csv.raw_row({std::to_string(k), format_sci(lv.rho), format_sci(lv.osc),
                     format_sci(lv.bound), lv.pass ? "1" : "0"});
        plot.series[0].points.push_back({lv.rho, lv.osc});
        plot.series[1].points.push_back({lv.rho, lv.bound});
        ++k;
    }
    sink.add("holder_levels.csv", csv.text());
    sink.add("holder.svg", render_line_plot(plot));
    rep["pass"] = hr.decay_pass;
    return rep;
}

json cmd_global_harnack(const json& cfg, ArtifactSink& sink, json& resolved) {
    json fres;
    const FieldView view = view_from(cfg.at("field"), fres);
    resolved["field"] = fres;
    const Nonlinearity nl = nl_from(cfg, resolved);
    const double C = cfg.value("C", 2.0);
    const double cn = cfg.value("cn", 1.0);
    const std::string dir = cfg.value("direction", std::string("forward"));
    resolved["C"] = C;
    resolved["cn"] = cn;
    resolved["direction"] = dir;
    const ChainDirection cd =
        dir == "backward" ? ChainDirection::Backward : ChainDirection::Forward;
    if (dir != "forward" && dir != "backward")
        throw ConfigError("direction must be 'forward' or 'backward'");

    const ChainReport cr = global_chain(view, nl, C, cn, cd);
    CsvBuilder csv({"i", "rho", "r", "t", "M"});
    int i = 0;
    for (const ChainStep& s : cr.steps) {
        csv.raw_row({std::to_string(i), format_sci(s.rho), format_sci(s.r),
                     format_sci(s.t), format_sci(s.M)});
        ++i;
    }
    sink.add("chain.csv", csv.text());
    json rep = to_json(cr);
    const double rK = cr.steps.back().r;
    rep["pass"] = cr.t_window_pass && cr.majorization_pass && cr.rho_window_pass &&
                  rK >= 1.0 && rK <= 2.0;
    return rep;
}

json cmd_min_principle(const json& cfg, ArtifactSink& sink, json& resolved) {
    const Nonlinearity nl = nl_from(cfg, resolved);
    const double C = cfg.value("C", 2.0);
    const double cn = cfg.value("cn", 1.0);
    resolved["C"] = C;
    resolved["cn"] = cn;

    std::vector<std::pair<double, FieldView>> family;
    json fres = json::array();
    for (const json& member : cfg.at("family")) {
        json mres;
        const double eps = member.at("eps").get<double>();
        FieldView view = view_from(member.at("field"), mres);
        fres.push_back({{"eps", eps}, {"field", mres}});
        family.emplace_back(eps, std::move(view));
    }
    resolved["family"] = fres;

    const MinPrincipleReport mr = minimum_principle_check(family, nl, C, cn);
    json entries = json::array();
    CsvBuilder csv({"eps", "M_K", "t_abs", "integral_phi"});
    PlotSpec plot;
    plot.title = "minimum principle trend";
    plot.xlabel = "eps";
    plot.ylabel = "M_K";
    plot.logx = plot.logy = true;
    plot.series.push_back({"M_K", {}});
    for (const MinPrincipleEntry& e : mr.entries) {
        entries.push_back({{"eps", e.eps},
                           {"M_K", e.m_K},
                           {"t_abs", e.t_abs},
                           {"integral_phi", e.integral_phi}});
        csv.row({e.eps, e.m_K, e.t_abs, e.integral_phi});
        plot.series[0].points.push_back({e.eps, e.m_K});
    }
    sink.add("min_principle.csv", csv.text());
    sink.add("min_principle.svg", render_line_plot(plot));
    return {{"applicable", mr.applicable},
            {"osgood_verdict", mr.osgood_verdict},
            {"entries", entries},
            {"monotone_pass", mr.monotone_pass},
            {"verdict", mr.applicable ? (mr.monotone_pass ? "Pass" : "Fail")
                                      : "NotApplicable"},
            {"pass", !mr.applicable || mr.monotone_pass}};
}

json cmd_all(const json& cfg, ArtifactSink& sink, json& resolved) {
    const std::string out = sink.dir();
    resolved["seed"] = cfg.value("seed", 0);

    const json solved_probe_field = {
        {"solve",
         {{"side", "super"}, {"lambda", 1.0}, {"Lambda", 2.0}, {"nl", "identity"},
          {"data", "gaussian"},
          {"grid", {{"dim", 2}, {"R", 2.0}, {"points_per_axis", 65}, {"t_a", -0.3},
                    {"t_b", 0.0}}}}}};
    const auto constant_member = [](double eps) {
        return json{{"eps", eps},
                    {"field",
                     {{"analytic",
                       {{"name", "constant:" + format_sci(eps)}, {"dim", 1},
                        {"R", 2.0}, {"t_lo", 0.0}, {"t_hi", 1.0}}}}}};
    };

    const std::vector<std::pair<std::string, json>> battery = {
        {"validate-phi", {{"nl", "identity"}}},
        {"validate-phi", {{"nl", "logpow:beta=1"}}},
        {"check-counterexample", {{"eps0", 1.0}, {"k", 16}}},
        {"solve",
         {{"side", "super"}, {"nl", "identity"}, {"data", "gaussian"},
          {"grid", {{"dim", 1}, {"R", 2.0}, {"points_per_axis", 129}, {"t_a", -0.25},
                    {"t_b", 0.0}}}}},
        {"probe-harnack",
         {{"field", {{"analytic", {{"name", "affine"}, {"dim", 1}, {"R", 2.0},
                                   {"t_lo", -1.0}, {"t_hi", 0.0}}}}},
          {"nl", "identity"}}},
        {"probe-harnack", {{"field", solved_probe_field}, {"nl", "identity"}}},
        {"estimate-holder",
         {{"field", {{"analytic", {{"name", "sqrtabs"}, {"dim", 1}, {"R", 2.0},
                                   {"t_lo", -1.5}, {"t_hi", 0.0}}}}},
          {"nl", "identity"}, {"C", 1.0}}},
        {"global-harnack",
         {{"field", {{"analytic", {{"name", "constant:5"}, {"dim", 1}, {"R", 2.0},
                                   {"t_lo", -1.0}, {"t_hi", 0.0}}}}},
          {"nl", "identity"}, {"C", 2.0}, {"cn", 1.0}}},
        {"min-principle",
         {{"nl", "identity"}, {"C", 2.0}, {"cn", 1.0},
          {"family", {constant_member(0.1), constant_member(0.01),
                      constant_member(0.001)}}}},
    };

    json steps = json::array();
    bool pass = true;
    int index = 0;
    for (const auto& [name, sub_cfg] : battery) {
        const std::string step_id = std::to_string(index) + "_" + name;
        ArtifactSink sub(out.empty() ? "" : out + "/" + step_id);
        json step = {{"step", step_id}, {"command", name}};
        try {
            json rep = dispatch(name, sub_cfg, sub);
            sub.add("report.json", rep.dump(2) + "\n");
            sub.finalize();
            step["pass"] = rep.value("pass", false);
        } catch (const std::exception& e) {
            step["pass"] = false;
            step["error"] = e.what();
        }
        pass = pass && step["pass"].get<bool>();
        steps.push_back(step);
        ++index;
    }
    return {{"steps", steps}, {"pass", pass}};
}

json dispatch(const std::string& name, const json& cfg, ArtifactSink& sink) {
    json resolved = json::object(); // output path deliberately not embedded
    json rep;
    if (name == "validate-phi") rep = cmd_validate_phi(cfg, sink, resolved);
    else if (name == "check-counterexample")
        rep = cmd_check_counterexample(cfg, sink, resolved);
    else if (name == "solve") rep = cmd_solve(cfg, sink, resolved);
    else if (name == "probe-harnack") rep = cmd_probe_harnack(cfg, sink, resolved);
    else if (name == "estimate-holder") rep = cmd_estimate_holder(cfg, sink, resolved);
    else if (name == "global-harnack") rep = cmd_global_harnack(cfg, sink, resolved);
    else if (name == "min-principle") rep = cmd_min_principle(cfg, sink, resolved);
    else if (name == "all") rep = cmd_all(cfg, sink, resolved);
    else throw ConfigError("unknown command '" + name + "'");
    rep["command"] = name;
    rep["resolved_config"] = resolved;
    return rep;
}

} // namespace

RunResult run_command(const std::string& name, const std::string& config_json) {
    json cfg;
    try {
        cfg = config_json.empty() ? json::object() : json::parse(config_json);
    } catch (const json::exception& e) {
        const json err = {{"command", name}, {"error", e.what()}, {"pass", false}};
        return {1, err.dump(2)};
    }
    try {
        ArtifactSink sink(cfg.value("out", std::string()));
        json rep = dispatch(name, cfg, sink);
        sink.add("report.json", rep.dump(2) + "\n");
        sink.finalize();
        return {rep.value("pass", false) ? 0 : 2, rep.dump(2)};
    } catch (const ConfigError& e) {
        const json err = {{"command", name}, {"error", e.what()}, {"pass", false}};
        return {1, err.dump(2)};
    } catch (const json::exception& e) {
        const json err = {{"command", name}, {"error", e.what()}, {"pass", false}};
        return {1, err.dump(2)};
    } catch (const std::exception& e) {
        const json err = {{"command", name}, {"error", e.what()}, {"pass", false}};
        return {2, err.dump(2)};
    }
}

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names = {
        "validate-phi", "check-counterexample", "solve",         "probe-harnack",
        "estimate-holder", "global-harnack",    "min-principle", "all"};
    return names;
}

} // namespace eh
