// Command-line front end. Builds a JSON config from flags and/or a config
// file and drives the shared library through its C API only.

#include <extremal_harnack.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using nlohmann::json;

json load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw CLI::ValidationError("--config", "cannot open '" + path + "'");
    std::stringstream buf;
    buf << f.rdbuf();
    try {
        return json::parse(buf.str());
    } catch (const json::exception& e) {
        throw CLI::ValidationError("--config", e.what());
    }
}

int run(const std::string& command, const json& cfg) {
    char* report = nullptr;
    const eh_status st = eh_run_command(command.c_str(), cfg.dump().c_str(), &report);
    if (report) {
        std::cout << report << "\n";
        eh_string_free(report);
    }
    if (st != EH_OK && !report)
        std::cerr << "error: " << eh_last_error_message() << "\n";
    return static_cast<int>(st);
}

struct CommonOpts {
    std::string config_path;
    std::string out;
    std::optional<unsigned long long> seed;
    std::string nl;

    void attach(CLI::App* app) {
        app->add_option("--config", config_path, "JSON config file");
        app->add_option("--out", out, "output directory for reports and artifacts");
        app->add_option("--seed", seed, "seed recorded with the run");
        app->add_option("--nl", nl,
                        "nonlinearity id (identity, logpow:beta=<f>, pow:eps=<f>, root)");
    }

    json resolve() const {
        json cfg = config_path.empty() ? json::object() : load_config(config_path);
        if (!out.empty()) cfg["out"] = out;
        if (seed) cfg["seed"] = *seed;
        if (!nl.empty()) cfg["nl"] = nl;
        return cfg;
    }
};

json analytic_field(const std::string& name) {
    return {{"analytic", {{"name", name}}}};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical machinery for extremal parabolic Harnack estimates"};
    app.require_subcommand(1);
    app.set_version_flag("--version", eh_version());

    std::string command;
    json extra = json::object();

    CommonOpts common;

    auto* validate = app.add_subcommand("validate-phi", "check conditions on phi");
    CommonOpts c_validate;
    c_validate.attach(validate);
    validate->callback([&] {
        command = "validate-phi";
        common = c_validate;
    });

    auto* cex = app.add_subcommand("check-counterexample",
                                   "verify the explicit blow-up family");
    CommonOpts c_cex;
    c_cex.attach(cex);
    double eps0 = 1.0;
    long k_val = 16;
    bool sweep = false;
    cex->add_option("--eps0", eps0, "growth exponent eps0")->required();
    cex->add_option("--k", k_val, "family index k");
    cex->add_flag("--sweep", sweep, "dyadic sweep for the smallest passing k");
    cex->callback([&] {
        command = "check-counterexample";
        common = c_cex;
        extra = {{"eps0", eps0}, {"k", k_val}, {"sweep", sweep}};
    });

    auto* solve = app.add_subcommand("solve", "run the finite-difference solver");
    CommonOpts c_solve;
    c_solve.attach(solve);
    solve->callback([&] {
        command = "solve";
        common = c_solve;
    });

    auto* probe = app.add_subcommand("probe-harnack",
                                     "backward/forward intrinsic Harnack probes");
    CommonOpts c_probe;
    c_probe.attach(probe);
    std::string probe_field, probe_direction;
    probe->add_option("--field", probe_field, "analytic field name (else via --config)");
    probe->add_option("--direction", probe_direction, "backward, forward or both");
    probe->callback([&] {
        command = "probe-harnack";
        common = c_probe;
        extra = json::object();
        if (!probe_field.empty()) extra["field"] = analytic_field(probe_field);
        if (!probe_direction.empty()) extra["direction"] = probe_direction;
    });

    auto* holder = app.add_subcommand("estimate-holder",
                                      "oscillation-decay Holder estimate");
    CommonOpts c_holder;
    c_holder.attach(holder);
    std::string holder_field;
    double holder_C = -1.0;
    holder->add_option("--field", holder_field, "analytic field name (else via --config)");
    holder->add_option("--C", holder_C, "Harnack constant (omit for auto)");
    holder->callback([&] {
        command = "estimate-holder";
        common = c_holder;
        extra = json::object();
        if (!holder_field.empty()) extra["field"] = analytic_field(holder_field);
        if (holder_C > 0.0) extra["C"] = holder_C;
    });

    auto* chain = app.add_subcommand("global-harnack",
                                     "waiting-time iteration to unit radius");
    CommonOpts c_chain;
    c_chain.attach(chain);
    std::string chain_field, chain_direction;
    double chain_C = 2.0, chain_cn = 1.0;
    chain->add_option("--field", chain_field, "analytic field name (else via --config)");
    chain->add_option("--C", chain_C, "Harnack constant");
    chain->add_option("--cn", chain_cn, "waiting-set constant c_n");
    chain->add_option("--direction", chain_direction, "forward or backward");
    chain->callback([&] {
        command = "global-harnack";
        common = c_chain;
        extra = {{"C", chain_C}, {"cn", chain_cn}};
        if (!chain_field.empty()) extra["field"] = analytic_field(chain_field);
        if (!chain_direction.empty()) extra["direction"] = chain_direction;
    });

    auto* minp = app.add_subcommand("min-principle",
                                    "strong minimum principle trend check");
    CommonOpts c_minp;
    c_minp.attach(minp);
    minp->callback([&] {
        command = "min-principle";
        common = c_minp;
    });

    auto* all = app.add_subcommand("all", "run the full experiment battery");
    CommonOpts c_all;
    c_all.attach(all);
    all->callback([&] {
        command = "all";
        common = c_all;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        json cfg = common.resolve();
        cfg.update(extra);
        return run(command, cfg);
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
