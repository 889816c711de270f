#include "extremal_harnack.h"

#include "errors.hpp"
#include "nonlinearity.hpp"
#include "pucci.hpp"
#include "runner.hpp"

#include <cstdlib>
#include <cstring>
#include <string>

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

eh_status classify(const std::exception& e) {
    g_last_error = e.what();
    if (dynamic_cast<const eh::ConfigError*>(&e)) return EH_ERR_CONFIG;
    // domain/precondition/check failures are mathematical outcomes
    if (dynamic_cast<const std::runtime_error*>(&e)) return EH_ERR_MATH;
    return EH_ERR_INTERNAL;
}

template <typename Fn>
eh_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const std::exception& e) {
        return classify(e);
    } catch (...) {
        g_last_error = "unknown failure";
        return EH_ERR_INTERNAL;
    }
}

} // namespace

struct eh_nonlinearity {
    eh::Nonlinearity nl;
};

extern "C" {

const char* eh_version(void) { return "1.0.0"; }

const char* eh_last_error_message(void) { return g_last_error.c_str(); }

void eh_string_free(char* s) { std::free(s); }

eh_status eh_run_command(const char* name, const char* config_json,
                         char** report_json_out) {
    if (!name || !report_json_out) {
        g_last_error = "name and report_json_out are required";
        return EH_ERR_CONFIG;
    }
    *report_json_out = nullptr;
    return guarded([&]() -> eh_status {
        const eh::RunResult res =
            eh::run_command(name, config_json ? config_json : "");
        *report_json_out = dup_string(res.report_json);
        if (!*report_json_out) {
            g_last_error = "out of memory";
            return EH_ERR_INTERNAL;
        }
        if (res.exit_code == 0) return EH_OK;
        if (res.exit_code == 1) {
            g_last_error = "config error; see report";
            return EH_ERR_CONFIG;
        }
        g_last_error = "mathematical check failed; see report";
        return EH_ERR_MATH;
    });
}

eh_status eh_nonlinearity_create(const char* id, eh_nonlinearity** out) {
    if (!id || !out) {
        g_last_error = "id and out are required";
        return EH_ERR_CONFIG;
    }
    *out = nullptr;
    return guarded([&]() -> eh_status {
        *out = new eh_nonlinearity{eh::make_nonlinearity(id)};
        return EH_OK;
    });
}

void eh_nonlinearity_destroy(eh_nonlinearity* nl) { delete nl; }

eh_status eh_nonlinearity_phi(const eh_nonlinearity* nl, double t, double* out) {
    if (!nl || !out) {
        g_last_error = "nl and out are required";
        return EH_ERR_CONFIG;
    }
    return guarded([&]() -> eh_status {
        *out = nl->nl.phi(t);
        return EH_OK;
    });
}

eh_status eh_nonlinearity_eta(const eh_nonlinearity* nl, double t, double* out) {
    if (!nl || !out) {
        g_last_error = "nl and out are required";
        return EH_ERR_CONFIG;
    }
    return guarded([&]() -> eh_status {
        *out = nl->nl.eta_at(t);
        return EH_OK;
    });
}

eh_status eh_harnack_integral(const eh_nonlinearity* nl, double m, double M,
                              double* out) {
    if (!nl || !out) {
        g_last_error = "nl and out are required";
        return EH_ERR_CONFIG;
    }
    return guarded([&]() -> eh_status {
        *out = eh::harnack_integral(nl->nl, m, M);
        return EH_OK;
    });
}

eh_status eh_scaling_radius(const eh_nonlinearity* nl, double A, double L2,
                            double* out) {
    if (!nl || !out) {
        g_last_error = "nl and out are required";
        return EH_ERR_CONFIG;
    }
    return guarded([&]() -> eh_status {
        *out = eh::scaling_radius(nl->nl, A, L2);
        return EH_OK;
    });
}

namespace {

eh_status pucci_impl(int dim, const double* upper, double lambda, double Lambda,
                     double* out, bool minus) {
    if (!upper || !out) {
        g_last_error = "upper and out are required";
        return EH_ERR_CONFIG;
    }
    if (dim < 1 || dim > 3) {
        g_last_error = "dim must be 1, 2 or 3";
        return EH_ERR_CONFIG;
    }
    if (!(lambda > 0.0 && Lambda >= lambda)) {
        g_last_error = "requires 0 < lambda <= Lambda";
        return EH_ERR_CONFIG;
    }
    return guarded([&]() -> eh_status {
        eh::SymMatrix m = eh::SymMatrix::zero(dim);
        const int n = dim * (dim + 1) / 2;
        for (int i = 0; i < n; ++i) m.entries[static_cast<std::size_t>(i)] = upper[i];
        const eh::EllipticityPair e{lambda, Lambda};
        *out = minus ? eh::pucci_minus(m, e) : eh::pucci_plus(m, e);
        return EH_OK;
    });
}

} // namespace

eh_status eh_pucci_minus(int dim, const double* upper, double lambda,
                         double Lambda, double* out) {
    return pucci_impl(dim, upper, lambda, Lambda, out, true);
}

eh_status eh_pucci_plus(int dim, const double* upper, double lambda,
                        double Lambda, double* out) {
    return pucci_impl(dim, upper, lambda, Lambda, out, false);
}

} // extern "C"
