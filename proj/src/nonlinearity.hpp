#pragma once

#include <array>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace eh {

/// Gradient nonlinearity phi(t) = eta(t)*t with eta: (0,inf) -> [1,inf).
/// eta is an arbitrary callable plus metadata; catalog members are built
/// by make_nonlinearity from a string id.
struct Nonlinearity {
    std::string name;
    std::function<double(double)> eta;
    std::function<double(double)> eta_derivative; // may be empty
    double lambda0 = 1.0;                         // submultiplicativity constant

    double eta_at(double t) const;
    double eta_prime_at(double t) const; // analytic or central-difference fallback
    double phi(double t) const;          // eta(t)*t, 0 at t=0

    /// Numerically estimated local Lipschitz bound of phi on [lo, hi].
    /// The admissibility conditions only require local Lipschitz continuity
    /// and give no constant; this samples difference quotients.
    double phi_lipschitz_bound(double lo, double hi, int samples = 512) const;
};

/// Catalog ids: "identity", "logpow:beta=<f>", "pow:eps=<f>", "root".
Nonlinearity make_nonlinearity(const std::string& id);

double eval_phi(const Nonlinearity& nl, double t);

struct ConditionReport {
    bool p1_pass = false;
    std::array<double, 6> p2_sequence{}; // t*eta'/eta*log(eta) at t = 10^j, j=1..6
    bool p2_pass = false;
    double p3_sup_ratio = 0.0; // empirical sup of eta(st)/(eta(s)eta(t))
    bool p3_pass = false;
    bool all_pass() const { return p1_pass && p2_pass && p3_pass; }
};

/// Checks (P1)-(P3) on a sampled grid. The grid should span at least
/// [1e-6, 1e6] log-uniformly.
ConditionReport validate_conditions(const Nonlinearity& nl,
                                    std::span<const double> sample_grid);

enum class OsgoodVerdict { Osgood, NonOsgood, Inconclusive };

struct OsgoodReport {
    OsgoodVerdict verdict = OsgoodVerdict::Inconclusive;
    std::vector<std::pair<double, double>> evidence; // (a, integral over [a,1])
    double divergence_slope = 0.0;                   // d I / d log(1/a), least squares
};

/// Classifies int_0^1 ds/phi(s) as divergent (Osgood) or convergent by
/// evaluating I(a) for a = 1e-2, 1e-4, ..., 1e-12.
OsgoodReport osgood_classify(const Nonlinearity& nl);

/// int_m^M ds/phi(s) by adaptive quadrature, relative tolerance 1e-8.
double harnack_integral(const Nonlinearity& nl, double m, double M);

/// r_A = 1/(L2*(eta(A)+1)) = A/(L2*(phi(A)+A)).
double scaling_radius(const Nonlinearity& nl, double A, double L2);

const char* to_string(OsgoodVerdict v);

} // namespace eh
