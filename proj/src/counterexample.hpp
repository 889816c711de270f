#pragma once

#include "pucci.hpp"

#include <array>
#include <vector>

namespace eh {

/// Parameters of the explicit family u_k showing that a bare power growth
/// |Du|^{1+eps0} breaks the elliptic Harnack integral bound. Points live in
/// R^3 written as (x, z) with x in R^2.
struct CounterexampleParams {
    double eps0 = 1.0;
    long k = 16;
    double q = 4.0;     // 4/eps0
    double r = 0.0625;  // k^{-eps0}
    double coefA = 0.0, coefB = 0.0, coefC = 0.0, coefD = 0.0;

    // Smooth radial cutoff: 1 on [0, r/2], 0 on [0.95r, r), strictly
    // decreasing in between with |rho'| <= 4/r.
    double cutoff(double s) const;
    double cutoff_d1(double s) const;
    double cutoff_d2(double s) const;

    EllipticityPair ellipticity() const { return {1.0, q + 1.0}; }
};

/// Requires r = k^{-eps0} < 1/2; throws DomainError otherwise.
CounterexampleParams make_params(double eps0, long k);

struct CounterexampleEval {
    double value = 0.0;
    std::array<double, 3> gradient{}; // (d/dx1, d/dx2, d/dz)
    SymMatrix hessian = SymMatrix::zero(3);
};

CounterexampleEval eval(const CounterexampleParams& p, double x1, double x2, double z);

struct BallGridSpec {
    int points_per_axis = 64;       // global grid over [-2,2]^3, ball-masked
    int inner_points_per_axis = 64; // refinement of the cylinder |x| <= r
};

struct InequalityReport {
    double min_margin = 0.0; // min of |Du|^{1+eps0} - |P^-(D^2 u)|
    std::array<double, 3> argmin{};
    bool pass = false;
    double outer_max_scaled_pminus = 0.0; // max over outer points of |P^-|/||D^2u||
    bool outer_zero_pass = false;
    double min_value = 0.0; // positivity check
    long points_checked = 0;
};

/// Pointwise check of |P^-_{1,q+1}(D^2 u_k)| <= |Du_k|^{1+eps0} over a
/// ball-masked grid on B_2, with an r-scaled refinement of the inner
/// cylinder so the polynomial region stays resolved for large k.
InequalityReport inequality_check(const CounterexampleParams& p, const BallGridSpec& g);

struct SweepEntry {
    long k = 0;
    bool valid = false; // r < 1/2
    bool pass = false;
    double min_margin = 0.0;
};

struct SweepResult {
    long k_min = 0;
    bool monotone = true; // false => MonotoneWarning
    std::vector<SweepEntry> entries;
};

/// Smallest k in the dyadic sweep {2, 4, ..., 2^max_exponent} passing
/// inequality_check; invalid k (r >= 1/2) count as failures. Throws
/// NotFound when nothing passes.
SweepResult min_valid_k(double eps0, const BallGridSpec& g, int max_exponent = 16);

struct BlowupReport {
    double inf_b1 = 0.0; // analytic: 1/k
    double sup_b1 = 0.0; // grid max over B_1
    double integral = 0.0; // int_{1/k}^{sup} ds/(s^{1+eps0}+s)
};

BlowupReport harnack_blowup(const CounterexampleParams& p, const BallGridSpec& g);

} // namespace eh
