#include "quadrature.hpp"
#include "errors.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

namespace eh {
namespace {

// G7/K15 nodes and weights on [-1,1]. Gauss weights cover the odd Kronrod
// nodes (indices 1,3,...,13).
constexpr double kx[15] = {
    -0.991455371120813, -0.949107912342759, -0.864864423359769,
    -0.741531185599394, -0.586087235467691, -0.405845151377397,
    -0.207784955007898, 0.0,
    0.207784955007898,  0.405845151377397,  0.586087235467691,
    0.741531185599394,  0.864864423359769,  0.949107912342759,
    0.991455371120813};
constexpr double kw[15] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728,
    0.204432940075298, 0.190350578064785, 0.169004726639267,
    0.140653259715525, 0.104790010322250, 0.063092092629979,
    0.022935322010529};
constexpr double gw[7] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469, 0.381830050505119, 0.279705391489277,
    0.129484966168870};

struct Panel {
    double a, b;
    double value;
    double error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

Panel evaluate_panel(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double hl = 0.5 * (b - a);
    double kres = 0.0, gres = 0.0;
    for (int i = 0; i < 15; ++i) {
        const double v = f(c + hl * kx[i]);
        kres += kw[i] * v;
        if (i % 2 == 1) gres += gw[i / 2] * v;
    }
    kres *= hl;
    gres *= hl;
    return Panel{a, b, kres, std::abs(kres - gres)};
}

} // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opts) {
    if (a == b) return 0.0;
    const double sign = (a < b) ? 1.0 : -1.0;
    if (sign < 0) std::swap(a, b);

    std::priority_queue<Panel> panels;
    long evals = 15;
    panels.push(evaluate_panel(f, a, b));
    double total = panels.top().value;
    double total_err = panels.top().error;

    while (total_err > std::max(opts.abs_tol, opts.rel_tol * std::abs(total))) {
        if (evals + 30 > opts.max_evals)
            throw QuadratureFailure("adaptive quadrature evaluation budget exhausted");
        Panel worst = panels.top();
        panels.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        Panel left = evaluate_panel(f, worst.a, mid);
        Panel right = evaluate_panel(f, mid, worst.b);
        evals += 30;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        panels.push(left);
        panels.push(right);
    }
    if (!std::isfinite(total))
        throw QuadratureFailure("quadrature produced a non-finite value");
    return sign * total;
}

} // namespace eh
