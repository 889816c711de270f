#include "pucci.hpp"
#include "errors.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace eh {

SymMatrix SymMatrix::diag(std::initializer_list<double> d) {
    SymMatrix m = SymMatrix::zero(static_cast<int>(d.size()));
    int i = 0;
    for (double v : d) m.at(i, i) = v, ++i;
    return m;
}

SymMatrix SymMatrix::identity(int dim) {
    SymMatrix m = SymMatrix::zero(dim);
    for (int i = 0; i < dim; ++i) m.at(i, i) = 1.0;
    return m;
}

namespace {
inline int tri_index(int dim, int i, int j) {
    if (i > j) std::swap(i, j);
    // row-major upper triangle offsets
    int off = 0;
    for (int r = 0; r < i; ++r) off += dim - r;
    return off + (j - i);
}
} // namespace

double SymMatrix::at(int i, int j) const { return entries[tri_index(dim, i, j)]; }
double& SymMatrix::at(int i, int j) { return entries[tri_index(dim, i, j)]; }

double SymMatrix::trace() const {
    double t = 0.0;
    for (int i = 0; i < dim; ++i) t += at(i, i);
    return t;
}

double SymMatrix::frobenius_norm() const {
    double s = 0.0;
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) s += at(i, j) * at(i, j);
    return std::sqrt(s);
}

SymMatrix SymMatrix::operator+(const SymMatrix& o) const {
    SymMatrix m = *this;
    for (size_t i = 0; i < entries.size(); ++i) m.entries[i] += o.entries[i];
    return m;
}

SymMatrix SymMatrix::operator-() const { return scaled(-1.0); }

SymMatrix SymMatrix::scaled(double c) const {
    SymMatrix m = *this;
    for (auto& v : m.entries) v *= c;
    return m;
}

std::vector<double> eigenvalues_sym(const SymMatrix& m) {
    if (m.dim == 1) return {m.at(0, 0)};
    if (m.dim == 2) {
        const double a = m.at(0, 0), b = m.at(0, 1), c = m.at(1, 1);
        const double mean = 0.5 * (a + c);
        // discriminant clamped at zero for near-degenerate rounding
        const double disc = std::max(0.25 * (a - c) * (a - c) + b * b, 0.0);
        const double rad = std::sqrt(disc);
        return {mean - rad, mean + rad};
    }
    if (m.dim != 3) throw DomainError("eigenvalues_sym supports dim <= 3");

    const double a00 = m.at(0, 0), a01 = m.at(0, 1), a02 = m.at(0, 2);
    const double a11 = m.at(1, 1), a12 = m.at(1, 2), a22 = m.at(2, 2);
    const double p1 = a01 * a01 + a02 * a02 + a12 * a12;
    if (p1 == 0.0) {
        std::vector<double> e{a00, a11, a22};
        std::sort(e.begin(), e.end());
        return e;
    }
    const double q = (a00 + a11 + a22) / 3.0;
    const double p2 = (a00 - q) * (a00 - q) + (a11 - q) * (a11 - q) +
                      (a22 - q) * (a22 - q) + 2.0 * p1;
    const double p = std::sqrt(p2 / 6.0);
    // B = (A - qI)/p, r = det(B)/2
    const double b00 = (a00 - q) / p, b11 = (a11 - q) / p, b22 = (a22 - q) / p;
    const double b01 = a01 / p, b02 = a02 / p, b12 = a12 / p;
    double r = 0.5 * (b00 * (b11 * b22 - b12 * b12) - b01 * (b01 * b22 - b12 * b02) +
                      b02 * (b01 * b12 - b11 * b02));
    r = std::clamp(r, -1.0, 1.0);
    const double phi = std::acos(r) / 3.0;
    const double e1 = q + 2.0 * p * std::cos(phi);
    const double e3 = q + 2.0 * p * std::cos(phi + 2.0 * M_PI / 3.0);
    const double e2 = 3.0 * q - e1 - e3;
    std::vector<double> e{e3, e2, e1};
    std::sort(e.begin(), e.end());
    return e;
}

namespace {
void check_ellipticity(const EllipticityPair& e) {
    if (!(e.lambda > 0.0) || !(e.Lambda >= e.lambda))
        throw DomainError("ellipticity pair requires 0 < lambda <= Lambda");
}

double signed_sum(const SymMatrix& m, double pos_w, double neg_w) {
    const double tol = 1e-14 * m.frobenius_norm();
    double s = 0.0;
    for (double e : eigenvalues_sym(m)) {
        if (e > tol)
            s += pos_w * e;
        else if (e < -tol)
            s += neg_w * e;
    }
    return s;
}
} // namespace

double pucci_minus(const SymMatrix& m, const EllipticityPair& e) {
    check_ellipticity(e);
    return signed_sum(m, e.lambda, e.Lambda);
}

double pucci_plus(const SymMatrix& m, const EllipticityPair& e) {
    check_ellipticity(e);
    return signed_sum(m, e.Lambda, e.lambda);
}

namespace {

// Cyclic Jacobi eigen-decomposition; independent of the closed-form path.
struct EigenFrame {
    std::array<std::array<double, 3>, 3> vecs; // columns
    std::array<double, 3> vals;
};

EigenFrame jacobi_eigen(const SymMatrix& m) {
    const int n = m.dim;
    double a[3][3] = {};
    double v[3][3] = {};
    for (int i = 0; i < n; ++i) {
        v[i][i] = 1.0;
        for (int j = 0; j < n; ++j) a[i][j] = m.at(i, j);
    }
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
        if (off < 1e-30 * (1.0 + m.frobenius_norm() * m.frobenius_norm())) break;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                if (a[p][q] == 0.0) continue;
                const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    const double vkp = v[k][p], vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }
    EigenFrame f{};
    for (int i = 0; i < n; ++i) {
        f.vals[i] = a[i][i];
        for (int k = 0; k < n; ++k) f.vecs[i][k] = v[k][i];
    }
    return f;
}

double quadratic_form(const SymMatrix& m, const std::array<double, 3>& x) {
    double s = 0.0;
    for (int i = 0; i < m.dim; ++i)
        for (int j = 0; j < m.dim; ++j) s += x[i] * m.at(i, j) * x[j];
    return s;
}

} // namespace

double pucci_minus_oracle(const SymMatrix& m, const EllipticityPair& e,
                          int samples, std::uint64_t seed) {
    check_ellipticity(e);
    const int n = m.dim;
    const double zero_tol = 1e-14 * m.frobenius_norm();

    // Optimal admissible matrix from the (Jacobi) eigenframe: weight lambda
    // on nonnegative eigendirections, Lambda on negative ones.
    const EigenFrame frame = jacobi_eigen(m);
    double best = 0.0;
    for (int i = 0; i < n; ++i) {
        const double ev = frame.vals[i];
        double w;
        if (ev > zero_tol)
            w = e.lambda;
        else if (ev < -zero_tol)
            w = e.Lambda;
        else
            w = e.lambda; // weight irrelevant on a null direction
        best += w * quadratic_form(m, frame.vecs[i]);
    }

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> dweight(e.lambda, e.Lambda);
    for (int s = 0; s < samples; ++s) {
        // random orthogonal frame via Gram-Schmidt on Gaussian vectors
        std::array<std::array<double, 3>, 3> q{};
        for (int i = 0; i < n; ++i) {
            for (int k = 0; k < n; ++k) q[i][k] = gauss(rng);
            for (int j = 0; j < i; ++j) {
                double dot = 0.0;
                for (int k = 0; k < n; ++k) dot += q[i][k] * q[j][k];
                for (int k = 0; k < n; ++k) q[i][k] -= dot * q[j][k];
            }
            double norm = 0.0;
            for (int k = 0; k < n; ++k) norm += q[i][k] * q[i][k];
            norm = std::sqrt(norm);
            if (norm < 1e-12) { --i; continue; }
            for (int k = 0; k < n; ++k) q[i][k] /= norm;
        }
        double val = 0.0;
        for (int i = 0; i < n; ++i) val += dweight(rng) * quadratic_form(m, q[i]);
        best = std::min(best, val);
    }
    return best;
}

} // namespace eh
