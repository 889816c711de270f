#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace eh {

/// Small symmetric matrix, dim in {1,2,3}. Entries stored as the full
/// upper triangle in row-major order:
///   dim 1: [a00]
///   dim 2: [a00, a01, a11]
///   dim 3: [a00, a01, a02, a11, a12, a22]
struct SymMatrix {
    int dim = 1;
    std::array<double, 6> entries{};

    static SymMatrix zero(int dim) { return SymMatrix{dim, {}}; }
    static SymMatrix diag(std::initializer_list<double> d);
    static SymMatrix identity(int dim);

    double at(int i, int j) const;
    double& at(int i, int j);
    double trace() const;
    double frobenius_norm() const;
    SymMatrix operator+(const SymMatrix& o) const;
    SymMatrix operator-() const;
    SymMatrix scaled(double c) const;
};

struct EllipticityPair {
    double lambda = 1.0;
    double Lambda = 1.0; // requires 0 < lambda <= Lambda
};

/// All real eigenvalues in ascending order. Closed-form: quadratic formula
/// for 2x2 and the trigonometric Cardano formula for 3x3, with the acos
/// argument clamped to [-1,1].
std::vector<double> eigenvalues_sym(const SymMatrix& m);

/// P^-(M) = lambda*sum_{e_i>0} e_i + Lambda*sum_{e_i<0} e_i.
/// Eigenvalues within 1e-14*||M|| of zero contribute to neither sum.
double pucci_minus(const SymMatrix& m, const EllipticityPair& e);

/// P^+(M) = Lambda*sum_{e_i>0} e_i + lambda*sum_{e_i<0} e_i.
double pucci_plus(const SymMatrix& m, const EllipticityPair& e);

/// Brute-force oracle: min of tr(A*M) over sampled admissible A with
/// lambda*I <= A <= Lambda*I, augmented with the analytically optimal A
/// built from M's eigenframe. With samples = 0 only the optimal matrix is
/// used.
double pucci_minus_oracle(const SymMatrix& m, const EllipticityPair& e,
                          int samples, std::uint64_t seed = 20240811);

} // namespace eh
