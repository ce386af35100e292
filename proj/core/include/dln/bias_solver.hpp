#pragma once

#include "dln/architecture.hpp"
#include "dln/exact_solver.hpp"
#include "dln/moments.hpp"
#include "dln/params.hpp"

#include <Eigen/Dense>

namespace dln {

// Depth-one solution with biases on the hidden layer and the output.
// For a fixed output scale b the remaining problem in the augmented first-layer
// row (v, c) and the output bias is a convex quadratic:
//   K (v, c) = b [(E[xy], E[y]) - bias_u (E[x], 1)],  K = b^2 (sigma^2 + d_1) A + gamma_w I
//   bias_u = (E[y] - b^2 d_1 p) / (1 + gamma_u - b^2 d_1 q)
// where A is the second moment of (x, 1), p = m^T K^{-1} e and q = m^T K^{-1} m
// with m = (E[x], 1) and e = (E[xy], E[y]). The scalar b then solves
// |(v, c)|^2 = (gamma_u / gamma_w) b^2.
struct BiasSolution {
    Params params;
    double b = 0.0;
    Eigen::MatrixXd ridge_matrix;  // K at b
    double p = 0.0;
    double q = 0.0;
    double bias_denominator = 1.0;  // 1 + gamma_u - b^2 d_1 q
    double loss = 0.0;
    SolutionKind kind = SolutionKind::trivial;
    double residual = 0.0;
    bool centered_shortcut = false;  // zero means: taken from the bias-free solver
    std::vector<double> roots;
};

// Scaled residual |(v, c)|^2 / b^2 - gamma_u / gamma_w of the bias problem.
double bias_residual(double b, const Architecture& arch, const DataMoments& m);

BiasSolution solve_two_layer_bias(const Architecture& arch, const DataMoments& m, const SolverOptions& opt = {});

}  // namespace dln
