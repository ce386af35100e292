#pragma once

#include "dln/architecture.hpp"
#include "dln/moments.hpp"

#include <Eigen/Dense>

#include <vector>

namespace dln {

// Per-layer magnitudes of the balanced family parameterized by one scalar b.
// Output weights are b_u * r_D, inner layers b_i * r_i r_{i-1}^T (i >= 2), and the
// first layer is r_1 v^T with v the ridge solution for the remaining scale.
struct FamilyScales {
    double b_u = 0.0;
    std::vector<double> inner;  // b_2..b_D
    double path = 0.0;          // b_u * prod(inner)
    double penalty = 0.0;       // weight decay carried by U, W_D..W_2
};

struct RootBracket {
    double lo = 0.0;
    double hi = 0.0;
    bool heuristic = false;  // upper end found by doubling (singular a0)
    bool empty = false;      // no nontrivial root is possible
};

// Evaluates the one-dimensional reduction of the objective. Holds a cached
// eigendecomposition of a0, so repeated evaluations cost O(d).
//
// Convention for b: at depth one b is the output scale (U = b r). At depth two
// and more b is the scale of W_2, so for a homogeneous net U = sqrt(d0) b r.
class SolutionFamily {
public:
    SolutionFamily(Architecture arch, const DataMoments& m);

    const Architecture& arch() const { return arch_; }
    const AggregateConstants& constants() const { return consts_; }
    const SpectralData& spectrum() const { return spec_; }
    double signal_norm() const { return signal_norm_; }

    // Balance target: |v|^2 = rho b^2 at a nontrivial solution.
    double rho() const { return rho_; }

    FamilyScales scales(double b) const;

    // First-layer direction v(b) in input coordinates.
    Eigen::VectorXd first_layer(double b) const;

    // |v(b)|^2 - rho b^2. Zero at b = 0.
    double residual(double b) const;

    // |v(b)|^2 / b^2 - rho, continuous at b = 0. Its positive roots are the
    // nontrivial solutions.
    double scaled_residual(double b) const;

    // Objective along the family with the first layer at its optimum.
    double profile(double b) const;

    // Closed interval that contains every positive root.
    RootBracket bracket() const;

private:
    // Per-eigendirection ridge denominators a_i * P^2 s^2 (sigma_1^2 + d_1) + gamma_1.
    Eigen::VectorXd denominators(double path) const;
    // path / b, evaluated without dividing by b.
    double path_over_b(double b) const;

    Architecture arch_;
    AggregateConstants consts_;
    SpectralData spec_;
    double ey2_ = 0.0;
    double rho_ = 0.0;
    double signal_norm_ = 0.0;
    double first_noise_ = 0.0;  // sigma_1^2 + d_1
};

}  // namespace dln
