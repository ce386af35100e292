#pragma once

#include "dln/architecture.hpp"
#include "dln/exact_solver.hpp"
#include "dln/moments.hpp"

#include <Eigen/Dense>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dln {

// Variance of the network output over the hidden-unit noise at input x, for a
// solution of a homogeneous net on isotropic data, in closed form.
double prediction_variance(const SolutionCandidate& c, const Eigen::VectorXd& x, const HomogeneousArchitecture& arch,
                           const DataMoments& m);

enum class Sweep { width, noise, depth };

std::string to_string(Sweep s);
Sweep parse_sweep(const std::string& name);

struct VariancePoint {
    double param = 0.0;
    double b_star = 0.0;
    double variance = 0.0;
};

struct VarianceReport {
    Sweep sweep = Sweep::width;
    std::vector<VariancePoint> points;
    // Log-log slope for width and noise, slope of log-variance in depth.
    double fitted_slope = 0.0;
    std::map<std::string, double> scaling_exponents;
};

// Re-solves the global minimum at every grid value and fits the scaling slope.
// `x` defaults to the unit vector along E[xy]. Throws InvalidInput when a grid
// point has a trivial global minimum.
VarianceReport variance_scaling(const HomogeneousArchitecture& base, const DataMoments& m, Sweep sweep,
                                const std::vector<double>& grid, std::optional<Eigen::VectorXd> x = std::nullopt);

// Least-squares slope of ys against xs.
double fit_slope(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace dln
