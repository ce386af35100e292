#pragma once

#include "dln/architecture.hpp"
#include "dln/exact_solver.hpp"
#include "dln/moments.hpp"

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dln {

enum class RegimeLabel {
    trivial_global,
    nontrivial_global,
    bad_minimum_at_zero_with_nontrivial_global,
    nontrivial_exists_trivial_global,
    indeterminate,
};

std::string to_string(RegimeLabel l);

struct RegimeReport {
    RegimeLabel label = RegimeLabel::indeterminate;
    std::optional<double> two_layer_threshold;  // |E[xy]|^2 - gamma_u gamma_w, depth one
    std::optional<double> nonexistence_bound;   // lhs - gamma; negative: only the trivial solution
    std::optional<double> existence_bound;      // lhs - gamma; nonnegative: nontrivial solutions exist
    std::optional<double> global_min_bound;     // |E[xy]|^2 - threshold; nonnegative: nontrivial global minimum
    std::optional<std::pair<double, double>> b_bracket;
    bool resolved_by_solver = false;
    bool limit_case = false;

    // Filled when the solver ran.
    std::optional<double> b_star;
    std::optional<double> loss_star;
    double loss_trivial = 0.0;
    bool degenerate = false;
    std::vector<std::string> notes;
};

// Signal functional compared against gamma by the existence / nonexistence tests
// for homogeneous nets; `a` is a_max for existence and a_min for nonexistence.
double existence_functional(int depth, int width, double noise_var, double signal_norm, double a);

// Threshold on |E[xy]|^2 above which the nontrivial solution is the global
// minimum (homogeneous nets). Depth is real so the depth -> 1 limit can be taken.
double global_min_threshold(double depth, int width, double noise_var, double gamma, double a_max);

RegimeReport classify(const Architecture& arch, const DataMoments& m, bool use_solver = true);

struct HessianSummary {
    bool is_diagonal = false;
    Eigen::VectorXd diagonal_entries;
    double min_eigenvalue = 0.0;
    bool definite = false;
    Eigen::MatrixXd matrix;  // full Hessian in flatten() order; depth one only
    std::optional<double> restricted_second_derivative;  // along the family, depth one
    std::string note;
};

HessianSummary hessian_at_origin(const Architecture& arch, const DataMoments& m);

// Lower bound on |b| of any nontrivial solution, read as the radius of the basin
// around the origin. Depth one: 0 when the origin is a saddle, infinity otherwise.
double origin_basin_radius(const Architecture& arch, const DataMoments& m);

struct InitComparison {
    double basin_radius = 0.0;
    double kaiming_radius = 0.0;  // 1 / sqrt(d_1)
    bool trapped = false;         // standard init starts inside the basin
};

InitComparison compare_with_kaiming(const Architecture& arch, const DataMoments& m);

struct LearnabilityPoint {
    int depth = 0;
    double exact = 0.0;        // |E[xy]|^2 needed by the existence test
    double exponential = 0.0;  // 4 d0^2 a_max gamma ((sigma^2 + d0) / d0)^D
};

std::vector<LearnabilityPoint> asymptotic_learnability(const HomogeneousArchitecture& base, const DataMoments& m,
                                                       const std::vector<int>& depths);

}  // namespace dln
