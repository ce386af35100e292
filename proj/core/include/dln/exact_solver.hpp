#pragma once

#include "dln/architecture.hpp"
#include "dln/moments.hpp"
#include "dln/params.hpp"
#include "dln/solution_family.hpp"

#include <Eigen/Dense>

#include <optional>
#include <random>
#include <string>
#include <vector>

namespace dln {

enum class SolutionKind { trivial, nontrivial };

std::string to_string(SolutionKind k);

struct SolutionCandidate {
    double b = 0.0;
    std::vector<double> b_layers;         // b_u, b_D, ..., b_2, b_1
    std::vector<Eigen::VectorXd> signs;   // r_1..r_D, entries +-1
    Params params;
    double loss = 0.0;
    SolutionKind kind = SolutionKind::trivial;
    double residual = 0.0;  // |v|^2 - rho b^2 at b
};

struct SolverOptions {
    int scan_points = 10000;
    double guard = 2.0;         // bracket widened by this factor on both ends
    double dedup_rel = 1e-8;
    double tie_rel = 1e-12;
};

struct SolveReport {
    std::vector<double> roots;
    RootBracket bracket;
    double scan_lo = 0.0;
    double scan_hi = 0.0;
    bool guard_used = false;  // some root fell outside the unguarded bracket
};

// |[b^2 (sigma^2 + d_1) A0 + gamma_w I]^{-1} E[xy]|^2 - gamma_u / gamma_w. Depth one only.
double residual_two_layer(double b, const Architecture& arch, const DataMoments& m);

// |v(b)|^2 - rho b^2 for any depth (see SolutionFamily).
double residual_deep(double b, const Architecture& arch, const DataMoments& m);

SolveReport solve_roots(const Architecture& arch, const DataMoments& m, const SolverOptions& opt = {});

// Positive roots only; the trivial solution b = 0 is implicit.
std::vector<double> solve_b(const Architecture& arch, const DataMoments& m, const SolverOptions& opt = {});

// Depth one with a0 = sigma_x^2 I. Empty when only the trivial solution exists.
std::optional<double> closed_form_b_isotropic(const Architecture& arch, const DataMoments& m);

std::vector<Eigen::VectorXd> default_signs(const Architecture& arch);
std::vector<Eigen::VectorXd> random_signs(const Architecture& arch, std::mt19937_64& rng);

SolutionCandidate assemble(double b, const std::vector<Eigen::VectorXd>& signs, const Architecture& arch,
                           const DataMoments& m);
SolutionCandidate assemble(double b, const Architecture& arch, const DataMoments& m);

struct GlobalMinimum {
    SolutionCandidate best;
    std::vector<SolutionCandidate> candidates;  // trivial first, then one per root
    bool degenerate = false;  // trivial and nontrivial tie within tie_rel
    bool limit_case = false;  // some noise variance is zero
    SolveReport solve;
};

GlobalMinimum global_minimum(const Architecture& arch, const DataMoments& m, const SolverOptions& opt = {});

}  // namespace dln
