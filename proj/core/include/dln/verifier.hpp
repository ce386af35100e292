#pragma once

#include "dln/architecture.hpp"
#include "dln/exact_solver.hpp"
#include "dln/moments.hpp"
#include "dln/params.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dln {

enum class InitScheme { origin, uniform_ball, kaiming_like };

std::string to_string(InitScheme s);
InitScheme parse_init_scheme(const std::string& name);

struct TrainConfig {
    double learning_rate = 0.1;
    int max_steps = 10000;
    double stop_grad_norm = 1e-9;
    InitScheme init = InitScheme::uniform_ball;
    double init_radius = 1.0;  // uniform_ball only
    std::uint64_t seed = 0;
};

void validate(const TrainConfig& c);

enum class Endpoint { trivial, matches_analytic, other };

std::string to_string(Endpoint e);

struct TrainResult {
    Params final_params;
    double initial_loss = 0.0;
    double final_loss = 0.0;
    double final_grad_norm = 0.0;
    int steps_taken = 0;
    Endpoint converged_to = Endpoint::other;
    std::optional<double> matched_b;
};

// uniform_ball draws a point uniformly from the ball of `init_radius` in the flat
// parameter space; kaiming_like draws each entry uniformly in +-sqrt(3 / fan_in).
Params initial_params(const Architecture& arch, const TrainConfig& c);

// Full-batch gradient descent on the noise-averaged objective. Throws
// NumericalFailure when the loss exceeds 1e3 * E[y^2] or stops being finite.
TrainResult gd_optimize(const Architecture& arch, const DataMoments& m, const TrainConfig& c);
TrainResult gd_optimize(const Architecture& arch, const DataMoments& m, const TrainConfig& c, const GlobalMinimum& gm);
TrainResult gd_from(Params start, const Architecture& arch, const DataMoments& m, const TrainConfig& c,
                    const GlobalMinimum* gm = nullptr);

// Endpoint label against the analytic candidates, loss tolerance 1e-4.
Endpoint classify_endpoint(const Params& p, double loss, const Architecture& arch, const GlobalMinimum& gm,
                           std::optional<double>* matched_b = nullptr);

struct BruteForceResult {
    Params best_params;
    double best_loss = 0.0;
    long evaluations = 0;
    double final_spacing = 0.0;
};

// Exhaustive grid over [-halfwidth, halfwidth]^n (n <= 4 parameters), then
// `refine_levels` zoomed grids of the same size centred on the incumbent.
BruteForceResult brute_force_min(const Architecture& arch, const DataMoments& m, double halfwidth, int points_per_axis,
                                 int refine_levels = 0);

}  // namespace dln
