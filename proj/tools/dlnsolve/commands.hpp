#pragma once

#include <dln/dln.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dlnsolve {

// Where the model comes from. Without --arch a homogeneous net is built from the
// shape flags; with --arch the flags override the file uniformly.
struct ModelOptions {
    std::string arch_path;
    std::string moments_path;
    std::string data_path;
    std::optional<int> depth;
    std::optional<int> width;
    std::optional<double> noise;
    std::optional<double> gamma;
    std::optional<double> gamma_u;

    // Shape used when neither --arch nor the matching flag is given.
    int default_width = 1;
    double default_noise = 1.0;
    double default_gamma = 0.1;
};

dln::DataMoments load_moments(const ModelOptions& o);
dln::Architecture load_architecture(const ModelOptions& o, int input_dim);
dln::HomogeneousArchitecture load_homogeneous(const ModelOptions& o, int input_dim);

// Every command renders its primary output as text; main decides where it goes.
struct SolveConfig {
    ModelOptions model;
    bool bias = false;
};
std::string cmd_solve(const SolveConfig& c);

struct ClassifyConfig {
    ModelOptions model;
    bool no_solver = false;
};
std::string cmd_classify(const ClassifyConfig& c);

struct PhaseDiagramConfig {
    ModelOptions model;
    double gamma_min = 1e-3;
    double gamma_max = 1.0;
    int gamma_steps = 31;
    std::vector<double> signals;  // empty: the moments' own |E[xy]|
    bool no_solver = false;
};
std::string cmd_phase_diagram(const PhaseDiagramConfig& c);

struct VerifyConfig {
    ModelOptions model;
    int restarts = 100;
    std::uint64_t seed = 0;
    dln::TrainConfig train;
};
std::string cmd_verify(const VerifyConfig& c);

struct GenDataConfig {
    int dim = 5;
    int n = 1000;
    double v_norm = 1.0;
    std::uint64_t seed = 0;
    dln::TargetKind target = dln::TargetKind::linear;
};
std::string cmd_gen_data(const GenDataConfig& c);

struct LandscapeConfig {
    ModelOptions model;
    GenDataConfig data;  // used when no --data is given
    std::vector<std::string> activations{"linear", "relu", "tanh", "swish"};
    double b_min = -1.5;
    double b_max = 1.5;
    int b_steps = 401;
};
std::string cmd_landscape(const LandscapeConfig& c);

struct VarianceConfig {
    ModelOptions model;
    dln::Sweep sweep = dln::Sweep::width;
    std::vector<double> grid;
    std::vector<double> probe;  // empty: unit vector along E[xy]
};
std::string cmd_variance(const VarianceConfig& c);

std::string cmd_figure3(const dln::Figure3Config& c);

}  // namespace dlnsolve
