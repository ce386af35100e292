#pragma once

#include "dln/architecture.hpp"
#include "dln/moments.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace dln {

enum class Activation { linear, relu, tanh, swish };

std::string to_string(Activation a);
Activation parse_activation(const std::string& name);

struct LandscapePoint {
    double b = 0.0;
    double loss = 0.0;
};

// Depth-one loss along the solution family (U = b r, W = r v(b)^T) with the
// activation applied at the hidden layer. The expectation over x is the dataset
// average; the hidden-unit noise is still integrated out exactly.
std::vector<LandscapePoint> nonlinear_landscape(const std::vector<double>& b_grid, Activation act,
                                                const Architecture& arch, const Dataset& data);

// Interior grid points strictly below both neighbours (plateaus count once).
int count_local_minima(const std::vector<LandscapePoint>& curve);

struct Figure3Config {
    std::vector<double> signal_grid{0.0, 0.003, 0.01, 0.03, 0.1, 0.3, 1.0};
    std::uint64_t seed = 0;
    int dim = 5;
    int n = 1000;
    int width = 32;
    double gamma = 0.1;
    double learning_rate = 0.1;
    int steps = 10000;
};

struct Figure3Row {
    double v_norm = 0.0;   // requested |v|
    double exy_norm = 0.0; // empirical |E[xy]|
    double ey2 = 0.0;
    double loss_tanh = 0.0;
    double loss_relu = 0.0;
    double loss_regressor = 0.0;
};

// Trains two-hidden-layer tanh and ReLU nets with biases (Kaiming-like init,
// full-batch gradient descent, weight decay on every parameter) and a ridge
// regressor for each signal strength. Losses are training mean squared errors.
std::vector<Figure3Row> figure3_experiment(const Figure3Config& cfg);

}  // namespace dln
