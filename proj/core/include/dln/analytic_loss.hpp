#pragma once

#include "dln/architecture.hpp"
#include "dln/moments.hpp"
#include "dln/params.hpp"

#include <Eigen/Dense>

namespace dln {

// Noise-averaged objective
//   E_x E_eps (y - f(x))^2 + gamma_u (|U|^2 + bias_u^2) + sum_k gamma_k (|W_k|^2 + |bias_k|^2)
// with independent multiplicative noise of mean 1 and variance sigma_k^2 on every
// hidden unit. The noise is integrated out exactly.
double expected_loss(const Params& p, const Architecture& arch, const DataMoments& m);

Params expected_loss_gradient(const Params& p, const Architecture& arch, const DataMoments& m);

struct LossAndGradient {
    double loss = 0.0;
    Params gradient;
};

LossAndGradient loss_and_gradient(const Params& p, const Architecture& arch, const DataMoments& m);

double regularizer(const Params& p, const Architecture& arch);

// Noise-averaged second moment of the last hidden layer given the (possibly
// bias-augmented) second moment `s0` of the input.
Eigen::MatrixXd output_layer_second_moment(const Params& p, const Architecture& arch, const Eigen::MatrixXd& s0);

// Mean and second moment of f(x) over the noise, at a fixed input.
struct PredictionMoments {
    double mean = 0.0;
    double second = 0.0;
    double variance() const { return second - mean * mean; }
};

PredictionMoments prediction_moments(const Params& p, const Architecture& arch, const Eigen::VectorXd& x);

// Loss along the scalar solution family with the first layer at its ridge
// optimum. Even in b; negative values are accepted for landscape plots.
double scalar_loss_profile(double b, const Architecture& arch, const DataMoments& m);
double scalar_loss_profile(double b, const HomogeneousArchitecture& arch, const DataMoments& m);

}  // namespace dln
