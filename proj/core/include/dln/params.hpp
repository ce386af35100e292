#pragma once

#include "dln/architecture.hpp"

#include <Eigen/Dense>

#include <vector>

namespace dln {

// Network weights. `ws[k]` maps layer k to layer k+1 and has shape d_{k+1} x d_k.
// Biases are present iff `bias_ws` is nonempty.
struct Params {
    Eigen::VectorXd u;
    std::vector<Eigen::MatrixXd> ws;
    double bias_u = 0.0;
    std::vector<Eigen::VectorXd> bias_ws;

    bool has_bias() const { return !bias_ws.empty(); }
    double squared_norm() const;
    double norm() const;

    Params& operator+=(const Params& other);
    Params& operator*=(double s);
};

Params operator*(double s, Params p);
Params operator+(Params a, const Params& b);
Params operator-(Params a, const Params& b);

Params zero_params(const Architecture& arch, bool with_bias = false);

// Throws InvalidInput when the shapes do not match `arch`.
void check_shapes(const Params& p, const Architecture& arch);

// Layout: u, then W_1..W_D each row-major, then bias_ws (layer order), then bias_u.
Eigen::VectorXd flatten(const Params& p);
Params unflatten(const Eigen::VectorXd& v, const Architecture& arch, bool with_bias = false);

}  // namespace dln
