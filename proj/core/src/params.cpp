#include "dln/params.hpp"

#include "dln/errors.hpp"

#include <cmath>
#include <string>

namespace dln {

double Params::squared_norm() const {
    double s = u.squaredNorm() + bias_u * bias_u;
    for (const auto& w : ws) s += w.squaredNorm();
    for (const auto& b : bias_ws) s += b.squaredNorm();
    return s;
}

double Params::norm() const { return std::sqrt(squared_norm()); }

Params& Params::operator+=(const Params& other) {
    u += other.u;
    for (std::size_t k = 0; k < ws.size(); ++k) ws[k] += other.ws[k];
    bias_u += other.bias_u;
    for (std::size_t k = 0; k < bias_ws.size(); ++k) bias_ws[k] += other.bias_ws[k];
    return *this;
}

Params& Params::operator*=(double s) {
    u *= s;
    for (auto& w : ws) w *= s;
    bias_u *= s;
    for (auto& b : bias_ws) b *= s;
    return *this;
}

Params operator*(double s, Params p) { return p *= s; }
Params operator+(Params a, const Params& b) { return a += b; }
Params operator-(Params a, const Params& b) { return a += -1.0 * b; }

Params zero_params(const Architecture& arch, bool with_bias) {
    Params p;
    const int D = arch.depth();
    p.u = Eigen::VectorXd::Zero(arch.dim(D));
    for (int k = 1; k <= D; ++k) p.ws.push_back(Eigen::MatrixXd::Zero(arch.dim(k), arch.dim(k - 1)));
    if (with_bias)
        for (int k = 1; k <= D; ++k) p.bias_ws.push_back(Eigen::VectorXd::Zero(arch.dim(k)));
    return p;
}

void check_shapes(const Params& p, const Architecture& arch) {
    const int D = arch.depth();
    if (static_cast<int>(p.ws.size()) != D)
        throw InvalidInput("params: expected " + std::to_string(D) + " weight matrices, got " + std::to_string(p.ws.size()));
    if (p.u.size() != arch.dim(D))
        throw InvalidInput("params: output weights have length " + std::to_string(p.u.size()) + ", expected " +
                           std::to_string(arch.dim(D)));
    for (int k = 1; k <= D; ++k) {
        const auto& w = p.ws[k - 1];
        if (w.rows() != arch.dim(k) || w.cols() != arch.dim(k - 1))
            throw InvalidInput("params: layer " + std::to_string(k) + " has shape " + std::to_string(w.rows()) + "x" +
                               std::to_string(w.cols()) + ", expected " + std::to_string(arch.dim(k)) + "x" +
                               std::to_string(arch.dim(k - 1)));
    }
    if (p.has_bias()) {
        if (static_cast<int>(p.bias_ws.size()) != D) throw InvalidInput("params: expected one bias vector per hidden layer");
        for (int k = 1; k <= D; ++k)
            if (p.bias_ws[k - 1].size() != arch.dim(k))
                throw InvalidInput("params: bias of layer " + std::to_string(k) + " has wrong length");
    }
}

Eigen::VectorXd flatten(const Params& p) {
    Eigen::Index n = p.u.size() + (p.has_bias() ? 1 : 0);
    for (const auto& w : p.ws) n += w.size();
    for (const auto& b : p.bias_ws) n += b.size();
    Eigen::VectorXd v(n);
    Eigen::Index i = 0;
    for (Eigen::Index j = 0; j < p.u.size(); ++j) v(i++) = p.u(j);
    for (const auto& w : p.ws)
        for (Eigen::Index r = 0; r < w.rows(); ++r)
            for (Eigen::Index c = 0; c < w.cols(); ++c) v(i++) = w(r, c);
    for (const auto& b : p.bias_ws)
        for (Eigen::Index j = 0; j < b.size(); ++j) v(i++) = b(j);
    if (p.has_bias()) v(i++) = p.bias_u;
    return v;
}

Params unflatten(const Eigen::VectorXd& v, const Architecture& arch, bool with_bias) {
    Params p = zero_params(arch, with_bias);
    if (v.size() != arch.parameter_count(with_bias))
        throw InvalidInput("unflatten: vector has " + std::to_string(v.size()) + " entries, expected " +
                           std::to_string(arch.parameter_count(with_bias)));
    Eigen::Index i = 0;
    for (Eigen::Index j = 0; j < p.u.size(); ++j) p.u(j) = v(i++);
    for (auto& w : p.ws)
        for (Eigen::Index r = 0; r < w.rows(); ++r)
            for (Eigen::Index c = 0; c < w.cols(); ++c) w(r, c) = v(i++);
    for (auto& b : p.bias_ws)
        for (Eigen::Index j = 0; j < b.size(); ++j) b(j) = v(i++);
    if (with_bias) p.bias_u = v(i++);
    return p;
}

}  // namespace dln
