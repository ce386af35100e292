#include "dln/analytic_loss.hpp"

#include "dln/errors.hpp"
#include "dln/solution_family.hpp"

#include <cmath>
#include <vector>

namespace dln {

namespace {

// Bias-augmented view: every layer carries a constant unit that is never noised.
struct Augmented {
    std::vector<Eigen::MatrixXd> ws;     // (d_k + e) x (d_{k-1} + e)
    std::vector<Eigen::VectorXd> noise;  // per-unit noise variance of layer k
    Eigen::VectorXd u;
    int extra = 0;
};

Augmented augment(const Params& p, const Architecture& arch) {
    Augmented a;
    a.extra = p.has_bias() ? 1 : 0;
    const int e = a.extra;
    for (int k = 1; k <= arch.depth(); ++k) {
        const int rows = arch.dim(k), cols = arch.dim(k - 1);
        Eigen::MatrixXd w = Eigen::MatrixXd::Zero(rows + e, cols + e);
        w.topLeftCorner(rows, cols) = p.ws[k - 1];
        if (e) {
            w.topRightCorner(rows, 1) = p.bias_ws[k - 1];
            w(rows, cols) = 1.0;
        }
        a.ws.push_back(std::move(w));
        Eigen::VectorXd n = Eigen::VectorXd::Zero(rows + e);
        n.head(rows).setConstant(arch.noise_vars[k - 1]);
        a.noise.push_back(std::move(n));
    }
    a.u.resize(p.u.size() + e);
    a.u.head(p.u.size()) = p.u;
    if (e) a.u(p.u.size()) = p.bias_u;
    return a;
}

Eigen::MatrixXd input_second_moment(const DataMoments& m, int extra) {
    if (!extra) return m.a0;
    Eigen::MatrixXd s(m.dim + 1, m.dim + 1);
    s.topLeftCorner(m.dim, m.dim) = m.a0;
    s.topRightCorner(m.dim, 1) = m.mean_x;
    s.bottomLeftCorner(1, m.dim) = m.mean_x.transpose();
    s(m.dim, m.dim) = 1.0;
    return s;
}

Eigen::VectorXd input_cross_moment(const DataMoments& m, int extra) {
    if (!extra) return m.exy;
    Eigen::VectorXd c(m.dim + 1);
    c.head(m.dim) = m.exy;
    c(m.dim) = m.mean_y;
    return c;
}

void check(const Params& p, const Architecture& arch, const DataMoments& m) {
    validate(arch);
    check_shapes(p, arch);
    if (m.dim != arch.input_dim)
        throw InvalidInput("moments have dimension " + std::to_string(m.dim) + " but the architecture expects " +
                           std::to_string(arch.input_dim));
}

// S_k = M_k + Diag(noise .* diag(M_k)) with M_k = W_k S_{k-1} W_k^T.
std::vector<Eigen::MatrixXd> forward_moments(const Augmented& a, const Eigen::MatrixXd& s0) {
    std::vector<Eigen::MatrixXd> s{s0};
    s.reserve(a.ws.size() + 1);
    for (std::size_t k = 0; k < a.ws.size(); ++k) {
        Eigen::MatrixXd mk = a.ws[k] * s.back() * a.ws[k].transpose();
        mk.diagonal() += a.noise[k].cwiseProduct(mk.diagonal());
        s.push_back(std::move(mk));
    }
    return s;
}

LossAndGradient evaluate(const Params& p, const Architecture& arch, const DataMoments& m, bool want_gradient) {
    check(p, arch, m);
    const Augmented a = augment(p, arch);
    const auto s = forward_moments(a, input_second_moment(m, a.extra));

    const int D = arch.depth();
    std::vector<Eigen::VectorXd> fwd{input_cross_moment(m, a.extra)};
    for (int k = 0; k < D; ++k) fwd.push_back(a.ws[k] * fwd.back());

    LossAndGradient out;
    out.loss = a.u.dot(s[D] * a.u) - 2.0 * a.u.dot(fwd[D]) + m.ey2 + regularizer(p, arch);
    if (!want_gradient) return out;

    std::vector<Eigen::MatrixXd> dws(D);
    Eigen::MatrixXd g = a.u * a.u.transpose();
    Eigen::VectorXd back = a.u;
    for (int k = D - 1; k >= 0; --k) {
        Eigen::MatrixXd h = g;
        h.diagonal() += a.noise[k].cwiseProduct(g.diagonal());
        dws[k] = 2.0 * h * a.ws[k] * s[k] - 2.0 * back * fwd[k].transpose();
        g = a.ws[k].transpose() * h * a.ws[k];
        back = a.ws[k].transpose() * back;
    }
    const Eigen::VectorXd du = 2.0 * s[D] * a.u - 2.0 * fwd[D];

    Params& grad = out.gradient;
    grad = zero_params(arch, p.has_bias());
    grad.u = du.head(p.u.size()) + 2.0 * arch.gamma_u * p.u;
    for (int k = 0; k < D; ++k) {
        const int rows = arch.dim(k + 1), cols = arch.dim(k);
        grad.ws[k] = dws[k].topLeftCorner(rows, cols) + 2.0 * arch.gammas[k] * p.ws[k];
        if (p.has_bias()) grad.bias_ws[k] = dws[k].topRightCorner(rows, 1) + 2.0 * arch.gammas[k] * p.bias_ws[k];
    }
    if (p.has_bias()) grad.bias_u = du(p.u.size()) + 2.0 * arch.gamma_u * p.bias_u;
    return out;
}

}  // namespace

double regularizer(const Params& p, const Architecture& arch) {
    double r = arch.gamma_u * (p.u.squaredNorm() + p.bias_u * p.bias_u);
    for (std::size_t k = 0; k < p.ws.size(); ++k) {
        r += arch.gammas[k] * p.ws[k].squaredNorm();
        if (p.has_bias()) r += arch.gammas[k] * p.bias_ws[k].squaredNorm();
    }
    return r;
}

double expected_loss(const Params& p, const Architecture& arch, const DataMoments& m) {
    return evaluate(p, arch, m, false).loss;
}

Params expected_loss_gradient(const Params& p, const Architecture& arch, const DataMoments& m) {
    return evaluate(p, arch, m, true).gradient;
}

LossAndGradient loss_and_gradient(const Params& p, const Architecture& arch, const DataMoments& m) {
    return evaluate(p, arch, m, true);
}

Eigen::MatrixXd output_layer_second_moment(const Params& p, const Architecture& arch, const Eigen::MatrixXd& s0) {
    validate(arch);
    check_shapes(p, arch);
    const Augmented a = augment(p, arch);
    if (s0.rows() != arch.input_dim + a.extra || s0.cols() != s0.rows())
        throw InvalidInput("input second moment has the wrong shape");
    return forward_moments(a, s0).back();
}

PredictionMoments prediction_moments(const Params& p, const Architecture& arch, const Eigen::VectorXd& x) {
    validate(arch);
    check_shapes(p, arch);
    if (x.size() != arch.input_dim) throw InvalidInput("prediction_moments: input has the wrong length");
    const Augmented a = augment(p, arch);
    Eigen::VectorXd xt(x.size() + a.extra);
    xt.head(x.size()) = x;
    if (a.extra) xt(x.size()) = 1.0;

    Eigen::VectorXd mean = xt;
    for (const auto& w : a.ws) mean = w * mean;
    const Eigen::MatrixXd s = forward_moments(a, xt * xt.transpose()).back();
    return {a.u.dot(mean), a.u.dot(s * a.u)};
}

double scalar_loss_profile(double b, const Architecture& arch, const DataMoments& m) {
    return SolutionFamily(arch, m).profile(b);
}

double scalar_loss_profile(double b, const HomogeneousArchitecture& arch, const DataMoments& m) {
    return scalar_loss_profile(b, arch.expand(), m);
}

}  // namespace dln
