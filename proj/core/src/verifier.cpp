#include "dln/verifier.hpp"

#include "dln/analytic_loss.hpp"
#include "dln/errors.hpp"

#include <cmath>
#include <random>

namespace dln {

std::string to_string(InitScheme s) {
    switch (s) {
        case InitScheme::origin: return "origin";
        case InitScheme::uniform_ball: return "uniform_ball";
        case InitScheme::kaiming_like: return "kaiming_like";
    }
    return "origin";
}

InitScheme parse_init_scheme(const std::string& name) {
    if (name == "origin") return InitScheme::origin;
    if (name == "uniform_ball") return InitScheme::uniform_ball;
    if (name == "kaiming_like") return InitScheme::kaiming_like;
    throw InvalidInput("unknown init scheme '" + name + "'");
}

std::string to_string(Endpoint e) {
    switch (e) {
        case Endpoint::trivial: return "trivial";
        case Endpoint::matches_analytic: return "matches_analytic";
        case Endpoint::other: return "other";
    }
    return "other";
}

void validate(const TrainConfig& c) {
    if (!(c.learning_rate > 0.0)) throw InvalidInput("learning_rate must be positive");
    if (c.max_steps < 1) throw InvalidInput("max_steps must be at least 1");
    if (!(c.init_radius >= 0.0)) throw InvalidInput("init_radius must be nonnegative");
}

Params initial_params(const Architecture& arch, const TrainConfig& c) {
    std::mt19937_64 rng(c.seed);
    Params p = zero_params(arch);
    switch (c.init) {
        case InitScheme::origin: break;
        case InitScheme::uniform_ball: {
            const int n = arch.parameter_count();
            std::normal_distribution<double> normal(0.0, 1.0);
            std::uniform_real_distribution<double> unif(0.0, 1.0);
            Eigen::VectorXd dir(n);
            for (int i = 0; i < n; ++i) dir(i) = normal(rng);
            const double r = c.init_radius * std::pow(unif(rng), 1.0 / n);
            p = unflatten(r * dir.normalized(), arch);
            break;
        }
        case InitScheme::kaiming_like: {
            auto fill = [&rng](Eigen::MatrixXd& w, int fan_in) {
                const double lim = std::sqrt(3.0 / fan_in);
                std::uniform_real_distribution<double> unif(-lim, lim);
                for (Eigen::Index i = 0; i < w.rows(); ++i)
                    for (Eigen::Index j = 0; j < w.cols(); ++j) w(i, j) = unif(rng);
            };
            for (int k = 1; k <= arch.depth(); ++k) fill(p.ws[k - 1], arch.dim(k - 1));
            Eigen::MatrixXd u = Eigen::MatrixXd::Zero(p.u.size(), 1);
            fill(u, static_cast<int>(p.u.size()));
            p.u = u.col(0);
            break;
        }
    }
    return p;
}

Endpoint classify_endpoint(const Params& p, double loss, const Architecture& arch, const GlobalMinimum& gm,
                           std::optional<double>* matched_b) {
    constexpr double loss_tol = 1e-4;
    const double norm = p.norm();
    for (const auto& c : gm.candidates) {
        if (std::abs(loss - c.loss) > loss_tol) continue;
        const double cn = c.params.norm();
        if (std::abs(norm - cn) > 1e-2 * std::max(1.0, cn)) continue;
        if (c.kind == SolutionKind::trivial) return Endpoint::trivial;
        if (matched_b) {
            // Recover b from the output scale.
            const int D = arch.depth();
            const double b_u = p.u.norm() / std::sqrt(static_cast<double>(arch.dim(D)));
            double b = b_u;
            if (D >= 2)
                b = b_u * std::sqrt(arch.gamma_u * arch.dim(D) / (arch.gammas[1] * arch.dim(2) * arch.dim(1)));
            *matched_b = b;
        }
        return Endpoint::matches_analytic;
    }
    return Endpoint::other;
}

TrainResult gd_from(Params start, const Architecture& arch, const DataMoments& m, const TrainConfig& c,
                    const GlobalMinimum* gm) {
    validate(c);
    TrainResult res;
    Params p = std::move(start);
    LossAndGradient lg = loss_and_gradient(p, arch, m);
    res.initial_loss = lg.loss;
    const double blowup = 1e3 * std::max(m.ey2, 1e-300);
    int step = 0;
    for (; step < c.max_steps; ++step) {
        if (lg.gradient.norm() <= c.stop_grad_norm) break;
        p += -c.learning_rate * lg.gradient;
        lg = loss_and_gradient(p, arch, m);
        if (!std::isfinite(lg.loss) || lg.loss > blowup)
            throw NumericalFailure("gradient descent diverged at step " + std::to_string(step + 1) +
                                   "; try a smaller learning rate");
    }
    res.final_params = std::move(p);
    res.final_loss = lg.loss;
    res.final_grad_norm = lg.gradient.norm();
    res.steps_taken = step;
    if (gm) res.converged_to = classify_endpoint(res.final_params, res.final_loss, arch, *gm, &res.matched_b);
    return res;
}

TrainResult gd_optimize(const Architecture& arch, const DataMoments& m, const TrainConfig& c, const GlobalMinimum& gm) {
    return gd_from(initial_params(arch, c), arch, m, c, &gm);
}

TrainResult gd_optimize(const Architecture& arch, const DataMoments& m, const TrainConfig& c) {
    const GlobalMinimum gm = global_minimum(arch, m);
    return gd_optimize(arch, m, c, gm);
}

BruteForceResult brute_force_min(const Architecture& arch, const DataMoments& m, double halfwidth, int points_per_axis,
                                 int refine_levels) {
    validate(arch);
    const int n = arch.parameter_count();
    if (n > 4) throw InvalidInput("brute_force_min supports at most 4 parameters, got " + std::to_string(n));
    if (points_per_axis < 2) throw InvalidInput("brute_force_min needs at least 2 points per axis");
    if (!(halfwidth > 0.0)) throw InvalidInput("brute_force_min needs a positive half-width");

    BruteForceResult res;
    Eigen::VectorXd center = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd best = center;
    res.best_loss = expected_loss(unflatten(best, arch), arch, m);
    double hw = halfwidth;
    for (int level = 0; level <= refine_levels; ++level) {
        const double step = 2.0 * hw / (points_per_axis - 1);
        std::vector<int> idx(n, 0);
        Eigen::VectorXd x(n);
        for (;;) {
            for (int i = 0; i < n; ++i) x(i) = center(i) - hw + step * idx[i];
            const double l = expected_loss(unflatten(x, arch), arch, m);
            ++res.evaluations;
            if (l < res.best_loss) {
                res.best_loss = l;
                best = x;
            }
            int k = 0;
            while (k < n && ++idx[k] == points_per_axis) idx[k++] = 0;
            if (k == n) break;
        }
        res.final_spacing = step;
        center = best;
        hw = 2.0 * step;
    }
    res.best_params = unflatten(best, arch);
    return res;
}

}  // namespace dln
