#include "dln/solution_family.hpp"

#include "dln/errors.hpp"

#include <cmath>

namespace dln {

SolutionFamily::SolutionFamily(Architecture arch, const DataMoments& m)
    : arch_(std::move(arch)), consts_(aggregate_constants(arch_)), spec_(spectral(m)), ey2_(m.ey2) {
    if (m.dim != arch_.input_dim)
        throw InvalidInput("moments have dimension " + std::to_string(m.dim) + " but the architecture expects " +
                           std::to_string(arch_.input_dim));
    const int D = arch_.depth();
    rho_ = D == 1 ? arch_.gamma_u / arch_.gammas[0] : arch_.gammas[1] * arch_.dim(2) / arch_.gammas[0];
    signal_norm_ = m.exy.norm();
    first_noise_ = arch_.noise_vars[0] + arch_.dim(1);
}

FamilyScales SolutionFamily::scales(double b) const {
    const int D = arch_.depth();
    FamilyScales s;
    if (D == 1) {
        s.b_u = b;
        s.path = b;
        s.penalty = arch_.gamma_u * arch_.dim(1) * b * b;
        return s;
    }
    auto d = [&](int k) { return static_cast<double>(arch_.dim(k)); };
    const double t = arch_.gammas[1] * d(2) * d(1) * b * b;
    s.b_u = std::sqrt(t / (arch_.gamma_u * d(D)));
    s.path = s.b_u;
    for (int i = 2; i <= D; ++i) {
        const double bi = i == 2 ? std::abs(b) : std::sqrt(t / (arch_.gammas[i - 1] * d(i) * d(i - 1)));
        s.inner.push_back(bi);
        s.path *= bi;
    }
    s.penalty = D * t;
    return s;
}

Eigen::VectorXd SolutionFamily::denominators(double path) const {
    const double k = path * path * consts_.s2 * first_noise_;
    return (k * spec_.eigenvalues.array() + arch_.gammas[0]).matrix();
}

double SolutionFamily::path_over_b(double b) const {
    const int D = arch_.depth();
    if (D == 1) return 1.0;
    return consts_.c0 * std::pow(std::abs(b), D - 1);
}

Eigen::VectorXd SolutionFamily::first_layer(double b) const {
    const double path = scales(b).path;
    const Eigen::VectorXd k = denominators(path);
    const Eigen::VectorXd rotated = path * consts_.mu * spec_.exy_rotated.cwiseQuotient(k);
    return spec_.rotation.transpose() * rotated;
}

double SolutionFamily::scaled_residual(double b) const {
    const double path = scales(b).path;
    const Eigen::VectorXd k = denominators(path);
    const double amp = path_over_b(b) * consts_.mu;
    return amp * amp * spec_.exy_rotated.cwiseQuotient(k).squaredNorm() - rho_;
}

double SolutionFamily::residual(double b) const {
    const double path = scales(b).path;
    const Eigen::VectorXd k = denominators(path);
    const double amp = path * consts_.mu;
    return amp * amp * spec_.exy_rotated.cwiseQuotient(k).squaredNorm() - rho_ * b * b;
}

double SolutionFamily::profile(double b) const {
    const FamilyScales s = scales(b);
    const Eigen::VectorXd k = denominators(s.path);
    const double amp = s.path * consts_.mu;
    const double fit = spec_.exy_rotated.cwiseAbs2().cwiseQuotient(k).sum();
    return ey2_ - arch_.dim(1) * amp * amp * fit + s.penalty;
}

RootBracket SolutionFamily::bracket() const {
    const int D = arch_.depth();
    const double g1 = arch_.gammas[0];
    const double e = signal_norm_;
    const double a_min = spec_.a_min();
    RootBracket br;

    if (D == 1) {
        // At b = 0 the scaled residual is |e|^2 / g1^2 - rho and it decreases in b.
        if (!(e * e > arch_.gamma_u * g1)) {
            br.empty = true;
            return br;
        }
        br.lo = 0.0;
        if (a_min > 0.0) {
            const double num = std::sqrt(g1 / arch_.gamma_u) * e - g1;
            br.hi = std::sqrt(num / (first_noise_ * a_min));
            return br;
        }
    } else {
        if (e == 0.0) {
            br.empty = true;
            return br;
        }
        const double c0 = consts_.c0, mu = consts_.mu;
        const double log_lo = (std::log(rho_) + 2.0 * std::log(g1) - 2.0 * std::log(c0) - 2.0 * std::log(mu) -
                               2.0 * std::log(e)) /
                              (2.0 * D - 2.0);
        br.lo = std::exp(log_lo);
        if (a_min > 0.0) {
            const double log_hi = (2.0 * std::log(mu) + 2.0 * std::log(e) - std::log(rho_) - 2.0 * std::log(c0) -
                                   2.0 * std::log(consts_.s2) - 2.0 * std::log(first_noise_) - 2.0 * std::log(a_min)) /
                                  (2.0 * D + 2.0);
            br.hi = std::exp(log_hi);
            if (br.hi < br.lo) br.empty = true;
            return br;
        }
    }

    // Singular a0: no finite bound from the spectrum. Double until the residual
    // is negative and stays negative across one further decade.
    br.heuristic = true;
    double b = br.lo > 0.0 ? br.lo : 1.0;
    for (int iter = 0; iter < 400; ++iter, b *= 2.0) {
        if (!std::isfinite(b)) break;
        if (scaled_residual(b) >= 0.0) continue;
        bool stays = true;
        for (int j = 1; j <= 20 && stays; ++j) stays = scaled_residual(b * std::pow(10.0, j / 20.0)) < 0.0;
        if (stays) {
            br.hi = b;
            return br;
        }
    }
    throw NumericalFailure("could not bracket the nontrivial roots (singular covariance with growing residual)");
}

}  // namespace dln
