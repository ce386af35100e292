#include "dln/architecture.hpp"

#include "dln/errors.hpp"

#include <cmath>
#include <string>

namespace dln {

int Architecture::parameter_count(bool with_bias) const {
    int n = dim(depth());
    for (int k = 1; k <= depth(); ++k) n += dim(k) * dim(k - 1);
    if (with_bias) {
        n += 1;
        for (int k = 1; k <= depth(); ++k) n += dim(k);
    }
    return n;
}

bool Architecture::limit_case() const {
    for (double s : noise_vars)
        if (s == 0.0) return true;
    return false;
}

void validate(const Architecture& arch) {
    const auto D = arch.widths.size();
    if (D < 1) throw InvalidInput("architecture: depth must be at least 1");
    if (arch.noise_vars.size() != D || arch.gammas.size() != D)
        throw InvalidInput("architecture: widths, noise_vars and gammas must all have length " +
                           std::to_string(D));
    if (arch.input_dim < 1) throw InvalidInput("architecture: input_dim must be positive");
    for (std::size_t i = 0; i < D; ++i) {
        if (arch.widths[i] < 1) throw InvalidInput("architecture: width of layer " + std::to_string(i + 1) + " must be positive");
        if (!(arch.noise_vars[i] >= 0.0) || !std::isfinite(arch.noise_vars[i]))
            throw InvalidInput("architecture: noise variance of layer " + std::to_string(i + 1) + " must be nonnegative");
        if (!(arch.gammas[i] > 0.0) || !std::isfinite(arch.gammas[i]))
            throw InvalidInput("architecture: gamma of layer " + std::to_string(i + 1) + " must be positive");
    }
    if (!(arch.gamma_u > 0.0) || !std::isfinite(arch.gamma_u))
        throw InvalidInput("architecture: gamma_u must be positive");
}

Architecture HomogeneousArchitecture::expand() const {
    Architecture a;
    a.input_dim = input_dim;
    a.widths.assign(depth, width);
    a.noise_vars.assign(depth, noise_var);
    a.gammas.assign(depth, gamma);
    a.gamma_u = gamma;
    return a;
}

std::optional<HomogeneousArchitecture> as_homogeneous(const Architecture& arch) {
    if (arch.depth() < 1) return std::nullopt;
    HomogeneousArchitecture h{arch.depth(), arch.input_dim, arch.widths[0], arch.noise_vars[0], arch.gamma_u};
    for (int i = 0; i < arch.depth(); ++i) {
        if (arch.widths[i] != h.width || arch.noise_vars[i] != h.noise_var || arch.gammas[i] != h.gamma)
            return std::nullopt;
    }
    return h;
}

AggregateConstants aggregate_constants(const Architecture& arch) {
    validate(arch);
    const int D = arch.depth();
    AggregateConstants c;
    if (D == 1) return c;

    auto d = [&](int k) { return static_cast<double>(arch.dim(k)); };
    const double d1 = d(1), d2 = d(2);
    const double g2 = arch.gammas[1];

    c.log_space = D >= 8;
    if (c.log_space) {
        double log_mu = 0.0, log_s2 = 0.0, log_gprod = std::log(arch.gamma_u);
        for (int i = 2; i <= D; ++i) {
            log_mu += std::log(d(i));
            log_s2 += std::log(d(i)) + std::log(arch.noise_vars[i - 1] + d(i));
            log_gprod += std::log(arch.gammas[i - 1]);
        }
        c.mu = std::exp(log_mu);
        c.s2 = std::exp(log_s2);
        c.c0 = std::exp(0.5 * D * std::log(g2 * d2 * d1) - 0.5 * log_gprod - log_mu - 0.5 * std::log(d1));
        return c;
    }

    double gprod = arch.gamma_u;
    for (int i = 2; i <= D; ++i) {
        c.mu *= d(i);
        c.s2 *= d(i) * (arch.noise_vars[i - 1] + d(i));
        gprod *= arch.gammas[i - 1];
    }
    c.c0 = std::pow(g2 * d2 * d1, 0.5 * D) / (std::sqrt(gprod) * c.mu * std::sqrt(d1));
    return c;
}

}  // namespace dln
