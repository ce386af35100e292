#pragma once

#include <optional>
#include <vector>

namespace dln {

// Linear network x -> U^T eps_D . W_D ... eps_1 . W_1 x with `depth` hidden layers.
struct Architecture {
    int input_dim = 1;
    std::vector<int> widths;
    std::vector<double> noise_vars;
    double gamma_u = 0.0;
    std::vector<double> gammas;

    int depth() const { return static_cast<int>(widths.size()); }
    // Width of layer k, with layer 0 the input.
    int dim(int k) const { return k == 0 ? input_dim : widths[k - 1]; }
    int parameter_count(bool with_bias = false) const;
    // Any noise variance equal to zero: solutions are limits of the noisy ones.
    bool limit_case() const;
};

// Throws InvalidInput on length mismatches, nonpositive widths or decay strengths,
// or negative noise variances.
void validate(const Architecture& arch);

// Shared width, noise and decay (the decay also applies to the output layer).
struct HomogeneousArchitecture {
    int depth = 1;
    int input_dim = 1;
    int width = 1;
    double noise_var = 0.0;
    double gamma = 0.0;

    Architecture expand() const;
};

std::optional<HomogeneousArchitecture> as_homogeneous(const Architecture& arch);

struct AggregateConstants {
    double mu = 1.0;  // product of widths d_2..d_D
    double s2 = 1.0;  // product of d_i (sigma_i^2 + d_i) over i = 2..D
    double c0 = 1.0;  // output-to-input scale: U^T W_D ... W_2 sums to c0 * b^D along the family
    bool log_space = false;
};

// For depth one c0 is 1 by convention (the family is anchored on the output scale).
AggregateConstants aggregate_constants(const Architecture& arch);

}  // namespace dln
