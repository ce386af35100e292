#include "dln/synthetic.hpp"

#include "dln/errors.hpp"

#include <cmath>
#include <random>

namespace dln {

Dataset generate_gaussian(int dim, int n, double v_norm, std::uint64_t seed, TargetKind target) {
    if (dim < 1 || n < 1) throw InvalidInput("gen-data: dim and n must be at least 1");
    if (!(v_norm >= 0.0) || !std::isfinite(v_norm)) throw InvalidInput("gen-data: v_norm must be a nonnegative number");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);

    Eigen::VectorXd v(dim);
    for (int i = 0; i < dim; ++i) v(i) = normal(rng);
    if (v.norm() == 0.0) v(0) = 1.0;
    v *= v_norm / v.norm();

    Dataset data;
    data.reserve(n);
    for (int k = 0; k < n; ++k) {
        Eigen::VectorXd x(dim);
        for (int i = 0; i < dim; ++i) x(i) = normal(rng);
        const double y = target == TargetKind::linear ? v.dot(x) : v.dot(x.array().tanh().matrix());
        data.push_back({std::move(x), y + 0.0});  // no "-0" in written files
    }
    return data;
}

}  // namespace dln
