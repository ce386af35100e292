#include "dln/stochastic.hpp"

#include "dln/errors.hpp"

#include <cmath>
#include <sstream>

namespace dln {

double prediction_variance(const SolutionCandidate& c, const Eigen::VectorXd& x, const HomogeneousArchitecture& arch,
                           const DataMoments& m) {
    const auto sx2 = isotropic_scale(m);
    if (!sx2) throw InvalidInput("prediction variance formula requires isotropic covariance");
    if (x.size() != m.dim) throw InvalidInput("prediction_variance: input has the wrong length");
    if (c.kind == SolutionKind::trivial) return 0.0;

    const int D = arch.depth;
    const double d0 = arch.width, s2 = arch.noise_var, g = arch.gamma;
    // Depth one stores the output scale; the formula is written for the inner-layer scale.
    const double b = D == 1 ? c.b / std::sqrt(d0) : c.b;
    const double proj = m.exy.dot(x);
    const double b2d = std::pow(b, 2.0 * D);
    const double denom = b2d * std::pow(d0, D) * std::pow(s2 + d0, D) * *sx2 + g;
    return std::pow(d0, 3.0 * D) * (std::pow(s2 + d0, D) - std::pow(d0, D)) * b2d * b2d * proj * proj / (denom * denom);
}

std::string to_string(Sweep s) {
    switch (s) {
        case Sweep::width: return "width";
        case Sweep::noise: return "noise";
        case Sweep::depth: return "depth";
    }
    return "width";
}

Sweep parse_sweep(const std::string& name) {
    if (name == "width") return Sweep::width;
    if (name == "noise") return Sweep::noise;
    if (name == "depth") return Sweep::depth;
    throw InvalidInput("unknown sweep '" + name + "' (expected width, noise or depth)");
}

double fit_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2) throw InvalidInput("fit_slope: need at least two paired points");
    const auto n = static_cast<Eigen::Index>(xs.size());
    Eigen::MatrixXd a(n, 2);
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        a(i, 0) = xs[i];
        a(i, 1) = 1.0;
        y(i) = ys[i];
    }
    return a.colPivHouseholderQr().solve(y)(0);
}

VarianceReport variance_scaling(const HomogeneousArchitecture& base, const DataMoments& m, Sweep sweep,
                                const std::vector<double>& grid, std::optional<Eigen::VectorXd> x) {
    if (grid.size() < 4) throw InvalidInput("variance sweep needs at least 4 grid points");
    if (m.exy.norm() == 0.0) throw InvalidInput("variance sweep needs a nonzero signal E[xy]");
    const Eigen::VectorXd probe = x ? *x : Eigen::VectorXd(m.exy.normalized());

    VarianceReport rep;
    rep.sweep = sweep;
    std::vector<double> trivial;
    for (double v : grid) {
        HomogeneousArchitecture h = base;
        switch (sweep) {
            case Sweep::width: h.width = static_cast<int>(std::lround(v)); break;
            case Sweep::noise: h.noise_var = v; break;
            case Sweep::depth: h.depth = static_cast<int>(std::lround(v)); break;
        }
        const GlobalMinimum gm = global_minimum(h.expand(), m);
        if (gm.best.kind == SolutionKind::trivial) {
            trivial.push_back(v);
            continue;
        }
        rep.points.push_back({v, gm.best.b, prediction_variance(gm.best, probe, h, m)});
    }
    if (!trivial.empty()) {
        std::ostringstream os;
        os << "trivial global minimum (zero variance) at " << to_string(sweep) << " =";
        for (double v : trivial) os << ' ' << v;
        throw InvalidInput(os.str());
    }

    std::vector<double> xs, ys;
    for (const auto& p : rep.points) {
        xs.push_back(sweep == Sweep::depth ? p.param : std::log(p.param));
        ys.push_back(std::log(p.variance));
    }
    rep.fitted_slope = fit_slope(xs, ys);
    rep.scaling_exponents[to_string(sweep)] = rep.fitted_slope;
    return rep;
}

}  // namespace dln
