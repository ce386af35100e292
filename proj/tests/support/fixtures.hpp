#pragma once

#include <dln/dln.hpp>

#include <random>

namespace dln::fixtures {

inline Eigen::MatrixXd random_psd(int d, std::mt19937_64& rng, double floor = 0.05) {
    std::normal_distribution<double> n(0.0, 1.0);
    Eigen::MatrixXd g(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) g(i, j) = n(rng);
    Eigen::MatrixXd a = g * g.transpose() / d + floor * Eigen::MatrixXd::Identity(d, d);
    return 0.5 * (a + a.transpose());
}

inline Eigen::VectorXd random_vector(int d, std::mt19937_64& rng, double scale = 1.0) {
    std::normal_distribution<double> n(0.0, scale);
    Eigen::VectorXd v(d);
    for (int i = 0; i < d; ++i) v(i) = n(rng);
    return v;
}

// Moments of a consistent population: ey2 covers the best linear fit.
inline DataMoments random_moments(int d, std::mt19937_64& rng, double signal = 1.0, double floor = 0.05) {
    Eigen::MatrixXd a0 = random_psd(d, rng, floor);
    Eigen::VectorXd exy = random_vector(d, rng);
    exy *= signal / exy.norm();
    const double fit = exy.dot(a0.ldlt().solve(exy));
    return make_moments(a0, exy, fit + 0.5);
}

inline DataMoments isotropic_moments(int d, double sx2, Eigen::VectorXd exy, double ey2) {
    return make_moments(sx2 * Eigen::MatrixXd::Identity(d, d), std::move(exy), ey2);
}

inline Architecture two_layer(int d, int d1, double noise, double gamma_u, double gamma_w) {
    Architecture a;
    a.input_dim = d;
    a.widths = {d1};
    a.noise_vars = {noise};
    a.gamma_u = gamma_u;
    a.gammas = {gamma_w};
    return a;
}

inline Architecture homogeneous(int depth, int d, int width, double noise, double gamma) {
    return HomogeneousArchitecture{depth, d, width, noise, gamma}.expand();
}

inline Params random_params(const Architecture& arch, std::mt19937_64& rng, double scale = 1.0, bool bias = false) {
    std::uniform_real_distribution<double> u(-scale, scale);
    Eigen::VectorXd v(arch.parameter_count(bias));
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = u(rng);
    return unflatten(v, arch, bias);
}

// Central differences with step h on every flat coordinate.
inline Eigen::VectorXd numeric_gradient(const Params& p, const Architecture& arch, const DataMoments& m,
                                        double h = 1e-5) {
    const Eigen::VectorXd x = flatten(p);
    Eigen::VectorXd g(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        Eigen::VectorXd xp = x, xm = x;
        xp(i) += h;
        xm(i) -= h;
        g(i) = (expected_loss(unflatten(xp, arch, p.has_bias()), arch, m) -
                expected_loss(unflatten(xm, arch, p.has_bias()), arch, m)) /
               (2.0 * h);
    }
    return g;
}

inline Eigen::MatrixXd numeric_hessian(const Params& p, const Architecture& arch, const DataMoments& m,
                                       double h = 1e-4) {
    const Eigen::VectorXd x = flatten(p);
    const auto n = x.size();
    auto f = [&](const Eigen::VectorXd& y) { return expected_loss(unflatten(y, arch, p.has_bias()), arch, m); };
    Eigen::MatrixXd hess(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            Eigen::VectorXd pp = x, pm = x, mp = x, mm = x;
            pp(i) += h; pp(j) += h;
            pm(i) += h; pm(j) -= h;
            mp(i) -= h; mp(j) += h;
            mm(i) -= h; mm(j) -= h;
            hess(i, j) = (f(pp) - f(pm) - f(mp) + f(mm)) / (4.0 * h * h);
        }
    }
    return hess;
}

}  // namespace dln::fixtures
