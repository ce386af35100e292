#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace dln;

namespace {

DataMoments scalar_moments(double a, double exy, double ey2) {
    return make_moments(Eigen::MatrixXd::Constant(1, 1, a), Eigen::VectorXd::Constant(1, exy), ey2);
}

Params scalar_params(double u, double w) {
    Params p;
    p.u = Eigen::VectorXd::Constant(1, u);
    p.ws = {Eigen::MatrixXd::Constant(1, 1, w)};
    return p;
}

}  // namespace

TEST(ExpectedLoss, OriginGivesSecondMomentOfLabel) {
    std::mt19937_64 rng(2);
    for (int D : {1, 2, 4}) {
        const auto arch = fixtures::homogeneous(D, 3, 2, 0.5, 0.1);
        const auto m = fixtures::random_moments(3, rng);
        EXPECT_DOUBLE_EQ(expected_loss(zero_params(arch), arch, m), m.ey2);
    }
}

TEST(ExpectedLoss, PerfectFitWithoutNoiseOrDecay) {
    auto arch = fixtures::two_layer(1, 1, 0.0, 1e-300, 1e-300);
    EXPECT_NEAR(expected_loss(scalar_params(1, 1), arch, scalar_moments(1, 1, 1)), 0.0, 1e-15);
}

TEST(ExpectedLoss, HandExpansionDepthOne) {
    const auto arch = fixtures::two_layer(1, 1, 1.0, 0.1, 0.1);
    EXPECT_NEAR(expected_loss(scalar_params(1, 1), arch, scalar_moments(1, 1, 1)), 1.2, 1e-14);
}

TEST(ExpectedLoss, MonteCarloOverNoise) {
    // x = y = +-1 realises a = exy = ey2 = 1; eps ~ N(1, 1).
    const auto arch = fixtures::two_layer(1, 1, 1.0, 0.1, 0.1);
    std::mt19937_64 rng(42);
    std::normal_distribution<double> eps(1.0, 1.0);
    std::bernoulli_distribution coin(0.5);
    double acc = 0.0;
    const int n = 1000000;
    for (int i = 0; i < n; ++i) {
        const double x = coin(rng) ? 1.0 : -1.0;
        const double f = eps(rng) * x;
        acc += (x - f) * (x - f);
    }
    EXPECT_NEAR(acc / n + 0.2, 1.2, 1e-2);
}

TEST(ExpectedLoss, MonteCarloDeepNet) {
    std::mt19937_64 rng(8);
    const Dataset data = generate_gaussian(3, 40, 1.0, 3);
    const DataMoments m = compute_moments(data);
    Architecture arch = fixtures::homogeneous(2, 3, 3, 0.3, 0.05);
    arch.noise_vars = {0.3, 0.8};
    const Params p = fixtures::random_params(arch, rng, 0.6);

    std::normal_distribution<double> e1(1.0, std::sqrt(0.3)), e2(1.0, std::sqrt(0.8));
    double acc = 0.0;
    const int reps = 20000;
    for (int r = 0; r < reps; ++r) {
        for (const auto& s : data) {
            Eigen::VectorXd h = p.ws[0] * s.x;
            for (int i = 0; i < h.size(); ++i) h(i) *= e1(rng);
            h = p.ws[1] * h;
            for (int i = 0; i < h.size(); ++i) h(i) *= e2(rng);
            const double f = p.u.dot(h);
            acc += (s.y - f) * (s.y - f);
        }
    }
    const double mc = acc / (reps * static_cast<double>(data.size())) + regularizer(p, arch);
    const double exact = expected_loss(p, arch, m);
    EXPECT_NEAR(mc, exact, 1e-2 * exact);
}

TEST(ExpectedLoss, DepthOneMatchesNoiseExpansion) {
    // MSE + sigma^2 sum_j U_j^2 E[(W_j x)^2] + decay.
    std::mt19937_64 rng(4);
    const auto m = fixtures::random_moments(4, rng);
    const auto arch = fixtures::two_layer(4, 3, 0.7, 0.2, 0.3);
    const Params p = fixtures::random_params(arch, rng);
    const Eigen::VectorXd w = p.ws[0].transpose() * p.u;
    double noise = 0.0;
    for (int j = 0; j < 3; ++j) noise += p.u(j) * p.u(j) * p.ws[0].row(j).dot(m.a0 * p.ws[0].row(j).transpose());
    const double mse = m.ey2 - 2.0 * w.dot(m.exy) + w.dot(m.a0 * w);
    EXPECT_NEAR(expected_loss(p, arch, m), mse + 0.7 * noise + regularizer(p, arch), 1e-12);
}

TEST(ExpectedLoss, NonnegativeOnRandomParameters) {
    std::mt19937_64 rng(12);
    for (int t = 0; t < 200; ++t) {
        const int D = 1 + t % 3;
        const auto arch = fixtures::homogeneous(D, 3, 2, 0.4, 0.01);
        const Dataset data = generate_gaussian(3, 10, 1.0, t);
        EXPECT_GE(expected_loss(fixtures::random_params(arch, rng, 3.0), arch, compute_moments(data)), 0.0);
    }
}

TEST(ExpectedLoss, RowRescalingInvarianceDepthOne) {
    std::mt19937_64 rng(13);
    const auto m = fixtures::random_moments(3, rng);
    const auto arch = fixtures::two_layer(3, 4, 0.5, 0.1, 0.2);
    for (int t = 0; t < 10; ++t) {
        Params p = fixtures::random_params(arch, rng);
        const double base = expected_loss(p, arch, m) - regularizer(p, arch);
        const double a = 0.2 + 3.0 * t;
        Params q = p;
        q.u *= a;
        q.ws[0] /= a;
        EXPECT_NEAR(expected_loss(q, arch, m) - regularizer(q, arch), base, 1e-10 * std::max(1.0, std::abs(base)));
    }
}

TEST(ExpectedLoss, NondecreasingInDecay) {
    std::mt19937_64 rng(14);
    const auto m = fixtures::random_moments(3, rng);
    auto arch = fixtures::homogeneous(2, 3, 2, 0.5, 0.1);
    const Params p = fixtures::random_params(arch, rng);
    double prev = expected_loss(p, arch, m);
    for (double g : {0.2, 0.4, 1.0}) {
        arch.gammas[1] = g;
        arch.gamma_u = g;
        const double cur = expected_loss(p, arch, m);
        EXPECT_GE(cur, prev);
        prev = cur;
    }
}

TEST(ExpectedLoss, ShapeMismatchIsReported) {
    const auto arch = fixtures::homogeneous(2, 3, 2, 0.5, 0.1);
    Params p = zero_params(arch);
    p.ws[1] = Eigen::MatrixXd::Zero(3, 2);
    std::mt19937_64 rng(1);
    EXPECT_THROW(expected_loss(p, arch, fixtures::random_moments(3, rng)), InvalidInput);
}

TEST(Gradient, ZeroAtOrigin) {
    std::mt19937_64 rng(15);
    const auto m = fixtures::random_moments(3, rng);
    for (int D : {1, 2, 3}) {
        const auto arch = fixtures::homogeneous(D, 3, 2, 0.5, 0.1);
        const Params g = expected_loss_gradient(zero_params(arch), arch, m);
        EXPECT_EQ(flatten(g).cwiseAbs().maxCoeff(), 0.0);
        const Eigen::VectorXd fd = fixtures::numeric_gradient(zero_params(arch), arch, m);
        EXPECT_LE(fd.cwiseAbs().maxCoeff(), 1e-8);
    }
}

TEST(Gradient, MatchesFiniteDifferences) {
    std::mt19937_64 rng(16);
    for (int t = 0; t < 12; ++t) {
        const int D = 1 + t % 4;
        Architecture arch = fixtures::homogeneous(D, 3, 2 + t % 2, 0.4, 0.05);
        for (int k = 0; k < D; ++k) arch.noise_vars[k] = 0.1 * (k + 1);
        const auto m = fixtures::random_moments(3, rng, 0.8);
        const Params p = fixtures::random_params(arch, rng, 1.0);
        const Eigen::VectorXd g = flatten(expected_loss_gradient(p, arch, m));
        const Eigen::VectorXd fd = fixtures::numeric_gradient(p, arch, m);
        EXPECT_LE((g - fd).cwiseAbs().maxCoeff(), 1e-6) << "depth " << D;
    }
}

TEST(Gradient, WithBiasesMatchesFiniteDifferences) {
    std::mt19937_64 rng(17);
    const Dataset data = generate_gaussian(3, 30, 1.0, 5);
    Dataset shifted;
    for (const auto& s : data) shifted.push_back({s.x.array() + 0.3, s.y + 0.7});
    const DataMoments m = compute_moments(shifted);
    for (int D : {1, 2}) {
        const auto arch = fixtures::homogeneous(D, 3, 2, 0.4, 0.05);
        const Params p = fixtures::random_params(arch, rng, 1.0, true);
        const Eigen::VectorXd g = flatten(expected_loss_gradient(p, arch, m));
        EXPECT_LE((g - fixtures::numeric_gradient(p, arch, m)).cwiseAbs().maxCoeff(), 1e-6);
    }
}

TEST(Gradient, ZeroBiasesMatchThePlainPath) {
    std::mt19937_64 rng(18);
    const auto m = fixtures::random_moments(3, rng);
    const auto arch = fixtures::homogeneous(2, 3, 2, 0.4, 0.05);
    const Params p = fixtures::random_params(arch, rng);
    Params pb = p;
    pb.bias_ws = {Eigen::VectorXd::Zero(2), Eigen::VectorXd::Zero(2)};
    EXPECT_NEAR(expected_loss(p, arch, m), expected_loss(pb, arch, m), 1e-13);
}

TEST(Profile, EqualsLossAtAssembledFamily) {
    std::mt19937_64 rng(19);
    for (int t = 0; t < 20; ++t) {
        const int D = 1 + t % 4;
        Architecture arch = fixtures::homogeneous(D, 3, 2 + t % 3, 0.5, 0.05);
        if (t % 2) {
            for (int k = 0; k < D; ++k) {
                arch.widths[k] = 2 + (k + t) % 3;
                arch.noise_vars[k] = 0.2 + 0.3 * k;
                arch.gammas[k] = 0.03 + 0.02 * k;
            }
            arch.gamma_u = 0.04;
        }
        const auto m = fixtures::random_moments(3, rng);
        for (double b : {0.0, 0.05, 0.3, 0.9, 1.7}) {
            const double lp = scalar_loss_profile(b, arch, m);
            const double la = assemble(b, arch, m).loss;
            EXPECT_NEAR(lp, la, 1e-9 * std::max(1.0, std::abs(la))) << "depth " << D << " b " << b;
        }
    }
}

TEST(Profile, EvenInB) {
    std::mt19937_64 rng(20);
    const auto m = fixtures::random_moments(3, rng);
    for (int D : {1, 2, 3}) {
        const auto h = HomogeneousArchitecture{D, 3, 2, 0.5, 0.05};
        for (double b : {0.1, 0.4, 1.3}) EXPECT_DOUBLE_EQ(scalar_loss_profile(b, h, m), scalar_loss_profile(-b, h, m));
    }
}

TEST(Profile, ZeroGivesSecondMoment) {
    std::mt19937_64 rng(21);
    const auto m = fixtures::random_moments(3, rng);
    EXPECT_DOUBLE_EQ(scalar_loss_profile(0.0, HomogeneousArchitecture{2, 3, 2, 0.5, 0.05}, m), m.ey2);
}

TEST(Profile, GridMinimumSitsAtClosedForm) {
    const auto arch = fixtures::two_layer(1, 1, 1.0, 0.1, 0.1);
    const auto m = scalar_moments(1.0, 1.0, 1.0);
    const double bstar = *closed_form_b_isotropic(arch, m);
    const int n = 100000;
    const double hi = 2.0, step = hi / (n - 1);
    double best_b = 0.0, best = scalar_loss_profile(0.0, arch, m);
    for (int i = 1; i < n; ++i) {
        const double b = i * step;
        const double l = scalar_loss_profile(b, arch, m);
        if (l < best) {
            best = l;
            best_b = b;
        }
    }
    EXPECT_NEAR(best_b, bstar, step);
}
