#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>

using namespace dln;

TEST(Classify, DepthOneTrivialExample) {
    const auto m = fixtures::isotropic_moments(1, 1.0, Eigen::VectorXd::Ones(1), 2.0);
    const auto rep = classify(fixtures::two_layer(1, 1, 0.5, 2.0, 2.0), m);
    EXPECT_EQ(rep.label, RegimeLabel::trivial_global);
    EXPECT_DOUBLE_EQ(*rep.two_layer_threshold, -3.0);
}

TEST(Classify, DepthOneIsExact) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0.5, 1.5);
    for (int t = 0; t < 50; ++t) {
        const auto m = fixtures::random_moments(1 + t % 5, rng, u(rng));
        const double gu = u(rng) * 0.5, gw = u(rng) * 0.5;
        const auto rep = classify(fixtures::two_layer(1 + t % 5, 2, 0.3, gu, gw), m, t % 2 == 0);
        EXPECT_EQ(rep.label == RegimeLabel::nontrivial_global, m.exy.squaredNorm() > gu * gw);
        EXPECT_NE(rep.label, RegimeLabel::indeterminate);
    }
}

TEST(Classify, GlobalBoundGivesBadMinimumAtZero) {
    const auto m = fixtures::isotropic_moments(2, 1.0, Eigen::Vector2d(1, 0), 2.0);
    const auto rep = classify(fixtures::homogeneous(2, 2, 2, 1.0, 0.01), m);
    ASSERT_TRUE(rep.global_min_bound);
    EXPECT_GT(*rep.global_min_bound, 0.0);
    EXPECT_EQ(rep.label, RegimeLabel::bad_minimum_at_zero_with_nontrivial_global);
    EXPECT_FALSE(rep.resolved_by_solver);
    ASSERT_TRUE(rep.b_star);
    EXPECT_LT(scalar_loss_profile(*rep.b_star, HomogeneousArchitecture{2, 2, 2, 1.0, 0.01}, m), m.ey2 - 1e-12);
}

TEST(Classify, ThreeRegimesAcrossDecay) {
    const auto m = fixtures::isotropic_moments(2, 1.0, Eigen::Vector2d(1, 0), 2.0);
    std::set<RegimeLabel> seen;
    for (double g : {0.05, 0.316, 1.0}) seen.insert(classify(fixtures::homogeneous(2, 2, 2, 1.0, g), m).label);
    EXPECT_EQ(seen.size(), 3u);
    EXPECT_TRUE(seen.count(RegimeLabel::nontrivial_exists_trivial_global));
}

TEST(Classify, BoundsNeverContradict) {
    std::mt19937_64 rng(2);
    for (int t = 0; t < 200; ++t) {
        const int D = 2 + t % 4;
        const auto m = fixtures::random_moments(3, rng, 0.05 + 0.02 * t);
        const auto rep = classify(fixtures::homogeneous(D, 3, 2, 0.5, 0.01 + 0.002 * t), m, false);
        ASSERT_TRUE(rep.nonexistence_bound && rep.existence_bound);
        EXPECT_FALSE(*rep.nonexistence_bound < 0.0 && *rep.existence_bound >= 0.0);
        EXPECT_LE(*rep.existence_bound, *rep.nonexistence_bound + 1e-15);
    }
}

TEST(Classify, BoundsAgreeWithSolver) {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 60; ++t) {
        const int D = 2 + t % 3;
        const auto m = fixtures::random_moments(3, rng, 0.3 + 0.05 * t);
        const auto arch = fixtures::homogeneous(D, 3, 2, 0.5, 0.005 + 0.004 * t);
        const auto rep = classify(arch, m, false);
        const auto roots = solve_b(arch, m);
        if (*rep.nonexistence_bound < 0.0) EXPECT_TRUE(roots.empty());
        if (*rep.existence_bound >= 0.0) EXPECT_FALSE(roots.empty());
        if (*rep.global_min_bound >= 0.0) EXPECT_EQ(global_minimum(arch, m).best.kind, SolutionKind::nontrivial);
    }
}

TEST(Classify, IsotropicBoundsCoincide) {
    const auto m = fixtures::isotropic_moments(2, 1.5, Eigen::Vector2d(0.3, 0.4), 2.0);
    const auto rep = classify(fixtures::homogeneous(3, 2, 2, 0.5, 0.01), m, false);
    EXPECT_NEAR(*rep.existence_bound, *rep.nonexistence_bound, 1e-15);
}

TEST(Classify, DepthLimitOfGlobalThreshold) {
    for (double g : {0.01, 0.3, 2.0}) {
        EXPECT_DOUBLE_EQ(global_min_threshold(1.0, 4, 0.5, g, 3.0), g * g);
        EXPECT_NEAR(global_min_threshold(1.0 + 1e-9, 4, 0.5, g, 3.0), g * g, 1e-6 * g * g);
    }
}

TEST(Classify, NonHomogeneousNeedsSolver) {
    std::mt19937_64 rng(4);
    auto arch = fixtures::homogeneous(2, 3, 2, 0.5, 0.02);
    arch.widths[1] = 3;
    const auto m = fixtures::random_moments(3, rng, 1.0);
    EXPECT_EQ(classify(arch, m, false).label, RegimeLabel::indeterminate);
    const auto rep = classify(arch, m, true);
    EXPECT_TRUE(rep.resolved_by_solver);
    EXPECT_NE(rep.label, RegimeLabel::indeterminate);
}

TEST(Hessian, DeepOriginIsDiagonal) {
    std::mt19937_64 rng(5);
    const auto m = fixtures::random_moments(2, rng);
    const auto arch = fixtures::homogeneous(2, 2, 2, 0.5, 0.05);
    const auto hs = hessian_at_origin(arch, m);
    EXPECT_TRUE(hs.is_diagonal);
    EXPECT_TRUE(hs.definite);
    for (Eigen::Index i = 0; i < hs.diagonal_entries.size(); ++i) EXPECT_DOUBLE_EQ(hs.diagonal_entries(i), 0.1);
    const Eigen::MatrixXd fd = fixtures::numeric_hessian(zero_params(arch), arch, m);
    EXPECT_LE((fd - Eigen::MatrixXd(hs.diagonal_entries.asDiagonal())).cwiseAbs().maxCoeff(), 1e-5);
}

TEST(Hessian, DepthOneSaddle) {
    std::mt19937_64 rng(6);
    const auto m = fixtures::random_moments(3, rng, 1.0);
    const auto arch = fixtures::two_layer(3, 2, 0.5, 0.1, 0.1);
    const auto hs = hessian_at_origin(arch, m);
    EXPECT_FALSE(hs.definite);
    EXPECT_LT(hs.min_eigenvalue, 0.0);
    const double e2 = m.exy.squaredNorm();
    EXPECT_NEAR(hs.min_eigenvalue, 0.2 - 2.0 * std::sqrt(e2), 1e-12);
    EXPECT_NEAR(*hs.restricted_second_derivative, -4.0 * e2 / 0.1 + 0.4, 1e-12);
    const Eigen::MatrixXd fd = fixtures::numeric_hessian(zero_params(arch), arch, m);
    EXPECT_LE((fd - hs.matrix).cwiseAbs().maxCoeff(), 1e-5);
}

TEST(Hessian, DepthOneWithoutSignal) {
    const auto m = fixtures::isotropic_moments(2, 1.0, Eigen::Vector2d::Zero(), 1.0);
    const auto hs = hessian_at_origin(fixtures::two_layer(2, 3, 0.5, 0.1, 0.2), m);
    EXPECT_NEAR(*hs.restricted_second_derivative, 2.0 * 0.1 * 3, 1e-15);
    EXPECT_TRUE(hs.definite);
}

TEST(Basin, Examples) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(5);
    e(0) = 0.001;
    const auto weak = fixtures::isotropic_moments(5, 1.0, e, 1.0);
    const auto arch = fixtures::homogeneous(2, 5, 32, 0.5, 0.1);
    EXPECT_NEAR(origin_basin_radius(arch, weak), 3.125, 1e-12);
    const auto cmp = compare_with_kaiming(arch, weak);
    EXPECT_TRUE(cmp.trapped);
    EXPECT_NEAR(cmp.kaiming_radius, 1.0 / std::sqrt(32.0), 1e-15);

    e(0) = 0.1;
    EXPECT_NEAR(origin_basin_radius(arch, fixtures::isotropic_moments(5, 1.0, e, 1.0)), 1.0 / 32, 1e-15);

    e(0) = 0.2;
    EXPECT_EQ(origin_basin_radius(fixtures::two_layer(5, 4, 0.5, 0.1, 0.1), fixtures::isotropic_moments(5, 1.0, e, 1.0)), 0.0);
    e(0) = 0.05;
    EXPECT_TRUE(std::isinf(
        origin_basin_radius(fixtures::two_layer(5, 4, 0.5, 0.1, 0.1), fixtures::isotropic_moments(5, 1.0, e, 1.0))));
}

TEST(Learnability, GrowthRateApproachesNoiseFactor) {
    const auto m = fixtures::isotropic_moments(2, 1.0, Eigen::Vector2d(1, 0), 2.0);
    const std::vector<int> depths{2, 3, 4, 5, 6, 7, 8};
    const auto pts = asymptotic_learnability(HomogeneousArchitecture{2, 2, 2, 1.0, 1.0}, m, depths);
    const double slope = std::log(pts[6].exact / pts[5].exact);
    EXPECT_NEAR(slope, std::log(1.5), 0.1 * std::log(1.5));
    for (std::size_t i = 1; i < pts.size(); ++i) EXPECT_GT(pts[i].exact, pts[i - 1].exact);
}

TEST(Learnability, ZeroNoiseAndVanishingDecay) {
    const auto m = fixtures::isotropic_moments(2, 1.0, Eigen::Vector2d(1, 0), 2.0);
    const auto flat = asymptotic_learnability(HomogeneousArchitecture{2, 2, 2, 0.0, 0.1}, m, {2, 4, 8});
    EXPECT_DOUBLE_EQ(flat[0].exponential, flat[2].exponential);
    const auto tiny = asymptotic_learnability(HomogeneousArchitecture{2, 2, 2, 1.0, 1e-12}, m, {2, 4, 8});
    for (const auto& p : tiny) EXPECT_LT(p.exact, 1e-9);
}
