#include "fixtures.hpp"

#include <gtest/gtest.h>

using namespace dln;

TEST(Moments, TwoPointDataset) {
    Dataset data{{Eigen::Vector2d(1, 0), 1.0}, {Eigen::Vector2d(0, 1), -1.0}};
    const DataMoments m = compute_moments(data);
    EXPECT_TRUE(m.a0.isApprox(0.5 * Eigen::Matrix2d::Identity()));
    EXPECT_DOUBLE_EQ(m.exy(0), 0.5);
    EXPECT_DOUBLE_EQ(m.exy(1), -0.5);
    EXPECT_DOUBLE_EQ(m.ey2, 1.0);
}

TEST(Moments, SinglePoint) {
    Dataset data{{Eigen::VectorXd::Constant(1, 2.0), 3.0}};
    const DataMoments m = compute_moments(data);
    EXPECT_DOUBLE_EQ(m.a0(0, 0), 4.0);
    EXPECT_DOUBLE_EQ(m.exy(0), 6.0);
    EXPECT_DOUBLE_EQ(m.ey2, 9.0);
}

TEST(Moments, GaussianSampleIsNearIdentity) {
    const Dataset data = generate_gaussian(5, 1000, 1.0, 7);
    const DataMoments m = compute_moments(data);
    EXPECT_LT((m.a0 - Eigen::MatrixXd::Identity(5, 5)).cwiseAbs().maxCoeff(), 0.15);
    EXPECT_NEAR(m.ey2, 1.0, 0.15);
}

TEST(Moments, ErrorsNameTheProblem) {
    EXPECT_THROW(
        {
            try {
                compute_moments({});
            } catch (const InvalidInput& e) {
                EXPECT_STREQ(e.what(), "no data");
                throw;
            }
        },
        InvalidInput);
    Dataset bad{{Eigen::Vector2d(1, 0), 1.0}, {Eigen::Vector3d(0, 1, 2), 1.0}};
    try {
        compute_moments(bad);
        FAIL();
    } catch (const InvalidInput& e) {
        EXPECT_NE(std::string(e.what()).find("row 1"), std::string::npos);
    }
}

TEST(Moments, CauchySchwarzHoldsForDatasets) {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 20; ++t) {
        Dataset data;
        for (int i = 0; i < 15; ++i) data.push_back({fixtures::random_vector(4, rng), fixtures::random_vector(1, rng)(0)});
        const DataMoments m = compute_moments(data);
        EXPECT_LE(m.exy.squaredNorm(), m.ey2 * m.a0.trace() * (1 + 1e-12));
        EXPECT_NO_THROW(validate(m));
    }
}

TEST(Moments, ValidateRejectsAsymmetricAndIndefinite) {
    Eigen::Matrix2d a;
    a << 1, 0.5, 0.4, 1;
    EXPECT_THROW(make_moments(a, Eigen::Vector2d(1, 0), 1.0), InvalidInput);
    a << 1, 0, 0, -1;
    EXPECT_THROW(make_moments(a, Eigen::Vector2d(1, 0), 1.0), InvalidInput);
    EXPECT_THROW(make_moments(Eigen::Matrix2d::Identity(), Eigen::Vector2d(1, 0), -1.0), InvalidInput);
}

TEST(Spectral, IdentityCase) {
    const auto m = fixtures::isotropic_moments(3, 1.0, Eigen::Vector3d(1, 2, 3), 20.0);
    const SpectralData sd = spectral(m);
    EXPECT_TRUE(sd.eigenvalues.isApprox(Eigen::Vector3d::Ones()));
    EXPECT_NEAR(sd.exy_rotated.norm(), m.exy.norm(), 1e-12);
}

TEST(Spectral, DiagonalCase) {
    Eigen::Matrix2d a = Eigen::Vector2d(3, 1).asDiagonal();
    const SpectralData sd = spectral(make_moments(a, Eigen::Vector2d(1, 1), 5.0));
    EXPECT_NEAR(sd.eigenvalues(0), 3.0, 1e-14);
    EXPECT_NEAR(sd.eigenvalues(1), 1.0, 1e-14);
    EXPECT_NEAR(sd.exy_rotated.norm(), std::sqrt(2.0), 1e-14);
}

TEST(Spectral, ReconstructionAndOrthogonality) {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 10; ++t) {
        const DataMoments m = fixtures::random_moments(5, rng);
        const SpectralData sd = spectral(m);
        EXPECT_LE((sd.reconstruct() - m.a0).norm(), 1e-10 * m.a0.norm());
        EXPECT_LE((sd.rotation * sd.rotation.transpose() - Eigen::MatrixXd::Identity(5, 5)).cwiseAbs().maxCoeff(), 1e-10);
        EXPECT_NEAR(sd.exy_rotated.norm(), m.exy.norm(), 1e-10 * m.exy.norm());
        for (int i = 1; i < 5; ++i) EXPECT_GE(sd.eigenvalues(i - 1), sd.eigenvalues(i));
    }
}

TEST(Spectral, ClampsRoundoffNegatives) {
    Eigen::Matrix2d a;
    a << 1, 1, 1, 1;
    const SpectralData sd = spectral(make_moments(a, Eigen::Vector2d(1, 1), 4.0));
    EXPECT_GE(sd.a_min(), 0.0);
}

TEST(Whiten, DiagonalExample) {
    Eigen::Matrix2d a = Eigen::Vector2d(4, 1).asDiagonal();
    const WhitenResult w = whiten(make_moments(a, Eigen::Vector2d(2, 1), 3.0));
    EXPECT_TRUE(w.transform.isApprox(Eigen::Vector2d(0.5, 1).asDiagonal().toDenseMatrix(), 1e-12));
    EXPECT_TRUE(w.moments.a0.isApprox(Eigen::Matrix2d::Identity(), 1e-12));
    EXPECT_TRUE(w.moments.exy.isApprox(Eigen::Vector2d(1, 1), 1e-12));
}

TEST(Whiten, IdentityIsUnchanged) {
    const auto m = fixtures::isotropic_moments(3, 1.0, Eigen::Vector3d(1, 0, 0), 2.0);
    const WhitenResult w = whiten(m);
    EXPECT_TRUE(w.transform.isApprox(Eigen::Matrix3d::Identity(), 1e-12));
    EXPECT_TRUE(w.moments.exy.isApprox(m.exy, 1e-12));
}

TEST(Whiten, RandomFullRankBecomesIsotropic) {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 10; ++t) {
        const DataMoments m = fixtures::random_moments(4, rng);
        const WhitenResult w = whiten(m, 2.5);
        EXPECT_LE((w.moments.a0 - 2.5 * Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-10);
        ASSERT_TRUE(isotropic_scale(w.moments).has_value());
    }
}

TEST(Whiten, SingularCovarianceIsRejected) {
    Eigen::Matrix2d a;
    a << 1, 1, 1, 1;
    try {
        whiten(make_moments(a, Eigen::Vector2d(1, 1), 4.0));
        FAIL();
    } catch (const InvalidInput& e) {
        EXPECT_STREQ(e.what(), "whitening requires full-rank covariance");
    }
}

TEST(Moments, CenteringZeroesMeans) {
    const Dataset data = generate_gaussian(3, 200, 1.0, 9);
    Dataset shifted;
    for (const auto& s : data) shifted.push_back({s.x.array() + 2.0, s.y + 1.5});
    const DataMoments m = compute_moments(center(shifted));
    EXPECT_LE(m.mean_x.cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LE(std::abs(m.mean_y), 1e-12);
}
