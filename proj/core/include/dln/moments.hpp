#pragma once

#include <Eigen/Dense>

#include <optional>
#include <vector>

namespace dln {

struct Sample {
    Eigen::VectorXd x;
    double y = 0.0;
};

using Dataset = std::vector<Sample>;

// Second-moment summary of a regression task. Every closed form in the library
// consumes only these quantities, so they may be supplied without a dataset.
struct DataMoments {
    int dim = 0;
    Eigen::MatrixXd a0;      // E[x x^T]
    Eigen::VectorXd exy;     // E[x y]
    double ey2 = 0.0;        // E[y^2]
    Eigen::VectorXd mean_x;  // E[x]
    double mean_y = 0.0;     // E[y]

    bool centered(double tol = 0.0) const;
};

// Eigendecomposition of a0, eigenvalues sorted descending. Rows of `rotation`
// are eigenvectors, so rotation * a0 * rotation^T is diagonal.
struct SpectralData {
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXd rotation;
    Eigen::VectorXd exy_rotated;

    double a_max() const { return eigenvalues(0); }
    double a_min() const { return eigenvalues(eigenvalues.size() - 1); }
    Eigen::MatrixXd reconstruct() const;
};

struct WhitenResult {
    DataMoments moments;
    Eigen::MatrixXd transform;
};

// Throws InvalidInput when shapes disagree, a0 is not symmetric, has eigenvalues
// below -1e-12 * a_max, or ey2 is negative.
void validate(const DataMoments& m);

DataMoments make_moments(Eigen::MatrixXd a0, Eigen::VectorXd exy, double ey2);

// Plain 1/n averages; a0 is symmetrized by averaging with its transpose.
DataMoments compute_moments(const Dataset& data);

// Subtracts the empirical means of x and y.
Dataset center(const Dataset& data);

// Eigenvalues within -1e-12 * a_max are clamped to zero.
SpectralData spectral(const DataMoments& m);

// Maps x -> T x with T = sigma_x * a0^{-1/2}, giving a0 = sigma_x2 * I.
WhitenResult whiten(const DataMoments& m, double sigma_x2 = 1.0);

// Returns sigma_x^2 when a0 = sigma_x^2 I within `tol` (relative to the diagonal).
std::optional<double> isotropic_scale(const DataMoments& m, double tol = 1e-10);

}  // namespace dln
