#include "dln/moments.hpp"

#include "dln/errors.hpp"

#include <cmath>
#include <string>

namespace dln {

bool DataMoments::centered(double tol) const {
    const double mx = mean_x.size() == 0 ? 0.0 : mean_x.cwiseAbs().maxCoeff();
    return mx <= tol && std::abs(mean_y) <= tol;
}

Eigen::MatrixXd SpectralData::reconstruct() const {
    return rotation.transpose() * eigenvalues.asDiagonal() * rotation;
}

void validate(const DataMoments& m) {
    if (m.dim < 1) throw InvalidInput("moments: dim must be positive");
    if (m.a0.rows() != m.dim || m.a0.cols() != m.dim)
        throw InvalidInput("moments: a0 must be " + std::to_string(m.dim) + "x" + std::to_string(m.dim));
    if (m.exy.size() != m.dim) throw InvalidInput("moments: exy must have length dim");
    if (m.mean_x.size() != m.dim) throw InvalidInput("moments: mean_x must have length dim");
    if (!m.a0.allFinite() || !m.exy.allFinite() || !m.mean_x.allFinite() || !std::isfinite(m.ey2) ||
        !std::isfinite(m.mean_y))
        throw InvalidInput("moments: non-finite entries");
    if (m.ey2 < 0.0) throw InvalidInput("moments: ey2 must be nonnegative");

    const double scale = std::max(1.0, m.a0.cwiseAbs().maxCoeff());
    if ((m.a0 - m.a0.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw InvalidInput("moments: a0 is not symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.a0, Eigen::EigenvaluesOnly);
    const double top = es.eigenvalues().maxCoeff();
    if (es.eigenvalues().minCoeff() < -1e-12 * std::max(top, 0.0) - 1e-300)
        throw InvalidInput("moments: a0 is not positive semidefinite");
}

DataMoments make_moments(Eigen::MatrixXd a0, Eigen::VectorXd exy, double ey2) {
    DataMoments m;
    m.dim = static_cast<int>(exy.size());
    m.a0 = std::move(a0);
    m.exy = std::move(exy);
    m.ey2 = ey2;
    m.mean_x = Eigen::VectorXd::Zero(m.dim);
    validate(m);
    return m;
}

DataMoments compute_moments(const Dataset& data) {
    if (data.empty()) throw InvalidInput("no data");
    const auto d = data.front().x.size();
    if (d < 1) throw InvalidInput("row 0 has an empty feature vector");

    DataMoments m;
    m.dim = static_cast<int>(d);
    m.a0 = Eigen::MatrixXd::Zero(d, d);
    m.exy = Eigen::VectorXd::Zero(d);
    m.mean_x = Eigen::VectorXd::Zero(d);
    for (std::size_t i = 0; i < data.size(); ++i) {
        const auto& s = data[i];
        if (s.x.size() != d)
            throw InvalidInput("dimension mismatch at row " + std::to_string(i) + ": expected " +
                               std::to_string(d) + " features, got " + std::to_string(s.x.size()));
        m.a0.selfadjointView<Eigen::Lower>().rankUpdate(s.x);
        m.exy += s.y * s.x;
        m.ey2 += s.y * s.y;
        m.mean_x += s.x;
        m.mean_y += s.y;
    }
    const double n = static_cast<double>(data.size());
    m.a0 = m.a0.selfadjointView<Eigen::Lower>();
    m.a0 /= n;
    m.a0 = 0.5 * (m.a0 + m.a0.transpose()).eval();
    m.exy /= n;
    m.ey2 /= n;
    m.mean_x /= n;
    m.mean_y /= n;
    return m;
}

Dataset center(const Dataset& data) {
    const DataMoments m = compute_moments(data);
    Dataset out;
    out.reserve(data.size());
    for (const auto& s : data) out.push_back({s.x - m.mean_x, s.y - m.mean_y});
    return out;
}

SpectralData spectral(const DataMoments& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.a0);
    if (es.info() != Eigen::Success) throw NumericalFailure("eigendecomposition of a0 failed");
    const auto d = m.a0.rows();
    SpectralData sd;
    sd.eigenvalues = es.eigenvalues().reverse();
    sd.rotation = es.eigenvectors().rowwise().reverse().transpose();
    const double top = std::max(sd.eigenvalues(0), 0.0);
    for (Eigen::Index i = 0; i < d; ++i) {
        if (sd.eigenvalues(i) < 0.0 && sd.eigenvalues(i) >= -1e-12 * top) sd.eigenvalues(i) = 0.0;
    }
    sd.exy_rotated = sd.rotation * m.exy;
    return sd;
}

WhitenResult whiten(const DataMoments& m, double sigma_x2) {
    if (!(sigma_x2 > 0.0)) throw InvalidInput("whiten: sigma_x2 must be positive");
    const SpectralData sd = spectral(m);
    if (!(sd.a_min() > 1e-12 * std::max(1.0, sd.a_max())))
        throw InvalidInput("whitening requires full-rank covariance");
    const Eigen::VectorXd inv_sqrt = sd.eigenvalues.cwiseSqrt().cwiseInverse();
    WhitenResult out;
    out.transform = std::sqrt(sigma_x2) * sd.rotation.transpose() * inv_sqrt.asDiagonal() * sd.rotation;
    out.moments = m;
    out.moments.a0 = out.transform * m.a0 * out.transform.transpose();
    out.moments.a0 = 0.5 * (out.moments.a0 + out.moments.a0.transpose()).eval();
    out.moments.exy = out.transform * m.exy;
    out.moments.mean_x = out.transform * m.mean_x;
    return out;
}

std::optional<double> isotropic_scale(const DataMoments& m, double tol) {
    const double s = m.a0.diagonal().mean();
    const Eigen::MatrixXd diff = m.a0 - s * Eigen::MatrixXd::Identity(m.dim, m.dim);
    if (diff.cwiseAbs().maxCoeff() > tol * std::max(1.0, std::abs(s))) return std::nullopt;
    return s;
}

}  // namespace dln
