#include "dln/regimes.hpp"

#include "dln/errors.hpp"
#include "dln/solution_family.hpp"

#include <cmath>
#include <limits>

namespace dln {

std::string to_string(RegimeLabel l) {
    switch (l) {
        case RegimeLabel::trivial_global: return "trivial_global";
        case RegimeLabel::nontrivial_global: return "nontrivial_global";
        case RegimeLabel::bad_minimum_at_zero_with_nontrivial_global: return "bad_minimum_at_zero_with_nontrivial_global";
        case RegimeLabel::nontrivial_exists_trivial_global: return "nontrivial_exists_trivial_global";
        case RegimeLabel::indeterminate: return "indeterminate";
    }
    return "indeterminate";
}

double existence_functional(int depth, int width, double noise_var, double signal_norm, double a) {
    const double D = depth, d0 = width, e = signal_norm;
    const double inner = (D - 1.0) * e / (2.0 * D * d0 * std::pow(noise_var + d0, D) * a);
    return (D + 1.0) / (2.0 * D) * e * std::pow(d0, D - 1.0) * std::pow(inner, (D - 1.0) / (D + 1.0));
}

double global_min_threshold(double depth, int width, double noise_var, double gamma, double a_max) {
    const double D = depth, d0 = width;
    const double p = (D - 1.0) / D;
    return std::pow(gamma, (D + 1.0) / D) * D * D * std::pow(noise_var + d0, D - 1.0) * std::pow(a_max, p) /
           (std::pow(d0, D - 1.0) * std::pow(D - 1.0, p));
}

RegimeReport classify(const Architecture& arch, const DataMoments& m, bool use_solver) {
    validate(arch);
    validate(m);
    RegimeReport rep;
    rep.limit_case = arch.limit_case();
    rep.loss_trivial = m.ey2;
    if (rep.limit_case) rep.notes.push_back("limit case: zero noise variance");
    const int D = arch.depth();
    const double e = m.exy.norm();

    const SolutionFamily fam(arch, m);
    const RootBracket br = fam.bracket();
    if (!br.empty) rep.b_bracket = std::make_pair(br.lo, br.hi);

    if (D == 1) {
        rep.two_layer_threshold = e * e - arch.gamma_u * arch.gammas[0];
        rep.label = *rep.two_layer_threshold > 0.0 ? RegimeLabel::nontrivial_global : RegimeLabel::trivial_global;
    } else if (const auto h = as_homogeneous(arch)) {
        const SpectralData& sd = fam.spectrum();
        const double g = h->gamma;
        if (sd.a_min() > 0.0) {
            rep.nonexistence_bound = existence_functional(D, h->width, h->noise_var, e, sd.a_min()) - g;
        } else {
            rep.notes.push_back("nonexistence test not applicable: singular covariance");
        }
        rep.existence_bound = existence_functional(D, h->width, h->noise_var, e, sd.a_max()) - g;
        rep.global_min_bound = e * e - global_min_threshold(D, h->width, h->noise_var, g, sd.a_max());

        if (rep.nonexistence_bound && *rep.nonexistence_bound < 0.0)
            rep.label = RegimeLabel::trivial_global;
        else if (*rep.global_min_bound >= 0.0)
            rep.label = RegimeLabel::bad_minimum_at_zero_with_nontrivial_global;
    } else {
        rep.notes.push_back("closed-form bounds need a homogeneous architecture; solver decides");
    }

    if (!use_solver) return rep;

    const GlobalMinimum gm = global_minimum(arch, m);
    rep.loss_trivial = gm.candidates.front().loss;
    rep.degenerate = gm.degenerate;
    rep.b_star = gm.best.b;
    rep.loss_star = gm.best.loss;
    if (D >= 2 && rep.label == RegimeLabel::indeterminate) {
        rep.resolved_by_solver = true;
        if (gm.best.kind == SolutionKind::nontrivial)
            rep.label = RegimeLabel::bad_minimum_at_zero_with_nontrivial_global;
        else if (gm.candidates.size() > 1)
            rep.label = RegimeLabel::nontrivial_exists_trivial_global;
        else
            rep.label = RegimeLabel::trivial_global;
    }
    return rep;
}

HessianSummary hessian_at_origin(const Architecture& arch, const DataMoments& m) {
    validate(arch);
    if (m.dim != arch.input_dim) throw InvalidInput("moments and architecture disagree on the input dimension");
    const int D = arch.depth();
    HessianSummary hs;
    hs.note = "entries are second derivatives of the loss: 2 gamma on the diagonal";

    if (D >= 2) {
        // Every data term has degree >= 3 in the weights, so only weight decay survives.
        hs.is_diagonal = true;
        hs.diagonal_entries.resize(arch.parameter_count());
        Eigen::Index i = 0;
        for (int j = 0; j < arch.dim(D); ++j) hs.diagonal_entries(i++) = 2.0 * arch.gamma_u;
        for (int k = 1; k <= D; ++k)
            for (int j = 0; j < arch.dim(k) * arch.dim(k - 1); ++j) hs.diagonal_entries(i++) = 2.0 * arch.gammas[k - 1];
        hs.min_eigenvalue = hs.diagonal_entries.minCoeff();
        hs.definite = hs.min_eigenvalue > 1e-10;
        return hs;
    }

    // Depth one: the cross term -2 U^T W E[xy] is quadratic and couples u_j with row j of W.
    const int d1 = arch.widths[0], d = arch.input_dim;
    const int n = d1 + d1 * d;
    hs.matrix = Eigen::MatrixXd::Zero(n, n);
    for (int j = 0; j < d1; ++j) {
        hs.matrix(j, j) = 2.0 * arch.gamma_u;
        for (int i = 0; i < d; ++i) {
            const int w = d1 + j * d + i;
            hs.matrix(w, w) = 2.0 * arch.gammas[0];
            hs.matrix(j, w) = hs.matrix(w, j) = -2.0 * m.exy(i);
        }
    }
    hs.diagonal_entries = hs.matrix.diagonal();
    hs.is_diagonal = m.exy.isZero(0.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hs.matrix, Eigen::EigenvaluesOnly);
    hs.min_eigenvalue = es.eigenvalues().minCoeff();
    hs.definite = hs.min_eigenvalue > 1e-10;
    hs.restricted_second_derivative = -2.0 * d1 * m.exy.squaredNorm() / arch.gammas[0] + 2.0 * arch.gamma_u * d1;
    return hs;
}

double origin_basin_radius(const Architecture& arch, const DataMoments& m) {
    validate(arch);
    const double inf = std::numeric_limits<double>::infinity();
    const double e = m.exy.norm();
    if (arch.depth() == 1) return e * e > arch.gamma_u * arch.gammas[0] ? 0.0 : inf;
    if (e == 0.0) return inf;
    return SolutionFamily(arch, m).bracket().lo;
}

InitComparison compare_with_kaiming(const Architecture& arch, const DataMoments& m) {
    InitComparison c;
    c.basin_radius = origin_basin_radius(arch, m);
    c.kaiming_radius = 1.0 / std::sqrt(static_cast<double>(arch.widths.at(0)));
    c.trapped = c.kaiming_radius < c.basin_radius;
    return c;
}

std::vector<LearnabilityPoint> asymptotic_learnability(const HomogeneousArchitecture& base, const DataMoments& m,
                                                       const std::vector<int>& depths) {
    const double a_max = spectral(m).a_max();
    const double d0 = base.width, s2 = base.noise_var, g = base.gamma;
    std::vector<LearnabilityPoint> out;
    for (int D : depths) {
        if (D < 2) throw InvalidInput("learnability thresholds need depth >= 2");
        // existence_functional is C * |e|^{2D/(D+1)}; solve C |e|^{2D/(D+1)} = gamma for |e|^2.
        const double c = existence_functional(D, base.width, s2, 1.0, a_max);
        LearnabilityPoint p;
        p.depth = D;
        p.exact = std::pow(g / c, (D + 1.0) / D);
        p.exponential = 4.0 * d0 * d0 * a_max * g * std::exp(D * std::log((s2 + d0) / d0));
        out.push_back(p);
    }
    return out;
}

}  // namespace dln
