#include "dln/bias_solver.hpp"

#include "dln/analytic_loss.hpp"
#include "dln/errors.hpp"
#include "dln/root_finding.hpp"

#include <cmath>

namespace dln {

namespace {

struct BiasProblem {
    Eigen::MatrixXd a;  // second moment of (x, 1)
    Eigen::VectorXd e;  // (E[xy], E[y])
    Eigen::VectorXd mt; // (E[x], 1)
    double mean_y = 0.0;
    double width = 1.0;
    double noise = 0.0;
    double gamma_u = 0.0;
    double gamma_w = 0.0;

    BiasProblem(const Architecture& arch, const DataMoments& m) {
        const int d = m.dim;
        a.resize(d + 1, d + 1);
        a.topLeftCorner(d, d) = m.a0;
        a.topRightCorner(d, 1) = m.mean_x;
        a.bottomLeftCorner(1, d) = m.mean_x.transpose();
        a(d, d) = 1.0;
        e.resize(d + 1);
        e << m.exy, m.mean_y;
        mt.resize(d + 1);
        mt << m.mean_x, 1.0;
        mean_y = m.mean_y;
        width = arch.widths[0];
        noise = arch.noise_vars[0];
        gamma_u = arch.gamma_u;
        gamma_w = arch.gammas[0];
    }

    struct Eval {
        Eigen::MatrixXd k;
        Eigen::VectorXd row_over_b;  // (v, c) / b
        double p, q, denom, bias_u;
    };

    Eval at(double b) const {
        Eval ev;
        const auto n = a.rows();
        ev.k = b * b * (noise + width) * a + gamma_w * Eigen::MatrixXd::Identity(n, n);
        const Eigen::LDLT<Eigen::MatrixXd> ldlt(ev.k);
        const Eigen::VectorXd ke = ldlt.solve(e);
        const Eigen::VectorXd km = ldlt.solve(mt);
        ev.p = mt.dot(ke);
        ev.q = mt.dot(km);
        ev.denom = 1.0 + gamma_u - b * b * width * ev.q;
        ev.bias_u = (mean_y - b * b * width * ev.p) / ev.denom;
        ev.row_over_b = ke - ev.bias_u * km;
        return ev;
    }

    double residual(double b) const { return at(b).row_over_b.squaredNorm() - gamma_u / gamma_w; }
};

}  // namespace

double bias_residual(double b, const Architecture& arch, const DataMoments& m) {
    validate(arch);
    if (arch.depth() != 1) throw InvalidInput("bias closed form implemented for two-layer only; use verifier for deeper nets");
    return BiasProblem(arch, m).residual(b);
}

BiasSolution solve_two_layer_bias(const Architecture& arch, const DataMoments& m, const SolverOptions& opt) {
    validate(arch);
    validate(m);
    if (arch.depth() != 1) throw InvalidInput("bias closed form implemented for two-layer only; use verifier for deeper nets");
    const int d1 = arch.widths[0];
    const Eigen::VectorXd r = Eigen::VectorXd::Ones(d1);

    if (m.centered(0.0)) {
        const GlobalMinimum g = global_minimum(arch, m, opt);
        BiasSolution s;
        s.params = g.best.params;
        s.params.bias_ws = {Eigen::VectorXd::Zero(d1)};
        s.params.bias_u = 0.0;
        s.b = g.best.b;
        s.loss = expected_loss(s.params, arch, m);
        s.kind = g.best.kind;
        s.residual = g.best.residual;
        s.centered_shortcut = true;
        s.roots = g.solve.roots;
        const BiasProblem prob(arch, m);
        const auto ev = prob.at(s.b);
        s.ridge_matrix = ev.k;
        s.p = ev.p;
        s.q = ev.q;
        s.bias_denominator = ev.denom;
        return s;
    }

    const BiasProblem prob(arch, m);
    const auto h = [&prob](double b) { return prob.residual(b); };

    // Upper end: the bias-free bound with the augmented moments, times 10, then
    // doubled until the residual is negative over a further decade.
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(prob.a, Eigen::EigenvaluesOnly);
    const double lam_min = std::max(es.eigenvalues().minCoeff(), 0.0);
    const double sig = prob.e.norm() + prob.mt.norm() * std::abs(prob.mean_y) / prob.gamma_u;
    const double num = std::sqrt(prob.gamma_w / prob.gamma_u) * sig - prob.gamma_w;
    double b_max = (num > 0.0 && lam_min > 0.0) ? 10.0 * std::sqrt(num / ((prob.noise + prob.width) * lam_min)) : 1.0;
    for (int iter = 0;; ++iter, b_max *= 2.0) {
        if (iter > 200 || !std::isfinite(b_max)) throw NumericalFailure("bias solver: could not bracket the roots");
        bool negative = true;
        for (int j = 0; j <= 20 && negative; ++j) negative = h(b_max * std::pow(10.0, j / 20.0)) < 0.0;
        if (negative) break;
    }

    ScanOptions so;
    so.points = opt.scan_points;
    so.dedup_rel = opt.dedup_rel;
    const double lo = b_max * 1e-8;
    std::vector<double> roots = scan_roots(h, lo, b_max, so);
    const double h0 = h(0.0), hlo = h(lo);
    if (h0 != 0.0 && hlo != 0.0 && (h0 > 0.0) != (hlo > 0.0)) roots.insert(roots.begin(), bisect(h, 0.0, lo));

    auto build = [&](double b) {
        const auto ev = prob.at(b);
        BiasSolution s;
        s.b = b;
        s.ridge_matrix = ev.k;
        s.p = ev.p;
        s.q = ev.q;
        s.bias_denominator = ev.denom;
        s.params = zero_params(arch, true);
        s.params.bias_u = ev.bias_u;
        if (b > 0.0) {
            const Eigen::VectorXd row = b * ev.row_over_b;
            s.params.u = b * r;
            s.params.ws[0] = r * row.head(m.dim).transpose();
            s.params.bias_ws[0] = row(m.dim) * r;
            s.kind = SolutionKind::nontrivial;
            s.residual = b * b * h(b);
        }
        s.loss = expected_loss(s.params, arch, m);
        return s;
    };

    BiasSolution best = build(0.0);
    const double trivial = best.loss;
    for (double b : roots) {
        BiasSolution c = build(b);
        if (c.loss < best.loss && std::abs(trivial - c.loss) > opt.tie_rel * std::max(std::abs(trivial), 1e-300))
            best = std::move(c);
    }
    best.roots = std::move(roots);
    return best;
}

}  // namespace dln
