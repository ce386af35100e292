#include "dln/exact_solver.hpp"

#include "dln/analytic_loss.hpp"
#include "dln/errors.hpp"
#include "dln/root_finding.hpp"

#include <cmath>

namespace dln {

std::string to_string(SolutionKind k) { return k == SolutionKind::trivial ? "trivial" : "nontrivial"; }

double residual_two_layer(double b, const Architecture& arch, const DataMoments& m) {
    validate(arch);
    if (arch.depth() != 1) throw InvalidInput("residual_two_layer requires depth 1");
    return SolutionFamily(arch, m).scaled_residual(b);
}

double residual_deep(double b, const Architecture& arch, const DataMoments& m) {
    return SolutionFamily(arch, m).residual(b);
}

SolveReport solve_roots(const Architecture& arch, const DataMoments& m, const SolverOptions& opt) {
    validate(arch);
    validate(m);
    const SolutionFamily fam(arch, m);
    const auto h = [&fam](double b) { return fam.scaled_residual(b); };
    SolveReport rep;
    rep.bracket = fam.bracket();
    if (rep.bracket.empty) return rep;

    if (arch.depth() == 1) {
        // Monotone in b: one sign change at most.
        if (!(h(0.0) > 0.0)) return rep;
        double hi = rep.bracket.hi * (1.0 + 1e-9);
        while (h(hi) > 0.0) {
            hi *= opt.guard;
            rep.guard_used = true;
            if (!std::isfinite(hi)) throw NumericalFailure("depth-one residual never changes sign");
        }
        rep.scan_lo = 0.0;
        rep.scan_hi = hi;
        const double r = bisect(h, 0.0, hi);
        if (r > 0.0) rep.roots.push_back(r);
        return rep;
    }

    rep.scan_lo = rep.bracket.lo / opt.guard;
    rep.scan_hi = rep.bracket.hi * opt.guard;
    ScanOptions so;
    so.points = opt.scan_points;
    so.dedup_rel = opt.dedup_rel;
    rep.roots = scan_roots(h, rep.scan_lo, rep.scan_hi, so);
    const double slack = 1e-12;
    for (double r : rep.roots) {
        if (r < rep.bracket.lo * (1.0 - slack) || r > rep.bracket.hi * (1.0 + slack)) rep.guard_used = true;
    }
    return rep;
}

std::vector<double> solve_b(const Architecture& arch, const DataMoments& m, const SolverOptions& opt) {
    return solve_roots(arch, m, opt).roots;
}

std::optional<double> closed_form_b_isotropic(const Architecture& arch, const DataMoments& m) {
    validate(arch);
    if (arch.depth() != 1) throw InvalidInput("isotropic closed form is available for depth 1 only");
    const auto sx2 = isotropic_scale(m);
    if (!sx2) throw InvalidInput("requires isotropic covariance; call whiten first");
    const double gw = arch.gammas[0], gu = arch.gamma_u;
    const double num = std::sqrt(gw / gu) * m.exy.norm() - gw;
    const double b2 = num / ((arch.noise_vars[0] + arch.widths[0]) * *sx2);
    if (!(b2 > 0.0)) return std::nullopt;
    return std::sqrt(b2);
}

std::vector<Eigen::VectorXd> default_signs(const Architecture& arch) {
    std::vector<Eigen::VectorXd> s;
    for (int w : arch.widths) s.push_back(Eigen::VectorXd::Ones(w));
    return s;
}

std::vector<Eigen::VectorXd> random_signs(const Architecture& arch, std::mt19937_64& rng) {
    std::bernoulli_distribution coin(0.5);
    std::vector<Eigen::VectorXd> s;
    for (int w : arch.widths) {
        Eigen::VectorXd r(w);
        for (int i = 0; i < w; ++i) r(i) = coin(rng) ? 1.0 : -1.0;
        s.push_back(std::move(r));
    }
    return s;
}

SolutionCandidate assemble(double b, const std::vector<Eigen::VectorXd>& signs, const Architecture& arch,
                           const DataMoments& m) {
    validate(arch);
    if (!(b >= 0.0) || !std::isfinite(b)) throw InvalidInput("assemble: b must be a finite nonnegative number");
    const int D = arch.depth();
    if (static_cast<int>(signs.size()) != D) throw InvalidInput("assemble: need one sign vector per hidden layer");
    for (int k = 1; k <= D; ++k) {
        const auto& r = signs[k - 1];
        if (r.size() != arch.dim(k)) throw InvalidInput("assemble: sign vector " + std::to_string(k) + " has the wrong length");
        if (((r.array().abs() - 1.0).abs() > 0.0).any()) throw InvalidInput("assemble: sign entries must be +1 or -1");
    }

    const SolutionFamily fam(arch, m);
    const FamilyScales sc = fam.scales(b);
    const Eigen::VectorXd v = fam.first_layer(b);

    SolutionCandidate c;
    c.b = b;
    c.signs = signs;
    c.kind = b == 0.0 ? SolutionKind::trivial : SolutionKind::nontrivial;
    c.params = zero_params(arch);
    c.params.u = sc.b_u * signs[D - 1];
    c.params.ws[0] = signs[0] * v.transpose();
    for (int i = 2; i <= D; ++i) c.params.ws[i - 1] = sc.inner[i - 2] * signs[i - 1] * signs[i - 2].transpose();
    if (c.kind == SolutionKind::trivial) c.params = zero_params(arch);

    c.b_layers.push_back(sc.b_u);
    for (int i = D; i >= 2; --i) c.b_layers.push_back(sc.inner[i - 2]);
    c.b_layers.push_back(v.norm() / std::sqrt(static_cast<double>(arch.input_dim)));

    c.loss = expected_loss(c.params, arch, m);
    c.residual = fam.residual(b);
    return c;
}

SolutionCandidate assemble(double b, const Architecture& arch, const DataMoments& m) {
    return assemble(b, default_signs(arch), arch, m);
}

GlobalMinimum global_minimum(const Architecture& arch, const DataMoments& m, const SolverOptions& opt) {
    GlobalMinimum g;
    g.solve = solve_roots(arch, m, opt);
    g.limit_case = arch.limit_case();
    const auto signs = default_signs(arch);
    g.candidates.push_back(assemble(0.0, signs, arch, m));
    for (double r : g.solve.roots) g.candidates.push_back(assemble(r, signs, arch, m));

    std::size_t best = 0;
    for (std::size_t i = 1; i < g.candidates.size(); ++i)
        if (g.candidates[i].loss < g.candidates[best].loss) best = i;

    const double trivial = g.candidates[0].loss;
    if (best != 0) {
        const double scale = std::max({std::abs(trivial), std::abs(g.candidates[best].loss), 1e-300});
        if (std::abs(trivial - g.candidates[best].loss) <= opt.tie_rel * scale) {
            g.degenerate = true;
            best = 0;
        }
    }
    g.best = g.candidates[best];
    return g;
}

}  // namespace dln
