#include "commands.hpp"

#include <dln/io.hpp>

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace dlnsolve {

using dln::InvalidInput;
using dln::NumericalFailure;
using dln::io::fmt;
using nlohmann::json;

namespace {

json vec(const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

json opt(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::string opt_cell(const std::optional<double>& v) { return v ? fmt(*v) : std::string(); }

// Same direction and residual label variance, with |E[xy]| set to `signal`.
dln::DataMoments with_signal(const dln::DataMoments& m, double signal) {
    const dln::SpectralData sd = dln::spectral(m);
    auto fit_of = [&](const Eigen::VectorXd& exy) {
        const Eigen::VectorXd rot = sd.rotation * exy;
        double f = 0.0;
        for (Eigen::Index i = 0; i < rot.size(); ++i)
            if (sd.eigenvalues(i) > 1e-12 * sd.a_max()) f += rot(i) * rot(i) / sd.eigenvalues(i);
        return f;
    };
    Eigen::VectorXd dir = m.exy;
    if (dir.norm() == 0.0) dir = sd.rotation.row(0).transpose();
    dir.normalize();
    dln::DataMoments out = m;
    out.exy = signal * dir;
    out.ey2 = std::max(m.ey2 - fit_of(m.exy), 0.0) + fit_of(out.exy);
    if (out.ey2 == 0.0) out.ey2 = 1.0;
    return out;
}

dln::Architecture with_gamma(dln::Architecture a, double gamma) {
    a.gamma_u = gamma;
    for (double& g : a.gammas) g = gamma;
    return a;
}

}  // namespace

dln::DataMoments load_moments(const ModelOptions& o) {
    if (o.moments_path.empty() == o.data_path.empty())
        throw InvalidInput("pass exactly one of --moments <json> or --data <csv>");
    if (!o.moments_path.empty()) return dln::io::read_moments_json(o.moments_path);
    return dln::compute_moments(dln::io::read_dataset_csv(o.data_path));
}

dln::Architecture load_architecture(const ModelOptions& o, int input_dim) {
    dln::Architecture a;
    if (o.arch_path.empty()) {
        a = dln::HomogeneousArchitecture{o.depth.value_or(1), input_dim, o.width.value_or(o.default_width),
                                         o.noise.value_or(o.default_noise), o.gamma.value_or(o.default_gamma)}
                .expand();
    } else {
        if (o.depth) throw InvalidInput("--depth cannot be combined with --arch; edit the file instead");
        a = dln::io::read_architecture_json(o.arch_path);
        if (o.width)
            for (int& w : a.widths) w = *o.width;
        if (o.noise)
            for (double& s : a.noise_vars) s = *o.noise;
        if (o.gamma) a = with_gamma(std::move(a), *o.gamma);
    }
    if (o.gamma_u) a.gamma_u = *o.gamma_u;
    dln::validate(a);
    if (a.input_dim != input_dim)
        throw InvalidInput("architecture input_dim " + std::to_string(a.input_dim) + " does not match data dimension " +
                           std::to_string(input_dim));
    return a;
}

dln::HomogeneousArchitecture load_homogeneous(const ModelOptions& o, int input_dim) {
    const auto h = dln::as_homogeneous(load_architecture(o, input_dim));
    if (!h) throw InvalidInput("this command needs a homogeneous architecture (equal widths, noise and decay)");
    return *h;
}

std::string cmd_solve(const SolveConfig& c) {
    const dln::DataMoments m = load_moments(c.model);
    const dln::Architecture arch = load_architecture(c.model, m.dim);
    if (!c.bias) return dln::io::solution_to_json(dln::global_minimum(arch, m), arch, m) + "\n";

    const dln::BiasSolution s = dln::solve_two_layer_bias(arch, m);
    json j{{"b", s.b},
           {"kind", dln::to_string(s.kind)},
           {"loss", s.loss},
           {"residual", s.residual},
           {"bias_u", s.params.bias_u},
           {"bias_w", vec(s.params.bias_ws[0])},
           {"u", vec(s.params.u)},
           {"bias_denominator", s.bias_denominator},
           {"centered_shortcut", s.centered_shortcut},
           {"roots", s.roots}};
    json w = json::array();
    for (Eigen::Index i = 0; i < s.params.ws[0].rows(); ++i) w.push_back(vec(s.params.ws[0].row(i).transpose()));
    j["w"] = w;
    j["architecture"] = json::parse(dln::io::architecture_to_json(arch));
    j["moments"] = json::parse(dln::io::moments_to_json(m));
    return j.dump(2) + "\n";
}

std::string cmd_classify(const ClassifyConfig& c) {
    const dln::DataMoments m = load_moments(c.model);
    const dln::Architecture arch = load_architecture(c.model, m.dim);
    const dln::RegimeReport rep = dln::classify(arch, m, !c.no_solver);
    const dln::HessianSummary hs = dln::hessian_at_origin(arch, m);
    const dln::InitComparison init = dln::compare_with_kaiming(arch, m);

    json j{{"label", dln::to_string(rep.label)},
           {"two_layer_threshold", opt(rep.two_layer_threshold)},
           {"bound_13", opt(rep.nonexistence_bound)},
           {"bound_14", opt(rep.existence_bound)},
           {"bound_18", opt(rep.global_min_bound)},
           {"resolved_by_solver", rep.resolved_by_solver},
           {"limit_case", rep.limit_case},
           {"b_star", opt(rep.b_star)},
           {"loss_star", opt(rep.loss_star)},
           {"loss_trivial", rep.loss_trivial},
           {"degenerate", rep.degenerate},
           {"notes", rep.notes}};
    j["b_bracket"] = rep.b_bracket ? json{rep.b_bracket->first, rep.b_bracket->second} : json(nullptr);
    j["hessian_at_origin"] = {{"is_diagonal", hs.is_diagonal},
                              {"min_eigenvalue", hs.min_eigenvalue},
                              {"definite", hs.definite},
                              {"restricted_second_derivative", opt(hs.restricted_second_derivative)}};
    // Infinite radii (no nontrivial solution) are written as null.
    j["initialization"] = {{"basin_radius", std::isfinite(init.basin_radius) ? json(init.basin_radius) : json(nullptr)},
                           {"kaiming_radius", init.kaiming_radius},
                           {"trapped", init.trapped}};
    return j.dump(2) + "\n";
}

std::string cmd_phase_diagram(const PhaseDiagramConfig& c) {
    if (c.gamma_steps < 1) throw InvalidInput("phase diagram grid is empty (gamma-steps < 1)");
    if (!(c.gamma_min > 0.0) || !(c.gamma_max >= c.gamma_min))
        throw InvalidInput("need 0 < gamma-min <= gamma-max");
    const dln::DataMoments base = load_moments(c.model);
    const dln::HomogeneousArchitecture h = load_homogeneous(c.model, base.dim);
    std::vector<double> signals = c.signals;
    if (signals.empty()) signals.push_back(base.exy.norm());

    std::ostringstream out;
    out << "gamma,exy_norm,label,bound_13,bound_14,bound_18,b_star,loss_star,loss_trivial\n";
    for (double s : signals) {
        if (!(s >= 0.0)) throw InvalidInput("signal strengths must be nonnegative");
        const dln::DataMoments m = with_signal(base, s);
        for (int k = 0; k < c.gamma_steps; ++k) {
            // Log-spaced gamma grid.
            const double t = c.gamma_steps == 1 ? 0.0 : static_cast<double>(k) / (c.gamma_steps - 1);
            const double gamma = c.gamma_min * std::pow(c.gamma_max / c.gamma_min, t);
            const dln::Architecture arch = with_gamma(h.expand(), gamma);
            const dln::RegimeReport rep = dln::classify(arch, m, !c.no_solver);
            const std::optional<double> b18 = h.depth == 1 ? rep.two_layer_threshold : rep.global_min_bound;
            out << fmt(gamma) << ',' << fmt(s) << ',' << dln::to_string(rep.label) << ','
                << opt_cell(rep.nonexistence_bound) << ',' << opt_cell(rep.existence_bound) << ',' << opt_cell(b18)
                << ',' << opt_cell(rep.b_star) << ',' << opt_cell(rep.loss_star) << ',' << fmt(rep.loss_trivial)
                << '\n';
        }
    }
    return out.str();
}

std::string cmd_verify(const VerifyConfig& c) {
    if (c.restarts < 1) throw InvalidInput("--restarts must be at least 1");
    dln::validate(c.train);
    const dln::DataMoments m = load_moments(c.model);
    const dln::Architecture arch = load_architecture(c.model, m.dim);
    const dln::GlobalMinimum gm = dln::global_minimum(arch, m);

    std::ostringstream out;
    out << "restart,seed,initial_loss,final_loss,final_grad_norm,steps,endpoint,matched_b\n";
    double lowest = std::numeric_limits<double>::infinity();
    int matches = 0;
    for (int r = 0; r < c.restarts; ++r) {
        dln::TrainConfig tc = c.train;
        tc.seed = c.seed + static_cast<std::uint64_t>(r);
        const dln::TrainResult res = dln::gd_optimize(arch, m, tc, gm);
        lowest = std::min(lowest, res.final_loss);
        if (res.converged_to != dln::Endpoint::other) ++matches;
        out << r << ',' << tc.seed << ',' << fmt(res.initial_loss) << ',' << fmt(res.final_loss) << ','
            << fmt(res.final_grad_norm) << ',' << res.steps_taken << ',' << dln::to_string(res.converged_to) << ','
            << opt_cell(res.matched_b) << '\n';
    }
    out << "# global_loss=" << fmt(gm.best.loss) << " global_kind=" << dln::to_string(gm.best.kind)
        << " lowest_final=" << fmt(lowest) << " matched=" << matches << '/' << c.restarts << '\n';
    if (lowest < gm.best.loss - 1e-9)
        throw NumericalFailure("a gradient-descent run went below the certified minimum (" + fmt(lowest) + " < " +
                               fmt(gm.best.loss) + ")");
    return out.str();
}

std::string cmd_gen_data(const GenDataConfig& c) {
    std::ostringstream out;
    dln::io::write_dataset_csv(out, dln::generate_gaussian(c.dim, c.n, c.v_norm, c.seed, c.target));
    return out.str();
}

std::string cmd_landscape(const LandscapeConfig& c) {
    if (!c.model.moments_path.empty()) throw InvalidInput("landscape needs samples: pass --data or let it generate data");
    if (c.b_steps < 2) throw InvalidInput("--b-steps must be at least 2");
    const dln::Dataset data = c.model.data_path.empty()
                                  ? dln::generate_gaussian(c.data.dim, c.data.n, c.data.v_norm, c.data.seed, c.data.target)
                                  : dln::io::read_dataset_csv(c.model.data_path);
    const int dim = static_cast<int>(data.front().x.size());
    const dln::Architecture arch = load_architecture(c.model, dim);

    std::vector<double> grid;
    for (int i = 0; i < c.b_steps; ++i) grid.push_back(c.b_min + (c.b_max - c.b_min) * i / (c.b_steps - 1));
    std::vector<std::vector<dln::LandscapePoint>> curves;
    for (const auto& name : c.activations)
        curves.push_back(dln::nonlinear_landscape(grid, dln::parse_activation(name), arch, data));
    const dln::DataMoments m = dln::compute_moments(data);

    std::ostringstream out;
    out << "b,profile";
    for (const auto& name : c.activations) out << ',' << name;
    out << '\n';
    for (std::size_t i = 0; i < grid.size(); ++i) {
        out << fmt(grid[i]) << ',' << fmt(dln::scalar_loss_profile(grid[i], arch, m));
        for (const auto& curve : curves) out << ',' << fmt(curve[i].loss);
        out << '\n';
    }
    out << "# local_minima";
    for (std::size_t k = 0; k < curves.size(); ++k) out << ' ' << c.activations[k] << '=' << dln::count_local_minima(curves[k]);
    out << " samples=" << data.size() << " dim=" << dim << '\n';
    return out.str();
}

std::string cmd_variance(const VarianceConfig& c) {
    const dln::DataMoments m = load_moments(c.model);
    const dln::HomogeneousArchitecture h = load_homogeneous(c.model, m.dim);
    std::optional<Eigen::VectorXd> probe;
    if (!c.probe.empty()) {
        if (static_cast<int>(c.probe.size()) != m.dim) throw InvalidInput("--probe length must equal the input dimension");
        probe = Eigen::Map<const Eigen::VectorXd>(c.probe.data(), m.dim);
    }
    const dln::VarianceReport rep = dln::variance_scaling(h, m, c.sweep, c.grid, probe);
    std::ostringstream out;
    out << "swept_param,b_star,variance\n";
    for (const auto& p : rep.points) out << fmt(p.param) << ',' << fmt(p.b_star) << ',' << fmt(p.variance) << '\n';
    out << "# sweep=" << dln::to_string(rep.sweep) << " fitted_slope=" << fmt(rep.fitted_slope) << '\n';
    return out.str();
}

std::string cmd_figure3(const dln::Figure3Config& c) {
    std::ostringstream out;
    out << "v_norm,exy_norm,ey2,loss_tanh,loss_relu,loss_regressor\n";
    for (const auto& r : dln::figure3_experiment(c))
        out << fmt(r.v_norm) << ',' << fmt(r.exy_norm) << ',' << fmt(r.ey2) << ',' << fmt(r.loss_tanh) << ','
            << fmt(r.loss_relu) << ',' << fmt(r.loss_regressor) << '\n';
    return out.str();
}

}  // namespace dlnsolve
