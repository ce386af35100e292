// dlnsolve: exact global minima of deep linear networks with weight decay and
// stochastic neurons, plus the sweeps and checks built on them.
//
// Exit codes: 0 success, 2 invalid configuration, 3 numerical failure.

#include "commands.hpp"
#include "run_manifest.hpp"

#include <dln/io.hpp>
#include <dln/version.hpp>

#include <CLI11.hpp>

#include <functional>
#include <iostream>

namespace {

using namespace dlnsolve;

constexpr int exit_invalid = 2;
constexpr int exit_numerical = 3;

struct OutputOptions {
    std::string out;       // empty: stdout
    std::string manifest;  // empty: <out>.manifest.json when --out is set
};

void add_model_options(CLI::App* app, ModelOptions& m, bool moments = true) {
    app->add_option("--arch", m.arch_path, "architecture JSON (input_dim, widths, noise_vars, gamma_u, gammas)");
    if (moments) app->add_option("--moments", m.moments_path, "moments JSON (a0, exy, ey2)");
    app->add_option("--data", m.data_path, "dataset CSV with header x_1,...,x_d,y");
    app->add_option("--depth", m.depth, "number of hidden layers D (homogeneous net, no --arch)");
    app->add_option("--width", m.width, "hidden width for every layer");
    app->add_option("--noise", m.noise, "noise variance sigma^2 for every hidden layer");
    app->add_option("--gamma", m.gamma, "weight decay for every layer");
    app->add_option("--gamma-u", m.gamma_u, "weight decay of the output layer only");
}

void add_output_options(CLI::App* app, OutputOptions& o) {
    app->add_option("--out,-o", o.out, "output file (default stdout)");
    app->add_option("--manifest", o.manifest, "run manifest path (default <out>.manifest.json)");
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= text.size() && !text.empty()) {
        const std::size_t comma = text.find(',', pos);
        const std::string cell = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        try {
            std::size_t used = 0;
            out.push_back(std::stod(cell, &used));
            if (used != cell.size()) throw std::invalid_argument(cell);
        } catch (const std::exception&) {
            throw dln::InvalidInput("'" + cell + "' is not a number");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

// Snapshot of every option of the subcommand: given values, otherwise defaults.
nlohmann::json config_snapshot(const CLI::App* app) {
    nlohmann::json cfg = nlohmann::json::object();
    for (const CLI::Option* o : app->get_options()) {
        const std::string name = o->get_lnames().empty() ? std::string() : o->get_lnames().front();
        if (name.empty() || name == "help" || name == "out" || name == "manifest") continue;
        if (o->count() > 0) {
            const auto& r = o->results();
            cfg[name] = r.size() == 1 ? nlohmann::json(r.front()) : nlohmann::json(r);
        } else if (!o->get_default_str().empty()) {
            cfg[name] = o->get_default_str();
        }
    }
    return cfg;
}

int run(const std::string& command, const CLI::App* sub, const OutputOptions& o, std::uint64_t seed,
        const std::function<std::string()>& body) {
    RunManifest manifest;
    manifest.command = command;
    manifest.config = config_snapshot(sub);
    manifest.seed = seed;
    manifest.version = dln::artifact_version();
    manifest.started_at = utc_timestamp();

    const std::string text = body();
    if (o.out.empty()) {
        std::cout << text;
    } else {
        dln::io::write_text(o.out, text);
        manifest.outputs.push_back(o.out);
    }
    manifest.finished_at = utc_timestamp();
    const std::string manifest_path = !o.manifest.empty() ? o.manifest : o.out.empty() ? "" : o.out + ".manifest.json";
    if (!manifest_path.empty()) write_manifest(manifest_path, manifest);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact global minima of deep linear networks with weight decay and stochastic neurons"};
    app.set_version_flag("--version", std::string(dln::artifact_version()));
    app.require_subcommand(1);

    OutputOptions out;
    std::function<int()> action;

    SolveConfig solve;
    auto* s = app.add_subcommand("solve", "global minimum: b*, weights and loss as JSON");
    add_model_options(s, solve.model);
    s->add_flag("--bias", solve.bias, "depth one with hidden and output biases (non-centered data)");
    add_output_options(s, out);
    s->callback([&] { action = [&] { return run("solve", s, out, 0, [&] { return cmd_solve(solve); }); }; });

    ClassifyConfig classify;
    auto* c = app.add_subcommand("classify", "regime label, bounds, Hessian at the origin, basin radius");
    add_model_options(c, classify.model);
    c->add_flag("--no-solver", classify.no_solver, "closed-form bounds only");
    add_output_options(c, out);
    c->callback([&] { action = [&] { return run("classify", c, out, 0, [&] { return cmd_classify(classify); }); }; });

    PhaseDiagramConfig phase;
    std::string signal_list;
    auto* p = app.add_subcommand("phase-diagram", "regime labels over a gamma x signal grid (CSV)");
    add_model_options(p, phase.model);
    p->add_option("--gamma-min", phase.gamma_min, "smallest weight decay")->capture_default_str();
    p->add_option("--gamma-max", phase.gamma_max, "largest weight decay")->capture_default_str();
    p->add_option("--gamma-steps", phase.gamma_steps, "log-spaced gamma values")->capture_default_str();
    p->add_option("--signal", signal_list, "comma-separated |E[xy]| values (default: from the moments)");
    p->add_flag("--no-solver", phase.no_solver, "closed-form bounds only");
    add_output_options(p, out);
    p->callback([&] {
        action = [&] {
            phase.signals = parse_list(signal_list);
            return run("phase-diagram", p, out, 0, [&] { return cmd_phase_diagram(phase); });
        };
    });

    VerifyConfig verify;
    std::string init_name = "uniform_ball";
    auto* v = app.add_subcommand("verify", "gradient descent from random starts against the certified minimum (CSV)");
    add_model_options(v, verify.model);
    v->add_option("--restarts", verify.restarts, "number of runs")->capture_default_str();
    v->add_option("--seed", verify.seed, "seed of the first run; run r uses seed + r")->capture_default_str();
    v->add_option("--lr", verify.train.learning_rate, "learning rate")->capture_default_str();
    v->add_option("--steps", verify.train.max_steps, "maximum steps per run")->capture_default_str();
    v->add_option("--stop-grad", verify.train.stop_grad_norm, "stop when the gradient norm drops below")
        ->capture_default_str();
    v->add_option("--init", init_name, "origin, uniform_ball or kaiming_like")->capture_default_str();
    v->add_option("--radius", verify.train.init_radius, "uniform_ball radius")->capture_default_str();
    add_output_options(v, out);
    v->callback([&] {
        action = [&] {
            verify.train.init = dln::parse_init_scheme(init_name);
            return run("verify", v, out, verify.seed, [&] { return cmd_verify(verify); });
        };
    });

    GenDataConfig gen;
    std::string target = "linear";
    auto* g = app.add_subcommand("gen-data", "Gaussian inputs with y = v.x or v.tanh(x) (CSV)");
    g->add_option("--dim", gen.dim, "input dimension")->capture_default_str();
    g->add_option("--n", gen.n, "number of samples")->capture_default_str();
    g->add_option("--v-norm", gen.v_norm, "norm of the teacher vector v")->capture_default_str();
    g->add_option("--seed", gen.seed, "random seed")->capture_default_str();
    g->add_option("--target", target, "linear or tanh")->check(CLI::IsMember({"linear", "tanh"}))->capture_default_str();
    add_output_options(g, out);
    g->callback([&] {
        action = [&] {
            gen.target = target == "tanh" ? dln::TargetKind::tanh : dln::TargetKind::linear;
            return run("gen-data", g, out, gen.seed, [&] { return cmd_gen_data(gen); });
        };
    });

    LandscapeConfig land;
    land.model.default_width = 32;
    land.model.default_noise = 0.0;
    std::string act_list = "linear,relu,tanh,swish";
    std::string land_target = "linear";
    auto* l = app.add_subcommand("landscape", "depth-one loss along the solution family per activation (CSV)");
    add_model_options(l, land.model, false);
    l->add_option("--activation", act_list, "comma-separated: linear, relu, tanh, swish")->capture_default_str();
    l->add_option("--b-min", land.b_min, "grid start")->capture_default_str();
    l->add_option("--b-max", land.b_max, "grid end")->capture_default_str();
    l->add_option("--b-steps", land.b_steps, "grid points")->capture_default_str();
    l->add_option("--dim", land.data.dim, "generated input dimension (no --data)")->capture_default_str();
    l->add_option("--n", land.data.n, "generated samples (no --data)")->capture_default_str();
    l->add_option("--v-norm", land.data.v_norm, "generated teacher norm (no --data)")->capture_default_str();
    l->add_option("--seed", land.data.seed, "generation seed (no --data)")->capture_default_str();
    l->add_option("--target", land_target, "linear or tanh teacher (no --data)")
        ->check(CLI::IsMember({"linear", "tanh"}))
        ->capture_default_str();
    add_output_options(l, out);
    l->callback([&] {
        action = [&] {
            land.activations.clear();
            std::stringstream ss(act_list);
            for (std::string a; std::getline(ss, a, ',');) land.activations.push_back(a);
            land.data.target = land_target == "tanh" ? dln::TargetKind::tanh : dln::TargetKind::linear;
            return run("landscape", l, out, land.data.seed, [&] { return cmd_landscape(land); });
        };
    });

    VarianceConfig var;
    std::string sweep_name = "width", grid_list, probe_list;
    auto* va = app.add_subcommand("variance", "prediction variance at the global minimum across a sweep (CSV)");
    add_model_options(va, var.model);
    va->add_option("--sweep", sweep_name, "width, noise or depth")
        ->check(CLI::IsMember({"width", "noise", "depth"}))
        ->capture_default_str();
    va->add_option("--grid", grid_list, "comma-separated values of the swept parameter")->required();
    va->add_option("--probe", probe_list, "comma-separated input x (default: unit vector along E[xy])");
    add_output_options(va, out);
    va->callback([&] {
        action = [&] {
            var.sweep = dln::parse_sweep(sweep_name);
            var.grid = parse_list(grid_list);
            var.probe = parse_list(probe_list);
            return run("variance", va, out, 0, [&] { return cmd_variance(var); });
        };
    });

    dln::Figure3Config fig;
    std::string fig_signals = "0,0.003,0.01,0.03,0.1,0.3,1";
    auto* f = app.add_subcommand("figure3", "trained tanh/ReLU nets against ridge regression per signal strength (CSV)");
    f->add_option("--signals", fig_signals, "comma-separated |v| values")->capture_default_str();
    f->add_option("--seed", fig.seed, "random seed")->capture_default_str();
    f->add_option("--dim", fig.dim, "input dimension")->capture_default_str();
    f->add_option("--n", fig.n, "samples")->capture_default_str();
    f->add_option("--width", fig.width, "hidden width")->capture_default_str();
    f->add_option("--gamma", fig.gamma, "weight decay")->capture_default_str();
    f->add_option("--lr", fig.learning_rate, "learning rate")->capture_default_str();
    f->add_option("--steps", fig.steps, "gradient steps")->capture_default_str();
    add_output_options(f, out);
    f->callback([&] {
        action = [&] {
            fig.signal_grid = parse_list(fig_signals);
            return run("figure3", f, out, fig.seed, [&] { return cmd_figure3(fig); });
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_invalid;
    }

    try {
        return action();
    } catch (const dln::InvalidInput& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_invalid;
    } catch (const dln::NumericalFailure& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return exit_numerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
