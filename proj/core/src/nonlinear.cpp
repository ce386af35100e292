#include "dln/nonlinear.hpp"

#include "dln/errors.hpp"
#include "dln/solution_family.hpp"
#include "dln/synthetic.hpp"

#include <cmath>
#include <random>

namespace dln {

namespace {

double apply(Activation a, double z) {
    switch (a) {
        case Activation::linear: return z;
        case Activation::relu: return z > 0.0 ? z : 0.0;
        case Activation::tanh: return std::tanh(z);
        case Activation::swish: return z / (1.0 + std::exp(-z));
    }
    return z;
}

Eigen::ArrayXXd activate(Activation a, const Eigen::ArrayXXd& z) {
    switch (a) {
        case Activation::linear: return z;
        case Activation::relu: return z.max(0.0);
        case Activation::tanh: return z.tanh();
        case Activation::swish: return z / (1.0 + (-z).exp());
    }
    return z;
}

Eigen::ArrayXXd derivative(Activation a, const Eigen::ArrayXXd& z, const Eigen::ArrayXXd& h) {
    switch (a) {
        case Activation::linear: return Eigen::ArrayXXd::Ones(z.rows(), z.cols());
        case Activation::relu: return (z > 0.0).cast<double>();
        case Activation::tanh: return 1.0 - h.square();
        case Activation::swish: {
            const Eigen::ArrayXXd s = 1.0 / (1.0 + (-z).exp());
            return s + z * s * (1.0 - s);
        }
    }
    return z;
}

// Two hidden layers with biases, trained by full-batch gradient descent.
class SmallMlp {
public:
    SmallMlp(int dim, int width, Activation act, std::mt19937_64& rng) : act_(act) {
        w1_ = init(width, dim, rng);
        w2_ = init(width, width, rng);
        u_ = init(1, width, rng).row(0).transpose();
        b1_ = Eigen::VectorXd::Zero(width);
        b2_ = Eigen::VectorXd::Zero(width);
    }

    double train(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, double gamma, double lr, int steps) {
        const double n = static_cast<double>(x.rows());
        double mse = 0.0;
        for (int s = 0; s <= steps; ++s) {
            const Eigen::ArrayXXd z1 = ((x * w1_.transpose()).rowwise() + b1_.transpose()).array();
            const Eigen::ArrayXXd h1 = activate(act_, z1);
            const Eigen::ArrayXXd z2 = ((h1.matrix() * w2_.transpose()).rowwise() + b2_.transpose()).array();
            const Eigen::ArrayXXd h2 = activate(act_, z2);
            const Eigen::VectorXd f = (h2.matrix() * u_).array() + bu_;
            const Eigen::VectorXd r = f - y;
            mse = r.squaredNorm() / n;
            if (!std::isfinite(mse)) throw NumericalFailure("figure3: training diverged; try a smaller learning rate");
            if (s == steps) break;

            const Eigen::VectorXd g = 2.0 / n * r;
            const Eigen::VectorXd gu = h2.matrix().transpose() * g + 2.0 * gamma * u_;
            const double gbu = g.sum() + 2.0 * gamma * bu_;
            const Eigen::MatrixXd dz2 = ((g * u_.transpose()).array() * derivative(act_, z2, h2)).matrix();
            const Eigen::MatrixXd gw2 = dz2.transpose() * h1.matrix() + 2.0 * gamma * w2_;
            const Eigen::VectorXd gb2 = dz2.colwise().sum().transpose() + 2.0 * gamma * b2_;
            const Eigen::MatrixXd dz1 = ((dz2 * w2_).array() * derivative(act_, z1, h1)).matrix();
            const Eigen::MatrixXd gw1 = dz1.transpose() * x + 2.0 * gamma * w1_;
            const Eigen::VectorXd gb1 = dz1.colwise().sum().transpose() + 2.0 * gamma * b1_;

            u_ -= lr * gu;
            bu_ -= lr * gbu;
            w2_ -= lr * gw2;
            b2_ -= lr * gb2;
            w1_ -= lr * gw1;
            b1_ -= lr * gb1;
        }
        return mse;
    }

private:
    static Eigen::MatrixXd init(int rows, int fan_in, std::mt19937_64& rng) {
        const double lim = std::sqrt(3.0 / fan_in);
        std::uniform_real_distribution<double> unif(-lim, lim);
        Eigen::MatrixXd w(rows, fan_in);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < fan_in; ++j) w(i, j) = unif(rng);
        return w;
    }

    Activation act_;
    Eigen::MatrixXd w1_, w2_;
    Eigen::VectorXd b1_, b2_, u_;
    double bu_ = 0.0;
};

}  // namespace

std::string to_string(Activation a) {
    switch (a) {
        case Activation::linear: return "linear";
        case Activation::relu: return "relu";
        case Activation::tanh: return "tanh";
        case Activation::swish: return "swish";
    }
    return "linear";
}

Activation parse_activation(const std::string& name) {
    if (name == "linear") return Activation::linear;
    if (name == "relu") return Activation::relu;
    if (name == "tanh") return Activation::tanh;
    if (name == "swish") return Activation::swish;
    throw InvalidInput("unknown activation '" + name + "' (expected linear, relu, tanh or swish)");
}

std::vector<LandscapePoint> nonlinear_landscape(const std::vector<double>& b_grid, Activation act,
                                                const Architecture& arch, const Dataset& data) {
    validate(arch);
    if (arch.depth() != 1) throw InvalidInput("nonlinear landscape is defined for depth 1");
    const DataMoments m = compute_moments(data);
    const SolutionFamily fam(arch, m);
    const double d1 = arch.widths[0], s2 = arch.noise_vars[0];
    const double n = static_cast<double>(data.size());

    std::vector<LandscapePoint> out;
    out.reserve(b_grid.size());
    for (double b : b_grid) {
        const Eigen::VectorXd v = fam.first_layer(b);
        // All hidden units share the pre-activation v . x since r_j^2 = 1.
        double data_term = 0.0;
        for (const auto& s : data) {
            const double h = apply(act, v.dot(s.x));
            const double f = d1 * b * h;
            data_term += (s.y - f) * (s.y - f) + d1 * s2 * b * b * h * h;
        }
        const double reg = arch.gamma_u * d1 * b * b + arch.gammas[0] * d1 * v.squaredNorm();
        out.push_back({b, data_term / n + reg});
    }
    return out;
}

int count_local_minima(const std::vector<LandscapePoint>& curve) {
    int count = 0;
    const std::size_t n = curve.size();
    std::size_t i = 1;
    while (i + 1 < n) {
        if (curve[i].loss < curve[i - 1].loss) {
            std::size_t j = i;
            while (j + 1 < n && curve[j + 1].loss == curve[i].loss) ++j;
            if (j + 1 < n && curve[j + 1].loss > curve[j].loss) ++count;
            i = j + 1;
        } else {
            ++i;
        }
    }
    return count;
}

std::vector<Figure3Row> figure3_experiment(const Figure3Config& cfg) {
    if (cfg.signal_grid.empty()) throw InvalidInput("figure3: empty signal grid");
    if (cfg.dim < 1 || cfg.n < 1 || cfg.width < 1 || cfg.steps < 0) throw InvalidInput("figure3: invalid sizes");
    std::vector<Figure3Row> rows;
    for (std::size_t gi = 0; gi < cfg.signal_grid.size(); ++gi) {
        const Dataset data = generate_gaussian(cfg.dim, cfg.n, cfg.signal_grid[gi], cfg.seed);
        const DataMoments m = compute_moments(data);
        Eigen::MatrixXd x(cfg.n, cfg.dim);
        Eigen::VectorXd y(cfg.n);
        for (int i = 0; i < cfg.n; ++i) {
            x.row(i) = data[i].x.transpose();
            y(i) = data[i].y;
        }

        Figure3Row row;
        row.v_norm = cfg.signal_grid[gi];
        row.exy_norm = m.exy.norm();
        row.ey2 = m.ey2;

        // Same initial weights for every grid point and both activations.
        std::mt19937_64 rng_t(cfg.seed + 1), rng_r(cfg.seed + 1);
        SmallMlp tanh_net(cfg.dim, cfg.width, Activation::tanh, rng_t);
        row.loss_tanh = tanh_net.train(x, y, cfg.gamma, cfg.learning_rate, cfg.steps);
        SmallMlp relu_net(cfg.dim, cfg.width, Activation::relu, rng_r);
        row.loss_relu = relu_net.train(x, y, cfg.gamma, cfg.learning_rate, cfg.steps);

        // Ridge regressor without hidden layers, same weight decay.
        const Eigen::VectorXd w =
            (m.a0 + cfg.gamma * Eigen::MatrixXd::Identity(cfg.dim, cfg.dim)).ldlt().solve(m.exy);
        row.loss_regressor = (y - x * w).squaredNorm() / cfg.n;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace dln
