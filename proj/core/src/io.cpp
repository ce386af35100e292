#include "dln/io.hpp"

#include "dln/errors.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace dln::io {

using nlohmann::json;

namespace {

json vec_json(const Eigen::VectorXd& v) {
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
    return a;
}

json mat_json(const Eigen::MatrixXd& m) {
    json a = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) a.push_back(vec_json(m.row(i).transpose()));
    return a;
}

Eigen::VectorXd json_vec(const json& j, const std::string& key) {
    if (!j.is_array()) throw InvalidInput("'" + key + "' must be an array of numbers");
    Eigen::VectorXd v(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number()) throw InvalidInput("'" + key + "' must be an array of numbers");
        v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
    }
    return v;
}

Eigen::MatrixXd json_mat(const json& j, const std::string& key) {
    if (!j.is_array() || j.empty()) throw InvalidInput("'" + key + "' must be a nonempty array of rows");
    const std::size_t rows = j.size();
    const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
    Eigen::MatrixXd m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        const Eigen::VectorXd row = json_vec(j[r], key);
        if (static_cast<std::size_t>(row.size()) != cols) throw InvalidInput("'" + key + "' rows have unequal lengths");
        m.row(static_cast<Eigen::Index>(r)) = row.transpose();
    }
    return m;
}

json parse(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InvalidInput(std::string("malformed JSON: ") + e.what());
    }
}

const json& require(const json& j, const std::string& key) {
    if (!j.contains(key)) throw InvalidInput("missing key '" + key + "'");
    return j.at(key);
}

template <class T>
T get(const json& j, const std::string& key) {
    try {
        return require(j, key).get<T>();
    } catch (const json::exception&) {
        throw InvalidInput("key '" + key + "' has the wrong type");
    }
}

json architecture_json(const Architecture& a) {
    return json{{"input_dim", a.input_dim},
                {"widths", a.widths},
                {"noise_vars", a.noise_vars},
                {"gamma_u", a.gamma_u},
                {"gammas", a.gammas}};
}

json moments_json(const DataMoments& m) {
    return json{{"dim", m.dim},        {"a0", mat_json(m.a0)},         {"exy", vec_json(m.exy)},
                {"ey2", m.ey2},        {"mean_x", vec_json(m.mean_x)}, {"mean_y", m.mean_y}};
}

json candidate_json(const SolutionCandidate& c) {
    json ws = json::array();
    for (const auto& w : c.params.ws) ws.push_back(mat_json(w));
    json signs = json::array();
    for (const auto& s : c.signs) signs.push_back(vec_json(s));
    return json{{"b", c.b},
                {"b_layers", c.b_layers},
                {"loss", c.loss},
                {"kind", to_string(c.kind)},
                {"residual", c.residual},
                {"signs", signs},
                {"weights", {{"u", vec_json(c.params.u)}, {"ws", ws}}}};
}

}  // namespace

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Dataset read_dataset_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw InvalidInput("dataset CSV is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> header;
    {
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) header.push_back(cell);
    }
    if (header.size() < 2 || header.back() != "y") throw InvalidInput("dataset CSV header must be x_1,...,x_d,y");
    const std::size_t d = header.size() - 1;
    for (std::size_t i = 0; i < d; ++i)
        if (header[i] != "x_" + std::to_string(i + 1)) throw InvalidInput("dataset CSV header must be x_1,...,x_d,y");

    Dataset data;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<double> vals;
        while (std::getline(ss, cell, ',')) {
            try {
                std::size_t used = 0;
                vals.push_back(std::stod(cell, &used));
                if (used != cell.size()) throw std::invalid_argument(cell);
            } catch (const std::exception&) {
                throw InvalidInput("dataset CSV line " + std::to_string(lineno) + ": '" + cell + "' is not a number");
            }
        }
        if (vals.size() != d + 1)
            throw InvalidInput("dataset CSV line " + std::to_string(lineno) + " has " + std::to_string(vals.size()) +
                               " fields, expected " + std::to_string(d + 1));
        Sample s;
        s.x = Eigen::Map<const Eigen::VectorXd>(vals.data(), static_cast<Eigen::Index>(d));
        s.y = vals.back();
        data.push_back(std::move(s));
    }
    return data;
}

Dataset read_dataset_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open dataset '" + path + "'");
    return read_dataset_csv(in);
}

void write_dataset_csv(std::ostream& out, const Dataset& data) {
    if (data.empty()) throw InvalidInput("no data");
    const auto d = data.front().x.size();
    for (Eigen::Index i = 0; i < d; ++i) out << "x_" << (i + 1) << ',';
    out << "y\n";
    for (const auto& s : data) {
        for (Eigen::Index i = 0; i < d; ++i) out << fmt(s.x(i)) << ',';
        out << fmt(s.y) << '\n';
    }
}

DataMoments parse_moments_json(const std::string& text) {
    json j = parse(text);
    if (j.contains("moments")) j = j.at("moments");
    DataMoments m;
    m.dim = get<int>(j, "dim");
    m.a0 = json_mat(require(j, "a0"), "a0");
    m.exy = json_vec(require(j, "exy"), "exy");
    m.ey2 = get<double>(j, "ey2");
    m.mean_x = j.contains("mean_x") ? json_vec(j.at("mean_x"), "mean_x") : Eigen::VectorXd::Zero(m.dim);
    m.mean_y = j.contains("mean_y") ? get<double>(j, "mean_y") : 0.0;
    validate(m);
    return m;
}

DataMoments read_moments_json(const std::string& path) { return parse_moments_json(read_text(path)); }

std::string moments_to_json(const DataMoments& m) { return moments_json(m).dump(2) + "\n"; }

Architecture parse_architecture_json(const std::string& text) {
    json j = parse(text);
    if (j.contains("architecture")) j = j.at("architecture");
    Architecture a;
    a.input_dim = get<int>(j, "input_dim");
    a.widths = get<std::vector<int>>(j, "widths");
    a.noise_vars = get<std::vector<double>>(j, "noise_vars");
    a.gamma_u = get<double>(j, "gamma_u");
    a.gammas = get<std::vector<double>>(j, "gammas");
    validate(a);
    return a;
}

Architecture read_architecture_json(const std::string& path) { return parse_architecture_json(read_text(path)); }

std::string architecture_to_json(const Architecture& a) { return architecture_json(a).dump(2) + "\n"; }

std::string solution_to_json(const GlobalMinimum& gm, const Architecture& arch, const DataMoments& m) {
    json j = candidate_json(gm.best);
    j["degenerate"] = gm.degenerate;
    j["limit_case"] = gm.limit_case;
    j["bracket"] = {{"lo", gm.solve.bracket.lo},
                    {"hi", gm.solve.bracket.hi},
                    {"heuristic", gm.solve.bracket.heuristic},
                    {"empty", gm.solve.bracket.empty},
                    {"scan_lo", gm.solve.scan_lo},
                    {"scan_hi", gm.solve.scan_hi},
                    {"guard_used", gm.solve.guard_used}};
    json cands = json::array();
    for (const auto& c : gm.candidates)
        cands.push_back({{"b", c.b}, {"loss", c.loss}, {"kind", to_string(c.kind)}, {"residual", c.residual}});
    j["candidates"] = cands;
    j["architecture"] = architecture_json(arch);
    j["moments"] = moments_json(m);
    return j.dump(2) + "\n";
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidInput("cannot write '" + path + "'");
    out << text;
}

}  // namespace dln::io
