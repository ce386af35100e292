#pragma once

#include "dln/architecture.hpp"
#include "dln/exact_solver.hpp"
#include "dln/moments.hpp"

#include <iosfwd>
#include <string>

namespace dln::io {

// Round-trip decimal formatting ("%.17g").
std::string fmt(double v);

// CSV with header x_1,...,x_d,y.
Dataset read_dataset_csv(std::istream& in);
Dataset read_dataset_csv(const std::string& path);
void write_dataset_csv(std::ostream& out, const Dataset& data);

// JSON object with dim, a0 (row-major nested arrays), exy, ey2, mean_x, mean_y.
// Also accepts a document holding such an object under "moments".
DataMoments parse_moments_json(const std::string& text);
DataMoments read_moments_json(const std::string& path);
std::string moments_to_json(const DataMoments& m);

// JSON object with input_dim, widths, noise_vars, gamma_u, gammas. Also accepts a
// document holding such an object under "architecture".
Architecture parse_architecture_json(const std::string& text);
Architecture read_architecture_json(const std::string& path);
std::string architecture_to_json(const Architecture& a);

std::string solution_to_json(const GlobalMinimum& gm, const Architecture& arch, const DataMoments& m);

std::string read_text(const std::string& path);
void write_text(const std::string& path, const std::string& text);

}  // namespace dln::io
