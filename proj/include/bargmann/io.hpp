#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bargmann/canonical.hpp"
#include "bargmann/core_space.hpp"
#include "bargmann/interpolation.hpp"
#include "bargmann/pointsets.hpp"
#include "bargmann/sampling.hpp"

namespace bargmann::io {

/// %.17g
std::string format_double(double v);

std::string fock_function_json(const FockFunction& f);
FockFunction fock_function_from_json(std::string_view text);

/// Header "x,y" or "x,y,m,n".
std::string point_set_csv(const PointSet& gamma);
/// The window defaults to the largest modulus present.
PointSet point_set_from_csv(std::string_view text, std::optional<double> window = std::nullopt);
std::string point_set_json(const PointSet& gamma);

std::string density_report_json(const DensityReport& r);
std::string frame_estimate_json(const FrameEstimate& e);
std::string growth_fit_json(const GrowthBoundFit& fit);
std::string norm_growth_json(const NormGrowth& g);

/// {"alpha", "lattice_spacing", "nodes": [[x,y,m,n],...], "data": [[re,im],...]}.
/// data is aligned with nodes; a missing "data" key means all zeros.
std::string problem_json(const InterpolationProblem& p);
InterpolationProblem problem_from_json(std::string_view text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace bargmann::io
