#include "bargmann/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace bargmann::io {

using nlohmann::json;

namespace {

json pair(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw Error(ErrorCode::InvalidArgument, std::string(what) + ": expected [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

std::vector<Complex> complex_list(const json& j, const char* what) {
  if (!j.is_array()) throw Error(ErrorCode::InvalidArgument, std::string(what) + ": expected an array");
  std::vector<Complex> out;
  out.reserve(j.size());
  for (const auto& e : j) out.push_back(complex_from(e, what));
  return out;
}

json parse(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("malformed JSON: ") + e.what());
  }
}

double number(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number()) {
    throw Error(ErrorCode::InvalidArgument, std::string("missing numeric field \"") + key + "\"");
  }
  return j[key].get<double>();
}

json frame_row(const FrameRow& r) { return {{"N", r.N}, {"A", r.A}, {"B", r.B}}; }

double max_modulus(const std::vector<Complex>& pts) {
  double w = 0.0;
  for (const auto& z : pts) w = std::max(w, std::abs(z));
  return w;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fock_function_json(const FockFunction& f) {
  json j;
  j["alpha"] = f.alpha();
  if (f.is_monomial()) {
    j["repr"] = "monomial";
    j["coeffs"] = json::array();
    for (const auto& c : f.coefficients()) j["coeffs"].push_back(pair(c));
  } else {
    j["repr"] = "kernel";
    j["nodes"] = json::array();
    j["weights"] = json::array();
    for (const auto& z : f.nodes()) j["nodes"].push_back(pair(z));
    for (const auto& w : f.weights()) j["weights"].push_back(pair(w));
  }
  return j.dump();
}

FockFunction fock_function_from_json(std::string_view text) {
  const json j = parse(text);
  if (!j.is_object()) throw Error(ErrorCode::InvalidArgument, "function JSON must be an object");
  const FockParameter alpha(number(j, "alpha"));
  std::string repr = j.value("repr", std::string());
  if (repr.empty()) repr = j.contains("coeffs") ? "monomial" : "kernel";
  if (repr == "monomial") {
    if (!j.contains("coeffs")) throw Error(ErrorCode::InvalidArgument, "monomial function needs \"coeffs\"");
    return FockFunction::monomial(alpha, complex_list(j["coeffs"], "coeffs"));
  }
  if (repr == "kernel") {
    if (!j.contains("nodes") || !j.contains("weights")) {
      throw Error(ErrorCode::InvalidArgument, "kernel combination needs \"nodes\" and \"weights\"");
    }
    return FockFunction::kernel_combination(alpha, complex_list(j["nodes"], "nodes"),
                                            complex_list(j["weights"], "weights"));
  }
  throw Error(ErrorCode::InvalidArgument, "unknown repr \"" + repr + "\"");
}

std::string point_set_csv(const PointSet& gamma) {
  std::string out = gamma.has_index() ? "x,y,m,n\n" : "x,y\n";
  for (std::size_t k = 0; k < gamma.size(); ++k) {
    const Complex z = gamma.points()[k];
    out += format_double(z.real()) + "," + format_double(z.imag());
    if (gamma.has_index()) {
      const auto& idx = gamma.indices()[k];
      out += "," + std::to_string(idx.m) + "," + std::to_string(idx.n);
    }
    out += "\n";
  }
  return out;
}

PointSet point_set_from_csv(std::string_view text, std::optional<double> window) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::InvalidArgument, "point CSV is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  bool indexed = false;
  if (line == "x,y,m,n") {
    indexed = true;
  } else if (line != "x,y") {
    throw Error(ErrorCode::InvalidArgument, "point CSV header must be \"x,y\" or \"x,y,m,n\"");
  }
  std::vector<Complex> pts;
  std::vector<LatticeIndex> idx;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != (indexed ? 4u : 2u)) {
      throw Error(ErrorCode::InvalidArgument, "point CSV row " + std::to_string(row) + " has the wrong column count");
    }
    try {
      const double x = std::stod(cells[0]);
      const double y = std::stod(cells[1]);
      pts.emplace_back(x, y);
      if (indexed) idx.push_back({std::stoll(cells[2]), std::stoll(cells[3])});
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::InvalidArgument, "point CSV row " + std::to_string(row) + " is not numeric");
    }
  }
  const double w = window.value_or(max_modulus(pts));
  if (indexed) return PointSet(std::move(pts), w, std::move(idx));
  return PointSet(std::move(pts), w);
}

std::string point_set_json(const PointSet& gamma) {
  json j;
  j["window_radius"] = gamma.window_radius();
  j["points"] = json::array();
  for (const auto& z : gamma.points()) j["points"].push_back(pair(z));
  if (gamma.has_index()) {
    j["index"] = json::array();
    for (const auto& k : gamma.indices()) j["index"].push_back({k.m, k.n});
  }
  return j.dump();
}

std::string density_report_json(const DensityReport& r) {
  json rows = json::array();
  for (std::size_t i = 0; i < r.radii.size(); ++i) {
    rows.push_back({{"r", r.radii[i]},
                    {"n_minus", r.n_minus[i]},
                    {"n_plus", r.n_plus[i]},
                    {"reliable", static_cast<bool>(r.reliable[i])}});
  }
  json j = {{"d_minus_estimate", r.d_minus_estimate},
            {"d_plus_estimate", r.d_plus_estimate},
            {"radii_used", r.radii_used},
            {"table", rows}};
  return j.dump();
}

std::string frame_estimate_json(const FrameEstimate& e) {
  json table = json::array();
  for (const auto& r : e.convergence_table) table.push_back(frame_row(r));
  json j = {{"A", e.A},
            {"B", e.B},
            {"degree", e.degree},
            {"effective_radius", e.effective_radius},
            {"window_radius", e.window_radius},
            {"reliable", e.reliable},
            {"convergence_table", table}};
  return j.dump();
}

std::string growth_fit_json(const GrowthBoundFit& fit) {
  json j = {{"c", fit.c},
            {"C1", fit.C1},
            {"C2", fit.C2},
            {"grid_radius", fit.grid_radius},
            {"grid_points", fit.grid_points},
            {"violations", fit.violations}};
  return j.dump();
}

std::string norm_growth_json(const NormGrowth& g) {
  json j = {{"degree", g.degree}, {"data_l2", g.data_l2}, {"norm2", g.norm2}, {"applicable", g.applicable}};
  // NaN has no JSON spelling
  j["ratio"] = g.applicable ? json(g.ratio) : json(nullptr);
  return j.dump();
}

std::string problem_json(const InterpolationProblem& p) {
  json j;
  j["alpha"] = p.alpha.value();
  j["lattice_spacing"] = p.lattice.spacing();
  j["nodes"] = json::array();
  j["data"] = json::array();
  const auto& idx = p.gamma.indices();
  for (std::size_t k = 0; k < p.gamma.size(); ++k) {
    const Complex z = p.gamma.points()[k];
    j["nodes"].push_back({z.real(), z.imag(), idx[k].m, idx[k].n});
    const auto it = p.data.find(idx[k]);
    j["data"].push_back(pair(it == p.data.end() ? Complex(0.0, 0.0) : it->second));
  }
  return j.dump();
}

InterpolationProblem problem_from_json(std::string_view text) {
  const json j = parse(text);
  if (!j.is_object()) throw Error(ErrorCode::InvalidArgument, "problem JSON must be an object");
  const FockParameter alpha(number(j, "alpha"));
  const SquareLattice lattice(number(j, "lattice_spacing"));
  if (!j.contains("nodes") || !j["nodes"].is_array()) {
    throw Error(ErrorCode::InvalidArgument, "problem JSON needs a \"nodes\" array");
  }
  std::vector<Complex> pts;
  std::vector<LatticeIndex> idx;
  for (const auto& e : j["nodes"]) {
    if (!e.is_array() || e.size() != 4 || !e[0].is_number() || !e[1].is_number() || !e[2].is_number_integer() ||
        !e[3].is_number_integer()) {
      throw Error(ErrorCode::InvalidArgument, "nodes entries must be [x, y, m, n]");
    }
    pts.emplace_back(e[0].get<double>(), e[1].get<double>());
    idx.push_back({e[2].get<std::int64_t>(), e[3].get<std::int64_t>()});
  }
  NodeData data;
  if (j.contains("data")) {
    const auto values = complex_list(j["data"], "data");
    if (values.size() != pts.size()) {
      throw Error(ErrorCode::InvalidArgument, "\"data\" must have one entry per node");
    }
    for (std::size_t k = 0; k < values.size(); ++k) data[idx[k]] = values[k];
  }
  const double w = max_modulus(pts);
  return {PointSet(std::move(pts), w, std::move(idx)), lattice, alpha, std::move(data)};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error(ErrorCode::Io, "write failed for " + path);
}

}  // namespace bargmann::io
