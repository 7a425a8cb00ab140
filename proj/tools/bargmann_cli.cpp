// Command-line front end. Links only the C interface.

#include <bargmann/bargmann.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

struct Failure {
  int exit_code;
  std::string kind;
  std::string message;
};

[[noreturn]] void invalid(const std::string& message) { throw Failure{2, "InvalidArgument", message}; }

int exit_code_for(bf_status s) {
  switch (s) {
    case BF_OVERFLOW:
    case BF_COLLISION_AFTER_PERTURBATION:
    case BF_TRUNCATION_TOO_SMALL:
    case BF_INCONSISTENT_PROBES:
    case BF_QUADRATURE_ORDER_TOO_LOW:
    case BF_INTERNAL:
      return 3;
    default:
      return 2;
  }
}

void check(bf_status s) {
  if (s != BF_OK) throw Failure{exit_code_for(s), bf_status_name(s), bf_last_error()};
}

std::string take(char* s) {
  std::string out(s);
  bf_string_free(s);
  return out;
}

json take_json(char* s) { return json::parse(take(s)); }

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using PointSetPtr = std::unique_ptr<bf_pointset, Deleter<bf_pointset, bf_pointset_free>>;
using FunctionPtr = std::unique_ptr<bf_function, Deleter<bf_function, bf_function_free>>;
using CanonicalPtr = std::unique_ptr<bf_canonical, Deleter<bf_canonical, bf_canonical_free>>;
using ReconstructorPtr = std::unique_ptr<bf_reconstructor, Deleter<bf_reconstructor, bf_reconstructor_free>>;
using InterpolantPtr = std::unique_ptr<bf_interpolant, Deleter<bf_interpolant, bf_interpolant_free>>;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

double parse_number(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size() || !std::isfinite(v)) invalid(what + ": \"" + s + "\" is not a finite number");
    return v;
  } catch (const std::logic_error&) {
    invalid(what + ": \"" + s + "\" is not a number");
  }
}

struct Grid {
  double xmin, xmax, ymin, ymax, step;
  std::vector<std::pair<double, double>> points() const {
    std::vector<std::pair<double, double>> out;
    const auto nx = static_cast<long>(std::floor((xmax - xmin) / step + 1e-9));
    const auto ny = static_cast<long>(std::floor((ymax - ymin) / step + 1e-9));
    for (long j = 0; j <= ny; ++j) {
      for (long i = 0; i <= nx; ++i) out.emplace_back(xmin + i * step, ymin + j * step);
    }
    return out;
  }
  double max_modulus() const {
    return std::hypot(std::max(std::abs(xmin), std::abs(xmax)), std::max(std::abs(ymin), std::abs(ymax)));
  }
};

Grid parse_grid(const std::string& s) {
  const auto parts = split(s, ',');
  if (parts.size() != 5) invalid("--grid expects \"xmin,xmax,ymin,ymax,step\"");
  Grid g{parse_number(parts[0], "--grid"), parse_number(parts[1], "--grid"), parse_number(parts[2], "--grid"),
         parse_number(parts[3], "--grid"), parse_number(parts[4], "--grid")};
  if (!(g.step > 0.0)) invalid("--grid step must be positive");
  if (g.xmax < g.xmin || g.ymax < g.ymin) invalid("--grid bounds are reversed");
  if ((g.xmax - g.xmin) / g.step > 4000 || (g.ymax - g.ymin) / g.step > 4000) {
    invalid("--grid has more than 4000 steps per axis");
  }
  return g;
}

std::vector<double> parse_radii(const std::string& s) {
  const auto parts = split(s, ':');
  if (parts.size() != 3) invalid("--radii expects \"start:stop:step\"");
  const double a = parse_number(parts[0], "--radii");
  const double b = parse_number(parts[1], "--radii");
  const double h = parse_number(parts[2], "--radii");
  if (!(a > 0.0) || !(h > 0.0) || b < a) invalid("--radii needs 0 < start <= stop and step > 0");
  if ((b - a) / h > 10000) invalid("--radii has more than 10000 entries");
  std::vector<double> out;
  const auto n = static_cast<long>(std::floor((b - a) / h + 1e-9));
  for (long i = 0; i <= n; ++i) out.push_back(a + i * h);
  return out;
}

std::vector<int> parse_ladder(const std::string& s) {
  std::vector<int> out;
  for (const auto& part : split(s, ',')) {
    const double v = parse_number(part, "--degree-ladder");
    if (v != std::floor(v) || v < 0 || v > 400) invalid("--degree-ladder entries must be integers in [0, 400]");
    out.push_back(static_cast<int>(v));
  }
  if (out.empty()) invalid("--degree-ladder is empty");
  return out;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{2, "Io", "cannot open " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Options {
  std::string command;
  double alpha = 1.0;
  bool alpha_given = false;
  std::optional<double> spacing;
  std::optional<double> density_ratio;
  std::optional<double> window;
  std::string degree_ladder = "8,16,24";
  std::string radii;
  std::optional<double> truncation_radius;
  std::string grid;
  std::uint64_t seed = 0;
  std::string out = ".";
  std::string format = "csv";
  double perturb = 0.0;
  double translate_step = 0.1;
  std::string points_file;
  std::string problem_file;
  std::string function_file;
  std::string kind = "sigma";
  std::optional<double> grid_radius;
  std::optional<double> grid_step;
};

// Output files are collected first and written only after everything succeeded.
struct Outputs {
  std::map<std::string, std::string> files;
  json results = json::object();
};

double resolve_spacing(const Options& o, json& config) {
  if (o.spacing && o.density_ratio) invalid("give either --spacing or --density-ratio, not both");
  double s = 0.0;
  if (o.spacing) {
    s = *o.spacing;
    if (!(s > 0.0) || !std::isfinite(s)) invalid("--spacing must be positive");
  } else if (o.density_ratio) {
    if (!(*o.density_ratio > 0.0) || !std::isfinite(*o.density_ratio)) invalid("--density-ratio must be positive");
    s = std::sqrt(kPi / (o.alpha * *o.density_ratio));
    config["density_ratio"] = *o.density_ratio;
  } else {
    invalid("one of --spacing or --density-ratio is required");
  }
  config["spacing"] = s;
  return s;
}

void require_positive(const std::optional<double>& v, const char* name) {
  if (!v) invalid(std::string(name) + " is required");
  if (!(*v > 0.0) || !std::isfinite(*v)) invalid(std::string(name) + " must be positive");
}

void validate_common(const Options& o, json& config) {
  if (!(o.alpha > 0.0) || !std::isfinite(o.alpha)) invalid("--alpha must be positive");
  if (o.format != "json" && o.format != "csv") invalid("--format must be json or csv");
  if (!(o.perturb >= 0.0) || !std::isfinite(o.perturb)) invalid("--perturb must be nonnegative");
  config["command"] = o.command;
  config["alpha"] = o.alpha;
  config["seed"] = o.seed;
  config["format"] = o.format;
}

PointSetPtr make_lattice(double s, double window, double perturb, std::uint64_t seed) {
  bf_pointset* raw = nullptr;
  check(bf_pointset_square_lattice(s, window, &raw));
  PointSetPtr lattice(raw);
  if (perturb == 0.0) return lattice;
  check(bf_pointset_perturb(lattice.get(), perturb, seed, &raw));
  return PointSetPtr(raw);
}

PointSetPtr load_points(const std::string& path, std::optional<double> window) {
  const std::string text = read_text(path);
  bf_pointset* raw = nullptr;
  check(bf_pointset_from_csv(text.c_str(), window.value_or(-1.0), &raw));
  return PointSetPtr(raw);
}

// Point set from --points or from the lattice flags.
PointSetPtr resolve_points(const Options& o, json& config, bool window_required) {
  if (!o.points_file.empty()) {
    if (o.window) require_positive(o.window, "--window");
    config["points"] = o.points_file;
    if (o.window) config["window"] = *o.window;
    return load_points(o.points_file, o.window);
  }
  const double s = resolve_spacing(o, config);
  if (window_required) require_positive(o.window, "--window");
  config["window"] = *o.window;
  config["perturb"] = o.perturb;
  if (o.perturb >= 0.5 * s) invalid("--perturb must be below half the spacing");
  return make_lattice(s, *o.window, o.perturb, o.seed);
}

std::string csv_table(const std::string& header, const std::vector<std::vector<std::string>>& rows) {
  std::string out = header + "\n";
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) out += (i ? "," : "") + r[i];
    out += "\n";
  }
  return out;
}

void run_lattice(const Options& o, json& config, Outputs& out) {
  auto ps = resolve_points(o, config, true);
  char* csv = nullptr;
  check(bf_pointset_to_csv(ps.get(), &csv));
  const std::string text = take(csv);
  out.results["count"] = bf_pointset_size(ps.get());
  if (bf_pointset_size(ps.get()) >= 2) {
    double q = 0.0;
    check(bf_pointset_separation(ps.get(), &q));
    out.results["separation"] = q;
  }
  if (o.format == "csv") {
    out.files["points.csv"] = text;
  } else {
    json pts = json::array();
    for (std::size_t i = 0; i < bf_pointset_size(ps.get()); ++i) {
      double x = 0.0, y = 0.0;
      int64_t m = 0, n = 0;
      check(bf_pointset_get(ps.get(), i, &x, &y, &m, &n));
      pts.push_back({x, y, m, n});
    }
    out.results["points"] = pts;
  }
}

void run_density(const Options& o, json& config, Outputs& out) {
  if (o.radii.empty()) invalid("--radii is required");
  const auto radii = parse_radii(o.radii);
  if (!(o.translate_step > 0.0)) invalid("--translate-step must be positive");
  config["radii"] = o.radii;
  config["translate_step"] = o.translate_step;
  auto ps = resolve_points(o, config, true);
  char* js = nullptr;
  check(bf_density_report(ps.get(), radii.data(), radii.size(), o.translate_step, &js));
  out.results = take_json(js);
  if (o.format == "csv") {
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : out.results["table"]) {
      rows.push_back({fmt(r["r"].get<double>()), std::to_string(r["n_minus"].get<long long>()),
                      std::to_string(r["n_plus"].get<long long>()), r["reliable"].get<bool>() ? "1" : "0"});
    }
    out.files["density.csv"] = csv_table("r,n_minus,n_plus,reliable", rows);
  }
}

void run_frame(const Options& o, json& config, Outputs& out) {
  const auto ladder = parse_ladder(o.degree_ladder);
  config["degree_ladder"] = o.degree_ladder;
  auto ps = resolve_points(o, config, true);
  const double window = o.window ? *o.window : bf_pointset_window(ps.get());
  char* js = nullptr;
  check(bf_frame_ladder(ps.get(), o.alpha, ladder.data(), ladder.size(), window, &js));
  out.results = take_json(js);
  out.results["point_count"] = bf_pointset_size(ps.get());
  if (o.format == "csv") {
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : out.results["rows"]) {
      rows.push_back({std::to_string(r["N"].get<int>()), fmt(r["A"].get<double>()), fmt(r["B"].get<double>())});
    }
    out.files["frame.csv"] = csv_table("N,A_N,B_N", rows);
  }
}

// Problem text with data sampled from f on the lattice nodes.
std::string sampled_problem(const bf_function* f, double alpha, double s, double window) {
  auto ps = make_lattice(s, window, 0.0, 0);
  json nodes = json::array();
  json data = json::array();
  for (std::size_t i = 0; i < bf_pointset_size(ps.get()); ++i) {
    double x = 0.0, y = 0.0;
    int64_t m = 0, n = 0;
    check(bf_pointset_get(ps.get(), i, &x, &y, &m, &n));
    double re = 0.0, im = 0.0;
    check(bf_function_eval(f, x, y, &re, &im));
    nodes.push_back({x, y, m, n});
    data.push_back({re, im});
  }
  return json{{"alpha", alpha}, {"lattice_spacing", s}, {"nodes", nodes}, {"data", data}}.dump();
}

std::string grid_for_truncation(const Options& o, double R) {
  if (!o.grid.empty()) return o.grid;
  const double h = std::floor(0.25 * R * 100.0) / 100.0;
  return fmt(-h) + "," + fmt(h) + "," + fmt(-h) + "," + fmt(h) + "," + fmt(h / 10.0);
}

void run_reconstruct(const Options& o, json& config, Outputs& out) {
  require_positive(o.truncation_radius, "--truncation-radius");
  const double R = *o.truncation_radius;
  config["truncation_radius"] = R;
  const std::string grid_text = grid_for_truncation(o, R);
  const Grid grid = parse_grid(grid_text);
  config["grid"] = grid_text;
  if (!(grid.max_modulus() < 0.5 * R)) invalid("--grid must lie strictly inside truncation_radius/2");

  FunctionPtr f;
  std::string problem;
  if (!o.problem_file.empty()) {
    config["problem"] = o.problem_file;
    problem = read_text(o.problem_file);
  } else if (!o.function_file.empty()) {
    config["function"] = o.function_file;
    const std::string text = read_text(o.function_file);
    bf_function* raw = nullptr;
    check(bf_function_from_json(text.c_str(), &raw));
    f.reset(raw);
    if (o.alpha_given && bf_function_alpha(f.get()) != o.alpha) {
      throw Failure{2, "AlphaMismatch", "--alpha differs from the function's alpha"};
    }
    config["alpha"] = bf_function_alpha(f.get());
    const double s = resolve_spacing(o, config);
    const double window = o.window.value_or(R + s);
    config["window"] = window;
    if (window < R) invalid("--window must cover the truncation radius");
    problem = sampled_problem(f.get(), bf_function_alpha(f.get()), s, window);
  } else {
    invalid("reconstruct needs --function or --problem");
  }

  bf_reconstructor* raw = nullptr;
  check(bf_reconstructor_from_problem(problem.c_str(), R, &raw));
  ReconstructorPtr rec(raw);
  const double alpha = config["alpha"].get<double>();
  double max_error = 0.0;
  std::vector<std::vector<std::string>> rows;
  for (const auto& [x, y] : grid.points()) {
    double re = 0.0, im = 0.0;
    check(bf_reconstructor_eval(rec.get(), x, y, &re, &im));
    const double wmag = std::hypot(re, im) * std::exp(-0.5 * alpha * (x * x + y * y));
    rows.push_back({fmt(x), fmt(y), fmt(re), fmt(im), fmt(wmag)});
    if (f) {
      double fr = 0.0, fi = 0.0;
      check(bf_function_eval(f.get(), x, y, &fr, &fi));
      max_error = std::max(max_error, std::hypot(re - fr, im - fi));
    }
  }
  out.results["grid_points"] = rows.size();
  if (f) out.results["max_error"] = max_error;
  if (o.format == "csv") out.files["reconstruct.csv"] = csv_table("x,y,re,im,weighted_mag", rows);
}

std::string random_problem(double alpha, double s, double window, std::uint64_t seed) {
  auto ps = make_lattice(s, window, 0.0, 0);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  json nodes = json::array();
  json data = json::array();
  for (std::size_t i = 0; i < bf_pointset_size(ps.get()); ++i) {
    double x = 0.0, y = 0.0;
    int64_t m = 0, n = 0;
    check(bf_pointset_get(ps.get(), i, &x, &y, &m, &n));
    double re = u(rng), im = u(rng);
    const double r = std::hypot(re, im);
    if (r > 1.0) {
      re /= r;
      im /= r;
    }
    nodes.push_back({x, y, m, n});
    data.push_back({re, im});
  }
  return json{{"alpha", alpha}, {"lattice_spacing", s}, {"nodes", nodes}, {"data", data}}.dump();
}

void run_interpolate(const Options& o, json& config, Outputs& out) {
  require_positive(o.truncation_radius, "--truncation-radius");
  const double R = *o.truncation_radius;
  config["truncation_radius"] = R;
  const std::string grid_text = grid_for_truncation(o, R);
  const Grid grid = parse_grid(grid_text);
  config["grid"] = grid_text;
  std::vector<int> ladder;
  if (o.degree_ladder != "none") ladder = parse_ladder(o.degree_ladder);
  config["degree_ladder"] = o.degree_ladder;

  std::string problem;
  if (!o.problem_file.empty()) {
    config["problem"] = o.problem_file;
    problem = read_text(o.problem_file);
  } else {
    const double s = resolve_spacing(o, config);
    const double window = o.window.value_or(R + s);
    config["window"] = window;
    problem = random_problem(o.alpha, s, window, o.seed);
  }
  double sup_a = 0.0;
  try {
    const json parsed = json::parse(problem);
    for (const auto& a : parsed.at("data")) sup_a = std::max(sup_a, std::hypot(a.at(0).get<double>(), a.at(1).get<double>()));
  } catch (const json::exception&) {
    // reported by the library with the full message
  }

  bf_interpolant* raw = nullptr;
  check(bf_interpolant_from_problem(problem.c_str(), R, &raw));
  InterpolantPtr ev(raw);
  double residual = 0.0;
  check(bf_interpolant_residual(ev.get(), &residual));
  double C = 0.0;
  check(bf_interpolant_pointwise_constant(ev.get(), grid.step, &C));
  double sup_out = 0.0;
  std::vector<std::vector<std::string>> rows;
  for (const auto& [x, y] : grid.points()) {
    double re = 0.0, im = 0.0;
    check(bf_interpolant_weighted(ev.get(), x, y, &re, &im));
    const double wmag = std::hypot(re, im);
    if (std::hypot(x, y) <= 0.5 * R) sup_out = std::max(sup_out, wmag);
    rows.push_back({fmt(x), fmt(y), fmt(re), fmt(im), fmt(wmag)});
  }
  json norms = json::array();
  for (const int N : ladder) {
    char* js = nullptr;
    check(bf_interpolant_norm_report(ev.get(), N, &js));
    norms.push_back(take_json(js));
  }
  out.results["residual"] = residual;
  out.results["pointwise_constant"] = C;
  out.results["sup_data"] = sup_a;
  out.results["sup_weighted_interior"] = sup_out;
  out.results["pointwise_bound_holds"] = sup_out <= (1.0 + sup_a) * C;
  out.results["norm_growth"] = norms;
  out.results["grid_points"] = rows.size();
  if (o.format == "csv") out.files["interpolant.csv"] = csv_table("x,y,re,im,weighted_mag", rows);
}

void run_sigma_grid(const Options& o, json& config, Outputs& out) {
  if (o.grid.empty()) invalid("--grid is required");
  const Grid grid = parse_grid(o.grid);
  config["grid"] = o.grid;
  if (o.kind != "sigma" && o.kind != "g") invalid("--kind must be sigma or g");
  config["kind"] = o.kind;
  const double s = resolve_spacing(o, config);
  CanonicalPtr g;
  if (o.kind == "g") {
    const double window = o.window.value_or(2.0 * grid.max_modulus() + 4.0 * s);
    if (!(window > 0.0)) invalid("--window must be positive");
    config["window"] = window;
    config["perturb"] = o.perturb;
    if (o.perturb >= 0.5 * s) invalid("--perturb must be below half the spacing");
    auto ps = make_lattice(s, window, o.perturb, o.seed);
    bf_canonical* raw = nullptr;
    check(bf_canonical_create(ps.get(), s, -1, &raw));
    g.reset(raw);
  }
  std::vector<std::vector<std::string>> rows;
  for (const auto& [x, y] : grid.points()) {
    double lm = 0.0, ph = 0.0;
    check(g ? bf_canonical_log_value(g.get(), x, y, &lm, &ph) : bf_sigma_log(s, x, y, &lm, &ph));
    rows.push_back({fmt(x), fmt(y), fmt(lm), fmt(ph)});
  }
  out.results["grid_points"] = rows.size();
  if (o.format == "csv") {
    out.files["sigma_grid.csv"] = csv_table("x,y,log_mag,phase", rows);
  } else {
    json values = json::array();
    for (const auto& r : rows) values.push_back(r);
    out.results["values"] = values;
  }
}

void run_growth_check(const Options& o, json& config, Outputs& out) {
  const double s = resolve_spacing(o, config);
  const double alpha = o.alpha_given ? o.alpha : kPi / (s * s);
  config["alpha"] = alpha;
  const double radius = o.grid_radius.value_or(8.0 * s);
  const double step = o.grid_step.value_or(0.125 * s);
  if (!(radius > 0.0) || !(step > 0.0)) invalid("--grid-radius and --grid-step must be positive");
  const double window = o.window.value_or(2.0 * radius);
  if (radius > 0.6 * window) invalid("--grid-radius must not exceed 0.6 * --window");
  if (o.perturb >= 0.5 * s) invalid("--perturb must be below half the spacing");
  config["grid_radius"] = radius;
  config["grid_step"] = step;
  config["window"] = window;
  config["perturb"] = o.perturb;
  auto ps = make_lattice(s, window, o.perturb, o.seed);
  bf_canonical* raw = nullptr;
  check(bf_canonical_create(ps.get(), s, -1, &raw));
  CanonicalPtr g(raw);
  char* js = nullptr;
  check(bf_canonical_growth_check(g.get(), alpha, radius, step, &js));
  out.results = take_json(js);
}

void emit(const Options& o, const json& config, const Outputs& out, double wall) {
  json report = {{"config", config},
                 {"library_version", bf_version()},
                 {"results", out.results},
                 {"wall_time_s", wall}};
  fs::create_directories(o.out);
  for (const auto& [name, text] : out.files) {
    std::ofstream f(fs::path(o.out) / name, std::ios::binary | std::ios::trunc);
    f << text;
    if (!f) throw Failure{3, "Io", "cannot write " + (fs::path(o.out) / name).string()};
  }
  std::ofstream f(fs::path(o.out) / "report.json", std::ios::binary | std::ios::trunc);
  f << report.dump(2) << "\n";
  if (!f) throw Failure{3, "Io", "cannot write report.json"};
}

void print_failure(const Failure& e) {
  std::cerr << json{{"error", e.kind}, {"message", e.message}, {"exit_code", e.exit_code}}.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sampling and interpolation numerics in the Bargmann-Fock space"};
  app.set_version_flag("--version", std::string(bf_version()));
  app.require_subcommand(1);
  Options o;

  auto add_alpha = [&](CLI::App* c) {
    c->add_option("--alpha", o.alpha, "Gaussian weight exponent")->each([&](const std::string&) { o.alpha_given = true; });
  };
  auto add_lattice = [&](CLI::App* c) {
    c->add_option("--spacing", o.spacing, "lattice spacing s");
    c->add_option("--density-ratio", o.density_ratio, "lattice density in units of alpha/pi");
    c->add_option("--window", o.window, "window radius");
    c->add_option("--perturb", o.perturb, "maximal random shift of each lattice point");
    c->add_option("--seed", o.seed, "seed for perturbations and random data");
  };
  auto add_output = [&](CLI::App* c) {
    c->add_option("--out", o.out, "output directory");
    c->add_option("--format", o.format, "json or csv");
  };

  auto* lattice = app.add_subcommand("lattice", "generate a (perturbed) square lattice");
  add_alpha(lattice);
  add_lattice(lattice);
  add_output(lattice);

  auto* density = app.add_subcommand("density", "estimate uniform densities");
  add_alpha(density);
  add_lattice(density);
  add_output(density);
  density->add_option("--points", o.points_file, "point CSV instead of a lattice");
  density->add_option("--radii", o.radii, "start:stop:step");
  density->add_option("--translate-step", o.translate_step, "translate spacing (validated; counts are exact)");

  auto* frame = app.add_subcommand("frame", "frame bound ladder");
  add_alpha(frame);
  add_lattice(frame);
  add_output(frame);
  frame->add_option("--points", o.points_file, "point CSV instead of a lattice");
  frame->add_option("--degree-ladder", o.degree_ladder, "comma separated degrees");

  auto* reconstruct = app.add_subcommand("reconstruct", "Lagrange-type reconstruction from samples");
  add_alpha(reconstruct);
  add_lattice(reconstruct);
  add_output(reconstruct);
  reconstruct->add_option("--function", o.function_file, "function JSON sampled on the lattice");
  reconstruct->add_option("--problem", o.problem_file, "problem JSON holding the samples");
  reconstruct->add_option("--truncation-radius", o.truncation_radius, "node radius of the partial sum");
  reconstruct->add_option("--grid", o.grid, "xmin,xmax,ymin,ymax,step");

  auto* interpolate = app.add_subcommand("interpolate", "explicit interpolation of weighted data");
  add_alpha(interpolate);
  add_lattice(interpolate);
  add_output(interpolate);
  interpolate->add_option("--problem", o.problem_file, "problem JSON; random data on the lattice otherwise");
  interpolate->add_option("--truncation-radius", o.truncation_radius, "node radius of the series");
  interpolate->add_option("--grid", o.grid, "xmin,xmax,ymin,ymax,step");
  interpolate->add_option("--degree-ladder", o.degree_ladder, "degrees for the norm report, or none");

  auto* sigma = app.add_subcommand("sigma-grid", "log sigma or log g on a grid");
  add_alpha(sigma);
  add_lattice(sigma);
  add_output(sigma);
  sigma->add_option("--grid", o.grid, "xmin,xmax,ymin,ymax,step");
  sigma->add_option("--kind", o.kind, "sigma or g");

  auto* growth = app.add_subcommand("growth-check", "fit the growth bounds of the canonical product");
  add_alpha(growth);
  add_lattice(growth);
  add_output(growth);
  growth->add_option("--grid-radius", o.grid_radius, "default 8 s");
  growth->add_option("--grid-step", o.grid_step, "default s/8");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_failure({2, "InvalidArgument", e.what()});
    return 2;
  }

  o.command = app.get_subcommands().front()->get_name();
  if (o.command == "interpolate" && interpolate->count("--degree-ladder") == 0) o.degree_ladder = "none";
  const auto start = std::chrono::steady_clock::now();
  try {
    json config;
    validate_common(o, config);
    Outputs out;
    if (o.command == "lattice") run_lattice(o, config, out);
    else if (o.command == "density") run_density(o, config, out);
    else if (o.command == "frame") run_frame(o, config, out);
    else if (o.command == "reconstruct") run_reconstruct(o, config, out);
    else if (o.command == "interpolate") run_interpolate(o, config, out);
    else if (o.command == "sigma-grid") run_sigma_grid(o, config, out);
    else run_growth_check(o, config, out);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    emit(o, config, out, wall);
  } catch (const Failure& e) {
    print_failure(e);
    return e.exit_code;
  } catch (const std::exception& e) {
    print_failure({3, "Internal", e.what()});
    return 3;
  }
  return 0;
}
