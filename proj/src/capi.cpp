#include "bargmann/bargmann.h"

#include <cmath>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "bargmann/canonical.hpp"
#include "bargmann/interpolation.hpp"
#include "bargmann/io.hpp"
#include "bargmann/pointsets.hpp"
#include "bargmann/sampling.hpp"
#include "json.hpp"

using namespace bargmann;

struct bf_pointset {
  PointSet value;
};
struct bf_function {
  FockFunction value;
};
struct bf_canonical {
  CanonicalProduct value;
};
struct bf_reconstructor {
  LagrangeReconstructor value;
};
struct bf_interpolant {
  InterpolantEvaluator value;
};

namespace {

thread_local std::string last_error;

bf_status fail(bf_status s, const char* what) {
  last_error = what;
  return s;
}

template <class F>
bf_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return BF_OK;
  } catch (const Error& e) {
    return fail(static_cast<bf_status>(static_cast<int>(e.code()) + 1), e.what());
  } catch (const std::bad_alloc&) {
    return fail(BF_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(BF_INTERNAL, e.what());
  }
}

void need(const void* p, const char* name) {
  if (p == nullptr) throw Error(ErrorCode::InvalidArgument, std::string(name) + " must not be null");
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void put_log(const LogComplex& v, double* log_mag, double* phase) {
  *log_mag = v.log_mag;
  *phase = v.phase;
}

void put(Complex v, double* re, double* im) {
  *re = v.real();
  *im = v.imag();
}

}  // namespace

extern "C" {

const char* bf_version(void) { return BARGMANN_VERSION_STRING; }

const char* bf_status_name(bf_status status) {
  if (status == BF_OK) return "Ok";
  if (status == BF_INTERNAL) return "Internal";
  if (status < BF_OK || status > BF_INTERNAL) return "Unknown";
  return to_string(static_cast<ErrorCode>(static_cast<int>(status) - 1));
}

const char* bf_last_error(void) { return last_error.c_str(); }

void bf_string_free(char* s) { std::free(s); }

bf_status bf_pointset_square_lattice(double spacing, double window_radius, bf_pointset** out) {
  return guarded([&] {
    need(out, "out");
    *out = new bf_pointset{square_lattice(spacing, window_radius)};
  });
}

bf_status bf_pointset_rectangular_lattice(double a, double b, double window_radius, bf_pointset** out) {
  return guarded([&] {
    need(out, "out");
    *out = new bf_pointset{rectangular_lattice(a, b, window_radius)};
  });
}

bf_status bf_pointset_from_arrays(const double* x, const double* y, const int64_t* m, const int64_t* n, size_t count,
                                  double window_radius, bf_pointset** out) {
  return guarded([&] {
    need(out, "out");
    if (count > 0) {
      need(x, "x");
      need(y, "y");
    }
    if ((m == nullptr) != (n == nullptr)) throw Error(ErrorCode::InvalidArgument, "give both m and n or neither");
    std::vector<Complex> pts(count);
    for (size_t k = 0; k < count; ++k) pts[k] = {x[k], y[k]};
    if (m != nullptr && count > 0) {
      std::vector<LatticeIndex> idx(count);
      for (size_t k = 0; k < count; ++k) idx[k] = {m[k], n[k]};
      *out = new bf_pointset{PointSet(std::move(pts), window_radius, std::move(idx))};
    } else {
      *out = new bf_pointset{PointSet(std::move(pts), window_radius)};
    }
  });
}

bf_status bf_pointset_from_csv(const char* text, double window_radius, bf_pointset** out) {
  return guarded([&] {
    need(text, "text");
    need(out, "out");
    std::optional<double> w;
    if (window_radius >= 0.0) w = window_radius;
    *out = new bf_pointset{io::point_set_from_csv(text, w)};
  });
}

bf_status bf_pointset_perturb(const bf_pointset* lattice, double max_shift, uint64_t seed, bf_pointset** out) {
  return guarded([&] {
    need(lattice, "lattice");
    need(out, "out");
    *out = new bf_pointset{perturb(lattice->value, max_shift, seed)};
  });
}

void bf_pointset_free(bf_pointset* ps) { delete ps; }

size_t bf_pointset_size(const bf_pointset* ps) { return ps ? ps->value.size() : 0; }

double bf_pointset_window(const bf_pointset* ps) { return ps ? ps->value.window_radius() : 0.0; }

int bf_pointset_has_index(const bf_pointset* ps) { return ps && ps->value.has_index() ? 1 : 0; }

bf_status bf_pointset_get(const bf_pointset* ps, size_t i, double* x, double* y, int64_t* m, int64_t* n) {
  return guarded([&] {
    need(ps, "ps");
    need(x, "x");
    need(y, "y");
    if (i >= ps->value.size()) throw Error(ErrorCode::InvalidArgument, "point index out of range");
    *x = ps->value.points()[i].real();
    *y = ps->value.points()[i].imag();
    if (m != nullptr || n != nullptr) {
      const auto idx = ps->value.indices()[i];
      if (m) *m = idx.m;
      if (n) *n = idx.n;
    }
  });
}

bf_status bf_pointset_to_csv(const bf_pointset* ps, char** csv) {
  return guarded([&] {
    need(ps, "ps");
    need(csv, "csv");
    *csv = dup(io::point_set_csv(ps->value));
  });
}

bf_status bf_pointset_separation(const bf_pointset* ps, double* q) {
  return guarded([&] {
    need(ps, "ps");
    need(q, "q");
    *q = separation(ps->value);
  });
}

bf_status bf_pointset_closeness(const bf_pointset* ps, double spacing, double* Q) {
  return guarded([&] {
    need(ps, "ps");
    need(Q, "Q");
    *Q = closeness(ps->value, SquareLattice(spacing)).Q;
  });
}

bf_status bf_pointset_counts(const bf_pointset* ps, double r, double translate_step, int64_t* n_minus,
                             int64_t* n_plus) {
  return guarded([&] {
    need(ps, "ps");
    need(n_minus, "n_minus");
    need(n_plus, "n_plus");
    const auto c = counts(ps->value, r, translate_step);
    *n_minus = c.n_minus;
    *n_plus = c.n_plus;
  });
}

bf_status bf_density_report(const bf_pointset* ps, const double* radii, size_t count, double translate_step,
                            char** json) {
  return guarded([&] {
    need(ps, "ps");
    need(json, "json");
    if (count > 0) need(radii, "radii");
    *json = dup(io::density_report_json(density_estimate(ps->value, {radii, radii + count}, translate_step)));
  });
}

bf_status bf_lattice_spacing_for_density(double alpha, double ratio, double* spacing) {
  return guarded([&] {
    need(spacing, "spacing");
    *spacing = SquareLattice::for_density(FockParameter(alpha), ratio).spacing();
  });
}

bf_status bf_frame_bounds(const bf_pointset* ps, double alpha, int degree, double window_radius, char** json) {
  return guarded([&] {
    need(ps, "ps");
    need(json, "json");
    *json = dup(io::frame_estimate_json(frame_bounds(ps->value, FockParameter(alpha), degree, window_radius)));
  });
}

bf_status bf_frame_ladder(const bf_pointset* ps, double alpha, const int* degrees, size_t count,
                          double window_radius, char** json) {
  return guarded([&] {
    need(ps, "ps");
    need(json, "json");
    if (count == 0) throw Error(ErrorCode::InvalidArgument, "degree ladder is empty");
    need(degrees, "degrees");
    const FockParameter a(alpha);
    int top = 0;
    for (size_t i = 0; i < count; ++i) top = std::max(top, degrees[i]);
    const FrameEstimate full = frame_bounds(ps->value, a, top, window_radius);
    for (size_t i = 0; i < count; ++i) {
      if (degrees[i] < 0) throw Error(ErrorCode::InvalidArgument, "degrees must be nonnegative");
    }
    const Eigen::MatrixXcd S = frame_matrix(ps->value, a, top);
    nlohmann::json rows = nlohmann::json::array();
    for (size_t i = 0; i < count; ++i) {
      const int N = degrees[i];
      const FrameRow r = extremal_eigenvalues(S.topLeftCorner(N + 1, N + 1), N);
      const double eff = std::sqrt(N / alpha) + 4.0 / std::sqrt(alpha);
      rows.push_back({{"N", N}, {"A", r.A}, {"B", r.B}, {"effective_radius", eff}, {"reliable", eff <= window_radius}});
    }
    nlohmann::json j = {{"window_radius", full.window_radius}, {"rows", rows}};
    *json = dup(j.dump());
  });
}

bf_status bf_point_removal(const bf_pointset* ps, double alpha, int degree, double x, double y, char** json) {
  return guarded([&] {
    need(ps, "ps");
    need(json, "json");
    const auto r = point_removal_experiment(ps->value, FockParameter(alpha), degree, {x, y});
    nlohmann::json j = {{"before", nlohmann::json::parse(io::frame_estimate_json(r.before))},
                        {"after", nlohmann::json::parse(io::frame_estimate_json(r.after))}};
    *json = dup(j.dump());
  });
}

bf_status bf_function_from_json(const char* text, bf_function** out) {
  return guarded([&] {
    need(text, "text");
    need(out, "out");
    *out = new bf_function{io::fock_function_from_json(text)};
  });
}

bf_status bf_function_monomial(double alpha, const double* re, const double* im, size_t count, bf_function** out) {
  return guarded([&] {
    need(out, "out");
    if (count > 0) {
      need(re, "re");
      need(im, "im");
    }
    std::vector<Complex> c(count);
    for (size_t k = 0; k < count; ++k) c[k] = {re[k], im[k]};
    *out = new bf_function{FockFunction::monomial(FockParameter(alpha), std::move(c))};
  });
}

void bf_function_free(bf_function* f) { delete f; }

bf_status bf_function_to_json(const bf_function* f, char** json) {
  return guarded([&] {
    need(f, "f");
    need(json, "json");
    *json = dup(io::fock_function_json(f->value));
  });
}

double bf_function_alpha(const bf_function* f) { return f ? f->value.alpha() : 0.0; }

bf_status bf_function_eval(const bf_function* f, double x, double y, double* re, double* im) {
  return guarded([&] {
    need(f, "f");
    need(re, "re");
    need(im, "im");
    put(f->value({x, y}), re, im);
  });
}

bf_status bf_function_eval_log(const bf_function* f, double x, double y, double* log_mag, double* phase) {
  return guarded([&] {
    need(f, "f");
    need(log_mag, "log_mag");
    need(phase, "phase");
    put_log(f->value.value_log({x, y}), log_mag, phase);
  });
}

bf_status bf_function_norm2(const bf_function* f, double* norm) {
  return guarded([&] {
    need(f, "f");
    need(norm, "norm");
    *norm = norm2(f->value);
  });
}

bf_status bf_norm_decomposition(const bf_function* f, int K, double* gap) {
  return guarded([&] {
    need(f, "f");
    need(gap, "gap");
    *gap = norm_decomposition_check(f->value, K);
  });
}

bf_status bf_sigma_log(double spacing, double x, double y, double* log_mag, double* phase) {
  return guarded([&] {
    need(log_mag, "log_mag");
    need(phase, "phase");
    put_log(sigma_log(SquareLattice(spacing), {x, y}, 4), log_mag, phase);
  });
}

bf_status bf_canonical_create(const bf_pointset* gamma, double spacing, int truncation, bf_canonical** out) {
  return guarded([&] {
    need(gamma, "gamma");
    need(out, "out");
    std::optional<int> m;
    if (truncation >= 0) m = truncation;
    *out = new bf_canonical{CanonicalProduct(gamma->value, SquareLattice(spacing), m)};
  });
}

void bf_canonical_free(bf_canonical* g) { delete g; }

bf_status bf_canonical_log_value(const bf_canonical* g, double x, double y, double* log_mag, double* phase) {
  return guarded([&] {
    need(g, "g");
    need(log_mag, "log_mag");
    need(phase, "phase");
    put_log(g->value.log_value({x, y}), log_mag, phase);
  });
}

bf_status bf_canonical_growth_check(const bf_canonical* g, double alpha, double grid_radius, double grid_step,
                                    char** json) {
  return guarded([&] {
    need(g, "g");
    need(json, "json");
    *json = dup(io::growth_fit_json(growth_check(g->value, FockParameter(alpha), grid_radius, grid_step)));
  });
}

bf_status bf_reconstructor_from_problem(const char* problem_json, double truncation_radius, bf_reconstructor** out) {
  return guarded([&] {
    need(problem_json, "problem_json");
    need(out, "out");
    const InterpolationProblem p = io::problem_from_json(problem_json);
    *out = new bf_reconstructor{LagrangeReconstructor(p.gamma, p.lattice, p.alpha, p.data, truncation_radius)};
  });
}

void bf_reconstructor_free(bf_reconstructor* r) { delete r; }

bf_status bf_reconstructor_eval(const bf_reconstructor* r, double x, double y, double* re, double* im) {
  return guarded([&] {
    need(r, "r");
    need(re, "re");
    need(im, "im");
    put(r->value({x, y}), re, im);
  });
}

bf_status bf_interpolant_from_problem(const char* problem_json, double truncation_radius, bf_interpolant** out) {
  return guarded([&] {
    need(problem_json, "problem_json");
    need(out, "out");
    *out = new bf_interpolant{build_interpolant(io::problem_from_json(problem_json), truncation_radius)};
  });
}

void bf_interpolant_free(bf_interpolant* ev) { delete ev; }

bf_status bf_interpolant_weighted(const bf_interpolant* ev, double x, double y, double* re, double* im) {
  return guarded([&] {
    need(ev, "ev");
    need(re, "re");
    need(im, "im");
    put(ev->value.weighted({x, y}), re, im);
  });
}

bf_status bf_interpolant_residual(const bf_interpolant* ev, double* residual) {
  return guarded([&] {
    need(ev, "ev");
    need(residual, "residual");
    *residual = ev->value.residual_check();
  });
}

bf_status bf_interpolant_pointwise_constant(const bf_interpolant* ev, double grid_step, double* C) {
  return guarded([&] {
    need(ev, "ev");
    need(C, "C");
    *C = ev->value.pointwise_constant(grid_step);
  });
}

bf_status bf_interpolant_norm_report(const bf_interpolant* ev, int degree, char** json) {
  return guarded([&] {
    need(ev, "ev");
    need(json, "json");
    *json = dup(io::norm_growth_json(ev->value.norm_growth_report(degree)));
  });
}

}  // extern "C"
