#include "doctest.h"

#include <algorithm>
#include <random>

#include "bargmann/interpolation.hpp"
#include "oracles.hpp"

using namespace bargmann;
using oracle::C;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::Io;
}

const FockParameter kOne(1.0);

NodeData samples_of(const PointSet& gamma, const FockFunction& f) {
  NodeData s;
  for (std::size_t k = 0; k < gamma.size(); ++k) s[gamma.indices()[k]] = f(gamma.points()[k]);
  return s;
}

NodeData bounded_data(const PointSet& gamma, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  NodeData d;
  for (const auto& k : gamma.indices()) {
    C v(u(rng), u(rng));
    if (std::abs(v) > 1.0) v /= std::abs(v);
    d[k] = v;
  }
  return d;
}

double sup_error_on_disk(const LagrangeReconstructor& rec, const FockFunction& f, double radius) {
  double err = 0.0;
  for (double x = -radius; x <= radius; x += 0.1) {
    for (double y = -radius; y <= radius; y += 0.1) {
      const C z(x, y);
      if (std::abs(z) > radius) continue;
      err = std::max(err, std::abs(rec(z) - f(z)));
    }
  }
  return err;
}

InterpolationProblem sub_critical(double ratio, double window, NodeData data = {}) {
  return {scale_lattice_to_density(kOne, ratio, window), SquareLattice::for_density(kOne, ratio), kOne,
          std::move(data)};
}

C gamma_point(const PointSet& gamma, LatticeIndex k) { return gamma.points()[*gamma.find(k)]; }

}  // namespace

TEST_SUITE("interpolation") {

TEST_CASE("reconstruction of known functions") {
  const auto lattice = SquareLattice::for_density(kOne, 1.5);
  const auto gamma = scale_lattice_to_density(kOne, 1.5, 14.0);
  const auto one = FockFunction::monomial(kOne, {1.0});
  const auto e3 = FockFunction::monomial(kOne, {0.0, 0.0, 0.0, 1.0});
  const C z(0.3, 0.2);
  CHECK(std::abs(lagrange_reconstruct(gamma, lattice, kOne, samples_of(gamma, one), z, 8.0) - 1.0) <= 5e-3);
  CHECK(std::abs(lagrange_reconstruct(gamma, lattice, kOne, samples_of(gamma, one), z, 12.0) - 1.0) <= 1e-4);
  CHECK(std::abs(lagrange_reconstruct(gamma, lattice, kOne, samples_of(gamma, e3), z, 8.0) - e3(z)) <= 5e-3);

  // random element of span{e_0..e_8}: sup error on |z| <= 2 non-increasing in R
  std::mt19937_64 rng(31);
  std::normal_distribution<double> g;
  std::vector<Complex> c(9);
  for (auto& v : c) v = C(g(rng), g(rng));
  const auto f = FockFunction::monomial(kOne, c);
  const auto s = samples_of(gamma, f);
  double prev = 1e300;
  for (double R : {6.0, 8.0, 10.0, 12.0}) {
    const double err = sup_error_on_disk(LagrangeReconstructor(gamma, lattice, kOne, s, R), f, 2.0);
    CHECK(err <= 1.1 * prev);
    prev = err;
  }
  CHECK(prev <= 1e-4);
}

TEST_CASE("reconstruction on a perturbed set") {
  const auto lattice = SquareLattice::for_density(kOne, 1.5);
  const auto gamma = perturb(scale_lattice_to_density(kOne, 1.5, 14.0), 0.2 * lattice.spacing(), 11);
  const auto f = FockFunction::kernel_combination(kOne, {C(0.4, -0.3)}, {C(0.5, 1.0)});
  const LagrangeReconstructor rec(gamma, lattice, kOne, samples_of(gamma, f), 12.0);
  CHECK(sup_error_on_disk(rec, f, 2.0) <= 1e-8);
}

TEST_CASE("reconstruction contract") {
  const auto lattice = SquareLattice::for_density(kOne, 1.5);
  const auto gamma = perturb(scale_lattice_to_density(kOne, 1.5, 10.0), 0.3, 2);
  const auto f = FockFunction::monomial(kOne, {0.5, 1.0});
  const auto s = samples_of(gamma, f);
  const LagrangeReconstructor rec(gamma, lattice, kOne, s, 8.0);
  for (std::size_t k = 0; k < gamma.size(); ++k) {
    const C z = gamma.points()[k];
    if (std::abs(z) < 4.0) CHECK(rec(z) == s.at(gamma.indices()[k]));
  }
  CHECK(code_of([&] { rec(C(4.0, 0.0)); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { rec(C(3.0, 3.0)); }) == ErrorCode::InvalidArgument);

  NodeData partial = s;
  partial.erase(gamma.indices()[gamma.size() / 2]);
  CHECK(code_of([&] { LagrangeReconstructor(gamma, lattice, kOne, partial, 8.0); }) ==
        ErrorCode::MissingSamples);
  // nodes beyond the truncation radius need no samples
  NodeData inner;
  for (std::size_t k = 0; k < gamma.size(); ++k) {
    if (std::abs(gamma.points()[k]) <= 8.0) inner[gamma.indices()[k]] = s.at(gamma.indices()[k]);
  }
  CHECK_NOTHROW(LagrangeReconstructor(gamma, lattice, kOne, inner, 8.0));
  CHECK(code_of([&] { LagrangeReconstructor(gamma, lattice, kOne, s, 0.0); }) == ErrorCode::InvalidArgument);

  // beta = alpha and beta < alpha are refused
  const auto critical = SquareLattice::for_density(kOne, 1.0);
  const auto on_critical = scale_lattice_to_density(kOne, 1.0, 10.0);
  CHECK(code_of([&] {
          LagrangeReconstructor(on_critical, critical, kOne, samples_of(on_critical, f), 8.0);
        }) == ErrorCode::DensityOrderViolated);
  const auto sparse = scale_lattice_to_density(kOne, 0.8, 10.0);
  CHECK(code_of([&] {
          lagrange_reconstruct(sparse, SquareLattice::for_density(kOne, 0.8), kOne, samples_of(sparse, f), 0.0,
                               8.0);
        }) == ErrorCode::DensityOrderViolated);
}

TEST_CASE("basis terms on the lattice match the theta oracle") {
  // gamma - z_k is the full lattice again, so g_k = sigma
  const auto P = sub_critical(0.8, 16.0);
  const auto ev = build_interpolant(P, 8.0);
  const double s = P.lattice.spacing();
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  const auto& idx = ev.term_indices();
  for (std::size_t k = 0; k < idx.size(); k += 7) {
    const C zk = gamma_point(P.gamma, idx[k]);
    for (int i = 0; i < 5; ++i) {
      const C z(u(rng), u(rng));
      const C w = z - zk;
      const C expect = std::exp(-0.5 * std::norm(w) + C(0.0, std::imag(std::conj(zk) * z))) *
                       oracle::sigma_theta(s, w) / w;
      const C got = ev.term_log(k, z).to_complex();
      CHECK(std::abs(got - expect) <= 1e-10 * std::max(1.0, std::abs(expect)));
    }
  }
}

TEST_CASE("node identity") {
  for (const bool perturbed : {false, true}) {
    auto P = sub_critical(0.8, 16.0);
    if (perturbed) P.gamma = perturb(P.gamma, 0.25 * P.lattice.spacing(), 4);
    const auto ev = build_interpolant(P, 10.0);
    const auto& idx = ev.term_indices();
    for (std::size_t k = 0; k < idx.size(); ++k) {
      CHECK(std::abs(ev.term_log(k, gamma_point(P.gamma, idx[k])).to_complex() - 1.0) <= 1e-12);
    }
    for (std::size_t k = 0; k < idx.size(); k += 5) {
      for (std::size_t j = 0; j < idx.size(); j += 3) {
        if (j != k) CHECK(ev.term_log(k, gamma_point(P.gamma, idx[j])).is_zero());
      }
    }
  }
}

TEST_CASE("interpolation of indicator and zero data") {
  auto P = sub_critical(0.8, 16.0);
  P.data[{0, 0}] = 1.0;
  const double R = 10.0;
  const auto ev = build_interpolant(P, R);
  CHECK(std::abs(ev.weighted(0.0) - 1.0) == 0.0);
  for (std::size_t k = 0; k < P.gamma.size(); ++k) {
    const C z = P.gamma.points()[k];
    if (std::abs(z) > R / 2 || z == C(0.0, 0.0)) continue;
    CHECK(std::abs(ev.weighted(z)) <= 1e-8);
  }
  CHECK(ev.residual_check() <= 1e-12);

  const auto zero = ev.with_data({});
  for (const C z : {C(0.0, 0.0), C(0.3, 0.7), C(-2.0, 1.1), C(3.0, -3.0)}) {
    CHECK(zero.weighted(z) == C(0.0, 0.0));
    CHECK(zero.value_log(z).is_zero());
  }
  CHECK(zero.residual_check() == 0.0);
}

TEST_CASE("random bounded data") {
  const auto P = sub_critical(0.8, 20.0, {});
  const auto data = bounded_data(P.gamma, 7);
  auto Q = P;
  Q.data = data;
  const auto ev10 = build_interpolant(Q, 10.0);
  const auto ev14 = build_interpolant(Q, 14.0);
  const auto ref = build_interpolant(Q, 18.0);
  CHECK(ev10.residual_check() <= 1e-3);
  CHECK(ev14.residual_check() <= 1e-3);

  // off the nodes the truncated series approach the reference series
  const auto gap = [&](const InterpolantEvaluator& ev) {
    double d = 0.0;
    for (double x = -5.0; x <= 5.0; x += 0.37) {
      for (double y = -5.0; y <= 5.0; y += 0.37) {
        if (std::hypot(x, y) <= 5.0) d = std::max(d, std::abs(ev.weighted({x, y}) - ref.weighted({x, y})));
      }
    }
    return d;
  };
  CHECK(gap(ev14) < gap(ev10));

  // linearity
  const auto other = bounded_data(P.gamma, 8);
  NodeData sum;
  for (const auto& [k, v] : data) sum[k] = v + 2.0 * other.at(k);
  const auto a = ev10.with_data(other);
  const auto b = ev10.with_data(sum);
  for (const C z : {C(0.1, 0.2), C(-1.7, 2.2), C(3.0, 0.4), C(0.0, -4.5)}) {
    const C lhs = b.weighted(z);
    const C rhs = ev10.weighted(z) + 2.0 * a.weighted(z);
    CHECK(std::abs(lhs - rhs) <= 1e-10);
  }

  // pointwise bound with the reported constant
  const double Cst = ev10.pointwise_constant(0.25);
  CHECK(Cst >= 1.0);
  double sup = 0.0;
  for (const auto& [k, v] : data) sup = std::max(sup, std::abs(v));
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int i = 0; i < 200; ++i) {
    const C z(u(rng), u(rng));
    if (std::abs(z) > 5.0) continue;
    CHECK(std::abs(ev10.weighted(z)) <= (1.0 + sup) * Cst);
  }
  CHECK(code_of([&] { ev10.pointwise_constant(0.0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("interpolation contract") {
  auto P = sub_critical(0.8, 12.0);
  P.data[{0, 0}] = 1.0;
  CHECK(code_of([&] { build_interpolant(P, 0.0); }) == ErrorCode::InvalidArgument);
  auto bad = P;
  bad.data[{999, 0}] = 1.0;
  CHECK(code_of([&] { build_interpolant(bad, 6.0); }) == ErrorCode::InvalidArgument);
  bad = P;
  bad.data[{1, 0}] = C(std::nan(""), 0.0);
  CHECK(code_of([&] { build_interpolant(bad, 6.0); }) == ErrorCode::InvalidArgument);

  for (double ratio : {1.0, 1.2}) {
    auto Q = sub_critical(ratio, 12.0);
    Q.data[{0, 0}] = 1.0;
    CHECK(code_of([&] { build_interpolant(Q, 6.0); }) == ErrorCode::DensityOrderViolated);
  }
  CHECK(lattice_beta(SquareLattice(1.0)) == doctest::Approx(oracle::pi));
}

TEST_CASE("norm growth report") {
  auto P = sub_critical(0.8, 12.0);
  const auto empty = build_interpolant(P, 6.0);
  const NormGrowth none = empty.norm_growth_report(6);
  CHECK_FALSE(none.applicable);
  CHECK(std::isnan(none.ratio));
  CHECK(none.data_l2 == 0.0);

  // <f, e_0> = f(0) = a_00, so the projection alone carries |a_00|
  P.data[{0, 0}] = C(0.6, -0.8);
  const auto single = build_interpolant(P, 6.0);
  for (int N : {0, 4, 8}) {
    const NormGrowth r = single.norm_growth_report(N);
    CHECK(r.applicable);
    CHECK(r.degree == N);
    CHECK(r.data_l2 == doctest::Approx(1.0));
    CHECK(r.norm2 >= 1.0 - 1e-3);
  }
  // only the mass outside the quadrature disk is missing
  CHECK(single.norm_growth_report(0).norm2 == doctest::Approx(1.0).epsilon(1e-5));

  // projections increase with the degree
  double prev = 0.0;
  for (int N : {2, 6, 10}) {
    const double n2 = single.norm_growth_report(N).norm2;
    CHECK(n2 >= prev - 1e-10);
    prev = n2;
  }

  // stability over random normalized draws
  std::vector<double> ratios;
  for (std::uint64_t seed = 100; seed < 120; ++seed) {
    ratios.push_back(single.with_data(bounded_data(P.gamma, seed)).norm_growth_report(8).ratio);
  }
  auto sorted = ratios;
  std::sort(sorted.begin(), sorted.end());
  const double median = 0.5 * (sorted[9] + sorted[10]);
  for (double r : ratios) {
    CHECK(r <= 3.0 * median);
    CHECK(r >= median / 3.0);
  }
  CHECK(code_of([&] { single.norm_growth_report(-1); }) == ErrorCode::InvalidArgument);
}

}  // TEST_SUITE
