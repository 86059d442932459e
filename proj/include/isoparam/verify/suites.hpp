#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "isoparam/coeff/det_structure.hpp"
#include "isoparam/coeff/vandermonde.hpp"
#include "isoparam/exact/serialize.hpp"
#include "isoparam/geometry/isometry.hpp"
#include "isoparam/jacobi/jacobi.hpp"
#include "isoparam/jacobi/parallel.hpp"
#include "isoparam/verify/config.hpp"
#include "isoparam/verify/report.hpp"

namespace isoparam::verify {

using json = nlohmann::ordered_json;
using kac::SpaceFormParams;

inline json ordered(const nlohmann::json & j) { return json::parse(j.dump()); }

struct Outcome
{
  bool pass = true;
  json witness = json::object();
  double residual = 0;
};

/// Runs one check; VerificationError is a failure, any other exception an error.
inline Record run_check(const std::string & suite, const std::string & id, const json & params, const std::function<Outcome()> & fn)
{
  Record r;
  r.suite = suite;
  r.check_id = id;
  r.params = params;
  try {
    const Outcome o = fn();
    r.status = o.pass ? Status::pass : Status::fail;
    r.witness = o.witness;
    r.max_residual = o.residual;
  } catch (const VerificationError & e) {
    r.status = Status::fail;
    r.witness = {{"message", e.what()}};
  } catch (const std::exception & e) {
    r.status = Status::error;
    r.witness = {{"message", e.what()}};
  }
  return r;
}

inline json exact_params(const SpaceFormParams & p)
{
  return json{{"n", p.n}, {"m", p.m}, {"c", p.c}, {"tau", p.tau.to_string()}};
}

inline std::vector<Record> recurrence_checks(const SpaceFormParams & p, int kmax)
{
  json params = exact_params(p);
  params["kmax"] = kmax;
  const auto table = coeff::p_table(p, kmax);
  std::vector<Record> out;
  out.push_back(run_check("recurrence", "qpower_duality", params, [&] {
    Outcome o;
    o.witness["levels"] = kmax + 1;
    for (int k = 0; k <= kmax; ++k) {
      const long idx = coeff::first_qpower_mismatch(table, p, k);
      if (idx >= 0) {
        o.pass = false;
        o.residual = 1;
        o.witness["first_mismatch"] = {{"k", k}, {"flat_index", idx}};
        break;
      }
    }
    return o;
  }));
  out.push_back(run_check("recurrence", "p_invariants", params, [&] {
    Outcome o;
    const std::string msg = table.check_invariants();
    o.pass = msg.empty();
    if (!o.pass) {
      o.witness["violation"] = msg;
      o.residual = 1;
    }
    return o;
  }));
  return out;
}

inline std::vector<Record> kac_checks(const SpaceFormParams & p)
{
  const json params = exact_params(p);
  std::vector<Record> out;
  out.push_back(run_check("kac", "charpoly", params, [&] {
    Outcome o;
    o.witness["charpoly"] = kac::charpoly_kac(p).to_string();
    return o;
  }));
  out.push_back(run_check("kac", "rank", params, [&] {
    Outcome o;
    o.witness["rank"] = kac::kac_rank(p);
    return o;
  }));
  out.push_back(run_check("kac", "e1_coordinates", params, [&] {
    Outcome o;
    json coords = json::array();
    for (const auto & x : kac::e1_eigen_coordinates(p)) { coords.push_back(ordered(exact::to_json(x))); }
    o.witness["coordinates"] = coords;
    return o;
  }));
  out.push_back(run_check("kac", "eigen_relation", params, [&] {
    Outcome o;
    o.pass = kac::verify_eigen_relation(p);
    o.residual = o.pass ? 0 : 1;
    return o;
  }));
  return out;
}

/// Determinant-structure and Vandermonde checks are run for n <= 5, m <= 2 only.
inline std::vector<Record> system_checks(const SpaceFormParams & p)
{
  const json params = exact_params(p);
  const int N = p.size();
  std::vector<Record> out;
  if (p.n % 2 == 0) {
    out.push_back(run_check("system", "rank_M", params, [&] {
      Outcome o;
      o.witness["rank"] = coeff::verify_rank_M(p);
      o.witness["size"] = N - 1;
      return o;
    }));
  } else {
    for (int s : {N, N + 3}) {
      json ps = params;
      ps["s"] = s;
      out.push_back(run_check("system", "rank_Ms", ps, [&] {
        Outcome o;
        o.witness["rank"] = coeff::verify_rank_Ms(p, s);
        o.witness["size"] = N - 1;
        return o;
      }));
    }
  }
  if (p.n <= 4 && p.m <= 2) {
    if (p.n % 2 == 0) {
      out.push_back(run_check("system", "det_structure", params, [&] {
        const auto r = coeff::det_structure_M_iota(p);
        Outcome o;
        o.witness["iota"] = r.iota;
        o.witness["gamma0"] = *r.term0.gamma;
        o.witness["beta0"] = r.term0.beta.to_string();
        json chain = json::array();
        for (const auto & t : r.terms) {
          if (t.gamma) { chain.push_back(*t.gamma); }
        }
        o.witness["gamma_chain"] = chain;
        o.witness["sign_pattern_ok"] = r.sign_pattern_ok;
        o.witness["quoted_lower_bound"] = r.quoted_lower_bound;
        o.witness["quoted_lower_bound_holds"] = r.quoted_lower_bound_holds;
        return o;
      }));
    } else {
      out.push_back(run_check("system", "det_structure_odd", params, [&] {
        const auto r = coeff::det_structure_Ms(p, N);
        Outcome o;
        o.witness["s"] = N;
        o.witness["det_tau_zero"] = r.det_tau.is_zero();
        o.witness["beta_s"] = r.term_s.beta.to_string();
        o.witness["gamma_s"] = *r.term_s.gamma;
        return o;
      }));
    }
  }
  const bool even_ok = p.n % 2 == 0 && p.n <= 4 && p.m <= 2;
  const bool odd_ok = p.n % 2 == 1 && p.n <= 5 && p.m == 1;
  if (even_ok || odd_ok) {
    out.push_back(run_check("system", "vandermonde", params, [&] {
      const auto r = coeff::vandermonde_xi(p, 0, even_ok ? coeff::XiMode::even_full : coeff::XiMode::odd_reduced);
      Outcome o;
      o.witness["mode"] = even_ok ? "even_full" : "odd_reduced";
      o.witness["size"] = r.xi.rows();
      o.witness["det"] = ordered(exact::to_json(r.det_extension));
      return o;
    }));
  }
  return out;
}

inline std::vector<Record> jacobi_checks(const SpaceFormParams & p, int trials, std::uint64_t seed)
{
  json params = exact_params(p);
  params["trials"] = trials;
  const int N = p.size();
  std::vector<jacobi::ShapeMatrix> shapes;
  std::mt19937_64 rng(seed);
  for (int i = 0; i < trials; ++i) { shapes.push_back(jacobi::ShapeMatrix::random(p, rng())); }
  std::vector<jacobi::AlphaTable> tables;
  auto first_bad = [](Outcome & o, int i) {
    o.pass = false;
    o.residual = 1;
    o.witness["first_failing_trial"] = i;
  };
  std::vector<Record> out;
  out.push_back(run_check("jacobi", "alpha_recurrence", params, [&] {
    Outcome o;
    for (int i = 0; i < trials; ++i) {
      tables.push_back(jacobi::alpha_table(shapes[static_cast<std::size_t>(i)], p, N + 1));
      if (jacobi::first_recurrence_mismatch(tables.back()) >= 0) {
        first_bad(o, i);
        break;
      }
      jacobi::phi_vector(tables.back());
    }
    o.witness["kmax"] = N + 1;
    return o;
  }));
  out.push_back(run_check("jacobi", "system_residual", params, [&] {
    Outcome o;
    for (int i = 0; i < trials; ++i) {
      const auto rep = jacobi::system_residual(shapes[static_cast<std::size_t>(i)], p);
      o.residual = std::max(o.residual, rep.max_abs.to_double());
    }
    return o;
  }));
  out.push_back(run_check("jacobi", "bridge", params, [&] {
    Outcome o;
    for (std::size_t i = 0; i < tables.size(); ++i) {
      if (jacobi::bridge_mismatch(tables[i], p) >= 0) {
        first_bad(o, static_cast<int>(i));
        break;
      }
    }
    if (tables.size() != static_cast<std::size_t>(trials)) { throw VerificationError("alpha tables incomplete"); }
    return o;
  }));
  out.push_back(run_check("jacobi", "jacobi_formula", params, [&] {
    Outcome o;
    for (int i = 0; i < trials; ++i) {
      if (!jacobi::jacobi_formula_defect(shapes[static_cast<std::size_t>(i)], p).is_zero()) {
        first_bad(o, i);
        break;
      }
    }
    return o;
  }));
  return out;
}

namespace detail {

using geometry::ProductPoint;
using geometry::Vec;

inline Outcome bound(double residual, double tol)
{
  Outcome o;
  o.residual = residual;
  o.pass = residual <= tol;
  o.witness["tolerance"] = tol;
  return o;
}

template<class Ex>
Outcome isometry_outcome(const Ex & ex, const std::vector<std::pair<ProductPoint, ProductPoint>> & pairs, const std::vector<ProductPoint> & probes)
{
  double map_res = 0, f_res = 0, metric = 0;
  for (const auto & [p, q] : pairs) {
    const auto g = geometry::transitive_isometry(ex, p, q);
    map_res = std::max(map_res, geometry::point_distance(g.apply(p), q) / std::max(1.0, q.h.norm()));
    metric = std::max(metric, g.metric_residual());
    for (const auto & r : probes) {
      const double f = ex.value(r);
      f_res = std::max(f_res, std::abs(ex.value(g.apply(r)) - f) / std::max(1.0, std::abs(f)));
    }
  }
  Outcome o = bound(std::max(map_res, f_res), 1e-10);
  o.witness["pairs"] = pairs.size();
  o.witness["map_residual"] = map_res;
  o.witness["f_residual"] = f_res;
  o.witness["metric_residual"] = metric;
  o.pass = o.pass && metric <= 1e-9;
  return o;
}

}  // namespace detail

inline std::vector<Record> geometry_s1_checks(int m, double kappa, int trials, std::uint64_t seed)
{
  using namespace geometry;
  const json params{{"family", "s1"}, {"m", m}, {"kappa", kappa}, {"trials", trials}};
  const auto ex = ExampleS1::make(m, kappa, Vec::Unit(m, 0));
  std::mt19937_64 rng(seed);
  std::vector<ProductPoint> pts;
  for (int i = 0; i < trials; ++i) { pts.push_back(random_point(Factor::circle, 1, m, rng)); }
  std::vector<Record> out;
  out.push_back(run_check("geometry", "gradient_identity", params, [&] {
    if (!s1_gradient_identity_defect().is_zero()) { throw VerificationError("symbolic defect is nonzero"); }
    double r = 0;
    for (const auto & p : pts) { r = std::max(r, std::abs(inner(Factor::circle, ex.grad(p), ex.grad(p)) - ex.b_of(ex.value(p)))); }
    return detail::bound(r, 1e-12);
  }));
  out.push_back(run_check("geometry", "laplacian_fd", params, [&] {
    double r = 0;
    for (const auto & p : pts) { r = std::max(r, std::abs(laplace_fd(ex, p) - ex.laplace(p))); }
    return detail::bound(r, 1e-6);
  }));
  out.push_back(run_check("geometry", "angle", params, [&] {
    double r = 0;
    int used = 0;
    for (const auto & p : pts) {
      if (std::abs(std::cos(ex.phase(p))) < 1e-3) { continue; }
      r = std::max(r, std::abs(level_set_frame(ex, p).C - ex.angle()));
      ++used;
    }
    Outcome o = detail::bound(r, 1e-12);
    o.witness["points"] = used;
    o.witness["C"] = ex.angle();
    return o;
  }));
  out.push_back(run_check("geometry", "principal_frame", params, [&] {
    double r = 0;
    bool ok = true;
    for (const auto & p : pts) {
      if (std::abs(std::cos(ex.phase(p))) < 1e-3) { continue; }
      const auto c = check_principal_frame(ex, p);
      ok = ok && c.ok;
      r = std::max({r, c.av_residual, c.block_residual});
    }
    Outcome o = detail::bound(r, 1e-9);
    o.pass = o.pass && ok;
    return o;
  }));
  out.push_back(run_check("geometry", "isometry", params, [&] {
    std::normal_distribution<double> g(0, 1);
    std::vector<std::pair<ProductPoint, ProductPoint>> pairs;
    for (const auto & p : pts) {
      Vec y(m);
      for (int i = 0; i < m; ++i) { y(i) = g(rng); }
      pairs.emplace_back(p, same_level_point(ex, p, y));
    }
    std::vector<ProductPoint> probes;
    for (int i = 0; i < 5; ++i) { probes.push_back(random_point(Factor::circle, 1, m, rng)); }
    return detail::isometry_outcome(ex, pairs, probes);
  }));
  return out;
}

inline std::vector<Record> geometry_hn_checks(int n, int m, double a, int trials, std::uint64_t seed)
{
  using namespace geometry;
  const json params{{"family", "hn"}, {"n", n}, {"m", m}, {"a", a}, {"trials", trials}};
  const auto ex = ExampleHn::standard(n, m, a);
  std::mt19937_64 rng(seed);
  std::vector<ProductPoint> pts;
  for (int i = 0; i < trials; ++i) { pts.push_back(random_point(Factor::hyperbolic, n, m, rng, 0.5)); }
  auto rel = [](double x, double f) { return x / std::max(1.0, std::abs(f)); };
  std::vector<Record> out;
  out.push_back(run_check("geometry", "gradient_identity", params, [&] {
    if (!hn_gradient_identity_defect().is_zero()) { throw VerificationError("symbolic defect is nonzero"); }
    double r = 0;
    for (const auto & p : pts) {
      const double b = ex.b_of(ex.value(p));
      r = std::max(r, rel(std::abs(inner(Factor::hyperbolic, ex.grad(p), ex.grad(p)) - b), b));
    }
    return detail::bound(r, 1e-12);
  }));
  out.push_back(run_check("geometry", "laplacian_fd", params, [&] {
    double r = 0;
    for (const auto & p : pts) { r = std::max(r, rel(std::abs(laplace_fd(ex, p) - ex.laplace(p)), ex.value(p))); }
    return detail::bound(r, 1e-6);
  }));
  out.push_back(run_check("geometry", "angle", params, [&] {
    double r = 0;
    for (const auto & p : pts) { r = std::max(r, std::abs(level_set_frame(ex, p).C - ex.angle())); }
    Outcome o = detail::bound(r, 1e-12);
    o.witness["C"] = ex.angle();
    return o;
  }));
  out.push_back(run_check("geometry", "curvature_tables", params, [&] {
    const double k = -a * a / (1 + a * a);
    const double lam = 1 / std::sqrt(1 + a * a);
    double r = 0;
    bool mult_ok = true;
    CurvatureTables last;
    for (const auto & p : pts) {
      const auto t = curvature_tables(ex, p);
      r = std::max(r, std::abs(t.H - (n - 1) * lam));
      r = std::max(r, std::abs(t.scalar - n * (n - 1) * k));
      r = std::max(r, std::abs(*t.sectional[0][2] - k));
      r = std::max(r, std::abs(*t.sectional[0][1]));
      r = std::max(r, std::abs(*t.sectional[1][2]));
      if (n > 2) { r = std::max(r, std::abs(*t.sectional[0][0] - k)); }
      if (m > 2) { r = std::max(r, std::abs(*t.sectional[1][1])); }
      int big = 0, zero = 0;
      for (double l : t.principal) {
        big += std::abs(l - lam) < 1e-8;
        zero += std::abs(l) < 1e-8;
      }
      mult_ok = mult_ok && big == n - 1 && zero == m;
      last = t;
    }
    Outcome o = detail::bound(r, 1e-8);
    o.pass = o.pass && mult_ok;
    o.witness["H"] = last.H;
    o.witness["scalar"] = last.scalar;
    o.witness["multiplicities"] = {n - 1, m};
    o.witness["multiplicities_ok"] = mult_ok;
    o.witness["sectional_V1V3"] = *last.sectional[0][2];
    return o;
  }));
  out.push_back(run_check("geometry", "principal_frame", params, [&] {
    double r = 0;
    bool ok = true;
    for (const auto & p : pts) {
      const auto c = check_principal_frame(ex, p);
      ok = ok && c.ok;
      r = std::max({r, c.av_residual, c.block_residual});
    }
    Outcome o = detail::bound(r, 1e-9);
    o.pass = o.pass && ok;
    return o;
  }));
  out.push_back(run_check("geometry", "isometry", params, [&] {
    std::normal_distribution<double> g(0, 0.7);
    std::vector<std::pair<ProductPoint, ProductPoint>> pairs;
    for (const auto & p : pts) {
      Vec z(n - 1), y(m);
      for (int i = 0; i < n - 1; ++i) { z(i) = g(rng); }
      for (int i = 0; i < m; ++i) { y(i) = g(rng); }
      pairs.emplace_back(p, same_level_point(ex, p, z, y));
    }
    std::vector<ProductPoint> probes;
    for (int i = 0; i < 5; ++i) { probes.push_back(random_point(Factor::hyperbolic, n, m, rng, 0.5)); }
    Outcome o = detail::isometry_outcome(ex, pairs, probes);
    double us = 0;
    for (const auto & [p, q] : pairs) { us = std::max(us, u_scaling_residual(ex, transitive_isometry(ex, p, q), p, q)); }
    o.witness["u_scaling_residual"] = us;
    o.pass = o.pass && us <= 1e-9;
    return o;
  }));
  out.push_back(run_check("geometry", "parallel_constancy", params, [&] {
    std::vector<double> hs;
    for (double t : {-1.0, 0.0, 1.0}) {
      hs.push_back((n - 1) * jacobi::parallel_principal_branch(ex.c1(), {-1, ex.c1()}, t) +
                   (m - 1) * jacobi::parallel_principal_branch(0.0, {0, ex.c2() == 0 ? 1.0 : ex.c2()}, t));
    }
    const double spread = *std::max_element(hs.begin(), hs.end()) - *std::min_element(hs.begin(), hs.end());
    Outcome o = detail::bound(spread, 1e-10);
    o.witness["H"] = hs;
    return o;
  }));
  return out;
}

}  // namespace isoparam::verify
