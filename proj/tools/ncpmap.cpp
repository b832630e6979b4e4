// Command-line front end: emits plot data (eigenvalue curves, domain
// sections, positivity boundary surfaces) as CSV/JSON tables and wraps the
// decomposition, reduction, assignment, and domain-intersection checks as
// JSON reports.  Exit codes: 0 success, 1 validation failure, 2 I/O failure.

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ncp/assignment.hpp"
#include "ncp/domains.hpp"
#include "ncp/json_io.hpp"
#include "ncp/reduction.hpp"
#include "ncp/two_qubit.hpp"

namespace {

using json = nlohmann::ordered_json;

// Shortest decimal form that parses back to the same double.
std::string format_double(double v) {
  std::array<char, 64> buf;
  const std::to_chars_result res =
      std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

std::string scalar_text(const json& v) {
  if (v.is_string()) {
    return v.get<std::string>();
  }
  if (v.is_boolean()) {
    return v.get<bool>() ? "1" : "0";
  }
  if (v.is_number_integer()) {
    return std::to_string(v.get<long long>());
  }
  return format_double(v.get<double>());
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content << std::flush;
    if (!std::cout) {
      throw ncp::IoError("failed writing to stdout");
    }
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ncp::IoError("cannot open " + path + " for writing");
  }
  out << content << std::flush;
  if (!out) {
    throw ncp::IoError("failed writing " + path);
  }
}

using Meta = std::vector<std::pair<std::string, json>>;

void emit_table(const Meta& meta, const std::vector<std::string>& columns,
                const std::vector<std::vector<double>>& rows,
                const std::string& format, const std::string& out) {
  if (format == "json") {
    json j;
    for (const auto& [key, value] : meta) {
      j[key] = value;
    }
    j["columns"] = columns;
    json jrows = json::array();
    for (const auto& row : rows) {
      jrows.push_back(row);
    }
    j["rows"] = std::move(jrows);
    write_output(out, j.dump(2) + "\n");
    return;
  }
  std::string text = "#";
  for (const auto& [key, value] : meta) {
    text += " " + key + "=" + scalar_text(value);
  }
  text += "\n";
  for (std::size_t i = 0; i < columns.size(); ++i) {
    text += (i ? "," : "") + columns[i];
  }
  text += "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) {
        text += ",";
      }
      text += format_double(row[i]);
    }
    text += "\n";
  }
  write_output(out, text);
}

json complex_entries(const ncp::Matrix& m) {
  json entries = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      entries.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
    }
  }
  return entries;
}

json complex_entries(const ncp::Vector& v) {
  json entries = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    entries.push_back(json::array({v(i).real(), v(i).imag()}));
  }
  return entries;
}

json real_rows(const ncp::RealMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      row.push_back(m(r, c));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void check_grid_step(double step) {
  if (!(step > 0.0 && step <= 0.5)) {
    throw std::invalid_argument("grid-step must lie in (0, 0.5]");
  }
}

void check_t_samples(int n) {
  if (n < 8) {
    throw std::invalid_argument("t-samples must be at least 8");
  }
}

void run_eigencurve(double a1, double a2, int t_samples,
                    const std::string& format, const std::string& out) {
  check_t_samples(t_samples);
  std::vector<std::vector<double>> rows;
  rows.reserve(static_cast<std::size_t>(t_samples));
  for (int i = 0; i < t_samples; ++i) {
    const double t = 2.0 * M_PI * i / (t_samples - 1);
    const ncp::CorrelationParams p(a1, a2, t);
    const ncp::AnalyticEigensystem ae = ncp::analytic_eigensystem(p);
    const ncp::EigenSystem es = ncp::eig_hermitian(ncp::reduced_map(p).b);
    std::array<double, 4> sorted = ae.lambda;
    std::sort(sorted.begin(), sorted.end(), std::greater<double>());
    double deviation = 0.0;
    for (int k = 0; k < 4; ++k) {
      deviation = std::max(deviation, std::abs(sorted[static_cast<std::size_t>(
                                                   k)] -
                                               es.eigenvalues(k)));
    }
    rows.push_back({t, ae.lambda[0], ae.lambda[1], ae.lambda[2], ae.lambda[3],
                    es.eigenvalues(0), es.eigenvalues(1), es.eigenvalues(2),
                    es.eigenvalues(3), deviation});
  }
  emit_table({{"a1", a1}, {"a2", a2}, {"t_samples", t_samples}},
             {"omega_t", "lambda1", "lambda2", "lambda3", "lambda4",
              "numeric1", "numeric2", "numeric3", "numeric4", "deviation"},
             rows, format, out);
}

void run_domain(double c, const std::string& section, double grid_step,
                const std::string& format, const std::string& out) {
  check_grid_step(grid_step);
  if (!(c >= 0.0 && c < 1.0)) {
    throw std::invalid_argument("c must lie in [0, 1)");
  }
  const Meta meta = {{"section", section}, {"c", c}, {"grid_step", grid_step}};
  if (section == "grid3d") {
    std::vector<std::vector<double>> rows;
    for (const ncp::GridPoint& g : ncp::domain_grid(c, grid_step)) {
      rows.push_back({g.s_plus, g.s_minus, g.s3, g.in_domain ? 1.0 : 0.0});
    }
    emit_table(meta, {"s_plus", "s_minus", "s3", "in_domain"}, rows, format,
               out);
    return;
  }
  const int n = std::max(16L, std::lround(2.0 * M_PI / grid_step));
  std::vector<ncp::CurvePoint> points;
  std::vector<std::string> columns;
  if (section == "minus3") {
    points = ncp::section_minus3(c, n);
    columns = {"s_minus", "s3"};
  } else if (section == "plusminus") {
    points = ncp::section_plusminus(c, n);
    columns = {"s_plus", "s_minus"};
  } else if (section == "plus3") {
    points = ncp::section_plus3(c, n);
    columns = {"s_plus", "s3"};
  } else {
    throw std::invalid_argument("unknown section: " + section);
  }
  std::vector<std::vector<double>> rows;
  rows.reserve(points.size());
  for (const ncp::CurvePoint& p : points) {
    rows.push_back({p.u, p.v});
  }
  emit_table(meta, columns, rows, format, out);
}

void run_positivity(double a1, double a2, double omega_t, double grid_step,
                    const std::string& format, const std::string& out) {
  check_grid_step(grid_step);
  const ncp::CorrelationParams p(a1, a2, omega_t);
  const bool north_pole = ncp::in_positivity({0.0, 0.0, 1.0}, p);
  const bool slab = std::abs(std::cos(omega_t)) < 1e-12;
  const double s3_max = std::sqrt(std::max(0.0, 1.0 - p.r2()));
  const int n_theta =
      std::max(2L, std::lround(M_PI / grid_step) + 1);  // poles included
  const int n_phi = std::max(4L, std::lround(2.0 * M_PI / grid_step));
  std::vector<std::vector<double>> rows;
  rows.reserve(static_cast<std::size_t>(n_theta) * n_phi);
  for (int it = 0; it < n_theta; ++it) {
    const double theta = M_PI * it / (n_theta - 1);
    for (int ip = 0; ip < n_phi; ++ip) {
      const double phi = 2.0 * M_PI * ip / n_phi;
      ncp::BlochVector v;
      bool in_ball = true;
      if (slab) {
        // cos wt = 0: the image constraint degenerates to |s3| <= s3_max, so
        // the boundary is the sphere band clipped to the two cap disks.
        v.s1 = std::sin(theta) * std::cos(phi);
        v.s2 = std::sin(theta) * std::sin(phi);
        v.s3 = std::clamp(std::cos(theta), -s3_max, s3_max);
      } else {
        v = ncp::positivity_boundary(p, theta, phi);
        // tolerant: at wt = 0 the preimage is exactly the unit sphere
        in_ball = v.s1 * v.s1 + v.s2 * v.s2 + v.s3 * v.s3 <= 1.0 + 1e-12;
      }
      rows.push_back({theta, phi, v.s1, v.s2, v.s3, in_ball ? 1.0 : 0.0});
    }
  }
  emit_table({{"a1", a1},
              {"a2", a2},
              {"omega_t", omega_t},
              {"boundary", slab ? "slab" : "preimage"},
              {"north_pole_included", north_pole},
              {"grid_step", grid_step}},
             {"theta", "phi", "s1", "s2", "s3", "in_ball"}, rows, format, out);
}

void run_decompose(const std::string& map_file, const std::string& out) {
  const ncp::MatrixMap map = ncp::read_matrix_map(map_file);
  const ncp::SignedKraus kraus = ncp::signed_kraus(map);

  double reconstruction = 0.0;
  for (int j = 0; j < map.dim; ++j) {
    for (int k = 0; k < map.dim; ++k) {
      ncp::Matrix unit = ncp::Matrix::Zero(map.dim, map.dim);
      unit(j, k) = 1.0;
      reconstruction = std::max(
          reconstruction, (ncp::act(map, unit) - ncp::act(kraus, unit))
                              .cwiseAbs()
                              .maxCoeff());
    }
  }
  double orthogonality = 0.0;
  ncp::Matrix completeness = -ncp::Matrix::Identity(map.dim, map.dim);
  for (std::size_t m = 0; m < kraus.terms.size(); ++m) {
    completeness += static_cast<double>(kraus.terms[m].sign) *
                    kraus.terms[m].c.adjoint() * kraus.terms[m].c;
    for (std::size_t n = m + 1; n < kraus.terms.size(); ++n) {
      orthogonality =
          std::max(orthogonality,
                   std::abs(ncp::hs_inner(kraus.terms[m].c, kraus.terms[n].c)));
    }
  }

  json j;
  j["dim"] = map.dim;
  j["eigenvalues"] = kraus.eigenvalues;
  json signs = json::array();
  json c_matrices = json::array();
  for (const ncp::SignedKrausTerm& term : kraus.terms) {
    signs.push_back(term.sign);
    c_matrices.push_back(complex_entries(term.c));
  }
  j["signs"] = std::move(signs);
  j["c_matrices"] = std::move(c_matrices);
  j["reconstruction_residual"] = reconstruction;
  j["orthogonality_residual"] = orthogonality;
  j["completeness_residual"] = completeness.cwiseAbs().maxCoeff();
  j["trace_preserving"] = ncp::is_trace_preserving(map);
  j["completely_positive"] = ncp::is_completely_positive(map);
  write_output(out, j.dump(2) + "\n");
}

void run_reduce(const std::string& hamiltonian_file, double time,
                const std::string& env_means_file, const std::string& out) {
  const ncp::BipartiteHamiltonian h = ncp::read_hamiltonian(hamiltonian_file);
  const ncp::EnvMeans env = ncp::read_env_means(env_means_file);
  if (env.dim_a != h.dim_a || env.dim_b != h.dim_b) {
    throw std::invalid_argument(
        "environment means and Hamiltonian dimensions disagree");
  }
  const ncp::OperatorBasis basis_a = ncp::build_basis(h.dim_a);
  const ncp::OperatorBasis basis_b = ncp::build_basis(h.dim_b);
  const ncp::TransferMatrix tm =
      ncp::transfer_matrix(h, time, basis_a, basis_b);
  const double orthogonality =
      (tm.t.transpose() * tm.t -
       ncp::RealMatrix::Identity(tm.t.rows(), tm.t.cols()))
          .cwiseAbs()
          .maxCoeff();
  const ncp::ReducedAffineMap ram = ncp::reduce(tm, env);
  const ncp::MatrixMap map = ncp::reduced_matrix_map(ram, basis_a);

  json j;
  j["dimA"] = h.dim_a;
  j["dimB"] = h.dim_b;
  j["time"] = time;
  j["transfer_orthogonality_residual"] = orthogonality;
  j["drift"] = std::vector<double>(ram.drift.data(),
                                   ram.drift.data() + ram.drift.size());
  j["block"] = real_rows(ram.block);
  j["b_matrix"] = complex_entries(map.b);
  j["hermiticity_preserving"] = ncp::is_hermitian(map.b);
  j["trace_preserving"] = ncp::is_trace_preserving(map);
  j["completely_positive"] = ncp::is_completely_positive(map);
  write_output(out, j.dump(2) + "\n");
}

void run_pechukas(const std::string& assignment_file, int samples,
                  std::uint64_t seed, const std::string& out) {
  if (samples < 0) {
    throw std::invalid_argument("samples must be nonnegative");
  }
  const ncp::AssignmentMap am = ncp::read_assignment(assignment_file);
  const double consistency = ncp::partial_trace_consistency(am);

  double max_residual = 0.0;
  double max_spread = 0.0;
  double min_eig_probes = 0.0;
  for (int j = 0; j < am.dim_a; ++j) {
    for (int k = j + 1; k < am.dim_a; ++k) {
      ncp::Vector e1 = ncp::Vector::Zero(am.dim_a);
      ncp::Vector e2 = ncp::Vector::Zero(am.dim_a);
      e1(j) = 1.0;
      e2(k) = 1.0;
      const ncp::ConstantEnvironmentCheck check =
          ncp::check_constant_rho_b(am, e1, e2, M_PI / 4.0, 0.0);
      for (const ncp::FactorizationCheck& fc : check.states) {
        max_residual = std::max(max_residual, fc.product_residual);
        min_eig_probes = std::min(min_eig_probes, fc.min_eigenvalue);
      }
      max_spread = std::max(max_spread, check.max_pairwise_distance);
    }
  }
  const ncp::PositivityHunt hunt =
      ncp::hunt_positivity_failure(am, samples, seed);
  const bool product = consistency < 1e-10 && max_residual < 1e-9 &&
                       max_spread < 1e-9 && hunt.failures == 0;

  json j;
  j["dimA"] = am.dim_a;
  j["dimB"] = am.dim_b;
  j["samples"] = samples;
  j["seed"] = seed;
  j["partial_trace_consistency"] = consistency;
  j["max_product_residual"] = max_residual;
  j["max_rho_b_spread"] = max_spread;
  j["probe_min_eigenvalue"] = min_eig_probes;
  json hj;
  hj["samples_checked"] = hunt.samples_checked;
  hj["failures"] = hunt.failures;
  hj["min_eigenvalue"] = hunt.min_eigenvalue;
  hj["worst_state"] = complex_entries(hunt.worst_state);
  j["hunt"] = std::move(hj);
  j["product"] = product;
  write_output(out, j.dump(2) + "\n");
}

void run_intersect(double c, double grid_step, int t_samples,
                   const std::string& out) {
  check_grid_step(grid_step);
  check_t_samples(t_samples);
  const ncp::IntersectionReport rep =
      ncp::intersection_equals_compatibility(c, grid_step, t_samples);
  json j;
  j["c"] = rep.c;
  j["grid_step"] = rep.grid_step;
  j["t_samples"] = rep.t_samples;
  j["points_in_ball"] = rep.points_in_ball;
  j["compatible_points"] = rep.compatible_points;
  j["inside_failures"] = rep.inside_failures;
  j["outside_passes"] = rep.outside_passes;
  j["boundary_exceptions"] = rep.boundary_exceptions;
  j["interior_violations"] = rep.interior_violations;
  j["max_exception_distance"] = rep.max_exception_distance;
  j["equivalent"] = rep.equivalent;
  write_output(out, j.dump(2) + "\n");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Reduced-dynamics map toolkit: eigenvalue curves, signed "
      "decompositions, state-domain geometry, reductions, and assignment "
      "checks"};
  app.require_subcommand(1);

  struct {
    double a1 = -0.5, a2 = 0.5;
    int t_samples = 513;
    std::string format = "csv", out = "-";
  } eig;
  CLI::App* c_eig = app.add_subcommand(
      "eigencurve",
      "Analytic vs numeric eigenvalues of the reduced map's B matrix over "
      "one period");
  c_eig->add_option("--a1", eig.a1, "correlation component a1 = -<S2 X1>")
      ->capture_default_str();
  c_eig->add_option("--a2", eig.a2, "correlation component a2 = <S1 X1>")
      ->capture_default_str();
  c_eig->add_option("--t-samples", eig.t_samples,
                    "number of omega*t samples over [0, 2pi]")
      ->capture_default_str();
  c_eig->add_option("--format", eig.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  c_eig->add_option("--out", eig.out, "output path (- for stdout)")
      ->capture_default_str();
  c_eig->callback(
      [&] { run_eigencurve(eig.a1, eig.a2, eig.t_samples, eig.format, eig.out); });

  struct {
    double c = std::sqrt(0.5), grid_step = 0.02;
    std::string section = "minus3", format = "csv", out = "-";
  } dom;
  CLI::App* c_dom = app.add_subcommand(
      "domain", "Compatibility-domain boundary sections or membership grid");
  c_dom->add_option("--c", dom.c, "transverse correlation strength, in [0, 1)")
      ->capture_default_str();
  c_dom->add_option("--section", dom.section,
                    "minus3 | plusminus | plus3 | grid3d")
      ->check(CLI::IsMember({"minus3", "plusminus", "plus3", "grid3d"}))
      ->capture_default_str();
  c_dom->add_option("--grid-step", dom.grid_step,
                    "grid resolution, in (0, 0.5]")
      ->capture_default_str();
  c_dom->add_option("--format", dom.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  c_dom->add_option("--out", dom.out, "output path (- for stdout)")
      ->capture_default_str();
  c_dom->callback(
      [&] { run_domain(dom.c, dom.section, dom.grid_step, dom.format, dom.out); });

  struct {
    double a1 = -0.5, a2 = 0.5, omega_t = M_PI / 10.0, grid_step = 0.02;
    std::string format = "csv", out = "-";
  } pos;
  CLI::App* c_pos = app.add_subcommand(
      "positivity",
      "Positivity-domain boundary surface samples with unit-ball clipping "
      "flags");
  c_pos->add_option("--a1", pos.a1, "correlation component a1")
      ->capture_default_str();
  c_pos->add_option("--a2", pos.a2, "correlation component a2")
      ->capture_default_str();
  c_pos->add_option("--omega-t", pos.omega_t, "dimensionless time")
      ->capture_default_str();
  c_pos->add_option("--grid-step", pos.grid_step,
                    "angular resolution, in (0, 0.5]")
      ->capture_default_str();
  c_pos->add_option("--format", pos.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  c_pos->add_option("--out", pos.out, "output path (- for stdout)")
      ->capture_default_str();
  c_pos->callback([&] {
    run_positivity(pos.a1, pos.a2, pos.omega_t, pos.grid_step, pos.format,
                   pos.out);
  });

  struct {
    std::string map_file, out = "-";
  } dec;
  CLI::App* c_dec = app.add_subcommand(
      "decompose", "Signed operator-sum decomposition of a map file");
  c_dec->add_option("--map", dec.map_file, "map JSON file")->required();
  c_dec->add_option("--out", dec.out, "output path (- for stdout)")
      ->capture_default_str();
  c_dec->callback([&] { run_decompose(dec.map_file, dec.out); });

  struct {
    std::string hamiltonian_file, env_means_file, out = "-";
    double time = 0.0;
  } red;
  CLI::App* c_red = app.add_subcommand(
      "reduce",
      "Reduced affine map and induced B matrix from a joint Hamiltonian and "
      "frozen environment means");
  c_red->add_option("--hamiltonian", red.hamiltonian_file,
                    "Hamiltonian JSON file")
      ->required();
  c_red->add_option("--time", red.time, "evolution time")->required();
  c_red->add_option("--env-means", red.env_means_file,
                    "environment/correlation means JSON file")
      ->required();
  c_red->add_option("--out", red.out, "output path (- for stdout)")
      ->capture_default_str();
  c_red->callback(
      [&] { run_reduce(red.hamiltonian_file, red.time, red.env_means_file, red.out); });

  struct {
    std::string assignment_file, out = "-";
    int samples = 500;
    std::uint64_t seed = 1;
  } pec;
  CLI::App* c_pec = app.add_subcommand(
      "pechukas",
      "Assignment-map checks: trace consistency, pure-state factorization, "
      "positivity hunt");
  c_pec->add_option("--assignment", pec.assignment_file,
                    "assignment JSON file")
      ->required();
  c_pec->add_option("--samples", pec.samples, "random pure states to try")
      ->capture_default_str();
  c_pec->add_option("--seed", pec.seed, "random seed")->capture_default_str();
  c_pec->add_option("--out", pec.out, "output path (- for stdout)")
      ->capture_default_str();
  c_pec->callback(
      [&] { run_pechukas(pec.assignment_file, pec.samples, pec.seed, pec.out); });

  struct {
    double c = std::sqrt(0.5), grid_step = 0.02;
    int t_samples = 720;
    std::string out = "-";
  } its;
  CLI::App* c_its = app.add_subcommand(
      "intersect",
      "Grid check that the compatibility domain equals the intersection of "
      "positivity domains over time");
  c_its->add_option("--c", its.c, "transverse correlation strength, in [0, 1)")
      ->capture_default_str();
  c_its->add_option("--grid-step", its.grid_step,
                    "grid resolution, in (0, 0.5]")
      ->capture_default_str();
  c_its->add_option("--t-samples", its.t_samples,
                    "time samples over [0, 2pi)")
      ->capture_default_str();
  c_its->add_option("--out", its.out, "output path (- for stdout)")
      ->capture_default_str();
  c_its->callback(
      [&] { run_intersect(its.c, its.grid_step, its.t_samples, its.out); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  } catch (const ncp::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
