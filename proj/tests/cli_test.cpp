#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ncp/json_io.hpp"
#include "ncp/two_qubit.hpp"
#include "test_util.hpp"

using namespace ncp;
using testutil::max_diff;

namespace {

const char kBin[] = NCPMAP_BIN;

int run_shell(const std::string& command) {
  const int status = std::system(command.c_str());
  REQUIRE(status != -1);
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

int run_cli(const std::string& args) {
  return run_shell(std::string("\"") + kBin + "\" " + args +
                   " > /dev/null 2>&1");
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

struct TempFile {
  std::filesystem::path path;
  explicit TempFile(const std::string& name)
      : path(std::filesystem::temp_directory_path() / name) {}
  ~TempFile() { std::filesystem::remove(path); }
  std::string str() const { return path.string(); }
};

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) {
    cells.push_back(cell);
  }
  return cells;
}

struct Table {
  std::string meta;
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

Table read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  Table table;
  std::string line;
  REQUIRE(std::getline(in, line));
  REQUIRE(!line.empty());
  REQUIRE(line[0] == '#');
  table.meta = line;
  REQUIRE(std::getline(in, line));
  table.header = split_csv(line);
  while (std::getline(in, line)) {
    if (line.empty()) {
      continue;
    }
    std::vector<double> row;
    for (const std::string& cell : split_csv(line)) {
      row.push_back(std::stod(cell));
    }
    REQUIRE(row.size() == table.header.size());
    table.rows.push_back(std::move(row));
  }
  return table;
}

nlohmann::json read_json(const std::filesystem::path& path) {
  return nlohmann::json::parse(slurp(path));
}

Matrix matrix_from_pairs(const nlohmann::json& entries, int rows, int cols) {
  REQUIRE(static_cast<int>(entries.size()) == rows * cols);
  Matrix m(rows, cols);
  for (int i = 0; i < rows * cols; ++i) {
    m(i / cols, i % cols) = Complex(entries[static_cast<std::size_t>(i)][0],
                                    entries[static_cast<std::size_t>(i)][1]);
  }
  return m;
}

}  // namespace

TEST_CASE("eigencurve hits the exact values at 0, pi, and 2 pi") {
  TempFile out("ncp_cli_eigencurve.csv");
  REQUIRE(run_cli("eigencurve --out " + out.str()) == 0);
  const Table table = read_csv(out.path);
  REQUIRE(table.header.size() == 10);
  CHECK(table.header[0] == "omega_t");
  CHECK(table.header[9] == "deviation");
  REQUIRE(table.rows.size() == 513);

  CHECK(table.rows[0][0] == 0.0);
  CHECK(std::abs(table.rows[0][1] - 2.0) < 1e-12);
  CHECK(std::abs(table.rows[0][2]) < 1e-12);
  CHECK(std::abs(table.rows[0][3]) < 1e-12);
  CHECK(std::abs(table.rows[0][4]) < 1e-12);

  CHECK(table.rows[256][0] == M_PI);
  CHECK(std::abs(table.rows[256][3]) < 1e-12);
  CHECK(std::abs(table.rows[256][4]) < 1e-12);

  CHECK(table.rows[512][0] == 2.0 * M_PI);
  CHECK(std::abs(table.rows[512][1] - 2.0) < 1e-12);
  CHECK(std::abs(table.rows[512][2]) < 1e-12);
  CHECK(std::abs(table.rows[512][3]) < 1e-12);
  CHECK(std::abs(table.rows[512][4]) < 1e-12);

  for (const auto& row : table.rows) {
    CHECK(row[9] < 1e-10);
  }
}

TEST_CASE("eigencurve output is deterministic and matches stdout") {
  TempFile first("ncp_cli_eig_a.csv");
  TempFile second("ncp_cli_eig_b.csv");
  TempFile piped("ncp_cli_eig_c.csv");
  REQUIRE(run_cli("eigencurve --t-samples 16 --out " + first.str()) == 0);
  REQUIRE(run_cli("eigencurve --t-samples 16 --out " + second.str()) == 0);
  REQUIRE(run_shell(std::string("\"") + kBin +
                    "\" eigencurve --t-samples 16 > " + piped.str() +
                    " 2>/dev/null") == 0);
  CHECK(slurp(first.path) == slurp(second.path));
  CHECK(slurp(first.path) == slurp(piped.path));
}

TEST_CASE("eigencurve emits the same table as json") {
  TempFile out("ncp_cli_eig.json");
  REQUIRE(run_cli("eigencurve --t-samples 16 --format json --out " +
                  out.str()) == 0);
  const nlohmann::json j = read_json(out.path);
  CHECK(j["t_samples"] == 16);
  REQUIRE(j["columns"].size() == 10);
  REQUIRE(j["rows"].size() == 16);
  CHECK(std::abs(j["rows"][0][1].get<double>() - 2.0) < 1e-12);
}

TEST_CASE("domain sections satisfy their curve equations from the CLI") {
  TempFile out("ncp_cli_domain.csv");

  REQUIRE(run_cli("domain --section minus3 --grid-step 0.1 --out " +
                  out.str()) == 0);
  Table table = read_csv(out.path);
  REQUIRE(table.rows.size() >= 16);
  for (const auto& row : table.rows) {
    CHECK(std::abs(row[0] * row[0] + row[1] * row[1] - 0.5) < 1e-12);
  }

  REQUIRE(run_cli("domain --section plusminus --c 0.6 --grid-step 0.1 --out " +
                  out.str()) == 0);
  table = read_csv(out.path);
  for (const auto& row : table.rows) {
    CHECK(std::abs(row[0] * row[0] + row[1] * row[1] / 0.64 - 1.0) < 1e-12);
  }

  for (const std::string section : {"minus3", "plusminus", "plus3"}) {
    REQUIRE(run_cli("domain --section " + section +
                    " --c 0 --grid-step 0.1 --out " + out.str()) == 0);
    table = read_csv(out.path);
    for (const auto& row : table.rows) {
      CHECK(std::abs(row[0] * row[0] + row[1] * row[1] - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("domain membership grid from the CLI") {
  TempFile out("ncp_cli_grid.csv");
  REQUIRE(run_cli("domain --section grid3d --grid-step 0.25 --out " +
                  out.str()) == 0);
  const Table table = read_csv(out.path);
  REQUIRE(table.header.size() == 4);
  REQUIRE(table.rows.size() == 729);
  long inside = 0;
  for (const auto& row : table.rows) {
    CHECK((row[3] == 0.0 || row[3] == 1.0));
    inside += row[3] == 1.0 ? 1 : 0;
  }
  CHECK(inside > 0);
  CHECK(inside < 729);
}

TEST_CASE("positivity boundary at time zero is the unit sphere") {
  TempFile out("ncp_cli_pos0.csv");
  REQUIRE(run_cli("positivity --omega-t 0 --grid-step 0.2 --out " +
                  out.str()) == 0);
  const Table table = read_csv(out.path);
  CHECK(table.meta.find("boundary=preimage") != std::string::npos);
  CHECK(table.meta.find("north_pole_included=1") != std::string::npos);
  REQUIRE(table.rows.size() == 17 * 31);
  for (const auto& row : table.rows) {
    const double r2 = row[2] * row[2] + row[3] * row[3] + row[4] * row[4];
    CHECK(std::abs(r2 - 1.0) < 1e-12);
    CHECK(row[5] == 1.0);
  }
}

TEST_CASE("positivity boundary degenerates to a slab at the quarter period") {
  TempFile out("ncp_cli_pos_slab.csv");
  REQUIRE(run_cli(
              "positivity --omega-t 1.5707963267948966 --grid-step 0.2 "
              "--out " +
              out.str()) == 0);
  const Table table = read_csv(out.path);
  CHECK(table.meta.find("boundary=slab") != std::string::npos);
  CHECK(table.meta.find("north_pole_included=0") != std::string::npos);
  const double s3_max = std::sqrt(0.5);
  for (const auto& row : table.rows) {
    CHECK(std::abs(row[4]) <= s3_max + 1e-12);
    const double r2 = row[2] * row[2] + row[3] * row[3] + row[4] * row[4];
    CHECK(r2 <= 1.0 + 1e-12);
    CHECK(row[5] == 1.0);
  }
}

TEST_CASE("decompose reports a single identity term for the identity map") {
  TempFile map_file("ncp_cli_idmap.json");
  MatrixMap id2;
  id2.dim = 2;
  id2.b = Matrix::Zero(4, 4);
  id2.b(0, 0) = 1.0;
  id2.b(0, 3) = 1.0;
  id2.b(3, 0) = 1.0;
  id2.b(3, 3) = 1.0;
  write_matrix_map(map_file.str(), id2);

  TempFile out("ncp_cli_decompose.json");
  REQUIRE(run_cli("decompose --map " + map_file.str() + " --out " +
                  out.str()) == 0);
  const nlohmann::json j = read_json(out.path);
  CHECK(j["dim"] == 2);
  REQUIRE(j["eigenvalues"].size() == 1);
  CHECK(std::abs(j["eigenvalues"][0].get<double>() - 2.0) < 1e-12);
  REQUIRE(j["signs"].size() == 1);
  CHECK(j["signs"][0] == 1);
  const Matrix c = matrix_from_pairs(j["c_matrices"][0], 2, 2);
  CHECK(max_diff(c, Matrix::Identity(2, 2)) < 1e-12);
  CHECK(j["reconstruction_residual"].get<double>() < 1e-12);
  CHECK(j["orthogonality_residual"].get<double>() < 1e-12);
  CHECK(j["completeness_residual"].get<double>() < 1e-12);
  CHECK(j["trace_preserving"] == true);
  CHECK(j["completely_positive"] == true);
}

TEST_CASE("reduce recovers the closed-form two-qubit map") {
  TempFile h_file("ncp_cli_h.json");
  write_hamiltonian(h_file.str(), {2, 2, 0.5 * tensor(pauli(3), pauli(1))});

  TempFile env_file("ncp_cli_env.json");
  EnvMeans env{2, 2, RealMatrix::Zero(4, 3)};
  env.means(1, 0) = 0.5;   // <S1 X1> = a2
  env.means(2, 0) = 0.5;   // <S2 X1> = -a1
  write_env_means(env_file.str(), env);

  TempFile out("ncp_cli_reduce.json");
  REQUIRE(run_cli("reduce --hamiltonian " + h_file.str() +
                  " --time 0.3 --env-means " + env_file.str() + " --out " +
                  out.str()) == 0);
  const nlohmann::json j = read_json(out.path);
  CHECK(j["dimA"] == 2);
  CHECK(j["dimB"] == 2);
  CHECK(j["transfer_orthogonality_residual"].get<double>() < 1e-12);

  const double s = std::sin(0.3);
  const double c = std::cos(0.3);
  REQUIRE(j["drift"].size() == 3);
  CHECK(std::abs(j["drift"][0].get<double>() + 0.5 * s) < 1e-12);
  CHECK(std::abs(j["drift"][1].get<double>() - 0.5 * s) < 1e-12);
  CHECK(std::abs(j["drift"][2].get<double>()) < 1e-12);
  REQUIRE(j["block"].size() == 3);
  CHECK(std::abs(j["block"][0][0].get<double>() - c) < 1e-12);
  CHECK(std::abs(j["block"][1][1].get<double>() - c) < 1e-12);
  CHECK(std::abs(j["block"][2][2].get<double>() - 1.0) < 1e-12);
  CHECK(std::abs(j["block"][0][1].get<double>()) < 1e-12);

  const Matrix b = matrix_from_pairs(j["b_matrix"], 4, 4);
  const MatrixMap closed = reduced_map(CorrelationParams(-0.5, 0.5, 0.3));
  CHECK(max_diff(b, closed.b) < 1e-12);
  CHECK(j["hermiticity_preserving"] == true);
  CHECK(j["trace_preserving"] == true);
  CHECK(j["completely_positive"] == false);
}

TEST_CASE("pechukas certifies products and flags the perturbed assignment") {
  TempFile product_file("ncp_cli_product.json");
  write_assignment(product_file.str(),
                   product_assignment(2, 2, 0.5 * Matrix::Identity(2, 2)));
  TempFile out("ncp_cli_pechukas.json");
  REQUIRE(run_cli("pechukas --assignment " + product_file.str() +
                  " --samples 50 --seed 3 --out " + out.str()) == 0);
  nlohmann::json j = read_json(out.path);
  CHECK(j["product"] == true);
  CHECK(j["partial_trace_consistency"].get<double>() < 1e-10);
  CHECK(j["hunt"]["failures"] == 0);
  CHECK(j["hunt"]["samples_checked"] == 50 + 9 * 16 * 2);

  TempFile perturbed_file("ncp_cli_perturbed.json");
  write_assignment(perturbed_file.str(), perturbed_assignment(2, 2, 0.1));
  REQUIRE(run_cli("pechukas --assignment " + perturbed_file.str() +
                  " --samples 50 --seed 3 --out " + out.str()) == 0);
  j = read_json(out.path);
  CHECK(j["product"] == false);
  CHECK(j["hunt"]["failures"].get<int>() > 0);
  CHECK(std::abs(j["hunt"]["min_eigenvalue"].get<double>() + 0.025) < 1e-9);
  CHECK(std::abs(j["probe_min_eigenvalue"].get<double>() + 0.025) < 1e-9);
  CHECK(std::abs(j["max_rho_b_spread"].get<double>() - 0.025) < 1e-9);
}

TEST_CASE("intersect finds the domains equivalent on a coarse grid") {
  TempFile out("ncp_cli_intersect.json");
  REQUIRE(run_cli("intersect --grid-step 0.2 --t-samples 72 --out " +
                  out.str()) == 0);
  const nlohmann::json j = read_json(out.path);
  CHECK(j["equivalent"] == true);
  CHECK(j["inside_failures"] == 0);
  CHECK(j["interior_violations"] == 0);
  CHECK(j["compatible_points"].get<long>() > 0);
}

TEST_CASE("exit codes separate validation failures from I/O failures") {
  CHECK(run_cli("") == 1);
  CHECK(run_cli("--help") == 0);
  CHECK(run_cli("eigencurve --help") == 0);
  CHECK(run_cli("bogus") == 1);
  CHECK(run_cli("eigencurve --format xml") == 1);
  CHECK(run_cli("eigencurve --t-samples 4") == 1);
  CHECK(run_cli("eigencurve --a1 0.9 --a2 0.9") == 1);
  CHECK(run_cli("domain --section bogus") == 1);
  CHECK(run_cli("domain --c 1.5") == 1);
  CHECK(run_cli("domain --grid-step 0.7") == 1);
  CHECK(run_cli("positivity --grid-step 0") == 1);
  CHECK(run_cli("decompose") == 1);
  CHECK(run_cli("decompose --map /nonexistent/dir/map.json") == 2);
  CHECK(run_cli("pechukas --assignment /nonexistent/dir/a.json") == 2);
  CHECK(run_cli("eigencurve --out /nonexistent/dir/out.csv") == 2);

  // malformed content is a validation failure, not an I/O failure
  TempFile bad("ncp_cli_bad.json");
  std::ofstream(bad.path) << "{\"dim\": 2}";
  CHECK(run_cli("decompose --map " + bad.str()) == 1);

  // mismatched input dimensions
  TempFile h_file("ncp_cli_h23.json");
  write_hamiltonian(h_file.str(),
                    {2, 2, Matrix::Zero(4, 4)});
  TempFile env_file("ncp_cli_env23.json");
  write_env_means(env_file.str(), EnvMeans{2, 3, RealMatrix::Zero(4, 8)});
  CHECK(run_cli("reduce --hamiltonian " + h_file.str() +
                " --time 0.5 --env-means " + env_file.str()) == 1);
}
