#include "ncp/json_io.hpp"

#include <cmath>
#include <fstream>
#include <string>

#include <json.hpp>

namespace ncp {

namespace {

using json = nlohmann::ordered_json;

json load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open " + path);
  }
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

void save_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot open " + path + " for writing");
  }
  out << j.dump(2) << '\n';
  if (!out) {
    throw IoError("failed writing " + path);
  }
}

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw std::invalid_argument(std::string("missing field \"") + key + "\"");
  }
  return j[key];
}

int read_dim(const json& j, const char* key) {
  const json& field = require(j, key);
  if (!field.is_number_integer() || field.get<int>() < 1) {
    throw std::invalid_argument(std::string("field \"") + key +
                                "\" must be a positive integer");
  }
  return field.get<int>();
}

// Entries are a flat row-major list of [re, im] pairs.
Matrix parse_complex_matrix(const json& j, int rows, int cols,
                            const std::string& what) {
  const long total = static_cast<long>(rows) * cols;
  if (!j.is_array() || static_cast<long>(j.size()) != total) {
    throw std::invalid_argument(what + " must have " + std::to_string(total) +
                                " row-major entries");
  }
  Matrix m(rows, cols);
  for (long i = 0; i < total; ++i) {
    const json& e = j[static_cast<std::size_t>(i)];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() ||
        !e[1].is_number()) {
      throw std::invalid_argument(what + " entries must be [re, im] pairs");
    }
    m(i / cols, i % cols) = Complex(e[0].get<double>(), e[1].get<double>());
  }
  return m;
}

json dump_complex_matrix(const Matrix& m) {
  json entries = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      entries.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
    }
  }
  return entries;
}

}  // namespace

MatrixMap read_matrix_map(const std::string& path) {
  const json j = load_file(path);
  MatrixMap map;
  map.dim = read_dim(j, "dim");
  const int n2 = map.dim * map.dim;
  map.b = parse_complex_matrix(require(j, "b_matrix"), n2, n2, "b_matrix");
  return map;
}

void write_matrix_map(const std::string& path, const MatrixMap& map) {
  json j;
  j["dim"] = map.dim;
  j["b_matrix"] = dump_complex_matrix(map.b);
  save_file(path, j);
}

BipartiteHamiltonian read_hamiltonian(const std::string& path) {
  const json j = load_file(path);
  BipartiteHamiltonian h;
  h.dim_a = read_dim(j, "dimA");
  h.dim_b = read_dim(j, "dimB");
  const int dim = h.dim_a * h.dim_b;
  h.h = parse_complex_matrix(require(j, "matrix"), dim, dim, "matrix");
  if (!is_hermitian(h.h)) {
    throw std::invalid_argument(path + ": matrix is not Hermitian");
  }
  return h;
}

void write_hamiltonian(const std::string& path,
                       const BipartiteHamiltonian& h) {
  json j;
  j["dimA"] = h.dim_a;
  j["dimB"] = h.dim_b;
  j["matrix"] = dump_complex_matrix(h.h);
  save_file(path, j);
}

EnvMeans read_env_means(const std::string& path) {
  const json j = load_file(path);
  EnvMeans env;
  env.dim_a = read_dim(j, "dimA");
  env.dim_b = read_dim(j, "dimB");
  const int rows = env.dim_a * env.dim_a;
  const int cols = env.dim_b * env.dim_b - 1;
  const json& means = require(j, "means");
  if (!means.is_array() || static_cast<int>(means.size()) != rows) {
    throw std::invalid_argument("means must have " + std::to_string(rows) +
                                " rows");
  }
  env.means = RealMatrix(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const json& row = means[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != cols) {
      throw std::invalid_argument("means rows must have " +
                                  std::to_string(cols) + " entries");
    }
    for (int c = 0; c < cols; ++c) {
      const json& e = row[static_cast<std::size_t>(c)];
      if (!e.is_number()) {
        throw std::invalid_argument("means entries must be numbers");
      }
      env.means(r, c) = e.get<double>();
    }
  }
  return env;
}

void write_env_means(const std::string& path, const EnvMeans& env) {
  json j;
  j["dimA"] = env.dim_a;
  j["dimB"] = env.dim_b;
  json rows = json::array();
  for (Eigen::Index r = 0; r < env.means.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < env.means.cols(); ++c) {
      row.push_back(env.means(r, c));
    }
    rows.push_back(std::move(row));
  }
  j["means"] = std::move(rows);
  save_file(path, j);
}

AssignmentMap read_assignment(const std::string& path) {
  const json j = load_file(path);
  const int dim_a = read_dim(j, "dimA");
  const int dim_b = read_dim(j, "dimB");
  const int rows = dim_a * dim_a * dim_b * dim_b;
  const int cols = dim_a * dim_a;
  const Matrix raw =
      parse_complex_matrix(require(j, "b_matrix"), rows, cols, "b_matrix");
  if (raw.imag().cwiseAbs().maxCoeff() > 1e-12) {
    throw std::invalid_argument(path + ": assignment matrix must be real");
  }
  return make_assignment(dim_a, dim_b, raw.real());
}

void write_assignment(const std::string& path, const AssignmentMap& am) {
  json j;
  j["dimA"] = am.dim_a;
  j["dimB"] = am.dim_b;
  j["b_matrix"] = dump_complex_matrix(am.l.cast<Complex>());
  save_file(path, j);
}

}  // namespace ncp
