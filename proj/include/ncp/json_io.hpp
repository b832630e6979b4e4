#pragma once

#include <stdexcept>
#include <string>

#include "ncp/assignment.hpp"
#include "ncp/matrix_map.hpp"
#include "ncp/reduction.hpp"

namespace ncp {

// Failure to open or write a file.  Malformed content throws
// std::invalid_argument instead.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Complex matrices are stored as flat row-major lists of [re, im] pairs.

// {"dim": N, "b_matrix": N^2 * N^2 pairs}
MatrixMap read_matrix_map(const std::string& path);
void write_matrix_map(const std::string& path, const MatrixMap& map);

// {"dimA": N, "dimB": M, "matrix": (NM)^2 pairs}; must be Hermitian.
BipartiteHamiltonian read_hamiltonian(const std::string& path);
void write_hamiltonian(const std::string& path,
                       const BipartiteHamiltonian& h);

// {"dimA": N, "dimB": M, "means": N^2 rows of M^2-1 reals}
EnvMeans read_env_means(const std::string& path);
void write_env_means(const std::string& path, const EnvMeans& env);

// {"dimA": N, "dimB": M, "b_matrix": (NM)^2 * N^2 pairs}; imaginary parts
// must vanish.
AssignmentMap read_assignment(const std::string& path);
void write_assignment(const std::string& path, const AssignmentMap& am);

}  // namespace ncp
