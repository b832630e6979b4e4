#include "ncp/reduction.hpp"

#include <cmath>

namespace ncp {

namespace {

std::vector<Matrix> default_seeds(int dim) {
  std::vector<Matrix> seeds;
  seeds.reserve(static_cast<std::size_t>(dim) * dim - 1);
  for (int j = 0; j < dim; ++j)
    for (int k = j + 1; k < dim; ++k) {
      Matrix s = Matrix::Zero(dim, dim);
      s(j, k) = 1;
      s(k, j) = 1;
      seeds.push_back(s);
    }
  for (int j = 0; j < dim; ++j)
    for (int k = j + 1; k < dim; ++k) {
      Matrix s = Matrix::Zero(dim, dim);
      s(j, k) = Complex(0, -1);
      s(k, j) = Complex(0, 1);
      seeds.push_back(s);
    }
  for (int l = 1; l < dim; ++l) {
    Matrix s = Matrix::Zero(dim, dim);
    for (int j = 0; j < l; ++j) s(j, j) = 1;
    s(l, l) = -l;
    seeds.push_back(s);
  }
  return seeds;
}

void check_hamiltonian(const BipartiteHamiltonian& h, const char* who) {
  const int nm = h.dim_a * h.dim_b;
  if (h.dim_a < 1 || h.dim_b < 1 || h.h.rows() != nm || h.h.cols() != nm)
    throw std::invalid_argument(std::string(who) +
                                ": Hamiltonian dimension mismatch");
  if (!is_hermitian(h.h))
    throw std::invalid_argument(std::string(who) +
                                ": Hamiltonian is not Hermitian");
}

}  // namespace

OperatorBasis build_basis(int dim) { return build_basis(dim, default_seeds(dim)); }

OperatorBasis build_basis(int dim, const std::vector<Matrix>& seeds) {
  if (dim < 1) throw std::invalid_argument("build_basis: dim must be >= 1");
  if (seeds.size() != static_cast<std::size_t>(dim) * dim - 1)
    throw std::invalid_argument("build_basis: need dim^2 - 1 seeds");
  OperatorBasis basis;
  basis.dim = dim;
  basis.f.reserve(static_cast<std::size_t>(dim) * dim);
  basis.f.push_back(Matrix::Identity(dim, dim));
  for (const Matrix& seed : seeds) {
    if (seed.rows() != dim || seed.cols() != dim || !is_hermitian(seed))
      throw std::invalid_argument("build_basis: seed is not Hermitian");
    Matrix g = seed;
    for (const Matrix& f : basis.f)
      g -= (hs_inner(f, g).real() / dim) * f;
    const double norm = std::sqrt(hs_inner(g, g).real());
    if (norm < 1e-10)
      throw std::invalid_argument(
          "build_basis: seed is linearly dependent on earlier elements");
    basis.f.push_back(g * (std::sqrt(double(dim)) / norm));
  }
  return basis;
}

TransferMatrix transfer_matrix(const BipartiteHamiltonian& h, double time,
                               const OperatorBasis& basis_a,
                               const OperatorBasis& basis_b) {
  check_hamiltonian(h, "transfer_matrix");
  if (basis_a.dim != h.dim_a || basis_b.dim != h.dim_b)
    throw std::invalid_argument("transfer_matrix: basis dimension mismatch");
  const int na2 = h.dim_a * h.dim_a;
  const int nb2 = h.dim_b * h.dim_b;
  const int total = na2 * nb2;
  const double scale = 1.0 / (h.dim_a * h.dim_b);

  std::vector<Matrix> f(static_cast<std::size_t>(total));
  for (int mu = 0; mu < na2; ++mu)
    for (int nu = 0; nu < nb2; ++nu)
      f[static_cast<std::size_t>(mu * nb2 + nu)] =
          tensor(basis_a.f[static_cast<std::size_t>(mu)],
                 basis_b.f[static_cast<std::size_t>(nu)]);

  const Matrix u = matrix_exp_unitary(h.h, time);
  TransferMatrix tm;
  tm.dim_a = h.dim_a;
  tm.dim_b = h.dim_b;
  tm.time = time;
  tm.t.resize(total, total);
  for (int row = 0; row < total; ++row) {
    const Matrix evolved =
        u * f[static_cast<std::size_t>(row)] * u.adjoint();
    for (int col = 0; col < total; ++col) {
      const Complex val =
          scale *
          evolved.cwiseProduct(f[static_cast<std::size_t>(col)].transpose())
              .sum();
      if (std::abs(val.imag()) > 1e-10)
        throw std::runtime_error("transfer_matrix: entry has imaginary part");
      tm.t(row, col) = val.real();
    }
  }
  return tm;
}

ReducedAffineMap reduce(const TransferMatrix& tm, const EnvMeans& env) {
  const int na2 = tm.dim_a * tm.dim_a;
  const int nb2 = tm.dim_b * tm.dim_b;
  if (env.dim_a != tm.dim_a || env.dim_b != tm.dim_b ||
      env.means.rows() != na2 || env.means.cols() != nb2 - 1)
    throw std::invalid_argument("reduce: mean table dimension mismatch");
  const double bound = std::sqrt(double(tm.dim_b)) + 1e-9;
  if (env.means.cwiseAbs().maxCoeff() > bound)
    throw std::invalid_argument("reduce: mean exceeds the operator norm bound");

  ReducedAffineMap out;
  out.dim = tm.dim_a;
  out.drift = RealVector::Zero(na2 - 1);
  out.block.resize(na2 - 1, na2 - 1);
  for (int mu = 1; mu < na2; ++mu) {
    double d = 0;
    for (int alpha = 0; alpha < na2; ++alpha)
      for (int beta = 1; beta < nb2; ++beta)
        d += tm.t(mu * nb2, alpha * nb2 + beta) * env.means(alpha, beta - 1);
    out.drift(mu - 1) = d;
    for (int alpha = 1; alpha < na2; ++alpha)
      out.block(mu - 1, alpha - 1) = tm.t(mu * nb2, alpha * nb2);
  }
  return out;
}

double schrodinger_crosscheck(const BipartiteHamiltonian& h, double time,
                              const Eigen::Ref<const Matrix>& initial_state) {
  check_hamiltonian(h, "schrodinger_crosscheck");
  const int nm = h.dim_a * h.dim_b;
  if (initial_state.rows() != nm || initial_state.cols() != nm)
    throw std::invalid_argument("schrodinger_crosscheck: state dimension");
  if (!is_hermitian(initial_state) ||
      std::abs(initial_state.trace().real() - 1.0) > 1e-10 ||
      !is_psd(initial_state, 1e-10))
    throw std::invalid_argument(
        "schrodinger_crosscheck: initial_state is not a density matrix");

  const OperatorBasis basis_a = build_basis(h.dim_a);
  const OperatorBasis basis_b = build_basis(h.dim_b);
  const int na2 = h.dim_a * h.dim_a;
  const int nb2 = h.dim_b * h.dim_b;

  EnvMeans env;
  env.dim_a = h.dim_a;
  env.dim_b = h.dim_b;
  env.means.resize(na2, nb2 - 1);
  const Matrix reduced0 =
      partial_trace(initial_state, Subsystem::second, h.dim_a, h.dim_b);
  RealVector x(na2);
  for (int alpha = 0; alpha < na2; ++alpha) {
    x(alpha) =
        hs_inner(basis_a.f[static_cast<std::size_t>(alpha)], reduced0).real();
    for (int beta = 1; beta < nb2; ++beta)
      env.means(alpha, beta - 1) =
          hs_inner(tensor(basis_a.f[static_cast<std::size_t>(alpha)],
                          basis_b.f[static_cast<std::size_t>(beta)]),
                   initial_state)
              .real();
  }

  const TransferMatrix tm = transfer_matrix(h, time, basis_a, basis_b);
  const ReducedAffineMap ram = reduce(tm, env);
  Matrix via_means = Matrix::Identity(h.dim_a, h.dim_a);
  for (int mu = 1; mu < na2; ++mu) {
    double y = ram.drift(mu - 1);
    for (int alpha = 1; alpha < na2; ++alpha)
      y += ram.block(mu - 1, alpha - 1) * x(alpha);
    via_means += y * basis_a.f[static_cast<std::size_t>(mu)];
  }
  via_means /= h.dim_a;

  const Matrix u = matrix_exp_unitary(h.h, time);
  const Matrix evolved = u.adjoint() * initial_state * u;
  const Matrix via_trace =
      partial_trace(evolved, Subsystem::second, h.dim_a, h.dim_b);
  return (via_means - via_trace).cwiseAbs().maxCoeff();
}

MatrixMap reduced_matrix_map(const ReducedAffineMap& ram,
                             const OperatorBasis& basis_a) {
  const int n = ram.dim;
  const int n2 = n * n;
  if (basis_a.dim != n || ram.drift.size() != n2 - 1 ||
      ram.block.rows() != n2 - 1 || ram.block.cols() != n2 - 1)
    throw std::invalid_argument("reduced_matrix_map: dimension mismatch");

  // Images of the basis elements: 1' = 1 + sum_mu d_mu F_mu,
  // F_alpha' = sum_mu block_{mu alpha} F_mu.
  std::vector<Matrix> image(static_cast<std::size_t>(n2));
  image[0] = Matrix::Identity(n, n);
  for (int mu = 1; mu < n2; ++mu)
    image[0] += ram.drift(mu - 1) * basis_a.f[static_cast<std::size_t>(mu)];
  for (int alpha = 1; alpha < n2; ++alpha) {
    Matrix m = Matrix::Zero(n, n);
    for (int mu = 1; mu < n2; ++mu)
      m += ram.block(mu - 1, alpha - 1) *
           basis_a.f[static_cast<std::size_t>(mu)];
    image[static_cast<std::size_t>(alpha)] = m;
  }
  return map_from_action(n, [&](const Matrix& q) {
    Matrix img = Matrix::Zero(n, n);
    for (int alpha = 0; alpha < n2; ++alpha) {
      const Complex coeff =
          hs_inner(basis_a.f[static_cast<std::size_t>(alpha)], q) /
          double(n);
      img += coeff * image[static_cast<std::size_t>(alpha)];
    }
    return img;
  });
}

}  // namespace ncp
