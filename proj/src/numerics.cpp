// Copyright (c) 2026 the qpgsim authors.
// SPDX-License-Identifier: MIT
#include "qpg/numerics.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <random>

#include "qpg/errors.hpp"

namespace qpg {

namespace {

void require_square(const Operator& h) {
  if (h.rows() != h.cols()) {
    throw DimensionMismatch("matrix must be square, got " + std::to_string(h.rows()) +
                            "x" + std::to_string(h.cols()));
  }
}

void require_hermitian(const Operator& h, double tol) {
  require_square(h);
  const double dev = (h - h.adjoint()).norm();
  if (dev > tol * h.norm()) {
    throw NotHermitian("Hermiticity deviation " + std::to_string(dev) +
                       " exceeds tolerance");
  }
}

}  // namespace

Operator kron(const Operator& a, const Operator& b) {
  return Eigen::kroneckerProduct(a, b);
}

EigResult eig_hermitian(const Operator& h, double tol) {
  require_hermitian(h, tol);
  Eigen::SelfAdjointEigenSolver<Operator> solver(0.5 * (h + h.adjoint()));
  if (solver.info() != Eigen::Success) {
    throw ConvergenceFailure("Hermitian eigensolver failed to converge");
  }
  return EigResult{solver.eigenvalues(), solver.eigenvectors()};
}

Operator expm_hermitian(const Operator& h, double t, double tol) {
  const EigResult eig = eig_hermitian(h, tol);
  const Eigen::Index dim = h.rows();
  Eigen::VectorXcd phases(dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    phases[k] = std::exp(Complex(0.0, -eig.values[k] * t));
  }
  return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

Operator propagate_time_dependent(const std::function<Operator(double)>& h_of_t,
                                  double t0, double t1, int steps) {
  if (steps < 1) {
    throw DimensionMismatch("steps must be >= 1");
  }
  // Fourth-order commutator-free scheme: two Gauss-Legendre nodes per step,
  // U_step = exp(-ih(f2 A1 + f1 A2)) exp(-ih(f1 A1 + f2 A2)).
  const double s3 = std::sqrt(3.0) / 6.0;
  const double c1 = 0.5 - s3;
  const double c2 = 0.5 + s3;
  const double f1 = 0.25 + s3;
  const double f2 = 0.25 - s3;
  const double h = (t1 - t0) / steps;
  Operator u;
  Eigen::Index dim = -1;
  for (int k = 0; k < steps; ++k) {
    const double ts = t0 + k * h;
    const Operator a1 = h_of_t(ts + c1 * h);
    const Operator a2 = h_of_t(ts + c2 * h);
    if (dim < 0) {
      require_square(a1);
      dim = a1.rows();
      u = Operator::Identity(dim, dim);
    }
    if (a1.rows() != dim || a1.cols() != dim || a2.rows() != dim || a2.cols() != dim) {
      throw DimensionMismatch("sampled Hamiltonian dimension changed across time samples");
    }
    const Operator first = f1 * a1 + f2 * a2;
    const Operator second = f2 * a1 + f1 * a2;
    u = expm_hermitian(second, h) * (expm_hermitian(first, h) * u);
  }
  return u;
}

double unitarity_residual(const Operator& u) {
  require_square(u);
  return (u.adjoint() * u - Operator::Identity(u.rows(), u.cols())).norm();
}

double process_fidelity(const Operator& u_target, const Operator& u_actual) {
  if (u_target.rows() != u_actual.rows() || u_target.cols() != u_actual.cols()) {
    throw DimensionMismatch("process_fidelity operands differ in shape");
  }
  return std::abs((u_target.adjoint() * u_actual).trace()) /
         static_cast<double>(u_target.rows());
}

double phase_aware_distance(const Operator& a, const Operator& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch("phase_aware_distance operands differ in shape");
  }
  return (a - b).norm();
}

double coherent_error_amplitude(const Operator& u_target, const Operator& u_actual) {
  if (u_target.rows() != u_actual.rows() || u_target.cols() != u_actual.cols()) {
    throw DimensionMismatch("coherent_error_amplitude operands differ in shape");
  }
  const Operator m = u_target.adjoint() * u_actual;
  Eigen::ComplexEigenSolver<Operator> solver(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceFailure("eigensolver failed on the error unitary");
  }
  const Eigen::VectorXcd lambda = solver.eigenvalues();
  Complex mean_dir(0.0, 0.0);
  for (Eigen::Index k = 0; k < lambda.size(); ++k) {
    const double mag = std::abs(lambda[k]);
    mean_dir += (mag > 0.0) ? lambda[k] / mag : Complex(0.0, 0.0);
  }
  if (std::abs(mean_dir) == 0.0) {
    mean_dir = Complex(1.0, 0.0);  // fully spread phases; keep raw arguments
  }
  const Complex center = mean_dir / std::abs(mean_dir);
  double sum_sq = 0.0;
  for (Eigen::Index k = 0; k < lambda.size(); ++k) {
    const double delta = std::arg(lambda[k] * std::conj(center));
    sum_sq += delta * delta;
  }
  return std::sqrt(sum_sq / static_cast<double>(lambda.size()));
}

double state_fidelity(const State& a, const State& b) {
  if (a.size() != b.size()) {
    throw DimensionMismatch("state_fidelity operands differ in dimension");
  }
  const double overlap = std::abs(a.dot(b));
  return overlap * overlap;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

State haar_random_state(int dim, std::uint64_t seed) {
  if (dim < 1) {
    throw DimensionMismatch("state dimension must be positive");
  }
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  State v(dim);
  double norm_sq = 0.0;
  do {
    for (int k = 0; k < dim; ++k) {
      const double re = gauss(gen);
      const double im = gauss(gen);
      v[k] = Complex(re, im);
    }
    norm_sq = v.squaredNorm();
  } while (norm_sq == 0.0);
  return v / std::sqrt(norm_sq);
}

double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw DimensionMismatch("fit_loglog_slope needs two equal-length samples or more");
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double n = static_cast<double>(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (!(x[k] > 0.0) || !(y[k] > 0.0)) {
      throw DimensionMismatch("fit_loglog_slope requires positive samples");
    }
    const double lx = std::log(x[k]);
    const double ly = std::log(y[k]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace qpg
