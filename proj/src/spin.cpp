// Copyright (c) 2026 the qpgsim authors.
// SPDX-License-Identifier: MIT
#include "qpg/spin.hpp"

#include <cmath>
#include <set>
#include <string>
#include <utility>

#include "qpg/errors.hpp"

namespace qpg {

void validate_spin_model(const SpinModel& model) {
  if (model.num_qubits < 1) {
    throw IndexOutOfRange("spin model needs at least one qubit");
  }
  std::set<std::pair<int, int>> seen;
  for (const XYCoupling& c : model.couplings) {
    if (c.m < 0 || c.m >= model.num_qubits || c.n < 0 || c.n >= model.num_qubits) {
      throw IndexOutOfRange("coupling index (" + std::to_string(c.m) + "," +
                            std::to_string(c.n) + ") outside " +
                            std::to_string(model.num_qubits) + " qubits");
    }
    if (c.m == c.n) {
      throw IndexOutOfRange("coupling requires two distinct qubits");
    }
    const auto key = std::minmax(c.m, c.n);
    if (!seen.insert(key).second) {
      throw IndexOutOfRange("duplicate coupling pair (" + std::to_string(key.first) +
                            "," + std::to_string(key.second) + ")");
    }
  }
}

Operator build_xy_hamiltonian(const SpinModel& model) {
  validate_spin_model(model);
  const int n = model.num_qubits;
  const Eigen::Index dim = Eigen::Index(1) << n;
  Operator h = Operator::Zero(dim, dim);
  for (const XYCoupling& c : model.couplings) {
    // sigma+^m sigma-^n maps |..m=1..n=0..> to |..m=0..n=1..| (|0> excited).
    const Eigen::Index bit_m = Eigen::Index(1) << (n - 1 - c.m);
    const Eigen::Index bit_n = Eigen::Index(1) << (n - 1 - c.n);
    for (Eigen::Index i = 0; i < dim; ++i) {
      if ((i & bit_m) != 0 && (i & bit_n) == 0) {
        const Eigen::Index j = (i & ~bit_m) | bit_n;
        h(j, i) += c.strength;
        h(i, j) += c.strength;
      }
    }
  }
  return h;
}

SpinModel h1_params(double theta, double omega) {
  SpinModel model;
  model.num_qubits = 3;
  model.couplings = {
      {0, 1, omega * std::sin(theta / 2.0)},
      {0, 2, omega * std::cos(theta / 2.0)},
  };
  return model;
}

SpinModel h2_params(double omega12) {
  SpinModel model;
  model.num_qubits = 3;
  model.couplings = {{1, 2, omega12}};
  return model;
}

SpinModel h3_params(double theta_prime, double omega_prime) {
  SpinModel model;
  model.num_qubits = 4;
  model.couplings = {
      {1, 2, omega_prime * std::sin(theta_prime / 2.0)},
      {1, 3, omega_prime * std::cos(theta_prime / 2.0)},
  };
  return model;
}

SpinModel h4_params(double omega34) {
  SpinModel model;
  model.num_qubits = 4;
  model.couplings = {{2, 3, omega34}};
  return model;
}

Operator u1_analytic(double theta, int m) {
  if (m != 0 && m != 1) {
    throw IndexOutOfRange("auxiliary branch m must be 0 or 1");
  }
  const double sign = (m == 1) ? 1.0 : -1.0;
  return sign * std::cos(theta) * pauli_z() - std::sin(theta) * pauli_x();
}

Operator u2_analytic(double theta, int m) {
  if (m != 0 && m != 1) {
    throw IndexOutOfRange("auxiliary branch m must be 0 or 1");
  }
  const double phase = (m == 0) ? theta : -theta;
  Operator u = Operator::Zero(2, 2);
  u(0, 0) = std::exp(Complex(0.0, phase));
  u(1, 1) = std::exp(Complex(0.0, -phase));
  return u;
}

Operator u4_analytic(double theta_prime) {
  Operator u = Operator::Zero(4, 4);
  const Complex even = std::exp(Complex(0.0, -theta_prime));
  const Complex odd = std::exp(Complex(0.0, theta_prime));
  u(0, 0) = even;
  u(1, 1) = odd;
  u(2, 2) = odd;
  u(3, 3) = even;
  return u;
}

Operator pauli_x() {
  Operator m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Operator pauli_y() {
  Operator m(2, 2);
  m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return m;
}

Operator pauli_z() {
  Operator m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Operator pauli_id() {
  return Operator::Identity(2, 2);
}

Operator embed_single_qubit(const Operator& op, int qubit, int num_qubits) {
  if (op.rows() != 2 || op.cols() != 2) {
    throw DimensionMismatch("embed_single_qubit expects a 2x2 operator");
  }
  if (qubit < 0 || qubit >= num_qubits) {
    throw IndexOutOfRange("qubit index outside register");
  }
  Operator out = (qubit == 0) ? op : pauli_id();
  for (int k = 1; k < num_qubits; ++k) {
    out = kron(out, (k == qubit) ? op : pauli_id());
  }
  return out;
}

Operator tensor_power(const Operator& op, int num_qubits) {
  if (num_qubits < 1) {
    throw IndexOutOfRange("tensor_power needs at least one factor");
  }
  Operator out = op;
  for (int k = 1; k < num_qubits; ++k) {
    out = kron(out, op);
  }
  return out;
}

Operator total_sigma_z(int num_qubits, const std::vector<int>& qubits) {
  const Eigen::Index dim = Eigen::Index(1) << num_qubits;
  Operator out = Operator::Zero(dim, dim);
  if (qubits.empty()) {
    for (int q = 0; q < num_qubits; ++q) {
      out += embed_single_qubit(pauli_z(), q, num_qubits);
    }
  } else {
    for (int q : qubits) {
      out += embed_single_qubit(pauli_z(), q, num_qubits);
    }
  }
  return out;
}

}  // namespace qpg
