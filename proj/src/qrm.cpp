// Copyright (c) 2026 the qpgsim authors.
// SPDX-License-Identifier: MIT
#include "qpg/qrm.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>

#include "qpg/errors.hpp"

namespace qpg {
namespace {

constexpr double kPi = 3.14159265358979323846;

void validate_site(const QrmSite& site) {
  if (site.omega_c <= 0.0 || site.omega_q <= 0.0 || site.g < 0.0) {
    throw ConfigError("site frequencies must be positive and coupling non-negative");
  }
  if (site.fock_cutoff < 4) {
    throw ConfigError("fock_cutoff must be at least 4");
  }
}

// Eigendecomposition of one site at the given oscillator cutoff; columns
// ascending by energy.
EigResult site_eig(const QrmSite& site, int fock_cutoff) {
  return eig_hermitian(rabi_hamiltonian(site, fock_cutoff));
}

// Phase-gauges a column so its largest-magnitude entry is real positive.
void gauge_column(Eigen::Ref<Eigen::VectorXcd> column) {
  Eigen::Index imax = 0;
  column.cwiseAbs().maxCoeff(&imax);
  const Complex pivot = column(imax);
  if (std::abs(pivot) > 0.0) {
    column *= std::abs(pivot) / pivot;
  }
}

}  // namespace

Operator rabi_hamiltonian(const QrmSite& site, int fock_cutoff) {
  validate_site(site);
  const Eigen::Index n = fock_cutoff;
  Operator number = Operator::Zero(n, n);
  Operator position = Operator::Zero(n, n);  // a + a†
  for (Eigen::Index k = 0; k < n; ++k) {
    number(k, k) = static_cast<double>(k);
    if (k + 1 < n) {
      const double amp = std::sqrt(static_cast<double>(k + 1));
      position(k, k + 1) = amp;  // a
      position(k + 1, k) = amp;  // a†
    }
  }
  const Operator id2 = Operator::Identity(2, 2);
  const Operator idn = Operator::Identity(n, n);
  return site.omega_c * kron(number, id2) + 0.5 * site.omega_q * kron(idn, pauli_z()) +
         site.g * kron(position, pauli_x());
}

QrmEigenbasis diagonalize_qrm(const QrmSite& site, int kept) {
  validate_site(site);
  if (kept < 2 || kept > 2 * site.fock_cutoff) {
    throw ConfigError("kept level count must lie in [2, 2 * fock_cutoff]");
  }
  const EigResult base = site_eig(site, site.fock_cutoff);
  const EigResult refined = site_eig(site, site.fock_cutoff + 10);

  double max_shift = 0.0;
  for (int k = 0; k < kept; ++k) {
    max_shift = std::max(max_shift, std::abs(base.values(k) - refined.values(k)));
  }
  if (max_shift >= 1.0e-6 * site.omega_c) {
    std::ostringstream msg;
    msg << "kept energies shift by " << max_shift << " rad/s (" << max_shift / site.omega_c
        << " of omega_c) when the oscillator cutoff grows from " << site.fock_cutoff
        << " to " << site.fock_cutoff + 10;
    throw TruncationNotConverged(msg.str());
  }

  QrmEigenbasis basis;
  basis.kept_levels = kept;
  basis.fock_cutoff = site.fock_cutoff;
  basis.energies = base.values.head(kept);
  basis.vectors = base.vectors.leftCols(kept);
  for (int k = 0; k < kept; ++k) {
    gauge_column(basis.vectors.col(k));
  }
  basis.effective_qubit_splitting = basis.energies(1) - basis.energies(0);
  basis.truncation_shift = max_shift;
  return basis;
}

Operator project_hopping_operator(const QrmEigenbasis& basis) {
  const Eigen::Index n = basis.fock_cutoff;
  Operator position = Operator::Zero(n, n);
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    const double amp = std::sqrt(static_cast<double>(k + 1));
    position(k, k + 1) = amp;
    position(k + 1, k) = amp;
  }
  const Operator full = kron(position, Operator::Identity(2, 2));
  Operator projected = basis.vectors.adjoint() * full * basis.vectors;
  return 0.5 * (projected + Operator(projected.adjoint()));
}

Eigen::Index product_dim(const CoupledQrmSystem& sys) {
  if (sys.sites.empty() || sys.bases.size() != sys.sites.size()) {
    throw DimensionMismatch("system needs one eigenbasis per site");
  }
  Eigen::Index dim = 1;
  for (const QrmEigenbasis& basis : sys.bases) {
    dim *= basis.kept_levels;
    if (dim > kMaxProductDim) {
      std::ostringstream msg;
      msg << "product dimension exceeds the dense limit " << kMaxProductDim;
      throw DimensionOverflow(msg.str());
    }
  }
  return dim;
}

Eigen::VectorXd product_energies(const CoupledQrmSystem& sys) {
  const Eigen::Index dim = product_dim(sys);
  Eigen::VectorXd energies = Eigen::VectorXd::Zero(dim);
  Eigen::Index stride = dim;
  for (const QrmEigenbasis& basis : sys.bases) {
    const Eigen::Index kept = basis.kept_levels;
    stride /= kept;
    for (Eigen::Index idx = 0; idx < dim; ++idx) {
      energies(idx) += basis.energies((idx / stride) % kept);
    }
  }
  return energies;
}

Operator embed_pair_hopping(const CoupledQrmSystem& sys, int a, int b) {
  product_dim(sys);
  const int n = static_cast<int>(sys.sites.size());
  if (a < 0 || b < 0 || a >= n || b >= n || a == b) {
    throw IndexOutOfRange("hopping pair must name two distinct sites");
  }
  Operator result = Operator::Identity(1, 1);
  for (int m = 0; m < n; ++m) {
    if (m == a || m == b) {
      result = kron(result, project_hopping_operator(sys.bases[m]));
    } else {
      const Eigen::Index kept = sys.bases[m].kept_levels;
      result = kron(result, Operator::Identity(kept, kept));
    }
  }
  return result;
}

Operator build_coupled_hamiltonian(const CoupledQrmSystem& sys, double t) {
  const Eigen::Index dim = product_dim(sys);
  Operator h = Operator::Zero(dim, dim);
  h.diagonal() = product_energies(sys).cast<Complex>();
  for (const HoppingDrive& drive : sys.drives) {
    if (drive.j == 0.0) {
      continue;
    }
    h += (drive.j * std::cos(drive.omega_drive * t + drive.phi)) *
         embed_pair_hopping(sys, drive.a, drive.b);
  }
  return h;
}

namespace {

// Precomputed sparse structure of the interaction-picture generator for one
// control window: per drive the nonzero hopping entries plus the drive
// parameters. One Magnus step integrates every oscillatory phase factor in
// closed form, so the step size only needs to resolve the slow exchange
// envelope, not the gigahertz transition frequencies.
class WindowStepper {
 public:
  WindowStepper(const CoupledQrmSystem& sys, const std::vector<HoppingDrive>& drives)
      : energies_(product_energies(sys)), dim_(energies_.size()) {
    for (const HoppingDrive& drive : drives) {
      if (drive.j == 0.0) {
        continue;
      }
      const Operator hop = embed_pair_hopping(sys, drive.a, drive.b);
      const double floor = 1.0e-12 * hop.cwiseAbs().maxCoeff();
      DriveTerms terms;
      terms.j = drive.j;
      terms.omega = drive.omega_drive;
      terms.phi = drive.phi;
      for (Eigen::Index c = 0; c < dim_; ++c) {
        for (Eigen::Index r = 0; r < dim_; ++r) {
          const double value = hop(r, c).real();
          if (std::abs(value) > floor) {
            terms.row.push_back(r);
            terms.col.push_back(c);
            terms.val.push_back(value);
          }
        }
      }
      terms_.push_back(std::move(terms));
    }
    generator_.resize(dim_, dim_);
  }

  bool idle() const { return terms_.empty(); }

  // Advances the interaction-picture block over [t0, t0 + h] (global time).
  void step(double t0, double h, Operator& block) {
    const Complex imag_unit(0.0, 1.0);
    const double tmid = t0 + 0.5 * h;
    generator_.setZero();
    for (const DriveTerms& terms : terms_) {
      for (double sign : {1.0, -1.0}) {
        const Complex amp = 0.5 * terms.j * std::exp(imag_unit * (sign * terms.phi));
        for (std::size_t k = 0; k < terms.val.size(); ++k) {
          const double w = energies_(terms.row[k]) - energies_(terms.col[k]) +
                           sign * terms.omega;
          const double x = 0.5 * w * h;
          const double sinc = std::abs(x) < 1.0e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x;
          generator_(terms.row[k], terms.col[k]) +=
              amp * terms.val[k] * std::exp(imag_unit * (w * tmid)) * (h * sinc);
        }
      }
    }
    apply_exponential(block);
  }

 private:
  struct DriveTerms {
    std::vector<Eigen::Index> row, col;
    std::vector<double> val;
    double j = 0.0, omega = 0.0, phi = 0.0;
  };

  // block <- exp(-i * generator_) * block by a Taylor series; the generator
  // norm per step is far below one, so the series converges in a handful of
  // terms.
  void apply_exponential(Operator& block) const {
    Operator term = block;
    const double ref = block.norm();
    const Complex minus_i(0.0, -1.0);
    for (int n = 1; n <= 48; ++n) {
      term = (minus_i / static_cast<double>(n)) * (generator_ * term);
      block += term;
      if (term.norm() <= 1.0e-16 * ref) {
        return;
      }
    }
    throw ConvergenceFailure("window exponential did not converge; reduce the step size");
  }

  Eigen::VectorXd energies_;
  Eigen::Index dim_;
  std::vector<DriveTerms> terms_;
  Operator generator_;
};

}  // namespace

void propagate_window(const CoupledQrmSystem& sys, const DriveWindow& window, double t0,
                      const QrmSimOptions& opts, Operator& block) {
  if (window.duration < 0.0 || opts.dt <= 0.0) {
    throw ConfigError("window duration must be non-negative and dt positive");
  }
  if (block.rows() != product_dim(sys)) {
    throw DimensionMismatch("state block does not match the product dimension");
  }
  if (window.duration == 0.0) {
    return;
  }
  WindowStepper stepper(sys, window.drives);
  if (stepper.idle()) {
    return;  // free evolution is the identity in the interaction picture
  }
  const int steps = std::max<int>(1, static_cast<int>(std::ceil(window.duration / opts.dt)));
  const double h = window.duration / steps;
  for (int k = 0; k < steps; ++k) {
    stepper.step(t0 + k * h, h, block);
  }
}

namespace {

// Population-transfer probe |E1 E0> -> |E0 E1> on a prebuilt two-site
// system; returns the first full-transfer time refined parabolically, or
// throws CalibrationFailed when no transfer peak appears.
double transfer_peak_time(const CoupledQrmSystem& two_site, const HoppingDrive& drive,
                          double target_omega, const QrmSimOptions& opts) {
  const Eigen::Index dim = product_dim(two_site);
  const Eigen::Index kept_b = two_site.bases[1].kept_levels;
  const Eigen::Index idx_start = kept_b;  // levels (1, 0)
  const Eigen::Index idx_goal = 1;        // levels (0, 1)

  const double expected = 0.5 * kPi / target_omega;
  const double horizon = 2.2 * expected;
  const double h = std::min(opts.dt, expected / 400.0);
  const int steps = std::max<int>(8, static_cast<int>(std::ceil(horizon / h)));

  WindowStepper stepper(two_site, {drive});
  if (stepper.idle()) {
    throw CalibrationFailed("drive amplitude is zero; no exchange to measure");
  }
  Operator block = Operator::Zero(dim, 1);
  block(idx_start, 0) = 1.0;

  std::vector<double> population(steps + 1, 0.0);
  for (int k = 1; k <= steps; ++k) {
    stepper.step((k - 1) * h, h, block);
    population[k] = std::norm(block(idx_goal, 0));
  }
  for (int k = 1; k < steps; ++k) {
    if (population[k] < 0.5) {
      continue;
    }
    if (population[k] >= population[k - 1] && population[k] >= population[k + 1]) {
      const double denom = population[k - 1] - 2.0 * population[k] + population[k + 1];
      double offset = 0.0;
      if (denom < 0.0) {
        offset = 0.5 * (population[k - 1] - population[k + 1]) / denom;
      }
      return (k + offset) * h;
    }
  }
  throw CalibrationFailed("no population-transfer peak found in the search window");
}

CoupledQrmSystem make_pair_system(const QrmEigenbasis& basis_a, const QrmEigenbasis& basis_b,
                                  const QrmSite& site_a, const QrmSite& site_b) {
  CoupledQrmSystem pair;
  pair.sites = {site_a, site_b};
  pair.bases = {basis_a, basis_b};
  return pair;
}

}  // namespace

double measure_exchange_halfperiod(const QrmSite& site_a, const QrmSite& site_b, int kept,
                                   const HoppingDrive& drive, double target_omega,
                                   const QrmSimOptions& opts) {
  if (target_omega <= 0.0) {
    throw ConfigError("target exchange strength must be positive");
  }
  const CoupledQrmSystem pair = make_pair_system(diagonalize_qrm(site_a, kept),
                                                 diagonalize_qrm(site_b, kept), site_a, site_b);
  HoppingDrive local = drive;
  local.a = 0;
  local.b = 1;
  return 2.0 * transfer_peak_time(pair, local, target_omega, opts);
}

HoppingDrive calibrate_drive(const CoupledQrmSystem& sys, int site_a, int site_b,
                             double target_omega, const QrmSimOptions& opts,
                             std::optional<double> omega_drive_override) {
  // Calibration runs on a two-site cut, so the parent register may be
  // larger than anything the dense propagator would accept.
  if (sys.sites.empty() || sys.bases.size() != sys.sites.size()) {
    throw DimensionMismatch("system needs one eigenbasis per site");
  }
  const int n = static_cast<int>(sys.sites.size());
  if (site_a < 0 || site_b < 0 || site_a >= n || site_b >= n || site_a == site_b) {
    throw IndexOutOfRange("calibration pair must name two distinct sites");
  }
  if (target_omega < 0.0) {
    throw ConfigError("target exchange strength must be non-negative");
  }
  const QrmEigenbasis& basis_a = sys.bases[site_a];
  const QrmEigenbasis& basis_b = sys.bases[site_b];
  const double splitting_gap =
      std::abs(basis_a.effective_qubit_splitting - basis_b.effective_qubit_splitting);

  HoppingDrive drive;
  drive.a = site_a;
  drive.b = site_b;
  drive.omega_drive = omega_drive_override.value_or(splitting_gap);
  drive.calibrated_target = target_omega;
  if (target_omega == 0.0) {
    return drive;
  }

  const double x_a = project_hopping_operator(basis_a)(0, 1).real();
  const double x_b = project_hopping_operator(basis_b)(0, 1).real();
  const double x_product = x_a * x_b;
  if (std::abs(x_product) < 1.0e-12) {
    throw CalibrationFailed("vanishing qubit-transition matrix element; pair cannot exchange");
  }
  drive.phi = x_product < 0.0 ? kPi : 0.0;

  // A modulated drive splits its amplitude between two sidebands, so only
  // half of J acts on resonance; a static coupling keeps all of it.
  const double scale_ref =
      std::max(basis_a.effective_qubit_splitting, basis_b.effective_qubit_splitting);
  const bool parametric = drive.omega_drive > 1.0e-6 * scale_ref;
  const double j_initial = (parametric ? 2.0 : 1.0) * target_omega / std::abs(x_product);

  const CoupledQrmSystem pair =
      make_pair_system(basis_a, basis_b, sys.sites[site_a], sys.sites[site_b]);
  HoppingDrive probe = drive;
  probe.a = 0;
  probe.b = 1;

  const double goal = kPi / target_omega;  // exchange half-period
  const auto residual = [&](double j) {
    probe.j = j;
    return 2.0 * transfer_peak_time(pair, probe, target_omega, opts) / goal - 1.0;
  };

  double j_low = j_initial;
  double r_low = residual(j_low);
  if (std::abs(r_low) <= 1.0e-3) {
    drive.j = j_low;
    return drive;
  }

  // The half-period decreases monotonically with J; bracket then bisect.
  double j_high = j_low;
  double r_high = r_low;
  const double stretch = 1.0 + std::max(2.0 * std::abs(r_low), 1.0e-2);
  for (int attempt = 0; attempt < 16 && r_low * r_high > 0.0; ++attempt) {
    if (r_low > 0.0) {
      j_high *= stretch;  // period too long: need stronger coupling
      r_high = residual(j_high);
    } else {
      j_low /= stretch;
      r_low = residual(j_low);
    }
  }
  if (r_low * r_high > 0.0) {
    throw ConvergenceFailure("could not bracket the calibrated drive amplitude");
  }
  if (j_low > j_high) {
    std::swap(j_low, j_high);
    std::swap(r_low, r_high);
  }
  for (int iter = 0; iter < 80; ++iter) {
    const double j_mid = 0.5 * (j_low + j_high);
    const double r_mid = residual(j_mid);
    if (std::abs(r_mid) <= 1.0e-3) {
      drive.j = j_mid;
      return drive;
    }
    if ((r_mid > 0.0) == (r_low > 0.0)) {
      j_low = j_mid;
      r_low = r_mid;
    } else {
      j_high = j_mid;
      r_high = r_mid;
    }
  }
  throw ConvergenceFailure("drive-amplitude bisection did not reach 0.1%");
}

void calibrate_for_schedule(CoupledQrmSystem& sys, const GateSchedule& schedule,
                            double omega_ref, const QrmSimOptions& opts) {
  std::set<std::pair<int, int>> needed;
  for (const PulseSegment& segment : schedule.segments) {
    for (const XYCoupling& coupling : segment.model.couplings) {
      if (coupling.strength != 0.0) {
        needed.insert(std::minmax(coupling.m, coupling.n));
      }
    }
  }
  for (const HoppingDrive& existing : sys.drives) {
    needed.erase(std::minmax(existing.a, existing.b));
  }
  for (const auto& [a, b] : needed) {
    sys.drives.push_back(calibrate_drive(sys, a, b, omega_ref, opts));
  }
}

namespace {

// Looks up the calibrated reference drive of an unordered site pair.
const HoppingDrive& reference_drive(const CoupledQrmSystem& sys, int a, int b) {
  for (const HoppingDrive& drive : sys.drives) {
    if (std::minmax(drive.a, drive.b) == std::minmax(a, b)) {
      return drive;
    }
  }
  std::ostringstream msg;
  msg << "no calibrated drive for site pair (" << a << ", " << b << ")";
  throw CalibrationFailed(msg.str());
}

// Per-site level lists of the logical basis states, logical bitstring
// ascending. Level 0 realizes spin |1> (ground) and level 1 spin |0>.
std::vector<int> pair_levels(int bit) { return {1 - bit, bit}; }

// One stage: a maximal run of consecutive schedule windows acting on the
// same site set.
struct Stage {
  std::vector<int> support;
  std::vector<DriveWindow> windows;
  std::vector<double> window_starts;  // global start time of each window
};

std::vector<Stage> plan_stages(const CoupledQrmSystem& sys, const GateSchedule& schedule) {
  const int num_sites = static_cast<int>(sys.sites.size());
  std::vector<Stage> stages;
  double cursor = 0.0;
  for (const PulseSegment& segment : schedule.segments) {
    std::set<int> support_set;
    DriveWindow window;
    window.duration = segment.duration;
    for (const XYCoupling& coupling : segment.model.couplings) {
      if (coupling.m < 0 || coupling.n < 0 || coupling.m >= num_sites ||
          coupling.n >= num_sites) {
        throw IndexOutOfRange("schedule couples a site outside the system");
      }
      support_set.insert(coupling.m);
      support_set.insert(coupling.n);
      if (coupling.strength == 0.0) {
        continue;
      }
      const HoppingDrive& ref = reference_drive(sys, coupling.m, coupling.n);
      if (ref.calibrated_target == 0.0) {
        throw CalibrationFailed("reference drive was calibrated to zero strength");
      }
      HoppingDrive active = ref;
      active.j = ref.j * coupling.strength / ref.calibrated_target;
      if (segment.sign > 0) {
        active.phi += kPi;  // inverted segment: flip the exchange sign
      }
      window.drives.push_back(active);
    }
    std::vector<int> support(support_set.begin(), support_set.end());
    if (stages.empty() || stages.back().support != support) {
      stages.push_back(Stage{support, {}, {}});
    }
    stages.back().windows.push_back(std::move(window));
    stages.back().window_starts.push_back(cursor);
    cursor += segment.duration;
  }
  return stages;
}

// Product-basis index of a level configuration on a sub-system.
Eigen::Index config_index(const CoupledQrmSystem& sub, const std::vector<int>& levels) {
  Eigen::Index idx = 0;
  for (std::size_t m = 0; m < levels.size(); ++m) {
    idx = idx * sub.bases[m].kept_levels + levels[m];
  }
  return idx;
}

}  // namespace

std::vector<std::vector<int>> logical_site_configs(int num_sites) {
  const LogicalEncoding enc = default_encoding(num_sites);
  const int logical_qubits = static_cast<int>(enc.pairs.size());
  const int count = 1 << logical_qubits;
  std::vector<std::vector<int>> configs;
  configs.reserve(count);
  for (int word = 0; word < count; ++word) {
    std::vector<int> levels(num_sites, 0);  // auxiliary sites stay in level 0
    for (int p = 0; p < logical_qubits; ++p) {
      const int bit = (word >> (logical_qubits - 1 - p)) & 1;
      const std::vector<int> pl = pair_levels(bit);
      levels[enc.pairs[p].first] = pl[0];
      levels[enc.pairs[p].second] = pl[1];
    }
    configs.push_back(std::move(levels));
  }
  return configs;
}

PhysicalGateResult simulate_physical_gate(const CoupledQrmSystem& sys,
                                          const GateSchedule& schedule, int trials,
                                          std::uint64_t seed, const QrmSimOptions& opts) {
  if (trials < 1) {
    throw ConfigError("at least one trial is required");
  }
  const int num_sites = static_cast<int>(sys.sites.size());
  if (schedule.num_qubits() != num_sites) {
    throw DimensionMismatch("schedule register size does not match the site count");
  }
  const LogicalEncoding enc = default_encoding(num_sites);
  const Operator ideal =
      project_to_logical(synthesize(schedule), enc, default_ancilla(num_sites));

  const std::vector<std::vector<int>> configs = logical_site_configs(num_sites);
  const int logical_dim = static_cast<int>(configs.size());

  Operator realized = Operator::Identity(logical_dim, logical_dim);
  for (const Stage& stage : plan_stages(sys, schedule)) {
    if (stage.support.empty()) {
      continue;  // idle windows are the identity in the interaction picture
    }
    CoupledQrmSystem sub;
    for (int site : stage.support) {
      sub.sites.push_back(sys.sites[site]);
      sub.bases.push_back(sys.bases[site]);
    }
    std::map<int, int> local_of;
    for (std::size_t k = 0; k < stage.support.size(); ++k) {
      local_of[stage.support[k]] = static_cast<int>(k);
    }

    // Distinct restrictions of the logical configurations to this stage.
    std::map<std::vector<int>, int> column_of;
    std::vector<std::vector<int>> restricted(logical_dim);
    for (int i = 0; i < logical_dim; ++i) {
      std::vector<int> local;
      local.reserve(stage.support.size());
      for (int site : stage.support) {
        local.push_back(configs[i][site]);
      }
      restricted[i] = local;
      column_of.emplace(std::move(local), static_cast<int>(column_of.size()));
    }

    const Eigen::Index dim = product_dim(sub);
    Operator block = Operator::Zero(dim, static_cast<Eigen::Index>(column_of.size()));
    for (const auto& [levels, column] : column_of) {
      block(config_index(sub, levels), column) = 1.0;
    }

    for (std::size_t w = 0; w < stage.windows.size(); ++w) {
      DriveWindow local_window = stage.windows[w];
      for (HoppingDrive& drive : local_window.drives) {
        drive.a = local_of.at(drive.a);
        drive.b = local_of.at(drive.b);
      }
      propagate_window(sub, local_window, stage.window_starts[w], opts, block);
    }

    Operator stage_matrix = Operator::Zero(logical_dim, logical_dim);
    for (int i = 0; i < logical_dim; ++i) {
      for (int j = 0; j < logical_dim; ++j) {
        bool same_elsewhere = true;
        for (int site = 0; site < num_sites && same_elsewhere; ++site) {
          if (!local_of.count(site) && configs[i][site] != configs[j][site]) {
            same_elsewhere = false;
          }
        }
        if (same_elsewhere) {
          stage_matrix(i, j) =
              block(config_index(sub, restricted[i]), column_of.at(restricted[j]));
        }
      }
    }
    realized = stage_matrix * realized;
  }

  PhysicalGateResult result;
  result.logical_matrix = realized;
  result.per_trial.reserve(trials);
  double fidelity_sum = 0.0;
  double leakage_sum = 0.0;
  double fidelity_min = 1.0;
  for (int trial = 0; trial < trials; ++trial) {
    const State c = haar_random_state(logical_dim, derive_seed(seed, trial));
    const State want = ideal * c;
    const State got = realized * c;
    const double fidelity = std::norm(want.dot(got));
    result.per_trial.push_back(fidelity);
    fidelity_sum += fidelity;
    fidelity_min = std::min(fidelity_min, fidelity);
    leakage_sum += std::max(0.0, 1.0 - got.squaredNorm());
  }
  result.mean_fidelity = fidelity_sum / trials;
  result.min_fidelity = fidelity_min;
  result.mean_leakage = leakage_sum / trials;
  if (result.mean_leakage > opts.leakage_limit) {
    std::ostringstream msg;
    msg << "mean logical-subspace leakage " << result.mean_leakage << " exceeds the limit "
        << opts.leakage_limit;
    throw LeakageExceeded(msg.str());
  }
  return result;
}

namespace {

CoupledQrmSystem assemble_system(const QrmParams& params, const std::vector<double>& omega_qs) {
  CoupledQrmSystem sys;
  for (double omega_q : omega_qs) {
    QrmSite site;
    site.omega_c = params.omega_c;
    site.omega_q = omega_q;
    site.g = params.g;
    site.fock_cutoff = params.fock_cutoff;
    sys.sites.push_back(site);
    sys.bases.push_back(diagonalize_qrm(site, params.kept_levels));
  }
  return sys;
}

}  // namespace

CoupledQrmSystem make_single_gate_system(const QrmParams& params) {
  return assemble_system(params,
                         {params.omega_q_high, params.omega_q_low, params.omega_q_low});
}

CoupledQrmSystem make_two_gate_system(const QrmParams& params) {
  return assemble_system(params, {params.omega_q_high, params.omega_q_high,
                                  params.omega_q_low, params.omega_q_low});
}

CoupledQrmSystem make_cz_system(const QrmParams& params) {
  return assemble_system(params, {params.omega_q_low, params.omega_q_high,
                                  params.omega_q_high, params.omega_q_low,
                                  params.omega_q_low});
}

PhysicalGateResult simulate_catalog_gate(GateKind kind, int trials, std::uint64_t seed,
                                         const QrmParams& params, const QrmSimOptions& opts) {
  const CatalogEntry entry = gate_catalog(kind);
  CoupledQrmSystem sys;
  switch (kind) {
    case GateKind::X:
    case GateKind::Z:
    case GateKind::H:
    case GateKind::S:
    case GateKind::T:
      sys = make_single_gate_system(params);
      break;
    case GateKind::ZZ_PHASE:
      sys = make_two_gate_system(params);
      break;
    case GateKind::CZ:
      sys = make_cz_system(params);
      break;
  }
  calibrate_for_schedule(sys, entry.schedule, kOmegaDefault, opts);
  return simulate_physical_gate(sys, entry.schedule, trials, seed, opts);
}

}  // namespace qpg
