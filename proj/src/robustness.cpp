// Copyright 2026 The actiongate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "actiongate/robustness.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <cmath>
#include <random>
#include <sstream>
#include <thread>

#include <Eigen/Eigenvalues>

#include "actiongate/errors.hpp"
#include "actiongate/format.hpp"

namespace actiongate {

void PerturbationSpec::validate() const {
  if (!(strength >= 0.0) || !std::isfinite(strength)) throw DomainError("perturbation strength must be >= 0");
  if (structure == PerturbationStructure::banded && band_width == 0)
    throw DomainError("banded perturbation needs a width of at least 1");
}

std::string to_string(PerturbationStructure s) {
  return s == PerturbationStructure::dense ? "dense" : "banded";
}

PerturbationStructure perturbation_structure_from_string(const std::string& name) {
  if (name == "dense") return PerturbationStructure::dense;
  if (name == "banded") return PerturbationStructure::banded;
  throw DomainError("unknown perturbation structure '" + name + "'");
}

namespace {

// 53 high bits of the engine; std::uniform_real_distribution is not
// specified bit-for-bit across standard libraries.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

void check_size(std::size_t n, const RobustnessOptions& options) {
  if (n > options.max_dimension)
    throw SizeError("perturbed eigensystem of dimension " + std::to_string(n) + " exceeds the cap " +
                    std::to_string(options.max_dimension));
}

}  // namespace

CMatrix perturbation_matrix(std::size_t n, const PerturbationSpec& spec) {
  spec.validate();
  const auto dim = static_cast<Eigen::Index>(n);
  CMatrix p = CMatrix::Zero(dim, dim);
  std::mt19937_64 rng(spec.seed);
  const bool banded = spec.structure == PerturbationStructure::banded;
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = i; j < dim; ++j) {
      if (banded && static_cast<std::size_t>(j - i) > spec.band_width) continue;
      if (i == j) {
        p(i, i) = 2.0 * unit(rng) - 1.0;
        continue;
      }
      double x = 0.0, y = 0.0;
      do {
        x = 2.0 * unit(rng) - 1.0;
        y = 2.0 * unit(rng) - 1.0;
      } while (x * x + y * y > 1.0);
      p(i, j) = cplx(x, y);
      p(j, i) = cplx(x, -y);
    }
  const double m = p.cwiseAbs().maxCoeff();
  if (m > 0.0) p /= m;
  return p;
}

Eigensystem perturbed_eigensystem(const Basis& basis, const PerturbationSpec& pert, const RobustnessOptions& options) {
  pert.validate();
  const std::size_t n = basis.size();
  check_size(n, options);
  const auto dim = static_cast<Eigen::Index>(n);
  Eigensystem out;
  if (pert.strength == 0.0) {
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return basis.energy(a) < basis.energy(b); });
    out.values = RVector(dim);
    out.vectors = CMatrix::Zero(dim, dim);
    for (Eigen::Index k = 0; k < dim; ++k) {
      out.values(k) = basis.energy(order[static_cast<std::size_t>(k)]);
      out.vectors(static_cast<Eigen::Index>(order[static_cast<std::size_t>(k)]), k) = 1.0;
    }
    return out;
  }
  CMatrix h = pert.strength * perturbation_matrix(n, pert);
  for (Eigen::Index i = 0; i < dim; ++i) h(i, i) += basis.energy(static_cast<std::size_t>(i));
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  if (es.info() != Eigen::Success) throw ConvergenceError("Hermitian eigensolver did not converge");
  out.values = es.eigenvalues();
  out.vectors = es.eigenvectors();
  for (Eigen::Index k = 0; k < dim; ++k) {
    const double r = (h * out.vectors.col(k) - out.values(k) * out.vectors.col(k)).norm();
    out.max_residual = std::max(out.max_residual, r);
  }
  if (out.max_residual > 1e-8 * std::max(1.0, out.values.cwiseAbs().maxCoeff()))
    throw ConvergenceError("eigenpair residual " + format_double(out.max_residual) + " above tolerance");
  return out;
}

LocalizationReport localization_report(const Basis& basis, const PerturbationSpec& pert,
                                       const RobustnessOptions& options) {
  const Eigensystem es = perturbed_eigensystem(basis, pert, options);
  const auto dim = static_cast<Eigen::Index>(basis.size());
  LocalizationReport r;
  // component n of eigenvector n' is <n|n'>
  r.overlaps = es.vectors.cwiseAbs2();

  struct Entry {
    double overlap;
    Eigen::Index level, state;
  };
  std::vector<Entry> entries;
  entries.reserve(static_cast<std::size_t>(dim * dim));
  for (Eigen::Index n = 0; n < dim; ++n)
    for (Eigen::Index s = 0; s < dim; ++s) entries.push_back({r.overlaps(n, s), n, s});
  std::stable_sort(entries.begin(), entries.end(),
                   [](const Entry& a, const Entry& b) { return a.overlap > b.overlap; });
  std::vector<bool> level_used(basis.size(), false), state_used(basis.size(), false);
  r.levels.resize(basis.size());
  std::size_t assigned = 0;
  for (const auto& e : entries) {
    if (assigned == basis.size()) break;
    const auto n = static_cast<std::size_t>(e.level), s = static_cast<std::size_t>(e.state);
    if (level_used[n] || state_used[s]) continue;
    level_used[n] = state_used[s] = true;
    r.levels[n] = {n, s, std::clamp(e.overlap, 0.0, 1.0), e.overlap > 0.5};
    ++assigned;
  }
  std::size_t persisting = 0;
  for (const auto& l : r.levels) {
    r.min_overlap = std::min(r.min_overlap, l.overlap);
    persisting += l.persists;
  }
  r.persist_fraction = basis.size() ? static_cast<double>(persisting) / static_cast<double>(basis.size()) : 1.0;
  return r;
}

std::vector<SweepPoint> fidelity_sweep(const Basis& basis, const ControlMatrix& control, const PulseSchedule& schedule,
                                       std::span<const std::size_t> logical, const CMatrix& target,
                                       const PerturbationSpec& pert, std::span<const double> epsilon2,
                                       const SweepOptions& options) {
  pert.validate();
  check_size(basis.size(), options.robustness);
  if (target.rows() != static_cast<Eigen::Index>(logical.size()))
    throw DimensionMismatch("target does not match the logical subspace");
  for (double e : epsilon2)
    if (!(e >= 0.0) || !std::isfinite(e)) throw DomainError("eps2 values must be finite and >= 0");

  std::vector<SweepPoint> out(epsilon2.size());
  auto evaluate = [&](std::size_t k) {
    PerturbationSpec p = pert;
    p.strength = epsilon2[k];
    ExecutionOptions ex = options.execution;
    if (p.strength > 0.0) ex.static_perturbation = p.strength * perturbation_matrix(basis.size(), p);
    const CMatrix u = execute_schedule(basis, control, schedule, Engine::exact, ex).matrix();
    const auto loc = localization_report(basis, p, options.robustness);
    out[k] = {p.strength, fidelity(restrict_to(u, logical), target), loc.min_overlap, loc.persist_fraction};
  };

  const unsigned threads = std::max(1U, std::min<unsigned>(options.threads, static_cast<unsigned>(out.size())));
  if (threads <= 1) {
    for (std::size_t k = 0; k < out.size(); ++k) evaluate(k);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      try {
        for (std::size_t k = next++; k < out.size(); k = next++) evaluate(k);
      } catch (...) {
        errors[t] = std::current_exception();
        next = out.size();
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

std::string sweep_csv(const std::vector<SweepPoint>& points) {
  std::ostringstream os;
  os << "epsilon2,fidelity,min_overlap,persist_fraction\n";
  for (const auto& p : points)
    os << format_double(p.epsilon2) << ',' << format_double(p.fidelity) << ',' << format_double(p.min_overlap)
       << ',' << format_double(p.persist_fraction) << '\n';
  return os.str();
}

double infidelity_slope(const std::vector<SweepPoint>& points) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (const auto& p : points) {
    if (!(p.epsilon2 > 0.0) || !(p.fidelity < 1.0)) continue;
    const double x = std::log(p.epsilon2), y = std::log(1.0 - p.fidelity);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 2) throw DomainError("slope needs at least two points with eps2 > 0 and F < 1");
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace actiongate
