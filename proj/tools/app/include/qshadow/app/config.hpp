// SPDX-License-Identifier: Apache-2.0
//
// JSON experiment configuration. A config names the register size, the
// auxiliary ensemble, the unknown state, the observable and the estimator
// targets; every command reads the subset it needs.
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "qshadow/app/json_io.hpp"
#include "qshadow/distinguishers.hpp"
#include "qshadow/ensembles.hpp"
#include "qshadow/moments.hpp"
#include "qshadow/observables.hpp"
#include "qshadow/shadows.hpp"
#include "qshadow/states.hpp"

namespace qshadow::app {

struct EnsembleSpec {
  std::string name = "haar";
  double epsilon0 = 0.0;        ///< adversarial_mixture only
  std::optional<PureState> psi;  ///< adversarial_mixture and single_state

  EnsemblePtr build(int qubits) const;
  /// Same spec with the mixture weight replaced (adversarial_mixture only).
  EnsembleSpec with_epsilon0(double epsilon0) const;
};

struct SweepSpec {
  std::vector<double> epsilon0;
  std::vector<double> gamma;
  std::vector<double> delta;
  std::uint64_t runs = 20;
};

struct OutputSpec {
  std::string report;      ///< file name inside --out; defaults per command
  std::string shots_csv;   ///< empty: no per-shot dump
};

struct ExperimentConfig {
  json raw;
  std::string hash;
  int qubits = 0;

  EnsembleSpec ensemble;
  std::optional<DensityMatrix> rho;
  std::optional<PureState> rho_pure;  ///< set when ρ was given as a vector
  std::optional<Observable> observable;

  double gamma = 0.1;
  double delta = 0.05;
  BoundKind bound_kind = BoundKind::Exact;
  std::optional<double> epsilon;  ///< nullopt: measure it from the ensemble
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> shots;

  int copies = 3;
  MomentMode moment_mode = MomentMode::Exact;
  std::uint64_t moment_samples = 20000;

  DistinguisherKind distinguisher = DistinguisherKind::Expectation;
  SweepSpec sweep;
  OutputSpec outputs;

  StateSource source() const;
  const DensityMatrix& require_rho() const;
  const Observable& require_observable() const;
};

/// State given as {"named": "zero"|"one"|"plus"|"minus"|"i"|"ghz"},
/// {"basis": k}, {"amplitudes": [...]} or {"haar_seed": s}.
PureState parse_pure_state(const json& j, int qubits);
/// Pure-state forms above, plus {"named": "maximally_mixed"},
/// {"random": {"rank": r, "seed": s}}, {"matrix": [[...]]} and
/// {"file": path} (a JSON matrix, relative to the config).
DensityMatrix parse_density(const json& j, int qubits, const std::filesystem::path& base_dir);
/// {"pauli": "XZ"}, {"projector": state}, {"matrix": [[...]]},
/// {"gue_seed": s}, {"identity": true} or {"file": path}.
Observable parse_observable(const json& j, int qubits, const std::filesystem::path& base_dir);
EnsembleSpec parse_ensemble(const json& j, int qubits);

ExperimentConfig parse_config(const json& j, const std::filesystem::path& base_dir);
ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace qshadow::app
