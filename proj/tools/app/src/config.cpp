// SPDX-License-Identifier: Apache-2.0
#include "qshadow/app/config.hpp"

#include <cmath>
#include <set>

#include "qshadow/error.hpp"

namespace qshadow::app {

namespace {

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ConfigError(std::string("missing field \"") + key + "\"");
  }
  return j.at(key);
}

template <typename T>
T get(const json& j, const char* key) {
  try {
    return require(j, key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("field \"") + key + "\": " + e.what());
  }
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  return j.contains(key) ? get<T>(j, key) : fallback;
}

std::uint64_t get_u64(const json& j, const char* key) {
  const json& v = require(j, key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    throw ConfigError(std::string("field \"") + key + "\" must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

std::vector<double> get_list(const json& j, const char* key) {
  if (!j.contains(key)) return {};
  const json& v = j.at(key);
  if (v.is_number()) return {v.get<double>()};
  if (!v.is_array()) throw ConfigError(std::string("field \"") + key + "\" must be a list");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) throw ConfigError(std::string("field \"") + key + "\" must hold numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

void check_keys(const json& j, std::initializer_list<const char*> allowed, const char* where) {
  if (!j.is_object()) throw ConfigError(std::string(where) + " must be an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& item : j.items()) {
    if (!ok.count(item.key())) {
      throw ConfigError(std::string("unknown field \"") + item.key() + "\" in " + where);
    }
  }
}

PureState named_state(const std::string& name, int n) {
  const std::size_t dim = basis_dim(n);
  const double h = std::sqrt(0.5);
  auto power = [&](Complex a, Complex b) {
    CVector v{1.0};
    for (int q = 0; q < n; ++q) v = kron(v, CVector{a, b});
    return PureState::normalized(n, std::move(v));
  };
  if (name == "zero") return PureState::basis(n, 0);
  if (name == "one") return PureState::basis(n, dim - 1);
  if (name == "plus") return power(h, h);
  if (name == "minus") return power(h, -h);
  if (name == "i") return power(h, Complex(0.0, h));
  if (name == "ghz") {
    CVector v(dim);
    v.front() = h;
    v.back() = h;
    return PureState(n, std::move(v));
  }
  throw ConfigError("unknown named state \"" + name + "\"");
}

bool is_pure_form(const json& j) {
  return j.is_object() && (j.contains("basis") || j.contains("amplitudes") ||
                           j.contains("haar_seed") ||
                           (j.contains("named") && j.at("named") != "maximally_mixed"));
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& file) {
  const std::filesystem::path p(file);
  return p.is_absolute() ? p : base / p;
}

CMatrix matrix_field(const json& j, const std::filesystem::path& base_dir) {
  if (j.contains("matrix")) return matrix_from_json(j.at("matrix"));
  const json file = read_json_file(resolve(base_dir, get<std::string>(j, "file")));
  return matrix_from_json(file.is_object() ? require(file, "matrix") : file);
}

void require_dim(const CMatrix& m, int qubits, const char* what) {
  if (m.rows() != basis_dim(qubits) || m.cols() != basis_dim(qubits)) {
    throw Error(ErrorKind::DimMismatch, std::string(what) + " is " + std::to_string(m.rows()) +
                                            "x" + std::to_string(m.cols()) + ", expected " +
                                            std::to_string(basis_dim(qubits)) + " per side");
  }
}

}  // namespace

PureState parse_pure_state(const json& j, int qubits) {
  if (!j.is_object() || j.size() != 1) {
    throw ConfigError("state spec must be an object with exactly one field: " + j.dump());
  }
  if (j.contains("named")) return named_state(get<std::string>(j, "named"), qubits);
  if (j.contains("basis")) {
    const auto index = get_u64(j, "basis");
    if (index >= basis_dim(qubits)) throw ConfigError("basis index out of range");
    return PureState::basis(qubits, index);
  }
  if (j.contains("amplitudes")) {
    CVector v = vector_from_json(j.at("amplitudes"));
    if (v.size() != basis_dim(qubits)) {
      throw Error(ErrorKind::DimMismatch, "state has " + std::to_string(v.size()) +
                                              " amplitudes, expected " +
                                              std::to_string(basis_dim(qubits)));
    }
    return PureState(qubits, std::move(v));
  }
  if (j.contains("haar_seed")) {
    Stream rng(get_u64(j, "haar_seed"));
    return haar_sample(qubits, rng);
  }
  throw ConfigError("unrecognised state spec " + j.dump());
}

DensityMatrix parse_density(const json& j, int qubits, const std::filesystem::path& base_dir) {
  if (is_pure_form(j)) return DensityMatrix::from_pure(parse_pure_state(j, qubits));
  if (!j.is_object() || j.size() != 1) throw ConfigError("rho spec must have exactly one field");
  if (j.contains("named")) return DensityMatrix::maximally_mixed(qubits);
  if (j.contains("random")) {
    const json& r = j.at("random");
    check_keys(r, {"rank", "seed"}, "rho.random");
    Stream rng(get_u64(r, "seed"));
    return random_density(qubits, static_cast<int>(get_or<std::int64_t>(r, "rank", 1)), rng);
  }
  if (j.contains("matrix") || j.contains("file")) {
    CMatrix m = matrix_field(j, base_dir);
    require_dim(m, qubits, "rho");
    return DensityMatrix(qubits, std::move(m));
  }
  throw ConfigError("unrecognised rho spec " + j.dump());
}

Observable parse_observable(const json& j, int qubits, const std::filesystem::path& base_dir) {
  if (!j.is_object() || j.size() != 1) {
    throw ConfigError("observable spec must have exactly one field");
  }
  if (j.contains("pauli")) {
    const auto label = get<std::string>(j, "pauli");
    if (static_cast<int>(label.size()) != qubits) {
      throw Error(ErrorKind::DimMismatch, "Pauli label \"" + label + "\" does not have " +
                                              std::to_string(qubits) + " letters");
    }
    return Observable::pauli(label);
  }
  if (j.contains("projector")) {
    return Observable(qubits, parse_pure_state(j.at("projector"), qubits).projector());
  }
  if (j.contains("gue_seed")) {
    Stream rng(get_u64(j, "gue_seed"));
    return Observable::gue(qubits, rng);
  }
  if (j.contains("identity")) return Observable(qubits, CMatrix::identity(basis_dim(qubits)));
  if (j.contains("matrix") || j.contains("file")) {
    CMatrix m = matrix_field(j, base_dir);
    require_dim(m, qubits, "observable");
    return Observable(qubits, std::move(m));
  }
  throw ConfigError("unrecognised observable spec " + j.dump());
}

EnsembleSpec parse_ensemble(const json& j, int qubits) {
  EnsembleSpec spec;
  if (j.is_string()) {
    spec.name = j.get<std::string>();
  } else {
    check_keys(j, {"name", "epsilon0", "psi"}, "ensemble");
    spec.name = get<std::string>(j, "name");
    spec.epsilon0 = get_or<double>(j, "epsilon0", 0.0);
    if (j.contains("psi")) spec.psi = parse_pure_state(j.at("psi"), qubits);
  }
  static const std::set<std::string> known{"haar", "real_haar", "binary_phase", "stabilizer",
                                           "adversarial_mixture", "single_state"};
  if (!known.count(spec.name)) throw ConfigError("unknown ensemble \"" + spec.name + "\"");
  if ((spec.name == "adversarial_mixture" || spec.name == "single_state") && !spec.psi) {
    spec.psi = PureState::basis(qubits, 0);
  }
  return spec;
}

EnsemblePtr EnsembleSpec::build(int qubits) const {
  if (psi && psi->qubits() != qubits) {
    throw Error(ErrorKind::DimMismatch, "ensemble state register differs from n");
  }
  if (name == "haar") return haar_ensemble(qubits);
  if (name == "real_haar") return real_haar_ensemble(qubits);
  if (name == "binary_phase") return binary_phase_ensemble(qubits);
  if (name == "stabilizer") return stabilizer_ensemble(qubits);
  if (name == "adversarial_mixture") return adversarial_mixture(epsilon0, *psi);
  if (name == "single_state") return single_state_ensemble(*psi);
  throw ConfigError("unknown ensemble \"" + name + "\"");
}

EnsembleSpec EnsembleSpec::with_epsilon0(double value) const {
  if (name != "adversarial_mixture") {
    throw ConfigError("epsilon0 applies only to the adversarial_mixture ensemble");
  }
  EnsembleSpec copy = *this;
  copy.epsilon0 = value;
  return copy;
}

StateSource ExperimentConfig::source() const {
  if (rho_pure) return StateSource::pure(*rho_pure);
  return StateSource::mixed(require_rho());
}

const DensityMatrix& ExperimentConfig::require_rho() const {
  if (!rho) throw ConfigError("this command needs a \"rho\" field");
  return *rho;
}

const Observable& ExperimentConfig::require_observable() const {
  if (!observable) throw ConfigError("this command needs an \"observable\" field");
  return *observable;
}

ExperimentConfig parse_config(const json& j, const std::filesystem::path& base_dir) {
  check_keys(j,
             {"n", "ensemble", "rho", "observable", "gamma", "delta", "bound", "seed", "shots",
              "copies", "moments", "distinguisher", "sweep", "outputs", "description"},
             "config");
  ExperimentConfig c;
  c.raw = j;
  c.hash = content_hash(j);
  const auto n = get<std::int64_t>(j, "n");
  if (n < 1 || n > kMaxQubits) throw ConfigError("n must lie in [1, " + std::to_string(kMaxQubits) + "]");
  c.qubits = static_cast<int>(n);

  if (j.contains("ensemble")) c.ensemble = parse_ensemble(j.at("ensemble"), c.qubits);
  if (j.contains("rho")) {
    const json& r = j.at("rho");
    if (is_pure_form(r)) {
      c.rho_pure = parse_pure_state(r, c.qubits);
      c.rho = DensityMatrix::from_pure(*c.rho_pure);
    } else {
      c.rho = parse_density(r, c.qubits, base_dir);
    }
  }
  if (j.contains("observable")) c.observable = parse_observable(j.at("observable"), c.qubits, base_dir);

  c.gamma = get_or<double>(j, "gamma", c.gamma);
  c.delta = get_or<double>(j, "delta", c.delta);
  if (!(c.gamma > 0.0)) throw ConfigError("gamma must be positive");
  if (!(c.delta > 0.0 && c.delta < 1.0)) throw ConfigError("delta must lie in (0, 1)");
  if (j.contains("bound")) {
    const json& b = j.at("bound");
    check_keys(b, {"kind", "epsilon"}, "bound");
    try {
      c.bound_kind = parse_bound_kind(get<std::string>(b, "kind"));
    } catch (const Error& e) {
      throw ConfigError(e.what());
    }
    if (b.contains("epsilon")) {
      if (b.at("epsilon") == "measured") {
        c.epsilon.reset();
      } else {
        c.epsilon = get<double>(b, "epsilon");
        if (!(*c.epsilon >= 0.0)) throw ConfigError("epsilon must be non-negative");
      }
    } else {
      c.epsilon = 0.0;
    }
  } else {
    c.epsilon = 0.0;
  }
  if (j.contains("seed")) c.seed = get_u64(j, "seed");
  if (j.contains("shots")) {
    c.shots = get_u64(j, "shots");
    if (*c.shots == 0) throw ConfigError("shots must be positive");
  }
  if (j.contains("copies")) c.copies = static_cast<int>(get<std::int64_t>(j, "copies"));
  if (j.contains("moments")) {
    const json& m = j.at("moments");
    check_keys(m, {"mode", "samples"}, "moments");
    const auto mode = get_or<std::string>(m, "mode", "exact");
    if (mode == "exact") {
      c.moment_mode = MomentMode::Exact;
    } else if (mode == "monte_carlo") {
      c.moment_mode = MomentMode::MonteCarlo;
    } else {
      throw ConfigError("moments.mode must be exact or monte_carlo");
    }
    if (m.contains("samples")) c.moment_samples = get_u64(m, "samples");
  }
  if (j.contains("distinguisher")) {
    const auto kind = get<std::string>(j, "distinguisher");
    if (kind == "expectation") {
      c.distinguisher = DistinguisherKind::Expectation;
    } else if (kind == "variance") {
      c.distinguisher = DistinguisherKind::Variance;
    } else {
      throw ConfigError("distinguisher must be expectation or variance");
    }
  }
  if (j.contains("sweep")) {
    const json& s = j.at("sweep");
    check_keys(s, {"epsilon0", "gamma", "delta", "runs"}, "sweep");
    c.sweep.epsilon0 = get_list(s, "epsilon0");
    c.sweep.gamma = get_list(s, "gamma");
    c.sweep.delta = get_list(s, "delta");
    if (s.contains("runs")) c.sweep.runs = get_u64(s, "runs");
    if (c.sweep.runs == 0) throw ConfigError("sweep.runs must be positive");
  }
  if (j.contains("outputs")) {
    const json& o = j.at("outputs");
    check_keys(o, {"report", "shots_csv"}, "outputs");
    c.outputs.report = get_or<std::string>(o, "report", "");
    c.outputs.shots_csv = get_or<std::string>(o, "shots_csv", "");
  }
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  return parse_config(read_json_file(path), path.parent_path());
}

}  // namespace qshadow::app
