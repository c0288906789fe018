// SPDX-License-Identifier: Apache-2.0
#include "qshadow/states.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "qshadow/error.hpp"

namespace qshadow {

void require_qubits(int qubits) {
  if (qubits < 1 || qubits > kMaxQubits) {
    throw Error(ErrorKind::SizeLimit,
                "qubit count " + std::to_string(qubits) + " outside [1, " +
                    std::to_string(kMaxQubits) + "]");
  }
}

PureState::PureState(int qubits, CVector amplitudes)
    : qubits_(qubits), amplitudes_(std::move(amplitudes)) {
  require_qubits(qubits);
  if (amplitudes_.size() != basis_dim(qubits)) {
    throw Error(ErrorKind::LengthMismatch, "state has " + std::to_string(amplitudes_.size()) +
                                               " amplitudes, expected " +
                                               std::to_string(basis_dim(qubits)));
  }
  const double nrm = norm(amplitudes_);
  if (std::abs(nrm - 1.0) > 1e-10) {
    throw Error(ErrorKind::InvalidArgument, "state norm " + std::to_string(nrm) + " != 1");
  }
}

PureState PureState::normalized(int qubits, CVector amplitudes) {
  const double nrm = norm(amplitudes);
  if (nrm == 0.0) throw Error(ErrorKind::InvalidArgument, "cannot normalise the zero vector");
  for (auto& a : amplitudes) a /= nrm;
  return PureState(qubits, std::move(amplitudes));
}

PureState PureState::basis(int qubits, std::uint64_t index) {
  require_qubits(qubits);
  if (index >= basis_dim(qubits)) throw Error(ErrorKind::InvalidArgument, "basis index too large");
  CVector amps(basis_dim(qubits));
  amps[index] = 1.0;
  return PureState(qubits, std::move(amps));
}

DensityMatrix::DensityMatrix(int qubits, CMatrix matrix)
    : qubits_(qubits), matrix_(std::move(matrix)) {
  require_qubits(qubits);
  if (matrix_.rows() != basis_dim(qubits) || matrix_.cols() != basis_dim(qubits)) {
    throw Error(ErrorKind::DimMismatch, "density matrix must be 2^n x 2^n");
  }
  require_hermitian(matrix_);
  const double tr = matrix_.trace().real();
  if (std::abs(tr - 1.0) > 1e-10) {
    throw Error(ErrorKind::InvalidArgument, "density matrix trace " + std::to_string(tr));
  }
  const auto values = hermitian_eigenvalues(matrix_);
  if (values.back() < -1e-10) {
    throw Error(ErrorKind::InvalidArgument,
                "density matrix has negative eigenvalue " + std::to_string(values.back()));
  }
}

DensityMatrix DensityMatrix::from_pure(const PureState& state) {
  return DensityMatrix(state.qubits(), state.projector());
}

DensityMatrix DensityMatrix::maximally_mixed(int qubits) {
  require_qubits(qubits);
  CMatrix m = CMatrix::identity(basis_dim(qubits));
  m *= 1.0 / static_cast<double>(basis_dim(qubits));
  return DensityMatrix(qubits, std::move(m));
}

namespace {

std::uint64_t parse_bits(std::string_view bits) {
  std::uint64_t value = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw Error(ErrorKind::InvalidArgument, "bit strings use 0/1 only");
    value = (value << 1) | static_cast<std::uint64_t>(c == '1');
  }
  return value;
}

std::string format_bits(std::uint64_t value, int qubits) {
  std::string s(static_cast<std::size_t>(qubits), '0');
  for (int q = 0; q < qubits; ++q) {
    if (value & qubit_bit(qubits, q)) s[static_cast<std::size_t>(q)] = '1';
  }
  return s;
}

}  // namespace

PauliMask PauliMask::from_strings(std::string_view x_bits, std::string_view z_bits) {
  if (x_bits.size() != z_bits.size()) {
    throw Error(ErrorKind::LengthMismatch, "x and z bit strings differ in length");
  }
  PauliMask m;
  m.qubits = static_cast<int>(x_bits.size());
  require_qubits(m.qubits);
  m.x = parse_bits(x_bits);
  m.z = parse_bits(z_bits);
  return m;
}

std::string PauliMask::x_string() const { return format_bits(x, qubits); }
std::string PauliMask::z_string() const { return format_bits(z, qubits); }

void apply_pauli(std::span<const Complex> in, std::uint64_t x, std::uint64_t z,
                 std::span<Complex> out) {
  for (std::size_t b = 0; b < in.size(); ++b) {
    const bool flip = (std::popcount(static_cast<std::uint64_t>(b) & z) & 1) != 0;
    out[b ^ x] = flip ? -in[b] : in[b];
  }
}

PureState apply_pauli(const PureState& s, const PauliMask& mask) {
  if (mask.qubits != s.qubits()) {
    throw Error(ErrorKind::LengthMismatch, "Pauli mask on " + std::to_string(mask.qubits) +
                                               " qubits applied to " +
                                               std::to_string(s.qubits()) + "-qubit state");
  }
  CVector out(s.dim());
  apply_pauli(s.amplitudes(), mask.x, mask.z, out);
  return PureState(PureState::Unchecked{}, s.qubits(), std::move(out));
}

PureState conjugate(const PureState& s) {
  CVector out(s.dim());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::conj(s[i]);
  return PureState(PureState::Unchecked{}, s.qubits(), std::move(out));
}

double fidelity(const PureState& a, const PureState& b) {
  return std::norm(inner(a.amplitudes(), b.amplitudes()));
}

double projector_distance(const PureState& a, const PureState& b) {
  if (a.dim() != b.dim()) throw Error(ErrorKind::DimMismatch, "states differ in dimension");
  double d = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) {
      const Complex pa = a[i] * std::conj(a[j]);
      const Complex pb = b[i] * std::conj(b[j]);
      d = std::max(d, std::abs(pa - pb));
    }
  }
  return d;
}

PureState haar_sample(int qubits, Stream& rng) {
  require_qubits(qubits);
  CVector amps(basis_dim(qubits));
  for (auto& a : amps) a = rng.complex_normal();
  return PureState::normalized(qubits, std::move(amps));
}

PureState real_haar_sample(int qubits, Stream& rng) {
  require_qubits(qubits);
  CVector amps(basis_dim(qubits));
  for (auto& a : amps) a = rng.normal();
  return PureState::normalized(qubits, std::move(amps));
}

PureState binary_phase_sample(int qubits, Stream& rng) {
  require_qubits(qubits);
  const std::size_t dim = basis_dim(qubits);
  const double amp = 1.0 / std::sqrt(static_cast<double>(dim));
  CVector amps(dim);
  std::uint64_t bits = 0;
  for (std::size_t b = 0; b < dim; ++b) {
    if (b % 64 == 0) bits = rng.next_u64();
    amps[b] = (bits & 1) ? -amp : amp;
    bits >>= 1;
  }
  return PureState::normalized(qubits, std::move(amps));
}

DensityMatrix random_density(int qubits, int rank, Stream& rng) {
  require_qubits(qubits);
  if (rank < 1) throw Error(ErrorKind::InvalidArgument, "rank must be positive");
  std::vector<double> weights(static_cast<std::size_t>(rank));
  double total = 0.0;
  for (auto& w : weights) {
    double u = rng.uniform();
    while (u <= 0.0) u = rng.uniform();
    w = -std::log(u);  // exponential spacings give a uniform simplex point
    total += w;
  }
  CMatrix m(basis_dim(qubits), basis_dim(qubits));
  for (const double w : weights) {
    const auto psi = haar_sample(qubits, rng);
    m.add_projector(psi.amplitudes(), w / total);
  }
  // Renormalise away round-off in the trace.
  m *= 1.0 / m.trace().real();
  return DensityMatrix(qubits, std::move(m));
}

}  // namespace qshadow
