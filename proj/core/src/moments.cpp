// SPDX-License-Identifier: Apache-2.0
#include "qshadow/moments.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

#include "qshadow/error.hpp"

namespace qshadow {

namespace {

// Numerical slack on the conversion inequalities.
constexpr double kBoundSlack = 1e-9;
constexpr double kLeakTolerance = 1e-6;
// Below this leak the compressed trace norm is used for the additive distance.
constexpr double kCompressedNormLeak = 1e-12;

void require_moment_size(int qubits, int copies) {
  if (qubits < 1 || copies < 1) {
    throw Error(ErrorKind::InvalidArgument, "qubits and copies must be positive");
  }
  if (qubits * copies > kMaxMomentQubits) {
    throw Error(ErrorKind::SizeLimit, "n*t = " + std::to_string(qubits * copies) +
                                          " exceeds " + std::to_string(kMaxMomentQubits));
  }
}

std::vector<std::uint64_t> digits_of(std::uint64_t index, int qubits, int copies) {
  std::vector<std::uint64_t> d(static_cast<std::size_t>(copies));
  const std::uint64_t mask = (std::uint64_t{1} << qubits) - 1;
  for (int c = copies - 1; c >= 0; --c) {
    d[static_cast<std::size_t>(c)] = index & mask;
    index >>= qubits;
  }
  return d;
}

std::uint64_t index_of(const std::vector<std::uint64_t>& digits, int qubits) {
  std::uint64_t index = 0;
  for (const auto d : digits) index = (index << qubits) | d;
  return index;
}

void require_square_moment(const MomentOperator& m) {
  require_moment_size(m.qubits, m.copies);
  const std::size_t dim = std::size_t{1} << (m.qubits * m.copies);
  if (m.matrix.rows() != dim || m.matrix.cols() != dim) {
    throw Error(ErrorKind::DimMismatch, "moment operator must be 2^{nt} square");
  }
}

// V† M V for the symmetric basis V.
CMatrix compress(const MomentOperator& m, const SymmetricBasis& basis) {
  const std::size_t ds = basis.dim();
  const std::size_t dim = m.matrix.rows();
  CMatrix c(ds, ds);
  for (std::size_t i = 0; i < dim; ++i) {
    const std::size_t a = basis.column_of[i];
    const auto row = m.matrix.row(i);
    for (std::size_t j = 0; j < dim; ++j) c(a, basis.column_of[j]) += row[j];
  }
  for (std::size_t a = 0; a < ds; ++a) {
    for (std::size_t b = 0; b < ds; ++b) c(a, b) *= basis.scale[a] * basis.scale[b];
  }
  return c;
}

}  // namespace

std::uint64_t sym_dim(int qubits, int copies) {
  require_moment_size(qubits, copies);
  // C(N + t - 1, t), built incrementally so every intermediate is integral.
  const std::uint64_t n = std::uint64_t{1} << qubits;
  std::uint64_t result = 1;
  for (std::uint64_t k = 1; k <= static_cast<std::uint64_t>(copies); ++k) {
    result = result * (n + k - 1) / k;
  }
  return result;
}

CMatrix sym_projector(int qubits, int copies) {
  require_moment_size(qubits, copies);
  const std::size_t dim = std::size_t{1} << (qubits * copies);
  std::vector<int> perm(static_cast<std::size_t>(copies));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<int>> perms;
  do {
    perms.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  const double weight = 1.0 / static_cast<double>(perms.size());

  CMatrix p(dim, dim);
  std::vector<std::uint64_t> permuted(static_cast<std::size_t>(copies));
  for (std::size_t i = 0; i < dim; ++i) {
    const auto d = digits_of(i, qubits, copies);
    for (const auto& pi : perms) {
      for (std::size_t c = 0; c < d.size(); ++c) permuted[c] = d[static_cast<std::size_t>(pi[c])];
      p(index_of(permuted, qubits), i) += weight;
    }
  }
  return p;
}

SymmetricBasis symmetric_basis(int qubits, int copies) {
  require_moment_size(qubits, copies);
  const std::size_t dim = std::size_t{1} << (qubits * copies);
  SymmetricBasis basis;
  basis.qubits = qubits;
  basis.copies = copies;
  basis.column_of.resize(dim);

  // Canonical representative of each orbit: digits sorted ascending.
  std::map<std::uint64_t, std::uint32_t> column_of_canonical;
  std::vector<std::uint64_t> canonical(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    auto d = digits_of(i, qubits, copies);
    std::sort(d.begin(), d.end());
    canonical[i] = index_of(d, qubits);
    column_of_canonical.emplace(canonical[i], 0);
  }
  std::uint32_t next = 0;
  for (auto& [key, column] : column_of_canonical) column = next++;

  std::vector<std::size_t> orbit(column_of_canonical.size(), 0);
  for (std::size_t i = 0; i < dim; ++i) {
    basis.column_of[i] = column_of_canonical.at(canonical[i]);
    ++orbit[basis.column_of[i]];
  }
  basis.scale.resize(orbit.size());
  for (std::size_t a = 0; a < orbit.size(); ++a) {
    basis.scale[a] = 1.0 / std::sqrt(static_cast<double>(orbit[a]));
  }
  return basis;
}

CMatrix SymmetricBasis::isometry() const {
  CMatrix v(column_of.size(), dim());
  for (std::size_t i = 0; i < column_of.size(); ++i) v(i, column_of[i]) = scale[column_of[i]];
  return v;
}

MomentOperator haar_moment(int qubits, int copies) {
  MomentOperator m;
  m.qubits = qubits;
  m.copies = copies;
  m.matrix = sym_projector(qubits, copies);
  m.matrix *= 1.0 / static_cast<double>(sym_dim(qubits, copies));
  return m;
}

MomentOperator ensemble_moment(const Ensemble& ensemble, int copies, MomentMode mode,
                               std::uint64_t samples, const Stream& rng) {
  const int qubits = ensemble.qubits();
  require_moment_size(qubits, copies);
  const std::size_t dim = std::size_t{1} << (qubits * copies);

  MomentOperator m;
  m.qubits = qubits;
  m.copies = copies;
  m.matrix = CMatrix(dim, dim);

  if (mode == MomentMode::Exact) {
    if (const auto* support = ensemble.support()) {
      for (const auto& e : *support) {
        m.matrix.add_projector(tensor_power(e.state.amplitudes(), copies), e.weight);
      }
      return m;
    }
    if (auto analytic = ensemble.analytic_moment(copies)) return std::move(*analytic);
    throw Error(ErrorKind::NotEnumerable,
                "ensemble '" + ensemble.name() + "' has no finite support or closed form");
  }

  if (samples == 0) throw Error(ErrorKind::InvalidArgument, "Monte-Carlo mode needs samples > 0");
  const double w = 1.0 / static_cast<double>(samples);
  for (std::uint64_t s = 0; s < samples; ++s) {
    Stream child = rng.child(s);
    const PureState psi = ensemble.sample(child);
    m.matrix.add_projector(tensor_power(psi.amplitudes(), copies), w);
  }
  m.provenance = MomentOperator::Provenance::MonteCarlo;
  m.samples = samples;
  return m;
}

double additive_epsilon(const MomentOperator& m) {
  require_square_moment(m);
  if (support_leak(m) <= kCompressedNormLeak) {
    // M - H = V (V†MV - I/d_s) V† with V an isometry.
    const auto basis = symmetric_basis(m.qubits, m.copies);
    CMatrix c = compress(m, basis);
    const double inv = 1.0 / static_cast<double>(basis.dim());
    for (std::size_t a = 0; a < basis.dim(); ++a) c(a, a) -= inv;
    return trace_norm(c);
  }
  return trace_norm(m.matrix - haar_moment(m.qubits, m.copies).matrix);
}

double support_leak(const MomentOperator& m) {
  require_square_moment(m);
  const auto basis = symmetric_basis(m.qubits, m.copies);
  const CMatrix c = compress(m, basis);
  double sq = 0.0;
  const std::size_t dim = m.matrix.rows();
  for (std::size_t i = 0; i < dim; ++i) {
    const std::size_t a = basis.column_of[i];
    for (std::size_t j = 0; j < dim; ++j) {
      const std::size_t b = basis.column_of[j];
      const Complex inside = basis.scale[a] * c(a, b) * basis.scale[b];
      sq += std::norm(m.matrix(i, j) - inside);
    }
  }
  return std::sqrt(sq);
}

double relative_epsilon(const MomentOperator& m) {
  require_square_moment(m);
  const double leak = support_leak(m);
  if (leak > kLeakTolerance) {
    throw Error(ErrorKind::SupportLeak,
                "moment operator has weight " + std::to_string(leak) + " outside Sym");
  }
  const auto basis = symmetric_basis(m.qubits, m.copies);
  const auto values = hermitian_eigenvalues(compress(m, basis));
  const double ds = static_cast<double>(basis.dim());
  double eps = 0.0;
  for (const double lambda : values) eps = std::max(eps, std::abs(ds * lambda - 1.0));
  return eps;
}

ConversionReport conversion_report(const MomentOperator& m) {
  if (!m.exact()) {
    throw Error(ErrorKind::InvalidArgument, "conversion bounds need an exact moment operator");
  }
  ConversionReport r;
  r.qubits = m.qubits;
  r.copies = m.copies;
  r.sym_dim = sym_dim(m.qubits, m.copies);
  r.eps_add = additive_epsilon(m);
  r.eps_rel = relative_epsilon(m);
  const double ds = static_cast<double>(r.sym_dim);
  const double full = std::ldexp(1.0, m.qubits * m.copies);
  r.relative_to_additive = r.eps_add <= r.eps_rel + kBoundSlack;
  r.additive_to_relative = r.eps_rel <= ds * r.eps_add + kBoundSlack;
  r.additive_to_relative_coarse = r.eps_rel <= full * r.eps_add + kBoundSlack;
  return r;
}

}  // namespace qshadow
