#include "misolab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include "misolab/linalg.hpp"

namespace misolab {

namespace {

constexpr double kClusterRelTol = 1e-6;

bool same_scalar(const Scalar& a, const Scalar& b, double tol) {
  return (a - b).is_zero(tol);
}

// (T − zI)^k h vanishes for k = dim.
bool in_generalized_eigenspace(const DenseOperator& t, const DenseVector& h,
                               const Scalar& z, double tol) {
  const DenseOperator n = t.shifted(z);
  DenseVector v = h;
  for (std::size_t k = 0; k < t.dim(); ++k) v = n.apply(v);
  if (t.mode() == Mode::Exact) return v.is_zero(0);
  const double growth = std::pow(std::max(1.0, linalg::spectral_norm(n)),
                                 static_cast<double>(t.dim()));
  const double size = std::max(1.0, std::sqrt(h.norm2().real_double()));
  return std::sqrt(v.norm2().real_double()) <= tol * growth * size;
}

DenseVector random_combination(const std::vector<DenseVector>& basis,
                               std::mt19937_64& rng) {
  std::uniform_int_distribution<long> coeff(-3, 3);
  const Mode mode = basis.front().mode();
  for (;;) {
    DenseVector out = DenseVector::zeros(basis.front().size(), mode);
    bool nonzero = false;
    for (const auto& b : basis) {
      const long re = coeff(rng);
      const long im = coeff(rng);
      if (re == 0 && im == 0) continue;
      nonzero = true;
      Scalar c = Scalar::from_int(re, mode) +
                 Scalar::from_int(im, mode) * Scalar::imag_unit(mode);
      out = out + b.scaled(c);
    }
    if (nonzero && !out.is_zero(0)) return out;
  }
}

std::vector<std::vector<std::size_t>> single_linkage(
    const std::vector<std::complex<double>>& values,
    const std::vector<std::size_t>& members, double threshold) {
  std::vector<std::size_t> parent(members.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&parent](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t a = 0; a < members.size(); ++a) {
    for (std::size_t b = a + 1; b < members.size(); ++b) {
      if (std::abs(values[members[a]] - values[members[b]]) <= threshold) {
        parent[find(a)] = find(b);
      }
    }
  }
  std::vector<std::vector<std::size_t>> groups;
  std::vector<long> slot(members.size(), -1);
  for (std::size_t a = 0; a < members.size(); ++a) {
    const std::size_t root = find(a);
    if (slot[root] < 0) {
      slot[root] = static_cast<long>(groups.size());
      groups.emplace_back();
    }
    groups[static_cast<std::size_t>(slot[root])].push_back(members[a]);
  }
  return groups;
}

std::string complex_text(std::complex<double> z) {
  std::ostringstream os;
  os.precision(6);
  os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

double max_inner_magnitude(const std::vector<DenseVector>& a,
                           const std::vector<DenseVector>& b) {
  double m = 0.0;
  for (const auto& u : a) {
    for (const auto& v : b) m = std::max(m, inner(u, v).abs());
  }
  return m;
}

}  // namespace

bool is_unimodular(const Scalar& z, double tol) {
  if (z.is_exact()) return z.abs2().exact_value().re == 1;
  return std::abs(z.abs() - 1.0) <= tol;
}

DenseOperator jordan_matrix(const JordanSpec& spec) {
  if (spec.size == 0) throw PreconditionError("Jordan block size must be ≥ 1");
  const Mode mode = spec.z.mode();
  const std::size_t k = spec.size;
  std::vector<Scalar> e(k * k, Scalar::zero(mode));
  for (std::size_t i = 0; i < k; ++i) {
    e[i * k + i] = spec.z;
    if (i + 1 < k) e[i * k + i + 1] = Scalar::one(mode);
  }
  return DenseOperator(k, std::move(e));
}

DenseOperator jordan_sum(const std::vector<JordanSpec>& blocks) {
  if (blocks.empty()) throw PreconditionError("need at least one Jordan block");
  DenseOperator out = jordan_matrix(blocks.front());
  for (std::size_t i = 1; i < blocks.size(); ++i) {
    out = direct_sum(out, jordan_matrix(blocks[i]));
  }
  return out;
}

std::optional<NilpotentInfo> nilpotency_index(const DenseOperator& n, double tol) {
  const std::size_t dim = n.dim();
  const Mode mode = n.mode();
  const double base = std::max(1.0, n.max_abs());
  DenseOperator previous = DenseOperator::identity(dim, mode);
  DenseOperator power = n;
  for (std::size_t k = 1; k <= dim; ++k) {
    const double threshold =
        mode == Mode::Exact ? 0.0 : tol * std::pow(base, static_cast<double>(k));
    if (power.is_zero(threshold)) {
      std::size_t best = 0;
      double best_norm = -1.0;
      for (std::size_t j = 0; j < dim; ++j) {
        const double v = previous.column(j).max_abs();
        if (v > best_norm) {
          best_norm = v;
          best = j;
        }
      }
      return NilpotentInfo{k, DenseVector::basis(dim, best, mode)};
    }
    previous = power;
    power = power * n;
  }
  return std::nullopt;
}

SpectrumClustering cluster_spectrum(const DenseOperator& t) {
  SpectrumClustering out;
  const auto ev = linalg::eigenvalues(t);
  const std::size_t n = ev.size();
  double scale = 1.0;
  for (auto z : ev) scale = std::max(scale, std::abs(z));
  const double base = kClusterRelTol * scale;
  const double norm = std::max(1.0, linalg::spectral_norm(t));
  const double delta = 64.0 * static_cast<double>(n) *
                       std::numeric_limits<double>::epsilon() * norm;
  auto radius = [&](std::size_t k) {
    if (k <= 1) return base;
    return std::max(base, 2.0 * norm * std::pow(delta, 1.0 / static_cast<double>(k)));
  };

  std::vector<std::size_t> remaining(n);
  std::iota(remaining.begin(), remaining.end(), 0);
  std::vector<std::vector<std::size_t>> accepted;
  for (std::size_t k = n; k >= 1 && !remaining.empty(); --k) {
    for (auto& group : single_linkage(ev, remaining, radius(k))) {
      if (group.size() < k) continue;
      for (auto idx : group) {
        remaining.erase(std::find(remaining.begin(), remaining.end(), idx));
      }
      accepted.push_back(std::move(group));
    }
  }
  for (const auto& group : accepted) {
    std::complex<double> sum{};
    for (auto idx : group) sum += ev[idx];
    out.clusters.push_back({sum / static_cast<double>(group.size()), group.size()});
  }
  std::sort(out.clusters.begin(), out.clusters.end(), [](const auto& a, const auto& b) {
    if (a.centroid.real() != b.centroid.real()) return a.centroid.real() < b.centroid.real();
    return a.centroid.imag() < b.centroid.imag();
  });
  for (std::size_t a = 0; a < out.clusters.size(); ++a) {
    for (std::size_t b = a + 1; b < out.clusters.size(); ++b) {
      const double d = std::abs(out.clusters[a].centroid - out.clusters[b].centroid);
      const double r = radius(out.clusters[a].multiplicity + out.clusters[b].multiplicity);
      if (d <= 10.0 * r) {
        out.warnings.push_back("ambiguous eigenvalue clusters near " +
                               complex_text(out.clusters[a].centroid) + " and " +
                               complex_text(out.clusters[b].centroid));
      }
    }
  }
  return out;
}

EigenspaceSearch generalized_eigenspaces(const DenseOperator& t,
                                         const std::vector<Scalar>& eigen_hints,
                                         double tol) {
  const std::size_t n = t.dim();
  EigenspaceSearch out;

  auto chain_for = [&](const Scalar& z, std::optional<std::size_t> target)
      -> std::optional<GeneralizedEigenspace> {
    const DenseOperator shifted = t.shifted(z);
    DenseOperator power = shifted;
    std::vector<DenseVector> kernel;
    std::size_t depth = 0;
    for (std::size_t k = 1; k <= n; ++k) {
      if (k > 1) power = power * shifted;
      auto next = linalg::kernel_basis(power, tol);
      if (next.size() == kernel.size() && k > 1) break;
      kernel = std::move(next);
      depth = k;
      if (kernel.empty()) return std::nullopt;
      if (target && kernel.size() >= *target) break;
    }
    return GeneralizedEigenspace{z, std::move(kernel), depth};
  };

  if (t.mode() == Mode::Exact) {
    if (eigen_hints.empty()) {
      throw PreconditionError("exact mode needs eigenvalue hints");
    }
    std::vector<Scalar> distinct;
    for (const auto& h : eigen_hints) {
      if (h.mode() != Mode::Exact) throw ModeMismatch("eigen hint must be exact");
      if (std::none_of(distinct.begin(), distinct.end(),
                       [&h](const Scalar& d) { return d == h; })) {
        distinct.push_back(h);
      }
    }
    std::size_t total = 0;
    for (const auto& z : distinct) {
      auto space = chain_for(z, std::nullopt);
      if (!space) {
        throw PreconditionError("hint " + z.to_string() + " is not an eigenvalue");
      }
      total += space->dim();
      out.spaces.push_back(std::move(*space));
    }
    if (total != n) {
      throw PreconditionError("eigenvalue hints cover dimension " + std::to_string(total) +
                              " of " + std::to_string(n) + "; " +
                              std::to_string(n - total) + " missing");
    }
    return out;
  }

  auto clustering = cluster_spectrum(t);
  out.warnings = clustering.warnings;
  std::size_t total = 0;
  for (const auto& cluster : clustering.clusters) {
    const Scalar z = Scalar::floating(cluster.centroid);
    auto space = chain_for(z, cluster.multiplicity);
    if (!space) {
      out.warnings.push_back("no kernel found at eigenvalue " +
                             complex_text(cluster.centroid));
      continue;
    }
    if (space->dim() != cluster.multiplicity) {
      out.warnings.push_back("generalized eigenspace at " + complex_text(cluster.centroid) +
                             " has dimension " + std::to_string(space->dim()) +
                             ", multiplicity " + std::to_string(cluster.multiplicity));
    }
    total += space->dim();
    out.spaces.push_back(std::move(*space));
  }
  if (total != n) {
    out.warnings.push_back("generalized eigenspaces span dimension " +
                           std::to_string(total) + " of " + std::to_string(n));
  }
  return out;
}

AlgebraicDecomposition algebraic_decompose(const DenseOperator& t,
                                           const std::vector<Scalar>& eigen_hints,
                                           double tol) {
  const Mode mode = t.mode();
  const double work_tol = mode == Mode::Exact ? 0.0 : tol;
  auto search = generalized_eigenspaces(t, eigen_hints, work_tol);

  AlgebraicDecomposition out;
  out.warnings = search.warnings;
  out.pairwise_gram = Scalar::zero(mode);
  std::size_t total = 0;
  for (auto& space : search.spaces) {
    const DenseOperator shifted = t.shifted(space.z);
    const DenseOperator power =
        shifted.power(static_cast<unsigned>(space.chain_depth - 1));
    std::size_t best = 0;
    double best_norm = -1.0;
    for (std::size_t j = 0; j < space.basis.size(); ++j) {
      const double v = power.apply(space.basis[j]).max_abs();
      if (v > best_norm) {
        best_norm = v;
        best = j;
      }
    }
    total += space.dim();
    NilpotentInfo info{space.chain_depth, space.basis[best]};
    out.blocks.push_back({std::move(space), std::move(info)});
  }

  out.all_unimodular = true;
  for (const auto& block : out.blocks) {
    out.predicted_strict_order = std::max(
        out.predicted_strict_order, static_cast<unsigned>(2 * block.nilpotent.index - 1));
    if (!is_unimodular(block.space.z, work_tol)) {
      out.all_unimodular = false;
      out.refusal.push_back("eigenvalue " + block.space.z.to_string() +
                            " is not unimodular (|z|^2 = " +
                            block.space.z.abs2().to_string() + ")");
    }
  }

  for (std::size_t a = 0; a < out.blocks.size(); ++a) {
    for (std::size_t b = a + 1; b < out.blocks.size(); ++b) {
      for (const auto& u : out.blocks[a].space.basis) {
        for (const auto& v : out.blocks[b].space.basis) {
          Scalar g = inner(u, v).abs2();
          const bool larger = mode == Mode::Exact
                                  ? g.exact_value().re > out.pairwise_gram.exact_value().re
                                  : g.real_double() > out.pairwise_gram.real_double();
          if (larger) out.pairwise_gram = g;
        }
      }
    }
  }
  out.blocks_orthogonal = mode == Mode::Exact
                              ? out.pairwise_gram.exactly_zero()
                              : std::sqrt(out.pairwise_gram.real_double()) <= tol;
  if (!out.blocks_orthogonal) {
    out.refusal.push_back("generalized eigenspaces are not orthogonal (max |<u,v>|^2 = " +
                          out.pairwise_gram.to_string() + ")");
  }
  if (total != t.dim()) {
    out.refusal.push_back("generalized eigenspaces do not span the space");
  }

  // Spectral projections P_j = B E_j B^{-1} and the reassembly Σ P_j T P_j.
  if (total == t.dim()) {
    std::vector<DenseVector> columns;
    std::vector<std::size_t> owner;
    for (std::size_t j = 0; j < out.blocks.size(); ++j) {
      for (const auto& v : out.blocks[j].space.basis) {
        columns.push_back(v);
        owner.push_back(j);
      }
    }
    const DenseOperator basis = DenseOperator::from_columns(columns);
    if (auto inv = linalg::inverse(basis, work_tol)) {
      DenseOperator reassembled = DenseOperator::zero(t.dim(), mode);
      for (std::size_t j = 0; j < out.blocks.size(); ++j) {
        std::vector<Scalar> sel;
        for (std::size_t c = 0; c < t.dim(); ++c) {
          sel.push_back(owner[c] == j ? Scalar::one(mode) : Scalar::zero(mode));
        }
        const DenseOperator proj = basis * DenseOperator::diagonal(sel) * *inv;
        reassembled = reassembled + proj * t * proj;
      }
      const DenseOperator residual = reassembled - t;
      out.reassembly_residual = residual.max_abs();
      if (mode == Mode::Exact) out.reassembly_residual_exact = residual.max_abs2();
    } else {
      out.refusal.push_back("generalized eigenvector basis is singular");
      out.reassembly_residual = std::numeric_limits<double>::infinity();
    }
  }
  out.certified = out.refusal.empty();
  return out;
}

PerturbationReport perturbation_analysis(const DenseOperator& a, const DenseOperator& n,
                                         double tol, std::optional<unsigned> m_a_override) {
  if (a.dim() != n.dim()) throw DimensionMismatch("A and N differ in dimension");
  if (a.mode() != n.mode()) throw ModeMismatch("A and N differ in mode");
  const Mode mode = a.mode();
  const double work_tol = mode == Mode::Exact ? 0.0 : tol;
  const double commute_scale = std::max(1.0, a.max_abs() * n.max_abs());
  if (!(a * n - n * a).is_zero(work_tol * commute_scale)) {
    throw PreconditionError("A and N do not commute");
  }
  auto nil = nilpotency_index(n, work_tol);
  if (!nil) throw PreconditionError("N is not nilpotent");

  PerturbationReport out;
  out.nu = nil->index;
  if (m_a_override) {
    if (*m_a_override == 0 || !is_m_isometry(a, *m_a_override, tol)) {
      throw PreconditionError("A is not an " + std::to_string(*m_a_override) + "-isometry");
    }
    out.m_a = *m_a_override;
  } else {
    const auto order = strict_order(a, default_m_max(a.dim()), tol);
    if (!order.is_strict()) {
      throw PreconditionError("A is not an m-isometry for m ≤ " +
                              std::to_string(default_m_max(a.dim())));
    }
    out.m_a = order.m;
  }
  out.m_n_bound = out.m_a + 2 * static_cast<unsigned>(out.nu - 1);
  out.bound_verified = is_m_isometry(a + n, out.m_n_bound, tol);

  // M = Σ_l (−1)^l C(m_A−1, l) (A^l N^{ν−1})* (A^l N^{ν−1}); the criterion is
  // ⟨M f, f⟩ ≠ 0 for some f.
  const DenseOperator top = n.power(static_cast<unsigned>(out.nu - 1));
  DenseOperator form = DenseOperator::zero(a.dim(), mode);
  DenseOperator chain = top;
  double scale = 0.0;
  for (unsigned l = 0; l < out.m_a; ++l) {
    if (l > 0) chain = a * chain;
    const DenseOperator gram = chain.adjoint() * chain;
    const mpz_class c = binomial(out.m_a - 1, l);
    scale += c.get_d() * gram.max_abs();
    const DenseOperator term = gram.scaled(Scalar::from_mpz(c, mode));
    form = (l % 2 == 1) ? form - term : form + term;
  }
  const double threshold = work_tol * std::max(1.0, scale);
  if (auto w = hermitian_witness(form, threshold)) {
    out.strict = true;
    out.witness_value = inner(form.apply(*w), *w);
    out.witness = std::move(w);
  }
  return out;
}

std::vector<DenseVector> cyclic_subspace(const DenseOperator& t, const DenseVector& h,
                                         double tol) {
  if (h.is_zero(t.mode() == Mode::Exact ? 0.0 : tol)) {
    throw PreconditionError("cyclic subspace of the zero vector");
  }
  std::vector<DenseVector> basis{h};
  DenseVector v = h;
  for (std::size_t k = 1; k < t.dim(); ++k) {
    v = t.apply(v);
    if (linalg::in_span(basis, v, tol)) break;
    basis.push_back(v);
  }
  return basis;
}

std::array<std::pair<Scalar, Scalar>, 4> unimodular_pairs(Mode mode) {
  const Scalar one = Scalar::one(mode);
  const Scalar i = Scalar::imag_unit(mode);
  return {{{-one, -i}, {-one, i}, {one, -i}, {one, i}}};
}

namespace {

void require_jordan_pair(const DenseOperator& t, const DenseVector& h1,
                         const DenseVector& h2, const Scalar& z1, const Scalar& z2,
                         double tol) {
  const double work_tol = t.mode() == Mode::Exact ? 0.0 : tol;
  if (!is_unimodular(z1, work_tol) || !is_unimodular(z2, work_tol)) {
    throw PreconditionError("eigenvalues must be unimodular");
  }
  if (same_scalar(z1, z2, work_tol)) throw PreconditionError("eigenvalues must differ");
  if (h1.is_zero(work_tol) || h2.is_zero(work_tol)) {
    throw PreconditionError("generalized eigenvectors must be nonzero");
  }
  if (!in_generalized_eigenspace(t, h1, z1, tol)) {
    throw PreconditionError("h1 is not in the generalized eigenspace of " + z1.to_string());
  }
  if (!in_generalized_eigenspace(t, h2, z2, tol)) {
    throw PreconditionError("h2 is not in the generalized eigenspace of " + z2.to_string());
  }
}

bool orbit_polynomial(const DenseOperator& t, const DenseVector& v, std::size_t window,
                      double tol) {
  return detect_degree(orbit_sequence(t, v, window), tol).is_polynomial();
}

}  // namespace

OrthoReport ortho_test_generalized(const DenseOperator& t, const DenseVector& h1,
                                   const DenseVector& h2, const Scalar& z1,
                                   const Scalar& z2, std::size_t window, double tol,
                                   std::optional<std::pair<Scalar, Scalar>> eps) {
  require_jordan_pair(t, h1, h2, z1, z2, tol);
  if (window < 3) throw PreconditionError("window must be ≥ 3");
  const Mode mode = t.mode();
  const double work_tol = mode == Mode::Exact ? 0.0 : tol;
  OrthoReport out;
  out.which = same_scalar(z1, -z2, work_tol) ? OrthoReport::Case::Opposite
                                             : OrthoReport::Case::Generic;
  out.eps = eps.value_or(std::pair{Scalar::one(mode), Scalar::imag_unit(mode)});
  if (eps) {
    const auto pairs = unimodular_pairs(mode);
    const bool member = std::any_of(pairs.begin(), pairs.end(), [&](const auto& p) {
      return same_scalar(p.first, eps->first, work_tol) &&
             same_scalar(p.second, eps->second, work_tol);
    });
    if (!member) throw PreconditionError("epsilon pair must lie in {-1,1} x {-i,i}");
  }

  out.sum_orbit_polynomial = orbit_polynomial(t, h1 + h2, window, tol);
  if (out.which == OrthoReport::Case::Opposite) {
    out.eps_orbits_polynomial =
        orbit_polynomial(t, h1.scaled(out.eps.first) + h2, window, tol) &&
        orbit_polynomial(t, h1.scaled(out.eps.second) + h2, window, tol);
  }

  out.mixed_inner_vanishes = true;
  out.real_part_vanishes = true;
  DenseVector a = h1;
  DenseVector b = h2;
  for (std::size_t n = 0; n < window; ++n) {
    if (n > 0) {
      a = t.apply(a);
      b = t.apply(b);
    }
    const Scalar ip = inner(a, b);
    const double bound =
        work_tol * std::max(1.0, std::sqrt(a.norm2().real_double() * b.norm2().real_double()));
    out.max_mixed_inner = std::max(out.max_mixed_inner, ip.abs());
    if (!ip.is_zero(bound)) out.mixed_inner_vanishes = false;
    if (!ip.real_part().is_zero(bound)) out.real_part_vanishes = false;
  }
  out.re_only = out.real_part_vanishes && !out.mixed_inner_vanishes;

  if (out.which == OrthoReport::Case::Opposite) {
    const bool part_i = !out.sum_orbit_polynomial || out.real_part_vanishes;
    const bool part_ii = !out.eps_orbits_polynomial || out.mixed_inner_vanishes;
    out.theorem_consistent = part_i && part_ii;
    out.diagnostics.push_back(std::string("opposite eigenvalues; sum orbit ") +
                              (out.sum_orbit_polynomial ? "polynomial" : "not polynomial") +
                              ", epsilon orbits " +
                              (out.eps_orbits_polynomial ? "polynomial" : "not polynomial"));
  } else {
    out.theorem_consistent = !out.sum_orbit_polynomial || out.mixed_inner_vanishes;
    out.diagnostics.push_back(std::string("generic eigenvalues; sum orbit ") +
                              (out.sum_orbit_polynomial ? "polynomial" : "not polynomial"));
  }
  if (out.re_only) {
    out.diagnostics.push_back("real parts vanish but the inner products do not");
  }
  return out;
}

std::optional<unsigned> restricted_strict_order(const DenseOperator& t,
                                                const std::vector<DenseVector>& spanning_set,
                                                unsigned m_max, double tol) {
  if (spanning_set.empty()) throw PreconditionError("empty spanning set");
  if (t.mode() == Mode::Float) {
    const auto q = linalg::orthonormalize(spanning_set, tol);
    const auto verdict = strict_order(linalg::compress(t, q), m_max, tol);
    if (verdict.is_strict()) return verdict.m;
    return std::nullopt;
  }
  // Exact: the quadratic form v ↦ Σ_k (−1)^k C(m,k) ||T^k v||² vanishes on the
  // span iff its Gram matrix over the spanning set vanishes.
  const std::size_t s = spanning_set.size();
  std::vector<std::vector<std::vector<Scalar>>> grams;  // grams[k][a][b]
  std::vector<DenseVector> images = spanning_set;
  for (unsigned k = 0; k <= m_max; ++k) {
    if (k > 0) {
      for (auto& v : images) v = t.apply(v);
    }
    std::vector<std::vector<Scalar>> g(s, std::vector<Scalar>(s));
    for (std::size_t a = 0; a < s; ++a) {
      for (std::size_t b = 0; b < s; ++b) g[a][b] = inner(images[a], images[b]);
    }
    grams.push_back(std::move(g));
  }
  for (unsigned m = 1; m <= m_max; ++m) {
    bool zero = true;
    for (std::size_t a = 0; a < s && zero; ++a) {
      for (std::size_t b = 0; b < s && zero; ++b) {
        Scalar total = Scalar::zero(Mode::Exact);
        for (unsigned k = 0; k <= m; ++k) {
          Scalar term = grams[k][a][b] * Scalar::from_mpz(binomial(m, k), Mode::Exact);
          total = (k % 2 == 1) ? total - term : total + term;
        }
        zero = total.exactly_zero();
      }
    }
    if (zero) return m;
  }
  return std::nullopt;
}

EquivalenceReport jordan_pair_equivalences(const DenseOperator& t, const DenseVector& h1,
                                           const DenseVector& h2, const Scalar& z1,
                                           const Scalar& z2, double tol,
                                           std::optional<std::size_t> window,
                                           std::uint64_t seed, std::size_t samples) {
  require_jordan_pair(t, h1, h2, z1, z2, tol);
  const Mode mode = t.mode();
  const double work_tol = mode == Mode::Exact ? 0.0 : tol;
  const std::size_t len = window.value_or(default_window(t.dim()));
  std::mt19937_64 rng(seed);

  const auto c1 = cyclic_subspace(t, h1, tol);
  const auto c2 = cyclic_subspace(t, h2, tol);
  EquivalenceReport out;
  out.dim1 = c1.size();
  out.dim2 = c2.size();
  auto poly = [&](const DenseVector& v) { return orbit_polynomial(t, v, len, tol); };

  // (i)
  if (mode == Mode::Exact) {
    out.cross_gram = max_inner_magnitude(c1, c2);
    out.conditions[0] = std::all_of(c1.begin(), c1.end(), [&](const DenseVector& u) {
      return std::all_of(c2.begin(), c2.end(),
                         [&](const DenseVector& v) { return inner(u, v).exactly_zero(); });
    });
  } else {
    out.cross_gram =
        max_inner_magnitude(linalg::orthonormalize(c1, tol), linalg::orthonormalize(c2, tol));
    out.conditions[0] = out.cross_gram <= tol;
  }

  // (ii) translates T^j h₁, j = 0..dim C_T(h₁).
  std::vector<DenseVector> translates{h1};
  for (std::size_t j = 1; j <= c1.size(); ++j) translates.push_back(t.apply(translates.back()));
  if (same_scalar(z1, -z2, work_tol)) {
    const auto pairs = unimodular_pairs(mode);
    out.conditions[1] = std::any_of(pairs.begin(), pairs.end(), [&](const auto& eps) {
      return std::all_of(translates.begin(), translates.end(), [&](const DenseVector& g) {
        return poly(g.scaled(eps.first) + h2) && poly(g.scaled(eps.second) + h2);
      });
    });
  } else {
    out.conditions[1] = std::all_of(translates.begin(), translates.end(),
                                    [&](const DenseVector& g) { return poly(g + h2); });
  }

  // (iii) g₁ over the cyclic basis and random members of C_T(h₁).
  std::vector<DenseVector> g1s(c1.begin(), c1.end());
  for (std::size_t s = 0; s < samples; ++s) g1s.push_back(random_combination(c1, rng));
  out.conditions[2] = std::all_of(g1s.begin(), g1s.end(),
                                  [&](const DenseVector& g) { return poly(g + h2); });

  // (iv) basis pairs plus random pairs.
  bool all_pairs = true;
  for (const auto& u : c1) {
    for (const auto& v : c2) all_pairs = all_pairs && poly(u + v);
  }
  for (std::size_t s = 0; s < samples && all_pairs; ++s) {
    all_pairs = poly(random_combination(c1, rng) + random_combination(c2, rng));
  }
  out.conditions[3] = all_pairs;

  // (v)
  std::vector<DenseVector> spanning(c1.begin(), c1.end());
  spanning.insert(spanning.end(), c2.begin(), c2.end());
  const std::size_t sub_dim = linalg::rank(spanning, tol);
  out.restricted_order = restricted_strict_order(
      t, spanning, static_cast<unsigned>(2 * sub_dim + 1), tol);
  out.conditions[4] = out.restricted_order.has_value();

  out.all_agree = std::all_of(out.conditions.begin(), out.conditions.end(),
                              [&](bool c) { return c == out.conditions[0]; });
  return out;
}

SpectrumCheck unimodular_spectrum_check(const DenseOperator& t, double tol,
                                        const std::vector<Scalar>& eigen_hints) {
  SpectrumCheck out;
  if (t.mode() == Mode::Exact && !eigen_hints.empty()) {
    const auto search = generalized_eigenspaces(t, eigen_hints, 0.0);
    out.all_on_circle = true;
    for (const auto& space : search.spaces) {
      out.spectrum.push_back(space.z.to_complex());
      out.moduli.push_back(space.z.abs());
      out.all_on_circle = out.all_on_circle && is_unimodular(space.z, 0.0);
    }
    return out;
  }
  const double work_tol = tol > 0.0 ? tol : kDefaultDefectTol;
  const auto clustering = cluster_spectrum(t);
  out.all_on_circle = true;
  for (const auto& c : clustering.clusters) {
    out.spectrum.push_back(c.centroid);
    out.moduli.push_back(std::abs(c.centroid));
    out.all_on_circle = out.all_on_circle && std::abs(std::abs(c.centroid) - 1.0) <= work_tol;
  }
  return out;
}

}  // namespace misolab
