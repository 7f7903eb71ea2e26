#include "misolab/generators.hpp"

#include <algorithm>
#include <numeric>

#include <Eigen/Dense>

namespace misolab::gen {

namespace {

long uniform(Rng& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

Scalar ex(long num, long den = 1) { return Scalar::exact(mpq_class(num, den)); }

// Nilpotent shift S of size k (ones on the superdiagonal).
DenseOperator nil_shift(std::size_t k) {
  return jordan_matrix({Scalar::zero(Mode::Exact), k});
}

std::vector<Scalar> pick_distinct(Rng& rng, const std::vector<Scalar>& pool,
                                  std::size_t count) {
  std::vector<std::size_t> idx(pool.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::shuffle(idx.begin(), idx.end(), rng);
  std::vector<Scalar> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(pool[idx[i]]);
  return out;
}

// Distinct values with pairwise distance ≥ gap.
std::vector<Scalar> pick_separated(Rng& rng, const std::vector<Scalar>& pool,
                                   std::size_t count, double gap) {
  for (;;) {
    auto out = pick_distinct(rng, pool, count);
    bool ok = true;
    for (std::size_t a = 0; a < count; ++a) {
      for (std::size_t b = a + 1; b < count; ++b) ok = ok && (out[a] - out[b]).abs() >= gap;
    }
    if (ok) return out;
  }
}

std::vector<std::size_t> block_sizes(Rng& rng, std::size_t count, std::size_t max_size,
                                     std::size_t max_dim) {
  std::vector<std::size_t> sizes;
  std::size_t used = 0;
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t room = max_dim - used - (count - i - 1);
    const auto s = static_cast<std::size_t>(
        uniform(rng, 1, static_cast<long>(std::min(max_size, room))));
    sizes.push_back(s);
    used += s;
  }
  return sizes;
}

std::string block_label(const std::vector<JordanSpec>& blocks) {
  std::string out;
  for (const auto& b : blocks) {
    if (!out.empty()) out += "+";
    out += "J(" + b.z.to_string() + "," + std::to_string(b.size) + ")";
  }
  return out;
}

std::vector<Scalar> distinct_hints(const std::vector<JordanSpec>& blocks) {
  std::vector<Scalar> hints;
  for (const auto& b : blocks) {
    if (std::find(hints.begin(), hints.end(), b.z) == hints.end()) hints.push_back(b.z);
  }
  return hints;
}

// z·I + Σ_r c_r S^r on a block of size k.
DenseOperator shift_polynomial(const Scalar& z, const std::vector<long>& c, std::size_t k) {
  DenseOperator s = nil_shift(k);
  DenseOperator out = DenseOperator::identity(k, Mode::Exact).scaled(z);
  DenseOperator power = DenseOperator::identity(k, Mode::Exact);
  for (std::size_t r = 0; r < c.size() && r + 1 < k; ++r) {
    power = power * s;
    out = out + power.scaled(ex(c[r]));
  }
  return out;
}

DenseOperator assemble(const std::vector<DenseOperator>& blocks) {
  DenseOperator out = blocks.front();
  for (std::size_t i = 1; i < blocks.size(); ++i) out = direct_sum(out, blocks[i]);
  return out;
}

}  // namespace

Scalar random_rational(Rng& rng, long bound, long den_max) {
  return Scalar::exact(mpq_class(uniform(rng, -bound, bound), uniform(rng, 1, den_max)),
                       mpq_class(uniform(rng, -bound, bound), uniform(rng, 1, den_max)));
}

DenseOperator random_exact_matrix(Rng& rng, std::size_t dim, long bound, long den_max) {
  std::vector<Scalar> e;
  for (std::size_t i = 0; i < dim * dim; ++i) e.push_back(random_rational(rng, bound, den_max));
  return DenseOperator(dim, std::move(e));
}

DenseVector random_exact_vector(Rng& rng, std::size_t dim, long bound, long den_max) {
  for (;;) {
    std::vector<Scalar> e;
    for (std::size_t i = 0; i < dim; ++i) e.push_back(random_rational(rng, bound, den_max));
    DenseVector v(std::move(e));
    if (!v.is_zero(0)) return v;
  }
}

Polynomial random_exact_polynomial(Rng& rng, std::size_t degree) {
  std::vector<Scalar> c;
  for (std::size_t k = 0; k <= degree; ++k) c.push_back(random_rational(rng, 9, 7));
  while (c.back().exactly_zero()) c.back() = random_rational(rng, 9, 7);
  return Polynomial(Mode::Exact, std::move(c));
}

const std::vector<Scalar>& exact_unimodular_pool() {
  static const std::vector<Scalar> pool = {
      ex(1),
      ex(-1),
      Scalar::exact(0, 1),
      Scalar::exact(0, -1),
      Scalar::exact(mpq_class(3, 5), mpq_class(4, 5)),
      Scalar::exact(mpq_class(3, 5), mpq_class(-4, 5)),
      Scalar::exact(mpq_class(5, 13), mpq_class(12, 13)),
      Scalar::exact(mpq_class(-5, 13), mpq_class(12, 13)),
  };
  return pool;
}

DenseOperator random_exact_unitary(Rng& rng, std::size_t dim) {
  static const std::pair<long, long> triples[] = {{3, 5}, {4, 5}, {5, 13}, {12, 13}, {8, 17}};
  const auto& pool = exact_unimodular_pool();
  std::vector<Scalar> phases;
  for (std::size_t i = 0; i < dim; ++i) {
    phases.push_back(pool[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(pool.size()) - 1))]);
  }
  DenseOperator u = DenseOperator::diagonal(phases);
  if (dim < 2) return u;
  for (std::size_t g = 0; g < dim; ++g) {
    const auto p = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(dim) - 1));
    auto q = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(dim) - 2));
    if (q >= p) ++q;
    const auto& t = triples[uniform(rng, 0, 4)];
    const long den = t.second;
    const long a = t.first;
    long b = 0;
    while (b * b + a * a != den * den) ++b;
    std::vector<Scalar> e(dim * dim, Scalar::zero(Mode::Exact));
    for (std::size_t i = 0; i < dim; ++i) e[i * dim + i] = ex(1);
    e[p * dim + p] = ex(a, den);
    e[q * dim + q] = ex(a, den);
    e[p * dim + q] = ex(-b, den);
    e[q * dim + p] = ex(b, den);
    u = DenseOperator(dim, std::move(e)) * u;
  }
  std::vector<std::size_t> perm(dim);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<DenseVector> cols;
  for (auto j : perm) cols.push_back(DenseVector::basis(dim, j, Mode::Exact));
  return DenseOperator::from_columns(cols) * u;
}

DenseOperator random_unitary(Rng& rng, std::size_t dim) {
  std::normal_distribution<double> normal;
  const auto n = static_cast<Eigen::Index>(dim);
  Eigen::MatrixXcd g(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) g(r, c) = {normal(rng), normal(rng)};
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index c = 0; c < n; ++c) {
    const auto d = r(c, c);
    if (std::abs(d) > 0) q.col(c) *= d / std::abs(d);
  }
  std::vector<Scalar> e;
  for (Eigen::Index r2 = 0; r2 < n; ++r2) {
    for (Eigen::Index c = 0; c < n; ++c) e.push_back(Scalar::floating(q(r2, c)));
  }
  return DenseOperator(dim, std::move(e));
}

DenseOperator conjugate(const DenseOperator& t, const DenseOperator& u) {
  return u * t * u.adjoint();
}

std::string_view to_string(CorpusEntry::Kind kind) {
  switch (kind) {
    case CorpusEntry::Kind::Certified: return "certified";
    case CorpusEntry::Kind::Sheared: return "sheared";
    case CorpusEntry::Kind::OffCircle: return "off-circle";
  }
  return "?";
}

std::vector<CorpusEntry> decomposition_corpus(Rng& rng, std::size_t per_kind) {
  const auto& pool = exact_unimodular_pool();
  std::vector<CorpusEntry> out;

  for (std::size_t i = 0; i < per_kind; ++i) {
    const auto count = static_cast<std::size_t>(uniform(rng, 1, 3));
    const auto sizes = block_sizes(rng, count, 3, 6);
    auto zs = pick_distinct(rng, pool, count);
    if (count > 1 && i % 4 == 3) zs[1] = zs[0];
    std::vector<JordanSpec> blocks;
    for (std::size_t j = 0; j < count; ++j) blocks.push_back({zs[j], sizes[j]});
    const DenseOperator j = jordan_sum(blocks);
    out.push_back({CorpusEntry::Kind::Certified,
                   conjugate(j, random_exact_unitary(rng, j.dim())), distinct_hints(blocks),
                   "certified " + block_label(blocks)});
  }

  static const Scalar couplings[] = {ex(1), ex(2), ex(1, 2), Scalar::exact(1, 1), ex(-3, 2)};
  for (std::size_t i = 0; i < per_kind; ++i) {
    const auto count = static_cast<std::size_t>(uniform(rng, 2, 3));
    const auto sizes = block_sizes(rng, count, 3, 6);
    // Near-equal eigenvalues make β_m decay like |z₁z̄₂ − 1|^m, below any
    // Float tolerance at the largest orders searched.
    const auto zs = pick_separated(rng, pool, count, 0.6);
    std::vector<JordanSpec> blocks;
    for (std::size_t j = 0; j < count; ++j) blocks.push_back({zs[j], sizes[j]});
    const DenseOperator j = jordan_sum(blocks);
    const std::size_t dim = j.dim();
    const auto a = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(sizes[0]) - 1));
    const auto b = sizes[0] + static_cast<std::size_t>(
                                  uniform(rng, 0, static_cast<long>(sizes[1]) - 1));
    const Scalar c = couplings[uniform(rng, 0, 4)];
    std::vector<Scalar> e(dim * dim, Scalar::zero(Mode::Exact));
    e[a * dim + b] = c;
    const DenseOperator shear(dim, std::move(e));
    const DenseOperator id = DenseOperator::identity(dim, Mode::Exact);
    const DenseOperator t = (id + shear) * j * (id - shear);
    out.push_back({CorpusEntry::Kind::Sheared, conjugate(t, random_exact_unitary(rng, dim)),
                   distinct_hints(blocks),
                   "sheared " + block_label(blocks) + " coupling " + c.to_string()});
  }

  static const Scalar off[] = {ex(2), ex(1, 2), ex(3, 2), Scalar::exact(0, 2), ex(-1, 3),
                               Scalar::exact(mpq_class(3, 10), mpq_class(4, 10))};
  for (std::size_t i = 0; i < per_kind; ++i) {
    const auto count = static_cast<std::size_t>(uniform(rng, 1, 3));
    const auto sizes = block_sizes(rng, count, 3, 6);
    auto zs = pick_distinct(rng, pool, count);
    zs[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(count) - 1))] =
        off[uniform(rng, 0, 5)];
    std::vector<JordanSpec> blocks;
    for (std::size_t j = 0; j < count; ++j) blocks.push_back({zs[j], sizes[j]});
    const DenseOperator j = jordan_sum(blocks);
    out.push_back({CorpusEntry::Kind::OffCircle,
                   conjugate(j, random_exact_unitary(rng, j.dim())), distinct_hints(blocks),
                   "off-circle " + block_label(blocks)});
  }
  return out;
}

std::vector<PerturbationPair> perturbation_corpus(Rng& rng, std::size_t count) {
  const auto& pool = exact_unimodular_pool();
  std::vector<PerturbationPair> out;
  for (std::size_t i = 0; i < count; ++i) {
    if (i % 5 == 4) {
      // Two equal chains; N carries the second chain into the first.
      const auto k = static_cast<std::size_t>(uniform(rng, 1, 2));
      const Scalar z = pool[static_cast<std::size_t>(uniform(rng, 0, 7))];
      const long a1 = uniform(rng, 0, 1);
      const DenseOperator block = shift_polynomial(z, {a1}, k);
      const DenseOperator a = direct_sum(block, block);
      const DenseOperator coupling = shift_polynomial(ex(uniform(rng, 1, 2)), {uniform(rng, -1, 1)}, k);
      std::vector<Scalar> e(4 * k * k, Scalar::zero(Mode::Exact));
      for (std::size_t r = 0; r < k; ++r) {
        for (std::size_t c = 0; c < k; ++c) e[r * 2 * k + k + c] = coupling(r, c);
      }
      const DenseOperator n(2 * k, std::move(e));
      const DenseOperator u = random_exact_unitary(rng, 2 * k);
      out.push_back({conjugate(a, u), conjugate(n, u),
                     "chain coupling z=" + z.to_string() + " k=" + std::to_string(k) +
                         " a1=" + std::to_string(a1)});
      continue;
    }
    const auto blocks = static_cast<std::size_t>(uniform(rng, 1, 2));
    const auto sizes = block_sizes(rng, blocks, 4, 6);
    const auto zs = pick_distinct(rng, pool, blocks);
    std::vector<DenseOperator> a_parts;
    std::vector<DenseOperator> n_parts;
    std::string label;
    for (std::size_t j = 0; j < blocks; ++j) {
      std::vector<long> pc;
      std::vector<long> qc;
      for (std::size_t r = 1; r < sizes[j]; ++r) {
        pc.push_back(uniform(rng, -1, 2));
        qc.push_back(uniform(rng, -1, 2));
      }
      a_parts.push_back(shift_polynomial(zs[j], pc, sizes[j]));
      n_parts.push_back(shift_polynomial(Scalar::zero(Mode::Exact), qc, sizes[j]));
      label += (label.empty() ? "" : "+") + std::string("B(") + zs[j].to_string() + "," +
               std::to_string(sizes[j]) + ")";
    }
    const DenseOperator a = assemble(a_parts);
    const DenseOperator n = assemble(n_parts);
    const DenseOperator u = random_exact_unitary(rng, a.dim());
    out.push_back({conjugate(a, u), conjugate(n, u), "shift polynomials " + label});
  }
  return out;
}

std::vector<StrictIsometry> strict_isometry_corpus(Rng& rng, std::size_t count,
                                                   const std::vector<unsigned>& orders) {
  const auto& pool = exact_unimodular_pool();
  std::vector<StrictIsometry> out;
  for (std::size_t i = 0; i < count; ++i) {
    const unsigned m = orders[i % orders.size()];
    const std::size_t k = (m + 1) / 2;
    const auto zs = pick_distinct(rng, pool, 2);
    std::vector<JordanSpec> blocks{{zs[0], k}};
    if (i % 2 == 1) blocks.push_back({zs[1], static_cast<std::size_t>(uniform(rng, 1, static_cast<long>(k)))});
    const DenseOperator j = jordan_sum(blocks);
    out.push_back({conjugate(j, random_exact_unitary(rng, j.dim())), m});
  }
  return out;
}

}  // namespace misolab::gen
