#include "hpt/homology.hpp"

#include <algorithm>
#include <optional>
#include <utility>

#include "hpt/error.hpp"

namespace hpt {

namespace {

using IntMatrix = std::vector<std::vector<mpz_class>>;

IntMatrix to_integers(const Matrix& m) {
  IntMatrix out(m.rows(), std::vector<mpz_class>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (m(r, c).get_den() != 1) {
        throw Error(ErrorKind::InvalidInput, "Smith normal form needs an integer matrix");
      }
      out[r][c] = m(r, c).get_num();
    }
  }
  return out;
}

IntMatrix identity(std::size_t n) {
  IntMatrix out(n, std::vector<mpz_class>(n));
  for (std::size_t i = 0; i < n; ++i) out[i][i] = 1;
  return out;
}

Matrix to_matrix(const IntMatrix& m, std::size_t rows, std::size_t cols) {
  Matrix out(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) out(r, c) = Scalar(m[r][c]);
  }
  return out;
}

class SmithReducer {
 public:
  explicit SmithReducer(const Matrix& m)
      : rows_(m.rows()), cols_(m.cols()), s_(to_integers(m)), u_(identity(rows_)), v_(identity(cols_)) {}

  SmithNormalForm run() {
    std::vector<mpz_class> factors;
    for (std::size_t t = 0; t < std::min(rows_, cols_); ++t) {
      if (!place_smallest(t)) break;
      while (!clear_cross(t) || !enforce_divisibility(t)) {
      }
      if (s_[t][t] < 0) scale_row(t);
      factors.push_back(s_[t][t]);
    }
    return {to_matrix(u_, rows_, rows_), to_matrix(s_, rows_, cols_), to_matrix(v_, cols_, cols_),
            std::move(factors)};
  }

 private:
  // Moves the nonzero entry of least absolute value in the trailing block to
  // (t, t). False when the trailing block is zero.
  bool place_smallest(std::size_t t) {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t r = t; r < rows_; ++r) {
      for (std::size_t c = t; c < cols_; ++c) {
        if (s_[r][c] == 0) continue;
        if (!best || abs(s_[r][c]) < abs(s_[best->first][best->second])) best = {r, c};
      }
    }
    if (!best) return false;
    swap_rows(t, best->first);
    swap_cols(t, best->second);
    return true;
  }

  // Eliminates row t and column t off the pivot. Returns false if a smaller
  // remainder had to be moved into the pivot (caller loops).
  bool clear_cross(std::size_t t) {
    for (std::size_t r = t + 1; r < rows_; ++r) {
      if (s_[r][t] == 0) continue;
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), s_[r][t].get_mpz_t(), s_[t][t].get_mpz_t());
      add_row(r, t, -q);
      if (s_[r][t] != 0) {
        swap_rows(t, r);
        return false;
      }
    }
    for (std::size_t c = t + 1; c < cols_; ++c) {
      if (s_[t][c] == 0) continue;
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), s_[t][c].get_mpz_t(), s_[t][t].get_mpz_t());
      add_col(c, t, -q);
      if (s_[t][c] != 0) {
        swap_cols(t, c);
        return false;
      }
    }
    return true;
  }

  // With the cross cleared, every trailing entry must be divisible by the
  // pivot; otherwise fold the offending row into row t and start over.
  bool enforce_divisibility(std::size_t t) {
    for (std::size_t r = t + 1; r < rows_; ++r) {
      for (std::size_t c = t + 1; c < cols_; ++c) {
        if (mpz_divisible_p(s_[r][c].get_mpz_t(), s_[t][t].get_mpz_t()) == 0) {
          add_row(t, r, 1);
          return false;
        }
      }
    }
    return true;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap(s_[a], s_[b]);
    std::swap(u_[a], u_[b]);
  }

  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (auto& row : s_) std::swap(row[a], row[b]);
    for (auto& row : v_) std::swap(row[a], row[b]);
  }

  // row[dst] += q * row[src]
  void add_row(std::size_t dst, std::size_t src, const mpz_class& q) {
    for (std::size_t c = 0; c < cols_; ++c) s_[dst][c] += q * s_[src][c];
    for (std::size_t c = 0; c < rows_; ++c) u_[dst][c] += q * u_[src][c];
  }

  // col[dst] += q * col[src]
  void add_col(std::size_t dst, std::size_t src, const mpz_class& q) {
    for (auto& row : s_) row[dst] += q * row[src];
    for (auto& row : v_) row[dst] += q * row[src];
  }

  void scale_row(std::size_t r) {
    for (auto& x : s_[r]) x = -x;
    for (auto& x : u_[r]) x = -x;
  }

  std::size_t rows_;
  std::size_t cols_;
  IntMatrix s_;
  IntMatrix u_;
  IntMatrix v_;
};

}  // namespace

SmithNormalForm smith_normal_form(const Matrix& m) {
  SmithNormalForm snf = SmithReducer(m).run();
  // self-check: U M V = S, U and V unimodular, successive divisibility
  bool ok = snf.u * m * snf.v == snf.s && abs(determinant(snf.u)) == 1 && abs(determinant(snf.v)) == 1;
  for (std::size_t i = 0; ok && i + 1 < snf.invariant_factors.size(); ++i) {
    ok = mpz_divisible_p(snf.invariant_factors[i + 1].get_mpz_t(), snf.invariant_factors[i].get_mpz_t()) != 0;
  }
  if (!ok) throw Error(ErrorKind::EquivalenceViolation, "Smith normal form failed its self-check");
  return snf;
}

HomologyResult homology(const ChainComplex& a) {
  const Ring& ring = a.ring();
  const bool integral = ring.kind() == Ring::Kind::Integers;
  // rank of d leaving degree k, and its invariant factors (Z only)
  std::map<int, std::size_t> ranks;
  std::map<int, std::vector<mpz_class>> factors;
  for (auto [k, _] : a.module().ranks()) {
    const Matrix block = a.d().block(k);
    if (block.empty()) {
      ranks[k] = 0;
      continue;
    }
    if (integral) {
      auto snf = smith_normal_form(block);
      ranks[k] = snf.invariant_factors.size();
      factors[k] = std::move(snf.invariant_factors);
    } else {
      ranks[k] = rank(block, ring);
    }
  }

  HomologyResult result;
  for (auto [k, r] : a.module().ranks()) {
    HomologyGroup group;
    const std::size_t incoming = ranks.count(k + 1) ? ranks[k + 1] : 0;
    group.betti = r - ranks[k] - incoming;
    if (auto it = factors.find(k + 1); it != factors.end()) {
      for (const auto& q : it->second) {
        if (q > 1) group.torsion.push_back(q);
      }
    }
    if (group.betti != 0 || !group.torsion.empty()) result.groups.emplace(k, std::move(group));
  }
  return result;
}

ChainComplex mapping_cone(const GradedMap& phi, const ChainComplex& x, const ChainComplex& y) {
  if (!(phi.source() == x.module()) || !(phi.target() == y.module()) || phi.degree() != 0) {
    throw Error(ErrorKind::ModuleMismatch, "mapping cone of " + describe(phi) + " between unrelated complexes");
  }
  if (!hom_differential(phi, x, y).is_zero()) {
    throw Error(ErrorKind::InvalidInput, "mapping cone needs a chain map");
  }
  std::map<int, std::size_t> ranks;
  for (auto [k, r] : x.module().ranks()) ranks[k + 1] += r;
  for (auto [k, r] : y.module().ranks()) ranks[k] += r;
  GradedModule module(x.ring(), ranks);

  std::map<int, Matrix> blocks;
  for (auto [n, r] : module.ranks()) {
    const std::size_t rows = module.rank(n - 1);
    if (rows == 0) continue;
    Matrix m(rows, r);
    const std::size_t x_cols = x.module().rank(n - 1);
    const std::size_t x_rows = x.module().rank(n - 2);
    const Matrix dx = x.d().block(n - 1);
    const Matrix dy = y.d().block(n);
    const Matrix ph = phi.block(n - 1);
    for (std::size_t i = 0; i < dx.rows(); ++i) {
      for (std::size_t j = 0; j < dx.cols(); ++j) m(i, j) = -dx(i, j);
    }
    for (std::size_t i = 0; i < ph.rows(); ++i) {
      for (std::size_t j = 0; j < ph.cols(); ++j) m(x_rows + i, j) = ph(i, j);
    }
    for (std::size_t i = 0; i < dy.rows(); ++i) {
      for (std::size_t j = 0; j < dy.cols(); ++j) m(x_rows + i, x_cols + j) = dy(i, j);
    }
    blocks.emplace(n, std::move(m));
  }
  GradedMap d(module, module, -1, std::move(blocks));
  return ChainComplex(module, std::move(d));
}

EquivalenceReport verify_equivalence(const PerturbedSdr& p) {
  EquivalenceReport report{homology(p.result.source()), homology(p.result.target())};
  if (!(report.source == report.target)) {
    throw Error(ErrorKind::EquivalenceViolation, "homology of A_delta and B_delta' differ");
  }
  const ChainComplex cone = mapping_cone(p.result.f(), p.result.source(), p.result.target());
  const HomologyResult cone_homology = homology(cone);
  if (!cone_homology.acyclic()) {
    throw Error(ErrorKind::EquivalenceViolation, "mapping cone of f^ is not acyclic",
                {}, cone_homology.groups.begin()->first);
  }
  return report;
}

}  // namespace hpt
