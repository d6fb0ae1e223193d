#include "hpt/generator.hpp"

#include <algorithm>
#include <tuple>
#include <vector>

#include "hpt/error.hpp"
#include "hpt/homology.hpp"

namespace hpt {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Canonical complex before the change of basis.
struct Skeleton {
  std::map<int, std::size_t> ranks;
  // (source degree, source index, target index, coefficient) of d
  std::vector<std::tuple<int, std::size_t, std::size_t, int>> arrows;

  std::size_t add(int degree) { return ranks[degree]++; }
};

ChainComplex realize(const Skeleton& sk, const Ring& ring) {
  GradedModule module(ring, sk.ranks);
  std::map<int, Matrix> blocks;
  for (auto [k, i, j, c] : sk.arrows) {
    auto [it, _] = blocks.try_emplace(k, module.rank(k - 1), module.rank(k));
    it->second(j, i) = c;
  }
  GradedMap d(module, module, -1, std::move(blocks));
  return ChainComplex(module, std::move(d));
}

ChainComplex change_basis(const ChainComplex& c, const NonDgIso& p) {
  return ChainComplex(c.module(), p.map() * c.d() * p.inverse_map());
}

using Column = std::vector<Scalar>;

Column column(const Matrix& m, std::size_t c) {
  Column out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) out[r] = m(r, c);
  return out;
}

/// A basis of the image of an idempotent matrix.
std::vector<Column> image_basis(const Matrix& e, const Ring& ring) {
  std::vector<Column> out;
  if (e.is_zero()) return out;
  if (ring.kind() == Ring::Kind::Integers) {
    // U e V = diag(1, ..., 1, 0, ...), so im(e) is spanned by the leading
    // columns of U^-1.
    const SmithNormalForm snf = smith_normal_form(e);
    const auto u_inv = inverse(snf.u, ring);
    if (!u_inv) throw Error(ErrorKind::NotInvertible, "Smith transform is not unimodular");
    for (std::size_t i = 0; i < snf.invariant_factors.size(); ++i) out.push_back(column(*u_inv, i));
    return out;
  }
  // over a field the pivot columns of e will do
  Matrix picked(e.rows(), 0);
  for (std::size_t c = 0; c < e.cols(); ++c) {
    Matrix trial(e.rows(), picked.cols() + 1);
    for (std::size_t r = 0; r < e.rows(); ++r) {
      for (std::size_t k = 0; k < picked.cols(); ++k) trial(r, k) = picked(r, k);
      trial(r, picked.cols()) = e(r, c);
    }
    if (rank(trial, ring) == trial.cols()) {
      picked = std::move(trial);
      out.push_back(column(e, c));
    }
  }
  return out;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  return splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ index);
}

InstanceGenerator::InstanceGenerator(std::uint64_t seed, Ring ring, GeneratorLimits limits)
    : engine_(seed), ring_(std::move(ring)), limits_(limits) {}

int InstanceGenerator::uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }

GradedModule InstanceGenerator::random_module(std::size_t total_rank) {
  std::map<int, std::size_t> ranks;
  for (std::size_t i = 0; i < total_rank; ++i) ranks[uniform(limits_.min_degree, limits_.max_degree)]++;
  return GradedModule(ring_, std::move(ranks));
}

GradedMap InstanceGenerator::random_map(const GradedModule& source, const GradedModule& target, int degree) {
  std::map<int, Matrix> blocks;
  for (auto [k, cols] : source.ranks()) {
    const std::size_t rows = target.rank(k + degree);
    if (rows == 0) continue;
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) {
        if (uniform(0, 1) == 0) m(r, c) = uniform(-limits_.max_entry, limits_.max_entry);
      }
    }
    blocks.emplace(k, std::move(m));
  }
  return GradedMap(source, target, degree, std::move(blocks));
}

NonDgIso InstanceGenerator::random_unipotent(const GradedModule& module, int ops) {
  std::map<int, Matrix> forward;
  std::map<int, Matrix> backward;
  for (auto [k, r] : module.ranks()) {
    Matrix p = Matrix::identity(r);
    Matrix q = Matrix::identity(r);
    if (r >= 2) {
      for (int op = 0; op < ops; ++op) {
        const auto i = static_cast<std::size_t>(uniform(0, static_cast<int>(r) - 1));
        auto j = static_cast<std::size_t>(uniform(0, static_cast<int>(r) - 2));
        if (j >= i) ++j;
        int c = uniform(1, limits_.max_entry);
        if (uniform(0, 1)) c = -c;
        // p <- E p with E = 1 + c e_ij; q <- q E^-1
        for (std::size_t col = 0; col < r; ++col) p(i, col) += c * p(j, col);
        for (std::size_t row = 0; row < r; ++row) q(row, j) -= c * q(row, i);
      }
    }
    forward.emplace(k, std::move(p));
    backward.emplace(k, std::move(q));
  }
  return NonDgIso(GradedMap(module, module, 0, std::move(forward)), GradedMap(module, module, 0, std::move(backward)));
}

ChainComplex InstanceGenerator::random_complex(std::size_t max_rank) {
  const auto target = static_cast<std::size_t>(uniform(1, static_cast<int>(std::max<std::size_t>(max_rank, 1))));
  Skeleton sk;
  std::size_t total = 0;
  const bool spread = limits_.max_degree > limits_.min_degree;
  while (total < target) {
    const int kind = (target - total == 1 || !spread) ? 0 : uniform(0, 19);
    if (kind < 7) {
      sk.add(uniform(limits_.min_degree, limits_.max_degree));
      total += 1;
    } else {
      const int k = uniform(limits_.min_degree, limits_.max_degree - 1);
      const std::size_t y = sk.add(k);
      const std::size_t x = sk.add(k + 1);
      const int coefficient = kind < 15 ? 1 : uniform(2, 3);
      sk.arrows.emplace_back(k + 1, x, y, coefficient);
      total += 2;
    }
  }
  ChainComplex base = realize(sk, ring_);
  return change_basis(base, random_unipotent(base.module(), static_cast<int>(2 * target)));
}

Sdr InstanceGenerator::random_sdr_onto(const ChainComplex& target, std::size_t pairs) {
  std::map<int, std::size_t> ranks = target.module().ranks();
  std::vector<std::tuple<int, std::size_t, std::size_t>> extra;  // (degree of x, index of x, index of y)
  for (std::size_t i = 0; i < pairs; ++i) {
    const int k = uniform(limits_.min_degree, std::max(limits_.min_degree, limits_.max_degree - 1));
    const std::size_t y = ranks[k]++;
    const std::size_t x = ranks[k + 1]++;
    extra.emplace_back(k + 1, x, y);
  }
  GradedModule a_module(ring_, ranks);
  const GradedModule& b_module = target.module();

  std::map<int, Matrix> d_blocks;
  std::map<int, Matrix> f_blocks;
  std::map<int, Matrix> g_blocks;
  std::map<int, Matrix> h_blocks;
  for (auto [k, r] : a_module.ranks()) {
    if (a_module.rank(k - 1)) d_blocks.emplace(k, Matrix(a_module.rank(k - 1), r));
    if (a_module.rank(k + 1)) h_blocks.emplace(k, Matrix(a_module.rank(k + 1), r));
    const std::size_t rb = b_module.rank(k);
    if (rb == 0) continue;
    Matrix f(rb, r);
    Matrix g(r, rb);
    for (std::size_t i = 0; i < rb; ++i) f(i, i) = g(i, i) = 1;
    f_blocks.emplace(k, std::move(f));
    g_blocks.emplace(k, std::move(g));
  }
  for (const auto& [k, m] : target.d().blocks()) {
    Matrix& dst = d_blocks.at(k);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      for (std::size_t j = 0; j < m.cols(); ++j) dst(i, j) = m(i, j);
    }
  }
  for (auto [kx, x, y] : extra) {
    d_blocks.at(kx)(y, x) = 1;
    h_blocks.at(kx - 1)(x, y) = 1;
  }
  ChainComplex a(a_module, GradedMap(a_module, a_module, -1, std::move(d_blocks)));
  GradedMap f(a_module, b_module, 0, std::move(f_blocks));
  GradedMap g(b_module, a_module, 0, std::move(g_blocks));
  GradedMap h(a_module, a_module, 1, std::move(h_blocks));

  const NonDgIso p = random_unipotent(a_module, static_cast<int>(2 * a_module.total_rank()));
  return validate_sdr(change_basis(a, p), target, f * p.inverse_map(), p.map() * g, p.map() * h * p.inverse_map());
}

Sdr InstanceGenerator::random_sdr(std::size_t max_rank) {
  max_rank = std::max<std::size_t>(max_rank, 1);
  const ChainComplex b = random_complex(std::max<std::size_t>(1, max_rank / 2));
  const std::size_t room = max_rank > b.module().total_rank() ? max_rank - b.module().total_rank() : 0;
  const std::size_t pairs = static_cast<std::size_t>(uniform(0, static_cast<int>(room / 2)));
  return random_sdr_onto(b, pairs);
}

std::vector<Sdr> InstanceGenerator::random_stack(std::size_t max_rank, std::size_t stages) {
  max_rank = std::max<std::size_t>(max_rank, 1);
  stages = std::max<std::size_t>(stages, 1);
  ChainComplex bottom = random_complex(std::max<std::size_t>(1, max_rank / (stages + 1)));
  std::size_t room = max_rank > bottom.module().total_rank() ? max_rank - bottom.module().total_rank() : 0;
  std::vector<Sdr> stack;
  for (std::size_t left = stages; left > 0; --left) {
    const ChainComplex& target = stack.empty() ? bottom : stack.back().source();
    const auto pairs = static_cast<std::size_t>(uniform(0, static_cast<int>(room / (2 * left))));
    room -= 2 * pairs;
    stack.push_back(random_sdr_onto(target, pairs));
  }
  std::reverse(stack.begin(), stack.end());
  return stack;
}

std::pair<Sdr, Sdr> InstanceGenerator::random_stacked(std::size_t max_rank) {
  std::vector<Sdr> stack = random_stack(max_rank, 2);
  return {std::move(stack[0]), std::move(stack[1])};
}

Perturbation InstanceGenerator::random_perturbation(const ChainComplex& a, int ops) {
  const NonDgIso psi = random_unipotent(a.module(), ops);
  return check_maurer_cartan(psi.inverse_map() * a.d() * psi.map() - a.d(), a);
}

bool InstanceGenerator::admissible(const Sdr& s, const Perturbation& delta) {
  try {
    neumann_inverse(delta.delta() * s.h());
    return true;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NotNilpotent) return false;
    throw;
  }
}

Filtration InstanceGenerator::random_filtration(const std::vector<Sdr>& stack) {
  if (stack.empty()) throw Error(ErrorKind::InvalidInput, "empty SDR stack");
  struct Slot {
    Column vector;
    int weight;
  };
  using Frame = std::map<int, std::vector<Slot>>;
  const int span = static_cast<int>(stack.front().source().module().total_rank());

  // the bottom target: standard basis, weights nondecreasing in degree
  const GradedModule& bottom = stack.back().target().module();
  std::vector<int> b_weights(bottom.total_rank());
  for (int& w : b_weights) w = uniform(0, span);
  std::sort(b_weights.begin(), b_weights.end());
  Frame frame;
  std::size_t next = 0;
  for (auto [k, r] : bottom.ranks()) {
    for (std::size_t i = 0; i < r; ++i) {
      Column e(r);
      e[i] = 1;
      frame[k].push_back({std::move(e), b_weights[next++]});
    }
  }

  for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
    const Sdr& s = *it;
    const GradedModule& module = s.source().module();
    Frame lifted;
    for (const auto& [k, slots] : frame) {
      const Matrix g = s.g().block(k);
      for (const Slot& slot : slots) {
        Column x(g.rows());
        for (std::size_t i = 0; i < g.rows(); ++i) {
          for (std::size_t j = 0; j < g.cols(); ++j) x[i] += g(i, j) * slot.vector[j];
        }
        lifted[k].push_back({std::move(x), slot.weight});
      }
    }
    const GradedMap dh = s.source().d() * s.h();
    for (auto [k, r] : module.ranks()) {
      const Matrix h = s.h().block(k);
      for (const Column& y : image_basis(dh.block(k), ring_)) {
        Column x(h.rows());
        for (std::size_t i = 0; i < h.rows(); ++i) {
          for (std::size_t j = 0; j < h.cols(); ++j) x[i] += h(i, j) * y[j];
        }
        const int w = uniform(0, span);
        lifted[k].push_back({y, w});
        lifted[k + 1].push_back({std::move(x), w});
      }
    }
    frame = std::move(lifted);
  }

  const GradedModule& module = stack.front().source().module();
  std::map<int, Matrix> q_blocks;
  std::map<int, Matrix> q_inv_blocks;
  std::map<int, std::vector<int>> weights;
  for (auto [k, r] : module.ranks()) {
    const auto& slots = frame[k];
    if (slots.size() != r) throw Error(ErrorKind::SdrViolation, "SDR splitting has the wrong rank");
    Matrix q(r, r);
    for (std::size_t c = 0; c < r; ++c) {
      for (std::size_t i = 0; i < r; ++i) q(i, c) = slots[c].vector[i];
      weights[k].push_back(slots[c].weight);
    }
    auto q_inv = inverse(q, ring_);
    if (!q_inv) throw Error(ErrorKind::NotInvertible, "SDR splitting is not a basis");
    q_blocks.emplace(k, std::move(q));
    q_inv_blocks.emplace(k, std::move(*q_inv));
  }
  return Filtration{GradedMap(module, module, 0, std::move(q_blocks)),
                    GradedMap(module, module, 0, std::move(q_inv_blocks)), std::move(weights)};
}

Perturbation InstanceGenerator::filtered_perturbation(const ChainComplex& a, const Filtration& filtration) {
  const GradedModule& module = a.module();
  std::map<int, Matrix> n_blocks;
  for (const auto& [k, w] : filtration.weights) {
    Matrix n(w.size(), w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
      for (std::size_t j = 0; j < w.size(); ++j) {
        if (w[i] < w[j] && uniform(0, 1) == 0) {
          const int c = uniform(1, limits_.max_entry);
          n(i, j) = uniform(0, 1) ? c : -c;
        }
      }
    }
    n_blocks.emplace(k, std::move(n));
  }
  const GradedMap n(module, module, 0, std::move(n_blocks));
  const GradedMap psi = filtration.frame * (GradedMap::identity(module) + n) * filtration.frame_inv;
  const GradedMap psi_inv = filtration.frame * neumann_inverse(n).inverse * filtration.frame_inv;
  return check_maurer_cartan(psi_inv * a.d() * psi - a.d(), a);
}

Perturbation InstanceGenerator::admissible_perturbation(const Sdr& s) {
  int ops = static_cast<int>(std::max<std::size_t>(1, s.source().module().total_rank()));
  while (true) {
    for (int attempt = 0; attempt < limits_.resample_attempts; ++attempt) {
      Perturbation delta = random_perturbation(s.source(), ops);
      if (admissible(s, delta)) return delta;
    }
    if (ops == 1) break;
    ops /= 2;
  }
  Perturbation delta = filtered_perturbation(s);
  if (!admissible(s, delta)) {
    throw Error(ErrorKind::ResampleCapExceeded, "no admissible perturbation found within the resampling cap");
  }
  return delta;
}

}  // namespace hpt
