#include "hpt/graded.hpp"

#include <numeric>
#include <sstream>
#include <utility>

#include "hpt/error.hpp"

namespace hpt {

GradedModule::GradedModule(Ring ring, std::map<int, std::size_t> ranks,
                           std::map<int, std::vector<std::string>> labels)
    : ring_(std::move(ring)) {
  for (auto [degree, r] : ranks) {
    if (r != 0) ranks_.emplace(degree, r);
  }
  for (auto& [degree, names] : labels) {
    if (names.size() != rank(degree)) {
      throw Error(ErrorKind::InvalidInput,
                  "degree " + std::to_string(degree) + " has " + std::to_string(names.size()) +
                      " labels but rank " + std::to_string(rank(degree)));
    }
    if (!names.empty()) labels_.emplace(degree, std::move(names));
  }
}

GradedModule GradedModule::point(const Ring& ring, std::string label) {
  return GradedModule(ring, {{0, 1}}, {{0, {std::move(label)}}});
}

std::size_t GradedModule::rank(int degree) const {
  auto it = ranks_.find(degree);
  return it == ranks_.end() ? 0 : it->second;
}

std::size_t GradedModule::total_rank() const {
  std::size_t total = 0;
  for (auto [_, r] : ranks_) total += r;
  return total;
}

std::vector<int> GradedModule::degrees() const {
  std::vector<int> out;
  out.reserve(ranks_.size());
  for (auto [degree, _] : ranks_) out.push_back(degree);
  return out;
}

const std::vector<std::string>* GradedModule::labels(int degree) const {
  auto it = labels_.find(degree);
  return it == labels_.end() ? nullptr : &it->second;
}

std::string GradedModule::label(int degree, std::size_t index) const {
  if (const auto* names = labels(degree)) return (*names)[index];
  return "e" + std::to_string(degree) + "_" + std::to_string(index);
}

// ---------------------------------------------------------------------------

GradedMap::GradedMap(GradedModule source, GradedModule target, int degree, std::map<int, Matrix> blocks)
    : source_(std::move(source)), target_(std::move(target)), degree_(degree), blocks_(std::move(blocks)) {
  if (!(source_.ring() == target_.ring())) {
    throw Error(ErrorKind::RingMismatch,
                "map from " + source_.ring().to_string() + " to " + target_.ring().to_string());
  }
  for (const auto& [k, m] : blocks_) {
    const std::size_t rows = target_.rank(k + degree_);
    const std::size_t cols = source_.rank(k);
    if (m.rows() != rows || m.cols() != cols) {
      throw Error(ErrorKind::ModuleMismatch,
                  "block at degree " + std::to_string(k) + " is " + std::to_string(m.rows()) + "x" +
                      std::to_string(m.cols()) + ", expected " + std::to_string(rows) + "x" +
                      std::to_string(cols),
                  {}, k);
    }
  }
  normalize();
}

void GradedMap::normalize() {
  const Ring& r = ring();
  for (auto it = blocks_.begin(); it != blocks_.end();) {
    it->second.reduce(r);
    if (it->second.empty() || it->second.is_zero()) {
      it = blocks_.erase(it);
    } else {
      ++it;
    }
  }
}

GradedMap GradedMap::zero(const GradedModule& source, const GradedModule& target, int degree) {
  return GradedMap(source, target, degree);
}

GradedMap GradedMap::identity(const GradedModule& module) {
  std::map<int, Matrix> blocks;
  for (auto [degree, r] : module.ranks()) blocks.emplace(degree, Matrix::identity(r));
  return GradedMap(module, module, 0, std::move(blocks));
}

Matrix GradedMap::block(int k) const {
  auto it = blocks_.find(k);
  if (it != blocks_.end()) return it->second;
  return Matrix(target_.rank(k + degree_), source_.rank(k));
}

std::vector<Scalar> GradedMap::apply_basis(int k, std::size_t index) const {
  std::vector<Scalar> column(target_.rank(k + degree_));
  auto it = blocks_.find(k);
  if (it == blocks_.end()) return column;
  for (std::size_t r = 0; r < column.size(); ++r) column[r] = it->second(r, index);
  return column;
}

namespace {

void require_parallel(const GradedMap& a, const GradedMap& b, const char* op) {
  if (!(a.source() == b.source()) || !(a.target() == b.target()) || a.degree() != b.degree()) {
    throw Error(ErrorKind::ModuleMismatch, std::string(op) + " of non-parallel maps: " + describe(a) +
                                               " and " + describe(b));
  }
}

}  // namespace

GradedMap& GradedMap::operator+=(const GradedMap& other) {
  require_parallel(*this, other, "sum");
  for (const auto& [k, m] : other.blocks_) {
    auto it = blocks_.find(k);
    if (it == blocks_.end()) {
      blocks_.emplace(k, m);
    } else {
      it->second += m;
    }
  }
  normalize();
  return *this;
}

GradedMap& GradedMap::operator-=(const GradedMap& other) {
  require_parallel(*this, other, "difference");
  for (const auto& [k, m] : other.blocks_) {
    auto it = blocks_.find(k);
    if (it == blocks_.end()) {
      blocks_.emplace(k, -m);
    } else {
      it->second -= m;
    }
  }
  normalize();
  return *this;
}

GradedMap operator+(GradedMap a, const GradedMap& b) { return a += b; }
GradedMap operator-(GradedMap a, const GradedMap& b) { return a -= b; }

GradedMap operator-(const GradedMap& a) { return Scalar(-1) * a; }

GradedMap operator*(const Scalar& s, const GradedMap& a) {
  std::map<int, Matrix> blocks;
  for (const auto& [k, m] : a.blocks()) blocks.emplace(k, s * m);
  return GradedMap(a.source(), a.target(), a.degree(), std::move(blocks));
}

GradedMap compose(const GradedMap& g, const GradedMap& f) {
  if (!(f.target() == g.source())) {
    throw Error(ErrorKind::ModuleMismatch, "cannot compose " + describe(g) + " after " + describe(f));
  }
  std::map<int, Matrix> blocks;
  for (const auto& [k, fm] : f.blocks()) {
    auto it = g.blocks().find(k + f.degree());
    if (it == g.blocks().end()) continue;
    blocks.emplace(k, it->second * fm);
  }
  return GradedMap(f.source(), g.target(), f.degree() + g.degree(), std::move(blocks));
}

GradedMap bracket(const GradedMap& f, const GradedMap& g) {
  return compose(f, g) - Scalar(koszul_sign(f.degree(), g.degree())) * compose(g, f);
}

GradedMap bracket(const GradedMap& on_target, const GradedMap& phi, const GradedMap& on_source) {
  if (on_target.degree() != on_source.degree()) {
    throw Error(ErrorKind::ModuleMismatch, "two-sided bracket needs operators of equal degree");
  }
  return compose(on_target, phi) -
         Scalar(koszul_sign(on_source.degree(), phi.degree())) * compose(phi, on_source);
}

namespace {

/// Offset of the (deg_a, *, *) block inside degree deg_a + deg_b of A (x) B.
std::size_t tensor_offset(const GradedModule& a, const GradedModule& b, int deg_a, int total) {
  std::size_t offset = 0;
  for (auto [k, ra] : a.ranks()) {
    if (k >= deg_a) break;
    offset += ra * b.rank(total - k);
  }
  return offset;
}

}  // namespace

std::size_t tensor_index(const GradedModule& a, const GradedModule& b, int deg_a, std::size_t index_a,
                         int deg_b, std::size_t index_b) {
  return tensor_offset(a, b, deg_a, deg_a + deg_b) + index_a * b.rank(deg_b) + index_b;
}

GradedModule tensor_module(const GradedModule& a, const GradedModule& b) {
  if (!(a.ring() == b.ring())) {
    throw Error(ErrorKind::RingMismatch, a.ring().to_string() + " (x) " + b.ring().to_string());
  }
  std::map<int, std::size_t> ranks;
  for (auto [k, ra] : a.ranks()) {
    for (auto [l, rb] : b.ranks()) ranks[k + l] += ra * rb;
  }
  std::map<int, std::vector<std::string>> labels;
  if (!a.all_labels().empty() || !b.all_labels().empty()) {
    for (auto [n, r] : ranks) labels[n].resize(r);
    for (auto [k, ra] : a.ranks()) {
      for (auto [l, rb] : b.ranks()) {
        for (std::size_t i = 0; i < ra; ++i) {
          for (std::size_t j = 0; j < rb; ++j) {
            labels[k + l][tensor_index(a, b, k, i, l, j)] = a.label(k, i) + "⊗" + b.label(l, j);
          }
        }
      }
    }
  }
  return GradedModule(a.ring(), std::move(ranks), std::move(labels));
}

GradedMap tensor_map(const GradedMap& f, const GradedMap& g) {
  const GradedModule& a = f.source();
  const GradedModule& b = g.source();
  const GradedModule& a2 = f.target();
  const GradedModule& b2 = g.target();
  GradedModule src = tensor_module(a, b);
  GradedModule tgt = tensor_module(a2, b2);
  const int degree = f.degree() + g.degree();

  std::map<int, Matrix> blocks;
  for (const auto& [k, fm] : f.blocks()) {
    for (const auto& [l, gm] : g.blocks()) {
      const int n = k + l;
      auto [it, _] = blocks.try_emplace(n, tgt.rank(n + degree), src.rank(n));
      Matrix& out = it->second;
      const Scalar sign(koszul_sign(g.degree(), k));
      for (std::size_t ia = 0; ia < fm.cols(); ++ia) {
        for (std::size_t ib = 0; ib < gm.cols(); ++ib) {
          const std::size_t col = tensor_index(a, b, k, ia, l, ib);
          for (std::size_t r = 0; r < fm.rows(); ++r) {
            if (sgn(fm(r, ia)) == 0) continue;
            for (std::size_t s = 0; s < gm.rows(); ++s) {
              if (sgn(gm(s, ib)) == 0) continue;
              const std::size_t row = tensor_index(a2, b2, k + f.degree(), r, l + g.degree(), s);
              out(row, col) += sign * fm(r, ia) * gm(s, ib);
            }
          }
        }
      }
    }
  }
  return GradedMap(std::move(src), std::move(tgt), degree, std::move(blocks));
}

GradedMap tensor_symmetry(const GradedModule& a, const GradedModule& b) {
  GradedModule src = tensor_module(a, b);
  GradedModule tgt = tensor_module(b, a);
  std::map<int, Matrix> blocks;
  for (auto [n, r] : src.ranks()) blocks.emplace(n, Matrix(r, r));
  for (auto [k, ra] : a.ranks()) {
    for (auto [l, rb] : b.ranks()) {
      Matrix& m = blocks.at(k + l);
      for (std::size_t i = 0; i < ra; ++i) {
        for (std::size_t j = 0; j < rb; ++j) {
          m(tensor_index(b, a, l, j, k, i), tensor_index(a, b, k, i, l, j)) = koszul_sign(k, l);
        }
      }
    }
  }
  return GradedMap(std::move(src), std::move(tgt), 0, std::move(blocks));
}

GradedMap tensor_associator(const GradedModule& a, const GradedModule& b, const GradedModule& c) {
  const GradedModule ab = tensor_module(a, b);
  const GradedModule bc = tensor_module(b, c);
  GradedModule src = tensor_module(ab, c);
  GradedModule tgt = tensor_module(a, bc);
  std::map<int, Matrix> blocks;
  for (auto [n, r] : src.ranks()) blocks.emplace(n, Matrix(r, r));
  for (auto [k, ra] : a.ranks()) {
    for (auto [l, rb] : b.ranks()) {
      for (auto [m, rc] : c.ranks()) {
        Matrix& block = blocks.at(k + l + m);
        for (std::size_t i = 0; i < ra; ++i) {
          for (std::size_t j = 0; j < rb; ++j) {
            for (std::size_t q = 0; q < rc; ++q) {
              const std::size_t col = tensor_index(ab, c, k + l, tensor_index(a, b, k, i, l, j), m, q);
              const std::size_t row = tensor_index(a, bc, k, i, l + m, tensor_index(b, c, l, j, m, q));
              block(row, col) = 1;
            }
          }
        }
      }
    }
  }
  return GradedMap(std::move(src), std::move(tgt), 0, std::move(blocks));
}

GradedMap left_unitor(const GradedModule& a) {
  GradedMap id = GradedMap::identity(a);
  return GradedMap(tensor_module(GradedModule::point(a.ring()), a), a, 0, id.blocks());
}

GradedMap right_unitor(const GradedModule& a) {
  GradedMap id = GradedMap::identity(a);
  return GradedMap(tensor_module(a, GradedModule::point(a.ring())), a, 0, id.blocks());
}

std::string describe(const GradedMap& f) {
  auto ranks = [](const GradedModule& m) {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (auto [d, r] : m.ranks()) {
      os << (first ? "" : ", ") << d << ':' << r;
      first = false;
    }
    os << '}';
    return os.str();
  };
  return "map of degree " + std::to_string(f.degree()) + " " + ranks(f.source()) + " -> " +
         ranks(f.target()) + " over " + f.ring().to_string();
}

}  // namespace hpt
