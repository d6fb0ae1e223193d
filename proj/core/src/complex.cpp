#include "hpt/complex.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "hpt/error.hpp"

namespace hpt {

ChainComplex::ChainComplex(GradedModule module, GradedMap d) : module_(std::move(module)), d_(std::move(d)) {
  if (!(d_.source() == module_) || !(d_.target() == module_)) {
    throw Error(ErrorKind::ModuleMismatch, "differential is not an endomorphism of the module");
  }
  if (d_.degree() != -1) {
    throw Error(ErrorKind::NotADifferential, "differential has degree " + std::to_string(d_.degree()));
  }
  const GradedMap dd = compose(d_, d_);
  if (!dd.is_zero()) {
    const int k = dd.blocks().begin()->first;
    throw Error(ErrorKind::NotADifferential, "d^2 != 0 on degree " + std::to_string(k), {}, k);
  }
}

ChainComplex ChainComplex::with_zero_differential(const GradedModule& module) {
  return ChainComplex(module, GradedMap::zero(module, module, -1));
}

ChainComplex ChainComplex::point(const Ring& ring) {
  return with_zero_differential(GradedModule::point(ring));
}

ChainComplex tensor_complex(const ChainComplex& a, const ChainComplex& b) {
  GradedMap d = tensor_map(a.d(), GradedMap::identity(b.module())) +
                tensor_map(GradedMap::identity(a.module()), b.d());
  GradedModule module = d.source();
  return ChainComplex(std::move(module), std::move(d));
}

GradedMap hom_differential(const GradedMap& f, const ChainComplex& src, const ChainComplex& tgt) {
  if (!(f.source() == src.module()) || !(f.target() == tgt.module())) {
    throw Error(ErrorKind::ModuleMismatch, "D applied to " + describe(f) + " between unrelated complexes");
  }
  return compose(tgt.d(), f) - Scalar(koszul_sign(f.degree(), 1)) * compose(f, src.d());
}

Perturbation check_maurer_cartan(const GradedMap& delta, const ChainComplex& a) {
  if (!(delta.source() == a.module()) || !(delta.target() == a.module())) {
    throw Error(ErrorKind::ModuleMismatch, "perturbation is not an endomorphism of the complex");
  }
  if (delta.degree() != -1) {
    throw Error(ErrorKind::MaurerCartanViolation, "perturbation has degree " + std::to_string(delta.degree()));
  }
  const GradedMap defect = hom_differential(delta, a, a) + compose(delta, delta);
  if (!defect.is_zero()) {
    const auto& [k, block] = *defect.blocks().begin();
    std::ostringstream os;
    os << "D(delta) + delta^2 is nonzero on degree " << k << ": " << block;
    throw Error(ErrorKind::MaurerCartanViolation, os.str(), {}, k);
  }
  return Perturbation(a, delta);
}

ChainComplex perturb_complex(const Perturbation& p) {
  return ChainComplex(p.complex().module(), p.complex().d() + p.delta());
}

Perturbation zero_perturbation(const ChainComplex& a) {
  return check_maurer_cartan(GradedMap::zero(a.module(), a.module(), -1), a);
}

DegreeWindow hom_support(const GradedModule& from, const GradedModule& to) {
  if (from.empty() || to.empty()) return {1, 0};
  DegreeWindow w{std::numeric_limits<int>::max(), std::numeric_limits<int>::min()};
  for (auto [k, _] : from.ranks()) {
    for (auto [l, __] : to.ranks()) {
      w.lo = std::min(w.lo, l - k);
      w.hi = std::max(w.hi, l - k);
    }
  }
  return w;
}

// ---------------------------------------------------------------------------

std::size_t HomBasis::rank(int n) const {
  std::size_t total = 0;
  for (auto [k, r] : from_.ranks()) total += r * to_.rank(k + n);
  return total;
}

std::vector<Scalar> HomBasis::flatten(const GradedMap& f) const {
  if (!(f.source() == from_) || !(f.target() == to_)) {
    throw Error(ErrorKind::ModuleMismatch, "cannot express " + describe(f) + " in this Hom basis");
  }
  std::vector<Scalar> coords;
  coords.reserve(rank(f.degree()));
  for (auto [k, cols] : from_.ranks()) {
    const std::size_t rows = to_.rank(k + f.degree());
    if (rows == 0) continue;
    auto it = f.blocks().find(k);
    if (it == f.blocks().end()) {
      coords.resize(coords.size() + rows * cols);
      continue;
    }
    coords.insert(coords.end(), it->second.data().begin(), it->second.data().end());
  }
  return coords;
}

GradedMap HomBasis::unflatten(int n, const std::vector<Scalar>& coords) const {
  if (coords.size() != rank(n)) {
    throw Error(ErrorKind::ModuleMismatch, "coordinate vector has wrong length for Hom degree " + std::to_string(n));
  }
  std::map<int, Matrix> blocks;
  std::size_t pos = 0;
  for (auto [k, cols] : from_.ranks()) {
    const std::size_t rows = to_.rank(k + n);
    if (rows == 0) continue;
    std::vector<Scalar> data(coords.begin() + static_cast<std::ptrdiff_t>(pos),
                             coords.begin() + static_cast<std::ptrdiff_t>(pos + rows * cols));
    pos += rows * cols;
    blocks.emplace(k, Matrix(rows, cols, std::move(data)));
  }
  return GradedMap(from_, to_, n, std::move(blocks));
}

GradedMap HomBasis::basis_map(int n, std::size_t index) const {
  std::vector<Scalar> coords(rank(n));
  coords.at(index) = 1;
  return unflatten(n, coords);
}

namespace {

GradedModule hom_module(const HomBasis& basis, DegreeWindow w, const Ring& ring) {
  std::map<int, std::size_t> ranks;
  for (int n = w.lo; n <= w.hi; ++n) ranks[n] = basis.rank(n);
  return GradedModule(ring, std::move(ranks));
}

/// Matrix of a linear operator on Hom given by its action on basis maps.
template <typename Op>
GradedMap hom_operator(const HomBasis& basis, const GradedModule& module, int degree, Op op) {
  std::map<int, Matrix> blocks;
  for (auto [n, r] : module.ranks()) {
    const std::size_t rows = module.rank(n + degree);
    if (rows == 0) continue;
    Matrix m(rows, r);
    for (std::size_t i = 0; i < r; ++i) {
      const std::vector<Scalar> column = basis.flatten(op(basis.basis_map(n, i)));
      for (std::size_t row = 0; row < rows; ++row) m(row, i) = column[row];
    }
    blocks.emplace(n, std::move(m));
  }
  return GradedMap(module, module, degree, std::move(blocks));
}

}  // namespace

ChainComplex hom_complex(const ChainComplex& from, const ChainComplex& to, std::optional<DegreeWindow> window) {
  if (!(from.ring() == to.ring())) {
    throw Error(ErrorKind::RingMismatch, "Hom between complexes over different rings");
  }
  const HomBasis basis(from.module(), to.module());
  const DegreeWindow support = hom_support(from.module(), to.module());
  DegreeWindow w = support;
  if (window) {
    if (support.lo <= support.hi && (support.lo < window->lo || support.hi > window->hi)) {
      throw Error(ErrorKind::WindowTooSmall,
                  "Hom is nonzero in degrees [" + std::to_string(support.lo) + ", " + std::to_string(support.hi) +
                      "] but the window is [" + std::to_string(window->lo) + ", " + std::to_string(window->hi) + "]");
    }
    w = *window;
  }
  GradedModule module = hom_module(basis, w, from.ring());
  GradedMap d = hom_operator(basis, module, -1, [&](const GradedMap& f) { return hom_differential(f, from, to); });
  return ChainComplex(std::move(module), std::move(d));
}

GradedMap post_composition(const GradedMap& delta, const GradedModule& from, const GradedModule& to) {
  const HomBasis basis(from, to);
  GradedModule module = hom_module(basis, hom_support(from, to), to.ring());
  return hom_operator(basis, module, delta.degree(), [&](const GradedMap& f) { return compose(delta, f); });
}

GradedMap pre_composition(const GradedMap& delta, const GradedModule& from, const GradedModule& to) {
  const HomBasis basis(from, to);
  GradedModule module = hom_module(basis, hom_support(from, to), to.ring());
  return hom_operator(basis, module, delta.degree(), [&](const GradedMap& f) {
    return Scalar(koszul_sign(delta.degree(), f.degree())) * compose(f, delta);
  });
}

namespace {

void compare_differentials(const ChainComplex& lhs, const ChainComplex& rhs, const char* what) {
  if (!(lhs.module() == rhs.module())) {
    throw Error(ErrorKind::UniversalPropertyViolation, std::string(what) + ": Hom modules differ");
  }
  for (auto [n, _] : lhs.module().ranks()) {
    if (!(lhs.d().block(n) == rhs.d().block(n))) {
      throw Error(ErrorKind::UniversalPropertyViolation,
                  std::string(what) + ": differentials differ in degree " + std::to_string(n), {}, n);
    }
  }
}

}  // namespace

UniversalPropertyReport check_universal_property(const ChainComplex& b, const Perturbation& p) {
  const ChainComplex& a = p.complex();
  const ChainComplex a_delta = perturb_complex(p);
  UniversalPropertyReport report;

  {
    const ChainComplex lhs = hom_complex(b, a_delta);
    const ChainComplex base = hom_complex(b, a);
    const Perturbation induced = check_maurer_cartan(post_composition(p.delta(), b.module(), a.module()), base);
    compare_differentials(lhs, perturb_complex(induced), "Hom(B, A_delta) vs Hom(B, A)_{delta_*}");
    report.covariant = hom_support(b.module(), a.module());
  }
  {
    const ChainComplex lhs = hom_complex(a_delta, b);
    const ChainComplex base = hom_complex(a, b);
    const Perturbation induced = check_maurer_cartan(-pre_composition(p.delta(), a.module(), b.module()), base);
    compare_differentials(lhs, perturb_complex(induced), "Hom(A_delta, B) vs Hom(A, B)_{-delta^*}");
    report.contravariant = hom_support(a.module(), b.module());
  }
  return report;
}

}  // namespace hpt
