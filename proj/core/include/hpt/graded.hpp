#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hpt/matrix.hpp"
#include "hpt/ring.hpp"

namespace hpt {

/// (-1)^(a*b) as an int.
constexpr int koszul_sign(int a, int b) { return ((a * b) & 1) ? -1 : 1; }

/// Finitely generated free graded module: a rank per degree, optionally with
/// basis labels. Zero ranks are not stored.
class GradedModule {
 public:
  GradedModule() = default;
  GradedModule(Ring ring, std::map<int, std::size_t> ranks,
               std::map<int, std::vector<std::string>> labels = {});

  /// Rank 1 in degree 0.
  static GradedModule point(const Ring& ring, std::string label = "x");

  const Ring& ring() const { return ring_; }
  std::size_t rank(int degree) const;
  std::size_t total_rank() const;
  const std::map<int, std::size_t>& ranks() const { return ranks_; }
  std::vector<int> degrees() const;
  bool empty() const { return ranks_.empty(); }
  /// Basis labels in `degree`, if present.
  const std::vector<std::string>* labels(int degree) const;
  const std::map<int, std::vector<std::string>>& all_labels() const { return labels_; }
  /// Label of basis element `index` in `degree`, synthesized when absent.
  std::string label(int degree, std::size_t index) const;

  /// Equality is on ring and ranks; labels are cosmetic.
  bool operator==(const GradedModule& other) const {
    return ring_ == other.ring_ && ranks_ == other.ranks_;
  }

 private:
  Ring ring_;
  std::map<int, std::size_t> ranks_;
  std::map<int, std::vector<std::string>> labels_;
};

/// Degree-homogeneous map between graded modules. The block stored under key
/// k sends the degree-k part of the source to the degree-(k + degree) part of
/// the target. Zero blocks are never stored, so equality is exact equality of
/// the stored blocks.
class GradedMap {
 public:
  GradedMap() = default;
  GradedMap(GradedModule source, GradedModule target, int degree, std::map<int, Matrix> blocks = {});

  static GradedMap zero(const GradedModule& source, const GradedModule& target, int degree);
  static GradedMap identity(const GradedModule& module);

  const GradedModule& source() const { return source_; }
  const GradedModule& target() const { return target_; }
  const Ring& ring() const { return source_.ring(); }
  int degree() const { return degree_; }
  const std::map<int, Matrix>& blocks() const { return blocks_; }

  /// Block at source degree k; a zero matrix of the right shape when absent.
  Matrix block(int k) const;
  bool is_zero() const { return blocks_.empty(); }
  bool is_endomorphism() const { return source_ == target_; }

  /// Image of the basis vector `index` of source degree `k`, as a column.
  std::vector<Scalar> apply_basis(int k, std::size_t index) const;

  GradedMap& operator+=(const GradedMap& other);
  GradedMap& operator-=(const GradedMap& other);

  bool operator==(const GradedMap& other) const {
    return degree_ == other.degree_ && source_ == other.source_ && target_ == other.target_ &&
           blocks_ == other.blocks_;
  }

 private:
  void normalize();

  GradedModule source_;
  GradedModule target_;
  int degree_ = 0;
  std::map<int, Matrix> blocks_;
};

GradedMap operator+(GradedMap a, const GradedMap& b);
GradedMap operator-(GradedMap a, const GradedMap& b);
GradedMap operator-(const GradedMap& a);
GradedMap operator*(const Scalar& s, const GradedMap& a);

/// g after f. Degrees add. Throws ModuleMismatch unless f.target == g.source.
GradedMap compose(const GradedMap& g, const GradedMap& f);
inline GradedMap operator*(const GradedMap& g, const GradedMap& f) { return compose(g, f); }

/// Graded commutator f g - (-1)^(|f||g|) g f.
GradedMap bracket(const GradedMap& f, const GradedMap& g);
/// Two-sided commutator for a map `phi: X -> Y` against operators of equal
/// degree on each end: on_target phi - (-1)^(|phi||x|) phi on_source.
GradedMap bracket(const GradedMap& on_target, const GradedMap& phi, const GradedMap& on_source);

/// Degree-n part of A (x) B, basis ordered by (degree in A, index in A, index in B).
GradedModule tensor_module(const GradedModule& a, const GradedModule& b);

/// Position of x (x) y in the tensor basis of degree |x| + |y|.
std::size_t tensor_index(const GradedModule& a, const GradedModule& b, int deg_a, std::size_t index_a,
                         int deg_b, std::size_t index_b);

/// (f (x) g)(x (x) y) = (-1)^(|g||x|) f x (x) g y.
GradedMap tensor_map(const GradedMap& f, const GradedMap& g);

/// x (x) y -> (-1)^(|x||y|) y (x) x.
GradedMap tensor_symmetry(const GradedModule& a, const GradedModule& b);

/// Reindexing (A (x) B) (x) C -> A (x) (B (x) C); no signs.
GradedMap tensor_associator(const GradedModule& a, const GradedModule& b, const GradedModule& c);

/// Left and right unitors of the point module, as basis reindexings.
GradedMap left_unitor(const GradedModule& a);   // point (x) A -> A
GradedMap right_unitor(const GradedModule& a);  // A (x) point -> A

std::string describe(const GradedMap& f);

}  // namespace hpt
