#include "hpt/dg_calculus.hpp"

#include <algorithm>
#include <sstream>

#include "hpt/error.hpp"

namespace hpt {

NonDgIso::NonDgIso(GradedMap alpha, GradedMap alpha_inv) : alpha_(std::move(alpha)), alpha_inv_(std::move(alpha_inv)) {
  if (alpha_.degree() != 0 || alpha_inv_.degree() != 0) {
    throw Error(ErrorKind::NotInvertible, "only degree-0 isomorphisms are supported");
  }
  if (!(alpha_.source() == alpha_inv_.target()) || !(alpha_.target() == alpha_inv_.source())) {
    throw Error(ErrorKind::ModuleMismatch, "inverse does not run backwards");
  }
  if (!(compose(alpha_, alpha_inv_) == GradedMap::identity(alpha_.target())) ||
      !(compose(alpha_inv_, alpha_) == GradedMap::identity(alpha_.source()))) {
    throw Error(ErrorKind::NotInvertible, "stored inverse is not a two-sided inverse");
  }
}

NonDgIso NonDgIso::identity(const GradedModule& module) {
  auto id = GradedMap::identity(module);
  return NonDgIso(id, id);
}

NonDgIso compose(const NonDgIso& second, const NonDgIso& first) {
  return NonDgIso(compose(second.map(), first.map()), compose(first.inverse_map(), second.inverse_map()));
}

GradedMap left_log_derivative(const NonDgIso& alpha, const ChainComplex& a, const ChainComplex& a2) {
  return compose(alpha.inverse_map(), hom_differential(alpha.map(), a, a2));
}

GradedMap right_log_derivative(const NonDgIso& alpha, const ChainComplex& a, const ChainComplex& a2) {
  return compose(hom_differential(alpha.map(), a, a2), alpha.inverse_map());
}

GradedMap conjugate(const NonDgIso& alpha, const GradedMap& f) { return conjugate(alpha, f, alpha); }

GradedMap conjugate(const NonDgIso& alpha_to, const GradedMap& f, const NonDgIso& alpha_from) {
  return compose(alpha_to.map(), compose(f, alpha_from.inverse_map()));
}

namespace {

const DiagramObject& find_object(const std::vector<DiagramObject>& objects, const std::string& name) {
  auto it = std::find_if(objects.begin(), objects.end(), [&](const auto& o) { return o.name == name; });
  if (it == objects.end()) throw Error(ErrorKind::InvalidInput, "unknown diagram object '" + name + "'");
  return *it;
}

}  // namespace

GradedMap transfer_obstruction(const std::vector<DiagramObject>& objects, const DiagramArrow& arrow) {
  const DiagramObject& from = find_object(objects, arrow.from);
  const DiagramObject& to = find_object(objects, arrow.to);
  const GradedMap log_from = left_log_derivative(from.alpha, from.source, from.target);
  const GradedMap log_to = left_log_derivative(to.alpha, to.source, to.target);
  return bracket(log_to, arrow.map, log_from);
}

std::vector<GradedMap> transfer_functor(const std::vector<DiagramObject>& objects,
                                        const std::vector<DiagramArrow>& arrows) {
  std::vector<GradedMap> out;
  out.reserve(arrows.size());
  for (const auto& arrow : arrows) {
    const GradedMap obstruction = transfer_obstruction(objects, arrow);
    if (!obstruction.is_zero()) {
      const auto& [k, block] = *obstruction.blocks().begin();
      std::ostringstream os;
      os << "[D_l alpha, " << arrow.name << "] is nonzero on degree " << k << ": " << block;
      throw Error(ErrorKind::CommutatorObstruction, os.str(), {arrow.name}, k);
    }
    out.push_back(conjugate(find_object(objects, arrow.to).alpha, arrow.map, find_object(objects, arrow.from).alpha));
  }
  return out;
}

}  // namespace hpt
