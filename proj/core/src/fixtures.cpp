#include "hpt/fixtures.hpp"

namespace hpt::fixtures {

namespace {

Matrix column(std::initializer_list<int> values) {
  Matrix m(values.size(), 1);
  std::size_t i = 0;
  for (int v : values) m(i++, 0) = v;
  return m;
}

Matrix row(std::initializer_list<int> values) { return column(values).transpose(); }

Matrix rows(std::initializer_list<std::initializer_list<int>> values) {
  Matrix m(values.size(), values.begin()->size());
  std::size_t r = 0;
  for (const auto& line : values) {
    std::size_t c = 0;
    for (int v : line) m(r, c++) = v;
    ++r;
  }
  return m;
}

}  // namespace

ChainComplex point(const Ring& ring) { return ChainComplex::point(ring); }

ChainComplex interval(const Ring& ring) {
  GradedModule m(ring, {{0, 2}, {1, 1}}, {{0, {"a", "b"}}, {1, {"e"}}});
  return ChainComplex(m, GradedMap(m, m, -1, {{1, column({1, -1})}}));
}

Sdr interval_sdr(const Ring& ring) {
  ChainComplex a = interval(ring);
  ChainComplex b = point(ring);
  GradedMap f(a.module(), b.module(), 0, {{0, row({1, 1})}});
  GradedMap g(b.module(), a.module(), 0, {{0, column({1, 0})}});
  GradedMap h(a.module(), a.module(), 1, {{0, row({0, -1})}});
  return validate_sdr(std::move(a), std::move(b), std::move(f), std::move(g), std::move(h));
}

Perturbation interval_perturbation(const Ring& ring) {
  ChainComplex a = interval(ring);
  GradedMap delta(a.module(), a.module(), -1, {{1, column({-1, 0})}});
  return check_maurer_cartan(delta, a);
}

ChainComplex circle(const Ring& ring) {
  GradedModule m(ring, {{0, 2}, {1, 2}}, {{0, {"v0", "v1"}}, {1, {"e0", "e1"}}});
  return ChainComplex(m, GradedMap(m, m, -1, {{1, rows({{-1, 1}, {1, -1}})}}));
}

ChainComplex circle_minimal(const Ring& ring) {
  GradedModule m(ring, {{0, 1}, {1, 1}}, {{0, {"p"}}, {1, {"c"}}});
  return ChainComplex::with_zero_differential(m);
}

Sdr circle_sdr(const Ring& ring) {
  ChainComplex a = circle(ring);
  ChainComplex b = circle_minimal(ring);
  GradedMap f(a.module(), b.module(), 0, {{0, row({1, 1})}, {1, row({0, 1})}});
  GradedMap g(b.module(), a.module(), 0, {{0, column({1, 0})}, {1, column({1, 1})}});
  GradedMap h(a.module(), a.module(), 1, {{0, rows({{0, 1}, {0, 0}})}});
  return validate_sdr(std::move(a), std::move(b), std::move(f), std::move(g), std::move(h));
}

ChainComplex multiplication_by_two() {
  GradedModule m(Ring::integers(), {{0, 1}, {1, 1}});
  return ChainComplex(m, GradedMap(m, m, -1, {{1, column({2})}}));
}

}  // namespace hpt::fixtures
