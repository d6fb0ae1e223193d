#pragma once

#include "hpt/complex.hpp"
#include "hpt/sdr.hpp"

/// Small hand-built instances shared by the tests, the CLI corpus and the
/// documentation.
namespace hpt::fixtures {

/// Basis {x} in degree 0, zero differential.
ChainComplex point(const Ring& ring = Ring::integers());

/// Degree 0: {a, b}; degree 1: {e}; d e = a - b.
ChainComplex interval(const Ring& ring = Ring::integers());

/// f(a) = f(b) = x, g(x) = a, h(b) = -e onto the point.
Sdr interval_sdr(const Ring& ring = Ring::integers());

/// delta(e) = -a on the interval, so that (d + delta)(e) = -b.
Perturbation interval_perturbation(const Ring& ring = Ring::integers());

/// Degree 0: {v0, v1}; degree 1: {e0, e1}; d e0 = v1 - v0, d e1 = v0 - v1.
ChainComplex circle(const Ring& ring = Ring::integers());

/// Degree 0: {p}; degree 1: {c}; zero differential.
ChainComplex circle_minimal(const Ring& ring = Ring::integers());

/// f(v0) = f(v1) = p, f(e1) = c; g(p) = v0, g(c) = e0 + e1; h(v1) = e0.
Sdr circle_sdr(const Ring& ring = Ring::integers());

/// Z --2--> Z in degrees 1 -> 0.
ChainComplex multiplication_by_two();

}  // namespace hpt::fixtures
