#pragma once

#include "neron/matrix.hpp"

#include <cstdint>
#include <vector>

namespace neron {

// Dense polynomials, coefficient i is the coefficient of x^i. Stored
// without leading zeros; the zero polynomial is the empty vector.
using ZPoly = std::vector<Integer>;
using QPoly = std::vector<Rational>;

void trim(ZPoly& p);
void trim(QPoly& p);
int degree(const ZPoly& p); // -1 for zero
int degree(const QPoly& p);

ZPoly operator*(const ZPoly& a, const ZPoly& b);
ZPoly operator+(const ZPoly& a, const ZPoly& b);
ZPoly operator-(const ZPoly& a, const ZPoly& b);
QPoly operator*(const QPoly& a, const QPoly& b);
QPoly operator+(const QPoly& a, const QPoly& b);
QPoly operator-(const QPoly& a, const QPoly& b);
QPoly scale(const QPoly& a, const Rational& c);

QPoly to_q(const ZPoly& p);
Integer evaluate(const ZPoly& p, const Integer& x);
ZPoly derivative(const ZPoly& p);

// Division by a monic divisor: a = q*b + r with deg r < deg b.
std::pair<ZPoly, ZPoly> divmod_monic(const ZPoly& a, const ZPoly& b);
std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b);
QPoly mod(const QPoly& a, const QPoly& b);

// Inverse of a modulo m over Q; throws InvalidArgument if gcd(a, m) != 1.
QPoly invert_mod(const QPoly& a, const QPoly& m);

// f_{l,i}(x) = sum_{j<l} x^{j l^{i-1}}: the l^i-th cyclotomic polynomial.
ZPoly cyclotomic_poly(std::int64_t l, unsigned i);
// prod_{i=lo}^{hi} f_{l,i}; the empty product (hi < lo) is 1.
ZPoly cyclotomic_product(std::int64_t l, unsigned lo, unsigned hi);

// Multiplication by x on Z[x]/(f) in the basis 1, x, ..., x^{n-1}:
// column j holds the coordinates of x * x^j. f must be monic.
IntMatrix companion_matrix(const ZPoly& f);
IntMatrix lambda_mult_matrix(std::int64_t l, unsigned lo, unsigned hi);

// Matrix of multiplication by a on Q[x]/(f) (f monic, a reduced).
IntMatrix mult_matrix(const ZPoly& a, const ZPoly& f);

// det(x I - m), monic of degree n.
ZPoly charpoly(const IntMatrix& m);

// Largest k with f^k | p (f monic of positive degree, p nonzero).
unsigned multiplicity(ZPoly p, const ZPoly& f);

// Res(a, b) via the Sylvester determinant.
Integer resultant(const ZPoly& a, const ZPoly& b);

// Inverse of u in (Z/l^N)[x]/(f), f monic. Computed by extended Euclid
// over F_l and Newton lifting. Throws InvalidArgument if u is not a unit.
ZPoly mod_invert(const ZPoly& u, const ZPoly& f, std::int64_t l, unsigned precision);

// (a * b mod f) with coefficients reduced mod `modulus` (f monic).
ZPoly mulmod(const ZPoly& a, const ZPoly& b, const ZPoly& f, const Integer& modulus);

} // namespace neron
