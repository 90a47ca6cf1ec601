#include "doctest.h"
#include "fgx/lambda_matrix.hpp"
#include "fgx/rational.hpp"

using fgx::LambdaPoly;
using fgx::Rational;

TEST_CASE("rational arithmetic normalizes and is exact") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(1, -2) == Rational(-1, 2));
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(3, 7) * Rational(7, 3) == Rational(1));
  CHECK(Rational(5) / Rational(2) == Rational(5, 2));
  CHECK(Rational(0, 5) == Rational(0));
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK_THROWS(Rational(1, 0));
}

TEST_CASE("polynomial arithmetic, evaluation and derivative") {
  const LambdaPoly L = LambdaPoly::lambda();
  const LambdaPoly p = (L - LambdaPoly(Rational(2))) * (L - LambdaPoly(Rational(3)));
  CHECK(p.degree() == 2);
  CHECK(p.eval(Rational(2)).is_zero());
  CHECK(p.eval(Rational(3)).is_zero());
  CHECK(p.eval(Rational(0)) == Rational(6));
  CHECK(p.derivative().eval(Rational(5, 2)).is_zero());  // vertex of the parabola

  const LambdaPoly q = p.deflate(Rational(2));
  CHECK(q == L - LambdaPoly(Rational(3)));
  CHECK_THROWS(p.deflate(Rational(7)));

  CHECK((p - p).is_zero());
}

TEST_CASE("rational rank and matrix application") {
  using fgx::rational_rank;
  std::vector<std::vector<Rational>> m = {
      {Rational(1), Rational(2)}, {Rational(2), Rational(4)}, {Rational(0), Rational(1)}};
  CHECK(rational_rank(m) == 2);
  const auto v = fgx::rational_apply(m, {Rational(1), Rational(-1)});
  CHECK(v[0] == Rational(-1));
  CHECK(v[1] == Rational(-2));
  CHECK(v[2] == Rational(-1));
}
