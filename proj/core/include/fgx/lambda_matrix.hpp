#pragma once

#include <string>
#include <vector>

#include "fgx/rational.hpp"

namespace fgx {

/// Polynomial in the Mellin variable lambda with exact rational coefficients.
/// coeffs()[k] multiplies lambda^k; the zero polynomial has no coefficients.
class LambdaPoly {
 public:
  LambdaPoly() = default;
  LambdaPoly(Rational constant);  // NOLINT(implicit)
  explicit LambdaPoly(std::vector<Rational> coeffs);

  /// The monomial c * lambda^k.
  static LambdaPoly monomial(Rational c, int k);
  /// The polynomial lambda.
  static LambdaPoly lambda() { return monomial(1, 1); }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  Rational coeff(int k) const;

  Rational eval(const Rational& x) const;
  LambdaPoly derivative() const;

  LambdaPoly operator-() const;
  LambdaPoly& operator+=(const LambdaPoly& o);
  LambdaPoly& operator-=(const LambdaPoly& o);
  LambdaPoly& operator*=(const LambdaPoly& o);

  friend LambdaPoly operator+(LambdaPoly a, const LambdaPoly& b) { return a += b; }
  friend LambdaPoly operator-(LambdaPoly a, const LambdaPoly& b) { return a -= b; }
  friend LambdaPoly operator*(LambdaPoly a, const LambdaPoly& b) { return a *= b; }
  friend bool operator==(const LambdaPoly& a, const LambdaPoly& b) { return a.coeffs_ == b.coeffs_; }
  friend bool operator!=(const LambdaPoly& a, const LambdaPoly& b) { return !(a == b); }

  /// Exact division by (lambda - root); throws if the remainder is nonzero.
  LambdaPoly deflate(const Rational& root) const;

  std::string str() const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// Dense matrix of LambdaPoly entries. Used for every indicial family in the
/// 4-component splitting (scalar slot, mixed slot, trace slot, trace-free slot)
/// and for the 2-component gauge splittings.
class LambdaMatrix {
 public:
  LambdaMatrix() : rows_(0), cols_(0) {}
  LambdaMatrix(int rows, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  LambdaPoly& at(int r, int c);
  const LambdaPoly& at(int r, int c) const;

  bool is_zero() const;
  LambdaMatrix operator-() const;
  LambdaMatrix& operator+=(const LambdaMatrix& o);
  LambdaMatrix& operator-=(const LambdaMatrix& o);
  friend LambdaMatrix operator+(LambdaMatrix a, const LambdaMatrix& b) { return a += b; }
  friend LambdaMatrix operator-(LambdaMatrix a, const LambdaMatrix& b) { return a -= b; }
  friend LambdaMatrix operator*(const LambdaMatrix& a, const LambdaMatrix& b);
  LambdaMatrix scaled(const Rational& c) const;
  friend bool operator==(const LambdaMatrix& a, const LambdaMatrix& b);

  static LambdaMatrix identity(int dim);
  /// p * identity.
  static LambdaMatrix scalar(int dim, const LambdaPoly& p);

  LambdaMatrix derivative() const;
  LambdaPoly determinant() const;  // square matrices, Laplace expansion

  /// Exact evaluation at a rational lambda.
  std::vector<std::vector<Rational>> eval(const Rational& lambda) const;

  std::string str() const;

 private:
  int rows_, cols_;
  std::vector<LambdaPoly> data_;
};

/// Exact rank of a rational matrix via fraction-free Gaussian elimination.
int rational_rank(std::vector<std::vector<Rational>> m);

/// Exact matrix * vector over the rationals.
std::vector<Rational> rational_apply(const std::vector<std::vector<Rational>>& m,
                                     const std::vector<Rational>& v);

}  // namespace fgx
