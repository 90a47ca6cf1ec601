#include "fgx/lambda_matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace fgx {

LambdaPoly::LambdaPoly(Rational constant) {
  if (!constant.is_zero()) coeffs_.push_back(constant);
}

LambdaPoly::LambdaPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

LambdaPoly LambdaPoly::monomial(Rational c, int k) {
  if (c.is_zero()) return LambdaPoly();
  std::vector<Rational> v(static_cast<std::size_t>(k) + 1, Rational(0));
  v.back() = c;
  return LambdaPoly(std::move(v));
}

Rational LambdaPoly::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(coeffs_.size())) return Rational(0);
  return coeffs_[static_cast<std::size_t>(k)];
}

void LambdaPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Rational LambdaPoly::eval(const Rational& x) const {
  Rational acc(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

LambdaPoly LambdaPoly::derivative() const {
  if (coeffs_.size() <= 1) return LambdaPoly();
  std::vector<Rational> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) {
    d[k - 1] = coeffs_[k] * Rational(static_cast<std::int64_t>(k));
  }
  return LambdaPoly(std::move(d));
}

LambdaPoly LambdaPoly::operator-() const {
  LambdaPoly out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

LambdaPoly& LambdaPoly::operator+=(const LambdaPoly& o) {
  if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rational(0));
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  trim();
  return *this;
}

LambdaPoly& LambdaPoly::operator-=(const LambdaPoly& o) { return *this += -o; }

LambdaPoly& LambdaPoly::operator*=(const LambdaPoly& o) {
  if (is_zero() || o.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<Rational> out(coeffs_.size() + o.coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) {
      out[i + j] += coeffs_[i] * o.coeffs_[j];
    }
  }
  coeffs_ = std::move(out);
  trim();
  return *this;
}

LambdaPoly LambdaPoly::deflate(const Rational& root) const {
  if (is_zero()) throw std::invalid_argument("LambdaPoly::deflate: zero polynomial");
  // Synthetic division by (lambda - root).
  std::vector<Rational> q(coeffs_.size() - 1, Rational(0));
  Rational carry(0);
  for (std::size_t k = coeffs_.size(); k-- > 1;) {
    carry = coeffs_[k] + carry * root;
    q[k - 1] = carry;
  }
  const Rational rem = coeffs_[0] + carry * root;
  if (!rem.is_zero()) throw std::invalid_argument("LambdaPoly::deflate: not a root");
  return LambdaPoly(std::move(q));
}

std::string LambdaPoly::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    if (coeffs_[k].is_zero()) continue;
    if (!first) os << " + ";
    os << "(" << coeffs_[k].str() << ")";
    if (k == 1) os << "*L";
    if (k > 1) os << "*L^" << k;
    first = false;
  }
  return os.str();
}

LambdaMatrix::LambdaMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {
  if (rows <= 0 || cols <= 0) throw std::invalid_argument("LambdaMatrix: bad shape");
}

LambdaPoly& LambdaMatrix::at(int r, int c) {
  return data_[static_cast<std::size_t>(r) * cols_ + c];
}

const LambdaPoly& LambdaMatrix::at(int r, int c) const {
  return data_[static_cast<std::size_t>(r) * cols_ + c];
}

bool LambdaMatrix::is_zero() const {
  for (const auto& p : data_) {
    if (!p.is_zero()) return false;
  }
  return true;
}

LambdaMatrix LambdaMatrix::operator-() const {
  LambdaMatrix out = *this;
  for (auto& p : out.data_) p = -p;
  return out;
}

LambdaMatrix& LambdaMatrix::operator+=(const LambdaMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("LambdaMatrix: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

LambdaMatrix& LambdaMatrix::operator-=(const LambdaMatrix& o) { return *this += -o; }

LambdaMatrix operator*(const LambdaMatrix& a, const LambdaMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("LambdaMatrix: product shape mismatch");
  LambdaMatrix out(a.rows_, b.cols_);
  for (int r = 0; r < a.rows_; ++r) {
    for (int c = 0; c < b.cols_; ++c) {
      LambdaPoly acc;
      for (int k = 0; k < a.cols_; ++k) acc += a.at(r, k) * b.at(k, c);
      out.at(r, c) = acc;
    }
  }
  return out;
}

LambdaMatrix LambdaMatrix::scaled(const Rational& c) const {
  LambdaMatrix out = *this;
  const LambdaPoly p{c};
  for (auto& e : out.data_) e *= p;
  return out;
}

bool operator==(const LambdaMatrix& a, const LambdaMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

LambdaMatrix LambdaMatrix::identity(int dim) {
  LambdaMatrix out(dim, dim);
  for (int i = 0; i < dim; ++i) out.at(i, i) = LambdaPoly(Rational(1));
  return out;
}

LambdaMatrix LambdaMatrix::scalar(int dim, const LambdaPoly& p) {
  LambdaMatrix out(dim, dim);
  for (int i = 0; i < dim; ++i) out.at(i, i) = p;
  return out;
}

LambdaMatrix LambdaMatrix::derivative() const {
  LambdaMatrix out = *this;
  for (auto& p : out.data_) p = p.derivative();
  return out;
}

LambdaPoly LambdaMatrix::determinant() const {
  if (rows_ != cols_) throw std::invalid_argument("LambdaMatrix: determinant of non-square matrix");
  if (rows_ == 1) return at(0, 0);
  LambdaPoly det;
  int sign = 1;
  for (int c = 0; c < cols_; ++c) {
    if (!at(0, c).is_zero()) {
      LambdaMatrix minor(rows_ - 1, cols_ - 1);
      for (int r = 1; r < rows_; ++r) {
        int mc = 0;
        for (int cc = 0; cc < cols_; ++cc) {
          if (cc == c) continue;
          minor.at(r - 1, mc++) = at(r, cc);
        }
      }
      LambdaPoly term = at(0, c) * minor.determinant();
      if (sign < 0) term = -term;
      det += term;
    }
    sign = -sign;
  }
  return det;
}

std::vector<std::vector<Rational>> LambdaMatrix::eval(const Rational& lambda) const {
  std::vector<std::vector<Rational>> out(static_cast<std::size_t>(rows_),
                                         std::vector<Rational>(static_cast<std::size_t>(cols_)));
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) out[r][c] = at(r, c).eval(lambda);
  }
  return out;
}

std::string LambdaMatrix::str() const {
  std::ostringstream os;
  for (int r = 0; r < rows_; ++r) {
    os << "[ ";
    for (int c = 0; c < cols_; ++c) os << at(r, c).str() << (c + 1 < cols_ ? ", " : "");
    os << " ]\n";
  }
  return os.str();
}

int rational_rank(std::vector<std::vector<Rational>> m) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size();
  const std::size_t cols = m[0].size();
  int rank = 0;
  std::size_t pr = 0;
  for (std::size_t pc = 0; pc < cols && pr < rows; ++pc) {
    std::size_t pivot = pr;
    while (pivot < rows && m[pivot][pc].is_zero()) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[pr], m[pivot]);
    for (std::size_t r = pr + 1; r < rows; ++r) {
      if (m[r][pc].is_zero()) continue;
      const Rational factor = m[r][pc] / m[pr][pc];
      for (std::size_t c = pc; c < cols; ++c) m[r][c] -= factor * m[pr][c];
    }
    ++pr;
    ++rank;
  }
  return rank;
}

std::vector<Rational> rational_apply(const std::vector<std::vector<Rational>>& m,
                                     const std::vector<Rational>& v) {
  std::vector<Rational> out(m.size(), Rational(0));
  for (std::size_t r = 0; r < m.size(); ++r) {
    if (m[r].size() != v.size()) throw std::invalid_argument("rational_apply: shape mismatch");
    for (std::size_t c = 0; c < v.size(); ++c) out[r] += m[r][c] * v[c];
  }
  return out;
}

}  // namespace fgx
