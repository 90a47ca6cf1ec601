#include "fgx/indicial_families.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace fgx {

namespace {

LambdaPoly L() { return LambdaPoly::lambda(); }
LambdaPoly C(std::int64_t v) { return LambdaPoly(Rational(v)); }
LambdaPoly C(const Rational& v) { return LambdaPoly(v); }

void require_dim(int n) {
  if (n < 3) throw std::invalid_argument("indicial families require n >= 3");
}

}  // namespace

LambdaMatrix ricci_indicial(int n) {
  require_dim(n);
  LambdaMatrix m(4, 4);
  m.at(0, 0) = C(n) * (L() - C(2));
  m.at(0, 2) = -C(n) * L() * (L() - C(2));
  m.at(2, 0) = -L() + C(2 * n);
  m.at(2, 2) = L() * (L() - C(2 * n));
  m.at(3, 3) = L() * (L() - C(n));
  return m;
}

LambdaMatrix ricci_indicial_derivative(int n) { return ricci_indicial(n).derivative(); }

LambdaMatrix deltastar_indicial() {
  LambdaMatrix m(4, 2);
  m.at(0, 0) = L();
  m.at(1, 1) = (L() + C(1)) * C(Rational(1, 2));
  m.at(2, 0) = C(1);
  return m;
}

LambdaMatrix deltaG_indicial(int n) {
  require_dim(n);
  LambdaMatrix m(2, 4);
  m.at(0, 0) = L() - C(2 * n);
  m.at(0, 2) = C(n) * (L() - C(2));
  m.at(1, 1) = C(2) * (L() - C(n + 1));
  return m;
}

LambdaMatrix wave_indicial(int n) {
  require_dim(n);
  LambdaMatrix m = LambdaMatrix::scalar(4, L() * (L() - C(n)));
  m.at(0, 0) += C(-2 * n);
  m.at(0, 2) += C(-2 * n);
  m.at(1, 1) += C(-(n + 3));
  m.at(2, 0) += C(-2);
  m.at(2, 2) += C(-2);
  m.at(3, 3) += C(-2);
  return m;
}

LambdaMatrix curvature_indicial(int n) {
  require_dim(n);
  LambdaMatrix m(4, 4);
  m.at(0, 0) = C(n);
  m.at(0, 2) = C(n);
  m.at(1, 1) = C(n + 1);
  m.at(2, 0) = C(1);
  m.at(2, 2) = C(1);
  m.at(3, 3) = C(n + 1);
  return m;
}

LambdaMatrix trace_reversal_indicial(int n) {
  require_dim(n);
  LambdaMatrix m(4, 4);
  m.at(0, 0) = C(Rational(1, 2));
  m.at(0, 2) = C(Rational(n, 2));
  m.at(1, 1) = C(1);
  m.at(2, 0) = C(Rational(1, 2));
  m.at(2, 2) = C(Rational(2 - n, 2));
  m.at(3, 3) = C(1);
  return m;
}

LambdaMatrix divergence_indicial(int n) {
  require_dim(n);
  LambdaMatrix m(2, 4);
  m.at(0, 0) = L() - C(n);
  m.at(0, 2) = C(-n);
  m.at(1, 1) = L() - C(n + 1);
  return m;
}

LambdaMatrix gauge_E_indicial(int n) {
  require_dim(n);
  LambdaMatrix m(2, 4);
  m.at(0, 0) = C(1);
  m.at(0, 2) = C(-2 * n);
  return m;
}

LambdaMatrix gauge_Etilde_indicial() {
  LambdaMatrix m(4, 2);
  m.at(0, 0) = C(-2);
  m.at(1, 1) = C(-2);
  return m;
}

LambdaMatrix modified_symgrad_indicial() {
  LambdaMatrix m = deltastar_indicial();
  m += gauge_Etilde_indicial();
  return m;
}

LambdaMatrix gauged_indicial(int n) {
  require_dim(n);
  LambdaMatrix m = LambdaMatrix::scalar(4, L() * (L() - C(n)));
  m.at(0, 0) += -C(4) * L() + C(2 * (n + 2));
  m.at(0, 2) += C(2 * n) * (L() - C(2));
  m.at(1, 1) += -C(4) * L() + C(3 * (n + 1));
  m.at(2, 0) += C(-2);
  m.at(2, 2) += C(2 * n);
  return m;
}

LambdaMatrix gauged_indicial_assembled(int n) {
  require_dim(n);
  // deltaG in natural normalization (deltaG_indicial is stored doubled).
  const LambdaMatrix deltaG = divergence_indicial(n) * trace_reversal_indicial(n);
  LambdaMatrix m = wave_indicial(n);
  m -= LambdaMatrix::scalar(4, C(2 * n));  // -2 Lambda with Lambda = n
  m += (gauge_Etilde_indicial() * deltaG).scaled(2);
  m += curvature_indicial(n).scaled(2);
  m -= (modified_symgrad_indicial() * gauge_E_indicial(n)).scaled(2);
  return m;
}

LambdaMatrix gauge_propagation_indicial(int n) {
  require_dim(n);
  LambdaMatrix m(2, 2);
  m.at(0, 0) = (L() - C(2)) * (L() - C(n)) * C(Rational(-1, 2));
  m.at(1, 1) = (L() + C(1)) * (L() - C(n + 1)) * C(Rational(-1, 2));
  return m;
}

namespace {

std::vector<std::int64_t> divisors_of(std::int64_t v) {
  std::vector<std::int64_t> out;
  v = v < 0 ? -v : v;
  if (v == 0) return out;
  for (std::int64_t d = 1; d * d <= v; ++d) {
    if (v % d == 0) {
      out.push_back(d);
      if (d != v / d) out.push_back(v / d);
    }
  }
  return out;
}

/// Rational-root candidates of a polynomial, by the integer-coefficient
/// rational root theorem after clearing denominators; sorted by magnitude so
/// the small roots occurring here are found before any overflow-prone probe.
std::vector<Rational> root_candidates(const LambdaPoly& p) {
  std::int64_t lcm = 1;
  for (const Rational& c : p.coeffs()) lcm = std::lcm(lcm, c.den());
  const Rational scale(lcm);
  const std::int64_t c0 = (p.coeff(0) * scale).num();
  const std::int64_t clead = (p.coeff(p.degree()) * scale).num();

  std::vector<Rational> out;
  for (std::int64_t num : divisors_of(c0)) {
    for (std::int64_t den : divisors_of(clead)) {
      out.emplace_back(num, den);
      out.emplace_back(-num, den);
    }
  }
  std::sort(out.begin(), out.end(), [](const Rational& a, const Rational& b) {
    const double da = std::abs(a.to_double());
    const double db = std::abs(b.to_double());
    return da != db ? da < db : a < b;
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

std::vector<Rational> rational_roots_with_multiplicity(const LambdaPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("rational roots of the zero polynomial");
  LambdaPoly work = p;
  std::vector<Rational> roots;

  while (work.degree() >= 1 && work.coeff(0).is_zero()) {
    roots.emplace_back(0);
    work = work.deflate(Rational(0));
  }

  bool progress = true;
  while (work.degree() >= 1 && progress) {
    progress = false;
    for (const Rational& cand : root_candidates(work)) {
      bool is_root = false;
      try {
        is_root = work.eval(cand).is_zero();
      } catch (const std::overflow_error&) {
        continue;  // astronomically nonzero value; certainly not a root
      }
      if (is_root) {
        roots.push_back(cand);
        work = work.deflate(cand);
        progress = true;
        break;
      }
    }
  }
  if (work.degree() >= 1) {
    throw std::runtime_error("polynomial does not split over the rationals: " + work.str());
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::vector<Rational> indicial_roots(int n) {
  require_dim(n);
  return rational_roots_with_multiplicity(gauged_indicial(n).determinant());
}

}  // namespace fgx
