#include "fgx/phg_series.hpp"

#include <cmath>
#include <stdexcept>

namespace fgx {

PhgSeries::PhgSeries(int truncation, ChartPtr chart, int rank, IndexKind kind)
    : truncation_(truncation), chart_(std::move(chart)), rank_(rank), kind_(kind) {
  if (!chart_) throw std::invalid_argument("PhgSeries: null chart");
  if (truncation_ < 0) throw std::invalid_argument("PhgSeries: negative truncation");
}

PhgSeries PhgSeries::from_order_zero(int truncation, const SpatialField& f) {
  PhgSeries s(truncation, f.chart(), f.rank(), f.kind());
  s.add_term(0, 0, f);
  return s;
}

const SpatialField* PhgSeries::term(int i, int m) const {
  const auto it = terms_.find(PhgKey{i, m});
  return it == terms_.end() ? nullptr : &it->second;
}

SpatialField PhgSeries::term_or_zero(int i, int m) const {
  if (const SpatialField* f = term(i, m)) return *f;
  return SpatialField::zeros(chart_, rank_, kind_);
}

void PhgSeries::add_term(int i, int m, const SpatialField& f, double scale) {
  if (i < 0 || m < 0) throw std::invalid_argument("PhgSeries: negative grading");
  if (i > truncation_) return;
  if (!f.chart()->same_as(*chart_) || f.rank() != rank_ || f.kind() != kind_) {
    throw std::invalid_argument("PhgSeries: coefficient shape mismatch");
  }
  auto [it, inserted] = terms_.try_emplace(PhgKey{i, m}, chart_, rank_, kind_);
  SpatialField& dst = it->second;
  const std::size_t size = dst.raw().size();
  for (std::size_t p = 0; p < size; ++p) dst.raw()[p] += scale * f.raw()[p];
}

void PhgSeries::normalize(double drop_tol) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->second.sup_norm() <= drop_tol) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
}

int PhgSeries::max_order() const {
  int out = -1;
  for (const auto& [key, f] : terms_) out = std::max(out, key.i);
  return out;
}

int PhgSeries::max_log_at(int i) const {
  int out = -1;
  for (const auto& [key, f] : terms_) {
    if (key.i == i) out = std::max(out, key.m);
  }
  return out;
}

double PhgSeries::sup_norm() const {
  double out = 0.0;
  for (const auto& [key, f] : terms_) out = std::max(out, f.sup_norm());
  return out;
}

double PhgSeries::order_sup_norm(int i) const {
  double out = 0.0;
  for (const auto& [key, f] : terms_) {
    if (key.i == i) out = std::max(out, f.sup_norm());
  }
  return out;
}

bool PhgSeries::compatible(const PhgSeries& o) const {
  return chart_ && o.chart_ && chart_->same_as(*o.chart_) && rank_ == o.rank_ && kind_ == o.kind_;
}

PhgSeries& PhgSeries::operator+=(const PhgSeries& o) {
  if (!compatible(o)) throw std::invalid_argument("PhgSeries: chart/rank mismatch in +=");
  truncation_ = std::min(truncation_, o.truncation_);
  for (auto it = terms_.begin(); it != terms_.end();) {
    it = it->first.i > truncation_ ? terms_.erase(it) : std::next(it);
  }
  for (const auto& [key, f] : o.terms_) add_term(key.i, key.m, f);
  return *this;
}

PhgSeries& PhgSeries::operator-=(const PhgSeries& o) { return *this += -o; }

PhgSeries PhgSeries::operator-() const {
  PhgSeries out = *this;
  for (auto& [key, f] : out.terms_) f *= -1.0;
  return out;
}

PhgSeries PhgSeries::scaled(double c) const {
  PhgSeries out = *this;
  for (auto& [key, f] : out.terms_) f *= c;
  return out;
}

PhgSeries PhgSeries::s_dds() const {
  PhgSeries out(truncation_, chart_, rank_, kind_);
  for (const auto& [key, f] : terms_) {
    if (key.i != 0) out.add_term(key.i, key.m, f, static_cast<double>(key.i));
    if (key.m != 0) out.add_term(key.i, key.m - 1, f, static_cast<double>(key.m));
  }
  return out;
}

PhgSeries PhgSeries::shifted(int shift) const {
  PhgSeries out(truncation_, chart_, rank_, kind_);
  for (const auto& [key, f] : terms_) {
    if (key.i + shift >= 0) out.add_term(key.i + shift, key.m, f);
  }
  return out;
}

PhgSeries PhgSeries::with_truncation(int truncation) const {
  PhgSeries out(truncation, chart_, rank_, kind_);
  for (const auto& [key, f] : terms_) out.add_term(key.i, key.m, f);
  return out;
}

SpatialField PhgSeries::evaluate_at(double s) const {
  if (!(s > 0.0) || !(s < 1.0)) throw std::invalid_argument("PhgSeries: evaluation needs 0 < s < 1");
  SpatialField out(chart_, rank_, kind_);
  const double logs = std::log(s);
  for (const auto& [key, f] : terms_) {
    const double w = std::pow(s, key.i) * std::pow(logs, key.m);
    const std::size_t size = out.raw().size();
    for (std::size_t p = 0; p < size; ++p) out.raw()[p] += w * f.raw()[p];
  }
  return out;
}

PhgSeries series_combine(const PhgSeries& a, const PhgSeries& b, int rank, IndexKind kind,
                         const std::function<SpatialField(const SpatialField&, const SpatialField&)>& combine) {
  PhgSeries out(std::min(a.truncation(), b.truncation()), a.chart(), rank, kind);
  for (const auto& [ka, fa] : a.terms()) {
    if (ka.i > out.truncation()) continue;
    for (const auto& [kb, fb] : b.terms()) {
      if (ka.i + kb.i > out.truncation()) continue;
      out.add_term(ka.i + kb.i, ka.m + kb.m, combine(fa, fb));
    }
  }
  return out;
}

PhgSeries mul(const PhgSeries& a, const PhgSeries& b) {
  const PhgSeries& scalar = a.rank() == 0 ? a : b;
  const PhgSeries& tensor = a.rank() == 0 ? b : a;
  if (scalar.rank() != 0) throw std::invalid_argument("mul: one factor must be scalar");
  if (!scalar.chart()->same_as(*tensor.chart())) throw std::invalid_argument("mul: chart mismatch");
  return series_combine(scalar, tensor, tensor.rank(), tensor.kind(),
                        [](const SpatialField& s, const SpatialField& t) {
                          SpatialField out = t;
                          const double* sv = s.comp(0);
                          const std::size_t nodes = t.num_nodes();
                          for (std::size_t c = 0; c < t.num_components(); ++c) {
                            double* o = out.comp(c);
                            for (std::size_t p = 0; p < nodes; ++p) o[p] *= sv[p];
                          }
                          return out;
                        });
}

}  // namespace fgx
