#include "noisysort/seqcore.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace noisysort {

Energy Energy::from_lambda(double lambda) {
  if (!std::isfinite(lambda) || lambda <= 0.0) {
    throw std::domain_error("energy: lambda must be finite and > 0, got " +
                            std::to_string(lambda));
  }
  return Energy(lambda, std::log(lambda));
}

Energy Energy::from_noise(double noise) {
  if (!std::isfinite(noise) || noise <= 0.0) {
    throw std::domain_error("energy: noise must be finite and > 0, got " +
                            std::to_string(noise));
  }
  const double lambda = std::exp(1.0 / noise);
  if (!std::isfinite(lambda)) {
    throw std::domain_error("energy: noise " + std::to_string(noise) +
                            " overflows lambda = exp(1/noise)");
  }
  return Energy(lambda, 1.0 / noise);
}

Sequence::Sequence(std::vector<double> elems) : elems_(std::move(elems)) {
  if (elems_.empty()) throw std::domain_error("sequence: must be non-empty");
  for (double& v : elems_) {
    if (!std::isfinite(v)) throw std::domain_error("sequence: elements must be finite");
    if (v == 0.0) v = 0.0;  // collapse -0.0
  }
}

bool Sequence::is_sorted() const {
  return std::is_sorted(elems_.begin(), elems_.end());
}

Sequence Sequence::with_swapped(std::size_t i, std::size_t j) const {
  Sequence out = *this;
  std::swap(out.elems_[i], out.elems_[j]);
  return out;
}

bool lex_less(const Sequence& a, const Sequence& b) {
  return std::lexicographical_compare(a.values().begin(), a.values().end(),
                                      b.values().begin(), b.values().end());
}

double swap_probability(double a, double b, const Energy& e) {
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw std::domain_error("swap_probability: elements must be finite");
  }
  const double x = 2.0 * (b - a) * e.log_lambda();
  if (x >= 0.0) {
    const double u = std::exp(-x);
    return u / (1.0 + u);
  }
  return 1.0 / (1.0 + std::exp(x));
}

double weighted_inversion(const Sequence& s) {
  const auto& v = s.values();
  const std::size_t n = v.size();
  double w = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (v[i] > v[j]) w += v[i] - v[j];
    }
  }
  return w;
}

double displacement_inversion(const Sequence& s) {
  const auto& v = s.values();
  std::vector<double> sorted = v;
  std::sort(sorted.begin(), sorted.end());
  double w = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    w += (sorted[i] - v[i]) * static_cast<double>(i + 1);
  }
  return w;
}

Sequence sorted_of(const Sequence& s) {
  std::vector<double> v = s.values();
  std::sort(v.begin(), v.end());
  return Sequence(std::move(v));
}

bool sample_comparison(double a, double b, const Energy& e, Rng& rng) {
  return uniform_unit(rng) < swap_probability(a, b, e);
}

}  // namespace noisysort
