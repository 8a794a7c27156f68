#pragma once

#include <cstddef>
#include <vector>

#include "noisysort/rng.hpp"

namespace noisysort {

// Comparator energy. lambda > 1 favours ascending order, lambda = 1 is a fair
// coin, lambda < 1 favours descending order. Alternatively parameterized by a
// noise level nu > 0 via lambda = exp(1/nu).
class Energy {
 public:
  static Energy from_lambda(double lambda);
  static Energy from_noise(double noise);

  double lambda() const { return lambda_; }
  double log_lambda() const { return log_lambda_; }

 private:
  explicit Energy(double lambda, double log_lambda)
      : lambda_(lambda), log_lambda_(log_lambda) {}
  double lambda_;
  double log_lambda_;
};

// A concrete arrangement of elements. Elements are finite doubles; -0.0 is
// normalized to +0.0 so that value equality and representation equality agree.
class Sequence {
 public:
  explicit Sequence(std::vector<double> elems);

  std::size_t size() const { return elems_.size(); }
  double operator[](std::size_t i) const { return elems_[i]; }
  const std::vector<double>& values() const { return elems_; }

  bool operator==(const Sequence& other) const { return elems_ == other.elems_; }
  bool is_sorted() const;  // non-decreasing
  Sequence with_swapped(std::size_t i, std::size_t j) const;

 private:
  std::vector<double> elems_;
};

// Lexicographic order on element values; total because NaN is excluded.
bool lex_less(const Sequence& a, const Sequence& b);

// Probability that a proposed swap of the ordered pair (a, b) is accepted,
// i.e. the comparator declares a > b when a precedes b:
//   lambda^(a-b) / (lambda^(a-b) + lambda^(b-a)) = 1 / (1 + lambda^(2(b-a))).
// Computed as a stable logistic; swap_probability(a,b,e) + swap_probability(b,a,e) = 1.
double swap_probability(double a, double b, const Energy& e);

// Total weighted disorder: sum over pairs i<j with s_i > s_j of (s_i - s_j).
double weighted_inversion(const Sequence& s);

// Same quantity through the displacement identity
//   w(s) = sum_i (sorted(s)_i - s_i) * i   (positions 1-based).
double displacement_inversion(const Sequence& s);

// Ascending rearrangement.
Sequence sorted_of(const Sequence& s);

// One noisy comparison: true means "swap" was drawn for the ordered pair (a, b).
bool sample_comparison(double a, double b, const Energy& e, Rng& rng);

}  // namespace noisysort
