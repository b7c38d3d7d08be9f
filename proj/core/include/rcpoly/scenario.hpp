#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "rcpoly/rational.hpp"

namespace rcpoly {

using Tuple = std::vector<int>;

/// A Bell scenario: per-party input (m_i) and output (k_i) cardinalities.
///
/// Boxes are flattened with inputs outermost and party 0 most significant:
///   index = rank(x; m_0..m_{n-1}) * prod(k) + rank(a; k_0..k_{n-1}).
/// Every module and file format in the library uses this order.
class Scenario {
 public:
  Scenario() = default;
  Scenario(std::vector<int> inputs, std::vector<int> outputs);

  /// n parties, each with m inputs and k outputs.
  static Scenario uniform(int parties, int inputs, int outputs);

  int parties() const { return static_cast<int>(inputs_.size()); }
  const std::vector<int>& inputs() const { return inputs_; }
  const std::vector<int>& outputs() const { return outputs_; }

  std::size_t input_count() const { return input_count_; }
  std::size_t output_count() const { return output_count_; }
  std::size_t vector_length() const { return input_count_ * output_count_; }

  std::size_t input_rank(std::span<const int> x) const;
  std::size_t output_rank(std::span<const int> a) const;
  Tuple input_tuple(std::size_t rank) const;
  Tuple output_tuple(std::size_t rank) const;

  std::size_t flatten(std::span<const int> x, std::span<const int> a) const;
  std::pair<Tuple, Tuple> unflatten(std::size_t index) const;

  /// e.g. "(3;2,2,2;2,2,2)" or "(3,2,2)" when homogeneous.
  std::string describe() const;

  friend bool operator==(const Scenario&, const Scenario&) = default;

 private:
  std::vector<int> inputs_;
  std::vector<int> outputs_;
  std::size_t input_count_ = 0;
  std::size_t output_count_ = 0;
};

/// Dense exact conditional-probability table P(a|x) in flat order.
struct BoxVector {
  Scenario scenario;
  std::vector<Rational> entries;

  const Rational& at(std::span<const int> x, std::span<const int> a) const {
    return entries[scenario.flatten(x, a)];
  }
};

using BoxPredicate = std::function<bool(std::span<const int> x, std::span<const int> a)>;
using BoxWeights = std::function<Rational(std::span<const int> x, std::span<const int> a)>;

/// Entry = weight where the predicate holds, 0 elsewhere. Throws NormalizationError
/// naming the first joint input whose row does not sum to one.
BoxVector make_box_from_predicate(const Scenario& scenario, const Rational& weight,
                                  const BoxPredicate& predicate);

/// Entry = weights(x, a); normalization is checked the same way.
BoxVector make_box_from_weights(const Scenario& scenario, const BoxWeights& weights);

BoxVector uniform_box(const Scenario& scenario);

struct BoxViolation {
  enum class Kind { size, range, normalization };
  Kind kind;
  std::size_t index = 0;  // entry index (range) or input rank (normalization)
  std::string message;
};

/// Empty iff every entry lies in [0,1] and every input row sums to one.
std::vector<BoxViolation> validate_box(const BoxVector& box);

/// Linear functional value sum_i coefficients[i] * entries[i].
Rational evaluate(std::span<const Rational> coefficients, std::span<const Rational> entries);

}  // namespace rcpoly
