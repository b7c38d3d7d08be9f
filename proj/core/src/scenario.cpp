#include "rcpoly/scenario.hpp"

#include <sstream>

#include "rcpoly/error.hpp"

namespace rcpoly {

Scenario::Scenario(std::vector<int> inputs, std::vector<int> outputs)
    : inputs_(std::move(inputs)), outputs_(std::move(outputs)) {
  if (inputs_.empty()) throw BoundsError("scenario needs at least one party");
  if (inputs_.size() != outputs_.size()) {
    throw BoundsError("scenario has " + std::to_string(inputs_.size()) + " input and " +
                      std::to_string(outputs_.size()) + " output cardinalities");
  }
  input_count_ = 1;
  output_count_ = 1;
  for (std::size_t i = 0; i < inputs_.size(); ++i) {
    if (inputs_[i] < 1 || outputs_[i] < 1) {
      throw BoundsError("party " + std::to_string(i) + " has a non-positive cardinality");
    }
    input_count_ *= static_cast<std::size_t>(inputs_[i]);
    output_count_ *= static_cast<std::size_t>(outputs_[i]);
  }
}

Scenario Scenario::uniform(int parties, int inputs, int outputs) {
  if (parties < 1) throw BoundsError("scenario needs at least one party");
  return Scenario(std::vector<int>(parties, inputs), std::vector<int>(parties, outputs));
}

namespace {

std::size_t mixed_rank(std::span<const int> digits, const std::vector<int>& radices,
                       const char* what) {
  if (digits.size() != radices.size()) {
    throw BoundsError(std::string(what) + " tuple has " + std::to_string(digits.size()) +
                      " entries, expected " + std::to_string(radices.size()));
  }
  std::size_t r = 0;
  for (std::size_t i = 0; i < radices.size(); ++i) {
    if (digits[i] < 0 || digits[i] >= radices[i]) {
      throw BoundsError(std::string(what) + " of party " + std::to_string(i) + " is " +
                        std::to_string(digits[i]) + ", must lie in [0," +
                        std::to_string(radices[i]) + ")");
    }
    r = r * static_cast<std::size_t>(radices[i]) + static_cast<std::size_t>(digits[i]);
  }
  return r;
}

Tuple mixed_digits(std::size_t rank, const std::vector<int>& radices) {
  Tuple t(radices.size());
  for (std::size_t i = radices.size(); i-- > 0;) {
    t[i] = static_cast<int>(rank % static_cast<std::size_t>(radices[i]));
    rank /= static_cast<std::size_t>(radices[i]);
  }
  return t;
}

}  // namespace

std::size_t Scenario::input_rank(std::span<const int> x) const { return mixed_rank(x, inputs_, "input"); }

std::size_t Scenario::output_rank(std::span<const int> a) const { return mixed_rank(a, outputs_, "output"); }

Tuple Scenario::input_tuple(std::size_t rank) const {
  if (rank >= input_count_) throw BoundsError("input rank " + std::to_string(rank) + " out of range");
  return mixed_digits(rank, inputs_);
}

Tuple Scenario::output_tuple(std::size_t rank) const {
  if (rank >= output_count_) throw BoundsError("output rank " + std::to_string(rank) + " out of range");
  return mixed_digits(rank, outputs_);
}

std::size_t Scenario::flatten(std::span<const int> x, std::span<const int> a) const {
  return input_rank(x) * output_count_ + output_rank(a);
}

std::pair<Tuple, Tuple> Scenario::unflatten(std::size_t index) const {
  if (index >= vector_length()) throw BoundsError("flat index " + std::to_string(index) + " out of range");
  return {input_tuple(index / output_count_), output_tuple(index % output_count_)};
}

std::string Scenario::describe() const {
  std::ostringstream os;
  bool uniform = true;
  for (std::size_t i = 1; i < inputs_.size(); ++i) {
    uniform = uniform && inputs_[i] == inputs_[0] && outputs_[i] == outputs_[0];
  }
  if (uniform) {
    os << '(' << parties() << ',' << inputs_[0] << ',' << outputs_[0] << ')';
    return os.str();
  }
  os << '(' << parties() << ';';
  for (std::size_t i = 0; i < inputs_.size(); ++i) os << (i ? "," : "") << inputs_[i];
  os << ';';
  for (std::size_t i = 0; i < outputs_.size(); ++i) os << (i ? "," : "") << outputs_[i];
  os << ')';
  return os.str();
}

namespace {

std::string describe_tuple(const Tuple& t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
  return s + ")";
}

void check_normalized(const Scenario& scenario, const std::vector<Rational>& entries) {
  const std::size_t k = scenario.output_count();
  for (std::size_t xr = 0; xr < scenario.input_count(); ++xr) {
    Rational sum = 0;
    std::size_t support = 0;
    for (std::size_t ar = 0; ar < k; ++ar) {
      const Rational& v = entries[xr * k + ar];
      sum += v;
      if (sgn(v) != 0) ++support;
    }
    if (sum != 1) {
      throw NormalizationError("outputs for input " + describe_tuple(scenario.input_tuple(xr)) +
                               " sum to " + to_string(sum) + " over " + std::to_string(support) +
                               " nonzero entries");
    }
  }
}

}  // namespace

BoxVector make_box_from_predicate(const Scenario& scenario, const Rational& weight,
                                  const BoxPredicate& predicate) {
  return make_box_from_weights(scenario, [&](std::span<const int> x, std::span<const int> a) {
    return predicate(x, a) ? weight : Rational(0);
  });
}

BoxVector make_box_from_weights(const Scenario& scenario, const BoxWeights& weights) {
  BoxVector box{scenario, std::vector<Rational>(scenario.vector_length())};
  for (std::size_t i = 0; i < box.entries.size(); ++i) {
    auto [x, a] = scenario.unflatten(i);
    box.entries[i] = weights(x, a);
  }
  check_normalized(scenario, box.entries);
  return box;
}

BoxVector uniform_box(const Scenario& scenario) {
  Rational w(1, static_cast<unsigned long>(scenario.output_count()));
  w.canonicalize();
  return BoxVector{scenario, std::vector<Rational>(scenario.vector_length(), w)};
}

std::vector<BoxViolation> validate_box(const BoxVector& box) {
  std::vector<BoxViolation> out;
  const Scenario& s = box.scenario;
  if (box.entries.size() != s.vector_length()) {
    out.push_back({BoxViolation::Kind::size, box.entries.size(),
                   "box has " + std::to_string(box.entries.size()) + " entries, scenario needs " +
                       std::to_string(s.vector_length())});
    return out;
  }
  for (std::size_t i = 0; i < box.entries.size(); ++i) {
    const Rational& v = box.entries[i];
    if (sgn(v) < 0 || v > 1) {
      out.push_back({BoxViolation::Kind::range, i,
                     "entry " + std::to_string(i) + " = " + to_string(v) + " outside [0,1]"});
    }
  }
  const std::size_t k = s.output_count();
  for (std::size_t xr = 0; xr < s.input_count(); ++xr) {
    Rational sum = 0;
    for (std::size_t ar = 0; ar < k; ++ar) sum += box.entries[xr * k + ar];
    if (sum != 1) {
      out.push_back({BoxViolation::Kind::normalization, xr,
                     "outputs for input " + describe_tuple(s.input_tuple(xr)) + " sum to " +
                         to_string(sum)});
    }
  }
  return out;
}

Rational evaluate(std::span<const Rational> coefficients, std::span<const Rational> entries) {
  if (coefficients.size() != entries.size()) {
    throw BoundsError("functional has " + std::to_string(coefficients.size()) +
                      " coefficients for a box of " + std::to_string(entries.size()) + " entries");
  }
  Rational sum = 0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (sgn(coefficients[i]) != 0 && sgn(entries[i]) != 0) sum += coefficients[i] * entries[i];
  }
  return sum;
}

}  // namespace rcpoly
