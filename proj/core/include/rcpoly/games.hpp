#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rcpoly/rational.hpp"
#include "rcpoly/scenario.hpp"
#include "rcpoly/spacetime.hpp"

namespace rcpoly {

/// A linear functional over the box-vector space of one scenario.
struct GameFunctional {
  std::string name;
  Scenario scenario;
  std::vector<Rational> coefficients;
  std::optional<Rational> classical_bound;
  std::optional<Rational> ns_bound;
  std::optional<Rational> rc_bound;

  Rational value(std::span<const Rational> box) const;
};

/// A +-1 valued observable: party `party` measures input `input` and reports
/// (-1)^popcount(output & mask). mask 1 is the usual binary-outcome sign.
struct Observable {
  int party = 0;
  int input = 0;
  unsigned mask = 1;
};

/// coefficient * < prod factors >
struct CorrelatorTerm {
  Rational coefficient;
  std::vector<Observable> factors;
};

struct CorrelatorExpression {
  std::string name;
  std::vector<CorrelatorTerm> terms;
};

enum class MarginalPolicy {
  /// Fail with CompilationError unless each term's marginal is well-defined.
  strict,
  /// Evaluate every term with unmeasured parties at input 0, whatever the structure.
  pinned,
  /// Evaluate every term with the unmeasured parties' inputs averaged uniformly.
  /// Agrees with the other policies wherever the marginal is well-defined.
  averaged,
};

/// Expands <prod O> = sum_a sign(a) P(a | x) where measured parties use their
/// observable's input and unmeasured parties sit at input 0 with outputs summed.
/// Under `strict`, each term's measured party set must have a well-defined
/// marginal under `structure`.
GameFunctional compile(const CorrelatorExpression& expression, const Scenario& scenario,
                       const SignalingStructure& structure,
                       MarginalPolicy policy = MarginalPolicy::strict);

/// Compiles without a structure check (pinned inputs for unmeasured parties).
GameFunctional compile(const CorrelatorExpression& expression, const Scenario& scenario);

/// Guess your neighbour's input, (3,2,2): 1/4 on the four winning entries under
/// the promise x+y+z = 0 mod 2.
GameFunctional gyni();

/// Game with allies, (3,2,2): 1/8 on every entry with xy + yz = a + c mod 2.
GameFunctional gwa();

/// GHZ game, (3,2,2): promise x+y+z = 0 mod 2, win iff a+b+c = x OR y OR z (mod 2);
/// each of the four promised inputs weighted 1/4.
GameFunctional ghz();

/// A_0 B_0 + A_0 B_1 + A_1 B_0 - A_1 B_1 with A = party i, B = party j.
CorrelatorExpression chsh_pair(int i, int j);

/// sum_k (-1)^k (A_k B_k C_k + A_k B_k C_k' + A_k B_k' C_k - A_k B_k' C_k'), k' = 1 - k.
CorrelatorExpression svetlichny(int i, int j, int k);

/// B_1 A_1 + B_2 A_1 + B_2 A_2 + B_3 A_2 + B_3 A_3 - B_1 A_3 (inputs 0..2).
CorrelatorExpression chain3(int b, int a);

/// Registry used by the CLI: "gyni", "gwa", "ghz", "chsh" (2,2,2), "svetlichny" (3,2,2).
GameFunctional game_by_name(std::string_view name);
std::vector<std::string> game_names();

/// Maximum over deterministic local strategies, by exhaustive enumeration of
/// prod_i k_i^{m_i} strategies split across `threads` workers.
Rational classical_value(const GameFunctional& game, unsigned threads = 1);

/// PR box on (2,2,2): 1/2 where a + b = xy mod 2.
BoxVector pr_box();

/// The RC box winning GYNI with probability 1/2: 1/2 where b+c = y and a+b = x (mod 2).
BoxVector gyni_box();

/// The RC box winning GWA with certainty: 1/2 where a+b = xy and b+c = zy (mod 2).
BoxVector gwa_box();

/// Representatives of the extremal classes listed for the (3,2,2) RC polytope,
/// numbered 1..6. Throws BoundsError for other numbers.
BoxVector extremal_class_box(int number);

/// permutations[x][y] is a permutation of {0..d-1}; the box on (3, m, d) is 1/d
/// where a = pi_xy(b) and c = pi_zy(b). Throws ConfigurationError for malformed
/// tables.
BoxVector unique_game_box(const std::vector<std::vector<std::vector<int>>>& permutations, int d);

/// The bipartite unique game on (2, m, d): 1/m^2 on a = pi_xy(b).
GameFunctional unique_game(const std::vector<std::vector<std::vector<int>>>& permutations, int d);

/// CHSH written as a unique game: pi_xy(b) = b + xy mod 2.
std::vector<std::vector<std::vector<int>>> chsh_permutations();

struct LocalTerm {
  Rational weight;
  std::vector<int> strategy;  // a = strategy[x]
  int b = 0;
};

/// Decomposition of a bipartite box whose second party has a single input into
/// deterministic terms: weight(b0, f) = Q(b0) prod_x Q(f(x) | x, b0). Terms with
/// zero weight are omitted.
std::vector<LocalTerm> local_decomposition(const BoxVector& q);

/// Tripartite extension P(a,b,c|x,y,z) = sum_{(b0,f)} p^(y) d(b,b0) d(a,f(x)) d(c,f(z))
/// of a bipartite no-signaling box Q, using the decomposition of Q( . | . ,y) for
/// each input y of the middle party. Throws ConfigurationError when Q signals.
BoxVector symmetric_extension(const BoxVector& q);

}  // namespace rcpoly
