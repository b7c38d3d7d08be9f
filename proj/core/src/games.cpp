#include "rcpoly/games.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <bit>
#include <thread>

#include "rcpoly/constraints.hpp"
#include "rcpoly/error.hpp"

namespace rcpoly {

Rational GameFunctional::value(std::span<const Rational> box) const { return evaluate(coefficients, box); }

// ------------------------------------------------------------- correlators

namespace {

GameFunctional compile_impl(const CorrelatorExpression& expression, const Scenario& scenario,
                            const SignalingStructure* structure, bool average) {
  const int n = scenario.parties();
  const PartySet all = (PartySet{1} << n) - 1;
  GameFunctional g{expression.name, scenario, std::vector<Rational>(scenario.vector_length()), {}, {}, {}};
  const std::size_t k = scenario.output_count();
  Tuple x(n);
  for (const auto& term : expression.terms) {
    PartySet measured = 0;
    std::fill(x.begin(), x.end(), 0);
    std::vector<unsigned> mask(n, 0);
    for (const auto& o : term.factors) {
      if (o.party < 0 || o.party >= n) throw BoundsError("observable names party " + std::to_string(o.party));
      if (measured & party_bit(o.party)) {
        throw CompilationError("party " + party_name(o.party) + " appears twice in one correlator of " + expression.name);
      }
      if (o.input < 0 || o.input >= scenario.inputs()[o.party]) {
        throw BoundsError("observable input " + std::to_string(o.input) + " out of range for party " + party_name(o.party));
      }
      measured |= party_bit(o.party);
      x[o.party] = o.input;
      mask[o.party] = o.mask;
    }
    if (structure && measured != all && measured != 0 && !structure->marginal_well_defined(measured)) {
      throw CompilationError(expression.name + ": marginal on " + describe_party_set(measured) +
                             " depends on other inputs under " + structure->describe());
    }
    // Joint inputs the term is read at: measured parties fixed, the others at 0
    // or, when averaging, over all their inputs with equal weight.
    std::vector<Tuple> settings{x};
    if (average) {
      for (int p = 0; p < n; ++p) {
        if (measured & party_bit(p)) continue;
        std::vector<Tuple> next;
        for (const auto& t : settings) {
          for (int v = 0; v < scenario.inputs()[p]; ++v) {
            next.push_back(t);
            next.back()[p] = v;
          }
        }
        settings = std::move(next);
      }
    }
    Rational weight = term.coefficient / static_cast<long>(settings.size());
    for (const auto& setting : settings) {
      const std::size_t base = scenario.input_rank(setting) * k;
      for (std::size_t ar = 0; ar < k; ++ar) {
        Tuple a = scenario.output_tuple(ar);
        int parity = 0;
        for (int i = 0; i < n; ++i) parity += std::popcount(static_cast<unsigned>(a[i]) & mask[i]);
        if (parity % 2) {
          g.coefficients[base + ar] -= weight;
        } else {
          g.coefficients[base + ar] += weight;
        }
      }
    }
  }
  return g;
}

CorrelatorTerm term(int sign, std::vector<Observable> factors) { return {Rational(sign), std::move(factors)}; }

}  // namespace

GameFunctional compile(const CorrelatorExpression& expression, const Scenario& scenario,
                       const SignalingStructure& structure, MarginalPolicy policy) {
  if (structure.parties() != scenario.parties()) throw ConfigurationError("structure and scenario disagree on the party count");
  return compile_impl(expression, scenario, policy == MarginalPolicy::strict ? &structure : nullptr,
                      policy == MarginalPolicy::averaged);
}

GameFunctional compile(const CorrelatorExpression& expression, const Scenario& scenario) {
  return compile_impl(expression, scenario, nullptr, false);
}

CorrelatorExpression chsh_pair(int i, int j) {
  CorrelatorExpression e{"CHSH_" + party_name(i) + party_name(j), {}};
  e.terms.push_back(term(1, {{i, 0}, {j, 0}}));
  e.terms.push_back(term(1, {{i, 0}, {j, 1}}));
  e.terms.push_back(term(1, {{i, 1}, {j, 0}}));
  e.terms.push_back(term(-1, {{i, 1}, {j, 1}}));
  return e;
}

CorrelatorExpression svetlichny(int i, int j, int k) {
  CorrelatorExpression e{"Sve_" + party_name(i) + party_name(j) + party_name(k), {}};
  for (int s = 0; s < 2; ++s) {
    const int sign = s == 0 ? 1 : -1;
    const int t = 1 - s;
    e.terms.push_back(term(sign, {{i, s}, {j, s}, {k, s}}));
    e.terms.push_back(term(sign, {{i, s}, {j, s}, {k, t}}));
    e.terms.push_back(term(sign, {{i, s}, {j, t}, {k, s}}));
    e.terms.push_back(term(-sign, {{i, s}, {j, t}, {k, t}}));
  }
  return e;
}

CorrelatorExpression chain3(int b, int a) {
  CorrelatorExpression e{"Ch3_" + party_name(b) + party_name(a), {}};
  e.terms.push_back(term(1, {{b, 0}, {a, 0}}));
  e.terms.push_back(term(1, {{b, 1}, {a, 0}}));
  e.terms.push_back(term(1, {{b, 1}, {a, 1}}));
  e.terms.push_back(term(1, {{b, 2}, {a, 1}}));
  e.terms.push_back(term(1, {{b, 2}, {a, 2}}));
  e.terms.push_back(term(-1, {{b, 0}, {a, 2}}));
  return e;
}

// ------------------------------------------------------------------- games

namespace {

const Scenario& s322() {
  static const Scenario s = Scenario::uniform(3, 2, 2);
  return s;
}

GameFunctional predicate_game(std::string name, const Rational& weight,
                              const std::function<bool(const Tuple&, const Tuple&)>& wins) {
  GameFunctional g{std::move(name), s322(), std::vector<Rational>(s322().vector_length()), {}, {}, {}};
  for (std::size_t i = 0; i < g.coefficients.size(); ++i) {
    auto [x, a] = s322().unflatten(i);
    if (wins(x, a)) g.coefficients[i] = weight;
  }
  return g;
}

}  // namespace

GameFunctional gyni() {
  // Under the promise each party must output its right neighbour's input.
  return predicate_game("gyni", Rational(1, 4), [](const Tuple& x, const Tuple& a) {
    return (x[0] ^ x[1] ^ x[2]) == 0 && a[0] == x[1] && a[1] == x[2] && a[2] == x[0];
  });
}

GameFunctional gwa() {
  return predicate_game("gwa", Rational(1, 8), [](const Tuple& x, const Tuple& a) {
    return ((x[0] & x[1]) ^ (x[1] & x[2])) == (a[0] ^ a[2]);
  });
}

GameFunctional ghz() {
  return predicate_game("ghz", Rational(1, 4), [](const Tuple& x, const Tuple& a) {
    return (x[0] ^ x[1] ^ x[2]) == 0 && (a[0] ^ a[1] ^ a[2]) == (x[0] | x[1] | x[2]);
  });
}

GameFunctional game_by_name(std::string_view name) {
  if (name == "gyni") return gyni();
  if (name == "gwa") return gwa();
  if (name == "ghz") return ghz();
  if (name == "chsh") return compile(chsh_pair(0, 1), Scenario::uniform(2, 2, 2));
  if (name == "chsh-ab") return compile(chsh_pair(0, 1), s322());
  if (name == "chsh-bc") return compile(chsh_pair(1, 2), s322());
  if (name == "svetlichny") return compile(svetlichny(0, 1, 2), s322());
  throw ConfigurationError("unknown game '" + std::string(name) + "'");
}

std::vector<std::string> game_names() { return {"gyni", "gwa", "ghz", "chsh", "chsh-ab", "chsh-bc", "svetlichny"}; }

Rational classical_value(const GameFunctional& game, unsigned threads) {
  const Scenario& s = game.scenario;
  const int n = s.parties();
  if (game.coefficients.size() != s.vector_length()) throw BoundsError("functional length does not match its scenario");

  // Strategies per party: k_i^{m_i}, digit x of a strategy index is the output on input x.
  std::vector<std::size_t> per_party(n);
  double total_d = 1;
  for (int i = 0; i < n; ++i) {
    double c = std::pow(static_cast<double>(s.outputs()[i]), s.inputs()[i]);
    total_d *= c;
    per_party[i] = static_cast<std::size_t>(c);
  }
  if (total_d > 1e9) throw ConfigurationError("too many deterministic strategies to enumerate");
  const std::size_t total = static_cast<std::size_t>(total_d);

  // Scale to integers when the common denominator allows it.
  BigInt l = 1;
  for (const auto& c : game.coefficients) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  std::vector<std::int64_t> scaled(game.coefficients.size());
  for (std::size_t j = 0; j < scaled.size(); ++j) {
    BigInt v = game.coefficients[j].get_num() * (l / game.coefficients[j].get_den());
    if (!v.fits_slong_p() || abs(v) > (BigInt(1) << 40)) throw OverflowError("functional coefficients too large for enumeration");
    scaled[j] = v.get_si();
  }

  const std::size_t k = s.output_count();
  auto score = [&](std::size_t code, Tuple& a) {
    std::vector<std::size_t> strat(n);
    for (int i = n - 1; i >= 0; --i) {
      strat[i] = code % per_party[i];
      code /= per_party[i];
    }
    std::int64_t sum = 0;
    for (std::size_t xr = 0; xr < s.input_count(); ++xr) {
      Tuple x = s.input_tuple(xr);
      for (int i = 0; i < n; ++i) {
        std::size_t st = strat[i];
        for (int d = 0; d < x[i]; ++d) st /= static_cast<std::size_t>(s.outputs()[i]);
        a[i] = static_cast<int>(st % static_cast<std::size_t>(s.outputs()[i]));
      }
      sum += scaled[xr * k + s.output_rank(a)];
    }
    return sum;
  };

  threads = std::max(1u, threads);
  std::vector<std::int64_t> best(threads, INT64_MIN);
  auto work = [&](unsigned t) {
    Tuple a(n);
    for (std::size_t code = t; code < total; code += threads) best[t] = std::max(best[t], score(code, a));
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  Rational v(BigInt(static_cast<long>(*std::max_element(best.begin(), best.end()))), l);
  v.canonicalize();
  return v;
}

// ------------------------------------------------------------------- boxes

BoxVector pr_box() {
  return make_box_from_predicate(Scenario::uniform(2, 2, 2), Rational(1, 2), [](std::span<const int> x, std::span<const int> a) {
    return (a[0] ^ a[1]) == (x[0] & x[1]);
  });
}

BoxVector gyni_box() {
  return make_box_from_predicate(s322(), Rational(1, 2), [](std::span<const int> x, std::span<const int> a) {
    return (a[1] ^ a[2]) == x[1] && (a[0] ^ a[1]) == x[0];
  });
}

BoxVector gwa_box() {
  return make_box_from_predicate(s322(), Rational(1, 2), [](std::span<const int> x, std::span<const int> a) {
    return (a[0] ^ a[1]) == (x[0] & x[1]) && (a[1] ^ a[2]) == (x[2] & x[1]);
  });
}

BoxVector extremal_class_box(int number) {
  using P = std::span<const int>;
  switch (number) {
    case 1:
      return make_box_from_predicate(s322(), Rational(1), [](P, P o) { return (o[0] & o[1] & o[2]) == 1; });
    case 2:
      // Two weights: 1/3 on the first condition, 2/3 on the second.
      return make_box_from_weights(s322(), [](P i, P o) {
        const int x = i[0], y = i[1], z = i[2], a = o[0], b = o[1], c = o[2];
        int first = ((1 ^ x) & y & (c ^ z)) ^ (b & (c ^ z ^ (x & z))) ^ (a & (b ^ c ^ (b & c) ^ (y & z)));
        int second = a & b & c & (1 ^ x) & y & z;
        Rational w(first + 2 * second, 3);
        w.canonicalize();
        return w;
      });
    case 3:
      return make_box_from_predicate(s322(), Rational(1, 2), [](P i, P o) {
        return (o[0] & (o[1] ^ o[2] ^ (i[1] & i[2]))) == 1;
      });
    case 4:
      return make_box_from_predicate(s322(), Rational(1, 2), [](P i, P o) {
        return (o[1] & (o[0] ^ o[2] ^ (i[0] & i[2]))) == 1;
      });
    case 5:
      return make_box_from_predicate(s322(), Rational(1, 3), [](P i, P o) {
        const int x = i[0], y = i[1], z = i[2], a = o[0], b = o[1], c = o[2];
        return ((a & (b ^ c ^ (b & c))) ^ (c & x & y) ^ (b & (c ^ z ^ (x & z)))) == 1;
      });
    case 6:
      return make_box_from_predicate(s322(), Rational(1, 3), [](P i, P o) {
        const int x = i[0], y = i[1], z = i[2], a = o[0], b = o[1], c = o[2];
        return ((c & (b ^ y ^ (x & y))) ^ (a & (b ^ c ^ (b & c) ^ z ^ (y & z)))) == 1;
      });
    default:
      throw BoundsError("extremal classes are numbered 1 to 6, got " + std::to_string(number));
  }
}

namespace {

void check_permutation_table(const std::vector<std::vector<std::vector<int>>>& perms, int d) {
  const std::size_t m = perms.size();
  if (m == 0 || d < 1) throw ConfigurationError("unique game needs at least one input and one output");
  for (const auto& row : perms) {
    if (row.size() != m) throw ConfigurationError("permutation table must be square in the inputs");
    for (const auto& p : row) {
      std::vector<int> sorted = p;
      std::sort(sorted.begin(), sorted.end());
      for (int v = 0; v < d; ++v) {
        if (sorted.size() != static_cast<std::size_t>(d) || sorted[v] != v) {
          throw ConfigurationError("unique-game table entry is not a permutation of 0.." + std::to_string(d - 1));
        }
      }
    }
  }
}

}  // namespace

BoxVector unique_game_box(const std::vector<std::vector<std::vector<int>>>& permutations, int d) {
  check_permutation_table(permutations, d);
  const int m = static_cast<int>(permutations.size());
  return make_box_from_predicate(Scenario::uniform(3, m, d), Rational(1, d), [&](std::span<const int> x, std::span<const int> a) {
    return a[0] == permutations[x[0]][x[1]][a[1]] && a[2] == permutations[x[2]][x[1]][a[1]];
  });
}

GameFunctional unique_game(const std::vector<std::vector<std::vector<int>>>& permutations, int d) {
  check_permutation_table(permutations, d);
  const int m = static_cast<int>(permutations.size());
  Scenario s = Scenario::uniform(2, m, d);
  GameFunctional g{"unique-game", s, std::vector<Rational>(s.vector_length()), {}, {}, {}};
  Rational w(1, m * m);
  w.canonicalize();
  for (std::size_t i = 0; i < g.coefficients.size(); ++i) {
    auto [x, a] = s.unflatten(i);
    if (a[0] == permutations[x[0]][x[1]][a[1]]) g.coefficients[i] = w;
  }
  return g;
}

std::vector<std::vector<std::vector<int>>> chsh_permutations() {
  std::vector<std::vector<std::vector<int>>> t(2, std::vector<std::vector<int>>(2));
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) t[x][y] = (x & y) ? std::vector<int>{1, 0} : std::vector<int>{0, 1};
  }
  return t;
}

// ------------------------------------------------------ symmetric extension

std::vector<LocalTerm> local_decomposition(const BoxVector& q) {
  const Scenario& s = q.scenario;
  if (s.parties() != 2 || s.inputs()[1] != 1) {
    throw ConfigurationError("local decomposition needs a bipartite box whose second party has one input");
  }
  const int m = s.inputs()[0], ka = s.outputs()[0], kb = s.outputs()[1];
  std::size_t strategies = 1;
  for (int x = 0; x < m; ++x) strategies *= static_cast<std::size_t>(ka);

  std::vector<LocalTerm> out;
  for (int b = 0; b < kb; ++b) {
    Rational qb = 0;
    for (int a = 0; a < ka; ++a) qb += q.at(std::vector<int>{0, 0}, std::vector<int>{a, b});
    if (sgn(qb) == 0) continue;
    for (std::size_t code = 0; code < strategies; ++code) {
      std::vector<int> f(m);
      std::size_t c = code;
      for (int x = m - 1; x >= 0; --x) {
        f[x] = static_cast<int>(c % static_cast<std::size_t>(ka));
        c /= static_cast<std::size_t>(ka);
      }
      Rational w = qb;
      for (int x = 0; x < m && sgn(w) != 0; ++x) w *= q.at(std::vector<int>{x, 0}, std::vector<int>{f[x], b}) / qb;
      if (sgn(w) != 0) out.push_back({w, std::move(f), b});
    }
  }
  return out;
}

BoxVector symmetric_extension(const BoxVector& q) {
  const Scenario& s = q.scenario;
  if (s.parties() != 2) throw ConfigurationError("symmetric extension needs a bipartite box");
  if (!ns_rows(s).satisfied_by(q.entries)) throw ConfigurationError("symmetric extension needs a no-signaling box");
  const int ma = s.inputs()[0], mb = s.inputs()[1], ka = s.outputs()[0], kb = s.outputs()[1];
  const Scenario slice({ma, 1}, {ka, kb});
  const Scenario out_s({ma, mb, ma}, {ka, kb, ka});
  BoxVector p{out_s, std::vector<Rational>(out_s.vector_length())};
  for (int y = 0; y < mb; ++y) {
    BoxVector qy{slice, std::vector<Rational>(slice.vector_length())};
    for (int x = 0; x < ma; ++x) {
      for (int a = 0; a < ka; ++a) {
        for (int b = 0; b < kb; ++b) {
          qy.entries[slice.flatten(std::vector<int>{x, 0}, std::vector<int>{a, b})] =
              q.at(std::vector<int>{x, y}, std::vector<int>{a, b});
        }
      }
    }
    for (const auto& t : local_decomposition(qy)) {
      for (int x = 0; x < ma; ++x) {
        for (int z = 0; z < ma; ++z) {
          p.entries[out_s.flatten(std::vector<int>{x, y, z}, std::vector<int>{t.strategy[x], t.b, t.strategy[z]})] += t.weight;
        }
      }
    }
  }
  return p;
}

}  // namespace rcpoly
