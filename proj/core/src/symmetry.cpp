#include "rcpoly/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "rcpoly/error.hpp"

namespace rcpoly {

namespace {

std::vector<std::vector<int>> all_permutations(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

std::size_t factorial(int n) {
  std::size_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::size_t>(i);
  return f;
}

bool preserves(const std::vector<int>& rho, const SignalingStructure& s) {
  for (const auto& r : s.relations()) {
    PartySet image = 0;
    for (int q = 0; q < s.parties(); ++q) {
      if (r.targets & party_bit(q)) image |= party_bit(rho[q]);
    }
    if (!s.allows(rho[r.from], image)) return false;
  }
  return true;
}

std::vector<std::uint32_t> image_of(const Relabeling& g, const Scenario& s) {
  const int n = s.parties();
  std::vector<std::uint32_t> image(s.vector_length());
  Tuple x2(n), a2(n);
  for (std::size_t j = 0; j < image.size(); ++j) {
    auto [x, a] = s.unflatten(j);
    for (int i = 0; i < n; ++i) {
      x2[g.party_map[i]] = g.input_maps[i][x[i]];
      a2[g.party_map[i]] = g.output_maps[i][x[i]][a[i]];
    }
    image[j] = static_cast<std::uint32_t>(s.flatten(x2, a2));
  }
  return image;
}

}  // namespace

SymmetryGroup::SymmetryGroup(Scenario scenario, std::vector<Relabeling> elements)
    : scenario_(std::move(scenario)), elements_(std::move(elements)) {
  const std::size_t len = scenario_.vector_length();
  images_.resize(elements_.size() * len);
  sources_.resize(elements_.size() * len);
  for (std::size_t g = 0; g < elements_.size(); ++g) {
    auto img = image_of(elements_[g], scenario_);
    for (std::size_t j = 0; j < len; ++j) {
      images_[g * len + j] = img[j];
      sources_[g * len + img[j]] = static_cast<std::uint32_t>(j);
    }
  }
}

SymmetryGroup make_group(const Scenario& scenario, const SignalingStructure& structure,
                         bool input_dependent_outputs) {
  const int n = scenario.parties();
  if (structure.parties() != n) throw ConfigurationError("structure and scenario disagree on the party count");

  std::vector<std::vector<int>> rhos;
  for (auto& rho : all_permutations(n)) {
    bool ok = preserves(rho, structure);
    for (int i = 0; i < n && ok; ++i) {
      ok = scenario.inputs()[rho[i]] == scenario.inputs()[i] && scenario.outputs()[rho[i]] == scenario.outputs()[i];
    }
    if (ok) rhos.push_back(rho);
  }

  double order = static_cast<double>(rhos.size());
  for (int i = 0; i < n; ++i) {
    const int m = scenario.inputs()[i];
    const int k = scenario.outputs()[i];
    order *= static_cast<double>(factorial(m));
    order *= input_dependent_outputs ? std::pow(static_cast<double>(factorial(k)), m) : static_cast<double>(factorial(k));
  }
  if (order > 1e7) {
    throw ConfigurationError("symmetry group of order " + std::to_string(static_cast<long long>(order)) +
                             " is too large to list explicitly");
  }

  // Local relabelings of one party: (input permutation, output permutation per input).
  using Local = std::pair<std::vector<int>, std::vector<std::vector<int>>>;
  std::vector<std::vector<Local>> locals(n);
  for (int i = 0; i < n; ++i) {
    const int m = scenario.inputs()[i];
    const auto outs = all_permutations(scenario.outputs()[i]);
    for (const auto& pi : all_permutations(m)) {
      if (!input_dependent_outputs) {
        for (const auto& sigma : outs) locals[i].push_back({pi, std::vector<std::vector<int>>(m, sigma)});
        continue;
      }
      std::vector<std::size_t> idx(m, 0);
      while (true) {
        std::vector<std::vector<int>> sig(m);
        for (int x = 0; x < m; ++x) sig[x] = outs[idx[x]];
        locals[i].push_back({pi, std::move(sig)});
        int x = m - 1;
        while (x >= 0 && ++idx[x] == outs.size()) idx[x--] = 0;
        if (x < 0) break;
      }
    }
  }

  std::vector<Relabeling> elements;
  elements.reserve(static_cast<std::size_t>(order));
  for (const auto& rho : rhos) {
    std::vector<std::size_t> idx(n, 0);
    while (true) {
      Relabeling g;
      g.party_map = rho;
      for (int i = 0; i < n; ++i) {
        g.input_maps.push_back(locals[i][idx[i]].first);
        g.output_maps.push_back(locals[i][idx[i]].second);
      }
      elements.push_back(std::move(g));
      int i = n - 1;
      while (i >= 0 && ++idx[i] == locals[i].size()) idx[i--] = 0;
      if (i < 0) break;
    }
  }
  return SymmetryGroup(scenario, std::move(elements));
}

std::vector<Relabeling> group_elements(const Scenario& scenario, const SignalingStructure& structure) {
  return make_group(scenario, structure).elements();
}

std::vector<Rational> apply(const Relabeling& relabeling, const Scenario& scenario, std::span<const Rational> box) {
  if (box.size() != scenario.vector_length()) throw BoundsError("box length does not match the scenario");
  auto image = image_of(relabeling, scenario);
  std::vector<Rational> out(box.size());
  for (std::size_t j = 0; j < box.size(); ++j) out[image[j]] = box[j];
  return out;
}

std::vector<Rational> apply(const SymmetryGroup& group, std::size_t element, std::span<const Rational> box) {
  if (box.size() != group.scenario().vector_length()) throw BoundsError("box length does not match the scenario");
  auto src = group.source(element);
  std::vector<Rational> out(box.size());
  for (std::size_t j = 0; j < box.size(); ++j) out[j] = box[src[j]];
  return out;
}

namespace {

// Lex-min image; each candidate is compared lazily and abandoned at the first
// entry where it exceeds the best image so far.
template <class T>
std::vector<T> lex_min_image(std::span<const T> box, const SymmetryGroup& group) {
  const std::size_t len = box.size();
  if (len != group.scenario().vector_length()) throw BoundsError("box length does not match the group's scenario");
  std::vector<T> best(box.begin(), box.end());
  for (std::size_t g = 0; g < group.order(); ++g) {
    auto src = group.source(g);
    std::size_t j = 0;
    while (j < len && box[src[j]] == best[j]) ++j;
    if (j == len || box[src[j]] > best[j]) continue;
    for (; j < len; ++j) best[j] = box[src[j]];
  }
  return best;
}

}  // namespace

std::vector<Rational> canonical_form(std::span<const Rational> box, const SymmetryGroup& group) {
  return lex_min_image(box, group);
}

std::vector<std::int32_t> canonical_form(std::span<const std::int32_t> box, const SymmetryGroup& group) {
  return lex_min_image(box, group);
}

VertexSet::Census EquivalenceClasses::class_census() const {
  VertexSet::Census c;
  for (const auto& k : classes) {
    if (k.tag == VertexTag::CL) ++c.cl;
    else if (k.tag == VertexTag::NS) ++c.ns;
    else ++c.rc;
  }
  return c;
}

EquivalenceClasses classify(const VertexSet& vertices, const SymmetryGroup& group, unsigned threads) {
  if (!(vertices.scenario() == group.scenario())) throw ConfigurationError("vertex set and group use different scenarios");
  // Key: canonical numerators followed by the denominator (images share it).
  using Key = std::vector<std::int64_t>;
  struct Entry {
    std::size_t count = 0;
    VertexTag tag = VertexTag::RC;
    bool mixed = false;
  };
  const std::size_t total = vertices.size();
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(total, 1))));
  std::vector<std::map<Key, Entry>> partial(threads);
  auto work = [&](unsigned t) {
    for (std::size_t i = t; i < total; i += threads) {
      auto canon = canonical_form(vertices.numerators(i), group);
      Key key(canon.begin(), canon.end());
      key.push_back(vertices.denominator(i));
      auto [it, fresh] = partial[t].try_emplace(std::move(key));
      if (fresh) it->second.tag = vertices.tag(i);
      it->second.mixed = it->second.mixed || it->second.tag != vertices.tag(i);
      ++it->second.count;
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  std::map<Key, Entry> merged;
  for (auto& part : partial) {
    for (auto& [k, e] : part) {
      auto [it, fresh] = merged.try_emplace(k, e);
      if (!fresh) {
        it->second.mixed = it->second.mixed || e.mixed || it->second.tag != e.tag;
        it->second.count += e.count;
      }
    }
  }

  EquivalenceClasses out;
  for (const auto& [key, e] : merged) {
    if (e.mixed) throw ConfigurationError("an equivalence class mixes vertex tags");
    EquivalenceClass c;
    const std::int64_t den = key.back();
    for (std::size_t j = 0; j + 1 < key.size(); ++j) {
      Rational r(static_cast<long>(key[j]), static_cast<unsigned long>(den));
      r.canonicalize();
      c.canonical.push_back(std::move(r));
    }
    c.orbit_size = e.count;
    c.tag = e.tag;
    out.classes.push_back(std::move(c));
  }
  std::sort(out.classes.begin(), out.classes.end(), [](const EquivalenceClass& a, const EquivalenceClass& b) {
    if (a.tag != b.tag) return a.tag < b.tag;
    if (a.orbit_size != b.orbit_size) return a.orbit_size < b.orbit_size;
    return a.canonical < b.canonical;
  });
  return out;
}

std::string class_report_json(const EquivalenceClasses& classes) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& c : classes.classes) {
    out.push_back({{"canonical", to_strings(c.canonical)}, {"orbit_size", c.orbit_size}, {"tag", to_string(c.tag)}});
  }
  return out.dump(1);
}

std::string class_report_table(const EquivalenceClasses& classes) {
  std::ostringstream os;
  os << "class  tag  orbit  nonzero entries (value x count)\n";
  std::size_t number = 0;
  for (const auto& c : classes.classes) {
    std::map<Rational, std::size_t> values;
    for (const auto& v : c.canonical) {
      if (sgn(v) != 0) ++values[v];
    }
    os << ++number << "  " << to_string(c.tag) << "  " << c.orbit_size << " ";
    for (const auto& [v, k] : values) os << ' ' << v.get_str() << 'x' << k;
    os << '\n';
  }
  return os.str();
}

}  // namespace rcpoly
