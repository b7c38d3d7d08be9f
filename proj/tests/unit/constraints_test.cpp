#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>

#include "oracle.hpp"
#include "rcpoly/constraints.hpp"
#include "rcpoly/error.hpp"
#include "rcpoly/linalg.hpp"

using namespace rcpoly;

namespace {

const Scenario s322 = Scenario::uniform(3, 2, 2);

// Rows "sum over `summed` outputs of P(a|x) equals the same sum at x'", for every
// pair of joint inputs that differ only in `varied` parties. Written without any
// anchoring so that it shares nothing with marginal_rows.
ConstraintSystem pairwise_rows(const Scenario& s, std::vector<int> summed, std::vector<int> varied) {
  ConstraintSystem sys(s);
  const int n = s.parties();
  for (std::size_t x1 = 0; x1 < s.input_count(); ++x1) {
    for (std::size_t x2 = x1 + 1; x2 < s.input_count(); ++x2) {
      auto t1 = s.input_tuple(x1), t2 = s.input_tuple(x2);
      bool ok = true;
      for (int p = 0; p < n; ++p) {
        bool v = std::find(varied.begin(), varied.end(), p) != varied.end();
        if (!v && t1[p] != t2[p]) ok = false;
      }
      if (!ok) continue;
      for (std::size_t ar = 0; ar < s.output_count(); ++ar) {
        auto a = s.output_tuple(ar);
        bool first = true;
        for (int p : summed) first = first && a[p] == 0;
        if (!first) continue;
        ConstraintRow row;
        for (std::size_t br = 0; br < s.output_count(); ++br) {
          auto b = s.output_tuple(br);
          bool same = true;
          for (int p = 0; p < n; ++p) {
            bool is_summed = std::find(summed.begin(), summed.end(), p) != summed.end();
            if (!is_summed && b[p] != a[p]) same = false;
          }
          if (!same) continue;
          row.terms.emplace_back(s.flatten(t1, b), Rational(1));
          row.terms.emplace_back(s.flatten(t2, b), Rational(-1));
        }
        std::sort(row.terms.begin(), row.terms.end());
        sys.add_row(std::move(row));
      }
    }
  }
  return sys;
}

bool same_row_space(const ConstraintSystem& a, const ConstraintSystem& b) {
  ConstraintSystem both = a;
  both.append(b);
  const auto ra = oracle::dense_rank(a), rb = oracle::dense_rank(b);
  return ra == rb && oracle::dense_rank(both) == ra;
}

}  // namespace

TEST(Constraints, NormalizationRowCounts) {
  EXPECT_EQ(normalization_rows(s322).size(), 8u);
  EXPECT_EQ(normalization_rows(Scenario::uniform(2, 2, 2)).size(), 4u);
  EXPECT_EQ(normalization_rows(Scenario::uniform(3, 3, 2)).size(), 27u);
}

TEST(Constraints, Fig1Counts) {
  auto rc = rc_rows(s322, structure_preset("fig1"));
  EXPECT_EQ(rc.size(), 76u);
  EXPECT_EQ(rank(rc), 34u);
  EXPECT_EQ(dimension(rc), 30u);
  EXPECT_EQ(rank(ns_rows(s322)), 38u);
  EXPECT_EQ(dimension(ns_rows(s322)), 26u);
  EXPECT_EQ(rank(normalization_rows(s322)), 8u);
  EXPECT_EQ(dimension(ns_rows(Scenario::uniform(2, 2, 2))), 8u);
}

// The fig1 system spans the same space as the four constraint families written
// directly: BC marginal free of x, AB free of z, A free of (y,z), C free of (x,y).
TEST(Constraints, Fig1MatchesDirectFamilies) {
  ConstraintSystem direct = normalization_rows(s322);
  direct.append(pairwise_rows(s322, {0}, {0}));
  direct.append(pairwise_rows(s322, {2}, {2}));
  direct.append(pairwise_rows(s322, {1, 2}, {1, 2}));
  direct.append(pairwise_rows(s322, {0, 1}, {0, 1}));
  EXPECT_TRUE(same_row_space(direct, rc_rows(s322, structure_preset("fig1"))));
}

TEST(Constraints, EmptyStructureIsNoSignaling) {
  for (auto s : {Scenario::uniform(2, 2, 2), s322, Scenario({2, 3, 2}, {2, 2, 3})}) {
    ConstraintSystem direct = normalization_rows(s);
    const int n = s.parties();
    for (PartySet sub = 1; sub + 1 < (PartySet{1} << n); ++sub) {
      std::vector<int> summed;
      for (int p = 0; p < n; ++p) {
        if (!(sub & party_bit(p))) summed.push_back(p);
      }
      direct.append(pairwise_rows(s, summed, summed));
    }
    EXPECT_TRUE(same_row_space(direct, rc_rows(s, SignalingStructure(n)))) << s.describe();
  }
}

TEST(Constraints, MaximalSignalingKeepsOnlySingleParties) {
  ConstraintSystem direct = normalization_rows(s322);
  for (int p = 0; p < 3; ++p) direct.append(marginal_rows(s322, party_bit(p)));
  EXPECT_TRUE(same_row_space(direct, rc_rows(s322, structure_preset("max3"))));
}

TEST(Constraints, SinglePartyScenarioHasOnlyNormalization) {
  auto s = Scenario::uniform(1, 3, 2);
  EXPECT_EQ(ns_rows(s).size(), normalization_rows(s).size());
}

TEST(Constraints, ClosedFormAgreesWithRank) {
  EXPECT_EQ(closed_form_dimension(2, 2), 30);
  EXPECT_EQ(closed_form_dimension(2, 3), 140);
  for (int n = 1; n <= 5; ++n) EXPECT_EQ(closed_form_dimension(1, n), n * n * n - 1);
  for (int m = 1; m <= 3; ++m) {
    for (int n = 1; n <= 3; ++n) {
      auto sys = rc_rows(Scenario::uniform(3, m, n), structure_preset("fig1"));
      EXPECT_EQ(static_cast<std::int64_t>(dimension(sys)), closed_form_dimension(m, n)) << m << "," << n;
    }
  }
}

TEST(Constraints, RowsAreSignNormalizedAndUnique) {
  ConstraintSystem sys(Scenario::uniform(2, 2, 2));
  ConstraintRow r;
  r.terms = {{0, Rational(-1)}, {3, Rational(2)}};
  EXPECT_TRUE(sys.add_row(r));
  ConstraintRow neg;
  neg.terms = {{0, Rational(1)}, {3, Rational(-2)}};
  EXPECT_FALSE(sys.add_row(neg));
  EXPECT_EQ(sys.rows()[0].terms[0].second, 1);
  ConstraintRow bad;
  bad.terms = {{99, Rational(1)}};
  EXPECT_THROW(sys.add_row(bad), BoundsError);
}

TEST(Constraints, IneOutput) {
  auto text = to_ine(ns_rows(Scenario::uniform(2, 2, 2)));
  EXPECT_NE(text.find("H-representation"), std::string::npos);
  EXPECT_NE(text.find("linearity"), std::string::npos);
  EXPECT_NE(text.find("rational"), std::string::npos);
  EXPECT_NE(text.find("end"), std::string::npos);
}

// Fraction-free echelon rank agrees with dense rational elimination.
TEST(ConstraintsProperty, RankMatchesDenseOracle) {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> val(-3, 3), len(1, 12), col(0, 15);
  for (int trial = 0; trial < 200; ++trial) {
    ConstraintSystem sys(Scenario::uniform(2, 2, 2));
    const int rows = len(rng);
    for (int i = 0; i < rows; ++i) {
      std::map<std::uint32_t, Rational> m;
      for (int k = 0; k < 4; ++k) {
        int v = val(rng);
        if (v != 0) m[col(rng)] = v;
      }
      ConstraintRow r;
      for (auto& [j, v] : m) r.terms.emplace_back(j, v);
      if (!r.terms.empty()) sys.add_row(std::move(r));
    }
    ASSERT_EQ(rank(sys), oracle::dense_rank(sys)) << trial;
  }
}

TEST(ConstraintsProperty, BareissMatchesEchelon) {
  std::mt19937 rng(23);
  std::uniform_int_distribution<int> val(-2, 2), dim(1, 9);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t r = dim(rng), c = dim(rng);
    std::vector<std::int64_t> e(r * c);
    linalg::IntegerEchelon ech;
    for (std::size_t i = 0; i < r; ++i) {
      std::vector<std::pair<std::uint32_t, Rational>> row;
      for (std::size_t j = 0; j < c; ++j) {
        e[i * c + j] = val(rng) * (trial % 3 == 0 ? 1 : val(rng));
        if (e[i * c + j] != 0) row.emplace_back(j, Rational(static_cast<long>(e[i * c + j])));
      }
      ech.insert(linalg::to_integer_row(row));
    }
    ASSERT_EQ(linalg::bareiss_rank(e, r, c), ech.rank()) << trial;
  }
}
