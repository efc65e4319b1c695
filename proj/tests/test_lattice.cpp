#include <gtest/gtest.h>

#include <random>

#include "smplab/error.hpp"
#include "smplab/lattice.hpp"
#include "test_util.hpp"

using namespace smplab;
using namespace smplab::testing;

namespace {

void expect_metric_matches_bfs(const Lattice& l) {
  const LatticeMetric metric(l);
  const auto dist = all_pairs_distances(cover_graph(l));
  const std::size_t n = l.size();
  for (Element x = 0; x < n; ++x) {
    for (Element y = 0; y < n; ++y) ASSERT_EQ(metric.distance(x, y), dist[x * n + y]) << x << "," << y;
  }
}

}  // namespace

TEST(Poset, RejectsInvalidCovers) {
  const std::vector<Cover> cycle{{0, 1}, {1, 0}};
  EXPECT_THROW(Poset::from_covers(2, cycle), InputError);
  const std::vector<Cover> implied{{0, 1}, {1, 2}, {0, 2}};
  EXPECT_THROW(Poset::from_covers(3, implied), InputError);
  const std::vector<Cover> range{{0, 3}};
  EXPECT_THROW(Poset::from_covers(3, range), InputError);
}

TEST(Poset, TransitiveReduction) {
  const std::vector<Cover> rel{{0, 1}, {1, 2}, {0, 2}, {0, 3}};
  const auto p = transitive_reduction(4, rel);
  EXPECT_EQ(p.covers(), (std::vector<Cover>{{0, 1}, {0, 3}, {1, 2}}));
}

TEST(CoverGraph, Examples) {
  const auto two = cover_graph(Poset::chain(2));
  EXPECT_EQ(two.edge_count(), 1u);
  const auto b2 = cover_graph(boolean_lattice(2));
  EXPECT_TRUE(isomorphic(b2, cycle_graph(4)));
  EXPECT_EQ(cover_graph(Poset::antichain(3)).edge_count(), 0u);
}

TEST(BuildLattice, Chain) {
  const auto l = chain_lattice(3);
  for (Element x = 0; x < 3; ++x) {
    EXPECT_EQ(l.rank(x), x);
    for (Element y = 0; y < 3; ++y) {
      EXPECT_EQ(l.meet(x, y), std::min(x, y));
      EXPECT_EQ(l.join(x, y), std::max(x, y));
    }
  }
}

TEST(BuildLattice, RejectsNonLattices) {
  EXPECT_THROW(build_lattice(Poset::antichain(2)), ConstructionError);
  // Bowtie: two minimal elements under two maximal ones, plus a bottom and top.
  const std::vector<Cover> bowtie{{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 5}, {4, 5}};
  try {
    build_lattice(Poset::from_covers(6, bowtie));
    FAIL() << "bowtie accepted";
  } catch (const ConstructionError& e) {
    EXPECT_NE(std::string(e.what()).find("pair"), std::string::npos);
  }
}

TEST(BuildLattice, RenumbersAlongLinearExtension) {
  // Top given as element 0, bottom as element 2.
  const std::vector<Cover> covers{{2, 1}, {1, 0}};
  const auto l = build_lattice(Poset::from_covers(3, covers));
  EXPECT_EQ(l.original_id(l.bottom()), 2u);
  EXPECT_EQ(l.original_id(l.top()), 0u);
}

TEST(BuildLattice, AgreesWithDownsetTables) {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 20; ++t) {
    const auto d = downset_lattice(random_poset(7, 0.3, rng));
    const auto l = build_lattice(d.lattice.poset());
    ASSERT_EQ(l.size(), d.lattice.size());
    for (Element x = 0; x < l.size(); ++x) {
      for (Element y = 0; y < l.size(); ++y) {
        EXPECT_EQ(l.original_id(l.meet(x, y)), d.lattice.meet(l.original_id(x), l.original_id(y)));
        EXPECT_EQ(l.original_id(l.join(x, y)), d.lattice.join(l.original_id(x), l.original_id(y)));
      }
    }
  }
}

TEST(DownsetLattice, Examples) {
  const auto b3 = downset_lattice(Poset::antichain(3));
  EXPECT_EQ(b3.lattice.size(), 8u);
  EXPECT_EQ(b3.lattice.poset().covers().size(), 12u);
  EXPECT_EQ(downset_lattice(Poset::chain(4)).lattice.size(), 5u);
  const std::vector<Cover> ab{{0, 1}};
  const auto six = downset_lattice(Poset::from_covers(3, ab));
  EXPECT_EQ(six.lattice.size(), 6u);
  std::set<std::uint32_t> ideals(six.ideal.begin(), six.ideal.end());
  EXPECT_EQ(ideals, (std::set<std::uint32_t>{0b000, 0b001, 0b100, 0b101, 0b011, 0b111}));
}

TEST(DownsetLattice, MeetJoinAreIntersectionUnion) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 20; ++t) {
    const auto d = downset_lattice(random_poset(8, 0.25, rng));
    for (Element x = 0; x < d.lattice.size(); ++x) {
      for (Element y = 0; y < d.lattice.size(); ++y) {
        EXPECT_EQ(d.ideal[d.lattice.meet(x, y)], d.ideal[x] & d.ideal[y]);
        EXPECT_EQ(d.ideal[d.lattice.join(x, y)], d.ideal[x] | d.ideal[y]);
      }
    }
  }
}

TEST(DownsetLattice, Caps) {
  EXPECT_THROW(downset_lattice(Poset::antichain(15)), CapacityError);
  EXPECT_THROW(downset_lattice(Poset::antichain(13), {.max_poset = 14, .max_elements = 1000}),
               CapacityError);
}

TEST(Classify, Examples) {
  EXPECT_EQ(classify(boolean_lattice(3)), LatticeClass::Distributive);
  EXPECT_EQ(classify(diamond_lattice(3)), LatticeClass::ModularNotDistributive);
  EXPECT_EQ(classify(pentagon_lattice()), LatticeClass::Neither);
  EXPECT_EQ(classify(chain_lattice(5)), LatticeClass::Distributive);
  EXPECT_EQ(classify(diamond_lattice(4)), LatticeClass::ModularNotDistributive);
}

TEST(Classify, BirkhoffRouteAgreesWithTripleScan) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 10; ++t) {
    const auto l = downset_lattice(random_poset(6, 0.3, rng)).lattice;
    EXPECT_EQ(classify(l, 0), LatticeClass::Distributive);
  }
  EXPECT_EQ(classify(diamond_lattice(3), 0), LatticeClass::ModularNotDistributive);
}

TEST(Birkhoff, Examples) {
  const auto b4 = boolean_lattice(4);
  const auto rep = birkhoff(b4);
  EXPECT_EQ(rep.irreducibles.size(), 4u);
  EXPECT_TRUE(rep.irreducible_poset.covers().empty());
  EXPECT_EQ(rep.element_of.size(), 16u);

  const auto chain = birkhoff(chain_lattice(5));
  EXPECT_EQ(chain.irreducibles.size(), 4u);
  EXPECT_EQ(chain.irreducible_poset.covers().size(), 3u);

  const std::vector<std::size_t> lengths{3, 2};
  const auto grid = birkhoff(chain_product_lattice(lengths));
  EXPECT_EQ(grid.irreducibles.size(), 3u);
  EXPECT_EQ(grid.irreducible_poset.covers().size(), 1u);

  EXPECT_THROW(birkhoff(diamond_lattice(3)), PreconditionError);
  EXPECT_THROW(birkhoff(pentagon_lattice()), PreconditionError);
}

TEST(Birkhoff, IrreduciblesMatchDefinition) {
  std::mt19937_64 rng(4);
  int checked = 0;
  for (int t = 0; t < 60; ++t) {
    const auto d = downset_lattice(random_poset(4, 0.4, rng));
    if (d.lattice.size() > 10) continue;
    EXPECT_EQ(join_irreducibles(d.lattice), join_irreducibles_by_definition(d.lattice));
    ++checked;
  }
  EXPECT_GT(checked, 10);
  EXPECT_EQ(join_irreducibles(diamond_lattice(3)), join_irreducibles_by_definition(diamond_lattice(3)));
  EXPECT_EQ(join_irreducibles(pentagon_lattice()), join_irreducibles_by_definition(pentagon_lattice()));
}

TEST(Birkhoff, RoundTrip) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 40; ++t) {
    const auto l = downset_lattice(random_poset(9, 0.25, rng)).lattice;
    const auto rep = birkhoff(l);
    EXPECT_EQ(rep.irreducibles.size(), 9u);
    const auto back = downset_lattice(rep.irreducible_poset);
    EXPECT_TRUE(birkhoff_round_trip(l, rep, back));
  }
}

TEST(LatticeDistance, Examples) {
  const auto b5 = boolean_lattice(5);
  const auto d = downset_lattice(Poset::antichain(5));
  for (Element x = 0; x < 32; ++x) {
    EXPECT_EQ(lattice_distance(b5, x, x), 0u);
    for (Element y = 0; y < 32; ++y) {
      EXPECT_EQ(lattice_distance(b5, x, y), static_cast<std::uint32_t>(std::popcount(d.ideal[x] ^ d.ideal[y])));
    }
  }
  EXPECT_THROW(LatticeMetric{pentagon_lattice()}, PreconditionError);
}

TEST(LatticeDistance, MatchesBfs) {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 30; ++t) expect_metric_matches_bfs(downset_lattice(random_poset(8, 0.2, rng)).lattice);
  expect_metric_matches_bfs(diamond_lattice(3));
  expect_metric_matches_bfs(diamond_lattice(5));
  const std::vector<std::size_t> lengths{3, 4, 2};
  expect_metric_matches_bfs(chain_product_lattice(lengths));
}

TEST(LatticeRank, ModularLatticesRanked) {
  for (const auto& l : {diamond_lattice(3), boolean_lattice(3), chain_lattice(4)}) {
    ASSERT_TRUE(l.ranked());
    EXPECT_EQ(l.rank(l.bottom()), 0u);
    for (const auto& [x, y] : l.poset().covers()) EXPECT_EQ(l.rank(x) + 1, l.rank(y));
  }
  EXPECT_FALSE(pentagon_lattice().ranked());
}
