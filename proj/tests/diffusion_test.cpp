#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "dense_oracle.hpp"
#include "fixtures.hpp"
#include "tagdiff/dense_reference.hpp"
#include "tagdiff/diffusion.hpp"
#include "tagdiff/error.hpp"

namespace tagdiff {
namespace {

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

std::vector<double> values(const ResourceVector& v) {
  return {v.values().begin(), v.values().end()};
}

TEST(InitialVector, WorkedExampleAndG1) {
  const auto example = build_graph(testing::worked_example_records());
  EXPECT_EQ(values(initial_vector(example, UserId{0})), (std::vector<double>{1, 0, 1, 0, 1}));
  const auto g1 = build_graph(testing::g1_records());
  EXPECT_EQ(values(initial_vector(g1, UserId{0})), (std::vector<double>{1, 1, 0}));
}

TEST(UserItemDiffusion, WorkedExampleGolden) {
  const auto g = build_graph(testing::worked_example_records());
  const auto out = diffuse_user_item(g, initial_vector(g, UserId{0}));
  const std::vector<double> expected = {3.0 / 4, 5.0 / 12, 2.0 / 3, 5.0 / 12, 3.0 / 4};
  EXPECT_LE(max_abs_diff(out.resource.values(), expected), 1e-15);
  EXPECT_EQ(out.mass_lost, 0.0);
}

// The reference item-tag vector is (31/36, 1/2, 25/36, 11/36, 1/3), which sums
// to 97/36 although every item carries a tag, so the total must stay 3. The
// tag assignment that matches the other four entries gives 22/36 = 11/18 for
// the fourth item, restoring the total; 11/36 is taken to be a typo.
TEST(ItemTagDiffusion, WorkedExampleAgainstOracleAndReferenceVector) {
  const auto g = build_graph(testing::worked_example_records());
  const auto out = diffuse_item_tag(g, initial_vector(g, UserId{0}));
  const std::vector<double> oracle = {31.0 / 36, 1.0 / 2, 25.0 / 36, 11.0 / 18, 1.0 / 3};
  EXPECT_LE(max_abs_diff(out.resource.values(), oracle), 1e-15);
  EXPECT_NEAR(out.resource.sum(), 3.0, 1e-10);

  const std::vector<double> reference = {31.0 / 36, 1.0 / 2, 25.0 / 36, 11.0 / 36, 1.0 / 3};
  for (std::size_t j : {0u, 1u, 2u, 4u}) EXPECT_NEAR(out.resource[j], reference[j], 1e-15);
  EXPECT_NEAR(out.resource[3] - reference[3], 11.0 / 36, 1e-15);
}

TEST(Diffusion, G1Fixtures) {
  const auto g = build_graph(testing::g1_records());
  const auto f = initial_vector(g, UserId{0});
  const auto ui = diffuse_user_item(g, f).resource;
  const auto it = diffuse_item_tag(g, f).resource;
  // Frozen from the dense oracle (see OracleEquivalence) and hand arithmetic.
  EXPECT_LE(max_abs_diff(ui.values(), std::vector<double>{0.75, 1.0, 0.25}), 1e-15);
  EXPECT_LE(max_abs_diff(it.values(), std::vector<double>{0.5, 0.75, 0.75}), 1e-15);
  const auto mid = integrate(ui, it, BlendParameter(0.5));
  EXPECT_LE(max_abs_diff(mid.values(), std::vector<double>{0.625, 0.875, 0.5}), 1e-15);
  EXPECT_EQ(values(score_user(g, UserId{0}, BlendParameter(0.5))), values(mid));

  testing::DenseOracle oracle(2, 3, 2, {{0, 0}, {0, 1}, {1, 1}, {1, 2}},
                              {{0, 0}, {1, 0}, {1, 1}, {2, 0}, {2, 1}});
  const auto o_it = testing::DenseOracle::apply(oracle.item_tag, {1, 1, 0});
  for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(static_cast<double>(o_it[j]), it[j], 1e-15);
}

TEST(Diffusion, ZeroVectorStaysZero) {
  const auto g = build_graph(testing::worked_example_records());
  const ResourceVector zero(g.n_items());
  EXPECT_EQ(diffuse_user_item(g, zero).resource, zero);
  EXPECT_EQ(diffuse_item_tag(g, zero).resource, zero);
}

TEST(Diffusion, ContractErrors) {
  const auto g = build_graph(testing::g1_records());
  auto expect_kind = [](auto&& fn, ErrorKind kind) {
    try {
      fn();
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), kind);
    }
  };
  expect_kind([&] { diffuse_user_item(g, ResourceVector(2)); }, ErrorKind::kContract);
  expect_kind([&] { diffuse_item_tag(g, ResourceVector(4)); }, ErrorKind::kContract);
  expect_kind([&] { ResourceVector(std::vector<double>{1, -1, 0}); }, ErrorKind::kContract);
  expect_kind([&] { ResourceVector(std::vector<double>{1, INFINITY, 0}); }, ErrorKind::kContract);
  expect_kind([&] { integrate(ResourceVector(2), ResourceVector(3), BlendParameter(0.5)); },
              ErrorKind::kContract);
  expect_kind([&] { BlendParameter(1.5); }, ErrorKind::kConfig);
  expect_kind([&] { BlendParameter(-0.01); }, ErrorKind::kConfig);
}

TEST(Diffusion, ZeroTagItemLosesMass) {
  const RecordSet records = {{"a", "x", {"t"}}, {"a", "bare", {}}, {"b", "x", {"t"}}};
  const auto g = build_graph(records);
  const auto out = diffuse_item_tag(g, initial_vector(g, UserId{0}));
  EXPECT_DOUBLE_EQ(out.mass_lost, 1.0);
  EXPECT_DOUBLE_EQ(out.resource.sum(), 1.0);
}

TEST(Diffusion, LambdaEndpointsAreExact) {
  const auto g = build_graph(testing::worked_example_records());
  for (Index u = 0; u < g.n_users(); ++u) {
    const auto f = initial_vector(g, UserId{u});
    EXPECT_EQ(score_user(g, UserId{u}, BlendParameter(1.0)), diffuse_user_item(g, f).resource);
    EXPECT_EQ(score_user(g, UserId{u}, BlendParameter(0.0)), diffuse_item_tag(g, f).resource);
  }
}

class RandomGraphs : public ::testing::Test {
 protected:
  Rng rng{2024};
};

// Sparse kernels against the long-double dense oracle on random graphs.
TEST_F(RandomGraphs, OracleEquivalence) {
  for (int trial = 0; trial < 200; ++trial) {
    const auto spec = testing::random_graph(rng);
    const auto g = build_graph(spec.records);
    testing::DenseOracle oracle(spec.users, spec.items, spec.tags, spec.user_item,
                                spec.item_tag);
    // Random nonnegative input in the spec's item numbering.
    std::vector<long double> f_spec(spec.items);
    ResourceVector f;
    {
      std::vector<double> f_graph(g.n_items());
      for (std::size_t i = 0; i < spec.items; ++i) {
        const double v = uniform01(rng) < 0.3 ? 0.0 : uniform01(rng) * 3;
        f_spec[i] = v;
        f_graph[*g.items().find("i" + std::to_string(i))] = v;
      }
      f = ResourceVector(f_graph);
    }
    const auto ui = diffuse_user_item(g, f).resource;
    const auto it = diffuse_item_tag(g, f).resource;
    const auto o_ui = testing::DenseOracle::apply(oracle.user_item, f_spec);
    const auto o_it = testing::DenseOracle::apply(oracle.item_tag, f_spec);
    for (std::size_t i = 0; i < spec.items; ++i) {
      const Index j = *g.items().find("i" + std::to_string(i));
      ASSERT_LE(std::abs(ui[j] - static_cast<double>(o_ui[i])), 1e-12);
      ASSERT_LE(std::abs(it[j] - static_cast<double>(o_it[i])), 1e-12);
    }
  }
}

TEST_F(RandomGraphs, LinearityAndNonnegativity) {
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = build_graph(testing::random_graph(rng).records);
    const std::size_t m = g.n_items();
    std::vector<double> a(m), b(m), mix(m);
    const double alpha = uniform01(rng) * 2, beta = uniform01(rng) * 2;
    for (std::size_t i = 0; i < m; ++i) {
      a[i] = uniform01(rng);
      b[i] = uniform01(rng);
      mix[i] = alpha * a[i] + beta * b[i];
    }
    for (auto op : {&diffuse_user_item, &diffuse_item_tag}) {
      const auto da = op(g, ResourceVector(a)).resource;
      const auto db = op(g, ResourceVector(b)).resource;
      const auto dm = op(g, ResourceVector(mix)).resource;
      for (std::size_t j = 0; j < m; ++j) {
        EXPECT_LE(std::abs(dm[j] - (alpha * da[j] + beta * db[j])), 1e-12);
        EXPECT_GE(da[j], 0.0);
      }
    }
  }
}

TEST_F(RandomGraphs, ConservationAndStochasticity) {
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = build_graph(testing::random_graph(rng).records);
    const std::size_t m = g.n_items();
    for (Index s = 0; s < m; ++s) {
      std::vector<double> unit(m, 0.0);
      unit[s] = 1.0;
      const auto ui = diffuse_user_item(g, ResourceVector(unit));
      EXPECT_NEAR(ui.resource.sum(), 1.0, 1e-10);
      const auto it = diffuse_item_tag(g, ResourceVector(unit));
      if (g.item_tag_degree(s) == 0) {
        EXPECT_EQ(it.resource.sum(), 0.0);
        EXPECT_EQ(it.mass_lost, 1.0);
      } else {
        EXPECT_NEAR(it.resource.sum(), 1.0, 1e-10);
        EXPECT_EQ(it.mass_lost, 0.0);
      }
    }
  }
}

TEST_F(RandomGraphs, SparseScorerMatchesDenseKernelsBitwise) {
  for (int trial = 0; trial < 60; ++trial) {
    const auto g = build_graph(testing::random_graph(rng).records);
    SparseScorer scorer(g);
    for (Index u = 0; u < g.n_users(); ++u) {
      scorer.diffuse(u);
      const auto f = initial_vector(g, UserId{u});
      const auto ui = diffuse_user_item(g, f).resource;
      const auto it = diffuse_item_tag(g, f).resource;
      std::vector<char> reached(g.n_items(), 0);
      for (Index j : scorer.reached()) reached[j] = 1;
      for (Index j = 0; j < g.n_items(); ++j) {
        ASSERT_EQ(scorer.user_item(j), ui[j]);
        ASSERT_EQ(scorer.item_tag(j), it[j]);
        ASSERT_EQ(reached[j] != 0, ui[j] > 0 || it[j] > 0);
      }
      const auto blended = score_user(g, UserId{u}, BlendParameter(0.3));
      for (Index j = 0; j < g.n_items(); ++j) ASSERT_EQ(scorer.blended(j, 0.3), blended[j]);
    }
  }
}

TEST_F(RandomGraphs, LibraryDenseReferenceAgrees) {
  for (int trial = 0; trial < 40; ++trial) {
    const auto g = build_graph(testing::random_graph(rng).records);
    const double lambda = uniform01(rng);
    for (Index u = 0; u < g.n_users(); ++u) {
      const auto sparse = score_user(g, UserId{u}, BlendParameter(lambda));
      const auto dense = dense_scores(g, UserId{u}, lambda);
      EXPECT_LE(max_abs_diff(sparse.values(), dense), 1e-12);
    }
  }
}

TEST(DenseReference, RefusesLargeGraphs) {
  RecordSet records;
  for (int i = 0; i < 2001; ++i) records.push_back({"u", "i" + std::to_string(i), {"t"}});
  const auto g = build_graph(records);
  try {
    dense_scores(g, UserId{0}, 0.5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kData);
  }
}

}  // namespace
}  // namespace tagdiff
