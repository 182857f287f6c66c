#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <map>

using namespace sqdist;
using sqdist::testing::q;

namespace {

std::map<std::string, IdentityReport> by_id(std::vector<IdentityReport> reports) {
    std::map<std::string, IdentityReport> out;
    for (auto& r : reports) {
        const auto id = r.identity_id;
        out.emplace(id, std::move(r));
    }
    return out;
}

}  // namespace

TEST(GenerateTree, SmallOrders) {
    TreeGenSpec spec;
    spec.n = 1;
    EXPECT_EQ(generate_tree(spec).edge_count(), 0u);
    spec.n = 2;
    const auto t = generate_tree(spec);
    ASSERT_EQ(t.edge_count(), 1u);
    EXPECT_NE(t.edge(0).tail, t.edge(0).head);
}

TEST(GenerateTree, Deterministic) {
    for (auto shape : {TreeShape::UniformPrufer, TreeShape::Star, TreeShape::Path, TreeShape::Caterpillar}) {
        TreeGenSpec spec;
        spec.n = 9;
        spec.seed = 1234;
        spec.shape = shape;
        EXPECT_EQ(generate_tree(spec), generate_tree(spec));
    }
}

TEST(GenerateTree, RejectsBadPools) {
    TreeGenSpec spec;
    spec.n = 4;
    spec.weight_pool = {};
    EXPECT_THROW(generate_tree(spec), std::invalid_argument);
    spec.weight_pool = {1, 0};
    EXPECT_THROW(generate_tree(spec), std::invalid_argument);
    spec.weight_pool = {1};
    spec.n = 0;
    EXPECT_THROW(generate_tree(spec), std::invalid_argument);
}

TEST(GenerateTree, ShapesHaveExpectedDegrees) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        for (std::size_t n = 1; n <= 12; ++n) {
            TreeGenSpec spec;
            spec.n = n;
            spec.seed = seed;
            spec.shape = TreeShape::Star;
            const auto star = generate_tree(spec);
            std::size_t max_degree = 0;
            for (std::size_t v = 0; v < n; ++v) max_degree = std::max(max_degree, star.degree(v));
            EXPECT_EQ(max_degree, n - 1);

            spec.shape = TreeShape::Path;
            EXPECT_EQ(degree_two_count(generate_tree(spec)), n >= 2 ? n - 2 : 0);

            spec.shape = TreeShape::Caterpillar;
            if (n == 3 || n >= 5) {
                EXPECT_EQ(degree_two_count(generate_tree(spec)), 1u) << n;
            }
        }
    }
}

TEST(GenerateTree, PruferCoversAllLabelledTreesOnFourVertices) {
    // Cayley: 4^2 = 16 labelled trees on four vertices.
    std::set<std::set<std::pair<std::size_t, std::size_t>>> seen;
    for (std::uint64_t seed = 0; seed < 2000; ++seed) {
        TreeGenSpec spec;
        spec.n = 4;
        spec.seed = seed;
        spec.weight_pool = {1};
        const auto t = generate_tree(spec);
        std::set<std::pair<std::size_t, std::size_t>> edges;
        for (const auto& e : t.edges()) edges.emplace(std::min(e.tail, e.head), std::max(e.tail, e.head));
        seen.insert(edges);
    }
    EXPECT_EQ(seen.size(), 16u);
}

TEST(IdentitySuite, OneReportPerCatalogEntry) {
    const auto reports = run_identity_suite(sqdist::testing::seven_vertex_example());
    ASSERT_EQ(reports.size(), identity_catalog().size());
    for (std::size_t k = 0; k < reports.size(); ++k) EXPECT_EQ(reports[k].identity_id, identity_catalog()[k].id);
}

TEST(IdentitySuite, UnweightedStar) {
    const auto r = by_id(run_identity_suite(sqdist::testing::unweighted_star(3)));
    for (const auto& [id, rep] : r) {
        if (id == "det-squared-distance-one-degree-two" || id == "det-squared-distance-many-degree-two" ||
            id == "beta-zero-singular") {
            EXPECT_EQ(rep.status, ReportStatus::Skipped) << id;
        } else {
            EXPECT_EQ(rep.status, ReportStatus::Pass) << id << ": " << rep.reason;
        }
    }
    EXPECT_EQ(r.at("det-squared-distance-one-degree-two").reason, "needs exactly one degree-2 vertex");
}

TEST(IdentitySuite, FourVertexPath) {
    const auto r = by_id(run_identity_suite(sqdist::testing::unweighted_path(4)));
    EXPECT_EQ(r.at("det-squared-distance-many-degree-two").status, ReportStatus::Pass);
    EXPECT_EQ(r.at("det-squared-distance-no-degree-two").status, ReportStatus::Skipped);
    EXPECT_EQ(r.at("inverse-squared-distance").status, ReportStatus::Skipped);
    EXPECT_EQ(r.at("inverse-squared-distance").reason, "degree-2 vertex present");
    for (const auto& [id, rep] : r) EXPECT_NE(rep.status, ReportStatus::Fail) << id;
}

TEST(IdentitySuite, ZeroWeightSum) {
    const auto r = by_id(run_identity_suite(build_tree(3, {{1, 2, 1}, {2, 3, -1}})));
    EXPECT_EQ(r.at("inverse-distance").status, ReportStatus::Skipped);
    EXPECT_EQ(r.at("inverse-distance").reason, hypothesis::kWeightSumZero);
    EXPECT_EQ(r.at("det-distance").status, ReportStatus::Pass);
    EXPECT_EQ(r.at("distance-laplacian").status, ReportStatus::Pass);
    EXPECT_EQ(r.at("distance-tau").status, ReportStatus::Pass);
}

TEST(IdentitySuite, BetaZeroRoutedToSingularCheck) {
    const auto r = by_id(run_identity_suite(build_tree(4, {{1, 2, 1}, {1, 3, 1}, {1, 4, q("-1/2")}})));
    EXPECT_EQ(r.at("beta-zero-singular").status, ReportStatus::Pass);
    EXPECT_EQ(r.at("inverse-squared-distance").status, ReportStatus::Skipped);
    EXPECT_EQ(r.at("inverse-squared-distance").reason, hypothesis::kBetaZero);
    EXPECT_EQ(r.at("ones-inverse-ones").status, ReportStatus::Skipped);
    EXPECT_EQ(r.at("squared-distance-eta").status, ReportStatus::Pass);
}

TEST(IdentitySuite, NoFailuresAndFullCoverageOnRandomTrees) {
    std::map<std::string, SuiteTally> tally;
    for (const auto& t : sqdist::testing::random_trees(300, 1, 10, 51)) {
        for (const auto& rep : run_identity_suite(t)) {
            tally[rep.identity_id].add(rep);
            EXPECT_NE(rep.status, ReportStatus::Fail) << rep.identity_id << "\n" << format_tree(t) << rep.reason;
        }
    }
    // Every identity is exercised in Pass state at least once, except the beta = 0 branch,
    // which random pools rarely hit and has its own constructed case above.
    for (const auto& info : identity_catalog()) {
        if (std::string(info.id) == "beta-zero-singular") continue;
        EXPECT_GT(tally[info.id].passed, 0u) << info.id;
    }
}

TEST(IdentitySuite, DeterministicAcrossRuns) {
    TreeGenSpec spec;
    spec.n = 8;
    spec.seed = 77;
    const auto a = run_identity_suite(generate_tree(spec));
    const auto b = run_identity_suite(generate_tree(spec));
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        EXPECT_EQ(a[k].identity_id, b[k].identity_id);
        EXPECT_EQ(a[k].status, b[k].status);
        EXPECT_EQ(a[k].reason, b[k].reason);
    }
}

TEST(PolynomialCheck, GammaStarQuartic) {
    const std::vector<Rational> points{0, 1, -1, 2, q("5/2")};
    const auto poly = sqdist::testing::gamma_star_det_poly();
    // gamma = 0 is not a valid tree, so only four matrix-side points remain: not enough for degree 4
    EXPECT_THROW(polynomial_identity_check("gamma-star", sqdist::testing::gamma_star, points, poly),
                 std::invalid_argument);

    const std::vector<Rational> nonzero{1, -1, 2, q("5/2"), -3};
    const auto report = polynomial_identity_check("gamma-star", sqdist::testing::gamma_star, nonzero, poly);
    EXPECT_EQ(report.status, ReportStatus::Pass) << report.reason;

    std::vector<Rational> with_zero = nonzero;
    with_zero.push_back(0);
    EXPECT_EQ(polynomial_identity_check("gamma-star", sqdist::testing::gamma_star, with_zero, poly).status,
              ReportStatus::Pass);
    EXPECT_EQ(evaluate_polynomial(poly, 0), Rational(0));
    EXPECT_EQ(evaluate_polynomial(poly, 1), Rational(256));
}

TEST(PolynomialCheck, DetectsWrongPolynomial) {
    const std::vector<Rational> points{1, -1, 2, q("5/2"), -3};
    auto poly = sqdist::testing::gamma_star_det_poly();
    poly[2] = 97;
    const auto report = polynomial_identity_check("gamma-star", sqdist::testing::gamma_star, points, poly);
    EXPECT_EQ(report.status, ReportStatus::Fail);
    ASSERT_TRUE(report.counterexample.has_value());
    EXPECT_EQ(report.counterexample->lhs, RationalMatrix(1, 1, Rational(256)));
}

TEST(PolynomialCheck, RejectsDuplicatePoints) {
    const std::vector<Rational> points{1, 1, 2, 3, 4, 5};
    EXPECT_THROW(polynomial_identity_check("x", sqdist::testing::gamma_star, points,
                                           sqdist::testing::gamma_star_det_poly()),
                 std::invalid_argument);
}

TEST(PolynomialCheck, CustomQuantityBeta) {
    const std::vector<Rational> points{1, -1, 2};
    const auto report = polynomial_identity_check(
        "gamma-star-beta", sqdist::testing::gamma_star, points, sqdist::testing::gamma_star_beta_poly(),
        [](const WeightedTree& t) { return beta(t); });
    EXPECT_EQ(report.status, ReportStatus::Pass);
}
