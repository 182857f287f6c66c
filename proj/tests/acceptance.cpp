// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "fixtures.hpp"
#include "cli.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

using namespace sqdist;
using sqdist::testing::q;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& why) {
        if (!cond && ok) {
            ok = false;
            detail = why;
        }
    }
};

int failures = 0;

void criterion(const std::string& id, const std::string& title, double limit_seconds,
               const std::function<Outcome()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
        out = body();
    } catch (const std::exception& e) {
        out.ok = false;
        out.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (limit_seconds > 0 && secs >= limit_seconds) {
        std::ostringstream msg;
        msg << "took " << secs << " s, limit " << limit_seconds << " s";
        out.require(false, msg.str());
    }
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(2);
    line << (out.ok ? "[PASS] " : "[FAIL] ") << id << "  " << title << "  (" << secs << " s)";
    if (!out.ok) line << ": " << out.detail;
    std::cout << line.str() << std::endl;
    if (!out.ok) ++failures;
}

std::vector<WeightedTree> batch(std::size_t count, std::size_t lo, std::size_t hi, std::uint64_t seed,
                                std::vector<TreeShape> shapes, std::vector<Rational> pool = default_weight_pool()) {
    std::mt19937_64 rng(seed);
    std::vector<WeightedTree> trees;
    trees.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        TreeGenSpec spec;
        spec.n = std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
        spec.seed = rng();
        spec.shape = shapes[k % shapes.size()];
        spec.weight_pool = pool;
        trees.push_back(generate_tree(spec));
    }
    return trees;
}

// Draws trees until `count` satisfy `keep`.
std::vector<WeightedTree> filtered(std::size_t count, std::size_t lo, std::size_t hi, std::uint64_t seed,
                                   std::vector<TreeShape> shapes, std::vector<Rational> pool,
                                   const std::function<bool(const WeightedTree&)>& keep) {
    std::vector<WeightedTree> out;
    for (std::uint64_t round = 0; out.size() < count; ++round) {
        if (round > 1000) throw std::runtime_error("could not draw enough qualifying trees");
        for (auto& t : batch(count, lo, hi, seed + round * 7919, shapes, pool)) {
            if (out.size() == count) break;
            if (keep(t)) out.push_back(std::move(t));
        }
    }
    return out;
}

std::string where(const WeightedTree& t) { return "\n" + format_tree(t); }

const std::vector<TreeShape> kAllShapes{TreeShape::UniformPrufer, TreeShape::Star, TreeShape::Path,
                                        TreeShape::Caterpillar};

bool no_degree_two_nonzero_beta(const WeightedTree& t) {
    return delta_regime(t) == DeltaRegime::NoDegreeTwo && !beta(t).is_zero();
}

}  // namespace

int main() {
    criterion("AC1", "unweighted det D = (-1)^(n-1) (n-1) 2^(n-2), 200 trees", 10, [] {
        Outcome o;
        for (const auto& t : batch(200, 2, 12, 101, kAllShapes, {Rational(1)})) {
            const long n = static_cast<long>(t.vertex_count());
            const Rational expected = Rational((n % 2 == 1) ? 1 : -1) * Rational(n - 1) * pow2(n - 2);
            o.require(det(distances(t)) == expected, "mismatch on" + where(t));
        }
        return o;
    });

    criterion("AC2", "weighted det D closed form vs Bareiss, 500 trees", 30, [] {
        Outcome o;
        for (const auto& t : batch(500, 1, 12, 102, kAllShapes))
            o.require(det_D_closed(t) == det(distances(t)), "mismatch on" + where(t));
        return o;
    });

    criterion("AC3", "det Delta closed form in every regime vs Bareiss, 500 trees", 60, [] {
        Outcome o;
        std::map<DeltaRegime, std::size_t> seen;
        for (const auto& t : batch(500, 1, 12, 103, kAllShapes)) {
            const auto r = det_Delta_closed(t);
            ++seen[r.regime];
            o.require(r.value == squared_distance_determinant(t), "mismatch on" + where(t));
        }
        for (auto regime : {DeltaRegime::NoDegreeTwo, DeltaRegime::OneDegreeTwo, DeltaRegime::ManyDegreeTwo})
            o.require(seen[regime] > 0, std::string("regime never sampled: ") + to_string(regime));
        return o;
    });

    criterion("AC4", "unit weights: unweighted formula = general formula = Bareiss, 100 trees", 0, [] {
        Outcome o;
        const auto trees = filtered(100, 1, 12, 104, {TreeShape::UniformPrufer, TreeShape::Star}, {Rational(1)},
                                    [](const WeightedTree& t) { return delta_regime(t) == DeltaRegime::NoDegreeTwo; });
        for (const auto& t : trees) {
            const Rational unweighted = det_Delta_unweighted(t);
            o.require(unweighted == det_Delta_closed(t).value, "formulas disagree on" + where(t));
            o.require(unweighted == squared_distance_determinant(t), "oracle disagrees on" + where(t));
        }
        return o;
    });

    const auto inverse_trees = filtered(200, 1, 12, 105, {TreeShape::UniformPrufer, TreeShape::Star},
                                        default_weight_pool(), no_degree_two_nonzero_beta);

    criterion("AC5", "inverse of Delta closed form vs Gauss-Jordan and Delta eta = beta 1, 200 trees", 0, [&] {
        Outcome o;
        for (const auto& t : inverse_trees) {
            const auto b = build_bundle(t);
            const auto cert = inv_Delta_closed(t);
            o.require(cert.matrix == inverse(b.Delta), "inverse mismatch on" + where(t));
            const auto n = t.vertex_count();
            o.require(b.Delta * RationalMatrix::column(cert.eta) == cert.beta * RationalMatrix::ones(n, 1),
                      "Delta eta != beta 1 on" + where(t));
        }
        return o;
    });

    criterion("AC6", "cofactor sum and 1'Delta^-1 1 = 4/beta, same 200 trees", 0, [&] {
        Outcome o;
        for (const auto& t : inverse_trees) {
            const auto delta = build_bundle(t).Delta;
            o.require(cof_Delta_closed(t) == cofactor_sum(delta), "cofactor sum mismatch on" + where(t));
            o.require(entry_sum(inverse(delta)) == Rational(4) / beta(t), "bilinear form mismatch on" + where(t));
        }
        return o;
    });

    criterion("AC7", "identity battery via verify, 1000 trees, 0 failures", 0, [] {
        Outcome o;
        std::ostringstream out;
        const int code = cli::cmd_verify(batch(1000, 1, 12, 107, kAllShapes), true, out);
        const auto doc = document_from_json(out.str());
        o.require(code == cli::kSuccess, "verify exited with " + std::to_string(code));
        o.require(*doc.scalar("failed") == "0", "failed = " + *doc.scalar("failed"));
        std::map<std::string, std::size_t> passes;
        for (const auto& r : doc.reports) {
            if (r.status == "Pass") ++passes[r.id];
            o.require(r.status != "Fail", "failure: " + r.id);
        }
        for (const char* id : {"incidence-distance", "laplacian-distance-laplacian", "distance-tau",
                               "squared-distance-tau", "det-orientation", "inverse-orientation",
                               "incidence-squared-distance", "squared-distance-laplacian", "distance-laplacian"})
            o.require(passes[id] > 0, std::string("never exercised: ") + id);
        return o;
    });

    criterion("AC8a", "seven-vertex Laplacian reproduced entry for entry", 0, [] {
        Outcome o;
        const auto l = build_bundle(sqdist::testing::seven_vertex_example()).L;
        for (std::size_t i = 0; i < 7; ++i)
            for (std::size_t j = 0; j < 7; ++j)
                o.require(l(i, j) == q(sqdist::testing::kSevenVertexLaplacian[i][j]),
                          "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") = " + l(i, j).str());
        return o;
    });

    criterion("AC8b", "gamma family: det Delta and beta polynomials at 5 sample points", 0, [] {
        Outcome o;
        const std::vector<Rational> points{1, -1, 2, q("5/2"), -3};
        const auto det_report = polynomial_identity_check("gamma-star-det", sqdist::testing::gamma_star, points,
                                                          sqdist::testing::gamma_star_det_poly());
        o.require(det_report.status == ReportStatus::Pass, "det Delta polynomial: " + det_report.reason);
        const auto beta_report =
            polynomial_identity_check("gamma-star-beta", sqdist::testing::gamma_star, points,
                                      sqdist::testing::gamma_star_beta_poly(),
                                      [](const WeightedTree& t) { return beta(t); });
        o.require(beta_report.status == ReportStatus::Pass, "beta polynomial: " + beta_report.reason);
        return o;
    });

    criterion("AC9", "hypotheses are necessary: zero weight sum and long paths", 0, [] {
        Outcome o;
        const auto zero_sum = build_tree(4, {{1, 2, 2}, {2, 3, -3}, {3, 4, 1}});
        o.require(det(distances(zero_sum)).is_zero(), "det D != 0 with zero weight sum");
        o.require(det_D_closed(zero_sum).is_zero(), "closed det D != 0 with zero weight sum");
        bool threw = false;
        try {
            (void)inv_D_closed(zero_sum);
        } catch (const HypothesisError& e) {
            threw = e.hypothesis() == hypothesis::kWeightSumZero;
        }
        o.require(threw, "inv_D_closed did not reject zero weight sum");

        const auto path = build_tree(5, {{1, 2, q("3/2")}, {3, 2, -2}, {3, 4, q("1/5")}, {5, 4, 7}});
        o.require(degree_two_count(path) >= 2, "path has fewer than two degree-2 vertices");
        o.require(squared_distance_determinant(path).is_zero(), "det Delta != 0 on path");
        o.require(det_Delta_closed(path).value.is_zero(), "closed det Delta != 0 on path");
        return o;
    });

    std::cout << (failures == 0 ? "all acceptance criteria passed" : std::to_string(failures) + " criteria failed")
              << std::endl;
    return failures == 0 ? 0 : 1;
}
