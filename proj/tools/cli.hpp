#pragma once

// Command-line front end. Kept in a header so tests can drive run_cli() in-process.
//
//   sqdist matrices FILE [--which D,Delta,L,Q,F,H]
//   sqdist det      FILE --target D|H|Delta
//   sqdist inverse  FILE --target D|H|Delta
//   sqdist verify   [FILE] [--gen SPEC] [--count N] [--seed S]
//   sqdist gen      --gen SPEC [--seed S]
//
// Every command takes --format text|json. FILE may be "-" for stdin.
// SPEC is "n=<n or a..b>[,shape=prufer|star|path|caterpillar][,pool=w1:w2:...]".

#include "sqdist/sqdist.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

namespace sqdist::cli {

enum ExitCode : int {
    kSuccess = 0,
    kVerificationFailure = 1,
    kInputError = 2,
    kHypothesisViolation = 3,
};

struct GenRequest {
    std::size_t n_min = 2;
    std::size_t n_max = 2;
    TreeShape shape = TreeShape::UniformPrufer;
    std::vector<Rational> pool = default_weight_pool();
};

inline GenRequest parse_gen_request(const std::string& text) {
    GenRequest req;
    bool have_n = false;
    std::istringstream in(text);
    for (std::string item; std::getline(in, item, ',');) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw ParseError(0, "--gen: expected key=value, got '" + item + "'");
        const std::string key = item.substr(0, eq);
        std::string value = item.substr(eq + 1);
        if (key == "n") {
            const auto dots = value.find("..");
            try {
                std::size_t pos = 0;
                if (dots == std::string::npos) {
                    req.n_min = req.n_max = std::stoul(value, &pos);
                    if (pos != value.size()) throw std::invalid_argument(value);
                } else {
                    req.n_min = std::stoul(value.substr(0, dots));
                    req.n_max = std::stoul(value.substr(dots + 2), &pos);
                    if (pos != value.size() - dots - 2) throw std::invalid_argument(value);
                }
            } catch (const std::exception&) {
                throw ParseError(0, "--gen: bad vertex count '" + value + "'");
            }
            if (req.n_min < 1 || req.n_min > req.n_max) throw ParseError(0, "--gen: bad vertex range '" + value + "'");
            have_n = true;
        } else if (key == "shape") {
            std::transform(value.begin(), value.end(), value.begin(), [](unsigned char c) { return std::tolower(c); });
            if (value == "prufer" || value == "uniformprufer" || value == "uniform") req.shape = TreeShape::UniformPrufer;
            else if (value == "star") req.shape = TreeShape::Star;
            else if (value == "path") req.shape = TreeShape::Path;
            else if (value == "caterpillar") req.shape = TreeShape::Caterpillar;
            else throw ParseError(0, "--gen: unknown shape '" + value + "'");
        } else if (key == "pool") {
            req.pool.clear();
            std::istringstream pin(value);
            for (std::string w; std::getline(pin, w, ':');) {
                try {
                    req.pool.push_back(Rational::parse(w));
                } catch (const std::exception& e) {
                    throw ParseError(0, std::string("--gen: ") + e.what());
                }
                if (req.pool.back().is_zero()) throw ParseError(0, "--gen: weight pool may not contain 0");
            }
            if (req.pool.empty()) throw ParseError(0, "--gen: empty weight pool");
        } else {
            throw ParseError(0, "--gen: unknown key '" + key + "'");
        }
    }
    if (!have_n) throw ParseError(0, "--gen: n=<count> is required");
    return req;
}

/// Tree k of a generated batch. Per-tree seeds and sizes come from one stream seeded with `seed`.
inline std::vector<WeightedTree> generate_batch(const GenRequest& req, std::uint64_t seed, std::size_t count) {
    std::mt19937_64 stream(seed);
    std::vector<WeightedTree> trees;
    trees.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        TreeGenSpec spec;
        spec.n = std::uniform_int_distribution<std::size_t>(req.n_min, req.n_max)(stream);
        spec.seed = stream();
        spec.shape = req.shape;
        spec.weight_pool = req.pool;
        trees.push_back(generate_tree(spec));
    }
    return trees;
}

namespace detail {

inline WeightedTree read_tree_file(const std::string& path, std::istream& stdin_stream) {
    if (path == "-") return parse_tree(stdin_stream);
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open '" + path + "'");
    try {
        return parse_tree(in);
    } catch (const ParseError& e) {
        throw ParseError(e.line(), path + ": " + std::string(e.what()));
    }
}

inline void emit(const OutputDocument& doc, bool json, std::ostream& out) {
    if (json) out << to_json(doc).dump(2) << "\n";
    else out << to_text(doc);
}

inline const char* flag(bool b) { return b ? "true" : "false"; }

inline RationalMatrix as_row(const std::vector<Rational>& v) { return RationalMatrix::column(v).transpose(); }

}  // namespace detail

inline int cmd_matrices(const WeightedTree& t, const std::vector<std::string>& which, bool json, std::ostream& out) {
    const auto b = build_bundle(t);
    OutputDocument doc;
    doc.n = t.vertex_count();
    const std::map<std::string, const RationalMatrix*> table = {
        {"D", &b.D}, {"Delta", &b.Delta}, {"L", &b.L}, {"Q", &b.Q}, {"F", &b.F}, {"H", &b.H}};
    // stable order regardless of how --which was spelled
    for (const char* name : {"D", "Delta", "L", "Q", "F", "H"})
        if (std::find(which.begin(), which.end(), name) != which.end()) doc.add_matrix(name, *table.at(name));
    detail::emit(doc, json, out);
    return kSuccess;
}

inline int cmd_det(const WeightedTree& t, const std::string& target, bool json, std::ostream& out) {
    const auto b = build_bundle(t);
    OutputDocument doc;
    doc.n = t.vertex_count();
    doc.add_scalar("target", target);

    Rational closed, oracle;
    if (target == "D") {
        closed = det_D_closed(t);
        oracle = det(b.D);
    } else if (target == "H") {
        closed = det_H_closed(t);
        oracle = det(b.H);
    } else {
        const auto r = det_Delta_closed(t);
        closed = r.value;
        oracle = det(b.Delta);
        doc.add_scalar("regime", to_string(r.regime));
        if (r.beta) doc.add_scalar("beta", *r.beta);
    }
    const bool agree = closed == oracle;
    doc.add_scalar("closed", closed);
    doc.add_scalar("oracle", oracle);
    doc.add_scalar("agree", detail::flag(agree));
    detail::emit(doc, json, out);
    return agree ? kSuccess : kVerificationFailure;
}

inline int cmd_inverse(const WeightedTree& t, const std::string& target, bool json, std::ostream& out) {
    const auto b = build_bundle(t);
    const auto n = t.vertex_count();
    OutputDocument doc;
    doc.n = n;
    doc.add_scalar("target", target);

    bool ok = true;
    auto certify = [&](const RationalMatrix& m, const RationalMatrix& closed) {
        const bool certified = m * closed == RationalMatrix::identity(m.rows());
        const bool agree = inverse(m) == closed;
        doc.add_matrix("inverse", closed);
        doc.add_scalar("certified", detail::flag(certified));
        doc.add_scalar("agree", detail::flag(agree));
        ok = ok && certified && agree;
    };

    if (target == "D") {
        certify(b.D, inv_D_closed(t));
    } else if (target == "H") {
        certify(b.H, inv_H_closed(t));
    } else {
        const auto cert = inv_Delta_closed(t);
        certify(b.Delta, cert.matrix);
        doc.add_matrix("eta", detail::as_row(cert.eta));
        const bool eta_ok = b.Delta * RationalMatrix::column(cert.eta) == RationalMatrix::ones(n, 1) * cert.beta;
        const Rational bilinear = entry_sum(cert.matrix);
        const Rational four_over_beta = ones_inv_ones(t);
        doc.add_scalar("beta", cert.beta);
        doc.add_scalar("delta_eta_is_beta_ones", detail::flag(eta_ok));
        doc.add_scalar("ones_inv_ones", bilinear);
        doc.add_scalar("four_over_beta", four_over_beta);
        doc.add_scalar("bilinear_agree", detail::flag(bilinear == four_over_beta));
        ok = ok && eta_ok && bilinear == four_over_beta;
    }
    detail::emit(doc, json, out);
    return ok ? kSuccess : kVerificationFailure;
}

inline int cmd_verify(const std::vector<WeightedTree>& trees, bool json, std::ostream& out) {
    OutputDocument doc;
    SuiteTally total;
    std::map<std::string, SuiteTally> per_identity;
    std::vector<std::pair<std::size_t, IdentityReport>> failures;

    for (std::size_t k = 0; k < trees.size(); ++k) {
        doc.n = std::max(doc.n, trees[k].vertex_count());
        for (auto& r : run_identity_suite(trees[k])) {
            total.add(r);
            per_identity[r.identity_id].add(r);
            std::optional<std::size_t> index;
            if (trees.size() > 1) index = k;
            doc.reports.push_back({r.identity_id, to_string(r.status), r.reason, index});
            if (r.status == ReportStatus::Fail) failures.emplace_back(k, std::move(r));
        }
    }
    std::stable_sort(doc.reports.begin(), doc.reports.end(), [](const ReportRecord& a, const ReportRecord& b) {
        return std::tie(a.id, a.tree) < std::tie(b.id, b.tree);
    });
    for (const auto& [k, r] : failures) {
        if (!r.counterexample) continue;
        const std::string prefix = r.identity_id + "#" + std::to_string(k);
        doc.add_matrix(prefix + ".lhs", r.counterexample->lhs);
        doc.add_matrix(prefix + ".rhs", r.counterexample->rhs);
    }
    doc.add_scalar("trees", std::to_string(trees.size()));
    doc.add_scalar("passed", std::to_string(total.passed));
    doc.add_scalar("skipped", std::to_string(total.skipped));
    doc.add_scalar("failed", std::to_string(total.failed));

    const std::string summary = "identities: " + std::to_string(total.passed) + " passed, " +
                                std::to_string(total.skipped) + " skipped, " +
                                std::to_string(total.failed) + " failed";
    if (json) {
        detail::emit(doc, true, out);
    } else {
        out << "trees: " << trees.size() << "\n";
        for (const auto& info : identity_catalog()) {
            const auto& s = per_identity[info.id];
            out << "  " << info.id << std::string(40 - std::min<std::size_t>(39, std::string(info.id).size()), ' ')
                << "pass " << s.passed << "  skip " << s.skipped << "  fail " << s.failed << "\n";
        }
        for (const auto& [k, r] : failures) {
            out << "FAIL " << r.identity_id << " on tree " << k << ": " << r.reason << "\n" << format_tree(r.tree);
            if (r.counterexample)
                out << "  lhs = " << r.counterexample->lhs << "\n  rhs = " << r.counterexample->rhs << "\n";
        }
        out << summary << "\n";
    }
    return total.failed == 0 ? kSuccess : kVerificationFailure;
}

/// Entry point. `args` excludes the program name.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
                   std::istream& in = std::cin) {
    CLI::App app{"Exact matrices and closed forms for edge-weighted trees", "sqdist"};
    app.require_subcommand(1);

    std::string format = "text";
    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
    };

    std::string file;
    std::vector<std::string> which{"D", "Delta", "L", "Q", "F", "H"};
    std::string target = "Delta";
    std::string gen_spec;
    std::size_t count = 1;
    std::uint64_t seed = 0;

    auto* matrices = app.add_subcommand("matrices", "Print the matrices of a tree");
    matrices->add_option("file", file, "Tree file ('-' for stdin)")->required();
    matrices->add_option("--which", which, "Subset of D,Delta,L,Q,F,H")
        ->delimiter(',')
        ->check(CLI::IsMember({"D", "Delta", "L", "Q", "F", "H"}));
    add_format(matrices);

    auto* det_cmd = app.add_subcommand("det", "Closed-form determinant checked against elimination");
    det_cmd->add_option("file", file, "Tree file ('-' for stdin)")->required();
    det_cmd->add_option("--target", target, "D, H or Delta")->check(CLI::IsMember({"D", "H", "Delta"}));
    add_format(det_cmd);

    auto* inv_cmd = app.add_subcommand("inverse", "Closed-form inverse, certified and checked against elimination");
    inv_cmd->add_option("file", file, "Tree file ('-' for stdin)")->required();
    inv_cmd->add_option("--target", target, "D, H or Delta")->check(CLI::IsMember({"D", "H", "Delta"}));
    add_format(inv_cmd);

    auto* verify = app.add_subcommand("verify", "Run the identity battery on a tree file or generated trees");
    auto* verify_file = verify->add_option("file", file, "Tree file ('-' for stdin)");
    auto* verify_gen = verify->add_option("--gen", gen_spec, "Generation spec n=..[,shape=..][,pool=..]");
    verify_file->excludes(verify_gen);
    verify->add_option("--count", count, "Number of generated trees")->check(CLI::PositiveNumber);
    verify->add_option("--seed", seed, "RNG seed");
    add_format(verify);

    auto* gen = app.add_subcommand("gen", "Emit a random tree file");
    gen->add_option("--gen", gen_spec, "Generation spec n=..[,shape=..][,pool=..]")->required();
    gen->add_option("--seed", seed, "RNG seed");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kInputError;
    }
    const bool json = format == "json";

    try {
        if (*matrices) return cmd_matrices(detail::read_tree_file(file, in), which, json, out);
        if (*det_cmd) return cmd_det(detail::read_tree_file(file, in), target, json, out);
        if (*inv_cmd) return cmd_inverse(detail::read_tree_file(file, in), target, json, out);
        if (*verify) {
            if (file.empty() == gen_spec.empty()) {
                err << "verify: give either a tree file or --gen\n";
                return kInputError;
            }
            if (!file.empty()) return cmd_verify({detail::read_tree_file(file, in)}, json, out);
            return cmd_verify(generate_batch(parse_gen_request(gen_spec), seed, count), json, out);
        }
        if (*gen) {
            out << format_tree(generate_batch(parse_gen_request(gen_spec), seed, 1).front());
            return kSuccess;
        }
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const HypothesisError& e) {
        err << "hypothesis violated (" << e.hypothesis() << "): " << e.what() << "\n";
        return kHypothesisViolation;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kVerificationFailure;
    }
    return kInputError;
}

}  // namespace sqdist::cli
