#pragma once

/**
 * @file io.hpp
 * @brief Tree text format and the output document (text and JSON renderings).
 *
 * Tree file:
 *   line 1        n
 *   next n-1      "tail head weight", weight an integer or "p/q"
 * '#' starts a comment; blank lines are ignored.
 */

#include "sqdist/errors.hpp"
#include "sqdist/matrix.hpp"
#include "sqdist/rational.hpp"
#include "sqdist/tree.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstddef>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace sqdist {

namespace detail {

inline std::vector<std::string> split_ws(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> tokens;
    for (std::string tok; in >> tok;) tokens.push_back(tok);
    return tokens;
}

inline std::size_t parse_count(const std::string& tok, std::size_t line, const char* what) {
    if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) { return c >= '0' && c <= '9'; }))
        throw ParseError(line, std::string("expected ") + what + ", got '" + tok + "'");
    try {
        return std::stoul(tok);
    } catch (const std::exception&) {
        throw ParseError(line, std::string(what) + " out of range: '" + tok + "'");
    }
}

}  // namespace detail

/// Reads a tree file. Syntax and validation errors throw ParseError naming the line.
inline WeightedTree parse_tree(std::istream& in) {
    std::optional<std::size_t> n;
    std::size_t n_line = 0;
    std::vector<OrientedEdge> edges;
    std::vector<std::size_t> edge_lines;

    std::string raw;
    for (std::size_t line_no = 1; std::getline(in, raw); ++line_no) {
        if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        const auto tokens = detail::split_ws(raw);
        if (tokens.empty()) continue;

        if (!n) {
            if (tokens.size() != 1) throw ParseError(line_no, "expected a single vertex count");
            n = detail::parse_count(tokens[0], line_no, "vertex count");
            n_line = line_no;
            continue;
        }
        if (tokens.size() != 3) throw ParseError(line_no, "expected 'tail head weight'");
        OrientedEdge e;
        e.tail = detail::parse_count(tokens[0], line_no, "tail vertex");
        e.head = detail::parse_count(tokens[1], line_no, "head vertex");
        try {
            e.weight = Rational::parse(tokens[2]);
        } catch (const std::exception& ex) {
            throw ParseError(line_no, ex.what());
        }
        edges.push_back(std::move(e));
        edge_lines.push_back(line_no);
    }
    if (!n) throw ParseError(0, "empty tree file: missing vertex count");

    try {
        return build_tree(*n, std::move(edges));
    } catch (const TreeError& e) {
        const std::size_t line = e.edge() ? edge_lines[*e.edge()] : n_line;
        throw ParseError(line, e.what());
    }
}

inline WeightedTree parse_tree(const std::string& text) {
    std::istringstream in(text);
    return parse_tree(in);
}

/// Canonical tree file: vertex count, then one line per edge in stored order.
inline std::string format_tree(const WeightedTree& t) {
    std::string out = std::to_string(t.vertex_count()) + "\n";
    for (const auto& e : t.edges())
        out += std::to_string(e.tail) + " " + std::to_string(e.head) + " " + e.weight.str() + "\n";
    return out;
}

// ---------------------------------------------------------------------------

struct ReportRecord {
    std::string id;
    std::string status;
    std::string reason;                ///< omitted from output when empty
    std::optional<std::size_t> tree;   ///< index of the tree when a run covers several

    friend bool operator==(const ReportRecord&, const ReportRecord&) = default;
};

/// Everything a command prints. Entries keep insertion order in both renderings.
struct OutputDocument {
    std::size_t n = 0;
    std::vector<std::pair<std::string, RationalMatrix>> matrices;
    std::vector<std::pair<std::string, std::string>> scalars;
    std::vector<ReportRecord> reports;

    void add_matrix(std::string name, RationalMatrix m) { matrices.emplace_back(std::move(name), std::move(m)); }
    void add_scalar(std::string name, std::string value) { scalars.emplace_back(std::move(name), std::move(value)); }
    void add_scalar(std::string name, const Rational& value) { add_scalar(std::move(name), value.str()); }

    const std::string* scalar(const std::string& name) const {
        for (const auto& [k, v] : scalars)
            if (k == name) return &v;
        return nullptr;
    }
    const RationalMatrix* matrix(const std::string& name) const {
        for (const auto& [k, v] : matrices)
            if (k == name) return &v;
        return nullptr;
    }

    friend bool operator==(const OutputDocument&, const OutputDocument&) = default;
};

inline nlohmann::ordered_json to_json(const OutputDocument& doc) {
    using nlohmann::ordered_json;
    ordered_json j;
    j["n"] = doc.n;
    ordered_json mats = ordered_json::object();
    for (const auto& [name, m] : doc.matrices) {
        ordered_json rows = ordered_json::array();
        for (std::size_t i = 0; i < m.rows(); ++i) {
            ordered_json row = ordered_json::array();
            for (const auto& x : m.row(i)) row.push_back(x.str());
            rows.push_back(std::move(row));
        }
        mats[name] = std::move(rows);
    }
    j["matrices"] = std::move(mats);
    ordered_json scal = ordered_json::object();
    for (const auto& [name, v] : doc.scalars) scal[name] = v;
    j["scalars"] = std::move(scal);
    ordered_json reps = ordered_json::array();
    for (const auto& r : doc.reports) {
        ordered_json rec;
        rec["id"] = r.id;
        rec["status"] = r.status;
        if (!r.reason.empty()) rec["reason"] = r.reason;
        if (r.tree) rec["tree"] = *r.tree;
        reps.push_back(std::move(rec));
    }
    j["reports"] = std::move(reps);
    return j;
}

inline OutputDocument document_from_json(const nlohmann::ordered_json& j) {
    OutputDocument doc;
    try {
        doc.n = j.at("n").get<std::size_t>();
        for (const auto& [name, rows] : j.at("matrices").items()) {
            const std::size_t r = rows.size();
            const std::size_t c = r ? rows.at(0).size() : 0;
            RationalMatrix m(r, c);
            for (std::size_t i = 0; i < r; ++i) {
                if (rows.at(i).size() != c) throw ParseError(0, "ragged matrix '" + name + "'");
                for (std::size_t k = 0; k < c; ++k) m(i, k) = Rational::parse(rows.at(i).at(k).get<std::string>());
            }
            doc.add_matrix(name, std::move(m));
        }
        for (const auto& [name, v] : j.at("scalars").items()) doc.add_scalar(name, v.get<std::string>());
        for (const auto& rec : j.at("reports")) {
            ReportRecord r;
            r.id = rec.at("id").get<std::string>();
            r.status = rec.at("status").get<std::string>();
            if (rec.contains("reason")) r.reason = rec.at("reason").get<std::string>();
            if (rec.contains("tree")) r.tree = rec.at("tree").get<std::size_t>();
            doc.reports.push_back(std::move(r));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(0, std::string("malformed output document: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ParseError(0, std::string("malformed output document: ") + e.what());
    }
    return doc;
}

inline OutputDocument document_from_json(const std::string& text) {
    try {
        return document_from_json(nlohmann::ordered_json::parse(text));
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(0, e.what());
    }
}

/// Human-readable rendering: matrices with right-aligned columns, then scalars, then reports.
inline std::string to_text(const OutputDocument& doc) {
    std::ostringstream out;
    out << "n = " << doc.n << "\n";
    for (const auto& [name, m] : doc.matrices) {
        out << name << " (" << m.shape() << ") =\n";
        std::size_t width = 1;
        for (const auto& x : m.entries()) width = std::max(width, x.str().size());
        for (std::size_t i = 0; i < m.rows(); ++i) {
            out << "  [";
            for (std::size_t k = 0; k < m.cols(); ++k) {
                const auto s = m(i, k).str();
                out << (k ? " " : "") << std::string(width - s.size(), ' ') << s;
            }
            out << "]\n";
        }
    }
    for (const auto& [name, v] : doc.scalars) out << name << " = " << v << "\n";
    for (const auto& r : doc.reports) {
        out << r.status << std::string(r.status.size() < 8 ? 8 - r.status.size() : 1, ' ');
        if (r.tree) out << "tree " << *r.tree << "  ";
        out << r.id;
        if (!r.reason.empty()) out << "  (" << r.reason << ")";
        out << "\n";
    }
    return out.str();
}

}  // namespace sqdist
