#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace sqdist {

/// Operand shapes are incompatible for the requested operation.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A square matrix turned out to be singular; carries the rank found during elimination.
class SingularMatrixError : public std::domain_error {
public:
    SingularMatrixError(std::size_t rank, std::size_t order)
        : std::domain_error("matrix is singular (rank " + std::to_string(rank) + " of " +
                            std::to_string(order) + ")"),
          rank_(rank), order_(order) {}

    std::size_t rank() const noexcept { return rank_; }
    std::size_t order() const noexcept { return order_; }

private:
    std::size_t rank_;
    std::size_t order_;
};

enum class TreeErrorKind {
    WrongEdgeCount,
    NotATree,
    ZeroWeight,
    VertexOutOfRange,
    SelfLoop,
    DuplicateEdge,
};

/// Edge list does not describe a valid weighted tree.
class TreeError : public std::invalid_argument {
public:
    TreeError(TreeErrorKind kind, const std::string& what, std::optional<std::size_t> edge = {})
        : std::invalid_argument(what), kind_(kind), edge_(edge) {}

    TreeErrorKind kind() const noexcept { return kind_; }
    /// 0-based position of the offending edge in the input list, when one is to blame.
    std::optional<std::size_t> edge() const noexcept { return edge_; }

private:
    TreeErrorKind kind_;
    std::optional<std::size_t> edge_;
};

/// A closed form was requested outside the hypothesis under which it holds.
class HypothesisError : public std::domain_error {
public:
    HypothesisError(std::string hypothesis, const std::string& what)
        : std::domain_error(what), hypothesis_(std::move(hypothesis)) {}

    /// Short machine-friendly name of the violated hypothesis, e.g. "degree-2 vertex".
    const std::string& hypothesis() const noexcept { return hypothesis_; }

private:
    std::string hypothesis_;
};

/// Malformed textual input; `line` is 1-based, 0 when no line applies.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace sqdist
