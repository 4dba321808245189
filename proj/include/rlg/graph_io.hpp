#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "rlg/graph_model.hpp"

namespace rlg {

/// Raised for malformed edge-list or ordering input. Carries the 1-based line.
class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

// Edge-list format:
//   # n=<n> p=<p> band=<b> seed=<s>
//   u v            (1-based, u < v, one edge per line)
//
// The file carries adjacency only; the hidden labeling is stored separately as
// an ordering file, so a graph read back has true_order = identity.

void write_edge_list(std::ostream& out, const RandomLinearGraph& graph);
RandomLinearGraph read_edge_list(std::istream& in);

void write_edge_list(const std::filesystem::path& path, const RandomLinearGraph& graph);
RandomLinearGraph read_edge_list(const std::filesystem::path& path);

// Ordering file: n lines, line i holds the 1-based vertex at position i.

void write_ordering(std::ostream& out, const Permutation& order);
Permutation read_ordering(std::istream& in);

void write_ordering(const std::filesystem::path& path, const Permutation& order);
Permutation read_ordering(const std::filesystem::path& path);

/// Ordering that lists vertices by latent position: the inverse of true_order.
Permutation truth_ordering(const RandomLinearGraph& graph);

} // namespace rlg
