#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "sgp/graph.hpp"

namespace sgp::io {

// Matrix Market coordinate format, field real, symmetry symmetric.
// Indices are 1-based on disk; the lower triangle is written. The reader
// also accepts `general` files and symmetrizes them as (R + R^T) / 2,
// rejecting pairs with |R_ij - R_ji| > 1e-12 * max(1, |R_ij|).
void write_matrix_market(std::ostream& out, const SignedGraph& g);
SignedGraph read_matrix_market(std::istream& in);

// Edge-list CSV with header `i,j,w`, 0-based indices, one undirected edge
// per row. The vertex count is one past the largest index seen.
void write_edge_csv(std::ostream& out, const SignedGraph& g);
SignedGraph read_edge_csv(std::istream& in);

/// Picks the format from the extension (.mtx or .csv).
SignedGraph load_graph(const std::filesystem::path& path);
void save_graph(const std::filesystem::path& path, const SignedGraph& g);

/// Shortest decimal text that parses back to exactly the same double.
std::string format_double(double x);

}  // namespace sgp::io
