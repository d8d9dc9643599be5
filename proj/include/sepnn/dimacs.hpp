#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "sepnn/graph.hpp"

namespace sepnn {

/// Error in a DIMACS input; `line` is 1-based and 0 when the problem is not
/// attributable to a single line (e.g. nodes missing from a .co file).
class DimacsError : public std::runtime_error {
public:
    DimacsError(std::size_t line, const std::string& what);
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Parses the 9th DIMACS Implementation Challenge edge format (.gr) and,
/// optionally, the companion coordinate format (.co). Ids are remapped to
/// 0-based. The result is undirected: arcs (u,v) and (v,u) collapse into one
/// edge, and duplicate arcs keep the minimum weight.
Graph parse_dimacs(std::string_view gr_text,
                   std::optional<std::string_view> co_text = std::nullopt);

std::string write_dimacs_gr(const Graph& g);
std::string write_dimacs_co(const Graph& g);

/// File-based convenience wrappers around parse_dimacs.
Graph load_dimacs(const std::string& gr_path,
                  const std::optional<std::string>& co_path = std::nullopt);
std::string read_text_file(const std::string& path);

}  // namespace sepnn
