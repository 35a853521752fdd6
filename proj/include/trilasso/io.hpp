#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "trilasso/cluster_path.hpp"
#include "trilasso/dataset.hpp"
#include "trilasso/graph.hpp"
#include "trilasso/solution.hpp"

namespace trilasso::io {

using Path = std::filesystem::path;
using Json = nlohmann::ordered_json;
using Communities = std::vector<std::vector<Index>>;

/// 12 significant digits; enough for every round-trip tolerance used here.
std::string format_number(double value);

/// CSV with a header row and one instance per row. An empty cell or a literal
/// NaN marks a missing value. `response_column` names a header column to pull
/// out as y.
Dataset read_data_csv(std::istream& in, const std::string& source,
                      const std::optional<std::string>& response_column = std::nullopt);
Dataset read_data_csv(const Path& path, const std::optional<std::string>& response_column = std::nullopt);
/// Features are written as x1..xd, followed by y when present.
void write_data_csv(const Path& path, const Dataset& data);

/// Whitespace-separated `i j [w [t q]]` per line, 0-based; `#` starts a
/// comment. A `# vertices N` line fixes the vertex count, otherwise it is
/// inferred from the largest index (or taken from `num_vertices`).
/// When t and q are absent they are computed from the edge set.
Graph read_graph(std::istream& in, const std::string& source, std::optional<Index> num_vertices = std::nullopt);
Graph read_graph(const Path& path, std::optional<Index> num_vertices = std::nullopt);
void write_graph(std::ostream& out, const Graph& graph);
void write_graph(const Path& path, const Graph& graph);

/// Plain numeric CSV; a non-numeric first line is treated as a header.
Matrix read_matrix_csv(const Path& path);
void write_matrix_csv(const Path& path, const Matrix& m, const std::string& column_prefix = "x");

/// One community per line, space-separated vertex indices.
Communities read_communities(const Path& path);
void write_communities(const Path& path, const Communities& communities);

/// Columns alpha, vertex, label, x1..xd.
void write_cluster_path(const Path& path, const ClusterPath& cluster_path);
ClusterPath read_cluster_path(const Path& path);

Json to_json(const ClusterAssignment& assignment);
ClusterAssignment assignment_from_json(const Json& j);
Json to_json(const Solution& solution);

void write_json(const Path& path, const Json& j);
Json read_json(const Path& path);

}  // namespace trilasso::io
