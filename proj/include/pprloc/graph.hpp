#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pprloc {

using NodeIndex = std::size_t;
using Edge = std::pair<NodeIndex, NodeIndex>;

/// Binary adjacency matrix (row-major, n*n) and out-degrees.
struct AdjacencyView {
  std::size_t n = 0;
  std::vector<unsigned char> a;
  std::vector<std::size_t> kout;

  unsigned char operator()(NodeIndex i, NodeIndex j) const { return a[i * n + j]; }
};

/// d[i] = 1 exactly when node i has no outlinks.
struct DanglingIndicator {
  std::vector<unsigned char> d;

  std::size_t count() const;
};

/// Directed graph with labelled nodes. Nodes are held in canonical label
/// order: numeric ascending when every label is a base-10 integer, otherwise
/// lexicographic. Edges have set semantics; self-loops are allowed.
///
/// Immutable after construction.
class DirectedGraph {
public:
  /// Labels may be given in any order; they are sorted canonically and the
  /// edges (expressed as label pairs) are remapped. Throws DomainError on
  /// duplicate labels, an empty node set, or an edge naming an unknown label.
  DirectedGraph(std::vector<std::string> labels,
                const std::vector<std::pair<std::string, std::string>>& edges);

  std::size_t node_count() const noexcept { return labels_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(NodeIndex i) const { return labels_.at(i); }
  std::optional<NodeIndex> find(std::string_view label) const;

  /// Sorted by (source, target).
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  /// Sorted targets of node i.
  const std::vector<NodeIndex>& successors(NodeIndex i) const { return out_.at(i); }
  std::size_t out_degree(NodeIndex i) const { return out_.at(i).size(); }

  AdjacencyView adjacency() const;
  DanglingIndicator dangling_indicator() const;

  friend bool operator==(const DirectedGraph&, const DirectedGraph&) = default;

private:
  std::vector<std::string> labels_;
  std::vector<Edge> edges_;
  std::vector<std::vector<NodeIndex>> out_;
};

/// Sorts labels into canonical order in place.
void canonical_sort(std::vector<std::string>& labels);

/// Parses "src dst" lines. '#' starts a comment line; blank lines are skipped.
DirectedGraph parse_edge_list(std::string_view text);

/// Parses {"nodes": [...], "edges": [[s, t], ...]}. Node entries may be
/// strings or integers; edges must reference declared nodes. Isolated nodes
/// are only expressible in this form.
DirectedGraph parse_graph_json(std::string_view text);

/// Inverse of parse_edge_list for graphs without isolated nodes.
std::string to_edge_list(const DirectedGraph& g);
std::string to_graph_json(const DirectedGraph& g);

enum class GraphFormat { Auto, EdgeList, Json };

/// Auto picks Json for a ".json" suffix and EdgeList otherwise.
DirectedGraph load_graph(const std::string& path, GraphFormat format = GraphFormat::Auto);

}  // namespace pprloc
