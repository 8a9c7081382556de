#pragma once

// Kruskal spanning forests over connectivity matrices and the exact
// comparison of two trees through their sorted edge weights.

#include "combinf/connectivity.hpp"
#include "combinf/exact_inference.hpp"

#include <string>
#include <utility>
#include <vector>

namespace combinf {

struct WeightedEdge {
    std::size_t i = 0;
    std::size_t j = 0;
    double w = 0.0;

    bool operator==(const WeightedEdge&) const = default;
};

/// Undirected graph in edge-list form.
class WeightedGraph {
public:
    /// Throws ValidationError on self loops, out-of-range endpoints,
    /// duplicate unordered pairs or non-finite weights.
    WeightedGraph(std::vector<std::string> node_labels, std::vector<WeightedEdge> edges);

    std::size_t node_count() const noexcept { return labels_.size(); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const std::vector<WeightedEdge>& edges() const noexcept { return edges_; }

private:
    std::vector<std::string> labels_;
    std::vector<WeightedEdge> edges_;
};

/// Disjoint-set forest with union by size and path halving.
class UnionFind {
public:
    explicit UnionFind(std::size_t n);

    std::size_t find(std::size_t x);
    /// Returns false (and changes nothing) when a and b are already joined.
    bool unite(std::size_t a, std::size_t b);
    std::size_t components() const noexcept { return components_; }

private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> size_;
    std::size_t components_;
};

struct SpanningForest {
    std::vector<std::string> node_labels;
    std::vector<WeightedEdge> tree_edges;  ///< in the order Kruskal accepted them
    std::size_t component_count = 0;

    double total_weight() const;
};

/// Minimum spanning forest. Edges are scanned by (weight, min endpoint,
/// max endpoint) so equal weights resolve the same way on every platform.
/// Throws ValidationError for graphs with fewer than 2 nodes.
SpanningForest kruskal_mst(const WeightedGraph& g);

enum class TreeMode {
    distance,              ///< entries are distances; exact zeros mean "no edge"
    one_minus_similarity,  ///< weight 1 - c for every off-diagonal entry
    max_tree,              ///< maximum spanning tree on c, weights reported as c
};

/// Parses "distance", "one-minus" or "max-tree". Throws ValidationError.
TreeMode parse_tree_mode(const std::string& name);
std::string to_string(TreeMode mode);

/// Ascending tree edge weights. Ties are kept (see MonotoneSequence::has_ties).
struct SortedEdgeWeights {
    MonotoneSequence weights;
};

SortedEdgeWeights sorted_edge_weights(const SpanningForest& forest);

struct TreeResult {
    SpanningForest forest;
    SortedEdgeWeights weights;
};

TreeResult mst_from_connectivity(const ConnectivityMatrix& c, TreeMode mode);

struct MstComparison {
    std::size_t d = 0;
    double argmax_weight = 0.0;
    ExactPValue p_value;
    std::size_t q = 0;
    /// Ties were absorbed, so the p-value is not exact.
    bool ties_absorbed = false;
};

/// Throws LengthMismatchError when the trees have different edge counts.
MstComparison compare_msts(const SortedEdgeWeights& a, const SortedEdgeWeights& b);

/// Sorted, deduplicated labels of every endpoint of an edge (in either
/// forest) whose weight lies in [center - radius, center + radius].
std::vector<std::string> localize_nodes(const SpanningForest& a, const SpanningForest& b,
                                        double center, double radius);

/// Points (w_j, j) of the edges-added step function.
std::vector<std::pair<double, std::size_t>> growth_curve(const SortedEdgeWeights& w);

}  // namespace combinf
