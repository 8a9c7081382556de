#include "combinf/graph_mst.hpp"

#include "combinf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <tuple>

namespace combinf {

WeightedGraph::WeightedGraph(std::vector<std::string> node_labels, std::vector<WeightedEdge> edges)
    : labels_(std::move(node_labels)), edges_(std::move(edges)) {
    const std::size_t p = labels_.size();
    std::vector<char> seen(p * p, 0);
    for (const auto& e : edges_) {
        if (e.i == e.j) {
            throw ValidationError("self loop at node " + std::to_string(e.i));
        }
        if (e.i >= p || e.j >= p) {
            throw ValidationError("edge (" + std::to_string(e.i) + ", " + std::to_string(e.j) +
                                  ") references a node outside 0.." + std::to_string(p));
        }
        if (!std::isfinite(e.w)) {
            throw ValidationError("edge (" + std::to_string(e.i) + ", " + std::to_string(e.j) +
                                  ") has a non-finite weight");
        }
        char& mark = seen[std::min(e.i, e.j) * p + std::max(e.i, e.j)];
        if (mark) {
            throw ValidationError("duplicate edge (" + std::to_string(e.i) + ", " +
                                  std::to_string(e.j) + ")");
        }
        mark = 1;
    }
}

UnionFind::UnionFind(std::size_t n) : parent_(n), size_(n, 1), components_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

std::size_t UnionFind::find(std::size_t x) {
    while (parent_[x] != x) {
        parent_[x] = parent_[parent_[x]];
        x = parent_[x];
    }
    return x;
}

bool UnionFind::unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) {
        return false;
    }
    if (size_[a] < size_[b]) {
        std::swap(a, b);
    }
    parent_[b] = a;
    size_[a] += size_[b];
    --components_;
    return true;
}

double SpanningForest::total_weight() const {
    double sum = 0.0;
    for (const auto& e : tree_edges) {
        sum += e.w;
    }
    return sum;
}

SpanningForest kruskal_mst(const WeightedGraph& g) {
    const std::size_t p = g.node_count();
    if (p < 2) {
        throw ValidationError("kruskal_mst: graph needs at least 2 nodes");
    }
    std::vector<WeightedEdge> order = g.edges();
    auto key = [](const WeightedEdge& e) {
        return std::tuple{e.w, std::min(e.i, e.j), std::max(e.i, e.j)};
    };
    std::sort(order.begin(), order.end(),
              [&](const WeightedEdge& l, const WeightedEdge& r) { return key(l) < key(r); });

    SpanningForest forest;
    forest.node_labels = g.labels();
    forest.tree_edges.reserve(p - 1);
    UnionFind uf(p);
    for (const auto& e : order) {
        if (uf.unite(e.i, e.j)) {
            forest.tree_edges.push_back(e);
            if (forest.tree_edges.size() == p - 1) {
                break;
            }
        }
    }
    forest.component_count = uf.components();
    return forest;
}

TreeMode parse_tree_mode(const std::string& name) {
    if (name == "distance") {
        return TreeMode::distance;
    }
    if (name == "one-minus" || name == "one_minus_similarity") {
        return TreeMode::one_minus_similarity;
    }
    if (name == "max-tree" || name == "max_tree") {
        return TreeMode::max_tree;
    }
    throw ValidationError("unknown tree mode '" + name +
                          "' (expected distance, one-minus or max-tree)");
}

std::string to_string(TreeMode mode) {
    switch (mode) {
        case TreeMode::distance:
            return "distance";
        case TreeMode::one_minus_similarity:
            return "one-minus";
        case TreeMode::max_tree:
            return "max-tree";
    }
    return "unknown";
}

SortedEdgeWeights sorted_edge_weights(const SpanningForest& forest) {
    if (forest.tree_edges.empty()) {
        throw DataError("spanning forest has no edges");
    }
    std::vector<double> w;
    w.reserve(forest.tree_edges.size());
    for (const auto& e : forest.tree_edges) {
        w.push_back(e.w);
    }
    return {MonotoneSequence::from_unsorted(std::move(w))};
}

TreeResult mst_from_connectivity(const ConnectivityMatrix& c, TreeMode mode) {
    const std::size_t p = c.size();
    std::vector<WeightedEdge> edges;
    edges.reserve(p * (p - 1) / 2);
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = i + 1; j < p; ++j) {
            const double v = c(i, j);
            switch (mode) {
                case TreeMode::distance:
                    if (v != 0.0) {
                        edges.push_back({i, j, v});
                    }
                    break;
                case TreeMode::one_minus_similarity:
                    edges.push_back({i, j, 1.0 - v});
                    break;
                case TreeMode::max_tree:
                    edges.push_back({i, j, -v});
                    break;
            }
        }
    }
    auto forest = kruskal_mst(WeightedGraph(c.labels(), std::move(edges)));
    if (mode == TreeMode::max_tree) {
        for (auto& e : forest.tree_edges) {
            e.w = c(e.i, e.j);
        }
    }
    auto weights = sorted_edge_weights(forest);
    return {std::move(forest), std::move(weights)};
}

MstComparison compare_msts(const SortedEdgeWeights& a, const SortedEdgeWeights& b) {
    if (a.weights.size() != b.weights.size()) {
        throw LengthMismatchError("spanning forests have different edge counts (" +
                                  std::to_string(a.weights.size()) + " vs " +
                                  std::to_string(b.weights.size()) + ")");
    }
    const auto disc = discrepancy(a.weights, b.weights);
    return {disc.d, disc.argmax_location, exact_pvalue(disc.q, disc.d), disc.q,
            disc.ties_absorbed};
}

std::vector<std::string> localize_nodes(const SpanningForest& a, const SpanningForest& b,
                                        double center, double radius) {
    if (!(radius >= 0.0)) {
        throw ValidationError("localize_nodes: radius must be >= 0");
    }
    if (!std::isfinite(center)) {
        throw ValidationError("localize_nodes: center must be finite");
    }
    const double lo = center - radius;
    const double hi = center + radius;
    std::set<std::string> found;
    for (const auto* forest : {&a, &b}) {
        for (const auto& e : forest->tree_edges) {
            if (e.w >= lo && e.w <= hi) {
                found.insert(forest->node_labels.at(e.i));
                found.insert(forest->node_labels.at(e.j));
            }
        }
    }
    return {found.begin(), found.end()};
}

std::vector<std::pair<double, std::size_t>> growth_curve(const SortedEdgeWeights& w) {
    std::vector<std::pair<double, std::size_t>> points;
    points.reserve(w.weights.size());
    for (std::size_t j = 0; j < w.weights.size(); ++j) {
        points.emplace_back(w.weights[j], j + 1);
    }
    return points;
}

}  // namespace combinf
