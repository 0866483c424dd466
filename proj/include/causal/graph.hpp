#pragma once

#include <span>
#include <vector>

#include "causal/common.hpp"

namespace causal {

/// Directed acyclic graph over p variables, stored as one parent bitmask per
/// node. parents[i] holds the set Pa(x_i); bit i itself is never set.
struct Dag {
    int p = 0;
    std::vector<Mask> parents;

    Dag() = default;
    Dag(int p_, std::vector<Mask> parents_) : p(p_), parents(std::move(parents_)) {}

    static Dag empty(int p) { return Dag(p, std::vector<Mask>(p, 0)); }

    bool has_edge(int from, int to) const { return has_bit(parents[to], from); }
    int edge_count() const;
    Mask others(int i) const { return full_mask(p) & ~bit(i); }

    bool operator==(const Dag&) const = default;
};

/// Validates self-loops, stray bits and acyclicity; throws ValidationError.
Dag make_dag(int p, std::vector<Mask> parents);

/// True iff a topological order exists (Kahn-style elimination on masks).
bool is_acyclic(std::span<const Mask> parents);

/// Deterministic topological order: smallest index first among ready nodes.
/// Throws ValidationError on a cycle.
std::vector<int> topological_order(const Dag& dag);

/// Unshielded collider a -> b <- c with a < c and a, c nonadjacent.
struct VStructure {
    int a, b, c;
    bool operator==(const VStructure&) const = default;
    auto operator<=>(const VStructure&) const = default;
};

std::vector<VStructure> v_structures(const Dag& dag);

enum class EdgeMark : std::uint8_t { None = 0, Directed = 1, Undirected = 2 };

/// Mixed graph with an explicit mark per ordered pair. Undirected marks are
/// kept symmetric; mark(i,j) == Directed implies mark(j,i) == None.
class Cpdag {
public:
    Cpdag() = default;
    explicit Cpdag(int p) : p_(p), marks_(static_cast<std::size_t>(p) * p, EdgeMark::None) {}

    /// Every DAG edge becomes a directed mark.
    static Cpdag from_dag_edges(const Dag& dag);

    int p() const { return p_; }
    EdgeMark mark(int i, int j) const { return marks_[idx(i, j)]; }
    bool adjacent(int i, int j) const {
        return mark(i, j) != EdgeMark::None || mark(j, i) != EdgeMark::None;
    }
    bool directed(int i, int j) const { return mark(i, j) == EdgeMark::Directed; }
    bool undirected(int i, int j) const { return mark(i, j) == EdgeMark::Undirected; }

    void set_directed(int i, int j) {
        marks_[idx(i, j)] = EdgeMark::Directed;
        marks_[idx(j, i)] = EdgeMark::None;
    }
    void set_undirected(int i, int j) {
        marks_[idx(i, j)] = EdgeMark::Undirected;
        marks_[idx(j, i)] = EdgeMark::Undirected;
    }
    void clear_edge(int i, int j) {
        marks_[idx(i, j)] = EdgeMark::None;
        marks_[idx(j, i)] = EdgeMark::None;
    }

    int edge_count() const;
    bool directed_part_acyclic() const;

    /// Unshielded colliders among the directed marks, a < c.
    std::vector<VStructure> directed_v_structures() const;

    bool operator==(const Cpdag&) const = default;

private:
    std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i) * p_ + j; }

    int p_ = 0;
    std::vector<EdgeMark> marks_;
};

}  // namespace causal
