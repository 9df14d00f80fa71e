#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "treediag/errors.hpp"
#include "treediag/matrix.hpp"

namespace treediag {

// A rooted-or-unrooted tree decomposition: bags over nodes 1..node_count plus
// tree edges. Bags are kept sorted ascending and deduplicated.
struct TreeDecomposition {
    int node_count = 0;
    std::vector<std::vector<int>> bags;      // [1..node_count]
    std::vector<std::pair<int, int>> edges;  // node_count - 1 of them
    int root = 0;                            // 0 = unspecified

    int declared_root() const { return root > 0 ? root : 1; }
    int width() const;
};

// Checks the three decomposition properties against g and returns the width.
// Throws NotATree, UncoveredVertex, UncoveredEdge, DisconnectedOccurrences,
// IndexOutOfRange. On success also asserts the width-k edge bound
// |E| <= k*n - k(k+1)/2 (InternalInvariantViolation if it ever failed).
int validate(const TreeDecomposition& td, const UnderlyingGraph& g);

enum class NodeKind { Leaf = 0, Introduce = 1, Forget = 2, Join = 3 };

const char* kind_name(NodeKind k);

struct NiceNode {
    NodeKind kind = NodeKind::Leaf;
    int vertex = 0; // introduced/forgotten vertex, 0 otherwise
    std::vector<int> bag;
    std::vector<int> children; // ascending; post order visits lower id first
    int parent = 0;            // 0 for the root
};

// A nice tree decomposition. Node ids are assigned so that 1..node_count IS
// the post order (children before parents, lower subtree first), which makes
// traversal order reproducible from the serialized form alone.
class NiceTreeDecomposition {
public:
    // Classifies an explicit structure as Leaf/Introduce/Forget/Join nodes.
    // Throws NotATree / NotNice when the shape does not fit.
    static NiceTreeDecomposition from_structure(std::vector<std::vector<int>> bags,
                                                std::vector<std::pair<int, int>> edges, int root);

    int node_count() const { return static_cast<int>(nodes_.size()) - 1; }
    int root() const { return root_; }
    int width() const { return width_; }
    int vertex_count() const { return vertex_count_; } // == number of Forget nodes

    const NiceNode& node(int i) const { return nodes_[static_cast<size_t>(i)]; }
    const std::vector<int>& post_order() const { return post_; }
    int forget_node(int v) const; // node at which v is forgotten

    struct KindCounts {
        int leaf = 0, introduce = 0, forget = 0, join = 0;
    };
    KindCounts kind_counts() const;

    // Relabels vertices through to_new (1-based permutation); the tree shape,
    // node ids and post order are unchanged, bags are re-sorted.
    NiceTreeDecomposition relabeled(const std::vector<int>& to_new) const;

    TreeDecomposition as_tree_decomposition() const;

private:
    friend NiceTreeDecomposition nicify(const TreeDecomposition&);
    void index(); // fills post_, forget_of_, width_, vertex_count_; checks niceness

    std::vector<NiceNode> nodes_; // 1-based
    int root_ = 0;
    int width_ = -1;
    int vertex_count_ = 0;
    std::vector<int> post_;
    std::vector<int> forget_of_; // vertex -> node id
};

// Nicification: merge child bags contained in their parent's,
// pad small child bags, expand branching nodes into left-leaning Join
// caterpillars, rebuild single-child chains into one-vertex steps, and top the
// root with forgets down to an empty bag. Width never increases, the output
// has fewer than 4n-1 nodes (n = number of distinct vertices), #Forget = n,
// #Join = #Leaf - 1, and join-to-join paths alternate Forget/Introduce
// (starting with Forget) before a trailing run of Forgets.
NiceTreeDecomposition nicify(const TreeDecomposition& td);

// Vertex relabeling that numbers vertices by forget time: the first vertex
// forgotten in post order becomes n, the next n-1, and so on. After applying
// it, every forgotten vertex is the largest label in the forgetting node's
// child bag, so the deleted box column is always the last one.
struct Relabeling {
    std::vector<int> to_new; // [1..n]
    std::vector<int> to_old; // inverse
};
Relabeling relabel_by_forget_order(const NiceTreeDecomposition& td);

// PACE-style .td format:
//   c <comment>
//   c root <i>
//   s td <node_count> <width+1> <n>
//   b <i> <v...>
//   <i> <j>           (tree edges)
// Writing a nice decomposition also records node kinds as comments
// ("c kind <i> Leaf|Introduce v|Forget v|Join"); readers ignore them and
// re-derive kinds from the structure.
TreeDecomposition read_td(std::istream& in);
void write_td(std::ostream& out, const TreeDecomposition& td);
void write_td(std::ostream& out, const NiceTreeDecomposition& td);

} // namespace treediag
