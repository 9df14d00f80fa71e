#include "treediag/treedecomp.hpp"

#include <algorithm>
#include <cassert>
#include <istream>
#include <ostream>
#include <sstream>

namespace treediag {

int TreeDecomposition::width() const {
    size_t largest = 0;
    for (const auto& bag : bags)
        largest = std::max(largest, bag.size());
    return static_cast<int>(largest) - 1;
}

namespace {

std::vector<int> sorted_unique(std::vector<int> xs) {
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return xs;
}

bool bag_contains(const std::vector<int>& bag, int v) {
    return std::binary_search(bag.begin(), bag.end(), v);
}

// Rooted view of an arbitrary tree over nodes 1..m. Throws NotATree on
// disconnected or cyclic edge sets; children come out in ascending id order.
struct RootedTree {
    std::vector<int> parent;
    std::vector<std::vector<int>> kids;
};

RootedTree orient(int m, const std::vector<std::pair<int, int>>& edges, int root) {
    if (static_cast<long>(edges.size()) != static_cast<long>(m) - 1)
        throw NotATree("expected " + std::to_string(m - 1) + " edges, got " +
                       std::to_string(edges.size()));
    std::vector<std::vector<int>> adj(m + 1);
    for (auto [a, b] : edges) {
        if (a < 1 || a > m)
            throw IndexOutOfRange(a, m);
        if (b < 1 || b > m)
            throw IndexOutOfRange(b, m);
        if (a == b)
            throw NotATree("self loop at node " + std::to_string(a));
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    for (auto& xs : adj)
        std::sort(xs.begin(), xs.end());

    RootedTree t;
    t.parent.assign(m + 1, -1);
    t.kids.assign(m + 1, {});
    std::vector<int> stack = {root};
    t.parent[root] = 0;
    int seen = 0;
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        ++seen;
        for (int y : adj[x]) {
            if (y == t.parent[x])
                continue;
            if (t.parent[y] != -1)
                throw NotATree("cycle through node " + std::to_string(y));
            t.parent[y] = x;
            t.kids[x].push_back(y);
            stack.push_back(y);
        }
    }
    if (seen != m)
        throw NotATree("disconnected");
    return t;
}

} // namespace

int validate(const TreeDecomposition& td, const UnderlyingGraph& g) {
    if (td.node_count <= 0)
        throw EmptyDecomposition();
    const int m = td.node_count;
    if (static_cast<int>(td.bags.size()) != m + 1)
        throw IndexOutOfRange(static_cast<int>(td.bags.size()) - 1, m);
    int root = td.declared_root();
    if (root < 1 || root > m)
        throw IndexOutOfRange(root, m);
    orient(m, td.edges, root); // tree-ness

    for (int i = 1; i <= m; ++i) {
        const auto& bag = td.bags[i];
        assert(std::is_sorted(bag.begin(), bag.end()));
        for (int v : bag)
            if (v < 1 || v > g.n)
                throw IndexOutOfRange(v, g.n);
    }

    std::vector<std::vector<int>> occ(g.n + 1);
    for (int i = 1; i <= m; ++i)
        for (int v : td.bags[i])
            occ[v].push_back(i);

    for (int v = 1; v <= g.n; ++v)
        if (occ[v].empty())
            throw UncoveredVertex(v);

    for (auto [u, v] : g.edges) {
        const auto& smaller = occ[u].size() <= occ[v].size() ? occ[u] : occ[v];
        int other = occ[u].size() <= occ[v].size() ? v : u;
        bool covered = false;
        for (int i : smaller)
            if (bag_contains(td.bags[i], other)) {
                covered = true;
                break;
            }
        if (!covered)
            throw UncoveredEdge(u, v);
    }

    // Occurrence connectivity: the nodes holding v must induce a subtree.
    std::vector<std::vector<int>> adj(m + 1);
    for (auto [a, b] : td.edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<int> mark(m + 1, 0);
    std::vector<int> stack;
    for (int v = 1; v <= g.n; ++v) {
        const int stamp = v;
        for (int i : occ[v])
            mark[i] = stamp;
        stack.assign(1, occ[v].front());
        size_t reached = 0;
        mark[occ[v].front()] = -stamp; // visited
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            ++reached;
            for (int y : adj[x])
                if (mark[y] == stamp) {
                    mark[y] = -stamp;
                    stack.push_back(y);
                }
        }
        if (reached != occ[v].size())
            throw DisconnectedOccurrences(v);
    }

    int k = td.width();
    // A graph admitting a width-k decomposition has at most kn - k(k+1)/2
    // edges, so this cannot fire once the checks above pass.
    long bound = static_cast<long>(k) * g.n - static_cast<long>(k) * (k + 1) / 2;
    if (k >= 0 && g.edge_count() > bound)
        throw InternalInvariantViolation("edge count exceeds width-" + std::to_string(k) +
                                         " bound");
    return k;
}

// --- nice tree decompositions ------------------------------------------------

const char* kind_name(NodeKind k) {
    switch (k) {
    case NodeKind::Leaf:
        return "Leaf";
    case NodeKind::Introduce:
        return "Introduce";
    case NodeKind::Forget:
        return "Forget";
    case NodeKind::Join:
        return "Join";
    }
    return "?";
}

int NiceTreeDecomposition::forget_node(int v) const {
    if (v < 1 || v >= static_cast<int>(forget_of_.size()) || forget_of_[v] == 0)
        throw IndexOutOfRange(v, static_cast<int>(forget_of_.size()) - 1);
    return forget_of_[v];
}

NiceTreeDecomposition::KindCounts NiceTreeDecomposition::kind_counts() const {
    KindCounts c;
    for (int i = 1; i <= node_count(); ++i) {
        switch (nodes_[i].kind) {
        case NodeKind::Leaf:
            ++c.leaf;
            break;
        case NodeKind::Introduce:
            ++c.introduce;
            break;
        case NodeKind::Forget:
            ++c.forget;
            break;
        case NodeKind::Join:
            ++c.join;
            break;
        }
    }
    return c;
}

void NiceTreeDecomposition::index() {
    const int m = node_count();
    // Post order with lower child first; iterative, chains can be long.
    post_.clear();
    post_.reserve(m);
    std::vector<std::pair<int, size_t>> stack = {{root_, 0}};
    while (!stack.empty()) {
        auto& [node, next] = stack.back();
        if (next < nodes_[node].children.size()) {
            int child = nodes_[node].children[next++];
            stack.emplace_back(child, 0);
        } else {
            post_.push_back(node);
            stack.pop_back();
        }
    }
    if (static_cast<int>(post_.size()) != m)
        throw NotATree("unreachable nodes");

    int max_vertex = 0;
    for (int i = 1; i <= m; ++i)
        for (int v : nodes_[i].bag)
            max_vertex = std::max(max_vertex, v);

    width_ = -1;
    vertex_count_ = 0;
    forget_of_.assign(max_vertex + 1, 0);
    std::vector<char> seen(max_vertex + 1, 0);
    for (int i = 1; i <= m; ++i) {
        const NiceNode& nd = nodes_[i];
        width_ = std::max(width_, static_cast<int>(nd.bag.size()) - 1);
        for (int v : nd.bag)
            seen[v] = 1;
        if (nd.kind == NodeKind::Forget) {
            if (forget_of_[nd.vertex] != 0)
                throw NotNice("vertex " + std::to_string(nd.vertex) + " forgotten twice");
            forget_of_[nd.vertex] = i;
            ++vertex_count_;
        }
    }
    for (int v = 1; v <= max_vertex; ++v)
        if (seen[v] && forget_of_[v] == 0)
            throw NotNice("vertex " + std::to_string(v) + " never forgotten");
}

NiceTreeDecomposition NiceTreeDecomposition::from_structure(std::vector<std::vector<int>> bags,
                                                            std::vector<std::pair<int, int>> edges,
                                                            int root) {
    const int m = static_cast<int>(bags.size()) - 1;
    if (m <= 0)
        throw EmptyDecomposition();
    if (root < 1 || root > m)
        throw IndexOutOfRange(root, m);
    for (auto& bag : bags)
        bag = sorted_unique(std::move(bag));
    RootedTree t = orient(m, edges, root);

    NiceTreeDecomposition nice;
    nice.root_ = root;
    nice.nodes_.assign(m + 1, NiceNode{});
    for (int i = 1; i <= m; ++i) {
        NiceNode& nd = nice.nodes_[i];
        nd.bag = bags[i];
        nd.parent = t.parent[i];
        nd.children = t.kids[i]; // ascending from orient()
        switch (nd.children.size()) {
        case 0:
            nd.kind = NodeKind::Leaf;
            break;
        case 1: {
            const auto& child = bags[nd.children[0]];
            const auto& mine = nd.bag;
            if (mine.size() + 1 == child.size() &&
                std::includes(child.begin(), child.end(), mine.begin(), mine.end())) {
                nd.kind = NodeKind::Forget;
                std::vector<int> diff;
                std::set_difference(child.begin(), child.end(), mine.begin(), mine.end(),
                                    std::back_inserter(diff));
                nd.vertex = diff.front();
            } else if (mine.size() == child.size() + 1 &&
                       std::includes(mine.begin(), mine.end(), child.begin(), child.end())) {
                nd.kind = NodeKind::Introduce;
                std::vector<int> diff;
                std::set_difference(mine.begin(), mine.end(), child.begin(), child.end(),
                                    std::back_inserter(diff));
                nd.vertex = diff.front();
            } else {
                throw NotNice("node " + std::to_string(i) +
                              " differs from its child by more than one vertex");
            }
            break;
        }
        case 2: {
            if (bags[nd.children[0]] != nd.bag || bags[nd.children[1]] != nd.bag)
                throw NotNice("join node " + std::to_string(i) +
                              " has a child with a different bag");
            nd.kind = NodeKind::Join;
            break;
        }
        default:
            throw NotNice("node " + std::to_string(i) + " has " +
                          std::to_string(nd.children.size()) + " children");
        }
    }
    if (!nice.nodes_[root].bag.empty())
        throw NotNice("root bag is not empty");
    nice.index();
    return nice;
}

NiceTreeDecomposition NiceTreeDecomposition::relabeled(const std::vector<int>& to_new) const {
    NiceTreeDecomposition out = *this;
    auto map_vertex = [&](int v) {
        if (v < 1 || v >= static_cast<int>(to_new.size()))
            throw IndexOutOfRange(v, static_cast<int>(to_new.size()) - 1);
        return to_new[v];
    };
    for (size_t i = 1; i < out.nodes_.size(); ++i) {
        NiceNode& nd = out.nodes_[i];
        for (int& v : nd.bag)
            v = map_vertex(v);
        std::sort(nd.bag.begin(), nd.bag.end());
        if (nd.vertex != 0)
            nd.vertex = map_vertex(nd.vertex);
    }
    out.index();
    return out;
}

TreeDecomposition NiceTreeDecomposition::as_tree_decomposition() const {
    TreeDecomposition td;
    td.node_count = node_count();
    td.root = root_;
    td.bags.assign(nodes_.size(), {});
    for (int i = 1; i <= node_count(); ++i) {
        td.bags[i] = nodes_[i].bag;
        for (int c : nodes_[i].children)
            td.edges.emplace_back(i, c);
    }
    return td;
}

Relabeling relabel_by_forget_order(const NiceTreeDecomposition& td) {
    const int n = td.vertex_count();
    Relabeling r;
    r.to_new.assign(n + 1, 0);
    r.to_old.assign(n + 1, 0);
    int next = n;
    for (int i : td.post_order()) {
        const NiceNode& nd = td.node(i);
        if (nd.kind != NodeKind::Forget)
            continue;
        if (nd.vertex < 1 || nd.vertex > n)
            throw IndexOutOfRange(nd.vertex, n);
        r.to_new[nd.vertex] = next;
        r.to_old[next] = nd.vertex;
        --next;
    }
    return r;
}

// --- nicify -------------------------------------------------------------------

namespace {

// Mutable working tree for the nicify traversals.
struct Work {
    struct N {
        std::vector<int> bag;
        std::vector<int> kids;
        int parent = 0;
        bool alive = true;
    };
    std::vector<N> nodes; // 1-based
    int root = 0;

    int add(std::vector<int> bag) {
        nodes.push_back({std::move(bag), {}, 0, true});
        return static_cast<int>(nodes.size()) - 1;
    }
};

// Traversal 1: splice out any node whose bag is contained in its parent's
// (equality included); its children are re-examined in place.
void merge_contained(Work& w) {
    std::vector<int> stack = {w.root};
    while (!stack.empty()) {
        int p = stack.back();
        stack.pop_back();
        auto& kids = w.nodes[p].kids;
        size_t i = 0;
        while (i < kids.size()) {
            int c = kids[i];
            const auto& pb = w.nodes[p].bag;
            const auto& cb = w.nodes[c].bag;
            if (std::includes(pb.begin(), pb.end(), cb.begin(), cb.end())) {
                w.nodes[c].alive = false;
                std::vector<int> grandkids = std::move(w.nodes[c].kids);
                for (int g : grandkids)
                    w.nodes[g].parent = p;
                kids.erase(kids.begin() + static_cast<long>(i));
                kids.insert(kids.begin() + static_cast<long>(i), grandkids.begin(),
                            grandkids.end());
                // do not advance: the spliced-in children may merge too
            } else {
                ++i;
            }
        }
        for (int c : kids)
            stack.push_back(c);
    }
}

// Traversal 2: pad child bags to their parent's size with the smallest
// missing vertices from the parent's (already padded) bag.
void pad_small_children(Work& w) {
    std::vector<int> stack = {w.root};
    while (!stack.empty()) {
        int p = stack.back();
        stack.pop_back();
        const auto& pb = w.nodes[p].bag;
        for (int c : w.nodes[p].kids) {
            auto& cb = w.nodes[c].bag;
            if (cb.size() < pb.size()) {
                std::vector<int> missing;
                std::set_difference(pb.begin(), pb.end(), cb.begin(), cb.end(),
                                    std::back_inserter(missing));
                size_t need = pb.size() - cb.size();
                cb.insert(cb.end(), missing.begin(), missing.begin() + static_cast<long>(need));
                std::sort(cb.begin(), cb.end());
            }
            stack.push_back(c);
        }
    }
}

// Traversal 3: replace each node with c >= 2 children by a left-leaning
// caterpillar of Join nodes whose leaves adopt the original children in
// order, so the post order still visits child subtrees left to right.
void expand_branching(Work& w) {
    const int limit = static_cast<int>(w.nodes.size()) - 1;
    for (int id = 1; id <= limit; ++id) {
        if (!w.nodes[id].alive || w.nodes[id].kids.size() < 2)
            continue;
        std::vector<int> kids = std::move(w.nodes[id].kids);
        w.nodes[id].kids.clear();
        const size_t c = kids.size();

        std::vector<int> leaves(c);
        for (size_t i = 0; i < c; ++i) {
            leaves[i] = w.add(w.nodes[id].bag);
            w.nodes[leaves[i]].kids = {kids[i]};
            w.nodes[kids[i]].parent = leaves[i];
        }
        std::vector<int> spine(c - 1);
        spine[0] = id;
        for (size_t t = 1; t < c - 1; ++t)
            spine[t] = w.add(w.nodes[id].bag);
        for (size_t t = 0; t + 1 < c - 1; ++t) {
            w.nodes[spine[t]].kids = {spine[t + 1], leaves[c - 1 - t]};
            w.nodes[spine[t + 1]].parent = spine[t];
            w.nodes[leaves[c - 1 - t]].parent = spine[t];
        }
        int last = spine[c - 2];
        w.nodes[last].kids = {leaves[0], leaves[1]};
        w.nodes[leaves[0]].parent = last;
        w.nodes[leaves[1]].parent = last;
    }
}

// Traversal 4, on one maximal single-child chain: replace its interior with
// one-vertex steps. Forgets run in original exit order (ties: larger label
// first), introduces in original entry order (ties: smaller label first),
// strictly alternating Forget,Introduce,... with trailing Forgets. Because
// bag sizes never grow upward (traversal 2), exits through any prefix of the
// chain outnumber entries, which keeps every original co-occurrence inside
// some new bag and the peak bag size at the chain's bottom bag size.
void rebuild_chain(Work& w, const std::vector<int>& chain) {
    const size_t T = chain.size() - 1;
    std::vector<int> forgets, intros;
    for (size_t t = 1; t <= T; ++t) {
        const auto& below = w.nodes[chain[t - 1]].bag;
        const auto& above = w.nodes[chain[t]].bag;
        std::vector<int> out, in;
        std::set_difference(below.begin(), below.end(), above.begin(), above.end(),
                            std::back_inserter(out));
        std::set_difference(above.begin(), above.end(), below.begin(), below.end(),
                            std::back_inserter(in));
        forgets.insert(forgets.end(), out.rbegin(), out.rend()); // larger label first
        intros.insert(intros.end(), in.begin(), in.end());
    }
    if (forgets.size() < intros.size())
        throw InternalInvariantViolation("chain with more introduces than forgets");

    const size_t total = forgets.size() + intros.size();
    assert(total >= T); // adjacent equal bags cannot survive traversal 1

    std::vector<int> bag = w.nodes[chain[0]].bag;
    int prev = chain[0];
    size_t fi = 0, ii = 0;
    for (size_t step = 1; step <= total; ++step) {
        bool take_forget = (step % 2 == 1 && fi < forgets.size()) || ii >= intros.size();
        if (take_forget) {
            int v = forgets[fi++];
            auto it = std::lower_bound(bag.begin(), bag.end(), v);
            assert(it != bag.end() && *it == v);
            bag.erase(it);
        } else {
            int v = intros[ii++];
            auto it = std::lower_bound(bag.begin(), bag.end(), v);
            assert(it == bag.end() || *it != v);
            bag.insert(it, v);
        }
        int node;
        if (step < total) {
            node = w.add(bag);
        } else {
            node = chain.back();
            if (w.nodes[node].bag != bag)
                throw InternalInvariantViolation("chain rebuild missed the top bag");
        }
        w.nodes[node].kids = {prev};
        w.nodes[prev].parent = node;
        prev = node;
    }
    for (size_t t = 1; t < T; ++t)
        w.nodes[chain[t]].alive = false;
}

void rebuild_all_chains(Work& w) {
    const int limit = static_cast<int>(w.nodes.size()) - 1;
    for (int b = 1; b <= limit; ++b) {
        if (!w.nodes[b].alive || w.nodes[b].kids.size() == 1)
            continue; // chain bottoms are leaves and joins
        std::vector<int> chain = {b};
        int cur = b;
        while (w.nodes[cur].parent != 0 && w.nodes[w.nodes[cur].parent].kids.size() == 1) {
            cur = w.nodes[cur].parent;
            chain.push_back(cur);
        }
        if (chain.size() > 1)
            rebuild_chain(w, chain);
    }
}

void check_join_path_properties(const NiceTreeDecomposition& nice) {
    const int m = nice.node_count();
    // nearest join strictly above each node, computed root-down
    std::vector<int> above(m + 1, 0);
    for (int i = m; i >= 1; --i) {
        const NiceNode& nd = nice.node(i);
        for (int c : nd.children)
            above[c] = nd.kind == NodeKind::Join ? i : above[i];
    }
    for (int j = 1; j <= m; ++j) {
        if (nice.node(j).kind != NodeKind::Join || above[j] == 0)
            continue;
        int i = above[j];
        // (i): an ancestor join never has a larger bag
        if (nice.node(i).bag.size() > nice.node(j).bag.size())
            throw InternalInvariantViolation("join " + std::to_string(i) +
                                             " has a larger bag than join " + std::to_string(j) +
                                             " below it");
        // (ii): interior kinds alternate F,I,... then trail with Forgets
        std::vector<NodeKind> kinds;
        for (int x = nice.node(j).parent; x != i; x = nice.node(x).parent)
            kinds.push_back(nice.node(x).kind);
        size_t t = 0;
        while (t < kinds.size() &&
               kinds[t] == (t % 2 == 0 ? NodeKind::Forget : NodeKind::Introduce))
            ++t;
        for (; t < kinds.size(); ++t)
            if (kinds[t] != NodeKind::Forget)
                throw InternalInvariantViolation("join-to-join path above node " +
                                                 std::to_string(j) +
                                                 " is not alternating-then-forgets");
    }
}

} // namespace

NiceTreeDecomposition nicify(const TreeDecomposition& td) {
    if (td.node_count <= 0)
        throw EmptyDecomposition();
    const int input_width = td.width();

    Work w;
    w.nodes.resize(1);
    for (int i = 1; i <= td.node_count; ++i)
        w.add(sorted_unique(td.bags[i]));
    w.root = td.declared_root();
    if (w.root < 1 || w.root > td.node_count)
        throw IndexOutOfRange(w.root, td.node_count);
    {
        RootedTree t = orient(td.node_count, td.edges, w.root);
        for (int i = 1; i <= td.node_count; ++i) {
            w.nodes[i].parent = t.parent[i];
            w.nodes[i].kids = t.kids[i];
        }
    }

    merge_contained(w);
    pad_small_children(w);
    expand_branching(w);
    if (!w.nodes[w.root].bag.empty()) {
        int top = w.add({});
        w.nodes[top].kids = {w.root};
        w.nodes[w.root].parent = top;
        w.root = top;
    }
    rebuild_all_chains(w);

    // Renumber alive nodes so ids 1..m' are the post order, then classify.
    std::vector<int> new_id(w.nodes.size(), 0);
    std::vector<int> order;
    std::vector<std::pair<int, size_t>> stack = {{w.root, 0}};
    while (!stack.empty()) {
        auto& [node, next] = stack.back();
        if (next < w.nodes[node].kids.size()) {
            stack.emplace_back(w.nodes[node].kids[next++], 0);
        } else {
            order.push_back(node);
            new_id[node] = static_cast<int>(order.size());
            stack.pop_back();
        }
    }
    const int m = static_cast<int>(order.size());
    std::vector<std::vector<int>> bags(m + 1);
    std::vector<std::pair<int, int>> edges;
    for (int old : order) {
        bags[new_id[old]] = std::move(w.nodes[old].bag);
        for (int c : w.nodes[old].kids)
            edges.emplace_back(new_id[old], new_id[c]);
    }

    NiceTreeDecomposition nice;
    try {
        nice = NiceTreeDecomposition::from_structure(std::move(bags), std::move(edges), m);
    } catch (const Error& e) {
        throw InternalInvariantViolation(std::string("nicify produced a bad structure: ") +
                                         e.what());
    }

    const int n = nice.vertex_count();
    if (nice.width() > input_width)
        throw InternalInvariantViolation("nicify increased the width");
    if (n > 0 && nice.node_count() >= 4 * n - 1)
        throw InternalInvariantViolation("nicify exceeded the 4n-1 node bound");
    auto counts = nice.kind_counts();
    if (counts.join != counts.leaf - 1 || counts.forget != n)
        throw InternalInvariantViolation("nicify kind counts are off");
    check_join_path_properties(nice);
    return nice;
}

// --- .td I/O -------------------------------------------------------------------

TreeDecomposition read_td(std::istream& in) {
    TreeDecomposition td;
    std::string line;
    long lineno = 0;
    bool have_header = false;
    long declared_n = 0;
    std::vector<char> bag_seen;

    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos)
            continue;
        std::istringstream ss(line);
        if (line[0] == 'c') {
            std::string c, word;
            ss >> c >> word;
            if (word == "root") {
                if (!(ss >> td.root) || td.root < 1)
                    throw ParseError(lineno, "bad root comment");
            }
            continue;
        }
        if (line[0] == 's') {
            std::string s, kind;
            long m = 0, bagsize = 0;
            if (!(ss >> s >> kind >> m >> bagsize >> declared_n) || kind != "td" || m < 0)
                throw ParseError(lineno, "bad solution line '" + line + "'");
            if (have_header)
                throw ParseError(lineno, "duplicate solution line");
            have_header = true;
            td.node_count = static_cast<int>(m);
            td.bags.assign(m + 1, {});
            bag_seen.assign(m + 1, 0);
            continue;
        }
        if (!have_header)
            throw ParseError(lineno, "entry before the solution line");
        if (line[0] == 'b') {
            std::string b;
            long i = 0;
            ss >> b >> i;
            if (ss.fail() || i < 1 || i > td.node_count)
                throw ParseError(lineno, "bad bag id");
            if (bag_seen[i])
                throw ParseError(lineno, "duplicate bag " + std::to_string(i));
            bag_seen[i] = 1;
            std::vector<int> bag;
            long v;
            while (ss >> v) {
                if (v < 1 || (declared_n > 0 && v > declared_n))
                    throw ParseError(lineno, "bag vertex " + std::to_string(v) +
                                                 " outside 1.." + std::to_string(declared_n));
                bag.push_back(static_cast<int>(v));
            }
            if (!ss.eof())
                throw ParseError(lineno, "bad bag line '" + line + "'");
            td.bags[i] = sorted_unique(std::move(bag));
            continue;
        }
        long a = 0, b = 0;
        std::istringstream edge(line);
        if (!(edge >> a >> b) || a < 1 || b < 1 || a > td.node_count || b > td.node_count)
            throw ParseError(lineno, "bad edge line '" + line + "'");
        std::string extra;
        if (edge >> extra)
            throw ParseError(lineno, "trailing tokens on edge line");
        td.edges.emplace_back(static_cast<int>(a), static_cast<int>(b));
    }
    if (!have_header)
        throw ParseError(lineno, "missing solution line");
    if (td.root > td.node_count)
        throw ParseError(lineno, "root " + std::to_string(td.root) + " out of range");
    return td;
}

namespace {

void write_td_body(std::ostream& out, const TreeDecomposition& td) {
    int max_vertex = 0;
    size_t largest = 0;
    for (int i = 1; i <= td.node_count; ++i) {
        largest = std::max(largest, td.bags[i].size());
        for (int v : td.bags[i])
            max_vertex = std::max(max_vertex, v);
    }
    out << "s td " << td.node_count << " " << largest << " " << max_vertex << "\n";
    for (int i = 1; i <= td.node_count; ++i) {
        out << "b " << i;
        for (int v : td.bags[i])
            out << " " << v;
        out << "\n";
    }
    for (auto [a, b] : td.edges)
        out << a << " " << b << "\n";
}

} // namespace

void write_td(std::ostream& out, const TreeDecomposition& td) {
    if (td.root > 0)
        out << "c root " << td.root << "\n";
    write_td_body(out, td);
}

void write_td(std::ostream& out, const NiceTreeDecomposition& td) {
    out << "c root " << td.root() << "\n";
    for (int i = 1; i <= td.node_count(); ++i) {
        const NiceNode& nd = td.node(i);
        out << "c kind " << i << " " << kind_name(nd.kind);
        if (nd.kind == NodeKind::Introduce || nd.kind == NodeKind::Forget)
            out << " " << nd.vertex;
        out << "\n";
    }
    write_td_body(out, td.as_tree_decomposition());
}

} // namespace treediag
