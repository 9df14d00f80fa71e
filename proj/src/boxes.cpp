#include "treediag/boxes.hpp"

#include <algorithm>
#include <cassert>
#include <optional>

namespace treediag {

void DiagonalArray::emit(int vertex, Scalar value) {
    if (value.mode() != mode_)
        throw InternalInvariantViolation("diagonal value in the wrong scalar mode");
    if (!seen_.insert(vertex).second)
        throw InternalInvariantViolation("vertex " + std::to_string(vertex) + " emitted twice");
    entries_.push_back({vertex, std::move(value)});
}

namespace {

// Tally sink bound to one node's kind; every call is a no-op without a counter.
class Ops {
public:
    Ops(OperationCounter* c, NodeKind k) : c_(c), kind_(static_cast<int>(k)) {}

    void mul(long long n = 1) {
        if (c_) {
            c_->total.mul += n;
            c_->by_kind[kind_].mul += n;
        }
    }
    void div(long long n = 1) {
        if (c_) {
            c_->total.div += n;
            c_->by_kind[kind_].div += n;
        }
    }
    void addsub(long long n = 1) {
        if (c_) {
            c_->total.addsub += n;
            c_->by_kind[kind_].addsub += n;
        }
    }
    void row_op() {
        if (c_) {
            ++c_->total.row_ops;
            ++c_->by_kind[kind_].row_ops;
        }
    }
    void join_elim(int label) {
        if (c_)
            ++c_->join_elim_rows[label];
    }

private:
    OperationCounter* c_;
    int kind_;
};

int pivot_index(const std::vector<Scalar>& row, double tol) {
    for (size_t j = 0; j < row.size(); ++j)
        if (!is_zero(row[j], tol))
            return static_cast<int>(j);
    return -1;
}

// Reduce a loose row against echelon rows (n1 parallel to labels in rows):
// while its pivot column collides with an existing row's pivot, subtract the
// right multiple of that row. A row that runs out of nonzeros emits
// (label, 0); a surviving row is inserted at its echelon position.
//
// join_elim_rows only charges subtractions that leave the row with a pivot
// strictly further right; the one that empties the row is in the op totals
// but advances nothing. The charge is therefore deferred until the next
// pivot scan shows the row survived.
void settle_row(std::vector<int>& rows, std::vector<std::vector<Scalar>>& n1, ScalarMode mode,
                int label, std::vector<Scalar> row, DiagonalArray& diag, const BoxOptions& o,
                Ops& ops, bool count_join_elims) {
    bool subtracted = false;
    for (;;) {
        int t = pivot_index(row, o.tol);
        if (t < 0) {
            if (o.trace)
                o.trace->emit(label, Scalar::zero(mode));
            diag.emit(label, Scalar::zero(mode));
            return;
        }
        if (subtracted && count_join_elims)
            ops.join_elim(label);
        subtracted = false;
        size_t pos = 0;
        int collide = -1;
        for (; pos < n1.size(); ++pos) {
            int piv = pivot_index(n1[pos], o.tol);
            if (piv == t) {
                collide = static_cast<int>(pos);
                break;
            }
            if (piv > t)
                break;
        }
        if (collide < 0) {
            rows.insert(rows.begin() + static_cast<long>(pos), label);
            n1.insert(n1.begin() + static_cast<long>(pos), std::move(row));
            return;
        }
        const auto& eliminator = n1[collide];
        Scalar c = div(row[t], eliminator[t]);
        ops.div();
        if (o.trace)
            o.trace->addrow(label, rows[collide], -c);
        ops.row_op();
        subtracted = true;
        for (size_t j = t + 1; j < row.size(); ++j) {
            row[j] -= c * eliminator[j];
            ops.mul();
            ops.addsub();
        }
        row[t] = Scalar::zero(mode); // cancellation is exact by construction
        ops.mul();
        ops.addsub();
    }
}

} // namespace

Box leaf_box(const std::vector<int>& bag, ScalarMode mode) {
    assert(std::is_sorted(bag.begin(), bag.end()) &&
           std::adjacent_find(bag.begin(), bag.end()) == bag.end());
    Box b(mode);
    b.cols_ = bag;
    b.n2_.assign(bag.size(), std::vector<Scalar>(bag.size(), Scalar::zero(mode)));
    return b;
}

Box introduce_box(Box child, int v) {
    auto it = std::lower_bound(child.cols_.begin(), child.cols_.end(), v);
    if (it != child.cols_.end() && *it == v)
        throw VertexAlreadyPresent(v);
    const auto p = it - child.cols_.begin();
    const Scalar z = Scalar::zero(child.mode_);
    child.cols_.insert(it, v);
    for (auto& row : child.n1_)
        row.insert(row.begin() + p, z);
    for (auto& row : child.n2_)
        row.insert(row.begin() + p, z);
    child.n2_.insert(child.n2_.begin() + p,
                     std::vector<Scalar>(child.cols_.size(), z));
    return child;
}

Box join_box(Box left, Box right, DiagonalArray& diag, const BoxOptions& options) {
    if (left.cols_ != right.cols_)
        throw BagMismatch();
    if (left.mode_ != right.mode_)
        throw ModeMismatch();
    for (int w : right.rows_)
        if (std::find(left.rows_.begin(), left.rows_.end(), w) != left.rows_.end())
            throw InternalInvariantViolation("type-i row " + std::to_string(w) +
                                             " on both sides of a join");
    Ops ops(options.counter, NodeKind::Join);

    const size_t k2 = left.cols_.size();
    for (size_t i = 0; i < k2; ++i)
        for (size_t j = i; j < k2; ++j) {
            Scalar s = left.n2_[i][j] + right.n2_[i][j];
            ops.addsub();
            left.n2_[i][j] = s;
            if (i != j)
                left.n2_[j][i] = s;
        }
    for (size_t r = 0; r < right.rows_.size(); ++r)
        settle_row(left.rows_, left.n1_, left.mode_, right.rows_[r], std::move(right.n1_[r]),
                   diag, options, ops, true);
    return left;
}

Box forget_box(int v, Box child, const SparseSymmetricMatrix& m, DiagonalArray& diag,
               const BoxOptions& options) {
    auto it = std::lower_bound(child.cols_.begin(), child.cols_.end(), v);
    if (it == child.cols_.end() || *it != v)
        throw VertexNotInBag(v);
    const size_t p = static_cast<size_t>(it - child.cols_.begin());
    const size_t k2 = child.cols_.size();
    const ScalarMode mode = child.mode_;
    const double tol = options.tol;
    Ops ops(options.counter, NodeKind::Forget);
    auto scalar_of = [mode](long x) {
        return mode == ScalarMode::Exact ? Scalar::exact(x) : Scalar::real(static_cast<double>(x));
    };

    // Entry introduction: each stored input entry touching v whose partner is
    // in the bag joins N2 here, exactly once over the whole run.
    {
        size_t ci = 0;
        for (const auto& [u, val] : m.row_offdiag(v)) {
            while (ci < k2 && child.cols_[ci] < u)
                ++ci;
            if (ci == k2)
                break;
            if (child.cols_[ci] != u)
                continue;
            Scalar s = child.n2_[ci][p] + val;
            ops.addsub();
            child.n2_[ci][p] = s;
            child.n2_[p][ci] = s;
            if (options.trace)
                options.trace->entry(u, v);
        }
        const Scalar dvv = m.diagonal(v);
        if (!is_zero(dvv)) { // literal: absent entries are exactly zero
            child.n2_[p][p] += dvv;
            ops.addsub();
            if (options.trace)
                options.trace->entry(v, v);
        }
    }

    Scalar d = child.n2_[p][p];
    std::vector<Scalar> yv; // v's bag row, v's own column dropped
    yv.reserve(k2 - 1);
    for (size_t j = 0; j < k2; ++j)
        if (j != p)
            yv.push_back(child.n2_[p][j]);
    std::vector<int> rcols; // the reduced bag
    rcols.reserve(k2 - 1);
    for (size_t j = 0; j < k2; ++j)
        if (j != p)
            rcols.push_back(child.cols_[j]);

    int u_row = -1; // bottom-most type-i row with a nonzero in v's column
    for (int r = static_cast<int>(child.rows_.size()) - 1; r >= 0; --r)
        if (!is_zero(child.n1_[r][p], tol)) {
            u_row = r;
            break;
        }

    // Clears a freshly pivoted row (coefficients over rcols, pivot value
    // `pivot`) out of the reduced N2 block, tracing one row operation per
    // nonzero and applying the symmetric rank-one update.
    auto clear_row_with_pivot = [&](std::vector<std::vector<Scalar>>& n2,
                                    const std::vector<Scalar>& y, const Scalar& pivot,
                                    int pivot_label) {
        std::vector<size_t> nz;
        for (size_t j = 0; j < y.size(); ++j)
            if (!is_zero(y[j], tol))
                nz.push_back(j);
        std::vector<Scalar> w(y.size(), Scalar::zero(mode));
        for (size_t j : nz) {
            w[j] = div(y[j], pivot);
            ops.div();
            if (options.trace)
                options.trace->addrow(rcols[j], pivot_label, -w[j]);
            ops.row_op();
        }
        for (size_t a : nz)
            for (size_t b : nz) {
                if (b < a)
                    continue;
                Scalar delta = y[a] * w[b];
                ops.mul();
                n2[a][b] -= delta;
                ops.addsub();
                if (a != b)
                    n2[b][a] = n2[a][b];
            }
    };
    auto reduced_n2 = [&] {
        std::vector<std::vector<Scalar>> out;
        out.reserve(k2 - 1);
        for (size_t i = 0; i < k2; ++i) {
            if (i == p)
                continue;
            std::vector<Scalar> row;
            row.reserve(k2 - 1);
            for (size_t j = 0; j < k2; ++j)
                if (j != p)
                    row.push_back(child.n2_[i][j]);
            out.push_back(std::move(row));
        }
        return out;
    };

    if (u_row < 0) {
        // Case 1: v's column holds no type-i entries, so every type-i row
        // keeps its pivot when the column is dropped.
        Box out(mode);
        out.cols_ = rcols; // copy: clear_row_with_pivot still reads rcols
        out.rows_ = std::move(child.rows_);
        out.n1_ = std::move(child.n1_);
        for (auto& row : out.n1_)
            row.erase(row.begin() + static_cast<long>(p));
        out.n2_ = reduced_n2();

        if (pivot_index(yv, tol) < 0) { // 1(a): row already diagonal
            if (options.trace)
                options.trace->emit(v, d);
            diag.emit(v, d);
        } else if (!is_zero(d, tol)) { // 1(b): clear the row with pivot d_v
            clear_row_with_pivot(out.n2_, yv, d, v);
            if (options.trace)
                options.trace->emit(v, d);
            diag.emit(v, d);
        } else { // 1(c): no pivot; v's row buffers as type-i (or dies to 0)
            settle_row(out.rows_, out.n1_, mode, v, std::move(yv), diag, options, ops, false);
        }
        return out;
    }

    // Case 2: u is the bottom-most row with a nonzero in v's column.
    const int u = child.rows_[u_row];
    const Scalar alpha = child.n1_[u_row][p];
    {
        // Fold u into the other rows holding v-column entries, bottom-up.
        // Each such row's pivot sits strictly left of u's, so echelon form
        // and the pivot set survive (checked).
        const std::vector<Scalar>& urow = child.n1_[u_row];
        const int upiv = pivot_index(urow, tol);
        for (int r = u_row - 1; r >= 0; --r) {
            if (is_zero(child.n1_[r][p], tol))
                continue;
            const int before = pivot_index(child.n1_[r], tol);
            Scalar c = div(child.n1_[r][p], alpha);
            ops.div();
            if (options.trace)
                options.trace->addrow(child.rows_[r], u, -c);
            ops.row_op();
            for (size_t j = static_cast<size_t>(upiv); j < k2; ++j) {
                if (j == p)
                    continue;
                child.n1_[r][j] -= c * urow[j];
                ops.mul();
                ops.addsub();
            }
            child.n1_[r][p] = Scalar::zero(mode); // exact cancellation
            ops.mul();
            ops.addsub();
            if (pivot_index(child.n1_[r], tol) != before)
                throw InternalInvariantViolation("pivot moved while clearing a forgotten column");
        }
    }
    std::vector<Scalar> zu; // u's row, v's column dropped
    zu.reserve(k2 - 1);
    for (size_t j = 0; j < k2; ++j)
        if (j != p)
            zu.push_back(child.n1_[u_row][j]);

    if (!is_zero(d, tol)) {
        // Cancel d_v against the off-diagonal alpha: row v -= (d/2a) row u.
        Scalar c = div(d, scalar_of(2) * alpha);
        ops.mul();
        ops.div();
        if (options.trace)
            options.trace->addrow(v, u, -c);
        ops.row_op();
        for (size_t j = 0; j < yv.size(); ++j) {
            yv[j] -= c * zu[j];
            ops.mul();
            ops.addsub();
        }
        d = Scalar::zero(mode); // d - 2*(d/2a)*a, u's own diagonal being zero
        ops.mul();
        ops.addsub();
    }
    // The symmetric pair (0,a;a,0) becomes diag(-a,a):
    // row u += 1/2 row v, then row v -= row u (columns alike).
    const Scalar half = mode == ScalarMode::Exact ? Scalar::exact(1, 2) : Scalar::real(0.5);
    if (options.trace)
        options.trace->addrow(u, v, half);
    ops.row_op();
    for (size_t j = 0; j < zu.size(); ++j) {
        zu[j] += half * yv[j];
        ops.mul();
        ops.addsub();
    }
    if (options.trace)
        options.trace->addrow(v, u, -scalar_of(1));
    ops.row_op();
    for (size_t j = 0; j < yv.size(); ++j) {
        yv[j] -= zu[j];
        ops.addsub();
    }
    const Scalar dv = -alpha;
    const Scalar du = alpha;

    Box out(mode);
    out.cols_ = rcols; // copy: clear_row_with_pivot still reads rcols
    out.rows_ = std::move(child.rows_);
    out.rows_.erase(out.rows_.begin() + u_row);
    out.n1_ = std::move(child.n1_);
    out.n1_.erase(out.n1_.begin() + u_row);
    for (auto& row : out.n1_)
        row.erase(row.begin() + static_cast<long>(p));
    out.n2_ = reduced_n2();

    // Both new pivots clear their rows; v's first.
    clear_row_with_pivot(out.n2_, yv, dv, v);
    clear_row_with_pivot(out.n2_, zu, du, u);
    if (options.trace) {
        options.trace->emit(v, dv);
        options.trace->emit(u, du);
    }
    diag.emit(v, dv);
    diag.emit(u, du);
    return out;
}

void verify_box_invariants(const Box& box, int width, double tol) {
    const size_t k2 = box.cols_.size();
    if (static_cast<int>(k2) > width + 1)
        throw InternalInvariantViolation("bag exceeds width+1 labels");
    for (size_t j = 1; j < k2; ++j)
        if (box.cols_[j - 1] >= box.cols_[j])
            throw InternalInvariantViolation("bag labels not strictly ascending");
    if (box.rows_.size() > k2)
        throw InternalInvariantViolation("more type-i rows than bag columns");
    {
        std::set<int> seen;
        for (int w : box.rows_) {
            if (!seen.insert(w).second)
                throw InternalInvariantViolation("duplicate type-i label");
            if (std::binary_search(box.cols_.begin(), box.cols_.end(), w))
                throw InternalInvariantViolation("label is both type-i and type-ii");
        }
    }
    if (box.n1_.size() != box.rows_.size())
        throw InternalInvariantViolation("N1 row count disagrees with the label list");
    int prev = -1;
    for (const auto& row : box.n1_) {
        if (row.size() != k2)
            throw InternalInvariantViolation("N1 row of the wrong length");
        int piv = -1;
        for (size_t j = 0; j < k2; ++j) {
            bool z = is_zero(row[j], tol);
            if (piv < 0 && !z)
                piv = static_cast<int>(j);
            if (row[j].mode() != box.mode_)
                throw InternalInvariantViolation("mixed scalar modes in N1");
        }
        if (piv < 0)
            throw InternalInvariantViolation("pivotless type-i row retained");
        if (piv <= prev)
            throw InternalInvariantViolation("N1 is not in echelon form");
        prev = piv;
    }
    if (box.n2_.size() != k2)
        throw InternalInvariantViolation("N2 of the wrong order");
    for (size_t i = 0; i < k2; ++i) {
        if (box.n2_[i].size() != k2)
            throw InternalInvariantViolation("N2 row of the wrong length");
        for (size_t j = 0; j < k2; ++j) {
            if (box.n2_[i][j].mode() != box.mode_)
                throw InternalInvariantViolation("mixed scalar modes in N2");
            if (!(box.n2_[i][j] == box.n2_[j][i]))
                throw InternalInvariantViolation("N2 is not symmetric");
        }
    }
}

namespace {

Box take(std::optional<Box>& slot) {
    Box b = std::move(*slot);
    slot.reset();
    return b;
}

} // namespace

DiagonalArray congruent_diagonal(const SparseSymmetricMatrix& m, const NiceTreeDecomposition& t,
                                 const DiagonalizeOptions& options) {
    validate(t.as_tree_decomposition(), m.underlying_graph());

    std::optional<SparseSymmetricMatrix> permuted;
    std::optional<NiceTreeDecomposition> renamed;
    Relabeling rl;
    const SparseSymmetricMatrix* work = &m;
    const NiceTreeDecomposition* tree = &t;
    if (options.relabel) {
        rl = relabel_by_forget_order(t);
        permuted.emplace(m.permuted(rl.to_new));
        renamed.emplace(t.relabeled(rl.to_new));
        work = &*permuted;
        tree = &*renamed;
        if (options.trace)
            options.trace->relabel_output(&rl.to_old);
    }

    BoxOptions bo{options.counter, options.trace, work->zero_tolerance()};
    DiagonalArray diag(work->mode());
    std::vector<std::optional<Box>> slot(static_cast<size_t>(tree->node_count()) + 1);
    for (int i : tree->post_order()) {
        const NiceNode& nd = tree->node(i);
        Box box = [&]() -> Box {
            switch (nd.kind) {
            case NodeKind::Leaf:
                return leaf_box(nd.bag, work->mode());
            case NodeKind::Introduce:
                return introduce_box(take(slot[nd.children[0]]), nd.vertex);
            case NodeKind::Forget:
                return forget_box(nd.vertex, take(slot[nd.children[0]]), *work, diag, bo);
            case NodeKind::Join:
                return join_box(take(slot[nd.children[0]]), take(slot[nd.children[1]]), diag, bo);
            }
            throw InternalInvariantViolation("unhandled node kind");
        }();
        if (options.trace)
            options.trace->node(i);
        if (options.check_invariants) {
            verify_box_invariants(box, tree->width(), bo.tol);
            for (int w : box.type_i_labels())
                if (diag.contains(w))
                    throw InternalInvariantViolation("emitted vertex still has a type-i row");
            for (int w : box.type_ii_labels())
                if (diag.contains(w))
                    throw InternalInvariantViolation("emitted vertex still in a bag");
        }
        if (options.observer)
            options.observer(i, box);
        slot[static_cast<size_t>(i)] = std::move(box);
    }

    if (!slot[static_cast<size_t>(tree->root())]->empty())
        throw InternalInvariantViolation("root box is not empty");
    if (diag.size() != work->order())
        throw InternalInvariantViolation("diagonal is missing vertices");
    if (!options.relabel)
        return diag;
    DiagonalArray out(work->mode());
    for (const auto& e : diag.entries())
        out.emit(rl.to_old[static_cast<size_t>(e.vertex)], e.value);
    return out;
}

} // namespace treediag
