#pragma once

#include <functional>
#include <map>
#include <set>
#include <vector>

#include "treediag/matrix.hpp"
#include "treediag/trace.hpp"
#include "treediag/treedecomp.hpp"

namespace treediag {

struct DiagonalEntry {
    int vertex;
    Scalar value;
};

// Append-only output of the diagonalization: one (vertex, value) pair per
// vertex, in emission order. Vertices stay distinct at all times; a repeat
// means the algorithm itself went wrong.
class DiagonalArray {
public:
    explicit DiagonalArray(ScalarMode mode) : mode_(mode) {}

    ScalarMode mode() const { return mode_; }
    void emit(int vertex, Scalar value);
    int size() const { return static_cast<int>(entries_.size()); }
    bool contains(int vertex) const { return seen_.count(vertex) > 0; }
    const std::vector<DiagonalEntry>& entries() const { return entries_; }

private:
    ScalarMode mode_;
    std::vector<DiagonalEntry> entries_;
    std::set<int> seen_;
};

// Exact tallies of the field work done by the node procedures. Opt-in: the
// procedures only count when handed a counter, so the default path stays lean.
struct OperationCounter {
    struct Tally {
        long long mul = 0, div = 0, addsub = 0, row_ops = 0;
        long long field_ops() const { return mul + div + addsub; }
    };
    Tally total;
    Tally by_kind[4]; // indexed by static_cast<int>(NodeKind)

    // How many pivot-advancing join eliminations each type-i row has
    // absorbed over its lifetime (by row label, as processed). The final
    // subtraction that empties a row is in the op totals but not here: it
    // moves nothing rightward. With forget-order relabeling this stays at
    // most k per row.
    std::map<int, long long> join_elim_rows;
};

// Shared context for the node procedures.
struct BoxOptions {
    OperationCounter* counter = nullptr;
    TraceWriter* trace = nullptr;
    double tol = 0.0; // zero threshold for real mode; 0 in exact mode
};

// The live state of the partial diagonalization at one decomposition node:
//   type-ii: rows/columns indexed by the current bag (ascending labels),
//            stored as the symmetric block N2;
//   type-i:  buffered rows awaiting a pivot, stored as the echelon block N1
//            (one row per label, strictly increasing pivot columns) against
//            the type-ii columns. Their mutual block and diagonals are zero
//            and are not stored.
class Box {
public:
    explicit Box(ScalarMode mode) : mode_(mode) {}

    ScalarMode mode() const { return mode_; }
    const std::vector<int>& type_ii_labels() const { return cols_; }
    const std::vector<int>& type_i_labels() const { return rows_; }
    int type_ii_count() const { return static_cast<int>(cols_.size()); } // k''
    int type_i_count() const { return static_cast<int>(rows_.size()); } // k'
    bool empty() const { return cols_.empty() && rows_.empty(); }

    // 0-based block accessors
    const Scalar& n1(int r, int c) const { return n1_[r][c]; }
    const Scalar& n2(int i, int j) const { return n2_[i][j]; }

private:
    friend Box leaf_box(const std::vector<int>&, ScalarMode);
    friend Box introduce_box(Box, int);
    friend Box join_box(Box, Box, DiagonalArray&, const BoxOptions&);
    friend Box forget_box(int, Box, const SparseSymmetricMatrix&, DiagonalArray&,
                          const BoxOptions&);
    friend void verify_box_invariants(const Box&, int, double);

    ScalarMode mode_;
    std::vector<int> cols_; // bag labels, ascending
    std::vector<int> rows_; // type-i labels, echelon order
    std::vector<std::vector<Scalar>> n1_; // rows_.size() x cols_.size()
    std::vector<std::vector<Scalar>> n2_; // cols_.size() square, symmetric
};

// The four node procedures. All take and return boxes by value; the driver
// moves child boxes in.
Box leaf_box(const std::vector<int>& bag, ScalarMode mode);

// Insert vertex v into the bag: a zero row/column in N2 and a zero column in
// N1, both at v's sorted position. Throws VertexAlreadyPresent.
Box introduce_box(Box child, int v);

// Same-bag combination: N2 blocks add entrywise; each right type-i row is
// reduced against the colliding pivot rows and either lands at its echelon
// position or comes out zero, in which case (label, 0) is emitted. Throws
// BagMismatch.
Box join_box(Box left, Box right, DiagonalArray& diag, const BoxOptions& options = {});

// Forget v: first every input entry m[u,v] with u in the child bag (and
// m[v,v]) is added into N2 — each entry of M enters exactly once, here, at
// the forget of its lower-forgotten endpoint. Then v's row is diagonalized:
//   1(a) nothing left in the row        -> emit (v, d_v)
//   1(b) bag entries, pivot d_v != 0    -> clear them with d_v, emit (v, d_v)
//   1(c) bag entries, d_v = 0           -> reduce against type-i pivots;
//                                          emit (v, 0) or become type-i
//   2    type-i column entries          -> pick u = the bottom-most such row,
//        fold the others into it (echelon form and pivots preserved), cancel
//        d_v, then split the symmetric pair (0,a;a,0) into pivots -a and a,
//        clear both rows (v's first), emit (v, -a) and (u, a)
// Throws VertexNotInBag.
Box forget_box(int v, Box child, const SparseSymmetricMatrix& m, DiagonalArray& diag,
               const BoxOptions& options = {});

// Defensive whole-box check: ascending distinct bag labels, type-i labels
// disjoint from the bag, k' <= k'' <= width+1, N1 in echelon form with
// literal zeros where eliminations put them, N2 symmetric, uniform scalar
// mode. Throws InternalInvariantViolation.
void verify_box_invariants(const Box& box, int width, double tol);

struct DiagonalizeOptions {
    bool relabel = true;          // renumber vertices by forget order first
    bool check_invariants = true; // verify_box_invariants after every node
    OperationCounter* counter = nullptr;
    TraceWriter* trace = nullptr;
    // Called after each node with the node id and its finished box (labels
    // are post-relabel ones when relabeling is active).
    std::function<void(int, const Box&)> observer;
};

// Runs the whole bottom-up pass and returns the diagonal congruent to m:
// validates t against m's underlying graph, optionally relabels by forget
// order, dispatches the four procedures over post_order, and checks that the
// root box is empty with every vertex emitted exactly once. The result (and
// any trace) speaks the caller's original vertex labels.
DiagonalArray congruent_diagonal(const SparseSymmetricMatrix& m, const NiceTreeDecomposition& t,
                                 const DiagonalizeOptions& options = {});

} // namespace treediag
