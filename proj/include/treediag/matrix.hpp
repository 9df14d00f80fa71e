#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include "treediag/scalar.hpp"

namespace treediag {

// Underlying graph of a symmetric matrix: vertices 1..n, one edge per nonzero
// off-diagonal entry. Adjacency lists are sorted ascending.
struct UnderlyingGraph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;  // u < v, sorted
    std::vector<std::vector<int>> adjacency; // 1-based

    long edge_count() const { return static_cast<long>(edges.size()); }
};

// Symmetric matrix over vertices 1..n storing only nonzero entries, with
// per-vertex sorted off-diagonal adjacency so a bag-restricted row can be
// enumerated by merging against the sorted bag.
class SparseSymmetricMatrix {
public:
    struct Entry {
        int u = 0, v = 0;
        Scalar value;
    };

    SparseSymmetricMatrix() = default;

    // Accepts entries in either orientation; (u,v) and (v,u) must agree when
    // both appear. Zero values are dropped. Throws IndexOutOfRange,
    // AsymmetricInput, ModeMismatch.
    static SparseSymmetricMatrix from_entries(int n, const std::vector<Entry>& entries,
                                              ScalarMode mode = ScalarMode::Exact);

    int order() const { return n_; }
    ScalarMode mode() const { return mode_; }

    // Zero scalar of the matrix mode when the entry is absent.
    Scalar at(int u, int v) const;
    const Scalar& diagonal(int v) const;
    // Off-diagonal nonzeros of row v as (partner, value), partner ascending.
    const std::vector<std::pair<int, Scalar>>& row_offdiag(int v) const;

    // Canonical nonzero entries, u <= v, sorted lexicographically.
    std::vector<Entry> entries() const;
    long nonzero_count() const; // canonical entries

    UnderlyingGraph underlying_graph() const;

    // M - c*I. Same dimension and off-diagonal structure, hence the same
    // underlying graph. An explicit tolerance is carried over; the default
    // tolerance is recomputed from the shifted entries.
    SparseSymmetricMatrix shift_diagonal(const Scalar& c) const;

    // Relabels vertices through to_new (1-based permutation of 1..n).
    SparseSymmetricMatrix permuted(const std::vector<int>& to_new) const;

    // Real-mode pivot threshold: 1e-12 * max|entry| unless set explicitly.
    // Exact mode always reports 0.
    double zero_tolerance() const;
    void set_zero_tolerance(double tol);

    double max_abs_entry() const { return max_abs_; }

    bool operator==(const SparseSymmetricMatrix& other) const;

private:
    void check_vertex(int v) const;

    int n_ = 0;
    ScalarMode mode_ = ScalarMode::Exact;
    std::vector<Scalar> diag_;                            // [1..n], zeros allowed
    std::vector<std::vector<std::pair<int, Scalar>>> adj_; // [1..n], sorted, nonzero
    double max_abs_ = 0.0;
    double tol_override_ = -1.0; // < 0: use the default
};

// Matrix-Market-style symmetric coordinate format:
//   %%MatrixMarket matrix coordinate <rational|real> symmetric
//   % comments
//   n n nnz
//   u v value        (one per line, u >= v)
// Rational values are "p" or "p/q"; real values are shortest round-trip
// decimals, so write/read round-trips bit-exactly in both modes.
SparseSymmetricMatrix read_matrix_market(std::istream& in);
void write_matrix_market(std::ostream& out, const SparseSymmetricMatrix& m);

} // namespace treediag
