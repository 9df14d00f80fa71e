#pragma once

#include "treediag/matrix.hpp"
#include "treediag/treedecomp.hpp"

#include <string>
#include <vector>

namespace testutil {

inline std::string data_path(const std::string& name) {
    return std::string(TESTDATA_DIR) + "/" + name;
}

// The worked 6-vertex instance used throughout: a singular matrix with two
// zero diagonal entries, its graph of width 2, and an 11-node nice tree
// decomposition whose node ids equal the bottom-up evaluation order.
inline treediag::SparseSymmetricMatrix worked_matrix() {
    using treediag::Scalar;
    using E = treediag::SparseSymmetricMatrix::Entry;
    std::vector<E> entries = {
        {3, 3, Scalar::exact(1)},  {4, 4, Scalar::exact(1)},  {5, 5, Scalar::exact(1)},
        {6, 6, Scalar::exact(1)},  {1, 3, Scalar::exact(2)},  {1, 4, Scalar::exact(-1)},
        {2, 4, Scalar::exact(1)},  {3, 4, Scalar::exact(3)},  {3, 5, Scalar::exact(2)},
        {4, 6, Scalar::exact(-1)}, {5, 6, Scalar::exact(-1)},
    };
    return treediag::SparseSymmetricMatrix::from_entries(6, entries);
}

inline treediag::TreeDecomposition worked_tree_plain() {
    treediag::TreeDecomposition td;
    td.node_count = 11;
    td.bags = {{},      {1, 2, 4}, {1, 4}, {1, 3, 4}, {3, 4}, {3, 5, 6},
               {3, 6},  {3, 4, 6}, {3, 4}, {3, 4},    {3},    {}};
    td.edges = {{1, 2}, {2, 3}, {3, 4}, {4, 9}, {5, 6},
                {6, 7}, {7, 8}, {8, 9}, {9, 10}, {10, 11}};
    td.root = 11;
    return td;
}

inline treediag::NiceTreeDecomposition worked_tree() {
    const treediag::TreeDecomposition td = worked_tree_plain();
    return treediag::NiceTreeDecomposition::from_structure(td.bags, td.edges, td.root);
}

} // namespace testutil
