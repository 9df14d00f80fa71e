#include "treediag/spectral.hpp"

#include "treediag/oracle.hpp"

#include "testutil.hpp"

#include <doctest.h>

using namespace treediag;

namespace {

DiagonalArray exact_diag(const std::vector<long>& values) {
    DiagonalArray d(ScalarMode::Exact);
    int v = 1;
    for (long x : values)
        d.emit(v++, Scalar::exact(x));
    return d;
}

} // namespace

TEST_SUITE_BEGIN("spectral");

TEST_CASE("inertia, rank, and determinant of a plain diagonal") {
    DiagonalArray d = exact_diag({2, -3, 0, 5, 0});
    Inertia in = inertia_of(d);
    CHECK(in == Inertia{2, 1, 2});
    CHECK(in.rank() == 3);
    CHECK(determinant_of(d) == Scalar::exact(0));

    DiagonalArray nz = exact_diag({2, -3, 5});
    CHECK(determinant_of(nz) == Scalar::exact(-30));
    CHECK(inertia_of(nz).rank() == 3);
}

TEST_CASE("real-mode inertia honors the zero tolerance") {
    DiagonalArray d(ScalarMode::Real);
    d.emit(1, Scalar::real(1e-15));
    d.emit(2, Scalar::real(-2.0));
    d.emit(3, Scalar::real(3.0));
    CHECK(inertia_of(d) == Inertia{2, 1, 0});        // exact-zero test only
    CHECK(inertia_of(d, 1e-12) == Inertia{1, 1, 1}); // 1e-15 collapses to zero

    CHECK(!tolerance_sensitive(d, 0.0));
    CHECK(tolerance_sensitive(d, 0.5e-15)); // 1e-15 lands in (tol, 10*tol]
    CHECK(!tolerance_sensitive(d, 1e-12));  // ...but is well below this one
    CHECK(tolerance_sensitive(d, 0.3));     // -2 and 3 fall inside (0.3, 3.0]
}

TEST_CASE("worked example: rank, determinant, inertia, eigenvalue counts") {
    SparseSymmetricMatrix m = testutil::worked_matrix();
    NiceTreeDecomposition t = testutil::worked_tree();

    DiagonalArray d = congruent_diagonal(m, t);
    Inertia in = inertia_of(d);
    CHECK(in == Inertia{3, 2, 1});
    CHECK(in.rank() == 5);
    CHECK(determinant_of(d) == Scalar::exact(0));

    // 3 positive, 2 negative, 1 zero eigenvalue
    CHECK(count_eigenvalues_leq(m, t, Scalar::exact(0)) == 3);
    CHECK(count_eigenvalues_in(m, t, IntervalEndpoint::at(Scalar::exact(0)),
                               IntervalEndpoint::pos_inf()) == 3);
    CHECK(count_eigenvalues_in(m, t, IntervalEndpoint::neg_inf(),
                               IntervalEndpoint::at(Scalar::exact(0))) == 3);
    CHECK(count_eigenvalues_in(m, t, IntervalEndpoint::neg_inf(),
                               IntervalEndpoint::pos_inf()) == 6);
    // every eigenvalue lies in (-6, 6) by a crude norm bound
    CHECK(count_eigenvalues_in(m, t, IntervalEndpoint::at(Scalar::exact(-6)),
                               IntervalEndpoint::at(Scalar::exact(6))) == 6);
}

TEST_CASE("interval endpoints must be ordered") {
    SparseSymmetricMatrix m = testutil::worked_matrix();
    NiceTreeDecomposition t = testutil::worked_tree();
    auto at = [](long x) { return IntervalEndpoint::at(Scalar::exact(x)); };

    CHECK_THROWS_AS(count_eigenvalues_in(m, t, at(1), at(1)), InvalidInterval);
    CHECK_THROWS_AS(count_eigenvalues_in(m, t, at(2), at(1)), InvalidInterval);
    CHECK_THROWS_AS(count_eigenvalues_in(m, t, IntervalEndpoint::pos_inf(),
                                         IntervalEndpoint::pos_inf()),
                    InvalidInterval);
    CHECK_THROWS_AS(count_eigenvalues_in(m, t, IntervalEndpoint::pos_inf(),
                                         IntervalEndpoint::neg_inf()),
                    InvalidInterval);
    CHECK_THROWS_AS(count_eigenvalues_in(m, t, IntervalEndpoint::neg_inf(),
                                         IntervalEndpoint::neg_inf()),
                    InvalidInterval);
}

TEST_CASE("the zero matrix has all-zero spectrum") {
    SparseSymmetricMatrix m = SparseSymmetricMatrix::from_entries(4, {});
    TreeDecomposition td;
    td.node_count = 1;
    td.bags = {{}, {1, 2, 3, 4}};
    td.root = 1;
    NiceTreeDecomposition t = nicify(td);

    DiagonalArray d = congruent_diagonal(m, t);
    CHECK(inertia_of(d) == Inertia{0, 0, 4});
    CHECK(determinant_of(d) == Scalar::exact(0));
    CHECK(count_eigenvalues_leq(m, t, Scalar::exact(0)) == 4);
    CHECK(count_eigenvalues_leq(m, t, Scalar::exact(-1)) == 0);
}

TEST_CASE("eigenvalue counts are monotone and consistent on random instances") {
    for (unsigned seed = 1; seed <= 25; ++seed) {
        CAPTURE(seed);
        Instance inst = random_instance(4 + seed % 8, 1 + seed % 3, seed);
        NiceTreeDecomposition t = nicify(inst.decomposition);
        const int n = inst.matrix.order();

        long long prev = 0;
        std::vector<long> cuts = {-20, -5, -1, 0, 1, 5, 20};
        for (size_t i = 0; i < cuts.size(); ++i) {
            long long count = count_eigenvalues_leq(inst.matrix, t, Scalar::exact(cuts[i]));
            CHECK(count >= prev);
            CHECK(count <= n);
            if (i > 0) {
                long long inside = count_eigenvalues_in(
                    inst.matrix, t, IntervalEndpoint::at(Scalar::exact(cuts[i - 1])),
                    IntervalEndpoint::at(Scalar::exact(cuts[i])));
                CHECK(inside == count - prev);
            }
            prev = count;
        }
        // entries are integers bounded by 4, so +-20n is beyond every eigenvalue
        CHECK(count_eigenvalues_leq(inst.matrix, t, Scalar::exact(20L * n)) == n);
        CHECK(count_eigenvalues_in(inst.matrix, t, IntervalEndpoint::neg_inf(),
                                   IntervalEndpoint::pos_inf()) == n);
    }
}

TEST_SUITE_END();
