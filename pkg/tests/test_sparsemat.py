import numpy as np
import pytest

from mathrank.sparsemat import SparseWeightMatrix


def random_matrix(rng, n_rows, n_cols, density=0.2):
    dense = (rng.random((n_rows, n_cols)) < density) * rng.random((n_rows, n_cols))
    rows, cols = np.nonzero(dense)
    return SparseWeightMatrix.from_arrays(
        (n_rows, n_cols), rows, cols, dense[rows, cols]), dense


def test_entries_stored_column_major():
    m = SparseWeightMatrix.from_entries(
        (3, 3), [(2, 1, 0.5), (0, 0, 1.0), (1, 1, 0.1), (0, 2, 2.0)])
    assert list(m.iter_entries()) == [
        (0, 0, 1.0), (1, 1, 0.1), (2, 1, 0.5), (0, 2, 2.0)]
    assert m.nnz == 4
    assert list(m.colidx) == [0, 1, 1, 2]


def test_to_dense_round_trip(rng):
    m, dense = random_matrix(rng, 7, 5)
    np.testing.assert_array_equal(m.to_dense(), dense)


def test_column_sums(rng):
    m, dense = random_matrix(rng, 8, 6)
    np.testing.assert_allclose(m.column_sums(), dense.sum(axis=0), atol=1e-15)


def test_column_sums_with_empty_columns():
    m = SparseWeightMatrix.from_entries((2, 3), [(0, 2, 3.0), (1, 2, 1.0)])
    np.testing.assert_array_equal(m.column_sums(), [0.0, 0.0, 4.0])


def test_csr_view_matches_dense(rng):
    m, dense = random_matrix(rng, 9, 9)
    indptr, colidx, values = m.csr
    rebuilt = np.zeros(m.shape)
    for i in range(m.shape[0]):
        for k in range(indptr[i], indptr[i + 1]):
            rebuilt[i, colidx[k]] = values[k]
    np.testing.assert_array_equal(rebuilt, dense)
    # columns ascend within each row
    for i in range(m.shape[0]):
        cols = colidx[indptr[i]:indptr[i + 1]]
        assert np.all(np.diff(cols) > 0)


def test_duplicate_entries_rejected():
    with pytest.raises(ValueError, match="duplicate"):
        SparseWeightMatrix.from_entries((2, 2), [(0, 1, 1.0), (0, 1, 2.0)])


@pytest.mark.parametrize("entry", [(-1, 0, 1.0), (2, 0, 1.0), (0, -1, 1.0), (0, 2, 1.0)])
def test_out_of_bounds_rejected(entry):
    with pytest.raises(ValueError, match="out of bounds"):
        SparseWeightMatrix.from_entries((2, 2), [entry])


@pytest.mark.parametrize("weight", [0.0, -0.5])
def test_nonpositive_weights_rejected(weight):
    with pytest.raises(ValueError, match="positive"):
        SparseWeightMatrix.from_entries((2, 2), [(0, 1, weight)])


def test_empty_matrix():
    m = SparseWeightMatrix.from_entries((4, 4), [])
    assert m.nnz == 0
    np.testing.assert_array_equal(m.to_dense(), np.zeros((4, 4)))
    np.testing.assert_array_equal(m.column_sums(), np.zeros(4))


def test_with_values_keeps_pattern():
    m = SparseWeightMatrix.from_entries((2, 2), [(0, 1, 1.0), (1, 0, 2.0)])
    m2 = m.with_values(np.array([0.5, 0.25]))
    assert list(m2.iter_entries()) == [(1, 0, 0.5), (0, 1, 0.25)]
    with pytest.raises(ValueError):
        m.with_values(np.array([1.0]))


def test_arrays_are_read_only():
    m = SparseWeightMatrix.from_entries((2, 2), [(0, 1, 1.0)])
    with pytest.raises(ValueError):
        m.values[0] = 2.0
    with pytest.raises(ValueError):
        m.rowidx[0] = 1
