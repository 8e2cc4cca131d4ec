import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from quasisym.datasets import PRIMES, SYMMETRIC, VISION
from quasisym.tables import (
    ContingencyTable,
    DimensionError,
    EmptyTableError,
    NegativeEntryError,
    NonIntegerError,
    NonSquareError,
    SymmetricTable,
    format_table,
    load_table,
    mh_residual,
    parse_table,
    si_mle,
    symmetric_mle,
    write_table,
)


def test_margins_and_total():
    assert VISION.dim == 4
    assert VISION.total == 7477
    assert VISION.row_margin(0) == 1520 + 266 + 124 + 66
    assert VISION.col_margin(3) == 66 + 78 + 205 + 492


def test_counts_are_read_only():
    with pytest.raises(ValueError):
        VISION.counts[0, 0] = 1


@pytest.mark.parametrize(
    "cells, err",
    [
        (np.zeros((0, 0)), EmptyTableError),
        (np.ones((2, 3)), NonSquareError),
        (np.ones((1, 1)), DimensionError),
        (np.array([[1, 2], [3, 4.5]]), NonIntegerError),
        (np.array([[1, -2], [3, 4]]), NegativeEntryError),
        (np.zeros((2, 2), dtype=int), EmptyTableError),
    ],
)
def test_validation(cells, err):
    with pytest.raises(err):
        ContingencyTable(cells)


def test_parse_errors():
    with pytest.raises(NonSquareError):
        parse_table("1,2\n3\n")
    with pytest.raises(NonIntegerError):
        parse_table("1,x\n3,4\n")
    with pytest.raises(EmptyTableError):
        parse_table("\n\n")


def test_data_files_match_builtin_tables(data_dir):
    assert np.array_equal(load_table(data_dir / "vision.csv").counts, VISION.counts)
    assert np.array_equal(load_table(data_dir / "primes.csv").counts, PRIMES.counts)
    assert np.array_equal(load_table(data_dir / "symmetric.csv").counts, SYMMETRIC.counts)


def test_csv_round_trip(tmp_path):
    path = tmp_path / "t.csv"
    write_table(VISION, path)
    assert np.array_equal(load_table(path).counts, VISION.counts)
    assert format_table(VISION).splitlines()[0] == "1520,266,124,66"


def test_json_round_trip():
    text = PRIMES.to_json()
    assert json.loads(text)["total"] == 122
    assert np.array_equal(ContingencyTable.from_json(text).counts, PRIMES.counts)


def test_symmetric_mle_primes_exact():
    s = symmetric_mle(PRIMES).values
    expected = {(0, 0): 1 / 61, (0, 1): 7 / 122, (0, 2): 6 / 61, (1, 1): 13 / 122, (1, 2): 10 / 61, (2, 2): 29 / 122}
    for (i, j), v in expected.items():
        assert s[i, j] == pytest.approx(v, abs=1e-15)
        assert s[j, i] == s[i, j]


def test_si_mle_sums_to_one():
    s = si_mle(VISION)
    assert s.sum() == pytest.approx(1.0)
    assert s[0] == pytest.approx((VISION.row_margin(0) + VISION.col_margin(0)) / (2 * 7477))


def test_symmetric_table_rejects_asymmetry():
    with pytest.raises(ValueError):
        SymmetricTable(np.array([[0.5, 0.2], [0.1, 0.2]]))
    with pytest.raises(ValueError):
        SymmetricTable(np.array([[0.5, 0.1], [0.1, 0.5]]))


@settings(max_examples=60, deadline=None)
@given(arrays(np.int64, (4, 4), elements=st.integers(0, 500)))
def test_symmetric_mle_properties(cells):
    if cells.sum() == 0:
        return
    s = symmetric_mle(cells).values
    assert np.array_equal(s, s.T)
    assert s.sum() == pytest.approx(1.0, abs=1e-12)
    assert np.allclose(mh_residual(s), 0.0)


def test_si_mle_primes_and_empty_category():
    assert si_mle(PRIMES)[0] == pytest.approx(21 / 122, abs=1e-15)
    s = si_mle(np.array([[0, 0, 0], [0, 4, 1], [0, 2, 3]]))
    assert s[0] == 0.0
    assert np.allclose(si_mle(np.ones((5, 5), dtype=int)), 0.2)


def test_mh_residual_sums_to_zero(rng):
    for _ in range(20):
        p = rng.random((5, 5))
        assert abs(mh_residual(p).sum()) < 1e-12
    assert np.allclose(mh_residual(np.full((2, 2), 0.25)), 0.0)
