"""Backend equivalence and reference checks for the elimination kernels."""

import random
from fractions import Fraction

import pytest

from bundlehunt import _elim_py, kernels

try:
    from bundlehunt import _elim_c
except ImportError:
    _elim_c = None

BACKENDS = [_elim_py] if _elim_c is None else [_elim_py, _elim_c]


def rank_reference(rows, ncols):
    """Plain Gaussian elimination over Fraction, the independent oracle."""
    dense = []
    for cols, vals in rows:
        row = [Fraction(0)] * ncols
        for c, v in zip(cols, vals):
            row[c] = Fraction(v)
        dense.append(row)
    rank = 0
    for col in range(ncols):
        piv = None
        for r in range(rank, len(dense)):
            if dense[r][col] != 0:
                piv = r
                break
        if piv is None:
            continue
        dense[rank], dense[piv] = dense[piv], dense[rank]
        prow = dense[rank]
        for r in range(rank + 1, len(dense)):
            f = dense[r][col] / prow[col]
            if f:
                dense[r] = [x - f * y for x, y in zip(dense[r], prow)]
        rank += 1
    return rank


def random_rows(rng, nrows, ncols, density=0.4, mag=9):
    rows = []
    for _ in range(nrows):
        support = [c for c in range(ncols) if rng.random() < density]
        vals = [rng.randint(-mag, mag) for _ in support]
        pairs = [(c, v) for c, v in zip(support, vals) if v]
        rows.append(([c for c, _ in pairs], [v for _, v in pairs]))
    return rows


@pytest.mark.parametrize("backend", BACKENDS, ids=lambda b: b.BACKEND)
def test_rank_matches_fraction_reference(backend, rng):
    for _ in range(150):
        nrows = rng.randint(1, 12)
        ncols = rng.randint(1, 12)
        rows = random_rows(rng, nrows, ncols)
        want = rank_reference(rows, ncols)
        got = backend.rank_rows([(list(c), list(v)) for c, v in rows], ncols)
        assert got == want


@pytest.mark.skipif(_elim_c is None, reason="compiled backend not built")
def test_backends_produce_identical_echelon(rng):
    for _ in range(150):
        nrows = rng.randint(1, 15)
        ncols = rng.randint(1, 15)
        rows = random_rows(rng, nrows, ncols, density=rng.uniform(0.1, 0.7))
        a = _elim_py.echelon([(list(c), list(v)) for c, v in rows], ncols)
        b = _elim_c.echelon([(list(c), list(v)) for c, v in rows], ncols)
        assert a == b


@pytest.mark.parametrize("backend", BACKENDS, ids=lambda b: b.BACKEND)
def test_early_stop_matches_full_rank(backend, rng):
    for _ in range(60):
        nrows = rng.randint(1, 10)
        ncols = rng.randint(1, 10)
        rows = random_rows(rng, nrows, ncols, density=0.6)
        full = backend.rank_rows([(list(c), list(v)) for c, v in rows], ncols)
        stopped = backend.rank_rows(
            [(list(c), list(v)) for c, v in rows], ncols, min(nrows, ncols)
        )
        # the stop bound is a true bound, so both runs agree
        assert stopped == full


@pytest.mark.parametrize("backend", BACKENDS, ids=lambda b: b.BACKEND)
def test_det_small_cases(backend):
    assert backend.det_int([]) == 1
    assert backend.det_int([[7]]) == 7
    assert backend.det_int([[1, 2], [3, 4]]) == -2
    assert backend.det_int([[0, 1], [1, 0]]) == -1
    assert backend.det_int([[1, 2], [2, 4]]) == 0


@pytest.mark.parametrize("backend", BACKENDS, ids=lambda b: b.BACKEND)
def test_det_multiplicative(backend, rng):
    def matmul(a, b):
        n = len(a)
        return [
            [sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)
        ]

    for _ in range(40):
        n = rng.randint(1, 5)
        a = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)]
        b = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)]
        assert backend.det_int(matmul(a, b)) == backend.det_int(a) * backend.det_int(b)


def test_selected_backend_exposes_api():
    assert kernels.BACKEND in ("python", "cython")
    assert callable(kernels.echelon)
    assert callable(kernels.rank_rows)
    assert callable(kernels.det_int)
