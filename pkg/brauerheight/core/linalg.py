# Copyright brauerheight developers 2024 - Present
# Full MIT License can be found in `LICENSE.txt` at the project root.

from __future__ import annotations

from typing import List, Sequence

import galois
import numpy as np


def _as_matrix(rows: Sequence[Sequence[int]], p: int, columns: int):
    GF = galois.GF(p)
    data = np.array([[x % p for x in row] for row in rows], dtype=np.int64)
    return GF(data.reshape(len(rows), columns))


def fp_rank(rows: Sequence[Sequence[int]], p: int, columns: int) -> int:
    """Rank over F_p of the matrix given by ``rows``."""
    if not rows or not columns:
        return 0
    return int(np.linalg.matrix_rank(_as_matrix(rows, p, columns)))


def fp_null_space(rows: Sequence[Sequence[int]], p: int, columns: int) -> List[List[int]]:
    """Basis of ``{x : A x = 0}`` over F_p, one vector per list.

    Parameters
    ----------
    rows: Sequence[Sequence[:class:`int`]]
        The matrix A, row by row; may be empty.
    p: :class:`int`
        The prime.
    columns: :class:`int`
        Number of unknowns, needed when ``rows`` is empty.
    """
    if not columns:
        return []
    if not rows:
        return [[int(i == j) for j in range(columns)] for i in range(columns)]

    basis = _as_matrix(rows, p, columns).null_space()
    return [[int(x) for x in vector] for vector in np.asarray(basis).reshape(-1, columns)]


def fp_kernel_dim(rows: Sequence[Sequence[int]], p: int, columns: int) -> int:
    return columns - fp_rank(rows, p, columns)
