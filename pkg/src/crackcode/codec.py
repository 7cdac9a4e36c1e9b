"""Crack-code encoder and decoder over a pixel matrix.

An image is cut into chains.  Each chain starts at a pixel, remembers that
pixel's value and then walks through 4-adjacent pixels of the same value,
recording one direction code per step::

    0 = left   (col - 1)
    1 = up     (row - 1)
    2 = right  (col + 1)
    3 = down   (row + 1)

At every step the first neighbour, in the order 0, 1, 2, 3, that lies inside
the image, has not been visited and carries the chain's value is entered.
The walk stops when no neighbour qualifies.  The encoder scans rows top to
bottom and columns left to right, starting a new chain at every pixel that no
earlier chain has visited, so the chains partition the image.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import IncompleteCover, OverlapWrite, WalkOutOfBounds

LEFT, UP, RIGHT, DOWN = 0, 1, 2, 3

#: (row step, col step) for each direction code.
STEPS = ((0, -1), (-1, 0), (0, 1), (1, 0))


@dataclass(frozen=True)
class Chain:
    row: int
    col: int
    value: int
    codes: tuple[int, ...] = ()

    def cells(self) -> list[tuple[int, int]]:
        """Positions visited by the walk, starting cell first."""
        i, j = self.row, self.col
        out = [(i, j)]
        for c in self.codes:
            di, dj = STEPS[c]
            i += di
            j += dj
            out.append((i, j))
        return out


@dataclass
class ChainSet:
    rows: int
    cols: int
    chains: list[Chain] = field(default_factory=list)

    @property
    def code_count(self) -> int:
        return sum(len(c.codes) for c in self.chains)


def _padded_cells(matrix: np.ndarray, visited: np.ndarray | None = None) -> list:
    """Flatten ``matrix`` into a list framed by a one-cell ``None`` border.

    Visited cells are also replaced by ``None``, so a single equality test
    against the chain value covers bounds, visited and value checks at once.
    """
    n, m = matrix.shape
    cells = [None] * ((n + 2) * (m + 2))
    rows = matrix.tolist()
    stride = m + 2
    for i, row in enumerate(rows):
        base = (i + 1) * stride + 1
        cells[base:base + m] = row
    if visited is not None:
        for i, j in zip(*np.nonzero(visited)):
            cells[(i + 1) * stride + j + 1] = None
    return cells


def _walk(cells: list, pos: int, g, stride: int) -> list[int]:
    # Tail recursion of the greedy tracer unrolled into a loop; recursion
    # depth would otherwise grow with region size.
    codes = []
    append = codes.append
    while True:
        if cells[pos - 1] == g:
            pos -= 1
            append(LEFT)
        elif cells[pos - stride] == g:
            pos -= stride
            append(UP)
        elif cells[pos + 1] == g:
            pos += 1
            append(RIGHT)
        elif cells[pos + stride] == g:
            pos += stride
            append(DOWN)
        else:
            return codes
        cells[pos] = None


def trace_chain(matrix, visited: np.ndarray, i: int, j: int, g) -> list[int]:
    """Greedy walk from ``(i, j)``; marks every entered pixel in ``visited``.

    ``visited[i, j]`` must already be set by the caller.
    """
    matrix = np.asarray(matrix)
    n, m = matrix.shape
    if not (0 <= i < n and 0 <= j < m):
        raise IndexError(f"start ({i}, {j}) outside {n}x{m} matrix")
    cells = _padded_cells(matrix, visited)
    stride = m + 2
    codes = _walk(cells, (i + 1) * stride + j + 1, g, stride)
    for r, c in Chain(i, j, g, tuple(codes)).cells()[1:]:
        visited[r, c] = True
    return codes


def encode(matrix) -> ChainSet:
    """Cut ``matrix`` into chains in discovery order.  ``matrix`` is not modified."""
    matrix = np.asarray(matrix)
    if matrix.ndim != 2 or 0 in matrix.shape:
        raise ValueError(f"expected a nonempty 2-D matrix, got shape {matrix.shape}")
    n, m = matrix.shape
    stride = m + 2
    cells = _padded_cells(matrix)
    chains = []
    for i in range(n):
        base = (i + 1) * stride + 1
        for j in range(m):
            pos = base + j
            g = cells[pos]
            if g is None:
                continue
            cells[pos] = None
            chains.append(Chain(i, j, g, tuple(_walk(cells, pos, g, stride))))
    return ChainSet(n, m, chains)


def decode(chains: ChainSet, dtype=None) -> np.ndarray:
    """Replay every chain onto an empty matrix.

    Raises if a walk leaves the matrix, if two chains write the same cell or
    if some cell is never written.  ``dtype`` defaults to uint8 when every
    value fits in a byte and uint32 otherwise.
    """
    n, m = chains.rows, chains.cols
    if n <= 0 or m <= 0:
        raise ValueError(f"dimensions must be positive, got {n}x{m}")
    out = [None] * (n * m)
    for k, chain in enumerate(chains.chains):
        i, j, g = chain.row, chain.col, chain.value
        if not (0 <= i < n and 0 <= j < m):
            raise WalkOutOfBounds(f"chain {k} starts at ({i}, {j}) outside {n}x{m}")
        pos = i * m + j
        if out[pos] is not None:
            raise OverlapWrite(f"chain {k} rewrites cell ({i}, {j})")
        out[pos] = g
        for c in chain.codes:
            di, dj = STEPS[c]
            i += di
            j += dj
            if not (0 <= i < n and 0 <= j < m):
                raise WalkOutOfBounds(f"chain {k} steps to ({i}, {j}) outside {n}x{m}")
            pos = i * m + j
            if out[pos] is not None:
                raise OverlapWrite(f"chain {k} rewrites cell ({i}, {j})")
            out[pos] = g
    try:
        missing = out.index(None)
    except ValueError:
        pass
    else:
        raise IncompleteCover(f"cell ({missing // m}, {missing % m}) is never written")
    if dtype is None:
        dtype = np.uint8 if max(out) < 256 and min(out) >= 0 else np.uint32
    return np.array(out, dtype=dtype).reshape(n, m)
