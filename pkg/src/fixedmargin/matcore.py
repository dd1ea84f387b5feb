"""Binary matrices, their margins, presence lists, and text file formats.

Matrices are plain 2-D ``numpy.uint8`` arrays holding only 0 and 1; every
public function accepts anything array-like and validates it first.
"""
from dataclasses import dataclass
from pathlib import Path
from typing import NamedTuple

import numpy as np

from ._validation import check_binary_matrix
from .exceptions import MatrixFormatError

BY_ROW = "by_row"
BY_COLUMN = "by_column"
FORMATS = ("dense", "csv", "sparse")


class Margins(NamedTuple):
    row_totals: tuple
    col_totals: tuple

    @property
    def total(self):
        return sum(self.row_totals)


def margins(m) -> Margins:
    m = check_binary_matrix(m)
    rows = tuple(int(v) for v in m.sum(axis=1, dtype=np.int64))
    cols = tuple(int(v) for v in m.sum(axis=0, dtype=np.int64))
    return Margins(rows, cols)


def fill_ratio(m) -> float:
    m = check_binary_matrix(m)
    return int(m.sum(dtype=np.int64)) / m.size


@dataclass(eq=True)
class PresenceLists:
    """Per-line sorted index lists of the 1-cells of a matrix.

    With ``orientation == "by_row"`` there is one list per row holding column
    indices; with ``"by_column"`` one list per column holding row indices.
    The lists are the mutable working state of pair extraction.
    """

    orientation: str
    lists: list
    indexed_dim: int
    other_dim: int

    def __post_init__(self):
        if self.orientation not in (BY_ROW, BY_COLUMN):
            raise ValueError(f"unknown orientation {self.orientation!r}")
        if len(self.lists) != self.indexed_dim:
            raise ValueError(
                f"expected {self.indexed_dim} lists, got {len(self.lists)}")
        self.lists = [sorted(int(e) for e in lst) for lst in self.lists]
        for k, lst in enumerate(self.lists):
            if lst and (lst[0] < 0 or lst[-1] >= self.other_dim):
                raise ValueError(
                    f"list {k} holds an index outside [0, {self.other_dim})")
            if any(a == b for a, b in zip(lst, lst[1:])):
                raise ValueError(f"list {k} contains a duplicate element")

    @property
    def shape(self):
        """Shape of the matrix these lists describe."""
        if self.orientation == BY_ROW:
            return (self.indexed_dim, self.other_dim)
        return (self.other_dim, self.indexed_dim)


def orientation_for(shape):
    """Lists run along the larger dimension; ties go to one list per row."""
    n_rows, n_cols = shape
    return BY_ROW if n_cols >= n_rows else BY_COLUMN


def oriented(m, orientation):
    """View of ``m`` whose rows are the lines that own presence lists."""
    return m if orientation == BY_ROW else m.T


def to_presence_lists(m) -> PresenceLists:
    m = check_binary_matrix(m)
    orientation = orientation_for(m.shape)
    om = oriented(m, orientation)
    lists = [np.flatnonzero(line).tolist() for line in om]
    return PresenceLists(orientation, lists, om.shape[0], om.shape[1])


def from_presence_lists(p: PresenceLists) -> np.ndarray:
    om = np.zeros((p.indexed_dim, p.other_dim), dtype=np.uint8)
    for k, lst in enumerate(p.lists):
        om[k, lst] = 1
    return np.ascontiguousarray(oriented(om, p.orientation))


def to_csr(m, orientation=None):
    """Flat ``(indptr, indices)`` form of the presence lists of ``m``."""
    m = check_binary_matrix(m)
    if orientation is None:
        orientation = orientation_for(m.shape)
    om = oriented(m, orientation)
    counts = om.sum(axis=1, dtype=np.int64)
    indptr = np.zeros(om.shape[0] + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    indices = np.nonzero(om)[1].astype(np.int64)
    return orientation, indptr, indices


def from_csr(shape, orientation, indptr, indices):
    n_rows, n_cols = shape
    om_shape = (n_rows, n_cols) if orientation == BY_ROW else (n_cols, n_rows)
    om = np.zeros(om_shape, dtype=np.uint8)
    line = np.repeat(np.arange(om_shape[0]), np.diff(indptr))
    om[line, indices] = 1
    return np.ascontiguousarray(oriented(om, orientation))


# -- file formats ---------------------------------------------------------

def _parse_bit(token, lineno):
    if token == "0":
        return 0
    if token == "1":
        return 1
    raise MatrixFormatError(f"malformed token {token!r}", lineno)


def _parse_delimited(text, sep):
    rows = []
    width = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        tokens = line.split(sep) if sep else line.split()
        row = [_parse_bit(tok.strip(), lineno) for tok in tokens]
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise MatrixFormatError(
                f"ragged row: expected {width} cells, got {len(row)}", lineno)
        rows.append(row)
    if not rows:
        raise MatrixFormatError("empty matrix")
    return np.array(rows, dtype=np.uint8)


def _parse_sparse(text):
    lines = [(n, ln) for n, ln in enumerate(text.splitlines(), start=1)
             if ln.strip()]
    if not lines:
        raise MatrixFormatError("missing header line", 1)

    def ints(lineno, line):
        parts = line.split()
        if len(parts) != 2:
            raise MatrixFormatError(
                f"expected two integers, got {line.strip()!r}", lineno)
        try:
            return int(parts[0]), int(parts[1])
        except ValueError:
            raise MatrixFormatError(
                f"malformed integer in {line.strip()!r}", lineno) from None

    hdr_no, hdr = lines[0]
    n_rows, n_cols = ints(hdr_no, hdr)
    if n_rows < 1 or n_cols < 1:
        raise MatrixFormatError("dimensions must be positive", hdr_no)
    m = np.zeros((n_rows, n_cols), dtype=np.uint8)
    for lineno, line in lines[1:]:
        r, c = ints(lineno, line)
        if not (0 <= r < n_rows and 0 <= c < n_cols):
            raise MatrixFormatError(f"index ({r}, {c}) out of range", lineno)
        if m[r, c]:
            raise MatrixFormatError(f"duplicate entry ({r}, {c})", lineno)
        m[r, c] = 1
    return m


def parse_matrix(text, format="dense"):
    if format == "dense":
        return _parse_delimited(text, None)
    if format == "csv":
        return _parse_delimited(text, ",")
    if format == "sparse":
        return _parse_sparse(text)
    raise ValueError(f"unknown format {format!r}; choose from {FORMATS}")


def format_matrix(m, format="dense"):
    m = check_binary_matrix(m)
    if format in ("dense", "csv"):
        sep = " " if format == "dense" else ","
        buf = np.full((m.shape[0], 2 * m.shape[1]), ord(sep), dtype=np.uint8)
        buf[:, 0::2] = m + ord("0")
        buf[:, -1] = ord("\n")
        return buf.tobytes().decode("ascii")
    if format == "sparse":
        out = [f"{m.shape[0]} {m.shape[1]}\n"]
        out.extend(f"{r} {c}\n" for r, c in zip(*np.nonzero(m)))
        return "".join(out)
    raise ValueError(f"unknown format {format!r}; choose from {FORMATS}")


def read_matrix(path, format="dense"):
    return parse_matrix(Path(path).read_text(), format)


def write_matrix(m, path, format="dense"):
    Path(path).write_text(format_matrix(m, format))


def guess_format(path):
    suffix = Path(path).suffix.lower()
    return {".csv": "csv", ".sparse": "sparse", ".coo": "sparse"}.get(
        suffix, "dense")
