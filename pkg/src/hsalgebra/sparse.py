"""Sparse matrices on finite label sets with faithfulness tracking.

A :class:`TruncOp` is the compression of an infinite operator to a finite set
of basis labels.  ``safe_cols`` lists the columns on which the compression
equals the infinite operator exactly (no image component leaves the window),
so relation checks restricted to safe columns are exact statements.

Entries are python ints, :class:`~fractions.Fraction` or complex floats.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from .errors import ParameterError


class TruncOp:
    __slots__ = ("rows", "cols", "_cols", "safe_cols", "_row_pos", "_col_pos")

    def __init__(self, rows, cols, entries=None, safe_cols=None):
        self.rows = tuple(rows)
        self.cols = tuple(cols)
        self._row_pos = {r: i for i, r in enumerate(self.rows)}
        self._col_pos = {c: i for i, c in enumerate(self.cols)}
        self._cols = {}
        for (r, c), v in (entries or {}).items():
            if r not in self._row_pos or c not in self._col_pos:
                raise ParameterError(f"entry ({r!r}, {c!r}) outside the basis")
            if v != 0:
                self._cols.setdefault(c, {})[r] = v
        self.safe_cols = frozenset(self.cols if safe_cols is None else safe_cols)
        if not self.safe_cols <= self._col_pos.keys():
            raise ParameterError("safe columns must be basis columns")

    @classmethod
    def _from_columns(cls, rows, cols, columns, safe_cols):
        op = cls(rows, cols, None, safe_cols)
        op._cols = {c: col for c, col in columns.items() if col}
        return op

    @classmethod
    def diagonal(cls, basis, fn, safe_cols=None):
        basis = tuple(basis)
        return cls(basis, basis, {(b, b): fn(b) for b in basis}, safe_cols)

    @classmethod
    def identity(cls, basis):
        return cls.diagonal(basis, lambda b: 1)

    @classmethod
    def zeros(cls, rows, cols):
        return cls(rows, cols)

    def __getitem__(self, key):
        r, c = key
        return self._cols.get(c, {}).get(r, 0)

    def column(self, c) -> dict:
        return dict(self._cols.get(c, {}))

    def entries(self):
        """Nonzero entries as ``((row, col), value)`` in basis order."""
        out = []
        for c in self.cols:
            col = self._cols.get(c)
            if col:
                out.extend(((r, c), col[r]) for r in sorted(col, key=self._row_pos.__getitem__))
        return out

    @property
    def nnz(self) -> int:
        return sum(len(col) for col in self._cols.values())

    @property
    def shape(self):
        return len(self.rows), len(self.cols)

    def is_zero(self) -> bool:
        return not self._cols

    def _same_shape(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise ParameterError("operands act on different bases")

    def _combine(self, other, sign):
        self._same_shape(other)
        columns = {c: dict(col) for c, col in self._cols.items()}
        for c, col in other._cols.items():
            tgt = columns.setdefault(c, {})
            for r, v in col.items():
                w = tgt.get(r, 0) + sign * v
                if w == 0:
                    tgt.pop(r, None)
                else:
                    tgt[r] = w
        return TruncOp._from_columns(
            self.rows, self.cols, columns, self.safe_cols & other.safe_cols
        )

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        if c == 0:
            return TruncOp(self.rows, self.cols, None, self.safe_cols)
        columns = {k: {r: c * v for r, v in col.items()} for k, col in self._cols.items()}
        return TruncOp._from_columns(self.rows, self.cols, columns, self.safe_cols)

    def __mul__(self, c):
        return self.scale(c)

    __rmul__ = __mul__

    def __matmul__(self, other):
        """Composition ``self @ other``.

        Column ``c`` of the product is faithful when ``c`` is safe for
        ``other`` and every label it reaches is safe for ``self``.
        """
        if self.cols != other.rows:
            if set(self.cols) != set(other.rows):
                raise ParameterError("inner bases do not match")
        columns, safe = {}, []
        for c in other.cols:
            src = other._cols.get(c, {})
            out = {}
            ok = c in other.safe_cols
            for k, b in src.items():
                if k not in self.safe_cols:
                    ok = False
                for r, a in self._cols.get(k, {}).items():
                    w = out.get(r, 0) + a * b
                    if w == 0:
                        out.pop(r, None)
                    else:
                        out[r] = w
            columns[c] = out
            if ok:
                safe.append(c)
        return TruncOp._from_columns(self.rows, other.cols, columns, safe)

    def adjoint(self, safe_cols=()):
        """Conjugate transpose.

        Faithfulness of the adjoint's columns cannot be read off the
        compression, so the caller supplies it (default: none).
        """
        columns = {}
        for c, col in self._cols.items():
            for r, v in col.items():
                columns.setdefault(r, {})[c] = v.conjugate() if isinstance(v, complex) else v
        return TruncOp._from_columns(self.cols, self.rows, columns, safe_cols)

    def with_safe(self, safe_cols):
        return TruncOp._from_columns(self.rows, self.cols, self._cols, safe_cols)

    def restrict(self, rows, cols, safe_cols=None):
        """Submatrix on the given row and column labels."""
        rows, cols = tuple(rows), tuple(cols)
        rset = set(rows)
        columns = {}
        for c in cols:
            col = {r: v for r, v in self._cols.get(c, {}).items() if r in rset}
            if col:
                columns[c] = col
        if safe_cols is None:
            safe_cols = [c for c in cols if c in self.safe_cols]
        return TruncOp._from_columns(rows, cols, columns, safe_cols)

    def mismatched_columns(self, other, cols=None, tol=0):
        """Columns (default: common safe ones) where the two operators differ."""
        self._same_shape(other)
        if cols is None:
            cols = [c for c in self.cols if c in self.safe_cols and c in other.safe_cols]
        bad = []
        for c in cols:
            a, b = self._cols.get(c, {}), other._cols.get(c, {})
            for r in a.keys() | b.keys():
                d = a.get(r, 0) - b.get(r, 0)
                if (abs(d) > tol) if tol else d != 0:
                    bad.append(c)
                    break
        return bad

    def equals(self, other, cols=None, tol=0) -> bool:
        return not self.mismatched_columns(other, cols, tol)

    def max_abs_entry(self, cols=None):
        cols = self.cols if cols is None else cols
        best, arg = 0, None
        for c in cols:
            for r, v in self._cols.get(c, {}).items():
                if abs(v) > best:
                    best, arg = abs(v), (r, c)
        return best, arg

    def is_diagonal(self) -> bool:
        return all(set(col) <= {c} for c, col in self._cols.items())

    def diagonal_entries(self) -> dict:
        return {c: col[c] for c, col in self._cols.items() if c in col}

    def rank(self) -> int:
        """Exact rank by Gaussian elimination over the rationals."""
        pivots = {}  # pivot row -> reduced column vector
        rank = 0
        for c in self.cols:
            vec = {r: Fraction(v) for r, v in self._cols.get(c, {}).items()}
            while vec:
                r = min(vec, key=self._row_pos.__getitem__)
                piv = pivots.get(r)
                if piv is None:
                    pivots[r] = vec
                    rank += 1
                    break
                factor = vec[r] / piv[r]
                for k, v in piv.items():
                    w = vec.get(k, 0) - factor * v
                    if w == 0:
                        vec.pop(k, None)
                    else:
                        vec[k] = w
        return rank

    def zero_columns(self):
        return [c for c in self.cols if not self._cols.get(c)]

    def zero_rows(self):
        hit = set()
        for col in self._cols.values():
            hit.update(col)
        return [r for r in self.rows if r not in hit]

    def to_dense(self, dtype=complex):
        out = np.zeros(self.shape, dtype=dtype)
        for c, col in self._cols.items():
            j = self._col_pos[c]
            for r, v in col.items():
                out[self._row_pos[r], j] = dtype(v) if dtype is not object else v
        return out

    def norm_estimate(self, cols=None) -> float:
        """Float spectral norm of the compression (optionally on some columns)."""
        op = self if cols is None else self.restrict(self.rows, cols)
        if op.is_zero():
            return 0.0
        return float(np.linalg.norm(op.to_dense(), 2))

    def __repr__(self):
        return f"TruncOp(shape={self.shape}, nnz={self.nnz}, safe={len(self.safe_cols)})"


def block_diag(a: TruncOp, b: TruncOp) -> TruncOp:
    rows, cols = a.rows + b.rows, a.cols + b.cols
    entries = dict(a.entries())
    entries.update(b.entries())
    return TruncOp(rows, cols, entries, a.safe_cols | b.safe_cols)


def block_offdiag(upper: TruncOp, lower: TruncOp, safe_cols=None) -> TruncOp:
    """``[[0, upper], [lower, 0]]`` on ``upper.rows + upper.cols``.

    ``upper`` maps the second summand to the first, ``lower`` the reverse.
    """
    if upper.rows != lower.cols or upper.cols != lower.rows:
        raise ParameterError("off-diagonal blocks do not fit together")
    basis = upper.rows + upper.cols
    entries = dict(upper.entries())
    entries.update(lower.entries())
    if safe_cols is None:
        safe_cols = lower.safe_cols | upper.safe_cols
    return TruncOp(basis, basis, entries, safe_cols)
