"""Exact dense linear algebra over the rationals.

Everything downstream (graded pieces, resolutions, Ext tables) reduces to
row reduction of matrices with exact rational entries, so this module is
deliberately small and boring: reduced row echelon form, kernels, solving,
and homology of a composable pair of maps.  No floating point is allowed
anywhere; entries are arbitrary-precision rationals kept in lowest terms
(gmpy2's mpq when available, fractions.Fraction otherwise -- they are
interchangeable for arithmetic, hashing and printing).
"""

from __future__ import annotations

from dataclasses import dataclass

try:
    from gmpy2 import mpq as QQ
except ImportError:  # pragma: no cover - gmpy2 is an optional speedup
    from fractions import Fraction as QQ

ZERO = QQ(0)
ONE = QQ(1)


def rational(value):
    """Coerce ints, rationals and "p/q" strings to the exact scalar type.

    Floats are rejected: a decimal literal anywhere would silently poison
    an exact computation.
    """
    if isinstance(value, float):
        raise TypeError("floating point value %r rejected: arithmetic is exact" % (value,))
    if isinstance(value, str):
        text = value.strip().replace("−", "-")
        if any(ch in text for ch in ".eE"):
            raise ValueError("decimal literal %r rejected: write an exact p/q string" % (value,))
        return QQ(text)
    return QQ(value)


def format_rational(value) -> str:
    """Canonical "p/q" (or "p") rendering used in every report."""
    return str(value)


class RationalMatrix:
    """An immutable dense matrix of exact rationals.

    rank(A) + dim ker(A) == cols(A) holds exactly for every instance.
    """

    __slots__ = ("rows", "cols", "data")

    def __init__(self, entries):
        data = [[rational(x) for x in row] for row in entries]
        if data:
            width = len(data[0])
            for row in data:
                if len(row) != width:
                    raise ValueError("ragged rows: expected width %d" % width)
        else:
            width = 0
        self.data = data
        self.rows = len(data)
        self.cols = width

    @classmethod
    def _wrap(cls, data, rows, cols):
        m = object.__new__(cls)
        m.data = data
        m.rows = rows
        m.cols = cols
        return m

    @classmethod
    def identity(cls, n):
        return cls._wrap([[ONE if i == j else ZERO for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def zero(cls, rows, cols):
        return cls._wrap([[ZERO] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def from_columns(cls, columns, rows):
        data = [[ZERO] * len(columns) for _ in range(rows)]
        for j, col in enumerate(columns):
            if len(col) != rows:
                raise ValueError("column %d has length %d, expected %d" % (j, len(col), rows))
            for i, x in enumerate(col):
                data[i][j] = rational(x)
        return cls._wrap(data, rows, len(columns))

    def column(self, j):
        return [row[j] for row in self.data]

    def transpose(self):
        return RationalMatrix._wrap(
            [[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)],
            self.cols, self.rows)

    def is_zero(self):
        return all(x == 0 for row in self.data for x in row)

    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.rows == other.rows and self.cols == other.cols and self.data == other.data

    def __hash__(self):  # pragma: no cover - matrices are not used as keys
        return hash(tuple(tuple(row) for row in self.data))

    def __repr__(self):
        body = "; ".join(" ".join(format_rational(x) for x in row) for row in self.data)
        return "RationalMatrix(%dx%d: %s)" % (self.rows, self.cols, body)

    def __add__(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch in addition")
        return RationalMatrix._wrap(
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.data, other.data)],
            self.rows, self.cols)

    def __sub__(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch in subtraction")
        return RationalMatrix._wrap(
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.data, other.data)],
            self.rows, self.cols)

    def scale(self, c):
        c = rational(c)
        return RationalMatrix._wrap([[c * x for x in row] for row in self.data],
                                    self.rows, self.cols)

    def __neg__(self):
        return self.scale(-1)

    def __mul__(self, other):
        if isinstance(other, RationalMatrix):
            if self.cols != other.rows:
                raise ValueError("shape mismatch: %dx%d times %dx%d"
                                 % (self.rows, self.cols, other.rows, other.cols))
            bt = other.transpose().data
            out = []
            for row in self.data:
                out.append([_dot(row, bcol) for bcol in bt])
            return RationalMatrix._wrap(out, self.rows, other.cols)
        return NotImplemented

    def apply(self, vector):
        """Matrix times column vector, returned as a list."""
        if len(vector) != self.cols:
            raise ValueError("vector length %d, expected %d" % (len(vector), self.cols))
        vec = [rational(x) for x in vector]
        return [_dot(row, vec) for row in self.data]

    def stack_below(self, other):
        if other.cols != self.cols:
            raise ValueError("column count mismatch in vertical stack")
        return RationalMatrix._wrap([list(r) for r in self.data] + [list(r) for r in other.data],
                                    self.rows + other.rows, self.cols)

    def rref(self):
        """Reduced row echelon form.

        Returns (R, pivots, rank): R is the unique RREF of self, pivots the
        strictly increasing tuple of pivot columns.
        """
        m = [list(row) for row in self.data]
        pivots = []
        pr = 0
        for pc in range(self.cols):
            # pick the structurally cheapest nonzero pivot in this column
            best = -1
            for i in range(pr, self.rows):
                if m[i][pc] != 0:
                    if best < 0 or _weight(m[i][pc]) < _weight(m[best][pc]):
                        best = i
            if best < 0:
                continue
            if best != pr:
                m[pr], m[best] = m[best], m[pr]
            inv = 1 / m[pr][pc]
            if inv != 1:
                m[pr] = [x * inv for x in m[pr]]
            prow = m[pr]
            for i in range(self.rows):
                if i != pr and m[i][pc] != 0:
                    f = m[i][pc]
                    mi = m[i]
                    for j in range(pc, self.cols):
                        if prow[j] != 0:
                            mi[j] = mi[j] - f * prow[j]
            pivots.append(pc)
            pr += 1
            if pr == self.rows:
                break
        reduced = RationalMatrix._wrap(m, self.rows, self.cols)
        return reduced, tuple(pivots), len(pivots)

    def rank(self):
        return self.rref()[2]

    def kernel_basis(self):
        """Canonical basis of ker(A), one vector per free column of the RREF."""
        reduced, pivots, rank = self.rref()
        pivot_set = set(pivots)
        basis = []
        for j in range(self.cols):
            if j in pivot_set:
                continue
            vec = [ZERO] * self.cols
            vec[j] = ONE
            for i, pc in enumerate(pivots):
                vec[pc] = -reduced.data[i][j]
            basis.append(vec)
        return Subspace(self.cols, tuple(tuple(v) for v in basis))

    def solve(self, rhs):
        """A particular solution of A x = rhs (free variables zero), or None.

        Raises ValueError if len(rhs) != rows.
        """
        if len(rhs) != self.rows:
            raise ValueError("rhs length %d does not match %d rows" % (len(rhs), self.rows))
        aug = RationalMatrix._wrap(
            [list(row) + [rational(b)] for row, b in zip(self.data, rhs)],
            self.rows, self.cols + 1)
        reduced, pivots, rank = aug.rref()
        if pivots and pivots[-1] == self.cols:
            return None
        sol = [ZERO] * self.cols
        for i, pc in enumerate(pivots):
            sol[pc] = reduced.data[i][self.cols]
        return sol

    def determinant(self):
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        m = [list(row) for row in self.data]
        n = self.rows
        det = ONE
        for k in range(n):
            piv = -1
            for i in range(k, n):
                if m[i][k] != 0:
                    piv = i
                    break
            if piv < 0:
                return ZERO
            if piv != k:
                m[k], m[piv] = m[piv], m[k]
                det = -det
            det = det * m[k][k]
            inv = 1 / m[k][k]
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    f = m[i][k] * inv
                    for j in range(k, n):
                        m[i][j] = m[i][j] - f * m[k][j]
        return det


def _dot(u, v):
    acc = ZERO
    for a, b in zip(u, v):
        if a != 0 and b != 0:
            acc = acc + a * b
    return acc


def _weight(q):
    """Crude size estimate used only to pick pivots that limit blowup."""
    return abs(q.numerator) + q.denominator


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^n given by an explicit basis of row vectors."""

    ambient_dim: int
    basis: tuple

    @property
    def dim(self):
        return len(self.basis)

    def matrix(self):
        return RationalMatrix(self.basis) if self.basis else RationalMatrix.zero(0, self.ambient_dim)

    def verify_independent(self):
        return self.dim == 0 or self.matrix().rank() == self.dim

    def contains(self, vector):
        rs = RowSpace(self.ambient_dim)
        for v in self.basis:
            rs.add(v)
        return rs.contains(vector)


class RowSpace:
    """Incremental echelon container for a growing span of row vectors.

    Used wherever we extend bases, pick complements, or test membership:
    homology representatives, Nakayama complements, generated-submodule
    accumulation.  Rows are kept fully reduced with unit pivots, so
    `reduce` doubles as a normal form modulo the span.
    """

    __slots__ = ("n", "rows", "pivots")

    def __init__(self, n):
        self.n = n
        self.rows = []
        self.pivots = []

    @property
    def dim(self):
        return len(self.rows)

    def reduce(self, vector):
        vec = list(vector)
        for row, p in zip(self.rows, self.pivots):
            c = vec[p]
            if c != 0:
                for j in range(p, self.n):
                    if row[j] != 0:
                        vec[j] = vec[j] - c * row[j]
        return vec

    def contains(self, vector):
        return all(x == 0 for x in self.reduce(vector))

    def add(self, vector):
        """Add a vector to the span; returns True if the dimension grew."""
        vec = self.reduce(vector)
        piv = -1
        for j, x in enumerate(vec):
            if x != 0:
                piv = j
                break
        if piv < 0:
            return False
        inv = 1 / vec[piv]
        if inv != 1:
            vec = [x * inv for x in vec]
        # keep existing rows reduced against the new pivot
        for row in self.rows:
            c = row[piv]
            if c != 0:
                for j in range(piv, self.n):
                    if vec[j] != 0:
                        row[j] = row[j] - c * vec[j]
        at = 0
        while at < len(self.pivots) and self.pivots[at] < piv:
            at += 1
        self.rows.insert(at, vec)
        self.pivots.insert(at, piv)
        return True

    def basis(self):
        return tuple(tuple(row) for row in self.rows)

    def pivot_set(self):
        return set(self.pivots)

    def coordinates(self, vector):
        """Coefficients of vector over the stored basis rows, or None."""
        vec = list(vector)
        coeffs = [ZERO] * len(self.rows)
        for i, (row, p) in enumerate(zip(self.rows, self.pivots)):
            c = vec[p]
            if c != 0:
                coeffs[i] = c
                for j in range(p, self.n):
                    if row[j] != 0:
                        vec[j] = vec[j] - c * row[j]
        if any(x != 0 for x in vec):
            return None
        return coeffs


def homology_dim(d_out, d_in):
    """Homology ker(d_out)/im(d_in) of a composable pair with d_out @ d_in = 0.

    d_out : Q^n -> Q^p and d_in : Q^m -> Q^n.  Returns (dimension, basis of
    representative kernel vectors independent modulo the image).
    Raises InvariantViolation if the pair is not a complex.
    """
    from .errors import InvariantViolation

    if d_in.rows != d_out.cols:
        raise ValueError("maps are not composable: d_out has %d columns, d_in %d rows"
                         % (d_out.cols, d_in.rows))
    if not (d_out * d_in).is_zero():
        raise InvariantViolation("composite d_out . d_in is nonzero; not a complex")
    image = RowSpace(d_out.cols)
    for j in range(d_in.cols):
        image.add(d_in.column(j))
    reps = []
    span = image
    for vec in d_out.kernel_basis().basis:
        residual = span.reduce(vec)
        if any(x != 0 for x in residual):
            reps.append(tuple(vec))
            span.add(vec)
    dim = (d_out.cols - d_out.rank()) - d_in.rank()
    if dim != len(reps):
        raise InvariantViolation("homology representative count %d disagrees with rank count %d"
                                 % (len(reps), dim))
    return dim, reps
