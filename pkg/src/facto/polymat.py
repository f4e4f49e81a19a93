"""Linear algebra over k[x]: matrices, Smith normal form, solving, kernels.

`PolyMatrix` is a dense matrix of `Polynomial` entries.  `GradedMatrix`
adds generator-degree vectors for source and target and realizes degree-0
maps of graded free modules: entry (j, i) must be a scalar multiple of
x^(src_degs[i] - tgt_degs[j]).
"""

from __future__ import annotations

from dataclasses import dataclass

from .fields import Field, FieldError
from .poly import Polynomial


class NoSolution(Exception):
    """A x = B has no solution over k[x]."""


class PolyMatrix:
    __slots__ = ("field", "rows", "cols", "entries")

    def __init__(self, field: Field, entries):
        self.field = field
        self.entries = tuple(tuple(row) for row in entries)
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.rows else 0
        for row in self.entries:
            if len(row) != self.cols:
                raise ValueError("ragged matrix")
            for p in row:
                if p.field != field:
                    raise FieldError("entry field mismatch")

    # constructors ------------------------------------------------------

    @classmethod
    def zero(cls, field: Field, rows: int, cols: int) -> "PolyMatrix":
        z = Polynomial.zero(field)
        return cls(field, [[z] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, field: Field, n: int) -> "PolyMatrix":
        z, o = Polynomial.zero(field), Polynomial.one(field)
        return cls(field, [[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def scalar(cls, field: Field, n: int, poly: Polynomial) -> "PolyMatrix":
        z = Polynomial.zero(field)
        return cls(field, [[poly if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def from_rows(cls, field: Field, rows: int, cols: int, entry):
        return cls(field, [[entry(i, j) for j in range(cols)] for i in range(rows)])

    # arithmetic --------------------------------------------------------

    def _check_same(self, other: "PolyMatrix"):
        self.field.check(other.field)

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        self._check_same(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return PolyMatrix(
            self.field,
            [
                [a + b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.entries, other.entries)
            ],
        )

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        return self + (-other)

    def __neg__(self) -> "PolyMatrix":
        return PolyMatrix(self.field, [[-p for p in row] for row in self.entries])

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        self._check_same(other)
        if self.cols != other.rows:
            raise ValueError(f"dimension mismatch {self.cols} vs {other.rows}")
        z = Polynomial.zero(self.field)
        out = [[z] * other.cols for _ in range(self.rows)]
        for i in range(self.rows):
            for k in range(self.cols):
                a = self.entries[i][k]
                if a.is_zero():
                    continue
                for j in range(other.cols):
                    b = other.entries[k][j]
                    if not b.is_zero():
                        out[i][j] = out[i][j] + a * b
        return PolyMatrix(self.field, out)

    def scale(self, poly: Polynomial) -> "PolyMatrix":
        return PolyMatrix(self.field, [[poly * p for p in row] for row in self.entries])

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(self.field, list(zip(*self.entries)) if self.rows else [])

    def hstack(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.rows != other.rows:
            raise ValueError("row count mismatch")
        return PolyMatrix(self.field, [r1 + r2 for r1, r2 in zip(self.entries, other.entries)])

    def vstack(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.cols != other.cols:
            raise ValueError("column count mismatch")
        return PolyMatrix(self.field, self.entries + other.entries)

    def submatrix(self, row_idx, col_idx) -> "PolyMatrix":
        return PolyMatrix(
            self.field, [[self.entries[i][j] for j in col_idx] for i in row_idx]
        )

    def column(self, j: int):
        return [self.entries[i][j] for i in range(self.rows)]

    def is_zero(self) -> bool:
        return all(p.is_zero() for row in self.entries for p in row)

    def __eq__(self, other):
        return (
            isinstance(other, PolyMatrix)
            and self.field == other.field
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.field, self.entries))

    def __repr__(self):
        body = "; ".join(", ".join(repr(p) for p in row) for row in self.entries)
        return f"PolyMatrix({self.rows}x{self.cols}: [{body}])"

    # determinant -------------------------------------------------------

    def det(self) -> Polynomial:
        """Determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of non-square matrix")
        n = self.rows
        if n == 0:
            return Polynomial.one(self.field)
        m = [list(row) for row in self.entries]
        sign = 1
        prev = Polynomial.one(self.field)
        for k in range(n - 1):
            if m[k][k].is_zero():
                pr = next((i for i in range(k + 1, n) if not m[i][k].is_zero()), None)
                if pr is None:
                    return Polynomial.zero(self.field)
                m[k], m[pr] = m[pr], m[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                    q, r = num.divrem(prev)
                    assert r.is_zero(), "Bareiss division must be exact"
                    m[i][j] = q
            prev = m[k][k]
        d = m[n - 1][n - 1]
        return -d if sign < 0 else d

    # serialization -----------------------------------------------------

    def to_json(self):
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[p.to_json() for p in row] for row in self.entries],
        }

    @classmethod
    def from_json(cls, field: Field, data) -> "PolyMatrix":
        entries = [
            [Polynomial.from_json(field, p) for p in row] for row in data["entries"]
        ]
        m = cls(field, entries)
        if m.rows != data.get("rows", m.rows) or m.cols != data.get("cols", m.cols):
            raise ValueError("declared shape does not match entries")
        return m


# Smith normal form ------------------------------------------------------


def snf(a: PolyMatrix):
    """Smith normal form: returns (U, D, V) with U a V = D.

    U, V are unimodular (determinant a nonzero scalar); D is diagonal with
    monic entries satisfying d_1 | d_2 | ...  Pivoting picks the nonzero
    entry of minimal degree, preferring units, which keeps coefficient
    growth over Q in check.
    """
    field = a.field
    m = [list(row) for row in a.entries]
    rows, cols = a.rows, a.cols
    u = [list(r) for r in PolyMatrix.identity(field, rows).entries]
    v = [list(r) for r in PolyMatrix.identity(field, cols).entries]

    def row_op(i, j, q):
        # row_i -= q * row_j
        m[i] = [mi - q * mj for mi, mj in zip(m[i], m[j])]
        u[i] = [ui - q * uj for ui, uj in zip(u[i], u[j])]

    def col_op(i, j, q):
        # col_i -= q * col_j
        for r in range(rows):
            m[r][i] = m[r][i] - q * m[r][j]
        for r in range(cols):
            v[r][i] = v[r][i] - q * v[r][j]

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in range(rows):
            m[r][i], m[r][j] = m[r][j], m[r][i]
        for r in range(cols):
            v[r][i], v[r][j] = v[r][j], v[r][i]

    def scale_row(i, c):
        m[i] = [p.scale(c) for p in m[i]]
        u[i] = [p.scale(c) for p in u[i]]

    t = 0
    while t < min(rows, cols):
        # locate minimal-degree nonzero entry in the trailing block
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                p = m[i][j]
                if p.is_zero():
                    continue
                if best is None or p.degree < m[best[0]][best[1]].degree:
                    best = (i, j)
                    if p.degree == 0:
                        break
            if best is not None and m[best[0]][best[1]].degree == 0:
                break
        if best is None:
            break
        bi, bj = best
        if bi != t:
            swap_rows(bi, t)
        if bj != t:
            swap_cols(bj, t)

        while True:
            pivot = m[t][t]
            # clear column
            dirty = False
            for i in range(t + 1, rows):
                if m[i][t].is_zero():
                    continue
                q, r = m[i][t].divrem(pivot)
                row_op(i, t, q)
                if not r.is_zero():
                    swap_rows(i, t)
                    dirty = True
                    break
            if dirty:
                continue
            # clear row
            for j in range(t + 1, cols):
                if m[t][j].is_zero():
                    continue
                q, r = m[t][j].divrem(pivot)
                col_op(j, t, q)
                if not r.is_zero():
                    swap_cols(j, t)
                    dirty = True
                    break
            if dirty:
                continue
            break

        # enforce divisibility: pivot must divide the trailing block
        pivot = m[t][t]
        offender = None
        if not pivot.is_unit():
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if not pivot.divides(m[i][j]):
                        offender = i
                        break
                if offender is not None:
                    break
        if offender is not None:
            # fold the offending row into row t and redo this pivot
            m[t] = [a_ + b_ for a_, b_ in zip(m[t], m[offender])]
            u[t] = [a_ + b_ for a_, b_ in zip(u[t], u[offender])]
            continue

        if not field.is_zero(field.sub(pivot.leading(), field.one)):
            scale_row(t, field.inv(pivot.leading()))
        t += 1

    return (
        PolyMatrix(field, u),
        PolyMatrix(field, m),
        PolyMatrix(field, v),
    )


def diagonal(d: PolyMatrix):
    return [d.entries[i][i] for i in range(min(d.rows, d.cols))]


def rank_over_fractions(a: PolyMatrix) -> int:
    _, d, _ = snf(a)
    return sum(1 for p in diagonal(d) if not p.is_zero())


def solve_right(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    """Solve A X = B over k[x]; raises NoSolution if none exists.

    Uses U A V = D: with C = U B, solve D Y = C entrywise and set X = V Y.
    Free coordinates are set to zero.  When A has full column rank the
    solution is unique.
    """
    a._check_same(b)
    if a.rows != b.rows:
        raise ValueError("row count mismatch between A and B")
    field = a.field
    u, d, v = snf(a)
    c = u @ b
    z = Polynomial.zero(field)
    y = [[z] * b.cols for _ in range(a.cols)]
    diag = diagonal(d)
    for i in range(a.rows):
        di = diag[i] if i < len(diag) else z
        for j in range(b.cols):
            cij = c.entries[i][j]
            if di.is_zero():
                if not cij.is_zero():
                    raise NoSolution(f"inconsistent row {i}")
            else:
                q, r = cij.divrem(di)
                if not r.is_zero():
                    raise NoSolution(f"entry ({i},{j}) not divisible by invariant factor")
                if i < a.cols:
                    y[i][j] = q
    return v @ PolyMatrix(field, y)


def try_solve_right(a: PolyMatrix, b: PolyMatrix):
    try:
        return solve_right(a, b)
    except NoSolution:
        return None


def kernel_basis(a: PolyMatrix) -> PolyMatrix:
    """Columns form a k[x]-basis of ker(A); empty (cols x 0) if injective."""
    u, d, v = snf(a)
    diag = diagonal(d)
    idx = [i for i in range(a.cols) if i >= len(diag) or diag[i].is_zero()]
    return a_cols(v, idx)


def a_cols(a: PolyMatrix, idx) -> PolyMatrix:
    return a.submatrix(range(a.rows), idx)


# graded matrices --------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    position: tuple[int, int]
    expected_degree: int

    def __bool__(self):
        return False


class GradedMatrix:
    """Degree-0 map of graded free modules: src ⊕S(-a_i) -> tgt ⊕S(-b_j)."""

    __slots__ = ("mat", "src_degs", "tgt_degs")

    def __init__(self, mat: PolyMatrix, src_degs, tgt_degs, check: bool = True):
        self.mat = mat
        self.src_degs = tuple(src_degs)
        self.tgt_degs = tuple(tgt_degs)
        if len(self.src_degs) != mat.cols or len(self.tgt_degs) != mat.rows:
            raise ValueError("degree vector length mismatch")
        if check:
            bad = graded_check(self)
            if bad is not True:
                raise ValueError(
                    f"entry {bad.position} not homogeneous of degree {bad.expected_degree}"
                )

    @property
    def field(self):
        return self.mat.field

    @classmethod
    def identity(cls, field: Field, degs) -> "GradedMatrix":
        return cls(PolyMatrix.identity(field, len(degs)), degs, degs)

    @classmethod
    def zero(cls, field: Field, src_degs, tgt_degs) -> "GradedMatrix":
        return cls(PolyMatrix.zero(field, len(tgt_degs), len(src_degs)), src_degs, tgt_degs)

    @classmethod
    def homothety(cls, field: Field, degs, power: int) -> "GradedMatrix":
        """x^power * I as a map ⊕S(-a) -> ⊕S(-(a+power))... i.e. degs -> degs shifted."""
        mono = Polynomial.monomial(field, power)
        return cls(
            PolyMatrix.scalar(field, len(degs), mono),
            [a + power for a in degs],
            degs,
        )

    def __matmul__(self, other: "GradedMatrix") -> "GradedMatrix":
        if other.tgt_degs != self.src_degs:
            raise ValueError(
                f"degree vector mismatch: {other.tgt_degs} vs {self.src_degs}"
            )
        return GradedMatrix(self.mat @ other.mat, other.src_degs, self.tgt_degs, check=False)

    def __add__(self, other: "GradedMatrix") -> "GradedMatrix":
        if self.src_degs != other.src_degs or self.tgt_degs != other.tgt_degs:
            raise ValueError("degree vector mismatch in sum")
        return GradedMatrix(self.mat + other.mat, self.src_degs, self.tgt_degs, check=False)

    def __neg__(self) -> "GradedMatrix":
        return GradedMatrix(-self.mat, self.src_degs, self.tgt_degs, check=False)

    def shift(self, t: int) -> "GradedMatrix":
        """Apply the grade shift functor: same entries, degrees bumped by t."""
        return GradedMatrix(
            self.mat,
            [a + t for a in self.src_degs],
            [b + t for b in self.tgt_degs],
            check=False,
        )

    def direct_sum(self, other: "GradedMatrix") -> "GradedMatrix":
        field = self.field
        top = self.mat.hstack(PolyMatrix.zero(field, self.mat.rows, other.mat.cols))
        bot = PolyMatrix.zero(field, other.mat.rows, self.mat.cols).hstack(other.mat)
        return GradedMatrix(
            top.vstack(bot),
            self.src_degs + other.src_degs,
            self.tgt_degs + other.tgt_degs,
            check=False,
        )

    def is_injective(self) -> bool:
        if self.mat.rows == self.mat.cols:
            return not self.mat.det().is_zero()
        return rank_over_fractions(self.mat) == self.mat.cols

    def __eq__(self, other):
        return (
            isinstance(other, GradedMatrix)
            and self.mat == other.mat
            and self.src_degs == other.src_degs
            and self.tgt_degs == other.tgt_degs
        )

    def __hash__(self):
        return hash((self.mat, self.src_degs, self.tgt_degs))

    def __repr__(self):
        return f"GradedMatrix({self.src_degs} -> {self.tgt_degs}, {self.mat})"

    def to_json(self):
        data = self.mat.to_json()
        data["src_degs"] = list(self.src_degs)
        data["tgt_degs"] = list(self.tgt_degs)
        return data

    @classmethod
    def from_json(cls, field: Field, data) -> "GradedMatrix":
        mat = PolyMatrix.from_json(field, data)
        return cls(mat, data["src_degs"], data["tgt_degs"])


def graded_check(g: GradedMatrix):
    """True, or a Violation describing the first non-homogeneous entry."""
    for j, b in enumerate(g.tgt_degs):
        for i, a in enumerate(g.src_degs):
            p = g.mat.entries[j][i]
            want = a - b
            if p.is_zero():
                continue
            if want < 0 or p.degree != want or not p.is_monomial():
                return Violation(position=(j, i), expected_degree=want)
    return True
