"""Exact scalar arithmetic and integer linear algebra.

Rationals are ``fractions.Fraction`` (always reduced, positive denominator).
On top of that this module provides Gaussian rationals, dense arbitrary
precision integer matrices, Smith normal form with unimodular transforms,
cokernels of integer matrices as finitely generated abelian groups, and
bounded enumeration of non-negative integer solutions of linear systems.

Everything here is pure and immutable after construction; no floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

Rational = Fraction


def rat(x) -> Fraction:
    """Coerce ints, Fractions and 'p/q' strings to an exact rational."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as a rational")


@dataclass(frozen=True)
class GaussianRational:
    """Element re + im*i of Q(i); equality is structural, arithmetic exact."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __add__(self, other):
        other = gauss(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-gauss(other))

    def __rsub__(self, other):
        return gauss(other) + (-self)

    def __mul__(self, other):
        other = gauss(other)
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def inverse(self) -> "GaussianRational":
        n = self.re * self.re + self.im * self.im
        if n == 0:
            raise ZeroDivisionError("inverse of 0 in Q(i)")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        return self * gauss(other).inverse()

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def conj(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


def gauss(x) -> GaussianRational:
    """Coerce ints, rationals, strings and pairs into Q(i)."""
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Fraction, str)):
        return GaussianRational(rat(x))
    if isinstance(x, dict):
        return GaussianRational(rat(x.get("re", 0)), rat(x.get("im", 0)))
    if isinstance(x, (tuple, list)) and len(x) == 2:
        return GaussianRational(rat(x[0]), rat(x[1]))
    raise TypeError(f"cannot interpret {x!r} as a Gaussian rational")


GAUSS_ZERO = GaussianRational()
GAUSS_ONE = GaussianRational(Fraction(1))
GAUSS_I = GaussianRational(Fraction(0), Fraction(1))


def gauss_ipow(k: int) -> GaussianRational:
    """i**k for any integer k."""
    k %= 4
    return (GAUSS_ONE, GAUSS_I, -GAUSS_ONE, -GAUSS_I)[k]


class IntMatrix:
    """Dense integer matrix with exact arithmetic; rows may be empty."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data: Sequence[Sequence[int]], cols: int | None = None):
        self.data = [list(map(int, row)) for row in data]
        self.rows = len(self.data)
        if self.rows:
            self.cols = len(self.data[0])
            if any(len(r) != self.cols for r in self.data):
                raise ValueError("ragged rows in IntMatrix")
            if cols is not None and cols != self.cols:
                raise ValueError("cols inconsistent with row length")
        else:
            if cols is None:
                raise ValueError("empty matrix needs an explicit column count")
            self.cols = cols

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix([[1 if i == j else 0 for j in range(n)] for i in range(n)], cols=n)

    @staticmethod
    def zero(rows: int, cols: int) -> "IntMatrix":
        return IntMatrix([[0] * cols for _ in range(rows)], cols=cols)

    def copy(self) -> "IntMatrix":
        return IntMatrix([row[:] for row in self.data], cols=self.cols)

    def transpose(self) -> "IntMatrix":
        return IntMatrix([[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)],
                         cols=self.rows)

    def __mul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        out = [[0] * other.cols for _ in range(self.rows)]
        for i in range(self.rows):
            row = self.data[i]
            for k, a in enumerate(row):
                if a:
                    orow = other.data[k]
                    orow_out = out[i]
                    for j in range(other.cols):
                        orow_out[j] += a * orow[j]
        return IntMatrix(out, cols=other.cols)

    def mulvec(self, v: Sequence[int]) -> list[int]:
        if len(v) != self.cols:
            raise ValueError("dimension mismatch")
        return [sum(a * x for a, x in zip(row, v)) for row in self.data]

    def __eq__(self, other):
        return (isinstance(other, IntMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.data == other.data)

    def __repr__(self):
        return f"IntMatrix({self.data!r}, cols={self.cols})"

    def det(self) -> int:
        """Exact determinant via fraction-free Bareiss elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        m = [row[:] for row in self.data]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                for i in range(k + 1, n):
                    if m[i][k]:
                        m[k], m[i] = m[i], m[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
                m[i][k] = 0
            prev = m[k][k]
        return sign * m[n - 1][n - 1]


@dataclass(frozen=True)
class SmithDecomposition:
    """U*M*V = D with U, V unimodular, D diagonal, factors divisibility chained."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    invariant_factors: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)


def smith_normal_form(M: IntMatrix) -> SmithDecomposition:
    """Smith normal form by elementary row/column operations.

    Pivots are chosen with minimal absolute value to limit coefficient
    growth; fine for the matrix sizes arising here (far below 100x100).
    """
    rows, cols = M.rows, M.cols
    d = [row[:] for row in M.data]
    u = [[1 if i == j else 0 for j in range(rows)] for i in range(rows)]
    v = [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]

    def row_op(i, j, q):  # row_i -= q * row_j
        d[i] = [a - q * b for a, b in zip(d[i], d[j])]
        u[i] = [a - q * b for a, b in zip(u[i], u[j])]

    def col_op(i, j, q):  # col_i -= q * col_j
        for r in range(rows):
            d[r][i] -= q * d[r][j]
        for r in range(cols):
            v[r][i] -= q * v[r][j]

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in range(rows):
            d[r][i], d[r][j] = d[r][j], d[r][i]
        for r in range(cols):
            v[r][i], v[r][j] = v[r][j], v[r][i]

    def negate_row(i):
        d[i] = [-a for a in d[i]]
        u[i] = [-a for a in u[i]]

    t = 0
    while True:
        pivot = None
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                a = d[i][j]
                if a and (best is None or abs(a) < best):
                    best = abs(a)
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        if d[t][t] < 0:
            negate_row(t)
        p = d[t][t]
        # one clearing sweep with balanced quotients; remainders stay put and
        # the global minimal pivot is re-selected on the next round, so the
        # pivot strictly decreases and entries stay tame
        for i in range(t + 1, rows):
            if d[i][t]:
                row_op(i, t, (d[i][t] + p // 2) // p)
        for j in range(t + 1, cols):
            if d[t][j]:
                col_op(j, t, (d[t][j] + p // 2) // p)
        if any(d[i][t] for i in range(t + 1, rows)) or \
                any(d[t][j] for j in range(t + 1, cols)):
            continue
        # force the pivot to divide every remaining entry
        fixed = False
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if d[i][j] % p:
                    row_op(t, i, -1)  # fold row i into row t, then re-run
                    fixed = True
                    break
            if fixed:
                break
        if fixed:
            continue
        t += 1

    factors = tuple(d[i][i] for i in range(min(rows, cols)) if d[i][i] != 0)
    return SmithDecomposition(
        IntMatrix(u, cols=rows), IntMatrix(d, cols=cols), IntMatrix(v, cols=cols), factors
    )


@dataclass(frozen=True)
class FinAbGroup:
    """Z^free_rank x prod Z/d_i with the d_i > 1 forming a divisibility chain."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError("torsion factors must form a divisibility chain")
        if any(t <= 1 for t in self.torsion):
            raise ValueError("torsion factors must exceed 1")

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @property
    def is_torsion_free(self) -> bool:
        return not self.torsion

    def torsion_order(self) -> int:
        n = 1
        for t in self.torsion:
            n *= t
        return n

    def reduce(self, coords: Sequence[int]) -> tuple[int, ...]:
        """Canonical representative: free part verbatim, torsion part mod d_i."""
        free = coords[: self.free_rank]
        tor = [c % d for c, d in zip(coords[self.free_rank:], self.torsion)]
        return tuple(free) + tuple(tor)

    def __str__(self):
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " x ".join(parts) if parts else "0"


def cokernel(M: IntMatrix) -> tuple[FinAbGroup, IntMatrix]:
    """Z^cols modulo the row space of M.

    Returns the group together with the projection matrix whose j-th column
    holds the adapted-basis coordinates (free part first, then torsion part)
    of the j-th standard generator.  A 0 x n matrix gives Z^n.
    """
    snf = smith_normal_form(M.transpose())
    n = M.cols
    u = snf.U  # n x n, unimodular: coordinates y = U x are adapted
    factors = snf.invariant_factors
    rank = len(factors)
    free_rows = list(range(rank, n))
    tor_rows = [i for i in range(rank) if factors[i] > 1]
    tor_factors = tuple(factors[i] for i in tor_rows)
    group = FinAbGroup(n - rank, tor_factors)
    proj_rows = []
    for i in free_rows:
        proj_rows.append(u.data[i][:])
    for i in tor_rows:
        proj_rows.append([a % factors[i] for a in u.data[i]])
    proj = IntMatrix(proj_rows, cols=n)
    return group, proj


class EmptySolutionSet(Exception):
    """No non-negative solution exists within the requested bound."""


def _det_rational(rows: list[list[Fraction]]) -> Fraction:
    n = len(rows)
    m = [r[:] for r in rows]
    det = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            det = -det
        det *= m[k][k]
        inv = 1 / m[k][k]
        for i in range(k + 1, n):
            f = m[i][k] * inv
            if f:
                m[i] = [a - f * b for a, b in zip(m[i], m[k])]
    return det


def solve_nonneg(
    A: IntMatrix,
    b: Sequence[int],
    bound: int,
    moduli: Sequence[int] | None = None,
) -> list[tuple[int, ...]]:
    """All x >= 0 with A x = b (row i taken mod moduli[i] when > 0), x_j <= bound.

    Solutions come back in lexicographic order.  Raises EmptySolutionSet when
    none exists within the bound.  Instances here are tiny, so this is a
    depth-first enumeration over the coordinate box with interval pruning on
    the exact rows; the frequent full-column-rank case short-circuits.
    """
    if bound <= 0:
        raise ValueError("bound must be positive")
    rows, n = A.rows, A.cols
    bb = list(map(int, b))
    if len(bb) != rows:
        raise ValueError("right-hand side length mismatch")
    mods = list(moduli) if moduli is not None else [0] * rows
    if len(mods) != rows:
        raise ValueError("moduli length mismatch")
    if n == 0:
        ok = all((x % m == 0 if m else x == 0) for x, m in zip(bb, mods))
        if ok:
            return [()]
        raise EmptySolutionSet("inconsistent system with no variables")

    exact_rows = [i for i in range(rows) if mods[i] == 0]

    solutions: list[tuple[int, ...]] = []

    # Full-rank shortcut: a unique rational candidate, checked exactly.
    if len(exact_rows) >= n:
        sub = [[Fraction(A.data[i][j]) for j in range(n)] for i in exact_rows]
        # pick n independent rows by Gaussian elimination
        basis: list[int] = []
        work: list[list[Fraction]] = []
        for ridx, row in zip(exact_rows, sub):
            cand = work + [row[:]]
            mrows = [r[:] for r in cand]
            r = 0
            for c in range(n):
                piv = next((i for i in range(r, len(mrows)) if mrows[i][c] != 0), None)
                if piv is None:
                    continue
                mrows[r], mrows[piv] = mrows[piv], mrows[r]
                for i in range(len(mrows)):
                    if i != r and mrows[i][c]:
                        f = mrows[i][c] / mrows[r][c]
                        mrows[i] = [x - f * y for x, y in zip(mrows[i], mrows[r])]
                r += 1
            if r == len(cand):
                work = cand
                basis.append(ridx)
            if len(basis) == n:
                break
        if len(basis) == n:
            mat = [[Fraction(A.data[i][j]) for j in range(n)] for i in basis]
            rhs = [Fraction(bb[i]) for i in basis]
            det = _det_rational(mat)
            if det != 0:
                x = []
                for j in range(n):
                    mj = [row[:] for row in mat]
                    for i in range(n):
                        mj[i][j] = rhs[i]
                    x.append(_det_rational(mj) / det)
                if all(v.denominator == 1 and 0 <= v <= bound for v in x):
                    xi = tuple(int(v) for v in x)
                    if _check_solution(A, bb, mods, xi):
                        solutions.append(xi)
                if solutions:
                    return solutions
                raise EmptySolutionSet(
                    f"no x >= 0 with coordinates <= {bound} solves the system")

    # General case: DFS over the box with interval pruning on exact rows.
    neg = [[min(A.data[i][j], 0) for j in range(n)] for i in range(rows)]
    pos = [[max(A.data[i][j], 0) for j in range(n)] for i in range(rows)]
    lo_tail = [[0] * (n + 1) for _ in range(rows)]
    hi_tail = [[0] * (n + 1) for _ in range(rows)]
    for i in range(rows):
        for j in range(n - 1, -1, -1):
            lo_tail[i][j] = lo_tail[i][j + 1] + neg[i][j] * bound
            hi_tail[i][j] = hi_tail[i][j + 1] + pos[i][j] * bound

    x = [0] * n

    def dfs(j: int, acc: list[int]):
        if j == n:
            if all((v - t) % m == 0 if m else v == t
                   for v, t, m in zip(acc, bb, mods)):
                solutions.append(tuple(x))
            return
        for val in range(bound + 1):
            nxt = [a + A.data[i][j] * val for i, a in enumerate(acc)]
            ok = True
            for i in exact_rows:
                if not (nxt[i] + lo_tail[i][j + 1] <= bb[i] <= nxt[i] + hi_tail[i][j + 1]):
                    ok = False
                    break
            if ok:
                x[j] = val
                dfs(j + 1, nxt)
        x[j] = 0

    dfs(0, [0] * rows)
    solutions.sort()
    if not solutions:
        raise EmptySolutionSet(f"no x >= 0 with coordinates <= {bound} solves the system")
    return solutions


def _check_solution(A: IntMatrix, b: list[int], mods: list[int], x: Sequence[int]) -> bool:
    vals = A.mulvec(list(x))
    return all((v - t) % m == 0 if m else v == t for v, t, m in zip(vals, b, mods))


def solve_integer(
    A: IntMatrix, b: Sequence[int], moduli: Sequence[int] | None = None
) -> tuple[int, ...] | None:
    """One integer solution of A x = b (row i mod moduli[i] when > 0), or None.

    Rows with a modulus get a slack variable, then the pure Z-system is
    solved through the Smith normal form.
    """
    rows, n = A.rows, A.cols
    mods = list(moduli) if moduli is not None else [0] * rows
    data = [row[:] for row in A.data]
    slack = [i for i in range(rows) if mods[i]]
    for k, i in enumerate(slack):
        for r in range(rows):
            data[r].append(mods[i] if r == i else 0)
    ext = IntMatrix(data, cols=n + len(slack))
    snf = smith_normal_form(ext)
    y = snf.U.mulvec(list(b))
    rank = snf.rank
    z = [0] * ext.cols
    for i in range(rank):
        d = snf.D.data[i][i]
        if y[i] % d:
            return None
        z[i] = y[i] // d
    if any(y[i] for i in range(rank, len(y))):
        return None
    x = snf.V.mulvec(z)
    return tuple(x[:n])


def gcd_of_minors(M: IntMatrix, k: int) -> int:
    """gcd of all k x k minors; independent oracle for invariant factors."""
    from itertools import combinations

    if k == 0:
        return 1
    g = 0
    for rs in combinations(range(M.rows), k):
        for cs in combinations(range(M.cols), k):
            sub = IntMatrix([[M.data[i][j] for j in cs] for i in rs], cols=k)
            g = gcd(g, abs(sub.det()))
    return g
