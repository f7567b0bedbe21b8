"""Exact integer linear algebra on arbitrary-precision matrices.

Smith and Hermite normal forms with unimodular transform witnesses,
integral system solving, and kernels of linear maps between products of
cyclic groups.  Everything is plain Python integers; coefficient growth
is handled by exactness, not by modular tricks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DimensionMismatch
from .permgroup import AbelianStructure


class IntMatrix:
    """An immutable matrix of Python integers."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        rows = tuple(tuple(int(x) for x in row) for row in rows)
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise DimensionMismatch("ragged rows")
        self.rows = rows

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> IntMatrix:
        return cls(tuple((0,) * ncols for _ in range(nrows)))

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    @property
    def entries(self) -> tuple[int, ...]:
        """Row-major flat view."""
        return tuple(x for row in self.rows for x in row)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        return self.rows[ij[0]][ij[1]]

    def row(self, i: int) -> tuple[int, ...]:
        return self.rows[i]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.rows)

    def transpose(self) -> IntMatrix:
        return IntMatrix(zip(*self.rows)) if self.rows else IntMatrix(())

    def __mul__(self, other: IntMatrix) -> IntMatrix:
        if self.ncols != other.nrows:
            raise DimensionMismatch(f"{self.ncols} columns vs {other.nrows} rows")
        cols = other.transpose().rows
        return IntMatrix(tuple(
            tuple(sum(a * b for a, b in zip(row, col)) for col in cols)
            for row in self.rows))

    def apply(self, vector) -> tuple[int, ...]:
        vector = tuple(vector)
        if len(vector) != self.ncols:
            raise DimensionMismatch("vector length does not match columns")
        return tuple(sum(a * b for a, b in zip(row, vector)) for row in self.rows)

    def __eq__(self, other) -> bool:
        return isinstance(other, IntMatrix) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"IntMatrix({list(map(list, self.rows))})"


@dataclass(frozen=True)
class SmithDecomposition:
    """U * A * V = D with U, V unimodular and D = diag(d_1 | d_2 | ...)."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        n = min(self.D.nrows, self.D.ncols)
        return tuple(self.D[i, i] for i in range(n))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)


@dataclass(frozen=True)
class HermiteDecomposition:
    """U * A = H with U unimodular and H in row Hermite normal form."""

    H: IntMatrix
    U: IntMatrix


class _Worksheet:
    """Mutable matrix with mirrored transforms U, V and their inverses.

    Maintains D = U * A * V, U * Uinv = I, V * Vinv = I through all
    elementary operations.
    """

    def __init__(self, A: IntMatrix):
        self.d = [list(row) for row in A.rows]
        m, n = A.nrows, A.ncols
        self.u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
        self.uinv = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
        self.v = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        self.vinv = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        self.m = m
        self.n = n

    def swap_rows(self, i, k):
        if i == k:
            return
        self.d[i], self.d[k] = self.d[k], self.d[i]
        self.u[i], self.u[k] = self.u[k], self.u[i]
        for row in self.uinv:
            row[i], row[k] = row[k], row[i]

    def swap_cols(self, j, k):
        if j == k:
            return
        for row in self.d:
            row[j], row[k] = row[k], row[j]
        for row in self.v:
            row[j], row[k] = row[k], row[j]
        self.vinv[j], self.vinv[k] = self.vinv[k], self.vinv[j]

    def add_row(self, i, k, q):
        """row_i += q * row_k."""
        if q == 0:
            return
        di, dk = self.d[i], self.d[k]
        for j in range(self.n):
            di[j] += q * dk[j]
        ui, uk = self.u[i], self.u[k]
        for j in range(self.m):
            ui[j] += q * uk[j]
        for row in self.uinv:
            row[k] -= q * row[i]

    def add_col(self, j, k, q):
        """col_j += q * col_k."""
        if q == 0:
            return
        for row in self.d:
            row[j] += q * row[k]
        for row in self.v:
            row[j] += q * row[k]
        vj, vk = self.vinv[j], self.vinv[k]
        for t in range(self.n):
            vk[t] -= q * vj[t]

    def negate_row(self, i):
        self.d[i] = [-x for x in self.d[i]]
        self.u[i] = [-x for x in self.u[i]]
        for row in self.uinv:
            row[i] = -row[i]


def _pivot(d, t, m, n):
    """Position of a minimal-|value| nonzero entry of d[t:, t:], or None."""
    best = None
    best_abs = None
    for i in range(t, m):
        row = d[i]
        for j in range(t, n):
            x = row[j]
            if x != 0 and (best_abs is None or abs(x) < best_abs):
                best = (i, j)
                best_abs = abs(x)
                if best_abs == 1:
                    return best
    return best


def _diagonalize(ws: _Worksheet) -> None:
    d, m, n = ws.d, ws.m, ws.n
    t = 0
    while t < min(m, n):
        pos = _pivot(d, t, m, n)
        if pos is None:
            break
        ws.swap_rows(t, pos[0])
        ws.swap_cols(t, pos[1])
        dirty = False
        for i in range(t + 1, m):
            q = d[i][t] // d[t][t]
            ws.add_row(i, t, -q)
            if d[i][t] != 0:
                ws.swap_rows(t, i)  # strictly smaller pivot; restart clearing
                dirty = True
                break
        if dirty:
            continue
        for j in range(t + 1, n):
            q = d[t][j] // d[t][t]
            ws.add_col(j, t, -q)
            if d[t][j] != 0:
                ws.swap_cols(t, j)
                dirty = True
                break
        if dirty:
            continue
        t += 1


def _smith(ws: _Worksheet) -> None:
    _diagonalize(ws)
    d = ws.d
    r = min(ws.m, ws.n)
    # push zero diagonal entries to the end
    diag = [(d[i][i] != 0, i) for i in range(r)]
    nonzero = [i for ok, i in diag if ok]
    for target, source in enumerate(nonzero):
        if target != source:
            ws.swap_rows(target, source)
            ws.swap_cols(target, source)
    rank = len(nonzero)
    # enforce the divisibility chain by local 2x2 fixes
    while True:
        violated = None
        for i in range(rank - 1):
            if d[i + 1][i + 1] % d[i][i] != 0:
                violated = i
                break
        if violated is None:
            break
        i = violated
        # the only nonzero entries in rows/cols i, i+1 sit in the 2x2
        # diagonal block, so a local elimination is safe
        ws.add_col(i, i + 1, 1)
        while True:
            a, b = d[i][i], d[i + 1][i]
            if b == 0:
                break
            if a != 0 and abs(a) <= abs(b):
                ws.add_row(i + 1, i, -(b // a))
                if d[i + 1][i] != 0:
                    ws.swap_rows(i, i + 1)
            else:
                ws.swap_rows(i, i + 1)
        q = d[i][i + 1] // d[i][i]
        ws.add_col(i + 1, i, -q)
    for i in range(rank):
        if d[i][i] < 0:
            ws.negate_row(i)


def smith_normal_form(A: IntMatrix) -> SmithDecomposition:
    """Exact Smith normal form with unimodular witnesses."""
    ws = _Worksheet(A)
    _smith(ws)
    return SmithDecomposition(IntMatrix(ws.u), IntMatrix(ws.d), IntMatrix(ws.v))


def hermite_normal_form(A: IntMatrix) -> HermiteDecomposition:
    """Row Hermite normal form: pivots positive, entries above reduced."""
    ws = _Worksheet(A)
    d, m, n = ws.d, ws.m, ws.n
    r = 0
    for j in range(n):
        # choose a pivot in column j at or below row r
        candidates = [i for i in range(r, m) if d[i][j] != 0]
        if not candidates:
            continue
        i0 = min(candidates, key=lambda i: (abs(d[i][j]), i))
        ws.swap_rows(r, i0)
        while True:
            below = [i for i in range(r + 1, m) if d[i][j] != 0]
            if not below:
                break
            for i in below:
                ws.add_row(i, r, -(d[i][j] // d[r][j]))
            nonzero = [i for i in range(r + 1, m) if d[i][j] != 0]
            if nonzero:
                i0 = min(nonzero, key=lambda i: (abs(d[i][j]), i))
                ws.swap_rows(r, i0)
        if d[r][j] < 0:
            ws.negate_row(r)
        for i in range(r):
            ws.add_row(i, r, -(d[i][j] // d[r][j]))
        r += 1
        if r == m:
            break
    return HermiteDecomposition(IntMatrix(ws.d), IntMatrix(ws.u))


def determinant(A: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = A.nrows
    if n != A.ncols:
        raise DimensionMismatch("determinant of a non-square matrix")
    if n == 0:
        return 1
    m = [list(row) for row in A.rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _is_lower_triangular_positive(A: IntMatrix) -> bool:
    if A.nrows != A.ncols:
        return False
    for i in range(A.nrows):
        if A[i, i] <= 0:
            return False
        if any(A[i, j] != 0 for j in range(i + 1, A.ncols)):
            return False
    return True


def solve_integral(A: IntMatrix, b) -> tuple[int, ...] | None:
    """An integer solution x of A x = b, or None if none exists."""
    b = tuple(int(x) for x in b)
    if len(b) != A.nrows:
        raise DimensionMismatch("right-hand side length does not match rows")
    if _is_lower_triangular_positive(A):
        # mark matrices arrive here; plain back-substitution
        x = []
        for i in range(A.nrows):
            s = b[i] - sum(A[i, j] * x[j] for j in range(i))
            q, r = divmod(s, A[i, i])
            if r:
                return None
            x.append(q)
        return tuple(x)
    snf = smith_normal_form(A)
    c = snf.U.apply(b)
    diag = snf.diagonal
    y = [0] * A.ncols
    for i in range(A.nrows):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if c[i] != 0:
                return None
        else:
            q, r = divmod(c[i], d)
            if r:
                return None
            y[i] = q
    return snf.V.apply(y)


def kernel_basis(A: IntMatrix) -> list[tuple[int, ...]]:
    """A lattice basis of {x : A x = 0} (columns of V past the rank)."""
    if A.ncols == 0:
        return []
    if A.nrows == 0:
        return [tuple(1 if i == j else 0 for i in range(A.ncols)) for j in range(A.ncols)]
    snf = smith_normal_form(A)
    return [snf.V.column(j) for j in range(snf.rank, A.ncols)]


@dataclass(frozen=True)
class CyclicKernel:
    """Kernel of a map between products of cyclic groups.

    ``structure.generators`` holds one vector per invariant factor,
    reduced componentwise modulo ``orders``.
    """

    orders: tuple[int, ...]
    structure: AbelianStructure


def kernel_mod_orders(A: IntMatrix, row_moduli, orders) -> CyclicKernel:
    """The group {x in prod Z/orders[j] : A x = 0 in prod Z/row_moduli[i]}.

    Requires row_moduli[i] | A[i,j] * orders[j] so that each row is a
    well-defined functional on the domain.  Everything is reduced to a
    single integer Smith normal form: first the lattice L of integer
    vectors satisfying all congruences, then L / diag(orders).
    """
    orders = tuple(int(x) for x in orders)
    row_moduli = tuple(int(x) for x in row_moduli)
    if A.nrows != len(row_moduli):
        raise DimensionMismatch("one modulus per equation row is required")
    if A.nrows and A.ncols != len(orders):
        raise DimensionMismatch("one order per unknown is required")
    if any(m <= 0 for m in row_moduli) or any(d <= 0 for d in orders):
        raise DimensionMismatch("moduli and orders must be positive")
    for i in range(A.nrows):
        for j in range(A.ncols):
            if (A[i, j] * orders[j]) % row_moduli[i] != 0:
                raise DimensionMismatch(
                    f"row {i} is not well defined modulo its modulus")
    n = len(orders)
    if n == 0:
        return CyclicKernel((), AbelianStructure((), ()))
    # lattice L = {x : A x = 0 mod row_moduli} as projection of the
    # kernel of [A | diag(row_moduli)]
    if A.nrows:
        stacked = IntMatrix(tuple(
            tuple(A.rows[i]) + tuple(row_moduli[i] if k == i else 0
                                     for k in range(A.nrows))
            for i in range(A.nrows)))
        generators = [vec[:n] for vec in kernel_basis(stacked)]
    else:
        generators = [tuple(1 if i == j else 0 for i in range(n)) for j in range(n)]
    # L contains diag(orders), so it has full rank; canonical basis via HNF
    hnf = hermite_normal_form(IntMatrix(generators))
    basis_rows = [row for row in hnf.H.rows if any(row)]
    if len(basis_rows) != n:  # pragma: no cover - L always has full rank
        raise RuntimeError("congruence lattice is not of full rank")
    basis = IntMatrix(basis_rows).transpose()  # columns generate L
    # express diag(orders) in the basis: basis * W = diag(orders)
    w_cols = []
    for j in range(n):
        target = tuple(orders[j] if i == j else 0 for i in range(n))
        col = solve_integral(basis, target)
        if col is None:  # pragma: no cover - guaranteed integral
            raise RuntimeError("order relations do not lie in the lattice")
        w_cols.append(col)
    W = IntMatrix(w_cols).transpose()
    # L / diag(orders) = Z^n / W Z^n; generator of the Z/d_i factor is
    # basis * (column i of U^-1)
    ws = _Worksheet(W)
    _smith(ws)
    uinv = IntMatrix(ws.uinv)
    diagonal = tuple(ws.d[i][i] for i in range(n))
    factors = []
    gens = []
    for i, d in enumerate(diagonal):
        if d == 1:
            continue
        vec = basis.apply(uinv.column(i))
        gens.append(tuple(v % o for v, o in zip(vec, orders)))
        factors.append(d)
    return CyclicKernel(orders, AbelianStructure(tuple(factors), tuple(gens)))
