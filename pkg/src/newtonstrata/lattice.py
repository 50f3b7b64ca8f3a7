"""Exact integer and rational linear algebra on small lattices.

Matrices are tuples of row tuples of Python ints.  Generators of a lattice
are stored as the *rows* of a matrix, so the Hermite form below is reached
by unimodular row operations ``u @ m == h`` and preserves the row span.

>>> hermite_normal_form(((2,), (4,)))[0]
((2,), (0,))
>>> smith_normal_form(((4, 0), (0, 6)))
(2, 12)
>>> QuotientLattice(2, [(2, 0)]).reduce((3, 5))
(1, 5)
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

IntMatrix = tuple  # tuple[tuple[int, ...], ...]


def identity(n: int) -> tuple:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> tuple:
    if not a:
        return ()
    cols = len(b[0]) if b else 0
    return tuple(
        tuple(sum(row[k] * b[k][j] for k in range(len(b))) for j in range(cols))
        for row in a
    )


def mat_vec(m: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in m)


def determinant(m: Sequence[Sequence]) -> Fraction:
    """Exact determinant by fraction-valued elimination."""
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return det


def _shape(m) -> tuple[int, int]:
    rows = len(m)
    cols = len(m[0]) if rows else 0
    return rows, cols


def hermite_normal_form(m: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite normal form.

    Returns ``(h, u)`` with ``u`` unimodular and ``u @ m == h``.  ``h`` is in
    row echelon form, pivots are positive and the entries above a pivot lie
    in ``[0, pivot)``.  Zero rows come last.  The row span is unchanged.
    """
    rows, cols = _shape(m)
    h = [list(map(int, r)) for r in m]
    u = [list(r) for r in identity(rows)]

    def swap(i, j):
        h[i], h[j] = h[j], h[i]
        u[i], u[j] = u[j], u[i]

    def addmul(dst, src, q):
        # row[dst] -= q * row[src]
        h[dst] = [x - q * y for x, y in zip(h[dst], h[src])]
        u[dst] = [x - q * y for x, y in zip(u[dst], u[src])]

    p = 0
    for c in range(cols):
        if p == rows:
            break
        while True:
            nz = [r for r in range(p, rows) if h[r][c] != 0]
            if not nz:
                break
            best = min(nz, key=lambda r: abs(h[r][c]))
            if best != p:
                swap(p, best)
            clean = True
            for r in range(p + 1, rows):
                if h[r][c]:
                    addmul(r, p, h[r][c] // h[p][c])
                    if h[r][c]:
                        clean = False
            if clean:
                break
        if h[p][c] == 0:
            continue
        if h[p][c] < 0:
            h[p] = [-x for x in h[p]]
            u[p] = [-x for x in u[p]]
        for r in range(p):
            q = h[r][c] // h[p][c]
            if q:
                addmul(r, p, q)
        p += 1
    return tuple(map(tuple, h)), tuple(map(tuple, u))


def smith_decomposition(m: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return ``(d, u, v)`` with ``u @ m @ v == d`` diagonal, u and v unimodular."""
    rows, cols = _shape(m)
    a = [list(map(int, r)) for r in m]
    u = [list(r) for r in identity(rows)]
    v = [list(r) for r in identity(cols)]

    def row_op(dst, src, q):
        a[dst] = [x - q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x - q * y for x, y in zip(u[dst], u[src])]

    def col_op(dst, src, q):
        for row in a:
            row[dst] -= q * row[src]
        for row in v:
            row[dst] -= q * row[src]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    for t in range(min(rows, cols)):
        while True:
            entries = [(abs(a[i][j]), i, j) for i in range(t, rows)
                       for j in range(t, cols) if a[i][j]]
            if not entries:
                break
            _, i, j = min(entries)
            swap_rows(t, i)
            swap_cols(t, j)
            piv = a[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t]:
                    row_op(i, t, a[i][t] // piv)
                    dirty = dirty or a[i][t] != 0
            for j in range(t + 1, cols):
                if a[t][j]:
                    col_op(j, t, a[t][j] // piv)
                    dirty = dirty or a[t][j] != 0
            if dirty:
                continue
            # enforce divisibility of the remaining block
            bad = next((i for i in range(t + 1, rows)
                        for j in range(t + 1, cols) if a[i][j] % piv), None)
            if bad is None:
                break
            row_op(t, bad, -1)
        if t < rows and t < cols and a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    return tuple(map(tuple, a)), tuple(map(tuple, u)), tuple(map(tuple, v))


def smith_normal_form(m: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Nonzero invariant factors d_1 | d_2 | ... of an integer matrix."""
    d, _, _ = smith_decomposition(m)
    return tuple(d[i][i] for i in range(min(_shape(d))) if d[i][i])


def lattice_membership(generators: Sequence[Sequence[int]], v: Sequence[int]) -> Optional[tuple[int, ...]]:
    """Integer coefficients ``c`` with ``sum(c_i * g_i) == v``, or None."""
    v = tuple(int(x) for x in v)
    if not generators:
        return () if not any(v) else None
    h, u = hermite_normal_form(generators)
    residual = list(v)
    y = [0] * len(h)
    for r, row in enumerate(h):
        c = next((j for j, x in enumerate(row) if x), None)
        if c is None:
            break
        if any(residual[:c]):
            return None
        q, rem = divmod(residual[c], row[c])
        if rem:
            return None
        y[r] = q
        residual = [a - q * b for a, b in zip(residual, row)]
    if any(residual):
        return None
    return tuple(sum(y[r] * u[r][k] for r in range(len(h))) for k in range(len(generators)))


def rational_span_solve(generators: Sequence[Sequence], v: Sequence) -> Optional[tuple[Fraction, ...]]:
    """Rational coefficients expressing ``v`` in ``generators``, or None.

    Free variables are set to zero, so the answer is unique when the
    generators are linearly independent.
    """
    k = len(generators)
    n = len(v)
    if k == 0:
        return () if not any(v) else None
    # augmented n x (k+1) system, columns are generators
    a = [[Fraction(generators[j][i]) for j in range(k)] + [Fraction(v[i])] for i in range(n)]
    pivots = []
    r = 0
    for c in range(k):
        piv = next((i for i in range(r, n) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(n):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == n:
            break
    if any(a[i][k] != 0 for i in range(r, n)):
        return None
    sol = [Fraction(0)] * k
    for i, c in enumerate(pivots):
        sol[c] = a[i][k]
    return tuple(sol)


class QuotientLattice:
    """The group ``Z^n / span(relations)`` with canonical representatives."""

    def __init__(self, ambient_rank: int, relations: Sequence[Sequence[int]] = ()):
        self.ambient_rank = ambient_rank
        rel = tuple(tuple(int(x) for x in r) for r in relations)
        for r in rel:
            if len(r) != ambient_rank:
                raise ValueError("relation length does not match ambient rank")
        self.relations = rel
        if rel:
            h, _ = hermite_normal_form(rel)
            self._basis = tuple(row for row in h if any(row))
        else:
            self._basis = ()
        self._pivots = tuple(next(j for j, x in enumerate(row) if x) for row in self._basis)
        factors = smith_normal_form(rel) if rel else ()
        self.free_rank = ambient_rank - len(factors)
        self.torsion_invariants = tuple(d for d in factors if d > 1)

    def reduce(self, x: Sequence[int]) -> tuple[int, ...]:
        """Canonical representative: residues in ``[0, pivot)`` at pivot columns."""
        if len(x) != self.ambient_rank:
            raise ValueError("vector length does not match ambient rank")
        y = [int(t) for t in x]
        for row, c in zip(self._basis, self._pivots):
            q = y[c] // row[c]
            if q:
                y = [a - q * b for a, b in zip(y, row)]
        return tuple(y)

    def structure(self) -> tuple[int, tuple[int, ...]]:
        return self.free_rank, self.torsion_invariants

    def __repr__(self) -> str:
        return f"QuotientLattice({self.ambient_rank}, {list(self.relations)})"


def quotient_reduce(q: QuotientLattice, x: Sequence[int]) -> tuple[int, ...]:
    return q.reduce(x)


def quotient_structure(q: QuotientLattice) -> tuple[int, tuple[int, ...]]:
    return q.structure()
