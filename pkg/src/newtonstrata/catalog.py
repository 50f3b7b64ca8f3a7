"""Preset root data for the classical families.

All presets use ``X = Z^r`` with the conventions below.

* ``GL(n)``: ``Z^n``, coroots and roots ``e_i - e_{i+1}``, weight lifts the
  partial sums ``e_1 + ... + e_i``.
* ``SL(n)``: the coroot lattice, in the basis of simple coroots.
* ``PGL(n)``: the coweight lattice, in the basis of fundamental coweights.
* ``Sp(n)``: ``Sp_{2n}``, ``Z^n`` with coroots ``e_i - e_{i+1}``, ``e_n``.
* ``SO_odd(n)``: ``SO_{2n+1}``, ``Z^n`` with coroots ``e_i - e_{i+1}``, ``2 e_n``.
* ``U_quasisplit(n)``: the ``GL(n)`` datum with Galois generator
  ``(x_1, ..., x_n) -> (-x_n, ..., -x_1)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .rootdatum import InvalidDatumError, RootDatum, _inverse, as_ints, dot

FAMILIES = ("GL", "SL", "PGL", "Sp", "SO_odd", "U_quasisplit")
MAX_N = 9


@dataclass(frozen=True)
class GroupSpec:
    family: str
    n: int
    label: Optional[str] = None


def _unit(n, i):
    return tuple(int(k == i) for k in range(n))


def _partial(n, i, scale=1):
    return tuple(Fraction(scale) if k <= i else Fraction(0) for k in range(n))


def _diff(n, i):
    return tuple((1 if k == i else -1 if k == i + 1 else 0) for k in range(n))


def gl(n: int, label=None) -> RootDatum:
    roots = [_diff(n, i) for i in range(n - 1)]
    weights = [_partial(n, i) for i in range(n - 1)]
    return RootDatum(n, roots, roots, weights, label=label or f"GL{n}")


def unitary(n: int, label=None) -> RootDatum:
    roots = [_diff(n, i) for i in range(n - 1)]
    weights = [_partial(n, i) for i in range(n - 1)]
    flip = [[-1 if k == n - 1 - r else 0 for k in range(n)] for r in range(n)]
    return RootDatum(n, roots, roots, weights, [flip], label=label or f"U{n}")


def cartan_a(n: int):
    """Cartan matrix of type A_{n-1}."""
    m = n - 1
    return [[2 if i == j else -1 if abs(i - j) == 1 else 0 for j in range(m)] for i in range(m)]


def simply_connected(cartan, label="") -> RootDatum:
    """Datum on the coroot lattice (basis: simple coroots)."""
    m = len(cartan)
    coroots = [_unit(m, i) for i in range(m)]
    return RootDatum(m, [list(r) for r in cartan], coroots, [_unit(m, i) for i in range(m)], label=label)


def sl(n: int, label=None) -> RootDatum:
    return simply_connected(cartan_a(n), label or f"SL{n}")


def pgl(n: int, label=None) -> RootDatum:
    return adjoint_quotient(gl(n), label=label or f"PGL{n}")


def sp(n: int, label=None) -> RootDatum:
    roots = [_diff(n, i) for i in range(n - 1)] + [tuple(2 if k == n - 1 else 0 for k in range(n))]
    coroots = [_diff(n, i) for i in range(n - 1)] + [_unit(n, n - 1)]
    weights = [_partial(n, i) for i in range(n)]
    return RootDatum(n, roots, coroots, weights, label=label or f"Sp{2 * n}")


def so_odd(n: int, label=None) -> RootDatum:
    roots = [_diff(n, i) for i in range(n - 1)] + [_unit(n, n - 1)]
    coroots = [_diff(n, i) for i in range(n - 1)] + [tuple(2 if k == n - 1 else 0 for k in range(n))]
    weights = [_partial(n, i) for i in range(n - 1)] + [_partial(n, n - 1, Fraction(1, 2))]
    return RootDatum(n, roots, coroots, weights, label=label or f"SO{2 * n + 1}")


_BUILDERS = {"GL": (gl, 1), "SL": (sl, 2), "PGL": (pgl, 2), "Sp": (sp, 1),
             "SO_odd": (so_odd, 1), "U_quasisplit": (unitary, 1)}


def build(spec: GroupSpec) -> RootDatum:
    if spec.family not in _BUILDERS:
        raise InvalidDatumError(f"unknown family {spec.family!r}; expected one of {', '.join(FAMILIES)}")
    fn, lo = _BUILDERS[spec.family]
    if not lo <= spec.n <= MAX_N:
        raise InvalidDatumError(f"{spec.family} needs {lo} <= n <= {MAX_N}, got {spec.n}")
    return fn(spec.n, spec.label)


class AdjointProjection:
    """Coordinate map ``X -> X_ad``, ``x -> (<alpha_j, x>)_j``."""

    def __init__(self, source: RootDatum):
        self.source = source

    def __call__(self, x):
        return tuple(dot(a, x) for a in self.source.simple_roots)


def adjoint_quotient(d: RootDatum, label=None) -> RootDatum:
    """Adjoint datum: the coweight lattice of the derived root system.

    The returned object carries ``projection``, the induced map on
    cocharacters (so also on Newton points and, after reduction, on kappa).
    """
    m = d.ss_rank
    roots = [_unit(m, i) for i in range(m)]
    coroots = [tuple(d.cartan[j][i] for j in range(m)) for i in range(m)]
    # weight lifts: rows of the inverse Cartan matrix
    inv = _inverse([[Fraction(x) for x in row] for row in d.cartan])
    weights = [tuple(inv[i][k] for k in range(m)) for i in range(m)] if m else []
    gal = []
    for p in d._perms:
        gal.append([[1 if p[c] == r else 0 for c in range(m)] for r in range(m)])
    ad = RootDatum(m, roots, coroots, weights, gal, label=label or f"{d.label}_ad")
    ad.projection = AdjointProjection(d)
    return ad


def from_json(obj: dict) -> RootDatum:
    """Build a datum from the documented JSON layout (see docs/schemas.md)."""
    try:
        rank = int(obj["rank"])
        roots = [as_ints(r) for r in obj["simple_roots"]]
        coroots = [as_ints(r) for r in obj["simple_coroots"]]
        weights = [tuple(Fraction(str(x)) for x in w) for w in obj["weight_lifts"]]
        galois = obj.get("galois", [])
        label = obj.get("label", "")
    except (KeyError, TypeError, ValueError) as e:
        raise InvalidDatumError(f"malformed root datum JSON: {e}") from None
    return RootDatum(rank, roots, coroots, weights, galois, label=label)


def to_json(d: RootDatum) -> dict:
    return {
        "label": d.label,
        "rank": d.rank,
        "simple_roots": [list(r) for r in d.simple_roots],
        "simple_coroots": [list(c) for c in d.simple_coroots],
        "weight_lifts": [[str(x) for x in w] for w in d.weight_lifts],
        "galois": [[list(row) for row in g] for g in d.galois_generators],
    }
