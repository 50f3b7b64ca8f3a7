"""Stratum-level predicates on an enumerated B(G, mu, b).

Everything here is a function of a ``KottwitzSet`` (and sometimes one of
its elements).  Sets transported to an inner form by
``KottwitzSet.translate`` are accepted: the Hodge-Newton and classical-point
tests use the shifted Newton points directly, while criteria phrased through
reductions of ``b`` or through cells use the quasi-split representative,
which is what those criteria are invariant under.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .kottwitz import (InternalInvariantError, KottwitzSet, SigmaConjClass, b_of_lambda,
                       enumerate_set, has_reduction_to_levi, join, leq, make_class,
                       minimal_lambda, reduction_levi, reduction_lift)
from .rootdatum import LeviSubset, RootDatum, as_ints, dot, vadd, vscale, vsub


class HypothesisNotMet(ValueError):
    """A verdict was requested for inputs outside the range where it is valid (e.g. non-minuscule mu)."""


@dataclass(frozen=True)
class StratumReport:
    index: int
    cls: SigmaConjClass
    is_basic: bool
    hn_decomposable: bool
    hn_witness: Optional[LeviSubset]
    classical_point: bool
    classical_witness: Optional[tuple]
    classical_point_closure: bool
    wa_meets: Optional[bool]
    closure_upset: tuple
    strict_discrepancy: Optional[bool] = None


@dataclass(frozen=True)
class CellReport:
    lam: tuple
    wa_excluded: bool
    classical_points: bool
    generic_class: SigmaConjClass
    generic_is_dense: bool
    dim_upper: object
    dim_exact: bool


@dataclass(frozen=True)
class ClosurePoset:
    edges: tuple          # Hasse edges (i, j) directed from smaller to larger in the chosen order
    closure: dict         # i -> tuple of indices in the closure of stratum i
    bun_order: bool


def delta(s: KottwitzSet):
    return s.delta


# -- Hodge-Newton ---------------------------------------------------------------

def _support(datum: RootDatum, v) -> set:
    coeffs = datum.coroot_coefficients(v)
    if coeffs is None:
        raise InternalInvariantError("delta - nu is outside the coroot span")
    return {i for i, x in enumerate(coeffs) if x != 0}


def is_hn_decomposable(s: KottwitzSet, c: SigmaConjClass) -> tuple[bool, Optional[LeviSubset]]:
    """Return ``(flag, minimal witness Levi or None)``."""
    d = s.datum
    smallest = LeviSubset(tuple(set(c.levi) | _support(d, vsub(s.delta, c.newton))))
    if not d.is_stable(smallest):
        raise InternalInvariantError("HN witness is not Galois-stable")
    if smallest == d.full:
        return False, None
    return True, smallest


def hn_decomposable_without_centralizer(s: KottwitzSet, c: SigmaConjClass) -> bool:
    """Variant that drops the requirement that the Levi contain the centralizer."""
    d = s.datum
    supp = _support(d, vsub(s.delta, c.newton))
    return any(set(supp) <= set(m) for m in d.stable_levis() if m != d.full)


def hn_indecomposables(s: KottwitzSet) -> list[SigmaConjClass]:
    return [c for c in s if not is_hn_decomposable(s, c)[0]]


def max_hn_indecomposable(s: KottwitzSet) -> SigmaConjClass:
    inds = hn_indecomposables(s)
    top = inds[0]
    for c in inds[1:]:
        top = join(s.datum, top, c)
    if top not in s:
        raise InternalInvariantError("join of HN-indecomposables left the Kottwitz set")
    if is_hn_decomposable(s, top)[0]:
        raise InternalInvariantError("join of HN-indecomposables is decomposable")
    if not all(leq(s.datum, c, top) for c in inds):
        raise InternalInvariantError("maximal HN-indecomposable is not an upper bound")
    return top


def is_fully_hn_decomposable(s: KottwitzSet) -> bool:
    d = s.datum
    return all(is_hn_decomposable(s, c)[0] for c in s if c.levi != d.full)


def wa_meets_stratum(s: KottwitzSet, c: SigmaConjClass) -> bool:
    if not s.datum.is_minuscule(s.mu):
        raise HypothesisNotMet(f"mu = {s.mu} is not minuscule")
    return not is_hn_decomposable(s, c)[0]


def hn_levi_membership_check(s: KottwitzSet, c: SigmaConjClass, m: LeviSubset) -> bool:
    """Check that the M-reduction of ``c`` lies in B(M, w_{0,M} w0 mu, b_M)."""
    d = s.datum
    if not c.levi.issubset(m) or m == d.full:
        raise ValueError("witness must be a proper Levi containing the centralizer")
    b_lift = s.b.kappa.coords
    x_b = reduction_lift(d, b_lift, d.full, m, d.av_levi(b_lift, d.full))
    if x_b is None:
        return False
    dm = d.restrict(m)
    pos = {i: k for k, i in enumerate(m.indices)}
    mu_m = dm.dominant(d.longest_element_action(s.mu))
    inner = make_class(dm, LeviSubset(tuple(pos[i] for i in c.levi)), c.kappa.coords)
    return inner in enumerate_set(dm, mu_m, x_b)


# -- closure ------------------------------------------------------------------

def closure_poset(s: KottwitzSet, bun_order: bool = False) -> ClosurePoset:
    n = len(s)
    le = s.order
    lt = [[le[i][j] and i != j for j in range(n)] for i in range(n)]
    edges = []
    for i in range(n):
        for j in range(n):
            if lt[i][j] and not any(lt[i][k] and lt[k][j] for k in range(n)):
                edges.append((j, i) if bun_order else (i, j))
    if bun_order:
        closure = {i: tuple(j for j in range(n) if le[j][i]) for i in range(n)}
    else:
        closure = {i: tuple(j for j in range(n) if le[i][j]) for i in range(n)}
    return ClosurePoset(tuple(sorted(edges)), closure, bun_order)


# -- classical points ------------------------------------------------------------

def has_classical_point(s: KottwitzSet, c: SigmaConjClass, strict: bool = False):
    """Return ``(flag, witness w.mu or None)``; with ``strict`` also a discrepancy flag.

    The rational test is ``av_M(nu_b - w mu) == nu_c`` with ``M`` the
    centralizer of ``nu_c``.  The strict test asks in addition that
    ``kappa_M(c) + (w mu)^{sharp_M}`` is kappa_M of a reduction of ``b``.
    """
    d = s.datum
    m = c.levi
    hit = None
    for wmu in sorted(d.weyl_orbit(s.mu)):
        if d.av_levi(vsub(s.nu_b, wmu), m) == c.newton:
            hit = wmu
            break
    if not strict:
        return hit is not None, hit
    b_lift = s.b.kappa.coords
    x_b = reduction_lift(d, b_lift, d.full, m, d.av_levi(b_lift, d.full))
    integral = None
    if x_b is not None:
        target = d.sharp_levi(x_b, m)
        for wmu in sorted(d.weyl_orbit(s.mu)):
            if d.sharp_levi(vadd(c.kappa.coords, wmu), m) == target:
                integral = wmu
                break
    return hit is not None, hit, (hit is None) != (integral is None)


def has_classical_point_closure(s: KottwitzSet, c: SigmaConjClass) -> bool:
    return has_reduction_to_levi(s.datum, s.b, c.levi)


def cell_classical_points(datum: RootDatum, lam, mu) -> bool:
    return vscale(-1, tuple(lam)) in datum.weyl_orbit(tuple(mu))


# -- cells ----------------------------------------------------------------------

def cell_support(datum: RootDatum, mu) -> list[tuple[int, ...]]:
    """All lambda with lambda_dom <= (-mu)_dom and lambda = -mu modulo coroots."""
    top = as_ints(datum.dominant(vscale(-1, as_ints(mu))))
    span = datum.coroot_coefficients(vsub(top, datum.longest_element_action(top)))
    out = set()

    def walk(i, cur):
        if i == datum.ss_rank:
            if datum.is_dominant(cur):
                out.update(datum.weyl_orbit(cur))
            return
        step = datum.simple_coroots[i]
        for n in range(int(span[i]) + 1):
            walk(i + 1, vsub(cur, vscale(n, step)))

    walk(0, top)
    return sorted(tuple(int(x) for x in v) for v in out)


def generic_class_of_cell(datum: RootDatum, lam) -> tuple[SigmaConjClass, bool]:
    c = b_of_lambda(datum, lam)
    best = minimal_lambda(datum, c)
    return c, dot(datum.rho, lam) == dot(datum.rho, best)


def dim_cell_cap_schubert(datum: RootDatum, lam, mu):
    return dot(datum.rho, vadd(lam, mu)), datum.is_minuscule(mu)


def dim_s_lambda_eta(datum: RootDatum, eta):
    if not datum.is_dominant(eta):
        raise ValueError("eta must be dominant")
    return dot(vscale(2, datum.rho), eta)


def is_minuscule(datum: RootDatum, mu) -> bool:
    return datum.is_minuscule(mu)


def _quasi_split_b(s: KottwitzSet) -> SigmaConjClass:
    return make_class(s.datum, s.b.levi, s.b.kappa.coords)


def cell_reports(s: KottwitzSet) -> list[CellReport]:
    d = s.datum
    m = reduction_levi(d, _quasi_split_b(s))
    out = []
    for lam in cell_support(d, s.mu):
        neg = vscale(-1, lam)
        excluded = not d.leq_coroot_order(d.av_levi(neg, m), d.av_levi(neg, d.full))
        gen, dense = generic_class_of_cell(d, lam)
        dim, exact = dim_cell_cap_schubert(d, lam, s.mu)
        out.append(CellReport(lam, excluded, cell_classical_points(d, lam, s.mu), gen, dense, dim, exact))
    return out


def wa_excluded_cells(s: KottwitzSet) -> list[CellReport]:
    return [r for r in cell_reports(s) if r.wa_excluded]


# -- summary ---------------------------------------------------------------------

def stratum_reports(s: KottwitzSet, strict: bool = False) -> list[StratumReport]:
    d = s.datum
    minus = d.is_minuscule(s.mu)
    poset = closure_poset(s)
    out = []
    for i, c in enumerate(s):
        dec, wit = is_hn_decomposable(s, c)
        cl = has_classical_point(s, c, strict=strict)
        out.append(StratumReport(
            index=i, cls=c, is_basic=c.levi == d.full, hn_decomposable=dec, hn_witness=wit,
            classical_point=cl[0], classical_witness=cl[1],
            classical_point_closure=has_classical_point_closure(s, c),
            wa_meets=(not dec) if minus else None,
            closure_upset=poset.closure[i],
            strict_discrepancy=cl[2] if strict else None))
    return out
