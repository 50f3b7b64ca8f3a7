"""sigma-conjugacy classes as (Levi, kappa) pairs and the sets B(G, mu, b).

A class is stored as ``(M, kappa_M)`` where ``M`` is the centralizer of its
Newton point and ``kappa_M`` lies in ``pi_1(M)_Gamma``.  The Newton point is
``av_M`` of any lift of ``kappa_M``.

Enumeration works one Galois-stable Levi ``M`` at a time.  Fix an integral
lift ``x0`` of the target ``kappa_G``.  Every lift of every class with that
``kappa_G`` and centralizer ``M`` is ``x0 + sum n_i alpha_i^vee`` modulo the
relations of ``pi_1(M)_Gamma``, and only the orbit sums ``N_O`` of the
``n_i`` over Galois orbits ``O`` outside ``M`` matter.  They are read off
from the Newton point as ``<omega_j, nu - av_M(x0)> = N_O / |O|`` for
``j`` in ``O``, so the bound ``nu <= upper`` leaves a finite integer box.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Optional, Sequence

from .rootdatum import (LeviSubset, Pi1Element, RootDatum, as_ints, dot, is_integral, vadd,
                        vscale, vsub)
from .lattice import rational_span_solve


class InternalInvariantError(RuntimeError):
    """A computed object violates a property that must hold; indicates a bug."""


class KappaMismatchError(ValueError):
    """Classes with different Kottwitz points were combined."""


@dataclass(frozen=True)
class SigmaConjClass:
    """A class in B(G).

    ``twist`` is None for classes of the quasi-split group itself.  After an
    inner twist by a basic ``b0`` that is not central-integral it holds
    ``kappa_G(b0)``; ``levi``/``kappa`` then describe the untwisted class and
    ``newton`` is already shifted by ``-nu_{b0}``.
    """

    levi: LeviSubset
    kappa: Pi1Element
    newton: tuple = field(compare=False, hash=False)
    twist: Optional[Pi1Element] = None


def _newton_of_twist(datum: RootDatum, twist: Optional[Pi1Element]):
    if twist is None:
        return tuple([Fraction(0)] * datum.rank)
    return datum.av_levi(twist.coords, datum.full)


def make_class(datum: RootDatum, levi: LeviSubset, lift, twist: Optional[Pi1Element] = None) -> SigmaConjClass:
    """Class with centralizer ``levi`` and kappa_M the image of ``lift``.

    Raises ValueError if the Newton point is not strictly regular off ``levi``.
    """
    lift = as_ints(lift)
    nu = vsub(datum.av_levi(lift, levi), _newton_of_twist(datum, twist))
    for i, a in enumerate(datum.simple_roots):
        p = dot(a, nu)
        if (i in levi and p != 0) or (i not in levi and p <= 0):
            raise ValueError(f"Newton point {fmt(nu)} is not regular with centralizer {list(levi)}")
    return SigmaConjClass(levi, datum.sharp_levi(lift, levi), nu, twist)


def class_from_kappa(datum: RootDatum, kappa: Pi1Element, twist=None) -> SigmaConjClass:
    return make_class(datum, kappa.levi, kappa.coords, twist)


def fmt(v) -> str:
    return "(" + ",".join(str(x) for x in v) + ")"


def g_element(datum: RootDatum, b_kappa) -> Pi1Element:
    """Normalize a Pi1Element of G or an integer lift to a Pi1Element of G."""
    if isinstance(b_kappa, Pi1Element):
        return datum.push(b_kappa, datum.full)
    return datum.sharp_levi(b_kappa, datum.full)


def basic_class(datum: RootDatum, b_kappa) -> SigmaConjClass:
    k = g_element(datum, b_kappa)
    return make_class(datum, datum.full, k.coords)


def newton_point(c: SigmaConjClass):
    return c.newton


def kappa_G(datum: RootDatum, c: SigmaConjClass) -> Pi1Element:
    x = c.kappa.coords
    if c.twist is not None:
        x = vsub(x, c.twist.coords)
    return datum.sharp_levi(x, datum.full)


def leq(datum: RootDatum, c1: SigmaConjClass, c2: SigmaConjClass) -> bool:
    if c1.twist != c2.twist:
        raise KappaMismatchError("classes live on different inner forms")
    return kappa_G(datum, c1) == kappa_G(datum, c2) and datum.leq_coroot_order(c1.newton, c2.newton)


def is_basic(datum: RootDatum, c: SigmaConjClass) -> bool:
    return c.levi == datum.full


def sort_key(c: SigmaConjClass):
    return (tuple(c.newton), c.kappa.coords, c.levi.indices)


# -- reductions to Levis ---------------------------------------------------------------

def reduction_lift(datum: RootDatum, lift, ambient: LeviSubset, sub: LeviSubset, nu):
    """An integral ``x`` in ``lift + Z Phi_ambient^vee + I_Gamma X`` with ``av_sub(x) == nu``.

    Returns None when no such ``x`` exists.  Only the orbit sums of the
    coroot coefficients over orbits in ``ambient`` but not in ``sub`` affect
    ``av_sub``, and those enter through linearly independent vectors, so the
    solution is unique when it exists.
    """
    if not sub.issubset(ambient):
        raise ValueError("sub must be contained in ambient")
    lift = as_ints(lift)
    base = datum.av_levi(lift, sub)
    orbits = [o for o in datum.orbits_inside(ambient) if o[0] not in sub]
    vs = [datum.av_levi(datum.simple_coroots[o[0]], sub) for o in orbits]
    coeffs = rational_span_solve(vs, vsub(nu, base))
    if coeffs is None or not is_integral(coeffs):
        return None
    x = list(lift)
    for o, c in zip(orbits, coeffs):
        for k, y in enumerate(datum.simple_coroots[o[0]]):
            x[k] += int(c) * y
    return tuple(x)


def _untwisted_lift(c: SigmaConjClass):
    return c.kappa.coords


def has_reduction_to_levi(datum: RootDatum, c: SigmaConjClass, m: LeviSubset) -> bool:
    """Whether the basic class ``c`` comes from an ``m``-basic class.

    Twisted classes are tested through their quasi-split representative.
    """
    if c.levi != datum.full:
        raise ValueError("has_reduction_to_levi needs a basic class")
    lift = _untwisted_lift(c)
    nu = datum.av_levi(lift, datum.full)
    return reduction_lift(datum, lift, datum.full, m, nu) is not None


def reduction_levi(datum: RootDatum, c: SigmaConjClass) -> LeviSubset:
    """Minimal Galois-stable standard Levi inside ``c.levi`` admitting a reduction of ``c``."""
    lift = _untwisted_lift(c)
    nu = datum.av_levi(lift, c.levi)
    ok = [m for m in datum.stable_levis()
          if m.issubset(c.levi) and reduction_lift(datum, lift, c.levi, m, nu) is not None]
    least = LeviSubset(tuple(set.intersection(*(set(m) for m in ok))))
    if least not in ok:
        raise InternalInvariantError(f"reductions of {fmt(nu)} have no least Levi")
    return least


def is_superbasic(datum: RootDatum, c: SigmaConjClass) -> bool:
    if c.levi != datum.full:
        raise ValueError("is_superbasic needs a basic class")
    return reduction_levi(datum, c) == datum.full


def class_with_newton(datum: RootDatum, lift, nu) -> Optional[SigmaConjClass]:
    """The class with ``kappa_G`` the image of ``lift`` and Newton point ``nu``, if any."""
    m = datum.centralizer_levi(nu)
    x = reduction_lift(datum, lift, datum.full, m, nu)
    if x is None:
        return None
    return make_class(datum, m, x)


def lambda_class(datum: RootDatum, lam) -> SigmaConjClass:
    """The class of ``lam(xi)``: Newton point the dominant representative of ``lam`` averaged."""
    nu = datum.dominant(datum.galois_average(lam))
    c = class_with_newton(datum, lam, nu)
    if c is None:
        raise InternalInvariantError(f"no class with Newton point {fmt(nu)} for lambda {fmt(lam)}")
    return c


# -- enumeration -----------------------------------------------------------------

def classes_below(datum: RootDatum, lift, upper) -> list[SigmaConjClass]:
    """All classes with ``kappa_G`` the image of ``lift`` and Newton point ``<= upper``."""
    lift = as_ints(lift)
    nu0 = datum.av_levi(lift, datum.full)
    bound = datum.coroot_coefficients(vsub(upper, nu0))
    if bound is None or any(b < 0 for b in bound):
        return []
    roots, weights = datum.simple_roots, datum.weight_lifts
    found = []
    for m in datum.stable_levis():
        base = datum.av_levi(lift, m)
        off = datum.orbits_outside(m)
        gap = datum.coroot_coefficients(vsub(nu0, base))
        vs = [datum.av_levi(datum.simple_coroots[o[0]], m) for o in off]
        ranges = []
        for o in off:
            j, size = o[0], len(o)
            lo = gap[j]
            hi = lo + bound[j]
            ranges.append(range(math.ceil(size * lo), math.floor(size * hi) + 1))
        # Integer-scaled tables: regularity  r0[k] + sum n * P[k] > 0  (k off M),
        # order  q0[j] - sum n * Q[j] >= 0  (all j).
        rows_r = [o[0] for o in off]
        r0 = [dot(roots[k], base) for k in rows_r]
        pr = [[dot(roots[k], v) for v in vs] for k in rows_r]
        slack = vsub(upper, base)
        q0 = [dot(w, slack) for w in weights]
        qw = [[dot(w, v) for v in vs] for w in weights]
        den = 1
        for x in r0 + q0 + [y for row in pr + qw for y in row]:
            den = den * Fraction(x).denominator // math.gcd(den, Fraction(x).denominator)
        r0 = [int(x * den) for x in r0]
        q0 = [int(x * den) for x in q0]
        pr = [[int(x * den) for x in row] for row in pr]
        qw = [[int(x * den) for x in row] for row in qw]
        for ns in product(*ranges):
            if any(a + sum(n * b for n, b in zip(ns, row)) <= 0 for a, row in zip(r0, pr)):
                continue
            if any(a - sum(n * b for n, b in zip(ns, row)) < 0 for a, row in zip(q0, qw)):
                continue
            x = list(lift)
            for o, n in zip(off, ns):
                for k, y in enumerate(datum.simple_coroots[o[0]]):
                    x[k] += n * y
            c = make_class(datum, m, x)
            nu = base
            for n, v in zip(ns, vs):
                if n:
                    nu = vadd(nu, vscale(n, v))
            if c.newton != nu or not datum.leq_coroot_order(nu, upper):
                raise InternalInvariantError("enumerated class disagrees with its pairing data")
            found.append(c)
    found.sort(key=sort_key)
    return found


class KottwitzSet:
    """An enumerated B(G, mu, b), possibly transported to an inner form."""

    def __init__(self, datum: RootDatum, mu, b: SigmaConjClass, elements: Sequence[SigmaConjClass]):
        self.datum = datum
        self.mu = tuple(mu)
        self.b = b
        self.elements = tuple(elements)
        self._order = None
        basics = [c for c in self.elements if c.levi == datum.full]
        if len(basics) != 1:
            raise InternalInvariantError(f"expected exactly one basic element, found {len(basics)}")
        if len(set(self.elements)) != len(self.elements):
            raise InternalInvariantError("duplicate classes in Kottwitz set")

    @property
    def twist(self):
        return self.b.twist

    @property
    def b_kappa(self) -> Pi1Element:
        return kappa_G(self.datum, self.b)

    @property
    def nu_b(self):
        return self.b.newton

    @property
    def delta(self):
        d = self.datum
        return vadd(self.nu_b, d.dominant(vscale(-1, d.galois_average(self.mu))))

    @property
    def basic(self) -> SigmaConjClass:
        return next(c for c in self.elements if c.levi == self.datum.full)

    def index(self, c: SigmaConjClass) -> int:
        return self.elements.index(c)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, c):
        return c in self.elements

    @property
    def order(self) -> tuple[tuple[bool, ...], ...]:
        if self._order is None:
            self._order = tuple(tuple(leq(self.datum, a, b) for b in self.elements)
                                for a in self.elements)
        return self._order

    def leq(self, i: int, j: int) -> bool:
        return self.order[i][j]

    def translate(self, b0_kappa) -> "KottwitzSet":
        d = self.datum
        return KottwitzSet(d, self.mu, inner_twist_translate(d, self.b, b0_kappa),
                           [inner_twist_translate(d, c, b0_kappa) for c in self.elements])


def enumerate_set(datum: RootDatum, mu, b_kappa) -> KottwitzSet:
    """B(G, mu, b) for basic b given by its Kottwitz point (or an integral lift of it)."""
    mu = as_ints(mu)
    if len(mu) != datum.rank:
        raise ValueError("mu has the wrong length")
    if not datum.is_dominant(mu):
        raise ValueError(f"mu = {fmt(mu)} is not dominant")
    b = basic_class(datum, b_kappa)
    lift = vsub(b.kappa.coords, mu)
    delta = vadd(b.newton, datum.dominant(vscale(-1, datum.galois_average(mu))))
    return KottwitzSet(datum, mu, b, classes_below(datum, lift, delta))


# -- extremal elements ---------------------------------------------------------------------

def least_element(datum: RootDatum, cands: Sequence[SigmaConjClass], what: str) -> SigmaConjClass:
    """The least element of ``cands``; InternalInvariantError if there is none.

    ``sum_j <omega_j, nu>`` strictly increases along the order, so only its
    minimizer can be least; that candidate is then checked against all others.
    """
    if not cands:
        raise InternalInvariantError(f"{what}: no candidates")
    weights = datum.weight_lifts
    best = min(cands, key=lambda c: (sum(dot(w, c.newton) for w in weights), sort_key(c)))
    if not all(leq(datum, best, c) for c in cands):
        raise InternalInvariantError(f"{what}: candidates have no least element")
    return best


def _untwist(datum, c):
    return make_class(datum, c.levi, c.kappa.coords)


def _retwist(datum, c, twist):
    return make_class(datum, c.levi, c.kappa.coords, twist)


def join(datum: RootDatum, c1: SigmaConjClass, c2: SigmaConjClass) -> SigmaConjClass:
    """Least upper bound of two classes with the same Kottwitz point."""
    if c1.twist != c2.twist or kappa_G(datum, c1) != kappa_G(datum, c2):
        raise KappaMismatchError("join needs classes with equal kappa_G")
    if c1.twist is not None:
        j = join(datum, _untwist(datum, c1), _untwist(datum, c2))
        return _retwist(datum, j, c1.twist)
    if leq(datum, c1, c2):
        return c2
    if leq(datum, c2, c1):
        return c1
    x0 = c1.kappa.coords
    nu0 = datum.av_levi(x0, datum.full)
    k1 = datum.coroot_coefficients(vsub(c1.newton, nu0))
    k2 = datum.coroot_coefficients(vsub(c2.newton, nu0))
    top = datum.coroot_combination([max(a, b) for a, b in zip(k1, k2)])
    box = vadd(nu0, top)
    # An explicit common upper bound: the class of lambda = x0 + t * 2rho^vee once
    # lambda^avg is dominant and above both Newton points.
    step = datum.two_rho_check
    xbar = datum.galois_average(x0)
    t = 0
    for a in datum.simple_roots:
        t = max(t, math.ceil(Fraction(-dot(a, xbar), 2)))
    mult = datum.coroot_coefficients(step)
    for nu in (c1.newton, c2.newton):
        gap = datum.coroot_coefficients(vsub(xbar, nu))
        for g, m in zip(gap, mult):
            t = max(t, math.ceil(-g / m))
    witness = lambda_class(datum, vadd(x0, vscale(t, step)))
    if not (leq(datum, c1, witness) and leq(datum, c2, witness)):
        raise InternalInvariantError("join search bound is not an upper bound")
    # Any bound lying above some common upper bound contains the join, so grow
    # box + s * sum(alpha_i^vee) until one appears; s_max already covers the witness.
    ones = datum.coroot_combination([1] * datum.ss_rank)
    s_max = max([0] + [math.ceil(-x) for x in datum.coroot_coefficients(vsub(box, witness.newton))])
    for s in range(s_max + 1):
        cands = [c for c in classes_below(datum, x0, vadd(box, vscale(s, ones)))
                 if leq(datum, c1, c) and leq(datum, c2, c)]
        if cands:
            return least_element(datum, cands, "join")
    raise InternalInvariantError("join search exhausted its bound")


def b_of_lambda(datum: RootDatum, lam) -> SigmaConjClass:
    """The least class with kappa_G = lam^sharp and Newton point >= (w0 lam)^avg."""
    lam = as_ints(lam)
    cache = datum.__dict__.setdefault("_b_of_lambda_cache", {})
    if lam not in cache:
        cache[lam] = _b_of_lambda(datum, lam)
    return cache[lam]


def _b_of_lambda(datum: RootDatum, lam) -> SigmaConjClass:
    lower = datum.galois_average(datum.longest_element_action(lam))
    top = lambda_class(datum, lam)
    cands = [c for c in classes_below(datum, lam, top.newton)
             if datum.leq_coroot_order(lower, c.newton)]
    if top not in cands:
        raise InternalInvariantError("class of lambda(xi) missing from b(lambda) search")
    c = least_element(datum, cands, "b(lambda)")
    # kappa_M(b) = w0(lam)^{sharp_M}
    if datum.sharp_levi(datum.longest_element_action(lam), c.levi) != c.kappa:
        raise InternalInvariantError("b(lambda) fails kappa_M = w0(lambda)^sharp_M")
    return c


def minimal_lambda(datum: RootDatum, c: SigmaConjClass) -> tuple[int, ...]:
    """A lambda with b(lambda) = c minimizing <rho, lambda>.

    With ``M`` the centralizer of ``nu = nu_c`` and ``x`` a lift of
    ``kappa_M``, ``w0 lambda`` must be congruent to ``x`` in pi_1(M)_Gamma
    with Galois average ``<= nu``; ``<rho, lambda>`` is smallest when every
    orbit pairing ``<omega_j, (w0 lambda)^avg>`` (``j`` in ``M``) is the
    largest admissible value, a floor.  For central ``nu`` in ``GL_n`` this
    reads ``<omega_i, lambda> = ceil(<omega_i, nu>)``.
    """
    if c.twist is not None:
        raise ValueError("minimal_lambda is defined on the quasi-split group only")
    x = c.kappa.coords
    nu = c.newton
    gap = datum.coroot_coefficients(vsub(nu, datum.galois_average(x)))
    lam_w = list(x)
    for o in datum.orbits_inside(c.levi):
        n = math.floor(len(o) * gap[o[0]])
        for k, y in enumerate(datum.simple_coroots[o[0]]):
            lam_w[k] += n * y
    lam_w = tuple(lam_w)
    lam = datum.longest_element_action(lam_w)
    if b_of_lambda(datum, lam) != c:
        raise InternalInvariantError(f"b(lambda) != c for lambda = {fmt(lam)}")
    # kappa_{M'}(b_{M'}) = w0(lambda)^{sharp_{M'}} for the reduction Levi M' of [b]_M
    m2 = reduction_levi(datum, c)
    red = reduction_lift(datum, x, c.levi, m2, nu)
    if datum.av_levi(lam_w, m2) != nu or datum.sharp_levi(red, m2) != datum.sharp_levi(lam_w, m2):
        raise InternalInvariantError("minimal lambda violates the reduction compatibility")
    return lam


def lambda_box_search(datum: RootDatum, c: SigmaConjClass, center, radius: int = 1):
    """Brute force: lambdas ``center + sum e_i alpha_i^vee`` (|e_i| <= radius) plus
    central integral shifts along the lattice, with b(lambda) = c.

    Returns the list of ``(value <rho, lambda>, lambda)`` found.
    """
    center = as_ints(center)
    out = []
    target = kappa_G(datum, c)
    steps = list(datum.simple_coroots)
    for es in product(range(-radius, radius + 1), repeat=len(steps)):
        lam = list(center)
        for e, s in zip(es, steps):
            for k, y in enumerate(s):
                lam[k] += e * y
        lam = tuple(lam)
        if datum.sharp_levi(lam, datum.full) != target:
            continue
        # b(lambda) = c forces (w0 lambda)^avg <= nu_c; skip the search otherwise
        if not datum.leq_coroot_order(datum.galois_average(datum.longest_element_action(lam)), c.newton):
            continue
        if b_of_lambda(datum, lam) == c:
            out.append((dot(datum.rho, lam), lam))
    return out


def inner_twist_translate(datum: RootDatum, c: SigmaConjClass, b0_kappa) -> SigmaConjClass:
    """Transport ``c`` to the inner form of ``b0``: the class of ``b b0^{-1}``.

    Kottwitz point moves by ``-kappa(b0)``, the Newton point by the central
    ``-nu_{b0}``.  When ``b0`` reduces to the torus the inner form is the
    group itself and the result is an ordinary class.
    """
    b0 = g_element(datum, b0_kappa)
    total = b0 if c.twist is None else datum.sharp_levi(vadd(c.twist.coords, b0.coords), datum.full)
    nu_t = datum.av_levi(total.coords, datum.full)
    x = reduction_lift(datum, total.coords, datum.full, LeviSubset(), nu_t)
    if x is not None:
        return make_class(datum, c.levi, vsub(c.kappa.coords, x))
    return make_class(datum, c.levi, c.kappa.coords, total)
