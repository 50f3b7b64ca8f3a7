"""Based root data with a finite Galois action.

Cocharacters live in ``X = Z^rank`` and are plain tuples (of ints or
Fractions).  Roots and weights are covectors; pairing is the dot product.
A Galois generator is an integer matrix ``g`` acting on column vectors,
``x -> g x``; it acts on covectors by ``chi -> chi g^{-1}``.

Simple roots are indexed ``0 .. ss_rank-1``.  A Weyl word ``(i1, ..., ik)``
stands for ``s_i1 s_i2 ... s_ik`` (so ``ik`` acts first).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator, Optional, Sequence

from .lattice import QuotientLattice, determinant, identity, mat_mul, mat_vec, rational_span_solve

GALOIS_ORDER_CAP = 10 ** 4
ROOT_CAP = 10 ** 4


class InvalidDatumError(ValueError):
    """Input data does not define a based root datum with Galois action."""


# -- small vector helpers ----------------------------------------------------

def vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vscale(c, a):
    return tuple(c * x for x in a)


def dot(a, b):
    return sum((x * y for x, y in zip(a, b)), 0)


def as_fractions(v) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) for x in v)


def is_integral(v) -> bool:
    return all(Fraction(x).denominator == 1 for x in v)


def as_ints(v) -> tuple[int, ...]:
    if not is_integral(v):
        raise ValueError(f"vector {v} is not integral")
    return tuple(int(Fraction(x)) for x in v)


# -- value types --------------------------------------------------------------

@dataclass(frozen=True, order=True)
class LeviSubset:
    """A set of simple-root indices, kept sorted."""

    indices: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "indices", tuple(sorted(set(self.indices))))

    def __contains__(self, i) -> bool:
        return i in self.indices

    def __iter__(self) -> Iterator[int]:
        return iter(self.indices)

    def __len__(self) -> int:
        return len(self.indices)

    def issubset(self, other: "LeviSubset") -> bool:
        return set(self.indices) <= set(other.indices)

    def __repr__(self) -> str:
        return f"LeviSubset({list(self.indices)})"


@dataclass(frozen=True)
class Pi1Element:
    """A canonical element of pi_1(M)_Gamma for the Levi ``levi``."""

    levi: LeviSubset
    coords: tuple[int, ...]


class RootDatum:
    """A based root datum on ``Z^rank`` with Galois action by diagram automorphisms."""

    def __init__(self, rank: int, simple_roots, simple_coroots, weight_lifts,
                 galois=(), label: str = ""):
        self.rank = int(rank)
        self.label = label
        self.simple_roots = tuple(self._intvec(r, "simple root") for r in simple_roots)
        self.simple_coroots = tuple(self._intvec(r, "simple coroot") for r in simple_coroots)
        self.weight_lifts = tuple(as_fractions(self._checklen(w, "weight lift")) for w in weight_lifts)
        n = len(self.simple_roots)
        if len(self.simple_coroots) != n or len(self.weight_lifts) != n:
            raise InvalidDatumError("need as many coroots and weight lifts as simple roots")
        self.ss_rank = n
        self.cartan = tuple(tuple(dot(a, c) for c in self.simple_coroots) for a in self.simple_roots)
        self._check_cartan()
        for i, w in enumerate(self.weight_lifts):
            for j, c in enumerate(self.simple_coroots):
                if dot(w, c) != (1 if i == j else 0):
                    raise InvalidDatumError(f"weight lift {i} does not pair to delta with coroot {j}")
        self.galois_generators = tuple(self._check_galois(g) for g in galois)
        self._perms = tuple(self._diagram_permutation(g) for g in self.galois_generators)
        self.galois_group = self._close_group()
        self.orbits = self._orbits()
        self.full = LeviSubset(tuple(range(n)))
        self._quotients: dict = {}
        self._cartan_inverse: dict = {}
        self._roots()
        self._reg = self._regular_vector()
        self._w0 = self.dominant_representative(vscale(-1, self._reg))[1]

    # -- validation ----------------------------------------------------------

    def _checklen(self, v, what):
        v = tuple(v)
        if len(v) != self.rank:
            raise InvalidDatumError(f"{what} {v} has length {len(v)}, expected {self.rank}")
        return v

    def _intvec(self, v, what):
        v = self._checklen(v, what)
        try:
            return as_ints(v)
        except (ValueError, TypeError):
            raise InvalidDatumError(f"{what} {v} must be integral") from None

    def _check_cartan(self):
        a = self.cartan
        n = self.ss_rank
        for i in range(n):
            if a[i][i] != 2:
                raise InvalidDatumError(f"Cartan diagonal entry {i} is {a[i][i]}, not 2")
            for j in range(n):
                if i != j:
                    if a[i][j] > 0:
                        raise InvalidDatumError("positive off-diagonal Cartan entry")
                    if (a[i][j] == 0) != (a[j][i] == 0):
                        raise InvalidDatumError("Cartan matrix is not symmetrizable")

    def _check_galois(self, g):
        g = tuple(tuple(int(x) for x in row) for row in g)
        if len(g) != self.rank or any(len(row) != self.rank for row in g):
            raise InvalidDatumError("Galois generator has wrong shape")
        if abs(determinant(g)) != 1:
            raise InvalidDatumError("Galois generator is not a lattice automorphism")
        return g

    def _diagram_permutation(self, g):
        perm = []
        for i, c in enumerate(self.simple_coroots):
            image = mat_vec(g, c)
            try:
                j = self.simple_coroots.index(image)
            except ValueError:
                raise InvalidDatumError(f"Galois generator does not permute simple coroots") from None
            # alpha_j(g x) must equal alpha_i(x)
            row = tuple(sum(self.simple_roots[j][k] * g[k][l] for k in range(self.rank))
                        for l in range(self.rank))
            if row != self.simple_roots[i]:
                raise InvalidDatumError("Galois generator does not permute simple roots compatibly")
            perm.append(j)
        if sorted(perm) != list(range(self.ss_rank)):
            raise InvalidDatumError("Galois generator does not induce a permutation")
        return tuple(perm)

    def _close_group(self):
        one = identity(self.rank)
        seen = {one}
        frontier = [one]
        while frontier:
            nxt = []
            for h in frontier:
                for g in self.galois_generators:
                    k = mat_mul(g, h)
                    if k not in seen:
                        seen.add(k)
                        nxt.append(k)
                        if len(seen) > GALOIS_ORDER_CAP:
                            raise InvalidDatumError("Galois action generates a group of order > 10^4")
            frontier = nxt
        return tuple(sorted(seen))

    def _orbits(self):
        parent = list(range(self.ss_rank))

        def find(i):
            while parent[i] != i:
                i = parent[i]
            return i

        for p in self._perms:
            for i, j in enumerate(p):
                a, b = find(i), find(j)
                if a != b:
                    parent[max(a, b)] = min(a, b)
        groups: dict = {}
        for i in range(self.ss_rank):
            groups.setdefault(find(i), []).append(i)
        return tuple(tuple(v) for _, v in sorted(groups.items()))

    def _roots(self):
        # roots as coefficient vectors in the simple roots; W-orbit of Delta
        n = self.ss_rank
        a = self.cartan

        def orbit(start, pair):
            seen = set(start)
            frontier = list(start)
            while frontier:
                nxt = []
                for b in frontier:
                    for i in range(n):
                        p = pair(b, i)
                        if p:
                            c = tuple(x - (p if k == i else 0) for k, x in enumerate(b))
                            if c not in seen:
                                seen.add(c)
                                nxt.append(c)
                                if len(seen) > ROOT_CAP:
                                    raise InvalidDatumError("Cartan matrix is not of finite type")
                frontier = nxt
            return seen

        unit = [tuple(int(k == i) for k in range(n)) for i in range(n)]
        # <beta, alpha_i^vee> = sum_k b_k a[k][i];  <alpha_i, gamma^vee> = sum_k c_k a[i][k]
        root_coeffs = orbit(unit, lambda b, i: sum(b[k] * a[k][i] for k in range(n)))
        coroot_coeffs = orbit(unit, lambda c, i: sum(c[k] * a[i][k] for k in range(n)))
        for coeffs in (root_coeffs, coroot_coeffs):
            for b in coeffs:
                if not (all(x >= 0 for x in b) or all(x <= 0 for x in b)):
                    raise InvalidDatumError("Cartan matrix is not of finite type")
        self.positive_root_coeffs = tuple(sorted(b for b in root_coeffs if all(x >= 0 for x in b)))
        self.positive_coroot_coeffs = tuple(sorted(c for c in coroot_coeffs if all(x >= 0 for x in c)))

        def comb(coeffs, basis):
            out = [0] * self.rank
            for c, v in zip(coeffs, basis):
                for k in range(self.rank):
                    out[k] += c * v[k]
            return tuple(out)

        self.positive_roots = tuple(comb(b, self.simple_roots) for b in self.positive_root_coeffs)
        self.positive_coroots = tuple(comb(c, self.simple_coroots) for c in self.positive_coroot_coeffs)
        zero = tuple([0] * self.rank)
        self.rho = vscale(Fraction(1, 2), sum_vectors(self.positive_roots, zero))
        self.two_rho_check = sum_vectors(self.positive_coroots, zero)

    def _regular_vector(self):
        # coroot combination with <alpha_i, x> = 1 for every i
        n = self.ss_rank
        if n == 0:
            return tuple([Fraction(0)] * self.rank)
        cols = [tuple(self.cartan[j][i] for j in range(n)) for i in range(n)]
        c = rational_span_solve(cols, [1] * n)
        return self.coroot_combination(c)

    # -- basic pairings --------------------------------------------------------

    def pairing(self, chi, nu):
        return dot(chi, nu)

    def coroot_combination(self, coeffs, indices=None):
        idx = range(self.ss_rank) if indices is None else indices
        out = [Fraction(0)] * self.rank
        for c, i in zip(coeffs, idx):
            for k, x in enumerate(self.simple_coroots[i]):
                out[k] += c * x
        return tuple(out)

    def coroot_coefficients(self, v, levi: Optional[LeviSubset] = None):
        """Coefficients of ``v`` in the simple coroots of ``levi`` (all by default).

        Returns None when ``v`` is outside that rational span.  Since
        ``<omega_i, alpha_j^vee> = delta_ij`` the candidate coefficients are
        the weight pairings; a residual check confirms membership.
        """
        c = [dot(w, v) for w in self.weight_lifts]
        if any(x != y for x, y in zip(v, self.coroot_combination(c))):
            return None
        if levi is None:
            return tuple(Fraction(x) for x in c)
        if any(c[i] != 0 for i in range(self.ss_rank) if i not in levi):
            return None
        return tuple(Fraction(c[i]) for i in levi)

    def is_dominant(self, nu) -> bool:
        return all(dot(a, nu) >= 0 for a in self.simple_roots)

    def reflect(self, i: int, nu):
        p = dot(self.simple_roots[i], nu)
        if not p:
            return tuple(nu)
        return tuple(x - p * c for x, c in zip(nu, self.simple_coroots[i]))

    def reflect_covector(self, i: int, chi):
        p = dot(chi, self.simple_coroots[i])
        if not p:
            return tuple(chi)
        return tuple(x - p * a for x, a in zip(chi, self.simple_roots[i]))

    def apply_word(self, word: Sequence[int], nu):
        for i in reversed(word):
            nu = self.reflect(i, nu)
        return tuple(nu)

    def dominant_representative(self, nu):
        """Return ``(nu_dom, word)`` with ``apply_word(word, nu) == nu_dom``."""
        nu = tuple(nu)
        word: tuple = ()
        while True:
            i = next((k for k, a in enumerate(self.simple_roots) if dot(a, nu) < 0), None)
            if i is None:
                return nu, word
            nu = self.reflect(i, nu)
            word = (i,) + word

    def dominant(self, nu):
        return self.dominant_representative(nu)[0]

    def weyl_orbit(self, nu) -> set:
        nu = tuple(nu)
        seen = {nu}
        frontier = [nu]
        while frontier:
            nxt = []
            for v in frontier:
                for i in range(self.ss_rank):
                    w = self.reflect(i, v)
                    if w not in seen:
                        seen.add(w)
                        nxt.append(w)
            frontier = nxt
        return seen

    def weyl_group(self) -> list[tuple[int, ...]]:
        """Reduced words, one per Weyl group element, in order of length."""
        start = self._reg
        words = {start: ()}
        frontier = [start]
        while frontier:
            nxt = []
            for v in frontier:
                for i in range(self.ss_rank):
                    w = self.reflect(i, v)
                    if w not in words:
                        words[w] = (i,) + words[v]
                        nxt.append(w)
            frontier = nxt
        return sorted(words.values(), key=lambda w: (len(w), w))

    def weyl_key(self, word) -> tuple:
        """Value identifying a Weyl element: its action on a fixed regular vector."""
        return self.apply_word(word, self._reg)

    @property
    def w0_word(self) -> tuple[int, ...]:
        return self._w0

    def longest_element_action(self, nu):
        return self.apply_word(self._w0, nu)

    def roots(self) -> tuple:
        return self.positive_roots + tuple(vscale(-1, a) for a in self.positive_roots)

    def is_minuscule(self, mu) -> bool:
        return all(dot(a, mu) in (-1, 0, 1) for a in self.positive_roots)

    # -- Galois ----------------------------------------------------------------

    @property
    def is_split(self) -> bool:
        return len(self.galois_group) == 1

    def galois_average(self, nu):
        nu = tuple(nu)
        if len(self.galois_group) == 1:
            return as_fractions(nu)
        total = [Fraction(0)] * self.rank
        for g in self.galois_group:
            for k, x in enumerate(mat_vec(g, nu)):
                total[k] += x
        size = len(self.galois_group)
        return tuple(x / size for x in total)

    def is_galois_invariant(self, nu) -> bool:
        return all(mat_vec(g, nu) == tuple(nu) for g in self.galois_generators)

    def is_stable(self, indices: Iterable[int]) -> bool:
        s = set(indices)
        return all(p[i] in s for p in self._perms for i in s)

    def levi(self, indices: Iterable[int] = ()) -> LeviSubset:
        m = LeviSubset(tuple(indices))
        if any(i < 0 or i >= self.ss_rank for i in m):
            raise ValueError(f"Levi index out of range in {m}")
        if not self.is_stable(m):
            raise ValueError(f"{m} is not Galois-stable")
        return m

    def stable_levis(self) -> list[LeviSubset]:
        """All Galois-stable standard Levi subsets, smallest first."""
        out = []
        for k in range(len(self.orbits) + 1):
            for chosen in combinations(self.orbits, k):
                out.append(LeviSubset(tuple(i for o in chosen for i in o)))
        return sorted(out, key=lambda m: (len(m), m.indices))

    def orbits_outside(self, m: LeviSubset) -> tuple:
        return tuple(o for o in self.orbits if o[0] not in m)

    def orbits_inside(self, m: LeviSubset) -> tuple:
        return tuple(o for o in self.orbits if o[0] in m)

    # -- order, Levis and averaging ------------------------------------------------

    def leq_coroot_order(self, nu, nu2) -> bool:
        c = self.coroot_coefficients(vsub(nu2, nu))
        return c is not None and all(x >= 0 for x in c)

    def centralizer_levi(self, nu) -> LeviSubset:
        idx = tuple(i for i, a in enumerate(self.simple_roots) if dot(a, nu) == 0)
        if not self.is_stable(idx):
            raise ValueError(f"centralizer of {nu} is not Galois-stable")
        return LeviSubset(idx)

    def av_levi(self, nu, m: LeviSubset):
        """Galois-invariant M-central projection of ``nu``."""
        v = self.galois_average(nu)
        idx = m.indices
        if not idx:
            return v
        inv = self._cartan_inverse.get(m)
        if inv is None:
            inv = _inverse([[Fraction(self.cartan[j][k]) for k in idx] for j in idx])
            self._cartan_inverse[m] = inv
        rhs = [dot(self.simple_roots[j], v) for j in idx]
        c = [sum(r * x for r, x in zip(row, rhs)) for row in inv]
        return vsub(v, self.coroot_combination(c, idx))

    def sharp_levi_rational(self, nu, m: LeviSubset):
        return self.av_levi(nu, m)

    def quotient(self, m: LeviSubset) -> QuotientLattice:
        q = self._quotients.get(m)
        if q is None:
            rel = [self.simple_coroots[i] for i in m]
            for g in self.galois_generators:
                for k in range(self.rank):
                    col = tuple(g[r][k] - (1 if r == k else 0) for r in range(self.rank))
                    if any(col):
                        rel.append(col)
            q = QuotientLattice(self.rank, rel)
            self._quotients[m] = q
        return q

    def sharp_levi(self, x, m: LeviSubset) -> Pi1Element:
        return Pi1Element(m, self.quotient(m).reduce(as_ints(x)))

    def push(self, p: Pi1Element, m: LeviSubset) -> Pi1Element:
        """Image of ``p`` under pi_1(p.levi)_Gamma -> pi_1(m)_Gamma."""
        if not p.levi.issubset(m):
            raise ValueError("can only push to a larger Levi")
        return self.sharp_levi(p.coords, m)

    def pi1_group(self, m: Optional[LeviSubset] = None) -> tuple[int, tuple[int, ...]]:
        return self.quotient(self.full if m is None else m).structure()

    # -- restriction -------------------------------------------------------------------

    def restrict(self, m: LeviSubset) -> "RootDatum":
        """Root datum of the standard Levi ``m``; its simple roots are ``m``'s, in order."""
        idx = m.indices
        gal = self.galois_generators if self.is_stable(idx) else None
        if gal is None:
            raise ValueError(f"{m} is not Galois-stable")
        return RootDatum(self.rank, [self.simple_roots[i] for i in idx],
                         [self.simple_coroots[i] for i in idx],
                         [self.weight_lifts[i] for i in idx], gal,
                         label=f"{self.label} Levi {list(idx)}")

    def __repr__(self) -> str:
        return f"RootDatum({self.label or 'rank ' + str(self.rank)})"


def _inverse(a):
    n = len(a)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for c in range(n):
        piv = next(r for r in range(c, n) if aug[r][c] != 0)
        aug[c], aug[piv] = aug[piv], aug[c]
        f = aug[c][c]
        aug[c] = [x / f for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                g = aug[r][c]
                aug[r] = [x - g * y for x, y in zip(aug[r], aug[c])]
    return [row[n:] for row in aug]


def sum_vectors(vs, zero):
    out = list(zero)
    for v in vs:
        for k, x in enumerate(v):
            out[k] += x
    return tuple(out)
