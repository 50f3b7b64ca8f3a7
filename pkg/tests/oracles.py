"""Reference implementations used only by the tests.

They are deliberately naive and share no code with the package beyond the
root datum primitives (pairings, averages, coinvariant reduction) that are
tested on their own.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations, product

# -- integer matrices -----------------------------------------------------------


def _copy(m):
    return [list(map(int, row)) for row in m]


def hnf_oracle(m):
    """Row-style Hermite form by 2x2 Bezout steps.

    Rows span the same lattice; pivots positive; entries above a pivot
    reduced into [0, pivot); zero rows at the bottom.
    """
    a = _copy(m)
    rows = len(a)
    cols = len(a[0]) if rows else 0
    r = 0
    for c in range(cols):
        if r == rows:
            break
        for i in range(r + 1, rows):
            if a[i][c] == 0:
                continue
            x, y = a[r][c], a[i][c]
            g, s, t = _egcd(x, y)
            p, q = x // g, y // g
            top = [s * u + t * v for u, v in zip(a[r], a[i])]
            bot = [-q * u + p * v for u, v in zip(a[r], a[i])]
            a[r], a[i] = top, bot
        if a[r][c] == 0:
            continue
        if a[r][c] < 0:
            a[r] = [-u for u in a[r]]
        piv = a[r][c]
        for i in range(r):
            f = a[i][c] // piv
            a[i] = [u - f * v for u, v in zip(a[i], a[r])]
        r += 1
    return a


def _egcd(x, y):
    if y == 0:
        return (abs(x), 1 if x >= 0 else -1, 0)
    old_r, rr = x, y
    old_s, s = 1, 0
    old_t, t = 0, 1
    while rr:
        qq = old_r // rr
        old_r, rr = rr, old_r - qq * rr
        old_s, s = s, old_s - qq * s
        old_t, t = t, old_t - qq * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def snf_oracle(m):
    """Invariant factors by the textbook pivot-and-clear loop."""
    a = _copy(m)
    rows = len(a)
    cols = len(a[0]) if rows else 0
    out = []
    t = 0
    while t < min(rows, cols):
        cells = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j]]
        if not cells:
            break
        _, i, j = min(cells)
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        done = False
        while not done:
            done = True
            p = a[t][t]
            for i in range(t + 1, rows):
                f = a[i][t] // p
                a[i] = [u - f * v for u, v in zip(a[i], a[t])]
                if a[i][t]:
                    a[t], a[i] = a[i], a[t]
                    done = False
                    break
            if not done:
                continue
            for j in range(t + 1, cols):
                f = a[t][j] // p
                for row in a:
                    row[j] -= f * row[t]
                if a[t][j]:
                    for row in a:
                        row[t], row[j] = row[j], row[t]
                    done = False
                    break
            if not done:
                continue
            bad = [(i, j) for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % p]
            if bad:
                i, _ = bad[0]
                a[t] = [u + v for u, v in zip(a[t], a[i])]
                done = False
        out.append(abs(a[t][t]))
        t += 1
    return tuple(out)


def det_int(m):
    """Integer determinant by Bareiss elimination."""
    a = _copy(m)
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def determinantal_divisors(m):
    """Invariant factors as ratios of gcds of k x k minors."""
    rows = len(m)
    cols = len(m[0]) if rows else 0
    ds = [1]
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for ri in combinations(range(rows), k):
            for ci in combinations(range(cols), k):
                g = math.gcd(g, det_int([[m[i][j] for j in ci] for i in ri]))
        if g == 0:
            break
        ds.append(g)
    return tuple(ds[k] // ds[k - 1] for k in range(1, len(ds)))


# -- GL_n Newton polygons --------------------------------------------------------------


def _compositions(n):
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in _compositions(n - first):
            yield (first,) + rest


def _partial_sums(v):
    out, s = [], Fraction(0)
    for x in v:
        s += x
        out.append(s)
    return out


def polygon_leq(a, b):
    """Dominance for GL: same total and partial sums of a below those of b."""
    pa, pb = _partial_sums(a), _partial_sums(b)
    return pa[-1] == pb[-1] and all(x <= y for x, y in zip(pa, pb))


def gl_polygons(n, total, lo, hi):
    """All concave polygons with integral breakpoints, slopes in [lo, hi], given total."""
    out = set()
    for comp in _compositions(n):
        ranges = [range(math.ceil(k * lo), math.floor(k * hi) + 1) for k in comp]
        for ds in product(*ranges):
            if sum(ds) != total:
                continue
            slopes = [Fraction(d, k) for d, k in zip(ds, comp)]
            if any(slopes[i] <= slopes[i + 1] for i in range(len(slopes) - 1)):
                continue
            out.add(tuple(s for s, k in zip(slopes, comp) for _ in range(k)))
    return out


def gl_kottwitz_polygons(n, mu, b_total=0):
    """Newton points of B(GL_n, mu, b) for basic b of degree b_total."""
    basic = Fraction(b_total, n)
    delta = sorted((basic - m for m in mu), reverse=True)
    total = b_total - sum(mu)
    return sorted(p for p in gl_polygons(n, total, min(delta), max(delta)) if polygon_leq(p, delta))


def upper_hull(v):
    """Slopes of the least concave polygon above the path with steps ``v``."""
    pts = [(0, Fraction(0))]
    for i, x in enumerate(v):
        pts.append((i + 1, pts[-1][1] + x))
    hull = []
    for p in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (y2 - y1) * (p[0] - x1) <= (p[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(p)
    out = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        out.extend([Fraction(y2 - y1, x2 - x1)] * (x2 - x1))
    return tuple(out)


def gl_b_of_lambda(lam):
    """Newton point of b(lambda) for GL_n: the hull of the path w0(lambda)."""
    return upper_hull(tuple(reversed(lam)))


def gl_join(a, b):
    """Least polygon with integral breakpoints above both ``a`` and ``b``."""
    n = len(a)
    lo = min(min(a), min(b)) - 1
    hi = max(max(a), max(b)) + 1
    total = sum(a)
    ups = [p for p in gl_polygons(n, total, lo, hi) if polygon_leq(a, p) and polygon_leq(b, p)]
    least = [p for p in ups if all(polygon_leq(p, q) for q in ups)]
    assert len(least) == 1
    return least[0]


# -- general root data ------------------------------------------------------------------


def brute_classes(datum, lift, upper):
    """Classes with kappa_G = lift^sharp and Newton point <= upper, by a plain box scan.

    For each stable Levi ``M`` the lifts ``lift + n_r alpha_r^vee`` (``r``
    one representative per Galois orbit off ``M``) are scanned with every
    ``|n_r|`` up to a generous radius.
    """
    found = set()
    base = datum.av_levi(lift, datum.full)
    for m in datum.stable_levis():
        reps = [o[0] for o in datum.orbits if o[0] not in m]
        x_m = datum.av_levi(lift, m)
        lo = datum.coroot_coefficients(tuple(a - b for a, b in zip(base, x_m)))
        hi = datum.coroot_coefficients(tuple(a - b for a, b in zip(upper, x_m)))
        radius = 2 + max([abs(v) for v in lo + hi] + [0]) * max([len(o) for o in datum.orbits] + [1])
        radius = math.ceil(radius)
        for ns in product(range(-radius, radius + 1), repeat=len(reps)):
            x = list(lift)
            for n, r in zip(ns, reps):
                for k, y in enumerate(datum.simple_coroots[r]):
                    x[k] += n * y
            nu = datum.av_levi(x, m)
            ok = True
            for i, a in enumerate(datum.simple_roots):
                p = sum(u * v for u, v in zip(a, nu))
                if (i in m and p != 0) or (i not in m and p <= 0):
                    ok = False
                    break
            if ok and datum.leq_coroot_order(nu, upper):
                found.add((m.indices, datum.sharp_levi(x, m).coords, tuple(nu)))
    return found


def brute_lub(order_leq, elements, i, j):
    """Index of the least upper bound of elements i and j inside a finite poset."""
    ups = [k for k in range(len(elements)) if order_leq(i, k) and order_leq(j, k)]
    least = [k for k in ups if all(order_leq(k, u) for u in ups)]
    assert len(least) == 1
    return least[0]


def hn_decomposable_by_definition(datum, delta, c):
    """Some proper stable Levi contains the centralizer and the support of delta - nu."""
    diff = tuple(a - b for a, b in zip(delta, c.newton))
    for m in datum.stable_levis():
        if m == datum.full or not set(c.levi) <= set(m):
            continue
        coeffs = datum.coroot_coefficients(diff)
        if coeffs is not None and all(coeffs[i] == 0 for i in range(datum.ss_rank) if i not in m):
            return True
    return False
