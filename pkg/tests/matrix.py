"""The group / mu / b combinations exercised by the property suites."""

from functools import lru_cache

from newtonstrata import catalog
from newtonstrata.kottwitz import enumerate_set

GROUPS = {
    "GL2": (catalog.gl(2), [(1, 0), (2, 0), (4, 0), (3, 1)]),
    "GL3": (catalog.gl(3), [(1, 0, 0), (1, 1, 0), (2, 0, 0), (2, 1, 0), (3, 0, 0)]),
    "GL4": (catalog.gl(4), [(1, 0, 0, 0), (1, 1, 0, 0), (2, 0, 0, 0), (2, 1, 0, 0)]),
    "GL5": (catalog.gl(5), [(1, 0, 0, 0, 0), (1, 1, 0, 0, 0), (2, 1, 0, 0, 0)]),
    "Sp4": (catalog.sp(2), [(1, 0), (1, 1), (2, 0), (2, 1)]),
    "SO5": (catalog.so_odd(2), [(1, 0), (1, 1), (2, 0)]),
    "PGL3": (catalog.pgl(3), [(1, 0), (1, 1), (2, 0)]),
    "U3": (catalog.unitary(3), [(1, 0, 0), (1, 1, 0), (2, 0, 0), (1, 0, -1)]),
}


def b_lifts(d):
    return [tuple([0] * d.rank), tuple([1] + [0] * (d.rank - 1))]


@lru_cache(maxsize=None)
def kset(name, mu, b):
    return enumerate_set(GROUPS[name][0], mu, b)


def cases(names=None):
    """Yield ``(name, datum, mu, b, KottwitzSet)`` over the matrix."""
    for name, (d, mus) in GROUPS.items():
        if names and name not in names:
            continue
        for mu in mus:
            for b in b_lifts(d):
                yield name, d, mu, b, kset(name, mu, b)


def twists(d):
    """A small sweep of basic Kottwitz points to translate by."""
    out = [tuple([0] * d.rank), tuple([1] + [0] * (d.rank - 1))]
    if d.rank > 1:
        out.append(tuple([1, 1] + [0] * (d.rank - 2)))
    out.append(tuple([-1] + [0] * (d.rank - 1)))
    return out
