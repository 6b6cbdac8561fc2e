import random

from hypothesis import strategies as st

from affspringer.affweyl import AffineRoot, AffineWeylElement
from affspringer.rootdata import enumerate_weyl, root_datum

_WEYL = {}


def weyl_list(rd):
    if rd.label not in _WEYL:
        _WEYL[rd.label] = sorted(enumerate_weyl(rd), key=lambda w: w.mat)
    return _WEYL[rd.label]


def random_element(rng: random.Random, rd, ell=1, radius=4) -> AffineWeylElement:
    w = rng.choice(weyl_list(rd))
    mu = tuple(ell * rng.randint(-radius, radius) for _ in range(rd.rank))
    return AffineWeylElement(w, mu, ell)


def elements(label, ell=1, radius=4):
    rd = root_datum(label)
    ws = weyl_list(rd)
    return st.builds(
        lambda i, mu: AffineWeylElement(ws[i], tuple(ell * m for m in mu), ell),
        st.integers(0, len(ws) - 1),
        st.lists(st.integers(-radius, radius), min_size=rd.rank, max_size=rd.rank),
    )


def coweights(label, radius=10):
    rd = root_datum(label)
    return st.lists(st.integers(-radius, radius), min_size=rd.rank, max_size=rd.rank).map(tuple)


def affine_roots(label, radius=6):
    rd = root_datum(label)
    roots = list(rd.roots)
    return st.builds(lambda i, k: AffineRoot(roots[i], k), st.integers(0, len(roots) - 1), st.integers(-radius, radius))
