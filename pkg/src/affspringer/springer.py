"""Cell combinatorics for affine Springer and Spaltenstein fibres of s (x) t.

Only the finite data is computed: the sets E_x, cell dimensions, the number
of distinct E_x, the count of alcoves in the minimal region, and the
one-dimensional torus orbits (GKM edges) between fixed points.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .affweyl import (
    AffineRoot,
    AffineWeylElement,
    alcove_value,
    identity,
    reflection,
    simple_affine_reflections,
    simple_affine_root,
)
from .errors import InputError
from .rootdata import RootDatum, Vec, WeylElement, enumerate_weyl, is_positive_root, neg, pair


@dataclass(frozen=True)
class CellDescriptor:
    x: AffineWeylElement
    e_set: frozenset
    dim: int


def e_ambient(rd: RootDatum) -> list[AffineRoot]:
    """(Phi+ - delta) followed by Phi-."""
    return [AffineRoot(a, -1) for a in rd.positive_roots] + [AffineRoot(neg(a), 0) for a in rd.positive_roots]


def e_set(rd: RootDatum, x: AffineWeylElement) -> CellDescriptor:
    e = frozenset(b for b in e_ambient(rd) if x.act_affine_root(b).is_positive())
    return CellDescriptor(x, e, len(e))


def _e_mask(wroots: list[Vec], wpos: list[bool], mu: Vec) -> int:
    """Bitmask form of E_x for x = tau_mu w, given w(alpha) for alpha in Phi+."""
    n = len(wroots)
    mask = 0
    for i, (wa, pos) in enumerate(zip(wroots, wpos)):
        c = sum(p * q for p, q in zip(wa, mu))
        # x(alpha - delta) = w(alpha) + (-1 - c) delta
        if c <= -2 or (c == -1 and pos):
            mask |= 1 << i
        # x(-alpha) = -w(alpha) + c delta
        if c > 0 or (c == 0 and not pos):
            mask |= 1 << (n + i)
    return mask


def e_mask(rd: RootDatum, x: AffineWeylElement) -> int:
    wr = [x.w.apply_root(a) for a in rd.positive_roots]
    return _e_mask(wr, [is_positive_root(v) for v in wr], x.mu)


def mask_to_set(rd: RootDatum, mask: int) -> frozenset:
    amb = e_ambient(rd)
    return frozenset(b for i, b in enumerate(amb) if mask >> i & 1)


@dataclass
class SimClassReport:
    radius: int
    counts: list[int]
    count: int
    stable: bool


def _shell(r: int, B: int):
    """Integer vectors of sup-norm exactly B (B=0 gives the origin)."""
    if B == 0:
        yield (0,) * r
        return
    rng = range(-B, B + 1)

    def rec(prefix, hit):
        if len(prefix) == r:
            if hit:
                yield tuple(prefix)
            return
        for v in rng:
            yield from rec(prefix + [v], hit or abs(v) == B)

    yield from rec([], False)


def sim_classes(rd: RootDatum, radius: int | None = None, weyl: Iterable[WeylElement] | None = None) -> SimClassReport:
    """Distinct E_x over x = tau_mu w with every |mu_i| <= radius.

    counts[B] is the number of classes seen within radius B; the result is
    stable when the last two radii agree.
    """
    if radius is None:
        radius = rd.coxeter_number
    if radius < 0:
        raise InputError("radius must be nonnegative")
    ws = list(weyl) if weyl is not None else list(enumerate_weyl(rd))
    data = []
    for w in ws:
        wr = [w.apply_root(a) for a in rd.positive_roots]
        data.append((wr, [is_positive_root(v) for v in wr]))
    seen: set[int] = set()
    counts = []
    for B in range(radius + 1):
        for mu in _shell(rd.rank, B):
            for wr, wp in data:
                seen.add(_e_mask(wr, wp, mu))
        counts.append(len(seen))
    stable = len(counts) >= 2 and counts[-1] == counts[-2]
    return SimClassReport(radius, counts, counts[-1], stable)


def alcove_region_count(rd: RootDatum) -> int:
    """Alcoves A with every simple affine root taking values > -1 on A."""
    gens = simple_affine_reflections(rd)
    simple = [simple_affine_root(rd, i) for i in range(rd.rank + 1)]

    def inside(y):
        return all(alcove_value(rd, y, b) > -1 for b in simple)

    start = identity(rd)
    seen = {start}
    queue = deque([start])
    while queue:
        y = queue.popleft()
        for s in gens:
            z = s * y
            if z not in seen and inside(z):
                seen.add(z)
                queue.append(z)
    return len(seen)


def facet_point(rd: RootDatum, J: Iterable[int]) -> tuple[Fraction, ...]:
    """Barycentre of the facet of the fundamental alcove cut out by the walls in J."""
    J = set(J)
    r = rd.rank
    if len(J) > r:
        raise InputError("J must be a proper subset of the affine nodes")
    theta = rd.highest_root
    verts = []
    for k in range(r + 1):
        if k in J:
            continue
        if k == 0:
            verts.append((Fraction(0),) * r)
        else:
            verts.append(tuple(Fraction(int(i == k - 1), theta[k - 1]) for i in range(r)))
    n = len(verts)
    return tuple(sum(v[i] for v in verts) / n for i in range(r))


def _value_at(beta: AffineRoot, p) -> Fraction:
    return sum(a * b for a, b in zip(beta.root, p)) + beta.level


def cell_dim_spaltenstein(rd: RootDatum, x: AffineWeylElement, J: Iterable[int] = ()) -> int:
    """Count positive real gamma with x^-1(gamma) strictly between the J-walls and their delta-shift."""
    p = facet_point(rd, J)
    xi = x.inverse()
    span = max((abs(pair(a, x.mu)) for a in rd.positive_roots), default=0) + 2
    total = 0
    for a in rd.roots:
        for k in range(-span, span + 1):
            g = AffineRoot(a, k)
            if not g.is_positive():
                continue
            v = _value_at(xi.act_affine_root(g), p)
            if -1 < v < 0:
                total += 1
    return total


def canonical_coset_rep(rd: RootDatum, x: AffineWeylElement, J: Iterable[int], ell: int = 1) -> AffineWeylElement:
    """Shortest element of x W_J (for J a proper set of affine nodes)."""
    J = sorted(set(J))
    gens = simple_affine_reflections(rd, ell)
    roots = {j: simple_affine_root(rd, j, ell) for j in J}
    while True:
        j = next((j for j in J if not x.act_affine_root(roots[j]).is_positive()), None)
        if j is None:
            return x
        x = x * gens[j]


def spaltenstein_edges(
    rd: RootDatum, x: AffineWeylElement, J: Iterable[int] = (), ell: int = 1
) -> set[tuple[AffineWeylElement, Vec]]:
    """Torus-fixed neighbours of x joined by one-dimensional orbits, labelled by alpha.

    For every alpha whose reflections s_{alpha + l n delta} never conjugate
    into W_{l,J}, m is the largest k with x^-1(alpha + l k delta) off the
    positive side of the J-facet. Both s_{alpha+lm delta} x and
    s_{alpha+l(m+1) delta} x are returned, which makes the relation symmetric.
    """
    J = frozenset(J)
    if any(m % ell for m in x.mu):
        raise InputError(f"x is not in the {ell}-dilated extended affine Weyl group")
    p = facet_point(rd, J)
    mu1 = tuple(m // ell for m in x.mu)
    winv = x.w.inverse()
    out = set()
    for a in rd.positive_roots:
        c0 = sum(u * v for u, v in zip(winv.apply_root(a), p)) + pair(a, mu1)
        if c0.denominator == 1:
            continue
        m = math.floor(-c0)
        for k in (m, m + 1):
            s = reflection(rd, a, ell * k)
            y = AffineWeylElement(s.w, s.mu, ell) * x
            out.add((canonical_coset_rep(rd, y, J, ell), a))
    return out


def out_edge_level(rd: RootDatum, x: AffineWeylElement, alpha: Vec, J: Iterable[int] = (), ell: int = 1) -> int | None:
    """The m of the edge at (x, alpha) by a descending level scan, or None when excluded."""
    p = tuple(q * ell for q in facet_point(rd, J))
    xi = x.inverse()
    span = max((abs(pair(a, x.mu)) for a in rd.positive_roots), default=0) // ell + 3
    vals = [(k, _value_at(xi.act_affine_root(AffineRoot(tuple(alpha), ell * k)), p)) for k in range(span, -span - 1, -1)]
    if any(v == 0 for _, v in vals):
        return None
    return next(k for k, v in vals if v < 0)
