"""GKM graphs of block orbits, their centre-side counterparts, and section spaces.

Vertices are coweights lambda of one orbit of the l-dilated extended affine
Weyl group under the dot action, cut down to a box window
|<alpha_i, lambda + rho-check>| <= B + guard. Sections take values in the
polynomial ring on the simple-root coordinates x_1..x_r truncated in total
degree < N; the congruence along an alpha-edge is taken modulo the linear
form alpha.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .affweyl import AffineWeylElement
from .blocks import BlockPoint, residue_orbit
from .errors import InputError
from .linalg import nullspace, rank
from .rootdata import RootDatum, Vec, pair

GKM = "GKM"
CENTER = "CENTER"


def n_alpha(rd: RootDatum, mu: Iterable[int], alpha: Vec, ell: int) -> int:
    """The representative in (0, l] of <alpha, mu + rho-check> modulo l."""
    v = pair(alpha, tuple(m + 1 for m in mu)) % ell
    return ell if v == 0 else v


def alpha_down(rd: RootDatum, mu: Iterable[int], alpha: Vec, ell: int) -> Vec:
    mu = tuple(mu)
    n = n_alpha(rd, mu, alpha, ell)
    if n == ell:
        return mu
    a = rd.coroot(alpha)
    return tuple(m - n * c for m, c in zip(mu, a))


def dot_reflection(rd: RootDatum, lam: Iterable[int], alpha: Vec, m: int) -> Vec:
    """s_{alpha + m delta} . lam."""
    lam = tuple(lam)
    t = pair(alpha, lam) + sum(alpha) + m
    a = rd.coroot(alpha)
    return tuple(x - t * c for x, c in zip(lam, a))


class _DSU:
    def __init__(self, n: int):
        self.p = list(range(n))

    def find(self, i: int) -> int:
        p = self.p
        while p[i] != i:
            p[i] = p[p[i]]
            i = p[i]
        return i

    def union(self, i: int, j: int) -> None:
        a, b = self.find(i), self.find(j)
        if a != b:
            self.p[max(a, b)] = min(a, b)


@dataclass
class LabeledGraph:
    rd: RootDatum
    ell: int
    vertices: list[Vec]
    edges: dict[Vec, set[tuple[int, int]]]
    kind: str
    window: int
    guard: int
    omega: Vec | None = None
    index: dict[Vec, int] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if not self.index:
            self.index = {v: i for i, v in enumerate(self.vertices)}

    def edge_list(self):
        for a in sorted(self.edges):
            for i, j in sorted(self.edges[a]):
                yield self.vertices[i], self.vertices[j], a, self.kind

    def neighbors(self, v: Vec, alpha: Vec) -> set[Vec]:
        i = self.index[tuple(v)]
        out = set()
        for p, q in self.edges.get(tuple(alpha), ()):
            if p == i:
                out.add(self.vertices[q])
            elif q == i:
                out.add(self.vertices[p])
        return out

    def components(self, alpha: Vec | None = None) -> list[int]:
        """Component label per vertex, using edges of one root (or all roots)."""
        d = _DSU(len(self.vertices))
        roots = [tuple(alpha)] if alpha is not None else list(self.edges)
        for a in roots:
            for i, j in self.edges.get(a, ()):
                d.union(i, j)
        return [d.find(i) for i in range(len(self.vertices))]

    def to_json(self) -> str:
        adj = {i: [] for i in range(len(self.vertices))}
        for a in sorted(self.edges):
            for i, j in sorted(self.edges[a]):
                adj[i].append({"vertex": list(self.vertices[j]), "root": list(a)})
                adj[j].append({"vertex": list(self.vertices[i]), "root": list(a)})
        doc = {
            "type": self.rd.label,
            "ell": self.ell,
            "kind": self.kind,
            "omega": list(self.omega) if self.omega is not None else None,
            "window": self.window,
            "guard": self.guard,
            "adjacency": [
                {"vertex": list(v), "neighbors": sorted(adj[i], key=lambda e: (e["root"], e["vertex"]))}
                for i, v in enumerate(self.vertices)
            ],
        }
        return json.dumps(doc, sort_keys=True)


def _in_box(nu: Vec, R: int) -> bool:
    return all(-R <= v <= R for v in nu)


def orbit_window(rd: RootDatum, omega: Vec, ell: int, R: int) -> list[Vec]:
    """Points of the dot-orbit of omega with every |<alpha_i, lambda + rho-check>| <= R."""
    orb = residue_orbit(rd, tuple(x + 1 for x in omega), ell)
    out = []
    for nu in itertools.product(range(-R, R + 1), repeat=rd.rank):
        if tuple(v % ell for v in nu) in orb:
            out.append(tuple(v - 1 for v in nu))
    out.sort()
    return out


def _omega_of(block) -> Vec:
    return tuple(block.omega) if isinstance(block, BlockPoint) else tuple(block)


def _window_check(rd: RootDatum, ell: int, B: int) -> None:
    if B < ell * rd.coxeter_number:
        raise InputError(f"window B={B} is smaller than l*h={ell * rd.coxeter_number}")


def gkm_edges_on(rd: RootDatum, ell: int, vertices: list[Vec], index: dict[Vec, int]) -> dict[Vec, set]:
    """Reflection edges lambda -- s_{alpha + l m delta} . lambda among the given vertices."""
    edges: dict[Vec, set] = {a: set() for a in rd.positive_roots}
    if not vertices:
        return edges
    reach = 2 * max(max(abs(x + 1) for x in v) for v in vertices) + 2
    for a in rd.positive_roots:
        ac = rd.coroot(a)
        bucket = edges[a]
        for i, lam in enumerate(vertices):
            p = pair(a, lam) + sum(a)
            if p % ell == 0:
                continue
            # targets lam - t * alpha-check with t = p + l m
            t = p - ((p + reach) // ell) * ell
            while t <= reach:
                if t != 0:
                    tgt = tuple(x - t * c for x, c in zip(lam, ac))
                    j = index.get(tgt)
                    if j is not None and i < j:
                        bucket.add((i, j))
                t += ell
    return edges


def build_gkm_graph(rd: RootDatum, block, ell: int, B: int, guard: int | None = None, check_window: bool = True) -> LabeledGraph:
    omega = _omega_of(block)
    if check_window:
        _window_check(rd, ell, B)
    if guard is None:
        guard = 2 * ell * rd.coxeter_number
    verts = orbit_window(rd, omega, ell, B + guard)
    index = {v: i for i, v in enumerate(verts)}
    edges = gkm_edges_on(rd, ell, verts, index)
    return LabeledGraph(rd, ell, verts, edges, GKM, B, guard, omega, index)


def gkm_graph_on(rd: RootDatum, ell: int, vertices: Iterable[Vec], window: int = 0, guard: int = 0) -> LabeledGraph:
    """GKM graph on an explicit vertex set (assumed to lie in one orbit)."""
    verts = sorted(set(tuple(v) for v in vertices))
    index = {v: i for i, v in enumerate(verts)}
    return LabeledGraph(rd, ell, verts, gkm_edges_on(rd, ell, verts, index), GKM, window, guard, None, index)


def build_center_graph(rd: RootDatum, block, ell: int, B: int, guard: int | None = None, check_window: bool = True) -> LabeledGraph:
    omega = _omega_of(block)
    if check_window:
        _window_check(rd, ell, B)
    if guard is None:
        guard = 2 * ell * rd.coxeter_number
    verts = orbit_window(rd, omega, ell, B + guard)
    index = {v: i for i, v in enumerate(verts)}
    edges: dict[Vec, set] = {a: set() for a in rd.positive_roots}
    for a in rd.positive_roots:
        for i, lam in enumerate(verts):
            d = alpha_down(rd, lam, a, ell)
            if d == lam:
                continue
            j = index.get(d)
            if j is not None:
                edges[a].add((min(i, j), max(i, j)))
    return LabeledGraph(rd, ell, verts, edges, CENTER, B, guard, omega, index)


def core_vertices(g: LabeledGraph, alpha: Vec) -> list[int]:
    """Vertices whose alpha-string segment of length 2l on both sides stays in the window."""
    R = g.window + g.guard
    ac = g.rd.coroot(alpha)
    out = []
    for i, lam in enumerate(g.vertices):
        ok = True
        for s in (1, -1):
            nu = tuple(x + 1 + s * 2 * g.ell * c for x, c in zip(lam, ac))
            if not _in_box(nu, R):
                ok = False
                break
        if ok:
            out.append(i)
    return out


def partitions_equivalent(g1: LabeledGraph, g2: LabeledGraph, alpha: Vec) -> bool:
    """Whether alpha-edges of both graphs induce the same partition of core vertices."""
    alpha = tuple(alpha)
    if g1.vertices != g2.vertices:
        raise InputError("graphs do not share a vertex set")
    core = core_vertices(g1, alpha)
    if not core:
        raise InputError("empty core; enlarge the window")
    c1 = g1.components(alpha)
    c2 = g2.components(alpha)
    m12: dict[int, int] = {}
    m21: dict[int, int] = {}
    for i in core:
        a, b = c1[i], c2[i]
        if m12.setdefault(a, b) != b or m21.setdefault(b, a) != a:
            return False
    return True


# ---------------------------------------------------------------- polynomials


def monomials(r: int, d: int) -> list[tuple[int, ...]]:
    """Exponent vectors of total degree d, in a fixed order."""
    out = []
    for combo in itertools.combinations_with_replacement(range(r), d):
        e = [0] * r
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


class TruncatedPoly:
    """Polynomial in r variables with rational coefficients, modulo degree >= N."""

    __slots__ = ("nvars", "order", "coeffs")

    def __init__(self, nvars: int, order: int, coeffs: dict | None = None):
        self.nvars = nvars
        self.order = order
        self.coeffs = {}
        for m, c in (coeffs or {}).items():
            m = tuple(m)
            if len(m) != nvars:
                raise InputError("monomial has the wrong number of variables")
            c = Fraction(c)
            if c and sum(m) < order:
                self.coeffs[m] = self.coeffs.get(m, 0) + c

    @classmethod
    def constant(cls, nvars: int, order: int, c=1) -> "TruncatedPoly":
        return cls(nvars, order, {(0,) * nvars: c})

    @classmethod
    def linear(cls, nvars: int, order: int, form: Iterable) -> "TruncatedPoly":
        return cls(nvars, order, {tuple(int(i == k) for i in range(nvars)): c for k, c in enumerate(form)})

    def __add__(self, other):
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out.get(m, 0) + c
        return TruncatedPoly(self.nvars, self.order, {m: c for m, c in out.items() if c})

    def __neg__(self):
        return TruncatedPoly(self.nvars, self.order, {m: -c for m, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, TruncatedPoly):
            return TruncatedPoly(self.nvars, self.order, {m: c * other for m, c in self.coeffs.items()})
        out: dict = {}
        for m1, c1 in self.coeffs.items():
            for m2, c2 in other.coeffs.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                if sum(m) < self.order:
                    out[m] = out.get(m, 0) + c1 * c2
        return TruncatedPoly(self.nvars, self.order, {m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, TruncatedPoly) and self.coeffs == other.coeffs and self.order == other.order

    def __repr__(self):
        return f"TruncatedPoly({self.coeffs}, N={self.order})"

    def is_zero(self) -> bool:
        return not self.coeffs

    def substitute(self, forms: list[Iterable]) -> "TruncatedPoly":
        """Replace x_i by the linear form forms[i] (coefficient vectors)."""
        lin = [TruncatedPoly.linear(self.nvars, self.order, f) for f in forms]
        one = TruncatedPoly.constant(self.nvars, self.order)
        out = TruncatedPoly(self.nvars, self.order)
        for m, c in self.coeffs.items():
            term = one
            for i, e in enumerate(m):
                for _ in range(e):
                    term = term * lin[i]
            out = out + term * c
        return out


def restriction_forms(alpha: Vec) -> list[list[Fraction]]:
    """Substitution that restricts a polynomial to the hyperplane alpha = 0."""
    r = len(alpha)
    j = max(i for i in range(r) if alpha[i])
    forms = []
    for i in range(r):
        if i == j:
            forms.append([Fraction(-alpha[k], alpha[j]) if k != j else Fraction(0) for k in range(r)])
        else:
            forms.append([Fraction(int(k == i)) for k in range(r)])
    return forms


def divisible_by(f: TruncatedPoly, alpha: Vec) -> bool:
    """f lies in (alpha) + (degree >= N)."""
    return f.substitute(restriction_forms(alpha)).is_zero()


@dataclass
class Section:
    graph: LabeledGraph
    values: list[TruncatedPoly]

    def value(self, v: Vec) -> TruncatedPoly:
        return self.values[self.graph.index[tuple(v)]]


def is_section(s: Section) -> bool:
    g = s.graph
    for a, pairs in g.edges.items():
        for i, j in pairs:
            if not divisible_by(s.values[i] - s.values[j], a):
                return False
    return True


def _chain_constraints(g: LabeledGraph) -> list[tuple[Vec, int, int]]:
    """Spanning-forest edges per root; congruence classes make the rest redundant."""
    out = []
    for a in sorted(g.edges):
        comp = g.components(a)
        first: dict[int, int] = {}
        for i, c in enumerate(comp):
            if c in first:
                out.append((a, first[c], i))
            else:
                first[c] = i
    return out


def _restriction_matrix(alpha: Vec, r: int, d: int):
    """Rows: degree-d monomials; columns: coefficients after restricting to alpha = 0."""
    mons = monomials(r, d)
    forms = restriction_forms(alpha)
    rows = []
    image_keys: dict = {}
    for m in mons:
        p = TruncatedPoly(r, d + 1, {m: 1}).substitute(forms)
        rows.append(p.coeffs)
        for k in p.coeffs:
            image_keys.setdefault(k, len(image_keys))
    return mons, rows, image_keys


def _degree_system(g: LabeledGraph, d: int):
    r = g.rd.rank
    V = len(g.vertices)
    mons = monomials(r, d)
    M = len(mons)
    rows = []
    cache = {}
    for a, i, j in _chain_constraints(g):
        if a not in cache:
            cache[a] = _restriction_matrix(a, r, d)
        _, rmat, keys = cache[a]
        for key, _ in sorted(keys.items(), key=lambda kv: kv[1]):
            row = [0] * (V * M)
            nz = False
            for mi in range(M):
                c = rmat[mi].get(key, 0)
                if c:
                    row[i * M + mi] += c
                    row[j * M + mi] -= c
                    nz = True
            if nz:
                rows.append(row)
    return mons, rows


def section_space_dim(g: LabeledGraph, N: int) -> int:
    if N < 1:
        raise InputError("truncation order must be positive")
    V = len(g.vertices)
    total = 0
    for d in range(N):
        mons, rows = _degree_system(g, d)
        total += V * len(mons) - rank(rows)
    return total


def section_space_basis(g: LabeledGraph, N: int) -> list[Section]:
    r = g.rd.rank
    V = len(g.vertices)
    basis = []
    for d in range(N):
        mons, rows = _degree_system(g, d)
        M = len(mons)
        for vec in nullspace(rows, V * M):
            vals = []
            for i in range(V):
                vals.append(TruncatedPoly(r, N, {mons[k]: vec[i * M + k] for k in range(M)}))
            basis.append(Section(g, vals))
    return basis


def constant_section(g: LabeledGraph, N: int, values: Iterable | None = None) -> Section:
    r = g.rd.rank
    vals = list(values) if values is not None else [1] * len(g.vertices)
    return Section(g, [TruncatedPoly.constant(r, N, c) for c in vals])


def twist(rd: RootDatum, w, f: TruncatedPoly) -> TruncatedPoly:
    """f composed with w^-1: the variable alpha_i becomes the linear form w(alpha_i)."""
    forms = [w.apply_root(tuple(int(k == i) for k in range(rd.rank))) for i in range(rd.rank)]
    return f.substitute(forms)


def left_action_apply(x: AffineWeylElement, s: Section, transport: bool = False) -> Section:
    """(x . a)_lambda = twist_x(a_{x^-1 . lambda}).

    Translations act trivially on the polynomial values. The window must be
    x-stable unless ``transport`` is set, in which case the result lives on
    the GKM graph of the image vertex set.
    """
    g = s.graph
    rd = g.rd
    image = [x.act_dot(v) for v in g.vertices]
    if set(image) == set(g.vertices):
        target = g
    elif transport:
        target = gkm_graph_on(rd, g.ell, image, g.window, g.guard)
    else:
        raise InputError("vertex window is not stable under x")
    xi = x.inverse()
    vals = []
    for lam in target.vertices:
        src = xi.act_dot(lam)
        vals.append(twist(rd, x.w, s.value(src)))
    return Section(target, vals)
