"""Irreducible root data of types A to G.

Coweights live in the fundamental-coweight basis, roots in the simple-root
basis, so the pairing between them is a plain dot product. The coweight
lattice is the full lattice Z^r and the coroot lattice is spanned by the
columns of the Cartan matrix.
"""
from __future__ import annotations

import cmath
import re
from collections import Counter, deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import prod
from typing import Iterable

import numpy as np

from .errors import InputError, InvariantViolation, ResourceError
from .linalg import det, invariant_factors, solve

Vec = tuple[int, ...]

WEYL_BOUND = 10**7


def pair(root: Iterable[int], coweight: Iterable[int]) -> int:
    return sum(a * b for a, b in zip(root, coweight))


def _chain(n: int) -> list[tuple[int, int]]:
    return [(i, i + 1) for i in range(n - 1)]


def gram_matrix(kind: str, n: int) -> list[list[int]]:
    """Symmetric bilinear form on simple roots, short roots of squared length 2."""
    g = [[0] * n for _ in range(n)]
    if kind in ("A", "D", "E"):
        for i in range(n):
            g[i][i] = 2
        if kind == "A":
            edges = _chain(n)
        elif kind == "D":
            edges = _chain(n - 1) + [(n - 3, n - 1)]
        else:
            # Bourbaki labelling: 1-3-4-5-6(-7-8), 2 attached to 4
            edges = [(0, 2), (2, 3), (3, 4), (1, 3)] + [(k, k + 1) for k in range(4, n - 1)]
        for i, j in edges:
            g[i][j] = g[j][i] = -1
    elif kind == "B":
        for i in range(n - 1):
            g[i][i] = 4
        g[n - 1][n - 1] = 2
        for i, j in _chain(n):
            g[i][j] = g[j][i] = -2
    elif kind == "C":
        for i in range(n - 1):
            g[i][i] = 2
        g[n - 1][n - 1] = 4
        for i, j in _chain(n):
            g[i][j] = g[j][i] = -1
        g[n - 2][n - 1] = g[n - 1][n - 2] = -2
    elif kind == "F":
        g = [[4, -2, 0, 0], [-2, 4, -2, 0], [0, -2, 2, -1], [0, 0, -1, 2]]
    elif kind == "G":
        g = [[2, -3], [-3, 6]]
    return g


def _valid(kind: str, n: int) -> bool:
    return (
        (kind == "A" and n >= 1)
        or (kind in "BC" and n >= 2)
        or (kind == "D" and n >= 4)
        or (kind == "E" and n in (6, 7, 8))
        or (kind == "F" and n == 4)
        or (kind == "G" and n == 2)
    )


def parse_type(label: str) -> tuple[str, int]:
    m = re.fullmatch(r"\s*([A-Ga-g])\s*(\d+)\s*", label)
    if not m:
        raise InputError(f"cannot parse Cartan type {label!r}")
    return m.group(1).upper(), int(m.group(2))


def conjugate_partition(counts: Iterable[int]) -> tuple[int, ...]:
    counts = [c for c in counts if c > 0]
    if not counts:
        return ()
    out = [sum(1 for c in counts if c >= j) for j in range(1, max(counts) + 1)]
    return tuple(sorted(out))


@dataclass(frozen=True)
class WeylElement:
    """Linear map on coweights, with its contragredient on root coordinates.

    ``mat`` acts on coweight column vectors and ``dual`` on root vectors;
    they satisfy dual^T mat = 1 so the pairing is preserved.
    """

    mat: tuple[Vec, ...]
    dual: tuple[Vec, ...] = field(compare=False, hash=False)

    @staticmethod
    def identity(r: int) -> "WeylElement":
        m = tuple(tuple(int(i == j) for j in range(r)) for i in range(r))
        return WeylElement(m, m)

    @property
    def rank(self) -> int:
        return len(self.mat)

    def apply(self, lam: Iterable[int]) -> Vec:
        lam = tuple(lam)
        return tuple(sum(a * b for a, b in zip(row, lam)) for row in self.mat)

    def apply_root(self, beta: Iterable[int]) -> Vec:
        beta = tuple(beta)
        return tuple(sum(a * b for a, b in zip(row, beta)) for row in self.dual)

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        return WeylElement(_mm(self.mat, other.mat), _mm(self.dual, other.dual))

    def inverse(self) -> "WeylElement":
        return WeylElement(_tr(self.dual), _tr(self.mat))

    def sign(self) -> int:
        return det(self.mat)

    def is_identity(self) -> bool:
        return all(self.mat[i][j] == int(i == j) for i in range(self.rank) for j in range(self.rank))


def _mm(a, b):
    bt = tuple(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def _tr(a):
    return tuple(tuple(col) for col in zip(*a))


@dataclass(frozen=True)
class RootDatum:
    cartan_type: str
    rank: int
    cartan_matrix: tuple[Vec, ...]
    gram: tuple[Vec, ...]
    positive_roots: tuple[Vec, ...]
    coroot_matrix: tuple[Vec, ...]
    rho_check: Vec
    coxeter_number: int
    exponents: tuple[int, ...]
    weyl_order: int
    pi1_order: int
    pi1_invariants: tuple[int, ...]
    highest_root: Vec
    _coroots: dict = field(compare=False, hash=False, repr=False, default_factory=dict)

    @property
    def label(self) -> str:
        return f"{self.cartan_type}{self.rank}"

    @property
    def roots(self) -> tuple[Vec, ...]:
        return self.positive_roots + tuple(neg(a) for a in self.positive_roots)

    @property
    def simple_roots(self) -> tuple[Vec, ...]:
        return tuple(unit(self.rank, i) for i in range(self.rank))

    def norm2(self, root: Iterable[int]) -> int:
        c = tuple(root)
        return sum(c[i] * self.gram[i][j] * c[j] for i in range(self.rank) for j in range(self.rank))

    def coroot(self, root: Iterable[int]) -> Vec:
        """alpha-check in fundamental-coweight coordinates."""
        root = tuple(root)
        hit = self._coroots.get(root)
        if hit is not None:
            return hit
        n2 = self.norm2(root)
        if n2 == 0:
            raise InputError("zero vector has no coroot")
        out = []
        for k in range(self.rank):
            num = 2 * sum(self.gram[k][j] * root[j] for j in range(self.rank))
            if num % n2:
                raise InputError(f"{root} is not a root")
            out.append(num // n2)
        vec = tuple(out)
        self._coroots[root] = vec
        return vec

    def is_root(self, root: Iterable[int]) -> bool:
        return tuple(root) in self.root_set

    @property
    def root_set(self) -> frozenset:
        hit = self._coroots.get("__roots__")
        if hit is None:
            hit = self._coroots["__roots__"] = frozenset(self.roots)
        return hit

    @property
    def theta_check(self) -> Vec:
        return self.coroot(self.highest_root)

    def simple_reflection(self, i: int) -> WeylElement:
        return self.reflection(unit(self.rank, i))

    def reflection(self, root: Iterable[int]) -> WeylElement:
        c = tuple(root)
        a = self.coroot(c)
        r = self.rank
        mat = tuple(tuple(int(k == l) - a[k] * c[l] for l in range(r)) for k in range(r))
        dual = tuple(tuple(int(k == l) - c[k] * a[l] for l in range(r)) for k in range(r))
        return WeylElement(mat, dual)

    def is_long(self, root: Iterable[int]) -> bool:
        return self.norm2(root) == max(self.gram[i][i] for i in range(self.rank))

    def coxeter_element(self) -> WeylElement:
        c = WeylElement.identity(self.rank)
        for i in range(self.rank):
            c = c * self.simple_reflection(i)
        return c


def unit(r: int, i: int) -> Vec:
    return tuple(int(k == i) for k in range(r))


def neg(v: Iterable[int]) -> Vec:
    return tuple(-x for x in v)


def height(root: Iterable[int]) -> int:
    return sum(root)


def is_positive_root(root: Iterable[int]) -> bool:
    return all(c >= 0 for c in root)


def generate_positive_roots(cartan: list[list[int]] | tuple) -> list[Vec]:
    """Close the simple roots under simple reflections and keep the positive ones.

    ``cartan[k][i]`` is <alpha_k, alpha_i-check>.
    """
    r = len(cartan)
    start = [unit(r, i) for i in range(r)]
    seen = set(start)
    queue = deque(start)
    while queue:
        b = queue.popleft()
        for i in range(r):
            k = sum(b[j] * cartan[j][i] for j in range(r))
            if k == 0:
                continue
            nb = tuple(b[j] - (k if j == i else 0) for j in range(r))
            if nb not in seen:
                seen.add(nb)
                queue.append(nb)
    pos = [b for b in seen if is_positive_root(b)]
    return sorted(pos, key=lambda b: (height(b), tuple(-x for x in b)))


def coxeter_exponents(cartan, h: int) -> tuple[int, ...]:
    """Exponents from the eigenvalue phases of a Coxeter element (floating point)."""
    r = len(cartan)
    m = np.eye(r, dtype=float)
    for i in range(r):
        s = np.eye(r, dtype=float)
        # s_i on coweights: lambda -> lambda - lambda_i * (column i of cartan)
        for k in range(r):
            s[k][i] -= cartan[k][i]
        m = m @ s
    out = []
    for ev in np.linalg.eigvals(m):
        ph = cmath.phase(complex(ev)) / (2 * cmath.pi) * h
        k = round(ph) % h
        if abs(ph - round(ph)) > 1e-6 or abs(abs(ev) - 1) > 1e-6:
            raise InvariantViolation(f"Coxeter eigenvalue {ev} is not an h-th root of unity")
        out.append(k)
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def build_root_datum(kind: str, rank: int) -> RootDatum:
    kind = str(kind).upper()
    if not _valid(kind, int(rank)):
        raise InputError(f"invalid Cartan type {kind}{rank}")
    r = int(rank)
    g = gram_matrix(kind, r)
    cartan = tuple(tuple(2 * g[i][j] // g[j][j] for j in range(r)) for i in range(r))
    pos = tuple(generate_positive_roots(cartan))
    n = len(pos)
    h = 2 * n // r
    theta = max(pos, key=height)
    if 2 * n != h * r or height(theta) + 1 != h:
        raise InvariantViolation(f"Coxeter number mismatch for {kind}{r}")
    exps = coxeter_exponents(cartan, h)
    d = det(cartan)
    inv = tuple(x for x in invariant_factors(cartan) if x != 1)
    return RootDatum(
        cartan_type=kind,
        rank=r,
        cartan_matrix=cartan,
        gram=tuple(tuple(row) for row in g),
        positive_roots=pos,
        coroot_matrix=tuple(tuple(cartan[k][i] for k in range(r)) for i in range(r)),
        rho_check=(1,) * r,
        coxeter_number=h,
        exponents=exps,
        weyl_order=prod(e + 1 for e in exps),
        pi1_order=abs(d),
        pi1_invariants=inv,
        highest_root=theta,
    )


def root_datum(label: str) -> RootDatum:
    return build_root_datum(*parse_type(label))


def height_distribution(rd: RootDatum) -> tuple[int, ...]:
    c = Counter(height(a) for a in rd.positive_roots)
    return tuple(c[k] for k in range(1, max(c) + 1))


def exponents_from_heights(rd: RootDatum) -> tuple[int, ...]:
    return conjugate_partition(height_distribution(rd))


def enumerate_weyl(rd: RootDatum, bound: int = WEYL_BOUND) -> set[WeylElement]:
    if rd.weyl_order > bound:
        raise ResourceError(f"|W|={rd.weyl_order} exceeds the bound {bound}")
    gens = [rd.simple_reflection(i) for i in range(rd.rank)]
    one = WeylElement.identity(rd.rank)
    seen = {one}
    frontier = [one]
    while frontier:
        nxt = []
        for w in frontier:
            for s in gens:
                u = s * w
                if u not in seen:
                    seen.add(u)
                    nxt.append(u)
                    if len(seen) > bound:
                        raise ResourceError(f"Weyl group enumeration exceeded {bound}")
        frontier = nxt
    return seen


@dataclass(frozen=True)
class Subsystem:
    components: tuple[str, ...]
    exponents: tuple[int, ...]
    order: int
    simple_roots: tuple[Vec, ...]
    component_exponents: tuple[tuple[int, ...], ...] = ()

    @property
    def label(self) -> str:
        return "x".join(self.components) if self.components else "trivial"


def _component_type(sub_cartan, longs: int, n_pos: int) -> str:
    k = len(sub_cartan)
    off = {sub_cartan[i][j] for i in range(k) for j in range(k) if i != j}
    if -3 in off:
        return "G2"
    if -2 in off:
        if k == 2:
            return "B2"
        if k == 4 and n_pos == 24:
            return "F4"
        return f"B{k}" if longs == k - 1 else f"C{k}"
    if n_pos == k * (k + 1) // 2:
        return f"A{k}"
    if n_pos == k * (k - 1):
        return f"D{k}"
    return f"E{k}"


def classify_subsystem(rd: RootDatum, roots: Iterable[Iterable[int]]) -> Subsystem:
    """Cartan type, exponents and Weyl order of a reflection-closed set of positive roots."""
    psi = {tuple(a) for a in roots}
    pos = set(rd.positive_roots)
    for a in psi:
        if a not in pos:
            raise InputError(f"{a} is not a positive root of {rd.label}")
    for a in psi:
        s = rd.reflection(a)
        for b in psi:
            c = s.apply_root(b)
            if c not in psi and neg(c) not in psi:
                raise InputError("root set is not closed under its own reflections")
    if not psi:
        return Subsystem((), (), 1, ())
    sums = {tuple(x + y for x, y in zip(a, b)) for a in psi for b in psi}
    simple = sorted((a for a in psi if a not in sums), key=lambda a: (height(a), neg(a)))
    k = len(simple)
    sub = [[pair(simple[i], rd.coroot(simple[j])) for j in range(k)] for i in range(k)]
    # connected components of the Dynkin graph
    comp = list(range(k))

    def find(i):
        while comp[i] != i:
            comp[i] = comp[comp[i]]
            i = comp[i]
        return i

    for i in range(k):
        for j in range(k):
            if sub[i][j]:
                comp[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(k):
        groups.setdefault(find(i), []).append(i)
    parts = []
    total = 0
    for idx in groups.values():
        c = [[sub[i][j] for j in idx] for i in idx]
        cpos = generate_positive_roots(c)
        total += len(cpos)
        hc = Counter(height(b) for b in cpos)
        exps = conjugate_partition(hc[t] for t in range(1, max(hc) + 1))
        longs = sum(1 for i in idx if rd.norm2(simple[i]) == max(rd.norm2(simple[j]) for j in idx))
        parts.append((_component_type(c, longs, len(cpos)), exps))
    if total != len(psi):
        raise InvariantViolation("subsystem root count does not match its Dynkin type")
    parts.sort(key=lambda p: (p[0][0], -int(p[0][1:])))
    exps_all = tuple(sorted(e for _, ex in parts for e in ex))
    return Subsystem(
        components=tuple(p[0] for p in parts),
        exponents=exps_all,
        order=prod(e + 1 for e in exps_all),
        simple_roots=tuple(simple),
        component_exponents=tuple(p[1] for p in parts),
    )


def closure_order(gens: list[WeylElement], bound: int = WEYL_BOUND) -> int:
    """Order of the group generated by ``gens`` (brute-force closure)."""
    if not gens:
        return 1
    one = WeylElement.identity(gens[0].rank)
    seen = {one}
    frontier = [one]
    while frontier:
        nxt = []
        for w in frontier:
            for s in gens:
                u = s * w
                if u not in seen:
                    seen.add(u)
                    nxt.append(u)
        if len(seen) > bound:
            raise ResourceError("group closure exceeded bound")
        frontier = nxt
    return len(seen)


def coroot_coordinates(rd: RootDatum, lam: Iterable[int]) -> tuple[Fraction, ...]:
    """Coefficients of lam in the simple-coroot basis."""
    # simple coroots are the columns of the Cartan matrix
    sol = solve([list(r) for r in rd.cartan_matrix], list(lam))
    return tuple(sol)


def in_coroot_lattice(rd: RootDatum, lam: Iterable[int]) -> bool:
    return all(c.denominator == 1 for c in coroot_coordinates(rd, lam))
