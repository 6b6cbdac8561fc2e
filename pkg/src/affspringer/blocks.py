"""Block points: integral coweights in the closed l-alcove, shifted by -rho-check.

A point omega is stored through nu = omega + rho-check, whose coordinates
are the pairings <alpha_i, nu>. The closed alcove is nu_i >= 0 together with
<theta, nu> <= l.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from math import gcd
from typing import Iterable

from .affweyl import AffineWeylElement, simple_affine_reflections
from .errors import InputError, InvariantViolation
from .linalg import det, smith_normal_form, solve
from .rootdata import RootDatum, Vec, classify_subsystem, pair


@dataclass(frozen=True)
class BlockPoint:
    omega: Vec
    ell: int
    facet_type: frozenset
    stabilizer_roots: tuple[Vec, ...]
    stabilizer_order: int
    stabilizer_type: str = "trivial"

    @property
    def nu(self) -> Vec:
        return tuple(x + 1 for x in self.omega)

    @property
    def facet_label(self) -> str:
        return "{" + ",".join(f"s{j}" for j in sorted(self.facet_type)) + "}"


def admissibility_problems(rd: RootDatum, ell: int) -> list[str]:
    out = []
    if ell % 2 == 0:
        out.append(f"l={ell} is even")
    if ell < rd.coxeter_number:
        out.append(f"l={ell} is smaller than h={rd.coxeter_number}")
    if gcd(ell, rd.pi1_order) != 1:
        out.append(f"l={ell} is not prime to e={rd.pi1_order}")
    if rd.cartan_type == "G" and ell % 3 == 0:
        out.append(f"l={ell} is divisible by 3 in type G2")
    return out


def check_admissible(rd: RootDatum, ell: int, force: bool = False) -> None:
    if ell < 1:
        raise InputError("l must be a positive integer")
    problems = admissibility_problems(rd, ell)
    if problems and not force:
        raise InputError("; ".join(problems) + " (use force to override)")


def facet_type(rd: RootDatum, nu: Vec, ell: int) -> frozenset:
    J = {i + 1 for i in range(rd.rank) if nu[i] == 0}
    if pair(rd.highest_root, nu) == ell:
        J.add(0)
    return frozenset(J)


def stabilizer_roots(rd: RootDatum, nu: Vec, ell: int) -> tuple[Vec, ...]:
    return tuple(a for a in rd.positive_roots if pair(a, nu) % ell == 0)


def make_point(rd: RootDatum, omega: Iterable[int], ell: int) -> BlockPoint:
    omega = tuple(omega)
    nu = tuple(x + 1 for x in omega)
    roots = stabilizer_roots(rd, nu, ell)
    sub = classify_subsystem(rd, roots)
    return BlockPoint(omega, ell, facet_type(rd, nu, ell), roots, sub.order, sub.label)


def _alcove_nus(theta: Vec, ell: int) -> list[Vec]:
    r = len(theta)
    out = []

    def rec(prefix, budget):
        i = len(prefix)
        if i == r:
            out.append(tuple(prefix))
            return
        for v in range(budget // theta[i] + 1):
            rec(prefix + [v], budget - v * theta[i])

    rec([], ell)
    return out


def enumerate_xi_sc(rd: RootDatum, ell: int, force: bool = False) -> list[BlockPoint]:
    check_admissible(rd, ell, force)
    pts = [make_point(rd, tuple(v - 1 for v in nu), ell) for nu in _alcove_nus(rd.highest_root, ell)]
    pts.sort(key=lambda p: p.omega)
    return pts


def in_closed_alcove(rd: RootDatum, omega: Iterable[int], ell: int) -> bool:
    nu = tuple(x + 1 for x in omega)
    return all(v >= 0 for v in nu) and pair(rd.highest_root, nu) <= ell


def residue_orbit(rd: RootDatum, nu: Vec, ell: int) -> set[Vec]:
    """W-orbit of nu modulo l * coweight lattice."""
    start = tuple(v % ell for v in nu)
    seen = {start}
    queue = deque([start])
    cols = rd.coroot_matrix
    while queue:
        v = queue.popleft()
        for i in range(rd.rank):
            if v[i] == 0:
                continue
            a = cols[i]
            u = tuple((v[k] - v[i] * a[k]) % ell for k in range(rd.rank))
            if u not in seen:
                seen.add(u)
                queue.append(u)
    return seen


def xi_orbits(rd: RootDatum, ell: int, force: bool = False, points=None) -> list[list[BlockPoint]]:
    """Partition of the block points into orbits of the l-dilated extended group."""
    if points is None:
        points = enumerate_xi_sc(rd, ell, force)
    # boundary points of the alcove can share a residue class
    by_residue: dict[Vec, list[BlockPoint]] = {}
    for p in points:
        by_residue.setdefault(tuple(v % ell for v in p.nu), []).append(p)
    done: set[Vec] = set()
    orbits = []
    for p in points:
        if p.omega in done:
            continue
        orb = residue_orbit(rd, p.nu, ell)
        members = [q for key, qs in by_residue.items() if key in orb for q in qs]
        members.sort(key=lambda q: q.omega)
        for q in members:
            done.add(q.omega)
        if len(members) != rd.pi1_order and not force:
            raise InvariantViolation(
                f"orbit of {p.omega} has {len(members)} points, expected e={rd.pi1_order}"
            )
        orbits.append(members)
    return orbits


def reduce_to_alcove(rd: RootDatum, omega: Iterable[int], ell: int) -> Vec:
    """Fold omega into the closed l-alcove by repeated wall reflections (dot action)."""
    nu = [x + 1 for x in omega]
    theta, tc = rd.highest_root, rd.theta_check
    cols = rd.coroot_matrix
    while True:
        i = next((k for k in range(rd.rank) if nu[k] < 0), None)
        if i is not None:
            c = nu[i]
            nu = [nu[k] - c * cols[i][k] for k in range(rd.rank)]
            continue
        t = pair(theta, nu)
        if t > ell:
            nu = [nu[k] - (t - ell) * tc[k] for k in range(rd.rank)]
            continue
        return tuple(v - 1 for v in nu)


def parabolic_order(rd: RootDatum, J: Iterable[int], ell: int, bound: int = 10**6) -> int:
    """Order of the subgroup generated by the simple affine reflections in J (closure)."""
    gens_all = simple_affine_reflections(rd, ell)
    gens = [gens_all[j] for j in sorted(J)]
    if not gens:
        return 1
    one = AffineWeylElement(gens[0].w.identity(rd.rank), (0,) * rd.rank, ell)
    seen = {one}
    frontier = [one]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = s * x
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        if len(seen) > bound:
            raise InvariantViolation("parabolic subgroup looks infinite")
        frontier = nxt
    return len(seen)


def _integer_inverse(m: list[list[int]]) -> list[list[int]]:
    n = len(m)
    cols = []
    for j in range(n):
        x = solve(m, [int(i == j) for i in range(n)])
        if x is None or any(v.denominator != 1 for v in x):
            raise InvariantViolation("matrix is not unimodular")
        cols.append([int(v) for v in x])
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def intersection_generators(rd: RootDatum, ell: int) -> list[list[int]]:
    """Columns generate coroot lattice intersected with l * coweight lattice."""
    C = [list(row) for row in rd.cartan_matrix]
    d, U, V = smith_normal_form(C)
    # U C V = D, so the coroot lattice is U^-1 D Z^r
    Ui = _integer_inverse(U)
    r = rd.rank
    scale = [d[i] * (ell // gcd(d[i], ell)) for i in range(r)]
    return [[Ui[k][i] * scale[i] for i in range(r)] for k in range(r)]


def check_lattice_identity(rd: RootDatum, ell: int) -> bool:
    """Whether l * (coroot lattice) equals (coroot lattice) meet (l * coweight lattice)."""
    G = intersection_generators(rd, ell)
    r = rd.rank
    for k in range(r):
        for i in range(r):
            if G[k][i] % ell:
                raise InvariantViolation("intersection generator not in l * coweight lattice")
    # l * Q-check is always contained in the intersection; compare covolumes
    small = [[ell * rd.cartan_matrix[k][i] for i in range(r)] for k in range(r)]
    for i in range(r):
        x = solve(G, [small[k][i] for k in range(r)])
        if x is None or any(v.denominator != 1 for v in x):
            raise InvariantViolation("l * coroot lattice not contained in the intersection")
    return abs(det(G)) == abs(det(small))


def count_by_facet_type(points: Iterable[BlockPoint]) -> dict[frozenset, int]:
    out: dict[frozenset, int] = {}
    for p in points:
        out[p.facet_type] = out.get(p.facet_type, 0) + 1
    return out


def facet_type_counts(rd: RootDatum, ell: int) -> dict[frozenset, int]:
    """Number of closed-alcove points of each facet type (no stabilizer work)."""
    out: dict[frozenset, int] = {}
    for nu in _alcove_nus(rd.highest_root, ell):
        J = facet_type(rd, nu, ell)
        out[J] = out.get(J, 0) + 1
    return out
