"""Closed-form dimension counts and the brute-force oracles they are checked against."""
from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, gcd, prod
from typing import Iterable, Sequence

from .affweyl import min_coset_reps
from .blocks import admissibility_problems, check_admissible, facet_type_counts, xi_orbits
from .errors import InputError, InvariantViolation, ResourceError
from .rootdata import RootDatum, Subsystem, WeylElement, build_root_datum, classify_subsystem

ENUMERATION_BOUND = 10**7


def theorem_c_dim(rd: RootDatum, ell: int, force: bool = False) -> int:
    """prod_i((h+1) l - h + e_i) / |W|."""
    check_admissible(rd, ell, force)
    h = rd.coxeter_number
    num = prod((h + 1) * ell - h + e for e in rd.exponents)
    if num % rd.weyl_order:
        raise InvariantViolation(f"{num}/{rd.weyl_order} is not an integer")
    return num // rd.weyl_order


def type_a_binomial(r: int, ell: int) -> int:
    """binomial((h+1) l, h) / ((h+1) l) with h = r + 1, checked against the product formula."""
    if r < 1:
        raise InputError("rank must be positive")
    h = r + 1
    n = (h + 1) * ell
    c = comb(n, h)
    if c % n:
        raise InvariantViolation(f"C({n},{h})/{n} is not an integer")
    val = c // n
    other = theorem_c_dim(build_root_datum("A", r), ell, force=True)
    if val != other:
        raise InvariantViolation(f"binomial form {val} differs from product form {other}")
    return val


def _as_subsystem(rd: RootDatum, J) -> Subsystem:
    if isinstance(J, Subsystem):
        return J
    return classify_subsystem(rd, J)


def sommers_dim(rd: RootDatum, J, n: int) -> int:
    """(n + e^J_1)...(n + e^J_j) n^(r-j) / |W_J| for a reflection subsystem J."""
    sub = _as_subsystem(rd, J)
    if gcd(rd.coxeter_number, n) != 1:
        warnings.warn(f"gcd(h={rd.coxeter_number}, n={n}) != 1; the formula is only claimed for coprime n")
    j = len(sub.exponents)
    num = prod(n + e for e in sub.exponents) * n ** (rd.rank - j)
    if num % sub.order:
        raise InvariantViolation(f"{num}/{sub.order} is not an integer")
    return num // sub.order


def full_subsystem(rd: RootDatum) -> Subsystem:
    return classify_subsystem(rd, rd.positive_roots)


def reflection_group(rd: RootDatum, roots: Iterable[Iterable[int]], bound: int = ENUMERATION_BOUND) -> list[WeylElement]:
    gens = [rd.reflection(a) for a in roots]
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
            raise ResourceError("reflection group enumeration exceeded the bound")
        frontier = nxt
    return sorted(seen, key=lambda w: w.mat)


def fixed_points_mod(w: WeylElement, q: int) -> int:
    """#{lam in (Z/q)^r : w lam = lam} by enumeration."""
    r = w.rank
    rows = w.mat
    count = 0
    for lam in itertools.product(range(q), repeat=r):
        if all((sum(a * b for a, b in zip(rows[i], lam)) - lam[i]) % q == 0 for i in range(r)):
            count += 1
    return count


def sign_multiplicity(rd: RootDatum, roots: Iterable[Iterable[int]], q: int) -> int:
    """Multiplicity of the sign character of W' in the permutation module on coweights mod q."""
    if q < 2:
        raise InputError("modulus must be at least 2")
    if q ** rd.rank > ENUMERATION_BOUND:
        raise ResourceError(f"{q}^{rd.rank} points exceed the enumeration bound")
    group = reflection_group(rd, list(roots))
    total = sum(w.sign() * fixed_points_mod(w, q) for w in group)
    if total % len(group):
        raise InvariantViolation("character inner product is not an integer")
    return total // len(group)


@dataclass
class DimReport:
    label: str
    ell: int
    closed_form: int
    sommers_route: int
    block_sum_route: int
    per_block: list[tuple] = field(default_factory=list)
    admissible: bool = True

    @property
    def passed(self) -> bool:
        return self.closed_form == self.sommers_route == self.block_sum_route


def block_contributions(rd: RootDatum, ell: int, force: bool = False) -> list[tuple]:
    """(omega, stabilizer type, sign multiplicity) for one representative of each orbit."""
    q = rd.coxeter_number + 1
    out = []
    for orbit in xi_orbits(rd, ell, force):
        p = orbit[0]
        out.append((p.omega, p.stabilizer_type, sign_multiplicity(rd, p.stabilizer_roots, q)))
    return out


def block_sum_identity(rd: RootDatum, ell: int, force: bool = False) -> DimReport:
    check_admissible(rd, ell, force)
    h = rd.coxeter_number
    per = block_contributions(rd, ell, force)
    return DimReport(
        label=rd.label,
        ell=ell,
        closed_form=theorem_c_dim(rd, ell, force),
        sommers_route=sommers_dim(rd, full_subsystem(rd), (h + 1) * ell - h),
        block_sum_route=sum(m for _, _, m in per),
        per_block=per,
        admissible=not admissibility_problems(rd, ell),
    )


# ------------------------------------------------------------ Ehrhart fitting


def _poly_mul(p: list[Fraction], q: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def _poly_eval(p: Sequence[Fraction], x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def newton_fit(xs: Sequence[int], ys: Sequence[int]) -> list[Fraction]:
    """Monomial coefficients of the interpolant through equally spaced points."""
    if len(xs) < 1:
        raise InputError("need at least one sample")
    step = xs[1] - xs[0] if len(xs) > 1 else 1
    if any(b - a != step for a, b in zip(xs, xs[1:])) or step == 0:
        raise InputError("samples must form an arithmetic progression")
    diffs = []
    row = [Fraction(y) for y in ys]
    while row:
        diffs.append(row[0])
        row = [b - a for a, b in zip(row, row[1:])]
    # sum_k diffs[k] * binom(t, k) with t = (x - x0) / step
    t = [Fraction(-xs[0], step), Fraction(1, step)]
    coeffs = [Fraction(0)]
    basis = [Fraction(1)]
    for k, d in enumerate(diffs):
        if k:
            basis = _poly_mul(basis, [t[0] - (k - 1), t[1]])
            basis = [c / k for c in basis]
        if len(coeffs) < len(basis):
            coeffs += [Fraction(0)] * (len(basis) - len(coeffs))
        for i, c in enumerate(basis):
            coeffs[i] += d * c
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


@dataclass
class EhrhartFit:
    facet_type: frozenset
    samples: list[int]
    counts: list[int]
    coeffs: list[Fraction]
    degree: int
    expected_degree: int
    holdout_ok: bool

    @property
    def passed(self) -> bool:
        return self.holdout_ok and self.degree == self.expected_degree


def facet_counts(rd: RootDatum, J: Iterable[int], ells: Iterable[int], force: bool = False) -> list[int]:
    J = frozenset(J)
    out = []
    for ell in ells:
        check_admissible(rd, ell, force)
        out.append(facet_type_counts(rd, ell).get(J, 0))
    return out


def ehrhart_fit(rd: RootDatum, J: Iterable[int], ells: Sequence[int], holdout: int = 2, force: bool = False) -> EhrhartFit:
    """Fit the facet-type count as a polynomial in l and test it on held-out samples."""
    J = frozenset(J)
    expected = rd.rank - len(J)
    ells = list(ells)
    if len(ells) - holdout < expected + 1:
        raise InputError(f"need at least {expected + 1 + holdout} samples for a degree-{expected} fit")
    counts = facet_counts(rd, J, ells, force)
    nfit = len(ells) - holdout
    coeffs = newton_fit(ells[:nfit], counts[:nfit])
    degree = len(coeffs) - 1 if any(coeffs) else 0
    ok = all(_poly_eval(coeffs, x) == y for x, y in zip(ells[nfit:], counts[nfit:]))
    fit = EhrhartFit(J, ells, counts, coeffs, degree, expected, ok)
    if not ok:
        raise InvariantViolation(f"Ehrhart fit for J={sorted(J)} fails on held-out samples")
    return fit


def admissible_progression(rd: RootDatum, count: int, start: int | None = None) -> list[int]:
    """Admissible values of l in one residue class modulo a common period."""
    period = 2 * rd.pi1_order * (3 if rd.cartan_type == "G" else 1)
    ell = start if start is not None else rd.coxeter_number
    while admissibility_problems(rd, ell):
        ell += 1
    return [ell + period * k for k in range(count)]


def poly_to_str(coeffs: Sequence[Fraction], var: str = "l") -> str:
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if not c:
            continue
        mon = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        cs = str(c)
        if mon:
            cs = "" if c == 1 else ("-" if c == -1 else f"{cs}*")
        terms.append(f"{cs}{mon}")
    if not terms:
        return "0"
    return " + ".join(terms).replace("+ -", "- ")


# ----------------------------------------------------------------- Bott check


def bott_series(exponents: Iterable[int], D: int) -> list[int]:
    """Coefficients of prod_i 1/(1 - u^{e_i}) up to u^D (u = t^2)."""
    coeffs = [1] + [0] * D
    for e in exponents:
        for k in range(e, D + 1):
            coeffs[k] += coeffs[k - e]
    return coeffs


def bott_counts(rd: RootDatum, D: int) -> list[int]:
    layers = min_coset_reps(rd, range(1, rd.rank + 1), D)
    return [len(layer) for layer in layers]


def bott_check(rd: RootDatum, D: int) -> bool:
    if D > 30:
        raise InputError("D must be at most 30")
    return bott_counts(rd, D) == bott_series(rd.exponents, D)
