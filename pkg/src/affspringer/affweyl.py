"""Extended affine Weyl groups and their l-dilations.

An element is stored as a pair (w, mu) standing for tau_mu * w. Affine
roots alpha + m*delta are stored as (root, level). Node 0 of the affine
Dynkin diagram is the affine simple root -theta + l*delta; nodes 1..r are
the finite simple roots alpha_1..alpha_r.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable

from .errors import InputError, ResourceError
from .rootdata import RootDatum, Vec, WeylElement, height, is_positive_root, neg, pair, unit

MAX_LENGTH_BOUND = 400
COSET_COUNT_BOUND = 2_000_000


@dataclass(frozen=True)
class AffineRoot:
    root: Vec
    level: int

    def is_positive(self) -> bool:
        if self.level != 0:
            return self.level > 0
        return any(self.root) and is_positive_root(self.root)

    def __neg__(self) -> "AffineRoot":
        return AffineRoot(neg(self.root), -self.level)

    def shift(self, k: int) -> "AffineRoot":
        return AffineRoot(self.root, self.level + k)

    def __str__(self) -> str:
        return f"{self.root}{self.level:+d}d"


@dataclass(frozen=True)
class AffineWeylElement:
    """tau_mu * w; ``ell`` records the dilation the element was built in."""

    w: WeylElement
    mu: Vec
    ell: int = 1

    def __post_init__(self):
        if self.ell < 1:
            raise InputError("dilation must be a positive integer")
        if any(m % self.ell for m in self.mu):
            raise InputError(f"translation {self.mu} is not in {self.ell}*coweight lattice")

    def __eq__(self, other):
        return isinstance(other, AffineWeylElement) and self.w == other.w and self.mu == other.mu

    def __hash__(self):
        return hash((self.w, self.mu))

    @property
    def rank(self) -> int:
        return len(self.mu)

    def __mul__(self, other: "AffineWeylElement") -> "AffineWeylElement":
        wn = self.w.apply(other.mu)
        mu = tuple(a + b for a, b in zip(self.mu, wn))
        return AffineWeylElement(self.w * other.w, mu, gcd(self.ell, other.ell))

    def inverse(self) -> "AffineWeylElement":
        wi = self.w.inverse()
        return AffineWeylElement(wi, neg(wi.apply(self.mu)), self.ell)

    def act_linear(self, lam: Iterable) -> tuple:
        return tuple(a + b for a, b in zip(self.w.apply(lam), self.mu))

    def act_dot(self, lam: Iterable) -> tuple:
        shifted = tuple(x + 1 for x in lam)
        return tuple(x - 1 for x in self.act_linear(shifted))

    def act_affine_root(self, beta: AffineRoot) -> AffineRoot:
        wb = self.w.apply_root(beta.root)
        return AffineRoot(wb, beta.level - pair(wb, self.mu))

    def is_identity(self) -> bool:
        return self.w.is_identity() and not any(self.mu)

    def in_dilated_extended(self, ell: int) -> bool:
        return all(m % ell == 0 for m in self.mu)


# free-function spellings of the three actions
def act_linear(x: AffineWeylElement, lam) -> tuple:
    return x.act_linear(lam)


def act_dot(x: AffineWeylElement, lam) -> tuple:
    return x.act_dot(lam)


def act_affine_root(x: AffineWeylElement, beta: AffineRoot) -> AffineRoot:
    return x.act_affine_root(beta)


def identity(rd: RootDatum, ell: int = 1) -> AffineWeylElement:
    return AffineWeylElement(WeylElement.identity(rd.rank), (0,) * rd.rank, ell)


def translation(rd: RootDatum, mu: Iterable[int], ell: int = 1) -> AffineWeylElement:
    return AffineWeylElement(WeylElement.identity(rd.rank), tuple(mu), ell)


def finite(w: WeylElement, ell: int = 1) -> AffineWeylElement:
    return AffineWeylElement(w, (0,) * w.rank, ell)


def reflection(rd: RootDatum, alpha: Iterable[int], m: int = 0) -> AffineWeylElement:
    """s_{alpha + m delta} = s_alpha tau_{m alpha-check} = tau_{-m alpha-check} s_alpha."""
    alpha = tuple(alpha)
    a = rd.coroot(alpha)
    return AffineWeylElement(rd.reflection(alpha), tuple(-m * x for x in a))


def simple_affine_root(rd: RootDatum, i: int, ell: int = 1) -> AffineRoot:
    if i == 0:
        return AffineRoot(neg(rd.highest_root), ell)
    if not 1 <= i <= rd.rank:
        raise InputError(f"affine node {i} out of range")
    return AffineRoot(unit(rd.rank, i - 1), 0)


def simple_affine_reflections(rd: RootDatum, ell: int = 1) -> list[AffineWeylElement]:
    """[s_0, s_1, ..., s_r] generating the l-dilated affine Weyl group."""
    out = []
    for i in range(rd.rank + 1):
        b = simple_affine_root(rd, i, ell)
        x = reflection(rd, b.root, b.level)
        out.append(AffineWeylElement(x.w, x.mu, ell))
    return out


def alcove_value(rd: RootDatum, x: AffineWeylElement, beta: AffineRoot) -> Fraction:
    """Value of x(beta) at the barycentre-like point (rho-check + delta-derivation)/h."""
    if not any(beta.root):
        raise InputError("imaginary affine roots have no alcove value")
    y = x.act_affine_root(beta)
    h = rd.coxeter_number
    return Fraction(height(y.root) + y.level * h, h)


def _undilate(x: AffineWeylElement, ell: int) -> tuple[WeylElement, Vec]:
    if any(m % ell for m in x.mu):
        raise InputError(f"element is not in the {ell}-dilated group")
    return x.w, tuple(m // ell for m in x.mu)


def length(rd: RootDatum, x: AffineWeylElement, ell: int = 1) -> int:
    """Number of positive affine roots sent to negative ones.

    For l > 1 this is the length inside the l-dilated group, which is
    conjugate to the undilated one by rescaling translations.
    """
    w, mu = _undilate(x, ell)
    total = 0
    for a in rd.positive_roots:
        wa = w.apply_root(a)
        c = pair(wa, mu)
        wa_pos = is_positive_root(wa)
        # alpha + k delta, k >= 0
        total += max(0, c) + (1 if c >= 0 and not wa_pos else 0)
        # -alpha + k delta, k >= 1
        total += max(0, -c - 1) + (1 if -c >= 1 and wa_pos else 0)
    return total


def inversion_set(rd: RootDatum, x: AffineWeylElement, ell: int = 1) -> list[AffineRoot]:
    """Positive affine roots beta (levels in the dilated scale) with x(beta) < 0."""
    w, mu = _undilate(x, ell)
    y = AffineWeylElement(w, mu)
    bound = max((abs(pair(w.apply_root(a), mu)) for a in rd.positive_roots), default=0) + 1
    out = []
    for a in rd.roots:
        for k in range(0, bound + 1):
            b = AffineRoot(a, k)
            if b.is_positive() and not y.act_affine_root(b).is_positive():
                out.append(AffineRoot(a, k * ell))
    return out


def is_min_coset_rep(rd: RootDatum, x: AffineWeylElement, J: Iterable[int], ell: int = 1) -> bool:
    return all(x.act_affine_root(simple_affine_root(rd, j, ell)).is_positive() for j in J)


def min_coset_reps(
    rd: RootDatum,
    J: Iterable[int],
    max_length: int,
    ell: int = 1,
    bound: int = COSET_COUNT_BOUND,
) -> list[list[AffineWeylElement]]:
    """Minimal representatives of W_af / W_J, grouped by length 0..max_length.

    J is a set of affine Dynkin nodes (0 is the affine node).
    """
    J = frozenset(J)
    if not J <= set(range(rd.rank + 1)):
        raise InputError(f"J={sorted(J)} is not a set of affine nodes")
    if max_length > MAX_LENGTH_BOUND:
        raise ResourceError(f"max_length {max_length} exceeds {MAX_LENGTH_BOUND}")
    gens = simple_affine_reflections(rd, ell)
    layers = [[identity(rd, ell)]]
    total = 1
    for n in range(max_length):
        nxt = {}
        for x in layers[-1]:
            for s in gens:
                y = s * x
                if y in nxt:
                    continue
                if length(rd, y, ell) == n + 1 and is_min_coset_rep(rd, y, J, ell):
                    nxt[y] = None
        layers.append(list(nxt))
        total += len(nxt)
        if total > bound:
            raise ResourceError(f"coset enumeration exceeded {bound} elements")
    return layers
