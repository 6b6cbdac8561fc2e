"""The rank-one quiver algebra over Q[h]/h^N and its centre.

Vertices are -K..K. Arrows i_k : k -> k+1 and j_k : k+1 -> k satisfy
i_{k+1} i_k = 0, j_k j_{k+1} = 0 and i_{k-1} j_{k-1} - j_k i_k = (-1)^k h 1_k.
With x_k = j_k i_k the algebra has the basis 1_k, x_k, i_k, j_k over the
base ring, and the products below are read off from the relations.
Products are written a*b = "a after b".
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InputError, InvariantViolation
from .linalg import nullspace, rank

Label = tuple[str, int]
HPoly = tuple[Fraction, ...]


def _hmul(p: HPoly, q: HPoly, N: int) -> HPoly:
    out = [Fraction(0)] * N
    for a, x in enumerate(p):
        if not x:
            continue
        for b in range(N - a):
            if q[b]:
                out[a + b] += x * q[b]
    return tuple(out)


def _hadd(p: HPoly, q: HPoly) -> HPoly:
    return tuple(a + b for a, b in zip(p, q))


@dataclass
class QuiverAlgebra:
    K: int
    N: int
    basis: list[Label] = field(default_factory=list)
    _table: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        K = self.K
        self.basis = (
            [("e", k) for k in range(-K, K + 1)]
            + [("x", k) for k in range(-K, K + 1)]
            + [("i", k) for k in range(-K, K)]
            + [("j", k) for k in range(-K, K)]
        )
        self.index = {b: n for n, b in enumerate(self.basis)}
        self._build_table()

    # ring helpers
    def hconst(self, c=1) -> HPoly:
        return (Fraction(c),) + (Fraction(0),) * (self.N - 1)

    def hpow(self, p: int, c=1) -> HPoly:
        out = [Fraction(0)] * self.N
        if p < self.N:
            out[p] = Fraction(c)
        return tuple(out)

    def sign_h(self, k: int) -> HPoly:
        """(-1)^(k+1) h."""
        return self.hpow(1, -1 if k % 2 == 0 else 1)

    @staticmethod
    def source(b: Label) -> int:
        t, k = b
        return k + 1 if t == "j" else k

    @staticmethod
    def target(b: Label) -> int:
        t, k = b
        return k + 1 if t == "i" else k

    def _build_table(self):
        """Structure constants for composable pairs of basis elements."""
        tab = {}
        one = self.hconst()
        for a in self.basis:
            for b in self.basis:
                if self.source(a) != self.target(b):
                    continue
                ta, ka = a
                tb, kb = b
                if ta == "e":
                    res = {b: one}
                elif tb == "e":
                    res = {a: one}
                elif ta == "x" and tb == "x":
                    res = {a: self.sign_h(ka)}
                elif ta == "x" and tb == "j":
                    res = {b: self.sign_h(ka)}
                elif ta == "x" and tb == "i":
                    res = {}
                elif ta == "i" and tb == "x":
                    res = {a: self.sign_h(kb)}
                elif ta == "j" and tb == "x":
                    res = {}
                elif ta == "i" and tb == "j":
                    res = {("x", ka + 1): one, ("e", ka + 1): self.sign_h(ka)}
                elif ta == "j" and tb == "i":
                    res = {("x", ka): one}
                else:
                    # i_{k+1} i_k and j_k j_{k+1}
                    res = {}
                tab[(a, b)] = res
        self._table = tab

    # elements are dicts label -> HPoly
    def zero(self) -> dict:
        return {}

    def element(self, terms: dict) -> dict:
        return {b: tuple(Fraction(c) for c in p) for b, p in terms.items() if any(p)}

    def basis_element(self, b: Label, p: int = 0) -> dict:
        return {b: self.hpow(p)}

    def unit(self) -> dict:
        return {("e", k): self.hconst() for k in range(-self.K, self.K + 1)}

    def add(self, u: dict, v: dict) -> dict:
        out = dict(u)
        for b, p in v.items():
            out[b] = _hadd(out[b], p) if b in out else p
        return {b: p for b, p in out.items() if any(p)}

    def scale(self, u: dict, c) -> dict:
        return {b: tuple(c * x for x in p) for b, p in u.items() if c}

    def sub(self, u: dict, v: dict) -> dict:
        return self.add(u, self.scale(v, -1))

    def mul(self, u: dict, v: dict) -> dict:
        out: dict = {}
        N = self.N
        for a, p in u.items():
            for b, q in v.items():
                res = self._table.get((a, b))
                if not res:
                    continue
                pq = _hmul(p, q, N)
                if not any(pq):
                    continue
                for c, r in res.items():
                    term = _hmul(pq, r, N)
                    out[c] = _hadd(out[c], term) if c in out else term
        return {b: p for b, p in out.items() if any(p)}

    def commutator(self, u: dict, v: dict) -> dict:
        return self.sub(self.mul(u, v), self.mul(v, u))

    @property
    def dim(self) -> int:
        return len(self.basis) * self.N

    def to_vector(self, u: dict) -> list[Fraction]:
        vec = [Fraction(0)] * self.dim
        for b, p in u.items():
            n = self.index[b]
            for d, c in enumerate(p):
                vec[n * self.N + d] = c
        return vec

    def from_vector(self, vec) -> dict:
        out = {}
        for n, b in enumerate(self.basis):
            p = tuple(Fraction(vec[n * self.N + d]) for d in range(self.N))
            if any(p):
                out[b] = p
        return out

    def generators(self) -> list[dict]:
        gens = [self.basis_element(("e", k)) for k in range(-self.K, self.K + 1)]
        gens += [self.basis_element(("i", k)) for k in range(-self.K, self.K)]
        gens += [self.basis_element(("j", k)) for k in range(-self.K, self.K)]
        return gens

    def interior(self) -> list[int]:
        return list(range(-(self.K - 2), self.K - 1))

    def components(self, z: dict, k: int) -> tuple[HPoly, HPoly]:
        """(a_k, b_k) with the vertex-k part of z equal to a_k 1_k + b_k x_k."""
        zero = (Fraction(0),) * self.N
        return z.get(("e", k), zero), z.get(("x", k), zero)


def build_algebra(K: int, N: int) -> QuiverAlgebra:
    if K < 2 or N < 2:
        raise InputError("need K >= 2 and N >= 2")
    return QuiverAlgebra(K, N)


def check_associativity(A: QuiverAlgebra) -> bool:
    """(ab)c == a(bc) on every triple of basis elements (with h-power 0)."""
    basis = [A.basis_element(b) for b in A.basis]
    for a, b, c in itertools.product(basis, repeat=3):
        if A.mul(A.mul(a, b), c) != A.mul(a, A.mul(b, c)):
            return False
    return True


def check_relations(A: QuiverAlgebra) -> bool:
    e = A.basis_element
    K = A.K
    for k in range(-K, K - 1):
        if A.mul(e(("i", k + 1)), e(("i", k))) or A.mul(e(("j", k)), e(("j", k + 1))):
            return False
    for k in range(-K + 1, K):
        lhs = A.sub(A.mul(e(("i", k - 1)), e(("j", k - 1))), A.mul(e(("j", k)), e(("i", k))))
        rhs = {("e", k): A.hpow(1, (-1) ** (k % 2))}
        if lhs != rhs:
            return False
    return True


def center_space(A: QuiverAlgebra) -> list[dict]:
    """Basis (over Q) of elements commuting with every 1_k, i_k, j_k."""
    gens = A.generators()
    D = A.dim
    cols = []
    for n in range(len(A.basis)):
        for d in range(A.N):
            u = A.basis_element(A.basis[n], d)
            col = []
            for g in gens:
                col.extend(A.to_vector(A.commutator(u, g)))
            cols.append(col)
    rows = [list(r) for r in zip(*cols)]
    rows = [r for r in rows if any(r)]
    basis = nullspace(rows, D)
    return [A.from_vector(v) for v in basis]


def is_central(A: QuiverAlgebra, z: dict) -> bool:
    return all(not A.commutator(z, g) for g in A.generators())


def interior_congruence_holds(A: QuiverAlgebra, z: dict) -> bool:
    """a_k and a_{k+1} agree modulo h on consecutive interior vertices."""
    ks = A.interior()
    for k, k1 in zip(ks, ks[1:]):
        if A.components(z, k)[0][0] != A.components(z, k1)[0][0]:
            return False
    return True


def interior_equation_holds(A: QuiverAlgebra, z: dict) -> bool:
    """a_k = a_{k+1} + (-1)^k h b_k on consecutive interior vertices."""
    ks = A.interior()
    for k, k1 in zip(ks, ks[1:]):
        a, b = A.components(z, k)
        a1, _ = A.components(z, k1)
        hb = _hmul(A.hpow(1, (-1) ** (k % 2)), b, A.N)
        if a != _hadd(a1, hb):
            return False
    return True


def verify_product_rule(A: QuiverAlgebra, z: dict, z2: dict) -> bool:
    prod = A.mul(z, z2)
    N = A.N
    for k in A.interior():
        a, b = A.components(z, k)
        a2, b2 = A.components(z2, k)
        pa, pb = A.components(prod, k)
        want_a = _hmul(a, a2, N)
        want_b = _hadd(_hadd(_hmul(a, b2, N), _hmul(a2, b, N)), _hmul(A.sign_h(k), _hmul(b, b2, N), N))
        if pa != want_a or pb != want_b:
            return False
    return True


def interior_projection_dim(A: QuiverAlgebra, center: list[dict]) -> int:
    rows = []
    for z in center:
        row = []
        for k in A.interior():
            a, b = A.components(z, k)
            row.extend(a)
            row.extend(b)
        rows.append(row)
    return rank(rows)


def congruence_enumerator(K: int, N: int) -> int:
    """Degrees of freedom of interior tuples (a_k, b_k) from the congruence description.

    The first a_k is arbitrary (N coefficients); each later a_{k+1} is fixed
    modulo h by a_k (N-1 free coefficients). Then b_k is determined by
    a_k - a_{k+1} up to the annihilator of h, i.e. one free top coefficient,
    except on the last interior vertex where a_{k+1} is not recorded and b_k
    is arbitrary.
    """
    M = 2 * K - 3
    if M < 1:
        raise InputError("no interior vertices")
    a_free = N + (M - 1) * (N - 1)
    b_free = (M - 1) * 1 + N
    return a_free + b_free


def example_central_element(A: QuiverAlgebra) -> dict:
    """The element with a_k = -k h and b_k = (-1)^k, central for every truncation order."""
    terms = {}
    for k in range(-A.K, A.K + 1):
        terms[("e", k)] = A.hpow(1, -k)
        terms[("x", k)] = A.hconst((-1) ** (k % 2))
    return A.element(terms)


def center_report(K: int, N: int) -> dict:
    A = build_algebra(K, N)
    if not check_relations(A):
        raise InvariantViolation("structure constants violate the defining relations")
    Z = center_space(A)
    return {
        "K": K,
        "N": N,
        "algebra_dim": A.dim,
        "center_dim": len(Z),
        "interior_dim": interior_projection_dim(A, Z),
        "predicted_interior_dim": congruence_enumerator(K, N),
        "congruences": all(interior_congruence_holds(A, z) for z in Z),
        "product_rule": all(verify_product_rule(A, z, w) for z in Z for w in Z),
    }
