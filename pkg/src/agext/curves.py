"""Projective line, elliptic and Hermitian curves with one point at infinity.

Affine points are ``(x, y)`` tuples of element indices; on the projective line
``y`` is ``None``.  The point at infinity is the module constant ``INF``.
Riemann-Roch spaces L(m P_inf) are spanned by monic monomials ``x^a y^b``
graded by their pole order at P_inf.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional

import numpy as np

from .gf import Field, is_prime, make_field

INF = None

LINE = "line"
ELLIPTIC = "elliptic"
HERMITIAN = "hermitian"


class CurveError(ValueError):
    pass


@dataclass(frozen=True)
class Curve:
    family: str
    field: Field
    a: int = 0
    b: int = 0
    q0: int = 0

    def __post_init__(self):
        F = self.field
        if self.family == ELLIPTIC:
            disc = F.add(F.mul(4 % F.p, F.pow(self.a, 3)), F.mul(27 % F.p, F.mul(self.b, self.b)))
            if disc == 0:
                raise CurveError("singular elliptic curve: 4a^3 + 27b^2 = 0")
        elif self.family == HERMITIAN:
            if not (is_prime(self.q0) and self.q0 % 2 == 1):
                raise CurveError(f"Hermitian q0={self.q0} must be an odd prime")
            if F.q != self.q0 ** 2:
                raise CurveError(f"Hermitian curve over GF({self.q0}^2) needs q={self.q0 ** 2}, got {F.q}")
        elif self.family != LINE:
            raise CurveError(f"unknown curve family {self.family!r}")

    @property
    def genus(self) -> int:
        if self.family == LINE:
            return 0
        if self.family == ELLIPTIC:
            return 1
        return self.q0 * (self.q0 - 1) // 2

    @property
    def fiber_size(self) -> int:
        """[F : F_q(x)], the number of points over a split x-value."""
        return {LINE: 1, ELLIPTIC: 2}.get(self.family, self.q0)

    # -- pole orders ------------------------------------------------------

    def pole_order(self, mono) -> int:
        a, b = mono
        if self.family == LINE:
            return a
        if self.family == ELLIPTIC:
            return 2 * a + 3 * b
        return a * self.q0 + b * (self.q0 + 1)

    def monomial_of_order(self, r: int):
        """The reduced monomial with pole order r, or None if r is a gap."""
        if r < 0:
            return None
        if self.family == LINE:
            return (r, 0)
        if self.family == ELLIPTIC:
            if r == 1:
                return None
            return (r // 2, 0) if r % 2 == 0 else ((r - 3) // 2, 1)
        q0 = self.q0
        b = r % q0
        rest = r - b * (q0 + 1)
        if rest < 0:
            return None
        return (rest // q0, b)

    def is_nongap(self, r: int) -> bool:
        return self.monomial_of_order(r) is not None

    def gaps(self) -> list[int]:
        return [r for r in range(2 * self.genus) if not self.is_nongap(r)]

    # -- points -----------------------------------------------------------

    def contains(self, pt) -> bool:
        if pt is INF:
            return True
        F = self.field
        x, y = pt
        if not 0 <= x < F.q:
            return False
        if self.family == LINE:
            return y is None
        if y is None or not 0 <= y < F.q:
            return False
        if self.family == ELLIPTIC:
            rhs = F.add(F.add(F.pow(x, 3), F.mul(self.a, x)), self.b)
            return F.mul(y, y) == rhs
        q0 = self.q0
        return F.add(F.pow(y, q0), y) == F.pow(x, q0 + 1)

    def rhs_values(self):
        F = self.field
        xs = np.arange(F.q, dtype=np.int64)
        if self.family == ELLIPTIC:
            return F.add(F.add(F.pow(xs, 3), F.mul(self.a, xs)), self.b)
        return F.pow(xs, self.q0 + 1)

    def affine_points(self) -> list[tuple]:
        """All affine rational points, sorted by (x, y) index."""
        F = self.field
        if self.family == LINE:
            return [(x, None) for x in range(F.q)]
        ys = np.arange(F.q, dtype=np.int64)
        if self.family == ELLIPTIC:
            lhs = F.mul(ys, ys)
        else:
            lhs = F.add(F.pow(ys, self.q0), ys)
        rhs = self.rhs_values()
        pts = []
        for x in range(F.q):
            for y in np.nonzero(lhs == rhs[x])[0]:
                pts.append((x, int(y)))
        return pts

    def point_count(self) -> int:
        """Number of rational points including the single point at infinity."""
        return len(self.affine_points()) + 1

    def fiber(self, x: int) -> list[tuple]:
        return [pt for pt in self.affine_points() if pt[0] == x]

    # -- serialization ----------------------------------------------------

    def to_json(self) -> dict:
        if self.family == ELLIPTIC:
            return {"family": ELLIPTIC, "a": self.a, "b": self.b}
        if self.family == HERMITIAN:
            return {"family": HERMITIAN, "q0": self.q0}
        return {"family": LINE}


def curve_from_json(obj: dict, F: Field) -> Curve:
    fam = obj["family"]
    if fam == ELLIPTIC:
        return Curve(ELLIPTIC, F, a=int(obj["a"]), b=int(obj["b"]))
    if fam == HERMITIAN:
        return Curve(HERMITIAN, F, q0=int(obj["q0"]))
    if fam == LINE:
        return Curve(LINE, F)
    raise CurveError(f"unknown curve family {fam!r}")


def projective_line(F: Field) -> Curve:
    return Curve(LINE, F)


def elliptic_curve(F: Field, a: int, b: int) -> Curve:
    return Curve(ELLIPTIC, F, a=a, b=b)


def hermitian_curve(q0: int) -> Curve:
    return Curve(HERMITIAN, make_field(q0, 2), q0=q0)


def enumerate_points(C: Curve) -> tuple[list[tuple], int]:
    """Affine points and the number of places at infinity (always 1 here)."""
    return C.affine_points(), 1


# -- elliptic group law ----------------------------------------------------

def _require_elliptic(C: Curve):
    if C.family != ELLIPTIC:
        raise CurveError("group law is only defined on elliptic curves")


def ec_neg(C: Curve, P):
    _require_elliptic(C)
    if P is INF:
        return INF
    return (P[0], C.field.neg(P[1]))


def ec_add(C: Curve, P, Q):
    _require_elliptic(C)
    for pt in (P, Q):
        if not C.contains(pt):
            raise CurveError(f"point {pt} is not on the curve")
    if P is INF:
        return Q
    if Q is INF:
        return P
    F = C.field
    x1, y1 = P
    x2, y2 = Q
    if x1 == x2:
        if F.add(y1, y2) == 0:
            return INF
        num = F.add(F.mul(3 % F.p, F.mul(x1, x1)), C.a)
        lam = F.div(num, F.mul(2, y1))
    else:
        lam = F.div(F.sub(y2, y1), F.sub(x2, x1))
    x3 = F.sub(F.sub(F.mul(lam, lam), x1), x2)
    y3 = F.sub(F.mul(lam, F.sub(x1, x3)), y1)
    return (x3, y3)


def ec_scalar_mul(C: Curve, n: int, P):
    """[n]P by double-and-add."""
    if n < 0:
        return ec_scalar_mul(C, -n, ec_neg(C, P))
    result = INF
    addend = P
    while n:
        if n & 1:
            result = ec_add(C, result, addend)
        addend = ec_add(C, addend, addend)
        n >>= 1
    return result


def ec_order(C: Curve, P) -> int:
    n, R = 1, P
    while R is not INF:
        R = ec_add(C, R, P)
        n += 1
    return n


# -- Riemann-Roch bases ----------------------------------------------------

@dataclass(frozen=True)
class RRBasis:
    m: int
    monomials: tuple
    orders: tuple

    def __len__(self):
        return len(self.monomials)

    @property
    def top(self):
        return self.monomials[-1]


def rr_basis(C: Curve, m: int) -> RRBasis:
    """Monic monomial basis of L(m P_inf) sorted by pole order."""
    if m < 0:
        return RRBasis(m, (), ())
    monos = [C.monomial_of_order(r) for r in range(m + 1)]
    pairs = [(C.pole_order(mo), mo) for mo in monos if mo is not None]
    return RRBasis(m, tuple(mo for _, mo in pairs), tuple(o for o, _ in pairs))


def semigroup_nongaps(generators, bound: int) -> list[int]:
    """Elements <= bound of the numerical semigroup spanned by generators."""
    reach = [False] * (bound + 1)
    reach[0] = True
    for r in range(1, bound + 1):
        reach[r] = any(r >= g and reach[r - g] for g in generators)
    return [r for r in range(bound + 1) if reach[r]]


def evaluate(C: Curve, mono, points) -> np.ndarray:
    """Values of x^a y^b (or a linear combination ``{mono: coeff}``) at points."""
    F = C.field
    xs = np.array([pt[0] for pt in points], dtype=np.int64)
    if isinstance(mono, dict):
        out = np.zeros(len(points), dtype=np.int64)
        for mo, c in mono.items():
            out = F.add(out, F.mul(c, evaluate(C, mo, points)))
        return np.asarray(out, dtype=np.int64)
    a, b = mono
    vals = F.pow(xs, a)
    if b:
        ys = np.array([pt[1] for pt in points], dtype=np.int64)
        vals = F.mul(vals, F.pow(ys, b))
    return np.asarray(vals, dtype=np.int64).reshape(len(points))


# -- support divisors --------------------------------------------------------

@dataclass(frozen=True)
class SupportDivisor:
    curve: Curve
    points: tuple
    alphas: tuple = dc_field(default=())
    groups: tuple = dc_field(default=())
    fiber_complete: bool = False

    def __len__(self):
        return len(self.points)

    def to_json(self) -> list:
        if self.curve.family == LINE:
            return [[x] for x, _ in self.points]
        return [[x, y] for x, y in self.points]


def make_support(C: Curve, points) -> SupportDivisor:
    pts = []
    for pt in points:
        if pt is INF:
            raise CurveError("the point at infinity cannot be in the support")
        x, y = (pt[0], pt[1] if len(pt) > 1 else None)
        x = int(x)
        y = None if y is None else int(y)
        if C.family == LINE:
            y = None
        if not C.contains((x, y)):
            raise CurveError(f"point {(x, y)} is not on the curve")
        pts.append((x, y))
    if not pts:
        raise CurveError("support is empty")
    if len(set(pts)) != len(pts):
        raise CurveError("support contains duplicate points")
    alphas: list[int] = []
    groups: dict[int, list[int]] = {}
    for i, (x, _) in enumerate(pts):
        if x not in groups:
            alphas.append(x)
            groups[x] = []
        groups[x].append(i)
    if C.family == LINE:
        complete = True
    elif C.family == ELLIPTIC:
        complete = all(len(groups[a]) == 2 for a in alphas) and all(y != 0 for _, y in pts)
    else:
        complete = all(len(groups[a]) == C.q0 for a in alphas)
    return SupportDivisor(C, tuple(pts), tuple(alphas),
                          tuple(tuple(groups[a]) for a in alphas), complete)


def h_prime_eval(D: SupportDivisor, pt) -> int:
    """h'(x(P)) for h = prod over fibers (x - alpha_i)."""
    if not D.fiber_complete:
        raise CurveError("h' is only defined for fiber-complete supports")
    F = D.curve.field
    x = pt[0]
    if x not in D.alphas:
        raise CurveError(f"x={x} is not a fiber root of the support")
    val = 1
    for a in D.alphas:
        if a != x:
            val = F.mul(val, F.sub(x, a))
    return int(val)


# -- support recipes ---------------------------------------------------------

def support_all_affine(C: Curve) -> list[tuple]:
    return C.affine_points()


def support_torsion_free_pairs(C: Curve) -> list[tuple]:
    """Affine points with y != 0 (elliptic: excludes the 2-torsion)."""
    return [pt for pt in C.affine_points() if pt[1] != 0]


def support_fibers(C: Curve, t: int, skip_zero_y: bool = True) -> list[tuple]:
    """Points over the first t x-values whose fibers split completely."""
    need = C.fiber_size
    out = []
    count = 0
    for x in range(C.field.q):
        fib = [(x, None)] if C.family == LINE else C.fiber(x)
        if len(fib) != need:
            continue
        if C.family == ELLIPTIC and skip_zero_y and any(y == 0 for _, y in fib):
            continue
        out.extend(fib)
        count += 1
        if count == t:
            return out
    raise CurveError(f"curve has fewer than {t} split fibers")


def support_multiples(C: Curve, P, count: int) -> list[tuple]:
    """[1]P, [2]P, ..., [count]P."""
    out = []
    R = INF
    for _ in range(count):
        R = ec_add(C, R, P)
        if R is INF:
            raise CurveError("multiples of P reach the point at infinity")
        out.append(R)
    return out


Point = Optional[tuple]
