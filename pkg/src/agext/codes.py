"""One-point AG codes C_L(D, mP), their extended and Roth-Lempel variants,
and explicit dual generator matrices built from functions.

The dual of C_L(D, mP) is spanned by evaluations of g / w where g runs over
a monomial basis of L((T - m - 1) P), T = n + 2g - 1, and w is the
family denominator (h' on the line and Hermitian curve, y h' on elliptic
curves).  Extending by one or two columns adds the next one or two
quotient-basis elements with correction terms computed numerically.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import linalg
from .curves import (ELLIPTIC, HERMITIAN, Curve, RRBasis, SupportDivisor,
                     evaluate, h_prime_eval, rr_basis)
from .gf import Field

PLAIN = "plain"
EXTENDED = "extended"
ROTH_LEMPEL = "roth-lempel"
VARIANTS = (PLAIN, EXTENDED, ROTH_LEMPEL)


class ConstructionError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class EvaluationCode:
    curve: Curve
    support: SupportDivisor
    m: int
    variant: str
    basis: RRBasis
    generator: np.ndarray
    delta: Optional[int] = None

    @property
    def field(self) -> Field:
        return self.curve.field

    @property
    def n(self) -> int:
        """Code length (n+1 for extended, n+2 for Roth-Lempel)."""
        return self.generator.shape[1]

    @property
    def k(self) -> int:
        return self.generator.shape[0]

    @property
    def support_size(self) -> int:
        return len(self.support)

    @property
    def genus(self) -> int:
        return self.curve.genus

    def __repr__(self):
        return (f"EvaluationCode({self.variant}, {self.curve.family}, q={self.field.q}, "
                f"n={self.n}, k={self.k}, m={self.m})")


@dataclass(frozen=True, eq=False)
class DualRepresentation:
    denominators: np.ndarray
    quotient_basis: RRBasis
    lambdas: tuple
    generator: np.ndarray
    primal: EvaluationCode

    @property
    def lam(self) -> int:
        return self.lambdas[0]


def evaluation_matrix(C: Curve, basis: RRBasis, points) -> np.ndarray:
    rows = [evaluate(C, mono, points) for mono in basis.monomials]
    if not rows:
        return np.zeros((0, len(points)), dtype=np.int64)
    return np.stack(rows).astype(np.int64)


def build_code(C: Curve, D: SupportDivisor, m: int) -> EvaluationCode:
    """C_L(D, mP): row j holds f_j(P_1), ..., f_j(P_n)."""
    n = len(D)
    if n == 0:
        raise ConstructionError("support is empty")
    if not 0 <= m <= n - 1:
        raise ConstructionError(f"need 0 <= m <= n-1, got m={m}, n={n}")
    basis = rr_basis(C, m)
    G = evaluation_matrix(C, basis, D.points)
    return EvaluationCode(C, D, m, PLAIN, basis, G)


def _check_extension_range(C: Curve, D: SupportDivisor, m: int):
    n = len(D)
    g = C.genus
    if not 2 * g <= m <= n - 1:
        raise ConstructionError(f"need 2g <= m <= n-1, got g={g}, m={m}, n={n}")


def build_extended(C: Curve, D: SupportDivisor, m: int) -> EvaluationCode:
    """C_ex(D, mP): appends the coefficient of the pole-order-m basis element."""
    _check_extension_range(C, D, m)
    plain = build_code(C, D, m)
    k = plain.k
    col = np.zeros((k, 1), dtype=np.int64)
    col[k - 1, 0] = 1
    G = np.concatenate([plain.generator, col], axis=1)
    return EvaluationCode(C, D, m, EXTENDED, plain.basis, G)


def build_roth_lempel(C: Curve, D: SupportDivisor, m: int, delta: int = 0) -> EvaluationCode:
    """C_RL,delta(D, mP): two extra columns (0..0,1)^T and (0..0,1,delta)^T."""
    _check_extension_range(C, D, m)
    C.field.check(delta)
    if not C.is_nongap(m - 1):
        raise ConstructionError(
            f"m-1={m - 1} is a Weierstrass gap at infinity; Roth-Lempel extension "
            f"needs basis elements of pole order m and m-1")
    plain = build_code(C, D, m)
    k = plain.k
    if k < 2:
        raise ConstructionError("Roth-Lempel extension needs dimension >= 2")
    extra = np.zeros((k, 2), dtype=np.int64)
    extra[k - 1, 0] = 1
    extra[k - 2, 1] = 1
    extra[k - 1, 1] = int(delta)
    G = np.concatenate([plain.generator, extra], axis=1)
    return EvaluationCode(C, D, m, ROTH_LEMPEL, plain.basis, G, delta=int(delta))


def build(C: Curve, D: SupportDivisor, m: int, variant: str = PLAIN,
          delta: Optional[int] = None) -> EvaluationCode:
    if variant == PLAIN:
        return build_code(C, D, m)
    if variant == EXTENDED:
        return build_extended(C, D, m)
    if variant == ROTH_LEMPEL:
        return build_roth_lempel(C, D, m, 0 if delta is None else delta)
    raise ConstructionError(f"unknown variant {variant!r}")


# -- function-based duals ---------------------------------------------------

def denominators(D: SupportDivisor) -> np.ndarray:
    """w(P_i): h'(x) on the line and Hermitian curve, y h'(x) on elliptic curves."""
    C = D.curve
    if not D.fiber_complete:
        raise ConstructionError(
            "support is not fiber-complete; use the nullspace dual instead")
    F = C.field
    w = np.array([h_prime_eval(D, pt) for pt in D.points], dtype=np.int64)
    if C.family == ELLIPTIC:
        ys = np.array([pt[1] for pt in D.points], dtype=np.int64)
        w = np.asarray(F.mul(w, ys), dtype=np.int64)
    return w


def _top_order(code: EvaluationCode) -> int:
    return len(code.support) + 2 * code.genus - 1


def _check_family(D: SupportDivisor):
    C = D.curve
    if C.family == ELLIPTIC and C.field.q % 2 == 0:
        raise ConstructionError("elliptic dual formula needs q odd")
    if C.family == HERMITIAN and len(D) % C.q0:
        raise ConstructionError("Hermitian support must be whole fibers")


def _quotient_rows(code: EvaluationCode, degree: int):
    C, D = code.curve, code.support
    F = C.field
    w = denominators(D)
    qb = rr_basis(C, degree)
    num = evaluation_matrix(C, qb, D.points)
    rows = np.asarray(F.div(num, w[None, :]), dtype=np.int64).reshape(num.shape)
    return w, qb, rows


def _pair_sum(F: Field, u: np.ndarray, v: np.ndarray) -> int:
    return F.sum(F.mul(u, v))


def functional_dual_extended(code: EvaluationCode) -> DualRepresentation:
    """Generator of C_ex^perp: rows (g_j/w)(P_i) | 0, last row ends in -lambda."""
    C, D, m = code.curve, code.support, code.m
    _check_extension_range(C, D, m)
    _check_family(D)
    F = C.field
    primal = code if code.variant == EXTENDED else build_extended(C, D, m)
    w, qb, rows = _quotient_rows(primal, _top_order(primal) - m)
    fk = primal.generator[-1, :len(D)]
    lam = _pair_sum(F, fk, rows[-1])
    last = np.zeros((rows.shape[0], 1), dtype=np.int64)
    last[-1, 0] = F.neg(lam)
    G = np.concatenate([rows, last], axis=1)
    return DualRepresentation(w, qb, (lam,), G, primal)


def functional_dual_rl(code: EvaluationCode, delta: Optional[int] = None) -> DualRepresentation:
    """Generator of C_RL,delta^perp with trailing (-l1, 0) and (-l3, -l2)."""
    C, D, m = code.curve, code.support, code.m
    if delta is None:
        delta = code.delta if code.delta is not None else 0
    _check_family(D)
    F = C.field
    primal = (code if code.variant == ROTH_LEMPEL and code.delta == delta
              else build_roth_lempel(C, D, m, delta))
    w, qb, rows = _quotient_rows(primal, _top_order(primal) - m + 1)
    n = len(D)
    fk = primal.generator[-1, :n]
    fk1 = primal.generator[-2, :n]
    lam1 = _pair_sum(F, fk, rows[-2])
    lam2 = _pair_sum(F, fk1, rows[-1])
    lam3 = F.sub(_pair_sum(F, fk, rows[-1]), F.mul(delta, lam2))
    tail = np.zeros((rows.shape[0], 2), dtype=np.int64)
    tail[-2, 0] = F.neg(lam1)
    tail[-1, 0] = F.neg(lam3)
    tail[-1, 1] = F.neg(lam2)
    G = np.concatenate([rows, tail], axis=1)
    return DualRepresentation(w, qb, (int(lam1), int(lam2), int(lam3)), G, primal)


def functional_dual_plain(code: EvaluationCode) -> DualRepresentation:
    """Generator of C_L(D, mP)^perp from L((T - m - 1) P) / w."""
    _check_family(code.support)
    w, qb, rows = _quotient_rows(code, _top_order(code) - code.m - 1)
    return DualRepresentation(w, qb, (), rows, code)


def functional_dual(code: EvaluationCode) -> DualRepresentation:
    if code.variant == EXTENDED:
        return functional_dual_extended(code)
    if code.variant == ROTH_LEMPEL:
        return functional_dual_rl(code)
    if code.variant == PLAIN:
        return functional_dual_plain(code)
    raise ConstructionError(f"no functional dual for variant {code.variant!r}")


def nullspace_dual(code) -> np.ndarray:
    G = code.generator if hasattr(code, "generator") else np.asarray(code)
    F = code.field
    return linalg.nullspace(F, G)


def is_orthogonal(F: Field, A: np.ndarray, B: np.ndarray) -> bool:
    return not np.any(linalg.mat_mul(F, A, np.asarray(B).T))


def verify_dual(dual: DualRepresentation) -> bool:
    """Orthogonal to the primal generator and of complementary rank."""
    code = dual.primal
    F = code.field
    if not is_orthogonal(F, dual.generator, code.generator):
        return False
    return (linalg.rank(F, dual.generator) == code.n - linalg.rank(F, code.generator)
            == dual.generator.shape[0])


# -- row-deleted codes for the Roth-Lempel distance dichotomy ---------------

@dataclass(frozen=True, eq=False)
class SubCode:
    field: Field
    generator: np.ndarray
    label: str

    @property
    def n(self) -> int:
        return self.generator.shape[1]

    @property
    def k(self) -> int:
        return self.generator.shape[0]


def build_punctured_basis_code(code: EvaluationCode, which: str) -> SubCode:
    """G1 drops the f_{k-1} row of G_k; G2 drops g_{n-k+1} from the
    Roth-Lempel dual basis.  Both have length n (the support size)."""
    n = len(code.support)
    F = code.field
    if which == "G1":
        Gk = code.generator[:, :n]
        k = Gk.shape[0]
        if k < 2:
            raise ConstructionError("G1 needs k >= 2")
        rows = list(range(k - 2)) + [k - 1]
        return SubCode(F, Gk[rows], "G1")
    if which == "G2":
        dual = functional_dual_rl(code, code.delta if code.delta is not None else 0)
        G = dual.generator[:, :n]
        r = G.shape[0]
        if r < 2:
            raise ConstructionError("G2 needs a dual basis with >= 2 rows")
        rows = list(range(r - 2)) + [r - 1]
        return SubCode(F, G[rows], "G2")
    raise ConstructionError(f"unknown punctured basis code {which!r}")
