"""Brute-force checks of the distance results for extended and Roth-Lempel
codes on a single (curve, support, m) instance.

Each check returns a verdict dict ``{"name", "applies", "pass", "detail"}``;
a check whose hypotheses fail on the instance has ``applies=False`` and
passes vacuously.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import codes
from .analysis import macwilliams, singleton_defect, weight_distribution
from .curves import ELLIPTIC, LINE, Curve, SupportDivisor, make_support, support_fibers
from .curves import elliptic_curve, hermitian_curve, projective_line
from .gf import make_field


def _verdict(name, applies, ok, detail):
    return {"name": name, "applies": bool(applies), "pass": bool(ok) or not applies,
            "detail": detail}


@dataclass
class Distances:
    n: int
    k: int
    d: int
    d_dual: int


def distances(code_or_pair) -> Distances:
    W = weight_distribution(code_or_pair)
    return Distances(W.n, W.k, W.min_distance, macwilliams(W).min_distance)


def extended_checks(C: Curve, D: SupportDivisor, m: int) -> list[dict]:
    n, g = len(D), C.genus
    plain = distances(codes.build_code(C, D, m))
    ext = distances(codes.build_extended(C, D, m))
    out = [_verdict("ext-distance-lower", True, ext.d >= n - m + 1,
                    f"d_ex={ext.d} >= n-m+1={n - m + 1}")]
    out.append(_verdict("mdex-primal", plain.d == n - m, ext.d == n - m + 1,
                        f"d={plain.d}, d_ex={ext.d}, n-m={n - m}"))
    dp = m - (2 * g - 2)
    out.append(_verdict("mdex-dual", plain.d_dual == dp, ext.d_dual == plain.d_dual,
                        f"d'={plain.d_dual}, d'_ex={ext.d_dual}, m-(2g-2)={dp}"))
    if plain.d_dual is not None:
        s = singleton_defect(n, plain.k, plain.d)
        s_dual = singleton_defect(n, n - plain.k, plain.d_dual)
        s_ex = singleton_defect(ext.n, ext.k, ext.d)
        s_ex_dual = singleton_defect(ext.n, ext.n - ext.k, ext.d_dual)
        out.append(_verdict("g-mds-preserved", s == s_dual == g, s_ex == s_ex_dual == g,
                            f"plain defects ({s},{s_dual}), extended ({s_ex},{s_ex_dual}), g={g}"))
    if m >= 1:
        prev = distances(codes.build_code(C, D, m - 1))
        prev_mds = prev.d == n - prev.k + 1
        mds = plain.d == n - plain.k + 1
        out.append(_verdict("extended-mds", prev_mds and mds, ext.d == ext.n - ext.k + 1,
                            f"C_L at m-1, m MDS: {prev_mds}, {mds}; d_ex={ext.d}"))
    return out


def roth_lempel_checks(C: Curve, D: SupportDivisor, m: int, dual_part: bool = True) -> list[dict]:
    """G1 reading: d(G1) >= n-m+1 gives d_RL = n-m+2, otherwise n-m+1.

    The dual statement is checked as written: d(G2) = m-(2g-2)-1 gives
    d'_RL = d', otherwise d'-1.
    """
    n, g = len(D), C.genus
    try:
        rl_code = codes.build_roth_lempel(C, D, m, 0)
    except codes.ConstructionError:
        return []
    plain = distances(codes.build_code(C, D, m))
    rl = distances(rl_code)
    out = []
    g1 = codes.build_punctured_basis_code(rl_code, "G1")
    d_g1 = weight_distribution((g1.field, g1.generator)).min_distance
    expect = n - m + 2 if d_g1 is not None and d_g1 >= n - m + 1 else n - m + 1
    out.append(_verdict("mdrl-G1", plain.d == n - m, rl.d == expect,
                        f"d(G1)={d_g1}, d_RL={rl.d}, expected {expect}"))
    if dual_part and D.fiber_complete:
        dp = m - (2 * g - 2)
        g2 = codes.build_punctured_basis_code(rl_code, "G2")
        d_g2 = weight_distribution((g2.field, g2.generator)).min_distance
        expect = dp if d_g2 == dp - 1 else dp - 1
        out.append(_verdict("mdrl-G2", plain.d_dual == dp, rl.d_dual == expect,
                            f"d(G2)={d_g2}, d'_RL={rl.d_dual}, expected {expect}"))
    if C.family == ELLIPTIC:
        mds = plain.d == n - plain.k + 1
        nmds = (singleton_defect(rl.n, rl.k, rl.d) == 1
                and singleton_defect(rl.n, rl.n - rl.k, rl.d_dual) == 1)
        out.append(_verdict("elliptic-rl-nmds", mds, nmds,
                            f"C_L MDS: {mds}; RL [{rl.n},{rl.k},{rl.d}], dual d={rl.d_dual}"))
    return out


def instance_checks(C: Curve, D: SupportDivisor, m: int, dual_part: bool = True) -> list[dict]:
    out = []
    if 2 * C.genus <= m <= len(D) - 1:
        out += extended_checks(C, D, m)
        out += roth_lempel_checks(C, D, m, dual_part)
    return out


def random_instance(rng: random.Random, max_n: int = 12, max_q: int = 19,
                    limit: int = 10 ** 6):
    """A random (curve, fiber-complete support, m) with enumeration cost <= limit."""
    while True:
        fam = rng.choice([LINE, ELLIPTIC])
        if fam == LINE:
            p = rng.choice([p for p in (3, 5, 7, 11, 13, 17, 19) if p <= max_q])
            F = make_field(p)
            C = projective_line(F)
            n = rng.randint(3, min(p, max_n))
            D = make_support(C, [(x,) for x in sorted(rng.sample(range(p), n))])
        else:
            p, e = rng.choice([(3, 2), (5, 1), (7, 1), (11, 1), (13, 1), (17, 1), (19, 1)])
            F = make_field(p, e)
            a, b = rng.randrange(F.q), rng.randrange(F.q)
            try:
                C = elliptic_curve(F, a, b)
            except Exception:
                continue
            pts = [pt for pt in C.affine_points() if pt[1] != 0]
            xs = sorted({x for x, _ in pts})
            if len(xs) < 2:
                continue
            t = rng.randint(2, min(len(xs), max_n // 2))
            chosen = set(rng.sample(xs, t))
            D = make_support(C, [pt for pt in pts if pt[0] in chosen])
        n = len(D)
        lo = 2 * C.genus
        hi = n - 1 if C.genus else n - 2      # keep the plain dual nonzero
        if lo > hi:
            continue
        m = rng.randint(lo, hi)
        k = m + 1 - C.genus
        if F.q ** min(k, n + 2 - k) > limit:
            continue
        return C, D, m


def hermitian_instances(t: int = 5, ms=range(6, 11)):
    H = hermitian_curve(3)
    D = make_support(H, support_fibers(H, t))
    return [(H, D, m) for m in ms]


__all__ = ["Distances", "distances", "extended_checks", "roth_lempel_checks",
           "instance_checks", "random_instance", "hermitian_instances"]
