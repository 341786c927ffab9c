"""Exact weight distributions, minimum distances, Singleton-defect
classification, covering radii and bound checks."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field as dc_field
from typing import Optional

import numpy as np

from . import linalg
from .gf import Field
from .kernels import get_backend

log = logging.getLogger(__name__)

ENUMERATION_LIMIT = 10 ** 8
DEFAULT_BITMAP_BUDGET = 1 << 30          # bytes, both bitmaps together
CHUNK_TABLE_LIMIT = 1024
PROBE_SAMPLES = 2048


class InstanceTooLarge(ValueError):
    pass


class CoverageIncomplete(RuntimeError):
    """Raised when the weight cap is reached before every coset is covered."""

    def __init__(self, coverage: "CosetCoverage"):
        self.coverage = coverage
        super().__init__(
            f"covering radius exceeds weight cap {coverage.weight_cap}: "
            f"{coverage.covered} of {coverage.num_syndromes} cosets covered")


# -- weight distributions -----------------------------------------------------

@dataclass(frozen=True)
class WeightDistribution:
    counts: tuple
    n: int
    k: int
    q: int

    @property
    def min_distance(self) -> Optional[int]:
        for i in range(1, self.n + 1):
            if self.counts[i]:
                return i
        return None

    def __getitem__(self, i):
        return self.counts[i]


def _generator_of(code_or_matrix):
    if hasattr(code_or_matrix, "generator"):
        return code_or_matrix.field, np.asarray(code_or_matrix.generator, dtype=np.int64)
    F, G = code_or_matrix
    return F, np.asarray(G, dtype=np.int64)


def enumerate_weights(F: Field, G: np.ndarray, backend=None, workers: int = 1,
                      limit: int = ENUMERATION_LIMIT) -> WeightDistribution:
    """Weight distribution of the row space of a full-rank G by direct enumeration."""
    k, n = G.shape
    if F.q ** k > limit:
        raise InstanceTooLarge(f"{F.q}^{k} codewords exceed the enumeration limit {limit}")
    if F.add_table is None:
        raise InstanceTooLarge(f"GF({F.q}) is too large for the enumeration kernels")
    be = get_backend(backend)
    counts = be.weight_distribution(G, F.add_table, F.mul_table, F.q, workers)
    return WeightDistribution(tuple(int(c) for c in counts), n, k, F.q)


def weight_distribution(code, backend=None, workers: int = 1,
                        limit: int = ENUMERATION_LIMIT) -> WeightDistribution:
    """Enumerate whichever of the code and its dual is smaller, then transform."""
    F, G = _generator_of(code)
    G = linalg.row_basis(F, G)
    k, n = G.shape
    if k <= n - k:
        return enumerate_weights(F, G, backend, workers, limit)
    H = linalg.nullspace(F, G)
    if F.q ** (n - k) > limit:
        raise InstanceTooLarge(
            f"{F.q}^{min(k, n - k)} words exceed the enumeration limit {limit}")
    return macwilliams(enumerate_weights(F, H, backend, workers, limit))


def krawtchouk(j: int, i: int, n: int, q: int) -> int:
    return sum((-1) ** s * (q - 1) ** (j - s) * math.comb(i, s) * math.comb(n - i, j - s)
               for s in range(j + 1))


def macwilliams(W: WeightDistribution) -> WeightDistribution:
    """Weight distribution of the dual code, in exact integers."""
    n, q = W.n, W.q
    size = q ** W.k
    if sum(W.counts) != size or W.counts[0] != 1:
        raise ValueError("not the weight distribution of a linear code")
    out = []
    for j in range(n + 1):
        total = sum(W.counts[i] * krawtchouk(j, i, n, q) for i in range(n + 1) if W.counts[i])
        b, rem = divmod(total, size)
        if rem:
            raise ValueError("MacWilliams transform produced a non-integer count")
        out.append(b)
    return WeightDistribution(tuple(out), n, n - W.k, q)


def min_distance(code, **kw) -> int:
    d = weight_distribution(code, **kw).min_distance
    if d is None:
        raise ValueError("the zero code has no minimum distance")
    return d


def dual_distribution(code, **kw) -> WeightDistribution:
    F, G = _generator_of(code)
    H = linalg.nullspace(F, linalg.row_basis(F, G))
    return weight_distribution((F, H), **kw)


# -- classification ------------------------------------------------------------

def singleton_defect(n: int, k: int, d: int) -> int:
    return n + 1 - k - d


def classify(n: int, k: int, d: int, d_dual: int) -> dict:
    s = singleton_defect(n, k, d)
    s_dual = singleton_defect(n, n - k, d_dual)
    if s == 0 and s_dual == 0:
        label = "MDS"
    elif s == s_dual == 1:
        label = "NMDS"
    elif s == s_dual:
        label = f"{s}-MDS"
    elif s == 1:
        label = "AMDS-only"
    else:
        label = "other"
    return {"defect": s, "defect_dual": s_dual, "class": label}


def is_mds(code, **kw) -> bool:
    F, G = _generator_of(code)
    k = linalg.rank(F, G)
    n = G.shape[1]
    return min_distance(code, **kw) == n - k + 1


# -- covering radius -------------------------------------------------------------

@dataclass(frozen=True)
class SyndromeLayout:
    p: int
    digits: int
    c: int
    P: int
    K: int
    T: np.ndarray
    PK: np.ndarray

    def split(self, s: int) -> list[int]:
        out = []
        for _ in range(self.K):
            out.append(s % self.P)
            s //= self.P
        return out


def syndrome_layout(F: Field, r: int) -> SyndromeLayout:
    """Chunked carry-free addition for syndromes with r*e base-p digits."""
    p = F.p
    digits = max(1, r * F.e)
    c = 1
    while c < digits and p ** (c + 1) <= CHUNK_TABLE_LIMIT:
        c += 1
    P = p ** c
    K = -(-digits // c)
    a = np.arange(P, dtype=np.int64)
    T = np.zeros((P, P), dtype=np.int64)
    pw = 1
    for _ in range(c):
        da = (a // pw) % p
        T += ((da[:, None] + da[None, :]) % p) * pw
        pw *= p
    PK = np.array([P ** k for k in range(K)], dtype=np.uint64)
    return SyndromeLayout(p, digits, c, P, K, T.astype(np.uint32).ravel(), PK)


def syndrome_index(F: Field, vec) -> int:
    s = 0
    for i, v in enumerate(vec):
        s += int(v) * F.q ** i
    return s


def syndrome_vector(F: Field, s: int, r: int) -> np.ndarray:
    out = np.zeros(r, dtype=np.int64)
    for i in range(r):
        out[i] = s % F.q
        s //= F.q
    return out


def column_syndromes(F: Field, H: np.ndarray, layout: SyndromeLayout) -> np.ndarray:
    """(n, q-1, K) chunked syndromes of v * H[:, j] for nonzero v."""
    r, n = H.shape
    out = np.zeros((n, F.q - 1, layout.K), dtype=np.uint32)
    for j in range(n):
        for v in range(1, F.q):
            col = F.mul(v, H[:, j])
            out[j, v - 1] = layout.split(syndrome_index(F, col))
    return out


@dataclass
class CosetCoverage:
    num_syndromes: int
    new_per_weight: list
    rho: Optional[int]
    witness: Optional[np.ndarray]
    witness_syndrome: Optional[int]
    weight_cap: int
    methods: list = dc_field(default_factory=list)

    @property
    def covered(self) -> int:
        return sum(self.new_per_weight)

    @property
    def complete(self) -> bool:
        return self.covered == self.num_syndromes

    def to_json(self) -> dict:
        return {
            "rho": self.rho,
            "num_syndromes": self.num_syndromes,
            "new_per_weight": list(self.new_per_weight),
            "witness": None if self.witness is None else [int(v) for v in self.witness],
            "weight_cap": self.weight_cap,
            "methods": list(self.methods),
        }


def bitmap_bytes(num_syndromes: int) -> int:
    return 2 * 8 * (-(-num_syndromes // 64))


def plan_level(n: int, q: int, w: int, uncovered: int, probe=None) -> str:
    """Direct enumeration of weight-w errors or a pull pass over uncovered cosets.

    ``probe`` returns the mean number of neighbours a pull inspects per
    uncovered syndrome (sampled); without it every neighbour is assumed
    to be inspected.
    """
    direct = math.comb(n, w) * (q - 1) ** w
    ncols = n * (q - 1)
    if uncovered * ncols <= direct:
        return "pull"
    if probe is None:
        return "direct"
    return "pull" if uncovered * (probe() + 1) <= direct else "direct"


def _probe_pull(covered: np.ndarray, flat_cols: np.ndarray, layout: SyndromeLayout,
                nsyn: int, seed: int) -> float:
    """Mean neighbour checks until a hit, over sampled uncovered syndromes."""
    rng = np.random.default_rng(seed)
    found = []
    need = PROBE_SAMPLES
    for _ in range(64):
        cand = rng.integers(0, nsyn, size=4 * need, dtype=np.uint64)
        bits = (covered[(cand >> np.uint64(6)).astype(np.int64)] >> (cand & np.uint64(63))) & np.uint64(1)
        found.extend(cand[bits == 0][:need - len(found)].tolist())
        if len(found) >= need:
            break
    if not found:
        return 0.0
    sample = np.array(found, dtype=np.uint64)
    rest = sample.copy()
    sc = np.empty((sample.size, layout.K), dtype=np.int64)
    for k in range(layout.K):
        sc[:, k] = (rest % np.uint64(layout.P)).astype(np.int64)
        rest //= np.uint64(layout.P)
    T = layout.T.astype(np.int64)
    t = np.zeros((sample.size, flat_cols.shape[0]), dtype=np.uint64)
    for k in range(layout.K):
        part = T[sc[:, k][:, None] * layout.P + flat_cols[:, k].astype(np.int64)[None, :]]
        t += part.astype(np.uint64) * layout.PK[k]
    hit = ((covered[(t >> np.uint64(6)).astype(np.int64)] >> (t & np.uint64(63))) & np.uint64(1)).astype(bool)
    first = np.where(hit.any(axis=1), hit.argmax(axis=1) + 1, hit.shape[1])
    return float(first.mean())


def _lowest_set_bit(bits: np.ndarray) -> int:
    nz = np.flatnonzero(bits)
    word = int(nz[0])
    v = int(bits[word])
    return word * 64 + ((v & -v).bit_length() - 1)


def covering_radius_from_parity(F: Field, H: np.ndarray, weight_cap: Optional[int] = None,
                                workers: int = 1, bitmap_budget: int = DEFAULT_BITMAP_BUDGET,
                                backend=None) -> CosetCoverage:
    """Exact covering radius of the code with parity-check matrix H.

    Levels w = 0, 1, ... are processed in order; level w marks every syndrome
    whose coset leader has weight exactly w.  The per-level counts are code
    invariants, so they do not depend on the method chosen for a level or on
    the worker count.  The witness is a preimage of the smallest syndrome
    index first covered at the terminal level.
    """
    H = linalg.row_basis(F, np.asarray(H, dtype=np.int64))
    r, n = H.shape
    q = F.q
    cap = r if weight_cap is None else int(weight_cap)
    nsyn = q ** r
    if r == 0:
        return CosetCoverage(1, [1], 0, np.zeros(n, dtype=np.int64), 0, cap, [])
    need = bitmap_bytes(nsyn)
    if need > bitmap_budget:
        raise InstanceTooLarge(
            f"{q}^{r} = {nsyn} cosets need {need} bytes of bitmap, budget is {bitmap_budget}")
    be = get_backend(backend)
    layout = syndrome_layout(F, r)
    cols = column_syndromes(F, H, layout)
    flat_cols = np.ascontiguousarray(cols.reshape(-1, layout.K))
    nwords = -(-nsyn // 64)
    covered = np.zeros(nwords, dtype=np.uint64)
    new = np.zeros(nwords, dtype=np.uint64)
    covered[0] = 1
    counts = [1]
    methods = ["init"]
    total = 1
    rho = 0 if nsyn == 1 else None
    witness_s = 0 if nsyn == 1 else None
    w = 0
    while total < nsyn and w < cap:
        w += 1
        method = plan_level(
            n, q, w, nsyn - total,
            lambda: _probe_pull(covered, flat_cols, layout, nsyn, seed=w))
        if method == "direct":
            new[:] = 0
            be.direct_level(new, cols, layout.T, layout.P, layout.PK, w, workers)
            np.bitwise_and(new, ~covered, out=new)
        else:
            be.pull_level(covered, new, flat_cols, layout.T, layout.P, layout.PK, nsyn, workers)
        c = int(be.popcount(new))
        np.bitwise_or(covered, new, out=covered)
        counts.append(c)
        methods.append(method)
        total += c
        log.debug("weight %d (%s): %d new, %d/%d covered", w, method, c, total, nsyn)
        if total == nsyn:
            rho = w
            witness_s = _lowest_set_bit(new)
    cov = CosetCoverage(nsyn, counts, rho, None, witness_s, cap, methods)
    if rho is None:
        raise CoverageIncomplete(cov)
    cov.witness = linalg.solve_syndrome(F, H, syndrome_vector(F, witness_s, r))
    return cov


def covering_radius(code, weight_cap: Optional[int] = None, **kw) -> CosetCoverage:
    F, G = _generator_of(code)
    H = linalg.nullspace(F, linalg.row_basis(F, G))
    return covering_radius_from_parity(F, H, weight_cap, **kw)


def dual_covering_radius(code, weight_cap: Optional[int] = None, **kw) -> CosetCoverage:
    """Covering radius of the dual: the primal generator is its parity-check matrix."""
    F, G = _generator_of(code)
    return covering_radius_from_parity(F, G, weight_cap, **kw)


def distance_to_code(F: Field, G: np.ndarray, v, limit: int = 10 ** 6) -> int:
    """Brute-force min over codewords of wt(v - c)."""
    G = linalg.row_basis(F, np.asarray(G, dtype=np.int64))
    k, n = G.shape
    if F.q ** k > limit:
        raise InstanceTooLarge("too many codewords for brute-force distance")
    v = np.asarray(v, dtype=np.int64)
    words = np.zeros((1, n), dtype=np.int64)
    for i in range(k):
        scaled = F.mul(np.arange(F.q)[:, None], G[i][None, :])
        words = F.add(words[None, :, :], scaled[:, None, :]).reshape(-1, n)
    diff = F.sub(words, v[None, :])
    return int(np.count_nonzero(diff, axis=1).min())


# -- reports and bounds ------------------------------------------------------------

@dataclass
class CodeReport:
    n: int
    k: int
    d: int
    d_dual: int
    defect: int
    defect_dual: int
    classification: str
    designed_distance: Optional[int] = None
    rho: Optional[int] = None
    rho_dual: Optional[int] = None
    bounds: list = dc_field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "n": self.n, "k": self.k, "d": self.d, "d_dual": self.d_dual,
            "designed_distance": self.designed_distance,
            "defect": self.defect, "defect_dual": self.defect_dual,
            "class": self.classification, "rho": self.rho, "rho_dual": self.rho_dual,
            "bounds": [dict(b) for b in self.bounds],
        }

    @property
    def all_bounds_pass(self) -> bool:
        return all(b["pass"] for b in self.bounds)


def _verdict(name: str, ok: bool, detail: str) -> dict:
    return {"name": name, "pass": bool(ok), "detail": detail}


def check_bounds(report: CodeReport, context: Optional[dict] = None) -> list[dict]:
    """Verdicts for every bound whose hypotheses the context satisfies.

    Context keys (all optional): ``variant``, ``support_size``, ``m``,
    ``genus``, ``family``, ``q``, ``point_count``, ``plain_mds`` (C_L at m is
    MDS), ``plain_mds_next`` (C_L at m+1 is MDS).
    """
    ctx = context or {}
    out = []
    n, k = report.n, report.k
    rho, rho_d = report.rho, report.rho_dual
    if rho is not None:
        out.append(_verdict("redundancy", rho <= n - k, f"rho={rho} <= n-k={n - k}"))
    if rho_d is not None:
        out.append(_verdict("redundancy-dual", rho_d <= k, f"rho_dual={rho_d} <= k={k}"))
    variant = ctx.get("variant")
    nD, m, g = ctx.get("support_size"), ctx.get("m"), ctx.get("genus")
    if variant == "plain" and m is not None and nD is not None:
        out.append(_verdict("designed-distance", report.d >= nD - m, f"d={report.d} >= n-m={nD - m}"))
    if variant == "extended" and None not in (nD, m, g):
        out.append(_verdict("extended-distance", report.d >= nD - m + 1,
                            f"d_ex={report.d} >= n-m+1={nD - m + 1}"))
        if rho is not None:
            lo, hi = nD - m - 1, nD - m + g
            out.append(_verdict("crag", lo <= rho <= hi, f"rho={rho} in [{lo},{hi}]"))
        if rho_d is not None:
            lo, hi = m - 2 * g, m - g + 1
            out.append(_verdict("crag-dual", lo <= rho_d <= hi, f"rho_dual={rho_d} in [{lo},{hi}]"))
        if ctx.get("family") == "elliptic":
            q, npts = ctx.get("q"), ctx.get("point_count")
            kk = m
            if q is not None and npts is not None and npts >= q + 3 and nD >= q + 2 and kk <= nD - 2:
                if rho is not None:
                    lo, hi = nD - kk - 1, nD - kk
                    out.append(_verdict("elliptic-conjecture-window", lo <= rho <= hi,
                                        f"rho={rho} in [{lo},{hi}] (assuming the MDS conjecture)"))
                if rho_d is not None:
                    lo, hi = kk - 2, kk - 1
                    out.append(_verdict("elliptic-conjecture-window-dual", lo <= rho_d <= hi,
                                        f"rho_dual={rho_d} in [{lo},{hi}] (assuming the MDS conjecture)"))
            if ctx.get("plain_mds_next") and rho is not None:
                lo, hi = nD - kk, nD - kk + 1
                out.append(_verdict("elliptic-next-mds-window", lo <= rho <= hi,
                                    f"rho={rho} in [{lo},{hi}] since C_L at m+1 is MDS"))
    if ctx.get("family") == "elliptic" and ctx.get("plain_mds") and None not in (nD, m):
        npts = ctx.get("point_count")
        # dimensions 1 and n-1 are MDS on any support, so the length bound
        # only concerns 2 <= k <= n-2
        if npts is not None and 2 <= m <= nD - 2:
            out.append(_verdict("mds-elliptic-length", nD <= npts / 2 + 3,
                                f"MDS elliptic code length n={nD} <= #E/2+3={npts / 2 + 3}"))
    return out


def build_report(code, rho: bool = False, rho_dual: bool = False, context: Optional[dict] = None,
                 workers: int = 1, weight_cap: Optional[int] = None,
                 bitmap_budget: int = DEFAULT_BITMAP_BUDGET, backend=None) -> CodeReport:
    F, G = _generator_of(code)
    G = linalg.row_basis(F, G)
    k, n = G.shape
    W = weight_distribution((F, G), backend=backend, workers=workers)
    Wd = macwilliams(W)
    d, dd = W.min_distance, Wd.min_distance
    cls = classify(n, k, d, dd)
    rep = CodeReport(n, k, d, dd, cls["defect"], cls["defect_dual"], cls["class"])
    ctx = dict(context or {})
    if ctx.get("variant") == "plain" and ctx.get("genus") is not None:
        rep.designed_distance = n - k - ctx["genus"] + 1
    if rho:
        rep.rho = covering_radius_from_parity(
            F, linalg.nullspace(F, G), weight_cap, workers, bitmap_budget, backend).rho
    if rho_dual:
        rep.rho_dual = covering_radius_from_parity(
            F, G, weight_cap, workers, bitmap_budget, backend).rho
    rep.bounds = check_bounds(rep, ctx)
    return rep
