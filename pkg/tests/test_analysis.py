import itertools
import math

import numpy as np
import pytest

from agext import linalg
from agext.analysis import (CoverageIncomplete, InstanceTooLarge, CodeReport, build_report,
                            check_bounds, classify, covering_radius, covering_radius_from_parity,
                            distance_to_code, dual_covering_radius, krawtchouk, macwilliams,
                            plan_level, singleton_defect, syndrome_index, syndrome_vector,
                            weight_distribution, enumerate_weights, WeightDistribution)
from agext.gf import make_field


def _codewords(F, G):
    k, n = G.shape
    for a in itertools.product(range(F.q), repeat=k):
        w = np.zeros(n, dtype=np.int64)
        for ai, row in zip(a, G):
            w = F.add(w, F.mul(ai, row))
        yield w


def naive_weights(F, G):
    counts = [0] * (G.shape[1] + 1)
    for w in _codewords(F, G):
        counts[int(np.count_nonzero(w))] += 1
    return counts


def naive_covering_radius(F, G):
    words = np.array(list(_codewords(F, G)))
    n = G.shape[1]
    worst = 0
    for v in itertools.product(range(F.q), repeat=n):
        diff = F.sub(words, np.array(v)[None, :])
        worst = max(worst, int(np.count_nonzero(diff, axis=1).min()))
    return worst


def random_full_rank(F, k, n, rng):
    while True:
        G = rng.integers(0, F.q, size=(k, n))
        if linalg.rank(F, G) == k:
            return G


SMALL = [(3, 1, 3, 6), (3, 1, 2, 5), (7, 1, 1, 2), (7, 1, 2, 4), (5, 1, 2, 4), (3, 2, 1, 3)]


@pytest.mark.parametrize("p,e,k,n", SMALL)
def test_weights_against_naive(p, e, k, n):
    F = make_field(p, e)
    rng = np.random.default_rng(p * 100 + n)
    for _ in range(3):
        G = random_full_rank(F, k, n, rng)
        assert list(weight_distribution((F, G)).counts) == naive_weights(F, G)


def test_dual_side_enumeration():
    F = make_field(3)
    rng = np.random.default_rng(7)
    G = random_full_rank(F, 5, 6, rng)
    W = weight_distribution((F, G))
    assert list(W.counts) == naive_weights(F, G)
    H = linalg.nullspace(F, G)
    assert list(macwilliams(W).counts) == naive_weights(F, H)


def test_macwilliams_involution_and_extremes():
    F = make_field(5)
    rng = np.random.default_rng(3)
    G = random_full_rank(F, 2, 5, rng)
    W = enumerate_weights(F, G)
    assert macwilliams(macwilliams(W)) == W
    zero = WeightDistribution((1, 0, 0, 0), 3, 0, 5)
    full = macwilliams(zero)
    assert list(full.counts) == [math.comb(3, i) * 4 ** i for i in range(4)]
    assert macwilliams(full) == zero
    with pytest.raises(ValueError):
        macwilliams(WeightDistribution((1, 1, 0, 0), 3, 1, 5))


def test_krawtchouk_orthogonality():
    n, q = 5, 3
    for i in range(n + 1):
        for j in range(n + 1):
            s = sum(krawtchouk(l, i, n, q) * krawtchouk(j, l, n, q) for l in range(n + 1))
            assert s == (q ** n if i == j else 0)


def test_enumeration_limit():
    F = make_field(19)
    G = np.eye(6, 12, dtype=np.int64)
    with pytest.raises(InstanceTooLarge):
        weight_distribution((F, G), limit=19 ** 5)


@pytest.mark.parametrize("n,k,d,dd,label", [
    (16, 9, 7, 9, "NMDS"), (13, 9, 4, 9, "NMDS"), (7, 3, 5, 4, "MDS"),
    (10, 4, 5, 3, "2-MDS"), (10, 4, 6, 5, "AMDS-only"), (10, 4, 4, 4, "other")])
def test_classify(n, k, d, dd, label):
    c = classify(n, k, d, dd)
    assert c["class"] == label
    assert c["defect"] == singleton_defect(n, k, d)


@pytest.mark.parametrize("p,e,k,n", [(3, 1, 2, 6), (3, 1, 2, 5), (3, 1, 3, 5), (7, 1, 1, 3),
                                     (5, 1, 2, 4), (3, 1, 1, 7)])
def test_covering_radius_bruteforce(p, e, k, n):
    F = make_field(p, e)
    rng = np.random.default_rng(p + 10 * k + n)
    for _ in range(2):
        G = random_full_rank(F, k, n, rng)
        cov = covering_radius((F, G))
        assert cov.rho == naive_covering_radius(F, G)
        assert cov.complete and cov.new_per_weight[0] == 1
        assert int(np.count_nonzero(cov.witness)) == cov.rho
        assert distance_to_code(F, G, cov.witness) == cov.rho
        H = linalg.row_basis(F, linalg.nullspace(F, G))
        s = linalg.mat_mul(F, H, cov.witness.reshape(-1, 1)).ravel()
        assert syndrome_index(F, s) == cov.witness_syndrome


def test_leader_counts_are_binomial_below_half_distance(e9):
    # below d/2 coset leaders are unique, so level w covers C(n,w)(q-1)^w
    from agext.curves import make_support, support_all_affine
    from agext.codes import build_extended
    E = e9
    D = make_support(E, support_all_affine(E))
    cov = covering_radius(build_extended(E, D, 9))
    for w in range(4):
        assert cov.new_per_weight[w] == math.comb(16, w) * 8 ** w
    assert cov.rho == 5


def test_dual_covering_radius_monotone_in_subcode():
    F = make_field(3)
    rng = np.random.default_rng(11)
    G = random_full_rank(F, 3, 6, rng)
    big = covering_radius((F, G)).rho
    small = covering_radius((F, G[:2])).rho
    assert small >= big
    assert dual_covering_radius((F, G)).rho == covering_radius((F, linalg.nullspace(F, G))).rho


def test_methods_do_not_change_counts(monkeypatch):
    from agext import analysis
    F = make_field(3)
    rng = np.random.default_rng(5)
    H = random_full_rank(F, 5, 9, rng)
    base = covering_radius_from_parity(F, H)
    for forced in ("direct", "pull"):
        monkeypatch.setattr(analysis, "plan_level", lambda *a, **k: forced)
        cov = covering_radius_from_parity(F, H)
        assert cov.new_per_weight == base.new_per_weight
        assert cov.witness_syndrome == base.witness_syndrome
        assert set(cov.methods[1:]) == {forced}


def test_weight_cap_and_budget():
    F = make_field(3)
    G = np.array([[1, 1, 1, 1, 1, 1]])
    with pytest.raises(CoverageIncomplete) as exc:
        covering_radius((F, G), weight_cap=2)
    cov = exc.value.coverage
    assert not cov.complete and cov.rho is None and len(cov.new_per_weight) == 3
    with pytest.raises(InstanceTooLarge):
        covering_radius((F, G), bitmap_budget=16)


def test_trivial_parity():
    F = make_field(5)
    cov = covering_radius((F, np.eye(3, dtype=np.int64)))
    assert cov.rho == 0 and cov.num_syndromes == 1


def test_syndrome_roundtrip():
    F = make_field(3, 2)
    for s in (0, 1, 80, 6560):
        assert syndrome_index(F, syndrome_vector(F, s, 4)) == s


def test_plan_level():
    assert plan_level(16, 9, 1, 9 ** 7) == "direct"
    assert plan_level(16, 9, 7, 10) == "pull"
    assert plan_level(16, 9, 7, 10 ** 6, probe=lambda: 3.0) == "pull"
    assert plan_level(16, 9, 2, 10 ** 6, probe=lambda: 100.0) == "direct"


def _report(n, k, d, dd, rho=None, rho_dual=None):
    c = classify(n, k, d, dd)
    return CodeReport(n, k, d, dd, c["defect"], c["defect_dual"], c["class"],
                      rho=rho, rho_dual=rho_dual)


def test_check_bounds_examples():
    ctx = {"variant": "extended", "support_size": 15, "m": 9, "genus": 1, "family": "elliptic",
           "q": 9, "point_count": 16, "plain_mds": False}
    got = {b["name"]: b["pass"] for b in check_bounds(_report(16, 9, 7, 9, 5, 7), ctx)}
    assert got == {"redundancy": True, "redundancy-dual": True, "extended-distance": True,
                   "crag": True, "crag-dual": True, "elliptic-conjecture-window": True,
                   "elliptic-conjecture-window-dual": True}
    bad = {b["name"]: b["pass"] for b in check_bounds(_report(16, 9, 7, 9, 4, 7), ctx)}
    assert bad["redundancy"] and not bad["crag"]


def test_mds_elliptic_length_bound():
    ctx = {"family": "elliptic", "plain_mds": True, "support_size": 6, "m": 4, "point_count": 23}
    got = check_bounds(_report(6, 4, 3, 5), ctx)
    assert [b["name"] for b in got] == ["mds-elliptic-length"] and got[0]["pass"]
    ctx.update(support_size=16, m=8, point_count=24)
    assert not check_bounds(_report(16, 8, 9, 9), ctx)[0]["pass"]
    ctx.update(m=15)
    assert check_bounds(_report(16, 15, 2, 16), ctx) == []


def test_build_report_q9(e9):
    from agext.curves import make_support, support_torsion_free_pairs
    from agext.codes import build_extended
    E = e9
    D = make_support(E, support_torsion_free_pairs(E))
    rep = build_report(build_extended(E, D, 9), rho=True,
                       context={"variant": "extended", "support_size": 12, "m": 9, "genus": 1})
    assert (rep.n, rep.k, rep.d, rep.d_dual, rep.classification) == (13, 9, 4, 9, "NMDS")
    assert rep.rho == 3 and rep.all_bounds_pass
    js = rep.to_json()
    assert js["class"] == "NMDS" and js["rho_dual"] is None
