"""Acceptance criteria, one PASS/FAIL line each (printed in the terminal summary)."""

import random
import time

import pytest

from agext import analysis, codes, consistency, linalg, registry
from agext.curves import (elliptic_curve, hermitian_curve, make_support, projective_line,
                          support_fibers)
from agext.gf import make_field

from conftest import ACCEPTANCE_LINES


def report(num, ok, detail, seconds):
    line = f"{'PASS' if ok else 'FAIL'}  criterion {num:2d}: {detail} ({seconds:.2f} s)"
    print(line)
    ACCEPTANCE_LINES.append(line)
    return ok


class Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.t0


@pytest.fixture(scope="module")
def runs():
    """Every worked example with the heavy covering radii enabled, timed."""
    out = {}
    cfg = registry.RunConfig(slow=True)
    for eid in registry.REGISTRY:
        t0 = time.perf_counter()
        res = registry.run_example(eid, cfg)
        out[eid] = (res, time.perf_counter() - t0)
    return out


def _get(outcomes, check):
    [o] = [o for o in outcomes if o.check == check]
    return o


def test_c01_ex19_mds(runs):
    res, secs = runs["EX-19-MULTIPLES"]
    plain = [_get(res, f"plain m={m} MDS") for m in range(1, 6)]
    ext = [_get(res, f"extended m={m} MDS") for m in range(2, 6)]
    ok = all(o.passed and o.computed is True for o in plain + ext) and secs < 1
    assert report(1, ok, "EX-19-MULTIPLES plain MDS m=1..5, extended MDS m=2..5", secs)


def test_c02_ex9_full_parameters(runs):
    res, _ = runs["EX-9-FULL"]
    with Timer() as t:
        E = elliptic_curve(make_field(3, 2), 1, 0)
        from agext.curves import support_all_affine
        code = codes.build_extended(E, make_support(E, support_all_affine(E)), 9)
        # second opinion from the pure-Python kernels on the other side
        W = analysis.weight_distribution(code, backend="python")
        Wd = analysis.macwilliams(W)
    got = [_get(res, c).computed for c in ("[n,k,d]", "dual [n,k,d]", "class")]
    ok = (got == [[16, 9, 7], [16, 7, 9], "NMDS"]
          and (W.min_distance, Wd.min_distance) == (7, 9)
          and analysis.singleton_defect(16, 9, 7) == analysis.singleton_defect(16, 7, 9) == 1
          and t.seconds < 30)
    assert report(2, ok, f"EX-9-FULL {got[0]} dual {got[1]} {got[2]}", t.seconds)


def test_c03_ex9_full_rho(runs):
    o = _get(runs["EX-9-FULL"][0], "rho")
    ok = o.passed and o.computed == 5 and o.seconds <= 600
    assert report(3, ok, f"EX-9-FULL rho([16,9]) = {o.computed}", o.seconds)


def test_c04_ex9_full_rho_dual(runs):
    o = _get(runs["EX-9-FULL"][0], "rho dual")
    ok = not o.skipped and o.passed and o.computed == 7 and o.seconds <= 3600
    assert report(4, ok, f"EX-9-FULL rho([16,7]) = {o.computed}, one worker", o.seconds)


def test_c05_ex9_torsion_free(runs):
    res, _ = runs["EX-9-TORSIONFREE"]
    rho, rd = _get(res, "rho"), _get(res, "rho dual")
    par, dpar = _get(res, "[n,k,d]"), _get(res, "dual [n,k,d]")
    ok = (par.computed == [13, 9, 4] and dpar.computed == [13, 4, 9] and rho.computed == 3
          and rd.computed == 8 and rho.seconds < 60 and rd.seconds <= 3600)
    assert report(5, ok, f"EX-9-TORSIONFREE {par.computed} rho={rho.computed}, "
                         f"dual {dpar.computed} rho={rd.computed}", rho.seconds + rd.seconds)


def test_c06_ex9_eight_points(runs):
    res, secs = runs["EX-9-EIGHTPOINTS"]
    mds = all(_get(res, f"plain k={k} MDS").computed is True for k in (1, 3, 5, 7))
    rho = [_get(res, f"extended k={k} rho").computed for k in (2, 4, 6)]
    rd = [_get(res, f"extended k={k} rho dual").computed for k in (2, 4, 6)]
    ok = mds and rho == [7, 4, 2] and rd == [2, 3, 5] and secs < 60
    assert report(6, ok, f"EX-9-EIGHTPOINTS plain MDS k odd: {mds}, rho {rho}, rho dual {rd}",
                  secs)


# -- randomized fiber-complete instances ------------------------------------------------

def _line(rng, q):
    F = make_field(*{19: (19, 1), 25: (5, 2)}[q])
    L = projective_line(F)
    n = rng.randint(3, 12)
    D = make_support(L, [(x,) for x in rng.sample(range(q), n)])
    return L, D, rng.randint(1, n - 1)


def _elliptic(rng, q):
    F = make_field(*{9: (3, 2), 19: (19, 1)}[q])
    while True:
        try:
            E = elliptic_curve(F, rng.randrange(q), rng.randrange(q))
        except Exception:
            continue
        pts = [p for p in E.affine_points() if p[1] != 0]
        xs = sorted({x for x, _ in pts})
        if len(xs) >= 2:
            break
    chosen = set(rng.sample(xs, rng.randint(2, min(len(xs), 6))))
    D = make_support(E, [p for p in pts if p[0] in chosen])
    return E, D, rng.randint(2, len(D) - 1)


def _hermitian(rng):
    H = hermitian_curve(3)
    D = make_support(H, support_fibers(H, rng.randint(3, 9)))
    return H, D, rng.randint(6, len(D) - 1)


FAMILIES = [("line q=19", lambda r: _line(r, 19), 1), ("line q=25", lambda r: _line(r, 25), 1),
            ("elliptic q=9", lambda r: _elliptic(r, 9), 2),
            ("elliptic q=19", lambda r: _elliptic(r, 19), 2),
            ("hermitian q0=3", _hermitian, 1)]


def test_c07_lambda_closed_forms():
    rng = random.Random(7)
    bad = []
    with Timer() as t:
        for name, gen, lam in FAMILIES:
            for _ in range(12):
                C, D, m = gen(rng)
                assert D.fiber_complete
                got = codes.functional_dual_extended(codes.build_extended(C, D, m)).lam
                if got != lam:
                    bad.append((name, m, got))
    ok = not bad and t.seconds < 10
    assert report(7, ok, f"lambda = 1, 2, 1 on 12 instances per family; mismatches {bad}",
                  t.seconds)


def _duality_ok(code):
    F = code.field
    N = codes.nullspace_dual(code)
    if not code.support.fiber_complete:
        return codes.is_orthogonal(F, N, code.generator), "nullspace"
    dual = codes.functional_dual(code)
    ok = (not linalg.mat_mul(F, dual.generator, code.generator.T).any()
          and linalg.same_row_space(F, dual.generator, N))
    return ok, "functional"


def test_c08_duality_suite():
    rng = random.Random(8)
    instances = []
    E9 = elliptic_curve(make_field(3, 2), 1, 0)
    from agext.curves import support_torsion_free_pairs, support_all_affine, support_multiples
    E19 = elliptic_curve(make_field(19), 18, 4)
    D19 = make_support(E19, support_multiples(E19, (0, 2), 6))
    instances += [codes.build_extended(E19, D19, m) for m in range(2, 6)]
    instances.append(codes.build_extended(E9, make_support(E9, support_all_affine(E9)), 9))
    instances.append(codes.build_extended(E9, make_support(E9, support_torsion_free_pairs(E9)), 9))
    E8, pts = registry.eight_points()
    instances += [codes.build_extended(E8, make_support(E8, pts), k) for k in (2, 4, 6)]
    H = hermitian_curve(3)
    DH = make_support(H, support_fibers(H, 5))
    instances += [codes.build_extended(H, DH, m) for m in range(6, 11)]
    for _, gen, _ in FAMILIES:
        for _ in range(6):
            C, D, m = gen(rng)
            instances.append(codes.build_code(C, D, m))
            instances.append(codes.build_extended(C, D, max(m, 1)))
            if m >= 2 * C.genus and C.is_nongap(m - 1) and m - C.genus + 1 >= 2:
                instances.append(codes.build_roth_lempel(C, D, m, rng.randrange(C.field.q)))
    with Timer() as t:
        results = [_duality_ok(c) for c in instances]
    fails = sum(1 for ok, _ in results if not ok)
    nfun = sum(1 for _, how in results if how == "functional")
    ok = fails == 0 and t.seconds < 30
    assert report(8, ok, f"{len(instances)} instances ({nfun} functional, "
                         f"{len(instances) - nfun} support not fiber-complete: nullspace only), "
                         f"{fails} failures", t.seconds)


@pytest.mark.xfail(strict=True, reason="brute force finds counterexamples to the mdrl G2 rule "
                   "(and, on other instances, to elliptic RL-NMDS); see the decisions ledger")
def test_c09_consistency_suite():
    rng = random.Random(9)
    cases = [consistency.random_instance(rng, max_n=12, max_q=19, limit=2 * 10 ** 5)
             for _ in range(40)]
    failures, applied = [], 0
    with Timer() as t:
        for C, D, m in cases:
            for v in consistency.instance_checks(C, D, m):
                applied += v["applies"]
                if not v["pass"]:
                    failures.append((v["name"], C.field.q, len(D), m, v["detail"]))
    names = sorted({f[0] for f in failures})
    for f in failures[:6]:
        print("   counterexample:", f)
    ok = not failures and t.seconds < 300
    report(9, ok, f"{len(cases)} random instances, {applied} applicable checks, "
                  f"{len(failures)} counterexamples {names}", t.seconds)
    assert ok


def test_c09_parts_that_hold():
    rng = random.Random(9)
    holding = {"ext-distance-lower", "mdex-primal", "mdex-dual", "g-mds-preserved",
               "extended-mds", "mdrl-G1"}
    bad = []
    for _ in range(40):
        C, D, m = consistency.random_instance(rng, max_n=12, max_q=19, limit=2 * 10 ** 5)
        bad += [v for v in consistency.instance_checks(C, D, m)
                if v["name"] in holding and not v["pass"]]
    assert not bad


def test_c10_bound_suite(runs):
    rng = random.Random(10)
    with Timer() as t:
        verdicts = [o for res, _ in runs.values() for o in res if " bound " in o.check]
        measured = 0
        mds_long = []
        for _ in range(30):
            C, D, m = consistency.random_instance(rng, max_n=10, max_q=13, limit=10 ** 5)
            code = codes.build_extended(C, D, m)
            F = code.field
            if F.q ** (code.n - code.k) > 10 ** 6 or F.q ** code.k > 10 ** 6:
                continue
            rep = analysis.build_report(code, rho=True, rho_dual=True, context={
                "variant": "extended", "support_size": len(D), "m": m, "genus": C.genus})
            measured += 1
            verdicts += [registry.Outcome("random", b["name"], True, b["pass"], "property",
                                          passed=b["pass"]) for b in rep.bounds]
        # MDS elliptic plain codes of dimension 2..n-2 stay within #E/2 + 3
        for _ in range(40):
            C, D, m = consistency.random_instance(rng, max_n=12, max_q=19, limit=10 ** 5)
            if C.genus != 1 or not 2 <= m <= len(D) - 2:
                continue
            plain = codes.build_code(C, D, m)
            W = analysis.weight_distribution(plain)
            if W.min_distance == plain.n - plain.k + 1 and len(D) > C.point_count() / 2 + 3:
                mds_long.append((C.field.q, C.a, C.b, len(D), m))
    failed = [o.check for o in verdicts if not o.passed]
    ok = not failed and not mds_long
    assert report(10, ok, f"{len(verdicts)} bound verdicts ({measured} random (rho, rho dual) "
                          f"pairs), failures {failed}, long MDS elliptic codes {mds_long}",
                  t.seconds)


def test_c11_hermitian(runs):
    res, secs = runs["EX-HERM-3"]
    checks = [o for o in res if o.check.startswith("m=") and not o.skipped
              and ("defect" in o.check or "d_ex" in o.check or "orthogonal" in o.check)]
    ok = len(checks) == 5 * 4 and all(o.passed for o in checks) and secs < 120
    assert report(11, ok, f"EX-HERM-3 m=6..10: {len(checks)} defect, distance and "
                          f"orthogonality checks", secs)
