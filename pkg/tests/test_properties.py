"""Randomized invariants (hypothesis)."""

import numpy as np
from hypothesis import given, settings, strategies as st

from agext import artifact, codes, linalg
from agext.analysis import enumerate_weights, macwilliams, weight_distribution
from agext.curves import make_support, projective_line
from agext.gf import make_field

FIELDS = [make_field(3), make_field(5), make_field(3, 2), make_field(7), make_field(5, 2),
          make_field(19)]
fields = st.sampled_from(FIELDS)


@st.composite
def field_and_elements(draw, count=3):
    F = draw(fields)
    return F, [draw(st.integers(0, F.q - 1)) for _ in range(count)]


@given(field_and_elements())
def test_field_axioms(fe):
    F, (a, b, c) = fe
    assert F.add(a, b) == F.add(b, a) and F.mul(a, b) == F.mul(b, a)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
    assert F.add(a, F.neg(a)) == 0
    if a:
        assert F.mul(a, F.inv(a)) == 1
        assert F.pow(a, F.q - 1) == 1
    assert F.pow(a, F.q) == a


@st.composite
def matrices(draw, max_rows=5, max_cols=7):
    F = draw(fields)
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    vals = draw(st.lists(st.integers(0, F.q - 1), min_size=r * c, max_size=r * c))
    return F, np.array(vals, dtype=np.int64).reshape(r, c)


@given(matrices())
def test_rref_and_nullspace(fm):
    F, M = fm
    R, rank, pivots = linalg.rref(F, M)
    assert rank == len(pivots) and linalg.same_row_space(F, R[:rank], M)
    for i, pc in enumerate(pivots):
        assert R[i, pc] == 1 and not np.delete(R[:, pc], i).any()
    N = linalg.nullspace(F, M)
    assert N.shape == (M.shape[1] - rank, M.shape[1])
    assert not linalg.mat_mul(F, M, N.T).any()
    assert linalg.rank(F, N) == N.shape[0]


@settings(max_examples=40, deadline=None)
@given(matrices(max_rows=3, max_cols=6))
def test_macwilliams_matches_enumerated_dual(fm):
    F, M = fm
    G = linalg.row_basis(F, M)
    if G.shape[0] == 0 or F.q ** (G.shape[1] - G.shape[0]) > 10 ** 5:
        return
    W = enumerate_weights(F, G)
    assert macwilliams(macwilliams(W)) == W
    H = linalg.nullspace(F, G)
    if H.shape[0]:
        assert macwilliams(W) == enumerate_weights(F, H)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([7, 11, 13, 19]), st.data())
def test_line_codes_are_mds_and_roundtrip(p, data):
    F = make_field(p)
    L = projective_line(F)
    xs = data.draw(st.lists(st.integers(0, p - 1), min_size=3, max_size=min(p, 8), unique=True))
    n = len(xs)
    m = data.draw(st.integers(1, n - 2))
    variant = data.draw(st.sampled_from(codes.VARIANTS))
    D = make_support(L, [(x,) for x in xs])
    delta = data.draw(st.integers(0, p - 1)) if variant == codes.ROTH_LEMPEL else None
    code = codes.build(L, D, m, variant, delta)
    back = artifact.code_from_json(artifact.code_to_json(code))
    assert np.array_equal(back.generator, code.generator) and back.delta == code.delta
    if variant == codes.PLAIN:
        assert weight_distribution(code).min_distance == n - m
    dual = codes.functional_dual(code)
    assert codes.verify_dual(dual)
