import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hodge_limits.degeneration import (ClemensSchmidInstance, DegenerationError,
                                       SncCentralFiber, assemble_central_fiber,
                                       assemble_segre_central_fiber, check_e2,
                                       clemens_schmid_check, e1_to_e2, fiber_from_json,
                                       fiber_to_json, involution_pairing_model,
                                       projective_bundle_betti, quadric_betti,
                                       quadric_bundle_betti, quadric_table)
from hodge_limits.linalg import BilinearForm, Matrix


def test_quadric_betti():
    assert quadric_betti(2) == [1, 0, 2, 0, 1]          # P1 x P1
    assert quadric_betti(3) == [1, 0, 1, 0, 1, 0, 1]
    assert projective_bundle_betti([1, 0, 1], 1) == [1, 0, 2, 0, 1]
    # P2 x Q2: (1 + t^2 + t^4)(1 + 2t^2 + t^4)
    assert quadric_bundle_betti([1, 0, 1, 0, 1], 2) == [1, 0, 3, 0, 4, 0, 3, 0, 1]


def test_e2_from_matrix_and_rank():
    f = SncCentralFiber((("A", (1, 0, 1)), ("B", (1, 0, 1))), ("C", (1, 0, 1)),
                        {0: Matrix([[1, -1]]), 2: 1})
    page = e1_to_e2(f)
    assert page.ranks == {0: 1, 1: 0, 2: 1}
    assert page.e2[(0, 0)] == 1 and page.e2[(1, 0)] == 0
    assert check_e2(f).passed
    assert fiber_from_json(fiber_to_json(f)) == f


def test_bad_declared_rank():
    f = SncCentralFiber((("A", (1,)),), ("C", (1,)), {0: 2})
    with pytest.raises(DegenerationError):
        e1_to_e2(f)


def test_bad_matrix_shape():
    f = SncCentralFiber((("A", (1,)),), ("C", (1,)), {0: Matrix([[1, 1]])})
    with pytest.raises(DegenerationError):
        e1_to_e2(f)


def _instance(m, prim, central_low=None):
    """Consistent instance from primitive string counts ``prim[l]``."""
    limit = {}
    for l, p in prim.items():
        for j in range(-l, l + 1, 2):
            limit[m + j] = limit.get(m + j, 0) + p
    rank_N = sum(p * l for l, p in prim.items())
    dim = sum(limit.values())
    ker = {k: limit.get(k, 0) - limit.get(k - 2, 0) for k in range(m)}
    central = {k: v for k, v in ker.items() if v}
    central[m] = 3
    i_star = dim - rank_N
    cdim = sum(central.values())
    return ClemensSchmidInstance(m, m, central, {k: v for k, v in limit.items() if v},
                                 {"alpha": cdim - i_star, "i_star": i_star, "N": rank_N,
                                  "beta": dim - rank_N})


@given(st.integers(min_value=1, max_value=4),
       st.lists(st.integers(min_value=0, max_value=3), min_size=5, max_size=5))
def test_cs_consistent_instances_pass(m, counts):
    prim = {l: c for l, c in enumerate(counts[:m + 1]) if c}
    if not prim:
        prim = {0: 1}
    inst = _instance(m, prim)
    if inst.ranks["alpha"] < 0:
        return
    v = clemens_schmid_check(inst)
    assert v.passed, v.first_failure()
    top = max(prim)
    assert v.data["nilpotency_index"] == top


def test_cs_rank_mismatch_fails():
    inst = _instance(3, {0: 4, 1: 1})
    bad = ClemensSchmidInstance(inst.n, inst.m, inst.central, inst.limit,
                                {**inst.ranks, "N": 2})
    assert not clemens_schmid_check(bad).passed


def test_cs_biconditional_failure():
    inst = _instance(3, {0: 4, 1: 1})
    central = dict(inst.central)
    central[1] = 1
    bad = ClemensSchmidInstance(inst.n, inst.m, central, inst.limit, inst.ranks)
    v = clemens_schmid_check(bad)
    assert not v.passed


def test_cs_json_roundtrip():
    inst = _instance(5, {0: 2, 1: 1, 2: 1})
    assert ClemensSchmidInstance.from_json(inst.to_json()) == inst


def test_segre_assembly():
    a = assemble_segre_central_fiber()
    assert a.verdict.passed, a.verdict.first_failure()
    assert a.graded == {6: 1, 7: 168}
    assert a.cs.ranks == {"alpha": 0, "i_star": 169, "N": 1, "beta": 169}


def test_gr26_assembly():
    a = assemble_central_fiber("Gr26")
    assert a.verdict.passed
    assert a.graded == {12: 1, 13: 10920}


def test_op2_assembly_refused():
    with pytest.raises(DegenerationError):
        assemble_central_fiber("OP2")


@pytest.mark.parametrize("fd", [1, 3, 5, 7, 9, 11, 13, 15])
@pytest.mark.parametrize("s", [0, 1])
def test_quadric_table_shape(fd, s):
    rows = quadric_table(fd, s)
    assert [r.q for r in rows] == list(range(2 * fd + 1))
    z = [r.q for r in rows if r.label == "Z"]
    assert z == [fd + s] if (fd + s) % 2 == 0 else z == []
    assert all(r.label == "Z/2" for r in rows if r.q > fd + s and r.q % 2 == 0)


def test_quadric_table_rejects_even():
    with pytest.raises(DegenerationError):
        quadric_table(4, 0)
    with pytest.raises(DegenerationError):
        quadric_table(3, 2)


def _random_form(rng, k):
    while True:
        G = Matrix([[rng.randint(-3, 3) for _ in range(k)] for _ in range(k)])
        if G.rank() == k:
            return G


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_involution_sign(n):
    rng = random.Random(n)
    for k in range(1, 4):
        res = involution_pairing_model(_random_form(rng, k), n)
        assert res.verdict.passed
        assert res.sign == (-1) ** n


def test_involution_degenerate():
    with pytest.raises(DegenerationError):
        involution_pairing_model(BilinearForm(Matrix([[0, 0], [0, 0]]),
                                              BilinearForm.SYMMETRIC), 2)


def test_corrupted_alpha_fails_at_alpha_stage():
    inst = assemble_segre_central_fiber().cs
    bad = ClemensSchmidInstance(inst.n, inst.m, inst.central, inst.limit,
                                {**inst.ranks, "alpha": 3})
    v = clemens_schmid_check(bad)
    assert not v.passed
    assert "alpha" in v.first_failure().name
