import pytest
from hypothesis import given
from hypothesis import strategies as st

from hodge_limits.weyl import (WeylError, cartan_matrix, group_dimension, parse_weight,
                               rep_dimension, root_system)

from oracles import e6_dimension, hook_content_dim


def _a_shape(weight):
    """Partition of a GL weight given in fundamental-weight coordinates."""
    n = len(weight)
    return [sum(weight[j] for j in range(i, n)) for i in range(n)]


@given(st.integers(min_value=1, max_value=5),
       st.lists(st.integers(min_value=0, max_value=3), min_size=5, max_size=5))
def test_type_a_matches_hook_content(rank, coords):
    w = tuple(coords[:rank])
    shape = [r for r in _a_shape(w) if r]
    assert rep_dimension(f"A{rank}", w) == hook_content_dim(shape, rank + 1)


@pytest.mark.parametrize("coords", [
    (1, 0, 0, 0, 0, 0), (0, 0, 0, 0, 0, 1), (0, 1, 0, 0, 0, 0),
    (2, 0, 0, 0, 0, 0), (0, 0, 0, 0, 0, 3), (1, 0, 0, 0, 0, 1),
])
def test_e6_matches_independent_oracle(coords):
    assert rep_dimension("E6", coords) in (e6_dimension(coords), e6_dimension(coords[::-1]))


def test_known_values():
    assert rep_dimension("A2", parse_weight("6w1", 2)) == 28
    assert rep_dimension("A5", parse_weight("3w2", 5)) == 490
    assert rep_dimension("A2xA2", parse_weight("3w1+3w3", 4)) == 100
    assert group_dimension("E6") == 78
    assert group_dimension("A2xA2") == 16
    assert root_system("E6").rank == 6
    assert len(cartan_matrix("A3")) == 3


def test_e6_sections():
    # 3 times a minuscule weight of E6 has dimension 3003
    assert 3003 in (rep_dimension("E6", parse_weight("3w1", 6)),
                    rep_dimension("E6", parse_weight("3w6", 6)))


@pytest.mark.parametrize("group,text,rank", [
    ("A2", "3w3", 2), ("A2", "1,2,3", 2), ("A2", "w1+x", 2),
])
def test_bad_weights(group, text, rank):
    with pytest.raises(WeylError):
        rep_dimension(group, parse_weight(text, rank))


def test_non_dominant():
    with pytest.raises(WeylError):
        rep_dimension("A2", (-1, 0))


def test_unknown_group():
    with pytest.raises(WeylError):
        cartan_matrix("Q7")
