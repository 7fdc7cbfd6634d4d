from dataclasses import replace

import pytest
from hypothesis import assume, given, strategies as st

from grouppivot.block import SWAP_INCLUSION, block_group_inverse, check_hypotheses, pseudo_schur, theorem1_candidate, verify_group_inverse
from grouppivot.core import COMPOSITE_TOL, UsageError, mat_approx_eq, numerical_rank
from grouppivot.gen import (
    VIOLABLE,
    InfeasibleViolation,
    InstanceSpec,
    _theorem1_parts,
    random_index1,
    theorem1_instance,
    theorem1_violating_instance,
    theorem2_instance,
    theorem2_violating_instance,
)
from grouppivot.geninv import has_index_at_most_one


@st.composite
def specs(draw, lo=1, hi=7):
    p, q = draw(st.integers(lo, hi)), draw(st.integers(lo, hi))
    return InstanceSpec(p, q, draw(st.integers(1, p)), draw(st.integers(1, q)), draw(st.integers(0, 2**64 - 1)))


@pytest.mark.parametrize("kwargs", [
    dict(p=0, q=1, rank_a=1, rank_k=1),
    dict(p=2, q=2, rank_a=3, rank_k=1),
    dict(p=2, q=2, rank_a=1, rank_k=0),
    dict(p=2, q=2, rank_a=1, rank_k=1, seed=-1),
    dict(p=2, q=2, rank_a=1, rank_k=1, violate="incl_CD"),
])
def test_spec_validation(kwargs):
    with pytest.raises(UsageError):
        InstanceSpec(**kwargs)


def test_violate_none_tag_normalized():
    assert InstanceSpec(2, 2, 1, 1, violate="none").violate is None


def test_random_index1_full_rank_is_invertible():
    a = random_index1(5, 5, 3)
    assert numerical_rank(a) == 5 and has_index_at_most_one(a)


@given(st.integers(1, 12), st.data())
def test_random_index1_rank_and_index(n, data):
    r = data.draw(st.integers(1, n))
    a = random_index1(n, r, data.draw(st.integers(0, 2**64 - 1)))
    assert numerical_rank(a) == numerical_rank(a @ a) == r


def test_random_index1_deterministic():
    a, b = random_index1(7, 3, 42), random_index1(7, 3, 42)
    assert a.tobytes() == b.tobytes()
    assert random_index1(7, 3, 43).tobytes() != a.tobytes()


def test_random_index1_bad_rank():
    with pytest.raises(UsageError):
        random_index1(3, 4, 0)


def test_instances_bit_identical():
    spec = InstanceSpec(4, 3, 2, 2, seed=2**63 + 5)
    x, y = theorem1_instance(spec), theorem1_instance(spec)
    assert all(a.tobytes() == b.tobytes() for a, b in zip(x.blocks(), y.blocks()))


@given(specs())
def test_theorem1_instance_hypotheses(spec):
    m = theorem1_instance(spec)
    r = check_hypotheses(m)
    assert r.theorem1_holds
    _, _, k, _, _ = _theorem1_parts(spec, COMPOSITE_TOL)
    assert mat_approx_eq(pseudo_schur(m), k, COMPOSITE_TOL)
    assert verify_group_inverse(m.assemble(), block_group_inverse(m)).ok


@given(specs())
def test_theorem2_instance_hypotheses(spec):
    assert check_hypotheses(theorem2_instance(spec)).theorem2_holds


def test_violation_requires_tag_and_instance_rejects_tag():
    with pytest.raises(UsageError):
        theorem1_violating_instance(InstanceSpec(3, 3, 2, 2))
    with pytest.raises(UsageError):
        theorem1_instance(InstanceSpec(3, 3, 2, 2, violate="incl_BA"))


@pytest.mark.parametrize("name,kwargs", [
    ("incl_BA", dict(rank_a=3)),
    ("incl_CstarAstar", dict(rank_a=3)),
    ("incl_CK", dict(rank_k=3)),
    ("incl_BstarKstar", dict(rank_k=3)),
])
def test_infeasible_violations(name, kwargs):
    spec = InstanceSpec(**{**dict(p=3, q=3, rank_a=2, rank_k=2, violate=name), **kwargs})
    with pytest.raises(InfeasibleViolation):
        theorem1_violating_instance(spec)


@given(specs(lo=2), st.sampled_from(VIOLABLE))
def test_violating_instance_breaks_named_inclusion(spec, name):
    try:
        m = theorem1_violating_instance(replace(spec, violate=name))
    except InfeasibleViolation:
        assume(False)
    assert not getattr(check_hypotheses(m), name)
    assert not verify_group_inverse(m.assemble(), theorem1_candidate(m)).ok


@given(specs(lo=2), st.sampled_from(VIOLABLE))
def test_theorem2_violating_instance_breaks_mirrored_inclusion(spec, name):
    try:
        m = theorem2_violating_instance(replace(spec, violate=name))
    except InfeasibleViolation:
        assume(False)
    assert not getattr(check_hypotheses(m), SWAP_INCLUSION[name])
