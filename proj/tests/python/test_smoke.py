from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import neronphi as np


def test_delta():
    assert np.delta({2: [2, 1]}) == (4, 4)
    assert np.delta({}) == (0, 0)
    with pytest.raises(np.InvalidArgument):
        np.delta({4: [1]})


def test_linear_algebra():
    assert np.smith_form([[2, 0], [0, 3]]) == [1, 6]
    assert np.cokernel_l_part([[-2]], 2) == ([1], 0)
    assert np.cokernel_l_part([[0]], 2) == ([], 1)


def test_classification():
    assert np.rhs_bound({3: [2]}, 0) == Fraction(2)
    assert np.rhs_bound({2: [1]}, 0) == Fraction(1, 2)
    assert np.is_realizable({3: [2]}, 0, 0, 2)
    assert not np.is_realizable({3: [2]}, 0, 0, 1)
    plan = np.plan({2: [2, 1], 3: [1]}, 1, 0, 2)
    assert [b["kind"] for b in plan["blocks"]] == ["tate_product", "cyclic2_single", "unipotent_pad"]
    assert np.verify_plan(plan)[0]
    assert np.end_to_end_check(plan)[0]
    with pytest.raises(np.NotRealizable):
        np.plan({3: [2]}, 0, 0, 1)


def test_models():
    assert np.compute_phi(np.example("ex52", l=2, i=1))["phi"] == [2]
    rep = np.compute_phi(np.example("ex54", l=2, r=1, s=1))
    assert rep["phi"] == [3]
    assert rep["graded"] == [[1], [1], [1], []]
    assert np.compute_phi(np.example("ex51", ns=[2, 4]))["phi"] == [2, 1]
    assert all(np.check_thm33(np.example("ex53", l=3, i=2)))
    with pytest.raises(np.PrecisionError):
        np.compute_phi(np.example("ex54", l=2, r=1, s=1, precision=3))


def test_suites():
    assert "thm61" in np.suite_names()
    rep = np.run_suite("lemma45", seed=1, budget=5)
    assert rep["violations"] == 0
    with pytest.raises(np.InvalidArgument):
        np.run_suite("nope")


groups = st.dictionaries(
    st.sampled_from([2, 3, 5, 7]),
    st.lists(st.integers(1, 4), min_size=1, max_size=3).map(lambda v: sorted(v, reverse=True)),
    max_size=3,
)


@settings(max_examples=60, deadline=None)
@given(groups)
def test_delta_dominates_delta_prime(g):
    d, dp = np.delta(g)
    assert d >= dp >= 0


@settings(max_examples=60, deadline=None)
@given(groups, st.integers(0, 2), st.integers(0, 2), st.integers(0, 6))
def test_plan_iff_realizable(g, t, a, u):
    if np.is_realizable(g, t, a, u):
        plan = np.plan(g, t, a, u)
        assert np.verify_plan(plan)[0]
        assert np.is_realizable(g, t, a, u + 1)
    else:
        with pytest.raises(np.NotRealizable):
            np.plan(g, t, a, u)
