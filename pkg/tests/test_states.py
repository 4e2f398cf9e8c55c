import numpy as np
import pytest

from singshock.states import (
    DeltaState,
    Flux,
    State,
    eigenvalues,
    flux,
    jump,
    lambda1,
    lambda2,
)


def test_flux_components():
    f = flux(State(2.0, 3.0))
    assert f == Flux(1.0, 8.0 / 3.0 - 2.0)
    assert flux(State(0.0, 0.0)) == Flux(0.0, 0.0)


def test_eigenvalues_constant_gap():
    for u in (-4.0, -1.0, 0.0, 2.5):
        l1, l2 = eigenvalues(State(u, 1.0))
        assert l1 == u - 1.0
        assert l2 == u + 1.0
        assert l2 - l1 == 2.0


def test_lambda_accessors_match_eigenvalues():
    s = State(-3.0, 7.0)
    assert (lambda1(s), lambda2(s)) == eigenvalues(s)


def test_jump_is_right_minus_left():
    assert jump(1.0, 4.0) == 3.0
    assert jump(4.0, 1.0) == -3.0


def test_state_rejects_non_finite():
    with pytest.raises(ValueError):
        State(float("nan"), 0.0)
    with pytest.raises(ValueError):
        State(0.0, float("inf"))


def test_state_close_to():
    a = State(1.0, 2.0)
    assert a.close_to(State(1.0 + 1e-12, 2.0))
    assert not a.close_to(State(1.1, 2.0))


def test_delta_state_strength_nonnegative():
    DeltaState(State(0.0, 0.0), 0.0)
    DeltaState(State(0.0, 0.0), 2.5)
    with pytest.raises(ValueError):
        DeltaState(State(0.0, 0.0), -0.1)


def test_eigenvalues_independent_of_v(rng):
    us = rng.uniform(-5, 5, size=50)
    vs = rng.uniform(-10, 10, size=50)
    for u, v in zip(us, vs):
        l1, l2 = eigenvalues(State(u, v))
        np.testing.assert_allclose([l1, l2], [u - 1.0, u + 1.0], rtol=0, atol=0)
