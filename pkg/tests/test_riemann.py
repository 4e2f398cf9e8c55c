import math

import numpy as np
import pytest

from singshock.curves import SQRT12, hugoniot_v, rarefaction_v
from singshock.errors import NoClassicalSolution, OutsideSDSL
from singshock.riemann import (
    Rarefaction,
    Shock,
    SingularShock,
    WaveFan,
    rarefaction_then_singular,
    singular_then_rarefaction,
    solve,
    solve_classical,
    solve_with_delta,
)
from singshock.states import DeltaState, State, flux, lambda1, lambda2

L = State(0.0, 0.0)
SQRT18 = math.sqrt(18.0)


def _rh_residual(w: Shock) -> float:
    fl, fr = flux(w.left), flux(w.right)
    r1 = w.speed * (w.right.u - w.left.u) - (fr.f1 - fl.f1)
    r2 = w.speed * (w.right.v - w.left.v) - (fr.f2 - fl.f2)
    return max(abs(r1), abs(r2))


def test_single_singular_in_q7():
    wf = solve(L, State(-4.0, 6.0))
    assert len(wf.waves) == 1
    (ss,) = wf.waves
    assert isinstance(ss, SingularShock)
    assert ss.speed == -2.5
    assert ss.zeta0 == 0.0
    wf.validate()


def test_composite_rarefaction_then_singular():
    """Above D: 1-rarefaction to an intermediate state, then a singular
    shock moving at lambda1 of that state."""
    wf = solve(L, State(-4.0, 13.0))
    assert [type(w).__name__ for w in wf.waves] == ["Rarefaction",
                                                    "SingularShock"]
    fan, ss = wf.waves
    u_m = -4.0 + SQRT18
    np.testing.assert_allclose(fan.right.u, u_m, rtol=0, atol=1e-9)
    np.testing.assert_allclose(ss.speed, u_m - 1.0, rtol=0, atol=1e-9)
    np.testing.assert_allclose(ss.speed, lambda1(fan.right),
                               rtol=0, atol=1e-12)
    wf.validate()


def test_composite_singular_then_rarefaction():
    """Below E: singular shock at lambda2 of the middle state, then R2."""
    wf = solve(L, State(-4.0, 3.0))
    assert [type(w).__name__ for w in wf.waves] == ["SingularShock",
                                                    "Rarefaction"]
    ss, fan = wf.waves
    u_m = -SQRT18
    np.testing.assert_allclose(ss.right.u, u_m, rtol=0, atol=1e-9)
    np.testing.assert_allclose(ss.speed, u_m + 1.0, rtol=0, atol=1e-9)
    np.testing.assert_allclose(ss.speed, lambda2(ss.right),
                               rtol=0, atol=1e-12)
    wf.validate()


def test_classical_pure_rarefactions():
    wf = solve(L, State(2.0, 4.0))
    assert len(wf.waves) == 1
    assert isinstance(wf.waves[0], Rarefaction)
    assert wf.waves[0].family == 1
    wf.validate()


def test_classical_single_shock_on_hugoniot():
    u = -2.0
    v = hugoniot_v(L, u, "plus")
    wf = solve(L, State(u, v))
    assert len(wf.waves) == 1
    sh = wf.waves[0]
    assert isinstance(sh, Shock)
    assert sh.family == 1
    assert sh.lax_admissible()
    assert _rh_residual(sh) < 1e-9
    wf.validate()


def test_classical_two_shocks_inside_wedge():
    """Wedge-interior states decompose classically into two Lax shocks."""
    wf = solve_classical(L, State(-3.2, 5.0))
    assert len(wf.waves) == 2
    for w in wf.waves:
        assert isinstance(w, Shock)
        assert w.lax_admissible()
        assert _rh_residual(w) < 1e-10
    assert wf.waves[0].speed < wf.waves[1].speed
    wf.validate()


def test_classical_shock_plus_rarefaction(rng):
    """Random right states near the base solve into a valid wave fan with
    matching intermediate states."""
    for _ in range(40):
        right = State(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5))
        if abs(right.u) + abs(right.v) < 1e-3:
            continue
        wf = solve_classical(L, right)
        wf.validate()
        for w in wf.waves:
            if isinstance(w, Shock):
                assert _rh_residual(w) < 1e-9


def test_no_classical_solution_deep_in_singular_region():
    with pytest.raises(NoClassicalSolution):
        solve_classical(L, State(-4.0, 6.0))


def test_solve_with_delta_requires_sdsl():
    with pytest.raises(OutsideSDSL):
        solve_with_delta(L, DeltaState(State(2.0, 4.0), 1.0))


def test_solve_with_delta_decaying():
    wf = solve_with_delta(L, DeltaState(State(-3.2, 5.0), 1.0))
    (ss,) = wf.waves
    assert isinstance(ss, SingularShock)
    assert ss.k < 0
    assert ss.zeta0 == 1.0
    assert ss.overcompressive()
    np.testing.assert_allclose(ss.vanish_time(), -1.0 / ss.k)


def test_composites_with_initial_strength():
    wf = rarefaction_then_singular(L, State(-4.0, 13.0), 2.0, 1.0, 3.0)
    ss = wf.waves[-1]
    assert ss.zeta0 == 2.0
    assert ss.birth_x == 1.0 and ss.birth_t == 3.0
    wf.validate()

    wf = singular_then_rarefaction(L, State(-4.0, 3.0), 2.0, 1.0, 3.0)
    assert wf.waves[0].zeta0 == 2.0
    wf.validate()


def test_wave_ordering_and_state_chaining(rng):
    """Speeds weakly increase left to right and states chain across every
    solved fan, for random right states over all regimes."""
    for _ in range(60):
        right = State(rng.uniform(-6, 3), rng.uniform(-6, 14))
        try:
            wf = solve(L, right)
        except NoClassicalSolution:
            continue
        wf.validate()
        assert wf.left == L
        assert wf.right == right
