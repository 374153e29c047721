import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lastmult.errors import UnsupportedError
from lastmult.lagrange import LAGRANGIAN_TAGS, catalog_lagrangian
from lastmult.legendre import (
    P,
    _ddt,
    canonical_momentum,
    catalog_hamiltonian,
    goldstein_transform_check,
    hamilton_equations_residual,
    hamiltonian_along,
    legendre_identity_holds,
    momentum_map,
    round_trip_holds,
)
from lastmult.mechsys import U1, U2, T, Trajectory, integrate, sho_system
from lastmult.symkernel import arctan, cot, equiv, exp, log, sin, tan


def relabel(tr, t0):
    return Trajectory(t0, tr.dt, np.array(tr.u1), np.array(tr.u2), tr.k)


def test_momentum_l12():
    L = catalog_lagrangian("L12", 1.0)
    assert equiv(canonical_momentum(L), U2 + L.f1)


def test_momentum_l34():
    k = 1.3
    L = catalog_lagrangian("L34", k)
    assert equiv(canonical_momentum(L), arctan(U2 / (k * U1)) / (k * U1), domain=L.domain())


def test_h12_printed():
    k = 2.0
    H, _, _ = catalog_hamiltonian("H12", k)
    assert equiv(H.value, P**2 / 2 + k**2 * U1**2 / 2)


def test_h34_printed():
    k = 1.0
    H, _, mm = catalog_hamiltonian("H34", k)
    assert equiv(H.value, log(tan(k * U1 * P) ** 2 + 1) / 2 + log(U1), domain=mm.p_domain)


def test_h23_printed():
    k = 1.0
    H, _, mm = catalog_hamiltonian("H23", k)
    assert equiv(H.value, exp(sin(k * T) * P) / sin(k * T) ** 2 + k * U1 * cot(k * T) * P, domain=mm.p_domain)


def test_unknown_tag():
    with pytest.raises(UnsupportedError):
        catalog_hamiltonian("H99", 1.0)


@pytest.mark.parametrize("tag", LAGRANGIAN_TAGS)
@pytest.mark.parametrize("k", [1.0, 2.0])
def test_legendre_identity_and_round_trip(tag, k):
    H, L, mm = catalog_hamiltonian(tag, k)
    assert legendre_identity_holds(H, L, mm)
    assert round_trip_holds(mm)


def test_round_trip_other_direction_l13():
    _, L, mm = catalog_hamiltonian("H13", 1.0)
    assert equiv(mm.round_trip_u2(), U2, domain=L.domain())


def test_ddt_fourth_order():
    t = np.linspace(0, 1, 101)
    assert np.abs(_ddt(np.sin(t), t[1] - t[0]) - np.cos(t)).max() < 1e-7


def test_hamilton_h12():
    H, _, mm = catalog_hamiltonian("H12", 1.0)
    tr = integrate(sho_system(1.0), (1.0, 0.0), (0.0, 10.0), 1e-2)
    assert hamilton_equations_residual(H, mm, tr) < 1e-6


def test_hamilton_h34():
    H, _, mm = catalog_hamiltonian("H34", 1.0)
    tr = integrate(sho_system(1.0), (1.5, 0.0), (0.0, 0.8), 1e-3)
    assert tr.u1.min() > 0.5
    assert hamilton_equations_residual(H, mm, tr) < 1e-5


def test_hamilton_h13():
    H, _, mm = catalog_hamiltonian("H13", 1.0)
    tr = relabel(integrate(sho_system(1.0), (1.0, 0.7), (0.0, 1.3), 1e-3), 0.1)
    assert hamilton_equations_residual(H, mm, tr) < 1e-5


def test_h12_conserved():
    H, _, mm = catalog_hamiltonian("H12", 1.0)
    vals = hamiltonian_along(H, mm, integrate(sho_system(1.0), (1.0, 0.4), (0.0, 10.0), 1e-3))
    assert np.ptp(vals) / abs(vals[0]) < 1e-8


def test_goldstein_transform():
    rep = goldstein_transform_check()
    assert rep.passed
    assert rep.spot_value[0] == pytest.approx(0.845)
    assert rep.to_json()["parity"]


@settings(max_examples=25, deadline=None)
@given(st.floats(0.5, 2.0), st.floats(-1.0, 1.0), st.floats(0.2, 1.3))
def test_l34_round_trip_pointwise(u1, p, t):
    k = 1.0
    _, _, mm = catalog_hamiltonian("H34", k)
    from lastmult.symkernel import evaluate

    b = {"t": t, "u1": u1, "p": p}
    u2 = evaluate(mm.u2_of_p, b)
    back = evaluate(mm.p_of_u2, {"t": t, "u1": u1, "u2": u2})
    assert abs(back - p) < 1e-9


def test_momentum_map_domains_documented():
    for tag in LAGRANGIAN_TAGS:
        assert momentum_map(catalog_lagrangian(tag, 1.0)).domain
