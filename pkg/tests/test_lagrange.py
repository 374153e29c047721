import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lastmult.errors import ConstraintError, UnsupportedError
from lastmult.lagrange import (
    LAGRANGIAN_TAGS,
    catalog_lagrangian,
    euler_lagrange_residual,
    gauge_shift,
    hessian,
    lagrangian_from_multiplier,
    listed_combinations,
    noether_check,
    noether_dimension,
    noether_report,
    safe_points,
)
from lastmult.mechsys import U1, U2, T, symmetry_catalog
from lastmult.multiplier import Multiplier, catalog_multiplier
from lastmult.symkernel import arctan, cos, equiv, equiv_up_to_constant, log, sin

MULT_FOR = {"L12": "JLM12", "L13": "JLM13", "L23": "JLM23", "L34": "JLM34"}


def by_tag(gens):
    return {g.tag: g for g in gens}


def test_l12_from_normalized_multiplier():
    k = 1.5
    L = lagrangian_from_multiplier(catalog_multiplier("JLM12", k), 0, -(k**2) * U1**2 / 2)
    assert equiv(L.value, U2**2 / 2 - k**2 * U1**2 / 2)
    assert L.normalization == pytest.approx(k)


def test_l34_printed_form():
    k = 1.2
    L = catalog_lagrangian("L34", k)
    r = U2 / (k * U1)
    assert equiv(L.value, r * arctan(r) - log(U2**2 / (k**2 * U1**2) + 1) / 2 - log(U1), domain=L.domain())


def test_l13_contains_printed_log():
    k = 1.0
    L = catalog_lagrangian("L13", k)
    d = k * U1 * sin(k * T) + U2 * cos(k * T)
    printed = (d * log(d) - d) / cos(k * T) ** 2
    assert equiv(L.value, printed, domain=L.domain())


def test_constraints_accept_defaults():
    for tag in LAGRANGIAN_TAGS:
        catalog_lagrangian(tag, 1.0)


def test_constraint_violation_carries_residual():
    with pytest.raises(ConstraintError) as info:
        catalog_lagrangian("L12", 1.0, 0, 0)
    assert info.value.residual is not None


def test_l34_gauge_satisfies_constraint():
    L = catalog_lagrangian("L34", 2.0, 0, -log(U1))
    assert equiv(L.constraint, 0, domain=L.domain())


def test_non_catalog_multiplier_rejected():
    with pytest.raises(UnsupportedError):
        lagrangian_from_multiplier(Multiplier(U1**3 + T, "odd", 1.0))


@pytest.mark.parametrize("tag", LAGRANGIAN_TAGS)
@pytest.mark.parametrize("k", [1.0, 2.0])
def test_euler_lagrange_residual(tag, k):
    L = catalog_lagrangian(tag, k)
    assert euler_lagrange_residual(L, safe_points(tag, k, 100)) < 1e-8


@pytest.mark.parametrize("tag", LAGRANGIAN_TAGS)
def test_hessian_is_multiplier(tag):
    k = 1.0
    L = catalog_lagrangian(tag, k)
    c = equiv_up_to_constant(hessian(L), catalog_multiplier(MULT_FOR[tag], k).value, domain=L.domain())
    assert c == pytest.approx(1)


def test_hessian_constant_recorded_for_k2():
    L = catalog_lagrangian("L12", 2.0)
    c = equiv_up_to_constant(hessian(L), catalog_multiplier("JLM12", 2.0).value)
    assert c == pytest.approx(0.5)


def test_gauge_equivalent_l13():
    L = catalog_lagrangian("L13", 1.0, T, U1)
    assert euler_lagrange_residual(L, safe_points("L13", 1.0, 100)) < 1e-8


def test_noether_l12_list():
    gens = by_tag(symmetry_catalog(1.0, "prolonged"))
    L = catalog_lagrangian("L12", 1.0)
    for tag in ("G1", "G2", "G4", "G5", "G6"):
        assert noether_check(L, gens[tag]).is_noether
    assert not noether_check(L, gens["G3"]).is_noether


def test_noether_l13_list():
    k = 1.0
    gens = by_tag(listed_combinations(k))
    L = catalog_lagrangian("L13", k)
    for tag in ("G1", "G4+G5", "-kG3+G6"):
        assert noether_check(L, gens[tag]).is_noether
    assert not noether_check(L, gens["G2"]).is_noether


def test_noether_l34_list():
    gens = by_tag(symmetry_catalog(1.0, "prolonged"))
    L = catalog_lagrangian("L34", 1.0)
    assert noether_check(L, gens["G3"]).is_noether
    assert noether_check(L, gens["G4"]).is_noether
    assert not noether_check(L, gens["G1"]).is_noether


@pytest.mark.parametrize("tag,count", [("L12", 5), ("L13", 3), ("L23", 3), ("L34", 2)])
def test_noether_counts(tag, count):
    L = catalog_lagrangian(tag, 1.0)
    assert noether_report(L).count == count
    assert noether_dimension(L) == count


def test_noether_report_json():
    rep = noether_report(catalog_lagrangian("L34", 1.0)).to_json()
    assert rep["independent_noether"] == 2
    noether = [c for c in rep["candidates"] if c["is_noether"]]
    assert all("gauge_term" in c for c in noether)


gauge_polys = st.tuples(*(st.integers(-3, 3) for _ in range(4))).map(
    lambda c: c[0] * T * U1 + c[1] * U1**2 + c[2] * sin(T) * U1 + c[3] * T**2
)


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(LAGRANGIAN_TAGS), gauge_polys)
def test_gauge_shift_leaves_residual(tag, g):
    L = catalog_lagrangian(tag, 1.0)
    pts = safe_points(tag, 1.0, 50, seed=3)
    assert abs(euler_lagrange_residual(gauge_shift(L, g), pts) - euler_lagrange_residual(L, pts)) < 1e-10
