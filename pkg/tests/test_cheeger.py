import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from lensconvex import lens_model as lm
from lensconvex.cheeger import balance, cheeger, chord_bound, sign_changes
from lensconvex.disk_polygon import area, area_at, build, perimeter, support
from lensconvex.errors import GeometryError
from lensconvex.harness import random_body

from oracles import two_disk_area_fine_scan_t

bodies = st.builds(random_body, seed=st.integers(0, 2**32), m=st.integers(1, 10), spread=st.floats(0.05, 0.9))


def test_unit_disk(unit_disk):
    res = cheeger(unit_disk)
    assert res.t_star == pytest.approx(0.5, abs=1e-12)
    assert res.h == pytest.approx(2.0, abs=1e-11)


def test_lens_against_scan(lens1):
    res = cheeger(lens1)
    assert res.h == pytest.approx(1.0 / two_disk_area_fine_scan_t(1.0), rel=1e-8)
    assert res.h == pytest.approx(3.37, abs=0.01)
    assert res.h == pytest.approx(lm.H_cheeger(perimeter(lens1)), rel=1e-10)


@given(bodies, st.floats(0.2, 5.0))
def test_scaling(K, s):
    assert cheeger(K.transformed(scale=s)).h == pytest.approx(cheeger(K).h / s, rel=1e-9)


@given(bodies)
def test_result_invariants(K):
    res = cheeger(K)
    assert 0 < res.t_star < K.inradius
    assert res.h == 1.0 / res.t_star
    assert res.residual <= 1e-10 * area(K)


@given(bodies)
def test_unique_sign_change(K):
    assert sign_changes(K, 200) == 1


@given(bodies)
def test_classical_cheeger_direction(K):
    p = perimeter(K)
    assert cheeger(K).h >= 4 * math.pi / p - 1e-9


@given(bodies, st.data())
def test_domain_monotonicity(K, data):
    # extra disks can only shrink the body
    extra = data.draw(st.tuples(st.floats(-0.3, 0.3), st.floats(-0.3, 0.3)))
    try:
        K2 = build(list(K.centers) + [extra], K.lam)
    except GeometryError:
        return
    th = np.linspace(0, 2 * math.pi, 2000, endpoint=False)
    assert np.all(support(K2, th) <= support(K, th) + 1e-12)
    assert cheeger(K2).h >= cheeger(K).h - 1e-9


@given(bodies)
def test_area_profile_convex(K):
    ts = np.linspace(0, K.inradius * (1 - 1e-9), 64)
    g = np.array([area_at(K, t) for t in ts])
    assert np.min(np.diff(g, 2)) >= -1e-8


@pytest.mark.parametrize("r", np.linspace(0.02, 1.0, 40))
def test_lens_chord_bound(r):
    L = lm.lens_to_body(lm.Lens((0.0, 0.0), 0.0, float(r)))
    t = cheeger(L).t_star
    assert t <= chord_bound(area(L), L.inradius) + 1e-9


def test_balance_monotone(reuleaux):
    ts = np.linspace(0, reuleaux.inradius, 300)
    v = [balance(reuleaux, t) for t in ts]
    assert all(a > b for a, b in zip(v, v[1:]))


def test_tolerance_flag(reuleaux):
    loose = cheeger(reuleaux, tol=1e-4)
    tight = cheeger(reuleaux)
    assert abs(loose.t_star - tight.t_star) <= 1e-4
    assert loose.iterations <= tight.iterations
