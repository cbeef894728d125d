from fractions import Fraction
from math import comb, factorial, sqrt

import numpy as np
import pytest

from facevol import (
    build_instance,
    build_pair,
    family_constants,
    instance_to_json,
    is_realizable,
    spec_from_json,
    special_face_squared_volume,
    squared_volume,
    sweep_rows,
    two_value_check,
    verify_pair,
    vertices_to_spec,
)


def test_constants_n4():
    c = family_constants(4)
    assert c.c_sq == Fraction(1, 3)
    assert c.t0 == 2
    assert c.x_max == Fraction(2, 3)
    assert c.alpha == Fraction(-1, 16)
    assert c.beta == Fraction(1, 4)
    assert c.alpha + c.beta == Fraction(3, 16)  # (sqrt(3)/4)^2


def test_constants_n5():
    c = family_constants(5)
    assert c.t0 == Fraction(3, 2)
    assert c.c_sq == Fraction(3, 8)


@pytest.mark.parametrize("n", range(4, 9))
def test_constants_invariants(n):
    c = family_constants(n)
    assert c.alpha + c.beta == Fraction(n - 1, 2 ** (n - 2) * factorial(n - 2) ** 2)
    assert c.t0 == -c.beta / (2 * c.alpha)
    assert 0 < c.x_max < c.t0
    # the admissible offset reaches exactly to the upper t boundary
    assert c.t0 + c.x_max == c.t_upper
    assert c.t0 - c.x_max > 0


def test_constants_domain():
    with pytest.raises(ValueError):
        family_constants(3)


def test_instance_t1_is_regular():
    instance = build_instance(4, 1)
    assert set(instance.spec.squared_lengths.values()) == {1}
    roundtrip = vertices_to_spec(instance.vertices)
    assert np.abs(roundtrip.vector() - 1.0).max() <= 1e-14


def test_instance_t2_has_one_stretched_edge():
    instance = build_instance(4, 2)
    values = sorted(float(v) for v in instance.spec.squared_lengths.values())
    assert len(values) == comb(5, 2)
    assert values == [1] * 9 + [2]
    assert instance.spec.edge(4, 5) == 2
    assert is_realizable(instance.spec)


def test_instance_t_range():
    upper = family_constants(4).t_upper
    assert upper == Fraction(8, 3)
    for bad in (0, -1, upper, float(upper) + 0.1):
        with pytest.raises(ValueError):
            build_instance(4, bad)


def test_instance_circle_parameters():
    c = family_constants(4)
    instance = build_instance(4, Fraction(3, 2))
    rho_sq = float(1 - c.c_sq)
    assert instance.p**2 + instance.q**2 == pytest.approx(rho_sq, rel=1e-14)
    assert instance.r**2 + instance.s**2 == pytest.approx(rho_sq, rel=1e-14)
    t = (instance.p - instance.r) ** 2 + (instance.q - instance.s) ** 2
    assert t == pytest.approx(1.5, rel=1e-14)
    assert instance.s >= 0


@pytest.mark.parametrize("n", range(4, 9))
def test_construction_consistency(n):
    c = family_constants(n)
    for frac in (Fraction(1, 5), Fraction(1, 2), Fraction(4, 5)):
        t = frac * c.t_upper
        instance = build_instance(n, t)
        squared = vertices_to_spec(instance.vertices).squared_lengths
        special = squared.pop((n, n + 1))
        assert special == pytest.approx(float(t), rel=1e-12, abs=1e-14)
        assert max(abs(v - 1.0) for v in squared.values()) <= 1e-14


@pytest.mark.parametrize("n", range(4, 9))
def test_barycenter_distance(n):
    instance = build_instance(n, 1.25)
    center = instance.vertices[: n - 1].mean(axis=0)
    c_sq = float(family_constants(n).c_sq)
    for vertex in instance.vertices[: n - 1]:
        diff = vertex - center
        assert float(diff @ diff) == pytest.approx(c_sq, abs=1e-14)


def test_special_face_volume_values():
    assert special_face_squared_volume(4, Fraction(3, 2)) == Fraction(15, 64)
    assert special_face_squared_volume(4, Fraction(5, 2)) == Fraction(15, 64)
    assert float(special_face_squared_volume(4, 1.5)) == pytest.approx(3.75 / 16)
    assert special_face_squared_volume(4, 1) == Fraction(3, 16)
    assert special_face_squared_volume(4, 0) == 0
    assert special_face_squared_volume(4, 2) == Fraction(1, 4)


def test_special_face_volume_matches_cm_oracle_exactly():
    # the special face {i, n, n+1} is a triangle with squared sides (1, 1, t)
    for t in (Fraction(3, 2), Fraction(2), Fraction(5, 2)):
        spec = build_instance(4, t).spec
        assert squared_volume(spec, (1, 4, 5)) == special_face_squared_volume(4, t)


@pytest.mark.parametrize("n", range(4, 9))
def test_special_face_volume_oracle_grid(n):
    upper = float(family_constants(n).t_upper)
    face = tuple(sorted({*range(1, n - 2), n, n + 1}))  # n-1 vertices, both special
    for t in np.linspace(0.05 * upper, 0.95 * upper, 20):
        spec = build_instance(n, float(t)).spec
        oracle = float(squared_volume(spec, face))
        formula = float(special_face_squared_volume(n, float(t)))
        assert formula == pytest.approx(oracle, rel=1e-12)


def test_symmetry_about_t0():
    for n in range(4, 9):
        c = family_constants(n)
        for x in (Fraction(1, 7), Fraction(2, 5)):
            x = x * c.x_max
            assert special_face_squared_volume(n, c.t0 - x) == special_face_squared_volume(
                n, c.t0 + x
            )
        # float path
        x = 0.3 * float(c.x_max)
        lo = special_face_squared_volume(n, float(c.t0) - x)
        hi = special_face_squared_volume(n, float(c.t0) + x)
        assert lo == pytest.approx(hi, abs=1e-14)


def test_build_pair_t_values():
    pair = build_pair(4, 0.5)
    assert pair.minus.t == pytest.approx(1.5)
    assert pair.plus.t == pytest.approx(2.5)
    pair = build_pair(5, 0.25)
    assert pair.minus.t == pytest.approx(1.25)
    assert pair.plus.t == pytest.approx(1.75)


def test_build_pair_range():
    with pytest.raises(ValueError):
        build_pair(4, 0.7)  # x_max = 2/3
    with pytest.raises(ValueError):
        build_pair(4, 0)


def test_verify_pair_report():
    pair = build_pair(4, 0.5, tol=1e-10)
    report = pair.report
    assert report["passed"]
    assert report["max_facevol_reldiff"] <= 1e-12
    assert report["non_congruent"]
    assert report["vol_reldiff"] > 1e-6
    fresh = verify_pair(pair, tol=1e-10)
    assert fresh["vol_minus"] == report["vol_minus"]


def test_pair_differences_vanish_as_x_shrinks():
    # both instances approach T(t0), so every reported difference goes to 0
    vol_diffs = []
    for x in (1e-2, 1e-4, 1e-6):
        report = build_pair(4, x).report
        assert report["max_facevol_reldiff"] <= 1e-12
        vol_diffs.append(report["vol_reldiff"])
    assert vol_diffs[0] > vol_diffs[1] > vol_diffs[2]
    assert vol_diffs[2] <= 1e-4


def test_two_value_check_values():
    regular, special = two_value_check(build_instance(4, 2))
    assert regular == pytest.approx(sqrt(3) / 4, rel=1e-12)
    assert special == pytest.approx(0.5, rel=1e-12)

    regular, special = two_value_check(build_instance(4, 1))
    assert regular == pytest.approx(special, rel=1e-12)


def test_two_value_check_group_sizes():
    from facevol import all_face_volumes

    n = 6
    instance = build_instance(n, family_constants(n).t0)
    fvv = all_face_volumes(instance.spec, n - 2)
    assert len(fvv) == comb(n + 1, 2) == 21
    special_keys = [k for k in fvv.keys() if not {n, n + 1} & set(k)]
    assert len(special_keys) == comb(n - 1, 2)  # faces containing both movers
    regular, special = two_value_check(instance)
    assert regular != pytest.approx(special, rel=1e-6)
    assert len({round(v, 12) for v in fvv.values.values()}) == 2


def test_instance_export():
    instance = build_instance(4, Fraction(3, 2))
    data = instance_to_json(instance)
    assert data["n"] == 4
    assert data["squared_lengths"][-1] == "3/2"
    assert len(data["vertices"]) == 5 and len(data["vertices"][0]) == 4
    assert spec_from_json(data).edge(4, 5) == Fraction(3, 2)


def test_sweep_rows():
    rows = sweep_rows(4, count=3)
    assert len(rows) == 3
    x_max = float(family_constants(4).x_max)
    assert [row["x"] for row in rows] == pytest.approx(
        [x_max / 4, x_max / 2, 3 * x_max / 4]
    )
    for row in rows:
        assert row["max_facevol_reldiff"] <= 1e-12
        assert row["vol_reldiff"] > 1e-6
        assert row["t_minus"] + row["t_plus"] == pytest.approx(2 * 2.0)
