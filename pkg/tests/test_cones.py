"""Inequality systems, membership, the B/C projection, and the drivers."""

import itertools
import json
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eigencones.cones import (
    IneqSystem,
    facet_witnesses,
    feasible_on_grid,
    generate_inequalities,
    half_integer_grid,
    include_weight_BC,
    membership,
    project_weight_BC,
    projection_step_invariance,
    regions_agree_on_grid,
    system_from_json,
    verify_projection,
    verify_subeigencone,
)
from eigencones.errors import UsageError
from eigencones.rootsys import Weight, build_root_system

GOLDEN = Path(__file__).parent / "golden"


def test_a1_triangle_system():
    R = build_root_system("A", 1)
    S = generate_inequalities(R, 3, "levi")
    assert len(S.inequalities) == 3
    normal_sets = {q.normals for q in S.inequalities}
    assert normal_sets == {
        ((1,), (-1,), (-1,)),
        ((-1,), (1,), (-1,)),
        ((-1,), (-1,), (1,)),
    }


def test_n1_system():
    R = build_root_system("C", 2)
    S = generate_inequalities(R, 1, "levi")
    # per parabolic, the single inequality <omega_P, lambda> <= 0
    assert len(S.inequalities) == 2
    for q in S.inequalities:
        assert all(x >= 0 for slot in q.normals for x in slot)


def test_membership_examples():
    R = build_root_system("A", 1)
    S = generate_inequalities(R, 3, "levi")
    member, violated = membership([(1,), (1,), (2,)], S)
    assert member and not violated
    member, violated = membership([(1,), (1,), (3,)], S)
    assert not member and len(violated) == 1
    member, _ = membership([(0,), (0,), (0,)], S)
    assert member


def test_membership_requires_dominant():
    R = build_root_system("A", 1)
    S = generate_inequalities(R, 3, "levi")
    with pytest.raises(UsageError):
        membership([(-1,), (1,), (1,)], S)
    with pytest.raises(UsageError):
        membership([(1,), (1,)], S)


@given(st.fractions(min_value="1/7", max_value=9, max_denominator=12),
       st.lists(st.integers(0, 4), min_size=6, max_size=6))
@settings(max_examples=40, deadline=None)
def test_membership_scaling_invariance(c, flat):
    R = build_root_system("C", 2)
    S = generate_inequalities(R, 3, "levi")
    lams = [tuple(flat[2 * i:2 * i + 2]) for i in range(3)]
    scaled = [tuple(c * x for x in lam) for lam in lams]
    assert membership(lams, S)[0] == membership(scaled, S)[0]


def test_normals_are_primitive():
    for kind, rank in [("C", 2), ("B", 2), ("G2", 2)]:
        R = build_root_system(kind, rank)
        S = generate_inequalities(R, 3, "levi")
        from math import gcd

        for q in S.inequalities:
            flat = [x for slot in q.normals for x in slot]
            assert gcd(*flat) == 1
            assert q.scale > 0


def test_dedup_no_proportional_pairs():
    R = build_root_system("C", 2)
    S = generate_inequalities(R, 3, "nonzero")
    keys = [q.key() for q in S.inequalities]
    assert len(keys) == len(set(keys))


@pytest.mark.parametrize("name,kind,rank,count", [
    ("sp4", "C", 2, 18), ("so5", "B", 2, 18), ("g2", "G2", 2, 30),
])
def test_golden_systems(name, kind, rank, count):
    doc = json.loads((GOLDEN / f"{name}-n3-levi.json").read_text())
    S = system_from_json(doc)
    assert len(S.inequalities) == count
    regenerated = generate_inequalities(build_root_system(kind, rank), 3, "levi")
    assert regenerated.dumps() == json.dumps(doc, indent=2, sort_keys=True)
    # round trip through the schema preserves every record
    assert system_from_json(json.loads(regenerated.dumps())).dumps() == \
        regenerated.dumps()


def test_sp4_so5_systems_match_under_identification():
    # (a_1, a_2)_C <-> (a_1, 2 a_2)_B identifies the two weight lattices
    # epsilon-wise; the two cones must agree point by point
    SC = generate_inequalities(build_root_system("C", 2), 3, "levi")
    SB = generate_inequalities(build_root_system("B", 2), 3, "levi")
    grid = [c for c in itertools.product(range(3), repeat=2)]
    for combo in itertools.product(grid, repeat=3):
        c_side = membership(list(combo), SC)[0]
        b_side = membership([(a, 2 * b) for a, b in combo], SB)[0]
        assert c_side == b_side


def test_region_equality_nonzero_vs_levi():
    # Thm 2.2 and Thm 2.5 cut out the same cone
    for kind, rank in [("C", 2), ("G2", 2)]:
        R = build_root_system(kind, rank)
        S1 = generate_inequalities(R, 3, "nonzero")
        S2 = generate_inequalities(R, 3, "levi")
        assert len(S2.inequalities) <= len(S1.inequalities)
        assert regions_agree_on_grid(S1, S2, half_integer_grid(rank, top=2))


def test_facet_witnesses_sp4():
    S = generate_inequalities(build_root_system("C", 2), 3, "levi")
    grid = half_integer_grid(2, top=2)
    found = facet_witnesses(S, grid)
    assert len(found) == len(S.inequalities)
    misses = [qi for qi, w in found if w is None]
    # irredundancy: every wall is exposed already at this resolution
    assert misses == []


def test_feasible_on_grid_contains_origin():
    S = generate_inequalities(build_root_system("B", 2), 3, "levi")
    grid = [(0, 0), (1, 0), (0, 1)]
    feas = feasible_on_grid(S, grid)
    assert (0, 0, 0) in feas


# -- projection --------------------------------------------------------------


def test_project_c32_formula():
    R = build_root_system("C", 3)
    lam = Weight(R, (Fraction(1), Fraction(2), Fraction(5)))
    p = project_weight_BC(lam, 2)
    assert p.coords == (Fraction(1), Fraction(7))


def test_project_c41_formula():
    R = build_root_system("C", 4)
    lam = Weight(R, tuple(Fraction(x) for x in (1, 2, 3, 4)))
    p = project_weight_BC(lam, 1)
    assert p.coords == (Fraction(10),)


def test_project_section_property():
    R = build_root_system("C", 3)
    lam = Weight(R, (Fraction(3), Fraction(1), Fraction(0)))
    assert project_weight_BC(lam, 2).coords == (Fraction(3), Fraction(1))


def test_projection_requires_dominant():
    R = build_root_system("C", 3)
    with pytest.raises(UsageError):
        project_weight_BC(Weight(R, (Fraction(-1), Fraction(0), Fraction(0))), 2)
    with pytest.raises(UsageError):
        project_weight_BC(Weight(R, (Fraction(1),) * 3), 3)


def test_include_then_project_identity():
    for kind in ("B", "C"):
        sub = build_root_system(kind, 2)
        for coords in itertools.product(range(4), repeat=2):
            lam = Weight(sub, tuple(Fraction(x) for x in coords))
            back = project_weight_BC(include_weight_BC(lam, 4), 2)
            assert back.coords == lam.coords


def test_projection_linear():
    R = build_root_system("B", 3)
    u = Weight(R, (Fraction(1), Fraction(0), Fraction(2)))
    v = Weight(R, (Fraction(0), Fraction(3), Fraction(4)))
    lhs = project_weight_BC(u + v, 2)
    rhs = project_weight_BC(u, 2) + project_weight_BC(v, 2)
    assert lhs.coords == rhs.coords


def test_projection_step_invariance_counts():
    assert projection_step_invariance("C", 3) > 0
    assert projection_step_invariance("B", 3) > 0


def test_verify_projection_c21():
    rep = verify_projection(2, 1, 3, kind="C", grid_top=3)
    assert rep["ok"]
    assert rep["violations"] == []
    assert rep["section_identity"]
    assert rep["grid_members"] > 0


def test_verify_projection_bad_ranks():
    with pytest.raises(UsageError):
        verify_projection(2, 2, 3)


# -- sub-eigencone driver ----------------------------------------------------


def test_verify_subeigencone_sl2_in_g2():
    rep = verify_subeigencone("sl2-in-g2", {}, 3)
    assert rep["ok"]
    assert rep["mode"] == "ambient-products"
    # the sub's big cell maps to the G2/P2 big cell
    words = {
        w for pair in rep["pairs"] for row in pair["tuples"]
        for w in row["ambient_words"]
    }
    assert "21212" in words


def test_verify_subeigencone_c_in_c():
    rep = verify_subeigencone("c-in-c", {"r": 3, "s": 2}, 3)
    assert rep["ok"]
    for pair in rep["pairs"]:
        assert pair["all_ok"]
        for row in pair["tuples"]:
            assert row["levi_movable"]
            assert row["ambient_multiplicity"] >= 1


def test_verify_subeigencone_g2_in_f4_mode():
    rep = verify_subeigencone("g2-in-f4", {}, 3)
    assert rep["ok"]
    assert rep["mode"] == "dual-commutation"
    assert len(rep["pairs"]) == 2


def test_verify_subeigencone_needs_two_slots():
    with pytest.raises(UsageError):
        verify_subeigencone("sl2-in-g2", {}, 1)


def test_system_from_json_rejects_bad_version():
    R = build_root_system("A", 1)
    S = generate_inequalities(R, 3, "levi")
    doc = S.to_json()
    doc["schema_version"] = 99
    from eigencones.errors import ConfigurationError

    with pytest.raises(ConfigurationError):
        system_from_json(doc)


def test_generate_rejects_bad_tier():
    R = build_root_system("A", 1)
    with pytest.raises(UsageError):
        generate_inequalities(R, 3, "solid")
    with pytest.raises(UsageError):
        generate_inequalities(R, 0, "levi")
