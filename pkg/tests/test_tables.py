import itertools
import json
import math
from fractions import Fraction

import pytest

from grext import engine
from grext.surjections import perm_sign
from grext.tables import (
    PAIRS,
    CocycleError,
    FunctorKind,
    Kind,
    SignedGroupAction,
    bell,
    closed_form_ext,
    coinvariants_dimension,
    compositions,
    distinct_partitions_into_parts,
    ext_table,
    partitions,
    partitions_into_parts,
    rational_ext,
    rational_tor,
    render_csv,
    render_json,
    render_markdown_grid,
    stable_homology,
    stable_homology_cells,
    stable_homology_prediction,
    stirling,
    transcribed_ext,
)

from oracles import count_compositions, count_set_partitions, integer_partitions

T, S, L = Kind.TENSOR, Kind.SYMMETRIC, Kind.EXTERIOR
SMALL = [(n, m) for n in range(6) for m in range(6)]


# --- counting ---------------------------------------------------------------


@pytest.mark.parametrize("m", range(9))
def test_counts_match_brute_force(m):
    for n in range(9):
        if m <= 7:
            assert stirling(m, n) == count_set_partitions(m, n)
        parts = list(integer_partitions(m))
        assert partitions_into_parts(m, n) == sum(1 for p in parts if len(p) == n)
        assert distinct_partitions_into_parts(m, n) == sum(1 for p in parts if len(p) == n == len(set(p)))
        assert compositions(m, n) == count_compositions(m, n)
        if n >= 1 and m >= 1:
            assert compositions(m, n) == math.comb(m - 1, n - 1)
    assert partitions(m) == len(list(integer_partitions(m)))
    if m <= 7:
        assert bell(m) == sum(count_set_partitions(m, n) for n in range(m + 1))


def test_counting_edge_cases():
    assert stirling(0, 0) == 1 and stirling(3, 0) == 0 and stirling(2, 3) == 0
    assert compositions(0, 0) == 1 and compositions(3, 0) == 0
    assert partitions(0) == 1 and bell(0) == 1


# --- coinvariants -----------------------------------------------------------


def test_trivial_action_counts_orbits():
    # Z/2 swapping two of three points
    act = SignedGroupAction([0, 1, 2], ["s"], lambda g, e: (1, {0: 1, 1: 0, 2: 2}[e]))
    assert coinvariants_dimension(act) == 2


def test_sign_on_a_fixed_point_kills_it():
    act = SignedGroupAction([0, 1], ["s"], lambda g, e: (-1 if e == 1 else 1, e))
    assert coinvariants_dimension(act, check=False) == 1


def test_orbit_with_sign_conflict_dies():
    # swap with sign -1 one way and +1 the other: the swap squares to -1 on the orbit
    act = SignedGroupAction([0, 1], ["s"], lambda g, e: (-1 if e == 0 else 1, 1 - e))
    assert coinvariants_dimension(act, check=False) == 0


def test_cocycle_check_rejects_non_action():
    act = SignedGroupAction(
        [0, 1], ["s"], lambda g, e: (-1 if e == 0 else 1, 1 - e), multiply=lambda g, h: "s"
    )
    with pytest.raises(CocycleError):
        coinvariants_dimension(act)


def test_functor_kind_parsing():
    assert FunctorKind.parse("T^3") == FunctorKind(T, 3)
    assert FunctorKind.parse("Λ^4") == FunctorKind.parse("L^4")
    assert str(FunctorKind.parse(" S^2 ")) == "S^2"
    for bad in ["X^2", "S2", "S^", "S^-1"]:
        with pytest.raises(ValueError):
            FunctorKind.parse(bad)


# --- rational Ext -----------------------------------------------------------


@pytest.mark.parametrize("a,b", PAIRS + [(T, T)])
def test_action_route_matches_transcribed_route(a, b):
    for n, m in SMALL:
        src, tgt = FunctorKind(a, n), FunctorKind(b, m)
        assert rational_ext(src, tgt).dimension == transcribed_ext(src, tgt).dimension, (n, m)


@pytest.mark.parametrize("a,b", [p for p in PAIRS + [(T, T)] if p != (S, L)])
def test_closed_forms_hold(a, b):
    for n, m in SMALL:
        src, tgt = FunctorKind(a, n), FunctorKind(b, m)
        assert rational_ext(src, tgt) == closed_form_ext(src, tgt), (n, m)


def test_symmetric_to_exterior_counts_distinct_parts():
    for n, m in SMALL:
        e = rational_ext(FunctorKind(S, n), FunctorKind(L, m))
        assert e.dimension == distinct_partitions_into_parts(m, n)
    # the smallest cases where the closed form undercounts
    for m, want in [(3, 1), (4, 1), (5, 2)]:
        assert rational_ext(FunctorKind(S, 2), FunctorKind(L, m)).dimension == want
        assert closed_form_ext(FunctorKind(S, 2), FunctorKind(L, m)).dimension == 0


def _joint_coinvariants(n, m, twist_source, twist_target):
    """Signed coinvariant dimension from traces on integral cohomology."""
    total = Fraction(0)
    for tau in itertools.permutations(range(n)):
        for sigma in itertools.permutations(range(m)):
            tr = engine.joint_action_trace(n, m, tau, sigma, m - n)
            if twist_source:
                tr *= perm_sign(tuple(x + 1 for x in tau))
            if twist_target:
                tr *= perm_sign(tuple(x + 1 for x in sigma))
            total += tr
    return total / (math.factorial(n) * math.factorial(m))


@pytest.mark.parametrize("n,m", [(2, 2), (2, 3)])
@pytest.mark.parametrize("a,b", [(S, L), (L, S), (S, S), (L, L)])
def test_coinvariants_match_homological_traces(n, m, a, b):
    got = _joint_coinvariants(n, m, a is L, b is L)
    assert got == rational_ext(FunctorKind(a, n), FunctorKind(b, m)).dimension


def test_degree_is_difference_of_exponents():
    e = rational_ext(FunctorKind(L, 3), FunctorKind(T, 1))
    assert e.degree == -2 and e.dimension == 0
    assert rational_ext(FunctorKind(L, 2), FunctorKind(T, 4)).degree == 2


def test_tor_mirrors_ext():
    for a, b in PAIRS:
        for n, m in [(1, 3), (2, 4), (3, 3)]:
            src, tgt = FunctorKind(a, n), FunctorKind(b, m)
            assert rational_tor(src, tgt).dimension == rational_ext(src, tgt).dimension


def test_ext_table_shape_and_mismatches():
    rows = ext_table(5)
    assert len(rows) == len(PAIRS) * 36
    bad = {(str(r.source), str(r.target)) for r in rows if not r.match}
    assert bad == {("S^2", "L^3"), ("S^2", "L^4"), ("S^2", "L^5")}


# --- stable homology --------------------------------------------------------


@pytest.mark.parametrize("functor", [T, S, L])
@pytest.mark.parametrize("d", range(0, 6))
def test_stable_homology_matches_prediction(functor, d):
    assert stable_homology(functor, d) == stable_homology_prediction(functor, d)


def test_stable_homology_cells_for_symmetric_powers():
    assert stable_homology_cells(S, 0) == [(0, 0, 1)]
    assert stable_homology_cells(S, 1) == [(0, 1, 1)]
    assert stable_homology_cells(S, 3) == []
    assert stable_homology(T, 3) == [(0, 0), (1, 0), (2, 0), (3, 5), (4, 0)]


# --- rendering --------------------------------------------------------------


def test_renderers():
    rows = ext_table(3, pairs=[(S, L)])
    csv_text = render_csv(rows, ["source", "target", "dimension", "closed_form", "match"])
    assert csv_text.splitlines()[0] == "source,target,dimension,closed_form,match"
    assert "S^2,L^3,1,0,False" in csv_text
    objs = json.loads(render_json(rows))
    assert objs[0] == {"source": "S^0", "target": "L^0", "degree": 0, "dimension": 1, "closed_form": 1, "match": True}
    grid = render_markdown_grid(rows)
    assert "### Ext(S^n, L^m)" in grid
    assert "**1/0**" in grid
