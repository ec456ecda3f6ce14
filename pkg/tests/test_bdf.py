import json
import random
from importlib import resources

import pytest
from hypothesis import given, strategies as st

from cyclomod.bdf import (
    BdFDatum,
    admissible_hodge_vectors,
    census_json,
    check_free_action,
    coprime_residues,
    enumerate_subgroups,
    hodge_admissible,
    reconstruct_lattice,
    validate,
)
from cyclomod.crt import FiniteZxModule
from cyclomod.errors import BudgetExceeded, MalformedDatum, OddRank
from cyclomod.verify import random_bdf_datum


def fixture():
    return json.loads(resources.files("cyclomod").joinpath("data", "datum_n6.json").read_text())


def test_fixture_validates():
    d = BdFDatum.from_json(fixture())
    rep = validate(d)
    assert rep.ok
    assert rep.subgroup_order == 9
    assert check_free_action(d)
    L = reconstruct_lattice(d)
    assert L.index == 9 and L.rank == 8


@pytest.mark.parametrize("beta,failing", [((1, 0), {"C"}), ((0, 1), set()), ((2, 0), {"beta_order", "C"})])
def test_translation_choices(beta, failing):
    data = dict(fixture(), beta1=list(beta))
    d = BdFDatum.from_json(data)
    rep = validate(d)
    assert {k for k, v in rep.conditions.items() if not v} == failing
    assert check_free_action(d) == (not failing)


def test_fixture_projection():
    assert BdFDatum.from_json(fixture()).projection_to_block1().elements() == [(0, 0), (2, 0), (4, 0)]


def test_classical_n2():
    d = BdFDatum.build(2, {1: 2, 2: 2}, [], [1, 0], {"1": {"1": 1}, "2": {"1": 1}})
    assert validate(d).ok
    assert reconstruct_lattice(d).index == 1


def test_json_round_trip():
    d = BdFDatum.from_json(fixture())
    again = BdFDatum.from_json(d.to_json())
    assert again.subgroup() == d.subgroup()
    assert again.beta1 == d.beta1 and again.hodge_dims == d.hodge_dims


def test_ranks_as_list():
    data = dict(fixture(), ranks=[2, 2, 1, 1])
    assert BdFDatum.from_json(data).ranks == {1: 2, 2: 2, 3: 1, 6: 1}


@pytest.mark.parametrize("mutate", [
    lambda d: d.pop("n"),
    lambda d: d.update(beta1=[1]),
    lambda d: d.update(hodge_dims={"4": {"1": 1}}),
    lambda d: d.update(hodge_dims={"3": {"3": 1}}),
    lambda d: d.update(ranks={"5": 1}),
])
def test_malformed(mutate):
    data = fixture()
    mutate(data)
    with pytest.raises(MalformedDatum):
        BdFDatum.from_json(data)


def test_hodge():
    assert coprime_residues(1) == [1]
    assert coprime_residues(6) == [1, 5]
    ok, _ = hodge_admissible(6, {1: 2, 2: 2, 3: 1, 6: 1}, {1: {1: 1}, 2: {1: 1}, 3: {1: 1, 2: 0}, 6: {1: 0, 5: 1}})
    assert ok
    ok, msgs = hodge_admissible(3, {1: 2, 3: 1}, {1: {1: 1}, 3: {1: 1, 2: 1}})
    assert not ok and msgs
    assert len(admissible_hodge_vectors(3, {1: 2, 3: 1})) == 2
    assert len(admissible_hodge_vectors(2, {1: 2, 2: 2})) == 1
    for vec in admissible_hodge_vectors(6, {1: 2, 2: 2, 3: 2, 6: 1}):
        assert hodge_admissible(6, {1: 2, 2: 2, 3: 2, 6: 1}, vec)[0]
    with pytest.raises(OddRank):
        admissible_hodge_vectors(2, {1: 1, 2: 2})


# -- census against an exhaustive oracle -------------------------------------

def all_valid_subgroups(module):
    """Every subgroup as a frozenset of coordinate tuples, by closure from the trivial group."""
    moduli = module.moduli
    elements = [()]
    for e in moduli:
        elements = [t + (a,) for t in elements for a in range(e)]
    zero = tuple(0 for _ in moduli)

    def close(S, g):
        out = set(S)
        frontier = [g]
        while frontier:
            a = frontier.pop()
            if a in out:
                continue
            out.add(a)
            for b in list(out):
                s = tuple((x + y) % e for x, y, e in zip(a, b, moduli))
                if s not in out:
                    frontier.append(s)
        return frozenset(out)

    seen = {frozenset([zero])}
    todo = list(seen)
    while todo:
        S = todo.pop()
        for g in elements:
            if g not in S:
                T = close(S, g)
                if T not in seen:
                    seen.add(T)
                    todo.append(T)
    ranges = module.divisor_coord_ranges()

    def in_block(v):
        return [d for d, (lo, hi) in ranges.items()
                if any(v) and all(v[i] == 0 for i in range(len(v)) if not lo <= i < hi)]

    valid = []
    for S in seen:
        if all(module.x_coords(v) in S for v in S) and not any(in_block(v) for v in S):
            valid.append(S)
    return valid


@pytest.mark.parametrize("n,ranks", [
    (2, {1: 1, 2: 1}),
    (2, {1: 2, 2: 1}),
    (3, {1: 1, 3: 1}),
    (4, {1: 1, 2: 1, 4: 1}),
    (6, {1: 1, 2: 0, 3: 1, 6: 0}),
    (5, {1: 1, 5: 1}),
])
def test_census_against_brute_force(n, ranks):
    module = FiniteZxModule(n, ranks)
    oracle = all_valid_subgroups(module)
    found = enumerate_subgroups(n, ranks)
    assert len(found) == len(oracle)
    assert {frozenset(S.elements()) for S in found} == set(oracle)


def test_census_n2():
    out = census_json(2, {1: 1, 2: 1})
    assert out["count"] == 2
    assert all(e["valid"] for e in out["subgroups"])
    assert [e["order"] for e in out["subgroups"]] == [1, 2]


def test_budget():
    with pytest.raises(BudgetExceeded):
        enumerate_subgroups(6, {1: 1, 2: 1, 3: 1, 6: 1}, budget=100)


@given(st.integers(0, 10**6))
def test_free_action_matches_condition_c(seed):
    datum = random_bdf_datum(random.Random(seed), 8)
    if datum is None:
        return
    rep = validate(datum)
    assert check_free_action(datum) == (rep.conditions["C"] and rep.conditions["beta_order"])
    assert rep.subgroup_order % rep.projection_order == 0
