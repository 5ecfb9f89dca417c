import math

import pytest

from autocat.algebra import ChildSelection
from autocat.errors import OracleBoundsError
from autocat.formats import format_network, parse
from autocat.koenig import build_koenig, koenig_of_cs
from autocat.network import sub_of
from autocat.oracle import (OracleBounds, brute_force_cores, brute_force_cs_cores, corpus, dfs_circuits,
                            random_network)

from conftest import fixture_network


def test_brute_force_cores_examples():
    rn = fixture_network("ex_cat2")
    assert brute_force_cores(rn) == {sub_of(rn, ["x2"], ["r1"])}
    assert brute_force_cores(parse("")) == set()


def test_brute_force_cs_cores_examples():
    rn = fixture_network("ex_cat2")
    got = brute_force_cs_cores(rn)
    assert got == {ChildSelection.from_names(rn, {"x1": "r1", "x2": "r2"}).key,
                   ChildSelection.from_names(rn, {"x2": "r1"}).key}
    rn = fixture_network("ex_cat2b")
    assert brute_force_cs_cores(rn) == {
        ChildSelection.from_names(rn, {"x1": "r11", "x3": "r12", "x2": "r2"}).key,
        ChildSelection.from_names(rn, {"x2": "r11", "x3": "r12"}).key}


def test_oracle_refuses_large_inputs():
    big = parse("\n".join(f"x{i} -> x{i + 1}" for i in range(6)))
    with pytest.raises(OracleBoundsError):
        brute_force_cores(big)
    with pytest.raises(OracleBoundsError):
        brute_force_cs_cores(big)


def test_dfs_circuits_examples():
    rn = fixture_network("examplei")
    k = ChildSelection.from_names(rn, {"x1": "r1", "x2": "r2", "x3": "r3"})
    assert len(dfs_circuits(koenig_of_cs(k, build_koenig(rn)).successors())) == 2
    assert dfs_circuits(build_koenig(parse("a -> b\na -> c")).successors()) == set()


def test_random_network_is_deterministic():
    for seed in (0, 1, 99):
        assert format_network(random_network(seed=seed)) == format_network(random_network(seed=seed))
    assert [format_network(r) for r in corpus(OracleBounds(instance_count=20))] == \
           [format_network(r) for r in corpus(OracleBounds(instance_count=20))]


def test_no_catalysis_at_probability_zero():
    for seed in range(200):
        rn = random_network(OracleBounds(catalysis_probability=0.0), seed=seed)
        assert all(not set(r.reactants) & set(r.products) for r in rn.reactions)


def test_corpus_statistics_within_three_sigma():
    b = OracleBounds()
    nets = [random_network(b, seed=s) for s in range(1000)]
    counts = [n.n_reactions for n in nets]
    # reactions per network are uniform on 1..5: mean 3, variance 2
    mean = sum(counts) / len(counts)
    assert abs(mean - 3) <= 3 * math.sqrt(2 / len(counts))
    reactions = [r for n in nets for r in n.reactions]
    frac = sum(1 for r in reactions if set(r.reactants) & set(r.products)) / len(reactions)
    p = b.catalysis_probability
    assert abs(frac - p) <= 3 * math.sqrt(p * (1 - p) / len(reactions))


def test_random_networks_respect_bounds():
    b = OracleBounds()
    for seed in range(300):
        rn = random_network(b, seed=seed)
        assert 1 <= rn.n_reactions <= b.max_reactions
        assert rn.n_entities <= b.max_entities
        for r in rn.reactions:
            assert all(1 <= c <= b.max_coefficient for c in list(r.reactants.values()) + list(r.products.values()))
            assert r.reactants and r.products


def test_unit_corpus_has_unit_stoichiometry():
    for rn in corpus(OracleBounds(instance_count=50), unit=True):
        assert rn.is_unit_stoichiometry(rn.whole())
