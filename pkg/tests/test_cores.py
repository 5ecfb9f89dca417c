import pytest

from autocat.algebra import ChildSelection, cs_matrix, is_metzler
from autocat.cores import (CoreKind, SearchBounds, classify_cs_core, enumerate_autocatalytic_cores,
                           enumerate_cs_cores, enumerate_extra_cs_cores, is_autocatalytic_sub,
                           single_reaction_cores, unique_cs_of_core)
from autocat.errors import PreconditionError
from autocat.formats import parse
from autocat.network import SubNetwork, sub_of, submatrix
from autocat.oracle import OracleBounds, brute_force_cores, brute_force_cs_cores, random_network

from conftest import FIXTURE_NAMES, fixture_network


def described(reports):
    return [r.describe() for r in reports]


def test_single_reaction_cores():
    rn = fixture_network("ex_cat2")
    assert single_reaction_cores(rn) == [sub_of(rn, ["x2"], ["r1"])]
    assert single_reaction_cores(fixture_network("two_circuits")) == []
    assert len(single_reaction_cores(parse("x -> 2 x"))) == 1


def test_is_autocatalytic_sub():
    rn = fixture_network("ex_cat1")
    sub = sub_of(rn, ["x1", "x2"], ["r1", "r2"])
    w = is_autocatalytic_sub(rn, sub)
    assert w is not None
    m = submatrix(rn, sub)
    assert all(v > 0 for v in m.apply(w))
    assert is_autocatalytic_sub(rn, sub_of(rn, ["x2"], ["r1"])) is None
    assert is_autocatalytic_sub(rn, SubNetwork(frozenset(), frozenset())) is None


def test_unique_cs_of_core():
    rn = fixture_network("ex_cat2b")
    k = unique_cs_of_core(rn, sub_of(rn, ["x2", "x3"], ["r11", "r12"]))
    assert k == ChildSelection.from_names(rn, {"x2": "r11", "x3": "r12"})
    rn2 = fixture_network("ex_cat2")
    assert unique_cs_of_core(rn2, sub_of(rn2, ["x2"], ["r1"])) == ChildSelection.from_names(rn2, {"x2": "r1"})
    with pytest.raises(PreconditionError):
        unique_cs_of_core(rn2, sub_of(rn2, ["x1", "x2"], ["r1", "r2"]))


@pytest.mark.parametrize("name, expected", [
    ("ex_cat1", ["({x1,x2},{r1,r2})"]),
    ("ex_cat2", ["({x2},{r1})"]),
    ("ex_cat2b", ["({x2,x3},{r11,r12})"]),
    ("csred", ["({x1,x2},{r1,r2})"]),
    ("redfluf", []),
    ("examplei", []),
    ("exampleii", []),
    ("revsys1", ["({x1,x2,x3,x4},{r1,r2,r3,r4})"]),
])
def test_fixture_cores(name, expected):
    assert described(enumerate_autocatalytic_cores(fixture_network(name))) == expected


def test_cs_cores_cat2():
    rn = fixture_network("ex_cat2")
    cs = enumerate_cs_cores(rn)
    kappa = ChildSelection.from_names(rn, {"x1": "r1", "x2": "r2"})
    lam = ChildSelection.from_names(rn, {"x2": "r1"})
    assert {c.kappa for c in cs} == {kappa, lam}
    kinds = {c.kappa: c.kind for c in cs}
    assert kinds[lam] is CoreKind.AUTOCATALYTIC_CORE
    assert kinds[kappa] is CoreKind.EXTRA_CS_CORE
    assert cs_matrix(kappa, rn).rows == ((-1, 2), (1, -1))


def test_cs_cores_cat2b():
    rn = fixture_network("ex_cat2b")
    cs = enumerate_cs_cores(rn)
    big = ChildSelection.from_names(rn, [("x1", "r11"), ("x3", "r12"), ("x2", "r2")])
    lam = ChildSelection.from_names(rn, {"x2": "r11", "x3": "r12"})
    assert {c.kappa for c in cs} == {big, lam}
    assert classify_cs_core(rn, big) is CoreKind.EXTRA_CS_CORE
    assert classify_cs_core(rn, lam) is CoreKind.AUTOCATALYTIC_CORE
    # passing rows as x1, x3, x2 reproduces the usual display of this matrix
    assert cs_matrix(big, rn).rows == ((-1, 0, 2), (1, -1, 0), (-1, 2, -1))
    assert described(enumerate_extra_cs_cores(rn)) == ["({x1,x2,x3},{r11,r12,r2})"]


def test_catalysis_free_acyclic_has_no_cs_cores():
    assert enumerate_cs_cores(parse("a -> b\nb -> c + d")) == []


def test_catalysis_free_core_iff_metzler():
    seen = 0
    for seed in range(300):
        rn = random_network(OracleBounds(catalysis_probability=0.0), seed=seed)
        for c in enumerate_cs_cores(rn):
            seen += 1
            assert (c.kind is CoreKind.AUTOCATALYTIC_CORE) == is_metzler(c.matrix)
    assert seen > 10


def test_reports_carry_verified_witnesses():
    for name in FIXTURE_NAMES:
        rn = fixture_network(name)
        for c in list(enumerate_autocatalytic_cores(rn)) + list(enumerate_cs_cores(rn)):
            assert all(v > 0 for v in c.witness)
            assert all(v > 0 for v in c.matrix.apply(c.witness))
            assert c.det_sign == (-1) ** (len(c.kappa) - 1)


def test_cores_match_oracle_on_small_sample():
    for seed in range(60):
        rn = random_network(OracleBounds(), seed=seed)
        assert {c.sub for c in enumerate_autocatalytic_cores(rn)} == brute_force_cores(rn)
        assert {c.kappa.key for c in enumerate_cs_cores(rn)} == brute_force_cs_cores(rn)


def test_every_core_is_a_cs_core():
    for seed in range(100):
        rn = random_network(OracleBounds(), seed=seed)
        cores = {c.kappa for c in enumerate_autocatalytic_cores(rn)}
        cs = {c.kappa for c in enumerate_cs_cores(rn)}
        assert cores <= cs


def test_bounds_mark_incomplete():
    rn = fixture_network("revsys1")
    cut = enumerate_autocatalytic_cores(rn, SearchBounds(max_core_entities=2))
    assert not cut.complete
    cut = enumerate_autocatalytic_cores(rn, SearchBounds(max_circuit_len=2))
    assert not cut.complete and cut == []
    full = enumerate_autocatalytic_cores(rn, SearchBounds(max_circuit_len=16))
    assert full.complete and len(full) == 1


def test_output_order_is_deterministic():
    rn = fixture_network("mas_two_cores")
    a = [c.sort_key() for c in enumerate_autocatalytic_cores(rn)]
    b = [c.sort_key() for c in enumerate_autocatalytic_cores(rn)]
    assert a == b == sorted(a)
