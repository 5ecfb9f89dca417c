import pytest

from autocat.algebra import ChildSelection, cs_matrix, is_irreducible
from autocat.circuits import CircuitClass, circuit_class
from autocat.cores import (UnitClass, contributing_dichotomy_check, drainable_circuits,
                           enumerate_autocatalytic_cores, enumerate_mas, extra_as_circuit, hardness,
                           is_hard, membership_report, reversible_extension_cores, unit_stoich_classify)
from autocat.errors import PreconditionError
from autocat.formats import parse
from autocat.koenig import build_koenig, is_fluffle, koenig_of_cs
from autocat.network import sub_of

from conftest import fixture_network


def only_core(name):
    rn = fixture_network(name)
    cores = enumerate_autocatalytic_cores(rn)
    assert len(cores) == 1
    return rn, cores[0]


# ---------------------------------------------------------------- hardness

def test_revsys1_extension_cores():
    rn, core = only_core("revsys1")
    extras = reversible_extension_cores(rn, core)
    assert sorted(e.describe() for e in extras) == [
        "({x1,x3},{r1_rev,r3_rev})", "({x1,x4},{r1_rev,r4_rev})", "({x2},{r2_rev})"]
    two = [e for e in extras if len(e.kappa) == 2]
    for e in two:
        assert e.matrix.rows == ((-1, 2), (1, -1))
    assert not is_hard(rn, core)
    h = hardness(rn, core)
    assert not h.by_extension and not h.by_circuits


def test_extension_cores_reverse_drainable_circuits():
    rn, core = only_core("revsys1")
    reversed_circuits = set()
    for e in reversible_extension_cores(rn, core):
        c = extra_as_circuit(rn, core, e)
        assert c is not None
        assert circuit_class(c, rn)[0] is CircuitClass.DRAINABLE
        reversed_circuits.add(c)
    drain = set(drainable_circuits(rn, core))
    # (x1,r1,x2,r2) is drainable too, but its reverse has the MR-chord (x2, r2_rev)
    assert len(drain) == 4 and reversed_circuits < drain
    (left,) = drain - reversed_circuits
    assert left.describe(rn) == "(x1,r1,x2,r2)"


def test_unit_core_and_single_reaction_are_hard():
    rn, core = only_core("ex_cat1")
    assert reversible_extension_cores(rn, core) == []
    assert is_hard(rn, core)
    rn, core = only_core("ex_cat2")
    assert reversible_extension_cores(rn, core) == []


def test_cat2b_both_criteria_agree():
    rn, core = only_core("ex_cat2b")
    h = hardness(rn, core)
    assert h.agree and h.by_extension


def test_drainable_circuit_does_not_force_softness():
    # a drainable circuit whose reverse picks up an MR-chord yields no second core
    rn = parse("""
        r1: 2 x1 -> x3 + 3 x4
        r2: x2 -> x1 + 2 x2 + 2 x4
        r3: 2 x1 + x2 -> 2 x3
        r4: 2 x3 + 3 x4 -> 2 x1 + x2
        r5: 2 x2 -> 3 x1
    """)
    target = sub_of(rn, ["x1", "x2", "x4"], ["r1", "r4", "r5"])
    cores = [c for c in enumerate_autocatalytic_cores(rn) if c.sub == target]
    assert len(cores) == 1
    core = cores[0]
    drain = drainable_circuits(rn, core)
    assert [c.describe(rn) for c in drain] == ["(x1,r1,x4,r4,x2,r5)"]
    assert circuit_class(drain[0], rn)[1:] == (9, 12)
    h = hardness(rn, core)
    assert h.by_extension and not h.by_circuits
    assert h.consistent and not h.agree
    from autocat.network import reversible_extension
    from autocat.oracle import brute_force_cores, OracleBounds
    ext, _ = reversible_extension(rn, core.sub)
    assert len(brute_force_cores(ext, OracleBounds(max_reactions=6))) == 1


def test_hard_implied_by_no_drainable_circuit():
    from autocat.oracle import OracleBounds, random_network
    for seed in range(150):
        rn = random_network(OracleBounds(), seed=seed)
        for core in enumerate_autocatalytic_cores(rn):
            assert hardness(rn, core).consistent


# ---------------------------------------------------------------- MAS

def test_mas_with_two_cores():
    rn = fixture_network("mas_two_cores")
    mas = enumerate_mas(rn)
    assert len(mas) == 1
    assert mas[0].reaction_names == ("r1", "r2")
    assert mas[0].entity_names == ("x1", "x2", "x3")
    assert sorted(c.describe() for c in mas[0].cores) == ["({x1,x2},{r1,r2})", "({x1,x3},{r1,r2})"]


def test_hard_core_outside_every_mas():
    rn = fixture_network("mas_hard")
    mas = enumerate_mas(rn)
    assert [m.reaction_names for m in mas] == [("r1", "r2")]
    target = sub_of(rn, ["x2", "x3", "x4"], ["r1", "r2", "r3"])
    big = [c for c in enumerate_autocatalytic_cores(rn) if c.sub == target]
    assert len(big) == 1
    assert is_hard(rn, big[0])
    assert all(big[0].sub.reactions != m.reactions for m in mas)


def test_single_reaction_mas():
    rn = parse("r: x -> 2 x")
    mas = enumerate_mas(rn)
    assert [(m.entity_names, m.reaction_names) for m in mas] == [(("x",), ("r",))]


# ---------------------------------------------------------------- membership

def test_membership_cat2b_extra():
    rn = fixture_network("ex_cat2b")
    k = ChildSelection.from_names(rn, [("x1", "r11"), ("x3", "r12"), ("x2", "r2")])
    flags = membership_report(rn, k)
    assert flags["semipositive"] and flags["metzler_part_irreducible"] and flags["cs_core"]
    assert not flags["metzler"] and not flags["autocatalytic_core"]
    assert flags["irreducible"] == is_irreducible(cs_matrix(k, rn))


def test_membership_cat2_extra():
    rn = fixture_network("ex_cat2")
    k = ChildSelection.from_names(rn, {"x1": "r1", "x2": "r2"})
    flags = membership_report(rn, k)
    assert flags == {"semipositive": True, "metzler": True, "irreducible": True,
                     "metzler_part_irreducible": True, "cs_core": True, "autocatalytic_core": False}


def test_membership_of_cores_sets_every_flag():
    for name in ("ex_cat1", "ex_cat2b", "csred", "revsys1", "two_circuits"):
        rn, core = only_core(name)
        assert all(membership_report(rn, core.kappa).values())


def test_membership_redfluf():
    rn = fixture_network("redfluf")
    k = ChildSelection.from_names(rn, {"x1": "r1", "x2": "r2"})
    flags = membership_report(rn, k)
    assert not flags["semipositive"] and not flags["irreducible"] and not flags["cs_core"]
    assert is_fluffle(koenig_of_cs(k, build_koenig(rn)))


# ---------------------------------------------------------------- unit stoichiometry

def test_type_iii_classification():
    rn, core = only_core("two_circuits")
    cls = unit_stoich_classify(rn, core)
    assert cls.unit_class is UnitClass.TYPE_III_DOUBLE_CIRCUIT
    assert len(cls.circuits) == 2


def test_cat1_classification():
    rn, core = only_core("ex_cat1")
    assert unit_stoich_classify(rn, core).unit_class in (UnitClass.CIRCUIT_ONLY, UnitClass.CIRCUIT_PLUS_CHORD)


def test_csred_classification_and_dichotomy():
    rn, core = only_core("csred")
    assert unit_stoich_classify(rn, core).unit_class is UnitClass.CIRCUIT_ONLY
    (c,) = contributing_dichotomy_check(rn, core)
    assert set(c.entities) == {rn.entity_index("x1"), rn.entity_index("x2")}


def test_dichotomy_two_circuits():
    rn, core = only_core("two_circuits")
    c1, c2 = contributing_dichotomy_check(rn, core)
    assert set(c1.vertices()) & set(c2.vertices())


def test_unit_helpers_reject_non_unit_cores():
    rn, core = only_core("revsys1")
    with pytest.raises(PreconditionError):
        unit_stoich_classify(rn, core)
    with pytest.raises(PreconditionError):
        contributing_dichotomy_check(rn, core)

