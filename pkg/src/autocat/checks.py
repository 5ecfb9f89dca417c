"""Invariant suites run by ``check`` and by the test-suite.

Each check returns a list of ``Finding`` records; an empty failure list
means the input passed.
"""
from __future__ import annotations

from dataclasses import dataclass

from .algebra.childsel import cs_matrix, perfect_matchings
from .algebra.lp import is_semipositive
from .algebra.matrix import det, det_sign, is_irreducible, is_metzler, metzler_part
from .algebra.spectral import DEAD_ZONE, char_poly, perron_root
from .circuits import CircuitClass, circuit_class, elementary_circuits
from .cores import (CoreReport, SearchBounds, classify_cs_core, contributing_dichotomy_check,
                    enumerate_autocatalytic_cores, enumerate_cs_cores, enumerate_extra_cs_cores,
                    enumerate_mas, extra_as_circuit, hardness, membership_report,
                    reversible_extension_cores, unit_stoich_classify)
from .errors import AutocatError
from .formats import WitnessNote
from .koenig import build_koenig, is_induced_fluffle, koenig_of_cs, validate_ear_decomposition
from .network import ReactionNetwork, SubNetwork, submatrix


@dataclass(frozen=True)
class Finding:
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'} {self.name}" + (f": {self.detail}" if self.detail else "")


def core_structure(rn: ReactionNetwork, core: CoreReport) -> list[Finding]:
    """Structural properties every autocatalytic core must have."""
    sub, k = core.sub, core.kappa
    label = core.describe()
    m = cs_matrix(k, rn)
    n = len(k)
    out = []

    def add(name, ok, detail=""):
        out.append(Finding(f"{label} {name}", bool(ok), detail))

    add("square", len(sub.entities) == len(sub.reactions))
    add("invertible", det(submatrix(rn, sub)) != 0)
    add("unique child-selection", len(perfect_matchings(rn, sub)) == 1)
    if n >= 2:
        add("Metzler with non-positive diagonal", is_metzler(m) and all(d <= 0 for d in m.diagonal()))
    add("irreducible", is_irreducible(m))
    add("det sign (-1)^(k-1)", det_sign(m) == (-1) ** (n - 1), f"det={det(m)}")
    poly = char_poly(m)
    coeffs = poly.coefficients
    add("characteristic polynomial signs",
        all(c >= 0 for c in coeffs[:-1]) and coeffs[-1] < 0 and poly.sign_changes() == 1,
        "coefficients=" + ",".join(str(c) for c in coeffs))
    parent = build_koenig(rn)
    add("induced fluffle", is_induced_fluffle(koenig_of_cs(k, parent), parent))
    autonomous = all(
        any(rn.s_minus(x, r) > 0 for r in sub.reactions) and any(rn.s_plus(x, r) > 0 for r in sub.reactions)
        for x in sub.entities)
    add("entity autonomy", autonomous)
    if n >= 2:
        rows_ok = True
        for x in sub.entities:
            has_pos = any(rn.net(x, r) > 0 for r in sub.reactions)
            has_sink = any(rn.s_minus(x, r) > 0 and rn.net(x, r) <= 0 for r in sub.reactions)
            sole = any([y for y in rn.reactions[r].reactants if y in sub.entities] == [x]
                       for r in sub.reactions)
            rows_ok = rows_ok and has_pos and has_sink and sole
        add("rows have production, consumption and a sole-reactant reaction", rows_ok)
    cols_ok = all(any(m[i, j] > 0 for i in range(n)) for j in range(n))
    add("every column has a positive entry", cols_ok)
    return out


def cs_core_structure(rn: ReactionNetwork, core: CoreReport) -> list[Finding]:
    k = core.kappa
    m = cs_matrix(k, rn)
    label = core.describe()
    out = [Finding(f"{label} Metzler part irreducible", is_irreducible(metzler_part(m)))]
    kind = classify_cs_core(rn, k)
    out.append(Finding(f"{label} kind matches reactant test", kind == core.kind, kind.value))
    catalysis_free = not any(rn.s_minus(x, r) > 0 and rn.s_plus(x, r) > 0
                             for x in k.entities for r in k.reactions)
    if catalysis_free:
        out.append(Finding(f"{label} catalysis-free: core exactly when Metzler",
                           (kind.value == "autocatalytic_core") == is_metzler(m)))
    ears = validate_ear_decomposition(koenig_of_cs(k, build_koenig(rn)))
    out.append(Finding(f"{label} K(kappa) has a valid ear decomposition", ears is not None))
    return out


def containment_chain(rn: ReactionNetwork, core: CoreReport) -> list[Finding]:
    flags = membership_report(rn, core.kappa)
    chain = (not flags["autocatalytic_core"] or flags["cs_core"]) and \
            (not flags["cs_core"] or flags["metzler_part_irreducible"]) and \
            (not flags["cs_core"] or flags["semipositive"])
    return [Finding(f"{core.describe()} class containment", chain,
                    ",".join(k for k, v in flags.items() if v))]


def perron_agreement(rn: ReactionNetwork, core: CoreReport) -> list[Finding]:
    m = core.matrix
    if not (is_metzler(m) and is_irreducible(m)):
        return []
    root = perron_root(m)
    if abs(root) <= DEAD_ZONE:
        return [Finding(f"{core.describe()} Perron cross-check", True, f"dead zone, root={root:.3g}")]
    lp = bool(is_semipositive(m))
    return [Finding(f"{core.describe()} Perron cross-check", (root > 0) == lp, f"root={root:.6g}")]


def unit_checks(rn: ReactionNetwork, core: CoreReport, bounds: SearchBounds) -> list[Finding]:
    label = core.describe()
    out = []
    h = hardness(rn, core, bounds)
    out.append(Finding(f"{label} unit-stoichiometry core is hard", h.by_extension and h.by_circuits))
    try:
        cls = unit_stoich_classify(rn, core)
        out.append(Finding(f"{label} spanning certificate", True, cls.unit_class.value))
    except AutocatError as exc:
        out.append(Finding(f"{label} spanning certificate", False, str(exc)))
    try:
        contributing_dichotomy_check(rn, core)
        out.append(Finding(f"{label} contributing-circuit dichotomy", True))
    except AutocatError as exc:
        out.append(Finding(f"{label} contributing-circuit dichotomy", False, str(exc)))
    return out


def hardness_checks(rn: ReactionNetwork, core: CoreReport, bounds: SearchBounds) -> list[Finding]:
    label = core.describe()
    h = hardness(rn, core, bounds)
    out = [Finding(f"{label} no drainable circuit implies hard", h.consistent,
                   f"hard={h.by_extension}, drainable-free={h.by_circuits}")]
    for extra in reversible_extension_cores(rn, core, bounds):
        c = extra_as_circuit(rn, core, extra)
        ok = c is not None and circuit_class(c, rn)[0] is CircuitClass.DRAINABLE
        catalysed = any(extra.network.s_plus(x, r) > 0 for x, r in extra.kappa.pairs)
        ok = ok and (len(extra.kappa) == 1 or not catalysed)
        out.append(Finding(f"{label} extension core {extra.describe()} reverses a drainable circuit", ok,
                           c.describe(rn) if c else "not a reversed circuit"))
    return out


def witness_notes(rn: ReactionNetwork, notes: list[WitnessNote]) -> list[Finding]:
    out = []
    for note in notes:
        ents = frozenset(rn.entity_index(x) for x in note.entities)
        reacts = frozenset(rn.reaction_index(r) for r in note.values)
        sub = SubNetwork(ents, reacts)
        m = submatrix(rn, sub)
        v = [note.values[rn.reactions[j].name] for j in sub.reaction_order]
        image = m.apply(v)
        ok = all(a > 0 for a in v) and all(a > 0 for a in image)
        out.append(Finding(f"witness on line {note.line} for {rn.describe(sub)}", ok,
                           "S'v=(" + ",".join(str(a) for a in image) + ")"))
    return out


def full_check(rn: ReactionNetwork, bounds: SearchBounds = SearchBounds(),
               notes: list[WitnessNote] = (), oracle: bool = True) -> list[Finding]:
    """Everything ``check`` verifies for one network."""
    out: list[Finding] = []
    cores = enumerate_autocatalytic_cores(rn, bounds)
    cs = enumerate_cs_cores(rn, bounds)
    out.append(Finding("search complete", cores.complete and cs.complete))
    for core in cores:
        out += core_structure(rn, core)
        out += containment_chain(rn, core)
        out += perron_agreement(rn, core)
        out += hardness_checks(rn, core, bounds)
        if rn.is_unit_stoichiometry(core.sub):
            out += unit_checks(rn, core, bounds)
    for c in cs:
        out += cs_core_structure(rn, c)
        out += perron_agreement(rn, c)
    core_keys = {c.kappa.key for c in cores}
    out.append(Finding("every core is a CS-core",
                       core_keys <= {c.kappa.key for c in cs}))
    extras = {c.kappa.key for c in cs if c.kind.value == "extra_cs_core"}
    filtered = {c.kappa.key for c in enumerate_extra_cs_cores(rn, bounds)}
    out.append(Finding("extra CS-core candidate filter agrees", extras == filtered))
    mas = enumerate_mas(rn, bounds)
    out.append(Finding("every MAS carries a core", all(m.cores for m in mas)))
    circuits = elementary_circuits(build_koenig(rn), bounds.max_circuit_len)
    out.append(Finding("circuit enumeration complete", circuits.complete, f"{len(circuits)} circuits"))
    if oracle:
        from .oracle import OracleBounds, brute_force_cores, brute_force_cs_cores
        ob = OracleBounds()
        if rn.n_entities <= ob.max_entities and rn.n_reactions <= ob.max_reactions:
            out.append(Finding("cores match brute force",
                               {c.sub for c in cores} == brute_force_cores(rn, ob)))
            out.append(Finding("CS-cores match brute force",
                               {c.kappa.key for c in cs} == brute_force_cs_cores(rn, ob)))
    out += witness_notes(rn, list(notes))
    return out
