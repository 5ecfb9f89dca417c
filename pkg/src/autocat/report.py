"""Plain-data report documents for JSON output."""
from __future__ import annotations

from .cores import CoreReport, MinimalAutocatalyticSet, SearchBounds
from .formats import SCHEMA_VERSION, digest, rational
from .network import ReactionNetwork


def core_dict(c: CoreReport) -> dict:
    rn = c.network
    return {
        "entities": list(c.entity_names),
        "reactions": list(c.reaction_names),
        "kappa": {rn.entities[x]: rn.reactions[r].name for x, r in c.kappa.pairs},
        "kind": c.kind.value,
        "matrix": [[rational(v) for v in row] for row in c.matrix.rows],
        "witness": {rn.reactions[r].name: rational(v) for r, v in zip(c.kappa.reactions, c.witness)},
        "det_sign": c.det_sign,
        "hard": c.is_hard,
        "unit_class": c.unit_class,
    }


def mas_dict(m: MinimalAutocatalyticSet) -> dict:
    return {
        "reactions": list(m.reaction_names),
        "entities": list(m.entity_names),
        "cores": [core_dict(c) for c in m.cores],
    }


def document(rn: ReactionNetwork, command: str, bounds: SearchBounds, complete: bool,
             cores=None, cs_cores=None, mas=None, **extra) -> dict:
    """Report skeleton with a fixed key order; sections not computed are null."""
    doc = {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "input": {"digest": digest(rn), "entities": list(rn.entities),
                  "reactions": [r.name for r in rn.reactions]},
        "bounds": bounds.as_dict(),
        "complete": complete,
        "cores": None if cores is None else [core_dict(c) for c in cores],
        "cs_cores": None if cs_cores is None else [core_dict(c) for c in cs_cores],
        "mas": None if mas is None else [mas_dict(m) for m in mas],
    }
    doc.update(extra)
    return doc
