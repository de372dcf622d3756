"""JSON census reports, written atomically and cached by content digest."""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from fractions import Fraction
from typing import Optional

from . import __version__
from .census import RepresentationCensus

NOTES = [
    "catalog completeness: only rational-entry targets are searched; irreducible images "
    "outside the chosen target are not seen",
    "centralizer orders are counted among octahedral rotations and certified by the absence "
    "of common fixed vectors",
    "totals sum multiplicities over irreducible classes with vanishing H^1; classes with "
    "H^1 != 0 are listed under degenerate_irreducible and excluded",
]


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if hasattr(x, "item"):
        return x.item()
    return x


def dumps(obj) -> str:
    return json.dumps(_jsonable(obj), sort_keys=True, indent=1) + "\n"


def census_report(est: RepresentationCensus) -> dict:
    """Deterministic part of a report (no timing, no worker count)."""
    p = est.presentation_
    g = est.group_
    classes = []
    degenerate = []
    for i, c in enumerate(est.classes_):
        classes.append({
            "index": i,
            "representative": c.rep.names(p),
            "trace_signature_sha256": c.signature_digest,
            "trace_signature_length": len(c.signature_ids),
            "image_order": c.image_order,
            "irreducible": c.irreducible,
            "h0": c.h0,
            "h1": c.h1,
            "walpuski_fixed_dim": c.walpuski,
            "nondegenerate": c.nondegenerate,
            "bundle_signature": c.bundle.key(),
            "centralizer_order": c.centralizer,
            "multiplicity": c.multiplicity,
            "orbits_merged": c.orbits,
        })
        if c.irreducible and not c.nondegenerate:
            degenerate.append(i)
    notes = list(NOTES)
    defects = p.affine_defects()
    if defects:
        notes.append("relators not satisfied by the affine realization: "
                     + "; ".join(f"#{i} {p.word_str(p.relators[i])}" for i in defects))
    return {
        "tool_version": __version__,
        "presentation": {"name": p.name, "digest": p.digest(), "generators": list(p.generators),
                         "relators": len(p.relators)},
        "target": {"name": g.name, "model": g.kind, "order": g.order},
        "config": {"prune": bool(est.prune), "depth": est.depth, "strict": bool(est.strict)},
        "raw_solutions": est.raw_count_,
        "hom_count_mod2": est.hom_count_mod2_,
        "classes": classes,
        "irreducible_classes": sum(1 for c in est.classes_ if c.irreducible),
        "degenerate_irreducible": degenerate,
        "totals": est.totals_,
        "notes": notes,
    }


def cache_key(est: RepresentationCensus, presentation) -> str:
    g = est._target_group()
    payload = "|".join([__version__, presentation.digest(), g.name, g.kind,
                        ";".join(g.names), str(bool(est.prune)), str(est.depth), str(bool(est.strict))])
    return hashlib.sha256(payload.encode()).hexdigest()


def cache_load(cache_dir: Optional[str], key: str) -> Optional[dict]:
    if not cache_dir:
        return None
    path = os.path.join(cache_dir, key + ".json")
    if not os.path.exists(path):
        return None
    with open(path) as fh:
        return json.load(fh)


def write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".json")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.chmod(tmp, 0o644)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def cache_store(cache_dir: Optional[str], key: str, report: dict) -> None:
    if cache_dir:
        write_atomic(os.path.join(cache_dir, key + ".json"), dumps(report))
