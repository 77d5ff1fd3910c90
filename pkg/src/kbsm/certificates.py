"""JSON certificates and their re-verification from the text alone.

A certificate is a dict with a ``kind`` key.  :func:`verify_certificate`
re-parses every polynomial through :mod:`kbsm.grammar` and repeats the
defining checks; it never trusts a stored verdict or normal form.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Union

from .grammar import parse, parse_laurent
from .ideals import IdealTwoGen, PrincipalityVerdict, ProperCertificate, Status
from .modpres import normal_form

__all__ = ["verify_certificate", "write_certificate", "read_certificate"]


def _proper_from_dict(data: dict) -> ProperCertificate:
    g1, g2 = (parse_laurent(s) for s in data["ideal"])
    factor = None if data["factor"] is None else parse_laurent(data["factor"])
    u1, u2 = (parse_laurent(s) for s in data["cofactors"])
    return ProperCertificate(IdealTwoGen(g1, g2), int(data["prime"]), factor, u1, u2)


def verify_certificate(data: dict[str, Any]) -> bool:
    kind = data.get("kind")
    if kind == "torsion":
        element = parse(data["element"])
        ann = parse_laurent(data["annihilator"])
        if ann.is_unit():
            return False
        return (not normal_form(element).is_zero()) and normal_form(element.scale(ann)).is_zero()
    if kind == "proper":
        return _proper_from_dict(data).verify()
    if kind == "principality":
        g1, g2 = (parse_laurent(s) for s in data["ideal"])
        status = Status(data["status"])
        cert = _proper_from_dict(data["properness"]) if "properness" in data else None
        cofs = tuple(parse_laurent(s) for s in data["cofactors"]) if "cofactors" in data else None
        verdict = PrincipalityVerdict(IdealTwoGen(g1, g2), status, parse_laurent(data["gcd"]), cert, cofs)
        return verdict.verify()
    raise ValueError(f"unknown certificate kind {kind!r}")


def write_certificate(data: dict, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.write_text(json.dumps(data, indent=2, sort_keys=True) + "\n")
    return path


def read_certificate(path: Union[str, Path]) -> dict:
    return json.loads(Path(path).read_text())
