"""JSON documents: collections in, reports out.

Rationals are written as ``"p/q"`` strings so nothing passes through a
float.
"""
from __future__ import annotations

import hashlib
import json
import warnings
from fractions import Fraction
from typing import Any

from .collection import Collection, from_mask
from .errors import PreconditionError
from .polytope import SupportSet


class DocumentError(PreconditionError):
    """Invalid collection document; ``path`` points at the offending field."""

    code = "invalid-document"


def rational(q) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(s: str) -> Fraction:
    return Fraction(s)


def _is_int(v) -> bool:
    return isinstance(v, int) and not isinstance(v, bool)


def parse_document(text: str) -> tuple[Collection, str | None]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(f"malformed JSON: {e.msg} at line {e.lineno} column {e.colno}", "") from None
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object", "")
    if "n" not in doc:
        raise DocumentError("missing field 'n'", "n")
    n = doc["n"]
    if not _is_int(n) or n < 0:
        raise DocumentError("'n' must be a nonnegative integer", "n")
    name = doc.get("name")
    if name is not None and not isinstance(name, str):
        raise DocumentError("'name' must be a string", "name")
    supports = doc.get("supports")
    if not isinstance(supports, list) or not supports:
        raise DocumentError("'supports' must be a nonempty list", "supports")
    parsed = []
    for i, S in enumerate(supports):
        path = f"supports[{i}]"
        if not isinstance(S, list) or not S:
            raise DocumentError("support must be a nonempty list of vectors", path)
        pts = []
        for j, v in enumerate(S):
            vpath = f"{path}[{j}]"
            if not isinstance(v, list) or not all(_is_int(a) for a in v):
                raise DocumentError("vector must be a list of integers", vpath)
            if len(v) != n:
                raise DocumentError(f"vector has length {len(v)}, expected n={n}", vpath)
            pts.append(tuple(v))
        if len(set(pts)) != len(pts):
            warnings.warn(f"{path}: duplicate points removed", stacklevel=2)
        parsed.append(SupportSet.of(pts, n))
    return Collection(n, tuple(parsed)), name


def parse_collection(text: str) -> Collection:
    return parse_document(text)[0]


def collection_payload(c: Collection, name: str | None = None) -> dict[str, Any]:
    doc: dict[str, Any] = {"n": c.n, "supports": [[list(p) for p in A.points] for A in c.supports]}
    if name is not None:
        doc["name"] = name
    return doc


def serialize_collection(c: Collection, name: str | None = None) -> str:
    return json.dumps(collection_payload(c, name), sort_keys=True)


def digest(c: Collection) -> str:
    canon = json.dumps(collection_payload(c), sort_keys=True, separators=(",", ":"))
    return "sha256:" + hashlib.sha256(canon.encode()).hexdigest()


def subset(J) -> list[int]:
    return sorted(J)


def analysis_payload(report, basis=None) -> dict[str, Any]:
    out = {
        "minimal_defect": report.minimal_defect,
        "essential": subset(report.essential),
        "codimension": report.codimension,
        "generically_consistent": report.generically_consistent,
    }
    if basis is not None:
        out["consistent_basis"] = subset(basis)
    if len(report.defects) <= 1 << 12:
        out["defects"] = [
            {"subset": subset(from_mask(m)), "defect": d} for m, d in enumerate(report.defects)
        ]
    return out


def reduction_payload(red) -> dict[str, Any]:
    return {
        "essential": subset(red.essential),
        "index": red.index,
        "fiber_dim": red.fiber_dim,
        "difference_lattice": red.difference_lattice.basis.tolist(),
        "saturated_lattice": red.saturated_lattice.basis.tolist(),
        "projection": red.quotient.matrix.tolist(),
        "residual_indices": list(red.residual_indices),
        "residual_supports": [[list(p) for p in A.points] for A in red.residual_supports],
    }


def count_payload(rep) -> dict[str, Any]:
    return {
        "predicted_count": rep.predicted_count,
        "factorial_factor": rep.factorial_factor,
        "index_factor": rep.index_factor,
        "mixed_volume_factor": rational(rep.mixed_volume_factor),
        "normalized_mixed_volume": rep.normalized_mixed_volume,
        "zero_set_dim": rep.zero_set_dim,
        "quotient_dim": rep.quotient_dim,
        "essential": subset(rep.essential),
    }


def mixed_volume_payload(mv) -> dict[str, Any]:
    return {"standard": rational(mv.standard), "normalized": mv.normalized}


def poly_payload(f) -> dict[str, Any]:
    return {"dim": f.dim, "terms": [{"exponent": list(e), "coefficient": rational(c)} for e, c in f.terms]}


def sample_payload(sample) -> dict[str, Any]:
    return {
        "seed": sample.seed,
        "witness": [rational(x) for x in sample.witness],
        "system": [poly_payload(f) for f in sample.system],
    }


def load_sample(payload: dict[str, Any]):
    from .oracle import ConsistentSample, LaurentPoly

    system = tuple(
        LaurentPoly.from_dict(
            f["dim"], {tuple(t["exponent"]): parse_rational(t["coefficient"]) for t in f["terms"]}
        )
        for f in payload["system"]
    )
    return ConsistentSample(
        system, tuple(parse_rational(x) for x in payload["witness"]), payload["seed"]
    )


def verification_payload(rep) -> dict[str, Any]:
    return {
        "predicted": rep.predicted,
        "trials": [{"seed": s, "oracle_count": k} for s, k in rep.trials],
        "agreement_fraction": rational(rep.agreement_fraction),
        "note": rep.note,
    }
