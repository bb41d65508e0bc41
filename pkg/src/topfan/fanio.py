"""Versioned exact file formats: fan documents and machine-readable reports.

Fan documents are JSON with rational entries serialized as strings like
"3/4" or "2"; floats are rejected so no precision is silently lost.
Unknown fields are errors.  Emission is canonical (sorted keys, fixed
separators), so equal values produce byte-identical documents.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .fan import (
    Classification,
    CombinatoricsReport,
    CompletenessReport,
    NonsingularReport,
    PropernessReport,
    SimplexDetRecord,
    ValidityReport,
    make_fan,
    ray_data,
)

FAN_FORMAT_VERSION = 1
REPORT_FORMAT_VERSION = 1


class FanFormatError(ValueError):
    pass


def _parse_rational(value, where):
    if isinstance(value, bool) or isinstance(value, float):
        raise FanFormatError(f"{where}: rational entries must be strings or integers, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError):
            raise FanFormatError(f"{where}: cannot parse rational {value!r}") from None
    raise FanFormatError(f"{where}: cannot parse rational {value!r}")


def _parse_int(value, where):
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise FanFormatError(f"{where}: expected an integer, got {value!r}")
    try:
        return int(value)
    except ValueError:
        raise FanFormatError(f"{where}: expected an integer, got {value!r}") from None


def rational_str(x):
    return str(Fraction(x))


def fan_to_dict(fan):
    return {
        "version": FAN_FORMAT_VERSION,
        "dimension": fan.dimension,
        "rays": fan.ray_count,
        "maximal_simplices": [sorted(s) for s in fan.maximal_simplices],
        "beta": [
            {
                "b": [rational_str(x) for x in rec.b],
                "c": [rational_str(x) for x in rec.c],
                "v": list(rec.v),
            }
            for rec in fan.beta
        ],
    }


def fan_from_dict(doc):
    if not isinstance(doc, dict):
        raise FanFormatError("fan document must be a mapping")
    expected = {"version", "dimension", "rays", "maximal_simplices", "beta"}
    unknown = set(doc) - expected
    if unknown:
        raise FanFormatError(f"unknown fields: {sorted(unknown)}")
    missing = expected - set(doc)
    if missing:
        raise FanFormatError(f"missing fields: {sorted(missing)}")
    if doc["version"] != FAN_FORMAT_VERSION:
        raise FanFormatError(f"unsupported version {doc['version']!r}")
    dimension = _parse_int(doc["dimension"], "dimension")
    rays = _parse_int(doc["rays"], "rays")
    simplices = []
    for simplex in doc["maximal_simplices"]:
        simplices.append([_parse_int(i, "maximal_simplices") for i in simplex])
    beta = []
    for idx, rec in enumerate(doc["beta"], start=1):
        where = f"beta[{idx}]"
        if set(rec) != {"b", "c", "v"}:
            raise FanFormatError(f"{where}: expected exactly the fields b, c, v")
        beta.append(
            ray_data(
                [_parse_rational(x, where + ".b") for x in rec["b"]],
                [_parse_rational(x, where + ".c") for x in rec["c"]],
                [_parse_int(x, where + ".v") for x in rec["v"]],
            )
        )
    try:
        return make_fan(dimension, rays, simplices, beta)
    except ValueError as exc:
        raise FanFormatError(str(exc)) from None


def dumps(doc):
    """Canonical JSON emission (deterministic bytes for equal values)."""
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def emit_fan(fan):
    return dumps(fan_to_dict(fan))


def parse_fan(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FanFormatError(f"not valid JSON: {exc}") from None
    return fan_from_dict(doc)


def load_fan(path):
    with open(path, encoding="utf-8") as handle:
        return parse_fan(handle.read())


def save(path, text):
    """Atomic write: temp file in place, then rename."""
    import os
    import tempfile

    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".topfan-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


# ---------------------------------------------------------------------------
# Report serialization (machine format; round-trips exactly).


def _vec(values):
    return [rational_str(x) for x in values]


def _parse_vec(values):
    return tuple(Fraction(x) for x in values)


def validity_to_dict(report):
    comb = report.combinatorics
    out = {
        "version": REPORT_FORMAT_VERSION,
        "kind": "validity",
        "valid": report.valid,
        "combinatorics": {
            "purity_ok": comb.purity_ok,
            "purity_witness": comb.purity_witness,
            "coverage_ok": comb.coverage_ok,
            "missing_rays": comb.missing_rays,
            "no_duplicates_ok": comb.no_duplicates_ok,
            "duplicates": comb.duplicates,
            "ridge_ok": comb.ridge_ok,
            "ridge_witness": comb.ridge_witness,
        },
        "nonsingular": None,
        "properness": None,
        "completeness": None,
    }
    if report.nonsingular is not None:
        out["nonsingular"] = {
            "ok": report.nonsingular.ok,
            "records": [
                {
                    "simplex": list(r.simplex),
                    "det_v": r.det_v,
                    "det_b": rational_str(r.det_b),
                    "ok": r.ok,
                }
                for r in report.nonsingular.records
            ],
        }
    if report.properness is not None:
        p = report.properness
        out["properness"] = {
            "ok": p.ok,
            "mode": p.mode,
            "seed": p.seed,
            "failures": [
                {"first": list(i), "second": list(j), "witness": _vec(w)}
                for i, j, w in p.failures
            ],
        }
    if report.completeness is not None:
        c = report.completeness
        out["completeness"] = {
            "ok": c.ok,
            "mode": c.mode,
            "seed": c.seed,
            "samples": c.samples,
            "witness": _vec(c.witness) if c.witness is not None else None,
        }
    return out


def validity_from_dict(doc):
    if doc.get("kind") != "validity" or doc.get("version") != REPORT_FORMAT_VERSION:
        raise FanFormatError("not a validity report document")
    comb = doc["combinatorics"]
    report = ValidityReport(
        combinatorics=CombinatoricsReport(
            purity_ok=comb["purity_ok"],
            purity_witness=[list(w) for w in comb["purity_witness"]],
            coverage_ok=comb["coverage_ok"],
            missing_rays=list(comb["missing_rays"]),
            no_duplicates_ok=comb["no_duplicates_ok"],
            duplicates=[list(w) for w in comb["duplicates"]],
            ridge_ok=comb["ridge_ok"],
            ridge_witness=[list(w) for w in comb["ridge_witness"]],
        )
    )
    if doc["nonsingular"] is not None:
        report.nonsingular = NonsingularReport(
            records=[
                SimplexDetRecord(
                    simplex=tuple(r["simplex"]),
                    det_v=r["det_v"],
                    det_b=Fraction(r["det_b"]),
                    ok=r["ok"],
                )
                for r in doc["nonsingular"]["records"]
            ]
        )
    if doc["properness"] is not None:
        p = doc["properness"]
        report.properness = PropernessReport(
            ok=p["ok"],
            mode=p["mode"],
            seed=p["seed"],
            failures=[
                (tuple(f["first"]), tuple(f["second"]), _parse_vec(f["witness"]))
                for f in p["failures"]
            ],
        )
    if doc["completeness"] is not None:
        c = doc["completeness"]
        report.completeness = CompletenessReport(
            ok=c["ok"],
            mode=c["mode"],
            seed=c["seed"],
            samples=c["samples"],
            witness=_parse_vec(c["witness"]) if c["witness"] is not None else None,
        )
    return report


def _beta_to_list(beta):
    return [
        {"b": _vec(rec.b), "c": _vec(rec.c), "v": list(rec.v)}
        for rec in beta
    ]


def _beta_from_list(items):
    return tuple(ray_data(_parse_vec(r["b"]), _parse_vec(r["c"]), r["v"]) for r in items)


def path_to_dict(path):
    return {
        "version": REPORT_FORMAT_VERSION,
        "kind": "deformation_path",
        "dimension": path.dimension,
        "rays": path.ray_count,
        "maximal_simplices": [sorted(s) for s in path.maximal_simplices],
        "segments": [
            {
                "label": seg.label,
                "beta_start": _beta_to_list(seg.beta_start),
                "beta_end": _beta_to_list(seg.beta_end),
            }
            for seg in path.segments
        ],
    }


def path_from_dict(doc):
    from .deform import DeformationPath, Segment

    if doc.get("kind") != "deformation_path" or doc.get("version") != REPORT_FORMAT_VERSION:
        raise FanFormatError("not a deformation path document")
    return DeformationPath(
        dimension=doc["dimension"],
        ray_count=doc["rays"],
        maximal_simplices=tuple(frozenset(s) for s in doc["maximal_simplices"]),
        segments=tuple(
            Segment(
                label=seg["label"],
                beta_start=_beta_from_list(seg["beta_start"]),
                beta_end=_beta_from_list(seg["beta_end"]),
            )
            for seg in doc["segments"]
        ),
    )


def certificate_to_dict(cert):
    return {
        "version": REPORT_FORMAT_VERSION,
        "kind": "regularity_certificate",
        "ok": cert.ok,
        "segments": [
            {
                "label": seg.label,
                "samples": seg.samples,
                "seed": seg.seed,
                "verdicts": [[rational_str(t), bool(v)] for t, v in seg.verdicts],
                "ok": seg.ok,
            }
            for seg in cert.segments
        ],
    }


def certificate_from_dict(doc):
    from .deform import RegularityCertificate, SegmentCertificate

    if doc.get("kind") != "regularity_certificate" or doc.get("version") != REPORT_FORMAT_VERSION:
        raise FanFormatError("not a regularity certificate document")
    return RegularityCertificate(
        segments=[
            SegmentCertificate(
                label=seg["label"],
                samples=seg["samples"],
                seed=seg["seed"],
                verdicts=[(Fraction(t), v) for t, v in seg["verdicts"]],
                ok=seg["ok"],
            )
            for seg in doc["segments"]
        ]
    )


def classification_to_dict(cls):
    return {
        "version": REPORT_FORMAT_VERSION,
        "kind": "classification",
        "toric": cls.toric,
        "nice": cls.nice,
        "ray_flags": [list(f) for f in cls.ray_flags],
    }


def classification_from_dict(doc):
    if doc.get("kind") != "classification" or doc.get("version") != REPORT_FORMAT_VERSION:
        raise FanFormatError("not a classification report document")
    return Classification(
        toric=doc["toric"],
        nice=doc["nice"],
        ray_flags=tuple(tuple(f) for f in doc["ray_flags"]),
    )
