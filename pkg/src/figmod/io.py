"""Reading module description files and writing reports.

A description file is a single JSON document:

    {
      "field": "Q" | "Fp:<p>" | ["Fp", p],
      "group": "trivial" | "Z2" | "Z3" | "S3" | [[...], ...],
      "truncation": N,
      "generators": [{"degree": m, "dim": d, "action": [[...], ...]}, ...],
      "relations": [{"degree": n,
                     "terms": [{"gen": j, "inj": [...], "dec": [...],
                                "coeff": [...]}, ...]}, ...]
    }

Omitting a generator's "action" makes it a plain free generator (the
regular representation at its degree); an explicit action is a list of
matrices, one per standard generator of the degree-m automorphism group.
All scalars are decimal integers or "p/q" strings.
"""

import json
from fractions import Fraction

from . import __version__
from .exactla import QQ, FieldSpec, Matrix, FieldError
from .groups import GROUP_PRESETS, group_from_table, wreath_generators
from .figcat import FIGMorphism
from .figmodules import (GeneratorSummand, Presentation, Relation, realize,
                         NEG_INF)


class ParseError(ValueError):
    pass


def parse_field(spec):
    if isinstance(spec, str):
        if spec == "Q":
            return QQ
        if spec.startswith("Fp:"):
            spec = ["Fp", spec[3:]]
        else:
            raise ParseError("unknown field %r" % spec)
    if isinstance(spec, (list, tuple)) and len(spec) == 2 and spec[0] == "Fp":
        try:
            return FieldSpec(int(spec[1]))
        except (ValueError, FieldError) as exc:
            raise ParseError("bad prime field: %s" % exc)
    raise ParseError("unknown field %r" % (spec,))


def format_field(field):
    return "Q" if field.p is None else "Fp:%d" % field.p


def parse_group(spec):
    if isinstance(spec, str):
        if spec in GROUP_PRESETS:
            return GROUP_PRESETS[spec]()
        raise ParseError("unknown group preset %r" % spec)
    if isinstance(spec, list):
        try:
            return group_from_table(spec)
        except Exception as exc:
            raise ParseError("bad group table: %s" % exc)
    raise ParseError("group must be a preset name or a table")


def _matrix(field, rows, shape):
    try:
        data = [[field.of(x) for x in row] for row in rows]
        return Matrix(field, data, shape)
    except Exception as exc:
        raise ParseError("bad matrix: %s" % exc)


def parse_description(doc):
    """A parsed description: (Presentation, truncation)."""
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object")
    for key in ("field", "group", "truncation", "generators"):
        if key not in doc:
            raise ParseError("missing key %r" % key)
    field = parse_field(doc["field"])
    group = parse_group(doc["group"])
    truncation = doc["truncation"]
    if not isinstance(truncation, int) or truncation < 0:
        raise ParseError("truncation must be a non-negative integer")
    gens = []
    for g in doc["generators"]:
        degree = g.get("degree")
        if not isinstance(degree, int) or degree < 0:
            raise ParseError("generator degree must be a non-negative integer")
        if "action" in g and g["action"] is not None:
            dim = g.get("dim")
            ngen = len(wreath_generators(group, degree))
            mats = g["action"]
            if not isinstance(dim, int) or dim < 1:
                raise ParseError("explicit action needs a positive dim")
            if len(mats) != ngen:
                raise ParseError(
                    "generator at degree %d needs %d action matrices"
                    % (degree, ngen))
            gens.append(GeneratorSummand(
                degree, dim, [_matrix(field, m, (dim, dim)) for m in mats]))
        else:
            gens.append(GeneratorSummand(degree, 0, None))
    rels = []
    for rel in doc.get("relations", []):
        rdeg = rel.get("degree")
        if not isinstance(rdeg, int) or rdeg < 0:
            raise ParseError("relation degree must be a non-negative integer")
        terms = []
        for t in rel.get("terms", []):
            j = t.get("gen")
            if not isinstance(j, int) or not (0 <= j < len(gens)):
                raise ParseError("relation term names generator %r" % (j,))
            src = gens[j].degree
            inj = t.get("inj", [])
            dec = t.get("dec", [0] * src)
            try:
                mor = FIGMorphism(src, rdeg, inj, dec)
            except Exception as exc:
                raise ParseError("bad relation morphism: %s" % exc)
            coeff = [field.of(c) for c in t.get("coeff", [])]
            terms.append((j, mor, coeff))
        rels.append(Relation(rdeg, terms))
    try:
        pres = Presentation(field, group, gens, rels)
    except Exception as exc:
        raise ParseError("inconsistent presentation: %s" % exc)
    return pres, truncation


def load_description(path):
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError("cannot read %s: %s" % (path, exc))
    return parse_description(doc)


def description_dict(pres, truncation):
    """Serialize a presentation back to the file format."""
    field = pres.field
    doc = {
        "field": format_field(field),
        "group": pres.group.name or [list(r) for r in pres.group.mul],
        "truncation": truncation,
        "generators": [],
        "relations": [],
    }
    for g in pres.generators:
        doc["generators"].append({"degree": g.degree, "dim": g.dim})
    for rel in pres.relations:
        terms = []
        for j, mor, coeff in rel.terms:
            terms.append({"gen": j, "inj": list(mor.inj),
                          "dec": list(mor.dec),
                          "coeff": [format_scalar(field, c) for c in coeff]})
        doc["relations"].append({"degree": rel.degree, "terms": terms})
    return doc


def format_scalar(field, x):
    if field.p is not None:
        return int(x)
    num, den = int(x.numerator), int(x.denominator)
    return num if den == 1 else "%d/%d" % (num, den)


def jsonable(x):
    """Recursively convert report values into plain JSON types.

    Infinities become the strings "inf"/"-inf"; exact rationals become
    integers or "p/q" strings; tuples become lists.
    """
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, float):
        if x == float("inf"):
            return "inf"
        if x == float("-inf"):
            return "-inf"
        raise ValueError("unexpected non-integral float in report: %r" % x)
    if isinstance(x, Fraction) or (hasattr(x, "numerator")
                                   and not isinstance(x, int)):
        num, den = int(x.numerator), int(x.denominator)
        return num if den == 1 else "%d/%d" % (num, den)
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        return x
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    raise ValueError("cannot serialize %r" % (x,))


def report_json(report):
    """Canonical JSON bytes for a report: sorted keys, no whitespace
    variation, a version stamp.  Identical inputs yield identical bytes."""
    doc = dict(report)
    doc["version"] = __version__
    return json.dumps(jsonable(doc), sort_keys=True,
                      separators=(",", ":")).encode() + b"\n"


def _fmt_value(v):
    if v == float("inf"):
        return "inf"
    if v == float("-inf") or v == NEG_INF:
        return "-inf"
    if isinstance(v, tuple) and len(v) == 2 and v[0] == "ge":
        return ">=%d" % v[1]
    return str(v)


def report_text(report):
    """Aligned human-readable rendering of an analysis report."""
    lines = []
    lines.append("field %s  group %s  truncation %d"
                 % (report["field"], report["group"], report["truncation"]))
    dec = report["declared"]
    lines.append("declared generation degree %s, relation degree %s"
                 % (_fmt_value(dec["generation_degree"]),
                    _fmt_value(dec["relation_degree"])))
    inv = report["invariants"]
    rows = []
    for key in sorted(inv):
        entry = inv[key]
        if key == "hd":
            for i in sorted(entry, key=int):
                rows.append(("hd_%s" % i, _fmt_value(entry[i]["value"]),
                             entry[i]["certified"]))
        elif key == "torsion":
            rows.append(("torsion_free", str(entry["torsion_free"]),
                         entry["certified"]))
            rows.append(("torsion_dims", str(entry["dims"]),
                         entry["certified"]))
        elif key == "hilbert":
            rows.append(("hilbert_values", str(entry["values"]),
                         entry["certified"]))
            if entry.get("polynomial") is not None:
                poly = " + ".join(
                    "%s n^%d" % (c, k) if k else str(c)
                    for k, c in enumerate(entry["polynomial"]))
                rows.append(("hilbert_polynomial", poly, entry["certified"]))
                rows.append(("stable_from", str(entry["stable_from"]),
                             entry["certified"]))
                rows.append(("agrees_from", str(entry["agrees_from"]),
                             entry["certified"]))
        elif key == "sharp_filtered":
            rows.append((key, str(entry["value"]), entry["certified"]))
            if entry.get("witness"):
                rows.append(("filtration", str(entry["witness"]),
                             entry["certified"]))
        else:
            val = entry["value"] if isinstance(entry, dict) else entry
            rows.append((key, _fmt_value(val), entry.get("certified", True)))
    width = max((len(r[0]) for r in rows), default=0)
    for name, val, certified in rows:
        tag = "certified" if certified else "within truncation only"
        lines.append("  %-*s  %-24s [%s]" % (width, name, val, tag))
    return "\n".join(lines) + "\n"
