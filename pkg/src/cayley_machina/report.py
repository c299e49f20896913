"""Text and structured (JSON) renderings of analysis, closure, free-check
and sweep results. Structured documents carry ``format`` and ``kind`` keys
and are stable across runs for fixed inputs."""

from __future__ import annotations

import csv
import io
import json

from .catalog import SweepReport, format_table
from .closure import Certificate, ClosureReport, FreeCheckReport
from .green import CriterionVerdict, GreenStructure, schutzenberger
from .semigroup import FiniteSemigroup, classify

FORMAT = "cayley-machina/1"


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _verdict_reason(v: CriterionVerdict, dual: bool) -> str:
    if not v.h_trivial:
        return "infinite (not H-trivial)"
    if dual and v.right_zero_pair is not None:
        e, f = v.right_zero_pair
        return f"infinite (R-related idempotent pair {e},{f})"
    return "finite"


# ---------------------------------------------------------------- analyze

def analysis_doc(s: FiniteSemigroup, g: GreenStructure, v: CriterionVerdict) -> dict:
    flags = classify(s)
    h_groups = []
    for cls in g.classes("h"):
        sg = schutzenberger(s, cls[0], g)
        h_groups.append({"h_class": cls, "stabilizer": list(sg.stabilizer_t), "group_order": len(sg.maps)})
    return {
        "format": FORMAT,
        "kind": "analysis",
        "order": s.order,
        "table": [list(r) for r in s.table],
        "flags": {k: (sorted(x) if isinstance(x, frozenset) else x) for k, x in flags.items()},
        "green": {
            "r_classes": g.classes("r"),
            "l_classes": g.classes("l"),
            "h_classes": g.classes("h"),
            "d_classes": g.classes("d"),
        },
        "d_order": sorted([lo, hi] for lo, hi in g.d_order),
        "maximal_d": sorted(g.maximal_d),
        "ideal_i": sorted(g.ideal_i),
        "eggbox": {str(d): g.eggbox(d) for d in range(len(g.classes("d")))},
        "criteria": {
            "h_trivial": v.h_trivial,
            "right_zero_pair": list(v.right_zero_pair) if v.right_zero_pair else None,
            "cayley_finite": v.cayley_finite,
            "dual_finite": v.dual_finite,
        },
        "verdicts": {"cayley": _verdict_reason(v, False), "dual": _verdict_reason(v, True)},
        "schutzenberger": h_groups,
    }


def analysis_text(doc: dict) -> str:
    out = [f"order: {doc['order']}"]
    flags = doc["flags"]
    out.append("flags: " + ", ".join(f"{k}={v}" for k, v in flags.items()))
    gr = doc["green"]
    out.append(
        "green classes: "
        + ", ".join(f"{rel[0].upper()}={len(gr[rel])}" for rel in ("r_classes", "l_classes", "h_classes", "d_classes"))
    )
    out.append("egg-box:")
    for d, grid in doc["eggbox"].items():
        mark = " (maximal)" if int(d) in doc["maximal_d"] else ""
        out.append(f"  D{d}{mark}:")
        for row in grid:
            out.append("    | " + " | ".join(",".join(map(str, cell)) for cell in row) + " |")
    out.append(f"maximal D-classes: {doc['maximal_d']}")
    out.append(f"ideal I: {doc['ideal_i']}")
    c = doc["criteria"]
    out.append(f"H-trivial: {c['h_trivial']}")
    out.append(f"right zero pair: {c['right_zero_pair']}")
    out.append(f"C(S): {doc['verdicts']['cayley']}")
    out.append(f"C*(S): {doc['verdicts']['dual']}")
    out.append("Schützenberger groups:")
    for h in doc["schutzenberger"]:
        out.append(f"  H={h['h_class']} |Γ(H)|={h['group_order']}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------- closure

def closure_doc(r: ClosureReport, dual: bool, source: str) -> dict:
    doc = {
        "format": FORMAT,
        "kind": "closure",
        "source": source,
        "machine": "dual_cayley" if dual else "cayley",
        "verdict": r.verdict,
        "generator_count": r.generator_count,
        "growth_by_length": list(r.growth_by_length),
    }
    if r.finite:
        doc["size"] = r.size
        doc["words"] = [list(w) for w in r.words]
        doc["table"] = [list(row) for row in r.table]
    else:
        doc["elements_found"] = r.elements_found
        doc["limit"] = r.limit
    return doc


def closure_text(doc: dict) -> str:
    out = [f"machine: {doc['machine']}", f"generators: {doc['generator_count']}"]
    if doc["verdict"] == "finite":
        out.append(f"verdict: finite size {doc['size']}")
    else:
        out.append(f"verdict: exhausted {doc['elements_found']} (limit: {doc['limit']})")
    out.append("growth_by_length: " + " ".join(map(str, doc["growth_by_length"])))
    text = "\n".join(out) + "\n"
    if doc["verdict"] == "finite":
        words = "\n".join(f"{i}: " + ".".join(map(str, w)) for i, w in enumerate(doc["words"]))
        text += format_table(doc["table"], comment="closure multiplication table\nelement words:\n" + words)
    return text


# ---------------------------------------------------------------- free check

def free_check_doc(r: FreeCheckReport, dual: bool, source: str) -> dict:
    return {
        "format": FORMAT,
        "kind": "free_check",
        "source": source,
        "machine": "dual_cayley" if dual else "cayley",
        "length": r.length,
        "generator_count": r.generator_count,
        "distinct_counts": list(r.distinct_counts),
        "is_free_up_to_L": r.is_free_up_to_L,
        "total_words": r.total_words,
        "total_distinct": r.total_distinct,
    }


def free_check_text(doc: dict) -> str:
    status = f"free up to {doc['length']}" if doc["is_free_up_to_L"] else "not free"
    return (
        f"machine: {doc['machine']}\n"
        f"generators: {doc['generator_count']}\n"
        f"distinct_counts: {' '.join(map(str, doc['distinct_counts']))}\n"
        f"{status}\n"
    )


def certificate_doc(c: Certificate | None) -> dict | None:
    if c is None:
        return None
    return {
        "kind": c.kind,
        "witnesses": list(c.witnesses),
        "pair": list(c.pair) if c.pair else None,
        "h_class": list(c.h_class) if c.h_class else None,
        "stabilizer_t": list(c.stabilizer_t) if c.stabilizer_t else None,
        "witness_words_checked": c.witness_words_checked,
        "distinct_counts": list(c.distinct_counts),
        "all_distinct": c.all_distinct,
    }


# ---------------------------------------------------------------- sweep

TSV_COLUMNS = (
    "canonical_id", "h_trivial", "right_zero_pair",
    "cayley_verdict", "cayley_size", "dual_verdict", "dual_size",
    "cayley_certificate", "dual_certificate", "mismatch",
)


def _cert_kind(summary):
    return summary.split("{", 1)[0] if summary else ""


def sweep_doc(r: SweepReport) -> dict:
    return {
        "format": FORMAT,
        "kind": "sweep",
        "order": r.order,
        "counts": dict(r.counts),
        "mismatches": r.mismatches,
        "records": [
            {
                "canonical_id": rec.canonical_id,
                "table": [list(row) for row in rec.table],
                "h_trivial": rec.h_trivial,
                "right_zero_pair": list(rec.right_zero_pair) if rec.right_zero_pair else None,
                "predicted": {"cayley_finite": rec.cayley_finite_predicted, "dual_finite": rec.dual_finite_predicted},
                "cayley": {"verdict": rec.cayley_verdict, "size": rec.cayley_size, "limit": rec.cayley_limit,
                           "growth_by_length": list(rec.cayley_growth), "certificate": rec.cayley_certificate},
                "dual": {"verdict": rec.dual_verdict, "size": rec.dual_size, "limit": rec.dual_limit,
                         "growth_by_length": list(rec.dual_growth), "certificate": rec.dual_certificate},
                "mismatches": list(rec.mismatches),
            }
            for rec in r.records
        ],
    }


def sweep_tsv(r: SweepReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, delimiter="\t", lineterminator="\n")
    w.writerow(TSV_COLUMNS)
    for rec in r.records:
        pair = f"{rec.right_zero_pair[0]},{rec.right_zero_pair[1]}" if rec.right_zero_pair else ""
        w.writerow([
            rec.canonical_id, int(rec.h_trivial), pair,
            rec.cayley_verdict, rec.cayley_size, rec.dual_verdict, rec.dual_size,
            _cert_kind(rec.cayley_certificate), _cert_kind(rec.dual_certificate),
            int(bool(rec.mismatches)),
        ])
    return buf.getvalue()


def sweep_text(doc: dict) -> str:
    c = doc["counts"]
    out = [
        f"order: {doc['order']}",
        f"classes: {c['classes']}",
        f"H-trivial: {c['h_trivial']}",
        f"C(S) finite: {c['cayley_finite']} (predicted {c['cayley_finite_predicted']})",
        f"C*(S) finite: {c['dual_finite']} (predicted {c['dual_finite_predicted']})",
        f"mismatches: {c['mismatches']}",
    ]
    out.extend(f"  {m}" for m in doc["mismatches"])
    return "\n".join(out) + "\n"
