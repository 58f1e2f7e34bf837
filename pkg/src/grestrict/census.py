"""Census of small transitive groups: ingest, classify, compare with the known exceptions."""

from __future__ import annotations

import hashlib
import json
import re
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

from .config import max_order
from .criteria import Overall, verdict
from .errors import DataError, GrestrictError, InvariantViolation, ResourceLimitError
from .group import PermutationGroup
from .props import affine_type, permutation_isomorphic, property_report
from .references import exception_groups

SCHEMA_VERSION = 1
LOW_DEGREE = 8


@dataclass
class TransitiveGroupRecord:
    degree: int
    label: str
    gens: list[str]
    name: str | None = None
    line: int = 0

    @cached_property
    def group(self) -> PermutationGroup:
        return PermutationGroup.from_text(self.gens, self.degree)

    def sort_key(self) -> tuple:
        m = re.search(r"(\d+)$", self.label)
        return (self.degree, int(m.group(1)) if m else 0, self.label)


def bundled_data_path() -> Path:
    return Path(str(resources.files("grestrict") / "data" / "transitive_groups.jsonl"))


def parse_records(lines: Iterable[str], source: str = "<input>") -> list[TransitiveGroupRecord]:
    """Validate JSON-lines records; every problem is reported with its line number."""
    out: list[TransitiveGroupRecord] = []
    problems: list[str] = []
    for lineno, raw in enumerate(lines, 1):
        text = raw.strip()
        if not text:
            continue
        where = f"{source}:{lineno}"
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as e:
            problems.append(f"{where}: invalid JSON ({e.msg})")
            continue
        if not isinstance(obj, dict) or not isinstance(obj.get("degree"), int) or not isinstance(obj.get("gens"), list):
            problems.append(f"{where}: record needs an integer 'degree' and a list 'gens'")
            continue
        deg = obj["degree"]
        label = str(obj.get("label", f"{deg}T?"))
        rec = TransitiveGroupRecord(deg, label, [str(g) for g in obj["gens"]], obj.get("name"), lineno)
        try:
            G = rec.group
        except (GrestrictError, ValueError) as e:
            problems.append(f"{where}: {label}: {e}")
            continue
        if not G.is_transitive():
            problems.append(f"{where}: {label}: generators are intransitive on {deg} points")
            continue
        out.append(rec)
    if problems:
        raise DataError(problems)
    return out


def ingest(path: str | Path | None = None) -> list[TransitiveGroupRecord]:
    """Read and validate a data file (default: the bundled catalog)."""
    p = Path(path) if path is not None else bundled_data_path()
    with open(p, encoding="utf-8") as fh:
        return parse_records(fh, p.name)


# ------------------------------------------------------------------ census

@dataclass
class CensusOptions:
    degrees: tuple[int, int] = (2, 13)
    bound: int | None = None
    identify_exceptions: bool = True

    def to_dict(self) -> dict:
        return {"degrees": list(self.degrees), "max_order": self.bound or max_order(),
                "identify_exceptions": self.identify_exceptions}


@dataclass
class CensusReport:
    options: dict
    rows: list[dict]
    aggregates: dict
    proposition_diff: dict
    resource_skips: list[dict] = field(default_factory=list)
    data_sha256: str | None = None

    def to_dict(self) -> dict:
        out = {"schema_version": SCHEMA_VERSION, "options": dict(self.options), "rows": self.rows,
               "aggregates": self.aggregates, "proposition_diff": self.proposition_diff,
               "resource_skips": self.resource_skips}
        if self.data_sha256:
            out["options"]["data_sha256"] = self.data_sha256
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    @property
    def unknown(self) -> list[dict]:
        return [r for r in self.rows if r["verdict"]["overall"] == Overall.UNKNOWN.value]


def classify(rec: TransitiveGroupRecord, bound: int | None = None) -> dict:
    """One census row: properties and verdict of a single record."""
    G = rec.group
    row: dict = {"degree": rec.degree, "label": rec.label, "name": rec.name, "order": G.order()}
    try:
        rep = property_report(G, with_affine=False, bound=bound)
        v = verdict(G, bound)
    except ResourceLimitError as e:
        row.update(properties=None, verdict={"overall": Overall.UNKNOWN.value, "constant": None, "decided_by": None,
                                              "primes": [], "trace": [], "witness": None},
                   skipped=str(e))
        return row
    props = {k: getattr(rep, k) for k in ("primitive", "quasiprimitive", "biquasiprimitive", "semiprimitive",
                                          "two_transitive", "regular")}
    if v.overall is Overall.UNKNOWN:
        try:
            props["affine_type"] = affine_type(G, bound)
        except ResourceLimitError:
            props["affine_type"] = None
    row["properties"] = props
    row["verdict"] = v.to_dict()
    return row


def _classify_star(args: tuple) -> dict:
    return classify(*args)


def _aggregate(rows: Sequence[dict]) -> dict:
    per: dict[str, Counter] = {}
    for r in rows:
        per.setdefault(str(r["degree"]), Counter())[r["verdict"]["overall"]] += 1
    totals = Counter()
    for c in per.values():
        totals.update(c)
    return {"by_degree": {d: dict(sorted(c.items())) for d, c in per.items()}, "total": dict(sorted(totals.items()))}


def _proposition_diff(rows: Sequence[dict], records: dict[str, TransitiveGroupRecord], opts: CensusOptions) -> dict:
    lo, hi = opts.degrees
    unknown = [r for r in rows if r["verdict"]["overall"] == Overall.UNKNOWN.value]
    found: dict[str, str | None] = {}
    matched: set[str] = set()
    for name, ref in exception_groups().items():
        found[name] = None
        if not lo <= ref.degree <= hi:
            found[name] = "out-of-range"
            continue
        for r in unknown:
            if r["degree"] == ref.degree and r["order"] == ref.order() and r["label"] not in matched:
                if not opts.identify_exceptions or permutation_isomorphic(records[r["label"]].group, ref):
                    found[name] = r["label"]
                    matched.add(r["label"])
                    break
    missing = [n for n, lab in found.items() if lab is None]
    extra = [{"label": r["label"], "degree": r["degree"], "order": r["order"], "name": r["name"],
              "primitive": r["properties"]["primitive"] if r["properties"] else None,
              "affine_type": r["properties"].get("affine_type") if r["properties"] else None}
             for r in unknown if r["label"] not in matched]
    residual = [e for e in extra if e["degree"] <= LOW_DEGREE]
    all_affine = all(e["primitive"] and e["affine_type"] for e in residual)
    if not residual:
        note = f"no residual Unknown groups of degree <= {LOW_DEGREE}"
    elif all_affine:
        note = (f"{len(residual)} residual Unknown group(s) of degree <= {LOW_DEGREE}, all primitive of affine type: "
                "the missing affine rule")
    else:
        note = f"{len(residual)} residual Unknown group(s) of degree <= {LOW_DEGREE} are not all primitive affine"
    return {
        "expected": list(found),
        "found": found,
        "missing": missing,
        "extra_unknown": extra,
        "extra_all_affine": all(e["primitive"] and e["affine_type"] for e in extra),
        "residual_low_degree": {"count": len(residual), "labels": [e["label"] for e in residual],
                                "all_primitive_affine": all_affine, "note": note},
    }


def run_census(records: Sequence[TransitiveGroupRecord], options: CensusOptions | None = None,
               jobs: int = 1, data_sha256: str | None = None) -> CensusReport:
    opts = options or CensusOptions()
    lo, hi = opts.degrees
    chosen = sorted((r for r in records if lo <= r.degree <= hi), key=TransitiveGroupRecord.sort_key)
    if jobs > 1 and len(chosen) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_classify_star, [(r, opts.bound) for r in chosen], chunksize=4))
    else:
        rows = [classify(r, opts.bound) for r in chosen]
    for r in rows:
        if r["verdict"]["overall"] == Overall.NOT_RESTRICTIVE.value and r["properties"]["semiprimitive"]:
            raise InvariantViolation(f"{r['label']} is semiprimitive but marked NotRestrictive")
        if r["verdict"]["overall"] != Overall.NOT_RESTRICTIVE.value and r["properties"] and not r["properties"]["semiprimitive"]:
            raise InvariantViolation(f"{r['label']} is not semiprimitive but not marked NotRestrictive")
    skips = [{"label": r["label"], "detail": r["skipped"]} for r in rows if "skipped" in r]
    for r in rows:
        for p in r["verdict"]["primes"]:
            if "resource limit" in p.get("detail", ""):
                skips.append({"label": r["label"], "detail": f"p={p['prime']}: {p['detail']}"})
    by_label = {r.label: r for r in chosen}
    diff = _proposition_diff(rows, by_label, opts) if rows else {
        "expected": [], "found": {}, "missing": [], "extra_unknown": [], "extra_all_affine": True,
        "residual_low_degree": {"count": 0, "labels": [], "all_primitive_affine": True, "note": "empty census"}}
    return CensusReport(opts.to_dict(), rows, _aggregate(rows), diff, skips, data_sha256)


def file_sha256(path: str | Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def format_table(report: CensusReport) -> str:
    lines = [f"{'degree':>6}  {'label':<8} {'order':>8}  {'semiprim':<8} {'verdict':<15} {'c':>12}  decided_by"]
    for r in report.rows:
        v = r["verdict"]
        sp = r["properties"]["semiprimitive"] if r["properties"] else "?"
        c = "" if v["constant"] is None else str(v["constant"])
        lines.append(f"{r['degree']:>6}  {r['label']:<8} {r['order']:>8}  {str(sp):<8} {v['overall']:<15} {c:>12}  "
                     f"{v['decided_by'] or '-'}")
    lines.append("")
    lines.append("counts by degree:")
    for d, c in report.aggregates["by_degree"].items():
        lines.append(f"  {d:>3}: " + ", ".join(f"{k} {n}" for k, n in c.items()))
    diff = report.proposition_diff
    lines.append("")
    lines.append("known exceptions:")
    for name, lab in diff["found"].items():
        lines.append(f"  {name}: {lab or 'MISSING'}")
    if diff["extra_unknown"]:
        lines.append("further Unknown groups (no implemented rule settles them):")
        for e in diff["extra_unknown"]:
            lines.append(f"  {e['label']} order {e['order']} primitive={e['primitive']} affine={e['affine_type']}")
    lines.append(diff["residual_low_degree"]["note"])
    for s in report.resource_skips:
        lines.append(f"resource limit: {s['label']}: {s['detail']}")
    return "\n".join(lines) + "\n"
