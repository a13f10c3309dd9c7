"""Built-in verification corpus and the end-to-end driver.

The corpus lives as data files next to this module: graphs and germ
descriptors in the same text formats the command line accepts, plus a JSON
manifest of expected values.  Every expected leaf in the manifest is a
``[value, source]`` pair whose source marks where the value comes from
("cited", "derived" or "trivial"); the driver only compares the values.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources

from .. import class_group, cyclic_quot, ell_calc, germ_rules, resolution
from ..dual_graph import (
    ClusterShape,
    ConfigGraph,
    exceptional_clusters,
    intersection_matrix,
    is_negative_definite,
    is_tree,
    parse_graph,
)
from ..exactlinalg import fmt


def _data_root():
    return resources.files("germcalc.cli_corpus").joinpath("data")


def read_data(name: str) -> str:
    return _data_root().joinpath(name).read_text(encoding="utf-8")


def load_corpus() -> dict:
    return json.loads(read_data("corpus.json"))


def _value(leaf):
    """Strip the source marker off a manifest leaf."""
    if isinstance(leaf, list) and len(leaf) == 2 and isinstance(leaf[1], str):
        return leaf[0]
    return leaf


# ---------------------------------------------------------------------------
# graph analysis shared by the CLI and the driver


def analyze_graph(
    g: ConfigGraph, point_index: int | None = None, assume_generator: bool = False
) -> dict:
    """Full analysis report for one configuration graph, as plain data."""
    report: dict = {
        "vertices": len(g.vertices),
        "exceptional": len(g.exceptional_ids()),
        "components": len(g.component_ids()),
        "tree": is_tree(g),
        "clusters": [],
        "k": [],
        "feasible": None,
        "primitivity": [],
        "notes": [],
    }
    clusters = exceptional_clusters(g)
    codisc_by_ci: dict[int, resolution.Codiscrepancy] = {}
    cluster_index: dict[int, int | None] = {}
    for ci, cluster in enumerate(clusters):
        entry: dict = {"ids": list(cluster.ids), "shape": cluster.shape.value}
        matrix = intersection_matrix(g, cluster.ids)
        entry["negative_definite"] = is_negative_definite(matrix)
        if not entry["negative_definite"]:
            entry["error"] = "cluster is not contractible"
            report["clusters"].append(entry)
            continue
        d = resolution.codiscrepancy(g, cluster)
        codisc_by_ci[ci] = d
        entry["codiscrepancy"] = {v: fmt(d.coeffs[v]) for v in cluster.ids}
        entry["class"] = resolution.singularity_class(d).value
        index: int | None = None
        if cluster.shape is ClusterShape.CHAIN:
            chain = cyclic_quot.HJChain(
                tuple(-g.by_id[v].self_int for v in cluster.ids)
            )
            quot = cyclic_quot.chain_to_quot(chain)
            cert = cyclic_quot.classify_T(quot)
            entry["chain"] = list(chain.entries)
            entry["quot"] = str(quot)
            entry["du_val"] = cyclic_quot.du_val_A(chain)
            entry["t"] = cert.verdict
            entry["t_index"] = cyclic_quot.t_index(cert) if cert.verdict else None
            if cert.verdict:
                index = cert.m
        if index is None and point_index is not None:
            index = point_index
            entry["assumed_index"] = point_index
        cluster_index[ci] = index
        report["clusters"].append(entry)

    if len(codisc_by_ci) == len(clusters):
        kreport = resolution.k_dot_components(g, list(codisc_by_ci.values()))
        for e in kreport.entries:
            line = {"id": e.component, "k": fmt(e.value), "k_negative": e.k_negative}
            if e.value == 0:
                line["note"] = "degree 0: infeasible"
            report["k"].append(line)
        report["feasible"] = kreport.germ_feasible
    else:
        report["notes"].append("skipping degree report: some cluster is not contractible")

    dv_extra = [
        c for c in report["clusters"]
        if c.get("du_val") is not None and len(report["clusters"]) > 1
    ]
    if dv_extra:
        report["notes"].append(
            "graph carries detached Du Val cluster(s) besides the main one"
        )

    if assume_generator or point_index is not None:
        report["primitivity_note"] = (
            "assumes the canonical divisor generates each local class group"
        )
        if any(v is None for v in cluster_index.values()):
            report["notes"].append(
                "some cluster has no recognised index; pass --point-index to "
                "enable its primitivity lines"
            )
        for ci, cluster in enumerate(clusters):
            m = cluster_index.get(ci)
            if m is None or ci not in codisc_by_ci:
                continue
            d = codisc_by_ci[ci]
            members = set(cluster.ids)
            for comp in g.component_ids():
                local = sum(
                    (d.coeffs[nb] for nb in g.adjacency[comp] if nb in members),
                    Fraction(0),
                )
                if local == 0:
                    continue
                rep = class_group.local_primitivity(local, m)
                report["primitivity"].append({
                    "component": comp,
                    "cluster": ci + 1,
                    "index": m,
                    "local_value": fmt(local),
                    "image_order": rep.image_order,
                    "splitting_degree": rep.splitting_degree,
                    "primitive": rep.primitive,
                })
    return report


def render_analysis(report: dict) -> list[str]:
    lines = [
        f"graph: {report['vertices']} vertices "
        f"({report['exceptional']} exceptional, {report['components']} components)",
        f"tree: {'yes' if report['tree'] else 'no'}",
    ]
    for i, c in enumerate(report["clusters"], 1):
        lines.append(
            f"cluster {i}: {' '.join(c['ids'])} ({c['shape']}), "
            f"negative definite: {'yes' if c['negative_definite'] else 'no'}"
        )
        if "error" in c:
            lines.append(f"  {c['error']}")
            continue
        coeffs = " ".join(f"{v}={c['codiscrepancy'][v]}" for v in c["ids"])
        lines.append(f"  codiscrepancy: {coeffs}")
        lines.append(f"  class: {c['class']}")
        if "chain" in c:
            chain = ",".join(str(a) for a in c["chain"])
            lines.append(f"  chain [{chain}] -> {c['quot']}")
            dv = c["du_val"]
            lines.append(f"  Du Val: {'A' + str(dv) if dv is not None else 'no'}")
            if c["t"]:
                lines.append(f"  class T: yes, index {c['t_index']}")
            else:
                lines.append("  class T: no")
        if "assumed_index" in c:
            lines.append(f"  assumed point index: {c['assumed_index']}")
    for entry in report["k"]:
        verdict = "K-negative" if entry["k_negative"] else "NOT K-negative"
        extra = f" ({entry['note']})" if "note" in entry else ""
        lines.append(f"K.C({entry['id']}) = {entry['k']}  [{verdict}]{extra}")
    if report["feasible"] is not None:
        lines.append(f"germ feasible: {'yes' if report['feasible'] else 'no'}")
    if report["primitivity"]:
        lines.append(f"primitivity ({report['primitivity_note']}):")
        for p in report["primitivity"]:
            verdict = "primitive" if p["primitive"] else (
                f"imprimitive, splitting degree {p['splitting_degree']}"
            )
            lines.append(
                f"  {p['component']} at cluster {p['cluster']} (index {p['index']}): "
                f"local class {p['local_value']}, image order {p['image_order']}, {verdict}"
            )
    for note in report["notes"]:
        lines.append(f"note: {note}")
    return lines


# ---------------------------------------------------------------------------
# the driver


@dataclass(frozen=True)
class CheckResult:
    case: str
    check: str
    ok: bool
    expected: str
    got: str

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        out = f"{status} {self.case}: {self.check}"
        if not self.ok:
            out += f" (expected {self.expected}, got {self.got})"
        return out


@dataclass
class VerifyReport:
    checks: list[CheckResult] = field(default_factory=list)
    sweep_lines: list[str] = field(default_factory=list)

    def add(self, case: str, check: str, expected, got) -> None:
        self.checks.append(
            CheckResult(case, check, expected == got, repr(expected), repr(got))
        )

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def render(self) -> list[str]:
        lines = [c.line() for c in self.checks]
        lines += self.sweep_lines
        failed = sum(1 for c in self.checks if not c.ok)
        lines.append(
            f"{len(self.checks)} checks, {failed} failed"
            if failed else f"{len(self.checks)} checks, all passed"
        )
        return lines


def _check_case(case: dict, report: VerifyReport) -> None:
    name = case["name"]
    if "graph" in case:
        g = parse_graph(read_data(case["graph"]))
        analysis = analyze_graph(g, point_index=case.get("point_index"))
        report.add(name, "tree", _value(case["is_tree"]), analysis["tree"])
        expected_clusters = case.get("clusters", [])
        report.add(name, "cluster count", len(expected_clusters), len(analysis["clusters"]))
        for want, got in zip(expected_clusters, analysis["clusters"]):
            cid = want["ids"][0]
            report.add(name, f"cluster {cid} members", want["ids"], got["ids"])
            report.add(name, f"cluster {cid} shape", _value(want["shape"]), got["shape"])
            report.add(name, f"cluster {cid} contractible",
                       _value(want["negative_definite"]), got["negative_definite"])
            for v, leaf in want["codiscrepancy"].items():
                report.add(name, f"coefficient {v}", _value(leaf),
                           got.get("codiscrepancy", {}).get(v))
            report.add(name, f"cluster {cid} class", _value(want["class"]), got.get("class"))
            if "chain" in want:
                report.add(name, f"cluster {cid} chain", _value(want["chain"]),
                           got.get("chain"))
                report.add(name, f"cluster {cid} quotient", _value(want["quot"]),
                           got.get("quot"))
                report.add(name, f"cluster {cid} class T", _value(want["t"]), got.get("t"))
                if _value(want["t"]):
                    report.add(name, f"cluster {cid} index", _value(want["t_index"]),
                               got.get("t_index"))
                report.add(name, f"cluster {cid} Du Val", _value(want["du_val"]),
                           got.get("du_val"))
        got_k = {e["id"]: e["k"] for e in analysis["k"]}
        for comp, leaf in case.get("k_values", {}).items():
            report.add(name, f"degree {comp}", _value(leaf), got_k.get(comp))
        report.add(name, "feasible", _value(case["feasible"]), analysis["feasible"])
        for comp, leaf in case.get("splitting", {}).items():
            got_deg = next(
                (p["splitting_degree"] for p in analysis["primitivity"]
                 if p["component"] == comp), None
            )
            report.add(name, f"splitting degree {comp}", _value(leaf), got_deg)
    if "global_split" in case:
        spec = case["global_split"]
        got = class_group.global_imprimitivity([tuple(p) for p in spec["points"]])
        report.add(name, "global splitting degree", _value(spec["degree"]), got.degree)
        report.add(name, "base singularity", _value(spec["base"]), got.base_singularity)
    for d in case.get("descriptors", []):
        descriptor = germ_rules.parse_descriptor(read_data(d["file"]))
        verdict = germ_rules.validate_against_table(descriptor)
        label = d["file"].rsplit(".", 1)[0]
        report.add(name, f"descriptor {label} accepted", True, verdict.accepted)
        report.add(name, f"descriptor {label} row", _value(d["row"]), verdict.row)


def verify_paper(sweep_max: int = 49, corpus: dict | None = None) -> VerifyReport:
    """Run every corpus case and the scripted sweeps; aggregate pass/fail."""
    data = corpus if corpus is not None else load_corpus()
    report = VerifyReport()
    for case in sorted(data["cases"], key=lambda c: c["name"]):
        _check_case(case, report)

    ic = ell_calc.ic_sweep(sweep_max)
    report.checks.append(CheckResult(
        "sweep", "rigid-chain exclusion", ic.all_contradicted,
        "all tuples contradicted", "ok" if ic.all_contradicted else "failure"))
    report.sweep_lines.append(
        f"sweep ic (max {sweep_max}): {ic.total} tuples, "
        f"{ic.survivors} reach the final step, "
        f"{'all contradicted' if ic.all_contradicted else 'FAILURE'}"
    )
    for sub in ("k3a", "kad"):
        summary = ell_calc.kad_sweep(sub, sweep_max)
        report.checks.append(CheckResult(
            "sweep", f"{sub} exclusion", summary.all_contradicted,
            "all tuples contradicted", "ok" if summary.all_contradicted else "failure"))
        report.sweep_lines.append(
            f"sweep {summary.script} (max {sweep_max}): {summary.total} tuples, "
            f"{'all contradicted' if summary.all_contradicted else 'FAILURE'}"
        )

    table = germ_rules.check_table2()
    report.checks.append(CheckResult(
        "table2", "flip table consistency", table.all_consistent,
        "all rows consistent", "ok" if table.all_consistent else "failure"))
    for check in table.checks:
        report.sweep_lines.append(
            f"table2 {check.row.germ_type} [{check.row.source_label}]: "
            f"{check.row.k_dot_c} -> {check.transferred} "
            f"{'ok' if check.consistent and check.unit_pairing else 'MISMATCH'}"
        )
    return report
