"""Run the analysis pipelines on a survey and render tables, DOT and JSON."""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Optional, Sequence

from . import analysis
from .collective import DEFAULT_NC_CAP, collective_awareness, distribution, focal_salience
from .core import Epinet
from .errors import DataError
from .formula import Bel, Lit, Not, Truth, belief_depth, format_formula
from .socnet import KINDS, maximal_cliques, to_dot as networks_to_dot
from .survey import SurveyBundle, build_issue_epinet, build_networks


@dataclass
class RunConfig:
    out: Optional[Path] = None
    absence_mode: str = "default"
    nc_cap: int = DEFAULT_NC_CAP
    statements: Optional[Sequence[str]] = None

    def __post_init__(self):
        if self.nc_cap < 1:
            raise ValueError("NC depth cap must be >= 1")
        if self.absence_mode not in analysis.ABSENCE_MODES:
            raise ValueError(f"unknown absence mode {self.absence_mode!r}")


@dataclass
class Results:
    bundle: SurveyBundle
    statements: tuple
    networks: dict
    centrality: dict
    cliques: dict
    correlations: list
    coherence: analysis.CoherenceTable
    epinet: Epinet
    epistemics: dict = field(default_factory=dict)


def fmt(value) -> str:
    if value is None:
        return "na"
    if isinstance(value, int):
        return str(value)
    return f"{value:.6f}"


def _num(value):
    return None if value is None else round(value, 12)


def epistemic_summary(epinet: Epinet, group: Sequence[str], statements: Sequence[str], nc_cap: int) -> dict:
    """Distribution, level-2 collective awareness and focal ranking of the true answers."""
    out = {"statements": {}, "focal": []}
    candidates = []
    for s in statements:
        t = epinet.propositions[s].truth
        if t is Truth.UNKNOWN:
            continue
        lit = Lit(s, t is Truth.TRUE)
        candidates.append(lit)
        count, frac = distribution(epinet, lit, group)
        c2, f2 = collective_awareness(epinet, lit, group, 2)
        out["statements"][s] = {
            "true_literal": format_formula(lit),
            "distribution": {"count": count, "fraction": _num(frac)},
            "awareness2": {"count": c2, "fraction": _num(f2)},
        }
    if candidates and len(group) >= 2:
        for score in focal_salience(epinet, candidates, group, nc_cap):
            out["focal"].append({"candidate": score.name, "depth": score.depth, "dyad3_fraction": _num(score.dyad3_fraction)})
    return out


def run_pipelines(bundle: SurveyBundle, key: Optional[Mapping] = None, config: Optional[RunConfig] = None) -> Results:
    config = config or RunConfig()
    key = bundle.answer_key if key is None else key
    statements = tuple(config.statements) if config.statements else tuple(bundle.statements())
    networks = build_networks(bundle)
    epinet = build_issue_epinet(bundle, key)
    for s in statements:
        if s not in epinet.propositions:
            raise DataError(f"unknown statement {s!r}")
    return Results(
        bundle=bundle,
        statements=statements,
        networks=networks,
        centrality=analysis.centrality_table(networks),
        cliques={k: maximal_cliques(networks[k]) for k in KINDS},
        correlations=analysis.centrality_knowledge_table(bundle, networks, statements, config.absence_mode),
        coherence=analysis.clique_coherence_table(bundle, networks, statements),
        epinet=epinet,
        epistemics=epistemic_summary(epinet, bundle.respondents, statements, config.nc_cap),
    )


# -- tables ----------------------------------------------------------------


def _csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue()


def centrality_csv(roster: Sequence[str], centrality: Mapping) -> str:
    """Agent rows; betweenness, degree and eigenvector columns per network."""
    header = ["agent"] + [f"{k}_{m}" for k in KINDS for m in analysis.MEASURES]
    rows = [header]
    for agent in roster:
        rows.append([agent] + [fmt(centrality[k][m].get(agent, 0.0)) for k in KINDS for m in analysis.MEASURES])
    return _csv(rows)


def correlations_csv(results: Results) -> str:
    cols = list(results.statements) + ["overall"]
    rows = [["network", "measure"] + [f"level2_{c}" for c in cols] + [f"level3_{c}" for c in cols]]
    for r in results.correlations:
        rows.append([r.network, r.measure] + [fmt(r.level2[c]) for c in cols] + [fmt(r.level3[c]) for c in cols])
    return _csv(rows)


def coherence_csv(results: Results) -> str:
    table = results.coherence
    stmts = list(table.statements)
    header = ["network", "members", "size", "pairs"] + stmts + ["overall"]
    header += [f"delta_{s}" for s in stmts] + ["delta_overall"]
    rows = [header]

    def line(network, row: analysis.CoherenceRow, delta):
        return (
            [network, ";".join(row.members), str(len(row.members)), str(row.pairs)]
            + [fmt(row.per_statement[s]) for s in stmts]
            + [fmt(row.overall)]
            + [fmt(delta.get(s)) for s in stmts + ["overall"]]
        )

    zero = {s: 0.0 for s in stmts + ["overall"]}
    rows.append(line("all", table.network, zero))
    baseline_overall = analysis.mean_defined(table.baseline.values())
    rows.append(["baseline", "binomial", "", ""] + [fmt(table.baseline[s]) for s in stmts] + [fmt(baseline_overall)] + ["na"] * (len(stmts) + 1))
    for c in table.cliques:
        rows.append(line(c.network, c.row, c.delta))
    return _csv(rows)


def report_dict(results: Results, config: RunConfig) -> dict:
    cent = {
        k: {m: {a: _num(float(v)) for a, v in sorted(vals.items())} for m, vals in results.centrality[k].items()}
        for k in KINDS
    }
    table = results.coherence

    def row(r: analysis.CoherenceRow) -> dict:
        return {
            "members": list(r.members),
            "pairs": r.pairs,
            "per_statement": {s: _num(v) for s, v in r.per_statement.items()},
            "overall": _num(r.overall),
        }

    return {
        "config": {
            "absence_mode": config.absence_mode,
            "nc_cap": config.nc_cap,
            "statements": list(results.statements),
        },
        "networks": {k: results.networks[k].to_dict() for k in KINDS},
        "centrality": cent,
        "cliques": {k: [list(c) for c in results.cliques[k]] for k in KINDS},
        "correlations": [
            {
                "network": r.network,
                "measure": r.measure,
                "level2": {s: _num(v) for s, v in r.level2.items()},
                "level3": {s: _num(v) for s, v in r.level3.items()},
            }
            for r in results.correlations
        ],
        "coherence": {
            "network": row(table.network),
            "baseline": {s: _num(v) for s, v in table.baseline.items()},
            "cliques": [
                dict(row(c.row), network=c.network, delta={s: _num(v) for s, v in c.delta.items()})
                for c in table.cliques
            ],
        },
        "epistemics": results.epistemics,
        "epinet": results.epinet.to_dict(),
    }


# -- DOT -------------------------------------------------------------------


def _q(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def epinet_to_dot(epinet: Epinet) -> str:
    """Agents as ellipses, propositions as boxes, first-order beliefs as solid
    edges, higher-order assertions as dashed agent-to-agent edges labeled with
    their order (prefixed with ``~`` when the inner belief is negated)."""
    lines = ["digraph epinet {", "  rankdir=LR;"]
    for a in sorted(epinet.agents):
        lines.append(f"  {_q(a)} [shape=ellipse];")
    for pid in sorted(epinet.propositions):
        p = epinet.propositions[pid]
        lines.append(f"  {_q('prop:' + pid)} [shape=box, label={_q(f'{pid} ({p.truth.value})')}];")
    edges = set()
    for f in epinet.assertions:
        body = f.body
        if isinstance(body, Lit):
            attrs = "style=solid" + ("" if body.positive else ', label="!"')
            edges.add((f.agent, "prop:" + body.prop, attrs))
            continue
        negated = isinstance(body, Not)
        inner = body.body if negated else body
        if isinstance(inner, Bel):
            order = belief_depth(f)
            label = ("~" if negated else "") + str(order)
            edges.add((f.agent, inner.agent, f'style=dashed, label="{label}"'))
    for src, dst, attrs in sorted(edges):
        lines.append(f"  {_q(src)} -> {_q(dst)} [{attrs}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def render_report(config: RunConfig, results: Results) -> list:
    """Write every report file into ``config.out``; returns the written paths."""
    out = Path(config.out)
    out.mkdir(parents=True, exist_ok=True)
    files = {
        "centrality.csv": centrality_csv(results.bundle.roster, results.centrality),
        "correlations.csv": correlations_csv(results),
        "coherence.csv": coherence_csv(results),
        "epinet.dot": epinet_to_dot(results.epinet),
        "networks.dot": networks_to_dot(results.networks[k] for k in KINDS),
        "report.json": json.dumps(report_dict(results, config), indent=2, sort_keys=True) + "\n",
    }
    written = []
    for name, text in files.items():
        path = out / name
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        written.append(path)
    return written
