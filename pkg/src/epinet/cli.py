"""``epinet`` command-line interface.

Exit codes: 0 success, 1 usage error, 2 data or schema error, 3 computation
error (for example a knowledge query touching a proposition of Unknown
truth). Diagnostics go to stderr; machine output goes to stdout or files.
"""
from __future__ import annotations

import argparse
import itertools
import json
import sys
from pathlib import Path

from . import analysis, report
from .collective import DEFAULT_NC_CAP, collective_awareness, distribution, dyad_cohesion, focal_salience, nc_level_dyad
from .core import Epinet
from .errors import ComputationError, DataError
from .formula import Lit, Truth, evaluate, parse
from .socnet import KINDS, maximal_cliques, to_dot as networks_to_dot
from .states import awareness_level, classify_state, has_confidence, is_oblivious
from .survey import build_issue_epinet, build_networks, build_perception_epinet, load_answer_key, parse_survey

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_COMPUTE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}\n{self.format_usage()}")


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _csv_list(text: str) -> list:
    items = [s.strip() for s in text.split(",") if s.strip()]
    if not items:
        raise argparse.ArgumentTypeError("empty list")
    return items


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="epinet", description="Epistemic network analysis.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def command(name, help, *, survey=False, epinet=False, fmt=None):
        p = sub.add_parser(name, help=help)
        if survey:
            p.add_argument("--survey", required=True, type=Path)
            p.add_argument("--answer-key", type=Path)
        if epinet:
            p.add_argument("--epinet", required=True, type=Path)
        if fmt:
            p.add_argument("--format", choices=fmt, default=fmt[0])
        return p

    p = command("ingest", "compile a survey into epinets and tie networks", survey=True, fmt=("json", "dot"))
    p.add_argument("--out", type=Path)
    command("centrality", "centrality table per network", survey=True, fmt=("csv", "json"))
    command("cliques", "maximal cliques per network", survey=True, fmt=("json", "csv", "dot"))
    p = command("epistemics", "individual and collective epistemic states", epinet=True, fmt=("json", "csv", "dot"))
    p.add_argument("--nc-cap", type=_positive, default=DEFAULT_NC_CAP)
    p = command("focal", "rank candidate focal points", epinet=True, fmt=("json", "csv"))
    p.add_argument("--statements", type=_csv_list, required=True, help="candidate literals, e.g. p,!q")
    p.add_argument("--nc-cap", type=_positive, default=DEFAULT_NC_CAP)
    p = command("coherence", "clique versus network belief coherence", survey=True, fmt=("csv", "json"))
    p.add_argument("--statements", type=_csv_list)
    p = command("correlate", "centrality versus level-2/3 accuracy", survey=True, fmt=("csv", "json"))
    p.add_argument("--statements", type=_csv_list)
    p.add_argument("--absence-mode", choices=analysis.ABSENCE_MODES, default="default")
    p = command("eval", "evaluate a formula against an epinet", epinet=True)
    p.add_argument("formula")
    p = command("report", "run every pipeline and write all report files", survey=True)
    p.add_argument("--out", type=Path, required=True)
    p.add_argument("--statements", type=_csv_list)
    p.add_argument("--absence-mode", choices=analysis.ABSENCE_MODES, default="default")
    p.add_argument("--nc-cap", type=_positive, default=DEFAULT_NC_CAP)
    return parser


def _load_survey(args):
    bundle = parse_survey(args.survey)
    key = load_answer_key(args.answer_key) if args.answer_key else bundle.answer_key
    return bundle, key


def _config(args) -> report.RunConfig:
    return report.RunConfig(
        out=getattr(args, "out", None),
        absence_mode=getattr(args, "absence_mode", "default"),
        nc_cap=getattr(args, "nc_cap", DEFAULT_NC_CAP),
        statements=getattr(args, "statements", None),
    )


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _cmd_ingest(args, out):
    bundle, key = _load_survey(args)
    networks = build_networks(bundle)
    if args.format == "dot":
        out.write(networks_to_dot(networks[k] for k in KINDS))
        return
    files = {
        "issue_epinet.json": build_issue_epinet(bundle, key).to_json(),
        "perception_epinet.json": build_perception_epinet(bundle).to_json(),
        "networks.json": _dump([networks[k].to_dict() for k in KINDS]),
    }
    if args.out is None:
        out.write(_dump({name.rsplit(".", 1)[0]: json.loads(text) for name, text in files.items()}))
        return
    args.out.mkdir(parents=True, exist_ok=True)
    for name, text in files.items():
        (args.out / name).write_text(text, encoding="utf-8")


def _cmd_centrality(args, out):
    bundle, _ = _load_survey(args)
    table = analysis.centrality_table(build_networks(bundle))
    if args.format == "csv":
        out.write(report.centrality_csv(bundle.roster, table))
    else:
        out.write(_dump({k: {m: {a: float(v) for a, v in vals.items()} for m, vals in table[k].items()} for k in KINDS}))


def _cmd_cliques(args, out):
    bundle, _ = _load_survey(args)
    networks = build_networks(bundle)
    cliques = {k: maximal_cliques(networks[k]) for k in KINDS}
    if args.format == "json":
        out.write(_dump({k: [list(c) for c in cs] for k, cs in cliques.items()}))
    elif args.format == "csv":
        out.write("network,members,size\n")
        for k in KINDS:
            for c in cliques[k]:
                out.write(f"{k},{';'.join(c)},{len(c)}\n")
    else:
        out.write(networks_to_dot(networks[k] for k in KINDS))


def _epistemics(net: Epinet, cap: int) -> dict:
    agents = sorted(net.agents)
    states, props, skipped = [], {}, []
    for pid in sorted(net.propositions):
        truth = net.propositions[pid].truth
        lit = Lit(pid)
        if truth is Truth.UNKNOWN:
            skipped.append(pid)
            continue
        for a in agents:
            state = classify_state(net, a, lit)
            states.append(
                {
                    "agent": a,
                    "proposition": pid,
                    "state": state.label,
                    "awareness_level": awareness_level(net, a, lit),
                    "oblivious": is_oblivious(net, a, lit),
                    "confidence": has_confidence(net, a, lit),
                }
            )
        count, frac = distribution(net, lit, agents)
        c2, f2 = collective_awareness(net, lit, agents, 2)
        dyads = [
            {"agents": [a, b], "nc_level": nc_level_dyad(net, lit, a, b, cap), "cohesion": dyad_cohesion(net, lit, a, b)}
            for a, b in itertools.combinations(agents, 2)
        ]
        props[pid] = {
            "truth": truth.value,
            "distribution": {"count": count, "fraction": frac},
            "awareness2": {"count": c2, "fraction": f2},
            "dyads": dyads,
        }
    return {"states": states, "propositions": props, "skipped_unknown_truth": skipped}


def _cmd_epistemics(args, out):
    net = Epinet.load(args.epinet)
    if args.format == "dot":
        out.write(report.epinet_to_dot(net))
        return
    result = _epistemics(net, args.nc_cap)
    if args.format == "json":
        out.write(_dump(result))
        return
    out.write("agent,proposition,state,awareness_level,oblivious,confidence\n")
    for s in result["states"]:
        out.write(f"{s['agent']},{s['proposition']},{s['state']},{s['awareness_level']},{str(s['oblivious']).lower()},{str(s['confidence']).lower()}\n")


def _cmd_focal(args, out):
    net = Epinet.load(args.epinet)
    candidates = []
    for text in args.statements:
        lit = parse(text)
        if not isinstance(lit, Lit):
            raise DataError(f"focal candidates must be literals, got {text!r}")
        candidates.append(lit)
    ranked = focal_salience(net, candidates, sorted(net.agents), args.nc_cap)
    if args.format == "json":
        out.write(_dump([{"candidate": s.name, "depth": s.depth, "dyad3_fraction": s.dyad3_fraction} for s in ranked]))
    else:
        out.write("rank,candidate,depth,dyad3_fraction\n")
        for i, s in enumerate(ranked, 1):
            out.write(f"{i},{s.name},{s.depth},{report.fmt(s.dyad3_fraction)}\n")


def _analysis_results(args) -> tuple:
    bundle, key = _load_survey(args)
    config = _config(args)
    return report.run_pipelines(bundle, key, config), config


def _cmd_coherence(args, out):
    results, config = _analysis_results(args)
    if args.format == "csv":
        out.write(report.coherence_csv(results))
    else:
        out.write(_dump(report.report_dict(results, config)["coherence"]))


def _cmd_correlate(args, out):
    results, config = _analysis_results(args)
    if args.format == "csv":
        out.write(report.correlations_csv(results))
    else:
        out.write(_dump(report.report_dict(results, config)["correlations"]))


def _cmd_eval(args, out):
    net = Epinet.load(args.epinet)
    out.write("true\n" if evaluate(net, parse(args.formula)) else "false\n")


def _cmd_report(args, out):
    results, config = _analysis_results(args)
    for path in report.render_report(config, results):
        out.write(f"{path}\n")


COMMANDS = {
    "ingest": _cmd_ingest,
    "centrality": _cmd_centrality,
    "cliques": _cmd_cliques,
    "epistemics": _cmd_epistemics,
    "focal": _cmd_focal,
    "coherence": _cmd_coherence,
    "correlate": _cmd_correlate,
    "eval": _cmd_eval,
    "report": _cmd_report,
}


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError(parser.format_help())
        COMMANDS[args.command](args, stdout)
    except UsageError as exc:
        stderr.write(str(exc))
        return EXIT_USAGE
    except (DataError, OSError) as exc:
        stderr.write(f"epinet: data error: {exc}\n")
        return EXIT_DATA
    except ComputationError as exc:
        stderr.write(f"epinet: computation error: {exc}\n")
        return EXIT_COMPUTE
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
