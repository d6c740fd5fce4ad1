"""Command line front end.

Exit status: 0 on success, 1 when a hypothesis is violated (non-member
trajectory, inconsistent initial data, SVAR conversion preconditions),
2 for unreadable or schema-invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import graphs, modelfile, network as netmod, sim, svar
from .behavior import KernelRep, io_partition
from .network import Network, incidence, interconnect, merge, regularity, regularizing_partition
from .rational import format_rational

EXIT_OK, EXIT_HYPOTHESIS, EXIT_PARSE = 0, 1, 2


class CliError(Exception):
    def __init__(self, message: str, code: int, tag: str = "error"):
        super().__init__(message)
        self.code, self.tag = code, tag


def _load(path: str) -> modelfile.ModelFile:
    try:
        return modelfile.load(path)
    except OSError as exc:
        raise CliError(f"{path}: {exc.strerror}", EXIT_PARSE, "io") from None
    except modelfile.ModelFileError as exc:
        raise CliError(f"{path}: {exc}", EXIT_PARSE, "schema") from None
    except svar.SvarError as exc:
        raise CliError(f"{path}: {exc}", EXIT_HYPOTHESIS, "svar_assumption") from None
    except ValueError as exc:
        raise CliError(f"{path}: {exc}", EXIT_PARSE, "schema") from None


def _network(mf: modelfile.ModelFile) -> Network:
    if mf.kind == "network":
        return mf.network
    return svar.to_network(mf.svar)


def _write(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _bool(b: bool) -> str:
    return "true" if b else "false"


def analyze_report(net: Network) -> dict:
    rep = regularity(net)
    inc = incidence(net)
    return {
        "components": [
            {"name": name, "p": p, "n": n}
            for name, p, n in zip(net.names, rep.component_p, rep.component_n)
        ],
        "interconnection": {"p": rep.p, "n": rep.n},
        "sum_p": sum(rep.component_p),
        "sum_n": sum(rep.component_n),
        "regular": rep.regular,
        "regular_feedback": rep.regular_feedback,
        "incidence": inc.to_json(),
    }


def _format_analysis(rep: dict) -> str:
    inc = rep["incidence"]
    name_w = max(len("component"), *(len(c["name"]) for c in rep["components"]))
    lines = [f"{'component'.ljust(name_w)}  p  n"]
    for c in rep["components"]:
        lines.append(f"{c['name'].ljust(name_w)}  {c['p']}  {c['n']}")
    lines.append(f"interconnection: p={rep['interconnection']['p']} n={rep['interconnection']['n']}")
    lines.append(f"sum over components: p={rep['sum_p']} n={rep['sum_n']}")
    lines.append(f"regular: {_bool(rep['regular'])}")
    lines.append(f"regular_feedback: {_bool(rep['regular_feedback'])}")
    lines.append("incidence:")
    widths = [max(len(s), 1) for s in inc["signals"]]
    lines.append(" " * (name_w + 2) + " ".join(s.rjust(w) for s, w in zip(inc["signals"], widths)))
    for name, row in zip(inc["components"], inc["S"]):
        lines.append(name.ljust(name_w + 2) + " ".join(str(x).rjust(w) for x, w in zip(row, widths)))
    return "\n".join(lines) + "\n"


def cmd_analyze(args) -> int:
    net = _network(_load(args.path))
    rep = analyze_report(net)
    if args.json:
        _write(json.dumps(rep, indent=2) + "\n", None)
    else:
        _write(_format_analysis(rep), None)
    return EXIT_OK


def cmd_graph(args) -> int:
    mf = _load(args.path)
    if args.kind == "svar":
        if mf.kind != "svar":
            raise CliError("--kind svar needs an svar model file", EXIT_PARSE, "kind_mismatch")
        g = graphs.svar_digraph(mf.svar)
    elif args.kind == "signal":
        g = graphs.signal_graph(_network(mf))
    else:
        g = graphs.system_graph(_network(mf))
    text = graphs.to_dot(g, name=args.kind) if args.format == "dot" else graphs.to_json(g)
    _write(text, args.output)
    return EXIT_OK


def cmd_svar(args) -> int:
    mf = _load(args.path)
    if args.direction == "to":
        if mf.kind != "svar":
            raise CliError("--direction to needs an svar model file", EXIT_PARSE, "kind_mismatch")
        net = svar.to_network(mf.svar)
        doc = modelfile.network_to_doc(net)
        doc["permutation"] = net.space.column_names()
    else:
        if mf.kind != "network":
            raise CliError("--direction from needs a network model file", EXIT_PARSE, "kind_mismatch")
        try:
            model, perm = svar.from_network(mf.network)
        except svar.ComponentCardinalityError as exc:
            raise CliError(str(exc), EXIT_HYPOTHESIS, "single_output") from None
        except svar.NotRegularFeedbackError as exc:
            raise CliError(str(exc), EXIT_HYPOTHESIS, "regular_feedback") from None
        doc = modelfile.svar_to_doc(model)
        names = mf.network.space.column_names()
        doc["permutation"] = [names[c] for c in perm]
    _write(modelfile.dumps(doc), args.output)
    return EXIT_OK


def cmd_merge(args) -> int:
    net = _network(_load(args.path))
    result = regularizing_partition(net, args.mode)
    merged = merge(net, result.partition)
    rep = regularity(merged)
    report = {
        "mode": args.mode,
        "partition": [[i + 1 for i in g] for g in result.partition.groups],
        "groups": [[net.names[i] for i in g] for g in result.partition.groups],
        "k": result.k,
        "search": "exhaustive" if result.exhaustive else "greedy (best effort)",
        "regular": rep.regular,
        "regular_feedback": rep.regular_feedback,
    }
    if args.json:
        _write(json.dumps(report, indent=2) + "\n", None)
    else:
        lines = [
            f"partition: {result.partition}",
            "groups: " + "; ".join(", ".join(g) for g in report["groups"]),
            f"k: {result.k} (of {len(net)} components)",
            f"search: {report['search']}",
            f"regular: {_bool(rep.regular)}",
            f"regular_feedback: {_bool(rep.regular_feedback)}",
        ]
        _write("\n".join(lines) + "\n", None)
    return EXIT_OK


def _read_named_csv(path: str, wanted: list[str], what: str) -> list[list[Fraction]]:
    try:
        with open(path, encoding="utf-8") as fh:
            header, rows = sim.read_csv_columns(fh.read())
    except OSError as exc:
        raise CliError(f"{path}: {exc.strerror}", EXIT_PARSE, "io") from None
    except ValueError as exc:
        raise CliError(f"{path}: {exc}", EXIT_PARSE, "csv") from None
    missing = [w for w in wanted if w not in header]
    if missing:
        raise CliError(f"{path}: {what} CSV lacks columns {missing}", EXIT_PARSE, "csv")
    idx = [header.index(w) for w in wanted]
    return [[r[i] for i in idx] for r in rows]


def cmd_simulate(args) -> int:
    net = _network(_load(args.path))
    try:
        part = io_partition(interconnect(net))
    except ValueError as exc:
        raise CliError(str(exc), EXIT_HYPOTHESIS, "no_outputs") from None
    names = net.space.column_names()
    in_names = [names[c] for c in part.input_cols]
    out_names = [names[c] for c in part.output_cols]
    horizon = args.horizon
    if args.input:
        u = _read_named_csv(args.input, in_names, "input")
    elif in_names:
        raise CliError(f"inputs {in_names} need --input", EXIT_PARSE, "usage")
    else:
        u = [[] for _ in range(horizon)]
    if len(u) < horizon:
        raise CliError(f"input has {len(u)} samples, horizon {horizon} requested", EXIT_PARSE, "horizon")
    try:
        if args.init:
            init = _read_named_csv(args.init, out_names, "initial")
        else:
            init = sim.consistent_initial(part, u)
        traj = sim.simulate(part, u, init, horizon)
    except sim.InconsistentInitialData as exc:
        raise CliError(f"{exc} [{out_names[exc.row] if exc.row < len(out_names) else exc.row}]",
                       EXIT_HYPOTHESIS, "inconsistent_initial") from None
    except (sim.HorizonError, ValueError) as exc:
        raise CliError(str(exc), EXIT_PARSE, "horizon") from None
    _write(traj.to_csv(), args.output)
    return EXIT_OK


def _row_owner(net: Network, row: int) -> str:
    for name, comp in zip(net.names, net.components):
        if row < comp.r.rows:
            return name
        row -= comp.r.rows
    return "?"


def cmd_check(args) -> int:
    net = _network(_load(args.path))
    kernel: KernelRep = interconnect(net)
    names = net.space.column_names()
    values = _read_named_csv(args.trajectory, names, "trajectory")
    if not values:
        raise CliError("trajectory has no samples", EXIT_PARSE, "horizon")
    try:
        res = sim.residual(kernel, sim.Trajectory(net.space, tuple(tuple(r) for r in values)))
    except sim.HorizonError as exc:
        raise CliError(str(exc), EXIT_PARSE, "horizon") from None
    hit = sim.first_violation(res)
    if hit is None:
        _write(f"member (checked t=0..{len(res) - 1})\n", None)
        return EXIT_OK
    t, i = hit
    _write(
        f"not a member: first violation at t={t}, equation {i + 1} ({_row_owner(net, i)}), "
        f"residual {format_rational(res[t][i])}\n",
        None,
    )
    return EXIT_HYPOTHESIS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="behavnet", description="Behavioral network analysis with exact arithmetic.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="output cardinalities, McMillan degrees, incidence, regularity")
    p.add_argument("path")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("graph", help="signal / system hypergraph or SVAR digraph")
    p.add_argument("path")
    p.add_argument("--kind", choices=["signal", "system", "svar"], default="signal")
    p.add_argument("--format", choices=["dot", "json"], default="dot")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("svar", help="convert between SVAR models and networks")
    p.add_argument("path")
    p.add_argument("--direction", choices=["to", "from"], required=True,
                   help="'to': svar file -> network; 'from': network -> svar file")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_svar)

    p = sub.add_parser("merge", help="find a regularizing partition of the components")
    p.add_argument("path")
    p.add_argument("--mode", choices=list(netmod.MODES), default=netmod.REGULAR_FEEDBACK)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_merge)

    p = sub.add_parser("simulate", help="simulate the interconnection under its proper I/O partition")
    p.add_argument("path")
    p.add_argument("--input", help="CSV of input columns")
    p.add_argument("--init", help="CSV of the initial output window (default: consistent zeros)")
    p.add_argument("--horizon", type=int, required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("check", help="check a trajectory against the interconnection")
    p.add_argument("path")
    p.add_argument("--trajectory", required=True)
    p.set_defaults(func=cmd_check)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error[{exc.tag}]: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
