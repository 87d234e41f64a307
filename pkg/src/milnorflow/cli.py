"""Command-line interface.

Usage:
    milnorflow curvature --group heisenberg -A 1 -B 1 -C 1 [--alpha 2]
    milnorflow classify  --group e11 -A 1 -B 2 -C 1 --flow xcf+
    milnorflow classify  --group heisenberg -A 2 -B 1 -C 1 --flow rg2 --solve-alpha
    milnorflow flow      --group heisenberg -A 1 -B 1 -C 1 --flow xcf+ --t-end 0.5
    milnorflow sweep     --group e2 --flow xcf+ -A 1 -B 0.5:2:31 -C 1

Exit codes: 0 computed (any verdict), 2 bad input, 3 numerical failure.
Data goes to stdout (or ``--output``), diagnostics to stderr.  Relative
output paths are resolved against ``$MILNORFLOW_OUTPUT_DIR`` when it is set.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from pathlib import Path

from .algebra import GroupKind, MilnorMetric
from .curvature import curvature_report
from .errors import DomainError
from .flow import FlowKind, IntegratorControls, Termination, integrate
from .soliton import (
    ComponentGrid,
    FlowTensorKind,
    classify,
    classify_rg2_steady,
    classify_xcf,
    rg2_steady_alphas,
    sweep_residuals,
)

EXIT_OK, EXIT_BAD_INPUT, EXIT_NUMERIC = 0, 2, 3
OUTPUT_DIR_ENV = "MILNORFLOW_OUTPUT_DIR"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(EXIT_BAD_INPUT, f"{self.prog}: error: {message}\n")


def fmt_number(x: float) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    if not math.isfinite(x):
        return "null"
    return format(x + 0.0, ".17g")  # folds -0.0 into 0


def to_json(obj) -> str:
    """JSON text with floats written to 17 significant digits."""
    if obj is None:
        return "null"
    if isinstance(obj, (bool, int, float)):
        return fmt_number(obj)
    if isinstance(obj, str):
        import json

        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{to_json(str(k))}: {to_json(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(to_json(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _csv(rows, header) -> str:
    lines = [",".join(header)]
    lines += [",".join(fmt_number(float(v)) for v in row) for row in rows]
    return "\n".join(lines) + "\n"


def _emit(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
        return
    path = Path(output)
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not path.is_absolute():
        path = Path(base) / path
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def _metric(args) -> MilnorMetric:
    return MilnorMetric(GroupKind.parse(args.group), (args.A, args.B, args.C))


def cmd_curvature(args) -> int:
    metric = _metric(args)
    rep = curvature_report(metric, args.alpha)
    out = {
        "group": metric.group.value,
        "components": metric.components,
        "tildes": rep.tildes,
        "mus": rep.mus,
        "sectional": rep.sectional,
        "ricci": rep.ricci.entries,
        "scalar": rep.scalar,
        "rm2": rep.rm2.entries,
        "cross": rep.cross.entries,
    }
    if rep.rg2 is not None:
        out["alpha"] = rep.alpha
        out["rg2"] = rep.rg2.entries
    _emit(to_json(out) + "\n", args.output)
    return EXIT_OK


def cmd_classify(args) -> int:
    metric = _metric(args)
    flow = args.flow.lower()
    if args.solve_alpha:
        if flow != "rg2":
            raise DomainError("--solve-alpha needs --flow rg2")
        alphas = rg2_steady_alphas(metric)
        _emit(to_json("any" if alphas is None else alphas) + "\n", args.output)
        return EXIT_OK
    if flow in ("xcf+", "xcf-"):
        cert = classify_xcf(metric, flow[-1])
    elif flow == "rg2":
        if args.alpha is None:
            raise DomainError("--flow rg2 needs --alpha or --solve-alpha")
        cert = classify_rg2_steady(metric, args.alpha)
    elif flow == "ricci":
        cert = classify(FlowTensorKind.ricci(), metric)
    else:
        raise DomainError(f"unknown flow {args.flow!r}")
    out = {"components": metric.components, **cert.to_dict()}
    _emit(to_json(out) + "\n", args.output)
    return EXIT_OK


def cmd_flow(args) -> int:
    metric = _metric(args)
    kind = FlowKind.parse(args.flow, args.alpha)
    controls = IntegratorControls(
        method=args.method, step=args.step, rtol=args.rtol, atol=args.atol, t_end=args.t_end,
        blowup_ceiling=args.blowup_ceiling, collapse_floor=args.collapse_floor,
    )
    traj = integrate(kind, metric, controls, sample_dt=args.sample)
    if args.format == "json":
        text = to_json({
            "group": metric.group.value,
            "flow": kind.tag.value,
            "samples": [list(r) for r in traj.samples.tolist()],
            "termination": traj.termination.value,
        }) + "\n"
    else:
        text = _csv(traj.samples.tolist(), ("t", "A", "B", "C"))
        text += f"# termination={traj.termination.value}\n"
    _emit(text, args.output)
    if traj.termination is Termination.STEP_FAILURE:
        print("error: integrator could not meet tolerance (step_failure)", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


def _tensor_kind(flow: str, alpha: float | None) -> FlowTensorKind:
    flow = flow.lower()
    if flow in ("xcf+", "xcf-"):
        return FlowTensorKind.xcf(flow[-1])
    if flow == "ricci":
        return FlowTensorKind.ricci()
    if flow == "rg2":
        if alpha is None:
            raise DomainError("--flow rg2 needs --alpha")
        return FlowTensorKind.rg2(alpha)
    raise DomainError(f"unknown flow {flow!r}")


def cmd_sweep(args) -> int:
    group = GroupKind.parse(args.group)
    grid = ComponentGrid(
        ComponentGrid.axis(args.A), ComponentGrid.axis(args.B), ComponentGrid.axis(args.C)
    )
    rows = sweep_residuals(group, _tensor_kind(args.flow, args.alpha), grid)
    table = [(r.A, r.B, r.C, r.kappa, r.residual) for r in rows]
    if args.format == "json":
        keys = ("A", "B", "C", "kappa", "residual")
        text = to_json([dict(zip(keys, row)) for row in table]) + "\n"
    else:
        text = _csv(table, ("A", "B", "C", "kappa", "residual"))
    _emit(text, args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="milnorflow", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, components=float):
        p.add_argument("--group", required=True, help="r3, heisenberg|nil3, e2, e11|sol, sl2, su2")
        p.add_argument("-A", "--A", dest="A", type=components, default=components("1"))
        p.add_argument("-B", "--B", dest="B", type=components, default=components("1"))
        p.add_argument("-C", "--C", dest="C", type=components, default=components("1"))
        p.add_argument("-o", "--output", help="write to this file instead of stdout")

    p = sub.add_parser("curvature", help="curvature report of a Milnor metric")
    common(p)
    p.add_argument("--alpha", type=float, help="also report the RG-2 tensor at this coupling")
    p.set_defaults(func=cmd_curvature)

    p = sub.add_parser("classify", help="algebraic soliton certificate")
    common(p)
    p.add_argument("--flow", required=True, help="xcf+, xcf-, rg2 or ricci")
    p.add_argument("--alpha", type=float)
    p.add_argument("--solve-alpha", action="store_true", help="list the steady RG-2 couplings")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("flow", help="integrate a flow; CSV t,A,B,C")
    common(p)
    p.add_argument("--flow", required=True, help="ricci, xcf+, xcf- or rg2")
    p.add_argument("--alpha", type=float)
    p.add_argument("--t-end", type=float, default=1.0)
    p.add_argument("--method", choices=("rk45", "rk4"), default="rk45")
    p.add_argument("--step", type=float, default=1e-3, help="initial (rk45) or fixed (rk4) step")
    p.add_argument("--rtol", type=float, default=1e-10)
    p.add_argument("--atol", type=float, default=1e-12)
    p.add_argument("--sample", type=float, help="emit rows on a uniform grid with this spacing")
    p.add_argument("--collapse-floor", type=float, default=1e-8)
    p.add_argument("--blowup-ceiling", type=float, default=1e8)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_flow)

    p = sub.add_parser("sweep", help="residual table over a component grid; CSV A,B,C,kappa,residual")
    common(p, components=str)
    p.add_argument("--flow", required=True, help="xcf+, xcf-, rg2 or ricci")
    p.add_argument("--alpha", type=float)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"milnorflow {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except ArithmeticError as exc:
        print(f"milnorflow {args.command}: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
