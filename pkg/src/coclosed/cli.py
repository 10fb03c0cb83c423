"""Command line front end.

Exit codes: 0 success, 1 file or argument problems, 2 solver failures,
3 non-cactus verdict from the cactus command, 4 criterion violation,
5 demo cross-check failure.

All output is deterministic for fixed inputs and seed; JSON files use
17-significant-digit floats, so reruns are byte-identical.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import jsonio
from .cactus import analyze_cactus, verify_cactus_criterion
from .errors import (
    CriterionViolatedError,
    DegenerateWeightError,
    DimensionMismatchError,
    EigenFailedError,
    GraphError,
    MaxIterationsError,
    NonpositiveWeightError,
    NoObstructionFoundError,
    NotMeanZeroError,
    RhsNotMeanZeroError,
    SolveFailedError,
)
from .graphs import OrientedGraph, betti_1, build_graph
from .hodge import hodge_project
from .potentials import (
    COSH,
    QUADRATIC,
    Potential,
    check_admissible,
    cosh_power,
    power_alpha,
)
from .projector import project

__all__ = ["main", "parse_potential"]

_LARGE_GRAPH = 2000


def parse_potential(spec: str) -> Potential:
    """Grammar: cosh | quad | power:ALPHA | coshpow:P."""
    if spec == "cosh":
        return COSH
    if spec == "quad":
        return QUADRATIC
    if spec.startswith("power:"):
        return power_alpha(float(spec[len("power:"):]))
    if spec.startswith("coshpow:"):
        return cosh_power(float(spec[len("coshpow:"):]))
    raise ValueError(
        f"unknown potential {spec!r}; use cosh, quad, power:ALPHA, or coshpow:P"
    )


def _warn_large(g: OrientedGraph) -> None:
    if g.vertex_count > _LARGE_GRAPH:
        print(
            f"warning: {g.vertex_count} vertices; dense factorizations may be slow",
            file=sys.stderr,
        )


def _print_edge_table(g: OrientedGraph, columns: dict[str, np.ndarray]) -> None:
    names = list(columns)
    header = f"{'edge':>4}  {'tail->head':>10}"
    for name in names:
        header += f"  {name:>14}"
    print(header)
    for k in range(g.edge_count):
        row = f"{k:>4}  {f'{g.tails[k]}->{g.heads[k]}':>10}"
        for name in names:
            row += f"  {columns[name][k]:>14.8f}"
        print(row)


def cmd_decompose(args: argparse.Namespace) -> int:
    g = jsonio.load_graph(args.graph)
    _warn_large(g)
    omega = jsonio.load_field(args.field, g.edge_count)
    p = parse_potential(args.potential)
    res = project(g, p, omega, tol=args.tol, warm_start=args.warm_start)
    linear = hodge_project(g, omega)
    distance = float(np.linalg.norm(res.output - linear))
    energy_linear = float(np.sum(p.psi(linear)))
    energy_nonlinear = float(np.sum(p.psi(res.output)))
    nr = res.newton

    print(f"potential: {p.name}")
    print(f"graph: {g.vertex_count} vertices, {g.edge_count} edges (beta_1 = {betti_1(g)})")
    _print_edge_table(g, {"input": omega, "linear": linear, "nonlinear": res.output})
    print(f"distance between projections: {distance:.8f}")
    print(f"sigma divergence residual: {res.residual:.3e}")
    print(f"energy of linear output:    {energy_linear:.8f}")
    print(f"energy of nonlinear output: {energy_nonlinear:.8f}")
    print(
        f"newton: {len(nr.iterations)} iterations, {nr.damped_steps_taken} damped "
        f"(a priori bound {nr.a_priori_damped_bound}), "
        f"final decrement {nr.final_decrement:.3e}"
    )
    print(f"certified: {'yes' if nr.certified else 'no'}")

    if args.out:
        jsonio.save(
            args.out,
            {
                "command": "decompose",
                "potential": p.name,
                "graph": jsonio.graph_to_dict(g),
                "input": list(map(float, omega)),
                "linear": list(map(float, linear)),
                "nonlinear": list(map(float, res.output)),
                "vertex_potential": list(map(float, res.potential_scalar)),
                "distance": distance,
                "sigma_divergence_residual": res.residual,
                "energy_linear": energy_linear,
                "energy_nonlinear": energy_nonlinear,
                "newton": nr.to_dict(),
            },
        )
    return 0


def cmd_cactus(args: argparse.Namespace) -> int:
    g = jsonio.load_graph(args.graph)
    _warn_large(g)
    report = analyze_cactus(g)
    if args.out:
        jsonio.save(
            args.out,
            {
                "command": "cactus",
                "graph": jsonio.graph_to_dict(g),
                "beta_1": betti_1(g),
                **report.to_dict(),
            },
        )
    if report.is_cactus:
        print("cactus: yes")
        print(f"cycles: {len(report.cycle_forms)} (beta_1 = {betti_1(g)})")
        for i, form in enumerate(report.cycle_forms):
            print(
                f"cycle {i}: vertices {list(form.vertices)}, "
                f"edges {list(form.edges)}, signs {list(form.signs)}"
            )
        return 0
    w = report.witness
    print("cactus: no")
    print(
        f"witness cycles share edges {list(w.shared_edges)} "
        f"splitting at vertex {w.split_vertex}"
    )
    print(f"cycle A: vertices {list(w.cycle1.vertices)}, edges {list(w.cycle1.edges)}")
    print(f"cycle B: vertices {list(w.cycle2.vertices)}, edges {list(w.cycle2.edges)}")
    print("witness field: [" + ", ".join(f"{v:g}" for v in w.field) + "]")
    return 3


def cmd_verify(args: argparse.Namespace) -> int:
    g = jsonio.load_graph(args.graph)
    _warn_large(g)
    p = parse_potential(args.potential)
    print(f"potential: {p.name}")
    try:
        report = verify_cactus_criterion(
            g, p, trials=args.trials, tol=args.tol, seed=args.seed
        )
    except NoObstructionFoundError as exc:
        adm = check_admissible(p)
        print("verdict: not a cactus")
        print(f"no superposition gap detected: {exc}")
        print(f"admissible: {'yes' if adm.passed else 'no'}")
        print("criterion: NOT APPLICABLE (separation needs an admissible potential)")
        if args.out:
            jsonio.save(
                args.out,
                {
                    "command": "verify",
                    "potential": p.name,
                    "is_cactus": False,
                    "applicable": False,
                    "admissible": adm.passed,
                },
            )
        return 0
    if report.is_cactus:
        print("verdict: cactus")
        print(
            f"trials: {report.trials}, worst scaled distance "
            f"{report.max_distance:.3e} (tol {report.tol:.1e})"
        )
        print("criterion: PASS (nonlinear projection collapses to the orthogonal one)")
    else:
        print("verdict: not a cactus")
        print(
            f"witness separation {report.separation:.3e} at scale "
            f"{report.separation_scale:.8f} (threshold {10 * report.tol:.1e})"
        )
        print(
            f"superposition gap {report.witness_gap:.3e}, "
            f"divergence residual {report.witness_residual:.3e}"
        )
        print("criterion: PASS (witness separates the projections)")
    if args.out:
        jsonio.save(
            args.out,
            {"command": "verify", **report.to_dict()},
        )
    return 0


def _demo_stationarity_root() -> float:
    """Bisection for the scalar reduction of the two-triangle problem."""

    def f(t: float) -> float:
        return (
            math.sinh(t - 0.625)
            - math.sinh(3.125 - t)
            - math.sinh(1.25 - 2.0 * t)
        )

    lo, hi = 1.25, 1.5
    while hi - lo > 1e-12:
        mid = 0.5 * (lo + hi)
        if f(mid) <= 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def cmd_demo(args: argparse.Namespace) -> int:
    g = build_graph(4, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 0)])
    omega = np.array([5.0, 0.0, 0.0, 0.0, 0.0])
    linear = hodge_project(g, omega)
    exact_linear = np.array([15 / 8, 15 / 8, -5 / 4, 5 / 8, 5 / 8])

    cold = project(g, COSH, omega, tol=1e-12)
    warm = project(g, COSH, omega, tol=1e-12, warm_start=True)
    phi1_newton = float(cold.potential_scalar[0])
    phi1_bisect = _demo_stationarity_root()
    agreement = abs(phi1_newton - phi1_bisect)

    distance = float(np.linalg.norm(cold.output - linear))
    energy_linear = float(np.sum(COSH.psi(linear)))
    energy_nonlinear = float(np.sum(COSH.psi(cold.output)))

    print("two-triangle demo: unit of flux 5 on edge 0->1")
    _print_edge_table(g, {"input": omega, "linear": linear, "nonlinear": cold.output})
    print(f"vertex potential via newton:    {phi1_newton:.12f}")
    print(f"vertex potential via bisection: {phi1_bisect:.12f}")
    print(f"agreement: {agreement:.3e} (required 1.0e-09)")
    print(f"distance between projections: {distance:.8f}")
    print(f"energy of linear output:    {energy_linear:.8f}")
    print(f"energy of nonlinear output: {energy_nonlinear:.8f}")
    print(
        f"cold start: {cold.newton.damped_steps_taken} damped steps "
        f"(a priori bound {cold.newton.a_priori_damped_bound})"
    )
    print(
        f"warm start: {warm.newton.damped_steps_taken} damped steps "
        f"(a priori bound {warm.newton.a_priori_damped_bound})"
    )

    failures = []
    if agreement > 1e-9:
        failures.append(f"bisection and newton disagree by {agreement:.3e}")
    if float(np.max(np.abs(linear - exact_linear))) > 1e-12:
        failures.append("orthogonal projection deviates from its closed form")
    if not cold.newton.converged or not warm.newton.converged:
        failures.append("newton did not converge")

    if args.out:
        jsonio.save(
            args.out,
            {
                "command": "demo",
                "graph": jsonio.graph_to_dict(g),
                "input": list(map(float, omega)),
                "linear": list(map(float, linear)),
                "nonlinear": list(map(float, cold.output)),
                "vertex_potential_newton": phi1_newton,
                "vertex_potential_bisection": phi1_bisect,
                "agreement": agreement,
                "distance": distance,
                "energy_linear": energy_linear,
                "energy_nonlinear": energy_nonlinear,
                "cold_damped_steps": cold.newton.damped_steps_taken,
                "cold_bound": cold.newton.a_priori_damped_bound,
                "warm_damped_steps": warm.newton.damped_steps_taken,
                "warm_bound": warm.newton.a_priori_damped_bound,
                "checks_passed": not failures,
            },
        )
    if failures:
        for line in failures:
            print(f"check failed: {line}", file=sys.stderr)
        return 5
    print("checks: PASS")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coclosed",
        description="Nonlinear coclosed decompositions of edge fields on graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    dec = sub.add_parser("decompose", help="split a field against a potential")
    dec.add_argument("--graph", required=True, help="graph JSON file")
    dec.add_argument("--field", required=True, help="edge field JSON file")
    dec.add_argument("--potential", default="cosh", help="cosh | quad | power:A | coshpow:P")
    dec.add_argument("--tol", type=float, default=1e-10, help="newton decrement tolerance")
    dec.add_argument("--warm-start", action="store_true", help="start from the orthogonal solution")
    dec.add_argument("--out", help="write a JSON report here")
    dec.set_defaults(func=cmd_decompose)

    cac = sub.add_parser("cactus", help="classify the graph's cycle structure")
    cac.add_argument("--graph", required=True, help="graph JSON file")
    cac.add_argument("--out", help="write a JSON report here")
    cac.set_defaults(func=cmd_cactus)

    ver = sub.add_parser("verify", help="test the collapse criterion numerically")
    ver.add_argument("--graph", required=True, help="graph JSON file")
    ver.add_argument("--potential", default="cosh", help="cosh | quad | power:A | coshpow:P")
    ver.add_argument("--trials", type=int, default=20, help="random fields per cactus check")
    ver.add_argument("--seed", type=int, default=0, help="base seed; trial t uses seed XOR t")
    ver.add_argument("--tol", type=float, default=1e-8, help="scaled agreement tolerance")
    ver.add_argument("--out", help="write a JSON report here")
    ver.set_defaults(func=cmd_verify)

    dem = sub.add_parser("demo", help="worked two-triangle example with cross-checks")
    dem.add_argument("--out", help="write a JSON report here")
    dem.set_defaults(func=cmd_demo)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CriterionViolatedError as exc:
        print(f"criterion: FAIL ({exc})", file=sys.stderr)
        return 4
    except (
        MaxIterationsError,
        SolveFailedError,
        EigenFailedError,
        DegenerateWeightError,
        NonpositiveWeightError,
        RhsNotMeanZeroError,
        NotMeanZeroError,
    ) as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError, GraphError, DimensionMismatchError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
