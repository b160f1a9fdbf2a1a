"""Command-line front end emitting reproducible verification tables.

Five subcommands package the library's checks into deterministic runs:

* ``verify-scaling``: observed vs predicted scaling factors for the
  kinetic functionals under amplitude/coordinate scaling;
* ``gas-converge``: discrete electron-gas energy per volume against the
  continuum value along an electron-count ladder;
* ``paradox``: naive vs gas-corrected Thomas-Fermi scaling side by side;
* ``search``: constrained-search summary on a 1-D target density;
* ``tabulate``: functional values against closed forms for the model
  densities.

Output is TSV by default (header row, then ``#`` metadata lines, then data
rows) or JSON mirroring the same columns.  Floats print with 17 significant
digits.  Identical invocations produce byte-identical output.  Exit code 0
when every in-run assertion passes, 1 on assertion failure, 2 on a
validation error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from typing import Any, Callable, Sequence, TextIO

from . import __version__, backends
from .densities import (
    GAUSSIAN,
    HYDROGENIC_1S,
    UNIFORM_BOX,
    DensityField,
    DensityModel,
    analytic_t_tf,
    analytic_t_vw,
    default_grid,
    sample_density,
)
from .electron_gas import continuum_convergence, tf_scaled_corrected
from .errors import KineticLabError
from .functionals import single_orbital_set, t_s_orbital, t_tf, t_vw
from .scaling import ScalingParams, scale_density, scale_orbitals
from .search import SearchConfig, minimize_ts, relative_deviation

FAMILIES = {
    "gaussian": GAUSSIAN,
    "hydrogenic": HYDROGENIC_1S,
    "uniform": UNIFORM_BOX,
}

#: In-run assertion tolerance on scaling-factor deviations.
FACTOR_TOL = 1e-11

#: Continuum ladder rungs this size and larger must be inside 2 percent.
CONVERGED_COUNT = 100_000
CONVERGED_ERROR = 0.02

MIN_GRID = 16
MAX_GRID = 256


@dataclass(frozen=True)
class RunSpec:
    """Resolved parameters of one CLI run; echoed in the output metadata."""

    command: str
    fmt: str = "tsv"
    seed: int = 0
    family: str | None = None
    electrons: float | None = None
    width: float | None = None
    grid_points: int | None = None
    alphas: tuple[float, ...] = ()
    betas: tuple[float, ...] = ()
    ms: tuple[float, ...] = ()
    ps: tuple[float, ...] = ()
    functional: str | None = None
    nbar: float | None = None
    ladder: tuple[int, ...] = ()
    orbital_count: int | None = None
    penalty: float | None = None
    step: float | None = None
    max_iterations: int | None = None
    tolerance: float | None = None

    def __post_init__(self) -> None:
        if self.fmt not in ("tsv", "json"):
            raise ValueError(f"format must be tsv or json, got {self.fmt!r}")
        if self.grid_points is not None and not MIN_GRID <= self.grid_points <= MAX_GRID:
            raise ValueError(
                f"grid size must lie in [{MIN_GRID}, {MAX_GRID}], got {self.grid_points}"
            )

    def to_mapping(self) -> dict[str, Any]:
        pairs: list[tuple[str, Any]] = []
        if self.family is not None:
            pairs.append(("family", self.family))
        if self.electrons is not None:
            pairs += [("ne", self.electrons), ("width", self.width)]
        if self.grid_points is not None:
            pairs.append(("grid", self.grid_points))
        if self.alphas:
            pairs += [
                ("alpha", list(self.alphas)),
                ("beta", list(self.betas)),
                ("m", list(self.ms)),
                ("p", list(self.ps)),
            ]
        if self.functional is not None:
            pairs.append(("functional", self.functional))
        if self.nbar is not None:
            pairs.append(("nbar", self.nbar))
        if self.ladder:
            pairs.append(("ladder", list(self.ladder)))
        if self.orbital_count is not None:
            pairs += [
                ("ns", self.orbital_count),
                ("penalty", self.penalty),
                ("step", self.step),
                ("max_iterations", self.max_iterations),
                ("tolerance", self.tolerance),
            ]
        pairs += [
            ("format", self.fmt),
            ("seed", self.seed),
            ("backend", backends.ACTIVE),
        ]
        return dict(pairs)

    def scaling_params(self) -> list[ScalingParams]:
        lists = (self.alphas, self.betas, self.ms, self.ps)
        length = max(len(entry) for entry in lists)
        for entry in lists:
            if len(entry) not in (1, length):
                raise ValueError(
                    "alpha, beta, m, p lists must share a length or have length 1"
                )
        expanded = [
            entry if len(entry) == length else entry * length for entry in lists
        ]
        return [ScalingParams(*tup) for tup in zip(*expanded)]


@dataclass
class Report:
    columns: list[str]
    rows: list[list[Any]] = field(default_factory=list)
    checked: int = 0
    failures: list[str] = field(default_factory=list)

    def check(self, condition: bool, message: str) -> None:
        self.checked += 1
        if not condition:
            self.failures.append(message)


def _fmt_value(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return "%.17g" % value
    return str(value)


def _json_value(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "null"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return "%.17g" % value
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_json_value(item) for item in value) + "]"
    if isinstance(value, dict):
        return "{" + ", ".join(
            json.dumps(key) + ": " + _json_value(item) for key, item in value.items()
        ) + "}"
    raise TypeError(f"cannot serialize {type(value)!r}")


def _write_tsv(stream: TextIO, spec: RunSpec, report: Report) -> None:
    stream.write("\t".join(report.columns) + "\n")
    stream.write(f"# version={__version__}\n")
    stream.write(f"# command={spec.command}\n")
    for key, value in spec.to_mapping().items():
        if isinstance(value, list):
            text = ",".join(_fmt_value(item) for item in value)
        else:
            text = _fmt_value(value)
        stream.write(f"# {key}={text}\n")
    stream.write(f"# assertions_checked={report.checked}\n")
    stream.write(f"# assertions_failed={len(report.failures)}\n")
    for row in report.rows:
        stream.write("\t".join(_fmt_value(value) for value in row) + "\n")


def _write_json(stream: TextIO, spec: RunSpec, report: Report) -> None:
    document = {
        "version": __version__,
        "command": spec.command,
        "spec": spec.to_mapping(),
        "columns": report.columns,
        "rows": report.rows,
        "assertions": {
            "checked": report.checked,
            "failed": len(report.failures),
            "messages": report.failures,
        },
    }
    stream.write(_json_value(document) + "\n")


def _density(spec: RunSpec, dim: int = 3) -> DensityField:
    model = DensityModel(FAMILIES[spec.family], spec.electrons, spec.width)
    grid = default_grid(model, spec.grid_points, dim=dim)
    return sample_density(model, grid)


def _observed_factor(scaled: float, base: float, predicted: float) -> float:
    # a zero baseline (uniform density under vW, ground-shell gas) carries
    # no factor information; report the prediction so the row stays finite
    if base == 0.0:
        return predicted
    return scaled / base


def _verify_rows(spec: RunSpec, report: Report) -> None:
    n = _density(spec)
    names = [spec.functional] if spec.functional else ["vw", "tf", "tf-corrected"]
    params = spec.scaling_params()
    for name in names:
        if name == "ks":
            orbitals = single_orbital_set(n)
            base = t_s_orbital(orbitals).value
        elif name == "vw":
            base = t_vw(n).value
        else:
            base = t_tf(n).value
        for s in params:
            if name == "vw":
                scaled = t_vw(scale_density(n, s)).value
                predicted = s.predicted_ts_factor()
            elif name == "tf":
                scaled = t_tf(scale_density(n, s)).value
                predicted = s.predicted_tf_naive_factor()
            elif name == "tf-corrected":
                scaled = tf_scaled_corrected(n, s).value
                predicted = s.predicted_ts_factor()
            else:
                scaled = t_s_orbital(scale_orbitals(orbitals, s)).value
                predicted = s.predicted_ts_factor()
            observed = _observed_factor(scaled, base, predicted)
            deviation = relative_deviation(observed, predicted)
            report.check(
                deviation <= FACTOR_TOL,
                f"{name} factor deviates by {deviation:g} at "
                f"(alpha={s.alpha:g}, beta={s.beta:g}, m={s.m:g}, p={s.p:g})",
            )
            report.rows.append(
                [name, s.alpha, s.beta, s.m, s.p, observed, predicted, deviation]
            )


def _cmd_verify_scaling(spec: RunSpec) -> Report:
    report = Report(
        ["functional", "alpha", "beta", "m", "p", "observed", "predicted", "deviation"]
    )
    _verify_rows(spec, report)
    return report


def _cmd_paradox(spec: RunSpec) -> Report:
    report = Report(
        [
            "alpha", "beta", "m", "p", "base_tf",
            "naive_factor", "predicted_naive",
            "corrected_factor", "predicted_corrected",
            "naive_over_corrected", "predicted_ratio", "deviation",
        ]
    )
    n = _density(spec)
    base = t_tf(n).value
    for s in spec.scaling_params():
        naive = t_tf(scale_density(n, s)).value
        corrected = tf_scaled_corrected(n, s).value
        naive_factor = _observed_factor(naive, base, s.predicted_tf_naive_factor())
        corrected_factor = _observed_factor(corrected, base, s.predicted_ts_factor())
        ratio = _observed_factor(naive, corrected, s.predicted_paradox_ratio())
        deviation = max(
            relative_deviation(naive_factor, s.predicted_tf_naive_factor()),
            relative_deviation(corrected_factor, s.predicted_ts_factor()),
            relative_deviation(ratio, s.predicted_paradox_ratio()),
        )
        report.check(
            deviation <= FACTOR_TOL,
            f"paradox factors deviate by {deviation:g} at "
            f"(alpha={s.alpha:g}, beta={s.beta:g}, m={s.m:g}, p={s.p:g})",
        )
        report.rows.append(
            [
                s.alpha, s.beta, s.m, s.p, base,
                naive_factor, s.predicted_tf_naive_factor(),
                corrected_factor, s.predicted_ts_factor(),
                ratio, s.predicted_paradox_ratio(), deviation,
            ]
        )
    return report


def _cmd_gas_converge(spec: RunSpec) -> Report:
    report = Report(
        ["electrons", "edge", "energy_per_volume", "continuum_value", "relative_error"]
    )
    for row in continuum_convergence(spec.nbar, spec.ladder):
        if row.electrons >= CONVERGED_COUNT:
            report.check(
                row.relative_error <= CONVERGED_ERROR,
                f"gas at N_e={row.electrons} misses the continuum value by "
                f"{row.relative_error:.3%}",
            )
        report.rows.append(
            [row.electrons, row.edge, row.energy_per_volume,
             row.continuum_value, row.relative_error]
        )
    return report


def _cmd_search(spec: RunSpec) -> Report:
    report = Report(
        [
            "orbital_count", "penalty_weight", "energy", "reference_vw",
            "energy_deviation", "density_residual", "penalty",
            "gradient_norm", "iterations", "converged", "operator_form_gap",
        ]
    )
    n = _density(spec, dim=1)
    cfg = SearchConfig(
        orbital_count=spec.orbital_count,
        penalty_weight=spec.penalty,
        step_size=spec.step,
        max_iterations=spec.max_iterations,
        convergence_tol=spec.tolerance,
    )
    result = minimize_ts(n, cfg)
    reference = t_vw(n).value
    # open-boundary diagnostic: operator form -(1/2) int phi lap(phi) vs
    # the gradient form the search minimizes
    operator_gap = t_s_orbital(result.orbitals).value - result.energy
    report.check(
        result.converged,
        f"search did not converge in {result.iterations} iterations "
        f"(gradient norm {result.gradient_norm:g})",
    )
    report.rows.append(
        [
            cfg.orbital_count, cfg.penalty_weight, result.energy, reference,
            relative_deviation(result.energy, reference), result.density_residual,
            result.penalty, result.gradient_norm, result.iterations, result.converged,
            operator_gap,
        ]
    )
    return report


def _cmd_tabulate(spec: RunSpec) -> Report:
    report = Report(
        ["family", "ne", "width", "grid", "functional", "value", "analytic", "deviation"]
    )
    for name in ("gaussian", "hydrogenic", "uniform"):
        model = DensityModel(FAMILIES[name], spec.electrons, spec.width)
        grid = default_grid(model, spec.grid_points, dim=3)
        n = sample_density(model, grid)
        for functional, evaluate, closed_form in (
            ("vw", t_vw, analytic_t_vw),
            ("tf", t_tf, analytic_t_tf),
        ):
            value = evaluate(n).value
            analytic = closed_form(model)
            report.rows.append(
                [
                    name, spec.electrons, spec.width, spec.grid_points,
                    functional, value, analytic, relative_deviation(value, analytic),
                ]
            )
    return report


_HANDLERS: dict[str, Callable[[RunSpec], Report]] = {
    "verify-scaling": _cmd_verify_scaling,
    "gas-converge": _cmd_gas_converge,
    "paradox": _cmd_paradox,
    "search": _cmd_search,
    "tabulate": _cmd_tabulate,
}


def _grid_size(text: str) -> int:
    value = int(text)
    if not MIN_GRID <= value <= MAX_GRID:
        raise argparse.ArgumentTypeError(
            f"grid size must lie in [{MIN_GRID}, {MAX_GRID}], got {value}"
        )
    return value


def _float_list(text: str) -> tuple[float, ...]:
    try:
        values = tuple(float(part) for part in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated floats: {exc}")
    if not values:
        raise argparse.ArgumentTypeError("expected at least one value")
    return values


def _int_list(text: str) -> tuple[int, ...]:
    values = []
    for part in text.split(","):
        number = float(part)
        if number != int(number):
            raise argparse.ArgumentTypeError(f"expected integers, got {part!r}")
        values.append(int(number))
    return tuple(values)


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=("tsv", "json"), default="tsv",
                        help="output format (default tsv)")
    parser.add_argument("--seed", type=int, default=0,
                        help="seed echoed into the metadata (default 0)")


def _add_density(parser: argparse.ArgumentParser, grid_default: int) -> None:
    parser.add_argument("--family", choices=sorted(FAMILIES), default="gaussian",
                        help="model density family (default gaussian)")
    parser.add_argument("--ne", type=float, default=1.0,
                        help="electron count (default 1)")
    parser.add_argument("--width", type=float, default=1.0,
                        help="family width parameter: gaussian exponent, "
                             "hydrogenic charge, or box edge (default 1)")
    parser.add_argument("--grid", type=_grid_size, default=grid_default,
                        help=f"grid points per axis in [{MIN_GRID}, {MAX_GRID}] "
                             f"(default {grid_default})")


def _add_scaling(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--alpha", type=_float_list, default=(2.0,),
                        help="comma list of amplitude bases (default 2)")
    parser.add_argument("--beta", type=_float_list, default=(2.0,),
                        help="comma list of coordinate bases (default 2)")
    parser.add_argument("--m", type=_float_list, default=(1.0,),
                        help="comma list of amplitude exponents (default 1)")
    parser.add_argument("--p", type=_float_list, default=(1.0,),
                        help="comma list of coordinate exponents (default 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ke-lab",
        description="Kinetic-energy functional verification tables.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser(
        "verify-scaling",
        help="observed vs predicted scaling factors for the functionals",
    )
    _add_density(verify, 32)
    _add_scaling(verify)
    verify.add_argument(
        "--functional", choices=("vw", "tf", "tf-corrected", "ks"), default=None,
        help="restrict to one functional (default: vw, tf, and tf-corrected)",
    )
    _add_common(verify)

    gas = sub.add_parser(
        "gas-converge",
        help="discrete gas energy per volume against the continuum value",
    )
    gas.add_argument("--nbar", type=float, default=1.0,
                     help="mean density held fixed along the ladder (default 1)")
    gas.add_argument("--ladder", type=_int_list, default=(100, 1000, 10000),
                     help="comma list of electron counts (default 100,1000,10000)")
    _add_common(gas)

    paradox = sub.add_parser(
        "paradox",
        help="naive vs gas-corrected Thomas-Fermi scaling side by side",
    )
    _add_density(paradox, 32)
    _add_scaling(paradox)
    _add_common(paradox)

    search = sub.add_parser(
        "search",
        help="constrained-search minimization on a 1-D target density",
    )
    _add_density(search, 64)
    search.add_argument("--ns", type=int, choices=(1, 2), default=1,
                        help="number of orbitals (default 1)")
    search.add_argument("--penalty", type=float, default=1e8,
                        help="density-mismatch penalty weight (default 1e8)")
    search.add_argument("--step", type=float, default=1e-3,
                        help="initial gradient step (default 1e-3)")
    search.add_argument("--max-iter", type=int, default=50000,
                        help="iteration budget (default 50000)")
    search.add_argument("--tol", type=float, default=1e-2,
                        help="projected-gradient convergence norm (default 1e-2)")
    _add_common(search)

    tab = sub.add_parser(
        "tabulate",
        help="functional values against closed forms for the model densities",
    )
    tab.add_argument("--ne", type=float, default=1.0,
                     help="electron count applied to every family (default 1)")
    tab.add_argument("--width", type=float, default=1.0,
                     help="width parameter applied to every family (default 1)")
    tab.add_argument("--grid", type=_grid_size, default=32,
                     help="grid points per axis (default 32)")
    _add_common(tab)

    return parser


def _runspec(args: argparse.Namespace) -> RunSpec:
    fields: dict[str, Any] = {
        "command": args.command,
        "fmt": args.format,
        "seed": args.seed,
    }
    if args.command in ("verify-scaling", "paradox", "search"):
        fields.update(
            family=args.family, electrons=args.ne, width=args.width,
            grid_points=args.grid,
        )
    if args.command == "tabulate":
        fields.update(electrons=args.ne, width=args.width, grid_points=args.grid)
    if args.command in ("verify-scaling", "paradox"):
        fields.update(alphas=args.alpha, betas=args.beta, ms=args.m, ps=args.p)
    if args.command == "verify-scaling":
        fields.update(functional=args.functional)
    if args.command == "gas-converge":
        fields.update(nbar=args.nbar, ladder=args.ladder)
    if args.command == "search":
        fields.update(
            orbital_count=args.ns, penalty=args.penalty, step=args.step,
            max_iterations=args.max_iter, tolerance=args.tol,
        )
    return RunSpec(**fields)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        spec = _runspec(args)
        report = _HANDLERS[spec.command](spec)
    except (KineticLabError, OverflowError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if spec.fmt == "json":
        _write_json(sys.stdout, spec, report)
    else:
        _write_tsv(sys.stdout, spec, report)
    sys.stdout.flush()
    for message in report.failures:
        print(f"assertion failed: {message}", file=sys.stderr)
    return 1 if report.failures else 0


if __name__ == "__main__":
    sys.exit(main())
