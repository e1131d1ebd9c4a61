"""Command-line front end: runs models, reproduces figure data, sweeps parameters.

Data files are plain CSV with a fixed "%.12g" number format, so identical
inputs produce byte-identical output.  Everything else about a run
(parameters, integrator settings, tool version) goes into a JSON sidecar
next to the CSV, written with sorted keys and no timestamps.

Exit codes: 0 success, 2 invalid usage or parameters, 3 integrator
failure, 1 failed spectrum verification.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, replace
from math import exp, floor, inf, pi
from pathlib import Path

import numpy as np

from . import __version__
from . import closed_form
from .core import IntegratorError, WalkParams, diagnose, hitting_probability, vertex_state, von_neumann_entropy
from .dynamics import (
    IntegratorConfig,
    Method,
    ModelKind,
    discrete_measured_step,
    evolve,
    subspace_projectors,
    verify_perturbative_spectrum,
    vertex_projectors,
    walk_unitary,
)
from .network import (
    NoiseKind,
    NoiseParams,
    evolve_collective,
    evolve_independent,
    hypercube_coupling,
    load_coupling_csv,
    rescale_excited_block,
    single_excitation,
)

_CLOSED_MODELS = ("unitary", "vertex-perturbative", "subspace-closed")
_NUMERIC_MODELS = ("vertex-numeric", "subspace-numeric")
_NETWORK_MODELS = ("network-independent", "network-collective")
MODELS = _CLOSED_MODELS + _NUMERIC_MODELS + ("discrete-measured",) + _NETWORK_MODELS

OUTPUTS = ("hitting", "entropy", "diagnostics")
_DIAG_COLUMNS = ("trace_deviation", "hermiticity_deviation", "min_eigenvalue")

# Figure parameter sets fixed by the captions.
FIGURE_DIMENSIONS = (1, 4, 10)
FIGURE_OMEGA = 1.0
FIGURE_LAMBDA = 0.2
FIGURE_SWEEP_DIMENSIONS = tuple(range(1, 11))


@dataclass(frozen=True)
class RunSpec:
    model: str
    d: int
    omega: float = 1.0
    lam: float = 0.0
    t_max: float = 10.0
    dt_sample: float = 0.01
    outputs: tuple = ("hitting",)
    out: Path | None = None
    dt: float = 1e-3
    method: str = Method.SPLIT_OPERATOR.value
    trace_tol: float = 1e-9
    family: str = "vertex"
    p: float | None = None
    t1: float = inf
    tphi: float = inf

    def __post_init__(self):
        if self.model not in MODELS:
            raise ValueError(f"unknown model {self.model!r}; choose from {', '.join(MODELS)}")
        if self.t_max <= 0:
            raise ValueError(f"t-max must be positive, got {self.t_max}")
        if self.dt_sample <= 0:
            raise ValueError(f"dt-sample must be positive, got {self.dt_sample}")
        bad = [o for o in self.outputs if o not in OUTPUTS]
        if bad:
            raise ValueError(f"unknown outputs {bad}; choose from {', '.join(OUTPUTS)}")
        if self.model in _CLOSED_MODELS + _NETWORK_MODELS and set(self.outputs) != {"hitting"}:
            raise ValueError(f"model {self.model} supports only the hitting output")
        if self.family not in ("vertex", "subspace"):
            raise ValueError(f"family must be vertex or subspace, got {self.family!r}")


@dataclass(frozen=True)
class FigureSpec:
    figure: int
    outdir: Path
    t_max: float | None = None
    dt_sample: float | None = None
    dt: float | None = None

    def __post_init__(self):
        if self.figure not in (1, 2, 3, 4):
            raise ValueError(f"figure must be 1-4, got {self.figure}")


def _time_grid(t_max: float, dt_sample: float) -> np.ndarray:
    n = int(floor(t_max / dt_sample + 1e-9)) + 1
    return np.arange(n) * dt_sample


def _resolve_out(path: Path) -> Path:
    """Relative output paths land in $HYPERWALK_OUTDIR when it is set."""
    outdir = os.environ.get("HYPERWALK_OUTDIR")
    if outdir and not path.is_absolute():
        path = Path(outdir) / path
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


def _format(value) -> str:
    return "%.12g" % value


def _write_csv(path: Path, header, columns) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for row in zip(*columns):
            fh.write(",".join(_format(v) for v in row) + "\n")


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, Path):
        return str(obj)
    if isinstance(obj, float) and not np.isfinite(obj):
        return "inf" if obj > 0 else "-inf"
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    return obj


def _write_meta(csv_path: Path, meta: dict) -> None:
    if csv_path.suffix == ".csv":
        meta_path = csv_path.with_suffix(".meta.json")
    else:
        meta_path = csv_path.with_name(csv_path.name + ".meta.json")
    with open(meta_path, "w", newline="") as fh:
        fh.write(json.dumps(_jsonable(meta), sort_keys=True, indent=2) + "\n")


def _run_meta(spec: RunSpec, command: str, header) -> dict:
    meta = asdict(spec)
    meta["p"] = _resolved_measure_probability(spec) if spec.model == "discrete-measured" else None
    meta.pop("out")
    meta.update(command=command, columns=list(header), version=__version__)
    if spec.model.startswith("subspace"):
        # the closed form switches to its hyperbolic branch here
        meta["overdamped"] = spec.lam > 4 * spec.omega
    return meta


def _resolved_measure_probability(spec: RunSpec) -> float:
    return spec.lam * spec.dt_sample if spec.p is None else spec.p


def _integrator_config(spec: RunSpec) -> IntegratorConfig:
    return IntegratorConfig(dt=spec.dt, method=Method(spec.method), trace_tol=spec.trace_tol)


def _closed_hitting(spec: RunSpec, t: np.ndarray) -> np.ndarray:
    if spec.model == "unitary":
        return closed_form.unitary_hitting(WalkParams(spec.d, spec.omega, 0.0), t)
    params = WalkParams(spec.d, spec.omega, spec.lam)
    if spec.model == "vertex-perturbative":
        return closed_form.vertex_hitting_perturbative(params, t)
    return closed_form.subspace_hitting(params, t)


def _trajectory_columns(spec: RunSpec, t, hitting, entropy, diagnostics):
    header, columns = ["t", "hitting"], [t, np.asarray(hitting)]
    if "entropy" in spec.outputs:
        header.append("entropy")
        columns.append(np.asarray(entropy))
    if "diagnostics" in spec.outputs:
        header.extend(_DIAG_COLUMNS)
        for name in ("trace_deviation", "hermiticity_deviation", "min_eigenvalue"):
            columns.append(np.array([getattr(s, name) for s in diagnostics]))
    return header, columns


def _compute_discrete(spec: RunSpec, t: np.ndarray):
    params = WalkParams(spec.d, spec.omega, spec.lam)
    family = (vertex_projectors if spec.family == "vertex" else subspace_projectors)(spec.d)
    p = _resolved_measure_probability(spec)
    U = walk_unitary(params, spec.dt_sample)
    rho = vertex_state(spec.d)
    target = params.dim - 1
    hitting, entropy, diagnostics = [], [], []
    for step in range(t.size):
        if step:
            rho = discrete_measured_step(rho, U, family, p)
        hitting.append(hitting_probability(rho, target))
        if "entropy" in spec.outputs:
            entropy.append(von_neumann_entropy(rho))
        if "diagnostics" in spec.outputs:
            diagnostics.append(diagnose(rho))
    return _trajectory_columns(spec, t, hitting, entropy, diagnostics)


def _compute_network_run(spec: RunSpec, t: np.ndarray):
    coupling = hypercube_coupling(spec.d, spec.omega)
    if spec.model == "network-independent":
        noise = NoiseParams(t1=spec.t1, tphi=spec.tphi, kind=NoiseKind.INDEPENDENT)
        traj = evolve_independent(
            single_excitation(coupling.size), coupling, noise, t, _integrator_config(spec)
        )
    else:
        noise = NoiseParams(t1=spec.t1, tphi=spec.tphi, kind=NoiseKind.COLLECTIVE)
        traj = evolve_collective(
            single_excitation(coupling.size), coupling, noise, t, _integrator_config(spec)
        )
    return ["t", "hitting"], [t, traj.site_populations(coupling.size - 1)]


def _compute_run(spec: RunSpec):
    """Evaluate the model on its sample grid; returns (header, columns)."""
    t = _time_grid(spec.t_max, spec.dt_sample)
    if spec.model in _CLOSED_MODELS:
        return ["t", "hitting"], [t, np.asarray(_closed_hitting(spec, t))]
    if spec.model == "discrete-measured":
        return _compute_discrete(spec, t)
    if spec.model in _NETWORK_MODELS:
        return _compute_network_run(spec, t)
    kind = ModelKind.VERTEX if spec.model == "vertex-numeric" else ModelKind.SUBSPACE
    params = WalkParams(spec.d, spec.omega, spec.lam)
    traj = evolve(
        vertex_state(spec.d),
        params,
        kind,
        _integrator_config(spec),
        t,
        compute_entropy="entropy" in spec.outputs,
        compute_diagnostics="diagnostics" in spec.outputs,
    )
    return _trajectory_columns(spec, t, traj.hitting, traj.entropy, traj.diagnostics)


def run(spec: RunSpec) -> Path:
    """Execute one RunSpec; write its CSV and sidecar; return the CSV path."""
    if spec.out is None:
        raise ValueError("an output path is required")
    header, columns = _compute_run(spec)
    path = _resolve_out(spec.out)
    _write_csv(path, header, columns)
    _write_meta(path, _run_meta(spec, "run", header))
    return path


# ---------------------------------------------------------------- figures


def _figure_grid(spec: FigureSpec) -> np.ndarray:
    default_t_max = 12.0 if spec.figure == 4 else 10.0
    default_dt_sample = 0.05 if spec.figure == 4 else 0.01
    return _time_grid(spec.t_max or default_t_max, spec.dt_sample or default_dt_sample)


def _figure_meta(spec: FigureSpec, header, **extra) -> dict:
    meta = {
        "command": "reproduce-figure",
        "figure": spec.figure,
        "omega": FIGURE_OMEGA,
        "lambda": FIGURE_LAMBDA,
        "columns": list(header),
        "version": __version__,
    }
    meta.update(extra)
    return meta


def _emit(spec: FigureSpec, name: str, header, columns, **extra) -> Path:
    path = _resolve_out(spec.outdir / name)
    _write_csv(path, header, columns)
    _write_meta(path, _figure_meta(spec, header, **extra))
    return path


def _hitting_curves(spec: FigureSpec, formula) -> list[Path]:
    t = _figure_grid(spec)
    return [
        _emit(
            spec,
            f"fig{spec.figure}_d{d}.csv",
            ["t", "hitting"],
            [t, formula(WalkParams(d, FIGURE_OMEGA, FIGURE_LAMBDA), t)],
            d=d,
        )
        for d in FIGURE_DIMENSIONS
    ]


def _limit_rows(spec: FigureSpec) -> list[Path]:
    T = pi / (2 * FIGURE_OMEGA)
    dims = np.array(FIGURE_SWEEP_DIMENSIONS, dtype=float)
    vertex = [
        closed_form.vertex_hitting_perturbative(WalkParams(d, FIGURE_OMEGA, FIGURE_LAMBDA), T)
        for d in FIGURE_SWEEP_DIMENSIONS
    ]
    subspace = [
        closed_form.subspace_hitting(WalkParams(d, FIGURE_OMEGA, FIGURE_LAMBDA), T)
        for d in FIGURE_SWEEP_DIMENSIONS
    ]
    bound = np.full(dims.shape, exp(-FIGURE_LAMBDA * T))
    header = ["d", "vertex", "subspace", "bound"]
    return [_emit(spec, "fig3.csv", header, [dims, vertex, subspace, bound], T=T)]


def _entropy_curves(spec: FigureSpec) -> list[Path]:
    t = _figure_grid(spec)
    files = []
    for d in FIGURE_DIMENSIONS:
        dt = spec.dt or (5e-3 if d == 10 else 1e-3)
        traj = evolve(
            vertex_state(d),
            WalkParams(d, FIGURE_OMEGA, FIGURE_LAMBDA),
            ModelKind.VERTEX,
            IntegratorConfig(dt=dt),
            t,
            compute_entropy=True,
        )
        files.append(
            _emit(
                spec,
                f"fig4_d{d}.csv",
                ["t", "entropy_over_d"],
                [t, traj.entropy / d],
                d=d,
                dt=dt,
            )
        )
    reference = 1.0 - np.exp(-FIGURE_LAMBDA * t)
    files.append(
        _emit(spec, "fig4_reference.csv", ["t", "entropy_over_d"], [t, reference])
    )
    return files


def reproduce_figure(spec: FigureSpec) -> list[Path]:
    """Write the CSV curves behind one figure; returns the paths."""
    if spec.figure == 1:
        return _hitting_curves(spec, closed_form.vertex_hitting_perturbative)
    if spec.figure == 2:
        return _hitting_curves(spec, closed_form.subspace_hitting)
    if spec.figure == 3:
        return _limit_rows(spec)
    return _entropy_curves(spec)


# ---------------------------------------------------------------- sweep

_AXES = {"d": "d", "lambda": "lam", "omega": "omega"}


def _parse_values(text: str) -> list[float]:
    text = text.strip()
    if ".." in text:
        lo, hi = text.split("..", 1)
        return [float(v) for v in range(int(lo), int(hi) + 1)]
    return [float(v) for v in text.split(",") if v.strip()]


def _sweep_point(spec: RunSpec, axis: str, value: float, at: float | None) -> RunSpec:
    if axis == "d":
        if value != int(value) or value < 1:
            raise ValueError(f"d values must be positive integers, got {value}")
        point = replace(spec, d=int(value))
    else:
        point = replace(spec, **{_AXES[axis]: value})
    if at is not None:
        if spec.model == "discrete-measured":
            # keep the step size: truncating the grid preserves the process
            point = replace(point, t_max=at)
        else:
            point = replace(point, t_max=at, dt_sample=at)
    return point


def _sweep_worker(job):
    spec, axis, value, at = job
    header, columns = _compute_run(_sweep_point(spec, axis, value, at))
    if at is not None:
        columns = [c[-1:] for c in columns]
    return header, columns


def sweep(base: RunSpec, axis: str, values, at: float | None = None) -> int:
    """Run the base spec across sorted axis values into one combined CSV.

    Independent points dispatch across a process pool; assembly is
    sequential in axis order.  Failed points are reported on stderr and
    skipped; any failure makes the exit code 3.
    """
    if axis not in _AXES:
        raise ValueError(f"axis must be one of {', '.join(_AXES)}, got {axis!r}")
    if base.out is None:
        raise ValueError("an output path is required")
    if not values:
        raise ValueError("no sweep values given")
    values = sorted(values)
    jobs = [(base, axis, v, at) for v in values]
    failures = []
    results = {}
    with ProcessPoolExecutor(max_workers=min(len(jobs), os.cpu_count() or 1)) as pool:
        futures = {pool.submit(_sweep_worker, job): job[2] for job in jobs}
        for future, value in futures.items():
            try:
                results[value] = future.result()
            except (ValueError, IntegratorError) as exc:
                failures.append((value, exc))
                print(f"sweep {axis}={_format(value)} failed: {exc}", file=sys.stderr)

    header = None
    combined = None
    for value in values:
        if value not in results:
            continue
        point_header, columns = results[value]
        if header is None:
            header = [axis, *point_header]
            combined = [[] for _ in header]
        tag = np.full(columns[0].shape, value)
        for dst, col in zip(combined, [tag, *columns]):
            dst.append(np.asarray(col, dtype=float))
    if header is None:
        raise ValueError("every sweep point failed; no output written")

    path = _resolve_out(base.out)
    _write_csv(path, header, [np.concatenate(c) for c in combined])
    meta = _run_meta(base, "sweep", header)
    meta.update(axis=axis, values=list(values), at=at)
    _write_meta(path, meta)
    return 3 if failures else 0


# ---------------------------------------------------------------- spectrum


def _spectrum_payload(d: int, omega: float, lam: float, tol: float) -> tuple[dict, bool]:
    report = verify_perturbative_spectrum(WalkParams(d, omega, lam), tol=tol)
    payload = {
        "d": d,
        "omega": omega,
        "lambda": lam,
        "tol": tol,
        "passed": report.passed,
        "max_mismatch": report.max_mismatch,
        "basis_residual": report.basis_residual,
        "version": __version__,
        "subspaces": [
            {
                "n": s.n,
                "dimension": s.dimension,
                "predicted": [[v, m] for v, m in s.predicted],
                "computed": [float(v) for v in s.computed],
                "max_mismatch": s.max_mismatch,
            }
            for s in report.subspaces
        ],
    }
    return payload, report.passed


# ---------------------------------------------------------------- parser

_CONFIG_KEYS = {
    "model", "d", "omega", "lambda", "t-max", "dt-sample", "outputs", "out",
    "dt", "method", "trace-tol", "family", "p", "t1", "tphi",
    "axis", "values", "at", "kind", "coupling-csv", "rescale",
}


def _load_config(path: str) -> list[str]:
    """Turn key=value lines into argv tokens; explicit flags override them."""
    tokens = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value, got {raw.strip()!r}")
            key, value = (part.strip() for part in line.split("=", 1))
            if key not in _CONFIG_KEYS:
                raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
            if value.lower() == "true":
                tokens.append(f"--{key}")
            elif value.lower() != "false":
                tokens.extend([f"--{key}", value])
    return tokens


def _inject_config(argv: list[str]) -> list[str]:
    if "--config" not in argv:
        return argv
    path = argv[argv.index("--config") + 1]
    return [argv[0], *_load_config(path), *argv[1:]]


def _outputs_arg(text: str) -> tuple:
    requested = {part.strip() for part in text.split(",") if part.strip()}
    return tuple(o for o in OUTPUTS if o in requested) or tuple(sorted(requested))


def _add_grid_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--t-max", type=float, default=10.0, help="end of the sample grid")
    p.add_argument("--dt-sample", type=float, default=0.01, help="sample spacing")


def _add_integrator_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--dt", type=float, default=1e-3, help="integrator sub-step")
    p.add_argument(
        "--method",
        choices=[m.value for m in Method],
        default=Method.SPLIT_OPERATOR.value,
        help="numerical integrator",
    )
    p.add_argument("--trace-tol", type=float, default=1e-9, help="trace deviation abort threshold")


def _add_run_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--model", required=True, choices=MODELS)
    p.add_argument("--d", type=int, required=True, help="hypercube dimension")
    p.add_argument("--omega", type=float, default=1.0, help="hopping rate")
    p.add_argument("--lambda", dest="lam", type=float, default=0.0, help="dephasing rate")
    _add_grid_flags(p)
    p.add_argument(
        "--outputs",
        type=_outputs_arg,
        default=("hitting",),
        help="comma-separated subset of hitting,entropy,diagnostics",
    )
    p.add_argument("--out", type=Path, required=True, help="CSV output path")
    _add_integrator_flags(p)
    p.add_argument(
        "--family",
        choices=["vertex", "subspace"],
        default="vertex",
        help="projector family for discrete-measured",
    )
    p.add_argument(
        "--p", type=float, default=None, help="measurement probability (default lambda*dt-sample)"
    )
    p.add_argument("--t1", type=float, default=inf, help="energy decay time for network models")
    p.add_argument("--tphi", type=float, default=inf, help="dephasing time for network models")
    p.add_argument("--config", type=str, default=None, help="key=value defaults file")


def _spec_from_args(args) -> RunSpec:
    return RunSpec(
        model=args.model,
        d=args.d,
        omega=args.omega,
        lam=args.lam,
        t_max=args.t_max,
        dt_sample=args.dt_sample,
        outputs=args.outputs,
        out=args.out,
        dt=args.dt,
        method=args.method,
        trace_tol=args.trace_tol,
        family=args.family,
        p=args.p,
        t1=args.t1,
        tphi=args.tphi,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyperwalk",
        description="Hitting probabilities and entropy of decoherent quantum walks on the hypercube.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="simulate one model and write a CSV")
    _add_run_flags(run_p)

    fig_p = sub.add_parser(
        "reproduce-figure", help="write the CSV curves behind one of the four figures"
    )
    fig_p.add_argument("figure", type=int, choices=[1, 2, 3, 4])
    fig_p.add_argument("--outdir", type=Path, default=Path("."), help="directory for the CSVs")
    fig_p.add_argument("--t-max", type=float, default=None, help="override the time range")
    fig_p.add_argument("--dt-sample", type=float, default=None, help="override the sample spacing")
    fig_p.add_argument("--dt", type=float, default=None, help="override the integrator sub-step")

    sweep_p = sub.add_parser("sweep", help="run one model across an axis of parameter values")
    _add_run_flags(sweep_p)
    sweep_p.add_argument("--axis", required=True, choices=sorted(_AXES))
    sweep_p.add_argument(
        "--values", required=True, help="comma-separated values, or lo..hi for integers"
    )
    sweep_p.add_argument(
        "--at", type=float, default=None, help="report a single time instead of the full grid"
    )

    spec_p = sub.add_parser("spectrum", help="verify the perturbative decay rates (JSON report)")
    spec_p.add_argument("--d", type=int, required=True)
    spec_p.add_argument("--omega", type=float, default=1.0)
    spec_p.add_argument("--lambda", dest="lam", type=float, required=True)
    spec_p.add_argument("--tol", type=float, default=1e-9)
    spec_p.add_argument("--out", type=Path, default=None, help="JSON path (default stdout)")

    net_p = sub.add_parser("network", help="evolve a qubit network in the single-excitation sector")
    net_p.add_argument("--kind", required=True, choices=[k.value for k in NoiseKind])
    net_p.add_argument("--d", type=int, default=None, help="hypercube dimension for the coupling")
    net_p.add_argument(
        "--coupling-csv", type=Path, default=None, help="adjacency matrix (independent kind only)"
    )
    net_p.add_argument("--omega", type=float, default=1.0)
    net_p.add_argument("--t1", type=float, default=inf)
    net_p.add_argument("--tphi", type=float, default=inf)
    _add_grid_flags(net_p)
    _add_integrator_flags(net_p)
    net_p.add_argument(
        "--rescale", action="store_true", help="remove the exp(-t/T1) envelope from the block"
    )
    net_p.add_argument("--out", type=Path, required=True)
    net_p.add_argument("--config", type=str, default=None, help="key=value defaults file")
    return parser


def _cmd_run(args) -> int:
    path = run(_spec_from_args(args))
    print(f"wrote {path}")
    return 0


def _cmd_reproduce_figure(args) -> int:
    spec = FigureSpec(
        figure=args.figure,
        outdir=args.outdir,
        t_max=args.t_max,
        dt_sample=args.dt_sample,
        dt=args.dt,
    )
    for path in reproduce_figure(spec):
        print(f"wrote {path}")
    return 0


def _cmd_sweep(args) -> int:
    base = _spec_from_args(args)
    code = sweep(base, args.axis, _parse_values(args.values), args.at)
    print(f"wrote {_resolve_out(base.out)}")
    return code


def _cmd_spectrum(args) -> int:
    payload, passed = _spectrum_payload(args.d, args.omega, args.lam, args.tol)
    text = json.dumps(_jsonable(payload), sort_keys=True, indent=2) + "\n"
    if args.out is None:
        sys.stdout.write(text)
    else:
        path = _resolve_out(args.out)
        with open(path, "w", newline="") as fh:
            fh.write(text)
        print(f"wrote {path}")
    return 0 if passed else 1


def _cmd_network(args) -> int:
    if (args.d is None) == (args.coupling_csv is None):
        raise ValueError("give exactly one of --d or --coupling-csv")
    kind = NoiseKind(args.kind)
    if args.coupling_csv is not None:
        if kind is NoiseKind.COLLECTIVE:
            raise ValueError("collective dephasing needs bit-labeled nodes; use --d")
        coupling = load_coupling_csv(args.coupling_csv)
    else:
        coupling = hypercube_coupling(args.d, args.omega)
    noise = NoiseParams(t1=args.t1, tphi=args.tphi, kind=kind)
    config = IntegratorConfig(dt=args.dt, method=Method(args.method), trace_tol=args.trace_tol)
    t = _time_grid(args.t_max, args.dt_sample)
    evolver = evolve_independent if kind is NoiseKind.INDEPENDENT else evolve_collective
    traj = evolver(single_excitation(coupling.size), coupling, noise, t, config)
    if args.rescale:
        traj = rescale_excited_block(traj, args.t1)
    header = ["t", "ground", "hitting"]
    columns = [t, traj.ground_populations(), traj.site_populations(coupling.size - 1)]
    path = _resolve_out(args.out)
    _write_csv(path, header, columns)
    meta = {
        "command": "network",
        "kind": args.kind,
        "d": args.d,
        "coupling_csv": args.coupling_csv,
        "omega": args.omega,
        "t1": args.t1,
        "tphi": args.tphi,
        "t_max": args.t_max,
        "dt_sample": args.dt_sample,
        "dt": args.dt,
        "method": args.method,
        "trace_tol": args.trace_tol,
        "rescale": args.rescale,
        "columns": header,
        "version": __version__,
    }
    _write_meta(path, meta)
    print(f"wrote {path}")
    return 0


_COMMANDS = {
    "run": _cmd_run,
    "reproduce-figure": _cmd_reproduce_figure,
    "sweep": _cmd_sweep,
    "spectrum": _cmd_spectrum,
    "network": _cmd_network,
}


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        if argv and argv[0] in ("run", "sweep", "network"):
            argv = _inject_config(argv)
    except (OSError, ValueError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except IntegratorError as exc:
        print(f"integrator failure: {exc}", file=sys.stderr)
        if exc.diagnostics is not None:
            print(f"diagnostics: {exc.diagnostics}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
