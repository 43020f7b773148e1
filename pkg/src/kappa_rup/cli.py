"""Batch command-line interface.

One executable, five commands selected by --command:

  verify       run the numerical cross-check suites, emit a JSON report
  table        CSV of closed-form vs quadrature state moments per kappa
  plot-psi     CSV of psi(p) curves for several kappa (figure data)
  bound-alpha  JSON fine-structure-constant bound pipeline
  maxent-demo  JSON MaxEnt solve + deformed-exponential fit

Exit codes: 0 success, 1 usage/config error, 2 verification or solver
failure. Output is deterministic: identical configuration produces
byte-identical files (floats printed with 17 significant digits in
CSV, shortest round-trip representation in JSON; no timestamps).
Every emitted document starts with a metadata record (a '#'-prefixed
JSON line for CSV) carrying the tool version, the command, and the
fully resolved configuration.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import brentq

from . import __version__
from .coherent_states import (
    StateSpec,
    delta_p,
    delta_x,
    f_expectation,
    f_expectation_quadrature,
    normalization_constant,
    psi,
    quadrature_moment,
    second_moment,
)
from .deformed_algebra import GridFunction, annihilation_residual, commutator_residual, ode_residual
from .errors import KappaRupError, NonConvergenceError
from .kappa_math import as_kappa
from .kinematics import ParticleFrame, physical_map
from .maxent import MaxEntProblem, fit_kappa_exponential, maxent_solve
from .phenomenology import PhenoConfig, kappa_bound

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_FAIL = 2

ENV_CONFIG = "KAPPA_RUP_CONFIG"

_COMMANDS = ("verify", "table", "plot-psi", "bound-alpha", "maxent-demo")

_DEFAULT_KAPPAS = {
    "verify": (0.05, 0.1, 0.3, 0.6),
    "table": (0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6),
    "plot-psi": (0.0, 0.2, 0.4, 0.6),
    "bound-alpha": (0.2,),
    "maxent-demo": (0.2,),
}

_JSON_COMMANDS = ("verify", "bound-alpha", "maxent-demo")


class ConfigError(KappaRupError):
    """Bad flags or config file; maps to exit code 1."""


@dataclass
class RunConfig:
    command: str
    kappas: Tuple[float, ...]
    zeta: float = 1.0
    hbar: float = 1.0
    grid_min: float = -8.0
    grid_max: float = 8.0
    grid_n: int = 321
    tol: Optional[float] = None
    out: Optional[str] = None
    fmt: str = "json"
    pheno: PhenoConfig = field(default_factory=PhenoConfig)
    maxent: Optional[dict] = None

    def resolved_dict(self) -> dict:
        d = {
            "command": self.command,
            "kappa": list(self.kappas),
            "zeta": self.zeta,
            "hbar": self.hbar,
            "grid": {"min": self.grid_min, "max": self.grid_max, "n": self.grid_n},
            "tol": self.tol,
            "format": self.fmt,
        }
        if self.command == "bound-alpha":
            d["pheno"] = self.pheno.to_json_dict()
        if self.command == "maxent-demo":
            d["maxent"] = self.maxent
        return d


def _f17(x) -> str:
    return format(float(x), ".17g")


def _meta(cfg: RunConfig) -> dict:
    return {
        "tool": "kappa-rup",
        "version": __version__,
        "command": cfg.command,
        "config": cfg.resolved_dict(),
    }


def _emit(cfg: RunConfig, text: str):
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv_document(meta: dict, header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    lines = ["# " + json.dumps(meta)]
    lines.append(",".join(header))
    lines.extend(",".join(row) for row in rows)
    return "\n".join(lines) + "\n"


def _json_document(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


# ---------------------------------------------------------------------------
# verify command
# ---------------------------------------------------------------------------

def _gibbs_distribution(energies: np.ndarray, mean: float) -> np.ndarray:
    """Analytic kappa = 0 reference: n ~ exp(-beta E) solving the mean."""
    e = energies - mean

    def gap(beta):
        wgt = np.exp(-beta * (e - e.min()))
        return float((wgt @ e) / wgt.sum())

    lo, hi = -1.0, 1.0
    while gap(lo) <= 0.0:
        lo *= 2.0
    while gap(hi) >= 0.0:
        hi *= 2.0
    beta = brentq(gap, lo, hi, xtol=1e-15, rtol=8.9e-16)
    wgt = np.exp(-beta * (e - e.min()))
    return wgt / wgt.sum()


def _convergence_ratios(residuals: Sequence[float]) -> float:
    return min(residuals[i] / residuals[i + 1] for i in range(len(residuals) - 1))


def _run_checks(cfg: RunConfig) -> list:
    checks = []

    def add(name, measured, tolerance, comparator="<="):
        tol = cfg.tol if cfg.tol is not None else tolerance
        ok = measured <= tol if comparator == "<=" else measured >= tol
        checks.append(
            {
                "check_name": name,
                "status": "pass" if ok else "fail",
                "measured": float(measured),
                "tolerance": float(tol),
                "comparator": comparator,
            }
        )

    z, hb = cfg.zeta, cfg.hbar
    specs = [StateSpec(as_kappa(k), z, hb) for k in cfg.kappas]

    add(
        "normalization",
        max(abs(quadrature_moment(0, s, 1e-10) - 1.0) for s in specs),
        1e-8,
    )
    add(
        "moment_agreement",
        max(
            abs(second_moment(s) - quadrature_moment(2, s, 1e-10)) / second_moment(s)
            for s in specs
        ),
        1e-6,
    )
    add(
        "saturation_closed",
        max(
            abs(delta_x(s) * delta_p(s) - 0.5 * s.hbar * f_expectation(s.kappa))
            / (0.5 * s.hbar * f_expectation(s.kappa))
            for s in specs
        ),
        1e-12,
    )
    add(
        "saturation_quadrature",
        max(
            abs(f_expectation(s.kappa) - f_expectation_quadrature(s, 1e-10))
            / f_expectation(s.kappa)
            for s in specs
        ),
        1e-6,
    )

    p_grid = np.linspace(-5.0 / math.sqrt(z), 5.0 / math.sqrt(z), 200)
    ode_worst = 0.0
    for s in specs:
        if s.kappa.value == 0.0:
            continue
        dp_val = delta_p(s)
        dx_val = hb * z * (1.0 - s.kappa.value**2) * dp_val
        res = ode_residual(p_grid, s.kappa, z, dx_val, dp_val, hb)
        ode_worst = max(ode_worst, float(np.max(np.abs(res))))
    add("ode_residual", ode_worst, 1e-9)

    conv_spec = StateSpec(as_kappa(0.2), z, hb)
    extent = 400.0 / math.sqrt(z)
    sizes = (2048, 4096, 8192, 16384)
    ann = [annihilation_residual(conv_spec, -extent, extent, n) for n in sizes]
    add("annihilation_convergence", _convergence_ratios(ann), 12.0, ">=")
    comm = []
    for n in sizes:
        p = np.linspace(-extent, extent, n)
        grid = GridFunction(-extent, extent, psi(p, conv_spec).astype(complex))
        comm.append(commutator_residual(grid, conv_spec.kappa, z, hb))
    add("commutator_convergence", _convergence_ratios(comm), 12.0, ">=")

    kin_worst = 0.0
    kin_kappas = (0.1, 0.3, 0.7)
    for beta in (0.1, 0.5, 0.9):
        states = [
            physical_map(ParticleFrame(1.0, 1.0, as_kappa(k)), beta) for k in kin_kappas
        ]
        gamma = 1.0 / math.sqrt(1.0 - beta * beta)
        for st in states:
            kin_worst = max(
                kin_worst,
                abs(st.p - gamma * beta) / (gamma * beta),
                abs(st.E - gamma) / gamma,
            )
        ref = states[0]
        for st in states[1:]:
            kin_worst = max(
                kin_worst, abs(st.p - ref.p) / ref.p, abs(st.E - ref.E) / ref.E
            )
    add("kinematics", kin_worst, 1e-12)

    energies = np.arange(5.0)
    mean = 1.2
    gibbs = _gibbs_distribution(energies, mean)
    sol0 = maxent_solve(MaxEntProblem(energies, mean, as_kappa(0.0)), tol=1e-12)
    add("maxent_gibbs", float(np.max(np.abs(sol0.distribution - gibbs))), 1e-10)
    sol_k = maxent_solve(MaxEntProblem(energies, mean, as_kappa(0.2)), tol=1e-12)
    add("maxent_kkt", sol_k.kkt_residual, 1e-10)

    return checks


def cmd_verify(cfg: RunConfig) -> int:
    for k in cfg.kappas:
        if not as_kappa(k).moment_safe:
            raise ConfigError(
                f"verify runs moment checks and needs kappa < 2/3, got {k}"
            )
    checks = _run_checks(cfg)
    all_passed = all(c["status"] == "pass" for c in checks)
    doc = {"meta": _meta(cfg), "checks": checks, "all_passed": all_passed}
    _emit(cfg, _json_document(doc))
    return EXIT_OK if all_passed else EXIT_FAIL


# ---------------------------------------------------------------------------
# table / plot commands
# ---------------------------------------------------------------------------

_TABLE_HEADER = (
    "kappa",
    "N",
    "p2_closed",
    "p2_quad",
    "delta_p",
    "delta_x",
    "F_closed",
    "F_quad",
    "dxdp_over_halfhbar",
    "status",
)


def cmd_table(cfg: RunConfig) -> int:
    rel_tol = cfg.tol if cfg.tol is not None else 1e-10
    if not 1e-12 <= rel_tol <= 1e-3:
        raise ConfigError(f"table needs a quadrature rel_tol in [1e-12, 1e-3], got {rel_tol}")
    rows = []
    for k in cfg.kappas:
        spec = StateSpec(as_kappa(k), cfg.zeta, cfg.hbar)
        n_val = normalization_constant(spec)
        if not spec.kappa.moment_safe:
            rows.append(
                (_f17(k), _f17(n_val)) + ("",) * 7
                + ("error: moments diverge for kappa >= 2/3",)
            )
            continue
        p2c = second_moment(spec)
        p2q = quadrature_moment(2, spec, rel_tol)
        dpv = delta_p(spec)
        dxv = delta_x(spec)
        fc = f_expectation(spec.kappa)
        fq = f_expectation_quadrature(spec, rel_tol)
        ratio = dxv * dpv / (0.5 * cfg.hbar)
        rows.append(
            (
                _f17(k), _f17(n_val), _f17(p2c), _f17(p2q), _f17(dpv),
                _f17(dxv), _f17(fc), _f17(fq), _f17(ratio), "ok",
            )
        )
    _emit(cfg, _csv_document(_meta(cfg), _TABLE_HEADER, rows))
    return EXIT_OK


def cmd_plot_psi(cfg: RunConfig) -> int:
    if not cfg.grid_max > cfg.grid_min or cfg.grid_n < 2:
        raise ConfigError("plot-psi needs grid_max > grid_min and grid_n >= 2")
    p = np.linspace(cfg.grid_min, cfg.grid_max, cfg.grid_n)
    curves = [
        psi(p, StateSpec(as_kappa(k), cfg.zeta, cfg.hbar)) for k in cfg.kappas
    ]
    header = ["p"] + [f"psi_k{i}" for i in range(len(cfg.kappas))]
    rows = [
        [_f17(p[j])] + [_f17(curve[j]) for curve in curves]
        for j in range(p.size)
    ]
    _emit(cfg, _csv_document(_meta(cfg), header, rows))
    return EXIT_OK


# ---------------------------------------------------------------------------
# phenomenology / maxent commands
# ---------------------------------------------------------------------------

def cmd_bound_alpha(cfg: RunConfig) -> int:
    bound = kappa_bound(cfg.pheno)
    doc = {
        "meta": _meta(cfg),
        "alpha_inverse": cfg.pheno.alpha_inverse,
        "alpha_inverse_uncertainty": cfg.pheno.alpha_inverse_uncertainty,
        "delta_alpha_exp": cfg.pheno.delta_alpha_exp,
        "characteristic_momentum": cfg.pheno.characteristic_momentum,
        "zeta_fixing": cfg.pheno.zeta_fixing,
        "bound_kappa_sqrt_zeta": bound.bound_kappa_sqrt_zeta,
        "bound_kappa": bound.bound_kappa,
    }
    _emit(cfg, _json_document(doc))
    return EXIT_OK


def cmd_maxent_demo(cfg: RunConfig) -> int:
    section = dict(cfg.maxent or {})
    energies = section.get("energies", [0.0, 1.0, 2.0, 3.0, 4.0])
    mean = section.get("mean_energy", 1.2)
    kap = section.get("kappa", cfg.kappas[0])
    tol = cfg.tol if cfg.tol is not None else 1e-10
    if not 1e-12 <= tol <= 1e-4:
        raise ConfigError(f"maxent-demo needs tol in [1e-12, 1e-4], got {tol}")
    try:
        problem = MaxEntProblem(np.asarray(energies, dtype=float), float(mean), as_kappa(kap))
    except KappaRupError as exc:
        raise ConfigError(f"invalid maxent problem: {exc}") from exc
    try:
        solution = maxent_solve(problem, tol=tol)
    except NonConvergenceError as exc:
        sys.stderr.write(f"maxent solver failed: {exc}\n")
        return EXIT_FAIL
    fit = fit_kappa_exponential(solution, problem.energies)
    doc = {
        "meta": _meta(cfg),
        "problem": problem.to_json_dict(),
        "solution": solution.to_json_dict(),
        "fit": {
            "amplitude": fit.amplitude,
            "beta_fit": fit.beta_fit,
            "max_residual": fit.max_residual,
        },
    }
    _emit(cfg, _json_document(doc))
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument handling
# ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors by default; the contract wants 1
    def error(self, message):
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="kappa-rup",
        description="kappa-deformed uncertainty toolkit, batch interface",
    )
    parser.add_argument("--command", required=True, choices=_COMMANDS)
    parser.add_argument("--kappa", help="comma-separated kappa list, e.g. 0,0.2,0.4")
    parser.add_argument("--zeta", type=float)
    parser.add_argument("--hbar", type=float)
    parser.add_argument("--grid-min", type=float, dest="grid_min")
    parser.add_argument("--grid-max", type=float, dest="grid_max")
    parser.add_argument("--grid-n", type=int, dest="grid_n")
    parser.add_argument("--tol", type=float)
    parser.add_argument("--config", help=f"JSON config path (fallback: ${ENV_CONFIG})")
    parser.add_argument("--out", help="output path (default: stdout)")
    parser.add_argument("--format", choices=("csv", "json"), dest="fmt")
    pheno = parser.add_argument_group("phenomenology overrides")
    pheno.add_argument("--alpha-inverse", type=float, dest="alpha_inverse")
    pheno.add_argument(
        "--alpha-inverse-uncertainty", type=float, dest="alpha_inverse_uncertainty"
    )
    pheno.add_argument(
        "--characteristic-momentum", type=float, dest="characteristic_momentum"
    )
    pheno.add_argument("--electron-mass", type=float, dest="electron_mass")
    pheno.add_argument("--zeta-fixing", dest="zeta_fixing")
    return parser


def _load_config_file(path: Optional[str]) -> dict:
    if path is None:
        path = os.environ.get(ENV_CONFIG) or None
    if path is None:
        return {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"config file {path} must hold a JSON object")
    return data


def _parse_kappa_list(text: str) -> Tuple[float, ...]:
    try:
        values = tuple(float(part) for part in text.split(",") if part.strip() != "")
    except ValueError as exc:
        raise ConfigError(f"bad --kappa list {text!r}") from exc
    if not values:
        raise ConfigError("empty --kappa list")
    return values


def resolve_config(args: argparse.Namespace) -> RunConfig:
    file_cfg = _load_config_file(args.config)
    command = args.command

    kappas: Tuple[float, ...]
    if args.kappa is not None:
        kappas = _parse_kappa_list(args.kappa)
    elif "kappas" in file_cfg:
        kappas = tuple(float(v) for v in file_cfg["kappas"])
    else:
        kappas = _DEFAULT_KAPPAS[command]

    grid_file = file_cfg.get("grid", {})

    def pick(flag_value, file_value, default):
        if flag_value is not None:
            return flag_value
        if file_value is not None:
            return file_value
        return default

    fmt = pick(args.fmt, file_cfg.get("format"), None)
    if fmt is None:
        fmt = "json" if command in _JSON_COMMANDS else "csv"
    if command in _JSON_COMMANDS and fmt != "json":
        raise ConfigError(f"command {command} emits JSON only")
    if fmt not in ("csv", "json"):
        raise ConfigError(f"format must be csv or json, got {fmt!r}")

    pheno_dict = dict(file_cfg.get("pheno", {}))
    for name in (
        "alpha_inverse",
        "alpha_inverse_uncertainty",
        "characteristic_momentum",
        "electron_mass",
        "zeta_fixing",
    ):
        value = getattr(args, name)
        if value is not None:
            pheno_dict[name] = value

    try:
        cfg = RunConfig(
            command=command,
            kappas=kappas,
            zeta=float(pick(args.zeta, file_cfg.get("zeta"), 1.0)),
            hbar=float(pick(args.hbar, file_cfg.get("hbar"), 1.0)),
            grid_min=float(pick(args.grid_min, grid_file.get("min"), -8.0)),
            grid_max=float(pick(args.grid_max, grid_file.get("max"), 8.0)),
            grid_n=int(pick(args.grid_n, grid_file.get("n"), 321)),
            tol=args.tol if args.tol is not None else file_cfg.get("tol"),
            out=pick(args.out, file_cfg.get("out"), None),
            fmt=fmt,
            pheno=PhenoConfig.from_json_dict(pheno_dict),
            maxent=file_cfg.get("maxent"),
        )
    except KappaRupError as exc:
        raise ConfigError(str(exc)) from exc

    # kappa validity (0 <= k < 1) is a config-level concern for every command
    try:
        for k in cfg.kappas:
            as_kappa(k)
        StateSpec(as_kappa(cfg.kappas[0]), cfg.zeta, cfg.hbar)
    except KappaRupError as exc:
        raise ConfigError(str(exc)) from exc
    if cfg.tol is not None and not cfg.tol > 0.0:
        raise ConfigError(f"tol must be positive, got {cfg.tol}")
    return cfg


_DISPATCH = {
    "verify": cmd_verify,
    "table": cmd_table,
    "plot-psi": cmd_plot_psi,
    "bound-alpha": cmd_bound_alpha,
    "maxent-demo": cmd_maxent_demo,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = resolve_config(args)
    except ConfigError as exc:
        sys.stderr.write(f"config error: {exc}\n")
        return EXIT_CONFIG
    try:
        return _DISPATCH[cfg.command](cfg)
    except ConfigError as exc:
        sys.stderr.write(f"config error: {exc}\n")
        return EXIT_CONFIG
    except KappaRupError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
