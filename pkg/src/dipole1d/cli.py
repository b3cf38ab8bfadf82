"""Batch command-line front end.

Every pipeline is a subcommand with machine-readable output: CSV with
``#``-prefixed metadata comments (grid, constants hash, parameters; never
timestamps) and/or a JSON summary.  Identical invocations produce
byte-identical files.  Numeric inputs are atomic units unless suffixed
``si`` (for example ``--p 1.052e-30si``).

Exit codes: 0 success, 1 validation/usage error, 2 convergence error,
3 inconclusive scan.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .critical import (
    ExtrapolationError,
    critical_report,
    estimate_to_exact_ratio,
    p_crit_estimate,
    p_crit_exact,
    physical_dipole_scan,
)
from .eigensolver import (
    BracketError,
    ConvergenceError,
    Grid,
    IntegrationError,
    cutoff_sweep,
    discretize,
    hydrogen_spectrum,
    lowest_eigenvalues,
    zero_energy_node_count,
)
from .frobenius import (
    indicial_roots,
    ode_residual,
    recursion_residuals,
    series_coefficients,
)
from .potentials import (
    PointDipole,
    spec_from_record,
    spec_to_record,
)
from .tridiag import eigvalsh_bisect, sturm_count
from .units import (
    ConstantSet,
    alpha_from_p,
    bohr_radius,
    coulomb_strength_si_to_atomic,
    dipole_atomic_to_si,
    dipole_si_to_atomic,
    energy_atomic_to_si,
    energy_si_to_atomic,
    hartree_energy,
    length_atomic_to_si,
    length_si_to_atomic,
)

__all__ = ["main", "run", "RunConfig", "build_parser"]

_CONST_KEYS = ("hbar", "m_electron", "q_electron", "epsilon0")
_POTENTIAL_KEYS = ("kind", "lambda", "epsilon", "p", "Q", "d", "alpha")


class _UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    # the exit-code contract reserves 1 for usage errors (argparse uses 2)
    def error(self, message):
        raise _UsageError(message)


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return format(float(x), ".17g")
    return str(x)


def _json_default(o):
    if isinstance(o, (np.integer,)):
        return int(o)
    if isinstance(o, (np.floating,)):
        return float(o)
    if isinstance(o, np.ndarray):
        return o.tolist()
    raise TypeError(f"not JSON serializable: {type(o).__name__}")


def _constants_hash(c: ConstantSet) -> str:
    key = "|".join(
        _fmt(v) for v in (c.hbar, c.m_electron, c.q_electron, c.epsilon0)
    )
    return hashlib.sha256(key.encode()).hexdigest()[:16]


def _csv_text(meta: dict, columns: list[str], rows: list[tuple]) -> str:
    lines = [f"# {k}={_fmt(v)}" for k, v in meta.items()]
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def _json_text(obj: dict) -> str:
    return json.dumps(obj, indent=2, default=_json_default) + "\n"


@dataclass
class RunConfig:
    """One fully-resolved invocation; equal configs yield identical bytes."""

    subcommand: str
    constants: ConstantSet
    params: dict = field(default_factory=dict)
    fmt: str = "csv"
    out: str | None = None
    seed: int = 0

    def meta(self) -> dict:
        m = {"command": self.subcommand, "version": __version__}
        for k, v in self.params.items():
            m[k] = v
        m["constants"] = self.constants.provenance_label
        m["constants_hash"] = _constants_hash(self.constants)
        return m


def _parse_config_file(path: str) -> dict[str, str]:
    out: dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise _UsageError(f"config line without '=': {line!r}")
            key, val = line.split("=", 1)
            out[key.strip()] = val.strip()
    return out


def _resolve_constants(args) -> tuple[ConstantSet, dict[str, str]]:
    file_cfg: dict[str, str] = {}
    if getattr(args, "config", None):
        file_cfg = _parse_config_file(args.config)
    overrides: dict[str, float] = {}
    for key in _CONST_KEYS:
        if key in file_cfg:
            overrides[key] = float(file_cfg[key])
    for item in getattr(args, "const", None) or []:
        if "=" not in item:
            raise _UsageError(f"--const needs key=value, got {item!r}")
        key, val = item.split("=", 1)
        key = key.strip()
        if key not in _CONST_KEYS:
            raise _UsageError(f"unknown constant {key!r}; choose from {_CONST_KEYS}")
        overrides[key] = float(val)
    if overrides:
        base = ConstantSet()
        c = ConstantSet(
            hbar=overrides.get("hbar", base.hbar),
            m_electron=overrides.get("m_electron", base.m_electron),
            q_electron=overrides.get("q_electron", base.q_electron),
            epsilon0=overrides.get("epsilon0", base.epsilon0),
            provenance_label="CODATA 2022 with overrides",
        )
    else:
        c = ConstantSet()
    return c, file_cfg


def _number(text: str, dimension: str, c: ConstantSet) -> float:
    """Parse a numeric argument; a trailing ``si`` converts into atomic units."""
    text = text.strip()
    is_si = text.lower().endswith("si")
    if is_si:
        text = text[:-2]
    try:
        value = float(text)
    except ValueError:
        raise _UsageError(f"malformed number {text!r}") from None
    if not is_si:
        return value
    if dimension == "length":
        return length_si_to_atomic(c, value)
    if dimension == "energy":
        return energy_si_to_atomic(c, value)
    if dimension == "dipole_moment":
        return dipole_si_to_atomic(c, value)
    if dimension == "coulomb_strength":
        return coulomb_strength_si_to_atomic(c, value)
    raise _UsageError(f"an 'si' suffix makes no sense for a {dimension} value")


def _number_list(text: str, dimension: str, c: ConstantSet) -> list[float]:
    return [_number(part, dimension, c) for part in text.split(",") if part.strip()]


def _parse_domain(text: str, c: ConstantSet) -> tuple[float, float]:
    parts = text.split(":")
    if len(parts) != 2:
        raise _UsageError(f"--domain needs a:b, got {text!r}")
    a = _number(parts[0], "length", c)
    b = _number(parts[1], "length", c)
    if not a < b:
        raise _UsageError("--domain needs a < b")
    return a, b


def _parse_windows(text: str) -> tuple[tuple[float, float], ...]:
    windows = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        parts = chunk.split(":")
        if len(parts) != 2:
            raise _UsageError(f"--windows entries need delta:L, got {chunk!r}")
        try:
            d, L = float(parts[0]), float(parts[1])
        except ValueError:
            raise _UsageError(f"malformed window {chunk!r}") from None
        windows.append((d, L))
    if not windows:
        raise _UsageError("--windows is empty")
    return tuple(windows)


def _potential_from_args(args, file_cfg: dict[str, str], c: ConstantSet):
    """Infer the potential family from which flags were given."""
    rec: dict[str, str] = {}
    if args.p is not None:
        rec = {"kind": "point_dipole", "p": _fmt(_number(args.p, "dipole_moment", c))}
    elif args.alpha is not None:
        rec = {"kind": "inverse_square", "alpha": args.alpha}
    elif args.Q is not None and args.d is not None:
        if args.epsilon is None:
            raise _UsageError("physical dipole needs --epsilon")
        rec = {
            "kind": "physical_dipole",
            "Q": args.Q,
            "d": _fmt(_number(args.d, "length", c)),
            "epsilon": _fmt(_number(args.epsilon, "length", c)),
        }
    elif args.lam is not None and args.epsilon is not None:
        rec = {
            "kind": "regularized_coulomb",
            "lambda": _fmt(_number(args.lam, "coulomb_strength", c)),
            "epsilon": _fmt(_number(args.epsilon, "length", c)),
        }
    elif args.lam is not None:
        rec = {"kind": "coulomb", "lambda": _fmt(_number(args.lam, "coulomb_strength", c))}
    elif "kind" in file_cfg:
        rec = {k: v for k, v in file_cfg.items() if k in _POTENTIAL_KEYS}
    else:
        raise _UsageError(
            "no potential given: use --p, --alpha, --lambda[, --epsilon], "
            "--Q --d --epsilon, or a --config file with kind=..."
        )
    return spec_from_record(rec)


def _grid_from_args(args, c: ConstantSet, default_domain: str, default_kind: str,
                    default_n: int) -> Grid:
    a, b = _parse_domain(args.domain or default_domain, c)
    kind = args.grid or default_kind
    kind = {"log": "logarithmic", "uniform": "uniform"}.get(kind, kind)
    n = args.n if args.n is not None else default_n
    return Grid(kind, a, b, n)


def _emit(cfg: RunConfig, csv_text: str | None, json_obj: dict | None) -> None:
    if cfg.fmt == "both":
        if not cfg.out:
            raise _UsageError("--format both needs --out")
        with open(cfg.out + ".csv", "w", encoding="utf-8") as fh:
            fh.write(csv_text)
        with open(cfg.out + ".json", "w", encoding="utf-8") as fh:
            fh.write(_json_text(json_obj))
        return
    text = csv_text if cfg.fmt == "csv" else _json_text(json_obj)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ----------------------------------------------------------------- handlers


def _cmd_spectrum(args, c: ConstantSet, file_cfg) -> tuple[RunConfig, int]:
    spec = _potential_from_args(args, file_cfg, c)
    grid = _grid_from_args(args, c, "-30:30", "uniform", 4001)
    states = args.states if args.states is not None else 4
    H = discretize(spec, grid)
    sp = lowest_eigenvalues(H, states)
    cfg = RunConfig("spectrum", c, fmt=args.format, out=args.out)
    cfg.params.update(spec_to_record(spec))
    cfg.params.update(
        grid=grid.kind, x_min=_fmt(grid.x_min), x_max=_fmt(grid.x_max),
        n=grid.n, states=states, bc_note=H.bc_note,
    )
    rows = [
        (j + 1, sp.energies[j], int(sp.node_counts[j]), sp.bracket_widths[j])
        for j in range(states)
    ]
    csv_text = _csv_text(
        cfg.meta(),
        ["index", "energy_hartree", "node_count", "bracket_width_hartree"],
        rows,
    )
    json_obj = {
        "command": "spectrum",
        "config": cfg.meta(),
        "energies_hartree": sp.energies,
        "node_counts": sp.node_counts,
        "bracket_widths_hartree": sp.bracket_widths,
    }
    _emit(cfg, csv_text, json_obj)
    return cfg, 0


def _cmd_hydrogen(args, c: ConstantSet, file_cfg) -> tuple[RunConfig, int]:
    lam = _number(args.lam, "coulomb_strength", c) if args.lam is not None else 1.0
    states = args.states if args.states is not None else 3
    refine = args.refine_levels
    grid = _grid_from_args(args, c, "1e-5:200", "logarithmic", 16384)
    result = hydrogen_spectrum(lam, states, refine_levels=refine, grid=grid)
    cfg = RunConfig("hydrogen", c, fmt=args.format, out=args.out)
    cfg.params.update(
        lam=_fmt(lam), states=states, refine_levels=refine,
        grid=grid.kind, x_min=_fmt(grid.x_min), x_max=_fmt(grid.x_max), n=grid.n,
        grid_sizes=":".join(str(m) for m in result.grid_sizes),
    )
    rows = []
    for j in range(states):
        rows.append((
            j + 1,
            result.spectrum.energies[j],
            result.balmer[j],
            result.relative_errors[j],
            result.spectrum.refinement_estimate[j],
            result.extrapolated[j],
        ))
    csv_text = _csv_text(
        cfg.meta(),
        ["n", "energy_hartree", "balmer_hartree", "rel_error",
         "richardson_estimate_hartree", "extrapolated_hartree"],
        rows,
    )
    json_obj = {
        "command": "hydrogen",
        "config": cfg.meta(),
        "energies_hartree": result.spectrum.energies,
        "balmer_hartree": result.balmer,
        "relative_errors": result.relative_errors,
        "richardson_estimates": result.estimates_by_level,
        "extrapolated_hartree": result.extrapolated,
        "node_counts": result.spectrum.node_counts,
    }
    _emit(cfg, csv_text, json_obj)
    return cfg, 0


def _cmd_cutoff_sweep(args, c: ConstantSet, file_cfg) -> tuple[RunConfig, int]:
    lam = _number(args.lam, "coulomb_strength", c) if args.lam is not None else 1.0
    if args.epsilon is not None:
        eps = tuple(_number_list(args.epsilon, "length", c))
    else:
        eps = (0.2, 0.1, 0.05, 0.025, 0.0125)
    domain = _parse_domain(args.domain or "0:60", c)
    if domain[0] != 0.0:
        raise _UsageError("cutoff-sweep uses the even-parity half line; --domain must be 0:L")
    result = cutoff_sweep(lam, eps, L=domain[1], n=args.n)
    cfg = RunConfig("cutoff-sweep", c, fmt=args.format, out=args.out)
    cfg.params.update(
        lam=_fmt(lam), L=_fmt(result.L), n=result.n,
        monotone_decreasing=result.monotone_decreasing,
    )
    if result.full_line_check is not None:
        e0, even, full = result.full_line_check
        cfg.params.update(
            full_line_epsilon=_fmt(e0),
            full_line_even_hartree=_fmt(even),
            full_line_full_hartree=_fmt(full),
        )
    rows = list(zip(result.epsilons, result.energies))
    csv_text = _csv_text(cfg.meta(), ["epsilon", "ground_energy_hartree"], rows)
    json_obj = {
        "command": "cutoff-sweep",
        "config": cfg.meta(),
        "epsilons": list(result.epsilons),
        "ground_energies_hartree": list(result.energies),
        "monotone_decreasing": result.monotone_decreasing,
        "full_line_check": result.full_line_check,
    }
    _emit(cfg, csv_text, json_obj)
    return cfg, 0


def _cmd_critical_scan(args, c: ConstantSet, file_cfg) -> tuple[RunConfig, int]:
    windows = _parse_windows(args.windows) if args.windows else None
    tol = args.tol_alpha
    report = critical_report(c, windows=windows, tol_alpha=tol) if windows else \
        critical_report(c, tol_alpha=tol)
    cfg = RunConfig("critical-scan", c, fmt=args.format, out=args.out)
    cfg.params.update(
        windows=",".join(f"{_fmt(d)}:{_fmt(L)}" for d, L in report.windows),
        tol_alpha=_fmt(tol),
    )
    p_rows = []
    for est in report.per_window:
        p_rows.append((est.delta, est.L, math.log(est.L / est.delta), est.value,
                       est.half_width, est.predicted_threshold))
    csv_text = _csv_text(
        cfg.meta(),
        ["delta", "L", "ln_ratio", "alpha_hat", "half_width", "predicted_threshold"],
        p_rows,
    )
    json_obj = {
        "command": "critical-scan",
        "config": cfg.meta(),
        "alpha_crit_numeric": report.alpha_crit_numeric,
        "alpha_crit_half_width": report.alpha_crit_half_width,
        "p_crit_exact_au": report.p_crit_exact_au,
        "p_crit_exact_si": report.p_crit_exact_si,
        "p_crit_numeric_au": report.p_crit_numeric_au,
        "p_crit_numeric_half_width": report.p_crit_numeric_half_width,
        "p_crit_numeric_si": report.p_crit_numeric_si,
        "p_estimate_au": report.p_estimate_au,
        "p_estimate_si": report.p_estimate_si,
        "ratio_estimate_to_exact": report.ratio_estimate_to_exact,
        "windows": [list(w) for w in report.windows],
        "constants": report.constants_label,
    }
    _emit(cfg, csv_text, json_obj)
    return cfg, 0


def _cmd_series(args, c: ConstantSet, file_cfg) -> tuple[RunConfig, int]:
    if args.alpha is None:
        raise _UsageError("series needs --alpha")
    alpha = float(args.alpha)
    xi = float(args.xi)
    nterms = args.nterms
    pair = indicial_roots(alpha)
    nu = pair.nu_plus if args.branch == "plus" else pair.nu_minus
    sol = series_coefficients(alpha, xi, nu, N=nterms)
    ys = [float(part) for part in args.ys.split(",") if part.strip()]
    cfg = RunConfig("series", c, fmt=args.format, out=args.out)
    cfg.params.update(
        alpha=_fmt(alpha), xi=_fmt(xi), nterms=nterms, branch=args.branch,
        nu_re=_fmt(nu.real), nu_im=_fmt(nu.imag),
    )
    lines = [f"# {k}={_fmt(v)}" for k, v in cfg.meta().items()]
    lines.append("# table=coefficients")
    lines.append("j,re_a,im_a")
    for j in range(sol.a.shape[0]):
        lines.append(f"{j},{_fmt(sol.a[j].real)},{_fmt(sol.a[j].imag)}")
    lines.append("# table=residuals")
    lines.append("y,ode_residual")
    residuals = []
    for y in ys:
        r = ode_residual(sol, y)
        residuals.append((y, r))
        lines.append(f"{_fmt(y)},{_fmt(r)}")
    csv_text = "\n".join(lines) + "\n"
    json_obj = {
        "command": "series",
        "config": cfg.meta(),
        "nu": [nu.real, nu.imag],
        "coefficients_re": [float(v.real) for v in sol.a],
        "coefficients_im": [float(v.imag) for v in sol.a],
        "recursion_residual_max": float(np.max(np.abs(recursion_residuals(sol)))),
        "ode_residuals": [[y, r] for y, r in residuals],
    }
    _emit(cfg, csv_text, json_obj)
    return cfg, 0


def _cmd_dipole_limit(args, c: ConstantSet, file_cfg) -> tuple[RunConfig, int]:
    d_list = tuple(_number_list(args.d, "length", c)) if args.d else (1.0, 0.5, 0.2, 0.1, 0.05)
    epsilon = _number(args.epsilon, "length", c) if args.epsilon is not None else 1e-3
    domain = _parse_domain(args.domain or "-30:30", c)
    Q = float(args.Q) if args.Q is not None else 1.0
    result = physical_dipole_scan(
        d_list=d_list, epsilon=epsilon, domain=domain, Q_nominal=Q, n=args.n,
    )
    cfg = RunConfig("dipole-limit", c, fmt=args.format, out=args.out)
    cfg.params.update(
        epsilon=_fmt(epsilon), domain=f"{_fmt(domain[0])}:{_fmt(domain[1])}",
        n=result.n, exploratory=True,
        point_dipole_reference=_fmt(result.point_dipole_reference),
        spread=_fmt(result.spread),
        note=result.note,
    )
    rows = [
        (r.d, r.p_critical, r.bracket[0], r.bracket[1], r.status)
        for r in result.rows
    ]
    csv_text = _csv_text(
        cfg.meta(),
        ["d", "critical_p_au", "bracket_lo", "bracket_hi", "status"],
        rows,
    )
    json_obj = {
        "command": "dipole-limit",
        "config": cfg.meta(),
        "rows": [
            {"d": r.d, "critical_p_au": r.p_critical, "bracket": list(r.bracket),
             "conclusive": r.conclusive, "status": r.status}
            for r in result.rows
        ],
        "point_dipole_reference_au": result.point_dipole_reference,
        "spread": result.spread,
        "exploratory": True,
        "note": result.note,
    }
    _emit(cfg, csv_text, json_obj)
    code = 0 if all(r.conclusive for r in result.rows) else 3
    return cfg, code


def _cmd_convert(args, c: ConstantSet, file_cfg) -> tuple[RunConfig, int]:
    rows = []
    if args.p is not None:
        p_au = _number(args.p, "dipole_moment", c)
        rows.append(("dipole_moment", p_au, dipole_atomic_to_si(c, p_au), "C*m"))
        if p_au > 0:
            rows.append(("alpha", 2.0 * p_au, "", ""))
    if args.energy is not None:
        e_au = _number(args.energy, "energy", c)
        rows.append(("energy", e_au, energy_atomic_to_si(c, e_au), "J"))
    if args.length is not None:
        x_au = _number(args.length, "length", c)
        rows.append(("length", x_au, length_atomic_to_si(c, x_au), "m"))
    if args.alpha is not None:
        alpha = float(args.alpha)
        rows.append(("alpha", alpha, "", ""))
        if alpha > 0:
            p_au = alpha / 2.0
            rows.append(("equivalent_dipole", p_au, dipole_atomic_to_si(c, p_au), "C*m"))
    if args.pcrit_si:
        rows.append(("p_crit_exact", 0.125, p_crit_exact(c), "C*m"))
        rows.append(("p_crit_estimate", 2.0, p_crit_estimate(c), "C*m"))
        rows.append(("estimate_to_exact_ratio", estimate_to_exact_ratio(), "", ""))
    if not rows:
        raise _UsageError("convert needs at least one of --p, --energy, --length, "
                          "--alpha, --pcrit-si")
    rows.append(("bohr_radius_si", 1.0, bohr_radius(c), "m"))
    rows.append(("hartree_si", 1.0, hartree_energy(c), "J"))
    cfg = RunConfig("convert", c, fmt=args.format, out=args.out)
    csv_text = _csv_text(
        cfg.meta(), ["quantity", "atomic_value", "si_value", "si_unit"], rows
    )
    json_obj = {
        "command": "convert",
        "config": cfg.meta(),
        "rows": [
            {"quantity": q, "atomic_value": a,
             "si_value": (s if s != "" else None), "si_unit": (u or None)}
            for q, a, s, u in rows
        ],
    }
    _emit(cfg, csv_text, json_obj)
    return cfg, 0


def _cmd_selftest(args, c: ConstantSet, file_cfg) -> tuple[RunConfig, int]:
    from .frobenius import indicial_roots as _roots

    rng = np.random.default_rng(args.seed)
    checks: list[tuple[str, bool]] = []

    alphas = rng.uniform(-5.0, 5.0, size=100)
    ok = True
    for a in alphas:
        pair = _roots(float(a))
        ok &= abs(pair.nu_plus + pair.nu_minus - 1.0) <= 1e-12
        ok &= abs(pair.nu_plus * pair.nu_minus - a) <= 1e-12 * max(1.0, abs(a))
    checks.append(("indicial_vieta", bool(ok)))

    ok = True
    for mag in np.logspace(-32, 0, 12):
        rt = dipole_si_to_atomic(c, dipole_atomic_to_si(c, float(mag)))
        ok &= abs(rt - mag) <= 1e-12 * mag
    checks.append(("dipole_round_trip", bool(ok)))

    from .potentials import eval_potential

    ok = True
    for x in rng.uniform(0.1, 20.0, size=50):
        v1 = eval_potential(PointDipole(1.0), float(x))
        v2 = eval_potential(PointDipole(1.0), -float(x))
        ok &= v1 == -v2
    checks.append(("point_dipole_odd", bool(ok)))

    ok = True
    for _ in range(3):
        n = int(rng.integers(16, 40))
        diag = rng.uniform(-2, 2, size=n)
        off = -rng.uniform(0.1, 2.0, size=n - 1)
        ref = np.sort(np.linalg.eigvalsh(np.diag(diag) + np.diag(off, 1) + np.diag(off, -1)))
        vals, _ = eigvalsh_bisect(diag, off, n)
        ok &= bool(np.max(np.abs(vals - ref)) <= 1e-9)
        mid = float(rng.uniform(ref[0], ref[-1]))
        ok &= sturm_count(diag, off, mid) == int(np.sum(ref < mid))
    checks.append(("sturm_vs_dense", bool(ok)))

    ok = True
    for _ in range(5):
        a = float(rng.uniform(0.3, 4.0))
        d = 10.0 ** float(rng.uniform(-10, -4))
        L = 10.0 ** float(rng.uniform(3, 9))
        want = int(math.floor(math.sqrt(a - 0.25) * math.log(L / d) / math.pi))
        ok &= zero_energy_node_count(a, d, L) == want
    checks.append(("oscillation_oracle", bool(ok)))

    checks.append(("ratio_is_16", estimate_to_exact_ratio() == 16.0))
    checks.append((
        "alpha_of_p_crit",
        abs(alpha_from_p(c, p_crit_exact(c)) - 0.25) <= 1e-12,
    ))

    failed = [name for name, good in checks if not good]
    for name, good in checks:
        sys.stdout.write(f"{'PASS' if good else 'FAIL'} {name}\n")
    cfg = RunConfig("selftest", c, seed=args.seed)
    return cfg, 0 if not failed else 2


_HANDLERS = {
    "spectrum": _cmd_spectrum,
    "hydrogen": _cmd_hydrogen,
    "cutoff-sweep": _cmd_cutoff_sweep,
    "critical-scan": _cmd_critical_scan,
    "series": _cmd_series,
    "dipole-limit": _cmd_dipole_limit,
    "convert": _cmd_convert,
    "selftest": _cmd_selftest,
}


def _add_common(sp):
    sp.add_argument("--format", choices=("csv", "json", "both"), default="csv")
    sp.add_argument("--out", default=None)
    sp.add_argument("--config", default=None, help="key=value file (constants, potential)")
    sp.add_argument("--const", action="append", default=None, metavar="KEY=VALUE")


def build_parser() -> _Parser:
    parser = _Parser(prog="dipole1d", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)

    sp = sub.add_parser("spectrum", help="eigenvalues of any potential family")
    sp.add_argument("--lambda", dest="lam", default=None)
    sp.add_argument("--p", default=None)
    sp.add_argument("--alpha", default=None)
    sp.add_argument("--epsilon", default=None)
    sp.add_argument("--Q", default=None)
    sp.add_argument("--d", default=None)
    sp.add_argument("--domain", default=None, metavar="A:B")
    sp.add_argument("--grid", choices=("uniform", "log"), default=None)
    sp.add_argument("--n", type=int, default=None)
    sp.add_argument("--states", type=int, default=None)
    _add_common(sp)

    sp = sub.add_parser("hydrogen", help="half-line Coulomb levels vs the Balmer form")
    sp.add_argument("--lambda", dest="lam", default=None)
    sp.add_argument("--states", type=int, default=None)
    sp.add_argument("--refine-levels", type=int, default=2)
    sp.add_argument("--domain", default=None, metavar="A:B")
    sp.add_argument("--grid", choices=("uniform", "log"), default=None)
    sp.add_argument("--n", type=int, default=None)
    _add_common(sp)

    sp = sub.add_parser("cutoff-sweep", help="capped-Coulomb ground state vs cap size")
    sp.add_argument("--lambda", dest="lam", default=None)
    sp.add_argument("--epsilon", default=None, help="comma-separated cap list")
    sp.add_argument("--domain", default=None, metavar="0:L")
    sp.add_argument("--n", type=int, default=None)
    _add_common(sp)

    sp = sub.add_parser("critical-scan", help="binding threshold and critical moment")
    sp.add_argument("--windows", default=None, metavar="D:L[,D:L...]")
    sp.add_argument("--tol-alpha", type=float, default=1e-4)
    _add_common(sp)

    sp = sub.add_parser("series", help="local power-series coefficients and residuals")
    sp.add_argument("--alpha", default=None)
    sp.add_argument("--xi", default="1.0")
    sp.add_argument("--nterms", type=int, default=30)
    sp.add_argument("--branch", choices=("plus", "minus"), default="plus")
    sp.add_argument("--ys", default="0.01,0.02,0.05,0.1,0.2,0.5")
    _add_common(sp)

    sp = sub.add_parser("dipole-limit", help="two-centre separation scan (exploratory)")
    sp.add_argument("--Q", default=None)
    sp.add_argument("--d", default=None, help="comma-separated separations")
    sp.add_argument("--epsilon", default=None)
    sp.add_argument("--domain", default=None, metavar="A:B")
    sp.add_argument("--n", type=int, default=None)
    _add_common(sp)

    sp = sub.add_parser("convert", help="unit conversions")
    sp.add_argument("--p", default=None)
    sp.add_argument("--energy", default=None)
    sp.add_argument("--length", default=None)
    sp.add_argument("--alpha", default=None)
    sp.add_argument("--pcrit-si", action="store_true")
    _add_common(sp)

    sp = sub.add_parser("selftest", help="quick invariant battery")
    sp.add_argument("--seed", type=int, default=0)
    _add_common(sp)

    return parser


_MERGE_FLAGS = {"--domain", "--energy", "--alpha", "--xi", "--length"}


def _merge_negative_values(argv: list[str]) -> list[str]:
    # argparse refuses leading-dash option values such as --domain -20:0
    out: list[str] = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _MERGE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def run(argv=None) -> int:
    """Parse argv, dispatch, and map failures onto the exit-code contract."""
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    try:
        args = parser.parse_args(_merge_negative_values(list(argv)))
        constants, file_cfg = _resolve_constants(args)
        _, code = _HANDLERS[args.subcommand](args, constants, file_cfg)
        return code
    except _UsageError as exc:
        sys.stderr.write(f"error: code=usage {exc}\n")
        return 1
    except BracketError as exc:
        sys.stderr.write(f"error: code=bracket {exc}\n")
        return 3
    except (ConvergenceError, IntegrationError, ExtrapolationError) as exc:
        sys.stderr.write(f"error: code=convergence {exc}\n")
        return 2
    except (ValueError, OSError) as exc:
        sys.stderr.write(f"error: code=invalid {exc}\n")
        return 1


def main(argv=None) -> int:
    return run(argv)


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
