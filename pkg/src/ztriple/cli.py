"""Command-line interface: ``zdim <subcommand> [options]``.

Data goes to stdout as JSON (or CSV for sweeps and verify tables);
diagnostics go to stderr.  Exit codes: 0 ok, 1 failed verification,
2 bad input, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from . import acceptance
from . import product as prod
from . import regularization as reg
from . import specfun, triples, zdim
from .errors import NumericalError, PreconditionError, ZTripleError
from .quadrature import QuadratureConfig

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_BAD_INPUT = 2
EXIT_NUMERICAL = 3


@dataclass(frozen=True)
class CommandRequest:
    subcommand: str
    params: dict = field(default_factory=dict)
    output_format: str = "json"


def _finite_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not math.isfinite(v):
        raise argparse.ArgumentTypeError(f"not finite: {text!r}")
    return v


def _finite_complex(text: str) -> complex:
    try:
        v = complex(text.replace(" ", "").replace("i", "j"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}")
    if not (math.isfinite(v.real) and math.isfinite(v.imag)):
        raise argparse.ArgumentTypeError(f"not finite: {text!r}")
    return v


def _grid(text: str) -> tuple[float, float, float]:
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("grid must be start:stop:step")
    start, stop, step = (_finite_float(p) for p in parts)
    if step <= 0 or stop < start:
        raise argparse.ArgumentTypeError("grid needs step > 0 and stop >= start")
    return start, stop, step


def _cplx(v) -> dict:
    v = complex(v)
    return {"re": v.real, "im": v.imag}


def _base(name: str, convention: str) -> triples.DiscreteTriple:
    if name == "circle":
        return triples.circle_triple(convention)
    if name == "unit":
        return triples.unit_triple()
    if name == "integers":
        return triples.integer_triple()
    if name.startswith("power:"):
        try:
            d = int(name.split(":", 1)[1])
        except ValueError:
            raise PreconditionError(f"bad base {name!r}")
        return triples.power_triple(d)
    raise PreconditionError(f"unknown base {name!r}")


def _report(command: str, inputs: dict, value, oracle=None, pole=None) -> dict:
    out = {"command": command, "inputs": inputs, "value": _cplx(value)}
    if pole is not None:
        out["pole"] = {
            "location": _cplx(pole.location),
            "residue": _cplx(pole.residue),
            "finite_part": _cplx(pole.finite_part),
        }
    if oracle is not None:
        out["oracle_value"] = _cplx(oracle)
        out["abs_diff"] = abs(complex(value) - complex(oracle))
    return out


def _cfg(params: dict, base: QuadratureConfig) -> QuadratureConfig:
    tol = params.get("tol")
    if tol is None:
        return base
    if not tol > 0:
        raise PreconditionError("tol must be positive")
    return QuadratureConfig(tol, tol, base.max_subdivisions, base.tail_transform)


@dataclass(frozen=True)
class _Pole:
    location: complex
    residue: complex
    finite_part: complex


def _cmd_heat_trace(p: dict) -> dict:
    z, lam = p["z"], p["lambda"]
    cfg = _cfg(p, triples.TRACE_CONFIG)
    value = triples.heat_trace(zdim.tz_triple(z), lam, cfg)
    return _report("heat-trace", {"z": z, "lambda": lam}, value, zdim.heat_trace_closed(z, lam))


def _zeta_point(z: float, s: complex, cfg: QuadratureConfig) -> tuple[complex, complex | None]:
    value = zdim.zeta_closed(z, s)
    oracle = None
    if s.real > z + 0.1:
        oracle = triples.zeta_trace(zdim.tz_triple(z), s, cfg)
    return value, oracle


def _cmd_zeta(p: dict):
    z = p["z"]
    cfg = _cfg(p, triples.TRACE_CONFIG)
    if p.get("s_grid") is not None:
        start, stop, step = p["s_grid"]
        n = int(math.floor((stop - start) / step + 1e-9)) + 1
        rows = []
        for k in range(n):
            s = complex(start + k * step)
            value, oracle = _zeta_point(z, s, cfg)
            rows.append((s, value, oracle))
        return rows
    if p.get("s") is None:
        raise PreconditionError("zeta needs --s or --s-grid")
    s = p["s"]
    value, oracle = _zeta_point(z, s, cfg)
    return _report("zeta", {"z": z, "s": _cplx(s)}, value, oracle)


def _cmd_residue(p: dict) -> dict:
    z = p["z"]
    stated = zdim.zeta_residue(z)
    contour = zdim.zeta_residue_numeric(z)
    pole = _Pole(z, stated, contour.finite_part)
    return _report("residue", {"z": z}, stated, contour.residue, pole)


def _cmd_cutoff_zeta(p: dict) -> dict:
    z = p["z"]
    pole = _Pole(z, zdim.cutoff_residue(z), 0.0)
    if p.get("s") is None:
        return _report("cutoff-zeta", {"z": z}, zdim.cutoff_residue(z), pole=pole)
    s = p["s"]
    return _report("cutoff-zeta", {"z": z, "s": _cplx(s)}, zdim.cutoff_zeta(z, s), pole=pole)


def _cmd_ez_residue(p: dict) -> dict:
    z = p["z"]
    value = zdim.ez_residue_numeric(z, _cfg(p, triples.TRACE_CONFIG))
    return _report("ez-residue", {"z": z}, value, zdim.cutoff_residue(z))


def _cmd_product_zeta(p: dict) -> dict:
    base = _base(p["base"], p["convention"])
    z, s = p["z"], p["s"]
    pz = prod.ProductZeta(base, z)
    value = prod.product_zeta_closed(pz, s)
    oracle = None
    if pz.convention == "resolvent" and s.real > prod._heat_exponent(base) + z + 0.1:
        oracle = prod.product_zeta_mellin(base, z, s, _cfg(p, prod.MELLIN_CONFIG))
    inputs = {"base": p["base"], "convention": pz.convention, "z": z, "s": _cplx(s)}
    return _report("product-zeta", inputs, value, oracle)


def _cmd_pole_shift(p: dict) -> dict:
    base = _base(p["base"], p["convention"])
    z = p["z"]
    pz = prod.ProductZeta(base, z)
    data = prod.pole_shift_check(pz)
    w, r_w = base.zeta_handle.leading_pole
    expected = prod.expected_shift_residue(complex(w), r_w, z)
    inputs = {"base": p["base"], "convention": pz.convention, "z": z}
    return _report("pole-shift", inputs, data.residue, expected, data)


def _cmd_dimreg(p: dict) -> dict:
    spec = reg.PropagatorSpec(p["n"], p["m"])
    z = p["z"]
    value = reg.dimreg_propagator_closed(spec, z)
    oracle = None
    if z < 2 * spec.n:
        oracle = reg.dimreg_propagator_numeric(spec, z, _cfg(p, triples.TRACE_CONFIG))
    return _report("dimreg", {"n": spec.n, "m": spec.m, "z": z}, value, oracle)


def _cmd_renormalize(p: dict) -> dict:
    target = p["target"]
    if target == "gamma":
        fn = reg.zeta_reg_fn()
        point = p["point"] if p.get("point") is not None else 0j
        inputs = {"target": target, "point": _cplx(point)}
    else:
        spec = reg.PropagatorSpec(p["n"], p["m"])
        fn = reg.dimreg_fn(spec, variable=p["variable"])
        default = 2 * spec.n if p["variable"] == "z" else 0.0
        point = p["point"] if p.get("point") is not None else complex(default)
        inputs = {"target": target, "n": spec.n, "m": spec.m, "variable": p["variable"], "point": _cplx(point)}
    result = reg.renormalize(fn, point)
    return _report("renormalize", inputs, result.renormalized, pole=result.laurent)


def _cmd_zeta_reg(p: dict) -> dict:
    s = p["s"]
    value = reg.zeta_reg_gamma(s, _cfg(p, reg.SCHWINGER_CONFIG))
    return _report("zeta-reg", {"s": _cplx(s)}, value, specfun.gamma(s))


def _cmd_nc_integral(p: dict) -> dict:
    base = _base(p["base"], "modulus")
    value = reg.nc_integral(base, p["a"], p["n"])
    return _report("nc-integral", {"base": p["base"], "a": p["a"], "n": p["n"]}, value)


def _cmd_spectral_action(p: dict) -> dict:
    lhs, rhs = reg.spectral_action_check(triples.integer_triple(), p["a"])
    return _report("spectral-action", {"a": p["a"]}, lhs, rhs)


def _cmd_matrix_check(p: dict) -> dict:
    rng = np.random.default_rng(p["seed"])
    t1 = prod.random_graded_triple(rng, p["dim1"])
    t2 = prod.random_graded_triple(rng, p["dim2"])
    tp = prod.matrix_product(t1, t2)
    time = p["time"]
    value = prod.matrix_heat_trace(tp, time)
    oracle = prod.matrix_heat_trace(t1, time) * prod.matrix_heat_trace(t2, time)
    out = _report(
        "matrix-check", {"seed": p["seed"], "dim1": p["dim1"], "dim2": p["dim2"], "time": time}, value, oracle
    )
    out["unitary_defect"] = prod.unitary_equivalence_check(t1, t2)
    return out


COMMANDS = {
    "heat-trace": _cmd_heat_trace,
    "zeta": _cmd_zeta,
    "residue": _cmd_residue,
    "cutoff-zeta": _cmd_cutoff_zeta,
    "ez-residue": _cmd_ez_residue,
    "product-zeta": _cmd_product_zeta,
    "pole-shift": _cmd_pole_shift,
    "dimreg": _cmd_dimreg,
    "renormalize": _cmd_renormalize,
    "zeta-reg": _cmd_zeta_reg,
    "nc-integral": _cmd_nc_integral,
    "spectral-action": _cmd_spectral_action,
    "matrix-check": _cmd_matrix_check,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="zdim", description="z-dimensional spectral triple computations")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--format", dest="output_format", choices=("json", "csv"), default="json")
        if name != "verify":
            sp.add_argument("--tol", type=_finite_float, default=None, help="quadrature tolerance override")
        return sp

    sp = add("heat-trace", "heat trace of T_z by quadrature")
    sp.add_argument("--z", type=_finite_float, required=True)
    sp.add_argument("--lambda", dest="lambda", type=_finite_float, required=True)

    sp = add("zeta", "closed-form resolvent zeta of T_z")
    sp.add_argument("--z", type=_finite_float, required=True)
    sp.add_argument("--s", type=_finite_complex)
    sp.add_argument("--s-grid", dest="s_grid", type=_grid)

    sp = add("residue", "residue data at s = z")
    sp.add_argument("--z", type=_finite_float, required=True)

    sp = add("cutoff-zeta", "infra-red cutoff zeta")
    sp.add_argument("--z", type=_finite_float, required=True)
    sp.add_argument("--s", type=_finite_complex)

    sp = add("ez-residue", "residue of the smoothed E_z zeta")
    sp.add_argument("--z", type=_finite_float, required=True)

    for name, text in (
        ("product-zeta", "zeta of a base triple times T_z"),
        ("pole-shift", "residue of the product zeta at the shifted leading pole"),
    ):
        sp = add(name, text)
        sp.add_argument("--base", default="circle")
        sp.add_argument("--convention", choices=triples.CONVENTIONS, default="resolvent")
        sp.add_argument("--z", type=_finite_float, required=True)
        if name == "product-zeta":
            sp.add_argument("--s", type=_finite_complex, required=True)

    sp = add("dimreg", "dimensionally regularised propagator trace")
    sp.add_argument("--n", type=int, default=2)
    sp.add_argument("--m", type=_finite_float, default=1.0)
    sp.add_argument("--z", type=_finite_float, required=True)

    sp = add("renormalize", "Laurent data and finite part at a physical point")
    sp.add_argument("--target", choices=("gamma", "dimreg"), default="gamma")
    sp.add_argument("--n", type=int, default=2)
    sp.add_argument("--m", type=_finite_float, default=1.0)
    sp.add_argument("--variable", choices=("z", "w"), default="z")
    sp.add_argument("--point", type=_finite_complex)

    sp = add("zeta-reg", "Gamma(s) as a Mellin integral")
    sp.add_argument("--s", type=_finite_complex, required=True)

    sp = add("nc-integral", "noncommutative integral of (a/D)^n")
    sp.add_argument("--base", default="integers")
    sp.add_argument("--a", type=_finite_float, required=True)
    sp.add_argument("--n", type=int, required=True)

    sp = add("spectral-action", "variation of zeta(0) under D -> D + a")
    sp.add_argument("--a", type=_finite_float, required=True)

    sp = add("matrix-check", "product identities on random graded matrices")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--dim1", type=int, default=4)
    sp.add_argument("--dim2", type=int, default=4)
    sp.add_argument("--time", type=_finite_float, default=1.0)

    sp = add("verify", "run acceptance criteria")
    sp.add_argument("--suite", choices=tuple(acceptance.SUITES), default="all")
    return parser


def parse_request(argv: list[str] | None = None) -> CommandRequest:
    ns = vars(_build_parser().parse_args(argv))
    sub = ns.pop("subcommand")
    fmt = ns.pop("output_format")
    return CommandRequest(sub, ns, fmt)


def _dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=False, allow_nan=False)


def _csv_text(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([repr(float(x)) if isinstance(x, (float, np.floating)) else x for x in r])
    return buf.getvalue()


def _render_zeta_rows(rows, fmt: str, z: float) -> str:
    header = ["s_re", "s_im", "value_re", "value_im", "oracle_re", "oracle_im"]
    table = []
    for s, v, o in rows:
        o = complex("nan") if o is None else complex(o)
        table.append([s.real, s.imag, complex(v).real, complex(v).imag, o.real, o.imag])
    if fmt == "csv":
        return _csv_text(header, table)
    points = [
        {"s": _cplx(s), "value": _cplx(v), **({"oracle_value": _cplx(o)} if o is not None else {})}
        for s, v, o in rows
    ]
    return _dump_json({"command": "zeta", "inputs": {"z": z}, "points": points})


def _render_report(report: dict, fmt: str) -> str:
    if fmt == "json":
        return _dump_json(report)
    header = ["value_re", "value_im"]
    row = [report["value"]["re"], report["value"]["im"]]
    if "oracle_value" in report:
        header += ["oracle_re", "oracle_im", "abs_diff"]
        row += [report["oracle_value"]["re"], report["oracle_value"]["im"], report["abs_diff"]]
    return _csv_text(header, [row])


def verify(suite: str, fmt: str = "json") -> tuple[int, str]:
    results = acceptance.run_suite(suite)
    for r in results:
        print(r.line(), file=sys.stderr)
    ok = all(r.passed for r in results)
    if fmt == "csv":
        header = ["id", "target", "computed", "tolerance", "pass"]
        text = _csv_text(header, [[r.id, r.target, r.computed, r.tolerance, r.passed] for r in results])
    else:
        rows = [{k: v for k, v in r.row().items() if k in ("id", "target", "computed", "tolerance", "pass")}
                for r in results]
        # json cannot carry inf; a crashed criterion reports null
        for row in rows:
            if not math.isfinite(row["computed"]):
                row["computed"] = None
        text = _dump_json({"command": "verify", "suite": suite, "rows": rows, "passed": ok})
    return (EXIT_OK if ok else EXIT_FAILED), text


def run(req: CommandRequest) -> tuple[int, str]:
    """Execute a request; returns (exit status, text for stdout)."""
    try:
        if req.subcommand == "verify":
            return verify(req.params["suite"], req.output_format)
        if req.subcommand not in COMMANDS:
            raise PreconditionError(f"unknown subcommand {req.subcommand!r}")
        result = COMMANDS[req.subcommand](req.params)
        if isinstance(result, list):
            return EXIT_OK, _render_zeta_rows(result, req.output_format, req.params["z"])
        return EXIT_OK, _render_report(result, req.output_format)
    except PreconditionError as exc:
        print(f"zdim: bad input: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT, ""
    except NumericalError as exc:
        print(f"zdim: numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL, ""
    except ZTripleError as exc:  # pragma: no cover - every error is in one of the two families
        print(f"zdim: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL, ""


def main(argv: list[str] | None = None) -> int:
    req = parse_request(argv)
    status, text = run(req)
    if text:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
