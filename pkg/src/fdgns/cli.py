"""Command-line front end.

    fdgns example qubit|epr [--tol X]
    fdgns gns --input state.json
    fdgns sweep --seed 0 --instances 100 [--tol law=x ...] [--workers N]

All commands take ``--output PATH`` and ``--format json|text``. The exit
status is 0 iff every certificate and law passed, 1 if something failed
and 2 for usage or input errors.
"""
import argparse
from dataclasses import dataclass, field
import json
import sys

from . import __version__
from .exceptions import FdgnsError, SchemaError
from .golden import EXAMPLES, run_example
from .gns import gns_construct, gns_intertwiner, is_cyclic, modification_m, rest
from .jsonio import gns_to_json, intertwiner_to_json, morphism_from_json, state_from_json
from .laws import TOLERANCES, run_all
from .states import verify_state

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


@dataclass
class RunConfig:
    command: str
    example_id: str = None
    input_path: str = None
    seed: int = 0
    instances: int = 100
    tol_overrides: dict = field(default_factory=dict)
    output: str = None
    format: str = "json"
    workers: int = 1

    def __post_init__(self):
        if self.command not in ("example", "gns", "sweep"):
            raise ValueError(f"unknown command {self.command!r}")
        if self.command == "example" and self.example_id is None:
            raise ValueError("example requires an example id")
        if self.command == "gns" and self.input_path is None:
            raise ValueError("gns requires --input")
        if self.instances < 1:
            raise ValueError("--instances must be at least 1")


def parse_tol(values):
    """``["1e-12"]`` -> ``{"*": 1e-12}``; ``["law=1e-12"]`` -> ``{"law": 1e-12}``."""
    out = {}
    for item in values or ():
        key, sep, val = item.rpartition("=")
        key = key if sep else "*"
        try:
            out[key] = float(val)
        except ValueError:
            raise ValueError(f"bad tolerance {item!r}; use law=value or value") from None
        if not out[key] >= 0:
            raise ValueError(f"tolerance must be nonnegative: {item!r}")
    return out


def run_gns(input_path):
    """Returns ``(report, ok)``."""
    with open(input_path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc.msg} (line {exc.lineno}, column {exc.colno})", input_path) from None
    state_data = data.get("state", data) if isinstance(data, dict) else data
    omega = state_from_json(state_data, "state" if state_data is not data else "")
    cert = verify_state(omega)
    report = {"state_certificate": cert.to_dict()}
    if not cert.passed:
        report["pass"] = False
        return report, False

    f = None
    if isinstance(data, dict) and "morphism" in data:
        f = morphism_from_json(data["morphism"]).certify()
        report["morphism_certificate"] = f.certificate.to_dict()
        if not f.verified:
            report["pass"] = False
            return report, False
        if f.target != omega.algebra:
            raise SchemaError("morphism target does not match the state's algebra", "morphism.target")

    g = gns_construct(omega)
    report.update(gns_to_json(g))
    cyc = is_cyclic(g.rep)
    certs = {
        "representation": g.rep.verify().to_dict(),
        "cyclic": {"pass": cyc.cyclic, "orbit_rank": cyc.orbit_rank},
        "rest_recovers_state": {"pass": rest(g).distance(omega) <= 1e-8, "max_violation": rest(g).distance(omega)},
        "m_is_identity": modification_m(g).certificate.to_dict(),
    }
    report["certificates"] = certs
    ok = cert.passed and certs["representation"]["pass"] and cyc.cyclic and certs["rest_recovers_state"]["pass"]
    if f is not None:
        L = gns_intertwiner(f, omega, target_gns=g)
        report["intertwiner"] = intertwiner_to_json(L)
        ok = ok and L.is_pointed_morphism
    report["pass"] = bool(ok)
    return report, bool(ok)


def run_sweep(seed=0, instances=100, tol_overrides=None, workers=1):
    """Returns ``(report, ok)``."""
    unknown = set(tol_overrides or {}) - set(TOLERANCES) - {k.split(".")[0] for k in TOLERANCES} - {"*"}
    if unknown:
        raise ValueError(f"unknown law ids in tolerance overrides: {sorted(unknown)}")
    reports = run_all(seed=seed, instances=instances, tol_overrides=tol_overrides, workers=workers)
    ok = all(r.passed for r in reports)
    return {
        "seed": seed,
        "instances": instances,
        "pass": ok,
        "laws": [r.to_dict() for r in reports],
    }, ok


def render_text(report, indent=0):
    """Readable rendering of a JSON-shaped report; large arrays are summarized."""
    pad = "  " * indent
    lines = []
    if "laws" in report:
        lines.append(f"seed={report['seed']} instances={report['instances']}")
        for law in report["laws"]:
            subs = law.get("subreports", [law])
            for r in subs:
                status = "PASS" if r["pass"] else "FAIL"
                lines.append(f"{status} {r['law_id']:<28} max_violation={r['max_violation']:.3e} tol={r['tol']:.0e}")
                for w in r["witnesses"]:
                    lines.append(f"     witness: instance={w['instance']} violation={w['violation']:.3e}")
        lines.append("overall: " + ("PASS" if report["pass"] else "FAIL"))
        return "\n".join(lines)
    for key, value in report.items():
        if isinstance(value, dict):
            lines.append(f"{pad}{key}:")
            lines.append(render_text(value, indent + 1))
        elif isinstance(value, list) and value and isinstance(value[0], list) and len(str(value)) > 80:
            lines.append(f"{pad}{key}: <{len(value)} rows>")
        else:
            lines.append(f"{pad}{key}: {value}")
    return "\n".join(lines)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", "-o", default=None, help="write the report here instead of stdout")
    common.add_argument("--format", choices=("json", "text"), default="json")

    parser = argparse.ArgumentParser(prog="fdgns", description="GNS construction and law checks for finite-dimensional C*-algebras")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    ex = sub.add_parser("example", parents=[common], help="reproduce a worked example")
    ex.add_argument("example_id", choices=sorted(EXAMPLES))
    ex.add_argument("--tol", action="append", help="tolerance for every certificate (value or law=value)")

    g = sub.add_parser("gns", parents=[common], help="run the GNS construction on a JSON state")
    g.add_argument("--input", "-i", required=True, dest="input_path")

    sw = sub.add_parser("sweep", parents=[common], help="check every law on seeded random instances")
    sw.add_argument("--seed", type=int, default=0)
    sw.add_argument("--instances", type=int, default=100)
    sw.add_argument("--tol", action="append", help="law=value; may be repeated")
    sw.add_argument("--workers", type=int, default=1)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = RunConfig(
            command=args.command,
            example_id=getattr(args, "example_id", None),
            input_path=getattr(args, "input_path", None),
            seed=getattr(args, "seed", 0),
            instances=getattr(args, "instances", 100),
            tol_overrides=parse_tol(getattr(args, "tol", None)),
            output=args.output,
            format=args.format,
            workers=getattr(args, "workers", 1),
        )
        if config.command == "example":
            tol = config.tol_overrides.get("*")
            if tol is None and config.tol_overrides:
                tol = min(config.tol_overrides.values())
            report = run_example(config.example_id, tol)
            ok = report["pass"]
        elif config.command == "gns":
            report, ok = run_gns(config.input_path)
        else:
            report, ok = run_sweep(config.seed, config.instances, config.tol_overrides, config.workers)
    except (FdgnsError, ValueError, OSError) as exc:
        print(f"fdgns: error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    text = json.dumps(report, indent=2) if config.format == "json" else render_text(report)
    if config.output:
        with open(config.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return EXIT_OK if ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
