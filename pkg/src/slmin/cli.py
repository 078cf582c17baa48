"""Command-line front end.

Exit codes: 0 success, 2 domain/hypothesis error, 3 effort bound exceeded,
4 equivalence fault (two sides of a proven characterization disagreed, or a
lemma check failed where its hypotheses hold).
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import sys
from dataclasses import dataclass

from . import __version__
from .config import Bounds, default_bounds
from .errors import DomainError, EquivalenceFault, SlminError
from .fields import parse_field
from .minimality import (
    FERMAT_CHARACTERIZATION,
    MERSENNE_CHARACTERIZATION,
    SCHEMA_VERSION,
    FamilyDescriptor,
    FamilyShape,
    fermat_theorem_check,
    mersenne_theorem_check,
    product_minimal,
    sl_totally_minimal,
    stp_minimal,
)
from .oracle.fq import make_field, prime_power
from .oracle.lemmas import (
    center_suite,
    verify_center_lemma,
    verify_centerfree_quotient,
    verify_derived_subgroup,
    verify_ut_intersection_lemma,
)
from .scans import fermat_scan, mersenne_scan

COMMANDS = (
    "check-sl",
    "check-stp",
    "product",
    "fermat",
    "mersenne",
    "scan-fermat",
    "scan-mersenne",
    "oracle",
    "version",
)
SHAPES = {
    "explicit": FamilyShape.EXPLICIT_FINITE,
    "powers-of-two": FamilyShape.INFINITE_POWERS_OF_TWO,
    "fermat": FamilyShape.FERMAT_SET,
    "mersenne": FamilyShape.MERSENNE_SET,
}
LEMMAS = ("center", "centerfree", "ut-intersection", "derived", "center-suite")


@dataclass(frozen=True)
class RunConfig:
    command: str
    output: str = "json"
    workers: int = 1
    n: int | None = None
    field_expr: str | None = None
    p: int | None = None
    limit: int | None = None
    shape: str | None = None
    degrees: tuple[int, ...] | None = None
    which: str | None = None
    assume_finite: bool | None = None
    group: str | None = None
    lemma: str | None = None
    q: int | None = None
    e: int | None = None
    exploratory: bool = False
    bound_overrides: tuple[tuple[str, int], ...] = ()

    def to_argv(self) -> list[str]:
        """Canonical command line that parses back to this config."""
        argv = [self.command]
        simple = [
            ("--n", self.n),
            ("--field", self.field_expr),
            ("--p", self.p),
            ("--limit", self.limit),
            ("--shape", self.shape),
            ("--which", self.which),
            ("--group", self.group),
            ("--lemma", self.lemma),
            ("--q", self.q),
            ("--e", self.e),
        ]
        for flag, value in simple:
            if value is not None:
                argv += [flag, str(value)]
        if self.degrees is not None:
            argv += ["--degrees", ",".join(map(str, self.degrees))]
        if self.assume_finite is not None:
            argv += ["--assume-finite", "yes" if self.assume_finite else "no"]
        if self.exploratory:
            argv.append("--exploratory")
        for name, value in self.bound_overrides:
            argv += ["--bound", f"{name}={value}"]
        argv += ["--output", self.output, "--workers", str(self.workers)]
        return argv

    def bounds(self) -> Bounds:
        return default_bounds().replace(**dict(self.bound_overrides))


def _degrees(text):
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"degrees must be comma-separated integers, got {text!r}")


def _yes_no(text):
    if text in ("yes", "true"):
        return True
    if text in ("no", "false"):
        return False
    raise argparse.ArgumentTypeError(f"expected yes or no, got {text!r}")


def _bound(text):
    name, sep, value = text.partition("=")
    names = {f.name for f in dataclasses.fields(Bounds)}
    if not sep or name not in names:
        raise argparse.ArgumentTypeError(f"bound must be NAME=VALUE with NAME in {sorted(names)}")
    return name, int(value)


def build_parser() -> argparse.ArgumentParser:
    defaults = Bounds()
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", choices=("json", "csv", "text"), default="json")
    common.add_argument("--workers", type=int, default=1, help="worker processes for scans (default 1)")
    common.add_argument(
        "--bound",
        action="append",
        type=_bound,
        default=[],
        dest="bound_overrides",
        metavar="NAME=VALUE",
        help="override an effort bound; defaults: "
        + ", ".join(f"{f.name}={getattr(defaults, f.name)}" for f in dataclasses.fields(Bounds))
        + " (env SLMIN_<NAME> also works)",
    )

    parser = argparse.ArgumentParser(prog="slmin", description="Minimality verdicts for SL/STP and Fermat/Mersenne scans.")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, helptext in (("check-sl", "minimality and total minimality of SL(n,F)"), ("check-stp", "minimality of STP(n,F)")):
        sp = sub.add_parser(name, parents=[common], help=helptext)
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--field", dest="field_expr", required=True, help='Q(i), Q(zeta_d), R-subfield or Q@p')

    sp = sub.add_parser("product", parents=[common], help="minimality of a product family")
    sp.add_argument("--shape", choices=sorted(SHAPES), required=True)
    sp.add_argument("--degrees", type=_degrees)
    sp.add_argument("--which", choices=("primes", "composites"))
    sp.add_argument("--assume-finite", dest="assume_finite", type=_yes_no)
    sp.add_argument("--group", choices=("SL", "STP"))
    sp.add_argument("--field", dest="field_expr")

    for name in ("fermat", "mersenne"):
        sp = sub.add_parser(name, parents=[common], help=f"check the {name} characterization at one prime")
        sp.add_argument("--p", type=int, required=True)

    for name in ("scan-fermat", "scan-mersenne"):
        sp = sub.add_parser(name, parents=[common], help=f"{name.split('-')[1]} equivalence scan over primes <= limit")
        sp.add_argument("--limit", type=int, required=True)

    sp = sub.add_parser("oracle", parents=[common], help="finite-field lemma checks")
    sp.add_argument("--lemma", choices=LEMMAS, required=True)
    sp.add_argument("--n", type=int)
    sp.add_argument("--q", type=int, help="field order (prime power)")
    sp.add_argument("--p", type=int, help="subfield characteristic for ut-intersection")
    sp.add_argument("--e", type=int, help="extension degree for ut-intersection")
    sp.add_argument("--exploratory", action="store_true", help="report instead of rejecting small-field cases")

    sub.add_parser("version", parents=[common], help="print version and schema strings")
    return parser


def parse_config(argv) -> RunConfig:
    ns = build_parser().parse_args(argv)
    values = vars(ns)
    values["bound_overrides"] = tuple(values.get("bound_overrides") or ())
    known = {f.name for f in dataclasses.fields(RunConfig)}
    return RunConfig(**{k: v for k, v in values.items() if k in known})


# -- execution ------------------------------------------------------------------


@dataclass
class CommandResult:
    payload: dict
    rows: list[dict]
    text: str
    exit_code: int = 0


def _need(value, flag):
    if value is None:
        raise DomainError(f"missing required option {flag}")
    return value


def _verdict_text(d):
    if d["group"] == "PRODUCT":
        fam = d["family"]
        desc = fam["shape"] + (f" {fam['degrees']}" if "degrees" in fam else "") + (f" {fam['which']}" if "which" in fam else "")
        lines = [f"PRODUCT of {fam['group']} over {d['field']} ({desc}): minimal={d['minimal']}"]
    else:
        lines = [f"{d['group']}({d['degree']}, {d['field']}): minimal={d['minimal']}"]
    if "totally_minimal" in d:
        lines.append(f"  totally_minimal={d['totally_minimal']}")
    if "witness_order" in d:
        lines.append(f"  witness_order={d['witness_order']}")
    if "condition" in d:
        lines.append(f"  condition: {d['condition']}")
    lines.append("  trail: " + "; ".join(d["theorem_trail"]))
    return "\n".join(lines)


def _verdict_outcome(verdict):
    d = verdict.to_dict()
    row = {k: v for k, v in d.items() if k != "family"}
    row["theorem_trail"] = "; ".join(d["theorem_trail"])
    if "family" in d:
        row["family"] = json.dumps(d["family"], sort_keys=True)
    return CommandResult(d, [row], _verdict_text(d))


def _record_outcome(record, theorem):
    d = {"schema_version": SCHEMA_VERSION, "theorem": theorem, **record.to_dict()}
    text = "\n".join(f"{k}: {v}" for k, v in d.items())
    return CommandResult(d, [d], text)


def _scan_outcome(report):
    d = report.to_dict()
    rows = d["records"]
    label = "Fermat" if report.kind == "fermat" else "Mersenne"
    lines = [f"{label} scan up to {report.limit}: {len(rows)} primes checked"]
    lines.append("p\t" + "\t".join(k for k in rows[0] if k != "p") if rows else "p")
    for r in rows:
        if r["side_gaussian"]:
            lines.append(f"{r['p']}\t" + "\t".join(str(v) for k, v in r.items() if k != "p"))
    if report.mersenne_exponents is not None:
        lines.append("Mersenne exponents (Lucas-Lehmer): " + ", ".join(map(str, report.mersenne_exponents)))
    lines.append(f"{label} primes detected: " + ", ".join(map(str, report.detected)))
    lines.append(f"faults: {report.faults}")
    return CommandResult(d, rows, "\n".join(lines))


def _oracle_outcome(reports, exploratory):
    dicts = [r.to_dict() for r in reports]
    payload = dicts[0] if len(dicts) == 1 else {"schema_version": dicts[0]["schema_version"], "reports": dicts}
    rows = [r.csv_row() for r in reports]
    text = "\n".join(f"{r['lemma']}\tn={r['n']}\tq={r['q']}\t{r['modulus']}\t{r['result']}" for r in rows)
    failed = any(r.result == "fail" for r in reports)
    return CommandResult(payload, rows, text, 4 if failed and not exploratory else 0)


def execute(cfg: RunConfig) -> CommandResult:
    bounds = cfg.bounds()
    cmd = cfg.command
    if cmd == "version":
        d = {"version": __version__, "schema_version": SCHEMA_VERSION}
        return CommandResult(d, [d], f"slmin {__version__} ({SCHEMA_VERSION})")
    if cmd in ("check-sl", "check-stp"):
        field = parse_field(_need(cfg.field_expr, "--field"))
        n = _need(cfg.n, "--n")
        verdict = sl_totally_minimal(n, field, bounds) if cmd == "check-sl" else stp_minimal(n, field, bounds)
        return _verdict_outcome(verdict)
    if cmd == "product":
        family = FamilyDescriptor(
            shape=SHAPES[cfg.shape],
            base_field=parse_field(cfg.field_expr or "Q(i)"),
            degrees=cfg.degrees or (),
            which=cfg.which,
            assumed_finite=cfg.assume_finite,
            group=cfg.group or "SL",
        )
        return _verdict_outcome(product_minimal(family, bounds))
    if cmd == "fermat":
        return _record_outcome(fermat_theorem_check(_need(cfg.p, "--p"), bounds), FERMAT_CHARACTERIZATION)
    if cmd == "mersenne":
        return _record_outcome(mersenne_theorem_check(_need(cfg.p, "--p"), bounds), MERSENNE_CHARACTERIZATION)
    if cmd == "scan-fermat":
        return _scan_outcome(fermat_scan(_need(cfg.limit, "--limit"), cfg.workers, bounds))
    if cmd == "scan-mersenne":
        return _scan_outcome(mersenne_scan(_need(cfg.limit, "--limit"), cfg.workers, bounds))
    if cmd == "oracle":
        lemma = cfg.lemma
        if lemma == "center-suite":
            return _oracle_outcome(center_suite(bounds=bounds), False)
        if lemma == "ut-intersection":
            report = verify_ut_intersection_lemma(_need(cfg.n, "--n"), _need(cfg.p, "--p"), _need(cfg.e, "--e"), bounds)
            return _oracle_outcome([report], False)
        fq = make_field(*prime_power(_need(cfg.q, "--q")))
        n = _need(cfg.n, "--n")
        fn = {"center": verify_center_lemma, "centerfree": verify_centerfree_quotient, "derived": verify_derived_subgroup}[lemma]
        return _oracle_outcome([fn(n, fq, cfg.exploratory, bounds)], cfg.exploratory)
    raise DomainError(f"unknown command {cmd!r}")


def render(outcome: CommandResult, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(outcome.payload, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        fieldnames = list(dict.fromkeys(k for row in outcome.rows for k in row))
        writer = csv.DictWriter(buf, fieldnames=fieldnames, lineterminator="\n")
        writer.writeheader()
        for row in outcome.rows:
            writer.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v for k, v in row.items()})
        return buf.getvalue()
    return outcome.text + "\n"


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        cfg = parse_config(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        outcome = execute(cfg)
    except EquivalenceFault as exc:
        payload = {"error": "equivalence-fault", "message": str(exc)}
        if exc.record is not None:
            payload["record"] = exc.record.to_dict()
        stderr.write(json.dumps(payload, indent=2) + "\n")
        return exc.exit_code
    except SlminError as exc:
        stderr.write(f"slmin: error: {exc}\n")
        return exc.exit_code
    stdout.write(render(outcome, cfg.output))
    return outcome.exit_code


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
