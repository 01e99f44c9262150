"""Command-line driver: ``skewtower schedule|verify|explain``.

Tower specs are INI files::

    [tower]
    p = 2
    primes = 2, 3
    truncation = 1

    [gext]
    preset = artin_schreier

    [checks]
    precision = 20
    samples = 20
    seed = 0

    [overrides]
    l = 2, 4

Exit codes: 0 all pass, 1 some validation or check failed, 2 invalid spec
or usage.
"""

from __future__ import annotations

import argparse
import configparser
import json
import re
import sys
import time
from dataclasses import dataclass, field

from . import __version__
from .checks import SUITES, Context, check_names, run_checks
from .gext import PRESETS, CommExtSpec, GextError
from .scheduler import ScheduleError, lemma4_conditions, schedule_example_a, validate_schedule
from .tower import Tower, TowerError

SCHEMA = "1"
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
_SUPERSCRIPT = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")


class SpecError(ValueError):
    """The spec file or command line is unusable."""


@dataclass
class TowerSpec:
    p: int
    primes: tuple
    truncation: int | None = None
    preset: str = "artin_schreier"
    precision: int = 20
    samples: int = 20
    seed: int = 0
    overrides: dict = field(default_factory=dict)

    def to_dict(self):
        out = {
            "p": self.p,
            "primes": list(self.primes),
            "truncation": self.truncation,
            "preset": self.preset,
            "precision": self.precision,
            "samples": self.samples,
            "seed": self.seed,
        }
        if self.overrides:
            out["overrides"] = {k: list(v) for k, v in sorted(self.overrides.items())}
        return out

    def schedule(self):
        s = schedule_example_a(self.p, self.primes, self.truncation)
        if self.overrides:
            s = s.with_overrides(**self.overrides)
        return s


def _int_list(text, key):
    try:
        return tuple(int(v) for v in re.split(r"[,\s]+", text.strip()) if v)
    except ValueError:
        raise SpecError(f"{key}: expected a list of integers, got {text!r}") from None


def _get_int(cp, section, key, default):
    if not cp.has_option(section, key):
        return default
    try:
        return cp.getint(section, key)
    except ValueError:
        raise SpecError(f"[{section}] {key}: expected an integer") from None


_KNOWN = {
    "tower": {"p", "primes", "truncation"},
    "gext": {"preset"},
    "checks": {"precision", "samples", "seed"},
    "overrides": {"d", "a", "l"},
}


def parse_spec(text):
    """Parse and validate a spec file's contents."""
    cp = configparser.ConfigParser()
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise SpecError(f"malformed spec: {exc}") from None
    for section in cp.sections():
        if section not in _KNOWN:
            raise SpecError(f"unknown section [{section}]")
        extra = set(cp[section]) - _KNOWN[section]
        if extra:
            raise SpecError(f"unknown keys in [{section}]: {', '.join(sorted(extra))}")
    if not cp.has_option("tower", "p") or not cp.has_option("tower", "primes"):
        raise SpecError("[tower] needs p and primes")
    spec = TowerSpec(
        p=_get_int(cp, "tower", "p", None),
        primes=_int_list(cp.get("tower", "primes"), "primes"),
        truncation=_get_int(cp, "tower", "truncation", None),
        preset=cp.get("gext", "preset", fallback="artin_schreier").strip(),
        precision=_get_int(cp, "checks", "precision", 20),
        samples=_get_int(cp, "checks", "samples", 20),
        seed=_get_int(cp, "checks", "seed", 0),
        overrides={k: _int_list(v, k) for k, v in cp["overrides"].items()} if cp.has_section("overrides") else {},
    )
    _validate(spec)
    return spec


def _validate(spec):
    if spec.preset not in PRESETS:
        raise SpecError(f"unknown preset {spec.preset!r}")
    if spec.precision < 1 or spec.samples < 1:
        raise SpecError("precision and samples must be positive")
    if not 0 <= spec.seed < 2 ** 64:
        raise SpecError("seed must fit in an unsigned 64-bit integer")
    try:
        CommExtSpec(spec.p, spec.preset)
        spec.schedule()
    except (ScheduleError, GextError) as exc:
        raise SpecError(str(exc)) from None


def load_spec(path, args=None):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise SpecError(f"cannot read spec: {exc}") from None
    spec = parse_spec(text)
    if args is not None:
        for key in ("seed", "precision", "truncation"):
            value = getattr(args, key, None)
            if value is not None:
                setattr(spec, key, value)
        _validate(spec)
    return spec


# -- reports ---------------------------------------------------------------------
def _header(spec, schedule):
    report = validate_schedule(schedule)
    return {
        "schema": SCHEMA,
        "tool": {"name": "skewtower", "version": __version__},
        "spec": spec.to_dict(),
        "schedule": schedule.to_dict(),
        "validation": {**report.to_dict(), "first_failing_index": report.first_failing_index()},
    }, report


def schedule_report(spec):
    schedule = spec.schedule()
    out, report = _header(spec, schedule)
    out["status"] = "pass" if report.ok else "fail"
    return out


def verify_report(spec, suite="all", timings=False):
    schedule = spec.schedule()
    out, report = _header(spec, schedule)
    ctx = Context(schedule, spec.preset, spec.precision, spec.samples)
    start = time.perf_counter()
    results = run_checks(ctx, suite, spec.seed)
    out["suite"] = suite
    out["checks"] = [r.to_dict() for r in sorted(results, key=lambda r: r.name)]
    ok = report.ok and all(r.passed for r in results)
    out["status"] = "pass" if ok else "fail"
    if timings:
        # wall-clock data breaks byte-identical reruns, so it is opt-in
        out["elapsed_seconds"] = round(time.perf_counter() - start, 3)
    return out


def dump_report(report):
    return json.dumps(report, sort_keys=True, ensure_ascii=False, indent=2) + "\n"


# -- explain ---------------------------------------------------------------------
def _sup(k):
    return str(k).translate(_SUPERSCRIPT)


def _power(var, k):
    return var if k == 1 else f"{var}{_sup(k)}"


def explain(spec, item):
    """Render a construction named by ``item`` as one line of text."""
    schedule = spec.schedule()
    tower = Tower(schedule, check=False)
    item = item.strip()
    m = re.fullmatch(r"(u|v|psi)_?(\d+)", item)
    if m:
        kind, n = m.group(1), int(m.group(2))
        return _explain_indexed(tower, kind, n)
    m = re.fullmatch(r"root\s+t_?(\d+|M)(?:\s+t_?(\d+))?", item)
    if m:
        N = tower.N
        lo = N - 1 if m.group(1) == "M" else int(m.group(1))
        hi = int(m.group(2)) if m.group(2) else lo + 1
        if lo < 0 or not lo <= hi <= N:
            raise SpecError(f"root needs levels 0 <= m <= n <= {N}")
        _, e = tower.root_witness(lo, hi)
        return f"t_{lo} = {_power(f't_{hi}', e)}"
    raise SpecError(f"unknown item {item!r}; try u_0, v_0, psi_0 or 'root t0'")


def _explain_indexed(tower, kind, n):
    s = tower.schedule
    N = tower.N
    if kind in ("u", "v"):
        if not 0 <= n < N:
            raise SpecError(f"{kind}_{n} needs 0 <= n < {N}")
        e = s.l[n + 1] // s.l[n] if s.l[n + 1] % s.l[n] == 0 else None
        if e is None:
            return f"{kind}_{n} undefined: {s.l[n]} does not divide {s.l[n + 1]}"
        conds = lemma4_conditions(s.d[n], s.d[n + 1], s.a[n + 1], s.a[n], s.l[n], e)
        (k1, v1, _), (k2, v2, _), (k3, _, _) = conds
        text = (f"{k1}|{v1}, {k2}|{v2}, "
                f"{s.a[n + 1] * e}≡{s.a[n]} (mod {k3})")
        status = "" if all(c[2] for c in conds) else " (violated)"
        head = f"t ↦ {_power('t', e)}"
        if kind == "v":
            head = f"X_{s.l[n]} ↦ X_{s.l[n + 1]}, {head}"
        return f"{head}; morphism conditions: {text}{status}"
    if not 0 <= n <= N:
        raise SpecError(f"psi_{n} needs 0 <= n <= {N}")
    parts = []
    for m in range(n, N + 1):
        try:
            e = tower.psi_exponent(n, m).exponent
            parts.append(f"h_{m}: σ{_sup(e)}" if e != 1 else f"h_{m}: σ")
        except TowerError as exc:
            parts.append(f"h_{m}: undefined ({exc})")
    order = "order divides " + str(s.l[n])
    return f"psi_{n} = " + ", ".join(parts) + f"; {order}"


# -- entry point -----------------------------------------------------------------
class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser():
    parser = _Parser(prog="skewtower", description="Build and verify skew Laurent field towers.")
    parser.add_argument("--version", action="version", version=f"skewtower {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("--spec", required=True, help="tower spec (INI)")
        p.add_argument("--seed", type=int, help="override [checks] seed")
        p.add_argument("--precision", type=int, help="override [checks] precision")
        p.add_argument("--truncation", type=int, help="override [tower] truncation")

    p = sub.add_parser("schedule", help="derive and validate the divisibility schedule")
    common(p)
    p.add_argument("--out", help="write the JSON report here instead of stdout")

    p = sub.add_parser("verify", help="run invariant suites")
    common(p)
    p.add_argument("--out", help="write the JSON report here instead of stdout")
    p.add_argument("--suite", default="all", help=f"all or one of: {', '.join(SUITES)}")
    p.add_argument("--timings", action="store_true", help="include elapsed time (not reproducible)")

    p = sub.add_parser("explain", help="render a named construction")
    common(p)
    p.add_argument("item", nargs="+", help="u_N, v_N, psi_N or root tM")
    return parser


def _emit(text, out):
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        spec = load_spec(args.spec, args)
        if args.command == "schedule":
            report = schedule_report(spec)
        elif args.command == "verify":
            if args.suite not in SUITES + ("all",) or not check_names(args.suite):
                raise SpecError(f"unknown or empty suite {args.suite!r}")
            report = verify_report(spec, args.suite, args.timings)
        else:
            print(explain(spec, " ".join(args.item)))
            return EXIT_OK
    except (SpecError, TowerError) as exc:
        print(f"skewtower: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(dump_report(report), args.out)
    return EXIT_OK if report["status"] == "pass" else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
