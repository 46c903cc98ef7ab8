"""Command line entry point and the check runner behind ``verify``."""

from __future__ import annotations

import argparse
import json
import sys
import time
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

from .chevalley import build_basis
from .cohomology import Cohomology
from .counterexample import ConfigError, Counterexample, validate
from .g2group import BoundExceeded
from .gf2m import field_make
from .suites import CHECKS, DEFAULT_SUITES, SUITES, Context

CONTROL_CONFIG = (3, 2)
SEARCH_SPACE_NOTE = (
    "non-conjugacy is searched over T*G_omega; equality of this set with the "
    "GF(2^m)-points of C_G(t) is assumed, only the Lie-algebra fixed-space "
    "dimension is checked"
)


@dataclass(frozen=True)
class RunConfig:
    q: int = 7
    m: int = 3
    suites: tuple[str, ...] = DEFAULT_SUITES + ("control",)
    pair_mode: str = "all"
    seed: int = 42
    words: int = 100_000
    word_length: int = 24
    out: str | None = None
    timings: bool = False

    def validate(self) -> None:
        unknown = set(self.suites) - set(SUITES)
        if unknown:
            raise ConfigError(f"unknown suites: {', '.join(sorted(unknown))}")
        if not self.suites:
            raise ConfigError("no suites selected")
        if self.pair_mode not in ("all", "sample"):
            raise ConfigError(f"pair mode must be 'all' or 'sample', got {self.pair_mode!r}")
        if self.words < 0 or self.word_length < 1:
            raise ConfigError("word count must be >= 0 and word length >= 1")
        validate(self.q, self.m, control="control" in self.suites)

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "m": self.m,
            "suites": list(self.suites),
            "pair_mode": self.pair_mode,
            "seed": self.seed,
            "words": self.words,
            "word_length": self.word_length,
        }


@dataclass
class Record:
    name: str
    suite: str
    claim: str
    params: dict
    scanned: int
    expected: str
    observed: str
    details: dict
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return self.expected == self.observed

    @property
    def verdict(self) -> str:
        if self.expected == "fail":
            return "expected-fail" if self.ok else "unexpected-pass"
        return "pass" if self.ok else "fail"

    def to_json(self, timings: bool) -> dict:
        out = {
            "name": self.name,
            "suite": self.suite,
            "claim": self.claim,
            "params": self.params,
            "scanned": self.scanned,
            "expected": self.expected,
            "observed": self.observed,
            "verdict": self.verdict,
            "details": self.details,
        }
        if timings:
            out["elapsed"] = round(self.elapsed, 3)
        return out

    def summary(self) -> str:
        return f"{self.verdict:>15}  {self.suite:<14} {self.name}  (scanned {self.scanned})"


@dataclass
class Report:
    config: RunConfig
    records: list[Record] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return bool(self.records) and all(r.ok for r in self.records)

    def counts(self) -> dict[str, int]:
        return dict(sorted(Counter(r.verdict for r in self.records).items()))

    def to_json(self) -> dict:
        return {
            "config": self.config.to_json(),
            "checks": [r.to_json(self.config.timings) for r in self.records],
            "counts": self.counts(),
            "notes": [SEARCH_SPACE_NOTE],
            "verdict": "pass" if self.passed else "fail",
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True, default=_jsonable) + "\n"


def _jsonable(obj):
    if hasattr(obj, "item"):
        return obj.item()
    if isinstance(obj, (set, frozenset, tuple)):
        return list(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def run(config: RunConfig, progress=None) -> Report:
    """Run the requested suites in dependency order and collect the records."""
    config.validate()
    report = Report(config)
    wanted = [s for s in SUITES if s in config.suites]
    main_ctx = None
    control_ctx = None
    for suite in wanted:
        for check in (c for c in CHECKS if c.suite == suite):
            if suite == "control":
                if control_ctx is None:
                    q, m = (config.q, config.m) if config.q == 3 else CONTROL_CONFIG
                    control_ctx = Context(q, m, config.pair_mode, config.seed, config.words, config.word_length, True)
                ctx = control_ctx
            else:
                if main_ctx is None:
                    main_ctx = Context(
                        config.q, config.m, config.pair_mode, config.seed, config.words, config.word_length,
                        config.q == 3,
                    )
                ctx = main_ctx
            start = time.perf_counter()
            ok, params, scanned, details = check.run(ctx)
            rec = Record(
                name=check.name,
                suite=suite,
                claim=check.claim,
                params={"q": ctx.q, "m": ctx.m, **params},
                scanned=int(scanned),
                expected="pass" if check.expected else "fail",
                observed="pass" if ok else "fail",
                details=details,
                elapsed=time.perf_counter() - start,
            )
            report.records.append(rec)
            if progress is not None:
                progress(rec)
    return report


# -- subcommands ---------------------------------------------------------------


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, default=_jsonable) + "\n"


def _cmd_verify(args) -> int:
    suites = tuple(args.suites.split(",")) if args.suites else RunConfig.suites
    config = RunConfig(
        q=args.q,
        m=args.m,
        suites=suites,
        pair_mode="sample" if args.pairs == "sampled" else args.pairs,
        seed=args.seed,
        words=args.words,
        word_length=args.word_length,
        out=args.out,
        timings=args.timings,
    )

    def progress(rec: Record) -> None:
        if not args.quiet:
            print(rec.summary(), file=sys.stderr)

    report = run(config, progress)
    _emit(report.dumps(), args.out)
    if not args.quiet:
        print(f"overall: {'pass' if report.passed else 'fail'} {report.counts()}", file=sys.stderr)
    return 0 if report.passed else 1


def _cmd_fiber(args) -> int:
    setup = Counterexample(args.q, args.m)
    rep = Cohomology(setup).fiber_demo(downstairs=args.downstairs)
    elapsed = rep.pop("_elapsed")
    if args.timings:
        rep["elapsed"] = round(elapsed, 3)
    _emit(_dump(rep), args.out)
    return 0 if rep["verdict"] else 1


def _cmd_structure(args) -> int:
    basis = build_basis()
    _emit(_dump({"jacobi_violations": basis.jacobi_violations(), "entries": basis.to_json()}), args.out)
    return 0


def _cmd_field(args) -> int:
    ctx = field_make(args.m)
    orders = Counter(ctx.element_order(a) for a in range(1, ctx.order))
    primitive = next(a for a in range(1, ctx.order) if ctx.element_order(a) == ctx.order - 1)
    out = {
        "m": ctx.m,
        "order": ctx.order,
        "modulus": f"{ctx.modulus:#x}",
        "modulus_coefficients": list(ctx.coefficients),
        "least_primitive": ctx.to_hex(primitive),
        "order_histogram": {str(k): v for k, v in sorted(orders.items())},
        "sqrt_table": [ctx.to_hex(ctx.sqrt(a)) for a in range(ctx.order)] if ctx.m <= 8 else None,
    }
    if args.q is not None:
        if (ctx.order - 1) % args.q:
            raise ConfigError(f"{args.q} does not divide 2^{ctx.m} - 1")
        out["element_of_order_q"] = ctx.to_hex(ctx.element_of_order(args.q))
    _emit(_dump(out), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="g2kuls", description="Finite-field checks for a family of G2 representations.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, need_q=True):
        p.add_argument("--q", type=int, default=7 if need_q else None)
        p.add_argument("--m", type=int, default=3)
        p.add_argument("--out", default=None, help="write JSON here instead of stdout")

    p = sub.add_parser("verify", help="run the check suites and emit a JSON report")
    common(p)
    p.add_argument("--suites", default=None, help=f"comma separated subset of {','.join(SUITES)}")
    p.add_argument("--pairs", choices=("all", "sample", "sampled"), default="all")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--words", type=int, default=100_000, help="random words per pair test")
    p.add_argument("--word-length", type=int, default=24)
    p.add_argument("--timings", action="store_true", help="include wall times (breaks byte-identical reports)")
    p.add_argument("--quiet", action="store_true")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("fiber", help="distinct classes upstairs that merge after restriction")
    common(p)
    p.add_argument("--downstairs", choices=("search", "witness"), default=None)
    p.add_argument("--timings", action="store_true")
    p.set_defaults(func=_cmd_fiber)

    p = sub.add_parser("structure", help="dump the Chevalley structure constants")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_structure)

    p = sub.add_parser("field", help="field diagnostics for GF(2^m)")
    common(p, need_q=False)
    p.set_defaults(func=_cmd_field)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BoundExceeded as exc:
        print(f"error: enumeration bound exceeded: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
