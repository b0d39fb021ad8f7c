"""Command-line surface.

Exit codes: 0 success, 2 verdict Undetermined (needs more inputs, not an
error), 1 engine error, 64 usage error.  With --json the only bytes on
stdout are one JSON document.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import auxprimes
from .errors import SupercuspError
from .hilbert import hilbert_symbol
from .lmfdb import LmfdbClient
from .newform import NewformData, load_fixture, local_decompose, is_supercuspidal, places_above
from .verdict import ErrorTermData, InertialDescriptor, Status, companion_slope, decide

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_UNDETERMINED = 2
EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _build_parser() -> _Parser:
    parser = _Parser(prog="supercusp", description="Local Brauer-class verdicts at supercuspidal primes")
    parser.add_argument("--fixture-dir", default="fixtures", help="directory resolved against bare fixture names")
    parser.add_argument("--cache-dir", default=None, help="LMFDB cache directory")
    parser.add_argument("--json", action="store_true", help="emit a single JSON document on stdout")
    parser.add_argument("--bound", type=int, default=None, help="sieve bound for auxiliary primes")
    sub = parser.add_subparsers(dest="command", required=True)

    p_fetch = sub.add_parser("fetch", help="fetch a newform from LMFDB into the cache")
    p_fetch.add_argument("label")

    p_classify = sub.add_parser("classify", help="list the supercuspidal primes of a fixture")
    p_classify.add_argument("fixture")

    p_aux = sub.add_parser("aux", help="find an auxiliary prime")
    p_aux.add_argument("fixture")
    p_aux.add_argument("--p", type=int, required=True)
    p_aux.add_argument("--kind", choices=["prime", "dprime", "tprime", "dagger"], default="prime")

    p_slope = sub.add_parser("slope", help="companion adjoint slope m_v at each place above p")
    p_slope.add_argument("fixture")
    p_slope.add_argument("--p", type=int, required=True)

    p_symbol = sub.add_parser("symbol", help="Hilbert symbol (a, b) at a place of Q")
    p_symbol.add_argument("a")
    p_symbol.add_argument("b")
    p_symbol.add_argument("--p", required=True, help="a prime, or 'oo' for the real place")

    p_verdict = sub.add_parser("verdict", help="ramified / matrix-algebra verdict at p")
    p_verdict.add_argument("fixture")
    p_verdict.add_argument("--p", type=int, required=True)
    p_verdict.add_argument("--desc", required=True, help="inertial descriptor JSON file")
    p_verdict.add_argument("--err", default=None, help="error-term data JSON file")

    return parser


def _resolve_fixture(name: str, fixture_dir: str) -> NewformData:
    path = Path(name)
    if not path.exists():
        candidates = [Path(fixture_dir) / name, Path(fixture_dir) / f"{name}.json"]
        path = next((c for c in candidates if c.exists()), path)
    return load_fixture(path)


def _emit(args, doc: dict, human_lines: list[str]) -> None:
    if args.json:
        print(json.dumps(doc, sort_keys=True))
    else:
        for line in human_lines:
            print(line)


def _cmd_fetch(args) -> int:
    client = LmfdbClient(cache_dir=args.cache_dir)
    form = client.fetch_newform(args.label)
    doc = {"label": form.label, "level": form.level, "weight": form.weight, "coeff_bound": form.coeff_bound}
    _emit(args, doc, [f"{form.label}: N={form.level}, k={form.weight}, coefficients to {form.coeff_bound}"])
    return EXIT_OK


def _cmd_classify(args) -> int:
    form = _resolve_fixture(args.fixture, args.fixture_dir)
    rows = []
    n = form.level
    p = 2
    primes = []
    while n > 1:
        while n % p == 0:
            n //= p
            if p not in primes:
                primes.append(p)
        p += 1
    for p in primes:
        local = local_decompose(form, p)
        try:
            sc = is_supercuspidal(local)
        except SupercuspError:
            sc = None  # a_p outside the stored range: cannot classify
        rows.append(
            {
                "p": p,
                "N_p": local.N_p,
                "C_p": local.C_p,
                "N_prime": local.N_prime,
                "supercuspidal": sc,
            }
        )
    lines = [f"{form.label}: level {form.level} = " + " * ".join(f"{r['p']}^{r['N_p']}" for r in rows)]
    for r in rows:
        if r["supercuspidal"] is None:
            tag = "unclassifiable (a_p not stored)"
        else:
            tag = "supercuspidal" if r["supercuspidal"] else "not supercuspidal"
        lines.append(f"  p={r['p']}: {tag} (N_p={r['N_p']}, C_p={r['C_p']})")
    _emit(args, {"label": form.label, "primes": rows}, lines)
    return EXIT_OK


def _cmd_aux(args) -> int:
    form = _resolve_fixture(args.fixture, args.fixture_dir)
    local = local_decompose(form, args.p)
    if args.kind == "prime":
        q = auxprimes.find_p_prime(form, local, args.bound)
    elif args.kind == "dprime":
        q = auxprimes.find_p_dprime(form, local, args.bound)
    elif args.kind == "tprime":
        q = auxprimes.find_p_tprime(form, local, args.bound)
    else:
        q = auxprimes.find_p_dagger(form, args.bound)
    _emit(args, {"kind": args.kind, "p": args.p, "prime": q}, [str(q)])
    return EXIT_OK


def _cmd_slope(args) -> int:
    form = _resolve_fixture(args.fixture, args.fixture_dir)
    local = local_decompose(form, args.p)
    p_prime = auxprimes.find_p_prime(form, local, args.bound)
    out = []
    lines = []
    for place in places_above(form, args.p):
        m_v = companion_slope(form, place, p_prime)
        out.append({"place": {"p": place.p, "e_v": place.e_v, "f_v": place.f_v, "index": place.index}, "p_prime": p_prime, "m_v": m_v})
        lines.append(f"v | {args.p} (e={place.e_v}, f={place.f_v}): m_v = {m_v} (p' = {p_prime})")
    _emit(args, {"label": form.label, "slopes": out}, lines)
    return EXIT_OK


def _cmd_symbol(args) -> int:
    a, b = Fraction(args.a), Fraction(args.b)
    p = None if args.p in ("oo", "inf", "infinity") else int(args.p)
    value = hilbert_symbol(a, b, p)
    _emit(args, {"a": str(a), "b": str(b), "p": args.p, "symbol": value}, [f"{value:+d}".replace("+", "") if value > 0 else str(value)])
    return EXIT_OK


def _cmd_verdict(args) -> int:
    form = _resolve_fixture(args.fixture, args.fixture_dir)
    desc = InertialDescriptor.from_dict(json.loads(Path(args.desc).read_text()))
    err = ErrorTermData.from_dict(json.loads(Path(args.err).read_text())) if args.err else ErrorTermData()
    verdicts = []
    lines = []
    undetermined = False
    for place in places_above(form, args.p):
        v = decide(form, args.p, place, desc, err, bound=args.bound)
        verdicts.append(v.to_json())
        if v.status is Status.UNDETERMINED:
            undetermined = True
            lines.append(
                f"v | {args.p}: Undetermined; missing {', '.join(v.missing_inputs)}; residual {v.residual}"
            )
        else:
            extra = f", m_v={v.m_v}" if v.m_v is not None else ""
            lines.append(f"v | {args.p}: {v.status.value} (Thm: {v.theorem}{extra})")
    _emit(args, {"label": form.label, "p": args.p, "verdicts": verdicts}, lines)
    return EXIT_UNDETERMINED if undetermined else EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else EXIT_USAGE
    handlers = {
        "fetch": _cmd_fetch,
        "classify": _cmd_classify,
        "aux": _cmd_aux,
        "slope": _cmd_slope,
        "symbol": _cmd_symbol,
        "verdict": _cmd_verdict,
    }
    try:
        return handlers[args.command](args)
    except SupercuspError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
