"""Command-line surface: `kh` with compute/ss/probe/invariance/tqft-check/
grading subcommands.

Exit codes: 0 success, 1 internal invariant violation, 2 parse/IO/usage
error, 3 size cap exceeded, 4 invariance mismatch.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import random
import sys
import tempfile
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import __version__
from .diagram import (
    ParseError,
    PlanarDiagram,
    StructureError,
    is_alternating,
    load_corpus,
    parse_pd,
    render,
)
from .filtered import DEFAULT_GENERATOR_CAP, SizeCapError, build, verify_d_squared
from .spectral import SpectralResult, basepoint_sweep, compare_pages, compute
from .tqft import Generator, GeneratorWord, check_triangle, grading_shift_word

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_USAGE = 2
EXIT_SIZE = 3
EXIT_MISMATCH = 4


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_USAGE):
        super().__init__(message)
        self.code = code


# ---------------------------------------------------------------- run records

def diagram_hash(d: PlanarDiagram) -> str:
    return hashlib.sha256(render(d).encode()).hexdigest()[:16]


def run_record(d: PlanarDiagram, reduced: bool, result: SpectralResult,
               name: str = "", elapsed: float = 0.0) -> dict:
    pages = {
        str(pt.r): {f"{p},{q}": dim for (p, q), dim in sorted(pt.dims.items())}
        for pt in result.pages
    }
    return {
        "diagram": {
            "name": name,
            "pd": render(d),
            "crossings": len(d.crossings),
            "writhe": d.writhe,
            "basepoint": d.basepoint,
            "hash": diagram_hash(d),
        },
        "flavor": "reduced" if reduced else "unreduced",
        "pages": pages,
        "collapse_page": result.collapse_page,
        "total_homology": {str(q): dim
                           for q, dim in sorted(result.total_homology.items())},
        "meta": {"version": __version__, "seconds": round(elapsed, 3)},
    }


# --------------------------------------------------------------------- cache

def cache_dir_from(args) -> Path | None:
    if getattr(args, "cache", None):
        return Path(args.cache)
    env = os.environ.get("KH_CACHE_DIR")
    return Path(env) if env else None


def cache_key(d: PlanarDiagram, reduced: bool) -> str:
    flavor = "reduced" if reduced else "unreduced"
    payload = f"{render(d)}|{flavor}|{__version__}"
    return hashlib.sha256(payload.encode()).hexdigest()


def cache_store(record: dict, directory: Path, d: PlanarDiagram,
                reduced: bool) -> Path:
    directory.mkdir(parents=True, exist_ok=True)
    body = json.dumps(record, sort_keys=True)
    wrapped = json.dumps({
        "checksum": hashlib.sha256(body.encode()).hexdigest(),
        "record": record,
    }, sort_keys=True, indent=1)
    path = directory / f"{cache_key(d, reduced)}.json"
    fd, tmp = tempfile.mkstemp(dir=str(directory), suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(wrapped)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def cache_load(directory: Path, d: PlanarDiagram, reduced: bool) -> dict | None:
    path = directory / f"{cache_key(d, reduced)}.json"
    if not path.exists():
        return None
    try:
        wrapped = json.loads(path.read_text())
        body = json.dumps(wrapped["record"], sort_keys=True)
        if hashlib.sha256(body.encode()).hexdigest() != wrapped["checksum"]:
            raise ValueError("checksum mismatch")
        return wrapped["record"]
    except (ValueError, KeyError, TypeError) as exc:
        print(f"warning: ignoring corrupt cache entry {path.name}: {exc}",
              file=sys.stderr)
        return None


# -------------------------------------------------------------------- inputs

def read_pd_argument(text: str) -> PlanarDiagram:
    if text.startswith("@"):
        try:
            text = Path(text[1:]).read_text()
        except OSError as exc:
            raise CliError(f"cannot read PD file: {exc}")
    try:
        return parse_pd(text)
    except (ParseError, StructureError) as exc:
        raise CliError(f"invalid diagram: {exc}")


def _computed(d: PlanarDiagram, args, name: str = "") -> dict:
    cdir = cache_dir_from(args)
    reduced = args.reduced
    if cdir is not None:
        hit = cache_load(cdir, d, reduced)
        if hit is not None:
            return hit
    t0 = time.perf_counter()
    try:
        c = build(d, reduced=reduced, max_generators=args.max_generators)
    except SizeCapError as exc:
        raise CliError(str(exc), EXIT_SIZE)
    if not verify_d_squared(c):
        raise CliError("internal error: differential does not square to zero",
                       EXIT_INTERNAL)
    result = compute(c)
    record = run_record(d, reduced, result, name, time.perf_counter() - t0)
    if cdir is not None:
        cache_store(record, cdir, d, reduced)
    return record


# --------------------------------------------------------------- subcommands

def cmd_compute(args) -> int:
    d = read_pd_argument(args.pd)
    if args.basepoint is not None:
        d = d.with_basepoint(args.basepoint)
    record = _computed(d, args)
    if args.max_page is not None:
        record["pages"] = {r: v for r, v in record["pages"].items()
                           if int(r) <= args.max_page}
    if args.output == "csv":
        out = io.StringIO()
        w = csv.writer(out)
        w.writerow(["page", "p", "q", "dim"])
        for r, table in sorted(record["pages"].items(), key=lambda kv: int(kv[0])):
            for key, dim in table.items():
                p, q = key.split(",")
                w.writerow([r, p, q, dim])
        sys.stdout.write(out.getvalue())
    else:
        print(json.dumps(record, sort_keys=True, indent=1))
    return EXIT_OK


def _probe_row(item, args):
    name, d = item
    record = _computed(d, args, name)
    note = "NONCOLLAPSE" if record["collapse_page"] > 2 else ""
    return [name, record["flavor"], str(record["collapse_page"]),
            "yes" if is_alternating(d) else "no", note]


def cmd_probe(args) -> int:
    try:
        corpus = load_corpus(args.corpus)
    except (OSError, ParseError, StructureError, ValueError) as exc:
        raise CliError(f"cannot load corpus: {exc}")
    rows = []
    if corpus:
        with ThreadPoolExecutor(max_workers=args.threads) as pool:
            rows = list(pool.map(lambda it: _probe_row(it, args), corpus))
    w = csv.writer(sys.stdout)
    w.writerow(["name", "flavor", "collapse_page", "alternating", "flag"])
    for row in rows:
        w.writerow(row)
    return EXIT_OK


def cmd_invariance(args) -> int:
    a = read_pd_argument(args.pd)
    b = read_pd_argument(args.pd2)
    ra = compute(build(a, reduced=args.reduced, max_generators=args.max_generators))
    rb = compute(build(b, reduced=args.reduced, max_generators=args.max_generators))
    verdict = compare_pages(ra, rb)
    if verdict.equal:
        print("equal")
        return EXIT_OK
    print(f"mismatch: {verdict.detail}", file=sys.stderr)
    return EXIT_MISMATCH


def cmd_sweep(args) -> int:
    d = read_pd_argument(args.pd)
    verdict = basepoint_sweep(d)
    if verdict.equal:
        print("equal")
        return EXIT_OK
    print(f"mismatch: {verdict.detail}", file=sys.stderr)
    return EXIT_MISMATCH


def random_word(rng: random.Random, max_len: int = 6,
                max_strands: int = 5) -> GeneratorWord:
    """A composable word of elementary generators on small unlinks."""
    n = rng.randint(1, max_strands)
    gens: list[Generator] = []
    for _ in range(rng.randint(1, max_len)):
        options = []
        if n + 1 <= max_strands + 1:
            options.append(("V", n, None))
            options.append(("Birth", n, None))
        if n >= 2:
            options.append(("Lam", n, None))
            options.append(("Death", n, None))
            if n + 1 <= max_strands + 1:
                options.append(("IV", n, None))
        if n >= 3:
            options.append(("ILam", n, None))
            options.append(("X", n, rng.randint(2, n - 1)))
        kind, size, i = rng.choice(options)
        gens.append(Generator(kind, size, i))
        if kind in ("V", "Birth", "IV"):
            n += 1
        elif kind in ("Lam", "ILam", "Death"):
            n -= 1
    return GeneratorWord(tuple(gens))


def cmd_tqft_check(args) -> int:
    if args.count < 1:
        raise CliError("--count must be at least 1")
    rng = random.Random(args.seed)
    failures = []
    for k in range(args.count):
        word = random_word(rng)
        if args.corrupt and k == args.count // 2:
            report = check_triangle(word, corrupt=True)
        else:
            report = check_triangle(word)
        if not report.ok:
            failures.append((word, report.detail))
    print(f"checked {args.count} words, {len(failures)} failures")
    for word, detail in failures[:5]:
        kinds = " ".join(f"{g.kind}{g.n}" for g in word.generators)
        print(f"  FAIL [{kinds}]: {detail}")
    return EXIT_OK if not failures else EXIT_INTERNAL


def cmd_grading(args) -> int:
    try:
        shift = grading_shift_word(args.kinds)
    except ValueError as exc:
        raise CliError(str(exc))
    print(json.dumps({
        "alexander": str(shift.alexander),
        "maslov": str(shift.maslov),
        "delta": str(shift.delta),
    }, sort_keys=True))
    return EXIT_OK


# ------------------------------------------------------------------- parsing

def _add_common(sub) -> None:
    sub.add_argument("--reduced", dest="reduced", action="store_true",
                     default=True)
    sub.add_argument("--unreduced", dest="reduced", action="store_false")
    sub.add_argument("--basepoint", type=int, default=None, metavar="ARC")
    sub.add_argument("--output", choices=["json", "csv"], default="json")
    sub.add_argument("--cache", default=None, metavar="DIR")
    sub.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--max-generators", type=int,
                     default=DEFAULT_GENERATOR_CAP)


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kh",
        description="Khovanov-type spectral sequences over GF(2)")
    parser.add_argument("--version", action="version", version=__version__)
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("compute", help="homology and all pages of one diagram")
    p.add_argument("--pd", required=True, help="PD text or @file")
    p.add_argument("--max-page", type=int, default=None)
    _add_common(p)
    p.set_defaults(fn=cmd_compute)

    p = subs.add_parser("ss", help="alias of compute")
    p.add_argument("--pd", required=True)
    p.add_argument("--max-page", type=int, default=None)
    _add_common(p)
    p.set_defaults(fn=cmd_compute)

    p = subs.add_parser("probe", help="collapse-page sweep over a corpus")
    p.add_argument("corpus", help="corpus CSV path")
    _add_common(p)
    p.set_defaults(fn=cmd_probe)

    p = subs.add_parser("invariance", help="compare the pages of two diagrams")
    p.add_argument("--pd", required=True)
    p.add_argument("--pd2", required=True)
    _add_common(p)
    p.set_defaults(fn=cmd_invariance)

    p = subs.add_parser("sweep", help="basepoint independence check")
    p.add_argument("--pd", required=True)
    _add_common(p)
    p.set_defaults(fn=cmd_sweep)

    p = subs.add_parser("tqft-check",
                        help="random-word equality of the two TQFTs")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--corrupt", action="store_true",
                   help=argparse.SUPPRESS)  # test hook
    _add_common(p)
    p.set_defaults(fn=cmd_tqft_check)

    p = subs.add_parser("grading", help="grading shift of a cobordism word")
    p.add_argument("kinds", nargs="+",
                   help="elementary kinds, e.g. saddle birth pos-stab")
    _add_common(p)
    p.set_defaults(fn=cmd_grading)

    return parser


def main(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except CliError as exc:
        print(f"kh: {exc}", file=sys.stderr)
        return exc.code
    except ParseError as exc:
        print(f"kh: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
