"""Command-line interface: ``tanglebracket <subcommand> ...``.

Exit codes: 0 success or equivalent, 1 inequivalent or counterexample found,
2 usage or parse error, 3 resource bound exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from typing import Callable

from .braid import BraidParseError, BraidWord, Mode, format_word, parse_word, sign_class
from .bracket import BoundExceeded, BracketVector, closure_bracket, state_sum_link
from .diagram import PlatTangle, close, is_alternating, is_reduced, standard_bottom, writhe
from .invariant import (canonicalize, conway_fraction, equivalent, is_trivial_infinity,
                        search_collisions, vector)
from .laurent import LaurentPoly, unit_power
from .tl import enumerate_matchings, word_matrix

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_BOUND = 3

BOUNDS = {"matrix": 12, "oracle": 20}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    subcommand: str
    word: str = "e"
    mode: Mode = Mode.B4
    bottom: int | None = None
    closure: int | None = None
    method: str = "matrix"
    max_crossings: int | None = None
    out: str | None = None
    format: str = "json"

    def bound(self) -> int:
        cap = BOUNDS[self.method]
        if self.max_crossings is None:
            return cap
        if not 0 <= self.max_crossings <= cap:
            raise UsageError(f"--max-crossings must be between 0 and {cap} for the {self.method} path")
        return self.max_crossings


# -- helpers ---------------------------------------------------------------------

def _terms(p: LaurentPoly) -> list[list[int]]:
    return p.to_terms()


def _plat(text: str, mode: Mode, bottom: int | None) -> PlatTangle:
    w = parse_word(text, mode)
    if mode.n == 2:
        if bottom not in (None, standard_bottom(2)):
            raise UsageError("4-plats use the standard bottom caps; --bottom does not apply")
        return PlatTangle(w)
    b = standard_bottom(3) if bottom is None else bottom
    if not 1 <= b <= len(enumerate_matchings(3)):
        raise UsageError(f"--bottom must be in 1..{len(enumerate_matchings(3))}")
    return PlatTangle(w, b)


def _check_size(w: BraidWord, bound: int) -> None:
    if len(w) > bound:
        raise BoundExceeded(f"word has {len(w)} crossings; the bound is {bound}")


def _closure_index(p: PlatTangle, i: int | None) -> int | None:
    if p.n == 2:
        if i not in (None, standard_bottom(2)):
            raise UsageError("4-plats close with the standard caps only")
        return None
    if i is None:
        raise UsageError("--close is required for 6-plats")
    if not 1 <= i <= len(enumerate_matchings(3)):
        raise UsageError(f"--close must be in 1..{len(enumerate_matchings(3))}")
    return i


def _emit(cfg: RunConfig, payload: dict, rows: list[dict] | None = None) -> None:
    if cfg.format == "csv":
        buf = io.StringIO()
        rows = rows if rows is not None else [payload]
        fields = list(rows[0]) if rows else []
        writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        for r in rows:
            writer.writerow({k: v if isinstance(v, (str, int)) else json.dumps(v) for k, v in r.items()})
        text = buf.getvalue()
    else:
        text = json.dumps(payload) + "\n"
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _vector_json(v: BracketVector) -> list[list[list[int]]]:
    return v.to_json()


def _link_bracket(p: PlatTangle, i: int | None, method: str, bound: int) -> tuple[LaurentPoly, int]:
    d = close(p, i)
    if method == "oracle":
        br = state_sum_link(d, bound)
    else:
        br = closure_bracket(vector(p), i if i is not None else standard_bottom(2))
    return br, writhe(d)


# -- subcommands -------------------------------------------------------------------

def run_bracket(cfg: RunConfig) -> int:
    bound = cfg.bound()
    p = _plat(cfg.word, cfg.mode, cfg.bottom)
    _check_size(p.word, bound)
    base = {"word": format_word(p.word), "mode": cfg.mode.value, "bottom": p.bottom, "method": cfg.method}
    if cfg.closure is not None:
        i = _closure_index(p, cfg.closure)
        br, _ = _link_bracket(p, i, cfg.method, bound)
        payload = dict(base, closure=cfg.closure, bracket=_terms(br))
        _emit(cfg, payload)
        return EXIT_OK
    v = vector(p, cfg.method)
    payload = dict(base, vector=_vector_json(v))
    rows = [dict(base, entry=k + 1, terms=e.to_terms()) for k, e in enumerate(v)]
    _emit(cfg, payload, rows)
    return EXIT_OK


def run_equiv(cfg: RunConfig, other: str, other_bottom: int | None) -> int:
    bound = cfg.bound()
    p = _plat(cfg.word, cfg.mode, cfg.bottom)
    q = _plat(other, cfg.mode, other_bottom if other_bottom is not None else cfg.bottom)
    _check_size(p.word, bound)
    _check_size(q.word, bound)
    k = equivalent(vector(p, cfg.method), vector(q, cfg.method))
    payload = {"word1": format_word(p.word), "bottom1": p.bottom,
               "word2": format_word(q.word), "bottom2": q.bottom,
               "equivalent": k is not None, "k": k}
    _emit(cfg, payload)
    return EXIT_OK if k is not None else EXIT_NEGATIVE


def run_closure(cfg: RunConfig, emit_pd: bool) -> int:
    bound = cfg.bound()
    p = _plat(cfg.word, cfg.mode, cfg.bottom)
    _check_size(p.word, bound)
    i = _closure_index(p, cfg.closure)
    d = close(p, i)
    if emit_pd:
        text = d.to_pd() + "\n"
        if cfg.out:
            with open(cfg.out, "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return EXIT_OK
    br, w = _link_bracket(p, i, cfg.method, bound)
    x = unit_power(w) * br
    payload = {"word": format_word(p.word), "mode": cfg.mode.value, "bottom": p.bottom,
               "closure": cfg.closure, "crossings": d.n_crossings, "components": d.component_count(),
               "writhe": w, "alternating": is_alternating(d), "reduced": is_reduced(d),
               "bracket": _terms(br), "kauffman": _terms(x), "span": x.span()}
    _emit(cfg, payload)
    return EXIT_OK


def run_classify(cfg: RunConfig) -> int:
    if cfg.mode is not Mode.B4:
        raise UsageError("classify works on b4 words (2-tangles)")
    bound = cfg.bound()
    w = parse_word(cfg.word, cfg.mode)
    _check_size(w, bound)
    v = vector(PlatTangle(w), cfg.method)
    cls = sign_class(w)
    try:
        frac = str(conway_fraction(w))
    except ValueError:
        frac = None
    payload = {"word": format_word(w), "vector": _vector_json(v), "canonical": canonicalize(v).to_json(),
               "trivial_infinity": is_trivial_infinity(v),
               "sign_class": "ambiguous" if cls.ambiguous else cls.kind.value, "fraction": frac}
    _emit(cfg, payload)
    return EXIT_OK


def _spans(p: PlatTangle, v: BracketVector) -> list[int]:
    closures = range(1, len(enumerate_matchings(3)) + 1) if p.n == 3 else [standard_bottom(2)]
    return [closure_bracket(v, i).span() for i in closures]


def run_search(cfg: RunConfig, filter: str) -> int:
    bound = cfg.bound()
    if cfg.max_crossings is None:
        raise UsageError("search needs --max-crossings")
    report = search_collisions(bound, filter, cfg.mode)
    if cfg.format == "csv":
        rows = []
        for cls in report.classes:
            for p in cls.plats:
                v = vector(p)
                rows.append({"word": format_word(p.word), "bottom": p.bottom, "crossings": len(p.word),
                             "canonical": cls.canonical.to_json(), "closure_spans": _spans(p, v)})
        _emit(cfg, {}, rows)
    else:
        _emit(cfg, report.to_json())
    for cls in report.suspects:
        words = "; ".join(f"{format_word(p.word)} @ bottom {p.bottom}" for p in cls.plats)
        print(f"suspect class: {words}", file=sys.stderr)
    return EXIT_NEGATIVE if report.suspects else EXIT_OK


def run_verify(cfg: RunConfig, only: list[int] | None) -> int:
    from . import checks

    selected = {
        1: [checks.check_reference_matrices],
        2: [checks.check_borromean_example],
        3: [checks.check_oracle_equivalence],
        4: [checks.check_regular_isotopy],
        5: [checks.check_single_crossing_closures],
        8: [checks.check_two_tangle_classification],
        9: [checks.check_collisions],
    }
    results = []

    def show(r):
        results.append(r)
        print(r.line(), flush=True)
        for f in r.failures:
            print(f"    {f}", flush=True)

    if only is None:
        checks.run_all(show)
    else:
        for k in sorted(set(only)):
            if k in (6, 7):
                stats = checks.reduced_alternating_sweep()
                show(checks.check_good_closure(stats) if k == 6 else checks.check_murasugi(stats))
            elif k in selected:
                for f in selected[k]:
                    show(f())
            else:
                raise UsageError(f"no check numbered {k}")
    passed = sum(r.passed for r in results)
    print(f"{passed}/{len(results)} checks passed")
    return EXIT_OK if passed == len(results) else EXIT_NEGATIVE


def run_dump_matrix(cfg: RunConfig) -> int:
    bound = cfg.bound()
    w = parse_word(cfg.word, cfg.mode)
    _check_size(w, bound)
    m = word_matrix(w)
    payload = {"word": format_word(w), "mode": cfg.mode.value, "matrix": m.to_json()}
    rows = [{"row": r + 1, "col": c + 1, "terms": m[r, c].to_terms()}
            for r in range(m.size) for c in range(m.size)]
    _emit(cfg, payload, rows)
    return EXIT_OK


# -- argument parsing ------------------------------------------------------------------

def _mode(text: str) -> Mode:
    try:
        return Mode.parse(text)
    except BraidParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="tanglebracket",
        description="Kauffman bracket vectors of rational 2- and 3-tangles given as plat braid words.",
        epilog="b4 words use s1, s2 for the twists of points (2,3) and (3,4); "
               "b6 uses s1..s5 on points (i,i+1); b6x adds s6 twisting points (6,1).")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, word: bool = True, bottom: bool = True) -> None:
        if word:
            p.add_argument("--word", required=True, help='braid word such as "s1 s2^-1 s1"; "e" is the empty word')
        p.add_argument("--mode", type=_mode, default=Mode.B4, help="b4, b6 or b6x (default b4)")
        if bottom:
            p.add_argument("--bottom", type=int, help="bottom cap matching 1..5 for 6-plats (default 3)")
        p.add_argument("--method", choices=["matrix", "oracle"], default="matrix",
                       help="transfer matrices or the state-sum oracle")
        p.add_argument("--oracle", action="store_true", help="shorthand for --method oracle")
        p.add_argument("--max-crossings", type=int,
                       help="crossing bound (at most 12 for matrix, 20 for oracle)")
        p.add_argument("--format", choices=["json", "csv"], default="json")
        p.add_argument("--out", help="write output to this file instead of stdout")

    p = sub.add_parser("bracket", help="bracket vector of a plat tangle, or of one closure")
    common(p)
    p.add_argument("--close", type=int, help="closure index; prints the link bracket instead")

    p = sub.add_parser("equiv", help="decide equivalence of two vectors up to (-a^-3)^k")
    common(p)
    p.add_argument("--word2", required=True, help="second braid word")
    p.add_argument("--bottom2", type=int, help="bottom for the second word (default: --bottom)")

    p = sub.add_parser("closure", help="closure diagram, bracket, X polynomial and span")
    common(p)
    p.add_argument("--close", type=int, help="closure index 1..5 (6-plats only)")
    p.add_argument("--emit-pd", action="store_true", help="print the closure as PD text")

    p = sub.add_parser("classify", help="triviality and Conway fraction of a b4 word")
    common(p, bottom=False)

    p = sub.add_parser("search", help="collision search over enumerated plats")
    common(p, word=False, bottom=False)
    p.add_argument("--filter", choices=["reduced-alternating", "all"], default="reduced-alternating")
    p.set_defaults(mode=Mode.B6X)

    p = sub.add_parser("verify", help="run the acceptance checks")
    p.add_argument("--only", type=int, action="append", help="run only this check (repeatable)")

    p = sub.add_parser("dump-matrix", help="word matrix as nested term lists")
    common(p, bottom=False)
    return ap


def _config(args: argparse.Namespace) -> RunConfig:
    method = "oracle" if getattr(args, "oracle", False) else getattr(args, "method", "matrix")
    return RunConfig(subcommand=args.command, word=getattr(args, "word", "e"), mode=getattr(args, "mode", Mode.B4),
                     bottom=getattr(args, "bottom", None), closure=getattr(args, "close", None), method=method,
                     max_crossings=getattr(args, "max_crossings", None), out=getattr(args, "out", None),
                     format=getattr(args, "format", "json"))


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    cfg = _config(args)
    handlers: dict[str, Callable[[], int]] = {
        "bracket": lambda: run_bracket(cfg),
        "equiv": lambda: run_equiv(cfg, args.word2, args.bottom2),
        "closure": lambda: run_closure(cfg, args.emit_pd),
        "classify": lambda: run_classify(cfg),
        "search": lambda: run_search(cfg, args.filter),
        "verify": lambda: run_verify(cfg, args.only),
        "dump-matrix": lambda: run_dump_matrix(cfg),
    }
    try:
        return handlers[args.command]()
    except (BraidParseError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BoundExceeded as exc:
        print(f"bound exceeded: {exc}", file=sys.stderr)
        return EXIT_BOUND


if __name__ == "__main__":
    sys.exit(main())
