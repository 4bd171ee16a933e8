"""Command-line front end.

    sl2aut eval "4*e*f + h^2" --side P --lambda 1
    sl2aut normalize "delta[x^2+3]" --side P --lambda 1
    sl2aut run script.txt --side U --lambda 0

Scripts hold one command per line.  ``let NAME = EXPR`` binds an element and
``word NAME = WORD`` binds a word; names cannot be rebound.
"""

from __future__ import annotations

import argparse
import json
import shlex
import sys
from typing import Dict, List, Optional, Tuple

from . import parsing
from .automorphisms import (
    SideMismatch,
    SingularMatrix,
    apply,
    verify_endomorphism,
)
from .enveloping import EnvelopingAlgebra, symmetrize
from .normal_form import (
    NotAnAutomorphism,
    ShapeMismatch,
    map_to_U,
    multidegree,
    normalize_word,
    recognize_triple,
    word_equal,
)
from .parsing import ParseError
from .poisson import AmbientMismatch, PoissonAlgebra
from .scalar import Scalar

SIDES = ("P", "U", "freeP", "freeU")


class CliError(Exception):
    def __init__(self, category: str, message: str):
        super().__init__(message)
        self.category = category


def _categorize(exc: Exception) -> Tuple[str, str]:
    if isinstance(exc, CliError):
        return exc.category, str(exc)
    table = [
        (ParseError, "parse"),
        (NotAnAutomorphism, "not-an-automorphism"),
        (ShapeMismatch, "shape"),
        (SideMismatch, "side"),
        (AmbientMismatch, "ambient"),
        (SingularMatrix, "singular-matrix"),
        (ZeroDivisionError, "division-by-zero"),
        (ValueError, "value"),
    ]
    for cls, name in table:
        if isinstance(exc, cls):
            return name, str(exc)
    return "internal", f"{type(exc).__name__}: {exc}"


class Session:
    def __init__(self, side: str, lam: Optional[Scalar]):
        if side not in SIDES:
            raise CliError("usage", f"unknown side {side!r}")
        if side in ("P", "U") and lam is None:
            raise CliError("usage", f"--lambda is required on side {side}")
        self.side = side
        self.lam = lam
        if side == "P":
            self.algebra = PoissonAlgebra(lam)
        elif side == "U":
            self.algebra = EnvelopingAlgebra(lam)
        elif side == "freeP":
            self.algebra = PoissonAlgebra(None)
        else:
            self.algebra = EnvelopingAlgebra(None)
        self.bindings: Dict[str, object] = {}

    # parsing helpers
    def element(self, text: str):
        return parsing.parse_expression(text, self.algebra, self._elements())

    def word(self, text: str):
        self._require_quotient()
        return parsing.parse_word(text, self.algebra, self._words())

    def triple(self, text: str):
        self._require_quotient()
        return parsing.parse_triple(text, self.algebra, self._elements())

    def _elements(self):
        return {k: v for k, v in self.bindings.items() if not hasattr(v, "factors")}

    def _words(self):
        return {k: v for k, v in self.bindings.items() if hasattr(v, "factors")}

    def _require_quotient(self):
        if self.side not in ("P", "U"):
            raise CliError("side", "automorphisms live on the quotient sides P and U")

    def bind(self, name: str, value):
        if not name.isidentifier() or name.lower() in ("e", "h", "f", "i", "x", "id"):
            raise CliError("usage", f"{name!r} cannot be used as a binding name")
        if name in self.bindings:
            raise CliError("usage", f"{name!r} is already bound")
        self.bindings[name] = value


def _element_result(x):
    return str(x), {"element": parsing.element_to_json(x), "text": str(x)}


def run_command(session: Session, cmd: str, args: List[str]):
    """Execute one command; returns (text, json-able data)."""

    def need(n):
        if len(args) != n:
            raise CliError("usage", f"{cmd} expects {n} argument(s), got {len(args)}")

    if cmd == "eval":
        need(1)
        return _element_result(session.element(args[0]))
    if cmd in ("bracket", "comm"):
        need(2)
        a, b = session.element(args[0]), session.element(args[1])
        if cmd == "bracket":
            if not isinstance(session.algebra, PoissonAlgebra):
                raise CliError("side", "bracket needs a Poisson side (P or freeP)")
            return _element_result(a.bracket(b))
        if not isinstance(session.algebra, EnvelopingAlgebra):
            raise CliError("side", "comm needs an enveloping side (U or freeU)")
        return _element_result(a.commutator(b))
    if cmd == "symmetrize":
        need(1)
        free = PoissonAlgebra(None)
        a = parsing.parse_expression(args[0], free)
        return _element_result(symmetrize(a))
    if cmd == "compose":
        need(1)
        t = session.word(args[0]).to_triple()
        return str(t), parsing.triple_to_json(t)
    if cmd == "apply":
        need(2)
        t = session.word(args[0]).to_triple()
        return _element_result(apply(t, session.element(args[1])))
    if cmd == "verify":
        need(1)
        ok = verify_endomorphism(session.triple(args[0]))
        return ("true" if ok else "false"), ok
    if cmd == "normalize":
        need(1)
        cf = normalize_word(session.word(args[0]))
        return str(cf), parsing.canonical_to_json(cf)
    if cmd == "recognize":
        need(1)
        cf = recognize_triple(session.triple(args[0]))
        return str(cf), parsing.canonical_to_json(cf)
    if cmd == "mdeg":
        need(1)
        if parsing.looks_like_triple(args[0]):
            t = session.triple(args[0])
        else:
            t = session.word(args[0]).to_triple()
        md = multidegree(t)
        return "(" + ",".join(str(d) for d in md) + ")", list(md)
    if cmd == "map-u":
        need(1)
        if session.side != "P":
            raise CliError("side", "map-u needs --side P")
        w = map_to_U(session.word(args[0]))
        return str(w), parsing.word_to_json(w)
    if cmd == "equal":
        need(2)
        same = word_equal(session.word(args[0]), session.word(args[1]))
        return ("true" if same else "false"), same
    raise CliError("usage", f"unknown command {cmd!r}")


COMMANDS = {
    "eval": ["EXPR"],
    "bracket": ["A", "B"],
    "comm": ["A", "B"],
    "symmetrize": ["EXPR"],
    "compose": ["WORD"],
    "apply": ["WORD", "EXPR"],
    "verify": ["TRIPLE"],
    "normalize": ["WORD"],
    "recognize": ["TRIPLE"],
    "mdeg": ["WORD_OR_TRIPLE"],
    "map-u": ["WORD"],
    "equal": ["WORD1", "WORD2"],
}


def _add_globals(p: argparse.ArgumentParser, suppress: bool):
    default = argparse.SUPPRESS if suppress else None
    p.add_argument("--side", choices=SIDES, default=argparse.SUPPRESS if suppress else "P")
    p.add_argument("--lambda", dest="lam", metavar="SCALAR", default=default)
    p.add_argument("--json", action="store_true", default=argparse.SUPPRESS if suppress else False)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sl2aut",
        description="Exact computations in P_lambda, U_lambda and their automorphism groups.",
    )
    _add_globals(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, metas in COMMANDS.items():
        p = sub.add_parser(name)
        for m in metas:
            p.add_argument(m.lower(), metavar=m)
        _add_globals(p, suppress=True)
    p = sub.add_parser("run", help="run a script from a file or stdin")
    p.add_argument("script", nargs="?", default="-")
    _add_globals(p, suppress=True)
    return parser


def _emit(as_json: bool, ok: bool, text: str, data=None, category: Optional[str] = None, out=None):
    out = out or sys.stdout
    if as_json:
        if ok:
            payload = {"ok": True, "result": data, "text": text}
        else:
            payload = {"ok": False, "error": {"category": category, "message": text}}
        print(json.dumps(payload), file=out)
    elif ok:
        print(text, file=out)
    else:
        print(f"error [{category}]: {text}", file=sys.stderr)


def _unquote(s: str) -> str:
    if len(s) >= 2 and s[0] == s[-1] and s[0] in "'\"":
        return s[1:-1]
    return s


def run_script(session: Session, lines, as_json: bool) -> int:
    status = 0
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            head, _, rest = line.partition(" ")
            if head in ("let", "word"):
                name, eq, body = rest.partition("=")
                if not eq:
                    raise CliError("usage", f"line {lineno}: expected '{head} NAME = ...'")
                name = name.strip()
                value = session.element(body.strip()) if head == "let" else session.word(body.strip())
                session.bind(name, value)
                continue
            if len(COMMANDS.get(head, ())) == 1:
                # one-argument commands take the rest of the line verbatim
                args = [_unquote(rest.strip())]
            else:
                parts = shlex.split(line)
                head, args = parts[0], parts[1:]
            text, data = run_command(session, head, args)
            _emit(as_json, True, text, data)
        except Exception as exc:  # report and keep going
            category, message = _categorize(exc)
            _emit(as_json, False, f"line {lineno}: {message}", category=category)
            status = 1
    return status


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    as_json = bool(getattr(ns, "json", False))
    try:
        lam = None
        if ns.lam is not None:
            try:
                lam = parsing.parse_scalar_expr(ns.lam)
            except ParseError as exc:
                raise CliError("usage", f"bad --lambda value: {exc}") from None
        session = Session(ns.side, lam)
        if ns.command == "run":
            if ns.script == "-":
                return run_script(session, sys.stdin, as_json)
            with open(ns.script) as fh:
                return run_script(session, fh, as_json)
        args = [getattr(ns, m.lower()) for m in COMMANDS[ns.command]]
        text, data = run_command(session, ns.command, args)
    except Exception as exc:
        category, message = _categorize(exc)
        _emit(as_json, False, message, category=category)
        return 1
    _emit(as_json, True, text, data)
    return 0


if __name__ == "__main__":
    sys.exit(main())
