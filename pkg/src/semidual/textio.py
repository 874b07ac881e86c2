"""Plain-text formats for ideals and fat point schemes, and JSON for modules.

Ideal file::

    # comments start with '#'
    vars: x y z
    x^2 y
    x*z^3

One generator per line; factors are separated by blanks or ``*``.  ``1``
denotes the unit ideal and a file with no generator lines is the zero ideal.

Fat point file, one point per line::

    coords: 1 0 0  mult: 2
    coords: 1 1/2 3  mult: 1

Module file (JSON)::

    {"algebra": "m2.ideal", "prime": 3, "degrees": [0, 1, 1],
     "actions": {"x": [[...]], "y": [[...]]}}

``algebra`` is a path relative to the module file (or an inline ideal text).
"""
from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path

import numpy as np

from .artinian import ArtinianAlgebra, FiniteModule, algebra_from_ideal
from .fat_points import FatPointScheme
from .monomial import MonomialIdeal, PolyContext

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")
_FACTOR = re.compile(r"([A-Za-z_][A-Za-z0-9_']*)(?:\^(-?\d+))?$")


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int, source: str = "<input>"):
        super().__init__(f"{source}:{line}:{column}: {message}")
        self.line, self.column, self.source = line, column, source


def _strip(raw: str) -> str:
    return raw.split("#", 1)[0].rstrip()


def _tokens(text: str):
    """(token, column) pairs, factors split on blanks and '*'; columns are 1-based."""
    for m in re.finditer(r"[^\s*]+", text):
        yield m.group(), m.start() + 1


def parse_ideal(text: str, source: str = "<input>") -> MonomialIdeal:
    ctx = None
    gens = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line.strip():
            continue
        s = line.lstrip()
        offset = len(line) - len(s)
        if s.startswith("vars:"):
            if ctx is not None:
                raise ParseError("duplicate 'vars:' line", lineno, offset + 1, source)
            names = []
            for tok, col in _tokens(s[5:]):
                if not _NAME.fullmatch(tok):
                    raise ParseError(f"invalid variable name {tok!r}", lineno, offset + 5 + col, source)
                if tok in names:
                    raise ParseError(f"duplicate variable {tok!r}", lineno, offset + 5 + col, source)
                names.append(tok)
            if not names:
                raise ParseError("'vars:' needs at least one name", lineno, offset + 1, source)
            ctx = PolyContext(tuple(names))
            continue
        if ctx is None:
            raise ParseError("generators before the 'vars:' line", lineno, offset + 1, source)
        exps = [0] * ctx.n
        for tok, col in _tokens(s):
            col += offset
            if tok == "1":
                continue
            m = _FACTOR.match(tok)
            if not m:
                raise ParseError(f"cannot read factor {tok!r}", lineno, col, source)
            name, power = m.group(1), m.group(2)
            if name not in ctx.names:
                raise ParseError(f"unknown variable {name!r}", lineno, col, source)
            e = 1 if power is None else int(power)
            if e < 0:
                raise ParseError(f"negative exponent in {tok!r}", lineno, col + len(name) + 1, source)
            exps[ctx.names.index(name)] += e
        gens.append(tuple(exps))
    if ctx is None:
        raise ParseError("missing 'vars:' line", 1, 1, source)
    return MonomialIdeal(ctx, tuple(gens))


def format_ideal(I: MonomialIdeal) -> str:
    lines = ["vars: " + " ".join(I.ctx.names)]
    for g in I.gens:
        lines.append(" ".join(f"{v}^{e}" if e > 1 else v for v, e in zip(I.ctx.names, g) if e) or "1")
    return "\n".join(lines) + "\n"


def read_ideal(path: str | Path) -> MonomialIdeal:
    p = Path(path)
    return parse_ideal(p.read_text(), str(p))


_POINT = re.compile(r"coords:\s*(?P<coords>.*?)\s+mult:\s*(?P<mult>\S+)\s*$")


def parse_fat_points(text: str, source: str = "<input>") -> FatPointScheme:
    points, mults = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line.strip():
            continue
        m = _POINT.match(line.strip())
        if not m:
            raise ParseError("expected 'coords: ... mult: m'", lineno, 1, source)
        coords = []
        base = line.index(m.group("coords")) + 1 if m.group("coords") else 1
        for tok, col in _tokens(m.group("coords")):
            try:
                coords.append(Fraction(tok))
            except (ValueError, ZeroDivisionError):
                raise ParseError(f"invalid coordinate {tok!r}", lineno, base + col - 1, source) from None
        try:
            mult = int(m.group("mult"))
        except ValueError:
            raise ParseError(f"invalid multiplicity {m.group('mult')!r}", lineno,
                             line.index("mult:") + 6, source) from None
        if mult < 1:
            raise ParseError("multiplicity must be positive", lineno, line.index("mult:") + 6, source)
        if points and len(coords) != len(points[0]):
            raise ParseError("all points need the same number of coordinates", lineno, base, source)
        points.append(coords)
        mults.append(mult)
    if not points:
        raise ParseError("no points given", 1, 1, source)
    try:
        return FatPointScheme.create(points, mults)
    except ValueError as exc:
        raise ParseError(str(exc), 1, 1, source) from None


def read_fat_points(path: str | Path) -> FatPointScheme:
    p = Path(path)
    return parse_fat_points(p.read_text(), str(p))


def format_fat_points(S: FatPointScheme) -> str:
    return "".join(f"coords: {' '.join(str(c) for c in q)}  mult: {m}\n"
                   for q, m in zip(S.points, S.multiplicities))


def module_to_json(M: FiniteModule, algebra_ref: str | None = None) -> dict:
    A = M.algebra
    return {
        "algebra": algebra_ref if algebra_ref is not None else format_ideal(A.ideal),
        "prime": A.p,
        "degrees": None if M.degrees is None else list(M.degrees),
        "actions": {v: np.asarray(a, dtype=np.int64).tolist() for v, a in zip(A.ctx.names, M.actions)},
        "name": M.name,
    }


def module_from_json(data: dict, base: Path | None = None, algebra: ArtinianAlgebra | None = None,
                     source: str = "<module>") -> FiniteModule:
    try:
        if algebra is None:
            ref = data["algebra"]
            if "\n" in ref or ref.lstrip().startswith("vars:"):
                ideal = parse_ideal(ref, source + "#algebra")
            else:
                ideal = read_ideal((base or Path(".")) / ref)
            algebra = algebra_from_ideal(ideal, int(data["prime"]))
        acts = data["actions"]
        if isinstance(acts, dict):
            missing = [v for v in algebra.ctx.names if v not in acts]
            if missing:
                raise ValueError(f"missing action for {missing[0]}")
            acts = [acts[v] for v in algebra.ctx.names]
        return FiniteModule(algebra, tuple(np.asarray(a, dtype=np.int64) for a in acts),
                            data.get("degrees"), data.get("name", ""))
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed module description: {exc}", 1, 1, source) from None


def read_module(path: str | Path, algebra: ArtinianAlgebra | None = None) -> FiniteModule:
    p = Path(path)
    try:
        data = json.loads(p.read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno, str(p)) from None
    return module_from_json(data, p.parent, algebra, str(p))
