"""Plain-text formats for instances, monoidal functors, diagrams and traces.

Files are whitespace separated with ``#`` comments.  An instance is either a
single ``GENERATOR`` directive or the explicit sections

    OBJECTS n
    MORPHISMS m        followed by m rows ``id dom cod``
    IDENTITY           n morphism ids
    COMPOSE            m rows of m entries, ``.`` where undefined
    TENSOR_OB          n rows of n objects
    TENSOR_MOR         m rows of m morphisms
    UNIT u
    ASSOC              n³ rows ``x y z f``
    LUNIT / RUNIT      n morphism ids each
    DUAL / UNIT_I / COUNIT_E   optional, n ids each (all three or none)
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .diagram import CELLS, Diagram
from .fincat import NONE, FinCategory, FinFunctor, StructuralError
from .homomorphism import MonoidalFunctor
from .monoidal import MonoidalStructure
from .twogroup import CoherentData, generate


class ParseError(ValueError):
    pass


@dataclass(frozen=True)
class Instance:
    M: MonoidalStructure
    data: CoherentData | None = None
    generator: str | None = None


def _lines(text: str) -> list[list[str]]:
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line.split())
    return out


class _Tokens:
    def __init__(self, text: str):
        self.toks = [t for line in _lines(text) for t in line]
        self.pos = 0

    def done(self) -> bool:
        return self.pos >= len(self.toks)

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def word(self) -> str:
        if self.pos >= len(self.toks):
            raise ParseError("unexpected end of file")
        self.pos += 1
        return self.toks[self.pos - 1]

    def int(self, allow_none: bool = False) -> int:
        t = self.word()
        if allow_none and t == ".":
            return NONE
        try:
            v = int(t)
        except ValueError:
            raise ParseError(f"expected an integer, got {t!r}") from None
        if v < 0:
            raise ParseError(f"negative id {v}")
        return v

    def ints(self, k: int, allow_none: bool = False) -> list[int]:
        return [self.int(allow_none) for _ in range(k)]


_SECTIONS = ("OBJECTS", "MORPHISMS", "IDENTITY", "COMPOSE", "TENSOR_OB", "TENSOR_MOR",
             "UNIT", "ASSOC", "LUNIT", "RUNIT", "DUAL", "UNIT_I", "COUNIT_E")


def parse_instance(text: str) -> Instance:
    lines = _lines(text)
    if any(line[0] == "GENERATOR" for line in lines):
        if len(lines) != 1 or len(lines[0]) != 2:
            raise ParseError("GENERATOR must be the only directive and take one argument")
        directive = lines[0][1]
        try:
            M, data = generate(directive)
        except ValueError as exc:
            raise ParseError(str(exc)) from None
        return Instance(M, data, directive)
    tk = _Tokens(text)
    seen: dict = {}
    n = m = None
    while not tk.done():
        key = tk.word()
        if key not in _SECTIONS:
            raise ParseError(f"unknown section {key!r}")
        if key in seen:
            raise ParseError(f"duplicate section {key}")
        if key == "OBJECTS":
            n = seen[key] = tk.int()
            continue
        if n is None:
            raise ParseError("OBJECTS must come first")
        if key == "MORPHISMS":
            m = seen[key] = tk.int()
            rows = [tk.ints(3) for _ in range(m)]
            for k, row in enumerate(rows):
                if row[0] != k:
                    raise ParseError(f"MORPHISMS row {k} has id {row[0]}")
            seen["_arrows"] = [(r[1], r[2]) for r in rows]
            continue
        if m is None and key not in ("UNIT",):
            raise ParseError("MORPHISMS must come before the tables")
        if key in ("IDENTITY", "LUNIT", "RUNIT", "DUAL", "UNIT_I", "COUNIT_E"):
            seen[key] = tk.ints(n)
        elif key == "COMPOSE":
            seen[key] = [tk.ints(m, allow_none=True) for _ in range(m)]
        elif key == "TENSOR_OB":
            seen[key] = [tk.ints(n) for _ in range(n)]
        elif key == "TENSOR_MOR":
            seen[key] = [tk.ints(m) for _ in range(m)]
        elif key == "UNIT":
            seen[key] = tk.int()
        elif key == "ASSOC":
            table = {}
            for _ in range(n ** 3):
                x, y, z, f = tk.ints(4)
                if (x, y, z) in table:
                    raise ParseError(f"ASSOC row {x} {y} {z} repeated")
                table[(x, y, z)] = f
            try:
                seen[key] = [table[t] for t in itertools.product(range(n), repeat=3)]
            except KeyError as exc:
                raise ParseError(f"ASSOC row {exc.args[0]} missing") from None
    required = ("OBJECTS", "MORPHISMS", "IDENTITY", "COMPOSE", "TENSOR_OB", "TENSOR_MOR",
                "UNIT", "ASSOC", "LUNIT", "RUNIT")
    missing = [k for k in required if k not in seen]
    if missing:
        raise ParseError("missing sections: " + " ".join(missing))
    optional = [k for k in ("DUAL", "UNIT_I", "COUNIT_E") if k in seen]
    if optional and len(optional) != 3:
        raise ParseError("DUAL, UNIT_I and COUNIT_E must be given together")
    arrows = seen["_arrows"]
    if any(not (0 <= a < n and 0 <= b < n) for a, b in arrows):
        raise StructuralError("morphism endpoint outside the object range")
    table = tuple(tuple(row) for row in seen["COMPOSE"])
    base = FinCategory(n, tuple(a for a, _ in arrows), tuple(b for _, b in arrows),
                       tuple(seen["IDENTITY"]), table)
    M = MonoidalStructure.from_tables(base, seen["TENSOR_OB"], seen["TENSOR_MOR"], seen["UNIT"],
                                      seen["ASSOC"], seen["LUNIT"], seen["RUNIT"])
    data = CoherentData(tuple(seen["DUAL"]), tuple(seen["UNIT_I"]), tuple(seen["COUNIT_E"])) if optional else None
    return Instance(M, data)


def _row(values) -> str:
    return " ".join("." if v == NONE else str(v) for v in values)


def serialize_instance(inst: Instance, expand: bool = False) -> str:
    if inst.generator and not expand:
        return f"GENERATOR {inst.generator}\n"
    M, C = inst.M, inst.M.base
    n, m = C.n_objects, C.n_morphisms
    out = [f"OBJECTS {n}", f"MORPHISMS {m}"]
    out += [f"{f} {C.dom[f]} {C.cod[f]}" for f in range(m)]
    out += ["IDENTITY", _row(C.identity), "COMPOSE"]
    out += [_row(row) for row in C.table]
    out.append("TENSOR_OB")
    out += [_row(M.tensor.ob_map[x * n:(x + 1) * n]) for x in range(n)]
    out.append("TENSOR_MOR")
    out += [_row(M.tensor.mor_map[f * m:(f + 1) * m]) for f in range(m)]
    out.append(f"UNIT {M.unit}")
    out.append("ASSOC")
    out += [f"{x} {y} {z} {M.a(x, y, z)}" for x, y, z in itertools.product(range(n), repeat=3)]
    out += ["LUNIT", _row(M.lunit), "RUNIT", _row(M.runit)]
    if inst.data is not None:
        out += ["DUAL", _row(inst.data.dual), "UNIT_I", _row(inst.data.unit_i),
                "COUNIT_E", _row(inst.data.counit_e)]
    return "\n".join(out) + "\n"


# monoidal functors

def parse_functor(text: str, source: MonoidalStructure, target: MonoidalStructure) -> MonoidalFunctor:
    """``GENERATOR identity``, ``GENERATOR deloop:c:f0`` or sections
    ``OB_MAP``, ``MOR_MAP``, ``F2`` (rows ``x y f``) and ``F0``."""
    lines = _lines(text)
    n, m = source.n, source.base.n_morphisms
    if any(line[0] == "GENERATOR" for line in lines):
        if len(lines) != 1 or len(lines[0]) != 2:
            raise ParseError("GENERATOR must be the only directive and take one argument")
        directive = lines[0][1].split(":")
        if directive == ["identity"]:
            if source != target:
                raise ParseError("identity functor needs equal source and target")
            ob, mor = list(range(n)), list(range(m))
            F2 = [source.id(source.ob(x, y)) for x in range(n) for y in range(n)]
            F0 = source.id(source.unit)
        elif directive[0] == "deloop" and len(directive) == 3:
            if n != 1 or target.n != 1 or m != target.base.n_morphisms:
                raise ParseError("deloop functor needs one-object instances of equal order")
            try:
                c, F0 = int(directive[1]), int(directive[2])
            except ValueError:
                raise ParseError("deloop functor arguments must be integers") from None
            ob, mor, F2 = [0], list(range(m)), [c]
        else:
            raise ParseError(f"unknown functor generator {lines[0][1]!r}")
    else:
        tk = _Tokens(text)
        seen: dict = {}
        while not tk.done():
            key = tk.word()
            if key in seen:
                raise ParseError(f"duplicate section {key}")
            if key == "OB_MAP":
                seen[key] = tk.ints(n)
            elif key == "MOR_MAP":
                seen[key] = tk.ints(m)
            elif key == "F2":
                rows = {}
                for _ in range(n * n):
                    x, y, f = tk.ints(3)
                    rows[(x, y)] = f
                try:
                    seen[key] = [rows[(x, y)] for x in range(n) for y in range(n)]
                except KeyError as exc:
                    raise ParseError(f"F2 row {exc.args[0]} missing") from None
            elif key == "F0":
                seen[key] = tk.int()
            else:
                raise ParseError(f"unknown section {key!r}")
        missing = [k for k in ("OB_MAP", "MOR_MAP", "F2", "F0") if k not in seen]
        if missing:
            raise ParseError("missing sections: " + " ".join(missing))
        ob, mor, F2, F0 = seen["OB_MAP"], seen["MOR_MAP"], seen["F2"], seen["F0"]
    F = FinFunctor(source.base, target.base, tuple(ob), tuple(mor))
    return MonoidalFunctor(source, target, F, tuple(F2), F0)


def serialize_functor(Fm: MonoidalFunctor) -> str:
    n = Fm.source.n
    out = ["OB_MAP", _row(Fm.F.ob_map), "MOR_MAP", _row(Fm.F.mor_map), "F2"]
    out += [f"{x} {y} {Fm.f2(x, y)}" for x in range(n) for y in range(n)]
    out.append(f"F0 {Fm.F0}")
    return "\n".join(out) + "\n"


# diagrams

def parse_diagram(text: str) -> Diagram:
    top = bottom = None
    layers = []
    for line in _lines(text):
        key, rest = line[0], line[1:]
        if key == "TOP":
            if top is not None:
                raise ParseError("duplicate TOP")
            top = tuple(rest)
        elif key == "BOTTOM":
            if bottom is not None:
                raise ParseError("duplicate BOTTOM")
            bottom = tuple(rest)
        elif key == "LAYER":
            if top is None or bottom is not None:
                raise ParseError("LAYER lines go between TOP and BOTTOM")
            for c in rest:
                if c not in CELLS:
                    raise ParseError(f"unknown cell {c!r}")
            layers.append(tuple(rest))
        else:
            raise ParseError(f"unknown directive {key!r}")
    if top is None or bottom is None:
        raise ParseError("diagram needs TOP and BOTTOM")
    for w in top + bottom:
        if w not in ("D", "U"):
            raise ParseError(f"unknown wire {w!r}")
    return Diagram(top, tuple(layers), bottom)


def serialize_diagram(d: Diagram) -> str:
    out = [" ".join(("TOP",) + d.top)]
    out += [" ".join(("LAYER",) + layer) for layer in d.layers]
    out.append(" ".join(("BOTTOM",) + d.bottom))
    return "\n".join(out) + "\n"
