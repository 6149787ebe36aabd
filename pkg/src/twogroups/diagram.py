"""String diagrams over a single object x with cups and caps for i, e, i⁻¹, e⁻¹.

Wires are ``"D"`` (the object x, drawn pointing down) and ``"U"`` (its dual,
pointing up).  A diagram is read top to bottom as a stack of layers; each
layer is a word of cells:

=========  ==============  ================
cell       inputs          outputs
=========  ==============  ================
``ID+``    D               D
``ID-``    U               U
``CUPI``   (none)          D U   (i)
``CUPE'``  (none)          U D   (e⁻¹)
``CAPE``   U D             (none) (e)
``CAPI'``  D U             (none) (i⁻¹)
=========  ==============  ================

Rewriting works on the *sequential form* (one cup or cap per layer, no
identity layers), written as a tuple of ``(cell, offset)`` pairs.  Besides
the six local rules, traces contain structural steps that never change the
denoted morphism: ``SWAP`` (interchange of two independent neighbouring
generators), ``SPLIT``/``MERGE`` and ``DROP``/``ADDID``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache

from .monoidal import MonoidalStructure, left_normal, to_left_normal
from .twogroup import CoherentData

D, U = "D", "U"
CELLS = {
    "ID+": ((D,), (D,)),
    "ID-": ((U,), (U,)),
    "CUPI": ((), (D, U)),
    "CUPE'": ((), (U, D)),
    "CAPE": ((U, D), ()),
    "CAPI'": ((D, U), ()),
}
IDENTITY_CELL = {D: "ID+", U: "ID-"}
GENERATORS = ("CUPI", "CUPE'", "CAPE", "CAPI'")
_RANK = {g: k for k, g in enumerate(GENERATORS)}
_ARITY = {g: (len(CELLS[g][0]), len(CELLS[g][1])) for g in GENERATORS}

RULE_TAGS = ("LOOP_I", "LOOP_E", "CANCEL_E", "CANCEL_I", "SLIDE_E", "SLIDE_I")
STRUCTURAL_TAGS = ("SWAP", "SPLIT", "MERGE", "DROP", "ADDID")


class DiagramError(ValueError):
    pass


@dataclass(frozen=True)
class Diagram:
    top: tuple[str, ...]
    layers: tuple[tuple[str, ...], ...]
    bottom: tuple[str, ...]

    @classmethod
    def make(cls, top, layers, bottom) -> "Diagram":
        return cls(tuple(top), tuple(tuple(layer) for layer in layers), tuple(bottom))

    def generator_count(self) -> int:
        return sum(c in _ARITY for layer in self.layers for c in layer)


def layer_io(layer) -> tuple[tuple[str, ...], tuple[str, ...]]:
    ins, outs = [], []
    for c in layer:
        if c not in CELLS:
            raise DiagramError(f"unknown cell {c!r}")
        ins.extend(CELLS[c][0])
        outs.extend(CELLS[c][1])
    return tuple(ins), tuple(outs)


def validate_diagram(d: Diagram) -> bool:
    try:
        word = tuple(d.top)
        for layer in d.layers:
            ins, outs = layer_io(layer)
            if ins != word:
                return False
            word = outs
        return word == tuple(d.bottom) and all(w in (D, U) for w in d.top + d.bottom)
    except DiagramError:
        return False


def identity_diagram(word) -> Diagram:
    word = tuple(word)
    return Diagram(word, (), word)


# sequential form

def _apply_gen(word: tuple, gen: str, k: int) -> tuple:
    ins, outs = CELLS[gen]
    if word[k:k + len(ins)] != ins or k < 0 or k > len(word) - len(ins):
        raise DiagramError(f"{gen} does not fit at offset {k} of {''.join(word) or 'empty'}")
    return word[:k] + outs + word[k + len(ins):]


def words(top: tuple, gens) -> list[tuple]:
    """Boundary words ``w_0 = top, ..., w_n`` of a sequential form."""
    out = [tuple(top)]
    for g, k in gens:
        out.append(_apply_gen(out[-1], g, k))
    return out


def seq_layer(word: tuple, gen: str, k: int) -> tuple[str, ...]:
    n_in = len(CELLS[gen][0])
    return (
        tuple(IDENTITY_CELL[w] for w in word[:k])
        + (gen,)
        + tuple(IDENTITY_CELL[w] for w in word[k + n_in:])
    )


def from_sequential(top, gens) -> Diagram:
    ws = words(top, gens)
    layers = tuple(seq_layer(ws[j], g, k) for j, (g, k) in enumerate(gens))
    return Diagram(tuple(top), layers, ws[-1])


def layer_generator(layer) -> tuple[str, int] | None:
    """The single generator of a layer with its wire offset, or None."""
    found, off = None, 0
    for c in layer:
        if c in _ARITY:
            if found is not None:
                return None
            found = (c, off)
        off += len(CELLS[c][0])
    return found


def is_sequential(d: Diagram) -> bool:
    return all(layer_generator(layer) is not None for layer in d.layers)


def to_gens(d: Diagram) -> tuple:
    gens = []
    for layer in d.layers:
        g = layer_generator(layer)
        if g is None:
            raise DiagramError("diagram is not in sequential form")
        gens.append(g)
    return tuple(gens)


# free interchange

@lru_cache(maxsize=1 << 16)
def swap_pair(upper, lower):
    """Interchange two neighbouring generators, or None if they are not independent.

    A cap directly above a cup at the same offset is never swapped: moving
    the cup past the cap would be ambiguous, and for matching types that
    move is the slide rule.
    """
    (ga, p), (gb, q) = upper, lower
    a_in, a_out = _ARITY[ga]
    b_in, b_out = _ARITY[gb]
    if a_out == 0 and b_in == 0 and p == q:
        return None
    if q + b_in <= p:
        new_upper, new_lower = (gb, q), (ga, p - b_in + b_out)
    elif q >= p + a_out:
        new_upper, new_lower = (gb, q - a_out + a_in), (ga, p)
    else:
        return None
    if _ARITY[new_upper[0]][1] == 0 and _ARITY[new_lower[0]][0] == 0 and new_upper[1] == new_lower[1]:
        return None
    return new_upper, new_lower


def _move(gens: list, src: int, dst: int, steps: list, base: int = 0) -> bool:
    """Move ``gens[src]`` to index ``dst`` by neighbouring swaps, in place.

    On failure ``gens`` and ``steps`` are left untouched.
    """
    trial = list(gens)
    new_steps = []
    if dst < src:
        for t in range(src - 1, dst - 1, -1):
            r = swap_pair(trial[t], trial[t + 1])
            if r is None:
                return False
            trial[t], trial[t + 1] = r
            new_steps.append(Step("SWAP", "-", base + t))
    else:
        for t in range(src, dst):
            r = swap_pair(trial[t], trial[t + 1])
            if r is None:
                return False
            trial[t], trial[t + 1] = r
            new_steps.append(Step("SWAP", "-", base + t))
    gens[:] = trial
    steps.extend(new_steps)
    return True


def canonicalize(gens) -> tuple[tuple, list]:
    form, steps = _canonicalize(tuple(gens))
    return form, list(steps)


@lru_cache(maxsize=1 << 16)
def _canonicalize(gens: tuple) -> tuple[tuple, tuple]:
    """Greedy lexicographic normal form under free interchange.

    At each position the generator that can be brought there with the
    smallest ``(offset, kind)`` is chosen.  Returns the form and the SWAP
    steps producing it.
    """
    gens = list(gens)
    steps: list = []
    for i in range(len(gens)):
        best = None
        for j in range(i, len(gens)):
            moved = gens[j]
            ok = True
            for t in range(j - 1, i - 1, -1):
                r = swap_pair(gens[t], moved)
                if r is None:
                    ok = False
                    break
                moved = r[0]
            if ok:
                key = (moved[1], _RANK[moved[0]], j)
                if best is None or key < best:
                    best = key
        _move(gens, best[2], i, steps)
    return tuple(gens), tuple(steps)


# rules

@dataclass(frozen=True)
class Rule:
    """``lhs`` (one pattern per side variant) rewrites to ``rhs``.

    Patterns are generator sequences with offsets relative to the rule
    position; ``boundary`` is the wire word the pattern occupies there.
    """

    tag: str
    lhs: tuple
    rhs: tuple
    boundary: tuple
    sides: tuple = ("-",)
    note: str = ""

    def pattern(self, direction: str, side: str) -> tuple:
        return self.lhs[self.sides.index(side)] if direction == "fwd" else self.rhs

    def replacement(self, direction: str, side: str) -> tuple:
        return self.rhs if direction == "fwd" else self.lhs[self.sides.index(side)]


_RULES = (
    Rule("LOOP_I", ((("CUPI", 0), ("CAPI'", 0)),), (), (), note="i ; i⁻¹ = 1"),
    Rule("LOOP_E", ((("CUPE'", 0), ("CAPE", 0)),), (), (), note="e⁻¹ ; e = 1"),
    Rule("CANCEL_E", ((("CAPE", 0), ("CUPE'", 0)),), (), (U, D), note="e ; e⁻¹ = 1 on x̄x"),
    Rule("CANCEL_I", ((("CAPI'", 0), ("CUPI", 0)),), (), (D, U), note="i⁻¹ ; i = 1 on xx̄"),
    Rule(
        "SLIDE_E",
        ((("CUPE'", 0), ("CAPE", 2)), (("CUPE'", 2), ("CAPE", 0))),
        (("CAPE", 0), ("CUPE'", 0)),
        (U, D),
        ("L", "R"),
        "e beside e⁻¹ equals e above e⁻¹",
    ),
    Rule(
        "SLIDE_I",
        ((("CUPI", 0), ("CAPI'", 2)), (("CUPI", 2), ("CAPI'", 0))),
        (("CAPI'", 0), ("CUPI", 0)),
        (D, U),
        ("L", "R"),
        "i⁻¹ beside i equals i⁻¹ above i",
    ),
)
RULES = {r.tag: r for r in _RULES}


def rewrite_rules() -> list[Rule]:
    return list(_RULES)


@dataclass(frozen=True)
class Step:
    tag: str
    direction: str  # "fwd", "bwd", or "-" for structural steps
    layer: int
    offset: int = 0
    side: str = "-"

    def inverse(self) -> "Step":
        if self.tag in RULES:
            return Step(self.tag, "bwd" if self.direction == "fwd" else "fwd", self.layer, self.offset, self.side)
        partner = {"SWAP": "SWAP", "SPLIT": "MERGE", "MERGE": "SPLIT", "DROP": "ADDID", "ADDID": "DROP"}
        return Step(partner[self.tag], "-", self.layer, self.offset, self.side)

    def line(self) -> str:
        return f"STEP {self.tag} {self.direction} {self.layer} {self.offset} {self.side}"

    @classmethod
    def parse(cls, line: str) -> "Step":
        parts = line.split()
        if len(parts) != 6 or parts[0] != "STEP":
            raise ValueError(f"bad trace line {line!r}")
        tag, direction, layer, offset, side = parts[1:]
        if tag not in RULES and tag not in STRUCTURAL_TAGS:
            raise ValueError(f"unknown step tag {tag!r}")
        return cls(tag, direction, int(layer), int(offset), side)


@dataclass(frozen=True)
class RewriteTrace:
    steps: tuple[Step, ...] = field(default_factory=tuple)

    @property
    def rule_count(self) -> int:
        return sum(s.tag in RULES for s in self.steps)

    def __len__(self) -> int:
        return len(self.steps)

    def lines(self) -> list[str]:
        return [s.line() for s in self.steps]

    def inverse(self) -> "RewriteTrace":
        return RewriteTrace(tuple(s.inverse() for s in reversed(self.steps)))

    @classmethod
    def parse(cls, text: str) -> "RewriteTrace":
        steps = [Step.parse(ln) for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
        return cls(tuple(steps))


def _rule_on_gens(top, gens: tuple, step: Step):
    """Apply a rule step to a sequential form; None if it does not match."""
    rule = RULES[step.tag]
    if step.side not in rule.sides:
        return None
    pat = rule.pattern(step.direction, step.side)
    rep = rule.replacement(step.direction, step.side)
    j, k = step.layer, step.offset
    if j < 0 or j + len(pat) > len(gens) or k < 0:
        return None
    if tuple(gens[j:j + len(pat)]) != tuple((g, k + o) for g, o in pat):
        return None
    if not pat:
        word = words(top, gens[:j])[-1]
        if word[k:k + len(rule.boundary)] != rule.boundary or k + len(rule.boundary) > len(word):
            return None
    return gens[:j] + tuple((g, k + o) for g, o in rep) + gens[j + len(pat):]


def apply_rule(d: Diagram, rule: str, position, direction: str = "fwd") -> Diagram:
    """Apply one of the six rules at ``position = (layer, offset[, side])``.

    The layers touched must each hold exactly one generator; an insertion
    (backward loop or cancellation) puts two such layers at ``layer``.
    """
    layer, offset, *rest = position
    step = Step(rule, direction, layer, offset, rest[0] if rest else RULES[rule].sides[0])
    return apply_step(d, step)


def _split_layer(word, layer):
    """First generator alone, then the remaining cells."""
    off = 0
    for idx, c in enumerate(layer):
        if c in _ARITY:
            ins, outs = CELLS[c]
            first = seq_layer(word, c, off)
            rest = tuple(IDENTITY_CELL[w] for w in outs) + layer[idx + 1:]
            rest = layer[:idx] + rest
            return first, rest
        off += len(CELLS[c][0])
    raise DiagramError("layer has no generator")


def _merge_layers(first, second):
    g = layer_generator(first)
    if g is None:
        raise DiagramError("MERGE needs a single-generator upper layer")
    gen, k = g
    ins, outs = CELLS[gen]
    # locate the cells of ``second`` covering wire offsets k .. k+len(outs)
    off, idx = 0, 0
    while idx < len(second) and off < k:
        off += len(CELLS[second[idx]][0])
        idx += 1
    if off != k:
        raise DiagramError("MERGE: generator outputs do not align with the lower layer")
    run = second[idx:idx + len(outs)]
    if tuple(run) != tuple(IDENTITY_CELL[w] for w in outs):
        raise DiagramError("MERGE: lower layer does not pass the generator outputs through")
    return second[:idx] + (gen,) + second[idx + len(outs):]


def apply_step(d: Diagram, step: Step) -> Diagram:
    layers = list(d.layers)
    j = step.layer
    if step.tag in RULES:
        rule = RULES[step.tag]
        n_pat = len(rule.pattern(step.direction, step.side))
        if j < 0 or j + n_pat > len(layers):
            raise DiagramError(f"{step.line()}: layer out of range")
        gens = []
        for layer in layers[j:j + n_pat]:
            g = layer_generator(layer)
            if g is None:
                raise DiagramError(f"{step.line()}: layer is not a single generator")
            gens.append(g)
        word = layer_io(layers[j - 1])[1] if j > 0 else d.top
        new = _rule_on_gens(word, tuple(gens), Step(step.tag, step.direction, 0, step.offset, step.side))
        if new is None:
            raise DiagramError(f"{step.line()}: pattern does not match")
        ws = words(word, new)
        new_layers = [seq_layer(ws[t], g, k) for t, (g, k) in enumerate(new)]
        layers[j:j + n_pat] = new_layers
    elif step.tag == "SWAP":
        if not 0 <= j < len(layers) - 1:
            raise DiagramError(f"{step.line()}: layer out of range")
        a, b = layer_generator(layers[j]), layer_generator(layers[j + 1])
        if a is None or b is None:
            raise DiagramError(f"{step.line()}: layers are not single generators")
        r = swap_pair(a, b)
        if r is None:
            raise DiagramError(f"{step.line()}: generators are not independent")
        word = layer_io(layers[j])[0]
        ws = words(word, r)
        layers[j:j + 2] = [seq_layer(ws[0], *r[0]), seq_layer(ws[1], *r[1])]
    elif step.tag == "SPLIT":
        if not 0 <= j < len(layers):
            raise DiagramError(f"{step.line()}: layer out of range")
        word = layer_io(layers[j])[0]
        layers[j:j + 1] = list(_split_layer(word, layers[j]))
    elif step.tag == "MERGE":
        if not 0 <= j < len(layers) - 1:
            raise DiagramError(f"{step.line()}: layer out of range")
        layers[j:j + 2] = [_merge_layers(layers[j], layers[j + 1])]
    elif step.tag == "DROP":
        if not 0 <= j < len(layers) or any(c in _ARITY for c in layers[j]):
            raise DiagramError(f"{step.line()}: not an identity layer")
        del layers[j]
    elif step.tag == "ADDID":
        if not 0 <= j <= len(layers):
            raise DiagramError(f"{step.line()}: layer out of range")
        word = d.top
        for layer in layers[:j]:
            word = layer_io(layer)[1]
        layers.insert(j, tuple(IDENTITY_CELL[w] for w in word))
    else:
        raise DiagramError(f"unknown step {step.tag}")
    out = Diagram(d.top, tuple(layers), d.bottom)
    if not validate_diagram(out):
        raise DiagramError(f"{step.line()}: result is ill-typed")
    return out


def replay(d: Diagram, trace: RewriteTrace) -> Diagram:
    for step in trace.steps:
        d = apply_step(d, step)
    return d


def normalize(d: Diagram) -> tuple[tuple, list]:
    """Sequential form of ``d`` plus the structural steps that reach it."""
    if not validate_diagram(d):
        raise DiagramError("ill-typed diagram")
    steps = []
    layers = list(d.layers)
    j = 0
    while j < len(layers):
        layer = layers[j]
        n_gen = sum(c in _ARITY for c in layer)
        if n_gen == 0:
            steps.append(Step("DROP", "-", j))
            del layers[j]
        elif n_gen == 1:
            j += 1
        else:
            word = layer_io(layer)[0]
            steps.append(Step("SPLIT", "-", j))
            layers[j:j + 1] = list(_split_layer(word, layer))
    gens = tuple(layer_generator(layer) for layer in layers)
    return gens, steps


# search

def _pair_index() -> dict:
    """Two-generator patterns keyed by ``(kind, offset, kind, offset)`` relative to the rule offset."""
    index: dict = {}
    for rule in _RULES:
        for direction in ("fwd", "bwd"):
            for side in rule.sides:
                pat = rule.pattern(direction, side)
                if len(pat) == 2:
                    key = (pat[0][0], pat[0][1], pat[1][0], pat[1][1])
                    index.setdefault(key, []).append(
                        (rule.tag, direction, side, rule.replacement(direction, side))
                    )
    return index


_PAIRS = _pair_index()
_INSERTIONS = [(r.tag, r.boundary, r.lhs[0]) for r in _RULES if not r.rhs]


def _neighbours(top: tuple, gens: tuple, max_gens: int):
    """All states one rule application away, as ``(canonical gens, steps)``."""
    n = len(gens)
    results = []

    def emit(new_gens, pre_steps, step):
        canon, post = canonicalize(new_gens)
        results.append((canon, pre_steps + [step] + post))

    # two-generator patterns: bring each pair together, then match
    for i in range(n):
        for j in range(i + 1, n):
            for variant in (0, 1):
                work = list(gens)
                steps: list = []
                pos = _make_adjacent(work, i, j, steps, variant)
                if pos is None:
                    continue
                (g1, o1), (g2, o2) = work[pos], work[pos + 1]
                k = min(o1, o2)
                for tag, direction, side, rep in _PAIRS.get((g1, o1 - k, g2, o2 - k), ()):
                    new = tuple(work[:pos]) + tuple((g, k + o) for g, o in rep) + tuple(work[pos + 2:])
                    emit(new, steps, Step(tag, direction, pos, k, side))
    # insertions of loops and cancelling pairs
    if n + 2 <= max_gens:
        ws = words(top, gens)
        for j in range(n + 1):
            w = ws[j]
            for tag, boundary, pat in _INSERTIONS:
                b = len(boundary)
                for k in range(len(w) - b + 1):
                    if b and w[k:k + b] != boundary:
                        continue
                    new = gens[:j] + tuple((g, k + o) for g, o in pat) + gens[j:]
                    emit(new, [], Step(tag, "bwd", j, k))
    return results


def _make_adjacent(work: list, i: int, j: int, steps: list, variant: int):
    """Bring ``work[i]`` and ``work[j]`` next to each other; return the upper index.

    Variant 0 lifts the lower one, variant 1 lowers the upper one; in both,
    generators in between are first pushed out of the way where possible.
    Returns None when it cannot be done (or variant 1 would repeat variant 0).
    """
    if j == i + 1:
        return i if variant == 0 else None
    lo, hi = i, j
    k = lo + 1
    while k < hi:
        if _move(work, k, lo, steps):
            lo += 1
        k += 1
    k = hi - 1
    while k > lo:
        if _move(work, k, hi, steps):
            hi -= 1
        k -= 1
    if hi == lo + 1:
        return lo if variant == 0 else None
    if variant == 0:
        return lo if _move(work, hi, lo + 1, steps) else None
    return hi - 1 if _move(work, lo, hi - 1, steps) else None


def _count_rules(steps) -> int:
    return sum(s.tag in RULES for s in steps)


def equivalent(d1: Diagram, d2: Diagram, max_steps: int = 64, max_states: int = 200_000):
    """Bidirectional breadth-first search for a rewrite trace from ``d1`` to ``d2``.

    ``max_steps`` bounds the number of rule applications (structural steps
    are free).  Returns a :class:`RewriteTrace` that replays ``d1`` onto
    ``d2`` exactly, or None when the bound or the state budget runs out;
    None is inconclusive.
    """
    if not validate_diagram(d1) or not validate_diagram(d2):
        raise DiagramError("ill-typed diagram")
    if d1.top != d2.top or d1.bottom != d2.bottom:
        raise DiagramError("diagrams have different boundaries")
    if d1 == d2:
        return RewriteTrace(())
    top = d1.top
    g1, n1 = normalize(d1)
    g2, n2 = normalize(d2)
    c1, s1 = canonicalize(g1)
    c2, s2 = canonicalize(g2)
    head = n1 + s1
    tail = RewriteTrace(tuple(n2 + s2)).inverse().steps
    max_gens = max(len(c1), len(c2)) + 4

    parents = [{c1: None}, {c2: None}]  # state -> (previous state, steps from previous)
    frontier = [[c1], [c2]]
    depth = [0, 0]
    meet = c1 if c1 == c2 else None
    states = 2
    while meet is None and depth[0] + depth[1] < max_steps:
        side = 0 if len(frontier[0]) <= len(frontier[1]) else 1
        if not frontier[side]:
            side = 1 - side
            if not frontier[side]:
                break
        nxt = []
        for state in frontier[side]:
            for new, steps in _neighbours(top, state, max_gens):
                if new in parents[side]:
                    continue
                parents[side][new] = (state, steps)
                states += 1
                if new in parents[1 - side]:
                    meet = new
                    break
                nxt.append(new)
            if meet is not None or states > max_states:
                break
        depth[side] += 1
        frontier[side] = nxt
        if states > max_states:
            break
    if meet is None:
        return None

    def chain(side):
        out = []
        s = meet
        while parents[side][s] is not None:
            prev, steps = parents[side][s]
            out.append(steps)
            s = prev
        return out

    forward = [st for steps in reversed(chain(0)) for st in steps]
    backward = [st.inverse() for steps in chain(1) for st in reversed(steps)]
    trace = RewriteTrace(tuple(head + forward + backward + list(tail)))
    if replay(d1, trace) != d2:
        raise AssertionError("internal error: trace does not replay onto the target")
    return trace


# standard diagrams

def wire(w: str) -> Diagram:
    return Diagram((w,), (), (w,))


def iprime_diagram() -> Diagram:
    """``i′``: an i cup whose left leg is bent through an e⁻¹ cup and an i⁻¹ cap."""
    return Diagram.make(
        (),
        [("CUPI",), ("ID+", "CUPE'", "ID-"), ("CAPI'", "ID+", "ID-")],
        (D, U),
    )


def zigzag1_diagram() -> Diagram:
    """``(i′ ⊗ 1) ; (1 ⊗ e)`` on a down wire."""
    ip = iprime_diagram()
    layers = [layer + ("ID+",) for layer in ip.layers] + [("ID+", "CAPE")]
    return Diagram.make((D,), layers, (D,))


def zigzag2_diagram() -> Diagram:
    """``(1 ⊗ i′) ; (e ⊗ 1)`` on an up wire."""
    ip = iprime_diagram()
    layers = [("ID-",) + layer for layer in ip.layers] + [("CAPE", "ID-")]
    return Diagram.make((U,), layers, (U,))


NAMED = {
    "down": lambda: wire(D),
    "up": lambda: wire(U),
    "iprime": iprime_diagram,
    "zigzag1": zigzag1_diagram,
    "zigzag2": zigzag2_diagram,
}


def random_walk(d: Diagram, rng: random.Random, n_rules: int, tags=RULE_TAGS, max_gens: int = 10):
    """Apply ``n_rules`` random rule steps (restricted to ``tags``) to ``d``.

    Returns the resulting diagram and the trace that produced it.
    """
    gens, steps = normalize(d)
    gens, s = canonicalize(gens)
    steps = steps + s
    for _ in range(n_rules):
        options = [
            (new, st) for new, st in _neighbours(d.top, gens, max_gens)
            if next(x for x in st if x.tag in RULES).tag in tags
        ]
        if not options:
            break
        gens, st = rng.choice(options)
        steps.extend(st)
    out = from_sequential(d.top, gens)
    trace = RewriteTrace(tuple(steps))
    return out, trace


def random_diagram(rng: random.Random, size: int = 4, tags=RULE_TAGS) -> Diagram:
    """A random diagram grown from a short identity by ``size`` rule steps."""
    top = tuple(rng.choice((D, U)) for _ in range(rng.randint(0, 2)))
    return random_walk(identity_diagram(top), rng, size, tags)[0]


# evaluation

_CELL_IN = {"ID+": D, "ID-": U, "CUPI": None, "CUPE'": None, "CAPE": (U, D), "CAPI'": (D, U)}
_CELL_OUT = {"ID+": D, "ID-": U, "CUPI": (D, U), "CUPE'": (U, D), "CAPE": None, "CAPI'": None}


def _tree(shape, x: int, xb: int):
    if shape is None:
        return None
    if isinstance(shape, tuple):
        return tuple(_tree(s, x, xb) for s in shape)
    return x if shape == D else xb


def _fold(items):
    if not items:
        return None
    t = items[0]
    for s in items[1:]:
        t = (t, s)
    return t


def evaluate(d: Diagram, M: MonoidalStructure, ch: CoherentData, x: int) -> int:
    """Morphism denoted by ``d`` for the object ``x`` with data ``ch``.

    Boundary words become left-parenthesized, unit-free tensor products;
    each layer is conjugated by the canonical structural isomorphisms.
    """
    if not validate_diagram(d):
        raise DiagramError("ill-typed diagram")
    xb, i, e = ch.entry(x)
    cell_mor = {
        "ID+": M.id(x),
        "ID-": M.id(xb),
        "CUPI": i,
        "CUPE'": M.inv(e),
        "CAPE": e,
        "CAPI'": M.inv(i),
    }
    total = M.id(left_normal(M, [x if w == D else xb for w in d.top]))
    for layer in d.layers:
        t_in = _fold([_tree(_CELL_IN[c], x, xb) for c in layer])
        t_out = _fold([_tree(_CELL_OUT[c], x, xb) for c in layer])
        mor = cell_mor[layer[0]] if layer else M.id(M.unit)
        for c in layer[1:]:
            mor = M.mor(mor, cell_mor[c])
        step = M.comp(M.inv(to_left_normal(M, t_in)[0]), mor, to_left_normal(M, t_out)[0])
        total = M.comp(total, step)
    return total
