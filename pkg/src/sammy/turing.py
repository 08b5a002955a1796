"""Turing machines on truncated tapes, stepped by the paper's nine-step translation.

The tape is ``omega_N`` (cells ``0..N``), its contents a functor ``omega_N -> 3^``
into the codiscrete category on the symbols ``0``, ``1``, blank. The head is a pointer
``P_i: 1 -> omega_N``; the state is a plain index (the paper's "variable q_x").
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from pathlib import Path

from .constructions import build_number_category, predecessor, successor
from .core import (
    ONE,
    TWO,
    ZERO,
    FunctorValue,
    SammyError,
    ValidationError,
    categories_isomorphic,
    chain,
    codiscrete,
    discrete,
    functor_from_objects,
    identity_functor,
    structures_equal,
)
from .engine import comma, comp, coproduct, pointer
from .presentation import coequalizer_presented, saturate_full

SYMBOLS = ("0", "1", "_")
SYMBOL_INDEX = {s: i for i, s in enumerate(SYMBOLS)}
THREE_HAT = codiscrete(3)  # the tape alphabet with every pair of symbols isomorphic
THREE_DOT = discrete(3)


class BoundaryHit(SammyError):
    pass


class NoRule(SammyError):
    pass


@dataclass(frozen=True)
class Machine:
    name: str
    states: tuple[str, ...]
    start: str
    halt: frozenset[str]
    rules: dict  # (state, symbol) -> (state', symbol', 'L' | 'R')

    @classmethod
    def from_data(cls, d: dict) -> Machine:
        rules = {}
        for q, a, q2, b, move in d["rules"]:
            if a not in SYMBOLS or b not in SYMBOLS or move not in ("L", "R"):
                raise ValidationError(f"bad rule {[q, a, q2, b, move]}")
            if (q, a) in rules:
                raise ValidationError(f"duplicate rule for {(q, a)}")
            rules[(q, a)] = (q2, b, move)
        states = tuple(d["states"])
        for q, _a in rules:
            if q not in states:
                raise ValidationError(f"rule for undeclared state {q!r}")
        return cls(d.get("name", "machine"), states, d["start"], frozenset(d.get("halt", ())), rules)

    def to_data(self) -> dict:
        return {
            "name": self.name,
            "states": list(self.states),
            "start": self.start,
            "halt": sorted(self.halt),
            "rules": [[q, a, *self.rules[(q, a)]] for q, a in sorted(self.rules)],
        }


def load_machine(path: str | Path) -> Machine:
    return Machine.from_data(json.loads(Path(path).read_text()))


@dataclass(frozen=True, eq=False)
class TapeConfig:
    N: int
    contents: FunctorValue  # omega_N -> 3^
    head: FunctorValue  # 1 -> omega_N
    state: str

    @property
    def position(self) -> int:
        return self.head.obj_map[0]

    @property
    def tape(self) -> str:
        return "".join(SYMBOLS[x] for x in self.contents.obj_map)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TapeConfig):
            return NotImplemented
        return (self.N, self.tape, self.position, self.state) == (other.N, other.tape, other.position, other.state)

    def __hash__(self) -> int:
        return hash((self.N, self.tape, self.position, self.state))


def make_config(tape: str, head: int, state: str) -> TapeConfig:
    if not tape or not 0 <= head < len(tape):
        raise ValidationError("head outside the tape")
    T = chain(len(tape))
    contents = functor_from_objects(T, THREE_HAT, [SYMBOL_INDEX[s] for s in tape])
    return TapeConfig(len(tape) - 1, contents, pointer(T, head), state)


def _count(counter: Counter | None, name: str) -> None:
    if counter is not None:
        counter[name] += 1


def tm_step(cfg: TapeConfig, machine: Machine, counter: Counter | None = None) -> TapeConfig:
    """One machine step through the nine categorical steps.

    ``counter`` records one entry per Sammy-level operation; the total is the same for
    every step regardless of tape length or head position.
    """
    N = cfg.N
    nc = build_number_category("chain", N)
    T = nc.category
    i = cfg.position
    ident = identity_functor(T)
    succ = successor(nc)

    # 1. split the tape with comma categories at P_{i-1} and P_{i+1}
    _count(counter, "pointer-left")
    left_ptr = predecessor(nc, cfg.head) if i > 0 else None
    _count(counter, "pointer-right")
    right_ptr = comp(cfg.head, succ) if i < N else None
    _count(counter, "comma-left")
    left = comma(ident, left_ptr) if left_ptr is not None else None
    _count(counter, "comma-right")
    right = comma(right_ptr, ident) if right_ptr is not None else None
    # 2. restrict the contents to both parts
    _count(counter, "restrict-left")
    cl = comp(left.proj_left, cfg.contents) if left else None
    _count(counter, "restrict-right")
    cr = comp(right.proj_right, cfg.contents) if right else None
    # 3. read the scanned symbol and consult the rule (the program's IF chain)
    _count(counter, "read")
    a = comp(cfg.head, cfg.contents).obj_map[0]
    rule = machine.rules.get((cfg.state, SYMBOLS[a]))
    if rule is None:
        raise NoRule(f"no rule for state {cfg.state!r} reading {SYMBOLS[a]!r}")
    q2, b_sym, move = rule
    _count(counter, "rule")
    if (move == "R" and i == N) or (move == "L" and i == 0):
        raise BoundaryHit(f"head would leave the truncated tape moving {move} from cell {i}")
    # 4. the new symbol as a functor b: 1 -> 3^
    _count(counter, "write")
    b = pointer(THREE_HAT, SYMBOL_INDEX[b_sym])
    # 5. reattach: Left + 2 + 1 + 2 + Right, glued by a coequalizer
    _count(counter, "coproduct")
    lcat = left.category if left else ZERO
    rcat = right.category if right else ZERO
    # a connector is only present when there is a part to attach it to
    pieces = [lcat, TWO if left else ZERO, ONE, TWO if right else ZERO, rcat]
    offsets = [0]
    X = pieces[0]
    for p in pieces[1:]:
        offsets.append(X.n)
        X = coproduct(X, p).category
    o_l, o_a, o_m, o_b, o_r = offsets
    glue_src, glue_tgt = [], []
    if left:
        glue_src += [o_l + lcat.n - 1, o_a + 1]
        glue_tgt += [o_a, o_m]
    if right:
        glue_src += [o_m, o_b + 1]
        glue_tgt += [o_b, o_r]
    D = discrete(len(glue_src))
    f = FunctorValue(D, X, tuple(glue_src), tuple(X.identities[x] for x in glue_src))
    g = FunctorValue(D, X, tuple(glue_tgt), tuple(X.identities[x] for x in glue_tgt))
    _count(counter, "coequalizer")
    pres = coequalizer_presented(f, g)
    _count(counter, "saturate")
    sat = saturate_full(pres, bound=2 * N + 8)
    _count(counter, "iso-check")
    iso = categories_isomorphic(T, sat.category)
    if iso is None:
        raise ValidationError("reattached tape is not a chain of the right length")
    phi = iso[0]
    # 6. contents of the glued tape: the functor induced by (cl, b, cr) on the coproduct
    _count(counter, "induced")
    sym = b.obj_map[0]
    vals = []
    if cl:
        vals += list(cl.obj_map) + [cl.obj_map[-1], sym]
    vals.append(sym)
    if cr:
        vals += [sym, cr.obj_map[0]] + list(cr.obj_map)
    K = functor_from_objects(X, THREE_HAT, vals)
    if not structures_equal(comp(f, K), comp(g, K)):
        raise ValidationError("contents do not respect the gluing")
    induced = [None] * sat.category.n
    for x, cls in enumerate(pres.object_quotient):
        induced[cls] = vals[x]
    K2 = functor_from_objects(sat.category, THREE_HAT, induced)
    _count(counter, "transport")
    contents = comp(phi, K2)
    # 7-8. update the state register
    _count(counter, "state")
    # 9. move the head with the successor or the predecessor
    _count(counter, "move")
    head = comp(cfg.head, succ) if move == "R" else predecessor(nc, cfg.head)
    return TapeConfig(N, contents, head, q2)


def tm_run(cfg: TapeConfig, machine: Machine, max_steps: int = 50, counter: Counter | None = None):
    """Iterate :func:`tm_step` until a halting state or ``max_steps``; returns all configurations."""
    trace = [cfg]
    for _ in range(max_steps):
        if cfg.state in machine.halt:
            break
        cfg = tm_step(cfg, machine, counter)
        trace.append(cfg)
    return trace


# --------------------------------------------------------------------------
# the three reference machines

BINARY_INCREMENT = Machine.from_data(
    {
        "name": "binary-increment",
        "states": ["carry", "done"],
        "start": "carry",
        "halt": ["done"],
        "rules": [
            ["carry", "1", "carry", "0", "L"],
            ["carry", "0", "done", "1", "R"],
            ["carry", "_", "done", "1", "R"],
        ],
    }
)

UNARY_COPY = Machine.from_data(
    {
        "name": "unary-copy",
        "states": ["s1", "s2", "s3", "s4", "s5", "halt"],
        "start": "s1",
        "halt": ["halt"],
        "rules": [
            ["s1", "1", "s2", "_", "R"],
            ["s1", "_", "halt", "_", "R"],
            ["s2", "1", "s2", "1", "R"],
            ["s2", "_", "s3", "_", "R"],
            ["s3", "1", "s3", "1", "R"],
            ["s3", "_", "s4", "1", "L"],
            ["s4", "1", "s4", "1", "L"],
            ["s4", "_", "s5", "_", "L"],
            ["s5", "1", "s5", "1", "L"],
            ["s5", "_", "s1", "1", "R"],
        ],
    }
)

BUSY_BEAVER_2 = Machine.from_data(
    {
        "name": "busy-beaver-2",
        "states": ["A", "B", "H"],
        "start": "A",
        "halt": ["H"],
        "rules": [
            ["A", "_", "B", "1", "R"],
            ["A", "1", "B", "1", "L"],
            ["B", "_", "A", "1", "L"],
            ["B", "1", "H", "1", "R"],
        ],
    }
)

MACHINES = {m.name: m for m in (BINARY_INCREMENT, UNARY_COPY, BUSY_BEAVER_2)}


def step_op_count(cfg: TapeConfig, machine: Machine) -> int:
    c: Counter = Counter()
    tm_step(cfg, machine, c)
    return sum(c.values())


__all__ = [
    "BINARY_INCREMENT",
    "BUSY_BEAVER_2",
    "BoundaryHit",
    "MACHINES",
    "Machine",
    "NoRule",
    "SYMBOLS",
    "THREE_DOT",
    "THREE_HAT",
    "TapeConfig",
    "UNARY_COPY",
    "load_machine",
    "make_config",
    "step_op_count",
    "tm_run",
    "tm_step",
]
