"""The Sammy language: lexer, parser, printer, interpreter, and Goedel numbering.

Grammar (one statement per line; ``#`` starts a comment)::

    [LABEL:] VAR[, VAR] := OP(ARG, ...)
    [LABEL:] VAR := CONSTANT
    [LABEL:] IF V1 == V2 GOTO LABEL
    [LABEL:] INPUT VAR : KIND
    [LABEL:] RETURN(V1[, V2[, V3]])

``KanEx`` and ``KanLif`` produce two values (the functor and the natural
transformation); they may bind one or two targets.
"""

from __future__ import annotations

import itertools
import re
from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field

from . import core, engine, kan
from .core import (
    CAT,
    ONE,
    TWO,
    ZERO,
    ExplicitCategory,
    FunctorValue,
    KindError,
    NatTransValue,
    OpaqueCat,
    OpaqueFunctor,
    SammyError,
    SymbolicCategory,
    ensure_valid,
    functor_from_objects,
    kind_of,
    mark_valid,
    structures_equal,
)


# --------------------------------------------------------------------------
# errors


class SammySyntaxError(SammyError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column

    @property
    def name(self) -> str:
        return "SyntaxError"


class UnknownOperation(SammySyntaxError):
    @property
    def name(self) -> str:
        return "UnknownOperation"


class DuplicateLabel(SammySyntaxError):
    @property
    def name(self) -> str:
        return "DuplicateLabel"


class ReturnNotLast(SammySyntaxError):
    @property
    def name(self) -> str:
        return "ReturnNotLast"


class UnknownLabel(SammySyntaxError):
    @property
    def name(self) -> str:
        return "UnknownLabel"


class UnboundVariable(SammyError):
    pass


class StepLimit(SammyError):
    pass


class NoReturn(SammyError):
    pass


class InputMismatch(SammyError):
    pass


# --------------------------------------------------------------------------
# vocabulary

# name -> (number of arguments, allowed numbers of targets)
OPERATIONS: dict[str, tuple[int, tuple[int, ...]]] = {
    "Source1": (1, (1,)),
    "Source2": (1, (1,)),
    "Target1": (1, (1,)),
    "Target2": (1, (1,)),
    "Ident0": (1, (1,)),
    "Ident1": (1, (1,)),
    "Op0": (1, (1,)),
    "Op1": (1, (1,)),
    "Comp": (2, (1,)),
    "Hcomp": (2, (1,)),
    "Vcomp": (2, (1,)),
    "Pow0": (2, (1,)),
    "Pow1": (2, (1,)),
    "KanEx": (2, (1, 2)),
    "KanExInd": (4, (1,)),
    "KanLif": (2, (1, 2)),
    "KanLifInd": (4, (1,)),
    "CircDot": (1, (1,)),
}

CONSTANT_NAMES = ("C0", "C1", "C2", "CAT", "S", "T", "BANG_0_1", "BANG_0_2", "BANG_0_CAT", "BANG_CAT_1", "BANG_2_1")
KINDS = ("CATEGORY", "FUNCTOR", "NATTRANS")
KEYWORDS = ("IF", "GOTO", "INPUT", "RETURN")
PUNCTUATION = ("\n", ":=", "(", ")", ",", ":", "==")
IDENT_CHARS = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789_"

RESERVED = frozenset(OPERATIONS) | frozenset(CONSTANT_NAMES) | frozenset(KINDS) | frozenset(KEYWORDS)

# the fixed Goedel token table: digit k + 1 encodes TOKENS[k]
TOKENS: tuple[str, ...] = (
    PUNCTUATION + KEYWORDS + tuple(OPERATIONS) + CONSTANT_NAMES + KINDS + tuple("#" + c for c in IDENT_CHARS)
)
TOKEN_INDEX = {t: i for i, t in enumerate(TOKENS)}
BASE = len(TOKENS)


def constants() -> dict[str, object]:
    s = functor_from_objects(ONE, TWO, (0,))
    t = functor_from_objects(ONE, TWO, (1,))
    return {
        "C0": ZERO,
        "C1": ONE,
        "C2": TWO,
        "CAT": CAT,
        "S": s,
        "T": t,
        "BANG_0_1": core.FunctorValue(ZERO, ONE, (), ()),
        "BANG_0_2": core.FunctorValue(ZERO, TWO, (), ()),
        "BANG_0_CAT": OpaqueFunctor("BANG_0_CAT", ZERO, CAT),
        "BANG_CAT_1": OpaqueFunctor("BANG_CAT_1", CAT, ONE),
        "BANG_2_1": functor_from_objects(TWO, ONE, (0, 0)),
    }


_CONSTANTS = {k: mark_valid(v) for k, v in constants().items()}


# --------------------------------------------------------------------------
# program representation


@dataclass(frozen=True)
class Instruction:
    kind: str  # assign | const | if | input | return
    label: str | None = None
    targets: tuple[str, ...] = ()
    op: str | None = None
    args: tuple[str, ...] = ()
    line: int = 0  # source line, for diagnostics only

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Instruction):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def _key(self) -> tuple:
        return (self.kind, self.label, self.targets, self.op, self.args)

    def text(self) -> str:
        prefix = f"{self.label}: " if self.label else ""
        if self.kind == "assign":
            return f"{prefix}{', '.join(self.targets)} := {self.op}({', '.join(self.args)})"
        if self.kind == "const":
            return f"{prefix}{self.targets[0]} := {self.op}"
        if self.kind == "if":
            return f"{prefix}IF {self.args[0]} == {self.args[1]} GOTO {self.op}"
        if self.kind == "input":
            return f"{prefix}INPUT {self.targets[0]} : {self.op}"
        return f"{prefix}RETURN({', '.join(self.args)})"

    def tokens(self) -> list[str]:
        out: list[str] = []
        if self.label:
            out += [_ident(self.label), ":"]
        if self.kind == "assign":
            out += _commalist(self.targets) + [":=", self.op, "("] + _commalist(self.args) + [")"]
        elif self.kind == "const":
            out += [_ident(self.targets[0]), ":=", self.op]
        elif self.kind == "if":
            out += ["IF", _ident(self.args[0]), "==", _ident(self.args[1]), "GOTO", _ident(self.op)]
        elif self.kind == "input":
            out += ["INPUT", _ident(self.targets[0]), ":", self.op]
        else:
            out += ["RETURN", "("] + _commalist(self.args) + [")"]
        return out

    @property
    def is_operation(self) -> bool:
        """Counts toward program cost (everything except INPUT and RETURN)."""
        return self.kind in ("assign", "const", "if")


def _ident(name: str) -> str:
    return "$" + name


def _commalist(names: Sequence[str]) -> list[str]:
    out: list[str] = []
    for i, n in enumerate(names):
        if i:
            out.append(",")
        out.append(_ident(n))
    return out


@dataclass(frozen=True)
class Program:
    instructions: tuple[Instruction, ...]
    labels: dict = field(compare=False, hash=False, default_factory=dict)

    @property
    def text(self) -> str:
        return "\n".join(i.text() for i in self.instructions)

    def __str__(self) -> str:
        return self.text

    @property
    def inputs(self) -> tuple[tuple[str, str], ...]:
        return tuple((i.targets[0], i.op) for i in self.instructions if i.kind == "input")

    @property
    def cost(self) -> int:
        """Number of instructions excluding INPUT and RETURN."""
        return sum(1 for i in self.instructions if i.is_operation)

    def token_list(self) -> list[str]:
        """The canonical token serialization; identifiers are spelled by characters."""
        out: list[str] = []
        for k, ins in enumerate(self.instructions):
            if k:
                out.append("\n")
            for t in ins.tokens():
                if t.startswith("$"):
                    out.extend("#" + c for c in t[1:])
                else:
                    out.append(t)
        return out

    @property
    def token_count(self) -> int:
        return len(self.token_list())


# --------------------------------------------------------------------------
# lexer and parser

_TOKEN_RE = re.compile(r"\s*(?:(:=|==|[(),:])|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


def _lex(line: str, lineno: int) -> list[tuple[str, str, int]]:
    """Tokens of one line as (class, text, column); class is 'p', 'w'."""
    toks = []
    pos = 0
    line = line.rstrip()
    while pos < len(line):
        m = _TOKEN_RE.match(line, pos)
        if m is None:
            break
        if m.group(3) is not None:
            raise SammySyntaxError(f"unexpected character {m.group(3)!r}", lineno, m.start(3) + 1)
        if m.group(1) is not None:
            toks.append(("p", m.group(1), m.start(1) + 1))
        else:
            toks.append(("w", m.group(2), m.start(2) + 1))
        pos = m.end()
    return toks


class _Line:
    def __init__(self, toks, lineno: int, length: int):
        self.toks = toks
        self.i = 0
        self.lineno = lineno
        self.length = length

    def peek(self, k: int = 0):
        j = self.i + k
        return self.toks[j] if j < len(self.toks) else None

    def col(self) -> int:
        t = self.peek()
        return t[2] if t else self.length + 1

    def error(self, msg: str, cls=SammySyntaxError):
        raise cls(msg, self.lineno, self.col())

    def punct(self, p: str) -> None:
        t = self.peek()
        if t is None or t[0] != "p" or t[1] != p:
            self.error(f"expected {p!r}")
        self.i += 1

    def word(self) -> str:
        t = self.peek()
        if t is None or t[0] != "w":
            self.error("expected a name")
        self.i += 1
        return t[1]

    def variable(self) -> str:
        t = self.peek()
        name = self.word()
        if name in RESERVED:
            raise SammySyntaxError(f"{name!r} is reserved and cannot be a variable", self.lineno, t[2])
        return name

    def at(self, cls: str, text: str | None = None) -> bool:
        t = self.peek()
        return t is not None and t[0] == cls and (text is None or t[1] == text)

    def done(self) -> None:
        if self.peek() is not None:
            self.error("unexpected trailing input")


def _parse_line(ln: _Line) -> Instruction:
    label = None
    if ln.at("w") and ln.peek(1) is not None and ln.peek(1)[:2] == ("p", ":"):
        label = ln.variable()
        ln.punct(":")
    if ln.at("w", "IF"):
        ln.i += 1
        a = ln.variable()
        ln.punct("==")
        b = ln.variable()
        if not ln.at("w", "GOTO"):
            ln.error("expected GOTO")
        ln.i += 1
        target = ln.variable()
        ln.done()
        return Instruction("if", label, (), target, (a, b), ln.lineno)
    if ln.at("w", "INPUT"):
        ln.i += 1
        v = ln.variable()
        ln.punct(":")
        k = ln.word()
        if k not in KINDS:
            ln.i -= 1
            ln.error(f"unknown kind {k!r}")
        ln.done()
        return Instruction("input", label, (v,), k, (), ln.lineno)
    if ln.at("w", "RETURN"):
        ln.i += 1
        ln.punct("(")
        args = [ln.variable()]
        while ln.at("p", ","):
            ln.i += 1
            args.append(ln.variable())
        ln.punct(")")
        ln.done()
        if len(args) > 3:
            raise SammySyntaxError("RETURN takes at most three values", ln.lineno, 1)
        return Instruction("return", label, (), None, tuple(args), ln.lineno)
    targets = [ln.variable()]
    while ln.at("p", ","):
        ln.i += 1
        targets.append(ln.variable())
    ln.punct(":=")
    t = ln.peek()
    name = ln.word()
    if ln.at("p", "("):
        if name not in OPERATIONS:
            raise UnknownOperation(f"unknown operation {name!r}", ln.lineno, t[2])
        ln.i += 1
        args = []
        if not ln.at("p", ")"):
            args.append(ln.variable())
            while ln.at("p", ","):
                ln.i += 1
                args.append(ln.variable())
        ln.punct(")")
        ln.done()
        arity, outs = OPERATIONS[name]
        if len(args) != arity:
            raise SammySyntaxError(f"{name} takes {arity} argument(s), got {len(args)}", ln.lineno, t[2])
        if len(targets) not in outs:
            raise SammySyntaxError(f"{name} cannot bind {len(targets)} target(s)", ln.lineno, 1)
        return Instruction("assign", label, tuple(targets), name, tuple(args), ln.lineno)
    ln.done()
    if name not in CONSTANT_NAMES:
        if name in OPERATIONS:
            raise SammySyntaxError(f"operation {name} needs arguments", ln.lineno, t[2])
        raise SammySyntaxError(f"expected a constant or an operation, got {name!r}", ln.lineno, t[2])
    if len(targets) != 1:
        raise SammySyntaxError("a constant binds exactly one target", ln.lineno, 1)
    return Instruction("const", label, tuple(targets), name, (), ln.lineno)


def parse(text: str) -> Program:
    """Parse Sammy source text; see the module docstring for the grammar."""
    instrs: list[Instruction] = []
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.split("#", 1)[0]
        toks = _lex(line, lineno)
        if not toks:
            continue
        instrs.append(_parse_line(_Line(toks, lineno, len(line.rstrip()))))
    labels: dict[str, int] = {}
    for k, ins in enumerate(instrs):
        if ins.label is not None:
            if ins.label in labels:
                raise DuplicateLabel(f"label {ins.label!r} defined twice", ins.line, 1)
            labels[ins.label] = k
        if ins.kind == "return" and k != len(instrs) - 1:
            raise ReturnNotLast("RETURN must be the last line", ins.line, 1)
    for ins in instrs:
        if ins.kind == "if" and ins.op not in labels:
            raise UnknownLabel(f"unknown label {ins.op!r}", ins.line, 1)
    return Program(tuple(instrs), labels)


# --------------------------------------------------------------------------
# interpreter


@dataclass(frozen=True)
class RunResult:
    values: tuple
    steps: int  # executed instructions, INPUT and RETURN included
    ops: int  # executed instructions that count as operations
    env: dict = field(compare=False, default_factory=dict)


_VALIDATE_LIMIT = 20000  # results larger than this are trusted (closure of lawful ops)


def _need(v, kinds: tuple[str, ...], op: str, pos: int):
    k = kind_of(v)
    if k not in kinds:
        raise KindError(f"{op}: argument {pos} must be a {' or '.join(kinds)}, got a {k}")
    return v


def _concrete(v, op: str):
    if isinstance(v, (OpaqueCat, OpaqueFunctor)):
        raise SymbolicCategory(f"{op}: Cat is symbolic and cannot be tabulated")
    return v


def _as_nat(v, op: str, pos: int) -> NatTransValue:
    """Functors are accepted where a natural transformation is expected (their identity)."""
    if isinstance(v, FunctorValue):
        return engine.identity_nat(v)
    _need(v, ("nattrans",), op, pos)
    return v


def apply_operation(op: str, args: Sequence[object], verify: str = "auto") -> tuple:
    """Evaluate one Table-1 operation; always returns a tuple of results."""
    C, F, N = ("category",), ("functor",), ("nattrans",)
    if op in ("Source1", "Target1"):
        f = _need(args[0], F, op, 1)
        return (f.source if op == "Source1" else f.target,)
    if op in ("Source2", "Target2"):
        a = _need(args[0], N, op, 1)
        return (a.source if op == "Source2" else a.target,)
    if op == "Ident0":
        c = _need(args[0], C, op, 1)
        if isinstance(c, OpaqueCat):
            return (OpaqueFunctor("ID_CAT", CAT, CAT),)
        return (core.identity_functor(c),)
    if op == "Ident1":
        f = _concrete(_need(args[0], F, op, 1), op)
        return (engine.identity_nat(f),)
    if op == "Op0":
        return (engine.op0(_concrete(_need(args[0], C, op, 1), op)),)
    if op == "Op1":
        return (engine.op1(_concrete(_need(args[0], F, op, 1), op)),)
    if op == "CircDot":
        c = _concrete(_need(args[0], C, op, 1), op)
        return (engine.composition_functor(c).functor,)
    if op == "Pow0":
        a = _concrete(_need(args[0], C, op, 1), op)
        b = _concrete(_need(args[1], C, op, 2), op)
        return (engine.pow0(a, b),)
    if op in ("Comp", "Pow1", "KanEx", "KanLif"):
        f = _concrete(_need(args[0], F, op, 1), op)
        g = _concrete(_need(args[1], F, op, 2), op)
        if op == "Comp":
            return (engine.comp(f, g),)
        if op == "Pow1":
            return (engine.pow1(f, g),)
        if op == "KanEx":
            return kan.kan_ext_right(f, g, verify)
        return kan.kan_lift_right(f, g, verify)
    if op in ("Hcomp", "Vcomp"):
        a = _concrete(_as_nat(args[0], op, 1), op)
        b = _concrete(_as_nat(args[1], op, 2), op)
        return (engine.hcomp(a, b) if op == "Hcomp" else engine.vcomp(a, b),)
    if op in ("KanExInd", "KanLifInd"):
        g = _concrete(_need(args[0], F, op, 1), op)
        f = _concrete(_need(args[1], F, op, 2), op)
        h = _concrete(_need(args[2], F, op, 3), op)
        beta = _as_nat(args[3], op, 4)
        if op == "KanExInd":
            return (kan.kan_ext_induced(g, f, h, beta, verify=verify),)
        return (kan.kan_lift_induced(g, f, h, beta, verify=verify),)
    raise KindError(f"unknown operation {op}")


def _size(v) -> int:
    if isinstance(v, ExplicitCategory):
        return len(v.morphisms)
    if isinstance(v, FunctorValue):
        return len(v.mor_map) + len(v.target.morphisms)
    if isinstance(v, NatTransValue):
        return _size(v.source)
    return 0


def _check_result(v) -> None:
    if isinstance(v, (OpaqueCat, OpaqueFunctor)):
        return
    if _size(v) <= _VALIDATE_LIMIT:
        ensure_valid(v, "operation result")
    else:
        mark_valid(v)


def run(
    program: Program | str,
    inputs: Sequence[object] = (),
    max_steps: int = 100_000,
    verify: str = "auto",
    counter: dict | None = None,
) -> RunResult:
    """Execute ``program``; returns the RETURN values with step and op counts.

    ``counter``, when given, accumulates per-operation execution counts.
    """
    if isinstance(program, str):
        program = parse(program)
    decls = program.inputs
    if len(inputs) != len(decls):
        raise InputMismatch(f"program declares {len(decls)} input(s), got {len(inputs)}")
    for (name, kindtag), v in zip(decls, inputs):
        if kind_of(v) != kindtag.lower():
            raise KindError(f"input {name} must be a {kindtag.lower()}, got a {kind_of(v)}")
        if not isinstance(v, (OpaqueCat, OpaqueFunctor)):
            if _size(v) <= _VALIDATE_LIMIT:
                ensure_valid(v, f"input {name}")
    instrs = program.instructions
    labels = program.labels or {ins.label: k for k, ins in enumerate(instrs) if ins.label}
    env: dict[str, object] = {}
    next_input = 0
    pc = steps = ops = 0

    def get(name: str):
        try:
            return env[name]
        except KeyError:
            raise UnboundVariable(f"variable {name!r} is unbound") from None

    while pc < len(instrs):
        steps += 1
        if steps > max_steps:
            raise StepLimit(f"exceeded {max_steps} steps")
        ins = instrs[pc]
        pc += 1
        if ins.is_operation:
            ops += 1
            if counter is not None:
                counter[ins.op if ins.kind != "if" else "IF"] = counter.get(ins.op if ins.kind != "if" else "IF", 0) + 1
        if ins.kind == "const":
            env[ins.targets[0]] = _CONSTANTS[ins.op]
        elif ins.kind == "assign":
            results = apply_operation(ins.op, [get(a) for a in ins.args], verify)
            for name, val in zip(ins.targets, results):
                _check_result(val)
                env[name] = val
        elif ins.kind == "if":
            if structures_equal(get(ins.args[0]), get(ins.args[1])):
                pc = labels[ins.op]
        elif ins.kind == "input":
            env[ins.targets[0]] = inputs[next_input]
            next_input += 1
        else:
            return RunResult(tuple(get(a) for a in ins.args), steps, ops, env)
    raise NoReturn("program ended without RETURN")


# --------------------------------------------------------------------------
# Goedel numbering


def tokens_to_code(tokens: Sequence[str]) -> int:
    """Bijective base-``BASE`` numeral: shorter token lists always get smaller codes."""
    n = 0
    for t in tokens:
        n = n * BASE + TOKEN_INDEX[t] + 1
    return n


def code_to_tokens(n: int) -> list[str]:
    if n < 0:
        raise ValueError("codes are nonnegative")
    out = []
    while n > 0:
        n, r = divmod(n - 1, BASE)
        out.append(TOKENS[r])
    return out[::-1]


def tokens_to_text(tokens: Sequence[str]) -> str:
    """Render tokens as source text (identifier characters are concatenated)."""
    out: list[str] = []
    prev_word = False
    for t in tokens:
        if t.startswith("#"):
            if not prev_word and out and out[-1] not in ("(", "\n", " "):
                out.append(" ")
            out.append(t[1:])
            prev_word = True
            continue
        prev_word = False
        if t == "\n":
            out.append("\n")
        elif t in ("(", ")", ","):
            out.append(t)
        else:
            if out and out[-1] not in ("\n", "("):
                out.append(" ")
            out.append(t)
    return "".join(out)


def encode(program: Program | str) -> int:
    if isinstance(program, str):
        program = parse(program)
    return tokens_to_code(program.token_list())


def decode(n: int) -> Program | None:
    """The program with code ``n``, or ``None`` if ``n`` is not a canonical valid code."""
    if n <= 0:
        return None
    tokens = code_to_tokens(n)
    try:
        p = parse(tokens_to_text(tokens))
    except SammyError:
        return None
    if not p.instructions or p.token_list() != tokens:
        return None
    return p


# --------------------------------------------------------------------------
# enumeration

ALPHABET = ("X", "Y", "Z", "W", "U", "V", "A", "B")


def _line_shapes(alphabet: Sequence[str]) -> Iterator[tuple[int, list[str]]]:
    """Every unlabeled line as (token count, text fragments) over ``alphabet``."""
    for v in alphabet:
        for c in CONSTANT_NAMES:
            yield 3, f"{v} := {c}"
    for v in alphabet:
        yield 4, f"RETURN({v})"
        for k in KINDS:
            yield 4, f"INPUT {v} : {k}"
    for a in alphabet:
        for b in alphabet:
            yield 6, f"RETURN({a}, {b})"
            for lab in alphabet:
                yield 6, f"IF {a} == {b} GOTO {lab}"
    for a, b, c in itertools.product(alphabet, repeat=3):
        yield 8, f"RETURN({a}, {b}, {c})"
    for op, (arity, outs) in OPERATIONS.items():
        for nt in outs:
            for targets in itertools.product(alphabet, repeat=nt):
                for args in itertools.product(alphabet, repeat=arity):
                    count = (2 * nt - 1) + 1 + 1 + 1 + (2 * arity - 1) + 1
                    yield count, f"{', '.join(targets)} := {op}({', '.join(args)})"


def enumerate_programs(max_tokens: int, alphabet: Sequence[str] = ALPHABET) -> Iterator[Program]:
    """Every valid program with at most ``max_tokens`` tokens, in increasing Goedel code.

    Lines may carry labels drawn from ``alphabet``; programs have at least one line.
    """
    lines: dict[int, list[str]] = {}
    for count, text in _line_shapes(alphabet):
        if count <= max_tokens:
            lines.setdefault(count, []).append(text)
            if count + 2 <= max_tokens:
                for lab in alphabet:
                    lines.setdefault(count + 2, []).append(f"{lab}: {text}")

    def programs(budget: int) -> Iterator[list[str]]:
        """Line lists whose total token count (with separators) is exactly ``budget``."""
        for count, texts in lines.items():
            if count == budget:
                for t in texts:
                    yield [t]
            elif count + 1 < budget:
                for rest in programs(budget - count - 1):
                    for t in texts:
                        yield [t] + rest

    for total in range(1, max_tokens + 1):
        batch = []
        for ls in programs(total):
            try:
                p = parse("\n".join(ls))
            except SammyError:
                continue
            batch.append((encode(p), p))
        batch.sort(key=lambda cp: cp[0])
        for _, p in batch:
            yield p
