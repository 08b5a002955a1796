"""Theorem 3's pointer programs: ``pointer(n)`` in O(log n) instructions, or O(1) given n in binary.

Both programs follow the proof's doubling pseudo-code: to double ``P_x`` walk a second
pointer ``PT`` from ``P_0`` to a copy of ``P_x``, advancing ``PX`` once per step.
"""

from __future__ import annotations

from .constructions import NumberCategory, build_number_category, number_pointer, successor
from .core import TWO_ISO, FunctorValue, ValidationError, chain, functor_from_objects, mark_valid, size_limits
from .engine import pointer
from .lang import Program, parse

LOG_HEADER = """INPUT P0 : FUNCTOR
INPUT P1 : FUNCTOR
INPUT SUCC : FUNCTOR
W := Target1(SUCC)
IDW := Ident0(W)
PX := Comp(P1, IDW)"""

# lines of LOG_HEADER plus the final RETURN: the constant c of the length bound
LOG_PROGRAM_CONSTANT = 7


def _double_block(k: int, bit: str) -> list[str]:
    """Lines for one binary digit after the leading 1: ``PX := 2*PX + bit``."""
    lines = [
        "PT := Comp(P0, IDW)",
        "PE := Comp(PX, IDW)",
        f"L{k}: IF PT == PE GOTO M{k}",
        "PX := Comp(PX, SUCC)",
        "PT := Comp(PT, SUCC)",
        f"IF PT == PT GOTO L{k}",
    ]
    if bit == "1":
        lines.append(f"M{k}: PX := Comp(PX, SUCC)")
    return lines


def log_pointer_program_source(n: int) -> str:
    if n < 1:
        raise ValidationError("logPointerProgram needs n >= 1")
    bits = format(n, "b")
    lines = LOG_HEADER.splitlines()
    pending = None  # label of a 0-digit's exit, attached to the following line
    for k, bit in enumerate(bits[1:], start=1):
        block = _double_block(k, bit)
        if pending:
            block[0] = f"{pending}: {block[0]}"
        lines += block
        pending = f"M{k}" if bit == "0" else None
    lines.append(f"{pending}: RETURN(PX)" if pending else "RETURN(PX)")
    return "\n".join(lines) + "\n"


def log_pointer_program(n: int) -> Program:
    """A program of at most ``7*floor(log2 n) + 7`` lines returning ``P_n`` from inputs
    ``P_0``, ``P_1`` and the successor of a truncation ``omega_N`` with ``N >= n``."""
    return parse(log_pointer_program_source(n))


def program_bits(program: Program) -> str:
    """Recover the binary digits driving a log pointer program (leading 1 included)."""
    bits = "1"
    labels = [ins.label for ins in program.instructions if ins.label]
    for lab in labels:
        if lab.startswith("L"):
            k = lab[1:]
            # a digit is 1 exactly when its exit label starts an increment line
            inc = any(
                ins.label == f"M{k}" and ins.kind == "assign" and ins.args == ("PX", "SUCC")
                for ins in program.instructions
            )
            bits += "1" if inc else "0"
    return bits


def pointer_inputs(N: int) -> tuple[NumberCategory, list[FunctorValue]]:
    """``[P_0, P_1, succ]`` on the truncation ``omega_N`` (call inside a size_limits scope
    large enough for ``N + 1`` objects)."""
    nc = build_number_category("chain", N)
    return nc, [number_pointer(nc, 0), number_pointer(nc, 1), successor(nc)]


def big_enough(N: int):
    """Size caps admitting the chain ``omega_N`` and its pointer programs."""
    return size_limits(max(64, N + 2), max(512, (N + 2) * (N + 3) // 2))


BINARY_INPUT_SOURCE = """INPUT P0 : FUNCTOR
INPUT SUCC : FUNCTOR
INPUT F : FUNCTOR
INPUT Q0 : FUNCTOR
INPUT QSUCC : FUNCTOR
INPUT ONE : FUNCTOR
W := Target1(SUCC)
IDW := Ident0(W)
Z := BANG_0_1
E := Comp(Z, Q0)
QEND, A := KanEx(Z, E)
QW := Target1(QSUCC)
IDQ := Ident0(QW)
Q := Comp(Q0, IDQ)
PX := Comp(P0, IDW)
LOOP: PT := Comp(P0, IDW)
PE := Comp(PX, IDW)
DBL: IF PT == PE GOTO BIT
PX := Comp(PX, SUCC)
PT := Comp(PT, SUCC)
IF PT == PT GOTO DBL
BIT: B := Comp(Q, F)
IF B == ONE GOTO INC
IF B == B GOTO NEXT
INC: PX := Comp(PX, SUCC)
NEXT: IF Q == QEND GOTO DONE
Q := Comp(Q, QSUCC)
IF Q == Q GOTO LOOP
DONE: RETURN(PX)
"""


def binary_input_pointer_program() -> Program:
    """One fixed program: given ``F: omega_L -> 2~`` listing the digits of n (most
    significant first) and the pointer/successor inputs, return ``P_n``.

    The last digit position ``QEND`` is the right Kan extension of the empty functor
    along ``0 -> 1``: the terminal object of ``omega_L``.
    """
    return parse(BINARY_INPUT_SOURCE)


def binary_inputs(n: int, N: int) -> list[FunctorValue]:
    """Inputs for :func:`binary_input_pointer_program` (``N >= n``)."""
    if n < 0 or N < n:
        raise ValidationError("need 0 <= n <= N")
    bits = [int(b) for b in format(n, "b")]
    nc = build_number_category("chain", N)
    Lc = chain(len(bits))
    mark_valid(Lc)
    F = mark_valid(functor_from_objects(Lc, TWO_ISO, bits))
    qs = mark_valid(functor_from_objects(Lc, Lc, [min(k + 1, len(bits) - 1) for k in range(len(bits))]))
    one = mark_valid(pointer(TWO_ISO, 1))
    return [number_pointer(nc, 0), successor(nc), F, mark_valid(pointer(Lc, 0)), qs, one]


__all__ = [
    "BINARY_INPUT_SOURCE",
    "LOG_PROGRAM_CONSTANT",
    "big_enough",
    "binary_input_pointer_program",
    "binary_inputs",
    "log_pointer_program",
    "log_pointer_program_source",
    "pointer_inputs",
    "program_bits",
]
