from __future__ import annotations

import math

import pytest

from sammy.constructions import build_number_category, number_pointer
from sammy.core import ValidationError, structures_equal
from sammy.lang import run
from sammy.programs import (
    LOG_PROGRAM_CONSTANT,
    big_enough,
    binary_input_pointer_program,
    binary_inputs,
    log_pointer_program,
    log_pointer_program_source,
    pointer_inputs,
    program_bits,
)


def _line_count(program) -> int:
    return len(program.instructions)


def test_length_bound_all_n():
    assert LOG_PROGRAM_CONSTANT <= 10
    for n in range(1, 1025):
        p = log_pointer_program(n)
        bound = 7 * math.ceil(math.log2(n)) + LOG_PROGRAM_CONSTANT if n > 1 else LOG_PROGRAM_CONSTANT
        assert _line_count(p) <= bound


@pytest.mark.parametrize("n", range(1, 65))
def test_log_program_returns_pointer(n):
    with big_enough(64):
        nc, inputs = pointer_inputs(64)
        out = run(log_pointer_program(n), inputs).values[0]
        assert structures_equal(out, number_pointer(nc, n))


def test_727_bits_and_value():
    p = log_pointer_program(727)
    assert program_bits(p) == "1011010111" == format(727, "b")
    with big_enough(1024):
        nc, inputs = pointer_inputs(1024)
        assert run(p, inputs).values[0].obj_map == (727,)


@pytest.mark.parametrize("n", range(0, 65))
def test_binary_input_program(n):
    prog = binary_input_pointer_program()
    with big_enough(64):
        nc = build_number_category("chain", 64)
        out = run(prog, binary_inputs(n, 64)).values[0]
        assert structures_equal(out, number_pointer(nc, n))


def test_binary_input_program_is_constant_size():
    prog = binary_input_pointer_program()
    # one fixed program for every n: its size does not depend on n
    assert prog.cost < 30
    assert "KanEx" in prog.text


def test_bad_arguments():
    with pytest.raises(ValidationError):
        log_pointer_program_source(0)
    with pytest.raises(ValidationError):
        binary_inputs(5, 3)
