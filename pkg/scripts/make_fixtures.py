#!/usr/bin/env python3
"""Regenerate the JSON fixtures under tests/fixtures (structures, machines, programs)."""

from __future__ import annotations

import json
from pathlib import Path

from sammy import core, engine, programs, serialize, turing

ROOT = Path(__file__).resolve().parent.parent / "tests" / "fixtures"


def write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text if text.endswith("\n") else text + "\n")
    print("wrote", path.relative_to(ROOT.parent.parent))


def main() -> None:
    s = ROOT / "structures"
    write(s / "one.json", serialize.dumps(core.ONE))
    write(s / "two.json", serialize.dumps(core.TWO))
    write(s / "two_op.json", serialize.dumps(engine.op0(core.TWO)))
    write(s / "two_iso.json", serialize.dumps(core.TWO_ISO))
    write(s / "three_chain.json", serialize.dumps(core.chain(3)))
    write(s / "pow_two_two.json", serialize.dumps(engine.pow0(core.TWO, core.TWO)))
    write(s / "discrete_two.json", serialize.dumps(core.discrete(2)))
    write(s / "id_two.json", serialize.dumps(core.identity_functor(core.TWO)))
    write(s / "bang_two.json", serialize.dumps(engine.bang(core.TWO)))
    z2 = core.make_category(1, [(0, 0), (0, 0)], [0], {(0, 0): 0, (0, 1): 1, (1, 0): 1, (1, 1): 0})
    write(s / "z2.json", serialize.dumps(z2))
    # a broken category: the non-identity loop composes to a morphism that does not exist
    bad = serialize.to_data(z2)
    bad["compose"] = [[f, g, (h if (f, g) != (1, 1) else 1)] for f, g, h in bad["compose"]]
    bad["compose"] = [row for row in bad["compose"] if row != [1, 0, 1]] + [[1, 0, 0]]
    write(s / "bad_category.json", json.dumps(bad, indent=2))
    write(s / "not_json.json", "{ this is not json")

    m = ROOT / "machines"
    for machine in turing.MACHINES.values():
        write(m / f"{machine.name.replace('-', '_')}.json", json.dumps(machine.to_data(), indent=2))

    p = ROOT / "programs"
    write(p / "log727.sammy", "# input: builtin:pointer_inputs:N=1024\n" + programs.log_pointer_program_source(727))
    write(p / "binary727.sammy", "# input: builtin:binary_inputs:n=727,N=1024\n" + programs.BINARY_INPUT_SOURCE)


if __name__ == "__main__":
    main()
