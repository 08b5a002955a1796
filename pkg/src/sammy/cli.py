"""The ``sammy`` command line.

Exit codes: 0 ok; 1 I/O error; 2 parse error (program or structure file);
3 runtime error; 4 resource limit; 5 not found / not isomorphic / invalid.

Input structures are JSON files (see :mod:`sammy.serialize`) or intrinsics written
``builtin:NAME[:key=value]...``; ``.sammy`` files may list their default inputs in
``# input: SPEC`` comment lines.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from collections.abc import Sequence
from pathlib import Path

from . import constructions, core, engine, programs, serialize, turing
from .core import SammyError, SizeLimit, size_limits
from .kolmogorov import ksearch
from .lang import SammySyntaxError, StepLimit, encode, enumerate_programs, parse, run
from .presentation import PossiblyInfinite, saturation_bound

EXIT_OK, EXIT_IO, EXIT_PARSE, EXIT_RUNTIME, EXIT_RESOURCE, EXIT_NEGATIVE = 0, 1, 2, 3, 4, 5


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


# --------------------------------------------------------------------------
# builtins


def _int(params: dict, key: str, default: int | None = None) -> int:
    if key not in params:
        if default is None:
            raise CliError(f"builtin needs {key}=...", EXIT_PARSE)
        return default
    try:
        return int(params[key])
    except ValueError:
        raise CliError(f"{key} must be an integer", EXIT_PARSE) from None


def _number(kind: str):
    return lambda p: [constructions.build_number_category(kind, _int(p, "N")).category]


BUILTINS = {
    "C0": lambda p: [core.ZERO],
    "C1": lambda p: [core.ONE],
    "C2": lambda p: [core.TWO],
    "chain": lambda p: [core.chain(_int(p, "n"))],
    "discrete": lambda p: [core.discrete(_int(p, "n"))],
    "codiscrete": lambda p: [core.codiscrete(_int(p, "n"))],
    "omega": _number("chain"),
    "omega_d": _number("discrete"),
    "omega_i": _number("groupoid"),
    "omega_bar": _number("top"),
    "omega_i_paper": lambda p: [constructions.omega_i_paper(_int(p, "N"))],
    "omega_d_paper": lambda p: [constructions.omega_d_paper(_int(p, "N"))],
    "successor": lambda p: [constructions.successor(constructions.build_number_category("chain", _int(p, "N")))],
    "pointer": lambda p: [
        constructions.number_pointer(constructions.build_number_category("chain", _int(p, "N")), _int(p, "n"))
    ],
    "identity": lambda p: [core.identity_functor(core.chain(_int(p, "n")))],
    "lollipop": lambda p: [constructions.lollipop(_int(p, "m"), _int(p, "n"))],
    "pointer_inputs": lambda p: programs.pointer_inputs(_int(p, "N"))[1],
    "binary_inputs": lambda p: programs.binary_inputs(_int(p, "n"), _int(p, "N")),
    "arrow": lambda p: [engine.arrow_category(core.chain(_int(p, "n"))).category],
}


def parse_builtin(spec: str) -> list:
    parts = spec.split(":")[1:]
    if not parts or parts[0] not in BUILTINS:
        raise CliError(f"unknown builtin {spec!r}; known: {', '.join(sorted(BUILTINS))}", EXIT_PARSE)
    params = {}
    for kv in parts[1:]:
        for item in kv.split(","):
            if "=" not in item:
                raise CliError(f"bad builtin parameter {item!r}", EXIT_PARSE)
            k, v = item.split("=", 1)
            params[k] = v
    N = max((_int(params, k) for k in ("N", "n") if k in params), default=0)
    with programs.big_enough(N + 2):
        vals = BUILTINS[parts[0]](params)
    return [core.mark_valid(v) for v in vals]


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise CliError(f"cannot read {path}: {e.strerror or e}", EXIT_IO) from None


def load_structures(spec: str) -> list:
    if spec.startswith("builtin:"):
        return parse_builtin(spec)
    text = _read(spec)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise CliError(f"{spec}: invalid JSON: {e}", EXIT_PARSE) from None
    try:
        items = data if isinstance(data, list) else [data]
        return [serialize.from_data(d) for d in items]
    except (KeyError, TypeError, ValueError) as e:
        raise CliError(f"{spec}: malformed structure: {e}", EXIT_PARSE) from None


def load_one(spec: str):
    vals = load_structures(spec)
    if len(vals) != 1:
        raise CliError(f"{spec}: expected exactly one structure", EXIT_PARSE)
    return vals[0]


def render(values: Sequence[object], fmt: str) -> str:
    if fmt == "json":
        data = [serialize.to_data(v) for v in values]
        return json.dumps(data[0] if len(data) == 1 else data, indent=2)
    if fmt == "dot":
        return "\n".join(serialize.to_dot(v, f"R{k}") for k, v in enumerate(values))
    return "\n".join(serialize.to_text(v) for v in values)


# --------------------------------------------------------------------------
# subcommands


def cmd_run(a) -> int:
    text = _read(a.program)
    prog = parse(text)
    specs = list(a.inputs)
    if not specs:
        specs = [ln.split(":", 1)[1].strip() for ln in text.splitlines() if ln.strip().startswith("# input:")]
    inputs = [v for s in specs for v in load_structures(s)]
    res = run(prog, inputs, max_steps=a.max_steps)
    print(render(res.values, a.format))
    if a.stats:
        print(json.dumps({"steps": res.steps, "ops": res.ops}), file=sys.stderr)
    return EXIT_OK


def cmd_check(a) -> int:
    v = load_one(a.path)
    rep = core.validate(v)
    errors = [{"law": v.law, "witness": [str(w) for w in v.witness]} for v in rep.violations]
    print(json.dumps({"ok": rep.ok, "violations": errors}, indent=2))
    return EXIT_OK if rep.ok else EXIT_NEGATIVE


def cmd_iso(a) -> int:
    x, y = load_one(a.a), load_one(a.b)
    ok = core.structures_isomorphic(x, y)
    out: dict = {"isomorphic": ok}
    if ok and core.kind_of(x) == "category" and not isinstance(x, core.OpaqueCat):
        F, _ = core.categories_isomorphic(x, y)
        out["witness"] = {"object_map": list(F.obj_map), "morphism_map": list(F.mor_map)}
    print(json.dumps(out, indent=2))
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_export(a) -> int:
    print(render([load_one(a.path)], a.format))
    return EXIT_OK


def cmd_build(a) -> int:
    params = ",".join(a.params)
    spec = f"builtin:{a.name}" + (f":{params}" if params else "")
    print(render(load_structures(spec), a.format))
    return EXIT_OK


def cmd_ksearch(a) -> int:
    target = load_one(a.target)
    givens = [v for g in a.given for v in load_structures(g)]
    res = ksearch(target, givens, a.budget, parallel=a.parallel)
    print(json.dumps(res.to_json(), indent=2))
    return EXIT_OK if res.found else EXIT_NEGATIVE


def cmd_enumerate(a) -> int:
    for k, p in enumerate(enumerate_programs(a.max_tokens)):
        if a.limit is not None and k >= a.limit:
            break
        print(json.dumps({"code": encode(p), "source": p.text}))
    return EXIT_OK


def cmd_tm(a) -> int:
    machine = turing.MACHINES.get(a.machine)
    if machine is None:
        try:
            machine = turing.load_machine(a.machine)
        except OSError as e:
            raise CliError(f"cannot read {a.machine}: {e.strerror or e}", EXIT_IO) from None
        except (json.JSONDecodeError, KeyError, ValueError) as e:
            raise CliError(f"{a.machine}: malformed machine: {e}", EXIT_PARSE) from None
    cfg = turing.make_config(a.tape, a.head, a.state or machine.start)
    trace = turing.tm_run(cfg, machine, a.steps)
    last = trace[-1]
    print(
        json.dumps(
            {"tape": last.tape, "head": last.position, "state": last.state, "steps": len(trace) - 1,
             "halted": last.state in machine.halt},
            indent=2,
        )
    )
    return EXIT_OK


# --------------------------------------------------------------------------


def _env_int(name: str, default: int) -> int:
    v = os.environ.get(name)
    if v is None:
        return default
    try:
        return int(v)
    except ValueError:
        raise CliError(f"environment variable {name} must be an integer", EXIT_PARSE) from None


def _add_config_flags(p: argparse.ArgumentParser, default) -> None:
    p.add_argument("--max-steps", type=int, default=default)
    p.add_argument("--max-objects", type=int, default=default)
    p.add_argument("--max-morphisms", type=int, default=default)
    p.add_argument("--saturation-bound", type=int, default=default)
    p.add_argument("--format", choices=("json", "dot", "text"), default=default)
    p.add_argument("--parallel", type=int, default=default, help="worker processes for ksearch")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sammy", description="Interpreter and runtime for the Sammy language.")
    _add_config_flags(p, None)
    # the same flags are accepted after the subcommand; SUPPRESS keeps an absent flag
    # from overwriting one given before it
    common = argparse.ArgumentParser(add_help=False)
    _add_config_flags(common, argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", parents=[common], help="run a .sammy program")
    r.add_argument("program")
    r.add_argument("inputs", nargs="*", help="JSON files or builtin:NAME[:k=v,...]")
    r.add_argument("--stats", action="store_true", help="print step/op counts to stderr")
    r.set_defaults(func=cmd_run)

    c = sub.add_parser("check", parents=[common], help="validate a structure file")
    c.add_argument("path")
    c.set_defaults(func=cmd_check)

    i = sub.add_parser("iso", parents=[common], help="decide isomorphism of two structures")
    i.add_argument("a")
    i.add_argument("b")
    i.set_defaults(func=cmd_iso)

    e = sub.add_parser("export", parents=[common], help="re-emit a structure in the chosen format")
    e.add_argument("path")
    e.set_defaults(func=cmd_export)

    b = sub.add_parser("build", parents=[common], help="run a standard builder")
    b.add_argument("name", choices=sorted(BUILTINS))
    b.add_argument("params", nargs="*", help="key=value parameters, e.g. N=4")
    b.set_defaults(func=cmd_build)

    k = sub.add_parser("ksearch", parents=[common], help="shortest-program search")
    k.add_argument("target")
    k.add_argument("--budget", type=int, default=4)
    k.add_argument("--given", action="append", default=[])
    k.set_defaults(func=cmd_ksearch)

    n = sub.add_parser("enumerate", parents=[common], help="list valid programs in Goedel order")
    n.add_argument("--max-tokens", type=int, default=6)
    n.add_argument("--limit", type=int, default=None)
    n.set_defaults(func=cmd_enumerate)

    t = sub.add_parser("tm", parents=[common], help="run a Turing machine through the categorical step")
    t.add_argument("machine", help="builtin machine name or JSON file")
    t.add_argument("--tape", required=True)
    t.add_argument("--head", type=int, default=0)
    t.add_argument("--state", default=None)
    t.add_argument("--steps", type=int, default=50)
    t.set_defaults(func=cmd_tm)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    a = parser.parse_args(argv)
    try:
        a.max_steps = a.max_steps if a.max_steps is not None else _env_int("MAX_STEPS", 100_000)
        max_objects = a.max_objects if a.max_objects is not None else _env_int("MAX_OBJECTS", 64)
        max_morphisms = a.max_morphisms if a.max_morphisms is not None else _env_int("MAX_MORPHISMS", 512)
        bound = a.saturation_bound if a.saturation_bound is not None else _env_int("SATURATION_BOUND", 32)
        a.format = a.format or os.environ.get("FORMAT", "json")
        if a.format not in ("json", "dot", "text"):
            raise CliError(f"unknown format {a.format!r}", EXIT_PARSE)
        a.parallel = a.parallel if a.parallel is not None else _env_int("PARALLEL", 0)
        if min(a.max_steps, max_objects, max_morphisms, bound) < 1:
            raise CliError("limits must be positive", EXIT_PARSE)
        with size_limits(max_objects, max_morphisms), saturation_bound(bound):
            return a.func(a)
    except CliError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.code
    except SammySyntaxError as e:
        print(f"{e.name}: {e}", file=sys.stderr)
        return EXIT_PARSE
    except (SizeLimit, StepLimit, PossiblyInfinite) as e:
        print(f"{e.name}: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    except SammyError as e:
        print(f"{e.name}: {e}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
