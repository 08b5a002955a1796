"""Shortest-program search: K_Sammy, relative K, and the invariance-theorem harness.

The search enumerates straight-line programs (IF-free: a minimal witness for a
terminating straight computation never needs a jump) over the canonical 8-name variable
alphabet. Inputs are bound first and cost 0; every other instruction costs its
encoding weight (1 by default). Programs are explored by increasing cost; among all
witnesses of the minimal cost the one with the smallest Goedel code is reported.

Pruning keeps the search exhaustive over *canonical* programs:

* variables are assigned fresh, in alphabet order (every straight-line program is
  alpha-equivalent to one of these);
* an instruction whose value equals an already-bound value is skipped (a minimal
  program never recomputes a value);
* a complete program must use every non-input variable it binds (otherwise deleting
  the dead line gives a cheaper program), and returns its last binding.
"""

from __future__ import annotations

import itertools
import logging
import warnings
from collections.abc import Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .core import SammyError, SizeLimit, kind_of, size_limits, structures_isomorphic
from .lang import (
    ALPHABET,
    CONSTANT_NAMES,
    OPERATIONS,
    _CONSTANTS,
    Program,
    apply_operation,
    parse,
    run,
    tokens_to_code,
)

log = logging.getLogger(__name__)

# Search-time caps: results larger than this count as timed-out runs.
SEARCH_MAX_OBJECTS = 24
SEARCH_MAX_MORPHISMS = 160


@dataclass(frozen=True)
class Encoding:
    """A variant of the instruction encoding.

    ``costs`` gives the number of primitive instructions each operation compiles to (1
    when absent); ``order`` permutes the operation tokens, which changes Goedel codes
    but not lengths.
    """

    name: str = "A"
    costs: dict = field(default_factory=dict, hash=False, compare=False)
    order: tuple[str, ...] = tuple(OPERATIONS)

    def cost(self, op: str) -> int:
        return self.costs.get(op, 1)

    def code(self, program: Program) -> int:
        """Goedel code under this encoding's operation-token order."""
        base = tuple(OPERATIONS)
        rename = dict(zip(base, self.order))
        return tokens_to_code([rename.get(t, t) for t in program.token_list()])


ENCODING_A = Encoding("A")


def permuted_encoding(seed: int = 0) -> Encoding:
    import random

    order = list(OPERATIONS)
    random.Random(seed).shuffle(order)
    return Encoding(f"A-permuted-{seed}", {}, tuple(order))


def comp_macro_encoding() -> Encoding:
    """Encoding B: ``Comp`` is not primitive but the two-line macro of :func:`expand_comp_macro`."""
    return Encoding("B-comp-macro", {"Comp": 2})


@dataclass(frozen=True)
class KResult:
    status: str  # "Found" | "NotFoundWithinBudget"
    min_length: int | None
    witness: Program | None
    programs_tried: int
    runs_timed_out: int

    @property
    def found(self) -> bool:
        return self.status == "Found"

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "minLength": self.min_length,
            "witnessSource": self.witness.text + "\n" if self.witness else None,
            "programsTried": self.programs_tried,
            "runsTimedOut": self.runs_timed_out,
        }


# --------------------------------------------------------------------------
# the search


@dataclass
class _Stats:
    tried: int = 0
    timed_out: int = 0


class _Searcher:
    def __init__(self, target, givens: Sequence[object], encoding: Encoding, alphabet: Sequence[str], verify: str):
        self.target = target
        self.givens = list(givens)
        self.encoding = encoding
        self.alphabet = tuple(alphabet)
        self.verify = verify
        self.stats = _Stats()
        self._memo: dict = {}
        self._iso: dict = {}
        if len(self.givens) >= len(self.alphabet):
            raise ValueError("too many givens for the variable alphabet")

    # the candidate instructions given the values bound so far
    def _choices(self, n_bound: int):
        for c in CONSTANT_NAMES:
            yield ("const", c, ())
        for op, (arity, target_counts) in OPERATIONS.items():
            for args in itertools.product(range(n_bound), repeat=arity):
                for nt in target_counts:
                    yield ("op", op, args, nt)

    def _apply(self, choice, values):
        if choice[0] == "const":
            return (_CONSTANTS[choice[1]],)
        _, op, args, nt = choice
        key = (op, tuple(id(values[a]) for a in args))
        entry = self._memo.get(key)
        hit = entry[1] if entry else None
        if entry is None:
            try:
                with size_limits(SEARCH_MAX_OBJECTS, SEARCH_MAX_MORPHISMS):
                    hit = apply_operation(op, [values[a] for a in args], self.verify)
            except SizeLimit:
                hit = "limit"
            except (SammyError, RecursionError):
                hit = "error"
            # keep the arguments alive so their ids stay unique
            self._memo[key] = (tuple(values[a] for a in args), hit)
        if hit == "limit":
            self.stats.timed_out += 1
            return None
        if hit == "error":
            return None
        return hit[:nt]

    def _matches(self, v) -> bool:
        entry = self._iso.get(id(v))
        hit = entry[1] if entry else None
        if entry is None:
            try:
                hit = structures_isomorphic(v, self.target)
            except SammyError:
                hit = False
            self._iso[id(v)] = (v, hit)
        return hit

    def search_cost(self, budget: int, first: int | None = None) -> list[tuple]:
        """All canonical witnesses of cost exactly ``budget``, as instruction lists."""
        found: list[tuple] = []
        values = list(self.givens)
        n_inputs = len(values)
        seen = {}
        for k, v in enumerate(values):
            seen.setdefault(v, k)
        # use[k]: number of later uses of variable k
        uses = [0] * len(values)
        trail: list[tuple] = []

        def unused_count() -> int:
            return sum(1 for k in range(n_inputs, len(values)) if uses[k] == 0)

        def dfs(spent: int) -> None:
            remaining = budget - spent
            for idx, choice in enumerate(self._choices(len(values))):
                if first is not None and not trail and idx != first:
                    continue
                c = 1 if choice[0] == "const" else self.encoding.cost(choice[1])
                if c > remaining or len(values) + (choice[3] if choice[0] == "op" else 1) > len(self.alphabet):
                    continue
                args = choice[2]
                final = c == remaining
                unused_after = unused_count() - len({a for a in args if a >= n_inputs and uses[a] == 0})
                if final and unused_after:
                    continue  # a dead variable would remain
                if not final and unused_after + 1 > 4 * (remaining - c):
                    continue
                results = self._apply(choice, values)
                if results is None:
                    continue
                if any(r in seen for r in results):
                    continue
                if final:
                    self.stats.tried += 1
                    if len(results) == 1 and self._matches(results[0]):
                        found.append(tuple(trail) + (choice,))
                    continue
                for a in args:
                    uses[a] += 1
                base = len(values)
                for j, r in enumerate(results):
                    values.append(r)
                    uses.append(0)
                    seen[r] = base + j
                trail.append(choice)
                dfs(spent + c)
                trail.pop()
                for r in results:
                    values.pop()
                    uses.pop()
                    del seen[r]
                for a in args:
                    uses[a] -= 1

        dfs(0)
        return found

    def render(self, instrs: Sequence[tuple]) -> Program:
        lines = []
        names = list(self.alphabet)
        for k, g in enumerate(self.givens):
            lines.append(f"INPUT {names[k]} : {kind_of(g).upper()}")
        nxt = len(self.givens)
        last = names[len(self.givens) - 1] if self.givens else None
        for ch in instrs:
            if ch[0] == "const":
                lines.append(f"{names[nxt]} := {ch[1]}")
                last = names[nxt]
                nxt += 1
            else:
                _, op, args, nt = ch
                tgts = names[nxt : nxt + nt]
                lines.append(f"{', '.join(tgts)} := {op}({', '.join(names[a] for a in args)})")
                last = tgts[0]
                nxt += nt
        lines.append(f"RETURN({last})")
        return parse("\n".join(lines) + "\n")


def _worker(payload):
    target, givens, encoding, alphabet, verify, budget, first = payload
    s = _Searcher(target, givens, encoding, alphabet, verify)
    found = s.search_cost(budget, first)
    return [s.render(f).text for f in found], s.stats.tried, s.stats.timed_out


def _n_first_choices(n_givens: int) -> int:
    return len(CONSTANT_NAMES) + sum(
        len(tc) * n_givens**arity for arity, tc in OPERATIONS.values()
    )


def ksearch(
    target: object,
    givens: Sequence[object] = (),
    budget: int = 4,
    encoding: Encoding = ENCODING_A,
    alphabet: Sequence[str] = ALPHABET,
    verify: str = "auto",
    parallel: int = 0,
) -> KResult:
    """Minimal-cost program returning a structure isomorphic to ``target``.

    ``givens`` are pre-bound as ``INPUT`` variables (cost 0). ``parallel`` > 1 farms the
    first-instruction branches out to that many processes; the result is identical.
    """
    if budget < 0:
        raise ValueError("budget must be nonnegative")
    s = _Searcher(target, givens, encoding, alphabet, verify)
    tried = timed_out = 0
    # cost 0: echo a given
    for k, g in enumerate(s.givens):
        tried += 1
        if structures_isomorphic(g, target):
            lines = [f"INPUT {alphabet[j]} : {kind_of(x).upper()}" for j, x in enumerate(s.givens)]
            prog = parse("\n".join(lines + [f"RETURN({alphabet[k]})"]) + "\n")
            return _verified(KResult("Found", 0, prog, tried, 0), target, givens, verify)
    for cost in range(1, budget + 1):
        if parallel and parallel > 1:
            n = _n_first_choices(len(s.givens))
            payloads = [(target, list(givens), encoding, tuple(alphabet), verify, cost, i) for i in range(n)]
            texts: list[str] = []
            with ProcessPoolExecutor(parallel) as ex:
                for t, a, b in ex.map(_worker, payloads, chunksize=4):
                    texts += t
                    tried += a
                    timed_out += b
            progs = [parse(t + "\n") for t in texts]
        else:
            before = (s.stats.tried, s.stats.timed_out)
            found = s.search_cost(cost)
            tried += s.stats.tried - before[0]
            timed_out += s.stats.timed_out - before[1]
            progs = [s.render(f) for f in found]
        if progs:
            best = min(progs, key=encoding.code)
            return _verified(KResult("Found", cost, best, tried, timed_out), target, givens, verify)
        log.debug("no witness of cost %d (%d programs tried)", cost, tried)
    return KResult("NotFoundWithinBudget", None, None, tried, timed_out)


def _verified(res: KResult, target, givens, verify: str) -> KResult:
    """Soundness: replay the witness and confirm its value is isomorphic to the target."""
    with size_limits(SEARCH_MAX_OBJECTS, SEARCH_MAX_MORPHISMS):
        out = run(res.witness, list(givens), verify=verify).values[0]
    if not structures_isomorphic(out, target):
        raise AssertionError(f"K-search witness does not replay:\n{res.witness.text}")
    return res


def relative_k(x: object, y: object, budget: int = 4, **kw) -> KResult:
    """``K(x | y)``: search with ``y`` available as an input."""
    return ksearch(x, [y], budget, **kw)


def weighted_cost(program: Program, encoding: Encoding) -> int:
    return sum(
        (1 if ins.kind == "const" else encoding.cost(ins.op)) for ins in program.instructions if ins.is_operation
    )


def expand_comp_macro(program: Program) -> Program:
    """Rewrite every ``C := Comp(F, G)`` as ``H := Hcomp(F, G)`` then ``C := Source2(H)``.

    ``Hcomp`` accepts functors as their identity transformations, so ``H`` is the
    identity on ``G . F`` and ``Source2`` recovers ``G . F`` itself.
    """
    used = {n for ins in program.instructions for n in ins.targets + ins.args}
    fresh = (f"T{k}" for k in itertools.count() if f"T{k}" not in used)
    lines = []
    for ins in program.instructions:
        if ins.kind == "assign" and ins.op == "Comp":
            h = next(fresh)
            prefix = f"{ins.label}: " if ins.label else ""
            lines.append(f"{prefix}{h} := Hcomp({ins.args[0]}, {ins.args[1]})")
            lines.append(f"{ins.targets[0]} := Source2({h})")
        else:
            lines.append(ins.text())
    return parse("\n".join(lines) + "\n")


@dataclass(frozen=True)
class InvarianceReport:
    rows: tuple  # (label, K_A, K_B, gap, overhead bound)
    max_gap: int
    excluded: tuple  # labels whose search exhausted the budget under either encoding

    @property
    def ok(self) -> bool:
        return all(gap <= bound for _label, _ka, _kb, gap, bound in self.rows)


def invariance_harness(
    enc_a: Encoding,
    enc_b: Encoding,
    suite: Sequence[tuple[str, object]],
    budget: int = 4,
    **kw,
) -> InvarianceReport:
    """Compare K under two encodings; each gap is checked against the cross-compilation
    overhead of the A-minimal witness (its cost re-measured under B, minus K_A)."""
    rows, excluded = [], []
    for label, target in suite:
        ra = ksearch(target, budget=budget, encoding=enc_a, **kw)
        rb = ksearch(target, budget=budget + _max_overhead(enc_a, enc_b) * budget, encoding=enc_b, **kw)
        if not (ra.found and rb.found):
            warnings.warn(f"invariance harness: {label} exhausted the budget; excluded", stacklevel=2)
            excluded.append(label)
            continue
        bound = weighted_cost(ra.witness, enc_b) - ra.min_length
        rows.append((label, ra.min_length, rb.min_length, abs(rb.min_length - ra.min_length), bound))
    max_gap = max((r[3] for r in rows), default=0)
    return InvarianceReport(tuple(rows), max_gap, tuple(excluded))


def _max_overhead(a: Encoding, b: Encoding) -> int:
    return max(max(b.cost(op) - a.cost(op), 0) for op in OPERATIONS)


__all__ = [
    "ENCODING_A",
    "Encoding",
    "InvarianceReport",
    "KResult",
    "comp_macro_encoding",
    "expand_comp_macro",
    "invariance_harness",
    "ksearch",
    "permuted_encoding",
    "relative_k",
    "weighted_cost",
]
