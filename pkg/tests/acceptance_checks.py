"""The eleven acceptance criteria as functions returning ``(ok, detail)``.

Shared by ``tests/test_acceptance.py`` and ``scripts/run_acceptance.py``.
"""

from __future__ import annotations

import itertools
import math
import time
from collections import Counter

import oracles
from family import CATALOGUE
from kan_tier import run_kan_tier, run_limit_tier
from workloads import functor_table, k_suite, load_predicates, predicate_functor, relative_suite, tm_cases

from sammy import engine
from sammy.constructions import (
    build_number_category,
    constructible_function_check,
    exists_quantifier,
    forall_quantifier,
    forall_via_not,
    function_from_table,
    monotone_factor_halt,
    mu_minimization,
    power,
    primitive_recursion,
    projection_function,
    sequence_functor,
    successor,
    zero_function,
)
from sammy.core import (
    ONE,
    TWO,
    TWO_ISO,
    categories_isomorphic,
    chain,
    functor_from_objects,
    identity_functor,
    size_limits,
    structures_equal,
    structures_isomorphic,
)
from sammy.kan import kan_ext_right
from sammy.kolmogorov import ENCODING_A, comp_macro_encoding, invariance_harness, ksearch, relative_k
from sammy.lang import decode, encode, enumerate_programs, parse, run
from sammy.programs import LOG_PROGRAM_CONSTANT, big_enough, log_pointer_program, pointer_inputs, program_bits
from sammy.turing import make_config, step_op_count, tm_run, tm_step

KAN_TIME_LIMIT = 300.0


def _iso(a, b) -> bool:
    return categories_isomorphic(a, b) is not None


def _arith():
    return size_limits(1000, 200_000)


def criterion_1():
    t = time.perf_counter()
    counts, failures = run_kan_tier()
    dt = time.perf_counter() - t
    ok = not failures and dt < KAN_TIME_LIMIT
    return ok, f"{counts} failures={len(failures)} {failures[:3]} time={dt:.0f}s"


def criterion_2():
    n, failures = run_limit_tier()
    return not failures, f"{n} diagrams, failures={len(failures)} {failures[:3]}"


def _pullback_assembly(F, G, shape):
    C = F.target
    fc = engine.functor_category(shape, C)
    cc = engine.product(C, C)
    ev = engine.pairing(cc, engine.evaluation(fc, 0), engine.evaluation(fc, 1))
    ab = engine.product(F.source, G.source)
    return engine.pullback(engine.product_functor(ab, cc, F, G), ev).category


def criterion_3():
    bad = []
    if not _iso(engine.pow0(TWO, TWO), chain(3)):
        bad.append("2^2")
    for name, c in CATALOGUE.items():
        Id = identity_functor(c)
        if not _iso(engine.comma(Id, Id).category, engine.pow0(TWO, c)):
            bad.append(f"comma {name}")
        if c.n == 0:  # both sides are empty; the assembly's evaluations need an object
            if engine.iso_comma(Id, Id).category.n != 0:
                bad.append(f"isoComma {name}")
            continue
        if not _iso(engine.iso_comma(Id, Id).category, _pullback_assembly(Id, Id, TWO_ISO)):
            bad.append(f"isoComma {name}")
    R, _ = kan_ext_right(engine.bang(TWO), identity_functor(TWO))
    if not structures_equal(R, engine.pointer(TWO, 0)):
        bad.append("KanEx(!, Id)")
    return not bad, f"{len(CATALOGUE)} categories; failures={bad}"


def criterion_4():
    bad = []
    worst = 0
    t = time.perf_counter()
    with big_enough(1024):
        nc, inputs = pointer_inputs(1024)
        for n in range(1, 1025):
            p = log_pointer_program(n)
            bound = 7 * math.ceil(math.log2(n)) + LOG_PROGRAM_CONSTANT
            worst = max(worst, len(p.instructions) - 7 * math.ceil(math.log2(n)))
            if len(p.instructions) > bound or run(p, inputs).values[0].obj_map != (n,):
                bad.append(n)
    bits = program_bits(log_pointer_program(727))
    ok = not bad and bits == "1011010111" and LOG_PROGRAM_CONSTANT <= 10
    return ok, f"c={LOG_PROGRAM_CONSTANT} (max excess {worst}), bits(727)={bits}, failures={bad[:5]}, {time.perf_counter() - t:.0f}s"


def criterion_5():
    mismatches, op_counts, steps = 0, set(), 0
    for machine, tape, head in tm_cases():
        trace = tm_run(make_config(tape, head, machine.start), machine, max_steps=50)
        want = oracles.simulate(machine.rules, tape, head, machine.start, machine.halt, 50)
        if [(c.tape, c.position, c.state) for c in trace] != want:
            mismatches += 1
        for cfg in trace:
            if cfg.state not in machine.halt:
                op_counts.add(step_op_count(cfg, machine))
                steps += 1
    ok = mismatches == 0 and len(op_counts) == 1
    return ok, f"{len(tm_cases())} runs, {steps} steps, mismatches={mismatches}, ops/step={sorted(op_counts)}"


def criterion_6():
    bad = []
    N = 8
    with _arith():
        for kind in ("omega", "omega_d", "omega_i", "omega_bar"):
            nc = build_number_category(kind, N)
            xs = [(x,) for x in range(N + 1)]
            if not constructible_function_check(zero_function(nc), lambda v: 0, nc, 1, xs):
                bad.append(f"zero/{kind}")
            if not constructible_function_check(successor(nc), lambda v: v[0] + 1, nc, 1, xs[:-1]):
                bad.append(f"succ/{kind}")
            pairs = list(itertools.product(range(N + 1), repeat=2))
            for j in (1, 2):
                if not constructible_function_check(projection_function(nc, 2, j), lambda v: v[j - 1], nc, 2, pairs):
                    bad.append(f"proj{j}/{kind}")
        M = 6
        nc = build_number_category("omega_i", M)
        F = function_from_table(nc, 1, lambda x: x)
        G = function_from_table(nc, 3, lambda x, h, n: min(h + 1, M))
        H = primitive_recursion(F, G, nc, 1)
        ins = [(x, y) for x in range(M + 1) for y in range(M + 1) if x + y <= M]
        if not constructible_function_check(H, lambda v: v[0] + v[1], nc, 2, ins):
            bad.append("add")
        pw = power(nc.category, 2)
        Fm = functor_from_objects(pw.category, TWO_ISO, [int(pw.tuple_of(i)[1] < pw.tuple_of(i)[0]) for i in range(pw.category.n)])
        mu = mu_minimization(Fm, nc, 1)
        if {x: mu.obj_map[x] for x in range(M + 1)} != oracles.mu_scan(lambda x, y: int(y < x), M):
            bad.append("mu")
    return not bad, f"zero/proj/succ for inputs <= {N}, add and mu for inputs <= 6; failures={bad}"


def criterion_7(path):
    T, preds = load_predicates(path)
    bad = []
    with _arith():
        nc = build_number_category("omega_i", T)
        for name, arity, fn in preds:
            psi = predicate_functor(nc, arity, fn)
            if functor_table(exists_quantifier(psi, nc, arity), nc, arity) != oracles.exists_scan(fn, arity, T):
                bad.append(f"exists {name}")
            if functor_table(forall_quantifier(psi, nc, arity), nc, arity) != oracles.forall_scan(fn, arity, T):
                bad.append(f"forall {name}")
            if not structures_equal(forall_via_not(psi, nc, arity), forall_quantifier(psi, nc, arity)):
                bad.append(f"not-exists-not {name}")
    return not bad and len(preds) >= 10 and T == 4, f"{len(preds)} predicates at truncation {T}; failures={bad}"


def criterion_8():
    bad = 0
    for bits in itertools.product((0, 1), repeat=8):
        ok, value = monotone_factor_halt(sequence_functor(bits))
        mono = all(a <= b for a, b in zip(bits, bits[1:]))
        if ok != mono or (mono and value != bits[-1]):
            bad += 1
    return bad == 0, f"256 sequences, mismatches={bad}"


def criterion_9():
    bad = []
    for label, t in k_suite():
        r = ksearch(t, budget=4)
        if not r.found or not structures_isomorphic(run(r.witness).values[0], t):
            bad.append(label)
    k1 = ksearch(ONE, budget=4).min_length
    krel = relative_k(TWO, TWO, budget=4).min_length
    k3 = ksearch(chain(3), budget=4).min_length
    ok = not bad and k1 == 1 and krel == 0 and k3 is not None and k3 <= 2
    return ok, f"{len(k_suite())} targets replayed; K(1)={k1} K(2|2)={krel} K(3-chain)={k3}; failures={bad}"


def criterion_10():
    enc_b = comp_macro_encoding()
    rep = invariance_harness(ENCODING_A, enc_b, k_suite(), budget=4)
    givens, rel = relative_suite()
    rep2 = invariance_harness(ENCODING_A, enc_b, rel, budget=2, givens=givens)
    rows = rep.rows + rep2.rows
    ok = not rep.excluded and not rep2.excluded and all(gap <= bound for *_x, gap, bound in rows)
    return ok, f"{len(rows)} targets, max gap={max(r[3] for r in rows)}, Comp uses={sum(r[4] for r in rows)}"


def criterion_11(max_tokens: int = 8):
    n = mismatches = 0
    prev = 0
    for p in enumerate_programs(max_tokens):
        n += 1
        code = encode(p)
        q = parse(p.text)
        if code <= prev or q != p or encode(q) != code or decode(code) != p:
            mismatches += 1
        prev = code
    return mismatches == 0, f"{n} programs (<= {max_tokens} tokens), mismatches={mismatches}"


def all_criteria(predicates_path):
    return {
        1: criterion_1,
        2: criterion_2,
        3: criterion_3,
        4: criterion_4,
        5: criterion_5,
        6: criterion_6,
        7: lambda: criterion_7(predicates_path),
        8: criterion_8,
        9: criterion_9,
        10: criterion_10,
        11: criterion_11,
    }
