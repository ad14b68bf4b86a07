"""Acceptance gate: one check per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s`` or ``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import json
import random
import subprocess
import sys
import tempfile
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from support import dga_fragment, random_zero_fragment  # noqa: E402

from operadmassey.cli import parse_operad_file, serialize_fragment  # noqa: E402
from operadmassey.errors import MasseyUndefinedError, UnsupportedCharacteristicError  # noqa: E402
from operadmassey.exactla import FieldSpec  # noqa: E402
from operadmassey.fixtures import (acyclic_extension, acyclic_inclusion, build_sc_fragment,  # noqa: E402
                                   build_sc_homology)
from operadmassey.freeop import change_of_representatives, verify_change_of_representatives  # noqa: E402
from operadmassey.homology import class_of, homology  # noqa: E402
from operadmassey.massey import (candidate_problems, compute, nonformality_certificate,  # noqa: E402
                                 pushforward_check, same_coset, translated_cosets, vanishes)
from operadmassey.operadcore import OperadMorphism, Permutation, act, boundary, compose, validate  # noqa: E402

Q, F2, F5 = FieldSpec(), FieldSpec(2), FieldSpec(5)
S = Permutation((2, 1))
DS = (2, 3, 4, 5)


def _same(O):
    return O


def _round_trip(O):
    return parse_operad_file(serialize_fragment(O))


def _sgn(k):
    return -1 if k % 2 else 1


def _fl(O):
    return class_of(O, compose(O, O.cell("f"), 1, O.element("l")))


def _defined(O):
    out = []
    for P in candidate_problems(O):
        try:
            out.append(compute(P))
        except (MasseyUndefinedError, LookupError):
            pass
    return out


# ---------------------------------------------------------------- checks

def check_validity(load=_same):
    fails = []
    for d in DS:
        for F in (Q, F5):
            r = validate(load(build_sc_fragment(d, F)))
            if not r.passed:
                fails.append(f"sc d={d} {F}: {r.violations[0]}")
        r = validate(load(build_sc_homology(d)))
        if not r.passed:
            fails.append(f"sc-homology d={d}: {r.violations[0]}")
    return fails


def _eigen(O, profile, degree):
    H = homology(O, profile, degree)
    if H.dimension != 1:
        return None
    return class_of(O, act(O, H.representatives[0], S)).coords[0]


def check_table_d2(O):
    fails = []
    H = homology(O, "o,o;o", 0)
    a = class_of(O, O.cell("a"))
    sa = class_of(O, act(O, O.cell("a"), S))
    if H.dimension != 2 or a == sa or (a.coords[0] * sa.coords[1] - a.coords[1] * sa.coords[0]) == 0:
        fails.append("H_0(o,o;o) is not free on [a]")
    for p, k, n in (("c;o", 0, 1), ("c,c;c", 1, 1), ("c,o;o", 1, 0), ("c,c;o", 1, 1)):
        if homology(O, p, k).dimension != n:
            fails.append(f"dim H_{k}({p}) = {homology(O, p, k).dimension} != {n}")
    if _fl(O).is_zero():
        fails.append("[f o l] is zero")
    return fails


def check_table(load=_same):
    fails = check_table_d2(load(build_sc_fragment(2)))
    for d in (3, 4, 5):
        O = load(build_sc_fragment(d))
        if _eigen(O, "o,o;o", d - 2) != _sgn(d - 1):
            fails.append(f"d={d}: H_{d - 2}(o,o;o) not 1-dim with eigenvalue {_sgn(d - 1)}")
        if _eigen(O, "c,c;c", d - 1) != _sgn(d):
            fails.append(f"d={d}: H_{d - 1}(c,c;c) not 1-dim with eigenvalue {_sgn(d)}")
        if homology(O, "c,c;o", d - 1).dimension != 1 or _fl(O).is_zero():
            fails.append(f"d={d}: H_{d - 1}(c,c;o) not spanned by [f o l]")
        if homology(O, "c,o;o", d - 1).dimension != 0:
            fails.append(f"d={d}: H_{d - 1}(c,o;o) nonzero")
    return fails


def check_theorem_on(O, d):
    C = nonformality_certificate(O)
    if not C.non_formal:
        return [f"d={d}: verdict {C.verdict}"]
    K, fl = C.coset, _fl(O)
    fails = []
    if K.indeterminacy.dim != 0:
        fails.append(f"d={d}: indeterminacy {K.indeterminacy.dim}")
    if K.representative.coords not in (fl.coords, tuple(-c for c in fl.coords)):
        fails.append(f"d={d}: representative {K.representative.coords} != +-[f o l]")
    return fails


def check_theorem(load=_same):
    return [m for d in DS for m in check_theorem_on(load(build_sc_fragment(d)), d)]


# ---------------------------------------------------------------- criteria

def criterion_1():
    return check_validity()


def criterion_2():
    return check_table()


def criterion_3():
    return check_theorem()


def criterion_4():
    fails = []
    runs = [(2, "1"), (2, "2")] + [(d, r) for d in (3, 4, 5) for r in ("3'", "4'")]
    for d, which in runs:
        r = verify_change_of_representatives(d, which)
        if not r.passed:
            fails.append(f"d={d} relation {which}: {r.violations[0]}")
        key = "relation-1" if which in ("1", "3'") else "relation-2"
        for k in range(1, len(change_of_representatives(d).terms[key])):
            m = verify_change_of_representatives(d, which, flip=k)
            if m.passed or not m.violations[0].discrepancy:
                fails.append(f"d={d} relation {which}: flipping summand {k} still passes")
    return fails


def criterion_5():
    fails, n = [], 0
    frags = [build_sc_fragment(d) for d in DS] + [acyclic_extension(build_sc_fragment(d)) for d in DS]
    frags.append(dga_fragment())
    for O in frags:
        for K in _defined(O):
            cosets = translated_cosets(K.problem)
            for label, K2 in cosets[1:]:
                n += 1
                if not same_coset(cosets[0][1], K2):
                    fails.append(f"{K.problem.describe()}: {label} changes the coset")
    if n == 0:
        fails.append("no translations were exercised")
    return fails


def criterion_6():
    fails, n = [], 0
    frags = [build_sc_homology(d) for d in DS]
    rng = random.Random(20240501)
    frags += [random_zero_fragment(rng, max_cells=6) for _ in range(20)]
    for O in frags:
        for K in _defined(O):
            # every choice of bounding chains, not only the canonical zero one
            for label, K2 in translated_cosets(K.problem):
                n += 1
                if not vanishes(K2):
                    fails.append(f"{K.problem.describe()} with {label} does not vanish")
    if n == 0:
        fails.append("no defined products")
    return fails


def criterion_7():
    fails, n = [], 0
    for d in DS:
        for O in (build_sc_fragment(d), acyclic_extension(build_sc_fragment(d))):
            for K in _defined(O):
                for _, K2 in translated_cosets(K.problem):
                    n += 1
                    if boundary(O, K2.cycle):
                        fails.append(f"d={d} {K.problem.describe()}: dM != 0")
    for d in (2, 3):
        O = build_sc_fragment(d)
        kind = "eye" if d == 2 else "II"
        if not any(K.problem.kind == kind for K in _defined(O)):
            fails.append(f"d={d}: no {kind} cycle was constructed")
    if n == 0:
        fails.append("no cycles constructed")
    return fails


def criterion_8():
    fails = []
    O = build_sc_fragment(3)
    problems = [K.problem for K in _defined(O)]
    if not problems:
        return ["no defined products on d = 3"]
    for phi, name in ((OperadMorphism.identity(O), "identity"), (acyclic_inclusion(O), "acyclic inclusion")):
        for P in problems:
            r = pushforward_check(phi, P)
            if not r.passed:
                fails.append(f"{name}, {P.describe()}: {r.violations[0]}")
    return fails


def criterion_9():
    fails = []
    for d in (3, 4, 5):
        try:
            build_sc_fragment(d, F2)
            fails.append(f"d={d} over F_2 was accepted")
        except UnsupportedCharacteristicError:
            pass
    O = build_sc_fragment(2, F2)
    if not validate(O).passed:
        fails.append("d=2 over F_2 does not validate")
    fails += check_table_d2(O)
    fails += check_theorem_on(O, 2)
    return fails


def _machine_runs(tmp: Path):
    runs = []
    for d in DS:
        p = tmp / f"sc{d}.json"
        p.write_text(serialize_fragment(build_sc_fragment(d)))
        runs.append(["prove-nonformality", str(p)])
        runs.append(["homology", str(p), "--profile", "c,c;o", "--degree", str(d - 1)])
        runs.append(["validate", str(p)])
    runs.append(["verify-change", "--d", "2", "--relation", "2"])
    runs.append(["fixture", "sc", "--d", "3"])
    return runs


def criterion_10():
    fails = check_validity(_round_trip) + check_table(_round_trip) + check_theorem(_round_trip)
    for d in DS:
        O = build_sc_fragment(d)
        if _round_trip(O) != O or serialize_fragment(_round_trip(O)) != serialize_fragment(O):
            fails.append(f"d={d}: round trip changes the fragment")
    with tempfile.TemporaryDirectory() as tmp:
        for args in _machine_runs(Path(tmp)):
            cmd = [sys.executable, "-m", "operadmassey", "--machine"] + args
            outs = [subprocess.run(cmd, capture_output=True) for _ in range(2)]
            if outs[0].stdout != outs[1].stdout or outs[0].returncode != 0:
                fails.append(f"{args[0]}: runs differ or failed")
            else:
                json.loads(outs[0].stdout)
    return fails


CRITERIA = {
    1: ("fixture validity", criterion_1),
    2: ("homology table", criterion_2),
    3: ("main theorem reproduction", criterion_3),
    4: ("change-of-representative identities and mutations", criterion_4),
    5: ("coset well-definedness under chain translation", criterion_5),
    6: ("zero-differential products vanish", criterion_6),
    7: ("constructed cycles are cycles", criterion_7),
    8: ("naturality under morphisms", criterion_8),
    9: ("characteristic guard", criterion_9),
    10: ("round trip and determinism", criterion_10),
}


def _line(n, fails):
    title = CRITERIA[n][0]
    return f"CRITERION {n}: {'PASS' if not fails else 'FAIL'} ({title})" + \
        "".join(f"\n    {m}" for m in fails[:5])


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n, capsys):
    fails = CRITERIA[n][1]()
    with capsys.disabled():
        print("\n" + _line(n, fails))
    assert not fails, _line(n, fails)


if __name__ == "__main__":
    results = {n: CRITERIA[n][1]() for n in sorted(CRITERIA)}
    for n, fails in results.items():
        print(_line(n, fails))
    sys.exit(0 if not any(results.values()) else 1)
