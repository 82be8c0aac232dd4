"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -v -s` to see the criterion lines
and the measured runtimes.
"""

import json
import random
import subprocess
import sys
import time
from fractions import Fraction

from leibniz_lab.algebra import (
    derived_series,
    derived_subalgebra,
    is_lie,
    is_nilpotent,
    is_solvable,
    substitute_algebra,
    verify_leibniz,
)
from leibniz_lab.blocks import (
    CanonicalBlock,
    algebra_from_blocks,
    b_param_normalize,
    canonical_block_matrix,
    direct_sum_matrix,
    form_from_algebra,
    normalize_blocks,
)
from leibniz_lab.classify import (
    NILPOTENT_COUNTS,
    block_multisets,
    dim3_solvable_table,
    distinctness_report,
    match_paper_table,
    nilpotent_table,
    solvable_dim1_table,
    verify_nilpotent_entry,
)
from leibniz_lab.formats import dumps_canonical, load_algebra, store_algebra
from leibniz_lab.iso import _b_reciprocal_witness, type2_ratio_invariant
from leibniz_lab.pencil import canonical_decomposition, congruence_transform
from leibniz_lab.scalars import QI, Scalar

S = Scalar.parse


def _report(num, ok, detail):
    print(f"\nACCEPTANCE {num} {'PASS' if ok else 'FAIL'}: {detail}")
    assert ok, f"criterion {num} failed: {detail}"


# --- 1: table counts through the CLI, under 10 seconds ---------------------
def test_criterion_1_counts():
    t0 = time.monotonic()
    counts = {}
    for n, want in NILPOTENT_COUNTS.items():
        proc = subprocess.run(
            [sys.executable, "-m", "leibniz_lab.cli", "classify", "--dim", str(n)],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0, proc.stderr
        counts[n] = len(json.loads(proc.stdout))
    elapsed = time.monotonic() - t0
    ok = counts == NILPOTENT_COUNTS and elapsed < 10.0
    _report(1, ok, f"counts {counts} in {elapsed:.2f}s (< 10s)")


# --- 2: perfect matching against the transcribed reference tables ----------
def test_criterion_2_reference_matching():
    t0 = time.monotonic()
    results = {}
    for n in (4, 5, 6, 7):
        report = match_paper_table(n)
        results[n] = (report.perfect, len(report.pairs))
    elapsed = time.monotonic() - t0
    ok = all(perfect for perfect, _ in results.values())
    ok = ok and [results[n][1] for n in (4, 5, 6, 7)] == [6, 14, 23, 47]
    ok = ok and elapsed < 30.0
    _report(2, ok, f"perfect matchings {results} in {elapsed:.2f}s (< 30s)")


# --- 3: symbolic soundness of every generated entry -------------------------
def test_criterion_3_symbolic_soundness():
    t0 = time.monotonic()
    failures = []
    total = 0
    for n in NILPOTENT_COUNTS:
        for entry in nilpotent_table(n):
            total += 1
            fails = verify_nilpotent_entry(entry)
            if fails:
                failures.append((entry.label, fails))
    elapsed = time.monotonic() - t0
    _report(
        3,
        not failures,
        f"{total} entries verified symbolically, {len(failures)} failures "
        f"in {elapsed:.2f}s",
    )


# --- 4: the unique non-nilpotent solvable case ------------------------------
def test_criterion_4_cyclic_case():
    table = solvable_dim1_table()
    ok = len(table) == 1
    A = table[0].algebra
    prods = {k: [(i, str(c)) for i, c in v] for k, v in A.products().items()}
    ok = ok and prods == {(1, 1): [(2, "1")], (1, 2): [(2, "1")]}
    ok = ok and verify_leibniz(A) and is_solvable(A)
    ok = ok and not is_nilpotent(A) and not is_lie(A)
    ok = ok and derived_subalgebra(A).dim == 1
    _report(4, ok, "2-dim cyclic algebra, solvable, non-nilpotent, non-Lie")


# --- 5: the six 3-dim families, symbolically in alpha -----------------------
def test_criterion_5_dim3_families():
    table = dim3_solvable_table()
    ok = len(table) == 6
    details = []
    for entry in table:
        A = entry.algebra
        good = (
            verify_leibniz(A)
            and is_solvable(A)
            and not is_nilpotent(A)
            and not is_lie(A)
            and derived_subalgebra(A).dim == 2
        )
        ds = derived_series(A)
        d3 = ds[2].dim if len(ds) > 2 else 0
        want_d3 = 1 if entry.family == "family6" else 0
        good = good and d3 == want_d3
        details.append((entry.family, good))
        ok = ok and good
    _report(5, ok, f"six families verified symbolically: {details}")


# --- 6: the reciprocal isomorphism criterion for the diagonal family --------
def test_criterion_6_ratio_criterion():
    table = dim3_solvable_table()
    family2 = table[1].algebra
    grid = [
        Fraction(2),
        Fraction(3),
        Fraction(5),
        Fraction(1, 2),
        Fraction(1, 3),
        Fraction(1, 5),
        Fraction(-2),
        Fraction(-1, 2),
        Fraction(7),
        Fraction(1, 7),
        Fraction(4),
        Fraction(1, 4),
    ]
    assert len(grid) == 12
    pairs_checked = 0
    ok = True
    invs = {}
    for a in grid:
        invs[a] = type2_ratio_invariant(substitute_algebra(family2, {"alpha": a}))
    for a1 in grid:
        for a2 in grid:
            want = a1 == a2 or a1 * a2 == 1
            got = invs[a1] == invs[a2]
            pairs_checked += 1
            if want != got:
                ok = False
    _report(6, ok, f"{pairs_checked} pairs over a 12-value grid, criterion exact")


# --- 7: the congruence engine ------------------------------------------------
def _unimodular_int(rng, n):
    L = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    U = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i):
            L[i][j] = rng.randint(-2, 2)
            U[j][i] = rng.randint(-2, 2)
    perm = list(range(n))
    rng.shuffle(perm)
    P = [[1 if j == perm[i] else 0 for j in range(n)] for i in range(n)]

    def mm(a, b):
        bt = list(zip(*b))
        return [[sum(x * y for x, y in zip(r, c)) for c in bt] for r in a]

    return mm(mm(P, L), U)


def _transform_int(Mi, Si):
    def mm(a, b):
        bt = list(zip(*b))
        return [[sum(x * y for x, y in zip(r, c)) for c in bt] for r in a]

    St = [list(c) for c in zip(*Si)]
    return mm(mm(St, Mi), Si)


def _instantiated(ms, values=(QI(2), QI(3), QI(5))):
    out = []
    b_seen = 0
    for b in ms.blocks:
        if b.kind == "B":
            out.append(CanonicalBlock("B", b.size, Scalar.const(values[b_seen])))
            b_seen += 1
        else:
            out.append(b)
    return tuple(out)


def test_criterion_7_congruence_engine():
    t0 = time.monotonic()
    rng = random.Random(20250811)
    trials = 100
    checked = 0
    ok = True
    detail = ""
    # (a) decomposition is a congruence invariant for every multiset <= 6
    for total in range(1, 7):
        for ms in block_multisets(total, include_a1=True):
            blocks = _instantiated(ms)
            M = direct_sum_matrix(blocks)
            Mi = [[x.as_qi().re.numerator for x in row] for row in M]
            want = normalize_blocks(blocks)
            if canonical_decomposition(M) != want:
                ok, detail = False, f"self-decomposition failed for {blocks}"
                break
            n = len(M)
            for _ in range(trials):
                Si = _unimodular_int(rng, n)
                X = tuple(
                    tuple(QI(v) for v in row) for row in _transform_int(Mi, Si)
                )
                if canonical_decomposition(X) != want:
                    ok, detail = False, f"decomposition moved for {blocks}"
                    break
            checked += 1
            if not ok:
                break
        if not ok:
            break
    # a few runs at non-integer and imaginary parameters
    if ok:
        special = [
            (CanonicalBlock("B", 2, S("0")),),
            (CanonicalBlock("B", 2, S("i")),),
            (CanonicalBlock("B", 2, S("-2")), CanonicalBlock("C", 1)),
            (CanonicalBlock("B", 4, S("i")), CanonicalBlock("A", 1)),
        ]
        from leibniz_lab.iso import random_invertible_matrix

        for blocks in special:
            M = direct_sum_matrix(blocks)
            want = canonical_decomposition(M)
            for _ in range(10):
                Sm = random_invertible_matrix(len(M), rng)
                if canonical_decomposition(congruence_transform(M, Sm)) != want:
                    ok, detail = False, f"special decomposition moved for {blocks}"
                    break
            checked += 1
    # (b) decomposition fixes every canonical block of size <= 8
    if ok:
        fixed = 0
        for b in _all_blocks_up_to(8):
            dec = canonical_decomposition(canonical_block_matrix(b))
            want_param = (
                b_param_normalize(b.parameter) if b.kind == "B" else None
            )
            if dec != (CanonicalBlock(b.kind, b.size, want_param),):
                ok, detail = False, f"block {b.name} not fixed: {dec}"
                break
            fixed += 1
    # (c) explicit verified reciprocal witnesses
    if ok:
        for c in (S("2"), S("3"), S("i")):
            w = _b_reciprocal_witness(2, c)
            lhs = congruence_transform(
                canonical_block_matrix(CanonicalBlock("B", 2, c)), w
            )
            if lhs != canonical_block_matrix(CanonicalBlock("B", 2, c.inverse())):
                ok, detail = False, f"reciprocal witness failed at c={c}"
                break
    elapsed = time.monotonic() - t0
    ok = ok and elapsed < 60.0
    _report(
        7,
        ok,
        detail
        or f"{checked} multisets x {trials} random congruences, "
        f"{fixed} blocks fixed, witnesses verified, in {elapsed:.2f}s (< 60s)",
    )


def _all_blocks_up_to(max_size):
    out = []
    b_values = [S("0"), S("2"), S("3"), S("-2"), S("i")]
    for size in range(1, max_size + 1):
        if size % 2 == 1:
            out.append(CanonicalBlock("A", size))
            out.append(CanonicalBlock("C", size))
        else:
            k = size // 2
            out.extend(CanonicalBlock("B", size, v) for v in b_values)
            out.append(CanonicalBlock("E", size))
            if k % 2 == 0:
                out.append(CanonicalBlock("D", size))
            else:
                out.append(CanonicalBlock("F", size))
    return out


# --- 8: distinctness at fixed constants --------------------------------------
def test_criterion_8_distinctness():
    ok = True
    details = []
    for n in (4, 5, 6):
        report = distinctness_report(n)
        parametric = [
            e.label for e in nilpotent_table(n) if e.algebra.parameters()
        ]
        good = (
            report.coincident_pairs == []
            and report.reciprocal_identifications == parametric
        )
        details.append((n, report.pairs_compared, len(report.reciprocal_identifications)))
        ok = ok and good
    _report(
        8,
        ok,
        f"(dim, pairs, reciprocal families) = {details}; no coincident pairs",
    )


# --- 9: round-trips -----------------------------------------------------------
def test_criterion_9_round_trips():
    import importlib.resources as res

    ok = True
    detail = ""
    for name in (
        "nilpotent_dim4.json",
        "nilpotent_dim5.json",
        "nilpotent_dim6.json",
        "nilpotent_dim7.json",
        "solvable_dim2.json",
        "solvable_dim3.json",
    ):
        text = res.files("leibniz_lab").joinpath("fixtures").joinpath(name).read_text()
        from leibniz_lab.formats import algebra_to_doc, doc_to_algebra

        rebuilt = dumps_canonical(
            [algebra_to_doc(doc_to_algebra(d).algebra) for d in json.loads(text)]
        )
        if rebuilt != text:
            ok, detail = False, f"fixture {name} does not round-trip byte-exactly"
            break
    if ok:
        for n in NILPOTENT_COUNTS:
            for entry in nilpotent_table(n)[:3]:
                text = store_algebra(entry.algebra)
                if store_algebra(load_algebra(text).algebra) != text:
                    ok, detail = False, f"{entry.label} does not round-trip"
                    break
    if ok:
        rng = random.Random(99)
        pool = [
            lambda: CanonicalBlock("A", rng.choice((1, 3))),
            lambda: CanonicalBlock("C", rng.choice((1, 3))),
            lambda: CanonicalBlock("E", 2),
            lambda: CanonicalBlock("F", 2),
            lambda: CanonicalBlock(
                "B", 2, Scalar.rational(rng.choice((0, 2, 3, -2)))
            ),
            lambda: CanonicalBlock("D", 4),
        ]
        for k in range(50):
            blocks = [rng.choice(pool)() for _ in range(rng.randint(1, 3))]
            while all(b.kind == "A" and b.size == 1 for b in blocks):
                blocks = [rng.choice(pool)() for _ in range(rng.randint(1, 3))]
            N = direct_sum_matrix(blocks)
            A = algebra_from_blocks(blocks)
            form, _ = form_from_algebra(A)
            if form != N:
                ok, detail = False, f"form round-trip failed for {blocks}"
                break
    _report(9, ok, detail or "fixture files byte-exact; 50 form round-trips exact")
