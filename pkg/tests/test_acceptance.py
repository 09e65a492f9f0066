"""The acceptance gate.

Eight end-to-end criteria, one test each, run in order; every test prints a
single "acceptance criterion N [...]: PASS/FAIL" line so the gate can be
read off a terminal.  The file is deliberately self-contained: golden data
and certification helpers are restated here rather than imported from the
unit-test modules, so a regression in those files cannot silently weaken
the gate.

1. hand-checked multiplicity tables for C6 acting on Z^2
2. hand-checked tables for C6 on Z^3, including the reciprocity twist
3. hand-checked tables for S3 on the A2 root lattice
4. brute-force differential over every builtin for q = 1..24
5. the reciprocity identity, symbolically and numerically
6. gcd-property, leading terms, and minimal periods
7. character engine: orthogonality, reference tables, Frobenius reciprocity
8. randomized Smith-form certification and random conjugated
   signed-permutation subgroups of GL2(Z) and GL3(Z)
"""

import random
import time
from contextlib import contextmanager
from fractions import Fraction
from math import gcd

import pytest

from equichar import (IntMatrix, analyze, cyclic_subgroup,
                      dixon_character_table, generate_group, induce_trivial,
                      ingest_character_table, inner_product,
                      smith_normal_form, tensor_identify)
from equichar.cyclo import Cyclotomic

from conftest import (BUILTIN_NAMES, load_reference_table,
                      make_builtin_group, mat)


@contextmanager
def criterion(capsys, number, slug):
    outcome = {"ok": False}
    try:
        yield outcome
    finally:
        verdict = "PASS" if outcome["ok"] else "FAIL"
        with capsys.disabled():
            print(f"\nacceptance criterion {number} [{slug}]: {verdict}")


def F6(*nums):
    return tuple(Fraction(n, 6) for n in nums)


def row_by_generator_value(table, group, power):
    """Index of the character sending the first generator to zeta_e^power."""
    target = Cyclotomic.root_of_unity(group.exponent, power)
    cls = group.class_of[1]
    matches = [i for i in range(table.size)
               if table.rows[i].values[cls] == target]
    assert len(matches) == 1
    return matches[0]


# multiplicity constituents, coefficients low to high over denominator 6,
# keyed by character exponent j then by gcd(6, q)
C6_Z2_GOLDEN = {
    1: {1: F6(-1, 0, 1), 2: F6(-4, 0, 1), 3: F6(-3, 0, 1), 6: F6(-6, 0, 1)},
    5: {1: F6(-1, 0, 1), 2: F6(-4, 0, 1), 3: F6(-3, 0, 1), 6: F6(-6, 0, 1)},
    2: {1: F6(-1, 0, 1), 2: F6(2, 0, 1), 3: F6(-3, 0, 1), 6: F6(0, 0, 1)},
    4: {1: F6(-1, 0, 1), 2: F6(2, 0, 1), 3: F6(-3, 0, 1), 6: F6(0, 0, 1)},
    3: {1: F6(-1, 0, 1), 2: F6(-4, 0, 1), 3: F6(3, 0, 1), 6: F6(0, 0, 1)},
    0: {1: F6(5, 0, 1), 2: F6(8, 0, 1), 3: F6(9, 0, 1), 6: F6(12, 0, 1)},
}

C6_Z3_GOLDEN = {
    1: {1: F6(1, -1, -1, 1), 2: F6(2, -1, -2, 1),
        3: F6(3, -3, -1, 1), 6: F6(6, -3, -2, 1)},
    5: {1: F6(1, -1, -1, 1), 2: F6(2, -1, -2, 1),
        3: F6(3, -3, -1, 1), 6: F6(6, -3, -2, 1)},
    2: {1: F6(-1, -1, 1, 1), 2: F6(-2, -1, 2, 1),
        3: F6(-3, -3, 1, 1), 6: F6(-6, -3, 2, 1)},
    4: {1: F6(-1, -1, 1, 1), 2: F6(-2, -1, 2, 1),
        3: F6(-3, -3, 1, 1), 6: F6(-6, -3, 2, 1)},
    3: {1: F6(-2, 2, -1, 1), 2: F6(-4, 2, -2, 1),
        3: F6(-6, 6, -1, 1), 6: F6(-12, 6, -2, 1)},
    0: {1: F6(2, 2, 1, 1), 2: F6(4, 2, 2, 1),
        3: F6(6, 6, 1, 1), 6: F6(12, 6, 2, 1)},
}

# S3 on the A2 root lattice, keyed by gcd(3, q)
S3_GOLDEN = {
    "trivial": {1: F6(2, 3, 1), 3: F6(6, 3, 1)},
    "sign": {1: F6(2, -3, 1), 3: F6(6, -3, 1)},
    "two": {1: F6(-2, 0, 2), 3: F6(-6, 0, 2)},
}

EXPECTED_MINIMAL_PERIOD = {"c6-z2": 6, "c6-z3": 6, "s3-a2": 3,
                           "trivial-z2": 1, "dihedral-z2": 2}


@pytest.fixture(scope="module")
def reports():
    return {name: analyze(make_builtin_group(name), name=name, verify=False)
            for name in BUILTIN_NAMES}


def check_golden(report, golden, index_of):
    for key, expected in golden.items():
        qp = report.equivariant.multiplicities[index_of(key)]
        for d, coeffs in expected.items():
            assert qp.constituent(d) == coeffs, (key, d)


def test_criterion_1_c6_on_z2_golden_tables(capsys):
    with criterion(capsys, 1, "C6 on Z^2 golden tables") as out:
        start = time.perf_counter()
        report = analyze(make_builtin_group("c6-z2"), name="c6-z2",
                         verify=False)
        elapsed = time.perf_counter() - start
        assert report.period == 6
        table, group = report.table, report.group
        check_golden(report, C6_Z2_GOLDEN,
                     lambda j: row_by_generator_value(table, group, j))
        trivial = report.equivariant.multiplicities[table.trivial_index]
        assert trivial.constituent(6) == F6(12, 0, 1)  # (q^2 + 12)/6
        assert elapsed < 1.0, f"took {elapsed:.3f}s"
        out["ok"] = True


def test_criterion_2_c6_on_z3_golden_tables(capsys):
    with criterion(capsys, 2, "C6 on Z^3 golden tables") as out:
        start = time.perf_counter()
        report = analyze(make_builtin_group("c6-z3"), name="c6-z3",
                         verify=False)
        elapsed = time.perf_counter() - start
        assert report.period == 6
        table, group = report.table, report.group
        check_golden(report, C6_Z3_GOLDEN,
                     lambda j: row_by_generator_value(table, group, j))
        cube = report.equivariant.multiplicities[
            row_by_generator_value(table, group, 3)]
        assert cube.constituent(6) == F6(-12, 6, -2, 1)
        # the reciprocity character is the cube of the generator character
        assert report.reciprocity_index == \
            row_by_generator_value(table, group, 3)
        assert elapsed < 1.0, f"took {elapsed:.3f}s"
        out["ok"] = True


def test_criterion_3_s3_on_a2_golden_tables(capsys):
    with criterion(capsys, 3, "S3 on A2 golden tables") as out:
        start = time.perf_counter()
        report = analyze(make_builtin_group("s3-a2"), name="s3-a2",
                         verify=False)
        elapsed = time.perf_counter() - start
        assert report.period == 3
        table = report.table
        sign_index = next(i for i in range(table.size)
                          if table.degrees[i] == 1
                          and i != table.trivial_index)
        two_index = next(i for i in range(table.size)
                         if table.degrees[i] == 2)
        indices = {"trivial": table.trivial_index, "sign": sign_index,
                   "two": two_index}
        check_golden(report, S3_GOLDEN, indices.__getitem__)
        trivial = report.equivariant.multiplicities[table.trivial_index]
        assert trivial.constituent(1) == F6(2, 3, 1)  # (q^2 + 3q + 2)/6
        assert report.reciprocity_index == sign_index
        assert elapsed < 1.0, f"took {elapsed:.3f}s"
        out["ok"] = True


def test_criterion_4_oracle_differential(capsys):
    with criterion(capsys, 4, "oracle differential, q = 1..24") as out:
        start = time.perf_counter()
        for name in BUILTIN_NAMES:
            report = analyze(make_builtin_group(name), name=name, q_max=24)
            assert report.oracle_q_max == 24
            oracle = [v for v in report.verdicts
                      if v.name.startswith("oracle-")]
            assert len(oracle) == 5
            failed = [v for v in oracle if not v.passed]
            assert not failed, (name, failed)
        elapsed = time.perf_counter() - start
        assert elapsed < 60.0, f"took {elapsed:.3f}s"
        out["ok"] = True


def test_criterion_5_reciprocity_suite(capsys, reports):
    with criterion(capsys, 5, "reciprocity identities") as out:
        for name, report in reports.items():
            by_name = {v.name: v for v in report.verdicts}
            assert by_name["reciprocity-twist"].passed, name
            assert by_name["reciprocity-aggregate"].passed, name
            # independent numeric probe of the same identity
            table = report.table
            sign = (-1) ** report.group.rank
            delta = table.rows[report.reciprocity_index]
            mults = report.equivariant.multiplicities
            for i in range(table.size):
                twisted = tensor_identify(table, i, delta)
                for q in range(-8, 9):
                    assert mults[twisted].evaluate(q) == \
                        sign * mults[i].evaluate(-q), (name, i, q)
        out["ok"] = True


def test_criterion_6_structural_theorems(capsys, reports):
    with criterion(capsys, 6, "gcd-property, leading term, period") as out:
        for name, report in reports.items():
            by_name = {v.name: v for v in report.verdicts}
            assert by_name["gcd-property"].passed, name
            assert by_name["leading-term"].passed, name
            ell, order = report.group.rank, report.group.order
            for i, qp in enumerate(report.equivariant.multiplicities):
                lead = Fraction(report.table.degrees[i], order)
                for r in range(1, report.period + 1):
                    coeffs = qp.constituent(r)
                    assert coeffs == qp.constituent(gcd(report.period, r))
                    assert len(coeffs) == ell + 1, (name, i, r)
                    assert coeffs[-1] == lead, (name, i, r)
            assert report.minimal_periods[report.table.trivial_index] == \
                EXPECTED_MINIMAL_PERIOD[name], name
        out["ok"] = True


def test_criterion_7_character_engine(capsys):
    with criterion(capsys, 7, "character engine") as out:
        references = {"c6-z2": "c6_table.json", "s3-a2": "s3_table.json",
                      "dihedral-z2": "d4_table.json"}
        for name, fname in references.items():
            group = make_builtin_group(name)
            table = dixon_character_table(group)
            m = group.exponent
            # first orthogonality: rows are orthonormal
            for i in range(table.size):
                for j in range(table.size):
                    expected = Cyclotomic.rational(m, 1 if i == j else 0)
                    assert inner_product(table.rows[i], table.rows[j]) \
                        == expected, (name, i, j)
            # second orthogonality: columns give centralizer orders
            for c in range(group.class_count):
                for cp in range(group.class_count):
                    total = Cyclotomic.rational(m, 0)
                    for row in table.rows:
                        total = total + \
                            row.values[c] * row.values[cp].conjugate()
                    centralizer = Fraction(group.order, group.class_sizes[c])
                    expected = Cyclotomic.rational(
                        m, centralizer if c == cp else 0)
                    assert total == expected, (name, c, cp)
            # agreement with an independently entered reference table
            reference = ingest_character_table(
                group, load_reference_table(fname))

            def key(row):
                return tuple(tuple(v.coeffs) for v in row.values)

            assert sorted(map(key, table.rows)) == \
                sorted(map(key, reference.rows)), name
        # Frobenius reciprocity over every cyclic subgroup of every builtin
        for name in BUILTIN_NAMES:
            group = make_builtin_group(name)
            table = dixon_character_table(group)
            subgroups = {cyclic_subgroup(group, i)
                         for i in range(group.order)}
            for sub in subgroups:
                induced = induce_trivial(group, sub)
                for row in table.rows:
                    lhs = inner_product(row, induced)
                    total = Cyclotomic.rational(group.exponent, 0)
                    for h in sub:
                        total = total + row.values[group.class_of[h]]
                    assert lhs == total * Fraction(1, len(sub)), name
                    value = lhs.as_fraction()
                    assert value.denominator == 1 and value >= 0, name
        out["ok"] = True


def certify_snf(a):
    snf = smith_normal_form(a)
    product = snf.left_transform.multiply(a).multiply(snf.right_transform)
    assert product == snf.diagonal(a.rows)
    assert abs(snf.left_transform.det()) == 1
    assert abs(snf.right_transform.det()) == 1
    assert all(e >= 1 for e in snf.divisors)
    for first, second in zip(snf.divisors, snf.divisors[1:]):
        assert second % first == 0
    assert snf.rank == a.rank()


def signed_permutation(rng, n):
    perm = list(range(n))
    rng.shuffle(perm)
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        rows[i][perm[i]] = rng.choice((-1, 1))
    return mat(rows)


def random_unimodular_pair(rng, n, steps=6):
    """A unimodular matrix and its exact inverse, built in tandem from
    elementary row operations."""
    fwd = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    inv = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        if rng.random() < 0.5:
            k = rng.choice((-2, -1, 1, 2))
            for col in range(n):
                fwd[i][col] += k * fwd[j][col]
            for row in range(n):
                inv[row][j] -= k * inv[row][i]
        else:
            fwd[i], fwd[j] = fwd[j], fwd[i]
            for row in range(n):
                inv[row][i], inv[row][j] = inv[row][j], inv[row][i]
    u, u_inv = mat(fwd), mat(inv)
    assert u.multiply(u_inv) == IntMatrix.identity(n)
    return u, u_inv


def test_criterion_8_property_based_suite(capsys):
    with criterion(capsys, 8, "randomized certification") as out:
        rng = random.Random(20260815)
        certified = 0
        for _ in range(120):
            n = rng.randint(1, 5)
            certify_snf(mat([[rng.randint(-5, 5) for _ in range(n)]
                             for _ in range(n)]))
            certified += 1
        assert certified >= 100

        groups_checked = 0
        for _ in range(20):
            n = rng.choice((2, 3))
            u, u_inv = random_unimodular_pair(rng, n)
            generators = [u.multiply(signed_permutation(rng, n)).multiply(u_inv)
                          for _ in range(rng.randint(1, 2))]
            group = generate_group(generators, rank=n)
            report = analyze(group, verify=False, q_max=12)
            by_name = {v.name: v for v in report.verdicts}
            assert by_name["dimension-identity"].passed
            assert by_name["integrality"].passed
            # direct restatement of both properties
            for q in range(1, 13):
                total = 0
                for i, qp in enumerate(report.equivariant.multiplicities):
                    value = qp.evaluate(q)
                    assert value.denominator == 1 and value >= 0, (n, i, q)
                    total += report.table.degrees[i] * value
                assert total == q ** n, (n, q)
            groups_checked += 1
        assert groups_checked >= 20
        out["ok"] = True
