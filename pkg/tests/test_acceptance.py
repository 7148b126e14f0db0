"""Exit criteria of the build, one test group per criterion.

Run ``pytest tests/test_acceptance.py`` to get a per-criterion PASS/FAIL
summary at the end of the session output.
"""
import json
import math
import random
import subprocess
import sys
from fractions import Fraction as F

import pytest

from conftest import GRID_ALPHAS, GRID_QS
from signedortho.families import (
    FamilyParams,
    check_identity,
    gg_poly,
    p_family_ttrr,
    p_poly_hyper,
    p_poly_ttrr,
    ttrr_beta,
    ttrr_gamma,
)
from signedortho.hypergeom import HypParams, contiguous_residual
from signedortho.orthogonality import (
    InnerProduct,
    gram_schmidt_oracle,
    recovered_recurrence,
    verify_orthogonality,
)
from signedortho.polynomials import Poly, mul
from signedortho.zeros import (
    Structural,
    check_interlacing,
    find_zeros,
    largest_zero_chain,
    odd_even_zero_map,
)

GRID = [(a, q) for a in GRID_ALPHAS for q in GRID_QS]
GRID_IDS = [f"a={a},q={q}" for a, q in GRID]
ONE_PLUS_X = Poly([1, 1])


def criterion(number, title):
    return pytest.mark.acceptance(number, title)


@criterion(1, "closed-form recurrence equals Gram-Schmidt oracle, k <= 20")
@pytest.mark.parametrize("alpha,q", GRID, ids=GRID_IDS)
def test_c1_recurrence_vs_oracle(alpha, q):
    fp = FamilyParams(alpha, q)
    oracle = gram_schmidt_oracle(fp, 20)
    for k, (beta, gamma) in enumerate(recovered_recurrence(fp, oracle)):
        assert beta == ttrr_beta(fp, k)
        if k:
            assert gamma == ttrr_gamma(fp, k)


@criterion(2, "route equivalence and odd factorization, n <= 20")
@pytest.mark.parametrize("alpha,q", GRID, ids=GRID_IDS)
def test_c2_route_equivalence(alpha, q):
    fp = FamilyParams(alpha, q)
    family = p_family_ttrr(fp, 21)
    shifted = p_family_ttrr(fp.shift(1), 20)
    for n in range(0, 21, 2):
        assert family[n] == p_poly_hyper(fp, n) == gg_poly(fp.gg(), n)
        assert family[n + 1] == mul(ONE_PLUS_X, shifted[n])


@criterion(3, "hand-derived values reproduced exactly")
def test_c3_derived_values():
    fp = FamilyParams(F(0), 0)
    assert [ttrr_gamma(fp, k) for k in (1, 2, 3)] == [F(-2, 5), F(-6, 35), F(-20, 63)]
    assert p_poly_ttrr(fp, 2) == Poly([F(-3, 5), 0, 1])
    assert p_poly_ttrr(fp, 3) == mul(ONE_PLUS_X, Poly([F(-3, 7), 0, 1]))
    assert p_poly_ttrr(fp, 4) == Poly([F(5, 21), 0, F(-10, 9), 0, 1])


@criterion(4, "orthogonality characterization with exact moments, n <= 20")
@pytest.mark.parametrize("alpha,q", GRID, ids=GRID_IDS)
def test_c4_orthogonality(alpha, q):
    fp = FamilyParams(alpha, q)
    inner = InnerProduct(fp)
    for n, p in enumerate(p_family_ttrr(fp, 20)):
        report = verify_orthogonality(fp, p, n, inner=inner)
        assert report.passed, f"n={n} fails at m={report.failing_m}"
        assert all(v == 0 for v in report.values[:n]) and report.values[n] != 0


@criterion(5, "zero properties: count, Perron zero, non-interlacing, ordering chain")
@pytest.mark.parametrize("alpha,q", GRID, ids=GRID_IDS)
def test_c5_zero_properties(alpha, q):
    fp = FamilyParams(alpha, q)
    family = p_family_ttrr(fp, 17)
    sets = {}
    for n in range(0, 18):
        rs = find_zeros(fp, n, poly=family[n])
        sets[n] = rs
        if n <= 16:
            assert len(rs) == n  # (a)
        if n % 2:
            assert family[n](F(-1)) == 0  # (b)
            assert rs.roots[0].structural is Structural.AT_MINUS_ONE
    for m in range(1, 9):  # (c)
        result = check_interlacing(sets[2 * m], sets[2 * m + 1])
        assert not result.interlaces
        left, right = result.witness
        assert left.lo == -right.hi and left.hi == -right.lo
    for n in range(1, 9):  # (d)
        chain = largest_zero_chain(alpha, q, n)
        assert all(b.hi < a.lo for a, b in zip(chain, chain[1:]))


@criterion(5, "zero properties: count, Perron zero, non-interlacing, ordering chain")
def test_c5_derived_instances():
    fp = FamilyParams(F(0), 0)
    result = check_interlacing(find_zeros(fp, 2), find_zeros(fp, 3))
    left, right = result.witness
    assert not result.interlaces
    assert abs(float(left.refined) - (-0.654654)) <= 1e-6
    assert abs(float(right.refined) - 0.654654) <= 1e-6
    chain = largest_zero_chain(F(0), 0, 2)
    assert abs(float(chain[0].refined) - 0.90618) <= 1e-5
    assert abs(float(chain[1].refined) - 0.74536) <= 1e-5
    assert chain[0].lo > chain[1].hi


@criterion(6, "derivative identities have zero residual, degree <= 16")
@pytest.mark.parametrize("alpha,q", GRID, ids=GRID_IDS)
def test_c6_derivative_identities(alpha, q):
    fp = FamilyParams(alpha, q)
    for m in range(0, 9):
        if m:
            assert check_identity("zeros1", fp, m).is_zero()
            assert check_identity("zeros2", fp, m).is_zero()
        assert check_identity("zeros3", fp, m).is_zero()


def _random_terminating(rng):
    m = rng.randint(1, 9)
    other = F(rng.randint(-40, 40), rng.randint(1, 12))
    c = F(rng.randint(-40, 40), rng.choice([2, 3, 5, 7, 11]))
    if c.denominator == 1:
        c += F(1, 2)
    z = F(rng.randint(-60, 60), rng.randint(1, 25))
    p = HypParams(F(-m), other, c) if rng.random() < 0.5 else HypParams(other, F(-m), c)
    return p, z


@criterion(7, "contiguous relations vanish exactly on 120 random terminating sets")
def test_c7_contiguous_relations():
    rng = random.Random(20261017)
    cases = [_random_terminating(rng) for _ in range(120)]
    assert len({(p.a, p.b, p.c, z) for p, z in cases}) >= 100
    for p, z in cases:
        for rel in range(1, 6):
            assert contiguous_residual(rel, p, z) == 0, (rel, p, z)


@criterion(8, "odd/even zero map for n <= 8 and k, l in {0, 1}")
@pytest.mark.parametrize("alpha,q", GRID, ids=GRID_IDS)
def test_c8_zero_map(alpha, q):
    for n in range(1, 9):
        for k in (0, 1):
            for l in (0, 1):
                assert odd_even_zero_map(alpha, q, n, k, l).passed


@criterion(9, "negative control: perturbed gamma breaks orthogonality where it enters")
@pytest.mark.parametrize("alpha,q", [(F(0), 0), (F(3, 2), 2), (F(-1, 2), 3)])
@pytest.mark.parametrize("index", [1, 3, 8])
def test_c9_negative_control(alpha, q, index):
    fp = FamilyParams(alpha, q)
    inner = InnerProduct(fp)
    perturbed = p_family_ttrr(fp, 12, {index: F(1, 1000)})
    outcomes = [verify_orthogonality(fp, p, n, inner=inner).passed for n, p in enumerate(perturbed)]
    # gamma_K first enters P_{K+1}; everything before it is untouched
    first_failure = outcomes.index(False)
    assert first_failure == index + 1
    assert all(outcomes[: index + 1])


def _verify_run(path):
    cmd = [sys.executable, "-m", "signedortho", "verify", "--format", "json", "--out", str(path)]
    return subprocess.run(cmd, capture_output=True, text=True, timeout=600)


@criterion(10, "two verify runs on the default grid are byte-identical")
def test_c10_determinism(tmp_path):
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    runs = [_verify_run(first), _verify_run(second)]
    assert [r.returncode for r in runs] == [0, 0], runs[0].stderr
    assert first.read_bytes() == second.read_bytes()
    report = json.loads(first.read_text())
    assert report["summary"]["failed"] == 0
    assert report["summary"]["total"] > 0
