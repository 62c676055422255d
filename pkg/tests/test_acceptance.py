"""Acceptance gate: nine criteria at their stated tolerances and time budgets.

Each test prints one PASS/FAIL line; the lines are repeated in the pytest
terminal summary (see conftest.py).
"""

import cmath
import math
import random
import time
from contextlib import contextmanager
from fractions import Fraction

from oracles import fixed_point_kind, forward_convergents, random_complex, rel_err
from qcf.catalog import catalog_get, ramanujan_claim_check
from qcf.cfeval import (
    ElementStream,
    Status,
    approximants,
    limit_estimate,
    odd_even_reports,
    states,
    to_unit_denominators,
)
from qcf.classify import MapKind, classify_lft
from qcf.contract import even_part, odd_part
from qcf.errors import PoleEncountered, ZeroContractionDenominator, ZeroElement
from qcf.scan import scan_region
from qcf.verdict import Conclusion, verdict

RESULTS = []


@contextmanager
def criterion(num, title, budget):
    t0 = time.perf_counter()
    try:
        yield
    except BaseException:
        _record(num, title, False, time.perf_counter() - t0, budget)
        raise
    dt = time.perf_counter() - t0
    _record(num, title, dt < budget, dt, budget)
    assert dt < budget, f"criterion {num} took {dt:.2f} s (budget {budget} s)"


def _record(num, title, ok, dt, budget):
    line = f"criterion {num} {'PASS' if ok else 'FAIL'}: {title} [{dt:.2f} s / {budget} s]"
    RESULTS.append(line)
    print(line)


def _ratio(p, q):
    return Fraction(p, q) if isinstance(p, int) and isinstance(q, int) else p / q


def _parts_agree(b0, a, b, tol):
    P, Q = forward_convergents(b0, a, b)
    s = ElementStream.from_lists(b0, a, b)
    for part, shift in ((even_part(s), 0), (odd_part(s), 1)):
        for n, v in approximants(part, len(a), rescale=False):
            ref = _ratio(P[2 * n + shift], Q[2 * n + shift])
            if tol == 0:
                assert v == ref
            else:
                assert rel_err(v, ref) <= tol


def test_c1_contraction_oracle():
    rng = random.Random(1)
    with criterion(1, "even/odd parts reproduce P_2n/Q_2n and P_2n+1/Q_2n+1", 5):
        for _ in range(200):
            L = rng.randint(3, 40)
            a = [random_complex(rng) for _ in range(L)]
            b = [random_complex(rng) for _ in range(L)]
            _parts_agree(random_complex(rng), a, b, 1e-10)
        done = 0
        while done < 50:
            L = rng.randint(3, 12)
            a = [rng.choice([-5, -3, -2, -1, 1, 2, 3, 5]) for _ in range(L)]
            b = [rng.randint(-5, 5) for _ in range(L)]
            try:
                _parts_agree(rng.randint(-5, 5), a, b, 0)
            except (PoleEncountered, ZeroContractionDenominator, ZeroElement, ZeroDivisionError):
                continue
            done += 1


def test_c2_classification():
    rng = random.Random(2)
    with criterion(2, "classification examples and 1000-point trichotomy oracle", 1):
        assert classify_lft(-0.25).kind is MapKind.PARABOLIC
        for c in (-0.3, -1, -5):
            assert classify_lft(c).kind is MapKind.ELLIPTIC
        for c in (2, 1j, -0.2, 0.25):
            assert classify_lft(c).kind is MapKind.LOXODROMIC
        disagreements = 0
        for _ in range(1000):
            c = cmath.rect(10 ** rng.uniform(-3, 3), rng.uniform(-math.pi, math.pi))
            kind = classify_lft(c).kind
            if kind is not MapKind.BOUNDARY and kind.value != fixed_point_kind(c):
                disagreements += 1
        assert disagreements == 0


def test_c3_tail_limit():
    fam = catalog_get("eo1").fam
    with criterion(3, "eo1 even-part element 100 matches -1/((1+q)(1+1/q))", 1):
        for q in (2, -3, 1 + 1j):
            c = -1 / ((1 + q) * (1 + 1 / q))
            s = to_unit_denominators(even_part(ElementStream.from_family(fam, complex(q))))
            assert abs(s.element(100)[0].to_complex() - c) <= 1e-6
        assert abs(-1 / ((1 + 2) * (1 + 1 / 2)) + 2 / 9) < 1e-15


def test_c4_example_one():
    fam = catalog_get("eo1").fam
    with criterion(4, "eo1 odd and even parts converge; verdict ConvergesOddEven", 2):
        for q in (2, -3, 1 + 1j):
            odd, even = odd_even_reports(ElementStream.from_family(fam, complex(q)),
                                         tol=1e-8, n_max=400)
            assert odd.status is Status.CONVERGED and even.status is Status.CONVERGED
            assert verdict(fam, q).conclusion is Conclusion.CONVERGES_ODD_EVEN


def test_c5_example_two():
    fam = catalog_get("eo2").fam
    with criterion(5, "eo2 verdicts; converges at q=2, never at q=-2 up to n=5000", 10):
        for q in (2, 3j, -5):
            assert verdict(fam, q).conclusion is Conclusion.CONVERGES_FULL
        for q in (-2, -3.9):
            assert verdict(fam, q).conclusion is Conclusion.EXCEPTIONAL
        r = limit_estimate(ElementStream.from_family(fam, 2.0), tol=1e-10, n_max=2000)
        assert r.status is Status.CONVERGED
        # convergence is detected as soon as it happens, so one long run covers every n_max
        r = limit_estimate(ElementStream.from_family(fam, -2.0), n_max=5000)
        assert r.status is not Status.CONVERGED


def test_c6_ramanujan():
    with criterion(6, "odd/even limits of 1/K(1/x) at x = 0.3 match the closed fractions", 2):
        r = ramanujan_claim_check(0.3)
        assert r.odd_discrepancy <= 1e-8 and r.even_discrepancy <= 1e-8


def test_c7_catalog_convergence():
    with criterion(7, "GG converges in full; S1, S2, S3 odd and even parts converge", 5):
        gg = catalog_get("gg").fam
        for q in (2, 1.1j):
            assert verdict(gg, q).conclusion is Conclusion.CONVERGES_FULL
            assert limit_estimate(ElementStream.from_family(gg, complex(q))).status is Status.CONVERGED
        for name in ("s1", "s2", "s3"):
            odd, even = odd_even_reports(ElementStream.from_family(catalog_get(name).fam, 2.0),
                                         tol=1e-8, n_max=1000)
            assert odd.status is Status.CONVERGED and even.status is Status.CONVERGED


def test_c8_determinant_identity():
    rng = random.Random(8)
    with criterion(8, "exact determinant identity on 50 integer instances", 2):
        for _ in range(50):
            L = rng.randint(1, 12)
            a = [rng.choice([-7, -3, -1, 1, 2, 5]) for _ in range(L)]
            b = [rng.randint(-6, 6) for _ in range(L)]
            prod = 1
            for st in states(ElementStream.from_lists(rng.randint(-4, 4), a, b), L):
                if st.n:
                    prod *= a[st.n - 1]
                    assert st.Pn * st.Qprev - st.Pprev * st.Qn == (-1) ** (st.n - 1) * prod


def test_c9_scan_soundness():
    fam = catalog_get("eo2").fam
    with criterion(9, "eo2 101x101 scan: sound verdicts, exceptional rows on [-4, -1)", 120):
        rows = list(scan_region(fam, (-5, 5), (-5, 5), 101, n_max=1500))
        step = 10 / 100
        assert len(rows) > 9000
        for r in rows:
            assert abs(r.q) > 1
            if r.conclusion == "ConvergesFull":
                assert r.full_status != "DivergentOscillation"
            elif r.conclusion == "ConvergesOddEven":
                assert "DivergentOscillation" not in (r.odd_status, r.even_status)
            elif r.conclusion == "Exceptional":
                assert abs(r.q.imag) <= step / 2
                assert -4 - step / 2 <= r.q.real < -1
        assert sum(r.conclusion == "Exceptional" for r in rows) == 30
