import cmath
import math

import pytest

from oracles import fixed_point_kind
from qcf.catalog import catalog_get
from qcf.cfeval import ElementStream, to_unit_denominators
from qcf.classify import (
    MapKind,
    Part,
    TailFormula,
    classify_lft,
    classify_roots,
    fixed_points,
    tail_parameter,
    worpitzky_check,
)
from qcf.contract import even_part, odd_part
from qcf.errors import DegenerateMap, NotApplicable, OutOfDomain
from qcf.qpoly import FamilySpec, PolynomialQX, check_hypotheses


def t(c, w):
    return c / (1 + w)


def test_fixed_point_examples():
    assert fixed_points(2) == (1, -2)
    x, y = fixed_points(-0.25)
    assert x == y == -0.5
    x, y = fixed_points(-1)
    assert cmath.isclose(x, complex(-0.5, math.sqrt(3) / 2)) or cmath.isclose(
        x, complex(-0.5, -math.sqrt(3) / 2))
    assert abs(abs(1 + x) - 1) < 1e-15 and abs(abs(1 + y) - 1) < 1e-15
    with pytest.raises(DegenerateMap):
        fixed_points(0)


@pytest.mark.parametrize("c,kind", [
    (-0.25, MapKind.PARABOLIC),
    (-0.3, MapKind.ELLIPTIC), (-1, MapKind.ELLIPTIC), (-5, MapKind.ELLIPTIC),
    (2, MapKind.LOXODROMIC), (1j, MapKind.LOXODROMIC), (-0.2, MapKind.LOXODROMIC),
    (0.25, MapKind.LOXODROMIC),
])
def test_classification_examples(c, kind):
    assert classify_lft(c).kind is kind


def test_attractive_point_attracts():
    cls = classify_lft(1j)
    w = 0.3 + 0j
    for _ in range(200):
        w = t(1j, w)
    assert abs(w - cls.x) < 1e-12


def _random_c(rng):
    return cmath.rect(10 ** rng.uniform(-3, 3), rng.uniform(-math.pi, math.pi))


def test_fixed_point_residual(rng):
    for _ in range(1000):
        c = _random_c(rng)
        for w in fixed_points(c):
            assert abs(t(c, w) - w) <= 1e-12 * (1 + abs(w))


def test_trichotomy_against_numpy_roots(rng):
    cs = [_random_c(rng) for _ in range(1000)]
    # real c and near-real c exercise the elliptic side
    cs += [-10 ** rng.uniform(-0.6, 3) for _ in range(200)]
    bad = 0
    for c in cs:
        kind = classify_lft(c).kind
        if kind is MapKind.BOUNDARY:
            continue
        bad += kind.value != fixed_point_kind(c)
    assert bad == 0


def test_real_line_law(rng):
    for _ in range(500):
        c = rng.uniform(-50, 50)
        if c == 0:
            continue
        kind = classify_lft(c).kind
        if c < -0.25:
            assert kind is MapKind.ELLIPTIC
        elif c > -0.25:
            assert kind is MapKind.LOXODROMIC or abs(c + 0.25) < 1e-10
    assert classify_lft(-0.25).kind is MapKind.PARABOLIC


def test_branch_swap(rng):
    for _ in range(300):
        c = _random_c(rng)
        x, y = fixed_points(c)
        a, b = classify_roots(c, x, y), classify_roots(c, y, x)
        assert a.kind is b.kind and a.x == b.x and a.y == b.y


def test_boundary_band():
    assert classify_lft(-0.25 + 2e-12).kind is MapKind.BOUNDARY
    assert classify_lft(-0.25 + 1e-14).kind is MapKind.PARABOLIC
    assert classify_lft(-1 + 1e-13j).kind is MapKind.ELLIPTIC
    assert classify_lft(-1 + 1e-6j).kind is MapKind.LOXODROMIC


def test_tail_parameter_examples():
    eo1 = catalog_get("eo1").fam
    tp = tail_parameter(eo1, check_hypotheses(eo1), Part.EVEN, 2)
    assert abs(tp.c + 2 / 9) < 1e-15 and tp.formula_used is TailFormula.T4_CONTRACTION
    eo2 = catalog_get("eo2").fam
    tp = tail_parameter(eo2, check_hypotheses(eo2), "full", 2)
    assert tp.c == 0.5 and tp.formula_used is TailFormula.TP2_EQUAL
    # 2b - a = -2: a_n = q^(4n), b_n = q^n + 1
    fam = FamilySpec(1, [PolynomialQX.parse("x^4")], g=[PolynomialQX.parse("x + 1")])
    rep = check_hypotheses(fam)
    assert (rep.a, rep.b) == (4, 1)
    tp = tail_parameter(fam, rep, "even", 2)
    assert abs(tp.c + 0.16) < 1e-15 and tp.formula_used is TailFormula.TP2_CONTRACTION


def test_tail_parameter_errors():
    eo1 = catalog_get("eo1").fam
    rep = check_hypotheses(eo1)
    with pytest.raises(OutOfDomain):
        tail_parameter(eo1, rep, "even", 0.5)
    with pytest.raises(NotApplicable):
        tail_parameter(eo1, rep, "full", 2)
    gg = catalog_get("gg").fam
    with pytest.raises(NotApplicable):
        tail_parameter(gg, check_hypotheses(gg), "full", 2)
    bad = FamilySpec(1, [PolynomialQX.parse("1")])
    with pytest.raises(NotApplicable):
        tail_parameter(bad, check_hypotheses(bad), "even", 2)


@pytest.mark.parametrize("q", [2, -3, 1 + 1j])
@pytest.mark.parametrize("part", [even_part, odd_part])
def test_tail_limit_agreement(q, part):
    fam = catalog_get("eo1").fam
    c = tail_parameter(fam, check_hypotheses(fam), "even", q).c
    s = to_unit_denominators(part(ElementStream.from_family(fam, complex(q))))
    a100 = s.element(100)[0].to_complex()
    assert abs(a100 - c) <= 1e-6


def test_tail_limit_agreement_eo2_full():
    fam = catalog_get("eo2").fam
    q = 2 + 1j
    c = tail_parameter(fam, check_hypotheses(fam), "full", q).c
    s = to_unit_denominators(ElementStream.from_family(fam, q))
    assert abs(s.element(200)[0].to_complex() - c) <= 1e-6


def test_worpitzky_examples():
    quarter = ElementStream(0, lambda n: (0.25, 1), kind="float")
    assert worpitzky_check(quarter, 1, 100)
    assert not worpitzky_check(ElementStream(0, lambda n: (0.3, 1), kind="float"), 1, 100)
    gg = to_unit_denominators(ElementStream.from_family(catalog_get("gg").fam, 2))
    assert worpitzky_check(gg, 4, 200)
    with pytest.raises(ValueError):
        worpitzky_check(quarter, 5, 5)
    with pytest.raises(ValueError):
        worpitzky_check(ElementStream.from_family(catalog_get("gg").fam, 2), 1, 3)
