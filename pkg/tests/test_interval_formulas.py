from fractions import Fraction as Fr

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from finconv import interval_formulas as iv

unit = st.fractions(min_value=0, max_value=1, max_denominator=200)


def test_eval_examples():
    for t in iv.grid(8):
        assert iv.evaluate("phi", 1, t) == t
        assert iv.evaluate("chi", 0, t) == t
    assert iv.evaluate("phi", Fr(1, 2), Fr(1, 4)) == Fr(3, 8)
    assert iv.evaluate("psi", 0, Fr(1, 2)) == 1
    assert iv.evaluate("chi", 1, Fr(1, 2)) == Fr(1, 4)


def test_eval_rejects_out_of_range_and_floats():
    with pytest.raises(ValueError):
        iv.evaluate("phi", Fr(3, 2), 0)
    with pytest.raises(ValueError):
        iv.evaluate("chi", 0, -1)
    with pytest.raises(TypeError):
        iv.evaluate("phi", 0.5, 0)


def test_all_identities_hold():
    results = iv.check_boundaries()
    failed = [r for r in results if not r.passed]
    assert not failed, failed
    names = {r.name for r in results}
    assert "chi(0,t) = t" in names and "chi(s,1) = 1" in names


def test_chi_breakpoint_agreement_symbolic():
    s = sympy.symbols("s")
    p0, p1, p2 = iv.CHI.pieces
    b1, b2 = (1 + s) / 4, (2 + s) / 4
    assert sympy.simplify(p0.expr(s, b1) - sympy.Rational(1, 4)) == 0
    assert sympy.simplify(p1.expr(s, b1) - sympy.Rational(1, 4)) == 0
    assert sympy.simplify(p1.expr(s, b2) - p2.expr(s, b2)) == 0
    assert sympy.simplify(p2.expr(s, 1) - 1) == 0


@given(unit, unit)
def test_values_stay_in_unit_interval(s, t):
    for tag in iv.SCHEDULES:
        assert 0 <= iv.evaluate(tag, s, t) <= 1


@given(unit, unit, unit)
def test_chi_strictly_increasing_in_t(s, t1, t2):
    if t1 < t2:
        assert iv.evaluate("chi", s, t1) < iv.evaluate("chi", s, t2)


@given(unit, unit)
def test_mirror_schedules_reflect(s, t):
    # max variants are the unit-interval mirror images of the min variants
    assert iv.evaluate("phi_max", s, t) == 1 - iv.evaluate("phi", s, 1 - t)
    assert iv.evaluate("psi_max", s, t) == 1 - iv.evaluate("psi", s, t)


def loop():
    return iv.PLPath(((0, (0, 0)), (Fr(1, 3), (1, 2)), (Fr(2, 3), (3, -1)), (1, (0, 0))))


def test_phi_stages_fix_endpoints_and_interpolate():
    l = loop()
    e = iv.PLPath.constant(l.start)
    le = l.concat(e)
    for s in iv.grid(8):
        stage = iv.reparametrized(l, "phi", s)
        assert stage(0) == l.start and stage(1) == l.end
    for t in iv.grid(64):
        assert iv.reparametrized(l, "phi", 0)(t) == le(t)
        assert iv.reparametrized(l, "phi", 1)(t) == l(t)
        assert iv.reparametrized(l, "phi_max", 0)(t) == e.concat(l)(t)


def test_psi_contracts_loop_times_inverse():
    l = loop()
    ll = l.concat(l.inverse())
    lil = l.inverse().concat(l)
    for t in iv.grid(64):
        assert iv.reparametrized(l, "psi", 0)(t) == ll(t)
        assert iv.reparametrized(l, "psi", 1)(t) == l.start
        assert iv.reparametrized(l, "psi_max", 0)(t) == lil(t)
        assert iv.reparametrized(l, "psi_max", 1)(t) == l.end


def test_chi_reassociates_on_a_concatenated_loop():
    # for a single loop l: chi(0,.) is the identity; chi(1,.) maps (l.l).l to l.(l.l)
    a = loop()
    b = iv.PLPath(((0, (0, 0)), (Fr(1, 2), (5, 5)), (1, (0, 0))))
    c = iv.PLPath(((0, (0, 0)), (1, (0, 0))))
    left, right = a.concat(b).concat(c), a.concat(b.concat(c))
    for t in iv.grid(64):
        assert left(iv.evaluate("chi", 0, t)) == left(t)
        assert left(iv.evaluate("chi", 1, t)) == right(t)


def test_plpath_validation():
    with pytest.raises(ValueError):
        iv.PLPath(((0, (0,)), (0, (1,))))
    with pytest.raises(ValueError):
        iv.PLPath(((0, (0,)),))
    with pytest.raises(ValueError):
        loop().concat(iv.PLPath.constant((9, 9)))
