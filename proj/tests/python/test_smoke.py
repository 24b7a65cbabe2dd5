import cmath
import math

import pytest

import fundsol


WAVE = '{"n":3,"k":2,"monomials":[{"alpha":[2,0,0],"coeff":1.0},{"alpha":[0,2,0],"coeff":1.0},{"alpha":[0,0,2],"coeff":-1.0}]}'
PROD = '{"n":2,"k":2,"monomials":[{"alpha":[1,1],"coeff":1.0}]}'


def test_symbol_roundtrip_and_validation():
    s = fundsol.Symbol.from_json(WAVE)
    assert s.n == 3 and s.k == 2
    assert s([1.0, 2.0, 3.0]) == pytest.approx(-4.0)
    v = s.validate()
    assert v["passes_H"]
    assert v["epsilon"] > 0.0


def test_degenerate_symbol_raises():
    bad = fundsol.Symbol.from_json(
        '{"n":3,"k":3,"monomials":[{"alpha":[1,1,1],"coeff":1.0}]}'
    )
    with pytest.raises(fundsol.FundsolError):
        bad.validate()


def test_test_function_point_value():
    f = fundsol.TestFunction.gaussian(2, [0.3, -0.4], 1.0)
    assert f.point_value() == pytest.approx(math.exp(-0.125), rel=1e-12)


def test_delta_property_case_b():
    s = fundsol.Symbol.from_json(PROD)
    sol = fundsol.Solution(s, sphere_level=512)
    assert sol.case_tag == "B"
    f = fundsol.TestFunction.gaussian(2, [0.0, 0.0], 1.0)
    qf = f.apply_symbol(s)
    got = sol.eval(qf)
    assert abs(got - f.point_value()) <= 3e-2 * abs(f.point_value())
    null = sol.eval_null(qf)
    assert abs(null) <= 3e-2 * abs(f.point_value())
    fam = sol.eval_family(1j, qf)
    assert abs(fam - (got + 1j * null)) < 1e-12


def test_proof_constants_table():
    pc = fundsol.proof_constants(1)
    assert pc["h0"] == pytest.approx(-0.5, rel=1e-12)
    assert pc["m0"] == pytest.approx(0.25, rel=1e-12)
    assert pc["mpp0"] == pytest.approx(pc["mpp0_num"], rel=1e-10)


def test_leray_window_constant_closed_form():
    cubic = fundsol.Symbol.from_json(
        '{"n":3,"k":3,"monomials":[{"alpha":[2,0,1],"coeff":1.0},{"alpha":[0,2,1],"coeff":1.0},{"alpha":[0,0,3],"coeff":1.0}]}'
    )
    u, vals = fundsol.leray_window(cubic, level=96)
    for v in vals:
        assert abs(v - 2.0 * math.pi) <= 2e-2 * 2.0 * math.pi
