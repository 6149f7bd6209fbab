from __future__ import annotations

import json

import pytest
from hypothesis import given, strategies as st

from dgtor.exceptions import ParseError, ValidationError
from dgtor.spanspec import (
    FIXTURES,
    AlgebraSpec,
    SpanSpec,
    emit_spec,
    fixture,
    list_fixtures,
    parse_spec,
    run,
)

SU4_TEXT = """
name = "su4_u1"
coefficients = "Z"
max_degree = 16

[base]
generators = { c2 = 4, c3 = 6, c4 = 8 }

[left]
generators = {}

[right]
generators = { s = 2 }

[right_map]
c2 = "-6*s^2"
c3 = "-8*s^3"
c4 = "-3*s^4"
"""


def test_su4_text_matches_fixture():
    spec = parse_spec(SU4_TEXT)
    fx = fixture("su4_u1")
    assert spec.base == fx.base and spec.right == fx.right and spec.right_map == fx.right_map
    assert spec.left_map == () and spec.max_degree == 16


@pytest.mark.parametrize("name", ["loop_cp_infty", "free_loop_cp_infty", "su4_u1", "su4_u1_f2",
                                  "cyclic_group:6", "rp_infinity_f2", "random_poly_span:3"])
def test_fixture_round_trip(name):
    spec = fixture(name)
    assert parse_spec(emit_spec(spec)) == spec


names = st.sampled_from(["a", "b", "c", "t"])


@given(st.dictionaries(names, st.sampled_from([2, 4]), min_size=1, max_size=3),
       st.integers(0, 20), st.sampled_from(["Z", "Q", "F2", "F5"]))
def test_round_trip_random(gens, top, coeffs):
    base = AlgebraSpec(tuple(gens.items()))
    right = AlgebraSpec((("s", 2),))
    rmap = tuple((g, f"{d // 2}*s^{d // 2}") for g, d in gens.items())
    spec = SpanSpec(coeffs, base, AlgebraSpec(), right, (), rmap, top)
    assert parse_spec(emit_spec(spec)) == spec


def test_degree_one_base_is_rejected():
    text = 'coefficients = "Z"\n[base]\ngenerators = { a = 1 }\n'
    with pytest.raises(ValidationError) as err:
        parse_spec(text)
    assert err.value.diagnostics[0].line == 3


def test_wrong_degree_image_is_rejected():
    text = SU4_TEXT.replace('c2 = "-6*s^2"', 'c2 = "s^3"')
    with pytest.raises(ValidationError) as err:
        parse_spec(text)
    (diag,) = err.value.diagnostics
    assert "degree 6, expected 4" in diag.message
    assert SU4_TEXT.splitlines()[diag.line - 1].startswith("c2")


def test_odd_base_generator_rules():
    odd = 'coefficients = "{c}"\n[base]\ngenerators = {{ x = 3 }}\n{extra}'
    with pytest.raises(ValidationError):
        parse_spec(odd.format(c="Z", extra=""))
    with pytest.raises(ValidationError):
        parse_spec(odd.format(c="F2", extra=""))
    spec = parse_spec(odd.format(c="F2", extra='polynomial = ["x"]\n'))
    assert spec.base.polynomial == ("x",)


def test_other_validation_errors():
    bad = [
        'coefficients = "F4"\n',
        'coefficients = "Z"\nmax_degree = -1\n',
        'coefficients = "Z"\noutputs = ["pictures"]\n',
        'coefficients = "Z"\n[base]\ngenerators = { a = 2 }\n[left_map]\nb = "1"\n',
        'coefficients = "Z"\n[base]\ngenerators = { a = 4 }\n[right]\ngenerators = { s = 2, t = 4 }\n[right_map]\na = "s^2 + s"\n',
        'coefficients = "Z"\nunknown = 3\n',
    ]
    for text in bad:
        with pytest.raises(ValidationError):
            parse_spec(text)


def test_malformed_text():
    with pytest.raises(ParseError) as err:
        parse_spec('coefficients = "Z"\n[base\n')
    assert err.value.diagnostics[0].line == 2


def test_fixture_registry():
    names = [n for n, _ in list_fixtures()]
    assert "su4_u1" in names and set(names) == set(FIXTURES)
    cyc = fixture("cyclic_group:2")
    assert cyc.base.generators == (("u", 2),) and cyc.right.generators == (("v", 2),)
    assert cyc.right_map == (("u", "2*v"),) and cyc.left.generators == ()
    assert fixture("cyclic_group_2") == cyc
    rp = fixture("rp_infinity_f2")
    assert rp.base.generators == (("i", 2), ("x3", 3), ("x5", 5), ("x9", 9))
    assert rp.coefficients == "F2" and not rp.left.generators and not rp.right.generators
    assert fixture("su4_u1").max_degree == 16 and fixture("loop_cp_infty").max_degree == 12
    with pytest.raises(KeyError):
        fixture("nope")


def test_random_fixture_is_reproducible():
    assert fixture("random_poly_span:7") == fixture("random_poly_span:7")


def test_loop_report():
    report = run(fixture("loop_cp_infty").with_overrides(max_degree=6))
    assert [r["rank"] for r in report.totals] == [1, 1, 0, 0, 0, 0, 0]
    assert "g1_0*g1_0 = 0" in report.relations


def test_reports_are_deterministic():
    spec = fixture("su4_u1").with_overrides(max_degree=10, oracle=True)
    r1, r2 = run(spec), run(spec)
    assert r1.to_text() == r2.to_text()
    assert r1.to_json() == r2.to_json()
    assert "wall_clock_seconds" not in json.loads(r1.to_json())["meta"]
    assert "wall_clock_seconds" in json.loads(r1.to_json(timing=True))["meta"]
    assert r1.oracle["agrees"]


def test_ring_override_drops_char_two_flags():
    spec = fixture("su4_u1_f2").with_overrides(ring="Q")
    assert spec.coefficients == "Q"
    with pytest.raises(ValidationError):
        fixture("rp_infinity_f2").with_overrides(ring="Q")
