from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dyndrf.core import LengthMismatch, NonPositiveDemand, RaggedMatrix, ValidationError
from dyndrf.drf import run
from dyndrf.fileio import (ParseError, RenormalizedWarning, format_instance, format_report,
                           parse_instance, parse_instance_file, parse_report, steps_section)
from dyndrf.generators import gen_random, gen_theorem1, gen_theorem2
from dyndrf.ratios import ratio_report

MICRO_TEXT = """\
# worked example
n 3
m 2
1 1/10
1/10 1
1 1
"""


def test_parse_micro(micro):
    assert parse_instance(MICRO_TEXT) == micro


def test_unnormalized_row_warns():
    with pytest.warns(RenormalizedWarning):
        inst = parse_instance("n 1\nm 2\n2 1\n")
    assert inst.demands[0].coords == (1, F(1, 2))
    assert parse_instance_file("n 1\nm 2\n2 1\n").renormalized == (1,)


def test_zero_entry_is_validation_error():
    with pytest.raises(NonPositiveDemand):
        parse_instance("n 2\nm 2\n1 0\n1 1\n")


def test_header_mismatches():
    with pytest.raises(LengthMismatch):
        parse_instance("n 3\nm 2\n1 1\n1 1\n")
    with pytest.raises(RaggedMatrix):
        parse_instance("n 2\nm 2\n1 1\n1 1 1\n")


@pytest.mark.parametrize("text, line, column", [
    ("n 1\nm 2\n1 0.5\n", 3, 3),
    ("n 1\nm 2\n1 1/0\n", 3, 3),
    ("n 1\nq 2\n1 1\n", 2, 1),
    ("n x\n1 1\n", 1, 1),
    ("n 1\n", 1, 1),
    ("n 2\n1 1\nm 2\n1 1\n", 3, 1),
])
def test_parse_errors_carry_position(text, line, column):
    with pytest.raises(ParseError) as err:
        parse_instance(text)
    assert (err.value.line, err.value.column) == (line, column)
    assert not isinstance(err.value, ValidationError)


def test_note_round_trip():
    inst = gen_theorem1(2, 4, F(1, 10))
    text = format_instance(inst)
    assert "note theorem1" in text
    assert parse_instance(text) == inst


@given(st.integers(1, 12), st.integers(1, 4), st.integers(0, 10**6))
def test_instance_round_trip(n, m, seed):
    inst = gen_random(n, m, seed, 8)
    assert parse_instance(format_instance(inst)) == inst


@given(st.integers(1, 10), st.integers(1, 4), st.integers(0, 10**6))
def test_report_round_trip(n, m, seed):
    inst = gen_random(n, m, seed, 8)
    sols = run(inst)
    ratios = ratio_report(inst, sols)
    rep = parse_report(format_report(inst, sols, algo="bisect", ratios=ratios))
    assert rep.steps == tuple(sols)
    assert rep.ratios == ratios
    assert (rep.n, rep.m, rep.algo) == (n, m, "bisect")


def test_report_lists_saturated_resources(micro):
    text = format_report(micro, run(micro))
    rep = parse_report(text)
    assert rep.saturated == ((0,), (0, 1), (0, 1))
    assert "3\t3\t1/3\t1,2\t20/33 20/33 1/3" in text


def test_steps_section_identical_across_algorithms():
    inst = gen_theorem2(3, F(1, 100))
    sections = {steps_section(format_report(inst, run(inst, a), algo=a)) for a in ("bisect", "naive", "lp")}
    assert len(sections) == 1


def test_ratio_only_report():
    inst = gen_random(5, 2, 3, 8)
    rep = parse_report(format_report(inst, ratios=ratio_report(inst, objective="maxsum")))
    assert rep.steps == ()
    assert rep.ratios.cr2 is None
    assert all(r.ratio2 is None for r in rep.ratios.per_step)


def test_report_parse_errors():
    with pytest.raises(ParseError):
        parse_report("n\t2\n[bogus]\n")
    with pytest.raises(ParseError):
        parse_report("[steps]\n1\t1\t1/2\t1\t1/2\n")  # no header
    with pytest.raises(ParseError):
        parse_report("n\t1\nm\t1\n[steps]\n1\t1\t0.5\t1\t1/2\n")
