from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from atomspec import tailspace as ts
from atomspec.errors import InputError, NonUniformError
from atomspec.symbolic import IndexSet, SymbolicSet


def S_(named=(), idx=None):
    return SymbolicSet(frozenset(named), idx or IndexSet.empty())


GR = ts.builtin_model("grmod_kx")
GO = ts.builtin_model("goodearl")
PID = ts.builtin_model("spec_pid")


def test_grmod_opens():
    assert not ts.is_open(GR, S_(["b"]))
    assert ts.is_open(GR, S_([], IndexSet.finite([0, 5])))
    assert ts.is_open(GR, S_(["b"], IndexSet.tail(0, "leq")))
    assert ts.is_open(GR, S_(["b"], IndexSet.tail(0, "leq") | IndexSet.finite([7])))
    assert not ts.is_open(GR, S_(["b"], IndexSet.finite(range(-3, 4))))
    assert ts.is_open(GR, GR.whole) and ts.is_open(GR, S_())


@given(st.integers(-8, 8), st.sets(st.integers(-10, 10), max_size=4), st.booleans())
def test_grmod_openness_of_tail_plus_finite(n, extra, with_b):
    idx = IndexSet.tail(n, "leq") | IndexSet.finite(extra)
    A = S_(["b"] if with_b else [], idx)
    assert ts.is_open(GR, A)
    # removing the b-tail leaves a finite set that is open only without b
    assert ts.is_open(GR, S_(["b"] if with_b else [], IndexSet.finite(extra))) == (not with_b)


def test_minimal_opens_and_order():
    assert ts.minimal_open_symbolic(GR, "b") == S_(["b"])
    assert ts.minimal_open_symbolic(GR, 3) == S_([], IndexSet.finite([3]))
    assert not ts.order_leq_symbolic(GR, "b", 0)
    assert ts.minimal_open_symbolic(GO, "b") == S_(["b"])
    assert ts.minimal_open_symbolic(PID, "g") == PID.whole
    assert ts.order_leq_symbolic(PID, "g", 4) and not ts.order_leq_symbolic(PID, 4, "g")


def test_alexandroff_verdicts():
    v = ts.is_alexandroff(GR)
    assert not v and v.witnesses == S_(["b"])
    assert not ts.is_alexandroff(GO)
    assert ts.is_alexandroff(PID)


def test_completion_adds_open_b_and_keeps_order():
    for S in (GR, GO):
        C = ts.alexandroff_completion(S)
        assert ts.is_alexandroff(C)
        assert ts.is_open(C, S_(["b"]))
        for p in ["b", -2, 0, 3]:
            if p in S.whole:
                assert ts.minimal_open_symbolic(C, p) == ts.minimal_open_symbolic(S, p)
    assert ts.alexandroff_completion(PID) is PID


def test_trace_topology_on_carrier():
    C = S_(["b"])
    assert ts.is_open(GR, S_(["b"]), C)


def test_select_and_nonuniform():
    within = GR.whole
    kept = ts.select(GR, lambda p: isinstance(p, str) or p <= 2, within)
    assert kept == S_(["b"], IndexSet.tail(2, "leq"))
    with pytest.raises(NonUniformError):
        ts.select(GR, lambda p: isinstance(p, int) and p % 2 == 0, within)


def test_parse_and_check_points():
    assert GR.parse_point("s3") == 3 and GR.parse_point("s_-2") == -2
    assert GO.parse_point("b") == "b"
    with pytest.raises(InputError):
        GO.parse_point("m_-1")
    with pytest.raises(InputError):
        GR.check_point("zz")


def test_schema_validation():
    with pytest.raises(InputError):
        ts.make_schema(["b"], "Q", "s", [ts.Descriptor("singletons")])
    with pytest.raises(InputError):
        ts.make_schema(["b"], "Z", "s", [ts.Descriptor("tail", "c")], direction="leq")
    with pytest.raises(InputError):
        ts.load_schema({"named": ["b"], "domain": "Z", "family": "s", "descriptors": [
            {"kind": "tail", "point": "b", "dir": "leq"}, {"kind": "tail", "point": "b", "dir": "geq"}]})
    # two tails without singletons meet in a set that no descriptor covers
    with pytest.raises(InputError):
        ts.make_schema(["a", "c"], "N", "m", [ts.Descriptor("tail", "a"), ts.Descriptor("tail", "c")], direction="geq")


def test_schema_json_round_trip():
    doc = GR.to_json()
    again = ts.load_schema(doc)
    assert again == GR
