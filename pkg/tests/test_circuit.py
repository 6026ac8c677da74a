import numpy as np
import pytest
from conftest import H, embed, permutation_cnot
from hypothesis import given, settings
from hypothesis import strategies as st

from qss513.circuit import (
    Circuit,
    CircuitError,
    CircuitParseError,
    ClassicalPauli,
    Measure,
    Reset,
    conditional_x,
    gate,
    layers,
    metrics,
    parse,
    run,
    serialize,
    unitary_gate,
)
from qss513.recon_erasure import build_erasure_circuit
from qss513.statevector import StateVector

WIDTH = 4


@st.composite
def gate_circuits(draw, width=WIDTH, max_ops=12):
    ops = []
    for _ in range(draw(st.integers(0, max_ops))):
        name = draw(st.sampled_from(["H", "X", "Z", "CNOT", "CZ"]))
        if name in ("CNOT", "CZ"):
            c, t = draw(st.lists(st.integers(0, width - 1), min_size=2, max_size=2, unique=True))
            ops.append(gate(name, c, t))
        else:
            ops.append(gate(name, draw(st.integers(0, width - 1))))
    return Circuit(width, ops)


@st.composite
def mixed_circuits(draw):
    base = draw(gate_circuits())
    ops = list(base.ops)
    bits = 0
    for _ in range(draw(st.integers(0, 3))):
        wire = draw(st.integers(0, WIDTH - 1))
        ops.append(Measure(wire, bits))
        ops.append(conditional_x(bits, wire))
        bits += 1
    return Circuit(WIDTH, ops)


def test_empty_circuit_is_identity():
    out, record = run(Circuit(1), StateVector.zeros(1))
    assert np.allclose(out.amplitudes, [1, 0]) and record == []


def test_h_then_forced_measure():
    c = Circuit(1, (gate("H", 0), Measure(0, 0)))
    out, record = run(c, StateVector.zeros(1), forced=[0])
    assert np.allclose(out.amplitudes, [1, 0]) and record == [0]


def test_disjoint_gates_share_a_layer():
    m = metrics(Circuit(2, (gate("X", 0), gate("X", 1))))
    assert (m.depth, m.x_count) == (1, 2)


def test_same_wire_serializes():
    m = metrics(Circuit(1, (gate("H", 0), gate("H", 0))))
    assert (m.depth, m.h_count) == (2, 2)


def test_cz_accounting_example():
    m = metrics(Circuit(2, (gate("CZ", 0, 1),)))
    assert (m.cnot_count, m.h_count, m.depth) == (1, 2, 1)


def test_conditional_counting_modes():
    c = Circuit(2, (Measure(0, 0), ClassicalPauli((0,), (((1,), (("X", 0), ("Z", 1))),), "p")))
    assert metrics(c).unitary_gates == 0
    assert metrics(c, "worst").conditional_count == 2
    with pytest.raises(ValueError):
        metrics(c, "bogus")


def test_conditional_waits_for_measurement():
    # the X on wire 1 must come after the measurement on wire 0
    c = Circuit(2, (gate("H", 0), Measure(0, 0), conditional_x(0, 1)))
    assert [len(layer) for layer in layers(c)] == [1, 1, 1]


def test_classical_conditioning_executes():
    c = Circuit(2, (gate("X", 0), Measure(0, 0), conditional_x(0, 1)))
    out, record = run(c, StateVector.zeros(2), rng=0)
    assert record == [1]
    assert np.allclose(out.amplitudes, StateVector.from_bits("11").amplitudes)


def test_reset_returns_wire_to_zero():
    c = Circuit(1, (gate("H", 0), Reset(0)))
    for seed in range(5):
        out, _ = run(c, StateVector.zeros(1), rng=seed)
        assert np.allclose(out.amplitudes, [1, 0])


def test_unitary_matches_matrix_oracle():
    c = Circuit(3, (gate("H", 0), gate("CNOT", 0, 2), gate("H", 1)))
    expected = embed(H, 1, 3) @ permutation_cnot(0, 2, 3) @ embed(H, 0, 3)
    assert np.allclose(c.unitary(), expected)


def test_validation_errors():
    with pytest.raises(CircuitError):
        Circuit(2, (gate("X", 2),))
    with pytest.raises(CircuitError):
        Circuit(2, (gate("CNOT", 1, 1),))
    with pytest.raises(CircuitError):
        Circuit(2, (gate("CNOT", 0),))
    with pytest.raises(CircuitError):
        Circuit(2, (conditional_x(0, 1),))  # bit 0 never measured
    with pytest.raises(CircuitError):
        Circuit(2, (Measure(0, 1),))  # bits written out of order
    with pytest.raises(CircuitError):
        Circuit(2, (Measure(0, 0), ClassicalPauli((0,), (((1,), (("H", 0),)),))))
    with pytest.raises(CircuitError):
        Circuit(1, (gate("H", 0), Measure(0, 0))).unitary()


def test_serialize_empty_round_trip():
    text = serialize(Circuit(3))
    assert text == '{"width": 3}\n'
    assert parse(text) == Circuit(3)


def test_cnot_round_trip():
    c = Circuit(2, (gate("CNOT", 0, 1),))
    assert parse(serialize(c)) == c


def test_unitary_gate_round_trip_is_exact():
    q, _ = np.linalg.qr(np.random.default_rng(3).normal(size=(4, 4)) + 0j)
    c = Circuit(2, (unitary_gate(q, 1, 0),))
    again = parse(serialize(c))
    assert again == c
    assert serialize(again) == serialize(c)
    assert metrics(c).opaque_count == 1 and not metrics(c).synthesized


def test_erasure_circuit_round_trip():
    c = build_erasure_circuit((1, 2), decode=True)
    again = parse(serialize(c))
    assert again == c
    assert metrics(again) == metrics(c)


def test_parse_shorthand_conditional():
    text = '{"width": 2}\n{"op": "measure", "wire": 0, "bit": 0}\n{"op": "cpauli", "cond": [0], "paulis": [["X", 1]]}\n'
    c = parse(text)
    assert c.ops[1] == ClassicalPauli((0,), (((1,), (("X", 1),)),))


@pytest.mark.parametrize(
    "text,line",
    [
        ("", 1),
        ('{"width": 2}\nnot json\n', 2),
        ('{"width": 2}\n{"op": "frob", "wires": [0]}\n', 2),
        ('{"wires": 2}\n', 1),
        ('{"width": 2}\n{"op": "h", "wires": [0]}\n{"op": "h"}\n', 3),
        ('{"width": 2}\n{"op": "h", "wires": [5]}\n', 1),
    ],
)
def test_parse_errors_report_line(text, line):
    with pytest.raises(CircuitParseError) as err:
        parse(text)
    assert err.value.line == line


@settings(max_examples=50, deadline=None)
@given(gate_circuits(), gate_circuits())
def test_metrics_additivity(a, b):
    ma, mb, mab = metrics(a), metrics(b), metrics(a + b)
    for field in ("cnot_count", "x_count", "h_count", "other_count", "measurement_count"):
        assert getattr(mab, field) == getattr(ma, field) + getattr(mb, field)
    assert mab.depth <= ma.depth + mb.depth


@settings(max_examples=50, deadline=None)
@given(mixed_circuits())
def test_layering_validity(c):
    sched = layers(c)
    assert len(sched) == metrics(c).depth
    assert sorted(i for layer in sched for i in layer) == list(range(len(c)))
    for layer in sched:
        used = [w for i in layer for w in c.ops[i].touched]
        assert len(used) == len(set(used))


@settings(max_examples=50, deadline=None)
@given(gate_circuits())
def test_cz_expansion_keeps_counts(c):
    expanded = []
    for op in c.ops:
        if op.name == "CZ":
            ctl, tgt = op.wires
            expanded += [gate("H", tgt), gate("CNOT", ctl, tgt), gate("H", tgt)]
        else:
            expanded.append(op)
    e = Circuit(c.num_wires, expanded)
    assert (metrics(e).cnot_count, metrics(e).h_count) == (metrics(c).cnot_count, metrics(c).h_count)
    assert np.allclose(e.unitary(), c.unitary())


@settings(max_examples=25, deadline=None)
@given(mixed_circuits(), st.integers(0, 2**32 - 1))
def test_run_is_deterministic_for_a_seed(c, seed):
    psi = StateVector.from_bits("0110")
    out1, rec1 = run(c, psi, rng=seed)
    out2, rec2 = run(c, psi, rng=seed)
    assert rec1 == rec2
    assert np.array_equal(out1.amplitudes, out2.amplitudes)


@settings(max_examples=25, deadline=None)
@given(mixed_circuits())
def test_mixed_round_trip(c):
    assert parse(serialize(c)) == c
