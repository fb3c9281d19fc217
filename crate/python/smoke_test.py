"""Smoke test for the gf2clifford extension module."""

import cmath
import math

import gf2clifford as g


def main():
    h = g.Tableau.hadamard(2, [0])
    cx = g.Tableau.cnot(2, 0, 1)
    bell = cx.compose(h)
    assert str(bell.conjugate(g.Pauli("+ZI"))) == "+XX"
    assert bell == g.Tableau.from_circuit("n 2\nH 0\nCNOT 0 1\n")
    assert bell.inverse().compose(bell).is_identity()

    x, z = g.Pauli("+X"), g.Pauli("+Z")
    assert not x.commutes_with(z)
    assert (x * z).label == "11"

    q = g.Tableau.random(4, seed=3)
    for scheme in ("cols", "blocks"):
        assert g.Tableau.from_circuit(q.decompose(scheme)) == q
    assert g.Tableau(str(q)) == q

    u = g.Tableau.hadamard(1, [0]).unitary()
    assert all(abs(abs(e) - 1 / math.sqrt(2)) < 1e-12 for row in u for e in row)

    state = g.Stabilizer.zero_state(2).apply(bell)
    amps = dict(state.amplitudes())
    assert set(amps) == {"00", "11"}
    assert abs(amps["00"] - amps["11"]) < 1e-12
    y = dict(g.Stabilizer(["+Y"]).amplitudes())
    assert cmath.isclose(y["1"] / y["0"], 1j)

    try:
        g.Stabilizer(["+XI", "+ZI"])
    except ValueError as e:
        assert "do not commute" in str(e)
    else:
        raise AssertionError("non-commuting generators accepted")

    print("smoke test passed")


if __name__ == "__main__":
    main()
