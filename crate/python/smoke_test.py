"""Smoke test for the pyweaves extension module.

Build and install it first, e.g.

    pip install maturin
    maturin build --release -m crates/python/Cargo.toml
    pip install target/wheels/pyweaves-*.whl

then run ``python3 python/smoke_test.py``.
"""

import json
import math

import pyweaves
from pyweaves import Weave


def main():
    w = Weave.parse("01/10")
    assert (w.m, w.n) == (2, 2)
    assert w.rows == [[0, 1], [1, 0]]
    assert Weave([[0, 1], [1, 0]]) == w
    assert str(w) == "01/10"

    shifted = w.apply({"op": "translate", "a": 1, "b": 0})
    assert str(shifted) == "10/01"
    assert w.is_isotopic(shifted)
    witness = w.isotopy_witness(shifted)
    replayed = w
    for mv in witness:
        replayed = replayed.apply(mv)
    assert replayed == shifted

    canon, size = Weave.parse("10/01").canonical_form()
    assert str(canon) == "01/10" and size == 2
    assert [str(x) for x in w.orbit()] == ["01/10", "10/01"]

    assert w.is_hyperbolic()
    verdict = w.verdict()
    assert verdict["verdict"] == "hyperbolic"
    assert math.isclose(verdict["volume_upper_bound"], 4 * pyweaves.V_OCT)

    layered, layers = Weave.parse("11/11").is_layered()
    assert layered and len(layers) >= 2
    assert Weave.parse("1/1").verdict()["verdict"] == "layered"

    pieces = Weave.parse("11/11").jsj_report()
    assert [p["type"] for p in pieces].count("solid_torus_parallel_family") == 2

    assert w.render() == ".#\n#."
    assert w.render("svg").count('fill="black"') == 2
    assert Weave.from_json(w.to_json()) == w
    assert json.loads(w.to_json())["format"] == "weave/1"

    basics = [pyweaves.plain(8, 8), pyweaves.twill(8, 8, 2, 2), pyweaves.satin(8, 3)]
    assert all(b.is_hyperbolic() for b in basics)
    assert len({str(b.canonical_form()[0]) for b in basics}) == 3

    row = pyweaves.census(3, 3, jobs=2)
    assert row["classes_homeo_hyp"] == 2
    assert row["classes_isotopy_hyp"] == 6

    try:
        Weave.parse("01/1")
    except ValueError as e:
        assert "row 2" in str(e)
    else:
        raise AssertionError("ragged matrix accepted")

    try:
        pyweaves.plain(3, 3)
    except ValueError:
        pass
    else:
        raise AssertionError("odd plain weave accepted")

    print("pyweaves smoke test passed")


if __name__ == "__main__":
    main()
