"""Smoke test for the superluminal_py extension module.

Build it first, e.g. `maturin develop -m crates/py/Cargo.toml`, then run
`python python/smoke.py`.
"""

import math

import superluminal_py as sl


def close(a, b, tol=1e-9):
    return abs(a - b) <= tol


def main():
    l = sl.FrameTransform(10 / 3)
    assert l.regime == "superluminal"
    assert close(l.determinant, -1.0)
    t, x = l.apply(2.0, -2.0)
    assert close(t, -26 / math.sqrt(91)) and close(x, 26 / math.sqrt(91))
    m = sl.compose(l, l.inverse())
    assert all(close(m[i][j], float(i == j)) for i in range(2) for j in range(2))

    assert sl.classify((0, 0), (1, 0)) == "timelike"
    assert not sl.ordering_preserved((0, 0), (1, 0), 10 / 3)

    g = sl.Scenario.builtin("fig2").simulate()
    assert g.flip_count == 3
    assert [e[0] for e in g.order_events(10 / 3)] == ["R", "B", "A"]
    assert g.event_roles(10 / 3) == [("R", 2, 0), ("B", 0, 1), ("A", 0, 1)]
    assert g.photon_count_at(0, 1.0) == 1
    assert g.photon_count_at(10 / 3, -2.3) == 2
    assert g.state_at("B", 4.0) == "e"

    text = sl.Scenario.builtin("fig4").to_text()
    assert sl.Scenario.parse(text).to_text() == text
    try:
        sl.Scenario.parse("")
    except ValueError:
        pass
    else:
        raise AssertionError("empty document accepted")

    svg = g.render(10 / 3)
    assert "<svg" in svg and svg.count('class="flip"') == 3
    assert "<svg" in sl.render_axes(3 / 10)
    print(g.summary(10 / 3))
    print("smoke ok")


if __name__ == "__main__":
    main()
