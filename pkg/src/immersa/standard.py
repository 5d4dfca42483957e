"""Fixed drawings of the named graphs with known crossing structure.

Every model validates itself at construction time and asserts the crossing
counts and distance classes it is meant to exhibit, so a successful return
is already a mechanical check of the drawing.

Available keys:
    PG-star: pentagon-and-pentagram drawing, 5 crossings, all between
        inner chords at distance 1.
    PG-min: minimal drawing with 2 crossings, one pair at distance 2
        and one at distance 1.
    HG-ring: all 14 vertices on a convex ring, rim edges plus 7 long
        chords; 14 crossings, 7 at distance 1 and 7 at distance 2.
    K33-hex: hexagonal drawing with a single crossing between a disjoint
        edge pair; exactly one 4-cycle and three 6-cycles are crossed.
    theta: fan drawing of the n-strand theta graph with one crossing per
        strand pair and every 2-cycle of rotation number zero.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .graphs import (
    complete_bipartite_graph,
    heawood_graph,
    petersen_graph,
    theta_graph,
)
from .immersion import PlaneImmersion, crossings, validate

# Coordinates are snapped to this grid, so they serialize as short decimals.
GRID = 10**4


def _grid(value):
    return Fraction(round(value * GRID), GRID)


def _classes(records):
    out = {}
    for rec in records:
        out[rec.distance_class] = out.get(rec.distance_class, 0) + 1
    return out


def _checked(imm, expected_classes):
    report = validate(imm)
    assert report.ok, f"standard drawing is degenerate: {report.summary()}"
    recs = crossings(imm)
    assert _classes(recs) == expected_classes, \
        f"crossing classes {_classes(recs)} != {expected_classes}"
    return imm


def _pentagram():
    g = petersen_graph()
    pos = {}
    for i in range(1, 6):
        ang = math.pi / 2 + 2 * math.pi * (i - 1) / 5
        inner = (_grid(math.cos(ang)), _grid(math.sin(ang)))
        pos[f"v{i}"] = inner
        pos[f"u{i}"] = (2 * inner[0], 2 * inner[1])
    poly = {name: (pos[t], pos[h]) for name, t, h in g.edges}
    imm = _checked(PlaneImmersion(g, pos, poly), {1: 5})
    pairs = {rec.edges for rec in crossings(imm)}
    chords = {f"v{i}v{(i + 1) % 5 + 1}" for i in range(1, 6)}
    assert all(a in chords and b in chords for a, b in pairs) and len(pairs) == 5
    return imm


# Snapped from an exact spring embedding of the graph minus u1u2 and u3u4;
# those two edges are rerouted through one breakpoint each.
_PG_MIN_POS = {
    "u1": (Fraction(-15, 8), Fraction(-61, 8)),
    "u2": (Fraction(-103, 8), Fraction(19, 4)),
    "u3": (Fraction(-61, 8), Fraction(27, 8)),
    "u4": (Fraction(16), Fraction(0)),
    "u5": (Fraction(5), Fraction(-61, 4)),
    "v1": (Fraction(0), Fraction(19, 8)),
    "v2": (Fraction(-13), Fraction(75, 8)),
    "v3": (Fraction(-59, 8), Fraction(-13, 8)),
    "v4": (Fraction(5), Fraction(61, 4)),
    "v5": (Fraction(-13), Fraction(-75, 8)),
}
_PG_MIN_MID = {
    "u1u2": (Fraction(-45, 4), Fraction(-21, 4)),
    "u3u4": (Fraction(15, 4), Fraction(19, 2)),
}


def _petersen_minimal():
    g = petersen_graph()
    poly = {}
    for name, t, h in g.edges:
        if name in _PG_MIN_MID:
            poly[name] = (_PG_MIN_POS[t], _PG_MIN_MID[name], _PG_MIN_POS[h])
        else:
            poly[name] = (_PG_MIN_POS[t], _PG_MIN_POS[h])
    imm = _checked(PlaneImmersion(g, _PG_MIN_POS, poly), {1: 1, 2: 1})
    got = {rec.edges: rec.distance_class for rec in crossings(imm)}
    assert got == {("u1u2", "v3v5"): 2, ("u3u4", "v4v1"): 1}, got
    return imm


def _heawood_ring():
    g = heawood_graph()
    pos = {}
    for i in range(1, 8):
        for kind, slot in (("u", 2 * i - 2), ("v", 2 * i - 1)):
            ang = 2 * math.pi * slot / 14
            # slightly unequal radii keep the chord crossings simple
            radius = 2 + Fraction(slot, 1000)
            pos[f"{kind}{i}"] = (_grid(radius * math.cos(ang)),
                                 _grid(radius * math.sin(ang)))
    poly = {name: (pos[t], pos[h]) for name, t, h in g.edges}
    imm = _checked(PlaneImmersion(g, pos, poly), {1: 7, 2: 7})
    chords = {f"v{i}u{(i - 3) % 7 + 1}" for i in range(1, 8)}
    assert all(a in chords and b in chords for a, b in
               (rec.edges for rec in crossings(imm)))
    return imm


def _k33_hexagon():
    g = complete_bipartite_graph(3, 3)
    pos = {
        "a1": (2, 0), "b1": (1, 2), "a2": (-1, 2),
        "b2": (-2, 0), "a3": (-1, -2), "b3": (1, -2),
    }
    poly = {name: (pos[t], pos[h]) for name, t, h in g.edges}
    # one chord detours around the hexagon so only the other two cross
    poly["a3b1"] = (pos["a3"], (0, -4), (4, 0), (Fraction(-1, 2), 4), pos["b1"])
    imm = _checked(PlaneImmersion(g, pos, poly), {1: 1})
    assert crossings(imm)[0].edges == ("a1b2", "a2b3")
    return imm


def _theta_fan(n):
    g = theta_graph(n)
    pos = {"u": (0, 0), "v": (0, 1)}
    poly = {}
    for i in range(1, n + 1):
        # distinct slopes at both levels keep the strand crossings disjoint
        poly[f"e{i}"] = ((0, 0), (i, Fraction(1, 4)),
                         (-i * i, Fraction(3, 4)), (0, 1))
    expected = {0: n * (n - 1) // 2} if n > 1 else {}
    return _checked(PlaneImmersion(g, pos, poly), expected)


_MODELS = {
    "PG-star": _pentagram,
    "PG-min": _petersen_minimal,
    "HG-ring": _heawood_ring,
    "K33-hex": _k33_hexagon,
}

MODEL_NAMES = tuple(sorted(_MODELS)) + ("theta",)


def standard_immersion(name, n=None) -> PlaneImmersion:
    """Build one of the fixed drawings listed in the module docstring.

    Args:
        name: Model key from MODEL_NAMES.
        n: Strand count, required for (and only for) "theta".

    Returns:
        A validated PlaneImmersion whose crossing structure has been
        asserted at construction.
    """
    if name == "theta":
        if n is None or n < 1:
            raise ValueError("theta model needs a strand count n >= 1")
        return _theta_fan(n)
    if name not in _MODELS:
        raise ValueError(f"unknown model {name!r}; choose from {MODEL_NAMES}")
    if n is not None:
        raise ValueError(f"model {name!r} takes no parameter")
    return _MODELS[name]()
