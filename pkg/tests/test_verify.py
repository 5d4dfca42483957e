"""Named check bundles against the fixed drawings and random immersions."""

import pytest

from immersa.graphs import (
    complete_bipartite_graph,
    complete_graph,
    heawood_graph,
    multi_triangle,
    petersen_graph,
    theta_graph,
)
from immersa.immersion import random_immersion
from immersa.standard import standard_immersion
from immersa.verify import detect_theorem, run_checks, theorem_ids


def _values(verdicts):
    return {v.check: v.value for v in verdicts}


def test_theorem_ids():
    assert set(theorem_ids()) == {
        "PG-parity", "HG-parity", "K4", "K33", "K5", "Tm"}


def test_pg_star_values():
    verdicts = run_checks(standard_immersion("PG-star"), "PG-parity")
    assert all(v.ok for v in verdicts)
    values = _values(verdicts)
    assert values["sum c over 5-cycles"] == 5
    assert values["sum c over 6-cycles"] == 5
    assert values["sum c over 8-cycles"] % 4 == 0
    assert values["sum c over 9-cycles"] == 35
    assert values["kappa at distance 1"] == 5
    assert {v.expected for v in verdicts} == {"odd", "divisible by 4"}


def test_hg_ring_values():
    verdicts = run_checks(standard_immersion("HG-ring"), "HG-parity")
    assert all(v.ok for v in verdicts)
    values = _values(verdicts)
    assert values["sum c over 6-cycles"] == 21
    assert values["sum c over 8-cycles"] == 35
    assert values["sum c over 10-cycles"] == 245
    assert values["sum c over 12-cycles"] % 4 == 0
    assert values["sum c over 14-cycles"] % 2 == 0
    assert values["kappa at distance 2"] == 7


@pytest.mark.parametrize("graph, theorem", [
    (complete_graph(4), "K4"),
    (complete_graph(5), "K5"),
    (complete_bipartite_graph(3, 3), "K33"),
    (multi_triangle(3), "Tm"),
])
def test_random_immersions_pass(graph, theorem):
    for seed in range(5):
        imm = random_immersion(graph, seed=seed)
        assert all(v.ok for v in run_checks(imm, theorem))


def test_k33_hexagon_passes():
    assert all(v.ok for v in run_checks(standard_immersion("K33-hex"), "K33"))


def test_tm_expected_names_the_modulus():
    imm = random_immersion(multi_triangle(4), seed=1)
    verdicts = run_checks(imm, "Tm")
    assert verdicts[0].expected == "divisible by 4"


def test_graph_mismatch_rejected():
    imm = standard_immersion("PG-star")
    with pytest.raises(ValueError, match="does not match"):
        run_checks(imm, "HG-parity")
    with pytest.raises(ValueError, match="does not match"):
        run_checks(imm, "Tm")


def test_unknown_id_rejected():
    with pytest.raises(ValueError, match="unknown check id"):
        run_checks(standard_immersion("PG-star"), "PG")


def test_detect_theorem():
    assert detect_theorem(petersen_graph()) == "PG-parity"
    assert detect_theorem(heawood_graph()) == "HG-parity"
    assert detect_theorem(complete_graph(4)) == "K4"
    assert detect_theorem(complete_graph(5)) == "K5"
    assert detect_theorem(complete_bipartite_graph(3, 3)) == "K33"
    assert detect_theorem(multi_triangle(2)) == "Tm"
    assert detect_theorem(multi_triangle(5)) == "Tm"
    assert detect_theorem(theta_graph(3)) is None
