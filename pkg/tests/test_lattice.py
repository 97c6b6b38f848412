import itertools
import random
from fractions import Fraction

import pytest

from pgideals.errors import (
    ClosureGuardError,
    DomainError,
    ParseError,
    SupportError,
)
from pgideals.lattice import (
    Cycle,
    DualGraph,
    Vertex,
    anti_nef_closure,
    arithmetic_genus,
    artin_rational_test,
    canonical_cycle,
    fundamental_cycle,
    is_anti_nef,
    is_negative_definite,
    pairing,
    pairing_vector,
    parse_graph,
    reduced_cycle,
    unit_cycle,
    z_perp,
)

from conftest import ADE_NAMES, ade, chain_graph, random_effective_cycle, star_graph


def single(self_int, genus=0):
    return DualGraph((Vertex("a", self_int, genus),), ())


A1 = ade("A1")
A2 = ade("A2")
E8 = ade("E8")


# -- pairing ----------------------------------------------------------------


def test_pairing_diagonal():
    assert pairing(A1, unit_cycle("e1"), unit_cycle("e1")) == -2


def test_pairing_a2_reduced():
    z = Cycle({"e1": 1, "e2": 1})
    # [[-2,1],[1,-2]] against (1,1): -2+1+1-2
    assert pairing(A2, z, z) == -2


def test_pairing_zero_cycle():
    assert pairing(E8, Cycle(), reduced_cycle(E8)) == 0


def test_pairing_symmetry(rng):
    graphs = [A2, E8, chain_graph([-2, -3, -2]), star_graph(-3, [1, 1, 2])]
    for g in graphs:
        for _ in range(25):
            ids = g.vertex_ids()
            z = Cycle({vid: rng.randint(-3, 3) for vid in ids})
            w = Cycle({vid: rng.randint(-3, 3) for vid in ids})
            assert pairing(g, z, w) == pairing(g, w, z)


def test_pairing_rational_cycles():
    g = single(-3)
    z = Cycle({"a": Fraction(1, 3)})
    assert pairing(g, z, z) == Fraction(-1, 3)


def test_pairing_unknown_vertex():
    with pytest.raises(SupportError):
        pairing(A1, Cycle({"nope": 1}), unit_cycle("e1"))


def test_edge_multiplicities_summed():
    # one edge with mult=2 plus a parallel simple edge: off-diagonal 3
    g = DualGraph(
        (Vertex("a", -4), Vertex("b", -4)),
        (("a", "b", 2), ("a", "b", 1)),
    )
    assert g.matrix[0][1] == 3
    assert pairing(g, unit_cycle("a"), unit_cycle("b")) == 3
    assert is_negative_definite(g)  # det = 16 - 9 > 0


# -- negative definiteness ---------------------------------------------------


def _leading_minors(matrix):
    """Independent oracle: minors via Fraction LU pivots."""
    n = len(matrix)
    minors = []
    a = [[Fraction(matrix[i][j]) for j in range(n)] for i in range(n)]
    det = Fraction(1)
    for k in range(n):
        if a[k][k] == 0:
            # a zero pivot means this leading minor vanishes
            minors.append(Fraction(0))
            return minors
        det *= a[k][k]
        minors.append(det)
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            for j in range(k, n):
                a[i][j] -= f * a[k][j]
    return minors


def test_negative_definite_a1():
    assert is_negative_definite(A1)


def test_negative_definite_zero_vertex():
    assert not is_negative_definite(single(0))


def test_negative_definite_e8_minors():
    minors = _leading_minors(E8.matrix)
    assert len(minors) == 8
    for k, m in enumerate(minors, start=1):
        assert m != 0 and (m > 0) == (k % 2 == 0)
    assert is_negative_definite(E8)


def test_not_negative_definite_affine():
    # star with four -2 arms around a -2 core is degenerate (determinant 0)
    assert not is_negative_definite(star_graph(-2, [1, 1, 1, 1]))


def test_negative_definite_random_agrees_with_minors(rng):
    for _ in range(40):
        n = rng.randint(1, 5)
        verts = tuple(Vertex(f"v{i}", rng.randint(-5, -1)) for i in range(n))
        edges = tuple(
            (f"v{i}", f"v{i+1}", rng.randint(1, 2)) for i in range(n - 1)
        )
        g = DualGraph(verts, edges)
        minors = _leading_minors(g.matrix)
        expected = len(minors) == n and all(
            m != 0 and (m > 0) == (k % 2 == 0)
            for k, m in enumerate(minors, start=1)
        )
        assert is_negative_definite(g) == expected


# -- anti-nef ----------------------------------------------------------------


def test_anti_nef_a1():
    assert is_anti_nef(A1, unit_cycle("e1"))


def test_anti_nef_a2_partial():
    assert not is_anti_nef(A2, Cycle({"e1": 1}))  # pairs +1 with e2


def test_anti_nef_a2_reduced():
    z = Cycle({"e1": 1, "e2": 1})
    assert pairing_vector(A2, z) == [-1, -1]
    assert is_anti_nef(A2, z)


def test_anti_nef_rejects_negative_coefficients():
    with pytest.raises(DomainError):
        is_anti_nef(A2, Cycle({"e1": -1, "e2": 1}))


# -- anti-nef closure ---------------------------------------------------------


def test_closure_a2_one_step():
    assert anti_nef_closure(A2, Cycle({"e1": 1})) == Cycle({"e1": 1, "e2": 1})


def test_closure_fixed_point():
    z = fundamental_cycle(E8)
    assert anti_nef_closure(E8, z) == z


def test_closure_idempotent(rng):
    for g in [A2, ade("A4"), ade("D4"), E8]:
        for _ in range(10):
            w = anti_nef_closure(g, random_effective_cycle(rng, g))
            assert anti_nef_closure(g, w) == w
            assert is_anti_nef(g, w)


def test_closure_order_independent():
    graphs = [A2, ade("A3"), ade("A4"), ade("D4"), chain_graph([-2, -3, -2, -2])]
    for g in graphs:
        ids = g.vertex_ids()
        start = Cycle({ids[0]: 1})
        results = {
            anti_nef_closure(g, start, order=list(perm))
            for perm in itertools.permutations(ids)
        }
        assert len(results) == 1
        assert results.pop() == anti_nef_closure(g, start)


def test_closure_guard_fires_on_indefinite_graph():
    bad = DualGraph((Vertex("a", -2), Vertex("b", -2)), (("a", "b", 3),))
    assert not is_negative_definite(bad)
    with pytest.raises(ClosureGuardError):
        anti_nef_closure(bad, Cycle({"a": 1, "b": 1}))


def test_closure_rejects_bad_inputs():
    with pytest.raises(DomainError):
        anti_nef_closure(A2, Cycle())
    with pytest.raises(DomainError):
        anti_nef_closure(A2, Cycle({"e1": -1}))
    with pytest.raises(DomainError):
        anti_nef_closure(A2, Cycle({"e1": Fraction(1, 2)}))
    with pytest.raises(SupportError):
        anti_nef_closure(A2, Cycle({"zz": 1}))
    with pytest.raises(DomainError):
        anti_nef_closure(A2, Cycle({"e1": 1}), order=["e1"])


def test_closure_large_start_is_not_a_false_alarm():
    # a big but legitimate starting cycle must not trip the guard
    big = anti_nef_closure(A2, Cycle({"e1": 10_000}))
    assert is_anti_nef(A2, big)
    assert big.get("e1") == 10_000 and big.get("e2") == 5_000


# -- fundamental cycle ---------------------------------------------------------


def test_fundamental_a1():
    assert fundamental_cycle(A1) == Cycle({"e1": 1})


def test_fundamental_a2():
    assert fundamental_cycle(A2) == Cycle({"e1": 1, "e2": 1})


def test_fundamental_single_minus3():
    assert fundamental_cycle(single(-3)) == Cycle({"a": 1})


def test_fundamental_e8_frozen():
    z = fundamental_cycle(E8)
    assert z == Cycle(
        {"c": 6, "a1": 3, "b1": 4, "b2": 2, "c1": 5, "c2": 4, "c3": 3, "c4": 2}
    )
    assert max(c for _, c in z.items()) == 6
    assert pairing(E8, z, z) == -2


def test_fundamental_minimality():
    for name in ADE_NAMES:
        g = ade(name)
        z = fundamental_cycle(g)
        assert is_anti_nef(g, z)
        assert all(z.get(vid) >= 1 for vid in g.vertex_ids())
        for vid in g.vertex_ids():
            smaller = z - unit_cycle(vid)
            if smaller.is_zero() or not smaller.is_effective():
                continue
            assert not is_anti_nef(g, smaller)


# -- canonical cycle -----------------------------------------------------------


def test_canonical_ade_zero():
    for name in ADE_NAMES:
        assert canonical_cycle(ade(name)).is_zero()


def test_canonical_minus3_genus0():
    assert canonical_cycle(single(-3)) == Cycle({"a": Fraction(1, 3)})


def test_canonical_minus3_genus1():
    assert canonical_cycle(single(-3, genus=1)) == Cycle({"a": 1})


def test_canonical_resubstitution(rng):
    graphs = [
        chain_graph([-3, -2, -4]),
        star_graph(-3, [1, 2, 2]),
        chain_graph([-2, -5], genera=[1, 0]),
        single(-7, genus=2),
    ]
    for g in graphs:
        zk = canonical_cycle(g)
        for v in g.vertices:
            want = v.self_intersection + 2 - 2 * v.genus
            assert pairing(g, zk, unit_cycle(v.id)) == want


# -- z_perp ---------------------------------------------------------------------


def test_zperp_empty():
    assert z_perp(A1, unit_cycle("e1")) == []


def test_zperp_a2():
    comps = z_perp(A2, Cycle({"e1": 2, "e2": 1}))
    assert [c.vertex_ids() for c in comps] == [("e2",)]


def test_zperp_e8_fundamental():
    comps = z_perp(E8, fundamental_cycle(E8))
    assert len(comps) == 1
    ids = comps[0].vertex_ids()
    assert len(ids) == 7 and "c4" not in ids


def test_zperp_two_components():
    g = ade("A3")
    z = anti_nef_closure(g, Cycle({"e2": 2}))
    zeros = [vid for vid, p in zip(g.vertex_ids(), pairing_vector(g, z)) if p == 0]
    comps = z_perp(g, z)
    assert sorted(sum((c.vertex_ids() for c in comps), ())) == sorted(zeros)


def test_zperp_requires_anti_nef():
    with pytest.raises(DomainError):
        z_perp(A2, Cycle({"e1": 1}))


# -- rationality -----------------------------------------------------------------


def test_artin_ade_all_rational():
    for name in ADE_NAMES:
        assert artin_rational_test(ade(name))


def test_artin_minus3_genus1_not_rational():
    g = single(-3, genus=1)
    assert arithmetic_genus(g, fundamental_cycle(g)) == 1
    assert not artin_rational_test(g)


def test_artin_minus3_genus0_rational():
    g = single(-3)
    assert arithmetic_genus(g, fundamental_cycle(g)) == 0
    assert artin_rational_test(g)


# -- lattice invariants ------------------------------------------------------------


def test_effective_cycles_pair_negatively(rng):
    for g in [A2, E8, chain_graph([-3, -2, -4])]:
        for _ in range(20):
            z = random_effective_cycle(rng, g)
            assert pairing(g, z, z) < 0


def test_parity_invariant(rng):
    # Z.Z + Z.Z_K is even for integral Z whenever Z_K is integral
    graphs = [g for g in (ade(n) for n in ADE_NAMES)]
    graphs.append(single(-3, genus=1))
    graphs.append(chain_graph([-2, -2], genera=[1, 1]))  # Z_K = (2, 2)
    for g in graphs:
        zk = canonical_cycle(g)
        assert zk.is_integral()
        for _ in range(20):
            ids = g.vertex_ids()
            z = Cycle({vid: rng.randint(-3, 3) for vid in ids})
            val = pairing(g, z, z) + pairing(g, z, zk)
            assert val % 2 == 0


# -- structural validation ----------------------------------------------------------


def test_graph_requires_connectivity():
    with pytest.raises(DomainError):
        DualGraph((Vertex("a", -2), Vertex("b", -2)), ())


def test_graph_rejects_loops_and_unknown_edges():
    with pytest.raises(DomainError):
        DualGraph((Vertex("a", -2),), (("a", "a", 1),))
    with pytest.raises(DomainError):
        DualGraph((Vertex("a", -2),), (("a", "b", 1),))


def test_graph_rejects_duplicates_and_bad_ids():
    with pytest.raises(DomainError):
        DualGraph((Vertex("a", -2), Vertex("a", -3)), (("a", "a", 1),))
    with pytest.raises(DomainError):
        DualGraph((Vertex("a b", -2),), ())


def test_validate_full_contract():
    E8.validate()
    with pytest.raises(DomainError):
        single(0).validate()
    with pytest.raises(DomainError):
        star_graph(-2, [1, 1, 1, 1]).validate()


# -- file format ----------------------------------------------------------------------


GRAPH_TEXT = """\
# the A2 configuration
vertex e1 self=-2 genus=0
vertex e2 self=-2
edge e1 e2
cycle Z e1=1,e2=1
cycle W e1=2,e2=1
"""


def test_parse_graph_roundtrip():
    g, cycles = parse_graph(GRAPH_TEXT)
    assert g.vertex_ids() == ("e1", "e2")
    assert g.matrix == ((-2, 1), (1, -2))
    assert cycles["Z"] == Cycle({"e1": 1, "e2": 1})
    assert cycles["W"].get("e1") == 2


@pytest.mark.parametrize(
    "text,lineno",
    [
        ("vertex e1 self=-2\nbogus e1", 2),
        ("vertex e1 self=-2 color=red", 1),
        ("vertex e1 self=0", 1),
        ("vertex e1 self=-2\nvertex e1 self=-3", 2),
        ("vertex e1 self=-2\nedge e1 e9", 2),
        ("vertex e1 self=-2\nedge e1 e1", 2),
        ("vertex e1 self=-2\nvertex e2 self=-2\nedge e1 e2 mult=0", 3),
        ("vertex e1 self=-2\ncycle Z e9=1", 2),
        ("vertex e1 self=-2\ncycle Z e1=x", 2),
        ("vertex e1 genus=0", 1),
    ],
)
def test_parse_graph_errors_carry_line_numbers(text, lineno):
    with pytest.raises(ParseError) as info:
        parse_graph(text)
    assert info.value.line == lineno


def test_parse_graph_empty_file():
    with pytest.raises(ParseError):
        parse_graph("# nothing here\n")
