"""Shared builders: ADE graphs, random cycles, random valid datums."""

import random

import pytest

from pgideals.errors import InconsistentDataError
from pgideals.hilbert import NumericalIdealDatum
from pgideals.lattice import Cycle, DualGraph, Vertex, anti_nef_closure


def chain_graph(self_ints, genera=None, prefix="e"):
    """Path graph with the given self-intersections."""
    genera = genera or [0] * len(self_ints)
    verts = tuple(
        Vertex(f"{prefix}{i+1}", s, g) for i, (s, g) in enumerate(zip(self_ints, genera))
    )
    edges = tuple(
        (f"{prefix}{i+1}", f"{prefix}{i+2}", 1) for i in range(len(self_ints) - 1)
    )
    return DualGraph(verts, edges)


def star_graph(center_self, arm_lengths, arm_self=-2):
    """Star-shaped tree: central vertex c plus arms a*, b*, c*, ... of -2s."""
    verts = [Vertex("c", center_self)]
    edges = []
    for arm_i, length in enumerate(arm_lengths):
        prev = "c"
        for k in range(length):
            vid = f"{chr(97 + arm_i)}{k + 1}"
            verts.append(Vertex(vid, arm_self))
            edges.append((prev, vid, 1))
            prev = vid
    return DualGraph(tuple(verts), tuple(edges))


def ade(name):
    """The nine ADE dual graphs used in the acceptance suite."""
    if name.startswith("A"):
        return chain_graph([-2] * int(name[1:]))
    if name == "D4":
        return star_graph(-2, [1, 1, 1])
    if name == "D5":
        return star_graph(-2, [1, 1, 2])
    if name == "E6":
        return star_graph(-2, [1, 2, 2])
    if name == "E7":
        return star_graph(-2, [1, 2, 3])
    if name == "E8":
        return star_graph(-2, [1, 2, 4])
    raise ValueError(name)


ADE_NAMES = ["A1", "A2", "A3", "A4", "D4", "D5", "E6", "E7", "E8"]


def random_effective_cycle(rng, g, max_coeff=3):
    """Random nonzero effective integral cycle supported on g."""
    ids = g.vertex_ids()
    while True:
        coeffs = {vid: rng.randint(0, max_coeff) for vid in ids}
        if any(coeffs.values()):
            return Cycle(coeffs)


def random_anti_nef_cycle(rng, g, max_coeff=3):
    return anti_nef_closure(g, random_effective_cycle(rng, g, max_coeff))


def random_valid_datum(rng, max_pg=8):
    """Rejection-sample a datum passing full validation.

    h1 is built from a nonincreasing drop sequence (which forces the
    monotone + convex + bounded shape); zz and zk come from a plausible
    multiplicity and colength.
    """
    while True:
        pg = rng.randint(0, max_pg)
        drops = []
        cap = pg
        level = rng.randint(0, pg)  # first drop
        while level > 0 and sum(drops) + level <= cap:
            drops.append(level)
            level = rng.randint(0, level)
        h1 = []
        current = pg
        for d in drops:
            current -= d
            h1.append(current)
        while len(h1) < pg + 1 + rng.randint(0, 2):
            h1.append(current)
        e0 = rng.randint(1, 12)
        ell1 = rng.randint(1, e0)
        e1 = e0 - ell1 + (pg - h1[0])
        if e1 < 0:
            continue
        zz = -e0
        zk = 2 * e1 + zz
        try:
            return NumericalIdealDatum(zz, zk, pg, tuple(h1))
        except InconsistentDataError:
            continue


@pytest.fixture
def rng():
    return random.Random(20260810)
