"""Weighted dual graphs as negative-definite lattices.

A resolution of a normal surface singularity is recorded here only through
its combinatorics: the exceptional curves with their self-intersections and
genera, and the pairwise intersection numbers.  On top of that this module
computes the cycles the rest of the toolkit consumes: anti-nef closures,
fundamental cycles, canonical cycles, Z-perpendicular subgraphs, and the
arithmetic-genus rationality test.

All arithmetic is exact (integers and fractions.Fraction); every object is
an immutable value, so concurrent read-only use is safe.
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from . import kernels
from .errors import ClosureGuardError, DomainError, ParseError, SupportError

_ID_RE = re.compile(r"[A-Za-z0-9]+\Z")


def _normalize_number(value):
    """Collapse integral Fractions to plain ints."""
    if isinstance(value, Fraction) and value.denominator == 1:
        return int(value)
    return value


@dataclass(frozen=True)
class Vertex:
    """One exceptional curve: id, self-intersection, genus."""

    id: str
    self_intersection: int
    genus: int = 0


@dataclass(frozen=True)
class DualGraph:
    """Weighted dual graph of an exceptional divisor.

    ``vertices`` is a tuple of Vertex; ``edges`` a tuple of
    (id_a, id_b, multiplicity) with distinct endpoints.  Construction
    checks the structural invariants (well-formed ids, known endpoints,
    connectivity).  Self-intersections <= -1 and negative definiteness are
    *semantic* validity, checked by :func:`is_negative_definite` /
    :meth:`validate` so that invalid lattices can still be represented and
    diagnosed.
    """

    vertices: tuple
    edges: tuple

    def __post_init__(self):
        if not self.vertices:
            raise DomainError("graph needs at least one vertex")
        seen = set()
        for v in self.vertices:
            if not _ID_RE.match(v.id):
                raise DomainError(f"vertex id {v.id!r} is not alphanumeric")
            if v.id in seen:
                raise DomainError(f"duplicate vertex id {v.id!r}")
            if v.genus < 0:
                raise DomainError(f"vertex {v.id}: genus must be >= 0")
            seen.add(v.id)
        for a, b, mult in self.edges:
            if a == b:
                raise DomainError(f"edge {a}-{b}: endpoints must differ")
            if a not in seen or b not in seen:
                raise DomainError(f"edge {a}-{b}: unknown vertex")
            if mult < 1:
                raise DomainError(f"edge {a}-{b}: multiplicity must be >= 1")
        if not self._connected():
            raise DomainError("graph is not connected")

    def _connected(self):
        ids = [v.id for v in self.vertices]
        adj = {i: set() for i in ids}
        for a, b, _ in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        stack, seen = [ids[0]], {ids[0]}
        while stack:
            for nxt in adj[stack.pop()]:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        return len(seen) == len(ids)

    @cached_property
    def index(self):
        """vertex id -> position in ``vertices``."""
        return {v.id: i for i, v in enumerate(self.vertices)}

    @cached_property
    def matrix(self):
        """Intersection matrix: diagonal self-intersections, off-diagonal
        summed edge multiplicities."""
        n = len(self.vertices)
        m = [[0] * n for _ in range(n)]
        for i, v in enumerate(self.vertices):
            m[i][i] = v.self_intersection
        for a, b, mult in self.edges:
            i, j = self.index[a], self.index[b]
            m[i][j] += mult
            m[j][i] += mult
        return tuple(tuple(row) for row in m)

    @cached_property
    def _csr(self):
        """(diag, indptr, indices, mults) adjacency for the closure kernel."""
        n = len(self.vertices)
        neigh = [[] for _ in range(n)]
        for i in range(n):
            for j in range(n):
                if i != j and self.matrix[i][j]:
                    neigh[i].append((j, self.matrix[i][j]))
        indptr, indices, mults = [0], [], []
        for row in neigh:
            for j, m in row:
                indices.append(j)
                mults.append(m)
            indptr.append(len(indices))
        diag = [v.self_intersection for v in self.vertices]
        return diag, indptr, indices, mults

    def vertex_ids(self):
        return tuple(v.id for v in self.vertices)

    def validate(self):
        """Raise DomainError unless the graph is a valid resolution lattice
        (all self-intersections <= -1 and negative definite)."""
        for v in self.vertices:
            if v.self_intersection > -1:
                raise DomainError(
                    f"vertex {v.id}: self-intersection must be <= -1"
                )
        if not is_negative_definite(self):
            raise DomainError("intersection matrix is not negative definite")


class Cycle:
    """Divisor supported on the exceptional curves.

    Maps vertex ids to coefficients (ints, or Fractions for canonical
    cycles).  Zero coefficients are dropped, so ``support()`` is exactly
    the set of ids with nonzero coefficient.  Immutable.
    """

    __slots__ = ("_coeffs", "_items")

    def __init__(self, coefficients=None):
        data = {}
        for vid, c in dict(coefficients or {}).items():
            c = _normalize_number(c)
            if c != 0:
                data[vid] = c
        object.__setattr__(self, "_coeffs", data)
        object.__setattr__(
            self, "_items", tuple(sorted(data.items(), key=lambda kv: kv[0]))
        )

    def __setattr__(self, name, value):
        raise AttributeError("Cycle is immutable")

    def get(self, vid):
        return self._coeffs.get(vid, 0)

    def items(self):
        return self._items

    def support(self):
        return frozenset(self._coeffs)

    def is_zero(self):
        return not self._coeffs

    def is_effective(self):
        return all(c > 0 for c in self._coeffs.values())

    def is_integral(self):
        return all(isinstance(c, int) for c in self._coeffs.values())

    def __add__(self, other):
        data = dict(self._coeffs)
        for vid, c in other._coeffs.items():
            data[vid] = data.get(vid, 0) + c
        return Cycle(data)

    def __sub__(self, other):
        data = dict(self._coeffs)
        for vid, c in other._coeffs.items():
            data[vid] = data.get(vid, 0) - c
        return Cycle(data)

    def scale(self, k):
        return Cycle({vid: k * c for vid, c in self._coeffs.items()})

    def __eq__(self, other):
        return isinstance(other, Cycle) and self._items == other._items

    def __hash__(self):
        return hash(self._items)

    def __repr__(self):
        if not self._items:
            return "Cycle(0)"
        body = ", ".join(f"{vid}={c}" for vid, c in self._items)
        return f"Cycle({body})"


def unit_cycle(vid):
    """The cycle E_vid (coefficient 1 on a single vertex)."""
    return Cycle({vid: 1})


def reduced_cycle(g):
    """The reduced exceptional cycle: coefficient 1 on every vertex."""
    return Cycle({vid: 1 for vid in g.vertex_ids()})


def _check_support(g, z):
    extra = z.support() - set(g.vertex_ids())
    if extra:
        raise SupportError(
            f"cycle mentions unknown vertices: {', '.join(sorted(extra))}"
        )


def _coeff_vector(g, z):
    return [z.get(vid) for vid in g.vertex_ids()]


def pairing(g, z, w):
    """Intersection pairing Z.W on the lattice of g (symmetric bilinear)."""
    _check_support(g, z)
    _check_support(g, w)
    zv = _coeff_vector(g, z)
    wv = _coeff_vector(g, w)
    m = g.matrix
    total = 0
    for i, zi in enumerate(zv):
        if zi == 0:
            continue
        row = m[i]
        acc = 0
        for j, wj in enumerate(wv):
            if wj:
                acc += row[j] * wj
        total += zi * acc
    return _normalize_number(total)


def pairing_vector(g, z):
    """List of Z.E_i values, one per vertex in graph order."""
    _check_support(g, z)
    zv = _coeff_vector(g, z)
    m = g.matrix
    out = []
    for i in range(len(zv)):
        acc = 0
        for j, zj in enumerate(zv):
            if zj:
                acc += m[i][j] * zj
        out.append(_normalize_number(acc))
    return out


def is_negative_definite(g):
    """Exact Sylvester test: leading principal minors alternate in sign
    starting negative.  Fraction-free (Bareiss) integer elimination; a zero
    or wrong-sign minor returns False immediately."""
    m = [list(row) for row in g.matrix]
    n = len(m)
    prev = 1
    for k in range(n):
        minor = m[k][k]  # Bareiss invariant: this is the (k+1)-st minor
        if minor == 0 or (minor > 0) != (k % 2 == 1):
            return False
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return True


def is_anti_nef(g, z):
    """True iff Z.E_i <= 0 for every vertex.  Z must be effective."""
    _check_support(g, z)
    if not all(c >= 0 for _, c in z.items()):
        raise DomainError("anti-nef test needs an effective cycle")
    return all(p <= 0 for p in pairing_vector(g, z))


def anti_nef_closure(g, z, order=None):
    """Least anti-nef cycle W >= Z (Laufer-style unit increments).

    Z must be effective, nonzero and integral.  The default increment
    policy is "lowest vertex id first"; ``order`` (a permutation of the
    vertex ids) overrides the priority, which by order-independence of the
    closure never changes the result - it exists so tests can prove that.
    Raises ClosureGuardError if a coefficient outruns the termination
    guard, which only happens when the lattice is not negative definite.
    """
    _check_support(g, z)
    if z.is_zero() or not z.is_effective():
        raise DomainError("closure needs an effective nonzero cycle")
    if not z.is_integral():
        raise DomainError("closure needs an integral cycle")

    ids = g.vertex_ids()
    start = [z.get(vid) for vid in ids]
    weight = sum(abs(v.self_intersection) for v in g.vertices)
    guard = 64 * max(weight, 1) * max(max(start), 1)

    if order is None:
        diag, indptr, indices, mults = g._csr
        out = kernels.laufer_closure(diag, indptr, indices, mults, start, guard)
        return Cycle(dict(zip(ids, out)))

    if sorted(order) != sorted(ids):
        raise DomainError("order must be a permutation of the vertex ids")
    rank = {vid: i for i, vid in enumerate(order)}
    m = g.matrix
    coeffs = list(start)
    pair = [
        sum(m[i][j] * coeffs[j] for j in range(len(ids)))
        for i in range(len(ids))
    ]
    while True:
        violators = [i for i, p in enumerate(pair) if p > 0]
        if not violators:
            break
        i = min(violators, key=lambda k: rank[ids[k]])
        coeffs[i] += 1
        if coeffs[i] > guard:
            raise ClosureGuardError(
                f"coefficient of {ids[i]} exceeded {guard}; "
                "intersection lattice is not negative definite"
            )
        for j in range(len(ids)):
            pair[j] += m[j][i]
    return Cycle(dict(zip(ids, coeffs)))


def fundamental_cycle(g):
    """Minimal nonzero anti-nef cycle: closure of the reduced cycle."""
    return anti_nef_closure(g, reduced_cycle(g))


def _solve_exact(matrix, rhs):
    """Gaussian elimination over Fraction.  Returns None if singular."""
    n = len(rhs)
    a = [[Fraction(matrix[i][j]) for j in range(n)] + [Fraction(rhs[i])] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        inv = a[col][col]
        a[col] = [x / inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[i][n] for i in range(n)]


def canonical_cycle(g):
    """The cycle Z_K dual to the canonical divisor via adjunction.

    Solves Z_K . E_i = E_i^2 + 2 - 2 g_i exactly; coefficients may be
    non-integral (they are rational on any negative-definite lattice).
    """
    rhs = [v.self_intersection + 2 - 2 * v.genus for v in g.vertices]
    sol = _solve_exact(g.matrix, rhs)
    if sol is None:
        raise RuntimeError(
            "internal error: singular intersection matrix "
            "(graph is not negative definite)"
        )
    return Cycle(dict(zip(g.vertex_ids(), sol)))


def z_perp(g, z):
    """Connected components of the full subgraph on {E_i : Z.E_i = 0}.

    Z must be anti-nef.  Returns a list of DualGraph, one per component,
    ordered by first appearance in g; empty when Z pairs negatively with
    every curve.
    """
    if not is_anti_nef(g, z):
        raise DomainError("z_perp needs an anti-nef cycle")
    pv = pairing_vector(g, z)
    keep = {g.vertex_ids()[i] for i, p in enumerate(pv) if p == 0}
    if not keep:
        return []
    adj = {vid: set() for vid in keep}
    for a, b, _ in g.edges:
        if a in keep and b in keep:
            adj[a].add(b)
            adj[b].add(a)
    components = []
    unseen = [v.id for v in g.vertices if v.id in keep]
    assigned = set()
    for root in unseen:
        if root in assigned:
            continue
        comp, stack = {root}, [root]
        while stack:
            for nxt in adj[stack.pop()]:
                if nxt not in comp:
                    comp.add(nxt)
                    stack.append(nxt)
        assigned |= comp
        verts = tuple(v for v in g.vertices if v.id in comp)
        edges = tuple(e for e in g.edges if e[0] in comp and e[1] in comp)
        components.append(DualGraph(verts, edges))
    return components


def arithmetic_genus(g, z):
    """p_a(Z) = (Z.Z + K.Z)/2 + 1 with K.Z = -Z.Z_K read off adjunction."""
    zk = canonical_cycle(g)
    val = Fraction(pairing(g, z, z) - pairing(g, z, zk), 2) + 1
    return _normalize_number(val)


def artin_rational_test(g):
    """True iff the arithmetic genus of the fundamental cycle vanishes
    (the combinatorial rationality criterion)."""
    return arithmetic_genus(g, fundamental_cycle(g)) == 0


# ---------------------------------------------------------------------------
# graph file format
#
#   # comment
#   vertex <id> self=<negative int> genus=<nonneg int>
#   edge <id> <id> [mult=<positive int>]
#   cycle <name> <id>=<int>[,<id>=<int>...]
#
# genus= may be omitted (defaults to 0); ids are alphanumeric tokens.


def _parse_int(text, what, lineno):
    try:
        return int(text)
    except ValueError:
        raise ParseError(f"bad integer {text!r} for {what}", line=lineno) from None


def parse_graph(text):
    """Parse the line-oriented graph format.

    Returns (DualGraph, {cycle name: Cycle}).  Raises ParseError with the
    offending line number on malformed input.
    """
    vertices = []
    vertex_ids = set()
    edges = []
    cycles = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        kind = tokens[0]
        if kind == "vertex":
            if len(tokens) < 3:
                raise ParseError("vertex needs an id and self=", line=lineno)
            vid = tokens[1]
            if not _ID_RE.match(vid):
                raise ParseError(f"bad vertex id {vid!r}", line=lineno)
            if vid in vertex_ids:
                raise ParseError(f"duplicate vertex {vid!r}", line=lineno)
            self_int = None
            genus = 0
            for tok in tokens[2:]:
                key, sep, val = tok.partition("=")
                if not sep:
                    raise ParseError(f"expected key=value, got {tok!r}", line=lineno)
                if key == "self":
                    self_int = _parse_int(val, "self", lineno)
                    if self_int >= 0:
                        raise ParseError("self must be a negative integer", line=lineno)
                elif key == "genus":
                    genus = _parse_int(val, "genus", lineno)
                    if genus < 0:
                        raise ParseError("genus must be >= 0", line=lineno)
                else:
                    raise ParseError(f"unknown key {key!r} on vertex line", line=lineno)
            if self_int is None:
                raise ParseError("vertex line is missing self=", line=lineno)
            vertices.append(Vertex(vid, self_int, genus))
            vertex_ids.add(vid)
        elif kind == "edge":
            if len(tokens) not in (3, 4):
                raise ParseError("edge needs two vertex ids", line=lineno)
            a, b = tokens[1], tokens[2]
            for vid in (a, b):
                if vid not in vertex_ids:
                    raise ParseError(f"edge references unknown vertex {vid!r}", line=lineno)
            if a == b:
                raise ParseError("edge endpoints must differ", line=lineno)
            mult = 1
            if len(tokens) == 4:
                key, sep, val = tokens[3].partition("=")
                if key != "mult" or not sep:
                    raise ParseError(f"unknown key {tokens[3]!r} on edge line", line=lineno)
                mult = _parse_int(val, "mult", lineno)
                if mult < 1:
                    raise ParseError("mult must be >= 1", line=lineno)
            edges.append((a, b, mult))
        elif kind == "cycle":
            if len(tokens) != 3:
                raise ParseError("cycle needs a name and one coefficient list", line=lineno)
            name = tokens[1]
            if not _ID_RE.match(name):
                raise ParseError(f"bad cycle name {name!r}", line=lineno)
            if name in cycles:
                raise ParseError(f"duplicate cycle {name!r}", line=lineno)
            coeffs = {}
            for part in tokens[2].split(","):
                vid, sep, val = part.partition("=")
                if not sep:
                    raise ParseError(f"expected id=int, got {part!r}", line=lineno)
                if vid not in vertex_ids:
                    raise ParseError(f"cycle references unknown vertex {vid!r}", line=lineno)
                if vid in coeffs:
                    raise ParseError(f"duplicate coefficient for {vid!r}", line=lineno)
                coeffs[vid] = _parse_int(val, "coefficient", lineno)
            cycles[name] = Cycle(coeffs)
        else:
            raise ParseError(f"unknown directive {kind!r}", line=lineno)
    if not vertices:
        raise ParseError("file defines no vertices", line=1)
    graph = DualGraph(tuple(vertices), tuple(edges))
    return graph, cycles


def load_graph(path):
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())
