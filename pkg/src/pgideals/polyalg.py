"""Exact sparse polynomial algebra over the rationals.

Provides just enough commutative algebra for the Rees-algebra
certification route: arithmetic and derivatives of sparse polynomials in
up to four variables, a deterministic Buchberger engine producing reduced
Groebner bases in graded reverse lexicographic order, the combinatorial
Krull-dimension read-off, the extended-Rees hypersurface presentation, the
Jacobian R1 test, and the double-point order/stability criteria.

Coefficients are fractions.Fraction throughout; nothing in this module
touches floating point.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .errors import BudgetError, DomainError, ParseError

_LOWER = ("x", "y", "z")
_UPPER = ("X", "Y", "Z", "U")


@dataclass(frozen=True)
class MonomialOrder:
    """Graded reverse lexicographic order with the fixed variable ranking
    X > Y > Z > U (first listed variable largest)."""

    kind: str = "grevlex"

    def __post_init__(self):
        if self.kind != "grevlex":
            raise DomainError(f"unsupported monomial order {self.kind!r}")

    @staticmethod
    def key(exps):
        """Sort key: bigger key = bigger monomial."""
        return (sum(exps), tuple(-e for e in reversed(exps)))


GREVLEX = MonomialOrder()


class SparsePolynomial:
    """Multivariate polynomial as a map exponent tuple -> Fraction.

    Zero coefficients are never stored; the arity (at most 4) is fixed per
    polynomial and operations demand matching arities.  Instances are
    immutable by convention: no method mutates ``terms``.
    """

    __slots__ = ("arity", "names", "terms")

    def __init__(self, terms=None, arity=3, names=None):
        if not 1 <= arity <= 4:
            raise DomainError(f"arity must be between 1 and 4, got {arity}")
        if names is None:
            names = _UPPER if arity == 4 else _LOWER[:arity]
        if len(names) != arity:
            raise DomainError("names must match the arity")
        clean = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != arity or any(e < 0 for e in exps):
                raise DomainError(f"bad exponent vector {exps!r}")
            coeff = Fraction(coeff)
            if coeff:
                clean[exps] = clean.get(exps, Fraction(0)) + coeff
                if not clean[exps]:
                    del clean[exps]
        object.__setattr__(self, "arity", arity)
        object.__setattr__(self, "names", tuple(names))
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("SparsePolynomial is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, arity=3, names=None):
        return cls({}, arity, names)

    @classmethod
    def constant(cls, value, arity=3, names=None):
        return cls({(0,) * arity: Fraction(value)}, arity, names)

    @classmethod
    def variable(cls, index, arity=3, names=None):
        exps = [0] * arity
        exps[index] = 1
        return cls({tuple(exps): Fraction(1)}, arity, names)

    @classmethod
    def variables(cls, arity=3, names=None):
        return tuple(cls.variable(i, arity, names) for i in range(arity))

    # -- ring operations ----------------------------------------------

    def _check_arity(self, other):
        if self.arity != other.arity:
            raise DomainError(
                f"arity mismatch: {self.arity} vs {other.arity}"
            )

    def __add__(self, other):
        if not isinstance(other, SparsePolynomial):
            other = SparsePolynomial.constant(other, self.arity, self.names)
        self._check_arity(other)
        out = dict(self.terms)
        for exps, coeff in other.terms.items():
            out[exps] = out.get(exps, Fraction(0)) + coeff
        return SparsePolynomial(out, self.arity, self.names)

    def __sub__(self, other):
        if not isinstance(other, SparsePolynomial):
            other = SparsePolynomial.constant(other, self.arity, self.names)
        return self + (-other)

    def __neg__(self):
        return SparsePolynomial(
            {e: -c for e, c in self.terms.items()}, self.arity, self.names
        )

    def __mul__(self, other):
        if not isinstance(other, SparsePolynomial):
            scalar = Fraction(other)
            return SparsePolynomial(
                {e: c * scalar for e, c in self.terms.items()},
                self.arity,
                self.names,
            )
        self._check_arity(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                prod = tuple(a + b for a, b in zip(e1, e2))
                out[prod] = out.get(prod, Fraction(0)) + c1 * c2
        return SparsePolynomial(out, self.arity, self.names)

    __rmul__ = __mul__

    def __pow__(self, power):
        if not isinstance(power, int) or power < 0:
            raise DomainError("exponent must be a nonnegative integer")
        result = SparsePolynomial.constant(1, self.arity, self.names)
        for _ in range(power):
            result = result * self
        return result

    def partial_derivative(self, index):
        """Exact partial derivative by the index-th variable."""
        if not 0 <= index < self.arity:
            raise DomainError(f"no variable with index {index}")
        out = {}
        for exps, coeff in self.terms.items():
            e = exps[index]
            if e:
                lowered = exps[:index] + (e - 1,) + exps[index + 1 :]
                out[lowered] = out.get(lowered, Fraction(0)) + e * coeff
        return SparsePolynomial(out, self.arity, self.names)

    # -- inspection ----------------------------------------------------

    def is_zero(self):
        return not self.terms

    def total_degree(self):
        """Maximal total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def order(self):
        """Minimal total degree of a term (the m-adic order)."""
        if not self.terms:
            raise DomainError("the zero polynomial has no order")
        return min(sum(e) for e in self.terms)

    def leading(self, order=GREVLEX):
        """(exponents, coefficient) of the leading term; None when zero."""
        if not self.terms:
            return None
        lm = max(self.terms, key=order.key)
        return lm, self.terms[lm]

    def monic(self, order=GREVLEX):
        lead = self.leading(order)
        if lead is None or lead[1] == 1:
            return self
        return self * (1 / lead[1])

    def primitive(self, order=GREVLEX):
        """Integer-normalized form: content removed, leading coefficient
        positive.  Leaves the zero polynomial alone."""
        if not self.terms:
            return self
        num_gcd = 0
        den_lcm = 1
        for c in self.terms.values():
            num_gcd = gcd(num_gcd, abs(c.numerator))
            den_lcm = lcm(den_lcm, c.denominator)
        content = Fraction(num_gcd, den_lcm)
        if self.leading(order)[1] < 0:
            content = -content
        return self * (1 / content)

    def evaluate(self, values):
        """Exact evaluation at a point (tuple of numbers)."""
        if len(values) != self.arity:
            raise DomainError("point must match the arity")
        total = Fraction(0)
        for exps, coeff in self.terms.items():
            term = coeff
            for v, e in zip(values, exps):
                if e:
                    term *= Fraction(v) ** e
            total += term
        return total

    def __eq__(self, other):
        return (
            isinstance(other, SparsePolynomial)
            and self.arity == other.arity
            and self.terms == other.terms
        )

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exps in sorted(self.terms, key=GREVLEX.key, reverse=True):
            coeff = self.terms[exps]
            factors = []
            for name, e in zip(self.names, exps):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            mag = abs(coeff)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = str(mag) + "*" + "*".join(factors)
            if not parts:
                parts.append(("-" if coeff < 0 else "") + body)
            else:
                parts.append(("-" if coeff < 0 else "+") + body)
        return "".join(parts)

    def __repr__(self):
        return f"<{self!s}>"


# ---------------------------------------------------------------------------
# parsing
#
# Sum of terms c*x^a*y^b*z^c with integer or rational c; variables from
# {x, y, z} or {X, Y, Z, U}; whitespace-insensitive.  Errors carry 1-based
# character offsets.


def parse_polynomial(text, names=None):
    """Parse the term-sum syntax into a SparsePolynomial.

    When ``names`` is omitted the variable set is inferred from the letters
    present (lowercase -> x,y,z; uppercase -> X,Y,Z,U; letter-free input
    defaults to x,y,z).
    """
    if names is None:
        letters = {ch for ch in text if ch.isalpha()}
        if not letters:
            names = _LOWER
        elif letters <= set(_LOWER):
            names = _LOWER
        elif letters <= set(_UPPER):
            names = _UPPER
        else:
            bad = min(
                (i for i, ch in enumerate(text) if ch.isalpha()
                 and ch not in _LOWER and ch not in _UPPER),
                default=min(i for i, ch in enumerate(text) if ch.isalpha()),
            )
            raise ParseError(
                f"unknown variable {text[bad]!r}; use x,y,z or X,Y,Z,U",
                offset=bad + 1,
            )
    names = tuple(names)
    arity = len(names)
    var_index = {name: i for i, name in enumerate(names)}

    pos = 0
    n = len(text)

    def skip_ws():
        nonlocal pos
        while pos < n and text[pos].isspace():
            pos += 1

    def fail(message, at=None):
        raise ParseError(message, offset=(pos if at is None else at) + 1)

    def read_digits(what):
        nonlocal pos
        start = pos
        while pos < n and text[pos].isdigit():
            pos += 1
        if pos == start:
            fail(f"expected {what}", start)
        return int(text[start:pos])

    def read_number():
        nonlocal pos
        value = Fraction(read_digits("a number"))
        skip_ws()
        if pos < n and text[pos] == "/":
            slash = pos
            pos += 1
            skip_ws()
            den = read_digits("a denominator")
            if den == 0:
                fail("zero denominator", slash)
            value /= den
        return value

    terms = {}
    skip_ws()
    if pos >= n:
        fail("empty polynomial")
    first = True
    while pos < n:
        sign = 1
        skip_ws()
        if pos < n and text[pos] in "+-":
            if text[pos] == "-":
                sign = -1
            pos += 1
        elif not first:
            fail(f"expected '+' or '-', got {text[pos]!r}")
        first = False
        coeff = Fraction(sign)
        exps = [0] * arity
        saw_factor = False
        while True:
            skip_ws()
            if pos >= n:
                break
            ch = text[pos]
            if ch.isdigit():
                coeff *= read_number()
                saw_factor = True
            elif ch.isalpha():
                if ch not in var_index:
                    fail(f"unknown variable {ch!r}")
                idx = var_index[ch]
                pos += 1
                skip_ws()
                power = 1
                if pos < n and text[pos] == "^":
                    pos += 1
                    skip_ws()
                    power = read_digits("an exponent")
                exps[idx] += power
                saw_factor = True
            else:
                fail(f"unexpected character {ch!r}")
            skip_ws()
            if pos < n and text[pos] == "*":
                pos += 1
                skip_ws()
                if pos >= n:
                    fail("dangling '*'")
                continue
            break
        if not saw_factor:
            fail("empty term")
        key = tuple(exps)
        terms[key] = terms.get(key, Fraction(0)) + coeff
        skip_ws()
        if pos < n and text[pos] not in "+-":
            fail(f"expected '+' or '-', got {text[pos]!r}")
    return SparsePolynomial(terms, arity, names)


# ---------------------------------------------------------------------------
# Buchberger engine


@dataclass(frozen=True)
class GroebnerBudget:
    """Hard resource caps; exceeding either raises BudgetError."""

    max_basis: int = 512
    max_coeff_bits: int = 16384


DEFAULT_BUDGET = GroebnerBudget()


def _lcm_exps(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _mul_exps(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _monomial_times(poly, exps, coeff):
    return SparsePolynomial(
        {_mul_exps(e, exps): c * coeff for e, c in poly.terms.items()},
        poly.arity,
        poly.names,
    )


def spolynomial(f, g, order=GREVLEX):
    """S-polynomial of f and g."""
    lf, cf = f.leading(order)
    lg, cg = g.leading(order)
    L = _lcm_exps(lf, lg)
    uf = tuple(a - b for a, b in zip(L, lf))
    ug = tuple(a - b for a, b in zip(L, lg))
    return _monomial_times(f, uf, 1 / cf) - _monomial_times(g, ug, 1 / cg)


def normal_form(p, basis, order=GREVLEX):
    """Remainder of p under full multivariate division by ``basis``."""
    remainder = {}
    work = p
    while not work.is_zero():
        lm, lc = work.leading(order)
        for g in basis:
            lg, cg = g.leading(order)
            if _divides(lg, lm):
                quot = tuple(a - b for a, b in zip(lm, lg))
                work = work - _monomial_times(g, quot, lc / cg)
                break
        else:
            remainder[lm] = lc
            work = work - SparsePolynomial({lm: lc}, p.arity, p.names)
    return SparsePolynomial(remainder, p.arity, p.names)


def _coeff_bits(poly):
    bits = 0
    for c in poly.terms.values():
        bits = max(bits, c.numerator.bit_length(), c.denominator.bit_length())
    return bits


def _check_budget(poly, basis_size, budget):
    if basis_size > budget.max_basis:
        raise BudgetError(
            f"basis size exceeded the cap of {budget.max_basis}"
        )
    if _coeff_bits(poly) > budget.max_coeff_bits:
        raise BudgetError(
            f"coefficient bit length exceeded the cap of {budget.max_coeff_bits}"
        )


def _update(basis, lms, pairs, f, order):
    """Gebauer-Moeller pair update when f joins the basis."""
    lmf = f.leading(order)[0]
    t = len(basis)
    kept = set()
    for i, j in pairs:
        lij = _lcm_exps(lms[i], lms[j])
        if (
            not _divides(lmf, lij)
            or lij == _lcm_exps(lms[i], lmf)
            or lij == _lcm_exps(lms[j], lmf)
        ):
            kept.add((i, j))
    groups = {}
    for i in range(t):
        groups.setdefault(_lcm_exps(lms[i], lmf), []).append(i)
    minimal = []
    for L in sorted(groups, key=order.key):
        if all(not _divides(M, L) for M in minimal):
            minimal.append(L)
    for L in minimal:
        if not any(L == _mul_exps(lms[i], lmf) for i in groups[L]):
            kept.add((min(groups[L]), t))
    basis.append(f)
    lms.append(lmf)
    return kept


def groebner_basis(gens, order=GREVLEX, budget=None):
    """Reduced Groebner basis (unique for the order) of the ideal generated
    by ``gens``; deterministic Buchberger with the normal selection strategy
    and Gebauer-Moeller pair pruning.  Resource overruns raise BudgetError,
    never silently truncate."""
    if budget is None:
        budget = DEFAULT_BUDGET
    if not gens:
        raise DomainError("generator list must not be empty")
    arity = gens[0].arity
    names = gens[0].names
    for g in gens:
        if g.arity != arity:
            raise DomainError("generators must share one arity")
    start = [g for g in gens if not g.is_zero()]
    if not start:
        return []
    start.sort(key=lambda g: (order.key(g.leading(order)[0]), sorted(g.terms.items())))

    basis, lms, pairs = [], [], set()
    for g in start:
        g = g.monic(order)
        _check_budget(g, len(basis) + 1, budget)
        pairs = _update(basis, lms, pairs, g, order)

    while pairs:
        i, j = min(pairs, key=lambda p: (order.key(_lcm_exps(lms[p[0]], lms[p[1]])), p))
        pairs.discard((i, j))
        s = spolynomial(basis[i], basis[j], order)
        r = normal_form(s, basis, order)
        if r.is_zero():
            continue
        r = r.monic(order)
        _check_budget(r, len(basis) + 1, budget)
        pairs = _update(basis, lms, pairs, r, order)

    # minimalize: drop elements whose leading monomial another one divides
    minimal = []
    for g in sorted(basis, key=lambda g: order.key(g.leading(order)[0])):
        lg = g.leading(order)[0]
        if all(not _divides(h.leading(order)[0], lg) for h in minimal):
            minimal.append(g)
    # interreduce to the reduced basis
    reduced = []
    for i, g in enumerate(minimal):
        rest = minimal[:i] + minimal[i + 1 :]
        reduced.append(normal_form(g, rest, order).monic(order))
    reduced.sort(key=lambda g: order.key(g.leading(order)[0]), reverse=True)
    return reduced


def ideal_dimension(gens, order=GREVLEX, budget=None):
    """Krull dimension of the quotient by the ideal, read combinatorially
    off the reduced Groebner basis: the largest number of variables that
    meets no leading monomial's support.  The unit ideal (empty variety)
    reports -1; the zero ideal reports the full ambient dimension."""
    if not gens:
        raise DomainError("generator list must not be empty")
    arity = gens[0].arity
    gb = groebner_basis(gens, order, budget)
    if not gb:
        return arity
    supports = []
    for g in gb:
        lm = g.leading(order)[0]
        sup = frozenset(i for i, e in enumerate(lm) if e)
        if not sup:  # a constant: unit ideal
            return -1
        supports.append(sup)
    best = 0
    for mask in range(1 << arity):
        subset = frozenset(i for i in range(arity) if mask >> i & 1)
        if len(subset) <= best:
            continue
        if all(not sup <= subset for sup in supports):
            best = len(subset)
    return best


# ---------------------------------------------------------------------------
# extended Rees presentation and the R1 route


def extended_rees_F(f):
    """Presentation of the extended Rees algebra of the maximal ideal of a
    hypersurface {f = 0}: substituting x -> X U, y -> Y U, z -> Z U and
    clearing the power U^o (o = order of f) sends the term
    c x^i y^j z^k to c X^i Y^j Z^k U^(i+j+k-o)."""
    if f.arity != 3:
        raise DomainError("f must be a polynomial in x, y, z")
    if f.is_zero():
        raise DomainError("f must be nonzero")
    o = f.order()
    if o < 2:
        raise DomainError(f"f must have order >= 2, got {o}")
    terms = {}
    for (i, j, k), coeff in f.terms.items():
        terms[(i, j, k, i + j + k - o)] = coeff
    return SparsePolynomial(terms, 4, _UPPER)


def jacobian_ideal(F):
    """Generators of the Jacobian ideal: the partial derivatives plus F,
    content-normalized, zero and duplicate entries dropped."""
    if F.is_zero():
        raise DomainError("F must be nonzero")
    gens = [F.partial_derivative(i) for i in range(F.arity)] + [F]
    out = []
    for g in gens:
        if g.is_zero():
            continue
        g = g.primitive()
        if g not in out:
            out.append(g)
    return out


def singular_locus_dimension(F, budget=None):
    """Dimension of the singular locus of the hypersurface {F = 0}."""
    return ideal_dimension(jacobian_ideal(F), budget=budget)


def r1_hypersurface_test(F, budget=None):
    """Serre's R1 for the hypersurface {F = 0} in four variables: true iff
    the singular locus has dimension <= 1 (codimension >= 2 inside the
    three-dimensional hypersurface).  Being a hypersurface the ring is
    Cohen-Macaulay, so this certifies normality.

    F is assumed irreducible; that is not checked.
    """
    if F.arity != 4:
        raise DomainError("F must be a polynomial in X, Y, Z, U")
    if F.is_zero():
        raise DomainError("F must be nonzero")
    return singular_locus_dimension(F, budget) <= 1


# ---------------------------------------------------------------------------
# double points x^2 + g(y, z)


def _check_double_point_g(g):
    if g.arity != 3:
        raise DomainError("g must live in the x, y, z polynomial ring")
    if g.is_zero():
        raise DomainError("g must be nonzero")
    if any(e[0] for e in g.terms):
        raise DomainError("g must involve only y and z")


def double_point_pg_test(g):
    """For the double point x^2 + g(y, z) (isolated singularity assumed):
    true iff the maximal ideal is certified, i.e. order(g) <= 3.  Order at
    most 2 is a rational double point; order exactly 3 is the Gorenstein
    criterion with positive genus; order >= 4 fails."""
    _check_double_point_g(g)
    return g.order() <= 3


def _reduce_double_point(exps, coeff, g, bound):
    """Rewrite x^2 -> -g repeatedly, truncating above total degree bound.
    Returns {reduced exponent triple: Fraction} with x-exponent <= 1."""
    out = {}
    stack = [(exps, coeff)]
    while stack:
        (a, b, c), co = stack.pop()
        if a + b + c > bound:
            continue
        if a >= 2:
            for (_, gb, gc), gco in g.terms.items():
                stack.append(((a - 2, b + gb, c + gc), -co * gco))
        else:
            key = (a, b, c)
            out[key] = out.get(key, Fraction(0)) + co
            if not out[key]:
                del out[key]
    return out


def _span_rank(rows):
    """Rank of a list of Fraction vectors (incremental elimination)."""
    pivots = []  # (column, normalized row)
    rank = 0
    for row in rows:
        row = list(row)
        for col, prow in pivots:
            if row[col]:
                factor = row[col]
                row = [a - factor * b for a, b in zip(row, prow)]
        lead = next((i for i, a in enumerate(row) if a), None)
        if lead is None:
            continue
        inv = row[lead]
        row = [a / inv for a in row]
        pivots.append((lead, row))
        rank += 1
    return rank


def _ideal_rank(gen_monomials, g, bound, basis_index):
    rows = []
    for u in gen_monomials:
        du = sum(u)
        for w in basis_index:
            if sum(w) + du > bound:
                continue
            prod = tuple(a + b for a, b in zip(u, w))
            reduced = _reduce_double_point(prod, Fraction(1), g, bound)
            row = [Fraction(0)] * len(basis_index)
            for mono, co in reduced.items():
                row[basis_index[mono]] = co
            rows.append(row)
    return _span_rank(rows)


def double_point_stability(g, bound):
    """Check m^2 = (y,z) m in the double point ring k[[x,y,z]]/(x^2 + g),
    working degree by degree up to total degree ``bound`` with exact linear
    algebra on reduced monomials.  bound = order(g) + 2 suffices for this
    family since every generator in play has degree <= order(g) + 1."""
    _check_double_point_g(g)
    if g.order() < 2:
        raise DomainError("g must have order >= 2")
    if bound < 4:
        raise DomainError(f"degree bound must be at least 4, got {bound}")
    basis = [
        (a, b, c)
        for a in (0, 1)
        for b in range(bound + 1)
        for c in range(bound + 1)
        if a + b + c <= bound
    ]
    basis_index = {mono: i for i, mono in enumerate(basis)}
    m2 = [(2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2)]
    qm = [(1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2)]
    # (y,z)m sits inside m^2, so span equality is rank equality.
    return _ideal_rank(m2, g, bound, basis_index) == _ideal_rank(
        qm, g, bound, basis_index
    )
