"""Normal Hilbert coefficients and p_g-ideal criteria from numerical data.

The analytic input is a NumericalIdealDatum: the self-pairing Z.Z and
canonical pairing Z.K of the representing cycle, the geometric genus p_g,
and the sequence h1[n] of first-cohomology lengths of O(-nZ).  Everything
the combinatorics can verify about such a sequence is enforced at
construction; the operations then evaluate the Riemann-Roch colength
formula, extract (e0bar, e1bar, e2bar), and decide the three equivalent
p_g-ideal criteria.
"""

from dataclasses import dataclass, field

from .errors import DomainError, InconsistentDataError, ParseError


@dataclass(frozen=True)
class NumericalIdealDatum:
    """Numerical shadow of an integrally closed m-primary ideal.

    zz = Z.Z (negative), zk = Z.K, pg = geometric genus, h1[n-1] = length
    of H^1(O(-nZ)) for n = 1..N; the sequence is read as constant beyond N
    and must list at least pg + 1 entries.  h1[0] is defined to be pg.
    """

    zz: int
    zk: int
    pg: int
    h1: tuple
    label: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "h1", tuple(int(v) for v in self.h1))
        self._validate()

    def _validate(self):
        zz, zk, pg, h1 = self.zz, self.zk, self.pg, self.h1
        if zz >= 0:
            raise InconsistentDataError(f"zz must be negative, got {zz}")
        if pg < 0:
            raise InconsistentDataError(f"pg must be >= 0, got {pg}")
        if (zz + zk) % 2 != 0:
            raise InconsistentDataError(
                f"zz + zk must be even (Riemann-Roch parity), got {zz + zk}"
            )
        if (-zz + zk) % 2 != 0 or (-zz + zk) // 2 < 0:
            raise InconsistentDataError(
                "first normal Hilbert coefficient (-zz+zk)/2 must be a "
                f"nonnegative integer, got {-zz + zk}/2"
            )
        if not h1:
            raise InconsistentDataError("h1 sequence must not be empty")
        if len(h1) < pg + 1:
            raise InconsistentDataError(
                f"h1 must list at least pg+1 = {pg + 1} entries, got {len(h1)}"
            )
        full = (pg,) + h1  # full[n] = h1 at exponent n, with h1[0] := pg
        for n, v in enumerate(full):
            if v < 0 or v > pg:
                raise InconsistentDataError(
                    f"h1[{n}] = {v} outside [0, pg] = [0, {pg}]"
                )
            if n + 1 < len(full) and full[n] < full[n + 1]:
                raise InconsistentDataError(
                    f"h1 must be nonincreasing; h1[{n}] = {v} < h1[{n + 1}]"
                )
        drops = [full[n] - full[n + 1] for n in range(len(full) - 1)]
        for n in range(len(drops) - 1):
            if drops[n] < drops[n + 1]:
                raise InconsistentDataError(
                    f"h1 must be convex; drop at {n} is {drops[n]} "
                    f"but drop at {n + 1} is {drops[n + 1]}"
                )
        for n in range(pg, len(full) - 1):
            if full[n] != full[n + 1]:
                raise InconsistentDataError(
                    f"h1 must be constant from index pg = {pg} on"
                )
        # Colengths of the closures of powers are positive and strictly
        # increasing for every genuine singularity; reject data violating
        # that.  Past the explicit entries the increments grow linearly,
        # so checking through len(h1)+2 covers all n.
        prev = None
        for n in range(1, len(h1) + 3):
            val = -((n * n * zz + n * zk) // 2) + pg - self.h1_at(n)
            if n == 1 and val < 1:
                raise InconsistentDataError(
                    f"colength at n=1 is {val}; must be >= 1"
                )
            if prev is not None and val <= prev:
                raise InconsistentDataError(
                    f"colengths must be strictly increasing; "
                    f"value {val} at n={n} does not exceed {prev}"
                )
            prev = val

    def h1_at(self, n):
        """h1 at exponent n with the constant extension; h1_at(0) = pg."""
        if n < 0:
            raise DomainError("exponent must be >= 0")
        if n == 0:
            return self.pg
        return self.h1[min(n, len(self.h1)) - 1]

    def h1_tail(self):
        """The stabilized value h1[n] for n >= pg."""
        return self.h1_at(max(self.pg, 1))


@dataclass(frozen=True)
class NormalHilbertCoefficients:
    """The triple (e0bar, e1bar, e2bar) of a normal Hilbert polynomial."""

    e0bar: int
    e1bar: int
    e2bar: int

    def __post_init__(self):
        if self.e0bar < 1:
            raise InconsistentDataError("e0bar must be positive")
        if self.e1bar < 0 or self.e2bar < 0:
            raise InconsistentDataError("e1bar and e2bar must be nonnegative")

    def __iter__(self):
        return iter((self.e0bar, self.e1bar, self.e2bar))


def kato_colength(d, n):
    """Colength of the closure of the n-th power via Riemann-Roch:
    -(n^2 Z.Z + n Z.K)/2 + pg - h1[n]."""
    if n < 1:
        raise DomainError("power must be >= 1")
    num = n * n * d.zz + n * d.zk
    if num % 2 != 0:
        raise InconsistentDataError("parity violated: colength not integral")
    val = -(num // 2) + d.pg - d.h1_at(n)
    if val < 1:
        raise InconsistentDataError(f"colength at n={n} is {val}; datum inconsistent")
    return val


def coefficients(d):
    """Normal Hilbert coefficients: e0bar = -Z.Z, e1bar = (-Z.Z + Z.K)/2,
    e2bar = pg - h1[n] for any n >= pg (stabilized tail)."""
    e2 = d.pg - d.h1_tail()
    if e2 > d.pg:
        raise InconsistentDataError("e2bar exceeds pg")
    return NormalHilbertCoefficients(-d.zz, (-d.zz + d.zk) // 2, e2)


def hilbert_poly_eval(c, n):
    """P(n) = e0bar*C(n+2,2) - e1bar*(n+1) + e2bar."""
    if n < 0:
        raise DomainError("argument must be >= 0")
    return c.e0bar * ((n + 2) * (n + 1) // 2) - c.e1bar * (n + 1) + c.e2bar


def stabilization_index(d):
    """Least n >= 0 with h1[n] = h1[n+1] (h1[0] read as pg); always <= pg."""
    for n in range(d.pg + 1):
        if d.h1_at(n) == d.h1_at(n + 1):
            return n
    raise InconsistentDataError("h1 did not stabilize by pg")  # unreachable on valid data


def epsilon(pg, h1z, h1w, h1zw):
    """Joint-reduction defect pg - h1(Z) - h1(W) + h1(Z+W).

    The three h1 values must lie in [0, pg]; h1(Z+W) can exceed neither
    h1(Z) nor h1(W), and the result must land in [0, pg] - anything else
    means the values cannot come from one singularity.
    """
    for name, v in (("pg", pg), ("h1z", h1z), ("h1w", h1w), ("h1zw", h1zw)):
        if v < 0:
            raise DomainError(f"{name} must be >= 0")
    for name, v in (("h1z", h1z), ("h1w", h1w), ("h1zw", h1zw)):
        if v > pg:
            raise DomainError(f"{name} = {v} exceeds pg = {pg}")
    if h1zw > min(h1z, h1w):
        raise InconsistentDataError(
            "h1 cannot grow when the cycle grows: "
            f"h1zw = {h1zw} > min(h1z, h1w) = {min(h1z, h1w)}"
        )
    val = pg - h1z - h1w + h1zw
    if val < 0 or val > pg:
        raise InconsistentDataError(f"epsilon = {val} outside [0, pg]")
    return val


def pg_ideal_test(d):
    """Decide the three equivalent p_g-ideal criteria and cross-assert them.

    Criteria: (a) h1[1] = pg; (b) e1bar = e0bar - colength(1);
    (c) e2bar = 0.  Returns (verdict, (a, b, c)); disagreement raises
    InconsistentDataError (it cannot happen for data passing validation).
    """
    a = d.h1_at(1) == d.pg
    c = coefficients(d)
    b = c.e1bar == c.e0bar - kato_colength(d, 1)
    c_zero = c.e2bar == 0
    if not (a == b == c_zero):
        raise InconsistentDataError(
            f"p_g criteria disagree: h1-attains-pg={a}, "
            f"e1-matches={b}, e2-vanishes={c_zero}"
        )
    return a, (a, b, c_zero)


def pg_additivity_check(pg_total, e2bar, component_pgs):
    """True iff pg_total = e2bar + sum of the component genera."""
    if pg_total < 0 or e2bar < 0 or any(p < 0 for p in component_pgs):
        raise DomainError("all inputs must be >= 0")
    return pg_total == e2bar + sum(component_pgs)


def multi_rees_verdict(d1, d2):
    """Certificate for the bigraded Rees algebra of the pair: true iff both
    data pass the p_g-ideal test.  The data must share one singularity, so
    mismatched pg fields are rejected."""
    if d1.pg != d2.pg:
        raise DomainError(
            f"data describe different singularities: pg {d1.pg} != {d2.pg}"
        )
    return pg_ideal_test(d1)[0] and pg_ideal_test(d2)[0]


def power_datum(d, n):
    """Datum of the n-th power ideal (cycle nZ): zz' = n^2 zz, zk' = n zk,
    h1'[m] = h1[n m]."""
    if n < 1:
        raise DomainError("power must be >= 1")
    h1 = tuple(d.h1_at(n * m) for m in range(1, d.pg + 2))
    label = f"{d.label}^{n}" if d.label else ""
    return NumericalIdealDatum(n * n * d.zz, n * d.zk, d.pg, h1, label)


# ---------------------------------------------------------------------------
# datum file format
#
#   datum <name> zz=<int> zk=<int> pg=<int> h1=<int>[,<int>...]


def _int_field(val, key, lineno):
    try:
        return int(val)
    except ValueError:
        raise ParseError(f"bad integer {val!r} for {key}", line=lineno) from None


def parse_data(text):
    """Parse the line-oriented datum format; returns {name: datum} in file
    order.  Validation failures surface as InconsistentDataError."""
    out = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0] != "datum":
            raise ParseError(f"unknown directive {tokens[0]!r}", line=lineno)
        if len(tokens) != 6:
            raise ParseError(
                "datum needs a name and zz= zk= pg= h1= fields", line=lineno
            )
        name = tokens[1]
        if name in out:
            raise ParseError(f"duplicate datum {name!r}", line=lineno)
        fields = {}
        for tok in tokens[2:]:
            key, sep, val = tok.partition("=")
            if not sep or key not in ("zz", "zk", "pg", "h1"):
                raise ParseError(f"unknown key {tok!r} on datum line", line=lineno)
            if key in fields:
                raise ParseError(f"duplicate key {key!r}", line=lineno)
            fields[key] = val
        missing = {"zz", "zk", "pg", "h1"} - set(fields)
        if missing:
            raise ParseError(f"datum is missing {sorted(missing)}", line=lineno)
        h1 = tuple(
            _int_field(part, "h1", lineno) for part in fields["h1"].split(",")
        )
        out[name] = NumericalIdealDatum(
            _int_field(fields["zz"], "zz", lineno),
            _int_field(fields["zk"], "zk", lineno),
            _int_field(fields["pg"], "pg", lineno),
            h1,
            label=name,
        )
    if not out:
        raise ParseError("file defines no datum", line=1)
    return out


def load_data(path):
    with open(path, encoding="utf-8") as fh:
        return parse_data(fh.read())
