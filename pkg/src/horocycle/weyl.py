"""Normal-ordered algebra of polynomial-coefficient differential operators.

Operators are stored with every coordinate factor to the left of every
derivative factor; this normal order is a basis, so equality of operators is
equality of coefficient tables.  The product is computed term by term from the
single reordering rule D_x x = x D_x + 1, extended to powers by the usual
binomial/falling-factorial expansion.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .exactalg import ArityMismatch, ExactPoly, QuotientRing

Exp = tuple[int, ...]
Key = tuple[Exp, Exp]


def _coerce(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class WeylOp:
    """Finite sum of (coordinate monomial)*(derivative monomial) terms."""

    __slots__ = ("variables", "terms")

    def __init__(self, variables, terms):
        self.variables = tuple(variables)
        n = len(self.variables)
        clean: dict[Key, Fraction] = {}
        for (xe, de), c in terms.items():
            xe, de = tuple(xe), tuple(de)
            if len(xe) != n or len(de) != n:
                raise ArityMismatch("exponent arity mismatch")
            c = _coerce(c)
            if c:
                k = (xe, de)
                clean[k] = clean.get(k, Fraction(0)) + c
        self.terms = {k: c for k, c in clean.items() if c}

    # --- constructors ---

    @classmethod
    def zero(cls, variables):
        return cls(variables, {})

    @classmethod
    def one(cls, variables):
        n = len(tuple(variables))
        return cls(variables, {((0,) * n, (0,) * n): Fraction(1)})

    @classmethod
    def from_poly(cls, f: ExactPoly):
        n = len(f.variables)
        zero = (0,) * n
        return cls(f.variables, {(e, zero): c for e, c in f.terms.items()})

    @classmethod
    def partial(cls, variables, name):
        variables = tuple(variables)
        i = variables.index(name)
        n = len(variables)
        de = [0] * n
        de[i] = 1
        return cls(variables, {((0,) * n, tuple(de)): Fraction(1)})

    @classmethod
    def vector_field(cls, coefficients: list[ExactPoly]):
        """Sum coefficients[i] * D_{x_i}."""
        variables = coefficients[0].variables
        n = len(variables)
        terms: dict[Key, Fraction] = {}
        for i, f in enumerate(coefficients):
            if f.variables != variables:
                raise ArityMismatch("mixed variable lists")
            de = [0] * n
            de[i] = 1
            de = tuple(de)
            for e, c in f.terms.items():
                k = (e, de)
                terms[k] = terms.get(k, Fraction(0)) + c
        return cls(variables, terms)

    # --- structure ---

    def _check(self, other):
        if self.variables != other.variables:
            raise ArityMismatch(f"{self.variables} vs {other.variables}")

    def is_zero(self) -> bool:
        return not self.terms

    def order(self) -> int:
        """Maximal derivative degree; -1 for the zero operator."""
        if not self.terms:
            return -1
        return max(sum(de) for _, de in self.terms)

    def is_vector_field(self) -> bool:
        return bool(self.terms) and all(sum(de) == 1 for _, de in self.terms)

    def coefficient_polys(self) -> dict[Exp, ExactPoly]:
        """Map derivative exponent -> its coordinate-polynomial coefficient."""
        out: dict[Exp, dict[Exp, Fraction]] = {}
        for (xe, de), c in self.terms.items():
            out.setdefault(de, {})[xe] = c
        return {de: ExactPoly(self.variables, t) for de, t in out.items()}

    def map_coefficients(self, fn) -> "WeylOp":
        """Apply fn: ExactPoly -> ExactPoly to each derivative-slot coefficient."""
        terms: dict[Key, Fraction] = {}
        for de, poly in self.coefficient_polys().items():
            for e, c in fn(poly).terms.items():
                k = (e, de)
                terms[k] = terms.get(k, Fraction(0)) + c
        return WeylOp(self.variables, terms)

    # --- arithmetic ---

    def __add__(self, other):
        if not isinstance(other, WeylOp):
            other = WeylOp.one(self.variables) * other
        self._check(other)
        t = dict(self.terms)
        for k, c in other.terms.items():
            t[k] = t.get(k, Fraction(0)) + c
        return WeylOp(self.variables, t)

    __radd__ = __add__

    def __neg__(self):
        return WeylOp(self.variables, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, WeylOp):
            other = WeylOp.one(self.variables) * other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, ExactPoly):
            other = WeylOp.from_poly(other)
        if not isinstance(other, WeylOp):
            s = _coerce(other)
            return WeylOp(self.variables, {k: c * s for k, c in self.terms.items()})
        self._check(other)
        out: dict[Key, Fraction] = {}
        for (xe1, de1), c1 in self.terms.items():
            for (xe2, de2), c2 in other.terms.items():
                _accumulate_term_product(out, xe1, de1, xe2, de2, c1 * c2)
        return WeylOp(self.variables, out)

    def __rmul__(self, other):
        if isinstance(other, ExactPoly):
            return WeylOp.from_poly(other) * self
        s = _coerce(other)
        return WeylOp(self.variables, {k: c * s for k, c in self.terms.items()})

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = WeylOp.one(self.variables)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        return (
            isinstance(other, WeylOp)
            and self.variables == other.variables
            and self.terms == other.terms
        )

    __hash__ = None

    def __repr__(self):
        return f"WeylOp({op_to_text(self)!r})"


def _accumulate_term_product(out, xe1, de1, xe2, de2, coef):
    """Normal-order (x^xe1 D^de1)(x^xe2 D^de2) into out.

    D^m x^p = sum_k C(m,k) * p!/(p-k)! * x^(p-k) D^(m-k), variable by variable.
    """
    n = len(xe1)
    expansions = [None] * n
    for i in range(n):
        m, p = de1[i], xe2[i]
        top = min(m, p)
        expansions[i] = [
            (k, math.comb(m, k) * math.perm(p, k)) for k in range(top + 1)
        ]
    stack = [(0, (), 1)]
    while stack:
        i, ks, mult = stack.pop()
        if i == n:
            xe = tuple(xe1[j] + xe2[j] - ks[j] for j in range(n))
            de = tuple(de1[j] + de2[j] - ks[j] for j in range(n))
            key = (xe, de)
            out[key] = out.get(key, Fraction(0)) + coef * mult
            continue
        for k, w in expansions[i]:
            stack.append((i + 1, ks + (k,), mult * w))


def weyl_mul(p: WeylOp, q: WeylOp) -> WeylOp:
    """Normal-ordered product; associative and bilinear."""
    return p * q


def commutator(p: WeylOp, q: WeylOp) -> WeylOp:
    return p * q - q * p


def apply_op(p: WeylOp, f: ExactPoly) -> ExactPoly:
    """Act on a polynomial; apply(PQ, f) = apply(P, apply(Q, f))."""
    if p.variables != f.variables:
        raise ArityMismatch(f"{p.variables} vs {f.variables}")
    n = len(p.variables)
    out: dict[Exp, Fraction] = {}
    for (xe, de), c in p.terms.items():
        for fe, fc in f.terms.items():
            if any(fe[i] < de[i] for i in range(n)):
                continue
            mult = 1
            for i in range(n):
                if de[i]:
                    mult *= math.perm(fe[i], de[i])
            e = tuple(fe[i] - de[i] + xe[i] for i in range(n))
            out[e] = out.get(e, Fraction(0)) + c * fc * mult
    return ExactPoly(p.variables, out)


def is_relative(theta: WeylOp, f: ExactPoly) -> bool:
    """A vector field is relative to the fibration by f when it kills f."""
    if not theta.is_vector_field():
        raise ValueError("is_relative expects a vector field")
    return apply_op(theta, f).is_zero()


def preserves_ideal(p: WeylOp, ring: QuotientRing, bound: int = 6) -> bool:
    """Does p map the relation ideal into itself (so p descends to the quotient)?

    Exact for O-linear combinations of vector fields (Leibniz); for higher
    order operators the containment is checked on monomial multiples of the
    relation up to the degree bound.
    """
    if ring.relation is None:
        return True
    rel = ring.relation
    if p.is_zero() or all(sum(de) <= 1 for _, de in p.terms):
        return ring.in_ideal(apply_op(p, rel))
    for d in range(bound + 1):
        for e in ring.nf_monomials(d):
            g = ExactPoly.monomial(ring.variables, e)
            if not ring.in_ideal(apply_op(p, g * rel)):
                return False
    return True


def euler_op(variables) -> WeylOp:
    """1 + sum_i x_i D_i."""
    variables = tuple(variables)
    out = WeylOp.one(variables)
    for name in variables:
        out = out + WeylOp.from_poly(ExactPoly.variable(variables, name)) * WeylOp.partial(
            variables, name
        )
    return out


# --- serialization ----------------------------------------------------------


def _fmt_coef(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}" if c.denominator != 1 else str(c.numerator)


def op_to_text(p: WeylOp) -> str:
    if not p.terms:
        return "0"
    parts = []
    for xe, de in sorted(p.terms, key=lambda k: (sum(k[1]), k[1], sum(k[0]), k[0]), reverse=True):
        c = p.terms[(xe, de)]
        xmono = " ".join(f"{v}^{k}" if k != 1 else v for v, k in zip(p.variables, xe) if k)
        dmono = " ".join(
            f"D{v}^{k}" if k != 1 else f"D{v}" for v, k in zip(p.variables, de) if k
        )
        piece = _fmt_coef(c)
        if xmono:
            piece += f" * {xmono}"
        if dmono:
            piece += f" * {dmono}"
        parts.append(piece)
    return " + ".join(parts)


def op_from_text(text: str, variables) -> WeylOp:
    variables = tuple(variables)
    n = len(variables)
    text = text.strip()
    if text == "0":
        return WeylOp.zero(variables)
    terms: dict[Key, Fraction] = {}
    for part in text.split(" + "):
        pieces = [s.strip() for s in part.split("*")]
        coef = Fraction(pieces[0])
        xe = [0] * n
        de = [0] * n
        for piece in pieces[1:]:
            for factor in piece.split():
                base, _, power = factor.partition("^")
                k = int(power) if power else 1
                if base.startswith("D") and base[1:] in variables:
                    de[variables.index(base[1:])] += k
                else:
                    xe[variables.index(base)] += k
        key = (tuple(xe), tuple(de))
        terms[key] = terms.get(key, Fraction(0)) + coef
    return WeylOp(variables, terms)


def op_to_json(p: WeylOp) -> list:
    return [
        {
            "coef": _fmt_coef(p.terms[(xe, de)]),
            "coordinates": list(xe),
            "derivatives": list(de),
        }
        for xe, de in sorted(p.terms, key=lambda k: (sum(k[1]), k[1], sum(k[0]), k[0]), reverse=True)
    ]


def op_from_json(data, variables) -> WeylOp:
    terms = {
        (tuple(item["coordinates"]), tuple(item["derivatives"])): Fraction(item["coef"])
        for item in data
    }
    return WeylOp(tuple(variables), terms)
