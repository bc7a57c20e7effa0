"""Multivariate polynomials over exact rationals and single-relation quotient rings.

The built-in rings live on the coordinates a, b, c, d of 2x2 matrix space:
the full matrix space (no relation), the determinant-one locus
(relation a*d - b*c - 1) and the rank-one cone (relation a*d - b*c).
Each relation is a single binomial-plus-constant whose leading monomial under
the fixed graded order is a*d, so one substitution rule a*d -> lower terms
computes canonical representatives; no general Groebner machinery is needed.

All values are immutable after construction and all operations are pure, so
concurrent use is safe.  Coefficients are fractions.Fraction throughout.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .linalg import rank

Exp = tuple[int, ...]


class ArityMismatch(ValueError):
    """Operands defined over different variable lists."""


class _Bottom:
    """Level of the zero element: below every lattice point."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "BOTTOM"


BOTTOM = _Bottom()


def _coerce(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class ExactPoly:
    """Sparse polynomial: map from exponent vectors to nonzero rational coefficients."""

    __slots__ = ("variables", "terms")

    def __init__(self, variables, terms):
        self.variables = tuple(variables)
        n = len(self.variables)
        clean = {}
        for e, c in terms.items():
            e = tuple(e)
            if len(e) != n:
                raise ArityMismatch(f"exponent {e} has wrong arity for {self.variables}")
            c = _coerce(c)
            if c:
                clean[e] = clean.get(e, Fraction(0)) + c
        self.terms = {e: c for e, c in clean.items() if c}

    @classmethod
    def zero(cls, variables):
        return cls(variables, {})

    @classmethod
    def constant(cls, variables, c):
        return cls(variables, {(0,) * len(tuple(variables)): _coerce(c)})

    @classmethod
    def monomial(cls, variables, exponents, coef=1):
        return cls(variables, {tuple(exponents): _coerce(coef)})

    @classmethod
    def variable(cls, variables, name):
        variables = tuple(variables)
        i = variables.index(name)
        e = [0] * len(variables)
        e[i] = 1
        return cls(variables, {tuple(e): Fraction(1)})

    def _check(self, other):
        if self.variables != other.variables:
            raise ArityMismatch(f"{self.variables} vs {other.variables}")

    def __add__(self, other):
        if not isinstance(other, ExactPoly):
            other = ExactPoly.constant(self.variables, other)
        self._check(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t.get(e, Fraction(0)) + c
        return ExactPoly(self.variables, t)

    __radd__ = __add__

    def __neg__(self):
        return ExactPoly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, ExactPoly):
            other = ExactPoly.constant(self.variables, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, ExactPoly):
            return ExactPoly(self.variables, {e: c * _coerce(other) for e, c in self.terms.items()})
        self._check(other)
        t: dict[Exp, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                t[e] = t.get(e, Fraction(0)) + c1 * c2
        return ExactPoly(self.variables, t)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = ExactPoly.constant(self.variables, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        return (
            isinstance(other, ExactPoly)
            and self.variables == other.variables
            and self.terms == other.terms
        )

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def coefficient(self, exponents) -> Fraction:
        return self.terms.get(tuple(exponents), Fraction(0))

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def evaluate(self, values) -> Fraction:
        vals = [_coerce(v) for v in values]
        if len(vals) != len(self.variables):
            raise ArityMismatch("wrong number of values")
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for v, k in zip(vals, e):
                if k:
                    term *= v**k
            total += term
        return total

    def leading_exponent(self) -> Exp:
        """Largest exponent under the graded order with earlier variables first."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self.terms, key=lambda e: (sum(e), e))

    def __repr__(self):
        return f"ExactPoly({poly_to_text(self)!r})"


def _divides(e1: Exp, e2: Exp) -> bool:
    return all(x <= y for x, y in zip(e1, e2))


def _exp_sub(e1: Exp, e2: Exp) -> Exp:
    return tuple(x - y for x, y in zip(e1, e2))


def poly_try_divide(f: ExactPoly, d: ExactPoly) -> ExactPoly | None:
    """Exact quotient f/d, or None when d does not divide f."""
    if d.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    f._check(d)
    lead = d.leading_exponent()
    lc = d.terms[lead]
    rem = f
    q: dict[Exp, Fraction] = {}
    while not rem.is_zero():
        e = rem.leading_exponent()
        if not _divides(lead, e):
            return None
        qe = _exp_sub(e, lead)
        qc = rem.terms[e] / lc
        q[qe] = q.get(qe, Fraction(0)) + qc
        rem = rem - ExactPoly.monomial(f.variables, qe, qc) * d
    return ExactPoly(f.variables, q)


def vanishing_order(f: ExactPoly, d: ExactPoly):
    """Largest m with d^m dividing f exactly; math.inf for f = 0."""
    if f.is_zero():
        return math.inf
    order = 0
    cur = f
    while True:
        q = poly_try_divide(cur, d)
        if q is None:
            return order
        order += 1
        cur = q


class QuotientRing:
    """Polynomial ring modulo at most one relation, with a fixed rewrite rule.

    The leading monomial under the graded order (earlier variables first) has
    maximal total degree, so rewriting never raises degree; every rewrite step
    strictly decreases in the monomial well-order, so normal forms terminate
    and are minimal-degree representatives of their classes.
    """

    def __init__(self, variables, relation: ExactPoly | None = None, name: str = ""):
        self.variables = tuple(variables)
        self.relation = relation
        self.name = name or ",".join(self.variables)
        if relation is not None:
            if relation.variables != self.variables:
                raise ArityMismatch("relation defined over different variables")
            lead = relation.leading_exponent()
            lc = relation.terms[lead]
            rest = relation - ExactPoly.monomial(self.variables, lead, lc)
            self.lead_exp = lead
            self.rewrite = rest * Fraction(-1, 1) * (Fraction(1) / lc)
        else:
            self.lead_exp = None
            self.rewrite = None
        rel_key = None if relation is None else tuple(sorted(relation.terms.items()))
        self.key = (self.variables, rel_key)

    def __repr__(self):
        return f"QuotientRing({self.name})"

    def poly(self, terms) -> ExactPoly:
        return ExactPoly(self.variables, terms)

    def var(self, name) -> ExactPoly:
        return ExactPoly.variable(self.variables, name)

    def normal_form(self, f: ExactPoly) -> ExactPoly:
        """Unique representative with no monomial divisible by the leading monomial."""
        if f.variables != self.variables:
            raise ArityMismatch(f"{f.variables} vs {self.variables}")
        if self.relation is None:
            return f
        lead = self.lead_exp
        work = dict(f.terms)
        out: dict[Exp, Fraction] = {}
        while work:
            e, c = work.popitem()
            if not c:
                continue
            if _divides(lead, e):
                rest = _exp_sub(e, lead)
                for re, rc in self.rewrite.terms.items():
                    ne = tuple(x + y for x, y in zip(re, rest))
                    work[ne] = work.get(ne, Fraction(0)) + c * rc
            else:
                out[e] = out.get(e, Fraction(0)) + c
        return ExactPoly(self.variables, out)

    def is_zero_class(self, f: ExactPoly) -> bool:
        return self.normal_form(f).is_zero()

    def classes_equal(self, f: ExactPoly, g: ExactPoly) -> bool:
        return self.normal_form(f - g).is_zero()

    def in_ideal(self, f: ExactPoly) -> bool:
        """Membership in the principal relation ideal."""
        if self.relation is None:
            return f.is_zero()
        return self.is_zero_class(f)

    def nf_monomials(self, degree: int, exact: bool = True):
        """Normal-form monomial exponents of the given (or up to the given) degree."""
        lead = self.lead_exp
        out = []
        degrees = [degree] if exact else range(degree + 1)
        for d in degrees:
            for e in _compositions(d, len(self.variables)):
                if lead is None or not _divides(lead, e):
                    out.append(e)
        return out


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


MAT2_VARS = ("a", "b", "c", "d")


def _det_poly(variables=MAT2_VARS) -> ExactPoly:
    return ExactPoly(variables, {(1, 0, 0, 1): 1, (0, 1, 1, 0): -1})


def mat2_ring() -> QuotientRing:
    return _MAT2


def sl2_ring() -> QuotientRing:
    return _SL2


def horocycle_ring() -> QuotientRing:
    return _HOROCYCLE


_MAT2 = QuotientRing(MAT2_VARS, None, name="O(Mat2)")
_SL2 = QuotientRing(MAT2_VARS, _det_poly() - 1, name="O(SL2)")
_HOROCYCLE = QuotientRing(MAT2_VARS, _det_poly(), name="O(Y)")


def det_poly() -> ExactPoly:
    """The determinant a*d - b*c on matrix-space coordinates."""
    return _det_poly()


# --- Peter-Weyl levels ------------------------------------------------------
#
# The level of a nonzero class is the minimal total degree over all of its
# polynomial representatives.  Rewriting by a relation whose leading monomial
# has maximal degree never raises degree, so the normal form realises this
# minimum; the linear-algebra search below stays available as an independent
# oracle and is used to validate the shortcut on each ring once.

_min_degree_validated: dict[int, bool] = {}


def pw_level_oracle(f: ExactPoly, ring: QuotientRing):
    """Minimal degree over coset representatives, by coset-membership solves."""
    nf = ring.normal_form(f)
    if nf.is_zero():
        return BOTTOM
    top = nf.degree()
    if ring.relation is None:
        return top
    for t in range(top):
        if _has_representative_of_degree(nf, ring, t):
            return t
    return top


def _has_representative_of_degree(nf: ExactPoly, ring: QuotientRing, t: int) -> bool:
    """Does nf + relation*g have degree <= t for some g?"""
    rel = ring.relation
    gdeg = max(nf.degree() - rel.degree(), 0)
    gmonos = [e for d in range(gdeg + 1) for e in _compositions(d, len(ring.variables))]
    high = [
        e
        for d in range(t + 1, nf.degree() + 1)
        for e in _compositions(d, len(ring.variables))
    ]
    if not high:
        return True
    row_index = {e: i for i, e in enumerate(high)}
    cols = []
    for ge in gmonos:
        col = [Fraction(0)] * len(high)
        for re, rc in rel.terms.items():
            e = tuple(x + y for x, y in zip(re, ge))
            if e in row_index:
                col[row_index[e]] = rc
        cols.append(col)
    target = [-nf.terms.get(e, Fraction(0)) for e in high]
    mat = [[cols[j][i] for j in range(len(cols))] for i in range(len(high))]
    aug = [row + [target[i]] for i, row in enumerate(mat)]
    return rank(aug) == rank(mat)


def _validate_min_degree(ring: QuotientRing, bound: int = 6) -> bool:
    """Check normal forms are degree-minimal in their cosets, degrees <= bound.

    Batched form of the coset search: a class of normal-form degree k has a
    representative of smaller degree exactly when its truncation above k-1 is
    hit by the truncated multiples of the relation; one row-space per degree
    answers that for every class at once.
    """
    key = ring.key
    if key in _min_degree_validated:
        return _min_degree_validated[key]
    from .linalg import IncrementalRank, _reduce_once

    rel = ring.relation
    nvars = len(ring.variables)
    ok = True
    for k in range(1, bound + 1):
        elim = IncrementalRank()
        for gd in range(k - 1):
            for ge in _compositions(gd, nvars):
                vec = {}
                for re, rc in rel.terms.items():
                    e = tuple(x + y for x, y in zip(re, ge))
                    if sum(e) >= k:
                        vec[e] = rc
                if vec:
                    elim.add(vec)
        for e in ring.nf_monomials(k):
            vec = {e: 1}
            for pkey in list(vec):
                if pkey in elim.pivots:
                    vec = _reduce_once(vec, pkey, elim.pivots[pkey])
            while any(kk in elim.pivots for kk in vec):
                pkey = next(kk for kk in sorted(vec, key=repr) if kk in elim.pivots)
                vec = _reduce_once(vec, pkey, elim.pivots[pkey])
            if not vec:
                ok = False  # a smaller-degree representative exists
                break
        if not ok:
            break
    _min_degree_validated[key] = ok
    return ok


def pw_level(f: ExactPoly, ring: QuotientRing, parity_step: int = 2):
    """Least filtration level of a class; BOTTOM for the zero class.

    parity_step is the lattice generator used by callers when comparing levels
    in the dominance order; returned values are plain minimal degrees.
    """
    if parity_step <= 0:
        raise ValueError("parity_step must be positive")
    nf = ring.normal_form(f)
    if nf.is_zero():
        return BOTTOM
    if ring.relation is None or ring.relation.is_homogeneous():
        # graded ring: the class degree is the top graded component's degree
        return nf.degree()
    if _validate_min_degree(ring):
        return nf.degree()
    return pw_level_oracle(nf, ring)


def normal_form(f: ExactPoly, ring: QuotientRing) -> ExactPoly:
    return ring.normal_form(f)


# --- serialization ----------------------------------------------------------


def _fmt_coef(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}" if c.denominator != 1 else str(c.numerator)


def poly_to_text(f: ExactPoly) -> str:
    if not f.terms:
        return "0"
    parts = []
    for e in sorted(f.terms, key=lambda e: (sum(e), e), reverse=True):
        c = f.terms[e]
        mono = " ".join(
            f"{v}^{k}" if k != 1 else v for v, k in zip(f.variables, e) if k
        )
        parts.append(f"{_fmt_coef(c)} * {mono}" if mono else _fmt_coef(c))
    return " + ".join(parts)


def poly_from_text(text: str, variables) -> ExactPoly:
    variables = tuple(variables)
    terms: dict[Exp, Fraction] = {}
    text = text.strip()
    if text == "0":
        return ExactPoly.zero(variables)
    for part in text.split(" + "):
        pieces = [p.strip() for p in part.split("*")]
        coef = Fraction(pieces[0])
        e = [0] * len(variables)
        for piece in pieces[1:]:
            for factor in piece.split():
                if "^" in factor:
                    v, k = factor.split("^")
                    e[variables.index(v)] += int(k)
                else:
                    e[variables.index(factor)] += 1
        key = tuple(e)
        terms[key] = terms.get(key, Fraction(0)) + coef
    return ExactPoly(variables, terms)


def poly_to_json(f: ExactPoly) -> list:
    return [
        {"coef": _fmt_coef(f.terms[e]), "exponents": list(e)}
        for e in sorted(f.terms, key=lambda e: (sum(e), e), reverse=True)
    ]


def poly_from_json(data, variables) -> ExactPoly:
    terms = {tuple(item["exponents"]): Fraction(item["coef"]) for item in data}
    return ExactPoly(tuple(variables), terms)
