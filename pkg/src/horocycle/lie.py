"""Lie algebras by structure constants, PBW enveloping algebras, finite-dimensional representations.

The built-in algebra is sl2 with ordered basis F < H < E; its tensor square is
realised as the enveloping algebra of the direct sum, whose basis keeps the
left factor before the right factor.  PBW monomials are exponent vectors over
the ordered basis; products are normal-ordered by the rewriting
x_j x_i -> x_i x_j + [x_j, x_i] for j > i, which terminates and is confluent.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .linalg import identity, mat_eq, mat_mul, mat_sub, zeros

Exp = tuple[int, ...]


def _coerce(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class LieAlgebraDesc:
    """A Lie algebra given by basis names and structure constants.

    brackets[(i, j)] is the sparse vector of [x_i, x_j]; antisymmetry and the
    Jacobi identity are validated at construction.
    """

    def __init__(self, basis, brackets: dict[tuple[int, int], dict[int, Fraction]]):
        self.basis = tuple(basis)
        n = len(self.basis)
        table: dict[tuple[int, int], dict[int, Fraction]] = {}
        for (i, j), vec in brackets.items():
            vec = {k: _coerce(v) for k, v in vec.items() if v}
            if vec:
                table[(i, j)] = vec
        self.brackets = table
        self.key = (
            self.basis,
            tuple(
                (i, j, tuple(sorted(vec.items())))
                for (i, j), vec in sorted(table.items())
            ),
        )
        self._validate(n)

    def _validate(self, n):
        for i in range(n):
            for j in range(n):
                bij = self.bracket_vector(i, j)
                bji = self.bracket_vector(j, i)
                if any(bij.get(k, Fraction(0)) + bji.get(k, Fraction(0)) for k in set(bij) | set(bji)):
                    raise ValueError(f"structure constants not antisymmetric at ({i},{j})")
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    acc: dict[int, Fraction] = {}
                    for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                        inner = self.bracket_vector(b, c)
                        for m, coef in inner.items():
                            outer = self.bracket_vector(a, m)
                            for t, v in outer.items():
                                acc[t] = acc.get(t, Fraction(0)) + coef * v
                    if any(acc.values()):
                        raise ValueError(f"Jacobi identity fails at ({i},{j},{k})")

    @property
    def dim(self) -> int:
        return len(self.basis)

    def bracket_vector(self, i: int, j: int) -> dict[int, Fraction]:
        return dict(self.brackets.get((i, j), {}))

    def bracket_of_vectors(self, x, y) -> list[Fraction]:
        """Bracket of two coefficient vectors."""
        out = [Fraction(0)] * self.dim
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj:
                    continue
                for k, c in self.bracket_vector(i, j).items():
                    out[k] += xi * yj * c
        return out

    def index(self, name: str) -> int:
        return self.basis.index(name)

    def to_json(self) -> dict:
        return {
            "basis": list(self.basis),
            "brackets": [
                {"i": i, "j": j, "coeffs": {str(k): str(v) for k, v in vec.items()}}
                for (i, j), vec in sorted(self.brackets.items())
            ],
        }

    @classmethod
    def from_json(cls, data) -> "LieAlgebraDesc":
        brackets = {
            (item["i"], item["j"]): {int(k): Fraction(v) for k, v in item["coeffs"].items()}
            for item in data["brackets"]
        }
        return cls(tuple(data["basis"]), brackets)


def sl2_desc() -> LieAlgebraDesc:
    return _SL2_DESC


def _make_sl2() -> LieAlgebraDesc:
    # basis order F < H < E
    F, H, E = 0, 1, 2
    brackets = {
        (H, E): {E: Fraction(2)},
        (E, H): {E: Fraction(-2)},
        (H, F): {F: Fraction(-2)},
        (F, H): {F: Fraction(2)},
        (E, F): {H: Fraction(1)},
        (F, E): {H: Fraction(-1)},
    }
    return LieAlgebraDesc(("F", "H", "E"), brackets)


def direct_sum(left: LieAlgebraDesc, right: LieAlgebraDesc, suffixes=("1", "2")) -> LieAlgebraDesc:
    names = tuple(n + suffixes[0] for n in left.basis) + tuple(n + suffixes[1] for n in right.basis)
    off = left.dim
    brackets: dict[tuple[int, int], dict[int, Fraction]] = {}
    for (i, j), vec in left.brackets.items():
        brackets[(i, j)] = dict(vec)
    for (i, j), vec in right.brackets.items():
        brackets[(i + off, j + off)] = {k + off: v for k, v in vec.items()}
    return LieAlgebraDesc(names, brackets)


def sl2_pair_desc() -> LieAlgebraDesc:
    return _SL2_PAIR


_SL2_DESC = _make_sl2()
_SL2_PAIR = direct_sum(_SL2_DESC, _SL2_DESC)


# --- enveloping algebra -----------------------------------------------------


class UEnvElement:
    """Element of U(g) in PBW normal form over the ordered basis of g."""

    __slots__ = ("desc", "terms")

    def __init__(self, desc: LieAlgebraDesc, terms: dict[Exp, Fraction]):
        self.desc = desc
        n = desc.dim
        clean: dict[Exp, Fraction] = {}
        for e, c in terms.items():
            e = tuple(e)
            if len(e) != n:
                raise ValueError("PBW exponent arity mismatch")
            c = _coerce(c)
            if c:
                clean[e] = clean.get(e, Fraction(0)) + c
        self.terms = {e: c for e, c in clean.items() if c}

    @classmethod
    def one(cls, desc):
        return cls(desc, {(0,) * desc.dim: Fraction(1)})

    @classmethod
    def generator(cls, desc, index: int):
        e = [0] * desc.dim
        e[index] = 1
        return cls(desc, {tuple(e): Fraction(1)})

    def _check(self, other):
        if self.desc is not other.desc and self.desc.key != other.desc.key:
            raise ValueError("elements of different enveloping algebras")

    def __add__(self, other):
        if not isinstance(other, UEnvElement):
            other = UEnvElement.one(self.desc) * other
        self._check(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t.get(e, Fraction(0)) + c
        return UEnvElement(self.desc, t)

    __radd__ = __add__

    def __neg__(self):
        return UEnvElement(self.desc, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, UEnvElement):
            other = UEnvElement.one(self.desc) * other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, UEnvElement):
            s = _coerce(other)
            return UEnvElement(self.desc, {e: c * s for e, c in self.terms.items()})
        self._check(other)
        out: dict[Exp, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                word = _exp_to_word(e1) + _exp_to_word(e2)
                for e, c in _word_normal_form(self.desc, word).items():
                    out[e] = out.get(e, Fraction(0)) + c1 * c2 * c
        return UEnvElement(self.desc, out)

    def __rmul__(self, other):
        s = _coerce(other)
        return UEnvElement(self.desc, {e: c * s for e, c in self.terms.items()})

    def __eq__(self, other):
        return (
            isinstance(other, UEnvElement)
            and self.desc.key == other.desc.key
            and self.terms == other.terms
        )

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.terms

    def pbw_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def __repr__(self):
        if not self.terms:
            return "UEnvElement(0)"
        parts = []
        for e in sorted(self.terms, key=lambda e: (sum(e), e)):
            mono = " ".join(
                f"{n}^{k}" if k > 1 else n for n, k in zip(self.desc.basis, e) if k
            )
            parts.append(f"{self.terms[e]}*{mono or '1'}")
        return "UEnvElement(" + " + ".join(parts) + ")"


def _exp_to_word(e: Exp) -> tuple[int, ...]:
    word: list[int] = []
    for i, k in enumerate(e):
        word.extend([i] * k)
    return tuple(word)


def _word_to_exp(word, n: int) -> Exp:
    e = [0] * n
    for i in word:
        e[i] += 1
    return tuple(e)


_word_nf_cache: dict[tuple, dict[Exp, Fraction]] = {}


def _word_normal_form(desc: LieAlgebraDesc, word: tuple[int, ...], rng=None) -> dict[Exp, Fraction]:
    """PBW normal form of a product of generators.

    With rng=None the first descent is rewritten (deterministic, memoized);
    a supplied rng picks random descents, exercising confluence.
    """
    if rng is None:
        cached = _word_nf_cache.get((desc.key, word))
        if cached is not None:
            return dict(cached)
    descents = [k for k in range(len(word) - 1) if word[k] > word[k + 1]]
    if not descents:
        out = {_word_to_exp(word, desc.dim): Fraction(1)}
    else:
        k = descents[0] if rng is None else rng.choice(descents)
        i, j = word[k], word[k + 1]
        swapped = word[:k] + (j, i) + word[k + 2 :]
        out = dict(_word_normal_form(desc, swapped, rng))
        bracket = desc.bracket_vector(i, j)
        if bracket:
            shorter = word[:k] + word[k + 2 :]
            for m, coef in bracket.items():
                sub = word[:k] + (m,) + word[k + 2 :]
                for e, c in _word_normal_form(desc, sub, rng).items():
                    out[e] = out.get(e, Fraction(0)) + coef * c
            out = {e: c for e, c in out.items() if c}
    if rng is None:
        _word_nf_cache[(desc.key, word)] = dict(out)
    return out


def pbw_normal_form(desc: LieAlgebraDesc, word, coef=1, rng=None) -> UEnvElement:
    """Normal form of coef * x_{word[0]} ... x_{word[-1]}."""
    nf = _word_normal_form(desc, tuple(word), rng)
    return UEnvElement(desc, {e: _coerce(coef) * c for e, c in nf.items()})


def casimir_sl2() -> UEnvElement:
    """1 + H^2 + 2EF + 2FE in U(sl2), returned in PBW normal form."""
    d = sl2_desc()
    F = UEnvElement.generator(d, 0)
    H = UEnvElement.generator(d, 1)
    E = UEnvElement.generator(d, 2)
    return UEnvElement.one(d) + H * H + 2 * (E * F) + 2 * (F * E)


def is_central(u: UEnvElement) -> bool:
    for i in range(u.desc.dim):
        x = UEnvElement.generator(u.desc, i)
        if not (u * x - x * u).is_zero():
            return False
    return True


# --- tensor squares ---------------------------------------------------------


def embed_left(u: UEnvElement, pair: LieAlgebraDesc | None = None) -> UEnvElement:
    pair = pair or sl2_pair_desc()
    n = u.desc.dim
    terms = {e + (0,) * (pair.dim - n): c for e, c in u.terms.items()}
    return UEnvElement(pair, terms)


def embed_right(u: UEnvElement, pair: LieAlgebraDesc | None = None) -> UEnvElement:
    pair = pair or sl2_pair_desc()
    n = u.desc.dim
    terms = {(0,) * (pair.dim - n) + e: c for e, c in u.terms.items()}
    return UEnvElement(pair, terms)


def tensor(u: UEnvElement, v: UEnvElement, pair: LieAlgebraDesc | None = None) -> UEnvElement:
    """u (x) v inside U(g (+) g); the two factors commute."""
    return embed_left(u, pair) * embed_right(v, pair)


# --- finite dimensional representations --------------------------------------


@dataclass(frozen=True)
class FinDimRep:
    """Matrices for each basis element, satisfying the bracket relations."""

    desc: LieAlgebraDesc
    dim: int
    matrices: tuple

    def __post_init__(self):
        for i in range(self.desc.dim):
            for j in range(self.desc.dim):
                lhs = mat_sub(
                    mat_mul(self.matrices[i], self.matrices[j]),
                    mat_mul(self.matrices[j], self.matrices[i]),
                )
                rhs = zeros(self.dim, self.dim)
                for k, c in self.desc.bracket_vector(i, j).items():
                    rhs = [
                        [x + c * y for x, y in zip(r1, r2)]
                        for r1, r2 in zip(rhs, self.matrices[k])
                    ]
                if not mat_eq(lhs, rhs):
                    raise ValueError(f"bracket relation fails at ({i},{j})")

    def matrix_of(self, name: str):
        return self.matrices[self.desc.index(name)]

    def act_vector(self, coeffs):
        """Matrix of a Lie algebra element given by a coefficient vector."""
        out = zeros(self.dim, self.dim)
        for i, c in enumerate(coeffs):
            if c:
                out = [
                    [x + _coerce(c) * y for x, y in zip(r1, r2)]
                    for r1, r2 in zip(out, self.matrices[i])
                ]
        return out

    def act_uenv(self, u: UEnvElement):
        """Matrix of an enveloping algebra element (PBW-ordered products)."""
        if u.desc.key != self.desc.key:
            raise ValueError("element lives in a different enveloping algebra")
        out = zeros(self.dim, self.dim)
        for e, c in u.terms.items():
            m = identity(self.dim)
            for i, k in enumerate(e):
                for _ in range(k):
                    m = mat_mul(m, self.matrices[i])
            out = [
                [x + c * y for x, y in zip(r1, r2)] for r1, r2 in zip(out, m)
            ]
        return out

    def to_json(self) -> dict:
        return {
            "basis": list(self.desc.basis),
            "dim": self.dim,
            "matrices": [
                [[f"{x.numerator}/{x.denominator}" for x in row] for row in m]
                for m in self.matrices
            ],
        }


def sym_power_rep(m: int) -> FinDimRep:
    """Sym^m of the standard 2-dim representation, weight basis m, m-2, ..., -m."""
    if m < 0:
        raise ValueError("m must be non-negative")
    d = sl2_desc()
    n = m + 1
    E = zeros(n, n)
    F = zeros(n, n)
    H = zeros(n, n)
    for j in range(n):
        H[j][j] = Fraction(m - 2 * j)
        if j > 0:
            E[j - 1][j] = Fraction(j)
        if j < m:
            F[j + 1][j] = Fraction(m - j)
    return FinDimRep(d, n, (F, H, E))


def dual_rep(v: FinDimRep) -> FinDimRep:
    """Dual action x -> -x^T."""
    mats = tuple(
        [[-v.matrices[i][r][c] for r in range(v.dim)] for c in range(v.dim)]
        for i in range(v.desc.dim)
    )
    return FinDimRep(v.desc, v.dim, mats)


@dataclass(frozen=True)
class FinDimBimodule:
    """A module for g (+) g with commuting left and right actions."""

    rep: FinDimRep
    left_dim: int
    right_dim: int
    label: str = ""

    def __post_init__(self):
        half = self.rep.desc.dim // 2
        for i in range(half):
            for j in range(half, self.rep.desc.dim):
                a, b = self.rep.matrices[i], self.rep.matrices[j]
                if not mat_eq(mat_mul(a, b), mat_mul(b, a)):
                    raise ValueError("left and right actions do not commute")

    @property
    def dim(self) -> int:
        return self.rep.dim


def external_tensor(v: FinDimRep, w: FinDimRep, label: str = "") -> FinDimBimodule:
    """V (x) W as a module over g (+) g: left factor acts on V, right on W."""
    if v.desc.key == _SL2_DESC.key and w.desc.key == _SL2_DESC.key:
        pair = _SL2_PAIR
    else:
        pair = direct_sum(v.desc, w.desc)
    n = v.dim * w.dim

    def kron_left(a):
        out = zeros(n, n)
        for i in range(v.dim):
            for j in range(v.dim):
                if a[i][j]:
                    for k in range(w.dim):
                        out[i * w.dim + k][j * w.dim + k] = a[i][j]
        return out

    def kron_right(b):
        out = zeros(n, n)
        for k in range(w.dim):
            for l in range(w.dim):
                if b[k][l]:
                    for i in range(v.dim):
                        out[i * w.dim + k][i * w.dim + l] = b[k][l]
        return out

    mats = tuple(kron_left(v.matrices[i]) for i in range(v.desc.dim)) + tuple(
        kron_right(w.matrices[i]) for i in range(w.desc.dim)
    )
    rep = FinDimRep(pair, n, mats)
    return FinDimBimodule(rep, v.dim, w.dim, label=label)
