"""Graded polynomial rings over a coefficient domain.

Per-degree monomial bases in a fixed deglex order (degree, then descending
lexicographic exponent), an exact linear substitution action of square
matrices on polynomials, and the induced matrix of that action on each
graded piece.  Weighted variable degrees are supported because Veronese
regrading produces generators in mixed degrees.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .domains import CoefficientDomain, Matrix, Scalar

Exponent = tuple[int, ...]


def _default_names(nvars: int) -> tuple[str, ...]:
    if nvars <= 3:
        return ("X", "Y", "Z")[:nvars]
    return tuple(f"X{i + 1}" for i in range(nvars))


@dataclass(frozen=True)
class GradedRing:
    """Polynomial ring with positive integer variable weights."""

    nvars: int
    coeff: CoefficientDomain
    weights: tuple[int, ...] = ()
    var_names: tuple[str, ...] = ()

    def __post_init__(self):
        if self.nvars < 1:
            raise ValueError("need at least one variable")
        if not self.weights:
            object.__setattr__(self, "weights", (1,) * self.nvars)
        if len(self.weights) != self.nvars or any(w < 1 for w in self.weights):
            raise ValueError("weights must be positive, one per variable")
        if not self.var_names:
            object.__setattr__(self, "var_names", _default_names(self.nvars))
        if len(self.var_names) != self.nvars:
            raise ValueError("need one name per variable")

    def degree_of(self, exps: Exponent) -> int:
        return sum(e * w for e, w in zip(exps, self.weights))

    def variable(self, i: int) -> "Polynomial":
        exps = tuple(1 if j == i else 0 for j in range(self.nvars))
        return Polynomial(self, {exps: self.coeff.one})

    def constant(self, c) -> "Polynomial":
        return Polynomial(self, {(0,) * self.nvars: self.coeff.coerce(c)})

    @property
    def zero_poly(self) -> "Polynomial":
        return Polynomial(self, {})

    def __str__(self):
        return f"{self.coeff}[{', '.join(self.var_names)}]"


@dataclass(frozen=True)
class GradedPiece:
    """All monomials of one weighted degree, in deglex order."""

    degree: int
    monomials: tuple[Exponent, ...]

    def index(self, exps: Exponent) -> int:
        return self.monomials.index(exps)

    @property
    def dim(self) -> int:
        return len(self.monomials)


def _monomials_of_degree(weights: tuple[int, ...], d: int) -> list[Exponent]:
    if len(weights) == 1:
        w = weights[0]
        if d % w == 0:
            return [(d // w,)]
        return []
    out = []
    w0 = weights[0]
    for e in range(d // w0, -1, -1):
        for rest in _monomials_of_degree(weights[1:], d - e * w0):
            out.append((e,) + rest)
    return out


@lru_cache(maxsize=None)
def _piece_cached(weights: tuple[int, ...], d: int) -> GradedPiece:
    return GradedPiece(degree=d, monomials=tuple(_monomials_of_degree(weights, d)))


def graded_piece_basis(ring: GradedRing, d: int) -> GradedPiece:
    """Monomial basis of the degree-d piece, descending lex within the degree."""
    if d < 0:
        raise ValueError("degree must be nonnegative")
    return _piece_cached(ring.weights, d)


def series_dimensions(ring: GradedRing, D: int) -> list[int]:
    """Coefficients through degree D of prod_i 1/(1 - t^w_i)."""
    coeffs = [1] + [0] * D
    for w in ring.weights:
        for d in range(w, D + 1):
            coeffs[d] += coeffs[d - w]
    return coeffs


class Polynomial:
    """Exact multivariate polynomial; terms map exponent tuples to coefficients."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: GradedRing, terms: dict[Exponent, Scalar]):
        self.ring = ring
        self.terms = {e: c for e, c in terms.items() if not ring.coeff.is_zero(c)}

    def _sorted_terms(self):
        return sorted(
            self.terms.items(),
            key=lambda item: (-self.ring.degree_of(item[0]), tuple(-e for e in item[0])),
        )

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int | None:
        """Weighted degree, or None for the zero polynomial."""
        if not self.terms:
            return None
        return max(self.ring.degree_of(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {self.ring.degree_of(e) for e in self.terms}
        return len(degs) <= 1

    def __add__(self, other: "Polynomial") -> "Polynomial":
        dom = self.ring.coeff
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = dom.add(out.get(e, dom.zero), c)
        return Polynomial(self.ring, out)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        dom = self.ring.coeff
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = dom.sub(out.get(e, dom.zero), c)
        return Polynomial(self.ring, out)

    def __neg__(self) -> "Polynomial":
        dom = self.ring.coeff
        return Polynomial(self.ring, {e: dom.neg(c) for e, c in self.terms.items()})

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        dom = self.ring.coeff
        out: dict[Exponent, Scalar] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                prod = dom.mul(c1, c2)
                out[e] = dom.add(out.get(e, dom.zero), prod)
        return Polynomial(self.ring, out)

    def scale(self, c) -> "Polynomial":
        dom = self.ring.coeff
        c = dom.coerce(c)
        return Polynomial(self.ring, {e: dom.mul(c, v) for e, v in self.terms.items()})

    def __pow__(self, n: int) -> "Polynomial":
        result = self.ring.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Polynomial)
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.ring, tuple(self._sorted_terms())))

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"

    # -- vector conversions -------------------------------------------------

    def to_vector(self, piece: GradedPiece) -> tuple[Scalar, ...]:
        vec = [self.ring.coeff.zero] * piece.dim
        for e, c in self.terms.items():
            vec[piece.index(e)] = c
        return tuple(vec)


def polynomial_from_vector(ring: GradedRing, piece: GradedPiece, vec) -> Polynomial:
    return Polynomial(
        ring,
        {m: ring.coeff.coerce(c) for m, c in zip(piece.monomials, vec)},
    )


def act(g: Matrix, f: Polynomial) -> Polynomial:
    """Linear substitution X_j -> sum_i g[i][j] X_i applied to f.

    This is a degree-preserving ring homomorphism when all mixed variables
    share a weight; act on a composite gh equals act(g) after act(h).
    """
    ring = f.ring
    dom = ring.coeff
    n = ring.nvars
    if len(g) != n or any(len(row) != n for row in g):
        raise ValueError("matrix size must match the number of variables")
    images = []
    for j in range(n):
        images.append(
            Polynomial(
                ring,
                {
                    tuple(1 if k == i else 0 for k in range(n)): dom.coerce(g[i][j])
                    for i in range(n)
                },
            )
        )
    max_exp = [0] * n
    for e in f.terms:
        for i in range(n):
            max_exp[i] = max(max_exp[i], e[i])
    powers: list[list[Polynomial]] = []
    for j in range(n):
        pj = [ring.constant(1)]
        for _ in range(max_exp[j]):
            pj.append(pj[-1] * images[j])
        powers.append(pj)
    result = ring.zero_poly
    for e, c in f.terms.items():
        term = ring.constant(c)
        for j in range(n):
            if e[j]:
                term = term * powers[j][e[j]]
        result = result + term
    return result


def action_matrix(ring: GradedRing, g: Matrix, d: int) -> Matrix:
    """Matrix of act(g, .) on the deglex basis of the degree-d piece.

    Columns hold the images of basis monomials, so the map is functorial:
    action_matrix(g h, d) = action_matrix(g, d) * action_matrix(h, d).
    """
    piece = graded_piece_basis(ring, d)
    dom = ring.coeff
    cols = []
    for m in piece.monomials:
        img = act(g, Polynomial(ring, {m: dom.one}))
        cols.append(img.to_vector(piece))
    return tuple(
        tuple(cols[j][i] for j in range(piece.dim)) for i in range(piece.dim)
    )


# ---------------------------------------------------------------------------
# text form: "3*X^2*Y - 1/2*Z", variables named per the ring


_TOKEN = re.compile(r"\s*(\^|\*|\+|-|/|[A-Za-z][A-Za-z0-9_]*|\d+)")


def format_polynomial(f: Polynomial) -> str:
    if f.is_zero():
        return "0"
    dom = f.ring.coeff
    names = f.ring.var_names
    parts = []
    for e, c in f._sorted_terms():
        factors = []
        for name, exp in zip(names, e):
            if exp == 1:
                factors.append(name)
            elif exp > 1:
                factors.append(f"{name}^{exp}")
        neg = Fraction(c) < 0
        coeff_str = dom.scalar_str(-c if neg else c)
        if factors and coeff_str == "1":
            body = "*".join(factors)
        elif factors:
            body = "*".join([coeff_str] + factors)
        else:
            body = coeff_str
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts)


def parse_polynomial(ring: GradedRing, text: str) -> Polynomial:
    """Parse coefficient*monomial sums like "3*X^2*Y - 1/2*Z" or "X1^2*X2"."""
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ValueError(f"cannot tokenize polynomial at {text[pos:]!r}")
            break
        tokens.append(m.group(1))
        pos = m.end()
    name_index = {name: i for i, name in enumerate(ring.var_names)}
    dom = ring.coeff
    result = ring.zero_poly
    i = 0
    n = len(tokens)

    def parse_term(i: int) -> tuple[Polynomial, int]:
        coeff = Fraction(1)
        exps = [0] * ring.nvars
        expect_factor = True
        while i < n and tokens[i] not in ("+", "-"):
            tok = tokens[i]
            if tok == "*":
                i += 1
                continue
            if tok.isdigit():
                num = Fraction(int(tok))
                i += 1
                if i < n and tokens[i] == "/":
                    if i + 1 >= n or not tokens[i + 1].isdigit():
                        raise ValueError("malformed fraction coefficient")
                    num = num / int(tokens[i + 1])
                    i += 2
                coeff *= num
            elif tok in name_index:
                j = name_index[tok]
                i += 1
                if i < n and tokens[i] == "^":
                    if i + 1 >= n or not tokens[i + 1].isdigit():
                        raise ValueError(f"malformed power on {tok}")
                    exps[j] += int(tokens[i + 1])
                    i += 2
                else:
                    exps[j] += 1
            else:
                raise ValueError(f"unknown symbol {tok!r} in polynomial")
            expect_factor = False
        if expect_factor:
            raise ValueError("empty term in polynomial")
        return Polynomial(ring, {tuple(exps): dom.coerce(coeff)}), i

    sign = 1
    while i < n:
        if tokens[i] == "+":
            sign = 1
            i += 1
            continue
        if tokens[i] == "-":
            sign = -sign
            i += 1
            continue
        term, i = parse_term(i)
        result = result + (term if sign == 1 else -term)
        sign = 1
    return result
