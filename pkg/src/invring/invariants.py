"""Degree-truncated invariant rings and Veronese subrings.

Per-degree bases of the fixed subspace (R_d)^G are computed as the kernel of
the stacked generator constraints; over Z that kernel is automatically a
saturated lattice, so the basis generates the invariants exactly rather than
a finite-index sublattice.  On top of the bases live the Reynolds and
transfer maps, Hilbert functions, standard-gradedness certificates, and
minimal generator extraction.

Span bookkeeping is domain-aware: lattices in Hermite form over Z, saturated
lattices as subspace representatives over Q, reduced echelon rows over F_p.
Z localized at p is handled through its integer representatives; that is
exact for kernels, and span comparisons use p-local membership.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .domains import CoefficientDomain, Matrix
from .groups import MatrixGroup, coset_representatives
from .linalg import (
    IntegerMatrix,
    integer_kernel_basis,
    kernel_mod_p,
    lattice_canonical,
    lattice_complement_generators,
    lattice_solve,
    member_mod_p,
    rref_mod_p,
    saturate_lattice,
)
from .poly import (
    GradedRing,
    Polynomial,
    act,
    action_matrix,
    graded_piece_basis,
    polynomial_from_vector,
)

Rows = tuple[tuple, ...]


class NotInvertible(Exception):
    """The group order is not a unit in the coefficient domain."""


class NotHInvariant(Exception):
    """The transfer argument is not fixed by the subgroup."""


class IndexNotInvertible(Exception):
    """The subgroup index is not a unit in the coefficient domain."""


# ---------------------------------------------------------------------------
# domain-aware span arithmetic


def _integerize_rows(domain: CoefficientDomain, vectors) -> list[list[int]]:
    out = []
    for v in vectors:
        fr = [Fraction(x) for x in v]
        den = 1
        for x in fr:
            den = lcm(den, x.denominator)
        if domain.tag == "Z" and den != 1:
            raise ValueError("non-integer vector over Z")
        out.append([int(x * den) for x in fr])
    return out


def canonical_span(domain: CoefficientDomain, vectors, ncols: int) -> Rows:
    """Canonical row set spanning the given vectors over the domain.

    Over Z the lattice is kept exact (no saturation); over Q the saturated
    integer representative stands for the subspace; over F_p rows are RREF.
    """
    vectors = [v for v in vectors if any(not domain.is_zero(x) for x in v)]
    if not vectors:
        return ()
    if domain.tag == "Fp":
        rows, _ = rref_mod_p([[int(x) for x in v] for v in vectors], ncols, domain.p)
        return rows
    int_rows = _integerize_rows(domain, vectors)
    if domain.tag == "Q":
        return saturate_lattice(int_rows, ncols)
    return lattice_canonical(int_rows, ncols)


def span_member(domain: CoefficientDomain, rows: Rows, vector) -> bool:
    if domain.tag == "Fp":
        return member_mod_p(rows, [int(x) for x in vector], domain.p)
    if not rows:
        return all(domain.is_zero(x) for x in vector)
    coords = lattice_solve(rows, [Fraction(x) for x in vector])
    if coords is None:
        return False
    if domain.tag == "Q":
        return True
    if domain.tag == "Zlocal":
        return all(c.denominator % domain.p != 0 for c in coords)
    return all(c.denominator == 1 for c in coords)


def span_equal(domain: CoefficientDomain, a: Rows, b: Rows) -> bool:
    if domain.tag in ("Z", "Q", "Fp"):
        return a == b  # both sides canonical
    return (
        len(a) == len(b)
        and all(span_member(domain, b, v) for v in a)
        and all(span_member(domain, a, v) for v in b)
    )


def span_complement(domain: CoefficientDomain, sub: Rows, sup: Rows) -> list[tuple]:
    """Vectors extending sub to generate sup, minimal in count."""
    if domain.tag in ("Z", "Zlocal"):
        return lattice_complement_generators(list(sub), list(sup))
    picked: list[tuple] = []
    current = sub
    ncols = len(sup[0]) if sup else 0
    for v in sup:
        if not span_member(domain, current, v):
            picked.append(tuple(v))
            current = canonical_span(domain, list(current) + [list(v)], ncols)
    return picked


# ---------------------------------------------------------------------------
# invariant bases


def invariant_basis(G: MatrixGroup, ring: GradedRing, d: int) -> Rows:
    """Canonical basis of the degree-d invariants (R_d)^G.

    Returned rows are coefficient vectors over the deglex monomial basis.
    Over Z and Z_(p) the rows span the saturated invariant lattice.
    """
    piece = graded_piece_basis(ring, d)
    n = piece.dim
    if n == 0:
        return ()
    domain = ring.coeff
    gens = G.generators if G.generators else G.elements
    constraint_rows: list[list] = []
    for g in gens:
        a = action_matrix(ring, g, d)
        for i in range(n):
            row = [
                domain.sub(a[i][j], domain.one if i == j else domain.zero)
                for j in range(n)
            ]
            if any(not domain.is_zero(x) for x in row):
                constraint_rows.append(row)
    if not constraint_rows:
        if domain.tag == "Fp":
            rows, _ = rref_mod_p(
                [[int(i == j) for j in range(n)] for i in range(n)], n, domain.p
            )
            return rows
        return tuple(IntegerMatrix.identity(n).data)
    if domain.tag == "Fp":
        return kernel_mod_p(
            [[int(x) for x in row] for row in constraint_rows], n, domain.p
        )
    int_rows = _integerize_rows(domain, constraint_rows)
    kernel = integer_kernel_basis(IntegerMatrix(int_rows, cols=n))
    return kernel.data


def trace_average_invariant_count(G: MatrixGroup, ring: GradedRing, d: int) -> Fraction:
    """Average of traces of the degree-d action over the group.

    For characteristic zero this counts dim (R_d)^G and serves as an
    independent cross-check on the kernel computation.
    """
    if ring.coeff.tag == "Fp":
        raise ValueError("trace averaging needs characteristic zero")
    total = Fraction(0)
    for g in G.elements:
        a = action_matrix(ring, g, d)
        total += sum((Fraction(a[i][i]) for i in range(len(a))), Fraction(0))
    return total / G.order


def reynolds(f: Polynomial, G: MatrixGroup) -> Polynomial:
    """Group averaging projector (1/|G|) sum_g g.f onto the invariants."""
    domain = f.ring.coeff
    try:
        order = domain.coerce(G.order)
    except ValueError:
        raise NotInvertible(f"|G| = {G.order} is not a unit in {domain}") from None
    if not domain.is_unit(order):
        raise NotInvertible(f"|G| = {G.order} is not a unit in {domain}")
    total = f.ring.zero_poly
    for g in G.elements:
        total = total + act(g, f)
    return total.scale(domain.inv(order))


def transfer(f: Polynomial, G: MatrixGroup, H: MatrixGroup) -> Polynomial:
    """Averaged coset sum sending H-invariants to G-invariants.

    Splits the inclusion of the G-invariants into the H-invariants whenever
    the index [G:H] is a unit; raises if f is not H-invariant or the index
    is not invertible.
    """
    h_gens = H.generators if H.generators else H.elements
    for h in h_gens:
        if act(h, f) != f:
            raise NotHInvariant("polynomial is not fixed by the subgroup")
    reps = coset_representatives(G, H)
    index = len(reps)
    domain = f.ring.coeff
    try:
        index_c = domain.coerce(index)
    except ValueError:
        raise IndexNotInvertible(
            f"[G:H] = {index} is not a unit in {domain}"
        ) from None
    if not domain.is_unit(index_c):
        raise IndexNotInvertible(f"[G:H] = {index} is not a unit in {domain}")
    total = f.ring.zero_poly
    for r in reps:
        total = total + act(r, f)
    return total.scale(domain.inv(index_c))


# ---------------------------------------------------------------------------
# truncated subalgebras


@dataclass(frozen=True)
class TruncatedSubalgebra:
    """An invariant or Veronese subring known through degree D.

    bases[d] holds the canonical basis of the degree-d piece as vectors over
    the monomial basis of the ambient ring in degree d * regrade.
    """

    ambient: GradedRing
    group: MatrixGroup
    D: int
    regrade: int
    bases: tuple[Rows, ...]

    @property
    def domain(self) -> CoefficientDomain:
        return self.ambient.coeff

    def ambient_degree(self, d: int) -> int:
        return d * self.regrade

    def piece_dim(self, d: int) -> int:
        return graded_piece_basis(self.ambient, self.ambient_degree(d)).dim

    def piece_polynomials(self, d: int) -> list[Polynomial]:
        piece = graded_piece_basis(self.ambient, self.ambient_degree(d))
        return [polynomial_from_vector(self.ambient, piece, row) for row in self.bases[d]]

    def piece_vector(self, f: Polynomial, d: int):
        piece = graded_piece_basis(self.ambient, self.ambient_degree(d))
        return f.to_vector(piece)


@dataclass(frozen=True)
class HilbertFunction:
    values: tuple[int, ...]

    def __getitem__(self, d: int) -> int:
        return self.values[d]

    def __len__(self) -> int:
        return len(self.values)


def truncated_invariant_ring(
    G: MatrixGroup, ring: GradedRing, D: int, workers: int | None = None
) -> TruncatedSubalgebra:
    """Invariant ring R^G with all piece bases through degree D.

    Per-degree computations are independent; pass workers > 1 to evaluate
    them concurrently (results are merged by degree, so output is identical).
    """
    if D < 1:
        raise ValueError("truncation degree must be at least 1")
    degrees = list(range(D + 1))
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            computed = list(pool.map(lambda d: invariant_basis(G, ring, d), degrees))
    else:
        computed = [invariant_basis(G, ring, d) for d in degrees]
    return TruncatedSubalgebra(
        ambient=ring, group=G, D=D, regrade=1, bases=tuple(computed)
    )


def hilbert_function(S: TruncatedSubalgebra) -> HilbertFunction:
    return HilbertFunction(values=tuple(len(S.bases[d]) for d in range(S.D + 1)))


def veronese(S: TruncatedSubalgebra, m: int) -> TruncatedSubalgebra:
    """Subring of pieces in degrees divisible by m, regraded by 1/m."""
    if m < 1:
        raise ValueError("Veronese index must be positive")
    if m > S.D:
        raise ValueError("Veronese index exceeds the truncation degree")
    new_d = S.D // m
    return TruncatedSubalgebra(
        ambient=S.ambient,
        group=S.group,
        D=new_d,
        regrade=S.regrade * m,
        bases=tuple(S.bases[d * m] for d in range(new_d + 1)),
    )


@dataclass(frozen=True)
class StandardGradedReport:
    standard: bool
    first_failing_degree: int | None
    checked_to: int


def is_standard_graded_up_to(S: TruncatedSubalgebra) -> StandardGradedReport:
    """Check that products of the degree-1 basis span every piece through D.

    Over Z the comparison is equality of exact lattices (not merely finite
    index): the multiplicative span of the degree-1 piece must reproduce the
    saturated basis lattice degree by degree.
    """
    domain = S.domain
    degree_one = S.piece_polynomials(1)
    span_prev = S.bases[1]
    for d in range(2, S.D + 1):
        dim_d = S.piece_dim(d)
        prev_polys = [
            polynomial_from_vector(
                S.ambient, graded_piece_basis(S.ambient, S.ambient_degree(d - 1)), row
            )
            for row in span_prev
        ]
        piece = graded_piece_basis(S.ambient, S.ambient_degree(d))
        products = [(u * v).to_vector(piece) for u in degree_one for v in prev_polys]
        span_d = canonical_span(domain, products, dim_d)
        if not span_equal(domain, span_d, S.bases[d]):
            return StandardGradedReport(False, d, S.D)
        span_prev = span_d
    return StandardGradedReport(True, None, S.D)


def minimal_generators_up_to(S: TruncatedSubalgebra) -> list[tuple[int, Polynomial]]:
    """Algebra generators degree by degree through D.

    In each degree the span of products of lower-degree generators is
    extended to the full invariant basis by a minimal set of new vectors
    (Smith-form quotient generators over Z, greedy rank extension over a
    field).  An empty tail certifies generation below D.
    """
    domain = S.domain
    gens: list[tuple[int, Polynomial]] = []
    alg: dict[int, Rows] = {}
    for d in range(1, S.D + 1):
        dim_d = S.piece_dim(d)
        piece = graded_piece_basis(S.ambient, S.ambient_degree(d))
        products = []
        for e in range(1, d // 2 + 1):
            left, right = alg.get(e, ()), alg.get(d - e, ())
            if not left or not right:
                continue
            left_polys = [
                polynomial_from_vector(
                    S.ambient, graded_piece_basis(S.ambient, S.ambient_degree(e)), row
                )
                for row in left
            ]
            right_polys = [
                polynomial_from_vector(
                    S.ambient,
                    graded_piece_basis(S.ambient, S.ambient_degree(d - e)),
                    row,
                )
                for row in right
            ]
            for u in left_polys:
                for v in right_polys:
                    products.append((u * v).to_vector(piece))
        product_span = canonical_span(domain, products, dim_d)
        new_vecs = span_complement(domain, product_span, S.bases[d])
        for vec in new_vecs:
            gens.append((d, polynomial_from_vector(S.ambient, piece, vec)))
        alg[d] = canonical_span(
            domain, [list(r) for r in product_span] + [list(v) for v in new_vecs], dim_d
        )
        if not span_equal(domain, alg[d], S.bases[d]):
            raise RuntimeError(f"generator completion failed in degree {d}")
    return gens
