"""Exact linear algebra over Q and Z2-graded vector spaces.

Scalars are `fractions.Fraction` everywhere; the library contains no
floating point.  All row reductions select the leftmost pivot, so
particular solutions, kernel bases, complements and quotients are
canonical: identical inputs give bit-identical outputs.

A vector is a tuple of Fractions, a matrix is a tuple of row tuples.
Matrix entry (i, j) is the coefficient of codomain basis element i in
the image of domain basis element j.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Scalar = Fraction

EVEN = 0
ODD = 1

Vector = tuple[Fraction, ...]
Matrix = tuple[Vector, ...]


def scalar(x) -> Fraction:
    """Coerce ints, Fractions and 'p/q' strings to an exact rational."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


def vec(entries: Iterable) -> Vector:
    return tuple(scalar(x) for x in entries)


def zero_vec(n: int) -> Vector:
    return (Fraction(0),) * n


def unit_vec(n: int, i: int) -> Vector:
    return tuple(Fraction(1 if j == i else 0) for j in range(n))


def vec_add(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v, strict=True))


def vec_sub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v, strict=True))


def vec_scale(c: Fraction, v: Vector) -> Vector:
    return tuple(c * a for a in v)


def is_zero_vec(v: Vector) -> bool:
    return all(a == 0 for a in v)


def mat(rows: Iterable[Iterable]) -> Matrix:
    m = tuple(vec(r) for r in rows)
    if m and any(len(r) != len(m[0]) for r in m):
        raise ValueError("ragged matrix")
    return m


def zeros(nrows: int, ncols: int) -> Matrix:
    return tuple(zero_vec(ncols) for _ in range(nrows))


def identity(n: int) -> Matrix:
    return tuple(unit_vec(n, i) for i in range(n))


def mat_vec(A: Matrix, v: Vector) -> Vector:
    return tuple(sum((row[j] * v[j] for j in range(len(v))), Fraction(0)) for row in A)


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    if A and B and len(A[0]) != len(B):
        raise ValueError("dimension mismatch in matrix product")
    ncols = len(B[0]) if B else 0
    return tuple(
        tuple(sum((A[i][k] * B[k][j] for k in range(len(B))), Fraction(0)) for j in range(ncols))
        for i in range(len(A))
    )


def mat_add(A: Matrix, B: Matrix) -> Matrix:
    return tuple(vec_add(r, s) for r, s in zip(A, B, strict=True))


def mat_sub(A: Matrix, B: Matrix) -> Matrix:
    return tuple(vec_sub(r, s) for r, s in zip(A, B, strict=True))


def mat_scale(c: Fraction, A: Matrix) -> Matrix:
    return tuple(vec_scale(c, r) for r in A)


def rref(rows: Sequence[Vector]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form with leftmost-pivot selection.

    Returns (reduced nonzero rows, pivot column indices).  This routine
    fixes every canonical choice in the library: particular solutions,
    kernel bases, complements and cohomology representatives all come
    from it.
    """
    work = [list(r) for r in rows]
    nrows = len(work)
    ncols = len(work[0]) if work else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, nrows):
            if work[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        work[r], work[pr] = work[pr], work[r]
        pv = work[r][c]
        if pv != 1:
            work[r] = [x / pv for x in work[r]]
        for i in range(nrows):
            if i != r and work[i][c] != 0:
                f = work[i][c]
                work[i] = [x - f * y for x, y in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return work[:r], pivots


def rank(A: Sequence[Vector]) -> int:
    return len(rref(A)[1])


def solve_linear(A, rhs: Sequence, ncols: int | None = None) -> Vector | None:
    """One exact solution of A x = rhs, or None if rhs is not in the image.

    The canonical particular solution: after leftmost-pivot reduction all
    free coordinates are set to 0.  `ncols` is needed only when A has no
    rows (every x solves then; the canonical one is 0).
    """
    A = _as_matrix(A)
    b = vec(rhs)
    if len(b) != len(A):
        raise ValueError(f"rhs length {len(b)} != row count {len(A)}")
    if ncols is None:
        ncols = len(A[0]) if A else 0
    elif A and len(A[0]) != ncols:
        raise ValueError("ncols does not match the matrix width")
    aug = [list(row) + [b[i]] for i, row in enumerate(A)]
    red, pivots = rref(aug)
    sol = [Fraction(0)] * ncols
    for row, p in zip(red, pivots):
        if p == ncols:  # pivot in the rhs column: inconsistent
            return None
        sol[p] = row[-1]
    return tuple(sol)


def kernel_basis(A, ncols: int | None = None) -> list[Vector]:
    """Exact basis of ker A, one vector per free column of the RREF.

    `ncols` must be passed when A has no rows (the kernel is then the
    whole domain and the width cannot be inferred).
    """
    A = _as_matrix(A)
    if ncols is None:
        ncols = len(A[0]) if A else 0
    elif A and len(A[0]) != ncols:
        raise ValueError("ncols does not match the matrix width")
    red, pivots = rref(A)
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(tuple(v))
    return basis


def image_basis(A) -> list[Vector]:
    """Canonical basis of the column span: RREF of the transposed matrix."""
    A = _as_matrix(A)
    cols = list(zip(*A)) if A else []
    red, _ = rref([tuple(c) for c in cols])
    return [tuple(r) for r in red]


def complement_basis(vectors: Sequence[Sequence], ambient_dim: int) -> list[Vector]:
    """Standard basis vectors at the non-pivot positions of span(vectors).

    The input vectors must be linearly independent.
    """
    rows = [vec(v) for v in vectors]
    for r in rows:
        if len(r) != ambient_dim:
            raise ValueError("vector length != ambient dimension")
    red, pivots = rref(rows)
    if len(pivots) != len(rows):
        raise ValueError("dependent input vectors")
    pivset = set(pivots)
    return [unit_vec(ambient_dim, f) for f in range(ambient_dim) if f not in pivset]


class IncrementalSpan:
    """Row span maintained by incremental elimination with leftmost pivots."""

    def __init__(self, rows: Iterable[Sequence] = ()):  # noqa: B008
        self._rows: list[tuple[int, list[Fraction]]] = []  # (pivot col, row)
        for r in rows:
            self.add(r)

    def reduce(self, v: Sequence) -> list[Fraction]:
        w = [scalar(x) for x in v]
        for p, row in self._rows:
            if w[p] != 0:
                f = w[p]
                w = [a - f * b for a, b in zip(w, row)]
        return w

    def contains(self, v: Sequence) -> bool:
        return all(a == 0 for a in self.reduce(v))

    def add(self, v: Sequence) -> bool:
        """Add a vector; True if it enlarged the span."""
        w = self.reduce(v)
        for p, a in enumerate(w):
            if a != 0:
                w = [x / a for x in w]
                self._rows.append((p, w))
                self._rows.sort(key=lambda t: t[0])
                return True
        return False

    @property
    def rank(self) -> int:
        return len(self._rows)


def extend_to_basis(base: Sequence[Vector], candidates: Sequence[Vector]) -> list[int]:
    """Indices of the candidates that extend span(base) to a larger span.

    Greedy left to right; deterministic.  Used for inner-first derivation
    bases and for cohomology representatives.
    """
    span = IncrementalSpan(base)
    return [idx for idx, cand in enumerate(candidates) if span.add(cand)]


def _as_matrix(A) -> Matrix:
    if isinstance(A, GradedLinearMap):
        return A.matrix
    return mat(A)


@dataclass(frozen=True)
class SuperVectorSpace:
    """An ordered basis with Z2 parities."""

    names: tuple[str, ...]
    parities: tuple[int, ...]

    def __post_init__(self):
        if len(self.names) != len(self.parities):
            raise ValueError("names and parities differ in length")
        if len(set(self.names)) != len(self.names):
            raise ValueError("basis names must be distinct")
        if any(p not in (0, 1) for p in self.parities):
            raise ValueError("parities must be 0 or 1")

    @property
    def dim(self) -> int:
        return len(self.names)

    @property
    def dim_even(self) -> int:
        return sum(1 for p in self.parities if p == EVEN)

    @property
    def dim_odd(self) -> int:
        return sum(1 for p in self.parities if p == ODD)

    def parity(self, i: int) -> int:
        return self.parities[i]

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"no basis element named {name!r}") from None

    def vector_parity(self, v: Vector) -> int | None:
        """Parity of a homogeneous vector; None if mixed.  Zero counts as even."""
        ps = {self.parities[i] for i, a in enumerate(v) if a != 0}
        if not ps:
            return EVEN
        if len(ps) > 1:
            return None
        return ps.pop()

    def __str__(self):
        return f"({self.dim_even}|{self.dim_odd})[{', '.join(self.names)}]"


def make_space(names: Sequence[str], parities: Sequence[int]) -> SuperVectorSpace:
    return SuperVectorSpace(tuple(names), tuple(int(p) for p in parities))


@dataclass(frozen=True)
class GradedLinearMap:
    """A rational matrix between super spaces, homogeneous of a fixed degree.

    Entry (i, j) is the coefficient of codomain basis i in the image of
    domain basis j; entries are forced to 0 unless
    parity(codomain_i) = parity(domain_j) + degree (mod 2).
    """

    domain: SuperVectorSpace
    codomain: SuperVectorSpace
    degree: int
    matrix: Matrix

    def __post_init__(self):
        if self.degree not in (0, 1):
            raise ValueError("degree must be 0 or 1")
        if len(self.matrix) != self.codomain.dim:
            raise ValueError("row count != codomain dimension")
        for row in self.matrix:
            if len(row) != self.domain.dim:
                raise ValueError("column count != domain dimension")
        for i, row in enumerate(self.matrix):
            for j, a in enumerate(row):
                if a != 0 and self.codomain.parities[i] != (self.domain.parities[j] + self.degree) % 2:
                    raise ValueError(
                        f"entry ({i},{j}) violates homogeneity of degree {self.degree}"
                    )

    @staticmethod
    def from_rows(domain, codomain, degree, rows) -> "GradedLinearMap":
        return GradedLinearMap(domain, codomain, degree, mat(rows))

    @staticmethod
    def zero(domain, codomain, degree=0) -> "GradedLinearMap":
        return GradedLinearMap(domain, codomain, degree, zeros(codomain.dim, domain.dim))

    @staticmethod
    def identity_map(space) -> "GradedLinearMap":
        return GradedLinearMap(space, space, 0, identity(space.dim))

    def apply(self, v: Sequence) -> Vector:
        return mat_vec(self.matrix, vec(v))

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.matrix)

    def compose(self, other: "GradedLinearMap") -> "GradedLinearMap":
        """self after other."""
        if other.codomain != self.domain:
            raise ValueError("composition: domains do not match")
        return GradedLinearMap(
            other.domain, self.codomain, (self.degree + other.degree) % 2,
            mat_mul(self.matrix, other.matrix),
        )

    def __add__(self, other: "GradedLinearMap") -> "GradedLinearMap":
        if (self.domain, self.codomain, self.degree) != (other.domain, other.codomain, other.degree):
            raise ValueError("maps not addable")
        return GradedLinearMap(self.domain, self.codomain, self.degree,
                               mat_add(self.matrix, other.matrix))

    def __sub__(self, other: "GradedLinearMap") -> "GradedLinearMap":
        if (self.domain, self.codomain, self.degree) != (other.domain, other.codomain, other.degree):
            raise ValueError("maps not subtractable")
        return GradedLinearMap(self.domain, self.codomain, self.degree,
                               mat_sub(self.matrix, other.matrix))

    def scale(self, c) -> "GradedLinearMap":
        return GradedLinearMap(self.domain, self.codomain, self.degree,
                               mat_scale(scalar(c), self.matrix))

    def is_zero(self) -> bool:
        return all(is_zero_vec(r) for r in self.matrix)

    def flat(self) -> Vector:
        """Row-major flattening; the coordinate convention for spaces of maps."""
        return tuple(a for row in self.matrix for a in row)


def graded_commutator(a: GradedLinearMap, b: GradedLinearMap) -> GradedLinearMap:
    """[a, b] = a b - (-1)^{deg a deg b} b a on a common space."""
    ab = a.compose(b)
    ba = b.compose(a)
    if a.degree * b.degree % 2:
        return ab + ba
    return ab - ba


def quotient_space(
    ambient: SuperVectorSpace, sub_basis: Sequence[Sequence]
) -> tuple[SuperVectorSpace, GradedLinearMap]:
    """Quotient of a super space by a graded subspace.

    The quotient basis is the canonical complement (standard basis vectors
    at non-pivot positions) with inherited names and parities; the returned
    projection is degree 0, surjective, with kernel span(sub_basis).
    """
    sub = [vec(v) for v in sub_basis]
    for v in sub:
        if ambient.vector_parity(v) is None:
            raise ValueError("subspace vector is not parity-homogeneous")
    reps = complement_basis(sub, ambient.dim) if sub else [unit_vec(ambient.dim, i) for i in range(ambient.dim)]
    rep_idx = [next(i for i, a in enumerate(r) if a != 0) for r in reps]
    qspace = SuperVectorSpace(
        tuple(ambient.names[i] for i in rep_idx),
        tuple(ambient.parities[i] for i in rep_idx),
    )
    # Express each ambient basis vector modulo the subspace in the
    # representatives: solve [sub | reps] x = e_j and keep the rep part.
    cols = sub + reps
    M = tuple(tuple(cols[k][i] for k in range(len(cols))) for i in range(ambient.dim))
    rows = []
    for j in range(ambient.dim):
        x = solve_linear(M, unit_vec(ambient.dim, j))
        if x is None:
            raise ValueError("subspace plus complement does not span the ambient space")
        rows.append(x[len(sub):])
    proj_matrix = tuple(tuple(rows[j][q] for j in range(ambient.dim)) for q in range(qspace.dim))
    proj = GradedLinearMap(ambient, qspace, 0, proj_matrix)
    return qspace, proj
