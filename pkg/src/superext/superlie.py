"""Super Lie algebras given by structure constants.

An algebra is an ordered graded basis plus the bracket table
c[i][j] = [e_i, e_j] as a coordinate vector.  Everything downstream
(validation, ad, center, derivations, out = der/ad, homomorphism checks)
is exact linear algebra on that table.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .gvs import (
    GradedLinearMap,
    IncrementalSpan,
    SuperVectorSpace,
    Vector,
    graded_commutator,
    is_zero_vec,
    kernel_basis,
    quotient_space,
    rref,
    scalar,
    solve_linear,
    unit_vec,
    vec,
    vec_add,
    vec_scale,
    zero_vec,
)


@dataclass(frozen=True)
class SuperLieAlgebra:
    """A super vector space with structure constants of a bilinear bracket.

    The constructor only checks shapes; use `validate_algebra` for the
    degree-0, antisymmetry and Jacobi conditions (invalid tables must be
    constructible so they can be reported on).
    """

    space: SuperVectorSpace
    brackets: tuple[tuple[Vector, ...], ...]

    def __post_init__(self):
        n = self.space.dim
        if len(self.brackets) != n or any(len(row) != n for row in self.brackets):
            raise ValueError("bracket table must be dim x dim")
        for row in self.brackets:
            for v in row:
                if len(v) != n:
                    raise ValueError("bracket value has wrong length")

    @property
    def dim(self) -> int:
        return self.space.dim

    def bracket_basis(self, i: int, j: int) -> Vector:
        return self.brackets[i][j]

    def bracket_vec(self, u: Sequence, v: Sequence) -> Vector:
        u, v = vec(u), vec(v)
        out = zero_vec(self.dim)
        for i, a in enumerate(u):
            if a == 0:
                continue
            for j, b in enumerate(v):
                if b == 0:
                    continue
                out = vec_add(out, vec_scale(a * b, self.brackets[i][j]))
        return out

    def is_abelian(self) -> bool:
        return all(is_zero_vec(v) for row in self.brackets for v in row)


def make_algebra(space: SuperVectorSpace, table: dict[tuple[int, int], Sequence]) -> SuperLieAlgebra:
    """Algebra from a sparse {(i, j): vector} table; unlisted entries are 0."""
    n = space.dim
    rows = [[zero_vec(n) for _ in range(n)] for _ in range(n)]
    for (i, j), v in table.items():
        rows[i][j] = vec(v)
    return SuperLieAlgebra(space, tuple(tuple(r) for r in rows))


def algebra_from_table(
    names: Sequence[str],
    parities: Sequence[int],
    table: dict[tuple[str, str], dict[str, object]],
) -> SuperLieAlgebra:
    """Algebra from named brackets, e.g. {("Q", "Q"): {"H": 2}}.

    Unlisted brackets are zero.  A bracket listed for (i, j) fills (j, i)
    by graded antisymmetry; listing both is an error unless consistent.
    """
    space = SuperVectorSpace(tuple(names), tuple(int(p) for p in parities))
    n = space.dim
    given: dict[tuple[int, int], Vector] = {}
    for (ln, rn), val in table.items():
        i, j = space.index(ln), space.index(rn)
        if (i, j) in given:
            raise ValueError(f"bracket [{ln},{rn}] listed twice")
        v = zero_vec(n)
        for bn, c in val.items():
            v = vec_add(v, vec_scale(scalar(c), unit_vec(n, space.index(bn))))
        given[(i, j)] = v
    rows = [[zero_vec(n) for _ in range(n)] for _ in range(n)]
    for (i, j), v in given.items():
        rows[i][j] = v
    for (i, j), v in given.items():
        if i == j:
            continue
        sign = -1 if (space.parities[i] * space.parities[j]) % 2 == 0 else 1
        mirrored = vec_scale(Fraction(sign), v)
        if (j, i) in given:
            if given[(j, i)] != mirrored:
                raise ValueError(
                    f"brackets [{names[i]},{names[j]}] and [{names[j]},{names[i]}] "
                    "conflict with graded antisymmetry"
                )
        else:
            rows[j][i] = mirrored
    return SuperLieAlgebra(space, tuple(tuple(r) for r in rows))


def abelian_algebra(names: Sequence[str], parities: Sequence[int]) -> SuperLieAlgebra:
    return make_algebra(SuperVectorSpace(tuple(names), tuple(parities)), {})


def direct_sum(a: SuperLieAlgebra, b: SuperLieAlgebra, suffixes=(".1", ".2")) -> SuperLieAlgebra:
    """Direct sum with the basis of `a` first; names suffixed only on clash."""
    names_a, names_b = list(a.space.names), list(b.space.names)
    if set(names_a) & set(names_b):
        names_a = [n + suffixes[0] for n in names_a]
        names_b = [n + suffixes[1] for n in names_b]
    space = SuperVectorSpace(tuple(names_a + names_b), a.space.parities + b.space.parities)
    na, n = a.dim, a.dim + b.dim
    table: dict[tuple[int, int], Vector] = {}
    for i in range(na):
        for j in range(na):
            v = a.brackets[i][j]
            if not is_zero_vec(v):
                table[(i, j)] = v + zero_vec(n - na)
    for i in range(b.dim):
        for j in range(b.dim):
            v = b.brackets[i][j]
            if not is_zero_vec(v):
                table[(na + i, na + j)] = zero_vec(na) + v
    return make_algebra(space, table)


@dataclass(frozen=True)
class ValidationReport:
    degree_zero: bool
    antisymmetry: bool
    jacobi: bool
    failures: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return self.degree_zero and self.antisymmetry and self.jacobi


def validate_algebra(alg: SuperLieAlgebra) -> ValidationReport:
    """Check degree 0, graded antisymmetry, and the graded Jacobi identity.

    Jacobi is checked on ordered triples i <= j <= k only (with repeats);
    once antisymmetry holds the remaining triples follow from it.
    """
    sp = alg.space
    n = alg.dim
    fails: list[str] = []

    deg_ok = True
    for i in range(n):
        for j in range(n):
            want = (sp.parities[i] + sp.parities[j]) % 2
            for k, c in enumerate(alg.brackets[i][j]):
                if c != 0 and sp.parities[k] != want:
                    deg_ok = False
                    fails.append(
                        f"degree: [{sp.names[i]},{sp.names[j]}] has parity-{sp.parities[k]} "
                        f"component {sp.names[k]} but should be parity {want}"
                    )

    anti_ok = True
    for i in range(n):
        for j in range(i, n):
            sign = Fraction(-1 if (sp.parities[i] * sp.parities[j]) % 2 == 0 else 1)
            lhs = alg.brackets[j][i]
            rhs = vec_scale(sign, alg.brackets[i][j])
            if lhs != rhs:
                anti_ok = False
                fails.append(f"antisymmetry: [{sp.names[j]},{sp.names[i]}] != "
                             f"{'+' if sign > 0 else '-'}[{sp.names[i]},{sp.names[j]}]")

    jac_ok = True
    for i in range(n):
        for j in range(i, n):
            for k in range(j, n):
                res = zero_vec(n)
                for (a, b, c) in ((i, j, k), (j, k, i), (k, i, j)):
                    s = Fraction(-1 if (sp.parities[a] * sp.parities[c]) % 2 else 1)
                    inner = alg.brackets[b][c]
                    term = alg.bracket_vec(unit_vec(n, a), inner)
                    res = vec_add(res, vec_scale(s, term))
                if not is_zero_vec(res):
                    jac_ok = False
                    res_str = " + ".join(
                        f"{c}*{sp.names[m]}" for m, c in enumerate(res) if c != 0
                    )
                    fails.append(
                        f"jacobi: residual on ({sp.names[i]},{sp.names[j]},{sp.names[k]}) "
                        f"= {res_str}"
                    )

    return ValidationReport(deg_ok, anti_ok, jac_ok, tuple(fails))


def ad(alg: SuperLieAlgebra, x: Sequence, degree: int | None = None) -> GradedLinearMap:
    """ad_X: Y -> [X, Y]; degree = parity of the homogeneous element X.

    For the zero vector the degree is ambiguous; pass it explicitly when a
    particular homogeneity slot is required.
    """
    x = vec(x)
    p = alg.space.vector_parity(x)
    if p is None:
        raise ValueError("ad requires a parity-homogeneous element")
    if degree is not None:
        if not is_zero_vec(x) and degree != p:
            raise ValueError(f"element has parity {p}, not {degree}")
        p = degree
    cols = [alg.bracket_vec(x, unit_vec(alg.dim, j)) for j in range(alg.dim)]
    matrix = tuple(tuple(cols[j][i] for j in range(alg.dim)) for i in range(alg.dim))
    return GradedLinearMap(alg.space, alg.space, p, matrix)


def center(alg: SuperLieAlgebra) -> list[Vector]:
    """Basis of the graded center {Z : [Z, h] = 0}, both parities included.

    Computed as the joint kernel of all ad_{e_i}; each basis vector is
    parity-homogeneous because the stacked system never couples parities.
    """
    n = alg.dim
    if n == 0:
        return []
    rows = []
    for i in range(n):
        m = ad(alg, unit_vec(n, i)).matrix
        rows.extend(m)
    return kernel_basis(rows)


def is_derivation(alg: SuperLieAlgebra, d: GradedLinearMap) -> bool:
    """Graded Leibniz check D[X,Y] = [DX,Y] + (-1)^{deg D * x}[X,DY] on all pairs."""
    n = alg.dim
    for a in range(n):
        s = Fraction(-1 if (d.degree * alg.space.parities[a]) % 2 else 1)
        for b in range(n):
            lhs = d.apply(alg.brackets[a][b])
            rhs = vec_add(
                alg.bracket_vec(d.column(a), unit_vec(n, b)),
                vec_scale(s, alg.bracket_vec(unit_vec(n, a), d.column(b))),
            )
            if lhs != rhs:
                return False
    return True


@dataclass(frozen=True)
class DerivationSpace:
    """Basis of der(h), ordered inner derivations first, then a complement.

    `inner_preimages[k]` is an explicit H in h with ad_H = basis[k], for
    k < inner_count.  The inner-first ordering makes ad(h) the span of the
    leading coordinates, which fixes the lifts used by the cohomology
    pipeline.
    """

    algebra: SuperLieAlgebra
    basis: tuple[GradedLinearMap, ...]
    inner_count: int
    inner_preimages: tuple[Vector, ...]

    @property
    def space(self) -> SuperVectorSpace:
        return SuperVectorSpace(
            tuple(f"D{k}" for k in range(len(self.basis))),
            tuple(d.degree for d in self.basis),
        )

    def coordinates_of(self, m: GradedLinearMap) -> Vector | None:
        """Coordinates of a map in this basis, or None if outside the span."""
        cols = [d.flat() for d in self.basis]
        if not cols:
            return () if m.is_zero() else None
        rows = tuple(tuple(c[r] for c in cols) for r in range(len(cols[0])))
        return solve_linear(rows, m.flat())


def _derivation_basis_of_parity(alg: SuperLieAlgebra, deg: int) -> list[GradedLinearMap]:
    """Solve the graded Leibniz system for homogeneous derivations of one parity."""
    sp = alg.space
    n = alg.dim
    slots = [(i, j) for i in range(n) for j in range(n)
             if sp.parities[i] == (sp.parities[j] + deg) % 2]
    if not slots:
        return []
    slot_index = {ij: k for k, ij in enumerate(slots)}
    rows: list[Vector] = []
    for a in range(n):
        s = Fraction(-1 if (deg * sp.parities[a]) % 2 else 1)
        for b in range(n):
            w = alg.brackets[a][b]
            for k in range(n):
                coeff = [Fraction(0)] * len(slots)
                # D([e_a,e_b]) component k
                for m, c in enumerate(w):
                    if c != 0 and (k, m) in slot_index:
                        coeff[slot_index[(k, m)]] += c
                # -[D e_a, e_b] component k
                for i in range(n):
                    if (i, a) in slot_index:
                        coeff[slot_index[(i, a)]] -= alg.brackets[i][b][k]
                # -(-1)^{deg*x_a} [e_a, D e_b] component k
                for i in range(n):
                    if (i, b) in slot_index:
                        coeff[slot_index[(i, b)]] -= s * alg.brackets[a][i][k]
                rows.append(tuple(coeff))
    basis = []
    for kv in kernel_basis(rows):
        m = [[Fraction(0)] * n for _ in range(n)]
        for (i, j), k in slot_index.items():
            m[i][j] = kv[k]
        basis.append(GradedLinearMap(sp, sp, deg, tuple(tuple(r) for r in m)))
    return basis


@lru_cache(maxsize=None)
def derivations(alg: SuperLieAlgebra) -> DerivationSpace:
    """All graded derivations of the algebra, solved per parity.

    Basis order: inner derivations (parities 0 then 1, in reduced echelon
    form of the span of the ad matrices), then complement members taken
    from the per-parity solution bases.
    """
    n = alg.dim
    inner_maps: list[GradedLinearMap] = []
    preimages: list[Vector] = []
    outer_maps: list[list[GradedLinearMap]] = []
    for deg in (0, 1):
        gens = [i for i in range(n) if alg.space.parities[i] == deg]
        ad_flat = [ad(alg, unit_vec(n, i)).flat() for i in gens]
        inner_rows, _ = rref(ad_flat) if ad_flat else ([], [])
        deg_inner: list[GradedLinearMap] = []
        for row in inner_rows:
            m = tuple(tuple(row[i * n + j] for j in range(n)) for i in range(n))
            member = GradedLinearMap(alg.space, alg.space, deg, m)
            deg_inner.append(member)
            # express the member as ad_H for an explicit H
            cols = [tuple(f) for f in ad_flat]
            sys_rows = tuple(tuple(c[r] for c in cols) for r in range(n * n))
            y = solve_linear(sys_rows, tuple(row))
            assert y is not None
            h = zero_vec(n)
            for c, i in zip(y, gens):
                h = vec_add(h, vec_scale(c, unit_vec(n, i)))
            preimages.append(h)
        full = _derivation_basis_of_parity(alg, deg)
        span = IncrementalSpan(d.flat() for d in deg_inner)
        kept = [d for d in full if span.add(d.flat())]
        inner_maps.extend(deg_inner)
        outer_maps.append(kept)
    # inner parity 0, inner parity 1, complement parity 0, complement parity 1
    basis = tuple(inner_maps) + tuple(outer_maps[0]) + tuple(outer_maps[1])
    return DerivationSpace(alg, basis, len(inner_maps), tuple(preimages))


def derivation_algebra(ds: DerivationSpace) -> SuperLieAlgebra:
    """der(h) as a super Lie algebra under the graded commutator."""
    m = len(ds.basis)
    table: dict[tuple[int, int], Vector] = {}
    for i in range(m):
        for j in range(m):
            comm = graded_commutator(ds.basis[i], ds.basis[j])
            coords = ds.coordinates_of(comm)
            if coords is None:
                raise RuntimeError("derivations are not closed under the commutator")
            if not is_zero_vec(coords):
                table[(i, j)] = coords
    return make_algebra(ds.space, table)


def out_quotient(alg: SuperLieAlgebra) -> tuple[SuperLieAlgebra, GradedLinearMap]:
    """The quotient out(h) = der(h)/ad(h) with its projection from der(h).

    The projection is a surjective homomorphism of super Lie algebras with
    kernel ad(h); out(h) carries the induced bracket of the complement
    representatives.
    """
    ds = derivations(alg)
    der_alg = derivation_algebra(ds)
    sub = [unit_vec(len(ds.basis), k) for k in range(ds.inner_count)]
    out_space, proj = quotient_space(ds.space, sub)
    table: dict[tuple[int, int], Vector] = {}
    reps = [ds.inner_count + a for a in range(out_space.dim)]
    for a, ia in enumerate(reps):
        for b, ib in enumerate(reps):
            v = proj.apply(der_alg.brackets[ia][ib])
            if not is_zero_vec(v):
                table[(a, b)] = v
    out_alg = make_algebra(out_space, table)
    return out_alg, proj


def is_homomorphism(f: GradedLinearMap, src: SuperLieAlgebra, dst: SuperLieAlgebra) -> bool:
    """True iff f[e_i, e_j] = [f e_i, f e_j] on all basis pairs (f of degree 0)."""
    if f.degree != 0:
        raise ValueError("homomorphisms are of degree 0")
    if f.domain != src.space or f.codomain != dst.space:
        raise ValueError("map does not connect the given algebras")
    for i in range(src.dim):
        for j in range(src.dim):
            if f.apply(src.brackets[i][j]) != dst.bracket_vec(f.column(i), f.column(j)):
                return False
    return True
