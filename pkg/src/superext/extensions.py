"""Extension data and extension triples of super Lie algebras.

An extension 0 -> h -> e -> g -> 0 together with a degree-0 linear
section g -> e induces a connection alpha: g -> der(h) and a curvature
rho (the 2-cochain measuring how far the section is from a
homomorphism).  Conversely a pair (alpha, rho) satisfying the
commutator-defect and cyclic-curvature conditions rebuilds the bracket
on h (+) g.  This module implements both directions, the change of
section, equivalence and splitting witnesses, the abelian-kernel split
solver and the pullback construction for centerless kernels.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .gvs import (
    GradedLinearMap,
    SuperVectorSpace,
    Vector,
    graded_commutator,
    is_zero_vec,
    kernel_basis,
    rank,
    solve_linear,
    unit_vec,
    vec_add,
    vec_scale,
    zero_vec,
)
from .superlie import (
    SuperLieAlgebra,
    ad,
    center,
    derivation_algebra,
    derivations,
    is_derivation,
    is_homomorphism,
    make_algebra,
    out_quotient,
    validate_algebra,
)
from .cochains import Cochain, canonical_tuples, covariant_delta, make_cochain, nr_bracket


@dataclass(frozen=True)
class ExtensionDatum:
    """A connection/curvature pair (alpha, rho) between fixed g and h.

    alpha is stored per g-basis element as an operator on h whose degree
    equals the basis element's parity (so the assignment X -> alpha_X is
    degree 0); rho is a weight-0 2-cochain g^2 -> h.  Structural shape is
    enforced here; the derivation property of the operators and the two
    compatibility conditions are checked by `check_datum`, which must be
    allowed to report on broken data.
    """

    g: SuperLieAlgebra
    h: SuperLieAlgebra
    alpha: tuple[GradedLinearMap, ...]
    rho: Cochain

    def __post_init__(self):
        if len(self.alpha) != self.g.dim:
            raise ValueError("need one alpha operator per g basis element")
        for i, op in enumerate(self.alpha):
            if op.domain != self.h.space or op.codomain != self.h.space:
                raise ValueError(f"alpha[{i}] does not act on h")
            if op.degree != self.g.space.parities[i]:
                raise ValueError(f"alpha[{i}] has degree {op.degree}; the assignment "
                                 "g -> der(h) must be degree 0")
        if (self.rho.source, self.rho.target) != (self.g.space, self.h.space):
            raise ValueError("rho must map g^2 to h")
        if (self.rho.arity, self.rho.weight) != (2, 0):
            raise ValueError("rho must have arity 2 and weight 0")


def trivial_datum(g: SuperLieAlgebra, h: SuperLieAlgebra) -> ExtensionDatum:
    """The datum of the direct sum: alpha = 0, rho = 0."""
    alpha = tuple(
        GradedLinearMap.zero(h.space, h.space, g.space.parities[i]) for i in range(g.dim)
    )
    return ExtensionDatum(g, h, alpha, make_cochain(g.space, h.space, 2, 0))


@dataclass(frozen=True)
class ExtensionTriple:
    """An exact sequence 0 -> h -> e -> g -> 0 with an optional section."""

    h: SuperLieAlgebra
    g: SuperLieAlgebra
    e: SuperLieAlgebra
    incl: GradedLinearMap
    proj: GradedLinearMap
    section: GradedLinearMap | None = None

    def __post_init__(self):
        if self.incl.domain != self.h.space or self.incl.codomain != self.e.space:
            raise ValueError("inclusion must map h into e")
        if self.proj.domain != self.e.space or self.proj.codomain != self.g.space:
            raise ValueError("projection must map e onto g")
        if self.incl.degree != 0 or self.proj.degree != 0:
            raise ValueError("inclusion and projection must be degree 0")
        if self.section is not None:
            _check_section(self, self.section)


def _check_section(t: ExtensionTriple, s: GradedLinearMap) -> None:
    if s.domain != t.g.space or s.codomain != t.e.space or s.degree != 0:
        raise ValueError("section must be a degree-0 map g -> e")
    if t.proj.compose(s) != GradedLinearMap.identity_map(t.g.space):
        raise ValueError("section is not a right inverse of the projection")


def validate_triple(t: ExtensionTriple) -> bool:
    """Exactness and homomorphism checks for a triple."""
    if rank(t.incl.matrix) != t.h.dim:
        return False
    if rank(t.proj.matrix) != t.g.dim:
        return False
    if t.e.dim != t.h.dim + t.g.dim:
        return False
    if not t.proj.compose(t.incl).is_zero():
        return False
    return is_homomorphism(t.incl, t.h, t.e) and is_homomorphism(t.proj, t.e, t.g)


def canonical_section(t: ExtensionTriple) -> GradedLinearMap:
    """The canonical right inverse of the projection (free coordinates 0)."""
    cols = []
    for j in range(t.g.dim):
        v = solve_linear(t.proj.matrix, unit_vec(t.g.dim, j))
        if v is None:
            raise ValueError("projection is not surjective")
        cols.append(v)
    m = tuple(tuple(cols[j][i] for j in range(t.g.dim)) for i in range(t.e.dim))
    return GradedLinearMap(t.g.space, t.e.space, 0, m)


def induced_data(t: ExtensionTriple, s: GradedLinearMap | None = None) -> ExtensionDatum:
    """Connection and curvature induced by a section.

    alpha_X is the bracket action of s(X) on the embedded copy of h,
    pulled back through the inclusion; rho(X, Y) is the h-valued failure
    of s to be a homomorphism.  Values outside the image of the inclusion
    mean the triple is not exact (or s is not a section) and raise.
    """
    if s is None:
        s = t.section
        if s is None:
            raise ValueError("the triple carries no section; pass one")
    _check_section(t, s)
    h, g, e = t.h, t.g, t.e
    alpha = []
    for j in range(g.dim):
        sx = s.column(j)
        cols = []
        for k in range(h.dim):
            w = e.bracket_vec(sx, t.incl.column(k))
            v = solve_linear(t.incl.matrix, w)
            if v is None:
                raise ValueError(
                    f"[s({g.space.names[j]}), h] leaves the kernel: the sequence is not exact"
                )
            cols.append(v)
        m = tuple(tuple(cols[k][i] for k in range(h.dim)) for i in range(h.dim))
        alpha.append(GradedLinearMap(h.space, h.space, g.space.parities[j], m))
    table = {}
    for (j, k) in canonical_tuples(g.space, 2):
        w = e.bracket_vec(s.column(j), s.column(k))
        w = vec_add(w, vec_scale(Fraction(-1), s.apply(g.brackets[j][k])))
        v = solve_linear(t.incl.matrix, w)
        if v is None:
            raise ValueError(
                f"curvature on ({g.space.names[j]},{g.space.names[k]}) lands outside h: "
                "the sequence is not exact"
            )
        table[(j, k)] = v
    rho = make_cochain(g.space, h.space, 2, 0, table)
    return ExtensionDatum(g, h, tuple(alpha), rho)


@dataclass(frozen=True)
class DatumReport:
    """Exact residual report for the extension-datum conditions."""

    derivation_ok: tuple[bool, ...]
    commutator_defect_ok: bool
    cyclic_curvature_ok: bool
    failures: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return all(self.derivation_ok) and self.commutator_defect_ok and self.cyclic_curvature_ok


def check_datum(d: ExtensionDatum) -> DatumReport:
    """Check that (alpha, rho) is genuine extension data.

    Three layers: each alpha operator is a graded derivation of h; the
    commutator defect [alpha_X, alpha_Y] - alpha_[X,Y] equals ad_rho(X,Y)
    on all basis pairs; and the cyclic curvature sum
    sum_cyc (-1)^{xz} (alpha_X rho(Y,Z) - rho([X,Y], Z)) vanishes on all
    basis triples.
    """
    g, h = d.g, d.h
    fails: list[str] = []
    der_ok = tuple(is_derivation(h, op) for op in d.alpha)
    for i, ok in enumerate(der_ok):
        if not ok:
            fails.append(f"alpha[{g.space.names[i]}] is not a graded derivation of h")

    conn_ok = True
    for i in range(g.dim):
        for j in range(g.dim):
            lhs = graded_commutator(d.alpha[i], d.alpha[j])
            deg = (g.space.parities[i] + g.space.parities[j]) % 2
            acc = GradedLinearMap.zero(h.space, h.space, deg)
            for m, c in enumerate(g.brackets[i][j]):
                if c != 0:
                    acc = acc + d.alpha[m].scale(c)
            rhs = acc + ad(h, d.rho.evaluate((i, j)), degree=deg)
            if lhs != rhs:
                conn_ok = False
                fails.append(
                    f"commutator defect on ({g.space.names[i]},{g.space.names[j]}) "
                    "is not ad of the curvature"
                )

    curv_ok = True
    n = g.dim
    for i in range(n):
        for j in range(n):
            for k in range(n):
                res = zero_vec(h.dim)
                for (a, b, c) in ((i, j, k), (j, k, i), (k, i, j)):
                    sgn = Fraction(
                        -1 if (g.space.parities[a] * g.space.parities[c]) % 2 else 1
                    )
                    term = d.alpha[a].apply(d.rho.evaluate((b, c)))
                    for m, cm in enumerate(g.brackets[a][b]):
                        if cm != 0:
                            term = vec_add(term, vec_scale(-cm, d.rho.evaluate((m, c))))
                    res = vec_add(res, vec_scale(sgn, term))
                if not is_zero_vec(res):
                    curv_ok = False
                    fails.append(
                        f"cyclic curvature residual on ({g.space.names[i]},"
                        f"{g.space.names[j]},{g.space.names[k]}) = {res}"
                    )
    return DatumReport(der_ok, conn_ok, curv_ok, tuple(fails))


def _sum_space(h: SuperVectorSpace, g: SuperVectorSpace) -> SuperVectorSpace:
    names_h, names_g = list(h.names), list(g.names)
    if set(names_h) & set(names_g):
        names_h = [n + ".h" for n in names_h]
        names_g = [n + ".g" for n in names_g]
    return SuperVectorSpace(tuple(names_h + names_g), h.parities + g.parities)


def raw_extension_algebra(d: ExtensionDatum) -> SuperLieAlgebra:
    """The bracket table on h (+) g from a datum, with no validity check.

    For a datum failing the extension conditions the result fails the
    Jacobi identity; `build_extension` is the checked entry point.
    """
    g, h = d.g, d.h
    nh, ng = h.dim, g.dim
    space = _sum_space(h.space, g.space)
    table: dict[tuple[int, int], Vector] = {}

    def pad_h(v: Vector) -> Vector:
        return v + zero_vec(ng)

    for a in range(nh):
        for b in range(nh):
            v = h.brackets[a][b]
            if not is_zero_vec(v):
                table[(a, b)] = pad_h(v)
    for j in range(ng):
        for a in range(nh):
            v = d.alpha[j].apply(unit_vec(nh, a))
            if not is_zero_vec(v):
                table[(nh + j, a)] = pad_h(v)
                sgn = Fraction(-1 if (g.space.parities[j] * h.space.parities[a]) % 2 == 0 else 1)
                table[(a, nh + j)] = pad_h(vec_scale(sgn, v))
    for i in range(ng):
        for j in range(ng):
            v = pad_h(d.rho.evaluate((i, j)))
            gv = g.brackets[i][j]
            v = vec_add(v, zero_vec(nh) + gv)
            if not is_zero_vec(v):
                table[(nh + i, nh + j)] = v
    return make_algebra(space, table)


def build_extension(d: ExtensionDatum) -> ExtensionTriple:
    """The extension algebra on h (+) g rebuilt from a valid datum.

    Bracket: [H1+X1, H2+X2] = ([H1,H2] + alpha_X1 H2 - (-1)^{x2 h1} alpha_X2 H1
    + rho(X1,X2)) + [X1,X2].  Refuses to build when `check_datum` fails;
    the result always passes `validate_algebra` and round-trips through
    `induced_data` with the canonical section.
    """
    rep = check_datum(d)
    if not rep.ok:
        raise ValueError("datum fails the extension conditions: " + "; ".join(rep.failures[:3]))
    g, h = d.g, d.h
    nh, ng = h.dim, g.dim
    n = nh + ng
    e = raw_extension_algebra(d)
    space = e.space
    if not validate_algebra(e).ok:
        raise RuntimeError("internal fault: built extension fails validation")
    incl = GradedLinearMap(
        h.space, space, 0,
        tuple(tuple(Fraction(1 if i == j else 0) for j in range(nh)) for i in range(n)),
    )
    proj = GradedLinearMap(
        space, g.space, 0,
        tuple(tuple(Fraction(1 if j == nh + i else 0) for j in range(n)) for i in range(ng)),
    )
    section = GradedLinearMap(
        g.space, space, 0,
        tuple(tuple(Fraction(1 if i == nh + j else 0) for j in range(ng)) for i in range(n)),
    )
    return ExtensionTriple(h, g, e, incl, proj, section)


def witness_cochain(b: GradedLinearMap) -> Cochain:
    """A degree-0 map g -> h as a 1-cochain of weight 0."""
    if b.degree != 0:
        raise ValueError("witness must be degree 0")
    return make_cochain(b.domain, b.codomain, 1, 0,
                        {(j,): b.column(j) for j in range(b.domain.dim)})


def transform_datum(d: ExtensionDatum, b: GradedLinearMap) -> ExtensionDatum:
    """Change of section by b: alpha' = alpha + ad_b, rho' = rho + delta_alpha b + [b,b]/2.

    Moving the section of a built extension by b induces exactly this move
    on the datum; validity is preserved, and H+X -> H-b(X)+X is an
    isomorphism between the two built algebras.
    """
    if b.domain != d.g.space or b.codomain != d.h.space:
        raise ValueError("witness must map g to h")
    if b.degree != 0:
        raise ValueError("witness must be degree 0")
    bc = witness_cochain(b)
    alpha = tuple(
        op + ad(d.h, b.column(i), degree=d.g.space.parities[i])
        for i, op in enumerate(d.alpha)
    )
    rho = d.rho + covariant_delta(d.g, d.alpha, bc) \
        + nr_bracket(bc, bc, d.h).scale(Fraction(1, 2))
    return ExtensionDatum(d.g, d.h, alpha, rho)


def check_equivalence_witness(d: ExtensionDatum, d2: ExtensionDatum, b: GradedLinearMap) -> bool:
    """True iff b carries d exactly onto d2."""
    if d.g != d2.g or d.h != d2.h:
        raise ValueError("data live over different algebras")
    return transform_datum(d, b) == d2


def check_split_witness(d: ExtensionDatum, b: GradedLinearMap) -> bool:
    """True iff rho = delta_alpha b - [b,b]/2, i.e. b splits the extension.

    On success the consequences are verified: transforming by -b kills the
    curvature and the transformed connection is a homomorphism into der(h).
    """
    bc = witness_cochain(b)
    target = covariant_delta(d.g, d.alpha, bc) - nr_bracket(bc, bc, d.h).scale(Fraction(1, 2))
    if d.rho != target:
        return False
    flat = transform_datum(d, b.scale(-1))
    if not flat.rho.is_zero():
        raise RuntimeError("internal fault: split witness did not flatten the curvature")
    for i in range(d.g.dim):
        for j in range(d.g.dim):
            acc = GradedLinearMap.zero(
                d.h.space, d.h.space,
                (d.g.space.parities[i] + d.g.space.parities[j]) % 2,
            )
            for m, c in enumerate(d.g.brackets[i][j]):
                if c != 0:
                    acc = acc + flat.alpha[m].scale(c)
            if graded_commutator(flat.alpha[i], flat.alpha[j]) != acc:
                raise RuntimeError("internal fault: flattened connection is not a homomorphism")
    return True


def solve_split_abelian(d: ExtensionDatum) -> GradedLinearMap | None:
    """For abelian h the split condition is linear: solve rho = delta_alpha b.

    Returns the canonical solution, or None when the curvature class is
    nonzero and no witness exists.
    """
    if not d.h.is_abelian():
        raise ValueError("linear split solving requires an abelian kernel")
    g, h = d.g, d.h
    slots = [
        (k, j)
        for k in range(h.dim)
        for j in range(g.dim)
        if h.space.parities[k] == g.space.parities[j]
    ]
    from .cochains import cochain_coordinates, space_basis

    basis2 = space_basis(g.space, h.space, 2, 0)
    cols = []
    for (k, j) in slots:
        m = [[Fraction(0)] * g.dim for _ in range(h.dim)]
        m[k][j] = Fraction(1)
        eb = GradedLinearMap(g.space, h.space, 0, tuple(tuple(r) for r in m))
        image = covariant_delta(g, d.alpha, witness_cochain(eb))
        cols.append(cochain_coordinates(image, basis2))
    rows = tuple(tuple(c[r] for c in cols) for r in range(len(basis2)))
    rhs = cochain_coordinates(d.rho, basis2)
    x = solve_linear(rows, rhs, ncols=len(slots))
    if x is None:
        return None
    m = [[Fraction(0)] * g.dim for _ in range(h.dim)]
    for c, (k, j) in zip(x, slots):
        m[k][j] = c
    return GradedLinearMap(g.space, h.space, 0, tuple(tuple(r) for r in m))


def pullback_extension(
    h: SuperLieAlgebra, g: SuperLieAlgebra, abar: GradedLinearMap
) -> ExtensionTriple:
    """The extension of g by a centerless h induced by abar: g -> out(h).

    The total algebra is the subalgebra {(D, X) : pi(D) = abar(X)} of
    der(h) x g with the product bracket; h embeds as H -> (ad_H, 0) and
    the projection forgets the derivation part.  The carried section is
    the canonical one through the complement representatives, so the
    datum it induces is exactly (lifted abar, its curvature).
    """
    if center(h):
        raise ValueError("pullback construction requires a centerless kernel")
    out_alg, proj = out_quotient(h)
    if abar.domain != g.space or abar.codomain != out_alg.space:
        raise ValueError("abar must map g to out(h)")
    if not is_homomorphism(abar, g, out_alg):
        raise ValueError("abar is not a homomorphism into out(h)")
    ds = derivations(h)
    der_alg = derivation_algebra(ds)
    m, n = len(ds.basis), g.dim
    cond = tuple(
        tuple(proj.matrix[r][c] for c in range(m))
        + tuple(-abar.matrix[r][c] for c in range(n))
        for r in range(out_alg.dim)
    )
    kern = kernel_basis(cond, ncols=m + n)
    prod_parities = ds.space.parities + g.space.parities

    def vec_parity(v: Vector) -> int:
        ps = {prod_parities[i] for i, a in enumerate(v) if a != 0}
        if len(ps) > 1:
            raise RuntimeError("internal fault: inhomogeneous pullback basis vector")
        return ps.pop() if ps else 0

    e_space = SuperVectorSpace(
        tuple(f"e{k}" for k in range(len(kern))),
        tuple(vec_parity(v) for v in kern),
    )
    kern_cols = tuple(tuple(kern[c][r] for c in range(len(kern))) for r in range(m + n))

    def to_e_coords(w: Vector) -> Vector:
        x = solve_linear(kern_cols, w)
        if x is None:
            raise RuntimeError("internal fault: vector not in the pullback subalgebra")
        return x

    def product_bracket(u: Vector, v: Vector) -> Vector:
        dpart = zero_vec(m)
        for a in range(m):
            if u[a] == 0:
                continue
            for b in range(m):
                if v[b] == 0:
                    continue
                dpart = vec_add(dpart, vec_scale(u[a] * v[b], der_alg.brackets[a][b]))
        gpart = g.bracket_vec(u[m:], v[m:])
        return dpart + gpart

    table: dict[tuple[int, int], Vector] = {}
    for a, u in enumerate(kern):
        for b, v in enumerate(kern):
            w = to_e_coords(product_bracket(u, v))
            if not is_zero_vec(w):
                table[(a, b)] = w
    e = make_algebra(e_space, table)

    incl_cols = [to_e_coords(ds.coordinates_of(ad(h, unit_vec(h.dim, k))) + zero_vec(n))
                 for k in range(h.dim)]
    incl = GradedLinearMap(
        h.space, e_space, 0,
        tuple(tuple(incl_cols[k][i] for k in range(h.dim)) for i in range(len(kern))),
    )
    proj_e = GradedLinearMap(
        e_space, g.space, 0,
        tuple(tuple(kern[c][m + r] for c in range(len(kern))) for r in range(n)),
    )
    sec_cols = []
    for j in range(n):
        lift = [Fraction(0)] * m
        for t in range(out_alg.dim):
            lift[ds.inner_count + t] = abar.matrix[t][j]
        sec_cols.append(to_e_coords(tuple(lift) + unit_vec(n, j)))
    section = GradedLinearMap(
        g.space, e_space, 0,
        tuple(tuple(sec_cols[j][i] for j in range(n)) for i in range(len(kern))),
    )
    triple = ExtensionTriple(h, g, e, incl, proj_e, section)
    if not validate_algebra(e).ok or not validate_triple(triple):
        raise RuntimeError("internal fault: pullback algebra failed validation")
    return triple


def normalized_structure(t: ExtensionTriple, s: GradedLinearMap | None = None) -> SuperLieAlgebra:
    """Rebase a triple onto the basis (incl(h), s(g)): the canonical form.

    With the carried section this equals `build_extension(induced_data(t))`
    and exposes the structure constants in the h-then-g convention, which
    makes algebras comparable by `same_structure`.
    """
    return build_extension(induced_data(t, s)).e


def same_structure(a: SuperLieAlgebra, b: SuperLieAlgebra) -> bool:
    """Equal parities and structure constants in the given basis order."""
    return a.space.parities == b.space.parities and a.brackets == b.brackets
