"""Graded Chevalley cohomology and the obstruction/classification pipeline.

For a graded module (M, action) over g the covariant derivative of
`cochains` squares to zero and computes cohomology by exact kernel/image
linear algebra, split by weight.  On top of that sit the deterministic
lift of an outer action out(h) <- g, the canonical curvature solving
ad_H = commutator defect, the degree-3 obstruction cocycle valued in the
center, and the classification of extensions by the weight-0 part of H^2.
"""

from __future__ import annotations

from dataclasses import dataclass

from .gvs import (
    GradedLinearMap,
    IncrementalSpan,
    SuperVectorSpace,
    Vector,
    graded_commutator,
    is_zero_vec,
    kernel_basis,
    rref,
    solve_linear,
    unit_vec,
    vec_add,
    vec_scale,
    zero_vec,
)
from .superlie import SuperLieAlgebra, ad, center, derivations, is_homomorphism, out_quotient
from .cochains import (
    Cochain,
    TRIVIAL_LINE,
    arity_cap,
    cochain_coordinates,
    cochain_from_coordinates,
    covariant_delta,
    make_cochain,
    space_basis,
)
from .extensions import ExtensionDatum, build_extension, check_datum


@dataclass(frozen=True)
class GModule:
    """A graded g-module: a space with one action operator per g generator.

    The assignment is degree 0 (operator parity = generator parity) and a
    homomorphism into the graded commutator algebra; `gmodule` verifies
    both and sets the flag.
    """

    g: SuperLieAlgebra
    space: SuperVectorSpace
    action: tuple[GradedLinearMap, ...]
    verified: bool = False


def gmodule(g: SuperLieAlgebra, space: SuperVectorSpace,
            action: tuple[GradedLinearMap, ...]) -> GModule:
    if len(action) != g.dim:
        raise ValueError("need one action operator per g basis element")
    for i, op in enumerate(action):
        if op.domain != space or op.codomain != space:
            raise ValueError(f"action[{i}] does not act on the module space")
        if op.degree != g.space.parities[i]:
            raise ValueError(f"action[{i}] has the wrong parity")
    for i in range(g.dim):
        for j in range(g.dim):
            acc = GradedLinearMap.zero(
                space, space, (g.space.parities[i] + g.space.parities[j]) % 2
            )
            for m, c in enumerate(g.brackets[i][j]):
                if c != 0:
                    acc = acc + action[m].scale(c)
            if graded_commutator(action[i], action[j]) != acc:
                raise ValueError(
                    f"action is not a homomorphism on the pair "
                    f"({g.space.names[i]},{g.space.names[j]})"
                )
    return GModule(g, space, action, True)


def trivial_module(g: SuperLieAlgebra, space: SuperVectorSpace = TRIVIAL_LINE) -> GModule:
    action = tuple(
        GradedLinearMap.zero(space, space, g.space.parities[i]) for i in range(g.dim)
    )
    return gmodule(g, space, action)


def module_delta(mod: GModule, phi: Cochain) -> Cochain:
    """The Chevalley differential of the module; squares to zero."""
    return covariant_delta(mod.g, mod.action, phi)


def center_embedding(h: SuperLieAlgebra) -> GradedLinearMap:
    """The inclusion of the graded center into h, with basis names z0, z1, ..."""
    basis = center(h)
    zspace = SuperVectorSpace(
        tuple(f"z{k}" for k in range(len(basis))),
        tuple(h.space.vector_parity(v) for v in basis),
    )
    m = tuple(tuple(basis[k][i] for k in range(len(basis))) for i in range(h.dim))
    return GradedLinearMap(zspace, h.space, 0, m)


def center_module(h: SuperLieAlgebra, g: SuperLieAlgebra,
                  abar: GradedLinearMap) -> tuple[GModule, GradedLinearMap]:
    """Z(h) as a g-module through abar: g -> out(h); returns (module, inclusion).

    Each abar(e_i) is lifted to its complement representative in der(h)
    and restricted to the center.  Inner derivations kill the center (this
    is checked), so the action does not depend on the lift; the
    homomorphism property is verified by `gmodule`.
    """
    out_alg, _proj = out_quotient(h)
    if abar.domain != g.space or abar.codomain != out_alg.space or abar.degree != 0:
        raise ValueError("abar must be a degree-0 map g -> out(h)")
    if not is_homomorphism(abar, g, out_alg):
        raise ValueError("abar is not a homomorphism into out(h)")
    incl = center_embedding(h)
    zdim = incl.domain.dim
    ds = derivations(h)
    for k in range(h.dim):
        for c in range(zdim):
            if not is_zero_vec(ad(h, unit_vec(h.dim, k)).apply(incl.column(c))):
                raise RuntimeError("internal fault: inner derivation acts on the center")
    ops = []
    for i in range(g.dim):
        deg = g.space.parities[i]
        cols = []
        for c in range(zdim):
            v = zero_vec(h.dim)
            for t in range(out_alg.dim):
                coeff = abar.matrix[t][i]
                if coeff != 0:
                    rep = ds.basis[ds.inner_count + t]
                    v = vec_add(v, vec_scale(coeff, rep.apply(incl.column(c))))
            z = solve_linear(incl.matrix, v)
            if z is None:
                raise RuntimeError("internal fault: lifted derivation leaves the center")
            cols.append(z)
        m = tuple(tuple(cols[c][r] for c in range(zdim)) for r in range(zdim))
        ops.append(GradedLinearMap(incl.domain, incl.domain, deg, m))
    return gmodule(g, incl.domain, tuple(ops)), incl


@dataclass(frozen=True)
class WeightReport:
    """Cohomology of one weight component at one arity."""

    weight: int
    dim_cocycles: int
    dim_coboundaries: int
    cocycle_basis: tuple[Cochain, ...]
    coboundary_basis: tuple[Cochain, ...]
    representatives: tuple[Cochain, ...]

    @property
    def dim(self) -> int:
        return self.dim_cocycles - self.dim_coboundaries


@dataclass(frozen=True)
class CohomologyReport:
    arity: int
    weights: tuple[WeightReport, WeightReport]

    def weight(self, y: int) -> WeightReport:
        return self.weights[y % 2]

    @property
    def total_dim(self) -> int:
        return sum(w.dim for w in self.weights)


def delta_matrix(mod: GModule, arity: int, weight: int):
    """Matrix of the module differential L^{arity,weight} -> L^{arity+1,weight}.

    Columns follow `space_basis` of the source, rows that of the target.
    """
    src_basis = space_basis(mod.g.space, mod.space, arity, weight)
    dst_basis = space_basis(mod.g.space, mod.space, arity + 1, weight)
    cols = []
    for (tup, m) in src_basis:
        elem = make_cochain(mod.g.space, mod.space, arity, weight,
                            {tup: unit_vec(mod.space.dim, m)})
        cols.append(cochain_coordinates(module_delta(mod, elem), dst_basis))
    rows = tuple(tuple(cols[c][r] for c in range(len(cols))) for r in range(len(dst_basis)))
    return rows, src_basis, dst_basis


def cohomology_space(g: SuperLieAlgebra, mod: GModule, n: int) -> CohomologyReport:
    """Cocycles, coboundaries and H^n representatives, split by weight.

    Representatives are the cocycle-basis vectors that enlarge the span of
    the coboundaries, picked greedily in kernel-basis order; everything is
    deterministic for fixed input.
    """
    if mod.g != g:
        raise ValueError("module is over a different algebra")
    if n < 0:
        raise ValueError("arity must be >= 0")
    if n > arity_cap():
        raise ValueError(f"arity {n} exceeds the cap {arity_cap()}")
    reports = []
    for y in (0, 1):
        dmat, src_basis, _dst = delta_matrix(mod, n, y)
        cocycle_coords = kernel_basis(dmat, ncols=len(src_basis))
        if n == 0:
            cobound_coords: list[Vector] = []
        else:
            prev, prev_basis, _ = delta_matrix(mod, n - 1, y)
            img_cols = [tuple(prev[r][c] for r in range(len(src_basis)))
                        for c in range(len(prev_basis))]
            cobound_coords = [tuple(r) for r in rref(img_cols)[0]] if img_cols else []
        span = IncrementalSpan(cobound_coords)
        reps = [v for v in cocycle_coords if span.add(v)]

        def to_cochain(v):
            return cochain_from_coordinates(g.space, mod.space, n, y, src_basis, v)

        reports.append(WeightReport(
            weight=y,
            dim_cocycles=len(cocycle_coords),
            dim_coboundaries=len(cobound_coords),
            cocycle_basis=tuple(to_cochain(v) for v in cocycle_coords),
            coboundary_basis=tuple(to_cochain(v) for v in cobound_coords),
            representatives=tuple(to_cochain(v) for v in reps),
        ))
    return CohomologyReport(n, (reports[0], reports[1]))


def lift_alpha_bar(h: SuperLieAlgebra, g: SuperLieAlgebra,
                   abar: GradedLinearMap) -> tuple[GradedLinearMap, ...]:
    """The deterministic linear lift of abar through the derivation basis.

    Each out(h) basis element corresponds to one complement member of the
    inner-first derivation basis; abar(e_i) maps to that combination, so
    the projection of the lift is abar again.
    """
    out_alg, _ = out_quotient(h)
    if abar.domain != g.space or abar.codomain != out_alg.space or abar.degree != 0:
        raise ValueError("abar must be a degree-0 map g -> out(h)")
    ds = derivations(h)
    ops = []
    for i in range(g.dim):
        deg = g.space.parities[i]
        acc = GradedLinearMap.zero(h.space, h.space, deg)
        for t in range(out_alg.dim):
            c = abar.matrix[t][i]
            if c != 0:
                acc = acc + ds.basis[ds.inner_count + t].scale(c)
        ops.append(acc)
    return tuple(ops)


def rho_from_lift(h: SuperLieAlgebra, g: SuperLieAlgebra,
                  alpha: tuple[GradedLinearMap, ...]) -> Cochain:
    """The canonical curvature of a lift: solve ad_H = commutator defect.

    The defect [alpha_X, alpha_Y] - alpha_[X,Y] must be an inner
    derivation for every pair (it is exactly when the projected lift is a
    homomorphism); the canonical solution zeroes the free (central)
    coordinates, which pins rho down.
    """
    from .cochains import canonical_tuples

    table = {}
    for (i, j) in canonical_tuples(g.space, 2):
        deg = (g.space.parities[i] + g.space.parities[j]) % 2
        defect = graded_commutator(alpha[i], alpha[j])
        for m, c in enumerate(g.brackets[i][j]):
            if c != 0:
                defect = defect - alpha[m].scale(c)
        gens = [k for k in range(h.dim) if h.space.parities[k] == deg]
        cols = [ad(h, unit_vec(h.dim, k)).flat() for k in gens]
        rows = tuple(tuple(col[r] for col in cols) for r in range(h.dim * h.dim))
        x = solve_linear(rows, defect.flat())
        if x is None:
            raise ValueError(
                f"commutator defect on ({g.space.names[i]},{g.space.names[j]}) is not "
                "inner: the projected lift is not a homomorphism"
            )
        v = zero_vec(h.dim)
        for c, k in zip(x, gens):
            v = vec_add(v, vec_scale(c, unit_vec(h.dim, k)))
        table[(i, j)] = v
    return make_cochain(g.space, h.space, 2, 0, table)


@dataclass(frozen=True)
class ObstructionReport:
    """The degree-3 obstruction of an outer action, with its trivialization.

    `lam` is the center-valued cocycle delta_alpha(rho); `class_coords`
    are its coordinates over the chosen H^3 weight-0 representatives.
    When the class vanishes, `mu` satisfies delta mu = lam, so
    (alpha, rho - mu) is valid extension data.
    """

    alpha: tuple[GradedLinearMap, ...]
    rho: Cochain
    lam: Cochain
    module: GModule
    center_incl: GradedLinearMap
    class_coords: Vector
    vanishes: bool
    mu: Cochain | None


def push_center_cochain(phi: Cochain, incl: GradedLinearMap) -> Cochain:
    """A center-valued cochain as an h-valued one through the inclusion."""
    return make_cochain(
        phi.source, incl.codomain, phi.arity, phi.weight,
        {tup: incl.apply(val) for tup, val in phi.values},
    )


def obstruction_class(h: SuperLieAlgebra, g: SuperLieAlgebra,
                      abar: GradedLinearMap) -> ObstructionReport:
    """Lift, curvature, and the obstruction cocycle of an outer action.

    The pipeline asserts the two facts the construction guarantees: the
    cocycle is valued in the center and is closed for the module
    differential.  Its class in weight-0 H^3 decides whether any extension
    induces abar.
    """
    mod, incl = center_module(h, g, abar)
    alpha = lift_alpha_bar(h, g, abar)
    rho = rho_from_lift(h, g, alpha)
    lam_h = covariant_delta(g, alpha, rho)
    table = {}
    for tup, val in lam_h.values:
        z = solve_linear(incl.matrix, val)
        if z is None:
            raise RuntimeError("internal fault: obstruction cocycle not valued in the center")
        table[tup] = z
    lam = make_cochain(g.space, mod.space, 3, 0, table)
    if not module_delta(mod, lam).is_zero():
        raise RuntimeError("internal fault: obstruction cocycle is not closed")

    h3 = cohomology_space(g, mod, 3).weight(0)
    basis3 = space_basis(g.space, mod.space, 3, 0)
    lam_coords = cochain_coordinates(lam, basis3)
    cols = [cochain_coordinates(c, basis3) for c in h3.coboundary_basis] + \
           [cochain_coordinates(c, basis3) for c in h3.representatives]
    rows = tuple(tuple(col[r] for col in cols) for r in range(len(basis3)))
    x = solve_linear(rows, lam_coords, ncols=len(cols))
    if x is None:
        raise RuntimeError("internal fault: obstruction cocycle is not a cocycle")
    class_coords = tuple(x[len(h3.coboundary_basis):])
    vanishes = is_zero_vec(class_coords)

    mu = None
    if vanishes:
        dmat, basis2, _ = delta_matrix(mod, 2, 0)
        mu_coords = solve_linear(dmat, lam_coords, ncols=len(basis2))
        if mu_coords is None:
            raise RuntimeError("internal fault: vanishing class but no primitive")
        mu = cochain_from_coordinates(g.space, mod.space, 2, 0, basis2, mu_coords)
    return ObstructionReport(alpha, rho, lam, mod, incl, class_coords, vanishes, mu)


@dataclass(frozen=True)
class ClassificationReport:
    """All extensions inducing a fixed outer action, up to equivalence.

    When the obstruction vanishes, `base` is the chosen base point
    (alpha, rho - mu); the classes are the torsor base + nu over the
    weight-0 H^2 representatives.  For a centerless kernel the list has
    exactly one entry (the action alone determines the extension); for an
    abelian kernel the classes are the pairs (action, H^2 class).
    """

    obstruction: ObstructionReport
    h2: CohomologyReport | None
    base: ExtensionDatum | None
    representatives: tuple[Cochain, ...]
    data: tuple[ExtensionDatum, ...]
    centerless: bool
    abelian_kernel: bool


def classify_extensions(h: SuperLieAlgebra, g: SuperLieAlgebra,
                        abar: GradedLinearMap) -> ClassificationReport:
    obs = obstruction_class(h, g, abar)
    centerless = not center(h)
    abelian_kernel = h.is_abelian()
    if not obs.vanishes:
        return ClassificationReport(obs, None, None, (), (), centerless, abelian_kernel)
    mu_h = push_center_cochain(obs.mu, obs.center_incl)
    base = ExtensionDatum(g, h, obs.alpha, obs.rho - mu_h)
    h2 = cohomology_space(g, obs.module, 2)
    reps = h2.weight(0).representatives
    data = [base]
    for nu in reps:
        nu_h = push_center_cochain(nu, obs.center_incl)
        data.append(ExtensionDatum(g, h, obs.alpha, base.rho + nu_h))
    for d in data:
        if not check_datum(d).ok:
            raise RuntimeError("internal fault: emitted datum fails the extension conditions")
        build_extension(d)
    return ClassificationReport(obs, h2, base, tuple(reps), tuple(data),
                                centerless, abelian_kernel)
