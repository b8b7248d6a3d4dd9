"""Graded-antisymmetric cochains and their calculus.

A cochain of arity p and weight y is a p-linear map g^p -> h that is
graded antisymmetric and shifts parity by y: the value on homogeneous
arguments of parities x_1..x_p lies in the parity (y + x_1 + ... + x_p)
component of h.

Sign conventions used throughout (and documented here once):

* Swapping two adjacent arguments of parities x, x' multiplies the value
  by -(-1)^{x x'}.  Consequently even-parity arguments never repeat in a
  nonzero value, while odd arguments may repeat (the cochain space is
  Lambda(g_0) (x) S(g_1) in each arity), so canonical storage keys are
  weakly increasing index tuples with no even repeats.
* For a permutation written as sigma = (sigma(0), ..., sigma(k-1)) in
  one-line notation (position i of the permuted tuple holds original
  entry sigma(i)), the acquired sign s(sigma, x) is the product of the
  adjacent-swap signs along any decomposition; it also equals
  sign(sigma) times the sign of the permutation induced on the odd
  entries.
* The differentials index arguments X_0..X_p from zero and use
      a_i(x)    = x_i (x_0 + ... + x_{i-1}) + i
      a_ij(x)   = a_i(x) + a_j(x) + x_i x_j
  i.e. the parity sum runs over all preceding arguments.  This is the
  unique reading under which the Leibniz rule and the square formula
  delta_alpha delta_alpha = [rho, .]_wedge hold; the property suite
  exercises both.
* The wedge of a scalar form psi (arity q) with Phi of weight y uses the
  extra factor (-1)^{y b_q}, b_q = number of odd arguments routed to
  psi; the bracket of Phi (arity p) with Psi of weight z uses
  (-1)^{z b_p} with b_p counting odd arguments routed to Phi.  Both are
  computed as shuffle sums, which agree with the 1/(q! p!) full
  symmetrization because every summand is invariant on shuffle cosets.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .gvs import (
    EVEN,
    GradedLinearMap,
    SuperVectorSpace,
    Vector,
    is_zero_vec,
    scalar,
    vec,
    vec_add,
    vec_scale,
    zero_vec,
)
from .superlie import SuperLieAlgebra

TRIVIAL_LINE = SuperVectorSpace(("1",), (EVEN,))

_ARITY_CAP = 6


def arity_cap() -> int:
    return _ARITY_CAP


def set_arity_cap(cap: int) -> None:
    """Arity limit for cochain spaces (differentials may exceed it by one)."""
    global _ARITY_CAP
    if cap < 0:
        raise ValueError("arity cap must be nonnegative")
    _ARITY_CAP = cap


def multigraded_sign(sigma: Sequence[int], parities: Sequence[int]) -> int:
    """Sign acquired by a tuple of homogeneous elements under a permutation.

    `sigma` is one-line notation (see module docstring); `parities` are
    the parities of the original, unpermuted tuple.
    """
    k = len(sigma)
    if len(parities) != k:
        raise ValueError("permutation and parity word differ in length")
    if any(p not in (0, 1) for p in parities):
        raise ValueError("parity word entries must be 0 or 1")
    if sorted(sigma) != list(range(k)):
        raise ValueError(f"not a permutation of 0..{k - 1}: {sigma!r}")
    work = list(sigma)
    sign = 1
    for i in range(1, k):
        j = i
        while j > 0 and work[j - 1] > work[j]:
            if (parities[work[j - 1]] * parities[work[j]]) % 2 == 0:
                sign = -sign
            work[j - 1], work[j] = work[j], work[j - 1]
            j -= 1
    return sign


def compose_perms(sigma: Sequence[int], tau: Sequence[int]) -> tuple[int, ...]:
    """(sigma o tau)(i) = sigma(tau(i))."""
    return tuple(sigma[tau[i]] for i in range(len(tau)))


def permute_word(sigma: Sequence[int], word: Sequence[int]) -> tuple[int, ...]:
    """The parity word of the permuted tuple: entry i is word[sigma(i)]."""
    return tuple(word[sigma[i]] for i in range(len(sigma)))


def canonical_tuples(space: SuperVectorSpace, arity: int) -> list[tuple[int, ...]]:
    """All canonical index tuples: weakly increasing, even entries distinct."""
    if arity < 0:
        raise ValueError("arity must be >= 0")
    out: list[tuple[int, ...]] = []
    n = space.dim

    def rec(start: int, prefix: tuple[int, ...]):
        if len(prefix) == arity:
            out.append(prefix)
            return
        for i in range(start, n):
            if prefix and prefix[-1] == i and space.parities[i] == EVEN:
                continue
            rec(i, prefix + (i,))

    rec(0, ())
    return out


def sort_indices(space: SuperVectorSpace, indices: Sequence[int]) -> tuple[tuple[int, ...], int]:
    """Canonical reordering of an index tuple and the acquired sign.

    Returns (sorted tuple, sign); the sign is 0 when an even index repeats
    (graded antisymmetry forces the value to vanish there).
    """
    work = list(indices)
    sign = 1
    for i in range(1, len(work)):
        j = i
        while j > 0 and work[j - 1] > work[j]:
            if (space.parities[work[j - 1]] * space.parities[work[j]]) % 2 == 0:
                sign = -sign
            work[j - 1], work[j] = work[j], work[j - 1]
            j -= 1
    for a, b in zip(work, work[1:]):
        if a == b and space.parities[a] == EVEN:
            return tuple(work), 0
    return tuple(work), sign


@dataclass(frozen=True)
class Cochain:
    """A graded-antisymmetric multilinear map stored on canonical tuples."""

    source: SuperVectorSpace
    target: SuperVectorSpace
    arity: int
    weight: int
    values: tuple[tuple[tuple[int, ...], Vector], ...]

    def __post_init__(self):
        if self.arity < 0:
            raise ValueError("arity must be >= 0")
        if self.arity > arity_cap() + 1:
            raise ValueError(f"arity {self.arity} exceeds the cap {arity_cap()}")
        if self.weight not in (0, 1):
            raise ValueError("weight must be 0 or 1")
        # normalize: drop zero values, sort tuples, exact-rational entries
        cleaned = tuple(
            (tuple(t), vec(v)) for t, v in sorted(self.values) if not is_zero_vec(vec(v))
        )
        object.__setattr__(self, "values", cleaned)
        seen = set()
        for tup, val in self.values:
            if len(tup) != self.arity:
                raise ValueError(f"tuple {tup} has wrong length")
            if tup in seen:
                raise ValueError(f"duplicate tuple {tup}")
            seen.add(tup)
            srt, sign = sort_indices(self.source, tup)
            if srt != tup or sign == 0:
                raise ValueError(f"tuple {tup} is not canonical")
            if any(i < 0 or i >= self.source.dim for i in tup):
                raise ValueError(f"tuple {tup} out of range")
            if len(val) != self.target.dim:
                raise ValueError("value has wrong length")
            want = (self.weight + sum(self.source.parities[i] for i in tup)) % 2
            for k, c in enumerate(val):
                if c != 0 and self.target.parities[k] != want:
                    raise ValueError(
                        f"value on {tup} has a parity-{self.target.parities[k]} "
                        f"component but must lie in parity {want}"
                    )

    @cached_property
    def _table(self) -> Mapping[tuple[int, ...], Vector]:
        return dict(self.values)

    def value(self, tup: tuple[int, ...]) -> Vector:
        return self._table.get(tup, zero_vec(self.target.dim))

    def is_zero(self) -> bool:
        return not self.values

    def evaluate(self, indices: Sequence[int]) -> Vector:
        """Value on an arbitrary tuple of basis indices (sorts and signs)."""
        if len(indices) != self.arity:
            raise ValueError(f"expected {self.arity} arguments, got {len(indices)}")
        for i in indices:
            if i < 0 or i >= self.source.dim:
                raise IndexError(f"basis index {i} out of range")
        tup, sign = sort_indices(self.source, indices)
        if sign == 0:
            return zero_vec(self.target.dim)
        v = self.value(tup)
        return v if sign == 1 else vec_scale(Fraction(-1), v)

    def evaluate_vectors(self, vectors: Sequence[Sequence]) -> Vector:
        """Multilinear extension to arbitrary coordinate vectors."""
        if len(vectors) != self.arity:
            raise ValueError(f"expected {self.arity} arguments")
        vectors = [vec(v) for v in vectors]
        out = zero_vec(self.target.dim)

        def rec(pos: int, idx: tuple[int, ...], coeff: Fraction):
            nonlocal out
            if pos == len(vectors):
                out = vec_add(out, vec_scale(coeff, self.evaluate(idx)))
                return
            for i, a in enumerate(vectors[pos]):
                if a != 0:
                    rec(pos + 1, idx + (i,), coeff * a)

        rec(0, (), Fraction(1))
        return out

    def __add__(self, other: "Cochain") -> "Cochain":
        self._check_compatible(other)
        table = dict(self.values)
        for tup, val in other.values:
            table[tup] = vec_add(table.get(tup, zero_vec(self.target.dim)), val)
        return make_cochain(self.source, self.target, self.arity, self.weight, table)

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self + other.scale(-1)

    def scale(self, c) -> "Cochain":
        c = scalar(c)
        return make_cochain(
            self.source, self.target, self.arity, self.weight,
            {tup: vec_scale(c, val) for tup, val in self.values},
        )

    def _check_compatible(self, other: "Cochain"):
        if (self.source, self.target, self.arity, self.weight) != (
            other.source, other.target, other.arity, other.weight,
        ):
            raise ValueError("cochains live in different spaces")


def make_cochain(
    source: SuperVectorSpace,
    target: SuperVectorSpace,
    arity: int,
    weight: int,
    table: Mapping[tuple[int, ...], Sequence] | Iterable[tuple[tuple[int, ...], Sequence]] = (),
) -> Cochain:
    """Cochain from a {canonical tuple: value vector} table; zeros dropped."""
    items = table.items() if isinstance(table, Mapping) else table
    cleaned = []
    for tup, val in items:
        v = vec(val)
        if not is_zero_vec(v):
            cleaned.append((tuple(tup), v))
    cleaned.sort(key=lambda t: t[0])
    return Cochain(source, target, arity, weight, tuple(cleaned))


def zero_cochain(source, target, arity, weight) -> Cochain:
    return make_cochain(source, target, arity, weight)


def scalar_cochain(source, arity, weight, table: Mapping[tuple[int, ...], object]) -> Cochain:
    """Cochain valued in the trivial line, from {tuple: scalar}."""
    return make_cochain(
        source, TRIVIAL_LINE, arity, weight,
        {tup: (scalar(c),) for tup, c in table.items()},
    )


def space_basis(
    source: SuperVectorSpace, target: SuperVectorSpace, arity: int, weight: int
) -> list[tuple[tuple[int, ...], int]]:
    """Coordinate basis of the cochain space: (canonical tuple, target index).

    Only target indices of the parity forced by homogeneity appear, so the
    list enumerates an actual basis; its order fixes all matrix layouts.
    """
    basis = []
    for tup in canonical_tuples(source, arity):
        want = (weight + sum(source.parities[i] for i in tup)) % 2
        for m in range(target.dim):
            if target.parities[m] == want:
                basis.append((tup, m))
    return basis


def cochain_coordinates(phi: Cochain, basis: Sequence[tuple[tuple[int, ...], int]]) -> Vector:
    return tuple(phi.value(tup)[m] for tup, m in basis)


def cochain_from_coordinates(
    source, target, arity, weight, basis: Sequence[tuple[tuple[int, ...], int]], coords: Sequence
) -> Cochain:
    table: dict[tuple[int, ...], list[Fraction]] = {}
    for (tup, m), c in zip(basis, vec(coords), strict=True):
        if c != 0:
            table.setdefault(tup, list(zero_vec(target.dim)))[m] += c
    return make_cochain(source, target, arity, weight,
                        {t: tuple(v) for t, v in table.items()})


def wedge(psi: Cochain, phi: Cochain) -> Cochain:
    """Wedge of a scalar-valued form with an arbitrary cochain.

    psi must be valued in a one-dimensional even space.  The sum runs over
    (q, p)-shuffles: position subsets routed to psi, complement to phi.
    """
    if psi.target.dim != 1 or psi.target.parities[0] != EVEN:
        raise ValueError("left factor of a wedge must be valued in the trivial line")
    if psi.source != phi.source:
        raise ValueError("wedge factors have different sources")
    q, p = psi.arity, phi.arity
    arity = q + p
    if arity > arity_cap():
        raise ValueError(f"wedge arity {arity} exceeds the cap {arity_cap()}")
    weight = (psi.weight + phi.weight) % 2
    src = psi.source
    table: dict[tuple[int, ...], Vector] = {}
    for tup in canonical_tuples(src, arity):
        word = tuple(src.parities[i] for i in tup)
        acc = zero_vec(phi.target.dim)
        for subset in combinations(range(arity), q):
            rest = tuple(i for i in range(arity) if i not in subset)
            sigma = subset + rest
            sign = multigraded_sign(sigma, word)
            if (phi.weight * sum(word[i] for i in subset)) % 2:
                sign = -sign
            c = psi.evaluate([tup[i] for i in subset])[0]
            if c == 0:
                continue
            v = phi.evaluate([tup[i] for i in rest])
            acc = vec_add(acc, vec_scale(Fraction(sign) * c, v))
        if not is_zero_vec(acc):
            table[tup] = acc
    return make_cochain(src, phi.target, arity, weight, table)


def nr_bracket(phi: Cochain, psi: Cochain, algebra: SuperLieAlgebra) -> Cochain:
    """The wedge-bracket of two cochains valued in a super Lie algebra.

    Bidegree adds: (p, y) and (q, z) give (p + q, y + z).  The summand for
    a shuffle routes the first block to phi, the second to psi, and pairs
    the values with the bracket of the target algebra.
    """
    if phi.target != algebra.space or psi.target != algebra.space:
        raise ValueError("bracket requires both cochains valued in the given algebra")
    if phi.source != psi.source:
        raise ValueError("bracket factors have different sources")
    p, q = phi.arity, psi.arity
    arity = p + q
    if arity > arity_cap():
        raise ValueError(f"bracket arity {arity} exceeds the cap {arity_cap()}")
    weight = (phi.weight + psi.weight) % 2
    src = phi.source
    table: dict[tuple[int, ...], Vector] = {}
    for tup in canonical_tuples(src, arity):
        word = tuple(src.parities[i] for i in tup)
        acc = zero_vec(algebra.dim)
        for subset in combinations(range(arity), p):
            rest = tuple(i for i in range(arity) if i not in subset)
            sigma = subset + rest
            sign = multigraded_sign(sigma, word)
            if (psi.weight * sum(word[i] for i in subset)) % 2:
                sign = -sign
            left = phi.evaluate([tup[i] for i in subset])
            if is_zero_vec(left):
                continue
            right = psi.evaluate([tup[i] for i in rest])
            if is_zero_vec(right):
                continue
            acc = vec_add(acc, vec_scale(Fraction(sign), algebra.bracket_vec(left, right)))
        if not is_zero_vec(acc):
            table[tup] = acc
    return make_cochain(src, algebra.space, arity, weight, table)


def _a_exponent(word: Sequence[int], i: int) -> int:
    return word[i] * sum(word[:i]) + i


def _delta_terms(
    source_alg: SuperLieAlgebra,
    phi: Cochain,
    alpha_ops: Sequence[GradedLinearMap] | None,
) -> Cochain:
    src = source_alg.space
    if phi.source != src:
        raise ValueError("cochain source does not match the algebra")
    p1 = phi.arity + 1
    if p1 > arity_cap() + 1:
        raise ValueError(f"differential arity {p1} exceeds the cap {arity_cap()} + 1")
    table: dict[tuple[int, ...], Vector] = {}
    for tup in canonical_tuples(src, p1):
        word = tuple(src.parities[i] for i in tup)
        acc = zero_vec(phi.target.dim)
        if alpha_ops is not None:
            for i in range(p1):
                rest = tup[:i] + tup[i + 1:]
                v = phi.evaluate(rest)
                if is_zero_vec(v):
                    continue
                exp = (word[i] * phi.weight + _a_exponent(word, i)) % 2
                term = alpha_ops[tup[i]].apply(v)
                acc = vec_add(acc, vec_scale(Fraction(-1 if exp else 1), term))
        for i in range(p1):
            for j in range(i + 1, p1):
                w = source_alg.brackets[tup[i]][tup[j]]
                if is_zero_vec(w):
                    continue
                exp = (_a_exponent(word, i) + _a_exponent(word, j) + word[i] * word[j]) % 2
                rest = tuple(t for k, t in enumerate(tup) if k not in (i, j))
                term = zero_vec(phi.target.dim)
                for m, c in enumerate(w):
                    if c != 0:
                        term = vec_add(term, vec_scale(c, phi.evaluate((m,) + rest)))
                acc = vec_add(acc, vec_scale(Fraction(-1 if exp else 1), term))
        if not is_zero_vec(acc):
            table[tup] = acc
    return make_cochain(src, phi.target, p1, phi.weight, table)


def chevalley_delta(source_alg: SuperLieAlgebra, phi: Cochain) -> Cochain:
    """Coboundary with only the bracket-insertion term (zero action)."""
    return _delta_terms(source_alg, phi, None)


def covariant_delta(
    source_alg: SuperLieAlgebra,
    alpha_ops: Sequence[GradedLinearMap],
    phi: Cochain,
) -> Cochain:
    """Covariant exterior derivative twisted by operators alpha on the target.

    `alpha_ops[i]` is the operator attached to source basis element i; the
    assignment must be degree 0, i.e. the operator parity equals the basis
    element's parity.  With all alpha zero this is `chevalley_delta`; it
    squares to [rho, .]_wedge when (alpha, rho) come from an extension.
    """
    src = source_alg.space
    if len(alpha_ops) != src.dim:
        raise ValueError("need one operator per source basis element")
    for i, op in enumerate(alpha_ops):
        if op.domain != phi.target or op.codomain != phi.target:
            raise ValueError(f"operator {i} does not act on the cochain target")
        if op.degree != src.parities[i]:
            raise ValueError(
                f"operator {i} has degree {op.degree}, the assignment is not degree 0"
            )
    return _delta_terms(source_alg, phi, alpha_ops)


def zero_ops(source: SuperVectorSpace, target: SuperVectorSpace) -> tuple[GradedLinearMap, ...]:
    """Zero operator family of the right degrees (the untwisted case)."""
    return tuple(
        GradedLinearMap.zero(target, target, source.parities[i]) for i in range(source.dim)
    )
