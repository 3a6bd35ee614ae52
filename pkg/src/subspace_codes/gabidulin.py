"""Explicit maximum rank distance codes in evaluation form.

A codeword is the k x n matrix over GF(q) obtained by evaluating a
q-linearized polynomial f(x) = sum_j f_j x^(q^j), deg bound q^(k - delta),
at k points of GF(q^n) that are linearly independent over GF(q), then
expanding each value into coordinates.  Ranging over all coefficient
vectors yields a linear code of q^(n (k - delta + 1)) matrices whose
nonzero members all have rank at least delta: a maximum rank distance code.

Enumeration is explicit and deterministic, so it is budgeted: anything
bigger than the resolved codeword budget raises instead of grinding.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from .counting import truncated_rank_sum
from .errors import BudgetExceededError, InternalConsistencyError, InvalidParameterError
from .fields import Extension, MatrixGF, extension_field, field_of, mat_rank

DEFAULT_ENUM_BUDGET = 2 ** 24
BUDGET_ENV_VAR = "SUBSPACE_ENUM_BUDGET"


def resolve_enum_budget(budget: int | None = None) -> int:
    """Effective codeword budget: explicit argument, else environment, else default."""
    if budget is None:
        raw = os.environ.get(BUDGET_ENV_VAR)
        if raw is None:
            return DEFAULT_ENUM_BUDGET
        try:
            budget = int(raw)
        except ValueError:
            raise InvalidParameterError(
                f"{BUDGET_ENV_VAR} must be an integer, got {raw!r}") from None
    if budget < 1:
        raise InvalidParameterError(f"budget must be positive, got {budget}")
    return budget


@dataclass(frozen=True)
class RankCodeSpec:
    """Shape of an evaluation code: k x n matrices over GF(q), min rank delta."""

    q: int
    n: int
    k: int
    delta: int
    cardinality: int


@dataclass
class RankCode:
    """A list of rank-metric codewords in a fixed deterministic order.

    ``full`` distinguishes a complete evaluation code from a filtered
    subset; spec.cardinality always refers to the complete code.
    """

    spec: RankCodeSpec
    codewords: list
    full: bool = True

    def __len__(self):
        return len(self.codewords)


def gabidulin_enumerate(q: int, n: int, k: int, delta: int,
                        budget: int | None = None,
                        basis=None) -> RankCode:
    """Enumerate the full evaluation code for the given shape.

    Codewords appear in coefficient order: message index t encodes the
    coefficients f_j = (t // Q^j) mod Q with Q = q^n, so index 0 is the zero
    word and consecutive indices first step f_0 through GF(q^n).  Evaluation
    points are the first k elements of the coordinate basis of GF(q^n); a
    different basis changes the matrices but not their ranks.
    """
    if not 1 <= delta <= k <= n:
        raise InvalidParameterError(
            f"need 1 <= delta <= k <= n, got delta={delta}, k={k}, n={n}")
    base = field_of(q)
    ext = extension_field(q, n) if basis is None else Extension(base, n, basis)
    kappa = k - delta + 1
    cardinality = q ** (n * kappa)
    allowed = resolve_enum_budget(budget)
    if cardinality > allowed:
        raise BudgetExceededError(
            f"enumeration of {cardinality} codewords exceeds the budget of "
            f"{allowed}; pass a larger budget or set {BUDGET_ENV_VAR}")

    E = ext.ext
    Q = E.q
    points = ext.basis[:k]
    # frobenius powers of every evaluation point, P[i][j] = x_i^(q^j)
    P = [[E.pow(x, q ** j) for j in range(kappa)] for x in points]

    spec = RankCodeSpec(q, n, k, delta, cardinality)
    words = []
    for t in range(cardinality):
        coeffs = []
        rest = t
        for _ in range(kappa):
            rest, c = divmod(rest, Q)
            coeffs.append(c)
        flat = []
        for i in range(k):
            acc = 0
            row = P[i]
            for j, c in enumerate(coeffs):
                if c:
                    acc = E.add(acc, E.mul(c, row[j]))
            flat.extend(ext.expand(acc))
        words.append(MatrixGF(base, k, n, tuple(flat)))
    return RankCode(spec, words)


def sq_filter(code: RankCode, max_rank: int, include_zero: bool = False) -> RankCode:
    """Keep the codewords of rank at most max_rank.

    The zero word is dropped unless include_zero is set; order is preserved.
    For a full code the size of the result equals the truncated rank sum of
    its distribution, which the caller can cross-check exactly.
    """
    k = code.spec.k
    if not 0 <= max_rank <= k:
        raise InvalidParameterError(
            f"max_rank must lie in [0, {k}], got {max_rank}")
    kept = []
    for w in code.codewords:
        r = mat_rank(w)
        if r > max_rank:
            continue
        if r == 0 and not include_zero:
            continue
        kept.append(w)
    return RankCode(code.spec, kept, full=False)


def empirical_rank_distribution(code: RankCode) -> dict:
    """Rank histogram of the stored codewords, as {rank: count}."""
    counts: dict = {}
    for w in code.codewords:
        r = mat_rank(w)
        counts[r] = counts.get(r, 0) + 1
    return counts


def expected_low_rank_count(spec: RankCodeSpec, max_rank: int,
                            include_zero: bool = False) -> int:
    """What sq_filter must return for a full code of this shape."""
    count = truncated_rank_sum(spec.q, spec.n, spec.k, spec.delta,
                               spec.delta, max_rank)
    return count + (1 if include_zero else 0)


def checked_sq_filter(code: RankCode, max_rank: int,
                      include_zero: bool = False) -> RankCode:
    """sq_filter plus an exact size check against the rank distribution."""
    if not code.full:
        raise InvalidParameterError("size check needs the full evaluation code")
    out = sq_filter(code, max_rank, include_zero)
    want = expected_low_rank_count(code.spec, max_rank, include_zero)
    if len(out) != want:
        raise InternalConsistencyError(
            f"rank filter kept {len(out)} codewords, distribution says {want}")
    return out
