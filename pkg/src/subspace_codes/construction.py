"""Building constant-dimension codes out of lifted rank-metric codes.

The ambient space GF(q)^N with N = (s + 1) * k + n is cut into s + 1 column
slots of width k followed by one slot of width n.  The code is a union of
s + 2 rounds.  In round b (0 <= b <= s) every member carries the identity
in slot b, rank-limited square codewords in the slots left of b, and full
evaluation codewords in every slot right of b (including the wide one).  In
the final round the identity moves to the last k columns, every k-slot
carries a rank-limited square codeword and the wide slot a rank-limited
k x n codeword.  Pivot columns separate members of different rounds, and
the rank limit k - d/2 keeps cross-round subspace distances at d; within a
round the lifted rank distance does the same.

Members are stored packed: a subspace is k canonical generator rows, each
row the integer sum(entry_c * q**c), and a member is sum(row_r * q**(N*r)).
For q = 2 with k * N <= 63 members fit machine words and the whole code
lives in one numpy array.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .bounds import CdcParams, block_cardinalities
from .errors import (
    BudgetExceededError,
    InternalConsistencyError,
    InvalidParameterError,
)
from .fields import (
    MatrixGF,
    field_of,
    matrix,
    pack_row,
    packed_rref,
    rref_full_rank,
    unpack_row,
)
from .gabidulin import (
    BUDGET_ENV_VAR,
    checked_sq_filter,
    gabidulin_enumerate,
    resolve_enum_budget,
)


@dataclass(frozen=True)
class Subspace:
    """A k-dimensional subspace of GF(q)^ambient in canonical form.

    ``rows`` are the packed reduced-echelon generator rows in pivot order,
    so equality and hashing of Subspace values is equality of subspaces.
    Only code that already holds canonical rows should construct this
    directly; use canonicalize or lift otherwise.
    """

    q: int
    ambient: int
    rows: tuple

    @property
    def dim(self) -> int:
        return len(self.rows)

    def generator(self) -> MatrixGF:
        f = field_of(self.q)
        return matrix(f, [unpack_row(r, self.q, self.ambient) for r in self.rows])


def canonicalize(gen: MatrixGF) -> Subspace:
    """Subspace spanned by the rows of ``gen``; rows must be independent."""
    q = gen.field.q
    packed = [pack_row(gen.row_list(r), q) for r in range(gen.rows)]
    rows = rref_full_rank(packed, gen.field, gen.cols, gen.rows)
    return Subspace(q, gen.cols, rows)


def lift(word: MatrixGF, side: str = "left") -> Subspace:
    """Subspace generated by a codeword next to an identity block.

    side="left" produces the row space of [I | word], which is already
    canonical; side="right" produces the row space of [word | I].
    """
    k, n = word.rows, word.cols
    q = word.field.q
    if side == "left":
        rows = tuple(q ** i + pack_row(word.row_list(i), q) * q ** k
                     for i in range(k))
        return Subspace(q, k + n, rows)
    if side == "right":
        packed = [pack_row(word.row_list(i), q) + q ** (n + i) for i in range(k)]
        return Subspace(q, k + n, packed_rref(packed, word.field, k + n))
    raise InvalidParameterError(f"side must be 'left' or 'right', got {side!r}")


@dataclass
class CDC:
    """A constant-dimension code held as packed members.

    ``codes`` is a numpy uint64 array when members fit a machine word and a
    list of Python ints otherwise, in construction order.  ``rounds`` gives
    each member's round index when the code came out of assemble_parallel.
    """

    q: int
    ambient: int
    k: int
    d: int
    codes: object
    rounds: object = None
    params: CdcParams | None = None

    def __len__(self):
        return len(self.codes)

    def member_rows(self, i: int) -> tuple:
        value = int(self.codes[i])
        base = self.q ** self.ambient
        out = []
        for _ in range(self.k):
            value, r = divmod(value, base)
            out.append(r)
        return tuple(out)

    def subspace(self, i: int) -> Subspace:
        return Subspace(self.q, self.ambient, self.member_rows(i))

    def distinct_count(self) -> int:
        if isinstance(self.codes, np.ndarray):
            return int(np.unique(self.codes).size)
        return len(set(self.codes))


def pack_member(rows, q: int, ambient: int) -> int:
    value = 0
    for r in reversed(rows):
        value = value * (q ** ambient) + r
    return value


def _shifted_rows(words, q: int, offset: int):
    # packed rows of every codeword, moved to a column slot; a digit shift
    # is multiplication by q**offset
    mult = q ** offset
    return [tuple(pack_row(w.row_list(i), q) * mult for i in range(w.rows))
            for w in words]


def assemble_parallel(q: int, n: int, k: int, d: int, s: int,
                      budget: int | None = None) -> CDC:
    """Construct the full parallel code for these parameters.

    The member count always equals the parallel lower bound; the test suite
    and the verifier check that, plus distinctness and minimum distance.
    Enumeration is refused (BudgetExceededError) when the member count would
    exceed the resolved budget.

    Member order is deterministic: rounds in order, and within a round the
    cartesian product of the slot codeword lists, leftmost slot slowest.
    """
    params = CdcParams(q, (s + 1) * k + n, d, k, n=n, s=s).validate()
    field = field_of(q)
    ambient = params.ambient
    delta = d // 2

    per_round = block_cardinalities(q, n, k, d, s)
    total = sum(per_round)
    allowed = resolve_enum_budget(budget)
    if total > allowed:
        raise BudgetExceededError(
            f"construction has {total} members, over the budget of {allowed}; "
            f"pass a larger budget or set {BUDGET_ENV_VAR}")

    full_kk = gabidulin_enumerate(q, k, k, delta, budget=allowed) if s else None
    sq_kk = checked_sq_filter(full_kk, k - delta) if s else None
    full_nk = gabidulin_enumerate(q, n, k, delta, budget=allowed)
    sq_nk = checked_sq_filter(full_nk, k - delta)

    use_np = q == 2 and k * ambient <= 63
    codes = np.empty(total, dtype=np.uint64) if use_np else []
    rounds = np.empty(total, dtype=np.uint16) if use_np else []
    written = 0
    counts = []

    def emit_plain_round(slot_sources, pivot_offset):
        # identity at pivot_offset, no reduction needed: rows stay disjoint
        # in their digit ranges, so members are sums of packed parts
        nonlocal written
        id_part = sum(q ** (pivot_offset + i) * (q ** ambient) ** i
                      for i in range(k))
        parts = [[pack_member(rows, q, ambient)
                  for rows in _shifted_rows(words, q, offset)]
                 for words, offset in slot_sources]
        if use_np:
            acc = np.asarray([id_part], dtype=np.uint64)
            for p in parts:
                arr = np.asarray(p, dtype=np.uint64)
                acc = (acc[:, None] + arr[None, :]).ravel()
            codes[written:written + acc.size] = acc
            emitted = int(acc.size)
        else:
            emitted = 0
            for combo in product(*parts):
                codes.append(id_part + sum(combo))
                emitted += 1
        written += emitted
        return emitted

    def emit_reduced_round(slot_sources, pivot_offset):
        nonlocal written
        id_rows = tuple(q ** (pivot_offset + i) for i in range(k))
        shifted = [_shifted_rows(words, q, offset)
                   for words, offset in slot_sources]
        emitted = 0
        for combo in product(*shifted):
            rows = list(id_rows)
            for contrib in combo:
                for i in range(k):
                    rows[i] += contrib[i]
            reduced = packed_rref(rows, field, ambient)
            if len(reduced) != k:
                raise InternalConsistencyError("round member lost rank")
            value = pack_member(reduced, q, ambient)
            if use_np:
                codes[written + emitted] = value
            else:
                codes.append(value)
            emitted += 1
        written += emitted
        return emitted

    wide_offset = (s + 1) * k
    for b in range(s + 1):
        slot_sources = [(sq_kk.codewords, p * k) for p in range(b)]
        slot_sources += [(full_kk.codewords, p * k) for p in range(b + 1, s + 1)]
        slot_sources += [(full_nk.codewords, wide_offset)]
        if b == 0:
            emitted = emit_plain_round(slot_sources, 0)
        else:
            emitted = emit_reduced_round(slot_sources, b * k)
        counts.append(emitted)

    last_sources = [(sq_kk.codewords, p * k) for p in range(s)]
    last_sources += [(sq_nk.codewords, s * k)]
    counts.append(emit_reduced_round(last_sources, s * k + n))

    if counts != per_round or written != total:
        raise InternalConsistencyError(
            f"round sizes {counts} disagree with predicted {per_round}")

    if use_np:
        pos = 0
        for b, c in enumerate(counts):
            rounds[pos:pos + c] = b
            pos += c
    else:
        for b, c in enumerate(counts):
            rounds.extend([b] * c)
    return CDC(q, ambient, k, d, codes, rounds, params)
