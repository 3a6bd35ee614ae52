"""Arithmetic in small finite fields and exact linear algebra over them.

Elements of GF(p^e) are represented by plain integer indices in
``range(p**e)``.  The index encodes the coefficient vector of the element
with respect to the power basis of the residue class of x modulo a fixed
polynomial: ``index = c0 + c1*p + ... + c_{e-1}*p**(e-1)``.  Index 0 is
zero, index 1 is one, and for e > 1 index p is the residue of x itself,
which doubles as the multiplicative generator.  All moduli come from a
frozen table of Conway polynomials, so construction is deterministic: the
same order always produces the same arithmetic and the same indexing.

Base fields handed out by :func:`field_of` are restricted to orders
2, 3, 4, 5, 7, 8 and 9.  That keeps every lookup table tiny while covering
every order the counting formulas in this package are tabulated for.
Extension fields GF(q^m) are realized as GF(p^(e*m)) and carry an explicit
embedding of GF(q) plus coordinate maps for a chosen GF(q)-basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import (
    IncompatibleFieldError,
    InternalConsistencyError,
    InvalidElementError,
    InvalidParameterError,
    RankDeficiencyError,
)

SUPPORTED_Q = (2, 3, 4, 5, 7, 8, 9)

# Conway polynomials, coefficients in ascending degree order, monic.  The
# degree-1 entries encode x - z with z the least primitive root mod p, so
# the generator convention below holds uniformly.  Each entry is verified
# irreducible with primitive residue x by the test suite.
CONWAY_POLYS = {
    (2, 1): (1, 1),
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 1, 1, 0, 1),
    (2, 7): (1, 1, 0, 0, 0, 0, 0, 1),
    (2, 8): (1, 0, 1, 1, 1, 0, 0, 0, 1),
    (3, 1): (1, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 0, 0, 2, 1),
    (3, 5): (1, 2, 0, 0, 0, 1),
    (3, 6): (2, 2, 1, 0, 2, 0, 1),
    (5, 1): (3, 1),
    (5, 2): (2, 4, 1),
    (5, 3): (3, 3, 0, 1),
    (5, 4): (2, 4, 4, 0, 1),
    (7, 1): (4, 1),
    (7, 2): (3, 6, 1),
    (7, 3): (4, 0, 6, 1),
}


class Field:
    """GF(p^e) with exp/log multiplication and table-driven addition.

    Do not construct directly; go through :func:`field_of` or
    :func:`extension_field` so instances are cached and interchangeable.
    """

    __slots__ = ("p", "e", "q", "modulus", "generator",
                 "_exp", "_log", "_add", "_neg")

    def __init__(self, p: int, e: int, modulus: tuple):
        self.p = p
        self.e = e
        self.q = p ** e
        self.modulus = modulus
        if e == 1:
            self.generator = (-modulus[0]) % p
        else:
            self.generator = p

        exp = [1]
        cur = 1
        for _ in range(self.q - 2):
            cur = self._mul_poly(cur, self.generator)
            exp.append(cur)
        if sorted(exp) != list(range(1, self.q)):
            raise InternalConsistencyError(
                f"residue generator of GF({self.q}) is not primitive")
        log = [0] * self.q
        for t, v in enumerate(exp):
            log[v] = t
        self._exp = tuple(exp)
        self._log = tuple(log)

        if p == 2 or e == 1:
            self._add = None
            self._neg = None
        else:
            # flat q*q table; the largest base order is 9 and the largest
            # odd-characteristic extension in practice is GF(729)
            add = []
            for a in range(self.q):
                da = self.digits(a)
                for b in range(self.q):
                    db = self.digits(b)
                    add.append(self.undigits(
                        [(x + y) % p for x, y in zip(da, db)]))
            self._add = tuple(add)
            self._neg = tuple(self.undigits([(-x) % p for x in self.digits(a)])
                              for a in range(self.q))

    def digits(self, a: int) -> list:
        p = self.p
        out = []
        for _ in range(self.e):
            a, r = divmod(a, p)
            out.append(r)
        return out

    def undigits(self, ds) -> int:
        a = 0
        for d in reversed(ds):
            a = a * self.p + d
        return a

    def _mul_poly(self, a, b):
        # polynomial product reduced by the monic modulus; only used while
        # building the exp table, everything afterwards is table lookups
        p, e = self.p, self.e
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * e - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        for i in range(2 * e - 2, e - 1, -1):
            c = prod[i]
            if c:
                prod[i] = 0
                for j in range(e):
                    prod[i - e + j] = (prod[i - e + j] - c * self.modulus[j]) % p
        return self.undigits(prod[:e])

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.e == 1:
            return (a + b) % self.p
        return self._add[a * self.q + b]

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        if self.e == 1:
            return (-a) % self.p
        return self._neg[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError(f"0 has no inverse in GF({self.q})")
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def pow(self, a: int, n: int) -> int:
        if a == 0:
            if n == 0:
                return 1
            if n < 0:
                raise ZeroDivisionError(f"0**{n} in GF({self.q})")
            return 0
        return self._exp[(self._log[a] * (n % (self.q - 1))) % (self.q - 1)]

    def elements(self):
        return range(self.q)

    def __eq__(self, other):
        return (isinstance(other, Field)
                and (self.p, self.e, self.modulus) == (other.p, other.e, other.modulus))

    def __hash__(self):
        return hash((self.p, self.e, self.modulus))

    def __repr__(self):
        return f"GF({self.q})"


def _factor_prime_power(q: int):
    if q < 2:
        return None
    p = 2
    while p * p <= q:
        if q % p == 0:
            e = 0
            while q % p == 0:
                q //= p
                e += 1
            return (p, e) if q == 1 else None
        p += 1
    return (q, 1)  # q itself is prime


@lru_cache(maxsize=None)
def _field(p: int, e: int) -> Field:
    if (p, e) not in CONWAY_POLYS:
        raise InvalidParameterError(
            f"no modulus on record for GF({p}^{e}); "
            f"orders up to {max(pp ** ee for pp, ee in CONWAY_POLYS)} per characteristic are available")
    return Field(p, e, CONWAY_POLYS[(p, e)])


@lru_cache(maxsize=None)
def field_of(q: int) -> Field:
    """Return the base field of order q, for q in SUPPORTED_Q."""
    fac = _factor_prime_power(q)
    if fac is None or q not in SUPPORTED_Q:
        raise InvalidParameterError(
            f"base field order {q} not supported; choose one of {SUPPORTED_Q}")
    return _field(*fac)


def check_element(field: Field, a: int, what: str = "element") -> int:
    if not isinstance(a, int) or not 0 <= a < field.q:
        raise InvalidElementError(f"{what} {a!r} is not an index into {field!r}")
    return a


def ff_mul(a: int, b: int, field: Field) -> int:
    """Multiply two field elements given by index, with argument validation."""
    check_element(field, a)
    check_element(field, b)
    return field.mul(a, b)


def ff_inv(a: int, field: Field) -> int:
    """Multiplicative inverse of a nonzero element; ZeroDivisionError on 0."""
    check_element(field, a)
    return field.inv(a)


class Extension:
    """GF(q^m) presented as an m-dimensional vector space over GF(q).

    Carries the subfield embedding and the coordinate maps for ``basis``,
    which defaults to the power basis 1, g, ..., g^(m-1) of the extension
    generator g.  A different basis (any m extension elements linearly
    independent over the subfield) can be supplied explicitly.

    Coordinates returned by :meth:`expand` are base-field element indices,
    ordered to match ``basis``.
    """

    def __init__(self, base: Field, m: int, basis=None):
        if m < 1:
            raise InvalidParameterError(f"extension degree must be >= 1, got {m}")
        self.base = base
        self.m = m
        self.ext = _field(base.p, base.e * m)
        ext = self.ext

        # Canonical subfield generator: with compatible moduli the norm-like
        # power of the extension generator is a root of the base modulus.
        # Fall back to a deterministic scan so an exotic modulus table still
        # yields a correct (if different) embedding.
        cand = ext._exp[((ext.q - 1) // (base.q - 1)) % (ext.q - 1)]
        if self._eval_base_modulus(cand) != 0:
            cand = next((x for x in range(ext.q)
                         if self._eval_base_modulus(x) == 0), None)
            if cand is None:
                raise InternalConsistencyError(
                    f"no root of the GF({base.q}) modulus inside GF({ext.q})")
        self.subfield_generator = cand

        powers = [1]
        for _ in range(base.e - 1):
            powers.append(ext.mul(powers[-1], cand))
        emb = []
        for a in range(base.q):
            acc = 0
            for t, d in enumerate(base.digits(a)):
                term = 0
                for _ in range(d):
                    term = ext.add(term, powers[t])
                acc = ext.add(acc, term)
            emb.append(acc)
        self._emb = tuple(emb)

        if basis is None:
            self.basis = tuple(ext.pow(ext.generator, j) for j in range(m))
            custom = False
        else:
            self.basis = tuple(check_element(ext, b, "basis element") for b in basis)
            if len(self.basis) != m:
                raise InvalidParameterError(
                    f"basis must have {m} elements, got {len(self.basis)}")
            custom = True

        # columns of the change matrix are the GF(p)-digit vectors of
        # emb(alpha^t) * basis_j; inverting it turns extension digits into
        # coordinates over the subfield
        n = ext.e
        cols = []
        for j in range(m):
            for t in range(base.e):
                # index p**t is the t-th power-basis element of the subfield
                cols.append(ext.digits(ext.mul(self._emb[base.p ** t], self.basis[j])))
        mat = [[cols[c][r] for c in range(n)] for r in range(n)]
        inv = _invert_mod_p(mat, base.p)
        if inv is None:
            if custom:
                raise InvalidParameterError(
                    "supplied elements are not a basis over the subfield")
            raise InternalConsistencyError("power basis change matrix is singular")
        self._inv_rows = tuple(tuple(r) for r in inv)
        self._expand_cache = [None] * ext.q

    def _eval_base_modulus(self, x: int) -> int:
        # base modulus coefficients live in the prime subfield, where element
        # indices below p mean the same thing in both fields
        acc = 0
        for c in reversed(self.base.modulus):
            acc = self.ext.add(self.ext.mul(acc, x), c)
        return acc

    def embed(self, a: int) -> int:
        """Image of a base-field element inside the extension."""
        check_element(self.base, a)
        return self._emb[a]

    def expand(self, x: int) -> tuple:
        """Coordinates of an extension element with respect to ``basis``."""
        cached = self._expand_cache[x]
        if cached is not None:
            return cached
        p = self.base.p
        v = self.ext.digits(x)
        y = [sum(r * d for r, d in zip(row, v)) % p for row in self._inv_rows]
        e = self.base.e
        coords = tuple(self.base.undigits(y[j * e:(j + 1) * e]) for j in range(self.m))
        self._expand_cache[x] = coords
        return coords

    def combine(self, coords) -> int:
        """Inverse of :meth:`expand`."""
        if len(coords) != self.m:
            raise InvalidParameterError(
                f"expected {self.m} coordinates, got {len(coords)}")
        acc = 0
        for c, b in zip(coords, self.basis):
            check_element(self.base, c, "coordinate")
            acc = self.ext.add(acc, self.ext.mul(self._emb[c], b))
        return acc

    def __repr__(self):
        return f"GF({self.base.q}^{self.m})"


def _invert_mod_p(mat, p):
    n = len(mat)
    aug = [list(row) + [1 if i == j else 0 for j in range(n)]
           for i, row in enumerate(mat)]
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, n) if aug[i][c] % p), None)
        if piv is None:
            return None
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = pow(aug[r][c], -1, p)
        aug[r] = [v * inv % p for v in aug[r]]
        for i in range(n):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [(v - f * w) % p for v, w in zip(aug[i], aug[r])]
        r += 1
    return [row[n:] for row in aug]


@lru_cache(maxsize=None)
def extension_field(q: int, m: int) -> Extension:
    """GF(q^m) with the default power basis over GF(q)."""
    return Extension(field_of(q), m)


def linearized_eval(coeffs, x: int, q: int, field: Field) -> int:
    """Evaluate sum_j coeffs[j] * x**(q**j) inside ``field``.

    ``field`` must be an extension of GF(q), i.e. its order a power of q.
    """
    t = q
    while t < field.q:
        t *= q
    if t != field.q or q < 2:
        raise IncompatibleFieldError(
            f"order of {field!r} is not a power of q={q}")
    check_element(field, x, "evaluation point")
    acc = 0
    for j, c in enumerate(coeffs):
        check_element(field, c, "coefficient")
        if c:
            acc = field.add(acc, field.mul(c, field.pow(x, q ** j)))
    return acc


@dataclass(frozen=True)
class MatrixGF:
    """Immutable matrix over a finite field, entries stored row-major."""

    field: Field
    rows: int
    cols: int
    entries: tuple

    def entry(self, r: int, c: int) -> int:
        return self.entries[r * self.cols + c]

    def row_list(self, r: int) -> list:
        return list(self.entries[r * self.cols:(r + 1) * self.cols])

    def to_lists(self) -> list:
        return [self.row_list(r) for r in range(self.rows)]


def matrix(field: Field, rows) -> MatrixGF:
    """Build a MatrixGF from an iterable of equal-length rows."""
    rows = [list(r) for r in rows]
    if not rows or not rows[0]:
        raise InvalidParameterError("matrix needs at least one row and one column")
    ncols = len(rows[0])
    flat = []
    for r in rows:
        if len(r) != ncols:
            raise InvalidParameterError("ragged rows in matrix input")
        for v in r:
            flat.append(check_element(field, v, "matrix entry"))
    return MatrixGF(field, len(rows), ncols, tuple(flat))


def identity_matrix(field: Field, n: int) -> MatrixGF:
    return MatrixGF(field, n, n,
                    tuple(1 if i == j else 0 for i in range(n) for j in range(n)))


def zero_matrix(field: Field, rows: int, cols: int) -> MatrixGF:
    return MatrixGF(field, rows, cols, (0,) * (rows * cols))


def _same_shape(a: MatrixGF, b: MatrixGF):
    if a.field != b.field:
        raise IncompatibleFieldError("matrices over different fields")
    if (a.rows, a.cols) != (b.rows, b.cols):
        raise InvalidParameterError("matrix shapes differ")


def mat_sub(a: MatrixGF, b: MatrixGF) -> MatrixGF:
    _same_shape(a, b)
    f = a.field
    return MatrixGF(f, a.rows, a.cols,
                    tuple(f.sub(x, y) for x, y in zip(a.entries, b.entries)))


def mat_mul(a: MatrixGF, b: MatrixGF) -> MatrixGF:
    if a.field != b.field:
        raise IncompatibleFieldError("matrices over different fields")
    if a.cols != b.rows:
        raise InvalidParameterError("inner dimensions differ")
    f = a.field
    out = []
    for i in range(a.rows):
        arow = a.entries[i * a.cols:(i + 1) * a.cols]
        for j in range(b.cols):
            acc = 0
            for t, x in enumerate(arow):
                if x:
                    acc = f.add(acc, f.mul(x, b.entry(t, j)))
            out.append(acc)
    return MatrixGF(f, a.rows, b.cols, tuple(out))


def mat_transpose(a: MatrixGF) -> MatrixGF:
    return MatrixGF(a.field, a.cols, a.rows,
                    tuple(a.entry(r, c) for c in range(a.cols) for r in range(a.rows)))


def _row_reduce(field: Field, rows):
    """Full reduced echelon form in place; returns (nonzero rows, pivot cols)."""
    rows = [list(r) for r in rows]
    ncols = len(rows[0]) if rows else 0
    r = 0
    pivots = []
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = field.inv(rows[r][c])
        if inv != 1:
            rows[r] = [field.mul(inv, v) for v in rows[r]]
        for i in range(len(rows)):
            f = rows[i][c]
            if i != r and f:
                rows[i] = [field.sub(v, field.mul(f, w))
                           for v, w in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def mat_rank(a: MatrixGF) -> int:
    if a.field.q == 2:
        return _rank_bits([pack_row(a.row_list(r), 2) for r in range(a.rows)])
    reduced, _ = _row_reduce(a.field, a.to_lists())
    return len(reduced)


def mat_rref(a: MatrixGF) -> MatrixGF:
    """Reduced row echelon form with zero rows dropped.

    The result is the canonical generator of the row space: two matrices
    have equal row spaces exactly when their rrefs are equal.
    """
    reduced, _ = _row_reduce(a.field, a.to_lists())
    if not reduced:
        return zero_matrix(a.field, 1, a.cols)
    return MatrixGF(a.field, len(reduced), a.cols,
                    tuple(v for row in reduced for v in row))


# ---------------------------------------------------------------------------
# Packed rows.  A row vector over GF(q) of a given width is stored as the
# integer sum(entry_c * q**c), column 0 in the least significant digit.  For
# q = 2 this makes row reduction pure bit fiddling, which is the fast path
# every large enumeration and every distance check relies on.

def pack_row(row, q: int) -> int:
    v = 0
    for d in reversed(row):
        v = v * q + d
    return v


def unpack_row(value: int, q: int, width: int) -> list:
    out = []
    for _ in range(width):
        value, d = divmod(value, q)
        out.append(d)
    return out


def _rank_bits(rows) -> int:
    piv = {}
    for v in rows:
        while v:
            lb = v & -v
            u = piv.get(lb)
            if u is None:
                piv[lb] = v
                break
            v ^= u
    return len(piv)


def _rref_bits(rows):
    piv = {}
    for v in rows:
        for m in piv:
            if v & m:
                v ^= piv[m]
        if v:
            lb = v & -v
            for m in piv:
                if piv[m] & lb:
                    piv[m] ^= v
            piv[lb] = v
    return tuple(piv[m] for m in sorted(piv))


def packed_rank(rows, field: Field, width: int) -> int:
    if field.q == 2:
        return _rank_bits(list(rows))
    unpacked = [unpack_row(v, field.q, width) for v in rows]
    if not unpacked:
        return 0
    return len(_row_reduce(field, unpacked)[0])


def packed_rref(rows, field: Field, width: int) -> tuple:
    """Canonical packed rows of the row space, sorted by pivot column."""
    if field.q == 2:
        return _rref_bits(list(rows))
    unpacked = [unpack_row(v, field.q, width) for v in rows]
    if not unpacked:
        return ()
    reduced, _ = _row_reduce(field, unpacked)
    return tuple(pack_row(r, field.q) for r in reduced)


def rref_full_rank(rows, field: Field, width: int, expected: int) -> tuple:
    reduced = packed_rref(rows, field, width)
    if len(reduced) != expected:
        raise RankDeficiencyError(
            f"rows span {len(reduced)} dimensions, expected {expected}")
    return reduced
