"""Field arithmetic, subfield towers, and the packed matrix kernels."""

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from subspace_codes.errors import (
    IncompatibleFieldError,
    InvalidElementError,
    InvalidParameterError,
    RankDeficiencyError,
)
from subspace_codes.fields import (
    CONWAY_POLYS,
    SUPPORTED_Q,
    Extension,
    extension_field,
    ff_inv,
    ff_mul,
    field_of,
    identity_matrix,
    linearized_eval,
    mat_mul,
    mat_rank,
    mat_rref,
    mat_sub,
    mat_transpose,
    matrix,
    pack_row,
    packed_rank,
    packed_rref,
    rref_full_rank,
    unpack_row,
    zero_matrix,
)


def poly_mul_mod(a, b, modulus, p):
    """School-book polynomial arithmetic oracle, coefficients ascending."""
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            prod[i + j] = (prod[i + j] + ai * bj) % p
    deg = len(modulus) - 1
    while len(prod) > deg:
        lead = prod.pop()
        if lead:
            for t in range(deg):
                idx = len(prod) - deg + t
                prod[idx] = (prod[idx] - lead * modulus[t]) % p
    while len(prod) < deg:
        prod.append(0)
    return prod


def test_supported_orders_construct():
    for q in SUPPORTED_Q:
        f = field_of(q)
        assert f.q == q
        assert len(list(f.elements())) == q
        # cached constructor returns the same object
        assert field_of(q) is f


@pytest.mark.parametrize("q", [0, 1, 6, 10, 11, 12, 16, 25])
def test_unsupported_orders_rejected(q):
    with pytest.raises(InvalidParameterError):
        field_of(q)


@pytest.mark.parametrize("q", SUPPORTED_Q)
def test_field_axioms_exhaustive(q):
    """Commutativity, associativity, distributivity, inverses, identity.

    Full q^3 sweep; the largest supported base order keeps this cheap.
    """
    f = field_of(q)
    els = list(f.elements())
    for a in els:
        assert f.add(a, 0) == a
        assert f.mul(a, 1) == a
        assert f.add(a, f.neg(a)) == 0
        if a:
            assert f.mul(a, f.inv(a)) == 1
    for a in els:
        for b in els:
            assert f.add(a, b) == f.add(b, a)
            assert f.mul(a, b) == f.mul(b, a)
    for a in els:
        for b in els:
            for c in els:
                assert f.add(f.add(a, b), c) == f.add(a, f.add(b, c))
                assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
                assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))


def test_modulus_table_entries_are_primitive():
    """Every stored modulus is irreducible and has a primitive root.

    Brute force: no polynomial of lower degree divides it, and the
    residue-class generator has multiplicative order exactly p^e - 1.
    """
    for (p, e), modulus in CONWAY_POLYS.items():
        assert len(modulus) == e + 1
        assert modulus[-1] == 1  # monic
        if e == 1:
            continue
        q = p ** e
        # irreducibility: x^(p^e) == x mod modulus and gcd checks via
        # brute factor scan over monic divisors of degree <= e // 2
        for deg in range(1, e // 2 + 1):
            for tail in itertools.product(range(p), repeat=deg):
                div = list(tail) + [1]
                # long division of modulus by div over GF(p)
                rem = list(modulus)
                while len(rem) >= len(div) and any(rem):
                    if rem[-1] == 0:
                        rem.pop()
                        continue
                    shift = len(rem) - len(div)
                    factor = rem[-1] * pow(div[-1], -1, p) % p
                    for i, c in enumerate(div):
                        rem[shift + i] = (rem[shift + i] - factor * c) % p
                    rem.pop()
                assert any(rem), f"GF({p}^{e}) modulus has a degree-{deg} factor"
        # primitivity of x: order of the class of x divides q-1; check no
        # proper divisor (q-1)/ell works, ell prime
        def order_of_x():
            acc = [0, 1] + [0] * (e - 2) if e >= 2 else [1]
            n = 1
            while True:
                if acc[0] == 1 and not any(acc[1:]):
                    return n
                acc = poly_mul_mod(acc, [0, 1] + [0] * (e - 2), modulus, p)
                n += 1
                assert n <= q
        assert order_of_x() == q - 1


def test_ff_mul_and_inv_examples():
    f4 = field_of(4)
    # indices are base-p digit encodings: 2 is the generator g, 3 is g+1
    assert ff_mul(2, 2, f4) == 3
    assert ff_mul(2, 3, f4) == 1
    assert ff_inv(3, f4) == 2
    f9 = field_of(9)
    for a in range(1, 9):
        assert ff_mul(a, ff_inv(a, f9), f9) == 1
    with pytest.raises(ZeroDivisionError):
        ff_inv(0, f4)
    with pytest.raises(InvalidElementError):
        ff_mul(4, 1, f4)
    with pytest.raises(InvalidElementError):
        ff_mul(1, -1, f4)


def test_gf16_arithmetic_vs_polynomial_oracle():
    """Internal GF(16) (used by extension towers) against direct poly math."""
    f = Extension(field_of(4), 2).ext
    assert f.q == 16
    modulus = f.modulus
    for a in range(16):
        for b in range(16):
            expect = poly_mul_mod(f.digits(a), f.digits(b), modulus, 2)
            assert f.digits(f.mul(a, b)) == list(expect)


# ---------------------------------------------------------------- extensions


def test_embedding_is_injective_homomorphism():
    for q, m in [(2, 3), (3, 2), (4, 2), (5, 2)]:
        ext = extension_field(q, m)
        base = ext.base
        images = [ext.embed(a) for a in range(q)]
        assert len(set(images)) == q
        assert images[0] == 0 and images[1] == 1
        for a in range(q):
            for b in range(q):
                assert ext.embed(base.add(a, b)) == ext.ext.add(images[a], images[b])
                assert ext.embed(base.mul(a, b)) == ext.ext.mul(images[a], images[b])


def test_frobenius_fixes_embedded_subfield():
    for q, m in [(2, 4), (3, 3), (4, 2), (9, 2)]:
        ext = extension_field(q, m)
        f = ext.ext
        for a in range(q):
            x = ext.embed(a)
            assert f.pow(x, q) == x
        # Frobenius x -> x^q is additive on the whole extension
        els = range(f.q) if f.q <= 128 else range(0, f.q, 7)
        for x in els:
            for y in (1, 2, f.q - 1):
                assert f.pow(f.add(x, y), q) == f.add(f.pow(x, q), f.pow(y, q))


def test_expand_combine_roundtrip():
    for q, m in [(2, 3), (3, 2), (4, 2)]:
        ext = extension_field(q, m)
        for x in range(ext.ext.q):
            coords = ext.expand(x)
            assert len(coords) == m
            assert all(0 <= c < q for c in coords)
            assert ext.combine(coords) == x


def test_expand_is_subfield_linear():
    ext = extension_field(3, 2)
    f = ext.ext
    for x in range(f.q):
        for y in range(f.q):
            sx, sy, sxy = ext.expand(x), ext.expand(y), ext.expand(f.add(x, y))
            assert all(ext.base.add(a, b) == c for a, b, c in zip(sx, sy, sxy))
        for a in range(3):
            scaled = ext.expand(f.mul(ext.embed(a), x))
            assert all(ext.base.mul(a, c) == s for c, s in zip(ext.expand(x), scaled))


def test_custom_basis_roundtrip_and_rejection():
    base = field_of(2)
    f = extension_field(2, 3).ext
    g = f.generator
    alt = Extension(base, 3, basis=(f.pow(g, 2), g, 1))
    for x in range(8):
        assert alt.combine(alt.expand(x)) == x
    # 1, g, g+1 are dependent over GF(2)
    with pytest.raises(InvalidParameterError):
        Extension(base, 3, basis=(1, g, f.add(g, 1)))
    with pytest.raises(InvalidParameterError):
        Extension(base, 3, basis=(1, g))  # wrong length


def test_linearized_eval():
    q, m = 2, 4
    f = extension_field(q, m).ext
    # coefficient vector [0, 1] is the Frobenius itself
    for x in range(f.q):
        assert linearized_eval([0, 1], x, q, f) == f.pow(x, q)
    # additivity in the argument
    coeffs = [3, 1, 7]
    for x in range(f.q):
        for y in (1, 5, 11):
            lhs = linearized_eval(coeffs, f.add(x, y), q, f)
            rhs = f.add(linearized_eval(coeffs, x, q, f),
                        linearized_eval(coeffs, y, q, f))
            assert lhs == rhs
    # GF(q)-scalar linearity through the embedding
    ext = extension_field(3, 2)
    for a in range(3):
        for x in range(9):
            lam = ext.embed(a)
            lhs = linearized_eval([2, 4], ext.ext.mul(lam, x), 3, ext.ext)
            rhs = ext.ext.mul(lam, linearized_eval([2, 4], x, 3, ext.ext))
            assert lhs == rhs
    with pytest.raises(IncompatibleFieldError):
        linearized_eval([0, 1], 1, 4, extension_field(2, 3).ext)  # 8 not a power of 4


# ------------------------------------------------------------------ matrices


def test_matrix_constructor_validation():
    f = field_of(2)
    m = matrix(f, [[1, 0], [0, 1]])
    assert m.entry(0, 0) == 1 and m.entry(1, 0) == 0
    with pytest.raises(InvalidElementError):
        matrix(f, [[2, 0], [0, 1]])
    with pytest.raises(InvalidParameterError):
        matrix(f, [[1, 0], [1]])
    with pytest.raises(InvalidParameterError):
        matrix(f, [])


def test_rank_examples():
    f = field_of(2)
    assert mat_rank(zero_matrix(f, 3, 4)) == 0
    assert mat_rank(identity_matrix(f, 4)) == 4
    assert mat_rank(matrix(f, [[1, 1], [1, 1]])) == 1
    f3 = field_of(3)
    assert mat_rank(matrix(f3, [[1, 2], [2, 2]])) == 2
    # second row is 2 * first row mod 3
    assert mat_rank(matrix(f3, [[1, 2], [2, 1]])) == 1


def rank_by_span(field, m):
    """Row-space cardinality oracle: |rowspace| = q^rank."""
    rows = m.to_lists()
    vecs = set()
    for coeffs in itertools.product(range(field.q), repeat=m.rows):
        v = [0] * m.cols
        for c, row in zip(coeffs, rows):
            v = [field.add(x, field.mul(c, y)) for x, y in zip(v, row)]
        vecs.add(tuple(v))
    size = len(vecs)
    r = 0
    while field.q ** r < size:
        r += 1
    assert field.q ** r == size
    return r


@pytest.mark.parametrize("q", [2, 3])
def test_rank_matches_span_oracle(q):
    f = field_of(q)
    shapes = list(itertools.product(range(q), repeat=4))
    for flat in shapes:
        m = matrix(f, [list(flat[:2]), list(flat[2:])])
        assert mat_rank(m) == rank_by_span(f, m)


@given(st.sampled_from([2, 3, 4, 5]), st.data())
@settings(max_examples=60, deadline=None)
def test_rank_invariant_under_transpose(q, data):
    f = field_of(q)
    rows = data.draw(st.integers(1, 4))
    cols = data.draw(st.integers(1, 4))
    entries = data.draw(st.lists(st.integers(0, q - 1),
                                 min_size=rows * cols, max_size=rows * cols))
    m = matrix(f, [entries[r * cols:(r + 1) * cols] for r in range(rows)])
    assert mat_rank(m) == mat_rank(mat_transpose(m))


def test_rref_idempotent_and_canonical():
    """Two generator matrices of the same row space get the same RREF.

    Exhaustive over 2x3 binary matrices, grouped by literal row-space sets.
    """
    f = field_of(2)
    by_space = {}
    for flat in itertools.product(range(2), repeat=6):
        m = matrix(f, [list(flat[:3]), list(flat[3:])])
        space = frozenset(
            tuple(f.add(f.mul(a, m.entry(0, c)), f.mul(b, m.entry(1, c)))
                  for c in range(3))
            for a in range(2) for b in range(2))
        r = mat_rref(m)
        assert mat_rref(r) == r
        by_space.setdefault(space, set()).add(r.entries)
    for space, forms in by_space.items():
        assert len(forms) == 1


def test_rref_strips_zero_rows():
    f = field_of(3)
    r = mat_rref(matrix(f, [[0, 0], [1, 2], [2, 4 % 3]]))
    assert r.rows == 1
    assert r.row_list(0) == [1, 2]
    z = mat_rref(zero_matrix(f, 2, 3))
    assert z.rows == 1 and z.row_list(0) == [0, 0, 0]


def test_pack_unpack_roundtrip():
    for q in (2, 3, 5):
        for width in (1, 4, 7):
            for trial in range(25):
                row = [(trial * 31 + i * q + 1) % q for i in range(width)]
                assert unpack_row(pack_row(row, q), q, width) == row
    # column zero is the least significant digit
    assert pack_row([1, 0, 0], 2) == 1
    assert pack_row([0, 0, 1], 2) == 4
    assert pack_row([2, 1], 3) == 5


@pytest.mark.parametrize("q", [2, 3, 4])
def test_packed_rank_matches_matrix_rank(q):
    f = field_of(q)
    state = 12345
    for _ in range(40):
        rows, cols = 3, 5
        entries = []
        for _ in range(rows * cols):
            state = (state * 1103515245 + 12345) % (1 << 31)
            entries.append(state % q)
        lists = [entries[r * cols:(r + 1) * cols] for r in range(rows)]
        m = matrix(f, lists)
        packed = [pack_row(row, q) for row in lists]
        assert packed_rank(packed, f, cols) == mat_rank(m)
        rref_packed = packed_rref(packed, f, cols)
        rref_lists = [unpack_row(v, q, cols) for v in rref_packed]
        expect = mat_rref(m)
        if mat_rank(m) == 0:
            assert rref_packed == ()
        else:
            assert rref_lists == expect.to_lists()


def test_rref_full_rank_guard():
    f = field_of(2)
    rows = [pack_row([1, 0, 1], 2), pack_row([1, 0, 1], 2)]
    with pytest.raises(RankDeficiencyError):
        rref_full_rank(rows, f, 3, expected=2)
    ok = rref_full_rank([0b01, 0b10], f, 2, expected=2)
    assert ok == (0b01, 0b10)


def test_mat_mul_and_sub():
    f = field_of(3)
    a = matrix(f, [[1, 2], [0, 1]])
    b = matrix(f, [[2, 0], [1, 1]])
    assert mat_mul(a, b).to_lists() == [[(1 * 2 + 2 * 1) % 3, 2], [1, 1]]
    assert mat_sub(a, a).to_lists() == [[0, 0], [0, 0]]
    ident = identity_matrix(f, 2)
    assert mat_mul(a, ident) == a
