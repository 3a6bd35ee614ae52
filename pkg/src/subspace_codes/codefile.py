"""Plain-text storage for constant-dimension codes.

File layout, all ASCII:

    subspace-code v1
    q=2
    ambient=6
    k=2
    d=2
    members=481
    construction=parallel n=2 s=1
    --
    100010|010001
    ...

The first line is the magic plus format version.  Header lines are
``key=value``; ``construction`` is optional and records how the code was
assembled so round labels and the predicted size can be recovered.  Lines
starting with ``#`` before the ``--`` separator are comments.  After the
separator comes one member per line: k groups of ``ambient`` base-q digit
characters joined by ``|``, row 0 first, column 0 as the leftmost digit of
a group.

Rows are stored in canonical (reduced echelon) form and that is part of
the format: the reader rejects non-canonical rows the same way it rejects
a stray digit, because every consumer downstream relies on members being
honest k-dimensional subspaces in normal form.  Corruption that stays
inside the format (a free entry changed to another field element) still
loads, and then surfaces as a duplicate or a distance violation during
verification rather than being repaired here.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bounds import CdcParams, block_cardinalities
from .construction import CDC
from .errors import CodeFileError, InvalidParameterError
from .fields import field_of, packed_rref

MAGIC = "subspace-code"
VERSION = 1


@dataclass(frozen=True)
class CodeFileHeader:
    version: int
    q: int
    ambient: int
    k: int
    d: int
    members: int
    construction: CdcParams | None


def _format_rows(value: int, q: int, ambient: int, k: int) -> str:
    base = q ** ambient
    groups = []
    for _ in range(k):
        value, row = divmod(value, base)
        digits = []
        for _ in range(ambient):
            row, dig = divmod(row, q)
            digits.append(chr(ord("0") + dig))
        groups.append("".join(digits))
    return "|".join(groups)


def write_code(code: CDC, path) -> None:
    """Serialize a code; the inverse of read_code up to round labels."""
    with open(path, "w") as fh:
        fh.write(f"{MAGIC} v{VERSION}\n")
        fh.write(f"q={code.q}\n")
        fh.write(f"ambient={code.ambient}\n")
        fh.write(f"k={code.k}\n")
        fh.write(f"d={code.d}\n")
        fh.write(f"members={len(code)}\n")
        p = code.params
        if p is not None and p.n is not None:
            fh.write(f"construction=parallel n={p.n} s={p.s}\n")
        fh.write("--\n")
        for i in range(len(code)):
            fh.write(_format_rows(int(code.codes[i]), code.q,
                                  code.ambient, code.k))
            fh.write("\n")


def _parse_construction(raw: str, q: int, ambient: int, d: int, k: int):
    parts = raw.split()
    if not parts or parts[0] != "parallel":
        raise CodeFileError(f"unknown construction {raw!r}")
    fields = {}
    for p in parts[1:]:
        key, _, val = p.partition("=")
        try:
            fields[key] = int(val)
        except ValueError:
            raise CodeFileError(f"bad construction field {p!r}") from None
    if set(fields) != {"n", "s"}:
        raise CodeFileError(f"construction needs n and s, got {raw!r}")
    try:
        return CdcParams(q, ambient, d, k, n=fields["n"], s=fields["s"]).validate()
    except InvalidParameterError as exc:
        raise CodeFileError(f"inconsistent construction header: {exc}") from None


def read_code(path):
    """Parse a code file; returns (CodeFileHeader, CDC).

    Structural problems (bad magic, missing keys, wrong row shapes, digits
    outside the field, declared member count not matching the body) raise
    CodeFileError.  Mathematical problems (duplicates, wrong distance) are
    the verifier's business and pass through silently here.
    """
    with open(path) as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise CodeFileError("empty file")
    first = lines[0].split()
    if len(first) != 2 or first[0] != MAGIC or not first[1].startswith("v"):
        raise CodeFileError(f"bad magic line {lines[0]!r}")
    try:
        version = int(first[1][1:])
    except ValueError:
        raise CodeFileError(f"bad version in {lines[0]!r}") from None
    if version != VERSION:
        raise CodeFileError(f"unsupported format version {version}")

    header: dict = {}
    body_at = None
    for idx, line in enumerate(lines[1:], start=1):
        if line == "--":
            body_at = idx + 1
            break
        if not line or line.startswith("#"):
            continue
        key, eq, val = line.partition("=")
        if not eq:
            raise CodeFileError(f"expected key=value, got {line!r}")
        if key in header:
            raise CodeFileError(f"duplicate header key {key!r}")
        header[key] = val
    if body_at is None:
        raise CodeFileError("missing -- separator")

    try:
        q = int(header["q"])
        ambient = int(header["ambient"])
        k = int(header["k"])
        d = int(header["d"])
        members = int(header["members"])
    except KeyError as exc:
        raise CodeFileError(f"missing header key {exc.args[0]!r}") from None
    except ValueError:
        raise CodeFileError("non-integer header value") from None
    if q < 2 or ambient < 1 or not 1 <= k <= ambient or members < 0:
        raise CodeFileError(
            f"implausible header: q={q} ambient={ambient} k={k} members={members}")
    if q > 9:
        raise CodeFileError(f"single-digit storage cannot hold q={q}")
    try:
        fieldobj = field_of(q)
    except InvalidParameterError as exc:
        raise CodeFileError(str(exc)) from None

    construction = None
    if "construction" in header:
        construction = _parse_construction(header["construction"], q, ambient, d, k)

    base = q ** ambient
    values = []
    for line in lines[body_at:]:
        if not line:
            continue
        groups = line.split("|")
        if len(groups) != k:
            raise CodeFileError(
                f"member line has {len(groups)} rows, expected {k}: {line!r}")
        rows = []
        for g in groups:
            if len(g) != ambient:
                raise CodeFileError(
                    f"row of width {len(g)}, expected {ambient}: {g!r}")
            row = 0
            for ch in reversed(g):
                dig = ord(ch) - ord("0")
                if not 0 <= dig < q:
                    raise CodeFileError(f"digit {ch!r} outside GF({q})")
                row = row * q + dig
            rows.append(row)
        # the format stores canonical generator rows; anything else is a
        # malformed file, not a code with surprising members
        if packed_rref(rows, fieldobj, ambient) != tuple(rows):
            raise CodeFileError(
                f"member {len(values) + 1} rows are not in canonical form")
        value = 0
        for r in reversed(rows):
            value = value * base + r
        values.append(value)
    if len(values) != members:
        raise CodeFileError(
            f"header declares {members} members, body has {len(values)}")

    use_np = q == 2 and k * ambient <= 63
    codes = np.asarray(values, dtype=np.uint64) if use_np else values

    rounds = None
    if construction is not None:
        sizes = block_cardinalities(q, construction.n, k, d, construction.s)
        if sum(sizes) == len(values):
            if use_np:
                rounds = np.repeat(np.arange(len(sizes), dtype=np.uint16), sizes)
            else:
                rounds = [b for b, c in enumerate(sizes) for _ in range(c)]
    hdr = CodeFileHeader(version, q, ambient, k, d, members, construction)
    return hdr, CDC(q, ambient, k, d, codes, rounds, construction)
