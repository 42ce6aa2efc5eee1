"""Square matrices over Q(zeta_N), optionally carrying the alternating super format.

Matrices are immutable and store only their nonzero entries; every operation
has dense semantics. Parity follows the alternating format: basis vector i is
even for even i (0-based), so entry (i, j) has parity (i + j) mod 2.
"""

from __future__ import annotations

import enum
from typing import Iterable, Iterator, Optional, Sequence

from .cyclo import CycNum, OrderMismatchError, Scalar

PLAIN = "plain"
ALTERNATING = "alternating"


class ShapeError(ValueError):
    """Dimension, order or format mismatch between operands."""


class ParityError(ValueError):
    """Inhomogeneous input or a declared parity that disagrees with the support."""


class NotInSpanError(ValueError):
    """Raised by basis decomposition when the target lies outside the span."""


class Parity(enum.IntEnum):
    EVEN = 0
    ODD = 1

    def __add__(self, other: int) -> Parity:  # type: ignore[override]
        return Parity((int(self) + int(other)) % 2)

    def __str__(self) -> str:
        return self.name.lower()


INHOMOGENEOUS = "inhomogeneous"


class ExactMatrix:
    __slots__ = ("dim", "order", "format", "_entries", "_hash")

    def __init__(
        self,
        dim: int,
        order: int,
        entries: Optional[dict[tuple[int, int], CycNum]] = None,
        format: str = PLAIN,
    ) -> None:
        if dim < 1:
            raise ShapeError(f"dimension must be positive, got {dim}")
        if format not in (PLAIN, ALTERNATING):
            raise ShapeError(f"unknown format {format!r}")
        clean = {}
        for (i, j), v in (entries or {}).items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise ShapeError(f"entry ({i}, {j}) outside a {dim}x{dim} matrix")
            if not isinstance(v, CycNum):
                v = CycNum.from_scalar(order, v)
            elif v.order != order:
                raise OrderMismatchError(f"entry of order {v.order} in order-{order} matrix")
            if v:
                clean[(i, j)] = v
        self.dim = dim
        self.order = order
        self.format = format
        self._entries = clean
        self._hash = None

    @classmethod
    def _wrap(cls, like: ExactMatrix, entries: dict) -> ExactMatrix:
        # entries already validated and nonzero
        obj = cls.__new__(cls)
        obj.dim = like.dim
        obj.order = like.order
        obj.format = like.format
        obj._entries = entries
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, dim: int, order: int, format: str = PLAIN) -> ExactMatrix:
        return cls(dim, order, {}, format)

    @classmethod
    def identity(cls, dim: int, order: int, format: str = PLAIN) -> ExactMatrix:
        one = CycNum.one(order)
        return cls(dim, order, {(i, i): one for i in range(dim)}, format)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], order: int, format: str = PLAIN) -> ExactMatrix:
        dim = len(rows)
        entries = {}
        for i, row in enumerate(rows):
            if len(row) != dim:
                raise ShapeError("rows must form a square matrix")
            for j, v in enumerate(row):
                entries[(i, j)] = v
        return cls(dim, order, entries, format)

    def __getitem__(self, ij: tuple[int, int]) -> CycNum:
        v = self._entries.get(ij)
        return v if v is not None else CycNum.zero(self.order)

    def nonzero(self) -> Iterator[tuple[tuple[int, int], CycNum]]:
        return iter(sorted(self._entries.items()))

    @property
    def support(self) -> frozenset:
        return frozenset(self._entries)

    def is_zero(self) -> bool:
        return not self._entries

    def __bool__(self) -> bool:
        return bool(self._entries)

    def rows(self) -> list[list[CycNum]]:
        return [[self[(i, j)] for j in range(self.dim)] for i in range(self.dim)]

    def _check(self, other: ExactMatrix) -> None:
        if self.dim != other.dim:
            raise ShapeError(f"dimension mismatch: {self.dim} vs {other.dim}")
        if self.order != other.order:
            raise OrderMismatchError(f"order mismatch: {self.order} vs {other.order}")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (
            self.dim == other.dim
            and self.order == other.order
            and self._entries == other._entries
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.dim, self.order, frozenset(self._entries.items())))
        return self._hash

    def __add__(self, other: ExactMatrix) -> ExactMatrix:
        self._check(other)
        out = dict(self._entries)
        for k, v in other._entries.items():
            w = out.get(k)
            w = v if w is None else w + v
            if w:
                out[k] = w
            else:
                out.pop(k, None)
        return ExactMatrix._wrap(self, out)

    def __neg__(self) -> ExactMatrix:
        return ExactMatrix._wrap(self, {k: -v for k, v in self._entries.items()})

    def __sub__(self, other: ExactMatrix) -> ExactMatrix:
        return self + (-other)

    def scale(self, c: CycNum | Scalar) -> ExactMatrix:
        if not isinstance(c, CycNum):
            c = CycNum.from_scalar(self.order, c)
        elif c.order != self.order:
            raise OrderMismatchError(f"order mismatch: {c.order} vs {self.order}")
        if not c:
            return ExactMatrix._wrap(self, {})
        return ExactMatrix._wrap(self, {k: c * v for k, v in self._entries.items()})

    def __rmul__(self, c: CycNum | Scalar) -> ExactMatrix:
        return self.scale(c)

    def __matmul__(self, other: ExactMatrix) -> ExactMatrix:
        return mat_mul(self, other)

    def __pow__(self, e: int) -> ExactMatrix:
        if e < 0:
            raise ValueError("negative matrix powers are not supported")
        out = ExactMatrix.identity(self.dim, self.order, self.format)
        for _ in range(e):
            out = out @ self
        return out

    def with_format(self, format: str) -> ExactMatrix:
        obj = ExactMatrix._wrap(self, self._entries)
        obj.format = format
        return obj

    def as_vector(self) -> dict[int, CycNum]:
        return {i * self.dim + j: v for (i, j), v in self._entries.items()}

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "order": self.order,
            "format": self.format,
            "entries": [[v.to_json() for v in row] for row in self.rows()],
        }

    @classmethod
    def from_json(cls, obj: dict) -> ExactMatrix:
        order = int(obj["order"])
        rows = [[CycNum.from_json(v) for v in row] for row in obj["entries"]]
        m = cls.from_rows(rows, order, obj.get("format", PLAIN))
        if m.dim != int(obj["dim"]):
            raise ShapeError("declared dim does not match entries")
        return m

    def __repr__(self) -> str:
        return f"ExactMatrix(dim={self.dim}, order={self.order}, nnz={len(self._entries)})"

    def __str__(self) -> str:
        cells = [[str(v) for v in row] for row in self.rows()]
        width = max(len(c) for row in cells for c in row)
        return "\n".join("[" + "  ".join(c.rjust(width) for c in row) + "]" for row in cells)


def mat_mul(x: ExactMatrix, y: ExactMatrix) -> ExactMatrix:
    x._check(y)
    by_row: dict[int, list] = {}
    for (k, j), v in y._entries.items():
        by_row.setdefault(k, []).append((j, v))
    out: dict[tuple[int, int], CycNum] = {}
    for (i, k), u in x._entries.items():
        for j, v in by_row.get(k, ()):
            w = out.get((i, j))
            out[(i, j)] = u * v if w is None else w + u * v
    return ExactMatrix._wrap(x, {k: v for k, v in out.items() if v})


def bracket(x: ExactMatrix, y: ExactMatrix) -> ExactMatrix:
    return mat_mul(x, y) - mat_mul(y, x)


def homogeneous_parity(x: ExactMatrix) -> Parity | str:
    """Parity read off the support; the zero matrix counts as even."""
    if x.format != ALTERNATING:
        raise ShapeError("parity needs the alternating format")
    seen = {(i + j) % 2 for (i, j) in x._entries}
    if len(seen) > 1:
        return INHOMOGENEOUS
    return Parity(seen.pop()) if seen else Parity.EVEN


def superbracket(x: ExactMatrix, y: ExactMatrix, p_x: Parity, p_y: Parity) -> ExactMatrix:
    """Graded commutator xy - (-1)^(p_x p_y) yx, with the declared parities cross-checked."""
    for m, p in ((x, p_x), (y, p_y)):
        actual = homogeneous_parity(m)
        if actual == INHOMOGENEOUS:
            raise ParityError("superbracket of an inhomogeneous matrix")
        if m and actual != p:
            raise ParityError(f"declared parity {Parity(p)} but support is {actual}")
    if p_x and p_y:
        return mat_mul(x, y) + mat_mul(y, x)
    return mat_mul(x, y) - mat_mul(y, x)


def trace(x: ExactMatrix) -> CycNum:
    total = CycNum.zero(x.order)
    for i in range(x.dim):
        total = total + x[(i, i)]
    return total


def supertrace(x: ExactMatrix) -> CycNum:
    if x.format != ALTERNATING:
        raise ShapeError("supertrace needs the alternating format")
    total = CycNum.zero(x.order)
    for i in range(x.dim):
        total = total + x[(i, i)] if i % 2 == 0 else total - x[(i, i)]
    return total


class Echelon:
    """Incremental row-echelon form over the field.

    Vectors are sparse dicts ``index -> CycNum``. Each stored row is scaled so
    its pivot (the first nonzero index) equals one. With ``track=True`` every
    row also carries its expression in terms of the inserted vectors, which is
    what basis decomposition needs.
    """

    def __init__(self, order: int, track: bool = False) -> None:
        self.order = order
        self.track = track
        self._rows: dict[int, dict[int, CycNum]] = {}
        self._combo: dict[int, dict[int, CycNum]] = {}
        self._pivots: list[int] = []
        self._count = 0

    @property
    def rank(self) -> int:
        return len(self._rows)

    def reduce(self, vec: dict[int, CycNum]) -> tuple[dict, dict]:
        """Return (residual, multipliers) with vec = residual + sum mult[p] * row[p]."""
        v = dict(vec)
        mult: dict[int, CycNum] = {}
        for p in self._pivots:
            c = v.get(p)
            if c is None:
                continue
            mult[p] = c
            for idx, r in self._rows[p].items():
                w = v.get(idx)
                w = -(c * r) if w is None else w - c * r
                if w:
                    v[idx] = w
                else:
                    del v[idx]
        return v, mult

    def add(self, vec: dict[int, CycNum]) -> bool:
        """Insert a vector; return True when it raised the rank."""
        tag = self._count
        self._count += 1
        residual, mult = self.reduce(vec)
        if not residual:
            return False
        p = min(residual)
        inv = residual[p].inv()
        row = {k: v * inv for k, v in residual.items()}
        self._rows[p] = row
        if self.track:
            # row = inv * (vec_tag - sum mult[q] * row_q)
            combo: dict[int, CycNum] = {tag: inv}
            for q, c in mult.items():
                for t, w in self._combo[q].items():
                    prev = combo.get(t)
                    term = -(inv * c * w)
                    combo[t] = term if prev is None else prev + term
            self._combo[p] = {t: w for t, w in combo.items() if w}
        self._pivots.append(p)
        self._pivots.sort()
        return True

    def coordinates(self, vec: dict[int, CycNum]) -> Optional[dict[int, CycNum]]:
        """Coefficients over the inserted vectors, or None if outside the span."""
        if not self.track:
            raise RuntimeError("coordinates need a tracking echelon")
        residual, mult = self.reduce(vec)
        if residual:
            return None
        out: dict[int, CycNum] = {}
        for p, c in mult.items():
            for t, w in self._combo[p].items():
                prev = out.get(t)
                out[t] = c * w if prev is None else prev + c * w
        return {t: w for t, w in out.items() if w}


def _same_shape(xs: Sequence[ExactMatrix]) -> None:
    for x in xs[1:]:
        xs[0]._check(x)


def rank(xs: Sequence[ExactMatrix]) -> int:
    if not xs:
        return 0
    _same_shape(xs)
    ech = Echelon(xs[0].order)
    for x in xs:
        ech.add(x.as_vector())
    return ech.rank


def rank_vectors(vectors: Iterable[dict[int, CycNum]], order: int) -> int:
    ech = Echelon(order)
    for v in vectors:
        ech.add(v)
    return ech.rank


def is_proportional(x: ExactMatrix, y: ExactMatrix) -> Optional[CycNum]:
    """Return c with y == c * x, or None. ``x`` must be nonzero."""
    x._check(y)
    if not x:
        raise ValueError("reference matrix must be nonzero")
    if not y:
        return CycNum.zero(x.order)
    if x.support != y.support:
        return None
    (ij, x0), *_ = x.nonzero()
    c = y[ij] / x0
    if all(c * v == y[k] for k, v in x._entries.items()):
        return c
    return None


class Decomposer:
    """Exact coordinates over a fixed linearly independent list of matrices."""

    def __init__(self, basis: Sequence[ExactMatrix]) -> None:
        if not basis:
            raise ValueError("empty basis")
        _same_shape(basis)
        self.dim = basis[0].dim
        self.order = basis[0].order
        self.size = len(basis)
        self._ech = Echelon(self.order, track=True)
        for b in basis:
            if not self._ech.add(b.as_vector()):
                raise ValueError("basis matrices are linearly dependent")

    def __call__(self, x: ExactMatrix) -> list[CycNum]:
        if x.dim != self.dim:
            raise ShapeError(f"dimension mismatch: {x.dim} vs {self.dim}")
        if x.order != self.order:
            raise OrderMismatchError(f"order mismatch: {x.order} vs {self.order}")
        coords = self._ech.coordinates(x.as_vector())
        if coords is None:
            raise NotInSpanError("matrix lies outside the span of the basis")
        zero = CycNum.zero(self.order)
        return [coords.get(t, zero) for t in range(self.size)]


def decompose_in_basis(x: ExactMatrix, basis: Sequence[ExactMatrix]) -> list[CycNum]:
    return Decomposer(basis)(x)
