"""Clock and shift generators and the grid-walk construction of sl(n) / sl(n|n) bases."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

from .cyclo import CycNum, zeta_pow
from .exactmat import (
    ALTERNATING,
    PLAIN,
    Echelon,
    ExactMatrix,
    Parity,
    bracket,
    homogeneous_parity,
    superbracket,
)


class ModeError(ValueError):
    pass


@dataclass(frozen=True)
class AlgebraMode:
    kind: str  # "plain" or "super"
    n: int

    def __post_init__(self) -> None:
        if self.kind not in ("plain", "super"):
            raise ModeError(f"unknown algebra kind {self.kind!r}")
        low = 2 if self.kind == "plain" else 1
        if not isinstance(self.n, int) or self.n < low:
            raise ModeError(f"{self.kind} mode needs n >= {low}, got {self.n!r}")

    @classmethod
    def plain(cls, n: int) -> AlgebraMode:
        return cls("plain", n)

    @classmethod
    def super_(cls, n: int) -> AlgebraMode:
        return cls("super", n)

    @property
    def is_super(self) -> bool:
        return self.kind == "super"

    @property
    def dim(self) -> int:
        return 2 * self.n if self.is_super else self.n

    grid = dim

    @property
    def order(self) -> int:
        return self.dim

    @property
    def format(self) -> str:
        return ALTERNATING if self.is_super else PLAIN

    @property
    def a(self) -> CycNum:
        return zeta_pow(self.order, 1)

    def name(self) -> str:
        return f"sl({self.n}|{self.n})" if self.is_super else f"sl({self.n})"

    def bracket(
        self,
        x: ExactMatrix,
        y: ExactMatrix,
        p_x: Optional[Parity] = None,
        p_y: Optional[Parity] = None,
    ) -> ExactMatrix:
        if not self.is_super:
            return bracket(x, y)
        if p_x is None:
            p_x = homogeneous_parity(x)
        if p_y is None:
            p_y = homogeneous_parity(y)
        return superbracket(x, y, p_x, p_y)


@dataclass(frozen=True)
class GridIndex:
    m: int
    k: int

    def __str__(self) -> str:
        return f"T({self.m},{self.k})"


@dataclass(frozen=True)
class BasisElement:
    label: str
    matrix: ExactMatrix = field(compare=False)
    parity: Optional[Parity] = None
    index: Optional[GridIndex] = None


def is_admissible(mode: AlgebraMode, m: int, k: int) -> bool:
    g = mode.grid
    if not (1 <= m <= g and 1 <= k <= g):
        return False
    if mode.is_super:
        if m == 1 and k == g:
            return False
        if m == g and k == 1:
            return False
        return True
    if m in (1, g) and k == g:
        return False
    if m == g and k == 1:
        return False
    return True


def admissible_indices(mode: AlgebraMode) -> list[GridIndex]:
    g = mode.grid
    return [
        GridIndex(m, k)
        for m in range(1, g + 1)
        for k in range(1, g + 1)
        if is_admissible(mode, m, k)
    ]


@lru_cache(maxsize=None)
def _generators(mode: AlgebraMode) -> tuple[ExactMatrix, ExactMatrix]:
    d, N = mode.dim, mode.order
    D = ExactMatrix(d, N, {(i, i): zeta_pow(N, i) for i in range(d)}, mode.format)
    one = CycNum.one(N)
    S = ExactMatrix(d, N, {(i, (i + 1) % d): one for i in range(d)}, mode.format)
    return D, S


def build_generators(mode: AlgebraMode) -> tuple[BasisElement, BasisElement]:
    D, S = _generators(mode)
    if mode.is_super:
        return (
            BasisElement("D", D, Parity.EVEN),
            BasisElement("S", S, Parity.ODD),
        )
    return BasisElement("D", D), BasisElement("S", S)


def t_parity(m: int) -> Parity:
    """Parity of T(m, k) in the super case: T(1,1) is odd and each ad S flips."""
    return Parity.ODD if m % 2 else Parity.EVEN


class _Grid:
    """Lazily computed T(m, k) matrices following the generation recursion."""

    def __init__(self, mode: AlgebraMode) -> None:
        self.mode = mode
        self.D, self.S = _generators(mode)
        self._cache: dict[tuple[int, int], ExactMatrix] = {}

    def _br(self, x: ExactMatrix, px: Parity, y: ExactMatrix, py: Parity) -> ExactMatrix:
        return self.mode.bracket(x, y, px, py) if self.mode.is_super else bracket(x, y)

    def T(self, m: int, k: int) -> ExactMatrix:
        if m < 1 or k < 1 or m > self.mode.grid:
            raise IndexError(f"no grid point T({m},{k}) for {self.mode.name()}")
        key = (m, k)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        g = self.mode.grid
        E, O = Parity.EVEN, Parity.ODD
        if (m, k) == (1, 1):
            val = self._br(self.D, E, self.S, O)
        elif m == g:
            # bottom row: one more ad S applied to the row above
            val = self._br(self.S, O, self.T(g - 1, k), t_parity(g - 1))
        elif k == 1:
            val = self._br(self.S, O, self.T(m - 1, 1), t_parity(m - 1))
        else:
            val = self._br(self.D, E, self.T(m, k - 1), t_parity(m))
        self._cache[key] = val
        return val


@lru_cache(maxsize=None)
def grid(mode: AlgebraMode) -> _Grid:
    return _Grid(mode)


def generate_basis(mode: AlgebraMode) -> list[BasisElement]:
    """D, S, then every admissible T(m, k) in lexicographic (m, k) order."""
    D, S = build_generators(mode)
    g = grid(mode)
    out = [D, S]
    for idx in admissible_indices(mode):
        par = t_parity(idx.m) if mode.is_super else None
        out.append(BasisElement(str(idx), g.T(idx.m, idx.k), par, idx))
    return out


def closure_dimension(mode: AlgebraMode) -> int:
    """Dimension of the smallest bracket-closed space containing D and S.

    Independent of the grid construction: keeps a spanning set of the current
    span, brackets every new element against everything, and stops when no
    bracket enlarges the span.
    """
    D, S = _generators(mode)
    ech = Echelon(mode.order)
    span: list[ExactMatrix] = []
    frontier: list[ExactMatrix] = []
    for x in (D, S):
        if ech.add(x.as_vector()):
            frontier.append(x)
    while frontier:
        span_before = list(span)
        span.extend(frontier)
        fresh: list[ExactMatrix] = []
        pairs = [(x, y) for x in frontier for y in span_before]
        pairs += [
            (frontier[i], frontier[j])
            for i in range(len(frontier))
            for j in range(i, len(frontier))
        ]
        for x, y in pairs:
            if x is y and not mode.is_super:
                continue
            z = mode.bracket(x, y)
            if z and ech.add(z.as_vector()):
                fresh.append(z)
        frontier = fresh
    return ech.rank


def t_prefactor(mode: AlgebraMode, m: int, k: int) -> CycNum:
    a = mode.a
    sign = 1 if m % 2 == 1 else -1
    return ((1 - a) ** m) * ((1 - a**m) ** (k - 1)) * sign


def expected_matrix_T(mode: AlgebraMode, m: int, k: int) -> ExactMatrix:
    """Closed form for the off-diagonal rows, built directly without brackets.

    T(m, k) = (1-a)^m (1-a^m)^(k-1) (-1)^(m+1) * P, where row i of P holds
    a^(k i) in column (i + m) mod n.
    """
    if mode.is_super:
        raise ModeError("the closed form is stated for the plain algebra")
    n = mode.n
    if not (1 <= m <= n - 1 and 1 <= k <= n and is_admissible(mode, m, k)):
        raise IndexError(f"T({m},{k}) is outside the closed-form range for sl({n})")
    c = t_prefactor(mode, m, k)
    N = mode.order
    entries = {(i, (i + m) % n): c * zeta_pow(N, k * i) for i in range(n)}
    return ExactMatrix(n, N, entries, mode.format)
