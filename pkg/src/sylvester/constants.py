"""Structure constants of the generated algebra in the grid basis."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Optional

from .cyclo import CycNum
from .exactmat import Decomposer, Echelon, ExactMatrix, NotInSpanError, Parity
from .genesis import AlgebraMode, BasisElement, generate_basis, is_admissible


class ClosureViolation(RuntimeError):
    """A bracket of basis elements left the span of the basis."""


Coords = dict[int, CycNum]


@dataclass
class StructureTable:
    mode: AlgebraMode
    labels: list[str]
    parities: Optional[list[Parity]]
    entries: list[tuple[int, int, int, CycNum]]
    dropped: list[str] = field(default_factory=list)
    _index: dict = field(default=None, init=False, repr=False, compare=False)

    def _lookup(self) -> dict[tuple[int, int], Coords]:
        if self._index is None:
            idx: dict[tuple[int, int], Coords] = {}
            for i, j, k, c in self.entries:
                idx.setdefault((i, j), {})[k] = c
            self._index = idx
        return self._index

    def bracket(self, i: int, j: int) -> Coords:
        """Coordinates of [b_i, b_j], read from the table alone."""
        idx = self._lookup()
        if self.mode.is_super:
            return dict(idx.get((i, j), {}))
        if i == j:
            return {}
        if i < j:
            return dict(idx.get((i, j), {}))
        return {k: -c for k, c in idx.get((j, i), {}).items()}

    def bracket_vec(self, u: Coords, v: Coords) -> Coords:
        out: Coords = {}
        for a, ca in u.items():
            for b, cb in v.items():
                for k, c in self.bracket(a, b).items():
                    term = ca * cb * c
                    prev = out.get(k)
                    out[k] = term if prev is None else prev + term
        return {k: c for k, c in out.items() if c}

    def parity(self, i: int) -> int:
        return int(self.parities[i]) if self.parities else 0

    def to_json(self) -> dict:
        return {
            "mode": self.mode.kind,
            "n": self.mode.n,
            "labels": list(self.labels),
            "parities": None if self.parities is None else [str(p) for p in self.parities],
            "dropped": list(self.dropped),
            "entries": [[i, j, k, c.to_json()] for i, j, k, c in self.entries],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":")) + "\n"

    @classmethod
    def from_json(cls, obj: dict) -> StructureTable:
        mode = AlgebraMode(obj["mode"], int(obj["n"]))
        pars = obj.get("parities")
        return cls(
            mode=mode,
            labels=list(obj["labels"]),
            parities=None if pars is None else [Parity[p.upper()] for p in pars],
            entries=[(int(i), int(j), int(k), CycNum.from_json(c)) for i, j, k, c in obj["entries"]],
            dropped=list(obj.get("dropped", [])),
        )

    @classmethod
    def loads(cls, text: str) -> StructureTable:
        return cls.from_json(json.loads(text))


def independent_basis(mode: AlgebraMode) -> tuple[list[BasisElement], list[str]]:
    """Greedy maximal independent prefix-subset of the generated list, plus dropped labels."""
    ech = Echelon(mode.order)
    kept, dropped = [], []
    for b in generate_basis(mode):
        if ech.add(b.matrix.as_vector()):
            kept.append(b)
        else:
            dropped.append(b.label)
    return kept, dropped


def _parity_of(mode: AlgebraMode, b: BasisElement) -> Parity:
    if b.parity is not None:
        return b.parity
    return Parity.EVEN


def build_table(mode: AlgebraMode) -> StructureTable:
    basis, dropped = independent_basis(mode)
    if dropped and not mode.is_super:
        raise ClosureViolation(f"generated sl({mode.n}) list is dependent: {dropped}")
    dec = Decomposer([b.matrix for b in basis])
    pars = [_parity_of(mode, b) for b in basis] if mode.is_super else None
    entries = []
    n = len(basis)
    if mode.is_super:
        pairs = itertools.product(range(n), repeat=2)
    else:
        pairs = itertools.combinations(range(n), 2)
    for i, j in pairs:
        x, y = basis[i].matrix, basis[j].matrix
        if mode.is_super:
            z = mode.bracket(x, y, pars[i], pars[j])
        else:
            z = mode.bracket(x, y)
        try:
            coords = dec(z)
        except NotInSpanError as exc:
            raise ClosureViolation(f"[{basis[i].label}, {basis[j].label}] leaves the span") from exc
        entries.extend((i, j, k, c) for k, c in enumerate(coords) if c)
    return StructureTable(mode, [b.label for b in basis], pars, entries, dropped)


@dataclass
class JacobiCheck:
    ok: bool
    triples: int
    failing: Optional[tuple[int, int, int]] = None

    def __bool__(self) -> bool:
        return self.ok


def verify_jacobi_table(table: StructureTable) -> JacobiCheck:
    """(Super) Jacobi identity on basis triples, computed from the table only.

    Uses [x,[y,z]] = [[x,y],z] + (-1)^(p_x p_y) [y,[x,z]]. Plain tables are
    checked on i < j < k; super tables on all ordered triples since repeated
    odd elements give nontrivial identities.
    """
    size = len(table.labels)
    if table.mode.is_super:
        triples = itertools.product(range(size), repeat=3)
    else:
        triples = itertools.combinations(range(size), 3)
    count = 0
    for i, j, k in triples:
        count += 1
        lhs = table.bracket_vec({i: CycNum.one(table.mode.order)}, table.bracket(j, k))
        first = table.bracket_vec(table.bracket(i, j), {k: CycNum.one(table.mode.order)})
        second = table.bracket_vec({j: CycNum.one(table.mode.order)}, table.bracket(i, k))
        sign = -1 if table.parity(i) and table.parity(j) else 1
        rhs = dict(first)
        for key, c in second.items():
            term = c * sign
            prev = rhs.get(key)
            rhs[key] = term if prev is None else prev + term
        rhs = {key: c for key, c in rhs.items() if c}
        if lhs != rhs:
            return JacobiCheck(False, count, (i, j, k))
    return JacobiCheck(True, count)


def table_matches_matrices(table: StructureTable) -> bool:
    """Rebuild every basis bracket from the table and compare with the matrix bracket."""
    basis, _ = independent_basis(table.mode)
    mats = [b.matrix for b in basis]
    if [b.label for b in basis] != table.labels:
        return False
    size = len(mats)
    for i, j in itertools.product(range(size), repeat=2):
        if table.mode.is_super:
            z = table.mode.bracket(mats[i], mats[j], table.parities[i], table.parities[j])
        else:
            z = table.mode.bracket(mats[i], mats[j])
        acc = ExactMatrix.zero(z.dim, z.order, z.format)
        for k, c in table.bracket(i, j).items():
            acc = acc + mats[k].scale(c)
        if acc != z:
            return False
    return True


def support_report(table: StructureTable) -> tuple[int, list[tuple[str, str, int]]]:
    """Check single-term support of brackets of off-diagonal T's (plain mode).

    Returns the number of pairs examined where the reduced target is an
    admissible off-diagonal index, and the exceptions among them.
    """
    mode = table.mode
    g = mode.grid
    pos = {lab: i for i, lab in enumerate(table.labels)}
    offdiag = []
    for lab in table.labels:
        if lab.startswith("T("):
            m, k = (int(x) for x in lab[2:-1].split(","))
            if m < g:
                offdiag.append((lab, m, k))
    examined, exceptions = 0, []
    for (la, m, k), (lb, m2, k2) in itertools.combinations(offdiag, 2):
        mt, kt = (m + m2 - 1) % g + 1, (k + k2 - 1) % g + 1
        if mt == g or not is_admissible(mode, mt, kt):
            continue
        examined += 1
        size = len(table.bracket(pos[la], pos[lb]))
        if size > 1:
            exceptions.append((la, lb, size))
    return examined, exceptions
