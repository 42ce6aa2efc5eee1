"""The unitary clock-shift monomials J(m1, m2) and their trigonometric brackets.

J(m1, m2) = zeta_2n^(m1 m2) D^m1 S^m2 lives in Q(zeta_2n) for every n, since the
phase needs a square root of zeta_n. The sine of a rational multiple of pi is
never evaluated numerically: -2i sin(pi d / n) is exactly zeta_2n^-d - zeta_2n^d.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .cyclo import CycNum, zeta_pow
from .exactmat import Echelon, ExactMatrix, bracket, rank, trace
from .genesis import AlgebraMode, build_generators
from .records import MATCH, COEFFICIENT_MISMATCH, RelationRecord, check, relation

PRINTED = "printed"
HALF_ANGLE = "half-angle"


@dataclass(frozen=True)
class TorusIndex:
    m1: int
    m2: int

    def plus(self, other: TorusIndex, n: int) -> TorusIndex:
        return TorusIndex((self.m1 + other.m1) % n, (self.m2 + other.m2) % n)

    def __str__(self) -> str:
        return f"({self.m1},{self.m2})"


@dataclass(frozen=True)
class JElement:
    index: TorusIndex
    matrix: ExactMatrix


def _mono(n: int, p: int, q: int) -> ExactMatrix:
    # D^p S^q has entry zeta_n^(p i) at (i, i+q)
    N = 2 * n
    return ExactMatrix(n, N, {(i, (i + q) % n): zeta_pow(N, 2 * p * i) for i in range(n)})


def build_J(n: int, idx) -> JElement:
    """J at the given integer labels, taken literally (no reduction mod n)."""
    if n < 2:
        raise ValueError("the J basis needs n >= 2")
    if not isinstance(idx, TorusIndex):
        idx = TorusIndex(*idx)
    N = 2 * n
    phase = zeta_pow(N, idx.m1 * idx.m2)
    return JElement(idx, _mono(n, idx.m1, idx.m2).scale(phase))


def j_basis(n: int) -> list[JElement]:
    return [build_J(n, (m1, m2)) for m1 in range(n) for m2 in range(n)]


def verify_weyl(n: int) -> RelationRecord:
    mode = AlgebraMode.plain(n)
    D, S = (e.matrix for e in build_generators(mode))
    return relation(
        f"weyl[n={n}]",
        "S*D",
        S @ D,
        "D*S",
        D @ S,
        mode.a,
        locus="commutation of the clock and shift generators",
    )


def sine_coefficients(n: int, d: int) -> dict[str, CycNum]:
    N = 2 * n
    return {
        PRINTED: zeta_pow(N, -2 * d) - zeta_pow(N, 2 * d),
        HALF_ANGLE: zeta_pow(N, -d) - zeta_pow(N, d),
    }


def verify_sine_bracket(n: int) -> list[RelationRecord]:
    """One record per ordered index pair.

    The reference is J at the literal index sum; the printed 2 pi / n sine is
    the primary prediction and the pi / n variant is carried as an alternative.
    A second alternative compares against J at the reduced label, which
    differs from the literal one by a sign when the phase wraps.
    """
    J = {(e.index.m1, e.index.m2): e.matrix for e in j_basis(n)}
    out = []
    for (m1, m2), (k1, k2) in itertools.product(sorted(J), repeat=2):
        value = bracket(J[(m1, m2)], J[(k1, k2)])
        d = m1 * k2 - m2 * k1
        literal = build_J(n, (m1 + k1, m2 + k2)).matrix
        reduced = J[((m1 + k1) % n, (m2 + k2) % n)]
        coeffs = sine_coefficients(n, d)
        out.append(
            relation(
                f"sine[n={n}]({m1},{m2})x({k1},{k2})",
                f"[J({m1},{m2}),J({k1},{k2})]",
                value,
                f"J({m1 + k1},{m2 + k2})",
                literal,
                coeffs[PRINTED],
                locus="sine-algebra bracket, -2i sin(2 pi/n (m1 k2 - m2 k1))",
                alternatives=(
                    (HALF_ANGLE, f"J({m1 + k1},{m2 + k2})", literal, coeffs[HALF_ANGLE]),
                    (
                        HALF_ANGLE + "@reduced",
                        f"J({(m1 + k1) % n},{(m2 + k2) % n})",
                        reduced,
                        coeffs[HALF_ANGLE],
                    ),
                ),
            )
        )
    return out


@dataclass
class SineSummary:
    n: int
    pairs: int
    printed_matches: int
    half_angle_matches: int
    reduced_matches: int
    proportional_to_reduced: int
    center_ok: bool
    weyl: RelationRecord
    records: list[RelationRecord]

    @property
    def winner(self) -> str | None:
        full = [
            name
            for name, c in ((PRINTED, self.printed_matches), (HALF_ANGLE, self.half_angle_matches))
            if c == self.pairs
        ]
        return full[0] if len(full) == 1 else None

    def summary_records(self) -> list[RelationRecord]:
        z = ExactMatrix.zero(self.n, 2 * self.n)
        out = [self.weyl]
        for name, c in ((PRINTED, self.printed_matches), (HALF_ANGLE, self.half_angle_matches)):
            rec = check(
                f"sine[n={self.n}].convention[{name}]",
                "[J_m, J_k] for all index pairs",
                z,
                c == self.pairs,
                locus="sine-algebra bracket coefficient",
                note=f"{c}/{self.pairs} pairs match",
            )
            if c != self.pairs:
                rec.status = COEFFICIENT_MISMATCH
            out.append(rec)
        out.append(
            check(
                f"sine[n={self.n}].unique-convention",
                "exactly one sine convention fits every pair",
                z,
                self.winner is not None,
                note=f"winner: {self.winner}",
            )
        )
        out.append(
            check(
                f"sine[n={self.n}].center",
                "[J(0,0), J_k] = 0 for all k",
                z,
                self.center_ok,
                locus="the identity J(0,0) spans the center",
            )
        )
        out.append(
            check(
                f"sine[n={self.n}].proportional",
                "[J_m, J_k] proportional to J((m+k) mod n)",
                z,
                self.proportional_to_reduced == self.pairs,
                note=f"{self.proportional_to_reduced}/{self.pairs} pairs",
            )
        )
        return out

    def to_json(self, full: bool = False) -> dict:
        return {
            "n": self.n,
            "pairs": self.pairs,
            "matches": {
                PRINTED: self.printed_matches,
                HALF_ANGLE: self.half_angle_matches,
                HALF_ANGLE + "@reduced": self.reduced_matches,
            },
            "proportional_to_reduced": self.proportional_to_reduced,
            "center": self.center_ok,
            "winner": self.winner,
            "weyl": self.weyl.to_json(full),
            "records": [_compact(r) for r in self.records] if full else [],
        }


def _compact(r: RelationRecord) -> dict:
    return {
        "id": r.id,
        "oracle_coeff": None if r.oracle_coeff is None else r.oracle_coeff.to_json(),
        "printed": r.status == MATCH,
        "alternatives": {a.name: a.match for a in r.alternatives},
    }


def sine_summary(n: int) -> SineSummary:
    recs = verify_sine_bracket(n)
    alt = {r.id: {a.name: a for a in r.alternatives} for r in recs}
    center = all(
        not r.oracle_value for r in recs if r.id.startswith(f"sine[n={n}](0,0)x")
    )
    return SineSummary(
        n=n,
        pairs=len(recs),
        printed_matches=sum(r.status == MATCH for r in recs),
        half_angle_matches=sum(alt[r.id][HALF_ANGLE].match for r in recs),
        reduced_matches=sum(alt[r.id][HALF_ANGLE + "@reduced"].match for r in recs),
        proportional_to_reduced=sum(
            alt[r.id][HALF_ANGLE + "@reduced"].oracle_coeff is not None for r in recs
        ),
        center_ok=center,
        weyl=verify_weyl(n),
        records=recs,
    )


def j_rank(n: int) -> int:
    return rank([e.matrix for e in j_basis(n)])


def traceless_closed(n: int) -> bool:
    """The n^2 - 1 non-identity J's are trace-free and their span is bracket-closed."""
    js = [e.matrix for e in j_basis(n)][1:]
    if any(trace(x) for x in js):
        return False
    ech = Echelon(2 * n)
    for x in js:
        ech.add(x.as_vector())
    for x, y in itertools.combinations(js, 2):
        residual, _ = ech.reduce(bracket(x, y).as_vector())
        if residual:
            return False
    return True
