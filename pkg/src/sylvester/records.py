"""Relation records: an oracle-computed matrix identity with a printed prediction attached."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .cyclo import CycNum
from .exactmat import ExactMatrix, is_proportional

MATCH = "match"
COEFFICIENT_MISMATCH = "coefficient-mismatch"
PROPORTIONALITY_HOLDS = "proportionality-holds"
FAILS = "fails"

STATUSES = (MATCH, COEFFICIENT_MISMATCH, PROPORTIONALITY_HOLDS, FAILS)
PASSING = frozenset({MATCH, PROPORTIONALITY_HOLDS})


class Undefined:
    """Marker for a printed coefficient whose formula divides by zero."""

    def __repr__(self) -> str:
        return "UNDEFINED"


UNDEFINED = Undefined()


@dataclass
class Alternative:
    name: str
    reference: str
    oracle_coeff: Optional[CycNum]
    predicted: Optional[CycNum]
    match: bool

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "reference": self.reference,
            "oracle_coeff": _cj(self.oracle_coeff),
            "predicted_coeff": _cj(self.predicted),
            "match": self.match,
        }


@dataclass
class RelationRecord:
    id: str
    lhs: str
    reference: str
    oracle_value: ExactMatrix
    reference_value: Optional[ExactMatrix]
    oracle_coeff: Optional[CycNum]
    predicted_coeff: Optional[CycNum]
    status: str
    locus: str = ""
    note: str = ""
    alternatives: list[Alternative] = field(default_factory=list)

    @property
    def identity_holds(self) -> bool:
        """True when lhs equals some field multiple of the reference (or zero)."""
        return self.oracle_coeff is not None

    def to_json(self, full: bool = False) -> dict:
        out = {
            "id": self.id,
            "lhs": self.lhs,
            "reference": self.reference,
            "status": self.status,
            "oracle_coeff": _cj(self.oracle_coeff),
            "predicted_coeff": _cj(self.predicted_coeff),
            "locus": self.locus,
        }
        if self.note:
            out["note"] = self.note
        if self.alternatives:
            out["alternatives"] = [a.to_json() for a in self.alternatives]
        if full or self.status not in PASSING:
            out["oracle_value"] = self.oracle_value.to_json()
            if self.reference_value is not None:
                out["reference_value"] = self.reference_value.to_json()
        return out


def _cj(c: Optional[CycNum]):
    return None if c is None else c.to_json()


def _as_cyc(c, order: int):
    if c is None or c is UNDEFINED or isinstance(c, CycNum):
        return c
    return CycNum.from_scalar(order, c)


def _oracle(value: ExactMatrix, ref: Optional[ExactMatrix]) -> Optional[CycNum]:
    if ref is None or not ref:
        return CycNum.zero(value.order) if not value else None
    return is_proportional(ref, value)


def relation(
    id: str,
    lhs: str,
    value: ExactMatrix,
    reference: str,
    ref: Optional[ExactMatrix],
    predicted,
    locus: str = "",
    note: str = "",
    alternatives: tuple = (),
) -> RelationRecord:
    """Build a record for the claim ``value == predicted * ref``.

    ``ref=None`` states the claim ``value == 0``. ``predicted=None`` means no
    printed coefficient exists (only proportionality is claimed);
    ``UNDEFINED`` means the printed formula divides by zero.
    """
    predicted = _as_cyc(predicted, value.order)
    oracle = _oracle(value, ref)
    notes = [note] if note else []
    if ref is None:
        status = MATCH if not value else FAILS
        pred = CycNum.zero(value.order)
    elif oracle is None:
        status = FAILS
        pred = None if predicted is UNDEFINED else predicted
    elif predicted is UNDEFINED:
        status = COEFFICIENT_MISMATCH
        pred = None
        notes.append("printed coefficient undefined (division by zero)")
    elif predicted is None:
        status = PROPORTIONALITY_HOLDS
        pred = None
    else:
        pred = predicted
        status = MATCH if value == ref.scale(predicted) else COEFFICIENT_MISMATCH
    alts = []
    for name, ref_name, alt_ref, alt_pred in alternatives:
        alt_pred = _as_cyc(alt_pred, value.order)
        alt_oracle = _oracle(value, alt_ref)
        ok = (
            alt_pred is not None
            and alt_pred is not UNDEFINED
            and (value == alt_ref.scale(alt_pred) if alt_ref is not None else not value)
        )
        alts.append(
            Alternative(
                name,
                ref_name,
                alt_oracle,
                None if alt_pred is UNDEFINED else alt_pred,
                ok,
            )
        )
    return RelationRecord(
        id=id,
        lhs=lhs,
        reference=reference,
        oracle_value=value,
        reference_value=ref,
        oracle_coeff=oracle,
        predicted_coeff=pred,
        status=status,
        locus=locus,
        note="; ".join(notes),
        alternatives=alts,
    )


def check(
    id: str, lhs: str, value: ExactMatrix, holds: bool, locus: str = "", note: str = ""
) -> RelationRecord:
    """Record for a yes/no property of an oracle value (e.g. 'is nonzero')."""
    return RelationRecord(
        id=id,
        lhs=lhs,
        reference="-",
        oracle_value=value,
        reference_value=None,
        oracle_coeff=None,
        predicted_coeff=None,
        status=MATCH if holds else FAILS,
        locus=locus,
        note=note,
    )


def discrepancies(records: list[RelationRecord]) -> list[RelationRecord]:
    return [r for r in records if r.status != MATCH]
