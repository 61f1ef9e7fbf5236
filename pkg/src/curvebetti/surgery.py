"""Blow-up and blow-down surgery on Poincare polynomials.

Blowing up a smooth center Z of codimension c inside X replaces Z by a
projective bundle with ℙ^(c-1) fibers, which on Poincare polynomials
reads

    P(Bl_Z X) = P(X) + P(Z) * (P(fiber) - 1).

A blow-down subtracts the same kind of correction, with the fiber given
explicitly (it may be a weighted projective space).  A pipeline is a
base space plus an ordered list of such steps; since each correction
depends only on the step's own center and fiber, the total is a signed
sum and the order affects only the trace, not the result.
"""

from __future__ import annotations

import dataclasses

from .catalog import (
    DimensionMismatch,
    InvalidParameters,
    NegativeBetti,
    PoincarePoly,
    projective,
)
from .polyring import ONE, ZERO, IntPoly


@dataclasses.dataclass(frozen=True)
class SurgeryStep:
    """One blow-up or blow-down: a center, a fiber and a label.

    expected_codim, when set on a blow-up, enables the dimension check
    center.dim + codim == space.dim.  Blow-downs and steps where only
    the fiber is pinned leave it unset.
    """

    kind: str
    center: PoincarePoly
    fiber: PoincarePoly
    label: str
    expected_codim: int | None = None

    def __post_init__(self):
        if self.kind not in ("blowup", "blowdown"):
            raise InvalidParameters(f"step kind {self.kind!r}")
        if self.fiber.components != 1:
            raise InvalidParameters(f"step {self.label}: fiber must be connected")

    def correction(self) -> IntPoly:
        """Signed contribution of this step to the total."""
        delta = self.center.poly * (self.fiber.poly - ONE)
        return delta if self.kind == "blowup" else -delta


@dataclasses.dataclass(frozen=True)
class Pipeline:
    base: PoincarePoly
    steps: tuple[SurgeryStep, ...]


@dataclasses.dataclass(frozen=True)
class TraceRecord:
    label: str
    kind: str
    correction: IntPoly
    cumulative: IntPoly

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "kind": self.kind,
            "correction": list(self.correction.coeffs),
            "cumulative": list(self.cumulative.coeffs),
        }


@dataclasses.dataclass(frozen=True)
class PipelineRun:
    result: PoincarePoly
    trace: tuple[TraceRecord, ...]


def bundle_total(base: PoincarePoly, fiber: PoincarePoly) -> PoincarePoly:
    """Total space of a fibration with the given base and fiber."""
    return base * fiber


def union_disjoint(a: PoincarePoly, b: PoincarePoly) -> PoincarePoly:
    return a + b


def blowup_apply(space: PoincarePoly, center: PoincarePoly, codim: int) -> PoincarePoly:
    """Blow up a center of the given codimension.

    >>> str(blowup_apply(projective(3), projective(1), 2))
    '1 + 2q + 2q^2 + q^3'
    """
    if codim < 1:
        raise InvalidParameters(f"blow-up codimension {codim} must be >= 1")
    if not center.is_empty() and center.dim + codim != space.dim:
        raise DimensionMismatch(
            f"center of dimension {center.dim} with codimension {codim} "
            f"does not fit in a space of dimension {space.dim}"
        )
    fiber = projective(codim - 1)
    return PoincarePoly.from_poly(
        space.poly + center.poly * (fiber.poly - ONE), what="blow-up"
    )


def blowdown_apply(
    space: PoincarePoly, center_downstairs: PoincarePoly, fiber: PoincarePoly
) -> PoincarePoly:
    """Undo a blow-up whose exceptional fibers over the downstairs center
    are the given (possibly weighted projective) fiber."""
    if fiber.components != 1:
        raise InvalidParameters("blow-down fiber must be connected")
    value = space.poly - center_downstairs.poly * (fiber.poly - ONE)
    return PoincarePoly.from_poly(value, what="blow-down")


def run_pipeline_traced(pipeline: Pipeline) -> PipelineRun:
    """Fold the steps over the base, recording each partial total.

    Corrections commute, so the final polynomial is independent of the
    step order; a transiently negative partial total under a permuted
    order is tolerated, but a negative final result raises NegativeBetti
    with the first step at which the running total went bad.
    """
    current = pipeline.base.poly
    trace: list[TraceRecord] = []
    first_bad: SurgeryStep | None = None
    for step in pipeline.steps:
        if (
            step.kind == "blowup"
            and step.expected_codim is not None
            and not step.center.is_empty()
            and step.center.dim + step.expected_codim != pipeline.base.dim
        ):
            raise DimensionMismatch(
                f"step {step.label}: center dimension {step.center.dim} + "
                f"codimension {step.expected_codim} != {pipeline.base.dim}"
            )
        correction = step.correction()
        current = current + correction
        if first_bad is None and any(c < 0 for c in current.coeffs):
            first_bad = step
        trace.append(
            TraceRecord(
                label=step.label,
                kind=step.kind,
                correction=correction,
                cumulative=current,
            )
        )
    if any(c < 0 for c in current.coeffs):
        label = first_bad.label if first_bad is not None else "?"
        raise NegativeBetti(
            f"pipeline total has a negative coefficient (first went negative "
            f"at step {label})"
        )
    return PipelineRun(
        result=PoincarePoly.from_poly(current, what="pipeline total"),
        trace=tuple(trace),
    )


def run_pipeline(pipeline: Pipeline) -> PoincarePoly:
    return run_pipeline_traced(pipeline).result
