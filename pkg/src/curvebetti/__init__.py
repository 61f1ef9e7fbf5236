"""Exact Betti numbers of compactified spaces of rational curves in
Grassmannians, computed along two independent routes."""

from .catalog import (
    EMPTY,
    POINT,
    DimensionMismatch,
    InvalidParameters,
    KernelWeights,
    NegativeBetti,
    PoincarePoly,
    fano_lines,
    fano_planes,
    grassmannian,
    lines_through_point,
    projective,
    stable_maps_gr,
    stable_maps_p1,
    weighted_projective,
)
from .dsl import ParseError, eval_expr, parse, to_text
from .pipelines import (
    ModuliKey,
    PairReport,
    SuiteReport,
    dim_expected,
    grid_keys,
    hilbert_d3,
    pipeline_for,
    simpson_d2,
    simpson_d3,
    space_poly,
    verify_pair,
    verify_suite,
)
from .polyring import (
    DivisionByZero,
    IntPoly,
    NonExactDivision,
    RatExpr,
    arith,
    exact_div,
    evaluate,
    monomial,
    palindrome_check,
)
from .surgery import (
    Pipeline,
    PipelineRun,
    SurgeryStep,
    TraceRecord,
    blowdown_apply,
    blowup_apply,
    bundle_total,
    run_pipeline,
    run_pipeline_traced,
    union_disjoint,
)

__version__ = "0.1.0"
