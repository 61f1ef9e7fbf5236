"""Betti numbers of three compactifications, each computed two ways.

A space of smooth degree d rational curves in a Grassmannian can be
compactified as a stable-map space (M), as a moduli space of semistable
sheaves (S), or as a Hilbert scheme of curves (H).  For d = 2 and 3 all
three have closed-form Poincare polynomials, and S and H are also
reachable from M by an explicit chain of blow-ups and blow-downs.

This module computes S and H along both routes:

* closed mode evaluates the printed rational expressions by exact
  division;
* pipeline mode starts from the stable-map polynomial and folds the
  surgery steps, with centers built out of catalog spaces.

The two routes share only the catalog primitives, so exact agreement on
a whole grid of (k, n) is a strong consistency check.  verify_pair and
verify_suite package that check, together with structural invariants
(palindromicity, expected dimension, duality under k -> n-k), into
machine-readable reports.

Keys are normalized to k <= n-k before evaluation; the duality suite
evaluates the raw, unnormalized formulas on both sides so that the
symmetry stays an actual test.
"""

from __future__ import annotations

import dataclasses
import functools

from .catalog import (
    EMPTY,
    DimensionMismatch,
    InvalidParameters,
    NegativeBetti,
    PoincarePoly,
    _fano_lines_ratexpr,
    _one_minus,
    _range_product,
    _stable_maps_gr3_kernel,
    fano_lines,
    grassmannian,
    lines_through_point,
    projective,
    stable_maps_gr,
    stable_maps_p1,
    weighted_projective,
)
from .polyring import (
    ONE,
    DivisionByZero,
    IntPoly,
    NonExactDivision,
    RatExpr,
    exact_div,
    monomial,
)
from .surgery import Pipeline, SurgeryStep, blowup_apply, run_pipeline

COMPACTIFICATIONS = ("M", "S", "H")
SUITES = ("duality", "pipeline", "special", "symmetry")

_ARITHMETIC_ERRORS = (
    InvalidParameters,
    DimensionMismatch,
    NegativeBetti,
    NonExactDivision,
    DivisionByZero,
)


@dataclasses.dataclass(frozen=True, order=True)
class ModuliKey:
    """One compactified space: curves of degree d in grassmannian(k, n)."""

    k: int
    n: int
    d: int
    compactification: str

    def __str__(self) -> str:
        return f"{self.compactification}(Gr({self.k},{self.n}),{self.d})"


def validate_key(key: ModuliKey) -> None:
    """Raise InvalidParameters unless the key names a supported space."""
    if key.d not in (2, 3):
        raise InvalidParameters(f"{key}: degree must be 2 or 3")
    if key.compactification not in COMPACTIFICATIONS:
        raise InvalidParameters(
            f"compactification {key.compactification!r} not one of M, S, H"
        )
    if not 1 <= key.k <= key.n - 1:
        raise InvalidParameters(f"{key}: need 1 <= k <= n-1")
    if key.n < 3:
        raise InvalidParameters(f"{key}: need n >= 3")
    if key.compactification == "H" and key.d == 3 and key.n == 3:
        raise InvalidParameters(
            f"{key}: every cubic here lies in a plane, so the planar locus "
            "is the whole space and the blow-up to the Hilbert scheme "
            "degenerates"
        )


def normalize_key(key: ModuliKey) -> ModuliKey:
    """Fold k -> n-k duality so k <= n-k."""
    return dataclasses.replace(key, k=min(key.k, key.n - key.k))


def mirror_key(key: ModuliKey) -> ModuliKey:
    return dataclasses.replace(key, k=key.n - key.k)


def dim_expected(key: ModuliKey) -> int:
    """k(n-k) + dn - 3, the dimension of any of the three spaces."""
    return key.k * (key.n - key.k) + key.d * key.n - 3


def _geom(j: int) -> RatExpr:
    """(1 - q^j) / (1 - q), the projective space of dimension j - 1."""
    return RatExpr(_one_minus(j), _one_minus(1))


def _fx_ratexpr(k: int, n: int) -> RatExpr:
    return RatExpr(_one_minus(n - k) * _one_minus(k), _one_minus(1) ** 2)


# ---------------------------------------------------------------- degree 2


@functools.lru_cache(maxsize=None)
def _simpson2_closed(k: int, n: int) -> PoincarePoly:
    bracket = (
        (ONE + monomial(n)) * (ONE + monomial(3))
        - monomial(1) * (ONE + monomial(1)) * (monomial(k) + monomial(n - k))
        + _one_minus(2) * (monomial(3) - monomial(n - 2))
    )
    num = bracket * _range_product(n - k, n)
    den = _one_minus(1) ** 2 * _one_minus(2) ** 2 * _range_product(1, k - 1)
    return PoincarePoly.from_poly(
        exact_div(num, den),
        claimed_dim=k * (n - k) + 2 * n - 3,
        what=f"S(Gr({k},{n}),2) closed",
    )


def _simpson2_pipeline_obj(k: int, n: int) -> Pipeline:
    f1 = fano_lines(k, n)
    return Pipeline(
        base=stable_maps_gr(k, n, 2),
        steps=(
            SurgeryStep(
                kind="blowup",
                center=f1 * stable_maps_p1(2),
                fiber=projective(n - 3),
                label="Gamma^1",
                expected_codim=n - 2,
            ),
            SurgeryStep(
                kind="blowdown",
                center=f1 * projective(n - 3),
                fiber=stable_maps_p1(2),
                label="Gamma^1_2",
            ),
        ),
    )


@functools.lru_cache(maxsize=None)
def _simpson2_pipeline(k: int, n: int) -> PoincarePoly:
    return run_pipeline(_simpson2_pipeline_obj(k, n))


# ---------------------------------------------------------------- degree 3


def _mixed_ruling_poly() -> IntPoly:
    # Fiber polynomial over the locus of reducible conics with a tail:
    # (1+q) copies of the degree 3 fiber plus a shifted (1+q) copy of
    # the degree 2 one.
    return (ONE + monomial(1)) * stable_maps_p1(3).poly + monomial(1) * (
        ONE + monomial(1)
    ) * stable_maps_p1(2).poly


@functools.lru_cache(maxsize=None)
def _simpson3_closed(k: int, n: int) -> PoincarePoly:
    fx = _fx_ratexpr(k, n)
    mb2 = RatExpr(stable_maps_p1(2).poly, ONE)
    mb3 = RatExpr(stable_maps_p1(3).poly, ONE)
    ruled = RatExpr(_mixed_ruling_poly(), ONE)
    one = RatExpr(ONE, ONE)

    pointed_pencils = fx + _geom(n - 2) - one
    braced = (
        _stable_maps_gr3_kernel(k, n)
        + mb3 * (_geom(2 * n - 4) - one)
        + _geom(2) * pointed_pencils * mb2 * (_geom(n - 1) - one)
        + _geom(n - 2) * ruled * (_geom(n - 2) - one)
        - _geom(2)
        * (
            _geom(n - 1) * pointed_pencils
            + _geom(2) * _geom(n - 2) * (_geom(n - 2) - one)
        )
        * (_geom(3) - one)
        - _geom(2) * _geom(n - 2) * _geom(n - 2) * (_geom(5) - one)
        - _geom(n - 2) * RatExpr(_one_minus(n - 3), _one_minus(2)) * (_geom(8) - one)
    )
    value = (braced * _fano_lines_ratexpr(k, n)).to_poly()
    return PoincarePoly.from_poly(
        value,
        claimed_dim=k * (n - k) + 3 * n - 3,
        what=f"S(Gr({k},{n}),3) closed",
    )


def _simpson3_steps(k: int, n: int) -> tuple[SurgeryStep, ...]:
    x = grassmannian(k, n)
    f1 = fano_lines(k, n)
    fx = lines_through_point(k, n)
    # Pairs of pointed lines with the diagonal blown up; codimension of
    # the diagonal is n - 2.
    bl_diag = blowup_apply(fx * fx, fx, n - 2)
    ruled = PoincarePoly.from_poly(_mixed_ruling_poly())
    down4_center = PoincarePoly.from_poly(
        x.poly
        * (
            bl_diag.poly * projective(n - 2).poly
            + projective(1).poly
            * fx.poly
            * projective(n - 3).poly
            * (projective(n - 3).poly - ONE)
        )
    )
    return (
        SurgeryStep(
            kind="blowup",
            center=f1 * stable_maps_p1(3),
            fiber=projective(2 * n - 5),
            label="Gamma^1_0",
            expected_codim=2 * n - 4,
        ),
        SurgeryStep(
            kind="blowup",
            center=x * bl_diag * stable_maps_p1(2),
            fiber=projective(n - 2),
            label="Gamma^2_1",
            expected_codim=n - 1,
        ),
        SurgeryStep(
            kind="blowup",
            center=f1 * projective(n - 3) * ruled,
            fiber=projective(n - 3),
            label="Gamma^3_2",
            expected_codim=n - 2,
        ),
        SurgeryStep(
            kind="blowdown",
            center=down4_center,
            fiber=weighted_projective((1, 2, 2)),
            label="Gamma^2_3",
        ),
        SurgeryStep(
            kind="blowdown",
            center=f1 * projective(1) * projective(n - 3) * projective(n - 3),
            fiber=weighted_projective((1, 2, 2, 3, 3)),
            label="Gamma^3_4",
        ),
        SurgeryStep(
            kind="blowdown",
            center=f1 * grassmannian(2, n - 2),
            fiber=projective(7),
            label="Gamma^1_5",
        ),
    )


def _simpson3_pipeline_obj(k: int, n: int) -> Pipeline:
    return Pipeline(base=stable_maps_gr(k, n, 3), steps=_simpson3_steps(k, n))


@functools.lru_cache(maxsize=None)
def _simpson3_pipeline(k: int, n: int) -> PoincarePoly:
    return run_pipeline(_simpson3_pipeline_obj(k, n))


def _delta_steps(k: int, n: int, planar_cubics: PoincarePoly) -> tuple[SurgeryStep, ...]:
    """Blow-ups along the planar-curve locus, one per plane family.

    The locus fibers over the space of planes with fibers the space of
    planar cubics, and the plane space has up to two pieces with
    different codimensions in the ambient Hilbert scheme.
    """
    steps: list[SurgeryStep] = []
    if k >= 2:
        codim = 2 * n - k - 4
        steps.append(
            SurgeryStep(
                kind="blowup",
                center=grassmannian(k + 1, n)
                * grassmannian(k - 2, k + 1)
                * planar_cubics,
                fiber=projective(codim - 1),
                label="Delta_A",
                expected_codim=codim,
            )
        )
    if n >= k + 2:
        codim = n + k - 4
        steps.append(
            SurgeryStep(
                kind="blowup",
                center=grassmannian(k + 2, n)
                * grassmannian(k - 1, k + 2)
                * planar_cubics,
                fiber=projective(codim - 1),
                label="Delta_B",
                expected_codim=codim,
            )
        )
    return tuple(steps)


@functools.lru_cache(maxsize=None)
def _hilbert3_closed(k: int, n: int) -> PoincarePoly:
    total = _simpson3_closed(k, n).poly
    planar = _simpson3_closed(1, 3).poly
    if k >= 2:
        total = total + (
            grassmannian(k + 1, n).poly
            * grassmannian(k - 2, k + 1).poly
            * planar
            * (projective(2 * n - k - 5).poly - ONE)
        )
    if n >= k + 2:
        total = total + (
            grassmannian(k + 2, n).poly
            * grassmannian(k - 1, k + 2).poly
            * planar
            * (projective(n + k - 5).poly - ONE)
        )
    return PoincarePoly.from_poly(
        total,
        claimed_dim=k * (n - k) + 3 * n - 3,
        what=f"H(Gr({k},{n}),3) closed",
    )


def _hilbert3_pipeline_obj(k: int, n: int) -> Pipeline:
    return Pipeline(
        base=stable_maps_gr(k, n, 3),
        steps=_simpson3_steps(k, n) + _delta_steps(k, n, _simpson3_pipeline(1, 3)),
    )


@functools.lru_cache(maxsize=None)
def _hilbert3_pipeline(k: int, n: int) -> PoincarePoly:
    return run_pipeline(_hilbert3_pipeline_obj(k, n))


# ------------------------------------------------------------- public API


def _raw_space_poly(key: ModuliKey, mode: str) -> PoincarePoly:
    if mode not in ("closed", "pipeline"):
        raise InvalidParameters(f"mode {mode!r} not one of closed, pipeline")
    c = key.compactification
    if c == "M":
        if mode == "pipeline":
            raise InvalidParameters(
                "the stable-map space is the pipeline base; it has no "
                "pipeline of its own"
            )
        return stable_maps_gr(key.k, key.n, key.d)
    if c == "S" or (c == "H" and key.d == 2):
        # In degree 2 the sheaf and Hilbert compactifications coincide.
        if key.d == 2:
            table = {"closed": _simpson2_closed, "pipeline": _simpson2_pipeline}
        else:
            table = {"closed": _simpson3_closed, "pipeline": _simpson3_pipeline}
        return table[mode](key.k, key.n)
    table = {"closed": _hilbert3_closed, "pipeline": _hilbert3_pipeline}
    return table[mode](key.k, key.n)


def space_poly(key: ModuliKey, mode: str = "closed") -> PoincarePoly:
    """Poincare polynomial of the space a key names."""
    validate_key(key)
    return _raw_space_poly(normalize_key(key), mode)


def simpson_d2(k: int, n: int, mode: str = "closed") -> PoincarePoly:
    return space_poly(ModuliKey(k, n, 2, "S"), mode)


def simpson_d3(k: int, n: int, mode: str = "closed") -> PoincarePoly:
    return space_poly(ModuliKey(k, n, 3, "S"), mode)


def hilbert_d3(k: int, n: int, mode: str = "closed") -> PoincarePoly:
    return space_poly(ModuliKey(k, n, 3, "H"), mode)


def pipeline_for(key: ModuliKey) -> Pipeline:
    """The surgery pipeline behind a key's pipeline mode."""
    validate_key(key)
    key = normalize_key(key)
    if key.compactification == "M":
        raise InvalidParameters(f"{key}: no pipeline for the stable-map space")
    if key.d == 2:
        return _simpson2_pipeline_obj(key.k, key.n)
    if key.compactification == "S":
        return _simpson3_pipeline_obj(key.k, key.n)
    return _hilbert3_pipeline_obj(key.k, key.n)


# ------------------------------------------------------------ verification


@dataclasses.dataclass(frozen=True)
class PairReport:
    """verify_pair result; error is None when the key evaluated at all."""

    key: ModuliKey
    error: str | None
    mode_equal: bool | None
    degree_ok: bool | None
    palindromic: bool | None
    nonnegative: bool | None
    euler: int | None
    first_difference: tuple[int, int, int] | None

    def passed(self) -> bool:
        if self.error is not None:
            return False
        flags = (self.mode_equal, self.degree_ok, self.palindromic, self.nonnegative)
        return all(f is not False for f in flags)

    def to_json(self) -> dict:
        return {
            "key": str(self.key),
            "error": self.error,
            "mode_equal": self.mode_equal,
            "degree_ok": self.degree_ok,
            "palindromic": self.palindromic,
            "nonnegative": self.nonnegative,
            "euler": self.euler,
            "first_difference": (
                list(self.first_difference) if self.first_difference else None
            ),
        }


def _first_difference(a: IntPoly, b: IntPoly) -> tuple[int, int, int] | None:
    for j in range(max(a.degree, b.degree) + 1):
        if a.coefficient(j) != b.coefficient(j):
            return (j, a.coefficient(j), b.coefficient(j))
    return None


def verify_pair(key: ModuliKey) -> PairReport:
    """Evaluate one key along every applicable route and compare.

    Arithmetic failures become report entries rather than exceptions, so
    a sweep over a grid always completes.
    """
    try:
        closed = space_poly(key, "closed")
        pipe = (
            space_poly(key, "pipeline") if key.compactification != "M" else None
        )
    except _ARITHMETIC_ERRORS as e:
        return PairReport(
            key=key,
            error=f"{type(e).__name__}: {e}",
            mode_equal=None,
            degree_ok=None,
            palindromic=None,
            nonnegative=None,
            euler=None,
            first_difference=None,
        )
    mode_equal = None if pipe is None else closed.poly == pipe.poly
    return PairReport(
        key=key,
        error=None,
        mode_equal=mode_equal,
        degree_ok=closed.dim == dim_expected(key),
        palindromic=closed.is_palindromic(),
        nonnegative=all(c >= 0 for c in closed.poly.coeffs),
        euler=closed.euler(),
        first_difference=(
            None if pipe is None or mode_equal else _first_difference(closed.poly, pipe.poly)
        ),
    )


@dataclasses.dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    passed: bool
    detail: str = ""


@dataclasses.dataclass(frozen=True)
class SuiteReport:
    checks: tuple[CheckResult, ...]

    @property
    def total_checks(self) -> int:
        return len(self.checks)

    @property
    def total_failures(self) -> int:
        return sum(1 for c in self.checks if not c.passed)

    def counts(self) -> dict[str, tuple[int, int]]:
        out: dict[str, tuple[int, int]] = {}
        for c in self.checks:
            done, failed = out.get(c.suite, (0, 0))
            out[c.suite] = (done + 1, failed + (0 if c.passed else 1))
        return out

    def to_json(self) -> dict:
        suites: dict[str, dict] = {}
        for suite, (done, failed) in self.counts().items():
            suites[suite] = {
                "checks": done,
                "failures": failed,
                "failed": [
                    {"name": c.name, "detail": c.detail}
                    for c in self.checks
                    if c.suite == suite and not c.passed
                ],
            }
        return {
            "total_checks": self.total_checks,
            "total_failures": self.total_failures,
            "suites": suites,
        }


def keys_for_pair(k: int, n: int) -> list[ModuliKey]:
    """The valid keys over one (k, n): both degrees of M and S, plus H."""
    out = []
    for d, comp in ((2, "M"), (2, "S"), (3, "M"), (3, "S"), (3, "H")):
        key = ModuliKey(k, n, d, comp)
        try:
            validate_key(key)
        except InvalidParameters:
            continue
        out.append(key)
    return out


def grid_keys(
    k_lo: int = 1, k_hi: int = 4, n_lo: int | None = None, n_hi: int = 10
) -> list[ModuliKey]:
    """Default verification grid; n_lo of None means n starts at k + 1."""
    keys: list[ModuliKey] = []
    for k in range(k_lo, k_hi + 1):
        start = k + 1 if n_lo is None else max(n_lo, k + 1)
        for n in range(start, n_hi + 1):
            keys.extend(keys_for_pair(k, n))
    return sorted(keys)


def _check_duality(key: ModuliKey) -> CheckResult:
    report = verify_pair(key)
    if report.error is not None:
        return CheckResult("duality", str(key), False, report.error)
    problems = []
    if not report.palindromic:
        problems.append("not palindromic")
    if not report.degree_ok:
        problems.append(f"degree != {dim_expected(key)}")
    return CheckResult("duality", str(key), not problems, "; ".join(problems))


def _check_pipeline(key: ModuliKey) -> CheckResult:
    report = verify_pair(key)
    if report.error is not None:
        return CheckResult("pipeline", str(key), False, report.error)
    if report.mode_equal:
        return CheckResult("pipeline", str(key), True)
    diff = report.first_difference
    detail = (
        f"first difference at q^{diff[0]}: closed {diff[1]}, pipeline {diff[2]}"
        if diff
        else "modes differ"
    )
    return CheckResult("pipeline", str(key), False, detail)


def _check_symmetry(key: ModuliKey) -> CheckResult:
    try:
        a = _raw_space_poly(key, "closed")
        b = _raw_space_poly(mirror_key(key), "closed")
    except _ARITHMETIC_ERRORS as e:
        return CheckResult(
            "symmetry", str(key), False, f"{type(e).__name__}: {e}"
        )
    if a.poly == b.poly:
        return CheckResult("symmetry", str(key), True)
    diff = _first_difference(a.poly, b.poly)
    return CheckResult(
        "symmetry",
        str(key),
        False,
        f"k <-> n-k broken at q^{diff[0]}" if diff else "mismatch",
    )


def _special_checks() -> list[CheckResult]:
    out: list[CheckResult] = []

    bad = []
    for n in range(3, 11):
        expected = projective(5) * grassmannian(3, n)
        if simpson_d2(1, n).poly != expected.poly:
            bad.append(f"n={n}")
    out.append(
        CheckResult(
            "special",
            "conic-bundle: S(Gr(1,n),2) = P^5 x Gr(3,n)",
            not bad,
            ", ".join(bad),
        )
    )

    ok = hilbert_d3(1, 4).poly == simpson_d3(1, 4).poly
    out.append(
        CheckResult(
            "special",
            "H(Gr(1,4),3) = S(Gr(1,4),3)",
            ok,
            "" if ok else "polynomials differ",
        )
    )

    reference = IntPoly([1, 2, 3, 3, 3, 3, 3, 2, 1])
    ok = simpson_d3(1, 3).poly == reference
    out.append(
        CheckResult(
            "special",
            "S(Gr(1,3),3) reference value",
            ok,
            "" if ok else f"got {simpson_d3(1, 3).poly}",
        )
    )
    return out


def verify_suite(
    keys: list[ModuliKey] | None = None, suites: tuple[str, ...] = SUITES
) -> SuiteReport:
    """Run the named suites over a key grid and collect one report.

    Suites: duality (palindromicity and expected degree), pipeline
    (closed mode equals pipeline mode, S and H keys only), special
    (three fixed identity families), symmetry (raw formulas agree at k
    and n-k).  Checks are ordered deterministically.
    """
    for s in suites:
        if s not in SUITES:
            raise InvalidParameters(f"unknown suite {s!r}")
    if keys is None:
        keys = grid_keys()
    keys = sorted(set(keys))
    checks: list[CheckResult] = []
    for suite in SUITES:
        if suite not in suites:
            continue
        if suite == "duality":
            checks.extend(_check_duality(key) for key in keys)
        elif suite == "pipeline":
            checks.extend(
                _check_pipeline(key)
                for key in keys
                if key.compactification != "M"
            )
        elif suite == "symmetry":
            checks.extend(_check_symmetry(key) for key in keys)
        elif suite == "special":
            checks.extend(_special_checks())
    return SuiteReport(checks=tuple(checks))
