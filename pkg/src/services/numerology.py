"""Exact evaluation of the integer and rational conditions on double-point systems.

No linear algebra happens here. ``ceil_ratio(a, b, c)`` is the rounded-up quotient
binomial(a, b) / c used throughout, and every comparison is done with
``Fraction`` so nothing is ever rounded.
"""

import logging
from collections.abc import Mapping
from fractions import Fraction

from sympy import isprime

from src.algebra.combinatorics import binomial
from src.config.golden import load_golden_tables
from src.errors import PreconditionError
from src.models.specs import SpecializedSpec, SystemSpec
from src.models.verdicts import (
    REQUIRED_CONDITIONS,
    AhStatus,
    AhTag,
    ConumVerdict,
    FcCase,
    FcParameters,
    FcVerdict,
    FrupValue,
    RuleSet,
    UniquenessTag,
    UniquenessVerdict,
    WinVerdict,
)

logger = logging.getLogger(__name__)

MeasuredDims = Mapping[tuple[int, int, int], int]


def ceil_ratio(a: int, b: int, c: int) -> int:
    """Ceiling of binomial(a, b) / c."""
    return -(-binomial(a, b) // c)


def expected_dim(spec: SystemSpec) -> int:
    return binomial(spec.n + spec.d, spec.n) - (spec.n + 1) * spec.l - 1


def _expected(d: int, n: int, l: int) -> int:  # noqa: E741
    return binomial(n + d, n) - (n + 1) * l - 1


def _frup(a: int, b: int) -> Fraction:
    quotient = Fraction(binomial(a + b, a), a + 1)
    return -(-quotient.numerator // quotient.denominator) - quotient


def frup(a: int, b: int) -> FrupValue:
    """ceil(binomial(a+b,a)/(a+1)) - binomial(a+b,a)/(a+1)."""
    if a < 1 or b < 1:
        raise PreconditionError(f"frup needs a, b >= 1, got ({a}, {b})", operation="frup")
    return FrupValue(a=a, b=b, value=_frup(a, b))


def ah_status(spec: SystemSpec) -> AhStatus:
    """Dimension of G_{d,n,l} according to the double-point interpolation theorem."""
    expected = expected_dim(spec)
    if spec.d <= 2 or spec.n <= 1:
        return AhStatus(spec=spec, tag=AhTag.OUT_OF_THEOREM_RANGE, dim=max(expected, -1), expected=expected)
    if (spec.d, spec.n, spec.l) in load_golden_tables().ah_exception_set():
        return AhStatus(spec=spec, tag=AhTag.EXCEPTIONAL, dim=0, expected=expected)
    tag = AhTag.EXPECTED_EFFECTIVE if expected >= 0 else AhTag.EXPECTED_EMPTY
    return AhStatus(spec=spec, tag=tag, dim=max(expected, -1), expected=expected)


def _known_dim(d: int, n: int, l: int, measured: MeasuredDims | None) -> int | None:  # noqa: E741
    """Dimension of G_{d,n,l} from the theorem, the binary closed form, trivial cases, or a measurement."""
    if l == 0:
        return binomial(n + d, n) - 1
    if d <= 1:
        # A constant or linear form singular at a point is zero.
        return -1
    if n == 1:
        # Double points on the line impose independent conditions.
        return max(d - 2 * l, -1)
    status = ah_status(SystemSpec(d=d, n=n, l=l))
    if status.tag is not AhTag.OUT_OF_THEOREM_RANGE:
        return status.dim
    if measured is not None and (d, n, l) in measured:
        return measured[(d, n, l)]
    return None


def dimbase_check(spec: SpecializedSpec, measured: MeasuredDims | None = None) -> WinVerdict:
    """Check the four hypotheses that make H_{H,d,n,l,h} satisfy the degeneration package.

    Dimensions outside the interpolation theorem's range are looked up in
    ``measured`` (keyed by (d, n, l)); when one is missing the verdict is
    marked indeterminate.
    """
    d, n, l, h = spec.d, spec.n, spec.l, spec.h
    if d < 2:
        raise PreconditionError(f"dimbase_check needs d >= 2, got {d}", operation="dimbase_check")
    general = l - h
    conditions: dict[str, bool | None] = {}
    values: dict[str, Fraction] = {}

    def expected_and_effective(key: str, dd: int, nn: int, ll: int) -> None:
        known = _known_dim(dd, nn, ll, measured)
        expected = _expected(dd, nn, ll)
        conditions[key] = None if known is None else (expected >= 0 and known == expected)
        if known is not None:
            values[key] = Fraction(known)

    expected_and_effective("G_ee", d, n, l)
    expected_and_effective("G_residual_ee", d - 1, n, general)
    if n >= 2:
        trace = _known_dim(d, n - 1, h, measured)
        conditions["G_trace_expected"] = None if trace is None else trace == max(_expected(d, n - 1, h), -1)
    else:
        # P^0 carries no double-point conditions beyond vanishing.
        conditions["G_trace_expected"] = h == 0
    bound = binomial(n + d - 1, n) - (n + 1) * general - h
    values["bound"] = Fraction(bound)
    lower = _known_dim(d - 2, n, general, measured) if d >= 2 else -1
    if lower is None:
        conditions["bound"] = None
    else:
        values["dim_G_d_minus_2"] = Fraction(lower)
        conditions["bound"] = bound >= max(1, lower)
    indeterminate = any(value is None for value in conditions.values())
    win = not indeterminate and all(conditions.values())
    if indeterminate:
        logger.info(f"dimbase_check {spec} needs oracle dimensions: {conditions}")
    return WinVerdict(
        spec=spec,
        win=win,
        rule_set=RuleSet.DIMBASE_DIRECT,
        conditions=conditions,
        values=values,
        indeterminate=indeterminate,
    )


def d3_bound(n: int) -> Fraction:
    """binomial(n+3,n)/(n+1) - (n+2)/3 + 1, the strict upper bound on l for cubics."""
    return Fraction(binomial(n + 3, n), n + 1) - Fraction(n + 2, 3) + 1


def win_check(spec: SpecializedSpec) -> WinVerdict:
    """Evaluate conditions (L), (H), (LH), (C), (D4), (D3) and the rule set for d."""
    d, n, l, h = spec.d, spec.n, spec.l, spec.h
    if n < 3 or d < 3 or l <= h:
        raise PreconditionError(
            f"win_check needs n >= 3, d >= 3 and l > h, got {spec}", operation="win_check"
        )
    trace_quotient = Fraction(binomial(n - 1 + d, n - 1), n)
    trace_status = ah_status(SystemSpec(d=d, n=n - 1, l=h))
    c_value = binomial(n + d - 1, n) - (n + 1) * (l - h) - h
    conditions: dict[str, bool | None] = {
        "L": l < ceil_ratio(n + d, n, n + 1),
        "H": h < ceil_ratio(n - 1 + d, n - 1, n) or (h == trace_quotient and trace_status.is_expected),
        "LH": l - h < ceil_ratio(n + d - 1, n, n + 1),
        "C": c_value > 0,
        "D4": l - h > n,
        "D3": l < d3_bound(n) and h == l - 1,
    }
    values = {
        "L": Fraction(ceil_ratio(n + d, n, n + 1)),
        "H": Fraction(ceil_ratio(n - 1 + d, n - 1, n)),
        "LH": Fraction(ceil_ratio(n + d - 1, n, n + 1)),
        "C": Fraction(c_value),
        "D3": d3_bound(n),
    }
    if d >= 5:
        rule_set = RuleSet.D_AT_LEAST_5
    elif d == 4:
        rule_set = RuleSet.D_EQUALS_4
    else:
        rule_set = RuleSet.D_EQUALS_3
    win = all(conditions[name] for name in REQUIRED_CONDITIONS[rule_set])
    return WinVerdict(spec=spec, win=win, rule_set=rule_set, conditions=conditions, values=values)


def l_value(d: int, n: int) -> int:
    """ceil_ratio(n+d+1, n, n+1) - ceil_ratio(n+d, n-1, n)."""
    return ceil_ratio(n + d + 1, n, n + 1) - ceil_ratio(n + d, n - 1, n)


def lh_params(d: int, n: int) -> tuple[int, int]:
    """The point count l and hyperplane share h of the cubic-to-degree-d induction."""
    if d < 4 or n < 3:
        raise PreconditionError(f"lh_params needs d >= 4 and n >= 3, got ({d}, {n})", operation="lh_params")
    l = l_value(d, n)  # noqa: E741
    return l, l - l_value(d - 1, n)


def delta(d: int, n: int) -> int:
    l, h = lh_params(d, n)  # noqa: E741
    return binomial(n + d - 1, n) - (n + 1) * (l - h) - h


def fr_values(d: int, n: int) -> tuple[Fraction, Fraction]:
    """Fractional corrections (fr(h), fr(l)) of the closed forms of h and l."""
    if d < 4 or n < 3:
        raise PreconditionError(f"fr_values needs d >= 4 and n >= 3, got ({d}, {n})", operation="fr_values")
    fr_l = _frup(n, d + 1) - _frup(n - 1, d + 1)
    fr_h = fr_l - _frup(n, d) + _frup(n - 1, d)
    return fr_h, fr_l


def h_closed_form(d: int, n: int) -> Fraction:
    fr_h, _ = fr_values(d, n)
    return Fraction(binomial(n - 1 + d, n - 1), n) - Fraction(binomial(n + d, n - 1), n * (n + 1)) + fr_h


def l_closed_form(d: int, n: int) -> Fraction:
    _, fr_l = fr_values(d, n)
    return Fraction(binomial(n + d, n), n + 1) - Fraction(binomial(n + d, n - 1), n * (n + 1)) + fr_l


def lh_inequalities(d: int, n: int) -> dict[str, bool | None]:
    """The binomial inequalities that certify (H), (L), (C) and (D4) for lh_params.

    ``C_table`` is true when (C) has to fall back on the tabulated delta.
    """
    if d < 4 or n < 3:
        raise PreconditionError(f"lh_inequalities needs d >= 4 and n >= 3, got ({d}, {n})", operation="lh_inequalities")
    trace = binomial(n + d, n - 1)
    c_bound = trace >= n * (n + 1) ** 2
    return {
        "H": trace >= 2 * n * (n + 1),
        "L": trace >= n * (n + 1),
        "C": c_bound,
        "C_table": not c_bound,
        "D4": (n + 3) * (n + 2) >= 8 * (n + 1) if d == 4 else None,
    }


def th_can_applies(spec: SystemSpec) -> bool:
    """Whether the general member is nodal by the cubic-seeded induction."""
    d, n, l = spec.d, spec.n, spec.l
    if n < 3:
        return False
    if d >= 4:
        return l == lh_params(d, n)[0]
    if d == 3:
        return l < d3_bound(n)
    return False


def fc_parameters(D: int, n: int) -> FcParameters:
    """l_i, h_i and side conditions for G_{D,n,l_i}, with the golden h overrides applied."""
    if D < 4 or n < 3:
        raise PreconditionError(f"Nodality theorem needs D >= 4 and n >= 3, got ({D}, {n})", operation="fc_parameters")
    d = D - 1
    base = ceil_ratio(n + d + 1, n, n + 1)
    l0_condition = n * _frup(n - 1, d + 1) - (n + 1) * _frup(n, d + 1) + 1
    trace = binomial(n + d, n - 1)
    h_general = ceil_ratio(n + d, n - 1, n) - 1
    hs = {"l0": h_general, "l1": h_general}
    overrides: dict[str, str] = {}
    golden = load_golden_tables()
    for case in ("l0", "l1", "l2"):
        override = golden.fc_override(d, n, case)
        if override is not None:
            hs[case] = override.h
            overrides[case] = override.route
    h2 = trace // n if trace % n == 0 else None
    if "l2" in overrides:
        h2 = hs["l2"]
    return FcParameters(
        D=D,
        n=n,
        l0=base - 1,
        l1=base - 2,
        l2=base - 1,
        h0=hs["l0"],
        h1=hs["l1"],
        h2=h2,
        l0_condition=l0_condition,
        l12_condition=l0_condition + n + 1,
        frup_trace_vanishes=_frup(n - 1, d + 1) == 0,
        overrides=overrides,
    )


def th_fc_applies(D: int, n: int, l: int) -> FcVerdict:  # noqa: E741
    """First matching case of the nodality theorem for forms of degree D."""
    parameters = fc_parameters(D, n)
    d = D - 1
    case = FcCase.NONE
    if l == parameters.l0 and parameters.l0_condition > 0:
        case = FcCase.L0
    elif l == parameters.l1 and parameters.l12_condition > 0:
        case = FcCase.L1
    elif (
        l == parameters.l2
        and parameters.frup_trace_vanishes
        and parameters.l12_condition > 0
        and (d >= 4 or (d == 3 and n >= 6))
    ):
        case = FcCase.L2
    logger.debug(f"th_fc_applies({D},{n},{l}) -> {case.value}")
    return FcVerdict(D=D, n=n, l=l, case=case, parameters=parameters)


def fc_degeneration(D: int, n: int, l: int, measured: MeasuredDims | None = None) -> WinVerdict:  # noqa: E741
    """Verdict for the specialized system H_{H,D,n,l_i,h_i} behind the case l falls in."""
    verdict = th_fc_applies(D, n, l)
    if verdict.case is FcCase.NONE:
        raise PreconditionError(f"({D},{n},{l}) matches no case", operation="fc_degeneration")
    parameters = verdict.parameters
    index = verdict.case.value
    h = getattr(parameters, "h" + index[1])
    if h is None:
        raise PreconditionError(f"h_{index[1]} is not integral for ({D},{n})", operation="fc_degeneration")
    spec = SpecializedSpec.of(D, n, l, h)
    route = parameters.overrides.get(index)
    if route == "dimbase":
        return dimbase_check(spec, measured)
    verdict = win_check(spec)
    if route is not None:
        # h comes from the override table; conditions keep the degree's rule set.
        return verdict.model_copy(update={"rule_set": RuleSet.EXPLICIT_OVERRIDE})
    return verdict


def conum_verdict(spec: SystemSpec) -> ConumVerdict:
    """Nodality of the general member for d = 4 and prime d >= 5; indeterminate otherwise."""
    status = ah_status(spec)
    if spec.n < 3 or status.tag is AhTag.OUT_OF_THEOREM_RANGE or status.dim < 0:
        raise PreconditionError(
            f"conum_verdict needs an effective system with n >= 3, got {spec} ({status.tag.value})",
            operation="conum_verdict",
        )
    exception = load_golden_tables().nodal_exception(spec.d, spec.n, spec.l)
    if exception is not None:
        return ConumVerdict(spec=spec, nodal=False, exception=exception, reason="listed exception")
    if spec.d == 4:
        return ConumVerdict(spec=spec, nodal=True, reason="d = 4 outside the two exceptions")
    if spec.d >= 5 and isprime(spec.d):
        return ConumVerdict(spec=spec, nodal=True, reason="d >= 5 prime")
    return ConumVerdict(spec=spec, nodal=None, reason="no statement for this degree")


def prime_frup_vanishing(d: int, n: int) -> bool:
    """For prime d >= 5 one of frup(n, d), frup(n-1, d) vanishes."""
    if d < 5 or not isprime(d):
        raise PreconditionError(f"prime_frup_vanishing needs a prime d >= 5, got {d}", operation="prime_frup_vanishing")
    if n < 1:
        raise PreconditionError(f"n must be positive, got {n}", operation="prime_frup_vanishing")
    return _frup(n, d) == 0 or _frup(n - 1, d) == 0


def secant_codimension(d: int, n: int, k: int) -> int:
    """Codimension of the k-th secant variety of the Veronese, from the interpolation theorem."""
    N = binomial(n + d, n) - 1
    status = ah_status(SystemSpec(d=d, n=n, l=k + 1))
    if status.tag is AhTag.OUT_OF_THEOREM_RANGE:
        return N - min(N, (k + 1) * (n + 1) - 1)
    return status.dim + 1


def cover_condition(d: int, n: int, k: int) -> bool:
    """Numerical hypothesis codim sec_k >= n + 1 of non-weak-defectiveness."""
    if d < 4 or n < 3:
        raise PreconditionError(f"cover_condition needs d >= 4 and n >= 3, got ({d}, {n})", operation="cover_condition")
    return secant_codimension(d, n, k) >= n + 1


def bridge_k(d: int, n: int) -> int | None:
    """k with k + 1 = binomial(d+n,n)/(n+1), when integral."""
    total = binomial(d + n, n)
    if total % (n + 1):
        return None
    return total // (n + 1) - 1


def waring_verdict(d: int, n: int) -> UniquenessVerdict:
    """Uniqueness of the minimal decomposition of a general form of degree d in n+1 variables."""
    if d < 1 or n < 1:
        raise PreconditionError(f"waring_verdict needs d, n >= 1, got ({d}, {n})", operation="waring_verdict")
    k = bridge_k(d, n)

    def verdict(tag: UniquenessTag, citation: str) -> UniquenessVerdict:
        return UniquenessVerdict(d=d, n=n, tag=tag, k=k, citation=citation)

    if d == 1:
        return verdict(UniquenessTag.UNIQUE, "a linear form is its own first power")
    if n == 1:
        if d % 2:
            return verdict(UniquenessTag.UNIQUE, "Sylvester: n = 1, d = 2k - 1, s = k")
        return verdict(UniquenessTag.NO_CANONICAL_FORM, "binomial(d+1,1)/2 is not an integer")
    golden = load_golden_tables().canonical_forms_low_dimension
    for form in golden.sporadic:
        if (form.d, form.n) == (d, n):
            return verdict(UniquenessTag.UNIQUE, form.citation)
    if k is None:
        return verdict(UniquenessTag.NO_CANONICAL_FORM, "binomial(d+n,n)/(n+1) is not an integer")
    if d > n:
        return verdict(UniquenessTag.NOT_UNIQUE, "d > n > 1: unique only for plane quintics")
    if n <= golden.max_n:
        return verdict(UniquenessTag.NOT_UNIQUE, "classification for n <= 3")
    return verdict(UniquenessTag.OUT_OF_THEOREM_RANGE, "uniqueness classification requires d > n > 1")


def residual_map_degree(d: int, n: int) -> int | None:
    """d^n - 2^n k: degree of the map given by G_{d,n,k} when its base scheme is the doubled points."""
    k = bridge_k(d, n)
    if k is None:
        return None
    return d**n - 2**n * k


def plane_nodal_l(d: int) -> int:
    """Point count ceil(binomial(d+2,2)/3) - 1 of the plane-curve canonicity statement."""
    return ceil_ratio(d + 2, 2, 3) - 1


def plane_fixed_component(d: int, l: int) -> bool:  # noqa: E741
    """Whether the general plane curve of G_{d,2,l}, l = plane_nodal_l(d), has a fixed singular component.

    Only the double cubic through nine points does.
    """
    return (d, l) == (6, 9)


def quadric_system_dim(n: int, l: int) -> int:  # noqa: E741
    """dim G_{2,n,l}: quadrics singular at l general points are cones over the complementary space."""
    if l > n + 1:
        return -1
    return binomial(n - l + 2, 2) - 1
