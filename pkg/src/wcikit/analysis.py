"""Combinatorial classification of weighted complete intersection families.

Everything here is evaluated for the *general* member of a family: a defining
polynomial restricts to zero on a coordinate stratum exactly when its degree
is not representable in the numerical semigroup of the stratum weights, and
each surviving restriction is modeled as cutting the stratum dimension by
one (floored at -1, the dimension of the empty set).  Where that model is
known to be fragile the report says so via flags instead of trusting it
silently.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import gcd, prod

from .weights import (
    MAX_ENTRY,
    Stratum,
    Weights,
    as_weights,
    is_well_formed_space,
    singular_strata,
)

THEOREM_NOT_APPLICABLE_DIM = "not_applicable_dim"
THEOREM_NOT_APPLICABLE_LINEAR_CONE = "not_applicable_linear_cone"
THEOREM_CONSISTENT = "consistent"
THEOREM_IMPLIES_NOT_QUASISMOOTH = "implies_not_quasismooth"

# Report flags.
FLAG_DEGENERATE_CONTAINMENT = "degenerate_stratum_containment"
FLAG_DIMCA_MISMATCH = "dimca_codim_mismatch"
FLAG_NONINTEGRAL_SURFACE = "nonintegral_surface_self_intersection"


@dataclass(frozen=True)
class WCISpec:
    """A weighted complete intersection family: ambient weights plus a multidegree."""

    weights: Weights
    degrees: tuple[int, ...]

    def __post_init__(self):
        w = as_weights(self.weights)
        object.__setattr__(self, "weights", w)
        degrees = tuple(self.degrees)
        object.__setattr__(self, "degrees", degrees)
        if not degrees:
            raise ValueError("need at least one defining degree")
        for d in degrees:
            if not isinstance(d, int) or isinstance(d, bool) or d < 1:
                raise ValueError(f"degree {d!r} is not a positive integer")
            if d > MAX_ENTRY:
                raise ValueError(f"degree {d} exceeds the 2^63-1 limit")
        if len(degrees) > w.dim:
            raise ValueError(
                f"codimension {len(degrees)} exceeds the ambient dimension {w.dim}"
            )

    @property
    def codimension(self) -> int:
        return len(self.degrees)

    @property
    def dimension(self) -> int:
        return self.weights.dim - len(self.degrees)

    def key(self) -> str:
        """Canonical identifier, e.g. ``"1,1,2,2,2/3,4"``."""
        return f"{self.weights}/{','.join(str(d) for d in self.degrees)}"

    def to_json(self) -> dict:
        return {"weights": self.weights.to_json(), "degrees": list(self.degrees)}


@dataclass(frozen=True)
class StratumIntersection:
    """How the general member meets one stratum.

    ``cutting_degrees`` are the indices (0-based) of degrees whose general
    restriction to the stratum is not identically zero; each one cuts the
    stratum dimension by one in the model.  ``contained`` means no degree
    cuts, i.e. the general member contains the stratum.  For strata of the
    maximal covering family, ``dimca_codim`` carries the divisibility-count
    codimension formula and ``dimca_agrees`` compares it with the model.
    """

    stratum: Stratum
    cutting_degrees: tuple[int, ...]
    dim_general: int
    contained: bool
    dimca_codim: int | None = None
    dimca_agrees: bool | None = None

    def to_json(self) -> dict:
        return {
            "stratum": self.stratum.to_json(),
            "cutting_degrees": list(self.cutting_degrees),
            "dim_general": self.dim_general,
            "contained": self.contained,
            "dimca_codim": self.dimca_codim,
            "dimca_agrees": self.dimca_agrees,
        }


@dataclass(frozen=True)
class AnalysisReport:
    """Full classification verdict for one family."""

    spec: WCISpec
    space_well_formed: bool
    dim_X: int
    linear_cone: bool
    amplitude: int
    canonical_self_intersection: Fraction
    strata: tuple[StratumIntersection, ...]
    sing_intersection_dim: int
    well_formed: bool
    weakly_well_formed: bool
    theorem_status: str
    flags: tuple[str, ...]

    def to_json(self) -> dict:
        return {
            "spec": self.spec.to_json(),
            "space_well_formed": self.space_well_formed,
            "dim_X": self.dim_X,
            "linear_cone": self.linear_cone,
            "amplitude": self.amplitude,
            "canonical_self_intersection": {
                "num": self.canonical_self_intersection.numerator,
                "den": self.canonical_self_intersection.denominator,
            },
            "strata": [si.to_json() for si in self.strata],
            "sing_intersection_dim": self.sing_intersection_dim,
            "well_formed": self.well_formed,
            "weakly_well_formed": self.weakly_well_formed,
            "theorem_status": self.theorem_status,
            "flags": list(self.flags),
        }


def dimension(spec: WCISpec) -> int:
    """Dimension of the family's members (ambient dimension minus codimension)."""
    return spec.dimension


def is_linear_cone(spec: WCISpec) -> bool:
    """True iff some defining degree equals some weight, so one equation could
    eliminate a variable."""
    return bool(set(spec.degrees) & set(spec.weights.entries))


def is_representable(d: int, weight_multiset) -> bool:
    """Whether d is a non-negative integer combination of the given weights,
    i.e. whether any monomial of weighted degree d exists in variables of
    those weights.  Decided by dynamic programming over target values 0..d."""
    ws = tuple(sorted(set(weight_multiset)))
    if not ws:
        raise ValueError("weight multiset must be nonempty")
    if any((not isinstance(x, int)) or isinstance(x, bool) or x < 1 for x in ws):
        raise ValueError(f"weights must be positive integers: {sorted(weight_multiset)}")
    if not isinstance(d, int) or isinstance(d, bool) or d < 0:
        raise ValueError(f"degree {d!r} must be a non-negative integer")
    return _representable(d, ws)


@lru_cache(maxsize=None)
def _representable(d: int, ws: tuple[int, ...]) -> bool:
    reach = bytearray(d + 1)
    reach[0] = 1
    for w in ws:
        for t in range(w, d + 1):
            if not reach[t] and reach[t - w]:
                reach[t] = 1
    return bool(reach[d])


def stratum_intersection(spec: WCISpec, stratum: Stratum) -> StratumIntersection:
    """Intersection of the general member with one stratum, in the
    one-cut-per-surviving-degree model."""
    w = spec.weights
    if stratum.indices[-1] > w.dim:
        raise ValueError(f"stratum indices {list(stratum.indices)} out of range for {len(w)} coordinates")
    stratum_weights = w.at(stratum.indices)
    if gcd(*stratum_weights) != stratum.delta:
        raise ValueError(
            f"stratum delta {stratum.delta} does not match gcd {gcd(*stratum_weights)} of weights {stratum_weights}"
        )
    cutting = tuple(
        j for j, d in enumerate(spec.degrees) if is_representable(d, stratum_weights)
    )
    dim_general = max(stratum.dim - len(cutting), -1)
    return StratumIntersection(stratum, cutting, dim_general, contained=not cutting)


def dimca_codim(spec: WCISpec, delta: int) -> int:
    """Divisibility-count formula for the codimension (inside the family) of
    the intersection with the delta-divisible stratum: k(delta) - N(delta)
    + N - k + 1, where k(delta) counts delta-divisible degrees and N(delta)
    counts delta-divisible weights."""
    if not isinstance(delta, int) or delta <= 1:
        raise ValueError(f"delta must be an integer greater than 1, got {delta!r}")
    k_delta = sum(1 for d in spec.degrees if d % delta == 0)
    n_delta = sum(1 for a in spec.weights if a % delta == 0)
    return k_delta - n_delta + spec.weights.dim - spec.codimension + 1


@lru_cache(maxsize=None)
def _singular_subsets(entries: tuple[int, ...], size: int) -> tuple:
    """All index subsets of the given size whose weights share a divisor > 1."""
    if size < 1 or size > len(entries) or all(a == 1 for a in entries):
        return ()
    out = []
    for idx in combinations(range(len(entries)), size):
        g = 0
        for i in idx:
            g = gcd(g, entries[i])
            if g == 1:
                break
        if g > 1:
            out.append((idx, g))
    return tuple(out)


@dataclass(frozen=True)
class _StrataAnalysis:
    strata: tuple[StratumIntersection, ...]
    sing_dim: int
    well_formed: bool
    wf_evidence: tuple[StratumIntersection, ...]
    weakly_well_formed: bool
    weak_evidence: tuple[Stratum, ...]


def _analyze_strata(spec: WCISpec) -> _StrataAnalysis:
    if not is_well_formed_space(spec.weights):
        return _StrataAnalysis((), -1, False, (), False, ())
    dim_x = spec.dimension
    inters = []
    for st in singular_strata(spec.weights, maximal_only=True):
        si = stratum_intersection(spec, st)
        dc = dimca_codim(spec, st.delta)
        # Compare dimensions with both sides floored at -1: below that both
        # formulas just mean the empty set.
        agrees = max(dim_x - dc, -1) == si.dim_general
        inters.append(replace(si, dimca_codim=dc, dimca_agrees=agrees))

    weak_hits = []
    if dim_x >= 1:
        for idx, delta in _singular_subsets(spec.weights.entries, dim_x):
            stratum_weights = spec.weights.at(idx)
            if not any(is_representable(d, stratum_weights) for d in spec.degrees):
                weak_hits.append(Stratum(idx, delta))

    # A contained stratum of codimension one in the family forces the
    # singular intersection up to dim_X - 1 even when the covering family's
    # per-stratum model misses it (the restrictions need not cut
    # independently); fold those strata in so well_formed cannot contradict
    # weakly_well_formed.
    known = {si.stratum.indices for si in inters}
    for st in weak_hits:
        if st.indices not in known:
            inters.append(stratum_intersection(spec, st))
    inters.sort(key=lambda si: (-si.stratum.dim, si.stratum.indices))

    sing_dim = max((si.dim_general for si in inters), default=-1)
    well_formed = dim_x - sing_dim >= 2
    wf_evidence = tuple(si for si in inters if dim_x - si.dim_general < 2)
    return _StrataAnalysis(
        tuple(inters), sing_dim, well_formed, wf_evidence, not weak_hits, tuple(weak_hits)
    )


def is_well_formed(spec: WCISpec) -> tuple[bool, list[StratumIntersection]]:
    """Whether the general member meets the ambient singular locus in
    codimension at least two.  Requires a well-formed ambient space (false
    otherwise, with empty evidence); the evidence lists every stratum
    violating the bound."""
    a = _analyze_strata(spec)
    return a.well_formed, list(a.wf_evidence)


def is_weakly_well_formed(spec: WCISpec) -> tuple[bool, list[Stratum]]:
    """Whether the general member contains no singular stratum of codimension
    one in itself.  All singular index subsets of the critical size are
    checked, not only the maximal covering family, because containment is not
    monotone upward in the subset."""
    a = _analyze_strata(spec)
    return a.weakly_well_formed, list(a.weak_evidence)


def adjunction_data(spec: WCISpec) -> tuple[int, Fraction]:
    """Amplitude (sum of degrees minus sum of weights) and the canonical
    self-intersection number amplitude^dim * (prod degrees)/(prod weights) as
    an exact rational.  Both carry geometric meaning only for quasi-smooth
    well-formed families; the classification report flags the caveats."""
    amplitude = sum(spec.degrees) - sum(spec.weights.entries)
    self_int = Fraction(amplitude) ** spec.dimension * Fraction(
        prod(spec.degrees), prod(spec.weights.entries)
    )
    return amplitude, self_int


def classify(spec: WCISpec) -> AnalysisReport:
    """Assemble the full report and the main-theorem consistency status.

    The comparison theorem concerns quasi-smooth families of dimension at
    least 3 that are not intersections with a linear cone; inside that range
    differing verdicts imply the general member is not quasi-smooth.
    """
    a = _analyze_strata(spec)
    dim_x = spec.dimension
    cone = is_linear_cone(spec)
    amplitude, self_int = adjunction_data(spec)

    flags = []
    if any(si.contained and si.dim_general == dim_x for si in a.strata):
        flags.append(FLAG_DEGENERATE_CONTAINMENT)
    if any(si.dimca_agrees is False for si in a.strata):
        flags.append(FLAG_DIMCA_MISMATCH)
    if dim_x == 2 and self_int.denominator != 1:
        flags.append(FLAG_NONINTEGRAL_SURFACE)

    if dim_x < 3:
        status = THEOREM_NOT_APPLICABLE_DIM
    elif cone:
        status = THEOREM_NOT_APPLICABLE_LINEAR_CONE
    elif a.well_formed == a.weakly_well_formed:
        status = THEOREM_CONSISTENT
    else:
        status = THEOREM_IMPLIES_NOT_QUASISMOOTH

    return AnalysisReport(
        spec=spec,
        space_well_formed=is_well_formed_space(spec.weights),
        dim_X=dim_x,
        linear_cone=cone,
        amplitude=amplitude,
        canonical_self_intersection=self_int,
        strata=a.strata,
        sing_intersection_dim=a.sing_dim,
        well_formed=a.well_formed,
        weakly_well_formed=a.weakly_well_formed,
        theorem_status=status,
        flags=tuple(flags),
    )
