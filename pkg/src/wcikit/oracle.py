"""Finite-field probing for singular points on affine cones.

The probes replace the complex numbers with small prime fields, which fixes
the semantics once and for all: a reported witness is a definitive singular
point of that explicit member over that field, while an empty scan is
evidence only and never a proof of quasi-smoothness.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from math import gcd

from .analysis import WCISpec
from .poly import GF, PolySystem, PrimeField, evaluate, partial_derivative, restrict
from .weights import Stratum

STATUS_NO_WITNESS = "no_witness_found"
STATUS_SINGULAR_WITNESS = "singular_witness"

SEARCH_COMPLETED = "searched"
SEARCH_NOT_ENGAGED = "no_vanishing_restriction"

DEFAULT_PRIMES = (3, 5, 7)
EXHAUSTIVE_LIMIT = 10**7
DEFAULT_SAMPLE_COUNT = 100_000


@dataclass(frozen=True)
class ConePoint:
    """A nonzero point of the affine cone coordinates over a prime field."""

    coords: tuple[int, ...]

    def __post_init__(self):
        coords = tuple(self.coords)
        object.__setattr__(self, "coords", coords)
        if not coords:
            raise ValueError("a cone point needs coordinates")
        if not any(coords):
            raise ValueError("the origin is not a punctured-cone point")

    def to_json(self) -> list[int]:
        return list(self.coords)


def matrix_rank(rows, field) -> int:
    """Exact Gaussian-elimination rank, pivoting on the first nonzero entry in
    each column."""
    m = [list(r) for r in rows]
    if not m or not m[0]:
        return 0
    cols = len(m[0])
    rank = 0
    for c in range(cols):
        pivot = next((i for i in range(rank, len(m)) if m[i][c]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = field.inv(m[rank][c])
        m[rank] = [field.mul(inv, v) for v in m[rank]]
        for i in range(rank + 1, len(m)):
            f = m[i][c]
            if f:
                m[i] = [field.sub(m[i][j], field.mul(f, m[rank][j])) for j in range(cols)]
        rank += 1
        if rank == len(m):
            break
    return rank


def jacobian_rank(sys: PolySystem, point) -> int:
    """Rank of the k x (N+1) matrix of partial derivatives evaluated at the point."""
    coords = point.coords if isinstance(point, ConePoint) else tuple(point)
    n = len(sys.weights)
    rows = [
        [evaluate(partial_derivative(f, i), coords) for i in range(n)] for f in sys.polys
    ]
    return matrix_rank(rows, sys.field)


def is_singular_witness(sys: PolySystem, point) -> bool:
    """Whether the point lies on the cone (all equations vanish) with Jacobian
    rank below the codimension."""
    coords = point.coords if isinstance(point, ConePoint) else tuple(point)
    if any(evaluate(f, coords) for f in sys.polys):
        return False
    return jacobian_rank(sys, coords) < len(sys.polys)


def hygienic_primes(primes, weights, degrees) -> tuple[int, ...]:
    """Drop primes dividing any weight or any degree (their derivatives degenerate)."""
    values = tuple(weights) + tuple(degrees)
    return tuple(p for p in primes if all(v % p for v in values))


@dataclass(frozen=True)
class QSVerdict:
    """Outcome of a quasi-smoothness probe.

    ``singular_witness`` is definitive for the scanned member; absence of
    witnesses is one-sided evidence.  ``exhaustive`` is true only when every
    probed field was scanned completely.
    """

    status: str
    witnesses: tuple[tuple[int, ConePoint], ...]
    fields_probed: tuple[int, ...]
    points_scanned: int
    exhaustive: bool

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "witnesses": [
                {"prime": p, "point": pt.to_json()} for p, pt in self.witnesses
            ],
            "fields_probed": list(self.fields_probed),
            "points_scanned": self.points_scanned,
            "exhaustive": self.exhaustive,
        }


def _system_over(sys: PolySystem, p: int) -> PolySystem:
    field = GF(p)
    if sys.field == field:
        return sys
    if isinstance(sys.field, PrimeField):
        raise ValueError(f"system is over {sys.field.name}, cannot probe over GF({p})")
    return sys.reduce_mod(p)


def _compiled_eval(poly, powt, p):
    terms = [
        (coeff, [(i, e) for i, e in enumerate(exps) if e]) for exps, coeff in poly.terms
    ]

    def ev(pt):
        s = 0
        for coeff, ves in terms:
            v = coeff
            for i, e in ves:
                x = pt[i]
                if not x:
                    v = 0
                    break
                v = v * powt[x][e] % p
            if v:
                s += v
        return s % p

    return ev


def _power_table(p, max_exp):
    return [[pow(x, e, p) for e in range(max_exp + 1)] for x in range(p)]


def _max_exponent(polys) -> int:
    return max(
        (e for f in polys for exps, _ in f.terms for e in exps), default=1
    )


def quasi_smooth_probe(
    sys: PolySystem,
    primes=DEFAULT_PRIMES,
    max_points: int = EXHAUSTIVE_LIMIT,
    *,
    sample_count: int = DEFAULT_SAMPLE_COUNT,
    seed: int = 0,
    allow_bad_primes: bool = False,
) -> QSVerdict:
    """Scan nonzero points of F_p^(N+1) for singular points of the affine cone.

    Fields with p^(N+1) <= max_points are scanned exhaustively; larger ones
    by ``sample_count`` seeded uniform draws (deterministic).  Primes dividing
    a weight or degree are excluded unless ``allow_bad_primes``.  A rational-
    coefficient system is reduced mod each prime.
    """
    primes = tuple(dict.fromkeys(int(p) for p in primes))
    if not allow_bad_primes:
        usable = hygienic_primes(primes, sys.weights, sys.degrees)
        if not usable:
            raise ValueError(
                f"all of the primes {list(primes)} divide a weight or degree; "
                "pass allow_bad_primes=True to probe anyway"
            )
        primes = usable
    k = len(sys.polys)
    n1 = len(sys.weights)
    witnesses = []
    scanned = 0
    all_exhaustive = True
    for p in primes:
        fsys = _system_over(sys, p)
        field = GF(p)
        derivs = [[partial_derivative(f, i) for i in range(n1)] for f in fsys.polys]
        max_exp = max(_max_exponent(fsys.polys), _max_exponent([d for row in derivs for d in row]))
        powt = _power_table(p, max_exp)
        f_evals = [_compiled_eval(f, powt, p) for f in fsys.polys]
        d_evals = [[_compiled_eval(d, powt, p) for d in row] for row in derivs]
        if p**n1 <= max_points:
            points = itertools.product(range(p), repeat=n1)
        else:
            rng = random.Random(seed)
            points = (
                tuple(rng.randrange(p) for _ in range(n1)) for _ in range(sample_count)
            )
            all_exhaustive = False
        for pt in points:
            if not any(pt):
                continue
            scanned += 1
            if any(fe(pt) for fe in f_evals):
                continue
            rows = [[de(pt) for de in row] for row in d_evals]
            if matrix_rank(rows, field) < k:
                point = ConePoint(pt)
                if not is_singular_witness(fsys, point):
                    raise RuntimeError(f"internal: witness {pt} failed re-verification")
                witnesses.append((p, point))
    status = STATUS_SINGULAR_WITNESS if witnesses else STATUS_NO_WITNESS
    return QSVerdict(status, tuple(witnesses), primes, scanned, all_exhaustive)


def determinantal_codim_bound(r: int, m: int, u: int) -> int:
    """Codimension bound (r-u)(m-u) for the locus where an r x m matrix of
    regular functions has rank at most u."""
    if not all(isinstance(v, int) and not isinstance(v, bool) for v in (r, m, u)):
        raise ValueError("arguments must be integers")
    if r < 1 or m < 1 or u < 0:
        raise ValueError(f"need r, m >= 1 and u >= 0, got r={r}, m={m}, u={u}")
    return (r - u) * (m - u)


@dataclass(frozen=True)
class WitnessSearchReport:
    """Mechanized well-formedness witness search along one singular stratum.

    ``r`` counts the equations whose restriction to the stratum is
    identically zero; the search scans the stratum's cone for points where
    the r x (off-stratum) matrix of restricted partials drops rank (the locus
    Z) and filters by the remaining equations (the set S).  Every S point is
    a singular point of the affine cone, re-verified against the full
    Jacobian.  ``r_from_divisibility`` is the count k - k(delta) predicted by
    degree divisibility alone; disagreement is surfaced, not hidden.
    """

    status: str
    prime: int
    stratum: Stratum
    delta: int
    r: int
    r_from_divisibility: int
    vanishing_poly_indices: tuple[int, ...]
    g_columns: tuple[int, ...]
    z_points: tuple[ConePoint, ...]
    s_points: tuple[ConePoint, ...]
    origin_in_z: bool
    linear_cone_escape: bool
    points_scanned: int

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "prime": self.prime,
            "stratum": self.stratum.to_json(),
            "delta": self.delta,
            "r": self.r,
            "r_from_divisibility": self.r_from_divisibility,
            "r_agrees": self.r == self.r_from_divisibility,
            "vanishing_poly_indices": list(self.vanishing_poly_indices),
            "G_columns": list(self.g_columns),
            "Z_points": [pt.to_json() for pt in self.z_points],
            "S_points": [pt.to_json() for pt in self.s_points],
            "origin_in_Z": self.origin_in_z,
            "linear_cone_escape": self.linear_cone_escape,
            "points_scanned": self.points_scanned,
        }


def wf_witness_search(
    spec: WCISpec, sys: PolySystem, stratum: Stratum, p: int
) -> WitnessSearchReport:
    """Search the stratum's affine cone over F_p for singular points of the
    member's cone, following the rank-drop mechanism.

    When no restriction vanishes identically (r = 0) the mechanism does not
    engage and an empty report with a distinct status is returned.  When some
    restricted partial derivative is a nonzero constant the origin may escape
    Z; that is exactly the linear-cone escape and is flagged.
    """
    if not stratum.is_singular:
        raise ValueError(f"stratum {list(stratum.indices)} has delta 1; nothing singular to search")
    if stratum.indices[-1] > spec.weights.dim:
        raise ValueError(f"stratum indices {list(stratum.indices)} out of range")
    if gcd(*spec.weights.at(stratum.indices)) != stratum.delta:
        raise ValueError("stratum delta does not match the family weights")
    fsys = _system_over(sys, p)
    if fsys.weights != spec.weights:
        raise ValueError("system weights do not match the family weights")
    if fsys.degrees != spec.degrees:
        raise ValueError(
            f"system degrees {fsys.degrees} do not match the family degrees {spec.degrees}"
        )
    field = GF(p)
    k = len(fsys.polys)
    n1 = len(spec.weights)
    on_idx = stratum.indices
    off_idx = tuple(i for i in range(n1) if i not in set(on_idx))
    delta = stratum.delta
    r_div = k - sum(1 for d in spec.degrees if d % delta == 0)

    restrictions = [restrict(f, on_idx) for f in fsys.polys]
    vanishing = tuple(j for j, rf in enumerate(restrictions) if rf.is_zero)
    r = len(vanishing)
    if r == 0:
        return WitnessSearchReport(
            SEARCH_NOT_ENGAGED, p, stratum, delta, 0, r_div, (), off_idx,
            (), (), False, False, 0,
        )

    g_rows = [
        [restrict(partial_derivative(fsys.polys[j], i), on_idx) for i in off_idx]
        for j in vanishing
    ]
    escape = any(bool(g.constant_term()) for row in g_rows for g in row)
    remaining = [restrictions[j] for j in range(k) if j not in vanishing]

    flat_g = [g for row in g_rows for g in row]
    max_exp = max(_max_exponent(flat_g + remaining), 1)
    powt = _power_table(p, max_exp)
    g_evals = [[_compiled_eval(g, powt, p) for g in row] for row in g_rows]
    rem_evals = [_compiled_eval(f, powt, p) for f in remaining]

    origin = (0,) * n1
    origin_in_z = (
        matrix_rank([[evaluate(g, origin) for g in row] for row in g_rows], field) < r
    )

    z_points = []
    s_points = []
    scanned = 0
    for assignment in itertools.product(range(p), repeat=len(on_idx)):
        if not any(assignment):
            continue
        scanned += 1
        pt = [0] * n1
        for i, v in zip(on_idx, assignment):
            pt[i] = v
        pt = tuple(pt)
        rows = [[ge(pt) for ge in row] for row in g_evals]
        if matrix_rank(rows, field) < r:
            point = ConePoint(pt)
            z_points.append(point)
            if all(fe(pt) == 0 for fe in rem_evals):
                s_points.append(point)

    for point in s_points:
        if not is_singular_witness(fsys, point):
            raise RuntimeError(f"internal: S point {point.coords} failed re-verification")

    return WitnessSearchReport(
        SEARCH_COMPLETED, p, stratum, delta, r, r_div, vanishing, off_idx,
        tuple(z_points), tuple(s_points), origin_in_z, escape, scanned,
    )
