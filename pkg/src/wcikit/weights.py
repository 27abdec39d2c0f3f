"""Weight arithmetic for weighted projective spaces.

A weighted projective space is described here purely by the ordered tuple of
positive integer weights attached to its homogeneous coordinates.  This module
decides whether such a tuple is well formed (every choice of all-but-one
weights is collectively coprime), normalizes an arbitrary tuple to a
well-formed representative via the standard grading isomorphisms, and
enumerates the singular coordinate strata of a well-formed tuple.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import gcd

# Entries beyond this cap are rejected at construction; arithmetic stays exact.
MAX_ENTRY = 2**63 - 1

OVERALL_GCD = "overall-gcd"
EXCLUDED_INDEX = "excluded-index"


@dataclass(frozen=True)
class Weights:
    """Coordinate weights (a0, ..., aN) of a graded polynomial ring.

    A weighted projective space needs at least two coordinates; the
    space-level operations enforce that, while a single-variable tuple is
    still a valid ring context for polynomials.
    """

    entries: tuple[int, ...]

    def __post_init__(self):
        entries = tuple(self.entries)
        object.__setattr__(self, "entries", entries)
        if not entries:
            raise ValueError("need at least one weight")
        for a in entries:
            if not isinstance(a, int) or isinstance(a, bool):
                raise ValueError(f"weight {a!r} is not an integer")
            if a < 1:
                raise ValueError(f"weights must be positive, got {a}")
            if a > MAX_ENTRY:
                raise ValueError(f"weight {a} exceeds the 2^63-1 limit")

    @classmethod
    def parse(cls, text: str) -> "Weights":
        """Parse comma-separated decimal weights, e.g. ``"1,1,2,2,2"``."""
        try:
            entries = tuple(int(part.strip()) for part in text.split(","))
        except ValueError:
            raise ValueError(f"cannot parse weights from {text!r}") from None
        return cls(entries)

    def __str__(self) -> str:
        return ",".join(str(a) for a in self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    @property
    def dim(self) -> int:
        """Projective dimension of the ambient space (one less than the coordinate count)."""
        return len(self.entries) - 1

    def at(self, indices) -> tuple[int, ...]:
        """Weights at the given coordinate indices, in index order."""
        return tuple(self.entries[i] for i in indices)

    def to_json(self) -> list[int]:
        return list(self.entries)


def as_weights(w) -> Weights:
    """Coerce a Weights instance or any iterable of integers."""
    if isinstance(w, Weights):
        return w
    return Weights(tuple(w))


@dataclass(frozen=True)
class Stratum:
    """Coordinate subspace on which every coordinate outside ``indices`` vanishes.

    ``delta`` is the gcd of the weights at ``indices``; the stratum lies in the
    singular locus of a well-formed space exactly when ``delta > 1``.
    """

    indices: tuple[int, ...]
    delta: int

    def __post_init__(self):
        idx = tuple(sorted(self.indices))
        if not idx:
            raise ValueError("a stratum needs at least one coordinate index")
        if len(set(idx)) != len(idx):
            raise ValueError("stratum indices must be distinct")
        if idx[0] < 0:
            raise ValueError("stratum indices must be non-negative")
        object.__setattr__(self, "indices", idx)
        if not isinstance(self.delta, int) or self.delta < 1:
            raise ValueError(f"delta must be a positive integer, got {self.delta!r}")

    @classmethod
    def of(cls, weights, indices) -> "Stratum":
        """Build the stratum on ``indices``, computing delta from the weights."""
        w = as_weights(weights)
        idx = tuple(sorted(set(indices)))
        if not idx or idx[0] < 0 or idx[-1] > w.dim:
            raise ValueError(
                f"stratum indices {sorted(set(indices))} out of range for {len(w)} coordinates"
            )
        return cls(idx, gcd(*w.at(idx)))

    @property
    def dim(self) -> int:
        return len(self.indices) - 1

    @property
    def is_singular(self) -> bool:
        return self.delta > 1

    def to_json(self) -> dict:
        return {"indices": list(self.indices), "delta": self.delta, "dim": self.dim}


@dataclass(frozen=True)
class NormalizationStep:
    """One division step of the normalization: either all entries were divided
    by ``divisor`` (overall-gcd) or all entries except ``index`` were
    (excluded-index)."""

    kind: str
    divisor: int
    index: int | None = None

    def __post_init__(self):
        if self.kind not in (OVERALL_GCD, EXCLUDED_INDEX):
            raise ValueError(f"unknown step kind {self.kind!r}")
        if self.divisor <= 1:
            raise ValueError("step divisors must exceed 1")
        if (self.kind == EXCLUDED_INDEX) != (self.index is not None):
            raise ValueError("excluded-index steps carry an index; overall-gcd steps do not")

    def to_json(self) -> dict:
        return {"kind": self.kind, "index": self.index, "divisor": self.divisor}


@dataclass(frozen=True)
class NormalizationTrace:
    """Audit trail of ``well_form``: replaying the steps reproduces the result."""

    steps: tuple[NormalizationStep, ...]
    result: Weights

    def replay(self, start) -> Weights:
        entries = list(as_weights(start).entries)
        for step in self.steps:
            if step.kind == OVERALL_GCD:
                entries = [a // step.divisor for a in entries]
            else:
                entries = [
                    a if i == step.index else a // step.divisor
                    for i, a in enumerate(entries)
                ]
        return Weights(tuple(entries))

    def to_json(self) -> list[dict]:
        return [step.to_json() for step in self.steps]


def _excluded_gcds(entries) -> list[int]:
    """For every position i, the gcd of all entries except entries[i]."""
    n = len(entries)
    prefix = [0] * (n + 1)  # gcd(x, 0) == x, so 0 is the identity seed
    for i, a in enumerate(entries):
        prefix[i + 1] = gcd(prefix[i], a)
    out = [0] * n
    suffix = 0
    for i in range(n - 1, -1, -1):
        out[i] = gcd(prefix[i], suffix)
        suffix = gcd(suffix, entries[i])
    return out


def _space_entries(w) -> tuple[int, ...]:
    entries = as_weights(w).entries
    if len(entries) < 2:
        raise ValueError("a weighted projective space needs at least two coordinates")
    return entries


def is_well_formed_space(w) -> bool:
    """True iff for every index i the remaining weights have gcd 1."""
    return all(g == 1 for g in _excluded_gcds(_space_entries(w)))


def well_form(w) -> tuple[Weights, NormalizationTrace]:
    """Normalize weights to a well-formed representative of the same space.

    Repeats two moves until neither applies: divide all entries by their
    overall gcd; then, for the smallest index whose complementary gcd g
    exceeds 1, divide every entry except that one by g.  Each move realizes a
    grading isomorphism, the entry product strictly decreases, and the entry
    order is preserved.  Returns the result together with a replayable trace.
    """
    start = as_weights(w)
    entries = list(_space_entries(start))
    steps: list[NormalizationStep] = []
    while True:
        g = gcd(*entries)
        if g > 1:
            entries = [a // g for a in entries]
            steps.append(NormalizationStep(OVERALL_GCD, g))
        for i, gi in enumerate(_excluded_gcds(entries)):
            if gi > 1:
                entries = [a if j == i else a // gi for j, a in enumerate(entries)]
                steps.append(NormalizationStep(EXCLUDED_INDEX, gi, i))
                break
        else:
            break
    result = start if not steps else Weights(tuple(entries))
    return result, NormalizationTrace(tuple(steps), result)


def _coprime_base(values) -> list[int]:
    """Pairwise-coprime integers > 1 over whose powers every input factors.

    Built by repeated gcd splitting, so no integer factorization is needed
    even for 63-bit weights.  Primes inside one base element divide exactly
    the same inputs, hence the base elements reproduce the divisibility
    patterns of all primes dividing some input.
    """
    base: list[int] = []
    pending = [v for v in values if v > 1]
    while pending:
        n = pending.pop()
        for j, b in enumerate(base):
            g = gcd(n, b)
            if g > 1:
                del base[j]
                pending.extend(x for x in (g, b // g, n // g) if x > 1)
                break
        else:
            base.append(n)
    return sorted(set(base))


def singular_strata(w, maximal_only: bool = True, max_size: int | None = None) -> list[Stratum]:
    """Singular strata of a well-formed weight tuple.

    With ``maximal_only`` the covering family is returned: one stratum per
    prime p dividing some weight, on the indices of the p-divisible weights,
    deduplicated by index set; delta is the full gcd over the index set (it
    may be composite when several primes share a pattern).  Otherwise every
    index subset whose weights share a divisor is returned, up to
    ``max_size`` if given (the subset count grows exponentially).  Sorted by
    (dimension descending, indices ascending).
    """
    weights = as_weights(w)
    if not is_well_formed_space(weights):
        raise ValueError("singular strata are defined for well-formed weights; run well_form first")
    entries = _space_entries(weights)
    index_sets: set[tuple[int, ...]] = set()
    if maximal_only:
        for b in _coprime_base(entries):
            index_sets.add(tuple(i for i, a in enumerate(entries) if a % b == 0))
    else:
        bound = len(entries) if max_size is None else min(max_size, len(entries))
        for size in range(1, bound + 1):
            for idx in combinations(range(len(entries)), size):
                if gcd(*(entries[i] for i in idx)) > 1:
                    index_sets.add(idx)
    strata = [Stratum(idx, gcd(*weights.at(idx))) for idx in index_sets]
    strata.sort(key=lambda s: (-s.dim, s.indices))
    return strata
