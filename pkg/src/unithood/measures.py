"""Unithood measures over a :class:`~unithood.counts.CountSnapshot`.

Scores are plain floats; ``math.inf`` and ``-math.inf`` are the extreme
values of the odds of unithood and compare correctly against any finite
threshold.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from .counts import CountSnapshot, InvalidSampleSpaceError

DEFAULT_OU_THRESHOLD = -8.39


class UndefinedMeasureError(ArithmeticError):
    """A measure has no value for these counts (zero marginal or denominator)."""


@dataclass(frozen=True)
class UhThresholds:
    mi_plus: float = 0.9
    mi_minus: float = 0.02
    id_t: float = 6.0
    idr_plus: float = 1.35
    idr_minus: float = 0.93

    def __post_init__(self):
        if self.mi_plus < self.mi_minus:
            raise ValueError("mi_plus must be >= mi_minus")
        if self.idr_plus < self.idr_minus:
            raise ValueError("idr_plus must be >= idr_minus")


@dataclass(frozen=True)
class OuConfig:
    log_base: float = 10.0
    ou_threshold: float = DEFAULT_OU_THRESHOLD
    mi_joint_source: str = "n_xy"

    def __post_init__(self):
        if not self.log_base > 1:
            raise ValueError("log_base must be greater than 1")
        if self.mi_joint_source not in ("n_xy", "n_s"):
            raise ValueError("mi_joint_source must be 'n_xy' or 'n_s'")


@dataclass(frozen=True)
class Decision:
    merge: bool
    score: float
    measure_name: str


@dataclass(frozen=True)
class CValueInput:
    candidate: Sequence[str]
    f_a: int
    longer: Sequence[tuple[Sequence[str], int]] = field(default_factory=tuple)
    g: int = 0

    def __post_init__(self):
        cand = tuple(self.candidate)
        if any(tuple(c) == cand for c, _ in self.longer):
            raise ValueError("a candidate cannot be in its own longer set")


def mutual_information(snapshot: CountSnapshot, joint_source: str = "n_xy") -> float:
    """Pointwise mutual information (bits) between the two units."""
    if snapshot.N <= 0:
        raise InvalidSampleSpaceError("N must be positive")
    if snapshot.n_x == 0 or snapshot.n_y == 0:
        raise UndefinedMeasureError("mutual information needs non-zero marginals")
    joint = snapshot.n_xy if joint_source == "n_xy" else snapshot.n_s
    if joint == 0:
        return -math.inf
    # p(a,b) / (p(a) p(b)) with the N's collected into one factor
    return math.log2(joint * snapshot.N / (snapshot.n_x * snapshot.n_y))


def lexical_independence(n_z: int, n_s: int) -> float:
    """How often unit ``z`` appears outside the longer string ``s`` (log10)."""
    return math.log10(n_z - n_s) if n_z > n_s else 0.0


def independence_ratio(id_x: float, id_y: float) -> float:
    if id_y == 0:
        raise UndefinedMeasureError("independence ratio with zero denominator")
    return id_x / id_y


def unithood_uh(snapshot: CountSnapshot, thresholds: UhThresholds = UhThresholds(),
                config: OuConfig = OuConfig()) -> Decision:
    """The five-threshold UH mergeability function.

    Merges on very high mutual information, or on mid-range mutual
    information when both units are also independent enough of ``s`` and
    balanced in their independence.  A measure that is undefined for these
    counts fails only the condition that uses it.  The decision's score is
    the mutual information (NaN when undefined).
    """
    t = thresholds
    try:
        mi = mutual_information(snapshot, config.mi_joint_source)
    except UndefinedMeasureError:
        return Decision(False, math.nan, "uh")
    if mi > t.mi_plus:
        return Decision(True, mi, "uh")
    if not t.mi_plus >= mi >= t.mi_minus:
        return Decision(False, mi, "uh")
    id_x = lexical_independence(snapshot.n_x, snapshot.n_s)
    id_y = lexical_independence(snapshot.n_y, snapshot.n_s)
    if id_x < t.id_t or id_y < t.id_t:
        return Decision(False, mi, "uh")
    try:
        idr = independence_ratio(id_x, id_y)
    except UndefinedMeasureError:
        return Decision(False, mi, "uh")
    return Decision(t.idr_plus >= idr >= t.idr_minus, mi, "uh")


def uh_from_measures(mi: float, id_x: float, id_y: float,
                     thresholds: UhThresholds = UhThresholds()) -> bool:
    """UH evaluated on precomputed MI and independence values."""
    t = thresholds
    if mi > t.mi_plus:
        return True
    if not (t.mi_plus >= mi >= t.mi_minus and id_x >= t.id_t and id_y >= t.id_t):
        return False
    try:
        idr = independence_ratio(id_x, id_y)
    except UndefinedMeasureError:
        return False
    return t.idr_plus >= idr >= t.idr_minus


def odds_local(snapshot: CountSnapshot) -> float:
    """Exclusivity odds: documents with ``s`` against co-occurrences without it.

    Defined as 1 when every co-occurrence is in the conjoined form.
    """
    rest = snapshot.n_xy - snapshot.n_s
    if rest < 0:
        raise ValueError("snapshot not normalized: n_s > n_xy")
    if rest == 0:
        return 1.0
    return snapshot.n_s / rest


def odds_global(snapshot: CountSnapshot) -> float:
    """Pervasiveness odds of ``s`` in the whole sample space."""
    if snapshot.N <= 0:
        raise InvalidSampleSpaceError("N must be positive")
    if snapshot.n_s > snapshot.N:
        raise ValueError("snapshot not normalized: n_s > N")
    if snapshot.n_s == snapshot.N:
        return math.inf
    return snapshot.n_s / (snapshot.N - snapshot.n_s)


def odds_of_unithood(snapshot: CountSnapshot, config: OuConfig = OuConfig()) -> float:
    """Sum of the logs of the local and global odds, in ``config.log_base``."""
    if snapshot.N <= 0:
        raise InvalidSampleSpaceError("N must be positive")
    o_l = odds_local(snapshot)
    o_g = odds_global(snapshot)
    if o_l == 0 or o_g == 0:
        return -math.inf
    if math.isinf(o_g):
        return math.inf
    return math.log(o_l, config.log_base) + math.log(o_g, config.log_base)


def decide_merge_ou(score: float, ou_threshold: float = DEFAULT_OU_THRESHOLD) -> Decision:
    # inclusive at equality
    return Decision(score >= ou_threshold, score, "ou")


def c_value(inp: CValueInput) -> float:
    n = len(inp.candidate)
    if n == 0:
        raise ValueError("empty candidate")
    if n > inp.g:
        raise ValueError(f"candidate length {n} exceeds longest n-gram g={inp.g}")
    weight = math.log2(n)
    if n == inp.g or not inp.longer:
        return weight * inp.f_a
    mean_longer = sum(f for _, f in inp.longer) / len(inp.longer)
    return weight * (inp.f_a - mean_longer)
