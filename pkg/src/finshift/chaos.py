"""The theorem engine.

Decides Li-Yorke chaoticity of the one-sided shift over a finite space,
constructs scrambled witnesses, exhaustively verifies the equivalence of
the three space-level conditions over all small labeled topologies, and
analyzes generalized shifts sigma_phi for two finitely presented classes
of index maps (finite maps; N with finite overrides plus an affine tail).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Optional, Union

from .errors import (
    CapExceeded,
    DuplicateParameters,
    IndexOutOfRange,
    NotChaotic,
    ParseError,
    SpaceTooSmall,
    UndecidedWithinBudget,
)
from .fintop import FinSpace, enumerate_topologies
from .shiftspace import (
    ALL_ZERO,
    Bitstream,
    PairVerdict,
    UltPeriodic,
    Witness,
    classify_pair,
    finite_horizon_oracle,
)

# Seed for the deterministic UltPeriodic pair samples drawn on the
# non-chaotic branch of verify_equivalence (documented constant; the
# per-space stream is SAMPLE_SEED * 1_000_003 + enumeration index).
SAMPLE_SEED = 24169

# Step cap for quasi-periodicity iteration; unreachable for sane inputs.
ITERATION_CAP = 10**6

# The two parameter bitstreams behind every scrambled witness pair.
WITNESS_ONE = Bitstream((1,), (0,))


@dataclass(frozen=True)
class ChaosReport:
    cond_d: bool  # some pair of points has disjoint closures
    cond_e: bool  # the intersection of all point closures is empty
    cond_f: bool  # no point has V(z) = X
    chaotic: bool
    core: frozenset[str]
    witness: Optional[tuple[Witness, Witness, PairVerdict]]
    explanation: str


def _conditions(x: FinSpace) -> tuple[bool, bool, bool]:
    """The three space-level conditions, each computed on its own route."""
    n = x.n
    cm = x.closeness_matrix()
    full = (1 << n) - 1
    cond_d = any(cm.rows[i] != full for i in range(n))
    cond_e = len(x.core()) == 0
    points = set(x.points)
    cond_f = all(x.min_nbhd(z) != points for z in x.points)
    return cond_d, cond_e, cond_f


def check_conditions(x: FinSpace) -> ChaosReport:
    """Evaluate conditions d/e/f independently and report the verdict.

    They are provably equivalent on finite spaces; their agreement is
    asserted here so a disagreement surfaces as a loud bug, never a
    silent wrong verdict.  The returned report carries no witness; see
    :func:`scrambled_witness`.
    """
    if x.n < 2:
        raise SpaceTooSmall("chaos analysis needs at least two points")
    cond_d, cond_e, cond_f = _conditions(x)
    if not (cond_d == cond_e == cond_f):
        raise AssertionError(
            f"internal: conditions disagree (d={cond_d} e={cond_e} f={cond_f}) "
            f"on {x!r}"
        )
    core = x.core()
    if cond_d:
        a, b = first_non_close_pair(x)
        explanation = (
            f"points {a} and {b} have disjoint closures; the shift carries "
            "an uncountable scrambled set of block witnesses over them"
        )
    else:
        explanation = (
            "every two point closures intersect (core "
            f"{{{','.join(p for p in x.points if p in core)}}} is nonempty), "
            "so closeness is all-true and every pair of sequences is asymptotic"
        )
    return ChaosReport(cond_d, cond_e, cond_f, cond_d, core, None, explanation)


def first_non_close_pair(x: FinSpace) -> tuple[str, str]:
    """First pair (in point order) with disjoint closures."""
    cm = x.closeness_matrix()
    n = x.n
    for i in range(n):
        for j in range(i + 1, n):
            if not (cm.rows[i] >> j) & 1:
                return x.points[i], x.points[j]
    raise NotChaotic("no pair of points has disjoint closures")


def scrambled_witness(x: FinSpace) -> tuple[Witness, Witness, PairVerdict]:
    """A concrete scrambled pair for a chaotic space.

    Deterministic: the base pair is the first non-close pair in point
    order, the parameters are `1 | 0` and the all-zero stream.
    """
    a, b = first_non_close_pair(x)
    u = Witness(a, b, WITNESS_ONE)
    v = Witness(a, b, ALL_ZERO)
    verdict = classify_pair(x, u, v)
    if not verdict.scrambled:
        raise AssertionError("internal: canonical witness pair not scrambled")
    return u, v, verdict


def default_parameters(k: int) -> tuple[Bitstream, ...]:
    """k pairwise distinct parameter streams: a single 1 at index i."""
    if k < 1:
        raise ValueError("need at least one parameter")
    return tuple(Bitstream((0,) * i + (1,), (0,)) for i in range(k))


def scrambled_family(x: FinSpace, params: Iterable[Bitstream]) -> list[Witness]:
    """Witness sequences over the first non-close pair, one per parameter.

    Parameters must be pairwise distinct as functions; every unordered
    pair of the result then classifies scrambled.
    """
    params = list(params)
    for i in range(len(params)):
        for j in range(i + 1, len(params)):
            if params[i].same_function(params[j]):
                raise DuplicateParameters(
                    f"parameters {i} and {j} are equal as functions"
                )
    a, b = first_non_close_pair(x)
    return [Witness(a, b, t) for t in params]


# -- exhaustive verification -------------------------------------------------


def shadow_thresholds(horizon: int) -> tuple[int, int]:
    """(min close run, min non-close count) a scrambled witness pair must
    show empirically at the given horizon.

    Documented defaults derived from the block arithmetic: at H=5000 the
    largest complete even block has 98 positions and the conflict blocks
    for low parameter indices sum to hundreds of positions, so (50, 50)
    is a comfortable but non-trivial gate; (10, 5) plays the same role
    at H=100.  Below that the blocks are too short to demand much.
    """
    if horizon >= 5000:
        return 50, 50
    if horizon >= 100:
        return 10, 5
    return 1, 1


@dataclass(frozen=True)
class VerificationReport:
    n: int
    spaces: int
    chaotic: int
    violations: tuple[str, ...]

    def machine_line(self) -> str:
        return (
            f"n={self.n} spaces={self.spaces} chaotic={self.chaotic} "
            f"violations={len(self.violations)}"
        )

    def render(self) -> str:
        lines = [
            f"verification of the shift-chaos equivalences on all labeled topologies, n={self.n}",
            f"  spaces:      {self.spaces:6d}",
            f"  chaotic:     {self.chaotic:6d}  (witness pair classified + horizon shadow)",
            f"  non-chaotic: {self.spaces - self.chaotic:6d}  (all-close matrix + 20 asymptotic samples each)",
            f"  violations:  {len(self.violations):6d}",
        ]
        lines.extend(f"  violation: {v}" for v in self.violations)
        return "\n".join(lines)


def _sample_ult_periodic(rng: random.Random, points: tuple[str, ...]) -> UltPeriodic:
    pre_len = rng.randrange(0, 3)  # preperiod length <= 2
    per_len = rng.randrange(1, 4)  # period length <= 3
    pre = tuple(rng.choice(points) for _ in range(pre_len))
    per = tuple(rng.choice(points) for _ in range(per_len))
    return UltPeriodic(pre, per)


def verify_equivalence(
    n: int,
    shadow_horizon: int = 5000,
    samples_per_space: int = 20,
) -> VerificationReport:
    """Exhaustively check the chaos equivalences over every labeled
    topology on n points.

    Per space: (i) conditions d/e/f must agree; (ii) if chaotic, the
    canonical witness pair must classify scrambled and pass the
    finite-horizon shadow; (iii) if not, the closeness matrix must be
    all-true and a deterministic seeded sample of ultimately periodic
    pairs must all classify asymptotic (the contrapositive direction:
    with a full core, every pair is asymptotic).
    """
    if not 2 <= n <= 5:
        raise CapExceeded(f"verification supports 2 <= n <= 5, got {n}")
    min_run, min_non_close = shadow_thresholds(shadow_horizon)
    spaces = 0
    chaotic_count = 0
    violations: list[str] = []

    def flag(idx: int, msg: str) -> None:
        if len(violations) < 20:
            violations.append(f"space #{idx}: {msg}")

    for idx, x in enumerate(enumerate_topologies(n)):
        spaces += 1
        cond_d, cond_e, cond_f = _conditions(x)
        if not (cond_d == cond_e == cond_f):
            flag(idx, f"conditions disagree d={cond_d} e={cond_e} f={cond_f}")
        if cond_d:
            chaotic_count += 1
            u, v, verdict = scrambled_witness(x)
            if (verdict.proximal, verdict.asymptotic, verdict.scrambled) != (
                True,
                False,
                True,
            ):
                flag(idx, f"witness verdict wrong: {verdict}")
            stats = finite_horizon_oracle(x, u, v, shadow_horizon)
            if stats.max_close_run < min_run or stats.non_close_count < min_non_close:
                flag(
                    idx,
                    f"witness shadow failed: run={stats.max_close_run} "
                    f"non_close={stats.non_close_count}",
                )
        else:
            if not x.closeness_matrix().all_close:
                flag(idx, "non-chaotic space with a non-close pair")
            rng = random.Random(SAMPLE_SEED * 1_000_003 + idx)
            for _ in range(samples_per_space):
                u = _sample_ult_periodic(rng, x.points)
                v = _sample_ult_periodic(rng, x.points)
                verdict = classify_pair(x, u, v)
                if not (verdict.asymptotic and verdict.proximal):
                    flag(idx, f"sampled pair not asymptotic: {u} vs {v}")
                    break
    return VerificationReport(n, spaces, chaotic_count, tuple(violations))


# -- generalized shifts ------------------------------------------------------


@dataclass(frozen=True)
class FiniteMap:
    """A self-map of {0, ..., n-1} given by its value table."""

    table: tuple[int, ...]

    def __post_init__(self):
        n = len(self.table)
        if n == 0:
            raise ValueError("finite map needs a nonempty index set")
        if any(not 0 <= v < n for v in self.table):
            raise ValueError("finite map values must lie in [0, n)")

    @property
    def size(self) -> int:
        return len(self.table)

    def apply(self, m: int) -> int:
        if not 0 <= m < len(self.table):
            raise IndexOutOfRange(f"index {m} outside [0, {len(self.table)})")
        return self.table[m]

    def describe(self) -> str:
        return f"finite n={self.size} map={','.join(str(v) for v in self.table)}"


@dataclass(frozen=True)
class NatAffineTail:
    """A self-map of N: finitely many overrides, then phi(m) = a*m + b.

    Overrides may only sit at indices <= threshold; beyond the threshold
    the affine rule is guaranteed.  a >= 1 and b >= 0 keep the map into N.
    """

    a: int
    b: int
    threshold: int
    overrides: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.a < 1 or self.b < 0 or self.threshold < 0:
            raise ValueError("need a >= 1, b >= 0, threshold >= 0")
        seen = set()
        for k, v in self.overrides:
            if k < 0 or v < 0:
                raise ValueError("override indices and values live in N")
            if k > self.threshold:
                raise ValueError(
                    f"override at {k} beyond threshold {self.threshold}"
                )
            if k in seen:
                raise ValueError(f"duplicate override for {k}")
            seen.add(k)
        object.__setattr__(self, "overrides", tuple(sorted(self.overrides)))

    def apply(self, m: int) -> int:
        if m < 0:
            raise IndexOutOfRange(f"index {m} outside N")
        for k, v in self.overrides:
            if k == m:
                return v
        return self.a * m + self.b

    def escape_bound(self) -> int:
        """Values above this never meet an override again."""
        vals = [self.threshold]
        for k, v in self.overrides:
            vals.append(k)
            vals.append(v)
        return max(vals)

    def tail_strictly_increasing(self) -> bool:
        # phi(m) = a*m + b > m for all m >= 1 iff a >= 2, or a = 1 and b >= 1
        return self.a >= 2 or (self.a == 1 and self.b >= 1)

    def describe(self) -> str:
        s = f"nat tail a={self.a} b={self.b} M={self.threshold}"
        if self.overrides:
            s += " overrides=" + ",".join(f"{k}->{v}" for k, v in self.overrides)
        return s


GSMap = Union[FiniteMap, NatAffineTail]


@dataclass(frozen=True)
class CycleFound:
    """phi^(entry+period)(alpha) = phi^entry(alpha) with entry >= 1."""

    entry: int
    period: int


@dataclass(frozen=True)
class EscapeProven:
    """From orbit value `from_index` on, the orbit strictly increases forever."""

    from_index: int
    reason: str


@dataclass(frozen=True)
class QPVerdict:
    quasi_periodic: bool
    certificate: Union[CycleFound, EscapeProven]


def quasi_periodic(phi: GSMap, alpha: int) -> QPVerdict:
    """Is the forward orbit {phi^n(alpha) : n >= 1} finite?

    Finite maps always are.  For affine-tail maps the orbit either
    revisits a value (cycle certificate) or climbs past every override
    with a strictly increasing tail (escape certificate).
    """
    if isinstance(phi, FiniteMap):
        _ = phi.apply(alpha)  # range check
        return QPVerdict(True, _find_cycle(phi, alpha))
    if alpha < 0:
        raise IndexOutOfRange(f"index {alpha} outside N")
    bound = phi.escape_bound()
    increasing = phi.tail_strictly_increasing()
    seen: dict[int, int] = {}
    x = alpha
    for step in range(1, ITERATION_CAP + 1):
        x = phi.apply(x)
        if x in seen:
            t = seen[x]
            return QPVerdict(True, CycleFound(entry=t, period=step - t))
        seen[x] = step
        if increasing and x > bound:
            return QPVerdict(
                False,
                EscapeProven(
                    from_index=x,
                    reason=(
                        f"orbit reaches {x} > {bound} (max of threshold and "
                        f"overrides); affine tail a={phi.a} b={phi.b} is "
                        "strictly increasing, so the orbit never returns"
                    ),
                ),
            )
    raise UndecidedWithinBudget(
        f"no cycle or escape within {ITERATION_CAP} steps from {alpha}"
    )


def _find_cycle(phi: FiniteMap, alpha: int) -> CycleFound:
    seen: dict[int, int] = {}
    x = alpha
    step = 0
    while True:
        x = phi.apply(x)
        step += 1
        if x in seen:
            return CycleFound(entry=seen[x], period=step - seen[x])
        seen[x] = step


def replay_certificate(phi: GSMap, alpha: int, verdict: QPVerdict) -> bool:
    """Re-check a quasi-periodicity certificate from scratch."""
    cert = verdict.certificate
    if isinstance(cert, CycleFound):
        if not verdict.quasi_periodic or cert.entry < 1 or cert.period < 1:
            return False
        x = alpha
        for _ in range(cert.entry):
            x = phi.apply(x)
        y = x
        for _ in range(cert.period):
            y = phi.apply(y)
        return x == y
    if verdict.quasi_periodic or not isinstance(phi, NatAffineTail):
        return False
    if not phi.tail_strictly_increasing():
        return False
    x = cert.from_index
    for _ in range(100):
        nxt = phi.apply(x)
        if nxt <= x:
            return False
        x = nxt
    return True


@dataclass(frozen=True)
class NonQPReport:
    found: bool
    witness: Optional[int]
    verdict: Optional[QPVerdict]


def has_non_quasi_periodic_point(phi: GSMap) -> NonQPReport:
    """Does phi have a point with infinite forward orbit?

    Finite maps never do.  For affine-tail maps it suffices to test 0,
    the override inputs, and the first index past every override: any
    escaping orbit must pass above the override range, and whether it
    then escapes depends only on the tail parameters.
    """
    if isinstance(phi, FiniteMap):
        return NonQPReport(False, None, None)
    candidates = sorted({0, phi.escape_bound() + 1} | {k for k, _ in phi.overrides})
    for alpha in candidates:
        verdict = quasi_periodic(phi, alpha)
        if not verdict.quasi_periodic:
            return NonQPReport(True, alpha, verdict)
    return NonQPReport(False, None, None)


@dataclass(frozen=True)
class GShiftReport:
    chaotic: bool
    non_qp: NonQPReport
    non_close_pair: Optional[tuple[str, str]]
    explanation: str


def gshift_chaotic(phi: GSMap, x: FinSpace) -> GShiftReport:
    """Li-Yorke chaoticity of the generalized shift sigma_phi on X^Lambda.

    Chaotic iff phi has a non-quasi-periodic point AND some pair of
    points of X has disjoint closures.
    """
    if x.n < 2:
        raise SpaceTooSmall("chaos analysis needs at least two points")
    non_qp = has_non_quasi_periodic_point(phi)
    try:
        pair: Optional[tuple[str, str]] = first_non_close_pair(x)
    except NotChaotic:
        pair = None
    chaotic = non_qp.found and pair is not None
    if chaotic:
        explanation = (
            f"index {non_qp.witness} has an infinite forward orbit and points "
            f"{pair[0]},{pair[1]} have disjoint closures"
        )
    elif not non_qp.found:
        explanation = "every index is quasi-periodic under phi"
    else:
        explanation = "no pair of points has disjoint closures"
    return GShiftReport(chaotic, non_qp, pair, explanation)


# -- map text format ---------------------------------------------------------
#
#   lambda: finite n=5
#   map: 1,2,0,4,4
# or
#   lambda: nat
#   tail: a=1 b=1 M=3
#   override: 0->2


def parse_gsmap(text: str) -> GSMap:
    lines = [
        (no, ln.strip()) for no, ln in enumerate(text.splitlines(), 1) if ln.strip()
    ]
    if not lines:
        raise ParseError("empty input, expected a `lambda:` line", line=1)
    no, head = lines[0]
    if not head.startswith("lambda:"):
        raise ParseError("expected `lambda: finite n=<k>` or `lambda: nat`", line=no)
    kind = head[len("lambda:"):].strip()

    if kind.startswith("finite"):
        size_part = kind[len("finite"):].strip()
        if not size_part.startswith("n="):
            raise ParseError("expected `lambda: finite n=<k>`", line=no)
        try:
            size = int(size_part[2:])
        except ValueError:
            raise ParseError("bad size in `n=`", line=no) from None
        if len(lines) != 2 or not lines[1][1].startswith("map:"):
            raise ParseError("finite map needs exactly one `map:` line", line=no)
        mno, mline = lines[1]
        try:
            table = tuple(int(t.strip()) for t in mline[len("map:"):].split(","))
        except ValueError:
            raise ParseError("map entries must be integers", line=mno) from None
        if len(table) != size:
            raise ParseError(f"expected {size} map entries", line=mno)
        try:
            return FiniteMap(table)
        except ValueError as exc:
            raise ParseError(str(exc), line=mno) from None

    if kind != "nat":
        raise ParseError(f"unknown index set {kind!r}", line=no)
    tail = None
    tail_line = no
    overrides = []
    for lno, ln in lines[1:]:
        if ln.startswith("tail:"):
            if tail is not None:
                raise ParseError("duplicate `tail:` line", line=lno)
            fields = dict()
            for tok in ln[len("tail:"):].split():
                if tok.count("=") != 1:
                    raise ParseError(f"bad tail field {tok!r}", line=lno)
                k, v = tok.split("=")
                try:
                    fields[k] = int(v)
                except ValueError:
                    raise ParseError(f"bad tail field {tok!r}", line=lno) from None
            if set(fields) != {"a", "b", "M"}:
                raise ParseError("tail needs exactly a=, b=, M=", line=lno)
            tail = fields
            tail_line = lno
        elif ln.startswith("override:"):
            body = ln[len("override:"):].strip()
            if body.count("->") != 1:
                raise ParseError("override is `override: k->v`", line=lno)
            ks, vs = body.split("->")
            try:
                overrides.append((int(ks), int(vs), lno))
            except ValueError:
                raise ParseError("override endpoints must be integers", line=lno) from None
        else:
            raise ParseError(f"unexpected line {ln!r}", line=lno)
    if tail is None:
        raise ParseError("nat map needs a `tail: a=.. b=.. M=..` line", line=no)
    try:
        return NatAffineTail(
            a=tail["a"],
            b=tail["b"],
            threshold=tail["M"],
            overrides=tuple((k, v) for k, v, _ in overrides),
        )
    except ValueError as exc:
        raise ParseError(str(exc), line=tail_line) from None
