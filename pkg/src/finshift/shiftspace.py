"""Symbolic points of the product space X^N and the pair classifier.

Two sequence forms are supported, both with decidable classification:

* :class:`UltPeriodic` - a finite preperiod followed by a repeated
  period (coordinates are 1-based, matching (x_n) with N = {1,2,...}).

* :class:`Witness` - the growing-block construction that realizes
  scrambled pairs over two points a, b with disjoint closures.  The
  coordinate axis is cut into consecutive blocks B_1, B_2, ... with
  |B_k| = k.  Even-indexed blocks are constant a; the odd block
  k = 2j-1 is constant a when the parameter bit t[r(j)] is 0 and
  constant b when it is 1, where r enumerates 1, 1,2, 1,2,3, ... so
  every parameter index recurs in infinitely many (ever longer) blocks.
  Hence any two witnesses share unbounded runs of common a-blocks, and
  witnesses whose parameters differ anywhere conflict on infinitely
  many whole blocks.

A pair is proximal iff its coordinatewise closeness sequence has
unbounded runs of 1s, and asymptotic iff that sequence has finitely
many 0s; scrambled = proximal and not asymptotic.  This reduction to
coordinatewise closeness is what the Gamma_N neighbourhood basis of the
diagonal buys on compact Alexandroff spaces.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt, lcm
from typing import Union

from .errors import (
    ParseError,
    UnknownPoint,
    UnsupportedCombination,
    WitnessRequiresNonClosePair,
)
from .fintop import NAME_RE, FinSpace


def _block_of(m: int) -> int:
    """Index k of the block containing position m (blocks of size 1,2,3,...)."""
    return (isqrt(8 * m - 7) + 1) // 2


def _diag_entry(j: int) -> int:
    """r(j) for the enumeration 1, 1,2, 1,2,3, ...: each value recurs forever."""
    t = _block_of(j)
    return j - t * (t - 1) // 2


@dataclass(frozen=True)
class Bitstream:
    """An ultimately periodic 0/1 sequence, 1-based, period nonempty."""

    preperiod: tuple[int, ...] = ()
    period: tuple[int, ...] = (0,)

    def __post_init__(self):
        if not self.period:
            raise ValueError("period must be nonempty")
        if any(b not in (0, 1) for b in self.preperiod + self.period):
            raise ValueError("bits must be 0 or 1")

    def bit(self, i: int) -> int:
        if i < 1:
            raise ValueError("bit index is 1-based")
        p = len(self.preperiod)
        if i <= p:
            return self.preperiod[i - 1]
        return self.period[(i - p - 1) % len(self.period)]

    def first_difference(self, other: "Bitstream") -> int | None:
        """Least index where the two streams differ, None if equal as functions.

        Scanning up to max preperiod + lcm of periods decides equality:
        beyond the preperiods both streams repeat with that common period.
        """
        horizon = max(len(self.preperiod), len(other.preperiod)) + lcm(
            len(self.period), len(other.period)
        )
        for i in range(1, horizon + 1):
            if self.bit(i) != other.bit(i):
                return i
        return None

    def same_function(self, other: "Bitstream") -> bool:
        return self.first_difference(other) is None

    def literal(self) -> str:
        pre = ",".join(str(b) for b in self.preperiod)
        per = ",".join(str(b) for b in self.period)
        return (pre + " " if pre else "") + "| " + per


ALL_ZERO = Bitstream((), (0,))


@dataclass(frozen=True)
class UltPeriodic:
    """Preperiod then repeated period, e.g. pre=(a,), per=(b,) is a,b,b,b,..."""

    preperiod: tuple[str, ...]
    period: tuple[str, ...]

    def __post_init__(self):
        if not self.period:
            raise ValueError("period must be nonempty")

    def coord(self, m: int) -> str:
        if m < 1:
            raise ValueError("coordinates are 1-based")
        p = len(self.preperiod)
        if m <= p:
            return self.preperiod[m - 1]
        return self.period[(m - p - 1) % len(self.period)]

    def is_constant(self, sym: str) -> bool:
        return all(s == sym for s in self.preperiod + self.period)

    def literal(self) -> str:
        pre = ",".join(self.preperiod)
        per = ",".join(self.period)
        return (pre + " " if pre else "") + "| " + per


@dataclass(frozen=True)
class Witness:
    """Growing-block scrambled-family member over a base pair (a, b)."""

    a: str
    b: str
    t: Bitstream

    def coord(self, m: int) -> str:
        if m < 1:
            raise ValueError("coordinates are 1-based")
        k = _block_of(m)
        if k % 2 == 0:
            return self.a
        j = (k + 1) // 2
        return self.a if self.t.bit(_diag_entry(j)) == 0 else self.b

    def literal(self) -> str:
        return f"witness({self.a},{self.b}; {self.t.literal()})"


SymbolicSeq = Union[UltPeriodic, Witness]


@dataclass(frozen=True)
class ShiftView:
    """Lazy sigma^n of a base sequence: coord(m) = base.coord(m + offset)."""

    base: SymbolicSeq
    offset: int

    def coord(self, m: int) -> str:
        if m < 1:
            raise ValueError("coordinates are 1-based")
        return self.base.coord(m + self.offset)


def shift(s, n: int):
    """The one-sided shift iterated n times, as a coordinate view.

    shift(s, 0) is s itself; shifting a view composes offsets, so
    sigma^n . sigma^m = sigma^(n+m) on coordinates.
    """
    if n < 0:
        raise ValueError("shift exponent must be nonnegative")
    if n == 0:
        return s
    if isinstance(s, ShiftView):
        return ShiftView(s.base, s.offset + n)
    return ShiftView(s, n)


# -- certificates and verdicts --------------------------------------------


@dataclass(frozen=True)
class UltPeriodicBits:
    """Coordinatewise closeness of two UltPeriodic sequences.

    Itself ultimately periodic: preperiod = max of the input preperiod
    lengths, period = lcm of the input period lengths.
    """

    preperiod: tuple[int, ...]
    period: tuple[int, ...]

    def literal(self) -> str:
        pre = ",".join(str(b) for b in self.preperiod)
        per = ",".join(str(b) for b in self.period)
        return (pre + " " if pre else "") + "| " + per


@dataclass(frozen=True)
class WitnessCertificate:
    differing_parameter_index: int | None
    shares_even_blocks: bool
    odd_block_conflicts_infinite: bool


ClosenessIndicator = Union[UltPeriodicBits, WitnessCertificate]


@dataclass(frozen=True)
class PairVerdict:
    proximal: bool
    asymptotic: bool
    scrambled: bool
    certificate: ClosenessIndicator
    notes: str


@dataclass(frozen=True)
class HorizonStats:
    """Empirical closeness statistics over coordinates 1..horizon."""

    horizon: int
    non_close_count: int
    first_non_close: tuple[int, ...]  # at most the first 100 positions
    max_close_run: int


# -- operations ------------------------------------------------------------


def gamma_member(x: FinSpace, u, v, n_coords: int, offset: int = 0) -> bool:
    """Is (sigma^offset u, sigma^offset v) in Gamma_N for N = n_coords?

    Membership reduces to: every coordinate pair in the window
    offset+1 .. offset+N lies in a common minimal neighbourhood, which
    is exactly coordinatewise closeness.
    """
    if n_coords < 1:
        raise ValueError("Gamma index must be >= 1")
    if offset < 0:
        raise ValueError("shift offset must be nonnegative")
    return all(
        x.close(u.coord(offset + i), v.coord(offset + i))
        for i in range(1, n_coords + 1)
    )


def _witness_pair(x: FinSpace, u: Witness, v: Witness) -> WitnessCertificate:
    if (u.a, u.b) != (v.a, v.b):
        raise UnsupportedCombination(
            "witness sequences must share the same base pair (a,b)"
        )
    if x.close(u.a, u.b):
        raise WitnessRequiresNonClosePair(
            f"witness base pair ({u.a},{u.b}) has intersecting closures; "
            "the block certificate is unsound there"
        )
    diff = u.t.first_difference(v.t)
    return WitnessCertificate(
        differing_parameter_index=diff,
        shares_even_blocks=True,
        odd_block_conflicts_infinite=diff is not None,
    )


def _as_witness(other: SymbolicSeq, w: Witness) -> Witness:
    """Lift a constant-a UltPeriodic partner to the all-zero witness."""
    if isinstance(other, Witness):
        return other
    if isinstance(other, UltPeriodic) and other.is_constant(w.a):
        return Witness(w.a, w.b, ALL_ZERO)
    raise UnsupportedCombination(
        "a witness sequence can only be classified against another witness "
        "over the same pair or against the constant sequence at its point a"
    )


def closeness_indicator(x: FinSpace, u, v) -> ClosenessIndicator:
    """Symbolic coordinatewise-closeness certificate for a supported pair."""
    if isinstance(u, UltPeriodic) and isinstance(v, UltPeriodic):
        pre_len = max(len(u.preperiod), len(v.preperiod))
        per_len = lcm(len(u.period), len(v.period))
        bits = [
            1 if x.close(u.coord(m), v.coord(m)) else 0
            for m in range(1, pre_len + per_len + 1)
        ]
        return UltPeriodicBits(tuple(bits[:pre_len]), tuple(bits[pre_len:]))
    if isinstance(u, Witness):
        return _witness_pair(x, u, _as_witness(v, u))
    if isinstance(v, Witness):
        return _witness_pair(x, _as_witness(u, v), v)
    raise UnsupportedCombination(
        f"cannot certify a pair of {type(u).__name__} and {type(v).__name__}"
    )


def classify_pair(x: FinSpace, u, v) -> PairVerdict:
    """Decide proximal / asymptotic / scrambled symbolically.

    UltPeriodic pairs: the closeness sequence is ultimately periodic
    with period part Q.  If Q is all ones, the 0 bits (if any) all sit
    in the finite preperiod, so the pair is asymptotic and a fortiori
    proximal.  If Q has a zero, every window of 2|Q| positions beyond
    the preperiod contains a zero, so close runs are bounded by
    |preperiod| + 2|Q| and the pair is neither proximal nor asymptotic.
    Either way scrambled is impossible for such pairs.

    Witness pairs (and witness vs the constant sequence at a): shared
    even blocks give unbounded close runs, so always proximal; distinct
    parameters put whole conflicting blocks at infinitely many places,
    killing asymptotic; equal parameters mean the sequences coincide.
    """
    cert = closeness_indicator(x, u, v)
    if isinstance(cert, UltPeriodicBits):
        allq = all(cert.period)
        if allq:
            notes = (
                "period closeness bits are all 1: at most finitely many "
                "non-close coordinates, so asymptotic (hence proximal)"
            )
        else:
            notes = (
                "period closeness bits contain a 0: close runs beyond the "
                "preperiod are capped at twice the period length, so "
                "neither proximal nor asymptotic"
            )
        return PairVerdict(allq, allq, False, cert, notes)
    if cert.differing_parameter_index is None:
        notes = "equal witness parameters: the sequences coincide coordinatewise"
        return PairVerdict(True, True, False, cert, notes)
    notes = (
        f"witness parameters first differ at index {cert.differing_parameter_index}: "
        "even blocks give unbounded close runs while infinitely many odd "
        "blocks conflict"
    )
    return PairVerdict(True, False, True, cert, notes)


def finite_horizon_oracle(x: FinSpace, u, v, horizon: int) -> HorizonStats:
    """Brute-force closeness over coordinates 1..horizon.

    Deliberately dumb: evaluates close(u_m, v_m) position by position
    as an empirical shadow of the symbolic classifier.
    """
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    ucoord = u.coord
    vcoord = v.coord
    index = x._index
    cols = x._cols
    non_close = 0
    first: list[int] = []
    run = 0
    best = 0
    for m in range(1, horizon + 1):
        a = ucoord(m)
        b = vcoord(m)
        try:
            close = cols[index[a]] & cols[index[b]]
        except KeyError:
            raise UnknownPoint(a if a not in index else b) from None
        if close:
            run += 1
            if run > best:
                best = run
        else:
            run = 0
            non_close += 1
            if len(first) < 100:
                first.append(m)
    return HorizonStats(horizon, non_close, tuple(first), best)


# -- sequence literals ------------------------------------------------------
#
#   a,b | b,a      UltPeriodic: preperiod a,b then period b,a
#   | a            constant a (empty preperiod)
#   witness(a,b; 1,0 | 0)    Witness with bit preperiod 1,0 and period 0


def _split_csv(body: str, base_col: int, what: str, allowed=None):
    out = []
    col = base_col
    for tok in body.split(","):
        stripped = tok.strip()
        tok_col = col + (len(tok) - len(tok.lstrip()))
        if not stripped:
            raise ParseError(f"empty {what}", col=tok_col)
        if allowed is not None and stripped not in allowed:
            raise ParseError(f"bad {what} {stripped!r}", col=tok_col)
        if allowed is None and not NAME_RE.match(stripped):
            raise ParseError(f"bad {what} {stripped!r}", col=tok_col)
        out.append(stripped)
        col += len(tok) + 1
    return out


def _parse_pre_period(body: str, base_col: int, what: str, allowed=None):
    if body.count("|") != 1:
        raise ParseError("expected one `|` between preperiod and period", col=base_col)
    pre_part, per_part = body.split("|")
    pre = (
        _split_csv(pre_part, base_col, what, allowed) if pre_part.strip() else []
    )
    per_col = base_col + len(pre_part) + 1
    if not per_part.strip():
        raise ParseError("period must be nonempty", col=per_col)
    per = _split_csv(per_part, per_col, what, allowed)
    return pre, per


def parse_bitstream(text: str, base_col: int = 1) -> Bitstream:
    pre, per = _parse_pre_period(text, base_col, "bit", allowed={"0", "1"})
    return Bitstream(tuple(int(b) for b in pre), tuple(int(b) for b in per))


def parse_sequence(text: str) -> SymbolicSeq:
    """Parse a sequence literal; ParseError carries a 1-based column."""
    s = text.strip()
    offset = text.index(s) if s else 0
    if s.startswith("witness("):
        if not s.endswith(")"):
            raise ParseError("witness literal must end with `)`", col=offset + len(s))
        inner = s[len("witness(") : -1]
        inner_col = offset + len("witness(") + 1
        if inner.count(";") != 1:
            raise ParseError(
                "witness literal is witness(a,b; bits | bits)", col=inner_col
            )
        pair_part, bits_part = inner.split(";")
        names = _split_csv(pair_part, inner_col, "point name")
        if len(names) != 2:
            raise ParseError("witness needs exactly two points", col=inner_col)
        bits = parse_bitstream(bits_part, inner_col + len(pair_part) + 1)
        return Witness(names[0], names[1], bits)
    pre, per = _parse_pre_period(s, offset + 1, "point name")
    return UltPeriodic(tuple(pre), tuple(per))
