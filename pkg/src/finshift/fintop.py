"""Finite topological spaces as specialization preorders.

A finite space is stored as its specialization preorder over an ordered
point list.  The orientation convention is fixed everywhere in this
package and worth stating loudly, because transposing it silently swaps
neighbourhoods and closures:

    leq(a, b)  <=>  a in cl{b}  <=>  b in V(a)

So the matrix *row* of a point a is its minimal open neighbourhood V(a)
and the matrix *column* is its closure cl{a}.  Open sets are exactly
the up-sets of the preorder; every finite space is Alexandroff, so the
preorder determines the topology and vice versa.

Rows and columns are kept as integer bitmasks (bit i = i-th point in
the ``points`` order), which makes V / cl / closeness one mask
operation each and keeps exhaustive enumeration over all labeled
topologies cheap.
"""

from __future__ import annotations

import re
import string
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator, Sequence

from .errors import CapExceeded, NotATopology, ParseError, UnknownPoint

NAME_RE = re.compile(r"[A-Za-z0-9_]+\Z")

# Hard enumeration caps (documented): 6942 labeled topologies at n=5 keep
# exhaustive suites fast; the open-family oracle walks 2^(2^n - 2)
# candidate families, which is 16384 at its cap n=4.
TOPOLOGY_ENUM_CAP = 5
ORACLE_ENUM_CAP = 4


def _bits(mask: int, n: int) -> Iterator[int]:
    for i in range(n):
        if (mask >> i) & 1:
            yield i


@dataclass(frozen=True)
class SpacePredicates:
    is_t0: bool
    is_discrete: bool
    is_indiscrete: bool


@dataclass(frozen=True)
class ClosenessRelation:
    """Symmetric reflexive relation: close(a,b) iff cl{a} and cl{b} meet.

    Not transitive in general.  ``rows[i]`` is the bitmask of points
    close to point i.
    """

    points: tuple[str, ...]
    rows: tuple[int, ...]

    def _index(self, x: str) -> int:
        try:
            return self.points.index(x)
        except ValueError:
            raise UnknownPoint(x) from None

    def close(self, a: str, b: str) -> bool:
        return bool((self.rows[self._index(a)] >> self._index(b)) & 1)

    @property
    def all_close(self) -> bool:
        full = (1 << len(self.points)) - 1
        return all(r == full for r in self.rows)

    def matrix(self) -> tuple[tuple[bool, ...], ...]:
        n = len(self.points)
        return tuple(
            tuple(bool((r >> j) & 1) for j in range(n)) for r in self.rows
        )


class OpenFamily:
    """An explicit family of open sets over an ordered point list.

    This is the boundary format (files, the enumeration oracle); the
    working representation is :class:`FinSpace`.  Construction
    canonicalizes the set order (by size, then pointwise) and dedupes;
    :meth:`validate` checks the topology axioms.
    """

    __slots__ = ("points", "sets", "_masks")

    def __init__(self, points: Sequence[str], sets: Iterable[Iterable[str]]):
        self.points = tuple(points)
        index = {p: i for i, p in enumerate(self.points)}
        if len(index) != len(self.points):
            raise ValueError("duplicate point names")
        masks = set()
        for s in sets:
            m = 0
            for p in s:
                if p not in index:
                    raise UnknownPoint(p)
                m |= 1 << index[p]
            masks.add(m)
        self._masks = tuple(sorted(masks, key=lambda m: (bin(m).count("1"), m)))
        self.sets = tuple(
            frozenset(self.points[i] for i in _bits(m, len(self.points)))
            for m in self._masks
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OpenFamily):
            return NotImplemented
        return self.points == other.points and self._masks == other._masks

    def __hash__(self) -> int:
        return hash((self.points, self._masks))

    def __repr__(self) -> str:
        body = ", ".join(self._fmt(m) for m in self._masks)
        return f"OpenFamily({list(self.points)!r}, [{body}])"

    def _fmt(self, mask: int) -> str:
        if mask == 0:
            return "{}"
        return "{" + ",".join(self.points[i] for i in _bits(mask, len(self.points))) + "}"

    def validate(self) -> None:
        """Raise :class:`NotATopology` unless this family is a topology.

        Finite + closed under pairwise union/intersection implies
        Alexandroff automatically, so these axioms are the whole check.
        """
        full = (1 << len(self.points)) - 1
        have = set(self._masks)
        if 0 not in have:
            raise NotATopology("the empty set is missing from the family")
        if full not in have:
            raise NotATopology("the full point set is missing from the family")
        ms = self._masks
        for i in range(len(ms)):
            for j in range(i + 1, len(ms)):
                u = ms[i] | ms[j]
                if u not in have:
                    raise NotATopology(
                        f"union of {self._fmt(ms[i])} and {self._fmt(ms[j])} "
                        f"is {self._fmt(u)}, which is not in the family",
                        sets=(self.sets[i], self.sets[j]),
                    )
                w = ms[i] & ms[j]
                if w not in have:
                    raise NotATopology(
                        f"intersection of {self._fmt(ms[i])} and {self._fmt(ms[j])} "
                        f"is {self._fmt(w)}, which is not in the family",
                        sets=(self.sets[i], self.sets[j]),
                    )


class FinSpace:
    """A finite topological space, canonically a specialization preorder.

    ``points`` is the ordered tuple of point names; ``leq(a, b)`` holds
    iff a ∈ cl{b} (equivalently b ∈ V(a)).  Instances are immutable and
    hashable; all query methods are pure.
    """

    __slots__ = ("points", "_index", "_rows", "_cols")

    def __init__(self, points: Sequence[str], leq: Sequence[Sequence[object]]):
        points = tuple(points)
        if not points:
            raise ValueError("a space needs at least one point")
        for p in points:
            if not isinstance(p, str) or not NAME_RE.match(p):
                raise ValueError(f"bad point name {p!r} (want [A-Za-z0-9_]+)")
        if len(set(points)) != len(points):
            raise ValueError("duplicate point names")
        n = len(points)
        if len(leq) != n or any(len(row) != n for row in leq):
            raise ValueError("leq matrix must be n x n")
        rows = tuple(
            sum((1 << j) for j in range(n) if leq[i][j]) for i in range(n)
        )
        for i in range(n):
            if not (rows[i] >> i) & 1:
                raise NotATopology(f"preorder not reflexive at {points[i]!r}")
        for i in range(n):
            for j in _bits(rows[i], n):
                if rows[j] & ~rows[i]:
                    k = next(_bits(rows[j] & ~rows[i], n))
                    raise NotATopology(
                        "preorder not transitive: "
                        f"{points[i]!r} <= {points[j]!r} <= {points[k]!r} "
                        f"but not {points[i]!r} <= {points[k]!r}"
                    )
        self._init(points, rows)

    def _init(self, points: tuple[str, ...], rows: tuple[int, ...]) -> None:
        self.points = points
        self._index = {p: i for i, p in enumerate(points)}
        self._rows = rows
        n = len(points)
        self._cols = tuple(
            sum((1 << i) for i in range(n) if (rows[i] >> j) & 1)
            for j in range(n)
        )

    @classmethod
    def _from_masks(cls, points: tuple[str, ...], rows: tuple[int, ...]) -> "FinSpace":
        # fast path for the enumerators, which construct valid preorders
        self = object.__new__(cls)
        self._init(points, rows)
        return self

    # -- identity ------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.points)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FinSpace):
            return NotImplemented
        return self.points == other.points and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self.points, self._rows))

    def __repr__(self) -> str:
        return f"FinSpace(points={list(self.points)!r}, rows={list(self._rows)!r})"

    def index(self, x: str) -> int:
        try:
            return self._index[x]
        except KeyError:
            raise UnknownPoint(x) from None

    def _set(self, mask: int) -> frozenset[str]:
        return frozenset(self.points[i] for i in _bits(mask, self.n))

    # -- core queries ----------------------------------------------------

    def leq(self, a: str, b: str) -> bool:
        """a ∈ cl{b}, equivalently b ∈ V(a)."""
        return bool((self._rows[self.index(a)] >> self.index(b)) & 1)

    def min_nbhd(self, x: str) -> frozenset[str]:
        """V(x): the smallest open set containing x (an up-set)."""
        return self._set(self._rows[self.index(x)])

    def closure(self, d: Iterable[str]) -> frozenset[str]:
        """cl(D) = {z : V(z) meets D} = union of the closures of D's points."""
        mask = 0
        for p in d:
            mask |= self._cols[self.index(p)]
        return self._set(mask)

    def core(self) -> frozenset[str]:
        """Intersection of all point closures.

        Equals {z : V(z) = X}; both computations are done and compared
        as an internal sanity check.  A nonempty core blocks chaos.
        """
        full = (1 << self.n) - 1
        meet = full
        for c in self._cols:
            meet &= c
        via_rows = sum(1 << i for i in range(self.n) if self._rows[i] == full)
        if meet != via_rows:
            raise AssertionError(
                "internal: closure-intersection core disagrees with V(z)=X core"
            )
        return self._set(meet)

    def close(self, a: str, b: str) -> bool:
        """True iff cl{a} and cl{b} intersect (a common preorder lower bound)."""
        return bool(self._cols[self.index(a)] & self._cols[self.index(b)])

    def closeness_matrix(self) -> ClosenessRelation:
        n = self.n
        rows = tuple(
            sum((1 << j) for j in range(n) if self._cols[i] & self._cols[j])
            for i in range(n)
        )
        return ClosenessRelation(self.points, rows)

    def predicates(self) -> SpacePredicates:
        n = self.n
        full = (1 << n) - 1
        ident = all(self._rows[i] == (1 << i) for i in range(n))
        indisc = all(r == full for r in self._rows)
        t0 = all(
            not ((self._rows[i] >> j) & 1 and (self._rows[j] >> i) & 1)
            for i in range(n)
            for j in range(i + 1, n)
        )
        return SpacePredicates(is_t0=t0, is_discrete=ident, is_indiscrete=indisc)

    # -- open-set family boundary ---------------------------------------

    def open_family(self) -> OpenFamily:
        """All open sets, i.e. all up-sets of the preorder."""
        n = self.n
        rows = self._rows
        out = []
        for mask in range(1 << n):
            if all(rows[i] | mask == mask for i in _bits(mask, n)):
                out.append(mask)
        return OpenFamily(
            self.points,
            [[self.points[i] for i in _bits(m, n)] for m in out],
        )

    @classmethod
    def from_open_sets(cls, fam: OpenFamily) -> "FinSpace":
        """Build the space whose topology is exactly ``fam``.

        Validates the family first; V(x) is the intersection of all
        members containing x.
        """
        fam.validate()
        n = len(fam.points)
        full = (1 << n) - 1
        rows = []
        for i in range(n):
            v = full
            for m in fam._masks:
                if (m >> i) & 1:
                    v &= m
            rows.append(v)
        return cls._from_masks(fam.points, tuple(rows))


# -- enumeration ---------------------------------------------------------


def _default_names(n: int) -> tuple[str, ...]:
    return tuple(string.ascii_lowercase[:n])


def enumerate_topologies(n: int) -> Iterator[FinSpace]:
    """Yield every labeled topology on n points exactly once.

    Enumerates reflexive-transitive bit matrices in lexicographic order
    of the row-major bit string.  Labeled means no quotient by
    homeomorphism.  Hard cap n <= 5 (6942 topologies).
    """
    if not 1 <= n <= TOPOLOGY_ENUM_CAP:
        raise CapExceeded(
            f"topology enumeration supports 1 <= n <= {TOPOLOGY_ENUM_CAP}, got {n}"
        )
    names = _default_names(n)
    # candidates per row, in lex order of the bit tuple (bit 0 first)
    cands = []
    for i in range(n):
        row = []
        for bits in product((0, 1), repeat=n):
            if bits[i]:
                row.append(sum(b << j for j, b in enumerate(bits)))
        cands.append(row)

    rows = [0] * n

    def rec(i: int) -> Iterator[FinSpace]:
        if i == n:
            yield FinSpace._from_masks(names, tuple(rows))
            return
        for m in cands[i]:
            ok = True
            for j in range(i):
                rj = rows[j]
                # transitivity as a pairwise row condition:
                # leq[i][j] forces row_j ⊆ row_i and vice versa
                if (m >> j) & 1 and rj & ~m:
                    ok = False
                    break
                if (rj >> i) & 1 and m & ~rj:
                    ok = False
                    break
            if ok:
                rows[i] = m
                yield from rec(i + 1)

    yield from rec(0)


def oracle_enumerate(n: int) -> Iterator[OpenFamily]:
    """Independent oracle: brute-force all open-set families on n points.

    Walks every subset of the powerset that contains the empty and full
    sets and keeps the ones closed under pairwise union/intersection.
    Deliberately ignorant of preorders; its count must match
    :func:`enumerate_topologies`.
    """
    if not 1 <= n <= ORACLE_ENUM_CAP:
        raise CapExceeded(
            f"open-family oracle supports 1 <= n <= {ORACLE_ENUM_CAP}, got {n}"
        )
    names = _default_names(n)
    full = (1 << n) - 1
    middles = list(range(1, full))
    for choose in range(1 << len(middles)):
        fam = [0, full]
        for k, m in enumerate(middles):
            if (choose >> k) & 1:
                fam.append(m)
        have = frozenset(fam)
        ok = True
        for i in range(len(fam)):
            si = fam[i]
            for j in range(i + 1, len(fam)):
                sj = fam[j]
                if (si | sj) not in have or (si & sj) not in have:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            yield OpenFamily(
                names, [[names[i] for i in _bits(m, n)] for m in fam]
            )


# -- text format ----------------------------------------------------------
#
#   points: p,q,r
#   open: -            (one line per open set, `-` is the empty set)
#   open: q
#   ...
# or
#   points: p,q
#   preorder:
#   1 1                (row a, column b = leq[a][b])
#   0 1


def _parse_names(body: str, lineno: int) -> list[str]:
    names = [t.strip() for t in body.split(",")]
    for t in names:
        if not NAME_RE.match(t):
            raise ParseError(f"bad name {t!r} (want [A-Za-z0-9_]+)", line=lineno)
    if len(set(names)) != len(names):
        raise ParseError("duplicate names", line=lineno)
    return names


def parse_space(text: str) -> FinSpace:
    """Parse the topology text format into a FinSpace.

    Syntax errors raise :class:`ParseError` with a line number; families
    that parse but are not topologies raise :class:`NotATopology` naming
    the violating pair of sets and their lines.
    """
    lines = [
        (no, ln.strip()) for no, ln in enumerate(text.splitlines(), 1) if ln.strip()
    ]
    if not lines:
        raise ParseError("empty input, expected a `points:` line", line=1)
    no, first = lines[0]
    if not first.startswith("points:"):
        raise ParseError("expected `points: name,name,...`", line=no)
    points = _parse_names(first[len("points:"):].strip(), no)
    rest = lines[1:]
    if not rest:
        raise ParseError("expected `open:` lines or a `preorder:` section", line=no)

    if rest[0][1].startswith("preorder:"):
        matrix_lines = rest[1:]
        if len(matrix_lines) != len(points):
            raise ParseError(
                f"preorder needs exactly {len(points)} rows, got {len(matrix_lines)}",
                line=rest[0][0],
            )
        matrix = []
        for no, ln in matrix_lines:
            toks = ln.split()
            if len(toks) != len(points) or any(t not in ("0", "1") for t in toks):
                raise ParseError(
                    f"expected {len(points)} space-separated 0/1 entries", line=no
                )
            matrix.append([t == "1" for t in toks])
        return FinSpace(points, matrix)

    sets = []
    set_lines: dict[frozenset[str], int] = {}
    for no, ln in rest:
        if not ln.startswith("open:"):
            raise ParseError("expected an `open:` line", line=no)
        body = ln[len("open:"):].strip()
        if body == "-":
            members: list[str] = []
        else:
            members = _parse_names(body, no)
            for p in members:
                if p not in points:
                    raise ParseError(f"unknown point {p!r}", line=no)
        key = frozenset(members)
        if key in set_lines:
            raise ParseError("duplicate open set", line=no)
        set_lines[key] = no
        sets.append(members)
    fam = OpenFamily(points, sets)
    try:
        return FinSpace.from_open_sets(fam)
    except NotATopology as exc:
        if exc.sets is not None:
            l1, l2 = (set_lines.get(s) for s in exc.sets)
            raise NotATopology(f"lines {l1} and {l2}: {exc}", sets=exc.sets) from None
        raise


def dump_space(x: FinSpace) -> str:
    """Render a space in the `points:` + `open:` text format."""
    fam = x.open_family()
    out = ["points: " + ",".join(x.points)]
    for s in fam.sets:
        if not s:
            out.append("open: -")
        else:
            out.append("open: " + ",".join(p for p in x.points if p in s))
    return "\n".join(out) + "\n"
