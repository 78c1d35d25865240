"""Singularity data of the suspension over a generalized permutation.

The suspension glues the two boundary circles of a cylinder according to
the permutation: same-side pairs by a central symmetry, opposite-side
pairs by a translation.  The cone points are the equivalence classes of
the cell junctions on the two circles; each junction carries one flat
wedge of angle pi, so a class of m junctions is a singularity of order
m - 2 (cone angle m*pi, a simple pole for m = 1).

``vertex_cycles`` returns each class as a rotationally ordered list of
junctions; the order is what angle computations in the suspension module
consume.  Junctions are keyed ("T", i) / ("B", j) for the point at the
left end of top cell i (0-based, wrapping) and likewise below.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import BadParameters, BadPattern, UnknownName
from .genperm import GeneralizedPermutation, SymmetryGroup, DEFAULT_SYM

Junction = tuple[str, int]


def _glue_table(top: Sequence[int], bottom: Sequence[int]) -> list[int]:
    """Germ gluing as an involution on cell-end germs.

    Cells are indexed 0..p-1 (top row first), germs are 2*cell + end with
    end 0 = left, 1 = right.  Same-side pairs glue by central symmetry
    (left end to right end), opposite-side pairs by translation.
    """
    r = len(top)
    cells = list(top) + list(bottom)
    where: dict[int, list[int]] = {}
    for c, letter in enumerate(cells):
        where.setdefault(letter, []).append(c)
    glue = [0] * (2 * len(cells))
    for c1, c2 in where.values():
        same = (c1 < r) == (c2 < r)
        if same:
            glue[2 * c1] = 2 * c2 + 1
            glue[2 * c1 + 1] = 2 * c2
            glue[2 * c2] = 2 * c1 + 1
            glue[2 * c2 + 1] = 2 * c1
        else:
            glue[2 * c1] = 2 * c2
            glue[2 * c1 + 1] = 2 * c2 + 1
            glue[2 * c2] = 2 * c1
            glue[2 * c2 + 1] = 2 * c1 + 1
    return glue


def vertex_cycles(gp: GeneralizedPermutation) -> list[list[Junction]]:
    """Junction classes of the suspension, each in rotational order."""
    r, l = gp.type
    glue = _glue_table(gp.top, gp.bottom)

    def junction_halves(j: Junction) -> tuple[int, int]:
        # (right end of the cell to the left, left end of the cell at j)
        side, i = j
        if side == "T":
            return 2 * ((i - 1) % r) + 1, 2 * i
        return 2 * (r + (i - 1) % l) + 1, 2 * (r + i)

    def junction_of(germ: int) -> Junction:
        cell, end = divmod(germ, 2)
        if cell < r:
            return ("T", cell if end == 0 else (cell + 1) % r)
        c = cell - r
        return ("B", c if end == 0 else (c + 1) % l)

    all_junctions: list[Junction] = [("T", i) for i in range(r)] + [("B", j) for j in range(l)]
    seen: set[Junction] = set()
    cycles: list[list[Junction]] = []
    for start in all_junctions:
        if start in seen:
            continue
        cycle: list[Junction] = []
        j = start
        entry = start_entry = junction_halves(j)[0]
        while True:
            cycle.append(j)
            seen.add(j)
            halves = junction_halves(j)
            exit_germ = halves[1] if entry == halves[0] else halves[0]
            entry = glue[exit_germ]
            j = junction_of(entry)
            if j == start and entry == start_entry:
                break
            assert len(cycle) <= len(all_junctions), "corner walk failed to close"
        cycles.append(cycle)
    return cycles


@dataclass(frozen=True)
class SingularityPattern:
    """Multiset of singularity orders with genus and stratum dimension."""

    orders: tuple[int, ...]
    genus: int
    dimension: int

    @staticmethod
    def from_orders(orders: Sequence[int]) -> "SingularityPattern":
        orders = tuple(sorted(orders, reverse=True))
        total = sum(orders)
        if any(k < -1 for k in orders):
            raise BadPattern("orders below -1: %r" % (orders,))
        if total % 4:
            raise BadPattern("order sum %d is not a multiple of 4" % total)
        genus = total // 4 + 1
        return SingularityPattern(orders, genus, 2 * genus + len(orders) - 2)

    def render(self) -> str:
        return "Q(%s)" % ",".join(str(k) for k in self.orders)

    def as_json(self) -> dict:
        return {"orders": list(self.orders), "genus": self.genus, "dim": self.dimension}


def singularity_pattern(gp: GeneralizedPermutation) -> SingularityPattern:
    """Orders of the suspension cone points by the junction corner walk."""
    orders = [len(c) - 2 for c in vertex_cycles(gp)]
    return SingularityPattern.from_orders(orders)


def pattern_orders(top: Sequence[int], bottom: Sequence[int]) -> tuple[int, ...]:
    """Fast descending order tuple for raw rows (enumeration hot path).

    Same walk as :func:`vertex_cycles` but only class sizes are tracked.
    """
    r = len(top)
    l = len(bottom)
    glue = _glue_table(top, bottom)
    # encode junction as integer 0..r+l-1, halves precomputed
    n = r + l
    half0 = [0] * n
    half1 = [0] * n
    for i in range(r):
        half0[i] = 2 * ((i - 1) % r) + 1
        half1[i] = 2 * i
    for j in range(l):
        half0[r + j] = 2 * (r + (j - 1) % l) + 1
        half1[r + j] = 2 * (r + j)
    junction_of = [0] * (2 * n)
    for i in range(r):
        junction_of[2 * i] = i
        junction_of[2 * i + 1] = (i + 1) % r
    for j in range(l):
        junction_of[2 * (r + j)] = r + j
        junction_of[2 * (r + j) + 1] = r + (j + 1) % l
    seen = [False] * n
    orders = []
    for start in range(n):
        if seen[start]:
            continue
        size = 0
        j = start
        entry = start_entry = half0[start]
        while True:
            seen[j] = True
            size += 1
            exit_germ = half1[j] if entry == half0[j] else half0[j]
            entry = glue[exit_germ]
            j = junction_of[entry]
            if j == start and entry == start_entry:
                break
        orders.append(size - 2)
    orders.sort(reverse=True)
    return tuple(orders)


def single_vertex(top: Sequence[int], bottom: Sequence[int]) -> bool:
    """True iff all junctions fall in one class (minimal-stratum test).

    Early-exit version of :func:`pattern_orders` for the hot enumeration
    path: the walk from junction 0 must visit every junction.
    """
    r = len(top)
    l = len(bottom)
    n = r + l
    glue = _glue_table(top, bottom)
    j = 0
    entry = start_entry = 2 * ((0 - 1) % r) + 1
    size = 0
    while True:
        size += 1
        if j < r:
            h0 = 2 * ((j - 1) % r) + 1
            h1 = 2 * j
        else:
            h0 = 2 * (r + (j - r - 1) % l) + 1
            h1 = 2 * j
        exit_germ = h1 if entry == h0 else h0
        entry = glue[exit_germ]
        cell, end = divmod(entry, 2)
        if cell < r:
            j = cell if end == 0 else (cell + 1) % r
        else:
            j = r + ((cell - r) if end == 0 else (cell - r + 1) % l)
        if j == 0 and entry == start_entry:
            return size == n
        if size > n:
            return False


def stratum_info(pattern: Sequence[int]) -> tuple[int, int]:
    """(genus, complex dimension) of the stratum with the given orders."""
    p = SingularityPattern.from_orders(pattern)
    return p.genus, p.dimension


def smooth_marked_points(gp: GeneralizedPermutation) -> GeneralizedPermutation:
    """Erase order-zero cone points by merging the adjacent intervals.

    A junction class of size two is an angle-2*pi point; the two letters
    meeting at either junction bound one straight interval, so dropping
    the second letter's cells re-reads the same surface without the
    marked point.  Repeats until no order-zero class remains.
    """
    while True:
        flat = next((c for c in vertex_cycles(gp) if len(c) == 2), None)
        if flat is None:
            return gp
        side, i = flat[0]
        row = gp.top if side == "T" else gp.bottom
        a = row[(i - 1) % len(row)]
        b = row[i]
        assert a != b, "adjacent equal letters form a pole, not a marked point"
        top = [x for x in gp.top if x != b]
        bottom = [x for x in gp.bottom if x != b]
        gp = GeneralizedPermutation.from_rows(top, bottom)


# -- representative families -------------------------------------------


def hyperelliptic_rep(kind: str, r: int, l: int, a: int | None = None) -> GeneralizedPermutation:
    """One-cylinder representative of a hyperelliptic family.

    ``pi1``: top (0_1, 1..r, 0_1, r+1..r+l), bottom the two runs reversed
    around the doubled letter 0_2.  ``pi2``: both rows repeat their run
    twice.  ``pi1a`` additionally threads a letter 0_3 after 0_1 on top
    and between a and a-1 below (2 <= a <= r+1); it splits one zero of
    the pi1 surface in two.
    """
    if r < 1 or l < 1:
        raise BadParameters("need r, l >= 1, got (%d, %d)" % (r, l))
    if kind == "pi1":
        top = ["0_1"] + [str(i) for i in range(1, r + 1)] + ["0_1"] + [str(i) for i in range(r + 1, r + l + 1)]
        bottom = (
            [str(i) for i in range(r + l, r, -1)]
            + ["0_2"]
            + [str(i) for i in range(r, 0, -1)]
            + ["0_2"]
        )
    elif kind == "pi2":
        top = [str(i) for i in range(1, r + 1)] * 2
        bottom = [str(i) for i in range(r + 1, r + l + 1)] * 2
    elif kind == "pi1a":
        if a is None or not 2 <= a <= r + 1:
            raise BadParameters("pi1a needs 2 <= a <= r+1, got a=%r" % (a,))
        top = (
            ["0_1", "0_3"]
            + [str(i) for i in range(1, r + 1)]
            + ["0_1"]
            + [str(i) for i in range(r + 1, r + l + 1)]
        )
        bottom = (
            [str(i) for i in range(r + l, r, -1)]
            + ["0_2"]
            + [str(i) for i in range(r, a - 1, -1)]
            + ["0_3"]
            + [str(i) for i in range(a - 1, 0, -1)]
            + ["0_2"]
        )
    else:
        raise BadParameters("unknown family kind %r" % (kind,))
    return GeneralizedPermutation.from_tokens(top, bottom)


#: The five sporadic one-cylinder representatives (genus 3 and 4).
IRREDUCIBLE_REPS = {
    "(-1,9)": "0 1 2 3 4 0 / 4 3 2 5 1 5",
    "(-1,3,6)": "0 1 2 3 4 5 0 / 5 4 3 2 6 1 6",
    "(-1,3,3,3)": "0 1 2 3 4 5 6 0 / 6 5 3 2 7 4 1 7",
    "12-I": "1 2 3 4 2 5 6 / 1 4 5 7 6 7 3",
    "12-II": "1 2 3 4 3 5 6 / 1 5 7 4 2 6 7",
}


def irreducible_rep(name: str) -> GeneralizedPermutation:
    """Table representative of a sporadic (irreducible) component."""
    try:
        text = IRREDUCIBLE_REPS[name]
    except KeyError:
        raise UnknownName("unknown representative %r (known: %s)" % (name, ", ".join(sorted(IRREDUCIBLE_REPS))))
    return GeneralizedPermutation.parse(text)


@dataclass(frozen=True)
class ComponentTag:
    """Classification tag of a permutation class.

    ``kind`` is "hyperelliptic", "irreducible" or "unknown"; hyperelliptic
    tags carry the family ("pi1"/"pi2") and its (r, l), irreducible tags
    the table name.
    """

    kind: str
    family: str | None = None
    r: int | None = None
    l: int | None = None
    name: str | None = None

    def label(self) -> str:
        if self.kind == "hyperelliptic":
            return "hyp:%s(%d,%d)" % (self.family, self.r, self.l)
        if self.kind == "irreducible":
            return "irr:%s" % self.name
        return "unknown"


UNKNOWN_TAG = ComponentTag("unknown")


def match_component(gp: GeneralizedPermutation, sym: SymmetryGroup = DEFAULT_SYM) -> ComponentTag:
    """Tag gp when it is equivalent to a named representative."""
    key = gp.canonical_key(sym)
    r, l = gp.type
    matches: list[ComponentTag] = []
    if r == l and r >= 4:
        for rr in range(1, r - 2):
            ll = r - 2 - rr
            if ll < 1:
                continue
            if hyperelliptic_rep("pi1", rr, ll).canonical_key(sym) == key:
                matches.append(ComponentTag("hyperelliptic", family="pi1", r=rr, l=ll))
                break
    if r % 2 == 0 and l % 2 == 0:
        if hyperelliptic_rep("pi2", r // 2, l // 2).canonical_key(sym) == key:
            matches.append(ComponentTag("hyperelliptic", family="pi2", r=r // 2, l=l // 2))
    for name in IRREDUCIBLE_REPS:
        rep = irreducible_rep(name)
        if rep.size == gp.size and rep.canonical_key(sym) == key:
            matches.append(ComponentTag("irreducible", name=name))
    if not matches:
        return UNKNOWN_TAG
    if len(matches) > 1:
        raise AssertionError("ambiguous component tags %r for %s" % (matches, gp.render()))
    return matches[0]
