"""Combinatorial reducibility tests with certifying witnesses.

Three conditions on a generalized permutation control the short vertical
companions of the seam separatrix on every suspension:

* weak reducibility: a cut position in each row such that either matched
  prefix/suffix blocks or a straddling configuration force a second
  vertical separatrix of length one for every admissible vector;
* the Red condition: violated when the table splits into six sublists
  around one bottom-doubled letter so that length balancing forces a
  vertical separatrix of length two;
* condition (*): exactly one letter doubled in each row (read letter-wise:
  a doubled letter occupies two positions, so the position-wise reading
  of "only one element" is never satisfiable).

Irreducible means weakly irreducible and Red holds.  Witnesses are
re-checkable through the ``check_*`` functions, which are deliberately
separate from the searches.
"""

from __future__ import annotations

from dataclasses import dataclass

from .genperm import GeneralizedPermutation


@dataclass(frozen=True)
class WeakSplit:
    """Certifies weak reducibility: 1-based cut positions and the bullet used.

    ``i0`` cuts the top row (1 <= i0 < r), ``j0`` the bottom row in absolute
    positions (r+1 <= j0 < r+l).
    """

    i0: int
    j0: int
    bullet: int


@dataclass(frozen=True)
class RedDecomposition:
    """Certifies a Red violation.

    With ``swapped`` rows exchanged first, the second row carries the
    doubled letter ``zero_letter`` at 0-based cells ``zero_cells`` and the
    first row is cut into blocks ``[:c1]``, ``[c1:c2]``, ``[c2:]``.
    """

    swapped: bool
    zero_letter: int
    zero_cells: tuple[int, int]
    cuts: tuple[int, int]


@dataclass(frozen=True)
class Verdict:
    """Outcome of the full irreducibility test."""

    status: str  # "irreducible" | "fails_weak" | "fails_red"
    witness: WeakSplit | RedDecomposition | None = None

    @property
    def irreducible(self) -> bool:
        return self.status == "irreducible"


def _oriented(gp: GeneralizedPermutation, swapped: bool) -> tuple[tuple[int, ...], tuple[int, ...]]:
    return (gp.bottom, gp.top) if swapped else (gp.top, gp.bottom)


def check_weak_split(gp: GeneralizedPermutation, w: WeakSplit) -> bool:
    """Re-validate a WeakSplit against the definition."""
    r, l = gp.type
    p = r + l
    if not (1 <= w.i0 < r and r + 1 <= w.j0 < p):
        return False
    pair = gp.pairing()
    i0 = w.i0  # 1-based counts double as 0-based prefix lengths
    j0 = w.j0
    if w.bullet == 1:
        return set(pair[0:i0]) == set(range(r, j0)) or set(pair[i0:r]) == set(range(j0, p))
    if w.bullet != 2:
        return False
    for pos in range(r):
        mate = pair[pos]
        if mate < r:
            a, b = (pos, mate) if pos < mate else (mate, pos)
            if not (a < i0 <= b):
                return False
        elif pos < i0 and mate >= j0:
            return False
    for pos in range(r, p):
        mate = pair[pos]
        if mate >= r:
            a, b = (pos, mate) if pos < mate else (mate, pos)
            if not (a < j0 <= b):
                return False
        elif pos < j0 and mate >= i0:
            return False
    return True


def weak_reducibility(gp: GeneralizedPermutation) -> WeakSplit | None:
    """First weak-reducibility witness in lexicographic order, else None."""
    r, l = gp.type
    p = r + l
    for i0 in range(1, r):
        for j0 in range(r + 1, p):
            for bullet in (1, 2):
                w = WeakSplit(i0, j0, bullet)
                if check_weak_split(gp, w):
                    return w
    return None


def check_red_decomposition(gp: GeneralizedPermutation, d: RedDecomposition) -> bool:
    """Re-validate a Red violation.

    Block placement follows the length-balancing identity behind the
    condition: with the doubled letter's cells as pivots, every letter
    doubled in the cut row straddles the outer blocks or sits inside the
    middle one, every letter doubled in the pivot row (other than the
    pivot) straddles its outer sublists or sits between the pivots, and
    split letters pair outer-with-outer or middle-with-middle.  This
    refines the four textbook membership bullets (which alone admit
    decompositions without the forced length-two separatrix).
    """
    top, bottom = _oriented(gp, d.swapped)
    r, l = len(top), len(bottom)
    q1, q2 = d.zero_cells
    c1, c2 = d.cuts
    if not (0 <= q1 < q2 < l and 0 <= c1 <= c2 <= r):
        return False
    if bottom[q1] != d.zero_letter or bottom[q2] != d.zero_letter:
        return False

    def top_region(i: int) -> str:
        return "A1" if i < c1 else ("A2" if i < c2 else "A3")

    def bottom_region(j: int) -> str:
        if j == q1 or j == q2:
            return "Z"
        return "B1" if j < q1 else ("B2" if j < q2 else "B3")

    spots: dict[int, list[str]] = {}
    for i, letter in enumerate(top):
        spots.setdefault(letter, []).append(top_region(i))
    for j, letter in enumerate(bottom):
        spots.setdefault(letter, []).append(bottom_region(j))
    allowed = {
        ("A1", "A3"), ("A2", "A2"),          # doubled in the cut row
        ("B1", "B3"), ("B2", "B2"), ("Z", "Z"),  # doubled in the pivot row
        ("A1", "B1"), ("A2", "B2"), ("A3", "B3"),  # split letters
    }
    straddle = 0
    for regions in spots.values():
        a, b = sorted(regions)
        if (a, b) not in allowed:
            return False
        if (a, b) in (("A1", "A3"), ("B1", "B3")):
            straddle += 1
    # Without an outer straddler the offset of the forced trajectory is
    # pinned to zero and the "length-two separatrix" degenerates onto the
    # seam, so the decomposition certifies nothing.
    return straddle > 0


def red_condition(gp: GeneralizedPermutation) -> RedDecomposition | None:
    """First Red-violating decomposition (up to row exchange), else None.

    Candidates are tried tightest middle block first, so the returned
    witness carries no slack in its cuts.
    """
    for swapped in (False, True):
        top, bottom = _oriented(gp, swapped)
        r = len(top)
        doubled = sorted({letter for letter in set(bottom) if bottom.count(letter) == 2})
        for z in doubled:
            q1 = bottom.index(z)
            q2 = bottom.index(z, q1 + 1)
            for width in range(r + 1):
                for c1 in range(r - width + 1):
                    d = RedDecomposition(swapped, z, (q1, q2), (c1, c1 + width))
                    if check_red_decomposition(gp, d):
                        return d
    return None


def condition_star(gp: GeneralizedPermutation) -> bool:
    """Exactly one letter doubled on top and exactly one on bottom."""
    return len(gp.top_doubled()) == 1 and len(gp.bottom_doubled()) == 1


def is_irreducible(gp: GeneralizedPermutation) -> Verdict:
    """Weakly irreducible and Red together; first failing certificate."""
    w = weak_reducibility(gp)
    if w is not None:
        return Verdict("fails_weak", w)
    d = red_condition(gp)
    if d is not None:
        return Verdict("fails_red", d)
    return Verdict("irreducible")
