"""Generalized permutations: two cyclic rows of letters, each letter twice.

A generalized permutation of type (r, l) encodes the boundary
identifications of a one-cylinder flat surface: the top row lists the r
horizontal intervals on one boundary circle of the cylinder, the bottom
row the l intervals on the other, and every letter names a pair of
identified intervals.  Equivalently it is a fixed-point-free involution
of the r + l cell positions.

Letters are stored internally as integers 1..k numbered by first
appearance (top row scanned first); the original tokens are kept for
rendering, so ``parse`` / ``render`` round-trip letter-for-letter.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import EmptyRow, LetterCountError, MalformedText, NotRestrictable


@dataclass(frozen=True)
class SymmetryGroup:
    """Flags selecting the row symmetries used for canonical forms.

    Relabeling (renumbering letters by first appearance) is always on.
    ``rotate_rows`` allows independent cyclic rotations of the two rows,
    ``swap_rows`` exchanges them and ``reverse_rows`` reverses both
    simultaneously.  The enabled generators act as a finite group.
    """

    rotate_rows: bool = True
    swap_rows: bool = False
    reverse_rows: bool = False

    def label(self) -> str:
        parts = ["relabel"]
        if self.rotate_rows:
            parts.append("rotate")
        if self.swap_rows:
            parts.append("swap")
        if self.reverse_rows:
            parts.append("reverse")
        return "+".join(parts)


#: Base symmetry used for canonical forms of single permutations.
DEFAULT_SYM = SymmetryGroup()

#: Symmetry calibrated against the one-cylinder class counts of the small
#: minimal strata (4 classes of type (5,5) and 3 of type (6,4) for Q(8),
#: 2 classes for Q(-1,5)).  Row swap is enabled: the cylinder has no
#: preferred side, and vertical re-readings land row-swapped.  Row
#: reversal is NOT enabled: it merges two of the four (5,5) classes and
#: breaks the counts.
CALIBRATED_SYM = SymmetryGroup(rotate_rows=True, swap_rows=True, reverse_rows=False)


def _relabel_key(top: Sequence[int], bottom: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Renumber letters by first appearance and return row tuples."""
    mapping: dict[int, int] = {}
    out: list[list[int]] = [[], []]
    for row, dest in ((top, out[0]), (bottom, out[1])):
        for letter in row:
            code = mapping.get(letter)
            if code is None:
                code = len(mapping) + 1
                mapping[letter] = code
            dest.append(code)
    return tuple(out[0]), tuple(out[1])


def canonical_key(
    top: Sequence[int], bottom: Sequence[int], sym: SymmetryGroup = DEFAULT_SYM
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Lexicographically minimal relabeled row pair over the sym orbit.

    This is the hashable core of :meth:`GeneralizedPermutation.canonical_form`,
    usable directly on raw row tuples during large enumerations.
    """
    variants = [(tuple(top), tuple(bottom))]
    if sym.reverse_rows:
        variants.append((variants[0][0][::-1], variants[0][1][::-1]))
    if sym.swap_rows:
        variants.extend([(b, t) for (t, b) in variants])
    best = None
    for vt, vb in variants:
        r, l = len(vt), len(vb)
        top_rots = range(r) if sym.rotate_rows else (0,)
        bot_rots = range(l) if sym.rotate_rows else (0,)
        for a in top_rots:
            ta = vt[a:] + vt[:a]
            for b in bot_rots:
                key = _relabel_key(ta, vb[b:] + vb[:b])
                if best is None or key < best:
                    best = key
    assert best is not None
    return best


@dataclass(frozen=True)
class GeneralizedPermutation:
    """An immutable two-row generalized permutation.

    ``top`` and ``bottom`` hold letters 1..k; ``names`` maps letter i to
    its original token ``names[i-1]``.
    """

    top: tuple[int, ...]
    bottom: tuple[int, ...]
    names: tuple[str, ...]

    # -- construction -------------------------------------------------

    @staticmethod
    def from_tokens(top: Sequence[str], bottom: Sequence[str]) -> "GeneralizedPermutation":
        if not top or not bottom:
            raise EmptyRow("both rows must contain at least one letter")
        mapping: dict[str, int] = {}
        names: list[str] = []
        rows: list[list[int]] = []
        for tokens in (top, bottom):
            row = []
            for tok in tokens:
                code = mapping.get(tok)
                if code is None:
                    code = len(names) + 1
                    mapping[tok] = code
                    names.append(tok)
                row.append(code)
            rows.append(row)
        counts = [0] * (len(names) + 1)
        for row in rows:
            for letter in row:
                counts[letter] += 1
        bad = [names[i - 1] for i in range(1, len(names) + 1) if counts[i] != 2]
        if bad:
            raise LetterCountError("letters not appearing exactly twice: %s" % ", ".join(bad))
        return GeneralizedPermutation(tuple(rows[0]), tuple(rows[1]), tuple(names))

    @staticmethod
    def from_rows(top: Sequence[int], bottom: Sequence[int]) -> "GeneralizedPermutation":
        """Build from integer rows, renumbering letters by first appearance."""
        if not top or not bottom:
            raise EmptyRow("both rows must contain at least one letter")
        t, b = _relabel_key(top, bottom)
        k, rem = divmod(len(t) + len(b), 2)
        counts = [0] * (k + 1)
        for row in (t, b):
            for x in row:
                if rem or x > k:
                    raise LetterCountError("some letter does not occur exactly twice")
                counts[x] += 1
        if any(c != 2 for c in counts[1:]):
            raise LetterCountError("some letter does not occur exactly twice")
        return GeneralizedPermutation(t, b, tuple(str(i) for i in range(1, k + 1)))

    # -- basic data ----------------------------------------------------

    @property
    def type(self) -> tuple[int, int]:
        return len(self.top), len(self.bottom)

    @property
    def num_letters(self) -> int:
        return len(self.names)

    @property
    def size(self) -> int:
        return len(self.top) + len(self.bottom)

    def rows(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return self.top, self.bottom

    def pairing(self) -> tuple[int, ...]:
        """Position involution: pairing()[i] is the partner of position i.

        Positions are 0-based, top row first.  The involution has no
        fixed point because every letter fills exactly two cells.
        """
        where: dict[int, list[int]] = {}
        for pos, letter in enumerate(self.top + self.bottom):
            where.setdefault(letter, []).append(pos)
        out = [0] * self.size
        for a, b in where.values():
            out[a], out[b] = b, a
        return tuple(out)

    def letter_positions(self) -> dict[int, tuple[int, ...]]:
        where: dict[int, list[int]] = {}
        for pos, letter in enumerate(self.top + self.bottom):
            where.setdefault(letter, []).append(pos)
        return {k: tuple(v) for k, v in where.items()}

    def top_doubled(self) -> tuple[int, ...]:
        """Letters whose two cells both lie on the top row."""
        r = len(self.top)
        return tuple(
            sorted(k for k, (a, b) in self.letter_positions().items() if a < r and b < r)
        )

    def bottom_doubled(self) -> tuple[int, ...]:
        r = len(self.top)
        return tuple(
            sorted(k for k, (a, b) in self.letter_positions().items() if a >= r and b >= r)
        )

    def is_abelian(self) -> bool:
        """True iff no letter repeats within one row (a true permutation)."""
        return not self.top_doubled() and not self.bottom_doubled()

    # -- text ------------------------------------------------------------

    @staticmethod
    def parse(text: str) -> "GeneralizedPermutation":
        """Parse two whitespace-separated rows split by a newline or '/'."""
        if "\n" in text:
            rows = [row for row in text.splitlines() if row.strip()]
        else:
            rows = text.split("/")
        if len(rows) != 2:
            raise MalformedText("expected exactly two rows, got %d" % len(rows))
        return GeneralizedPermutation.from_tokens(rows[0].split(), rows[1].split())

    def render(self) -> str:
        top = " ".join(self.names[x - 1] for x in self.top)
        bottom = " ".join(self.names[x - 1] for x in self.bottom)
        return top + " / " + bottom

    def __str__(self) -> str:  # pragma: no cover - convenience
        return self.render()

    # -- symmetries -------------------------------------------------------

    def _with_rows(self, top: Sequence[int], bottom: Sequence[int]) -> "GeneralizedPermutation":
        return GeneralizedPermutation(tuple(top), tuple(bottom), self.names)

    def rotated(self, a: int, b: int) -> "GeneralizedPermutation":
        r, l = self.type
        a %= r
        b %= l
        return self._with_rows(self.top[a:] + self.top[:a], self.bottom[b:] + self.bottom[:b])

    def rotations(self) -> Iterator["GeneralizedPermutation"]:
        """All r*l independent cyclic rotations of the two rows."""
        r, l = self.type
        for a in range(r):
            for b in range(l):
                yield self.rotated(a, b)

    def swap_rows(self) -> "GeneralizedPermutation":
        return self._with_rows(self.bottom, self.top)

    def reversed_rows(self) -> "GeneralizedPermutation":
        return self._with_rows(self.top[::-1], self.bottom[::-1])

    def canonical_form(self, sym: SymmetryGroup = DEFAULT_SYM) -> "GeneralizedPermutation":
        """Minimal representative of the sym orbit, letters renamed 1..k."""
        t, b = canonical_key(self.top, self.bottom, sym)
        return GeneralizedPermutation(t, b, tuple(str(i) for i in range(1, len(self.names) + 1)))

    def canonical_key(self, sym: SymmetryGroup = DEFAULT_SYM) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return canonical_key(self.top, self.bottom, sym)

    def equivalent(self, other: "GeneralizedPermutation", sym: SymmetryGroup = DEFAULT_SYM) -> bool:
        return self.canonical_key(sym) == other.canonical_key(sym)

    # -- restriction ------------------------------------------------------

    def restrict(self) -> "GeneralizedPermutation":
        """Drop a shared head letter occurring once per row (pi-hat)."""
        head = self.top[0]
        if self.bottom[0] != head:
            raise NotRestrictable("rows start with different letters")
        if self.top.count(head) != 1 or self.bottom.count(head) != 1:
            raise NotRestrictable("head letter is doubled within a row")
        if len(self.top) == 1 or len(self.bottom) == 1:
            raise NotRestrictable("restriction would empty a row")
        top, bottom = self.top[1:], self.bottom[1:]
        t, b = _relabel_key(top, bottom)
        return GeneralizedPermutation(t, b, tuple(str(i) for i in range(1, len(self.names))))

    def prepend_shared_head(self) -> "GeneralizedPermutation":
        """Insert a fresh letter at the head of both rows (inverse of restrict)."""
        fresh = len(self.names) + 1
        top = (fresh,) + self.top
        bottom = (fresh,) + self.bottom
        t, b = _relabel_key(top, bottom)
        return GeneralizedPermutation(t, b, tuple(str(i) for i in range(1, fresh + 1)))
