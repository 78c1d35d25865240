"""Stratum enumeration, geometric moves, handle calculus, component bounds.

One-cylinder classes of a stratum are finite: enumerate the generalized
permutations of each admissible type, keep those whose suspension lands
in the stratum, and fold by the calibrated symmetry.  Classes merge when
a geometric move certifies they lie in one connected component:

* re-reading a single-vertical-cylinder suspension along the vertical
  (a sampled-length move within the stratum);
* membership of all-ones square-tiled suspensions in one orbit of the
  shear/quarter-turn action;
* for minimal-type strata, excising a simple cylinder of angle s*pi with
  an irreducible restriction: the class then lies in the handle-sum of
  the (connected) smaller minimal stratum, so the label s alone
  identifies its component.

Upper bounds are merged-group counts.  Lower bounds never assert
separation from a failed merge; known separations travel as citations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .conditions import is_irreducible
from .errors import NoSimpleCylinderForm, NotFoundWithinBudget, NotSimple, SizeLimit
from .genperm import CALIBRATED_SYM, GeneralizedPermutation, SymmetryGroup, canonical_key
from .strata import (
    ComponentTag,
    SingularityPattern,
    match_component,
    pattern_orders,
    single_vertex,
    singularity_pattern,
    smooth_marked_points,
)
from .suspension import (
    all_ones,
    build_cover,
    germ_sector_angles,
    sample_admissible,
    sl2z_orbit,
    vertical_permutation,
)


# -- enumeration -----------------------------------------------------------


def _letter_sequences(p: int):
    """All words of length p over letters 1..p/2, each letter used twice,
    first appearances in increasing order (canonical relabeling built in)."""
    word = [0] * p
    open_slots: list[int] = []

    def rec(pos: int, next_new: int):
        if pos == p:
            yield tuple(word)
            return
        # close an already-open letter
        for i in range(len(open_slots)):
            letter = open_slots.pop(i)
            word[pos] = letter
            yield from rec(pos + 1, next_new)
            open_slots.insert(i, letter)
        # open a new letter, keeping room to close everything
        if next_new <= p // 2 and len(open_slots) + 1 <= p - pos - 1:
            word[pos] = next_new
            open_slots.append(next_new)
            yield from rec(pos + 1, next_new + 1)
            open_slots.pop()

    yield from rec(0, 1)


def enumerate_type(
    r: int,
    l: int,
    pattern: tuple[int, ...] | None = None,
    sym: SymmetryGroup = CALIBRATED_SYM,
    size_limit: int = 16,
) -> list[GeneralizedPermutation]:
    """Canonical classes of type (r, l), optionally filtered by pattern.

    Keeps only permutations with a doubled letter in each row (the
    non-orientable condition, which is also exactly admissibility here).
    """
    if (r + l) % 2:
        raise SizeLimit("r + l must be even")
    if r < 1 or l < 1:
        raise SizeLimit("rows may not be empty")
    if r + l > size_limit:
        raise SizeLimit("type (%d,%d) exceeds the size guard %d" % (r, l, size_limit))
    want = tuple(sorted(pattern, reverse=True)) if pattern is not None else None
    minimal = want is not None and len(want) == 1
    seen: set = set()
    out: list[GeneralizedPermutation] = []
    for word in _letter_sequences(r + l):
        top, bottom = word[:r], word[r:]
        top_set = set(top)
        # doubled letter in each row: top has one iff some letter repeats
        if len(top_set) == r or len(set(bottom)) == l:
            continue
        if minimal:
            if not single_vertex(top, bottom):
                continue
        elif want is not None and pattern_orders(top, bottom) != want:
            continue
        key = canonical_key(top, bottom, sym)
        if key in seen:
            continue
        seen.add(key)
        out.append(GeneralizedPermutation.from_rows(*key))
    out.sort(key=lambda g: (g.type, g.rows()))
    return out


def stratum_types(pattern: tuple[int, ...]) -> list[tuple[int, int]]:
    """All (r, l) with r + l = sum(k + 2) over the pattern."""
    total = sum(k + 2 for k in pattern)
    return [(r, total - r) for r in range(1, total) if (total - r) >= 1 and total % 2 == 0]


def enumerate_stratum(
    pattern: tuple[int, ...],
    sym: SymmetryGroup = CALIBRATED_SYM,
    size_limit: int = 16,
) -> list[GeneralizedPermutation]:
    """Canonical one-cylinder classes of a stratum, across all types.

    With row swap in the symmetry, types (r, l) and (l, r) describe the
    same classes; only r >= l is enumerated then.  An empty result means
    the stratum contains no one-cylinder surface, hence is empty.
    """
    want = tuple(sorted(pattern, reverse=True))
    total = sum(k + 2 for k in want)
    if total % 2:
        return []
    if total > size_limit:
        raise SizeLimit("stratum needs r+l = %d > guard %d" % (total, size_limit))
    classes: list[GeneralizedPermutation] = []
    seen: set = set()
    for r, l in stratum_types(want):
        if sym.swap_rows and r < l:
            continue
        for gp in enumerate_type(r, l, pattern=want, sym=sym, size_limit=size_limit):
            key = gp.canonical_key(sym)
            if key not in seen:
                seen.add(key)
                classes.append(gp)
    return classes


# -- handle calculus -------------------------------------------------------


@dataclass(frozen=True)
class Excision:
    """A simple vertical cylinder excised from a rotated presentation."""

    rotation: tuple[int, int]
    restricted: GeneralizedPermutation
    angle: int
    complement: int
    restricted_irreducible: bool


def _head_rotations(gp: GeneralizedPermutation):
    r, l = gp.type
    if r < 2 or l < 2:
        return
    for a in range(r):
        for b in range(l):
            rot = gp.rotated(a, b)
            head = rot.top[0]
            if rot.bottom[0] != head:
                continue
            if rot.top.count(head) != 1 or rot.bottom.count(head) != 1:
                continue
            yield (a, b), rot


def excisions(gp: GeneralizedPermutation) -> list[Excision]:
    """Every simple-cylinder excision over all head rotations.

    The strip over a shared head letter is a simple cylinder for every
    admissible vector, with boundary passages (T0 -> B0) and (T1 -> B1);
    its sector angle is purely combinatorial.
    """
    out = []
    for (a, b), rot in _head_rotations(gp):
        try:
            s, comp = germ_sector_angles(rot, (("T", 0), ("B", 0)), (("T", 1), ("B", 1)))
        except NotSimple:
            continue
        restricted = rot.restrict()
        verdict = is_irreducible(restricted)
        out.append(Excision((a, b), restricted, s, comp, verdict.irreducible))
    return out


def excise_simple_cylinder(gp: GeneralizedPermutation) -> tuple[GeneralizedPermutation, int]:
    """First certified head-rotation excision: (restricted permutation, angle).

    Certified means the restriction is irreducible, so the excised seam
    has multiplicity one for almost every vector and the handle really
    detaches.  The restricted permutation keeps the two singularities the
    removal creates; collapsing the seam between them (a metric
    deformation, not a table operation) lands in the smaller minimal
    stratum, and when one of them is a marked point
    :func:`onecyl.strata.smooth_marked_points` performs the collapse.
    """
    for exc in excisions(gp):
        if exc.restricted_irreducible:
            return exc.restricted, exc.angle
    raise NoSimpleCylinderForm(
        "no rotation exposes a certified simple head cylinder: %s" % gp.render()
    )


def insert_split_letter(gp: GeneralizedPermutation, i: int, j: int) -> GeneralizedPermutation:
    """Thread a fresh length-epsilon interval at top slot i, bottom slot j.

    This is the combinatorial shadow of breaking up the singularity whose
    wedges sit at the chosen junctions: the new letter becomes a short
    saddle connection between the two pieces.
    """
    fresh = gp.num_letters + 1
    top = list(gp.top)
    bottom = list(gp.bottom)
    top.insert(i, fresh)
    bottom.insert(j, fresh)
    return GeneralizedPermutation.from_rows(top, bottom)


def _split_variants(gp: GeneralizedPermutation):
    """All one-letter degenerations of the zero: threaded intervals plus
    adjacent same-row pairs (the latter break off a simple pole)."""
    r, l = gp.type
    for i in range(r + 1):
        for j in range(l + 1):
            yield insert_split_letter(gp, i, j)
    fresh = gp.num_letters + 1
    for i in range(r + 1):
        top = list(gp.top)
        top[i:i] = [fresh, fresh]
        yield GeneralizedPermutation.from_rows(top, gp.bottom)
    for j in range(l + 1):
        bottom = list(gp.bottom)
        bottom[j:j] = [fresh, fresh]
        yield GeneralizedPermutation.from_rows(gp.top, bottom)


def collapse_letter(gp: GeneralizedPermutation, letter: int) -> GeneralizedPermutation | None:
    """Shrink one interval to zero length: delete both cells of a letter.

    Returns None when a row would empty out.  Geometrically sound as a
    stratum degeneration when the letter is a multiplicity-one saddle
    connection; the caller certifies that (one cell per row suffices for
    almost every vector).
    """
    top = [x for x in gp.top if x != letter]
    bottom = [x for x in gp.bottom if x != letter]
    if not top or not bottom:
        return None
    return GeneralizedPermutation.from_rows(top, bottom)


def _collapsible(gp: GeneralizedPermutation, letter: int) -> bool:
    """Multiplicity-one certificate for shrinking the letter's interval.

    Either the two copies sit on different boundary circles, or they
    share a circle with another doubled letter: both cases free the
    length from the balance equation for almost every vector.
    """
    in_top = gp.top.count(letter)
    if in_top == 1:
        return True
    row = gp.top if in_top == 2 else gp.bottom
    return any(x != letter and row.count(x) == 2 for x in set(row))


def _collapses_to(gp: GeneralizedPermutation, target_key, sym: SymmetryGroup) -> bool:
    """True when shrinking some certified letter lands on the target class."""
    for letter in range(1, gp.num_letters + 1):
        if not _collapsible(gp, letter):
            continue
        shrunk = collapse_letter(gp, letter)
        if shrunk is not None and shrunk.canonical_key(sym) == target_key:
            return True
    return False


def bubble(
    gp_hat: GeneralizedPermutation,
    s: int,
    budget: int = 8192,
    sym: SymmetryGroup = CALIBRATED_SYM,
) -> GeneralizedPermutation:
    """Search for a class excising to (class of gp_hat, s).

    The construction retraces the geometric handle sum: break the zero
    into orders (s-2, k-s+2) by threading a short interval, then glue a
    cylinder along a seam through the new short connection.  A candidate
    is accepted when its own certified excision has angle s and shrinking
    a short connection in the restriction lands back on the input class.
    """
    base = singularity_pattern(gp_hat).orders
    k0 = base[0]
    if not 1 <= s <= (k0 + 4) // 2:
        raise NotFoundWithinBudget("angle %d out of range for a zero of order %d" % (s, k0))
    split_pat = tuple(sorted((s - 2, k0 + 2 - s) + base[1:], reverse=True))
    bubbled = tuple(sorted((k0 + 4,) + base[1:], reverse=True))
    target = gp_hat.canonical_key(sym)
    tried = 0
    for variant in _split_variants(gp_hat):
        if singularity_pattern(variant).orders != split_pat:
            continue
        for ab in itertools.product(range(variant.type[0]), range(variant.type[1])):
            tried += 1
            if tried > budget:
                raise NotFoundWithinBudget(
                    "no bubbled form with angle %d within budget (tried %d)" % (s, tried)
                )
            candidate = variant.rotated(*ab).prepend_shared_head()
            if singularity_pattern(candidate).orders != bubbled:
                continue
            try:
                restricted, angle = excise_simple_cylinder(candidate)
            except NoSimpleCylinderForm:
                continue
            if angle == s and _collapses_to(restricted, target, sym):
                return candidate
    raise NotFoundWithinBudget(
        "no bubbled form with angle %d within budget (tried %d)" % (s, tried)
    )


# -- component report -------------------------------------------------------


@dataclass(frozen=True)
class MoveConfig:
    """Breadth of the merge-move search."""

    lambda_samples: int = 8
    lambda_bound: int = 12
    use_orbits: bool = True
    orbit_cap: int = 4000
    use_excisions: bool = False
    substratum_connected: bool = False  # certified by a smaller report
    orbit_decode_cap: int = 0  # orbit walk with base decoding for stragglers
    size_limit: int = 16
    citations: tuple[str, ...] = ()


@dataclass
class MergeEdge:
    kind: str  # "vperm" | "orbit" | "excise"
    source: int
    target: object
    detail: str = ""


@dataclass
class ComponentReport:
    pattern: SingularityPattern
    sym_label: str
    classes: list[GeneralizedPermutation]
    tags: list[ComponentTag]
    groups: list[int]  # group index per class
    edges: list[MergeEdge]
    lower_bound: int
    upper_bound: int
    citations: tuple[str, ...]

    def merge_groups(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for i, g in enumerate(self.groups):
            out.setdefault(g, []).append(i)
        return out

    def as_json(self) -> dict:
        return {
            "schema": "1",
            "stratum": self.pattern.as_json(),
            "sym": self.sym_label,
            "classes": [
                {"perm": gp.render(), "tag": tag.label(), "group": grp}
                for gp, tag, grp in zip(self.classes, self.tags, self.groups)
            ],
            "edges": [
                {"kind": e.kind, "source": e.source, "target": str(e.target), "detail": e.detail}
                for e in self.edges
            ],
            "lower_bound": self.lower_bound,
            "upper_bound": self.upper_bound,
            "citations": list(self.citations),
        }

    def as_tsv(self) -> str:
        lines = ["class\ttag\tgroup"]
        for gp, tag, grp in zip(self.classes, self.tags, self.groups):
            lines.append("%s\t%s\t%d" % (gp.render(), tag.label(), grp))
        return "\n".join(lines)


def _orbit_decode_partner(
    gp: GeneralizedPermutation,
    i: int,
    classes: list[GeneralizedPermutation],
    index: dict,
    merger: "_Merger",
    sym: SymmetryGroup,
    config: "MoveConfig",
) -> tuple[int, str] | None:
    """Search the shear/quarter-turn orbit for another class's suspension."""
    from .suspension import decode_one_cylinder, minimal_admissible

    start = build_cover(gp, minimal_admissible(gp))
    seen = {start.canonical_key()}
    frontier = [(start, "")]
    while frontier and len(seen) <= config.orbit_decode_cap:
        nxt = []
        for cover, word in frontier:
            for image, letter in ((cover.apply_T(), "T"), (cover.apply_S(), "S")):
                key = image.canonical_key()
                if key in seen:
                    continue
                seen.add(key)
                nxt.append((image, word + letter))
                decoded = decode_one_cylinder(image)
                if decoded is None:
                    continue
                j = index.get(decoded.canonical_key(sym))
                if j is not None and merger.find(j) != merger.find(i):
                    return j, word + letter
        frontier = nxt
    return None


class _Merger:
    """Union-find over class indices plus opaque move labels."""

    def __init__(self):
        self.parent: dict[object, object] = {}

    def find(self, a: object) -> object:
        self.parent.setdefault(a, a)
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a: object, b: object) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def component_report(
    pattern: tuple[int, ...],
    config: MoveConfig = MoveConfig(),
    sym: SymmetryGroup = CALIBRATED_SYM,
) -> ComponentReport:
    """Enumerate a stratum and merge classes along certified moves."""
    spattern = SingularityPattern.from_orders(pattern)
    classes = enumerate_stratum(spattern.orders, sym=sym, size_limit=config.size_limit)
    index: dict = {gp.canonical_key(sym): i for i, gp in enumerate(classes)}
    merger = _Merger()
    edges: list[MergeEdge] = []
    for i in range(len(classes)):
        merger.find(i)

    # vertical re-readings over sampled admissible vectors
    from .errors import BoundTooSmall, NotSingleCylinder

    for i, gp in enumerate(classes):
        lams = []
        for seed in range(config.lambda_samples + 1):
            try:
                lams.append(sample_admissible(gp, seed=seed, bound=config.lambda_bound))
            except BoundTooSmall:
                continue
        for lam in sorted(set(lams)):
            try:
                vg, _ = vertical_permutation(gp, lam)
            except NotSingleCylinder:
                continue
            j = index.get(vg.canonical_key(sym))
            if j is not None and merger.find(i) != merger.find(j):
                merger.union(i, j)
                edges.append(MergeEdge("vperm", i, j, "lam=%s" % (lam,)))

    # one orbit of the shear / quarter-turn action per all-ones suspension
    if config.use_orbits:
        orbit_owner: dict = {}
        for i, gp in enumerate(classes):
            if len(gp.top) != len(gp.bottom):
                continue  # all-ones needs equal rows
            key = build_cover(gp, all_ones(gp)).canonical_key()
            if key in orbit_owner:
                j, word = orbit_owner[key]
                if merger.find(i) != merger.find(j):
                    merger.union(i, j)
                    edges.append(MergeEdge("orbit", i, j, "word=%s" % (word or "id")))
                continue
            result = sl2z_orbit(gp, all_ones(gp), cap=config.orbit_cap)
            for k in result.keys:
                orbit_owner.setdefault(k, (i, result.words[k]))
            orbit_owner[key] = (i, "")

    # excisions into a connected smaller minimal stratum: label by angle
    if config.use_excisions:
        if not config.substratum_connected:
            raise SizeLimit("excision labels need a certified connected substratum")
        for i, gp in enumerate(classes):
            for exc in excisions(gp):
                if not exc.restricted_irreducible:
                    continue
                label = ("angle", exc.angle)
                if merger.find(i) != merger.find(label):
                    merger.union(i, label)
                    edges.append(MergeEdge("excise", i, label, "s=%d" % exc.angle))

    # last resort for still-isolated classes: walk the orbit of a sampled
    # suspension and decode one-cylinder presentations back to classes
    if config.orbit_decode_cap:
        sizes: dict[object, int] = {}
        for i in range(len(classes)):
            root = merger.find(i)
            sizes[root] = sizes.get(root, 0) + 1
        singletons = [i for i in range(len(classes)) if sizes[merger.find(i)] == 1]
        for i in singletons:
            hit = _orbit_decode_partner(classes[i], i, classes, index, merger, sym, config)
            if hit is not None:
                j, word = hit
                merger.union(j, i)
                edges.append(MergeEdge("orbit", i, j, "decoded after word=%s" % word))

    roots: dict[object, int] = {}
    groups = []
    for i in range(len(classes)):
        root = merger.find(i)
        roots.setdefault(root, len(roots))
        groups.append(roots[root])
    upper = len(roots)
    lower = 1 if classes else 0
    tags = [match_component(gp, sym) for gp in classes]
    return ComponentReport(
        pattern=spattern,
        sym_label=sym.label(),
        classes=classes,
        tags=tags,
        groups=groups,
        edges=edges,
        lower_bound=lower,
        upper_bound=upper,
        citations=config.citations,
    )
