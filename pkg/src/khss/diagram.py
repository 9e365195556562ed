"""Marked, oriented link diagrams in PD-code form.

A crossing ``X(a,b,c,d)`` lists the four arc labels counterclockwise
starting at the incoming under-strand ``a``; the under-strand runs
``a -> c``.  A crossing is positive when the over-strand, oriented by
component tracing, crosses the under-strand left to right as seen along
the under-strand direction.

Crossingless unknot components cannot be encoded by X-tuples and are
written as standalone ``U`` tokens joined to the rest by ``+``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field


class ParseError(ValueError):
    """Malformed PD text; carries the offending position."""

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class StructureError(ValueError):
    """Syntactically valid PD text describing an invalid diagram."""


@dataclass(frozen=True)
class PlanarDiagram:
    """An oriented marked link diagram.

    ``basepoint`` is an arc label, or None when the marked component is
    the first crossingless unknot component.  ``incoming`` records, per
    crossing, which slots hold the head of their arc (bit s set = slot s
    incoming), fixing the orientation trace.
    """

    crossings: tuple[tuple[int, int, int, int], ...]
    arc_count: int
    basepoint: int | None
    unknotted_extras: int
    signs: tuple[int, ...]
    components: tuple[tuple[int, ...], ...]
    incoming: tuple[int, ...] = field(repr=False, default=())

    @property
    def n_plus(self) -> int:
        return sum(1 for s in self.signs if s > 0)

    @property
    def n_minus(self) -> int:
        return sum(1 for s in self.signs if s < 0)

    @property
    def writhe(self) -> int:
        return self.n_plus - self.n_minus

    def marked_component(self) -> tuple[int, ...] | None:
        """Arcs of the component carrying the basepoint (None for a
        crossingless marked component)."""
        if self.basepoint is None:
            return None
        for comp in self.components:
            if self.basepoint in comp:
                return comp
        raise StructureError("basepoint arc not on any component")

    def with_basepoint(self, basepoint: int | None) -> "PlanarDiagram":
        if basepoint is not None and not 1 <= basepoint <= self.arc_count:
            raise StructureError(f"basepoint {basepoint} is not a valid arc")
        if basepoint is None and self.unknotted_extras == 0:
            raise StructureError("no crossingless component to mark")
        return PlanarDiagram(self.crossings, self.arc_count, basepoint,
                             self.unknotted_extras, self.signs,
                             self.components, self.incoming)


def from_crossings(crossings, extras: int = 0,
                   basepoint: int | None = None) -> PlanarDiagram:
    """Validate crossing tuples, trace components, and assign signs."""
    crossings = tuple(tuple(int(x) for x in c) for c in crossings)
    n = len(crossings)
    arc_count = 2 * n
    if n == 0 and extras == 0:
        raise StructureError("empty diagram")

    occurrences: dict[int, list[tuple[int, int]]] = {}
    for ci, cr in enumerate(crossings):
        if len(cr) != 4:
            raise StructureError(f"crossing {ci + 1} does not have 4 arcs")
        for slot, arc in enumerate(cr):
            if not 1 <= arc <= arc_count:
                raise StructureError(
                    f"arc {arc} out of range 1..{arc_count}")
            occurrences.setdefault(arc, []).append((ci, slot))
    bad = sorted(a for a in range(1, arc_count + 1)
                 if len(occurrences.get(a, [])) != 2)
    if bad:
        counts = {a: len(occurrences.get(a, [])) for a in bad}
        raise StructureError(
            "arcs must appear exactly twice: " +
            ", ".join(f"arc {a} appears {c} time(s)"
                      for a, c in counts.items()))

    incoming = _trace_orientation(crossings, occurrences)
    signs = tuple(_crossing_sign(incoming[ci]) for ci in range(n))
    components = _trace_components(crossings, occurrences, incoming, arc_count)

    if basepoint is None and n > 0:
        basepoint = 1
    if basepoint is not None and not 1 <= basepoint <= arc_count:
        raise StructureError(f"basepoint {basepoint} is not a valid arc")

    return PlanarDiagram(crossings, arc_count, basepoint, extras,
                         signs, components, tuple(incoming))


def _trace_orientation(crossings, occurrences) -> list[int]:
    """Assign incoming/outgoing status to every crossing slot.

    Slot a (0) is incoming and slot c (2) outgoing by convention; the
    over slots b, d are settled by propagation: an arc is incoming at
    exactly one of its two occurrences.  Over strands never touching an
    under slot are given a canonical direction.
    """
    n = len(crossings)
    # status[ci][slot]: None unknown, True incoming, False outgoing
    status: list[list[bool | None]] = [[None] * 4 for _ in range(n)]

    def other_occurrence(arc, ci, slot):
        occ = occurrences[arc]
        return occ[1] if occ[0] == (ci, slot) else occ[0]

    def assign(ci, slot, value):
        queue = [(ci, slot, value)]
        while queue:
            ci, slot, value = queue.pop()
            cur = status[ci][slot]
            if cur is not None:
                if cur != value:
                    raise StructureError(
                        f"unorientable diagram at crossing {ci + 1}")
                continue
            status[ci][slot] = value
            arc = crossings[ci][slot]
            oci, oslot = other_occurrence(arc, ci, slot)
            queue.append((oci, oslot, not value))
            # over slots 1 and 3 carry opposite statuses
            if slot in (1, 3):
                queue.append((ci, 4 - slot, not value))

    for ci in range(n):
        assign(ci, 0, True)
        assign(ci, 2, False)
    for ci in range(n):
        if status[ci][1] is None:
            assign(ci, 1, True)  # canonical choice for all-over components
    masks = []
    for ci in range(n):
        masks.append(sum(1 << s for s in range(4) if status[ci][s]))
    return masks


def _crossing_sign(incoming_mask: int) -> int:
    # Over pair is slots 1 (east) and 3 (west); under points north.
    # West incoming means the over strand runs left to right: positive.
    return 1 if (incoming_mask >> 3) & 1 else -1


def _trace_components(crossings, occurrences, incoming, arc_count):
    succ: dict[int, int] = {}
    for ci, cr in enumerate(crossings):
        mask = incoming[ci]
        succ[cr[0]] = cr[2]
        # over slots: whichever of slots 1,3 is incoming maps to the other
        if (mask >> 1) & 1:
            succ[cr[1]] = cr[3]
        else:
            succ[cr[3]] = cr[1]
    seen: set[int] = set()
    components = []
    for start in range(1, arc_count + 1):
        if start in seen:
            continue
        comp = []
        a = start
        while a not in seen:
            seen.add(a)
            comp.append(a)
            a = succ[a]
        components.append(tuple(comp))
    return tuple(components)


_PD_RE = re.compile(r"PD\[(.*)\]", re.DOTALL)
_X_RE = re.compile(r"X\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)")


def parse_pd(text: str) -> PlanarDiagram:
    """Parse PD text: ``PD[X(a,b,c,d),...]`` with optional ``+U`` unknot
    components and an optional ``@arc=<k>`` basepoint suffix."""
    stripped = "".join(text.split())
    if not stripped:
        raise ParseError("empty input", 0)

    basepoint = None
    if "@" in stripped:
        body, _, anno = stripped.partition("@")
        m = re.fullmatch(r"arc=(\d+)", anno)
        if not m:
            raise ParseError(f"bad basepoint annotation '@{anno}'",
                             text.index("@"))
        basepoint = int(m.group(1))
        stripped = body

    extras = 0
    pd_part = None
    for piece in stripped.split("+"):
        if piece == "U":
            extras += 1
        elif piece.startswith("PD["):
            if pd_part is not None:
                raise ParseError("multiple PD[...] blocks")
            pd_part = piece
        elif piece == "":
            raise ParseError("empty '+' component")
        else:
            raise ParseError(f"unrecognized token '{piece[:20]}'",
                             stripped.index(piece))

    crossings = []
    if pd_part is not None:
        m = _PD_RE.fullmatch(pd_part)
        if not m:
            raise ParseError("expected PD[...]", 0)
        inner = m.group(1)
        pos = 0
        while pos < len(inner):
            xm = _X_RE.match(inner, pos)
            if not xm:
                raise ParseError("expected X(a,b,c,d)", pos)
            crossings.append(tuple(int(g) for g in xm.groups()))
            pos = xm.end()
            if pos < len(inner):
                if inner[pos] != ",":
                    raise ParseError("expected ','", pos)
                pos += 1
        if not crossings:
            raise ParseError("PD[] contains no crossings", 0)

    if not crossings and extras == 0:
        raise ParseError("no diagram content", 0)
    return from_crossings(crossings, extras, basepoint)


def render(d: PlanarDiagram) -> str:
    """PD text that reparses to an identical diagram."""
    parts = []
    if d.crossings:
        parts.append("PD[" + ",".join(
            "X({},{},{},{})".format(*cr) for cr in d.crossings) + "]")
    parts.extend(["U"] * d.unknotted_extras)
    text = "+".join(parts)
    if d.basepoint is not None and d.basepoint != 1:
        text += f"@arc={d.basepoint}"
    elif d.basepoint is None and d.crossings:
        raise StructureError("cannot render crossingless basepoint "
                             "on a diagram with crossings")
    return text


def crossing_signs(d: PlanarDiagram) -> list[int]:
    return list(d.signs)


def mirror(d: PlanarDiagram) -> PlanarDiagram:
    """Swap over and under at every crossing; n_plus and n_minus swap."""
    new_crossings = []
    for ci, (a, b, c, dd) in enumerate(d.crossings):
        if (d.incoming[ci] >> 3) & 1:  # over strand enters at slot d
            new_crossings.append((dd, a, b, c))
        else:
            new_crossings.append((b, c, dd, a))
    return from_crossings(new_crossings, d.unknotted_extras, d.basepoint)


def _renumber(crossings, arc_labels: set[int], basepoint, extras):
    order = {old: new for new, old in enumerate(sorted(arc_labels), start=1)}
    new_crossings = [tuple(order[a] for a in cr) for cr in crossings]
    bp = order[basepoint] if basepoint is not None else None
    return from_crossings(new_crossings, extras, bp)


# Kink tuples on a crossingless unknot (see reidemeister1):
_UNKNOT_KINK = {+1: [(1, 1, 2, 2)], -1: [(1, 2, 2, 1)]}


def reidemeister1(d: PlanarDiagram, arc: int | None,
                  kink_sign: int) -> PlanarDiagram:
    """Add a kink of the given sign on an arc (None = first crossingless
    component).  Adds one crossing; writhe changes by kink_sign."""
    if kink_sign not in (+1, -1):
        raise ValueError("kink_sign must be +1 or -1")
    if arc is None:
        if d.unknotted_extras == 0:
            raise StructureError("no crossingless component to kink")
        base = 2 * len(d.crossings)
        kink = [tuple(a + base for a in cr) for cr in _UNKNOT_KINK[kink_sign]]
        crossings = list(d.crossings) + kink
        labels = set(range(1, base + 3))
        bp = d.basepoint
        if bp is None and d.unknotted_extras == 1:
            bp = base + 1  # marked circle acquired arcs
        return _renumber(crossings, labels, bp, d.unknotted_extras - 1)

    if not 1 <= arc <= d.arc_count:
        raise StructureError(f"arc {arc} is not a valid arc")
    t1 = arc
    loop = d.arc_count + 1
    t2 = d.arc_count + 2
    crossings = _split_arc_heads(d, [(arc, t2)])
    if kink_sign > 0:
        crossings.append((t1, t2, loop, loop))
    else:
        crossings.append((t1, loop, loop, t2))
    labels = set(range(1, d.arc_count + 3))
    return _renumber(crossings, labels, d.basepoint, d.unknotted_extras)


def _split_arc_heads(d: PlanarDiagram, pairs) -> list[tuple]:
    """Relabel the head occurrence of each arc (its incoming slot at the
    crossing it runs into) to the paired new label.

    The caller inserts new crossings between the tail and head pieces.
    Orientation comes from ``d`` itself, so all relabelings must be done
    in one pass before the diagram is rebuilt.
    """
    out = [list(cr) for cr in d.crossings]
    for arc, new_label in pairs:
        for ci, cr in enumerate(d.crossings):
            for slot, a in enumerate(cr):
                if a == arc and (d.incoming[ci] >> slot) & 1:
                    out[ci][slot] = new_label
                    break
            else:
                continue
            break
        else:
            raise StructureError(f"arc {arc} has no incoming occurrence")
    return [tuple(cr) for cr in out]


def reidemeister2(d: PlanarDiagram, arc_a: int | None,
                  arc_b: int | None = None) -> PlanarDiagram:
    """Poke arc_a over arc_b; adds two crossings of opposite sign.

    ``arc_a is None`` pokes a crossingless unknot component over itself
    (both arguments None), producing the 2-crossing unknot diagram.
    """
    if arc_a is None or arc_b is None:
        if not (arc_a is None and arc_b is None):
            raise StructureError("both arcs or neither must be None")
        if d.unknotted_extras == 0:
            raise StructureError("no crossingless component to poke")
        base = 2 * len(d.crossings)
        # arc 1 = shared under-tail/over-head, 2 = over middle,
        # 4 = under middle, 3 = shared over-tail/under-head
        poke = [(base + 3, base + 2, base + 4, base + 3),
                (base + 4, base + 2, base + 1, base + 1)]
        crossings = list(d.crossings) + poke
        labels = set(range(1, base + 5))
        bp = d.basepoint
        if bp is None and d.unknotted_extras == 1:
            bp = base + 1
        return _renumber(crossings, labels, bp, d.unknotted_extras - 1)

    if arc_a == arc_b:
        raise StructureError("poke arcs must be distinct")
    for arc in (arc_a, arc_b):
        if not 1 <= arc <= d.arc_count:
            raise StructureError(f"arc {arc} is not a valid arc")
    a1, b1 = arc_a, arc_b
    m_a, a2 = d.arc_count + 1, d.arc_count + 2
    m_b, b2 = d.arc_count + 3, d.arc_count + 4
    crossings = _split_arc_heads(d, [(arc_a, a2), (arc_b, b2)])
    crossings.append((m_b, m_a, b2, a1))   # positive: a passes over b
    crossings.append((b1, m_a, m_b, a2))   # negative: a returns over b
    labels = set(range(1, d.arc_count + 5))
    return _renumber(crossings, labels, d.basepoint, d.unknotted_extras)


def is_alternating(d: PlanarDiagram) -> bool:
    """True when every strand alternates over/under passes."""
    if not d.crossings:
        return True
    # under passes: slots 0/2; over passes: slots 1/3
    pass_kind: dict[int, bool] = {}  # arc -> True if its head pass is under
    for ci, cr in enumerate(d.crossings):
        mask = d.incoming[ci]
        for slot in range(4):
            if (mask >> slot) & 1:
                pass_kind[cr[slot]] = slot in (0, 2)
    for comp in d.components:
        kinds = [pass_kind[a] for a in comp]
        for i in range(len(kinds)):
            if kinds[i] == kinds[(i + 1) % len(kinds)]:
                return False
    return True


def load_corpus(path: str) -> list[tuple[str, PlanarDiagram]]:
    """Load a corpus CSV (``name,pdcode`` per line, ``#`` comments)."""
    entries: list[tuple[str, PlanarDiagram]] = []
    seen: dict[str, int] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            name, sep, pd_text = line.partition(",")
            name = name.strip()
            if not sep or not name or not pd_text.strip():
                raise ParseError(f"line {lineno}: expected 'name,pdcode'")
            if name in seen:
                raise ParseError(
                    f"line {lineno}: duplicate name '{name}' "
                    f"(first defined on line {seen[name]})")
            seen[name] = lineno
            try:
                diagram = parse_pd(pd_text.strip())
            except (ParseError, StructureError) as exc:
                raise ParseError(f"line {lineno}: {exc}") from exc
            entries.append((name, diagram))
    return entries
