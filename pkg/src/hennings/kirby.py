"""Slice-word model of based oriented Kirby tangles.

A diagram is an ordered list of events read top to bottom:

    cup P        birth of two adjacent strands at slots P, P+1
    cap P        death of the strands at slots P, P+1
    x+ P / x- P  positive / negative crossing of slots P, P+1
    dot LO HI D  dotted 0-framed unknot (1-handle) whose disk is pierced,
                 normal vector up, by the strands at slots LO..HI (HI = LO-1
                 for an unpierced dot)
    base P C     base point of undotted component C on the strand at slot P

Strand width starts at `open_top` (0 for links), is changed only by cups
and caps, and must end at `open_bottom`.  Dotted components exist only as
dot events; undotted closed components get exactly one base point (one is
auto-assigned below a component's first cup if the file omits it).
Framing is the blackboard framing: kinks carry it, there is no framing
integer.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .grpalg import Presentation

__all__ = ["Cup", "Cap", "Cross", "Dot", "BasePoint", "Diagram",
           "DiagramError", "MoveError", "Traced", "parse", "to_text",
           "linking_data", "LinkingData", "extract_presentation",
           "apply_move", "unknot", "hopf_link", "lens_diagram",
           "s1xd3", "cancel_pair_diagram", "chain_link"]


class DiagramError(Exception):
    """Malformed diagram (width violations, dangling strands, bad bases)."""


class MoveError(Exception):
    """A diagram move whose preconditions fail; the message names them."""


@dataclass(frozen=True)
class Cup:
    pos: int


@dataclass(frozen=True)
class Cap:
    pos: int


@dataclass(frozen=True)
class Cross:
    pos: int
    sign: int  # +1 or -1


@dataclass(frozen=True)
class Dot:
    lo: int
    hi: int     # hi = lo - 1 encodes an unpierced dot
    dot_id: int


@dataclass(frozen=True)
class BasePoint:
    pos: int
    comp: int


@dataclass(frozen=True)
class Diagram:
    events: tuple
    open_top: int = 0
    open_bottom: int = 0
    flipped: frozenset = frozenset()   # undotted components with reversed orientation

    def traced(self) -> "Traced":
        return Traced(self)

    def with_events(self, events):
        return Diagram(tuple(events), self.open_top, self.open_bottom,
                       self.flipped)

    def flip_component(self, comp) -> "Diagram":
        f = set(self.flipped)
        f.symmetric_difference_update({comp})
        return Diagram(self.events, self.open_top, self.open_bottom,
                       frozenset(f))


# -- parsing / printing -------------------------------------------------------


def parse(text: str) -> Diagram:
    events = []
    open_top = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        try:
            if tok[0] == "open":
                open_top = int(tok[1])
            elif tok[0] == "cup":
                events.append(Cup(int(tok[1])))
            elif tok[0] == "cap":
                events.append(Cap(int(tok[1])))
            elif tok[0] == "x+":
                events.append(Cross(int(tok[1]), +1))
            elif tok[0] == "x-":
                events.append(Cross(int(tok[1]), -1))
            elif tok[0] == "dot":
                events.append(Dot(int(tok[1]), int(tok[2]), int(tok[3])))
            elif tok[0] == "base":
                events.append(BasePoint(int(tok[1]), int(tok[2])))
            else:
                raise ValueError(f"unknown event {tok[0]!r}")
        except (IndexError, ValueError) as e:
            raise DiagramError(f"line {lineno}: {e}") from e
    d = Diagram(tuple(events), open_top=open_top)
    t = d.traced()   # validates
    return Diagram(tuple(events), open_top=open_top,
                   open_bottom=len(t.bottom_pieces))


def to_text(d: Diagram) -> str:
    lines = []
    if d.open_top:
        lines.append(f"open {d.open_top}")
    for ev in d.events:
        if isinstance(ev, Cup):
            lines.append(f"cup {ev.pos}")
        elif isinstance(ev, Cap):
            lines.append(f"cap {ev.pos}")
        elif isinstance(ev, Cross):
            lines.append(f"x{'+' if ev.sign > 0 else '-'} {ev.pos}")
        elif isinstance(ev, Dot):
            lines.append(f"dot {ev.lo} {ev.hi} {ev.dot_id}")
        elif isinstance(ev, BasePoint):
            lines.append(f"base {ev.pos} {ev.comp}")
    return "\n".join(lines) + "\n"


# -- tracing ------------------------------------------------------------------


@dataclass
class _Piece:
    pid: int
    comp: int = -1
    direction: int = 0          # +1 down, -1 up
    tokens: list = dc_field(default_factory=list)  # (row, kind, payload)


class Traced:
    """Connectivity, orientations, and event records of one diagram.

    records: per event row one of
      ("cup", row, left_pid, right_pid)
      ("cap", row, left_pid, right_pid)
      ("cross", row, sign, in_left, in_right, out_left, out_right)
      ("dot", row, dot_id, [pierced pids left to right])
      ("base", row, pid, comp)
    """

    def __init__(self, d: Diagram):
        self.diagram = d
        self.pieces = {}
        self.records = []
        self.slot_rows = []     # per row boundary: list of pids
        self._links = []        # (pid, end, pid, end); end: 't' or 'b'
        self.dot_events = {}    # dot_id -> record index
        slots = []
        self._next = 0

        def new_piece():
            self._next += 1
            p = _Piece(self._next)
            self.pieces[p.pid] = p
            return p

        self.top_pieces = []
        for _ in range(d.open_top):
            p = new_piece()
            self.top_pieces.append(p.pid)
            slots.append(p.pid)

        for row, ev in enumerate(d.events):
            self.slot_rows.append(list(slots))
            if isinstance(ev, Cup):
                if not 0 <= ev.pos <= len(slots):
                    raise DiagramError(f"row {row}: cup at {ev.pos} outside width {len(slots)}")
                a, b = new_piece(), new_piece()
                slots[ev.pos:ev.pos] = [a.pid, b.pid]
                self._links.append((a.pid, "t", b.pid, "t"))
                self.records.append(("cup", row, a.pid, b.pid))
            elif isinstance(ev, Cap):
                if not 0 <= ev.pos <= len(slots) - 2:
                    raise DiagramError(f"row {row}: cap at {ev.pos} outside width {len(slots)}")
                a, b = slots[ev.pos], slots[ev.pos + 1]
                del slots[ev.pos:ev.pos + 2]
                self._links.append((a, "b", b, "b"))
                self.records.append(("cap", row, a, b))
            elif isinstance(ev, Cross):
                if not 0 <= ev.pos <= len(slots) - 2:
                    raise DiagramError(f"row {row}: crossing at {ev.pos} outside width {len(slots)}")
                a, b = slots[ev.pos], slots[ev.pos + 1]
                a2, b2 = new_piece(), new_piece()
                slots[ev.pos] = b2.pid
                slots[ev.pos + 1] = a2.pid
                self._links.append((a, "b", a2.pid, "t"))
                self._links.append((b, "b", b2.pid, "t"))
                self.records.append(("cross", row, ev.sign, a, b, b2.pid, a2.pid))
            elif isinstance(ev, Dot):
                if ev.hi < ev.lo - 1:
                    raise DiagramError(f"row {row}: dot span [{ev.lo},{ev.hi}] malformed")
                if ev.hi >= len(slots) or ev.lo < 0:
                    if not (ev.hi == ev.lo - 1 and 0 <= ev.lo <= len(slots)):
                        raise DiagramError(f"row {row}: dot span outside width {len(slots)}")
                pierced = [slots[i] for i in range(ev.lo, ev.hi + 1)]
                if ev.dot_id in self.dot_events:
                    raise DiagramError(f"row {row}: duplicate dot id {ev.dot_id}")
                self.dot_events[ev.dot_id] = len(self.records)
                for leg, pid in enumerate(pierced):
                    self.pieces[pid].tokens.append((row, "dot", (ev.dot_id, leg, len(pierced))))
                self.records.append(("dot", row, ev.dot_id, pierced))
            elif isinstance(ev, BasePoint):
                if not 0 <= ev.pos < len(slots):
                    raise DiagramError(f"row {row}: base at {ev.pos} outside width {len(slots)}")
                pid = slots[ev.pos]
                self.pieces[pid].tokens.append((row, "base", ev.comp))
                self.records.append(("base", row, pid, ev.comp))
            else:
                raise DiagramError(f"row {row}: unknown event {ev!r}")
        self.slot_rows.append(list(slots))
        self.bottom_pieces = list(slots)
        if d.open_bottom and len(slots) != d.open_bottom:
            raise DiagramError(f"diagram ends with width {len(slots)}, "
                               f"declared {d.open_bottom}")
        self._connect_components()
        self._orient()
        self._assign_bases()

    # connectivity ---------------------------------------------------------

    def _connect_components(self):
        adj = {pid: [] for pid in self.pieces}
        for a, ea, b, eb in self._links:
            adj[a].append((b, ea, eb))
            adj[b].append((a, eb, ea))
        comp = 0
        order = []
        for rec in self.records:
            if rec[0] in ("cup", "cross"):
                order.extend(rec[2:4] if rec[0] == "cup" else [rec[3], rec[4]])
        order = self.top_pieces + [pid for pid in sorted(self.pieces)]
        for pid in order:
            piece = self.pieces[pid]
            if piece.comp >= 0:
                continue
            stack = [pid]
            piece.comp = comp
            while stack:
                cur = stack.pop()
                for nb, _, _ in adj[cur]:
                    nbp = self.pieces[nb]
                    if nbp.comp < 0:
                        nbp.comp = comp
                        stack.append(nb)
            comp += 1
        self.n_components = comp
        self._adj = adj
        # open components: contain a boundary piece end
        openc = set()
        for pid in self.top_pieces + self.bottom_pieces:
            openc.add(self.pieces[pid].comp)
        self.open_components = openc
        for pid in self.pieces:
            ends = sum(1 for _ in self._adj[pid])
            boundary = ((pid in self.top_pieces) +
                        (pid in self.bottom_pieces))
            if ends + boundary != 2:
                raise DiagramError("dangling strand: piece ends unmatched")

    def _orient(self):
        """First-encountered cup of each component gets its left leg down."""
        chosen = {}
        for rec in self.records:
            if rec[0] != "cup":
                continue
            comp = self.pieces[rec[2]].comp
            if comp not in chosen:
                chosen[comp] = rec
        # propagate directions: cup/cap links flip, cross links keep
        kind_of_link = {}
        for a, ea, b, eb in self._links:
            kind_of_link[(a, b)] = (ea, eb)
        seeds = []
        for comp, rec in chosen.items():
            seeds.append((rec[2], +1))   # left cup leg points down
        seen_comps = set(chosen)
        for pid in self.top_pieces:
            comp = self.pieces[pid].comp
            if comp not in seen_comps:
                seeds.append((pid, +1))  # open strands point down from the top
                seen_comps.add(comp)
        for pid in self.bottom_pieces:
            comp = self.pieces[pid].comp
            if comp not in seen_comps:
                seeds.append((pid, -1))
                seen_comps.add(comp)
        flip = self.diagram.flipped
        for pid, d0 in seeds:
            if self.pieces[pid].direction:
                continue
            self.pieces[pid].direction = d0
            stack = [pid]
            while stack:
                cur = stack.pop()
                dcur = self.pieces[cur].direction
                for nb, ecur, enb in self._adj[cur]:
                    nbp = self.pieces[nb]
                    want = -dcur if ecur == enb else dcur
                    if nbp.direction == 0:
                        nbp.direction = want
                        stack.append(nb)
                    elif nbp.direction != want:
                        raise DiagramError("orientation propagation clash")
        for piece in self.pieces.values():
            if piece.direction == 0:
                raise DiagramError("unoriented piece (disconnected?)")
            if piece.comp in flip or self._flip_number(piece.comp) in flip:
                pass
        # apply user flips by component number after numbering (below)

    def _flip_number(self, comp):
        return comp

    def _assign_bases(self):
        """Component numbering and base points.

        Undotted closed components are numbered by explicit base events
        where present; the rest get consecutive numbers in scan order.
        Missing bases are auto-assigned below the first cup's left leg.
        """
        closed = sorted({p.comp for p in self.pieces.values()}
                        - self.open_components)
        base_events = {}
        for rec in self.records:
            if rec[0] == "base":
                comp = self.pieces[rec[2]].comp
                if comp in base_events:
                    raise DiagramError("duplicate base point on a component")
                if comp in self.open_components:
                    raise DiagramError("base point on an open component")
                base_events[comp] = rec
        numbered = {}
        used = set()
        for comp, rec in base_events.items():
            n = rec[3]
            if n in used:
                raise DiagramError(f"component number {n} used twice")
            used.add(n)
            numbered[comp] = n
        nxt = 1
        for comp in closed:
            if comp not in numbered:
                while nxt in used:
                    nxt += 1
                numbered[comp] = nxt
                used.add(nxt)
        self.component_number = numbered      # traced comp -> user number
        self.base_of = {}                     # traced comp -> (pid, row)
        self.auto_based = set()               # comps with synthesized bases
        for comp, rec in base_events.items():
            self.base_of[comp] = (rec[2], rec[1])
        for comp in closed:
            if comp in self.base_of:
                continue
            for rec in self.records:
                if rec[0] == "cup" and self.pieces[rec[2]].comp == comp:
                    self.base_of[comp] = (rec[2], rec[1])
                    self.auto_based.add(comp)
                    break
            else:
                raise DiagramError("closed component without a cup")
        # user orientation flips act on numbered components
        flips = self.diagram.flipped
        if flips:
            for piece in self.pieces.values():
                n = self.component_number.get(piece.comp)
                if n is not None and n in flips:
                    piece.direction = -piece.direction
        # dotted components
        self.dot_ids = sorted(self.dot_events)
        self.n_dotted = len(self.dot_ids)
        self.closed_undotted = sorted(closed, key=lambda c: numbered[c])

    # traversal --------------------------------------------------------------

    def walk(self, comp):
        """Token walk of a closed component from its base point, along its
        orientation.  Yields (kind, payload) where kind is one of
        "cross"  (row, sign, side 'l'/'r', direction)
        "dot"    (row, dot_id, leg, nlegs, direction)
        "cup"/"cap" (row, traversal type 'DL','DR','RL','LR')
        """
        start_pid, start_row = self.base_of[comp]
        out = []
        rows = {}
        for rec in self.records:
            if rec[0] == "cross":
                _, row, sign, a, b, b2, a2 = rec
                rows.setdefault(("b", a), ("cross", row, sign, "l", a2))
                rows.setdefault(("b", b), ("cross", row, sign, "r", b2))
                rows.setdefault(("t", a2), ("cross_in", row, sign, "l", a))
                rows.setdefault(("t", b2), ("cross_in", row, sign, "r", b))
            elif rec[0] == "cup":
                _, row, a, b = rec
                rows.setdefault(("t", a), ("cup", row, "l", b))
                rows.setdefault(("t", b), ("cup", row, "r", a))
            elif rec[0] == "cap":
                _, row, a, b = rec
                rows.setdefault(("b", a), ("cap", row, "l", b))
                rows.setdefault(("b", b), ("cap", row, "r", a))
        pid = start_pid
        entry_row = start_row
        first = True
        while True:
            piece = self.pieces[pid]
            d = piece.direction
            toks = sorted(piece.tokens, key=lambda t: t[0], reverse=(d < 0))
            for row, kind, payload in toks:
                if first:
                    # tokens before the base on the base piece come at the end
                    if (d > 0 and row < entry_row) or (d < 0 and row > entry_row):
                        continue
                if kind == "dot":
                    dot_id, leg, nlegs = payload
                    out.append(("dot", (row, dot_id, leg, nlegs, d)))
            # leave through the end in the travel direction
            end = "b" if d > 0 else "t"
            link = rows.get((end, pid))
            if link is None:
                raise DiagramError("walk fell off an open end")
            kind, row, side, other = link[0], link[1], link[-2], link[-1]
            if kind == "cross":
                out.append(("cross", (row, link[2], side, d)))
                pid = other
            elif kind == "cross_in":
                # entering a crossing from below (travelling up)
                out.append(("cross", (row, link[2], side, d)))
                pid = other
            elif kind == "cup":
                # travelling up into a cup, exit down the other leg
                ttype = "RL" if side == "r" else "LR"
                out.append(("cup", (row, ttype)))
                pid = other
            else:  # cap: travelling down into a cap, exit up the other leg
                ttype = "DL" if side == "l" else "DR"
                out.append(("cap", (row, ttype)))
                pid = other
            first = False
            if pid == start_pid:
                # consume tokens before the base point
                piece = self.pieces[pid]
                d = piece.direction
                toks = sorted(piece.tokens, key=lambda t: t[0], reverse=(d < 0))
                for row, kind, payload in toks:
                    if (d > 0 and row < entry_row) or (d < 0 and row > entry_row):
                        if kind == "dot":
                            dot_id, leg, nlegs = payload
                            out.append(("dot", (row, dot_id, leg, nlegs, d)))
                break
        return out


# -- linking data -------------------------------------------------------------


@dataclass
class LinkingData:
    matrix: list
    numbers: list          # component numbers in row order
    sigma_plus: int
    sigma_minus: int
    sigma_zero: int
    n_dotted: int
    framing_parity: list   # diagonal mod 2

    @property
    def size(self):
        return len(self.matrix)


def linking_data(d: Diagram) -> LinkingData:
    t = d.traced()
    if d.open_top or len(t.bottom_pieces):
        raise DiagramError("linking data needs a closed diagram")
    comps = t.closed_undotted
    index = {c: i for i, c in enumerate(comps)}
    n = len(comps)
    M = [[0] * n for _ in range(n)]
    raw = [[0] * n for _ in range(n)]
    for rec in t.records:
        if rec[0] != "cross":
            continue
        _, row, sign, a, b, _, _ = rec
        pa, pb = t.pieces[a], t.pieces[b]
        s = sign * pa.direction * pb.direction
        ia, ib = index[pa.comp], index[pb.comp]
        if ia == ib:
            M[ia][ia] += s
        else:
            raw[ia][ib] += s
            raw[ib][ia] += s
    for i in range(n):
        for j in range(n):
            if i != j:
                if raw[i][j] % 2:
                    raise DiagramError("odd inter-component crossing count")
                M[i][j] = raw[i][j] // 2
    sp, sm, sz = _signature_counts([[Fraction(x) for x in row] for row in M])
    return LinkingData(matrix=M,
                       numbers=[t.component_number[c] for c in comps],
                       sigma_plus=sp, sigma_minus=sm, sigma_zero=sz,
                       n_dotted=t.n_dotted,
                       framing_parity=[M[i][i] % 2 for i in range(n)])


def _signature_counts(M):
    """Exact signature of a symmetric rational matrix by congruence."""
    n = len(M)
    sp = sm = sz = 0
    idx = list(range(n))
    M = [row[:] for row in M]

    def swap(i, j):
        M[i], M[j] = M[j], M[i]
        for row in M:
            row[i], row[j] = row[j], row[i]

    k = 0
    size = n
    while k < size:
        piv = None
        for i in range(k, size):
            if M[i][i] != 0:
                piv = i
                break
        if piv is not None:
            swap(k, piv)
            d = M[k][k]
            if d > 0:
                sp += 1
            else:
                sm += 1
            for i in range(k + 1, size):
                f = M[i][k] / d
                if f:
                    for j in range(k, size):
                        M[i][j] -= f * M[k][j]
                    for j in range(size):
                        if j >= k:
                            M[j][i] = M[i][j] if j >= i else M[i][j]
            # symmetrize column clear
            for i in range(k + 1, size):
                M[k][i] = 0
                M[i][k] = 0
            k += 1
            continue
        off = None
        for i in range(k, size):
            for j in range(i + 1, size):
                if M[i][j] != 0:
                    off = (i, j)
                    break
            if off:
                break
        if off is None:
            sz += size - k
            break
        i, j = off
        swap(k, i)
        swap(k + 1, j if j != k else i)
        b = M[k][k + 1]
        # hyperbolic block [[0, b], [b, 0]] contributes one of each sign
        sp += 1
        sm += 1
        for i2 in range(k + 2, size):
            f1 = M[i2][k + 1] / b
            f2 = M[i2][k] / b
            for j2 in range(size):
                M[i2][j2] -= f1 * M[k][j2] + f2 * M[k + 1][j2]
            for j2 in range(size):
                M[j2][i2] = M[i2][j2]
        for i2 in range(k + 2, size):
            M[k][i2] = M[i2][k] = 0
            M[k + 1][i2] = M[i2][k + 1] = 0
        k += 2
    return sp, sm, sz


# -- presentation extraction --------------------------------------------------


def extract_presentation(d: Diagram) -> Presentation:
    """Walk each undotted component from its base; each dot piercing emits a
    signed letter (downward passage positive)."""
    t = d.traced()
    if d.open_top or t.bottom_pieces:
        raise DiagramError("presentation extraction needs a closed diagram")
    gen_index = {dot_id: i + 1 for i, dot_id in enumerate(t.dot_ids)}
    relators = []
    for comp in t.closed_undotted:
        word = []
        for kind, payload in t.walk(comp):
            if kind == "dot":
                row, dot_id, leg, nlegs, direction = payload
                letter = gen_index[dot_id]
                word.append(letter if direction > 0 else -letter)
        relators.append(word)
    return Presentation(len(t.dot_ids), relators)


# -- builders -----------------------------------------------------------------


def unknot(framing: int = 0) -> Diagram:
    events = [Cup(0)]
    sign = 1 if framing > 0 else -1
    for _ in range(abs(framing)):
        events.extend([Cup(1), Cross(0, sign), Cap(1)])
    events.append(Cap(0))
    return Diagram(tuple(events))


def lens_diagram(n: int) -> Diagram:
    """L(1, n) boundary: the n-framed unknot."""
    return unknot(n)


def hopf_link() -> Diagram:
    return Diagram((Cup(0), Cup(1), Cross(0, +1), Cross(2, +1),
                    Cap(1), Cap(0)))


def s1xd3() -> Diagram:
    return Diagram((Dot(0, -1, 1),))


def cancel_pair_diagram() -> Diagram:
    return Diagram((Cup(0), Dot(0, 0, 1), Cap(0)))


def chain_link(two_dots: bool = False) -> Diagram:
    """Three-component corpus diagram: a 2-chain through a dot."""
    events = [Cup(0), Cup(1), Cross(0, +1), Cross(2, +1)]
    if two_dots:
        events.append(Dot(0, 1, 2))
    events += [Dot(1, 2, 1), Cap(1), Cap(0)]
    return Diagram(tuple(events))


# -- moves --------------------------------------------------------------------


def _width_at(d: Diagram, row: int) -> int:
    w = d.open_top
    for ev in d.events[:row]:
        if isinstance(ev, Cup):
            w += 2
        elif isinstance(ev, Cap):
            w -= 2
    return w


def apply_move(d: Diagram, move, *args) -> Diagram:
    """Rewrite the diagram by a named move; raises MoveError when the
    pattern is not present at the stated location.

    moves: r2_insert(row, pos, sign), r2_cancel(row), r3(row),
    slide(row), snake_cancel(row), snake_insert(row, pos, side),
    move_base(comp, row, pos), flip(comp), handle_slide(row, pos),
    cancel_pair(dot_id), introduce_pair(), add_dot(comp, dot_id),
    remove_dot(dot_id), blow_up(sign), blow_down(comp).
    """
    table = {
        "r2_insert": _mv_r2_insert, "r2_cancel": _mv_r2_cancel,
        "r3": _mv_r3, "slide": _mv_slide,
        "snake_cancel": _mv_snake_cancel, "snake_insert": _mv_snake_insert,
        "move_base": _mv_move_base, "flip": _mv_flip,
        "handle_slide": _mv_handle_slide, "cancel_pair": _mv_cancel_pair,
        "introduce_pair": _mv_introduce_pair, "add_dot": _mv_add_dot,
        "remove_dot": _mv_remove_dot, "blow_up": _mv_blow_up,
        "blow_down": _mv_blow_down,
    }
    if move not in table:
        raise MoveError(f"unknown move {move!r}")
    out = table[move](d, *args)
    out.traced()   # validate
    return out


def _mv_r2_insert(d, row, pos, sign=+1):
    if not 0 <= row <= len(d.events):
        raise MoveError("row out of range")
    if pos + 1 >= _width_at(d, row) or pos < 0:
        raise MoveError("r2_insert needs two adjacent strands at that row")
    ev = list(d.events)
    ev[row:row] = [Cross(pos, sign), Cross(pos, -sign)]
    return d.with_events(ev)


def _mv_r2_cancel(d, row):
    ev = list(d.events)
    if row + 1 >= len(ev):
        raise MoveError("row out of range")
    a, b = ev[row], ev[row + 1]
    if not (isinstance(a, Cross) and isinstance(b, Cross)
            and a.pos == b.pos and a.sign == -b.sign):
        raise MoveError("rows are not a cancelling crossing pair")
    del ev[row:row + 2]
    return d.with_events(ev)


def _mv_r3(d, row):
    ev = list(d.events)
    if row + 2 >= len(ev):
        raise MoveError("row out of range")
    a, b, c = ev[row:row + 3]
    if not all(isinstance(x, Cross) for x in (a, b, c)):
        raise MoveError("rows are not three crossings")
    if not (a.sign == b.sign == c.sign and a.pos == c.pos
            and abs(b.pos - a.pos) == 1):
        raise MoveError("rows do not match the braid-relation pattern")
    ev[row:row + 3] = [Cross(b.pos, a.sign), Cross(a.pos, b.sign),
                       Cross(b.pos, c.sign)]
    return d.with_events(ev)


def _event_span(ev):
    if isinstance(ev, Cup):
        return (ev.pos, ev.pos + 1, +2)
    if isinstance(ev, Cap):
        return (ev.pos, ev.pos + 1, -2)
    if isinstance(ev, Cross):
        return (ev.pos, ev.pos + 1, 0)
    if isinstance(ev, Dot):
        return (ev.lo, max(ev.hi, ev.lo), 0) if ev.hi >= ev.lo else (ev.lo, ev.lo - 1, 0)
    if isinstance(ev, BasePoint):
        return (ev.pos, ev.pos, 0)
    raise MoveError("unknown event")


def _shift_event(ev, delta):
    if isinstance(ev, Cup):
        return Cup(ev.pos + delta)
    if isinstance(ev, Cap):
        return Cap(ev.pos + delta)
    if isinstance(ev, Cross):
        return Cross(ev.pos + delta, ev.sign)
    if isinstance(ev, Dot):
        return Dot(ev.lo + delta, ev.hi + delta, ev.dot_id)
    if isinstance(ev, BasePoint):
        return BasePoint(ev.pos + delta, ev.comp)
    raise MoveError("unknown event")


def _mv_slide(d, row):
    """Exchange two consecutive events acting on disjoint slot ranges."""
    ev = list(d.events)
    if row + 1 >= len(ev):
        raise MoveError("row out of range")
    A, B = ev[row], ev[row + 1]
    lo_a, hi_a, da = _event_span(A)
    lo_b, hi_b, db = _event_span(B)
    # B's positions are expressed after A acted; undo A's shift
    if da > 0:                      # A is a cup at lo_a
        if lo_b >= lo_a + 2:
            B2 = _shift_event(B, -2)
        elif hi_b < lo_a:
            B2 = B
        else:
            raise MoveError("events overlap; not a free slide")
    elif da < 0:                    # A is a cap at lo_a
        if lo_b >= lo_a:
            B2 = _shift_event(B, +2)
        elif hi_b < lo_a:
            B2 = B
        else:
            B2 = B  # lo_b..hi_b strictly left
    else:
        if hi_b < lo_a or lo_b > hi_a:
            B2 = B
        else:
            raise MoveError("events overlap; not a free slide")
    lo_b2, hi_b2, db2 = _event_span(B2)
    if not (hi_b2 < lo_a or lo_b2 > hi_a):
        raise MoveError("events overlap; not a free slide")
    if db2 != 0 and lo_b2 < lo_a:
        A2 = _shift_event(A, db2)
    elif db2 != 0 and lo_b2 > hi_a:
        A2 = A
    else:
        A2 = A
    ev[row:row + 2] = [B2, A2]
    return d.with_events(ev)


def _mv_snake_cancel(d, row):
    ev = list(d.events)
    if row + 1 >= len(ev):
        raise MoveError("row out of range")
    A, B = ev[row], ev[row + 1]
    if isinstance(A, Cup) and isinstance(B, Cap) and \
            B.pos in (A.pos - 1, A.pos + 1):
        del ev[row:row + 2]
        return d.with_events(ev)
    raise MoveError("rows are not a snake (cup/cap) pair")


def _mv_snake_insert(d, row, pos, side="r"):
    """Insert an S-bend on the strand at slot pos: cup beside it, cap across."""
    w = _width_at(d, row)
    if not 0 <= pos < w:
        raise MoveError("no strand at that slot")
    ev = list(d.events)
    if side == "r":
        ev[row:row] = [Cup(pos + 1), Cap(pos)]
    else:
        ev[row:row] = [Cup(pos), Cap(pos + 1)]
    return d.with_events(ev)


def _mv_move_base(d, comp, row, pos):
    ev = [e for e in d.events]
    t = d.traced()
    target = None
    for tc, num in t.component_number.items():
        if num == comp:
            target = tc
    if target is None:
        raise MoveError(f"no closed undotted component numbered {comp}")
    out = []
    removed = 0
    for e in ev:
        if isinstance(e, BasePoint) and e.comp == comp:
            removed += 1
            continue
        out.append(e)
    row = row - (1 if removed and row > 0 else 0)
    if row > len(out):
        raise MoveError("row out of range")
    out[row:row] = [BasePoint(pos, comp)]
    d2 = d.with_events(out)
    t2 = d2.traced()
    for tc, num in t2.component_number.items():
        if num == comp and t2.base_of[tc][1] is not None:
            return d2
    raise MoveError("base does not sit on the named component")


def _mv_flip(d, comp):
    return d.flip_component(comp)


def _mv_introduce_pair(d):
    t = d.traced()
    new_dot = max(t.dot_ids, default=0) + 1
    w = _width_at(d, len(d.events))
    if w != 0:
        raise MoveError("introduce_pair appends at the closed bottom only")
    ev = list(d.events) + [Cup(0), Dot(0, 0, new_dot), Cap(0)]
    return d.with_events(ev)


def _mv_cancel_pair(d, dot_id):
    """Delete a dot pierced exactly once by a plain unknotted component."""
    t = d.traced()
    if dot_id not in t.dot_events:
        raise MoveError(f"no dot {dot_id}")
    rec = t.records[t.dot_events[dot_id]]
    pierced = rec[3]
    if len(pierced) != 1:
        raise MoveError("cancel_pair: dot is not pierced exactly once")
    comp = t.pieces[pierced[0]].comp
    comp_pieces = {pid for pid, p in t.pieces.items() if p.comp == comp}
    for r in t.records:
        if r[0] == "cross" and (r[3] in comp_pieces or r[4] in comp_pieces):
            raise MoveError("cancel_pair: the piercing component has crossings")
        if r[0] == "dot" and r[2] != dot_id and any(x in comp_pieces for x in r[3]):
            raise MoveError("cancel_pair: the piercing component meets another dot")
        if r[0] == "dot" and r[2] == dot_id and any(x not in comp_pieces for x in r[3]):
            raise MoveError("cancel_pair: other strands pierce the dot")
    # remove the component's events and the dot
    ev = []
    for row, e in enumerate(d.events):
        if isinstance(e, Dot) and e.dot_id == dot_id:
            continue
        if isinstance(e, (Cup, Cap)):
            recs = [r for r in t.records if r[1] == row]
            a = recs[0][2]
            if a in comp_pieces:
                continue
        if isinstance(e, Cross):
            recs = [r for r in t.records if r[1] == row and r[0] == "cross"]
            if recs and (recs[0][3] in comp_pieces or recs[0][4] in comp_pieces):
                continue
        if isinstance(e, BasePoint):
            recs = [r for r in t.records if r[1] == row and r[0] == "base"]
            if recs and recs[0][2] in comp_pieces:
                continue
        # shift positions left of removed strands
        ev.append(_reindex_without(e, row, t, comp_pieces))
    return d.with_events(ev)


def _reindex_without(e, row, t, dead_pieces):
    slots = t.slot_rows[row]
    def newpos(p):
        return sum(1 for k in range(p) if slots[k] not in dead_pieces)
    if isinstance(e, Cup):
        return Cup(newpos(e.pos))
    if isinstance(e, Cap):
        return Cap(newpos(e.pos))
    if isinstance(e, Cross):
        return Cross(newpos(e.pos), e.sign)
    if isinstance(e, Dot):
        if e.hi < e.lo:
            return Dot(newpos(e.lo), newpos(e.lo) - 1, e.dot_id)
        lo2 = newpos(e.lo)
        hi2 = lo2 + sum(1 for k in range(e.lo, e.hi + 1)
                        if slots[k] not in dead_pieces) - 1
        return Dot(lo2, hi2, e.dot_id)
    if isinstance(e, BasePoint):
        return BasePoint(newpos(e.pos), e.comp)
    return e


def _mv_add_dot(d, comp, dot_id=None):
    """Replace a disjoint plain 0-framed unknot component by a dot."""
    t = d.traced()
    target = None
    for tc, num in t.component_number.items():
        if num == comp:
            target = tc
    if target is None:
        raise MoveError(f"no closed undotted component numbered {comp}")
    comp_pieces = {pid for pid, p in t.pieces.items() if p.comp == target}
    if len(comp_pieces) != 2:
        raise MoveError("add_dot needs a plain cup/cap unknot")
    for r in t.records:
        if r[0] == "cross" and (r[3] in comp_pieces or r[4] in comp_pieces):
            raise MoveError("add_dot: component has crossings")
        if r[0] == "dot" and any(x in comp_pieces for x in r[3]):
            raise MoveError("add_dot: component passes through a dot")
    if dot_id is None:
        dot_id = max(t.dot_ids, default=0) + 1
    elif dot_id in t.dot_ids:
        raise MoveError("dot id already used")
    ev = []
    for row, e in enumerate(d.events):
        if isinstance(e, (Cup, Cap)):
            recs = [r for r in t.records if r[1] == row and r[0] in ("cup", "cap")]
            if recs and recs[0][2] in comp_pieces:
                if isinstance(e, Cup):
                    at = _reindex_without(e, row, t, comp_pieces).pos
                    ev.append(Dot(at, at - 1, dot_id))
                continue
        if isinstance(e, BasePoint):
            recs = [r for r in t.records if r[1] == row and r[0] == "base"]
            if recs and recs[0][2] in comp_pieces:
                continue
        ev.append(_reindex_without(e, row, t, comp_pieces))
    return d.with_events(ev)


def _mv_remove_dot(d, dot_id):
    """Replace an unpierced dot by a plain 0-framed unknot component."""
    t = d.traced()
    if dot_id not in t.dot_events:
        raise MoveError(f"no dot {dot_id}")
    rec = t.records[t.dot_events[dot_id]]
    if rec[3]:
        raise MoveError("remove_dot handles unpierced dots only")
    ev = []
    for e in d.events:
        if isinstance(e, Dot) and e.dot_id == dot_id:
            ev.extend([Cup(e.lo), Cap(e.lo)])
        else:
            ev.append(e)
    return d.with_events(ev)


def _mv_blow_up(d, sign=+1):
    w = _width_at(d, len(d.events))
    if w != 0:
        raise MoveError("blow_up appends at the closed bottom only")
    ev = list(d.events) + [Cup(0), Cup(1), Cross(0, sign), Cap(1), Cap(0)]
    return d.with_events(ev)


def _mv_blow_down(d, comp):
    """Delete a disjoint unknot with a single kink (framing +-1)."""
    t = d.traced()
    target = None
    for tc, num in t.component_number.items():
        if num == comp:
            target = tc
    if target is None:
        raise MoveError(f"no closed undotted component numbered {comp}")
    comp_pieces = {pid for pid, p in t.pieces.items() if p.comp == target}
    ncross = 0
    for r in t.records:
        if r[0] == "cross":
            ins = (r[3] in comp_pieces) + (r[4] in comp_pieces)
            if ins == 1:
                raise MoveError("blow_down: component links others")
            if ins == 2:
                ncross += 1
        if r[0] == "dot" and any(x in comp_pieces for x in r[3]):
            raise MoveError("blow_down: component passes through a dot")
    if ncross != 1:
        raise MoveError("blow_down needs exactly one self-crossing (framing +-1)")
    ev = []
    for row, e in enumerate(d.events):
        drop = False
        if isinstance(e, (Cup, Cap)):
            recs = [r for r in t.records if r[1] == row and r[0] in ("cup", "cap")]
            drop = bool(recs) and recs[0][2] in comp_pieces
        elif isinstance(e, Cross):
            recs = [r for r in t.records if r[1] == row and r[0] == "cross"]
            drop = bool(recs) and recs[0][3] in comp_pieces
        elif isinstance(e, BasePoint):
            recs = [r for r in t.records if r[1] == row and r[0] == "base"]
            drop = bool(recs) and recs[0][2] in comp_pieces
        if not drop:
            ev.append(_reindex_without(e, row, t, comp_pieces))
    return d.with_events(ev)


# -- handle slide via a blackboard parallel -----------------------------------


def _double_component(d: Diagram, target_comp, travel_side):
    """Insert a blackboard-framed parallel of one component.

    travel_side 'l': the copy runs on the travel-left of the original
    (geometric left where the strand points down, right where it points
    up); 's'r' the mirror.  Returns the new diagram.
    """
    t = d.traced()
    tpieces = {pid for pid, p in t.pieces.items() if p.comp == target_comp}

    def doubled(pid):
        return pid in tpieces

    def copy_left(pid):
        down = t.pieces[pid].direction > 0
        return down if travel_side == "l" else not down

    ev_out = []
    for row, e in enumerate(d.events):
        slots = t.slot_rows[row]

        def newpos(p):
            return p + sum(1 for k in range(p) if doubled(slots[k]))

        if isinstance(e, Cup):
            rec = next(r for r in t.records if r[1] == row)
            a = rec[2]
            P = newpos(e.pos)
            if doubled(a):
                # outer cup then nested inner cup; which of the two is the
                # copy depends on the side, but the event list is the same
                ev_out.extend([Cup(P), Cup(P + 1)])
            else:
                ev_out.append(Cup(P))
        elif isinstance(e, Cap):
            rec = next(r for r in t.records if r[1] == row and r[0] == "cap")
            a = rec[2]
            P = newpos(e.pos)
            if doubled(a):
                ev_out.extend([Cap(P + 1), Cap(P)])
            else:
                ev_out.append(Cap(P))
        elif isinstance(e, Cross):
            rec = next(r for r in t.records if r[1] == row and r[0] == "cross")
            a, b = rec[3], rec[4]
            P = newpos(e.pos)
            s = e.sign
            da, db = doubled(a), doubled(b)
            if not da and not db:
                ev_out.append(Cross(P, s))
            elif da and not db:
                ev_out.extend([Cross(P + 1, s), Cross(P, s)])
            elif db and not da:
                ev_out.extend([Cross(P, s), Cross(P + 1, s)])
            else:
                ev_out.extend([Cross(P + 1, s), Cross(P + 2, s),
                               Cross(P, s), Cross(P + 1, s)])
        elif isinstance(e, Dot):
            if e.hi < e.lo:
                ev_out.append(Dot(newpos(e.lo), newpos(e.lo) - 1, e.dot_id))
            else:
                hi2 = newpos(e.hi) + (1 if doubled(slots[e.hi]) else 0)
                ev_out.append(Dot(newpos(e.lo), hi2, e.dot_id))
        elif isinstance(e, BasePoint):
            P = newpos(e.pos)
            if doubled(slots[e.pos]) and copy_left(slots[e.pos]):
                P += 1   # base stays on the original strand, copy on its left
            ev_out.append(BasePoint(P, e.comp))
        else:
            raise MoveError("unknown event in doubling")
    return d.with_events(ev_out)


def _mv_handle_slide(d: Diagram, row, pos):
    """Band-sum the component at slot pos with a parallel copy of the
    component at slot pos+1, the band being the straight strip between
    the two adjacent strands at that row boundary."""
    t = d.traced()
    if not 0 <= row <= len(d.events):
        raise MoveError("row out of range")
    slots = t.slot_rows[row]
    if pos + 1 >= len(slots) or pos < 0:
        raise MoveError("handle_slide needs two adjacent strands")
    pa, pb = t.pieces[slots[pos]], t.pieces[slots[pos + 1]]
    if pa.comp == pb.comp:
        raise MoveError("handle_slide needs two distinct components")
    for c in (pa.comp, pb.comp):
        if c in t.open_components:
            raise MoveError("handle_slide needs closed components")
    # the copy of the right strand must land adjacent to the left strand,
    # i.e. on the geometric left of pb at this row
    down = pb.direction > 0
    travel_side = "l" if down else "r"
    d2 = _double_component(d, pb.comp, travel_side)
    # recompute the splice location: strands to the left of pos+1 belonging
    # to the doubled component each add one slot
    tgt = {pid for pid, p in t.pieces.items() if p.comp == pb.comp}
    splice_at = pos + sum(1 for k in range(pos) if slots[k] in tgt)
    ev = list(d2.events)
    # row index shifts by the number of expanded events above the splice
    newrow = 0
    for i in range(row):
        e = d.events[i]
        if isinstance(e, Cup):
            rec = next(r for r in t.records if r[1] == i and r[0] == "cup")
            newrow += 2 if rec[2] in tgt else 1
        elif isinstance(e, Cap):
            rec = next(r for r in t.records if r[1] == i and r[0] == "cap")
            newrow += 2 if rec[2] in tgt else 1
        elif isinstance(e, Cross):
            rec = next(r for r in t.records if r[1] == i and r[0] == "cross")
            da = rec[3] in tgt
            db = rec[4] in tgt
            newrow += 4 if (da and db) else (2 if (da or db) else 1)
        else:
            newrow += 1
    ev[newrow:newrow] = [Cap(splice_at), Cup(splice_at)]
    return d2.with_events(ev)
