"""Group algebras k[G], presentations, AC-moves, and homomorphism counting.

k[G] is the cocommutative example: R = 1 x 1, g = 1, Lambda = sum of all
group elements, lam = delta at the identity.  The 2-complex invariant for
the trivial trace element is then a count of relator-satisfying tuples.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .cyclo import CycField
from .hopf import AlgElem, HopfData, TensorElem

__all__ = [
    "FiniteGroup", "Presentation", "group_algebra", "hom_count",
    "hom_count_hopf_oracle", "ac_move", "wedge", "cyclic_group",
    "symmetric_group_3", "load_cayley", "load_presentation",
    "presentation_to_text",
]


class FiniteGroup:
    """A finite group given by its Cayley table; identity has index 0."""

    def __init__(self, table, name=""):
        self.table = [list(row) for row in table]
        self.order = len(self.table)
        self.name = name or f"group{self.order}"
        self._validate()
        self.identity = 0
        self.inverse = [0] * self.order
        for a in range(self.order):
            for b in range(self.order):
                if self.table[a][b] == 0:
                    self.inverse[a] = b

    def _validate(self):
        n = self.order
        for row in self.table:
            if len(row) != n or any(not (0 <= x < n) for x in row):
                raise ValueError("malformed Cayley table")
        for a in range(n):
            if self.table[a][0] != a or self.table[0][a] != a:
                raise ValueError("index 0 is not an identity")
        for a in range(n):
            if 0 not in self.table[a]:
                raise ValueError(f"element {a} has no inverse")
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                        raise ValueError(f"associativity fails at ({a},{b},{c})")

    def mul(self, a, b):
        return self.table[a][b]

    def word_value(self, word, assignment):
        """Evaluate a signed word at a generator assignment."""
        x = 0
        for letter in word:
            g = assignment[abs(letter) - 1]
            if letter < 0:
                g = self.inverse[g]
            x = self.table[x][g]
        return x


def cyclic_group(n):
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    return FiniteGroup(table, name=f"Z{n}")


def symmetric_group_3():
    perms = [(0, 1, 2), (1, 2, 0), (2, 0, 1), (0, 2, 1), (2, 1, 0), (1, 0, 2)]
    idx = {p: i for i, p in enumerate(perms)}
    def compose(p, q):  # apply q first, then p
        return tuple(p[q[i]] for i in range(3))
    table = [[idx[compose(p, q)] for q in perms] for p in perms]
    return FiniteGroup(table, name="S3")


def load_cayley(path):
    """CSV of indices, row i column j = i*j, identity = 0."""
    rows = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            rows.append([int(x) for x in line.replace(",", " ").split()])
    return FiniteGroup(rows)


def group_algebra(G: FiniteGroup, field: CycField) -> HopfData:
    one = field.one

    def mul_basis(i, j):
        return {G.mul(i, j): one}

    def comul_basis(i):
        t = TensorElem(2)
        t.terms[(i, i)] = one
        return t

    def antipode_basis(i):
        return AlgElem({G.inverse[i]: one})

    def counit_basis(i):
        return one

    unit = AlgElem({0: one})
    Lambda = AlgElem({i: one for i in range(G.order)})
    lam = {0: one}
    R = [(one, 0, 0)]
    g = AlgElem({0: one})
    generators = [AlgElem({i: one}) for i in range(G.order)]

    def lam_partners(i):
        return [(G.inverse[i], one)]

    return HopfData(field, G.order, mul_basis, comul_basis, antipode_basis,
                    counit_basis, unit, Lambda, lam, R, g,
                    name=f"k[{G.name}]", generators=generators,
                    basis_label=lambda i: f"g{i}",
                    lam_partners=lam_partners)


@dataclass
class Presentation:
    """Group presentation with unreduced relator words.

    Relators are lists of signed 1-based generator indices; the empty list
    is the trivial relator.
    """

    n_generators: int
    relators: list = dc_field(default_factory=list)

    def __post_init__(self):
        for word in self.relators:
            for letter in word:
                if letter == 0 or abs(letter) > self.n_generators:
                    raise ValueError(f"letter {letter} out of range")

    def copy(self):
        return Presentation(self.n_generators, [list(w) for w in self.relators])


def hom_count(P: Presentation, G: FiniteGroup) -> int:
    """Count generator tuples killing every relator, by brute force."""
    n = P.n_generators
    if G.order ** n > 10 ** 8:
        raise ValueError(f"search space {G.order}^{n} too large")
    count = 0
    assignment = [0] * n
    def rec(k):
        nonlocal count
        if k == n:
            if all(G.word_value(w, assignment) == 0 for w in P.relators):
                count += 1
            return
        for a in range(G.order):
            assignment[k] = a
            rec(k + 1)
    rec(0)
    return count


def hom_count_hopf_oracle(P: Presentation, G: FiniteGroup, field=None) -> int:
    """Independent oracle: sum over tuples of prod_i lam(R_i(a)) in k[G].

    Goes through the group-algebra integral rather than integer comparison,
    mirroring the homomorphism-count formula for the trivial trace element.
    """
    field = field or CycField(5)
    H = group_algebra(G, field)
    n = P.n_generators
    if G.order ** n > 10 ** 6:
        raise ValueError("oracle search space too large")
    total = field.zero
    assignment = [0] * n
    def rec(k):
        nonlocal total
        if k == n:
            prod = field.one
            for w in P.relators:
                elem = H.unit
                for letter in w:
                    gidx = assignment[abs(letter) - 1]
                    b = AlgElem({gidx: field.one})
                    if letter < 0:
                        b = H.S(b)
                    elem = H.mul(elem, b)
                prod = prod * H.lam_of(elem)
                if prod.is_zero():
                    break
            total = total + prod
            return
        for a in range(G.order):
            assignment[k] = a
            rec(k + 1)
    rec(0)
    if not total.is_rational():
        raise ArithmeticError("oracle value not rational")
    r = total.rational_part()
    if r.denominator != 1:
        raise ArithmeticError("oracle value not an integer")
    return int(r)


def _invert_word(word):
    return [-x for x in reversed(word)]


def ac_move(P: Presentation, move) -> Presentation:
    """Apply one AC-move; move is a tuple tagged by its kind.

    ("swap", i, j)            exchange relators i and j
    ("conjugate", i, word)    R_i -> word R_i word^-1
    ("invert", i)             R_i -> R_i^-1
    ("multiply", i, j)        R_i -> R_i R_j  (i != j)
    ("add_generator", word)   new generator y, new relator y*word
    ("remove_generator", i)   reverse of add: relator i must be y*word with
                              y occurring nowhere else
    Indices are 0-based into P.relators.
    """
    P = P.copy()
    kind = move[0]
    if kind == "swap":
        _, i, j = move
        P.relators[i], P.relators[j] = P.relators[j], P.relators[i]
    elif kind == "conjugate":
        _, i, word = move
        for letter in word:
            if letter == 0 or abs(letter) > P.n_generators:
                raise ValueError("conjugating word out of range")
        P.relators[i] = list(word) + P.relators[i] + _invert_word(word)
    elif kind == "invert":
        _, i = move
        P.relators[i] = _invert_word(P.relators[i])
    elif kind == "multiply":
        _, i, j = move
        if i == j:
            raise ValueError("multiply needs two distinct relators")
        P.relators[i] = P.relators[i] + P.relators[j]
    elif kind == "add_generator":
        _, word = move
        for letter in word:
            if letter == 0 or abs(letter) > P.n_generators:
                raise ValueError("added relator word out of range")
        y = P.n_generators + 1
        P.n_generators = y
        P.relators.append([y] + list(word))
    elif kind == "remove_generator":
        _, i = move
        word = P.relators[i]
        if not word:
            raise ValueError("remove_generator: relator is empty, no leading generator")
        y = word[0]
        if y < 0:
            raise ValueError("remove_generator: relator must start with a positive letter")
        rest = word[1:]
        if any(abs(x) == y for x in rest):
            raise ValueError("remove_generator: generator reappears inside its relator")
        for k, other in enumerate(P.relators):
            if k != i and any(abs(x) == y for x in other):
                raise ValueError("remove_generator: generator occurs in another relator")
        P.relators.pop(i)
        P.n_generators -= 1
        def renum(letter):
            a = abs(letter)
            if a > y:
                a -= 1
            return a if letter > 0 else -a
        P.relators = [[renum(x) for x in w] for w in P.relators]
    else:
        raise ValueError(f"unknown AC-move {kind!r}")
    return P


def wedge(P1: Presentation, P2: Presentation) -> Presentation:
    """One-point union: disjoint generators, concatenated relators."""
    shift = P1.n_generators
    rel2 = [[(x + shift) if x > 0 else (x - shift) for x in w] for w in P2.relators]
    return Presentation(shift + P2.n_generators,
                        [list(w) for w in P1.relators] + rel2)


def load_presentation(path) -> Presentation:
    """Text format: line 1 'generators n'; then one relator per line as
    space-separated signed indices; a line '1' is the empty relator."""
    relators = []
    n = None
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if n is None:
                head, val = line.split()
                if head != "generators":
                    raise ValueError("first line must be 'generators n'")
                n = int(val)
                continue
            if line == "1":
                relators.append([])
            else:
                relators.append([int(tok) for tok in line.split()])
    if n is None:
        raise ValueError("empty presentation file")
    return Presentation(n, relators)


def presentation_to_text(P: Presentation) -> str:
    lines = [f"generators {P.n_generators}"]
    for w in P.relators:
        lines.append("1" if not w else " ".join(f"{x:+d}" for x in w))
    return "\n".join(lines) + "\n"
