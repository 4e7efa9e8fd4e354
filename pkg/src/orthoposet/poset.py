"""Finite posets: validation, classification, chain-block decomposition."""

import itertools
import json

CHAIN_TAME = "ChainTame"
TWO_WIDTH_TAME = "TwoWidthTame"
ONE_PARAMETER = "OneParameter"
WILD = "Wild"


class PosetError(ValueError):
    pass


class NotTame(PosetError):
    pass


class BadSplit(PosetError):
    pass


class Poset:
    """A finite strict partial order on opaque string elements.

    Relations are stored as the transitive closure; the element list
    fixes matrix row ordering downstream.
    """

    def __init__(self, elements, relations=()):
        self.elements = tuple(elements)
        if len(set(self.elements)) != len(self.elements):
            raise PosetError("duplicate elements")
        self._index = {g: i for i, g in enumerate(self.elements)}
        rel = set()
        for g, h in relations:
            if g not in self._index or h not in self._index:
                raise PosetError("relation (%r, %r) mentions an unknown element" % (g, h))
            if g == h:
                raise PosetError("reflexive relation on %r" % (g,))
            rel.add((g, h))
        self.relations = self._close(rel)
        for g, h in self.relations:
            if (h, g) in self.relations:
                raise PosetError("cycle through %r and %r" % (g, h))
        self.hasse = self._reduce(self.relations)

    def _close(self, rel):
        rel = set(rel)
        changed = True
        while changed:
            changed = False
            for (a, b), (c, d) in itertools.product(tuple(rel), repeat=2):
                if b == c and (a, d) not in rel:
                    rel.add((a, d))
                    changed = True
        return frozenset(rel)

    def _reduce(self, rel):
        covers = set()
        for g, h in rel:
            if not any((g, m) in rel and (m, h) in rel for m in self.elements):
                covers.add((g, h))
        return frozenset(covers)

    def less(self, g, h):
        return (g, h) in self.relations

    def comparable(self, g, h):
        return g == h or (g, h) in self.relations or (h, g) in self.relations

    def up_set(self, g):
        return frozenset(h for h in self.elements if (g, h) in self.relations)

    def down_set(self, g):
        return frozenset(h for h in self.elements if (h, g) in self.relations)

    def induced(self, subset):
        keep = [g for g in self.elements if g in set(subset)]
        rel = [(g, h) for g, h in self.relations if g in set(keep) and h in set(keep)]
        return Poset(keep, rel)

    def up_sets(self):
        "all upward-closed subsets, as frozensets"
        result = []
        for bits in itertools.product((0, 1), repeat=len(self.elements)):
            take = frozenset(g for g, b in zip(self.elements, bits) if b)
            if all(h in take for g in take for h in self.up_set(g)):
                result.append(take)
        return result

    def __eq__(self, other):
        return (isinstance(other, Poset) and self.elements == other.elements
                and self.relations == other.relations)

    def __hash__(self):
        return hash((self.elements, self.relations))

    def __repr__(self):
        rel = sorted(self.hasse)
        return "Poset(%r, %r)" % (list(self.elements), rel)

    @classmethod
    def from_json(cls, text):
        doc = json.loads(text)
        try:
            elements = doc["elements"]
            relations = [tuple(pair) for pair in doc.get("relations", [])]
        except (TypeError, KeyError) as exc:
            raise PosetError("poset document needs 'elements' and 'relations'") from exc
        return cls(elements, relations)

    def to_json(self):
        return json.dumps({"elements": list(self.elements),
                           "relations": [list(p) for p in sorted(self.relations)]})


class ChainDecomposition:
    """Blocks of size one or two, listed from poset bottom to top."""

    order_direction = "bottom-to-top"

    def __init__(self, blocks):
        self.blocks = [tuple(b) for b in blocks]
        pairs = [i for i, b in enumerate(self.blocks) if len(b) == 2]
        self.pair_index = pairs[0] if len(pairs) == 1 else None
        self.pair_count = len(pairs)

    def __iter__(self):
        return iter(self.blocks)

    def __len__(self):
        return len(self.blocks)


def width(p):
    "maximum antichain size, by brute force"
    best = 1 if p.elements else 0
    n = len(p.elements)
    for bits in range(1, 1 << n):
        members = [p.elements[i] for i in range(n) if bits >> i & 1]
        if len(members) <= best:
            continue
        if all(not p.comparable(g, h) for g, h in itertools.combinations(members, 2)):
            best = len(members)
    return best


def contains_one_two(p):
    "true iff some element is incomparable to both members of a 2-chain"
    for b, c in p.relations:
        for a in p.elements:
            if a != b and a != c and not p.comparable(a, b) and not p.comparable(a, c):
                return True
    return False


def decompose(p):
    """Split a tame poset into a chain of Singleton and Pair blocks.

    Raises NotTame when no such chain exists (width over 2, or a
    (1,2)-subposet forces an element into two different pairs).
    """
    partner = {}
    for g, h in itertools.combinations(p.elements, 2):
        if not p.comparable(g, h):
            if g in partner or h in partner:
                raise NotTame("element incomparable to two others")
            partner[g] = h
            partner[h] = g
    blocks = []
    used = set()
    for g in p.elements:
        if g in used:
            continue
        if g in partner:
            blocks.append((g, partner[g]))
            used.update(blocks[-1])
        else:
            blocks.append((g,))
            used.add(g)

    def below(b, c):
        return all(p.less(x, y) for x in b for y in c)

    for b, c in itertools.combinations(blocks, 2):
        if not below(b, c) and not below(c, b):
            raise NotTame("blocks %r and %r are not comparable" % (b, c))
    depth = {b: sum(below(c, b) for c in blocks) for b in blocks}
    blocks.sort(key=depth.get)
    return ChainDecomposition(blocks)


def classify(p):
    if width(p) >= 3 or contains_one_two(p):
        return WILD
    if width(p) == 1:
        return CHAIN_TAME
    dec = decompose(p)
    return ONE_PARAMETER if dec.pair_count == 1 else TWO_WIDTH_TAME


def split_two_one_parameter(p, s1_elements):
    """Return the induced subposets on s1_elements and its complement.

    Each part must be one-parameter or a chain; relations between the
    parts stay in p and are checked only on built matrices.
    """
    s1 = set(s1_elements)
    if not s1 <= set(p.elements):
        raise BadSplit("split mentions elements outside the poset")
    s2 = [g for g in p.elements if g not in s1]
    if not s2 or not s1:
        raise BadSplit("both parts must be nonempty")
    parts = (p.induced(s1_elements if isinstance(s1_elements, (list, tuple)) else sorted(s1)),
             p.induced(s2))
    for part in parts:
        if classify(part) not in (ONE_PARAMETER, CHAIN_TAME):
            raise BadSplit("induced part %r is not one-parameter" % (list(part.elements),))
    return parts


def dual(p):
    return Poset(p.elements, [(h, g) for g, h in p.relations])


def is_isomorphic(p, q):
    "brute-force bijection search; meant for small posets"
    if len(p.elements) != len(q.elements) or len(p.relations) != len(q.relations):
        return False

    def profile(r, g):
        return (len(r.up_set(g)), len(r.down_set(g)))

    if sorted(profile(p, g) for g in p.elements) != sorted(profile(q, g) for g in q.elements):
        return False
    for perm in itertools.permutations(q.elements):
        m = dict(zip(p.elements, perm))
        if all((m[g], m[h]) in q.relations for g, h in p.relations):
            return True
    return False


def _catalog():
    four = Poset(["g1", "g2", "g3", "g4"], [])
    a2 = Poset(["g1", "g2", "g3", "g4", "g5"], [("g1", "g5"), ("g2", "g5")])
    a6 = Poset(["g1", "g2", "g3", "g4", "g5", "g6"],
               [("g1", "g5"), ("g2", "g5"), ("g5", "g6")])
    a4 = Poset(["g1", "g2", "g3", "g4", "g5", "g6"],
               [("g1", "g5"), ("g2", "g5"), ("g3", "g6"), ("g4", "g6")])
    return [("(1,1,1,1)", four),
            ("a2", a2), ("a2_dual", dual(a2)),
            ("a6", a6), ("a6_dual", dual(a6)),
            ("a4", a4), ("a4_dual", dual(a4))]


CATALOG = dict(_catalog())

# The pair g1, g2 with one element above, one below, and two loose points.
# Recognized by nothing in CATALOG: it carries no essential representation.
A8 = Poset(["g1", "g2", "g3", "g4", "g5", "g6"],
           [("g1", "g5"), ("g2", "g5"), ("g6", "g1"), ("g6", "g2")])


def essential_catalog_match(p):
    "catalog name if p is order-isomorphic to a catalog member, else None"
    for name, member in _catalog():
        if is_isomorphic(p, member):
            return name
    return None


def generate_posets(n):
    """All posets on n elements, one representative per isomorphism class.

    Every finite poset admits a labeling with g < h only for increasing
    indices, so closing upper-triangular relation sets covers every class;
    duplicates are removed by a minimum-over-relabelings canonical form.
    """
    import numpy as np

    if n == 0:
        return [Poset([])]
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    bit_of = {ij: b for b, ij in enumerate(pairs)}
    closed = set()
    for mask in range(1 << len(pairs)):
        up = [0] * n  # bitmask of strict successors per node
        for b, (i, j) in enumerate(pairs):
            if mask >> b & 1:
                up[i] |= 1 << j
        for i in range(n - 1, -1, -1):
            acc = up[i]
            j = up[i]
            while j:
                low = j & -j
                acc |= up[low.bit_length() - 1]
                j ^= low
            up[i] = acc
        key = 0
        for i in range(n):
            j = up[i]
            while j:
                low = j & -j
                key |= 1 << bit_of[(i, low.bit_length() - 1)]
                j ^= low
        closed.add(key)

    closed = sorted(closed)
    nbits = len(pairs)
    bits = np.zeros((len(closed), nbits), dtype=np.int64)
    for row, key in enumerate(closed):
        for b in range(nbits):
            if key >> b & 1:
                bits[row, b] = 1
    # canonical key: minimum over relabelings of the ordered-pair bitmask
    ordered = [(i, j) for i in range(n) for j in range(n) if i != j]
    pos_of = {ij: b for b, ij in enumerate(ordered)}
    canon = np.full(len(closed), np.iinfo(np.int64).max, dtype=np.int64)
    for perm in itertools.permutations(range(n)):
        w = np.array([1 << pos_of[(perm[i], perm[j])] for i, j in pairs], dtype=np.int64)
        np.minimum(canon, bits @ w, out=canon)
    reps = {}
    for row, key in enumerate(closed):
        reps.setdefault(int(canon[row]), key)
    names = ["e%d" % i for i in range(n)]
    out = []
    for key in sorted(reps.values()):
        rel = [(names[i], names[j]) for b, (i, j) in enumerate(pairs) if key >> b & 1]
        out.append(Poset(names, rel))
    return out
