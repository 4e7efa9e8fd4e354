"""Explicit projection families for eigenvalue chains and the continuous series."""

import itertools
import json
import math

import numpy as np

from .chain import ESCAPED
from .poset import CATALOG, Poset, decompose, is_isomorphic
from .poset import dual as dual_poset
from .spectrum import (CONTINUOUS, DEFAULT_TOL, DISCRETE, Character,
                       membership, restore_epsilon)

PLUS = "plus"
MINUS = "minus"


class BuilderError(ValueError):
    pass


class TauOutOfRange(BuilderError):
    pass


class DeltaUnsolvable(BuilderError):
    pass


class AmbiguousDelta(BuilderError):
    pass


class ChainShapeMismatch(BuilderError):
    pass


class SumNotTwo(BuilderError):
    pass


class COutOfRange(BuilderError):
    pass


class SumNotExceedingOne(BuilderError):
    pass


class BasicPairParams:

    def __init__(self, tau, sign=PLUS):
        if sign not in (PLUS, MINUS):
            raise BuilderError("sign must be %r or %r" % (PLUS, MINUS))
        self.tau = tau
        self.sign = sign


def basic_pair(params):
    """Rank-one 2x2 projection with diagonal offset tau.

    The minus sign flips the off-diagonal entry, so a plus/minus pair with
    the same tau has a diagonal weighted sum. The offset may be negative:
    block parameters sweep the whole open interval (-1, 1).
    """
    tau = params.tau
    if not -1.0 < tau < 1.0:
        raise TauOutOfRange("tau = %r is not interior to (-1, 1)" % (tau,))
    off = math.sqrt(1.0 - tau * tau) / 2.0
    if params.sign == MINUS:
        off = -off
    return np.array([[(1.0 + tau) / 2.0, off], [off, (1.0 - tau) / 2.0]])


class ProjectionFamily:
    """Projection matrices indexed by poset elements, with their character.

    split records the two one-parameter parts the family was built from,
    as a pair of element tuples; block_params the 2x2 offsets per layer.
    """

    def __init__(self, poset, character, projections, split=None, block_params=None):
        self.poset = poset
        self.character = character
        self.projections = {g: np.asarray(m) for g, m in projections.items()}
        first = next(iter(self.projections.values()))
        self.dimension = first.shape[0]
        self.split = split
        self.block_params = block_params or {}

    def weighted_sum(self, elements=None):
        if elements is None:
            elements = self.poset.elements
        total = np.zeros((self.dimension, self.dimension), dtype=complex)
        for g in elements:
            total = total + self.character[g] * self.projections[g]
        return total

    def to_json(self):
        doc = {"dimension": int(self.dimension),
               "projections": {g: [[[float(np.real(x)), float(np.imag(x))] for x in row]
                                   for row in np.asarray(m, dtype=complex)]
                               for g, m in self.projections.items()},
               "character": {"weights": self.character.weights}}
        return json.dumps(doc)

    @classmethod
    def from_json(cls, text, poset, split=None):
        doc = json.loads(text)
        projections = {}
        for g, rows in doc["projections"].items():
            m = np.array([[complex(re, im) for re, im in row] for row in rows])
            projections[g] = m.real if np.all(m.imag == 0) else m
        return cls(poset, Character(doc["character"]["weights"]), projections, split)


def _layout(values, delta, tol):
    """Split chain coordinates into discrete singletons and reflection pairs."""
    singles, blocks = [], []
    i = 0
    while i < len(values):
        if membership(delta, values[i], tol) == DISCRETE:
            singles.append(i)
            i += 1
            continue
        if i + 1 == len(values) or membership(delta, values[i + 1], tol) != CONTINUOUS:
            raise BuilderError("continuous value %r at position %d has no reflection partner"
                               % (values[i], i))
        if abs(values[i] + values[i + 1] - delta.sigma) > 1e-6:
            raise BuilderError("values %r, %r do not reflect about sigma/2"
                               % (values[i], values[i + 1]))
        blocks.append((i, i + 1))
        i += 2
    return singles, blocks


class _PartPlan:
    """Per-layer assembly data: pair block offsets and singleton branch choices."""

    def __init__(self, part, chi, delta, values, tol):
        self.part = part
        self.chi = chi
        dec = decompose(part)
        self.pair = dec.blocks[dec.pair_index] if dec.pair_index is not None else None
        self.singles, self.blocks = _layout(values, delta, tol)
        if self.blocks and self.pair is None:
            raise BuilderError("part %r has no incomparable pair for continuous values"
                               % (list(part.elements),))
        self.params = [restore_epsilon(delta, values[i], tol) for i, _ in self.blocks]
        self.choices = {}
        for i in self.singles:
            fits = [u for u in part.up_sets()
                    if abs(sum(chi[g] for g in u) - values[i]) <= 10 * tol]
            if not fits:
                raise DeltaUnsolvable("no up-set of %r has weight %r"
                                      % (list(part.elements), values[i]))
            self.choices[i] = fits

    def branches(self):
        keys = list(self.singles)
        for combo in itertools.product(*(self.choices[i] for i in keys)):
            yield dict(zip(keys, combo))

    def matrix(self, g, branch, n):
        m = np.zeros((n, n))
        for (i, j), (e1, e2) in zip(self.blocks, self.params):
            if g == self.pair[0]:
                m[i:j + 1, i:j + 1] = basic_pair(BasicPairParams(e1, PLUS))
            elif g == self.pair[1]:
                m[i:j + 1, i:j + 1] = basic_pair(BasicPairParams(e2, MINUS))
            elif self.part.less(self.pair[0], g):
                m[i, i] = m[j, j] = 1.0
        for i in self.singles:
            if g in branch[i]:
                m[i, i] = 1.0
        return m


def disjoint_union(p1, p2):
    shared = set(p1.elements) & set(p2.elements)
    if shared:
        raise BuilderError("parts share elements %r" % (sorted(shared),))
    return Poset(p1.elements + p2.elements, list(p1.relations) + list(p2.relations))


def build_from_chain(chain, tol=DEFAULT_TOL):
    """Assemble every projection family realizing a terminated chain.

    The list holds one family per combination of admissible up-set choices
    at the discrete coordinates; equal pair weights typically give two.
    """
    ctx = chain.context
    if ctx is None:
        raise BuilderError("chain carries no context")
    if chain.termination == ESCAPED:
        raise BuilderError("an escaped chain admits no representation")
    n = chain.dimension
    plan1 = _PartPlan(ctx.part1, ctx.chi1, ctx.delta1, chain.lambdas, tol)
    plan2 = _PartPlan(ctx.part2, ctx.chi2, ctx.delta2, chain.mus, tol)
    full = disjoint_union(ctx.part1, ctx.part2)
    character = Character(dict(ctx.chi1.weights, **ctx.chi2.weights))
    split = (ctx.part1.elements, ctx.part2.elements)
    block_params = {"p": [e for e, _ in plan1.params], "q": [e for _, e in plan1.params],
                    "r": [e for e, _ in plan2.params], "s": [e for _, e in plan2.params]}
    families = []
    for br1 in plan1.branches():
        for br2 in plan2.branches():
            projections = {}
            for g in ctx.part1.elements:
                projections[g] = plan1.matrix(g, br1, n)
            for g in ctx.part2.elements:
                projections[g] = plan2.matrix(g, br2, n)
            families.append(ProjectionFamily(full, character, projections,
                                             split, dict(block_params)))
    return families


def _bare_pair(part):
    return len(part.elements) == 2 and not part.relations


def build_quadruple(chain, alphas, tol=DEFAULT_TOL):
    """Families over the four incomparable elements; list covers the delta branches."""
    ctx = chain.context
    if ctx is None or not (_bare_pair(ctx.part1) and _bare_pair(ctx.part2)):
        raise BuilderError("chain context is not a pair of bare incomparable pairs")
    expected = [ctx.chi1[g] for g in ctx.part1.elements]
    expected += [ctx.chi2[g] for g in ctx.part2.elements]
    if len(alphas) != 4 or any(abs(a - e) > tol for a, e in zip(alphas, expected)):
        raise BuilderError("alphas %r do not match the chain context weights %r"
                           % (list(alphas), expected))
    return build_from_chain(chain, tol)


def build_quadruple_continuous(alphas, c, gamma, tol=DEFAULT_TOL):
    """Two-dimensional family of the zero-step continuous series.

    The sum of the four weights must be two; c is the common offset of the
    two layer spectra from their centers, gamma the relative phase on the
    second layer.
    """
    a1, a2, a3, a4 = [float(a) for a in alphas]
    if abs(a1 + a2 + a3 + a4 - 2.0) > tol:
        raise SumNotTwo("weights sum to %r, need 2" % (a1 + a2 + a3 + a4,))
    lo = max(abs(a1 - a2), abs(a3 - a4)) / 2.0
    hi = min(a1 + a2, a3 + a4) / 2.0
    if not lo + tol < c < hi - tol:
        raise COutOfRange("c = %r is outside (%r, %r)" % (c, lo, hi))
    gamma = complex(gamma)
    if abs(abs(gamma) - 1.0) > tol:
        raise BuilderError("gamma = %r is not unimodular" % (gamma,))

    lams = [(a1 * a1 - a2 * a2 + 4 * c * c) / (4 * c * a1),
            (a2 * a2 - a1 * a1 + 4 * c * c) / (4 * c * a2),
            (a3 * a3 - a4 * a4 + 4 * c * c) / (4 * c * a3),
            (a4 * a4 - a3 * a3 + 4 * c * c) / (4 * c * a4)]
    offs = [math.sqrt(1.0 - l * l) / 2.0 for l in lams]
    dtype = float if gamma.imag == 0 else complex
    phase = gamma if dtype is complex else gamma.real

    def mat(l, off):
        return np.array([[(1 + l) / 2.0, off], [np.conj(off), (1 - l) / 2.0]], dtype=dtype)

    # the second layer flips its diagonal so the two layer sums add to I
    projections = {"g1": mat(lams[0], offs[0]),
                   "g2": mat(lams[1], -offs[1]),
                   "g3": mat(-lams[2], phase * offs[2]),
                   "g4": mat(-lams[3], -phase * offs[3])}
    poset = Poset(["g1", "g2", "g3", "g4"], [])
    character = Character(dict(zip(["g1", "g2", "g3", "g4"], alphas)))
    return ProjectionFamily(poset, character, projections,
                            split=(("g1", "g2"), ("g3", "g4")))


def _top_singleton_weights(part, chi):
    "weights of the singleton blocks above the pair, bottom-to-top"
    dec = decompose(part)
    return [chi[b[0]] for b in dec.blocks[dec.pair_index + 1:]]


def lift_to_catalog(base, target, chain, tol=DEFAULT_TOL):
    """Extend a chain family to the named catalog poset.

    The chain must come from a context whose parts union to the target
    poset. base, when given, selects matching branches by comparing the
    shared projections; pass None to keep every branch.
    """
    ctx = chain.context
    if ctx is None:
        raise BuilderError("chain carries no context")
    if target not in ("a2", "a4", "a6"):
        raise BuilderError("unknown lift target %r" % (target,))
    full = disjoint_union(ctx.part1, ctx.part2)
    if not is_isomorphic(full, CATALOG[target]):
        raise BuilderError("chain context does not form the %s poset" % (target,))

    slack = 10 * tol
    last_lam, last_mu = chain.lambdas[-1], chain.mus[-1]
    d1, d2 = ctx.delta1, ctx.delta2
    a1, a2 = d1.pair_weights
    a3, a4 = d2.pair_weights
    tops1 = _top_singleton_weights(ctx.part1, ctx.chi1)
    if target == "a2":
        a5 = tops1[0]
        ok = (chain.termination == "DiscreteInDelta1"
              and any(abs(last_lam - v) <= slack for v in (a5, a1 + a5, a2 + a5)))
        ok = ok or (chain.termination == "DiscreteInDelta2"
                    and any(abs(last_mu - v) <= slack for v in (0.0, a3, a4)))
    elif target == "a4":
        ok = chain.termination == "DiscreteInDelta2" and abs(last_mu) <= slack
    else:
        a6 = tops1[-1]
        ok = chain.termination == "DiscreteInDelta1" and abs(last_lam - a6) <= slack
    if not ok:
        raise ChainShapeMismatch("chain ends (%r, %r, %s); not a %s shape"
                                 % (last_lam, last_mu, chain.termination, target))

    families = build_from_chain(chain, tol)
    if base is None:
        return families
    matched = [fam for fam in families
               if all(np.max(np.abs(fam.projections[g] - base.projections[g])) <= 1e-8
                      for g in base.projections if g in fam.projections)]
    if not matched:
        raise BuilderError("base family matches no branch of the lift")
    return matched


def dualize(fam, tol=DEFAULT_TOL):
    """Complementary family on the dual poset; involutive on its domain."""
    total = fam.character.total
    if total <= 1.0 + tol:
        raise SumNotExceedingOne("character total %r must exceed one" % (total,))
    scale = 1.0 / (total - 1.0)
    eye = np.eye(fam.dimension)
    projections = {g: eye - p for g, p in fam.projections.items()}
    character = Character({g: w * scale for g, w in fam.character.weights.items()})
    return ProjectionFamily(dual_poset(fam.poset), character, projections, split=fam.split)
