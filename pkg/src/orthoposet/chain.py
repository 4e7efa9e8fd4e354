"""Interleaved lambda/mu eigenvalue chains: existence and dimension of irreducibles."""

import json
import math

from .spectrum import (CONTINUOUS, DEFAULT_TOL, DISCRETE, OUTSIDE, Character,
                       delta_of, membership, near_boundary)

DISCRETE_IN_DELTA1 = "DiscreteInDelta1"
DISCRETE_IN_DELTA2 = "DiscreteInDelta2"
ESCAPED = "Escaped"
CONTINUOUS_FAMILY = "ContinuousFamily"

DEFAULT_MAX_STEPS = 10000


class ChainEngineError(ValueError):
    pass


class NoRepresentation(ChainEngineError):
    pass


class ZeroLambdaCap(ChainEngineError):
    pass


class NonzeroLambdaCap(ChainEngineError):
    pass


class StepLimit(ChainEngineError):
    pass


class ChainContext:
    """Spectral data of the two one-parameter parts, plus the step constant."""

    def __init__(self, part1, chi1, part2, chi2, tol=DEFAULT_TOL):
        self.part1, self.chi1 = part1, chi1
        self.part2, self.chi2 = part2, chi2
        self.delta1 = delta_of(part1, chi1, tol)
        self.delta2 = delta_of(part2, chi2, tol)
        self.sigma1 = self.delta1.sigma
        self.sigma2 = self.delta2.sigma
        self.lambda_cap = self.sigma1 + self.sigma2 - 2.0
        self.tol = tol

    @property
    def total(self):
        return self.chi1.total + self.chi2.total


def make_context(p1, chi1, p2, chi2, tol=DEFAULT_TOL):
    return ChainContext(p1, chi1, p2, chi2, tol)


class EigenChain:
    """Alternating eigenvalue lists with equal lengths and a termination tag."""

    def __init__(self, lambdas, mus, termination, start_point, context=None,
                 boundary_ambiguous=False):
        self.lambdas = list(lambdas)
        self.mus = list(mus)
        self.termination = termination
        self.start_point = start_point
        self.context = context
        self.boundary_ambiguous = boundary_ambiguous

    @property
    def dimension(self):
        return len(self.lambdas)

    def __repr__(self):
        return "EigenChain(%r, %r, %s)" % (self.lambdas, self.mus, self.termination)

    def to_json(self):
        return json.dumps({"lambda0": self.start_point,
                           "lambdas": self.lambdas,
                           "mus": self.mus,
                           "termination": self.termination,
                           "dimension": self.dimension})


def run_degeneracy_filter(chi, tol=DEFAULT_TOL):
    """Apply the scalar-sum screens; returns (forced assignments, reduced character).

    Forced values: "I" (weight sum exactly one), "0" (weight above one),
    "0|I" (weight exactly one: the projection is scalar in any irreducible).
    """
    if chi.total < 1.0 - tol:
        raise NoRepresentation("total weight %r is below one" % (chi.total,))
    if abs(chi.total - 1.0) <= tol:
        return [(g, "I") for g in chi.weights], Character({})
    forced = []
    remaining = {}
    for g, w in chi.weights.items():
        if w > 1.0 + tol:
            forced.append((g, "0"))
        elif abs(w - 1.0) <= tol:
            forced.append((g, "0|I"))
        else:
            remaining[g] = w
    return forced, Character(remaining)


def run_chain(ctx, lambda0, max_steps=DEFAULT_MAX_STEPS):
    """Iterate the link/reflection recurrence from a discrete starting eigenvalue.

    Link steps (x -> 1 - x) change the constraint set and get membership
    checks; reflection steps (x -> sigma - x) stay inside the same set, so
    a continuous value reflects to a continuous value and needs none.
    """
    tol = ctx.tol
    if abs(ctx.lambda_cap) <= tol:
        raise ZeroLambdaCap("lambda_cap %r is zero within tol" % (ctx.lambda_cap,))
    if membership(ctx.delta1, lambda0, tol) != DISCRETE:
        raise ChainEngineError("lambda0 = %r is not a discrete point of delta1" % (lambda0,))

    def finish(lambdas, mus, termination, ambiguous=False):
        return EigenChain(lambdas, mus, termination, lambda0, ctx, ambiguous)

    lambdas, mus = [lambda0], []
    for _ in range(max_steps):
        mu = 1.0 - lambdas[-1]
        mus.append(mu)
        kind = membership(ctx.delta2, mu, tol)
        if kind == DISCRETE:
            return finish(lambdas, mus, DISCRETE_IN_DELTA2)
        if kind == OUTSIDE:
            return finish(lambdas, mus, ESCAPED, near_boundary(ctx.delta2, mu, 10 * tol))
        mus.append(ctx.sigma2 - mu)
        lam = 1.0 - mus[-1]
        lambdas.append(lam)
        kind = membership(ctx.delta1, lam, tol)
        if kind == DISCRETE:
            return finish(lambdas, mus, DISCRETE_IN_DELTA1)
        if kind == OUTSIDE:
            return finish(lambdas, mus, ESCAPED, near_boundary(ctx.delta1, lam, 10 * tol))
        lambdas.append(ctx.sigma1 - lam)
    raise StepLimit("no termination within %d steps" % (max_steps,))


class TwoPointFamily:
    """Description of the lambda_cap = 0 representations.

    one_dim lists the admissible lambda0 values; two_dim the length-2 chains
    with one diagonal layer discrete and the other a continuous pair block;
    c_interval is the open range of the center offset for the fully
    continuous two-dimensional series (None when absent).
    """

    def __init__(self, sigma1, sigma2, one_dim, two_dim, c_interval, context):
        self.sigma1 = sigma1
        self.sigma2 = sigma2
        self.one_dim = list(one_dim)
        self.two_dim = list(two_dim)
        self.c_interval = c_interval
        self.context = context

    def to_json(self):
        return json.dumps({"sigma1": self.sigma1, "sigma2": self.sigma2,
                           "one_dim": self.one_dim,
                           "two_dim": [json.loads(ch.to_json()) for ch in self.two_dim],
                           "c_interval": list(self.c_interval) if self.c_interval else None})


def lambda_zero_case(ctx):
    """Describe the two-point spectrum families when lambda_cap = 0."""
    tol = ctx.tol
    if abs(ctx.lambda_cap) > tol:
        raise NonzeroLambdaCap("lambda_cap %r is not zero" % (ctx.lambda_cap,))
    one_dim, two_dim = [], []
    for lam0 in ctx.delta1.discrete:
        mu0 = 1.0 - lam0
        kind = membership(ctx.delta2, mu0, tol)
        if kind == DISCRETE:
            one_dim.append(lam0)
        elif kind == CONTINUOUS:
            lam1 = ctx.sigma1 - lam0
            if membership(ctx.delta1, lam1, tol) == DISCRETE:
                two_dim.append(EigenChain([lam0, lam1], [mu0, ctx.sigma2 - mu0],
                                          DISCRETE_IN_DELTA1, lam0, ctx))
    for mu0 in ctx.delta2.discrete:
        lam0 = 1.0 - mu0
        if membership(ctx.delta1, lam0, tol) != CONTINUOUS:
            continue
        mu1 = ctx.sigma2 - mu0
        if membership(ctx.delta2, mu1, tol) == DISCRETE:
            two_dim.append(EigenChain([lam0, ctx.sigma1 - lam0], [mu0, mu1],
                                      DISCRETE_IN_DELTA2, lam0, ctx))

    c_interval = None
    a1, a2 = ctx.delta1.pair_weights
    a3, a4 = ctx.delta2.pair_weights
    if a2 > 0 and a4 > 0:
        lo = max(abs(a1 - a2), abs(a3 - a4)) / 2.0
        hi = min(a1 + a2, a3 + a4) / 2.0
        if hi - lo > tol:
            c_interval = (lo, hi)
    return TwoPointFamily(ctx.sigma1, ctx.sigma2, one_dim, two_dim, c_interval, ctx)


def enumerate_irreducibles(ctx, max_steps=DEFAULT_MAX_STEPS):
    """All terminating chains from discrete starting points, reversals merged."""
    if abs(ctx.lambda_cap) <= ctx.tol:
        raise ZeroLambdaCap("use lambda_zero_case")
    kept = []
    for lam0 in ctx.delta1.discrete:
        chain = run_chain(ctx, lam0, max_steps)
        if chain.termination == ESCAPED:
            continue
        if any(_is_reversal(chain, other, ctx.tol) for other in kept):
            continue
        kept.append(chain)
    kept.sort(key=lambda ch: ch.start_point)
    return kept


def _is_reversal(a, b, tol):
    # the same representation is reached from either discrete end of the chain
    if a.dimension != b.dimension or a.termination != b.termination:
        return False
    slack = 10 * tol
    return (abs(a.lambdas[0] - b.lambdas[-1]) <= slack
            and abs(a.lambdas[-1] - b.lambdas[0]) <= slack)


def dimension_bound(ctx):
    """Upper bound for the length of a chain started at lambda0 = 0.

    A negative step constant is handled through the dual problem, whose
    step constant is -lambda_cap/(total - 1).
    """
    cap = ctx.lambda_cap
    if abs(cap) <= ctx.tol:
        return 2
    if cap < 0:
        if ctx.total <= 1.0 + ctx.tol:
            return None
        cap = -cap / (ctx.total - 1.0)
    return int(math.floor(1.0 / cap + 1.0 + 1e-9))
