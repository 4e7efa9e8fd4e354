"""Numerical existence oracle independent of the constructive route."""

import itertools
import json

import numpy as np

from .builder import ProjectionFamily, disjoint_union
from .chain import (NoRepresentation, enumerate_irreducibles, lambda_zero_case,
                    make_context, run_degeneracy_filter)
from .spectrum import CONTINUOUS, DEFAULT_TOL, Character, membership
from .verify import check_all

ACCEPT_TOL = 1e-10
PROFILE_SLACK = 1e-6
STALL_WINDOW = 50
STALL_FACTOR = 0.7
ANDERSON_MEMORY = 5
GRADIENT_STEPS = 25
GRADIENT_RATE = 0.05


class OracleError(ValueError):
    pass


class SearchConfig:

    def __init__(self, dimension, restarts=64, max_iterations=5000,
                 step_tol=1e-13, seed=0, rank_profile=None):
        if dimension < 1:
            raise OracleError("dimension must be positive")
        if restarts < 1 or max_iterations < 1:
            raise OracleError("restarts and max_iterations must be positive")
        self.dimension = int(dimension)
        self.restarts = int(restarts)
        self.max_iterations = int(max_iterations)
        self.step_tol = float(step_tol)
        self.seed = int(seed)
        self.rank_profile = None if rank_profile is None else tuple(rank_profile)

    def replace(self, **kwargs):
        fields = {"dimension": self.dimension, "restarts": self.restarts,
                  "max_iterations": self.max_iterations,
                  "step_tol": self.step_tol, "seed": self.seed,
                  "rank_profile": self.rank_profile}
        fields.update(kwargs)
        return SearchConfig(**fields)

    def to_json(self):
        return json.dumps({"dimension": self.dimension,
                           "restarts": self.restarts,
                           "max_iterations": self.max_iterations,
                           "step_tol": self.step_tol,
                           "seed": self.seed,
                           "rank_profile": self.rank_profile})


def enumerate_dim1(p, chi, tol=DEFAULT_TOL):
    """All 0/1 solutions: indicator vectors of up-sets with unit weight."""
    out = []
    for u in p.up_sets():
        if abs(sum(chi[g] for g in u) - 1.0) <= tol:
            out.append(tuple(1 if g in u else 0 for g in p.elements))
    return sorted(out)


def rank_profiles(p, chi, dimension):
    """Monotone rank tuples with the exact weighted trace.

    trace(sum alpha_g P_g) = dimension holds exactly for any family, so
    sum alpha_g rank(P_g) must equal the dimension up to verifier noise;
    everything else cannot carry a representation and is pruned.
    """
    els = p.elements
    k = len(els)
    idx = {g: i for i, g in enumerate(els)}
    axes = [np.arange(dimension + 1)] * k
    grid = np.stack([a.ravel() for a in np.meshgrid(*axes, indexing="ij")],
                    axis=1)
    slack = np.abs(grid @ np.array([chi[g] for g in els]) - dimension)
    keep = slack <= PROFILE_SLACK
    for g, h in p.relations:
        keep &= grid[:, idx[g]] <= grid[:, idx[h]]
    grid, slack = grid[keep], slack[keep]
    order = np.lexsort(tuple(grid[:, i] for i in range(k - 1, -1, -1))
                       + (slack,))
    return [tuple(int(r) for r in row) for row in grid[order]]


def _random_projection(rng, n, rank):
    if rank == 0:
        return np.zeros((n, n), dtype=complex)
    if rank == n:
        return np.eye(n, dtype=complex)
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q = np.linalg.qr(z)[0][:, :rank]
    return q @ q.conj().T


def _round_rank(m, rank):
    # nearest projection of the prescribed rank to a Hermitian matrix
    n = m.shape[0]
    if rank == 0:
        return np.zeros((n, n), dtype=complex)
    if rank == n:
        return np.eye(n, dtype=complex)
    v = np.linalg.eigh((m + m.conj().T) / 2.0)[1][:, n - rank:]
    return v @ v.conj().T


def _residual(p, alpha, proj, eye):
    r = _max_abs(sum(alpha[g] * proj[g] for g in p.elements) - eye)
    for g in p.elements:
        r = max(r, _max_abs(proj[g] @ proj[g] - proj[g]))
    for g, h in p.relations:
        r = max(r, _max_abs(proj[g] @ proj[h] - proj[g]))
    return r


def _max_abs(m):
    return float(np.max(np.abs(m)))


def _flatten(els, proj):
    return np.concatenate([proj[g].ravel() for g in els]).view(float)


def _unflatten(els, vec, n):
    cells = vec.view(complex)
    out = {}
    for i, g in enumerate(els):
        m = cells[i * n * n:(i + 1) * n * n].reshape(n, n)
        out[g] = (m + m.conj().T) / 2.0
    return out


def _gradient_burst(p, alpha, proj, eye):
    # penalized descent on the summed squared residuals; used to leave stalls
    for _ in range(GRADIENT_STEPS):
        resid = sum(alpha[g] * proj[g] for g in p.elements) - eye
        grad = {}
        for g in p.elements:
            x = proj[g]
            e = x @ x - x
            grad[g] = 2.0 * alpha[g] * resid + 2.0 * (x @ e + e @ x - e)
        for g, h in p.relations:
            o = proj[g] @ proj[h] - proj[g]
            shift = proj[h] - eye
            grad[g] += shift @ o.conj().T + o @ shift
            grad[h] += o.conj().T @ proj[g] + proj[g] @ o
        for g in p.elements:
            step = proj[g] - GRADIENT_RATE * grad[g]
            proj[g] = (step + step.conj().T) / 2.0


def _search_once(p, chi, ranks, rng, cfg):
    els = p.elements
    n = cfg.dimension
    alpha = {g: chi[g] for g in els}
    denom = sum(a * a for a in alpha.values())
    eye = np.eye(n, dtype=complex)
    parents = {g: sorted(h for gg, h in p.hasse if gg == g) for g in els}
    # maximal elements first so children are squeezed into settled parents
    order = sorted(els, key=lambda g: -len(p.up_set(g)))

    def sweep(proj):
        correction = sum(alpha[g] * proj[g] for g in els) - eye
        out = {g: proj[g] - (alpha[g] / denom) * correction for g in els}
        for g in order:
            m = out[g]
            for h in parents[g]:
                m = out[h] @ m @ out[h]
            out[g] = _round_rank(m, ranks[g])
        return out

    x = _flatten(els, {g: _random_projection(rng, n, ranks[g]) for g in els})
    steps_x, steps_f, x_prev, f_prev = [], [], None, None
    burst_used = False
    prev_window = np.inf
    swept = None
    for it in range(cfg.max_iterations):
        swept = sweep(_unflatten(els, x, n))
        res = _residual(p, alpha, swept, eye)
        if res <= ACCEPT_TOL:
            break
        image = _flatten(els, swept)
        f = image - x
        if _max_abs(f) < cfg.step_tol:
            break
        if (it + 1) % STALL_WINDOW == 0:
            if res > STALL_FACTOR * prev_window:
                # plateau: projections are cycling around an infeasible profile
                if burst_used:
                    return None
                _gradient_burst(p, alpha, swept, eye)
                x = _flatten(els, swept)
                steps_x, steps_f, x_prev, f_prev = [], [], None, None
                burst_used = True
                prev_window = np.inf
                continue
            prev_window = res
        if f_prev is not None:
            steps_x.append(x - x_prev)
            steps_f.append(f - f_prev)
            if len(steps_x) > ANDERSON_MEMORY:
                steps_x.pop(0)
                steps_f.pop(0)
        x_prev, f_prev = x, f
        if steps_f:
            # extrapolate through the recent steps, keep only if it helps
            basis = np.stack(steps_f, axis=1)
            gamma = np.linalg.lstsq(basis, f, rcond=None)[0]
            candidate = image - (np.stack(steps_x, axis=1) + basis) @ gamma
            trial = sweep(_unflatten(els, candidate, n))
            if _residual(p, alpha, trial, eye) < res:
                x = candidate
                continue
            steps_x, steps_f, x_prev, f_prev = [], [], None, None
        x = image
    if swept is None or _residual(p, alpha, swept, eye) > ACCEPT_TOL:
        return None
    return ProjectionFamily(p, chi, dict(swept))


def search_numeric(p, chi, cfg, require_irreducible=False):
    """First family found by rank-profile sweeps of alternating projections."""
    for g in p.elements:
        if g not in chi:
            raise OracleError("missing weight for %r" % (g,))
    if cfg.rank_profile is not None:
        profiles = [cfg.rank_profile]
    else:
        profiles = rank_profiles(p, chi, cfg.dimension)
    for restart in range(cfg.restarts):
        for pidx, ranks in enumerate(profiles):
            rng = np.random.default_rng([cfg.seed, pidx, restart])
            fam = _search_once(p, chi, dict(zip(p.elements, ranks)), rng, cfg)
            if fam is None:
                continue
            report = check_all(fam, ACCEPT_TOL)
            if not report.passed:
                continue
            if require_irreducible and not report.irreducible:
                continue
            return fam
    return None


class CrossValidation:

    def __init__(self, rows, config):
        self.rows = list(rows)
        self.config = config
        self.agree = all(r["agree"] for r in self.rows)

    def to_json(self):
        return json.dumps({"rows": self.rows,
                           "config": json.loads(self.config.to_json()),
                           "agree": self.agree})


def _theory_spectra(ctx, tol):
    # dimension -> list of sorted layer-one spectra predicted by the chains;
    # a key present with an empty list marks the purely continuous series
    spectra = {}
    if abs(ctx.lambda_cap) <= tol:
        fam = lambda_zero_case(ctx)
        if fam.one_dim:
            spectra[1] = [[v] for v in fam.one_dim]
        two = [sorted(ch.lambdas) for ch in fam.two_dim]
        if fam.c_interval is not None or two:
            spectra[2] = two
    else:
        for ch in enumerate_irreducibles(ctx):
            spectra.setdefault(ch.dimension, []).append(sorted(ch.lambdas))
    return spectra


def _spectrum_matched(ctx, eigs, predicted, tol):
    for spec in predicted:
        if np.allclose(eigs, spec, atol=tol, rtol=0.0):
            return True
    if len(eigs) == 2 and abs(ctx.lambda_cap) <= ctx.tol:
        # continuous two-parameter series: a reflection pair inside Delta_1
        if abs(eigs[0] + eigs[1] - ctx.sigma1) > tol:
            return False
        return all(membership(ctx.delta1, v, ctx.tol) == CONTINUOUS
                   for v in eigs)
    return False


def cross_validate(p1, chi1, p2, chi2, dims, cfg, tol=DEFAULT_TOL,
                   spectrum_tol=1e-6):
    """Compare chain predictions with blind numerical search, per dimension."""
    union = disjoint_union(p1, p2)
    weights = {g: chi1[g] for g in p1.elements}
    weights.update({g: chi2[g] for g in p2.elements})
    union_chi = Character(weights)
    try:
        forced, _ = run_degeneracy_filter(union_chi, tol)
    except NoRepresentation:
        ctx, spectra = None, {}
    else:
        if forced:
            # degenerate weights pin projections; only scalar solutions remain
            ctx = None
            spectra = {1: []} if enumerate_dim1(union, union_chi, tol) else {}
        else:
            ctx = make_context(p1, chi1, p2, chi2, tol)
            spectra = _theory_spectra(ctx, tol)
    rows = []
    for d in dims:
        predicted = spectra.get(d, [])
        theory = d in spectra
        fam = search_numeric(union, union_chi, cfg.replace(dimension=d),
                             require_irreducible=True)
        found = fam is not None
        matched = None
        if found and ctx is not None:
            eigs = np.sort(np.linalg.eigvalsh(fam.weighted_sum(p1.elements)))
            matched = _spectrum_matched(ctx, eigs, predicted, spectrum_tol)
        rows.append({"dimension": d, "theory": theory, "oracle": found,
                     "agree": theory == found, "spectrum_matched": matched})
    return CrossValidation(rows, cfg)
