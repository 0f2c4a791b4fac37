"""
Experiment drivers. Each driver returns plain row dicts (or a report) keyed
by the column names in ``harness.reports.HEADERS``; writing them out is left
to ``harness.reports``.
"""
import logging

import numpy as np

from abelian_eq.models import SAT, UNKNOWN, AbelianSpace
from abelian_eq.utils import (
    brute_force_count,
    count_sat_ball,
    density_sat,
    limit_density,
    one_var_residual,
    sat_mask,
)
from core.exceptions import PreconditionError
from numtheory.utils import mobius_sieve, partial_zeta, zeta
from pcgroup.models import EquationSpace
from sat_tests.utils import classify
from .models import BracketReport, DensityEstimate
from .sampling import mc_tally
from .utils import resolve_space

logger = logging.getLogger(__name__)


def _check_grid(r_grid):
    r_grid = [int(r) for r in r_grid]
    if not r_grid or min(r_grid) < 0:
        raise PreconditionError(f"radius grid must be nonempty and nonnegative, got {r_grid}")
    return r_grid


def run_abelian_convergence(k, m, r_grid, eps=None):
    """Exact satisfiable density against zeta(k+m)/zeta(k) along the grid."""
    r_grid = _check_grid(r_grid)
    limit = limit_density(k, m, eps)
    table = mobius_sieve(max(r_grid)) if k > 1 and max(r_grid) > 0 else None
    rows = []
    for r in r_grid:
        count = count_sat_ball(k, m, r, table)
        density = count / (2 * r + 1) ** (k + m)
        rows.append(
            {
                "r": r,
                "count": count,
                "density": density,
                "limit": limit,
                "residual": abs(density - limit),
            }
        )
        logger.info("abelian k=%d m=%d r=%d: density %.9g", k, m, r, density)
    return rows


def run_one_var(m, r_grid):
    """One-variable density next to its Z_r(m)/r model."""
    r_grid = _check_grid(r_grid)
    if min(r_grid) < 1:
        raise PreconditionError("one-variable runs need r >= 1")
    rows = []
    for r in r_grid:
        residual, scale = one_var_residual(m, r)
        rows.append(
            {
                "r": r,
                "density": density_sat(1, m, r),
                "model": partial_zeta(r, m) / r,
                "residual": residual,
                "scale": scale,
            }
        )
        logger.info("one-var m=%d r=%d", m, r)
    return rows


def run_abelian_bruteforce(cases, threads=None, budget=None):
    """
    Exhaustive counts next to the exact formula.

    Args:
        cases (list[tuple]): ``(k, m, r)`` triples.
    """
    rows = []
    for k, m, r in cases:
        brute = brute_force_count(k, m, r, budget=budget, threads=threads or 1)
        exact = count_sat_ball(k, m, r)
        rows.append(
            {
                "k": k,
                "m": m,
                "r": r,
                "bruteforce_count": brute,
                "exact_count": exact,
                "match": brute == exact,
            }
        )
        logger.info("brute force k=%d m=%d r=%d: %d vs %d", k, m, r, brute, exact)
    return rows


def run_abelian_mc(k, m, r_grid, n_samples, seed, threads=None, eps=None):
    """Monte Carlo satisfiable frequency with its exact value and limit."""
    r_grid = _check_grid(r_grid)
    space = AbelianSpace(k, m)
    limit = limit_density(k, m, eps)

    def tally(rows):
        return (int(sat_mask(rows[:, :k], rows[:, k:]).sum()),)

    report = []
    for r in r_grid:
        (hits,) = mc_tally(space, r, n_samples, seed, tally, threads)
        estimate = DensityEstimate.from_counts(hits, n_samples, seed, r)
        report.append(
            {
                "r": r,
                "samples": n_samples,
                "hits": hits,
                "point": estimate.point,
                "ci_low": estimate.ci_low,
                "ci_high": estimate.ci_high,
                "exact": density_sat(k, m, r),
                "limit": limit,
            }
        )
    return report


def bracket_limits(space, eps=None):
    """
    (lower, upper) limits of the satisfiable density of G with k variables:
    zeta(k+h)/(t zeta(k)) and zeta(k+m)/zeta(k), where h is the Hirsch
    length, t the torsion order and m the torsion-free abelian rank of G.
    A single variable gives a negligible set unless G/[G,G] is finite.
    """
    info = space.group.summary()
    k = space.k
    if k == 1:
        return 0.0, 0.0 if info.abelian_rank else 1.0
    zeta_k = zeta(k, eps)
    lower = zeta(k + info.hirsch, eps) / (info.torsion_order * zeta_k)
    upper = zeta(k + info.abelian_rank, eps) / zeta_k
    return lower, upper


def _abelian_columns(space):
    return [
        space.k + p
        for p, entry in enumerate(space.tail)
        if entry.in_g and entry.weight == 1 and entry.order is None
    ]


def run_nilpotent_bracket(
    group, k, r, n_samples, seed, brute_force_radius=None, threads=None, eps=None
):
    """
    Sample equations of B_r over G, classify them and bracket the frequencies.

    ``group`` is a group spec string, a presentation, or a ready equation
    space (then ``k`` must match its variable count). Abelian-unsolvable
    samples are UNSAT without running the classifier.
    """
    space = group if isinstance(group, EquationSpace) else resolve_space(group, k)
    if space.k != k:
        raise PreconditionError(f"equation space has {space.k} variables, asked for {k}")
    lower, upper = bracket_limits(space, eps)
    columns = _abelian_columns(space)

    def tally(rows):
        solvable = sat_mask(rows[:, : space.k], rows[:, columns])
        sat = unknown = 0
        for row in rows[solvable].tolist():
            verdict = classify(
                space,
                space.equation_from_coordinates(row),
                brute_force_radius=brute_force_radius,
            )
            if verdict.status == SAT:
                sat += 1
            elif verdict.status == UNKNOWN:
                unknown += 1
        return sat, int(np.count_nonzero(solvable)), unknown

    sat, solvable, unknown = mc_tally(space, r, n_samples, seed, tally, threads)
    logger.info(
        "bracket r=%d: %d certified, %d abelian-solvable, %d unknown of %d",
        r,
        sat,
        solvable,
        unknown,
        n_samples,
    )
    return BracketReport(
        r=r,
        samples=n_samples,
        sat_certified_fraction=DensityEstimate.from_counts(sat, n_samples, seed, r),
        abelian_solvable_fraction=DensityEstimate.from_counts(solvable, n_samples, seed, r),
        unknown_fraction=unknown / n_samples,
        lower_limit=lower,
        upper_limit=upper,
    )


def bracket_row(report):
    sat = report.sat_certified_fraction
    ab = report.abelian_solvable_fraction
    return {
        "r": report.r,
        "samples": report.samples,
        "sat_lo": sat.ci_low,
        "sat_pt": sat.point,
        "sat_hi": sat.ci_high,
        "ab_lo": ab.ci_low,
        "ab_pt": ab.point,
        "ab_hi": ab.ci_high,
        "unknown": report.unknown_fraction,
        "lower_limit": report.lower_limit,
        "upper_limit": report.upper_limit,
    }


def run_nilpotent_mc(
    group, k, r_grid, n_samples, seed, brute_force_radius=None, threads=None, eps=None
):
    r_grid = _check_grid(r_grid)
    space = group if isinstance(group, EquationSpace) else resolve_space(group, k)
    return [
        bracket_row(
            run_nilpotent_bracket(
                space, k, r, n_samples, seed, brute_force_radius, threads, eps
            )
        )
        for r in r_grid
    ]


def run_zeta(s_values, eps=None):
    return [{"s": int(s), "value": zeta(s, eps)} for s in s_values]
