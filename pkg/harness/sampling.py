"""
Uniform sampling from norm balls and seeded Monte Carlo tallies.

Samples are drawn in batches of ``NILSAT_BATCH_SIZE`` rows. Batch i uses the
generator ``default_rng(SeedSequence([seed, i]))``, so a run is fixed by the
master seed and the batch size alone; the number of worker threads only
changes which thread draws a batch, never what it draws.
"""
import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from django.conf import settings

from core.exceptions import PreconditionError
from .models import DensityEstimate

logger = logging.getLogger(__name__)


def coordinate_bounds(orders, r):
    """Inclusive bounds per coordinate: [-r, r], or {0 .. min(order-1, r)}."""
    low = np.array([-r if order is None else 0 for order in orders], dtype=np.int64)
    high = np.array(
        [r if order is None else min(order - 1, r) for order in orders], dtype=np.int64
    )
    return low, high


def sample_coordinates(orders, r, size, rng):
    """``size`` uniform rows of the ball of radius r, as an int64 array."""
    if r < 0:
        raise PreconditionError(f"radius must be nonnegative, got {r}")
    low, high = coordinate_bounds(orders, r)
    return rng.integers(low, high + 1, size=(size, len(orders)), dtype=np.int64)


def sample_equation(space, r, rng):
    """One uniform equation of the ball B_r of an equation space."""
    row = sample_coordinates(space.coordinate_orders, r, 1, rng)[0]
    return space.equation_from_coordinates(row.tolist())


def batch_generator(seed, index):
    return np.random.default_rng(np.random.SeedSequence([seed, index]))


def batch_sizes(n_samples, batch_size=None):
    batch_size = batch_size or settings.NILSAT_BATCH_SIZE
    full, rest = divmod(n_samples, batch_size)
    return [batch_size] * full + ([rest] if rest else [])


def mc_tally(space, r, n_samples, seed, tally, threads=None, batch_size=None):
    """
    Draw n_samples equations and add up ``tally(rows)`` over the batches.

    ``tally`` gets an int64 array of coordinate rows and returns a tuple of
    counts; the totals are summed in batch order.
    """
    if n_samples < 1:
        raise PreconditionError(f"need at least one sample, got {n_samples}")
    if seed < 0:
        raise PreconditionError(f"seed must be nonnegative, got {seed}")
    threads = threads or settings.NILSAT_THREADS
    sizes = batch_sizes(n_samples, batch_size)
    orders = space.coordinate_orders

    def run_batch(index):
        rows = sample_coordinates(orders, r, sizes[index], batch_generator(seed, index))
        return tally(rows)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run_batch, range(len(sizes))))
    else:
        results = [run_batch(index) for index in range(len(sizes))]
    logger.info("r=%d: %d samples in %d batches", r, n_samples, len(sizes))
    return tuple(sum(column) for column in zip(*results))


def mc_density(space, r, n_samples, seed, predicate, threads=None, batch_size=None):
    """Monte Carlo estimate of the density of {eq : predicate(eq)} in B_r."""

    def tally(rows):
        hits = sum(
            1 for row in rows.tolist() if predicate(space.equation_from_coordinates(row))
        )
        return (hits,)

    (hits,) = mc_tally(space, r, n_samples, seed, tally, threads, batch_size)
    return DensityEstimate.from_counts(hits, n_samples, seed, r)
