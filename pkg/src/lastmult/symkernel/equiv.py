"""Randomized numeric identity testing.

Two expressions are declared equal when they agree at a batch of random
points drawn from a box that keeps clear of the singular sets the caller
declares. Points that land on a pole are discarded; if every point does,
the comparison is inconclusive rather than false.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from lastmult.errors import InconclusiveError
from lastmult.symkernel.evaluate import evaluate_array
from lastmult.symkernel.expr import Expr, as_expr

DEFAULT_BOX = (0.3, 2.0)


@dataclass(frozen=True)
class SampleDomain:
    """Where to sample: a default box, per-symbol overrides and an optional filter.

    ``where`` receives a dict of numpy arrays (one per symbol) and returns a
    boolean mask of admissible points.
    """

    box: tuple = DEFAULT_BOX
    boxes: dict = field(default_factory=dict)
    where: Callable | None = None

    def bounds(self, name):
        return self.boxes.get(name, self.box)

    def with_boxes(self, **boxes):
        merged = dict(self.boxes)
        merged.update(boxes)
        return SampleDomain(self.box, merged, self.where)


DEFAULT_DOMAIN = SampleDomain()


def sample_points(names, samples: int, seed: int = 0, domain: SampleDomain | None = None) -> dict:
    """Draw ``samples`` admissible points; returns ``{name: ndarray}``."""
    domain = domain or DEFAULT_DOMAIN
    rng = np.random.default_rng(seed)
    names = sorted(names)
    chunks = {n: [] for n in names}
    have = 0
    for _ in range(50):
        batch = max(4 * samples, 16)
        pts = {n: rng.uniform(*domain.bounds(n), size=batch) for n in names}
        if domain.where is not None and names:
            keep = np.asarray(domain.where(pts), dtype=bool)
            pts = {n: v[keep] for n, v in pts.items()}
        for n in names:
            chunks[n].append(pts[n])
        have += len(pts[names[0]]) if names else samples
        if have >= samples:
            break
    if not names:
        return {}
    out = {n: np.concatenate(chunks[n])[:samples] for n in names}
    if len(out[names[0]]) == 0:
        raise InconclusiveError("sampling domain filter rejected every candidate point")
    return out


def _paired_values(a: Expr, b: Expr, samples, seed, domain):
    if samples < 8:
        raise ValueError("equivalence testing needs at least 8 samples")
    names = a.free_symbols | b.free_symbols
    pts = sample_points(names, samples, seed, domain)
    if not names:
        va = evaluate_array(a, {}, strict=False).reshape(1)
        vb = evaluate_array(b, {}, strict=False).reshape(1)
    else:
        va = evaluate_array(a, pts, strict=False)
        vb = evaluate_array(b, pts, strict=False)
    ok = np.isfinite(va) & np.isfinite(vb)
    if not ok.any():
        raise InconclusiveError("every sample point hit a pole")
    return va[ok], vb[ok]


def equiv(a, b, samples: int = 32, tol: float = 1e-9, seed: int = 0, domain: SampleDomain | None = None) -> bool:
    """True iff ``|a - b| <= tol * (1 + |a|)`` at every regular sample point."""
    va, vb = _paired_values(as_expr(a), as_expr(b), samples, seed, domain)
    return bool(np.all(np.abs(va - vb) <= tol * (1.0 + np.abs(va))))


def max_deviation(a, b, samples: int = 32, seed: int = 0, domain: SampleDomain | None = None) -> float:
    """Largest scaled deviation ``|a-b| / (1+|a|)``; handy for reports."""
    va, vb = _paired_values(as_expr(a), as_expr(b), samples, seed, domain)
    return float(np.max(np.abs(va - vb) / (1.0 + np.abs(va))))


def equiv_up_to_constant(
    a, b, samples: int = 32, tol: float = 1e-9, seed: int = 0, domain: SampleDomain | None = None
) -> complex | None:
    """Return ``c`` with ``a == c * b`` on the samples, or ``None``.

    Points where ``b`` vanishes are skipped like poles.
    """
    va, vb = _paired_values(as_expr(a), as_expr(b), samples, seed, domain)
    keep = np.abs(vb) > 0
    if not keep.any():
        raise InconclusiveError("reference expression vanished at every sample point")
    ratio = va[keep] / vb[keep]
    c = complex(np.median(ratio.real) + 1j * np.median(ratio.imag))
    if np.all(np.abs(ratio - c) <= tol * (1.0 + abs(c))):
        return c
    return None


def is_identically_zero(e, samples: int = 32, tol: float = 1e-10, seed: int = 0, domain=None) -> bool:
    va, _ = _paired_values(as_expr(e), as_expr(0), samples, seed, domain)
    return bool(np.all(np.abs(va) <= tol))


def is_constant(e, samples: int = 32, tol: float = 1e-9, seed: int = 0, domain=None) -> complex | None:
    """The constant value of ``e`` if it does not vary over the samples."""
    return equiv_up_to_constant(e, 1, samples, tol, seed, domain)
