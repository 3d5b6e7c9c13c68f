"""Interval-set algebra on the line under the standard Gaussian measure.

A GaussianSet is a finite union of disjoint open intervals with extended-real
endpoints, kept in a unique canonical form (sorted, merged at touching
endpoints).  Since gamma_1 has no atoms, the open/closed convention is
measure-irrelevant; canonical form just makes equality testable.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .errors import DegenerateSetError, DomainError
from .gauss_core import phi_inv, phi_total

__all__ = [
    "GaussianSet",
    "Halfline",
    "EMPTY",
    "FULL_LINE",
    "halfline",
    "interval",
    "measure",
    "complement",
    "intersect",
    "union",
    "symm_diff",
    "set_minus",
    "reflect",
    "ehrhard_symmetrize",
    "asymmetry",
    "best_halfline",
]

INF = math.inf


@dataclass(frozen=True)
class GaussianSet:
    """Canonical finite union of disjoint open intervals (a_i, b_i)."""

    intervals: tuple[tuple[float, float], ...]

    @staticmethod
    def from_intervals(pairs: Iterable[tuple[float, float]]) -> "GaussianSet":
        cleaned = []
        for a, b in pairs:
            a, b = float(a), float(b)
            if math.isnan(a) or math.isnan(b):
                raise DomainError("interval endpoints must not be NaN")
            if not a < b:
                raise DomainError(f"empty or inverted interval ({a}, {b})")
            cleaned.append((a, b))
        cleaned.sort()
        merged: list[tuple[float, float]] = []
        for a, b in cleaned:
            if merged and a <= merged[-1][1]:
                la, lb = merged[-1]
                merged[-1] = (la, max(lb, b))
            else:
                merged.append((a, b))
        return GaussianSet(tuple(merged))

    @property
    def endpoints(self) -> tuple[float, ...]:
        return tuple(e for ab in self.intervals for e in ab)

    @property
    def finite_endpoints(self) -> tuple[float, ...]:
        return tuple(e for e in self.endpoints if math.isfinite(e))

    def contains(self, x: float) -> bool:
        return any(a < x < b for a, b in self.intervals)

    def __str__(self) -> str:
        if not self.intervals:
            return "(empty)"

        def fmt(v: float) -> str:
            if v == INF:
                return "inf"
            if v == -INF:
                return "-inf"
            return repr(v)

        return "|".join(f"({fmt(a)},{fmt(b)})" for a, b in self.intervals)


EMPTY = GaussianSet(())
FULL_LINE = GaussianSet(((-INF, INF),))


@dataclass(frozen=True)
class Halfline:
    """Halfline (-inf, r) for orientation 'left', (r, inf) for 'right'."""

    orientation: str
    threshold: float

    def __post_init__(self):
        if self.orientation not in ("left", "right"):
            raise DomainError(f"orientation must be 'left' or 'right', got {self.orientation!r}")
        if not math.isfinite(self.threshold):
            raise DomainError("halfline threshold must be finite")

    def as_set(self) -> GaussianSet:
        if self.orientation == "left":
            return GaussianSet(((-INF, self.threshold),))
        return GaussianSet(((self.threshold, INF),))


def halfline(r: float, orientation: str = "left") -> GaussianSet:
    return Halfline(orientation, r).as_set()


def interval(a: float, b: float) -> GaussianSet:
    return GaussianSet.from_intervals([(a, b)])


def measure(E: GaussianSet) -> float:
    """gamma_1(E) = sum_i Phi(b_i) - Phi(a_i)."""
    total = math.fsum(phi_total(b) - phi_total(a) for a, b in E.intervals)
    return min(1.0, max(0.0, total))


def complement(E: GaussianSet) -> GaussianSet:
    if not E.intervals:
        return FULL_LINE
    pieces = []
    prev = -INF
    for a, b in E.intervals:
        if prev < a:
            pieces.append((prev, a))
        prev = b
    if prev < INF:
        pieces.append((prev, INF))
    return GaussianSet(tuple(pieces))


def intersect(E: GaussianSet, F: GaussianSet) -> GaussianSet:
    pieces = []
    for a, b in E.intervals:
        for c, d in F.intervals:
            lo, hi = max(a, c), min(b, d)
            if lo < hi:
                pieces.append((lo, hi))
    return GaussianSet.from_intervals(pieces) if pieces else EMPTY


def union(E: GaussianSet, F: GaussianSet) -> GaussianSet:
    pieces = E.intervals + F.intervals
    return GaussianSet.from_intervals(pieces) if pieces else EMPTY


def set_minus(E: GaussianSet, F: GaussianSet) -> GaussianSet:
    return intersect(E, complement(F))


def symm_diff(E: GaussianSet, F: GaussianSet) -> GaussianSet:
    return union(set_minus(E, F), set_minus(F, E))


def reflect(E: GaussianSet) -> GaussianSet:
    pieces = [(-b, -a) for a, b in E.intervals]
    return GaussianSet.from_intervals(pieces) if pieces else EMPTY


def _require_proper(E: GaussianSet) -> float:
    m = measure(E)
    if m <= 0.0 or m >= 1.0:
        raise DegenerateSetError(f"operation needs a set of measure in (0, 1), got {m}")
    return m


def ehrhard_symmetrize(E: GaussianSet) -> Halfline:
    """Left halfline of equal Gaussian measure."""
    m = _require_proper(E)
    return Halfline("left", phi_inv(m))


def best_halfline(E: GaussianSet) -> tuple[float, Halfline]:
    """Fraenkel asymmetry together with a minimizing halfline.

    In one dimension the minimum over halfspace orientations collapses to the
    two halflines of measure gamma_1(E); ties go to the left orientation.
    """
    m = _require_proper(E)
    left = Halfline("left", phi_inv(m))
    right = Halfline("right", phi_inv(1.0 - m))
    ratio_left = measure(symm_diff(E, left.as_set())) / m
    ratio_right = measure(symm_diff(E, right.as_set())) / m
    ratio, best = (ratio_left, left) if ratio_left <= ratio_right else (ratio_right, right)
    # phi_inv roundtrip noise leaves ~1e-16 residue on exact halflines
    if ratio < 1e-12:
        ratio = 0.0
    return ratio, best


def asymmetry(E: GaussianSet) -> float:
    """Gaussian Fraenkel asymmetry of E."""
    return best_halfline(E)[0]
