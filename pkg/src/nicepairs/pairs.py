"""Integer calculus of rank/degree pairs attached to a genus.

A pair ``(n; d)`` is *in-window* for genus ``g`` when ``n(g-1) < d < ng``.
Two moves shrink the rank of an in-window pair:

* reduction       ``(n; d) -> (ng - d; d - k(ng - d))``
* dual reduction  ``(n; d) -> (d - n(g-1); n(2g-1) - d - k(d - n(g-1)))``

where ``k >= 0`` is the unique integer placing the new degree in the
half-open interval ``(n'(g-1), n'g]``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple


class PairError(ValueError):
    """Raised when a pair or genus violates the precondition of an operation."""


class Pair(NamedTuple):
    n: int
    d: int

    def __str__(self) -> str:
        return f"({self.n};{self.d})"

    @property
    def gcd(self) -> int:
        return math.gcd(self.n, self.d)


class Window(str, enum.Enum):
    IN_WINDOW = "in-window"
    TERMINAL_DIVISIBLE = "terminal-divisible"
    TERMINAL_LINE = "terminal-line"
    OUTSIDE = "outside"


class StepKind(str, enum.Enum):
    REDUCE = "reduce"
    DUAL = "dual"

    @property
    def code(self) -> str:
        return "R" if self is StepKind.REDUCE else "D"

    @classmethod
    def from_code(cls, code: str) -> "StepKind":
        try:
            return {"R": cls.REDUCE, "D": cls.DUAL}[code]
        except KeyError:
            raise ValueError(f"unknown step code {code!r}") from None


@dataclass(frozen=True)
class ReductionStep:
    kind: StepKind
    source: Pair
    target: Pair
    k: int

    @property
    def code(self) -> str:
        return f"{self.kind.code}{self.k}"


@dataclass(frozen=True)
class ReductionChain:
    genus: int
    start: Pair
    steps: tuple[ReductionStep, ...] = ()

    @property
    def end(self) -> Pair:
        return self.steps[-1].target if self.steps else self.start

    @property
    def pairs(self) -> list[Pair]:
        return [self.start] + [s.target for s in self.steps]

    @property
    def codes(self) -> str:
        return ";".join(s.code for s in self.steps)

    def __len__(self) -> int:
        return len(self.steps)

    def __str__(self) -> str:
        return " -> ".join(str(p) for p in self.pairs)


def check_genus(g: int) -> int:
    if not isinstance(g, int) or g < 2:
        raise PairError(f"genus must be an integer >= 2, got {g!r}")
    return g


def as_pair(p: Pair | tuple[int, int]) -> Pair:
    n, d = p
    if n < 1 or d < 1:
        raise PairError(f"pair entries must be positive, got ({n};{d})")
    return Pair(int(n), int(d))


def window_status(g: int, p: Pair | tuple[int, int]) -> Window:
    check_genus(g)
    n, d = as_pair(p)
    if n * (g - 1) < d < n * g:
        return Window.IN_WINDOW
    if n == 1 and d == g:
        return Window.TERMINAL_LINE
    if n >= 2 and d == n * g:
        return Window.TERMINAL_DIVISIBLE
    return Window.OUTSIDE


def in_window(g: int, p: Pair | tuple[int, int]) -> bool:
    return window_status(g, p) is Window.IN_WINDOW


def _require_in_window(g: int, p: Pair | tuple[int, int]) -> Pair:
    p = as_pair(p)
    status = window_status(g, p)
    if status is not Window.IN_WINDOW:
        raise PairError(
            f"{p} is {status.value} for g={g}; reductions need n(g-1) < d < ng"
        )
    return p


def canonical_degree(g: int, n_new: int, degree: int) -> tuple[int, int]:
    """Return ``(d', k)`` with ``d' = degree - k*n_new`` in ``(n_new(g-1), n_new*g]``."""
    low = n_new * (g - 1)
    d_new = (degree - low - 1) % n_new + low + 1
    k, rem = divmod(degree - d_new, n_new)
    assert rem == 0
    if k < 0:
        raise PairError(f"degree {degree} already below the target interval")
    return d_new, k


def reduce(g: int, p: Pair | tuple[int, int]) -> ReductionStep:
    check_genus(g)
    p = _require_in_window(g, p)
    n_new = p.n * g - p.d
    d_new, k = canonical_degree(g, n_new, p.d)
    return ReductionStep(StepKind.REDUCE, p, Pair(n_new, d_new), k)


def dual_reduce(g: int, p: Pair | tuple[int, int]) -> ReductionStep:
    check_genus(g)
    p = _require_in_window(g, p)
    n_new = p.d - p.n * (g - 1)
    d_new, k = canonical_degree(g, n_new, p.n * (2 * g - 1) - p.d)
    return ReductionStep(StepKind.DUAL, p, Pair(n_new, d_new), k)


def step(g: int, p: Pair | tuple[int, int], kind: StepKind) -> ReductionStep:
    return reduce(g, p) if kind is StepKind.REDUCE else dual_reduce(g, p)


def children(g: int, p: Pair | tuple[int, int]) -> list[ReductionStep]:
    """Reduce and dual-reduce steps out of ``p``; empty unless ``p`` is in-window.

    When both moves land on the same pair only the reduction is kept.
    """
    if window_status(g, p) is not Window.IN_WINDOW:
        return []
    r, dr = reduce(g, p), dual_reduce(g, p)
    if r.target == dr.target:
        return [r]
    return [r, dr]


def replay(g: int, start: Pair | tuple[int, int], kinds: Iterable[StepKind]) -> ReductionChain:
    """Apply the given step kinds in order, starting from ``start``."""
    steps = []
    cur = as_pair(start)
    for kind in kinds:
        s = step(g, cur, kind)
        steps.append(s)
        cur = s.target
    return ReductionChain(g, as_pair(start), tuple(steps))


def follow(g: int, start: Pair | tuple[int, int], kind: StepKind) -> ReductionChain:
    """Apply one step kind repeatedly until the pair leaves the window."""
    steps = []
    cur = as_pair(start)
    while window_status(g, cur) is Window.IN_WINDOW:
        s = step(g, cur, kind)
        steps.append(s)
        cur = s.target
    return ReductionChain(g, as_pair(start), tuple(steps))


def validate_chain(chain: ReductionChain) -> None:
    """Recompute every step of ``chain``; raise ``PairError`` on any mismatch."""
    g = chain.genus
    cur = chain.start
    for i, s in enumerate(chain.steps):
        if s.source != cur:
            raise PairError(f"step {i} starts at {s.source}, expected {cur}")
        fresh = step(g, cur, s.kind)
        if fresh != s:
            raise PairError(f"step {i} is {s}, recomputed {fresh}")
        cur = s.target


def moduli_dimension(g: int, n: int) -> int:
    check_genus(g)
    if n < 1:
        raise PairError(f"rank must be positive, got {n}")
    return (n * n - 1) * (g - 1)


def euler_characteristic(g: int, p: Pair | tuple[int, int]) -> int:
    check_genus(g)
    n, d = as_pair(p)
    return d + n * (1 - g)


@dataclass(frozen=True)
class DimensionIdentity:
    lhs: int
    rhs: int

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs


def quotient_dimension_identity(g: int, n: int) -> DimensionIdentity:
    """Quotient dimension plus linear-system dimension versus the moduli dimension.

    With ``d = ng`` the orbit space of elementary transformations has dimension
    ``d(n-1) - n^2 + 1`` and the divisors move in a projective space of
    dimension ``(n-1)g``; the sum must equal ``(n^2-1)(g-1)``.
    """
    check_genus(g)
    d = n * g
    lhs = d * (n - 1) - n * n + 1 + (n - 1) * g
    return DimensionIdentity(lhs, moduli_dimension(g, n))
