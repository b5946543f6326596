"""Property oracles over bounded ranges, shared by ``nicepairs verify`` and the tests.

Each check returns a list of human-readable violations; empty means it held.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Callable

from .classify import (
    cone,
    graph,
    newstead_condition,
    predecessors_via_dual,
    predecessors_via_reduction,
    verify_gcd_lemma,
)
from .pairs import (
    Pair,
    Window,
    children,
    euler_characteristic,
    quotient_dimension_identity,
    window_status,
)


def in_window_pairs(g: int, n_max: int):
    return (p for p in cone(g, n_max) if p.n >= 2)


def check_newstead_soundness(genera, n_max: int) -> list[str]:
    bad = []
    for g in genera:
        gr = graph(g)
        for p in in_window_pairs(g, n_max):
            if newstead_condition(g, p) and not gr.nice(p):
                bad.append(f"g={g} {p}: classical condition holds but pair is not nice")
    return bad


def check_gcd_corollary(genera, n_max: int) -> list[str]:
    bad = []
    for g in genera:
        gr = graph(g)
        for p in cone(g, n_max):
            if gr.nice(p) and math.gcd(p.d, g) != 1 and math.gcd(p.d + p.n, g) != 1:
                bad.append(f"g={g} {p}: nice but gcd(d,g) and gcd(d+n,g) both exceed 1")
    return bad


def check_nice_coprime(genera, n_max: int) -> list[str]:
    return [
        f"g={g} {p}: nice but gcd={p.gcd}"
        for g in genera
        for p in cone(g, n_max)
        if graph(g).nice(p) and p.gcd != 1
    ]


def check_gcd_lemma(genera, n_max: int) -> list[str]:
    return [
        f"g={g} {p}: coprime child of a non-coprime pair"
        for g in genera
        for p in in_window_pairs(g, n_max)
        if not verify_gcd_lemma(g, p)
    ]


def check_step_invariants(genera, n_max: int) -> list[str]:
    """Rank decrease, target window, canonical-k uniqueness and Euler bound."""
    bad = []
    for g in genera:
        for p in in_window_pairs(g, n_max):
            r = euler_characteristic(g, p)
            if not 0 < r < p.n:
                bad.append(f"g={g} {p}: Euler characteristic {r} outside (0, n)")
            for s in children(g, p):
                t = s.target
                if t.n >= p.n:
                    bad.append(f"g={g} {p}: {s.kind.value} does not lower the rank")
                if not t.n * (g - 1) < t.d <= t.n * g:
                    bad.append(f"g={g} {p}: {s.kind.value} target {t} outside (n(g-1), ng]")
                for dk in (-1, 1):
                    other = t.d - dk * t.n
                    if s.k + dk >= 0 and t.n * (g - 1) < other <= t.n * g:
                        bad.append(f"g={g} {p}: k={s.k + dk} also lands in the interval")
    return bad


def random_chain_gcds(seed: int, count: int, g_range=(2, 7), n_range=(2, 60)) -> list[str]:
    """Random walks of reduce/dual steps; gcd must divide the next gcd along each."""
    rng = random.Random(seed)
    bad = []
    for _ in range(count):
        g = rng.randint(*g_range)
        n = rng.randint(*n_range)
        p = Pair(n, rng.randint(n * (g - 1) + 1, n * g - 1))
        while window_status(g, p) is Window.IN_WINDOW:
            steps = children(g, p)
            s = steps[rng.randrange(len(steps))]
            if s.target.gcd % p.gcd:
                bad.append(f"g={g} {p} -> {s.target}: gcd {p.gcd} does not divide {s.target.gcd}")
            p = s.target
    return bad


def brute_predecessors(g: int, target: Pair, n_max: int, kind: str) -> list[Pair]:
    from .pairs import dual_reduce, reduce

    fn = reduce if kind == "reduce" else dual_reduce
    return [p for p in in_window_pairs(g, n_max) if fn(g, p).target == target]


def check_predecessor_lemma(genera, n_max: int) -> list[str]:
    bad = []
    for g in genera:
        line = Pair(1, g)
        via_r = [p for p, _ in predecessors_via_reduction(g, line, n_max)]
        via_d = [p for p, _ in predecessors_via_dual(g, line, n_max)]
        want_r = [Pair(n, n * g - 1) for n in range(2, n_max + 1)]
        want_d = [Pair(n, n * g - n + 1) for n in range(2, n_max + 1)]
        if via_r != want_r or brute_predecessors(g, line, n_max, "reduce") != want_r:
            bad.append(f"g={g}: reduce predecessors of {line} are {via_r}")
        if via_d != want_d or brute_predecessors(g, line, n_max, "dual") != want_d:
            bad.append(f"g={g}: dual predecessors of {line} are {via_d}")
    return bad


def check_dimension_identity(n_max: int = 50, g_max: int = 50) -> list[str]:
    bad = []
    for g in range(2, g_max + 1):
        for n in range(2, n_max + 1):
            q = quotient_dimension_identity(g, n)
            if not q.equal:
                bad.append(f"g={g} n={n}: {q.lhs} != {q.rhs}")
    return bad


@dataclass
class VerifyConfig:
    g_max: int = 7
    n_max: int = 12
    chains: int = 10_000
    seed: int = 0


@dataclass
class CheckResult:
    name: str
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def run_all(cfg: VerifyConfig) -> list[CheckResult]:
    genera = range(2, cfg.g_max + 1)
    checks: list[tuple[str, Callable[[], list[str]]]] = [
        ("step invariants", lambda: check_step_invariants(genera, cfg.n_max)),
        ("classical conditions imply nice", lambda: check_newstead_soundness(genera, cfg.n_max)),
        ("nice implies gcd(d,g)=1 or gcd(d+n,g)=1", lambda: check_gcd_corollary(genera, cfg.n_max)),
        ("nice implies coprime", lambda: check_nice_coprime(genera, cfg.n_max)),
        ("coprime child implies coprime parent", lambda: check_gcd_lemma(genera, cfg.n_max)),
        ("gcd non-decreasing on random chains", lambda: random_chain_gcds(cfg.seed, cfg.chains)),
        ("one-step predecessors of (1;g)", lambda: check_predecessor_lemma(genera, min(cfg.n_max, 10))),
        ("quotient dimension identity", check_dimension_identity),
    ]
    return [CheckResult(name, fn()) for name, fn in checks]
