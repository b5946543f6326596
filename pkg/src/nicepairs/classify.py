"""Search over the reduction tree: nice pairs, fine pairs, predecessors.

All memo tables live on a :class:`ReductionGraph`, one per genus.  Entries are
written once and never mutated, so a graph can be shared between threads.
"""

from __future__ import annotations

import functools
import math
from collections import deque
from dataclasses import dataclass
from typing import Iterator

from .pairs import (
    DimensionIdentity,
    Pair,
    PairError,
    ReductionChain,
    ReductionStep,
    StepKind,
    Window,
    as_pair,
    check_genus,
    children,
    dual_reduce,
    moduli_dimension,
    quotient_dimension_identity,
    reduce,
    window_status,
)


@dataclass(frozen=True)
class NiceResult:
    verdict: bool
    witness: ReductionChain | None = None
    status: str = ""


@dataclass(frozen=True)
class Link:
    left_chain: ReductionChain
    right_chain: ReductionChain
    meet: Pair


@dataclass(frozen=True)
class AdmissibleDiagram:
    genus: int
    top: tuple[Pair, ...]
    links: tuple[Link, ...]
    terminal_nice_witness: ReductionChain


@dataclass(frozen=True)
class FineResult:
    verdict: bool
    witness: AdmissibleDiagram | None = None
    status: str = ""


@dataclass(frozen=True)
class ClassificationReport:
    genus: int
    pair: Pair
    window: Window
    gcd_nd: int
    is_nice: bool
    nice_witness: ReductionChain | None
    is_fine: bool
    fine_witness: AdmissibleDiagram | None
    newstead_condition: bool
    gcd_corollary_holds: bool
    gcd_dg: int
    gcd_dng: int
    moduli_dim: int
    quotient_identity: DimensionIdentity | None


def _prime_factors(g: int) -> list[int]:
    out = []
    q = 2
    while q * q <= g:
        if g % q == 0:
            out.append(q)
            while g % q == 0:
                g //= q
        q += 1
    if g > 1:
        out.append(g)
    return out


def newstead_condition(g: int, p: Pair | tuple[int, int]) -> bool:
    """The classical sufficient conditions for rationality (congruence / prime factors of g)."""
    check_genus(g)
    n, d = as_pair(p)
    if d % n in (1 % n, (-1) % n):
        return True
    if math.gcd(n, d) != 1:
        return False
    primes = _prime_factors(g)
    if len(primes) == 1:
        return True
    return primes[0] + primes[1] > n


def gcd_corollary_holds(g: int, p: Pair | tuple[int, int]) -> bool:
    n, d = as_pair(p)
    return math.gcd(d, g) == 1 or math.gcd(d + n, g) == 1


class ReductionGraph:
    """Memoized reduction DAG for a fixed genus."""

    def __init__(self, g: int):
        self.g = check_genus(g)
        self.line = Pair(1, g)
        self._children: dict[Pair, tuple[ReductionStep, ...]] = {}
        self._desc: dict[Pair, frozenset[Pair]] = {}
        # coprime meet -> sorted in-window pairs having it as a descendant
        self._meets: dict[Pair, list[Pair]] = {}
        self._indexed_rank = 0

    def children(self, p: Pair) -> tuple[ReductionStep, ...]:
        try:
            return self._children[p]
        except KeyError:
            steps = self._children[p] = tuple(children(self.g, p))
            return steps

    def descendants(self, p: Pair | tuple[int, int]) -> frozenset[Pair]:
        p = as_pair(p)
        if window_status(self.g, p) is Window.OUTSIDE:
            raise PairError(f"{p} is outside the cone for g={self.g}")
        return self._descendants(p)

    def _descendants(self, p: Pair) -> frozenset[Pair]:
        hit = self._desc.get(p)
        if hit is not None:
            return hit
        # targets have strictly smaller rank, so recursion depth is at most p.n
        acc = {p}
        for s in self.children(p):
            acc |= self._descendants(s.target)
        out = self._desc[p] = frozenset(acc)
        return out

    def shortest_chain(self, src: Pair, dst: Pair) -> ReductionChain | None:
        """Shortest chain from ``src`` to ``dst``; ties broken Reduce before Dual, step by step."""
        src, dst = as_pair(src), as_pair(dst)
        if src == dst:
            return ReductionChain(self.g, src)
        if dst not in self._descendants(src):
            return None
        parent: dict[Pair, ReductionStep | None] = {src: None}
        queue = deque([src])
        while queue:
            cur = queue.popleft()
            for s in self.children(cur):
                if s.target in parent:
                    continue
                parent[s.target] = s
                if s.target == dst:
                    steps = []
                    node = dst
                    while parent[node] is not None:
                        steps.append(parent[node])
                        node = parent[node].source
                    return ReductionChain(self.g, src, tuple(reversed(steps)))
                queue.append(s.target)
        return None  # pragma: no cover - unreachable given the descendant check

    def is_nice(self, p: Pair | tuple[int, int]) -> NiceResult:
        p = as_pair(p)
        status = window_status(self.g, p)
        if status is Window.TERMINAL_LINE:
            return NiceResult(True, ReductionChain(self.g, p), "rank one")
        if status is not Window.IN_WINDOW:
            return NiceResult(False, None, f"{p} is {status.value}; no reductions apply")
        if self.line not in self._descendants(p):
            return NiceResult(False, None, f"no chain from {p} reaches {self.line}")
        return NiceResult(True, self.shortest_chain(p, self.line), "reaches rank one")

    def nice(self, p: Pair) -> bool:
        status = window_status(self.g, p)
        if status is Window.TERMINAL_LINE:
            return True
        return status is Window.IN_WINDOW and self.line in self._descendants(p)

    def _index_up_to(self, n_max: int) -> None:
        for n in range(self._indexed_rank + 1, n_max + 1):
            for d in range(n * (self.g - 1) + 1, n * self.g):
                q = Pair(n, d)
                for c in self._descendants(q):
                    if c.gcd == 1:
                        self._meets.setdefault(c, []).append(q)
        # appended in (n, d) order, so every list stays sorted
        self._indexed_rank = max(self._indexed_rank, n_max)

    def is_fine(self, p: Pair | tuple[int, int]) -> FineResult:
        """Breadth-first search for a shortest admissible diagram ending at a nice pair.

        Top-row vertices are in-window pairs of rank at most ``p.n``; two of them
        are linked when their descendant sets share a coprime pair.
        """
        p = as_pair(p)
        status = window_status(self.g, p)
        if status is Window.OUTSIDE:
            raise PairError(f"{p} is outside the cone for g={self.g}")
        nice = self.is_nice(p)
        if nice.verdict:
            return FineResult(True, AdmissibleDiagram(self.g, (p,), (), nice.witness), "nice")
        if status is not Window.IN_WINDOW or p.gcd != 1:
            return FineResult(False, None, f"{p} is not coprime" if p.gcd != 1 else status.value)

        self._index_up_to(p.n)
        # parent[q] = (previous top pair, meet)
        parent: dict[Pair, tuple[Pair, Pair] | None] = {p: None}
        used_meets: set[Pair] = set()
        queue = deque([p])
        found = None
        while queue and found is None:
            cur = queue.popleft()
            for c in sorted(x for x in self._descendants(cur) if x.gcd == 1):
                if c in used_meets:
                    continue
                used_meets.add(c)
                for q in self._meets.get(c, ()):
                    if q.n > p.n or q in parent:
                        continue
                    parent[q] = (cur, c)
                    if self.nice(q):
                        found = q
                        break
                    queue.append(q)
                if found is not None:
                    break
        if found is None:
            return FineResult(False, None, f"no admissible diagram from {p} reaches a nice pair")

        top = [found]
        meets = []
        node = found
        while parent[node] is not None:
            prev, meet = parent[node]
            top.append(prev)
            meets.append(meet)
            node = prev
        top.reverse()
        meets.reverse()
        links = tuple(
            Link(
                self.shortest_chain(top[i], meets[i]),
                self.shortest_chain(top[i + 1], meets[i]),
                meets[i],
            )
            for i in range(len(meets))
        )
        witness = self.is_nice(found).witness
        return FineResult(True, AdmissibleDiagram(self.g, tuple(top), links, witness), "linked")

    def predecessors(
        self, target: Pair | tuple[int, int], n_max: int, kind: StepKind
    ) -> list[tuple[Pair, int]]:
        """In-window pairs of rank <= ``n_max`` whose canonical ``kind`` step lands on ``target``.

        Both moves satisfy ``n*g = d' + (k+1)*n'``; the source degree is
        ``n*g - n'`` for a reduction and ``n*(g-1) + n'`` for a dual reduction.
        """
        t = as_pair(target)
        g = self.g
        if window_status(g, t) not in (Window.IN_WINDOW, Window.TERMINAL_LINE,
                                       Window.TERMINAL_DIVISIBLE):
            raise PairError(f"{t} cannot be a reduction target for g={g}")
        out = []
        k = 0
        while True:
            total = t.d + (k + 1) * t.n
            if total > n_max * g:
                break
            if total % g == 0:
                n = total // g
                d = n * g - t.n if kind is StepKind.REDUCE else n * (g - 1) + t.n
                src = Pair(n, d)
                if window_status(g, src) is Window.IN_WINDOW:
                    s = reduce(g, src) if kind is StepKind.REDUCE else dual_reduce(g, src)
                    if s.target == t and s.k == k:
                        out.append((src, k))
            k += 1
        return out

    def report(self, p: Pair | tuple[int, int], with_fine: bool = True) -> ClassificationReport:
        p = as_pair(p)
        g = self.g
        status = window_status(g, p)
        nice = self.is_nice(p)
        if with_fine and status in (Window.IN_WINDOW, Window.TERMINAL_LINE):
            fine = self.is_fine(p)
        else:
            fine = FineResult(nice.verdict, None)
        return ClassificationReport(
            genus=g,
            pair=p,
            window=status,
            gcd_nd=p.gcd,
            is_nice=nice.verdict,
            nice_witness=nice.witness,
            is_fine=fine.verdict,
            fine_witness=fine.witness,
            newstead_condition=newstead_condition(g, p),
            gcd_corollary_holds=gcd_corollary_holds(g, p),
            gcd_dg=math.gcd(p.d, g),
            gcd_dng=math.gcd(p.d + p.n, g),
            moduli_dim=moduli_dimension(g, p.n),
            quotient_identity=quotient_dimension_identity(g, p.n) if p.n >= 2 else None,
        )


@functools.lru_cache(maxsize=None)
def graph(g: int) -> ReductionGraph:
    return ReductionGraph(g)


def descendants(g: int, p: Pair | tuple[int, int]) -> frozenset[Pair]:
    return graph(g).descendants(p)


def is_nice(g: int, p: Pair | tuple[int, int]) -> NiceResult:
    return graph(g).is_nice(p)


def is_fine(g: int, p: Pair | tuple[int, int]) -> FineResult:
    return graph(g).is_fine(p)


def predecessors_via_reduction(g: int, target, n_max: int) -> list[tuple[Pair, int]]:
    return graph(g).predecessors(target, n_max, StepKind.REDUCE)


def predecessors_via_dual(g: int, target, n_max: int) -> list[tuple[Pair, int]]:
    return graph(g).predecessors(target, n_max, StepKind.DUAL)


def verify_gcd_lemma(g: int, p: Pair | tuple[int, int]) -> bool:
    """A coprime child forces a coprime parent."""
    p = as_pair(p)
    return all(s.target.gcd != 1 or p.gcd == 1 for s in children(g, p))


def cone(g: int, n_max: int) -> Iterator[Pair]:
    """``(1; g)`` followed by every in-window pair with rank <= n_max, in (n, d) order."""
    check_genus(g)
    if n_max < 1:
        raise PairError(f"n_max must be positive, got {n_max}")
    yield Pair(1, g)
    for n in range(2, n_max + 1):
        for d in range(n * (g - 1) + 1, n * g):
            yield Pair(n, d)


def enumerate_cone(g: int, n_max: int, with_fine: bool = True) -> Iterator[ClassificationReport]:
    gr = graph(g)
    for p in cone(g, n_max):
        yield gr.report(p, with_fine=with_fine)


def classify(g: int, p: Pair | tuple[int, int], with_fine: bool = True) -> ClassificationReport:
    return graph(g).report(p, with_fine=with_fine)


def validate_diagram(diagram: AdmissibleDiagram, n0: int | None = None) -> None:
    """Replay every chain of an admissible diagram; raise ``PairError`` on a defect."""
    from .pairs import validate_chain

    g = diagram.genus
    top = diagram.top
    n0 = top[0].n if n0 is None else n0
    if len(diagram.links) != len(top) - 1:
        raise PairError("diagram needs exactly one link per adjacent top pair")
    for q in top:
        if q.n > n0:
            raise PairError(f"top pair {q} exceeds starting rank {n0}")
    for i, link in enumerate(diagram.links):
        if link.meet.gcd != 1:
            raise PairError(f"meet {link.meet} is not coprime")
        for chain, start in ((link.left_chain, top[i]), (link.right_chain, top[i + 1])):
            if chain.start != start or chain.end != link.meet:
                raise PairError(f"link {i} chain {chain} does not join {start} to {link.meet}")
            validate_chain(chain)
    w = diagram.terminal_nice_witness
    validate_chain(w)
    if w.start != top[-1] or w.end != Pair(1, g):
        raise PairError(f"terminal witness {w} does not prove {top[-1]} nice")
