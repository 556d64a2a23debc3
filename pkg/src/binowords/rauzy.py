"""Abelian Rauzy graphs and the edge-quotient counting machinery.

The order-n graph has the Parikh vectors of length-n factors as vertices
and one edge per length-(n+1) factor w, from the vector of w without its
last letter to the vector of w without its first, labeled by that letter
pair.  Edge and boundary-pair counts feed a predictor for the
(k+1)-binomial complexity of images under powers of the 0->01, 1->10
morphism.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .core import Alphabet, parikh_of_bytes
from .errors import AperiodicityError, BinowordsError
from .generators import WordGenerator, configured_prefix_cap, factor_bytes
from .complexity import tm_factor_formula


@dataclass(frozen=True)
class AbelianRauzyGraph:
    order: int
    alphabet: Alphabet
    vertices: frozenset
    edges: frozenset
    prefix_used: int

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def loops(self):
        return {e for e in self.edges if e[1][0] == e[1][1]}

    def loop_labels_by_vertex(self) -> dict:
        out: dict = {}
        for src, label, _ in self.loops():
            out.setdefault(src, set()).add(label)
        return out

    def edge_labels(self) -> set:
        return {label for _, label, _ in self.edges}

    def weight(self, vertex) -> int:
        """Display weight of a vertex; the 1-count for binary words."""
        if len(self.alphabet) == 2:
            return vertex[1]
        return sum(vertex)

    def to_dot(self) -> str:
        def vid(vertex):
            return '"' + ",".join(str(c) for c in vertex) + '"'

        lines = [f"digraph rauzy{self.order} {{", "  rankdir=LR;"]
        for v in sorted(self.vertices):
            label = "(" + ",".join(str(c) for c in v) + ")"
            if len(self.alphabet) == 2:
                label += f" w={v[1]}"
            lines.append(f"  {vid(v)} [label=\"{label}\"];")
        for src, (a, b), tgt in sorted(self.edges):
            attrs = f"label=\"({a},{b})\""
            if a == b:
                attrs += ", color=\"crimson\", fontcolor=\"crimson\""
            lines.append(f"  {vid(src)} -> {vid(tgt)} [{attrs}];")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json_dict(self) -> dict:
        return {
            "order": self.order,
            "vertices": [list(v) for v in sorted(self.vertices)],
            "edges": [
                {"source": list(s), "label": [a, b], "target": list(t)}
                for s, (a, b), t in sorted(self.edges)
            ],
            "prefix_used": self.prefix_used,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2) + "\n"


def build_graph(gen: WordGenerator, n: int,
                cap: int | None = None) -> AbelianRauzyGraph:
    if n < 1:
        raise ValueError("graph order must be >= 1")
    size = len(gen.alphabet)
    symbols = gen.alphabet.symbols
    fs, used = factor_bytes(gen, n + 1, cap)
    vertices = set()
    edges = set()
    for w in fs:
        src = parikh_of_bytes(w[:-1], size)
        tgt = parikh_of_bytes(w[1:], size)
        vertices.add(src)
        vertices.add(tgt)
        edges.add((src, (symbols[w[0]], symbols[w[-1]]), tgt))
    return AbelianRauzyGraph(
        order=n,
        alphabet=gen.alphabet,
        vertices=frozenset(vertices),
        edges=frozenset(edges),
        prefix_used=used,
    )


@dataclass(frozen=True)
class EdgeQuotients:
    """Counts of boundary-decorated Parikh data over length-(n+1) factors.

    x_count: distinct (first letter, interior vector, last letter);
    yl_count / yr_count: distinct (first letter, rest vector) and
    (front vector, last letter); y_count tags the two apart and adds.
    """

    order: int
    x_count: int
    yl_count: int
    yr_count: int
    prefix_used: int

    @property
    def y_count(self) -> int:
        return self.yl_count + self.yr_count

    def to_json_dict(self) -> dict:
        return {
            "order": self.order,
            "x_count": self.x_count,
            "yl_count": self.yl_count,
            "yr_count": self.yr_count,
            "y_count": self.y_count,
            "prefix_used": self.prefix_used,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2) + "\n"


def edge_quotients(gen: WordGenerator, n: int,
                   cap: int | None = None) -> EdgeQuotients:
    if n < 1:
        raise ValueError("order must be >= 1")
    if len(gen.alphabet) != 2:
        raise BinowordsError(
            "edge quotients are defined for binary generators only"
        )
    fs, used = factor_bytes(gen, n + 1, cap)
    xs = set()
    yl = set()
    yr = set()
    for w in fs:
        xs.add((w[0], parikh_of_bytes(w[1:-1], 2), w[-1]))
        yl.add((w[0], parikh_of_bytes(w[1:], 2)))
        yr.add((parikh_of_bytes(w[:-1], 2), w[-1]))
    return EdgeQuotients(
        order=n,
        x_count=len(xs),
        yl_count=len(yl),
        yr_count=len(yr),
        prefix_used=used,
    )


@dataclass(frozen=True)
class RunMaxima:
    """Longest constant runs of each binary letter that could be found.

    m is the largest n with both 0^n and 1^n among the factors; m_prime
    asks for at least one.  An inexact side means the run was still
    growing when the prefix cap was reached, so the reported number is a
    lower bound (the value may be infinite).
    """

    m: int
    m_exact: bool
    m_prime: int
    m_prime_exact: bool
    prefix_used: int

    def describe(self) -> str:
        left = f"m = {self.m}" if self.m_exact else f"m >= {self.m}"
        right = (f"m' = {self.m_prime}" if self.m_prime_exact
                 else f"m' >= {self.m_prime}")
        return f"{left}, {right} (prefix {self.prefix_used})"


def _max_runs(gen: WordGenerator, p: int) -> tuple[int, int]:
    arr = np.frombuffer(gen.prefix_bytes(p), dtype=np.uint8)
    change = np.flatnonzero(np.diff(arr)) + 1
    starts = np.concatenate(([0], change))
    ends = np.concatenate((change, [len(arr)]))
    lengths = ends - starts
    letters = arr[starts]
    out = []
    for c in (0, 1):
        mine = lengths[letters == c]
        out.append(int(mine.max()) if mine.size else 0)
    return out[0], out[1]


def run_maxima(gen: WordGenerator, cap: int | None = None) -> RunMaxima:
    if len(gen.alphabet) != 2:
        raise BinowordsError("run maxima are defined for binary generators")
    cap = configured_prefix_cap() if cap is None else cap
    p = min(1024, cap)
    cur = _max_runs(gen, p)
    streaks = [0, 0]
    while p < cap and min(streaks) < 2:
        p_next = min(2 * p, cap)
        nxt = _max_runs(gen, p_next)
        for i in (0, 1):
            streaks[i] = streaks[i] + 1 if nxt[i] == cur[i] else 0
        cur = nxt
        p = p_next
    exact = [streaks[i] >= 2 for i in (0, 1)]
    c0, c1 = cur
    if c0 == c1:
        m_exact = exact[0] or exact[1]
    else:
        m_exact = exact[0] if c0 < c1 else exact[1]
    return RunMaxima(
        m=min(c0, c1),
        m_exact=m_exact,
        m_prime=max(c0, c1),
        m_prime_exact=exact[0] and exact[1],
        prefix_used=p,
    )


def _smallest_period(data: bytes) -> int:
    """Smallest p with data[i] == data[i-p] for all i >= p (KMP border)."""
    n = len(data)
    fail = [0] * n
    k = 0
    for i in range(1, n):
        while k and data[i] != data[k]:
            k = fail[k - 1]
        if data[i] == data[k]:
            k += 1
        fail[i] = k
    return n - fail[n - 1] if n else 0


def assert_aperiodic_looking(gen: WordGenerator, probe: int = 4096) -> None:
    """Heuristic gate: refuse words whose probe prefix is periodic.

    A period can always hide beyond the probe, so passing proves
    nothing; failing is decisive for the probe range.
    """
    data = gen.prefix_bytes(probe)
    if len(set(data)) < 2:
        raise AperiodicityError(
            f"{gen.spec_id}: only one letter occurs in the first {probe} "
            f"symbols"
        )
    period = _smallest_period(data)
    if period <= len(data) // 4:
        raise AperiodicityError(
            f"{gen.spec_id}: prefix of length {len(data)} has period "
            f"{period}"
        )


def _abelian_count(gen: WordGenerator, n: int, cap: int | None) -> int:
    fs, _ = factor_bytes(gen, n, cap)
    return len({parikh_of_bytes(w, 2) for w in fs})


def kplus1_formula(gen_y: WordGenerator, k: int, length: int,
                   cap: int | None = None) -> int:
    """Predicted (k+1)-binomial complexity of the phi^k-image at `length`.

    Decomposes length = 2^k n + r and combines edge-quotient counts of
    the base word with a correction that depends on its longest runs;
    run maxima still growing at the cap count as infinite, which matches
    how the correction cases read them.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if length < 0:
        raise ValueError("length must be >= 0")
    if len(gen_y.alphabet) != 2:
        raise BinowordsError("the predictor applies to binary base words")
    assert_aperiodic_looking(gen_y)
    block = 1 << k
    n, r = divmod(length, block)
    if n == 0:
        return tm_factor_formula(length)
    runs = run_maxima(gen_y, cap)
    m = runs.m if runs.m_exact else math.inf
    m_prime = runs.m_prime if runs.m_prime_exact else math.inf
    x_n = edge_quotients(gen_y, n, cap).x_count
    if r == 0:
        value = (block - 1) * x_n + _abelian_count(gen_y, n, cap)
        if n < m:
            value -= block
        elif n == m and m < m_prime:
            value -= 1
        return value
    quot = edge_quotients(gen_y, n, cap)
    x_n1 = edge_quotients(gen_y, n + 1, cap).x_count
    value = (r - 1) * x_n1 + (block - r - 1) * x_n + quot.y_count
    if n + 1 < m:
        value -= block
    elif n + 1 == m and m < m_prime:
        value -= block - r + 1
    elif n + 1 == m and m == m_prime and r <= block // 2:
        value -= block - 2 * (r - 1)
    return value
