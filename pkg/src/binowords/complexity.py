"""Complexity profiles of infinite words and the matching closed forms.

Profiles count length-n factors up to equality (factor complexity) or up
to k-binomial equivalence (k = 1 being the abelian case).  The closed
forms cover the Thue-Morse word and images of Sturmian words under
powers of the Thue-Morse morphism.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .core import parikh_of_bytes
from .errors import BinowordsError, StabilizationError
from .generators import WordGenerator, configured_prefix_cap, factor_bytes


@dataclass(frozen=True)
class ComplexityProfile:
    """Counts for a contiguous range of factor lengths.

    kind is "factor", "abelian", or "binomial(k)"; values maps n to the
    count and prefix_used maps n to the prefix length that the factor
    extraction stabilized on.
    """

    kind: str
    generator_id: str
    values: dict[int, int] = field(compare=True)
    prefix_used: dict[int, int] = field(compare=True)

    def __getitem__(self, n: int) -> int:
        return self.values[n]

    def items(self):
        return sorted(self.values.items())

    @property
    def n_min(self) -> int:
        return min(self.values)

    @property
    def n_max(self) -> int:
        return max(self.values)

    def to_csv(self) -> str:
        lines = ["n,value,prefix_used"]
        for n, v in self.items():
            lines.append(f"{n},{v},{self.prefix_used.get(n, 0)}")
        return "\n".join(lines) + "\n"

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "generator": self.generator_id,
            "values": {str(n): v for n, v in self.items()},
            "prefix_used": {
                str(n): self.prefix_used.get(n, 0) for n in self.values
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True) + "\n"


def _normalize_kinds(kinds) -> list[tuple]:
    out = []
    for kind in kinds:
        if kind == "factor":
            out.append(("factor",))
        elif kind == "abelian":
            out.append(("binomial", 1, "abelian"))
        elif isinstance(kind, tuple) and kind[0] == "binomial":
            k = int(kind[1])
            if k < 1:
                raise ValueError("binomial order must be >= 1")
            out.append(("binomial", k, f"binomial({k})"))
        else:
            raise ValueError(f"unknown profile kind {kind!r}")
    return out


def _distinct_class_count(fs: set[bytes], n: int, k: int,
                          alphabet_size: int,
                          sorted_cache: list | None = None) -> int:
    if n == 0 or not fs:
        return 1 if n == 0 else 0
    if k == 1:
        return len({parikh_of_bytes(b, alphabet_size) for b in fs})
    if sorted_cache is not None:
        ordered = sorted_cache
    else:
        ordered = sorted(fs)
    matrix = kernels.signature_matrix(
        b"".join(ordered), len(ordered), n, alphabet_size, k
    )
    return kernels.distinct_row_count(matrix)


def complexity_table(gen: WordGenerator, kinds, n_max: int,
                     cap: int | None = None) -> dict[str, ComplexityProfile]:
    """Profiles for several kinds in one sweep over factor lengths.

    The factor set for each n is extracted once and shared by all
    requested kinds, which matters when the sets are large.
    """
    normalized = _normalize_kinds(kinds)
    size = len(gen.alphabet)
    values: dict[str, dict[int, int]] = {spec[-1]: {} for spec in normalized}
    used_by_n: dict[int, int] = {0: 0}
    for label in values:
        values[label][0] = 1
    needs_sort = any(spec[0] == "binomial" and spec[1] >= 2
                     for spec in normalized)
    for n in range(1, n_max + 1):
        fs, used = factor_bytes(gen, n, cap)
        used_by_n[n] = used
        ordered = sorted(fs) if needs_sort else None
        for spec in normalized:
            if spec[0] == "factor":
                values["factor"][n] = len(fs)
            else:
                _, k, label = spec
                values[label][n] = _distinct_class_count(
                    fs, n, k, size, sorted_cache=ordered
                )
    return {
        label: ComplexityProfile(
            kind=label,
            generator_id=gen.spec_id,
            values=vals,
            prefix_used=dict(used_by_n),
        )
        for label, vals in values.items()
    }


def factor_complexity(gen: WordGenerator, n_max: int,
                      cap: int | None = None) -> ComplexityProfile:
    return complexity_table(gen, ["factor"], n_max, cap)["factor"]


def binomial_complexity(gen: WordGenerator, k: int, n_max: int,
                        cap: int | None = None) -> ComplexityProfile:
    if k < 1:
        raise ValueError("binomial order must be >= 1")
    label = f"binomial({k})"
    return complexity_table(gen, [("binomial", k)], n_max, cap)[label]


def abelian_complexity(gen: WordGenerator, n_max: int,
                       cap: int | None = None) -> ComplexityProfile:
    table = complexity_table(gen, ["abelian"], n_max, cap)
    return table["abelian"]


# Closed forms.

def tm_factor_formula(n: int) -> int:
    """Number of distinct length-n factors of the Thue-Morse word."""
    if n < 0:
        raise ValueError("length must be >= 0")
    if n <= 2:
        return (1, 2, 4)[n]
    m = (n - 1).bit_length() - 1
    r = n - (1 << m)
    if r <= 1 << (m - 1):
        return 3 * (1 << m) + 4 * (r - 1)
    return 4 * (1 << m) + 2 * (r - 1)


def tm_binomial_formula(j: int, n: int) -> int:
    """Number of j-binomial classes of length-n Thue-Morse factors."""
    if j < 1:
        raise ValueError("binomial order must be >= 1")
    if n < 0:
        raise ValueError("length must be >= 0")
    block = 1 << j
    if n < block:
        return tm_factor_formula(n)
    if n % block == 0:
        return 3 * block - 3
    return 3 * block - 4


def sturmian_image_formula(k: int, length: int) -> int:
    """(k+1)-binomial complexity of the phi^k-image of a Sturmian word."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if length < 0:
        raise ValueError("length must be >= 0")
    block = 1 << k
    q, r = divmod(length, block)
    if q == 0:
        return tm_factor_formula(length)
    if q == 1 and r == 0:
        return 3 * block - 2
    if q == 1:
        return 3 * block + r - 1
    return (1 << (k + 2)) - 2


def sturmian_image_factor_formula(k: int, n: int) -> int:
    """Factor complexity of the phi^k-image of a Sturmian word."""
    if k < 0:
        raise ValueError("k must be >= 0")
    if n < 0:
        raise ValueError("length must be >= 0")
    if n <= 1 << k:
        return tm_factor_formula(n)
    return n + (1 << (k + 1)) - 1


# Profile comparison.

@dataclass(frozen=True)
class PrecReport:
    """Finite-range comparison of two profiles; no infinite claims."""

    left: str
    right: str
    n_min: int
    n_max: int
    strict: tuple[int, ...]
    equal: tuple[int, ...]
    greater: tuple[int, ...]
    required: int
    witnessed: bool

    def to_text(self) -> str:
        lines = [
            f"compare {self.left} vs {self.right} on [{self.n_min}, {self.n_max}]",
            f"strictly below at {len(self.strict)} points: "
            + _summarize(self.strict),
            f"equal at {len(self.equal)} points: " + _summarize(self.equal),
        ]
        if self.greater:
            lines.append(
                f"above at {len(self.greater)} points: "
                + _summarize(self.greater)
            )
        if self.witnessed:
            lines.append(
                f"strict growth witnessed up to n={self.n_max} "
                f"(>= {self.required} strict points; says nothing beyond "
                f"the tested range)"
            )
        else:
            lines.append(
                f"not witnessed: fewer than {self.required} strict points"
            )
        return "\n".join(lines) + "\n"


def _summarize(points, limit=12) -> str:
    if not points:
        return "-"
    shown = ", ".join(str(p) for p in points[:limit])
    if len(points) > limit:
        shown += f", ... ({len(points) - limit} more)"
    return shown


def prec_compare(a: ComplexityProfile, b: ComplexityProfile,
                 min_strict: int = 10) -> PrecReport:
    common = sorted(set(a.values) & set(b.values))
    if not common:
        raise BinowordsError(
            f"profiles {a.kind} and {b.kind} cover disjoint ranges"
        )
    strict = tuple(n for n in common if a[n] < b[n])
    equal = tuple(n for n in common if a[n] == b[n])
    greater = tuple(n for n in common if a[n] > b[n])
    return PrecReport(
        left=f"{a.generator_id}:{a.kind}",
        right=f"{b.generator_id}:{b.kind}",
        n_min=common[0],
        n_max=common[-1],
        strict=strict,
        equal=equal,
        greater=greater,
        required=min_strict,
        witnessed=len(strict) >= min_strict,
    )


# Window statistics that avoid materializing factor sets.

def _window_counts(arr, letter: int, n: int):
    cs = np.cumsum(arr == letter, dtype=np.int64)
    return cs[n - 1:] - np.concatenate(([0], cs[:-n]))


def weight_spread(gen: WordGenerator, n: int,
                  cap: int | None = None) -> tuple[int, int]:
    """Largest per-letter count spread over all length-n factors.

    Returns (spread, prefix_used).  Only the per-letter (min, max) pairs
    need to settle, so much longer prefixes are tractable than for full
    factor extraction.  A plateau must survive two further doublings (a
    4x prefix span) before it is trusted; words whose extremes move at
    even sparser events can still fool the heuristic, which is the usual
    finite-prefix caveat, not something a cap can rule out.
    """
    if n < 0:
        raise ValueError("length must be >= 0")
    if n == 0:
        return 0, 0
    cap = configured_prefix_cap() if cap is None else cap
    size = len(gen.alphabet)

    def measure(p):
        arr = np.frombuffer(gen.prefix_bytes(p), dtype=np.uint8)
        stats = []
        for c in range(size):
            win = _window_counts(arr, c, n)
            stats.append((int(win.min()), int(win.max())))
        return tuple(stats)

    def spread_of(stats):
        return max(mx - mn for mn, mx in stats)

    p_cur = min(max(4 * n, 1024), cap)
    if p_cur < n:
        raise StabilizationError(f"{gen.spec_id} weight spread", n, cap, 0, 0)
    cur = measure(p_cur)
    streak = 0
    while True:
        p_next = min(2 * p_cur, cap)
        if p_next == p_cur:
            raise StabilizationError(
                f"{gen.spec_id} weight spread", n, cap, spread_of(cur), -1
            )
        nxt = measure(p_next)
        if nxt == cur:
            # Extremes can sit still for one doubling and then move (they
            # jump at run-completion events spaced roughly quadratically),
            # so demand two agreeing doublings before trusting a plateau.
            streak += 1
            if streak >= 2:
                return spread_of(nxt), p_next
        else:
            streak = 0
        if p_next == cap:
            raise StabilizationError(
                f"{gen.spec_id} weight spread", n, cap,
                spread_of(nxt), spread_of(cur),
            )
        cur = nxt
        p_cur = p_next


def abelian_count_windows(gen: WordGenerator, n: int,
                          cap: int | None = None) -> tuple[int, int]:
    """Abelian complexity at one length via packed window Parikh vectors.

    Equivalent to counting distinct Parikh vectors of the length-n
    factors, but runs directly over sliding windows, so it scales to
    lengths where factor sets are too large to materialize.
    """
    if n < 0:
        raise ValueError("length must be >= 0")
    if n == 0:
        return 1, 0
    cap = configured_prefix_cap() if cap is None else cap
    size = len(gen.alphabet)
    bits = n.bit_length() + 1
    if size * bits > 63:
        raise ValueError("window counts do not fit the packing scheme")

    def measure(p):
        arr = np.frombuffer(gen.prefix_bytes(p), dtype=np.uint8)
        packed = None
        for c in range(size):
            win = _window_counts(arr, c, n)
            packed = win if packed is None else (packed << bits) | win
        return np.unique(packed)

    p_cur = min(max(4 * n, 1024), cap)
    if p_cur < n:
        raise StabilizationError(f"{gen.spec_id} abelian", n, cap, 0, 0)
    cur = measure(p_cur)
    streak = 0
    while True:
        p_next = min(2 * p_cur, cap)
        if p_next == p_cur:
            raise StabilizationError(
                f"{gen.spec_id} abelian", n, cap, len(cur), -1
            )
        nxt = measure(p_next)
        if len(nxt) == len(cur) and np.array_equal(nxt, cur):
            streak += 1
            if streak >= 2:
                return len(nxt), p_next
        else:
            streak = 0
        if p_next == cap:
            raise StabilizationError(
                f"{gen.spec_id} abelian", n, cap, len(nxt), len(cur)
            )
        cur = nxt
        p_cur = p_next
