"""Named verification suites tying the library against itself.

Every suite bundles the cross-checks for one identity family or one
infinite word: closed forms against brute-force enumeration, congruence
and cancellation laws on random inputs, graph-shape facts, and the
certificate constructions.  Suites run at two scales; the quick scale
is meant for smoke runs and the full scale for the complete evidence.

    report = run_suite("ochsenschlager", full=True)
    print(report.to_text())

Checks record failures with up to four counterexamples instead of
stopping at the first, so one run paints the whole picture.
"""

import math
import re
import time
from dataclasses import dataclass
from itertools import permutations, product
from random import Random

import numpy as np

from .binomials import (
    abelian_mass,
    binomial_coefficient,
    equivalent,
    power_delta,
    signature,
)
from .complexity import (
    abelian_count_windows,
    complexity_table,
    prec_compare,
    sturmian_image_factor_formula,
    sturmian_image_formula,
    tm_binomial_formula,
    tm_factor_formula,
    weight_spread,
)
from .core import BINARY, TERNARY, Word, parikh
from .errors import BinowordsError, DecodeError
from .generators import (
    H_MORPHISM,
    factor_bytes,
    fibonacci,
    fixed_point,
    g_word,
    grillenberger_word,
    champernowne,
    h_word,
    image_of,
    period_doubling,
    sturmian,
    tau_g_word,
    thue_morse,
)
from .morphisms import PHI, Morphism, g_value, image_coefficient, michel_delta
from .rauzy import build_graph, kplus1_formula
from .tmstructure import (
    PrefixSuffixPair,
    classify_factor,
    equiv_j,
    phi_apply,
    phi_factorizations,
    phi_image,
    tm_decode,
    transfer_check,
)

# Morphisms that only the suites need: the running Parikh-collinear
# example, the rank-2 counterexample, and two classifiers' edge cases.
PC_MORPHISM = Morphism.from_dict({"0": "000111", "1": "0110"})
RANK2_MORPHISM = Morphism.from_dict(
    {"0": "000222", "1": "0001112", "2": "2222000000111"}
)
IDENTITY2_MORPHISM = Morphism.from_dict({"0": "0", "1": "1"})
ERASING2_MORPHISM = Morphism.from_dict({"0": "", "1": ""})

_DEGENERATE = re.compile(r"^((01)*|(10)*|1(01)*|0(10)*)$")


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one named check inside a suite."""

    name: str
    passed: int
    failed: int
    examples: tuple
    note: str = ""

    @property
    def ok(self) -> bool:
        return self.failed == 0


class Checker:
    """Accumulates pass/fail counts and keeps a few counterexamples."""

    def __init__(self, name: str, note: str = ""):
        self.name = name
        self.note = note
        self.passed = 0
        self.failed = 0
        self.examples: list[str] = []

    def check(self, condition, detail: str = "") -> bool:
        if condition:
            self.passed += 1
        else:
            self.failed += 1
            if len(self.examples) < 4:
                self.examples.append(detail)
        return bool(condition)

    def result(self) -> CheckResult:
        return CheckResult(
            self.name, self.passed, self.failed,
            tuple(self.examples), self.note,
        )


@dataclass(frozen=True)
class SuiteReport:
    """All checks of one suite run, with wall-clock time."""

    suite: str
    scale: str
    checks: tuple[CheckResult, ...]
    elapsed: float

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def assertions(self) -> int:
        return sum(c.passed + c.failed for c in self.checks)

    def to_text(self) -> str:
        verdict = "PASS" if self.ok else "FAIL"
        lines = [
            f"suite {self.suite} ({self.scale}): {verdict} "
            f"({len(self.checks)} checks, {self.assertions} assertions, "
            f"{self.elapsed:.2f} s)"
        ]
        for c in self.checks:
            mark = "ok  " if c.ok else "FAIL"
            line = f"  [{mark}] {c.name}: {c.passed} passed"
            if c.failed:
                line += f", {c.failed} failed"
            if c.note:
                line += f" ({c.note})"
            lines.append(line)
            for ex in c.examples:
                lines.append(f"         counterexample: {ex}")
        return "\n".join(lines) + "\n"


_SUITES: dict = {}


def _suite(name: str):
    def wrap(fn):
        _SUITES[name] = fn
        return fn
    return wrap


def suite_names() -> list[str]:
    return sorted(_SUITES)


def run_suite(name: str, full: bool = False) -> SuiteReport:
    """Run one suite at quick scale, or at full scale when asked."""
    if name not in _SUITES:
        known = ", ".join(suite_names())
        raise BinowordsError(f"unknown suite {name!r}; known suites: {known}")
    start = time.perf_counter()
    checkers = _SUITES[name](full)
    elapsed = time.perf_counter() - start
    checks = tuple(
        c.result() if isinstance(c, Checker) else c for c in checkers
    )
    return SuiteReport(name, "full" if full else "quick", checks, elapsed)


def run_all(full: bool = False) -> list[SuiteReport]:
    return [run_suite(name, full) for name in suite_names()]


# Shared helpers.

def _rng(tag: str) -> Random:
    return Random(f"binowords:{tag}")


def _word_strings(gen, n: int, cap=None) -> list[str]:
    """Sorted length-n factors of a generator as plain strings."""
    raw, _ = factor_bytes(gen, n, cap)
    symbols = gen.alphabet.symbols
    return sorted("".join(symbols[b] for b in w) for w in raw)


def _rand_text(rng: Random, symbols: str, lo: int, hi: int) -> str:
    return "".join(rng.choice(symbols) for _ in range(rng.randint(lo, hi)))


def _shuffled(rng: Random, text: str) -> str:
    letters = list(text)
    rng.shuffle(letters)
    return "".join(letters)


def _loop_labels(graph) -> set:
    return {lab for (src, lab, tgt) in graph.edges if src == tgt}


def _loops_at(graph, vertex) -> set:
    return {lab for (src, lab, tgt) in graph.edges
            if src == tgt == vertex}


# Equivalence and congruence laws on random inputs.

@_suite("ochsenschlager")
def _ochsenschlager(full: bool):
    """phi^k(0) and phi^k(1) agree at level k and split at level k+1."""
    k_max = 7 if full else 5
    c = Checker("image-pair splits exactly at level k+1")
    for k in range(1, k_max + 1):
        u = Word.from_str(phi_image("0", k))
        v = Word.from_str(phi_image("1", k))
        c.check(equivalent(u, v, k), f"k={k}: images not k-equivalent")
        c.check(not equivalent(u, v, k + 1),
                f"k={k}: images still (k+1)-equivalent")
    return [c]


@_suite("cancellation")
def _cancellation(full: bool):
    """Common left or right context never changes a k-equivalence."""
    trials = 250 if full else 80
    rng = _rng("cancellation")
    c = Checker("k-equivalence of uv,uw matches v,w (both sides)")
    for _ in range(trials):
        alpha = rng.choice((BINARY, TERNARY))
        k = rng.randint(1, 3)
        u = _rand_text(rng, alpha.symbols, 0, 6)
        mode = rng.randrange(3)
        if mode == 2 and len(alpha) > 2:
            mode = 0
        if mode == 0:
            n = rng.randint(1, 8)
            v = _rand_text(rng, alpha.symbols, n, n)
            w = _rand_text(rng, alpha.symbols, n, n)
        elif mode == 1:
            v = _rand_text(rng, alpha.symbols, 1, 8)
            w = _shuffled(rng, v)
        else:
            z = _rand_text(rng, alpha.symbols, 0, 4)
            v = phi_image("0", k) + z
            w = phi_image("1", k) + z
        wu = Word.from_str(u, alpha)
        wv, ww = Word.from_str(v, alpha), Word.from_str(w, alpha)
        base = equivalent(wv, ww, k)
        c.check(equivalent(wu + wv, wu + ww, k) == base,
                f"left: u={u!r} v={v!r} w={w!r} k={k}")
        c.check(equivalent(wv + wu, ww + wu, k) == base,
                f"right: u={u!r} v={v!r} w={w!r} k={k}")
    return [c]


@_suite("w35")
def _w35(full: bool):
    """xy and yx agree at level k exactly when x,y agree at level k-1."""
    trials = 300 if full else 100
    max_len = 12 if full else 10
    rng = _rng("w35")
    c = Checker("circular shift at k versus the pair at k-1")
    for _ in range(trials):
        alpha = rng.choice((BINARY, TERNARY))
        k = rng.randint(2, 4)
        n = rng.randint(1, max_len)
        x = _rand_text(rng, alpha.symbols, n, n)
        y = _shuffled(rng, x) if rng.random() < 0.5 else \
            _rand_text(rng, alpha.symbols, n, n)
        wx, wy = Word.from_str(x, alpha), Word.from_str(y, alpha)
        lhs = equivalent(wx + wy, wy + wx, k)
        rhs = equivalent(wx, wy, k - 1)
        c.check(lhs == rhs, f"x={x!r} y={y!r} k={k}: {lhs} vs {rhs}")
    return [c]


@_suite("transfer")
def _transfer(full: bool):
    """A (k-1)-fold image commutes with equal-length k-fold images."""
    trials = 120 if full else 30
    rng = _rng("transfer")
    pinned = Checker("pinned commuting triples")
    for u, v, v2, k in (("0", "1", "1", 1), ("01", "0", "1", 2),
                        ("1", "01", "10", 3)):
        pinned.check(transfer_check(u, v, v2, k),
                     f"u={u} v={v} v2={v2} k={k}")
    rnd = Checker("random commuting triples")
    for _ in range(trials):
        k = rng.randint(1, 3)
        u = _rand_text(rng, "01", 1, 5)
        v = _rand_text(rng, "01", 1, 5)
        v2 = _rand_text(rng, "01", len(v), len(v))
        rnd.check(transfer_check(u, v, v2, k),
                  f"u={u} v={v} v2={v2} k={k}")
    return [pinned, rnd]


@_suite("michel")
def _michel(full: bool):
    """Coefficient gaps of image pairs collapse to two closed forms."""
    trials = 300 if full else 100
    rng = _rng("michel")
    c = Checker("gap at 01^k, and at 01^(k+1) for abelian pairs")
    for _ in range(trials):
        k = rng.randint(1, 4)
        u = _rand_text(rng, "01", 1, 8)
        shuffled = rng.random() < 0.5
        v = _shuffled(rng, u) if shuffled else \
            _rand_text(rng, "01", len(u), len(u))
        wu, wv = Word.from_str(u), Word.from_str(v)
        first, second = michel_delta(wu, wv, k)
        phi_k = PHI.power(k)
        fu, fv = phi_k.apply(wu), phi_k.apply(wv)
        pat_k = Word.from_str("0" + "1" * k)
        pat_k1 = Word.from_str("0" + "1" * (k + 1))
        direct_first = (binomial_coefficient(fu, pat_k)
                        - binomial_coefficient(fv, pat_k))
        direct_second = (binomial_coefficient(fu, pat_k1)
                         - binomial_coefficient(fv, pat_k1))
        c.check(first == direct_first and second == direct_second,
                f"u={u} v={v} k={k}: returned gaps differ from direct")
        scale = 1 << ((k - 1) * (k - 2) // 2)
        c.check(first == scale * (u.count("0") - v.count("0")),
                f"u={u} v={v} k={k}: first closed form")
        if parikh(wu) == parikh(wv):
            scale2 = 1 << (k * (k - 1) // 2)
            pat = Word.from_str("01")
            want = scale2 * (binomial_coefficient(wu, pat)
                             - binomial_coefficient(wv, pat))
            c.check(second == want,
                    f"u={u} v={v} k={k}: second closed form")
    return [c]


@_suite("power-difference")
def _power_difference(full: bool):
    """Coefficient gaps of n-th powers scale linearly in n."""
    trials = 200 if full else 60
    rng = _rng("power-difference")
    c = Checker("gap of x^n,y^n equals n times the gap of x,y")
    for _ in range(trials):
        klen = rng.randint(2, 3)
        if klen == 2:
            x = _rand_text(rng, "01", 2, 8)
            y = _shuffled(rng, x)
        else:
            p = _rand_text(rng, "01", 0, 3)
            s = _rand_text(rng, "01", 0, 3)
            x = p + phi_image("0", 2) + s
            y = p + phi_image("1", 2) + s
        e = Word.from_str(_rand_text(rng, "01", klen, klen))
        wx, wy = Word.from_str(x), Word.from_str(y)
        if not equivalent(wx, wy, klen - 1):
            continue
        n = rng.randint(1, 5)
        delta = power_delta(wx, wy, n, e)
        direct = (binomial_coefficient(wx * n, e)
                  - binomial_coefficient(wy * n, e))
        base = (binomial_coefficient(wx, e)
                - binomial_coefficient(wy, e))
        c.check(delta == direct == n * base,
                f"x={x} y={y} n={n} e={e}: {delta} {direct} {n * base}")
    return [c]


@_suite("abelian-class-sum")
def _abelian_class_sum(full: bool):
    """Coefficients summed over one abelian class give a product of
    binomial numbers, one per letter."""
    trials = 250 if full else 80
    rng = _rng("abelian-class-sum")
    c = Checker("class sum equals the per-letter product")
    for _ in range(trials):
        alpha = rng.choice((BINARY, TERNARY))
        u = Word.from_str(_rand_text(rng, alpha.symbols, 1, 14), alpha)
        total = rng.randint(1, 4)
        m = [0] * len(alpha)
        for _ in range(total):
            m[rng.randrange(len(alpha))] += 1
        base = "".join(alpha.symbols[i] * m[i] for i in range(len(alpha)))
        class_words = {"".join(p) for p in permutations(base)}
        class_sum = sum(
            binomial_coefficient(u, Word.from_str(w, alpha))
            for w in class_words
        )
        prod = 1
        pv = parikh(u)
        for i, mi in enumerate(m):
            prod *= math.comb(pv[i], mi)
        ok = class_sum == abelian_mass(u, tuple(m)) == prod
        c.check(ok, f"u={u} m={tuple(m)}: {class_sum} vs {prod}")
    return [c]


@_suite("g-function")
def _g_function(full: bool):
    """The letterwise image-coefficient product only sees the letter
    counts of its first argument when the morphism is Parikh-collinear."""
    trials = 200 if full else 60
    rng = _rng("g-function")
    c = Checker("value is constant on abelian classes")
    for _ in range(trials):
        f = rng.choice((PHI, PC_MORPHISM))
        w = _rand_text(rng, "01", 1, 10)
        w2 = _shuffled(rng, w)
        e = _rand_text(rng, "01", len(w), len(w))
        val = g_value(f, Word.from_str(w), Word.from_str(e))
        val2 = g_value(f, Word.from_str(w2), Word.from_str(e))
        c.check(val == val2, f"w={w} w2={w2} e={e}: {val} vs {val2}")
    return [c]


@_suite("coefficients-of-images")
def _coefficients_of_images(full: bool):
    """Three exact identities for coefficients of one-step images."""
    trials = 300 if full else 100
    rng = _rng("coefficients-of-images")
    c0 = Checker("count of 0 in the image is the source length")
    c01 = Checker("count of 01 combines zeros and the length pairs")
    c011 = Checker("count of 011 pulls back to the source's 01 count")
    for _ in range(trials):
        u = Word.from_str(_rand_text(rng, "01", 1, 30))
        fu = PHI.apply(u)
        n = len(u)
        z = parikh(u)[0]
        c0.check(binomial_coefficient(fu, Word.from_str("0")) == n,
                 f"u={u}")
        want01 = z + math.comb(n, 2)
        c01.check(binomial_coefficient(fu, Word.from_str("01")) == want01,
                  f"u={u}")
        want011 = (binomial_coefficient(u, Word.from_str("01"))
                   + math.comb(z, 2) + math.comb(n, 3))
        c011.check(binomial_coefficient(fu, Word.from_str("011")) == want011,
                   f"u={u}")
    return [c0, c01, c011]


@_suite("image-coefficient")
def _image_coefficient(full: bool):
    """Coefficients of f(u) computed from u's signature alone agree
    with direct counting on the image."""
    trials = 500 if full else 150
    rng = _rng("image-coefficient")
    c = Checker("signature route equals direct counting")
    morphs = (PHI, PC_MORPHISM, RANK2_MORPHISM, H_MORPHISM)
    for _ in range(trials):
        f = rng.choice(morphs)
        src = f.source.symbols
        tgt = f.target.symbols
        max_e = 4 if len(tgt) == 2 else 3
        u = Word.from_str(_rand_text(rng, src, 1, 12), f.source)
        e = Word.from_str(_rand_text(rng, tgt, 1, max_e), f.target)
        via_sig = image_coefficient(f, signature(u, len(e)), e)
        direct = binomial_coefficient(f.apply(u), e)
        c.check(via_sig == direct,
                f"f={src}->{tgt} u={u} e={e}: {via_sig} vs {direct}")
    return [c]


@_suite("pc-characterization")
def _pc_characterization(full: bool):
    """Parikh-collinear morphisms push level k-1 pairs to level k;
    a rank-2 morphism does not."""
    trials = 500 if full else 150
    rng = _rng("pc-characterization")
    fwd = Checker("collinear images climb one equivalence level")
    for _ in range(trials):
        k = rng.randint(2, 4)
        if k == 2:
            u = _rand_text(rng, "01", 1, 10)
            v = _shuffled(rng, u)
        else:
            p = _rand_text(rng, "01", 0, 4)
            s = _rand_text(rng, "01", 0, 4)
            u = p + phi_image("0", k - 1) + s
            v = p + phi_image("1", k - 1) + s
        wu, wv = Word.from_str(u), Word.from_str(v)
        if not fwd.check(equivalent(wu, wv, k - 1),
                         f"premise broke: u={u} v={v} k={k}"):
            continue
        f = rng.choice((PHI, PC_MORPHISM))
        fwd.check(equivalent(f.apply(wu), f.apply(wv), k),
                  f"u={u} v={v} k={k}")
    conv = Checker("a rank-2 morphism drops an abelian pair at level 2")
    found = None
    src = RANK2_MORPHISM.source
    for total in range(2, 5):
        for base in product(src.symbols, repeat=total):
            words = sorted({"".join(p) for p in permutations(base)})
            for i, u in enumerate(words):
                for v in words[i + 1:]:
                    wu = Word.from_str(u, src)
                    wv = Word.from_str(v, src)
                    if not equivalent(
                        RANK2_MORPHISM.apply(wu),
                        RANK2_MORPHISM.apply(wv), 2,
                    ):
                        found = (u, v)
                        break
                if found:
                    break
            if found:
                break
        if found:
            break
    conv.check(found is not None, "no separating abelian pair found")
    if found:
        conv.note = f"witness pair {found[0]!r}, {found[1]!r}"
    return [fwd, conv]


@_suite("morphism-classify")
def _morphism_classify(full: bool):
    """Exact classification of five reference morphisms."""
    del full
    expected = (
        (PHI, "binary flip-doubling", (1, True, True, False, "0")),
        (PC_MORPHISM, "collinear non-constant", (1, True, False, False, "0")),
        (RANK2_MORPHISM, "rank-2 ternary", (2, False, False, False, "0")),
        (IDENTITY2_MORPHISM, "binary identity", (2, False, False, False, None)),
        (ERASING2_MORPHISM, "totally erasing", (0, True, True, True, None)),
    )
    c = Checker("rank, collinearity, constancy, erasure, prolongability")
    for f, label, want in expected:
        got = f.classify()
        tup = (got.rank, got.is_parikh_collinear, got.is_parikh_constant,
               got.is_totally_erasing, got.is_prolongable_on)
        c.check(tup == want, f"{label}: {tup} != {want}")
    return [c]


# Complexity growth and boundedness of particular words.

@_suite("rank2-growth")
def _rank2_growth(full: bool):
    """The rank-2 fixed point's abelian counts keep climbing along
    powers of two."""
    j_max = 11 if full else 8
    gen = fixed_point(RANK2_MORPHISM, "0")
    vals = []
    for j in range(2, j_max + 1):
        count, _ = abelian_count_windows(gen, 1 << j)
        vals.append(count)
    grow = Checker("strictly increasing along the subsequence",
                   note=f"counts {vals}")
    for i in range(len(vals) - 1):
        grow.check(vals[i + 1] > vals[i],
                   f"n=2^{i + 3}: {vals[i + 1]} <= {vals[i]}")
    pin = Checker("frozen leading values")
    want = [13, 21, 27, 43, 54, 68, 101, 118, 129, 160][:len(vals)]
    pin.check(vals == want, f"got {vals}, want {want}")
    return [grow, pin]


@_suite("pc-bounded")
def _pc_bounded(full: bool):
    """Low-order binomial counts of the collinear fixed point stop
    growing: each maximum is already reached in the lower half."""
    n_max = 512 if full else 128
    k_max = 3 if full else 2
    gen = fixed_point(PC_MORPHISM, "0")
    kinds = [("binomial", k) for k in range(1, k_max + 1)]
    table = complexity_table(gen, kinds, n_max)
    sat = Checker("maximum attained by the half-range")
    pins = {1: 5, 2: 46, 3: 258}
    notes = []
    for k in range(1, k_max + 1):
        prof = table[f"binomial({k})"]
        vals = dict(prof.items())
        top = max(vals.values())
        first = min(n for n, v in vals.items() if v == top)
        sat.check(first <= n_max // 2,
                  f"k={k}: max {top} first reached at n={first}")
        sat.check(top == pins[k], f"k={k}: max {top} != {pins[k]}")
        notes.append(
            f"k={k}: max {top} at n={first}, "
            f"{len(set(vals.values()))} distinct values"
        )
    sat.note = "; ".join(notes)
    return [sat]


@_suite("tm-complexity")
def _tm_complexity(full: bool):
    """Factor and binomial counts of the flip-doubling fixed point
    match their closed forms."""
    n_fac = 512 if full else 128
    j_max = 3 if full else 2
    n_bin = 128 if full else 64
    tm = thue_morse()
    fac = Checker("factor counts equal the two-regime closed form")
    prof = complexity_table(tm, ["factor"], n_fac)["factor"]
    for n in range(n_fac + 1):
        fac.check(prof[n] == tm_factor_formula(n),
                  f"n={n}: {prof[n]} != {tm_factor_formula(n)}")
    if full:
        fac.check(prof[512] == 1534, f"p(512)={prof[512]}")
    binc = Checker("binomial counts saturate on the divisibility split")
    kinds = [("binomial", j) for j in range(1, j_max + 1)]
    table = complexity_table(tm, kinds, n_bin)
    for j in range(1, j_max + 1):
        prof_j = table[f"binomial({j})"]
        for n in range(n_bin + 1):
            binc.check(prof_j[n] == tm_binomial_formula(j, n),
                       f"j={j} n={n}: {prof_j[n]}")
    return [fac, binc]


@_suite("tm-image-property")
def _tm_image_property(full: bool):
    """k-fold images of Fibonacci and period-doubling inherit the fixed
    point's binomial counts at every level up to k."""
    k_max = 3 if full else 2
    n_max = 96 if full else 48
    c = Checker("image counts equal the fixed point's closed form")
    for base in (fibonacci(), period_doubling()):
        for k in range(1, k_max + 1):
            img = image_of(PHI.power(k), base)
            kinds = [("binomial", j) for j in range(1, k + 1)]
            table = complexity_table(img, kinds, n_max)
            for j in range(1, k + 1):
                prof = table[f"binomial({j})"]
                for n in range(n_max + 1):
                    c.check(
                        prof[n] == tm_binomial_formula(j, n),
                        f"{base.spec_id} k={k} j={j} n={n}: {prof[n]}",
                    )
    return [c]


@_suite("sturmian-2bin")
def _sturmian_2bin(full: bool):
    """Sturmian words have 2-binomial count n + 1."""
    n_max = 200 if full else 64
    c = Checker("count is n + 1 for two directive sequences")
    for gen in (fibonacci(), sturmian((1, 2))):
        prof = complexity_table(gen, [("binomial", 2)], n_max)["binomial(2)"]
        for n in range(1, n_max + 1):
            c.check(prof[n] == n + 1,
                    f"{gen.spec_id} n={n}: {prof[n]}")
    return [c]


@_suite("sturmian-formulas")
def _sturmian_formulas(full: bool):
    """Images of Sturmian words match the two image closed forms."""
    n_max = 96 if full else 48
    gens = [fibonacci()]
    if full:
        gens.append(sturmian((1, 2)))
    binc = Checker("level k+1 counts match the image formula")
    fac = Checker("factor counts match the affine tail formula")
    for base in gens:
        for k in (1, 2):
            img = image_of(PHI.power(k), base)
            table = complexity_table(img, [("binomial", k + 1), "factor"],
                                     n_max)
            prof_b = table[f"binomial({k + 1})"]
            prof_f = table["factor"]
            for n in range(n_max + 1):
                binc.check(
                    prof_b[n] == sturmian_image_formula(k, n),
                    f"{base.spec_id} k={k} n={n}: {prof_b[n]}",
                )
                fac.check(
                    prof_f[n] == sturmian_image_factor_formula(k, n),
                    f"{base.spec_id} k={k} n={n}: {prof_f[n]}",
                )
    return [binc, fac]


@_suite("kplus1-formula")
def _kplus1_formula(full: bool):
    """The graph-based predictor reproduces brute-force level k+1
    counts of k-fold images."""
    n_max = 96 if full else 48
    bases = [fibonacci(), period_doubling()]
    if full:
        bases.append(tau_g_word())
    c = Checker("predictor equals enumeration pointwise")
    for base in bases:
        for k in (1, 2):
            img = image_of(PHI.power(k), base)
            prof = complexity_table(
                img, [("binomial", k + 1)], n_max
            )[f"binomial({k + 1})"]
            for n in range(n_max + 1):
                want = kplus1_formula(base, k, n)
                c.check(prof[n] == want,
                        f"{base.spec_id} k={k} n={n}: {prof[n]} != {want}")
    return [c]


@_suite("prec-chain")
def _prec_chain(full: bool):
    """On the double image of Fibonacci the first three binomial counts
    refine each other strictly and the fourth reaches the factor count."""
    n_max = 96 if full else 48
    n4 = 64 if full else 32
    img = image_of(PHI.power(2), fibonacci())
    kinds = [("binomial", k) for k in (1, 2, 3)] + ["factor"]
    table = complexity_table(img, kinds, n_max)
    b1, b2, b3 = (table[f"binomial({k})"] for k in (1, 2, 3))
    fac = table["factor"]
    strict = Checker("strict refinement steps are witnessed")
    r12 = prec_compare(b1, b2, 10)
    r23 = prec_compare(b2, b3, 10)
    strict.check(r12.witnessed, f"only {len(r12.strict)} strict points")
    strict.check(r23.witnessed, f"only {len(r23.strict)} strict points")
    strict.note = (f"b1<b2 at {len(r12.strict)} points, "
                   f"b2<b3 at {len(r23.strict)} points of {n_max}")
    chain = Checker("counts are pointwise monotone in the order")
    for n in range(n_max + 1):
        chain.check(b1[n] <= b2[n] <= b3[n] <= fac[n], f"n={n}")
    steps = Checker("abelian counts move by at most one per length")
    for n in range(n_max):
        steps.check(abs(b1[n + 1] - b1[n]) <= 1, f"n={n}")
    top = Checker("level 4 equals the factor count")
    t4 = complexity_table(img, [("binomial", 4), "factor"], n4)
    for n in range(n4 + 1):
        top.check(t4["binomial(4)"][n] == t4["factor"][n], f"n={n}")
    return [strict, chain, steps, top]


@_suite("word-h")
def _word_h(full: bool):
    """The ternary chain word: strict chain below the factor count,
    level 3 saturation, unbounded abelian growth, square-root spread."""
    n_chain = 256 if full else 64
    n_b3 = 128 if full else 48
    j_ab = 11 if full else 8
    j_sp = 12 if full else 9
    h = h_word()
    table = complexity_table(
        h, [("binomial", 1), ("binomial", 2), "factor"], n_chain
    )
    b1, b2, fac = (table[k] for k in ("binomial(1)", "binomial(2)", "factor"))
    chain = Checker("strict chain from length six on")
    for n in range(6, n_chain + 1):
        chain.check(b1[n] < b2[n] < fac[n],
                    f"n={n}: {b1[n]}, {b2[n]}, {fac[n]}")
    sat = Checker("level 3 equals the factor count")
    t3 = complexity_table(h, [("binomial", 3), "factor"], n_b3)
    for n in range(n_b3 + 1):
        sat.check(t3["binomial(3)"][n] == t3["factor"][n], f"n={n}")
    grow = Checker("abelian counts climb along powers of two")
    prev = None
    vals = []
    for j in range(2, j_ab + 1):
        count, _ = abelian_count_windows(h, 1 << j, cap=1 << 26)
        vals.append(count)
        if prev is not None:
            grow.check(count > prev, f"n=2^{j}: {count} <= {prev}")
        prev = count
    grow.note = f"counts {vals}"
    spread = Checker("letter-count spread stays within a factor-two "
                     "band around sqrt(n)")
    ratios = []
    for j in range(6, j_sp + 1):
        n = 1 << j
        s, _ = weight_spread(h, n, cap=1 << 26)
        ratios.append(s / math.sqrt(n))
    spread.check(max(ratios) <= 2 * min(ratios),
                 f"ratios {[round(r, 3) for r in ratios]}")
    spread.note = f"spread/sqrt(n) in [{min(ratios):.3f}, {max(ratios):.3f}]"
    return [chain, sat, grow, spread]


@_suite("period-doubling")
def _period_doubling_suite(full: bool):
    """Level 2 meets the factor count exactly on powers of two plus the
    lone length three; level 3 stays strictly below; level 4 agrees on
    the whole tested range."""
    n2 = 64 if full else 32
    n3 = 48 if full else 32
    n4 = 48 if full else 24
    pd = period_doubling()
    t2 = complexity_table(pd, [("binomial", 2), "factor"], n2)
    b2, fac = t2["binomial(2)"], t2["factor"]
    eq_set = {n for n in (1, 2, 3, 4, 8, 16, 32, 64) if n <= n2}
    split = Checker("equality exactly on powers of two and length three")
    for n in range(1, n2 + 1):
        if n in eq_set:
            split.check(b2[n] == fac[n], f"n={n}: {b2[n]} != {fac[n]}")
        else:
            split.check(b2[n] < fac[n], f"n={n}: {b2[n]} !< {fac[n]}")
    split.check(b2[3] == fac[3] == 5, "length-3 counts moved")
    split.note = ("the five length-3 factors are pairwise inequivalent "
                  "at level 2, so n=3 joins the powers of two")
    below = Checker("level 3 strictly below the factor count")
    t3 = complexity_table(pd, [("binomial", 3), "factor"], n3)
    rep = prec_compare(t3["binomial(3)"], t3["factor"], 10)
    below.check(rep.witnessed and not rep.greater,
                f"{len(rep.strict)} strict, {len(rep.greater)} above")
    below.note = f"strict at {len(rep.strict)} of {n3} lengths"
    agree = Checker("level 4 equals the factor count on the tested range",
                    note="finite-range observation only")
    t4 = complexity_table(pd, [("binomial", 4), "factor"], n4)
    for n in range(n4 + 1):
        agree.check(t4["binomial(4)"][n] == t4["factor"][n], f"n={n}")
    return [split, below, agree]


# Abelian Rauzy graph shape facts.

@_suite("boundaries")
def _boundaries(full: bool):
    """Edge labels of aperiodic binary words always contain both mixed
    pairs and one equal pair, and a missing loop reappears flipped one
    order higher; Sturmian graphs keep their two-vertex template."""
    n_max = 64 if full else 24
    labels = Checker("mixed labels present and one equal label present")
    transfer = Checker("missing equal loop flips at the next order")
    for gen in (fibonacci(), period_doubling(), tau_g_word()):
        graphs = {n: build_graph(gen, n) for n in range(1, n_max + 2)}
        for n in range(1, n_max + 1):
            labs = graphs[n].edge_labels()
            labels.check(("0", "1") in labs and ("1", "0") in labs,
                         f"{gen.spec_id} n={n}: mixed labels missing")
            labels.check(("0", "0") in labs or ("1", "1") in labs,
                         f"{gen.spec_id} n={n}: no equal label")
            loops_n = _loop_labels(graphs[n])
            loops_next = _loop_labels(graphs[n + 1])
            for a in "01":
                if (a, a) not in loops_n:
                    flip = "1" if a == "0" else "0"
                    transfer.check(
                        (flip, flip) in loops_next,
                        f"{gen.spec_id} n={n}: no ({a},{a}) loop and no "
                        f"flipped loop at n+1",
                    )
    shape = Checker("Sturmian graphs: two vertices, saturated template, "
                    "no heavy (1,1) loop next to a light (0,0) loop")
    for gen in (fibonacci(), sturmian((2, 1, 1))):
        for n in range(1, n_max + 1):
            g = build_graph(gen, n)
            shape.check(g.vertex_count == 2,
                        f"{gen.spec_id} n={n}: {g.vertex_count} vertices")
            loops = [e for e in g.edges if e[0] == e[2]]
            inter = {lab for (s, lab, t) in g.edges if s != t}
            if n == 1:
                shape.check(g.edge_count == 3 and len(loops) == 1,
                            f"{gen.spec_id} n=1: {g.edge_count} edges")
            else:
                shape.check(g.edge_count == 4 and len(loops) == 2,
                            f"{gen.spec_id} n={n}: {g.edge_count} edges")
                shape.check(inter == {("0", "1"), ("1", "0")},
                            f"{gen.spec_id} n={n}: inter labels {inter}")
                heavy = max(g.vertices, key=lambda v: v[1])
                light = min(g.vertices, key=lambda v: v[1])
                forbidden = (("1", "1") in _loops_at(g, heavy)
                             and ("0", "0") in _loops_at(g, light))
                shape.check(not forbidden,
                            f"{gen.spec_id} n={n}: forbidden loop layout")
    return [labels, transfer, shape]


@_suite("walnut-facts")
def _walnut_facts(full: bool):
    """Finite search confirms the two positional facts about the
    flip-doubling fixed point, and the odd-order graphs carry both
    loops at both vertices."""
    m_max = 64 if full else 16
    m_graph = 16 if full else 8
    tm = thue_morse()
    arr = np.frombuffer(tm.prefix_bytes(1 << 15), dtype=np.uint8)
    even = Checker("even starts bounded by the letter one")
    odd = Checker("odd starts bounded by the letter zero")
    for m in range(1, m_max + 1):
        gap = 2 * m + 1
        idx = np.arange(0, len(arr) - gap, 2)
        even.check(bool(np.any((arr[idx] == 1) & (arr[idx + gap] == 1))),
                   f"m={m}: no even-start window closed by ones")
        idx = np.arange(1, len(arr) - gap, 2)
        odd.check(bool(np.any((arr[idx] == 0) & (arr[idx + gap] == 0))),
                  f"m={m}: no odd-start window closed by zeros")
    loops = Checker("odd orders carry both loops at every vertex")
    g1 = build_graph(tm, 1)
    loops.check(("0", "0") in _loop_labels(g1), "order 1 lost its loop")
    for m in range(1, m_graph + 1):
        g = build_graph(tm, 2 * m + 1)
        loops.check(g.vertex_count == 2 and g.edge_count == 6,
                    f"m={m}: {g.vertex_count} vertices, {g.edge_count} edges")
        for v in g.vertices:
            loops.check(
                {("0", "0"), ("1", "1")} <= _loops_at(g, v),
                f"m={m}: vertex {v} lacks a loop",
            )
    return [even, odd, loops]


# Factorization structure of image factors.

@_suite("fac-classes")
def _fac_classes(full: bool):
    """Level-2 equivalent factors of one-step images land in the same
    boundary classes."""
    n_max = 30 if full else 20
    c = Checker("signature groups share their class sets")
    for base in (fibonacci(), period_doubling()):
        img = image_of(PHI, base)
        for n in range(2, n_max + 1):
            groups: dict = {}
            for w in _word_strings(img, n):
                groups.setdefault(
                    signature(Word.from_str(w), 2), []
                ).append(w)
            for members in groups.values():
                if len(members) < 2:
                    continue
                sets = [
                    frozenset((cl.left, cl.right, cl.n)
                              for cl in classify_factor(w))
                    for w in members
                ]
                c.check(all(s == sets[0] for s in sets),
                        f"{base.spec_id} n={n}: {members}")
    return [c]


@_suite("prefix-suffix")
def _prefix_suffix(full: bool):
    """Level-j equivalence of image factors is exactly the boundary-pair
    matching of their block factorizations."""
    c = Checker("equivalence holds iff related boundary pairs exist")
    if full:
        k_max = 3
        lengths = None
    else:
        k_max = 2
        lengths = (3, 4, 7, 8, 12, 13, 16, 20)
    for base in (fibonacci(), period_doubling()):
        for k in range(1, k_max + 1):
            img = image_of(PHI.power(k), base)
            for j in range(1, k + 1):
                span = lengths if lengths else range((1 << j) - 1, 41)
                for n in span:
                    if n < (1 << j) - 1:
                        continue
                    words = _word_strings(img, n)
                    pair_lists = {
                        w: [PrefixSuffixPair(f.p, f.s, j)
                            for f in phi_factorizations(w, j)]
                        for w in words
                    }
                    reps: list = []
                    ids: dict = {}
                    for ps in pair_lists.values():
                        for p in ps:
                            if p in ids:
                                continue
                            for i, r in enumerate(reps):
                                if equiv_j(p, r):
                                    ids[p] = i
                                    break
                            else:
                                ids[p] = len(reps)
                                reps.append(p)
                    id_sets = {
                        w: frozenset(ids[p] for p in pair_lists[w])
                        for w in words
                    }
                    sigs = {w: signature(Word.from_str(w), j)
                            for w in words}
                    for i, u in enumerate(words):
                        for v in words[i + 1:]:
                            lhs = sigs[u] == sigs[v]
                            rhs = bool(id_sets[u] & id_sets[v])
                            c.check(
                                lhs == rhs,
                                f"{base.spec_id} k={k} j={j} n={n}: "
                                f"{u} vs {v}: {lhs}/{rhs}",
                            )
    return [c]


@_suite("kplus1-prefix-suffix")
def _kplus1_prefix_suffix(full: bool):
    """Level k+1 equivalence of k-fold image factors means sharing a
    boundary pair together with the letter counts of the middle."""
    n_max = 40 if full else 16
    c = Checker("equivalence holds iff a full triple is shared")
    for base in (fibonacci(), period_doubling()):
        for k in (1, 2):
            img = image_of(PHI.power(k), base)
            for n in range(max(1, (1 << k) - 1), n_max + 1):
                words = _word_strings(img, n)
                triples = {
                    w: {(f.p, f.s,
                         (f.ancestor.count("0"), f.ancestor.count("1")))
                        for f in phi_factorizations(w, k)}
                    for w in words
                }
                sigs = {w: signature(Word.from_str(w), k + 1)
                        for w in words}
                for i, u in enumerate(words):
                    for v in words[i + 1:]:
                        lhs = sigs[u] == sigs[v]
                        rhs = bool(triples[u] & triples[v])
                        c.check(
                            lhs == rhs,
                            f"{base.spec_id} k={k} n={n}: {u} vs {v}",
                        )
    return [c]


@_suite("factorization-shape")
def _factorization_shape(full: bool):
    """Block factorizations: at most two per word, exactly two on the
    degenerate alternating family, and perfect reconstruction."""
    len1 = 14 if full else 12
    extra = 6 if full else 4
    one = Checker("one-block splits: count bound, degeneracy, rebuild")
    for n in range(1, len1 + 1):
        for tup in product("01", repeat=n):
            s = "".join(tup)
            fs = phi_factorizations(s, 1)
            one.check(len(fs) <= 2, f"{s}: {len(fs)} splits")
            one.check((len(fs) == 2) == bool(_DEGENERATE.match(s)),
                      f"{s}: {len(fs)} splits vs pattern")
            one.check(all(f.reconstruct() == s for f in fs),
                      f"{s}: bad rebuild")
    deep = Checker("higher blocks: count bound and rebuild")
    for j in (2, 3):
        block = 1 << j
        for n in range(block - 1, block + extra + 1):
            for tup in product("01", repeat=n):
                s = "".join(tup)
                fs = phi_factorizations(s, j)
                deep.check(len(fs) <= 2, f"j={j} {s}: {len(fs)}")
                deep.check(all(f.reconstruct() == s for f in fs),
                           f"j={j} {s}: bad rebuild")
    cover = Checker("long fixed-point factors always split")
    tm = thue_morse()
    for n in (7, 12):
        for w in _word_strings(tm, n):
            for j in (1, 2):
                cover.check(len(phi_factorizations(w, j)) >= 1,
                            f"{w} j={j}: no factorization")
    return [one, deep, cover]


@_suite("decode")
def _decode(full: bool):
    """Round trips through the block decoder, plus pinned edge cases."""
    trials = 200 if full else 60
    rng = _rng("decode")
    rt = Checker("decode inverts tail + image + head")
    for _ in range(trials):
        k = rng.randint(1, 3)
        block = 1 << k
        y = _rand_text(rng, "01", 5, 30)
        if "0" not in y or "1" not in y:
            y = "01" + y[2:]
        head_len = rng.randrange(block)
        head = phi_image(rng.choice("01"), k)[block - head_len:]
        tail = phi_image(rng.choice("01"), k)[:rng.randrange(block)]
        x = head + phi_apply(y, k) + tail
        got = tm_decode(x, k)
        rt.check(got == (head, y),
                 f"k={k} y={y}: got {got}")
        rt.check((head, y) in tm_decode(x, k, all_solutions=True),
                 f"k={k} y={y}: missing from solution list")
    edge = Checker("pinned decodings")
    edge.check(tm_decode(phi_apply("0110", 2), 2) == ("", "0110"),
               "exact image did not decode to itself")
    sols = tm_decode("01" * 6, 1, all_solutions=True)
    edge.check(sols == [("", "000000"), ("0", "11111")],
               f"alternating word: {sols}")
    try:
        tm_decode(champernowne().prefix(64), 2)
        edge.check(False, "counting word decoded as an image")
    except DecodeError:
        edge.check(True)
    return [rt, edge]


# The three splitting constructions.

@_suite("constructions")
def _constructions(full: bool):
    """Certificates that each refinement level separates somewhere:
    counting word growth, the marker-letter word and its projection,
    and the doubling-concatenation hierarchy."""
    checks = []

    n_ch = 17 if full else 13
    kinds = [("binomial", k) for k in (1, 2, 3, 4)]
    table = complexity_table(champernowne(), kinds, n_ch, cap=1 << 24)
    champ = Checker("counting word splits three consecutive levels")
    needs = (10, 10, 10) if full else (10, 10, 6)
    counts = []
    for (a, b), need in zip(((1, 2), (2, 3), (3, 4)), needs):
        pa, pb = table[f"binomial({a})"], table[f"binomial({b})"]
        strict = sum(1 for n in range(1, n_ch + 1) if pa[n] < pb[n])
        counts.append(strict)
        champ.check(strict >= need,
                    f"b{a}<b{b}: only {strict} strict points")
    champ.note = f"strict points {counts} up to n={n_ch}"
    checks.append(champ)

    t_max = 9 if full else 4
    g = g_word()
    tg = tau_g_word()
    hay_g = g.prefix(4096)
    hay_t = tg.prefix(4096)
    marker = Checker("marker-letter certificates split level k from k+1")
    proj = Checker("binary projection keeps the certificates")
    for k in (1, 2, 3):
        x0, x1 = phi_image("0", k), phi_image("1", k)
        for t in range(t_max + 1):
            wa, wb = x0 + "α" * t, x1 + "α" * t
            marker.check(wa in hay_g and wb in hay_g,
                         f"k={k} t={t}: not factors")
            a = Word.from_str(wa, g.alphabet)
            b = Word.from_str(wb, g.alphabet)
            marker.check(
                equivalent(a, b, k) and not equivalent(a, b, k + 1),
                f"k={k} t={t}: wrong split",
            )
            pa, pb = x0 + "1" * t, x1 + "1" * t
            proj.check(pa in hay_t and pb in hay_t,
                       f"k={k} t={t}: not factors")
            a = Word.from_str(pa)
            b = Word.from_str(pb)
            proj.check(
                equivalent(a, b, k) and not equivalent(a, b, k + 1),
                f"k={k} t={t}: wrong split",
            )
    checks.extend([marker, proj])

    checks.extend(_grillenberger_checks(full))
    return checks


def _grillenberger_checks(full: bool):
    """Certificates inside the doubling-concatenation hierarchy."""
    t_max = 9 if full else 4
    levels = []
    d = ["0", "1"]
    for _ in range(3):
        u = "".join(d)
        levels.append(u)
        d = [u + x + y for x in d for y in d]
    u3 = "".join(d)

    shape = Checker("level sizes and the generator's tables agree")
    shape.check([len(w) for w in levels + [u3]] == [2, 16, 384, 110592],
                "segment lengths moved")
    shape.check(len(d) == 256 and len(d[0]) == 432, "level-3 family size")
    gen = grillenberger_word()
    symbols = gen.alphabet.symbols
    decode = lambda bs: "".join(symbols[b] for b in bs)
    shape.check([decode(w) for w in gen.d3] == d,
                "generator level-3 family differs")
    shape.check(decode(gen.u3) == u3, "generator concatenation differs")

    unique = Checker("exactly one level-3 collision among the 256")
    groups: dict = {}
    for i, w in enumerate(d):
        groups.setdefault(signature(Word.from_str(w), 3), []).append(i)
    multi = sorted(v for v in groups.values() if len(v) > 1)
    unique.check(len(groups) == 255 and multi == [[105, 150]],
                 f"{len(groups)} classes, collisions {multi}")

    d1 = ["01" + x + y for x in "01" for y in "01"]
    u1, u2 = levels[1], levels[2]
    d2 = [u1 + x + y for x in d1 for y in d1]
    pairs = (
        (1, d1[1], d1[2], u1),
        (2, d2[6], d2[9], u2),
        (3, d[105], d[150], u3),
    )
    block = len(u3) + 2 * len(d[0])
    hay = gen.prefix(152 * block)
    cert = Checker("each level pair splits k from k+1, extensions too")
    for k, a, b, seg in pairs:
        for t in range(t_max + 1):
            ea, eb = a + seg[:t], b + seg[:t]
            cert.check(ea in hay and eb in hay,
                       f"k={k} t={t}: extended words not factors")
            wa, wb = Word.from_str(ea), Word.from_str(eb)
            cert.check(
                equivalent(wa, wb, k) and not equivalent(wa, wb, k + 1),
                f"k={k} t={t}: wrong split",
            )
    return [shape, unique, cert]
