"""Tests for block factorizations, boundary equivalence, and decoding."""

import math
import random
import re
from collections import Counter

import pytest

from binowords.binomials import binomial_coefficient, equivalent, signature
from binowords.core import BINARY, Word
from binowords.errors import BinowordsError, DecodeError
from binowords.generators import champernowne, factor_bytes, from_spec
from binowords.tmstructure import (
    FactorizationClass,
    PhiFactorization,
    PrefixSuffixPair,
    classify_factor,
    equiv_j,
    phi_apply,
    phi_factorizations,
    phi_image,
    tm_decode,
    transfer_check,
)

DEGENERATE = re.compile(r"^((01)*|(10)*|1(01)*|0(10)*)$")


def W(text):
    return Word.from_str(text, BINARY)


def factors_as_strings(gen, n):
    fs, _ = factor_bytes(gen, n)
    return sorted(gen.alphabet.decode(w) for w in fs)


def boundary_related(u, v, j):
    return any(
        equiv_j(PrefixSuffixPair(f1.p, f1.s, j),
                PrefixSuffixPair(f2.p, f2.s, j))
        for f1 in phi_factorizations(u, j)
        for f2 in phi_factorizations(v, j)
    )


class TestPhiImages:
    def test_letter_images(self):
        assert phi_image("0", 1) == "01"
        assert phi_image("1", 2) == "1001"
        assert phi_image("0", 3) == "01101001"
        assert phi_image("1", 0) == "1"

    def test_apply(self):
        assert phi_apply("01", 2) == "01101001"
        assert phi_apply("10", 1) == "1001"
        assert phi_apply("0110", 0) == "0110"

    def test_bad_inputs(self):
        with pytest.raises(ValueError):
            phi_image("2", 1)
        with pytest.raises(ValueError):
            phi_image("0", -1)
        with pytest.raises(ValueError):
            phi_apply("012", 1)


class TestPhiFactorizations:
    def test_both_letter_word_is_unique(self):
        facs = phi_factorizations("0110", 1)
        assert len(facs) == 1
        f = facs[0]
        assert (f.p, f.core, f.s) == ("", "01", "")
        assert f.ancestor == "01"
        assert set(f.ancestor) == {"0", "1"}

    def test_alternating_word_has_two(self):
        facs = phi_factorizations("0101", 1)
        assert len(facs) == 2
        assert (facs[0].p, facs[0].core, facs[0].s) == ("", "00", "")
        assert facs[0].ancestor == "00"
        assert (facs[1].p, facs[1].core, facs[1].s) == ("0", "1", "1")
        assert facs[1].a == "1" and facs[1].b == "1"
        assert facs[1].ancestor == "111"

    @pytest.mark.parametrize("letter", "01")
    @pytest.mark.parametrize("j", [1, 2, 3, 4])
    def test_exact_letter_images(self, letter, j):
        facs = phi_factorizations(phi_image(letter, j), j)
        assert len(facs) == 2
        exact = [f for f in facs if f.p == "" and f.s == ""]
        assert len(exact) == 1
        assert exact[0].core == letter

    def test_reconstruction(self):
        tm = from_spec("tm")
        for n in (3, 7, 12):
            for u in factors_as_strings(tm, n):
                for j in (1, 2):
                    if len(u) < (1 << j) - 1:
                        continue
                    for f in phi_factorizations(u, j):
                        assert f.reconstruct() == u
                        assert f.j == j

    def test_non_factor_gives_empty_list(self):
        assert phi_factorizations("0000", 1) == []
        assert phi_factorizations("111011", 2) == []

    def test_too_short_raises(self):
        with pytest.raises(ValueError):
            phi_factorizations("0", 2)
        with pytest.raises(ValueError):
            phi_factorizations("011", 3)

    def test_bad_j(self):
        with pytest.raises(ValueError):
            phi_factorizations("0110", 0)

    def test_two_splits_iff_degenerate(self):
        for length in range(1, 9):
            for code in range(1 << length):
                u = format(code, f"0{length}b")
                facs = phi_factorizations(u, 1)
                if not facs:
                    assert not DEGENERATE.match(u)
                    continue
                expect_two = bool(DEGENERATE.match(u))
                assert (len(facs) == 2) == expect_two, u

    def test_tm_factors_always_factorizable(self):
        tm = from_spec("tm")
        for j in (1, 2):
            for n in ((1 << j) - 1, 7, 11):
                if n < (1 << j) - 1:
                    continue
                for u in factors_as_strings(tm, n):
                    assert phi_factorizations(u, j), (u, j)

    def test_paired_splits_are_boundary_equivalent(self):
        tm = from_spec("tm")
        seen = 0
        for n in (3, 4, 7, 8):
            for u in factors_as_strings(tm, n):
                facs = phi_factorizations(u, 2)
                if len(facs) != 2:
                    continue
                f1, f2 = facs
                if not f1.core and not f2.core and u in ("010", "101"):
                    continue
                assert equiv_j(PrefixSuffixPair(f1.p, f1.s, 2),
                               PrefixSuffixPair(f2.p, f2.s, 2))
                seen += 1
        assert seen > 0


class TestEquivJ:
    def test_reflexive(self):
        rng = random.Random(7)
        for _ in range(40):
            j = rng.randint(1, 3)
            limit = (1 << j) - 1
            p = "".join(rng.choice("01")
                        for _ in range(rng.randint(0, limit)))
            s = "".join(rng.choice("01")
                        for _ in range(rng.randint(0, limit)))
            pair = PrefixSuffixPair(p, s, j)
            assert equiv_j(pair, pair)

    def test_swapped_half_images(self):
        left = PrefixSuffixPair("01", "10", 2)
        right = PrefixSuffixPair("10", "01", 2)
        assert equiv_j(left, right)

    def test_empty_versus_full_block(self):
        assert equiv_j(PrefixSuffixPair("", "", 2),
                       PrefixSuffixPair("01", "10", 2))

    def test_shift_across_boundary(self):
        assert equiv_j(PrefixSuffixPair("1", "010", 2),
                       PrefixSuffixPair("101", "0", 2))
        assert equiv_j(PrefixSuffixPair("101", "0", 2),
                       PrefixSuffixPair("1", "010", 2))

    def test_straddle_pair_not_related(self):
        assert not equiv_j(PrefixSuffixPair("0", "10", 2),
                           PrefixSuffixPair("01", "0", 2))

    def test_symmetry(self):
        rng = random.Random(11)
        pairs = []
        for _ in range(30):
            j = 2
            p = "".join(rng.choice("01") for _ in range(rng.randint(0, 3)))
            s = "".join(rng.choice("01") for _ in range(rng.randint(0, 3)))
            pairs.append(PrefixSuffixPair(p, s, j))
        for x in pairs:
            for y in pairs:
                assert equiv_j(x, y) == equiv_j(y, x)

    def test_j_mismatch(self):
        with pytest.raises(BinowordsError):
            equiv_j(PrefixSuffixPair("0", "", 1),
                    PrefixSuffixPair("0", "", 2))

    def test_pair_validation(self):
        with pytest.raises(ValueError):
            PrefixSuffixPair("01", "", 1)
        with pytest.raises(ValueError):
            PrefixSuffixPair("", "21", 2)
        with pytest.raises(ValueError):
            PrefixSuffixPair("", "", 0)


class TestClassify:
    def test_single_class(self):
        classes = classify_factor("1011")
        assert classes == [FactorizationClass("0", "1", 1)]
        assert classes[0].factor_length == 4
        assert classes[0].label == "S_{0,1}(1)"

    @pytest.mark.parametrize("length", range(1, 6))
    def test_odd_alternating(self, length):
        u = "10" * length + "1"
        classes = classify_factor(u)
        assert set(classes) == {
            FactorizationClass("", "1", length),
            FactorizationClass("0", "", length),
        }
        assert all(c.factor_length == len(u) for c in classes)

    @pytest.mark.parametrize("length", range(0, 5))
    def test_even_alternating(self, length):
        u = "01" * (length + 1)
        classes = classify_factor(u)
        assert set(classes) == {
            FactorizationClass("", "", length + 1),
            FactorizationClass("1", "1", length),
        }

    def test_distinct_classes_iff_degenerate(self):
        for length in range(1, 11):
            for code in range(1 << length):
                u = format(code, f"0{length}b")
                try:
                    classes = classify_factor(u)
                except BinowordsError:
                    continue
                assert (len(set(classes)) == 2) == bool(DEGENERATE.match(u))

    def test_lengths_always_match(self):
        tm = from_spec("tm")
        for n in (2, 5, 9):
            for u in factors_as_strings(tm, n):
                for c in classify_factor(u):
                    assert c.factor_length == len(u)

    def test_plain_label(self):
        assert FactorizationClass("", "", 3).label == "S(3)"
        assert FactorizationClass("0", "", 2).label == "S_{0,e}(2)"

    def test_unfactorizable_raises(self):
        with pytest.raises(BinowordsError):
            classify_factor("0000")

    def test_validation(self):
        with pytest.raises(ValueError):
            FactorizationClass("2", "", 1)
        with pytest.raises(ValueError):
            FactorizationClass("", "", -1)


class TestSameClassUnderTwoBinomial:
    @pytest.mark.parametrize("base", ["fib", "pd"])
    def test_classes_constant_on_classes(self, base):
        gen = from_spec(f"image(phi, {base})")
        for n in range(2, 21):
            groups = {}
            for u in factors_as_strings(gen, n):
                key = signature(W(u), 2)
                groups.setdefault(key, []).append(
                    frozenset(classify_factor(u))
                )
            for tagged in groups.values():
                assert len(set(tagged)) == 1


class TestPrefixSuffixRelation:
    @pytest.mark.parametrize("base", ["fib", "pd"])
    @pytest.mark.parametrize("k,j", [(1, 1), (2, 1), (2, 2)])
    def test_j_equivalence_matches_boundaries(self, base, k, j):
        gen = from_spec(f"image(phi^{k}, {base})")
        for n in (3, 4, 7, 8, 12, 13):
            if n < (1 << j) - 1:
                continue
            words = factors_as_strings(gen, n)
            sigs = {u: signature(W(u), j) for u in words}
            for i, u in enumerate(words):
                for v in words[i + 1:]:
                    assert (sigs[u] == sigs[v]) == boundary_related(u, v, j)


class TestKPlus1PrefixSuffix:
    @pytest.mark.parametrize("base", ["fib", "pd"])
    @pytest.mark.parametrize("k", [1, 2])
    def test_one_level_up(self, base, k):
        gen = from_spec(f"image(phi^{k}, {base})")
        for n in (4, 6, 9, 12, 16):
            if n < (1 << k) - 1:
                continue
            words = factors_as_strings(gen, n)
            sigs = {u: signature(W(u), k + 1) for u in words}
            for i, u in enumerate(words):
                for v in words[i + 1:]:
                    same_boundary_core = any(
                        f1.p == f2.p and f1.s == f2.s
                        and Counter(f1.core) == Counter(f2.core)
                        for f1 in phi_factorizations(u, k)
                        for f2 in phi_factorizations(v, k)
                    )
                    assert (sigs[u] == sigs[v]) == same_boundary_core, (u, v)


class TestOchsenschlager:
    @pytest.mark.parametrize("k", range(1, 8))
    def test_images_split_one_level_up(self, k):
        left = W(phi_image("0", k))
        right = W(phi_image("1", k))
        assert equivalent(left, right, k)
        assert not equivalent(left, right, k + 1)


class TestCoefficientsOfImages:
    def test_identities(self):
        rng = random.Random(20260822)
        for _ in range(300):
            u = "".join(rng.choice("01")
                        for _ in range(rng.randint(1, 30)))
            image = W(phi_apply(u, 1))
            n = len(u)
            zeros = u.count("0")
            assert binomial_coefficient(image, W("0")) == n
            assert (binomial_coefficient(image, W("01"))
                    == zeros + math.comb(n, 2))
            assert (binomial_coefficient(image, W("011"))
                    == binomial_coefficient(W(u), W("01"))
                    + math.comb(zeros, 2) + math.comb(n, 3))


class TestDecode:
    def test_exact_image(self):
        fib = from_spec("fib")
        y = fib.prefix(30)
        x = phi_apply(y, 2)
        assert tm_decode(x, 2) == ("", y)

    def test_round_trips(self):
        rng = random.Random(1234)
        done = 0
        while done < 200:
            k = rng.randint(1, 3)
            block = 1 << k
            y = "".join(rng.choice("01")
                        for _ in range(rng.randint(5, 30)))
            if "0" not in y or "1" not in y:
                continue
            image = phi_image(rng.choice("01"), k)
            u = image[block - rng.randint(0, block - 1):]
            tail_img = phi_image(rng.choice("01"), k)
            tail = tail_img[:rng.randint(0, block - 1)]
            x = u + phi_apply(y, k) + tail
            assert tm_decode(x, k) == (u, y)
            assert (u, y) in tm_decode(x, k, all_solutions=True)
            done += 1

    def test_shortest_split_preferred(self):
        x = "01" * 6
        assert tm_decode(x, 1) == ("", "0" * 6)
        everything = tm_decode(x, 1, all_solutions=True)
        assert ("0", "1" * 5) in everything
        assert len(everything) == 2

    def test_champernowne_rejected(self):
        with pytest.raises(DecodeError):
            tm_decode(champernowne().prefix(64), 2)

    def test_bad_inputs(self):
        with pytest.raises(ValueError):
            tm_decode("0110", 2)
        with pytest.raises(ValueError):
            tm_decode("011010", 0)
        with pytest.raises(ValueError):
            tm_decode("0120" * 4, 1)


class TestTransfer:
    def test_known_instances(self):
        assert transfer_check("0", "1", "0", 2)
        assert transfer_check("01", "10", "11", 3)
        assert transfer_check("1", "0", "0", 1)

    def test_random_instances(self):
        rng = random.Random(99)
        for _ in range(60):
            k = rng.randint(1, 3)
            u = "".join(rng.choice("01")
                        for _ in range(rng.randint(1, 8)))
            v = "".join(rng.choice("01")
                        for _ in range(rng.randint(1, 8)))
            v2 = "".join(rng.choice("01") for _ in range(len(v)))
            assert transfer_check(u, v, v2, k)

    def test_preconditions(self):
        with pytest.raises(ValueError):
            transfer_check("", "1", "0", 1)
        with pytest.raises(ValueError):
            transfer_check("0", "10", "0", 1)
        with pytest.raises(ValueError):
            transfer_check("0", "1", "0", 0)
