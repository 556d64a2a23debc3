"""Tests for abelian Rauzy graphs, run maxima, and the complexity predictor."""

import math

import pytest

from binowords.complexity import (
    abelian_complexity,
    binomial_complexity,
    sturmian_image_formula,
    tm_factor_formula,
)
from binowords.core import parikh_of_bytes
from binowords.errors import AperiodicityError, BinowordsError
from binowords.generators import (
    Morphism,
    fibonacci,
    fixed_point,
    from_spec,
    h_word,
    period_doubling,
    sturmian,
    thue_morse,
)
from binowords.rauzy import (
    AbelianRauzyGraph,
    EdgeQuotients,
    assert_aperiodic_looking,
    build_graph,
    edge_quotients,
    kplus1_formula,
    run_maxima,
)


def periodic_01():
    return fixed_point(
        Morphism.from_dict({"0": "01", "1": "01"}), "0", "per01"
    )


def zeros():
    return fixed_point(
        Morphism.from_dict({"0": "00", "1": "1"}), "0", "zeros"
    )


class TestGraphShapes:
    @pytest.mark.parametrize("m", range(1, 17))
    def test_tm_even_orders(self, m):
        g = build_graph(thue_morse(), 2 * m)
        assert g.vertex_count == 3
        assert g.edge_count == 6
        assert sorted(v[1] for v in g.vertices) == [m - 1, m, m + 1]
        loops = g.loop_labels_by_vertex()
        assert list(loops) == [v for v in g.vertices if v[1] == m]
        assert loops[next(iter(loops))] == {("0", "0"), ("1", "1")}

    @pytest.mark.parametrize("m", range(1, 17))
    def test_tm_odd_orders(self, m):
        g = build_graph(thue_morse(), 2 * m + 1)
        assert g.vertex_count == 2
        assert g.edge_count == 6
        loops = g.loop_labels_by_vertex()
        assert set(loops) == set(g.vertices)
        for labels in loops.values():
            assert labels == {("0", "0"), ("1", "1")}

    def test_fibonacci_edge_counts(self):
        fib = fibonacci()
        assert build_graph(fib, 1).edge_count == 3
        for n in range(2, 65):
            assert build_graph(fib, n).edge_count == 4

    def test_fibonacci_y_counts(self):
        fib = fibonacci()
        for n in range(1, 65):
            assert edge_quotients(fib, n).y_count == 6

    @pytest.mark.parametrize("directive", [(1,), (2, 1), (1, 2, 1), (3,)])
    def test_sturmian_order_one(self, directive):
        g = build_graph(sturmian(directive), 1)
        assert g.vertex_count == 2
        assert g.edge_count == 3
        assert len(g.loops()) == 1

    @pytest.mark.parametrize("directive", [(1,), (2, 1), (1, 2, 1), (3,)])
    def test_sturmian_template(self, directive):
        gen = sturmian(directive)
        for n in range(2, 65):
            g = build_graph(gen, n)
            assert g.vertex_count == 2
            loops = g.loops()
            assert len(loops) == 2
            labels = g.edge_labels()
            assert {("0", "1"), ("1", "0")} <= labels
            heavy = max(g.vertices, key=lambda v: v[1])
            light = min(g.vertices, key=lambda v: v[1])
            by_vertex = g.loop_labels_by_vertex()
            forbidden = (
                ("1", "1") in by_vertex.get(heavy, set())
                and ("0", "0") in by_vertex.get(light, set())
            )
            assert not forbidden

    def test_bad_order(self):
        with pytest.raises(ValueError):
            build_graph(thue_morse(), 0)

    def test_dot_output(self):
        g = build_graph(fibonacci(), 5)
        dot = g.to_dot()
        assert dot.startswith("digraph rauzy5 {")
        assert dot.count("->") == g.edge_count
        assert "crimson" in dot
        assert 'w=' in dot
        assert g.to_dot() == dot

    def test_json_round_trip(self):
        import json

        g = build_graph(thue_morse(), 6)
        doc = json.loads(g.to_json())
        assert doc["order"] == 6
        assert len(doc["vertices"]) == g.vertex_count
        assert len(doc["edges"]) == g.edge_count
        rebuilt = {
            (tuple(e["source"]), tuple(e["label"]), tuple(e["target"]))
            for e in doc["edges"]
        }
        assert rebuilt == {(s, t_label, t) for s, t_label, t in g.edges}


class TestGraphInvariants:
    GENS = ["tm", "fib", "pd", "tau-g", "sturmian:2,1,1"]
    ORDERS = [1, 2, 3, 5, 8, 13, 21]

    @pytest.mark.parametrize("name", GENS)
    def test_vertex_count_is_abelian_complexity(self, name):
        gen = from_spec(name)
        profile = abelian_complexity(gen, max(self.ORDERS))
        for n in self.ORDERS:
            assert build_graph(gen, n).vertex_count == profile[n]

    @pytest.mark.parametrize("name", GENS)
    def test_edge_equation_and_loops(self, name):
        gen = from_spec(name)
        for n in self.ORDERS:
            g = build_graph(gen, n)
            for src, (a, b), tgt in g.edges:
                ia = g.alphabet.symbols.index(a)
                ib = g.alphabet.symbols.index(b)
                moved = list(src)
                moved[ia] -= 1
                moved[ib] += 1
                assert tuple(moved) == tgt
                assert ((src, (a, b), tgt) in g.loops()) == (a == b)

    @pytest.mark.parametrize("name", GENS)
    def test_aperiodic_edge_excess(self, name):
        gen = from_spec(name)
        for n in self.ORDERS:
            g = build_graph(gen, n)
            assert g.edge_count >= g.vertex_count + 1

    @pytest.mark.parametrize("name", GENS)
    def test_x_count_equals_edge_count(self, name):
        gen = from_spec(name)
        for n in self.ORDERS:
            assert (edge_quotients(gen, n).x_count
                    == build_graph(gen, n).edge_count)

    @pytest.mark.parametrize("name", GENS)
    def test_quotient_bounds(self, name):
        gen = from_spec(name)
        for n in self.ORDERS:
            q = edge_quotients(gen, n)
            assert q.yl_count <= q.x_count
            assert q.yr_count <= q.x_count
            assert q.y_count == q.yl_count + q.yr_count


class TestEdgeQuotients:
    def test_periodic_brute_force(self):
        gen = periodic_01()
        text = gen.prefix_bytes(512)
        for n in range(1, 9):
            fs = {bytes(text[i:i + n + 1]) for i in range(len(text) - n)}
            xs = {(w[0], parikh_of_bytes(w[1:-1], 2), w[-1]) for w in fs}
            yl = {(w[0], parikh_of_bytes(w[1:], 2)) for w in fs}
            yr = {(parikh_of_bytes(w[:-1], 2), w[-1]) for w in fs}
            q = edge_quotients(gen, n)
            assert q.x_count == len(xs)
            assert q.yl_count == len(yl)
            assert q.yr_count == len(yr)
            assert q.x_count == build_graph(gen, n).edge_count

    def test_periodic_graph_is_tight(self):
        gen = periodic_01()
        g = build_graph(gen, 3)
        assert g.vertex_count == g.edge_count == 2
        assert not g.loops()
        even = build_graph(gen, 4)
        assert even.vertex_count == 1
        assert len(even.loops()) == 2

    def test_ternary_rejected(self):
        with pytest.raises(BinowordsError):
            edge_quotients(h_word(), 3)

    def test_bad_order(self):
        with pytest.raises(ValueError):
            edge_quotients(fibonacci(), 0)

    def test_json_dict(self):
        q = edge_quotients(fibonacci(), 3)
        doc = q.to_json_dict()
        assert doc["y_count"] == doc["yl_count"] + doc["yr_count"]
        assert doc["order"] == 3


class TestRunMaxima:
    def test_known_words(self):
        cases = {
            "fib": (1, 2),
            "pd": (1, 3),
            "tm": (2, 2),
        }
        for name, (m, m_prime) in cases.items():
            runs = run_maxima(from_spec(name))
            assert (runs.m, runs.m_prime) == (m, m_prime)
            assert runs.m_exact and runs.m_prime_exact

    def test_tau_g_unbounded_side(self):
        runs = run_maxima(from_spec("tau-g"), cap=1 << 16)
        assert runs.m == 2
        assert runs.m_exact
        assert not runs.m_prime_exact
        assert runs.m_prime > 1000
        assert ">=" in runs.describe()

    def test_degenerate_single_letter(self):
        runs = run_maxima(zeros(), cap=1 << 14)
        assert runs.m == 0
        assert runs.m_exact
        assert not runs.m_prime_exact

    def test_describe(self):
        assert run_maxima(fibonacci()).describe().startswith("m = 1, m' = 2")

    def test_ternary_rejected(self):
        with pytest.raises(BinowordsError):
            run_maxima(h_word())


class TestAperiodicGate:
    def test_periodic_rejected(self):
        with pytest.raises(AperiodicityError):
            assert_aperiodic_looking(periodic_01())

    def test_single_letter_rejected(self):
        with pytest.raises(AperiodicityError):
            assert_aperiodic_looking(zeros())

    @pytest.mark.parametrize("name", ["tm", "fib", "pd", "tau-g"])
    def test_aperiodic_words_pass(self, name):
        assert_aperiodic_looking(from_spec(name))

    def test_formula_rejects_periodic_base(self):
        with pytest.raises(AperiodicityError):
            kplus1_formula(periodic_01(), 1, 10)


class TestKplus1Formula:
    @pytest.mark.parametrize("base_name,k", [
        ("fib", 1), ("pd", 1), ("fib", 2), ("pd", 2),
    ])
    def test_matches_brute_force(self, base_name, k):
        base = from_spec(base_name)
        image = from_spec(f"image(phi^{k}, {base_name})")
        profile = binomial_complexity(image, k + 1, 48)
        for n in range(0, 49):
            assert kplus1_formula(base, k, n) == profile[n], n

    def test_matches_sturmian_closed_form(self):
        fib = fibonacci()
        for k in (1, 2):
            for n in range(1, 65):
                assert (kplus1_formula(fib, k, n)
                        == sturmian_image_formula(k, n))

    def test_short_lengths_use_tm_values(self):
        fib = fibonacci()
        for n in range(0, 8):
            assert kplus1_formula(fib, 3, n) == tm_factor_formula(n)

    def test_bad_arguments(self):
        with pytest.raises(ValueError):
            kplus1_formula(fibonacci(), 0, 4)
        with pytest.raises(ValueError):
            kplus1_formula(fibonacci(), 1, -1)
        with pytest.raises(BinowordsError):
            kplus1_formula(h_word(), 1, 4)
