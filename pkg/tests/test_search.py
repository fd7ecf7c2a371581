from __future__ import annotations

import json
from itertools import combinations
from random import Random

import pytest

from diotuples.quad_ring import QuadInt, elem_key, format_elem, make_ring
from diotuples.search import (
    SearchConfig,
    brute_force_tuples,
    build_graph,
    enum_elements,
    find_cliques,
    run_campaign,
)
from diotuples.tuples import make_tuple, verify_tuple
from helpers import box_elements

R1 = make_ring(1)
R3 = make_ring(3)
M1 = QuadInt(R1, -1, 0)


def q1(x, y=0):
    return QuadInt(R1, x, y)


class TestEnumElements:
    def test_unit_counts(self):
        assert len(enum_elements(R1, 1)) == 4
        assert len(enum_elements(R3, 1)) == 6

    def test_far_half_ring(self):
        got = enum_elements(make_ring(163), 40)
        assert sorted(format_elem(e) for e in got) == sorted(
            str(s) for k in range(1, 7) for s in (k, -k)
        )

    def test_matches_box_oracle(self):
        rng = Random(21)
        for _ in range(12):
            D = rng.choice([1, 2, 3, 5, 7, 11, 15, 19])
            max_norm = rng.randrange(1, 80)
            ring = make_ring(D)
            got = enum_elements(ring, max_norm)
            assert got == sorted(box_elements(ring, max_norm), key=elem_key)
            assert len(set(got)) == len(got)

    def test_bad_bound(self):
        with pytest.raises(ValueError):
            enum_elements(R1, 0)


class TestBuildGraph:
    def test_complete_on_quadruple(self):
        g = build_graph([q1(1), q1(2), q1(5), q1(-24)], M1)
        assert g.edge_count == 6

    def test_no_edge(self):
        g = build_graph([q1(1), q1(3)], M1)
        assert g.edge_count == 0

    def test_empty(self):
        g = build_graph([], M1)
        assert g.edge_count == 0 and g.vertices == []

    def test_rejects_bad_vertices(self):
        with pytest.raises(ValueError):
            build_graph([q1(0), q1(1)], M1)
        with pytest.raises(ValueError):
            build_graph([q1(1), q1(1)], M1)

    def test_edges_match_pairwise_definition(self):
        elems = enum_elements(R1, 20)
        g = build_graph(elems, M1)
        edge_set = {frozenset(e) for e in g.edges()}
        from diotuples.tuples import pair_witness

        want = {
            frozenset((a, b))
            for a, b in combinations(elems, 2)
            if pair_witness(a, b, M1) is not None
        }
        assert edge_set == want


class TestFindCliques:
    def test_k4(self):
        g = build_graph([q1(1), q1(2), q1(5), q1(-24)], M1)
        cliques = find_cliques(g, 4)
        assert len(cliques) == 1
        assert sorted(format_elem(e) for e in cliques[0]) == ["-24", "1", "2", "5"]

    def test_k2_is_edge_list(self):
        elems = enum_elements(R1, 30)
        g = build_graph(elems, M1)
        cliques = {frozenset(c) for c in find_cliques(g, 2)}
        assert cliques == {frozenset(e) for e in g.edges()}

    def test_k_too_small(self):
        g = build_graph([q1(1)], M1)
        with pytest.raises(ValueError):
            find_cliques(g, 1)

    @pytest.mark.parametrize("D", [1, 2, 3, 5, 7, 11])
    def test_oracle_equivalence_sampled(self, D):
        ring = make_ring(D)
        n = QuadInt(ring, -1, 0)
        rng = Random(100 + D)
        for _ in range(4):
            max_norm = rng.randrange(5, 61)
            elems = enum_elements(ring, max_norm)
            g = build_graph(elems, n)
            for k in (3, 4):
                got = find_cliques(g, k)
                want = brute_force_tuples(elems, k, n)
                assert len(got) == len(set(got)) and set(got) == set(want)

    def test_literal_subset_filter_small(self):
        # on a tiny instance, compare against filtering every k-subset literally
        elems = enum_elements(R1, 12)
        g = build_graph(elems, M1)
        for k in (2, 3):
            literal = [
                tuple(sub)
                for sub in combinations(elems, k)
                if verify_tuple(make_tuple(R1, M1, sub)).ok
            ]
            assert set(find_cliques(g, k)) == set(literal)
            assert set(brute_force_tuples(elems, k, M1)) == set(literal)


class TestBruteForce:
    def test_k_exceeds_elements(self):
        assert brute_force_tuples([q1(1), q1(2)], 3, M1) == []

    def test_k2_matches_edges(self):
        elems = enum_elements(R1, 25)
        g = build_graph(elems, M1)
        assert {frozenset(c) for c in brute_force_tuples(elems, 2, M1)} == {
            frozenset(e) for e in g.edges()
        }


class TestQuadrupleProducts:
    def test_no_pair_product_is_square_in_found_quadruples(self):
        # in any D(-1) quadruple, no pairwise product can be a square
        from diotuples.quad_ring import sqrt_exact
        from helpers import chain_quadruples_zi

        cfg = SearchConfig(D_list=[1], max_norm=576, k=4, n="-1")
        quads = list(run_campaign(cfg).all_clique_sets()[1])
        quads += [frozenset(q) for q in chain_quadruples_zi(R1)]
        assert len(quads) >= 10
        for s in quads:
            elems = sorted(s, key=elem_key)
            for a, b in combinations(elems, 2):
                assert sqrt_exact(a * b) is None, (a, b)


class TestMonotonicity:
    def test_growing_norm_keeps_cliques(self):
        n = M1
        small = {frozenset(c) for c in find_cliques(build_graph(enum_elements(R1, 40), n), 3)}
        large = {frozenset(c) for c in find_cliques(build_graph(enum_elements(R1, 90), n), 3)}
        assert small <= large


class TestCampaign:
    def test_finds_example_quadruple(self, tmp_path):
        cfg = SearchConfig(D_list=[1], max_norm=576, k=4, n="-1")
        report = run_campaign(cfg)
        sets = report.all_clique_sets()[1]
        assert frozenset({q1(1), q1(2), q1(5), q1(-24)}) in sets
        assert report.total_cliques > 0
        # every reported clique re-verifies
        for s in sets:
            assert verify_tuple(make_tuple(R1, M1, s)).ok

    def test_symmetry_prune_equivalence(self):
        for D in (1, 3):
            base = dict(D_list=[D], max_norm=120, k=3, n="-1")
            on = run_campaign(SearchConfig(**base, symmetry_prune=True))
            off = run_campaign(SearchConfig(**base, symmetry_prune=False))
            assert on.all_clique_sets() == off.all_clique_sets()
            assert on.total_cliques == off.total_cliques

    def test_checkpoint_resume(self, tmp_path):
        path = str(tmp_path / "ck.json")
        cfg = SearchConfig(D_list=[1, 2, 3], max_norm=60, k=3, n="-1", checkpoint_path=path)
        first = run_campaign(cfg)
        with open(path) as f:
            saved = json.load(f)
        assert sorted(saved["completed"]) == ["1", "2", "3"]
        # drop one field and resume: the rest must be reused, results identical
        del saved["completed"]["2"]
        with open(path, "w") as f:
            json.dump(saved, f)
        second = run_campaign(cfg)
        assert first.all_clique_sets() == second.all_clique_sets()
        assert [r.to_json() for r in first.results][0] == [r.to_json() for r in second.results][0]

    def test_checkpoint_config_mismatch(self, tmp_path):
        path = str(tmp_path / "ck.json")
        run_campaign(SearchConfig(D_list=[1], max_norm=30, k=3, n="-1", checkpoint_path=path))
        other = SearchConfig(D_list=[1], max_norm=31, k=3, n="-1", checkpoint_path=path)
        with pytest.raises(ValueError, match="different configuration"):
            run_campaign(other)

    def test_parallel_matches_serial(self):
        base = dict(D_list=[1, 2, 5, 13], max_norm=80, k=3, n="-1")
        serial = run_campaign(SearchConfig(**base, jobs=1))
        parallel = run_campaign(SearchConfig(**base, jobs=2))
        assert serial.all_clique_sets() == parallel.all_clique_sets()
        assert [r.D for r in parallel.results] == [1, 2, 5, 13]

    def test_large_D_supported(self):
        # fields beyond D = 226 stay searchable; for D = 895 (3 mod 4) the ring
        # still has non-real elements of norm <= 224, e.g. (1+sqrt(-895))/2
        ring = make_ring(895)
        elems = enum_elements(ring, 224)
        assert any(e.y != 0 for e in elems)
        report = run_campaign(SearchConfig(D_list=[895], max_norm=224, k=5, n="-1"))
        assert report.total_cliques == 0

    def test_config_validation(self):
        with pytest.raises(ValueError):
            run_campaign(SearchConfig(D_list=[4], max_norm=10, k=3))
        with pytest.raises(ValueError):
            SearchConfig(D_list=[1], max_norm=0, k=3).validate()
        with pytest.raises(ValueError):
            SearchConfig(D_list=[1], max_norm=10, k=1).validate()

    def test_report_json_roundtrip(self, tmp_path):
        from diotuples.search import load_report, write_report

        cfg = SearchConfig(D_list=[1], max_norm=576, k=4, n="-1")
        report = run_campaign(cfg)
        path = str(tmp_path / "report.json")
        write_report(report, path)
        payload = load_report(path)
        assert payload["schema"] == 1
        assert payload["total_cliques"] == report.total_cliques
        ring = R1
        rebuilt = {
            frozenset(parse_many(group, ring))
            for rec in payload["results"][0]["cliques"]
            for group in rec.get("orbit", [rec["elems"]])
        }
        assert rebuilt == report.all_clique_sets()[1]


def parse_many(group, ring):
    from diotuples.quad_ring import elem_from_json

    return [elem_from_json(e, ring) for e in group]
