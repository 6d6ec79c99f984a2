from __future__ import annotations

import math
from fractions import Fraction
from itertools import product

import numpy as np
import pytest

from tourlab.construct import (
    BadProbability,
    BigTournament,
    NotMultiple,
    StarTooBig,
    blowup_group_count,
    build_blowup,
    build_tnp,
    build_transversal,
)
from tourlab.core import cyclic3, induced, pair_count, transitive


class TestTnp:
    def test_probability_one_is_transitive(self):
        g = build_tnp(25, 1, seed=3)
        assert g.bit_array().all()
        assert induced(g, [0, 5, 9, 20]) == transitive(4)

    def test_probability_zero(self):
        assert not build_tnp(25, 0, seed=3).bit_array().any()

    def test_bad_probability(self):
        with pytest.raises(BadProbability):
            build_tnp(10, Fraction(3, 2), seed=0)
        with pytest.raises(BadProbability):
            build_tnp(10, Fraction(-1, 2), seed=0)

    def test_seed_determinism(self):
        a = build_tnp(100, Fraction(1, 2), seed=42)
        b = build_tnp(100, Fraction(1, 2), seed=42)
        assert a == b
        assert a != build_tnp(100, Fraction(1, 2), seed=43)

    def test_edge_count_concentration(self):
        # pinned seeds; 4 sqrt(m)/2 band around m/2 at p=1/2
        m = pair_count(200)
        band = 4 * math.sqrt(m) / 2
        for seed in range(1, 21):
            ones = int(build_tnp(200, Fraction(1, 2), seed=seed).bit_array().sum())
            assert abs(ones - m / 2) <= band, (seed, ones)

    def test_exact_rational_rate(self):
        # mean of C(400,2) draws at p = 1/3 stays within 4 sigma
        g = build_tnp(400, Fraction(1, 3), seed=9)
        m = pair_count(400)
        rate = g.bit_array().mean()
        sigma = math.sqrt((1 / 3) * (2 / 3) / m)
        assert abs(rate - 1 / 3) <= 4 * sigma


class TestTransversal:
    def test_part_arithmetic(self):
        g = build_transversal(60, 6, cyclic3(), seed=4)
        assert g.provenance["pattern_h"] == 3
        # parts of size 10 each for V1..V3, remainder 30
        assert g.n - 3 * (60 // 6) == 30

    @pytest.mark.parametrize("pattern", [cyclic3(), transitive(4)])
    def test_between_part_orientations_exhaustive(self, pattern):
        n, h = 60, 6
        size = n // h
        g = build_transversal(n, h, pattern, seed=11)
        k = pattern.h
        for i in range(k):
            for j in range(i + 1, k):
                want = pattern.edge_bit(i, j)
                for u in range(i * size, (i + 1) * size):
                    for v in range(j * size, (j + 1) * size):
                        assert g.edge_bit(u, v) == want

    def test_every_transversal_induces_pattern(self):
        n, h = 30, 6
        size = n // h
        pattern = cyclic3()
        g = build_transversal(n, h, pattern, seed=8)
        for tv in product(*[range(i * size, (i + 1) * size) for i in range(3)]):
            assert induced(g, tv).bits == pattern.bits

    def test_errors(self):
        with pytest.raises(NotMultiple):
            build_transversal(61, 6, cyclic3(), seed=0)
        with pytest.raises(StarTooBig):
            build_transversal(60, 3, transitive(3), seed=0)

    def test_boosts_planted_superpattern_density(self):
        # k = h-1 parts carrying T4 make T5 far denser than typical
        from tourlab.bias import typical_density
        from tourlab.density import density_exact

        g = build_transversal(40, 5, transitive(4), seed=1)
        report = density_exact(g, transitive(5))
        assert report.estimate > typical_density(transitive(5))

    def test_determinism(self):
        a = build_transversal(60, 6, transitive(4), seed=5)
        b = build_transversal(60, 6, transitive(4), seed=5)
        assert a == b


class TestBlowup:
    def test_group_count(self):
        assert blowup_group_count(4, 1) == 8
        assert blowup_group_count(4, 2) == 12  # 4 * ceil(sqrt(8))

    def test_single_pattern_transversals(self):
        r = blowup_group_count(4, 1)
        size = 2
        g = build_blowup([transitive(4)], 2 * r, seed=1)
        verts = g.provenance["copies"][0]
        parts = [range(t * size, (t + 1) * size) for t in verts]
        for tv in product(*parts):
            assert induced(g, tv).bits == transitive(4).bits

    def test_nontrivial_pattern_transversals(self):
        r = blowup_group_count(3, 1)  # 3 * ceil(sqrt(3)) = 6
        assert r == 6
        g = build_blowup([cyclic3()], 2 * r, seed=2)
        verts = g.provenance["copies"][0]
        parts = [range(t * 2, (t + 1) * 2) for t in verts]
        for tv in product(*parts):
            assert induced(g, tv).bits == cyclic3().bits

    def test_pairwise_edge_disjoint_copies(self):
        family = [transitive(4), transitive(4).relabel([1, 0, 2, 3])]
        g = build_blowup(family, 24, seed=5)
        copies = g.provenance["copies"]
        assert len(copies) == 2
        edge_sets = [
            {(a, b) for ai, a in enumerate(c) for b in c[ai + 1 :]} for c in copies
        ]
        assert not (edge_sets[0] & edge_sets[1])

    def test_typicality_flag_reported(self):
        g = build_blowup([transitive(4)], 16, seed=1)
        r = g.provenance["r"]
        assert g.provenance["typicality_sufficient"] == (2 * r * r < 2 ** 4)

    def test_errors(self):
        with pytest.raises(NotMultiple):
            build_blowup([transitive(4)], 17, seed=0)
        with pytest.raises(ValueError):
            build_blowup([], 16, seed=0)
        with pytest.raises(ValueError):
            build_blowup([transitive(3), transitive(4)], 24, seed=0)

    def test_determinism(self):
        a = build_blowup([transitive(4)], 16, seed=7)
        b = build_blowup([transitive(4)], 16, seed=7)
        assert a == b and a.provenance == b.provenance


class TestSerialization:
    @pytest.mark.parametrize(
        "builder",
        [
            lambda: build_tnp(40, Fraction(2, 5), seed=13),
            lambda: build_transversal(30, 6, cyclic3(), seed=13),
            lambda: build_blowup([transitive(4)], 16, seed=13),
        ],
        ids=["tnp", "transversal", "blowup"],
    )
    def test_round_trip(self, builder, tmp_path):
        g = builder()
        path = tmp_path / "g.txt"
        g.save(path)
        back = BigTournament.load(path)
        assert back == g
        assert back.provenance == g.provenance

    def test_text_shape(self):
        g = build_tnp(64, Fraction(1, 2), seed=1)
        lines = g.to_text().splitlines()
        assert lines[0] == "n=64"
        body = "".join(lines[2:])
        assert len(body) == pair_count(64)
        assert max(len(line) for line in lines[2:]) <= 512

    def test_reject_malformed(self):
        with pytest.raises(ValueError):
            BigTournament.from_text("n=10\n{}\n0101\n")

    def test_packed_is_read_only(self):
        g = build_tnp(20, Fraction(1, 2), seed=1)
        with pytest.raises(ValueError):
            g.packed[0] = 0
