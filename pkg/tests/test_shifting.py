import itertools

import pytest
from hypothesis import given, strategies as st

from rainbowmatch import (GENERAL, PARTITE, Family, GroundSet, Hypergraph,
                          InputError, RainbowMatching, is_shifted, nu_exact,
                          pullback_rainbow, rainbow_exact, shift_hypergraph,
                          shifted_closure)
from conftest import brute_is_downward_closed, random_family, random_hypergraph, seeded

B2 = GroundSet(PARTITE, 2, 2)
B3 = GroundSet(PARTITE, 2, 3)


def all_subgraphs(ground):
    cells = list(ground.cells())
    for mask in range(2 ** len(cells)):
        yield Hypergraph(ground, [c for i, c in enumerate(cells) if mask >> i & 1])


def all_shift_args(ground):
    sides = range(ground.r) if ground.kind == PARTITE else [None]
    for side in sides:
        for x, y in itertools.combinations(range(ground.n), 2):
            yield x, y, side


class TestShiftHypergraph:
    def test_moves_edge(self):
        h = Hypergraph(B2, [(1, 0)])
        h2, step = shift_hypergraph(h, 0, 1, side=0)
        assert h2.edges == ((0, 0),)
        assert step.moved == (((1, 0), (0, 0)),)

    def test_image_present_keeps_edge(self):
        h = Hypergraph(B2, [(0, 0), (1, 0)])
        h2, step = shift_hypergraph(h, 0, 1, side=0)
        assert h2 == h
        assert step.moved == ()

    def test_fixpoint_on_shifted(self):
        h = Hypergraph(B2, [(0, 0), (0, 1)])
        h2, step = shift_hypergraph(h, 0, 1, side=0)
        assert h2 == h and step.moved == ()

    def test_general_kind(self):
        g = GroundSet(GENERAL, 2, 4)
        h = Hypergraph(g, [(1, 3)])
        h2, _ = shift_hypergraph(h, 0, 3)
        assert h2.edges == ((0, 1),)

    def test_bad_args(self):
        h = Hypergraph(B2, [(0, 0)])
        with pytest.raises(InputError):
            shift_hypergraph(h, 1, 0, side=0)
        with pytest.raises(InputError):
            shift_hypergraph(h, 0, 1)  # partite needs a side
        with pytest.raises(InputError):
            shift_hypergraph(h, 0, 5, side=0)

    @given(st.integers(0, 2 ** 9 - 1))
    def test_size_preserved(self, mask):
        cells = list(B3.cells())
        h = Hypergraph(B3, [c for i, c in enumerate(cells) if mask >> i & 1])
        for x, y, side in all_shift_args(B3):
            h2, _ = shift_hypergraph(h, x, y, side=side)
            assert len(h2) == len(h)

    def test_matching_number_never_grows_exhaustive(self):
        for h in all_subgraphs(B2):
            for x, y, side in all_shift_args(B2):
                h2, _ = shift_hypergraph(h, x, y, side=side)
                assert nu_exact(h2) <= nu_exact(h)

    def test_matching_number_never_grows_random(self):
        rng = seeded("mono")
        for _ in range(250):
            h = random_hypergraph(rng, B3, rng.randint(0, 9))
            for x, y, side in all_shift_args(B3):
                h2, _ = shift_hypergraph(h, x, y, side=side)
                assert nu_exact(h2) <= nu_exact(h)


class TestIsShifted:
    def test_minimum_edge(self):
        assert is_shifted(Hypergraph(B2, [(0, 0)]))

    def test_missing_lower_edge(self):
        assert not is_shifted(Hypergraph(B2, [(1, 1)]))

    def test_star_is_shifted(self):
        h = Hypergraph(B3, [(0, j) for j in range(3)])
        assert is_shifted(h)

    def test_mode_mismatch(self):
        with pytest.raises(InputError):
            is_shifted(Hypergraph(B2, [(0, 0)]), mode="global")

    @pytest.mark.parametrize("ground", [B2, GroundSet(GENERAL, 2, 4),
                                        GroundSet(PARTITE, 3, 2)])
    def test_equals_fixpoint_definition(self, ground):
        for h in all_subgraphs(ground):
            fixpoint = all(
                shift_hypergraph(h, x, y, side=side)[1].moved == ()
                for x, y, side in all_shift_args(ground))
            assert is_shifted(h) == fixpoint

    @pytest.mark.parametrize("ground", [B2, B3, GroundSet(GENERAL, 2, 4)])
    def test_equals_downward_closure(self, ground):
        rng = seeded(f"dc:{ground.kind}:{ground.n}")
        for _ in range(120):
            h = random_hypergraph(rng, ground, rng.randint(0, ground.cell_count))
            assert is_shifted(h) == brute_is_downward_closed(h)

    def test_complement_upward_closed(self):
        # a set is shifted exactly when its complement is closed upward
        for h in all_subgraphs(B2):
            cells = list(B2.cells())
            comp = [c for c in cells if c not in h]
            upward = all(
                f in comp
                for e in comp for f in cells
                if all(fv >= ev for fv, ev in zip(f, e)))
            assert is_shifted(h) == upward


class TestShiftedClosure:
    def test_identity_on_shifted(self):
        fam = Family([Hypergraph(B2, [(0, 0), (0, 1)])])
        shifted, log = shifted_closure(fam)
        assert shifted == fam
        assert log.steps == ()

    def test_singleton(self):
        fam = Family([Hypergraph(B2, [(1, 1)])])
        shifted, _ = shifted_closure(fam)
        assert shifted[0].edges == ((0, 0),)

    @pytest.mark.parametrize("ground", [B3, GroundSet(GENERAL, 2, 5),
                                        GroundSet(PARTITE, 3, 2)])
    def test_closure_properties(self, ground):
        rng = seeded(f"closure:{ground.kind}:{ground.n}")
        for _ in range(350):
            fam = random_family(rng, ground, rng.randint(1, 3), low=0)
            shifted, log = shifted_closure(fam)
            assert all(is_shifted(h) for h in shifted)
            assert shifted.sizes() == fam.sizes()
            again, log2 = shifted_closure(shifted)
            assert again == shifted and log2.steps == ()
            assert log.replay(fam) == shifted


class TestPullback:
    def test_empty_log(self):
        fam = Family([Hypergraph(B2, [(0, 0)])])
        shifted, log = shifted_closure(fam)
        m = RainbowMatching(((0, 0),))
        assert pullback_rainbow(log, fam, m).choices == ((0, 0),)

    def test_forced_single_edge(self):
        fam = Family([Hypergraph(B2, [(1, 0)])])
        shifted, log = shifted_closure(fam)
        assert shifted[0].edges == ((0, 0),)
        back = pullback_rainbow(log, fam, RainbowMatching(((0, 0),)))
        assert back.choices == ((1, 0),)

    def test_swap_branch(self):
        # the reversed step must hand y back to the moved edge and give its
        # holder the x-edge instead: both choices change in one step
        fam = Family([Hypergraph(B2, [(1, 0)]), Hypergraph(B2, B2.cells())])
        shifted, log = shifted_closure(fam)
        assert shifted[0].edges == ((0, 0),)
        assert len(log.steps) == 1
        back = pullback_rainbow(log, fam, RainbowMatching(((0, 0), (1, 1))))
        assert back.choices == ((1, 0), (0, 1))

    def test_rejects_invalid_matching(self):
        fam = Family([Hypergraph(B2, [(1, 0)])])
        _, log = shifted_closure(fam)
        with pytest.raises(InputError):
            pullback_rainbow(log, fam, RainbowMatching(((1, 1),)))

    @pytest.mark.parametrize("ground", [B3, GroundSet(GENERAL, 2, 5),
                                        GroundSet(PARTITE, 3, 2)])
    def test_pulled_back_matchings_validate(self, ground):
        rng = seeded(f"pull:{ground.kind}:{ground.n}")
        found = 0
        for _ in range(250):
            fam = random_family(rng, ground, rng.randint(1, 3))
            shifted, log = shifted_closure(fam)
            m = rainbow_exact(shifted)
            if m is None:
                continue
            back = pullback_rainbow(log, fam, m)
            assert back.is_valid_for(fam)
            found += 1
        assert found > 50  # the suite must actually exercise the pull-back

    def test_counterexamples_survive_shifting(self):
        # contrapositive of the pull-back lemma: a family without a rainbow
        # matching cannot gain one through shifting (the converse is false)
        rng = seeded("contra")
        hits = 0
        for _ in range(300):
            fam = random_family(rng, B3, 2, high=4)  # small members block more often
            if rainbow_exact(fam) is None:
                shifted, _ = shifted_closure(fam)
                assert rainbow_exact(shifted) is None
                hits += 1
        assert hits > 10
