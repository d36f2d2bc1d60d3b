import random

import pytest

from sgm_topo.abelian import FinAbGroup, LinkingShape, cyclic, direct_sum, from_primary, linking_form_alternatives
from sgm_topo.errors import CriterionNotApplicable
from sgm_topo.homology import Z, from_list, graded, homology, lens_cw_complex, sphere_homology
from sgm_topo.sgm import (
    BundleSpec,
    LensSpec,
    Reason,
    SquareStatus,
    StatusKind,
    bundle_dimension_set,
    bundle_homology,
    catalog_lookup,
    classify,
    euler_parity_obstruction,
    lens_dimension_set,
    lens_homology,
    lens_stably_parallelizable,
    perfect_square,
    square_obstruction,
)

from oracles import factorize

FREE = FinAbGroup(1)


def rational_sphere(n, middle):
    """Graded group of a rational homology n-sphere with prescribed middle torsion."""
    k = (n - 1) // 2
    groups = {0: FREE, n: FREE}
    if not middle.is_trivial:
        groups[k] = middle
    return graded(n, groups)


class TestPerfectSquare:
    def test_values(self):
        assert perfect_square(1) == 1
        assert perfect_square(36) == 6
        assert perfect_square(5) is None

    def test_rejects_nonpositive(self):
        for bad in (0, -4):
            with pytest.raises(ValueError):
                perfect_square(bad)


class TestSquareObstruction:
    def test_lens_with_nonsquare_torsion(self):
        verdict = square_obstruction(lens_homology(LensSpec(5, (1, 1, 1, 1))), 7)
        assert verdict.status is SquareStatus.APPLIES_OBSTRUCTED
        assert verdict.middle_order == 5

    def test_rp5_passes(self):
        verdict = square_obstruction(catalog_lookup("RP5").homology, 5)
        assert verdict.status is SquareStatus.APPLIES_PASSES
        assert verdict.middle_order == 1

    def test_square_bundle_passes(self):
        verdict = square_obstruction(bundle_homology(BundleSpec(1, 4)), 7)
        assert verdict.status is SquareStatus.APPLIES_PASSES
        assert (verdict.middle_order, verdict.root) == (4, 2)

    def test_not_applicable_cases(self):
        sphere4 = sphere_homology(4)
        assert square_obstruction(sphere4, 4).status is SquareStatus.NOT_APPLICABLE
        assert square_obstruction(sphere_homology(3), 3).status is SquareStatus.NOT_APPLICABLE
        torus_like = from_list([FREE, FinAbGroup(2), FREE])
        assert square_obstruction(torus_like, 2).status is SquareStatus.NOT_APPLICABLE
        not_rational_sphere = from_list([FREE, FREE] + [FinAbGroup()] * 5 + [FREE])
        assert square_obstruction(not_rational_sphere, 7).status is SquareStatus.NOT_APPLICABLE
        assert square_obstruction(sphere_homology(7), 7, orientable=False).status \
            is SquareStatus.NOT_APPLICABLE

    def test_never_obstructed_on_doubles(self):
        rng = random.Random(53)
        for _ in range(60):
            n_half = rng.randint(1, 30)
            dec = {p: tuple(sorted(rng.randint(1, 2) for _ in range(e)))
                   for p, e in factorize(n_half).items()}
            h = from_primary(dec)
            middle = direct_sum(h, h)
            n = 2 * rng.randint(2, 5) + 1
            verdict = square_obstruction(rational_sphere(n, middle), n)
            assert verdict.status is SquareStatus.APPLIES_PASSES


class TestEulerParity:
    def test_odd_dimension_never_concludes(self):
        for name in ("S^7", "RP5"):
            hom = catalog_lookup(name).homology
            n = catalog_lookup(name).dimension
            assert not euler_parity_obstruction(hom, n).obstructs_below

    def test_cp2_shape(self):
        cp2 = from_list([FREE, FinAbGroup(), FREE, FinAbGroup(), FREE])
        verdict = euler_parity_obstruction(cp2, 4)
        assert verdict.obstructs_below and verdict.chi == 3

    def test_s2(self):
        verdict = euler_parity_obstruction(sphere_homology(2), 2)
        assert not verdict.obstructs_below and verdict.chi == 2


class TestLensSpec:
    def test_validation(self):
        with pytest.raises(ValueError):
            LensSpec(1, (1,))
        with pytest.raises(ValueError):
            LensSpec(6, (2, 1))
        with pytest.raises(ValueError):
            LensSpec(5, ())

    def test_dimension(self):
        assert LensSpec(5, (1, 2, 3, 4)).dimension == 7
        assert LensSpec(2, (1,)).dimension == 1


class TestLensHomology:
    def test_seven_dimensional(self):
        h = lens_homology(LensSpec(5, (1, 2, 3, 4)))
        expected = graded(7, {0: FREE, 1: cyclic(5), 3: cyclic(5), 5: cyclic(5), 7: FREE})
        assert h == expected

    def test_circle_quotient(self):
        assert lens_homology(LensSpec(2, (1,))) == graded(1, {0: FREE, 1: FREE})

    def test_matches_cell_model(self):
        for m in range(2, 13):
            for k in range(0, 5):
                spec = LensSpec(m, tuple([1] * (k + 1)))
                assert lens_homology(spec) == homology(lens_cw_complex(m, k), Z)


class TestStablyParallelizable:
    def test_power_sum_zero(self):
        assert lens_stably_parallelizable(LensSpec(5, (1, 2, 3, 4)))

    def test_power_sum_nonzero(self):
        assert not lens_stably_parallelizable(LensSpec(5, (1, 1, 1, 1)))

    def test_vacuous_for_small_k(self):
        assert lens_stably_parallelizable(LensSpec(5, (1,)))
        assert lens_stably_parallelizable(LensSpec(5, (1, 2)))

    def test_k_at_least_m_fails(self):
        assert not lens_stably_parallelizable(LensSpec(3, (1, 2, 1, 2)))

    def test_hypotheses_gated(self):
        with pytest.raises(CriterionNotApplicable):
            lens_stably_parallelizable(LensSpec(4, (1, 1, 1, 1)))
        with pytest.raises(CriterionNotApplicable):
            lens_stably_parallelizable(LensSpec(5, (1, 2, 3, 6)))


class TestLensDimensionSet:
    def test_all_obstructed(self):
        v = lens_dimension_set(LensSpec(5, (1, 1, 1, 1)))
        assert v.summary == ()
        assert all(v.status(p).kind is StatusKind.OBSTRUCTED for p in range(1, 8))
        assert v.status(7).reason is Reason.EMSS

    def test_top_dimension_only(self):
        v = lens_dimension_set(LensSpec(5, (1, 2, 3, 4)))
        assert v.summary == (7,)
        assert v.status(7).kind is StatusKind.EXISTS
        assert all(v.status(p).kind is StatusKind.OBSTRUCTED for p in range(1, 7))

    def test_square_order_leaves_unknowns(self):
        v = lens_dimension_set(LensSpec(4, (1, 1, 1, 1)))
        assert v.summary is None
        assert v.status(1).kind is StatusKind.OBSTRUCTED
        assert v.status(1).reason is Reason.REEB
        for p in range(2, 8):
            assert v.status(p).kind is StatusKind.UNKNOWN

    def test_caller_supplied_parallelizability(self):
        v = lens_dimension_set(LensSpec(4, (1, 1, 1, 1)), stably_parallelizable=True)
        assert v.status(7).kind is StatusKind.EXISTS
        assert v.status(7).reason is Reason.ELIASHBERG_SP
        v = lens_dimension_set(LensSpec(4, (1, 1, 1, 1)), stably_parallelizable=False)
        assert v.status(7).kind is StatusKind.OBSTRUCTED

    def test_no_exists_below_top_dimension(self):
        for m in range(2, 9):
            for k in range(0, 4):
                v = lens_dimension_set(LensSpec(m, tuple([1] * (k + 1))))
                for p in range(1, v.dimension):
                    assert v.status(p).kind is not StatusKind.EXISTS

    def test_squarefree_odd_k_fully_obstructed_below(self):
        for m in (2, 3, 5, 6, 7, 10, 11):
            for k in (3,):
                v = lens_dimension_set(LensSpec(m, tuple([1] * (k + 1))))
                for p in range(1, 2 * k + 1):
                    assert v.status(p).kind is StatusKind.OBSTRUCTED, (m, k, p)


class TestBundles:
    def test_homology(self):
        assert bundle_homology(BundleSpec(1, 2)).at(3) == cyclic(2)
        assert bundle_homology(BundleSpec(3, -6)).at(3) == cyclic(6)
        assert bundle_homology(BundleSpec(0, 1)).at(3).is_trivial
        with pytest.raises(ValueError):
            BundleSpec(1, 0)

    def test_divisible_case(self):
        v = bundle_dimension_set(BundleSpec(1, 2))
        assert v.summary == (7,)
        assert v.status(7).kind is StatusKind.EXISTS

    def test_non_divisible_case(self):
        v = bundle_dimension_set(BundleSpec(1, 3))
        assert v.summary == ()
        assert all(v.status(p).kind is StatusKind.OBSTRUCTED for p in range(1, 8))

    def test_square_torsion_case(self):
        v = bundle_dimension_set(BundleSpec(2, 4))
        assert v.summary is None
        assert v.status(7).kind is StatusKind.EXISTS
        assert v.status(1).kind is StatusKind.OBSTRUCTED
        for p in range(2, 7):
            assert v.status(p).kind is StatusKind.UNKNOWN

    def test_top_status_depends_only_on_2m_mod_n(self):
        rng = random.Random(59)
        for _ in range(60):
            m = rng.randint(-20, 20)
            n = rng.choice([x for x in range(-12, 13) if x != 0])
            t = rng.randint(-3, 3)
            a = bundle_dimension_set(BundleSpec(m, n)).status(7)
            b = bundle_dimension_set(BundleSpec(m + n * t, n)).status(7)
            assert a.kind == b.kind

    def test_no_exists_below_top_dimension(self):
        for m in range(-4, 5):
            for n in (1, 2, 3, 4, 6, 9, -2):
                v = bundle_dimension_set(BundleSpec(m, n))
                for p in range(1, 7):
                    assert v.status(p).kind is not StatusKind.EXISTS


class TestCatalog:
    def test_rp5_entry(self):
        entry = catalog_lookup("RP5")
        assert entry.dimension == 5 and entry.orientable
        assert entry.homology.at(1) == cyclic(2)
        assert entry.facts[0].p_from == 1 and entry.facts[0].p_to == 4

    def test_sphere_entry(self):
        entry = catalog_lookup("S^7")
        assert entry.homology == sphere_homology(7)
        assert entry.facts[0].kind is StatusKind.EXISTS

    def test_family_names(self):
        assert catalog_lookup("L5(1,2,3,4)").lens is not None
        assert catalog_lookup("M(1,2)").bundle is not None

    def test_unknown_name(self):
        with pytest.raises(ValueError):
            catalog_lookup("K3")


class TestClassify:
    def test_rp5_non_sufficiency(self):
        # the square test passes, yet the recorded fact obstructs p < 5
        entry = catalog_lookup("RP5")
        assert square_obstruction(entry.homology, 5).status is SquareStatus.APPLIES_PASSES
        v = classify("RP5")
        for p in range(1, 5):
            assert v.status(p).kind is StatusKind.OBSTRUCTED
        assert v.status(1).reason is Reason.REEB
        assert v.status(2).reason is Reason.CATALOG_FACT
        assert v.status(5).kind is StatusKind.UNKNOWN
        assert v.summary is None

    def test_standard_sphere(self):
        v = classify("S^7")
        assert v.summary == tuple(range(1, 8))

    def test_lens_and_bundle_delegation(self):
        assert classify("L5(1,1,1,1)").summary == ()
        assert classify("M(1,2)").summary == (7,)

    def test_reasons_never_empty(self):
        for name in ("S^3", "RP5", "L7(1,1,1,1)", "M(2,4)"):
            v = classify(name)
            for p, st in v.statuses.items():
                assert st.reason in Reason

    def test_middle_homology_double_for_admitting_catalog_spheres(self):
        # any catalog rational homology (4l+1)-sphere marked as admitting a
        # map below its dimension must carry a doubled middle group
        for name, l in (("S^5", 1), ("S^9", 2)):
            entry = catalog_lookup(name)
            admits_below = any(
                f.kind is StatusKind.EXISTS and f.p_from < entry.dimension
                for f in entry.facts
            )
            assert admits_below
            middle = entry.homology.at(2 * l)
            assert LinkingShape.DOUBLE in linking_form_alternatives(middle)
