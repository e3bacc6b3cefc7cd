"""Branch states: dense-vector oracle checks for the (p0, d) shortcut."""

import math

import numpy as np
import pytest
from scipy.special import xlogy

from qdarwin import qkernel
from qdarwin.branch import (
    BranchSpec,
    DecoherenceProfile,
    VirtualQubit,
    branch_to_state_vector,
    entropy_h,
    profile_from_branch,
    reduced_density_matrix,
    subset_mutual_information,
)
from qdarwin.qkernel import LN2, partial_trace, von_neumann_entropy

KET0 = np.array([1.0, 0.0])
KET1 = np.array([0.0, 1.0])
PLUS = np.array([1.0, 1.0]) / math.sqrt(2)
INV_SQRT2 = 1.0 / math.sqrt(2)


def random_unit(rng):
    v = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    return v / np.linalg.norm(v)


def random_spec(rng, n_env):
    a = math.sqrt(rng.uniform(0.0, 1.0))
    b = math.sqrt(1.0 - a * a) * np.exp(1j * rng.uniform(0, 2 * math.pi))
    pairs = tuple((random_unit(rng), random_unit(rng)) for _ in range(n_env))
    return BranchSpec(a, b, pairs)


def ghz_spec(n_env):
    return BranchSpec(
        INV_SQRT2, INV_SQRT2, tuple((KET0, KET1) for _ in range(n_env))
    )


class TestBranchSpec:
    def test_bad_amplitudes(self):
        with pytest.raises(ValueError, match="alpha"):
            BranchSpec(0.9, 0.9, ((KET0, KET1),))

    def test_unnormalized_pair(self):
        with pytest.raises(ValueError, match="not normalized"):
            BranchSpec(INV_SQRT2, INV_SQRT2, ((KET0, 2.0 * KET1),))

    def test_wrong_length_vector(self):
        with pytest.raises(ValueError, match="2-vector"):
            BranchSpec(1.0, 0.0, ((np.ones(3) / math.sqrt(3), KET0),))

    def test_no_environments(self):
        with pytest.raises(ValueError, match="at least one"):
            BranchSpec(1.0, 0.0, ())

    def test_gammas(self):
        spec = BranchSpec(INV_SQRT2, INV_SQRT2, ((KET0, PLUS), (KET0, KET1)))
        g = spec.gammas()
        assert g[0] == pytest.approx(INV_SQRT2, abs=1e-15)
        assert g[1] == 0.0
        assert spec.n_env == 2


class TestDecoherenceProfile:
    def test_p0_range(self):
        with pytest.raises(ValueError, match="p0"):
            DecoherenceProfile(0.49, (1.0,))
        with pytest.raises(ValueError, match="p0"):
            DecoherenceProfile(1.01, (1.0,))

    def test_p0_grace_clamps(self):
        assert DecoherenceProfile(0.5 - 1e-13, (1.0,)).p0 == 0.5
        assert DecoherenceProfile(1.0 + 1e-13, (1.0,)).p0 == 1.0

    def test_d_validation(self):
        with pytest.raises(ValueError, match="d values"):
            DecoherenceProfile(0.5, (1.0, -0.5))
        with pytest.raises(ValueError, match="d values"):
            DecoherenceProfile(0.5, (math.nan,))

    def test_totals(self):
        prof = DecoherenceProfile(0.5, (1.0, 2.5, math.inf))
        assert prof.n_env == 3
        assert prof.d_total == math.inf


class TestVirtualQubit:
    def test_validation(self):
        with pytest.raises(ValueError):
            VirtualQubit(-0.1, 0.0)
        with pytest.raises(ValueError):
            VirtualQubit(0.5, 1.5)

    def test_eigenvalues_match_matrix(self):
        rng = np.random.default_rng(7)
        for _ in range(50):
            x = rng.uniform(0, 1)
            g = rng.uniform(0, 1) * np.exp(1j * rng.uniform(0, 2 * math.pi))
            vq = VirtualQubit(x, g)
            direct = np.linalg.eigvalsh(vq.matrix())
            assert np.allclose(direct, vq.eigenvalues(), atol=1e-14)

    def test_pure_cases(self):
        # |gamma| = 1 keeps the branches indistinguishable: pure state
        assert VirtualQubit(0.3, 1.0).eigenvalues() == pytest.approx([0.0, 1.0])
        # gamma = 0, x = 1/2: perfectly decohered coin
        assert VirtualQubit(0.5, 0.0).eigenvalues() == pytest.approx([0.5, 0.5])


class TestBranchToStateVector:
    def test_ghz(self):
        for n_env in (1, 2, 4):
            state = branch_to_state_vector(ghz_spec(n_env))
            expect = qkernel.ghz_state(n_env + 1)
            assert np.allclose(state.amplitudes, expect.amplitudes, atol=1e-15)

    def test_product_state(self):
        spec = BranchSpec(1.0, 0.0, ((PLUS, KET1),))
        state = branch_to_state_vector(spec)
        assert state.amplitudes == pytest.approx(
            [INV_SQRT2, INV_SQRT2, 0.0, 0.0]
        )

    def test_norm_random(self):
        rng = np.random.default_rng(11)
        state = branch_to_state_vector(random_spec(rng, 5))
        assert np.vdot(state.amplitudes, state.amplitudes).real == pytest.approx(
            1.0, abs=1e-12
        )

    def test_soft_limit(self):
        with pytest.raises(ValueError, match="soft limit"):
            branch_to_state_vector(ghz_spec(qkernel.SOFT_QUBIT_LIMIT))


class TestProfileFromBranch:
    def test_ghz_profile(self):
        prof = profile_from_branch(ghz_spec(3))
        assert prof.p0 == 0.5
        assert prof.d == (math.inf, math.inf, math.inf)

    def test_no_record_is_zero(self):
        spec = BranchSpec(INV_SQRT2, INV_SQRT2, ((KET1, KET1),))
        assert profile_from_branch(spec).d == (0.0,)
        # non-representable overlaps can land an ulp below 1
        fuzzy = BranchSpec(INV_SQRT2, INV_SQRT2, ((PLUS, PLUS),))
        assert profile_from_branch(fuzzy).d[0] == pytest.approx(0.0, abs=1e-15)

    def test_half_overlap(self):
        spec = BranchSpec(INV_SQRT2, INV_SQRT2, ((KET0, PLUS),))
        # |<0|+>|^2 = 1/2, so d = ln 2
        assert profile_from_branch(spec).d[0] == pytest.approx(LN2, abs=1e-15)

    def test_p0_from_amplitudes(self):
        spec = BranchSpec(math.sqrt(0.8), math.sqrt(0.2), ((KET0, KET1),))
        assert profile_from_branch(spec).p0 == pytest.approx(0.68, abs=1e-12)


class TestReducedDensityMatrix:
    def test_mask_rules(self):
        spec = ghz_spec(3)
        with pytest.raises(ValueError, match="system not an environment"):
            reduced_density_matrix(spec, "E", (0, 1))
        with pytest.raises(ValueError, match="out of range"):
            reduced_density_matrix(spec, "E", (4,))
        with pytest.raises(ValueError, match="only to E or SE"):
            reduced_density_matrix(spec, "S", (1,))
        with pytest.raises(ValueError, match="empty subsystem"):
            reduced_density_matrix(spec, "E", ())
        with pytest.raises(ValueError, match="which"):
            reduced_density_matrix(spec, "X", (1,))

    def test_ghz_reductions(self):
        spec = ghz_spec(4)
        assert reduced_density_matrix(spec, "S").eigenvalues() == pytest.approx(
            [0.5, 0.5]
        )
        # keeping everything leaves a pure state
        full = reduced_density_matrix(spec, "SE", (1, 2, 3, 4))
        assert full.eigenvalues() == pytest.approx([0.0, 1.0])

    def test_spectra_match_dense_oracle(self):
        # every reduction is rank <= 2; check the claimed two eigenvalues
        # against a brute-force partial trace of the full state vector
        rng = np.random.default_rng(23)
        for n_env in (2, 3, 5):
            spec = random_spec(rng, n_env)
            state = branch_to_state_vector(spec)
            masks = [(1,), tuple(range(1, n_env)), tuple(range(1, n_env + 1))]
            for which, regs in [("S", ())] + [
                (w, m) for w in ("E", "SE") for m in masks
            ]:
                vq = reduced_density_matrix(spec, which, regs)
                kept = (0,) + regs if which in ("S", "SE") else regs
                dense = partial_trace(state, kept)
                lam = np.sort(np.linalg.eigvalsh(dense.entries))[::-1]
                assert lam[0] == pytest.approx(vq.eigenvalues()[1], abs=1e-10)
                assert lam[1] == pytest.approx(vq.eigenvalues()[0], abs=1e-10)
                assert np.all(np.abs(lam[2:]) < 1e-10)


class TestEntropyH:
    def test_endpoints_exact(self):
        assert entropy_h(0.5, 0.0) == 0.0
        assert entropy_h(0.77, 0.0) == 0.0
        assert entropy_h(0.5, math.inf) == LN2
        assert entropy_h(1.0, math.inf) == 0.0

    def test_frozen_value(self):
        # eigensolve oracle: eigenvalues (1 +/- e^(-1/2))/2
        assert entropy_h(0.5, 1.0) == pytest.approx(
            0.4958422580214431, abs=1e-13
        )

    def test_eigensolve_oracle_grid(self):
        for p0 in (0.5, 0.6, 0.75, 0.9, 0.999):
            x = (1.0 + math.sqrt(2.0 * p0 - 1.0)) / 2.0
            for d in (0.0, 0.05, 0.7, 3.0, 40.0):
                g = math.exp(-d / 2.0) * np.exp(0.3j)
                lam = np.linalg.eigvalsh(VirtualQubit(x, g).matrix())
                lam = lam[lam > 0]
                expect = float(-np.sum(xlogy(lam, lam)))
                assert entropy_h(p0, d) == pytest.approx(expect, abs=1e-12)

    def test_vectorized(self):
        d = np.array([0.0, 1.0, math.inf])
        h = entropy_h(0.5, d)
        assert isinstance(h, np.ndarray)
        assert h[0] == 0.0 and h[2] == LN2
        assert isinstance(entropy_h(0.5, 1.0), float)

    def test_monotone_in_d(self):
        d = np.linspace(0, 12, 200)
        h = entropy_h(0.7, d)
        assert np.all(np.diff(h) > 0)

    def test_decreasing_in_p0(self):
        hs = [entropy_h(p0, 2.0) for p0 in (0.5, 0.6, 0.8, 0.95, 1.0)]
        assert all(a > b for a, b in zip(hs, hs[1:]))
        assert hs[-1] == 0.0

    def test_validation(self):
        with pytest.raises(ValueError, match="p0"):
            entropy_h(0.3, 1.0)
        with pytest.raises(ValueError, match="d must be"):
            entropy_h(0.5, -1.0)
        with pytest.raises(ValueError, match="d must be"):
            entropy_h(0.5, math.nan)


class TestSubsetMutualInformation:
    def test_empty_mask_exact_zero(self):
        prof = DecoherenceProfile(0.6, (1.0, 2.0, math.inf))
        assert subset_mutual_information(prof, ()) == 0.0

    def test_full_mask_is_twice_entropy(self):
        prof = DecoherenceProfile(0.6, (0.3, 1.1, 2.2))
        full = subset_mutual_information(prof, (0, 1, 2))
        assert full == 2.0 * entropy_h(0.6, prof.d_total)

    def test_ghz_plateau(self):
        prof = DecoherenceProfile(0.5, (math.inf,) * 5)
        assert subset_mutual_information(prof, (2,)) == pytest.approx(
            LN2, abs=1e-15
        )
        assert subset_mutual_information(prof, (0, 3)) == pytest.approx(
            LN2, abs=1e-15
        )
        assert subset_mutual_information(prof, tuple(range(5))) == pytest.approx(
            2 * LN2, abs=1e-15
        )

    def test_antisymmetry(self):
        # The three entropies pair up term by term between a mask and its
        # complement, so I(mask) + I(complement) - I(everything) carries
        # only the rounding of the final additions, a couple of ulps.
        rng = np.random.default_rng(5)
        d = tuple(rng.uniform(0, 3, size=7))
        prof = DecoherenceProfile(0.5, d[:3] + (math.inf,) + d[3:])
        total = subset_mutual_information(prof, tuple(range(8)))
        for mask in [(0,), (1, 3), (0, 2, 4, 6), (5, 6, 7)]:
            comp = tuple(i for i in range(8) if i not in mask)
            left = subset_mutual_information(prof, mask)
            right = subset_mutual_information(prof, comp)
            assert left + right == pytest.approx(total, abs=1e-15)

    def test_depends_only_on_d_sum(self):
        prof = DecoherenceProfile(0.5, (0.5, 0.25, 0.25, 0.75, 0.25))
        a = subset_mutual_information(prof, (0, 3))  # d_in = 1.25
        b = subset_mutual_information(prof, (1, 2, 3))  # d_in = 1.25
        assert a == pytest.approx(b, abs=1e-12)

    def test_mask_enlargement_monotone(self):
        rng = np.random.default_rng(17)
        prof = DecoherenceProfile(0.55, tuple(rng.uniform(0, 2, size=6)))
        prev = 0.0
        mask = []
        for i in range(6):
            mask.append(i)
            cur = subset_mutual_information(prof, tuple(mask))
            assert cur >= prev - 1e-15
            prev = cur

    def test_matches_dense_oracle(self):
        rng = np.random.default_rng(41)
        for _ in range(5):
            spec = random_spec(rng, 4)
            prof = profile_from_branch(spec)
            state = branch_to_state_vector(spec)
            for mask in [(0,), (1, 2), (0, 2, 3), (0, 1, 2, 3)]:
                regs = tuple(i + 1 for i in mask)
                expect = qkernel.mutual_information(state, (0,), regs)
                got = subset_mutual_information(prof, mask)
                assert got == pytest.approx(expect, abs=1e-9)

    def test_mask_out_of_range(self):
        prof = DecoherenceProfile(0.5, (1.0, 1.0))
        with pytest.raises(ValueError, match="out of range"):
            subset_mutual_information(prof, (2,))
