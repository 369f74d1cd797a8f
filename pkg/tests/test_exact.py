import numpy as np
import pytest

import tbmap as tb
from tbmap.exact import ah_decode, phase1_global

from conftest import unit_weights


def random_frame(code, ebn0, seed, frame=0):
    params = tb.ChannelParams(ebn0, code.rate)
    rng = tb.FrameRng(seed, frame)
    info = rng.bits(code.k_info)
    cw = code.encode(info)
    r = tb.awgn_transmit(cw, params, rng)
    return cw, r, params, tb.awgn_edge_weights(code.trellis, r, params)


class TestPhase1:
    def test_toy_unit_weights_path_counts(self, toy):
        wt, gm = phase1_global(unit_weights(toy))
        for k in range(4):
            assert np.allclose(gm.alpha[k], 2.0**k)
            assert np.allclose(gm.beta[k], 2.0 ** (3 - k))
            assert float(gm.alpha[k] @ gm.beta[k]) == pytest.approx(16.0)

    def test_boundary_conditions(self, toy):
        wt, gm = phase1_global(unit_weights(toy))
        assert np.array_equal(gm.alpha[0], np.ones(2))
        assert np.array_equal(gm.beta[3], np.ones(2))

    def test_conv_update_count(self, conv_code):
        _, _, _, wt = random_frame(conv_code, 2.0, 3)
        wt, gm = phase1_global(wt)
        assert gm.updates == 2 * 6144 == 12288

    def test_conservation_random_frames(self, golay_code):
        for f in range(5):
            _, _, _, wt = random_frame(golay_code, 1.0, 17, f)
            wt, gm = phase1_global(wt)
            totals = [float(gm.alpha[k] @ gm.beta[k]) for k in range(13)]
            assert max(totals) / min(totals) - 1 < 1e-10


class TestSubtrellisPass:
    def test_toy_forward_path_count(self, toy):
        sm = tb.subtrellis_pass(unit_weights(toy), 0, "forward", 3)
        assert sm.alpha[0][3][0] == pytest.approx(4.0)  # four A->A paths

    def test_upto_zero_only_boundary_condition(self, toy):
        sm = tb.subtrellis_pass(unit_weights(toy), 0, "forward", 0)
        assert sm.fwd_reached[0] == 0
        assert sm.alpha[0][0].tolist() == [1.0, 0.0]
        assert sm.alpha[0][1] is None

    def test_full_pass_update_count(self, conv_code):
        _, _, _, wt = random_frame(conv_code, 2.0, 3)
        wt, gm = phase1_global(wt)
        sm = tb.subtrellis_pass(wt, 0, "forward", 48)
        sm = tb.subtrellis_pass(wt, 0, "backward", 0, resume=sm)
        assert sm.updates_fwd + sm.updates_bwd == 2 * 4860 == 9720

    def test_non_contiguous_extension_rejected(self, toy):
        wt = unit_weights(toy)
        sm = tb.subtrellis_pass(wt, 0, "forward", 2)
        with pytest.raises(ValueError):
            tb.subtrellis_pass(wt, 0, "forward", 1, resume=sm)
        smb = tb.subtrellis_pass(wt, 1, "backward", 1)
        with pytest.raises(ValueError):
            tb.subtrellis_pass(wt, 1, "backward", 2, resume=smb)

    def test_resume_must_match_trellis(self, toy, golay_code):
        sm = tb.subtrellis_pass(unit_weights(toy), 0, "forward", 1)
        _, _, _, wt = random_frame(golay_code, 2.0, 3)
        with pytest.raises(ValueError):
            tb.subtrellis_pass(wt, 0, "forward", 2, resume=sm)

    def test_domination_and_consistency(self, golay_code):
        # alpha_Tj <= alpha_T pointwise; sum alpha_j*beta_j is weight at all k
        _, _, _, wt = random_frame(golay_code, 2.0, 23)
        wt, gm = phase1_global(wt)
        for j in (0, 7):
            sm = tb.subtrellis_pass(wt, j, "forward", 12)
            sm = tb.subtrellis_pass(wt, j, "backward", 0, resume=sm)
            for k in range(13):
                assert np.all(sm.alpha[j][k] <= gm.alpha[k] * (1 + 1e-12) + 1e-300)
                assert np.all(sm.beta[j][k] <= gm.beta[k] * (1 + 1e-12) + 1e-300)
            w = sm.weight(j)
            for k in range(13):
                tot = float(sm.alpha[j][k] @ sm.beta[j][k])
                assert tot == pytest.approx(w, rel=1e-10)


class TestExactMap:
    @pytest.mark.parametrize("ebn0", [0.0, 2.0, 5.0])
    def test_matches_brute_force(self, golay_code, ebn0):
        words, starts = tb.tb_codebook(golay_code.trellis)
        for f in range(10):
            _, r, params, wt = random_frame(golay_code, ebn0, 29, f)
            ex = tb.exact_tb_map(wt)
            bf = tb.brute_force_app(words, r, params, starts)
            assert np.abs(ex.app - bf.app).max() < 1e-9
            sw = ex.subtrellis_weights / ex.subtrellis_weights.sum()
            assert np.abs(sw - bf.subtrellis_weights).max() < 1e-9

    def test_toy_uniform(self, toy):
        app = tb.exact_tb_map(unit_weights(toy))
        assert np.allclose(app.app, 0.5)

    def test_decision_sum_constant_per_position(self, conv_code):
        # every position's unnormalized mass is the sum of subtrellis weights
        _, _, _, wt = random_frame(conv_code, 2.0, 31)
        ex = tb.exact_tb_map(wt)
        total = ex.subtrellis_weights.sum()
        assert np.abs(ex.mass / total - 1).max() < 1e-10


class TestBruteForce:
    def test_zero_noise_recovers_all_zero(self, golay_code):
        words, starts = tb.tb_codebook(golay_code.trellis)
        params = tb.ChannelParams(5.0, 0.5)
        r = np.ones(24)  # all-zero codeword, noiseless
        bf = tb.brute_force_app(words, r, params, starts)
        assert tb.hard_decisions(bf).sum() == 0

    def test_two_codeword_ambiguity(self, golay_code):
        # received halfway between two minimum-distance codewords: the
        # differing positions are maximally uncertain
        words, _ = tb.tb_codebook(golay_code.trellis)
        w8 = words[words.sum(axis=1) == 8]
        c1 = np.zeros(24, dtype=np.uint8)
        c2 = w8[0]
        x1, x2 = 1.0 - 2.0 * c1, 1.0 - 2.0 * c2
        r = (x1 + x2) / 2.0
        params = tb.ChannelParams(8.0, 0.5)
        bf = tb.brute_force_app(words, r, params)
        diff = c1 != c2
        assert np.abs(bf.app[diff] - 0.5).max() < 1e-3
        assert np.all(bf.app[~diff, 0] > 0.999)

    def test_subcode_masses_sum_to_one(self, golay_code):
        words, starts = tb.tb_codebook(golay_code.trellis)
        _, r, params, _ = random_frame(golay_code, 0.0, 37)
        bf = tb.brute_force_app(words, r, params, starts)
        assert bf.subtrellis_weights.sum() == pytest.approx(1.0, abs=1e-12)

    def test_rejects_oversized_codebook(self):
        with pytest.raises(ValueError):
            tb.brute_force_app(
                np.zeros((1 << 20 | 1, 4)), np.zeros(4), tb.ChannelParams(0, 0.5)
            )


class TestAhDecode:
    def test_conv_update_count(self, conv_code):
        _, _, _, wt = random_frame(conv_code, 2.0, 41)
        app = ah_decode(wt, 40)
        assert app.stats.updates == 2 * (48 + 40) * 128 == 22528

    def test_golay_update_count(self, golay_code):
        _, _, _, wt = random_frame(golay_code, 2.0, 43)
        app = ah_decode(wt, 10)
        assert app.stats.updates == 2 * (12 + 10) * 32 == 1408

    def test_wrap_zero_equals_plain_forward_backward(self, golay_code):
        # wrap=0 is the global pass followed by the per-section edge sum
        _, _, _, wt = random_frame(golay_code, 1.0, 47)
        app = ah_decode(wt, 0)
        wt2, gm = phase1_global(wt)
        t = golay_code.trellis
        nlab = 1 << t.bps
        manual = np.zeros((t.num_positions, 2))
        for k in range(t.n):
            contrib = (
                gm.alpha[k][t.edges_from[k]] * wt2.w[k] * gm.beta[k + 1][t.edges_to[k]]
            )
            tot = np.bincount(t.edge_labels[k], weights=contrib, minlength=nlab)
            for tt in range(t.bps):
                sel = ((np.arange(nlab) >> tt) & 1).astype(bool)
                one, total = tot[sel].sum(), tot.sum()
                manual[k * t.bps + tt] = ((total - one) / total, one / total)
        assert np.abs(app.app - manual).max() < 1e-12

    def test_close_to_exact_at_high_snr(self, golay_code):
        _, _, _, wt = random_frame(golay_code, 4.0, 53)
        app = ah_decode(wt, 10)
        ex = tb.exact_tb_map(wt)
        assert tb.hard_decisions(app).tolist() == tb.hard_decisions(ex).tolist()

    def test_rejects_negative_wrap(self, golay_code):
        _, _, _, wt = random_frame(golay_code, 2.0, 59)
        with pytest.raises(ValueError):
            ah_decode(wt, -1)
