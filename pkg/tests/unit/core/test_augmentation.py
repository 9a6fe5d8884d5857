#
# SPDX-License-Identifier: Apache-2.0
import json
import math

import fixtures
import numpy as np
import testtools

from cape.core import augmentation
from cape.core import constants
from cape.core import positions
from cape.core import rng
from cape.core import utils


def _train(**changes):
    data = {
        "max_global_shift": 5.0,
        "max_local_shift": 0.5,
        "max_scale": 1.4,
        "mean_normalize": True,
        "augment": True,
        "seed": 7,
    }
    data.update(changes)
    return augmentation.AugmentationConfig.from_dict(data)


class AugmentationConfigTests(testtools.TestCase):
    def test_defaults(self):
        cfg = augmentation.AugmentationConfig()
        self.assertTrue(cfg.augment)
        self.assertEqual(1.0, cfg.max_scale)

    def test_from_dict_mode(self):
        cfg = _train(augment=False)
        self.assertEqual(constants.INFERENCE, cfg.mode)
        self.assertFalse(cfg.augment)

    def test_unknown_keys(self):
        self.assertRaisesRegex(
            utils.InvalidInputError,
            "Unknown config keys: colour",
            augmentation.AugmentationConfig.from_dict,
            {"colour": 1},
        )

    def test_scale_below_one(self):
        self.assertRaises(utils.InvalidInputError, _train, max_scale=0.5)

    def test_negative_shift(self):
        self.assertRaises(
            utils.InvalidInputError, _train, max_global_shift=-1.0
        )

    def test_bool_is_not_a_number(self):
        self.assertRaises(
            utils.InvalidInputError, _train, max_local_shift=True
        )

    def test_non_bool_flag(self):
        self.assertRaises(utils.InvalidInputError, _train, augment="yes")

    def test_round_trip_dict(self):
        cfg = _train()
        again = augmentation.AugmentationConfig.from_dict(cfg.as_dict())
        self.assertEqual(cfg, again)

    def test_replace(self):
        cfg = _train().replace(seed=99)
        self.assertEqual(99, cfg.seed)
        self.assertEqual(5.0, cfg.max_global_shift)

    def test_for_grid(self):
        cfg = augmentation.AugmentationConfig.for_grid(16)
        self.assertEqual(0.5, cfg.max_global_shift)
        self.assertEqual(1.0 / 16, cfg.max_local_shift)
        self.assertEqual(1.4, cfg.max_scale)

    def test_from_json_file(self):
        tmp = self.useFixture(fixtures.TempDir()).path
        path = f"{tmp}/aug.json"
        with open(path, "w") as f:
            f.write(_train().as_json())
        self.assertEqual(
            _train(), augmentation.AugmentationConfig.from_json_file(path)
        )

    def test_from_json_file_malformed(self):
        tmp = self.useFixture(fixtures.TempDir()).path
        path = f"{tmp}/aug.json"
        with open(path, "w") as f:
            f.write("{not json")
        self.assertRaisesRegex(
            utils.ConfigError,
            path,
            augmentation.AugmentationConfig.from_json_file,
            path,
        )

    def test_from_json_file_unknown_key(self):
        tmp = self.useFixture(fixtures.TempDir()).path
        path = f"{tmp}/aug.json"
        with open(path, "w") as f:
            json.dump({"max_scale": 1.2, "jitter": 3}, f)
        self.assertRaises(
            utils.ConfigError,
            augmentation.AugmentationConfig.from_json_file,
            path,
        )

    def test_read_json_config_keeps_absent_seed_absent(self):
        tmp = self.useFixture(fixtures.TempDir()).path
        path = f"{tmp}/aug.json"
        with open(path, "w") as f:
            json.dump({"max_scale": 1.2}, f)
        data = augmentation.read_json_config(path)
        self.assertNotIn("seed", data)
        cfg = augmentation.AugmentationConfig.from_file_data(data, path)
        self.assertEqual(1.2, cfg.max_scale)

    def test_from_json_file_missing(self):
        self.assertRaises(
            utils.ConfigError,
            augmentation.AugmentationConfig.from_json_file,
            "/nonexistent/aug.json",
        )


class PresetTests(testtools.TestCase):
    def test_builtin(self):
        cfg = augmentation.get_preset("asr-tl")
        self.assertEqual(2.0, cfg.max_scale)
        self.assertTrue(cfg.mean_normalize)

    def test_unknown(self):
        self.assertRaises(
            utils.ProfileNotFound, augmentation.get_preset, "nope"
        )

    def test_project_override(self):
        class _Config:
            config_file = "cape.yaml"

            def get_option(self, name):
                return {"mt": {"max_global_shift": 1.0, "max_scale": 1.0}}

        cfg = augmentation.get_preset("mt", _Config())
        self.assertEqual(1.0, cfg.max_global_shift)

    def test_vit_local_shift_from_grid(self):
        cfg = augmentation.get_preset("vit", n_patches=24)
        self.assertEqual(
            augmentation.AugmentationConfig.for_grid(24), cfg
        )
        self.assertEqual(
            1.0 / 14, augmentation.get_preset("vit").max_local_shift
        )

    def test_grid_ignored_for_project_vit(self):
        class _Config:
            config_file = "cape.yaml"

            def get_option(self, name):
                return {"vit": {"max_local_shift": 0.2}}

        cfg = augmentation.get_preset("vit", _Config(), n_patches=24)
        self.assertEqual(0.2, cfg.max_local_shift)

    def test_grid_ignored_for_other_presets(self):
        self.assertEqual(
            augmentation.get_preset("asr-wsj"),
            augmentation.get_preset("asr-wsj", n_patches=24),
        )


class Augment1DTests(testtools.TestCase):
    def test_inference_only_mean_normalizes(self):
        cfg = _train(augment=False)
        out = augmentation.augment_positions_1d([[0.0, 1.0, 2.0, 3.0]], cfg)
        np.testing.assert_array_equal([[-1.5, -0.5, 0.5, 1.5]], out.values)

    def test_inference_without_mean_normalize(self):
        cfg = _train(augment=False, mean_normalize=False)
        out = augmentation.augment_positions_1d([[0.0, 1.0]], cfg)
        np.testing.assert_array_equal([[0.0, 1.0]], out.values)

    def test_input_untouched(self):
        values = np.array([[0.0, 1.0, 2.0]])
        augmentation.augment_positions_1d(values, _train())
        np.testing.assert_array_equal([[0.0, 1.0, 2.0]], values)

    def test_deterministic(self):
        a = augmentation.augment_positions_1d(np.zeros((3, 5)), _train())
        b = augmentation.augment_positions_1d(np.zeros((3, 5)), _train())
        self.assertEqual(a, b)

    def test_draw_order(self):
        values = np.array([[0.0, 1.0, 2.0], [0.0, 2.0, 4.0]])
        cfg = _train(mean_normalize=False)
        out = augmentation.augment_positions_1d(values, cfg)

        stream = rng.RngStream(7)
        delta = stream.uniform(-5.0, 5.0, size=(2, 1))
        local = stream.uniform(-0.5, 0.5, size=(2, 3))
        log_scale = stream.uniform(-math.log(1.4), math.log(1.4), (2, 1))
        expected = (values + delta + local) * np.exp(log_scale)
        np.testing.assert_array_equal(expected, out.values)

    def test_padding_stays_nan(self):
        values = [[0.0, 1.0, np.nan], [0.0, 1.0, 2.0]]
        out = augmentation.augment_positions_1d(values, _train())
        self.assertTrue(np.isnan(out.values[0, 2]))
        self.assertEqual(1, int(np.isnan(out.values).sum()))

    def test_all_padding_row(self):
        self.assertRaises(
            utils.InvalidInputError,
            augmentation.augment_positions_1d,
            [[np.nan, np.nan]],
            _train(),
        )

    def test_order_preserved_with_small_local_shift(self):
        cfg = _train(max_local_shift=0.49)
        out = augmentation.augment_positions_1d(
            np.tile(np.arange(20.0), (8, 1)), cfg
        )
        self.assertTrue((np.diff(out.values, axis=1) > 0).all())


class Augment2DTests(testtools.TestCase):
    def test_inference_grid(self):
        cfg = augmentation.AugmentationConfig.for_grid(3, augment=False)
        grid = augmentation.augment_grid_2d(3, 2, cfg)
        self.assertEqual((2, 3, 3), grid.x.shape)
        np.testing.assert_array_equal([-1.0, 0.0, 1.0], grid.x[0, 0])
        np.testing.assert_array_equal([-1.0, 0.0, 1.0], grid.y[1, :, 2])

    def test_single_patch_reference(self):
        cfg = augmentation.AugmentationConfig.for_grid(1, augment=False)
        grid = augmentation.augment_grid_2d(1, 1, cfg)
        self.assertEqual(-1.0, grid.x[0, 0, 0])

    def test_grid_positions_match_generated(self):
        cfg = augmentation.AugmentationConfig.for_grid(4, seed=42)
        generated = augmentation.augment_grid_2d(4, 3, cfg)
        base = augmentation.augment_grid_2d(4, 3, cfg.replace(augment=False))
        again = augmentation.augment_grid_positions(base, cfg)
        self.assertEqual(generated, again)

    def test_scale_shared_by_axes(self):
        cfg = _train(
            max_global_shift=0.0, max_local_shift=0.0, mean_normalize=False
        )
        grid = augmentation.augment_grid_2d(5, 4, cfg)
        scale_x = grid.x[:, 0, -1]
        scale_y = grid.y[:, -1, 0]
        np.testing.assert_allclose(scale_x, scale_y, rtol=1e-15)

    def test_vit_bound(self):
        cfg = augmentation.get_preset("vit").replace(seed=11)
        grid = augmentation.augment_grid_2d(14, 16, cfg)
        bound = (1.0 + 0.5 + 1.0 / 14) * 1.4
        self.assertLessEqual(np.abs(grid.x).max(), bound)
        self.assertLessEqual(np.abs(grid.y).max(), bound)

    def test_bad_patch_count(self):
        self.assertRaises(
            utils.InvalidInputError,
            augmentation.augment_grid_2d,
            0,
            1,
            _train(),
        )

    def test_rescale_eval_positions(self):
        grid = positions.image_positions(3, 3)
        out = augmentation.rescale_eval_positions(grid, 2.0)
        np.testing.assert_array_equal([-2.0, 0.0, 2.0], out.x[0, 0])


class MTPairTests(testtools.TestCase):
    def _cfg(self, **changes):
        return augmentation.get_preset("mt").replace(**changes)

    def test_shared_shift_and_scale(self):
        src = np.tile(np.arange(6.0), (2, 1))
        tgt = np.tile(np.arange(4.0), (2, 1))
        cfg = self._cfg(seed=5)
        out_src, out_tgt = augmentation.augment_mt_pair(src, tgt, 1.5, cfg)

        stream = rng.RngStream(5)
        delta = stream.uniform(-5.0, 5.0, size=(2, 1))
        eps_src = stream.uniform(-0.5, 0.5, size=(2, 6))
        eps_tgt = stream.uniform(-0.5, 0.5, size=(2, 4))
        lam = np.exp(stream.uniform(0.0, 0.0, size=(2, 1)))
        np.testing.assert_array_equal(
            (src * 1.5 + delta + eps_src) * lam, out_src.values
        )
        np.testing.assert_array_equal(
            (tgt + delta + eps_tgt) * lam, out_tgt.values
        )

    def test_mean_normalize_rejected(self):
        self.assertRaises(
            utils.InvalidInputError,
            augmentation.augment_mt_pair,
            [[0.0]],
            [[0.0]],
            1.0,
            self._cfg(mean_normalize=True),
        )

    def test_batch_mismatch(self):
        self.assertRaises(
            utils.ShapeMismatchError,
            augmentation.augment_mt_pair,
            np.zeros((2, 3)),
            np.zeros((3, 3)),
            1.0,
            self._cfg(),
        )

    def test_bad_alpha(self):
        self.assertRaises(
            utils.InvalidInputError,
            augmentation.augment_mt_pair,
            [[0.0]],
            [[0.0]],
            0.0,
            self._cfg(),
        )

    def test_source_scale(self):
        self.assertAlmostEqual(
            1.0337, augmentation.mt_source_scale(10337, 10000)
        )
        self.assertRaises(
            utils.InvalidInputError, augmentation.mt_source_scale, 0, 1
        )


class EvalGammaTests(testtools.TestCase):
    def test_strategies(self):
        gamma = augmentation.eval_gamma
        self.assertEqual(1.0, gamma(448, strategy="baseline"))
        self.assertEqual(2.0, gamma(448, strategy="linear"))
        self.assertAlmostEqual(
            math.sqrt(2.0), gamma(448, strategy="sqrt")
        )

    def test_unknown_strategy(self):
        self.assertRaises(
            utils.InvalidInputError,
            augmentation.eval_gamma,
            448,
            strategy="cubic",
        )


class MeanNormalizeTests(testtools.TestCase):
    def test_ignores_padding(self):
        out = augmentation.mean_normalize_positions([[1.0, 3.0, np.nan]])
        np.testing.assert_array_equal([[-1.0, 1.0]], out[:, :2])
        self.assertTrue(np.isnan(out[0, 2]))

    def test_idempotent(self):
        values = rng.RngStream(2).uniform(-3.0, 9.0, size=(4, 7))
        once = augmentation.mean_normalize_positions(values)
        twice = augmentation.mean_normalize_positions(once)
        np.testing.assert_allclose(once, twice, atol=1e-14)
