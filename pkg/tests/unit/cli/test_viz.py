#
# SPDX-License-Identifier: Apache-2.0
import os

import testtools

from cape.cli import viz
from cape.core import serialization
from cape.core import utils
from tests.unit.cli import base


class VizRequestTests(testtools.TestCase):
    def test_vit_components(self):
        request = viz.VizRequest(14, 768)
        self.assertEqual(39, len(request.components))
        self.assertEqual(760, request.components[-1])

    def test_path(self):
        request = viz.VizRequest(2, 8, out_dir="imgs")
        self.assertEqual(
            os.path.join("imgs", "component_004.pgm"), request.path(4)
        )

    def test_invalid(self):
        self.assertRaises(utils.InvalidInputError, viz.VizRequest, 0, 8)
        self.assertRaises(
            utils.InvalidInputError, viz.VizRequest, 2, 8, stride=0
        )


class VizCLITests(base.CliTestCase):
    prog = "cape-viz"

    def test_default_stride(self):
        code = self.run_main(viz.main, "--out-dir", self.tmp)
        self.assertEqual(0, code)
        names = sorted(os.listdir(self.tmp))
        self.assertEqual(39, len(names))
        self.assertEqual("component_000.pgm", names[0])
        self.assertEqual("component_760.pgm", names[-1])
        with open(os.path.join(self.tmp, names[0])) as f:
            levels = serialization.loads_pgm(f.read())
        self.assertEqual((14, 14), levels.shape)

    def test_single_patch(self):
        code = self.run_main(
            viz.main,
            "--grid",
            "1",
            "--dim",
            "8",
            "--stride",
            "1",
            "--out-dir",
            self.tmp,
        )
        self.assertEqual(0, code)
        with open(os.path.join(self.tmp, "component_000.pgm")) as f:
            self.assertEqual([[255]], serialization.loads_pgm(f.read()))
        with open(os.path.join(self.tmp, "component_004.pgm")) as f:
            self.assertEqual([[128]], serialization.loads_pgm(f.read()))

    def test_gamma_changes_images(self):
        request = viz.VizRequest(4, 8, stride=4)
        plain = dict(viz.component_images(request))
        request.gamma = 2.0
        scaled = dict(viz.component_images(request))
        self.assertFalse((plain[4] == scaled[4]).all())

    def test_missing_directory(self):
        code = self.run_main(
            viz.main, "--out-dir", os.path.join(self.tmp, "missing")
        )
        self.assertEqual(2, code)

    def test_odd_dim(self):
        code = self.run_main(
            viz.main, "--dim", "7", "--out-dir", self.tmp
        )
        self.assertEqual(2, code)
