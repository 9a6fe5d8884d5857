#
# SPDX-License-Identifier: Apache-2.0
r"""
======================
C501 - C503: Jacobians
======================

Analytic derivatives against central finite differences: the derivative
of a 1D embedding row with respect to its position (text and audio), of an
image row with respect to (x, y), and of the attention layer output with
respect to its input tokens in ``addpos`` mode.

**Config Options:**

.. code-block:: yaml

    jacobians:
      points: 5
      dim: 64
      step: 1.0e-5
      tolerance: 1.0e-4
      encoder_dim: 8
      encoder_tokens: 3
"""
from cape.core import attention
from cape.core import augmentation
from cape.core import check_properties as check
from cape.core import constants
from cape.core import embeddings
from cape.core import gradient
from cape.core import positions
from cape.core import result


def gen_config(name):
    if name == "jacobians":
        return {
            "points": 5,
            "dim": 64,
            "step": 1e-5,
            "tolerance": 1e-4,
            "encoder_dim": 8,
            "encoder_tokens": 3,
        }


def _measure(worst, config, detail):
    return result.Measurement(worst, config["tolerance"], detail=detail)


@check.takes_config("jacobians")
@check.check_id("C501")
@check.tags("gradient", "embeddings")
def embed_1d_jacobian(context, config):
    stream = context.stream()
    worst = 0.0
    for spec, bound in (
        (embeddings.FrequencySpec.text(config["dim"]), 100.0),
        (embeddings.FrequencySpec.audio(config["dim"]), 10.0),
    ):
        for p in stream.uniform(-bound, bound, size=config["points"]):

            def fun(x, spec=spec):
                return embeddings.embed_1d(x, spec).matrix

            def jac(x, spec=spec):
                return embeddings.embed_1d_jacobian(x[0], spec)

            worst = max(
                worst,
                gradient.gradient_check(fun, p, config["step"], jac),
            )
    return _measure(worst, config, "max relative error, text and audio")


@check.takes_config("jacobians")
@check.check_id("C502")
@check.tags("gradient", "embeddings")
def embed_2d_jacobian(context, config):
    stream = context.stream()
    spec = embeddings.FrequencySpec.image(config["dim"])

    def fun(point):
        grid = augmentation.PositionGrid2D(
            point[0].reshape(1, 1), point[1].reshape(1, 1)
        )
        return embeddings.embed_2d(grid, spec).matrix

    def jac(point):
        return embeddings.embed_2d_jacobian(point[0], point[1], spec)

    worst = 0.0
    for point in stream.uniform(-1.0, 1.0, size=(config["points"], 2)):
        worst = max(
            worst, gradient.gradient_check(fun, point, config["step"], jac)
        )
    return _measure(worst, config, "max relative error, image")


@check.takes_config("jacobians")
@check.check_id("C503")
@check.tags("gradient", "attention")
def encoder_jacobian(context, config):
    stream = context.stream()
    d, n = config["encoder_dim"], config["encoder_tokens"]
    params = attention.AttentionParams.random(d, stream, constants.ADDPOS)
    spec = embeddings.FrequencySpec.text(d)
    pos_emb = embeddings.embed_1d(positions.text_positions(n), spec).rows()
    tokens = stream.uniform(-1.0, 1.0, size=(n, d))

    def fun(x):
        return attention.encode(x.reshape(n, d), pos_emb, params)

    def jac(x):
        return attention.encode_jacobian(x.reshape(n, d), pos_emb, params)

    worst = gradient.gradient_check(fun, tokens, config["step"], jac)
    return _measure(worst, config, "max relative error, addpos encoder")
