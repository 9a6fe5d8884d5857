#
# SPDX-License-Identifier: Apache-2.0
# modalities
TEXT = "text"
IMAGE = "image"
AUDIO = "audio"
MODALITIES = (TEXT, IMAGE, AUDIO)

# embedding column layouts
CONCATENATED = "concatenated"
INTERLEAVED = "interleaved"
LAYOUTS = (CONCATENATED, INTERLEAVED)

# augmentation modes
TRAIN = "train"
INFERENCE = "inference"

# attention modes
NOPOS = "nopos"
ADDPOS = "addpos"
RELPOS = "relpos"
ATTENTION_MODES = (NOPOS, ADDPOS, RELPOS)

# frequency schedule
TEXT_BASE = 10000.0
AUDIO_SCALE = 30.0
IMAGE_MAX_FREQUENCY = 10.0

# audio framing, seconds
BASE_HOP = 0.010
PERTURBATION_LOW = 0.85
PERTURBATION_HIGH = 1.15

# machine translation local shift range
MT_LOCAL_SHIFT = 0.5

# source position scale per language pair (target / source token counts)
MT_SOURCE_SCALE = {"de": 1.0337, "fr": 1.1632}

# evaluation-time grid rescaling
TRAIN_RESOLUTION = 224
GAMMA_STRATEGIES = ("baseline", "linear", "sqrt")

# defaults for image augmentation
VIT_PATCHES = 14
VIT_PRESET = "vit"

# built-in augmentation presets, same keys as the AugmentationConfig JSON
PRESETS = {
    VIT_PRESET: {
        "max_global_shift": 0.5,
        "max_local_shift": 1.0 / VIT_PATCHES,
        "max_scale": 1.4,
        "mean_normalize": False,
        "augment": True,
        "seed": 0,
    },
    "asr-wsj": {
        "max_global_shift": 30.0,
        "max_local_shift": BASE_HOP / 2,
        "max_scale": 1.1,
        "mean_normalize": True,
        "augment": True,
        "seed": 0,
    },
    "asr-tl": {
        "max_global_shift": 30.0,
        "max_local_shift": BASE_HOP / 2,
        "max_scale": 2.0,
        "mean_normalize": True,
        "augment": True,
        "seed": 0,
    },
    "mt": {
        "max_global_shift": 5.0,
        "max_local_shift": MT_LOCAL_SHIFT,
        "max_scale": 1.0,
        "mean_normalize": False,
        "augment": True,
        "seed": 0,
    },
}

# file formats
EMBEDDING_FORMAT = "cape-emb v1"
POSITION_FORMAT = "cape-pos v1"
EMBEDDING_DIGITS = 12
POSITION_DIGITS = 17
PGM_MAXVAL = 255

# CLI exit statuses
EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

# bench protocol
BENCH_REPEATS = 100
BENCH_WARMUP = 10
BENCH_FIELDS = [
    "mode",
    "length",
    "pass",
    "seconds_mean",
    "seconds_std",
    "repeats",
    "warmup",
    "threads",
]

SEED_ENV = "CAPE_SEED"

# override with "log_format" option in config file
log_format_string = "[%(module)s]\t%(levelname)s\t%(message)s"
