"""Channel-coding toolkit: compact-GA soft decoding of linear block codes.

Public surface:
  * codes: BCH / quadratic-residue / Reed-Solomon binary image
    constructions, encoding, syndromes, a built-in code registry;
  * channel: BPSK over AWGN with reproducible substreams;
  * cgad: the dual-domain compact-GA decoder and its early-stop variant;
  * baselines: Chase-2, generator-domain compact GA, brute-force MLD;
  * simulate: Monte Carlo BER/FER sweeps with instrumentation;
  * cli: the ``eccga`` command-line frontend.
"""

from .channel import ReceivedWord, hard_decision, modulate_bpsk, substream, transmit_awgn
from .cgad import CgadParams, DecoderResult, decode, decode_batch
from .codes import (
    BUILTIN_CODE_NAMES,
    LinearCode,
    build_bch,
    build_qr,
    build_rs_binary_image,
    encode,
    get_code,
    load_code_file,
    min_distance_bruteforce,
    resolve_code,
    syndrome,
)
from .baselines import (
    SyndromeTable,
    bd_decode,
    build_syndrome_table,
    chase2_decode,
    mld_decode,
    shakeel_decode,
)
from .simulate import BerPoint, DecoderSpec, StopRules, SweepConfig, run_point, run_sweep

__version__ = "0.1.0"

__all__ = [
    "BUILTIN_CODE_NAMES",
    "BerPoint",
    "CgadParams",
    "DecoderResult",
    "DecoderSpec",
    "LinearCode",
    "ReceivedWord",
    "StopRules",
    "SweepConfig",
    "SyndromeTable",
    "bd_decode",
    "build_bch",
    "build_qr",
    "build_rs_binary_image",
    "build_syndrome_table",
    "chase2_decode",
    "decode",
    "decode_batch",
    "encode",
    "get_code",
    "hard_decision",
    "load_code_file",
    "min_distance_bruteforce",
    "mld_decode",
    "modulate_bpsk",
    "resolve_code",
    "run_point",
    "run_sweep",
    "shakeel_decode",
    "substream",
    "syndrome",
    "transmit_awgn",
]
