"""Command-line frontend.

Subcommands:
  * ``simulate``: run a sweep from a JSON config, streaming CSV rows as
    points complete;
  * ``decode``: decode a few random noisy blocks verbosely, optionally
    dumping per-generation Hamming-distance traces;
  * ``code-info``: print the parameters of a built-in or file-defined code.

Exit codes: 0 success, 2 bad configuration or unknown name (with a
diagnostic on stderr), 130 interrupted (partial CSV is preserved).
The environment variable ``ECCGA_SEED`` provides a fallback seed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from .baselines import build_syndrome_table, chase2_decode, mld_decode, shakeel_decode_batch
from .cgad import CgadParams, decode_batch
from .channel import modulate_bpsk, substream, transmit_awgn
from .codes import describe, encode, resolve_code
from .errors import ConfigError
from .simulate import DECODER_IDS, BerPoint, DecoderSpec, StopRules, SweepConfig, run_sweep

CSV_HEADER = (
    "code,decoder,ebn0_db,blocks,bit_errors,frame_errors,ber,fer,"
    "avg_generations,avg_decode_seconds,seed,hit_max_blocks"
)

_PARAM_FIELDS = {
    "step_inv": int,
    "variant": str,
    "init_mode": str,
    "soft_clamp_delta": float,
    "max_generations": int,
    "record_trace": bool,
}


def _require(mapping: dict, key: str, kind, where: str, default=None, required=False):
    if key not in mapping:
        if required:
            raise ConfigError(f"{where}: missing required field {key!r}")
        return default
    value = mapping[key]
    if kind is float and isinstance(value, int):
        value = float(value)
    if not isinstance(value, kind):
        raise ConfigError(f"{where}.{key}: expected {kind.__name__}, got {type(value).__name__}")
    return value


def config_from_dict(data: dict, where: str = "config") -> SweepConfig:
    """Validate a parsed JSON object into a SweepConfig with field diagnostics."""
    if not isinstance(data, dict):
        raise ConfigError(f"{where}: expected a JSON object at the top level")
    codes = _require(data, "codes", list, where, required=True)
    if not all(isinstance(c, str) for c in codes):
        raise ConfigError(f"{where}.codes: every entry must be a string")
    raw_decoders = _require(data, "decoders", list, where, required=True)
    decoders = []
    for i, entry in enumerate(raw_decoders):
        loc = f"{where}.decoders[{i}]"
        if isinstance(entry, str):
            entry = {"id": entry}
        if not isinstance(entry, dict):
            raise ConfigError(f"{loc}: expected an object or a decoder id string")
        dec_id = _require(entry, "id", str, loc, required=True)
        if dec_id not in DECODER_IDS:
            raise ConfigError(f"{loc}.id: unknown decoder {dec_id!r}; valid: {', '.join(DECODER_IDS)}")
        params = None
        if "params" in entry:
            raw = entry["params"]
            if not isinstance(raw, dict):
                raise ConfigError(f"{loc}.params: expected an object")
            kwargs = {}
            for key, value in raw.items():
                if key not in _PARAM_FIELDS:
                    raise ConfigError(f"{loc}.params.{key}: unknown parameter")
                kind = _PARAM_FIELDS[key]
                if kind is float and isinstance(value, int):
                    value = float(value)
                if not isinstance(value, kind) or isinstance(value, bool) and kind is not bool:
                    raise ConfigError(f"{loc}.params.{key}: expected {kind.__name__}")
                kwargs[key] = value
            try:
                params = CgadParams(**kwargs)
            except ValueError as exc:
                raise ConfigError(f"{loc}.params: {exc}") from exc
        decoders.append(DecoderSpec(id=dec_id, params=params))
    ebn0 = _require(data, "ebn0_db", list, where, required=True)
    if not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in ebn0):
        raise ConfigError(f"{where}.ebn0_db: every entry must be a number")
    stop_raw = _require(data, "stop", dict, where, default={})
    stop = StopRules(
        min_blocks=_require(stop_raw, "min_blocks", int, f"{where}.stop", default=1000),
        min_bit_errors=_require(stop_raw, "min_bit_errors", int, f"{where}.stop", default=200),
        max_blocks=_require(stop_raw, "max_blocks", int, f"{where}.stop", default=10_000_000),
    )
    seed = _require(data, "seed", int, where, default=None)
    threads = _require(data, "threads", int, where, default=1)
    if seed is None:
        seed = _env_seed(default=0)
    return SweepConfig(
        codes=list(codes),
        decoders=decoders,
        ebn0_db=[float(x) for x in ebn0],
        stop=stop,
        seed=seed,
        threads=threads,
    )


def _env_seed(default: int) -> int:
    raw = os.environ.get("ECCGA_SEED")
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError as exc:
        raise ConfigError(f"ECCGA_SEED must be an integer, got {raw!r}") from exc


def format_point(point: BerPoint) -> str:
    return ",".join(
        [
            point.code_name,
            point.decoder_id,
            format(point.ebn0_db, ".12g"),
            str(point.blocks),
            str(point.bit_errors),
            str(point.frame_errors),
            format(point.ber, ".12g"),
            format(point.fer, ".12g"),
            format(point.avg_generations, ".12g"),
            format(point.avg_decode_seconds, ".6g"),
            str(point.seed),
            "true" if point.hit_max_blocks else "false",
        ]
    )


def _cmd_simulate(args) -> int:
    path = Path(args.config)
    try:
        text = path.read_text()
    except OSError as exc:
        print(f"error: cannot read config {path}: {exc}", file=sys.stderr)
        return 2
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        print(f"error: {path}:{exc.lineno}:{exc.colno}: {exc.msg}", file=sys.stderr)
        return 2
    try:
        config = config_from_dict(data, where=str(path))
        if args.seed is not None:
            config.seed = args.seed
        if args.threads is not None:
            config.threads = args.threads
        out = open(args.out, "w") if args.out else sys.stdout
        try:
            print(CSV_HEADER, file=out, flush=True)

            def emit(point: BerPoint) -> None:
                print(format_point(point), file=out, flush=True)

            run_sweep(config, on_point=emit)
        finally:
            if out is not sys.stdout:
                out.close()
    except (ConfigError, KeyError) as exc:
        msg = exc.args[0] if exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return 2
    except KeyboardInterrupt:
        print("interrupted; partial results preserved", file=sys.stderr)
        return 130
    return 0


def _cmd_decode(args) -> int:
    try:
        code = resolve_code(args.code)
    except KeyError as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return 2
    params = CgadParams(
        step_inv=args.step_inv,
        variant=args.decoder if args.decoder in ("cgad", "ocgad") else "cgad",
        record_trace=args.trace,
    )
    if args.max_generations is not None:
        params.max_generations = args.max_generations
    seed = args.seed if args.seed is not None else _env_seed(default=0)
    rate = code.k / code.n
    table = build_syndrome_table(code) if args.decoder == "chase2" else None

    print(f"# {code.name}: n={code.n} k={code.k} d={code.d}, decoder={args.decoder}, "
          f"ebn0={args.ebn0} dB, seed={seed}")
    print("block,shortcut,generations,fitness,success")
    for b in range(args.blocks):
        rng = substream(seed, b)
        info = rng.integers(0, 2, size=code.k, dtype=np.uint8)
        cw = encode(code, info)
        rw = transmit_awgn(modulate_bpsk(cw), args.ebn0, rate, rng)
        if args.decoder in ("cgad", "ocgad"):
            res = decode_batch(code, [rw], params, [rng])[0]
        elif args.decoder == "shakeel":
            res = shakeel_decode_batch(code, [rw], params, [rng])[0]
        elif args.decoder == "chase2":
            res = chase2_decode(code, table, rw)
        else:
            res = mld_decode(code, rw)
        success = bool(np.array_equal(res.codeword, cw))
        print(f"{b},{int(res.syndrome_shortcut)},{res.generations},{res.fitness:.6g},{int(success)}")
        if args.trace and res.hamming_trace is not None:
            print("trace," + ",".join(str(d) for d in res.hamming_trace))
    return 0


def _cmd_code_info(args) -> int:
    try:
        code = resolve_code(args.code)
    except KeyError as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return 2
    print(describe(code))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="eccga", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run a BER sweep from a JSON config")
    sim.add_argument("--config", required=True, help="path to the sweep config (JSON)")
    sim.add_argument("--out", help="CSV output path (default: stdout)")
    sim.add_argument("--seed", type=int, help="override the config seed")
    sim.add_argument("--threads", type=int, help="override the config thread count")
    sim.set_defaults(func=_cmd_simulate)

    dec = sub.add_parser("decode", help="decode random noisy blocks verbosely")
    dec.add_argument("--code", required=True)
    dec.add_argument("--ebn0", type=float, required=True, help="Eb/N0 in dB")
    dec.add_argument("--decoder", required=True, choices=DECODER_IDS)
    dec.add_argument("--blocks", type=int, default=10)
    dec.add_argument("--trace", action="store_true", help="dump per-generation Hamming distances")
    dec.add_argument("--seed", type=int)
    dec.add_argument("--step-inv", type=int, default=500, dest="step_inv")
    dec.add_argument("--max-generations", type=int, dest="max_generations")
    dec.set_defaults(func=_cmd_decode)

    info = sub.add_parser("code-info", help="print code parameters")
    info.add_argument("--code", required=True)
    info.set_defaults(func=_cmd_code_info)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
