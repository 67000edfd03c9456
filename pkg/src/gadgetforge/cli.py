"""Command-line frontend.

Subcommands: keygen, sign, verify, stattest, bench.  Exit codes are a
stable contract:

    0  success / signature accepted / statistical suite passed
    1  signature rejected / statistical suite failed
    2  malformed input file
    3  configuration or usage error (unknown flag, bad paramset, IO error)

``--seed`` makes every command deterministic: the value is hex; exactly 64
hex digits are used verbatim as the 32-byte seed, anything else is absorbed
through SHAKE256 into 32 bytes.
"""

import argparse
import hashlib
import json
import sys
import time

from . import codec, eagle, params as params_mod, robin, stattest
from .keysearch import KeygenRestartLimit
from .rng import XofRng

EXIT_OK = 0
EXIT_REJECT = 1
EXIT_MALFORMED = 2
EXIT_CONFIG = 3


class CliError(Exception):
    def __init__(self, message, code=EXIT_CONFIG):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError(message)


def _seed_bytes(text):
    if text is None:
        return None
    try:
        raw = bytes.fromhex(text)
    except ValueError:
        raise CliError("--seed must be a hex string") from None
    if len(raw) == 32:
        return raw
    return hashlib.shake_256(raw).digest(32)


def _params(args):
    try:
        ps = params_mod.get_params(args.paramset)
    except KeyError as exc:
        raise CliError(str(exc)) from None
    scheme = getattr(args, "scheme", None)
    if scheme and ps.scheme != scheme:
        raise CliError("parameter set %s belongs to scheme %s"
                       % (ps.name, ps.scheme))
    return ps


def _read(path):
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        raise CliError("cannot read %s: %s" % (path, exc)) from None


def cmd_keygen(args):
    ps = _params(args)
    rng = XofRng(_seed_bytes(args.seed))
    try:
        if ps.scheme == "robin":
            pk, sk = robin.robin_keygen(ps, rng)
            quality, restarts = sk.quality, sk.restarts
        else:
            kp = eagle.eagle_keygen(ps, rng)
            pk, sk = kp.public(), kp
            quality, restarts = kp.quality, kp.restarts
    except KeygenRestartLimit as exc:
        raise CliError(str(exc)) from None
    mod = robin if ps.scheme == "robin" else eagle
    pk_path = args.out + codec.FILE_SUFFIX[(ps.scheme, "pk")]
    sk_path = args.out + codec.FILE_SUFFIX[(ps.scheme, "sk")]
    try:
        mod.save_public_key(pk_path, pk, ps)
        mod.save_secret_key(sk_path, sk, ps)
    except OSError as exc:
        raise CliError("cannot write key files: %s" % exc) from None
    enc = len(codec.encode_public_key(pk, ps))
    print("wrote %s (%d-byte encoding) and %s" % (pk_path, enc, sk_path))
    print("trapdoor quality %.3f (bound %.3f), %d restart(s)"
          % (quality, ps.quality_bound, restarts))
    return EXIT_OK


def cmd_sign(args):
    data = _read(args.key)
    try:
        ps, _ = codec.unframe("sk", data)
        mod = robin if ps.scheme == "robin" else eagle
        ps, sk = mod.load_secret_key(args.key)
    except codec.MalformedEncoding as exc:
        print("malformed secret key: %s" % exc, file=sys.stderr)
        return EXIT_MALFORMED
    msg = _read(args.inp)
    rng = XofRng(_seed_bytes(args.seed))
    try:
        if ps.scheme == "robin":
            pk = robin.RobinPublicKey(h=sk.h)
            sig = robin.robin_sign(msg, sk, pk, ps, rng)
            robin.save_signature(args.out, sig, ps)
        else:
            sig = eagle.eagle_sign(msg, sk, ps, rng)
            eagle.save_signature(args.out, sig, ps)
    except OSError as exc:
        raise CliError("cannot write %s: %s" % (args.out, exc)) from None
    print("wrote %s" % args.out)
    return EXIT_OK


def cmd_verify(args):
    key_data = _read(args.key)
    sig_data = _read(args.sig)
    msg = _read(args.inp)
    try:
        ps, _ = codec.unframe("pk", key_data)
        mod = robin if ps.scheme == "robin" else eagle
        ps, pk = mod.load_public_key(args.key)
        ps2, sig = mod.load_signature(args.sig, ps)
    except codec.MalformedEncoding as exc:
        print("malformed input: %s" % exc, file=sys.stderr)
        return EXIT_MALFORMED
    if ps.scheme == "robin":
        ok = robin.robin_verify(msg, sig, pk, ps)
    else:
        ok = eagle.eagle_verify(msg, sig, pk, ps)
    print("accept" if ok else "reject")
    return EXIT_OK if ok else EXIT_REJECT


def cmd_stattest(args):
    ps = _params(args)
    seed = _seed_bytes(args.seed) or XofRng().seed
    report = stattest.run_simulatability(ps.scheme, ps, args.trials, seed,
                                         width_scale=args.debug_scale_width)
    text = json.dumps(report, indent=2) if args.json \
        else stattest.format_report(report)
    if args.out:
        try:
            with open(args.out, "w") as fh:
                fh.write(json.dumps(report, indent=2) + "\n")
        except OSError as exc:
            raise CliError("cannot write %s: %s" % (args.out, exc)) from None
    print(text)
    return EXIT_OK if report["all_pass"] else EXIT_REJECT


def cmd_bench(args):
    ps = _params(args)
    rng = XofRng(_seed_bytes(args.seed))
    t0 = time.perf_counter()
    if ps.scheme == "robin":
        pk, sk = robin.robin_keygen(ps, rng)
        sign = lambda m: robin.robin_sign(m, sk, pk, ps, rng)
        verify = lambda m, s: robin.robin_verify(m, s, pk, ps)
    else:
        kp = eagle.eagle_keygen(ps, rng)
        pk = kp.public()
        sign = lambda m: eagle.eagle_sign(m, kp, ps, rng)
        verify = lambda m, s: eagle.eagle_verify(m, s, pk, ps)
    keygen_time = time.perf_counter() - t0
    msgs = [rng.bytes(32) for _ in range(args.trials)]
    t0 = time.perf_counter()
    sigs = [sign(m) for m in msgs]
    sign_time = time.perf_counter() - t0
    t0 = time.perf_counter()
    for m, s in zip(msgs, sigs):
        verify(m, s)
    verify_time = time.perf_counter() - t0
    report = {
        "paramset": ps.name,
        "trials": args.trials,
        "keygen_seconds": keygen_time,
        "sign_ops_per_second": args.trials / sign_time,
        "verify_ops_per_second": args.trials / verify_time,
    }
    if args.json:
        print(json.dumps(report, indent=2))
    else:
        print("%s: keygen %.2fs, sign %.1f ops/s, verify %.1f ops/s"
              % (ps.name, keygen_time, report["sign_ops_per_second"],
                 report["verify_ops_per_second"]))
    return EXIT_OK


def build_parser():
    parser = _Parser(prog="gadgetforge",
                     description="compact-gadget hash-and-sign signatures")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, scheme_flags=True):
        if scheme_flags:
            p.add_argument("--scheme", choices=["robin", "eagle"])
            p.add_argument("--paramset", required=True,
                           help="parameter-set name, e.g. robin-701")
        p.add_argument("--seed", help="hex seed for deterministic output")

    kg = sub.add_parser("keygen", help="generate a key pair")
    common(kg)
    kg.add_argument("--out", required=True, help="output path prefix")
    kg.set_defaults(func=cmd_keygen)

    sg = sub.add_parser("sign", help="sign a message file")
    sg.add_argument("--key", required=True, help="secret-key file")
    sg.add_argument("--in", dest="inp", required=True, help="message file")
    sg.add_argument("--out", required=True, help="signature file to write")
    sg.add_argument("--seed", help="hex seed for deterministic output")
    sg.set_defaults(func=cmd_sign)

    vf = sub.add_parser("verify", help="verify a signature file")
    vf.add_argument("--key", required=True, help="public-key file")
    vf.add_argument("--sig", required=True, help="signature file")
    vf.add_argument("--in", dest="inp", required=True, help="message file")
    vf.set_defaults(func=cmd_verify)

    st = sub.add_parser("stattest", help="run the simulatability suite")
    common(st)
    st.add_argument("--trials", type=int, default=100000)
    st.add_argument("--json", action="store_true")
    st.add_argument("--out", help="also write the JSON report here")
    st.add_argument("--debug-scale-width", type=float, default=1.0,
                    help="debug: scale every Gaussian width (negative control)")
    st.set_defaults(func=cmd_stattest)

    bn = sub.add_parser("bench", help="sign/verify throughput")
    common(bn)
    bn.add_argument("--trials", type=int, default=100)
    bn.add_argument("--json", action="store_true")
    bn.set_defaults(func=cmd_bench)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        code = args.func(args)
    except CliError as exc:
        print("error: %s" % exc, file=sys.stderr)
        code = exc.code
    except (ValueError, KeygenRestartLimit) as exc:
        print("error: %s" % exc, file=sys.stderr)
        code = EXIT_CONFIG
    if argv is None:
        sys.exit(code)
    return code


if __name__ == "__main__":
    main()
