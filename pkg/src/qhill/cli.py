"""Command-line front end.

Exit status: 0 on success, 1 on a domain error (message names the error),
2 on a usage error.
"""

import argparse
import os
import random
import sys
import tempfile
from pathlib import Path

from . import analysis, cipher, keyexchange, multinacci, qmatrix
from .errors import DimensionMismatch, InvalidArgument, LambdaPolicyError, QHillError

RANDOM_EPHEMERAL_TRIES = 10_000


def _int_list(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _ephemeral(text):
    if text == "random":
        return text
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or 'random', got {text!r}") from None


def _pair(text):
    plain, sep, ciph = text.partition(":")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected PLAIN:CIPHER, got {text!r}")
    return plain, ciph


def build_parser():
    parser = argparse.ArgumentParser(prog="qhill", description="Affine-Hill cipher keyed by multinacci matrix powers")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("keygen", help="write a key pair to PREFIX.pub and PREFIX.key")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--private", type=int, required=True)
    p.add_argument("--alpha", type=int, help="primitive root (default: the smallest one)")
    p.add_argument("--out", required=True, help="output path prefix")

    p = sub.add_parser("session", help="derive (k, lambda) as sender, or lambda as receiver")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--pub", help="public key file (sender side, needs --ephemeral)")
    g.add_argument("--key", help="private key file (receiver side, needs --signature)")
    p.add_argument("--ephemeral", type=int)
    p.add_argument("--signature", type=int)

    p = sub.add_parser("encrypt", help="encrypt text into an envelope file")
    p.add_argument("--pub", required=True)
    p.add_argument("--ephemeral", type=_ephemeral, required=True, help="exponent e, or 'random'")
    p.add_argument("--shift", type=_int_list, required=True, help="shift vector B, comma-separated")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--text")
    src.add_argument("--infile")
    p.add_argument("--out", required=True)
    p.add_argument("--alphabet", help="alphabet file")

    p = sub.add_parser("decrypt", help="print the plaintext of an envelope")
    p.add_argument("--key", required=True)
    p.add_argument("--envelope", required=True)
    p.add_argument("--alphabet", help="alphabet file")

    p = sub.add_parser("inspect", help="print Q_lambda^k or a run of sequence terms")
    isub = p.add_subparsers(dest="what", required=True)
    q = isub.add_parser("qmatrix")
    q.add_argument("--lambda", dest="lam", type=int, required=True)
    q.add_argument("--power", type=int, default=1)
    q.add_argument("--mod", type=int, required=True)
    s = isub.add_parser("sequence")
    s.add_argument("--lambda", dest="lam", type=int, required=True)
    s.add_argument("--lo", type=int, required=True)
    s.add_argument("--hi", type=int, required=True)
    s.add_argument("--mod", type=int)

    p = sub.add_parser("analyze", help="keyspace report")
    asub = p.add_subparsers(dest="what", required=True)
    k = asub.add_parser("keyspace")
    k.add_argument("--prime", type=int, required=True)
    k.add_argument("--lambda", dest="lam", type=int, required=True)
    k.add_argument("--kmax", type=int, help="largest power to enumerate (default p-1)")

    p = sub.add_parser("attack", help="known-plaintext search over (lambda, k)")
    p.add_argument("--prime", type=int, help="modulus (taken from --envelope if given)")
    p.add_argument("--pair", type=_pair, action="append", default=[], help="PLAIN:CIPHER, repeatable")
    p.add_argument("--envelope", help="envelope whose plaintext is known (supplies p and B)")
    p.add_argument("--plain", help="known plaintext of --envelope")
    p.add_argument("--shift", type=_int_list, help="known shift vector B")
    p.add_argument("--lambda-max", type=int, default=8)
    p.add_argument("--k-max", type=int, default=100)
    p.add_argument("--max-tries", type=int)
    p.add_argument("--alphabet", help="alphabet file")
    return parser


def _read(path):
    return Path(path).read_text(encoding="utf-8")


def write_atomic(path, text):
    """Write via a temp file in the target directory, then rename over ``path``."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _alphabet(args):
    if getattr(args, "alphabet", None):
        return cipher.Alphabet.from_json(_read(args.alphabet))
    return cipher.DEFAULT_ALPHABET


def cmd_keygen(args, out):
    pk, sk = keyexchange.make_keypair(args.prime, args.private, args.alpha)
    write_atomic(f"{args.out}.pub", pk.to_json())
    write_atomic(f"{args.out}.key", sk.to_json())
    print(f"public key pk({pk.p},{pk.e1},{pk.e2}) -> {args.out}.pub", file=out)


def cmd_session(args, out):
    if args.pub:
        if args.ephemeral is None:
            raise InvalidArgument("--pub needs --ephemeral")
        s = keyexchange.derive_session(keyexchange.PublicKey.from_json(_read(args.pub)), args.ephemeral)
        print(f"k={s.k} lambda={s.lam}", file=out)
    else:
        if args.signature is None:
            raise InvalidArgument("--key needs --signature")
        sk = keyexchange.PrivateKey.from_json(_read(args.key))
        print(f"lambda={keyexchange.recover_session(sk, args.signature)}", file=out)


def _pick_ephemeral(pk, lam):
    rng = random.SystemRandom()
    for _ in range(RANDOM_EPHEMERAL_TRIES):
        e = rng.randrange(2, pk.p - 1)
        try:
            if keyexchange.derive_session(pk, e).lam == lam:
                return e
        except LambdaPolicyError:
            continue
    raise InvalidArgument(f"no ephemeral exponent found giving lambda={lam} after {RANDOM_EPHEMERAL_TRIES} tries")


def cmd_encrypt(args, out):
    pk = keyexchange.PublicKey.from_json(_read(args.pub))
    text = args.text if args.text is not None else _read(args.infile).rstrip("\n")
    e = args.ephemeral
    if e == "random":
        if pk.p <= 3:
            raise InvalidArgument(f"no ephemeral exponent exists for p={pk.p}")
        e = _pick_ephemeral(pk, len(args.shift))
        print(f"ephemeral={e}", file=out)
    session = keyexchange.derive_session(pk, e)
    if len(args.shift) != session.lam:
        raise DimensionMismatch(f"--shift has {len(args.shift)} entries but the derived lambda is {session.lam}")
    env = cipher.encrypt_message(pk, e, args.shift, text, _alphabet(args))
    write_atomic(args.out, env.to_json())


def cmd_decrypt(args, out):
    sk = keyexchange.PrivateKey.from_json(_read(args.key))
    env = cipher.Envelope.from_json(_read(args.envelope))
    print(cipher.decrypt_message(sk, env, _alphabet(args)), file=out)


def cmd_inspect(args, out):
    if args.what == "qmatrix":
        print(qmatrix.q_power(args.lam, args.power, args.mod).format(), file=out)
    else:
        w = multinacci.terms(args.lam, args.lo, args.hi, args.mod)
        for n, f in zip(range(w.lo, w.hi + 1), w.terms):
            print(f"{n} {f}", file=out)


def cmd_analyze(args, out):
    report = analysis.keyspace_report(args.prime, args.lam, args.kmax)
    out.write(report.to_json())


def cmd_attack(args, out):
    alphabet = _alphabet(args)
    p, shift = args.prime, args.shift
    texts = list(args.pair)
    if args.envelope:
        if args.plain is None:
            raise InvalidArgument("--envelope needs --plain")
        env = cipher.Envelope.from_json(_read(args.envelope))
        p = env.p
        shift = shift if shift is not None else list(env.b)
        lam = len(env.b)
        padded = cipher.make_blocks(cipher.encode(args.plain, alphabet), lam, alphabet.pad)[0]
        texts.append(([v for blk in padded for v in blk], env.cipher))
    if p is None:
        raise InvalidArgument("--prime is required without --envelope")
    cipher_alpha = alphabet.extended(p)
    pairs = []
    for plain, ciph in texts:
        pv = plain if isinstance(plain, list) else cipher.encode(plain, alphabet)
        pairs.append((pv, cipher.encode(ciph, cipher_alpha)))
    result = analysis.known_plaintext_attack(pairs, p, shift, args.lambda_max, args.k_max, args.max_tries)
    out.write(result.to_json())


COMMANDS = {
    "keygen": cmd_keygen,
    "session": cmd_session,
    "encrypt": cmd_encrypt,
    "decrypt": cmd_decrypt,
    "inspect": cmd_inspect,
    "analyze": cmd_analyze,
    "attack": cmd_attack,
}


def main(argv=None, out=None):
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        COMMANDS[args.command](args, out)
    except QHillError as exc:
        print(f"qhill: {exc.name}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"qhill: io-error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
