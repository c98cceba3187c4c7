"""Command-line front end.

Exit codes: 0 success, 1 claim false or verification failed, 2 input error,
3 precision insufficient (retry with a larger --precision or --auto-precision).
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile
from dataclasses import replace
from fractions import Fraction

from . import __version__
from .certbuilder import certify_polynomial, certify_positive, certify_variations, prepare
from .errors import (
    ConsistencyError,
    ConvergenceError,
    DomainError,
    InputError,
    ModeError,
    NotPositiveError,
    PrecisionError,
    SignCertError,
)
from .polyarith import parse_polynomial, parse_scalar, sign_variations
from .rootkit import RootSpec, count_positive_roots, find_roots, partition_roots
from .serialize import certificate_to_dict, dumps, parse_certificate, parse_rootspec, rootspec_to_dict
from .verifier import (
    DescartesAudit,
    PiMultiple,
    check_lemma1,
    check_lemma2,
    check_lemma3,
    descartes_audit,
    verify_certificate,
)

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_PRECISION = 0, 1, 2, 3
MIN_PRECISION = 64
MAX_AUTO_PRECISION = 4096


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(f"{self.prog}: {message}")


def exit_code_for(exc):
    if isinstance(exc, (PrecisionError, ConvergenceError)):
        return EXIT_PRECISION
    if isinstance(exc, (NotPositiveError, ConsistencyError)):
        return EXIT_FAILED
    return EXIT_INPUT


class _Undecidable(Exception):
    """A verification report could not decide some sign."""

    def __init__(self, payload):
        super().__init__("undecidable")
        self.payload = payload


# -- inputs --------------------------------------------------------------------------


def _read_text(value, path):
    if path is not None:
        try:
            with open(path, encoding="utf-8") as fh:
                return fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {path}: {exc.strerror}") from None
    if value == "-":
        return sys.stdin.read()
    return value


def _poly(args, precision):
    text = _read_text(args.poly, getattr(args, "poly_file", None))
    if text is None:
        return None
    return parse_polynomial(text.strip(), precision)


def _roots(args, precision):
    text = _read_text(args.roots, getattr(args, "roots_file", None))
    if text is None:
        return None
    return parse_rootspec(text, precision)


def _one_input(args, precision):
    poly, spec = _poly(args, precision), _roots(args, precision)
    if (poly is None) == (spec is None):
        raise InputError("give exactly one of --poly/--poly-file and --roots/--roots-file")
    return poly, spec


def _cluster_radius(args):
    if args.cluster_radius is None:
        return None
    r = parse_scalar(args.cluster_radius)
    if not isinstance(r, Fraction) or r <= 0:
        raise InputError("--cluster-radius must be a positive rational")
    return r


# -- subcommands ---------------------------------------------------------------------


def _split_zero_roots(spec):
    zero = sum(r.mult for r in spec.roots if r.is_real and r.re == 0)
    rest = RootSpec(tuple(r for r in spec.roots if not (r.is_real and r.re == 0)))
    return rest, zero


def cmd_audit(args, precision):
    poly, spec = _one_input(args, precision)
    if spec is not None:
        audit = descartes_audit(spec)
        approximate = not spec.is_exact
    else:
        part, m, _, spec = prepare(poly, precision, _cluster_radius(args))
        V = sign_variations(poly)
        Z = count_positive_roots(part)
        audit = DescartesAudit(V, Z, V - Z, m)
        approximate = spec.approximate
    out = {
        "V": audit.V,
        "Z": audit.Z,
        "nu": audit.nu,
        "zero_root_multiplicity": audit.zero_root_multiplicity,
        "roots": rootspec_to_dict(spec),
    }
    if approximate:
        out["approximate"] = True
    return EXIT_OK, out


def _certify(kind, args, precision):
    poly, spec = _one_input(args, precision)
    if poly is not None:
        cert = certify_polynomial(poly, kind, precision, _cluster_radius(args))
    else:
        rest, m = _split_zero_roots(spec)
        part = partition_roots(rest)
        build = certify_positive if kind == "positivity" else certify_variations
        cert = build(part, precision)
        if m:
            cert = replace(cert, F=cert.F.shift(m), FK=cert.FK.shift(m), zero_root_multiplicity=m)
    return EXIT_OK, certificate_to_dict(cert)


def cmd_certify_positive(args, precision):
    return _certify("positivity", args, precision)


def cmd_certify_variations(args, precision):
    return _certify("variations", args, precision)


def cmd_verify(args, precision):
    text = sys.stdin.read() if args.cert == "-" else _read_text(None, args.cert)
    cert = parse_certificate(text)
    F = _poly(args, cert.precision_bits)
    if F is None:
        F = cert.F
    report = verify_certificate(F, cert)
    if report.undecidable and not report.passed:
        raise _Undecidable(report.to_dict())
    return (EXIT_OK if report.passed else EXIT_FAILED), report.to_dict()


def cmd_roots(args, precision):
    poly = _poly(args, precision)
    if poly is None:
        raise InputError("roots needs --poly or --poly-file")
    if poly.is_zero():
        raise DomainError("the zero polynomial has no well-defined root structure")
    spec = find_roots(poly, precision, _cluster_radius(args)) if poly.degree > 0 else RootSpec(())
    return EXIT_OK, rootspec_to_dict(spec)


def _scalar_arg(text, name, precision):
    if text is None:
        raise InputError(f"lemma-check needs {name}")
    try:
        return parse_scalar(text, precision)
    except InputError as exc:
        raise InputError(f"{name}: {exc}") from None


def cmd_lemma_check(args, precision):
    if args.lemma == 1:
        beta = _scalar_arg(args.beta, "--beta", precision)
        if args.phi_pi is not None:
            phi = PiMultiple(_scalar_arg(args.phi_pi, "--phi-pi", precision))
        else:
            phi = _scalar_arg(args.phi, "--phi or --phi-pi", precision)
        report = check_lemma1(beta, phi, args.n, precision)
    elif args.lemma == 2:
        if args.values is None:
            raise InputError("lemma-check 2 needs --values")
        values = [_scalar_arg(v, "--values", precision) for v in args.values.split(",")]
        report = check_lemma2(values)
    else:
        if args.L is None or args.M is None or args.q is None:
            raise InputError("lemma-check 3 needs --L, --M and --q")
        L = parse_polynomial(args.L, precision)
        M = parse_polynomial(args.M, precision)
        report = check_lemma3(L, M, args.q, strict_hypothesis=args.strict_hypothesis)
    return (EXIT_OK if report.passed else EXIT_FAILED), report.to_dict()


# -- output ---------------------------------------------------------------------------


def _text_lines(obj, indent=0):
    pad = "  " * indent
    if isinstance(obj, dict):
        for key in sorted(obj):
            value = obj[key]
            if isinstance(value, (dict, list)) and value:
                yield f"{pad}{key}:"
                yield from _text_lines(value, indent + 1)
            else:
                yield f"{pad}{key}: {_text_scalar(value)}"
    elif isinstance(obj, list):
        for item in obj:
            if isinstance(item, (dict, list)):
                yield f"{pad}-"
                yield from _text_lines(item, indent + 1)
            else:
                yield f"{pad}- {_text_scalar(item)}"
    else:
        yield f"{pad}{_text_scalar(obj)}"


def _text_scalar(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if v == [] or v == {}:
        return "(none)"
    return str(v)


def render(payload, fmt):
    if fmt == "json":
        return dumps(payload)
    return "\n".join(_text_lines(payload)) + "\n"


def write_atomic(path, text):
    """Write via a temporary file in the target directory, then rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".signcert-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _error_payload(exc, code):
    err = {"kind": getattr(exc, "kind", "error"), "message": str(exc), "exit_code": code}
    if getattr(exc, "offset", None) is not None:
        err["offset"] = exc.offset
    return {"error": err}


# -- parser ----------------------------------------------------------------------------


COMMANDS = {
    "audit": (cmd_audit, "V, Z and the defect nu of a polynomial or root spec"),
    "certify-positive": (cmd_certify_positive, "multiplier G with F*G having positive coefficients"),
    "certify-variations": (cmd_certify_variations, "multiplier K with V(F*K) = number of positive roots"),
    "verify": (cmd_verify, "recheck a certificate"),
    "roots": (cmd_roots, "locate roots and recover exact values where possible"),
    "lemma-check": (cmd_lemma_check, "check one of the three identities behind the construction"),
}


def build_parser():
    parser = _Parser(
        prog="signcert",
        description="Certificates for sign-variation counts and positivity of univariate polynomials. "
        "Coefficients are ascending: '2,-3,1' is x^2 - 3x + 2.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = _Parser(add_help=False)
    common.add_argument("--precision", type=int, default=256, help="working precision in bits (>= 64, default 256)")
    common.add_argument(
        "--auto-precision",
        action="store_true",
        help=f"on a precision failure, retry with doubled precision up to {MAX_AUTO_PRECISION} bits",
    )
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--out", help="write the report to this file (atomically) instead of stdout")
    common.add_argument("--cluster-radius", help="distance below which numeric roots merge (rational)")

    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_text, description=help_text)
        if name in ("audit", "certify-positive", "certify-variations", "roots", "verify"):
            p.add_argument("--poly", help="ascending comma-separated coefficients, or '-' for stdin")
            p.add_argument("--poly-file", help="file holding the coefficient list")
        if name in ("audit", "certify-positive", "certify-variations"):
            p.add_argument("--roots", help="root spec JSON, or '-' for stdin")
            p.add_argument("--roots-file", help="file holding root spec JSON")
        if name == "verify":
            p.add_argument("--cert", required=True, help="certificate JSON file, or '-' for stdin")
        if name == "lemma-check":
            p.add_argument("lemma", type=int, choices=(1, 2, 3))
            p.add_argument("--beta", help="modulus beta > 0 (identity 1)")
            p.add_argument("--phi", help="angle in radians (identity 1)")
            p.add_argument("--phi-pi", help="angle as a rational multiple of pi (identity 1)")
            p.add_argument("--n", type=int, help="override n (identity 1)")
            p.add_argument("--values", help="positive roots, comma-separated, repeats for multiplicity (identity 2)")
            p.add_argument("--L", help="block polynomial L (identity 3)")
            p.add_argument("--M", help="q-sparse polynomial M (identity 3)")
            p.add_argument("--q", type=int, help="stride q (identity 3)")
            p.add_argument(
                "--strict-hypothesis",
                action="store_true",
                help="require every coefficient of L up to degree q-1 to be positive",
            )
    return parser


_VALUE_OPTIONS = {
    "--poly", "--poly-file", "--roots", "--roots-file", "--cert", "--precision", "--format",
    "--out", "--cluster-radius", "--beta", "--phi", "--phi-pi", "--n", "--values", "--L", "--M", "--q",
}


def _join_values(argv):
    # argparse reads "-1,1" as an option; bind such values to their flag
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_OPTIONS and i + 1 < len(argv) and argv[i + 1].startswith("-") and argv[i + 1] != "-":
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def run(argv=None, stdout=None):
    """Run one request; returns the exit code."""
    stdout = stdout or sys.stdout
    fmt, out_path = "json", None
    try:
        args = build_parser().parse_args(_join_values(sys.argv[1:] if argv is None else list(argv)))
        fmt, out_path = args.format, args.out
        if args.precision < MIN_PRECISION:
            raise InputError(f"--precision must be at least {MIN_PRECISION}")
        handler = COMMANDS[args.command][0]
        precision = args.precision
        while True:
            try:
                code, payload = handler(args, precision)
                break
            except (PrecisionError, ConvergenceError, _Undecidable) as exc:
                if not args.auto_precision or precision * 2 > MAX_AUTO_PRECISION:
                    if isinstance(exc, _Undecidable):
                        code, payload = EXIT_PRECISION, exc.payload
                        break
                    raise
                precision *= 2
    except SignCertError as exc:
        code = exit_code_for(exc)
        payload = _error_payload(exc, code)
    except (ModeError, ValueError, ZeroDivisionError) as exc:
        code = EXIT_INPUT
        payload = _error_payload(exc, code)

    text = render(payload, fmt)
    if out_path and "error" not in payload:
        write_atomic(out_path, text)
    else:
        stdout.write(text)
        stdout.flush()
    return code


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
