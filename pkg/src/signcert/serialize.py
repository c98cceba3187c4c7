"""JSON wire formats for root specifications, certificates and check reports.

Scalars travel as strings: ``"p/q"`` for exact values and
``"<decimal>+/-2^k"`` for balls.  Polynomials travel as ascending
comma-separated coefficient strings, the same grammar as ``--poly``.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .ball import DEFAULT_PRECISION
from .certbuilder import Certificate, GeometricMultiplier
from .errors import InputError
from .polyarith import Polynomial, format_polynomial, format_scalar, parse_polynomial, parse_scalar
from .rootkit import Root, RootSpec, _exact_sqrt


def dumps(obj):
    """Byte-stable JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def loads(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc.msg}", exc.pos) from None


# -- root specifications ------------------------------------------------------------


def _im_fields(root):
    """``{"im": ...}`` when the imaginary part is exact, else ``{"im2": ...}``."""
    if isinstance(root.im_sq, Fraction):
        im = _exact_sqrt(root.im_sq)
        if im is not None:
            return {"im": format_scalar(im)}
    return {"im2": format_scalar(root.im_sq)}


def rootspec_to_dict(spec):
    real = [{"value": format_scalar(r.re), "mult": r.mult} for r in spec.roots if r.is_real]
    cplx = [
        {"re": format_scalar(r.re), **_im_fields(r), "mult": r.mult}
        for r in spec.roots
        if not r.is_real
    ]
    out = {"real": real, "complex": cplx}
    if spec.approximate:
        out["approximate"] = True
    if spec.notes:
        out["notes"] = list(spec.notes)
    return out


def _field(rec, key, where, precision):
    if key not in rec:
        raise InputError(f"{where}: missing {key!r}")
    v = rec[key]
    if not isinstance(v, str):
        raise InputError(f"{where}: {key!r} must be a string scalar, got {type(v).__name__}")
    try:
        return parse_scalar(v, precision)
    except InputError as exc:
        raise InputError(f"{where}: {exc}") from None


def _mult(rec, where):
    m = rec.get("mult", 1)
    if not isinstance(m, int) or isinstance(m, bool) or m < 1:
        raise InputError(f"{where}: mult must be a positive integer")
    return m


def rootspec_from_dict(data, precision=DEFAULT_PRECISION):
    if not isinstance(data, dict):
        raise InputError("root spec must be a JSON object")
    extra = set(data) - {"real", "complex", "approximate", "notes"}
    if extra:
        raise InputError(f"unknown root spec keys {sorted(extra)}")
    roots = []
    for i, rec in enumerate(data.get("real", [])):
        where = f"real[{i}]"
        if not isinstance(rec, dict) or set(rec) - {"value", "mult"}:
            raise InputError(f"{where}: expected {{value, mult}}")
        roots.append(Root(_field(rec, "value", where, precision), 0, _mult(rec, where)))
    for i, rec in enumerate(data.get("complex", [])):
        where = f"complex[{i}]"
        if not isinstance(rec, dict) or set(rec) - {"re", "im", "im2", "mult"}:
            raise InputError(f"{where}: expected {{re, im | im2, mult}}")
        re = _field(rec, "re", where, precision)
        if ("im" in rec) == ("im2" in rec):
            raise InputError(f"{where}: give exactly one of 'im' and 'im2'")
        if "im" in rec:
            im = _field(rec, "im", where, precision)
            im_sq = im * im
            positive = im > 0 if isinstance(im, Fraction) else im.lo > 0
        else:
            im_sq = _field(rec, "im2", where, precision)
            positive = im_sq > 0 if isinstance(im_sq, Fraction) else im_sq.lo > 0
        if not positive:
            raise InputError(f"{where}: imaginary part must be positive (the conjugate is implied)")
        roots.append(Root(re, im_sq, _mult(rec, where)))
    return RootSpec(tuple(roots), approximate=bool(data.get("approximate", False)))


def parse_rootspec(text, precision=DEFAULT_PRECISION):
    return rootspec_from_dict(loads(text), precision)


def format_rootspec(spec):
    return dumps(rootspec_to_dict(spec))


# -- certificates ----------------------------------------------------------------------


def certificate_to_dict(cert):
    lam3 = []
    for t in cert.trig:
        rec = {
            "re": format_scalar(t.root.re),
            "im": format_scalar(t.root.im),
            "im_sq": format_scalar(t.root.im_sq),
            "mult": t.root.mult,
            "phi": format_scalar(t.angle.phi),
            "n": t.angle.n,
            "boundary": t.angle.boundary,
            "g_coeffs": format_polynomial(t.g),
        }
        lam3.append(rec)
    lam4 = [
        {"alpha": format_scalar(g.alpha), "mult": m, "h_degree": g.h.degree}
        for g, m in cert.geometric
    ]
    polys = {k: format_polynomial(getattr(cert, k)) for k in ("F", "G", "H", "K", "L", "M", "FK")}
    return {
        "kind": cert.kind,
        "mode": cert.mode,
        "precision_bits": cert.precision_bits,
        "p": cert.p,
        "q": cert.q,
        **polys,
        "V_FK": cert.V_FK,
        "nu_FK": cert.nu_FK,
        "lambda3": lam3,
        "lambda4": lam4,
        "assumptions": list(cert.assumptions),
        "zero_root_multiplicity": cert.zero_root_multiplicity,
        "flipped": cert.flipped,
        "notes": list(cert.notes),
    }


_CERT_INTS = ("precision_bits", "p", "q", "V_FK", "nu_FK")
_CERT_POLYS = ("F", "G", "H", "K", "L", "M", "FK")


def certificate_from_dict(data):
    """Rebuild the claim set of a certificate; nothing is rechecked here."""
    if not isinstance(data, dict):
        raise InputError("certificate must be a JSON object")
    for key in ("kind", "mode", *_CERT_INTS, *_CERT_POLYS):
        if key not in data:
            raise InputError(f"certificate is missing {key!r}")
    for key in _CERT_INTS:
        if not isinstance(data[key], int) or isinstance(data[key], bool):
            raise InputError(f"certificate field {key!r} must be an integer")
    prec = data["precision_bits"]
    if prec < 2:
        raise InputError("precision_bits must be at least 2")
    polys = {}
    for key in _CERT_POLYS:
        if not isinstance(data[key], str):
            raise InputError(f"certificate field {key!r} must be a coefficient string")
        try:
            polys[key] = parse_polynomial(data[key], prec)
        except InputError as exc:
            raise InputError(f"certificate field {key!r}: {exc}") from None
    q = data["q"]
    if q < 1:
        raise InputError("q must be positive")
    geometric = []
    for i, rec in enumerate(data.get("lambda4", [])):
        where = f"lambda4[{i}]"
        if not isinstance(rec, dict):
            raise InputError(f"{where}: expected an object")
        alpha = _field(rec, "alpha", where, prec)
        h = Polynomial([alpha ** (q - 1 - j) for j in range(q)])
        geometric.append((GeometricMultiplier(alpha, q, h), _mult(rec, where)))
    return Certificate(
        kind=data["kind"],
        **polys,
        p=data["p"],
        q=q,
        V_FK=data["V_FK"],
        nu_FK=data["nu_FK"],
        mode=data["mode"],
        precision_bits=prec,
        geometric=tuple(geometric),
        assumptions=tuple(data.get("assumptions", ())),
        zero_root_multiplicity=data.get("zero_root_multiplicity", 0),
        flipped=bool(data.get("flipped", False)),
        notes=tuple(data.get("notes", ())),
    )


def format_certificate(cert):
    return dumps(certificate_to_dict(cert))


def parse_certificate(text):
    return certificate_from_dict(loads(text))

