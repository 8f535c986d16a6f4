"""JSON interchange for designs, weightings and certificates.

Rationals travel as ``"p/q"`` strings so nothing is rounded on the way.
"""

from __future__ import annotations

import json
from pathlib import Path

from .design import CoveringDesign, check_weighting, validate
from .errors import AtacError, CertificateError
from .lp import LimitCertificate
from .rational import format_rational, parse_rational


def design_to_dict(design: CoveringDesign) -> dict:
    return design.to_dict()


def design_from_dict(data: dict) -> CoveringDesign:
    try:
        points = [str(p) for p in data["points"]]
        blocks = [[str(x) for x in blk] for blk in data["blocks"]]
    except (KeyError, TypeError) as exc:
        raise AtacError("design JSON needs 'points' and 'blocks' lists") from exc
    return validate(points, blocks)


def weighting_to_dict(w: dict) -> dict:
    return {p: format_rational(x) for p, x in w.items()}


def weighting_from_dict(design: CoveringDesign, data: dict) -> dict:
    w = {str(p): parse_rational(x) for p, x in data.items()}
    check_weighting(design, w)
    return w


def certificate_to_dict(cert: LimitCertificate) -> dict:
    return {
        "limit": format_rational(cert.limit),
        "weighting": weighting_to_dict(cert.weighting),
        "transversal": [format_rational(t) for t in cert.transversal],
    }


def certificate_from_dict(data: dict) -> LimitCertificate:
    try:
        return LimitCertificate(
            parse_rational(data["limit"]),
            {str(p): parse_rational(x) for p, x in data["weighting"].items()},
            tuple(parse_rational(t) for t in data["transversal"]),
        )
    except (KeyError, TypeError, AttributeError) as exc:
        raise CertificateError("certificate JSON needs 'limit', 'weighting' and 'transversal'") from exc


def read_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise AtacError(f"{path}: invalid JSON ({exc})") from exc
    except OSError as exc:
        raise AtacError(f"{path}: {exc.strerror}") from exc


def write_json(path, data) -> None:
    Path(path).write_text(json.dumps(data, indent=2) + "\n")


def load_design(path) -> CoveringDesign:
    """A design file, or a certificate bundle holding one under ``"design"``."""
    data = read_json(path)
    if "design" in data and isinstance(data["design"], dict):
        data = data["design"]
    return design_from_dict(data)
