"""Sample points: parsing, canonical text form, default grids."""
from collections.abc import Iterable


def parse_point(text) -> complex:
    """Accept ``re``, ``re,im`` or a complex literal such as ``1+1j`` / ``1+i``."""
    if isinstance(text, (int, float, complex)):
        return complex(text)
    token = str(text).strip()
    if "," in token:
        re_part, im_part = token.split(",", 1)
        return complex(float(re_part), float(im_part))
    if token.endswith("i"):
        token = token[:-1] + "j"
    try:
        return complex(token.replace(" ", ""))
    except ValueError:
        raise ValueError(f"cannot read {text!r} as a complex number") from None


def parse_points(values: Iterable) -> list[complex]:
    return [parse_point(v) for v in values]


def format_point(z: complex) -> str:
    z = complex(z)
    if z.imag == 0:
        return repr(z.real)
    sign = "+" if z.imag >= 0 else "-"
    return f"{z.real!r}{sign}{abs(z.imag)!r}i"


def default_sample_points(count: int) -> list[complex]:
    """½, 1, 3/2, ... followed by 1+i and 2+i."""
    if count < 2:
        raise ValueError(f"need at least 2 points, got {count}")
    real = [complex(k / 2) for k in range(1, count - 1)]
    return real + [complex(1, 1), complex(2, 1)]
