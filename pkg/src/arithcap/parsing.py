"""Text format for polynomials and series used across the CLI.

Grammar (whitespace free between tokens is fine):

    poly  := [sign] term (sign term)*
    term  := coeff [['*'] var ['^' uint]] | var ['^' uint]
    coeff := uint | uint '/' uint | uint '.' digits
    var   := a single letter; all occurrences in one polynomial must agree

Decimals are converted by literal place value ("0.25" -> 1/4), never through
binary floating point.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import PolyParseError
from .polys import RatPoly


def parse_polynomial(text: str) -> RatPoly:
    """Parse the documented polynomial grammar into an exact RatPoly.

    >>> parse_polynomial("x^2 - 1/3*x + 5").coeffs
    (5, Fraction(-1, 3), 1)
    >>> parse_polynomial("x").coeffs
    (0, 1)
    """
    s = text
    n = len(s)
    i = 0
    var: str | None = None
    terms: list[tuple[int, Fraction]] = []

    def skip_ws(j: int) -> int:
        while j < n and s[j].isspace():
            j += 1
        return j

    def parse_uint(j: int) -> tuple[str, int]:
        start = j
        while j < n and s[j].isdigit():
            j += 1
        if j == start:
            raise PolyParseError("expected digits", start)
        return s[start:j], j

    i = skip_ws(i)
    if i == n:
        raise PolyParseError("empty polynomial", 0)

    first = True
    while True:
        i = skip_ws(i)
        sign = 1
        if i < n and s[i] in "+-":
            sign = -1 if s[i] == "-" else 1
            i = skip_ws(i + 1)
        elif not first:
            if i >= n:
                break
            raise PolyParseError(f"expected '+' or '-', found {s[i]!r}", i)
        first = False
        if i >= n:
            raise PolyParseError("dangling sign", i - 1)

        coeff = Fraction(1)
        have_coeff = False
        if s[i].isdigit():
            num, i = parse_uint(i)
            if i < n and s[i] == "/":
                den, i = parse_uint(i + 1)
                if int(den) == 0:
                    raise PolyParseError("zero denominator", i - len(den))
                coeff = Fraction(int(num), int(den))
            elif i < n and s[i] == ".":
                frac_digits, i = parse_uint(i + 1)
                coeff = Fraction(int(num + frac_digits), 10 ** len(frac_digits))
            else:
                coeff = Fraction(int(num))
            have_coeff = True
            i = skip_ws(i)
            if i < n and s[i] == "*":
                i = skip_ws(i + 1)
                if i >= n or not s[i].isalpha():
                    raise PolyParseError("expected variable after '*'", i if i < n else n - 1)

        power = 0
        if i < n and s[i].isalpha():
            if var is None:
                var = s[i]
            elif s[i] != var:
                raise PolyParseError(f"inconsistent variable {s[i]!r} (expected {var!r})", i)
            i += 1
            power = 1
            if i < n and s[i] == "^":
                i += 1
                if i >= n or not s[i].isdigit():
                    raise PolyParseError("expected exponent digits after '^'", i if i < n else n - 1)
                exp, i = parse_uint(i)
                power = int(exp)
        elif not have_coeff:
            raise PolyParseError(f"unexpected character {s[i]!r}", i)

        terms.append((power, sign * coeff))
        i = skip_ws(i)
        if i >= n:
            break

    deg = max(p for p, _ in terms)
    coeffs = [Fraction(0)] * (deg + 1)
    for p, c in terms:
        coeffs[p] += c
    return RatPoly(coeffs)


def _scalar_str(c) -> str:
    if isinstance(c, Fraction) and c.denominator != 1:
        return f"{c.numerator}/{c.denominator}"
    return str(int(c))


def poly_to_string(f: RatPoly, var: str = "x") -> str:
    """Render in the same grammar parse_polynomial accepts; round-trips exactly."""
    if f.is_zero:
        return "0"
    parts = []
    for i in range(f.degree, -1, -1):
        c = f.coeff(i)
        if c == 0:
            continue
        neg = c < 0
        mag = -c if neg else c
        if i == 0:
            body = _scalar_str(mag)
        elif mag == 1:
            body = var if i == 1 else f"{var}^{i}"
        else:
            body = f"{_scalar_str(mag)}*{var}" + ("" if i == 1 else f"^{i}")
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts)
