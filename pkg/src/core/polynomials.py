"""
Laurent polynomials in t as sympy expressions.

Invariants are carried as expanded sympy expressions with integer
coefficients. Two expanded expressions are equal exactly when the
polynomials are, so results can be compared with == and used as dict keys.
The helpers here read and rebuild the term structure (exponent -> coefficient)
and produce the JSON and text forms used in reports.
"""

from typing import Dict, Mapping, Tuple

import sympy as sp

from src.core.errors import InternalError

t = sp.Symbol("t")
A = sp.Symbol("A")


def laurent_terms(expr, var: sp.Symbol = t) -> Dict[int, int]:
    """Exponent -> integer coefficient of an expanded Laurent polynomial."""
    terms: Dict[int, int] = {}
    for monomial, coeff in sp.expand(expr).as_coefficients_dict().items():
        if monomial == 1:
            exponent = 0
        else:
            base, exponent = monomial.as_base_exp()
            if base != var or not exponent.is_integer:
                raise InternalError(f"{expr} is not a Laurent polynomial in {var}")
        if not coeff.is_integer:
            raise InternalError(f"{expr} has a non-integer coefficient {coeff}")
        terms[int(exponent)] = terms.get(int(exponent), 0) + int(coeff)
    return {e: c for e, c in terms.items() if c}


def laurent_from_terms(terms: Mapping[int, int], var: sp.Symbol = t):
    return sp.expand(sp.Add(*(sp.Integer(c) * var ** int(e) for e, c in terms.items())))


def degree_span(expr) -> Tuple[int, int]:
    """(lowest, highest) exponent; (0, 0) for zero."""
    exponents = list(laurent_terms(expr))
    if not exponents:
        return 0, 0
    return min(exponents), max(exponents)


def centered(expr):
    """Shift so the exponent range is symmetric about zero (span must be even)."""
    low, high = degree_span(expr)
    if (high - low) % 2:
        raise InternalError(f"cannot center odd-span polynomial {to_text(expr)}")
    return sp.expand(expr * t ** (-((low + high) // 2)))


def inverted(expr):
    """Substitute t -> 1/t."""
    return sp.expand(expr.subs(t, 1 / t)) if isinstance(expr, sp.Basic) else expr


def is_symmetric(expr) -> bool:
    expr = sp.expand(expr)
    return expr == inverted(expr)


def evaluate(expr, value: int) -> int:
    result = sp.sympify(expr).subs(t, value)
    if not result.is_integer:
        raise InternalError(f"{expr} at t={value} is not an integer")
    return int(result)


def divide_exact(numerator, denominator):
    """Exact quotient of Laurent polynomials, via polynomial division in t."""
    num_low, _ = degree_span(numerator)
    den_low, _ = degree_span(denominator)
    num = sp.Poly(sp.expand(numerator * t ** (-num_low)), t)
    den = sp.Poly(sp.expand(denominator * t ** (-den_low)), t)
    quotient, remainder = sp.div(num, den)
    if not remainder.is_zero:
        raise InternalError(f"{denominator} does not divide {numerator}")
    return sp.expand(quotient.as_expr() * t ** (num_low - den_low))


def to_json(expr) -> Dict[str, int]:
    return {str(e): c for e, c in sorted(laurent_terms(expr).items())}


def from_json(data: Mapping[str, int]):
    return laurent_from_terms({int(e): int(c) for e, c in data.items()})


def to_text(expr) -> str:
    """Descending powers, e.g. "t^2 - 2t + 3 - 2t^-1 + t^-2"."""
    terms = sorted(laurent_terms(expr).items(), reverse=True)
    if not terms:
        return "0"
    parts = []
    for e, c in terms:
        if e == 0:
            body = str(abs(c))
        else:
            power = "t" if e == 1 else f"t^{e}"
            body = power if abs(c) == 1 else f"{abs(c)}{power}"
        sign = "-" if c < 0 else "+"
        parts.append(f"{'-' if c < 0 else ''}{body}" if not parts else f"{sign} {body}")
    return " ".join(parts)
