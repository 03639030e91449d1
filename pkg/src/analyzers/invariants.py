"""
Invariant Engine: exact knot invariants of closed braids.

Computes the Alexander polynomial from the reduced Burau representation and the
Jones polynomial from a Temperley-Lieb evaluation of the Kauffman bracket.
All algebra is exact sympy arithmetic over the integers; no floating point.

Features:
    - Reduced Burau matrices over Z[t, 1/t] with sparse column updates
    - Alexander polynomial, symmetric and normalized to Δ(1) = +1
    - Jones polynomial via a transfer pass over Temperley-Lieb diagrams
    - Torus-knot closed forms for both polynomials
    - Rolfsen coefficient encoding
    - Arf, square-mod-2 and monic (fiberedness) diagnostics

Usage:
    from src.analyzers.invariants import alexander, jones, rolfsen_coeffs

    delta = alexander(word)
    print(rolfsen_coeffs(delta))    # [-3+1]
"""

import logging
from dataclasses import dataclass
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

import sympy as sp

from src.analyzers.braidgen import BraidWord, closure_permutation, writhe
from src.core.config import get_settings
from src.core.errors import (
    InternalError,
    NonCoprime,
    NotAKnot,
    NotSymmetric,
    OutOfRange,
    StrandLimit,
)
from src.core.polynomials import (
    A,
    centered,
    degree_span,
    divide_exact,
    evaluate,
    inverted,
    is_symmetric,
    laurent_from_terms,
    laurent_terms,
    t,
    to_text,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RolfsenCoeffs:
    """
    Coefficients a0..an of Δ(t) = a0 + Σ a_i (t^i + t^-i).

    Printed in bracket form, e.g. [7-5+3-1].
    """
    a: Tuple[int, ...]

    def to_poly(self) -> sp.Expr:
        terms = {0: self.a[0]} if self.a else {}
        for i, c in enumerate(self.a[1:], start=1):
            terms[i] = c
            terms[-i] = c
        return laurent_from_terms(terms)

    def value_at_one(self) -> int:
        return self.a[0] + 2 * sum(self.a[1:]) if self.a else 0

    def negated(self) -> "RolfsenCoeffs":
        return RolfsenCoeffs(tuple(-c for c in self.a))

    def equivalent(self, other: "RolfsenCoeffs") -> bool:
        """Equal up to overall sign."""
        return self.a == other.a or self.a == other.negated().a

    def to_list(self) -> List[int]:
        return list(self.a)

    def __str__(self):
        if not self.a:
            return "[0]"
        text = str(self.a[0])
        for c in self.a[1:]:
            text += f"{c:+d}"
        return f"[{text}]"


def burau_reduced(w: BraidWord) -> sp.Matrix:
    """
    Reduced Burau matrix of a word, multiplied in word order.

    σ_i acts as the identity except in column i-1, which becomes
    t·e_{i-2} - t·e_{i-1} + e_i (terms outside the matrix dropped); σ_i⁻¹
    uses e_{i-2} - t⁻¹·e_{i-1} + t⁻¹·e_i.
    """
    if w.strands < 2:
        raise OutOfRange("strands", w.strands, "Burau needs at least 2 strands")
    n = w.strands - 1
    matrix = sp.eye(n)
    for g, e in w.letters:
        c = g - 1
        above, centre, below = (t, -t, 1) if e > 0 else (1, -1 / t, 1 / t)
        column = matrix[:, c] * centre
        if c - 1 >= 0:
            column += matrix[:, c - 1] * above
        if c + 1 < n:
            column += matrix[:, c + 1] * below
        matrix[:, c] = column.applyfunc(sp.expand)
    return matrix


def determinant(matrix: sp.Matrix) -> sp.Expr:
    """Division-free (Berkowitz) determinant, expanded."""
    if matrix.rows == 0:
        return sp.Integer(1)
    return sp.expand(matrix.det(method="berkowitz"))


def normalize_alexander(poly) -> sp.Expr:
    """Symmetric representative with value +1 at t = 1."""
    poly = sp.expand(poly)
    if poly == 0:
        raise InternalError("Alexander polynomial vanished")
    poly = centered(poly)
    if not is_symmetric(poly):
        raise InternalError(f"Alexander polynomial {to_text(poly)} is not symmetric")
    value = evaluate(poly, 1)
    if value not in (1, -1):
        raise InternalError(f"Alexander polynomial {to_text(poly)} has Δ(1) = {value}")
    return poly if value == 1 else sp.expand(-poly)


def _require_knot(w: BraidWord) -> None:
    closure = closure_permutation(w)
    if not closure.is_knot:
        raise NotAKnot(list(closure.cycles))


def alexander(w: BraidWord) -> sp.Expr:
    """
    Alexander polynomial of the braid closure.

    Δ ≐ det(I - B(w))·(1 - t)/(1 - t^N), with the unit ±t^k removed.
    """
    _require_knot(w)
    burau = burau_reduced(w)
    det = determinant(sp.eye(burau.rows) - burau)
    raw = divide_exact(sp.expand(det * (1 - t)), 1 - t ** w.strands)
    poly = normalize_alexander(raw)
    logger.debug(f"alexander: {len(w)} letters on {w.strands} strands -> {to_text(poly)}")
    return poly


def _check_torus(a: int, b: int) -> None:
    if a < 2 or b < 2:
        raise OutOfRange("torus", (a, b), "both parameters must be at least 2")
    if gcd(a, b) != 1:
        raise NonCoprime(a, b, "b")


def torus_alexander(a: int, b: int) -> sp.Expr:
    """(t^ab - 1)(t - 1) / ((t^a - 1)(t^b - 1))."""
    _check_torus(a, b)
    numerator = sp.expand((t ** (a * b) - 1) * (t - 1))
    denominator = sp.expand((t ** a - 1) * (t ** b - 1))
    return normalize_alexander(divide_exact(numerator, denominator))


def torus_jones(a: int, b: int) -> sp.Expr:
    """t^((a-1)(b-1)/2)·(1 - t^(a+1) - t^(b+1) + t^(a+b)) / (1 - t^2)."""
    _check_torus(a, b)
    body = 1 - t ** (a + 1) - t ** (b + 1) + t ** (a + b)
    quotient = divide_exact(body, 1 - t ** 2)
    return sp.expand(quotient * t ** ((a - 1) * (b - 1) // 2))


def rolfsen_coeffs(poly) -> RolfsenCoeffs:
    if not is_symmetric(poly):
        raise NotSymmetric(to_text(poly))
    terms = laurent_terms(poly)
    if not terms:
        return RolfsenCoeffs((0,))
    return RolfsenCoeffs(tuple(terms.get(i, 0) for i in range(max(terms) + 1)))


def alexander_equivalent(a, b) -> bool:
    """Equality up to overall sign, unit shifts and t -> 1/t."""
    a, b = sp.expand(a), sp.expand(b)
    if a == 0 or b == 0:
        return a == b
    a, b = centered(a), centered(b)
    return any(
        x == y
        for x in (a, sp.expand(-a))
        for y in (b, sp.expand(-b), inverted(b), sp.expand(-inverted(b)))
    )


def _bracket_multiply(
    diagram: Tuple[int, ...], strands: int, g: int
) -> Tuple[Tuple[int, ...], int]:
    """
    Append the Temperley-Lieb generator e_g below a diagram.

    Points 0..N-1 are the top boundary, N..2N-1 the bottom. Returns the new
    diagram and the number of closed loops created (0 or 1).
    """
    a, b = strands + g - 1, strands + g
    if diagram[a] == b:
        return diagram, 1
    x, y = diagram[a], diagram[b]
    out = list(diagram)
    out[x], out[y] = y, x
    out[a], out[b] = b, a
    return tuple(out), 0


def _closure_loops(diagram: Tuple[int, ...], strands: int) -> int:
    """Loops of the trace closure joining top point i to bottom point N+i."""
    seen = [False] * (2 * strands)
    loops = 0
    for start in range(2 * strands):
        if seen[start]:
            continue
        loops += 1
        node = start
        while not seen[node]:
            seen[node] = True
            partner = diagram[node]
            seen[partner] = True
            node = partner + strands if partner < strands else partner - strands
    return loops


def _bracket_poly(w: BraidWord) -> Tuple[sp.Poly, int]:
    """
    Bracket as P(A)·A^(-offset) with P a polynomial over ZZ.

    Each letter contributes a common factor A⁻³ so that every weight is a
    polynomial in A: for σ, keep A⁴, smooth A², smooth closing a loop
    -(A⁴ + 1); for σ⁻¹, keep A², smooth A⁴, smooth closing a loop -(A⁶ + A²).
    The closure contributes A^(-2(N-1))·A^(2(N-L))·(-(A⁴ + 1))^(L-1) for L loops.
    """
    n = w.strands
    def poly(expr) -> sp.Poly:
        return sp.Poly(expr, A, domain="ZZ")

    one = poly(1)
    loop_factor = poly(-(A ** 4) - 1)
    weights = {
        1: (poly(A ** 4), poly(A ** 2), loop_factor),
        -1: (poly(A ** 2), poly(A ** 4), poly(-(A ** 6) - A ** 2)),
    }

    identity = tuple(list(range(n, 2 * n)) + list(range(n)))
    state: Dict[Tuple[int, ...], sp.Poly] = {identity: one}
    for g, e in w.letters:
        keep, smooth, smooth_loop = weights[1 if e > 0 else -1]
        nxt: Dict[Tuple[int, ...], sp.Poly] = {}
        for diagram, coeff in state.items():
            nxt[diagram] = nxt.get(diagram, poly(0)) + coeff * keep
            joined, loops = _bracket_multiply(diagram, n, g)
            nxt[joined] = nxt.get(joined, poly(0)) + coeff * (smooth_loop if loops else smooth)
        state = {d: c for d, c in nxt.items() if not c.is_zero}

    total = poly(0)
    for diagram, coeff in state.items():
        loops = _closure_loops(diagram, n)
        total += coeff * poly(A ** (2 * (n - loops))) * loop_factor ** (loops - 1)
    return total, 3 * len(w) + 2 * (n - 1)


def kauffman_bracket(w: BraidWord) -> sp.Expr:
    """
    Bracket of the braid closure in the variable A, with <unknot> = 1.

    σ ↦ A·1 + A⁻¹·e and σ⁻¹ ↦ A⁻¹·1 + A·e; a closed loop contributes
    δ = -A² - A⁻².
    """
    total, offset = _bracket_poly(w)
    return sp.expand(total.as_expr() * A ** (-offset))


def jones(w: BraidWord, max_strands: Optional[int] = None) -> sp.Expr:
    """
    Jones polynomial V(t) of the braid closure.

    V = (-A³)^(-writhe)·<closure>, then A = t^(-1/4).
    """
    limit = max_strands or get_settings().jones_max_strands
    if w.strands > limit:
        raise StrandLimit(w.strands, limit)
    _require_knot(w)
    total, offset = _bracket_poly(w)
    e = writhe(w)
    sign = -1 if e % 2 else 1
    terms = {}
    for (k,), c in total.terms():
        exponent = k - offset - 3 * e
        if exponent % 4:
            raise InternalError(f"bracket term A^{exponent} does not map to an integer power of t")
        terms[-exponent // 4] = sign * int(c)
    poly = laurent_from_terms(terms)
    logger.debug(f"jones: {len(w)} letters on {w.strands} strands -> {to_text(poly)}")
    return poly


def jones_equivalent_up_to_mirror(a, b) -> bool:
    a, b = sp.expand(a), sp.expand(b)
    return a == b or a == inverted(b)


def arf_diagnostic(poly) -> int:
    """0 iff |Δ(-1)| ≡ ±1 (mod 8)."""
    return 0 if abs(evaluate(poly, -1)) % 8 in (1, 7) else 1


def square_mod2(poly) -> bool:
    """Whether Δ reduced mod 2 is a perfect square over Z/2."""
    odd = [e for e, c in laurent_terms(poly).items() if c % 2]
    return len({e % 2 for e in odd}) <= 1


def fibered_necessary(poly) -> bool:
    """Monic test: both extreme coefficients are ±1."""
    terms = laurent_terms(poly)
    if not terms:
        return False
    low, high = degree_span(poly)
    return abs(terms[high]) == 1 and abs(terms[low]) == 1


def connected_sum_word(words: Sequence[BraidWord]) -> BraidWord:
    """
    Braid whose closure is the connected sum of the closures.

    Each word is shifted onto its own block of strands, the blocks sharing
    one strand.
    """
    letters = []
    offset = 0
    for word in words:
        letters.extend((g + offset, e) for g, e in word.letters)
        offset += word.strands - 1
    return BraidWord(offset + 1, tuple(letters))
