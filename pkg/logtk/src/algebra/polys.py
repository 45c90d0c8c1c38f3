"""Coefficient fields and polynomial input/output.

Polynomials are sympy ``PolyElement`` objects living in a ``PolyRing`` over
``QQ`` or ``GF(p)``.  Manifest text is parsed with sympy's expression parser
(``^`` is accepted as exponentiation) and printed back with the variables in
the order the manifest declared them.
"""

from __future__ import annotations

import functools
import logging
import re
from typing import Any, Iterable, Sequence

from pydantic import BaseModel, ConfigDict, field_validator
from sympy import Poly, Symbol, isprime
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations
from sympy.polys.domains import GF, QQ
from sympy.polys.rings import PolyElement, PolyRing

log = logging.getLogger(__name__)

_FIELD_RE = re.compile(r"^\s*(?:(QQ?)|(?:F|GF|Fp)\(?\s*(\d+)\s*\)?)\s*$")
_TRANSFORMS = standard_transformations + (convert_xor,)


class FieldSpec(BaseModel):
    """Descriptor of a prime field or of the rationals.

    Only the characteristic matters for every vanishing condition the toolkit
    decides, so that is all the descriptor stores.
    """

    model_config = ConfigDict(frozen=True)

    characteristic: int = 0

    @field_validator("characteristic")
    @classmethod
    def _prime_or_zero(cls, value: int) -> int:
        if value == 0:
            return value
        if value < 2 or value >= 2**31 or not isprime(value):
            raise ValueError(f"characteristic must be 0 or a prime below 2^31, got {value}")
        return value

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Parse ``Q``, ``QQ``, ``Fp(5)``, ``GF(5)`` or ``F5``."""
        match = _FIELD_RE.match(text)
        if not match:
            raise ValueError(f"unrecognised field {text!r}; use 'Q' or 'Fp(p)'")
        if match.group(1):
            return cls(characteristic=0)
        return cls(characteristic=int(match.group(2)))

    @property
    def label(self) -> str:
        return "Q" if self.characteristic == 0 else f"Fp({self.characteristic})"

    @property
    def domain(self) -> Any:
        return _domain(self.characteristic)

    @property
    def is_perfect(self) -> bool:
        # finite and characteristic-zero fields are perfect
        return True

    def __str__(self) -> str:
        return self.label


RATIONALS = FieldSpec(characteristic=0)


@functools.lru_cache(maxsize=None)
def _domain(characteristic: int) -> Any:
    return QQ if characteristic == 0 else GF(characteristic)


@functools.lru_cache(maxsize=256)
def make_ring(names: tuple[str, ...], characteristic: int) -> PolyRing:
    """Return the (cached) polynomial ring on ``names`` over the given field."""
    return PolyRing(list(names) if names else "", _domain(characteristic))


def coerce_rational(numerator: int, denominator: int, domain: Any) -> Any:
    """Map the rational ``numerator/denominator`` into ``domain``."""
    if denominator == 1:
        return domain.convert(numerator)
    den = domain.convert(denominator)
    if not den:
        raise ZeroDivisionError(f"denominator {denominator} vanishes in {domain}")
    return domain.quo(domain.convert(numerator), den)


def parse_poly(text: str, ring: PolyRing) -> PolyElement:
    """Parse a polynomial in the variables of ``ring``.

    Raises ``ValueError`` for unknown variables or non-polynomial input.
    """
    names = [str(s) for s in ring.symbols]
    local = {name: Symbol(name) for name in names}
    try:
        expr = parse_expr(text, local_dict=local, transformations=_TRANSFORMS, evaluate=True)
    except Exception as exc:  # sympy raises a zoo of exception types here
        raise ValueError(f"cannot parse polynomial {text!r}: {exc}") from exc
    unknown = sorted(str(s) for s in expr.free_symbols if str(s) not in local)
    if unknown:
        raise ValueError(f"unknown variable(s) {', '.join(unknown)} in {text!r}")
    domain = ring.domain
    if not names:
        if not expr.is_Rational:
            raise ValueError(f"{text!r} is not a rational constant")
        return ring.from_dict({(): coerce_rational(int(expr.p), int(expr.q), domain)})
    try:
        poly = Poly(expr, *[local[n] for n in names], domain=QQ)
    except Exception as exc:
        raise ValueError(f"{text!r} is not a polynomial with rational coefficients") from exc
    terms = {}
    for monom, coeff in poly.terms():
        value = coerce_rational(int(QQ.numer(coeff)), int(QQ.denom(coeff)), domain)
        if value:
            terms[tuple(monom)] = value
    return ring.from_dict(terms)


def degrevlex_key(exp: Sequence[int]) -> tuple:
    return (sum(exp), tuple(-e for e in reversed(exp)))


def _format_coeff(coeff: Any, domain: Any) -> str:
    return str(domain.to_sympy(coeff))


def format_monomial(exp: Sequence[int], names: Sequence[str]) -> str:
    parts = []
    for name, e in zip(names, exp):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_poly(poly: PolyElement, names: Sequence[str] | None = None) -> str:
    """Print ``poly`` with ``^`` powers, terms in descending degrevlex order."""
    ring = poly.ring
    names = list(names) if names is not None else [str(s) for s in ring.symbols]
    if not poly:
        return "0"
    out: list[str] = []
    for exp in sorted(poly.keys(), key=degrevlex_key, reverse=True):
        text = _format_coeff(poly[exp], ring.domain)
        negative = text.startswith("-")
        if negative:
            text = text[1:]
        mono = format_monomial(exp, names)
        if mono:
            if text == "1":
                body = mono
            else:
                body = f"{text}*{mono}"
        else:
            body = text
        if not out:
            out.append(f"-{body}" if negative else body)
        else:
            out.append(f"- {body}" if negative else f"+ {body}")
    return " ".join(out)


def monomial(ring: PolyRing, exp: Sequence[int], coeff: Any = None) -> PolyElement:
    domain = ring.domain
    return ring.from_dict({tuple(exp): domain.one if coeff is None else coeff})


def substitute(poly: PolyElement, images: Sequence[PolyElement], target: PolyRing) -> PolyElement:
    """Evaluate ``poly`` at ``images`` (one polynomial of ``target`` per variable)."""
    result = target.zero
    same = target.domain == poly.ring.domain
    powers: dict[tuple[int, int], PolyElement] = {}
    for exp, coeff in poly.items():
        c = coeff if same else target.domain.convert(coeff, poly.ring.domain)
        term = target.from_dict({(0,) * target.ngens: c})
        for i, e in enumerate(exp):
            if e:
                key = (i, e)
                if key not in powers:
                    powers[key] = images[i] ** e
                term = term * powers[key]
        result += term
    return result


def linear_part(poly: PolyElement) -> list[Any]:
    """Coefficients of the degree-one monomials, one per variable."""
    n = poly.ring.ngens
    domain = poly.ring.domain
    row = [domain.zero] * n
    for exp, coeff in poly.items():
        if sum(exp) == 1:
            row[exp.index(1)] = coeff
    return row


def constant_term(poly: PolyElement) -> Any:
    return poly.const()


def total_degree(poly: PolyElement) -> int:
    return max((sum(e) for e in poly.keys()), default=0)


def is_homogeneous(poly: PolyElement) -> bool:
    return len({sum(e) for e in poly.keys()}) <= 1


def parse_all(texts: Iterable[str], ring: PolyRing) -> tuple[PolyElement, ...]:
    return tuple(parse_poly(t, ring) for t in texts)
