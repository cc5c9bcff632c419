"""Closed-form cohomology models: products of projective spaces and tori.

A model manifold is a product of factors CP^k (complex projective space) and
T^k (complex torus).  Its even cohomology subring relevant here is generated
by one class x_j per projective factor with the single relation
x_j^{k_j + 1} = 0; torus factors contribute no even generators, only
dimension.  The fundamental-class functional reads off the coefficient of
prod_j x_j^{k_j} and vanishes identically as soon as any torus factor is
present (a top-degree class would need odd generators we do not model).

The tangent bundle pulls back factorwise: total Chern class
prod_j (1 + x_j)^{k_j + 1} over projective factors, 1 for tori.  Chern
numbers, their bound chains (0 <= c_n <= c_lambda <= c_1^n for nef tangent,
and the signed mirror for nef cotangent), Todd classes, and holomorphic Euler
characteristics chi(M, L^m) all become finite exact computations.

The Todd class is computed from the universal series x / (1 - e^{-x}):
its logarithm's coefficients weight the Chern-root power sums, which Newton's
identities convert to polynomials in c_1, ..., c_n; exponentiating back and
truncating gives td_i as exact rational polynomials.  Nothing is hard-coded;
the familiar closed forms (c_1/2, (c_1^2 + c_2)/12, ...) appear in the tests
as frozen oracles instead.
"""

from __future__ import annotations

import dataclasses
import functools
import math
import re
from fractions import Fraction
from typing import Optional, Sequence, Union

from .errors import ConsistencyError, InputError
from .schur import ChernPolynomial, Partition, chern_variable, partitions

# ----------------------------------------------------------------------
# ring elements


class RingElement:
    """Element of the truncated polynomial ring Q[x_1..x_s]/(x_j^{caps_j+1}).

    ``caps`` are the nilpotency caps (k_j per projective factor); terms map
    exponent tuples to Fractions.  Immutable by convention.
    """

    __slots__ = ("caps", "terms")

    def __init__(self, caps: tuple[int, ...], terms: Optional[dict] = None):
        self.caps = tuple(int(c) for c in caps)
        clean: dict = {}
        if terms:
            for exps, coeff in terms.items():
                exps = tuple(int(e) for e in exps)
                if len(exps) != len(self.caps):
                    raise InputError("ring exponent tuple has the wrong length")
                if any(e < 0 for e in exps):
                    raise InputError("ring exponents must be nonnegative")
                if any(e > c for e, c in zip(exps, self.caps)):
                    continue  # beyond a nilpotency cap: the monomial is zero
                coeff = Fraction(coeff)
                if coeff:
                    clean[exps] = clean.get(exps, Fraction(0)) + coeff
                    if not clean[exps]:
                        del clean[exps]
        self.terms = clean

    def _check(self, other: "RingElement"):
        if self.caps != other.caps:
            raise InputError("ring elements belong to different models")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RingElement(self.caps, {(0,) * len(self.caps): other})
        if not isinstance(other, RingElement):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return RingElement(self.caps, out)

    __radd__ = __add__

    def __neg__(self):
        return RingElement(self.caps, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RingElement(self.caps, {(0,) * len(self.caps): other})
        if not isinstance(other, RingElement):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RingElement(self.caps, {e: c * other for e, c in self.terms.items()})
        if not isinstance(other, RingElement):
            return NotImplemented
        self._check(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                if any(e > cap for e, cap in zip(key, self.caps)):
                    continue
                out[key] = out.get(key, Fraction(0)) + c1 * c2
        return RingElement(self.caps, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise InputError("ring powers must be nonnegative integers")
        out = RingElement(self.caps, {(0,) * len(self.caps): 1})
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.caps == other.caps and self.terms == other.terms

    def __hash__(self):
        return hash((self.caps, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def degree_part(self, d: int) -> "RingElement":
        return RingElement(self.caps,
                           {e: c for e, c in self.terms.items() if sum(e) == d})

    def __str__(self):
        if not self.terms:
            return "0"
        def mono(exps):
            factors = [f"x{j + 1}" + (f"^{e}" if e > 1 else "")
                       for j, e in enumerate(exps) if e]
            return "*".join(factors) if factors else "1"
        pieces = []
        for exps in sorted(self.terms, key=lambda e: (sum(e), e)):
            c = self.terms[exps]
            m = mono(exps)
            body = m if (abs(c) == 1 and m != "1") else (str(abs(c)) if m == "1" else f"{abs(c)}*{m}")
            if not pieces:
                pieces.append(body if c > 0 else f"-{body}")
            else:
                pieces.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(pieces)

    def __repr__(self):
        return f"RingElement({self})"


# ----------------------------------------------------------------------
# manifolds


@dataclasses.dataclass(frozen=True)
class ModelManifold:
    """Product of CP^k and T^k factors, as an ordered factor list.

    Equality is structural (same factors in the same order), so a product
    with a point is the original manifold.
    """

    factors: tuple[tuple[str, int], ...]

    def __post_init__(self):
        for kind, k in self.factors:
            if kind not in ("CP", "T") or not isinstance(k, int) or k < 1:
                raise InputError(f"bad model factor {(kind, k)!r}")

    @property
    def label(self) -> str:
        if not self.factors:
            return "pt"
        return "x".join(f"{kind}{k}" for kind, k in self.factors)

    @property
    def dim(self) -> int:
        return sum(k for _, k in self.factors)

    @property
    def proj_dims(self) -> tuple[int, ...]:
        return tuple(k for kind, k in self.factors if kind == "CP")

    @property
    def torus_dim(self) -> int:
        return sum(k for kind, k in self.factors if kind == "T")

    @property
    def globally_generated_tangent(self) -> bool:
        """All factors are homogeneous (CP^k or torus), so the tangent bundle
        is globally generated; true for everything this catalog can build."""
        return True

    @property
    def globally_generated_cotangent(self) -> bool:
        """The cotangent bundle is globally generated iff every factor is a
        torus (projective space has no nonzero holomorphic 1-forms)."""
        return all(kind == "T" for kind, _ in self.factors)

    # ------------------------------------------------------------------

    def one(self) -> RingElement:
        return RingElement(self.proj_dims, {(0,) * len(self.proj_dims): 1})

    def zero(self) -> RingElement:
        return RingElement(self.proj_dims, {})

    def generator(self, j: int) -> RingElement:
        """x_j (1-based), the hyperplane class of the j-th projective factor."""
        caps = self.proj_dims
        if not 1 <= j <= len(caps):
            raise InputError(f"generator index {j} out of range 1..{len(caps)}")
        exps = tuple(1 if a == j - 1 else 0 for a in range(len(caps)))
        return RingElement(caps, {exps: 1})

    def total_tangent_chern(self) -> RingElement:
        total = self.one()
        for j, k in enumerate(self.proj_dims, start=1):
            total = total * (self.one() + self.generator(j)) ** (k + 1)
        return total

    def chern_class(self, i: int) -> RingElement:
        """c_i of the tangent bundle; zero outside 0 <= i <= dim."""
        if i < 0 or i > self.dim:
            return self.zero()
        return self.total_tangent_chern().degree_part(i)

    def dual_chern_class(self, i: int) -> RingElement:
        """c_i of the cotangent bundle: (-1)^i c_i(T)."""
        c = self.chern_class(i)
        return -c if i % 2 else c

    def integral(self, elem: RingElement) -> Fraction:
        """Fundamental-class functional: coefficient of prod x_j^{k_j}, and
        identically zero whenever a torus factor is present."""
        if elem.caps != self.proj_dims:
            raise InputError("ring element belongs to a different model")
        if self.torus_dim > 0:
            return Fraction(0)
        return elem.terms.get(self.proj_dims, Fraction(0))


def projective_space(k: int) -> ModelManifold:
    if not isinstance(k, int) or k < 1:
        raise InputError("projective space needs k >= 1")
    return ModelManifold((("CP", k),))


def complex_torus(k: int) -> ModelManifold:
    if not isinstance(k, int) or k < 1:
        raise InputError("complex torus needs k >= 1")
    return ModelManifold((("T", k),))


def point() -> ModelManifold:
    return ModelManifold(())


def product(*models: ModelManifold) -> ModelManifold:
    factors: tuple[tuple[str, int], ...] = ()
    for m in models:
        if not isinstance(m, ModelManifold):
            raise InputError("product arguments must be model manifolds")
        factors = factors + m.factors
    return ModelManifold(factors)


_ATOM = re.compile(r"^(CP|T)(\d+)$")


def parse_model(expr: str) -> ModelManifold:
    """Parse the model grammar: atoms CPk / Tk joined by infix 'x',
    e.g. "CP3", "CP1xCP2", "T1xCP1"."""
    if not isinstance(expr, str) or not expr.strip():
        raise InputError("model expression must be a nonempty string")
    factors = []
    for atom in expr.replace(" ", "").split("x"):
        m = _ATOM.match(atom)
        if not m:
            raise InputError(f"bad model atom {atom!r}: expected CPk or Tk (k >= 1)")
        k = int(m.group(2))
        if k < 1:
            raise InputError(f"bad model atom {atom!r}: k must be >= 1")
        factors.append((m.group(1), k))
    return ModelManifold(tuple(factors))


def line_class(model: ModelManifold, spec: str) -> RingElement:
    """First Chern class of a named line bundle.

    "K" is the canonical bundle (c_1 = -c_1(T)); "O" is trivial;
    "O(d_1,...,d_s)" takes one integer degree per projective factor, giving
    sum_j d_j x_j.
    """
    if not isinstance(spec, str):
        raise InputError("line bundle must be a string")
    s = spec.strip()
    if s == "K":
        return -model.chern_class(1)
    if s == "O":
        return model.zero()
    m = re.match(r"^O\(([-\d,\s]*)\)$", s)
    if not m:
        raise InputError(f"bad line bundle {spec!r}: expected K, O, or O(d1,...)")
    body = m.group(1).strip()
    degrees = [int(d) for d in body.split(",")] if body else []
    count = len(model.proj_dims)
    if len(degrees) != count:
        raise InputError(
            f"line bundle {spec!r} needs exactly {count} degree(s) for model {model.label}")
    total = model.zero()
    for j, d in enumerate(degrees, start=1):
        if d:
            total = total + d * model.generator(j)
    return total


# ----------------------------------------------------------------------
# Chern numbers and bound chains


def chern_number(model: ModelManifold, lam: Union[Partition, Sequence[int]],
                 dual: bool = False) -> int:
    """c_lambda[M] = integral of c_{lambda_1} ... c_{lambda_l}; requires
    weight(lambda) = dim.  With dual=True the cotangent classes are used."""
    if not isinstance(lam, Partition):
        lam = Partition(tuple(lam))
    if lam.weight != model.dim:
        raise InputError(
            f"partition weight {lam.weight} must equal the dimension {model.dim}")
    cls = model.dual_chern_class if dual else model.chern_class
    prod_elem = model.one()
    for part in lam.parts:
        if part == 0:
            continue
        prod_elem = prod_elem * cls(part)
    value = model.integral(prod_elem)
    if value.denominator != 1:
        raise ConsistencyError(f"Chern number {lam} of {model.label} is not an integer: {value}")
    return int(value)


@dataclasses.dataclass(frozen=True)
class ModelBoundsReport:
    """Exact integer bound chain 0 <= c_n <= c_lambda <= c_1^n over Gamma(n, n)."""

    model: str
    signed: bool
    dim: int
    numbers: tuple[tuple[tuple[int, ...], int], ...]
    all_zero: bool
    passed: bool

    def to_dict(self) -> dict:
        return {
            "schema": 1,
            "kind": "model-bounds",
            "model": self.model,
            "signed": self.signed,
            "dim": self.dim,
            "numbers": [{"partition": list(p), "value": v} for p, v in self.numbers],
            "all_zero": self.all_zero,
            "verdict": "PASS" if self.passed else "FAIL",
        }


def verify_number_bounds(model: ModelManifold, signed: bool = False) -> ModelBoundsReport:
    """Check the Chern-number chain on a model with exact integers.

    Unsigned requires a globally generated tangent bundle; signed uses the
    cotangent classes (numbers (-1)^n c_lambda[M]) and requires a globally
    generated cotangent bundle.  If c_1^n[M] = 0 every number in the chain
    must vanish; that propagation is recorded as ``all_zero``.
    """
    if signed and not model.globally_generated_cotangent:
        raise InputError(
            f"signed bounds need a globally generated cotangent bundle; "
            f"{model.label} has projective factors")
    if not signed and not model.globally_generated_tangent:
        raise InputError(f"bounds need a globally generated tangent bundle on {model.label}")
    n = model.dim
    # signed: the chain applies to the cotangent classes, whose weight-n
    # products are (-1)^n times the tangent ones
    numbers = []
    for lam in partitions(n, n):
        value = chern_number(model, lam, dual=signed)
        numbers.append((lam.parts, value))
    values = {p: v for p, v in numbers}
    if n == 0:
        return ModelBoundsReport(model=model.label, signed=signed, dim=0,
                                 numbers=tuple(numbers), all_zero=False, passed=True)
    v_cn = values[tuple([n] + [0] * (n - 1))]
    v_c1n = values[(1,) * n]
    ok = v_cn >= 0
    for p, v in numbers:
        ok = ok and (v_cn <= v <= v_c1n)
    all_zero = v_c1n == 0
    if all_zero:
        ok = ok and all(v == 0 for _, v in numbers)
    return ModelBoundsReport(model=model.label, signed=signed, dim=n,
                             numbers=tuple(numbers), all_zero=all_zero, passed=bool(ok))


# ----------------------------------------------------------------------
# Todd class and Riemann-Roch


def _series_reciprocal(g: list[Fraction]) -> list[Fraction]:
    out = [1 / g[0]]
    for k in range(1, len(g)):
        acc = Fraction(0)
        for j in range(1, k + 1):
            acc += g[j] * out[k - j]
        out.append(-acc / g[0])
    return out


def _series_log(f: list[Fraction]) -> list[Fraction]:
    """log of a series with constant term 1, via k f_k = sum j l_j f_{k-j}."""
    assert f[0] == 1
    out = [Fraction(0)]
    for k in range(1, len(f)):
        acc = k * f[k]
        for j in range(1, k):
            acc -= j * out[j] * f[k - j]
        out.append(acc / k)
    return out


def todd_series(deg: int) -> list[Fraction]:
    """Coefficients of x / (1 - e^{-x}) through x^deg."""
    g = [Fraction((-1) ** k, math.factorial(k + 1)) for k in range(deg + 1)]
    return _series_reciprocal(g)


@functools.lru_cache(maxsize=None)
def todd_polynomials(max_degree: int) -> tuple[ChernPolynomial, ...]:
    """Universal Todd polynomials td_0..td_max in c_1..c_{max_degree}.

    log of the product prod_i x_i/(1 - e^{-x_i}) is sum_k a_k p_k with a_k
    the log-series coefficients and p_k the power sums; Newton's identities
    rewrite p_k in the elementary symmetric functions c_i, and exponentiating
    the resulting polynomial gives the Todd class.
    """
    deg = max_degree
    nv = max(deg, 1)
    a = _series_log(todd_series(deg))
    # power sums via Newton: p_k = sum_{i<k} (-1)^{i-1} c_i p_{k-i} + (-1)^{k-1} k c_k
    p: list[ChernPolynomial] = [ChernPolynomial.zero(nv)]
    for k in range(1, deg + 1):
        acc = ChernPolynomial.zero(nv)
        for i in range(1, k):
            term = chern_variable(i, nv) * p[k - i]
            acc = acc + (term if (i - 1) % 2 == 0 else -term)
        tail = k * chern_variable(k, nv)
        acc = acc + (tail if (k - 1) % 2 == 0 else -tail)
        p.append(acc)
    log_td = ChernPolynomial.zero(nv)
    for k in range(1, deg + 1):
        log_td = log_td + a[k] * p[k]
    # exp, truncated at graded degree deg
    total = ChernPolynomial.one(nv)
    power = ChernPolynomial.one(nv)
    for m in range(1, deg + 1):
        power = _truncate(power * log_td, deg)
        total = total + Fraction(1, math.factorial(m)) * power
    return tuple(_graded_part(total, i) for i in range(deg + 1))


def _truncate(poly: ChernPolynomial, deg: int) -> ChernPolynomial:
    return ChernPolynomial(poly.nvars, {
        e: c for e, c in poly.terms.items() if ChernPolynomial._degree_of(e) <= deg})


def _graded_part(poly: ChernPolynomial, deg: int) -> ChernPolynomial:
    return ChernPolynomial(poly.nvars, {
        e: c for e, c in poly.terms.items() if ChernPolynomial._degree_of(e) == deg})


def substitute_chern(poly: ChernPolynomial, model: ModelManifold) -> RingElement:
    """Evaluate a polynomial in c_1..c_r at the model's tangent Chern classes."""
    out = model.zero()
    for exps, coeff in poly.terms.items():
        term = model.one() * coeff
        for j, e in enumerate(exps, start=1):
            for _ in range(e):
                term = term * model.chern_class(j)
        out = out + term
    return out


def todd_class(model: ModelManifold) -> RingElement:
    """Td(M) through degree dim, from the universal series."""
    n = model.dim
    total = model.zero()
    for td_i in todd_polynomials(n):
        total = total + substitute_chern(td_i, model)
    return total


def rr_polynomial(model: ModelManifold, line_c1: RingElement) -> tuple[Fraction, ...]:
    """Coefficients (a_0..a_n) of chi(M, L^m) = sum a_j m^j, where
    a_j = integral(Td(M) * c_1(L)^j) / j!."""
    n = model.dim
    td = todd_class(model)
    out = []
    power = model.one()
    for j in range(n + 1):
        out.append(model.integral(td * power) / math.factorial(j))
        power = power * line_c1
    return tuple(out)


def euler_characteristic(model: ModelManifold, line_c1: RingElement, m: int) -> int:
    """chi(M, L^m) by Riemann-Roch; rejects a non-integer outcome as a bug."""
    if not isinstance(m, int):
        raise InputError("the twisting power m must be an integer")
    coeffs = rr_polynomial(model, line_c1)
    value = sum(a * m ** j for j, a in enumerate(coeffs))
    if value.denominator != 1:
        raise ConsistencyError(
            f"chi({model.label}) = {value} is not an integer; Todd or ring bug")
    return int(value)


def kodaira_leading(model: ModelManifold) -> Fraction:
    """Leading coefficient of m -> chi(M, K^m): (-1)^n c_1^n[M] / n!."""
    n = model.dim
    c1n = model.integral(model.chern_class(1) ** n)
    return Fraction((-1) ** n) * c1n / math.factorial(n)


# ----------------------------------------------------------------------

#: models exercised by the verification suites
CATALOG: tuple[ModelManifold, ...] = (
    projective_space(1),
    projective_space(2),
    projective_space(3),
    projective_space(4),
    complex_torus(1),
    complex_torus(2),
    product(projective_space(1), projective_space(1)),
    product(projective_space(1), projective_space(2)),
    product(projective_space(1), projective_space(1), projective_space(1)),
    product(complex_torus(1), projective_space(1)),
    product(complex_torus(1), complex_torus(1)),
)
