"""Schur polynomials in Chern classes and the sampled nonnegativity engines.

For weight i and rank r, Gamma(i, r) is the set of partitions
lambda = (lambda_1 >= ... >= lambda_i >= 0) of i with every part <= r.  The
Schur polynomial attached to lambda is the Jacobi-Trudi determinant

    S_lambda(c) = det( c_{lambda_j - j + k} )_{1 <= j,k <= i}

with the conventions c_0 = 1 and c_d = 0 for d < 0 or d > r.  Special cases:
S_{(i,0,...,0)} = c_i and S_{(i-j,j,0,...,0)} = c_{i-j} c_j - c_{i-j+1} c_{j-1}.

For a curvature in factored shape the forms S_lambda(c(Omega)) are pointwise
nonnegative; ``verify_schur_nonnegativity`` sample-checks that over all
degrees and partitions of an instance.  ``bounds_chain_check`` walks the
inequality chain

    0 <= c_i <= c_lambda <= c_1^i

one factorized step at a time: each step difference is a product of Schur
forms of the shape S_{(w-j, j)} (lower chain) or c_1 c_{t-1} - c_t times
monomials (upper chain), so each step is itself a sampled nonnegativity
check, and at top degree i = n the scalar chain
0 <= top(c_n) <= top(c_lambda) <= top(c_1^n) is compared directly.
"""

from __future__ import annotations

import dataclasses
import hashlib
import json
from fractions import Fraction
from typing import Iterator, Optional, Sequence, Union

from .chern import ChernFormSet, chern_forms, chern_product, top_coefficient
from .curvature import CurvatureTensor, bott_chern_curvature, factor_from_tensor
from .errors import InputError
from .forms import DEFAULT_TOL, Form, VerdictReport, nonnegative_sampled
from .rng import derive_seed


# ----------------------------------------------------------------------
# partitions


@dataclasses.dataclass(frozen=True)
class Partition:
    """Weakly decreasing tuple of nonnegative integers."""

    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        object.__setattr__(self, "parts", parts)
        if any(p < 0 for p in parts):
            raise InputError("partition parts must be nonnegative")
        if any(parts[j] < parts[j + 1] for j in range(len(parts) - 1)):
            raise InputError("partition parts must be weakly decreasing")

    @property
    def weight(self) -> int:
        return sum(self.parts)

    def trimmed(self) -> tuple[int, ...]:
        """Parts with trailing zeros dropped."""
        end = len(self.parts)
        while end and self.parts[end - 1] == 0:
            end -= 1
        return self.parts[:end]

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __str__(self):
        inner = ",".join(str(p) for p in (self.trimmed() or (0,)))
        return f"({inner})"


def partitions(i: int, r: int) -> list[Partition]:
    """Gamma(i, r): partitions of weight i with parts <= r, zero-padded to
    length i, in descending lexicographic order."""
    if i < 0 or r < 0:
        raise InputError("partition weight and part bound must be nonnegative")
    if i == 0:
        return [Partition(())]
    out: list[Partition] = []

    def rec(remaining: int, max_part: int, acc: list[int]):
        if remaining == 0:
            out.append(Partition(tuple(acc) + (0,) * (i - len(acc))))
            return
        for part in range(min(max_part, remaining), 0, -1):
            acc.append(part)
            rec(remaining - part, part, acc)
            acc.pop()

    rec(i, min(r, i), [])
    return out


# ----------------------------------------------------------------------
# polynomials in the Chern variables


class ChernPolynomial:
    """Polynomial in c_1, ..., c_r with exact (int or Fraction) coefficients.

    Terms map exponent tuples of length r to coefficients; the grading gives
    c_j degree j.  Equality ignores trailing zero exponents, so polynomials
    over different ranks compare by meaning.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Optional[dict] = None):
        if nvars < 0:
            raise InputError("number of variables must be nonnegative")
        clean = {}
        if terms:
            for exps, coeff in terms.items():
                exps = tuple(int(e) for e in exps)
                if len(exps) != nvars or any(e < 0 for e in exps):
                    raise InputError("exponent tuples must be nonnegative and of length nvars")
                if isinstance(coeff, float):
                    raise InputError("polynomial coefficients must be exact (int or Fraction)")
                if coeff != 0:
                    clean[exps] = clean.get(exps, 0) + coeff
                    if clean[exps] == 0:
                        del clean[exps]
        self.nvars = nvars
        self.terms = clean

    @classmethod
    def zero(cls, nvars: int) -> "ChernPolynomial":
        return cls(nvars, {})

    @classmethod
    def one(cls, nvars: int) -> "ChernPolynomial":
        return cls(nvars, {(0,) * nvars: 1})

    @classmethod
    def variable(cls, j: int, nvars: int) -> "ChernPolynomial":
        """c_j, 1-based."""
        if not 1 <= j <= nvars:
            raise InputError(f"variable index {j} out of range 1..{nvars}")
        exps = tuple(1 if k == j - 1 else 0 for k in range(nvars))
        return cls(nvars, {exps: 1})

    def is_zero(self) -> bool:
        return not self.terms

    @staticmethod
    def _degree_of(exps: tuple[int, ...]) -> int:
        return sum((j + 1) * e for j, e in enumerate(exps))

    def degrees(self) -> set[int]:
        return {self._degree_of(e) for e in self.terms}

    def is_homogeneous(self, degree: Optional[int] = None) -> bool:
        degs = self.degrees()
        if not degs:
            return True
        if len(degs) > 1:
            return False
        return degree is None or degs == {degree}

    def _canonical(self) -> dict:
        out = {}
        for exps, coeff in self.terms.items():
            end = len(exps)
            while end and exps[end - 1] == 0:
                end -= 1
            out[exps[:end]] = coeff
        return out

    def __eq__(self, other):
        if not isinstance(other, ChernPolynomial):
            return NotImplemented
        return self._canonical() == other._canonical()

    def __hash__(self):
        return hash(frozenset(self._canonical().items()))

    def _align(self, other: "ChernPolynomial"):
        n = max(self.nvars, other.nvars)

        def pad(poly):
            if poly.nvars == n:
                return poly.terms
            return {e + (0,) * (n - poly.nvars): c for e, c in poly.terms.items()}

        return n, pad(self), pad(other)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ChernPolynomial(self.nvars, {(0,) * self.nvars: other})
        if not isinstance(other, ChernPolynomial):
            return NotImplemented
        n, a, b = self._align(other)
        out = dict(a)
        for e, c in b.items():
            out[e] = out.get(e, 0) + c
        return ChernPolynomial(n, out)

    __radd__ = __add__

    def __neg__(self):
        return ChernPolynomial(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ChernPolynomial(self.nvars, {(0,) * self.nvars: other})
        if not isinstance(other, ChernPolynomial):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return ChernPolynomial(self.nvars, {e: c * other for e, c in self.terms.items()})
        if not isinstance(other, ChernPolynomial):
            return NotImplemented
        n, a, b = self._align(other)
        out: dict = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                key = tuple(x + y for x, y in zip(e1, e2))
                out[key] = out.get(key, 0) + c1 * c2
        return ChernPolynomial(n, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise InputError("polynomial powers must be nonnegative integers")
        out = ChernPolynomial.one(self.nvars)
        for _ in range(k):
            out = out * self
        return out

    def restrict(self, r: int) -> "ChernPolynomial":
        """Apply the convention c_d = 0 for d > r: drop every term using a
        higher variable, keeping r variables."""
        out = {}
        for exps, coeff in self.terms.items():
            if any(e for e in exps[r:]):
                continue
            out[tuple(exps[:r]) + (0,) * max(0, r - len(exps))] = coeff
        return ChernPolynomial(r, out)

    def __str__(self):
        if not self.terms:
            return "0"
        def mono(exps):
            factors = [f"c{j + 1}" + (f"^{e}" if e > 1 else "")
                       for j, e in enumerate(exps) if e]
            return "*".join(factors) if factors else "1"

        keys = sorted(self.terms, key=lambda e: (self._degree_of(e), tuple(-x for x in e)))
        pieces = []
        for exps in keys:
            coeff = self.terms[exps]
            m = mono(exps)
            mag = abs(coeff)
            body = m if (mag == 1 and m != "1") else (str(mag) if m == "1" else f"{mag}*{m}")
            if not pieces:
                pieces.append(body if coeff > 0 else f"-{body}")
            else:
                pieces.append(f"+ {body}" if coeff > 0 else f"- {body}")
        return " ".join(pieces)

    def __repr__(self):
        return f"ChernPolynomial({self})"


def chern_variable(d: int, r: int) -> ChernPolynomial:
    """c_d under the standing conventions: 1 for d = 0, 0 for d < 0 or d > r."""
    if d == 0:
        return ChernPolynomial.one(r)
    if d < 0 or d > r:
        return ChernPolynomial.zero(r)
    return ChernPolynomial.variable(d, r)


def schur_polynomial(lam: Union[Partition, Sequence[int]], r: int) -> ChernPolynomial:
    """S_lambda = det(c_{lambda_j - j + k}) over rank r.

    Accepts padded or unpadded partitions (the determinant is invariant under
    zero-padding).  A part above r makes the polynomial identically zero via
    the c_{>r} = 0 convention.
    """
    if not isinstance(lam, Partition):
        lam = Partition(tuple(lam))
    parts = lam.parts
    size = len(parts)
    if size == 0:
        return ChernPolynomial.one(r)
    entries = [[chern_variable(parts[j] - j + k, r) for k in range(size)]
               for j in range(size)]
    total = ChernPolynomial.zero(r)
    from itertools import permutations as _perms
    for perm in _perms(range(size)):
        prod = ChernPolynomial.one(r)
        ok = True
        inv = 0
        for j in range(size):
            e = entries[j][perm[j]]
            if e.is_zero():
                ok = False
                break
            prod = prod * e
            for j2 in range(j + 1, size):
                if perm[j] > perm[j2]:
                    inv += 1
        if not ok:
            continue
        total = total + (-prod if inv & 1 else prod)
    return total


def evaluate_on_forms(poly: ChernPolynomial, cs: ChernFormSet) -> Form:
    """Substitute the Chern forms of ``cs`` into a polynomial.

    Terms of graded degree above n vanish and are skipped.  In exact mode the
    result inherits the stored-prefactor convention: a weight-i homogeneous
    polynomial evaluates to (sqrt(-1))^i times the integer-coefficient form,
    with (2*pi)^(-i) left symbolic.
    """
    n, mode = cs.n, cs.mode
    result = Form.zero(n, mode)
    cache: dict[tuple[int, int], Form] = {}

    def power(j: int, e: int) -> Form:
        key = (j, e)
        f = cache.get(key)
        if f is None:
            f = cs.form(j).wedge_power(e)
            cache[key] = f
        return f

    for exps, coeff in poly.terms.items():
        if ChernPolynomial._degree_of(exps) > n:
            continue
        term = Form.constant(n, coeff, mode)
        for j, e in enumerate(exps, start=1):
            if e == 0:
                continue
            if j > cs.r:
                term = Form.zero(n, mode)
                break
            term = term.wedge(power(j, e))
            if term.is_zero():
                break
        result = result + term
    return result


# ----------------------------------------------------------------------
# reports


def instance_digest(obj) -> str:
    """sha256 of the canonical JSON encoding."""
    return hashlib.sha256(
        json.dumps(obj, sort_keys=True, separators=(",", ":")).encode()).hexdigest()


@dataclasses.dataclass(frozen=True)
class SchurCheck:
    degree: int
    partition: tuple[int, ...]
    report: VerdictReport

    def to_dict(self) -> dict:
        return {"degree": self.degree, "partition": list(self.partition),
                "report": self.report.to_dict()}


@dataclasses.dataclass(frozen=True)
class SchurReport:
    """Outcome of the full Schur-form nonnegativity sweep on one instance."""

    instance: dict
    instance_hash: str
    seed: int
    trials: int
    tol: float
    checks: tuple[SchurCheck, ...]
    passed: bool

    def to_dict(self) -> dict:
        return {
            "schema": 1,
            "kind": "schur-nonnegativity",
            "instance": self.instance,
            "instance_hash": self.instance_hash,
            "seed": self.seed,
            "trials": self.trials,
            "tol": self.tol,
            "checks": [c.to_dict() for c in self.checks],
            "verdict": "PASS" if self.passed else "FAIL",
        }


def verify_schur_nonnegativity(tensor: CurvatureTensor,
                               degrees: Optional[Sequence[int]] = None,
                               trials: int = 50, seed: int = 0,
                               tol: float = DEFAULT_TOL) -> SchurReport:
    """Sample-check S_lambda(c(Omega)) >= 0 for every lambda in Gamma(i, r).

    ``degrees`` defaults to 1..n.  Every (degree, partition) pair gets its own
    derived random stream, so the verdict does not depend on evaluation
    order.  The report embeds the instance and its hash for reproducibility.
    """
    omega = bott_chern_curvature(factor_from_tensor(tensor))
    cs = chern_forms(omega)
    n, r = tensor.n, tensor.r
    if degrees is None:
        degrees = range(1, n + 1)
    degrees = sorted(set(int(d) for d in degrees))
    if any(d < 1 or d > n for d in degrees):
        raise InputError(f"degrees must lie in 1..n={n}")
    checks = []
    all_pass = True
    for i in degrees:
        for idx, lam in enumerate(partitions(i, r)):
            form = evaluate_on_forms(schur_polynomial(lam, r), cs)
            rep = nonnegative_sampled(form, trials, derive_seed(seed, 7, i, idx), tol)
            checks.append(SchurCheck(degree=i, partition=lam.parts, report=rep))
            all_pass = all_pass and rep.passed
    inst = tensor.to_json()
    return SchurReport(instance=inst, instance_hash=instance_digest(inst),
                       seed=seed, trials=trials, tol=tol,
                       checks=tuple(checks), passed=all_pass)


# ----------------------------------------------------------------------
# inequality chain


@dataclasses.dataclass(frozen=True)
class ChainStep:
    label: str
    report: VerdictReport

    def to_dict(self) -> dict:
        return {"label": self.label, "report": self.report.to_dict()}


@dataclasses.dataclass(frozen=True)
class ChainReport:
    """One partition's walk through 0 <= c_i <= c_lambda <= c_1^i."""

    partition: tuple[int, ...]
    weight: int
    steps: tuple[ChainStep, ...]
    top: Optional[dict]
    seed: int
    trials: int
    tol: float
    passed: bool

    def to_dict(self) -> dict:
        return {
            "schema": 1,
            "kind": "bounds-chain",
            "partition": list(self.partition),
            "weight": self.weight,
            "steps": [s.to_dict() for s in self.steps],
            "top": self.top,
            "seed": self.seed,
            "trials": self.trials,
            "tol": self.tol,
            "verdict": "PASS" if self.passed else "FAIL",
        }


def _poly_product(factors: Sequence[ChernPolynomial], r: int) -> ChernPolynomial:
    out = ChernPolynomial.one(r)
    for f in factors:
        out = out * f
    return out


def chain_step_polynomials(lam: Partition, r: int) -> list[tuple[str, ChernPolynomial]]:
    """The factorized step differences proving c_i <= c_lambda <= c_1^i.

    Lower chain: peeling parts off lambda, each comparison
    c_{w-j+1} c_{j-1} <= c_{w-j} c_j is the Schur form S_{(w-j,j)} times the
    product of parts already peeled.  Upper chain: each part lambda_a is
    raised to c_1^{lambda_a} through c_t <= c_{t-1} c_1, times the untouched
    parts.  Every returned polynomial is a product of Schur polynomials, so
    each is a sampled-nonnegativity check in its own right.
    """
    parts = [p for p in lam.parts if p > 0]
    steps: list[tuple[str, ChernPolynomial]] = []
    # lower chain: c_i -> c_lambda
    prefix = ChernPolynomial.one(r)
    prefix_label: list[str] = []
    w = sum(parts)
    for part in parts:
        for j in range(1, min(part, w - part) + 1):
            diff = (chern_variable(w - j, r) * chern_variable(j, r)
                    - chern_variable(w - j + 1, r) * chern_variable(j - 1, r))
            label = f"c{w - j}*c{j} - c{w - j + 1}*c{j - 1}"
            if prefix_label:
                label = "*".join(prefix_label) + f" * ({label})"
            steps.append((label, prefix * diff))
        prefix = prefix * chern_variable(part, r)
        prefix_label.append(f"c{part}")
        w -= part
    # upper chain: c_lambda -> c_1^i
    done = ChernPolynomial.one(r)
    done_exp = 0
    for a, part in enumerate(parts):
        rest = _poly_product([chern_variable(p, r) for p in parts[a + 1:]], r)
        rest_label = "*".join(f"c{p}" for p in parts[a + 1:])
        for t in range(part, 1, -1):
            diff = chern_variable(1, r) * chern_variable(t - 1, r) - chern_variable(t, r)
            mult = done * rest * chern_variable(1, r) ** (part - t)
            bits = []
            if done_exp:
                bits.append(f"c1^{done_exp}")
            if rest_label:
                bits.append(rest_label)
            if part - t:
                bits.append(f"c1^{part - t}")
            label = f"c1*c{t - 1} - c{t}"
            if bits:
                label = "*".join(bits) + f" * ({label})"
            steps.append((label, mult * diff))
        done = done * chern_variable(1, r) ** part
        done_exp += part
    return steps


def bounds_chain_check(cs: ChernFormSet, lam: Union[Partition, Sequence[int]],
                       trials: int = 50, seed: int = 0,
                       tol: float = DEFAULT_TOL) -> ChainReport:
    """Sample-check every step of 0 <= c_i <= c_lambda <= c_1^i for one lambda.

    Requires a witnessed Chern set (the chain is a theorem only in factored
    shape) with weight(lambda) <= n and parts <= r.  At top weight i = n the
    scalar chain 0 <= top(c_n) <= top(c_lambda) <= top(c_1^n) is also
    compared, within tol relative to the largest of the three.
    """
    if not isinstance(lam, Partition):
        lam = Partition(tuple(lam))
    if not cs.witnessed:
        raise InputError("bounds chain requires a witnessed instance (factored curvature)")
    if lam.weight > cs.n:
        raise InputError(f"partition weight {lam.weight} exceeds base dimension {cs.n}")
    if any(p > cs.r for p in lam.parts):
        raise InputError(f"partition parts must be <= r={cs.r}")
    num = cs.to_numeric()
    steps = []
    all_pass = True
    for index, (label, poly) in enumerate(chain_step_polynomials(lam, cs.r)):
        form = evaluate_on_forms(poly, num)
        rep = nonnegative_sampled(form, trials, derive_seed(seed, 11, index), tol)
        steps.append(ChainStep(label=label, report=rep))
        all_pass = all_pass and rep.passed

    top = None
    if lam.weight == cs.n:
        n = cs.n
        t_cn = top_coefficient(num.form(n), tol)
        t_lam = top_coefficient(chern_product(num, lam), tol)
        t_c1n = top_coefficient(num.form(1).wedge_power(n), tol)
        scale = max(1.0, abs(t_cn), abs(t_lam), abs(t_c1n))
        ordered = (t_cn >= -tol * scale
                   and t_lam >= t_cn - tol * scale
                   and t_c1n >= t_lam - tol * scale)
        top = {"c_n": t_cn, "c_lambda": t_lam, "c_1^n": t_c1n, "passed": bool(ordered)}
        all_pass = all_pass and ordered
    return ChainReport(partition=lam.parts, weight=lam.weight, steps=tuple(steps),
                       top=top, seed=seed, trials=trials, tol=tol, passed=all_pass)
