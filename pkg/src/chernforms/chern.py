"""Chern forms of a curvature matrix and their top-degree coefficients.

For an r x r curvature matrix Omega of (1,1)-forms on an n-dimensional base,
the Chern forms are the coefficients of the characteristic polynomial

    det(t I_r + (sqrt(-1)/2*pi) Omega) = sum_i c_i(Omega) t^{r-i},

i.e. c_i = (sqrt(-1)/2*pi)^i * (sum of principal i x i minors of Omega).
Entries of Omega have even total degree, so they commute and the Leibniz
determinant is unambiguous.  Forms of degree above min(r, n) vanish; the set
stops there.

Two prefactor modes, tied to the scalar mode of Omega:

* float ("numeric"): the full scalar (sqrt(-1)/2*pi)^i is folded into the
  coefficients, so c_i is a real (i,i)-form with float entries.
* exact: the stored form is (sqrt(-1))^i * m_i with Gaussian-rational
  coefficients (m_i = the minor sum), and the residual transcendental factor
  (2*pi)^(-i) per degree i is left symbolic.  Stored exact forms are then
  genuinely real (conjugation-invariant) and division-free, and
  ``ChernFormSet.numeric_form`` folds the residual in when a float view is
  needed.

``top_coefficient`` reads off the scalar t in phi = t * (volume form) for an
(n,n)-form phi, normalized so the standard Euclidean volume form
prod_j sqrt(-1) dz^j ^ dzbar^j has coefficient 1.
"""

from __future__ import annotations

import dataclasses
import math
from fractions import Fraction
from itertools import combinations, permutations
from typing import Optional, Sequence, Union

from .curvature import CurvatureMatrix
from .errors import InputError
from .forms import Form
from .scalars import EXACT, FLOAT, GaussianRational

#: exact phase (sqrt(-1))^i, i mod 4
_PHASES = (GaussianRational(1), GaussianRational(0, 1),
           GaussianRational(-1), GaussianRational(0, -1))


def _perm_parity(perm: Sequence[int]) -> int:
    inv = sum(1 for a, b in combinations(range(len(perm)), 2) if perm[a] > perm[b])
    return -1 if inv & 1 else 1


def form_matrix_det(entries: Sequence[Sequence[Form]], n: int, mode: str) -> Form:
    """Leibniz determinant of a square matrix of even-degree forms."""
    k = len(entries)
    total = Form.constant(n, 1, mode)
    if k == 0:
        return total
    total = Form.zero(n, mode)
    for perm in permutations(range(k)):
        prod = Form.constant(n, 1, mode)
        ok = True
        for row in range(k):
            f = entries[row][perm[row]]
            if f.is_zero():
                ok = False
                break
            prod = prod.wedge(f)
            if prod.is_zero():
                ok = False
                break
        if not ok:
            continue
        if _perm_parity(perm) < 0:
            prod = -prod
        total = total + prod
    return total


@dataclasses.dataclass(frozen=True)
class ChernFormSet:
    """Chern forms c_0, ..., c_k of one curvature matrix, k = min(r, n).

    ``witnessed`` records whether the source curvature carried a factor
    witness; the nonnegativity engines demand it.  ``mode`` is the scalar
    mode; in exact mode each stored form is (sqrt(-1))^i * (minor sum) and
    the symbolic residual prefactor is (2*pi)^(-i) (see module docstring).
    """

    n: int
    r: int
    forms: tuple[Form, ...]
    mode: str
    witnessed: bool

    @property
    def top_degree(self) -> int:
        return len(self.forms) - 1

    def form(self, i: int) -> Form:
        """c_i; identically zero outside 0 <= i <= min(r, n)."""
        if i < 0 or i > self.top_degree:
            return Form.zero(self.n, self.mode)
        return self.forms[i]

    def residual_prefactor_power(self, i: int) -> int:
        """The stored c_i must be multiplied by (2*pi)**(-power) to be the
        true Chern form; 0 in float mode where everything is folded in."""
        return i if self.mode == EXACT else 0

    def numeric_form(self, i: int) -> Form:
        """c_i as a float-mode form with all prefactors folded in."""
        f = self.form(i)
        if self.mode == FLOAT:
            return f
        return f.to_float().scale((2.0 * math.pi) ** (-i))

    def to_numeric(self) -> "ChernFormSet":
        if self.mode == FLOAT:
            return self
        return ChernFormSet(
            n=self.n, r=self.r,
            forms=tuple(self.numeric_form(i) for i in range(self.top_degree + 1)),
            mode=FLOAT, witnessed=self.witnessed)


def chern_forms(omega: CurvatureMatrix, n: Optional[int] = None) -> ChernFormSet:
    """Chern forms of a curvature matrix, through degree min(r, n).

    ``n`` defaults to the base dimension of the entries and must match it
    when given.  The result inherits the scalar mode of ``omega`` and records
    whether ``omega`` was witnessed.
    """
    base_n = omega.n
    if n is not None and n != base_n:
        raise InputError(f"requested base dimension {n} does not match the forms' {base_n}")
    r = omega.r
    mode = omega.mode
    k = min(r, base_n)
    out = [Form.constant(base_n, 1, mode)]
    for i in range(1, k + 1):
        minor_sum = Form.zero(base_n, mode)
        for subset in combinations(range(r), i):
            sub = [[omega.entries[a][b] for b in subset] for a in subset]
            minor_sum = minor_sum + form_matrix_det(sub, base_n, mode)
        if mode == EXACT:
            c_i = minor_sum.scale(_PHASES[i % 4])
        else:
            c_i = minor_sum.scale((1j / (2.0 * math.pi)) ** i)
        out.append(c_i)
    return ChernFormSet(n=base_n, r=r, forms=tuple(out), mode=mode,
                        witnessed=omega.witnessed)


def chern_product(cs: ChernFormSet, parts: Sequence[int]) -> Form:
    """c_lambda = c_{lambda_1} ^ ... ^ c_{lambda_l}  (zero parts are skipped).

    Parts above r are rejected: c_j is not a variable of the rank-r problem.
    Parts between min(r, n) and r are legal and contribute the zero form.
    """
    result = Form.constant(cs.n, 1, cs.mode)
    for part in parts:
        if part < 0 or part > cs.r:
            raise InputError(f"partition part {part} out of range 0..r={cs.r}")
        if part == 0:
            continue
        result = result.wedge(cs.form(part))
        if result.is_zero():
            break
    return result


def top_coefficient(form: Form, tol: float = 1e-9) -> Union[Fraction, float]:
    """Scalar t with phi = t * prod_j (sqrt(-1) dz^j ^ dzbar^j) for an
    (n,n)-form phi.

    Exact mode returns a Fraction and demands exact reality; float mode
    returns a float and tolerates an imaginary part up to tol * scale.
    The zero form gives 0.
    """
    n = form.n
    if form.is_zero():
        return Fraction(0) if form.mode == EXACT else 0.0
    if not form.is_homogeneous(n, n):
        raise InputError(f"top coefficient requires an ({n},{n})-form")
    full = (1 << n) - 1
    raw = form.terms[(full, full)]
    # evaluate on the standard basis tuple: (-i)^(n^2) * raw
    if form.mode == EXACT:
        value = _PHASES[(-(n * n)) % 4] * raw
        if value.im != 0:
            raise InputError("top coefficient of an exact form must be real")
        return value.re
    value = ((-1j) ** (n * n % 4)) * raw
    scale = max(1.0, abs(value))
    if abs(value.imag) > tol * scale:
        raise InputError(f"top coefficient has imaginary part {value.imag:.3e} beyond tolerance")
    return float(value.real)
