"""Pointwise exterior algebra of complex (p,q)-forms.

Everything here lives at a single point of an n-dimensional complex vector
space: a form is a finite sum of monomials

    c * dz^{i_1} ^ ... ^ dz^{i_p} ^ dzbar^{j_1} ^ ... ^ dzbar^{j_q}

with strictly increasing 1-based index lists.  A monomial is keyed by a pair
of bitmasks ``(h, a)`` -- bit ``i-1`` of ``h`` set iff dz^i occurs, bit
``i-1`` of ``a`` set iff dzbar^i occurs -- so wedge products reduce to mask
disjointness tests plus an O(popcount) inversion-count sign.  Coefficients
live in one scalar mode (see ``scalars``): exact Gaussian rationals or float
complex.  Forms are immutable.

Evaluation pairs a homogeneous (p,p)-form with a p-tuple of tangent vectors
X = (X_1, ..., X_p):

    evaluate(phi, X) = (-sqrt(-1))^(p^2) * sum_terms c
                        * det(X_b^{i_a}) * conj(det(X_b^{j_a}))

(the determinant pairing, no 1/p! factor).  With this normalization
(sqrt(-1))^(p^2) * psi ^ conj(psi) evaluates to |pairing(psi, X)|^2 for any
(p,0)-form psi, so forms of that shape are pointwise nonnegative, and the
standard volume normalization holds:

    evaluate(prod_j sqrt(-1) dz^j ^ dzbar^j, (e_1, ..., e_n)) = 1.

``nonnegative_sampled`` Monte-Carlo-checks that nonnegativity against
standard complex normal tuples from a seeded counter-based stream.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

from . import _linalg
from .errors import InputError
from .rng import complex_normal, substream
from .scalars import (
    EXACT,
    FLOAT,
    GaussianRational,
    check_same_mode,
    coerce,
    is_zero,
    magnitude,
    to_float_scalar,
)

#: hard cap on the ambient complex dimension (two 14-bit masks per key)
MAX_DIM = 14

#: default sampling tolerance: minima down to -tol * scale still PASS
DEFAULT_TOL = 1e-9


def _indices_to_mask(indices: Iterable[int], n: int) -> int:
    mask = 0
    prev = 0
    for i in indices:
        if not isinstance(i, int) or i < 1 or i > n:
            raise InputError(f"form index {i!r} out of range 1..{n}")
        if i <= prev:
            raise InputError("form indices must be strictly increasing")
        prev = i
        mask |= 1 << (i - 1)
    return mask


def _mask_to_indices(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length())
        mask ^= low
    return tuple(out)


def _inversions(x: int, y: int) -> int:
    """Number of pairs i in x, j in y with i > j (masks, bit b = index b+1)."""
    count = 0
    while y:
        low = y & -y
        count += (x >> low.bit_length()).bit_count()
        y ^= low
    return count


def _wedge_sign(h1: int, a1: int, h2: int, a2: int) -> int:
    """Sign from sorting dz^{h1} dzbar^{a1} dz^{h2} dzbar^{a2} into canonical
    order: dzbar^{a1} hops over dz^{h2}, then each family is merge-sorted."""
    parity = a1.bit_count() * h2.bit_count() + _inversions(h1, h2) + _inversions(a1, a2)
    return -1 if parity & 1 else 1


class Form:
    """Immutable complex differential form at a point.

    Do not mutate ``terms`` after construction; all operations return new
    forms.  Addition, wedge and comparison require matching ``n`` and
    scalar mode.
    """

    __slots__ = ("n", "mode", "terms")

    def __init__(self, n: int, mode: str = FLOAT, terms: Optional[dict] = None):
        if not isinstance(n, int) or n < 0 or n > MAX_DIM:
            raise InputError(f"base dimension must be an int in 0..{MAX_DIM}, got {n!r}")
        if mode not in (EXACT, FLOAT):
            raise InputError(f"unknown scalar mode {mode!r}")
        clean: dict = {}
        if terms:
            limit = 1 << n
            for (h, a), c in terms.items():
                if h >= limit or a >= limit or h < 0 or a < 0:
                    raise InputError("monomial mask exceeds the base dimension")
                c = coerce(c, mode)
                if not is_zero(c):
                    clean[(h, a)] = c
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "mode", mode)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *_):
        raise AttributeError("Form is immutable")

    @classmethod
    def _raw(cls, n: int, mode: str, terms: dict) -> "Form":
        # internal fast path: terms already coerced and zero-free
        self = object.__new__(cls)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "mode", mode)
        object.__setattr__(self, "terms", terms)
        return self

    # ------------------------------------------------------------------
    # constructors

    @classmethod
    def zero(cls, n: int, mode: str = FLOAT) -> "Form":
        return cls(n, mode, {})

    @classmethod
    def constant(cls, n: int, value, mode: str = FLOAT) -> "Form":
        return cls(n, mode, {(0, 0): value})

    @classmethod
    def monomial(cls, n: int, dz_indices: Sequence[int], dzbar_indices: Sequence[int],
                 coefficient=1, mode: str = FLOAT) -> "Form":
        """c * dz^{i_1} ^ ... ^ dzbar^{j_q} with strictly increasing indices."""
        key = (_indices_to_mask(dz_indices, n), _indices_to_mask(dzbar_indices, n))
        return cls(n, mode, {key: coefficient})

    @classmethod
    def dz(cls, n: int, i: int, mode: str = FLOAT) -> "Form":
        return cls.monomial(n, [i], [], 1, mode)

    @classmethod
    def dzbar(cls, n: int, i: int, mode: str = FLOAT) -> "Form":
        return cls.monomial(n, [], [i], 1, mode)

    # ------------------------------------------------------------------
    # structure

    def is_zero(self) -> bool:
        return not self.terms

    def bidegrees(self) -> set[tuple[int, int]]:
        """Set of (p,q) bidegrees present; empty for the zero form."""
        return {(h.bit_count(), a.bit_count()) for (h, a) in self.terms}

    def is_homogeneous(self, p: Optional[int] = None, q: Optional[int] = None) -> bool:
        """True if all monomials share one bidegree (matching (p,q) if given).
        The zero form is homogeneous of every bidegree."""
        degs = self.bidegrees()
        if not degs:
            return True
        if len(degs) > 1:
            return False
        (dp, dq), = degs
        return (p is None or dp == p) and (q is None or dq == q)

    def bidegree(self) -> tuple[int, int]:
        """The (p,q) of a nonzero homogeneous form."""
        degs = self.bidegrees()
        if len(degs) != 1:
            raise InputError("form is zero or not homogeneous; no single bidegree")
        return next(iter(degs))

    def coefficient(self, dz_indices: Sequence[int], dzbar_indices: Sequence[int]):
        """Coefficient of the canonical monomial with these index lists."""
        key = (_indices_to_mask(dz_indices, self.n), _indices_to_mask(dzbar_indices, self.n))
        c = self.terms.get(key)
        if c is None:
            return GaussianRational(0) if self.mode == EXACT else complex(0.0)
        return c

    def max_coefficient_magnitude(self) -> float:
        return max((magnitude(c) for c in self.terms.values()), default=0.0)

    # ------------------------------------------------------------------
    # algebra

    def _check_compatible(self, other: "Form", what: str):
        if not isinstance(other, Form):
            raise InputError(f"{what} requires two forms, got {type(other).__name__}")
        if self.n != other.n:
            raise InputError(f"{what} requires matching base dimension: {self.n} vs {other.n}")
        check_same_mode(self.mode, other.mode, what)

    def __add__(self, other: "Form") -> "Form":
        self._check_compatible(other, "addition")
        out = dict(self.terms)
        for key, c in other.terms.items():
            acc = out.get(key)
            total = c if acc is None else acc + c
            if is_zero(total):
                out.pop(key, None)
            else:
                out[key] = total
        return Form._raw(self.n, self.mode, out)

    def __sub__(self, other: "Form") -> "Form":
        return self + (-other)

    def __neg__(self) -> "Form":
        return Form._raw(self.n, self.mode, {k: -c for k, c in self.terms.items()})

    def scale(self, value) -> "Form":
        """Multiply every coefficient by a scalar of this form's mode
        (int and Fraction are accepted in either mode)."""
        c0 = coerce(value, self.mode)
        if is_zero(c0):
            return Form.zero(self.n, self.mode)
        return Form._raw(self.n, self.mode, {k: c0 * c for k, c in self.terms.items()})

    def wedge(self, other: "Form") -> "Form":
        self._check_compatible(other, "wedge")
        out: dict = {}
        for (h1, a1), c1 in self.terms.items():
            for (h2, a2), c2 in other.terms.items():
                if (h1 & h2) or (a1 & a2):
                    continue
                c = c1 * c2
                if _wedge_sign(h1, a1, h2, a2) < 0:
                    c = -c
                key = (h1 | h2, a1 | a2)
                acc = out.get(key)
                total = c if acc is None else acc + c
                if is_zero(total):
                    out.pop(key, None)
                else:
                    out[key] = total
        return Form._raw(self.n, self.mode, out)

    def wedge_power(self, k: int) -> "Form":
        """k-fold wedge of the form with itself; k = 0 gives the constant 1."""
        if k < 0:
            raise InputError("wedge power must be nonnegative")
        out = Form.constant(self.n, 1, self.mode)
        for _ in range(k):
            out = out.wedge(self)
        return out

    def conjugate(self) -> "Form":
        """Complex conjugate: swaps dz and dzbar families with the
        (-1)^{pq} reordering sign, conjugating coefficients."""
        out: dict = {}
        for (h, a), c in self.terms.items():
            sign = -1 if (h.bit_count() * a.bit_count()) & 1 else 1
            cc = c.conjugate()
            out[(a, h)] = -cc if sign < 0 else cc
        return Form._raw(self.n, self.mode, out)

    # ------------------------------------------------------------------
    # comparison / conversion

    def __eq__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return self.n == other.n and self.mode == other.mode and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, self.mode, frozenset(self.terms.items())))

    def allclose(self, other: "Form", tol: float = 1e-12) -> bool:
        """Coefficientwise agreement within tol * scale, after converting both
        operands to float mode; scale = max(1, largest coefficient)."""
        if not isinstance(other, Form) or self.n != other.n:
            return False
        a, b = self.to_float(), other.to_float()
        scale = max(1.0, a.max_coefficient_magnitude(), b.max_coefficient_magnitude())
        keys = set(a.terms) | set(b.terms)
        return all(
            abs(a.terms.get(k, 0j) - b.terms.get(k, 0j)) <= tol * scale for k in keys
        )

    def to_float(self) -> "Form":
        if self.mode == FLOAT:
            return self
        return Form._raw(self.n, FLOAT, {k: complex(c) for k, c in self.terms.items()})

    def imag_part_magnitude(self) -> float:
        """max |coefficient| of (phi - conj(phi)) / 2: how far from real."""
        diff = self.to_float() - self.conjugate().to_float()
        return 0.5 * diff.max_coefficient_magnitude()

    # ------------------------------------------------------------------
    # serialization (the Form literal)

    def to_literal(self) -> dict:
        """JSON-able literal: {"n": n, "terms": [{"dz": [...], "dzbar": [...],
        "re": x, "im": y}, ...]} with terms sorted canonically."""
        terms = []
        for (h, a) in sorted(self.terms):
            c = to_float_scalar(self.terms[(h, a)])
            terms.append({
                "dz": list(_mask_to_indices(h)),
                "dzbar": list(_mask_to_indices(a)),
                "re": c.real,
                "im": c.imag,
            })
        return {"n": self.n, "terms": terms}

    @classmethod
    def from_literal(cls, obj, mode: str = FLOAT) -> "Form":
        """Parse a Form literal.  In exact mode the decimal values of "re"/"im"
        are taken exactly (via their decimal string)."""
        if not isinstance(obj, dict):
            raise InputError("form literal must be an object with fields 'n' and 'terms'")
        n = obj.get("n")
        if not isinstance(n, int):
            raise InputError("form literal field 'n': expected an integer")
        raw_terms = obj.get("terms")
        if not isinstance(raw_terms, list):
            raise InputError("form literal field 'terms': expected a list")
        total = cls.zero(n, mode)
        for pos, t in enumerate(raw_terms):
            where = f"terms[{pos}]"
            if not isinstance(t, dict):
                raise InputError(f"form literal {where}: expected an object")
            dz = t.get("dz", [])
            dzbar = t.get("dzbar", [])
            if not isinstance(dz, list) or not isinstance(dzbar, list):
                raise InputError(f"form literal {where}: 'dz' and 'dzbar' must be index lists")
            re, im = t.get("re", 0), t.get("im", 0)
            if isinstance(re, bool) or isinstance(im, bool) or \
                    not isinstance(re, (int, float)) or not isinstance(im, (int, float)):
                raise InputError(f"form literal {where}: 're' and 'im' must be numbers")
            if mode == EXACT:
                coeff = GaussianRational(Fraction(str(re)), Fraction(str(im)))
            else:
                coeff = complex(re, im)
            try:
                total = total + cls.monomial(n, dz, dzbar, coeff, mode)
            except InputError as exc:
                raise InputError(f"form literal {where}: {exc}") from exc
        return total

    # ------------------------------------------------------------------

    def __repr__(self):
        if not self.terms:
            return f"Form.zero({self.n}, {self.mode!r})"
        parts = []
        for (h, a) in sorted(self.terms):
            c = self.terms[(h, a)]
            factors = [f"dz{i}" for i in _mask_to_indices(h)]
            factors += [f"dzbar{j}" for j in _mask_to_indices(a)]
            mono = "^".join(factors) if factors else "1"
            parts.append(f"({c})*{mono}")
        return " + ".join(parts)


def wedge(a: Form, b: Form) -> Form:
    return a.wedge(b)


def conjugate(a: Form) -> Form:
    return a.conjugate()


# ----------------------------------------------------------------------
# evaluation


def _minor_det_exact(vectors, mask: int):
    idx = _mask_to_indices(mask)
    rows = [[vectors[b][i - 1] for b in range(len(idx))] for i in idx]
    return _linalg.det(rows, EXACT)


def _coerce_vectors(vectors, p: int, n: int, mode: str):
    if len(vectors) != p:
        raise InputError(f"evaluation of a ({p},{p})-form needs {p} tangent vectors, got {len(vectors)}")
    out = []
    for v in vectors:
        comps = [coerce(x, mode) for x in v]
        if len(comps) != n:
            raise InputError(f"tangent vector length {len(comps)} does not match base dimension {n}")
        out.append(comps)
    return out


def evaluate(form: Form, vectors: Sequence[Sequence]) -> complex | GaussianRational:
    """Determinant pairing of a homogeneous (p,p)-form with p tangent vectors.

    Returns a scalar in the form's mode.  For forms in the nonnegative cone
    the result is real and >= 0; reality is not enforced here, callers that
    need it check the imaginary part.
    """
    if form.is_zero():
        return GaussianRational(0) if form.mode == EXACT else complex(0.0)
    if not form.is_homogeneous():
        raise InputError("evaluation requires a homogeneous form")
    p, q = form.bidegree()
    if p != q:
        raise InputError(f"evaluation requires a (p,p)-form, got ({p},{q})")
    vecs = _coerce_vectors(vectors, p, form.n, form.mode)

    if form.mode == FLOAT:
        arr = np.array(vecs, dtype=complex).reshape(1, p, form.n)
        return complex(_evaluate_batch(form, arr)[0])

    dets: dict[int, GaussianRational] = {}

    def minor(mask: int) -> GaussianRational:
        d = dets.get(mask)
        if d is None:
            d = _minor_det_exact(vecs, mask)
            dets[mask] = d
        return d

    total = GaussianRational(0)
    for (h, a), c in form.terms.items():
        total = total + c * minor(h) * minor(a).conjugate()
    # (-i)^(p^2): 1 for even p, -i for odd p
    if p & 1:
        total = total * GaussianRational(0, -1)
    return total


def _evaluate_batch(form: Form, samples: np.ndarray) -> np.ndarray:
    """Evaluate a float-mode (p,p)-form on a (t, p, n) batch of vector tuples.
    One batched determinant per distinct index subset."""
    t, p, n = samples.shape
    if form.is_zero():
        return np.zeros(t, dtype=complex)
    if p == 0:
        return np.full(t, form.terms.get((0, 0), 0j), dtype=complex)
    needed = {h for (h, _) in form.terms} | {a for (_, a) in form.terms}
    dets = {}
    for mask in needed:
        cols = [i - 1 for i in _mask_to_indices(mask)]
        dets[mask] = np.linalg.det(samples[:, :, cols])
    vals = np.zeros(t, dtype=complex)
    for (h, a), c in form.terms.items():
        vals += c * dets[h] * np.conj(dets[a])
    return ((-1j) ** (p * p % 4)) * vals


# ----------------------------------------------------------------------
# sampled nonnegativity


@dataclass(frozen=True)
class VerdictReport:
    """Outcome of a sampled pointwise-nonnegativity check."""

    passed: bool
    min_value: float
    trials: int
    seed: int
    tol: float
    scale: float
    degree: int
    witness: Optional[list] = None          # argmin tuple, [[{re,im}, ...], ...]
    max_imag: float = 0.0                   # largest |Im| seen across samples

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "min_value": self.min_value,
            "trials": self.trials,
            "seed": self.seed,
            "tol": self.tol,
            "scale": self.scale,
            "degree": self.degree,
            "witness": self.witness,
            "max_imag": self.max_imag,
        }


def _witness_to_json(samples_row: np.ndarray) -> list:
    return [[{"re": float(z.real), "im": float(z.imag)} for z in vec] for vec in samples_row]


def nonnegative_sampled(form: Form, trials: int = 50, seed: int = 0,
                        tol: float = DEFAULT_TOL) -> VerdictReport:
    """Sample-test pointwise nonnegativity of a real (p,p)-form.

    Draws ``trials`` p-tuples of standard complex normal tangent vectors from
    the Philox stream keyed by ``seed`` and evaluates the form on each.  The
    check passes iff the minimum value is >= -tol * scale, where scale is
    max(1, largest coefficient magnitude).  The argmin tuple is reported as a
    witness either way.  A form that is not (p,p) or not real within
    tol * scale is rejected.
    """
    if trials < 1:
        raise InputError("trials must be >= 1")
    if form.is_zero():
        return VerdictReport(passed=True, min_value=0.0, trials=trials, seed=seed,
                             tol=tol, scale=1.0, degree=0)
    f = form.to_float()
    if not f.is_homogeneous():
        raise InputError("sampled nonnegativity requires a homogeneous form")
    p, q = f.bidegree()
    if p != q:
        raise InputError(f"sampled nonnegativity requires a (p,p)-form, got ({p},{q})")
    scale = max(1.0, f.max_coefficient_magnitude())
    imag_norm = f.imag_part_magnitude()
    if imag_norm > tol * scale:
        raise InputError(
            f"form is not real: max imaginary coefficient {imag_norm:.3e} "
            f"exceeds {tol:.1e} * scale ({scale:.3e})")

    rng = substream(seed, 0)
    samples = complex_normal(rng, (trials, p, f.n))
    vals = _evaluate_batch(f, samples)
    reals = vals.real
    arg = int(np.argmin(reals))
    min_value = float(reals[arg])
    max_imag = float(np.max(np.abs(vals.imag))) if trials else 0.0
    return VerdictReport(
        passed=bool(min_value >= -tol * scale),
        min_value=min_value,
        trials=trials,
        seed=seed,
        tol=tol,
        scale=scale,
        degree=p,
        witness=_witness_to_json(samples[arg]),
        max_imag=max_imag,
    )
