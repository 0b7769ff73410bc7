# ---- File: forms/exterior.py ----

"""Sparse exterior forms on m: strictly increasing index tuples -> Scalar."""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from algebra.scalars import Number, RatFunc, Scalar, is_parametric, is_zero, scalar_text, simplify, specialize
from errors import StructuralError

Indices = Tuple[int, ...]


def _clean(value: Scalar) -> Scalar:
    return simplify(value) if isinstance(value, RatFunc) else value


def _accumulate(target: Dict[Indices, Scalar], key: Indices, value: Scalar) -> None:
    if is_zero(value):
        return
    total = target[key] + value if key in target else value  # type: ignore[operator]
    if is_zero(total):
        target.pop(key, None)
    else:
        target[key] = _clean(total)


def sort_with_sign(indices: Sequence[int]) -> Tuple[int, Optional[Indices]]:
    """(sign, sorted tuple) of a wedge of basis 1-forms; (0, None) on a repeated index."""
    items = list(indices)
    if len(set(items)) != len(items):
        return 0, None
    sign = 1
    # insertion sort counting transpositions
    for i in range(1, len(items)):
        j = i
        while j > 0 and items[j - 1] > items[j]:
            items[j - 1], items[j] = items[j], items[j - 1]
            sign = -sign
            j -= 1
    return sign, tuple(items)


class Form:
    __slots__ = ("dim", "degree", "coeffs")

    def __init__(self, dim: int, degree: int, coeffs: Optional[Mapping[Indices, Union[Scalar, int]]] = None):
        self.dim = dim
        self.degree = degree
        cleaned: Dict[Indices, Scalar] = {}
        for key, value in (coeffs or {}).items():
            key = tuple(key)
            if len(key) != degree or any(not 0 <= i < dim for i in key) or any(a >= b for a, b in zip(key, key[1:])):
                raise StructuralError(f"Index tuple {key} is not a strictly increasing {degree}-tuple below {dim}")
            scalar = Fraction(value) if isinstance(value, int) else value
            _accumulate(cleaned, key, scalar)
        self.coeffs = cleaned

    @classmethod
    def _raw(cls, dim: int, degree: int, coeffs: Dict[Indices, Scalar]) -> "Form":
        form = object.__new__(cls)
        form.dim, form.degree, form.coeffs = dim, degree, coeffs
        return form

    @classmethod
    def zero(cls, dim: int, degree: int) -> "Form":
        return cls._raw(dim, degree, {})

    @classmethod
    def one(cls, dim: int, value: Union[Scalar, int] = 1) -> "Form":
        return cls(dim, 0, {(): value})

    @classmethod
    def basis_oneform(cls, dim: int, index: int) -> "Form":
        return cls(dim, 1, {(index,): 1})

    @classmethod
    def monomial(cls, dim: int, indices: Sequence[int], coefficient: Union[Scalar, int] = 1) -> "Form":
        """Wedge of basis 1-forms in the given (possibly unsorted) order."""
        sign, key = sort_with_sign(indices)
        if key is None:
            return cls.zero(dim, len(indices))
        value = Fraction(coefficient) if isinstance(coefficient, int) else coefficient
        return cls(dim, len(indices), {key: sign * value})  # type: ignore[operator]

    # --- Inspection ---

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def terms(self) -> Iterator[Tuple[Indices, Scalar]]:
        for key in sorted(self.coeffs):
            yield key, self.coeffs[key]

    def coefficient(self, key: Indices) -> Scalar:
        return self.coeffs.get(tuple(key), Fraction(0))

    @property
    def is_parametric(self) -> bool:
        return any(is_parametric(v) for v in self.coeffs.values())

    def _check(self, other: "Form") -> None:
        if self.dim != other.dim:
            raise StructuralError(f"Forms live on spaces of dimension {self.dim} and {other.dim}")
        if self.degree != other.degree:
            raise StructuralError(f"Degree mismatch: {self.degree} vs {other.degree}")

    # --- Vector space structure ---

    def __add__(self, other: "Form") -> "Form":
        self._check(other)
        out = dict(self.coeffs)
        for key, value in other.coeffs.items():
            _accumulate(out, key, value)
        return Form._raw(self.dim, self.degree, out)

    def __neg__(self) -> "Form":
        return Form._raw(self.dim, self.degree, {k: -v for k, v in self.coeffs.items()})  # type: ignore[misc]

    def __sub__(self, other: "Form") -> "Form":
        return self + (-other)

    def scale(self, factor: Union[Scalar, int]) -> "Form":
        if isinstance(factor, int):
            factor = Fraction(factor)
        if is_zero(factor):
            return Form.zero(self.dim, self.degree)
        return Form._raw(self.dim, self.degree, {k: _clean(v * factor) for k, v in self.coeffs.items()})  # type: ignore[operator]

    __rmul__ = scale

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Form):
            return NotImplemented
        if (self.dim, self.degree) != (other.dim, other.degree) or self.coeffs.keys() != other.coeffs.keys():
            return False
        return all(self.coeffs[k] == other.coeffs[k] for k in self.coeffs)

    __hash__ = None  # type: ignore[assignment]

    def specialize(self, values: Mapping[str, Number]) -> "Form":
        out: Dict[Indices, Scalar] = {}
        for key, value in self.coeffs.items():
            _accumulate(out, key, specialize(value, values))
        return Form._raw(self.dim, self.degree, out)

    def __xor__(self, other: "Form") -> "Form":
        return wedge(self, other)

    # --- Display ---

    def to_text(self, labels: Optional[Sequence[str]] = None) -> str:
        if not self.coeffs:
            return "0"
        pieces: List[str] = []
        for key, value in self.terms():
            mono = "^".join(labels[i] if labels else f"e{i}" for i in key) or "1"
            text = scalar_text(value)
            pieces.append(f"({text})*{mono}" if isinstance(value, RatFunc) else f"{text}*{mono}")
        return " + ".join(pieces)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"Form(degree={self.degree}, {self.to_text()})"


def wedge(a: Form, b: Form) -> Form:
    if a.dim != b.dim:
        raise StructuralError(f"Forms live on spaces of dimension {a.dim} and {b.dim}")
    degree = a.degree + b.degree
    out: Dict[Indices, Scalar] = {}
    if degree > a.dim:
        return Form.zero(a.dim, degree)
    for key_a, va in a.coeffs.items():
        set_a = set(key_a)
        for key_b, vb in b.coeffs.items():
            if set_a.intersection(key_b):
                continue
            # sign of merging two sorted tuples: count pairs (i in a, j in b) with i > j
            inversions = sum(1 for i in key_a for j in key_b if i > j)
            key = tuple(sorted(key_a + key_b))
            product = va * vb  # type: ignore[operator]
            _accumulate(out, key, -product if inversions % 2 else product)
    return Form._raw(a.dim, degree, out)


def power(form: Form, exponent: int) -> Form:
    """Left-nested wedge power form ^ form ^ ... (exponent >= 1)."""
    result = form
    for _ in range(exponent - 1):
        result = wedge(result, form)
    return result


def act_on_form(columns: Sequence[Mapping[int, Fraction]], form: Form) -> Form:
    """Infinitesimal isotropy action: minus the sum over slots of composing with the operator.

    `columns[j]` holds the image of m_j; the dual action sends e^r to
    -sum_j A[r][j] e^j.
    """
    rows: Dict[int, Dict[int, Fraction]] = {}
    for j, col in enumerate(columns):
        for r, v in col.items():
            rows.setdefault(r, {})[j] = v
    out: Dict[Indices, Scalar] = {}
    for key, value in form.coeffs.items():
        for pos, r in enumerate(key):
            for j, a in rows.get(r, {}).items():
                replaced = key[:pos] + (j,) + key[pos + 1:]
                sign, new_key = sort_with_sign(replaced)
                if new_key is None:
                    continue
                _accumulate(out, new_key, value * (-sign * a))  # type: ignore[operator]
    return Form._raw(form.dim, form.degree, out)
