"""Form documents (JSON) and the builtin catalog."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .abelian_groups import QZ, FinAbGroup
from .errors import InvalidForm, ParseError
from .quadratic_forms import QuadraticForm


@dataclass(frozen=True)
class FormSpec:
    name: str
    orders: tuple
    q_diag: tuple
    sigma_offdiag: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"name": self.name, "orders": list(self.orders), "q_diag": list(self.q_diag),
                "sigma_offdiag": dict(sorted(self.sigma_offdiag.items()))}

    def to_form(self) -> QuadraticForm:
        return parse_form(self.to_json())

    @classmethod
    def from_form(cls, q: QuadraticForm) -> "FormSpec":
        doc = q.to_spec()
        return cls(doc["name"], tuple(doc["orders"]), tuple(doc["q_diag"]), doc["sigma_offdiag"])


def _parse_rational(value, where: str) -> QZ:
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise ParseError(f"{where}: expected a 'num/den' string, got {value!r}")
    try:
        return QZ.parse(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"{where}: {exc}") from None


def parse_form(document) -> QuadraticForm:
    """Build a form from a JSON string, a dict or a FormSpec.

    Keys: ``orders`` (positive ints), ``q_diag`` (one rational per order),
    optional ``sigma_offdiag`` mapping ``"i,j"`` to rationals and ``name``.
    """
    if isinstance(document, FormSpec):
        document = document.to_json()
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(document, dict):
        raise ParseError("form document must be a JSON object")
    for key in ("orders", "q_diag"):
        if key not in document:
            raise ParseError(f"missing key {key!r}")
    unknown = set(document) - {"name", "orders", "q_diag", "sigma_offdiag"}
    if unknown:
        raise ParseError(f"unknown keys {sorted(unknown)}")
    orders = document["orders"]
    if not isinstance(orders, list) or any(isinstance(n, bool) or not isinstance(n, int) for n in orders):
        raise ParseError("orders: expected a list of integers")
    for i, n in enumerate(orders):
        if n < 1:
            raise InvalidForm(f"orders[{i}] = {n} is not a positive integer")
    diag = document["q_diag"]
    if not isinstance(diag, list):
        raise ParseError("q_diag: expected a list")
    if len(diag) != len(orders):
        raise InvalidForm(f"q_diag has {len(diag)} entries but orders has {len(orders)}")
    qd = [_parse_rational(v, f"q_diag[{i}]") for i, v in enumerate(diag)]
    raw_off = document.get("sigma_offdiag", {}) or {}
    if not isinstance(raw_off, dict):
        raise ParseError("sigma_offdiag: expected an object keyed by 'i,j'")
    off = {}
    for key, v in raw_off.items():
        try:
            i, j = (int(t) for t in str(key).split(","))
        except ValueError:
            raise ParseError(f"sigma_offdiag[{key!r}]: key must look like 'i,j'") from None
        if not (0 <= i < j < len(orders)):
            raise InvalidForm(f"sigma_offdiag[{key!r}]: need 0 <= i < j < {len(orders)}")
        off[(i, j)] = _parse_rational(v, f"sigma_offdiag[{key!r}]")
    name = document.get("name", "")
    if not isinstance(name, str):
        raise ParseError("name: expected a string")
    try:
        return QuadraticForm(FinAbGroup(tuple(orders)), tuple(qd), off, name)
    except InvalidForm as exc:
        raise InvalidForm(f"{name or 'form'}: {exc}") from None


_BUILTIN = (
    ("triv2", (2,), ("0/1",), {}),
    ("semion", (2,), ("1/4",), {}),
    ("svec", (2,), ("1/2",), {}),
    ("z3", (3,), ("1/3",), {}),
    ("toric", (2, 2), ("0/1", "0/1"), {"0,1": "1/2"}),
    ("klein0", (2, 2), ("0/1", "0/1"), {}),
    ("z4std", (4,), ("1/8",), {}),
    ("z4ferm", (4,), ("1/2",), {}),
    ("z4tan", (4,), ("1/4",), {}),
    ("z2z4", (2, 4), ("0/1", "1/8"), {"0,1": "1/2"}),
    ("cube0", (2, 2, 2), ("0/1", "0/1", "0/1"), {}),
)


def builtin_catalog() -> list:
    return [FormSpec(name, orders, diag, dict(off)) for name, orders, diag, off in _BUILTIN]


def catalog_forms() -> list:
    return [spec.to_form() for spec in builtin_catalog()]


def lookup(name: str) -> QuadraticForm:
    for spec in builtin_catalog():
        if spec.name == name:
            return spec.to_form()
    raise KeyError(f"no builtin form named {name!r}")
