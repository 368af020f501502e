from __future__ import annotations

import json
import re
from enum import Enum
from pathlib import Path

from pydantic import Field, PrivateAttr, ValidationError, model_validator
from sympy.polys.rings import PolyElement, PolyRing

from src.algebra.commutative import coordinate_ring, parse_polynomial, to_super
from src.algebra.errors import ParseError
from src.algebra.groebner import IdealPresentation
from src.algebra.superpoly import SuperPolynomial, to_rational
from src.config.schemas import CheckName, JsonSchemaModel
from src.step1_nambu.constructors import determinantal, diagonal, explicit, outer
from src.step1_nambu.tensor import NambuTensor
from src.step3_resolve.io import from_file_model, load_resolvent
from src.step3_resolve.models import ResolventFile
from src.step3_resolve.truncation import ResolventTruncation

_SUPER_TOKEN = re.compile(r"\bxi?\d+_\d+\b")


def _index_key(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise ValueError(f"index tuple {text!r} must be comma separated integers") from exc


class TensorKind(str, Enum):
    DIAGONAL = "diagonal"
    DETERMINANTAL = "determinantal"
    EXPLICIT = "explicit"
    OUTER = "outer"


class TensorSpec(JsonSchemaModel):
    """How to build Pi. Index tuples are written ``"1,2,3,4"``."""

    kind: TensorKind
    n: int | None = Field(default=None, ge=1)
    arity: int | None = Field(default=None, ge=2)
    scalars: dict[str, str] = Field(default_factory=dict)
    prefactor: str = "1"
    casimirs: list[str] = Field(default_factory=list)
    derivations: list[int] | None = None
    coefficients: dict[str, str] = Field(default_factory=dict)
    factors: list[TensorSpec] = Field(default_factory=list)

    @model_validator(mode="after")
    def _check_shape(self) -> TensorSpec:
        if self.kind == TensorKind.OUTER:
            if len(self.factors) != 2:
                raise ValueError("an outer tensor product needs exactly two factors")
            return self
        if self.arity is None:
            raise ValueError(f"a {self.kind.value} tensor needs an arity")
        for key in list(self.scalars) + list(self.coefficients):
            indices = _index_key(key)
            if len(indices) != self.arity:
                raise ValueError(f"index tuple {key!r} does not have {self.arity} entries")
            if self.n is not None and any(i < 1 or i > self.n for i in indices):
                raise ValueError(f"index tuple {key!r} leaves 1..{self.n}")
        return self

    @property
    def total_n(self) -> int | None:
        if self.kind == TensorKind.OUTER:
            sizes = [factor.total_n for factor in self.factors]
            return None if None in sizes else sum(sizes)
        return self.n

    def build(self, n: int, aliases: dict[str, str]) -> NambuTensor:
        n = self.n or n
        ring = coordinate_ring(n)
        if self.kind == TensorKind.DIAGONAL:
            return diagonal(
                {_index_key(key): to_rational(value) for key, value in self.scalars.items()},
                n=n,
                arity=self.arity,
            )
        if self.kind == TensorKind.DETERMINANTAL:
            return determinantal(
                parse_polynomial(self.prefactor, ring, aliases),
                [parse_polynomial(text, ring, aliases) for text in self.casimirs],
                n=n,
                arity=self.arity,
                derivations=self.derivations,
            )
        if self.kind == TensorKind.EXPLICIT:
            return explicit(
                {_index_key(key): value for key, value in self.coefficients.items()},
                n=n,
                arity=self.arity,
                aliases=aliases,
            )
        first, second = self.factors
        return outer(first.build(first.n or n, {}), second.build(second.n or n, {}))


class BracketCase(JsonSchemaModel):
    """A bracket to evaluate; ``expected`` is compared exactly, or at ``point`` when given."""

    arguments: list[str] = Field(min_length=1)
    expected: str | None = None
    point: list[str] | None = None


class ProblemFile(JsonSchemaModel):
    label: str = ""
    provenance: str = ""
    n: int = Field(ge=1)
    tensor: TensorSpec
    ideal: list[str] = Field(default_factory=list)
    aliases: dict[str, str] = Field(default_factory=dict)
    definitions: dict[str, str] = Field(default_factory=dict)
    relations: list[str] = Field(default_factory=list)
    weights: list[int] | None = None
    resolvent: ResolventFile | str | None = None
    depth: int | None = Field(default=None, ge=0)
    cap: int | None = Field(default=None, gt=0)
    level: int | None = Field(default=None, ge=1)
    trusted: bool = False
    checks: list[CheckName] = Field(default_factory=list)
    brackets: list[BracketCase] = Field(default_factory=list)
    samples: list[str] = Field(default_factory=list)
    golden: str | None = None
    printed: str | None = None

    _source: Path | None = PrivateAttr(default=None)

    @model_validator(mode="after")
    def _check_sizes(self) -> ProblemFile:
        total = self.tensor.total_n
        if total is not None and total != self.n:
            raise ValueError(f"the tensor lives on {total} coordinates, the problem declares {self.n}")
        for key in list(self.tensor.scalars) + list(self.tensor.coefficients):
            if any(i < 1 or i > self.n for i in _index_key(key)):
                raise ValueError(f"index tuple {key!r} leaves 1..{self.n}")
        if self.tensor.derivations and any(d < 1 or d > self.n for d in self.tensor.derivations):
            raise ValueError(f"derivations {self.tensor.derivations} leave 1..{self.n}")
        if self.weights is not None and (len(self.weights) != self.n or any(w <= 0 for w in self.weights)):
            raise ValueError(f"weights must be {self.n} positive integers")
        if isinstance(self.resolvent, ResolventFile) and self.resolvent.n != self.n:
            raise ValueError(f"the resolvent lives on {self.resolvent.n} coordinates, the problem declares {self.n}")
        return self

    @property
    def source(self) -> Path | None:
        return self._source

    def locate(self, relative: str) -> Path:
        """Paths inside a problem file are relative to that file."""
        path = Path(relative)
        if path.is_absolute() or self._source is None:
            return path
        return self._source.parent / path

    # builders -------------------------------------------------------------

    @property
    def ring(self) -> PolyRing:
        return coordinate_ring(self.n)

    def definition_map(self) -> dict[str, PolyElement]:
        found: dict[str, PolyElement] = {}
        for name, text in self.definitions.items():
            found[name] = parse_polynomial(text, self.ring, self.aliases, found)
        return found

    def polynomial(self, text: str) -> PolyElement:
        return parse_polynomial(text, self.ring, self.aliases, self.definition_map())

    def element(self, text: str) -> SuperPolynomial:
        """A bracket argument: canonical super text when it names resolvent variables, else a polynomial."""
        if _SUPER_TOKEN.search(text):
            return SuperPolynomial.parse(text)
        return to_super(self.polynomial(text))

    def ideal_presentation(self) -> IdealPresentation:
        return IdealPresentation.from_strings(self.ideal, self.n, self.aliases)

    def nambu_tensor(self) -> NambuTensor:
        return self.tensor.build(self.n, self.aliases)

    def resolvent_truncation(self) -> ResolventTruncation | None:
        if self.resolvent is None:
            return None
        if isinstance(self.resolvent, ResolventFile):
            return from_file_model(self.resolvent)
        return load_resolvent(self.locate(self.resolvent))

    def read_text(self, relative: str) -> str:
        path = self.locate(relative)
        try:
            return path.read_text(encoding="utf-8")
        except OSError as exc:
            raise ParseError(f"cannot read {path}: {exc}") from exc


def load_problem(path: Path) -> ProblemFile:
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
        problem = ProblemFile.model_validate(payload)
    except (OSError, json.JSONDecodeError, ValidationError) as exc:
        raise ParseError(f"cannot read problem file {path}: {exc}") from exc
    problem._source = Path(path)
    return problem
