# SPDX-FileCopyrightText: Copyright (c) 2026 The surface-sections Authors. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Neron-Severi lattice of a surface: classes, pairing and cone queries"""

import dataclasses
import json
from fractions import Fraction
from typing import Optional, Tuple

from absl import logging

from surface_sections.python import errors
from surface_sections.python.ops import cone_ops
from surface_sections.python.ops import linalg_ops
from surface_sections.python.ops import rational_ops

DEFAULT_NEGATIVITY_BOUND = 64


@dataclasses.dataclass(frozen=True)
class NSClass:
  """Numerical divisor class, exact rational coordinates in the model's basis.

  Args:
    coords (tuple): Coordinates, coerced to `Fraction`.
  """
  coords: Tuple[Fraction, ...]

  def __post_init__(self):
    object.__setattr__(self, 'coords',
                       tuple(rational_ops.parse_rational(x) for x in self.coords))

  @classmethod
  def zero(cls, rank):
    return cls((0,) * rank)

  @classmethod
  def parse(cls, text):
    """Builds a class from "1,-1/2" or a list of rationals."""
    return cls(tuple(rational_ops.parse_rational_list(text)))

  @property
  def rank(self):
    return len(self.coords)

  def is_zero(self):
    return all(x == 0 for x in self.coords)

  def _check(self, other):
    if not isinstance(other, NSClass):
      return NotImplemented
    if other.rank != self.rank:
      raise errors.DimensionMismatch(f'Classes of rank {self.rank} and {other.rank} do not mix')
    return other

  def __add__(self, other):
    if self._check(other) is NotImplemented:
      return NotImplemented
    return NSClass(tuple(a + b for a, b in zip(self.coords, other.coords)))

  def __sub__(self, other):
    if self._check(other) is NotImplemented:
      return NotImplemented
    return NSClass(tuple(a - b for a, b in zip(self.coords, other.coords)))

  def __neg__(self):
    return NSClass(tuple(-a for a in self.coords))

  def __mul__(self, scalar):
    scalar = rational_ops.parse_rational(scalar)
    return NSClass(tuple(scalar * a for a in self.coords))

  __rmul__ = __mul__

  def to_json(self):
    return rational_ops.format_rational_list(self.coords)

  def __str__(self):
    return '(' + ', '.join(str(x) for x in self.coords) + ')'


@dataclasses.dataclass(frozen=True)
class CurveGenerator:
  """Named irreducible curve declared as a generator of the effective cone."""
  name: str
  cls: NSClass


@dataclasses.dataclass(frozen=True)
class ConeCertificate:
  """Witness `sum(coefficient * curve.cls) == target` with nonnegative coefficients."""
  coefficients: Tuple[Tuple[CurveGenerator, Fraction], ...]

  def as_dict(self):
    return {curve.name: coefficient for curve, coefficient in self.coefficients}

  def total(self, rank):
    result = NSClass.zero(rank)
    for curve, coefficient in self.coefficients:
      result = result + coefficient * curve.cls
    return result

  def to_json(self):
    return {curve.name: rational_ops.format_rational(c) for curve, c in self.coefficients}


@dataclasses.dataclass(frozen=True)
class ValidationReport:
  passed: bool
  signature: Tuple[int, int, int]
  failures: Tuple[str, ...]

  def to_json(self):
    return {
        'passed': self.passed,
        'signature': list(self.signature),
        'failures': list(self.failures),
    }


@dataclasses.dataclass(frozen=True)
class SurfaceModel:
  """Numerical model of a smooth projective surface.

  Args:
    basis (tuple): Names of the lattice basis vectors, length = rank.
    gram (tuple): rank x rank intersection matrix.
    canonical (NSClass): The canonical class K_X.
    chi (int): Holomorphic Euler characteristic of O_X.
    pg (int): h^0(K_X).
    curves (tuple): Declared generators of the effective cone, as `CurveGenerator`.
    kodaira_equals_numerical (bool): Whether Kodaira dimension agrees with the numerical
      dimension for every class on this surface (true for toric surfaces).
    ample (NSClass or None): An ample class, if known.
    generators_complete (bool): Records the axiom that `curves` generate the whole
      effective cone. Every answer of the engine is relative to this axiom.
    negativity_bound (int): Lower bound -negativity_bound on curve self-intersections.

  Raises:
    DimensionMismatch: If any class or matrix row does not have length `rank`.
  """
  basis: Tuple[str, ...]
  gram: Tuple[Tuple[Fraction, ...], ...]
  canonical: NSClass
  chi: int
  pg: int
  curves: Tuple[CurveGenerator, ...]
  kodaira_equals_numerical: bool = False
  ample: Optional[NSClass] = None
  generators_complete: bool = True
  negativity_bound: int = DEFAULT_NEGATIVITY_BOUND

  def __post_init__(self):
    object.__setattr__(self, 'basis', tuple(self.basis))
    object.__setattr__(
        self, 'gram',
        tuple(tuple(rational_ops.parse_rational(x) for x in row) for row in self.gram))
    object.__setattr__(self, 'curves', tuple(self.curves))
    rank = len(self.basis)
    if rank == 0:
      raise errors.InvalidModel('A surface model needs a basis of positive rank')
    if len(self.gram) != rank or any(len(row) != rank for row in self.gram):
      raise errors.DimensionMismatch(f'Gram matrix must be {rank}x{rank}')
    named = [('canonical', self.canonical)] + [(c.name, c.cls) for c in self.curves]
    if self.ample is not None:
      named.append(('ample', self.ample))
    for name, cls in named:
      if cls.rank != rank:
        raise errors.DimensionMismatch(f'Class {name} has rank {cls.rank}, expected {rank}')

  @property
  def rank(self):
    return len(self.basis)

  def curve(self, name):
    for c in self.curves:
      if c.name == name:
        return c
    raise errors.UnknownCurve(f'No generator named {name!r}; known: '
                              f'{", ".join(c.name for c in self.curves)}')

  def curve_index(self, curve):
    return self.curves.index(curve)

  def make_class(self, coords):
    cls = coords if isinstance(coords, NSClass) else NSClass(tuple(coords))
    if cls.rank != self.rank:
      raise errors.DimensionMismatch(f'Expected {self.rank} coordinates, got {cls.rank}')
    return cls


def pair(model, a, b):
  """Intersection number a . b = a^T gram b.

  Raises:
    DimensionMismatch: If either class does not match the model rank.
  """
  if a.rank != model.rank or b.rank != model.rank:
    raise errors.DimensionMismatch(
        f'Cannot pair classes of rank {a.rank} and {b.rank} on a rank {model.rank} model')
  return linalg_ops.bilinear(model.gram, a.coords, b.coords)


def self_intersection(model, a):
  return pair(model, a, a)


def validate_model(model):
  """Checks the Hodge index signature and the remaining model invariants.

  Args:
    model (SurfaceModel): Model to check.

  Returns:
    ValidationReport: `passed` iff the signature is (1, rank - 1) and all invariants hold.
  """
  failures = []
  if not linalg_ops.is_symmetric(model.gram):
    failures.append('gram matrix is not symmetric')
    signature = (0, 0, 0)
  else:
    signature = linalg_ops.congruence_signature(model.gram)
    if signature != (1, model.rank - 1, 0):
      failures.append(f'signature {signature[:2]} with radical {signature[2]}, '
                      f'expected (1, {model.rank - 1})')
  if model.pg < 0:
    failures.append(f'pg must be nonnegative, got {model.pg}')
  if not model.generators_complete:
    failures.append('generators are not declared to span the effective cone')
  names = [c.name for c in model.curves]
  if len(set(names)) != len(names):
    failures.append('curve names are not unique')
  for curve in model.curves:
    if curve.cls.is_zero():
      failures.append(f'curve {curve.name} has the zero class')
      continue
    if self_intersection(model, curve.cls) < -model.negativity_bound:
      failures.append(f'curve {curve.name} has self-intersection below '
                      f'-{model.negativity_bound}')
  if model.ample is not None:
    if self_intersection(model, model.ample) <= 0:
      failures.append('ample class has nonpositive self-intersection')
    for curve in model.curves:
      if pair(model, model.ample, curve.cls) <= 0:
        failures.append(f'ample class is not positive on {curve.name}')
  for failure in failures:
    logging.warning('model validation: %s', failure)
  return ValidationReport(passed=not failures, signature=signature, failures=tuple(failures))


def is_pseudo_effective(model, divisor):
  """Exact membership of `divisor` in the cone spanned by the declared generators.

  Returns:
    ConeCertificate or None: A certificate listing the curves with positive weight, or None.

  Raises:
    DimensionMismatch: If `divisor` does not match the model rank.
  """
  model.make_class(divisor)
  coefficients = cone_ops.nonnegative_combination([c.cls.coords for c in model.curves],
                                                  divisor.coords)
  if coefficients is None:
    return None
  return ConeCertificate(
      tuple((curve, x) for curve, x in zip(model.curves, coefficients) if x != 0))


def is_nef(model, divisor):
  """Nefness against every declared generator.

  Returns:
    tuple: `(True, None)` or `(False, curve)` with the first generator pairing negatively.
  """
  model.make_class(divisor)
  for curve in model.curves:
    if pair(model, divisor, curve.cls) < 0:
      return False, curve
  return True, None


def is_proportional(a, b):
  """Returns t > 0 with a == t * b, or None. Zero classes are never proportional."""
  if a.rank != b.rank or a.is_zero() or b.is_zero():
    return None
  t = None
  for x, y in zip(a.coords, b.coords):
    if y == 0:
      if x != 0:
        return None
      continue
    ratio = x / y
    if t is None:
      t = ratio
    elif ratio != t:
      return None
  if t is None or t <= 0:
    return None
  return t


def model_from_dict(data):
  """Builds a `SurfaceModel` from its JSON form.

  Raises:
    InvalidModel: If a required field is missing or malformed.
    InputError: If an integer field such as `chi` holds a non-integer.
  """
  try:
    basis = tuple(data['basis'])
    rank = len(basis)

    def _cls(coords):
      cls = NSClass(tuple(rational_ops.parse_rational(x) for x in coords))
      if cls.rank != rank:
        raise errors.DimensionMismatch(f'Expected {rank} coordinates, got {cls.rank}')
      return cls

    curves = tuple(CurveGenerator(c['name'], _cls(c['coords'])) for c in data['curves'])
    ample = _cls(data['ample']) if data.get('ample') is not None else None
    return SurfaceModel(basis=basis,
                        gram=tuple(tuple(row) for row in data['gram']),
                        canonical=_cls(data['canonical']),
                        chi=rational_ops.parse_integer(data['chi'], 'chi'),
                        pg=rational_ops.parse_integer(data['pg'], 'pg'),
                        curves=curves,
                        kodaira_equals_numerical=bool(data.get('kodaira_equals_numerical',
                                                               False)),
                        ample=ample,
                        generators_complete=bool(data.get('generators_complete', True)),
                        negativity_bound=rational_ops.parse_integer(
                            data.get('negativity_bound', DEFAULT_NEGATIVITY_BOUND),
                            'negativity_bound'))
  except errors.SurfaceSectionsError:
    raise
  except (KeyError, TypeError, ValueError) as e:
    raise errors.InvalidModel(f'Malformed surface model: {e!r}') from e


def model_to_dict(model):
  """JSON form of a model; keys in a fixed order, rationals as "p/q" or ints."""
  return {
      'basis': list(model.basis),
      'gram': [rational_ops.format_rational_list(row) for row in model.gram],
      'canonical': model.canonical.to_json(),
      'chi': model.chi,
      'pg': model.pg,
      'curves': [{
          'name': c.name,
          'coords': c.cls.to_json()
      } for c in model.curves],
      'ample': model.ample.to_json() if model.ample is not None else None,
      'kodaira_equals_numerical': model.kodaira_equals_numerical,
      'generators_complete': model.generators_complete,
      'negativity_bound': model.negativity_bound,
  }


def load_model(path):
  with open(path, encoding='utf-8') as f:
    try:
      data = json.load(f)
    except json.JSONDecodeError as e:
      raise errors.InvalidModel(f'{path} is not valid JSON: {e}') from e
  return model_from_dict(data)
