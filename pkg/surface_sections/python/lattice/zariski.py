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
"""Zariski decomposition on surfaces and the invariants derived from it"""

import dataclasses
import enum
from fractions import Fraction
from typing import Optional, Tuple

from absl import logging

from surface_sections.python import errors
from surface_sections.python.lattice import ns_lattice
from surface_sections.python.lattice.ns_lattice import NSClass, CurveGenerator
from surface_sections.python.ops import linalg_ops
from surface_sections.python.ops import rational_ops


@dataclasses.dataclass(frozen=True)
class ZariskiDecomposition:
  """D = positive + sum(coefficient * curve) with the classical surface properties.

  Args:
    positive (NSClass): P_sigma(D), nef and orthogonal to every support curve.
    negative (tuple): Pairs `(CurveGenerator, Fraction > 0)` making up N_sigma(D), in
      generator order. The Gram matrix of the support curves is negative definite.
  """
  positive: NSClass
  negative: Tuple[Tuple[CurveGenerator, Fraction], ...]

  @property
  def support(self):
    return tuple(curve for curve, _ in self.negative)

  def coefficient(self, curve):
    for c, a in self.negative:
      if c == curve:
        return a
    return Fraction(0)

  def negative_class(self):
    result = NSClass.zero(self.positive.rank)
    for curve, a in self.negative:
      result = result + a * curve.cls
    return result

  def to_json(self):
    return {
        'positive': self.positive.to_json(),
        'negative': {curve.name: rational_ops.format_rational(a) for curve, a in self.negative},
    }


class KappaSigma(enum.Enum):
  """Numerical dimension of a class on a surface."""
  NOT_PSEUDO_EFFECTIVE = 'NotPseudoEffective'
  ZERO = 0
  ONE = 1
  TWO = 2


def _support_gram(model, support):
  return [[ns_lattice.pair(model, a.cls, b.cls) for b in support] for a in support]


def _solve_coefficients(model, target, support, gram=None):
  """Solves sum_i a_i (C_i . C_j) = target . C_j over the support curves."""
  if not support:
    return []
  gram = gram if gram is not None else _support_gram(model, support)
  rhs = [ns_lattice.pair(model, target, c.cls) for c in support]
  solution = linalg_ops.solve(gram, rhs)
  if solution is None:
    raise errors.ModelInconsistent(
        f'Intersection matrix of {[c.name for c in support]} is singular')
  return solution


def _check_negative_definite(model, support):
  gram = _support_gram(model, support)
  if not linalg_ops.is_negative_definite(gram):
    raise errors.ModelInconsistent(
        f'Curves {[c.name for c in support]} do not have a negative definite intersection '
        'matrix; the declared generators cannot span the effective cone')
  return gram


def _ordered(model, curves):
  return sorted(set(curves), key=model.curve_index)


def zariski_decompose(model, divisor):
  """Zariski decomposition of a pseudo-effective class.

  Starts from the curves that `divisor` meets negatively, makes the positive part
  orthogonal to them by an exact linear solve, and keeps adding generators that the
  current positive part meets negatively until it is nef. The support only grows, so the
  loop runs at most once per generator.

  Args:
    model (SurfaceModel): A validated surface model.
    divisor (NSClass): Class to decompose.

  Returns:
    ZariskiDecomposition: The decomposition, with zero coefficients dropped.

  Raises:
    NotPseudoEffective: If `divisor` is outside the cone of the declared generators.
    ModelInconsistent: If a support matrix is not negative definite or a coefficient comes
      out negative.
  """
  model.make_class(divisor)
  if ns_lattice.is_pseudo_effective(model, divisor) is None:
    raise errors.NotPseudoEffective(f'{divisor} is not pseudo-effective')
  support = _ordered(model, [c for c in model.curves
                             if ns_lattice.pair(model, divisor, c.cls) < 0])
  for step in range(len(model.curves) + 1):
    gram = _check_negative_definite(model, support)
    coefficients = _solve_coefficients(model, divisor, support, gram)
    for curve, a in zip(support, coefficients):
      if a < 0:
        raise errors.ModelInconsistent(f'Negative coefficient {a} on {curve.name}')
    positive = divisor
    for curve, a in zip(support, coefficients):
      positive = positive - a * curve.cls
    violators = [c for c in model.curves
                 if c not in support and ns_lattice.pair(model, positive, c.cls) < 0]
    logging.vlog(1, 'zariski step %d: support %s, violators %s', step,
                 [c.name for c in support], [c.name for c in violators])
    if not violators:
      break
    support = _ordered(model, support + violators)
  else:
    raise errors.ModelInconsistent(f'Zariski loop for {divisor} did not terminate')
  negative = tuple((c, a) for c, a in zip(support, coefficients) if a != 0)
  return ZariskiDecomposition(positive=positive, negative=negative)


def positive_part(model, divisor):
  return zariski_decompose(model, divisor).positive


def volume(model, divisor):
  """vol(D) = P_sigma(D)^2, and 0 outside the pseudo-effective cone."""
  try:
    decomposition = zariski_decompose(model, divisor)
  except errors.NotPseudoEffective:
    return Fraction(0)
  return ns_lattice.self_intersection(model, decomposition.positive)


def kappa_sigma(model, divisor):
  """Numerical dimension: 0 when P_sigma vanishes, 2 when P_sigma^2 > 0, else 1."""
  try:
    positive = zariski_decompose(model, divisor).positive
  except errors.NotPseudoEffective:
    return KappaSigma.NOT_PSEUDO_EFFECTIVE
  if positive.is_zero():
    return KappaSigma.ZERO
  if ns_lattice.self_intersection(model, positive) > 0:
    return KappaSigma.TWO
  return KappaSigma.ONE


def diminished_divisorial(model, divisor):
  """Curves in the divisorial part of the diminished base locus: supp N_sigma(D)."""
  return zariski_decompose(model, divisor).support


def _resolve_curve(model, curve):
  return model.curve(curve) if isinstance(curve, str) else curve


def is_big(model, divisor):
  """Whether vol(D) > 0."""
  return volume(model, divisor) > 0


def _big_positive_part(model, divisor):
  try:
    positive = zariski_decompose(model, divisor).positive
  except errors.NotPseudoEffective as e:
    raise errors.NotBig(f'{divisor} is not big') from e
  if ns_lattice.self_intersection(model, positive) <= 0:
    raise errors.NotBig(f'{divisor} is not big')
  return positive


def augmented_contains_curve(model, divisor, curve):
  """Whether `curve` lies in B_+(D) for big D, decided by P_sigma(D) . C == 0.

  Raises:
    NotBig: If `divisor` has zero volume.
  """
  curve = _resolve_curve(model, curve)
  positive = _big_positive_part(model, divisor)
  return ns_lattice.pair(model, positive, curve.cls) == 0


def restricted_volume(model, divisor, curve):
  """vol_{X|C}(D) = P_sigma(D) . C for a curve outside B_+(D).

  Raises:
    NotBig: If `divisor` has zero volume.
    CurveInAugmentedLocus: If `curve` lies in B_+(D), where the value is not pinned down.
  """
  curve = _resolve_curve(model, curve)
  positive = _big_positive_part(model, divisor)
  value = ns_lattice.pair(model, positive, curve.cls)
  if value == 0:
    raise errors.CurveInAugmentedLocus(f'{curve.name} lies in the augmented base locus')
  return value


@dataclasses.dataclass(frozen=True)
class ZariskiPiece:
  """Interval [start, end] of t on which N_sigma(D + tE) has constant support.

  On the piece the negative coefficients are `base[i] + t * slope[i]` and the positive part
  is `positive_base + t * positive_slope`. `end` is None for the unbounded last piece.
  """
  start: Fraction
  end: Optional[Fraction]
  support: Tuple[CurveGenerator, ...]
  base: Tuple[Fraction, ...]
  slope: Tuple[Fraction, ...]
  positive_base: NSClass
  positive_slope: NSClass

  def contains(self, t):
    return self.start <= t and (self.end is None or t <= self.end)

  def coefficient(self, curve, t):
    if curve not in self.support:
      return Fraction(0)
    i = self.support.index(curve)
    return self.base[i] + t * self.slope[i]

  def positive_at(self, t):
    return self.positive_base + t * self.positive_slope

  def negative_at(self, t):
    return tuple((c, self.base[i] + t * self.slope[i])
                 for i, c in enumerate(self.support)
                 if self.base[i] + t * self.slope[i] != 0)


def chamber_walk(model, divisor, direction, start=0, end=None):
  """Exact Zariski decomposition of D + tE for all t >= start, piece by piece.

  Inside a piece the support of the negative part is fixed, so the negative coefficients and
  the positive part are affine in t. A piece ends where a coefficient reaches zero or the
  positive part starts meeting a further generator negatively; both are roots of linear
  functions and are computed exactly.

  Args:
    model (SurfaceModel): A validated surface model.
    divisor (NSClass): D, with D + start * E pseudo-effective.
    direction (NSClass): E. Pseudo-effectivity of D + tE for t past `start` is the caller's
      responsibility (automatic when E is effective).
    start (Fraction): First value of t.
    end (Fraction or None): Last value of t, or None to walk to infinity.

  Returns:
    list: Consecutive `ZariskiPiece`s covering [start, end].

  Raises:
    NotPseudoEffective: If D + start * E is not pseudo-effective.
    ModelInconsistent: If the walk meets a non negative definite support.
  """
  start = Fraction(start)
  end = Fraction(end) if end is not None else None
  t = start
  initial = zariski_decompose(model, divisor + t * direction)
  support = list(initial.support)
  pieces = []
  stalls = 0
  max_pieces = 4 * len(model.curves) + 4
  while True:
    gram = _check_negative_definite(model, support)
    base = _solve_coefficients(model, divisor, support, gram)
    slope = _solve_coefficients(model, direction, support, gram)
    positive_base, positive_slope = divisor, direction
    for c, a, b in zip(support, base, slope):
      positive_base = positive_base - a * c.cls
      positive_slope = positive_slope - b * c.cls
    positive = positive_base + t * positive_slope
    leaving = [c for c, a, b in zip(support, base, slope) if a + t * b == 0 and b <= 0]
    entering = []
    for c in model.curves:
      if c in support:
        continue
      value = ns_lattice.pair(model, positive, c.cls)
      rate = ns_lattice.pair(model, positive_slope, c.cls)
      if value < 0:
        raise errors.ModelInconsistent(f'Positive part meets {c.name} negatively at t={t}')
      if value == 0 and rate < 0:
        entering.append(c)
    if leaving or entering:
      stalls += 1
      if stalls > 2 * len(model.curves):
        raise errors.ModelInconsistent(f'Chamber walk stalls at t={t}')
      logging.vlog(1, 'chamber walk at t=%s: leaving %s, entering %s', t,
                   [c.name for c in leaving], [c.name for c in entering])
      support = _ordered(model, [c for c in support if c not in leaving] + entering)
      continue
    stalls = 0
    events = [-a / b for a, b in zip(base, slope) if b < 0]
    for c in model.curves:
      if c in support:
        continue
      rate = ns_lattice.pair(model, positive_slope, c.cls)
      if rate < 0:
        events.append(-ns_lattice.pair(model, positive_base, c.cls) / rate)
    events = [u for u in events if u > t]
    piece_end = min(events) if events else None
    if end is not None and (piece_end is None or piece_end >= end):
      piece_end = end
    pieces.append(
        ZariskiPiece(start=t,
                     end=piece_end,
                     support=tuple(support),
                     base=tuple(base),
                     slope=tuple(slope),
                     positive_base=positive_base,
                     positive_slope=positive_slope))
    if piece_end is None or piece_end == end:
      return pieces
    if len(pieces) >= max_pieces:
      raise errors.ModelInconsistent('Chamber walk produced too many pieces')
    t = piece_end


def volume_derivative(model, divisor, direction, t=0):
  """d/dt vol(D + tE), exactly 2 P_sigma(D + tE) . E on the big cone.

  Raises:
    NotBig: If D + tE is not big.
  """
  point = divisor + Fraction(t) * direction
  positive = _big_positive_part(model, point)
  return 2 * ns_lattice.pair(model, positive, direction)


def volume_increment_integral(model, divisor, direction, a):
  """Exact value of 2 * integral_0^a P_sigma(D + tE) . E dt.

  On big classes this equals vol(D + aE) - vol(D).

  Raises:
    NotBig: If D is not big.
  """
  _big_positive_part(model, divisor)
  a = Fraction(a)
  total = Fraction(0)
  for piece in chamber_walk(model, divisor, direction, 0, a):
    lo, hi = piece.start, piece.end
    c0 = ns_lattice.pair(model, piece.positive_base, direction)
    c1 = ns_lattice.pair(model, piece.positive_slope, direction)
    total += 2 * (c0 * (hi - lo) + c1 * (hi * hi - lo * lo) / 2)
  return total
