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
"""Finiteness of sections on the complement of a reduced boundary divisor.

For a divisor D and a reduced divisor E on a surface X, sections of mD over U = X - E form
the direct limit of H^0(X, mD + kE) over the pole order k. This module decides when that
limit is finite dimensional, how fast the pole order has to grow, and how fast the finite
dimensions grow with m.
"""

import dataclasses
import enum
import math
from fractions import Fraction
from typing import Optional, Tuple

from absl import logging

from surface_sections.python import errors
from surface_sections.python.lattice import ns_lattice
from surface_sections.python.lattice import zariski
from surface_sections.python.lattice.ns_lattice import NSClass, CurveGenerator
from surface_sections.python.lattice.zariski import KappaSigma
from surface_sections.python.ops import rational_ops

DEFAULT_A_MAX = 64

CASE_LABELS = ('I', 'II', 'III')


@dataclasses.dataclass(frozen=True)
class BoundaryDivisor:
  """Reduced divisor E, the sum of distinct declared generator curves.

  Args:
    components (tuple): The irreducible components, as `CurveGenerator`.
    total (NSClass): Sum of the component classes.
  """
  components: Tuple[CurveGenerator, ...]
  total: NSClass

  @classmethod
  def from_curves(cls, model, curves):
    """Builds E from generator curves or their names.

    Raises:
      InputError: If `curves` is empty or names a component twice.
      UnknownCurve: If a name is not a declared generator.
    """
    components = tuple(model.curve(c) if isinstance(c, str) else c for c in curves)
    if not components:
      raise errors.InputError('A boundary divisor needs at least one component')
    if len(set(components)) != len(components):
      raise errors.InputError('Boundary components must be distinct')
    for c in components:
      if c not in model.curves:
        raise errors.UnknownCurve(f'{c.name} is not a declared generator')
    total = NSClass.zero(model.rank)
    for c in components:
      total = total + c.cls
    return cls(components=components, total=total)

  @property
  def names(self):
    return tuple(c.name for c in self.components)


class Status(enum.Enum):
  FINITE = 'Finite'
  INFINITE = 'Infinite'
  INCONCLUSIVE = 'Inconclusive'


class CaseResult(enum.Enum):
  HOLDS = 'holds'
  FAILS = 'fails'
  INCONCLUSIVE = 'inconclusive'


@dataclasses.dataclass(frozen=True)
class FinitenessVerdict:
  """Outcome of a finiteness classification.

  Args:
    status (Status): Finite, Infinite or Inconclusive.
    satisfied_cases (tuple): Labels among ('I', 'II', 'III') of the surface cases that hold.
    a_min_bplus (int or None): Least integer a with supp(E) in B_+(D + aE).
    a_min_nsigma (int or None): Least integer a with E <= N_sigma(D + aE).
    witness (str): Human readable reason for the status.
    a_max (int): Upper end of the integer scan.
    case_results (tuple): `(label, CaseResult)` per case, for pseudo-effective mode.
    threshold_bplus (Fraction or None): Exact least t >= 0 with supp(E) in B_+(D + tE).
    threshold_nsigma (Fraction or None): Exact least t >= 0 with E <= N_sigma(D + tE).
    suspected_model_inconsistency (bool): Set when theory guarantees a result that the
      scan did not find.
    certified_by (str or None): Theorem-backed reason for an Infinite status.
    trace (tuple): Per-a diagnostics, filled when tracing is requested.
  """
  status: Status
  satisfied_cases: Tuple[str, ...]
  a_min_bplus: Optional[int]
  a_min_nsigma: Optional[int]
  witness: str
  a_max: int
  case_results: Tuple[Tuple[str, CaseResult], ...] = ()
  threshold_bplus: Optional[Fraction] = None
  threshold_nsigma: Optional[Fraction] = None
  suspected_model_inconsistency: bool = False
  certified_by: Optional[str] = None
  trace: Tuple[dict, ...] = ()

  @property
  def is_finite(self):
    return self.status is Status.FINITE

  def to_json(self, include_trace=False):
    fmt = rational_ops.format_rational
    result = {
        'status': self.status.value,
        'a_min_bplus': self.a_min_bplus,
        'a_min_nsigma': self.a_min_nsigma,
        'satisfied_cases': list(self.satisfied_cases),
        'witness': self.witness,
        'scanned_range': [0, self.a_max],
        'threshold_bplus': fmt(self.threshold_bplus) if self.threshold_bplus is not None else None,
        'threshold_nsigma':
            fmt(self.threshold_nsigma) if self.threshold_nsigma is not None else None,
        'suspected_model_inconsistency': self.suspected_model_inconsistency,
        'certified_by': self.certified_by,
    }
    if self.case_results:
      result['cases'] = {label: outcome.value for label, outcome in self.case_results}
    if include_trace:
      result['trace'] = list(self.trace)
    return result


@dataclasses.dataclass(frozen=True)
class GrowthEstimate:
  """h^0(U, mD|_U) = leading * m^degree + O(m^(degree - 1)), pole order k(m) <= m * slope_bound."""
  degree: int
  leading: Fraction
  slope_bound: int

  def to_json(self):
    return {
        'degree': self.degree,
        'leading': rational_ops.format_rational(self.leading),
        'slope_bound': self.slope_bound,
    }


def _as_boundary(model, boundary):
  if isinstance(boundary, BoundaryDivisor):
    return boundary
  return BoundaryDivisor.from_curves(model, boundary)


def _require_big(model, divisor):
  if not zariski.is_big(model, divisor):
    raise errors.NotBig(f'{divisor} is not big')


def _bplus_holds(model, divisor, boundary, a):
  shifted = divisor + a * boundary.total
  return all(zariski.augmented_contains_curve(model, shifted, c) for c in boundary.components)


def _nsigma_holds(model, divisor, boundary, a):
  decomposition = zariski.zariski_decompose(model, divisor + a * boundary.total)
  return all(decomposition.coefficient(c) >= 1 for c in boundary.components)


def _first(predicate, a_max):
  return next((a for a in range(a_max + 1) if predicate(a)), None)


def minimal_a_bplus(model, divisor, boundary, a_max=DEFAULT_A_MAX):
  """Least integer a in [0, a_max] with every component of E in B_+(D + aE).

  Raises:
    NotBig: If D is not big.
  """
  boundary = _as_boundary(model, boundary)
  _require_big(model, divisor)
  return _first(lambda a: _bplus_holds(model, divisor, boundary, a), a_max)


def minimal_a_nsigma(model, divisor, boundary, a_max=DEFAULT_A_MAX):
  """Least integer a in [0, a_max] with E <= N_sigma(D + aE).

  Raises:
    NotBig: If D is not big.
  """
  boundary = _as_boundary(model, boundary)
  _require_big(model, divisor)
  return _first(lambda a: _nsigma_holds(model, divisor, boundary, a), a_max)


def _intersect(intervals):
  """Intersection of closed intervals (lo, hi) with hi = None meaning +infinity."""
  lo, hi = None, None
  for a, b in intervals:
    if a is None:
      return None
    lo = a if lo is None else max(lo, a)
    if b is not None:
      hi = b if hi is None else min(hi, b)
  if lo is None or (hi is not None and lo > hi):
    return None
  return lo, hi


def _first_in_walk(model, divisor, boundary, piece_interval):
  for piece in zariski.chamber_walk(model, divisor, boundary.total):
    intervals = [(piece.start, piece.end)]
    for c in boundary.components:
      intervals.append(piece_interval(piece, c))
    hit = _intersect(intervals)
    if hit is not None:
      return hit[0]
  return None


def nsigma_threshold(model, divisor, boundary):
  """Exact least t >= 0 with E <= N_sigma(D + tE), or None if no such t exists.

  Once E is part of the negative part it stays there with coefficients growing like t, so
  the set of admissible t is a half line and its left end is found on the first piece of
  the chamber walk that meets it.
  """
  boundary = _as_boundary(model, boundary)

  def _interval(piece, curve):
    if curve not in piece.support:
      return None, None
    i = piece.support.index(curve)
    base, slope = piece.base[i], piece.slope[i]
    if slope > 0:
      return (1 - base) / slope, None
    if slope < 0:
      return piece.start, (1 - base) / slope
    return (piece.start, None) if base >= 1 else (None, None)

  return _first_in_walk(model, divisor, boundary, _interval)


def bplus_threshold(model, divisor, boundary):
  """Exact least t >= 0 with supp(E) in B_+(D + tE) for big D, or None."""
  boundary = _as_boundary(model, boundary)
  _require_big(model, divisor)

  def _interval(piece, curve):
    value = ns_lattice.pair(model, piece.positive_base, curve.cls)
    rate = ns_lattice.pair(model, piece.positive_slope, curve.cls)
    if rate != 0:
      root = -value / rate
      return root, root
    return (piece.start, None) if value == 0 else (None, None)

  return _first_in_walk(model, divisor, boundary, _interval)


def _kappa_witness(model, boundary):
  for c in boundary.components:
    k = zariski.kappa_sigma(model, c.cls)
    if k is not KappaSigma.ZERO:
      return f'kappa_sigma({c.name}) = {k.value}'
  k = zariski.kappa_sigma(model, boundary.total)
  if k is not KappaSigma.ZERO:
    return f'kappa_sigma({"+".join(boundary.names)}) = {k.value}'
  return None


def _riemann_roch_note(model, divisor, boundary):
  m0 = rr_infiniteness_test(model, divisor, boundary)
  if m0 is None:
    return None
  return f'riemann-roch: infinite for every m >= {m0}'


def classify_big(model, divisor, boundary, a_max=DEFAULT_A_MAX, trace=False):
  """Finiteness of H^0(U, mD|_U) for big D.

  Sections are infinite as soon as E or one of its components has positive numerical
  dimension. Otherwise the least a with supp(E) in B_+(D + aE) exists, and the least a with
  E <= N_sigma(D + aE) is at most one larger; both are found by an integer scan.

  Args:
    model (SurfaceModel): A validated surface model.
    divisor (NSClass): Big class D.
    boundary (BoundaryDivisor or list): E, or the names of its components.
    a_max (int): Scan cap.
    trace (bool): Record per-a diagnostics.

  Returns:
    FinitenessVerdict: Finite with both minima, Infinite with a witness, or Inconclusive
      when the cap is exhausted (which flags a suspected model inconsistency).

  Raises:
    NotBig: If D is not big.
  """
  boundary = _as_boundary(model, boundary)
  _require_big(model, divisor)
  witness = _kappa_witness(model, boundary)
  if witness is not None:
    rr_note = _riemann_roch_note(model, divisor, boundary)
    return FinitenessVerdict(status=Status.INFINITE,
                             satisfied_cases=(),
                             a_min_bplus=None,
                             a_min_nsigma=None,
                             witness=witness,
                             a_max=a_max,
                             certified_by=rr_note or 'positive numerical dimension of E')
  rows = []
  a_bplus = None
  for a in range(a_max + 1):
    holds = _bplus_holds(model, divisor, boundary, a)
    if trace:
      rows.append({'a': a, 'bplus': holds})
    if holds:
      a_bplus = a
      break
  if a_bplus is None:
    logging.warning('no a <= %d puts %s in the augmented base locus; the model is suspect',
                    a_max, '+'.join(boundary.names))
    return FinitenessVerdict(status=Status.INCONCLUSIVE,
                             satisfied_cases=(),
                             a_min_bplus=None,
                             a_min_nsigma=None,
                             witness=f'scan cap a_max={a_max} exhausted',
                             a_max=a_max,
                             suspected_model_inconsistency=True,
                             trace=tuple(rows))
  a_nsigma = None
  for a in range(max(a_max, a_bplus + 1) + 1):
    holds = _nsigma_holds(model, divisor, boundary, a)
    if trace:
      rows.append({'a': a, 'nsigma': holds})
    if holds:
      a_nsigma = a
      break
  if a_nsigma is None:
    logging.warning('E <= N_sigma(D + aE) fails up to a = %d although a_min_bplus = %d',
                    a_bplus + 1, a_bplus)
  return FinitenessVerdict(status=Status.FINITE,
                           satisfied_cases=('I',) if a_nsigma is not None else (),
                           a_min_bplus=a_bplus,
                           a_min_nsigma=a_nsigma,
                           witness=f'supp(E) in B_+(D + {a_bplus}E)',
                           a_max=a_max,
                           threshold_bplus=bplus_threshold(model, divisor, boundary),
                           threshold_nsigma=nsigma_threshold(model, divisor, boundary),
                           suspected_model_inconsistency=a_nsigma is None,
                           trace=tuple(rows))


def _evaluate_cases(model, divisor, boundary):
  """Decides each surface case for a pseudo-effective, non-big D."""
  threshold = nsigma_threshold(model, divisor, boundary)
  case_one = CaseResult.HOLDS if threshold is not None else CaseResult.FAILS
  positive_d = zariski.positive_part(model, divisor)
  positive_e = zariski.positive_part(model, boundary.total)
  kodaira = model.kodaira_equals_numerical
  # numerical conjuncts are decided first; Kodaira dimension only through the model flag
  if ns_lattice.is_proportional(positive_d, positive_e) is None:
    case_two = CaseResult.FAILS
  elif kodaira:
    zero = zariski.kappa_sigma(model, divisor) is KappaSigma.ZERO
    case_two = CaseResult.HOLDS if zero else CaseResult.FAILS
  else:
    case_two = CaseResult.INCONCLUSIVE
  if not positive_d.is_zero():
    case_three = CaseResult.FAILS
  elif kodaira:
    zero = zariski.kappa_sigma(model, boundary.total) is KappaSigma.ZERO
    case_three = CaseResult.HOLDS if zero else CaseResult.FAILS
  else:
    case_three = CaseResult.INCONCLUSIVE
  return threshold, (('I', case_one), ('II', case_two), ('III', case_three))


def classify_pseff(model, divisor, boundary, a_max=DEFAULT_A_MAX, trace=False):
  """Finiteness of H^0(U, mD|_U) for every m >= 0 and pseudo-effective D.

  Big D is delegated to `classify_big`. Otherwise the three surface cases are evaluated:
  I) E <= N_sigma(D + aE) for some a; II) kappa(D) = 0 and P_sigma(D) = t P_sigma(E) with
  t > 0; III) D = N_sigma(D) and kappa(E) = 0. Kodaira dimensions are read as numerical
  dimensions only on models flagged `kodaira_equals_numerical`.

  Returns:
    FinitenessVerdict: Finite if a case holds, Infinite if every case fails, Inconclusive
      otherwise.

  Raises:
    NotPseudoEffective: If D is not pseudo-effective.
  """
  boundary = _as_boundary(model, boundary)
  if ns_lattice.is_pseudo_effective(model, divisor) is None:
    raise errors.NotPseudoEffective(f'{divisor} is not pseudo-effective')
  if zariski.is_big(model, divisor):
    verdict = classify_big(model, divisor, boundary, a_max=a_max, trace=trace)
    case_one = CaseResult.HOLDS if verdict.is_finite else CaseResult.FAILS
    if verdict.status is Status.INCONCLUSIVE:
      case_one = CaseResult.INCONCLUSIVE
    return dataclasses.replace(verdict, case_results=(('I', case_one),))
  threshold, cases = _evaluate_cases(model, divisor, boundary)
  rows = []
  a_nsigma = None
  if threshold is not None:
    for a in range(a_max + 1):
      holds = _nsigma_holds(model, divisor, boundary, a)
      if trace:
        rows.append({'a': a, 'nsigma': holds})
      if holds:
        a_nsigma = a
        break
  satisfied = tuple(label for label, outcome in cases if outcome is CaseResult.HOLDS)
  outcomes = [outcome for _, outcome in cases]
  certified_by = None
  if satisfied:
    status = Status.FINITE
    witness = 'case ' + ', '.join(satisfied) + ' holds'
  elif all(outcome is CaseResult.FAILS for outcome in outcomes):
    status = Status.INFINITE
    witness = 'cases I, II, III all fail'
    certified_by = _riemann_roch_note(model, divisor, boundary)
  else:
    status = Status.INCONCLUSIVE
    witness = 'Kodaira dimension is not determined numerically on this model'
  return FinitenessVerdict(status=status,
                           satisfied_cases=satisfied,
                           a_min_bplus=None,
                           a_min_nsigma=a_nsigma,
                           witness=witness,
                           a_max=a_max,
                           case_results=cases,
                           threshold_nsigma=threshold,
                           certified_by=certified_by,
                           trace=tuple(rows))


def _boundary_class(model, boundary):
  if isinstance(boundary, NSClass):
    return boundary
  return _as_boundary(model, boundary).total


def rr_lower_bound(model, divisor, boundary, m, k):
  """Riemann-Roch lower bound for h^0(mD + kE).

  h^0 >= k^2 E^2/2 + k (m D.E - E.K/2) + (m^2 D^2 - m D.K)/2 + chi(O_X) - h^0(K_X), using
  Serre duality to bound h^2(mD + kE) by h^0(K_X).
  """
  e = _boundary_class(model, boundary)
  pair = lambda a, b: ns_lattice.pair(model, a, b)
  m, k = Fraction(m), Fraction(k)
  canonical = model.canonical
  return (k * k * pair(e, e) / 2 + k * (m * pair(divisor, e) - pair(e, canonical) / 2) +
          (m * m * pair(divisor, divisor) - m * pair(divisor, canonical)) / 2 + model.chi -
          model.pg)


def rr_infiniteness_test(model, divisor, boundary):
  """Least m0 from which the Riemann-Roch bound grows without limit in k, or None.

  Applies when E^2 > 0 (m0 = 1), or when E^2 = 0 and D.E >= 1, where m0 is the least
  positive m with m D.E - E.K/2 > 0. D is assumed pseudo-effective.
  """
  e = _boundary_class(model, boundary)
  square = ns_lattice.pair(model, e, e)
  if square > 0:
    return 1
  if square < 0:
    return None
  de = ns_lattice.pair(model, divisor, e)
  if de < 1:
    return None
  half_ek = ns_lattice.pair(model, e, model.canonical) / 2
  return max(1, math.floor(half_ek / de) + 1)


def growth_estimate(model, divisor, boundary, a_max=DEFAULT_A_MAX):
  """Quadratic growth of h^0(U, mD|_U) for big D with finite sections.

  Sections over U equal H^0(X, m(D + aE)) for a = a_min_bplus, so the leading coefficient is
  vol(D + aE) / 2.

  Raises:
    NotBig: If D is not big.
    NotFinite: If the sections are not known to be finite dimensional.
  """
  boundary = _as_boundary(model, boundary)
  verdict = classify_big(model, divisor, boundary, a_max=a_max)
  if not verdict.is_finite:
    raise errors.NotFinite(f'sections of {divisor} on the complement of '
                           f'{"+".join(boundary.names)} are not finite: {verdict.witness}')
  a = verdict.a_min_bplus
  leading = zariski.volume(model, divisor + a * boundary.total) / 2
  return GrowthEstimate(degree=2, leading=leading, slope_bound=a)
